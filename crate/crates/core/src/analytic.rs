//! Closed-form physics: bound-state energies, admissibility constraints,
//! PT-normalized wavefunctions, and the special cases reached by tuning
//! parameters.
//!
//! Energies come in ± pairs. For the linear-mass model
//!
//! ```text
//! E_n = ±(A/λ) √(μ²c⁴ + (2n+1)ħc²A),        A = √(λ²+η²)
//! ```
//!
//! with unlimited `n`; for the hyperbolic-mass model the generating
//! formula holds only up to the caps
//!
//! ```text
//! n ≤ {B/(ħα²)}          (normalizable ε-levels)
//! n ≤ {(B-|η|)/(ħα²)}    (real bound-state energies)
//! ```
//!
//! where `{k}` is the largest integer strictly below `k`, and at least
//! one bound state exists iff `λ² > ħα²|η|`.

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::model::{ModelKind, ModelParams, ParamError};
use crate::specfun::{self, QuadratureRule, SpecfunError, TruncationWarning};
use crate::susy::{self, strict_integer_below};

#[derive(Debug, Error)]
pub enum AnalyticError {
    #[error(transparent)]
    InvalidParams(#[from] ParamError),
    #[error(transparent)]
    Specfun(#[from] SpecfunError),
    #[error("level n={n} is not admissible: {reason}")]
    InadmissibleLevel { n: u32, reason: String },
    #[error("level n={n} is degenerate: energy denominator {denominator:.3e} vanishes")]
    DegenerateLevel { n: u32, denominator: f64 },
    #[error("degree n={0} outside the supported polynomial range (n <= 30)")]
    UnsupportedDegree(u32),
}

/// Sign branch of the ± energy pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Plus,
    Minus,
}

/// One bound-state record; energies always come as an exact ± pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectrumLevel {
    pub n: u32,
    pub model: ModelKind,
    pub energy_plus: f64,
    pub energy_minus: f64,
}

impl SpectrumLevel {
    pub fn energy(&self, branch: Branch) -> f64 {
        match branch {
            Branch::Plus => self.energy_plus,
            Branch::Minus => self.energy_minus,
        }
    }
}

/// Admissible level count on one side of a cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LevelCap {
    /// No cap (linear-mass model).
    Unbounded,
    /// Levels `0..=max` are admissible.
    Max(u32),
    /// Not even `n = 0` is admissible.
    Empty,
}

impl LevelCap {
    pub fn admits(&self, n: u32) -> bool {
        match self {
            LevelCap::Unbounded => true,
            LevelCap::Max(m) => n <= *m,
            LevelCap::Empty => false,
        }
    }

    fn from_ratio(k: f64) -> Self {
        match strict_integer_below(k) {
            Some(m) => LevelCap::Max(m),
            None => LevelCap::Empty,
        }
    }
}

/// Level caps and the existence constraint `λ² > ħα²|η|`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct LevelBounds {
    pub n_max_effective: LevelCap,
    pub n_max_physical: LevelCap,
    pub constraint_satisfied: bool,
    pub leading_coefficient: f64,
}

pub fn level_bounds(params: &ModelParams) -> Result<LevelBounds, AnalyticError> {
    params.validate()?;
    let a = susy::solve_leading_coefficient(params);
    match params.model {
        ModelKind::LinearMass => Ok(LevelBounds {
            n_max_effective: LevelCap::Unbounded,
            n_max_physical: LevelCap::Unbounded,
            constraint_satisfied: true,
            leading_coefficient: a,
        }),
        ModelKind::HyperbolicMass => {
            let ha2 = params.hbar * params.alpha * params.alpha;
            Ok(LevelBounds {
                n_max_effective: LevelCap::from_ratio(a / ha2),
                n_max_physical: LevelCap::from_ratio((a - params.eta.abs()) / ha2),
                constraint_satisfied: params.lambda * params.lambda > ha2 * params.eta.abs(),
                leading_coefficient: a,
            })
        }
    }
}

/// Positive-branch bound-state energy of level `n`.
pub fn energy_at_level(params: &ModelParams, n: u32) -> Result<f64, AnalyticError> {
    params.validate()?;
    let a = susy::solve_leading_coefficient(params);
    let c2 = params.c * params.c;
    let nf = f64::from(n);
    match params.model {
        ModelKind::LinearMass => {
            let radicand =
                params.mu * params.mu * c2 * c2 + (2.0 * nf + 1.0) * params.hbar * c2 * a;
            Ok(a / params.lambda * radicand.sqrt())
        }
        ModelKind::HyperbolicMass => {
            let ha2 = params.hbar * params.alpha * params.alpha;
            let beta = a - nf * ha2;
            if !LevelCap::from_ratio(a / ha2).admits(n) {
                return Err(AnalyticError::InadmissibleLevel {
                    n,
                    reason: format!(
                        "beyond the normalizability cap B/(hbar alpha^2) = {:.6}",
                        a / ha2
                    ),
                });
            }
            // B(B+ħα²) - (B-nħα²)² telescopes to ħα²((2n+1)B - n²ħα²),
            // which avoids the cancellation at small α
            let numerator = params.mu * params.mu * c2 * c2
                + c2 * params.hbar * ((2.0 * nf + 1.0) * a - nf * nf * ha2);
            let denominator = 1.0 - params.eta * params.eta / (beta * beta);
            if denominator.abs() <= 1e-14 {
                return Err(AnalyticError::DegenerateLevel { n, denominator });
            }
            if denominator < 0.0 {
                return Err(AnalyticError::InadmissibleLevel {
                    n,
                    reason: "energy denominator 1 - eta^2/(B-n hbar alpha^2)^2 is negative".into(),
                });
            }
            Ok((numerator / denominator).sqrt())
        }
    }
}

/// All admissible levels up to `max_n`, both branches recorded.
/// An empty list is the valid "no bound states" answer.
pub fn bound_energies(
    params: &ModelParams,
    max_n: u32,
) -> Result<Vec<SpectrumLevel>, AnalyticError> {
    params.validate()?;
    let top = match params.model {
        ModelKind::LinearMass => Some(max_n),
        ModelKind::HyperbolicMass => match level_bounds(params)?.n_max_physical {
            LevelCap::Unbounded => Some(max_n),
            LevelCap::Max(m) => Some(m.min(max_n)),
            LevelCap::Empty => None,
        },
    };
    let Some(top) = top else {
        return Ok(Vec::new());
    };
    (0..=top)
        .map(|n| {
            let e = energy_at_level(params, n)?;
            Ok(SpectrumLevel {
                n,
                model: params.model,
                energy_plus: e,
                energy_minus: -e,
            })
        })
        .collect()
}

/// Massless linear-mass special case, `E_n = ±(c/λ)√((2n+1)ħA³)`.
pub fn special_case_massless(
    params: &ModelParams,
    max_n: u32,
) -> Result<Vec<SpectrumLevel>, AnalyticError> {
    assert_eq!(
        params.model,
        ModelKind::LinearMass,
        "massless case is a linear-mass result"
    );
    assert_eq!(params.mu, 0.0, "massless case requires mu = 0");
    params.validate()?;
    let a = susy::solve_leading_coefficient(params);
    Ok((0..=max_n)
        .map(|n| {
            let e = params.c / params.lambda
                * ((2.0 * f64::from(n) + 1.0) * params.hbar * a * a * a).sqrt();
            SpectrumLevel {
                n,
                model: params.model,
                energy_plus: e,
                energy_minus: -e,
            }
        })
        .collect())
}

/// Model-specific closed form of the eigenfunction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WavefunctionForm {
    /// `ψ ∝ exp(-(A/2ħ)(x+is)²) H_n(√(A/ħ)(x+is))`
    HermiteGaussian {
        /// `A/ħ`
        gaussian_rate: f64,
        /// `s = ηE_n/(cA²)`, the imaginary center
        imag_center: f64,
    },
    /// `ψ ∝ (1-tanh αx)^{a/2} (1+tanh αx)^{ā/2} P_n^{(a,ā)}(tanh αx)`
    JacobiTanh {
        /// complex exponent `a_n`; its partner is the conjugate
        exponent: Complex64,
        alpha: f64,
    },
}

/// Everything fixed about one eigenfunction: level, branch,
/// normalization magnitude, the quarter-turn phase `e^{inπ/2}` stored as
/// `n mod 4`, and the model-specific shape parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WavefunctionSpec {
    pub n: u32,
    pub model: ModelKind,
    pub branch: Branch,
    pub energy: f64,
    pub normalization_magnitude: f64,
    pub phase_exponent: u8,
    pub form: WavefunctionForm,
}

/// Pointwise evaluator for a normalized PT-symmetric eigenfunction.
#[derive(Debug, Clone, Copy)]
pub struct Wavefunction {
    pub spec: WavefunctionSpec,
    params: ModelParams,
}

const MAX_DEGREE: u32 = 30;

/// Build the normalized eigenfunction for an admissible level.
pub fn wavefunction(
    params: &ModelParams,
    n: u32,
    branch: Branch,
) -> Result<Wavefunction, AnalyticError> {
    params.validate()?;
    if n > MAX_DEGREE {
        return Err(AnalyticError::UnsupportedDegree(n));
    }
    let bounds = level_bounds(params)?;
    if !bounds.n_max_physical.admits(n) {
        return Err(AnalyticError::InadmissibleLevel {
            n,
            reason: format!("physical cap is {:?}", bounds.n_max_physical),
        });
    }
    let e_plus = energy_at_level(params, n)?;
    let energy = match branch {
        Branch::Plus => e_plus,
        Branch::Minus => -e_plus,
    };
    let a = bounds.leading_coefficient;
    let nf = f64::from(n);
    let spec = match params.model {
        ModelKind::LinearMass => {
            // |N_n| = (A/πħ)^{1/4} / √(2ⁿ n!)
            let log_norm = 0.25 * (a / (std::f64::consts::PI * params.hbar)).ln()
                - 0.5 * (nf * std::f64::consts::LN_2 + ln_factorial(n));
            WavefunctionSpec {
                n,
                model: params.model,
                branch,
                energy,
                normalization_magnitude: log_norm.exp(),
                phase_exponent: (n % 4) as u8,
                form: WavefunctionForm::HermiteGaussian {
                    gaussian_rate: a / params.hbar,
                    imag_center: params.eta * energy / (params.c * a * a),
                },
            }
        }
        ModelKind::HyperbolicMass => {
            let ha2 = params.hbar * params.alpha * params.alpha;
            let beta = a - nf * ha2;
            let exponent = Complex64::new(
                beta / ha2,
                params.eta * energy / (params.alpha * params.hbar * params.c * beta),
            );
            WavefunctionSpec {
                n,
                model: params.model,
                branch,
                energy,
                normalization_magnitude: jacobi_norm_magnitude(n, exponent, params.alpha)?,
                phase_exponent: (n % 4) as u8,
                form: WavefunctionForm::JacobiTanh {
                    exponent,
                    alpha: params.alpha,
                },
            }
        }
    };
    Ok(Wavefunction {
        spec,
        params: *params,
    })
}

/// `|N_n|` of the Jacobi-type eigenfunction, evaluated through log-Gamma
/// so that the large exponents reached at small α cannot overflow:
///
/// ```text
/// |N_n| = |a_n| √(α n! Γ(2Re a_n + n + 1)) / (2^{Re a_n} √(Re a_n) |Γ(a_n + n + 1)|)
/// ```
fn jacobi_norm_magnitude(n: u32, a: Complex64, alpha: f64) -> Result<f64, AnalyticError> {
    let re = a.re;
    debug_assert!(re > 0.0, "admissible levels have Re a_n > 0");
    let nf = f64::from(n);
    let log_gamma_sym = specfun::log_gamma(Complex64::new(2.0 * re + nf + 1.0, 0.0))?.re;
    let log_gamma_full = specfun::log_gamma(a + nf + 1.0)?.re;
    let log_norm = a.norm().ln() + 0.5 * (alpha.ln() + ln_factorial(n) + log_gamma_sym)
        - re * std::f64::consts::LN_2
        - 0.5 * re.ln()
        - log_gamma_full;
    Ok(log_norm.exp())
}

fn ln_factorial(n: u32) -> f64 {
    specfun::log_gamma(Complex64::new(f64::from(n) + 1.0, 0.0))
        .expect("positive argument")
        .re
}

/// `ln(1 - tanh y)`, stable for any `y`.
fn log1m_tanh(y: f64) -> f64 {
    if y >= 0.0 {
        std::f64::consts::LN_2 - 2.0 * y - (-2.0 * y).exp().ln_1p()
    } else {
        std::f64::consts::LN_2 - (2.0 * y).exp().ln_1p()
    }
}

const QUARTER_TURNS: [Complex64; 4] = [
    Complex64::new(1.0, 0.0),
    Complex64::new(0.0, 1.0),
    Complex64::new(-1.0, 0.0),
    Complex64::new(0.0, -1.0),
];

impl Wavefunction {
    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        let phase = QUARTER_TURNS[self.spec.phase_exponent as usize];
        let norm = self.spec.normalization_magnitude;
        match self.spec.form {
            WavefunctionForm::HermiteGaussian {
                gaussian_rate,
                imag_center,
            } => {
                let z = gaussian_rate.sqrt() * Complex64::new(x, imag_center);
                let envelope = (-z * z / 2.0).exp();
                norm * phase * envelope * specfun::hermite(self.spec.n as usize, z)
            }
            WavefunctionForm::JacobiTanh { exponent, alpha } => {
                let y = alpha * x;
                let t = y.tanh();
                let log_minus = log1m_tanh(y);
                let log_plus = log1m_tanh(-y);
                let envelope =
                    (exponent / 2.0 * log_minus + exponent.conj() / 2.0 * log_plus).exp();
                let poly = specfun::jacobi(
                    self.spec.n as usize,
                    exponent,
                    exponent.conj(),
                    Complex64::new(t, 0.0),
                )
                    .expect("recurrence is regular for admissible exponents");
                norm * phase * envelope * poly
            }
        }
    }

    /// Truncation half-width that keeps the `ψ²` tail below ~1e-14 in
    /// both the Gaussian core and the exponential tail regime.
    pub fn suggested_half_width(&self) -> f64 {
        match self.spec.form {
            WavefunctionForm::HermiteGaussian {
                gaussian_rate,
                imag_center,
            } => imag_center.abs() + 12.0 / gaussian_rate.sqrt(),
            WavefunctionForm::JacobiTanh { exponent, alpha } => {
                let b = susy::solve_leading_coefficient(&self.params);
                let gaussian = 12.0 / (b / self.params.hbar).sqrt();
                // |ψ²| ~ exp(-2 Re a_n · α |x|) far out
                let tail_rate = 2.0 * exponent.re * alpha;
                gaussian.max(36.0 / tail_rate)
            }
        }
    }

    /// PT norm `∫ψ² dx` by quadrature; equals `(-1)ⁿ` for an admissible
    /// normalized level.
    pub fn pt_norm(&self) -> (Complex64, Option<TruncationWarning>) {
        let half_width = self.suggested_half_width();
        let rate = match self.spec.form {
            WavefunctionForm::HermiteGaussian { gaussian_rate, .. } => gaussian_rate,
            WavefunctionForm::JacobiTanh { .. } => {
                susy::solve_leading_coefficient(&self.params) / self.params.hbar
            }
        };
        let panels = (half_width * rate.sqrt()).ceil() as usize + 4;
        let rule = QuadratureRule::gauss_legendre(half_width, panels);
        rule.integrate_checked(|x| {
            let v = self.eval(x);
            v * v
        })
    }

    /// Max over the positions of `|ψ(x) - conj(ψ(-x))|`; zero for an
    /// exact PT eigenfunction with eigenvalue one.
    pub fn pt_conjugation_deviation(&self, positions: &[f64]) -> f64 {
        positions
            .iter()
            .map(|&x| (self.eval(x) - self.eval(-x).conj()).norm())
            .fold(0.0, f64::max)
    }
}

/// One grid line of the non-relativistic limit study.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct NonrelRow {
    pub c: f64,
    pub energy_minus_rest: f64,
    pub deviation: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct NonrelLevelReport {
    pub n: u32,
    pub target: f64,
    pub rows: Vec<NonrelRow>,
    pub fitted_order: f64,
    /// max over the `c` grid of `|E_n(ξ) - E_n(0)|`; second order in ξ
    pub xi_shift_max: f64,
    /// max over the `c` grid of `|E_n(+ξ) - E_n(-ξ)|`; zero exactly
    pub xi_asymmetry_max: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct NonrelReport {
    pub mu: f64,
    pub omega: f64,
    pub xi: f64,
    pub hbar: f64,
    pub levels: Vec<NonrelLevelReport>,
}

/// `E_n - μc²` without catastrophic cancellation:
/// `(E_n² - μ²c⁴)/(E_n + μc²)` with the numerator expanded exactly.
pub fn energy_minus_rest(params: &ModelParams, n: u32) -> Result<f64, AnalyticError> {
    assert_eq!(params.model, ModelKind::LinearMass);
    let e = energy_at_level(params, n)?;
    let a = susy::solve_leading_coefficient(params);
    let c2 = params.c * params.c;
    let l2 = params.lambda * params.lambda;
    let numerator = params.mu * params.mu * c2 * c2 * params.eta * params.eta / l2
        + (2.0 * f64::from(n) + 1.0) * params.hbar * c2 * a * a * a / l2;
    Ok(numerator / (e + params.mu * c2))
}

/// Probe the `c → ∞` limit with `λ = μω`, `η = μξ/c`: the shifted
/// energy `E_n - μc²` approaches the oscillator value `(n+1/2)ħω` at
/// second order in `1/c`. The vector-potential parameter ξ enters the
/// energies only at second order (they are exactly even in ξ); its
/// first-order effect is confined to the wavefunctions.
pub fn nonrelativistic_limit_check(
    mu: f64,
    omega: f64,
    xi: f64,
    hbar: f64,
    c_values: &[f64],
    levels: &[u32],
) -> Result<NonrelReport, AnalyticError> {
    let params_at = |xi_val: f64, c: f64| {
        ModelParams::linear(mu, mu * omega, mu * xi_val / c).with_units(hbar, c)
    };
    let mut reports = Vec::with_capacity(levels.len());
    for &n in levels {
        let target = (f64::from(n) + 0.5) * hbar * omega;
        let mut rows = Vec::with_capacity(c_values.len());
        let mut xi_shift_max = 0.0f64;
        let mut xi_asymmetry_max = 0.0f64;
        for &c in c_values {
            let shifted = energy_minus_rest(&params_at(xi, c), n)?;
            rows.push(NonrelRow {
                c,
                energy_minus_rest: shifted,
                deviation: (shifted - target).abs(),
            });
            let at_zero = energy_minus_rest(&params_at(0.0, c), n)?;
            let mirrored = energy_minus_rest(&params_at(-xi, c), n)?;
            xi_shift_max = xi_shift_max.max((shifted - at_zero).abs());
            xi_asymmetry_max = xi_asymmetry_max.max((shifted - mirrored).abs());
        }
        let inv_c: Vec<f64> = rows.iter().map(|r| 1.0 / r.c).collect();
        let devs: Vec<f64> = rows.iter().map(|r| r.deviation).collect();
        reports.push(NonrelLevelReport {
            n,
            target,
            rows,
            fitted_order: fit_log_slope(&inv_c, &devs),
            xi_shift_max,
            xi_asymmetry_max,
        });
    }
    Ok(NonrelReport {
        mu,
        omega,
        xi,
        hbar,
        levels: reports,
    })
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct AlphaEnergyRow {
    pub alpha: f64,
    pub energy: f64,
    pub reference_energy: f64,
    pub deviation: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct AlphaLevelReport {
    pub n: u32,
    pub rows: Vec<AlphaEnergyRow>,
    pub fitted_order: f64,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct AlphaWavefunctionRow {
    pub alpha: f64,
    pub n: u32,
    pub max_deviation: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct AlphaReport {
    pub levels: Vec<AlphaLevelReport>,
    pub wavefunctions: Vec<AlphaWavefunctionRow>,
}

/// Probe the `α → 0` coincidence of the hyperbolic-mass model with the
/// linear-mass model at shared `(μ, λ, η)`: energies converge at second
/// order in α and eigenfunctions converge pointwise on the given grid.
pub fn alpha_limit_check(
    linear: &ModelParams,
    alphas: &[f64],
    levels: &[u32],
    grid: &[f64],
) -> Result<AlphaReport, AnalyticError> {
    assert_eq!(linear.model, ModelKind::LinearMass);
    linear.validate()?;
    let hyper_at = |alpha: f64| {
        ModelParams::hyperbolic(linear.mu, linear.lambda, linear.eta, alpha)
            .with_units(linear.hbar, linear.c)
    };
    let mut level_reports = Vec::with_capacity(levels.len());
    let mut wavefunction_rows = Vec::new();
    for &n in levels {
        let reference = energy_at_level(linear, n)?;
        let mut rows = Vec::with_capacity(alphas.len());
        for &alpha in alphas {
            let energy = energy_at_level(&hyper_at(alpha), n)?;
            rows.push(AlphaEnergyRow {
                alpha,
                energy,
                reference_energy: reference,
                deviation: (energy - reference).abs(),
            });
            if !grid.is_empty() {
                let psi_linear = wavefunction(linear, n, Branch::Plus)?;
                let psi_hyper = wavefunction(&hyper_at(alpha), n, Branch::Plus)?;
                let max_dev = grid
                    .iter()
                    .map(|&x| (psi_hyper.eval(x) - psi_linear.eval(x)).norm())
                    .fold(0.0, f64::max);
                wavefunction_rows.push(AlphaWavefunctionRow {
                    alpha,
                    n,
                    max_deviation: max_dev,
                });
            }
        }
        let xs: Vec<f64> = rows.iter().map(|r| r.alpha).collect();
        let devs: Vec<f64> = rows.iter().map(|r| r.deviation).collect();
        level_reports.push(AlphaLevelReport {
            n,
            rows,
            fitted_order: fit_log_slope(&xs, &devs),
        });
    }
    Ok(AlphaReport {
        levels: level_reports,
        wavefunctions: wavefunction_rows,
    })
}

/// Least-squares slope of `ln y` against `ln x`; NaN when fewer than two
/// usable points.
pub fn fit_log_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let pts: Vec<(f64, f64)> = xs
        .iter()
        .zip(ys)
        .filter(|(&x, &y)| x > 0.0 && y > 0.0)
        .map(|(&x, &y)| (x.ln(), y.ln()))
        .collect();
    if pts.len() < 2 {
        return f64::NAN;
    }
    let nf = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / nf;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / nf;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}
