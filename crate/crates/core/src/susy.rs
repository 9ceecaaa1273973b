//! SUSYQM machinery: superpotentials, partner potentials, shape
//! invariance and the algebraic spectrum of the zero-energy problem.
//!
//! With a superpotential `W(x)` (complex here, because the vector
//! potential is imaginary) the partner potentials are
//!
//! ```text
//! V∓(x) = W²(x) ∓ ħ W'(x)
//! ```
//!
//! and shape invariance, `V⁺(x; a₁) = V⁻(x; a₂) + R(a₁)` with
//! `a₂ = f(a₁)`, turns the spectrum into a telescoping sum of
//! remainders: `ε_n = ε₀ + Σ_{k=1..n} R(a_k)`.
//!
//! The Klein-Gordon energy `E` is a frozen real parameter everywhere in
//! this module; nothing here mutates it.

use num_complex::Complex64;
use thiserror::Error;

use crate::model::{ModelKind, ModelParams, ParamError};

#[derive(Debug, Error, PartialEq)]
pub enum SusyError {
    #[error(transparent)]
    InvalidParams(#[from] ParamError),
    #[error("shape invariance violated: max deviation {max_deviation:.3e} exceeds tolerance {tolerance:.3e}")]
    ShapeInvarianceViolation { max_deviation: f64, tolerance: f64 },
}

/// Superpotential choice for one model at a frozen energy parameter.
///
/// The leading coefficient is `A = √(λ²+η²)` for the linear-mass model
/// and the positive root `B` of `B(B+ħα²) = λ²+η²` for the hyperbolic
/// one; positivity is what makes the ground state normalizable.
#[derive(Debug, Clone, Copy)]
pub struct SuperpotentialDescriptor {
    params: ModelParams,
    energy_parameter: f64,
    leading_coefficient: f64,
}

/// Positive leading coefficient of the model superpotential.
pub fn solve_leading_coefficient(params: &ModelParams) -> f64 {
    let s = params.coupling_squared();
    match params.model {
        ModelKind::LinearMass => s.sqrt(),
        ModelKind::HyperbolicMass => {
            // B = √(λ²+η²+ħ²α⁴/4) - ħα²/2, written without cancellation
            let ha2 = params.hbar * params.alpha * params.alpha;
            s / ((s + ha2 * ha2 / 4.0).sqrt() + ha2 / 2.0)
        }
    }
}

impl SuperpotentialDescriptor {
    pub fn new(params: ModelParams, energy_parameter: f64) -> Result<Self, SusyError> {
        params.validate()?;
        Ok(Self {
            params,
            energy_parameter,
            leading_coefficient: solve_leading_coefficient(&params),
        })
    }

    /// Replace the leading coefficient, bypassing the defining relation.
    /// Diagnostic use only (negative controls, parameter chains).
    pub fn with_leading_coefficient(mut self, a: f64) -> Self {
        self.leading_coefficient = a;
        self
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn energy_parameter(&self) -> f64 {
        self.energy_parameter
    }

    pub fn leading_coefficient(&self) -> f64 {
        self.leading_coefficient
    }

    /// `W(x)`: `Ax + iηE/(cA)` or `(B/α)tanh αx + iηE/(cB)`.
    pub fn superpotential(&self, x: f64) -> Complex64 {
        self.superpotential_at(self.leading_coefficient, x)
    }

    fn superpotential_at(&self, a: f64, x: f64) -> Complex64 {
        let p = &self.params;
        let shift = p.eta * self.energy_parameter / (p.c * a);
        match p.model {
            ModelKind::LinearMass => Complex64::new(a * x, shift),
            ModelKind::HyperbolicMass => {
                Complex64::new(a / p.alpha * (p.alpha * x).tanh(), shift)
            }
        }
    }

    /// Analytic `W'(x)`; real for both models.
    pub fn superpotential_derivative(&self, x: f64) -> f64 {
        self.superpotential_derivative_at(self.leading_coefficient, x)
    }

    fn superpotential_derivative_at(&self, a: f64, x: f64) -> f64 {
        let p = &self.params;
        match p.model {
            ModelKind::LinearMass => a,
            ModelKind::HyperbolicMass => {
                let t = (p.alpha * x).tanh();
                a * (1.0 - t * t)
            }
        }
    }

    /// Partner potentials `(V⁻, V⁺) = (W² - ħW', W² + ħW')`.
    pub fn partner_potentials(&self, x: f64) -> (Complex64, Complex64) {
        self.partner_potentials_at(self.leading_coefficient, x)
    }

    fn partner_potentials_at(&self, a: f64, x: f64) -> (Complex64, Complex64) {
        let w = self.superpotential_at(a, x);
        let dw = self.params.hbar * self.superpotential_derivative_at(a, x);
        let w2 = w * w;
        (w2 - dw, w2 + dw)
    }

    /// Parameter map `a₂ = f(a₁)`: identity for the linear-mass model,
    /// `a - ħα²` for the hyperbolic one.
    pub fn next_parameter(&self, a: f64) -> f64 {
        match self.params.model {
            ModelKind::LinearMass => a,
            ModelKind::HyperbolicMass => {
                a - self.params.hbar * self.params.alpha * self.params.alpha
            }
        }
    }

    /// Remainder `R(a)` of the shape-invariance relation.
    pub fn remainder(&self, a: f64) -> f64 {
        let p = &self.params;
        match p.model {
            ModelKind::LinearMass => 2.0 * p.hbar * a,
            ModelKind::HyperbolicMass => {
                let a2 = self.next_parameter(a);
                let e = self.energy_parameter;
                let coupling_term = |b: f64| {
                    b * b / (p.alpha * p.alpha) - p.eta * p.eta * e * e / (p.c * p.c * b * b)
                };
                coupling_term(a) - coupling_term(a2)
            }
        }
    }

    /// Parameter chain and remainders for the first `n` steps.
    pub fn ledger(&self, n: usize) -> ShapeInvarianceLedger {
        let mut a_sequence = Vec::with_capacity(n + 1);
        let mut remainders = Vec::with_capacity(n);
        let mut a = self.leading_coefficient;
        a_sequence.push(a);
        for _ in 0..n {
            remainders.push(self.remainder(a));
            a = self.next_parameter(a);
            a_sequence.push(a);
        }
        ShapeInvarianceLedger {
            a_sequence,
            remainders,
            parameter_map: match self.params.model {
                ModelKind::LinearMass => "a_{k+1} = a_k",
                ModelKind::HyperbolicMass => "a_{k+1} = a_k - hbar*alpha^2",
            },
        }
    }

    /// Check `|V⁺(x; a₁) - V⁻(x; a₂) - R(a₁)| <= tol` on the samples.
    pub fn verify_shape_invariance(
        &self,
        samples: &[f64],
        tolerance: f64,
    ) -> Result<ShapeInvarianceReport, SusyError> {
        assert!(!samples.is_empty(), "need at least one sample position");
        let a1 = self.leading_coefficient;
        let a2 = self.next_parameter(a1);
        let remainder = self.remainder(a1);
        let max_deviation = self.shape_invariance_deviation(a1, a2, remainder, samples);
        if max_deviation > tolerance {
            return Err(SusyError::ShapeInvarianceViolation {
                max_deviation,
                tolerance,
            });
        }
        Ok(ShapeInvarianceReport {
            max_deviation,
            samples_checked: samples.len(),
            a1,
            a2,
            remainder,
        })
    }

    /// Max over samples of `|V⁺(x; a1) - V⁻(x; a2) - remainder|` for an
    /// arbitrary parameter pair; the building block behind
    /// [`Self::verify_shape_invariance`] and its negative controls.
    pub fn shape_invariance_deviation(
        &self,
        a1: f64,
        a2: f64,
        remainder: f64,
        samples: &[f64],
    ) -> f64 {
        samples
            .iter()
            .map(|&x| {
                let plus = self.partner_potentials_at(a1, x).1;
                let minus = self.partner_potentials_at(a2, x).0;
                (plus - minus - remainder).norm()
            })
            .fold(0.0, f64::max)
    }

    /// Ground-state eigenvalue `ε₀(E)` of the effective potential.
    pub fn epsilon_ground(&self) -> f64 {
        let p = &self.params;
        let a = self.leading_coefficient;
        let c2 = p.c * p.c;
        let e = self.energy_parameter;
        match p.model {
            ModelKind::LinearMass => {
                p.mu * p.mu * c2 + p.hbar * a - p.lambda * p.lambda * e * e / (c2 * a * a)
            }
            ModelKind::HyperbolicMass => {
                let al2 = p.alpha * p.alpha;
                -(a * a / al2 - p.eta * p.eta * e * e / (c2 * a * a))
                    + p.coupling_squared() / al2
                    + (p.mu * p.mu * c2 * c2 - e * e) / c2
            }
        }
    }

    /// Closed-form `ε_n(E)`; the telescoped counterpart of the remainder
    /// accumulation in [`Self::epsilon_spectrum`].
    pub fn epsilon_level(&self, n: u32) -> f64 {
        let p = &self.params;
        let a = self.leading_coefficient;
        let c2 = p.c * p.c;
        let e = self.energy_parameter;
        let nf = f64::from(n);
        match p.model {
            ModelKind::LinearMass => {
                p.mu * p.mu * c2 + (2.0 * nf + 1.0) * p.hbar * a
                    - p.lambda * p.lambda * e * e / (c2 * a * a)
            }
            ModelKind::HyperbolicMass => {
                let ha2 = p.hbar * p.alpha * p.alpha;
                let beta = a - nf * ha2;
                p.mu * p.mu * c2 + (2.0 * nf + 1.0) * p.hbar * a
                    - nf * nf * ha2 * p.hbar
                    - e * e / c2 * (1.0 - p.eta * p.eta / (beta * beta))
            }
        }
    }

    /// Eigenvalues `ε_n(E) = ε₀ + Σ R(a_k)`, accumulated through the
    /// parameter chain. The hyperbolic model caps the level count at the
    /// largest integer strictly below `B/(ħα²)`; anything requested past
    /// the cap is omitted and reported as truncation.
    pub fn epsilon_spectrum(&self, n_max_request: u32) -> EpsilonSpectrum {
        let cap = match self.params.model {
            ModelKind::LinearMass => None,
            ModelKind::HyperbolicMass => {
                let ha2 = self.params.hbar * self.params.alpha * self.params.alpha;
                Some(strict_integer_below(self.leading_coefficient / ha2))
            }
        };
        let top = match cap {
            Some(None) => {
                return EpsilonSpectrum {
                    energy_parameter: self.energy_parameter,
                    levels: Vec::new(),
                    cap: Some(None),
                    truncated: true,
                }
            }
            Some(Some(m)) => n_max_request.min(m),
            None => n_max_request,
        };
        let epsilon_0 = self.epsilon_ground();
        let mut levels = Vec::with_capacity(top as usize + 1);
        let mut acc = 0.0;
        let mut a = self.leading_coefficient;
        for n in 0..=top {
            if n > 0 {
                acc += self.remainder(a);
                a = self.next_parameter(a);
            }
            levels.push(EpsilonLevel {
                n,
                epsilon: epsilon_0 + acc,
                excitation: acc,
            });
        }
        EpsilonSpectrum {
            energy_parameter: self.energy_parameter,
            levels,
            cap,
            truncated: top < n_max_request,
        }
    }

    /// Unnormalized ground state `exp(-(1/ħ)∫W)`.
    pub fn ground_state(&self, x: f64) -> Complex64 {
        let p = &self.params;
        let a = self.leading_coefficient;
        let shift = p.eta * self.energy_parameter / (p.c * a);
        let integral = match p.model {
            ModelKind::LinearMass => Complex64::new(a * x * x / 2.0, shift * x),
            ModelKind::HyperbolicMass => Complex64::new(
                a / (p.alpha * p.alpha) * ln_cosh(p.alpha * x),
                shift * x,
            ),
        };
        (-integral / p.hbar).exp()
    }

    /// Ground state with analytic first and second derivatives,
    /// `ψ' = -(W/ħ)ψ` and `ψ'' = ((W² - ħW')/ħ²)ψ`.
    pub fn ground_state_with_derivatives(&self, x: f64) -> (Complex64, Complex64, Complex64) {
        let psi = self.ground_state(x);
        let w = self.superpotential(x);
        let dw = self.superpotential_derivative(x);
        let h = self.params.hbar;
        let d1 = -w / h * psi;
        let d2 = (w * w - h * dw) / (h * h) * psi;
        (psi, d1, d2)
    }

    /// Raising operator `(-ħ d/dx + W)` applied pointwise to a function
    /// supplied with its analytic derivative; builds the level-(n)
    /// state at `a₁` from the level-(n-1) state at `a₂`.
    pub fn apply_raising<'a>(
        &'a self,
        psi: impl Fn(f64) -> Complex64 + 'a,
        dpsi: impl Fn(f64) -> Complex64 + 'a,
    ) -> impl Fn(f64) -> Complex64 + 'a {
        move |x| -self.params.hbar * dpsi(x) + self.superpotential(x) * psi(x)
    }

    /// Lowering operator `(ħ d/dx + W)`; annihilates the ground state.
    pub fn apply_lowering<'a>(
        &'a self,
        psi: impl Fn(f64) -> Complex64 + 'a,
        dpsi: impl Fn(f64) -> Complex64 + 'a,
    ) -> impl Fn(f64) -> Complex64 + 'a {
        move |x| self.params.hbar * dpsi(x) + self.superpotential(x) * psi(x)
    }
}

/// `ln cosh y` without overflow for large `|y|`.
fn ln_cosh(y: f64) -> f64 {
    let a = y.abs();
    a - std::f64::consts::LN_2 + (-2.0 * a).exp().ln_1p()
}

/// Largest integer strictly below `k`, if any non-negative one exists.
/// An exact integer `k` maps to `k - 1`.
pub(crate) fn strict_integer_below(k: f64) -> Option<u32> {
    if k.is_nan() || k <= 0.0 {
        return None;
    }
    let f = k.floor();
    let m = if f == k { f - 1.0 } else { f };
    if m < 0.0 {
        None
    } else if m >= u32::MAX as f64 {
        Some(u32::MAX)
    } else {
        Some(m as u32)
    }
}

/// Parameter chain `a₁…a_{n+1}` with the remainders `R(a_k)`.
#[derive(Debug, Clone)]
pub struct ShapeInvarianceLedger {
    pub a_sequence: Vec<f64>,
    pub remainders: Vec<f64>,
    pub parameter_map: &'static str,
}

#[derive(Debug, Clone, Copy)]
pub struct ShapeInvarianceReport {
    pub max_deviation: f64,
    pub samples_checked: usize,
    pub a1: f64,
    pub a2: f64,
    pub remainder: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpsilonLevel {
    pub n: u32,
    /// `ε_n(E)`
    pub epsilon: f64,
    /// `ε_n^(-) = ε_n - ε₀`; zero for the ground level
    pub excitation: f64,
}

/// Eigenvalues of the frozen-`E` problem.
///
/// `cap` is `None` for the unbounded linear-mass spectrum; for the
/// hyperbolic model it records the admissibility cap (which may itself
/// be empty when even `n = 0` is out).
#[derive(Debug, Clone)]
pub struct EpsilonSpectrum {
    pub energy_parameter: f64,
    pub levels: Vec<EpsilonLevel>,
    pub cap: Option<Option<u32>>,
    pub truncated: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn desc_linear(mu: f64, lambda: f64, eta: f64, e: f64) -> SuperpotentialDescriptor {
        SuperpotentialDescriptor::new(ModelParams::linear(mu, lambda, eta), e).unwrap()
    }

    fn desc_hyper(mu: f64, lambda: f64, eta: f64, alpha: f64, e: f64) -> SuperpotentialDescriptor {
        SuperpotentialDescriptor::new(ModelParams::hyperbolic(mu, lambda, eta, alpha), e).unwrap()
    }

    #[test]
    fn leading_coefficient_linear() {
        // 3-4-5 triple
        let d = desc_linear(1.0, 3.0, 4.0, 0.0);
        assert_abs_diff_eq!(d.leading_coefficient(), 5.0, epsilon = 1e-14);
        // eta = 0 reduces to lambda
        let d0 = desc_linear(1.0, 2.7, 0.0, 0.0);
        assert_abs_diff_eq!(d0.leading_coefficient(), 2.7, epsilon = 1e-14);
    }

    #[test]
    fn leading_coefficient_hyperbolic() {
        let d = desc_hyper(1.0, 2.0, 0.0, 1.0, 0.0);
        let b = d.leading_coefficient();
        assert_abs_diff_eq!(b, 4.25f64.sqrt() - 0.5, epsilon = 1e-14);
        // defining relation B(B + ħα²) = λ² + η²
        assert_abs_diff_eq!(b * (b + 1.0), 4.0, epsilon = 1e-12);
    }

    #[test]
    fn superpotential_values() {
        let d = desc_linear(1.0, 1.0, 0.0, 0.0).with_leading_coefficient(1.0);
        assert_eq!(d.superpotential(0.5), Complex64::new(0.5, 0.0));

        let d = desc_linear(1.0, 3.0, 4.0, 1.0);
        let w0 = d.superpotential(0.0);
        assert_abs_diff_eq!(w0.re, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(w0.im, 0.8, epsilon = 1e-15);

        let d = desc_hyper(1.0, 1.0, 0.0, 1.0, 0.0).with_leading_coefficient(1.0);
        assert_abs_diff_eq!(d.superpotential(40.0).re, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn partner_potentials_at_origin() {
        let d = desc_linear(1.0, 1.0, 0.0, 0.0);
        let (vm, vp) = d.partner_potentials(0.0);
        assert_abs_diff_eq!(vm.re, -1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(vp.re, 1.0, epsilon = 1e-14);

        // V∓(0) = -B(B±ħα²) + B² at η = 0 gives (-B, +B) for B = 1
        let d = desc_hyper(1.0, 2.0f64.sqrt(), 0.0, 1.0, 0.0);
        assert_abs_diff_eq!(d.leading_coefficient(), 1.0, epsilon = 1e-12);
        let (vm, vp) = d.partner_potentials(0.0);
        assert_abs_diff_eq!(vm.re, -1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(vp.re, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn partner_difference_is_twice_derivative() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..50 {
            let d = desc_hyper(
                rng.random_range(0.0..2.0),
                rng.random_range(0.2..3.0),
                rng.random_range(-2.0..2.0),
                rng.random_range(0.3..1.5),
                rng.random_range(-2.0..2.0),
            );
            let x = rng.random_range(-4.0..4.0);
            let (vm, vp) = d.partner_potentials(x);
            let expect = 2.0 * d.params().hbar * d.superpotential_derivative(x);
            assert!((vp - vm - expect).norm() < 1e-12 * (1.0 + vp.norm()));
        }
    }

    #[test]
    fn shape_invariance_both_models() {
        let xs: Vec<f64> = (0..50).map(|i| -5.0 + 10.0 * i as f64 / 49.0).collect();
        let d = desc_linear(1.0, 1.3, 0.8, 1.7);
        let r = d.verify_shape_invariance(&xs, 1e-10).unwrap();
        assert_abs_diff_eq!(
            r.remainder,
            2.0 * d.leading_coefficient(),
            epsilon = 1e-14
        );

        let d = desc_hyper(1.0, 2.0, 0.0, 1.0, 0.0);
        let r = d.verify_shape_invariance(&xs, 1e-10).unwrap();
        assert_abs_diff_eq!(r.a2, d.leading_coefficient() - 1.0, epsilon = 1e-14);
    }

    #[test]
    fn shape_invariance_negative_control() {
        // wrong parameter map a₂ = a₁ for the hyperbolic model
        let xs: Vec<f64> = (0..20).map(|i| -3.0 + 6.0 * i as f64 / 19.0).collect();
        let d = desc_hyper(1.0, 2.0, 0.0, 1.0, 0.0);
        let a1 = d.leading_coefficient();
        let dev = d.shape_invariance_deviation(a1, a1, d.remainder(a1), &xs);
        assert!(dev > 1e-10, "wrong map must violate the identity, got {dev}");
    }

    #[test]
    fn epsilon_spectrum_linear_model() {
        // ε_n = μ²c² + (2n+1)ħA at E = 0 with A = 1
        let d = desc_linear(1.0, 1.0, 0.0, 0.0);
        let spec = d.epsilon_spectrum(5);
        assert_eq!(spec.levels.len(), 6);
        assert!(!spec.truncated);
        for lvl in &spec.levels {
            let expect = 1.0 + (2.0 * f64::from(lvl.n) + 1.0);
            assert_abs_diff_eq!(lvl.epsilon, expect, epsilon = 1e-12);
            assert_abs_diff_eq!(lvl.epsilon, d.epsilon_level(lvl.n), epsilon = 1e-12);
        }
        assert_eq!(spec.levels[0].excitation, 0.0);
    }

    #[test]
    fn epsilon_spectrum_hyperbolic_cap() {
        // B ≈ 1.5616 so only n = 0, 1 are admissible
        let d = desc_hyper(1.0, 2.0, 0.0, 1.0, 0.0);
        let spec = d.epsilon_spectrum(5);
        assert_eq!(spec.levels.len(), 2);
        assert!(spec.truncated);
        assert_eq!(spec.cap, Some(Some(1)));
        for lvl in &spec.levels {
            assert_abs_diff_eq!(lvl.epsilon, d.epsilon_level(lvl.n), epsilon = 1e-12);
        }
    }

    #[test]
    fn epsilon_excitations_increase() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for _ in 0..20 {
            let model_ii = rng.random_bool(0.5);
            let d = if model_ii {
                desc_hyper(
                    rng.random_range(0.0..2.0),
                    rng.random_range(0.5..3.0),
                    rng.random_range(-1.0..1.0),
                    rng.random_range(0.3..1.0),
                    0.0,
                )
            } else {
                desc_linear(
                    rng.random_range(0.0..2.0),
                    rng.random_range(0.5..3.0),
                    rng.random_range(-1.0..1.0),
                    rng.random_range(-2.0..2.0),
                )
            };
            let spec = d.epsilon_spectrum(8);
            assert_eq!(spec.levels[0].excitation, 0.0);
            for pair in spec.levels.windows(2) {
                assert!(
                    pair[1].excitation > pair[0].excitation,
                    "excitations must increase: {:?}",
                    spec.levels
                );
            }
        }
    }

    #[test]
    fn telescoped_form_matches_accumulation() {
        let d = desc_hyper(1.2, 2.5, 0.7, 0.8, 1.1);
        let spec = d.epsilon_spectrum(3);
        for lvl in &spec.levels {
            assert_abs_diff_eq!(lvl.epsilon, d.epsilon_level(lvl.n), epsilon = 1e-10);
        }
    }

    #[test]
    fn ledger_chains_parameters() {
        let d = desc_hyper(1.0, 2.0, 0.0, 1.0, 0.0);
        let ledger = d.ledger(2);
        let b = d.leading_coefficient();
        assert_eq!(ledger.a_sequence.len(), 3);
        assert_abs_diff_eq!(ledger.a_sequence[1], b - 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(ledger.a_sequence[2], b - 2.0, epsilon = 1e-14);
        assert_eq!(ledger.remainders.len(), 2);
    }

    #[test]
    fn ground_state_solves_zero_mode() {
        // exp(-(1/ħ)∫W) with analytic second derivative satisfies the
        // zero-eigenvalue equation of V⁻
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..20 {
            let model_ii = rng.random_bool(0.5);
            let d = if model_ii {
                desc_hyper(
                    rng.random_range(0.0..2.0),
                    rng.random_range(0.3..3.0),
                    rng.random_range(-2.0..2.0),
                    rng.random_range(0.3..1.5),
                    rng.random_range(-2.0..2.0),
                )
            } else {
                desc_linear(
                    rng.random_range(0.0..2.0),
                    rng.random_range(0.3..3.0),
                    rng.random_range(-2.0..2.0),
                    rng.random_range(-2.0..2.0),
                )
            };
            let h = d.params().hbar;
            let mut worst: f64 = 0.0;
            let mut peak: f64 = 0.0;
            for i in 0..41 {
                let x = -4.0 + 8.0 * i as f64 / 40.0;
                let (psi, _, d2) = d.ground_state_with_derivatives(x);
                let vm = d.partner_potentials(x).0;
                worst = worst.max((-h * h * d2 + vm * psi).norm());
                peak = peak.max(psi.norm());
            }
            assert!(worst / peak <= 1e-6, "residual {worst} vs peak {peak}");
        }
    }

    #[test]
    fn lowering_annihilates_ground_state() {
        let d = desc_linear(1.0, 1.2, 0.9, 0.7);
        let psi = move |x: f64| d.ground_state(x);
        let dpsi = move |x: f64| d.ground_state_with_derivatives(x).1;
        let lowered = d.apply_lowering(psi, dpsi);
        for i in 0..21 {
            let x = -3.0 + 6.0 * i as f64 / 20.0;
            assert!(lowered(x).norm() <= 1e-13);
        }
    }

    #[test]
    fn strict_floor_reading() {
        assert_eq!(strict_integer_below(1.5615), Some(1));
        assert_eq!(strict_integer_below(2.0), Some(1));
        assert_eq!(strict_integer_below(1.0), Some(0));
        assert_eq!(strict_integer_below(0.5), Some(0));
        assert_eq!(strict_integer_below(0.0), None);
        assert_eq!(strict_integer_below(-0.3), None);
    }
}
