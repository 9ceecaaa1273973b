//! Independent numerical verification of the closed forms.
//!
//! The zero-energy operator `-ħ² d²/dx² + V_E(x)` is discretized by
//! 3-point finite differences on a symmetric uniform grid with Dirichlet
//! walls at `±L`; the resulting dense complex non-Hermitian matrix is
//! diagonalized (Hessenberg reduction + shifted QR through LAPACK's
//! zgeev), eigenvalue errors scale as `O(h²)`. Quantization roots
//! `ε_n(E) = 0` are located by bracketed bisection.

use ndarray::Array2;
use ndarray_linalg::EigVals;
use num_complex::Complex64;
use thiserror::Error;

use crate::model::{ModelKind, ModelParams};
use crate::susy::SuperpotentialDescriptor;

#[derive(Debug, Error, PartialEq)]
pub enum OracleError {
    #[error("dense eigensolve failed to converge for a {size}x{size} matrix: {detail}")]
    ConvergenceFailure { size: usize, detail: String },
    #[error("no sign change on bracket [{lo}, {hi}]: f(lo)={f_lo:.6e}, f(hi)={f_hi:.6e}")]
    NoSignChange { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },
}

/// Discretized operator `-ħ² D₂ + diag(V)` on the interior of a
/// symmetric grid of `num_points` nodes over `[-L, L]`.
#[derive(Debug, Clone)]
pub struct GridProblem {
    pub half_width: f64,
    pub num_points: usize,
    pub spacing: f64,
    pub energy_parameter: Option<f64>,
    positions: Vec<f64>,
    matrix: Array2<Complex64>,
}

/// Grid nodes `x_j = (j - m)h` with `m = (N-1)/2`, exactly symmetric
/// (`x_j = -x_{N-1-j}`) and containing `x = 0`.
pub fn symmetric_positions(half_width: f64, num_points: usize) -> Vec<f64> {
    assert!(num_points >= 3 && num_points % 2 == 1, "grid must be odd-sized with a center node");
    assert!(half_width > 0.0);
    let h = 2.0 * half_width / (num_points - 1) as f64;
    let mid = ((num_points - 1) / 2) as f64;
    (0..num_points).map(|j| (j as f64 - mid) * h).collect()
}

/// Discretize the effective potential of a model at frozen energy `E`.
pub fn discretize(
    params: &ModelParams,
    energy: f64,
    half_width: f64,
    num_points: usize,
) -> GridProblem {
    let mut problem = discretize_potential(
        |x| params.effective_potential(energy, x),
        params.hbar,
        half_width,
        num_points,
    );
    problem.energy_parameter = Some(energy);
    problem
}

/// Discretize an arbitrary complex potential (used for the SUSY partner
/// potentials, box-spectrum checks and the like).
pub fn discretize_potential(
    potential: impl Fn(f64) -> Complex64,
    hbar: f64,
    half_width: f64,
    num_points: usize,
) -> GridProblem {
    assert!(num_points <= 2001, "dense eigensolves are capped at 2001 grid points");
    let positions = symmetric_positions(half_width, num_points);
    let h = positions[1] - positions[0];
    let dim = num_points - 2;
    let kinetic = hbar * hbar / (h * h);
    let mut matrix = Array2::<Complex64>::zeros((dim, dim));
    for j in 0..dim {
        matrix[(j, j)] = Complex64::new(2.0 * kinetic, 0.0) + potential(positions[j + 1]);
        if j + 1 < dim {
            matrix[(j, j + 1)] = Complex64::new(-kinetic, 0.0);
            matrix[(j + 1, j)] = Complex64::new(-kinetic, 0.0);
        }
    }
    GridProblem {
        half_width,
        num_points,
        spacing: h,
        energy_parameter: None,
        positions,
        matrix,
    }
}

/// Eigenvalues sorted by real part (ties by imaginary part); `max_imag`
/// is the largest |Im| among the returned ones; a PT-unbroken spectrum
/// keeps it at grid tolerance.
#[derive(Debug, Clone)]
pub struct OracleSpectrum {
    pub eigenvalues: Vec<Complex64>,
    pub max_imag: f64,
}

impl GridProblem {
    pub fn interior_dim(&self) -> usize {
        self.num_points - 2
    }

    /// All grid nodes including the Dirichlet walls.
    pub fn positions(&self) -> &[f64] {
        &self.positions
    }

    /// The `k` smallest-real-part eigenvalues.
    pub fn eigen_spectrum(&self, k: usize) -> Result<OracleSpectrum, OracleError> {
        assert!(k <= self.interior_dim(), "cannot request more eigenvalues than the matrix holds");
        let eigen = self
            .matrix
            .eigvals()
            .map_err(|err| OracleError::ConvergenceFailure {
                size: self.interior_dim(),
                detail: err.to_string(),
            })?;
        let mut all: Vec<Complex64> = eigen.to_vec();
        all.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        all.truncate(k);
        let max_imag = all.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
        Ok(OracleSpectrum {
            eigenvalues: all,
            max_imag,
        })
    }

    /// Number of eigenvalues with real part below a threshold
    /// (bound-state count against the continuum edge).
    pub fn count_below(&self, threshold: f64) -> Result<usize, OracleError> {
        let spectrum = self.eigen_spectrum(self.interior_dim())?;
        Ok(spectrum
            .eigenvalues
            .iter()
            .filter(|z| z.re < threshold)
            .count())
    }
}

/// Bracketed bisection for `f(E) = 0`; the closure is typically a
/// closed-form `ε_n(E)` or a grid eigenvalue at frozen `E`.
pub fn quantization_root(
    f: impl Fn(f64) -> f64,
    bracket: (f64, f64),
) -> Result<f64, OracleError> {
    let (mut lo, mut hi) = bracket;
    assert!(lo < hi, "bracket must be ordered");
    let f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(OracleError::NoSignChange {
            lo,
            hi,
            f_lo,
            f_hi,
        });
    }
    let mut sign_lo = f_lo.signum();
    let mut mid;
    loop {
        mid = 0.5 * (lo + hi);
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == sign_lo {
            lo = mid;
            sign_lo = f_mid.signum();
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-14 * mid.abs().max(1.0) {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Root of the closed-form `ε_n(E)` on the bracket; matches the
/// generating formulas for the bound-state energies.
pub fn quantization_root_closed(
    params: &ModelParams,
    n: u32,
    bracket: (f64, f64),
) -> Result<f64, OracleError> {
    let eps = |e: f64| {
        SuperpotentialDescriptor::new(*params, e)
            .expect("validated parameters")
            .epsilon_level(n)
    };
    quantization_root(eps, bracket)
}

/// Root of the grid eigenvalue `ε_n^{oracle}(E)` on the bracket,
/// the fully independent route (each evaluation is an eigensolve).
pub fn quantization_root_oracle(
    params: &ModelParams,
    n: u32,
    bracket: (f64, f64),
    half_width: f64,
    num_points: usize,
) -> Result<f64, OracleError> {
    let eps = |e: f64| {
        discretize(params, e, half_width, num_points)
            .eigen_spectrum(n as usize + 1)
            .expect("eigensolve")
            .eigenvalues[n as usize]
            .re
    };
    // an eigensolve per evaluation: find the sign change coarsely first
    quantization_root(eps, bracket)
}

/// Max-norm residual of the finite-difference operator applied to a
/// sampled wavefunction at frozen energy `E`, relative to the peak of
/// `|ψ|`. For the analytic eigenfunction at `E = E_n` this decays as
/// `O(h²)`; perturbing `E` destroys it.
pub fn residual_check(
    params: &ModelParams,
    energy: f64,
    psi: impl Fn(f64) -> Complex64,
    half_width: f64,
    num_points: usize,
) -> f64 {
    let positions = symmetric_positions(half_width, num_points);
    let h = positions[1] - positions[0];
    let kinetic = params.hbar * params.hbar / (h * h);
    let samples: Vec<Complex64> = positions.iter().map(|&x| psi(x)).collect();
    let peak = samples.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let mut worst = 0.0f64;
    for j in 1..positions.len() - 1 {
        let second = kinetic * (2.0 * samples[j] - samples[j - 1] - samples[j + 1]);
        let residual = second + params.effective_potential(energy, positions[j]) * samples[j];
        worst = worst.max(residual.norm());
    }
    worst / peak
}

/// Conservative truncation widths: 10 Gaussian widths plus the complex
/// shift for the linear model, 20 decay lengths for the hyperbolic one.
pub fn default_half_width(params: &ModelParams, energy: f64) -> f64 {
    match params.model {
        ModelKind::LinearMass => {
            let a = crate::susy::solve_leading_coefficient(params);
            10.0 * (params.hbar / a).sqrt() + (params.eta * energy / (params.c * a * a)).abs()
        }
        ModelKind::HyperbolicMass => 20.0 / params.alpha,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::{self, Branch};
    use approx::assert_abs_diff_eq;

    #[test]
    fn grid_is_exactly_symmetric() {
        let p = symmetric_positions(7.0, 101);
        for j in 0..p.len() {
            assert_eq!(p[j], -p[p.len() - 1 - j]);
        }
        assert_eq!(p[50], 0.0);
    }

    #[test]
    fn particle_in_a_box_spectrum() {
        // constant V₀: eigenvalues V₀ + ħ²(kπ/2L)², k = 1, 2, ...
        let v0 = 3.0;
        let l = 2.0;
        let problem = discretize_potential(|_| Complex64::new(v0, 0.0), 1.0, l, 201);
        let spec = problem.eigen_spectrum(3).unwrap();
        for (k, z) in spec.eigenvalues.iter().enumerate() {
            let exact = v0 + ((k as f64 + 1.0) * std::f64::consts::PI / (2.0 * l)).powi(2);
            assert_abs_diff_eq!(z.re, exact, epsilon = 2e-3 * exact);
            assert_abs_diff_eq!(z.im, 0.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn harmonic_spectrum_at_zero_eta() {
        // μ=1, λ=1, η=0, E=0: ε_n = 2, 4, 6, 8 up to O(h²)
        let p = ModelParams::linear(1.0, 1.0, 0.0);
        let problem = discretize(&p, 0.0, 10.0, 301);
        let spec = problem.eigen_spectrum(4).unwrap();
        for (n, z) in spec.eigenvalues.iter().enumerate() {
            let exact = 2.0 * (n as f64 + 1.0);
            assert!((z.re - exact).abs() <= 5e-3 * exact, "n={n}: {} vs {exact}", z.re);
        }
        assert!(spec.max_imag <= 1e-10);
    }

    #[test]
    fn complex_potential_keeps_real_spectrum() {
        // PT-unbroken: imaginary parts at grid tolerance even with η ≠ 0
        let p = ModelParams::linear(1.0, 1.0, 0.6);
        let problem = discretize(&p, 1.2, 11.0, 301);
        let spec = problem.eigen_spectrum(4).unwrap();
        assert!(spec.max_imag <= 1e-8, "max imag {}", spec.max_imag);
        let desc = SuperpotentialDescriptor::new(p, 1.2).unwrap();
        for (n, z) in spec.eigenvalues.iter().enumerate() {
            let closed = desc.epsilon_level(n as u32);
            assert!((z.re - closed).abs() <= 5e-3 * closed.abs().max(1.0));
        }
    }

    #[test]
    fn quantization_root_linear_examples() {
        // μ=0, λ=1, η=0, n=0: ε₀(E) = 2 - E² has the root E = 1... with μ=1
        let p = ModelParams::linear(1.0, 1.0, 0.0);
        let e = quantization_root_closed(&p, 0, (0.0, 10.0)).unwrap();
        assert_abs_diff_eq!(e, 2.0f64.sqrt(), epsilon = 1e-10);

        let p345 = ModelParams::linear(1.0, 3.0, 4.0);
        let e0 = quantization_root_closed(&p345, 0, (0.0, 10.0)).unwrap();
        assert_abs_diff_eq!(e0, 5.0 / 3.0 * 6.0f64.sqrt(), epsilon = 1e-9);
    }

    #[test]
    fn quantization_no_root_when_constraint_fails() {
        // η² > B²: the E² coefficient of ε₀ is positive, no sign change
        let p = ModelParams::hyperbolic(1.0, 1.0, 1.5, 1.0);
        let got = quantization_root_closed(&p, 0, (0.0, 50.0));
        assert!(matches!(got, Err(OracleError::NoSignChange { .. })));
    }

    #[test]
    fn massless_root_is_unity() {
        // μ=0, λ=1, η=0, n=0: ε₀(E) = 1 - E², root at E = 1
        let p = ModelParams::linear(0.0, 1.0, 0.0);
        let e = quantization_root_closed(&p, 0, (0.5, 2.0)).unwrap();
        assert_abs_diff_eq!(e, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn residual_scales_quadratically_and_detects_wrong_energy() {
        let p = ModelParams::linear(1.0, 1.0, 0.0);
        let wf = analytic::wavefunction(&p, 0, Branch::Plus).unwrap();
        let e0 = wf.spec.energy;
        let coarse = residual_check(&p, e0, |x| wf.eval(x), 10.0, 1001);
        let fine = residual_check(&p, e0, |x| wf.eval(x), 10.0, 2001);
        let order = (coarse / fine).log2();
        assert!((order - 2.0).abs() <= 0.2, "order {order}");
        let perturbed = residual_check(&p, e0 * 1.01, |x| wf.eval(x), 10.0, 2001);
        assert!(
            perturbed >= 1e3 * fine,
            "perturbation must inflate the residual: {perturbed} vs {fine}"
        );
    }
}
