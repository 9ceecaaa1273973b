//! Special functions on complex arguments: Hermite and Jacobi
//! polynomials by three-term recurrence, the complex log-Gamma function,
//! and composite Gauss-Legendre quadrature.

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SpecfunError {
    #[error("log-gamma pole at non-positive integer {0}")]
    Pole(f64),
    #[error("Jacobi recurrence breakdown at degree {degree}: coefficient factor |{factor}| vanished")]
    RecurrenceBreakdown { degree: usize, factor: Complex64 },
}

/// Physicists' Hermite polynomial `H_n(z)`.
///
/// Three-term recurrence `H_{k+1} = 2z H_k - 2k H_{k-1}`; stable for the
/// moderate degrees (`n <= 30`) used here.
pub fn hermite(n: usize, z: Complex64) -> Complex64 {
    if n == 0 {
        return Complex64::new(1.0, 0.0);
    }
    let mut prev = Complex64::new(1.0, 0.0);
    let mut cur = 2.0 * z;
    for k in 1..n {
        let next = 2.0 * z * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Jacobi polynomial `P_n^{(a,b)}(z)` with complex parameters.
///
/// Uses the standard three-term recurrence. For degenerate complex
/// parameters a leading recurrence coefficient can vanish; that is
/// reported as [`SpecfunError::RecurrenceBreakdown`] instead of silently
/// dividing by a tiny number.
pub fn jacobi(n: usize, a: Complex64, b: Complex64, z: Complex64) -> Result<Complex64, SpecfunError> {
    let one = Complex64::new(1.0, 0.0);
    if n == 0 {
        return Ok(one);
    }
    let ab = a + b;
    let mut prev = one;
    let mut cur = (a - b) / 2.0 + (ab + 2.0) * z / 2.0;
    for k in 2..=n {
        let kf = k as f64;
        // factors of the leading coefficient 2k(k+a+b)(2k+a+b-2)
        for factor in [ab + kf, ab + (2.0 * kf - 2.0)] {
            if factor.norm() < 1e-12 {
                return Err(SpecfunError::RecurrenceBreakdown { degree: k, factor });
            }
        }
        let c1 = 2.0 * kf * (kf + ab) * (2.0 * kf + ab - 2.0);
        let c2 = (2.0 * kf + ab - 1.0) * ((2.0 * kf + ab) * (2.0 * kf + ab - 2.0) * z + a * a - b * b);
        let c3 = 2.0 * (kf + a - 1.0) * (kf + b - 1.0) * (2.0 * kf + ab);
        let next = (c2 * cur - c3 * prev) / c1;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// `d/dz P_n^{(a,b)}(z) = (n+a+b+1)/2 · P_{n-1}^{(a+1,b+1)}(z)`.
pub fn jacobi_derivative(
    n: usize,
    a: Complex64,
    b: Complex64,
    z: Complex64,
) -> Result<Complex64, SpecfunError> {
    if n == 0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let scale = (a + b + (n as f64 + 1.0)) / 2.0;
    Ok(scale * jacobi(n - 1, a + 1.0, b + 1.0, z)?)
}

// Lanczos coefficients, g = 7, 9 terms (the GSL/Numerical-Recipes set),
// kept digit-for-digit as published.
const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Principal-branch `log Γ(z)`.
///
/// Lanczos approximation for `Re z >= 0.5`, reflection formula
/// otherwise. Poles at the non-positive integers are reported.
pub fn log_gamma(z: Complex64) -> Result<Complex64, SpecfunError> {
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.floor() {
        return Err(SpecfunError::Pole(z.re));
    }
    if z.re < 0.5 {
        // log Γ(z) = log π - log sin(πz) - log Γ(1-z)
        let pi = std::f64::consts::PI;
        let s = (pi * z).sin();
        return Ok(Complex64::new(pi.ln(), 0.0) - s.ln() - log_gamma(1.0 - z)?);
    }
    let zm = z - 1.0;
    let mut sum = Complex64::new(LANCZOS[0], 0.0);
    for (k, &c) in LANCZOS.iter().enumerate().skip(1) {
        sum += c / (zm + k as f64);
    }
    let t = zm + LANCZOS_G + 0.5;
    let half_log_two_pi = 0.918_938_533_204_672_7; // ln(2π)/2
    Ok(half_log_two_pi + (zm + 0.5) * t.ln() - t + sum.ln())
}

/// `Γ(z)` through [`log_gamma`]; use only where overflow is impossible.
pub fn gamma(z: Complex64) -> Result<Complex64, SpecfunError> {
    Ok(log_gamma(z)?.exp())
}

/// Emitted when an integrand has not decayed at the truncation edges.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationWarning {
    pub edge_magnitude: f64,
    pub max_magnitude: f64,
}

/// Composite Gauss-Legendre rule on `[-L, L]`, 32 nodes per panel.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    half_width: f64,
}

const PANEL_POINTS: usize = 32;

impl QuadratureRule {
    /// Build a rule over `[-half_width, half_width]` with `panels`
    /// equal-width panels.
    pub fn gauss_legendre(half_width: f64, panels: usize) -> Self {
        assert!(half_width > 0.0 && half_width.is_finite());
        let panels = panels.max(1);
        let (ref_nodes, ref_weights) = gauss_legendre_reference(PANEL_POINTS);
        let width = 2.0 * half_width / panels as f64;
        let mut nodes = Vec::with_capacity(panels * PANEL_POINTS);
        let mut weights = Vec::with_capacity(panels * PANEL_POINTS);
        for p in 0..panels {
            let left = -half_width + p as f64 * width;
            let mid = left + 0.5 * width;
            for i in 0..PANEL_POINTS {
                nodes.push(mid + 0.5 * width * ref_nodes[i]);
                weights.push(0.5 * width * ref_weights[i]);
            }
        }
        Self {
            nodes,
            weights,
            half_width,
        }
    }

    /// Rule sized for an integrand decaying like `exp(-rate·x²)` around a
    /// real center offset: `L = |center| + 12/√rate`, panels fine enough
    /// to resolve the bump.
    pub fn for_gaussian_decay(center: f64, rate: f64) -> Self {
        assert!(rate > 0.0);
        let half_width = center.abs() + 12.0 / rate.sqrt();
        let panels = (half_width * rate.sqrt()).ceil() as usize + 4;
        Self::gauss_legendre(half_width, panels)
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn weight_sum(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Integrate a complex-valued function over `[-L, L]`.
    pub fn integrate(&self, f: impl Fn(f64) -> Complex64) -> Complex64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    /// Integrate and check that the integrand has decayed at `±L`
    /// (|f(±L)| must stay below `1e-10 · max |f|`).
    pub fn integrate_checked(
        &self,
        f: impl Fn(f64) -> Complex64,
    ) -> (Complex64, Option<TruncationWarning>) {
        let mut max_mag = 0.0f64;
        let mut sum = Complex64::new(0.0, 0.0);
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            let v = f(x);
            max_mag = max_mag.max(v.norm());
            sum += w * v;
        }
        let edge = f(-self.half_width).norm().max(f(self.half_width).norm());
        let warning = if edge > 1e-10 * max_mag {
            Some(TruncationWarning {
                edge_magnitude: edge,
                max_magnitude: max_mag,
            })
        } else {
            None
        };
        (sum, warning)
    }
}

/// Nodes and weights of the `n`-point Gauss-Legendre rule on `[-1, 1]`,
/// by Newton iteration on the Legendre recurrence.
fn gauss_legendre_reference(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Chebyshev-like initial guess
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        let (_, d) = legendre_with_derivative(n, 0.0);
        nodes[n / 2] = 0.0;
        weights[n / 2] = 2.0 / (d * d);
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn hermite_low_orders() {
        assert_eq!(hermite(0, c(0.3, -2.0)), c(1.0, 0.0));
        // H_1 = 2z
        assert_eq!(hermite(1, c(0.0, 1.0)), c(0.0, 2.0));
        // H_2 = 4z² - 2 at z = 1+i
        let h2 = hermite(2, c(1.0, 1.0));
        assert_abs_diff_eq!(h2.re, -2.0, epsilon = 1e-13);
        assert_abs_diff_eq!(h2.im, 8.0, epsilon = 1e-13);
    }

    #[test]
    fn hermite_ode_residual() {
        // H''_n - 2z H'_n + 2n H_n = 0 with derivatives from the
        // recurrence identities H'_n = 2n H_{n-1}
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 2..=15usize {
            for _ in 0..20 {
                let z = c(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
                let h = hermite(n, z);
                let d1 = 2.0 * n as f64 * hermite(n - 1, z);
                let d2 = 4.0 * (n * (n - 1)) as f64 * hermite(n - 2, z);
                let residual = d2 - 2.0 * z * d1 + 2.0 * n as f64 * h;
                let scale = d2.norm().max((2.0 * z * d1).norm()).max(h.norm()).max(1.0);
                assert!(
                    residual.norm() <= 1e-9 * scale,
                    "n={n} z={z} residual={residual}"
                );
            }
        }
    }

    #[test]
    fn jacobi_low_orders() {
        let a = c(0.7, 0.4);
        let b = c(-0.2, 1.1);
        let z = c(0.3, -0.8);
        assert_eq!(jacobi(0, a, b, z).unwrap(), c(1.0, 0.0));
        // degree one closed form (a+b+2)z/2 + (a-b)/2
        let p1 = jacobi(1, a, b, z).unwrap();
        let expect = (a + b + 2.0) * z / 2.0 + (a - b) / 2.0;
        assert!((p1 - expect).norm() < 1e-14);
    }

    #[test]
    fn jacobi_symmetry_relation() {
        // P_n^{(a,b)}(-z) = (-1)^n P_n^{(b,a)}(z)
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..100 {
            let a = c(rng.random_range(-1.5..2.0), rng.random_range(-2.0..2.0));
            let b = c(rng.random_range(-1.5..2.0), rng.random_range(-2.0..2.0));
            let z = c(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
            for n in 0..=10usize {
                let lhs = jacobi(n, a, b, -z).unwrap();
                let rhs = jacobi(n, b, a, z).unwrap() * if n % 2 == 0 { 1.0 } else { -1.0 };
                assert!(
                    (lhs - rhs).norm() <= 1e-10 * lhs.norm().max(rhs.norm()).max(1.0),
                    "n={n} a={a} b={b} z={z}"
                );
            }
        }
    }

    #[test]
    fn jacobi_ode_residual() {
        // (1-z²)P'' + [b-a-(a+b+2)z]P' + n(n+a+b+1)P = 0
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..25 {
            let a = c(rng.random_range(0.3..3.0), rng.random_range(-2.0..2.0));
            let b = a.conj();
            let z = c(rng.random_range(-0.95..0.95), 0.0);
            for n in 1..=10usize {
                let p = jacobi(n, a, b, z).unwrap();
                let d1 = jacobi_derivative(n, a, b, z).unwrap();
                let d2 = if n >= 2 {
                    (a + b + (n as f64 + 1.0)) * (a + b + (n as f64 + 2.0)) / 4.0
                        * jacobi(n - 2, a + 2.0, b + 2.0, z).unwrap()
                } else {
                    c(0.0, 0.0)
                };
                let t1 = (1.0 - z * z) * d2;
                let t2 = (b - a - (a + b + 2.0) * z) * d1;
                let t3 = (n as f64) * (n as f64 + a + b + 1.0) * p;
                let residual = t1 + t2 + t3;
                let scale = t1.norm().max(t2.norm()).max(t3.norm()).max(1.0);
                assert!(
                    residual.norm() <= 1e-8 * scale,
                    "n={n} a={a} z={z} residual={residual}"
                );
            }
        }
    }

    #[test]
    fn jacobi_breakdown_is_reported() {
        // a+b = -2 makes the degree-2 leading coefficient vanish
        let a = c(-1.0, 0.0);
        let b = c(-1.0, 0.0);
        let got = jacobi(2, a, b, c(0.3, 0.0));
        assert!(matches!(got, Err(SpecfunError::RecurrenceBreakdown { degree: 2, .. })));
    }

    #[test]
    fn log_gamma_integers_and_half() {
        assert_abs_diff_eq!(gamma(c(1.0, 0.0)).unwrap().re, 1.0, epsilon = 1e-13);
        assert_abs_diff_eq!(gamma(c(2.0, 0.0)).unwrap().re, 1.0, epsilon = 1e-13);
        let g_half = gamma(c(0.5, 0.0)).unwrap();
        assert_abs_diff_eq!(g_half.re, std::f64::consts::PI.sqrt(), epsilon = 1e-13);
        assert_abs_diff_eq!(g_half.im, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn log_gamma_poles() {
        assert_eq!(log_gamma(c(0.0, 0.0)), Err(SpecfunError::Pole(0.0)));
        assert_eq!(log_gamma(c(-3.0, 0.0)), Err(SpecfunError::Pole(-3.0)));
        assert!(log_gamma(c(-2.5, 0.0)).is_ok());
    }

    #[test]
    fn gamma_magnitude_identity_on_imaginary_shift() {
        // |Γ(1+iy)|² = πy/sinh(πy)
        let g = gamma(c(1.0, 1.0)).unwrap();
        let target = (std::f64::consts::PI / std::f64::consts::PI.sinh()).sqrt();
        assert!((g.norm() - target).abs() <= 1e-12 * target);
    }

    #[test]
    fn log_gamma_recurrence() {
        // log Γ(z+1) - log Γ(z) - log z ≡ 0 (mod 2πi)
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..100 {
            let z = c(rng.random_range(0.05..6.0), rng.random_range(-6.0..6.0));
            let lhs = log_gamma(z + 1.0).unwrap() - log_gamma(z).unwrap() - z.ln();
            let two_pi = 2.0 * std::f64::consts::PI;
            let wrapped = lhs.im - (lhs.im / two_pi).round() * two_pi;
            assert!(lhs.re.abs() <= 1e-12 * (1.0 + z.norm().ln().abs()));
            assert!(wrapped.abs() <= 1e-12);
        }
    }

    #[test]
    fn log_gamma_reflection_region() {
        // Γ(-1.5) = 4√π/3 by the recurrence from Γ(1/2)
        let g = gamma(c(-1.5, 0.0)).unwrap();
        let expect = 4.0 * std::f64::consts::PI.sqrt() / 3.0;
        assert_abs_diff_eq!(g.re, expect, epsilon = 1e-12);
    }

    #[test]
    fn quadrature_weights_sum_to_interval_length() {
        let rule = QuadratureRule::gauss_legendre(7.5, 13);
        assert_abs_diff_eq!(rule.weight_sum(), 15.0, epsilon = 1e-10);
    }

    #[test]
    fn quadrature_gaussian_oracle() {
        // ∫ exp(-x²) over [-10, 10] = √π
        let rule = QuadratureRule::gauss_legendre(10.0, 20);
        let v = rule.integrate(|x| c((-x * x).exp(), 0.0));
        assert_abs_diff_eq!(v.re, std::f64::consts::PI.sqrt(), epsilon = 1e-10);
        assert_eq!(v.im, 0.0);
    }

    #[test]
    fn quadrature_zero_function() {
        let rule = QuadratureRule::gauss_legendre(3.0, 4);
        assert_eq!(rule.integrate(|_| c(0.0, 0.0)), c(0.0, 0.0));
    }

    #[test]
    fn quadrature_truncation_warning() {
        // a function that has not decayed at the edges
        let rule = QuadratureRule::gauss_legendre(2.0, 4);
        let (_, warn) = rule.integrate_checked(|x| c((-x * x).exp(), 0.0));
        assert!(warn.is_some());
        let (_, ok) = rule.integrate_checked(|x| c((-10.0 * x * x).exp(), 0.0));
        assert!(ok.is_none());
    }
}
