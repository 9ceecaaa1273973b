//! Model parameters, mass profiles, vector potentials and the
//! energy-dependent effective potential.
//!
//! The Klein-Gordon equation with mass profile `M(x)`, vector potential
//! `V(x)` and null scalar potential is mapped onto a zero-energy problem
//! with the effective potential
//!
//! ```text
//! V_E(x) = (1/c²) [ (M(x)c²)² - (E - V(x))² ]
//! ```
//!
//! For real `E` both models give a PT-symmetric function,
//! `V_E(x) = conj(V_E(-x))`.

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

/// Which mass/vector-potential pair the parameters describe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    /// `M(x) = √(μ² + (λ/c)²x²)`, `V(x) = icηx`.
    LinearMass,
    /// `M(x) = √(μ² + (λ/αc)² tanh²αx)`, `V(x) = i(cη/α) tanh αx`.
    HyperbolicMass,
}

#[derive(Debug, Error, PartialEq)]
pub enum ParamError {
    #[error("lambda must be positive and finite, got {0}")]
    NonPositiveLambda(f64),
    #[error("alpha must be positive and finite for the hyperbolic-mass model, got {0}")]
    NonPositiveAlpha(f64),
    #[error("mu must be non-negative and finite, got {0}")]
    NegativeMu(f64),
    #[error("hbar and c must be positive and finite, got hbar={hbar}, c={c}")]
    BadUnits { hbar: f64, c: f64 },
    #[error("eta must be finite, got {0}")]
    NonFiniteEta(f64),
}

/// Physical constants and model parameters.
///
/// `mu` is the mass at the origin, `lambda` the mass-gradient strength
/// (assumed positive), `eta` the vector-potential strength and `alpha`
/// the inverse length scale of the hyperbolic model. `hbar` and `c`
/// default to 1 but stay explicit so the non-relativistic limit can be
/// probed by growing `c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModelParams {
    pub mu: f64,
    pub lambda: f64,
    pub eta: f64,
    pub alpha: f64,
    pub hbar: f64,
    pub c: f64,
    pub model: ModelKind,
}

impl ModelParams {
    /// Linear-mass model in natural units (`ħ = c = 1`).
    pub fn linear(mu: f64, lambda: f64, eta: f64) -> Self {
        Self {
            mu,
            lambda,
            eta,
            alpha: 1.0,
            hbar: 1.0,
            c: 1.0,
            model: ModelKind::LinearMass,
        }
    }

    /// Hyperbolic-mass model in natural units (`ħ = c = 1`).
    pub fn hyperbolic(mu: f64, lambda: f64, eta: f64, alpha: f64) -> Self {
        Self {
            mu,
            lambda,
            eta,
            alpha,
            hbar: 1.0,
            c: 1.0,
            model: ModelKind::HyperbolicMass,
        }
    }

    pub fn with_units(mut self, hbar: f64, c: f64) -> Self {
        self.hbar = hbar;
        self.c = c;
        self
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        let positive = |v: f64| v.is_finite() && v > 0.0;
        if !positive(self.lambda) {
            return Err(ParamError::NonPositiveLambda(self.lambda));
        }
        if self.model == ModelKind::HyperbolicMass && !positive(self.alpha) {
            return Err(ParamError::NonPositiveAlpha(self.alpha));
        }
        if !(self.mu.is_finite() && self.mu >= 0.0) {
            return Err(ParamError::NegativeMu(self.mu));
        }
        if !positive(self.hbar) || !positive(self.c) {
            return Err(ParamError::BadUnits {
                hbar: self.hbar,
                c: self.c,
            });
        }
        if !self.eta.is_finite() {
            return Err(ParamError::NonFiniteEta(self.eta));
        }
        Ok(())
    }

    /// `λ² + η²`, the combination fixing the superpotential strength.
    pub fn coupling_squared(&self) -> f64 {
        self.lambda * self.lambda + self.eta * self.eta
    }

    /// Mass profile `M(x)`; never below `μ`.
    pub fn mass_at(&self, x: f64) -> f64 {
        match self.model {
            ModelKind::LinearMass => {
                let g = self.lambda / self.c * x;
                (self.mu * self.mu + g * g).sqrt()
            }
            ModelKind::HyperbolicMass => {
                let g = self.lambda / (self.alpha * self.c) * (self.alpha * x).tanh();
                (self.mu * self.mu + g * g).sqrt()
            }
        }
    }

    /// Vector potential `V(x)`; purely imaginary and odd for real `x`.
    pub fn vector_potential(&self, x: f64) -> Complex64 {
        match self.model {
            ModelKind::LinearMass => Complex64::new(0.0, self.c * self.eta * x),
            ModelKind::HyperbolicMass => Complex64::new(
                0.0,
                self.c * self.eta / self.alpha * (self.alpha * x).tanh(),
            ),
        }
    }

    /// Effective potential `V_E(x)` in its expanded closed form.
    pub fn effective_potential(&self, energy: f64, x: f64) -> Complex64 {
        let c2 = self.c * self.c;
        let rest = (self.mu * self.mu * c2 * c2 - energy * energy) / c2;
        match self.model {
            ModelKind::LinearMass => Complex64::new(
                self.coupling_squared() * x * x + rest,
                2.0 * self.eta * energy / self.c * x,
            ),
            ModelKind::HyperbolicMass => {
                // -(λ²+η²)/(α² cosh²) + (λ²+η²)/α²  =  (λ²+η²) tanh²/α²
                let a2 = self.alpha * self.alpha;
                let t = (self.alpha * x).tanh();
                Complex64::new(
                    self.coupling_squared() / a2 * t * t + rest,
                    2.0 * self.eta * energy / (self.alpha * self.c) * t,
                )
            }
        }
    }

    /// Effective potential assembled from the generic definition,
    /// `(1/c²)[(M(x)c² + S(x))² - (E - V(x))²]`, using `mass_at` and
    /// `vector_potential`. Kept as an independent route against the
    /// closed forms. The scalar potential is null throughout; at μ = 0
    /// the linear-mass term can equally be read as a real linear scalar
    /// potential `S(x) = ±(λ/c)x` acting on a massless particle.
    pub fn effective_potential_assembled(&self, energy: f64, x: f64) -> Complex64 {
        let c2 = self.c * self.c;
        let scalar = 0.0;
        let mc2 = Complex64::new(self.mass_at(x) * c2 + scalar, 0.0);
        let ev = Complex64::new(energy, 0.0) - self.vector_potential(x);
        (mc2 * mc2 - ev * ev) / c2
    }

    /// Sample `V_E` on a set of positions.
    pub fn sample_effective_potential(
        &self,
        energy: f64,
        positions: &[f64],
    ) -> Vec<EffectivePotentialSample> {
        positions
            .iter()
            .map(|&x| EffectivePotentialSample {
                x,
                value: self.effective_potential(energy, x),
                energy_parameter: energy,
            })
            .collect()
    }
}

/// One point of the effective potential at a frozen energy parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectivePotentialSample {
    pub x: f64,
    pub value: Complex64,
    pub energy_parameter: f64,
}
