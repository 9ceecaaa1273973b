//! Bound states of the (1+1)-dimensional time-independent Klein-Gordon
//! equation with a position-dependent mass and a PT-symmetric vector
//! potential.
//!
//! The equation is read as a zero-energy Schrödinger-like problem
//!
//! ```text
//! (-ħ² d²/dx² + V_E(x)) Φ_n(x) = ε_n(E) Φ_n(x)
//! ```
//!
//! in which the physical energy `E` is frozen inside the effective
//! potential `V_E`. Bound-state energies of the original problem are the
//! real roots of the quantization condition `ε_n(E) = 0`.
//!
//! Two exactly solvable models are implemented:
//!
//! * [`ModelKind::LinearMass`] - mass `√(μ² + (λ/c)²x²)` with vector
//!   potential `icηx`; an unbounded spectrum of Hermite-Gaussian states.
//! * [`ModelKind::HyperbolicMass`] - mass `√(μ² + (λ/αc)² tanh²αx)` with
//!   vector potential `i(cη/α) tanh αx`; a Rosen-Morse II effective
//!   potential with finitely many Jacobi-type states.
//!
//! The spectra come out of shape-invariant SUSYQM factorization
//! ([`susy`]), wavefunctions and admissibility constraints are in
//! [`analytic`], and every closed form is independently cross-checked by
//! the finite-difference eigensolver in [`oracle`].

pub mod analytic;
pub mod cli;
pub mod model;
pub mod oracle;
pub mod specfun;
pub mod susy;

pub use analytic::{Branch, LevelBounds, LevelCap, SpectrumLevel, Wavefunction};
pub use model::{ModelKind, ModelParams};
pub use susy::SuperpotentialDescriptor;
