//! # cvx — continuous-variable quantum states, exactly where they meet Gaussians
//!
//! This crate provides two complementary pictures of N-mode bosonic systems
//! and the machinery to move between them:
//!
//! * [`phase_space`] — covariance-matrix algebra: validity certificates,
//!   symplectic spectra, Gaussian entropies, partial transposition,
//!   logarithmic negativity and distillability.
//! * [`fock`] — a truncated Fock-space simulator with honest error
//!   accounting: every moment extraction and characteristic-function
//!   evaluation is gated by explicit leakage and reliability bounds.
//! * [`gaussify`] — balanced beam-splitter cascades that drive i.i.d. input
//!   copies toward the Gaussian state with the same second moments, plus
//!   convergence diagnostics for that limit.
//! * [`measures`] — side-by-side comparisons of a state against the
//!   Gaussian reference with identical first and second moments: entropy,
//!   conditional entropy, and entanglement negativity (including the
//!   regime where the Gaussian reference *over*-states negativity).
//! * [`channels`] — Gaussian channels in (X, Y) form, complete-positivity
//!   certificates, and energy-constrained coherent-state encodings with a
//!   one-shot Holevo-quantity optimizer.
//! * [`experiments`] — deterministic batch experiments behind the `cvx`
//!   binary: machine-readable reports, seeded ensembles, byte-stable
//!   output.
//!
//! Conventions, fixed once and used everywhere: canonical operators are
//! ordered (Q₁, P₁, …, Q_N, P_N); the symplectic form is
//! σ = ⊕ [[0, 1], [−1, 0]]; covariance matrices use the anticommutator
//! convention, so the vacuum has Γ = 𝟙; entropies and negativities are in
//! bits.

pub mod channels;
pub mod error;
pub mod experiments;
pub mod fock;
pub mod gaussify;
mod linalg;
pub mod measures;
pub mod phase_space;
pub mod sampling;

pub use error::{Error, Result};

// Re-exported so downstream code and the guide's examples can name matrix
// types without pinning their own copy of the linear-algebra stack.
pub use nalgebra;
pub use num_complex;
