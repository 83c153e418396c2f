//! Toroidal classification and FM/AFM geometric duality for bipartite
//! quantum spin systems.
//!
//! The crate maps spin-Hamiltonian couplings to two-mode magnon
//! Hamiltonians, classifies them onto flat tori in the 4-D coupling space
//! (J, D, r, K), constructs dual configurations across the FM/AFM boundary,
//! and computes the splitting- and squeezing-type two-mode entanglement
//! entropies — all cross-validated against a truncated-Fock-space
//! brute-force oracle.
//!
//! Module map:
//! - [`lattice`]: neighbor geometry, coordination number, γ_k
//! - [`magnon`]: couplings → (ω, Δ, χ_k, Λ_k) and the canonical gauge
//! - [`toric`]: toric classes, curvature invariants, duality
//! - [`splitting`]: SU(2) diagonalization, finite eigenstate expansions
//! - [`squeezing`]: SU(1,1) diagonalization, recursive infinite expansions
//! - [`oracle`]: sector matrices, in-repo tridiagonal eigensolver
//! - [`config`] / [`runner`]: batch configuration, k-grid sweeps, reports

pub mod config;
pub mod error;
pub mod lattice;
pub mod magnon;
pub mod oracle;
pub mod output;
pub mod runner;
pub mod splitting;
pub mod squeezing;
pub mod state;
pub mod toric;

pub use error::{Error, Result};
pub use lattice::{KPoint, LatticeSpec};
pub use magnon::{
    build_magnon_params, gauge_fix, gauge_fix_self_conjugate, CouplingSet, GaugeFixedParams,
    MagnonParams, Regime,
};
pub use state::{EigenstateExpansion, ExpansionTerm};
pub use toric::{classify, curvature, dual_of, same_class, CurvatureInvariants, ToricClass};
