//! Simulation of a four-level trapped ion whose internal dynamics maps onto a
//! 3+1 Dirac-like Hamiltonian with tensor and pseudotensor electrostatic
//! couplings.
//!
//! The crate is organized around a small dense complex linear-algebra kernel
//! ([`linalg`]) that doubles as the brute-force oracle for every closed form,
//! plus the physics layers built on top of it:
//!
//! * [`dirac`] — Dirac matrices, the coupled Hamiltonian and its trace
//!   invariants,
//! * [`spectrum`] — eigenvalues, pure eigen-density operators and the
//!   ionic-basis change matrices,
//! * [`dynamics`] — time evolution of ionic levels and transition
//!   probabilities,
//! * [`entanglement`] — Bloch vectors, concurrence, entropy and averaged
//!   chirality,
//! * [`trapmap`] — conversion between ion-trap observables and Dirac
//!   parameters.
//!
//! Everything works in natural units (`hbar = c = 1`); all values are plain
//! `f64`/`Complex64` data, immutable after construction and safe to share
//! across threads.

pub mod dirac;
pub mod dynamics;
pub mod entanglement;
pub mod linalg;
pub mod spectrum;
pub mod trapmap;

pub use linalg::C64;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("matrix is not Hermitian (relative deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },
    #[error("operation requires a vanishing magnetic field")]
    MagneticFieldUnsupported,
    #[error("degenerate invariant g2 = {g2:.3e}: the eigen-density ansatz is undefined")]
    DegenerateInvariant { g2: f64 },
    #[error("eigenvalue magnitude {lambda:.3e} below floor")]
    ZeroEigenvalue { lambda: f64 },
    #[error("negative eigenvalue radicand {radicand:.3e}: invalid parameter regime")]
    ComplexEigenvalue { radicand: f64 },
    #[error("state is not pure (Tr[rho^2] = {purity})")]
    NotPure { purity: f64 },
    #[error("pair operator requires two distinct levels")]
    InvalidPair,
    #[error("sideband coupling eta*Delta*OmegaTilde must be positive")]
    ZeroCoupling,
    #[error("carrier couplings are not representable in the requested gauge")]
    IncompatibleGauge,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
