//! Conversion between ion-trap observables and Dirac-side parameters, and
//! the pairwise-Pauli generators whose sum reproduces the coupled
//! Hamiltonian.
//!
//! The correspondence (hbar = 1) reads
//!
//! ```text
//! m c^2 = 2 delta        kappa E_j = 2 Omega1_j
//! c = 2 eta Delta OmegaTilde    mu E_j / c = 2 Omega2_j
//! ```
//!
//! so the trap observables determine only the products kappa*E and mu*E,
//! never the three factors separately. [`dirac_from_trap`] therefore
//! reconstructs a gauge-fixed normal form: [`Gauge::UnitField`] (the
//! default used by the figure parameter sets) puts the magnitude into the
//! dipole moments and keeps |E| = 1, while [`Gauge::KappaEqMu`] fixes
//! kappa = mu = 1 and folds everything into the field.
//!
//! Momentum lives in the motional degrees of freedom, which this crate
//! treats as a c-number section: the substitution p_j -> (i/2 Delta)
//! (a_j^dag - a_j) onto ladder operators is intentionally out of scope, and
//! [`assemble_mapped_hamiltonian`] takes the already-rescaled natural-units
//! momentum c_eff * p_phys as input.

use crate::dirac::{norm3, DiracParams};
use crate::dynamics::IonicLabel;
use crate::linalg::{Mat4, C64};
use crate::{Error, Result};

/// Red-sideband phase choice that realizes the momentum map.
pub const RED_SIDEBAND_PHASE: f64 = -std::f64::consts::FRAC_PI_2;
/// Blue-sideband phase choice that realizes the momentum map.
pub const BLUE_SIDEBAND_PHASE: f64 = std::f64::consts::FRAC_PI_2;

/// Cartesian axis of a pairwise Pauli operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

/// A Pauli matrix acting on the two-level subspace spanned by a pair of
/// ionic levels, zero elsewhere. The first named level plays the role of
/// spin-up, which fixes the sign conventions of the y and z operators.
#[derive(Debug, Clone)]
pub struct PauliPairOp {
    pub levels: (IonicLabel, IonicLabel),
    pub axis: Axis,
    pub matrix: Mat4,
}

/// sigma_axis^{jk} embedded into the 4x4 ionic space.
pub fn sigma_pair(levels: (IonicLabel, IonicLabel), axis: Axis) -> Result<PauliPairOp> {
    let (up, down) = levels;
    if up == down {
        return Err(Error::InvalidPair);
    }
    let (u, d) = (up.index(), down.index());
    let mut matrix = Mat4::zeros();
    match axis {
        Axis::X => {
            matrix.0[u][d] = C64::new(1.0, 0.0);
            matrix.0[d][u] = C64::new(1.0, 0.0);
        }
        Axis::Y => {
            matrix.0[u][d] = C64::new(0.0, -1.0);
            matrix.0[d][u] = C64::new(0.0, 1.0);
        }
        Axis::Z => {
            matrix.0[u][u] = C64::new(1.0, 0.0);
            matrix.0[d][d] = C64::new(-1.0, 0.0);
        }
    }
    Ok(PauliPairOp {
        levels,
        axis,
        matrix,
    })
}

fn pair(up: IonicLabel, down: IonicLabel, axis: Axis) -> Mat4 {
    sigma_pair((up, down), axis).expect("distinct levels").matrix
}

/// Ion-trap-side observables. Frequencies are in units of a common
/// reference (hbar = 1); space homogeneity pins one trap frequency nu for
/// all three axes, hence single eta, Delta and OmegaTilde values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrapParams {
    /// Lamb-Dicke parameter (dimensionless).
    pub eta: f64,
    /// Ground-state wave-function spread Delta.
    pub spread: f64,
    /// Sideband Rabi frequency OmegaTilde.
    pub omega_tilde: f64,
    /// Detuning delta; carries the mass term, m = 2 delta.
    pub detuning: f64,
    /// Carrier Rabi frequencies realizing the tensor coupling, kappa E_j = 2 Omega1_j.
    pub omega1: [f64; 3],
    /// Carrier Rabi frequencies realizing the pseudotensor coupling, mu E_j = 2 Omega2_j.
    pub omega2: [f64; 3],
}

impl TrapParams {
    pub fn new(
        eta: f64,
        spread: f64,
        omega_tilde: f64,
        detuning: f64,
        omega1: [f64; 3],
        omega2: [f64; 3],
    ) -> Result<Self> {
        let tp = Self {
            eta,
            spread,
            omega_tilde,
            detuning,
            omega1,
            omega2,
        };
        let mut vals = vec![eta, spread, omega_tilde, detuning];
        vals.extend(omega1);
        vals.extend(omega2);
        if !vals.iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidParameter("trap parameters must be finite".into()));
        }
        if eta < 0.0 || spread < 0.0 || omega_tilde < 0.0 || detuning < 0.0 {
            return Err(Error::InvalidParameter(
                "eta, Delta, OmegaTilde and delta must be non-negative".into(),
            ));
        }
        Ok(tp)
    }

    /// Derive eta and Delta from raw hardware inputs: trap frequency nu,
    /// ion mass and driving-field wave number, with eta = k sqrt(1/(2 m nu))
    /// and Delta = sqrt(1/(2 m nu)).
    pub fn from_hardware(
        nu: f64,
        ion_mass: f64,
        wavenumber: f64,
        omega_tilde: f64,
        detuning: f64,
        omega1: [f64; 3],
        omega2: [f64; 3],
    ) -> Result<Self> {
        if !(nu > 0.0 && ion_mass > 0.0 && wavenumber > 0.0) {
            return Err(Error::InvalidParameter(
                "nu, ion mass and wave number must be positive".into(),
            ));
        }
        let spread = (1.0 / (2.0 * ion_mass * nu)).sqrt();
        Self::new(wavenumber * spread, spread, omega_tilde, detuning, omega1, omega2)
    }

    /// Emergent speed of light c = 2 eta Delta OmegaTilde.
    pub fn effective_speed(&self) -> f64 {
        2.0 * self.eta * self.spread * self.omega_tilde
    }
}

/// Normal form used when splitting the products kappa*E and mu*E back into
/// dipole moments and a field vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Gauge {
    /// |E| = 1 with the coupling strengths on kappa and mu.
    #[default]
    UnitField,
    /// kappa = mu = 1 with the strengths folded into the field; requires
    /// equal carrier frequency vectors.
    KappaEqMu,
}

const COLLINEAR_TOL: f64 = 1e-12;

/// Reconstruct Dirac parameters from trap observables in the requested
/// gauge. The momentum is left at zero (it lives in the motional section);
/// attach one with [`DiracParams::with_momentum`].
pub fn dirac_from_trap(tp: &TrapParams, gauge: Gauge) -> Result<DiracParams> {
    if tp.effective_speed() <= 0.0 {
        return Err(Error::ZeroCoupling);
    }
    let prod_kappa = [2.0 * tp.omega1[0], 2.0 * tp.omega1[1], 2.0 * tp.omega1[2]];
    let prod_mu = [2.0 * tp.omega2[0], 2.0 * tp.omega2[1], 2.0 * tp.omega2[2]];
    let m = 2.0 * tp.detuning;
    let scale = norm3(prod_kappa).max(norm3(prod_mu));

    let (kappa, mu, e_field) = match gauge {
        Gauge::UnitField => {
            if scale == 0.0 {
                (0.0, 0.0, [0.0; 3])
            } else {
                let director = if norm3(prod_kappa) > 0.0 { prod_kappa } else { prod_mu };
                let dn = norm3(director);
                let e = [director[0] / dn, director[1] / dn, director[2] / dn];
                let kappa = crate::dirac::dot3(prod_kappa, e);
                let mu = crate::dirac::dot3(prod_mu, e);
                // both products must be collinear with the single field
                for j in 0..3 {
                    if (prod_kappa[j] - kappa * e[j]).abs() > COLLINEAR_TOL * scale.max(1.0)
                        || (prod_mu[j] - mu * e[j]).abs() > COLLINEAR_TOL * scale.max(1.0)
                    {
                        return Err(Error::IncompatibleGauge);
                    }
                }
                (kappa, mu, e)
            }
        }
        Gauge::KappaEqMu => {
            for j in 0..3 {
                if (prod_kappa[j] - prod_mu[j]).abs() > COLLINEAR_TOL * scale.max(1.0) {
                    return Err(Error::IncompatibleGauge);
                }
            }
            (1.0, 1.0, prod_kappa)
        }
    };
    DiracParams::new(m, [0.0; 3], kappa, mu, e_field, [0.0; 3])
}

/// Trap observables realizing the given Dirac parameters. Only the products
/// kappa*E and mu*E are encoded; the momentum and any magnetic field are
/// not representable on this side. The canonical split eta = Delta = 1,
/// OmegaTilde = 1/2 realizes the natural-units normalization c = 1.
pub fn trap_from_dirac(d: &DiracParams) -> TrapParams {
    TrapParams {
        eta: 1.0,
        spread: 1.0,
        omega_tilde: 0.5,
        detuning: 0.5 * d.m,
        omega1: [
            0.5 * d.kappa * d.e_field[0],
            0.5 * d.kappa * d.e_field[1],
            0.5 * d.kappa * d.e_field[2],
        ],
        omega2: [
            0.5 * d.mu * d.e_field[0],
            0.5 * d.mu * d.e_field[1],
            0.5 * d.mu * d.e_field[2],
        ],
    }
}

/// Sum of the mapped generators: mass, momentum and the two carrier blocks.
///
/// `p` is the natural-units momentum (the physical c-number momentum times
/// the emergent speed), so the result equals
/// `dirac::hamiltonian(dirac_from_trap(tp)?.with_momentum(p))` entrywise.
pub fn assemble_mapped_hamiltonian(tp: &TrapParams, p: [f64; 3]) -> Mat4 {
    use Axis::{X, Y, Z};
    use IonicLabel::{A, B, C, D};

    let mut h = Mat4::zeros();

    // mass block: 2 delta (sigma_z^{ad} + sigma_z^{bc}) = m beta
    h = h + (2.0 * tp.detuning) * (pair(A, D, Z) + pair(B, C, Z));

    // momentum blocks, one sideband pair per axis
    h = h + p[0] * (pair(A, D, X) + pair(B, C, X));
    h = h + p[1] * (pair(A, D, Y) - pair(B, C, Y));
    h = h + p[2] * (pair(A, C, X) - pair(B, D, X));

    // tensor carrier block: beta Sigma . (kappa E)
    h = h + (2.0 * tp.omega1[0]) * (pair(A, B, X) - pair(C, D, X));
    h = h + (2.0 * tp.omega1[1]) * (pair(A, B, Y) - pair(C, D, Y));
    h = h + (2.0 * tp.omega1[2]) * (pair(A, B, Z) - pair(C, D, Z));

    // pseudotensor carrier block: i beta alpha . (mu E)
    h = h + (2.0 * tp.omega2[0]) * (-pair(A, D, Y) - pair(B, C, Y));
    h = h + (2.0 * tp.omega2[1]) * (pair(A, D, X) - pair(B, C, X));
    h = h + (2.0 * tp.omega2[2]) * (pair(B, D, Y) - pair(A, C, Y));

    h
}

/// Two-qubit (F, M) assignment of the internal levels.
pub fn qubit_index(label: IonicLabel) -> (u8, u8) {
    match label {
        IonicLabel::A => (0, 0),
        IonicLabel::B => (0, 1),
        IonicLabel::C => (1, 0),
        IonicLabel::D => (1, 1),
    }
}
