//! Spin-parity correlation observables: Bloch vectors, concurrence,
//! entanglement entropy, averaged chirality and the maximal-superposition
//! probabilities it decomposes into.
//!
//! Qubit 1 is the first Kronecker factor (intrinsic parity / total angular
//! momentum F), qubit 2 the second (spin / projection M). Concurrence is
//! evaluated from the qubit-2 Bloch vector; for pure states |a1| = |a2| so
//! the choice is immaterial, but the convention is fixed for reporting.

use crate::dirac::{self, cross3, DiracParams, PlanarConfig};
use crate::dynamics::{evolve_ionic, IonicLabel, TimeSeries};
use crate::linalg::{partial_trace, Mat2, Mat4, Subsystem, C64};
use crate::spectrum::{eigenvalue, EigenSystem, ModeIndex, G2_FLOOR};
use crate::{Error, Result};

/// Absolute tolerance on Tr[rho^2] for the pure-state checks.
pub const PURITY_TOL: f64 = 1e-10;

/// Bloch vectors of the two qubit subsystems.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochPair {
    pub a1: [f64; 3],
    pub a2: [f64; 3],
}

/// Per-state correlation summary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationReport {
    pub concurrence: f64,
    /// Entanglement entropy in bits (log base 2).
    pub entropy: f64,
    pub chirality: f64,
    pub p_ad: f64,
    pub p_cb: f64,
}

fn purity(rho: &Mat4) -> f64 {
    (*rho * *rho).trace().re
}

fn require_pure(rho: &Mat4) -> Result<()> {
    let pur = purity(rho);
    if (pur - 1.0).abs() > PURITY_TOL {
        return Err(Error::NotPure { purity: pur });
    }
    Ok(())
}

fn bloch_of_reduced(r: &Mat2) -> [f64; 3] {
    [
        2.0 * r.0[0][1].re,
        -2.0 * r.0[0][1].im,
        r.0[0][0].re - r.0[1][1].re,
    ]
}

/// Bloch vectors a1 = Tr[(sigma (x) I) rho], a2 = Tr[(I (x) sigma) rho] of a
/// pure two-qubit density matrix.
pub fn bloch_vectors(rho: &Mat4) -> Result<BlochPair> {
    require_pure(rho)?;
    Ok(BlochPair {
        a1: bloch_of_reduced(&partial_trace(rho, Subsystem::First)),
        a2: bloch_of_reduced(&partial_trace(rho, Subsystem::Second)),
    })
}

/// Closed-form qubit-2 Bloch vector of the eigen-density rho_{n,s},
/// a2 = (-1)^s (m / sqrt(g2)) [ kappa E + (-1)^n mu (p x E) / |lambda| ].
pub fn bloch_vector_closed(params: &DiracParams, mode: ModeIndex) -> Result<[f64; 3]> {
    let inv = dirac::invariants(params)?;
    if inv.g2 <= G2_FLOOR {
        return Err(Error::DegenerateInvariant { g2: inv.g2 });
    }
    let lambda = eigenvalue(params, mode)?;
    let pxe = cross3(params.p, params.e_field);
    let pref = mode.sign_s() * params.m / inv.g2.sqrt();
    let mut a2 = [0.0; 3];
    for i in 0..3 {
        a2[i] = pref * (params.kappa * params.e_field[i] + mode.sign_n() * params.mu * pxe[i] / lambda.abs());
    }
    Ok(a2)
}

/// Pure-state concurrence C = sqrt(1 - |a2|^2), clamped against rounding.
pub fn concurrence(rho: &Mat4) -> Result<f64> {
    let bloch = bloch_vectors(rho)?;
    let a2 = dirac::dot3(bloch.a2, bloch.a2);
    Ok((1.0 - a2).max(0.0).sqrt())
}

/// Closed-form squared Bloch norm of the planar eigenstates,
/// a2^2 = m^2 [kappa^2 + mu^2 p^2 sin^2(theta) / lambda^2]
///        / (m^2 kappa^2 + (mu^2 + kappa^2) p^2 sin^2(theta)).
pub fn bloch_norm_sq_closed(cfg: &PlanarConfig, mode: ModeIndex) -> Result<f64> {
    let params = cfg.to_dirac();
    let inv = dirac::invariants(&params)?;
    if inv.g2 <= G2_FLOOR {
        return Err(Error::DegenerateInvariant { g2: inv.g2 });
    }
    let lambda = eigenvalue(&params, mode)?;
    let s2 = cfg.theta.sin().powi(2);
    let denom = cfg.m * cfg.m * cfg.kappa * cfg.kappa
        + (cfg.mu * cfg.mu + cfg.kappa * cfg.kappa) * cfg.p * cfg.p * s2;
    Ok(cfg.m * cfg.m
        * (cfg.kappa * cfg.kappa + cfg.mu * cfg.mu * cfg.p * cfg.p * s2 / (lambda * lambda))
        / denom)
}

/// Closed-form concurrence of the planar eigenstates, C = sqrt(1 - a2^2)
/// with the squared Bloch norm of [`bloch_norm_sq_closed`].
pub fn concurrence_eigen_closed(cfg: &PlanarConfig, mode: ModeIndex) -> Result<f64> {
    let a22 = bloch_norm_sq_closed(cfg, mode)?;
    Ok((1.0 - a22).max(0.0).sqrt())
}

/// Averaged chirality in the ionic-basis form, the expectation of the
/// maximal-superposition exchange operator
/// |a><d| + |d><a| + |b><c| + |c><b|. This is the quantity that decomposes
/// into the measurement probabilities, <X> = 2 (P_ad + P_cb) - 1, and the
/// one reported along evolved trajectories. Valid for any density matrix,
/// in [-1, 1].
///
/// Note this differs from [`gamma5_expectation`]: the operator definition
/// gamma5 = -i ax ay az exchanges the parity qubit (a <-> c, b <-> d)
/// instead, and it is the one the eigenstate closed form
/// [`chirality_eigen_closed`] tracks. The two observables coincide only in
/// their algebraic role, not entrywise.
pub fn chirality(rho: &Mat4) -> f64 {
    2.0 * (rho.0[0][3].re + rho.0[1][2].re)
}

/// Expectation of the chirality operator gamma5 = -i ax ay az = sx (x) I2.
/// On the planar eigen-densities it equals the closed form
/// [`chirality_eigen_closed`].
pub fn gamma5_expectation(rho: &Mat4) -> f64 {
    // sx (x) I2 exchanges a <-> c and b <-> d
    2.0 * (rho.0[0][2].re + rho.0[1][3].re)
}

/// Closed-form averaged chirality of the planar eigenstates,
/// (-1)^(n+s) m p kappa cos(theta)
/// / (|lambda| sqrt(m^2 kappa^2 + (mu^2 + kappa^2) p^2 sin^2(theta))).
pub fn chirality_eigen_closed(cfg: &PlanarConfig, mode: ModeIndex) -> Result<f64> {
    let params = cfg.to_dirac();
    let inv = dirac::invariants(&params)?;
    if inv.g2 <= G2_FLOOR {
        return Err(Error::DegenerateInvariant { g2: inv.g2 });
    }
    let lambda = eigenvalue(&params, mode)?;
    let s2 = cfg.theta.sin().powi(2);
    let denom = (cfg.m * cfg.m * cfg.kappa * cfg.kappa
        + (cfg.mu * cfg.mu + cfg.kappa * cfg.kappa) * cfg.p * cfg.p * s2)
        .sqrt();
    Ok(mode.sign_ns() * cfg.m * cfg.p * cfg.kappa * cfg.theta.cos() / (lambda.abs() * denom))
}

/// Probabilities of measuring the pure state in the maximal superpositions
/// (|a> + |d>)/sqrt(2) and (|c> + |b>)/sqrt(2). These satisfy
/// <gamma5> = 2 (P_ad + P_cb) - 1.
pub fn superposition_probabilities(psi: &[C64; 4]) -> (f64, f64) {
    let p_ad = 0.5 * (psi[0] + psi[3]).norm_sqr();
    let p_cb = 0.5 * (psi[1] + psi[2]).norm_sqr();
    (p_ad, p_cb)
}

/// Entanglement entropy in bits from the reduced qubit-2 spectrum.
pub fn entanglement_entropy(rho: &Mat4) -> Result<f64> {
    require_pure(rho)?;
    let reduced = partial_trace(rho, Subsystem::Second);
    let evs = reduced.hermitian_eigenvalues();
    let mut entropy = 0.0;
    for l in evs {
        if l > 1e-15 {
            entropy -= l * l.log2();
        }
    }
    Ok(entropy)
}

/// Correlation summary of a pure state vector.
pub fn correlation_report(psi: &[C64; 4]) -> CorrelationReport {
    let rho = Mat4::outer(psi, psi);
    let reduced = partial_trace(&rho, Subsystem::Second);
    let a2v = bloch_of_reduced(&reduced);
    let a2 = dirac::dot3(a2v, a2v);
    let concurrence = (1.0 - a2).max(0.0).sqrt();
    let evs = reduced.hermitian_eigenvalues();
    let mut entropy = 0.0;
    for l in evs {
        if l > 1e-15 {
            entropy -= l * l.log2();
        }
    }
    let (p_ad, p_cb) = superposition_probabilities(psi);
    CorrelationReport {
        concurrence,
        entropy,
        chirality: chirality(&rho),
        p_ad,
        p_cb,
    }
}

/// Correlation report of the evolved level |j(t)> on every grid point.
pub fn correlation_series(
    sys: &EigenSystem,
    j: IonicLabel,
    grid: &[f64],
) -> TimeSeries<CorrelationReport> {
    TimeSeries {
        t: grid.to_vec(),
        values: grid
            .iter()
            .map(|&t| correlation_report(&evolve_ionic(sys, j, t).amps))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::uniform_grid;
    use crate::spectrum::{eigen_density, eigensystem};
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    fn ket(v: [f64; 4]) -> [C64; 4] {
        [
            C64::new(v[0], 0.0),
            C64::new(v[1], 0.0),
            C64::new(v[2], 0.0),
            C64::new(v[3], 0.0),
        ]
    }

    #[test]
    fn basis_state_bloch() {
        let psi = ket([1.0, 0.0, 0.0, 0.0]);
        let b = bloch_vectors(&Mat4::outer(&psi, &psi)).unwrap();
        assert_eq!(b.a1, [0.0, 0.0, 1.0]);
        assert_eq!(b.a2, [0.0, 0.0, 1.0]);
    }

    #[test]
    fn bell_state_is_maximally_entangled() {
        let inv = 1.0 / 2.0f64.sqrt();
        let psi = ket([inv, 0.0, 0.0, inv]);
        let rho = Mat4::outer(&psi, &psi);
        let b = bloch_vectors(&rho).unwrap();
        assert!(dirac::norm3(b.a1) < 1e-12 && dirac::norm3(b.a2) < 1e-12);
        assert!((concurrence(&rho).unwrap() - 1.0).abs() < 1e-12);
        assert!((entanglement_entropy(&rho).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn product_state_has_zero_concurrence() {
        let inv = 1.0 / 2.0f64.sqrt();
        // (|0> + |1>)/sqrt(2) (x) |1>; the sqrt in C = sqrt(1 - a2^2)
        // amplifies last-bit rounding of a2 to ~1e-8
        let psi = ket([0.0, inv, 0.0, inv]);
        let rho = Mat4::outer(&psi, &psi);
        assert!(concurrence(&rho).unwrap() < 1e-7);
        assert!(entanglement_entropy(&rho).unwrap().abs() < 1e-12);
    }

    #[test]
    fn not_pure_is_rejected() {
        let rho = 0.25 * Mat4::identity();
        assert!(matches!(bloch_vectors(&rho), Err(Error::NotPure { .. })));
        assert!(matches!(concurrence(&rho), Err(Error::NotPure { .. })));
        // chirality stays defined for mixed states
        assert_eq!(chirality(&rho), 0.0);
    }

    #[test]
    fn eigenstate_bloch_matches_closed_form() {
        let cfg = PlanarConfig::new(1.0, 1.0, 1.0, FRAC_PI_4, 0.0, 1.0).unwrap();
        let params = cfg.to_dirac();
        for mode in ModeIndex::ALL {
            let rho = eigen_density(&params, mode).unwrap();
            let got = bloch_vectors(&rho).unwrap();
            let expect = bloch_vector_closed(&params, mode).unwrap();
            for i in 0..3 {
                assert!((got.a2[i] - expect[i]).abs() < 1e-10);
            }
            // pure-state symmetry of the Bloch norms
            assert!((dirac::norm3(got.a1) - dirac::norm3(got.a2)).abs() < 1e-10);
        }
    }

    #[test]
    fn gamma5_eigenstate_chirality() {
        let inv = 1.0 / 2.0f64.sqrt();
        let plus = ket([inv, 0.0, 0.0, inv]);
        assert!((chirality(&Mat4::outer(&plus, &plus)) - 1.0).abs() < 1e-12);
        let minus = ket([inv, 0.0, 0.0, -inv]);
        let rho = Mat4::outer(&minus, &minus);
        assert!((chirality(&rho) + 1.0).abs() < 1e-12);
        let (p_ad, p_cb) = superposition_probabilities(&minus);
        assert!(p_ad < 1e-12 && p_cb < 1e-12);
    }

    #[test]
    fn single_level_superposition_probability() {
        let psi = ket([1.0, 0.0, 0.0, 0.0]);
        let (p_ad, _) = superposition_probabilities(&psi);
        assert!((p_ad - 0.5).abs() < 1e-12);
    }

    #[test]
    fn chirality_vanishes_at_theta_pi_half() {
        let cfg = PlanarConfig::new(1.0, 1.0, 1.0, FRAC_PI_2, 1.0, 1.0).unwrap();
        let params = cfg.to_dirac();
        for mode in ModeIndex::ALL {
            let rho = eigen_density(&params, mode).unwrap();
            assert!(gamma5_expectation(&rho).abs() < 1e-12);
            assert!(chirality_eigen_closed(&cfg, mode).unwrap().abs() < 1e-15);
        }
    }

    #[test]
    fn closed_concurrence_special_case() {
        // kappa = 0: C = sqrt(1 - m^2 / lambda^2)
        let cfg = PlanarConfig::new(1.0, 1.0, 1.0, FRAC_PI_4, 0.0, 1.0).unwrap();
        let params = cfg.to_dirac();
        for mode in ModeIndex::ALL {
            let lambda = eigenvalue(&params, mode).unwrap();
            let expect = (1.0 - 1.0 / (lambda * lambda)).max(0.0).sqrt();
            let closed = concurrence_eigen_closed(&cfg, mode).unwrap();
            assert!((closed - expect).abs() < 1e-12);
            let direct = concurrence(&eigen_density(&params, mode).unwrap()).unwrap();
            assert!((closed - direct).abs() < 1e-10);
        }
    }

    #[test]
    fn closed_concurrence_limits() {
        // m -> 0 maximally entangled; m/p large nearly separable
        let small = PlanarConfig::new(1e-6, 1.0, 1.0, FRAC_PI_4, 0.0, 1.0).unwrap();
        let c = concurrence_eigen_closed(&small, ModeIndex::new(0, 0).unwrap()).unwrap();
        assert!(c > 1.0 - 1e-6);
        let large = PlanarConfig::new(1e3, 1.0, 1.0, FRAC_PI_4, 0.0, 1.0).unwrap();
        let c = concurrence_eigen_closed(&large, ModeIndex::new(0, 0).unwrap()).unwrap();
        assert!(c <= 0.01);
    }

    #[test]
    fn evolved_state_reaches_maximal_entanglement_without_tensor_coupling() {
        let cfg = PlanarConfig::new(1.0, 1.0, 1.0, FRAC_PI_4, 0.0, 1.0).unwrap();
        let sys = eigensystem(&cfg.to_dirac()).unwrap();
        let grid = uniform_grid(20.0, 2001);
        let series = correlation_series(&sys, IonicLabel::A, &grid);
        let first = &series.values[0];
        assert!(first.concurrence < 1e-6, "t=0 state is separable");
        let max = series
            .values
            .iter()
            .map(|r| r.concurrence)
            .fold(0.0f64, f64::max);
        assert!(max >= 1.0 - 1e-6);
        // concurrence zeros coincide with chirality zeros for kappa = 0
        for r in &series.values {
            if r.concurrence < 1e-6 {
                assert!(r.chirality.abs() < 1e-4);
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn report_identities_on_random_pure_states(
            re in proptest::array::uniform4(-1.0f64..1.0),
            im in proptest::array::uniform4(-1.0f64..1.0),
        ) {
            let mut psi = [C64::new(0.0, 0.0); 4];
            for k in 0..4 {
                psi[k] = C64::new(re[k], im[k]);
            }
            let norm = crate::linalg::vec_norm(&psi);
            prop_assume!(norm > 1e-3);
            for z in psi.iter_mut() {
                *z /= norm;
            }
            let r = correlation_report(&psi);
            // chirality identity, exact up to rounding
            prop_assert!((r.chirality - (2.0 * (r.p_ad + r.p_cb) - 1.0)).abs() < 1e-12);
            prop_assert!(r.chirality.abs() <= 1.0 + 1e-12);
            // concurrence triple agreement
            let rho = Mat4::outer(&psi, &psi);
            let reduced = partial_trace(&rho, Subsystem::Second);
            let det = reduced.determinant().re.max(0.0);
            prop_assert!((r.concurrence - 2.0 * det.sqrt()).abs() < 1e-10);
            let tr2 = (reduced * reduced).trace().re;
            prop_assert!((r.concurrence - (2.0 * (1.0 - tr2)).max(0.0).sqrt()).abs() < 1e-10);
            // entropy consistency with the concurrence
            let x = 0.5 * (1.0 + (1.0 - r.concurrence * r.concurrence).max(0.0).sqrt());
            let h = if x <= 0.0 || x >= 1.0 {
                0.0
            } else {
                -x * x.log2() - (1.0 - x) * (1.0 - x).log2()
            };
            prop_assert!((r.entropy - h).abs() < 1e-10);
            // Bloch norm symmetry
            let b = bloch_vectors(&rho).unwrap();
            prop_assert!((dirac::norm3(b.a1) - dirac::norm3(b.a2)).abs() < 1e-10);
        }

        #[test]
        fn closed_forms_agree_on_random_planar_draws(
            m in 0.05f64..3.0,
            p in 0.05f64..3.0,
            eps in 0.05f64..3.0,
            theta in 0.05f64..PI,
            kappa in 0.05f64..2.0,
            mu in 0.05f64..2.0,
        ) {
            let cfg = PlanarConfig::new(m, p, eps, theta, kappa, mu).unwrap();
            let params = cfg.to_dirac();
            for mode in ModeIndex::ALL {
                let rho = eigen_density(&params, mode).unwrap();
                let c_closed = concurrence_eigen_closed(&cfg, mode).unwrap();
                let c_direct = concurrence(&rho).unwrap();
                prop_assert!((c_closed - c_direct).abs() < 1e-10);
                let chi_closed = chirality_eigen_closed(&cfg, mode).unwrap();
                prop_assert!((chi_closed - gamma5_expectation(&rho)).abs() < 1e-10);
                let a2 = bloch_vector_closed(&params, mode).unwrap();
                let direct = bloch_vectors(&rho).unwrap();
                for i in 0..3 {
                    prop_assert!((a2[i] - direct.a2[i]).abs() < 1e-10);
                }
            }
        }
    }
}
