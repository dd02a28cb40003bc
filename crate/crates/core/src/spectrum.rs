//! Eigen-structure of the coupled Hamiltonian.
//!
//! The four stationary pure states come from the operator ansatz
//!
//! ```text
//! rho_{n,s} = 1/4 (I + (-1)^s O / sqrt(g2)) (I + (-1)^n H / |lambda_{n,s}|)
//! ```
//!
//! with eigenvalues `lambda_{n,s} = (-1)^n sqrt(g1 + 2 (-1)^s sqrt(g2))`.
//! The ansatz divides by `sqrt(g2)`, so below [`G2_FLOOR`] it is declared
//! degenerate; [`eigensystem_with_fallback`] then switches to the Jacobi
//! oracle and spectral projectors instead.
//!
//! Ionic-basis coefficients `M^i_{n,s}` are extracted from the density
//! operators: moduli from the diagonal, relative phases from the anchor
//! column with the global-phase convention `phi_a = 0` (the anchor moves to
//! the first basis state whose modulus clears [`PHASE_FLOOR`]).

use crate::dirac::{self, DiracParams, PlanarConfig};
use crate::linalg::{hermitian_eig, Mat4, C64};
use crate::{Error, Result};

/// Below this absolute value of g2 the eigen-density ansatz is degenerate.
pub const G2_FLOOR: f64 = 1e-20;

/// Moduli below this floor leave the corresponding relative phase undefined.
pub const PHASE_FLOOR: f64 = 1e-12;

/// Branch labels (n, s): n picks the sign of the eigenvalue, s the
/// +-sqrt(g2) branch inside the radicand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModeIndex {
    n: u8,
    s: u8,
}

impl ModeIndex {
    /// Column order used everywhere: (0,0), (0,1), (1,0), (1,1).
    pub const ALL: [ModeIndex; 4] = [
        ModeIndex { n: 0, s: 0 },
        ModeIndex { n: 0, s: 1 },
        ModeIndex { n: 1, s: 0 },
        ModeIndex { n: 1, s: 1 },
    ];

    pub fn new(n: u8, s: u8) -> Result<Self> {
        if n > 1 || s > 1 {
            return Err(Error::InvalidParameter(
                "mode indices n and s must be 0 or 1".into(),
            ));
        }
        Ok(Self { n, s })
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn s(&self) -> u8 {
        self.s
    }

    /// (-1)^n
    pub fn sign_n(&self) -> f64 {
        if self.n == 0 {
            1.0
        } else {
            -1.0
        }
    }

    /// (-1)^s
    pub fn sign_s(&self) -> f64 {
        if self.s == 0 {
            1.0
        } else {
            -1.0
        }
    }

    /// (-1)^(n+s)
    pub fn sign_ns(&self) -> f64 {
        self.sign_n() * self.sign_s()
    }

    /// Fixed column index in the basis-change matrices.
    pub fn column(&self) -> usize {
        (2 * self.n + self.s) as usize
    }
}

impl std::fmt::Display for ModeIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.n, self.s)
    }
}

fn lambda_floor(g1: f64) -> f64 {
    1e-12 * g1.sqrt().max(f64::MIN_POSITIVE)
}

/// Closed-form eigenvalue lambda_{n,s}.
pub fn eigenvalue(params: &DiracParams, mode: ModeIndex) -> Result<f64> {
    let inv = dirac::invariants(params)?;
    let radicand = inv.g1 + 2.0 * mode.sign_s() * inv.g2.sqrt();
    if radicand < 0.0 {
        // the exact radicand is non-negative for Hermitian input, so only
        // rounding can push it slightly below zero
        if radicand >= -1e-12 * inv.g1.max(1.0) {
            return Ok(0.0);
        }
        return Err(Error::ComplexEigenvalue { radicand });
    }
    Ok(mode.sign_n() * radicand.sqrt())
}

/// Stationary pure density operator rho_{n,s} from the ansatz.
pub fn eigen_density(params: &DiracParams, mode: ModeIndex) -> Result<Mat4> {
    let inv = dirac::invariants(params)?;
    if inv.g2 <= G2_FLOOR {
        return Err(Error::DegenerateInvariant { g2: inv.g2 });
    }
    let lambda = eigenvalue(params, mode)?;
    if lambda.abs() <= lambda_floor(inv.g1) {
        return Err(Error::ZeroEigenvalue { lambda });
    }
    let h = dirac::hamiltonian(params);
    let o = dirac::o_operator(params)?;
    let id = Mat4::identity();
    let left = id + (mode.sign_s() / inv.g2.sqrt()) * o;
    let right = id + (mode.sign_n() / lambda.abs()) * h;
    Ok(0.25 * (left * right))
}

/// Ionic-basis coefficients of one eigenstate: the four moduli |M^i| and the
/// relative phases of the b, c, d components (None when the modulus is below
/// [`PHASE_FLOOR`], i.e. the phase is undefined rather than fabricated).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coefficients {
    pub moduli: [f64; 4],
    pub phases: [Option<C64>; 3],
}

/// Extract the eigenstate vector from a pure density operator, anchored so
/// that the first component above [`PHASE_FLOOR`] is real and positive.
pub(crate) fn state_from_density(rho: &Mat4) -> Result<[C64; 4]> {
    let diag: Vec<f64> = (0..4).map(|i| rho.0[i][i].re.max(0.0)).collect();
    let anchor = diag
        .iter()
        .position(|&d| d.sqrt() > PHASE_FLOOR)
        .ok_or_else(|| Error::InvalidParameter("density operator has vanishing diagonal".into()))?;
    let norm = diag[anchor].sqrt();
    let mut state = [C64::new(0.0, 0.0); 4];
    for i in 0..4 {
        state[i] = rho.0[i][anchor] / norm;
    }
    Ok(state)
}

/// Eigenstate vector in the ionic basis with the anchored phase convention.
pub fn eigenstate_vector(params: &DiracParams, mode: ModeIndex) -> Result<[C64; 4]> {
    state_from_density(&eigen_density(params, mode)?)
}

/// Moduli and relative phases extracted from an arbitrary pure density
/// operator, e.g. one built by the oracle fallback.
pub fn coefficients_from_density(rho: &Mat4) -> Result<Coefficients> {
    let state = state_from_density(rho)?;
    let mut moduli = [0.0; 4];
    for i in 0..4 {
        moduli[i] = rho.0[i][i].re.max(0.0).sqrt();
    }
    let mut phases = [None; 3];
    for (slot, i) in [1usize, 2, 3].into_iter().enumerate() {
        if moduli[i] > PHASE_FLOOR {
            phases[slot] = Some(state[i] / state[i].norm());
        }
    }
    Ok(Coefficients { moduli, phases })
}

/// Moduli and relative phases extracted from the ansatz density operator.
pub fn coefficients(params: &DiracParams, mode: ModeIndex) -> Result<Coefficients> {
    coefficients_from_density(&eigen_density(params, mode)?)
}

/// Closed-form coefficient moduli for the planar configuration.
///
/// The diagonal of rho_{n,s} works out to
/// |M^i|^2 = 1/4 [ 1 + (-1)^s u_i X / sqrt(g2) + (-1)^n v_i m / |lambda|
///                 + (-1)^(n+s) v_i m (kappa^2 eps^2 + u_i X) / (sqrt(g2) |lambda|) ]
/// with X = mu p eps sin(theta), u = diag(beta Sigma_z) = (1,-1,-1,1) and
/// v = diag(beta) = (1,1,-1,-1).
pub fn coefficient_moduli_closed(cfg: &PlanarConfig, mode: ModeIndex) -> Result<[f64; 4]> {
    let params = cfg.to_dirac();
    let inv = dirac::invariants(&params)?;
    if inv.g2 <= G2_FLOOR {
        return Err(Error::DegenerateInvariant { g2: inv.g2 });
    }
    let lambda = eigenvalue(&params, mode)?;
    if lambda.abs() <= lambda_floor(inv.g1) {
        return Err(Error::ZeroEigenvalue { lambda });
    }
    let sg2 = inv.g2.sqrt();
    let al = lambda.abs();
    let x = cfg.mu * cfg.p * cfg.eps * cfg.theta.sin();
    let ke2 = cfg.kappa * cfg.kappa * cfg.eps * cfg.eps;
    let u = [1.0, -1.0, -1.0, 1.0];
    let v = [1.0, 1.0, -1.0, -1.0];
    let mut out = [0.0; 4];
    for i in 0..4 {
        let sq = 0.25
            * (1.0
                + mode.sign_s() * u[i] * x / sg2
                + mode.sign_n() * v[i] * cfg.m / al
                + mode.sign_ns() * v[i] * cfg.m * (ke2 + u[i] * x) / (sg2 * al));
        out[i] = sq.max(0.0).sqrt();
    }
    Ok(out)
}

/// Closed-form relative phases e^{-i dphi^{ab}}, e^{-i dphi^{ac}},
/// e^{-i dphi^{ad}} for the planar configuration. Slots whose moduli fall
/// below [`PHASE_FLOOR`] are None, mirroring [`coefficients`].
pub fn coefficient_phases_closed(cfg: &PlanarConfig, mode: ModeIndex) -> Result<[Option<C64>; 3]> {
    let params = cfg.to_dirac();
    let inv = dirac::invariants(&params)?;
    if inv.g2 <= G2_FLOOR {
        return Err(Error::DegenerateInvariant { g2: inv.g2 });
    }
    let lambda = eigenvalue(&params, mode)?;
    if lambda.abs() <= lambda_floor(inv.g1) {
        return Err(Error::ZeroEigenvalue { lambda });
    }
    let moduli = coefficient_moduli_closed(cfg, mode)?;
    let sg2 = inv.g2.sqrt();
    let al = lambda.abs();
    let sn = mode.sign_n();
    let ss = mode.sign_s();
    let sns = mode.sign_ns();
    let (m, p, eps, kappa, mu) = (cfg.m, cfg.p, cfg.eps, cfg.kappa, cfg.mu);
    let sth = cfg.theta.sin();
    let eith = C64::from_polar(1.0, cfg.theta);
    let i = C64::new(0.0, 1.0);
    let [ma, mb, mc, md] = moduli;

    let mut out = [None; 3];
    if ma > PHASE_FLOOR && mb > PHASE_FLOOR {
        let bracket = sn * eith / al
            + ss * m * eith / sg2
            + sns * (p * sth * (mu * eps * eith + i * p) + eith * (m * m - p * mu * eps * sth))
                / (sg2 * al);
        let val = kappa * eps / (4.0 * ma * mb) * bracket;
        out[0] = unit_or_none(val);
    }
    if ma > PHASE_FLOOR && mc > PHASE_FLOOR {
        let bracket = C64::new(ss * p * sth, 0.0)
            + sns * m * (p * sth - eith.conj() * (mu * eps * eith + i * p)) / al;
        let val = i * kappa * eps / (4.0 * sg2 * ma * mc) * bracket;
        out[1] = unit_or_none(val);
    }
    if ma > PHASE_FLOOR && md > PHASE_FLOOR {
        let bracket = sn * (mu * eps * eith + i * p)
            + sns * eps * (p * kappa * kappa * eps * sth * eith + p * mu * sth * (mu * eps * eith + i * p))
                / sg2;
        let val = -i / (4.0 * al * ma * md) * bracket;
        out[2] = unit_or_none(val);
    }
    Ok(out)
}

/// Normalize to the unit circle; a vanishing magnitude means the phase is
/// undefined (the off-diagonal element itself underflows).
fn unit_or_none(z: C64) -> Option<C64> {
    let n = z.norm();
    if n > PHASE_FLOOR {
        Some(z / n)
    } else {
        None
    }
}

/// The four eigenvalues, eigen-densities and basis-change matrices.
///
/// Columns of `m_matrix` are the eigenstates in the ionic basis, in the
/// [`ModeIndex::ALL`] order; `w_matrix` is its inverse, which for unitary M
/// is the adjoint.
#[derive(Debug, Clone)]
pub struct EigenSystem {
    pub lambdas: [f64; 4],
    pub rhos: [Mat4; 4],
    pub m_matrix: Mat4,
    pub w_matrix: Mat4,
    /// True when g2 fell below [`G2_FLOOR`] and the Jacobi fallback built
    /// the system instead of the ansatz.
    pub degenerate: bool,
}

impl EigenSystem {
    /// M^j_{n,s}: coefficient of ionic level j in eigenstate (n,s).
    pub fn m_coefficient(&self, j: usize, mode: ModeIndex) -> C64 {
        self.m_matrix.0[j][mode.column()]
    }

    /// W^j_{n,s}: coefficient of eigenstate (n,s) in the expansion of |j>.
    pub fn w_coefficient(&self, j: usize, mode: ModeIndex) -> C64 {
        self.w_matrix.0[mode.column()][j]
    }
}

/// Build the eigensystem through the ansatz densities. Fails with
/// [`Error::DegenerateInvariant`] when g2 is below the floor.
pub fn eigensystem(params: &DiracParams) -> Result<EigenSystem> {
    let mut lambdas = [0.0; 4];
    let mut rhos = [Mat4::zeros(); 4];
    let mut m_matrix = Mat4::zeros();
    for mode in ModeIndex::ALL {
        let col = mode.column();
        lambdas[col] = eigenvalue(params, mode)?;
        rhos[col] = eigen_density(params, mode)?;
        let state = state_from_density(&rhos[col])?;
        for row in 0..4 {
            m_matrix.0[row][col] = state[row];
        }
    }
    Ok(EigenSystem {
        lambdas,
        rhos,
        w_matrix: m_matrix.adjoint(),
        m_matrix,
        degenerate: false,
    })
}

/// Build the eigensystem, falling back to the Jacobi oracle with spectral
/// projectors when the ansatz is degenerate (g2 below the floor, e.g. a free
/// particle). The fallback keeps the same column convention by pairing the
/// sorted oracle spectrum with the (n, s) ordering.
pub fn eigensystem_with_fallback(params: &DiracParams) -> Result<EigenSystem> {
    let inv = dirac::invariants(params)?;
    if inv.g2 > G2_FLOOR {
        return eigensystem(params);
    }

    let h = dirac::hamiltonian(params);
    let d = hermitian_eig(&h)?;
    // ascending oracle order -> (n,s) columns: (0,0) largest, (0,1) next,
    // (1,0) most negative, (1,1) next
    let assignment = [3usize, 2, 0, 1];
    let mut lambdas = [0.0; 4];
    let mut rhos = [Mat4::zeros(); 4];
    let mut m_matrix = Mat4::zeros();
    for mode in ModeIndex::ALL {
        let col = mode.column();
        let src = assignment[col];
        lambdas[col] = d.eigenvalues[src];
        let mut v = d.eigenvectors[src];
        // deterministic phase: first component above floor made real positive
        if let Some(r) = v.iter().position(|z| z.norm() > PHASE_FLOOR) {
            let phase = v[r] / v[r].norm();
            for z in v.iter_mut() {
                *z /= phase;
            }
        }
        rhos[col] = Mat4::outer(&v, &v);
        for row in 0..4 {
            m_matrix.0[row][col] = v[row];
        }
    }
    Ok(EigenSystem {
        lambdas,
        rhos,
        w_matrix: m_matrix.adjoint(),
        m_matrix,
        degenerate: true,
    })
}

/// Free-particle bi-spinor built from a two-component spinor.
#[derive(Debug, Clone)]
pub struct FreeBispinor {
    pub s: u8,
    pub p: [f64; 3],
    pub spinor: [C64; 2],
    /// Four-component state in the (parity (x) spin) product basis.
    pub state: [C64; 4],
    /// E_p = sqrt(p^2 + m^2)
    pub energy: f64,
    /// N_s(p) = (1/sqrt(2)) (1 + (-1)^(s+1) m / E_p)^(1/2)
    pub normalization: f64,
}

/// Construct the free bi-spinor
/// N_s [ |+> (x) |u> + p / (E_p + (-1)^(s+1) m) |-> (x) (p_hat . sigma) |u> ].
///
/// The caller supplies a unit spinor |u> (renormalized here defensively) and
/// must keep E_p > 0; the time phase e^{i (-1)^s E_p t} is left to the
/// caller.
pub fn free_bispinor(m: f64, p: [f64; 3], s: u8, spinor: [C64; 2]) -> FreeBispinor {
    assert!(s <= 1, "spin-branch label s must be 0 or 1");
    let pn = dirac::norm3(p);
    let energy = (pn * pn + m * m).sqrt();
    assert!(energy > 0.0, "free bi-spinor requires E_p > 0");
    assert!(
        s == 1 || pn > 0.0,
        "the s = 0 branch needs nonzero momentum"
    );

    let snorm = (spinor[0].norm_sqr() + spinor[1].norm_sqr()).sqrt();
    let u = [spinor[0] / snorm, spinor[1] / snorm];

    // cancellation-free forms of N_s = sqrt((E + (-1)^(s+1) m) / 2E) and
    // the odd-parity amplitude ratio p / (E + (-1)^(s+1) m): for s = 0 the
    // numerator E - m collapses at small p, so use (E-m) = p^2 / (E+m)
    let (normalization, ratio) = if s == 1 {
        let nsq = 0.5 * (energy + m) / energy;
        (nsq.sqrt(), pn / (energy + m))
    } else {
        let n = pn / (2.0 * energy * (energy + m)).sqrt();
        (n, (energy + m) / pn)
    };

    // (p_hat . sigma) |u>
    let v = if pn > 0.0 {
        let (px, py, pz) = (p[0] / pn, p[1] / pn, p[2] / pn);
        [
            C64::new(pz, 0.0) * u[0] + C64::new(px, -py) * u[1],
            C64::new(px, py) * u[0] - C64::new(pz, 0.0) * u[1],
        ]
    } else {
        [C64::new(0.0, 0.0); 2]
    };

    let state = [
        normalization * u[0],
        normalization * u[1],
        normalization * ratio * v[0],
        normalization * ratio * v[1],
    ];

    FreeBispinor {
        s,
        p,
        spinor: u,
        state,
        energy,
        normalization,
    }
}
