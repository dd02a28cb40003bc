//! Dirac matrices and the non-minimally coupled Hamiltonian.
//!
//! Basis order is fixed crate-wide as (|a>, |b>, |c>, |d>) = (|00>, |01>,
//! |10>, |11>), i.e. rows/columns 0..3 of every 4x4 matrix, with the first
//! qubit the intrinsic-parity factor and the second the spin factor.

use crate::linalg::{kron, Mat2, Mat4, C64};
use crate::{Error, Result};

pub fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn norm3(a: [f64; 3]) -> f64 {
    dot3(a, a).sqrt()
}

/// The fixed matrix representation used throughout: alpha_i = sx (x) s_i,
/// beta = sz (x) I2, Sigma_i = I2 (x) s_i and gamma5 = -i ax ay az = sx (x) I2.
#[derive(Debug, Clone)]
pub struct DiracMatrices {
    pub alpha: [Mat4; 3],
    pub beta: Mat4,
    pub sigma: [Mat4; 3],
    pub gamma5: Mat4,
}

/// Build the Dirac matrix set.
pub fn matrices() -> DiracMatrices {
    let paulis = Mat2::paulis();
    let i2 = Mat2::identity();
    let sx = Mat2::pauli_x();
    let sz = Mat2::pauli_z();
    DiracMatrices {
        alpha: [
            kron(&sx, &paulis[0]),
            kron(&sx, &paulis[1]),
            kron(&sx, &paulis[2]),
        ],
        beta: kron(&sz, &i2),
        sigma: [
            kron(&i2, &paulis[0]),
            kron(&i2, &paulis[1]),
            kron(&i2, &paulis[2]),
        ],
        gamma5: kron(&sx, &i2),
    }
}

/// Physical parameters of the Dirac-side Hamiltonian in natural units.
///
/// `kappa` and `mu` are the electric and magnetic dipole moments coupling to
/// the external fields `e_field` and `b_field`. Everything that builds on
/// the traceless-operator algebra requires `b_field = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiracParams {
    pub m: f64,
    pub p: [f64; 3],
    pub kappa: f64,
    pub mu: f64,
    pub e_field: [f64; 3],
    pub b_field: [f64; 3],
}

impl DiracParams {
    pub fn new(
        m: f64,
        p: [f64; 3],
        kappa: f64,
        mu: f64,
        e_field: [f64; 3],
        b_field: [f64; 3],
    ) -> Result<Self> {
        let params = Self {
            m,
            p,
            kappa,
            mu,
            e_field,
            b_field,
        };
        if !params.all_finite() {
            return Err(Error::InvalidParameter(
                "Dirac parameters must be finite".into(),
            ));
        }
        if m < 0.0 {
            return Err(Error::InvalidParameter("mass must be non-negative".into()));
        }
        Ok(params)
    }

    /// Electrostatic configuration (`b_field = 0`).
    pub fn electrostatic(m: f64, p: [f64; 3], kappa: f64, mu: f64, e_field: [f64; 3]) -> Result<Self> {
        Self::new(m, p, kappa, mu, e_field, [0.0; 3])
    }

    pub fn with_momentum(mut self, p: [f64; 3]) -> Self {
        self.p = p;
        self
    }

    fn all_finite(&self) -> bool {
        let mut vals = vec![self.m, self.kappa, self.mu];
        vals.extend(self.p);
        vals.extend(self.e_field);
        vals.extend(self.b_field);
        vals.iter().all(|v| v.is_finite())
    }

    fn require_electrostatic(&self) -> Result<()> {
        if self.b_field != [0.0; 3] {
            return Err(Error::MagneticFieldUnsupported);
        }
        Ok(())
    }
}

/// One-dimensional propagation along x with the electric field in the x-y
/// plane: p = p x_hat, E = eps (cos(theta) x_hat + sin(theta) y_hat).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanarConfig {
    pub m: f64,
    pub p: f64,
    pub eps: f64,
    pub theta: f64,
    pub kappa: f64,
    pub mu: f64,
}

impl PlanarConfig {
    pub fn new(m: f64, p: f64, eps: f64, theta: f64, kappa: f64, mu: f64) -> Result<Self> {
        let cfg = Self {
            m,
            p,
            eps,
            theta,
            kappa,
            mu,
        };
        if ![m, p, eps, theta, kappa, mu].iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidParameter(
                "planar parameters must be finite".into(),
            ));
        }
        if m < 0.0 || p < 0.0 || eps < 0.0 {
            return Err(Error::InvalidParameter(
                "m, p and eps must be non-negative".into(),
            ));
        }
        Ok(cfg)
    }

    pub fn to_dirac(&self) -> DiracParams {
        DiracParams {
            m: self.m,
            p: [self.p, 0.0, 0.0],
            kappa: self.kappa,
            mu: self.mu,
            e_field: [
                self.eps * self.theta.cos(),
                self.eps * self.theta.sin(),
                0.0,
            ],
            b_field: [0.0; 3],
        }
    }
}

/// Trace invariants of the squared Hamiltonian: H^2 = g1 I + 2 O with
/// O^2 = g2 I.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Invariants {
    pub g1: f64,
    pub g2: f64,
}

/// The coupled Hamiltonian
/// H = alpha.p + beta m + kappa beta (Sigma.E + i alpha.B)
///   + mu beta (i alpha.E - Sigma.B).
///
/// Hermitian for any parameter values; with `b_field = 0` it reduces to the
/// electrostatic tensor + pseudotensor form.
pub fn hamiltonian(params: &DiracParams) -> Mat4 {
    let dm = matrices();
    let mut h = params.m * dm.beta;
    for j in 0..3 {
        h = h + params.p[j] * dm.alpha[j];
        h = h + (params.kappa * params.e_field[j]) * (dm.beta * dm.sigma[j]);
        h = h + C64::new(0.0, params.kappa * params.b_field[j]) * (dm.beta * dm.alpha[j]);
        h = h + C64::new(0.0, params.mu * params.e_field[j]) * (dm.beta * dm.alpha[j]);
        h = h - (params.mu * params.b_field[j]) * (dm.beta * dm.sigma[j]);
    }
    h
}

/// The traceless operator O = m kappa Sigma.E + mu beta Sigma.(p x E)
/// - i kappa beta alpha.(p x E), satisfying H^2 = g1 I + 2 O and O^2 = g2 I.
pub fn o_operator(params: &DiracParams) -> Result<Mat4> {
    params.require_electrostatic()?;
    let dm = matrices();
    let pxe = cross3(params.p, params.e_field);
    let mut o = Mat4::zeros();
    for j in 0..3 {
        o = o + (params.m * params.kappa * params.e_field[j]) * dm.sigma[j];
        o = o + (params.mu * pxe[j]) * (dm.beta * dm.sigma[j]);
        o = o + C64::new(0.0, -params.kappa * pxe[j]) * (dm.beta * dm.alpha[j]);
    }
    Ok(o)
}

/// Closed-form invariants g1 = p^2 + m^2 + (kappa^2 + mu^2) E^2 and
/// g2 = m^2 kappa^2 E^2 + (mu^2 + kappa^2) |p x E|^2.
pub fn invariants(params: &DiracParams) -> Result<Invariants> {
    params.require_electrostatic()?;
    let p2 = dot3(params.p, params.p);
    let e2 = dot3(params.e_field, params.e_field);
    let pxe = cross3(params.p, params.e_field);
    let g1 = p2 + params.m * params.m + (params.kappa * params.kappa + params.mu * params.mu) * e2;
    let g2 = params.m * params.m * params.kappa * params.kappa * e2
        + (params.mu * params.mu + params.kappa * params.kappa) * dot3(pxe, pxe);
    Ok(Invariants { g1, g2 })
}
