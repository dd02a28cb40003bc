//! Time evolution of the internal ionic levels through the Dirac eigenbasis.
//!
//! An ionic level |j> expands over the eigenstates with the W = M^-1
//! coefficients and evolves as
//!
//! ```text
//! |j(t)> = sum_k [ sum_{n,s} W^j_{n,s} M^k_{n,s} e^{-i lambda_{n,s} t} ] |k>
//! ```
//!
//! i.e. through the propagator M e^{-i Lambda t} W. The amplitude form is
//! the canonical probability path; the quadruple-sum form is kept as an
//! independent route that cross-checks the W/M conventions.

use crate::linalg::{vec_norm, Mat4, C64};
use crate::spectrum::{EigenSystem, ModeIndex};

/// Default dimensionless time extent (p t) for figure reproduction.
pub const DEFAULT_T_MAX: f64 = 20.0;
/// Default number of grid points for figure reproduction.
pub const DEFAULT_STEPS: usize = 2001;

/// Internal ionic levels with the two-qubit assignment a=|00>, b=|01>,
/// c=|10>, d=|11>.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IonicLabel {
    A,
    B,
    C,
    D,
}

impl IonicLabel {
    pub const ALL: [IonicLabel; 4] = [Self::A, Self::B, Self::C, Self::D];

    pub fn index(&self) -> usize {
        match self {
            Self::A => 0,
            Self::B => 1,
            Self::C => 2,
            Self::D => 3,
        }
    }

    pub fn from_index(i: usize) -> Option<Self> {
        Self::ALL.get(i).copied()
    }

    /// Basis vector of the level.
    pub fn ket(&self) -> [C64; 4] {
        let mut v = [C64::new(0.0, 0.0); 4];
        v[self.index()] = C64::new(1.0, 0.0);
        v
    }
}

impl std::fmt::Display for IonicLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let c = match self {
            Self::A => 'a',
            Self::B => 'b',
            Self::C => 'c',
            Self::D => 'd',
        };
        write!(f, "{c}")
    }
}

impl std::str::FromStr for IonicLabel {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "a" => Ok(Self::A),
            "b" => Ok(Self::B),
            "c" => Ok(Self::C),
            "d" => Ok(Self::D),
            other => Err(crate::Error::InvalidParameter(format!(
                "unknown ionic level '{other}', expected a|b|c|d"
            ))),
        }
    }
}

/// Amplitude 4-vector of an evolved ionic level at time `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IonicState {
    pub amps: [C64; 4],
    pub t: f64,
}

impl IonicState {
    pub fn norm(&self) -> f64 {
        vec_norm(&self.amps)
    }

    /// Pure density matrix |psi><psi| of the state.
    pub fn density(&self) -> Mat4 {
        Mat4::outer(&self.amps, &self.amps)
    }
}

/// Values sampled on a strictly increasing time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries<T> {
    pub t: Vec<f64>,
    pub values: Vec<T>,
}

/// Uniform grid on [0, t_max] with `steps` points (at least 2).
pub fn uniform_grid(t_max: f64, steps: usize) -> Vec<f64> {
    assert!(steps >= 2, "time grid needs at least 2 points");
    assert!(t_max > 0.0 && t_max.is_finite(), "t_max must be positive");
    let dt = t_max / (steps - 1) as f64;
    (0..steps).map(|k| k as f64 * dt).collect()
}

/// Evolve the ionic level |j> to time t: M e^{-i Lambda t} W |j>.
pub fn evolve_ionic(sys: &EigenSystem, j: IonicLabel, t: f64) -> IonicState {
    let ji = j.index();
    let mut amps = [C64::new(0.0, 0.0); 4];
    for mode in ModeIndex::ALL {
        let col = mode.column();
        let phase = C64::from_polar(1.0, -sys.lambdas[col] * t);
        let w = sys.w_matrix.0[col][ji];
        for (k, amp) in amps.iter_mut().enumerate() {
            *amp += sys.m_matrix.0[k][col] * w * phase;
        }
    }
    IonicState { amps, t }
}

/// P_{j->k}(t) = |<k|j(t)>|^2, clamped onto [0, 1].
pub fn transition_probability(sys: &EigenSystem, j: IonicLabel, k: IonicLabel, t: f64) -> f64 {
    let state = evolve_ionic(sys, j, t);
    state.amps[k.index()].norm_sqr().clamp(0.0, 1.0)
}

/// The same probability through the quadruple sum over eigenmode pairs,
///
/// ```text
/// P_{j->k}(t) = sum_{n,s} sum_{m,l} W^j_{n,s} W^k_{m,l} (W^j_{m,l})^*
///               (W^k_{n,s})^* e^{-i (lambda_{n,s} - lambda_{m,l}) t}
/// ```
///
/// kept as an independent implementation for cross-checks. The imaginary
/// residue must be pure rounding and is discarded.
pub fn transition_probability_sum(sys: &EigenSystem, j: IonicLabel, k: IonicLabel, t: f64) -> f64 {
    let ji = j.index();
    let ki = k.index();
    let mut acc = C64::new(0.0, 0.0);
    for ns in ModeIndex::ALL {
        for ml in ModeIndex::ALL {
            let coeff = sys.w_coefficient(ji, ns)
                * sys.w_coefficient(ki, ml)
                * sys.w_coefficient(ji, ml).conj()
                * sys.w_coefficient(ki, ns).conj();
            let phase = C64::from_polar(
                1.0,
                -(sys.lambdas[ns.column()] - sys.lambdas[ml.column()]) * t,
            );
            acc += coeff * phase;
        }
    }
    debug_assert!(acc.im.abs() < 1e-12);
    acc.re.clamp(0.0, 1.0)
}

/// Survivor probability P_{j->j} sampled on a grid.
pub fn survivor_series(sys: &EigenSystem, j: IonicLabel, grid: &[f64]) -> TimeSeries<f64> {
    TimeSeries {
        t: grid.to_vec(),
        values: grid
            .iter()
            .map(|&t| transition_probability(sys, j, j, t))
            .collect(),
    }
}

/// All four transition probabilities from level `j`, sampled on a grid.
pub fn transition_series(sys: &EigenSystem, j: IonicLabel, grid: &[f64]) -> TimeSeries<[f64; 4]> {
    TimeSeries {
        t: grid.to_vec(),
        values: grid
            .iter()
            .map(|&t| {
                let state = evolve_ionic(sys, j, t);
                let mut row = [0.0; 4];
                for k in 0..4 {
                    row[k] = state.amps[k].norm_sqr().clamp(0.0, 1.0);
                }
                row
            })
            .collect(),
    }
}
