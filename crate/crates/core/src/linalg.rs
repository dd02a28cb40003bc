//! Dense complex linear algebra for fixed 2x2 and 4x4 matrices.
//!
//! This is deliberately minimal: the rest of the crate only ever needs the
//! Pauli algebra, Kronecker products, a Hermitian eigensolver for a single
//! 4x4 matrix, and partial traces. The eigensolver uses cyclic Jacobi
//! rotations, which are unconditionally stable at this size and keep the
//! kernel dependency-free so it can serve as an independent oracle for the
//! closed-form spectra.

use crate::{Error, Result};

pub type C64 = num_complex::Complex64;

/// Relative Frobenius tolerance for Hermiticity checks.
pub const HERMITICITY_TOL: f64 = 1e-12;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Row-major complex 2x2 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[C64; 2]; 2]);

/// Row-major complex 4x4 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat4(pub [[C64; 4]; 4]);

impl Mat2 {
    pub fn zeros() -> Self {
        Mat2([[ZERO; 2]; 2])
    }

    pub fn identity() -> Self {
        Mat2([[ONE, ZERO], [ZERO, ONE]])
    }

    pub fn pauli_x() -> Self {
        Mat2([[ZERO, ONE], [ONE, ZERO]])
    }

    pub fn pauli_y() -> Self {
        Mat2([[ZERO, C64::new(0.0, -1.0)], [C64::new(0.0, 1.0), ZERO]])
    }

    pub fn pauli_z() -> Self {
        Mat2([[ONE, ZERO], [ZERO, -ONE]])
    }

    /// The three Pauli matrices in (x, y, z) order.
    pub fn paulis() -> [Self; 3] {
        [Self::pauli_x(), Self::pauli_y(), Self::pauli_z()]
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros();
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] = self.0[j][i].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> C64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Eigenvalues of a Hermitian 2x2, ascending. Uses the closed form
    /// mean +- sqrt(mean^2 - det) with the discriminant clamped at zero.
    pub fn hermitian_eigenvalues(&self) -> [f64; 2] {
        let a = self.0[0][0].re;
        let d = self.0[1][1].re;
        let off = self.0[0][1].norm_sqr();
        let mean = 0.5 * (a + d);
        let disc = (0.25 * (a - d) * (a - d) + off).max(0.0).sqrt();
        [mean - disc, mean + disc]
    }

    pub fn determinant(&self) -> C64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }
}

impl std::ops::Add for Mat2 {
    type Output = Mat2;
    fn add(self, rhs: Mat2) -> Mat2 {
        let mut out = Mat2::zeros();
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] = self.0[i][j] + rhs.0[i][j];
            }
        }
        out
    }
}

impl std::ops::Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, rhs: Mat2) -> Mat2 {
        let mut out = Mat2::zeros();
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] = self.0[i][j] - rhs.0[i][j];
            }
        }
        out
    }
}

impl std::ops::Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        let mut out = Mat2::zeros();
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = ZERO;
                for k in 0..2 {
                    acc += self.0[i][k] * rhs.0[k][j];
                }
                out.0[i][j] = acc;
            }
        }
        out
    }
}

impl std::ops::Mul<Mat2> for C64 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        let mut out = rhs;
        for row in out.0.iter_mut() {
            for z in row.iter_mut() {
                *z *= self;
            }
        }
        out
    }
}

impl std::ops::Mul<Mat2> for f64 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        C64::new(self, 0.0) * rhs
    }
}

impl std::ops::Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        -1.0 * self
    }
}

impl Mat4 {
    pub fn zeros() -> Self {
        Mat4([[ZERO; 4]; 4])
    }

    pub fn identity() -> Self {
        let mut out = Self::zeros();
        for i in 0..4 {
            out.0[i][i] = ONE;
        }
        out
    }

    pub fn from_diagonal(d: [C64; 4]) -> Self {
        let mut out = Self::zeros();
        for i in 0..4 {
            out.0[i][i] = d[i];
        }
        out
    }

    /// |v><w| outer product.
    pub fn outer(v: &[C64; 4], w: &[C64; 4]) -> Self {
        let mut out = Self::zeros();
        for i in 0..4 {
            for j in 0..4 {
                out.0[i][j] = v[i] * w[j].conj();
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros();
        for i in 0..4 {
            for j in 0..4 {
                out.0[i][j] = self.0[j][i].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> C64 {
        (0..4).map(|i| self.0[i][i]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn mul_vec(&self, v: &[C64; 4]) -> [C64; 4] {
        let mut out = [ZERO; 4];
        for i in 0..4 {
            for k in 0..4 {
                out[i] += self.0[i][k] * v[k];
            }
        }
        out
    }

    /// Relative Frobenius deviation from Hermiticity, ||A - A^dag|| / ||A||.
    pub fn hermiticity_deviation(&self) -> f64 {
        let n = self.frobenius_norm();
        if n == 0.0 {
            return 0.0;
        }
        (*self - self.adjoint()).frobenius_norm() / n
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermiticity_deviation() <= HERMITICITY_TOL
    }
}

impl std::ops::Add for Mat4 {
    type Output = Mat4;
    fn add(self, rhs: Mat4) -> Mat4 {
        let mut out = Mat4::zeros();
        for i in 0..4 {
            for j in 0..4 {
                out.0[i][j] = self.0[i][j] + rhs.0[i][j];
            }
        }
        out
    }
}

impl std::ops::Sub for Mat4 {
    type Output = Mat4;
    fn sub(self, rhs: Mat4) -> Mat4 {
        let mut out = Mat4::zeros();
        for i in 0..4 {
            for j in 0..4 {
                out.0[i][j] = self.0[i][j] - rhs.0[i][j];
            }
        }
        out
    }
}

impl std::ops::Mul for Mat4 {
    type Output = Mat4;
    fn mul(self, rhs: Mat4) -> Mat4 {
        let mut out = Mat4::zeros();
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = ZERO;
                for k in 0..4 {
                    acc += self.0[i][k] * rhs.0[k][j];
                }
                out.0[i][j] = acc;
            }
        }
        out
    }
}

impl std::ops::Mul<Mat4> for C64 {
    type Output = Mat4;
    fn mul(self, rhs: Mat4) -> Mat4 {
        let mut out = rhs;
        for row in out.0.iter_mut() {
            for z in row.iter_mut() {
                *z *= self;
            }
        }
        out
    }
}

impl std::ops::Mul<Mat4> for f64 {
    type Output = Mat4;
    fn mul(self, rhs: Mat4) -> Mat4 {
        C64::new(self, 0.0) * rhs
    }
}

impl std::ops::Neg for Mat4 {
    type Output = Mat4;
    fn neg(self) -> Mat4 {
        -1.0 * self
    }
}

/// Kronecker product, (A (x) B)[2i+k][2j+l] = A[i][j] * B[k][l].
pub fn kron(a: &Mat2, b: &Mat2) -> Mat4 {
    let mut out = Mat4::zeros();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out.0[2 * i + k][2 * j + l] = a.0[i][j] * b.0[k][l];
                }
            }
        }
    }
    out
}

/// Which tensor factor a partial trace keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    /// Keep the first Kronecker factor, trace out the second.
    First,
    /// Keep the second Kronecker factor, trace out the first.
    Second,
}

/// Reduced 2x2 matrix of the kept subsystem. The caller is expected to pass
/// a unit-trace density matrix; the trace is preserved either way.
pub fn partial_trace(rho: &Mat4, keep: Subsystem) -> Mat2 {
    let mut out = Mat2::zeros();
    for i in 0..2 {
        for j in 0..2 {
            let mut acc = ZERO;
            for k in 0..2 {
                acc += match keep {
                    Subsystem::First => rho.0[2 * i + k][2 * j + k],
                    Subsystem::Second => rho.0[2 * k + i][2 * k + j],
                };
            }
            out.0[i][j] = acc;
        }
    }
    out
}

/// Frobenius norm of the commutator AB - BA.
pub fn commutator_norm(a: &Mat4, b: &Mat4) -> f64 {
    (*a * *b - *b * *a).frobenius_norm()
}

/// Eigendecomposition of a Hermitian 4x4 matrix.
#[derive(Debug, Clone)]
pub struct EigDecomp {
    /// Eigenvalues in ascending order.
    pub eigenvalues: [f64; 4],
    /// `eigenvectors[i]` is the orthonormal eigenvector for `eigenvalues[i]`.
    pub eigenvectors: [[C64; 4]; 4],
}

impl EigDecomp {
    /// Rank-1 projector |v_i><v_i| onto the i-th eigenvector.
    pub fn projector(&self, i: usize) -> Mat4 {
        Mat4::outer(&self.eigenvectors[i], &self.eigenvectors[i])
    }

    /// Reconstruct V diag(lambda) V^dag.
    pub fn reconstruct(&self) -> Mat4 {
        let mut out = Mat4::zeros();
        for i in 0..4 {
            out = out + C64::new(self.eigenvalues[i], 0.0) * self.projector(i);
        }
        out
    }
}

/// Hermitian eigendecomposition by cyclic Jacobi rotations.
///
/// Errors with [`Error::NotHermitian`] when the relative Frobenius deviation
/// from Hermiticity exceeds [`HERMITICITY_TOL`]. Eigenvalues come out
/// ascending; eigenvectors stay orthonormal because the accumulated
/// transformation is a product of unitaries, with a modified Gram-Schmidt
/// pass over degenerate clusters to pin the basis deterministically.
pub fn hermitian_eig(h: &Mat4) -> Result<EigDecomp> {
    let scale = h.frobenius_norm();
    let dev = h.hermiticity_deviation();
    if dev > HERMITICITY_TOL {
        return Err(Error::NotHermitian { deviation: dev });
    }

    // Work on the Hermitian average to shed rounding asymmetry.
    let mut a = 0.5 * (*h + h.adjoint());
    let mut v = Mat4::identity();

    let off_norm = |m: &Mat4| -> f64 {
        let mut acc = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    acc += m.0[i][j].norm_sqr();
                }
            }
        }
        acc.sqrt()
    };

    let tol = 1e-15 * scale.max(f64::MIN_POSITIVE);
    for _sweep in 0..40 {
        if off_norm(&a) <= tol {
            break;
        }
        for p in 0..3 {
            for q in (p + 1)..4 {
                let z = a.0[p][q];
                let zn = z.norm();
                if zn <= tol / 6.0 {
                    continue;
                }
                let app = a.0[p][p].re;
                let aqq = a.0[q][q].re;
                let phase = z / zn;
                let tau = (aqq - app) / (2.0 * zn);
                // smaller root of t^2 - 2 tau t - 1 = 0
                let t = if tau >= 0.0 {
                    -1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                let mut u = Mat4::identity();
                u.0[p][p] = C64::new(c, 0.0);
                u.0[q][q] = C64::new(c, 0.0);
                u.0[p][q] = -s * phase;
                u.0[q][p] = s * phase.conj();

                a = u.adjoint() * a * u;
                v = v * u;
            }
        }
    }

    // Sort ascending, carrying eigenvector columns along.
    let mut order = [0usize, 1, 2, 3];
    order.sort_by(|&i, &j| a.0[i][i].re.partial_cmp(&a.0[j][j].re).unwrap());

    let mut eigenvalues = [0.0; 4];
    let mut eigenvectors = [[ZERO; 4]; 4];
    for (dst, &src) in order.iter().enumerate() {
        eigenvalues[dst] = a.0[src][src].re;
        for k in 0..4 {
            eigenvectors[dst][k] = v.0[k][src];
        }
    }

    // Re-orthonormalize degenerate clusters in input order.
    let cluster_tol = 1e-8 * scale.max(f64::MIN_POSITIVE);
    let mut start = 0;
    while start < 4 {
        let mut end = start + 1;
        while end < 4 && (eigenvalues[end] - eigenvalues[end - 1]).abs() <= cluster_tol {
            end += 1;
        }
        if end - start > 1 {
            for i in start..end {
                for j in start..i {
                    let proj: C64 = (0..4)
                        .map(|k| eigenvectors[j][k].conj() * eigenvectors[i][k])
                        .sum();
                    for k in 0..4 {
                        let adj = proj * eigenvectors[j][k];
                        eigenvectors[i][k] -= adj;
                    }
                }
                let norm: f64 = eigenvectors[i].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                for k in 0..4 {
                    eigenvectors[i][k] /= norm;
                }
            }
        }
        start = end;
    }

    Ok(EigDecomp {
        eigenvalues,
        eigenvectors,
    })
}

pub fn vec_norm(v: &[C64; 4]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn vec_dot(a: &[C64; 4], b: &[C64; 4]) -> C64 {
    (0..4).map(|k| a[k].conj() * b[k]).sum()
}
