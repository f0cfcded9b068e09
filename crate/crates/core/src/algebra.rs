//! Exact Dirac/Pauli matrix algebra and spinor-pointwise operations.
//!
//! Conventions:
//!
//! ```text
//! sigma_1 = [[0, 1], [1, 0]]    sigma_2 = [[0, -i], [i, 0]]    sigma_3 = [[1, 0], [0, -1]]
//! alpha_j = [[0, sigma_j], [sigma_j, 0]]   (4x4 blocks)        beta = diag(I2, -I2)
//! ```
//!
//! All entries are integer/imaginary-unit literals, so sums and products of
//! these matrices are exact in f64 arithmetic; the anticommutation identities
//! `alpha_j alpha_k + alpha_k alpha_j = 2 delta_jk I4` hold with zero error.
//!
//! `alpha_dot` is the hot path of every spectral operator and is written
//! componentwise, never materializing the 4x4 matrix.

use crate::C64;

/// Four complex components of a spinor value at one point.
pub type Spinor4 = [C64; 4];

/// Two complex components (Weyl block).
pub type Spinor2 = [C64; 2];

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

/// 2x2 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix2(pub [[C64; 2]; 2]);

/// 4x4 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix4(pub [[C64; 4]; 4]);

impl Matrix2 {
    pub fn zeros() -> Self {
        Matrix2([[ZERO; 2]; 2])
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        m.0[0][0] = ONE;
        m.0[1][1] = ONE;
        m
    }

    pub fn mul(&self, rhs: &Matrix2) -> Matrix2 {
        let mut out = Matrix2::zeros();
        for i in 0..2 {
            for j in 0..2 {
                let mut s = ZERO;
                for k in 0..2 {
                    s += self.0[i][k] * rhs.0[k][j];
                }
                out.0[i][j] = s;
            }
        }
        out
    }

    pub fn add(&self, rhs: &Matrix2) -> Matrix2 {
        let mut out = *self;
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] += rhs.0[i][j];
            }
        }
        out
    }

    pub fn adjoint(&self) -> Matrix2 {
        let mut out = Matrix2::zeros();
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] = self.0[j][i].conj();
            }
        }
        out
    }

    pub fn apply(&self, s: &Spinor2) -> Spinor2 {
        [
            self.0[0][0] * s[0] + self.0[0][1] * s[1],
            self.0[1][0] * s[0] + self.0[1][1] * s[1],
        ]
    }
}

impl Matrix4 {
    pub fn zeros() -> Self {
        Matrix4([[ZERO; 4]; 4])
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for i in 0..4 {
            m.0[i][i] = ONE;
        }
        m
    }

    pub fn mul(&self, rhs: &Matrix4) -> Matrix4 {
        let mut out = Matrix4::zeros();
        for i in 0..4 {
            for j in 0..4 {
                let mut s = ZERO;
                for k in 0..4 {
                    s += self.0[i][k] * rhs.0[k][j];
                }
                out.0[i][j] = s;
            }
        }
        out
    }

    pub fn add(&self, rhs: &Matrix4) -> Matrix4 {
        let mut out = *self;
        for i in 0..4 {
            for j in 0..4 {
                out.0[i][j] += rhs.0[i][j];
            }
        }
        out
    }

    pub fn sub(&self, rhs: &Matrix4) -> Matrix4 {
        let mut out = *self;
        for i in 0..4 {
            for j in 0..4 {
                out.0[i][j] -= rhs.0[i][j];
            }
        }
        out
    }

    pub fn scale(&self, c: C64) -> Matrix4 {
        let mut out = *self;
        for i in 0..4 {
            for j in 0..4 {
                out.0[i][j] *= c;
            }
        }
        out
    }

    pub fn adjoint(&self) -> Matrix4 {
        let mut out = Matrix4::zeros();
        for i in 0..4 {
            for j in 0..4 {
                out.0[i][j] = self.0[j][i].conj();
            }
        }
        out
    }

    pub fn apply(&self, s: &Spinor4) -> Spinor4 {
        let mut out = [ZERO; 4];
        for (i, row) in self.0.iter().enumerate() {
            out[i] = row[0] * s[0] + row[1] * s[1] + row[2] * s[2] + row[3] * s[3];
        }
        out
    }

    /// Largest |m_ij - conj(m_ji)| over all entries.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut d = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                d = d.max((self.0[i][j] - self.0[j][i].conj()).norm());
            }
        }
        d
    }

    pub fn max_entry_norm(&self) -> f64 {
        let mut d = 0.0f64;
        for row in &self.0 {
            for e in row {
                d = d.max(e.norm());
            }
        }
        d
    }

    pub fn frobenius_norm(&self) -> f64 {
        let mut s = 0.0;
        for row in &self.0 {
            for e in row {
                s += e.norm_sqr();
            }
        }
        s.sqrt()
    }
}

/// Pauli matrix `sigma_j`, `j` in 1..=3.
///
/// Panics on an index outside 1..=3; the index is part of the call contract.
pub fn pauli(j: usize) -> Matrix2 {
    let mut m = Matrix2::zeros();
    match j {
        1 => {
            m.0[0][1] = ONE;
            m.0[1][0] = ONE;
        }
        2 => {
            m.0[0][1] = -I;
            m.0[1][0] = I;
        }
        3 => {
            m.0[0][0] = ONE;
            m.0[1][1] = -ONE;
        }
        _ => panic!("pauli index {j} out of range 1..=3"),
    }
    m
}

/// Dirac matrix `alpha_j = [[0, sigma_j], [sigma_j, 0]]`, `j` in 1..=3.
///
/// Panics on an index outside 1..=3.
pub fn dirac_alpha(j: usize) -> Matrix4 {
    let s = pauli(j);
    let mut m = Matrix4::zeros();
    for a in 0..2 {
        for b in 0..2 {
            m.0[a][2 + b] = s.0[a][b];
            m.0[2 + a][b] = s.0[a][b];
        }
    }
    m
}

/// The mass-block matrix `beta = diag(I2, -I2)`.
pub fn beta() -> Matrix4 {
    let mut m = Matrix4::zeros();
    m.0[0][0] = ONE;
    m.0[1][1] = ONE;
    m.0[2][2] = -ONE;
    m.0[3][3] = -ONE;
    m
}

/// `(sigma . v) s` for a real 3-vector `v`, componentwise.
#[inline]
pub fn sigma_dot(v: [f64; 3], s: &Spinor2) -> Spinor2 {
    let vm = C64::new(v[0], -v[1]);
    let vp = C64::new(v[0], v[1]);
    [v[2] * s[0] + vm * s[1], vp * s[0] - v[2] * s[1]]
}

/// `(alpha . v) s` for a real 3-vector `v`, componentwise.
///
/// Satisfies `|alpha_dot(v, s)| = |v| |s|` since the alpha matrices are
/// unitary and anticommute.
#[inline]
pub fn alpha_dot(v: [f64; 3], s: &Spinor4) -> Spinor4 {
    let vm = C64::new(v[0], -v[1]);
    let vp = C64::new(v[0], v[1]);
    [
        v[2] * s[2] + vm * s[3],
        vp * s[2] - v[2] * s[3],
        v[2] * s[0] + vm * s[1],
        vp * s[0] - v[2] * s[1],
    ]
}

/// `alpha . v` as an explicit matrix (kernel evaluations; not the hot path).
pub fn alpha_matrix(v: [f64; 3]) -> Matrix4 {
    let mut m = Matrix4::zeros();
    let vm = C64::new(v[0], -v[1]);
    let vp = C64::new(v[0], v[1]);
    let vz = C64::new(v[2], 0.0);
    m.0[0][2] = vz;
    m.0[0][3] = vm;
    m.0[1][2] = vp;
    m.0[1][3] = -vz;
    m.0[2][0] = vz;
    m.0[2][1] = vm;
    m.0[3][0] = vp;
    m.0[3][1] = -vz;
    m
}

/// Euclidean norm on C^4.
#[inline]
pub fn spinor_norm(s: &Spinor4) -> f64 {
    (s[0].norm_sqr() + s[1].norm_sqr() + s[2].norm_sqr() + s[3].norm_sqr()).sqrt()
}

/// Euclidean norm on C^2.
#[inline]
pub fn spinor2_norm(s: &Spinor2) -> f64 {
    (s[0].norm_sqr() + s[1].norm_sqr()).sqrt()
}
