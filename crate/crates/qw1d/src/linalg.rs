//! Complex 2x2 matrices and 2-vectors.
//!
//! Everything outside the finite-lattice oracle runs on these; the crate
//! deliberately avoids a general matrix library for the 2x2 algebra.

use num_complex::Complex64;
use std::ops::{Add, Index, Mul, Neg, Sub};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Vec2(pub C64, pub C64);

impl Vec2 {
    pub const ZERO: Vec2 = Vec2(ZERO, ZERO);

    pub fn norm(&self) -> f64 {
        (self.0.norm_sqr() + self.1.norm_sqr()).sqrt()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.norm_sqr() + self.1.norm_sqr()
    }

    pub fn norm_inf(&self) -> f64 {
        self.0.norm().max(self.1.norm())
    }

    /// Outer product u v^T (no conjugation).
    pub fn outer(&self, v: &Vec2) -> Mat2 {
        Mat2([[self.0 * v.0, self.0 * v.1], [self.1 * v.0, self.1 * v.1]])
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2(self.0 + rhs.0, self.1 + rhs.1)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2(self.0 - rhs.0, self.1 - rhs.1)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2(-self.0, -self.1)
    }
}

impl Mul<Vec2> for C64 {
    type Output = Vec2;
    fn mul(self, v: Vec2) -> Vec2 {
        Vec2(self * v.0, self * v.1)
    }
}

/// Row-major 2x2 complex matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat2(pub [[C64; 2]; 2]);

impl Mat2 {
    pub const ZERO: Mat2 = Mat2([[ZERO, ZERO], [ZERO, ZERO]]);
    pub const IDENTITY: Mat2 = Mat2([[ONE, ZERO], [ZERO, ONE]]);

    pub fn diag(a: C64, d: C64) -> Mat2 {
        Mat2([[a, ZERO], [ZERO, d]])
    }

    pub fn from_columns(c0: Vec2, c1: Vec2) -> Mat2 {
        Mat2([[c0.0, c1.0], [c0.1, c1.1]])
    }

    pub fn column(&self, j: usize) -> Vec2 {
        Vec2(self.0[0][j], self.0[1][j])
    }

    pub fn det(&self) -> C64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn trace(&self) -> C64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn transpose(&self) -> Mat2 {
        Mat2([[self.0[0][0], self.0[1][0]], [self.0[0][1], self.0[1][1]]])
    }

    pub fn adjoint(&self) -> Mat2 {
        Mat2([
            [self.0[0][0].conj(), self.0[1][0].conj()],
            [self.0[0][1].conj(), self.0[1][1].conj()],
        ])
    }

    /// Inverse via the adjugate; caller is responsible for det != 0.
    pub fn inverse(&self) -> Mat2 {
        let d = self.det();
        Mat2([
            [self.0[1][1] / d, -self.0[0][1] / d],
            [-self.0[1][0] / d, self.0[0][0] / d],
        ])
    }

    /// Exact inverse for matrices with det = 1.
    pub fn unimodular_inverse(&self) -> Mat2 {
        Mat2([
            [self.0[1][1], -self.0[0][1]],
            [-self.0[1][0], self.0[0][0]],
        ])
    }

    /// Operator norm induced by the sup norm on C^2 (max row abs-sum).
    pub fn norm_inf(&self) -> f64 {
        let r0 = self.0[0][0].norm() + self.0[0][1].norm();
        let r1 = self.0[1][0].norm() + self.0[1][1].norm();
        r0.max(r1)
    }

    pub fn norm_frobenius(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Max entrywise absolute value.
    pub fn norm_max(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}

impl Index<(usize, usize)> for Mat2 {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.0[i][j]
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, rhs: Mat2) -> Mat2 {
        let mut out = Mat2::ZERO;
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] = self.0[i][j] + rhs.0[i][j];
            }
        }
        out
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, rhs: Mat2) -> Mat2 {
        let mut out = Mat2::ZERO;
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] = self.0[i][j] - rhs.0[i][j];
            }
        }
        out
    }
}

impl Mul<Mat2> for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        let mut out = Mat2::ZERO;
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] = self.0[i][0] * rhs.0[0][j] + self.0[i][1] * rhs.0[1][j];
            }
        }
        out
    }
}

impl Mul<Vec2> for Mat2 {
    type Output = Vec2;
    fn mul(self, v: Vec2) -> Vec2 {
        Vec2(
            self.0[0][0] * v.0 + self.0[0][1] * v.1,
            self.0[1][0] * v.0 + self.0[1][1] * v.1,
        )
    }
}

impl Mul<Mat2> for C64 {
    type Output = Mat2;
    fn mul(self, m: Mat2) -> Mat2 {
        let mut out = Mat2::ZERO;
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] = self * m.0[i][j];
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_roundtrip() {
        let m = Mat2([
            [C64::new(1.0, 2.0), C64::new(0.3, -0.1)],
            [C64::new(-0.4, 0.2), C64::new(0.9, 0.5)],
        ]);
        let p = m * m.inverse();
        assert!((p - Mat2::IDENTITY).norm_max() < 1e-14);
    }

    #[test]
    fn unimodular_inverse_matches_general() {
        let a = C64::new(0.8, 0.1);
        let b = C64::new(0.2, -0.3);
        // pick c, d with ad - bc = 1
        let c = C64::new(0.1, 0.4);
        let d = (ONE + b * c) / a;
        let m = Mat2([[a, b], [c, d]]);
        assert!((m.det() - ONE).norm() < 1e-14);
        assert!((m.unimodular_inverse() - m.inverse()).norm_max() < 1e-13);
    }
}
