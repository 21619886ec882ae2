//! `SL3` Eisenstein series for the minimal parabolic: coordinates, coset sums,
//! constant terms, functional equations and cusp regions.

mod constant;
mod flags;
mod region;

#[allow(unused_imports)]
use num_traits::Float;

use crate::eis2::UpperHalfPoint;
use crate::{Error, Result};

pub use constant::{
    constant_term_numeric, constant_term_p0_formula, constant_term_p0_langlands, constant_term_pi_formula,
    constant_term_pi_langlands, fe_adjudicate, p0_formula_terms, pi_formula_terms, pi_langlands_terms, substitutions,
    unipotent_nodes, xi_product, FeEntry, FeReport, Parabolic,
};
pub use flags::{for_each_flag, sl3_completed, sl3_eisenstein_direct, FlagTable, SeriesResult};
pub use region::{cusp_indicators, region_membership, CuspIndicators, Region};

pub type Matrix3 = [[f64; 3]; 3];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaximalParabolic {
    P1,
    P2,
}

/// `Y = diag(y1, y2, 1/(y1 y2)) * [[1, x1, x2], [0, 1, x3], [0, 0, 1]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SL3Point {
    pub y1: f64,
    pub y2: f64,
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

/// Coordinates adapted to a maximal parabolic:
/// `P1: [[u^{1/2}, v u^{-1/2}, 0], [0, u^{-1/2}, 0], [0, 0, 1]] diag(a, a, a^-2) [[1, 0, x], [0, 1, t], [0, 0, 1]]`,
/// `P2: [[1, 0, 0], [0, u^{1/2}, v u^{-1/2}], [0, 0, u^{-1/2}]] diag(a^-2, a, a) [[1, t, x], [0, 1, 0], [0, 0, 1]]`,
/// with `y = a^6` and `z = v + iu`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LanglandsCoords {
    pub parabolic: MaximalParabolic,
    pub y: f64,
    pub z: UpperHalfPoint,
    pub x: f64,
    pub t: f64,
}

impl SL3Point {
    pub fn new(y1: f64, y2: f64, x1: f64, x2: f64, x3: f64) -> Result<Self> {
        if !(y1 > 0.0 && y2 > 0.0) || ![y1, y2, x1, x2, x3].iter().all(|v| v.is_finite()) {
            return Err(Error::Domain("SL3 point needs finite coordinates and y1, y2 > 0".into()));
        }
        Ok(Self { y1, y2, x1, x2, x3 })
    }

    pub fn identity() -> Self {
        Self { y1: 1.0, y2: 1.0, x1: 0.0, x2: 0.0, x3: 0.0 }
    }

    pub fn to_matrix(&self) -> Matrix3 {
        let y3 = 1.0 / (self.y1 * self.y2);
        [[self.y1, self.y1 * self.x1, self.y1 * self.x2], [0.0, self.y2, self.y2 * self.x3], [0.0, 0.0, y3]]
    }

    /// Representative of `g K`: the upper-triangular factor `R` of `g = R k`,
    /// read off from `g g^T = R R^T`.
    pub fn from_matrix(g: &Matrix3) -> Result<Self> {
        let s = mat_mul(g, &transpose(g));
        let r33 = s[2][2].sqrt();
        let r23 = s[1][2] / r33;
        let r13 = s[0][2] / r33;
        let r22 = (s[1][1] - r23 * r23).sqrt();
        let r12 = (s[0][1] - r13 * r23) / r22;
        let r11 = (s[0][0] - r12 * r12 - r13 * r13).sqrt();
        let det = r11 * r22 * r33;
        if !(det > 0.0) || !det.is_finite() {
            return Err(Error::Domain("matrix is singular".into()));
        }
        // normalize to determinant one
        let c = det.cbrt();
        Self::new(r11 / c, r22 / c, r12 / r11, r13 / r11, r23 / r22)
    }

    /// The point `gamma Y`.
    pub fn act(&self, gamma: &[[i64; 3]; 3]) -> Result<Self> {
        Self::from_matrix(&mat_mul(&to_f64(gamma), &self.to_matrix()))
    }

    /// Left translation `n Y` by the unipotent `[[1, a, b], [0, 1, c], [0, 0, 1]]`.
    pub fn translate(&self, a: f64, b: f64, c: f64) -> Self {
        // n diag(d) N = diag(d) (diag(d)^-1 n diag(d)) N
        let (d1, d2, d3) = (self.y1, self.y2, 1.0 / (self.y1 * self.y2));
        let (a, b, c) = (a * d2 / d1, b * d3 / d1, c * d3 / d2);
        // [[1, a, b], [0, 1, c], [0, 0, 1]] * [[1, x1, x2], [0, 1, x3], [0, 0, 1]]
        Self { y1: self.y1, y2: self.y2, x1: self.x1 + a, x2: self.x2 + a * self.x3 + b, x3: self.x3 + c }
    }

    pub fn coords(&self, parabolic: MaximalParabolic) -> LanglandsCoords {
        match parabolic {
            MaximalParabolic::P1 => {
                let u = self.y1 / self.y2;
                LanglandsCoords {
                    parabolic,
                    y: (self.y1 * self.y2).powi(3),
                    z: UpperHalfPoint { x: self.x1 * u, y: u },
                    x: self.x2 - self.x1 * self.x3,
                    t: self.x3,
                }
            }
            MaximalParabolic::P2 => {
                let u = self.y1 * self.y2 * self.y2;
                LanglandsCoords {
                    parabolic,
                    y: self.y1.powi(-3),
                    z: UpperHalfPoint { x: self.x3 * u, y: u },
                    x: self.x2,
                    t: self.x1,
                }
            }
        }
    }
}

impl LanglandsCoords {
    /// Product of the three factors.
    pub fn recompose(&self) -> Matrix3 {
        let (u, v) = (self.z.y, self.z.x);
        let a = self.y.powf(1.0 / 6.0);
        let su = u.sqrt();
        match self.parabolic {
            MaximalParabolic::P1 => {
                let m = [[su, v / su, 0.0], [0.0, 1.0 / su, 0.0], [0.0, 0.0, 1.0]];
                let d = [[a, 0.0, 0.0], [0.0, a, 0.0], [0.0, 0.0, 1.0 / (a * a)]];
                let n = [[1.0, 0.0, self.x], [0.0, 1.0, self.t], [0.0, 0.0, 1.0]];
                mat_mul(&mat_mul(&m, &d), &n)
            }
            MaximalParabolic::P2 => {
                let m = [[1.0, 0.0, 0.0], [0.0, su, v / su], [0.0, 0.0, 1.0 / su]];
                let d = [[1.0 / (a * a), 0.0, 0.0], [0.0, a, 0.0], [0.0, 0.0, a]];
                let n = [[1.0, self.t, self.x], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
                mat_mul(&mat_mul(&m, &d), &n)
            }
        }
    }
}

pub(crate) fn mat_mul(a: &Matrix3, b: &Matrix3) -> Matrix3 {
    let mut c = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            c[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    c
}

pub(crate) fn transpose(a: &Matrix3) -> Matrix3 {
    let mut t = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            t[i][j] = a[j][i];
        }
    }
    t
}

pub(crate) fn to_f64(g: &[[i64; 3]; 3]) -> Matrix3 {
    let mut m = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] = g[i][j] as f64;
        }
    }
    m
}

/// Inverse transpose of a matrix of determinant one (its cofactor matrix).
pub(crate) fn inverse_transpose(g: &Matrix3) -> Matrix3 {
    let mut c = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let (i1, i2) = ((i + 1) % 3, (i + 2) % 3);
            let (j1, j2) = ((j + 1) % 3, (j + 2) % 3);
            c[i][j] = g[i1][j1] * g[i2][j2] - g[i1][j2] * g[i2][j1];
        }
    }
    let det: f64 = (0..3).map(|j| g[0][j] * c[0][j]).sum();
    for row in c.iter_mut() {
        for x in row.iter_mut() {
            *x /= det;
        }
    }
    c
}
