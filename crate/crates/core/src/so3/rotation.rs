use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Matrix3 = [[f64; 3]; 3];

/// A rotation in zyz Euler angles, `R = Rz(alpha) Ry(beta) Rz(gamma)`.
///
/// `alpha` and `gamma` live in `[0, 2pi)`, `beta` in `[0, pi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rotation {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

fn wrap_angle(x: f64) -> f64 {
    let w = x.rem_euclid(TAU);
    if w >= TAU {
        0.0
    } else {
        w
    }
}

impl Rotation {
    /// Validates `beta` and wraps `alpha`, `gamma` into `[0, 2pi)`.
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        if !(alpha.is_finite() && beta.is_finite() && gamma.is_finite()) {
            return Err(Error::InvalidArgument("non-finite Euler angle".into()));
        }
        if !(0.0..=PI).contains(&beta) {
            return Err(Error::InvalidArgument(format!("beta = {beta} outside [0, pi]")));
        }
        Ok(Self {
            alpha: wrap_angle(alpha),
            beta,
            gamma: wrap_angle(gamma),
        })
    }

    pub const fn identity() -> Self {
        Self {
            alpha: 0.0,
            beta: 0.0,
            gamma: 0.0,
        }
    }

    pub fn matrix(&self) -> Matrix3 {
        let (sa, ca) = self.alpha.sin_cos();
        let (sb, cb) = self.beta.sin_cos();
        let (sg, cg) = self.gamma.sin_cos();
        [
            [ca * cb * cg - sa * sg, -ca * cb * sg - sa * cg, ca * sb],
            [sa * cb * cg + ca * sg, -sa * cb * sg + ca * cg, sa * sb],
            [-sb * cg, sb * sg, cb],
        ]
    }

    /// Recovers zyz angles from a proper rotation matrix. At the poles of
    /// `beta` the split between `alpha` and `gamma` is fixed by `gamma = 0`.
    pub fn from_matrix(r: &Matrix3) -> Self {
        let cb = r[2][2].clamp(-1.0, 1.0);
        let sb = (r[0][2] * r[0][2] + r[1][2] * r[1][2]).sqrt();
        if sb > 1e-12 {
            let beta = sb.atan2(cb);
            let alpha = r[1][2].atan2(r[0][2]);
            let gamma = r[2][1].atan2(-r[2][0]);
            Self {
                alpha: wrap_angle(alpha),
                beta,
                gamma: wrap_angle(gamma),
            }
        } else if cb > 0.0 {
            Self {
                alpha: wrap_angle(r[1][0].atan2(r[0][0])),
                beta: 0.0,
                gamma: 0.0,
            }
        } else {
            Self {
                alpha: wrap_angle((-r[0][1]).atan2(r[1][1])),
                beta: PI,
                gamma: 0.0,
            }
        }
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Rotation) -> Rotation {
        Rotation::from_matrix(&matmul(&self.matrix(), &other.matrix()))
    }

    pub fn inverse(&self) -> Rotation {
        let m = self.matrix();
        let mut t = [[0.0; 3]; 3];
        for (i, row) in m.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                t[j][i] = *v;
            }
        }
        Rotation::from_matrix(&t)
    }

    pub fn apply(&self, v: [f64; 3]) -> [f64; 3] {
        let m = self.matrix();
        [
            m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
            m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
            m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2],
        ]
    }
}

impl Default for Rotation {
    fn default() -> Self {
        Self::identity()
    }
}

pub fn matmul(a: &Matrix3, b: &Matrix3) -> Matrix3 {
    let mut c = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            c[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    c
}
