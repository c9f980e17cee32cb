use std::f64::consts::PI;

use num_complex::Complex64;

/// Orthonormalized associated Legendre functions
/// `lambda^l_m(theta) = N^l_m P^l_m(cos theta)` for `0 <= m <= l < bandlimit`,
/// Condon-Shortley phase included, so that `Y^l_m = lambda^l_m e^{i m phi}`.
///
/// Diagonal seeds are formed in log space (values below the f64 range flush
/// to zero), then each order is extended upward in `l` by the standard
/// three-term recursion.
#[derive(Debug, Clone)]
pub struct LegendreTable {
    bandlimit: usize,
    values: Vec<f64>,
}

#[inline]
fn tri(l: usize, m: usize) -> usize {
    l * (l + 1) / 2 + m
}

impl LegendreTable {
    pub fn new(bandlimit: usize, theta: f64) -> Self {
        let mut values = vec![0.0; bandlimit * (bandlimit + 1) / 2];
        let (s, c) = theta.sin_cos();
        let ln_sin = s.abs().ln();
        let mut ln_diag = -0.5 * (4.0 * PI).ln();
        for m in 0..bandlimit {
            if m > 0 {
                let mf = m as f64;
                ln_diag += 0.5 * ((2.0 * mf + 1.0) / (2.0 * mf)).ln();
            }
            let seed = if m == 0 {
                ln_diag.exp()
            } else {
                let mag = (ln_diag + m as f64 * ln_sin).exp();
                if m % 2 == 1 {
                    -mag
                } else {
                    mag
                }
            };
            values[tri(m, m)] = seed;
            if m + 1 >= bandlimit {
                continue;
            }
            let mut prev = seed;
            let mut cur = (2.0 * m as f64 + 3.0).sqrt() * c * seed;
            values[tri(m + 1, m)] = cur;
            let m2 = (m * m) as f64;
            for l in m + 2..bandlimit {
                let lf = l as f64;
                let a = ((4.0 * lf * lf - 1.0) / (lf * lf - m2)).sqrt();
                let b = (((lf - 1.0) * (lf - 1.0) - m2) / (4.0 * (lf - 1.0) * (lf - 1.0) - 1.0)).sqrt();
                let next = a * (c * cur - b * prev);
                values[tri(l, m)] = next;
                prev = cur;
                cur = next;
            }
        }
        Self { bandlimit, values }
    }

    pub fn bandlimit(&self) -> usize {
        self.bandlimit
    }

    /// `lambda^l_m` for `m >= 0`.
    #[inline]
    pub fn get(&self, l: usize, m: usize) -> f64 {
        self.values[tri(l, m)]
    }

    /// `lambda^l_m` for signed `m`, using `lambda^l_{-m} = (-1)^m lambda^l_m`.
    #[inline]
    pub fn signed(&self, l: usize, m: i64) -> f64 {
        let v = self.get(l, m.unsigned_abs() as usize);
        if m < 0 && m % 2 != 0 {
            -v
        } else {
            v
        }
    }
}

/// Single orthonormal spherical harmonic `Y^l_m(theta, phi)`.
pub fn spherical_harmonic(l: usize, m: i64, theta: f64, phi: f64) -> Complex64 {
    let t = LegendreTable::new(l + 1, theta);
    Complex64::from_polar(t.signed(l, m), m as f64 * phi)
}
