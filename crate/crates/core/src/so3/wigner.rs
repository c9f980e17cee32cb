//! Wigner d and D matrices.
//!
//! Entries are generated per `(m, n)` column by the three-term recursion in
//! the degree, seeded at `l = max(|m|, |n|)` from the closed-form edge values
//! (evaluated in log space so no factorial is ever formed).

use std::f64::consts::PI;

use num_complex::Complex64;

use super::rotation::Rotation;
use crate::error::{Error, Result};

/// `ln(k!)` for `k = 0..len`.
pub(crate) fn ln_factorials(len: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(len.max(1));
    let mut acc = 0.0f64;
    out.push(0.0);
    for k in 1..len {
        acc += (k as f64).ln();
        out.push(acc);
    }
    out
}

struct HalfAngle {
    ln_cos: f64,
    ln_sin: f64,
}

impl HalfAngle {
    fn new(beta: f64) -> Self {
        let h = 0.5 * beta;
        Self {
            ln_cos: h.cos().max(0.0).ln(),
            ln_sin: h.sin().max(0.0).ln(),
        }
    }

    /// `sqrt(binom(2j, a)) cos(b/2)^a sin(b/2)^(2j-a)`
    fn edge(&self, j: i64, a: i64, lnf: &[f64]) -> f64 {
        let b = 2 * j - a;
        let mut e = 0.5 * (lnf[(2 * j) as usize] - lnf[a as usize] - lnf[b as usize]);
        if a > 0 {
            e += a as f64 * self.ln_cos;
        }
        if b > 0 {
            e += b as f64 * self.ln_sin;
        }
        e.exp()
    }
}

fn sign(p: i64) -> f64 {
    if p.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `d^j_{mn}(beta)` at the seed degree `j = max(|m|, |n|)`.
fn seed(m: i64, n: i64, half: &HalfAngle, lnf: &[f64]) -> f64 {
    let j = m.abs().max(n.abs());
    if m == j {
        sign(j - n) * half.edge(j, j + n, lnf)
    } else if m == -j {
        half.edge(j, j - n, lnf)
    } else if n == j {
        half.edge(j, j + m, lnf)
    } else {
        sign(j + m) * half.edge(j, j - m, lnf)
    }
}

/// Walks `d^l_{mn}(beta)` for `l = max(|m|,|n|) .. bandlimit`, calling
/// `sink(l, value)` for each degree.
fn column(
    m: i64,
    n: i64,
    bandlimit: usize,
    cos_beta: f64,
    half: &HalfAngle,
    lnf: &[f64],
    mut sink: impl FnMut(usize, f64),
) {
    let j = m.abs().max(n.abs());
    if j as usize >= bandlimit {
        return;
    }
    let mut prev = 0.0;
    let mut cur = seed(m, n, half, lnf);
    sink(j as usize, cur);
    let (m2, n2) = ((m * m) as f64, (n * n) as f64);
    let mn = (m * n) as f64;
    for l in j..(bandlimit as i64 - 1) {
        let next = if l == 0 {
            cos_beta
        } else {
            let lf = l as f64;
            let l1 = lf + 1.0;
            let a = (2.0 * lf + 1.0) * (lf * l1 * cos_beta - mn);
            let b = l1 * ((lf * lf - m2) * (lf * lf - n2)).sqrt();
            let den = lf * ((l1 * l1 - m2) * (l1 * l1 - n2)).sqrt();
            (a * cur - b * prev) / den
        };
        prev = cur;
        cur = next;
        sink((l + 1) as usize, cur);
    }
}

fn check_beta(beta: f64) -> Result<()> {
    if !beta.is_finite() || !(-1e-12..=PI + 1e-12).contains(&beta) {
        return Err(Error::InvalidArgument(format!("beta = {beta} outside [0, pi]")));
    }
    Ok(())
}

/// Real Wigner small-d matrix of one degree, rows and columns ordered
/// `m, n = -l..=l`.
#[derive(Debug, Clone, PartialEq)]
pub struct SmallD {
    degree: usize,
    data: Vec<f64>,
}

impl SmallD {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        2 * self.degree + 1
    }

    pub fn get(&self, m: i64, n: i64) -> f64 {
        let l = self.degree as i64;
        let d = self.dim();
        self.data[(m + l) as usize * d + (n + l) as usize]
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }
}

/// `d^l(beta)`.
pub fn small_d(l: usize, beta: f64) -> Result<SmallD> {
    check_beta(beta)?;
    let beta = beta.clamp(0.0, PI);
    let dim = 2 * l + 1;
    let li = l as i64;
    let mut data = vec![0.0; dim * dim];
    let half = HalfAngle::new(beta);
    let lnf = ln_factorials(2 * l + 2);
    let cb = beta.cos();
    for m in -li..=li {
        for n in -li..=li {
            column(m, n, l + 1, cb, &half, &lnf, |deg, v| {
                if deg == l {
                    data[(m + li) as usize * dim + (n + li) as usize] = v;
                }
            });
        }
    }
    Ok(SmallD { degree: l, data })
}

/// All `d^l_{mn}(beta)` with `l < bandlimit` and `|n| < azimuthal`.
///
/// Block `l` is stored row-major with `2l+1` rows (`m`) and
/// `2 min(l, azimuthal-1) + 1` columns (`n`).
#[derive(Debug, Clone)]
pub struct SmallDTable {
    bandlimit: usize,
    azimuthal: usize,
    blocks: Vec<Vec<f64>>,
}

impl SmallDTable {
    pub fn new(beta: f64, bandlimit: usize, azimuthal: usize) -> Result<Self> {
        check_beta(beta)?;
        if azimuthal == 0 {
            return Err(Error::InvalidArgument("azimuthal bandlimit must be >= 1".into()));
        }
        let beta = beta.clamp(0.0, PI);
        let half = HalfAngle::new(beta);
        let lnf = ln_factorials(2 * bandlimit + 2);
        let cb = beta.cos();
        let mut blocks: Vec<Vec<f64>> = (0..bandlimit)
            .map(|l| {
                let nl = l.min(azimuthal - 1);
                vec![0.0; (2 * l + 1) * (2 * nl + 1)]
            })
            .collect();
        let lmax = bandlimit as i64 - 1;
        let nmax = (azimuthal as i64 - 1).min(lmax);
        for m in -lmax..=lmax {
            for n in -nmax..=nmax {
                column(m, n, bandlimit, cb, &half, &lnf, |l, v| {
                    let li = l as i64;
                    let nl = li.min(azimuthal as i64 - 1);
                    let cols = (2 * nl + 1) as usize;
                    blocks[l][(m + li) as usize * cols + (n + nl) as usize] = v;
                });
            }
        }
        Ok(Self {
            bandlimit,
            azimuthal,
            blocks,
        })
    }

    pub fn bandlimit(&self) -> usize {
        self.bandlimit
    }

    pub fn azimuthal(&self) -> usize {
        self.azimuthal
    }

    /// Block for degree `l` and its column half-width.
    #[inline]
    pub fn block(&self, l: usize) -> (&[f64], usize) {
        (&self.blocks[l], l.min(self.azimuthal - 1))
    }

    #[inline]
    pub fn get(&self, l: usize, m: i64, n: i64) -> f64 {
        let (b, nl) = self.block(l);
        let cols = 2 * nl + 1;
        b[(m + l as i64) as usize * cols + (n + nl as i64) as usize]
    }
}

/// Complex Wigner D matrix of one degree, rows and columns `m, n = -l..=l`.
#[derive(Debug, Clone, PartialEq)]
pub struct WignerD {
    degree: usize,
    entries: Vec<Complex64>,
}

impl WignerD {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        2 * self.degree + 1
    }

    pub fn get(&self, m: i64, n: i64) -> Complex64 {
        let l = self.degree as i64;
        self.entries[(m + l) as usize * self.dim() + (n + l) as usize]
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[Complex64] {
        &self.entries
    }

    fn from_small(d: &[f64], l: usize, rot: &Rotation) -> Self {
        let li = l as i64;
        let dim = 2 * l + 1;
        let mut entries = Vec::with_capacity(dim * dim);
        for m in -li..=li {
            let pa = Complex64::from_polar(1.0, -(m as f64) * rot.alpha);
            for n in -li..=li {
                let pg = Complex64::from_polar(1.0, -(n as f64) * rot.gamma);
                let v = d[(m + li) as usize * dim + (n + li) as usize];
                entries.push(pa * pg * v);
            }
        }
        Self { degree: l, entries }
    }
}

/// `D^l_{mn}(alpha, beta, gamma) = e^{-i m alpha} d^l_{mn}(beta) e^{-i n gamma}`.
pub fn wigner_d(l: usize, rot: &Rotation) -> WignerD {
    let d = small_d(l, rot.beta).expect("Rotation keeps beta in [0, pi]");
    WignerD::from_small(&d.data, l, rot)
}

/// `D^l(rot)` for every `l < bandlimit`, sharing one recursion sweep.
pub fn wigner_d_all(bandlimit: usize, rot: &Rotation) -> Vec<WignerD> {
    if bandlimit == 0 {
        return Vec::new();
    }
    let table = SmallDTable::new(rot.beta, bandlimit, bandlimit).expect("Rotation keeps beta in [0, pi]");
    (0..bandlimit)
        .map(|l| WignerD::from_small(table.block(l).0, l, rot))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_zero_is_one() {
        for &b in &[0.0, 0.4, 2.0, PI] {
            let d = small_d(0, b).unwrap();
            assert_eq!(d.as_slice(), &[1.0]);
        }
    }

    #[test]
    fn identity_at_zero() {
        let d = small_d(5, 0.0).unwrap();
        for m in -5..=5 {
            for n in -5..=5 {
                let want = if m == n { 1.0 } else { 0.0 };
                assert!((d.get(m, n) - want).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn degree_one_closed_form() {
        let b = 0.83;
        let d = small_d(1, b).unwrap();
        let s = b.sin() / 2f64.sqrt();
        let c = b.cos();
        let want = [
            [(1.0 + c) / 2.0, s, (1.0 - c) / 2.0],
            [-s, c, s],
            [(1.0 - c) / 2.0, -s, (1.0 + c) / 2.0],
        ];
        for (i, row) in want.iter().enumerate() {
            for (j, w) in row.iter().enumerate() {
                let got = d.get(i as i64 - 1, j as i64 - 1);
                assert!((got - w).abs() < 1e-15, "({i},{j}) {got} vs {w}");
            }
        }
    }

    #[test]
    fn beta_pi_is_antidiagonal() {
        // d^l_{mn}(pi) = (-1)^{l-n} delta_{m,-n}
        let l = 7i64;
        let d = small_d(l as usize, PI).unwrap();
        for m in -l..=l {
            for n in -l..=l {
                let want = if m == -n { sign(l - n) } else { 0.0 };
                assert!((d.get(m, n) - want).abs() < 1e-13, "{m} {n}");
            }
        }
    }

    #[test]
    fn table_matches_single_degree() {
        let beta = 1.234;
        let t = SmallDTable::new(beta, 9, 3).unwrap();
        for l in 0..9usize {
            let d = small_d(l, beta).unwrap();
            let li = l as i64;
            let nl = li.min(2);
            for m in -li..=li {
                for n in -nl..=nl {
                    assert_eq!(t.get(l, m, n), d.get(m, n));
                }
            }
        }
    }

    #[test]
    fn rejects_out_of_range_beta() {
        assert!(small_d(2, -0.5).is_err());
        assert!(small_d(2, 4.0).is_err());
    }

    #[test]
    fn big_d_alpha_only() {
        let a = 0.77;
        let r = Rotation::new(a, 0.0, 0.0).unwrap();
        let d = wigner_d(1, &r);
        let want = [
            Complex64::from_polar(1.0, a),
            Complex64::new(1.0, 0.0),
            Complex64::from_polar(1.0, -a),
        ];
        for m in -1..=1i64 {
            for n in -1..=1i64 {
                let w = if m == n {
                    want[(m + 1) as usize]
                } else {
                    Complex64::new(0.0, 0.0)
                };
                assert!((d.get(m, n) - w).norm() < 1e-15);
            }
        }
    }
}
