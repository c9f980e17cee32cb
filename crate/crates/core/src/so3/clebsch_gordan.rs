//! Clebsch-Gordan coefficients `C^{l1 l2 l}_{m1 m2 m} = <l1 m1; l2 m2 | l m>`
//! in the Condon-Shortley convention.
//!
//! Rows with `m >= 0` are solved independently from the `J^2` eigenvalue
//! recursion in `m1`; negative `m` follow from
//! `C_{-m1,-m2,-m} = (-1)^{l1+l2-l} C_{m1,m2,m}`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};

pub fn satisfies_triangle(l1: usize, l2: usize, l: usize) -> bool {
    l1.abs_diff(l2) <= l && l <= l1 + l2
}

pub(crate) fn check_triangle(l1: usize, l2: usize, l: usize) -> Result<()> {
    if satisfies_triangle(l1, l2, l) {
        Ok(())
    } else {
        Err(Error::Triangle { l1, l2, l })
    }
}

/// Nonzero coefficients of one `(l1, l2, l)` coupling, stored per output
/// order `m` over the admissible `m1` range (with `m2 = m - m1`).
#[derive(Debug, Clone, PartialEq)]
pub struct CgBlock {
    l1: usize,
    l2: usize,
    l: usize,
    rows: Vec<CgRow>,
}

#[derive(Debug, Clone, PartialEq)]
struct CgRow {
    m1_start: i64,
    values: Vec<f64>,
}

fn m1_range(l1: i64, l2: i64, m: i64) -> (i64, i64) {
    ((-l1).max(m - l2), l1.min(m + l2))
}

/// `sqrt(j(j+1) - m(m+1))`, the raising-operator matrix element.
#[inline]
fn raise(j: i64, m: i64) -> f64 {
    (((j - m) * (j + m + 1)) as f64).sqrt()
}

/// One row `c(m1) = C^{l1 l2 l}_{m1, m-m1, m}` for `m1` in `lo..=hi`.
///
/// The row is the null vector of the symmetric tridiagonal matrix that `J^2`
/// induces on `{|m1, m - m1>}`; it is extracted with a twisted
/// factorization, which keeps every entry accurate relative to its own size.
/// The entry at `m1 = hi` is positive in the Condon-Shortley convention.
fn row(j1: i64, j2: i64, j: i64, m: i64) -> (i64, Vec<f64>) {
    let (lo, hi) = m1_range(j1, j2, m);
    let n = (hi - lo + 1) as usize;
    let base = (j1 * (j1 + 1) + j2 * (j2 + 1) - j * (j + 1)) as f64;
    let diag: Vec<f64> = (lo..=hi).map(|k| base + (2 * k * (m - k)) as f64).collect();
    // off[i] couples entries i and i + 1
    let off: Vec<f64> = (lo..hi).map(|k| raise(j1, k) * raise(j2, m - k - 1)).collect();
    if n == 1 {
        return (lo, vec![1.0]);
    }
    let tiny = f64::EPSILON * diag.iter().chain(&off).fold(1.0f64, |a, v| a.max(v.abs()));
    let guard = |d: f64| if d.abs() < tiny { tiny.copysign(d) } else { d };

    let mut fwd = vec![0.0; n];
    fwd[0] = guard(diag[0]);
    for i in 1..n {
        fwd[i] = guard(diag[i] - off[i - 1] * off[i - 1] / fwd[i - 1]);
    }
    let mut bwd = vec![0.0; n];
    bwd[n - 1] = guard(diag[n - 1]);
    for i in (0..n - 1).rev() {
        bwd[i] = guard(diag[i] - off[i] * off[i] / bwd[i + 1]);
    }
    let twist = (0..n)
        .min_by(|&a, &b| {
            let ga = (fwd[a] + bwd[a] - diag[a]).abs();
            let gb = (fwd[b] + bwd[b] - diag[b]).abs();
            ga.total_cmp(&gb)
        })
        .expect("row is non-empty");

    let mut c = vec![0.0; n];
    c[twist] = 1.0;
    for i in (0..twist).rev() {
        c[i] = -off[i] / fwd[i] * c[i + 1];
    }
    for i in twist + 1..n {
        c[i] = -off[i - 1] / bwd[i] * c[i - 1];
    }
    let norm = c.iter().map(|v| v * v).sum::<f64>().sqrt();
    let s = if c[n - 1] < 0.0 { -1.0 } else { 1.0 };
    c.iter_mut().for_each(|v| *v *= s / norm);
    (lo, c)
}

impl CgBlock {
    fn compute(l1: usize, l2: usize, l: usize) -> Self {
        let (j1, j2, j) = (l1 as i64, l2 as i64, l as i64);
        let parity = if (j1 + j2 - j) % 2 == 0 { 1.0 } else { -1.0 };

        let mut upper: Vec<CgRow> = (0..=j)
            .map(|m| {
                let (m1_start, values) = row(j1, j2, j, m);
                CgRow { m1_start, values }
            })
            .collect();
        // The m = 0 row is its own mirror image; impose that exactly.
        let zero = &mut upper[0];
        let mirrored: Vec<f64> = zero.values.iter().rev().map(|v| parity * v).collect();
        for (v, w) in zero.values.iter_mut().zip(mirrored) {
            *v = 0.5 * (*v + w);
        }

        let mut rows = Vec::with_capacity((2 * j + 1) as usize);
        for m in -j..=j {
            if m >= 0 {
                rows.push(upper[m as usize].clone());
            } else {
                let src = &upper[(-m) as usize];
                // C(m1, m2, m) = parity * C(-m1, -m2, -m); reverse the m1 axis.
                let len = src.values.len() as i64;
                let start = -(src.m1_start + len - 1);
                let values = src.values.iter().rev().map(|v| parity * v).collect();
                rows.push(CgRow {
                    m1_start: start,
                    values,
                });
            }
        }
        upper.clear();
        Self { l1, l2, l, rows }
    }

    pub fn degrees(&self) -> (usize, usize, usize) {
        (self.l1, self.l2, self.l)
    }

    /// `C^{l1 l2 l}_{m1 m2 m}`; zero outside the support.
    pub fn get(&self, m1: i64, m2: i64, m: i64) -> f64 {
        let (l1, l2, l) = (self.l1 as i64, self.l2 as i64, self.l as i64);
        if m1 + m2 != m || m1.abs() > l1 || m2.abs() > l2 || m.abs() > l {
            return 0.0;
        }
        let row = &self.rows[(m + l) as usize];
        let idx = m1 - row.m1_start;
        if idx < 0 || idx as usize >= row.values.len() {
            0.0
        } else {
            row.values[idx as usize]
        }
    }

    /// First `m1` and coefficients for output order `m` (`m2 = m - m1`).
    #[inline]
    pub fn row(&self, m: i64) -> (i64, &[f64]) {
        let r = &self.rows[(m + self.l as i64) as usize];
        (r.m1_start, &r.values)
    }

    /// Number of stored (structurally nonzero) coefficients.
    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.values.len()).sum()
    }
}

type CgCache = RwLock<HashMap<(usize, usize, usize), Arc<CgBlock>>>;

fn cache() -> &'static CgCache {
    static CACHE: OnceLock<CgCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Memoized Clebsch-Gordan block. Rejects degree triples that violate the
/// triangle condition.
pub fn clebsch_gordan(l1: usize, l2: usize, l: usize) -> Result<Arc<CgBlock>> {
    check_triangle(l1, l2, l)?;
    let key = (l1, l2, l);
    if let Some(b) = cache().read().expect("cg cache poisoned").get(&key) {
        return Ok(Arc::clone(b));
    }
    let block = Arc::new(CgBlock::compute(l1, l2, l));
    let mut w = cache().write().expect("cg cache poisoned");
    Ok(Arc::clone(w.entry(key).or_insert(block)))
}
