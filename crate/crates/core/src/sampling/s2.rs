use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::signals::SphereHarmonic;

use super::grid::{S2Grid, SampledS2};
use super::legendre::LegendreTable;

#[inline]
fn wrap(m: i64, len: usize) -> usize {
    m.rem_euclid(len as i64) as usize
}

/// Analysis `f^l_m = <f, Y^l_m>` for every degree the grid resolves.
pub fn sht_forward(f: &SampledS2) -> SphereHarmonic<f64> {
    sht_forward_truncated(f, f.grid().bandlimit()).expect("grid bandlimit is always admissible")
}

/// Analysis restricted to degrees `< bandlimit`.
pub fn sht_forward_truncated(f: &SampledS2, bandlimit: usize) -> Result<SphereHarmonic<f64>> {
    let grid = f.grid();
    if bandlimit > grid.bandlimit() {
        return Err(Error::GridTooSmall {
            grid: grid.bandlimit(),
            signal: bandlimit,
        });
    }
    let np = grid.n_phi();
    let mut rows = f.values().to_vec();
    rows.par_chunks_mut(np).for_each(|row| grid.phi_plan.fwd.process(row));

    let mut out = SphereHarmonic::zeros(bandlimit);
    for (t, row) in rows.chunks_exact(np).enumerate() {
        let table = LegendreTable::new(bandlimit, grid.theta()[t]);
        let area = grid.area(t);
        for l in 0..bandlimit {
            let li = l as i64;
            for m in -li..=li {
                let v = out.coeff(l, m) + row[wrap(m, np)] * (area * table.signed(l, m));
                out.set_coeff(l, m, v);
            }
        }
    }
    Ok(out)
}

/// Synthesis `f(omega) = sum f^l_m Y^l_m(omega)` on `grid`, which may resolve
/// more degrees than `f` carries.
pub fn sht_inverse(f: &SphereHarmonic<f64>, grid: &Arc<S2Grid>) -> Result<SampledS2> {
    let bandlimit = f.bandlimit();
    if bandlimit > grid.bandlimit() {
        return Err(Error::GridTooSmall {
            grid: grid.bandlimit(),
            signal: bandlimit,
        });
    }
    let np = grid.n_phi();
    let mut values = vec![Complex64::new(0.0, 0.0); grid.sample_count()];
    values.par_chunks_mut(np).enumerate().for_each(|(t, row)| {
        let table = LegendreTable::new(bandlimit, grid.theta()[t]);
        for l in 0..bandlimit {
            let li = l as i64;
            for m in -li..=li {
                row[wrap(m, np)] += f.coeff(l, m) * table.signed(l, m);
            }
        }
        grid.phi_plan.inv.process(row);
    });
    SampledS2::new(grid.clone(), values)
}
