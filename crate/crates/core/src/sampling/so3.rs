use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::signals::RotationHarmonic;
use crate::so3::SmallDTable;

use super::grid::{Plan, SO3Grid, SampledSO3};

#[inline]
fn wrap(m: i64, len: usize) -> usize {
    m.rem_euclid(len as i64) as usize
}

/// 2-D transform of one `alpha x gamma` block, stored with `gamma` fastest.
fn fft_2d(
    block: &mut [Complex64],
    scratch: &mut [Complex64],
    na: usize,
    nc: usize,
    inverse: bool,
    pa: &Plan,
    pc: &Plan,
) {
    let (fa, fc) = if inverse {
        (&pa.inv, &pc.inv)
    } else {
        (&pa.fwd, &pc.fwd)
    };
    fc.process(block);
    for a in 0..na {
        for c in 0..nc {
            scratch[c * na + a] = block[a * nc + c];
        }
    }
    fa.process(scratch);
    for c in 0..nc {
        for a in 0..na {
            block[a * nc + c] = scratch[c * na + a];
        }
    }
}

/// Analysis `g^l_{mn} = <g, D^{l*}_{mn}>` for every degree and order the grid
/// resolves.
pub fn so3_forward(g: &SampledSO3) -> RotationHarmonic<f64> {
    let grid = g.grid();
    so3_forward_truncated(g, grid.bandlimit(), grid.azimuthal()).expect("grid bandlimits are admissible")
}

/// Analysis restricted to `l < bandlimit`, `|n| < azimuthal`.
pub fn so3_forward_truncated(g: &SampledSO3, bandlimit: usize, azimuthal: usize) -> Result<RotationHarmonic<f64>> {
    so3_forward_counted(g, bandlimit, azimuthal).map(|(f, _)| f)
}

/// As [`so3_forward_truncated`], also returning the number of Wigner
/// multiply-accumulates executed.
pub fn so3_forward_counted(g: &SampledSO3, bandlimit: usize, azimuthal: usize) -> Result<(RotationHarmonic<f64>, u64)> {
    let grid = g.grid();
    if bandlimit > grid.bandlimit() || azimuthal > grid.azimuthal() || azimuthal == 0 {
        return Err(Error::GridTooSmall {
            grid: grid.bandlimit(),
            signal: bandlimit,
        });
    }
    let (na, nc) = (grid.n_alpha(), grid.n_gamma());
    let block_len = na * nc;
    let mut out = RotationHarmonic::zeros(bandlimit, azimuthal);
    let (tau, mut degrees) = out.clone().into_signal().into_degrees();
    let mut block = vec![Complex64::new(0.0, 0.0); block_len];
    let mut scratch = block.clone();
    let mut ops = 0u64;

    for (b, samples) in g.values().chunks_exact(block_len).enumerate() {
        block.copy_from_slice(samples);
        fft_2d(
            &mut block,
            &mut scratch,
            na,
            nc,
            false,
            &grid.alpha_plan,
            &grid.gamma_plan,
        );
        let table = SmallDTable::new(grid.beta()[b], bandlimit, azimuthal)?;
        let vol = grid.volume(b);
        let block = &block;
        let table = &table;
        ops += degrees
            .par_iter_mut()
            .enumerate()
            .map(|(l, dst)| {
                let (d, nl) = table.block(l);
                let (li, nli) = (l as i64, nl as i64);
                let (dim, width) = (2 * l + 1, 2 * nl + 1);
                for n in -nli..=nli {
                    let col = &mut dst[(n + nli) as usize * dim..][..dim];
                    let cn = wrap(n, nc);
                    for m in -li..=li {
                        let w = d[(m + li) as usize * width + (n + nli) as usize] * vol;
                        col[(m + li) as usize] += block[wrap(m, na) * nc + cn] * w;
                    }
                }
                (dim * width) as u64
            })
            .sum::<u64>();
    }
    let signal = crate::signals::GeneralizedSignal::from_degrees(tau, std::mem::take(&mut degrees))?;
    out = RotationHarmonic::from_signal(signal, azimuthal)?;
    Ok((out, ops))
}

/// Synthesis `g(rho) = sum (2l+1)/(8pi^2) g^l_{mn} D^{l*}_{mn}(rho)` on
/// `grid`, which may resolve more than `g` carries.
pub fn so3_inverse(g: &RotationHarmonic<f64>, grid: &Arc<SO3Grid>) -> Result<SampledSO3> {
    so3_inverse_counted(g, grid).map(|(s, _)| s)
}

pub fn so3_inverse_counted(g: &RotationHarmonic<f64>, grid: &Arc<SO3Grid>) -> Result<(SampledSO3, u64)> {
    let (bandlimit, azimuthal) = (g.bandlimit(), g.azimuthal());
    if bandlimit > grid.bandlimit() {
        return Err(Error::GridTooSmall {
            grid: grid.bandlimit(),
            signal: bandlimit,
        });
    }
    if azimuthal > grid.azimuthal() {
        return Err(Error::GridTooSmall {
            grid: grid.azimuthal(),
            signal: azimuthal,
        });
    }
    let (na, nc) = (grid.n_alpha(), grid.n_gamma());
    let block_len = na * nc;
    let mut values = vec![Complex64::new(0.0, 0.0); grid.sample_count()];
    let ops = values
        .par_chunks_mut(block_len)
        .enumerate()
        .map(|(b, block)| {
            let table = SmallDTable::new(grid.beta()[b], bandlimit, azimuthal).expect("grid nodes lie in [0, pi]");
            let mut ops = 0u64;
            for l in 0..bandlimit {
                let (d, nl) = table.block(l);
                let (li, nli) = (l as i64, nl as i64);
                let width = 2 * nl + 1;
                let scale = (2 * l + 1) as f64 / (8.0 * PI * PI);
                for n in -nli..=nli {
                    let cn = wrap(n, nc);
                    for m in -li..=li {
                        let w = d[(m + li) as usize * width + (n + nli) as usize] * scale;
                        block[wrap(m, na) * nc + cn] += g.coeff(l, m, n) * w;
                    }
                }
                ops += ((2 * l + 1) * width) as u64;
            }
            let mut scratch = vec![Complex64::new(0.0, 0.0); block_len];
            fft_2d(block, &mut scratch, na, nc, true, &grid.alpha_plan, &grid.gamma_plan);
            ops
        })
        .sum();
    Ok((SampledSO3::new(grid.clone(), values)?, ops))
}
