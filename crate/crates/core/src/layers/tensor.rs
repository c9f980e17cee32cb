//! Clebsch-Gordan tensor-product activations.

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::mixing::MixingSet;
use crate::scalar::Real;
use crate::signals::{ChannelStack, GeneralizedSignal, SignalType};
use crate::so3::clebsch_gordan;

/// Output type `tau_g^l = sum_{(l1,l2) in P^l} tau^{l1} tau^{l2}`.
pub fn tensor_output_type(tau: &SignalType, mixing: &MixingSet) -> SignalType {
    SignalType::new(
        (0..mixing.output_bandlimit())
            .map(|l| mixing.degree(l).iter().map(|&(a, b)| tau.get(a) * tau.get(b)).sum())
            .collect(),
    )
}

fn check_input(f: &GeneralizedSignal<impl Real>, mixing: &MixingSet) -> Result<()> {
    if f.bandlimit() != mixing.input_bandlimit() {
        return Err(Error::BandlimitMismatch {
            expected: mixing.input_bandlimit(),
            found: f.bandlimit(),
        });
    }
    Ok(())
}

/// One output degree: fragments ordered by (pair index, t1, t2).
fn degree_output<T: Real>(
    f: &GeneralizedSignal<T>,
    l: usize,
    pairs: &[(usize, usize)],
) -> Result<(Vec<Complex<T>>, u64)> {
    let dim = 2 * l + 1;
    let li = l as i64;
    let count: usize = pairs
        .iter()
        .map(|&(a, b)| f.fragment_count(a) * f.fragment_count(b))
        .sum();
    let mut out = vec![Complex::new(T::zero(), T::zero()); dim * count];
    let mut terms = 0u64;
    let mut slot = 0;
    for &(l1, l2) in pairs {
        let cg = clebsch_gordan(l1, l2, l).map_err(|_| Error::InvalidPair {
            l1,
            l2,
            l,
            reason: "triangle condition violated".into(),
        })?;
        let rows: Vec<(i64, Vec<T>)> = (-li..=li)
            .map(|m| {
                let (start, vals) = cg.row(m);
                (start, vals.iter().map(|&c| T::of(c)).collect())
            })
            .collect();
        let nnz = cg.nnz() as u64;
        let (o1, o2) = (l1 as i64, l2 as i64);
        for t1 in 0..f.fragment_count(l1) {
            let a = f.fragment(l1, t1);
            for t2 in 0..f.fragment_count(l2) {
                let b = f.fragment(l2, t2);
                let dst = &mut out[slot * dim..(slot + 1) * dim];
                for (mi, (start, vals)) in rows.iter().enumerate() {
                    let m = mi as i64 - li;
                    let mut acc = Complex::new(T::zero(), T::zero());
                    for (k, &c) in vals.iter().enumerate() {
                        let m1 = start + k as i64;
                        let m2 = m - m1;
                        acc += a[(m1 + o1) as usize] * b[(m2 + o2) as usize] * c;
                    }
                    dst[mi] = acc;
                }
                terms += nnz;
                slot += 1;
            }
        }
    }
    Ok((out, terms))
}

/// Tensor-product activation `N_x(f)` over the mixing set `P`.
pub fn tensor_activation<T: Real>(f: &GeneralizedSignal<T>, mixing: &MixingSet) -> Result<GeneralizedSignal<T>> {
    tensor_activation_counted(f, mixing).map(|(g, _)| g)
}

/// As [`tensor_activation`], also returning the number of Clebsch-Gordan
/// terms evaluated.
pub fn tensor_activation_counted<T: Real>(
    f: &GeneralizedSignal<T>,
    mixing: &MixingSet,
) -> Result<(GeneralizedSignal<T>, u64)> {
    check_input(f, mixing)?;
    let parts: Vec<(Vec<Complex<T>>, u64)> = (0..mixing.output_bandlimit())
        .into_par_iter()
        .map(|l| degree_output(f, l, mixing.degree(l)))
        .collect::<Result<_>>()?;
    let terms = parts.iter().map(|p| p.1).sum();
    let degrees = parts.into_iter().map(|p| p.0).collect();
    let out = GeneralizedSignal::from_degrees(tensor_output_type(f.signal_type(), mixing), degrees)?;
    Ok((out, terms))
}

/// Applies the tensor-product activation to each channel separately.
pub fn channelwise_tensor_activation<T: Real>(s: &ChannelStack<T>, mixing: &MixingSet) -> Result<ChannelStack<T>> {
    channelwise_tensor_activation_counted(s, mixing).map(|(g, _)| g)
}

pub fn channelwise_tensor_activation_counted<T: Real>(
    s: &ChannelStack<T>,
    mixing: &MixingSet,
) -> Result<(ChannelStack<T>, u64)> {
    let mut terms = 0;
    let mut out = Vec::with_capacity(s.len());
    for c in s.channels() {
        let (g, t) = tensor_activation_counted(c, mixing)?;
        terms += t;
        out.push(g);
    }
    Ok((ChannelStack::new(out)?, terms))
}
