use num_complex::Complex;

use crate::error::Result;
use crate::layers::{tensor_activation, PointwiseS2};
use crate::mixing::MixingSet;
use crate::scalar::{cplx, Real};
use crate::signals::{GeneralizedSignal, SignalType, SphereHarmonic};
use crate::so3::gaunt_weight;

/// Harmonic coefficients of `f^2` at bandlimit `2L-1`, computed purely
/// algebraically: a tensor-product activation over every pair of input
/// degrees, with each fragment scaled by its Gaunt weight (doubled for
/// `l1 != l2`, which stands for both orderings).
pub fn gaunt_squaring<T: Real>(f: &SphereHarmonic<T>) -> Result<SphereHarmonic<T>> {
    let big_l = f.bandlimit();
    let out_l = (2 * big_l).saturating_sub(1);
    let mixing = MixingSet::full_extended(big_l, out_l);
    let products = tensor_activation(f.as_signal(), &mixing)?;
    let mut out = GeneralizedSignal::<T>::zeros(SignalType::sphere(out_l));
    for l in 0..out_l {
        let dst = out.degree_mut(l);
        for (p, &(l1, l2)) in mixing.degree(l).iter().enumerate() {
            let mult = if l1 == l2 { 1.0 } else { 2.0 };
            let w: Complex<T> = cplx(Complex::new(mult * gaunt_weight(l1, l2, l)?, 0.0));
            for (d, v) in dst.iter_mut().zip(products.fragment(l, p)) {
                *d += *v * w;
            }
        }
    }
    out.try_into()
}

/// The complex square `f^2` evaluated on the twice-oversampled grid and
/// analysed up to bandlimit `2L-1`.
pub fn pointwise_squaring<T: Real>(f: &SphereHarmonic<T>) -> Result<SphereHarmonic<T>> {
    let big_l = f.bandlimit();
    PointwiseS2::new(big_l, 2)?.apply_complex(f, |z| z * z, (2 * big_l).saturating_sub(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn constant_signal() {
        let mut f = SphereHarmonic::<f64>::zeros(3);
        f.set_coeff(0, 0, Complex::new(2.0, 0.0));
        let g = gaunt_squaring(&f).unwrap();
        assert_eq!(g.bandlimit(), 5);
        assert!((g.coeff(0, 0).re - 4.0 / (4.0 * PI).sqrt()).abs() < 1e-14);
        assert!(g.as_signal().norm() - g.coeff(0, 0).norm() < 1e-14);
    }

    #[test]
    fn zero_signal() {
        let f = SphereHarmonic::<f64>::zeros(4);
        assert_eq!(gaunt_squaring(&f).unwrap().as_signal().norm(), 0.0);
    }
}
