use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{cplx, widen, Real};
use crate::so3::{wigner_d_all, Rotation};

use super::GeneralizedSignal;

/// Applies `R_rho`: every fragment of degree `l` is left-multiplied by
/// `D^l(rho)`.
pub fn rotate_harmonic<T: Real>(f: &GeneralizedSignal<T>, rot: &Rotation) -> GeneralizedSignal<T> {
    let big_d = wigner_d_all(f.bandlimit(), rot);
    let mut out = GeneralizedSignal::zeros(f.signal_type().clone());
    for (l, dl) in big_d.iter().enumerate() {
        let dim = 2 * l + 1;
        let d: Vec<Complex<T>> = dl.as_slice().iter().map(|z| cplx(*z)).collect();
        for t in 0..f.fragment_count(l) {
            let src = f.fragment(l, t);
            let dst = out.fragment_mut(l, t);
            for (i, row) in d.chunks_exact(dim).enumerate() {
                let mut acc = Complex::new(T::zero(), T::zero());
                for (a, b) in row.iter().zip(src) {
                    acc += *a * *b;
                }
                dst[i] = acc;
            }
        }
    }
    out
}

/// `||f - g|| / ||f||` with the unweighted coefficient norm, in f64.
pub fn relative_error<T: Real>(f: &GeneralizedSignal<T>, g: &GeneralizedSignal<T>) -> Result<f64> {
    f.require_same_type(g)?;
    let mut num = 0.0;
    let mut den = 0.0;
    for (a, b) in f.iter().zip(g.iter()) {
        let a = widen(*a);
        num += (a - widen(*b)).norm_sqr();
        den += a.norm_sqr();
    }
    if den == 0.0 {
        return Err(Error::ZeroNorm);
    }
    Ok((num / den).sqrt())
}

/// The rotation-invariant scalars: every degree-zero fragment, in order.
pub fn invariant_readout<T: Real>(f: &GeneralizedSignal<T>) -> Vec<Complex<T>> {
    if f.bandlimit() == 0 {
        return Vec::new();
    }
    f.degree(0).to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signals::{random_rotation, random_signal, SignalType};

    #[test]
    fn identity_rotation_is_noop() {
        let f = random_signal::<f64>(&SignalType::new(vec![2, 1, 3]), 3);
        let g = rotate_harmonic(&f, &Rotation::identity());
        assert!(relative_error(&f, &g).unwrap() < 1e-15);
    }

    #[test]
    fn rotation_preserves_norm() {
        let f = random_signal::<f64>(&SignalType::rotation(6, 3), 9);
        let g = rotate_harmonic(&f, &random_rotation(4));
        assert!((f.norm() - g.norm()).abs() < 1e-12 * f.norm());
    }

    #[test]
    fn relative_error_trivia() {
        let f = random_signal::<f64>(&SignalType::sphere(4), 1);
        let zero = GeneralizedSignal::zeros(f.signal_type().clone());
        assert_eq!(relative_error(&f, &f).unwrap(), 0.0);
        assert!((relative_error(&f, &zero).unwrap() - 1.0).abs() < 1e-15);
        let two = f.scaled(Complex::new(2.0, 0.0));
        assert!((relative_error(&f, &two).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(relative_error(&zero, &f), Err(Error::ZeroNorm));
    }

    #[test]
    fn readout_shapes() {
        let f = random_signal::<f64>(&SignalType::new(vec![0, 2]), 2);
        assert!(invariant_readout(&f).is_empty());
        let s = random_signal::<f64>(&SignalType::sphere(3), 2);
        assert_eq!(invariant_readout(&s), vec![s.get(0, 0, 0)]);
    }
}
