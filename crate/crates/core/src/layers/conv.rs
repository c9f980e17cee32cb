//! The three standard harmonic-space convolutions.

use std::f64::consts::PI;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{widen, Real};
use crate::signals::{RotationHarmonic, SphereHarmonic};

/// Whether the analytic normalization constants are applied or left to be
/// absorbed into the filter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Normalization {
    #[default]
    Explicit,
    Absorbed,
}

fn require_bandlimits(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::BandlimitMismatch { expected: a, found: b });
    }
    Ok(())
}

/// Sphere-to-rotation-group convolution,
/// `(f * psi)^l_{mn} = 8pi^2/(2l+1) f^l_m conj(psi^l_n)`; output has `N = L`.
pub fn conv_s2_to_so3<T: Real>(
    f: &SphereHarmonic<T>,
    psi: &SphereHarmonic<T>,
    norm: Normalization,
) -> Result<RotationHarmonic<T>> {
    let l_max = f.bandlimit();
    require_bandlimits(l_max, psi.bandlimit())?;
    let mut out = RotationHarmonic::zeros(l_max, l_max.max(1));
    for l in 0..l_max {
        let scale = match norm {
            Normalization::Explicit => T::of(8.0 * PI * PI / (2 * l + 1) as f64),
            Normalization::Absorbed => T::one(),
        };
        let li = l as i64;
        for n in -li..=li {
            let p = psi.coeff(l, n).conj() * scale;
            for m in -li..=li {
                out.set_coeff(l, m, n, f.coeff(l, m) * p);
            }
        }
    }
    Ok(out)
}

/// Relative size above which a `n != 0` filter coefficient counts as
/// breaking axisymmetry.
pub const AXISYMMETRY_TOLERANCE: f64 = 1e-10;

/// Axisymmetric sphere-to-sphere convolution,
/// `(f * psi)^l_m = sqrt(4pi/(2l+1)) f^l_m conj(psi^l_0)`.
pub fn conv_s2_axisym<T: Real>(
    f: &SphereHarmonic<T>,
    psi: &SphereHarmonic<T>,
    norm: Normalization,
) -> Result<SphereHarmonic<T>> {
    let l_max = f.bandlimit();
    require_bandlimits(l_max, psi.bandlimit())?;
    let peak = psi.as_signal().iter().map(|z| widen(*z).norm()).fold(0.0, f64::max);
    for l in 0..l_max {
        let li = l as i64;
        for n in (-li..=li).filter(|&n| n != 0) {
            if widen(psi.coeff(l, n)).norm() > AXISYMMETRY_TOLERANCE * peak {
                return Err(Error::NotAxisymmetric { degree: l, order: n });
            }
        }
    }
    let mut out = SphereHarmonic::zeros(l_max);
    for l in 0..l_max {
        let scale = match norm {
            Normalization::Explicit => T::of((4.0 * PI / (2 * l + 1) as f64).sqrt()),
            Normalization::Absorbed => T::one(),
        };
        let p = psi.coeff(l, 0).conj() * scale;
        let li = l as i64;
        for m in -li..=li {
            out.set_coeff(l, m, f.coeff(l, m) * p);
        }
    }
    Ok(out)
}

/// Rotation-group convolution,
/// `(f * psi)^l_{mn} = sum_k f^l_{mk} conj(psi^l_{nk})`, i.e. `f^l psi^l^H`.
/// Output has `N = L`.
pub fn conv_so3<T: Real>(f: &RotationHarmonic<T>, psi: &RotationHarmonic<T>) -> Result<RotationHarmonic<T>> {
    let l_max = f.bandlimit();
    require_bandlimits(l_max, psi.bandlimit())?;
    let mut out = RotationHarmonic::zeros(l_max, l_max.max(1));
    for l in 0..l_max {
        let li = l as i64;
        let kl = f.n_limit(l).min(psi.n_limit(l)) as i64;
        for n in -li..=li {
            for m in -li..=li {
                let mut acc = Complex::new(T::zero(), T::zero());
                for k in -kl..=kl {
                    acc += f.coeff(l, m, k) * psi.coeff(l, n, k).conj();
                }
                out.set_coeff(l, m, n, acc);
            }
        }
    }
    Ok(out)
}
