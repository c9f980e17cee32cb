//! Pointwise activations evaluated in real space on an (optionally
//! oversampled) grid.
//!
//! A scalar map `sigma` acts on each complex sample by applying it to the
//! real and imaginary parts separately. Transforms run in double precision;
//! `sigma` itself runs in the signal's precision.

use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sampling::{sht_forward_truncated, sht_inverse, so3_forward_truncated, so3_inverse, S2Grid, SO3Grid};
use crate::scalar::Real;
use crate::signals::{GeneralizedSignal, RotationHarmonic, SphereHarmonic};

/// Built-in scalar maps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Nonlinearity {
    Identity,
    Relu,
    Square,
}

impl Nonlinearity {
    #[inline]
    pub fn apply<T: Real>(self, x: T) -> T {
        match self {
            Self::Identity => x,
            Self::Relu => x.max(T::zero()),
            Self::Square => x * x,
        }
    }
}

#[inline]
fn map_sample<T: Real>(z: &mut Complex64, sigma: &impl Fn(T) -> T) {
    let re = sigma(T::of(z.re)).to_f64_lossy();
    let im = sigma(T::of(z.im)).to_f64_lossy();
    *z = Complex64::new(re, im);
}

fn check_oversample(c: usize) -> Result<()> {
    if c == 0 {
        return Err(Error::InvalidArgument("oversampling factor must be at least 1".into()));
    }
    Ok(())
}

/// Pointwise activation for sphere signals of one bandlimit, holding the
/// oversampled grid.
#[derive(Debug, Clone)]
pub struct PointwiseS2 {
    bandlimit: usize,
    grid: Arc<S2Grid>,
}

impl PointwiseS2 {
    pub fn new(bandlimit: usize, oversample: usize) -> Result<Self> {
        check_oversample(oversample)?;
        Ok(Self {
            bandlimit,
            grid: S2Grid::new((oversample * bandlimit).max(1))?,
        })
    }

    pub fn grid(&self) -> &Arc<S2Grid> {
        &self.grid
    }

    /// `F(sigma(F^{-1} f))`, truncated back to the input bandlimit.
    pub fn apply<T: Real>(&self, f: &SphereHarmonic<T>, sigma: impl Fn(T) -> T + Sync) -> Result<SphereHarmonic<T>> {
        self.apply_to_bandlimit(f, sigma, self.bandlimit)
    }

    /// As [`apply`](Self::apply) but keeping degrees `< out_bandlimit`
    /// (at most the grid bandlimit).
    pub fn apply_to_bandlimit<T: Real>(
        &self,
        f: &SphereHarmonic<T>,
        sigma: impl Fn(T) -> T + Sync,
        out_bandlimit: usize,
    ) -> Result<SphereHarmonic<T>> {
        self.map_samples(f, out_bandlimit, |z| map_sample(z, &sigma))
    }

    /// Applies a map to the complex samples directly, e.g. `z -> z^2`.
    pub fn apply_complex<T: Real>(
        &self,
        f: &SphereHarmonic<T>,
        map: impl Fn(Complex64) -> Complex64 + Sync,
        out_bandlimit: usize,
    ) -> Result<SphereHarmonic<T>> {
        self.map_samples(f, out_bandlimit, |z| *z = map(*z))
    }

    fn map_samples<T: Real>(
        &self,
        f: &SphereHarmonic<T>,
        out_bandlimit: usize,
        map: impl Fn(&mut Complex64),
    ) -> Result<SphereHarmonic<T>> {
        if f.bandlimit() != self.bandlimit {
            return Err(Error::BandlimitMismatch {
                expected: self.bandlimit,
                found: f.bandlimit(),
            });
        }
        let wide: SphereHarmonic<f64> = f.as_signal().cast::<f64>().try_into()?;
        let mut samples = sht_inverse(&wide, &self.grid)?;
        samples.values_mut().iter_mut().for_each(map);
        let out = sht_forward_truncated(&samples, out_bandlimit)?;
        out.into_signal().cast::<T>().try_into()
    }
}

/// Pointwise activation for rotation-group signals of one `(L, N)`.
/// The grid is oversampled in both `L` and `N` (capped at the oversampled
/// `L`).
#[derive(Debug, Clone)]
pub struct PointwiseSO3 {
    bandlimit: usize,
    azimuthal: usize,
    grid: Arc<SO3Grid>,
}

impl PointwiseSO3 {
    pub fn new(bandlimit: usize, azimuthal: usize, oversample: usize) -> Result<Self> {
        check_oversample(oversample)?;
        let big_l = (oversample * bandlimit).max(1);
        let big_n = (oversample * azimuthal).clamp(1, big_l);
        Ok(Self {
            bandlimit,
            azimuthal,
            grid: SO3Grid::new(big_l, big_n)?,
        })
    }

    pub fn grid(&self) -> &Arc<SO3Grid> {
        &self.grid
    }

    pub fn apply<T: Real>(
        &self,
        f: &RotationHarmonic<T>,
        sigma: impl Fn(T) -> T + Sync,
    ) -> Result<RotationHarmonic<T>> {
        if f.bandlimit() != self.bandlimit || f.azimuthal() != self.azimuthal {
            return Err(Error::BandlimitMismatch {
                expected: self.bandlimit,
                found: f.bandlimit(),
            });
        }
        let wide = RotationHarmonic::from_signal(f.as_signal().cast::<f64>(), self.azimuthal)?;
        let mut samples = so3_inverse(&wide, &self.grid)?;
        samples.values_mut().iter_mut().for_each(|z| map_sample(z, &sigma));
        let out = so3_forward_truncated(&samples, self.bandlimit, self.azimuthal)?;
        RotationHarmonic::from_signal(out.into_signal().cast::<T>(), self.azimuthal)
    }
}

pub fn pointwise_s2<T: Real>(
    f: &SphereHarmonic<T>,
    sigma: impl Fn(T) -> T + Sync,
    oversample: usize,
) -> Result<SphereHarmonic<T>> {
    PointwiseS2::new(f.bandlimit(), oversample)?.apply(f, sigma)
}

pub fn pointwise_so3<T: Real>(
    f: &RotationHarmonic<T>,
    sigma: impl Fn(T) -> T + Sync,
    oversample: usize,
) -> Result<RotationHarmonic<T>> {
    PointwiseSO3::new(f.bandlimit(), f.azimuthal(), oversample)?.apply(f, sigma)
}

/// Dispatches on the signal type: one fragment per degree is treated as a
/// sphere signal, `min(2l+1, 2N-1)` fragments (`N > 1`) as a rotation-group
/// signal; anything else is rejected.
pub fn pointwise_activation<T: Real>(
    f: &GeneralizedSignal<T>,
    sigma: impl Fn(T) -> T + Sync,
    oversample: usize,
) -> Result<GeneralizedSignal<T>> {
    if f.signal_type().is_sphere() {
        let s: SphereHarmonic<T> = f.clone().try_into()?;
        return pointwise_s2(&s, sigma, oversample).map(SphereHarmonic::into_signal);
    }
    match f.signal_type().rotation_azimuthal() {
        Some(n) => {
            let r = RotationHarmonic::from_signal(f.clone(), n)?;
            pointwise_so3(&r, sigma, oversample).map(RotationHarmonic::into_signal)
        }
        None => Err(Error::UnsupportedType(format!("[{}]", f.signal_type()))),
    }
}

/// No-op scalar map.
pub fn identity<T: Real>(x: T) -> T {
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signals::{random_signal, relative_error, SignalType};

    #[test]
    fn identity_is_noop() {
        let f: SphereHarmonic<f64> = random_signal(&SignalType::sphere(8), 1).try_into().unwrap();
        let g = pointwise_s2(&f, identity, 1).unwrap();
        assert!(relative_error(f.as_signal(), g.as_signal()).unwrap() < 1e-12);
        let r = RotationHarmonic::from_signal(random_signal::<f64>(&SignalType::rotation(5, 2), 2), 2).unwrap();
        let h = pointwise_so3(&r, identity, 2).unwrap();
        assert!(relative_error(r.as_signal(), h.as_signal()).unwrap() < 1e-12);
    }

    #[test]
    fn generic_dispatch() {
        let f = random_signal::<f64>(&SignalType::rotation(4, 2), 3);
        let g = pointwise_activation(&f, |x: f64| Nonlinearity::Relu.apply(x), 1).unwrap();
        assert_eq!(g.signal_type(), f.signal_type());
        let bad = random_signal::<f64>(&SignalType::new(vec![2, 2]), 3);
        assert!(matches!(
            pointwise_activation(&bad, identity, 1),
            Err(Error::UnsupportedType(_))
        ));
        assert!(pointwise_activation(&f, identity, 0).is_err());
    }
}
