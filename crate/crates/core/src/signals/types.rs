use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{widen, Real};

/// Per-degree fragment counts `tau^l` of a generalized signal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignalType(Vec<usize>);

impl SignalType {
    pub fn new(counts: Vec<usize>) -> Self {
        Self(counts)
    }

    /// One fragment per degree.
    pub fn sphere(bandlimit: usize) -> Self {
        Self(vec![1; bandlimit])
    }

    /// `tau^l = min(2l+1, 2N-1)`.
    pub fn rotation(bandlimit: usize, azimuthal: usize) -> Self {
        Self(
            (0..bandlimit)
                .map(|l| (2 * l + 1).min(2 * azimuthal.max(1) - 1))
                .collect(),
        )
    }

    pub fn uniform(bandlimit: usize, count: usize) -> Self {
        Self(vec![count; bandlimit])
    }

    pub fn bandlimit(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn get(&self, l: usize) -> usize {
        self.0[l]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn total_fragments(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of complex coefficients, `sum_l (2l+1) tau^l`.
    pub fn coefficient_count(&self) -> usize {
        self.0.iter().enumerate().map(|(l, t)| (2 * l + 1) * t).sum()
    }

    pub fn is_sphere(&self) -> bool {
        self.0.iter().all(|&t| t == 1)
    }

    /// The azimuthal bandlimit `N` if this is a rotation-group type. For
    /// `N = 1` the type coincides with the sphere type.
    pub fn rotation_azimuthal(&self) -> Option<usize> {
        let l = self.bandlimit();
        if l == 0 {
            return None;
        }
        let top = self.0[l - 1];
        if top.is_multiple_of(2) {
            return None;
        }
        let n = top.div_ceil(2);
        (*self == Self::rotation(l, n)).then_some(n)
    }
}

impl fmt::Display for SignalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|t| t.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// An element of the generalized signal space: for each degree `l`, a
/// `(2l+1) x tau^l` complex matrix whose columns are the fragments.
///
/// Each degree is stored column-major so every fragment is contiguous.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralizedSignal<T> {
    tau: SignalType,
    degrees: Vec<Vec<Complex<T>>>,
}

impl<T: Real> GeneralizedSignal<T> {
    pub fn zeros(tau: SignalType) -> Self {
        let degrees = tau
            .as_slice()
            .iter()
            .enumerate()
            .map(|(l, &t)| vec![Complex::new(T::zero(), T::zero()); (2 * l + 1) * t])
            .collect();
        Self { tau, degrees }
    }

    /// Builds a signal from per-degree column-major storage.
    pub fn from_degrees(tau: SignalType, degrees: Vec<Vec<Complex<T>>>) -> Result<Self> {
        if degrees.len() != tau.bandlimit() {
            return Err(Error::BandlimitMismatch {
                expected: tau.bandlimit(),
                found: degrees.len(),
            });
        }
        for (l, d) in degrees.iter().enumerate() {
            if d.len() != (2 * l + 1) * tau.get(l) {
                return Err(Error::Shape(format!(
                    "degree {l}: expected {} coefficients, found {}",
                    (2 * l + 1) * tau.get(l),
                    d.len()
                )));
            }
        }
        Ok(Self { tau, degrees })
    }

    pub fn signal_type(&self) -> &SignalType {
        &self.tau
    }

    pub fn bandlimit(&self) -> usize {
        self.tau.bandlimit()
    }

    #[inline]
    pub fn fragment_count(&self, l: usize) -> usize {
        self.tau.get(l)
    }

    /// Column-major `(2l+1) x tau^l` block of degree `l`.
    #[inline]
    pub fn degree(&self, l: usize) -> &[Complex<T>] {
        &self.degrees[l]
    }

    #[inline]
    pub fn degree_mut(&mut self, l: usize) -> &mut [Complex<T>] {
        &mut self.degrees[l]
    }

    #[inline]
    pub fn fragment(&self, l: usize, t: usize) -> &[Complex<T>] {
        let d = 2 * l + 1;
        &self.degrees[l][t * d..(t + 1) * d]
    }

    #[inline]
    pub fn fragment_mut(&mut self, l: usize, t: usize) -> &mut [Complex<T>] {
        let d = 2 * l + 1;
        &mut self.degrees[l][t * d..(t + 1) * d]
    }

    /// Entry `m` of fragment `t` at degree `l`.
    #[inline]
    pub fn get(&self, l: usize, t: usize, m: i64) -> Complex<T> {
        self.fragment(l, t)[(m + l as i64) as usize]
    }

    #[inline]
    pub fn set(&mut self, l: usize, t: usize, m: i64, v: Complex<T>) {
        self.fragment_mut(l, t)[(m + l as i64) as usize] = v;
    }

    pub fn iter(&self) -> impl Iterator<Item = &Complex<T>> {
        self.degrees.iter().flatten()
    }

    pub fn iter_mut(&mut self) -> impl Iterator<Item = &mut Complex<T>> {
        self.degrees.iter_mut().flatten()
    }

    pub fn into_degrees(self) -> (SignalType, Vec<Vec<Complex<T>>>) {
        (self.tau, self.degrees)
    }

    /// Unweighted Frobenius norm over every coefficient, accumulated in f64.
    pub fn norm(&self) -> f64 {
        self.iter().map(|z| widen(*z).norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scaled(&self, s: Complex<T>) -> Self {
        let mut out = self.clone();
        out.iter_mut().for_each(|z| *z *= s);
        out
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex<T>, Complex<T>) -> Complex<T>) -> Result<Self> {
        self.require_same_type(other)?;
        let degrees = self
            .degrees
            .iter()
            .zip(&other.degrees)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| f(*x, *y)).collect())
            .collect();
        Ok(Self {
            tau: self.tau.clone(),
            degrees,
        })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn require_same_type(&self, other: &Self) -> Result<()> {
        if self.tau != other.tau {
            return Err(Error::TypeMismatch(format!("[{}] vs [{}]", self.tau, other.tau)));
        }
        Ok(())
    }

    /// Converts every coefficient to another precision.
    pub fn cast<U: Real>(&self) -> GeneralizedSignal<U> {
        GeneralizedSignal {
            tau: self.tau.clone(),
            degrees: self
                .degrees
                .iter()
                .map(|d| {
                    d.iter()
                        .map(|z| Complex::new(U::of(z.re.to_f64_lossy()), U::of(z.im.to_f64_lossy())))
                        .collect()
                })
                .collect(),
        }
    }

    /// Keeps degrees `< bandlimit` (padding with zero-fragment degrees if
    /// `bandlimit` is larger).
    pub fn with_bandlimit(&self, bandlimit: usize) -> Self {
        let mut counts: Vec<usize> = self.tau.as_slice().iter().copied().take(bandlimit).collect();
        let mut degrees: Vec<Vec<Complex<T>>> = self.degrees.iter().take(bandlimit).cloned().collect();
        while counts.len() < bandlimit {
            counts.push(0);
            degrees.push(Vec::new());
        }
        Self {
            tau: SignalType::new(counts),
            degrees,
        }
    }
}

impl<T: Real> Add for &GeneralizedSignal<T> {
    type Output = GeneralizedSignal<T>;

    fn add(self, rhs: Self) -> GeneralizedSignal<T> {
        self.try_add(rhs).expect("signal types must match")
    }
}

impl<T: Real> Sub for &GeneralizedSignal<T> {
    type Output = GeneralizedSignal<T>;

    fn sub(self, rhs: Self) -> GeneralizedSignal<T> {
        self.try_sub(rhs).expect("signal types must match")
    }
}

impl<T: Real> Mul<Complex<T>> for &GeneralizedSignal<T> {
    type Output = GeneralizedSignal<T>;

    fn mul(self, rhs: Complex<T>) -> GeneralizedSignal<T> {
        self.scaled(rhs)
    }
}

/// `K` generalized signals sharing one type.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelStack<T> {
    tau: SignalType,
    channels: Vec<GeneralizedSignal<T>>,
}

impl<T: Real> ChannelStack<T> {
    pub fn new(channels: Vec<GeneralizedSignal<T>>) -> Result<Self> {
        let first = channels
            .first()
            .ok_or_else(|| Error::InvalidArgument("channel stack needs at least one channel".into()))?;
        let tau = first.signal_type().clone();
        for (k, c) in channels.iter().enumerate() {
            if c.signal_type() != &tau {
                return Err(Error::TypeMismatch(format!(
                    "channel {k} has type [{}], expected [{}]",
                    c.signal_type(),
                    tau
                )));
            }
        }
        Ok(Self { tau, channels })
    }

    pub fn signal_type(&self) -> &SignalType {
        &self.tau
    }

    pub fn len(&self) -> usize {
        self.channels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.channels.is_empty()
    }

    pub fn channel(&self, k: usize) -> &GeneralizedSignal<T> {
        &self.channels[k]
    }

    pub fn channels(&self) -> &[GeneralizedSignal<T>] {
        &self.channels
    }

    pub fn into_channels(self) -> Vec<GeneralizedSignal<T>> {
        self.channels
    }

    pub fn norm(&self) -> f64 {
        self.channels.iter().map(|c| c.norm().powi(2)).sum::<f64>().sqrt()
    }

    /// Splits a signal whose degree-`l` fragments are ordered channel-major
    /// into `channels` equal parts; inverse of [`ChannelStack::flatten`].
    pub fn from_flat(f: &GeneralizedSignal<T>, channels: usize) -> Result<Self> {
        if channels == 0 || f.signal_type().as_slice().iter().any(|t| t % channels != 0) {
            return Err(Error::Shape(format!(
                "type [{}] does not split into {channels} channels",
                f.signal_type()
            )));
        }
        let tau = SignalType::new(f.signal_type().as_slice().iter().map(|t| t / channels).collect());
        let out = (0..channels)
            .map(|k| {
                let degrees = (0..tau.bandlimit())
                    .map(|l| {
                        let len = (2 * l + 1) * tau.get(l);
                        f.degree(l)[k * len..(k + 1) * len].to_vec()
                    })
                    .collect();
                GeneralizedSignal {
                    tau: tau.clone(),
                    degrees,
                }
            })
            .collect();
        Ok(Self { tau, channels: out })
    }

    /// Concatenates the channels into one signal whose degree-`l` fragments
    /// are ordered channel-major (`k * tau^l + t`).
    pub fn flatten(&self) -> GeneralizedSignal<T> {
        let k = self.channels.len();
        let tau = SignalType::new(self.tau.as_slice().iter().map(|t| t * k).collect());
        let degrees = (0..self.tau.bandlimit())
            .map(|l| self.channels.iter().flat_map(|c| c.degree(l).iter().copied()).collect())
            .collect();
        GeneralizedSignal { tau, degrees }
    }
}

/// A bandlimited signal on the sphere: one fragment `f^l_m` per degree.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereHarmonic<T>(GeneralizedSignal<T>);

impl<T: Real> SphereHarmonic<T> {
    pub fn zeros(bandlimit: usize) -> Self {
        Self(GeneralizedSignal::zeros(SignalType::sphere(bandlimit)))
    }

    pub fn bandlimit(&self) -> usize {
        self.0.bandlimit()
    }

    #[inline]
    pub fn coeff(&self, l: usize, m: i64) -> Complex<T> {
        self.0.get(l, 0, m)
    }

    #[inline]
    pub fn set_coeff(&mut self, l: usize, m: i64, v: Complex<T>) {
        self.0.set(l, 0, m, v)
    }

    #[inline]
    pub fn degree(&self, l: usize) -> &[Complex<T>] {
        self.0.degree(l)
    }

    pub fn as_signal(&self) -> &GeneralizedSignal<T> {
        &self.0
    }

    pub fn into_signal(self) -> GeneralizedSignal<T> {
        self.0
    }

    pub fn truncated(&self, bandlimit: usize) -> Self {
        Self(self.0.with_bandlimit(bandlimit).retype_sphere())
    }
}

impl<T: Real> GeneralizedSignal<T> {
    fn retype_sphere(mut self) -> Self {
        for l in 0..self.bandlimit() {
            if self.tau.get(l) == 0 {
                self.degrees[l] = vec![Complex::new(T::zero(), T::zero()); 2 * l + 1];
            }
        }
        self.tau = SignalType::sphere(self.bandlimit());
        self
    }
}

impl<T: Real> TryFrom<GeneralizedSignal<T>> for SphereHarmonic<T> {
    type Error = Error;

    fn try_from(f: GeneralizedSignal<T>) -> Result<Self> {
        if !f.signal_type().is_sphere() {
            return Err(Error::TypeMismatch(format!(
                "[{}] is not a sphere type",
                f.signal_type()
            )));
        }
        Ok(Self(f))
    }
}

impl<T> From<SphereHarmonic<T>> for GeneralizedSignal<T> {
    fn from(f: SphereHarmonic<T>) -> Self {
        f.0
    }
}

/// A bandlimited signal on SO(3) with azimuthal bandlimit `N`.
///
/// Fragment `t` of degree `l` is the column `n = t - min(l, N-1)` of the
/// `(2l+1) x (2 min(l,N-1) + 1)` coefficient matrix `g^l_{mn}`.
#[derive(Debug, Clone, PartialEq)]
pub struct RotationHarmonic<T> {
    signal: GeneralizedSignal<T>,
    azimuthal: usize,
}

impl<T: Real> RotationHarmonic<T> {
    pub fn zeros(bandlimit: usize, azimuthal: usize) -> Self {
        Self {
            signal: GeneralizedSignal::zeros(SignalType::rotation(bandlimit, azimuthal)),
            azimuthal,
        }
    }

    pub fn from_signal(signal: GeneralizedSignal<T>, azimuthal: usize) -> Result<Self> {
        let want = SignalType::rotation(signal.bandlimit(), azimuthal);
        if azimuthal == 0 || signal.signal_type() != &want {
            return Err(Error::TypeMismatch(format!(
                "[{}] is not the rotation type for N = {azimuthal}",
                signal.signal_type()
            )));
        }
        Ok(Self { signal, azimuthal })
    }

    pub fn bandlimit(&self) -> usize {
        self.signal.bandlimit()
    }

    pub fn azimuthal(&self) -> usize {
        self.azimuthal
    }

    /// Largest `|n|` stored at degree `l`.
    #[inline]
    pub fn n_limit(&self, l: usize) -> usize {
        l.min(self.azimuthal - 1)
    }

    #[inline]
    pub fn coeff(&self, l: usize, m: i64, n: i64) -> Complex<T> {
        let t = (n + self.n_limit(l) as i64) as usize;
        self.signal.get(l, t, m)
    }

    #[inline]
    pub fn set_coeff(&mut self, l: usize, m: i64, n: i64, v: Complex<T>) {
        let t = (n + self.n_limit(l) as i64) as usize;
        self.signal.set(l, t, m, v)
    }

    pub fn as_signal(&self) -> &GeneralizedSignal<T> {
        &self.signal
    }

    pub fn into_signal(self) -> GeneralizedSignal<T> {
        self.signal
    }

    /// Drops degrees `>= bandlimit` and orders `|n| >= azimuthal`.
    pub fn truncated(&self, bandlimit: usize, azimuthal: usize) -> Self {
        let mut out = Self::zeros(bandlimit.min(self.bandlimit()), azimuthal.min(self.azimuthal));
        for l in 0..out.bandlimit() {
            let nl = out.n_limit(l) as i64;
            let li = l as i64;
            for n in -nl..=nl {
                for m in -li..=li {
                    out.set_coeff(l, m, n, self.coeff(l, m, n));
                }
            }
        }
        out
    }
}

impl<T> From<RotationHarmonic<T>> for GeneralizedSignal<T> {
    fn from(f: RotationHarmonic<T>) -> Self {
        f.signal
    }
}
