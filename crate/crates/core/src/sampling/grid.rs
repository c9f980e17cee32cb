use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};
use crate::so3::Rotation;

use super::quadrature::gauss_legendre;

/// Forward and inverse FFT plans of one length.
#[derive(Clone)]
pub(crate) struct Plan {
    pub fwd: Arc<dyn Fft<f64>>,
    pub inv: Arc<dyn Fft<f64>>,
}

impl Plan {
    fn new(len: usize) -> Self {
        let mut planner = FftPlanner::new();
        Self {
            fwd: planner.plan_fft_forward(len),
            inv: planner.plan_fft_inverse(len),
        }
    }
}

fn colatitudes(bandlimit: usize) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = gauss_legendre(bandlimit);
    (x.iter().map(|x| x.clamp(-1.0, 1.0).acos()).collect(), w)
}

/// Gauss-Legendre colatitudes with `2L-1` equispaced longitudes.
#[derive(Clone)]
pub struct S2Grid {
    bandlimit: usize,
    theta: Vec<f64>,
    weights: Vec<f64>,
    pub(crate) phi_plan: Plan,
}

impl fmt::Debug for S2Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("S2Grid").field("bandlimit", &self.bandlimit).finish()
    }
}

impl S2Grid {
    pub fn new(bandlimit: usize) -> Result<Arc<Self>> {
        if bandlimit == 0 {
            return Err(Error::InvalidArgument("grid bandlimit must be positive".into()));
        }
        let (theta, weights) = colatitudes(bandlimit);
        Ok(Arc::new(Self {
            bandlimit,
            theta,
            weights,
            phi_plan: Plan::new(2 * bandlimit - 1),
        }))
    }

    pub fn bandlimit(&self) -> usize {
        self.bandlimit
    }

    pub fn theta(&self) -> &[f64] {
        &self.theta
    }

    /// Quadrature weights in `cos theta`.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn n_theta(&self) -> usize {
        self.bandlimit
    }

    pub fn n_phi(&self) -> usize {
        2 * self.bandlimit - 1
    }

    pub fn phi(&self, p: usize) -> f64 {
        2.0 * PI * p as f64 / self.n_phi() as f64
    }

    pub fn sample_count(&self) -> usize {
        self.n_theta() * self.n_phi()
    }

    /// Full area element of sample `(t, p)`: `w_t * 2pi / (2L-1)`.
    pub fn area(&self, t: usize) -> f64 {
        self.weights[t] * 2.0 * PI / self.n_phi() as f64
    }
}

/// Gauss-Legendre `beta` nodes with `2L-1` equispaced `alpha` and `2N-1`
/// equispaced `gamma` values.
#[derive(Clone)]
pub struct SO3Grid {
    bandlimit: usize,
    azimuthal: usize,
    beta: Vec<f64>,
    weights: Vec<f64>,
    pub(crate) alpha_plan: Plan,
    pub(crate) gamma_plan: Plan,
}

impl fmt::Debug for SO3Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SO3Grid")
            .field("bandlimit", &self.bandlimit)
            .field("azimuthal", &self.azimuthal)
            .finish()
    }
}

impl SO3Grid {
    pub fn new(bandlimit: usize, azimuthal: usize) -> Result<Arc<Self>> {
        if bandlimit == 0 || azimuthal == 0 {
            return Err(Error::InvalidArgument("grid bandlimits must be positive".into()));
        }
        if azimuthal > bandlimit {
            return Err(Error::InvalidArgument(format!(
                "azimuthal bandlimit {azimuthal} exceeds bandlimit {bandlimit}"
            )));
        }
        let (beta, weights) = colatitudes(bandlimit);
        Ok(Arc::new(Self {
            bandlimit,
            azimuthal,
            beta,
            weights,
            alpha_plan: Plan::new(2 * bandlimit - 1),
            gamma_plan: Plan::new(2 * azimuthal - 1),
        }))
    }

    pub fn bandlimit(&self) -> usize {
        self.bandlimit
    }

    pub fn azimuthal(&self) -> usize {
        self.azimuthal
    }

    pub fn beta(&self) -> &[f64] {
        &self.beta
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn n_beta(&self) -> usize {
        self.bandlimit
    }

    pub fn n_alpha(&self) -> usize {
        2 * self.bandlimit - 1
    }

    pub fn n_gamma(&self) -> usize {
        2 * self.azimuthal - 1
    }

    pub fn alpha(&self, a: usize) -> f64 {
        2.0 * PI * a as f64 / self.n_alpha() as f64
    }

    pub fn gamma(&self, c: usize) -> f64 {
        2.0 * PI * c as f64 / self.n_gamma() as f64
    }

    pub fn sample_count(&self) -> usize {
        self.n_beta() * self.n_alpha() * self.n_gamma()
    }

    /// Haar volume element of a sample in row `b`.
    pub fn volume(&self, b: usize) -> f64 {
        self.weights[b] * 4.0 * PI * PI / (self.n_alpha() * self.n_gamma()) as f64
    }

    pub fn rotation(&self, b: usize, a: usize, c: usize) -> Rotation {
        Rotation {
            alpha: self.alpha(a),
            beta: self.beta[b],
            gamma: self.gamma(c),
        }
    }
}

/// Samples on an [`S2Grid`], row-major in `(theta, phi)`.
#[derive(Debug, Clone)]
pub struct SampledS2 {
    grid: Arc<S2Grid>,
    values: Vec<Complex64>,
}

impl SampledS2 {
    pub fn new(grid: Arc<S2Grid>, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.sample_count() {
            return Err(Error::SampleCount {
                expected: grid.sample_count(),
                found: values.len(),
            });
        }
        Ok(Self { grid, values })
    }

    /// Evaluates `f(theta, phi)` at every sample.
    pub fn from_fn(grid: Arc<S2Grid>, f: impl Fn(f64, f64) -> Complex64) -> Self {
        let mut values = Vec::with_capacity(grid.sample_count());
        for &th in grid.theta() {
            for p in 0..grid.n_phi() {
                values.push(f(th, grid.phi(p)));
            }
        }
        Self { grid, values }
    }

    pub fn grid(&self) -> &Arc<S2Grid> {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    /// `sum_samples area * |f|^2`.
    pub fn energy(&self) -> f64 {
        let np = self.grid.n_phi();
        self.values
            .chunks_exact(np)
            .enumerate()
            .map(|(t, row)| self.grid.area(t) * row.iter().map(|z| z.norm_sqr()).sum::<f64>())
            .sum()
    }
}

/// Samples on an [`SO3Grid`], row-major in `(beta, alpha, gamma)`.
#[derive(Debug, Clone)]
pub struct SampledSO3 {
    grid: Arc<SO3Grid>,
    values: Vec<Complex64>,
}

impl SampledSO3 {
    pub fn new(grid: Arc<SO3Grid>, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.sample_count() {
            return Err(Error::SampleCount {
                expected: grid.sample_count(),
                found: values.len(),
            });
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn(grid: Arc<SO3Grid>, f: impl Fn(&Rotation) -> Complex64) -> Self {
        let mut values = Vec::with_capacity(grid.sample_count());
        for b in 0..grid.n_beta() {
            for a in 0..grid.n_alpha() {
                for c in 0..grid.n_gamma() {
                    values.push(f(&grid.rotation(b, a, c)));
                }
            }
        }
        Self { grid, values }
    }

    pub fn grid(&self) -> &Arc<SO3Grid> {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }
}
