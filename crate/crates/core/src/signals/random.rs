//! Seeded generation of test signals and rotations.
//!
//! The generator is ChaCha8 seeded from a 64-bit value. Uniforms take the top
//! 53 bits of each `u64`; normals come from Box-Muller, one complex entry per
//! pair of uniforms (real part from the cosine branch, imaginary part from the
//! sine branch). Entries are drawn in `(l, t, m)` order.

use std::f64::consts::PI;

use num_complex::Complex;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::scalar::{cplx, Real};
use crate::so3::Rotation;

use super::{GeneralizedSignal, SignalType};

/// Thin wrapper pinning the uniform and normal conventions.
#[derive(Debug, Clone)]
pub struct Generator(ChaCha8Rng);

impl Generator {
    pub fn new(seed: u64) -> Self {
        Self(ChaCha8Rng::seed_from_u64(seed))
    }

    /// Uniform on `[0, 1)`.
    #[inline]
    pub fn uniform(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Complex standard normal: real and imaginary parts each `N(0, 1)`.
    pub fn complex_normal(&mut self) -> Complex<f64> {
        let u1 = 1.0 - self.uniform();
        let u2 = self.uniform();
        let r = (-2.0 * u1.ln()).sqrt();
        let (s, c) = (2.0 * PI * u2).sin_cos();
        Complex::new(r * c, r * s)
    }

    pub fn signal<T: Real>(&mut self, tau: &SignalType) -> GeneralizedSignal<T> {
        let mut f = GeneralizedSignal::zeros(tau.clone());
        f.iter_mut().for_each(|z| *z = cplx(self.complex_normal()));
        f
    }

    /// Haar-uniform rotation: `alpha, gamma ~ U[0, 2pi)`, `cos beta ~ U[-1, 1]`.
    pub fn rotation(&mut self) -> Rotation {
        let alpha = 2.0 * PI * self.uniform();
        let beta = (2.0 * self.uniform() - 1.0).clamp(-1.0, 1.0).acos();
        let gamma = 2.0 * PI * self.uniform();
        Rotation::new(alpha, beta, gamma).expect("sampled angles are in range")
    }

    /// `count` complex normals, row-major.
    pub fn complex_normals<T: Real>(&mut self, count: usize) -> Vec<Complex<T>> {
        (0..count).map(|_| cplx(self.complex_normal())).collect()
    }
}

/// A signal of type `tau` with i.i.d. complex standard normal coefficients.
pub fn random_signal<T: Real>(tau: &SignalType, seed: u64) -> GeneralizedSignal<T> {
    Generator::new(seed).signal(tau)
}

pub fn random_rotation(seed: u64) -> Rotation {
    Generator::new(seed).rotation()
}

/// Derives an independent stream seed from a base seed and a stream index.
pub fn derive_seed(base: u64, stream: u64) -> u64 {
    // splitmix64 finalizer over the combined input
    let mut z = base
        ^ stream
            .wrapping_mul(0x9E37_79B9_7F4A_7C15)
            .wrapping_add(0x6A09_E667_F3BC_C909);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
