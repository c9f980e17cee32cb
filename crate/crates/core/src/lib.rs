//! Rotation-equivariant layer algebra on the sphere and the rotation group.
//!
//! Signals are stored in harmonic space as per-degree fragments
//! ([`signals::GeneralizedSignal`]). The crate provides exact transforms
//! ([`sampling`]), Wigner and Clebsch-Gordan kernels ([`so3`]), degree-mixing
//! sets ([`mixing`]), the layer operators ([`layers`]), Dirac-delta filters
//! ([`filters`]), an analytical cost model ([`costmodel`]) and the
//! verification experiments ([`harness`]).
//!
//! Numerical types are generic over [`Real`] (`f32` or `f64`); the aliases
//! below name the common instantiations.

pub mod costmodel;
pub mod error;
pub mod filters;
pub mod harness;
pub mod layers;
pub mod mixing;
pub mod sampling;
pub mod scalar;
pub mod signals;
pub mod so3;

pub use error::{Error, Result};
pub use scalar::Real;

pub type SignalF32 = signals::GeneralizedSignal<f32>;
pub type SignalF64 = signals::GeneralizedSignal<f64>;
pub type SphereF32 = signals::SphereHarmonic<f32>;
pub type SphereF64 = signals::SphereHarmonic<f64>;
pub type RotationSignalF32 = signals::RotationHarmonic<f32>;
pub type RotationSignalF64 = signals::RotationHarmonic<f64>;
pub type ChannelStackF32 = signals::ChannelStack<f32>;
pub type ChannelStackF64 = signals::ChannelStack<f64>;
pub type FilterF32 = layers::HarmonicFilter<f32>;
pub type FilterF64 = layers::HarmonicFilter<f64>;
