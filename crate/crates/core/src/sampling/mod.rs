//! Sample grids and exact harmonic transforms on the sphere and on SO(3).
//!
//! Colatitudes (and `beta`) sit at Gauss-Legendre nodes; azimuthal angles are
//! equispaced. With `L` nodes and `2L-1` longitudes every product of two
//! degree-`< L` harmonics is integrated exactly, so forward and inverse
//! transforms are mutual inverses on bandlimited signals.

mod grid;
mod legendre;
mod quadrature;
mod s2;
mod so3;

pub use grid::{S2Grid, SO3Grid, SampledS2, SampledSO3};
pub use legendre::{spherical_harmonic, LegendreTable};
pub use quadrature::gauss_legendre;
pub use s2::{sht_forward, sht_forward_truncated, sht_inverse};
pub use so3::{so3_forward, so3_forward_counted, so3_forward_truncated, so3_inverse, so3_inverse_counted};
