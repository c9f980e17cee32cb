//! Representation-theoretic kernels of SO(3): rotations, Wigner matrices,
//! Clebsch-Gordan and Gaunt coefficients.

mod clebsch_gordan;
mod gaunt;
mod rotation;
mod wigner;

pub(crate) use clebsch_gordan::check_triangle;
pub use clebsch_gordan::{clebsch_gordan, satisfies_triangle, CgBlock};
pub use gaunt::{gaunt, gaunt_weight, GauntBlock};
pub use rotation::{matmul, Matrix3, Rotation};
pub use wigner::{small_d, wigner_d, wigner_d_all, SmallD, SmallDTable, WignerD};
