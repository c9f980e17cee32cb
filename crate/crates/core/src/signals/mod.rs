//! The generalized signal space, rotations acting on it, random generation
//! and error metrics.

mod io;
mod ops;
mod random;
mod types;

pub(crate) use io::parse_counts;
pub use io::{read_binary, read_csv, write_binary, write_csv, CoefficientFile};
pub use ops::{invariant_readout, relative_error, rotate_harmonic};
pub use random::{derive_seed, random_rotation, random_signal, Generator};
pub use types::{ChannelStack, GeneralizedSignal, RotationHarmonic, SignalType, SphereHarmonic};
