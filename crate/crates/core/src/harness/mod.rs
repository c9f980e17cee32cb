//! Verification experiments: the layer equivariance table and the
//! pointwise-squaring equivalence.

mod equivariance;
mod squaring;
mod table;

pub use equivariance::{
    equivariance_error, equivariance_error_typed, EquivarianceConfig, EquivarianceResult, OperatorId, Precision,
};
pub use squaring::{gaunt_squaring, pointwise_squaring};
pub use table::{run_table_d, TableConfig, TableRow, PUBLISHED_TABLE};
