//! Equivariant layer operators.

mod compose;
mod constrained;
mod conv;
mod filter;
mod norm;
mod pointwise;
mod tensor;

pub use compose::{compose_layer, LayerTriple, Operator, Stage};
pub use constrained::{
    constrained_conv, constrained_conv_counted, constrained_parameter_count, is_nondegenerate,
    unconstrained_parameter_count, ConstrainedFilterTriple,
};
pub use conv::{conv_s2_axisym, conv_s2_to_so3, conv_so3, Normalization, AXISYMMETRY_TOLERANCE};
pub use filter::{generalized_conv, generalized_conv_counted, read_filter_csv, write_filter_csv, HarmonicFilter};
pub use norm::{fragment_norm, fragment_norms, FragmentStatistics};
pub use pointwise::{
    identity, pointwise_activation, pointwise_s2, pointwise_so3, Nonlinearity, PointwiseS2, PointwiseSO3,
};
pub use tensor::{
    channelwise_tensor_activation, channelwise_tensor_activation_counted, tensor_activation, tensor_activation_counted,
    tensor_output_type,
};
