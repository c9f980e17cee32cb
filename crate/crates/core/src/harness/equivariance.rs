use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::layers::{
    conv_s2_axisym, conv_s2_to_so3, conv_so3, generalized_conv, tensor_activation, tensor_output_type, HarmonicFilter,
    Nonlinearity, Normalization, PointwiseS2, PointwiseSO3,
};
use crate::mixing::{MixingKind, MixingSet};
use crate::scalar::{cplx, widen, Real};
use crate::signals::{
    derive_seed, random_rotation, rotate_harmonic, GeneralizedSignal, Generator, RotationHarmonic, SignalType,
    SphereHarmonic,
};

/// Operators with a registered equivariance experiment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OperatorId {
    #[serde(rename = "s2-s2-conv")]
    S2ToS2Conv,
    #[serde(rename = "s2-so3-conv")]
    S2ToSO3Conv,
    #[serde(rename = "so3-so3-conv")]
    SO3ToSO3Conv,
    #[serde(rename = "tensor-gconv")]
    TensorGeneralizedConv,
    #[serde(rename = "tensor-gconv-mst")]
    TensorGeneralizedConvMst,
    #[serde(rename = "s2-relu")]
    S2Relu,
    #[serde(rename = "so3-relu")]
    SO3Relu,
}

impl OperatorId {
    pub const ALL: [OperatorId; 7] = [
        Self::S2ToS2Conv,
        Self::S2ToSO3Conv,
        Self::SO3ToSO3Conv,
        Self::TensorGeneralizedConv,
        Self::TensorGeneralizedConvMst,
        Self::S2Relu,
        Self::SO3Relu,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::S2ToS2Conv => "s2-s2-conv",
            Self::S2ToSO3Conv => "s2-so3-conv",
            Self::SO3ToSO3Conv => "so3-so3-conv",
            Self::TensorGeneralizedConv => "tensor-gconv",
            Self::TensorGeneralizedConvMst => "tensor-gconv-mst",
            Self::S2Relu => "s2-relu",
            Self::SO3Relu => "so3-relu",
        }
    }

    /// Exactly equivariant in exact arithmetic.
    pub fn is_exact(self) -> bool {
        !matches!(self, Self::S2Relu | Self::SO3Relu)
    }

    fn input_type(self, bandlimit: usize, azimuthal: usize) -> SignalType {
        match self {
            Self::SO3ToSO3Conv | Self::SO3Relu => SignalType::rotation(bandlimit, azimuthal),
            _ => SignalType::sphere(bandlimit),
        }
    }

    fn output_on_rotation_group(self) -> bool {
        matches!(self, Self::S2ToSO3Conv | Self::SO3ToSO3Conv | Self::SO3Relu)
    }
}

impl fmt::Display for OperatorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OperatorId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|op| op.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown operator {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Precision {
    Single,
    Double,
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Single => "single",
            Self::Double => "double",
        })
    }
}

impl FromStr for Precision {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "single" | "f32" => Ok(Self::Single),
            "double" | "f64" => Ok(Self::Double),
            other => Err(Error::InvalidArgument(format!("unknown precision {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquivarianceConfig {
    pub operator: OperatorId,
    pub bandlimit: usize,
    /// Azimuthal bandlimit of rotation-group inputs.
    pub azimuthal: usize,
    pub n_signals: usize,
    pub n_rotations: usize,
    pub seed: u64,
    pub precision: Precision,
    pub oversample: usize,
}

impl EquivarianceConfig {
    pub fn new(operator: OperatorId, bandlimit: usize) -> Self {
        Self {
            operator,
            bandlimit,
            azimuthal: bandlimit,
            n_signals: 10,
            n_rotations: 10,
            seed: 0,
            precision: Precision::Double,
            oversample: 1,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n_signals == 0 || self.n_rotations == 0 {
            return Err(Error::InvalidArgument(
                "need at least one signal and one rotation".into(),
            ));
        }
        if self.bandlimit == 0 || self.azimuthal == 0 || self.azimuthal > self.bandlimit {
            return Err(Error::InvalidArgument(format!(
                "need 1 <= N <= L, found L = {}, N = {}",
                self.bandlimit, self.azimuthal
            )));
        }
        if self.oversample == 0 {
            return Err(Error::InvalidArgument("oversampling factor must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquivarianceResult {
    pub mean: f64,
    /// Relative errors ordered by (signal, rotation).
    pub trials: Vec<f64>,
}

const SIGNAL_STREAM: u64 = 1;
const FILTER_STREAM: u64 = 2;
const ROTATION_STREAM: u64 = 3;

/// Operators shared by every trial of one configuration.
enum Shared {
    None,
    Mixing(MixingSet),
    S2(PointwiseS2),
    SO3(PointwiseSO3),
}

type Op<'a, T> = Box<dyn Fn(&GeneralizedSignal<T>) -> Result<GeneralizedSignal<T>> + Send + Sync + 'a>;

fn build_operator<'a, T: Real>(cfg: &EquivarianceConfig, shared: &'a Shared, rng: &mut Generator) -> Result<Op<'a, T>> {
    let big_l = cfg.bandlimit;
    let relu = |x: T| Nonlinearity::Relu.apply(x);
    Ok(match (cfg.operator, shared) {
        (OperatorId::S2ToS2Conv, _) => {
            let mut psi = SphereHarmonic::<T>::zeros(big_l);
            for l in 0..big_l {
                psi.set_coeff(l, 0, cplx(rng.complex_normal()));
            }
            Box::new(move |f| {
                conv_s2_axisym(&SphereHarmonic::try_from(f.clone())?, &psi, Normalization::Explicit)
                    .map(SphereHarmonic::into_signal)
            })
        }
        (OperatorId::S2ToSO3Conv, _) => {
            let psi = SphereHarmonic::try_from(rng.signal::<T>(&SignalType::sphere(big_l)))?;
            Box::new(move |f| {
                conv_s2_to_so3(&SphereHarmonic::try_from(f.clone())?, &psi, Normalization::Explicit)
                    .map(RotationHarmonic::into_signal)
            })
        }
        (OperatorId::SO3ToSO3Conv, _) => {
            let n = cfg.azimuthal;
            let psi = RotationHarmonic::from_signal(rng.signal::<T>(&SignalType::rotation(big_l, n)), n)?;
            Box::new(move |f| {
                conv_so3(&RotationHarmonic::from_signal(f.clone(), n)?, &psi).map(RotationHarmonic::into_signal)
            })
        }
        (OperatorId::TensorGeneralizedConv | OperatorId::TensorGeneralizedConvMst, Shared::Mixing(mixing)) => {
            let tau_g = tensor_output_type(&SignalType::sphere(big_l), mixing);
            let psi = HarmonicFilter::<T>::random_from(tau_g, SignalType::sphere(big_l), rng)?;
            Box::new(move |f| generalized_conv(&tensor_activation(f, mixing)?, &psi))
        }
        (OperatorId::S2Relu, Shared::S2(op)) => Box::new(move |f| {
            op.apply(&SphereHarmonic::try_from(f.clone())?, relu)
                .map(SphereHarmonic::into_signal)
        }),
        (OperatorId::SO3Relu, Shared::SO3(op)) => {
            let n = cfg.azimuthal;
            Box::new(move |f| {
                op.apply(&RotationHarmonic::from_signal(f.clone(), n)?, relu)
                    .map(RotationHarmonic::into_signal)
            })
        }
        _ => unreachable!("shared state matches the operator"),
    })
}

/// Relative distance in the `L^2` norm of the output domain: coefficient
/// norm on the sphere, degree-weighted by `2l+1` on the rotation group.
fn l2_relative_error<T: Real>(a: &GeneralizedSignal<T>, b: &GeneralizedSignal<T>, rotation_group: bool) -> Result<f64> {
    a.require_same_type(b)?;
    let (mut num, mut den) = (0.0, 0.0);
    for l in 0..a.bandlimit() {
        let w = if rotation_group { (2 * l + 1) as f64 } else { 1.0 };
        for (x, y) in a.degree(l).iter().zip(b.degree(l)) {
            let x = widen(*x);
            num += w * (x - widen(*y)).norm_sqr();
            den += w * x.norm_sqr();
        }
    }
    if den == 0.0 {
        return Err(Error::ZeroNorm);
    }
    Ok((num / den).sqrt())
}

/// Runs the protocol in the scalar type `T`, ignoring `cfg.precision`.
pub fn equivariance_error_typed<T: Real>(cfg: &EquivarianceConfig) -> Result<EquivarianceResult> {
    cfg.validate()?;
    let shared = match cfg.operator {
        OperatorId::TensorGeneralizedConv => Shared::Mixing(MixingSet::of_kind(MixingKind::Full, cfg.bandlimit)),
        OperatorId::TensorGeneralizedConvMst => Shared::Mixing(MixingSet::of_kind(MixingKind::Mst, cfg.bandlimit)),
        OperatorId::S2Relu => Shared::S2(PointwiseS2::new(cfg.bandlimit, cfg.oversample)?),
        OperatorId::SO3Relu => Shared::SO3(PointwiseSO3::new(cfg.bandlimit, cfg.azimuthal, cfg.oversample)?),
        _ => Shared::None,
    };
    let tau = cfg.operator.input_type(cfg.bandlimit, cfg.azimuthal);
    let rotations: Vec<_> = (0..cfg.n_rotations as u64)
        .map(|j| random_rotation(derive_seed(derive_seed(cfg.seed, ROTATION_STREAM), j)))
        .collect();
    let on_group = cfg.operator.output_on_rotation_group();
    let per_signal: Vec<Vec<f64>> = (0..cfg.n_signals as u64)
        .into_par_iter()
        .map(|i| {
            let f = Generator::new(derive_seed(derive_seed(cfg.seed, SIGNAL_STREAM), i)).signal::<T>(&tau);
            let mut rng = Generator::new(derive_seed(derive_seed(cfg.seed, FILTER_STREAM), i));
            let op = build_operator::<T>(cfg, &shared, &mut rng)?;
            let af = op(&f)?;
            rotations
                .iter()
                .map(|rot| {
                    let a = op(&rotate_harmonic(&f, rot))?;
                    l2_relative_error(&a, &rotate_harmonic(&af, rot), on_group)
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let trials: Vec<f64> = per_signal.into_iter().flatten().collect();
    let mean = trials.iter().sum::<f64>() / trials.len() as f64;
    Ok(EquivarianceResult { mean, trials })
}

/// Mean relative equivariance error `||A(R f) - R(A f)|| / ||A(R f)||`
/// over random signals, per-signal random filters and random rotations.
pub fn equivariance_error(cfg: &EquivarianceConfig) -> Result<EquivarianceResult> {
    match cfg.precision {
        Precision::Single => equivariance_error_typed::<f32>(cfg),
        Precision::Double => equivariance_error_typed::<f64>(cfg),
    }
}
