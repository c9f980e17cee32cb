//! Analytical flop, memory and parameter counts for a tensor-product
//! activation followed by a generalized convolution.
//!
//! Flops: complex multiply 6, complex add 2, real-by-complex scale 2. A
//! Clebsch-Gordan term costs one complex product, one real scale and one
//! accumulate (10); a filter multiply-accumulate costs 8.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::mixing::{edge_weight, MixingKind};
use crate::signals::SignalType;

pub const FLOPS_PER_CG_TERM: u64 = 10;
pub const FLOPS_PER_MAC: u64 = 8;

/// Assumptions behind every memory figure; reports print these verbatim.
pub const MEMORY_ASSUMPTIONS: &[&str] = &[
    "batch size 1",
    "complex values stored as two reals of the declared precision",
    "activations: input, expanded intermediate and output representations",
    "weights: every filter coefficient of the layer",
    "gradients: one buffer for the weights and one for the expanded intermediate",
    "Clebsch-Gordan tables: one dense (2l+1) x (2l1+1)(2l2+1) real matrix per pair of the mixing set",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConvKind {
    Unconstrained,
    Constrained,
}

/// A tensor-product activation (applied channel-wise over `k_in` channels of
/// type `tau_in`) followed by a generalized convolution to `k_out` channels.
///
/// For the unconstrained kind, `tau_out` is the output type per channel. For
/// the constrained kind it is the intermediate type `tau_g'`, which is also
/// the output type per channel.
#[derive(Debug, Clone, PartialEq)]
pub struct LayerCostSpec {
    pub k_in: usize,
    pub k_out: usize,
    pub tau_in: SignalType,
    pub tau_out: SignalType,
    pub mixing: MixingKind,
    pub conv: ConvKind,
    pub bytes_per_real: usize,
}

impl LayerCostSpec {
    pub fn bandlimit(&self) -> usize {
        self.tau_in.bandlimit()
    }

    fn validate(&self) -> Result<()> {
        if self.tau_out.bandlimit() != self.bandlimit() {
            return Err(Error::BandlimitMismatch {
                expected: self.bandlimit(),
                found: self.tau_out.bandlimit(),
            });
        }
        if self.k_in == 0 || self.k_out == 0 || self.bytes_per_real == 0 {
            return Err(Error::InvalidArgument(
                "channel counts and precision must be positive".into(),
            ));
        }
        Ok(())
    }

    /// Per degree: fragments per channel after the activation, and the dense
    /// Clebsch-Gordan table size of the mixing set.
    fn expansion(&self) -> Result<Vec<(u64, u64)>> {
        let big_l = self.bandlimit();
        (0..big_l)
            .map(|l| {
                let mut frags = 0u64;
                let mut table = 0u64;
                for (a, b) in self.mixing.pairs(big_l, l)? {
                    frags += (self.tau_in.get(a) * self.tau_in.get(b)) as u64;
                    table += ((2 * l + 1) * (2 * a + 1) * (2 * b + 1)) as u64;
                }
                Ok((frags, table))
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct CostReport {
    pub flops: u64,
    pub memory_bytes: u64,
    pub parameters: u64,
}

/// Flops of the channel-wise activation.
pub fn count_activation_flops(spec: &LayerCostSpec) -> Result<u64> {
    spec.validate()?;
    let big_l = spec.bandlimit();
    let mut total = 0u64;
    for l in 0..big_l {
        for (a, b) in spec.mixing.pairs(big_l, l)? {
            let t = (spec.tau_in.get(a) * spec.tau_in.get(b)) as u64;
            total += edge_weight(a, b, l)? as u64 * t;
        }
    }
    Ok(total * spec.k_in as u64 * FLOPS_PER_CG_TERM)
}

/// Flops and parameters of the convolution (memory left at zero).
pub fn count_conv(spec: &LayerCostSpec) -> Result<CostReport> {
    spec.validate()?;
    let expansion = spec.expansion()?;
    let (k_in, k_out) = (spec.k_in as u64, spec.k_out as u64);
    let mut report = CostReport::default();
    for (l, &(tau_g, _)) in expansion.iter().enumerate() {
        let dim = (2 * l + 1) as u64;
        let tau_o = spec.tau_out.get(l) as u64;
        let (macs, params) = match spec.conv {
            ConvKind::Unconstrained => (dim * k_in * tau_g * k_out * tau_o, k_in * tau_g * k_out * tau_o),
            ConvKind::Constrained => (
                dim * (k_in * tau_g * tau_o + k_in * tau_o * tau_o + k_in * k_out * tau_o),
                tau_g * tau_o + k_in * tau_o * tau_o + k_in * k_out,
            ),
        };
        report.flops += macs * FLOPS_PER_MAC;
        report.parameters += params;
    }
    Ok(report)
}

/// Activation plus convolution, with memory per [`MEMORY_ASSUMPTIONS`].
pub fn count_layer(spec: &LayerCostSpec) -> Result<CostReport> {
    let conv = count_conv(spec)?;
    let expansion = spec.expansion()?;
    let (k_in, k_out) = (spec.k_in as u64, spec.k_out as u64);
    let mut reals = 0u64;
    let mut cg_reals = 0u64;
    for (l, &(tau_g, table)) in expansion.iter().enumerate() {
        let dim = (2 * l + 1) as u64;
        let input = 2 * dim * k_in * spec.tau_in.get(l) as u64;
        let expanded = 2 * dim * k_in * tau_g;
        let output = 2 * dim * k_out * spec.tau_out.get(l) as u64;
        reals += input + 2 * expanded + output;
        cg_reals += table;
    }
    reals += 2 * 2 * conv.parameters + cg_reals;
    Ok(CostReport {
        flops: count_activation_flops(spec)? + conv.flops,
        memory_bytes: reals * spec.bytes_per_real as u64,
        parameters: conv.parameters,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Comparison {
    #[serde(rename = "L")]
    pub bandlimit: usize,
    #[serde(rename = "K")]
    pub channels: usize,
    pub flops_base: u64,
    pub flops_eff: u64,
    pub flop_factor: f64,
    pub mem_base: u64,
    pub mem_eff: u64,
    pub mem_factor: f64,
}

/// Baseline: one channel of type `(K, ..., K)`, full mixing sets,
/// unconstrained convolution back to type `(K, ..., K)`. Efficient: `K`
/// channels of type `(1, ..., 1)`, MST mixing sets, constrained convolution
/// with `tau_g' = (1, ..., 1)` and `K` output channels. Single precision.
pub fn compare_efficient_vs_baseline(bandlimit: usize, channels: usize) -> Result<Comparison> {
    if bandlimit == 0 || channels == 0 {
        return Err(Error::InvalidArgument("L and K must be positive".into()));
    }
    let base = count_layer(&LayerCostSpec {
        k_in: 1,
        k_out: 1,
        tau_in: SignalType::uniform(bandlimit, channels),
        tau_out: SignalType::uniform(bandlimit, channels),
        mixing: MixingKind::Full,
        conv: ConvKind::Unconstrained,
        bytes_per_real: 4,
    })?;
    let eff = count_layer(&LayerCostSpec {
        k_in: channels,
        k_out: channels,
        tau_in: SignalType::uniform(bandlimit, 1),
        tau_out: SignalType::uniform(bandlimit, 1),
        mixing: MixingKind::Mst,
        conv: ConvKind::Constrained,
        bytes_per_real: 4,
    })?;
    Ok(Comparison {
        bandlimit,
        channels,
        flops_base: base.flops,
        flops_eff: eff.flops,
        flop_factor: base.flops as f64 / eff.flops as f64,
        mem_base: base.memory_bytes,
        mem_eff: eff.memory_bytes,
        mem_factor: base.memory_bytes as f64 / eff.memory_bytes as f64,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SamplingScheme {
    /// Equiangular sampling with `L` colatitudes including the south pole
    /// once and `2L-1` longitudes.
    Mw,
    /// `2L x 2L` equiangular sampling.
    Dh,
}

impl fmt::Display for SamplingScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Mw => "mw",
            Self::Dh => "dh",
        })
    }
}

impl FromStr for SamplingScheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "mw" => Ok(Self::Mw),
            "dh" => Ok(Self::Dh),
            other => Err(Error::InvalidArgument(format!("unknown sampling scheme {other:?}"))),
        }
    }
}

/// Sample count on the sphere (`azimuthal = None`) or on the rotation group.
///
/// Sphere: `mw = (L-1)(2L-1) + 1`, `dh = 2L * 2L`. Rotation group: the
/// sphere count times `2N-1` (mw) or `2N` (dh) samples in `gamma`.
pub fn grid_sample_counts(bandlimit: usize, azimuthal: Option<usize>, scheme: SamplingScheme) -> u64 {
    let l = bandlimit as u64;
    let sphere = match scheme {
        SamplingScheme::Mw => (l.saturating_sub(1)) * (2 * l).saturating_sub(1) + 1,
        SamplingScheme::Dh => 4 * l * l,
    };
    match azimuthal {
        None => sphere,
        Some(n) => {
            let n = n as u64;
            sphere
                * match scheme {
                    SamplingScheme::Mw => (2 * n).saturating_sub(1),
                    SamplingScheme::Dh => 2 * n,
                }
        }
    }
}

/// Wigner-stage multiply-accumulates of one forward or inverse transform on
/// the rotation group with `L` nodes in `beta`: `L sum_l (2l+1)(2 min(l, N-1) + 1)`,
/// approximately `2 N L^3` for `N << L`.
pub fn so3_transform_ops(bandlimit: usize, azimuthal: usize) -> u64 {
    let n = azimuthal.max(1);
    bandlimit as u64
        * (0..bandlimit)
            .map(|l| ((2 * l + 1) * (2 * l.min(n - 1) + 1)) as u64)
            .sum::<u64>()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(l: usize, k: usize, mixing: MixingKind) -> LayerCostSpec {
        LayerCostSpec {
            k_in: k,
            k_out: k,
            tau_in: SignalType::uniform(l, 1),
            tau_out: SignalType::uniform(l, 1),
            mixing,
            conv: ConvKind::Constrained,
            bytes_per_real: 4,
        }
    }

    #[test]
    fn single_term() {
        assert_eq!(
            count_activation_flops(&spec(1, 1, MixingKind::Full)).unwrap(),
            FLOPS_PER_CG_TERM
        );
    }

    #[test]
    fn channelwise_scales_with_k() {
        let one = count_activation_flops(&spec(8, 1, MixingKind::Mst)).unwrap();
        assert_eq!(count_activation_flops(&spec(8, 5, MixingKind::Mst)).unwrap(), 5 * one);
    }

    #[test]
    fn full_over_mst_is_nondecreasing() {
        let mut last = 0.0;
        for l in 1..24 {
            let r = count_activation_flops(&spec(l, 2, MixingKind::Full)).unwrap() as f64
                / count_activation_flops(&spec(l, 2, MixingKind::Mst)).unwrap() as f64;
            assert!(r >= last, "L={l}: {r} < {last}");
            last = r;
        }
    }

    #[test]
    fn parameter_formulas() {
        let tau_in = SignalType::new(vec![2, 1, 1]);
        let tau_gp = SignalType::new(vec![1, 2, 1]);
        let mut s = LayerCostSpec {
            k_in: 3,
            k_out: 2,
            tau_in: tau_in.clone(),
            tau_out: tau_gp.clone(),
            mixing: MixingKind::Full,
            conv: ConvKind::Constrained,
            bytes_per_real: 8,
        };
        let tau_g = crate::layers::tensor_output_type(&tau_in, &crate::mixing::MixingSet::full(3));
        assert_eq!(
            count_conv(&s).unwrap().parameters as usize,
            crate::layers::constrained_parameter_count(&tau_g, &tau_gp, 3, 2)
        );
        s.conv = ConvKind::Unconstrained;
        assert_eq!(
            count_conv(&s).unwrap().parameters as usize,
            crate::layers::unconstrained_parameter_count(&tau_g, &tau_gp, 3, 2)
        );
    }

    #[test]
    fn sample_counts() {
        assert_eq!(grid_sample_counts(1, None, SamplingScheme::Mw), 1);
        let r = grid_sample_counts(512, None, SamplingScheme::Dh) as f64
            / grid_sample_counts(512, None, SamplingScheme::Mw) as f64;
        assert!((r - 2.0).abs() < 0.01);
        assert_eq!(grid_sample_counts(4, Some(2), SamplingScheme::Mw), 22 * 3);
        assert_eq!(so3_transform_ops(1, 1), 1);
    }

    #[test]
    fn scheme_parse() {
        assert_eq!("MW".parse::<SamplingScheme>().unwrap(), SamplingScheme::Mw);
        assert!("gl".parse::<SamplingScheme>().is_err());
    }
}
