use serde::Serialize;

use super::equivariance::{equivariance_error, EquivarianceConfig, OperatorId, Precision};
use crate::error::Result;

/// Row labels and published mean errors of the layer equivariance table.
pub const PUBLISHED_TABLE: [(&str, f64); 12] = [
    ("S2 to S2 conv.", 4.4e-7),
    ("S2 to SO(3) conv.", 5.3e-7),
    ("SO(3) to SO(3) conv.", 9.3e-7),
    ("Tensor-product activation -> Generalized conv.", 5.0e-7),
    ("S2 ReLU", 3.4e-1),
    ("S2 ReLU (2x oversampling)", 8.9e-2),
    ("S2 ReLU (4x oversampling)", 2.9e-2),
    ("S2 ReLU (8x oversampling)", 1.3e-2),
    ("SO(3) ReLU", 3.7e-1),
    ("SO(3) ReLU (2x oversampling)", 9.8e-2),
    ("SO(3) ReLU (4x oversampling)", 3.2e-2),
    ("SO(3) ReLU (8x oversampling)", 9.6e-3),
];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableConfig {
    pub seed: u64,
    pub bandlimit: usize,
    /// Azimuthal bandlimit of the rotation-group ReLU rows. The convolution
    /// rows use `N = L`.
    pub relu_azimuthal: usize,
    pub n_signals: usize,
    pub n_rotations: usize,
    pub precision: Precision,
}

impl Default for TableConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            bandlimit: 32,
            relu_azimuthal: 4,
            n_signals: 10,
            n_rotations: 10,
            precision: Precision::Single,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableRow {
    pub row_label: String,
    pub mean_error: f64,
    pub n_signals: usize,
    pub n_rotations: usize,
    #[serde(rename = "L")]
    pub bandlimit: usize,
    pub precision: Precision,
    pub seed: u64,
}

fn row_configs(cfg: &TableConfig) -> Vec<EquivarianceConfig> {
    let base = |operator, azimuthal, oversample| EquivarianceConfig {
        operator,
        bandlimit: cfg.bandlimit,
        azimuthal,
        n_signals: cfg.n_signals,
        n_rotations: cfg.n_rotations,
        seed: cfg.seed,
        precision: cfg.precision,
        oversample,
    };
    let l = cfg.bandlimit;
    let mut rows = vec![
        base(OperatorId::S2ToS2Conv, l, 1),
        base(OperatorId::S2ToSO3Conv, l, 1),
        base(OperatorId::SO3ToSO3Conv, l, 1),
        base(OperatorId::TensorGeneralizedConv, l, 1),
    ];
    for c in [1, 2, 4, 8] {
        rows.push(base(OperatorId::S2Relu, l, c));
    }
    for c in [1, 2, 4, 8] {
        rows.push(base(OperatorId::SO3Relu, cfg.relu_azimuthal.min(l), c));
    }
    rows
}

/// All twelve rows of the layer equivariance table, in published order.
pub fn run_table_d(cfg: &TableConfig) -> Result<Vec<TableRow>> {
    row_configs(cfg)
        .into_iter()
        .zip(PUBLISHED_TABLE)
        .map(|(row, (label, _))| {
            let started = std::time::Instant::now();
            let result = equivariance_error(&row)?;
            log::info!("{label}: {:.3e} ({:.1?})", result.mean, started.elapsed());
            Ok(TableRow {
                row_label: label.to_string(),
                mean_error: result.mean,
                n_signals: cfg.n_signals,
                n_rotations: cfg.n_rotations,
                bandlimit: cfg.bandlimit,
                precision: cfg.precision,
                seed: cfg.seed,
            })
        })
        .collect()
}
