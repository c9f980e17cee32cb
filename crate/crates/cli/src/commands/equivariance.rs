use anyhow::{Context, Result};
use gscnn_core::harness::{
    equivariance_error, run_table_d, EquivarianceConfig, OperatorId, Precision, TableConfig, TableRow,
};

use super::Outcome;
use crate::cli::EquivarianceArgs;
use crate::{plot, report};

const S2_RELU_RANGE: (f64, f64) = (0.24, 0.44);
const SO3_RELU_RANGE: (f64, f64) = (0.26, 0.48);
const RELU_8X_MAX: f64 = 0.02;

fn exact_tolerance(p: Precision) -> f64 {
    match p {
        Precision::Single => 1e-5,
        Precision::Double => 1e-10,
    }
}

pub fn run(args: &EquivarianceArgs) -> Result<Outcome> {
    let precision: Precision = args.precision.into();
    let (rows, failures) = match &args.operator {
        Some(name) => single(args, name, precision)?,
        None => table(args, precision)?,
    };
    for r in &rows {
        eprintln!("{:<50} {:.3e}", r.row_label, r.mean_error);
    }
    report::write_rows(&rows, &args.output, "equivariance")?;
    if let Some(path) = &args.plot {
        let bars: Vec<(String, f64)> = rows.iter().map(|r| (r.row_label.clone(), r.mean_error)).collect();
        plot::bar_plot(path, "Layer equivariance", "mean relative error", &bars)?;
    }
    Ok(Outcome::from_failures(args.output.check, failures))
}

fn single(args: &EquivarianceArgs, name: &str, precision: Precision) -> Result<(Vec<TableRow>, Vec<String>)> {
    let operator: OperatorId = name.parse()?;
    let cfg = EquivarianceConfig {
        operator,
        bandlimit: args.bandlimit,
        azimuthal: args.azimuthal.unwrap_or(args.bandlimit),
        n_signals: args.n_signals,
        n_rotations: args.n_rotations,
        seed: args.seed,
        precision,
        oversample: args.oversample,
    };
    let result = equivariance_error(&cfg).with_context(|| format!("running {name}"))?;
    let mut failures = Vec::new();
    let tol = exact_tolerance(precision);
    if operator.is_exact() && !(result.mean < tol) {
        failures.push(format!("{name}: mean error {:.3e} exceeds {tol:e}", result.mean));
    }
    let row = TableRow {
        row_label: operator.name().to_string(),
        mean_error: result.mean,
        n_signals: cfg.n_signals,
        n_rotations: cfg.n_rotations,
        bandlimit: cfg.bandlimit,
        precision,
        seed: cfg.seed,
    };
    Ok((vec![row], failures))
}

fn table(args: &EquivarianceArgs, precision: Precision) -> Result<(Vec<TableRow>, Vec<String>)> {
    let cfg = TableConfig {
        seed: args.seed,
        bandlimit: args.bandlimit,
        relu_azimuthal: args.relu_azimuthal,
        n_signals: args.n_signals,
        n_rotations: args.n_rotations,
        precision,
    };
    let rows = run_table_d(&cfg)?;
    Ok((rows.clone(), table_failures(&rows, precision)))
}

/// Tolerances of the full table: exact rows below the precision bound, each
/// ReLU ladder strictly decreasing with its first rung in range and its last
/// rung small.
pub fn table_failures(rows: &[TableRow], precision: Precision) -> Vec<String> {
    let mut failures = Vec::new();
    let tol = exact_tolerance(precision);
    for r in &rows[..4] {
        if !(r.mean_error < tol) {
            failures.push(format!("{}: {:.3e} exceeds {tol:e}", r.row_label, r.mean_error));
        }
    }
    for (ladder, (lo, hi)) in [(&rows[4..8], S2_RELU_RANGE), (&rows[8..12], SO3_RELU_RANGE)] {
        let first = &ladder[0];
        if !(lo..=hi).contains(&first.mean_error) {
            failures.push(format!(
                "{}: {:.3e} outside [{lo}, {hi}]",
                first.row_label, first.mean_error
            ));
        }
        for w in ladder.windows(2) {
            if !(w[1].mean_error < w[0].mean_error) {
                failures.push(format!("{} does not decrease from {}", w[1].row_label, w[0].row_label));
            }
        }
        let last = &ladder[3];
        if !(last.mean_error <= RELU_8X_MAX) {
            failures.push(format!(
                "{}: {:.3e} exceeds {RELU_8X_MAX}",
                last.row_label, last.mean_error
            ));
        }
    }
    failures
}
