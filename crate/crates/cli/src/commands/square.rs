use anyhow::Result;
use gscnn_core::harness::{gaunt_squaring, pointwise_squaring};
use gscnn_core::signals::{relative_error, Generator, SignalType, SphereHarmonic};
use serde::Serialize;

use super::Outcome;
use crate::cli::SquareArgs;
use crate::report;

const TOLERANCE: f64 = 1e-10;

#[derive(Debug, Serialize)]
struct Row {
    signal: usize,
    #[serde(rename = "L")]
    bandlimit: usize,
    seed: u64,
    rel_error: f64,
}

pub fn run(args: &SquareArgs) -> Result<Outcome> {
    let mut rng = Generator::new(args.seed);
    let mut rows = Vec::with_capacity(args.count);
    for i in 0..args.count {
        let f: SphereHarmonic<f64> = rng.signal(&SignalType::sphere(args.bandlimit)).try_into()?;
        let algebraic = gaunt_squaring(&f)?;
        let sampled = pointwise_squaring(&f)?;
        rows.push(Row {
            signal: i,
            bandlimit: args.bandlimit,
            seed: args.seed,
            rel_error: relative_error(algebraic.as_signal(), sampled.as_signal())?,
        });
    }
    let mut failures = Vec::new();
    for r in &rows {
        eprintln!("signal {:<3} {:.3e}", r.signal, r.rel_error);
        if !(r.rel_error < TOLERANCE) {
            failures.push(format!(
                "signal {}: error {:.3e} exceeds {TOLERANCE:e}",
                r.signal, r.rel_error
            ));
        }
    }
    report::write_rows(&rows, &args.output, "square")?;
    Ok(Outcome::from_failures(args.output.check, failures))
}
