use anyhow::Result;
use gscnn_core::sampling::{sht_forward, sht_inverse, so3_forward, so3_inverse, S2Grid, SO3Grid};
use gscnn_core::signals::{relative_error, Generator, RotationHarmonic, SignalType, SphereHarmonic};
use serde::Serialize;

use super::Outcome;
use crate::cli::RoundtripArgs;
use crate::report;

const TOLERANCE: f64 = 1e-12;

#[derive(Debug, Serialize)]
struct Row {
    domain: &'static str,
    #[serde(rename = "L")]
    bandlimit: usize,
    #[serde(rename = "N")]
    azimuthal: usize,
    max_rel_error: f64,
}

pub fn run(args: &RoundtripArgs) -> Result<Outcome> {
    let mut rng = Generator::new(args.seed);
    let mut rows = Vec::new();
    for &l in &args.bandlimits {
        let grid = S2Grid::new(l)?;
        let mut worst = 0.0f64;
        for _ in 0..args.count {
            let f: SphereHarmonic<f64> = rng.signal(&SignalType::sphere(l)).try_into()?;
            let back = sht_forward(&sht_inverse(&f, &grid)?);
            worst = worst.max(relative_error(back.as_signal(), f.as_signal())?);
        }
        rows.push(Row {
            domain: "s2",
            bandlimit: l,
            azimuthal: 0,
            max_rel_error: worst,
        });
        if args.sphere_only {
            continue;
        }
        let mut azimuthal: Vec<usize> = Vec::new();
        for n in args.azimuthal.iter().map(|&n| if n == 0 { l } else { n.min(l) }) {
            if !azimuthal.contains(&n) {
                azimuthal.push(n);
            }
        }
        for n in azimuthal {
            let grid = SO3Grid::new(l, n)?;
            let mut worst = 0.0f64;
            for _ in 0..args.count {
                let g = RotationHarmonic::from_signal(rng.signal(&SignalType::rotation(l, n)), n)?;
                let back = so3_forward(&so3_inverse(&g, &grid)?);
                worst = worst.max(relative_error(back.as_signal(), g.as_signal())?);
            }
            rows.push(Row {
                domain: "so3",
                bandlimit: l,
                azimuthal: n,
                max_rel_error: worst,
            });
        }
    }
    let mut failures = Vec::new();
    for r in &rows {
        eprintln!(
            "{:<4} L={:<4} N={:<4} {:.3e}",
            r.domain, r.bandlimit, r.azimuthal, r.max_rel_error
        );
        if !(r.max_rel_error < TOLERANCE) {
            failures.push(format!(
                "{} L={} N={}: error {:.3e} exceeds {TOLERANCE:e}",
                r.domain, r.bandlimit, r.azimuthal, r.max_rel_error
            ));
        }
    }
    report::write_rows(&rows, &args.output, "roundtrip")?;
    Ok(Outcome::from_failures(args.output.check, failures))
}
