use anyhow::Result;
use gscnn_core::costmodel::{compare_efficient_vs_baseline, Comparison, MEMORY_ASSUMPTIONS};

use super::Outcome;
use crate::cli::CostArgs;
use crate::plot::{self, Series};
use crate::report;

/// `(L, flop factor, memory factor)` reported for `K = 4`.
const PUBLISHED: [(usize, f64, f64); 2] = [(64, 51.0, 16.0), (128, 101.0, 29.0)];
const RELATIVE_TOLERANCE: f64 = 0.2;

pub fn run(args: &CostArgs) -> Result<Outcome> {
    let rows = args
        .bandlimits
        .iter()
        .map(|&l| compare_efficient_vs_baseline(l, args.channels))
        .collect::<gscnn_core::Result<Vec<_>>>()?;

    eprintln!("memory assumptions:");
    for a in MEMORY_ASSUMPTIONS {
        eprintln!("  - {a}");
    }
    for r in &rows {
        eprintln!(
            "L={:<4} K={:<3} flops x{:<8.2} memory x{:.2}",
            r.bandlimit, r.channels, r.flop_factor, r.mem_factor
        );
    }
    report::write_rows(&rows, &args.output, "cost")?;
    if let Some(path) = &args.plot {
        let series = [
            Series {
                name: "flop reduction",
                points: rows.iter().map(|r| (r.bandlimit as f64, r.flop_factor)).collect(),
            },
            Series {
                name: "memory reduction",
                points: rows.iter().map(|r| (r.bandlimit as f64, r.mem_factor)).collect(),
            },
        ];
        plot::line_plot(
            path,
            &format!("Reduction factors, K = {}", args.channels),
            "L",
            "factor",
            &series,
        )?;
    }
    Ok(Outcome::from_failures(args.output.check, failures(&rows)))
}

fn within(value: f64, target: f64) -> bool {
    (value - target).abs() <= RELATIVE_TOLERANCE * target
}

fn failures(rows: &[Comparison]) -> Vec<String> {
    let mut out = Vec::new();
    for r in rows.iter().filter(|r| r.channels == 4) {
        for &(l, flops, mem) in &PUBLISHED {
            if r.bandlimit != l {
                continue;
            }
            if !within(r.flop_factor, flops) {
                out.push(format!(
                    "L={l}: flop factor {:.2} not within 20% of {flops}",
                    r.flop_factor
                ));
            }
            if !within(r.mem_factor, mem) {
                out.push(format!(
                    "L={l}: memory factor {:.2} not within 20% of {mem}",
                    r.mem_factor
                ));
            }
        }
    }
    let mut sorted: Vec<&Comparison> = rows.iter().filter(|r| r.bandlimit >= 16).collect();
    sorted.sort_by_key(|r| r.bandlimit);
    for w in sorted.windows(2) {
        if w[0].bandlimit == w[1].bandlimit {
            continue;
        }
        if !(w[1].flop_factor > w[0].flop_factor) || !(w[1].mem_factor > w[0].mem_factor) {
            out.push(format!(
                "factors not increasing from L={} to L={}",
                w[0].bandlimit, w[1].bandlimit
            ));
        }
    }
    out
}
