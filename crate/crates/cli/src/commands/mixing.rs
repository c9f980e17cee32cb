use anyhow::{ensure, Result};
use gscnn_core::mixing::{
    edge_weight, full_set, mst_set, ordered_pair_count, rmst_set, DisjointSets, MixingKind, Pair,
};
use serde::Serialize;

use super::Outcome;
use crate::cli::MixingArgs;
use crate::report;

#[derive(Debug, Serialize)]
struct PairRow {
    ell: usize,
    l1: usize,
    l2: usize,
    cg_terms: usize,
}

#[derive(Debug, Serialize)]
struct StatsRow {
    #[serde(rename = "L")]
    bandlimit: usize,
    ell: usize,
    full_ordered: usize,
    full: usize,
    mst: usize,
    rmst: usize,
    full_cg_terms: usize,
    mst_cg_terms: usize,
    rmst_cg_terms: usize,
}

pub fn run(args: &MixingArgs) -> Result<Outcome> {
    let big_l = args.bandlimit;
    ensure!(big_l > 0, "bandlimit must be positive");
    let degrees: Vec<usize> = match args.ell {
        Some(l) => {
            ensure!(l < big_l, "degree {l} must be below the bandlimit {big_l}");
            vec![l]
        }
        None => (0..big_l).collect(),
    };
    let kind: MixingKind = args.kind.into();

    let mut failures = Vec::new();
    for &l in &degrees {
        failures.extend(check_degree(big_l, l)?);
    }

    if args.action == "stats" {
        let rows = degrees.iter().map(|&l| stats(big_l, l)).collect::<Result<Vec<_>>>()?;
        for r in &rows {
            eprintln!("ell={:<4} full={:<5} mst={:<4} rmst={}", r.ell, r.full, r.mst, r.rmst);
        }
        report::write_rows(&rows, &args.output, "mixing")?;
    } else {
        let mut rows = Vec::new();
        for &l in &degrees {
            let mut pairs = kind.pairs(big_l, l)?;
            if !args.undirected {
                pairs = ordered(&pairs);
            }
            for (l1, l2) in pairs {
                rows.push(PairRow {
                    ell: l,
                    l1,
                    l2,
                    cg_terms: edge_weight(l1, l2, l)?,
                });
            }
        }
        eprintln!("{} {kind} pairs", rows.len());
        report::write_rows(&rows, &args.output, "mixing")?;
    }
    Ok(Outcome::from_failures(args.output.check, failures))
}

/// Both orientations of every pair, sorted.
fn ordered(pairs: &[Pair]) -> Vec<Pair> {
    let mut out: Vec<Pair> = pairs
        .iter()
        .flat_map(|&(a, b)| if a == b { vec![(a, b)] } else { vec![(a, b), (b, a)] })
        .collect();
    out.sort_unstable();
    out
}

fn weight(pairs: &[Pair], l: usize) -> Result<usize> {
    Ok(pairs
        .iter()
        .map(|&(a, b)| edge_weight(a, b, l))
        .sum::<gscnn_core::Result<usize>>()?)
}

fn stats(big_l: usize, l: usize) -> Result<StatsRow> {
    let (full, mst, rmst) = (full_set(big_l, l)?, mst_set(big_l, l)?, rmst_set(big_l, l)?);
    Ok(StatsRow {
        bandlimit: big_l,
        ell: l,
        full_ordered: ordered_pair_count(big_l, l)?,
        full: full.len(),
        mst: mst.len(),
        rmst: rmst.len(),
        full_cg_terms: weight(&full, l)?,
        mst_cg_terms: weight(&mst, l)?,
        rmst_cg_terms: weight(&rmst, l)?,
    })
}

fn components(n: usize, pairs: &[Pair]) -> Vec<usize> {
    let mut sets = DisjointSets::new(n);
    for &(a, b) in pairs {
        sets.union(a, b);
    }
    sets.labels()
}

/// Size bounds of the MST and reduced sets, and equal connectivity of the
/// MST subgraph and the full graph.
fn check_degree(big_l: usize, l: usize) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let (full, mst, rmst) = (full_set(big_l, l)?, mst_set(big_l, l)?, rmst_set(big_l, l)?);
    if mst.len() > 2 * big_l {
        out.push(format!(
            "ell={l}: MST set has {} pairs, more than 2L = {}",
            mst.len(),
            2 * big_l
        ));
    }
    let rmst_bound = 2 * (2 * big_l).next_power_of_two().trailing_zeros() as usize + 2;
    if rmst.len() > rmst_bound {
        out.push(format!(
            "ell={l}: reduced set has {} pairs, more than {rmst_bound}",
            rmst.len()
        ));
    }
    if components(big_l, &full) != components(big_l, &mst) {
        out.push(format!(
            "ell={l}: MST subgraph connectivity differs from the full graph"
        ));
    }
    Ok(out)
}
