//! Degree-mixing sets for the tensor-product activation.
//!
//! For output degree `l` the graph `G^l_L` has the degrees `0..L` as nodes
//! and an undirected edge `(l1, l2)` (stored with `l1 <= l2`) whenever
//! `|l1 - l2| <= l <= l1 + l2`. The full set takes every edge, the MST set a
//! minimum spanning forest plus every loop, and the reduced set keeps the
//! loop `(l, l)` plus the tree edges whose hop distance from node `l` is a
//! power of two.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::so3::satisfies_triangle;

pub type Pair = (usize, usize);

fn check_degree(bandlimit: usize, l: usize) -> Result<()> {
    if l >= bandlimit {
        return Err(Error::DegreeOutOfRange { degree: l, bandlimit });
    }
    Ok(())
}

/// Every undirected pair `(l1 <= l2 < input_bandlimit)` coupling to `l`.
fn pairs_for(input_bandlimit: usize, l: usize) -> Vec<Pair> {
    let mut out = Vec::new();
    for l1 in 0..input_bandlimit {
        for l2 in l1..input_bandlimit {
            if satisfies_triangle(l1, l2, l) {
                out.push((l1, l2));
            }
        }
    }
    out
}

/// Full mixing set at degree `l`: all triangle-admissible undirected pairs.
pub fn full_set(bandlimit: usize, l: usize) -> Result<Vec<Pair>> {
    check_degree(bandlimit, l)?;
    Ok(pairs_for(bandlimit, l))
}

/// Number of ordered pairs `(l1, l2)` in `{0..L}^2` coupling to `l`.
pub fn ordered_pair_count(bandlimit: usize, l: usize) -> Result<usize> {
    Ok(full_set(bandlimit, l)?
        .iter()
        .map(|&(a, b)| if a == b { 1 } else { 2 })
        .sum())
}

/// Number of nonzero Clebsch-Gordan terms in `(C^{l1 l2 l})^T (f^{l1} (x) f^{l2})`.
pub fn edge_weight(l1: usize, l2: usize, l: usize) -> Result<usize> {
    crate::so3::check_triangle(l1, l2, l)?;
    let (a, b) = (l1 as i64, l2 as i64);
    Ok((-(l as i64)..=l as i64)
        .map(|m| {
            let lo = (-a).max(m - b);
            let hi = a.min(m + b);
            (hi - lo + 1).max(0) as usize
        })
        .sum())
}

/// Union-find over `0..n` with path halving.
#[derive(Debug, Clone)]
pub struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns `false` if `a` and `b` were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    /// Canonical component label of every element.
    pub fn labels(&mut self) -> Vec<usize> {
        (0..self.parent.len()).map(|x| self.find(x)).collect()
    }
}

/// Minimum spanning forest of the non-loop edges of `G^l_L` (Kruskal,
/// ties broken by `(l1, l2)`).
pub fn spanning_forest(bandlimit: usize, l: usize) -> Result<Vec<Pair>> {
    let mut edges: Vec<(usize, Pair)> = full_set(bandlimit, l)?
        .into_iter()
        .filter(|(a, b)| a != b)
        .map(|(a, b)| edge_weight(a, b, l).map(|w| (w, (a, b))))
        .collect::<Result<_>>()?;
    edges.sort_unstable();
    let mut sets = DisjointSets::new(bandlimit);
    let mut tree: Vec<Pair> = edges
        .into_iter()
        .filter_map(|(_, (a, b))| sets.union(a, b).then_some((a, b)))
        .collect();
    tree.sort_unstable();
    Ok(tree)
}

/// MST mixing set: the spanning forest plus every loop edge of the full set.
pub fn mst_set(bandlimit: usize, l: usize) -> Result<Vec<Pair>> {
    let mut out = spanning_forest(bandlimit, l)?;
    out.extend(full_set(bandlimit, l)?.into_iter().filter(|(a, b)| a == b));
    out.sort_unstable();
    Ok(out)
}

/// Reduced MST mixing set.
///
/// The spanning forest is traversed depth-first from node `l` (neighbours in
/// increasing order). Each branch leaving `l` is read as a path: its edges
/// are numbered `1, 2, 3, ...` in traversal order and those numbered
/// `1, 2, 4, 8, ...` are kept, together with the loop `(l, l)`. Components
/// not containing `l` are treated the same way from their smallest node.
pub fn rmst_set(bandlimit: usize, l: usize) -> Result<Vec<Pair>> {
    let tree = spanning_forest(bandlimit, l)?;
    let mut adj = vec![Vec::new(); bandlimit];
    for &(a, b) in &tree {
        adj[a].push(b);
        adj[b].push(a);
    }
    adj.iter_mut().for_each(|v| v.sort_unstable());

    let mut out = vec![(l, l)];
    let mut seen = vec![false; bandlimit];
    for root in std::iter::once(l).chain(0..bandlimit) {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        for &first in &adj[root] {
            if seen[first] {
                continue;
            }
            let mut index = 0usize;
            let mut stack = vec![(root, first)];
            while let Some((parent, node)) = stack.pop() {
                if seen[node] {
                    continue;
                }
                seen[node] = true;
                index += 1;
                if index.is_power_of_two() {
                    out.push((parent.min(node), parent.max(node)));
                }
                stack.extend(adj[node].iter().rev().filter(|&&n| !seen[n]).map(|&n| (node, n)));
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MixingKind {
    Full,
    Mst,
    Rmst,
}

impl MixingKind {
    pub fn pairs(self, bandlimit: usize, l: usize) -> Result<Vec<Pair>> {
        match self {
            Self::Full => full_set(bandlimit, l),
            Self::Mst => mst_set(bandlimit, l),
            Self::Rmst => rmst_set(bandlimit, l),
        }
    }
}

impl fmt::Display for MixingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Full => "full",
            Self::Mst => "mst",
            Self::Rmst => "rmst",
        })
    }
}

impl FromStr for MixingKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "full" => Ok(Self::Full),
            "mst" => Ok(Self::Mst),
            "rmst" => Ok(Self::Rmst),
            other => Err(Error::InvalidArgument(format!("unknown mixing kind {other:?}"))),
        }
    }
}

/// Per-output-degree lists of undirected input pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixingSet {
    input_bandlimit: usize,
    degrees: Vec<Vec<Pair>>,
}

impl MixingSet {
    pub fn of_kind(kind: MixingKind, bandlimit: usize) -> Self {
        let degrees = (0..bandlimit)
            .map(|l| kind.pairs(bandlimit, l).expect("degree below bandlimit"))
            .collect();
        Self {
            input_bandlimit: bandlimit,
            degrees,
        }
    }

    pub fn full(bandlimit: usize) -> Self {
        Self::of_kind(MixingKind::Full, bandlimit)
    }

    pub fn mst(bandlimit: usize) -> Self {
        Self::of_kind(MixingKind::Mst, bandlimit)
    }

    pub fn rmst(bandlimit: usize) -> Self {
        Self::of_kind(MixingKind::Rmst, bandlimit)
    }

    /// Full set producing output degrees `< output_bandlimit` from inputs
    /// `< input_bandlimit` (e.g. `2L - 1` for exact squaring).
    pub fn full_extended(input_bandlimit: usize, output_bandlimit: usize) -> Self {
        Self {
            input_bandlimit,
            degrees: (0..output_bandlimit).map(|l| pairs_for(input_bandlimit, l)).collect(),
        }
    }

    /// Validates and wraps explicit pair lists.
    pub fn from_pairs(input_bandlimit: usize, degrees: Vec<Vec<Pair>>) -> Result<Self> {
        for (l, pairs) in degrees.iter().enumerate() {
            let mut sorted = pairs.clone();
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidArgument(format!("duplicate pair at degree {l}")));
            }
            for &(l1, l2) in pairs {
                let reason = if l1 > l2 {
                    Some("pairs are stored with l1 <= l2")
                } else if l2 >= input_bandlimit {
                    Some("degree exceeds the input bandlimit")
                } else if !satisfies_triangle(l1, l2, l) {
                    Some("triangle condition violated")
                } else {
                    None
                };
                if let Some(reason) = reason {
                    return Err(Error::InvalidPair {
                        l1,
                        l2,
                        l,
                        reason: reason.into(),
                    });
                }
            }
        }
        Ok(Self {
            input_bandlimit,
            degrees,
        })
    }

    pub fn input_bandlimit(&self) -> usize {
        self.input_bandlimit
    }

    pub fn output_bandlimit(&self) -> usize {
        self.degrees.len()
    }

    pub fn degree(&self, l: usize) -> &[Pair] {
        &self.degrees[l]
    }

    pub fn len(&self) -> usize {
        self.degrees.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Per degree: pairs of `self` followed by the pairs of `other` not
    /// already present.
    pub fn union(&self, other: &Self) -> Result<Self> {
        if self.input_bandlimit != other.input_bandlimit || self.degrees.len() != other.degrees.len() {
            return Err(Error::BandlimitMismatch {
                expected: self.input_bandlimit,
                found: other.input_bandlimit,
            });
        }
        let degrees = self
            .degrees
            .iter()
            .zip(&other.degrees)
            .map(|(a, b)| {
                let mut out = a.clone();
                out.extend(b.iter().filter(|p| !a.contains(p)));
                out
            })
            .collect();
        Ok(Self {
            input_bandlimit: self.input_bandlimit,
            degrees,
        })
    }

    /// Total `edge_weight` over all pairs and degrees.
    pub fn total_weight(&self) -> usize {
        self.degrees
            .iter()
            .enumerate()
            .flat_map(|(l, pairs)| {
                pairs
                    .iter()
                    .map(move |&(a, b)| edge_weight(a, b, l).expect("validated"))
            })
            .sum()
    }
}
