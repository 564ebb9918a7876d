//! The Goresky–MacPherson decomposition of the cohomology of the complement
//! of a real arrangement, and the shuffle product on its graded ring.
//!
//! For every node `L_I` of the intersection poset, the relative homology
//! `H_j(Υ(I), ∂Υ(I))` contributes to reduced cohomological degree
//! `i = N − j − dim L_I − 1`.

mod shuffle;

pub use shuffle::{
    graded_ring_table, is_relative_cycle, shuffle_product, GradedClass, Orientation, RingClass, RingProduct, RingTable,
};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arrangement::{build_intersection_poset, Arrangement, IntersectionPoset};
use crate::complexes::local_order_pair;
use crate::homology::{pair_homology, HomologySummary, PairRoute};
use crate::linalg::Rational;
use crate::par::{self, ComputeOptions};
use crate::Result;

/// One node's share of one cohomological degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Contribution {
    pub node: usize,
    /// Generator set of the node, 1-based plane indices.
    pub generators: Vec<usize>,
    pub dim: usize,
    pub pair_degree: usize,
    pub rank: usize,
    pub torsion: Vec<u64>,
    /// Codimension of the node.
    pub filtration: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GmDegree {
    pub degree: usize,
    pub contributions: Vec<Contribution>,
    pub rank: usize,
    /// Orders of the cyclic torsion summands, ascending.
    pub torsion: Vec<u64>,
}

/// Reduced cohomology of the complement, degree by degree, with the
/// contributing nodes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GmReport {
    pub ambient_dim: usize,
    pub degrees: Vec<GmDegree>,
}

impl GmReport {
    /// Ranks of reduced cohomology, degrees `0..N`.
    pub fn reduced_ranks(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.rank).collect()
    }

    /// Unreduced Betti numbers with trailing zeros removed.
    pub fn betti(&self) -> Vec<usize> {
        let mut b = self.reduced_ranks();
        if b.is_empty() {
            b.push(0);
        }
        b[0] += 1;
        while b.len() > 1 && b.last() == Some(&0) {
            b.pop();
        }
        b
    }

    pub fn is_torsion_free(&self) -> bool {
        self.degrees.iter().all(|d| d.torsion.is_empty())
    }

    /// Euler characteristic of the reduced cohomology.
    pub fn reduced_euler_characteristic(&self) -> i64 {
        self.degrees.iter().map(|d| if d.degree % 2 == 0 { d.rank as i64 } else { -(d.rank as i64) }).sum()
    }
}

/// Pair homology of every node's local order pair, in node order.
pub fn node_homologies(poset: &IntersectionPoset<Rational>, opts: ComputeOptions) -> Result<Vec<HomologySummary>> {
    let nodes: Vec<usize> = (0..poset.len()).collect();
    let inner = ComputeOptions { execution: crate::Execution::Sequential, ..opts };
    par::map(opts.execution, &nodes, |&x| pair_homology(&local_order_pair(poset, x).pair, PairRoute::Auto, inner))
        .into_iter()
        .collect()
}

pub fn gm_report(arr: &Arrangement<Rational>, opts: ComputeOptions) -> Result<GmReport> {
    let poset = build_intersection_poset(arr);
    let homs = node_homologies(&poset, opts)?;
    Ok(assemble(&poset, &homs))
}

fn assemble(poset: &IntersectionPoset<Rational>, homs: &[HomologySummary]) -> GmReport {
    let n = poset.ambient_dim();
    let mut degrees: Vec<GmDegree> =
        (0..n).map(|degree| GmDegree { degree, contributions: Vec::new(), rank: 0, torsion: Vec::new() }).collect();
    for (x, h) in homs.iter().enumerate() {
        let node = poset.node(x);
        for (&j, g) in &h.nonzero() {
            let j = usize::try_from(j).expect("pair homology lives in nonnegative degrees");
            let i = n - j - node.dim - 1;
            degrees[i].contributions.push(Contribution {
                node: x,
                generators: node.generator_indices().iter().map(|g| g + 1).collect(),
                dim: node.dim,
                pair_degree: j,
                rank: g.rank,
                torsion: g.torsion.clone(),
                filtration: node.codim,
            });
        }
    }
    for d in &mut degrees {
        d.contributions.sort_by_key(|c| (c.filtration, c.node));
        d.rank = d.contributions.iter().map(|c| c.rank).sum();
        d.torsion = d.contributions.iter().flat_map(|c| c.torsion.iter().copied()).collect();
        d.torsion.sort_unstable();
    }
    GmReport { ambient_dim: n, degrees }
}

/// One wedge summand: the node's pair homology, suspended `dim L_I` times.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WedgeSummand {
    pub node: usize,
    pub generators: Vec<usize>,
    pub dim: usize,
    pub pair: HomologySummary,
    /// Contribution to the Borel–Moore homology of the union of the planes.
    pub borel_moore: HomologySummary,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WedgeSummary {
    pub ambient_dim: usize,
    pub summands: Vec<WedgeSummand>,
    /// Total Borel–Moore ranks by degree.
    pub borel_moore_ranks: BTreeMap<usize, usize>,
}

impl WedgeSummary {
    /// Reduced cohomology ranks of the complement obtained by Alexander
    /// duality `H̃^i ≅ H^BM_{N−i−1}`.
    pub fn dual_cohomology_ranks(&self) -> Vec<usize> {
        (0..self.ambient_dim).map(|i| self.borel_moore_ranks.get(&(self.ambient_dim - i - 1)).copied().unwrap_or(0)).collect()
    }
}

pub fn wedge_summary(arr: &Arrangement<Rational>, opts: ComputeOptions) -> Result<WedgeSummary> {
    let poset = build_intersection_poset(arr);
    let homs = node_homologies(&poset, opts)?;
    let mut totals = BTreeMap::new();
    let summands = homs
        .into_iter()
        .enumerate()
        .map(|(x, pair)| {
            let node = poset.node(x);
            let borel_moore = pair.shifted(node.dim as i32);
            for (&k, g) in &borel_moore.nonzero() {
                *totals.entry(k as usize).or_insert(0) += g.rank;
            }
            WedgeSummand { node: x, generators: node.generator_indices().iter().map(|g| g + 1).collect(), dim: node.dim, pair, borel_moore }
        })
        .collect();
    Ok(WedgeSummary { ambient_dim: arr.ambient_dim(), summands, borel_moore_ranks: totals })
}
