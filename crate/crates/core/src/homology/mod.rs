//! Integral simplicial homology of complexes and pairs.

mod basis;

pub use basis::{free_homology_basis, HomologyBasis};

use std::collections::{BTreeMap, HashMap, HashSet};

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::complexes::{SimplicialComplex, SimplicialPair};
use crate::linalg::{sparse_smith, SnfResult, SparseIntMatrix};
use crate::par::{self, ComputeOptions, Execution};
use crate::{Error, Result};

/// Free chain groups with boundary maps `∂_d : C_d → C_{d-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplexData {
    /// Lowest degree present (`-1` when augmented).
    pub min_degree: i32,
    /// Rank of `C_d` for `d = min_degree, min_degree + 1, ...`.
    pub ranks: Vec<usize>,
    /// `boundaries[i]` is `∂` out of degree `min_degree + i`; the first is
    /// the zero map.
    pub boundaries: Vec<SparseIntMatrix>,
    /// Generators of each degree as sorted vertex lists.
    pub generators: Vec<Vec<Vec<usize>>>,
}

impl ChainComplexData {
    /// Validates shapes and `∂ ∘ ∂ = 0`.
    pub fn new(
        min_degree: i32,
        ranks: Vec<usize>,
        boundaries: Vec<SparseIntMatrix>,
        generators: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self> {
        if ranks.len() != boundaries.len() {
            return Err(Error::InvalidArgument("one boundary map per degree is required".into()));
        }
        for (i, b) in boundaries.iter().enumerate() {
            let rows = if i == 0 { 0 } else { ranks[i - 1] };
            if b.cols != ranks[i] || b.rows != rows {
                return Err(Error::InvalidArgument(format!("boundary out of degree {} has the wrong shape", min_degree + i as i32)));
            }
        }
        for i in 1..boundaries.len() {
            let comp = boundaries[i - 1].mul(&boundaries[i]).ok_or(Error::Overflow)?;
            if !comp.is_zero() {
                return Err(Error::InvalidArgument(format!("boundary squared is nonzero at degree {}", min_degree + i as i32)));
            }
        }
        Ok(ChainComplexData { min_degree, ranks, boundaries, generators })
    }

    pub fn max_degree(&self) -> i32 {
        self.min_degree + self.ranks.len() as i32 - 1
    }

    pub fn rank(&self, degree: i32) -> usize {
        self.index(degree).map_or(0, |i| self.ranks[i])
    }

    /// `∂_degree`, when that degree is present.
    pub fn boundary(&self, degree: i32) -> Option<&SparseIntMatrix> {
        self.index(degree).map(|i| &self.boundaries[i])
    }

    fn index(&self, degree: i32) -> Option<usize> {
        let i = degree - self.min_degree;
        (i >= 0 && (i as usize) < self.ranks.len()).then_some(i as usize)
    }

    /// Alternating sum of chain ranks.
    pub fn euler_characteristic(&self) -> i64 {
        (0..self.ranks.len()).map(|i| sign(self.min_degree + i as i32) * self.ranks[i] as i64).sum()
    }
}

fn sign(d: i32) -> i64 {
    if d.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeHomology {
    pub rank: usize,
    pub torsion: Vec<u64>,
}

/// Free rank and torsion coefficients per degree.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologySummary {
    pub reduced: bool,
    pub degrees: BTreeMap<i32, DegreeHomology>,
}

impl HomologySummary {
    pub fn rank(&self, degree: i32) -> usize {
        self.degrees.get(&degree).map_or(0, |d| d.rank)
    }

    pub fn torsion(&self, degree: i32) -> &[u64] {
        self.degrees.get(&degree).map_or(&[], |d| &d.torsion)
    }

    pub fn is_torsion_free(&self) -> bool {
        self.degrees.values().all(|d| d.torsion.is_empty())
    }

    pub fn total_rank(&self) -> usize {
        self.degrees.values().map(|d| d.rank).sum()
    }

    /// Degrees carrying a nonzero group.
    pub fn nonzero(&self) -> BTreeMap<i32, DegreeHomology> {
        self.degrees.iter().filter(|(_, d)| d.rank > 0 || !d.torsion.is_empty()).map(|(&k, d)| (k, d.clone())).collect()
    }

    pub fn same_groups(&self, other: &HomologySummary) -> bool {
        self.nonzero() == other.nonzero()
    }

    /// Σ (−1)^d rank H_d.
    pub fn euler_characteristic(&self) -> i64 {
        self.degrees.iter().map(|(&d, h)| sign(d) * h.rank as i64).sum()
    }

    pub fn shifted(&self, by: i32) -> HomologySummary {
        HomologySummary { reduced: self.reduced, degrees: self.degrees.iter().map(|(&d, h)| (d + by, h.clone())).collect() }
    }

    /// Whether every torsion list is a divisibility chain of integers > 1.
    pub fn torsion_chains_valid(&self) -> bool {
        self.degrees.values().all(|d| d.torsion.iter().all(|&t| t > 1) && d.torsion.windows(2).all(|w| w[1] % w[0] == 0))
    }
}

/// Relative chain complex of `pair`: faces of the total complex that are not
/// in the subcomplex. With `reduced` and an empty subcomplex the augmentation
/// to degree `-1` is included.
pub fn chain_complex(pair: &SimplicialPair, reduced: bool, max_faces: usize) -> Result<ChainComplexData> {
    let faces = pair.total.faces(max_faces)?;
    let sub_faces: HashSet<Vec<usize>> = if pair.sub.is_empty() {
        HashSet::new()
    } else {
        pair.sub.faces(max_faces)?.into_iter().flatten().collect()
    };
    let mut generators: Vec<Vec<Vec<usize>>> = faces
        .into_iter()
        .map(|group| group.into_iter().filter(|f| !sub_faces.contains(f)).collect())
        .collect();
    while generators.last().is_some_and(Vec::is_empty) {
        generators.pop();
    }
    let augmented = reduced && pair.sub.is_empty();
    let min_degree = if augmented { -1 } else { 0 };
    if augmented {
        generators.insert(0, vec![Vec::new()]);
    }
    let index: Vec<HashMap<&[usize], usize>> = generators
        .iter()
        .map(|g| g.iter().enumerate().map(|(i, f)| (f.as_slice(), i)).collect())
        .collect();
    let mut boundaries = Vec::with_capacity(generators.len());
    for (d, group) in generators.iter().enumerate() {
        if d == 0 {
            boundaries.push(SparseIntMatrix::zero(0, group.len()));
            continue;
        }
        let lower = &index[d - 1];
        let columns = group
            .iter()
            .map(|f| {
                let mut col: Vec<(usize, i64)> = (0..f.len())
                    .filter_map(|i| {
                        let mut face = f.clone();
                        face.remove(i);
                        lower.get(face.as_slice()).map(|&r| (r, if i % 2 == 0 { 1 } else { -1 }))
                    })
                    .collect();
                col.sort_unstable();
                col
            })
            .collect();
        boundaries.push(SparseIntMatrix::new(generators[d - 1].len(), columns));
    }
    let ranks = generators.iter().map(Vec::len).collect();
    ChainComplexData::new(min_degree, ranks, boundaries, generators)
}

/// `rank H_d = rank C_d − rank ∂_d − rank ∂_{d+1}`; torsion of `H_d` is the
/// elementary divisors of `∂_{d+1}` above one.
pub fn homology(cc: &ChainComplexData, reduced: bool, execution: Execution) -> Result<HomologySummary> {
    let forms: Vec<SnfResult> = par::map(execution, &cc.boundaries, sparse_smith);
    let mut degrees = BTreeMap::new();
    for i in 0..cc.ranks.len() {
        let r_out = forms[i].rank;
        let r_in = forms.get(i + 1).map_or(0, |f| f.rank);
        let torsion = match forms.get(i + 1) {
            Some(f) => f.torsion().map(|t| t.to_u64().ok_or(Error::Overflow)).collect::<Result<Vec<u64>>>()?,
            None => Vec::new(),
        };
        degrees.insert(cc.min_degree + i as i32, DegreeHomology { rank: cc.ranks[i] - r_out - r_in, torsion });
    }
    Ok(HomologySummary { reduced, degrees })
}

/// How relative homology of a pair is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PairRoute {
    /// Cone route when the total complex is a cone, direct otherwise.
    #[default]
    Auto,
    /// Relative chain complex.
    Direct,
    /// `H_j(T, S) ≅ H̃_{j−1}(S)` for an acyclic (cone) total complex `T`.
    Cone,
}

/// Unreduced relative homology of a pair.
pub fn pair_homology(pair: &SimplicialPair, route: PairRoute, opts: ComputeOptions) -> Result<HomologySummary> {
    let cone = pair.total.apex().is_some();
    let use_cone = match route {
        PairRoute::Auto => cone,
        PairRoute::Direct => false,
        PairRoute::Cone if cone => true,
        PairRoute::Cone => return Err(Error::InvalidArgument("the cone route needs a cone as total complex".into())),
    };
    if !use_cone {
        let cc = chain_complex(pair, false, opts.max_faces)?;
        return homology(&cc, false, opts.execution);
    }
    let reduced = reduced_homology(&pair.sub, opts)?;
    let mut out = reduced.shifted(1);
    out.reduced = false;
    // the total complex fixes the degree range of the pair
    for d in 0..=pair.total.dim() {
        out.degrees.entry(d).or_default();
    }
    out.degrees.retain(|&d, _| d >= 0);
    Ok(out)
}

/// Reduced homology, with `H̃_{-1}(∅) = Z`.
pub fn reduced_homology(complex: &SimplicialComplex, opts: ComputeOptions) -> Result<HomologySummary> {
    let cc = chain_complex(&SimplicialPair::absolute(complex.clone()), true, opts.max_faces)?;
    homology(&cc, true, opts.execution)
}

pub fn absolute_homology(complex: &SimplicialComplex, reduced: bool, opts: ComputeOptions) -> Result<HomologySummary> {
    let cc = chain_complex(&SimplicialPair::absolute(complex.clone()), reduced, opts.max_faces)?;
    homology(&cc, reduced, opts.execution)
}

/// Alternating count of the relative faces of a pair.
pub fn euler_characteristic(pair: &SimplicialPair, max_faces: usize) -> Result<i64> {
    let count = |c: &SimplicialComplex| -> Result<i64> {
        if c.is_empty() {
            return Ok(0);
        }
        if c.facets().len() == 1 {
            // a single simplex has Euler characteristic one
            return Ok(1);
        }
        Ok(c.faces(max_faces)?.iter().enumerate().map(|(d, g)| sign(d as i32) * g.len() as i64).sum())
    };
    Ok(count(&pair.total)? - count(&pair.sub)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::{connected_graph_pair, SimplicialComplex};

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| i.to_string()).collect()
    }

    fn opts() -> ComputeOptions {
        ComputeOptions::sequential()
    }

    #[test]
    fn edge_rel_endpoints() {
        let pair = SimplicialPair::new(
            SimplicialComplex::simplex(labels(2)),
            SimplicialComplex::new(labels(2), vec![vec![0], vec![1]]),
        )
        .unwrap();
        let cc = chain_complex(&pair, false, 100).unwrap();
        assert_eq!(cc.ranks, vec![0, 1]);
        assert!(cc.boundary(1).unwrap().is_zero());
        let h = homology(&cc, false, Execution::Sequential).unwrap();
        assert_eq!(h.rank(1), 1);
        assert_eq!(pair_homology(&pair, PairRoute::Cone, opts()).unwrap().nonzero(), h.nonzero());
    }

    #[test]
    fn augmented_triangle() {
        let cc = chain_complex(&SimplicialPair::absolute(SimplicialComplex::simplex(labels(3))), true, 100).unwrap();
        assert_eq!((cc.min_degree, cc.ranks.clone()), (-1, vec![1, 3, 3, 1]));
        let h = homology(&cc, true, Execution::Sequential).unwrap();
        assert_eq!(h.total_rank(), 0);
        assert_eq!(cc.euler_characteristic(), 0);
    }

    #[test]
    fn circle() {
        let c = SimplicialComplex::new(labels(3), vec![vec![0, 1], vec![1, 2], vec![0, 2]]);
        let h = absolute_homology(&c, false, opts()).unwrap();
        assert_eq!((h.rank(0), h.rank(1)), (1, 1));
        assert_eq!(euler_characteristic(&SimplicialPair::absolute(c), 100).unwrap(), 0);
    }

    #[test]
    fn torsion_from_a_degree_two_map() {
        let cc = ChainComplexData::new(
            0,
            vec![1, 1],
            vec![SparseIntMatrix::zero(0, 1), SparseIntMatrix::new(1, vec![vec![(0, 2)]])],
            vec![vec![vec![0]], vec![vec![0, 1]]],
        )
        .unwrap();
        let h = homology(&cc, false, Execution::Sequential).unwrap();
        assert_eq!(h.torsion(0), &[2]);
        assert_eq!(h.rank(0) + h.rank(1), 0);
    }

    #[test]
    fn rejects_nonzero_square() {
        let d1 = SparseIntMatrix::new(1, vec![vec![(0, 1)]]);
        let d2 = SparseIntMatrix::new(1, vec![vec![(0, 1)]]);
        let err = ChainComplexData::new(0, vec![1, 1, 1], vec![SparseIntMatrix::zero(0, 1), d1, d2], vec![]);
        assert!(err.is_err());
    }

    #[test]
    fn graph_three_generators() {
        let pair = connected_graph_pair(3).unwrap();
        let cc = chain_complex(&pair, false, 100).unwrap();
        assert_eq!(cc.ranks, vec![0, 3, 1]);
        let h = homology(&cc, false, Execution::Sequential).unwrap();
        assert_eq!(h.nonzero().into_iter().map(|(d, g)| (d, g.rank)).collect::<Vec<_>>(), vec![(1, 2)]);
        let cone = pair_homology(&pair, PairRoute::Cone, opts()).unwrap();
        assert!(cone.same_groups(&h));
    }

    #[test]
    fn empty_sub_with_cone_route() {
        let pair = connected_graph_pair(2).unwrap();
        let h = pair_homology(&pair, PairRoute::Auto, opts()).unwrap();
        assert_eq!(h.rank(0), 1);
        assert_eq!(euler_characteristic(&pair, 10).unwrap(), 1);
    }
}
