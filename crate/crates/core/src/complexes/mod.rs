//! Finite simplicial complexes stored by facets, and the pairs built from
//! arrangements and from graphs.

mod graph;
mod order;

pub use graph::{connected_graph_pair, hypergraph_is_connected, k_hypergraph_pair, MAX_GRAPH_NODES};
pub use order::{local_order_pair, naive_pair, order_complex, OrderPair};

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A simplicial complex on the vertex set `0..labels.len()`, given by its
/// inclusion-maximal faces. No facets means the empty complex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialComplex {
    pub labels: Vec<String>,
    facets: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    /// Sorts vertices, drops duplicate and non-maximal facets.
    pub fn new(labels: Vec<String>, facets: Vec<Vec<usize>>) -> Self {
        let n = labels.len();
        let mut fs: Vec<Vec<usize>> = facets
            .into_iter()
            .map(|mut f| {
                f.sort_unstable();
                f.dedup();
                assert!(f.iter().all(|&v| v < n), "facet vertex out of range");
                f
            })
            .filter(|f| !f.is_empty())
            .collect();
        fs.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        fs.dedup();
        let mut kept: Vec<Vec<usize>> = Vec::with_capacity(fs.len());
        for f in fs {
            if !kept.iter().any(|k| is_subset(&f, k)) {
                kept.push(f);
            }
        }
        kept.sort();
        SimplicialComplex { labels, facets: kept }
    }

    pub fn simplex(labels: Vec<String>) -> Self {
        let all = (0..labels.len()).collect();
        Self::new(labels, vec![all])
    }

    pub fn empty(labels: Vec<String>) -> Self {
        SimplicialComplex { labels, facets: Vec::new() }
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    /// Dimension, with `-1` for the empty complex.
    pub fn dim(&self) -> i32 {
        self.facets.iter().map(|f| f.len() as i32 - 1).max().unwrap_or(-1)
    }

    /// A vertex lying in every facet, if any; such a complex is a cone.
    pub fn apex(&self) -> Option<usize> {
        let first = self.facets.first()?;
        first.iter().copied().find(|v| self.facets.iter().all(|f| f.binary_search(v).is_ok()))
    }

    pub fn is_full_simplex(&self) -> bool {
        self.facets.len() == 1 && self.facets[0].len() == self.labels.len()
    }

    pub fn contains_face(&self, face: &[usize]) -> bool {
        self.facets.iter().any(|f| is_subset(face, f))
    }

    /// All nonempty faces grouped by dimension, each group sorted
    /// lexicographically. Fails once more than `max_faces` distinct faces
    /// have been seen.
    pub fn faces(&self, max_faces: usize) -> Result<Vec<Vec<Vec<usize>>>> {
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        for f in &self.facets {
            if f.len() >= usize::BITS as usize - 1 || (1usize << f.len()) - 1 > max_faces {
                return Err(Error::Budget { limit: max_faces });
            }
            for bits in 1usize..1 << f.len() {
                let face: Vec<usize> = (0..f.len()).filter(|i| bits >> i & 1 == 1).map(|i| f[i]).collect();
                if seen.insert(face) && seen.len() > max_faces {
                    return Err(Error::Budget { limit: max_faces });
                }
            }
        }
        let top = self.facets.iter().map(Vec::len).max().unwrap_or(0);
        let mut by_dim: Vec<Vec<Vec<usize>>> = vec![Vec::new(); top];
        for face in seen {
            by_dim[face.len() - 1].push(face);
        }
        for group in &mut by_dim {
            group.sort_unstable();
        }
        Ok(by_dim)
    }
}

/// A complex with a distinguished subcomplex on the same vertex set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialPair {
    pub total: SimplicialComplex,
    pub sub: SimplicialComplex,
}

impl SimplicialPair {
    pub fn new(total: SimplicialComplex, sub: SimplicialComplex) -> Result<Self> {
        if total.labels.len() != sub.labels.len() {
            return Err(Error::InvalidArgument("pair members must share a vertex set".into()));
        }
        if let Some(f) = sub.facets().iter().find(|f| !total.contains_face(f)) {
            return Err(Error::InvalidArgument(format!("subcomplex facet {f:?} is not a face of the total complex")));
        }
        Ok(SimplicialPair { total, sub })
    }

    /// The pair `(K, ∅)`.
    pub fn absolute(total: SimplicialComplex) -> Self {
        let sub = SimplicialComplex::empty(total.labels.clone());
        SimplicialPair { total, sub }
    }
}

pub(crate) fn is_subset(a: &[usize], b: &[usize]) -> bool {
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j == b.len() || b[j] != x {
            return false;
        }
        j += 1;
    }
    true
}

#[cfg(test)]
pub(crate) fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization() {
        let c = SimplicialComplex::new(labels(4), vec![vec![1, 0], vec![0, 1, 2], vec![2, 3], vec![3, 2]]);
        assert_eq!(c.facets(), &[vec![0, 1, 2], vec![2, 3]]);
        assert_eq!(c.dim(), 2);
        assert_eq!(c.apex(), Some(2));
        assert!(SimplicialComplex::empty(labels(2)).apex().is_none());
        assert_eq!(SimplicialComplex::empty(labels(0)).dim(), -1);
    }

    #[test]
    fn face_enumeration_and_budget() {
        let t = SimplicialComplex::simplex(labels(3));
        let faces = t.faces(100).unwrap();
        assert_eq!(faces.iter().map(Vec::len).collect::<Vec<_>>(), vec![3, 3, 1]);
        assert_eq!(faces[1], vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert!(matches!(t.faces(6), Err(Error::Budget { limit: 6 })));
    }

    #[test]
    fn pair_validation() {
        let t = SimplicialComplex::new(labels(3), vec![vec![0, 1], vec![1, 2]]);
        let bad = SimplicialComplex::new(labels(3), vec![vec![0, 2]]);
        assert!(SimplicialPair::new(t.clone(), bad).is_err());
        let ok = SimplicialComplex::new(labels(3), vec![vec![0], vec![2]]);
        assert!(SimplicialPair::new(t, ok).is_ok());
    }
}
