use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use super::{Arrangement, CanonicalSubspace};
use crate::linalg::Field;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PosetNode<F> {
    pub subspace: CanonicalSubspace<F>,
    /// Largest `I` with `L_I` equal to this node, as a bitmask over planes.
    pub generators: u64,
    pub dim: usize,
    pub codim: usize,
}

impl<F> PosetNode<F> {
    pub fn generator_indices(&self) -> Vec<usize> {
        mask_indices(self.generators)
    }
}

/// All nonempty intersections `L_I`, ordered by reverse inclusion: `x < y`
/// when `L_x ⊋ L_y`. The ambient space is not a node; it only enters the
/// Möbius values as the bottom element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntersectionPoset<F> {
    ambient_dim: usize,
    planes: usize,
    nodes: Vec<PosetNode<F>>,
    /// `below[x]`: nodes strictly below `x`, i.e. strictly containing `L_x`.
    below: Vec<Vec<usize>>,
    mobius: Vec<i64>,
    plane_nodes: Vec<usize>,
}

pub fn build_intersection_poset<F: Field>(arr: &Arrangement<F>) -> IntersectionPoset<F> {
    let m = arr.len();
    let mut index: HashMap<CanonicalSubspace<F>, usize> = HashMap::new();
    let mut found: Vec<CanonicalSubspace<F>> = Vec::new();
    let mut queue = VecDeque::new();
    for p in arr.planes() {
        if !index.contains_key(&p.subspace) {
            index.insert(p.subspace.clone(), found.len());
            found.push(p.subspace.clone());
            queue.push_back(found.len() - 1);
        }
    }
    // every L_I arises by intersecting planes one at a time
    while let Some(x) = queue.pop_front() {
        for p in arr.planes() {
            let s = found[x].intersect(&p.subspace);
            if s.is_empty() || index.contains_key(&s) {
                continue;
            }
            index.insert(s.clone(), found.len());
            found.push(s);
            queue.push_back(found.len() - 1);
        }
    }

    let mut nodes: Vec<PosetNode<F>> = found
        .into_iter()
        .map(|s| {
            let generators = arr
                .planes()
                .iter()
                .enumerate()
                .filter(|(_, p)| p.subspace.contains(&s))
                .fold(0u64, |acc, (i, _)| acc | 1 << i);
            let dim = s.dim().expect("nodes are nonempty");
            PosetNode { codim: arr.ambient_dim() - dim, dim, generators, subspace: s }
        })
        .collect();
    nodes.sort_by(|a, b| a.codim.cmp(&b.codim).then_with(|| a.subspace.cmp_canonical(&b.subspace)));

    let below: Vec<Vec<usize>> = (0..nodes.len())
        .map(|x| {
            (0..nodes.len())
                .filter(|&y| y != x && is_proper_subset(nodes[y].generators, nodes[x].generators))
                .collect()
        })
        .collect();

    // nodes are sorted by codim, so everything below x comes first
    let mut mobius = vec![0i64; nodes.len()];
    for x in 0..nodes.len() {
        mobius[x] = -1 - below[x].iter().map(|&y| mobius[y]).sum::<i64>();
    }

    let plane_nodes = (0..m)
        .map(|i| {
            nodes
                .iter()
                .position(|n| n.subspace == arr.plane(i).subspace)
                .expect("every plane is a node")
        })
        .collect();

    IntersectionPoset { ambient_dim: arr.ambient_dim(), planes: m, nodes, below, mobius, plane_nodes }
}

impl<F: Field> IntersectionPoset<F> {
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn plane_count(&self) -> usize {
        self.planes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[PosetNode<F>] {
        &self.nodes
    }

    pub fn node(&self, x: usize) -> &PosetNode<F> {
        &self.nodes[x]
    }

    /// Node index of plane `i`.
    pub fn plane_node(&self, i: usize) -> usize {
        self.plane_nodes[i]
    }

    /// `x < y`: `L_x` strictly contains `L_y`.
    pub fn less(&self, x: usize, y: usize) -> bool {
        x != y && is_proper_subset(self.nodes[x].generators, self.nodes[y].generators)
    }

    /// Nodes strictly below `x`, in node order.
    pub fn below(&self, x: usize) -> &[usize] {
        &self.below[x]
    }

    /// All strict order relations `(x, y)` with `x < y`.
    pub fn order_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs: Vec<(usize, usize)> = (0..self.len()).flat_map(|y| self.below[y].iter().map(move |&x| (x, y))).collect();
        pairs.sort_unstable();
        pairs
    }

    /// `μ(0̂, x)`.
    pub fn mobius(&self, x: usize) -> i64 {
        self.mobius[x]
    }

    /// `μ(x, y)` on the poset with `0̂` adjoined; `None` stands for `0̂`.
    pub fn mobius_between(&self, x: Option<usize>, y: usize) -> i64 {
        let Some(x) = x else { return self.mobius[y] };
        if x == y {
            return 1;
        }
        if !self.less(x, y) {
            return 0;
        }
        // interval [x, y] in node order, which is a linear extension
        let interval: Vec<usize> = (0..self.len()).filter(|&z| (z == x || self.less(x, z)) && (z == y || self.less(z, y))).collect();
        let mut mu: HashMap<usize, i64> = HashMap::new();
        for &z in &interval {
            let v = if z == x { 1 } else { -interval.iter().filter(|&&w| self.less(w, z)).map(|w| mu[w]).sum::<i64>() };
            mu.insert(z, v);
        }
        mu[&y]
    }

    /// Index of the node equal to `s`, if any.
    pub fn find(&self, s: &CanonicalSubspace<F>) -> Option<usize> {
        self.nodes.iter().position(|n| n.subspace == *s)
    }

    /// The node `L_x ∩ L_y`, if nonempty.
    pub fn meet(&self, x: usize, y: usize) -> Option<usize> {
        let s = self.nodes[x].subspace.intersect(&self.nodes[y].subspace);
        if s.is_empty() {
            return None;
        }
        let g = self.nodes[x].generators | self.nodes[y].generators;
        // the meet is the smallest-codim node whose generators include both
        (0..self.len())
            .filter(|&z| self.nodes[z].generators & g == g)
            .find(|&z| self.nodes[z].subspace == s)
    }
}

fn is_proper_subset(a: u64, b: u64) -> bool {
    a != b && a & b == a
}

pub(crate) fn mask_indices(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::diagonal_arrangement;
    use crate::linalg::{Gaussian, Rational};

    fn cross() -> Arrangement<Rational> {
        Arrangement::from_i64_hyperplanes(2, &[&[1, 0, 0], &[0, 1, 0]]).unwrap()
    }

    #[test]
    fn coordinate_cross() {
        let p = build_intersection_poset(&cross());
        assert_eq!(p.len(), 3);
        assert_eq!(p.node(2).dim, 0);
        assert_eq!(p.node(2).generators, 0b11);
        assert_eq!(p.mobius(2), 1);
        assert_eq!(p.mobius(0), -1);
        assert_eq!(p.order_pairs(), vec![(0, 2), (1, 2)]);
        assert_eq!(p.mobius_between(Some(0), 2), -1);
    }

    #[test]
    fn braid_four() {
        let p = build_intersection_poset(&diagonal_arrangement::<Gaussian>(4, 2).unwrap());
        let count = |c| p.nodes().iter().filter(|n| n.codim == c).count();
        assert_eq!((count(1), count(2), count(3)), (6, 7, 1));
        let top = p.len() - 1;
        assert_eq!(p.mobius(top), -6);
        assert_eq!(p.node(top).generators.count_ones(), 6);
    }

    #[test]
    fn single_hyperplane_and_duplicates() {
        let one = Arrangement::<Rational>::from_i64_hyperplanes(3, &[&[1, 1, 1, 1]]).unwrap();
        assert_eq!(build_intersection_poset(&one).len(), 1);
        let twice = Arrangement::<Rational>::from_i64_hyperplanes(2, &[&[1, 0, 0], &[2, 0, 0]]).unwrap();
        let p = build_intersection_poset(&twice);
        assert_eq!(p.len(), 1);
        assert_eq!(p.node(0).generators, 0b11);
        assert_eq!((p.plane_node(0), p.plane_node(1)), (0, 0));
    }

    #[test]
    fn parallel_lines_do_not_meet() {
        let a = Arrangement::<Rational>::from_i64_hyperplanes(2, &[&[0, 1, 0], &[0, 1, 1]]).unwrap();
        let p = build_intersection_poset(&a);
        assert_eq!(p.len(), 2);
        assert_eq!(p.meet(0, 1), None);
    }
}
