use serde::Serialize;

use super::{SimplicialComplex, SimplicialPair};
use crate::arrangement::{Arrangement, IntersectionPoset};
use crate::linalg::Field;

/// A local pair together with the poset node behind each local vertex.
/// Local vertex `v` is poset node `nodes[v]`; `nodes` is increasing, so the
/// vertex order is the poset's node order and the apex comes last.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderPair {
    pub pair: SimplicialPair,
    pub nodes: Vec<usize>,
}

/// Vertices are poset nodes, simplices are chains.
pub fn order_complex<F: Field>(poset: &IntersectionPoset<F>) -> SimplicialComplex {
    let members: Vec<usize> = (0..poset.len()).collect();
    SimplicialComplex::new(node_labels(poset, &members), maximal_chains(poset, &members))
}

/// `(Υ(x), ∂Υ(x))`: chains of nodes whose planes contain `L_x`, and those
/// chains that avoid `x` itself.
pub fn local_order_pair<F: Field>(poset: &IntersectionPoset<F>, x: usize) -> OrderPair {
    let mut nodes: Vec<usize> = poset.below(x).to_vec();
    let link_chains = maximal_chains(poset, &nodes);
    nodes.push(x);
    let apex = nodes.len() - 1;
    let local = |global: &[usize]| -> Vec<usize> {
        global.iter().map(|g| nodes.binary_search(g).expect("chain inside lower set")).collect()
    };
    let sub_facets: Vec<Vec<usize>> = link_chains.iter().map(|c| local(c)).collect();
    let total_facets: Vec<Vec<usize>> = if sub_facets.is_empty() {
        vec![vec![apex]]
    } else {
        sub_facets.iter().map(|f| f.iter().copied().chain([apex]).collect()).collect()
    };
    let labels = node_labels(poset, &nodes);
    let pair = SimplicialPair {
        total: SimplicialComplex::new(labels.clone(), total_facets),
        sub: SimplicialComplex::new(labels, sub_facets),
    };
    OrderPair { pair, nodes }
}

/// `(Δ(x), ∂Δ(x))`: the simplex on the generators of `x` and its marginal
/// faces, the generator sets of nodes strictly containing `L_x`.
pub fn naive_pair<F: Field>(arr: &Arrangement<F>, poset: &IntersectionPoset<F>, x: usize) -> SimplicialPair {
    let gens = poset.node(x).generator_indices();
    let labels: Vec<String> = gens.iter().map(|&i| arr.plane(i).label.clone()).collect();
    let sub_facets = poset
        .below(x)
        .iter()
        .map(|&y| {
            poset
                .node(y)
                .generator_indices()
                .iter()
                .map(|g| gens.binary_search(g).expect("generators of a larger plane are a subset"))
                .collect()
        })
        .collect();
    SimplicialPair {
        total: SimplicialComplex::simplex(labels.clone()),
        sub: SimplicialComplex::new(labels, sub_facets),
    }
}

/// Maximal chains of the induced subposet on `members` (sorted node indices).
fn maximal_chains<F: Field>(poset: &IntersectionPoset<F>, members: &[usize]) -> Vec<Vec<usize>> {
    let k = members.len();
    // covers[i]: members that cover members[i] inside the subposet
    let covers: Vec<Vec<usize>> = (0..k)
        .map(|i| {
            (i + 1..k)
                .filter(|&j| {
                    poset.less(members[i], members[j])
                        && !(i + 1..j).any(|l| poset.less(members[i], members[l]) && poset.less(members[l], members[j]))
                })
                .collect()
        })
        .collect();
    let minimal: Vec<usize> = (0..k).filter(|&j| !(0..j).any(|i| poset.less(members[i], members[j]))).collect();
    let mut out = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    fn walk(i: usize, covers: &[Vec<usize>], members: &[usize], stack: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        stack.push(members[i]);
        if covers[i].is_empty() {
            out.push(stack.clone());
        } else {
            for &j in &covers[i] {
                walk(j, covers, members, stack, out);
            }
        }
        stack.pop();
    }
    for m in minimal {
        walk(m, &covers, members, &mut stack, &mut out);
    }
    out
}

fn node_labels<F: Field>(poset: &IntersectionPoset<F>, nodes: &[usize]) -> Vec<String> {
    nodes
        .iter()
        .map(|&x| {
            let g: Vec<String> = poset.node(x).generator_indices().iter().map(|i| (i + 1).to_string()).collect();
            format!("({})", g.join(","))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{build_intersection_poset, diagonal_arrangement};
    use crate::linalg::{Gaussian, Rational};

    fn real(n: usize, rows: &[&[i64]]) -> IntersectionPoset<Rational> {
        build_intersection_poset(&Arrangement::from_i64_hyperplanes(n, rows).unwrap())
    }

    #[test]
    fn order_complexes_of_line_arrangements() {
        let cross = order_complex(&real(2, &[&[1, 0, 0], &[0, 1, 0]]));
        assert_eq!(cross.facets(), &[vec![0, 2], vec![1, 2]]);

        let hexagon = order_complex(&real(2, &[&[1, 0, 0], &[0, 1, 0], &[1, 1, 1]]));
        assert_eq!(hexagon.vertex_count(), 6);
        assert_eq!(hexagon.facets().len(), 6);
        assert!(hexagon.facets().iter().all(|f| f.len() == 2));

        let point = order_complex(&real(1, &[&[1, 0]]));
        assert_eq!(point.facets(), &[vec![0]]);
    }

    #[test]
    fn local_pairs() {
        let p = real(2, &[&[1, 0, 0], &[0, 1, 0]]);
        let origin = local_order_pair(&p, 2);
        assert_eq!(origin.nodes, vec![0, 1, 2]);
        assert_eq!(origin.pair.total.facets(), &[vec![0, 2], vec![1, 2]]);
        assert_eq!(origin.pair.sub.facets(), &[vec![0], vec![1]]);

        let line = local_order_pair(&p, 0);
        assert_eq!(line.pair.total.facets(), &[vec![0]]);
        assert!(line.pair.sub.is_empty());

        let a42 = build_intersection_poset(&diagonal_arrangement::<Gaussian>(4, 2).unwrap());
        let top = local_order_pair(&a42, a42.len() - 1);
        let mut used: Vec<usize> = top.pair.sub.facets().concat();
        used.sort_unstable();
        used.dedup();
        assert_eq!(used.len(), 13);
        assert_eq!(top.pair.total.apex(), Some(13));
        // each of the 7 codim-2 nodes lies over 3 (triangles) or 2 (pairs) hyperplanes
        assert_eq!(top.pair.sub.facets().len(), 4 * 3 + 3 * 2);
    }

    #[test]
    fn naive_pairs() {
        let arr = Arrangement::<Rational>::from_i64_hyperplanes(2, &[&[1, 0, 0], &[0, 1, 0]]).unwrap();
        let p = build_intersection_poset(&arr);
        let pair = naive_pair(&arr, &p, 2);
        assert_eq!(pair.total.facets(), &[vec![0, 1]]);
        assert_eq!(pair.sub.facets(), &[vec![0], vec![1]]);

        let a32 = diagonal_arrangement::<Gaussian>(3, 2).unwrap();
        let p = build_intersection_poset(&a32);
        let pair = naive_pair(&a32, &p, p.len() - 1);
        assert_eq!(pair.total.facets(), &[vec![0, 1, 2]]);
        assert_eq!(pair.sub.facets(), &[vec![0], vec![1], vec![2]]);

        let hyper = naive_pair(&a32, &p, 0);
        assert_eq!(hyper.total.facets(), &[vec![0]]);
        assert!(hyper.sub.is_empty());
    }
}
