use super::{SimplicialComplex, SimplicialPair};
use crate::arrangement::k_subsets;
use crate::{Error, Result};

pub const MAX_GRAPH_NODES: usize = 8;

/// The simplex on all edges of the complete graph on `N` labelled nodes,
/// with the subcomplex of graphs that do not connect all nodes.
pub fn connected_graph_pair(n: usize) -> Result<SimplicialPair> {
    k_hypergraph_pair(n, 2)
}

/// The simplex on all `k`-element hyperedges over `N` nodes, with the
/// subcomplex of hypergraphs that are not connected. A hypergraph is
/// connected when it covers every node and its hyperedges, linked by
/// overlaps, form one component.
pub fn k_hypergraph_pair(n: usize, k: usize) -> Result<SimplicialPair> {
    if !(2..=MAX_GRAPH_NODES).contains(&n) || k < 2 || k > n {
        return Err(Error::InvalidArgument(format!(
            "hypergraph complexes need 2 <= k <= N <= {MAX_GRAPH_NODES}, got N={n}, k={k}"
        )));
    }
    let edges = k_subsets(n, k);
    let labels: Vec<String> = edges.iter().map(|e| e.iter().map(|i| (i + 1).to_string()).collect::<String>()).collect();
    let masks: Vec<u32> = edges.iter().map(|e| e.iter().fold(0u32, |m, &i| m | 1 << i)).collect();
    // A face fails to connect iff some split {S, S^c} of the nodes has no
    // hyperedge crossing it; the largest such faces take every hyperedge
    // inside S or inside S^c. Fixing node 0 in S lists each split once.
    let full = (1u32 << n) - 1;
    let sub_facets = (0..1u32 << (n - 1))
        .map(|rest| (rest << 1) | 1)
        .filter(|&s| s != full)
        .map(|s| {
            (0..edges.len())
                .filter(|&e| masks[e] & s == masks[e] || masks[e] & s == 0)
                .collect()
        })
        .collect();
    Ok(SimplicialPair {
        total: SimplicialComplex::simplex(labels.clone()),
        sub: SimplicialComplex::new(labels, sub_facets),
    })
}

/// Union-find check that the hyperedges cover and connect all `n` nodes.
pub fn hypergraph_is_connected(n: usize, hyperedges: &[Vec<usize>]) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    let mut covered = vec![false; n];
    for e in hyperedges {
        for &v in e {
            covered[v] = true;
        }
        for w in e.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            parent[a] = b;
        }
    }
    let root = find(&mut parent, 0);
    covered.iter().all(|&c| c) && (0..n).all(|v| find(&mut parent, v) == root)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_graph_pairs() {
        let two = connected_graph_pair(2).unwrap();
        assert_eq!(two.total.facets(), &[vec![0]]);
        assert!(two.sub.is_empty());

        let three = connected_graph_pair(3).unwrap();
        assert_eq!(three.total.labels, vec!["12", "13", "23"]);
        assert_eq!(three.sub.facets(), &[vec![0], vec![1], vec![2]]);

        assert!(connected_graph_pair(9).is_err());
        assert!(k_hypergraph_pair(4, 5).is_err());
    }

    #[test]
    fn subcomplex_matches_union_find() {
        for (n, k) in [(3, 2), (4, 2), (5, 2), (4, 3), (5, 3)] {
            let pair = k_hypergraph_pair(n, k).unwrap();
            let edges = k_subsets(n, k);
            for bits in 0u64..1 << edges.len() {
                let face: Vec<usize> = (0..edges.len()).filter(|i| bits >> i & 1 == 1).collect();
                let hyper: Vec<Vec<usize>> = face.iter().map(|&i| edges[i].clone()).collect();
                let in_sub = face.is_empty() || pair.sub.contains_face(&face);
                assert_eq!(in_sub, !hypergraph_is_connected(n, &hyper), "N={n} k={k} face {face:?}");
            }
        }
    }
}
