use std::collections::BTreeMap;

use serde::de::DeserializeOwned;
use serde::Serialize;

use arrangements::arrangement::{build_intersection_poset, diagonal_arrangement, parse_arrangement, AnyArrangement, Arrangement};
use arrangements::complexes::{connected_graph_pair, local_order_pair, naive_pair};
use arrangements::gm::{gm_report, graded_ring_table, wedge_summary, Orientation, RingTable};
use arrangements::homology::{pair_homology, HomologySummary, PairRoute};
use arrangements::linalg::{Gaussian, Rational};
use arrangements::matroid::{matroid_from_arrangement, mnev_check, RankFunction};
use arrangements::os::{os_algebra, os_report, OsReport};
use arrangements::real::{enumerate_regions, imaginary_wedge_census, salvetti_census, Region};
use arrangements::twisted::{resonance_generic, MonodromyData, Tau};
use arrangements::{ComputeOptions, Execution};

const BRAID4: &str = r#"{
  "ambient_dim": 4,
  "field": "Q(i)",
  "planes": [
    { "label": "12", "equations": [["1", "-1", "0", "0", "0"]] },
    { "label": "13", "equations": [["1", "0", "-1", "0", "0"]] },
    { "label": "14", "equations": [["1", "0", "0", "-1", "0"]] },
    { "label": "23", "equations": [["0", "1", "-1", "0", "0"]] },
    { "label": "24", "equations": [["0", "1", "0", "-1", "0"]] },
    { "label": "34", "equations": [["0", "0", "1", "-1", "0"]] }
  ]
}"#;

fn round_trip<T: Serialize + DeserializeOwned + PartialEq + std::fmt::Debug>(x: &T) {
    let text = serde_json::to_string(x).unwrap();
    let back: T = serde_json::from_str(&text).unwrap();
    assert_eq!(&back, x);
    assert_eq!(serde_json::to_string(&back).unwrap(), text);
}

fn three_lines() -> Arrangement<Rational> {
    Arrangement::from_i64_hyperplanes(2, &[&[1, 0, 0], &[0, 1, 0], &[1, 1, 1]]).unwrap()
}

#[test]
fn document_to_both_pipelines() {
    let AnyArrangement::Gaussian(arr) = parse_arrangement(BRAID4).unwrap() else { panic!("declared Q(i)") };
    let gm = gm_report(&arr.realify(), ComputeOptions::default()).unwrap();
    assert_eq!(gm.betti(), vec![1, 6, 11, 6]);
    assert!(gm.is_torsion_free());
    assert_eq!(os_algebra(&arr, Execution::Parallel).unwrap().dims, vec![1, 6, 11, 6]);
    let wedges = wedge_summary(&arr.realify(), ComputeOptions::default()).unwrap();
    assert_eq!(wedges.dual_cohomology_ranks(), gm.reduced_ranks());
}

#[test]
fn documents_round_trip() {
    let parsed = parse_arrangement(BRAID4).unwrap();
    let text = serde_json::to_string(&parsed.to_document()).unwrap();
    assert_eq!(parse_arrangement(&text).unwrap(), parsed);
}

#[test]
fn sequential_and_parallel_agree() {
    let arr = diagonal_arrangement::<Gaussian>(4, 2).unwrap();
    let real = arr.realify();
    let seq = ComputeOptions::sequential();
    let par = ComputeOptions::default();
    assert_eq!(gm_report(&real, seq).unwrap(), gm_report(&real, par).unwrap());
    assert_eq!(os_algebra(&arr, Execution::Sequential).unwrap().basis, os_algebra(&arr, Execution::Parallel).unwrap().basis);
    let poset = build_intersection_poset(&real);
    let orientation = Orientation::complex(&arr, &poset);
    assert_eq!(graded_ring_table(&poset, &orientation, seq).unwrap(), graded_ring_table(&poset, &orientation, par).unwrap());
    let lines = three_lines();
    assert_eq!(salvetti_census(&lines, Execution::Sequential).unwrap(), salvetti_census(&lines, Execution::Parallel).unwrap());
}

#[test]
fn cone_route_agrees_with_direct_route() {
    let real = diagonal_arrangement::<Gaussian>(4, 2).unwrap().realify();
    let poset = build_intersection_poset(&real);
    for x in 0..poset.len() {
        let pair = local_order_pair(&poset, x).pair;
        let direct = pair_homology(&pair, PairRoute::Direct, ComputeOptions::sequential()).unwrap();
        let cone = pair_homology(&pair, PairRoute::Cone, ComputeOptions::sequential()).unwrap();
        assert!(direct.same_groups(&cone), "node {x}");
    }
}

#[test]
fn naive_pair_on_braid_arrangement() {
    // top node of A(3,2): both pairs carry total rank 2
    let arr = diagonal_arrangement::<Rational>(3, 2).unwrap();
    let poset = build_intersection_poset(&arr);
    let top = (0..poset.len()).max_by_key(|&x| poset.node(x).codim).unwrap();
    let naive = pair_homology(&naive_pair(&arr, &poset, top), PairRoute::Direct, ComputeOptions::sequential()).unwrap();
    assert_eq!(naive.nonzero().values().map(|g| g.rank).sum::<usize>(), 2);
    let local = pair_homology(&local_order_pair(&poset, top).pair, PairRoute::Auto, ComputeOptions::sequential()).unwrap();
    assert_eq!(local.rank(1), 2);
}

#[test]
fn complexified_lines_by_three_routes() {
    let lines = three_lines();
    let gm = gm_report(&lines.complexify().realify(), ComputeOptions::default()).unwrap().betti();
    let os = os_report(&lines.complexify(), Execution::Parallel).unwrap();
    let wedges = imaginary_wedge_census(&lines).unwrap();
    assert_eq!(gm, vec![1, 3, 3]);
    assert_eq!(os.poincare, gm);
    assert!(os.coned);
    assert_eq!(wedges.cohomology_ranks(), gm);
}

#[test]
fn report_types_round_trip() {
    let braid = diagonal_arrangement::<Gaussian>(3, 2).unwrap();
    let real = braid.realify();
    round_trip(&gm_report(&real, ComputeOptions::default()).unwrap());
    round_trip(&wedge_summary(&real, ComputeOptions::default()).unwrap());
    round_trip::<OsReport>(&os_report(&braid, Execution::Parallel).unwrap());
    let poset = build_intersection_poset(&real);
    let table: RingTable = graded_ring_table(&poset, &Orientation::complex(&braid, &poset), ComputeOptions::default()).unwrap();
    round_trip(&table);

    let lines = three_lines();
    round_trip::<Vec<Region>>(&enumerate_regions(&lines).unwrap());
    round_trip(&salvetti_census(&lines, Execution::Parallel).unwrap());
    round_trip(&imaginary_wedge_census(&lines).unwrap());

    let md = MonodromyData::new(vec![Tau::Generic, Tau::Value(Gaussian::i()), Tau::Value(Gaussian::from_ints(-1, 2))]).unwrap();
    round_trip(&md);
    round_trip(&resonance_generic(&md, 2));
    round_trip::<RankFunction>(&matroid_from_arrangement(&braid).unwrap());
    round_trip(&mnev_check(&Gaussian::i()).unwrap());
    round_trip::<HomologySummary>(&pair_homology(&connected_graph_pair(4).unwrap(), PairRoute::Auto, ComputeOptions::default()).unwrap());
}

#[test]
fn deserialized_ring_table_multiplies() {
    let braid = diagonal_arrangement::<Gaussian>(3, 2).unwrap();
    let real = braid.realify();
    let poset = build_intersection_poset(&real);
    let table = graded_ring_table(&poset, &Orientation::complex(&braid, &poset), ComputeOptions::default()).unwrap();
    let back: RingTable = serde_json::from_str(&serde_json::to_string(&table).unwrap()).unwrap();
    let e = |g: usize| BTreeMap::from([(table.find(&[g], 1).unwrap(), 1i64)]);
    assert_eq!(back.multiply(&e(1), &e(2)), table.multiply(&e(1), &e(2)));
    assert!(back.is_associative() && back.is_graded_commutative());
}
