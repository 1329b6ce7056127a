use std::collections::BTreeSet;

use planar_codes_core::bound::{compute_y, q_of_bit, theta_count};
use planar_codes_core::check::{build_check_graph, BitTarget, CheckGraphBuild};
use planar_codes_core::dual::{build_dual, find_singular_nodes, recurrence_table, DualGraph};
use planar_codes_core::TannerGraph;

/// Builds a Tanner graph from `(label, checks)` pairs; checks are named by
/// the strings in `checks`.
fn graph(checks: &[&str], bits: &[(&str, &[&str])]) -> TannerGraph {
    let check_labels: Vec<String> = checks.iter().map(|s| s.to_string()).collect();
    let idx = |c: &str| checks.iter().position(|&x| x == c).unwrap();
    let edges = bits.iter().enumerate().flat_map(|(b, (_, cs))| cs.iter().map(move |&c| (b, idx(c)))).collect();
    TannerGraph::with_labels(bits.iter().map(|(l, _)| l.to_string()).collect(), check_labels, edges).unwrap()
}

fn build(g: &TannerGraph) -> (CheckGraphBuild, DualGraph) {
    let built = build_check_graph(g, &g.planar_embedding().unwrap()).unwrap();
    let dual = build_dual(&built.check_graph).unwrap();
    (built, dual)
}

/// The check graph is K5 minus the edge 2-5; bits c, d, e sit on the faces
/// 123, 234, 345, bits b, f, g on the edges 14, 35, 15 and a on check 1.
fn worked_example() -> TannerGraph {
    graph(
        &["1", "2", "3", "4", "5"],
        &[
            ("a", &["1"]),
            ("b", &["1", "4"]),
            ("c", &["1", "2", "3"]),
            ("d", &["2", "3", "4"]),
            ("e", &["3", "4", "5"]),
            ("f", &["3", "5"]),
            ("g", &["1", "5"]),
        ],
    )
}

/// Dual edge between the faces with the given (one-based) corners.
fn dual_edge(g: &CheckGraphBuild, dual: &DualGraph, a: [usize; 3], b: [usize; 3]) -> usize {
    let face = |c: [usize; 3]| {
        let c = c.map(|x| x - 1);
        (0..dual.vertex_count()).find(|&f| g.check_graph.face_corners(f) == c).unwrap()
    };
    let (fa, fb) = (face(a), face(b));
    (0..dual.edge_count())
        .find(|&e| {
            let (x, y) = dual.edge_endpoints(e);
            (x, y) == (fa, fb) || (x, y) == (fb, fa)
        })
        .unwrap()
}

#[test]
fn example_faces() {
    let g = worked_example();
    let (built, dual) = build(&g);
    let corners: BTreeSet<[usize; 3]> = (0..dual.vertex_count()).map(|f| built.check_graph.face_corners(f).map(|x| x + 1)).collect();
    let want = BTreeSet::from([[1, 2, 3], [1, 3, 5], [1, 2, 4], [2, 3, 4], [3, 4, 5], [1, 4, 5]]);
    assert_eq!(corners, want);
    assert_eq!(dual.girth(), Some(3));
}

/// Dual edges e1..e9 of the worked example, as pairs of face corner sets.
const EXAMPLE_DUAL_EDGES: [([usize; 3], [usize; 3]); 9] = [
    ([1, 2, 3], [1, 2, 4]),
    ([1, 2, 4], [2, 3, 4]),
    ([1, 2, 3], [2, 3, 4]),
    ([1, 2, 4], [1, 4, 5]),
    ([3, 4, 5], [1, 4, 5]),
    ([1, 3, 5], [3, 4, 5]),
    ([1, 3, 5], [1, 4, 5]),
    ([1, 2, 3], [1, 3, 5]),
    ([2, 3, 4], [3, 4, 5]),
];

#[test]
fn example_recurrence_numbers() {
    let g = worked_example();
    let (built, dual) = build(&g);
    let ids: Vec<usize> = EXAMPLE_DUAL_EDGES.iter().map(|&(a, b)| dual_edge(&built, &dual, a, b)).collect();
    let table = recurrence_table(&dual, 4, &built.occupancy).unwrap();
    let r: Vec<u64> = ids.iter().map(|&e| table.r[e]).collect();
    assert_eq!(r, [1, 1, 1, 0, 1, 1, 1, 0, 0]);
    let name = |e: &usize| ids.iter().position(|x| x == e).unwrap() + 1;
    let occupied: BTreeSet<usize> = table.occupied.iter().map(name).collect();
    let unoccupied: BTreeSet<usize> = table.unoccupied.iter().map(name).collect();
    assert_eq!(occupied, BTreeSet::from([6, 7]));
    // Every unoccupied edge with a positive recurrence number, e1 included.
    assert_eq!(unoccupied, BTreeSet::from([1, 2, 3, 5]));
}

#[test]
fn example_check_sets() {
    let g = worked_example();
    assert!(!g.is_codeword_supporting(&[0, 1, 2, 3]).unwrap());
    assert_eq!(g.induced_bits(&[0, 1, 2, 3]).unwrap().len(), 4);
}

#[test]
fn degree_two_bit_on_a_tree_edge() {
    let g = worked_example();
    let (built, dual) = build(&g);
    let b = g.bit_by_label("b").unwrap();
    assert!(matches!(built.identification.target(b), BitTarget::Edge(_)));
    assert_eq!(q_of_bit(b, &built.check_graph, &built.identification, &dual, 2).unwrap(), theta_count(2).unwrap());
    assert_eq!(theta_count(2).unwrap(), 10);
}

/// A degree-1 bit `v` on check u, where u and its neighbor v are the two
/// degree-3 checks inside a doubled edge x-y; the outside of the double
/// edge holds checks w and z. Every face carries a degree-3 bit.
fn singular_case() -> TannerGraph {
    graph(
        &["u", "v", "x", "y", "w", "z"],
        &[
            ("s", &["u"]),
            ("f1", &["u", "v", "x"]),
            ("f2", &["u", "v", "y"]),
            ("f3", &["u", "x", "y"]),
            ("f4", &["v", "x", "y"]),
            ("f5", &["x", "y", "w"]),
            ("f6", &["x", "y", "z"]),
            ("f7", &["x", "w", "z"]),
            ("f8", &["y", "w", "z"]),
        ],
    )
}

/// An octahedron on 1..6 with check c stacked in face 1-2-3; the faces
/// across 12, 23, 31 are all different. A degree-1 bit `s` sits on c.
fn regular_case() -> TannerGraph {
    graph(
        &["1", "2", "3", "4", "5", "6", "c"],
        &[
            ("s", &["c"]),
            ("t1", &["1", "2", "c"]),
            ("t2", &["2", "3", "c"]),
            ("t3", &["1", "3", "c"]),
            ("o1", &["1", "2", "6"]),
            ("o2", &["2", "3", "4"]),
            ("o3", &["1", "3", "5"]),
            ("o4", &["3", "4", "5"]),
            ("o5", &["1", "5", "6"]),
            ("o6", &["2", "4", "6"]),
            ("o7", &["4", "5", "6"]),
        ],
    )
}

fn degree_one_q(g: &TannerGraph, p: usize) -> u64 {
    let (built, dual) = build(g);
    let s = g.bit_by_label("s").unwrap();
    assert!(matches!(built.identification.target(s), BitTarget::Vertex(_)));
    q_of_bit(s, &built.check_graph, &built.identification, &dual, p).unwrap()
}

#[test]
fn worst_case_degree_one_counts() {
    let (a, b) = (regular_case(), singular_case());
    let got: Vec<(usize, u64, u64)> = (1..=4).map(|p| (p, degree_one_q(&a, p), degree_one_q(&b, p))).collect();
    assert_eq!(got, [(1, 3, 3), (2, 12, 12), (3, 15, 14), (4, 6, 5)]);
}

#[test]
fn singular_pattern_is_found() {
    let g = singular_case();
    let (built, _) = build(&g);
    let sing = find_singular_nodes(&built.check_graph, &built.occupancy);
    // The outside of the double edge is a second copy of the pattern.
    assert_eq!(sing.patterns.len(), 2);
    assert_eq!(sing.bits, [g.bit_by_label("s").unwrap()]);
    let none = find_singular_nodes(&build(&regular_case()).0.check_graph, &build(&regular_case()).0.occupancy);
    assert_eq!(none.count(), 0);
}

#[test]
fn y_breakdown_identities() {
    for g in [worked_example(), singular_case(), regular_case()] {
        let (built, dual) = build(&g);
        for p in 1..=4 {
            let y = compute_y(&g, &built.check_graph, &built.identification, &dual, p).unwrap();
            assert_eq!(y.w_sum, y.eta1 + y.eta2 + y.eta3 + y.eta_high, "p = {p}");
            assert_eq!(y.eta3, y.eta3_formula, "p = {p}");
            assert_eq!(y.eta2 as i64, y.eta2_formula, "p = {p}");
            assert!(y.eta1 as i64 >= y.eta1_lower, "p = {p}");
            assert!(y.y_induced >= y.y, "p = {p}");
        }
    }
}
