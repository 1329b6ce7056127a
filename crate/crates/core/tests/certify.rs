use planar_codes_core::bound::{certify_graph, delta, delta_ledger, BoundStatus, WitnessPath};
use planar_codes_core::check::{build_check_graph, build_check_inverse, transform_sequence, PlacedGraph, StepKind};
use planar_codes_core::dual::build_dual;
use planar_codes_core::{Error, Ratio, TannerGraph};

fn graph(m: usize, bits: &[&[usize]]) -> TannerGraph {
    let edges = bits.iter().enumerate().flat_map(|(b, cs)| cs.iter().map(move |&c| (b, c))).collect();
    TannerGraph::new(bits.len(), m, edges).unwrap()
}

/// Same shape as the nine-bit example of the check-graph tests.
fn nine_bits() -> TannerGraph {
    graph(4, &[&[0, 1, 3, 2], &[0, 1], &[1, 3], &[2, 3], &[0], &[3], &[0, 2], &[1], &[2]])
}

/// Every nonempty subset of four checks of size at most three.
fn all_small_columns() -> TannerGraph {
    let mut bits: Vec<Vec<usize>> = Vec::new();
    for mask in 1u32..16 {
        if mask.count_ones() <= 3 {
            bits.push((0..4).filter(|i| mask >> i & 1 == 1).collect());
        }
    }
    let refs: Vec<&[usize]> = bits.iter().map(|b| b.as_slice()).collect();
    graph(4, &refs)
}

#[test]
fn ledger_matches_closed_forms() {
    let g = nine_bits();
    let built = build_check_graph(&g, &g.planar_embedding().unwrap()).unwrap();
    let cg = &built.check_graph;
    let dual = build_dual(cg).unwrap();
    let inv = build_check_inverse(&g, cg, &built.identification).unwrap();
    let steps = transform_sequence(&inv, &g, cg, &built.identification).unwrap();
    // With four checks the three faces around a check all border the same
    // fourth face, which leaves degree-1 bits below θ(p) for p = 3, 4.
    for p in 1..=2 {
        let ledger = delta_ledger(&PlacedGraph::from_check_inverse(&inv), &steps, cg, &dual, p).unwrap();
        assert!(ledger.all_hold(), "p = {p}: {:?}", ledger.entries);
        assert_eq!(ledger.w_end as i64 - ledger.w_start as i64, ledger.total_measured());
    }
    let ledger = delta_ledger(&PlacedGraph::from_check_inverse(&inv), &steps, cg, &dual, 2).unwrap();
    for e in &ledger.entries {
        if e.kind == StepKind::Ds2 {
            assert_eq!(Ratio::from_int(e.measured as i128), delta(2).unwrap());
        }
        if e.kind == StepKind::De {
            // The freeing step is a DS1, which gains 6 rather than δ = 4.
            assert_eq!(e.alpha, Some(2));
            assert_eq!(e.block_measured, Some(2));
        }
    }
}

#[test]
fn duplicate_columns_take_the_fast_path() {
    let g = graph(4, &[&[0, 1, 2], &[0, 1, 2], &[1, 2, 3], &[0], &[3]]);
    let r = certify_graph(&g).unwrap();
    assert_eq!(r.path, Some(WitnessPath::DuplicateBits));
    assert_eq!(r.bound, Some(2));
    assert_eq!(g.min_distance_oracle(None).unwrap(), Some(2));
    assert!(r.witness_is_valid(&g));
}

#[test]
fn isolated_bit_has_distance_one() {
    let g = graph(2, &[&[0, 1], &[], &[1]]);
    let r = certify_graph(&g).unwrap();
    assert_eq!((r.bound, r.path), (Some(1), Some(WitnessPath::DegreeZero)));
}

#[test]
fn low_rate_is_out_of_scope() {
    let g = nine_bits();
    let r = certify_graph(&g).unwrap();
    assert_eq!(r.design_rate, Ratio::new(5, 9));
    assert_eq!(r.status, BoundStatus::OutOfScope);
    assert!(!r.certified && r.bound.is_none());
}

#[test]
fn rate_five_sevenths_certifies_five() {
    let g = all_small_columns();
    let r = certify_graph(&g).unwrap();
    assert_eq!(r.p, Some(2));
    assert_eq!(r.status, BoundStatus::Certified, "{r:?}");
    assert_eq!(r.bound, Some(5));
    assert!(r.witness_is_valid(&g));
    assert!(g.min_distance_oracle(None).unwrap().unwrap() <= 5);
}

#[test]
fn non_planar_input_carries_a_certificate() {
    // K3,3 between bits {0,1,2} and checks {0,1,2}.
    let g = graph(3, &[&[0, 1, 2], &[0, 1, 2], &[0, 1, 2]]);
    assert!(matches!(certify_graph(&g), Err(Error::NonPlanar(_))));
}

#[test]
fn four_checks_fall_short_of_theta() {
    use planar_codes_core::bound::{q_of_bit, theta_count};
    let g = nine_bits();
    let built = build_check_graph(&g, &g.planar_embedding().unwrap()).unwrap();
    let dual = build_dual(&built.check_graph).unwrap();
    let f = 4;
    let q: Vec<u64> = (1..=4).map(|p| q_of_bit(f, &built.check_graph, &built.identification, &dual, p).unwrap()).collect();
    let theta: Vec<u64> = (1..=4).map(|p| theta_count(p).unwrap()).collect();
    assert_eq!(q, [3, 12, 12, 4]);
    assert_eq!(theta, [2, 10, 14, 6]);
}
