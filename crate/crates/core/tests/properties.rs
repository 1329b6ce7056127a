use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use planar_codes_core::bound::certify_bound;
use planar_codes_core::check::{BitTarget, CheckGraph, EdgeOrigin};
use planar_codes_core::dual::build_dual;
use planar_codes_core::embed::{test_planarity, Embedding, Planarity};
use planar_codes_core::gf2::{min_weight_codeword_bounded, min_weight_in_span};
use planar_codes_core::placement::embed_placement;
use planar_codes_core::{BitMatrix, BitVector, TannerGraph};

/// Random triangulation on `m` vertices: stack vertices into random faces,
/// then flip random edges.
fn triangulation(m: usize, rng: &mut ChaCha8Rng) -> Embedding {
    let mut edges = vec![(0, 1), (1, 2), (0, 2)];
    let mut faces = vec![[0, 1, 2], [0, 1, 2]];
    for v in 3..m {
        let i = rng.gen_range(0..faces.len());
        let [a, b, c] = faces.swap_remove(i);
        edges.extend([(a, v), (b, v), (c, v)]);
        faces.extend([[a, b, v], [b, c, v], [a, c, v]]);
    }
    let Planarity::Planar(mut emb) = test_planarity(m, &edges).unwrap() else { panic!("stacked triangulation is planar") };
    for _ in 0..10 * emb.edge_count() {
        let e = rng.gen_range(0..emb.edge_count());
        emb.flip_edge(e);
    }
    emb
}

fn check_graph(m: usize, rng: &mut ChaCha8Rng) -> CheckGraph {
    let emb = triangulation(m, rng);
    let e = emb.edge_count();
    CheckGraph::from_embedding(emb, vec![EdgeOrigin::Triangulation; e]).unwrap()
}

/// Places distinct bits on random faces, edges and checks of a random
/// triangulation, keeping at least `min_bits` of them.
fn placed_code(m: usize, min_bits: usize, rng: &mut ChaCha8Rng) -> (TannerGraph, Embedding) {
    let cg = check_graph(m, rng);
    let mut pool: Vec<BitTarget> = (0..cg.face_count())
        .map(BitTarget::Face)
        .chain((0..cg.edge_count()).map(BitTarget::Edge))
        .chain((0..m).map(BitTarget::Vertex))
        .collect();
    pool.shuffle(rng);
    let n = rng.gen_range(min_bits.min(pool.len())..=pool.len());
    pool.truncate(n);
    let mut edges = Vec::new();
    for (b, t) in pool.iter().enumerate() {
        let checks: Vec<usize> = match t {
            BitTarget::Face(f) => cg.face_corners(*f).to_vec(),
            BitTarget::Edge(e) => {
                let (u, v) = cg.edge_endpoints(*e);
                vec![u, v]
            }
            BitTarget::Vertex(c) => vec![*c],
            _ => unreachable!(),
        };
        edges.extend(checks.into_iter().map(|c| (b, c)));
    }
    let g = TannerGraph::new(n, m, edges).unwrap();
    let emb = embed_placement(&g, &cg, &pool).unwrap();
    (g, emb)
}

fn random_matrix(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> BitMatrix {
    BitMatrix::from_rows(cols, (0..rows).map(|_| BitVector::from_bools(&(0..cols).map(|_| rng.gen_bool(0.4)).collect::<Vec<_>>())).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_ignores_permutations(seed: u64, rows in 1usize..8, cols in 1usize..16) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_matrix(rows, cols, &mut rng);
        let mut rp: Vec<usize> = (0..rows).collect();
        let mut cp: Vec<usize> = (0..cols).collect();
        rp.shuffle(&mut rng);
        cp.shuffle(&mut rng);
        prop_assert_eq!(h.rank(), h.select(&rp, &cp).rank());
    }

    #[test]
    fn enumeration_and_search_agree(seed: u64, rows in 1usize..7, cols in 2usize..14) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_matrix(rows, cols, &mut rng);
        let full = min_weight_in_span(&h.kernel_basis()).map(|x| x.weight());
        let dfs = min_weight_codeword_bounded(&h, cols).map(|x| x.weight());
        prop_assert_eq!(full, dfs);
    }

    #[test]
    fn induced_bits_and_extraction(seed: u64, m in 1usize..7, n in 1usize..14) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_matrix(m, n, &mut rng);
        let g = TannerGraph::from_parity_check(&h).unwrap();
        let b: Vec<usize> = (0..m).filter(|_| rng.gen_bool(0.6)).collect();
        let a: Vec<usize> = b.iter().copied().filter(|_| rng.gen_bool(0.6)).collect();
        let ia: BTreeSet<usize> = g.induced_bits(&a).unwrap().into_iter().collect();
        let ib: BTreeSet<usize> = g.induced_bits(&b).unwrap().into_iter().collect();
        prop_assert!(ia.is_subset(&ib));
        if g.is_codeword_supporting(&b).unwrap() {
            let x = g.extract_low_weight_codeword(&b).unwrap();
            prop_assert!(x.weight() > 0 && x.weight() <= b.len() + 1);
            prop_assert!(g.parity_check_matrix().mul_vec(&x).is_zero());
            let d = g.min_distance_oracle(None).unwrap().unwrap();
            prop_assert!(d <= b.len() + 1);
        }
    }

    #[test]
    fn triangulation_subgraphs_are_planar(seed: u64, m in 4usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tri = triangulation(m, &mut rng);
        let edges: Vec<(usize, usize)> = tri.edges().iter().copied().filter(|_| rng.gen_bool(0.7)).collect();
        match test_planarity(m, &edges).unwrap() {
            Planarity::Planar(emb) => {
                prop_assert!(emb.is_planar_embedding());
                prop_assert_eq!(emb.edges(), edges.as_slice());
            }
            Planarity::NonPlanar(_) => prop_assert!(false, "subgraph of a planar graph reported non-planar"),
        }
    }

    #[test]
    fn extra_edge_breaks_planarity(seed: u64, m in 5usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tri = triangulation(m, &mut rng);
        let missing: Vec<(usize, usize)> = (0..m).flat_map(|u| (u + 1..m).map(move |v| (u, v))).filter(|&(u, v)| !tri.has_edge(u, v)).collect();
        prop_assume!(!missing.is_empty());
        let mut edges = tri.edges().to_vec();
        edges.push(*missing.choose(&mut rng).unwrap());
        let Planarity::NonPlanar(cert) = test_planarity(m, &edges).unwrap() else {
            return Err(TestCaseError::fail("3m - 5 simple edges cannot be planar"));
        };
        let sub: Vec<(usize, usize)> = cert.edges.iter().map(|&e| edges[e]).collect();
        prop_assert!(matches!(test_planarity(m, &sub).unwrap(), Planarity::NonPlanar(_)));
    }

    #[test]
    fn dual_structure(seed: u64, m in 4usize..11) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cg = check_graph(m, &mut rng);
        let dual = build_dual(&cg).unwrap();
        let girth = dual.girth().unwrap();
        prop_assert!(girth <= 5);
        // Proper subsets only: the whole sphere has |V^c| = m = |U| + 3 - c(U).
        for u in dual.connected_sets(5).into_iter().filter(|u| u.len() < dual.vertex_count()) {
            let vc = dual.check_set(&u).len();
            prop_assert!(vc + dual.cycle_count(&u) <= u.len() + 2, "U = {:?}", u);
            {
                let order = dual.order_nodes(&u).unwrap();
                for i in 1..order.len() {
                    prop_assert!(dual.is_connected_set(&order[..=i]));
                    let k = dual.neighbors(order[i]).iter().filter(|(w, _)| order[..i].contains(w)).count();
                    prop_assert!((1..=2).contains(&k));
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn certified_bounds_are_sound(seed: u64, m in 4usize..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (g, emb) = placed_code(m, (8 * m).div_ceil(3), &mut rng);
        let report = certify_bound(&g, &emb).unwrap();
        prop_assert!(report.certified, "{:?}", report);
        prop_assert!(report.witness_is_valid(&g));
        let d = g.min_distance_oracle(None).unwrap().unwrap();
        prop_assert!(d <= report.bound.unwrap());
    }
}
