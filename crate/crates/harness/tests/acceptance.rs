//! One test per acceptance criterion; each prints a summary line.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use planar_codes::generate::{generate_one, DegreeProfile, EnsembleSpec, GeneratedGraph};
use planar_codes::sweep::{random_profile, run_sweep, sizes_for_rate, write_csv, GraphOutcome, SweepConfig, SweepResult};
use planar_codes_core::bound::{bound_for_p, certify_graph, compute_y, delta, delta_ledger, p_of_rate, q_of_bit, BoundStatus, WitnessPath};
use planar_codes_core::check::{build_check_graph, build_check_inverse, transform_sequence, BitTarget, CheckGraphBuild, IdentificationMap, PlacedGraph, StepKind};
use planar_codes_core::dual::{build_dual, recurrence_table, tree_params, DualGraph, TreeParams};
use planar_codes_core::{Ratio, TannerGraph};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn report(criterion: &str, pass: bool, detail: String) {
    println!("criterion {criterion}: {} | {detail}", if pass { "PASS" } else { "FAIL" });
}

fn r(a: i128, b: i128) -> Ratio {
    Ratio::new(a, b)
}

/// Rates at or above 5/8 reachable with n ≤ 24.
fn soundness_rates() -> Vec<Ratio> {
    vec![r(5, 8), r(2, 3), r(11, 16), r(7, 10), r(5, 7), r(3, 4), r(4, 5)]
}

fn soundness_sweep() -> &'static SweepResult {
    static SWEEP: OnceLock<SweepResult> = OnceLock::new();
    SWEEP.get_or_init(|| {
        let cfg = SweepConfig { rates: soundness_rates(), per_rate: 200, m_range: (4, 10), seed: 2024, max_n: 24, deterministic: true };
        run_sweep(&cfg).expect("sweep runs")
    })
}

/// Generated graphs at the given rates, `per_rate` each, from a fixed seed.
fn ensemble(rates: &[Ratio], per_rate: usize, seed: u64) -> Vec<GeneratedGraph> {
    let mut out = Vec::new();
    for (ri, &rate) in rates.iter().enumerate() {
        let sizes = sizes_for_rate(rate, (4, 10), 24);
        for i in 0..per_rate {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(((ri as u64) << 32) | i as u64);
            let (m, n) = sizes[i % sizes.len()];
            let profile = random_profile(m, n, &mut rng);
            let spec = EnsembleSpec { m, target_rate: Some(rate), degree_profile: profile, seed: seed ^ i as u64, count: 1 };
            out.push(generate_one(&spec, i).expect("generator succeeds"));
        }
    }
    out
}

fn independent_syndrome_is_zero(g: &TannerGraph, x: &planar_codes_core::BitVector) -> bool {
    let mut parity = vec![false; g.m()];
    for &(b, c) in g.edges() {
        if x.get(b) {
            parity[c] = !parity[c];
        }
    }
    parity.iter().all(|&p| !p)
}

#[test]
fn criterion_01_bound_soundness() {
    let sweep = soundness_sweep();
    let simple: Vec<&GraphOutcome> = sweep.outcomes.iter().filter(|o| o.simple_dual && o.n <= 24).collect();
    let violations: Vec<&GraphOutcome> = simple.iter().copied().filter(|o| o.distance > bound_for_p(p_of_rate(o.rate).unwrap())).collect();
    let certified = simple.iter().filter(|o| o.status == BoundStatus::Certified).count();
    let mut paths = std::collections::BTreeMap::new();
    for o in &simple {
        *paths.entry(format!("{:?}", o.path)).or_insert(0) += 1;
    }
    let pass = simple.len() >= 1000 && violations.is_empty();
    report("1", pass, format!("{} graphs with simple dual, {} certified, {} violations, paths {paths:?}", simple.len(), certified, violations.len()));
    assert!(pass);
}

#[test]
fn criterion_02_staircase() {
    let got: Vec<usize> = [r(5, 8), r(11, 16), r(3, 4), r(7, 8)].iter().map(|&x| bound_for_p(p_of_rate(x).unwrap())).collect();
    let cfg = SweepConfig { rates: (9..=14).map(|k| r(k, 16)).collect(), per_rate: 20, m_range: (4, 10), seed: 9, max_n: 24, deterministic: true };
    let rows = run_sweep(&cfg).unwrap().rows;
    let mut csv = Vec::new();
    write_csv(&rows, &mut csv).unwrap();
    let bounds: Vec<usize> = rows.iter().filter_map(|row| row.bound).collect();
    let monotone = bounds.windows(2).all(|w| w[0] >= w[1]) && rows.windows(2).all(|w| w[0].rate < w[1].rate);
    let pass = got == [7, 5, 4, 3] && monotone;
    report("2", pass, format!("bounds {got:?}; staircase {bounds:?}\n{}", String::from_utf8(csv).unwrap().trim_end()));
    assert!(pass);
}

#[test]
fn criterion_03_prop3() {
    let graphs = ensemble(&[r(5, 8), r(2, 3), r(3, 4), r(11, 16)], 40, 31);
    let (mut duals, mut sets, mut bad) = (0, 0, 0);
    for gen in &graphs {
        let dual = build_dual(&gen.check_graph).unwrap();
        duals += 1;
        for u in dual.connected_sets(5).into_iter().filter(|u| u.len() < dual.vertex_count()) {
            sets += 1;
            if dual.check_set(&u).len() + dual.cycle_count(&u) > u.len() + 2 {
                bad += 1;
            }
        }
    }
    let pass = bad == 0 && sets > 0;
    report("3", pass, format!("{duals} duals, {sets} connected proper sets of size <= 5, {bad} exceptions"));
    assert!(pass);
}

#[test]
fn criterion_04_table_one() {
    let rows = [(2, 1, 1, 1, 3), (3, 1, 2, 1, 3), (4, 2, 0, 1, 1), (5, 2, 1, 2, 6), (8, 2, 4, 2, 15), (10, 3, 0, 2, 1)];
    let got: Vec<TreeParams> = rows.iter().map(|&(p, ..)| tree_params(p).unwrap()).collect();
    let want: Vec<TreeParams> = rows.iter().map(|&(p, l, z, h, t)| TreeParams { p, l, z, h, t }).collect();
    let pass = got == want;
    report("4", pass, format!("(p, l, z, h, t) = {:?}", got.iter().map(|t| (t.p, t.l, t.z, t.h, t.t)).collect::<Vec<_>>()));
    assert!(pass);
}

fn graph(checks: &[&str], bits: &[(&str, &[&str])]) -> TannerGraph {
    let idx = |c: &str| checks.iter().position(|&x| x == c).unwrap();
    let edges = bits.iter().enumerate().flat_map(|(b, (_, cs))| cs.iter().map(move |&c| (b, idx(c)))).collect();
    TannerGraph::with_labels(bits.iter().map(|(l, _)| l.to_string()).collect(), checks.iter().map(|s| s.to_string()).collect(), edges).unwrap()
}

fn built(g: &TannerGraph) -> (CheckGraphBuild, DualGraph) {
    let b = build_check_graph(g, &g.planar_embedding().unwrap()).unwrap();
    let d = build_dual(&b.check_graph).unwrap();
    (b, d)
}

/// Check graph K5 minus 2-5; c, d, e on faces 123, 234, 345; b, f, g on
/// edges 14, 35, 15; a on check 1.
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

/// Recurrence numbers and cycle-edge split of the worked example at p = 4,
/// dual edges named e1..e9.
fn worked_recurrence() -> (Vec<u64>, BTreeSet<usize>, BTreeSet<usize>) {
    let pairs: [([usize; 3], [usize; 3]); 9] = [
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
    let g = worked_example();
    let (b, dual) = built(&g);
    let face = |c: [usize; 3]| (0..dual.vertex_count()).find(|&f| b.check_graph.face_corners(f) == c.map(|x| x - 1)).unwrap();
    let ids: Vec<usize> = pairs
        .iter()
        .map(|&(x, y)| {
            let (fx, fy) = (face(x), face(y));
            (0..dual.edge_count()).find(|&e| matches!(dual.edge_endpoints(e), (a, b) if (a, b) == (fx, fy) || (a, b) == (fy, fx))).unwrap()
        })
        .collect();
    let table = recurrence_table(&dual, 4, &b.occupancy).unwrap();
    let name = |e: &usize| ids.iter().position(|x| x == e).unwrap() + 1;
    (ids.iter().map(|&e| table.r[e]).collect(), table.occupied.iter().map(name).collect(), table.unoccupied.iter().map(name).collect())
}

#[test]
fn criterion_05_recurrence_example() {
    let (rv, occ, unocc) = worked_recurrence();
    // The unoccupied set follows from the r values: every cycle-edge that
    // carries no degree-2 bit.
    let pass = rv == [1, 1, 1, 0, 1, 1, 1, 0, 0] && occ == BTreeSet::from([6, 7]) && unocc == BTreeSet::from([1, 2, 3, 5]);
    report("5", pass, format!("r = {rv:?}, occupied {occ:?}, unoccupied {unocc:?}; the listed unoccupied set {{2, 3, 5}} omits e1 although r(e1) = 1 (see the ignored test)"));
    assert!(pass);
}

#[test]
#[ignore = "the listed unoccupied set {e2, e3, e5} contradicts the listed r(e1) = 1 with e1 unoccupied"]
fn criterion_05_listed_unoccupied_set() {
    let (_, _, unocc) = worked_recurrence();
    report("5 (listed set)", unocc == BTreeSet::from([2, 3, 5]), format!("computed {unocc:?}"));
    assert_eq!(unocc, BTreeSet::from([2, 3, 5]));
}

fn inverse_parts(gen: &GeneratedGraph) -> Option<(planar_codes_core::check::CheckInverse, CheckGraphBuild)> {
    let g = &gen.graph;
    let b = build_check_graph(g, &gen.embedding).ok()?;
    let inv = build_check_inverse(g, &b.check_graph, &b.identification).ok()?;
    Some((inv, b))
}

#[test]
fn criterion_06_y_lower_bound() {
    let graphs = ensemble(&[r(11, 16), r(7, 10), r(5, 7), r(3, 4), r(4, 5)], 40, 61);
    let (mut checked, mut bad) = (0, Vec::new());
    for gen in &graphs {
        let Some((inv, b)) = inverse_parts(gen) else { continue };
        let dual = build_dual(&b.check_graph).unwrap();
        if dual.girth().is_none_or(|g| g < 3) {
            continue;
        }
        let ident = IdentificationMap::new(inv.targets.clone(), b.check_graph.face_count()).unwrap();
        let y = compute_y(&inv.graph, &b.check_graph, &ident, &dual, 2).unwrap();
        let (n, m) = (inv.graph.n() as i64, inv.graph.m() as i64);
        checked += 1;
        // Y counts every dual edge from both ends.
        if !(y.y > 0 && y.y % 2 == 0 && y.y / 2 >= 5 * n - 16 * m + 32 && y.y_induced >= y.y) {
            bad.push((n, m, y.y));
        }
    }
    let pass = checked >= 100 && bad.is_empty();
    report("6", pass, format!("{checked} check inverses at R >= 11/16, {} failures {bad:?}", bad.len()));
    assert!(pass);
}

#[test]
fn criterion_07_delta_ledger() {
    let graphs = ensemble(&[r(5, 8), r(2, 3), r(11, 16), r(3, 4)], 60, 71);
    let (mut ds2, mut de1, mut alphas) = (0, 0, 0);
    let mut failures = Vec::new();
    let d2 = delta(2).unwrap();
    for gen in &graphs {
        let Some((inv, b)) = inverse_parts(gen) else { continue };
        let cg = &b.check_graph;
        let dual = build_dual(cg).unwrap();
        if dual.girth().is_none_or(|g| g < 3) {
            continue;
        }
        let steps = transform_sequence(&inv, &gen.graph, cg, &b.identification).unwrap();
        for p in 1..=4 {
            let ledger = delta_ledger(&PlacedGraph::from_check_inverse(&inv), &steps, cg, &dual, p).unwrap();
            for (i, e) in ledger.entries.iter().enumerate() {
                if let (Some(a), Some(l)) = (e.alpha, e.alpha_lower) {
                    alphas += 1;
                    if Ratio::from_int(a as i128) < l {
                        failures.push(format!("p={p} alpha {a} < {l}"));
                    }
                }
                if p != 2 {
                    continue;
                }
                if e.kind == StepKind::Ds2 {
                    ds2 += 1;
                    if Ratio::from_int(e.measured as i128) != d2 {
                        failures.push(format!("DS2 measured {}", e.measured));
                    }
                }
                let freed_by_ds2 = i > 0 && ledger.entries[i - 1].kind == StepKind::Ds2;
                if e.kind == StepKind::De && freed_by_ds2 && matches!(&steps[i], planar_codes_core::check::TransformStep::De { factor: 1, .. }) {
                    de1 += 1;
                    if e.block_measured != Some(0) {
                        failures.push(format!("DE(1) block {:?}", e.block_measured));
                    }
                }
            }
        }
    }
    let pass = failures.is_empty() && ds2 > 0 && de1 > 0 && alphas > 0;
    report("7", pass, format!("delta(2) = {d2} (2 per dual edge); {ds2} DS2 steps, {de1} DS2-freed DE(1) blocks, {alphas} alpha checks; failures {failures:?}"));
    assert!(pass);
}

#[test]
fn criterion_08_witness_validity() {
    let sweep = soundness_sweep();
    let certified: Vec<&GraphOutcome> = sweep.outcomes.iter().filter(|o| o.status == BoundStatus::Certified).collect();
    let bad = certified
        .iter()
        .filter(|o| match (&o.witness, o.certified_bound) {
            (Some(x), Some(b)) => !(x.weight() > 0 && x.weight() <= b && independent_syndrome_is_zero(&o.graph, x)),
            _ => true,
        })
        .count();
    let pass = !certified.is_empty() && bad == 0;
    report("8", pass, format!("{} certified reports, {bad} invalid witnesses", certified.len()));
    assert!(pass);
}

#[test]
fn criterion_09_fast_paths_and_girth() {
    let graphs = ensemble(&[r(5, 8), r(2, 3), r(3, 4)], 40, 91);
    let (mut dup_cases, mut dup_ok, mut max_girth) = (0, 0, 0);
    for gen in &graphs {
        let dual = build_dual(&gen.check_graph).unwrap();
        max_girth = max_girth.max(dual.girth().unwrap_or(0));
        let g = &gen.graph;
        let dup_of = |b: usize| {
            let mut edges = g.edges().to_vec();
            edges.extend(g.neighborhood(b).into_iter().map(|c| (g.n(), c)));
            TannerGraph::new(g.n() + 1, g.m(), edges).unwrap()
        };
        // A copy only fits when some face around the bit holds all three checks.
        let Some(dup) = (0..g.n()).filter(|&b| g.bit_degree(b) == 3).map(dup_of).find(|d| d.planar_embedding().is_ok()) else { continue };
        dup_cases += 1;
        let rep = certify_graph(&dup).unwrap();
        if rep.bound == Some(2) && rep.path == Some(WitnessPath::DuplicateBits) && dup.min_distance_oracle(None).unwrap() == Some(2) {
            dup_ok += 1;
        }
    }
    let pass = dup_cases > 0 && dup_ok == dup_cases && max_girth <= 5;
    report("9", pass, format!("{dup_ok}/{dup_cases} duplicated degree-3 bits give d <= 2 (oracle d = 2); max dual girth {max_girth} over {} duals", graphs.len()));
    assert!(pass);
}

fn degree_one_q(g: &TannerGraph, p: usize) -> u64 {
    let (b, dual) = built(g);
    let s = g.bit_by_label("s").unwrap();
    assert!(matches!(b.identification.target(s), BitTarget::Vertex(_)));
    q_of_bit(s, &b.check_graph, &b.identification, &dual, p).unwrap()
}

#[test]
fn criterion_10_table_two() {
    // (a): check c stacked in a face of an octahedron.
    let case_a = graph(
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
    );
    // (b): u, v of degree three inside the doubled edge x-y.
    let case_b = graph(
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
    );
    let got = [
        degree_one_q(&case_a, 1),
        degree_one_q(&case_a, 2),
        degree_one_q(&case_a, 3),
        degree_one_q(&case_b, 3),
        degree_one_q(&case_a, 4),
        degree_one_q(&case_b, 4),
    ];
    let pass = got == [3, 12, 15, 14, 6, 5] && degree_one_q(&case_b, 1) == 3 && degree_one_q(&case_b, 2) == 12;
    report("10", pass, format!("q(v_b) for (p, case) = (1,a) (2,a) (3,a) (3,b) (4,a) (4,b): {got:?}"));
    assert!(pass);
}

#[test]
fn generator_reproduces_check_graphs() {
    let mut ok = 0;
    let total = 1000;
    for i in 0..total {
        let m: usize = 4 + i % 7;
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        rng.set_stream(i as u64);
        let n = (8 * m).div_ceil(3) + i % 3;
        let profile = random_profile(m, n, &mut rng);
        let spec = EnsembleSpec { m, target_rate: None, degree_profile: profile.clone(), seed: 77, count: 1 };
        let gen = generate_one(&spec, i).unwrap();
        let g = &gen.graph;
        let degrees = |d: usize| g.bits_of_degree(d).len();
        let planar = g.validate_embedding(&gen.embedding).is_ok();
        let rebuilt = build_check_graph(g, &gen.embedding).unwrap();
        let same = planar_codes_core::check::same_check_graph(&rebuilt.check_graph, &gen.check_graph);
        let high: Vec<usize> = (4..=m).flat_map(|d| std::iter::repeat_n(d, degrees(d))).collect();
        let profile_ok = DegreeProfile { one: degrees(1), two: degrees(2), three: degrees(3), high } == profile;
        if planar && same && profile_ok {
            ok += 1;
        }
    }
    report("generator", ok == total, format!("{ok}/{total} graphs planar, matching their profile and check graph"));
    assert_eq!(ok, total);
}
