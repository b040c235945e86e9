//! End-to-end acceptance suite.  Each test is one criterion and prints
//! one PASS line; all comparisons are exact unless noted.

use std::collections::BTreeSet;
use std::time::Instant;

use num::{One, Zero};

use momentcone::embedding::EmbeddingData;
use momentcone::linalg::{qi, qv_from, qv_zero, Q, QV};
use momentcone::momentcone::{sl2_interval, InequalityGenerator, LatticeAnswer};
use momentcone::oracle;
use momentcone::polyhedra::{InequalitySystem, Provenance, Row};
use momentcone::rootdata::{cycles_string, RootDatum, WeylElement, DEFAULT_WEYL_BOUND};
use momentcone::schubert::{class_single, pull_back, Class, SchubertTable};

/// Deterministic linear congruential generator for "random" weights.
struct Lcg(u64);

impl Lcg {
    fn new(seed: u64) -> Self {
        Lcg(seed)
    }
    fn next(&mut self) -> u64 {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        self.0 >> 33
    }
    fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }
}

fn a2_in_g2() -> EmbeddingData {
    let a2 = RootDatum::from_type("A2").unwrap();
    let g2 = RootDatum::from_type("G2").unwrap();
    EmbeddingData::from_matrix_i64(a2, g2, &[vec![1, 1], vec![0, 1]])
        .unwrap()
        .make_compatible()
        .unwrap()
}

fn cycles(d: &RootDatum, w: &WeylElement) -> String {
    cycles_string(&d.to_permutation(w).unwrap())
}

fn pass(line: &str, start: Instant, limit_s: u64) {
    let dt = start.elapsed();
    assert!(
        dt.as_secs() < limit_s,
        "{line}: exceeded the {limit_s}s budget ({dt:?})"
    );
    println!("{line}: PASS ({dt:?})");
}

#[test]
fn criterion_01_plethysm_regression() {
    let t0 = Instant::now();
    let a2 = RootDatum::from_type("A2").unwrap();
    let weights = oracle::weight_multiplicities(&a2, &[2, 1]).unwrap().weight_list();
    assert_eq!(weights.len(), 15);
    let e = EmbeddingData::from_weights(RootDatum::from_type("A2").unwrap(), &weights)
        .unwrap()
        .make_compatible()
        .unwrap();
    // The published restriction matrix in fundamental-weight bases.
    let published: [[i64; 14]; 2] = [
        [2, 5, 5, 6, 7, 5, 7, 6, 5, 5, 5, 2, 3, 1],
        [1, 0, 2, 2, 2, 5, 3, 4, 5, 4, 3, 5, 2, 2],
    ];
    for i in 0..2 {
        for j in 0..14 {
            assert_eq!(
                *e.fstar.at(i, j),
                qi(published[i][j]),
                "f* entry ({i},{j})"
            );
        }
        // The central column: the weights of a special unitary module
        // sum to zero.
        assert_eq!(*e.fstar.at(i, 14), Q::zero());
    }
    assert_eq!(e.bar_simple, vec![3, 7, 9], "induced simple system");
    let cubicles = e.cubicles().unwrap();
    let got: BTreeSet<(usize, String)> = cubicles
        .iter()
        .map(|c| (c.v.length(), cycles(&e.target, &c.v)))
        .collect();
    let expected: BTreeSet<(usize, String)> = [
        (2, "(6 7)(12 13)"),
        (0, "e"),
        (8, "(2 3)(4 6 5)(7 8 9)(10 12 11)(13 14)"),
        (10, "(2 3 6 5 4)(7 8 9 12 11 10)(13 14)"),
    ]
    .into_iter()
    .map(|(l, s)| (l, s.to_string()))
    .collect();
    assert_eq!(got, expected, "relative Weyl set");
    let lift = e.lift_j().unwrap();
    assert_eq!(
        cycles(&e.target, &lift.generators[0]),
        "(1 6)(2 12)(4 8)(5 9)(7 14)(13 15)"
    );
    assert_eq!(
        cycles(&e.target, &lift.generators[1]),
        "(1 2)(3 7)(6 13)(8 10)(9 11)(12 15)"
    );
    let expected_w0 = {
        let j1 = &lift.generators[0];
        let j2 = &lift.generators[1];
        e.target.mul(&e.target.mul(j1, j2), j1)
    };
    assert_eq!(lift.w0_image, expected_w0);
    assert_eq!(
        cycles(&e.target, &lift.w0_image),
        "(1 15)(2 13)(3 14)(4 10)(5 11)(6 12)"
    );
    pass("criterion 1 (plethysm regression)", t0, 10);
}

/// The length-`l` elements among the minimal coset representatives.
fn reps_of_length(d: &RootDatum, j: &[usize], l: usize) -> Vec<WeylElement> {
    d.coset_reps(j, DEFAULT_WEYL_BOUND)
        .unwrap()
        .into_iter()
        .filter(|w| w.length() == l)
        .collect()
}

#[test]
fn criterion_02_schubert_tables() {
    let t0 = Instant::now();
    let g2 = RootDatum::from_type("G2").unwrap();
    let table = SchubertTable::new(&g2).unwrap();
    // Powers of the degree-one classes, as published for the two
    // ten-dimensional Grassmannians.
    let word = |ws: &[usize]| g2.element_from_word(ws);
    let expect_power = |i: usize, n: u32, coeff: i64, target: &[usize]| {
        let mut acc = class_single(g2.identity(), qi(1));
        let s = class_single(g2.simple_reflection(i), qi(1));
        for _ in 0..n {
            acc = table.cup(&acc, &s, DEFAULT_WEYL_BOUND).unwrap();
        }
        let expected = class_single(word(target), qi(coeff));
        assert_eq!(acc, expected, "sigma_s{}^{}", i + 1, n);
    };
    expect_power(0, 2, 1, &[1, 0]);
    expect_power(0, 3, 2, &[0, 1, 0]);
    expect_power(0, 4, 2, &[1, 0, 1, 0]);
    expect_power(0, 5, 2, &[0, 1, 0, 1, 0]);
    expect_power(1, 2, 3, &[0, 1]);
    expect_power(1, 3, 6, &[1, 0, 1]);
    expect_power(1, 4, 18, &[0, 1, 0, 1]);
    expect_power(1, 5, 18, &[1, 0, 1, 0, 1]);
    // Triples (w1, w2, w3) of Grassmannian classes whose product
    // contains the top class of the k = 1 Grassmannian, up to
    // permutation.  W_1 is generated by s2, so representatives avoid a
    // trailing s2.
    let w1: Vec<WeylElement> = g2.coset_reps(&[1], DEFAULT_WEYL_BOUND).unwrap();
    assert_eq!(w1.len(), 6);
    let top = reps_of_length(&g2, &[1], 5).remove(0);
    let mut found: BTreeSet<Vec<String>> = BTreeSet::new();
    for a in &w1 {
        for b in &w1 {
            for c in &w1 {
                if a.length() + b.length() + c.length() != 5 {
                    continue;
                }
                let ab = table
                    .cup(&class_single(a.clone(), qi(1)), &class_single(b.clone(), qi(1)), DEFAULT_WEYL_BOUND)
                    .unwrap();
                let abc = table
                    .cup(&ab, &class_single(c.clone(), qi(1)), DEFAULT_WEYL_BOUND)
                    .unwrap();
                if abc.get(&top).map(|x| !x.is_zero()).unwrap_or(false) {
                    let mut key =
                        vec![a.word_string(), b.word_string(), c.word_string()];
                    key.sort();
                    found.insert(key);
                }
            }
        }
    }
    let expect_triple = |a: &[usize], b: &[usize], c: &[usize]| -> Vec<String> {
        let mut key = vec![
            word(a).word_string(),
            word(b).word_string(),
            word(c).word_string(),
        ];
        key.sort();
        key
    };
    let expected: BTreeSet<Vec<String>> = [
        expect_triple(&[], &[], &[0, 1, 0, 1, 0]),
        expect_triple(&[], &[0], &[1, 0, 1, 0]),
        expect_triple(&[], &[1, 0], &[0, 1, 0]),
        expect_triple(&[0], &[0], &[0, 1, 0]),
        expect_triple(&[0], &[1, 0], &[1, 0]),
    ]
    .into_iter()
    .collect();
    assert_eq!(found, expected, "k = 1 triple list");
    pass("criterion 2 (Schubert tables)", t0, 10);
}

/// The published inequality families for the pair cone of the diagonal
/// in a product of two copies, expanded over all permutations of the
/// three weight slots.
fn g2xg2_expected_rows() -> Vec<Vec<i64>> {
    // Coefficients on ((x1, y1), (x2, y2), (x3, y3)); the third slot is
    // the diagonal (source) weight.
    let families: [[i64; 6]; 10] = [
        [2, 3, 2, 3, -2, -3],
        [2, 3, 1, 3, -1, -3],
        [2, 3, 1, 0, -1, 0],
        [1, 3, 1, 3, -1, 0],
        [1, 3, 1, 0, 1, 0],
        [1, 2, 1, 2, -1, -2],
        [1, 2, 1, 1, -1, -1],
        [1, 2, 0, 1, 0, -1],
        [1, 1, 1, 1, 0, -1],
        [1, 1, 0, 1, 0, 1],
    ];
    let perms: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let mut rows: BTreeSet<Vec<i64>> = BTreeSet::new();
    for fam in &families {
        for p in &perms {
            let mut r = vec![0i64; 6];
            for (slot, &src) in p.iter().enumerate() {
                r[2 * slot] = fam[2 * src];
                r[2 * slot + 1] = fam[2 * src + 1];
            }
            rows.insert(r);
        }
    }
    rows.into_iter().collect()
}

fn row_from_i64(coeffs: &[i64], vars: usize) -> Row {
    assert_eq!(coeffs.len(), vars);
    Row::geq0(qv_from(coeffs), Provenance::Other("expected".into()))
}

#[test]
fn criterion_03_g2xg2_moment_cone() {
    let t0 = Instant::now();
    let g2 = RootDatum::from_type("G2").unwrap();
    let e = EmbeddingData::diagonal(&g2, 2).unwrap().make_compatible().unwrap();
    assert_eq!(e.cubicles().unwrap().len(), 1, "trivial relative Weyl set");
    let g = InequalityGenerator::new(&e).unwrap();
    let cone = g.cone_inequalities().unwrap();
    let (pruned, _) = cone.prune_redundant();
    // Expected: the ten published families over all permutations of the
    // three weight slots, plus the chamber rows.  The published rows
    // put the diagonal weight in the third slot; our variables put it
    // first.
    let mut expected = InequalitySystem::new(cone.variables.clone());
    for i in 0..6 {
        let mut a = qv_zero(6);
        a[i] = qi(1);
        expected.rows.push(Row::geq0(a, Provenance::Other("chamber".into())));
    }
    for r in g2xg2_expected_rows() {
        // (x1, y1, x2, y2, x3, y3) -> (xt1, xt2, x1, x2, x3, x4)
        let reordered = vec![r[4], r[5], r[0], r[1], r[2], r[3]];
        expected.rows.push(row_from_i64(&reordered, 6));
    }
    assert!(
        pruned.equivalent(&expected),
        "pruned cone differs from the published families"
    );
    // The two rows the published account singles out as redundant: the
    // fifth family of each list (triples with intersection multiplicity
    // above one).
    for fam in [[1i64, 0, 1, 3, 1, 0], [0, 1, 1, 1, 0, 1]] {
        let row = row_from_i64(&fam.to_vec(), 6);
        assert!(
            pruned.implies(&row).is_some(),
            "row {fam:?} should be certified redundant"
        );
    }
    pass("criterion 3 (G2xG2 moment cone)", t0, 60);
}

#[test]
fn criterion_04_g2_a2_pair_lists_and_system() {
    let t0 = Instant::now();
    let e = a2_in_g2();
    let src = &e.source;
    let tgt = &e.target;
    let src_table = SchubertTable::new(src).unwrap();
    let tgt_table = SchubertTable::new(tgt).unwrap();
    let word_s = |ws: &[usize]| src.element_from_word(ws).word_string();
    // The two subdivision rays to inspect: the ray stabilized by s~2
    // (one-parameter subgroup into the first Grassmannian pair) and the
    // regular ray (full source flag into the second Grassmannian).  Both
    // lie in the identity cubicle.
    let pairs_for = |chi: &QV| -> Vec<(String, String, Q)> {
        let jt: Vec<usize> = (0..src.ss_rank)
            .filter(|&i| {
                momentcone::linalg::qv_dot(&src.simple_root_q(i), chi).is_zero()
            })
            .collect();
        let h = e.push_coweight(chi);
        let j: Vec<usize> = (0..tgt.ss_rank)
            .filter(|&i| {
                momentcone::linalg::qv_dot(&tgt.simple_root_q(i), &h).is_zero()
            })
            .collect();
        let wt_reps: BTreeSet<WeylElement> =
            src.coset_reps(&jt, DEFAULT_WEYL_BOUND).unwrap().into_iter().collect();
        let mut out = Vec::new();
        for u in tgt.coset_reps(&j, DEFAULT_WEYL_BOUND).unwrap() {
            if u.length() > src.positive_roots.len() {
                continue;
            }
            let pulled: Class = pull_back(
                &src_table,
                &tgt_table,
                &e.fstar,
                &class_single(u.clone(), qi(1)),
                DEFAULT_WEYL_BOUND,
            )
            .unwrap();
            for (ut, c) in pulled {
                if !c.is_zero() {
                    assert!(wt_reps.contains(&ut), "pullback left the sub-Grassmannian ring");
                    out.push((ut.word_string(), u.word_string(), c));
                }
            }
        }
        out.sort();
        out
    };
    // k = 1: ray with f_* image on the first Grassmannian wall.
    let k1 = pairs_for(&qv_from(&[2, 1]));
    let expected_k1: Vec<(String, String, Q)> = vec![
        ("e".into(), "e".into(), qi(1)),
        (word_s(&[0]), "s1".into(), qi(1)),
        (word_s(&[1, 0]), "s2*s1".into(), qi(1)),
    ];
    assert_eq!(k1, sorted(expected_k1), "k = 1 pair list");
    // k = 2: regular source ray.
    let k2 = pairs_for(&qv_from(&[1, 1]));
    let expected_k2: Vec<(String, String, Q)> = vec![
        ("e".into(), "e".into(), qi(1)),
        (word_s(&[0]), "s2".into(), qi(1)),
        (word_s(&[1]), "s2".into(), qi(1)),
        (word_s(&[0, 1]), "s1*s2".into(), qi(1)),
        (word_s(&[1, 0]), "s1*s2".into(), qi(1)),
        (word_s(&[0, 1, 0]), "s2*s1*s2".into(), qi(1)),
    ];
    assert_eq!(k2, sorted(expected_k2), "k = 2 pair list");
    // Pruned joint system: the four published rows plus the chamber.
    let g = InequalityGenerator::new(&e).unwrap();
    let cone = g.cone_inequalities().unwrap();
    let (pruned, _) = cone.prune_redundant();
    let mut expected = InequalitySystem::new(cone.variables.clone());
    for i in 0..4 {
        let mut a = qv_zero(4);
        a[i] = qi(1);
        expected.rows.push(Row::geq0(a, Provenance::Other("chamber".into())));
    }
    for r in [
        [-1i64, -1, 1, 2], // xt + yt <= x + 2y
        [-1, 0, 1, 1],     // xt <= x + y
        [0, -1, 1, 1],     // yt <= x + y
        [1, 1, 0, -1],     // xt + yt >= y
    ] {
        expected.rows.push(row_from_i64(&r.to_vec(), 4));
    }
    let canon = |s: &InequalitySystem| -> BTreeSet<Vec<String>> {
        s.rows
            .iter()
            .map(|r| {
                let c = r.canonical();
                c.coeffs.iter().map(|x| x.to_string()).collect()
            })
            .collect()
    };
    assert_eq!(canon(&pruned), canon(&expected), "pruned system row set");
    // Self-duality: swapping the two source coordinates leaves the
    // system invariant.
    let mut swapped = InequalitySystem::new(pruned.variables.clone());
    for r in &pruned.rows {
        let mut c = r.coeffs.clone();
        c.swap(0, 1);
        swapped.rows.push(Row { coeffs: c, ..r.clone() });
    }
    assert_eq!(canon(&swapped), canon(&pruned), "self-duality under xt <-> yt");
    pass("criterion 4 (G2 > A2 pair lists and system)", t0, 30);
}

fn sorted<T: Ord>(mut v: Vec<T>) -> Vec<T> {
    v.sort();
    v
}

#[test]
fn criterion_05_kostant_torus_polytopes() {
    let t0 = Instant::now();
    let mut rng = Lcg::new(5);
    for label in ["A2", "B2", "G2"] {
        let target = RootDatum::from_type(label).unwrap();
        let rank = target.rank;
        let torus = RootDatum::from_type(&format!("u{rank}")).unwrap();
        let e = EmbeddingData::from_matrix(
            torus,
            target,
            momentcone::linalg::QMat::identity(rank),
        )
        .unwrap()
        .make_compatible()
        .unwrap();
        let g = InequalityGenerator::new(&e).unwrap();
        let target = RootDatum::from_type(label).unwrap();
        let weyl = target.enumerate_weyl(DEFAULT_WEYL_BOUND).unwrap();
        for _ in 0..20 {
            let mut lam: Vec<i64> = (0..target.rank)
                .map(|_| rng.below(11) as i64)
                .collect();
            if lam.iter().all(|&c| c == 0) {
                lam[0] = 1;
            }
            let lam_q = qv_from(&lam);
            let sys = g.polytope_inequalities(&lam_q).unwrap();
            let verts = sorted(sys.vertices().unwrap());
            let mut orbit: Vec<QV> = weyl.iter().map(|w| w.act_weight(&lam_q)).collect();
            orbit.sort();
            orbit.dedup();
            assert_eq!(verts, orbit, "{label} lam = {lam:?}");
        }
    }
    pass("criterion 5 (Kostant torus polytopes)", t0, 120);
}

/// Integer coefficient rows of a homogeneous system (all generated rows
/// have integer canonical forms).
fn integer_rows(sys: &InequalitySystem) -> Vec<(Vec<i64>, bool)> {
    sys.rows
        .iter()
        .map(|r| {
            let c = r.canonical();
            assert!(c.constant.is_zero());
            let coeffs = c
                .coeffs
                .iter()
                .map(|x| {
                    assert!(x.denom().is_one());
                    let v: i64 = x.numer().try_into().unwrap();
                    v
                })
                .collect();
            (coeffs, c.equality)
        })
        .collect()
}

fn int_rows_contain(rows: &[(Vec<i64>, bool)], pt: &[i64]) -> bool {
    rows.iter().all(|(coeffs, equality)| {
        let v: i64 = coeffs.iter().zip(pt).map(|(a, b)| a * b).sum();
        if *equality {
            v == 0
        } else {
            v >= 0
        }
    })
}

#[test]
fn criterion_06_klyachko_desk_scale() {
    let t0 = Instant::now();
    // A1: triple (lam1, lam2; nu) admissible iff the Clebsch-Gordan
    // rule allows it; the weight lattice maps onto Z/2.
    {
        let a1 = RootDatum::from_type("A1").unwrap();
        let e = EmbeddingData::diagonal(&a1, 2).unwrap().make_compatible().unwrap();
        let g = InequalityGenerator::new(&e).unwrap();
        let rows = integer_rows(&g.cone_inequalities().unwrap());
        for l1 in 0..=6i64 {
            for l2 in 0..=6i64 {
                let tens = oracle::tensor_decompose(&a1, &[l1], &[l2], 1_000_000).unwrap();
                for nu in 0..=6i64 {
                    let lr = tens
                        .iter()
                        .find(|(w, _)| w[0] == nu)
                        .map(|(_, m)| *m)
                        .unwrap_or(0);
                    let congruent = (nu - l1 - l2).rem_euclid(2) == 0;
                    let member = congruent && int_rows_contain(&rows, &[nu, l1, l2]);
                    assert_eq!(member, lr > 0, "A1 ({l1},{l2};{nu})");
                }
            }
        }
    }
    // A2: Littlewood-Richardson positivity on the full grid; type A
    // saturation makes the rational cone plus the root-lattice
    // congruence an exact criterion.
    {
        let a2 = RootDatum::from_type("A2").unwrap();
        let e = EmbeddingData::diagonal(&a2, 2).unwrap().make_compatible().unwrap();
        let g = InequalityGenerator::new(&e).unwrap();
        let rows = integer_rows(&g.cone_inequalities().unwrap());
        let grid: Vec<[i64; 2]> = (0..=6i64)
            .flat_map(|a| (0..=6i64).map(move |b| [a, b]))
            .collect();
        let class3 = |w: &[i64]| (w[0] + 2 * w[1]).rem_euclid(3);
        // The tensor product is symmetric, so decompose each unordered
        // pair once and check membership for both orderings.
        for (i, l1) in grid.iter().enumerate() {
            for l2 in &grid[i..] {
                let tens = oracle::tensor_decompose(&a2, l1, l2, 4_000_000).unwrap();
                for nu in &grid {
                    let lr = tens
                        .iter()
                        .find(|(w, _)| w.as_slice() == nu.as_slice())
                        .map(|(_, m)| *m)
                        .unwrap_or(0);
                    let congruent = class3(nu) == (class3(l1) + class3(l2)).rem_euclid(3);
                    // Cone slot order: source weight, then the duals of
                    // the two factors (the pair cone couples the source
                    // with the dual orbit).
                    for (a, b) in [(l1, l2), (l2, l1)] {
                        let pt = [nu[0], nu[1], a[1], a[0], b[1], b[0]];
                        let member = congruent && int_rows_contain(&rows, &pt);
                        assert_eq!(
                            member,
                            lr > 0,
                            "A2 ({a:?},{b:?};{nu:?}) lr = {lr}"
                        );
                    }
                }
            }
        }
    }
    pass("criterion 6 (Klyachko desk scale)", t0, 300);
}

#[test]
fn criterion_07_soundness_sweep() {
    let t0 = Instant::now();
    let defining = {
        let a1 = RootDatum::from_type("A1").unwrap();
        let a2 = RootDatum::from_type("A2").unwrap();
        EmbeddingData::from_matrix_i64(a1, a2, &[vec![1, 1]])
            .unwrap()
            .make_compatible()
            .unwrap()
    };
    let principal3 = {
        let a1 = RootDatum::from_type("A1").unwrap();
        let cube = RootDatum::from_type("A1xA1xA1").unwrap();
        EmbeddingData::from_matrix_i64(a1, cube, &[vec![1, 1, 1]])
            .unwrap()
            .make_compatible()
            .unwrap()
    };
    let max_rank = a2_in_g2();
    for (name, e, bound) in [
        ("SU(2) < SU(3) defining", &defining, 8u64),
        ("principal SU(2) < SU(2)^3", &principal3, 8),
        ("A2 < G2", &max_rank, 8),
    ] {
        let g = InequalityGenerator::new(e).unwrap();
        let mut positive = 0u64;
        for lam in dominant_grid(e.target.rank, bound) {
            let ch = oracle::weight_multiplicities(&e.target, &lam).unwrap();
            let restricted = oracle::restrict_character(e, &ch).unwrap();
            let decomp =
                oracle::decompose_character(&e.source, &restricted, 8_000_000).unwrap();
            let lam_q = qv_from(&lam);
            let sys = g.polytope_inequalities(&lam_q).unwrap();
            for (lamt, m) in decomp {
                if m == 0 {
                    continue;
                }
                positive += 1;
                let pt = qv_from(&lamt);
                assert!(
                    sys.contains(&pt),
                    "{name}: branching-positive pair {lamt:?} in {lam:?} violates the system"
                );
            }
        }
        assert!(positive > 0, "{name}: sweep found no positive pairs");
    }
    pass("criterion 7 (soundness sweep)", t0, 300);
}

fn dominant_grid(rank: usize, bound: u64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..rank {
        let mut next = Vec::new();
        for w in &out {
            for c in 0..=bound as i64 {
                let mut w2 = w.clone();
                w2.push(c);
                next.push(w2);
            }
        }
        out = next;
    }
    out
}

#[test]
fn criterion_08_saturation_counterexample() {
    let t0 = Instant::now();
    let g2 = RootDatum::from_type("G2").unwrap();
    let e = EmbeddingData::diagonal(&g2, 2).unwrap().make_compatible().unwrap();
    let g = InequalityGenerator::new(&e).unwrap();
    let lamt = [0i64, 1];
    let lam = [1i64, 0, 0, 1];
    let cone = g.cone_inequalities().unwrap();
    // The target group is its own dual, so the branching pair is tested
    // directly.
    let mut pt = qv_from(&lamt);
    pt.extend(qv_from(&lam));
    assert!(cone.contains(&pt), "rational system rejects the pair");
    assert_eq!(
        g.lattice_necessary(&lamt, &lam, 100_000).unwrap(),
        LatticeAnswer::Yes,
        "lattice condition rejects the pair"
    );
    assert_eq!(
        oracle::branching_multiplicity(&e, &lamt, &lam).unwrap(),
        0,
        "multiplicity at n = 1"
    );
    assert!(
        oracle::branching_multiplicity(&e, &[0, 3], &[3, 0, 0, 3]).unwrap() > 0,
        "multiplicity at n = 3"
    );
    pass("criterion 8 (saturation counterexample)", t0, 60);
}

#[test]
fn criterion_09_sl2_closed_form() {
    let t0 = Instant::now();
    let mut rng = Lcg::new(9);
    for label in ["A2", "B2", "G2"] {
        let target = RootDatum::from_type(label).unwrap();
        let d = vec![2i64; target.ss_rank];
        let e = EmbeddingData::sl2(target, &d).unwrap().make_compatible().unwrap();
        let g = InequalityGenerator::new(&e).unwrap();
        for _ in 0..20 {
            let lam: Vec<i64> = (0..e.target.rank)
                .map(|_| rng.below(11) as i64)
                .collect();
            let lam_q = qv_from(&lam);
            let (lo, hi) = sl2_interval(&e, &lam_q).unwrap();
            assert!(lo <= hi);
            let sys = g.polytope_inequalities(&lam_q).unwrap();
            let verts = sorted(sys.vertices().unwrap());
            let expected = if lo == hi {
                vec![vec![lo.clone()]]
            } else {
                vec![vec![lo.clone()], vec![hi.clone()]]
            };
            assert_eq!(verts, expected, "{label} lam = {lam:?}");
        }
    }
    pass("criterion 9 (sl2 closed form)", t0, 60);
}

#[test]
fn criterion_10_property_suites() {
    let t0 = Instant::now();
    for label in ["A2", "B2", "G2"] {
        let d = RootDatum::from_type(label).unwrap();
        let table = SchubertTable::new(&d).unwrap();
        let weyl = d.enumerate_weyl(DEFAULT_WEYL_BOUND).unwrap();
        let w0 = d.longest_element();
        // BGG delta-extraction calibration: representatives extract to
        // the Kronecker delta.
        for w in weyl {
            let p = table.bgg(w);
            let extracted = table.extract_class(&p, DEFAULT_WEYL_BOUND).unwrap();
            assert_eq!(
                extracted,
                class_single(w.clone(), qi(1)),
                "{label}: extraction of the representative of {}",
                w.word_string()
            );
        }
        // Divided differences square to zero.
        for i in 0..d.ss_rank {
            let p = table.bgg(&w0);
            let once = table.divided_difference(i, &p);
            let twice = table.divided_difference(i, &once);
            assert!(twice.is_zero(), "{label}: D_{i} squared");
        }
        // Chevalley multiplication agrees with polynomial multiplication
        // followed by extraction.
        for w in weyl {
            for k in 0..d.ss_rank {
                let mut lam = qv_zero(d.rank);
                lam[k] = qi(1);
                let via_chevalley = table.chevalley_mul(&lam, &class_single(w.clone(), qi(1)));
                let p = momentcone::schubert::Poly::linear(&lam).mul(&table.bgg(w));
                let via_poly = table.extract_class(&p, DEFAULT_WEYL_BOUND).unwrap();
                assert_eq!(via_chevalley, via_poly, "{label}: Chevalley at {}", w.word_string());
            }
        }
        // Longest-element action: w0 sends the class of w to the class
        // of w0 w w0 with sign (-1)^(l(w)).
        for w in weyl {
            let acted = table.weyl_action(&w0, &class_single(w.clone(), qi(1)));
            let target = d.mul(&d.mul(&w0, w), &w0);
            let sign = if w.length() % 2 == 0 { 1 } else { -1 };
            assert_eq!(
                acted,
                class_single(target, qi(sign)),
                "{label}: w0 action on {}",
                w.word_string()
            );
        }
    }
    // Cone duality round trip: generators -> facets -> extreme rays
    // recovers the cone.
    {
        use momentcone::polyhedra::RationalCone;
        let gens = vec![qv_from(&[1, 0, 0]), qv_from(&[1, 2, 0]), qv_from(&[1, 1, 3])];
        let cone = RationalCone::from_generators(3, gens.clone(), Vec::new());
        let (lin, rays) = cone.extreme(16).unwrap();
        assert!(lin.is_empty());
        let back = RationalCone::from_generators(3, rays, Vec::new());
        for g in &gens {
            assert!(back.contains(g), "round trip lost a generator");
        }
        let (_, facets) = cone.facets(16).unwrap();
        for f in &facets {
            for g in &gens {
                assert!(
                    momentcone::linalg::qv_dot(f, g) >= Q::zero(),
                    "facet fails a generator"
                );
            }
        }
    }
    // Duality involution carries the pair-cone system to an equivalent
    // one.
    {
        let e = a2_in_g2();
        let g = InequalityGenerator::new(&e).unwrap();
        let cone = g.cone_inequalities().unwrap();
        let dual = g.apply_duality(&cone).unwrap();
        assert!(cone.equivalent(&dual), "duality transport changed the cone");
    }
    pass("criterion 10 (property suites)", t0, 120);
}
