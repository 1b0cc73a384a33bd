use itertools::Itertools;
use proptest::prelude::*;

use super::*;
use crate::error::Error;
use crate::parsing::{wrna_fold, PairedAlphabet};
use crate::slp::{Alphabet, Slp};

const CAP: u64 = 1 << 24;

fn bits(rows: &[&str]) -> Vec<Vec<bool>> {
    rows.iter().map(|r| r.chars().map(|c| c == '1').collect()).collect()
}

fn kov(d: usize, k: usize, rows: &[&str]) -> KovInstance {
    KovInstance::new(d, k, bits(rows)).unwrap()
}

fn binary(s: &str) -> Slp {
    Slp::from_str_in(s, Alphabet::binary()).unwrap()
}

/// Both routes agree with the recorded answer.
fn check(inst: &GeneratedInstance) -> bool {
    let v = verify_instance(inst, CAP).unwrap();
    assert!(v.agree(), "{:?} disagrees: {v:?}", inst.provenance);
    v.target().unwrap()
}

fn all_vector_sets(d: usize, max_count: usize) -> Vec<Vec<Vec<bool>>> {
    let vectors: Vec<Vec<bool>> = (0..1u32 << d).map(|m| (0..d).map(|i| m >> i & 1 == 1).collect()).collect();
    (1..=max_count).flat_map(|c| vectors.iter().cloned().combinations_with_replacement(c)).collect()
}

// ---------- sources ----------

#[test]
fn source_examples() {
    let ov = OvInstance::new(2, bits(&["10"]), bits(&["01"])).unwrap();
    assert!(solve_ov(&ov).unwrap());
    let tri = Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
    assert!(solve_clique(&tri, 3).unwrap());
    let ks = KsumInstance::new(vec![1, 2], 4, 3).unwrap();
    assert!(solve_ksum(&ks).unwrap());
}

#[test]
fn source_round_trip() {
    let srcs = [
        Source::Ov(OvInstance::new(2, bits(&["10", "11"]), bits(&["01"])).unwrap()),
        Source::Kov(kov(3, 2, &["101", "011"])),
        Source::Graph(Graph::new(4, &[(0, 1), (2, 3)]).unwrap()),
        Source::Ksum(KsumInstance::new(vec![3, 1, 7], 9, 3).unwrap()),
    ];
    for s in srcs {
        assert_eq!(Source::parse(&s.emit()).unwrap(), s);
    }
}

// ---------- tuplify ----------

#[test]
fn tuplify_example() {
    let inst = kov(2, 1, &["11", "01"]);
    let t = tuplify(&inst, &[true, true], &binary("0"), &binary("1")).unwrap();
    assert_eq!(t.eval_string(CAP).unwrap(), "1011");
}

#[test]
fn tuplify_zero_selector() {
    let inst = kov(3, 2, &["111", "101"]);
    let t = tuplify(&inst, &[false; 3], &binary("0"), &binary("1")).unwrap();
    assert_eq!(t.eval_string(CAP).unwrap(), "0".repeat(3 * 4));
}

fn tuplify_offset_property(inst: &KovInstance, b: &[bool]) {
    let t = tuplify(inst, b, &binary("0"), &binary("1")).unwrap().eval(CAP).unwrap();
    let block = inst.tuple_count().unwrap() as usize;
    let tuples: Vec<Vec<usize>> = (0..inst.k).map(|_| 0..inst.a.len()).multi_cartesian_product().collect();
    for (delta, tuple) in tuples.iter().enumerate() {
        let stripes_zero = (0..inst.d).all(|l| t[l * block + delta] == 0);
        let orthogonal = (0..inst.d).all(|l| !(b[l] && tuple.iter().all(|&i| inst.a[i][l])));
        assert_eq!(stripes_zero, orthogonal, "offset {delta}");
    }
}

#[test]
fn tuplify_offset_exhaustive_small() {
    for d in 1..=2 {
        for a in all_vector_sets(d, 2) {
            for k in 1..=2 {
                let inst = KovInstance::new(d, k, a.clone()).unwrap();
                for mask in 0..1u32 << d {
                    let b: Vec<bool> = (0..d).map(|i| mask >> i & 1 == 1).collect();
                    tuplify_offset_property(&inst, &b);
                }
            }
        }
    }
}

// ---------- OV and k-OV ----------

#[test]
fn dfa_examples() {
    let cases = [(&["10"][..], &["01"][..], true), (&["1"], &["1"], false), (&["0"], &["0"], true)];
    for (a, b, want) in cases {
        let inst = OvInstance::new(a[0].len(), bits(a), bits(b)).unwrap();
        let g = gen_dfa_from_ov(&inst).unwrap();
        assert_eq!(g.expected, Expected::Accept(want));
        assert_eq!(check(&g), want);
    }
}

#[test]
fn wildcard_examples() {
    for (rows, want) in [(&["10", "01"][..], true), (&["11"], false), (&["11", "00"], true)] {
        let g = gen_wildcard_pm_from_kov(&kov(2, 2, rows), 1, 1).unwrap();
        assert_eq!(check(&g), want);
    }
}

#[test]
fn wildcard_rejects_bad_split() {
    assert!(gen_wildcard_pm_from_kov(&kov(2, 2, &["10"]), 2, 1).is_err());
    assert!(gen_wildcard_pm_from_kov(&kov(2, 2, &["10"]), 0, 2).is_err());
}

#[test]
fn gadget_distance_table() {
    for y in ["0", "1"] {
        assert_eq!(gadget_distance("*", y).unwrap(), 1);
        assert_eq!(gadget_distance(y, y).unwrap(), 1);
    }
    assert_eq!(gadget_distance("0", "1").unwrap(), 3);
    assert_eq!(gadget_distance("1", "0").unwrap(), 3);
    assert!(gadget_distance("2", "0").is_err());
}

#[test]
fn hd_transform_of_matching_pattern() {
    let text = binary("1011001");
    let pattern = Slp::from_str_in("01*0", Alphabet::from_chars("01*").unwrap()).unwrap();
    let g = pm_to_substring_hd(&text, &pattern).unwrap();
    let Payload::SubstringHd { text, pattern } = &g.payload else { panic!("payload") };
    assert_eq!(crate::matching::substring_hd(text, pattern).unwrap(), 4);
    assert!(check(&g));
}

#[test]
fn hd_kov_examples() {
    for (rows, want) in [(&["10", "01"][..], true), (&["11"], false)] {
        assert_eq!(check(&gen_hd_from_kov(&kov(2, 2, rows), 1, 1).unwrap()), want);
    }
}

#[test]
fn kov_small_sweep() {
    for d in 1..=2 {
        for a in all_vector_sets(d, 2) {
            let inst = KovInstance::new(d, 2, a).unwrap();
            let want = solve_kov(&inst).unwrap();
            assert_eq!(check(&gen_wildcard_pm_from_kov(&inst, 1, 1).unwrap()), want);
            assert_eq!(check(&gen_hd_from_kov(&inst, 1, 1).unwrap()), want);
        }
    }
}

// ---------- LCS framework ----------

#[test]
fn coordinate_values() {
    let enc = |s: &str| -> Vec<u32> { s.chars().map(|c| c.to_digit(2).unwrap()).collect() };
    let d = |x: usize, y: usize| lcs_distance(&enc(COORD_X[x]), &enc(COORD_Y[y])).unwrap();
    assert_eq!((d(0, 0), d(0, 1), d(1, 0)), (2, 2, 2));
    assert_eq!(d(1, 1), 4);
}

#[test]
fn alignment_cost_examples() {
    let xs = vec![vec![0, 1], vec![1, 1], vec![0, 0]];
    let ys = vec![vec![0, 1], vec![0, 0]];
    let gamma = xs.iter().cartesian_product(&ys).map(|(x, y)| lcs_distance(x, y).unwrap()).max().unwrap();
    assert_eq!(alignment_cost(&xs, &ys, &[]).unwrap(), 2 * gamma);
    let sum = lcs_distance(&xs[0], &ys[0]).unwrap() + lcs_distance(&xs[2], &ys[1]).unwrap();
    assert_eq!(alignment_cost(&xs, &ys, &[(0, 0), (2, 1)]).unwrap(), sum + gamma);
    assert_eq!(alignment_cost(&xs, &ys, &[(0, 0), (1, 1)]).unwrap(), lcs_distance(&xs[1], &ys[1]).unwrap());
    assert!(matches!(alignment_cost(&xs, &ys, &[(1, 0), (0, 1)]), Err(Error::InvalidAlignment(_))));
}

fn gadget_excess(xs: &[&str], ys: &[&str]) -> u64 {
    let alpha = Alphabet::from_chars("abcd").unwrap();
    let mk = |v: &[&str]| -> Vec<Slp> { v.iter().map(|s| Slp::from_str_in(s, alpha.clone()).unwrap()).collect() };
    let (x, y, c) = lcs_alignment_gadget(&mk(xs), &mk(ys)).unwrap();
    lcs_distance(&x.eval(CAP).unwrap(), &y.eval(CAP).unwrap()).unwrap() - c
}

#[test]
fn alignment_gadget_examples() {
    assert_eq!(gadget_excess(&["ab"], &["ab"]), 0);
    assert_eq!(gadget_excess(&["ab", "cd"], &["ab"]), 0);
}

#[test]
fn alignment_gadget_type_errors() {
    let a = Alphabet::from_chars("ab").unwrap();
    let s = |t: &str| Slp::from_str_in(t, a.clone()).unwrap();
    assert!(matches!(lcs_alignment_gadget(&[s("a")], &[s("a"), s("b")]), Err(Error::TypeMismatch(_))));
    assert!(matches!(lcs_alignment_gadget(&[s("a"), s("ab")], &[s("a")]), Err(Error::TypeMismatch(_))));
}

#[test]
fn tuple_gadget_claims_small() {
    let inst = kov(2, 3, &["10", "11"]);
    let tg = tuple_gadgets(&inst, 1, 1).unwrap();
    let norm = tg.tg_norm.eval(CAP).unwrap();
    for (c, y) in tg.tg_y.iter().enumerate() {
        let y = y.eval(CAP).unwrap();
        let d = lcs_distance(&norm, &y).unwrap();
        assert_eq!(d, tg.offset + (tg.m - 1) * tg.delta0 + tg.delta1, "norm vs c={c}");
    }
}

#[test]
fn lcs_generator_records_constants() {
    let g = gen_lcs_from_kov(&kov(1, 3, &["0"]), 1, 1).unwrap();
    for key in ["const.delta0", "const.delta1", "const.C", "const.delta_orth", "const.delta_non", "const.threshold"] {
        assert!(g.provenance.contains_key(key), "{key}");
    }
    assert_eq!(g.provenance["const.delta0"], "2");
    assert_eq!(g.provenance["const.delta1"], "4");
    assert!(gen_lcs_from_kov(&kov(1, 3, &["0"]), 2, 1).is_err());
}

// ---------- clique reductions ----------

fn k4() -> Graph {
    Graph::from_mask(4, 0b111111)
}

fn k4_minus_edge() -> Graph {
    Graph::from_mask(4, 0b111110)
}

#[test]
fn inclusion_family_matches_enumeration() {
    let g = Graph::from_mask(3, 0b101);
    let k = 2;
    for set in [vec![0], vec![1, 2], vec![0, 0]] {
        let s = inclusion_slp(&g, k, &set).unwrap().eval(CAP).unwrap();
        let tuples: Vec<Vec<usize>> = (0..k).map(|_| 0..3).multi_cartesian_product().collect();
        assert_eq!(s.len(), tuples.len());
        for (t, &bit) in tuples.iter().zip(&s) {
            let mut rest = t.clone();
            let inside = set.iter().all(|u| rest.iter().position(|x| x == u).map(|p| rest.remove(p)).is_some());
            assert_eq!(bit == 1, inside, "set {set:?} tuple {t:?}");
        }
    }
}

#[test]
fn adjacency_family_matches_enumeration() {
    let g = Graph::from_mask(4, 0b101101);
    let k = 2;
    for v in 0..4 {
        let s = adjacency_slp(&g, k, v).unwrap().eval(CAP).unwrap();
        let tuples: Vec<Vec<usize>> = (0..k).map(|_| 0..4).multi_cartesian_product().collect();
        for (t, &bit) in tuples.iter().zip(&s) {
            assert_eq!(bit == 1, t.iter().all(|&u| g.adjacent(v, u)), "v {v} tuple {t:?}");
        }
    }
}

#[test]
fn nfa_examples() {
    let path = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
    for (g, want) in [(k4(), true), (k4_minus_edge(), false), (path, false)] {
        assert_eq!(check(&gen_nfa_from_clique(&g, 1, 1).unwrap()), want);
    }
}

#[test]
fn cfg_examples() {
    let tri = Graph::from_mask(3, 0b111);
    let c5 = Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap();
    assert!(check(&gen_cfg_from_clique(&tri, 1).unwrap()));
    assert!(!check(&gen_cfg_from_clique(&c5, 1).unwrap()));
}

#[test]
fn subsequence_examples() {
    for (g, want) in [(k4(), true), (k4_minus_edge(), false), (Graph::from_mask(5, (1 << 10) - 1), true)] {
        assert_eq!(check(&gen_subsequence_from_clique(&g, 4).unwrap()), want);
    }
    assert!(matches!(gen_subsequence_from_clique(&Graph::from_mask(4, 0), 4), Err(Error::NoHalfClique(2))));
    assert!(gen_subsequence_from_clique(&k4(), 3).is_err());
}

// ---------- RNA ----------

/// Symbols `a ā b b̄ c c̄` with weights 1, 1, 2, 2, 1, 1.
fn letters() -> PairedAlphabet {
    let base = Alphabet::with_glyphs(&["a", "a\u{304}", "b", "b\u{304}", "c", "c\u{304}"]).unwrap();
    PairedAlphabet::new(base, &[(0, 1), (2, 3), (4, 5)], vec![1, 1, 2, 2, 1, 1]).unwrap()
}

fn guarded_fold(grid: &[Vec<Vec<u32>>], w: u64, left: &[u32], right: &[u32]) -> (u64, u64) {
    let pairing = letters();
    let g = rna_guard(grid, &pairing, w).unwrap();
    let mid = g.text.eval(CAP).unwrap();
    let whole: Vec<u32> = left.iter().chain(&mid).chain(right).copied().collect();
    let lhs = wrna_fold(&whole, &g.pairing).unwrap();
    let best = (0..grid[0].len())
        .map(|b| {
            let col: Vec<u32> = left.iter().copied().chain(grid.iter().flat_map(|row| row[b].clone())).chain(right.iter().copied()).collect();
            wrna_fold(&col, &pairing).unwrap()
        })
        .max()
        .unwrap();
    (lhs, g.rho + best)
}

#[test]
fn guard_examples() {
    let one = rna_guard(&[vec![vec![0]]], &letters(), 1).unwrap();
    assert_eq!(one.rho, 20);
    assert_eq!(guarded_fold(&[vec![vec![0]]], 1, &[], &[1]), (21, 21));

    let empty = vec![vec![vec![], vec![]], vec![vec![], vec![]]];
    let g = rna_guard(&empty, &letters(), 2).unwrap();
    assert_eq!(g.rho, 224);
    assert_eq!(guarded_fold(&empty, 2, &[], &[]), (224, 224));

    // the second column pairs with more of the flank
    let grid = vec![vec![vec![0], vec![2]]];
    let (lhs, rhs) = guarded_fold(&grid, 2, &[], &[3, 1]);
    assert_eq!(lhs, rhs);
    assert_eq!(lhs, rna_guard(&grid, &letters(), 2).unwrap().rho + 2);
}

#[test]
fn guard_preconditions() {
    assert!(matches!(rna_guard(&[vec![vec![2, 2]]], &letters(), 3), Err(Error::WeightBoundViolated(_))));
    assert!(rna_guard(&[vec![vec![0], vec![1]]], &letters(), 2).is_err());
    assert!(rna_guard(&[], &letters(), 2).is_err());
}

fn arb_grid() -> impl Strategy<Value = (Vec<Vec<Vec<u32>>>, u64, Vec<u32>, Vec<u32>)> {
    (1..=2usize, 1..=2usize, 1..=2u64).prop_flat_map(|(a, b, w)| {
        // grid cells use unbarred symbols only, so no two of them pair
        let cell = prop::collection::vec(prop::sample::select(vec![0u32, 2, 4]), 0..=2)
            .prop_filter("weight", move |c| c.iter().map(|&s| if s == 2 { 2 } else { 1 }).sum::<u64>() <= w);
        let flank = || prop::collection::vec(0u32..6, 0..=3);
        (prop::collection::vec(prop::collection::vec(cell, b), a), Just(w), flank(), flank())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn guard_equality((grid, w, left, right) in arb_grid()) {
        let (lhs, rhs) = guarded_fold(&grid, w, &left, &right);
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn rna_generator_small() {
    // a single edge has no triangle; the clique test is the only failing part
    let g = Graph::from_mask(2, 0b1);
    let inst = gen_rna_from_clique(&g, 1).unwrap();
    assert_eq!(inst.provenance["const.rho"], ((8 * 4 + 12) * 4 * 2 * 3).to_string());
    assert!(!check(&inst));
}

#[test]
fn rna_generator_reaches_threshold_exactly_on_cliques() {
    // triangle, triangle plus pendant, path, and 4-cycle
    for (v, mask, want) in [(3, 0b111, true), (4, 0b001111, true), (3, 0b011, false), (4, 0b101101, false)] {
        let g = Graph::from_mask(v, mask);
        let inst = gen_rna_from_clique(&g, 1).unwrap();
        assert_eq!(inst.answer(), Some(want), "mask {mask:b}");
        assert_eq!(check(&inst), want, "mask {mask:b}");
    }
}

// ---------- disjointness ----------

#[test]
fn disjointness_gadgets() {
    let (p, t) = disj_to_subsequence(&binary("10"), &binary("01")).unwrap();
    assert_eq!((p.eval_string(CAP).unwrap(), t.eval_string(CAP).unwrap()), ("100".into(), "100".into()));
    let (p, t, n) = disj_to_hamming(&binary("10"), &binary("01")).unwrap();
    assert_eq!((p.eval_string(CAP).unwrap().as_str(), t.eval_string(CAP).unwrap().as_str(), n), ("000011", "001111", 2));
}

#[test]
fn ksum_examples() {
    for (values, t, want) in [(vec![1, 2], 4, true), (vec![1], 100, false), (vec![0], 0, true)] {
        let inst = KsumInstance::new(values, t, 3).unwrap();
        let g = gen_disjointness_from_ksum(&inst, 1).unwrap();
        assert_eq!(check(&g), want);
        let Payload::Intersect { text, pattern } = &g.payload else { panic!("payload") };
        assert_eq!(text.len(), pattern.len());
    }
}

#[test]
fn ksum_five_summands() {
    let inst = KsumInstance::new(vec![0, 3], 7, 5).unwrap();
    assert!(!solve_ksum(&inst).unwrap());
    assert!(!check(&gen_disjointness_from_ksum(&inst, 2).unwrap()));
    let inst = KsumInstance::new(vec![1, 3], 7, 5).unwrap();
    assert!(check(&gen_disjointness_from_ksum(&inst, 2).unwrap()));
}

// ---------- registry and bundles ----------

#[test]
fn registry_dispatch_and_caps() {
    let src = Source::Ov(OvInstance::new(2, bits(&["10"]), bits(&["01"])).unwrap());
    let g = generate("dfa-ov", &src, &GenParams::default()).unwrap();
    assert_eq!(g.reduction(), "dfa-ov");
    assert!(g.certified());
    assert!(generate("nope", &src, &GenParams::default()).is_err());
    assert!(generate("nfa-clique", &src, &GenParams::default()).is_err());

    let kv = Source::Kov(kov(1, 3, &["0"]));
    let tight = GenParams { max_decompress: 1000, ..GenParams::default() };
    assert!(matches!(generate("lcs-kov", &kv, &tight), Err(Error::TooLarge { .. })));
    let loose = GenParams { uncertified: true, ..tight };
    let g = generate("lcs-kov", &kv, &loose).unwrap();
    assert!(!g.certified());
    assert_eq!(g.answer(), Some(true));
}

#[test]
fn bundle_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let tri = Source::Graph(Graph::from_mask(3, 0b111));
    let insts = [
        generate("dfa-ov", &Source::Ov(OvInstance::new(2, bits(&["10"]), bits(&["11"])).unwrap()), &GenParams::default()),
        generate("hd-kov", &Source::Kov(kov(2, 2, &["10", "01"])), &GenParams::default()),
        generate("cfg-clique", &tri, &GenParams::default()),
        generate("nfa-clique", &Source::Graph(k4()), &GenParams::default()),
        generate("subseq-clique", &Source::Graph(k4()), &GenParams::default()),
        generate("disj-ksum", &Source::Ksum(KsumInstance::new(vec![1, 2], 4, 3).unwrap()), &GenParams::default()),
        gen_rna_from_clique(&Graph::from_mask(2, 1), 1),
        gen_lcs_from_kov(&kov(1, 3, &["1"]), 1, 1),
    ];
    for (i, inst) in insts.into_iter().enumerate() {
        let inst = inst.unwrap();
        let d = dir.path().join(i.to_string());
        inst.write_bundle(&d).unwrap();
        assert_eq!(GeneratedInstance::read_bundle(&d).unwrap(), inst, "{}", inst.reduction());
    }
}

#[test]
fn random_sources_parse_back() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for kind in ["ov", "kov", "graph", "ksum"] {
        for size in 1..4 {
            let s = random_source(kind, size, &mut rng).unwrap();
            assert_eq!(s.kind(), kind);
            assert_eq!(Source::parse(&s.emit()).unwrap(), s);
        }
    }
}
