use std::collections::HashMap;

use proptest::prelude::*;

use super::*;
use crate::slp::{Alphabet, Slp};

fn ends_in_one() -> Dfa {
    Dfa::new(2, 2, 0, &[1], &[(0, 0, 0), (0, 1, 1), (1, 0, 0), (1, 1, 1)]).unwrap()
}

fn second_to_last_one() -> Nfa {
    Nfa::new(3, 2, 0, &[2], &[(0, 0, 0), (0, 1, 0), (0, 1, 1), (1, 0, 2), (1, 1, 2)]).unwrap()
}

fn lit(s: &str) -> Slp {
    Slp::from_str_in(s, Alphabet::binary()).unwrap()
}

// subset construction over reachable subsets
fn determinize(n: &Nfa) -> Dfa {
    let q = n.states() as usize;
    let mut start = vec![false; q];
    start[n.start() as usize] = true;
    let mut ids: HashMap<Vec<bool>, u32> = HashMap::from([(start.clone(), 0)]);
    let mut sets = vec![start];
    let mut table = Vec::new();
    let mut i = 0;
    while i < sets.len() {
        for a in 0..n.sigma() {
            let m = n.matrix(a);
            let mut next = vec![false; q];
            for s in (0..q).filter(|&s| sets[i][s]) {
                for (t, x) in next.iter_mut().enumerate() {
                    *x |= m.get(s, t);
                }
            }
            let id = *ids.entry(next.clone()).or_insert_with(|| {
                sets.push(next);
                sets.len() as u32 - 1
            });
            table.push(id);
        }
        i += 1;
    }
    let acc = sets.iter().map(|s| (0..q).any(|x| s[x] && n.is_accepting(x as u32))).collect();
    Dfa::from_table(n.sigma(), 0, acc, table).unwrap()
}

#[test]
fn dfa_examples() {
    let d = ends_in_one();
    assert!(dfa_accept(&lit("01011"), &d).unwrap());
    assert!(!dfa_accept(&lit("0"), &d).unwrap());
    let wide = Slp::from_literal(&[2], Alphabet::new(3).unwrap()).unwrap();
    assert!(matches!(dfa_accept(&wide, &d), Err(crate::Error::AlphabetMismatch(_))));
}

#[test]
fn dfa_completion_adds_fail_state() {
    let d = Dfa::new(1, 2, 0, &[0], &[(0, 0, 0)]).unwrap();
    assert_eq!(d.states(), 2);
    assert!(dfa_accept(&lit("000"), &d).unwrap());
    assert!(!dfa_accept(&lit("010"), &d).unwrap());
    let full = ends_in_one();
    assert_eq!(full.states(), 2);
    assert!(Dfa::new(1, 2, 0, &[], &[(0, 0, 0), (0, 0, 0)]).is_ok());
    assert!(Dfa::new(2, 2, 0, &[], &[(0, 0, 0), (0, 0, 1)]).is_err());
}

#[test]
fn nfa_examples() {
    let n = second_to_last_one();
    assert!(nfa_accept(&lit("0110"), &n).unwrap());
    assert!(!nfa_accept(&lit("00"), &n).unwrap());
    let all = Nfa::new(1, 2, 0, &[0], &[(0, 0, 0), (0, 1, 0)]).unwrap();
    assert!(nfa_accept(&lit("0110101"), &all).unwrap());
    let none = Nfa::new(2, 2, 0, &[], &[(0, 0, 1), (1, 1, 0)]).unwrap();
    assert!(!accept_decompressed(&[0, 1, 0], &Automaton::Nfa(none)).unwrap());
}

#[test]
fn dfa_on_long_repetition_is_fast() {
    // 8 states: count 1s modulo 8, accept on zero
    let mut moves = Vec::new();
    for s in 0..8u32 {
        moves.push((s, 0, s));
        moves.push((s, 1, (s + 1) % 8));
    }
    let d = Dfa::new(8, 2, 0, &[0], &moves).unwrap();
    let t = lit("01").repeat(1 << 30).unwrap();
    assert_eq!(t.len(), 1 << 31);
    let t0 = std::time::Instant::now();
    assert!(dfa_accept(&t, &d).unwrap());
    assert!(t0.elapsed().as_secs_f64() < 1.0);
}

#[test]
fn bit_matrix_product() {
    let mut a = BitMatrix::zeros(70);
    let mut b = BitMatrix::zeros(70);
    a.set(0, 65);
    a.set(3, 1);
    b.set(65, 69);
    b.set(1, 2);
    let c = a.mul(&b);
    assert!(c.get(0, 69) && c.get(3, 2));
    assert!(!c.get(0, 2) && !c.get(3, 69));
}

#[test]
fn file_roundtrip() {
    let src = "dfa 2 2 0\naccept 1\n0 0 0\n0 1 1\n1 0 0\n1 1 1\n";
    let a = Automaton::parse(src).unwrap();
    assert_eq!(a.emit(), src);
    let n = Automaton::Nfa(second_to_last_one());
    assert_eq!(Automaton::parse(&n.emit()).unwrap(), n);
    let partial = Automaton::parse("dfa 1 2 0\naccept\n0 0 0\n").unwrap();
    assert_eq!(partial.states(), 2);
    assert!(Automaton::parse("pda 1 1 0\naccept\n").is_err());
    assert!(matches!(Automaton::parse("dfa 1 2 0\naccept\n0 0\n"), Err(crate::Error::Parse { line: 3, .. })));
}

fn arb_text(max_len: u64) -> impl Strategy<Value = Slp> {
    crate::testutil::arb_slp(3, max_len)
}

fn arb_dfa() -> impl Strategy<Value = Dfa> {
    (1u32..7).prop_flat_map(|q| {
        (
            prop::collection::vec(0..q, (q * 3) as usize),
            prop::collection::vec(any::<bool>(), q as usize),
            0..q,
        )
            .prop_map(|(table, acc, start)| Dfa::from_table(3, start, acc, table).unwrap())
    })
}

fn arb_nfa() -> impl Strategy<Value = Nfa> {
    (1u32..9).prop_flat_map(|q| {
        (
            prop::collection::vec((0..q, 0u32..3, 0..q), 0..(4 * q as usize)),
            prop::collection::vec(0..q, 0..3),
            0..q,
        )
            .prop_map(move |(moves, acc, start)| Nfa::new(q, 3, start, &acc, &moves).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn dfa_matches_scan(t in arb_text(5000), d in arb_dfa()) {
        let text = t.eval(u64::MAX).unwrap();
        prop_assert_eq!(dfa_accept(&t, &d).unwrap(), accept_decompressed(&text, &Automaton::Dfa(d)).unwrap());
    }

    #[test]
    fn nfa_matches_scan_and_determinization(t in arb_text(5000), n in arb_nfa()) {
        let text = t.eval(u64::MAX).unwrap();
        let got = nfa_accept(&t, &n).unwrap();
        prop_assert_eq!(got, accept_decompressed(&text, &Automaton::Nfa(n.clone())).unwrap());
        prop_assert_eq!(got, dfa_accept(&t, &determinize(&n)).unwrap());
    }

    #[test]
    fn split_composition(t in arb_text(2000), d in arb_dfa(), cut in any::<prop::sample::Index>()) {
        // running the halves of any split in sequence reaches the same state
        let text = t.eval(u64::MAX).unwrap();
        let k = cut.index(text.len() + 1);
        let run = |s0: u32, xs: &[u32]| xs.iter().fold(s0, |s, &a| d.step(s, a));
        let mid = run(d.start(), &text[..k]);
        prop_assert_eq!(run(mid, &text[k..]), run(d.start(), &text));
    }
}
