use proptest::prelude::*;

use crate::slp::{Alphabet, Rule, Slp};

/// Random SLP over `0..sigma` with at most `max_len` decompressed symbols.
pub fn arb_slp(sigma: u32, max_len: u64) -> impl Strategy<Value = Slp> {
    prop::collection::vec((any::<prop::sample::Index>(), any::<prop::sample::Index>()), 0..40).prop_filter_map(
        "length cap",
        move |pairs| {
            let mut rules: Vec<Rule> = (0..sigma).map(Rule::Terminal).collect();
            for (a, b) in pairs {
                let n = rules.len();
                rules.push(Rule::Concat(a.index(n), b.index(n)));
            }
            let s = Slp::from_rules(Alphabet::new(sigma).unwrap(), rules).ok()?;
            (s.len() <= max_len).then_some(s)
        },
    )
}
