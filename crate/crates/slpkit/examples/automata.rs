//! DFA and NFA acceptance on a text that is far too long to write out.
use slpkit::automata::{dfa_accept, nfa_accept, Dfa, Nfa};
use slpkit::{Alphabet, Slp};

fn main() -> slpkit::Result<()> {
    // (0 1 1)^(3^30): about 6.2e14 symbols
    let text = Slp::from_str_in("011", Alphabet::binary())?.repeat(3u64.pow(30))?;
    println!("N = {}, n = {}", text.len(), text.rule_count());

    // number of 1s mod 3 == 0
    let moves: Vec<_> = (0..3).flat_map(|s| [(s, 0, s), (s, 1, (s + 1) % 3)]).collect();
    let mod3 = Dfa::new(3, 2, 0, &[0], &moves)?;
    println!("ones divisible by 3: {}", dfa_accept(&text, &mod3)?);

    // contains the factor "110"
    let nfa = Nfa::new(4, 2, 0, &[3], &[(0, 0, 0), (0, 1, 0), (0, 1, 1), (1, 1, 2), (2, 0, 3), (3, 0, 3), (3, 1, 3)])?;
    println!("contains 110: {}", nfa_accept(&text, &nfa)?);
    Ok(())
}
