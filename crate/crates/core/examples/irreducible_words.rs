//! Counts irreducible words of B_n by length.
//!
//! cargo run --release --example irreducible_words -- 3 4

use braid_gsb::gsb::enumerate_irr;
use braid_gsb::artin_markov;

fn main() {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<usize>().expect("number"));
    let n = args.next().unwrap_or(3);
    let max_len = args.next().unwrap_or(4);
    let s = artin_markov(n);
    let words = enumerate_irr(&s, max_len);
    for len in 0..=max_len {
        println!("length {len}: {}", words.iter().filter(|w| w.len() == len).count());
    }
    for w in words.iter().filter(|w| w.len() == 2).take(8) {
        println!("  {}", s.alphabet().render_word(w, " "));
    }
}
