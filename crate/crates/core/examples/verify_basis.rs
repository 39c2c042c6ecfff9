//! Verifies that the Artin-Markov relations form a Gröbner-Shirshov basis
//! of B_n and reports on minimality.
//!
//! cargo run --release --example verify_basis -- 5

use std::time::Instant;

use braid_gsb::{artin_markov, verify_gsb, verify_minimal, VerifyOptions};

fn main() {
    let max_n: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(4);
    for n in 2..=max_n {
        let s = artin_markov(n);
        let start = Instant::now();
        let report = verify_gsb(&s, &VerifyOptions { jobs: 0, ..Default::default() });
        println!(
            "B_{n}: {} relations, {} ({:.2?})",
            s.len(),
            report.summary(),
            start.elapsed()
        );
        let m = verify_minimal(&s);
        println!(
            "  leading words independent: {}, tails irreducible: {} ({} reducible tails)",
            m.leading_words_independent(),
            m.tails_irreducible(),
            m.reducible_tails.len()
        );
        let a = s.alphabet();
        for t in m.reducible_tails.iter().take(3) {
            let r = &s.relations()[t.relation];
            let w = &s.relations()[t.witness];
            println!(
                "    ({}) {} -> {}: contains the leading word {} of ({})",
                r.family().unwrap_or(0),
                a.render_word(r.leading(), " "),
                a.render_word(&t.term, " "),
                a.render_word(w.leading(), " "),
                w.family().unwrap_or(0)
            );
        }
    }
}
