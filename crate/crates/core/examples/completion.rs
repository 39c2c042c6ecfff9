//! Completion of a small presentation over deg-lex.
//!
//! cargo run --example completion

use std::sync::Arc;

use braid_gsb::gsb::GsbError;
use braid_gsb::{complete, verify_gsb, Alphabet, OrderSpec, Polynomial, Presentation, Ranking, VerifyOptions, DEFAULT_FUEL};

fn main() {
    // Letters are listed in ascending order: a > b.
    let a = Arc::new(Alphabet::flat(&["b", "a"]).unwrap());
    let order = OrderSpec::DegLex(Ranking::all(&a));
    let w = |t: &str| a.parse_word(t).unwrap();
    let start = Presentation::new(a.clone(), order, vec![Polynomial::binomial(w("a b a"), w("b"))]).unwrap();
    let (done, log) = match complete(&start, 20, DEFAULT_FUEL) {
        Ok(r) => r,
        Err(GsbError::Diverged { partial, log, .. }) => {
            println!("stopped after 20 additions");
            (*partial, log)
        }
        Err(e) => panic!("{e}"),
    };
    for e in &log.entries {
        println!("overlap {} adds {}", a.render_word(&e.ambiguity.w, ""), a.render_poly(&e.added, ""));
    }
    println!("{} compositions checked, {} relations", log.compositions_checked, done.len());
    for r in done.relations() {
        println!("  {}", a.render_poly(r.poly(), ""));
    }
    println!("{}", verify_gsb(&done, &VerifyOptions::default()).summary());
}
