//! Normal forms of Artin words in B_n.
//!
//! cargo run --example braid_normal_form -- 4 "g1 g2 g1" "g2 g1 g2"

use braid_gsb::{ArtinWord, BraidGroup, DEFAULT_FUEL};

fn main() {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().and_then(|a| a.parse().ok()).unwrap_or(3);
    let mut words: Vec<String> = args.collect();
    if words.is_empty() {
        words = ["g1 g2 g1", "g2 g1 g2", "g1 g1^-1", "g1^-1 g1^-1 g1^-1"].map(String::from).to_vec();
    }
    let g = BraidGroup::new(n);
    for text in &words {
        let w: ArtinWord = text.parse().expect("Artin word such as `g1 g2^-1`");
        let nf = g.nf(&w, DEFAULT_FUEL).expect("reduction finished");
        println!("{w}  ->  {}", g.scheme().render(&nf));
    }
}
