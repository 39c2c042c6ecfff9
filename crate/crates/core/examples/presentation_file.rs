//! Reads a presentation in the text format and verifies it.
//!
//! cargo run --example presentation_file -- path/to/file.txt

use braid_gsb::cli::{dump_presentation, parse_presentation};
use braid_gsb::{artin_markov, verify_gsb, VerifyOptions};

fn main() {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path).expect("readable file"),
        None => dump_presentation(&artin_markov(3), &[]),
    };
    let s = match parse_presentation(&text) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(2);
        }
    };
    println!("{} letters, {} relations", s.alphabet().len(), s.len());
    println!("{}", verify_gsb(&s, &VerifyOptions::default()).summary());
}
