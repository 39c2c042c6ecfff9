#![allow(dead_code)]

use braid_gsb::{BraidScheme, Word};
use rand::Rng;

/// Uniform random word over the scheme's letters.
pub fn random_s_word<R: Rng>(rng: &mut R, scheme: &BraidScheme, len: usize) -> Word {
    let letters: Vec<_> = scheme.alphabet().letters().collect();
    Word::from_letters((0..len).map(|_| letters[rng.gen_range(0..letters.len())]).collect())
        .expect("letters share the scheme alphabet")
}
