//! Compares braid normal forms with the permutation and Burau oracles.
//!
//! cargo run --example burau_oracle

use braid_gsb::oracles::{burau, perm_image, BurauVariant};
use braid_gsb::{ArtinWord, BraidGroup, DEFAULT_FUEL};

fn main() {
    let n = 3;
    let g = BraidGroup::new(n);
    let pairs = [
        ("g1 g2 g1", "g2 g1 g2"),
        ("g1 g2", "g2 g1"),
        ("g1 g2 g1 g1 g2 g1 g1", "g1 g1 g2 g1 g1 g2 g1"),
    ];
    for (u, v) in pairs {
        let (u, v): (ArtinWord, ArtinWord) = (u.parse().unwrap(), v.parse().unwrap());
        let same_nf = g.nf(&u, DEFAULT_FUEL).unwrap() == g.nf(&v, DEFAULT_FUEL).unwrap();
        let same_perm = perm_image(&u, n).unwrap() == perm_image(&v, n).unwrap();
        let bu = burau(&u, n, BurauVariant::Reduced).unwrap();
        let same_burau = bu == burau(&v, n, BurauVariant::Reduced).unwrap();
        println!("{u}  vs  {v}");
        println!("  normal forms equal: {same_nf}, permutations equal: {same_perm}, Burau equal: {same_burau}");
        println!("  reduced Burau of the first word:\n{bu}");
    }
}
