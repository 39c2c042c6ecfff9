mod common;

use std::collections::HashSet;

use braid_gsb::braid::{artin_markov_for, BraidGroup};
use braid_gsb::oracles::{burau, perm_image, random_artin_word, BurauVariant};
use braid_gsb::reduction::{split_word_nf, word_nf, word_nf_with, RewriteStrategy};
use braid_gsb::{braid_nf, ArtinLetter, ArtinWord, DEFAULT_FUEL};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn aw(s: &str) -> ArtinWord {
    s.parse().unwrap()
}

#[test]
fn known_normal_forms() {
    let g = BraidGroup::new(3);
    let sc = g.scheme();
    let nf = |w: &str| sc.render(&g.nf(&aw(w), DEFAULT_FUEL).unwrap());
    assert_eq!(nf("g1 g1^-1"), "1");
    assert_eq!(nf("g1^-1 g1^-1"), "s12^-1");
    let lhs = aw("g1 g2 g1");
    let rhs = aw("g2 g1 g2");
    assert_eq!(nf(&lhs.concat(&rhs.inverse()).to_string()), "1");
    assert!(braid_nf(&aw("g1 g1^-1"), 3, DEFAULT_FUEL).unwrap().is_empty());
    assert_eq!(
        sc.render(&g.word_nf(&sc.parse_word("g1^-1 s13").unwrap(), DEFAULT_FUEL).unwrap()),
        "s13 s23 s13^-1 g1^-1"
    );
}

#[test]
fn every_relation_is_sound_under_the_oracles() {
    for n in 2..=5 {
        let g = BraidGroup::new(n);
        let sc = g.scheme();
        for r in g.presentation().relations() {
            let lhs = sc.s_to_artin(r.leading()).unwrap();
            let rhs = sc.s_to_artin(r.rewrite().expect("braid relations are binomial")).unwrap();
            assert_eq!(perm_image(&lhs, n).unwrap(), perm_image(&rhs, n).unwrap());
            assert_eq!(
                burau(&lhs, n, BurauVariant::Unreduced).unwrap(),
                burau(&rhs, n, BurauVariant::Unreduced).unwrap(),
                "({}) at n = {n}",
                r.family().unwrap()
            );
            if n == 3 {
                assert_eq!(
                    burau(&lhs, n, BurauVariant::Reduced).unwrap(),
                    burau(&rhs, n, BurauVariant::Reduced).unwrap()
                );
            }
        }
    }
}

#[test]
fn n3_normal_forms_match_burau_cardinality() {
    let g = BraidGroup::new(3);
    let gens = [
        ArtinLetter::pos(1),
        ArtinLetter::neg(1),
        ArtinLetter::pos(2),
        ArtinLetter::neg(2),
    ];
    let mut words = vec![ArtinWord::default()];
    let mut layer = words.clone();
    for _ in 0..4 {
        layer = layer
            .iter()
            .flat_map(|w| gens.iter().map(move |&l| w.concat(&ArtinWord::new(vec![l]))))
            .collect();
        words.extend(layer.iter().cloned());
    }
    let nfs: HashSet<_> = words.iter().map(|w| g.nf(w, DEFAULT_FUEL).unwrap()).collect();
    let mats: HashSet<_> = words
        .iter()
        .map(|w| burau(w, 3, BurauVariant::Reduced).unwrap())
        .collect();
    assert_eq!(nfs.len(), mats.len());
}

#[test]
fn merging_halves_avoids_rewrite_blowup() {
    let g = BraidGroup::new(4);
    let sc = g.scheme();
    let u = sc
        .parse_word("g1^-1 g3^-1 s14 s13 s12 s24^-1 s13 s34 s14 s12 s12 s24^-1 s34")
        .unwrap();
    let w = sc.artin_to_s(&sc.s_to_artin(&u).unwrap()).unwrap();
    assert!(word_nf(&w, g.presentation(), 100_000).is_err());
    let merged = split_word_nf(&w, g.presentation(), 100_000).unwrap();
    assert_eq!(merged, word_nf(&u, g.presentation(), DEFAULT_FUEL).unwrap());
}

#[test]
fn presentation_is_rebuilt_identically() {
    for n in 2..=5 {
        let g = BraidGroup::new(n);
        assert!(artin_markov_for(g.scheme()).same_as(g.presentation()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn s_to_artin_round_trip(seed in any::<u64>(), n in 3usize..=4, len in 0usize..14) {
        let g = BraidGroup::new(n);
        let sc = g.scheme();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = common::random_s_word(&mut rng, sc, len);
        let via_artin = g.nf(&sc.s_to_artin(&u).unwrap(), DEFAULT_FUEL).unwrap();
        prop_assert_eq!(via_artin, g.word_nf(&u, DEFAULT_FUEL).unwrap());
    }

    #[test]
    fn normal_form_factors_through_concatenation(seed in any::<u64>(), n in 3usize..=4, a in 0usize..12, b in 0usize..12) {
        let g = BraidGroup::new(n);
        let sc = g.scheme();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w1 = random_artin_word(&mut rng, n, a);
        let w2 = random_artin_word(&mut rng, n, b);
        let whole = g.nf(&w1.concat(&w2), DEFAULT_FUEL).unwrap();
        let joined = sc.artin_to_s(&w1).unwrap().concat(&sc.artin_to_s(&w2).unwrap()).unwrap();
        prop_assert_eq!(&whole, &g.word_nf(&joined, DEFAULT_FUEL).unwrap());
        let halves = g.nf(&w1, DEFAULT_FUEL).unwrap().concat(&g.nf(&w2, DEFAULT_FUEL).unwrap()).unwrap();
        prop_assert_eq!(&whole, &g.word_nf(&halves, DEFAULT_FUEL).unwrap());
    }

    #[test]
    fn rewrite_strategies_agree(seed in any::<u64>(), n in 3usize..=4, len in 0usize..25) {
        let g = BraidGroup::new(n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = g.scheme().artin_to_s(&random_artin_word(&mut rng, n, len)).unwrap();
        let s = g.presentation();
        let merged = g.word_nf(&w, DEFAULT_FUEL).unwrap();
        // Single-pass strategies can need exponentially many steps; compare whenever they finish.
        for strategy in [
            RewriteStrategy::RightmostOutermost,
            RewriteStrategy::LowestRelation,
            RewriteStrategy::LeftmostInnermost,
        ] {
            if let Ok(v) = word_nf_with(&w, s, 200_000, strategy) {
                prop_assert_eq!(&merged, &v);
            }
        }
    }

    #[test]
    fn short_words_agree_under_every_strategy(seed in any::<u64>(), n in 3usize..=4, len in 0usize..9) {
        let g = BraidGroup::new(n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = g.scheme().artin_to_s(&random_artin_word(&mut rng, n, len)).unwrap();
        let s = g.presentation();
        let merged = g.word_nf(&w, DEFAULT_FUEL).unwrap();
        for strategy in [
            RewriteStrategy::RightmostOutermost,
            RewriteStrategy::LowestRelation,
            RewriteStrategy::LeftmostInnermost,
        ] {
            prop_assert_eq!(&merged, &word_nf_with(&w, s, 10 * DEFAULT_FUEL, strategy).unwrap());
        }
    }

    #[test]
    fn inverse_word_cancels(seed in any::<u64>(), n in 2usize..=5, len in 0usize..16) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = random_artin_word(&mut rng, n, len);
        prop_assert!(braid_nf(&w.concat(&w.inverse()), n, DEFAULT_FUEL).unwrap().is_empty());
    }
}
