//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! The process exits nonzero if a criterion fails in any way other than the
//! two recorded ones: reducible tails of family (4) over family (7), and
//! leftmost rewriting that outlasts its step budget on a few words.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use braid_gsb::braid::{ArtinLetter, ArtinWord};
use braid_gsb::gsb::collect_ambiguities;
use braid_gsb::oracles::{burau, perm_image, random_artin_word, relator_perturb, BurauVariant};
use braid_gsb::reduction::{split_word_nf, word_nf_with, ReductionError, RewriteStrategy};
use braid_gsb::{
    artin_markov, braid_scheme, verify_gsb, verify_minimal, BraidGroup, Presentation, VerifyOptions, Word,
    DEFAULT_FUEL,
};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

mod common;

#[derive(PartialEq)]
enum Verdict {
    Pass,
    Fail,
    /// Fails exactly as recorded in the decisions ledger.
    KnownFail,
}

struct Outcome {
    verdict: Verdict,
    detail: String,
}

fn pass_if(ok: bool, detail: String) -> Outcome {
    Outcome { verdict: if ok { Verdict::Pass } else { Verdict::Fail }, detail }
}

fn secs(d: Duration) -> String {
    format!("{:.2} s", d.as_secs_f64())
}

fn basis(n: usize, budget: Duration) -> Outcome {
    let s = artin_markov(n);
    let start = Instant::now();
    let report = verify_gsb(&s, &VerifyOptions { jobs: 0, ..Default::default() });
    let took = start.elapsed();
    pass_if(
        report.passed() && took < budget,
        format!("n={n}: {} relations, {} in {} (budget {})", s.len(), report.summary(), secs(took), secs(budget)),
    )
}

fn criterion_3() -> Outcome {
    let n = 5;
    let s = artin_markov(n);
    let budget = Duration::from_secs(3600);
    let start = Instant::now();
    let full = verify_gsb(&s, &VerifyOptions { jobs: 0, ..Default::default() });
    let mut scoped_total = 0;
    let mut scoped_failures = 0;
    let mut five_index = Vec::new();
    for &scope in full.family_matrix.keys() {
        let r = verify_gsb(&s, &VerifyOptions { scope: Some(scope), jobs: 0, ..Default::default() });
        scoped_total += r.ambiguities_checked;
        scoped_failures += r.failures.len();
        if matches!(scope, (11, 11) | (12, 12)) {
            five_index.push(format!("({})∧({}): {}", scope.0, scope.1, r.ambiguities_checked));
        }
    }
    let took = start.elapsed();
    pass_if(
        full.passed()
            && scoped_failures == 0
            && scoped_total == full.ambiguities_checked
            && five_index.len() == 2
            && took < budget,
        format!(
            "n=5: {}; {} family-pair scopes each pass, {} ambiguities in total; {}; {}",
            full.summary(),
            full.family_matrix.len(),
            scoped_total,
            five_index.join(", "),
            secs(took)
        ),
    )
}

fn criterion_4() -> Outcome {
    let mut independent = true;
    let mut pinned = true;
    let mut counts = Vec::new();
    for n in 3..=5 {
        let s = artin_markov(n);
        let m = verify_minimal(&s);
        independent &= m.leading_words_independent();
        let rels = s.relations();
        let fours: BTreeSet<usize> = (0..rels.len()).filter(|&i| rels[i].family() == Some(4)).collect();
        let offenders: BTreeSet<usize> = m.reducible_tails.iter().map(|t| t.relation).collect();
        pinned &= m.reducible_tails.len() == (n - 1) * (n - 2)
            && offenders == fours
            && m.reducible_tails.iter().all(|t| rels[t.witness].family() == Some(7));
        counts.push(format!("n={n}: {}", m.reducible_tails.len()));
    }
    let detail = format!(
        "(a) leading words independent for n=3,4,5: {independent}; (b) reducible tails {}, every one a (4) tail containing a (7) leading word",
        counts.join(", ")
    );
    let verdict = if !independent || !pinned {
        Verdict::Fail
    } else {
        Verdict::KnownFail
    };
    Outcome { verdict, detail }
}

fn criterion_5() -> Outcome {
    let s = artin_markov(4);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let picks = sample(&mut rng, s.len(), 10).into_vec();
    let a = s.alphabet();
    let mut detected = 0;
    let mut redundant = Vec::new();
    for &k in &picks {
        let mutant = s.without_relations(|i, _| i == k);
        let r = verify_gsb(&mutant, &VerifyOptions { fuel: 100_000, jobs: 0, ..Default::default() });
        if r.passed() {
            redundant.push(format!(
                "({}) {}",
                s.relations()[k].family().unwrap_or(0),
                a.render_word(s.relations()[k].leading(), " ")
            ));
        } else {
            detected += 1;
        }
    }
    let note = if redundant.is_empty() {
        String::new()
    } else {
        format!("; undetected: {}", redundant.join(", "))
    };
    pass_if(detected >= 8, format!("{detected}/10 deletions detected (relations {picks:?}){note}"))
}

/// Agreement of one strategy with the default normal form: `Some` when it
/// finished within `fuel`, `None` when it ran out. An unfinished run must
/// still be consistent: its partial word has the same normal form.
/// `nf` comes from merging normal forms of halves.
fn agrees(sw: &Word, nf: &Word, s: &Presentation, fuel: usize, strategy: RewriteStrategy) -> Option<bool> {
    match word_nf_with(sw, s, fuel, strategy) {
        Ok(v) => Some(v == *nf),
        Err(ReductionError::FuelExhausted(t)) => {
            let partial = t.result.words().next().cloned().unwrap_or_else(Word::empty);
            Some(split_word_nf(&partial, s, DEFAULT_FUEL).unwrap() == *nf).filter(|ok| !ok)
        }
        Err(e) => panic!("{e}"),
    }
}

const STRATEGIES: [(&str, RewriteStrategy, usize); 3] = [
    ("lowest-relation-leftmost", RewriteStrategy::LowestRelation, DEFAULT_FUEL),
    ("rightmost-outermost", RewriteStrategy::RightmostOutermost, DEFAULT_FUEL),
    ("leftmost-innermost", RewriteStrategy::LeftmostInnermost, 50_000),
];

fn criterion_6() -> Outcome {
    let n = 4;
    let g = BraidGroup::new(n);
    let s = g.presentation();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let words: Vec<ArtinWord> = (0..1000)
        .map(|_| {
            let len = rng.gen_range(0..=30);
            random_artin_word(&mut rng, n, len)
        })
        .collect();
    // Perturbation closure, then agreement of each single-pass strategy.
    let rows: Vec<(bool, Vec<Option<bool>>)> = words
        .par_iter()
        .enumerate()
        .map(|(i, w)| {
            let nf = g.nf(w, DEFAULT_FUEL).unwrap();
            let perturbed = relator_perturb(w, n, i as u64);
            let closure = g.nf(&perturbed, DEFAULT_FUEL).unwrap() == nf;
            let sw = g.scheme().artin_to_s(w).unwrap();
            let agreement = STRATEGIES.iter().map(|&(_, st, fuel)| agrees(&sw, &nf, s, fuel, st)).collect();
            (closure, agreement)
        })
        .collect();
    let closure = rows.iter().filter(|r| r.0).count();
    let mut disagreements = 0;
    let mut lowest_open = 0;
    let mut parts = vec![format!("perturbation closure {closure}/1000")];
    for (k, (name, _, fuel)) in STRATEGIES.iter().enumerate() {
        let agree = rows.iter().filter(|r| r.1[k] == Some(true)).count();
        let open = rows.iter().filter(|r| r.1[k].is_none()).count();
        disagreements += rows.iter().filter(|r| r.1[k] == Some(false)).count();
        if k == 0 {
            lowest_open = open;
        }
        parts.push(format!("{name} {agree}/1000 ({open} unfinished after {fuel} steps)"));
    }
    parts.push(format!("{disagreements} disagreements"));
    let verdict = if closure < 1000 || disagreements > 0 {
        Verdict::Fail
    } else if lowest_open > 0 {
        Verdict::KnownFail
    } else {
        Verdict::Pass
    };
    Outcome { verdict, detail: parts.join("; ") }
}

fn delta(n: usize) -> ArtinWord {
    let mut v = Vec::new();
    for top in (1..n).rev() {
        v.extend((1..=top).map(ArtinLetter::pos));
    }
    ArtinWord::new(v)
}

fn perturb_chain(w: &ArtinWord, n: usize, steps: usize, seed: u64) -> ArtinWord {
    (0..steps).fold(w.clone(), |acc, k| relator_perturb(&acc, n, seed.wrapping_mul(1000) + k as u64))
}

fn flip_one(rng: &mut ChaCha8Rng, w: &ArtinWord) -> ArtinWord {
    let mut v = w.letters().to_vec();
    if !v.is_empty() {
        let i = rng.gen_range(0..v.len());
        v[i] = v[i].inv();
    }
    ArtinWord::new(v)
}

/// Equal pairs from relator moves and central Δ², near misses and
/// independent random pairs.
fn pairs(rng: &mut ChaCha8Rng, n: usize, count: usize, max_len: usize) -> Vec<(ArtinWord, ArtinWord)> {
    let d2 = delta(n).concat(&delta(n));
    (0..count)
        .map(|i| {
            let len = rng.gen_range(0..=max_len);
            let w = random_artin_word(rng, n, len);
            match i % 5 {
                0 | 1 => {
                    let steps = rng.gen_range(1..=6);
                    (w.clone(), perturb_chain(&w, n, steps, i as u64))
                }
                2 => (d2.concat(&w), w.concat(&d2)),
                3 => {
                    let v = flip_one(rng, &w);
                    (w, perturb_chain(&v, n, 2, i as u64))
                }
                _ => {
                    let len = rng.gen_range(0..=max_len);
                    (w, random_artin_word(rng, n, len))
                }
            }
        })
        .collect()
}

fn criterion_7() -> Outcome {
    let n = 3;
    let g = BraidGroup::new(n);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let ps = pairs(&mut rng, n, 500, 12);
    let mut agree = 0;
    let mut equal = 0;
    for (u, v) in &ps {
        let same_nf = g.nf(u, DEFAULT_FUEL).unwrap() == g.nf(v, DEFAULT_FUEL).unwrap();
        let same_burau = burau(u, n, BurauVariant::Reduced).unwrap() == burau(v, n, BurauVariant::Reduced).unwrap();
        equal += usize::from(same_nf);
        agree += usize::from(same_nf == same_burau);
    }
    pass_if(
        agree == 500 && equal > 0 && equal < 500,
        format!("{agree}/500 pairs agree with reduced Burau ({equal} equal, {} distinct)", 500 - equal),
    )
}

fn criterion_8() -> Outcome {
    let n = 5;
    let g = BraidGroup::new(n);
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let ps = pairs(&mut rng, n, 1000, 16);
    let rows: Vec<(bool, bool)> = ps
        .par_iter()
        .map(|(u, v)| {
            let same_nf = g.nf(u, DEFAULT_FUEL).unwrap() == g.nf(v, DEFAULT_FUEL).unwrap();
            let same_oracles = perm_image(u, n).unwrap() == perm_image(v, n).unwrap()
                && burau(u, n, BurauVariant::Unreduced).unwrap() == burau(v, n, BurauVariant::Unreduced).unwrap();
            (same_nf, same_oracles)
        })
        .collect();
    let equal = rows.iter().filter(|r| r.0).count();
    let counterexamples = rows.iter().filter(|r| r.0 && !r.1).count();
    pass_if(
        counterexamples == 0 && equal > 0,
        format!("{counterexamples} counterexamples over 1000 pairs ({equal} with equal normal forms)"),
    )
}

fn criterion_9() -> Outcome {
    let sc = braid_scheme(4);
    let o = sc.order();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let word = |rng: &mut ChaCha8Rng, max: usize| {
        let len = rng.gen_range(0..=max);
        common::random_s_word(rng, &sc, len)
    };
    let mut monomial = 0;
    for _ in 0..100_000 {
        let (u, v, a, b) = (word(&mut rng, 8), word(&mut rng, 8), word(&mut rng, 4), word(&mut rng, 4));
        if !o.is_monomial_witness(&u, &v, &a, &b).unwrap() {
            monomial += 1;
        }
    }
    let mut total = 0;
    for _ in 0..100_000 {
        // Short words over few letters so that ties and chains are common.
        let (u, v, w) = (word(&mut rng, 4), word(&mut rng, 4), word(&mut rng, 4));
        let uv = o.compare(&u, &v).unwrap();
        let vw = o.compare(&v, &w).unwrap();
        let uw = o.compare(&u, &w).unwrap();
        let antisymmetric = o.compare(&v, &u).unwrap() == uv.reverse();
        let total_ok = uv.is_eq() == (u == v);
        let transitive = !(uv.is_lt() && vw.is_lt()) || uw.is_lt();
        let transitive_gt = !(uv.is_gt() && vw.is_gt()) || uw.is_gt();
        if !(antisymmetric && total_ok && transitive && transitive_gt) {
            total += 1;
        }
    }
    pass_if(
        monomial == 0 && total == 0,
        format!("monomial violations {monomial}/100000; totality/transitivity violations {total}/100000"),
    )
}

fn criterion_10() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for (n, scope) in [4, 5].into_iter().flat_map(|n| [(1, 7), (14, 16), (16, 16), (2, 13)].map(|sc| (n, sc))) {
        let s = artin_markov(n);
        let r = verify_gsb(&s, &VerifyOptions { scope: Some(scope), ..Default::default() });
        let (_, ambs) = collect_ambiguities(&s, Some(scope));
        ok &= r.passed() && r.ambiguities_checked > 0 && ambs.len() == r.ambiguities_checked;
        parts.push(format!("({})∧({}) n={n}: {} trivial", scope.0, scope.1, r.ambiguities_checked - r.failures.len()));
    }
    pass_if(ok, parts.join("; "))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        ("GSB n=3", || basis(3, Duration::from_secs(10))),
        ("GSB n=4", || basis(4, Duration::from_secs(300))),
        ("GSB n=5", criterion_3),
        ("minimality", criterion_4),
        ("mutation sensitivity", criterion_5),
        ("confluence", criterion_6),
        ("Burau iff n=3", criterion_7),
        ("oracle necessity n=5", criterion_8),
        ("order soundness", criterion_9),
        ("scope parity", criterion_10),
    ];
    let mut unexpected = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let tag = match out.verdict {
            Verdict::Pass => "PASS",
            Verdict::Fail => {
                unexpected += 1;
                "FAIL"
            }
            Verdict::KnownFail => "FAIL (known)",
        };
        println!("{tag} {:>2} {name}: {} [{}]", i + 1, out.detail, secs(start.elapsed()));
    }
    if unexpected > 0 {
        println!("{unexpected} unexpected failure(s)");
        std::process::exit(1);
    }
}
