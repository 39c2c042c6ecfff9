//! Compositions (noncommutative critical pairs), Gröbner–Shirshov basis
//! verification, minimality and Shirshov-style completion.

use std::cmp::Ordering;
use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::freealg::{Alphabet, Polynomial, Word};
use crate::reduction::{normal_form, Presentation, ReductionError, ReductionTrace, Relation};

#[derive(Debug, Clone, Error)]
pub enum GsbError {
    #[error("ambiguity does not factor against the leading words")]
    InconsistentAmbiguity,
    #[error("completion stopped after adding {added} relations")]
    Diverged {
        added: usize,
        partial: Box<Presentation>,
        log: CompletionLog,
    },
    #[error("composition leading word is not below w")]
    LeadingNotBelow,
    #[error(transparent)]
    Reduction(#[from] ReductionError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AmbiguityKind {
    /// `w = f̄·b = a·ḡ` with `|f̄| + |ḡ| > |w|`.
    Intersection,
    /// `w = f̄ = a·ḡ·b`.
    Inclusion,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ambiguity {
    pub kind: AmbiguityKind,
    pub left_rel: usize,
    pub right_rel: usize,
    pub a: Word,
    pub b: Word,
    pub w: Word,
}

/// All overlaps of `f̄` (relation `left_rel`) followed by `ḡ` (relation
/// `right_rel`), plus every embedding of `ḡ` inside `f̄`. The trivial
/// self-inclusion `f̄ = f̄` is skipped.
pub fn enumerate_ambiguities(left_rel: usize, f: &Word, right_rel: usize, g: &Word) -> Vec<Ambiguity> {
    let (fl, gl) = (f.letters(), g.letters());
    let mut out = Vec::new();
    if fl.is_empty() || gl.is_empty() {
        return out;
    }
    // Intersections: a proper suffix of f̄ equals a proper prefix of ḡ.
    for o in (1..fl.len().min(gl.len())).rev() {
        if fl[fl.len() - o..] == gl[..o] {
            out.push(Ambiguity {
                kind: AmbiguityKind::Intersection,
                left_rel,
                right_rel,
                a: f.slice(0..fl.len() - o),
                b: g.slice(o..gl.len()),
                w: Word::join(&[fl, &gl[o..]]),
            });
        }
    }
    for p in f.occurrences(gl) {
        if left_rel == right_rel && p == 0 && gl.len() == fl.len() {
            continue;
        }
        out.push(Ambiguity {
            kind: AmbiguityKind::Inclusion,
            left_rel,
            right_rel,
            a: f.slice(0..p),
            b: f.slice(p + gl.len()..fl.len()),
            w: f.clone(),
        });
    }
    out
}

/// `(f, g)_w`: `f·b - a·g` for intersections, `f - a·g·b` for inclusions.
pub fn composition(f: &Relation, g: &Relation, amb: &Ambiguity) -> Result<Polynomial, GsbError> {
    let (fl, gl) = (f.leading().letters(), g.leading().letters());
    match amb.kind {
        AmbiguityKind::Intersection => {
            let ok = amb.w.letters() == Word::join(&[fl, amb.b.letters()]).letters()
                && amb.w.letters() == Word::join(&[amb.a.letters(), gl]).letters()
                && fl.len() + gl.len() > amb.w.len();
            if !ok {
                return Err(GsbError::InconsistentAmbiguity);
            }
            Ok(&f.poly().sandwich(&Word::empty(), &amb.b).map_err(ReductionError::from)?
                - &g.poly().sandwich(&amb.a, &Word::empty()).map_err(ReductionError::from)?)
        }
        AmbiguityKind::Inclusion => {
            let ok = amb.w.letters() == fl
                && amb.w.letters() == Word::join(&[amb.a.letters(), gl, amb.b.letters()]).letters();
            if !ok {
                return Err(GsbError::InconsistentAmbiguity);
            }
            Ok(f.poly() - &g.poly().sandwich(&amb.a, &amb.b).map_err(ReductionError::from)?)
        }
    }
}

/// Why an ambiguity failed verification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureReason {
    /// The composition has a nonzero normal form.
    Nontrivial,
    FuelExhausted,
    /// The composition's leading word is not below `w`.
    LeadingNotBelow,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub ambiguity: Ambiguity,
    pub reason: FailureReason,
    /// Irreducible remainder, or the partial result when fuel ran out.
    pub remainder: Polynomial,
    pub trace: ReductionTrace,
}

/// Result of checking one ambiguity.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub ambiguity: Ambiguity,
    pub composition: Polynomial,
    pub trivial: bool,
    pub reason: Option<FailureReason>,
    pub trace: ReductionTrace,
}

/// Reduces `(f, g)_w` modulo `S` and reports whether it vanishes.
pub fn check_trivial(
    f: &Relation,
    g: &Relation,
    amb: &Ambiguity,
    s: &Presentation,
    fuel: usize,
) -> Result<(bool, ReductionTrace), GsbError> {
    let comp = composition(f, g, amb)?;
    if !comp.is_zero() {
        let (lead, _) = crate::reduction::leading(&comp, s.order())?;
        if s.order().compare(&lead, &amb.w).map_err(ReductionError::from)? != Ordering::Less {
            return Err(GsbError::LeadingNotBelow);
        }
    }
    let (nf, trace) = normal_form(&comp, s, fuel)?;
    Ok((nf.is_zero(), trace))
}

fn check_outcome(s: &Presentation, amb: &Ambiguity, fuel: usize) -> Outcome {
    let rels = s.relations();
    let (f, g) = (&rels[amb.left_rel], &rels[amb.right_rel]);
    let comp = composition(f, g, amb).expect("ambiguities come from the relations' leading words");
    if !comp.is_zero() {
        let below = crate::reduction::leading(&comp, s.order())
            .ok()
            .and_then(|(lead, _)| s.order().compare(&lead, &amb.w).ok())
            == Some(Ordering::Less);
        if !below {
            return Outcome {
                ambiguity: amb.clone(),
                trace: ReductionTrace {
                    result: comp.clone(),
                    ..Default::default()
                },
                composition: comp,
                trivial: false,
                reason: Some(FailureReason::LeadingNotBelow),
            };
        }
    }
    match normal_form(&comp, s, fuel) {
        Ok((nf, trace)) => {
            let trivial = nf.is_zero();
            Outcome {
                ambiguity: amb.clone(),
                composition: comp,
                trivial,
                reason: (!trivial).then_some(FailureReason::Nontrivial),
                trace,
            }
        }
        Err(ReductionError::FuelExhausted(trace)) => Outcome {
            ambiguity: amb.clone(),
            composition: comp,
            trivial: false,
            reason: Some(FailureReason::FuelExhausted),
            trace: *trace,
        },
        Err(e) => panic!("reduction over a validated presentation failed: {e}"),
    }
}

/// Restricts verification to ambiguities whose left relation belongs to
/// family `.0` and right relation to family `.1`. Untagged relations count
/// as family 0.
pub type FamilyScope = (u8, u8);

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub fuel: usize,
    pub scope: Option<FamilyScope>,
    /// Worker threads; 0 lets the pool decide.
    pub jobs: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            fuel: crate::reduction::DEFAULT_FUEL,
            scope: None,
            jobs: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub pairs_checked: usize,
    pub ambiguities_checked: usize,
    pub failures: Vec<Failure>,
    /// Ambiguity counts keyed by (left family, right family).
    pub family_matrix: BTreeMap<(u8, u8), usize>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn summary(&self) -> String {
        format!(
            "ambiguities checked: {}, failures: {}",
            self.ambiguities_checked,
            self.failures.len()
        )
    }

    pub fn to_json(&self, alphabet: &Alphabet) -> ReportJson {
        ReportJson {
            pairs_checked: self.pairs_checked,
            ambiguities_checked: self.ambiguities_checked,
            failures: self
                .failures
                .iter()
                .map(|f| FailureJson {
                    kind: f.ambiguity.kind,
                    left: f.ambiguity.left_rel,
                    right: f.ambiguity.right_rel,
                    w: alphabet.render_word(&f.ambiguity.w, "."),
                    remainder: alphabet.render_poly(&f.remainder, "."),
                    reason: f.reason,
                })
                .collect(),
            family_matrix: self
                .family_matrix
                .iter()
                .map(|(&(left, right), &ambiguities)| FamilyCell {
                    left,
                    right,
                    ambiguities,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportJson {
    pub pairs_checked: usize,
    pub ambiguities_checked: usize,
    pub failures: Vec<FailureJson>,
    pub family_matrix: Vec<FamilyCell>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FailureJson {
    pub kind: AmbiguityKind,
    pub left: usize,
    pub right: usize,
    pub w: String,
    pub remainder: String,
    pub reason: FailureReason,
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyCell {
    pub left: u8,
    pub right: u8,
    pub ambiguities: usize,
}

fn in_scope(s: &Presentation, scope: Option<FamilyScope>, i: usize, j: usize) -> bool {
    let fam = |k: usize| s.relations()[k].family().unwrap_or(0);
    scope.is_none_or(|(fi, fj)| fam(i) == fi && fam(j) == fj)
}

/// Every ambiguity between ordered relation pairs in scope, in canonical
/// order, together with the number of pairs examined.
pub fn collect_ambiguities(s: &Presentation, scope: Option<FamilyScope>) -> (usize, Vec<Ambiguity>) {
    let rels = s.relations();
    let mut pairs = 0;
    let mut out = Vec::new();
    for i in 0..rels.len() {
        for j in 0..rels.len() {
            if !in_scope(s, scope, i, j) {
                continue;
            }
            pairs += 1;
            out.extend(enumerate_ambiguities(i, rels[i].leading(), j, rels[j].leading()));
        }
    }
    (pairs, out)
}

/// Checks every ambiguity in scope, in parallel over `opts.jobs` workers.
/// The outcome list is in canonical ambiguity order regardless of `jobs`.
pub fn check_all(s: &Presentation, opts: &VerifyOptions) -> (usize, Vec<Outcome>) {
    use rayon::prelude::*;
    let (pairs, ambs) = collect_ambiguities(s, opts.scope);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .expect("thread pool");
    let outcomes = pool.install(|| {
        ambs.par_iter()
            .map(|a| check_outcome(s, a, opts.fuel))
            .collect::<Vec<_>>()
    });
    (pairs, outcomes)
}

/// Verifies that every composition in scope is trivial modulo `S`.
pub fn verify_gsb(s: &Presentation, opts: &VerifyOptions) -> VerificationReport {
    let (pairs, outcomes) = check_all(s, opts);
    let mut family_matrix = BTreeMap::new();
    let mut failures = Vec::new();
    let fam = |k: usize| s.relations()[k].family().unwrap_or(0);
    let checked = outcomes.len();
    for o in outcomes {
        *family_matrix
            .entry((fam(o.ambiguity.left_rel), fam(o.ambiguity.right_rel)))
            .or_insert(0) += 1;
        if let Some(reason) = o.reason {
            failures.push(Failure {
                ambiguity: o.ambiguity,
                reason,
                remainder: o.trace.result.clone(),
                trace: o.trace,
            });
        }
    }
    VerificationReport {
        pairs_checked: pairs,
        ambiguities_checked: checked,
        failures,
        family_matrix,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Containment {
    /// Relation whose leading word contains another's.
    pub outer: usize,
    pub inner: usize,
    pub position: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducibleTail {
    pub relation: usize,
    pub term: Word,
    /// Relation whose leading word occurs in `term`.
    pub witness: usize,
    pub position: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MinimalityReport {
    pub containments: Vec<Containment>,
    pub reducible_tails: Vec<ReducibleTail>,
}

impl MinimalityReport {
    /// No leading word contains another relation's leading word.
    pub fn leading_words_independent(&self) -> bool {
        self.containments.is_empty()
    }

    pub fn tails_irreducible(&self) -> bool {
        self.reducible_tails.is_empty()
    }

    /// Both conditions: an interreduced basis.
    pub fn passed(&self) -> bool {
        self.leading_words_independent() && self.tails_irreducible()
    }
}

/// Checks (a) no leading word contains another relation's leading word and
/// (b) every non-leading term avoids all leading words.
pub fn verify_minimal(s: &Presentation) -> MinimalityReport {
    let rels = s.relations();
    let mut report = MinimalityReport::default();
    for (i, r) in rels.iter().enumerate() {
        for (j, q) in rels.iter().enumerate() {
            if i == j {
                continue;
            }
            if let Some(position) = r.leading().occurrences(q.leading().letters()).next() {
                report.containments.push(Containment {
                    outer: i,
                    inner: j,
                    position,
                });
            }
        }
        for term in r.replacement().words() {
            if let Some((witness, position)) = s.find_match(term.letters()) {
                report.reducible_tails.push(ReducibleTail {
                    relation: i,
                    term: term.clone(),
                    witness,
                    position,
                });
            }
        }
    }
    report
}

/// A relation added during completion and the ambiguity that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct CompletionEntry {
    pub ambiguity: Ambiguity,
    pub added: Polynomial,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct CompletionLog {
    pub entries: Vec<CompletionEntry>,
    pub compositions_checked: usize,
}

/// Adds the monic normal form of each nontrivial composition until every
/// composition is trivial. Stops with [`GsbError::Diverged`] once more than
/// `max_new` relations would be needed.
pub fn complete(
    s: &Presentation,
    max_new: usize,
    fuel: usize,
) -> Result<(Presentation, CompletionLog), GsbError> {
    let mut cur = s.clone();
    let mut log = CompletionLog::default();
    let (_, initial) = collect_ambiguities(&cur, None);
    let mut queue: VecDeque<Ambiguity> = initial.into();
    while let Some(amb) = queue.pop_front() {
        let rels = cur.relations();
        let comp = composition(&rels[amb.left_rel], &rels[amb.right_rel], &amb)?;
        log.compositions_checked += 1;
        let (nf, _) = normal_form(&comp, &cur, fuel)?;
        if nf.is_zero() {
            continue;
        }
        if log.entries.len() == max_new {
            return Err(GsbError::Diverged {
                added: max_new,
                partial: Box::new(cur),
                log,
            });
        }
        let rel = Relation::new(nf, cur.order())?;
        log.entries.push(CompletionEntry {
            ambiguity: amb,
            added: rel.poly().clone(),
        });
        cur = cur.with_relation(rel);
        let new = cur.len() - 1;
        let rels = cur.relations();
        for k in 0..=new {
            queue.extend(enumerate_ambiguities(new, rels[new].leading(), k, rels[k].leading()));
            if k != new {
                queue.extend(enumerate_ambiguities(k, rels[k].leading(), new, rels[new].leading()));
            }
        }
    }
    Ok((cur, log))
}

/// Words of length at most `max_len` avoiding every leading word, in
/// ascending order.
pub fn enumerate_irr(s: &Presentation, max_len: usize) -> Vec<Word> {
    let letters: Vec<_> = s.alphabet().letters().collect();
    let mut out = vec![Word::empty()];
    let mut frontier = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for &l in &letters {
                let mut v = w.letters().to_vec();
                v.push(l);
                // `w` is irreducible, so a new match must end at the appended letter.
                let start = v.len().saturating_sub(s.max_leading_len());
                let fresh = s.find_leftmost(&v[start..]).is_none();
                if fresh {
                    next.push(Word::from_vec_unchecked(v));
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out.sort_by(|a, b| s.order().compare(a, b).expect("alphabet letters are ranked"));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::rational;
    use crate::orders::{OrderSpec, Ranking};
    use std::sync::Arc;

    fn deglex(names: &[&str]) -> (Arc<Alphabet>, OrderSpec) {
        let a = Arc::new(Alphabet::flat(names).unwrap());
        let o = OrderSpec::DegLex(Ranking::all(&a));
        (a, o)
    }

    #[test]
    fn self_overlap_of_square() {
        let (a, _) = deglex(&["x"]);
        let xx = a.parse_word("x x").unwrap();
        let ambs = enumerate_ambiguities(0, &xx, 0, &xx);
        assert_eq!(ambs.len(), 1);
        assert_eq!(ambs[0].kind, AmbiguityKind::Intersection);
        assert_eq!(ambs[0].w, a.parse_word("x x x").unwrap());
    }

    #[test]
    fn disjoint_words_have_no_ambiguity() {
        let (a, _) = deglex(&["p", "q", "r", "s"]);
        let f = a.parse_word("p q").unwrap();
        let g = a.parse_word("r s").unwrap();
        assert!(enumerate_ambiguities(0, &f, 1, &g).is_empty());
    }

    #[test]
    fn inclusion_is_found_and_classified() {
        let (a, _) = deglex(&["x", "y"]);
        let f = a.parse_word("x y x").unwrap();
        let g = a.parse_word("y x").unwrap();
        let ambs = enumerate_ambiguities(0, &f, 1, &g);
        assert_eq!(ambs.len(), 1);
        assert_eq!(ambs[0].kind, AmbiguityKind::Inclusion);
        assert_eq!(ambs[0].a, a.parse_word("x").unwrap());
        assert!(ambs[0].b.is_empty());
        // Same leading word, different relations: the full inclusion counts.
        let both = enumerate_ambiguities(0, &f, 1, &f);
        assert!(both
            .iter()
            .any(|x| x.kind == AmbiguityKind::Inclusion && x.a.is_empty() && x.b.is_empty()));
    }

    #[test]
    fn self_composition_of_quadratic() {
        // f = x² - yx over deg-lex(x > y), w = x³: f·x - x·f = xyx - yx².
        let (a, o) = deglex(&["y", "x"]);
        let w = |s: &str| a.parse_word(s).unwrap();
        let f = Relation::new(Polynomial::binomial(w("x x"), w("y x")), &o).unwrap();
        let amb = &enumerate_ambiguities(0, f.leading(), 0, f.leading())[0];
        let comp = composition(&f, &f, amb).unwrap();
        let expected = Polynomial::from_terms([(w("x y x"), rational(1)), (w("y x x"), rational(-1))]);
        assert_eq!(comp, expected);
    }

    #[test]
    fn inconsistent_ambiguity_is_rejected() {
        let (a, o) = deglex(&["y", "x"]);
        let w = |s: &str| a.parse_word(s).unwrap();
        let f = Relation::new(Polynomial::binomial(w("x x"), w("y")), &o).unwrap();
        let bogus = Ambiguity {
            kind: AmbiguityKind::Intersection,
            left_rel: 0,
            right_rel: 0,
            a: w("y"),
            b: w("x"),
            w: w("y x x"),
        };
        assert!(matches!(composition(&f, &f, &bogus), Err(GsbError::InconsistentAmbiguity)));
    }

    #[test]
    fn completion_fixed_points() {
        let (a, o) = deglex(&["x", "y"]);
        let w = |s: &str| a.parse_word(s).unwrap();
        let s = Presentation::new(a.clone(), o, vec![Polynomial::binomial(w("y x"), w("x y"))]).unwrap();
        let (out, log) = complete(&s, 5, 1000).unwrap();
        assert_eq!(out.len(), 1);
        assert!(log.entries.is_empty());

        let (b, o) = deglex(&["x"]);
        let s = Presentation::new(
            b.clone(),
            o,
            vec![Polynomial::binomial(b.parse_word("x x").unwrap(), b.parse_word("x").unwrap())],
        )
        .unwrap();
        let (out, log) = complete(&s, 5, 1000).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(log.compositions_checked, 1);
    }

    #[test]
    fn minimality_single_relation() {
        let (a, o) = deglex(&["y", "x"]);
        let w = |s: &str| a.parse_word(s).unwrap();
        let s = Presentation::new(a.clone(), o, vec![Polynomial::binomial(w("x x"), w("y"))]).unwrap();
        assert!(verify_minimal(&s).passed());
    }

    #[test]
    fn irr_over_one_letter() {
        let (a, o) = deglex(&["x"]);
        let w = |s: &str| a.parse_word(s).unwrap();
        let s = Presentation::new(a.clone(), o, vec![Polynomial::binomial(w("x x"), Word::empty())]).unwrap();
        assert_eq!(enumerate_irr(&s, 5), vec![Word::empty(), w("x")]);
        assert_eq!(enumerate_irr(&s, 0), vec![Word::empty()]);
    }
}
