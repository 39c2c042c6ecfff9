//! Presentations and reduction to normal form.
//!
//! A [`Presentation`] fixes an alphabet, a monomial order and a list of
//! monic relations whose leading words are cached at construction time.
//! [`normal_form`] eliminates reducible terms one at a time, always choosing
//! the order-greatest reducible term word and, within it, the lowest
//! relation index and then the leftmost position. [`word_nf`] is the string
//! rewriting fast path for presentations made only of `u - v` relations, and
//! [`split_word_nf`] merges normal forms of halves.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::freealg::{Alphabet, Coeff, FreeAlgError, Letter, Polynomial, Word};
use crate::orders::{OrderError, OrderSpec};

/// Default reduction budget per normal-form call.
pub const DEFAULT_FUEL: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ReductionError {
    #[error("the zero polynomial has no leading word")]
    ZeroPolynomial,
    #[error("fuel exhausted after {} steps", .0.fuel_used)]
    FuelExhausted(Box<ReductionTrace>),
    #[error("relation {0} is not of the form u - v")]
    NotBinomial(usize),
    #[error("relation {index}: declared left-hand side is not the leading word")]
    Orientation { index: usize },
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    FreeAlg(#[from] FreeAlgError),
}

/// The order-maximal term of `p` and its coefficient.
pub fn leading(p: &Polynomial, order: &OrderSpec) -> Result<(Word, Coeff), ReductionError> {
    let w = order
        .max_word(p.words())?
        .ok_or(ReductionError::ZeroPolynomial)?
        .clone();
    let c = p.coefficient(&w);
    Ok((w, c))
}

/// A monic relation with its leading word split off.
#[derive(Debug, Clone, PartialEq)]
pub struct Relation {
    poly: Polynomial,
    leading: Word,
    /// `leading - poly`: what the leading word rewrites to.
    replacement: Polynomial,
    /// Single-word replacement when the relation is `u - v`.
    rewrite: Option<Word>,
    family: Option<u8>,
}

impl Relation {
    /// Normalizes `poly` to be monic under `order`.
    pub fn new(poly: Polynomial, order: &OrderSpec) -> Result<Relation, ReductionError> {
        let (lead, c) = leading(&poly, order)?;
        let poly = poly.scale(&(Coeff::one() / c));
        Ok(Self::from_monic(poly, lead))
    }

    fn from_monic(poly: Polynomial, leading: Word) -> Relation {
        let mut replacement = -&poly;
        replacement.add_term(leading.clone(), Coeff::one());
        let rewrite = match replacement.len() {
            0 => None,
            1 => {
                let (w, c) = replacement.terms().next().unwrap();
                c.is_one().then(|| w.clone())
            }
            _ => None,
        };
        Relation {
            poly,
            leading,
            replacement,
            rewrite,
            family: None,
        }
    }

    pub fn with_family(mut self, family: u8) -> Relation {
        self.family = Some(family);
        self
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn leading(&self) -> &Word {
        &self.leading
    }

    /// `leading - poly`.
    pub fn replacement(&self) -> &Polynomial {
        &self.replacement
    }

    /// `Some(v)` when the relation is `leading - v`.
    pub fn rewrite(&self) -> Option<&Word> {
        self.rewrite.as_ref()
    }

    pub fn family(&self) -> Option<u8> {
        self.family
    }
}

/// A relation given with its intended left-hand side.
#[derive(Debug, Clone)]
pub struct OrientedRelation {
    pub lhs: Word,
    pub rhs: Polynomial,
    pub family: Option<u8>,
}

impl OrientedRelation {
    pub fn binomial(lhs: Word, rhs: Word, family: Option<u8>) -> Self {
        OrientedRelation {
            lhs,
            rhs: Polynomial::from_word(rhs),
            family,
        }
    }
}

/// Alphabet, order and an ordered list of monic relations.
#[derive(Debug, Clone)]
pub struct Presentation {
    alphabet: Arc<Alphabet>,
    order: OrderSpec,
    relations: Vec<Relation>,
    /// Relation indices keyed by the first letter of their leading word.
    by_first: Vec<Vec<usize>>,
    max_lead: usize,
}

impl Presentation {
    /// Builds a presentation, normalizing each polynomial to be monic.
    pub fn new(
        alphabet: Arc<Alphabet>,
        order: OrderSpec,
        polys: Vec<Polynomial>,
    ) -> Result<Presentation, ReductionError> {
        order.covers(&alphabet)?;
        let relations = polys
            .into_iter()
            .map(|p| Relation::new(p, &order))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::assemble(alphabet, order, relations))
    }

    /// Builds a presentation from relations whose left-hand side must be the
    /// leading word of `lhs - rhs`; anything else is an orientation error.
    pub fn from_oriented(
        alphabet: Arc<Alphabet>,
        order: OrderSpec,
        rels: Vec<OrientedRelation>,
    ) -> Result<Presentation, ReductionError> {
        order.covers(&alphabet)?;
        let mut relations = Vec::with_capacity(rels.len());
        for (index, r) in rels.into_iter().enumerate() {
            let mut poly = -&r.rhs;
            poly.add_term(r.lhs.clone(), Coeff::one());
            let (lead, c) = match leading(&poly, &order) {
                Ok(x) => x,
                Err(ReductionError::ZeroPolynomial) => {
                    return Err(ReductionError::Orientation { index })
                }
                Err(e) => return Err(e),
            };
            if lead != r.lhs || !c.is_one() {
                return Err(ReductionError::Orientation { index });
            }
            let mut rel = Relation::from_monic(poly, lead);
            rel.family = r.family;
            relations.push(rel);
        }
        Ok(Self::assemble(alphabet, order, relations))
    }

    pub fn from_relations(
        alphabet: Arc<Alphabet>,
        order: OrderSpec,
        relations: Vec<Relation>,
    ) -> Result<Presentation, ReductionError> {
        order.covers(&alphabet)?;
        Ok(Self::assemble(alphabet, order, relations))
    }

    fn assemble(alphabet: Arc<Alphabet>, order: OrderSpec, relations: Vec<Relation>) -> Self {
        let mut by_first = vec![Vec::new(); alphabet.len()];
        for (i, r) in relations.iter().enumerate() {
            if let Some(&l) = r.leading.letters().first() {
                by_first[l.index()].push(i);
            }
        }
        let max_lead = relations.iter().map(|r| r.leading.len()).max().unwrap_or(0);
        Presentation {
            alphabet,
            order,
            relations,
            by_first,
            max_lead,
        }
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn order(&self) -> &OrderSpec {
        &self.order
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn with_relation(&self, rel: Relation) -> Presentation {
        let mut rels = self.relations.clone();
        rels.push(rel);
        Self::assemble(self.alphabet.clone(), self.order.clone(), rels)
    }

    pub fn without_relations(&self, drop: impl Fn(usize, &Relation) -> bool) -> Presentation {
        let rels = self
            .relations
            .iter()
            .enumerate()
            .filter(|(i, r)| !drop(*i, r))
            .map(|(_, r)| r.clone())
            .collect();
        Self::assemble(self.alphabet.clone(), self.order.clone(), rels)
    }

    /// Same relations under a different order; fails if any relation's
    /// leading word changes.
    pub fn reoriented(&self, order: OrderSpec) -> Result<Presentation, ReductionError> {
        order.covers(&self.alphabet)?;
        for (index, r) in self.relations.iter().enumerate() {
            let (lead, _) = leading(&r.poly, &order)?;
            if lead != r.leading {
                return Err(ReductionError::Orientation { index });
            }
        }
        Ok(Self::assemble(self.alphabet.clone(), order, self.relations.clone()))
    }

    /// Whether every relation is `u - v`.
    pub fn is_binomial(&self) -> bool {
        self.relations.iter().all(|r| r.rewrite.is_some())
    }

    /// Structural equality: same alphabet layout, order and relations.
    pub fn same_as(&self, other: &Presentation) -> bool {
        let remap = |w: &Word| w.letters().iter().map(|l| l.index()).collect::<Vec<_>>();
        let poly_key = |p: &Polynomial| {
            let mut v: Vec<_> = p.terms().map(|(w, c)| (remap(w), c.clone())).collect();
            v.sort();
            v
        };
        *self.alphabet == *other.alphabet
            && self.order.to_string() == other.order.to_string()
            && self.relations.len() == other.relations.len()
            && self.relations.iter().zip(&other.relations).all(|(a, b)| {
                remap(&a.leading) == remap(&b.leading)
                    && poly_key(&a.poly) == poly_key(&b.poly)
                    && a.family == b.family
            })
    }

    /// Leftmost occurrence with the lowest relation index, as `(relation, position)`.
    pub fn find_match(&self, w: &[Letter]) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for p in 0..w.len() {
            for &ri in self.candidates(w[p]) {
                if best.is_some_and(|(br, _)| ri >= br) {
                    break;
                }
                if w[p..].starts_with(self.relations[ri].leading.letters()) {
                    best = Some((ri, p));
                    break;
                }
            }
        }
        best
    }

    /// First match scanning positions left to right.
    pub fn find_leftmost(&self, w: &[Letter]) -> Option<(usize, usize)> {
        (0..w.len()).find_map(|p| self.match_at(w, p).map(|r| (r, p)))
    }

    /// First match scanning positions right to left.
    pub fn find_rightmost(&self, w: &[Letter]) -> Option<(usize, usize)> {
        (0..w.len()).rev().find_map(|p| self.match_at(w, p).map(|r| (r, p)))
    }

    fn match_at(&self, w: &[Letter], p: usize) -> Option<usize> {
        self.candidates(w[p])
            .iter()
            .copied()
            .find(|&ri| w[p..].starts_with(self.relations[ri].leading.letters()))
    }

    fn candidates(&self, l: Letter) -> &[usize] {
        if !self.alphabet.owns(l) {
            return &[];
        }
        &self.by_first[l.index()]
    }

    pub fn is_irreducible(&self, w: &Word) -> bool {
        self.find_leftmost(w.letters()).is_none()
    }

    pub fn max_leading_len(&self) -> usize {
        self.max_lead
    }
}

/// One elimination `p ← p - c·a·s·b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionStep {
    pub relation: usize,
    pub position: usize,
    pub left: Word,
    pub right: Word,
    pub coefficient: Coeff,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
    pub result: Polynomial,
    pub fuel_used: usize,
}

impl ReductionTrace {
    /// Applies the recorded steps to `input`.
    pub fn replay(&self, input: &Polynomial, s: &Presentation) -> Polynomial {
        self.steps.iter().fold(input.clone(), |p, st| apply_step(&p, st, s))
    }
}

fn apply_step(p: &Polynomial, st: &ReductionStep, s: &Presentation) -> Polynomial {
    let rel = &s.relations[st.relation];
    let mut out = p.clone();
    out.add_scaled(&rel.poly.sandwich_unchecked(&st.left, &st.right), &-&st.coefficient);
    out
}

/// One reduction step on the order-greatest reducible term, or `None` if `p`
/// is supported on irreducible words.
pub fn reduce_once(
    p: &Polynomial,
    s: &Presentation,
) -> Result<Option<(Polynomial, ReductionStep)>, ReductionError> {
    let mut best: Option<(&Word, usize, usize)> = None;
    for w in p.words() {
        let Some((ri, pos)) = s.find_match(w.letters()) else {
            continue;
        };
        let better = match best {
            None => true,
            Some((bw, _, _)) => s.order.compare(w, bw)? == Ordering::Greater,
        };
        if better {
            best = Some((w, ri, pos));
        }
    }
    let Some((w, ri, pos)) = best else {
        return Ok(None);
    };
    let lead_len = s.relations[ri].leading.len();
    let step = ReductionStep {
        relation: ri,
        position: pos,
        left: w.slice(0..pos),
        right: w.slice(pos + lead_len..w.len()),
        coefficient: p.coefficient(w),
    };
    let next = apply_step(p, &step, s);
    #[cfg(debug_assertions)]
    for t in s.relations[ri].replacement.words() {
        let tw = Word::join(&[step.left.letters(), t.letters(), step.right.letters()]);
        debug_assert_eq!(s.order.compare(&tw, w), Ok(Ordering::Less), "reduction must descend");
    }
    Ok(Some((next, step)))
}

/// Reduces `p` to a polynomial supported on `Irr(S)`.
pub fn normal_form(
    p: &Polynomial,
    s: &Presentation,
    fuel: usize,
) -> Result<(Polynomial, ReductionTrace), ReductionError> {
    let mut trace = ReductionTrace {
        steps: Vec::new(),
        result: p.clone(),
        fuel_used: 0,
    };
    loop {
        match reduce_once(&trace.result, s)? {
            None => {
                let result = trace.result.clone();
                return Ok((result, trace));
            }
            Some((next, step)) => {
                if trace.fuel_used >= fuel {
                    return Err(ReductionError::FuelExhausted(Box::new(trace)));
                }
                trace.fuel_used += 1;
                trace.steps.push(step);
                trace.result = next;
            }
        }
    }
}

/// Site selection for [`word_nf_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RewriteStrategy {
    /// Lowest relation index, then leftmost position (same as [`normal_form`]).
    LowestRelation,
    /// Always rewrite the match that ends first, taking the shortest one
    /// ending there. Can take exponentially many steps on braid words.
    LeftmostInnermost,
    /// Always rewrite the match that starts last, taking the longest one
    /// starting there.
    #[default]
    RightmostOutermost,
}

/// Normal form of a single word under a presentation of `u - v` relations,
/// using [`RewriteStrategy::RightmostOutermost`].
pub fn word_nf(w: &Word, s: &Presentation, fuel: usize) -> Result<Word, ReductionError> {
    word_nf_with(w, s, fuel, RewriteStrategy::RightmostOutermost)
}

const SPLIT_BELOW: usize = 8;

/// Normal form computed halves first, as nf(nf(u)·nf(v)); `fuel` bounds each
/// merge. Agrees with [`word_nf`] when `s` is a Gröbner-Shirshov basis.
/// Rewriting a long word at once can take exponentially many steps (braid
/// words dense in σ² blocks do), while merging irreducible halves keeps the
/// intermediate words short.
pub fn split_word_nf(w: &Word, s: &Presentation, fuel: usize) -> Result<Word, ReductionError> {
    fn go(w: &[Letter], s: &Presentation, fuel: usize) -> Result<Word, ReductionError> {
        if w.len() <= SPLIT_BELOW {
            return word_nf(&Word::from_vec_unchecked(w.to_vec()), s, fuel);
        }
        let (u, v) = w.split_at(w.len() / 2);
        let joined = Word::join(&[go(u, s, fuel)?.letters(), go(v, s, fuel)?.letters()]);
        word_nf(&joined, s, fuel)
    }
    go(w.letters(), s, fuel)
}

fn fuel_out(letters: Vec<Letter>, used: usize) -> ReductionError {
    ReductionError::FuelExhausted(Box::new(ReductionTrace {
        steps: Vec::new(),
        result: Polynomial::from_word(Word::from_vec_unchecked(letters)),
        fuel_used: used,
    }))
}

pub fn word_nf_with(
    w: &Word,
    s: &Presentation,
    fuel: usize,
    strategy: RewriteStrategy,
) -> Result<Word, ReductionError> {
    if let Some(i) = s.relations.iter().position(|r| r.rewrite.is_none()) {
        return Err(ReductionError::NotBinomial(i));
    }
    match strategy {
        RewriteStrategy::LowestRelation => splice_nf(w, s, fuel),
        RewriteStrategy::LeftmostInnermost => stack_nf(w, s, fuel, false),
        RewriteStrategy::RightmostOutermost => stack_nf(w, s, fuel, true),
    }
}

fn splice_nf(w: &Word, s: &Presentation, fuel: usize) -> Result<Word, ReductionError> {
    let mut cur: Vec<Letter> = w.letters().to_vec();
    let mut used = 0;
    while let Some((ri, pos)) = s.find_match(&cur) {
        if used >= fuel {
            return Err(fuel_out(cur, used));
        }
        used += 1;
        let rel = &s.relations[ri];
        let rhs = rel.rewrite.as_ref().expect("checked binomial");
        cur.splice(pos..pos + rel.leading.len(), rhs.letters().iter().copied());
    }
    Ok(Word::from_vec_unchecked(cur))
}

/// Keeps an irreducible prefix (or, mirrored, suffix) and feeds it one
/// letter at a time, so every new match touches the letter just added.
fn stack_nf(w: &Word, s: &Presentation, fuel: usize, mirrored: bool) -> Result<Word, ReductionError> {
    // Leading words keyed in the order letters are stacked.
    let mut by_lead: HashMap<Vec<Letter>, usize> = HashMap::new();
    for (i, r) in s.relations.iter().enumerate() {
        let mut key = r.leading.letters().to_vec();
        if mirrored {
            key.reverse();
        }
        by_lead.entry(key).or_insert(i);
    }
    let max = s.max_lead;
    // `pending` pops the next letter to stack; `done` is irreducible.
    let mut pending: Vec<Letter> = w.letters().to_vec();
    if !mirrored {
        pending.reverse();
    }
    let mut done: Vec<Letter> = Vec::with_capacity(pending.len());
    let mut used = 0;
    while let Some(l) = pending.pop() {
        done.push(l);
        let n = done.len();
        let lengths: Box<dyn Iterator<Item = usize>> = if mirrored {
            Box::new((1..=max.min(n)).rev())
        } else {
            Box::new(1..=max.min(n))
        };
        let mut hit = None;
        for k in lengths {
            if let Some(&ri) = by_lead.get(&done[n - k..]) {
                hit = Some((ri, k));
                break;
            }
        }
        let Some((ri, k)) = hit else { continue };
        if used >= fuel {
            let mut rest = done;
            if mirrored {
                rest.reverse();
                pending.extend(rest);
                return Err(fuel_out(pending, used));
            }
            rest.extend(pending.into_iter().rev());
            return Err(fuel_out(rest, used));
        }
        used += 1;
        done.truncate(n - k);
        let rhs = s.relations[ri].rewrite.as_ref().expect("checked binomial");
        if mirrored {
            pending.extend(rhs.letters().iter().copied());
        } else {
            pending.extend(rhs.letters().iter().rev().copied());
        }
    }
    if mirrored {
        done.reverse();
    }
    Ok(Word::from_vec_unchecked(done))
}

impl Polynomial {
    /// Divides by the leading coefficient under `order`.
    pub fn monic(&self, order: &OrderSpec) -> Result<Polynomial, ReductionError> {
        let (_, c) = leading(self, order)?;
        if c.is_zero() {
            return Err(ReductionError::ZeroPolynomial);
        }
        Ok(self.scale(&(Coeff::one() / c)))
    }
}
