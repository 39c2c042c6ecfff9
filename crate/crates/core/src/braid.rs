//! The braid group `B_n` in Artin–Burau generators.
//!
//! The alphabet consists of `s_{i,j}^{±1}` for `1 ≤ i < j ≤ n` (level `j`)
//! and `σ_k^{-1}` for `1 ≤ k < n` (level 1, spelled `g{k}^-1`). Letters are
//! ordered `S_n < S_{n-1} < ... < S_2 < Σ^{-1}`, with
//! `s_{1,j}^{-1} < s_{1,j} < s_{2,j}^{-1} < ... < s_{j-1,j}` inside `S_j`
//! and `σ_1^{-1} < ... < σ_{n-1}^{-1}`. Words are compared by the inverse
//! tower order over those levels, with deg-inlex on `S_n`-words.
//!
//! `S_j` is read as `{s_{i,j}^{±1} : 1 ≤ i < j}`; the index range written
//! in the classical source (`1 ≤ i, j < n`) does not match its own usage.
//!
//! Three relation families are fixed up relative to their classical
//! statement:
//! - (2) has right-hand side `s_{i,i+1}^δ σ_i^{-1}` (printed with `σ_1^{-1}`),
//! - (16) is `σ_i^{-2} = s_{i,i+1}^{-1}` (printed with `s_{i,i+l}`),
//! - (15) is `σ_j^{-1} σ_{k,j+1} = σ_{k,j+1} σ_{j-1}^{-1}` for `k < j`, where
//!   `σ_{k,j+1} = σ_k^{-1} ⋯ σ_j^{-1}`; the printed guard `j < k` cannot hold
//!   for a valid relation.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

use crate::freealg::{Alphabet, Letter, Word};
use crate::orders::{OrderSpec, Ranking};
use crate::reduction::{split_word_nf, OrientedRelation, Presentation, ReductionError};

/// Level shared by all `σ_k^{-1}` letters.
pub const SIGMA_LEVEL: u32 = 1;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BraidError {
    #[error("generator index {index} out of range for {n} strands")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("cannot parse braid letter `{0}`")]
    BadLetter(String),
    #[error("letter is not part of the braid alphabet")]
    ForeignLetter,
    #[error(transparent)]
    Reduction(#[from] ReductionError),
}

/// A signed Artin generator `σ_i^{±1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArtinLetter {
    /// 1-based generator index.
    pub index: usize,
    pub inverse: bool,
}

impl ArtinLetter {
    pub fn pos(index: usize) -> Self {
        ArtinLetter { index, inverse: false }
    }

    pub fn neg(index: usize) -> Self {
        ArtinLetter { index, inverse: true }
    }

    pub fn inv(self) -> Self {
        ArtinLetter {
            index: self.index,
            inverse: !self.inverse,
        }
    }
}

impl fmt::Display for ArtinLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "g{}^-1", self.index)
        } else {
            write!(f, "g{}", self.index)
        }
    }
}

impl FromStr for ArtinLetter {
    type Err = BraidError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || BraidError::BadLetter(s.to_string());
        let body = s.strip_prefix('g').ok_or_else(bad)?;
        let (num, inverse) = match body.strip_suffix("^-1") {
            Some(n) => (n, true),
            None => (body, false),
        };
        let index: usize = num.parse().map_err(|_| bad())?;
        if index == 0 {
            return Err(bad());
        }
        Ok(ArtinLetter { index, inverse })
    }
}

/// A word in the Artin generators `σ_i^{±1}`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct ArtinWord(pub Vec<ArtinLetter>);

impl ArtinWord {
    pub fn new(letters: Vec<ArtinLetter>) -> Self {
        ArtinWord(letters)
    }

    pub fn letters(&self) -> &[ArtinLetter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &ArtinWord) -> ArtinWord {
        ArtinWord(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn inverse(&self) -> ArtinWord {
        ArtinWord(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    /// Checks every generator index against `n` strands.
    pub fn check(&self, n: usize) -> Result<(), BraidError> {
        match self.0.iter().find(|l| l.index == 0 || l.index >= n) {
            Some(l) => Err(BraidError::IndexOutOfRange { index: l.index, n }),
            None => Ok(()),
        }
    }
}

impl fmt::Display for ArtinWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for ArtinWord {
    type Err = BraidError;

    /// Whitespace-separated `g{i}` / `g{i}^-1`; `1` or the empty string is
    /// the identity.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let toks: Vec<&str> = s.split_whitespace().collect();
        if toks == ["1"] {
            return Ok(ArtinWord::default());
        }
        toks.into_iter().map(str::parse).collect::<Result<_, _>>().map(ArtinWord)
    }
}

/// The Artin–Burau alphabet and its inverse tower order for `n` strands.
#[derive(Debug, Clone)]
pub struct BraidScheme {
    n: usize,
    alphabet: Arc<Alphabet>,
    order: OrderSpec,
}

fn s_name(n: usize, i: usize, j: usize, inverse: bool) -> String {
    let base = if n <= 9 {
        format!("s{i}{j}")
    } else {
        format!("s{i}_{j}")
    };
    if inverse {
        base + "^-1"
    } else {
        base
    }
}

/// Builds the scheme; `n = 1` gives the empty alphabet.
pub fn braid_scheme(n: usize) -> BraidScheme {
    assert!(n >= 1, "a braid group needs at least one strand");
    let mut b = Alphabet::builder();
    for j in (2..=n).rev() {
        for i in 1..j {
            b = b
                .letter(&s_name(n, i, j, true), j as u32)
                .and_then(|b| b.letter(&s_name(n, i, j, false), j as u32))
                .expect("braid letter names are distinct");
            b = b.inverse_pair(&s_name(n, i, j, false), &s_name(n, i, j, true));
        }
    }
    for k in 1..n {
        b = b
            .letter(&format!("g{k}^-1"), SIGMA_LEVEL)
            .expect("braid letter names are distinct");
    }
    let alphabet = b.build().expect("braid pairings are consistent");
    let order = if n == 1 {
        OrderSpec::DegInLex(Ranking::all(&alphabet))
    } else {
        let mut o = OrderSpec::DegInLex(Ranking::level(&alphabet, n as u32));
        for j in (2..n).rev() {
            o = OrderSpec::tower(o, Ranking::level(&alphabet, j as u32)).expect("levels are disjoint");
        }
        OrderSpec::tower(o, Ranking::level(&alphabet, SIGMA_LEVEL)).expect("levels are disjoint")
    };
    BraidScheme {
        n,
        alphabet: Arc::new(alphabet),
        order,
    }
}

impl BraidScheme {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn order(&self) -> &OrderSpec {
        &self.order
    }

    /// `s_{i,j}^{δ}` with `δ = ±1`.
    pub fn s(&self, i: usize, j: usize, delta: i8) -> Letter {
        assert!(1 <= i && i < j && j <= self.n, "s_{{{i},{j}}} out of range");
        self.alphabet
            .letter(&s_name(self.n, i, j, delta < 0))
            .expect("letter exists")
    }

    /// `σ_k^{-1}`.
    pub fn sigma_inv(&self, k: usize) -> Letter {
        assert!(1 <= k && k < self.n, "σ_{k} out of range");
        self.alphabet.letter(&format!("g{k}^-1")).expect("letter exists")
    }

    /// Decodes a letter into `Some((i, j, δ))` for `s_{i,j}^δ` or `None` for
    /// a `σ_k^{-1}`, whose index is returned by [`Self::sigma_index`].
    fn decode(&self, l: Letter) -> Result<Decoded, BraidError> {
        if !self.alphabet.owns(l) {
            return Err(BraidError::ForeignLetter);
        }
        // Declaration order: for j = n..2, for i = 1..j-1: s^-1, s; then σ's.
        let idx = l.index();
        let s_count = self.n * (self.n - 1);
        if idx >= s_count {
            return Ok(Decoded::Sigma(idx - s_count + 1));
        }
        let mut base = 0;
        for j in (2..=self.n).rev() {
            let block = 2 * (j - 1);
            if idx < base + block {
                let off = idx - base;
                let i = off / 2 + 1;
                let delta = if off.is_multiple_of(2) { -1 } else { 1 };
                return Ok(Decoded::S(i, j, delta));
            }
            base += block;
        }
        unreachable!("index within s-letter range")
    }

    /// `σ_i ↦ s_{i,i+1}·σ_i^{-1}`, `σ_i^{-1} ↦ σ_i^{-1}`.
    pub fn artin_to_s(&self, w: &ArtinWord) -> Result<Word, BraidError> {
        w.check(self.n)?;
        let mut out = Vec::with_capacity(2 * w.len());
        for l in w.letters() {
            if !l.inverse {
                out.push(self.s(l.index, l.index + 1, 1));
            }
            out.push(self.sigma_inv(l.index));
        }
        Ok(Word::from_vec_unchecked(out))
    }

    /// Substitutes the defining Artin expression of every letter:
    /// `s_{i,j} = σ_{j-1} ⋯ σ_{i+1} σ_i² σ_{i+1}^{-1} ⋯ σ_{j-1}^{-1}`.
    pub fn s_to_artin(&self, w: &Word) -> Result<ArtinWord, BraidError> {
        let mut out = Vec::new();
        for &l in w.letters() {
            match self.decode(l)? {
                Decoded::Sigma(k) => out.push(ArtinLetter::neg(k)),
                Decoded::S(i, j, delta) => {
                    out.extend(((i + 1)..j).rev().map(ArtinLetter::pos));
                    let core = if delta > 0 {
                        ArtinLetter::pos(i)
                    } else {
                        ArtinLetter::neg(i)
                    };
                    out.extend([core, core]);
                    out.extend(((i + 1)..j).map(ArtinLetter::neg));
                }
            }
        }
        Ok(ArtinWord(out))
    }

    /// Parses braid letters separated by whitespace or `.`. Besides the
    /// alphabet's own letters, a positive generator `g{k}` is accepted and
    /// expanded to `s_{k,k+1}·σ_k^{-1}`.
    pub fn parse_word(&self, text: &str) -> Result<Word, BraidError> {
        let toks: Vec<&str> = text
            .split(|c: char| c.is_whitespace() || c == '.')
            .filter(|t| !t.is_empty())
            .collect();
        if toks == ["1"] {
            return Ok(Word::empty());
        }
        let mut out = Vec::new();
        for t in toks {
            if let Some(l) = self.alphabet.letter(t) {
                out.push(l);
            } else {
                let a: ArtinLetter = t.parse()?;
                let w = self.artin_to_s(&ArtinWord(vec![a]))?;
                out.extend_from_slice(w.letters());
            }
        }
        Ok(Word::from_vec_unchecked(out))
    }

    pub fn render(&self, w: &Word) -> String {
        self.alphabet.render_word(w, " ")
    }
}

enum Decoded {
    S(usize, usize, i8),
    Sigma(usize),
}

/// Builder for the relation list; every brace is expanded literally.
struct Families<'a> {
    scheme: &'a BraidScheme,
    rels: Vec<OrientedRelation>,
}

impl Families<'_> {
    fn s(&self, i: usize, j: usize, d: i8) -> Word {
        Word::single(self.scheme.s(i, j, d))
    }

    fn g(&self, k: usize) -> Word {
        Word::single(self.scheme.sigma_inv(k))
    }

    fn cat(parts: &[&Word]) -> Word {
        let slices: Vec<&[Letter]> = parts.iter().map(|w| w.letters()).collect();
        Word::join(&slices)
    }

    /// `{a, b} = b^{-1} a b`.
    fn brace(&self, a: &Word, b: &Word) -> Word {
        self.scheme
            .alphabet
            .expand_brace(a, b)
            .expect("braces conjugate by invertible s-letters")
    }

    fn push(&mut self, family: u8, lhs: Word, rhs: Word) {
        self.rels.push(OrientedRelation::binomial(lhs, rhs, Some(family)));
    }
}

/// Every instance of the Artin–Markov relations (1)–(17) for `B_n`, each
/// tagged with its family number and oriented with its left-hand side as
/// leading word.
///
/// Panics if some left-hand side is not the leading word under the scheme's
/// order; that would mean the relation table or the order is wrong.
pub fn artin_markov(n: usize) -> Presentation {
    artin_markov_for(&braid_scheme(n))
}

pub fn artin_markov_for(scheme: &BraidScheme) -> Presentation {
    let n = scheme.n;
    let mut f = Families {
        scheme,
        rels: Vec::new(),
    };
    let signs = [-1i8, 1];

    // (1)-(6): σ_k^{-1} s_{ij}^δ for every k, split by how k meets {i-1, i, j-1, j}.
    for i in 1..n {
        for j in (i + 1)..=n {
            for &d in &signs {
                for k in 1..n {
                    let lhs = Families::cat(&[&f.g(k), &f.s(i, j, d)]);
                    if k + 1 == i {
                        // (3)
                        let rhs = Families::cat(&[&f.s(i - 1, j, d), &f.g(i - 1)]);
                        f.push(3, lhs, rhs);
                    } else if k == i && j == i + 1 {
                        // (2)
                        let rhs = Families::cat(&[&f.s(i, i + 1, d), &f.g(i)]);
                        f.push(2, lhs, rhs);
                    } else if k == i {
                        // (4)
                        let b = f.brace(&f.s(i + 1, j, d), &f.s(i, i + 1, 1));
                        let rhs = Families::cat(&[&b, &f.g(i)]);
                        f.push(4, lhs, rhs);
                    } else if k + 1 == j {
                        // (5), i < j-1
                        let rhs = Families::cat(&[&f.s(i, j - 1, d), &f.g(j - 1)]);
                        f.push(5, lhs, rhs);
                    } else if k == j {
                        // (6)
                        let b = f.brace(&f.s(i, j + 1, d), &f.s(j, j + 1, 1));
                        let rhs = Families::cat(&[&b, &f.g(j)]);
                        f.push(6, lhs, rhs);
                    } else {
                        // (1)
                        let rhs = Families::cat(&[&f.s(i, j, d), &f.g(k)]);
                        f.push(1, lhs, rhs);
                    }
                }
            }
        }
    }

    // (7)-(10): j < k < l.
    for j in 1..=n {
        for k in (j + 1)..=n {
            for l in (k + 1)..=n {
                for &e in &signs {
                    let skl = f.s(k, l, e);
                    let sjl = f.s(j, l, e);
                    // (7)
                    let lhs = Families::cat(&[&f.s(j, k, -1), &skl]);
                    let b = f.brace(&skl, &f.s(j, l, -1));
                    f.push(7, lhs, Families::cat(&[&b, &f.s(j, k, -1)]));
                    // (8)
                    let lhs = Families::cat(&[&f.s(j, k, 1), &skl]);
                    let conj = Families::cat(&[&f.s(j, l, 1), &f.s(k, l, 1)]);
                    let b = f.brace(&skl, &conj);
                    f.push(8, lhs, Families::cat(&[&b, &f.s(j, k, 1)]));
                    // (9)
                    let lhs = Families::cat(&[&f.s(j, k, -1), &sjl]);
                    let conj = Families::cat(&[&f.s(k, l, -1), &f.s(j, l, -1)]);
                    let b = f.brace(&sjl, &conj);
                    f.push(9, lhs, Families::cat(&[&b, &f.s(j, k, -1)]));
                    // (10)
                    let lhs = Families::cat(&[&f.s(j, k, 1), &sjl]);
                    let b = f.brace(&sjl, &f.s(k, l, 1));
                    f.push(10, lhs, Families::cat(&[&b, &f.s(j, k, 1)]));
                }
            }
        }
    }

    // (11), (12): i < j < k < l.
    for i in 1..=n {
        for j in (i + 1)..=n {
            for k in (j + 1)..=n {
                for l in (k + 1)..=n {
                    for &e in &signs {
                        let sjl = f.s(j, l, e);
                        // (11)
                        let lhs = Families::cat(&[&f.s(i, k, -1), &sjl]);
                        let conj = Families::cat(&[
                            &f.s(k, l, 1),
                            &f.s(i, l, 1),
                            &f.s(k, l, -1),
                            &f.s(i, l, -1),
                        ]);
                        let b = f.brace(&sjl, &conj);
                        f.push(11, lhs, Families::cat(&[&b, &f.s(i, k, -1)]));
                        // (12)
                        let lhs = Families::cat(&[&f.s(i, k, 1), &sjl]);
                        let conj = Families::cat(&[
                            &f.s(i, l, -1),
                            &f.s(k, l, -1),
                            &f.s(i, l, 1),
                            &f.s(k, l, 1),
                        ]);
                        let b = f.brace(&sjl, &conj);
                        f.push(12, lhs, Families::cat(&[&b, &f.s(i, k, 1)]));
                    }
                }
            }
        }
    }

    // (13): s_{ik}^δ s_{jl}^ε = s_{jl}^ε s_{ik}^δ for j < i < k < l or i < k < j < l.
    for i in 1..=n {
        for k in (i + 1)..=n {
            for j in 1..=n {
                for l in (j + 1)..=n {
                    let nested = j < i && k < l;
                    let disjoint = k < j;
                    if !(nested || disjoint) {
                        continue;
                    }
                    for &d in &signs {
                        for &e in &signs {
                            let lhs = Families::cat(&[&f.s(i, k, d), &f.s(j, l, e)]);
                            let rhs = Families::cat(&[&f.s(j, l, e), &f.s(i, k, d)]);
                            f.push(13, lhs, rhs);
                        }
                    }
                }
            }
        }
    }

    // (14): σ_j^{-1} σ_k^{-1} = σ_k^{-1} σ_j^{-1}, j < k - 1.
    for j in 1..n {
        for k in (j + 2)..n {
            let lhs = Families::cat(&[&f.g(j), &f.g(k)]);
            let rhs = Families::cat(&[&f.g(k), &f.g(j)]);
            f.push(14, lhs, rhs);
        }
    }

    // (15): σ_j^{-1} σ_k^{-1} ⋯ σ_j^{-1} = σ_k^{-1} ⋯ σ_j^{-1} σ_{j-1}^{-1}, k < j.
    for j in 2..n {
        for k in 1..j {
            let run: Vec<Word> = (k..=j).map(|m| f.g(m)).collect();
            let run = Families::cat(&run.iter().collect::<Vec<_>>());
            let lhs = Families::cat(&[&f.g(j), &run]);
            let rhs = Families::cat(&[&run, &f.g(j - 1)]);
            f.push(15, lhs, rhs);
        }
    }

    // (16): σ_i^{-2} = s_{i,i+1}^{-1}.
    for i in 1..n {
        let lhs = Families::cat(&[&f.g(i), &f.g(i)]);
        f.push(16, lhs, f.s(i, i + 1, -1));
    }

    // (17): s_{ij}^{±1} s_{ij}^{∓1} = 1.
    for i in 1..n {
        for j in (i + 1)..=n {
            for &d in &signs {
                let lhs = Families::cat(&[&f.s(i, j, d), &f.s(i, j, -d)]);
                f.push(17, lhs, Word::empty());
            }
        }
    }

    // Relation order only steers which rewrite fires first. Free cancellation
    // and σ_i^{-2} go first so conjugating rules never act on cancellable
    // pairs; without this, words grow exponentially before they shrink.
    let mut rels = f.rels;
    rels.sort_by_key(|r| match r.family {
        Some(17) => 0,
        Some(16) => 1,
        Some(13) | Some(14) => 2,
        _ => 3,
    });
    match Presentation::from_oriented(scheme.alphabet.clone(), scheme.order.clone(), rels.clone()) {
        Ok(p) => p,
        Err(ReductionError::Orientation { index }) => panic!(
            "relation ({}) {} = {} is not oriented by the inverse tower order",
            rels[index].family.unwrap_or(0),
            scheme.alphabet.render_word(&rels[index].lhs, " "),
            scheme.alphabet.render_poly(&rels[index].rhs, " "),
        ),
        Err(e) => panic!("building the Artin-Markov presentation failed: {e}"),
    }
}

/// A braid scheme with its Artin–Markov presentation.
#[derive(Debug, Clone)]
pub struct BraidGroup {
    scheme: BraidScheme,
    presentation: Presentation,
}

impl BraidGroup {
    pub fn new(n: usize) -> Self {
        let scheme = braid_scheme(n);
        let presentation = artin_markov_for(&scheme);
        BraidGroup { scheme, presentation }
    }

    pub fn scheme(&self) -> &BraidScheme {
        &self.scheme
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn n(&self) -> usize {
        self.scheme.n
    }

    /// Normal form of `w`, merging normal forms of halves.
    pub fn word_nf(&self, w: &Word, fuel: usize) -> Result<Word, BraidError> {
        Ok(split_word_nf(w, &self.presentation, fuel)?)
    }

    /// Normal form of an Artin word in Artin–Burau letters.
    pub fn nf(&self, w: &ArtinWord, fuel: usize) -> Result<Word, BraidError> {
        let s = self.scheme.artin_to_s(w)?;
        self.word_nf(&s, fuel)
    }
}

/// One-shot normal form; builds the presentation for `n` on every call.
pub fn braid_nf(w: &ArtinWord, n: usize, fuel: usize) -> Result<Word, BraidError> {
    assert!(n >= 2, "braid_nf needs at least two strands");
    BraidGroup::new(n).nf(w, fuel)
}
