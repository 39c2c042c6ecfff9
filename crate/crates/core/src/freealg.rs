//! Words and polynomials of the free associative algebra `k<X>` over the
//! rationals.
//!
//! An [`Alphabet`] owns the letter metadata (display name, tower level and
//! optional inverse partner). [`Letter`]s are small copyable handles that
//! remember which alphabet issued them, so words built from two different
//! alphabets can be told apart.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::atomic::{AtomicU32, Ordering};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Coefficient field.
pub type Coeff = BigRational;

static NEXT_ALPHABET: AtomicU32 = AtomicU32::new(0);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FreeAlgError {
    #[error("letters come from different alphabets")]
    AlphabetMismatch,
    #[error("letter at position {0} has no inverse partner")]
    NonInvertibleLetter(usize),
    #[error("unknown letter `{0}`")]
    UnknownLetter(String),
    #[error("letter `{0}` declared twice")]
    DuplicateLetter(String),
    #[error("invalid inverse pairing involving `{0}`")]
    InvalidPairing(String),
    #[error("invalid letter name `{0}`")]
    InvalidName(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AlphabetId(u32);

/// A letter handle. The index doubles as the letter's rank in the alphabet's
/// declaration order (ascending).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    alphabet: AlphabetId,
    index: u32,
}

impl Letter {
    pub fn alphabet(self) -> AlphabetId {
        self.alphabet
    }

    pub fn index(self) -> usize {
        self.index as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct LetterInfo {
    name: String,
    level: u32,
    partner: Option<u32>,
}

/// A finite, ranked set of letters.
#[derive(Debug, Clone)]
pub struct Alphabet {
    id: AlphabetId,
    letters: Vec<LetterInfo>,
    by_name: HashMap<String, u32>,
}

impl PartialEq for Alphabet {
    /// Structural equality: same names, levels and pairings in the same rank
    /// order. The identity tag is ignored.
    fn eq(&self, other: &Self) -> bool {
        self.letters == other.letters
    }
}

impl Eq for Alphabet {}

/// Builder for [`Alphabet`]. Letters are declared in ascending rank order.
#[derive(Debug, Default)]
pub struct AlphabetBuilder {
    letters: Vec<LetterInfo>,
    by_name: HashMap<String, u32>,
    pairs: Vec<(String, String)>,
}

fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && name != "1"
        && !name.chars().next().is_some_and(|c| c.is_ascii_digit() || c == '-')
        && !name
            .chars()
            .any(|c| c.is_whitespace() || ".*;,()=>+#".contains(c))
}

impl AlphabetBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn letter(mut self, name: &str, level: u32) -> Result<Self, FreeAlgError> {
        if !valid_name(name) {
            return Err(FreeAlgError::InvalidName(name.to_string()));
        }
        if self.by_name.contains_key(name) {
            return Err(FreeAlgError::DuplicateLetter(name.to_string()));
        }
        self.by_name
            .insert(name.to_string(), self.letters.len() as u32);
        self.letters.push(LetterInfo {
            name: name.to_string(),
            level,
            partner: None,
        });
        Ok(self)
    }

    /// Declares `a` and `b` mutually inverse. `a == b` declares an involution.
    pub fn inverse_pair(mut self, a: &str, b: &str) -> Self {
        self.pairs.push((a.to_string(), b.to_string()));
        self
    }

    pub fn set_level(mut self, name: &str, level: u32) -> Result<Self, FreeAlgError> {
        let idx = *self
            .by_name
            .get(name)
            .ok_or_else(|| FreeAlgError::UnknownLetter(name.to_string()))?;
        self.letters[idx as usize].level = level;
        Ok(self)
    }

    pub fn build(mut self) -> Result<Alphabet, FreeAlgError> {
        for (a, b) in std::mem::take(&mut self.pairs) {
            let ia = *self
                .by_name
                .get(&a)
                .ok_or_else(|| FreeAlgError::UnknownLetter(a.clone()))?;
            let ib = *self
                .by_name
                .get(&b)
                .ok_or_else(|| FreeAlgError::UnknownLetter(b.clone()))?;
            for (x, y) in [(ia, ib), (ib, ia)] {
                match self.letters[x as usize].partner {
                    None => self.letters[x as usize].partner = Some(y),
                    Some(p) if p == y => {}
                    Some(_) => {
                        return Err(FreeAlgError::InvalidPairing(
                            self.letters[x as usize].name.clone(),
                        ))
                    }
                }
            }
        }
        Ok(Alphabet {
            id: AlphabetId(NEXT_ALPHABET.fetch_add(1, Ordering::Relaxed)),
            letters: self.letters,
            by_name: self.by_name,
        })
    }
}

impl Alphabet {
    pub fn builder() -> AlphabetBuilder {
        AlphabetBuilder::new()
    }

    /// A flat alphabet (level 0, no inverses) from names in ascending rank.
    pub fn flat(names: &[&str]) -> Result<Alphabet, FreeAlgError> {
        names
            .iter()
            .try_fold(AlphabetBuilder::new(), |b, n| b.letter(n, 0))?
            .build()
    }

    pub fn id(&self) -> AlphabetId {
        self.id
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// All letters in ascending rank order.
    pub fn letters(&self) -> impl DoubleEndedIterator<Item = Letter> + ExactSizeIterator + '_ {
        (0..self.letters.len() as u32).map(move |index| Letter {
            alphabet: self.id,
            index,
        })
    }

    pub fn letter(&self, name: &str) -> Option<Letter> {
        self.by_name.get(name).map(|&index| Letter {
            alphabet: self.id,
            index,
        })
    }

    pub fn owns(&self, l: Letter) -> bool {
        l.alphabet == self.id && l.index() < self.letters.len()
    }

    fn info(&self, l: Letter) -> &LetterInfo {
        assert!(self.owns(l), "letter does not belong to this alphabet");
        &self.letters[l.index()]
    }

    pub fn name(&self, l: Letter) -> &str {
        &self.info(l).name
    }

    pub fn level(&self, l: Letter) -> u32 {
        self.info(l).level
    }

    pub fn partner(&self, l: Letter) -> Option<Letter> {
        self.info(l).partner.map(|index| Letter {
            alphabet: self.id,
            index,
        })
    }

    pub fn word(&self, names: &[&str]) -> Result<Word, FreeAlgError> {
        names
            .iter()
            .map(|n| {
                self.letter(n)
                    .ok_or_else(|| FreeAlgError::UnknownLetter(n.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }

    /// Parses letters separated by whitespace and/or `.`; `1` is the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word, FreeAlgError> {
        let tokens: Vec<&str> = text
            .split(|c: char| c.is_whitespace() || c == '.')
            .filter(|t| !t.is_empty())
            .collect();
        if tokens == ["1"] {
            return Ok(Word::empty());
        }
        self.word(&tokens)
    }

    /// Renders a word with the given separator; the empty word is `1`.
    pub fn render_word(&self, w: &Word, sep: &str) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.letters()
            .iter()
            .map(|&l| self.name(l))
            .collect::<Vec<_>>()
            .join(sep)
    }

    /// Renders `c1*w1 + c2*w2 - ...` with terms in storage order. Unit
    /// coefficients are omitted except on the empty word.
    pub fn render_poly(&self, p: &Polynomial, sep: &str) -> String {
        if p.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (w, c)) in p.terms().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let mag = c.abs();
            if !mag.is_one() {
                out.push_str(&mag.to_string());
                out.push('*');
            }
            out.push_str(&self.render_word(w, sep));
        }
        out
    }

    /// `w^{-1}`: reverse `w` and replace each letter by its partner.
    pub fn invert_word(&self, w: &Word) -> Result<Word, FreeAlgError> {
        let mut out = Vec::with_capacity(w.len());
        for (pos, &l) in w.0.iter().enumerate().rev() {
            if !self.owns(l) {
                return Err(FreeAlgError::AlphabetMismatch);
            }
            out.push(self.partner(l).ok_or(FreeAlgError::NonInvertibleLetter(pos))?);
        }
        Ok(Word(out))
    }

    /// The brace `{a, b} = b^{-1} a b`, expanded literally (no cancellation).
    pub fn expand_brace(&self, a: &Word, b: &Word) -> Result<Word, FreeAlgError> {
        let b_inv = self.invert_word(b)?;
        b_inv.concat(a)?.concat(b)
    }

    /// Cancels adjacent `x x^{-1}` pairs until none remain.
    pub fn free_reduce(&self, w: &Word) -> Word {
        let mut stack: Vec<Letter> = Vec::with_capacity(w.len());
        for &l in &w.0 {
            match stack.last() {
                Some(&top) if self.partner(top) == Some(l) => {
                    stack.pop();
                }
                _ => stack.push(l),
            }
        }
        Word(stack)
    }
}

/// An element of the free monoid `X*`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn single(l: Letter) -> Word {
        Word(vec![l])
    }

    pub fn from_letters(letters: Vec<Letter>) -> Result<Word, FreeAlgError> {
        if let Some(first) = letters.first() {
            if letters.iter().any(|l| l.alphabet != first.alphabet) {
                return Err(FreeAlgError::AlphabetMismatch);
            }
        }
        Ok(Word(letters))
    }

    pub(crate) fn from_vec_unchecked(letters: Vec<Letter>) -> Word {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn alphabet(&self) -> Option<AlphabetId> {
        self.0.first().map(|l| l.alphabet)
    }

    pub fn concat(&self, other: &Word) -> Result<Word, FreeAlgError> {
        match (self.alphabet(), other.alphabet()) {
            (Some(a), Some(b)) if a != b => Err(FreeAlgError::AlphabetMismatch),
            _ => Ok(Word::join(&[&self.0, &other.0])),
        }
    }

    /// Concatenates slices that are already known to share an alphabet.
    pub(crate) fn join(parts: &[&[Letter]]) -> Word {
        let mut v = Vec::with_capacity(parts.iter().map(|p| p.len()).sum());
        for p in parts {
            v.extend_from_slice(p);
        }
        Word(v)
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> Word {
        Word(self.0[range].to_vec())
    }

    /// Start positions of every occurrence of `pattern` (overlaps included).
    pub fn occurrences<'a>(&'a self, pattern: &'a [Letter]) -> impl Iterator<Item = usize> + 'a {
        let n = pattern.len();
        let last = if n == 0 || n > self.0.len() {
            0
        } else {
            self.0.len() - n + 1
        };
        (0..last).filter(move |&p| &self.0[p..p + n] == pattern)
    }

    pub fn contains(&self, pattern: &[Letter]) -> bool {
        self.occurrences(pattern).next().is_some()
    }
}

/// A polynomial of `k<X>`: finitely many words with nonzero rational
/// coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: BTreeMap<Word, Coeff>,
}

pub fn rational(n: i64) -> Coeff {
    BigRational::from_integer(BigInt::from(n))
}

impl Polynomial {
    pub fn zero() -> Polynomial {
        Polynomial::default()
    }

    pub fn monomial(w: Word, c: Coeff) -> Polynomial {
        let mut p = Polynomial::zero();
        p.add_term(w, c);
        p
    }

    pub fn from_word(w: Word) -> Polynomial {
        Polynomial::monomial(w, Coeff::one())
    }

    /// `u - v`.
    pub fn binomial(u: Word, v: Word) -> Polynomial {
        let mut p = Polynomial::from_word(u);
        p.add_term(v, -Coeff::one());
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, Coeff)>) -> Polynomial {
        let mut p = Polynomial::zero();
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn add_term(&mut self, w: Word, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl ExactSizeIterator<Item = (&Word, &Coeff)> {
        self.terms.iter()
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    pub fn coefficient(&self, w: &Word) -> Coeff {
        self.terms.get(w).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect(),
        }
    }

    /// `a · self · b`.
    pub fn sandwich(&self, a: &Word, b: &Word) -> Result<Polynomial, FreeAlgError> {
        let ids = a
            .alphabet()
            .into_iter()
            .chain(b.alphabet())
            .chain(self.terms.keys().find_map(|w| w.alphabet()));
        let mut seen = None;
        for id in ids {
            if *seen.get_or_insert(id) != id {
                return Err(FreeAlgError::AlphabetMismatch);
            }
        }
        Ok(self.sandwich_unchecked(a, b))
    }

    pub(crate) fn sandwich_unchecked(&self, a: &Word, b: &Word) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (Word::join(&[&a.0, &w.0, &b.0]), c.clone()))
                .collect(),
        }
    }

    pub fn mul_left(&self, a: &Word) -> Result<Polynomial, FreeAlgError> {
        self.sandwich(a, &Word::empty())
    }

    pub fn mul_right(&self, b: &Word) -> Result<Polynomial, FreeAlgError> {
        self.sandwich(&Word::empty(), b)
    }

    /// `self + c · other`, in place.
    pub fn add_scaled(&mut self, other: &Polynomial, c: &Coeff) {
        for (w, x) in &other.terms {
            self.add_term(w.clone(), x * c);
        }
    }

}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.add_scaled(rhs, &Coeff::one());
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Coeff::one());
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Coeff::one())
    }
}

impl fmt::Display for AlphabetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "alphabet#{}", self.0)
    }
}
