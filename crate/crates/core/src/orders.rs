//! Monomial orders on words: deg-lex, inverse-lex (read from the last
//! letter), deg-inlex and the inverse tower order over a leveled alphabet.
//!
//! A tower order splits the alphabet as `X = Y ∪ Z`, writes a word as
//! `u_0 z_1 u_1 ... z_k u_k` with `u_i ∈ Y*`, `z_i ∈ Z`, and compares the
//! tuples `(k, u_k, z_k, ..., u_1, z_1, u_0)` lexicographically. The `u_i`
//! are compared with the (possibly itself towered) order on `Y*`.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::freealg::{Alphabet, AlphabetId, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("letter #{0} is not ranked by the order")]
    ForeignLetter(usize),
    #[error("tower levels overlap: letter #{0} is ranked twice")]
    OverlappingLevels(usize),
    #[error("order does not rank letter `{0}`")]
    Uncovered(String),
    #[error("operation requires a tower order")]
    NotATower,
    #[error("ranking mixes letters of different alphabets")]
    AlphabetMismatch,
}

/// Which letters a ranking was drawn from; only used for display.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Selector {
    All,
    Level(u32),
    Explicit,
}

impl fmt::Display for Selector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Selector::All => write!(f, "all"),
            Selector::Level(1) => write!(f, "sigma"),
            Selector::Level(0) => write!(f, "L0"),
            Selector::Level(k) => write!(f, "S{k}"),
            Selector::Explicit => write!(f, "explicit"),
        }
    }
}

/// A strict total order on a set of letters.
#[derive(Debug, Clone)]
pub struct Ranking {
    alphabet: AlphabetId,
    selector: Selector,
    ranks: Vec<Option<u32>>,
    letters: Vec<Letter>,
}

impl PartialEq for Ranking {
    fn eq(&self, other: &Self) -> bool {
        self.ranks == other.ranks && self.selector == other.selector
    }
}

impl Ranking {
    /// Ranks `ascending` from smallest to largest.
    pub fn new(alphabet: &Alphabet, ascending: Vec<Letter>) -> Result<Ranking, OrderError> {
        Self::with_selector(alphabet, ascending, Selector::Explicit)
    }

    fn with_selector(
        alphabet: &Alphabet,
        ascending: Vec<Letter>,
        selector: Selector,
    ) -> Result<Ranking, OrderError> {
        let mut ranks = vec![None; alphabet.len()];
        for (r, &l) in ascending.iter().enumerate() {
            if !alphabet.owns(l) {
                return Err(OrderError::AlphabetMismatch);
            }
            if ranks[l.index()].replace(r as u32).is_some() {
                return Err(OrderError::OverlappingLevels(l.index()));
            }
        }
        Ok(Ranking {
            alphabet: alphabet.id(),
            selector,
            ranks,
            letters: ascending,
        })
    }

    /// Every letter, in the alphabet's declaration order.
    pub fn all(alphabet: &Alphabet) -> Ranking {
        Self::with_selector(alphabet, alphabet.letters().collect(), Selector::All)
            .expect("alphabet letters are distinct")
    }

    /// Letters of one level, in the alphabet's declaration order.
    pub fn level(alphabet: &Alphabet, level: u32) -> Ranking {
        let ls = alphabet.letters().filter(|&l| alphabet.level(l) == level).collect();
        Self::with_selector(alphabet, ls, Selector::Level(level))
            .expect("alphabet letters are distinct")
    }

    pub fn selector(&self) -> Selector {
        self.selector
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    #[inline]
    pub fn rank(&self, l: Letter) -> Option<u32> {
        if l.alphabet() != self.alphabet {
            return None;
        }
        self.ranks.get(l.index()).copied().flatten()
    }

    pub fn contains(&self, l: Letter) -> bool {
        self.rank(l).is_some()
    }

    #[inline]
    fn rank_or_err(&self, l: Letter) -> Result<u32, OrderError> {
        self.rank(l).ok_or(OrderError::ForeignLetter(l.index()))
    }
}

/// A compositional description of a monomial order.
#[derive(Debug, Clone, PartialEq)]
pub enum OrderSpec {
    /// Length first, then left-to-right by letter rank.
    DegLex(Ranking),
    /// Right-to-left by letter rank; a proper suffix is smaller.
    InLex(Ranking),
    /// Length first, then right-to-left by letter rank.
    DegInLex(Ranking),
    /// Inverse tower order with `top` as the `Z` letters over `base` on `Y*`.
    Tower { base: Box<OrderSpec>, top: Ranking },
}

/// Decomposition `u = u_0 z_1 u_1 ... z_k u_k` of a word relative to a tower.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InverseWeight {
    /// `u_0, ..., u_k`.
    pub factors: Vec<Word>,
    /// `z_1, ..., z_k`.
    pub tops: Vec<Letter>,
}

impl InverseWeight {
    pub fn k(&self) -> usize {
        self.tops.len()
    }

    pub fn reassemble(&self) -> Word {
        let mut letters = Vec::new();
        for (i, f) in self.factors.iter().enumerate() {
            if i > 0 {
                letters.push(self.tops[i - 1]);
            }
            letters.extend_from_slice(f.letters());
        }
        Word::from_vec_unchecked(letters)
    }
}

impl OrderSpec {
    pub fn tower(base: OrderSpec, top: Ranking) -> Result<OrderSpec, OrderError> {
        if let Some(l) = top.letters().iter().find(|&&l| base.ranks(l)) {
            return Err(OrderError::OverlappingLevels(l.index()));
        }
        Ok(OrderSpec::Tower {
            base: Box::new(base),
            top,
        })
    }

    /// Whether `l` is ranked anywhere in the spec.
    pub fn ranks(&self, l: Letter) -> bool {
        match self {
            OrderSpec::DegLex(r) | OrderSpec::InLex(r) | OrderSpec::DegInLex(r) => r.contains(l),
            OrderSpec::Tower { base, top } => top.contains(l) || base.ranks(l),
        }
    }

    /// Checks that every letter of `alphabet` is ranked.
    pub fn covers(&self, alphabet: &Alphabet) -> Result<(), OrderError> {
        match alphabet.letters().find(|&l| !self.ranks(l)) {
            Some(l) => Err(OrderError::Uncovered(alphabet.name(l).to_string())),
            None => Ok(()),
        }
    }

    pub fn compare(&self, u: &Word, v: &Word) -> Result<Ordering, OrderError> {
        self.compare_slices(u.letters(), v.letters())
    }

    pub(crate) fn compare_slices(&self, u: &[Letter], v: &[Letter]) -> Result<Ordering, OrderError> {
        match self {
            OrderSpec::DegLex(r) => {
                if u.len() != v.len() {
                    check_all(r, u)?;
                    check_all(r, v)?;
                    return Ok(u.len().cmp(&v.len()));
                }
                lex(r, u.iter(), v.iter())
            }
            OrderSpec::DegInLex(r) => {
                if u.len() != v.len() {
                    check_all(r, u)?;
                    check_all(r, v)?;
                    return Ok(u.len().cmp(&v.len()));
                }
                lex(r, u.iter().rev(), v.iter().rev())
            }
            OrderSpec::InLex(r) => {
                check_all(r, u)?;
                check_all(r, v)?;
                lex(r, u.iter().rev(), v.iter().rev())
            }
            OrderSpec::Tower { base, top } => {
                let ku = u.iter().filter(|&&l| top.contains(l)).count();
                let kv = v.iter().filter(|&&l| top.contains(l)).count();
                if ku != kv {
                    // Still validate the Y letters.
                    for f in u.split(|&l| top.contains(l)).chain(v.split(|&l| top.contains(l))) {
                        base.compare_slices(f, &[])?;
                    }
                    return Ok(ku.cmp(&kv));
                }
                let mut fu = u.rsplit(|&l| top.contains(l));
                let mut fv = v.rsplit(|&l| top.contains(l));
                let mut zu = u.iter().rev().filter(|&&l| top.contains(l));
                let mut zv = v.iter().rev().filter(|&&l| top.contains(l));
                let mut result = Ordering::Equal;
                for i in 0..=ku {
                    let (a, b) = (fu.next().unwrap_or(&[]), fv.next().unwrap_or(&[]));
                    let c = base.compare_slices(a, b)?;
                    if result == Ordering::Equal {
                        result = c;
                    }
                    if i < ku {
                        let (x, y) = (zu.next().unwrap(), zv.next().unwrap());
                        let c = top.rank_or_err(*x)?.cmp(&top.rank_or_err(*y)?);
                        if result == Ordering::Equal {
                            result = c;
                        }
                    }
                }
                Ok(result)
            }
        }
    }

    /// The inverse weight of `u` relative to a tower spec.
    pub fn decompose(&self, u: &Word) -> Result<InverseWeight, OrderError> {
        let OrderSpec::Tower { base, top } = self else {
            return Err(OrderError::NotATower);
        };
        let mut factors = Vec::new();
        let mut tops = Vec::new();
        let mut current = Vec::new();
        for &l in u.letters() {
            if top.contains(l) {
                factors.push(Word::from_vec_unchecked(std::mem::take(&mut current)));
                tops.push(l);
            } else if base.ranks(l) {
                current.push(l);
            } else {
                return Err(OrderError::ForeignLetter(l.index()));
            }
        }
        factors.push(Word::from_vec_unchecked(current));
        Ok(InverseWeight { factors, tops })
    }

    /// True iff comparing `u, v` agrees with comparing `a·u·b, a·v·b`.
    pub fn is_monomial_witness(
        &self,
        u: &Word,
        v: &Word,
        a: &Word,
        b: &Word,
    ) -> Result<bool, OrderError> {
        let plain = self.compare(u, v)?;
        let au_b = Word::join(&[a.letters(), u.letters(), b.letters()]);
        let av_b = Word::join(&[a.letters(), v.letters(), b.letters()]);
        Ok(plain == self.compare(&au_b, &av_b)?)
    }

    /// The order-maximal word among `words`.
    pub fn max_word<'a>(
        &self,
        words: impl IntoIterator<Item = &'a Word>,
    ) -> Result<Option<&'a Word>, OrderError> {
        let mut best: Option<&Word> = None;
        for w in words {
            best = match best {
                Some(b) if self.compare(w, b)? != Ordering::Greater => Some(b),
                _ => Some(w),
            };
        }
        Ok(best)
    }
}

fn check_all(r: &Ranking, u: &[Letter]) -> Result<(), OrderError> {
    u.iter().try_for_each(|&l| r.rank_or_err(l).map(|_| ()))
}

fn lex<'a>(
    r: &Ranking,
    mut u: impl Iterator<Item = &'a Letter>,
    mut v: impl Iterator<Item = &'a Letter>,
) -> Result<Ordering, OrderError> {
    loop {
        match (u.next(), v.next()) {
            (None, None) => return Ok(Ordering::Equal),
            (None, Some(y)) => {
                r.rank_or_err(*y)?;
                return Ok(Ordering::Less);
            }
            (Some(x), None) => {
                r.rank_or_err(*x)?;
                return Ok(Ordering::Greater);
            }
            (Some(x), Some(y)) => {
                let c = r.rank_or_err(*x)?.cmp(&r.rank_or_err(*y)?);
                if c != Ordering::Equal {
                    return Ok(c);
                }
            }
        }
    }
}

impl fmt::Display for OrderSpec {
    /// Nested towers print flattened: `tower(base, z1, z2, ...)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn leaf(f: &mut fmt::Formatter<'_>, name: &str, r: &Ranking) -> fmt::Result {
            match r.selector() {
                Selector::All => write!(f, "{name}"),
                s => write!(f, "{name}({s})"),
            }
        }
        match self {
            OrderSpec::DegLex(r) => leaf(f, "deglex", r),
            OrderSpec::InLex(r) => leaf(f, "inlex", r),
            OrderSpec::DegInLex(r) => leaf(f, "deginlex", r),
            OrderSpec::Tower { .. } => {
                let mut tops = Vec::new();
                let mut cur = self;
                while let OrderSpec::Tower { base, top } = cur {
                    tops.push(top.selector());
                    cur = base;
                }
                write!(f, "tower({cur}")?;
                for s in tops.iter().rev() {
                    write!(f, ", {s}")?;
                }
                write!(f, ")")
            }
        }
    }
}
