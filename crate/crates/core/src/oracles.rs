//! Independent checks for braid-word equality.
//!
//! None of these use the rewriting system: the symmetric-group projection,
//! the Burau representation over `ℤ[t, t⁻¹]`, and a fuzzer that rewrites
//! Artin words by defining relators.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::braid::{ArtinLetter, ArtinWord, BraidError};

/// A permutation of `{1..n}`, stored as `image[p - 1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((1..=n).collect())
    }

    /// Image of point `p` (1-based).
    pub fn image(&self, p: usize) -> usize {
        self.0[p - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &p)| p == i + 1)
    }
}

/// Projection `B_n → S_n`. Starting from the identity arrangement, each
/// letter `σ_i^{±1}` swaps the entries at positions `i` and `i + 1`, left to
/// right; the final arrangement is the image.
pub fn perm_image(w: &ArtinWord, n: usize) -> Result<Permutation, BraidError> {
    w.check(n)?;
    let mut image: Vec<usize> = (1..=n).collect();
    for l in w.letters() {
        image.swap(l.index - 1, l.index);
    }
    Ok(Permutation(image))
}

/// A Laurent polynomial in `t` with integer coefficients; no zero entries.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Laurent(BTreeMap<i64, BigInt>);

impl Laurent {
    pub fn zero() -> Self {
        Laurent::default()
    }

    pub fn one() -> Self {
        Laurent::monomial(1, 0)
    }

    /// `c·t^e`.
    pub fn monomial(c: i64, e: i64) -> Self {
        let mut m = BTreeMap::new();
        if c != 0 {
            m.insert(e, BigInt::from(c));
        }
        Laurent(m)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coefficient(&self, e: i64) -> BigInt {
        self.0.get(&e).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, e: i64, c: BigInt) {
        let slot = self.0.entry(e).or_default();
        *slot += c;
        if slot.is_zero() {
            self.0.remove(&e);
        }
    }
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (&e, c) in &rhs.0 {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent(self.0.iter().map(|(&e, c)| (e, -c)).collect())
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        self + &(-rhs)
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (&a, x) in &self.0 {
            for (&b, y) in &rhs.0 {
                out.add_term(a + b, x * y);
            }
        }
        out
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.0.iter().enumerate() {
            let sign = if c.sign() == Sign::Minus { "-" } else { "+" };
            match (k, sign) {
                (0, "-") => write!(f, "-")?,
                (0, _) => {}
                _ => write!(f, " {sign} ")?,
            }
            let m = c.magnitude();
            let unit = m.is_one();
            match e {
                0 => write!(f, "{m}")?,
                _ if unit => {}
                _ => write!(f, "{m}")?,
            }
            match e {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{e}")?,
            }
        }
        Ok(())
    }
}

/// Square matrix over [`Laurent`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentMatrix {
    size: usize,
    entries: Vec<Laurent>,
}

impl LaurentMatrix {
    pub fn identity(size: usize) -> Self {
        let mut entries = vec![Laurent::zero(); size * size];
        for i in 0..size {
            entries[i * size + i] = Laurent::one();
        }
        LaurentMatrix { size, entries }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Entry at 0-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> &Laurent {
        &self.entries[row * self.size + col]
    }

    fn set(&mut self, row: usize, col: usize, v: Laurent) {
        self.entries[row * self.size + col] = v;
    }

    pub fn is_identity(&self) -> bool {
        *self == LaurentMatrix::identity(self.size)
    }
}

impl Mul for &LaurentMatrix {
    type Output = LaurentMatrix;
    fn mul(self, rhs: &LaurentMatrix) -> LaurentMatrix {
        assert_eq!(self.size, rhs.size, "matrix sizes differ");
        let n = self.size;
        let mut out = LaurentMatrix {
            size: n,
            entries: vec![Laurent::zero(); n * n],
        };
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let v = &out.entries[i * n + j] + &(a * b);
                        out.entries[i * n + j] = v;
                    }
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BurauVariant {
    /// `n × n`.
    Unreduced,
    /// `(n-1) × (n-1)`, faithful for `n ≤ 3`.
    Reduced,
}

fn generator_matrix(l: ArtinLetter, n: usize, variant: BurauVariant) -> LaurentMatrix {
    let i = l.index - 1;
    let t = |e: i64| Laurent::monomial(1, e);
    let one_minus = |e: i64| &Laurent::one() - &t(e);
    match variant {
        BurauVariant::Unreduced => {
            let mut m = LaurentMatrix::identity(n);
            let (a, b, c, d) = if l.inverse {
                (Laurent::zero(), Laurent::one(), t(-1), one_minus(-1))
            } else {
                (one_minus(1), t(1), Laurent::one(), Laurent::zero())
            };
            m.set(i, i, a);
            m.set(i, i + 1, b);
            m.set(i + 1, i, c);
            m.set(i + 1, i + 1, d);
            m
        }
        BurauVariant::Reduced => {
            let size = n - 1;
            let mut m = LaurentMatrix::identity(size);
            let (left, mid, right) = if l.inverse {
                (Laurent::one(), Laurent::monomial(-1, -1), t(-1))
            } else {
                (t(1), Laurent::monomial(-1, 1), Laurent::one())
            };
            if i > 0 {
                m.set(i, i - 1, left);
            }
            m.set(i, i, mid);
            if i + 1 < size {
                m.set(i, i + 1, right);
            }
            m
        }
    }
}

/// Burau matrix of `w`, multiplied left to right.
pub fn burau(w: &ArtinWord, n: usize, variant: BurauVariant) -> Result<LaurentMatrix, BraidError> {
    assert!(n >= 2, "Burau needs at least two strands");
    w.check(n)?;
    let size = match variant {
        BurauVariant::Unreduced => n,
        BurauVariant::Reduced => n - 1,
    };
    Ok(w.letters().iter().fold(LaurentMatrix::identity(size), |acc, &l| {
        &acc * &generator_matrix(l, n, variant)
    }))
}

/// A single relator-based rewrite of an Artin word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Perturbation {
    /// Insert `x·x^{-1}` before position `at`.
    Insert { at: usize, letter: ArtinLetter },
    /// Replace `σ_a σ_b σ_a` at `at` by `σ_b σ_a σ_b` (`|a - b| = 1`, equal signs).
    Braid { at: usize },
    /// Swap the far-commuting pair at `at`, `at + 1`.
    Swap { at: usize },
}

/// Applies `p` to `w`, or returns `None` if the site does not fit.
pub fn apply_perturbation(w: &ArtinWord, p: Perturbation) -> Option<ArtinWord> {
    let mut v = w.letters().to_vec();
    match p {
        Perturbation::Insert { at, letter } => {
            if at > v.len() {
                return None;
            }
            v.splice(at..at, [letter, letter.inv()]);
        }
        Perturbation::Braid { at } => {
            if !is_braid_site(&v, at) {
                return None;
            }
            let (x, y) = (v[at], v[at + 1]);
            v[at] = y;
            v[at + 1] = x;
            v[at + 2] = y;
        }
        Perturbation::Swap { at } => {
            if !is_swap_site(&v, at) {
                return None;
            }
            v.swap(at, at + 1);
        }
    }
    Some(ArtinWord::new(v))
}

fn is_braid_site(v: &[ArtinLetter], at: usize) -> bool {
    at + 2 < v.len() && {
        let (x, y, z) = (v[at], v[at + 1], v[at + 2]);
        x == z && x.inverse == y.inverse && x.index.abs_diff(y.index) == 1
    }
}

fn is_swap_site(v: &[ArtinLetter], at: usize) -> bool {
    at + 1 < v.len() && v[at].index.abs_diff(v[at + 1].index) >= 2
}

/// Picks one perturbation deterministically from `seed`. Kinds are chosen
/// uniformly; when the chosen kind has no site in `w`, an insertion is made.
pub fn choose_perturbation(w: &ArtinWord, n: usize, seed: u64) -> Perturbation {
    assert!(n >= 2, "perturbation needs at least two strands");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v = w.letters();
    let kind = rng.gen_range(0..3);
    let sites: Vec<usize> = match kind {
        1 => (0..v.len()).filter(|&i| is_braid_site(v, i)).collect(),
        2 => (0..v.len()).filter(|&i| is_swap_site(v, i)).collect(),
        _ => Vec::new(),
    };
    if !sites.is_empty() {
        let at = sites[rng.gen_range(0..sites.len())];
        return if kind == 1 {
            Perturbation::Braid { at }
        } else {
            Perturbation::Swap { at }
        };
    }
    let at = rng.gen_range(0..=v.len());
    let index = rng.gen_range(1..n);
    let letter = if rng.gen_bool(0.5) {
        ArtinLetter::pos(index)
    } else {
        ArtinLetter::neg(index)
    };
    Perturbation::Insert { at, letter }
}

/// `w` rewritten once by a relator; the result is the same braid.
pub fn relator_perturb(w: &ArtinWord, n: usize, seed: u64) -> ArtinWord {
    let p = choose_perturbation(w, n, seed);
    apply_perturbation(w, p).expect("chosen perturbation fits its word")
}

/// Uniform random Artin word of length `len` over `σ_1^{±1} .. σ_{n-1}^{±1}`.
pub fn random_artin_word<R: Rng + ?Sized>(rng: &mut R, n: usize, len: usize) -> ArtinWord {
    ArtinWord::new(
        (0..len)
            .map(|_| ArtinLetter {
                index: rng.gen_range(1..n),
                inverse: rng.gen_bool(0.5),
            })
            .collect(),
    )
}

impl fmt::Display for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.size {
            let row: Vec<String> = (0..self.size).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
