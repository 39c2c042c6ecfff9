//! Noncommutative Gröbner–Shirshov bases over the rationals, with a braid
//! group layer built on the Artin–Burau generators.
//!
//! The crate is organized bottom-up:
//!
//! - [`freealg`]: letters, words and polynomials of the free associative algebra.
//! - [`orders`]: monomial orders (deg-lex, deg-inlex, inverse tower orders).
//! - [`reduction`]: presentations and reduction to normal form.
//! - [`gsb`]: compositions, Gröbner–Shirshov verification, minimality, completion.
//! - [`braid`]: the Artin–Burau alphabet and the Artin–Markov relations of `B_n`.
//! - [`oracles`]: permutation and Burau images, relator fuzzing.
//! - [`cli`]: presentation text format, reports and the `gsb` command line.
//!
//! Runnable walkthroughs live in the crate's `examples/` directory.

pub mod braid;
pub mod cli;
pub mod freealg;
pub mod gsb;
pub mod oracles;
pub mod orders;
pub mod reduction;

pub use braid::{artin_markov, braid_nf, braid_scheme, ArtinLetter, ArtinWord, BraidGroup, BraidScheme};
pub use freealg::{Alphabet, Coeff, FreeAlgError, Letter, Polynomial, Word};
pub use gsb::{complete, verify_gsb, verify_minimal, Ambiguity, AmbiguityKind, VerificationReport, VerifyOptions};
pub use orders::{OrderSpec, Ranking};
pub use reduction::{normal_form, word_nf, Presentation, ReductionError, DEFAULT_FUEL};
