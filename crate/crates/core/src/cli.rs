//! Presentation text format and the `gsb` command line.
//!
//! A presentation file is a list of `;`-separated items, one or more per
//! line; `#` starts a comment. Header items come first:
//!
//! ```text
//! letters: x > y            # descending rank
//! inv(a, b)                 # a and b are mutually inverse
//! level(x) = 2              # level used by S<k> / L<k> / sigma selectors
//! order: deglex
//! ```
//!
//! then one relation per line, `[(family)] LHS = RHS`, where words use `.`
//! for concatenation and `1` for the empty word, and the right-hand side is
//! a sum of terms `c*word` joined by ` + ` / ` - `.
//!
//! Order grammar:
//!
//! ```text
//! order := base [ "(" sel ")" ] | "tower" "(" order ("," sel)+ ")"
//! base  := deglex | inlex | deginlex
//! sel   := all | sigma | L<k> | S<k>
//! ```
//!
//! `sigma` is level 1; `L<k>` and `S<k>` both select level `k`.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use serde::Serialize;
use thiserror::Error;

use crate::braid::{artin_markov_for, braid_scheme, BraidError, BraidScheme};
use crate::freealg::{Alphabet, Polynomial, Word};
use crate::gsb::{
    check_all, complete, enumerate_irr, verify_gsb, FailureReason, FamilyScope, GsbError, VerifyOptions,
};
use crate::orders::{OrderSpec, Ranking};
use crate::reduction::{
    normal_form, split_word_nf, word_nf, OrientedRelation, Presentation, ReductionError, DEFAULT_FUEL,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("relation {index} (line {line}): left-hand side is not the leading word")]
    Orientation { index: usize, line: usize },
}

fn perr(line: usize, reason: impl Into<String>) -> PresentationError {
    PresentationError::Parse {
        line,
        reason: reason.into(),
    }
}

/// Parses an order spec against `alphabet`.
pub fn parse_order(text: &str, alphabet: &Alphabet) -> Result<OrderSpec, String> {
    let mut p = OrderParser {
        s: text.as_bytes(),
        pos: 0,
        alphabet,
    };
    let o = p.order()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(format!("unexpected `{}` in order", &text[p.pos..]));
    }
    Ok(o)
}

struct OrderParser<'a> {
    s: &'a [u8],
    pos: usize,
    alphabet: &'a Alphabet,
}

impl OrderParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn ident(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_alphanumeric() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.s[start..self.pos]).into_owned()
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.s.get(self.pos) == Some(&c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), String> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(format!("expected `{}` in order", c as char))
        }
    }

    fn selector(&mut self) -> Result<Ranking, String> {
        let id = self.ident();
        let level = |k: &str| k.parse::<u32>().map_err(|_| format!("bad level selector `{id}`"));
        match id.as_str() {
            "all" => Ok(Ranking::all(self.alphabet)),
            "sigma" => Ok(Ranking::level(self.alphabet, 1)),
            s if s.starts_with('L') || s.starts_with('S') => Ok(Ranking::level(self.alphabet, level(&s[1..])?)),
            _ => Err(format!("unknown letter selector `{id}`")),
        }
    }

    fn order(&mut self) -> Result<OrderSpec, String> {
        let id = self.ident();
        match id.as_str() {
            "deglex" | "inlex" | "deginlex" => {
                let r = if self.eat(b'(') {
                    let r = self.selector()?;
                    self.expect(b')')?;
                    r
                } else {
                    Ranking::all(self.alphabet)
                };
                Ok(match id.as_str() {
                    "deglex" => OrderSpec::DegLex(r),
                    "inlex" => OrderSpec::InLex(r),
                    _ => OrderSpec::DegInLex(r),
                })
            }
            "tower" => {
                self.expect(b'(')?;
                let mut o = self.order()?;
                self.expect(b',')?;
                loop {
                    let top = self.selector()?;
                    o = OrderSpec::tower(o, top).map_err(|e| e.to_string())?;
                    if !self.eat(b',') {
                        break;
                    }
                }
                self.expect(b')')?;
                Ok(o)
            }
            "" => Err("expected an order".to_string()),
            _ => Err(format!("unknown order `{id}`")),
        }
    }
}

fn parse_word_strict(text: &str, alphabet: &Alphabet) -> Result<Word, String> {
    let text = text.trim();
    if text == "1" {
        return Ok(Word::empty());
    }
    let mut letters = Vec::new();
    for name in text.split('.') {
        let l = alphabet
            .letter(name.trim())
            .ok_or_else(|| format!("unknown letter `{}`", name.trim()))?;
        letters.push(l);
    }
    Ok(Word::from_letters(letters).expect("letters come from one alphabet"))
}

/// Parses `c1*w1 + c2*w2 - ...`; `0` is the zero polynomial.
pub fn parse_polynomial(text: &str, alphabet: &Alphabet) -> Result<Polynomial, String> {
    let mut poly = Polynomial::zero();
    if text.trim() == "0" {
        return Ok(poly);
    }
    let mut sign: Option<i32> = Some(1);
    let mut terms = 0;
    for tok in text.split_whitespace() {
        match tok {
            "+" | "-" => {
                if sign.is_some() && terms > 0 {
                    return Err("two signs in a row".to_string());
                }
                sign = Some(if tok == "-" { -1 } else { 1 });
                continue;
            }
            _ => {}
        }
        let mut s = sign.take().ok_or_else(|| format!("missing `+` or `-` before `{tok}`"))?;
        let mut body = tok;
        if let Some(rest) = body.strip_prefix('-') {
            s = -s;
            body = rest;
        }
        let (coeff, word) = match body.split_once('*') {
            Some((c, w)) => (
                c.parse::<BigRational>().map_err(|_| format!("bad coefficient `{c}`"))?,
                w,
            ),
            None => (BigRational::from_integer(1.into()), body),
        };
        let coeff = if s < 0 { -coeff } else { coeff };
        poly.add_term(parse_word_strict(word, alphabet)?, coeff);
        terms += 1;
    }
    if terms == 0 || sign.is_some() {
        return Err("incomplete polynomial".to_string());
    }
    Ok(poly)
}

/// Parses a presentation document; see the module docs for the format.
pub fn parse_presentation(text: &str) -> Result<Presentation, PresentationError> {
    let mut letters: Option<(Vec<String>, usize)> = None;
    let mut pairs: Vec<(String, String, usize)> = Vec::new();
    let mut levels: Vec<(String, u32, usize)> = Vec::new();
    let mut alphabet: Option<Arc<Alphabet>> = None;
    let mut order: Option<OrderSpec> = None;
    let mut rels: Vec<OrientedRelation> = Vec::new();
    let mut rel_lines: Vec<usize> = Vec::new();

    for (ln, raw) in text.lines().enumerate() {
        let ln = ln + 1;
        let line = raw.split('#').next().unwrap_or("");
        for item in line.split(';').map(str::trim).filter(|s| !s.is_empty()) {
            if let Some(rest) = item.strip_prefix("letters:") {
                if letters.is_some() {
                    return Err(perr(ln, "letters declared twice"));
                }
                let names: Vec<String> = rest.split('>').map(|s| s.trim().to_string()).collect();
                letters = Some((names, ln));
            } else if let Some(rest) = item.strip_prefix("inv(") {
                let inner = rest.strip_suffix(')').ok_or_else(|| perr(ln, "unclosed inv("))?;
                let (a, b) = inner.split_once(',').ok_or_else(|| perr(ln, "inv needs two letters"))?;
                pairs.push((a.trim().to_string(), b.trim().to_string(), ln));
            } else if let Some(rest) = item.strip_prefix("level(") {
                let (name, k) = rest.split_once(')').ok_or_else(|| perr(ln, "unclosed level("))?;
                let k = k.trim().strip_prefix('=').ok_or_else(|| perr(ln, "expected `=` after level(..)"))?;
                let k: u32 = k.trim().parse().map_err(|_| perr(ln, format!("bad level `{}`", k.trim())))?;
                levels.push((name.trim().to_string(), k, ln));
            } else if let Some(rest) = item.strip_prefix("order:") {
                let a = match &alphabet {
                    Some(a) => a.clone(),
                    None => {
                        let a = build_alphabet(&letters, &pairs, &levels, ln)?;
                        alphabet = Some(a.clone());
                        a
                    }
                };
                let o = parse_order(rest.trim(), &a).map_err(|e| perr(ln, e))?;
                o.covers(&a).map_err(|e| perr(ln, e.to_string()))?;
                order = Some(o);
            } else {
                let a = alphabet
                    .as_ref()
                    .filter(|_| order.is_some())
                    .ok_or_else(|| perr(ln, "relation before `letters:` and `order:`"))?;
                let (family, body) = split_family(item).map_err(|e| perr(ln, e))?;
                let (lhs, rhs) = body.split_once('=').ok_or_else(|| perr(ln, "expected `LHS = RHS`"))?;
                let lhs = parse_word_strict(lhs, a).map_err(|e| perr(ln, e))?;
                let rhs = parse_polynomial(rhs, a).map_err(|e| perr(ln, e))?;
                rels.push(OrientedRelation { lhs, rhs, family });
                rel_lines.push(ln);
            }
        }
    }

    let last = text.lines().count().max(1);
    let alphabet = match alphabet {
        Some(a) => a,
        None => build_alphabet(&letters, &pairs, &levels, last)?,
    };
    let order = order.ok_or_else(|| perr(last, "missing `order:`"))?;
    Presentation::from_oriented(alphabet, order, rels).map_err(|e| match e {
        ReductionError::Orientation { index } => PresentationError::Orientation {
            index,
            line: rel_lines[index],
        },
        e => perr(last, e.to_string()),
    })
}

fn split_family(item: &str) -> Result<(Option<u8>, &str), String> {
    match item.strip_prefix('(') {
        Some(rest) => {
            let (num, body) = rest.split_once(')').ok_or("unclosed family label")?;
            let f = num.trim().parse::<u8>().map_err(|_| format!("bad family label `{num}`"))?;
            Ok((Some(f), body))
        }
        None => Ok((None, item)),
    }
}

fn build_alphabet(
    letters: &Option<(Vec<String>, usize)>,
    pairs: &[(String, String, usize)],
    levels: &[(String, u32, usize)],
    line: usize,
) -> Result<Arc<Alphabet>, PresentationError> {
    let (names, ln) = letters.as_ref().ok_or_else(|| perr(line, "missing `letters:`"))?;
    let mut b = Alphabet::builder();
    for name in names.iter().rev() {
        b = b.letter(name, 0).map_err(|e| perr(*ln, e.to_string()))?;
    }
    for (name, k, ln) in levels {
        b = b.set_level(name, *k).map_err(|e| perr(*ln, e.to_string()))?;
    }
    for (a, c, _) in pairs {
        b = b.inverse_pair(a, c);
    }
    let first_pair = pairs.first().map_or(*ln, |p| p.2);
    b.build().map(Arc::new).map_err(|e| perr(first_pair, e.to_string()))
}

/// Writes `s` in the format read by [`parse_presentation`], after the
/// given comment lines.
pub fn dump_presentation(s: &Presentation, comments: &[String]) -> String {
    let a = s.alphabet();
    let mut out = String::new();
    for c in comments {
        out.push_str(&format!("# {c}\n"));
    }
    let desc: Vec<&str> = a.letters().rev().map(|l| a.name(l)).collect();
    out.push_str(&format!("letters: {}\n", desc.join(" > ")));
    let invs: Vec<String> = a
        .letters()
        .filter_map(|l| {
            let p = a.partner(l)?;
            (l.index() <= p.index()).then(|| format!("inv({}, {})", a.name(l), a.name(p)))
        })
        .collect();
    if !invs.is_empty() {
        out.push_str(&invs.join("; "));
        out.push('\n');
    }
    let lvls: Vec<String> = a
        .letters()
        .filter(|&l| a.level(l) != 0)
        .map(|l| format!("level({})={}", a.name(l), a.level(l)))
        .collect();
    if !lvls.is_empty() {
        out.push_str(&lvls.join("; "));
        out.push('\n');
    }
    out.push_str(&format!("order: {}\n", s.order()));
    for r in s.relations() {
        if let Some(f) = r.family() {
            out.push_str(&format!("({f}) "));
        }
        out.push_str(&format!(
            "{} = {}\n",
            a.render_word(r.leading(), "."),
            a.render_poly(r.replacement(), ".")
        ));
    }
    out
}

/// Comment header written by `dump-presentation --n`.
pub fn braid_header(scheme: &BraidScheme) -> Vec<String> {
    vec![
        format!("Artin-Markov presentation of B_{}", scheme.n()),
        format!("n = {}", scheme.n()),
        format!("order: {}", scheme.order()),
    ]
}

#[derive(Debug, Parser)]
#[command(name = "gsb", version, about = "Gröbner-Shirshov bases and braid group normal forms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that every composition is trivial.
    VerifyGsb(Common),
    /// Print the normal form of a word.
    Nf {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        word: String,
    },
    /// List every composition with its reduction outcome.
    Compositions(Common),
    /// Run completion, adding relations until all compositions are trivial.
    Complete {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 100)]
        max_new: usize,
    },
    /// List irreducible words up to a length.
    Irr {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 3)]
        max_len: usize,
    },
    /// Print a presentation in the text format.
    DumpPresentation(Common),
}

#[derive(Debug, Args)]
pub struct Common {
    /// Braid group B_n with the Artin-Markov relations.
    #[arg(long, conflicts_with = "presentation", required_unless_present = "presentation")]
    pub n: Option<usize>,
    /// Presentation file.
    #[arg(long)]
    pub presentation: Option<PathBuf>,
    /// Override the monomial order.
    #[arg(long)]
    pub order: Option<String>,
    #[arg(long, default_value_t = DEFAULT_FUEL)]
    pub fuel: usize,
    /// Worker threads (0 = all cores).
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Restrict to compositions of family i (left) with family j (right): "i,j".
    #[arg(long, value_parser = parse_scope)]
    pub scope: Option<FamilyScope>,
    #[arg(long)]
    pub json: bool,
}

fn parse_scope(s: &str) -> Result<FamilyScope, String> {
    let (a, b) = s.split_once(',').ok_or("scope must be \"i,j\"")?;
    let f = |t: &str| {
        t.trim()
            .trim_matches(|c| c == '(' || c == ')')
            .parse::<u8>()
            .map_err(|_| format!("bad family `{t}`"))
    };
    Ok((f(a)?, f(b)?))
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_FUEL: i32 = 3;

struct Loaded {
    presentation: Presentation,
    scheme: Option<BraidScheme>,
    comments: Vec<String>,
}

fn load(c: &Common) -> Result<Loaded, String> {
    let mut loaded = match (c.n, &c.presentation) {
        (Some(n), None) => {
            if n < 2 {
                return Err("--n must be at least 2".to_string());
            }
            let scheme = braid_scheme(n);
            Loaded {
                presentation: artin_markov_for(&scheme),
                comments: braid_header(&scheme),
                scheme: Some(scheme),
            }
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            let presentation = parse_presentation(&text).map_err(|e| format!("{}: {e}", path.display()))?;
            Loaded {
                presentation,
                scheme: None,
                comments: Vec::new(),
            }
        }
        _ => return Err("exactly one of --n and --presentation is required".to_string()),
    };
    if let Some(spec) = &c.order {
        let o = parse_order(spec, loaded.presentation.alphabet())?;
        o.covers(loaded.presentation.alphabet()).map_err(|e| e.to_string())?;
        loaded.presentation = loaded.presentation.reoriented(o).map_err(|e| e.to_string())?;
        loaded.scheme = None;
        loaded.comments.push(format!("reoriented to {spec}"));
    }
    Ok(loaded)
}

#[derive(Serialize)]
struct CompositionJson {
    kind: crate::gsb::AmbiguityKind,
    left: usize,
    right: usize,
    left_family: u8,
    right_family: u8,
    w: String,
    composition: String,
    trivial: bool,
    remainder: String,
    reason: Option<FailureReason>,
}

#[derive(Serialize)]
struct CompositionsJson {
    pairs_checked: usize,
    ambiguities_checked: usize,
    compositions: Vec<CompositionJson>,
}

#[derive(Serialize)]
struct NfJson {
    word: String,
    normal_form: String,
    /// Rewrite count; reported for non-binomial presentations only.
    #[serde(skip_serializing_if = "Option::is_none")]
    steps: Option<usize>,
}

#[derive(Serialize)]
struct CompletionJson {
    compositions_checked: usize,
    added: Vec<AddedJson>,
    converged: bool,
}

#[derive(Serialize)]
struct AddedJson {
    left: usize,
    right: usize,
    w: String,
    relation: String,
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("report serializes")
}

/// Parses `args` (including the program name) and runs one command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(&cli.command, out) {
        Ok(code) => code,
        Err((code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

type Outcome = Result<i32, (i32, String)>;

fn usage(msg: impl Into<String>) -> (i32, String) {
    (EXIT_USAGE, msg.into())
}

fn common(cmd: &Command) -> &Common {
    match cmd {
        Command::VerifyGsb(c) | Command::Compositions(c) | Command::DumpPresentation(c) => c,
        Command::Nf { common, .. } | Command::Complete { common, .. } | Command::Irr { common, .. } => common,
    }
}

fn dispatch(cmd: &Command, out: &mut dyn Write) -> Outcome {
    let c = common(cmd);
    let loaded = load(c).map_err(usage)?;
    let s = &loaded.presentation;
    let a = s.alphabet();
    let opts = VerifyOptions {
        fuel: c.fuel,
        scope: c.scope,
        jobs: c.jobs,
    };
    let mut text = String::new();
    let code = match cmd {
        Command::VerifyGsb(_) => {
            let report = verify_gsb(s, &opts);
            if c.json {
                text = json(&report.to_json(a));
            } else {
                let fam = |k: usize| s.relations()[k].family().unwrap_or(0);
                for f in &report.failures {
                    text.push_str(&format!(
                        "FAIL {:?} ({})∧({}) rel {} ∧ rel {} w = {}: {}\n",
                        f.reason,
                        fam(f.ambiguity.left_rel),
                        fam(f.ambiguity.right_rel),
                        f.ambiguity.left_rel,
                        f.ambiguity.right_rel,
                        a.render_word(&f.ambiguity.w, " "),
                        a.render_poly(&f.remainder, " ")
                    ));
                }
                text.push_str(&report.summary());
            }
            if report.failures.iter().any(|f| f.reason == FailureReason::FuelExhausted) {
                EXIT_FUEL
            } else if report.passed() {
                EXIT_OK
            } else {
                EXIT_FAILED
            }
        }
        Command::Compositions(_) => {
            let (pairs, outcomes) = check_all(s, &opts);
            let fam = |k: usize| s.relations()[k].family().unwrap_or(0);
            let rows: Vec<CompositionJson> = outcomes
                .iter()
                .map(|o| CompositionJson {
                    kind: o.ambiguity.kind,
                    left: o.ambiguity.left_rel,
                    right: o.ambiguity.right_rel,
                    left_family: fam(o.ambiguity.left_rel),
                    right_family: fam(o.ambiguity.right_rel),
                    w: a.render_word(&o.ambiguity.w, "."),
                    composition: a.render_poly(&o.composition, "."),
                    trivial: o.trivial,
                    remainder: a.render_poly(&o.trace.result, "."),
                    reason: o.reason,
                })
                .collect();
            let bad = rows.iter().filter(|r| !r.trivial).count();
            let fuel = rows.iter().any(|r| r.reason == Some(FailureReason::FuelExhausted));
            if c.json {
                text = json(&CompositionsJson {
                    pairs_checked: pairs,
                    ambiguities_checked: rows.len(),
                    compositions: rows,
                });
            } else {
                for r in &rows {
                    text.push_str(&format!(
                        "({})∧({}) {:?} rel {} ∧ rel {} w = {}: {} -> {}\n",
                        r.left_family,
                        r.right_family,
                        r.kind,
                        r.left,
                        r.right,
                        r.w,
                        r.composition,
                        if r.trivial { "0".to_string() } else { r.remainder.clone() }
                    ));
                }
                text.push_str(&format!("ambiguities checked: {}, failures: {bad}", rows.len()));
            }
            if fuel {
                EXIT_FUEL
            } else if bad > 0 {
                EXIT_FAILED
            } else {
                EXIT_OK
            }
        }
        Command::Nf { word, .. } => {
            let w = match &loaded.scheme {
                Some(sc) => sc.parse_word(word).map_err(|e: BraidError| usage(e.to_string()))?,
                None => a.parse_word(word).map_err(|e| usage(e.to_string()))?,
            };
            let result = if loaded.scheme.is_some() && c.order.is_none() {
                split_word_nf(&w, s, c.fuel).map(|nf| (Polynomial::from_word(nf), None))
            } else if s.is_binomial() {
                word_nf(&w, s, c.fuel).map(|nf| (Polynomial::from_word(nf), None))
            } else {
                normal_form(&Polynomial::from_word(w.clone()), s, c.fuel).map(|(nf, t)| (nf, Some(t.steps.len())))
            };
            match result {
                Ok((nf, steps)) => {
                    let rendered = a.render_poly(&nf, " ");
                    text = if c.json {
                        json(&NfJson {
                            word: a.render_word(&w, " "),
                            normal_form: rendered,
                            steps,
                        })
                    } else {
                        rendered
                    };
                    EXIT_OK
                }
                Err(ReductionError::FuelExhausted(t)) => {
                    return Err((EXIT_FUEL, format!("fuel exhausted after {} steps", t.fuel_used)))
                }
                Err(e) => return Err(usage(e.to_string())),
            }
        }
        Command::Complete { max_new, .. } => {
            let (result, log, converged) = match complete(s, *max_new, c.fuel) {
                Ok((p, log)) => (p, log, true),
                Err(GsbError::Diverged { partial, log, .. }) => (*partial, log, false),
                Err(GsbError::Reduction(ReductionError::FuelExhausted(_))) => {
                    return Err((EXIT_FUEL, "fuel exhausted during completion".to_string()))
                }
                Err(e) => return Err((EXIT_FAILED, e.to_string())),
            };
            let ra = result.alphabet();
            let added: Vec<AddedJson> = log
                .entries
                .iter()
                .map(|e| AddedJson {
                    left: e.ambiguity.left_rel,
                    right: e.ambiguity.right_rel,
                    w: ra.render_word(&e.ambiguity.w, "."),
                    relation: ra.render_poly(&e.added, "."),
                })
                .collect();
            if c.json {
                text = json(&CompletionJson {
                    compositions_checked: log.compositions_checked,
                    added,
                    converged,
                });
            } else {
                for e in &added {
                    text.push_str(&format!(
                        "added {} (from rel {} ∧ rel {} at {})\n",
                        e.relation, e.left, e.right, e.w
                    ));
                }
                text.push_str(&format!(
                    "{} after {} compositions, {} relations added\n",
                    if converged { "converged" } else { "stopped" },
                    log.compositions_checked,
                    log.entries.len()
                ));
                text.push_str(&dump_presentation(&result, &loaded.comments));
            }
            if converged {
                EXIT_OK
            } else {
                EXIT_FAILED
            }
        }
        Command::Irr { max_len, .. } => {
            let words: Vec<String> = enumerate_irr(s, *max_len).iter().map(|w| a.render_word(w, " ")).collect();
            text = if c.json { json(&words) } else { words.join("\n") };
            EXIT_OK
        }
        Command::DumpPresentation(_) => {
            text = dump_presentation(s, &loaded.comments);
            EXIT_OK
        }
    };
    let text = text.trim_end();
    writeln!(out, "{text}").map_err(|e| (EXIT_FAILED, e.to_string()))?;
    Ok(code)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::artin_markov;

    #[test]
    fn small_document() {
        let p = parse_presentation("letters: x > y; order: deglex\nx.x = y.x\n").unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p.alphabet().render_word(p.relations()[0].leading(), ""), "xx");
    }

    #[test]
    fn undeclared_letter() {
        let e = parse_presentation("letters: x > y; order: deglex\nx.x = z.x\n").unwrap_err();
        assert!(matches!(e, PresentationError::Parse { line: 2, .. }), "{e}");
    }

    #[test]
    fn misoriented_relation() {
        let e = parse_presentation("letters: x > y\norder: deglex\ny = x\n").unwrap_err();
        assert_eq!(e, PresentationError::Orientation { index: 0, line: 3 });
    }

    #[test]
    fn polynomial_terms() {
        let a = Alphabet::flat(&["y", "x"]).unwrap();
        let p = parse_polynomial("-x.y + 2*y - 1/2*1", &a).unwrap();
        assert_eq!(a.render_poly(&p, "."), "-1/2*1 + 2*y - x.y");
        assert!(parse_polynomial("x y", &a).is_err());
        assert!(parse_polynomial("x +", &a).is_err());
        assert!(parse_polynomial("0", &a).unwrap().is_zero());
    }

    #[test]
    fn order_grammar() {
        let sc = braid_scheme(4);
        let text = "tower(deginlex(S4), S3, S2, sigma)";
        let o = parse_order(text, sc.alphabet()).unwrap();
        assert_eq!(o, *sc.order());
        assert_eq!(o.to_string(), text);
        assert!(parse_order("tower(deglex)", sc.alphabet()).is_err());
        assert!(parse_order("lex", sc.alphabet()).is_err());
    }

    #[test]
    fn dump_round_trips() {
        for n in 2..=4 {
            let p = artin_markov(n);
            let text = dump_presentation(&p, &braid_header(&braid_scheme(n)));
            let back = parse_presentation(&text).unwrap();
            assert!(back.same_as(&p), "n = {n}");
        }
    }

    #[test]
    fn scope_flag() {
        assert_eq!(parse_scope("1,7"), Ok((1, 7)));
        assert_eq!(parse_scope("(14),(16)"), Ok((14, 16)));
        assert!(parse_scope("3").is_err());
    }
}
