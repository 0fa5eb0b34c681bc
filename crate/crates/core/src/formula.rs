//! Canonical formula trees for a finitely-truncated infinitary propositional
//! language: atoms `a0..a(mu-1)`, negation, and set-indexed disjunction and
//! conjunction.
//!
//! Argument sets of `(or ...)` / `(and ...)` are genuine sets: duplicate-free
//! and stored sorted by the total formula order, so structural equality
//! coincides with equality of the printed canonical form.
//!
//! Surface grammar (UTF-8, s-expressions):
//!
//! ```text
//! f ::= aN | (not f) | (or f*) | (and f*) | (imp f f) | (iff f f)
//! ```
//!
//! `imp` and `iff` are parse-time sugar: `(imp p q)` becomes `(or (not p) q)`
//! and `(iff p q)` the conjunction of both implications. The kernel and the
//! evaluator only ever see the four primitives.

use crate::sexpr::{self, Sexpr};
use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

/// The ambient supply of atomic sentences: indices `0..mu`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct AtomUniverse {
    pub mu: usize,
}

impl AtomUniverse {
    pub fn new(mu: usize) -> Self {
        AtomUniverse { mu }
    }

    pub fn contains(&self, index: u32) -> bool {
        (index as usize) < self.mu
    }

    /// All atoms and negated atoms, in canonical order.
    pub fn literals(&self) -> Vec<Formula> {
        let mut lits = Vec::with_capacity(2 * self.mu);
        for i in 0..self.mu {
            lits.push(Formula::atom(i as u32));
            lits.push(Formula::neg(Formula::atom(i as u32)));
        }
        lits.sort();
        lits
    }
}

/// A duplicate-free argument set, kept sorted by the formula order.
///
/// Only constructible through [`ArgSet::new`] / `collect`, which is what
/// keeps every reachable [`Formula`] canonical. The backing store is shared,
/// so cloning a formula is cheap.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ArgSet(Arc<Vec<Formula>>);

impl ArgSet {
    pub fn new(mut items: Vec<Formula>) -> Self {
        items.sort_by_cached_key(|f| f.canonical());
        items.dedup();
        ArgSet(Arc::new(items))
    }

    /// Caller guarantees the items are already sorted by the formula order
    /// and duplicate-free.
    pub(crate) fn from_sorted_unchecked(items: Vec<Formula>) -> Self {
        ArgSet(Arc::new(items))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Formula> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[Formula] {
        &self.0
    }

    pub fn contains(&self, f: &Formula) -> bool {
        self.0.binary_search_by(|x| x.cmp(f)).is_ok()
    }
}

impl Default for ArgSet {
    fn default() -> Self {
        ArgSet(Arc::new(Vec::new()))
    }
}

impl FromIterator<Formula> for ArgSet {
    fn from_iter<T: IntoIterator<Item = Formula>>(iter: T) -> Self {
        ArgSet::new(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a ArgSet {
    type Item = &'a Formula;
    type IntoIter = std::slice::Iter<'a, Formula>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// A canonical formula tree. Subtrees are shared, so `clone` is cheap.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom(u32),
    Neg(Arc<Formula>),
    BigOr(ArgSet),
    BigAnd(ArgSet),
}

impl Formula {
    pub fn atom(index: u32) -> Formula {
        Formula::Atom(index)
    }

    pub fn neg(f: Formula) -> Formula {
        Formula::Neg(Arc::new(f))
    }

    pub fn big_or<I: IntoIterator<Item = Formula>>(args: I) -> Formula {
        Formula::BigOr(args.into_iter().collect())
    }

    pub fn big_and<I: IntoIterator<Item = Formula>>(args: I) -> Formula {
        Formula::BigAnd(args.into_iter().collect())
    }

    /// `p -> q`, desugared to `(or (not p) q)`.
    pub fn imp(p: Formula, q: Formula) -> Formula {
        Formula::big_or([Formula::neg(p), q])
    }

    /// `p <-> q`, desugared to the conjunction of both implications.
    pub fn iff(p: Formula, q: Formula) -> Formula {
        Formula::big_and([Formula::imp(p.clone(), q.clone()), Formula::imp(q, p)])
    }

    /// Largest atom index occurring in the formula, if any.
    pub fn max_atom(&self) -> Option<u32> {
        match self {
            Formula::Atom(i) => Some(*i),
            Formula::Neg(f) => f.max_atom(),
            Formula::BigOr(args) | Formula::BigAnd(args) => {
                args.iter().filter_map(|f| f.max_atom()).max()
            }
        }
    }

    pub fn fits(&self, u: AtomUniverse) -> bool {
        self.max_atom().map_or(true, |i| u.contains(i))
    }

    /// Number of tree nodes; handy for size-bounded sampling.
    pub fn node_count(&self) -> usize {
        match self {
            Formula::Atom(_) => 1,
            Formula::Neg(f) => 1 + f.node_count(),
            Formula::BigOr(args) | Formula::BigAnd(args) => {
                1 + args.iter().map(|f| f.node_count()).sum::<usize>()
            }
        }
    }

    /// The canonical text, built without going through the formatter.
    pub fn canonical(&self) -> String {
        let mut out = String::with_capacity(16);
        self.push_canonical(&mut out);
        out
    }

    fn push_canonical(&self, out: &mut String) {
        match self {
            Formula::Atom(i) => {
                out.push('a');
                push_decimal(*i, out);
            }
            Formula::Neg(f) => {
                out.push_str("(not ");
                f.push_canonical(out);
                out.push(')');
            }
            Formula::BigOr(args) => {
                out.push_str("(or");
                for a in args {
                    out.push(' ');
                    a.push_canonical(out);
                }
                out.push(')');
            }
            Formula::BigAnd(args) => {
                out.push_str("(and");
                for a in args {
                    out.push(' ');
                    a.push_canonical(out);
                }
                out.push(')');
            }
        }
    }
}

fn push_decimal(mut n: u32, out: &mut String) {
    let mut buf = [0u8; 10];
    let mut k = 0;
    loop {
        buf[k] = b'0' + (n % 10) as u8;
        n /= 10;
        k += 1;
        if n == 0 {
            break;
        }
    }
    while k > 0 {
        k -= 1;
        out.push(buf[k] as char);
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical())
    }
}

impl Ord for Formula {
    /// Total order: byte-lexicographic comparison of canonical serializations.
    /// Every "least element" choice elsewhere in the crate bottoms out here.
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        self.canonical().cmp(&other.canonical())
    }
}

impl PartialOrd for Formula {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl serde::Serialize for Formula {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// The exported comparison operation; identical to `Ord`.
pub fn compare(a: &Formula, b: &Formula) -> Ordering {
    a.cmp(b)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("atom index {index} at byte {pos} out of range: universe has mu = {mu}")]
    AtomOutOfRange { pos: usize, index: u32, mu: usize },
}

impl From<sexpr::SyntaxError> for ParseError {
    fn from(e: sexpr::SyntaxError) -> Self {
        ParseError::Syntax { pos: e.pos, msg: e.msg }
    }
}

fn syntax(pos: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax { pos, msg: msg.into() }
}

/// Parses one formula in the surface grammar and returns its canonical form.
pub fn parse_formula(text: &str, u: AtomUniverse) -> Result<Formula, ParseError> {
    let e = sexpr::parse_one(text)?;
    formula_from_sexpr(&e, u)
}

pub(crate) fn formula_from_sexpr(e: &Sexpr, u: AtomUniverse) -> Result<Formula, ParseError> {
    match e {
        Sexpr::Sym(s, pos) => {
            let digits = s
                .strip_prefix('a')
                .ok_or_else(|| syntax(*pos, format!("expected an atom like a0, found `{s}`")))?;
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(syntax(*pos, format!("expected an atom like a0, found `{s}`")));
            }
            let index: u32 = digits
                .parse()
                .map_err(|_| syntax(*pos, format!("atom index too large in `{s}`")))?;
            if !u.contains(index) {
                return Err(ParseError::AtomOutOfRange { pos: *pos, index, mu: u.mu });
            }
            Ok(Formula::Atom(index))
        }
        Sexpr::List(items, pos) => {
            let head = match items.first() {
                Some(Sexpr::Sym(s, _)) => s.as_str(),
                Some(other) => {
                    return Err(syntax(other.pos(), "expected an operator symbol"));
                }
                None => return Err(syntax(*pos, "empty list; expected an operator")),
            };
            let args: Vec<Formula> = items[1..]
                .iter()
                .map(|it| formula_from_sexpr(it, u))
                .collect::<Result<_, _>>()?;
            match head {
                "not" => {
                    if args.len() != 1 {
                        return Err(syntax(*pos, format!("`not` takes 1 argument, got {}", args.len())));
                    }
                    Ok(Formula::neg(args.into_iter().next().unwrap()))
                }
                "or" => Ok(Formula::big_or(args)),
                "and" => Ok(Formula::big_and(args)),
                "imp" => {
                    if args.len() != 2 {
                        return Err(syntax(*pos, format!("`imp` takes 2 arguments, got {}", args.len())));
                    }
                    let mut it = args.into_iter();
                    let p = it.next().unwrap();
                    let q = it.next().unwrap();
                    Ok(Formula::imp(p, q))
                }
                "iff" => {
                    if args.len() != 2 {
                        return Err(syntax(*pos, format!("`iff` takes 2 arguments, got {}", args.len())));
                    }
                    let mut it = args.into_iter();
                    let p = it.next().unwrap();
                    let q = it.next().unwrap();
                    Ok(Formula::iff(p, q))
                }
                other => Err(syntax(*pos, format!("unknown operator `{other}`"))),
            }
        }
    }
}

/// Canonical text for a formula. The inverse of [`parse_formula`] on every
/// canonical tree.
pub fn print_formula(f: &Formula) -> String {
    f.to_string()
}

/// Parses a formula file: one formula per line, `#` starts a comment line,
/// blank lines ignored.
pub fn parse_formula_file(text: &str, u: AtomUniverse) -> Result<Vec<Formula>, ParseError> {
    let mut out = Vec::new();
    let mut offset = 0usize;
    for line in text.split('\n') {
        let trimmed = line.trim();
        if !trimmed.is_empty() && !trimmed.starts_with('#') {
            let f = parse_formula(trimmed, u).map_err(|e| shift_error(e, offset + leading_ws(line)))?;
            out.push(f);
        }
        offset += line.len() + 1;
    }
    Ok(out)
}

fn leading_ws(line: &str) -> usize {
    line.len() - line.trim_start().len()
}

fn shift_error(e: ParseError, by: usize) -> ParseError {
    match e {
        ParseError::Syntax { pos, msg } => ParseError::Syntax { pos: pos + by, msg },
        ParseError::AtomOutOfRange { pos, index, mu } => {
            ParseError::AtomOutOfRange { pos: pos + by, index, mu }
        }
    }
}

/// Which literals seed a generated fragment.
#[derive(Debug, Clone)]
pub enum LiteralSeed {
    /// All atoms and negated atoms of the universe.
    AllLiterals,
    Explicit(Vec<Formula>),
}

/// One closure step. Steps run in list order within a round, and each step
/// sees everything accumulated so far, so `[BigOr, BigAnd, Neg]` ends a round
/// with complements of the disjunctions and conjunctions it just formed.
#[derive(Debug, Clone)]
pub enum ClosureOp {
    /// Adds `(not f)` for every accumulated `f` that is not itself a
    /// negation. Double negations are never generated.
    Neg,
    BigOr { min_arity: usize, max_arity: usize },
    BigAnd { min_arity: usize, max_arity: usize },
}

#[derive(Debug, Clone)]
pub struct FragmentSpec {
    pub seed: LiteralSeed,
    pub closure_ops: Vec<ClosureOp>,
    /// Number of closure rounds.
    pub depth_cap: usize,
    /// Hard bound on fragment cardinality; hitting it sets the truncation
    /// flag rather than failing.
    pub size_cap: usize,
}

/// A generated fragment: formulas sorted by [`compare`], plus a flag saying
/// whether caps cut the closure short.
#[derive(Debug, Clone)]
pub struct Fragment {
    pub formulas: Vec<Formula>,
    pub truncated: bool,
}

impl Fragment {
    pub fn contains(&self, f: &Formula) -> bool {
        self.formulas.binary_search_by(|x| x.cmp(f)).is_ok()
    }

    pub fn index_of(&self, f: &Formula) -> Option<usize> {
        self.formulas.binary_search_by(|x| x.cmp(f)).ok()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FragmentError {
    #[error("size cap {size_cap} is below the seed size {seed_len}")]
    SizeCapBelowSeed { size_cap: usize, seed_len: usize },
    #[error("seed formula `{formula}` uses an atom outside mu = {mu}")]
    SeedOutOfRange { formula: String, mu: usize },
}

/// Deterministically generates the closure of the seed under the requested
/// operations, up to the caps.
///
/// Candidates of each step are enumerated in a fixed order (arity, then
/// positionally over the sorted accumulated set) and appended until the size
/// cap; a cut, or a final set one more round would still grow, sets
/// `truncated`.
pub fn generate_fragment(spec: &FragmentSpec, u: AtomUniverse) -> Result<Fragment, FragmentError> {
    let seed: Vec<Formula> = match &spec.seed {
        LiteralSeed::AllLiterals => u.literals(),
        LiteralSeed::Explicit(fs) => {
            for f in fs {
                if !f.fits(u) {
                    return Err(FragmentError::SeedOutOfRange { formula: f.to_string(), mu: u.mu });
                }
            }
            fs.clone()
        }
    };
    let mut set: BTreeSet<Formula> = seed.into_iter().collect();
    if spec.size_cap < set.len() {
        return Err(FragmentError::SizeCapBelowSeed { size_cap: spec.size_cap, seed_len: set.len() });
    }

    let mut truncated = false;
    'rounds: for _ in 0..spec.depth_cap {
        for op in &spec.closure_ops {
            let room = spec.size_cap - set.len();
            let (new, more) = step_candidates(op, &set, room);
            if more {
                truncated = true;
            }
            set.extend(new);
            if truncated {
                break 'rounds;
            }
        }
    }

    if !truncated {
        // Closed, or would one more round still grow the set?
        'probe: for op in &spec.closure_ops {
            let (new, more) = step_candidates(op, &set, 1);
            if more || !new.is_empty() {
                truncated = true;
                break 'probe;
            }
        }
    }

    Ok(Fragment { formulas: set.into_iter().collect(), truncated })
}

/// Collects up to `room` new formulas for one step. The second component is
/// true when at least one further candidate existed beyond `room`.
fn step_candidates(op: &ClosureOp, set: &BTreeSet<Formula>, room: usize) -> (Vec<Formula>, bool) {
    let base: Vec<&Formula> = set.iter().collect();
    let mut out = Vec::new();
    let mut push = |f: Formula| -> bool {
        if !set.contains(&f) && !out.contains(&f) {
            if out.len() == room {
                return true;
            }
            out.push(f);
        }
        false
    };
    let more = match op {
        ClosureOp::Neg => {
            let mut cut = false;
            for f in &base {
                if !matches!(f, Formula::Neg(_)) && push(Formula::neg((*f).clone())) {
                    cut = true;
                    break;
                }
            }
            cut
        }
        ClosureOp::BigOr { min_arity, max_arity } => {
            combinations_until(&base, *min_arity, *max_arity, |chosen| {
                push(Formula::big_or(chosen.iter().map(|f| (*f).clone())))
            })
        }
        ClosureOp::BigAnd { min_arity, max_arity } => {
            combinations_until(&base, *min_arity, *max_arity, |chosen| {
                push(Formula::big_and(chosen.iter().map(|f| (*f).clone())))
            })
        }
    };
    (out, more)
}

/// Drives `visit` over all k-combinations of `base` for k in
/// `min_arity..=max_arity`, in (arity, position) order, stopping early when
/// `visit` reports the room is gone. Returns whether it stopped early.
fn combinations_until(
    base: &[&Formula],
    min_arity: usize,
    max_arity: usize,
    mut visit: impl FnMut(&[&Formula]) -> bool,
) -> bool {
    let n = base.len();
    for k in min_arity..=max_arity.min(n) {
        if k == 0 {
            if visit(&[]) {
                return true;
            }
            continue;
        }
        let mut idx: Vec<usize> = (0..k).collect();
        'combos: loop {
            let chosen: Vec<&Formula> = idx.iter().map(|&i| base[i]).collect();
            if visit(&chosen) {
                return true;
            }
            let mut i = k;
            loop {
                if i == 0 {
                    break 'combos;
                }
                i -= 1;
                if idx[i] < i + n - k {
                    idx[i] += 1;
                    for j in i + 1..k {
                        idx[j] = idx[j - 1] + 1;
                    }
                    continue 'combos;
                }
            }
        }
    }
    false
}
