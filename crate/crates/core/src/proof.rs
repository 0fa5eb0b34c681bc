//! Proof kernel for an axiomatic deduction system with set-indexed rules.
//!
//! Derivations are finite labeled trees. Leaves must be hypotheses or
//! recognized axiom instances; internal nodes must match one of the rules
//!
//! * modus ponens: from `p` and `p -> q` conclude `q`;
//! * disjunction elimination: from `f -> q` for every `f` in a set `F`,
//!   conclude `(or F) -> q`;
//! * conjunction introduction: from `p -> g` for every `g` in a set `G`,
//!   conclude `p -> (and G)`.
//!
//! Rule premises are matched as label *sets*, so duplicated child subtrees
//! proving the same premise are fine. The axiom recognizers are sound but
//! deliberately incomplete; the kernel never searches for proofs.

use crate::formula::{ArgSet, AtomUniverse, Formula, ParseError};
use crate::semantics::{self, SemanticsError, Theory};
use crate::sexpr::{self, Sexpr};
use serde::Serialize;
use std::collections::BTreeSet;

/// Letter budget for the tautology-instance recognizer.
const A1_LETTER_CAP: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Justification {
    Hypothesis,
    A1,
    A2,
    A3,
    A4,
    Mp,
    R1,
    R2,
}

impl Justification {
    pub fn name(self) -> &'static str {
        match self {
            Justification::Hypothesis => "hyp",
            Justification::A1 => "A1",
            Justification::A2 => "A2",
            Justification::A3 => "A3",
            Justification::A4 => "A4",
            Justification::Mp => "MP",
            Justification::R1 => "R1",
            Justification::R2 => "R2",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AxiomTag {
    A1,
    A2,
    A3,
    A4,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofTree {
    pub label: Formula,
    pub just: Justification,
    pub children: Vec<ProofTree>,
}

impl ProofTree {
    pub fn node_count(&self) -> usize {
        1 + self.children.iter().map(|c| c.node_count()).sum::<usize>()
    }
}

/// Path from the root: child indices, in order.
pub type NodePath = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckFailure {
    pub path: NodePath,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub accepted: bool,
    pub conclusion: Option<Formula>,
    pub failure: Option<CheckFailure>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProofError {
    #[error("premise shapes do not fit the rule: {0}")]
    RuleShape(String),
    #[error("`{0}` is not a recognized axiom instance")]
    NotAnAxiom(String),
}

/// All ways of reading `f` as a desugared implication `l -> r`.
///
/// An implication is a two-element disjunction whose one component is a
/// negation, except that `{(not l), r}` collapses to a singleton when
/// `r == (not l)`. Each candidate is verified by rebuilding.
fn as_implications(f: &Formula) -> Vec<(Formula, Formula)> {
    let mut out: Vec<(Formula, Formula)> = Vec::new();
    if let Formula::BigOr(args) = f {
        match args.len() {
            1 => {
                let x = &args.as_slice()[0];
                if let Formula::Neg(l) = x {
                    // l -> (not l)
                    out.push(((**l).clone(), x.clone()));
                }
            }
            2 => {
                let xs = args.as_slice();
                for (x, y) in [(&xs[0], &xs[1]), (&xs[1], &xs[0])] {
                    if let Formula::Neg(l) = x {
                        out.push(((**l).clone(), y.clone()));
                    }
                }
            }
            _ => {}
        }
    }
    out.retain(|(l, r)| &Formula::imp(l.clone(), r.clone()) == f);
    out
}

/// All ways of reading `f` as a desugared biconditional, in both
/// orientations.
fn as_iffs(f: &Formula) -> Vec<(Formula, Formula)> {
    let mut out: Vec<(Formula, Formula)> = Vec::new();
    if let Formula::BigAnd(args) = f {
        let xs = args.as_slice();
        let pairs: Vec<(&Formula, &Formula)> = match xs.len() {
            1 => vec![(&xs[0], &xs[0])],
            2 => vec![(&xs[0], &xs[1]), (&xs[1], &xs[0])],
            _ => vec![],
        };
        for (x, y) in pairs {
            for (l, r) in as_implications(x) {
                if &Formula::imp(r.clone(), l.clone()) == y {
                    out.push((l, r));
                }
            }
        }
    }
    out.retain(|(l, r)| &Formula::iff(l.clone(), r.clone()) == f);
    out
}

/// `p -> (or F)` with `p` in `F`, or `(and F) -> p` with `p` in `F`.
fn is_a2(f: &Formula) -> bool {
    as_implications(f).iter().any(|(l, r)| {
        if let Formula::BigOr(phi) = r {
            if phi.contains(l) {
                return true;
            }
        }
        if let Formula::BigAnd(phi) = l {
            if phi.contains(r) {
                return true;
            }
        }
        false
    })
}

fn neg_image(phi: &ArgSet) -> impl Iterator<Item = Formula> + '_ {
    phi.iter().map(|g| Formula::neg(g.clone()))
}

/// De Morgan: `(not (and F)) <-> (or {not f})` and its dual.
fn is_a3(f: &Formula) -> bool {
    as_iffs(f).iter().any(|(l, r)| {
        if let Formula::Neg(inner) = l {
            match &**inner {
                Formula::BigAnd(phi) => {
                    if *r == Formula::big_or(neg_image(phi)) {
                        return true;
                    }
                }
                Formula::BigOr(phi) => {
                    if *r == Formula::big_and(neg_image(phi)) {
                        return true;
                    }
                }
                _ => {}
            }
        }
        false
    })
}

/// Distributivity: `p and (or G) <-> or {p and g}` and its dual.
fn is_a4(f: &Formula) -> bool {
    as_iffs(f).iter().any(|(l, r)| {
        match l {
            Formula::BigAnd(xs) => {
                for (phi, other) in two_element_views(xs) {
                    if let Formula::BigOr(psi) = other {
                        let expected = Formula::big_or(
                            psi.iter().map(|q| Formula::big_and([phi.clone(), q.clone()])),
                        );
                        if *r == expected {
                            return true;
                        }
                    }
                }
            }
            Formula::BigOr(xs) => {
                for (phi, other) in two_element_views(xs) {
                    if let Formula::BigAnd(psi) = other {
                        let expected = Formula::big_and(
                            psi.iter().map(|q| Formula::big_or([phi.clone(), q.clone()])),
                        );
                        if *r == expected {
                            return true;
                        }
                    }
                }
            }
            _ => {}
        }
        false
    })
}

/// Views of a set `{x, y}` as (distinguished, other): both orderings for a
/// pair, and the collapsed `{x}` as (x, x).
fn two_element_views(xs: &ArgSet) -> Vec<(&Formula, &Formula)> {
    let s = xs.as_slice();
    match s.len() {
        1 => vec![(&s[0], &s[0])],
        2 => vec![(&s[0], &s[1]), (&s[1], &s[0])],
        _ => vec![],
    }
}

enum Skel {
    Letter(usize),
    Not(Box<Skel>),
    Or(Box<Skel>, Box<Skel>),
    And(Box<Skel>, Box<Skel>),
}

fn skeletonize(f: &Formula, letters: &mut Vec<Formula>) -> Option<Skel> {
    match f {
        Formula::Neg(g) => Some(Skel::Not(Box::new(skeletonize(g, letters)?))),
        Formula::BigOr(args) if args.len() == 2 => {
            let s = args.as_slice();
            Some(Skel::Or(
                Box::new(skeletonize(&s[0], letters)?),
                Box::new(skeletonize(&s[1], letters)?),
            ))
        }
        Formula::BigAnd(args) if args.len() == 2 => {
            let s = args.as_slice();
            Some(Skel::And(
                Box::new(skeletonize(&s[0], letters)?),
                Box::new(skeletonize(&s[1], letters)?),
            ))
        }
        other => {
            let idx = match letters.iter().position(|x| x == other) {
                Some(i) => i,
                None => {
                    if letters.len() >= A1_LETTER_CAP {
                        return None;
                    }
                    letters.push(other.clone());
                    letters.len() - 1
                }
            };
            Some(Skel::Letter(idx))
        }
    }
}

fn skel_eval(s: &Skel, assignment: u32) -> bool {
    match s {
        Skel::Letter(i) => assignment & (1 << i) != 0,
        Skel::Not(x) => !skel_eval(x, assignment),
        Skel::Or(x, y) => skel_eval(x, assignment) || skel_eval(y, assignment),
        Skel::And(x, y) => skel_eval(x, assignment) && skel_eval(y, assignment),
    }
}

/// Substitution instance of a finitary propositional tautology, detected by
/// skeletonizing through negation and two-element connectives and
/// truth-table checking the skeleton. Exceeding the letter budget is a
/// sound rejection.
fn is_a1(f: &Formula) -> bool {
    let mut letters = Vec::new();
    let skel = match skeletonize(f, &mut letters) {
        Some(s) => s,
        None => return false,
    };
    let k = letters.len();
    (0u32..(1 << k)).all(|assignment| skel_eval(&skel, assignment))
}

/// Recognizes axiom instances, trying the set-indexed schemas before the
/// tautology skeleton. Returns the first tag that matches.
pub fn recognize_axiom(f: &Formula) -> Option<AxiomTag> {
    if is_a2(f) {
        Some(AxiomTag::A2)
    } else if is_a3(f) {
        Some(AxiomTag::A3)
    } else if is_a4(f) {
        Some(AxiomTag::A4)
    } else if is_a1(f) {
        Some(AxiomTag::A1)
    } else {
        None
    }
}

fn axiom_matches(tag: Justification, f: &Formula) -> bool {
    match tag {
        Justification::A1 => is_a1(f),
        Justification::A2 => is_a2(f),
        Justification::A3 => is_a3(f),
        Justification::A4 => is_a4(f),
        _ => false,
    }
}

/// Checks a derivation against the hypotheses. Accepted iff every leaf is a
/// hypothesis or a matching axiom instance and every internal node matches
/// its rule; on rejection the failure names the first offending node in
/// depth-first pre-order.
pub fn check_proof(t: &ProofTree, hypotheses: &Theory) -> CheckReport {
    let mut path = Vec::new();
    match check_node(t, hypotheses, &mut path) {
        Ok(()) => CheckReport {
            accepted: true,
            conclusion: Some(t.label.clone()),
            failure: None,
        },
        Err(failure) => CheckReport { accepted: false, conclusion: None, failure: Some(failure) },
    }
}

fn fail(path: &[usize], reason: impl Into<String>) -> CheckFailure {
    CheckFailure { path: path.to_vec(), reason: reason.into() }
}

fn check_node(node: &ProofTree, hyps: &Theory, path: &mut NodePath) -> Result<(), CheckFailure> {
    if node.children.is_empty() {
        match node.just {
            Justification::Hypothesis => {
                if !hyps.contains(&node.label) {
                    return Err(fail(path, format!("`{}` is not a hypothesis", node.label)));
                }
            }
            Justification::A1 | Justification::A2 | Justification::A3 | Justification::A4 => {
                if !axiom_matches(node.just, &node.label) {
                    return Err(fail(
                        path,
                        format!("`{}` is not an ({}) instance", node.label, node.just.name()),
                    ));
                }
            }
            _ => {
                return Err(fail(path, format!("{} node has no premises", node.just.name())));
            }
        }
        return Ok(());
    }

    let child_labels: BTreeSet<&Formula> = node.children.iter().map(|c| &c.label).collect();
    match node.just {
        Justification::Mp => {
            let ok = child_labels.len() == 2 && {
                let mut it = child_labels.iter();
                let c1 = *it.next().unwrap();
                let c2 = *it.next().unwrap();
                *c2 == Formula::imp(c1.clone(), node.label.clone())
                    || *c1 == Formula::imp(c2.clone(), node.label.clone())
            };
            if !ok {
                return Err(fail(path, "premises do not fit modus ponens"));
            }
        }
        Justification::R1 => {
            let ok = as_implications(&node.label).iter().any(|(l, r)| {
                if let Formula::BigOr(phi) = l {
                    let required: BTreeSet<Formula> =
                        phi.iter().map(|q| Formula::imp(q.clone(), r.clone())).collect();
                    required.len() == child_labels.len()
                        && required.iter().all(|f| child_labels.contains(f))
                } else {
                    false
                }
            });
            if !ok {
                return Err(fail(
                    path,
                    "premise set does not match the disjunction-elimination rule",
                ));
            }
        }
        Justification::R2 => {
            let ok = as_implications(&node.label).iter().any(|(l, r)| {
                if let Formula::BigAnd(psi) = r {
                    let required: BTreeSet<Formula> =
                        psi.iter().map(|q| Formula::imp(l.clone(), q.clone())).collect();
                    required.len() == child_labels.len()
                        && required.iter().all(|f| child_labels.contains(f))
                } else {
                    false
                }
            });
            if !ok {
                return Err(fail(
                    path,
                    "premise set does not match the conjunction-introduction rule",
                ));
            }
        }
        other => {
            return Err(fail(path, format!("{} is not a rule for an inner node", other.name())));
        }
    }

    for (i, child) in node.children.iter().enumerate() {
        path.push(i);
        check_node(child, hyps, path)?;
        path.pop();
    }
    Ok(())
}

/// Soundness audit: every node label must be entailed by the hypotheses.
/// Intended for trees `check_proof` already accepted; returns the first
/// violating node path, which for an accepted tree must be `None`.
pub fn audit_soundness(
    t: &ProofTree,
    hypotheses: &Theory,
    u: AtomUniverse,
) -> Result<Option<NodePath>, SemanticsError> {
    let mut path = Vec::new();
    audit_node(t, hypotheses, u, &mut path)
}

fn audit_node(
    node: &ProofTree,
    hyps: &Theory,
    u: AtomUniverse,
    path: &mut NodePath,
) -> Result<Option<NodePath>, SemanticsError> {
    if !semantics::entails(hyps, &node.label, u)?.holds {
        return Ok(Some(path.clone()));
    }
    for (i, child) in node.children.iter().enumerate() {
        path.push(i);
        if let Some(found) = audit_node(child, hyps, u, path)? {
            return Ok(Some(found));
        }
        path.pop();
    }
    Ok(None)
}

pub fn hypothesis(f: Formula) -> ProofTree {
    ProofTree { label: f, just: Justification::Hypothesis, children: Vec::new() }
}

/// Leaf for a recognized axiom instance, tagged with what the recognizer
/// found.
pub fn axiom_leaf(f: Formula) -> Result<ProofTree, ProofError> {
    let tag = recognize_axiom(&f).ok_or_else(|| ProofError::NotAnAxiom(f.to_string()))?;
    let just = match tag {
        AxiomTag::A1 => Justification::A1,
        AxiomTag::A2 => Justification::A2,
        AxiomTag::A3 => Justification::A3,
        AxiomTag::A4 => Justification::A4,
    };
    Ok(ProofTree { label: f, just, children: Vec::new() })
}

/// Modus ponens from a proof of `p` and a proof of `p -> q`.
pub fn build_mp(minor: ProofTree, major: ProofTree) -> Result<ProofTree, ProofError> {
    let conclusion = as_implications(&major.label)
        .into_iter()
        .find(|(l, _)| *l == minor.label)
        .map(|(_, r)| r)
        .ok_or_else(|| {
            ProofError::RuleShape(format!(
                "`{}` is not an implication with antecedent `{}`",
                major.label, minor.label
            ))
        })?;
    Ok(ProofTree { label: conclusion, just: Justification::Mp, children: vec![minor, major] })
}

/// From proofs of `f -> conclusion` for every `f` in `phi`, concludes
/// `(or phi) -> conclusion`.
pub fn build_r1(
    premises: Vec<ProofTree>,
    phi: impl IntoIterator<Item = Formula>,
    conclusion: Formula,
) -> Result<ProofTree, ProofError> {
    let phi: ArgSet = phi.into_iter().collect();
    let required: BTreeSet<Formula> =
        phi.iter().map(|q| Formula::imp(q.clone(), conclusion.clone())).collect();
    let got: BTreeSet<&Formula> = premises.iter().map(|t| &t.label).collect();
    if required.len() != got.len() || !required.iter().all(|f| got.contains(f)) {
        return Err(ProofError::RuleShape(
            "premise labels do not cover exactly the required implications".into(),
        ));
    }
    Ok(ProofTree {
        label: Formula::imp(Formula::BigOr(phi), conclusion),
        just: Justification::R1,
        children: premises,
    })
}

/// From proofs of `antecedent -> g` for every `g` in `psi`, concludes
/// `antecedent -> (and psi)`.
pub fn build_r2(
    premises: Vec<ProofTree>,
    antecedent: Formula,
    psi: impl IntoIterator<Item = Formula>,
) -> Result<ProofTree, ProofError> {
    let psi: ArgSet = psi.into_iter().collect();
    let required: BTreeSet<Formula> =
        psi.iter().map(|q| Formula::imp(antecedent.clone(), q.clone())).collect();
    let got: BTreeSet<&Formula> = premises.iter().map(|t| &t.label).collect();
    if required.len() != got.len() || !required.iter().all(|f| got.contains(f)) {
        return Err(ProofError::RuleShape(
            "premise labels do not cover exactly the required implications".into(),
        ));
    }
    Ok(ProofTree {
        label: Formula::imp(antecedent, Formula::BigAnd(psi)),
        just: Justification::R2,
        children: premises,
    })
}

/// Parses a proof file: s-expressions `(node <formula> <just> <child>*)`
/// with `<just>` in `hyp A1 A2 A3 A4 MP R1 R2`.
pub fn parse_proof(text: &str, u: AtomUniverse) -> Result<ProofTree, ParseError> {
    let e = sexpr::parse_one(text)?;
    proof_from_sexpr(&e, u)
}

fn proof_from_sexpr(e: &Sexpr, u: AtomUniverse) -> Result<ProofTree, ParseError> {
    let items = match e {
        Sexpr::List(items, _) => items,
        Sexpr::Sym(_, pos) => {
            return Err(ParseError::Syntax { pos: *pos, msg: "expected a (node ...) list".into() });
        }
    };
    match items.first() {
        Some(Sexpr::Sym(s, _)) if s == "node" => {}
        _ => {
            return Err(ParseError::Syntax {
                pos: e.pos(),
                msg: "expected a list starting with `node`".into(),
            });
        }
    }
    if items.len() < 3 {
        return Err(ParseError::Syntax {
            pos: e.pos(),
            msg: "node needs a formula and a justification".into(),
        });
    }
    let label = crate::formula::formula_from_sexpr(&items[1], u)?;
    let just = match &items[2] {
        Sexpr::Sym(s, pos) => match s.as_str() {
            "hyp" => Justification::Hypothesis,
            "A1" => Justification::A1,
            "A2" => Justification::A2,
            "A3" => Justification::A3,
            "A4" => Justification::A4,
            "MP" => Justification::Mp,
            "R1" => Justification::R1,
            "R2" => Justification::R2,
            other => {
                return Err(ParseError::Syntax {
                    pos: *pos,
                    msg: format!("unknown justification `{other}`"),
                });
            }
        },
        other => {
            return Err(ParseError::Syntax {
                pos: other.pos(),
                msg: "expected a justification symbol".into(),
            });
        }
    };
    let children = items[3..]
        .iter()
        .map(|c| proof_from_sexpr(c, u))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ProofTree { label, just, children })
}
