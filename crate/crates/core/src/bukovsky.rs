//! The covering-function pipeline: from a target valuation and a covering
//! function to a theory, a preordered set of unrefuted formulas, and a
//! generic filter, together with a battery of verifiable claims about the
//! construction.
//!
//! The provability notion behind "the theory refutes this formula" is the
//! semantic entailment oracle of [`crate::semantics`]: at finite mu it is
//! decidable and it is the maximal correct such notion, which makes the
//! constructed set of conditions as large as the construction allows.
//!
//! The covering function is explicit and finite: its domain is a concrete
//! family of subsets of the fragment, and every claim that quantifies over
//! "all antichains" or "all dense sets" is checked relative to that domain.
//! Reports say so.

use crate::formula::{AtomUniverse, Formula, Fragment, FragmentError};
use crate::poset::FinitePreorder;
use crate::semantics::{self, SemanticsError, Theory, Valuation};
use serde::Serialize;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Valuation-mask arithmetic is on `u64`, so pipeline universes stop here.
pub const PIPELINE_MU_CAP: usize = 6;

/// Bound on the number of sets in the covering domain.
pub const DEFAULT_DOMAIN_CAP: usize = 2_000_000;

pub const DEFAULT_DOMAIN_MAX_SIZE: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PipelineError {
    #[error("kappa must be at least 2, got {0}")]
    KappaTooSmall(usize),
    #[error("covering image size must satisfy 1 <= size < kappa, got {0}")]
    BadImageSize(usize),
    #[error("mu = {mu} exceeds the pipeline cap {cap}")]
    MuCapExceeded { mu: usize, cap: usize },
    #[error("covering domain would have {n} sets, cap is {cap}")]
    DomainCapExceeded { n: u128, cap: usize },
    #[error("formula `{0}` is not in the fragment")]
    NotInFragment(String),
    #[error("fragment is missing `{formula}` needed to check {purpose}")]
    ClosureMissing { formula: String, purpose: String },
    #[error("the theory has no models; the covering does not fit any target")]
    InconsistentTheory { covering_violations: Vec<String> },
    #[error(transparent)]
    Fragment(#[from] FragmentError),
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
}

/// How the pipeline obtains its fragment.
#[derive(Debug, Clone)]
pub enum FragmentPolicy {
    /// Literals; disjunctions of literal sets of size `1..kappa`;
    /// conjunctions of literal sets of size `2..=mu`; complements of the
    /// atoms and of the disjunction layer.
    Default,
    Explicit(Vec<Formula>),
}

/// How the covering function and its domain come about.
#[derive(Debug, Clone)]
pub enum CoveringPolicy {
    /// Domain: all nonempty fragment subsets up to `domain_max_size`. Image:
    /// the least target-true element when one exists (else the least
    /// element), padded with further least elements up to `image_size`
    /// (default `kappa - 1`).
    Synthesize { domain_max_size: usize, image_size: Option<usize> },
    /// An explicit map, for handcrafted or fault-injected coverings. The
    /// domain is exactly the listed sets.
    Explicit(Vec<(Vec<Formula>, Vec<Formula>)>),
}

#[derive(Debug, Clone)]
pub struct PipelineConfig {
    pub universe: AtomUniverse,
    pub target: Valuation,
    pub kappa: usize,
    pub fragment: FragmentPolicy,
    pub covering: CoveringPolicy,
    /// Dense subsets of the constructed poset to test the filter against.
    pub extra_dense: Vec<Vec<Formula>>,
    /// Also scan for literal-level dense sets and test those.
    pub discover_dense: bool,
    pub domain_cap: usize,
}

impl PipelineConfig {
    pub fn new(universe: AtomUniverse, target: Valuation, kappa: usize) -> Self {
        PipelineConfig {
            universe,
            target,
            kappa,
            fragment: FragmentPolicy::Default,
            covering: CoveringPolicy::Synthesize {
                domain_max_size: DEFAULT_DOMAIN_MAX_SIZE,
                image_size: None,
            },
            extra_dense: Vec::new(),
            discover_dense: true,
            domain_cap: DEFAULT_DOMAIN_CAP,
        }
    }
}

/// One `gamma -> g(gamma)` assignment, as sorted fragment indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoveringEntry {
    pub gamma: Vec<u32>,
    pub image: Vec<u32>,
}

/// An explicit covering function over an explicit domain.
#[derive(Debug, Clone)]
pub struct CoveringFunction {
    pub kappa: usize,
    /// Sorted by (length, lexicographic) of `gamma`.
    pub entries: Vec<CoveringEntry>,
}

impl CoveringFunction {
    pub fn find(&self, gamma: &[u32]) -> Option<&CoveringEntry> {
        self.entries
            .binary_search_by(|e| {
                (e.gamma.len(), &e.gamma[..]).cmp(&(gamma.len(), gamma))
            })
            .ok()
            .map(|i| &self.entries[i])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoveringViolation {
    pub gamma: Vec<String>,
    pub image: Vec<String>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Default)]
pub struct CoveringReport {
    pub entries: usize,
    pub violations: Vec<CoveringViolation>,
}

impl CoveringReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// The constructed conditions: fragment members the theory fails to refute,
/// preordered by theory-entailed implication.
#[derive(Debug, Clone)]
pub struct ConstructedPoset {
    pub fragment: Arc<Vec<Formula>>,
    pub theory: Theory,
    /// Per fragment index.
    pub membership: Vec<bool>,
    /// Fragment indices of members, ascending.
    pub members: Vec<u32>,
    pub quotient: Quotient,
    mu: usize,
    /// Truth mask per fragment formula: bit `b` set iff the valuation with
    /// characteristic bits `b` satisfies the formula.
    masks: Vec<u64>,
    model_mask: u64,
    member_slot: BTreeMap<u32, usize>,
    /// `leq[a * members.len() + b]` over member slots.
    leq: Vec<bool>,
}

/// Classes of mutually comparable members, ordered by entailment.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Quotient {
    /// Each class lists fragment indices, ascending; classes sorted by their
    /// least member.
    pub classes: Vec<Vec<u32>>,
    /// `class_leq[i * classes.len() + j]`.
    pub class_leq: Vec<bool>,
}

impl ConstructedPoset {
    pub fn mu(&self) -> usize {
        self.mu
    }

    pub fn truth_mask(&self, fragment_index: u32) -> u64 {
        self.masks[fragment_index as usize]
    }

    pub fn model_mask(&self) -> u64 {
        self.model_mask
    }

    pub fn models(&self) -> Vec<Valuation> {
        (0..(1u64 << self.mu))
            .filter(|b| self.model_mask & (1 << b) != 0)
            .map(|b| Valuation::from_bits(b as u32, self.mu))
            .collect()
    }

    pub fn contains(&self, fragment_index: u32) -> bool {
        self.membership[fragment_index as usize]
    }

    /// `a <= b` in the constructed order; `None` when either is not a
    /// member.
    pub fn leq(&self, a: u32, b: u32) -> Option<bool> {
        let sa = *self.member_slot.get(&a)?;
        let sb = *self.member_slot.get(&b)?;
        Some(self.leq[sa * self.members.len() + sb])
    }

    /// Compatibility through the entailment oracle: the theory does not
    /// refute the conjunction.
    pub fn oracle_compatible(&self, a: u32, b: u32) -> bool {
        self.masks[a as usize] & self.masks[b as usize] & self.model_mask != 0
    }

    /// The members as a labeled preorder, for the generic poset machinery.
    pub fn to_preorder(&self) -> FinitePreorder {
        let labels: Vec<String> =
            self.members.iter().map(|&i| self.fragment[i as usize].to_string()).collect();
        FinitePreorder::from_leq_matrix(labels, self.leq.clone())
            .expect("constructed order is a preorder")
    }
}

/// The whole pipeline state for one run.
#[derive(Debug, Clone)]
pub struct PipelineRun {
    pub config: PipelineConfig,
    pub fragment: Arc<Vec<Formula>>,
    pub fragment_truncated: bool,
    pub covering: CoveringFunction,
    pub covering_report: CoveringReport,
    pub poset: ConstructedPoset,
    /// Fragment indices of the generic filter, ascending.
    pub generic: Vec<u32>,
    /// Dense sets to check: (fragment indices, origin).
    pub dense_sets: Vec<(Vec<u32>, DenseOrigin)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DenseOrigin {
    Supplied,
    Discovered,
}

fn truth_mask(f: &Formula, mu: usize) -> u64 {
    let mut mask = 0u64;
    for bits in 0..(1u64 << mu) {
        if semantics::eval_bits(bits as u32, f) {
            mask |= 1 << bits;
        }
    }
    mask
}

/// The default pipeline fragment.
///
/// Literals, then disjunctions of literal sets of size `1..kappa` (so the
/// complements of candidate antichain and dense-set joins exist), then
/// conjunctions of literal sets of size `2..=mu` (so pairwise meets and the
/// full characteristic conjunction of every valuation exist), then the
/// complements of the atoms and of the disjunction layer.
pub fn default_fragment(u: AtomUniverse, kappa: usize) -> Fragment {
    let literals = u.literals();
    let mut set: std::collections::BTreeSet<Formula> = literals.iter().cloned().collect();

    let or_max = kappa.saturating_sub(1).clamp(1, literals.len().max(1));
    let mut or_layer = Vec::new();
    for_combinations(&literals, 1, or_max, |chosen| {
        or_layer.push(Formula::big_or(chosen.iter().map(|f| (*f).clone())));
    });
    for_combinations(&literals, 2, u.mu, |chosen| {
        set.insert(Formula::big_and(chosen.iter().map(|f| (*f).clone())));
    });
    for f in &or_layer {
        set.insert(f.clone());
        set.insert(Formula::neg(f.clone()));
    }
    for i in 0..u.mu {
        set.insert(Formula::neg(Formula::atom(i as u32)));
    }
    Fragment { formulas: set.into_iter().collect(), truncated: false }
}

fn for_combinations(base: &[Formula], min: usize, max: usize, mut visit: impl FnMut(&[&Formula])) {
    let n = base.len();
    for k in min..=max.min(n) {
        if k == 0 {
            continue;
        }
        let mut idx: Vec<usize> = (0..k).collect();
        'combos: loop {
            let chosen: Vec<&Formula> = idx.iter().map(|&i| &base[i]).collect();
            visit(&chosen);
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
}

fn count_subsets_up_to(n: usize, max_size: usize) -> u128 {
    let mut total: u128 = 0;
    for k in 1..=max_size.min(n) {
        let mut binom: u128 = 1;
        for i in 0..k {
            binom = binom.saturating_mul((n - i) as u128) / (i + 1) as u128;
        }
        total = total.saturating_add(binom);
    }
    total
}

/// Builds the covering function over the synthesized domain: the least
/// target-true element is selected (the least element when none is true),
/// then the image is padded with further least elements up to the requested
/// size.
pub fn synthesize_covering(
    fragment: &[Formula],
    target: Valuation,
    kappa: usize,
    domain_max_size: usize,
    image_size: usize,
    domain_cap: usize,
) -> Result<CoveringFunction, PipelineError> {
    if kappa < 2 {
        return Err(PipelineError::KappaTooSmall(kappa));
    }
    if image_size == 0 || image_size >= kappa {
        return Err(PipelineError::BadImageSize(image_size));
    }
    let n = fragment.len();
    let count = count_subsets_up_to(n, domain_max_size);
    if count > domain_cap as u128 {
        return Err(PipelineError::DomainCapExceeded { n: count, cap: domain_cap });
    }
    let target_true: Vec<bool> =
        fragment.iter().map(|f| semantics::eval_bits(target.bits(), f)).collect();

    let mut entries = Vec::with_capacity(count as usize);
    for k in 1..=domain_max_size.min(n) {
        let mut idx: Vec<usize> = (0..k).collect();
        'combos: loop {
            let gamma: Vec<u32> = idx.iter().map(|&i| i as u32).collect();
            let selector = gamma
                .iter()
                .copied()
                .find(|&i| target_true[i as usize])
                .unwrap_or(gamma[0]);
            let mut image = vec![selector];
            for &i in &gamma {
                if image.len() >= image_size.min(gamma.len()) {
                    break;
                }
                if i != selector {
                    image.push(i);
                }
            }
            image.sort_unstable();
            entries.push(CoveringEntry { gamma, image });

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
    Ok(CoveringFunction { kappa, entries })
}

/// Checks image bounds and target-adequacy of a covering; violations are
/// listed, not fatal, since fault-injected coverings are meant to flow
/// through the pipeline and fail claims.
pub fn validate_covering(
    covering: &CoveringFunction,
    fragment: &[Formula],
    target: Valuation,
) -> CoveringReport {
    let mut violations = Vec::new();
    let render = |ixs: &[u32]| -> Vec<String> {
        ixs.iter().map(|&i| fragment[i as usize].to_string()).collect()
    };
    for e in &covering.entries {
        let mut complain = |reason: String| {
            violations.push(CoveringViolation {
                gamma: render(&e.gamma),
                image: render(&e.image),
                reason,
            });
        };
        if e.gamma.is_empty() {
            complain("domain set is empty".into());
            continue;
        }
        if e.image.is_empty() {
            complain("image is empty".into());
            continue;
        }
        if !e.image.iter().all(|i| e.gamma.contains(i)) {
            complain("image is not a subset of its set".into());
        }
        if e.image.len() >= covering.kappa {
            complain(format!("image has {} elements, kappa is {}", e.image.len(), covering.kappa));
        }
        let gamma_true =
            e.gamma.iter().any(|&i| semantics::eval_bits(target.bits(), &fragment[i as usize]));
        let image_true =
            e.image.iter().any(|&i| semantics::eval_bits(target.bits(), &fragment[i as usize]));
        if gamma_true && !image_true {
            complain("target satisfies the join but no image element".into());
        }
    }
    CoveringReport { entries: covering.entries.len(), violations }
}

/// `T = { (or gamma) -> (or g(gamma)) }` over the covering domain.
pub fn build_theory(covering: &CoveringFunction, fragment: &[Formula]) -> Theory {
    use crate::formula::ArgSet;
    // ascending fragment indices are ascending in the formula order, and a
    // negation always precedes a disjunction, so both sets come pre-sorted
    let collect = |ixs: &[u32]| -> Vec<Formula> {
        ixs.iter().map(|&i| fragment[i as usize].clone()).collect()
    };
    Theory::new(covering.entries.iter().map(|e| {
        let gamma = Formula::BigOr(ArgSet::from_sorted_unchecked(collect(&e.gamma)));
        let image = Formula::BigOr(ArgSet::from_sorted_unchecked(collect(&e.image)));
        Formula::BigOr(ArgSet::from_sorted_unchecked(vec![Formula::neg(gamma), image]))
    }))
}

/// Membership and order of the constructed conditions, via the entailment
/// oracle: a fragment formula is a condition unless the theory refutes it,
/// and `a <= b` iff the theory entails the implication.
pub fn build_poset(
    theory: &Theory,
    fragment: Arc<Vec<Formula>>,
    u: AtomUniverse,
) -> Result<ConstructedPoset, PipelineError> {
    build_poset_inner(theory, fragment, u, Vec::new())
}

fn build_poset_inner(
    theory: &Theory,
    fragment: Arc<Vec<Formula>>,
    u: AtomUniverse,
    covering_violations: Vec<String>,
) -> Result<ConstructedPoset, PipelineError> {
    if u.mu > PIPELINE_MU_CAP {
        return Err(PipelineError::MuCapExceeded { mu: u.mu, cap: PIPELINE_MU_CAP });
    }
    for f in fragment.iter() {
        if !f.fits(u) {
            return Err(PipelineError::Semantics(SemanticsError::AtomOutOfRange {
                formula: f.to_string(),
                index: f.max_atom().unwrap_or(0),
                mu: u.mu,
            }));
        }
    }
    let masks: Vec<u64> = fragment.iter().map(|f| truth_mask(f, u.mu)).collect();
    let full = if u.mu == 0 { 1u64 } else { (1u64 << (1u64 << u.mu)) - 1 };
    let mut model_mask = full;
    for t in theory.iter() {
        model_mask &= truth_mask(t, u.mu);
        if model_mask == 0 {
            return Err(PipelineError::InconsistentTheory { covering_violations });
        }
    }

    let membership: Vec<bool> = masks.iter().map(|m| m & model_mask != 0).collect();
    let members: Vec<u32> =
        (0..fragment.len() as u32).filter(|&i| membership[i as usize]).collect();
    let member_slot: BTreeMap<u32, usize> =
        members.iter().enumerate().map(|(s, &i)| (i, s)).collect();

    let k = members.len();
    let mut leq = vec![false; k * k];
    for (sa, &a) in members.iter().enumerate() {
        let restricted = masks[a as usize] & model_mask;
        for (sb, &b) in members.iter().enumerate() {
            leq[sa * k + sb] = restricted & !masks[b as usize] == 0;
        }
    }

    // quotient: classes keyed by restricted truth mask, ordered by least member
    let mut class_map: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for &i in &members {
        class_map.entry(masks[i as usize] & model_mask).or_default().push(i);
    }
    let mut keyed: Vec<(u64, Vec<u32>)> = class_map.into_iter().collect();
    keyed.sort_by_key(|(_, c)| c[0]);
    let class_keys: Vec<u64> = keyed.iter().map(|(k, _)| *k).collect();
    let classes: Vec<Vec<u32>> = keyed.into_iter().map(|(_, c)| c).collect();
    let nc = classes.len();
    let mut class_leq = vec![false; nc * nc];
    for i in 0..nc {
        for j in 0..nc {
            class_leq[i * nc + j] = class_keys[i] & !class_keys[j] == 0;
        }
    }

    Ok(ConstructedPoset {
        fragment,
        theory: theory.clone(),
        membership,
        members,
        quotient: Quotient { classes, class_leq },
        mu: u.mu,
        masks,
        model_mask,
        member_slot,
        leq,
    })
}

/// `G(target) = { conditions the target satisfies }`, as fragment indices.
pub fn generic_filter(target: Valuation, cp: &ConstructedPoset) -> Vec<u32> {
    cp.members
        .iter()
        .copied()
        .filter(|&i| semantics::eval_bits(target.bits(), &cp.fragment[i as usize]))
        .collect()
}

/// Runs every stage on a configuration.
pub fn run_pipeline(config: PipelineConfig) -> Result<PipelineRun, PipelineError> {
    let u = config.universe;
    if config.kappa < 2 {
        return Err(PipelineError::KappaTooSmall(config.kappa));
    }
    if u.mu > PIPELINE_MU_CAP {
        return Err(PipelineError::MuCapExceeded { mu: u.mu, cap: PIPELINE_MU_CAP });
    }

    let (fragment, truncated) = match &config.fragment {
        FragmentPolicy::Default => {
            let f = default_fragment(u, config.kappa);
            (f.formulas, f.truncated)
        }
        FragmentPolicy::Explicit(fs) => {
            let mut v = fs.clone();
            v.sort_by_cached_key(|f| f.to_string());
            v.dedup();
            (v, false)
        }
    };
    let fragment = Arc::new(fragment);
    let index_of = |f: &Formula| -> Result<u32, PipelineError> {
        fragment
            .binary_search_by(|x| x.cmp(f))
            .map(|i| i as u32)
            .map_err(|_| PipelineError::NotInFragment(f.to_string()))
    };

    let covering = match &config.covering {
        CoveringPolicy::Synthesize { domain_max_size, image_size } => {
            let image_size = image_size.unwrap_or(config.kappa - 1);
            synthesize_covering(
                &fragment,
                config.target,
                config.kappa,
                *domain_max_size,
                image_size,
                config.domain_cap,
            )?
        }
        CoveringPolicy::Explicit(map) => {
            let mut entries = Vec::with_capacity(map.len());
            for (gamma_fs, image_fs) in map {
                let mut gamma = gamma_fs.iter().map(&index_of).collect::<Result<Vec<_>, _>>()?;
                let mut image = image_fs.iter().map(&index_of).collect::<Result<Vec<_>, _>>()?;
                gamma.sort_unstable();
                gamma.dedup();
                image.sort_unstable();
                image.dedup();
                entries.push(CoveringEntry { gamma, image });
            }
            entries.sort_by(|a, b| (a.gamma.len(), &a.gamma).cmp(&(b.gamma.len(), &b.gamma)));
            entries.dedup_by(|a, b| a.gamma == b.gamma);
            CoveringFunction { kappa: config.kappa, entries }
        }
    };

    let covering_report = validate_covering(&covering, &fragment, config.target);
    let theory = build_theory(&covering, &fragment);
    let violations: Vec<String> = covering_report
        .violations
        .iter()
        .map(|v| format!("{{{}}} -> {{{}}}: {}", v.gamma.join(", "), v.image.join(", "), v.reason))
        .collect();
    let poset = build_poset_inner(&theory, Arc::clone(&fragment), u, violations)?;
    let generic = generic_filter(config.target, &poset);

    let mut dense_sets: Vec<(Vec<u32>, DenseOrigin)> = Vec::new();
    for d in &config.extra_dense {
        let mut ixs = d.iter().map(&index_of).collect::<Result<Vec<_>, _>>()?;
        ixs.sort_unstable();
        ixs.dedup();
        dense_sets.push((ixs, DenseOrigin::Supplied));
    }
    if config.discover_dense {
        for d in discover_literal_dense_sets(&poset, &covering, u) {
            if !dense_sets.iter().any(|(s, _)| s == &d) {
                dense_sets.push((d, DenseOrigin::Discovered));
            }
        }
    }

    Ok(PipelineRun {
        config,
        fragment,
        fragment_truncated: truncated,
        covering,
        covering_report,
        poset,
        generic,
        dense_sets,
    })
}

/// Scans literal subsets (up to the covering's domain sizes) for sets that
/// are dense in the constructed poset, lie in the covering domain, and whose
/// image join has its complement in the fragment. Deterministic.
fn discover_literal_dense_sets(
    cp: &ConstructedPoset,
    covering: &CoveringFunction,
    u: AtomUniverse,
) -> Vec<Vec<u32>> {
    let max_size = covering.entries.last().map_or(0, |e| e.gamma.len());
    let literal_ixs: Vec<u32> = u
        .literals()
        .into_iter()
        .filter_map(|l| cp.fragment.binary_search_by(|x| x.cmp(&l)).ok())
        .map(|i| i as u32)
        .collect();
    let mut found = Vec::new();
    let k_max = max_size.min(literal_ixs.len());
    for k in 1..=k_max {
        let mut idx: Vec<usize> = (0..k).collect();
        'combos: loop {
            let d: Vec<u32> = idx.iter().map(|&i| literal_ixs[i]).collect();
            if is_dense_in(cp, &d) {
                if let Some(entry) = covering.find(&d) {
                    let join = Formula::big_or(
                        entry.image.iter().map(|&i| cp.fragment[i as usize].clone()),
                    );
                    let complement = Formula::neg(join);
                    if cp.fragment.binary_search_by(|x| x.cmp(&complement)).is_ok() {
                        found.push(d);
                    }
                }
            }
            let n = literal_ixs.len();
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
    found
}

fn is_dense_in(cp: &ConstructedPoset, d: &[u32]) -> bool {
    if !d.iter().all(|&i| cp.contains(i)) {
        return false;
    }
    cp.members
        .iter()
        .all(|&p| d.iter().any(|&x| cp.leq(x, p).unwrap_or(false)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimResult {
    pub pass: bool,
    pub checked: usize,
    pub skipped: usize,
    pub witness: Option<String>,
}

impl ClaimResult {
    fn passing() -> Self {
        ClaimResult { pass: true, checked: 0, skipped: 0, witness: None }
    }

    fn fail(&mut self, witness: String) {
        if self.pass {
            self.pass = false;
            self.witness = Some(witness);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DenseSetResult {
    pub formulas: Vec<String>,
    pub origin: DenseOrigin,
    pub subset_of_poset: bool,
    pub in_domain: bool,
    pub dense: bool,
    pub meets_generic: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReconstructionResult {
    pub pass: bool,
    pub from_filter: Vec<u32>,
    pub target: Vec<u32>,
}

/// Results of the verification battery.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenericFilterReport {
    /// What family the quantified claims ranged over.
    pub scope: String,
    pub fragment_size: usize,
    pub theory_size: usize,
    pub condition_count: usize,
    pub quotient_classes: usize,
    pub generic_size: usize,
    pub models: Vec<Valuation>,
    /// (a) target-true fragment formulas are conditions.
    pub truth_implies_membership: ClaimResult,
    /// (b) poset compatibility coincides with oracle compatibility for
    /// pairs whose conjunction the fragment contains.
    pub compatibility_bridge: ClaimResult,
    /// (c) domain antichains are fixed by the covering, hence small.
    pub chain_condition: ClaimResult,
    /// (d) the generic filter is upward closed and directed.
    pub filter_laws: ClaimResult,
    /// (e) domain maximal antichains with their join's complement in the
    /// fragment meet the filter.
    pub genericity: ClaimResult,
    /// (f) checked dense sets meet the filter.
    pub dense_meeting: ClaimResult,
    pub dense_details: Vec<DenseSetResult>,
    pub reconstruction: ReconstructionResult,
    pub all_pass: bool,
}

/// Runs checks (a)-(f) plus the reconstruction identity.
pub fn verify_claims(run: &PipelineRun) -> Result<GenericFilterReport, PipelineError> {
    let cp = &run.poset;
    let fragment = &cp.fragment;
    let target = run.config.target;
    let kappa = run.config.kappa;
    let show = |ixs: &[u32]| -> String {
        let names: Vec<String> = ixs.iter().map(|&i| fragment[i as usize].to_string()).collect();
        format!("{{{}}}", names.join(", "))
    };

    // (a) target truth implies membership
    let mut claim_a = ClaimResult::passing();
    for (i, f) in fragment.iter().enumerate() {
        claim_a.checked += 1;
        if semantics::eval_bits(target.bits(), f) && !cp.membership[i] {
            claim_a.fail(format!("target satisfies `{f}` but the theory refutes it"));
        }
    }

    // (b) compatibility bridge, both routes, guarded by the conjunction
    // being expressible
    let mut claim_b = ClaimResult::passing();
    let preorder = cp.to_preorder();
    for (sa, &a) in cp.members.iter().enumerate() {
        for (sb, &b) in cp.members.iter().enumerate().skip(sa) {
            let conj = Formula::big_and([
                fragment[a as usize].clone(),
                fragment[b as usize].clone(),
            ]);
            match fragment.binary_search_by(|x| x.cmp(&conj)) {
                Err(_) => claim_b.skipped += 1,
                Ok(c) => {
                    claim_b.checked += 1;
                    let by_search =
                        preorder.compatible(sa, sb).expect("member slots in range");
                    let by_oracle = cp.masks[c] & cp.model_mask != 0;
                    if by_search != by_oracle {
                        claim_b.fail(format!(
                            "`{}` vs `{}`: search says {}, oracle says {}",
                            fragment[a as usize], fragment[b as usize], by_search, by_oracle
                        ));
                    }
                }
            }
        }
    }

    // (c) chain condition: domain antichains are fixed by the covering
    let mut claim_c = ClaimResult::passing();
    let is_oracle_antichain = |gamma: &[u32]| -> bool {
        if !gamma.iter().all(|&i| cp.membership[i as usize]) {
            return false;
        }
        for (x, &a) in gamma.iter().enumerate() {
            for &b in gamma.iter().skip(x + 1) {
                if cp.oracle_compatible(a, b) {
                    return false;
                }
            }
        }
        true
    };
    for e in &run.covering.entries {
        if !is_oracle_antichain(&e.gamma) {
            continue;
        }
        claim_c.checked += 1;
        if e.image != e.gamma {
            claim_c.fail(format!(
                "antichain {} is not fixed: image {}",
                show(&e.gamma),
                show(&e.image)
            ));
        } else if e.gamma.len() >= kappa {
            claim_c.fail(format!("antichain {} has size >= kappa", show(&e.gamma)));
        }
    }

    // (d) filter laws
    let mut claim_d = ClaimResult::passing();
    let in_generic = |i: u32| run.generic.binary_search(&i).is_ok();
    for &a in &run.generic {
        for &b in &cp.members {
            claim_d.checked += 1;
            if cp.leq(a, b) == Some(true) && !in_generic(b) {
                claim_d.fail(format!(
                    "not upward closed: `{}` <= `{}`",
                    fragment[a as usize], fragment[b as usize]
                ));
            }
        }
    }
    for &a in &run.generic {
        for &b in &run.generic {
            claim_d.checked += 1;
            let bounded = run
                .generic
                .iter()
                .any(|&h| cp.leq(h, a) == Some(true) && cp.leq(h, b) == Some(true));
            if !bounded {
                claim_d.fail(format!(
                    "not directed: `{}` and `{}` have no bound in the filter",
                    fragment[a as usize], fragment[b as usize]
                ));
            }
        }
    }
    if run.generic.is_empty() && !cp.members.is_empty() {
        claim_d.fail("generic filter is empty".into());
    }

    // (e) genericity against domain maximal antichains whose join's
    // complement is expressible
    let mut claim_e = ClaimResult::passing();
    for e in &run.covering.entries {
        if !is_oracle_antichain(&e.gamma) {
            continue;
        }
        let maximal = cp.members.iter().all(|&p| {
            e.gamma.iter().any(|&x| cp.oracle_compatible(p, x))
        });
        if !maximal {
            continue;
        }
        let join = Formula::big_or(e.gamma.iter().map(|&i| fragment[i as usize].clone()));
        let complement = Formula::neg(join);
        if fragment.binary_search_by(|x| x.cmp(&complement)).is_err() {
            claim_e.skipped += 1;
            continue;
        }
        claim_e.checked += 1;
        if !e.gamma.iter().any(|&x| in_generic(x)) {
            claim_e.fail(format!("maximal antichain {} misses the filter", show(&e.gamma)));
        }
    }

    // (f) dense sets
    let mut claim_f = ClaimResult::passing();
    let mut dense_details = Vec::new();
    for (d, origin) in &run.dense_sets {
        let subset_of_poset = d.iter().all(|&i| cp.contains(i));
        let in_domain = run.covering.find(d).is_some();
        let dense = subset_of_poset && is_dense_in(cp, d);
        let mut meets = None;
        if subset_of_poset && in_domain && dense {
            let entry = run.covering.find(d).expect("just found");
            let join =
                Formula::big_or(entry.image.iter().map(|&i| fragment[i as usize].clone()));
            let complement = Formula::neg(join);
            if fragment.binary_search_by(|x| x.cmp(&complement)).is_err() {
                if *origin == DenseOrigin::Supplied {
                    return Err(PipelineError::ClosureMissing {
                        formula: complement.to_string(),
                        purpose: format!("dense meeting for {}", show(d)),
                    });
                }
                claim_f.skipped += 1;
            } else {
                claim_f.checked += 1;
                let m = d.iter().any(|&x| in_generic(x));
                meets = Some(m);
                if !m {
                    claim_f.fail(format!("dense set {} misses the filter", show(d)));
                }
            }
        } else {
            claim_f.skipped += 1;
        }
        dense_details.push(DenseSetResult {
            formulas: d.iter().map(|&i| fragment[i as usize].to_string()).collect(),
            origin: *origin,
            subset_of_poset,
            in_domain,
            dense,
            meets_generic: meets,
        });
    }

    // reconstruction: atoms in the filter spell out the target
    let mut from_filter = Vec::new();
    for &i in &run.generic {
        if let Formula::Atom(a) = &fragment[i as usize] {
            from_filter.push(*a);
        }
    }
    from_filter.sort_unstable();
    let target_members = target.members();
    let reconstruction = ReconstructionResult {
        pass: from_filter == target_members,
        from_filter,
        target: target_members,
    };

    let domain_max = run.covering.entries.last().map_or(0, |e| e.gamma.len());
    let all_pass = run.covering_report.ok()
        && claim_a.pass
        && claim_b.pass
        && claim_c.pass
        && claim_d.pass
        && claim_e.pass
        && claim_f.pass
        && reconstruction.pass;
    Ok(GenericFilterReport {
        scope: format!(
            "antichain, chain-condition, and dense-set claims range over the explicit \
             covering domain: nonempty fragment subsets of size <= {domain_max}"
        ),
        fragment_size: fragment.len(),
        theory_size: cp.theory.len(),
        condition_count: cp.members.len(),
        quotient_classes: cp.quotient.classes.len(),
        generic_size: run.generic.len(),
        models: cp.models(),
        truth_implies_membership: claim_a,
        compatibility_bridge: claim_b,
        chain_condition: claim_c,
        filter_laws: claim_d,
        genericity: claim_e,
        dense_meeting: claim_f,
        dense_details,
        reconstruction,
        all_pass,
    })
}
