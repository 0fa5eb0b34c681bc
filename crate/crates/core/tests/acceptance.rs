//! Acceptance suite: one test per criterion, each printing a pass line.
//!
//! The pipeline battery (criteria 3-5) is cross-checked by `recheck`, a
//! brute-force re-derivation of every artifact and claim that shares no
//! code with the pipeline beyond the formula data type itself.

use forcelab::bukovsky::{
    run_pipeline, verify_claims, GenericFilterReport, PipelineConfig, PipelineRun,
};
use forcelab::formula::{AtomUniverse, Formula};
use forcelab::multiverse::{
    canonical_button_model, check_independence, check_s42, IndependenceFailure, KripkeFrame,
};
use forcelab::poset::{fn_poset, product, FinitePreorder};
use forcelab::proof::{
    audit_soundness, axiom_leaf, build_mp, build_r1, build_r2, check_proof, hypothesis,
    recognize_axiom, ProofTree,
};
use forcelab::semantics::{entails, Theory, Valuation};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::collections::BTreeSet;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

fn u(mu: usize) -> AtomUniverse {
    AtomUniverse::new(mu)
}

/// Deterministic sampler for small formulas.
fn random_formula(rng: &mut StdRng, mu: u32, depth: usize) -> Formula {
    if depth == 0 || rng.random_range(0..4) == 0 {
        let i = rng.random_range(0..mu);
        return if rng.random_bool(0.5) {
            Formula::atom(i)
        } else {
            Formula::neg(Formula::atom(i))
        };
    }
    match rng.random_range(0..3) {
        0 => Formula::neg(random_formula(rng, mu, depth - 1)),
        1 => {
            let k = rng.random_range(0..3);
            Formula::big_or((0..k).map(|_| random_formula(rng, mu, depth - 1)))
        }
        _ => {
            let k = rng.random_range(0..3);
            Formula::big_and((0..k).map(|_| random_formula(rng, mu, depth - 1)))
        }
    }
}

/// Grows a random derivation, adding whatever hypotheses the rules need.
fn random_proof(rng: &mut StdRng, mu: u32, depth: usize, hyps: &mut Vec<Formula>) -> ProofTree {
    let leaf = |rng: &mut StdRng, hyps: &mut Vec<Formula>| {
        if rng.random_bool(0.5) {
            // a recognizable schema instance: f -> (or ... f ...)
            let member = random_formula(rng, mu, 1);
            let mut phi: Vec<Formula> =
                (0..rng.random_range(0..2)).map(|_| random_formula(rng, mu, 1)).collect();
            phi.push(member.clone());
            axiom_leaf(Formula::imp(member, Formula::big_or(phi))).expect("constructed instance")
        } else {
            let f = random_formula(rng, mu, 2);
            hyps.push(f.clone());
            hypothesis(f)
        }
    };
    if depth == 0 {
        return leaf(rng, hyps);
    }
    match rng.random_range(0..4) {
        0 => leaf(rng, hyps),
        1 => {
            let minor = random_proof(rng, mu, depth - 1, hyps);
            let conclusion = random_formula(rng, mu, 2);
            let major_label = Formula::imp(minor.label.clone(), conclusion);
            hyps.push(major_label.clone());
            build_mp(minor, hypothesis(major_label)).expect("shapes fit by construction")
        }
        2 => {
            let conclusion = random_formula(rng, mu, 1);
            let phi: Vec<Formula> =
                (0..rng.random_range(1..4)).map(|_| random_formula(rng, mu, 1)).collect();
            let premises: Vec<ProofTree> = phi
                .iter()
                .map(|f| {
                    let lab = Formula::imp(f.clone(), conclusion.clone());
                    hyps.push(lab.clone());
                    hypothesis(lab)
                })
                .collect();
            build_r1(premises, phi, conclusion).expect("premises cover the set")
        }
        _ => {
            let antecedent = random_formula(rng, mu, 1);
            let psi: Vec<Formula> =
                (0..rng.random_range(1..4)).map(|_| random_formula(rng, mu, 1)).collect();
            let premises: Vec<ProofTree> = psi
                .iter()
                .map(|f| {
                    let lab = Formula::imp(antecedent.clone(), f.clone());
                    hyps.push(lab.clone());
                    hypothesis(lab)
                })
                .collect();
            build_r2(premises, antecedent, psi).expect("premises cover the set")
        }
    }
}

#[test]
fn criterion_01_kernel_soundness() {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0);
    let mut accepted = 0;
    for round in 0..220 {
        let mu = rng.random_range(1..=4u32);
        let mut hyps = Vec::new();
        let depth = rng.random_range(1..=3);
        let tree = random_proof(&mut rng, mu, depth, &mut hyps);
        let theory = Theory::new(hyps);
        let report = check_proof(&tree, &theory);
        assert!(report.accepted, "round {round}: generated proof rejected: {report:?}");
        accepted += 1;
        let violation = audit_soundness(&tree, &theory, u(mu as usize)).unwrap();
        assert_eq!(violation, None, "round {round}: accepted proof failed the audit");
    }
    assert!(accepted >= 200);
    assert!(start.elapsed() < Duration::from_secs(10));
    println!("criterion 1 (kernel soundness, {accepted} proofs): PASS");
}

#[test]
fn criterion_02_axiom_validity() {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(1);
    let uu = u(4);
    let mut checked = 0;
    for _ in 0..63 {
        let mut instances: Vec<Formula> = Vec::new();
        let member = random_formula(&mut rng, 4, 2);
        let mut phi: Vec<Formula> =
            (0..2).map(|_| random_formula(&mut rng, 4, 2)).collect();
        phi.push(member.clone());
        // A2, both forms
        instances.push(Formula::imp(member.clone(), Formula::big_or(phi.clone())));
        instances.push(Formula::imp(Formula::big_and(phi.clone()), member));
        // A3, both forms
        let negs: Vec<Formula> = phi.iter().map(|g| Formula::neg(g.clone())).collect();
        instances.push(Formula::iff(
            Formula::neg(Formula::big_and(phi.clone())),
            Formula::big_or(negs.clone()),
        ));
        instances.push(Formula::iff(
            Formula::neg(Formula::big_or(phi.clone())),
            Formula::big_and(negs),
        ));
        // A4, both forms
        let outer = random_formula(&mut rng, 4, 2);
        instances.push(Formula::iff(
            Formula::big_and([outer.clone(), Formula::big_or(phi.clone())]),
            Formula::big_or(phi.iter().map(|g| Formula::big_and([outer.clone(), g.clone()]))),
        ));
        instances.push(Formula::iff(
            Formula::big_or([outer.clone(), Formula::big_and(phi.clone())]),
            Formula::big_and(phi.iter().map(|g| Formula::big_or([outer.clone(), g.clone()]))),
        ));
        // A1: substitution instances of finitary tautologies
        let a = random_formula(&mut rng, 4, 2);
        let b = random_formula(&mut rng, 4, 2);
        instances.push(Formula::big_or([Formula::neg(a.clone()), a.clone()]));
        instances.push(Formula::imp(Formula::neg(Formula::neg(a.clone())), a.clone()));
        instances.push(Formula::imp(a.clone(), Formula::neg(Formula::neg(a.clone()))));
        instances.push(Formula::imp(Formula::big_and([a.clone(), b.clone()]), a.clone()));

        for inst in instances {
            assert!(
                recognize_axiom(&inst).is_some(),
                "constructed instance not recognized: {inst}"
            );
            let verdict = entails(&Theory::empty(), &inst, uu).unwrap();
            assert!(verdict.holds, "axiom instance refuted: {inst}");
            checked += 1;
        }
    }
    assert!(checked >= 500, "only {checked} instances sampled");
    assert!(start.elapsed() < Duration::from_secs(10));
    println!("criterion 2 (axiom validity, {checked} instances): PASS");
}

/// Independent brute-force re-derivation of a pipeline run. Everything here
/// is computed from definitions with its own evaluator and loops; nothing
/// calls back into the pipeline.
mod recheck {
    use super::*;

    fn truth(assignment: &[bool], f: &Formula) -> bool {
        match f {
            Formula::Atom(i) => assignment[*i as usize],
            Formula::Neg(g) => !truth(assignment, g),
            Formula::BigOr(args) => {
                let mut any = false;
                for a in args.iter() {
                    if truth(assignment, a) {
                        any = true;
                    }
                }
                any
            }
            Formula::BigAnd(args) => {
                let mut all = true;
                for a in args.iter() {
                    if !truth(assignment, a) {
                        all = false;
                    }
                }
                all
            }
        }
    }

    fn assignments(mu: usize) -> Vec<Vec<bool>> {
        (0..(1usize << mu))
            .map(|bits| (0..mu).map(|i| bits & (1 << i) != 0).collect())
            .collect()
    }

    pub fn verify(run: &PipelineRun, report: &GenericFilterReport) {
        let mu = run.config.universe.mu;
        let fragment: &[Formula] = &run.poset.fragment;
        let n = fragment.len();

        // models of the theory, by definition
        let models: Vec<Vec<bool>> = assignments(mu)
            .into_iter()
            .filter(|a| run.poset.theory.iter().all(|t| truth(a, t)))
            .collect();
        let reported: BTreeSet<Vec<u32>> =
            report.models.iter().map(|v| v.members()).collect();
        let own: BTreeSet<Vec<u32>> = models
            .iter()
            .map(|a| {
                (0..mu as u32).filter(|&i| a[i as usize]).collect::<Vec<u32>>()
            })
            .collect();
        assert_eq!(own, reported, "model sets disagree");

        // truth table of the fragment over the models
        let table: Vec<Vec<bool>> = fragment
            .iter()
            .map(|f| models.iter().map(|a| truth(a, f)).collect())
            .collect();
        let member = |i: usize| table[i].iter().any(|&b| b);
        let leq = |a: usize, b: usize| {
            table[a].iter().zip(&table[b]).all(|(&x, &y)| !x || y)
        };
        let compat = |a: usize, b: usize| {
            table[a].iter().zip(&table[b]).any(|(&x, &y)| x && y)
        };
        for i in 0..n {
            assert_eq!(member(i), run.poset.membership[i], "membership of `{}`", fragment[i]);
        }
        let members: Vec<usize> = (0..n).filter(|&i| member(i)).collect();
        for &a in &members {
            for &b in &members {
                assert_eq!(
                    Some(leq(a, b)),
                    run.poset.leq(a as u32, b as u32),
                    "order at `{}` <= `{}`",
                    fragment[a],
                    fragment[b]
                );
            }
        }

        // the generic filter, by definition
        let target: Vec<bool> =
            (0..mu).map(|i| run.config.target.contains(i as u32)).collect();
        let own_generic: Vec<u32> = members
            .iter()
            .copied()
            .filter(|&i| truth(&target, &fragment[i]))
            .map(|i| i as u32)
            .collect();
        assert_eq!(own_generic, run.generic, "generic filters disagree");
        let in_generic = |i: usize| own_generic.binary_search(&(i as u32)).is_ok();

        // (a)
        let mut a_pass = true;
        for i in 0..n {
            if truth(&target, &fragment[i]) && !member(i) {
                a_pass = false;
            }
        }
        assert_eq!(a_pass, report.truth_implies_membership.pass, "(a) disagrees");

        // (b): for member pairs with the conjunction in the fragment,
        // compatibility by common-extension search equals oracle consistency
        let mut b_pass = true;
        let mut b_checked = 0;
        for (x, &a) in members.iter().enumerate() {
            for &b in members.iter().skip(x) {
                let conj = Formula::big_and([fragment[a].clone(), fragment[b].clone()]);
                let Some(c) = fragment.iter().position(|f| *f == conj) else {
                    continue;
                };
                b_checked += 1;
                let by_search = members.iter().any(|&r| leq(r, a) && leq(r, b));
                let by_oracle = member(c);
                if by_search != by_oracle {
                    b_pass = false;
                }
            }
        }
        assert_eq!(b_pass, report.compatibility_bridge.pass, "(b) disagrees");
        assert_eq!(b_checked, report.compatibility_bridge.checked, "(b) counts disagree");

        // (c): domain antichains are fixed by the covering and small
        let mut c_pass = true;
        let mut c_checked = 0;
        for e in &run.covering.entries {
            let gamma: Vec<usize> = e.gamma.iter().map(|&i| i as usize).collect();
            if !gamma.iter().all(|&i| member(i)) {
                continue;
            }
            let mut antichain = true;
            for (x, &a) in gamma.iter().enumerate() {
                for &b in gamma.iter().skip(x + 1) {
                    if compat(a, b) {
                        antichain = false;
                    }
                }
            }
            if !antichain {
                continue;
            }
            c_checked += 1;
            if e.image != e.gamma || gamma.len() >= run.config.kappa {
                c_pass = false;
            }
        }
        assert_eq!(c_pass, report.chain_condition.pass, "(c) disagrees");
        assert_eq!(c_checked, report.chain_condition.checked, "(c) counts disagree");

        // (d): filter laws
        let mut d_pass = !members.is_empty() == !own_generic.is_empty();
        for &a in &own_generic {
            for &b in &members {
                if leq(a as usize, b) && !in_generic(b) {
                    d_pass = false;
                }
            }
        }
        for &a in &own_generic {
            for &b in &own_generic {
                let bounded = own_generic
                    .iter()
                    .any(|&h| leq(h as usize, a as usize) && leq(h as usize, b as usize));
                if !bounded {
                    d_pass = false;
                }
            }
        }
        assert_eq!(d_pass, report.filter_laws.pass, "(d) disagrees");

        // (e): maximal domain antichains with expressible complement meet
        // the filter
        let mut e_pass = true;
        let mut e_checked = 0;
        for e in &run.covering.entries {
            let gamma: Vec<usize> = e.gamma.iter().map(|&i| i as usize).collect();
            if !gamma.iter().all(|&i| member(i)) {
                continue;
            }
            let mut antichain = true;
            for (x, &a) in gamma.iter().enumerate() {
                for &b in gamma.iter().skip(x + 1) {
                    if compat(a, b) {
                        antichain = false;
                    }
                }
            }
            if !antichain {
                continue;
            }
            let maximal = members.iter().all(|&p| gamma.iter().any(|&x| compat(p, x)));
            if !maximal {
                continue;
            }
            let join = Formula::big_or(gamma.iter().map(|&i| fragment[i].clone()));
            let complement = Formula::neg(join);
            if !fragment.iter().any(|f| *f == complement) {
                continue;
            }
            e_checked += 1;
            if !gamma.iter().any(|&x| in_generic(x)) {
                e_pass = false;
            }
        }
        assert_eq!(e_pass, report.genericity.pass, "(e) disagrees");
        assert_eq!(e_checked, report.genericity.checked, "(e) counts disagree");

        // (f): each checked dense set meets the filter
        let mut f_pass = true;
        let mut f_checked = 0;
        for (d, _) in &run.dense_sets {
            let dd: Vec<usize> = d.iter().map(|&i| i as usize).collect();
            if !dd.iter().all(|&i| member(i)) {
                continue;
            }
            let dense = members.iter().all(|&p| dd.iter().any(|&x| leq(x, p)));
            if !dense {
                continue;
            }
            let Some(entry) = run.covering.find(d) else { continue };
            let join =
                Formula::big_or(entry.image.iter().map(|&i| fragment[i as usize].clone()));
            if !fragment.iter().any(|f| *f == Formula::neg(join.clone())) {
                continue;
            }
            f_checked += 1;
            if !dd.iter().any(|&x| in_generic(x)) {
                f_pass = false;
            }
        }
        assert_eq!(f_pass, report.dense_meeting.pass, "(f) disagrees");
        assert_eq!(f_checked, report.dense_meeting.checked, "(f) counts disagree");

        // reconstruction
        let mut atoms: Vec<u32> = Vec::new();
        for &i in &own_generic {
            if let Formula::Atom(a) = &fragment[i as usize] {
                atoms.push(*a);
            }
        }
        atoms.sort_unstable();
        assert_eq!(
            atoms == run.config.target.members(),
            report.reconstruction.pass,
            "reconstruction disagrees"
        );
    }
}

struct Battery {
    runs: Vec<(String, PipelineRun, GenericFilterReport)>,
    elapsed: Duration,
}

fn battery() -> &'static Battery {
    static BATTERY: OnceLock<Battery> = OnceLock::new();
    BATTERY.get_or_init(|| {
        let start = Instant::now();
        let mut runs = Vec::new();
        for mu in 1..=3usize {
            for kappa in [2usize, 3] {
                for bits in 0..(1u32 << mu) {
                    let target = Valuation::from_bits(bits, mu);
                    let cfg = PipelineConfig::new(u(mu), target, kappa);
                    let run = run_pipeline(cfg).expect("battery configuration is valid");
                    let report = verify_claims(&run).expect("battery claims run");
                    runs.push((format!("mu={mu} kappa={kappa} target={target}"), run, report));
                }
            }
        }
        Battery { runs, elapsed: start.elapsed() }
    })
}

#[test]
fn criterion_03_pipeline_battery() {
    let battery = battery();
    assert_eq!(battery.runs.len(), 28);
    let mut nonvacuous = [0usize; 6];
    for (desc, run, report) in &battery.runs {
        assert!(report.all_pass, "{desc}: {report:#?}");
        recheck::verify(run, report);
        for (k, c) in [
            &report.truth_implies_membership,
            &report.compatibility_bridge,
            &report.chain_condition,
            &report.filter_laws,
            &report.genericity,
            &report.dense_meeting,
        ]
        .iter()
        .enumerate()
        {
            if c.checked > 0 {
                nonvacuous[k] += 1;
            }
        }
    }
    assert!(
        nonvacuous.iter().all(|&n| n > 0),
        "some claim was vacuous across the whole grid: {nonvacuous:?}"
    );
    assert!(battery.elapsed < Duration::from_secs(60), "battery took {:?}", battery.elapsed);
    println!(
        "criterion 3 (pipeline battery, {} runs, cross-checked): PASS",
        battery.runs.len()
    );
}

#[test]
fn criterion_04_degenerate_completeness() {
    let start = Instant::now();
    let target = Valuation::from_members([0u32], 2).unwrap();
    let cfg = PipelineConfig::new(u(2), target, 2);
    let run = run_pipeline(cfg).unwrap();

    // independent oracle: enumerate the 4 valuations directly
    let assignments: [[bool; 2]; 4] =
        [[false, false], [true, false], [false, true], [true, true]];
    fn truth(a: &[bool; 2], f: &Formula) -> bool {
        match f {
            Formula::Atom(i) => a[*i as usize],
            Formula::Neg(g) => !truth(a, g),
            Formula::BigOr(args) => args.iter().any(|g| truth(a, g)),
            Formula::BigAnd(args) => args.iter().all(|g| truth(a, g)),
        }
    }
    let models: Vec<&[bool; 2]> = assignments
        .iter()
        .filter(|a| run.poset.theory.iter().all(|t| truth(a, t)))
        .collect();
    assert_eq!(models, vec![&[true, false]], "the target must be the unique model");
    assert_eq!(run.poset.quotient.classes.len(), 1, "quotient must collapse to one class");
    assert!(start.elapsed() < Duration::from_secs(1));
    println!("criterion 4 (degenerate completeness): PASS");
}

#[test]
fn criterion_05_reconstruction_identity() {
    let battery = battery();
    for (desc, run, report) in &battery.runs {
        assert!(report.reconstruction.pass, "{desc}");
        let mut atoms = Vec::new();
        for &i in &run.generic {
            if let Formula::Atom(a) = &run.poset.fragment[i as usize] {
                atoms.push(*a);
            }
        }
        atoms.sort_unstable();
        assert_eq!(atoms, run.config.target.members(), "{desc}");
    }
    println!("criterion 5 (reconstruction identity on {} runs): PASS", battery.runs.len());
}

#[test]
fn criterion_06_fn_poset_combinatorics() {
    let start = Instant::now();
    let fp = fn_poset(3, 2, 2, 200).unwrap();
    assert_eq!(fp.elements.len(), 7);
    assert_eq!(fp.max_antichain(24).unwrap().size, 2);
    for kappa in 1..=4usize {
        for lambda in 1..=4usize {
            let fp = fn_poset(kappa, lambda, 2, 200).unwrap();
            assert_eq!(
                fp.max_antichain(24).unwrap().size,
                lambda,
                "Fn({kappa},{lambda},2)"
            );
        }
    }
    assert!(start.elapsed() < Duration::from_secs(5));
    println!("criterion 6 (partial-function poset combinatorics): PASS");
}

fn random_preorder(rng: &mut StdRng, max_worlds: usize) -> FinitePreorder {
    let n = rng.random_range(1..=max_worlds);
    let mut leq = vec![false; n * n];
    for i in 0..n {
        leq[i * n + i] = true;
    }
    for a in 0..n {
        for b in 0..n {
            if a != b && rng.random_bool(0.3) {
                leq[a * n + b] = true;
            }
        }
    }
    // transitive closure
    for k in 0..n {
        for a in 0..n {
            for b in 0..n {
                if leq[a * n + k] && leq[k * n + b] {
                    leq[a * n + b] = true;
                }
            }
        }
    }
    let labels = (0..n).map(|i| format!("w{i}")).collect();
    FinitePreorder::from_leq_matrix(labels, leq).expect("closure is a preorder")
}

#[test]
fn criterion_07_product_factoring() {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(7);
    let one = FinitePreorder::new(vec!["*".into()], &[(0, 0)]).unwrap();
    for round in 0..20 {
        let mut factors = Vec::new();
        for _ in 0..rng.random_range(1..=3) {
            factors.push(random_preorder(&mut rng, 3));
        }
        // splice one-element factors at random positions
        let mut with_units = factors.clone();
        for _ in 0..rng.random_range(1..=2) {
            let pos = rng.random_range(0..=with_units.len());
            with_units.insert(pos, one.clone());
        }
        let full = product(&with_units, 4096).unwrap();
        let reduced = product(&factors, 4096).unwrap();
        assert_eq!(full.n(), reduced.n(), "round {round}");
        for i in 0..full.n() {
            for j in 0..full.n() {
                assert_eq!(full.leq(i, j), reduced.leq(i, j), "round {round} at ({i},{j})");
            }
        }
    }
    assert!(start.elapsed() < Duration::from_secs(5));
    println!("criterion 7 (product factoring, 20 rounds): PASS");
}

#[test]
fn criterion_08_independence() {
    let start = Instant::now();
    for n in 0..=4usize {
        for m in 0..=4usize {
            let (fr, lab) = canonical_button_model(n, m, 256).unwrap();
            let report = check_independence(&fr, &lab, 0, n).unwrap();
            assert!(report.pass, "canonical model ({n},{m})");
        }
    }

    // deleting any single non-root world of the (2,0) model breaks it
    let (fr, lab) = canonical_button_model(2, 0, 64).unwrap();
    for removed in 1..fr.n() {
        let keep: Vec<usize> = (0..fr.n()).filter(|&w| w != removed).collect();
        let mut pairs = Vec::new();
        for (ai, &a) in keep.iter().enumerate() {
            for (bi, &b) in keep.iter().enumerate() {
                if fr.sees(a, b) {
                    pairs.push((ai, bi));
                }
            }
        }
        let small = KripkeFrame::new(keep.len(), &pairs).unwrap();
        let mut small_lab = forcelab::multiverse::WorldLabeling::new(2, 0, keep.len());
        for (wi, &w) in keep.iter().enumerate() {
            for i in 0..2 {
                small_lab.set(i, wi, lab.get(i, w));
            }
        }
        let report = check_independence(&small, &small_lab, 0, 2).unwrap();
        assert!(!report.pass, "deleting world {removed} should break independence");
        assert!(matches!(
            report.counterexample,
            Some(IndependenceFailure::TargetUnreachable { .. })
        ));
    }
    assert!(start.elapsed() < Duration::from_secs(10));
    println!("criterion 8 (independent buttons): PASS");
}

#[test]
fn criterion_09_s42() {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(9);
    let mut found = 0;
    let mut attempts = 0;
    while found < 100 {
        attempts += 1;
        assert!(attempts < 10_000, "directed preorders should not be this rare");
        let p = random_preorder(&mut rng, 6);
        // frame with the same relation
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for a in 0..p.n() {
            for b in 0..p.n() {
                if p.leq(a, b) {
                    pairs.push((a, b));
                }
            }
        }
        let fr = KripkeFrame::new(p.n(), &pairs).unwrap();
        if !fr.is_directed() {
            continue;
        }
        found += 1;
        let report = check_s42(&fr, 2).unwrap();
        assert!(report.directed);
        assert!(report.all_valid(), "axioms failed on a directed preorder: {report:?}");
    }

    // the fork refutes the convergence axiom
    let fork = KripkeFrame::new(3, &[(0, 0), (1, 1), (2, 2), (0, 1), (0, 2)]).unwrap();
    let report = check_s42(&fork, 2).unwrap();
    assert!(!report.directed);
    assert!(report.k.valid && report.t.valid && report.four.valid);
    assert!(!report.dot2.valid);
    assert!(report.dot2.counterexample.is_some());
    assert!(start.elapsed() < Duration::from_secs(30));
    println!("criterion 9 (S4.2 on 100 directed preorders): PASS");
}
