//! Batch front door: formula queries, proof checking, the covering
//! pipeline, poset utilities, and frame checks.
//!
//! Exit codes: 0 when everything checked holds, 1 when a property was
//! refuted (the report carries a witness), 2 for malformed input or usage,
//! 3 when a resource cap was exceeded.

mod config;

use clap::{Args, Parser, Subcommand};
use forcelab::bukovsky::{self, PipelineError};
use forcelab::formula::{parse_formula, parse_formula_file, AtomUniverse};
use forcelab::multiverse::{self, FrameError};
use forcelab::poset::{self, PosetError};
use forcelab::proof;
use forcelab::semantics::{self, SemanticsError, Theory, Valuation};
use serde::Serialize;
use std::fmt::Write as _;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "forcelab", version, about = "Finite-scale forcing-logic toolbox")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Report format.
    #[arg(long, global = true, value_parser = ["human", "machine"], default_value = "human")]
    format: String,
    /// Seed echoed into reports; all current checks are exhaustive.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Cap on mu for exhaustive valuation sweeps.
    #[arg(long, global = true, default_value_t = 20)]
    max_mu: usize,
    /// Cap on poset sizes for generation and antichain search.
    #[arg(long, global = true, default_value_t = 24)]
    max_poset: usize,
    /// Cap on generated frame sizes.
    #[arg(long, global = true, default_value_t = 4096)]
    max_worlds: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Formula evaluation and entailment.
    Fml {
        #[command(subcommand)]
        cmd: FmlCmd,
    },
    /// Proof checking against a hypothesis file.
    Proof {
        #[command(subcommand)]
        cmd: ProofCmd,
    },
    /// The covering-function pipeline.
    Buk {
        #[command(subcommand)]
        cmd: BukCmd,
    },
    /// Finite preorder and partial-function poset utilities.
    Poset {
        #[command(subcommand)]
        cmd: PosetCmd,
    },
    /// Kripke-frame multiverse checks.
    Mv {
        #[command(subcommand)]
        cmd: MvCmd,
    },
}

#[derive(Subcommand)]
enum FmlCmd {
    /// Evaluate a formula under a valuation.
    Eval(FmlEvalArgs),
    /// Does the theory entail the formula at every valuation?
    Entails(FmlEntailsArgs),
}

#[derive(Args)]
struct FmlEvalArgs {
    /// Number of atoms.
    #[arg(long)]
    mu: usize,
    /// Comma-separated true atoms, e.g. `0,2`; empty for none.
    #[arg(long, default_value = "")]
    valuation: String,
    formula: String,
}

#[derive(Args)]
struct FmlEntailsArgs {
    #[arg(long)]
    mu: usize,
    /// Theory file: one formula per line, `#` comments.
    #[arg(long)]
    theory: Option<String>,
    formula: String,
}

#[derive(Subcommand)]
enum ProofCmd {
    /// Check a proof file; optionally audit every node semantically.
    Check(ProofCheckArgs),
}

#[derive(Args)]
struct ProofCheckArgs {
    file: String,
    #[arg(long)]
    mu: usize,
    /// Hypothesis file: one formula per line.
    #[arg(long)]
    hyp: Option<String>,
    /// Also verify that the hypotheses entail every node label.
    #[arg(long)]
    audit: bool,
}

#[derive(Subcommand)]
enum BukCmd {
    /// Run the pipeline described by a TOML configuration.
    Run { config: String },
}

#[derive(Subcommand)]
enum PosetCmd {
    /// Generate the poset of partial functions with small domains.
    Fn { kappa: usize, lambda: usize, mu: usize },
    /// Analyze a poset file; optionally check supplied subsets.
    Analyze(PosetAnalyzeArgs),
}

#[derive(Args)]
struct PosetAnalyzeArgs {
    file: String,
    /// Comma-separated element labels that should be dense (repeatable).
    #[arg(long)]
    dense: Vec<String>,
    /// Comma-separated element labels that should form a filter (repeatable).
    #[arg(long)]
    filter: Vec<String>,
}

#[derive(Subcommand)]
enum MvCmd {
    /// Emit the canonical model with N buttons and M switches.
    Gen { buttons: usize, switches: usize },
    /// Check a frame file.
    Check(MvCheckArgs),
}

#[derive(Args)]
struct MvCheckArgs {
    file: String,
    /// Check independence of the first N buttons.
    #[arg(long)]
    independence: Option<usize>,
    /// World to check independence from.
    #[arg(long, default_value_t = 0)]
    root: usize,
    /// Sweep the S4.2 axioms.
    #[arg(long)]
    s42: bool,
}

enum CliError {
    Input(String),
    Cap(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Cap(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Cap(m) => m,
        }
    }
}

struct CommandOutput {
    machine: String,
    human: String,
    refuted: bool,
}

fn envelope<T: Serialize>(command: &str, seed: u64, report: &T) -> String {
    #[derive(Serialize)]
    struct Env<'a, T: Serialize> {
        tool: &'static str,
        version: &'static str,
        command: &'a str,
        seed: u64,
        report: &'a T,
    }
    let mut s = serde_json::to_string_pretty(&Env {
        tool: "forcelab",
        version: env!("CARGO_PKG_VERSION"),
        command,
        seed,
        report,
    })
    .expect("reports serialize");
    s.push('\n');
    s
}

fn read_file(path: &str) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{path}: {e}")))
}

fn input<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Input(e.to_string())
}

fn from_semantics(e: SemanticsError) -> CliError {
    match e {
        SemanticsError::MuCapExceeded { .. } => CliError::Cap(e.to_string()),
        other => CliError::Input(other.to_string()),
    }
}

fn from_poset(e: PosetError) -> CliError {
    match e {
        PosetError::CapExceeded { .. } => CliError::Cap(e.to_string()),
        other => CliError::Input(other.to_string()),
    }
}

fn from_frame(e: FrameError) -> CliError {
    match e {
        FrameError::WorldCapExceeded { .. } | FrameError::SweepWorldLimit { .. } => {
            CliError::Cap(e.to_string())
        }
        other => CliError::Input(other.to_string()),
    }
}

fn parse_valuation(text: &str, mu: usize) -> Result<Valuation, CliError> {
    let mut members = Vec::new();
    for part in text.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let i: u32 = part
            .parse()
            .map_err(|_| CliError::Input(format!("bad atom index `{part}` in valuation")))?;
        members.push(i);
    }
    Valuation::from_members(members, mu).map_err(from_semantics)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = dispatch(&cli);
    match result {
        Ok(out) => {
            if cli.format == "machine" {
                print!("{}", out.machine);
            } else {
                print!("{}", out.human);
            }
            if out.refuted {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn dispatch(cli: &Cli) -> Result<CommandOutput, CliError> {
    match &cli.command {
        Command::Fml { cmd } => match cmd {
            FmlCmd::Eval(args) => fml_eval(cli, args),
            FmlCmd::Entails(args) => fml_entails(cli, args),
        },
        Command::Proof { cmd } => match cmd {
            ProofCmd::Check(args) => proof_check(cli, args),
        },
        Command::Buk { cmd } => match cmd {
            BukCmd::Run { config } => buk_run(cli, config),
        },
        Command::Poset { cmd } => match cmd {
            PosetCmd::Fn { kappa, lambda, mu } => poset_fn(cli, *kappa, *lambda, *mu),
            PosetCmd::Analyze(args) => poset_analyze(cli, args),
        },
        Command::Mv { cmd } => match cmd {
            MvCmd::Gen { buttons, switches } => mv_gen(cli, *buttons, *switches),
            MvCmd::Check(args) => mv_check(cli, args),
        },
    }
}

fn fml_eval(cli: &Cli, args: &FmlEvalArgs) -> Result<CommandOutput, CliError> {
    let u = AtomUniverse::new(args.mu);
    let f = parse_formula(&args.formula, u).map_err(input)?;
    let b = parse_valuation(&args.valuation, args.mu)?;
    let value = semantics::eval(&b, &f).map_err(from_semantics)?;

    #[derive(Serialize)]
    struct Report {
        formula: String,
        valuation: Valuation,
        value: bool,
    }
    let report = Report { formula: f.to_string(), valuation: b, value };
    Ok(CommandOutput {
        machine: envelope("fml eval", cli.seed, &report),
        human: format!("{f} under {b}: {value}\n"),
        refuted: false,
    })
}

fn fml_entails(cli: &Cli, args: &FmlEntailsArgs) -> Result<CommandOutput, CliError> {
    let u = AtomUniverse::new(args.mu);
    let f = parse_formula(&args.formula, u).map_err(input)?;
    let gamma = match &args.theory {
        Some(path) => Theory::new(parse_formula_file(&read_file(path)?, u).map_err(input)?),
        None => Theory::empty(),
    };
    let verdict =
        semantics::entails_with_cap(&gamma, &f, u, cli.max_mu).map_err(from_semantics)?;

    #[derive(Serialize)]
    struct Report {
        formula: String,
        theory_size: usize,
        verdict: semantics::EntailmentVerdict,
    }
    let human = if verdict.holds {
        format!("entails {f}: yes\n")
    } else {
        let b = verdict.countermodel.expect("refutation carries a countermodel");
        format!("entails {f}: no, countermodel {b}\n")
    };
    let refuted = !verdict.holds;
    let report = Report { formula: f.to_string(), theory_size: gamma.len(), verdict };
    Ok(CommandOutput {
        machine: envelope("fml entails", cli.seed, &report),
        human,
        refuted,
    })
}

fn proof_check(cli: &Cli, args: &ProofCheckArgs) -> Result<CommandOutput, CliError> {
    let u = AtomUniverse::new(args.mu);
    let tree = proof::parse_proof(&read_file(&args.file)?, u).map_err(input)?;
    let hyps = match &args.hyp {
        Some(path) => Theory::new(parse_formula_file(&read_file(path)?, u).map_err(input)?),
        None => Theory::empty(),
    };
    let report = proof::check_proof(&tree, &hyps);
    let audit = if args.audit && report.accepted {
        Some(proof::audit_soundness(&tree, &hyps, u).map_err(from_semantics)?)
    } else {
        None
    };

    #[derive(Serialize)]
    struct Report {
        nodes: usize,
        check: proof::CheckReport,
        audit_violation: Option<Option<proof::NodePath>>,
    }
    let mut human = String::new();
    if report.accepted {
        let _ = writeln!(
            human,
            "accepted; conclusion: {}",
            report.conclusion.as_ref().expect("accepted proofs conclude")
        );
    } else {
        let failure = report.failure.as_ref().expect("rejections carry a failure");
        let _ = writeln!(human, "rejected at node {:?}: {}", failure.path, failure.reason);
    }
    let mut refuted = !report.accepted;
    if let Some(v) = &audit {
        match v {
            None => {
                let _ = writeln!(human, "audit: every node entailed by the hypotheses");
            }
            Some(path) => {
                let _ = writeln!(human, "audit: node {path:?} not entailed");
                refuted = true;
            }
        }
    }
    let report = Report { nodes: tree.node_count(), check: report, audit_violation: audit };
    Ok(CommandOutput {
        machine: envelope("proof check", cli.seed, &report),
        human,
        refuted,
    })
}

fn buk_run(cli: &Cli, config_path: &str) -> Result<CommandOutput, CliError> {
    let cfg = config::load_config(&read_file(config_path)?).map_err(CliError::Input)?;

    #[derive(Serialize)]
    struct Report {
        mu: usize,
        target: Vec<u32>,
        kappa: usize,
        covering: bukovsky::CoveringReport,
        outcome: Outcome,
    }
    #[derive(Serialize)]
    enum Outcome {
        Verified(bukovsky::GenericFilterReport),
        TheoryInconsistent { covering_violations: Vec<String> },
    }

    let mu = cfg.universe.mu;
    let target = cfg.target.members();
    let kappa = cfg.kappa;
    match bukovsky::run_pipeline(cfg) {
        Ok(run) => {
            let verification = bukovsky::verify_claims(&run).map_err(from_pipeline)?;
            let human = render_buk_human(&run, &verification);
            let refuted = !verification.all_pass;
            let report = Report {
                mu,
                target,
                kappa,
                covering: run.covering_report.clone(),
                outcome: Outcome::Verified(verification),
            };
            Ok(CommandOutput { machine: envelope("buk run", cli.seed, &report), human, refuted })
        }
        Err(PipelineError::InconsistentTheory { covering_violations }) => {
            let mut human = String::from("theory inconsistent: no valuation models it\n");
            for v in &covering_violations {
                let _ = writeln!(human, "covering violation: {v}");
            }
            let report = Report {
                mu,
                target,
                kappa,
                covering: bukovsky::CoveringReport::default(),
                outcome: Outcome::TheoryInconsistent { covering_violations },
            };
            Ok(CommandOutput {
                machine: envelope("buk run", cli.seed, &report),
                human,
                refuted: true,
            })
        }
        Err(e) => Err(from_pipeline(e)),
    }
}

fn from_pipeline(e: PipelineError) -> CliError {
    match e {
        PipelineError::MuCapExceeded { .. } | PipelineError::DomainCapExceeded { .. } => {
            CliError::Cap(e.to_string())
        }
        PipelineError::Semantics(inner) => from_semantics(inner),
        other => CliError::Input(other.to_string()),
    }
}

fn claim_line(name: &str, c: &bukovsky::ClaimResult) -> String {
    let mut line = format!(
        "claim {name}: {} ({} checked, {} skipped)",
        if c.pass { "pass" } else { "FAIL" },
        c.checked,
        c.skipped
    );
    if let Some(w) = &c.witness {
        let _ = write!(line, "; witness: {w}");
    }
    line.push('\n');
    line
}

fn render_buk_human(
    run: &bukovsky::PipelineRun,
    v: &bukovsky::GenericFilterReport,
) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "fragment: {} formulas; covering domain: {} sets; theory: {} formulas",
        v.fragment_size,
        run.covering.entries.len(),
        v.theory_size
    );
    let _ = writeln!(
        out,
        "conditions: {}; quotient classes: {}; generic filter: {} formulas",
        v.condition_count, v.quotient_classes, v.generic_size
    );
    let models: Vec<String> = v.models.iter().map(|m| m.to_string()).collect();
    let _ = writeln!(out, "models of the theory: {}", models.join(" "));
    let _ = writeln!(out, "note: {}", v.scope);
    for violation in &run.covering_report.violations {
        let _ = writeln!(
            out,
            "covering violation: {{{}}} -> {{{}}}: {}",
            violation.gamma.join(", "),
            violation.image.join(", "),
            violation.reason
        );
    }
    out.push_str(&claim_line("(a) truth implies membership", &v.truth_implies_membership));
    out.push_str(&claim_line("(b) compatibility bridge", &v.compatibility_bridge));
    out.push_str(&claim_line("(c) chain condition", &v.chain_condition));
    out.push_str(&claim_line("(d) filter laws", &v.filter_laws));
    out.push_str(&claim_line("(e) genericity", &v.genericity));
    out.push_str(&claim_line("(f) dense meeting", &v.dense_meeting));
    let _ = writeln!(
        out,
        "reconstruction: {} (filter atoms {:?}, target {:?})",
        if v.reconstruction.pass { "pass" } else { "FAIL" },
        v.reconstruction.from_filter,
        v.reconstruction.target
    );
    let _ = writeln!(out, "overall: {}", if v.all_pass { "PASS" } else { "FAIL" });
    out
}

fn poset_fn(cli: &Cli, kappa: usize, lambda: usize, mu: usize) -> Result<CommandOutput, CliError> {
    let fp = poset::fn_poset(kappa, lambda, mu, cli.max_poset).map_err(from_poset)?;
    let preorder = fp.to_preorder();
    let file = poset::render_poset_file(&preorder);

    #[derive(Serialize)]
    struct Report {
        kappa: usize,
        lambda: usize,
        mu: usize,
        elements: usize,
        file: String,
    }
    let report =
        Report { kappa, lambda, mu, elements: fp.elements.len(), file: file.clone() };
    Ok(CommandOutput {
        machine: envelope("poset fn", cli.seed, &report),
        human: file,
        refuted: false,
    })
}

fn poset_analyze(cli: &Cli, args: &PosetAnalyzeArgs) -> Result<CommandOutput, CliError> {
    let p = poset::parse_poset_file(&read_file(&args.file)?).map_err(from_poset)?;
    if p.n() > cli.max_poset {
        return Err(CliError::Cap(format!(
            "poset has {} elements, cap is {}",
            p.n(),
            cli.max_poset
        )));
    }
    let antichain = p.max_antichain(cli.max_poset).map_err(from_poset)?;
    let minimal: Vec<String> =
        p.minimal_elements().iter().map(|&i| p.label(i).to_string()).collect();

    let resolve = |spec: &str| -> Result<Vec<usize>, CliError> {
        spec.split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|name| {
                p.labels()
                    .iter()
                    .position(|l| l == name)
                    .ok_or_else(|| CliError::Input(format!("unknown element label `{name}`")))
            })
            .collect()
    };

    #[derive(Serialize)]
    struct SubsetCheck {
        labels: Vec<String>,
        holds: bool,
    }
    let mut dense_checks = Vec::new();
    for spec in &args.dense {
        let ixs = resolve(spec)?;
        let holds = p.is_dense(&ixs).map_err(from_poset)?;
        dense_checks.push(SubsetCheck {
            labels: ixs.iter().map(|&i| p.label(i).to_string()).collect(),
            holds,
        });
    }
    let mut filter_checks = Vec::new();
    for spec in &args.filter {
        let ixs = resolve(spec)?;
        let holds = p.is_filter(&ixs).map_err(from_poset)?;
        filter_checks.push(SubsetCheck {
            labels: ixs.iter().map(|&i| p.label(i).to_string()).collect(),
            holds,
        });
    }

    #[derive(Serialize)]
    struct Report {
        elements: usize,
        max_antichain: poset::AntichainReport,
        minimal_elements: Vec<String>,
        dense_checks: Vec<SubsetCheck>,
        filter_checks: Vec<SubsetCheck>,
    }
    let refuted = dense_checks.iter().chain(&filter_checks).any(|c| !c.holds);
    let mut human = String::new();
    let _ = writeln!(human, "elements: {}", p.n());
    let _ = writeln!(
        human,
        "max antichain: {} {:?}",
        antichain.size, antichain.witness_labels
    );
    let _ = writeln!(human, "minimal elements: {minimal:?}");
    for c in &dense_checks {
        let _ = writeln!(human, "dense {:?}: {}", c.labels, if c.holds { "yes" } else { "NO" });
    }
    for c in &filter_checks {
        let _ = writeln!(human, "filter {:?}: {}", c.labels, if c.holds { "yes" } else { "NO" });
    }
    let report = Report {
        elements: p.n(),
        max_antichain: antichain,
        minimal_elements: minimal,
        dense_checks,
        filter_checks,
    };
    Ok(CommandOutput {
        machine: envelope("poset analyze", cli.seed, &report),
        human,
        refuted,
    })
}

fn mv_gen(cli: &Cli, buttons: usize, switches: usize) -> Result<CommandOutput, CliError> {
    let (fr, lab) =
        multiverse::canonical_button_model(buttons, switches, cli.max_worlds).map_err(from_frame)?;
    let file = multiverse::render_frame_file(&fr, &lab);

    #[derive(Serialize)]
    struct Report {
        buttons: usize,
        switches: usize,
        worlds: usize,
        file: String,
    }
    let report = Report { buttons, switches, worlds: fr.n(), file: file.clone() };
    Ok(CommandOutput {
        machine: envelope("mv gen", cli.seed, &report),
        human: file,
        refuted: false,
    })
}

fn mv_check(cli: &Cli, args: &MvCheckArgs) -> Result<CommandOutput, CliError> {
    if args.independence.is_none() && !args.s42 {
        return Err(CliError::Input(
            "nothing to check: pass --independence N and/or --s42".into(),
        ));
    }
    let (fr, lab) = multiverse::parse_frame_file(&read_file(&args.file)?).map_err(from_frame)?;

    #[derive(Serialize)]
    struct Report {
        worlds: usize,
        buttons: usize,
        switches: usize,
        independence: Option<multiverse::IndependenceReport>,
        s42: Option<multiverse::S42Report>,
    }
    let mut human = String::new();
    let mut refuted = false;

    let independence = match args.independence {
        Some(n) => {
            let r = multiverse::check_independence(&fr, &lab, args.root, n).map_err(from_frame)?;
            if r.pass {
                let _ = writeln!(human, "independence of {n} buttons from world {}: pass", args.root);
            } else {
                refuted = true;
                let _ = writeln!(
                    human,
                    "independence of {n} buttons from world {}: FAIL ({:?})",
                    args.root,
                    r.counterexample.as_ref().expect("failures carry a counterexample")
                );
            }
            Some(r)
        }
        None => None,
    };
    let s42 = if args.s42 {
        let r = multiverse::check_s42(&fr, 2).map_err(from_frame)?;
        let _ = writeln!(human, "directed: {}", r.directed);
        for (name, check) in
            [("K", &r.k), ("T", &r.t), ("4", &r.four), (".2", &r.dot2)]
        {
            if check.valid {
                let _ = writeln!(human, "axiom {name}: valid");
            } else {
                refuted = true;
                let ce = check.counterexample.as_ref().expect("invalid axioms carry a witness");
                let _ = writeln!(
                    human,
                    "axiom {name}: INVALID at world {} under labeling {:?}",
                    ce.world, ce.labeling
                );
            }
        }
        Some(r)
    } else {
        None
    };

    let report = Report {
        worlds: fr.n(),
        buttons: lab.n_buttons,
        switches: lab.n_switches,
        independence,
        s42,
    };
    Ok(CommandOutput {
        machine: envelope("mv check", cli.seed, &report),
        human,
        refuted,
    })
}
