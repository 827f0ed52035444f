use crate::jointfile::{self, JointFileError};
use crate::report::{to_json, ReportDocument, Style};
use crate::scores::{self, ScoreFileError};
use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::io;
use std::path::{Path, PathBuf};
use synergy_core::montecarlo::{
    estimate, random_joint, verify_sweep, verify_sweep_with, EstimateReport, JointConstraint,
    SimConfig, SweepReport,
};
use synergy_core::roc::{pair_counts, payoff_estimate, roc_curve, PairCounts, RocPoint};
use synergy_core::synergy::{
    bayes_residual, synergy_condition_dependent, synergy_condition_independent,
};
use synergy_core::{
    analyze, ConditionalTable, JointDist, MarginalDist, OutcomeCategory, SynergyReport,
};
use thiserror::Error;

#[derive(Debug, Parser)]
#[command(name = "synergy", version, about = "Synergy of two equally weighted binary voters")]
pub struct Cli {
    /// Emit the machine-readable JSON report instead of text
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact synergy analysis of a joint matrix file
    Analyze {
        joint: PathBuf,
        /// Also write the JSON report to this path
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte Carlo estimate of the payoffs, next to the exact values
    Simulate {
        joint: PathBuf,
        /// Number of draws (at least 1)
        #[arg(long)]
        n: String,
        /// Generator seed; drawn from system entropy when omitted
        #[arg(long)]
        seed: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// AUC, payoff and ROC points of a `label,score` CSV file
    Roc {
        scores: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the synergy identities over random joints
    Verify {
        #[arg(long, default_value = "10000")]
        trials: String,
        #[arg(long)]
        seed: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Swap in a deliberately wrong condition formula (mutation check)
        #[arg(long, hide = true)]
        corrupt_condition: bool,
    },
    /// Write a random joint matrix file
    Gen {
        #[arg(long)]
        seed: Option<String>,
        /// none, independent, opinion_loaded_both or neutral_heavy
        #[arg(long)]
        constraint: String,
        out: PathBuf,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Read { path: PathBuf, source: io::Error },

    #[error("{path}: {source}")]
    Write { path: PathBuf, source: io::Error },

    #[error("{path}: {source}")]
    JointFile {
        path: PathBuf,
        source: JointFileError,
    },

    #[error("{path}: {source}")]
    ScoreFile {
        path: PathBuf,
        source: ScoreFileError,
    },

    #[error("{0}")]
    InvalidArgument(String),

    #[error("internal error: {0}")]
    Internal(#[from] synergy_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Read { .. } | Self::Write { .. } => 2,
            Self::JointFile { .. } => 3,
            Self::ScoreFile {
                source: ScoreFileError::MissingClass(_),
                ..
            } => 5,
            Self::ScoreFile { .. } => 3,
            Self::InvalidArgument(_) => 4,
            Self::Internal(_) => 1,
        }
    }
}

/// What a command produced: the report for stdout, notes for stderr and the
/// process exit code.
#[derive(Debug, Default)]
pub struct Output {
    pub stdout: String,
    pub stderr: Vec<String>,
    pub exit_code: i32,
}

pub fn run(cli: Cli, style: Style) -> Result<Output, CliError> {
    let json = cli.json;
    match cli.command {
        Command::Analyze { joint, out } => cmd_analyze(&joint, out.as_deref(), json, style),
        Command::Simulate { joint, n, seed, out } => {
            cmd_simulate(&joint, &n, seed.as_deref(), out.as_deref(), json, style)
        }
        Command::Roc { scores, out } => cmd_roc(&scores, out.as_deref(), json, style),
        Command::Verify {
            trials,
            seed,
            out,
            corrupt_condition,
        } => cmd_verify(&trials, seed.as_deref(), corrupt_condition, out.as_deref(), json, style),
        Command::Gen {
            seed,
            constraint,
            out,
        } => cmd_gen(seed.as_deref(), &constraint, &out, json),
    }
}

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    std::fs::read(path).map_err(|source| CliError::Read {
        path: path.to_owned(),
        source,
    })
}

fn write(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Write {
        path: path.to_owned(),
        source,
    })
}

fn load_joint(path: &Path) -> Result<(JointDist, Vec<u8>), CliError> {
    let bytes = read(path)?;
    let text = String::from_utf8_lossy(&bytes);
    let j = jointfile::parse(&text).map_err(|source| CliError::JointFile {
        path: path.to_owned(),
        source,
    })?;
    Ok((j, bytes))
}

fn parse_count(flag: &str, value: &str) -> Result<u64, CliError> {
    match value.trim().parse::<u64>() {
        Ok(n) if n >= 1 => Ok(n),
        _ => Err(CliError::InvalidArgument(format!(
            "--{flag} must be a positive integer, got {value:?}"
        ))),
    }
}

/// Explicit seed, or a fresh one from system entropy plus a note saying so.
fn resolve_seed(value: Option<&str>, notes: &mut Vec<String>) -> Result<u64, CliError> {
    match value {
        Some(s) => s
            .trim()
            .parse()
            .map_err(|_| CliError::InvalidArgument(format!("--seed must be a u64, got {s:?}"))),
        None => {
            let seed = rand::random::<u64>();
            notes.push(format!("seed: {seed} (from system entropy; pass --seed {seed} to reproduce)"));
            Ok(seed)
        }
    }
}

/// Writes the JSON document to `out` if requested and picks the stdout form.
fn emit<T: Serialize>(
    doc: &ReportDocument<T>,
    text: impl FnOnce() -> String,
    json: bool,
    out: Option<&Path>,
) -> Result<String, CliError> {
    let encoded = to_json(doc);
    if let Some(path) = out {
        write(path, &encoded)?;
    }
    Ok(if json { encoded } else { text() })
}

// analyze

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub joint: JointDist,
    pub marginal_1: MarginalDist,
    pub marginal_2: MarginalDist,
    pub synergy: SynergyReport,
    /// `b1 (a2 - c2) + b2 (a1 - c1)` from the marginals alone; equals the
    /// dependent form exactly when the agents are independent.
    pub condition_independent_form: f64,
    pub condition_dependent_form: f64,
    pub conditional_p: ConditionalTable,
    pub conditional_q: ConditionalTable,
    pub bayes_residual: f64,
}

pub fn analyze_report(j: &JointDist) -> Result<AnalyzeReport, synergy_core::Error> {
    let (m1, m2) = j.marginals();
    let (p, q) = j.conditionals();
    let synergy = analyze(j)?;
    Ok(AnalyzeReport {
        joint: *j,
        marginal_1: m1,
        marginal_2: m2,
        synergy,
        condition_independent_form: synergy_condition_independent(&m1, &m2),
        condition_dependent_form: synergy_condition_dependent(j),
        conditional_p: p,
        conditional_q: q,
        bayes_residual: bayes_residual(j),
    })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn verdict(r: &SynergyReport) -> (&'static str, bool) {
    if r.positive_synergy {
        ("positive synergy", true)
    } else if r.synergistic {
        ("synergistic (no gain)", true)
    } else {
        ("not synergistic", false)
    }
}

fn write_table(s: &mut String, title: &str, t: &ConditionalTable) {
    let _ = writeln!(s, "{title}");
    for given in OutcomeCategory::ALL {
        match t.row(given) {
            Some(r) => {
                let _ = writeln!(s, "  {:<8} {:?} {:?} {:?}", format!("{given}:"), r[0], r[1], r[2]);
            }
            None => {
                let _ = writeln!(s, "  {:<8} undefined", format!("{given}:"));
            }
        }
    }
}

fn write_synergy(s: &mut String, r: &SynergyReport, style: Style) {
    let _ = writeln!(s, "V(h1)            {:?}", r.v1);
    let _ = writeln!(s, "V(h2)            {:?}", r.v2);
    let _ = writeln!(s, "V(average)       {:?}", r.v_bar);
    let _ = writeln!(s, "gap              {:?}", r.gap);
    let _ = writeln!(s, "condition        {:?}", r.condition_value);
    let _ = writeln!(s, "opinion-loaded   agent 1: {}, agent 2: {}", yes_no(r.opinion_loaded_1), yes_no(r.opinion_loaded_2));
    let (label, good) = verdict(r);
    let _ = writeln!(s, "verdict          {}", style.verdict(label, good));
}

fn analyze_text(doc: &ReportDocument<AnalyzeReport>, style: Style) -> String {
    let r = &doc.report;
    let mut s = String::new();
    let _ = writeln!(s, "input            {}", doc.input_digest);
    let _ = writeln!(s, "joint (rows agent 1, columns agent 2; favor neutral oppose)");
    for row in r.joint.cells() {
        let _ = writeln!(s, "  {:?} {:?} {:?}", row[0], row[1], row[2]);
    }
    for (label, m) in [("agent 1", &r.marginal_1), ("agent 2", &r.marginal_2)] {
        let _ = writeln!(
            s,
            "{label}          favor {:?}  neutral {:?}  oppose {:?}",
            m.favor(),
            m.neutral(),
            m.oppose()
        );
    }
    write_table(&mut s, "P (agent 2 given agent 1)", &r.conditional_p);
    write_table(&mut s, "Q (agent 1 given agent 2)", &r.conditional_q);
    let _ = writeln!(s, "bayes residual   {:?}", r.bayes_residual);
    let _ = writeln!(s, "condition, independent form  {:?}", r.condition_independent_form);
    let _ = writeln!(s, "condition, dependent form    {:?}", r.condition_dependent_form);
    write_synergy(&mut s, &r.synergy, style);
    s
}

pub fn cmd_analyze(path: &Path, out: Option<&Path>, json: bool, style: Style) -> Result<Output, CliError> {
    let (j, bytes) = load_joint(path)?;
    let doc = ReportDocument::new("analyze", &bytes, analyze_report(&j)?);
    Ok(Output {
        stdout: emit(&doc, || analyze_text(&doc, style), json, out)?,
        ..Output::default()
    })
}

// simulate

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulateReport {
    pub exact: SynergyReport,
    pub estimate: EstimateReport,
    pub gap_abs_error: f64,
}

fn simulate_text(doc: &ReportDocument<SimulateReport>) -> String {
    let r = &doc.report;
    let e = &r.estimate;
    let mut s = String::new();
    let _ = writeln!(s, "input            {}", doc.input_digest);
    let _ = writeln!(s, "samples          {}", e.n_samples);
    let _ = writeln!(s, "seed             {}", e.seed);
    let _ = writeln!(s, "                 exact                    estimate");
    for (name, exact, est) in [
        ("V(h1)", r.exact.v1, e.v1_hat),
        ("V(h2)", r.exact.v2, e.v2_hat),
        ("V(average)", r.exact.v_bar, e.vbar_hat),
        ("gap", r.exact.gap, e.gap_hat),
    ] {
        let _ = writeln!(s, "{:<16} {:<24} {:?}", name, format!("{exact:?}"), est);
    }
    let _ = writeln!(s, "gap std error    {:?}", e.std_err_gap);
    let _ = writeln!(s, "gap abs error    {:?}", r.gap_abs_error);
    s
}

pub fn cmd_simulate(
    path: &Path,
    n: &str,
    seed: Option<&str>,
    out: Option<&Path>,
    json: bool,
    _style: Style,
) -> Result<Output, CliError> {
    let (j, bytes) = load_joint(path)?;
    let n = parse_count("n", n)?;
    let mut notes = Vec::new();
    let seed = resolve_seed(seed, &mut notes)?;
    let cfg = SimConfig::new(n, seed).expect("n checked positive");
    let exact = analyze(&j)?;
    let est = estimate(&j, &cfg);
    let doc = ReportDocument::new(
        "simulate",
        &bytes,
        SimulateReport {
            exact,
            estimate: est,
            gap_abs_error: (est.gap_hat - exact.gap).abs(),
        },
    );
    Ok(Output {
        stdout: emit(&doc, || simulate_text(&doc), json, out)?,
        stderr: notes,
        exit_code: 0,
    })
}

// roc

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RocReport {
    pub n_positives: u64,
    pub n_negatives: u64,
    pub pair_counts: PairCounts,
    pub auc: f64,
    /// `2·AUC − 1`
    pub payoff: f64,
    pub points: Vec<RocPoint>,
}

fn roc_text(doc: &ReportDocument<RocReport>) -> String {
    let r = &doc.report;
    let mut s = String::new();
    let _ = writeln!(s, "input            {}", doc.input_digest);
    let _ = writeln!(s, "positives        {}", r.n_positives);
    let _ = writeln!(s, "negatives        {}", r.n_negatives);
    let _ = writeln!(
        s,
        "pairs            {} (wins {}, ties {})",
        r.pair_counts.pairs, r.pair_counts.wins, r.pair_counts.ties
    );
    let _ = writeln!(s, "AUC              {:?}", r.auc);
    let _ = writeln!(s, "V = 2 AUC - 1    {:?}", r.payoff);
    let _ = writeln!(s, "fpr,tpr");
    for p in &r.points {
        let _ = writeln!(s, "{:?},{:?}", p.fpr, p.tpr);
    }
    s
}

pub fn cmd_roc(path: &Path, out: Option<&Path>, json: bool, _style: Style) -> Result<Output, CliError> {
    let bytes = read(path)?;
    let sample = scores::parse(&String::from_utf8_lossy(&bytes)).map_err(|source| {
        CliError::ScoreFile {
            path: path.to_owned(),
            source,
        }
    })?;
    let counts = pair_counts(&sample);
    let report = RocReport {
        n_positives: sample.positives().len() as u64,
        n_negatives: sample.negatives().len() as u64,
        pair_counts: counts,
        auc: counts.auc(),
        payoff: payoff_estimate(&sample),
        points: roc_curve(&sample).points().to_vec(),
    };
    let doc = ReportDocument::new("roc", &bytes, report);
    Ok(Output {
        stdout: emit(&doc, || roc_text(&doc), json, out)?,
        ..Output::default()
    })
}

// verify

/// The dependent condition read one cell off: `(neutral, neutral)` in place
/// of `(neutral, favor)`.
pub fn corrupted_condition(j: &JointDist) -> f64 {
    use OutcomeCategory::*;
    (j.get(Neutral, Neutral) - j.get(Neutral, Oppose)) + (j.get(Favor, Neutral) - j.get(Oppose, Neutral))
}

fn verify_text(doc: &ReportDocument<SweepReport>, style: Style) -> String {
    let r = &doc.report;
    let mut s = String::new();
    let _ = writeln!(s, "trials                     {}", r.n_trials);
    let _ = writeln!(s, "seed                       {}", r.seed);
    let _ = writeln!(s, "joints checked             {}", r.n_joints);
    let _ = writeln!(s, "gap identity violations    {}", r.n_gap_identity_violations);
    let _ = writeln!(s, "theorem violations         {}", r.n_theorem_violations);
    let _ = writeln!(s, "bayes violations           {}", r.n_bayes_violations);
    let _ = writeln!(s, "vote oracle violations     {}", r.n_oracle_violations);
    let _ = writeln!(s, "max abs residual           {:e}", r.max_abs_residual);
    if let Some(f) = r.first_failure {
        let _ = writeln!(
            s,
            "first failure              trial {} seed {} constraint {}",
            f.trial, f.joint_seed, f.constraint
        );
    }
    let status = if r.clean() { "PASS" } else { "FAIL" };
    let _ = writeln!(s, "result                     {}", style.verdict(status, r.clean()));
    s
}

pub fn cmd_verify(
    trials: &str,
    seed: Option<&str>,
    corrupt: bool,
    out: Option<&Path>,
    json: bool,
    style: Style,
) -> Result<Output, CliError> {
    let trials = parse_count("trials", trials)?;
    let mut notes = Vec::new();
    let seed = resolve_seed(seed, &mut notes)?;
    let report = if corrupt {
        notes.push("using the corrupted condition formula".to_owned());
        verify_sweep_with(trials, seed, corrupted_condition)
    } else {
        verify_sweep(trials, seed)
    };
    if let Some(f) = report.first_failure {
        notes.push(format!(
            "first failing joint: trial {}, seed {}, constraint {} (synergy gen --seed {} --constraint {} <out>)",
            f.trial, f.joint_seed, f.constraint, f.joint_seed, f.constraint
        ));
    }
    let canonical = format!("verify trials={trials} seed={seed} corrupt={corrupt}");
    let doc = ReportDocument::new("verify", canonical.as_bytes(), report);
    Ok(Output {
        stdout: emit(&doc, || verify_text(&doc, style), json, out)?,
        stderr: notes,
        exit_code: if report.clean() { 0 } else { 1 },
    })
}

// gen

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenReport {
    pub seed: u64,
    pub constraint: JointConstraint,
    pub out: String,
    pub joint: JointDist,
    pub marginal_1: MarginalDist,
    pub marginal_2: MarginalDist,
}

pub fn cmd_gen(seed: Option<&str>, constraint: &str, out: &Path, json: bool) -> Result<Output, CliError> {
    let constraint: JointConstraint = constraint
        .parse()
        .map_err(|e: synergy_core::montecarlo::UnknownConstraint| CliError::InvalidArgument(e.to_string()))?;
    let mut notes = Vec::new();
    let seed = resolve_seed(seed, &mut notes)?;
    let j = random_joint(seed, constraint);
    let text = jointfile::render(
        &j,
        &[format!("synergy gen --seed {seed} --constraint {constraint}")],
    );
    write(out, &text)?;
    let (m1, m2) = j.marginals();
    let canonical = format!("gen seed={seed} constraint={constraint}");
    let doc = ReportDocument::new(
        "gen",
        canonical.as_bytes(),
        GenReport {
            seed,
            constraint,
            out: out.display().to_string(),
            joint: j,
            marginal_1: m1,
            marginal_2: m2,
        },
    );
    let stdout = if json {
        to_json(&doc)
    } else {
        format!("wrote {} (seed {seed}, constraint {constraint})\n", out.display())
    };
    Ok(Output {
        stdout,
        stderr: notes,
        exit_code: 0,
    })
}
