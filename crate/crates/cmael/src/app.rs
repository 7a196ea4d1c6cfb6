//! Argument parsing and subcommand drivers. Exit codes: 0 SAT (or success),
//! 1 UNSAT (or a corpus mismatch), 2 input error, 3 internal verification
//! failure.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use cmael_core::{parse, EvalContext, Formula, ParseError, Rules, SolveOptions, Universe, Verdict};

use crate::corpus::{parse_corpus, run_corpus};
use crate::run::{decide, VerificationFailure};
use crate::{dot, json};

pub const EXIT_SAT: u8 = 0;
pub const EXIT_UNSAT: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_VERIFY: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "cmael", version, about = "Tableau solver for coalitional multiagent epistemic logic")]
pub struct Cli {
    /// More detail on stderr; repeat for more.
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide satisfiability; on SAT, extract and verify a model.
    Solve(SolveArgs),
    /// Evaluate a formula over a model file.
    Check(CheckArgs),
    /// Run every case of a corpus file and compare verdicts.
    Corpus(CorpusArgs),
}

#[derive(Debug, Args)]
pub struct EngineArgs {
    /// Cap on prestates plus states.
    #[arg(long, default_value_t = cmael_core::solver::DEFAULT_MAX_NODES, value_parser = parse_cap)]
    pub max_nodes: usize,
    /// Use the set of top-level conjuncts as the root prestate.
    #[arg(long)]
    pub split_conjuncts: bool,
    /// Use the bare expansion rules without the cut (unsound and incomplete;
    /// for comparison only).
    #[arg(long)]
    pub basic_rules: bool,
}

impl EngineArgs {
    fn options(&self) -> SolveOptions {
        SolveOptions {
            rules: if self.basic_rules { Rules::Basic } else { Rules::Cut },
            split_conjuncts: self.split_conjuncts,
            max_nodes: self.max_nodes,
        }
    }
}

fn parse_cap(s: &str) -> std::result::Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Comma-separated agent names, e.g. `a,b,c`.
    #[arg(long, required = true)]
    pub agents: String,
    /// The formula; alternatively use `--file`.
    #[arg(required_unless_present = "file", conflicts_with = "file")]
    pub formula: Option<String>,
    /// Read the formula from a file.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Write the verified model as JSON (SAT only).
    #[arg(long)]
    pub model: Option<PathBuf>,
    #[arg(long)]
    pub dot_pretableau: Option<PathBuf>,
    /// One digraph per elimination stage.
    #[arg(long)]
    pub dot_tableau: Option<PathBuf>,
    #[arg(long)]
    pub dot_model: Option<PathBuf>,
    /// Write the elimination log as JSON.
    #[arg(long)]
    pub log: Option<PathBuf>,
    #[command(flatten)]
    pub engine: EngineArgs,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    pub model: PathBuf,
    pub formula: String,
    /// Report only the model's designated root.
    #[arg(long)]
    pub root: bool,
}

#[derive(Debug, Args)]
pub struct CorpusArgs {
    pub path: PathBuf,
    #[command(flatten)]
    pub engine: EngineArgs,
}

/// Runs a parsed command line and returns the exit code.
pub fn run(cli: Cli) -> u8 {
    let verbose = cli.verbose;
    let result = match cli.command {
        Command::Solve(args) => solve_cmd(&args, verbose),
        Command::Check(args) => check_cmd(&args),
        Command::Corpus(args) => corpus_cmd(&args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<VerificationFailure>().is_some() {
                EXIT_VERIFY
            } else {
                EXIT_INPUT
            }
        }
    }
}

fn universe_from_csv(csv: &str) -> Result<Universe> {
    let names: Vec<&str> = csv.split(',').map(str::trim).collect();
    let u = Universe::new(names).map_err(|e| anyhow!("--agents: {e}"))?;
    if u.is_single_agent() {
        eprintln!("warning: a single agent makes D and C coincide; the procedure assumes at least two");
    }
    Ok(u)
}

/// The error with the input echoed and a caret under the offending column.
fn describe_parse_error(text: &str, e: &ParseError) -> anyhow::Error {
    let column = text[..e.position.min(text.len())].chars().count();
    anyhow!("{e}\n  {text}\n  {}^", " ".repeat(column))
}

fn parse_formula(text: &str, u: &Universe) -> Result<Formula> {
    parse(text, u).map_err(|e| describe_parse_error(text, &e))
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("cannot write {}", path.display()))
}

fn solve_cmd(args: &SolveArgs, verbose: u8) -> Result<u8> {
    let universe = universe_from_csv(&args.agents)?;
    let text = match (&args.formula, &args.file) {
        (Some(f), _) => f.clone(),
        (None, Some(path)) => fs::read_to_string(path)
            .with_context(|| format!("cannot read {}", path.display()))?
            .trim()
            .to_string(),
        (None, None) => bail!("no formula given"),
    };
    let theta = parse_formula(&text, &universe)?;
    let decision = decide(&theta, &universe, &args.engine.options())?;
    let outcome = &decision.outcome;

    println!("verdict: {}", decision.verdict());
    println!("nodes: {}", outcome.node_count());
    if verbose > 0 {
        eprintln!("closure: {} formulas", outcome.closure.len());
        eprintln!(
            "pretableau: {} prestates, {} states",
            outcome.pretableau.prestates.len(),
            outcome.pretableau.states.len()
        );
        eprintln!(
            "final tableau: {} alive, {} removed, {} eventualities",
            outcome.tableau.alive_count(),
            outcome.tableau.log.len(),
            outcome.tableau.eventualities.len()
        );
        if let Some(cert) = &decision.certificate {
            eprintln!("model: {} states, frame {:?}", cert.model.states(), cert.frame);
        }
    }

    if let Some(path) = &args.dot_pretableau {
        write_file(path, &dot::pretableau(&outcome.closure, &outcome.pretableau))?;
    }
    if let Some(path) = &args.dot_tableau {
        write_file(path, &dot::tableau_stages(&outcome.closure, &outcome.tableau))?;
    }
    if let Some(path) = &args.log {
        write_file(path, &json::log_to_string(&outcome.closure, &outcome.tableau.log))?;
    }
    if let Some(cert) = &decision.certificate {
        if let Some(path) = &args.model {
            let text = json::model_to_string(&cert.model);
            recheck_emitted(&text, &theta)?;
            write_file(path, &text)?;
        }
        if let Some(path) = &args.dot_model {
            write_file(path, &dot::model(&cert.model))?;
        }
    } else if args.model.is_some() || args.dot_model.is_some() {
        eprintln!("note: no model written for an unsatisfiable formula");
    }

    Ok(match decision.verdict() {
        Verdict::Sat => EXIT_SAT,
        Verdict::Unsat => EXIT_UNSAT,
    })
}

/// Reads the serialized model back and checks the input at its root.
fn recheck_emitted(text: &str, theta: &Formula) -> Result<()> {
    let (model, _) = json::model_from_str(text)?;
    let root = model.root.ok_or_else(|| anyhow!("emitted model has no root"))?;
    let holds = EvalContext::new(&model)
        .satisfies(root, theta)
        .map_err(|e| anyhow!("{e}"))?;
    if !holds {
        return Err(VerificationFailure(cmael_core::CertifyError::RootFalse).into());
    }
    Ok(())
}

fn check_cmd(args: &CheckArgs) -> Result<u8> {
    let text = fs::read_to_string(&args.model)
        .with_context(|| format!("cannot read {}", args.model.display()))?;
    let (model, ids) = json::model_from_str(&text)?;
    let phi = parse_formula(&args.formula, &model.universe)?;
    let mut ctx = EvalContext::new(&model);
    let states: Vec<usize> = if args.root {
        vec![model.root.ok_or_else(|| anyhow!("the model has no root"))?]
    } else {
        (0..model.states()).collect()
    };
    for s in states {
        let value = ctx.satisfies(s, &phi).map_err(|e| anyhow!("{e}"))?;
        println!("{}: {value}", ids[s]);
    }
    Ok(0)
}

fn corpus_cmd(args: &CorpusArgs) -> Result<u8> {
    let text = fs::read_to_string(&args.path)
        .with_context(|| format!("cannot read {}", args.path.display()))?;
    let corpus = parse_corpus(&text)?;
    let reports = run_corpus(&corpus, &args.engine.options());
    for r in &reports {
        println!("{}", r.row());
    }
    let passed = reports.iter().filter(|r| r.passed()).count();
    println!("passed: {passed}/{}", reports.len());
    let verification_failed = reports.iter().any(|r| {
        matches!(&r.decision, Err(e) if e.downcast_ref::<VerificationFailure>().is_some())
    });
    Ok(if verification_failed {
        EXIT_VERIFY
    } else if passed == reports.len() {
        0
    } else {
        1
    })
}
