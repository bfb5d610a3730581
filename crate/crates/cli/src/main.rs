//! Batch front end: reads a JSON problem document, runs the requested
//! engine, and prints a deterministic plain-text verdict.
//!
//! Exit codes: 0 for a clean pass or a coherent/valid verdict, 1 for an
//! incoherent/violated verdict, 2 for unusable input, 3 for a refused
//! workload (entry budget or oracle scale).

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use pk_core::{
    atoms_of, check_coherence, conditional_expectation, cox_check, dupre_tipler_check, extend,
    fuzz_rules, kolmogorov_check, oracle_expectation, Assessment, AssessmentEntry, AxiomReport,
    AxiomVerdict, CoherenceVerdict, CoxEntry, CoxTable, DtEntry, DupreTiplerTable, Error, Event,
    ExpectationResult, ExtReal, KolmogorovEntry, KolmogorovTable, Preorder, PreorderDoc, Rational,
    RandomQuantity, SubsetBudget,
};
use serde::Deserialize;

#[derive(Parser)]
#[command(name = "pk", version, about = "Exact coherence and conditional expectation engine")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Cap on assessment entries a coherence scan will accept
    /// (default 16; the PK_SUBSET_BUDGET variable overrides the default,
    /// this flag overrides both).
    #[arg(long, global = true)]
    budget: Option<usize>,

    /// Append decimal approximations to finite values, marked inexact.
    #[arg(long, global = true)]
    decimal: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Decide coherence of the document's assessment.
    Check { file: PathBuf },
    /// Evaluate X given an event under the document's preorder, or by
    /// coherent extension of its assessment.
    Expect {
        file: PathBuf,
        /// Comma-separated rational components of X, e.g. "3,5" or "1/2,-2".
        #[arg(long)]
        x: String,
        /// Conditioning event as comma-separated 0/1 bits; omitted means sure.
        #[arg(long)]
        given: Option<String>,
        /// Cross-check the answer against the elimination-based oracle
        /// (preorder documents at small scale only).
        #[arg(long)]
        oracle: bool,
    },
    /// Evaluate X given an event by coherent extension of the document's
    /// assessment.
    Extend {
        file: PathBuf,
        #[arg(long)]
        x: String,
        #[arg(long)]
        given: Option<String>,
    },
    /// Fuzz every probability rule against the document's preorder.
    Rules {
        file: PathBuf,
        /// Sampled instances per rule.
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Verify the document's value table against its tagged axiom system.
    Axioms {
        file: PathBuf,
        /// Expected system tag; rejected if the document is tagged otherwise.
        #[arg(long)]
        system: Option<String>,
    },
    /// List the minimal nonzero events generated by the document's events.
    Atoms { file: PathBuf },
}

/// Single-file problem statement. Sections are optional; each command
/// names the ones it needs.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ProblemDocument {
    dim: usize,
    preorder: Option<PreorderDoc>,
    assessment: Option<AssessmentSection>,
    table: Option<TableSection>,
    events: Option<Vec<Event>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AssessmentSection {
    entries: Vec<AssessmentEntry>,
}

#[derive(Deserialize)]
#[serde(tag = "system", rename_all = "snake_case", deny_unknown_fields)]
enum TableSection {
    Kolmogorov { entries: Vec<KolmogorovEntry> },
    Cox { entries: Vec<CoxEntry> },
    DupreTipler { entries: Vec<DtEntry> },
}

enum Failure {
    Usage(String),
    Engine(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Engine(Error::BudgetExceeded { .. } | Error::ResourceLimit(_)) => 3,
            Failure::Engine(Error::IncoherentAssessment) => 1,
            Failure::Engine(_) => 2,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) => m.clone(),
            Failure::Engine(e) => e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let budget = resolve_budget(cli.budget)?;
    match cli.command {
        Command::Check { file } => cmd_check(&file, budget),
        Command::Expect { file, x, given, oracle } => {
            cmd_expect(&file, &x, given.as_deref(), oracle, budget, cli.decimal)
        }
        Command::Extend { file, x, given } => {
            cmd_extend(&file, &x, given.as_deref(), budget, cli.decimal)
        }
        Command::Rules { file, trials, seed } => cmd_rules(&file, trials, seed, budget),
        Command::Axioms { file, system } => cmd_axioms(&file, system.as_deref()),
        Command::Atoms { file } => cmd_atoms(&file),
    }
}

fn resolve_budget(flag: Option<usize>) -> Result<SubsetBudget, Failure> {
    if let Some(limit) = flag {
        return Ok(SubsetBudget::new(limit));
    }
    match std::env::var("PK_SUBSET_BUDGET") {
        Ok(raw) => raw
            .parse()
            .map(SubsetBudget::new)
            .map_err(|_| Failure::Usage(format!("PK_SUBSET_BUDGET is not a count: {raw:?}"))),
        Err(_) => Ok(SubsetBudget::default()),
    }
}

fn load(file: &PathBuf) -> Result<ProblemDocument, Failure> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", file.display())))?;
    let doc: ProblemDocument = serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("cannot parse {}: {e}", file.display())))?;
    if doc.dim == 0 {
        return Err(Failure::Usage("dimension 0 is not allowed".into()));
    }
    Ok(doc)
}

fn build_assessment(doc: &ProblemDocument) -> Result<Assessment, Failure> {
    let section = doc
        .assessment
        .as_ref()
        .ok_or_else(|| Failure::Usage("document has no assessment section".into()))?;
    Ok(Assessment::new(doc.dim, section.entries.clone())?)
}

/// The document's ordering: the preorder section if present, otherwise the
/// one induced by the assessment section.
fn build_preorder(doc: &ProblemDocument, budget: SubsetBudget) -> Result<Preorder, Failure> {
    if let Some(pd) = &doc.preorder {
        let p = Preorder::from_doc(pd, budget)?;
        if p.dim() != doc.dim {
            return Err(Failure::Usage(format!(
                "preorder section has dimension {}, document says {}",
                p.dim(),
                doc.dim
            )));
        }
        return Ok(p);
    }
    if doc.assessment.is_some() {
        let a = build_assessment(doc)?;
        return Ok(Preorder::from_assessment(a, budget)?);
    }
    Err(Failure::Usage("document has neither a preorder nor an assessment section".into()))
}

fn parse_quantity(raw: &str, dim: usize) -> Result<RandomQuantity, Failure> {
    let mut components = Vec::new();
    for part in raw.split(',') {
        let r = Rational::from_str(part.trim())
            .map_err(|e| Failure::Usage(format!("cannot parse component {part:?}: {e}")))?;
        components.push(r);
    }
    if components.len() != dim {
        return Err(Failure::Usage(format!(
            "expected {dim} components, got {}",
            components.len()
        )));
    }
    Ok(RandomQuantity::new(components)?)
}

fn parse_given(raw: Option<&str>, dim: usize) -> Result<Event, Failure> {
    let Some(raw) = raw else {
        return Ok(Event::all(dim)?);
    };
    let mut bits = Vec::new();
    for part in raw.split(',') {
        match part.trim() {
            "0" => bits.push(false),
            "1" => bits.push(true),
            other => {
                return Err(Failure::Usage(format!("event bits must be 0 or 1, got {other:?}")))
            }
        }
    }
    if bits.len() != dim {
        return Err(Failure::Usage(format!("expected {dim} event bits, got {}", bits.len())));
    }
    Ok(Event::from_bits(bits)?)
}

fn format_extreal(v: &ExtReal, decimal: bool) -> String {
    match v {
        ExtReal::Finite(r) if decimal && !r.is_integer() => {
            format!("{r} ~= {} (inexact)", r.to_f64_lossy())
        }
        other => other.to_string(),
    }
}

fn format_result(result: &ExpectationResult, decimal: bool) -> String {
    match result {
        ExpectationResult::Defined(v) => format_extreal(v, decimal),
        ExpectationResult::Undefined { lower, upper } => {
            format!(
                "undefined [{}, {}]",
                format_extreal(lower, decimal),
                format_extreal(upper, decimal)
            )
        }
    }
}

fn cmd_check(file: &PathBuf, budget: SubsetBudget) -> Result<u8, Failure> {
    let doc = load(file)?;
    let a = build_assessment(&doc)?;
    match check_coherence(&a, budget)? {
        CoherenceVerdict::Coherent => {
            println!("coherent");
            Ok(0)
        }
        CoherenceVerdict::Incoherent(witness) => {
            println!("incoherent");
            let json = serde_json::to_string(&witness)
                .map_err(|e| Failure::Usage(format!("cannot render witness: {e}")))?;
            println!("witness: {json}");
            Ok(1)
        }
    }
}

fn cmd_expect(
    file: &PathBuf,
    x: &str,
    given: Option<&str>,
    oracle: bool,
    budget: SubsetBudget,
    decimal: bool,
) -> Result<u8, Failure> {
    let doc = load(file)?;
    let x = parse_quantity(x, doc.dim)?;
    let given = parse_given(given, doc.dim)?;
    let result = if doc.preorder.is_some() {
        let p = build_preorder(&doc, budget)?;
        let main = conditional_expectation(&p, &x, &given)?;
        if oracle {
            let check = oracle_expectation(&p, &x, &given)?;
            if check != main {
                return Err(Failure::Engine(Error::Internal(format!(
                    "oracle disagrees: main {main:?}, oracle {check:?}"
                ))));
            }
        }
        main
    } else {
        if oracle {
            return Err(Failure::Usage("--oracle needs a preorder section".into()));
        }
        let a = build_assessment(&doc)?;
        extend(&a, &x, &given, budget)?
    };
    println!("{}", format_result(&result, decimal));
    if oracle {
        println!("oracle: agree");
    }
    Ok(0)
}

fn cmd_extend(
    file: &PathBuf,
    x: &str,
    given: Option<&str>,
    budget: SubsetBudget,
    decimal: bool,
) -> Result<u8, Failure> {
    let doc = load(file)?;
    let x = parse_quantity(x, doc.dim)?;
    let given = parse_given(given, doc.dim)?;
    let a = build_assessment(&doc)?;
    let result = extend(&a, &x, &given, budget)?;
    println!("{}", format_result(&result, decimal));
    Ok(0)
}

fn cmd_rules(file: &PathBuf, trials: u64, seed: u64, budget: SubsetBudget) -> Result<u8, Failure> {
    let doc = load(file)?;
    let p = build_preorder(&doc, budget)?;
    let report = fuzz_rules(&p, trials, seed)?;
    println!("seed {seed}, {trials} trials per rule");
    for tally in &report.tallies {
        println!(
            "{:?}: {} held, {} vacuous, {} violated",
            tally.rule, tally.holds, tally.precondition_unmet, tally.violations
        );
    }
    for v in &report.violations {
        println!("violation {:?} trial {}: {}", v.rule, v.trial, v.detail);
    }
    println!("violations: {}", report.violations.len());
    Ok(if report.violations.is_empty() { 0 } else { 1 })
}

fn cmd_axioms(file: &PathBuf, system: Option<&str>) -> Result<u8, Failure> {
    let doc = load(file)?;
    let table = doc
        .table
        .as_ref()
        .ok_or_else(|| Failure::Usage("document has no table section".into()))?;
    let tag = match table {
        TableSection::Kolmogorov { .. } => "kolmogorov",
        TableSection::Cox { .. } => "cox",
        TableSection::DupreTipler { .. } => "dupre_tipler",
    };
    if let Some(requested) = system {
        if requested != tag {
            return Err(Failure::Usage(format!(
                "document table is tagged '{tag}', not '{requested}'"
            )));
        }
    }
    let report: AxiomReport = match table {
        TableSection::Kolmogorov { entries } => {
            kolmogorov_check(&KolmogorovTable { dim: doc.dim, entries: entries.clone() })?
        }
        TableSection::Cox { entries } => {
            cox_check(&CoxTable { dim: doc.dim, entries: entries.clone() })?
        }
        TableSection::DupreTipler { entries } => {
            dupre_tipler_check(&DupreTiplerTable { dim: doc.dim, entries: entries.clone() })?
        }
    };
    println!("system: {tag}");
    let clean = match &report.verdict {
        AxiomVerdict::Valid => {
            println!("valid");
            true
        }
        AxiomVerdict::Violation { axiom, instance } => {
            println!("violation: {axiom}: {instance}");
            false
        }
    };
    for check in &report.diagnostics {
        if check.holds {
            println!("check {}: holds", check.name);
        } else {
            println!("check {}: fails ({})", check.name, check.detail);
        }
    }
    Ok(if clean { 0 } else { 1 })
}

fn cmd_atoms(file: &PathBuf) -> Result<u8, Failure> {
    let doc = load(file)?;
    let events = doc
        .events
        .as_ref()
        .ok_or_else(|| Failure::Usage("document has no events section".into()))?;
    for e in events {
        if e.dim() != doc.dim {
            return Err(Failure::Usage(format!(
                "event has dimension {}, document says {}",
                e.dim(),
                doc.dim
            )));
        }
    }
    let atoms = atoms_of(doc.dim, events)?;
    for atom in &atoms {
        let json = serde_json::to_string(atom)
            .map_err(|e| Failure::Usage(format!("cannot render atom: {e}")))?;
        println!("{json}");
    }
    Ok(0)
}
