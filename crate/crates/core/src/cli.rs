//! Command-line front end.
//!
//! Exit codes: 0 positive result, 1 usage or parse error, 2 undecided,
//! 3 verified negative.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::classify::{classify, Classification, Dispatch};
use crate::construct::{label_any, LabelOutcome, NonExistence, Unknown};
use crate::dot::to_dot;
use crate::labeling::{verify, EdgeLabeling, LabelingFile};
use crate::search::{self, Certificate, Mode, SearchConfig, SearchError, SearchResult};
use crate::tree::{enumerate_specs, parse_spec, RootedTree, TreeSpec};

pub const EXIT_POSITIVE: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_UNDECIDED: u8 = 2;
pub const EXIT_NEGATIVE: u8 = 3;

const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Parser)]
#[command(name = "seg4", version, about = "Super edge-graceful labelings of diameter-4 trees")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, clap::Args)]
pub struct SearchArgs {
    /// Node budget, e.g. 1000000, 10^7 or 1e7.
    #[arg(long, value_parser = parse_budget)]
    pub search_budget: Option<u64>,
    /// Allow searching trees above the size guard.
    #[arg(long)]
    pub override_guard: bool,
    /// Worker threads for the search.
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
}

impl SearchArgs {
    fn config(&self, mode: Mode) -> SearchConfig {
        SearchConfig {
            node_budget: self.search_budget.unwrap_or(DEFAULT_BUDGET),
            mode,
            workers: self.workers.max(1),
            override_guard: self.override_guard,
            ..SearchConfig::default()
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report the family and governing result of a tree.
    Classify { spec: String },
    /// Produce a verified labeling, or report why none is given.
    Label {
        spec: String,
        /// Write the labeling document here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Store exhaustion certificates in this directory.
        #[arg(long)]
        certificates_dir: Option<PathBuf>,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Check a labeling document.
    Verify { file: PathBuf },
    /// Run the exhaustive search.
    Search {
        spec: String,
        /// Search the whole space instead of stopping at the first labeling.
        #[arg(long)]
        exhaust: bool,
        /// Count all labelings.
        #[arg(long, conflicts_with = "exhaust")]
        count: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        certificates_dir: Option<PathBuf>,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Compare the classification with the search on every tree up to a size.
    Survey {
        /// Largest number of edges.
        #[arg(long)]
        max_size: usize,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Export a spec or a labeling document as a graph.
    Export {
        /// Spec string or path to a labeling document.
        input: String,
        /// Emit Graphviz DOT.
        #[arg(long)]
        dot: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Failure that maps to exit code 1.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(String);

impl UsageError {
    fn new(msg: impl ToString) -> Self {
        UsageError(msg.to_string())
    }
}

/// Accepts plain integers, `10^7`, `1e7`, with optional `_` separators.
pub fn parse_budget(text: &str) -> Result<u64, String> {
    let t: String = text.chars().filter(|&c| c != '_').collect();
    let bad = || format!("invalid budget {text:?}");
    let value = if let Some((base, exp)) = t.split_once('^') {
        let base: u64 = base.parse().map_err(|_| bad())?;
        let exp: u32 = exp.parse().map_err(|_| bad())?;
        base.checked_pow(exp).ok_or_else(bad)?
    } else if let Some((mant, exp)) = t.split_once(['e', 'E']) {
        let mant: u64 = mant.parse().map_err(|_| bad())?;
        let exp: u32 = exp.parse().map_err(|_| bad())?;
        10u64.checked_pow(exp).and_then(|p| p.checked_mul(mant)).ok_or_else(bad)?
    } else {
        t.parse().map_err(|_| bad())?
    };
    if value == 0 {
        return Err("budget must be at least 1".to_string());
    }
    Ok(value)
}

/// Parses `args` and runs the command, returning the exit code.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_POSITIVE };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match run(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<u8, UsageError> {
    let fmt = cli.format;
    match &cli.command {
        Command::Classify { spec } => cmd_classify(&spec_arg(spec)?, fmt, out),
        Command::Label {
            spec,
            out: path,
            certificates_dir,
            search,
        } => cmd_label(&spec_arg(spec)?, search, path.as_deref(), certificates_dir.as_deref(), fmt, out),
        Command::Verify { file } => cmd_verify(file, fmt, out),
        Command::Search {
            spec,
            exhaust,
            count,
            out: path,
            certificates_dir,
            search,
        } => {
            let mode = match (exhaust, count) {
                (_, true) => Mode::CountAll,
                (true, _) => Mode::ExhaustAll,
                _ => Mode::FindOne,
            };
            cmd_search(
                &spec_arg(spec)?,
                &search.config(mode),
                path.as_deref(),
                certificates_dir.as_deref(),
                fmt,
                out,
            )
        }
        Command::Survey { max_size, search } => cmd_survey(*max_size, &search.config(Mode::FindOne), fmt, out),
        Command::Export { input, dot, out: path } => cmd_export(input, *dot, path.as_deref(), out),
    }
}

fn spec_arg(text: &str) -> Result<TreeSpec, UsageError> {
    parse_spec(text).map_err(|e| UsageError::new(format!("cannot parse {text:?}: {e}")))
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), UsageError> {
    out.write_all(text.as_bytes()).map_err(UsageError::new)
}

fn emit_json(out: &mut dyn Write, value: &impl Serialize) -> Result<(), UsageError> {
    let text = serde_json::to_string_pretty(value).map_err(UsageError::new)?;
    emit(out, &format!("{text}\n"))
}

fn write_file(path: &Path, text: &str) -> Result<(), UsageError> {
    fs::write(path, text).map_err(|e| UsageError::new(format!("cannot write {}: {e}", path.display())))
}

fn store_certificate(dir: Option<&Path>, cert: &Certificate) -> Result<Option<PathBuf>, UsageError> {
    let Some(dir) = dir else { return Ok(None) };
    fs::create_dir_all(dir).map_err(|e| UsageError::new(format!("cannot create {}: {e}", dir.display())))?;
    let path = dir.join(cert.file_name());
    write_file(&path, &format!("{}\n", cert.to_json()))?;
    Ok(Some(path))
}

/// One-line summary such as `OddCaterpillar, not SEG (non-existence lemma L-badlobsters)`.
pub fn classification_summary(c: &Classification) -> String {
    let verdict = match &c.dispatch {
        Dispatch::Constructive { .. } => format!("constructive ({})", c.dispatch.tag()),
        Dispatch::NotSeg(lemma) => format!("not SEG (non-existence lemma {lemma})"),
        Dispatch::Conjectured(conj) => format!("open, conjectured SEG ({conj})"),
        Dispatch::Uncovered => "open, not covered by any result".to_string(),
    };
    format!("{}, {verdict}", c.family)
}

fn cmd_classify(spec: &TreeSpec, fmt: Format, out: &mut dyn Write) -> Result<u8, UsageError> {
    let c = classify(spec);
    match fmt {
        Format::Json => emit_json(
            out,
            &json!({
                "spec": spec.to_string(),
                "family": c.family,
                "j": c.j,
                "k": c.k,
                "l": c.l,
                "q": c.q,
                "parity": if c.even_size() { "even" } else { "odd" },
                "dispatch": c.dispatch.tag(),
                "status": theory_status(&c.dispatch),
            }),
        )?,
        Format::Text => emit(
            out,
            &format!(
                "{}\n{spec}: (j,k,l) = ({},{},{}), q = {} ({})\n",
                classification_summary(&c),
                c.j,
                c.k,
                c.l,
                c.q,
                if c.even_size() { "even" } else { "odd" }
            ),
        )?,
    }
    Ok(EXIT_POSITIVE)
}

fn labeling_text(tree: &RootedTree, f: &EdgeLabeling) -> String {
    let mut s = String::new();
    for &e in tree.edges() {
        if let Some(x) = f.get(e) {
            s.push_str(&format!("{} -- {e}: {x}\n", e.parent().expect("edge")));
        }
    }
    s
}

fn cmd_label(
    spec: &TreeSpec,
    search: &SearchArgs,
    path: Option<&Path>,
    certificates_dir: Option<&Path>,
    fmt: Format,
    out: &mut dyn Write,
) -> Result<u8, UsageError> {
    let config = search.search_budget.map(|_| search.config(Mode::FindOne));
    let outcome = label_any(spec, config.as_ref()).map_err(UsageError::new)?;
    let tree = spec.build();
    match outcome {
        LabelOutcome::Labeled { labeling, source } => {
            let doc = LabelingFile::new(&tree, labeling);
            if let Some(p) = path {
                write_file(p, &format!("{}\n", doc.to_json()))?;
            }
            match (fmt, path) {
                (Format::Json, None) => emit(out, &format!("{}\n", doc.to_json()))?,
                (Format::Json, Some(p)) => emit_json(
                    out,
                    &json!({"spec": doc.spec, "status": "labeled", "source": source.to_string(), "file": p}),
                )?,
                (Format::Text, _) => {
                    emit(out, &format!("{}: labeled by {source}\n", doc.spec))?;
                    if path.is_none() {
                        emit(out, &labeling_text(&tree, &doc.edges))?;
                    }
                }
            }
            Ok(EXIT_POSITIVE)
        }
        LabelOutcome::ProvedNotSeg(reason) => {
            let (why, file) = match &reason {
                NonExistence::Lemma(lemma) => (format!("non-existence lemma {lemma}"), None),
                NonExistence::Exhaustion(cert) => ("exhaustive search".to_string(), store_certificate(certificates_dir, cert)?),
            };
            match fmt {
                Format::Json => emit_json(
                    out,
                    &json!({"spec": spec.to_string(), "status": "not-seg", "reason": why, "certificate": file}),
                )?,
                Format::Text => emit(out, &format!("{spec}: not super edge-graceful ({why})\n"))?,
            }
            Ok(EXIT_NEGATIVE)
        }
        LabelOutcome::Unknown(u) => {
            let why = match u {
                Unknown::Conjectured(c) => format!("open case, {c}; pass --search-budget to search"),
                Unknown::Uncovered => "open case not covered by any result; pass --search-budget to search".to_string(),
                Unknown::BudgetExceeded { nodes_visited } => format!("search budget exhausted after {nodes_visited} nodes"),
            };
            match fmt {
                Format::Json => emit_json(out, &json!({"spec": spec.to_string(), "status": "unknown", "reason": why}))?,
                Format::Text => emit(out, &format!("{spec}: undecided ({why})\n"))?,
            }
            Ok(EXIT_UNDECIDED)
        }
    }
}

fn cmd_verify(file: &Path, fmt: Format, out: &mut dyn Write) -> Result<u8, UsageError> {
    let text = fs::read_to_string(file).map_err(|e| UsageError::new(format!("cannot read {}: {e}", file.display())))?;
    let doc = LabelingFile::parse(&text).map_err(UsageError::new)?;
    let tree = doc.tree().map_err(UsageError::new)?;
    let report = verify(&tree, &doc.edges);
    match fmt {
        Format::Json => emit_json(
            out,
            &json!({
                "spec": tree.spec().to_string(),
                "is_seg": report.is_seg,
                "violations": report.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            }),
        )?,
        Format::Text => {
            if report.is_seg {
                emit(out, &format!("{}: super edge-graceful\n", tree.spec()))?;
            } else {
                emit(out, &format!("{}: not super edge-graceful\n", tree.spec()))?;
                for v in &report.violations {
                    emit(out, &format!("  {v}\n"))?;
                }
            }
        }
    }
    Ok(if report.is_seg { EXIT_POSITIVE } else { EXIT_NEGATIVE })
}

fn cmd_search(
    spec: &TreeSpec,
    config: &SearchConfig,
    path: Option<&Path>,
    certificates_dir: Option<&Path>,
    fmt: Format,
    out: &mut dyn Write,
) -> Result<u8, UsageError> {
    let tree = spec.build();
    let outcome = search::search(&tree, config).map_err(UsageError::new)?;
    let mut cert_path = None;
    let (status, code) = match &outcome.result {
        SearchResult::Found(f) => {
            if let Some(p) = path {
                write_file(p, &format!("{}\n", LabelingFile::new(&tree, f.clone()).to_json()))?;
            }
            ("found", EXIT_POSITIVE)
        }
        SearchResult::ExhaustedNone => {
            cert_path = store_certificate(certificates_dir, &Certificate::new(&tree, config, &outcome))?;
            ("none", EXIT_NEGATIVE)
        }
        SearchResult::BudgetExceeded => ("budget", EXIT_UNDECIDED),
    };
    match fmt {
        Format::Json => {
            let labeling = match &outcome.result {
                SearchResult::Found(f) => Some(f),
                _ => None,
            };
            emit_json(
                out,
                &json!({
                    "spec": spec.to_string(),
                    "result": status,
                    "nodes_visited": outcome.nodes_visited,
                    "count": outcome.count.map(|c| c.to_string()),
                    "labeling": labeling,
                    "certificate": cert_path,
                }),
            )?
        }
        Format::Text => {
            let mut line = format!("{spec}: {status}");
            if cert_path.is_some() {
                line.push_str(", certificate written");
            }
            if let Some(c) = outcome.count {
                line.push_str(&format!(", {c} labelings"));
            }
            line.push_str(&format!(" ({} nodes)\n", outcome.nodes_visited));
            emit(out, &line)?;
            if let (SearchResult::Found(f), None) = (&outcome.result, path) {
                emit(out, &labeling_text(&tree, f))?;
            }
        }
    }
    Ok(code)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurveyRow {
    pub spec: String,
    pub j: usize,
    pub k: usize,
    pub l: usize,
    pub q: usize,
    pub dispatch: String,
    pub theory: &'static str,
    pub oracle: &'static str,
    /// Conjectured and uncovered rows never disagree.
    pub informational: bool,
    pub agreement: bool,
}

pub fn theory_status(d: &Dispatch) -> &'static str {
    match d {
        Dispatch::Constructive { .. } => "SEG",
        Dispatch::NotSeg(_) => "not-SEG",
        Dispatch::Conjectured(_) => "conjectured",
        Dispatch::Uncovered => "uncovered",
    }
}

/// Classifies and searches one tree.
pub fn survey_row(spec: &TreeSpec, config: &SearchConfig) -> SurveyRow {
    let c = classify(spec);
    let oracle = match search::search(&spec.build(), config) {
        Ok(o) => match o.result {
            SearchResult::Found(_) => "found",
            SearchResult::ExhaustedNone => "none",
            SearchResult::BudgetExceeded => "budget",
        },
        Err(SearchError::GuardRefused { .. } | SearchError::TooLarge { .. }) => "skipped",
        Err(_) => "skipped",
    };
    let informational = matches!(c.dispatch, Dispatch::Conjectured(_) | Dispatch::Uncovered);
    let agreement = match (&c.dispatch, oracle) {
        _ if informational => true,
        (Dispatch::Constructive { .. }, "found") | (Dispatch::NotSeg(_), "none") => true,
        (_, "budget" | "skipped") => true,
        _ => false,
    };
    SurveyRow {
        spec: spec.to_string(),
        j: c.j,
        k: c.k,
        l: c.l,
        q: c.q,
        dispatch: c.dispatch.tag(),
        theory: theory_status(&c.dispatch),
        oracle,
        informational,
        agreement,
    }
}

fn cmd_survey(max_size: usize, config: &SearchConfig, fmt: Format, out: &mut dyn Write) -> Result<u8, UsageError> {
    let specs = enumerate_specs(max_size).map_err(UsageError::new)?;
    let rows: Vec<SurveyRow> = specs.iter().map(|s| survey_row(s, config)).collect();
    match fmt {
        Format::Json => emit_json(out, &rows)?,
        Format::Text => {
            for r in &rows {
                let verdict = match (r.informational, r.agreement) {
                    (true, _) => "informational",
                    (false, true) => "agree",
                    (false, false) => "DISAGREE",
                };
                emit(
                    out,
                    &format!(
                        "{:<20} ({},{},{}) q={:<3} {:<28} theory={:<12} oracle={:<8} {verdict}\n",
                        r.spec, r.j, r.k, r.l, r.q, r.dispatch, r.theory, r.oracle
                    ),
                )?;
            }
        }
    }
    let code = if rows.iter().any(|r| !r.agreement) {
        EXIT_NEGATIVE
    } else if rows.iter().any(|r| !r.informational && matches!(r.oracle, "budget" | "skipped")) {
        EXIT_UNDECIDED
    } else {
        EXIT_POSITIVE
    };
    Ok(code)
}

fn cmd_export(input: &str, dot: bool, path: Option<&Path>, out: &mut dyn Write) -> Result<u8, UsageError> {
    if !dot {
        return Err(UsageError::new("choose an export format (--dot)"));
    }
    let (tree, labeling) = if Path::new(input).is_file() {
        let text = fs::read_to_string(input).map_err(|e| UsageError::new(format!("cannot read {input}: {e}")))?;
        let doc = LabelingFile::parse(&text).map_err(UsageError::new)?;
        (doc.tree().map_err(UsageError::new)?, Some(doc.edges))
    } else {
        (spec_arg(input)?.build(), None)
    };
    let text = to_dot(&tree, labeling.as_ref());
    match path {
        Some(p) => write_file(p, &text)?,
        None => emit(out, &text)?,
    }
    Ok(EXIT_POSITIVE)
}
