//! Command-line front end. [`run`] does all the work and returns the exit
//! code with the text destined for stdout and stderr, so it can be tested
//! without spawning a process.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error,
//! 3 guard violation.

use std::io::Read;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::bounds::{
    attainability_gate, check_distance_condition, check_level_condition,
    check_sufficient_conditions, lower_bound,
};
use crate::constructions::{closed_form_rn, construct, Family, FamilyParams};
use crate::error::Error;
use crate::io::{
    labeling_csv, labeling_from_entries, parse_labeling_csv, parse_labeling_json, parse_ordering,
    to_dot, LabelingDocument, SCHEMA_VERSION,
};
use crate::labeling::{greedy_label, verify, RadioLabeling};
use crate::oracle::{exact_rn_with, naive_rn, SearchBudget, SearchOptions};
use crate::ordering::VertexOrdering;
use crate::product::{ProductGraph, ProductVertex};
use crate::tree::Tree;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_GUARD: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(name = "radiotree", version, about = "Radio labelings of tree products")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Lower bound on the radio number.
    Bound(ProductArgs),
    /// Build an ordering and its greedy labeling.
    Label(LabelArgs),
    /// Check a labeling against every pair of vertices.
    Verify(VerifyArgs),
    /// Exact radio number by exhaustive search.
    Exact(ExactArgs),
    /// Run the attainability condition checkers on an ordering.
    Check(LabelArgs),
    /// Write the product as DOT.
    ExportDot(DotArgs),
}

#[derive(Args, Debug, Clone)]
struct ProductArgs {
    /// First factor: a tree file or `path:m` / `star:n`.
    #[arg(long)]
    t1: Option<String>,
    /// Second factor: a tree file or `path:m` / `star:n`.
    #[arg(long)]
    t2: Option<String>,
    /// A named family instead of explicit trees.
    #[arg(long, value_enum)]
    family: Option<FamilyArg>,
    /// Star leaves or path order of the first factor
    #[arg(long)]
    m: Option<usize>,
    /// Star leaves of the second factor
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Args, Debug)]
struct LabelArgs {
    #[command(flatten)]
    product: ProductArgs,
    /// Ordering file: flat ids one per line, or a JSON list of `[x, y]`.
    #[arg(long)]
    ordering: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Also write a DOT file with the labels.
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Labeling file; stdin when omitted or `-`.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(flatten)]
    product: ProductArgs,
}

#[derive(Args, Debug)]
struct ExactArgs {
    #[command(flatten)]
    product: ProductArgs,
    #[arg(long, default_value_t = 600)]
    max_seconds: u64,
    #[arg(long)]
    max_nodes: Option<u64>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Search every first vertex instead of one per orbit.
    #[arg(long)]
    no_symmetry: bool,
    /// Search labels directly (tiny products only).
    #[arg(long)]
    naive: bool,
}

#[derive(Args, Debug)]
struct DotArgs {
    #[command(flatten)]
    product: ProductArgs,
    /// Labeling to attach as `label` attributes.
    #[arg(long)]
    labeling: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum FamilyArg {
    StarStar,
    PathStar,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
}

/// Failure inside a command: the exit code and a message for stderr.
struct Failure {
    code: i32,
    message: String,
    /// Optional machine-readable payload still printed on stdout.
    stdout: Option<String>,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::SizeGuard { .. } | Error::HypothesisViolated(_) => EXIT_GUARD,
            Error::DuplicateLabel { .. } | Error::NotFeasible(_) => EXIT_VERIFY_FAILED,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
            stdout: None,
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
        stdout: None,
    }
}

type CmdResult = std::result::Result<(i32, String), Failure>;

/// Parses `argv` (including the program name) and runs the command.
pub fn run<S: AsRef<str>>(argv: &[S], stdin: &mut dyn Read) -> Outcome {
    let cli = match Cli::try_parse_from(argv.iter().map(|s| s.as_ref())) {
        Ok(cli) => cli,
        Err(e) => {
            let is_help = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            return Outcome {
                code: if is_help { EXIT_OK } else { EXIT_USAGE },
                stdout: if is_help { e.to_string() } else { String::new() },
                stderr: if is_help { String::new() } else { e.to_string() },
            };
        }
    };
    let result = match cli.command {
        Command::Bound(a) => cmd_bound(&a),
        Command::Label(a) => cmd_label(&a),
        Command::Verify(a) => cmd_verify(&a, stdin),
        Command::Exact(a) => cmd_exact(&a),
        Command::Check(a) => cmd_check(&a),
        Command::ExportDot(a) => cmd_dot(&a),
    };
    match result {
        Ok((code, stdout)) => Outcome {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(f) => Outcome {
            code: f.code,
            stdout: f.stdout.unwrap_or_default(),
            stderr: format!("error: {}\n", f.message),
        },
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn load_tree(spec: &str) -> Result<Tree, Failure> {
    if let Some(t) = Tree::from_generator(spec) {
        return Ok(t?);
    }
    Ok(Tree::parse_text(&read_file(Path::new(spec))?)?)
}

fn family_params(a: &ProductArgs) -> Result<Option<FamilyParams>, Failure> {
    let Some(fam) = a.family else {
        return Ok(None);
    };
    let (Some(m), Some(n)) = (a.m, a.n) else {
        return Err(usage("--family needs --m and --n"));
    };
    let family = match fam {
        FamilyArg::StarStar => Family::StarStar,
        FamilyArg::PathStar => Family::PathStar,
    };
    Ok(Some(FamilyParams::new(family, m, n)?))
}

fn load_product(a: &ProductArgs) -> Result<ProductGraph, Failure> {
    if let Some(params) = family_params(a)? {
        if a.t1.is_some() || a.t2.is_some() {
            return Err(usage("give either --family or --t1/--t2, not both"));
        }
        return Ok(params.graph()?);
    }
    match (&a.t1, &a.t2) {
        (Some(t1), Some(t2)) => Ok(ProductGraph::new(load_tree(t1)?, load_tree(t2)?)?),
        _ => Err(usage("need --t1 and --t2, or --family with --m and --n")),
    }
}

fn to_json(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn cmd_bound(a: &ProductArgs) -> CmdResult {
    let g = load_product(a)?;
    let report = lower_bound(&g);
    let mut value = serde_json::to_value(report).expect("plain struct");
    value["schema"] = json!(SCHEMA_VERSION);
    value["attainability"] = serde_json::to_value(attainability_gate(&g)).expect("plain enum");
    Ok((EXIT_OK, to_json(&value)))
}

/// The product and ordering for `label` and `check`.
fn load_ordering(a: &LabelArgs) -> Result<(ProductGraph, Vec<ProductVertex>, Option<FamilyParams>), Failure> {
    if let Some(params) = family_params(&a.product)? {
        if a.ordering.is_some() {
            return Err(usage("--ordering cannot be combined with --family"));
        }
        let c = construct(params)?;
        return Ok((c.graph().clone(), c.sequence().to_vec(), Some(params)));
    }
    let g = load_product(&a.product)?;
    let Some(path) = &a.ordering else {
        return Err(usage("need --family or --ordering"));
    };
    let seq = parse_ordering(&g, &read_file(path)?)?;
    Ok((g, seq, None))
}

fn cmd_label(a: &LabelArgs) -> CmdResult {
    let (g, seq, params) = load_ordering(a)?;
    let ord = VertexOrdering::new(&g, seq)?;
    let lab = greedy_label(&ord)?;
    if let Some(path) = &a.dot {
        std::fs::write(path, to_dot(&g, Some(&lab)))
            .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
    }
    if a.format == Format::Csv {
        return Ok((EXIT_OK, labeling_csv(&g, &lab)));
    }
    let doc = LabelingDocument::new(&g, &lab, Some(ord.sequence()));
    let mut value = serde_json::to_value(doc).expect("plain struct");
    value["lower_bound"] = json!(lower_bound(&g).value);
    if let Some(params) = params {
        value["family"] = serde_json::to_value(params).expect("plain struct");
        value["closed_form"] = json!(closed_form_rn(params)?);
    }
    Ok((EXIT_OK, to_json(&value)))
}

fn read_labeling(
    text: &str,
    format: Format,
    product: &ProductArgs,
) -> Result<(ProductGraph, RadioLabeling), Failure> {
    let explicit = product.t1.is_some() || product.family.is_some();
    match format {
        Format::Json => {
            let doc = parse_labeling_json(text)?;
            let g = match doc.trees()? {
                Some((t1, t2)) if !explicit => ProductGraph::new(t1, t2)?,
                _ => load_product(product)?,
            };
            let lab = labeling_from_entries(&g, &doc.labels)?;
            Ok((g, lab))
        }
        Format::Csv => {
            let g = load_product(product)?;
            let lab = labeling_from_entries(&g, &parse_labeling_csv(text)?)?;
            Ok((g, lab))
        }
    }
}

fn cmd_verify(a: &VerifyArgs, stdin: &mut dyn Read) -> CmdResult {
    let text = match &a.input {
        Some(p) if p.as_os_str() != "-" => read_file(p)?,
        _ => {
            let mut s = String::new();
            stdin
                .read_to_string(&mut s)
                .map_err(|e| usage(format!("cannot read stdin: {e}")))?;
            s
        }
    };
    let (g, lab) = read_labeling(&text, a.format, &a.product)?;
    match verify(&g, &lab) {
        Ok(violations) => {
            let ok = violations.is_empty();
            let value = json!({
                "schema": SCHEMA_VERSION,
                "ok": ok,
                "span": lab.span(),
                "violations": violations,
            });
            Ok((if ok { EXIT_OK } else { EXIT_VERIFY_FAILED }, to_json(&value)))
        }
        Err(e @ Error::DuplicateLabel { .. }) => {
            let value = json!({
                "schema": SCHEMA_VERSION,
                "ok": false,
                "error": e.to_string(),
            });
            Err(Failure {
                code: EXIT_VERIFY_FAILED,
                message: e.to_string(),
                stdout: Some(to_json(&value)),
            })
        }
        Err(e) => Err(e.into()),
    }
}

fn cmd_exact(a: &ExactArgs) -> CmdResult {
    let g = load_product(&a.product)?;
    if a.naive {
        let (value, lab) = naive_rn(&g)?;
        let out = json!({
            "schema": SCHEMA_VERSION,
            "status": "exact",
            "lo": value,
            "hi": value,
            "labeling": lab,
        });
        return Ok((EXIT_OK, to_json(&out)));
    }
    let initial_upper_bound = match family_params(&a.product)? {
        Some(params) => Some(closed_form_rn(params)?),
        None => None,
    };
    let budget = SearchBudget {
        max_nodes: a.max_nodes.unwrap_or(u64::MAX),
        max_seconds: a.max_seconds,
        initial_upper_bound,
    };
    let options = SearchOptions {
        symmetry_breaking: !a.no_symmetry,
        jobs: a.jobs,
    };
    let result = exact_rn_with(&g, budget, options)?;
    let mut value = serde_json::to_value(&result).expect("plain struct");
    value["schema"] = json!(SCHEMA_VERSION);
    value["lower_bound"] = json!(lower_bound(&g).value);
    Ok((EXIT_OK, to_json(&value)))
}

fn cmd_check(a: &LabelArgs) -> CmdResult {
    let (g, seq, _) = load_ordering(a)?;
    let ord = VertexOrdering::new(&g, seq)?;
    let mut verdicts = vec![serde_json::to_value(check_distance_condition(&ord)?).expect("plain")];
    let mut skipped = Vec::new();
    match check_level_condition(&ord) {
        Ok(v) => verdicts.push(serde_json::to_value(v).expect("plain")),
        Err(Error::HypothesisViolated(why)) => skipped.push(json!({"condition": "level_phi", "reason": why})),
        Err(e) => return Err(e.into()),
    }
    match check_sufficient_conditions(&ord) {
        Ok(vs) => verdicts.extend(vs.iter().map(|v| serde_json::to_value(v).expect("plain"))),
        Err(Error::HypothesisViolated(why)) => skipped.push(json!({"condition": "sufficient", "reason": why})),
        Err(e) => return Err(e.into()),
    }
    let value = json!({
        "schema": SCHEMA_VERSION,
        "verdicts": verdicts,
        "skipped": skipped,
    });
    Ok((EXIT_OK, to_json(&value)))
}

fn cmd_dot(a: &DotArgs) -> CmdResult {
    let Some(path) = &a.labeling else {
        let g = load_product(&a.product)?;
        return Ok((EXIT_OK, to_dot(&g, None)));
    };
    let (g, lab) = read_labeling(&read_file(path)?, a.format, &a.product)?;
    Ok((EXIT_OK, to_dot(&g, Some(&lab))))
}
