//! Command-line front end: `analyze`, `spectrum`, `enumerate` and `family`.
//!
//! Machine output is JSON, one object per line. Exit codes are 0 on
//! success, 1 for usage and I/O errors, and 2 when a verification finds a
//! violation or an oracle fails.

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::criterion::{lemma_checks, solve_ab, AbSolution, LemmaCheck};
use crate::enumeration::{enumerate_tricyclic, verify_order, EnumOptions, EnumerationReport, Positive};
use crate::error::Error;
use crate::families::{
    build_family, descriptor, enumerate_family_instances, match_family, params_for_order,
    FamilyDescriptor, FamilyId, Params,
};
use crate::graph::Graph;
use crate::graph6;
use crate::spectral::{exact_main_count, q_spectrum_default};
use crate::structure::classify_base;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "qmain", version, about = "Signless Laplacian main eigenvalues of graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Analyze graph6 lines from FILE or standard input.
    Analyze {
        file: Option<PathBuf>,
        /// Indented human-readable output.
        #[arg(long)]
        pretty: bool,
    },
    /// Print the Q-spectrum of graph6 lines from FILE or standard input.
    Spectrum {
        file: Option<PathBuf>,
        /// Only the exact number of main eigenvalues.
        #[arg(long)]
        exact_only: bool,
    },
    /// Enumerate connected tricyclic graphs of one order.
    Enumerate(EnumerateArgs),
    /// List, describe or emit the graph families.
    Family(FamilyArgs),
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub n: usize,
    /// Cross-check criterion, spectrum, families and lemmas on every graph.
    #[arg(long)]
    pub verify: bool,
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Ignore the order guard.
    #[arg(long)]
    pub force: bool,
    /// Write the graph6 of every graph with exactly two main eigenvalues.
    #[arg(long, value_name = "PATH")]
    pub emit_positives: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    /// Print the family table.
    #[arg(long, conflicts_with = "id")]
    pub list: bool,
    #[arg(long, required_unless_present = "list")]
    pub id: Option<String>,
    /// Parameters as `key=value,...`.
    #[arg(long, allow_hyphen_values = true)]
    pub params: Option<String>,
    /// Write instances as graph6 lines.
    #[arg(long)]
    pub emit: bool,
    /// Destination of the JSON sidecar (default: standard error).
    #[arg(long, value_name = "PATH")]
    pub sidecar: Option<PathBuf>,
    /// With no `--params`, emit every instance up to this order.
    #[arg(long)]
    pub max_n: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AbRecord {
    NoSolution,
    Unique {
        a: serde_json::Value,
        b: serde_json::Value,
        integral: bool,
    },
    Underdetermined {
        degree: usize,
    },
}

fn ratio_value(r: &num_rational::Ratio<i64>) -> serde_json::Value {
    if r.is_integer() {
        serde_json::Value::from(r.to_integer())
    } else {
        serde_json::Value::from(r.to_string())
    }
}

impl From<&AbSolution> for AbRecord {
    fn from(ab: &AbSolution) -> Self {
        match ab {
            AbSolution::NoSolution => AbRecord::NoSolution,
            AbSolution::Unique { a, b, integral } => AbRecord::Unique {
                a: ratio_value(a),
                b: ratio_value(b),
                integral: *integral,
            },
            AbSolution::Underdetermined { degree } => AbRecord::Underdetermined { degree: *degree },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroupRecord {
    pub value: f64,
    pub multiplicity: usize,
    pub main: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShapeRecord {
    pub shape: String,
    pub lengths: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyRecord {
    pub id: String,
    pub params: Params,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisRecord {
    pub line: usize,
    pub input: String,
    pub n: usize,
    pub m: usize,
    pub connected: bool,
    pub cyclomatic: Option<i64>,
    pub regular: bool,
    pub ab: Option<AbRecord>,
    pub main_count: usize,
    pub spectrum: Vec<GroupRecord>,
    pub base_shape: Option<ShapeRecord>,
    pub family: Option<FamilyRecord>,
    pub lemmas: Vec<LemmaCheck>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorDetail {
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub offset: Option<usize>,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorRecord {
    pub line: usize,
    pub input: String,
    pub error: ErrorDetail,
}

impl ErrorRecord {
    fn new(line: usize, input: &str, err: &Error) -> Self {
        let (kind, offset) = match err {
            Error::Graph6 { offset, .. } => ("graph6", Some(*offset)),
            Error::NoConvergence { .. } => ("eigensolver", None),
            _ => ("analysis", None),
        };
        ErrorRecord {
            line,
            input: input.to_string(),
            error: ErrorDetail {
                kind,
                offset,
                message: err.to_string(),
            },
        }
    }
}

fn groups(g: &Graph) -> crate::Result<Vec<GroupRecord>> {
    Ok(q_spectrum_default(g)?
        .groups
        .into_iter()
        .map(|x| GroupRecord {
            value: x.value,
            multiplicity: x.multiplicity,
            main: x.is_main,
        })
        .collect())
}

pub fn analyze_graph(line: usize, input: &str, g: &Graph) -> crate::Result<AnalysisRecord> {
    let connected = g.is_connected();
    let cyclomatic = g.cyclomatic_number().ok();
    let ab = if g.edge_count() > 0 {
        Some(solve_ab(g)?)
    } else {
        None
    };
    let base_shape = match (connected, cyclomatic) {
        (true, Some(3)) => {
            let base = g.base()?;
            let shape = classify_base(&base.graph)?;
            Some(ShapeRecord {
                shape: shape.shape.to_string(),
                lengths: shape.lengths,
            })
        }
        _ => None,
    };
    let family = if connected && cyclomatic == Some(3) && g.order() <= 64 {
        match_family(g)?.map(|d| FamilyRecord {
            id: d.id.to_string(),
            params: d.params,
        })
    } else {
        None
    };
    let lemmas = match &ab {
        Some(ab) if connected => lemma_checks(g, ab),
        _ => Vec::new(),
    };
    Ok(AnalysisRecord {
        line,
        input: input.to_string(),
        n: g.order(),
        m: g.edge_count(),
        connected,
        cyclomatic,
        regular: g.is_regular(),
        ab: ab.as_ref().map(AbRecord::from),
        main_count: exact_main_count(g),
        spectrum: groups(g)?,
        base_shape,
        family,
        lemmas,
    })
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T, pretty: bool) -> io::Result<()> {
    if pretty {
        serde_json::to_writer_pretty(&mut *out, value)?;
    } else {
        serde_json::to_writer(&mut *out, value)?;
    }
    writeln!(out)
}

/// Calls `f` on every non-empty line, writing its record or an error record.
fn for_each_graph(
    input: &mut dyn BufRead,
    out: &mut dyn Write,
    pretty: bool,
    f: &dyn Fn(usize, &str, &Graph) -> crate::Result<serde_json::Value>,
) -> io::Result<bool> {
    let mut all_ok = true;
    let mut buf = String::new();
    let mut line_no = 0;
    loop {
        buf.clear();
        if input.read_line(&mut buf)? == 0 {
            break;
        }
        line_no += 1;
        let text = buf.trim_end_matches(['\n', '\r']);
        if text.trim().is_empty() {
            continue;
        }
        let result = graph6::decode(text).and_then(|g| f(line_no, text, &g));
        match result {
            Ok(v) => write_json(out, &v, pretty)?,
            Err(e) => {
                all_ok = false;
                write_json(out, &ErrorRecord::new(line_no, text, &e), pretty)?;
            }
        }
    }
    out.flush()?;
    Ok(all_ok)
}

pub fn cmd_analyze(input: &mut dyn BufRead, out: &mut dyn Write, pretty: bool) -> io::Result<bool> {
    for_each_graph(input, out, pretty, &|line, text, g| {
        Ok(serde_json::to_value(analyze_graph(line, text, g)?).expect("records serialize"))
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumRecord {
    pub line: usize,
    pub input: String,
    pub n: usize,
    pub exact_main_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub groups: Option<Vec<GroupRecord>>,
}

pub fn cmd_spectrum(input: &mut dyn BufRead, out: &mut dyn Write, exact_only: bool) -> io::Result<bool> {
    for_each_graph(input, out, false, &|line, text, g| {
        let record = SpectrumRecord {
            line,
            input: text.to_string(),
            n: g.order(),
            exact_main_count: exact_main_count(g),
            groups: if exact_only { None } else { Some(groups(g)?) },
        };
        Ok(serde_json::to_value(record).expect("records serialize"))
    })
}

/// Report without the cross-checks: counts and the criterion positives.
fn plain_report(n: usize, opts: &EnumOptions) -> crate::Result<EnumerationReport> {
    let graphs = enumerate_tricyclic(n, opts)?;
    let positives = graphs
        .iter()
        .filter_map(|g| {
            let (a, b) = solve_ab(g).ok()?.integers()?;
            let family = match_family(g).ok().flatten();
            Some(Positive {
                graph6: graph6::encode(g),
                a,
                b,
                family: family.as_ref().map(|d| d.id.to_string()),
                params: family
                    .filter(|d| !d.params.0.is_empty())
                    .map(|d| d.params.to_string()),
            })
        })
        .collect();
    Ok(EnumerationReport {
        n,
        tricyclic: graphs.len(),
        pendant_free: graphs.iter().filter(|g| g.pendant_vertices().is_empty()).count(),
        positives,
        family_instances: enumerate_family_instances(n)?.len(),
        shape_counts: Default::default(),
        cycle_counts: Default::default(),
        max_trace_rel_err: 0.0,
        violations: Vec::new(),
    })
}

pub fn cmd_enumerate(args: &EnumerateArgs, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<i32> {
    let opts = EnumOptions {
        jobs: args.jobs,
        force: args.force,
    };
    let report = if args.verify {
        verify_order(args.n, &opts)
    } else {
        plain_report(args.n, &opts)
    };
    let report = match report {
        Ok(r) => r,
        Err(e) => {
            writeln!(err, "error: {e}")?;
            return Ok(EXIT_USAGE);
        }
    };
    write_json(out, &report, false)?;
    if let Some(path) = &args.emit_positives {
        let mut f = BufWriter::new(File::create(path)?);
        for p in &report.positives {
            writeln!(f, "{}", p.graph6)?;
        }
        f.flush()?;
    }
    if report.violations.is_empty() {
        return Ok(EXIT_OK);
    }
    for v in &report.violations {
        writeln!(err, "violation {}: {} {}", v.kind, v.graph6, v.detail)?;
    }
    Ok(EXIT_VIOLATION)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SidecarRecord {
    pub id: String,
    pub params: Params,
    pub a: i64,
    pub b: i64,
    pub n: usize,
    pub m: usize,
}

fn family_instances(args: &FamilyArgs, id: FamilyId) -> crate::Result<Vec<FamilyDescriptor>> {
    if let Some(p) = &args.params {
        return Ok(vec![descriptor(id, &p.parse()?)?]);
    }
    let Some(max_n) = args.max_n else {
        return Ok(vec![descriptor(id, &id.minimal_params())?]);
    };
    let mut out = Vec::new();
    for n in 1..=max_n.min(64) {
        for p in params_for_order(id, n) {
            let d = descriptor(id, &p)?;
            if crate::families::realize(&d)?.order() == n {
                out.push(d);
            }
        }
    }
    Ok(out)
}

pub fn cmd_family(
    args: &FamilyArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> io::Result<i32> {
    if args.list {
        writeln!(out, "{:<4} {:<5} {:>3} {:>3} {:>4}  params", "id", "base", "a", "b", "n")?;
        for id in FamilyId::all() {
            let d = descriptor(id, &id.minimal_params()).expect("minimal parameters are valid");
            let n = crate::families::realize(&d).expect("minimal instances build").order();
            let params = if d.params.0.is_empty() {
                "-".to_string()
            } else {
                format!("{} (minimal)", d.params)
            };
            let a = if id.number() == 42 { "a".to_string() } else { d.a.to_string() };
            writeln!(out, "{:<4} {:<5} {:>3} {:>3} {:>4}  {params}", id.to_string(), d.shape.to_string(), a, d.b, n)?;
        }
        return Ok(EXIT_OK);
    }
    let id_text = args.id.as_deref().unwrap_or_default();
    let result = id_text
        .parse::<FamilyId>()
        .and_then(|id| family_instances(args, id));
    let descs = match result {
        Ok(d) => d,
        Err(e) => {
            writeln!(err, "error: {e}")?;
            return Ok(EXIT_USAGE);
        }
    };
    if !args.emit {
        for d in &descs {
            write_json(out, d, false)?;
        }
        return Ok(EXIT_OK);
    }
    let mut sidecar: Box<dyn Write> = match &args.sidecar {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(&mut *err),
    };
    for d in &descs {
        let g = match build_family(d) {
            Ok(g) => g,
            Err(e) => {
                drop(sidecar);
                writeln!(err, "error: {e}")?;
                return Ok(EXIT_VIOLATION);
            }
        };
        writeln!(out, "{}", graph6::encode(&g))?;
        let record = SidecarRecord {
            id: d.id.to_string(),
            params: d.params.clone(),
            a: d.a,
            b: d.b,
            n: g.order(),
            m: g.edge_count(),
        };
        write_json(&mut sidecar, &record, false)?;
    }
    sidecar.flush()?;
    Ok(EXIT_OK)
}

fn open_input(file: &Option<PathBuf>) -> io::Result<Box<dyn BufRead>> {
    Ok(match file {
        Some(path) => Box::new(BufReader::new(File::open(path)?)),
        None => Box::new(BufReader::new(io::stdin())),
    })
}

/// Runs a parsed command against the given streams; returns the exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match &cli.command {
        Command::Analyze { file, pretty } => {
            open_input(file).and_then(|mut input| cmd_analyze(&mut *input, out, *pretty).map(|_| EXIT_OK))
        }
        Command::Spectrum { file, exact_only } => {
            open_input(file).and_then(|mut input| cmd_spectrum(&mut *input, out, *exact_only).map(|_| EXIT_OK))
        }
        Command::Enumerate(args) => cmd_enumerate(args, out, err),
        Command::Family(args) => cmd_family(args, out, err),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

/// Entry point of the `qmain` binary.
pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let stdout = io::stdout();
    let stderr = io::stderr();
    let mut out = BufWriter::new(stdout.lock());
    let mut err = stderr.lock();
    let code = run(&cli, &mut out, &mut err);
    let _ = out.flush();
    code
}
