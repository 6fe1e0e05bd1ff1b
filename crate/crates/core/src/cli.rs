//! Command-line front end. Every command prints one JSON document.
//!
//! Exit codes: 0 success, 2 malformed input, 3 failed precondition, 4 the
//! action has a root-of-unity eigenvalue.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::commensurator::{
    self, centralizer_basis, has_root_of_unity_eigenvalue, triple_compose, triple_equiv, AmbientAction,
    CommError, CommTriple,
};
use crate::defengine::{self, analyze, AnalyzeOptions, DefBound, DefError};
use crate::exactalg::{Field, Int, IntMatrix};
use crate::groups::{self, catalog, GroupError, GroupKind, GroupSpec, Presentation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("{0}")]
    Schema(String),
    #[error("{0}")]
    Precondition(String),
    #[error("{0}")]
    RootOfUnity(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Schema(_) => 2,
            CliError::Precondition(_) => 3,
            CliError::RootOfUnity(_) => 4,
        }
    }
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::Parse(_) | GroupError::Shape(_) | GroupError::UnknownCatalog(_) => {
                CliError::Schema(e.to_string())
            }
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<DefError> for CliError {
    fn from(e: DefError) -> Self {
        match e {
            DefError::Group(g) => g.into(),
            other => CliError::Precondition(other.to_string()),
        }
    }
}

impl From<CommError> for CliError {
    fn from(e: CommError) -> Self {
        match e {
            CommError::RootOfUnity => CliError::RootOfUnity(e.to_string()),
            CommError::Json(_) => CliError::Schema(e.to_string()),
            other => CliError::Precondition(other.to_string()),
        }
    }
}

/// Integer accepted either as a JSON number or as a decimal string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JsonInt {
    Num(i64),
    Str(String),
}

impl JsonInt {
    fn to_int(&self) -> Result<Int, CliError> {
        match self {
            JsonInt::Num(n) => Ok(Int::from(*n)),
            JsonInt::Str(s) => Int::from_str(s.trim()).map_err(|_| CliError::Schema(format!("bad integer '{s}'"))),
        }
    }

    fn from_int(x: &Int) -> Self {
        match x.to_i64() {
            Some(n) => JsonInt::Num(n),
            None => JsonInt::Str(x.to_string()),
        }
    }
}

type JsonMatrix = Vec<Vec<JsonInt>>;

fn matrix_from_json(rows: &JsonMatrix) -> Result<IntMatrix, CliError> {
    let rows = rows
        .iter()
        .map(|r| r.iter().map(JsonInt::to_int).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    IntMatrix::from_rows(&rows).map_err(|e| CliError::Schema(e.to_string()))
}

fn matrix_to_json(m: &IntMatrix) -> JsonMatrix {
    m.to_rows().iter().map(|r| r.iter().map(JsonInt::from_int).collect()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationFile {
    pub generators: Vec<String>,
    pub relators: Vec<String>,
}

/// Input document, discriminated by `"kind"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum SpecFile {
    Semidirect {
        matrix: JsonMatrix,
    },
    Theta3 {
        matrix: JsonMatrix,
        m: JsonInt,
    },
    Tower {
        matrices: Vec<JsonMatrix>,
    },
    Catalog {
        catalog: String,
    },
    Presentation {
        presentation: PresentationFile,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        hirsch: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        orientable: Option<bool>,
    },
}

impl SpecFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Schema(format!("invalid spec: {e}")))
    }

    /// Builds the group, checking shapes and unimodularity.
    pub fn to_spec(&self) -> Result<GroupSpec, CliError> {
        Ok(match self {
            SpecFile::Semidirect { matrix } => GroupSpec::semidirect(matrix_from_json(matrix)?)?,
            SpecFile::Theta3 { matrix, m } => GroupSpec::theta3(matrix_from_json(matrix)?, m.to_int()?)?,
            SpecFile::Tower { matrices } => {
                GroupSpec::tower(matrices.iter().map(matrix_from_json).collect::<Result<_, _>>()?)?
            }
            SpecFile::Catalog { catalog } => GroupSpec::catalog(catalog)?,
            SpecFile::Presentation {
                presentation,
                hirsch,
                orientable,
            } => {
                let gens: Vec<&str> = presentation.generators.iter().map(String::as_str).collect();
                let p = Presentation::parse_relations(&gens, &presentation.relators)?;
                GroupSpec::raw(p).with_metadata(*hirsch, *orientable)
            }
        })
    }

    pub fn from_spec(spec: &GroupSpec) -> Self {
        match &spec.kind {
            GroupKind::SemidirectZnZ(a) => SpecFile::Semidirect { matrix: matrix_to_json(a) },
            GroupKind::Theta3 { a, m } => SpecFile::Theta3 {
                matrix: matrix_to_json(a),
                m: JsonInt::from_int(m),
            },
            GroupKind::Tower(mats) => SpecFile::Tower {
                matrices: mats.iter().map(matrix_to_json).collect(),
            },
            GroupKind::Catalog(name) => SpecFile::Catalog { catalog: name.clone() },
            GroupKind::RawPresentation(p) => SpecFile::Presentation {
                presentation: PresentationFile {
                    generators: p.generators().to_vec(),
                    relators: p.relator_strings(),
                },
                hirsch: spec.hirsch,
                orientable: spec.orientable,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Betti {
    pub q: usize,
    pub f2: usize,
    pub f3: usize,
    pub f5: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Invariants {
    pub beta1: Betti,
    pub h1: String,
    pub orientable: Option<bool>,
    pub hirsch: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Deficiency {
    pub lo: i64,
    pub hi: i64,
    pub exact: bool,
    pub justifications: Vec<DefBound>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommensuratorInfo {
    pub root_of_unity_eigenvalue: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub centralizer_dimension: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportFile {
    pub group: String,
    pub invariants: Invariants,
    pub deficiency: Deficiency,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub commensurator: Option<CommensuratorInfo>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generated_at: Option<u64>,
}

fn h1_text(inv: &crate::exactalg::CokernelInvariants) -> String {
    let mut parts: Vec<String> = inv.torsion.iter().map(|d| format!("Z/{d}")).collect();
    if inv.free_rank > 0 {
        parts.push(if inv.free_rank == 1 { "Z".into() } else { format!("Z^{}", inv.free_rank) });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

pub fn cmd_analyze(spec: &GroupSpec, opts: &AnalyzeOptions) -> Result<ReportFile, CliError> {
    let report = analyze(spec, opts)?;
    let p = spec.presentation();
    let b = |f: Field| groups::beta1(&p, &f).map_err(CliError::from);
    let invariants = Invariants {
        beta1: Betti {
            q: b(Field::Rationals)?,
            f2: b(Field::Prime(2))?,
            f3: b(Field::Prime(3))?,
            f5: b(Field::Prime(5))?,
        },
        h1: h1_text(&groups::h1(&p)),
        orientable: groups::orientable_over_q(spec).ok(),
        hirsch: groups::hirsch_length(spec).ok(),
    };
    let commensurator = match &spec.resolve().kind {
        GroupKind::SemidirectZnZ(a) if a.rows() <= 3 => {
            let rou = has_root_of_unity_eigenvalue(a)?;
            let dim = if rou {
                None
            } else {
                let act = AmbientAction::new(a.clone())?;
                Some(centralizer_basis(&act, 1)?.len())
            };
            Some(CommensuratorInfo {
                root_of_unity_eigenvalue: rou,
                centralizer_dimension: dim,
            })
        }
        _ => None,
    };
    Ok(ReportFile {
        group: report.group,
        invariants,
        deficiency: Deficiency {
            lo: report.lo,
            hi: report.hi,
            exact: report.exact,
            justifications: report.bounds,
        },
        commensurator,
        generated_at: None,
    })
}

/// Window report for Hirsch length `n` and first Betti number `beta`.
pub fn cmd_bounds(n: u64, beta: u64, class2: bool) -> Result<Value, CliError> {
    let (lo, hi) = defengine::bounds_window(n, beta, class2)?;
    let mut table = Vec::new();
    let mut total = Int::from(0);
    for k in 1.. {
        let r = defengine::witt_rank(beta, k)?;
        total += &r;
        if total > Int::from(n) {
            break;
        }
        table.push(json!({"k": k, "rank": JsonInt::from_int(&r), "hirsch": JsonInt::from_int(&total)}));
    }
    let n_i = n as i64;
    Ok(json!({
        "n": n,
        "beta": beta,
        "class2": class2,
        "window": {"lo": lo, "hi": hi},
        "free_abelian_deficiency": defengine::free_abelian_deficiency(n),
        "witt_ranks": table,
        "conjecture": {
            "lo": n_i - n_i * (n_i - 1) / 2,
            "hi": 2 - ((n_i + 1) / 2),
            "status": "conjecture",
        },
    }))
}

pub fn cmd_catalog() -> Value {
    let entries: Vec<Value> = catalog()
        .into_iter()
        .map(|e| {
            json!({
                "name": e.name,
                "description": e.description,
                "spec": SpecFile::from_spec(&e.spec),
                "interval": [e.interval.0, e.interval.1],
                "citation": e.citation,
                "presentations": e.presentations.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({"count": entries.len(), "entries": entries})
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CommQuery {
    ValidateTriple(Value),
    Compose(Value, Value),
    Equiv(Value, Value),
    Centralizer(u64),
}

/// The action of a 3x3 semidirect spec, screened.
pub fn comm_action(spec: &GroupSpec) -> Result<AmbientAction, CliError> {
    let a = match &spec.resolve().kind {
        GroupKind::SemidirectZnZ(a) if a.rows() == 3 => a.clone(),
        _ => {
            return Err(CliError::Precondition(
                "commensurator commands need a semidirect spec with a 3x3 matrix".into(),
            ))
        }
    };
    AmbientAction::new(a).map_err(|e| match e {
        CommError::RootOfUnity => CliError::RootOfUnity(
            "A has a root-of-unity eigenvalue; only actions without such eigenvalues are supported".into(),
        ),
        other => other.into(),
    })
}

pub fn cmd_comm(spec: &GroupSpec, query: &CommQuery) -> Result<Value, CliError> {
    let act = comm_action(spec)?;
    let a = json!(matrix_to_json(act.matrix()));
    let parse = |v: &Value| -> Result<CommTriple, CliError> {
        let t = CommTriple::from_json(v)?;
        t.validate(&act)?;
        Ok(t)
    };
    Ok(match query {
        CommQuery::ValidateTriple(v) => {
            let t = CommTriple::from_json(v)?;
            match t.validate(&act) {
                Ok(()) => json!({"action": a, "valid": true, "triple": t.to_json()}),
                Err(e) => json!({"action": a, "valid": false, "reason": e.to_string()}),
            }
        }
        CommQuery::Compose(v1, v2) => {
            let (t1, t2) = (parse(v1)?, parse(v2)?);
            let c = triple_compose(&act, &t1, &t2)?;
            json!({
                "action": a,
                "result": c.to_json(),
                "equivalent_to_left": triple_equiv(&act, &c, &t1)?,
                "equivalent_to_right": triple_equiv(&act, &c, &t2)?,
            })
        }
        CommQuery::Equiv(v1, v2) => {
            let (t1, t2) = (parse(v1)?, parse(v2)?);
            json!({"action": a, "equivalent": triple_equiv(&act, &t1, &t2)?})
        }
        CommQuery::Centralizer(k) => {
            let basis = centralizer_basis(&act, *k)?;
            json!({
                "action": a,
                "k": k,
                "dimension": basis.len(),
                "basis": basis.iter().map(|b| b.to_json()).collect::<Vec<_>>(),
                "zn": commensurator::comm_of_zn(3).statement,
            })
        }
    })
}

#[derive(Debug, Parser)]
#[command(name = "infrasolv", version, about = "Deficiency intervals and commensurators for virtually poly-Z groups")]
pub struct Cli {
    /// Restrict the Betti-number rule to one field: q, f2, f3 or f5
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// Ignore curated catalog values
    #[arg(long, global = true)]
    pub no_catalog: bool,
    /// Indentation width of the JSON output; 0 prints one line
    #[arg(long, global = true, default_value_t = 2)]
    pub json_indent: usize,
    /// Omit the generated_at field
    #[arg(long, global = true)]
    pub no_timestamp: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Analyze the group described by a spec file
    Analyze { path: PathBuf },
    /// Deficiency window for Hirsch length n and first Betti number beta
    Bounds {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        beta: u64,
        #[arg(long)]
        class2: bool,
    },
    /// Commensurator calculations for a 3x3 semidirect spec
    Comm {
        path: PathBuf,
        #[command(subcommand)]
        query: CommCommand,
    },
    /// List the catalog
    Catalog,
}

/// Triples are given as a path to a JSON file or as inline JSON.
#[derive(Debug, Subcommand)]
pub enum CommCommand {
    ValidateTriple { triple: String },
    Compose { left: String, right: String },
    Equiv { left: String, right: String },
    Centralizer {
        #[arg(long, default_value_t = 1)]
        k: u64,
    },
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Schema(format!("cannot read {}: {e}", path.display())))
}

fn triple_arg(s: &str) -> Result<Value, CliError> {
    let text = if s.trim_start().starts_with('{') {
        s.to_string()
    } else {
        read(Path::new(s))?
    };
    serde_json::from_str(&text).map_err(|e| CliError::Schema(format!("invalid triple: {e}")))
}

fn load_spec(path: &Path) -> Result<GroupSpec, CliError> {
    SpecFile::parse(&read(path)?)?.to_spec()
}

fn parse_field(s: &str) -> Result<Field, CliError> {
    let f = Field::from_str(s).map_err(CliError::Schema)?;
    match f {
        Field::Rationals | Field::Prime(2 | 3 | 5) => Ok(f),
        _ => Err(CliError::Schema(format!("--field must be q, f2, f3 or f5, not {s}"))),
    }
}

fn timestamp() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs())
}

/// Runs one command and returns its JSON output.
pub fn execute(cli: &Cli) -> Result<Value, CliError> {
    let stamp = (!cli.no_timestamp).then(timestamp);
    let mut value = match &cli.command {
        Command::Analyze { path } => {
            let spec = load_spec(path)?;
            let opts = AnalyzeOptions {
                use_catalog: !cli.no_catalog,
                fields: cli.field.as_deref().map(parse_field).transpose()?.map(|f| vec![f]),
                ..AnalyzeOptions::default()
            };
            serde_json::to_value(cmd_analyze(&spec, &opts)?).expect("report serializes")
        }
        Command::Bounds { n, beta, class2 } => cmd_bounds(*n, *beta, *class2)?,
        Command::Comm { path, query } => {
            let spec = load_spec(path)?;
            let q = match query {
                CommCommand::ValidateTriple { triple } => CommQuery::ValidateTriple(triple_arg(triple)?),
                CommCommand::Compose { left, right } => CommQuery::Compose(triple_arg(left)?, triple_arg(right)?),
                CommCommand::Equiv { left, right } => CommQuery::Equiv(triple_arg(left)?, triple_arg(right)?),
                CommCommand::Centralizer { k } => CommQuery::Centralizer(*k),
            };
            cmd_comm(&spec, &q)?
        }
        Command::Catalog => cmd_catalog(),
    };
    if let (Some(t), Value::Object(map)) = (stamp, &mut value) {
        map.insert("generated_at".into(), json!(t));
    }
    Ok(value)
}

pub fn render(value: &Value, indent: usize) -> String {
    if indent == 0 {
        return value.to_string();
    }
    let pad = vec![b' '; indent];
    let mut buf = Vec::new();
    let fmt = serde_json::ser::PrettyFormatter::with_indent(&pad);
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, fmt);
    value.serialize(&mut ser).expect("in-memory write");
    String::from_utf8(buf).expect("JSON is UTF-8")
}

/// Parses `args` (program name first), runs, and writes to the given
/// streams. Returns the exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return 2;
            }
            let _ = write!(out, "{e}");
            return 0;
        }
    };
    match execute(&cli) {
        Ok(v) => {
            let _ = writeln!(out, "{}", render(&v, cli.json_indent));
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn run() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
