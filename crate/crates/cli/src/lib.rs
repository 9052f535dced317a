//! Command-line front end: build, verify, transform, search and classify.
//! Exit status 0 on success, 1 when a checked property is false, 2 on
//! bad input.

macro_rules! sayln {
    ($($t:tt)*) => {
        $crate::io::say(format_args!($($t)*))
    };
}

mod io;
pub mod netcode;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use matroidal::classify::{classify_expr, classify_matroid, ConstructionExpr};
use matroidal::constructions::*;
use matroidal::matroid::*;
use matroidal::oa::{cyclic_oa23, enumerate_oa343, oa_2_4};
use matroidal::search::{f7star_search, is_regular, voa_backtracking_search, SearchOutcome, SearchResult};
use matroidal::voa::*;
use matroidal::{GroundSet, Voa};
use serde_json::json;

use io::*;
pub use netcode::{netcode_combination, NetcodeScheme, Sink};

#[derive(Parser)]
#[command(name = "matroidal", version, about = "Variable strength orthogonal arrays induced by matroids")]
struct Cli {
    /// Refuse to build arrays with more rows than this.
    #[arg(long, global = true, default_value_t = 10_000_000)]
    max_rows: u64,
    #[command(subcommand)]
    cmd: Top,
}

#[derive(Subcommand)]
enum Top {
    /// Build, inspect and combine matroids (JSON).
    #[command(subcommand)]
    Matroid(MatroidCmd),
    /// Build, verify and transform arrays (CSV).
    #[command(subcommand)]
    Voa(VoaCmd),
    /// Orthogonal arrays of index one.
    #[command(subcommand)]
    Oa(OaCmd),
    /// Exhaustive searches.
    #[command(subcommand)]
    Search(SearchCmd),
    /// Known levels for which a matroid admits a VOA.
    Classify(ClassifyArgs),
    /// Network codes.
    #[command(subcommand)]
    Netcode(NetcodeCmd),
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Uniform,
    Fano,
    FanoDual,
    Wheel,
    Whirl,
    Example1,
}

#[derive(Args)]
struct KindArgs {
    /// A catalogued matroid.
    #[arg(long, value_enum)]
    kind: Option<Kind>,
    /// Rank of a uniform matroid.
    #[arg(long)]
    t: Option<usize>,
    /// Size of a uniform matroid.
    #[arg(long)]
    n: Option<usize>,
    /// Rank of a wheel or whirl.
    #[arg(long)]
    r: Option<usize>,
}

#[derive(Args)]
struct MatroidSource {
    #[command(flatten)]
    kind: KindArgs,
    /// Graph as `u-w` pairs, e.g. `0-1,1-2,2-0`; one element per edge.
    #[arg(long, conflicts_with_all = ["kind", "matrix"])]
    edges: Option<String>,
    /// Integer matrix file; one element per column.
    #[arg(long, conflicts_with = "kind")]
    matrix: Option<PathBuf>,
    /// Field order for --matrix (rational arithmetic when absent).
    #[arg(long, requires = "matrix")]
    field: Option<u32>,
    /// Element labels for --edges or --matrix (default 1..n).
    #[arg(long, value_delimiter = ',')]
    labels: Vec<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConnKind {
    Series,
    Parallel,
    DirectSum,
    TwoSum,
}

#[derive(Subcommand)]
enum MatroidCmd {
    /// Build a matroid and write it as JSON.
    Build {
        #[command(flatten)]
        src: MatroidSource,
        /// Write the circuit form instead of the rank table.
        #[arg(long)]
        circuits: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Independent sets, bases, circuits, loops and coloops.
    Families {
        #[arg(long)]
        matroid: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Minor {
        #[arg(long)]
        matroid: PathBuf,
        #[arg(long, value_delimiter = ',')]
        delete: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        contract: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Dual {
        #[arg(long)]
        matroid: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Connect {
        #[arg(long, value_enum)]
        kind: ConnKind,
        #[arg(long)]
        m1: PathBuf,
        #[arg(long)]
        p1: Option<String>,
        #[arg(long)]
        m2: PathBuf,
        #[arg(long)]
        p2: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the axioms and report basic properties.
    Check {
        #[arg(long)]
        matroid: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum VoaKind {
    Wheel,
    Whirl,
    Example1,
}

#[derive(Clone, Copy, ValueEnum)]
enum TwoSumKind {
    Series,
    Parallel,
}

#[derive(Subcommand)]
enum VoaCmd {
    /// Build a VOA from a catalogued family, a graph or a matrix over ℤ_v.
    Build {
        #[arg(long)]
        v: u32,
        #[arg(long, value_enum)]
        kind: Option<VoaKind>,
        #[arg(long)]
        r: Option<usize>,
        /// Graph as `u-w` pairs; built through a totally unimodular matrix.
        #[arg(long, conflicts_with_all = ["kind", "matrix"])]
        edges: Option<String>,
        /// Integer matrix whose nonzero maximal minors are units mod v.
        #[arg(long, conflicts_with = "kind")]
        matrix: Option<PathBuf>,
        #[arg(long, value_delimiter = ',')]
        labels: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the matroid the array is verified against.
        #[arg(long)]
        matroid_out: Option<PathBuf>,
    },
    /// Check an array against a matroid.
    Verify {
        #[arg(long)]
        array: PathBuf,
        #[arg(long)]
        matroid: PathBuf,
        #[arg(long)]
        v: u32,
        /// Also report the independent-set, basis and circuit conditions.
        #[arg(long)]
        lemma1: bool,
        #[arg(long)]
        json: bool,
    },
    Delete {
        #[command(flatten)]
        input: OneArray,
        #[arg(long, value_delimiter = ',', required = true)]
        delete: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Contract {
        #[command(flatten)]
        input: OneArray,
        #[arg(long, value_delimiter = ',', required = true)]
        contract: Vec<String>,
        /// Symbols on the contracted columns (default: the first row's).
        #[arg(long, value_delimiter = ',')]
        at: Option<Vec<u32>>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Series {
        #[command(flatten)]
        pair: TwoArrays,
        /// Auxiliary OA(2,3,v) (default cyclic).
        #[arg(long)]
        u: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Parallel {
        #[command(flatten)]
        pair: TwoArrays,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Dsum {
        #[command(flatten)]
        pair: TwoArrays,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Twosum {
        #[command(flatten)]
        pair: TwoArrays,
        #[arg(long, value_enum, default_value = "parallel")]
        mode: TwoSumKind,
        /// Joint symbol kept by the series mode.
        #[arg(long, default_value_t = 0)]
        a: u32,
        #[arg(long)]
        u: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Entropy (bits) of every column subset.
    Entropy {
        #[arg(long)]
        array: PathBuf,
        #[arg(long)]
        v: u32,
        /// Compare with r(A)·log₂ v.
        #[arg(long)]
        matroid: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct OneArray {
    #[arg(long)]
    array: PathBuf,
    #[arg(long)]
    v: u32,
    /// Verify the input against this matroid and the output against its minor.
    #[arg(long)]
    matroid: Option<PathBuf>,
}

#[derive(Args)]
struct TwoArrays {
    #[arg(long)]
    t1: PathBuf,
    #[arg(long)]
    p1: Option<String>,
    #[arg(long)]
    t2: PathBuf,
    #[arg(long)]
    p2: Option<String>,
    #[arg(long)]
    v: u32,
    /// Matroids of the two inputs; the output is verified against their connection.
    #[arg(long, requires = "m2")]
    m1: Option<PathBuf>,
    #[arg(long, requires = "m1")]
    m2: Option<PathBuf>,
}

#[derive(Subcommand)]
enum OaCmd {
    /// OA(t, n, v) of index one.
    Build {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        v: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// All 24 OA(3,4,3), canonical.
    Catalog343 {
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum SearchCmd {
    /// Search for a VOA(F7*, v) over the OA(3,4,v) catalogue.
    F7star {
        #[arg(long, default_value_t = 3)]
        v: u32,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Backtracking search for a VOA(M, v).
    Voa {
        #[arg(long)]
        matroid: PathBuf,
        #[arg(long)]
        v: u32,
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long, conflicts_with_all = ["expr", "kind"])]
    matroid: Option<PathBuf>,
    /// Construction expression (JSON).
    #[arg(long, conflicts_with = "kind")]
    expr: Option<PathBuf>,
    #[command(flatten)]
    kind: KindArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum NetcodeCmd {
    /// Code for the (4,2)-combination network from orthogonal Latin squares.
    Combination {
        #[arg(long)]
        v: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Parses `args` (including the program name), runs the command and
/// returns the exit status.
pub fn dispatch<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            match &e {
                CliError::Failed(m) => eprintln!("fail: {m}"),
                CliError::Input(m) => eprintln!("error: {m}"),
            }
            e.code()
        }
    }
}

fn run(cli: Cli) -> CliResult<()> {
    let max_rows = cli.max_rows;
    match cli.cmd {
        Top::Matroid(c) => matroid_cmd(c),
        Top::Voa(c) => voa_cmd(c, max_rows),
        Top::Oa(c) => oa_cmd(c, max_rows),
        Top::Search(c) => search_cmd(c),
        Top::Classify(c) => classify_cmd(c),
        Top::Netcode(NetcodeCmd::Combination { v, out }) => {
            let s = netcode_combination(v)?;
            emit(out.as_deref(), &pretty(&s))
        }
    }
}

fn pretty<T: serde::Serialize>(x: &T) -> String {
    serde_json::to_string_pretty(x).expect("serializable")
}

fn input(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

// ---- matroids ----

fn standard_kind(k: &KindArgs) -> CliResult<Option<StandardKind>> {
    let Some(kind) = k.kind else { return Ok(None) };
    let need = |x: Option<usize>, flag: &str| x.ok_or_else(|| input(format!("--{flag} is required for this kind")));
    Ok(Some(match kind {
        Kind::Uniform => StandardKind::Uniform { t: need(k.t, "t")?, n: need(k.n, "n")? },
        Kind::Fano => StandardKind::Fano,
        Kind::FanoDual => StandardKind::FanoDual,
        Kind::Wheel => StandardKind::Wheel { r: need(k.r, "r")? },
        Kind::Whirl => StandardKind::Whirl { r: need(k.r, "r")? },
        Kind::Example1 => StandardKind::Example1,
    }))
}

fn ground_for(n: usize, labels: &[String]) -> CliResult<GroundSet> {
    if labels.is_empty() {
        return Ok(GroundSet::numbered(n)?);
    }
    if labels.len() != n {
        return Err(input(format!("{} labels for {n} elements", labels.len())));
    }
    Ok(GroundSet::new(labels.iter().cloned())?)
}

fn build_matroid(src: &MatroidSource) -> CliResult<Matroid> {
    if let Some(kind) = standard_kind(&src.kind)? {
        let m = standard(kind)?;
        return if src.labels.is_empty() { Ok(m) } else { Ok(m.relabel(src.labels.iter().cloned())?) };
    }
    if let Some(e) = &src.edges {
        let edges = parse_edges(e)?;
        return Ok(graphic_matroid(&ground_for(edges.len(), &src.labels)?, &edges)?);
    }
    if let Some(p) = &src.matrix {
        let a = load_matrix(p)?;
        let mode = src.field.map_or(FieldMode::Rational, FieldMode::Field);
        return Ok(vector_matroid(&a, &ground_for(a.cols(), &src.labels)?, mode)?);
    }
    Err(input("give one of --kind, --edges or --matrix"))
}

fn labels_of(m: &Matroid, masks: &[u32]) -> Vec<Vec<String>> {
    masks.iter().map(|&a| m.ground().labels_of(a)).collect()
}

fn matroid_cmd(c: MatroidCmd) -> CliResult<()> {
    match c {
        MatroidCmd::Build { src, circuits, out } => {
            let m = build_matroid(&src)?;
            let text = if circuits { pretty(&MatroidJson::circuits_of(&m)) } else { m.to_json() };
            emit(out.as_deref(), &text)
        }
        MatroidCmd::Families { matroid, out } => {
            let m = load_matroid(&matroid)?;
            let f = m.families();
            let one = |es: &[usize]| es.iter().map(|&e| m.labels()[e].clone()).collect::<Vec<_>>();
            let j = json!({
                "independents": labels_of(&m, &f.independents),
                "bases": labels_of(&m, &f.bases),
                "circuits": labels_of(&m, &f.circuits),
                "loops": one(&f.loops),
                "coloops": one(&f.coloops),
            });
            emit(out.as_deref(), &pretty(&j))
        }
        MatroidCmd::Minor { matroid, delete, contract, out } => {
            let m = load_matroid(&matroid)?.minor_by_labels(&delete, &contract)?;
            emit(out.as_deref(), &m.to_json())
        }
        MatroidCmd::Dual { matroid, out } => emit(out.as_deref(), &load_matroid(&matroid)?.dual().to_json()),
        MatroidCmd::Connect { kind, m1, p1, m2, p2, out } => {
            let (a, b) = (load_matroid(&m1)?, load_matroid(&m2)?);
            let kind = match kind {
                ConnKind::Series => ConnectKind::Series,
                ConnKind::Parallel => ConnectKind::Parallel,
                ConnKind::DirectSum => ConnectKind::DirectSum,
                ConnKind::TwoSum => ConnectKind::TwoSum,
            };
            let conn = connect(kind, &a, p1.as_deref(), &b, p2.as_deref())?;
            for o in &conn.provenance {
                let from: Vec<String> = o.from.iter().map(|(k, l)| format!("{l} of M{k}")).collect();
                eprintln!("{} <- {}", o.label, from.join(", "));
            }
            emit(out.as_deref(), &conn.matroid.to_json())
        }
        MatroidCmd::Check { matroid } => check_matroid(&matroid),
    }
}

fn check_matroid(path: &Path) -> CliResult<()> {
    let text = read_text(path)?;
    let j: MatroidJson = serde_json::from_str(&text).map_err(|e| input(format!("{}: {e}", path.display())))?;
    let m = match j.to_matroid() {
        Ok(m) => m,
        Err(matroidal::Error::AxiomViolation(vs)) => {
            for v in &vs {
                sayln!("violation: {v}");
            }
            return Err(CliError::Failed(format!("{} axiom violation(s)", vs.len())));
        }
        Err(e @ matroidal::Error::CircuitAxiom(_)) => return Err(CliError::Failed(e.to_string())),
        Err(e) => return Err(input(format!("{}: {e}", path.display()))),
    };
    let f = m.families();
    let regular = if m.n() <= 12 { Some(is_regular(&m)?) } else { None };
    let j = json!({
        "valid": true,
        "n": m.n(),
        "rank": m.full_rank(),
        "connected": m.is_connected(),
        "loops": f.loops.iter().map(|&e| &m.labels()[e]).collect::<Vec<_>>(),
        "coloops": f.coloops.iter().map(|&e| &m.labels()[e]).collect::<Vec<_>>(),
        "circuits": f.circuits.len(),
        "bases": f.bases.len(),
        "regular": regular,
    });
    emit(None, &pretty(&j))
}

// ---- arrays ----

fn describe(f: &Failure) -> String {
    match f {
        Failure::Multiplicity { subset, expected, row, observed, .. } => format!(
            "columns {{{}}}: pattern {row:?} appears {observed} time(s), expected {expected}",
            subset.join(",")
        ),
        Failure::Range { row, column, value, limit } => {
            format!("row {}, column `{column}`: symbol {value} is outside 0..{limit}", row + 1)
        }
    }
}

/// Errors with exit 1 unless `t` is a VOA of `m`.
fn certify(t: &Voa, m: &Matroid, what: &str) -> CliResult<()> {
    let r = verify_voa(t, m)?;
    match r.failures.first() {
        None => Ok(()),
        Some(f) => Err(CliError::Failed(format!("{what} is not a VOA of its matroid: {}", describe(f)))),
    }
}

fn guard_rows(rows: u128, max: u64) -> CliResult<()> {
    if rows > max as u128 {
        return Err(input(format!("the result would have {rows} rows, above --max-rows {max}")));
    }
    Ok(())
}

fn pow_rows(v: u32, r: u32) -> u128 {
    (v as u128).checked_pow(r).unwrap_or(u128::MAX)
}

fn voa_cmd(c: VoaCmd, max_rows: u64) -> CliResult<()> {
    match c {
        VoaCmd::Build { v, kind, r, edges, matrix, labels, out, matroid_out } => {
            let (t, m) = build_voa(v, kind, r, edges.as_deref(), matrix.as_deref(), &labels, max_rows)?;
            certify(&t, &m, "the built array")?;
            if let Some(p) = &matroid_out {
                emit(Some(p), &m.to_json())?;
            }
            emit_array(out.as_deref(), &t)
        }
        VoaCmd::Verify { array, matroid, v, lemma1, json } => {
            let t = load_array(&array, v)?;
            let m = load_matroid(&matroid)?;
            let r = verify_voa(&t, &m)?;
            let l = if lemma1 { Some(lemma1_report(&t, &m)?) } else { None };
            if json {
                emit(None, &pretty(&json!({ "report": r, "lemma1": l })))?;
            } else {
                match r.failures.first() {
                    None => sayln!("pass: {} x {} array is a VOA at v = {v}; {} subsets checked", t.n_rows(), t.n_cols(), r.subsets_checked),
                    Some(f) => sayln!("fail: {}", describe(f)),
                }
                if let Some(l) = &l {
                    for (name, c) in [("independent sets", &l.independents), ("bases", &l.bases), ("circuits", &l.circuits)] {
                        sayln!("{name}: {} checked, {} failing", c.checked, c.failures.len());
                    }
                }
            }
            if r.pass && l.as_ref().is_none_or(|l| l.pass()) {
                Ok(())
            } else {
                Err(CliError::Failed(format!("{} is not a VOA of {}", array.display(), matroid.display())))
            }
        }
        VoaCmd::Delete { input: i, delete, out } => {
            let (t, m) = load_one(&i)?;
            let res = voa_delete(&t, &delete)?;
            if let Some(m) = m {
                certify(&res, &m.minor_by_labels(&delete, &[])?, "the deletion")?;
            }
            emit_array(out.as_deref(), &res)
        }
        VoaCmd::Contract { input: i, contract, at, out } => {
            let (t, m) = load_one(&i)?;
            let res = voa_contract(&t, &contract, at.as_deref())?;
            if let Some(m) = m {
                certify(&res, &m.minor_by_labels(&[], &contract)?, "the contraction")?;
            }
            emit_array(out.as_deref(), &res)
        }
        VoaCmd::Series { pair, u, out } => {
            let p = load_pair(&pair)?;
            guard_rows(p.t1.n_rows() as u128 * p.t2.n_rows() as u128 / pair.v as u128, max_rows)?;
            let u = u.map(|f| load_array(&f, pair.v)).transpose()?;
            let conn = voa_series(&p.t1, p.p1()?, &p.t2, p.p2()?, u.as_ref())?;
            p.finish(ConnectKind::Series, &conn.array, out.as_deref())
        }
        VoaCmd::Parallel { pair, out } => {
            let p = load_pair(&pair)?;
            guard_rows(p.t1.n_rows() as u128 * p.t2.n_rows() as u128 / pair.v as u128, max_rows)?;
            let conn = voa_parallel(&p.t1, p.p1()?, &p.t2, p.p2()?)?;
            p.finish(ConnectKind::Parallel, &conn.array, out.as_deref())
        }
        VoaCmd::Dsum { pair, out } => {
            let p = load_pair(&pair)?;
            guard_rows(p.t1.n_rows() as u128 * p.t2.n_rows() as u128, max_rows)?;
            let conn = voa_direct_sum(&p.t1, &p.t2)?;
            p.finish(ConnectKind::DirectSum, &conn.array, out.as_deref())
        }
        VoaCmd::Twosum { pair, mode, a, u, out } => {
            let p = load_pair(&pair)?;
            guard_rows(p.t1.n_rows() as u128 * p.t2.n_rows() as u128 / pair.v as u128, max_rows)?;
            let mode = match mode {
                TwoSumKind::Parallel => TwoSumMode::Parallel,
                TwoSumKind::Series => {
                    let u = u.map(|f| load_array(&f, pair.v)).transpose()?;
                    TwoSumMode::Series { a, u: u.map(|u| u.rows().map(<[u32]>::to_vec).collect()) }
                }
            };
            let conn = voa_two_sum(&p.t1, p.p1()?, &p.t2, p.p2()?, &mode)?;
            p.finish(ConnectKind::TwoSum, &conn.array, out.as_deref())
        }
        VoaCmd::Entropy { array, v, matroid, out } => entropy_cmd(&array, v, matroid.as_deref(), out.as_deref()),
    }
}

fn build_voa(
    v: u32,
    kind: Option<VoaKind>,
    r: Option<usize>,
    edges: Option<&str>,
    matrix: Option<&Path>,
    labels: &[String],
    max_rows: u64,
) -> CliResult<(Voa, Matroid)> {
    if v < 2 {
        return Err(matroidal::Error::InvalidLevel(v).into());
    }
    let need_r = || r.ok_or_else(|| input("--r is required for this kind"));
    let (t, m) = match (kind, edges, matrix) {
        (Some(VoaKind::Whirl), _, _) => {
            let r = need_r()?;
            guard_rows(pow_rows(v, r as u32), max_rows)?;
            (whirl_voa(r, v)?, standard(StandardKind::Whirl { r })?)
        }
        (Some(VoaKind::Wheel), _, _) => {
            let (ground, edges) = wheel_graph(need_r()?)?;
            graph_voa(v, &ground, &edges, max_rows)?
        }
        (Some(VoaKind::Example1), _, _) => {
            let (ground, edges) = example1_graph();
            graph_voa(v, &ground, &edges, max_rows)?
        }
        (None, Some(e), _) => {
            let edges = parse_edges(e)?;
            graph_voa(v, &ground_for(edges.len(), labels)?, &edges, max_rows)?
        }
        (None, None, Some(p)) => {
            let a = load_matrix(p)?;
            let ground = ground_for(a.cols(), labels)?;
            let m = vector_matroid(&a, &ground, FieldMode::Rational)?;
            guard_rows(pow_rows(v, m.full_rank()), max_rows)?;
            (matrix_voa(&ZvMatrix::new(a, ground)?, v)?, m)
        }
        _ => return Err(input("give one of --kind, --edges or --matrix")),
    };
    if kind.is_some() && !labels.is_empty() {
        let t = t.relabel(labels.iter().cloned())?;
        return Ok((t, m.relabel(labels.iter().cloned())?));
    }
    Ok((t, m))
}

fn graph_voa(v: u32, ground: &GroundSet, edges: &[Edge], max_rows: u64) -> CliResult<(Voa, Matroid)> {
    let m = graphic_matroid(ground, edges)?;
    guard_rows(pow_rows(v, m.full_rank()), max_rows)?;
    let z = graphic_tu_matrix(ground, edges)?;
    Ok((matrix_voa(&z, v)?, m))
}

fn load_one(i: &OneArray) -> CliResult<(Voa, Option<Matroid>)> {
    let t = load_array(&i.array, i.v)?;
    let m = match &i.matroid {
        Some(p) => {
            let m = load_matroid(p)?;
            certify(&t, &m, &i.array.display().to_string())?;
            Some(m)
        }
        None => {
            eprintln!("note: no --matroid given; the output is not verified");
            None
        }
    };
    Ok((t, m))
}

struct Loaded {
    t1: Voa,
    t2: Voa,
    m: Option<(Matroid, Matroid)>,
    p1: Option<String>,
    p2: Option<String>,
}

impl Loaded {
    fn p1(&self) -> CliResult<&str> {
        self.p1.as_deref().ok_or_else(|| input("--p1 is required"))
    }

    fn p2(&self) -> CliResult<&str> {
        self.p2.as_deref().ok_or_else(|| input("--p2 is required"))
    }

    fn finish(&self, kind: ConnectKind, t: &Voa, out: Option<&Path>) -> CliResult<()> {
        if let Some((m1, m2)) = &self.m {
            let (q1, q2) = match kind {
                ConnectKind::DirectSum => (None, None),
                _ => (self.p1.as_deref(), self.p2.as_deref()),
            };
            let m = connect(kind, m1, q1, m2, q2)?.matroid;
            certify(t, &m, "the connection")?;
        }
        emit_array(out, t)
    }
}

fn load_pair(p: &TwoArrays) -> CliResult<Loaded> {
    let t1 = load_array(&p.t1, p.v)?;
    let t2 = load_array(&p.t2, p.v)?;
    let m = match (&p.m1, &p.m2) {
        (Some(a), Some(b)) => {
            let (m1, m2) = (load_matroid(a)?, load_matroid(b)?);
            certify(&t1, &m1, &p.t1.display().to_string())?;
            certify(&t2, &m2, &p.t2.display().to_string())?;
            Some((m1, m2))
        }
        _ => {
            eprintln!("note: no --m1/--m2 given; the output is not verified");
            None
        }
    };
    Ok(Loaded { t1, t2, m, p1: p.p1.clone(), p2: p.p2.clone() })
}

const ENTROPY_TOL: f64 = 1e-9;

fn entropy_cmd(array: &Path, v: u32, matroid: Option<&Path>, out: Option<&Path>) -> CliResult<()> {
    let mut t = load_array(array, v)?;
    let m = matroid.map(load_matroid).transpose()?;
    if let Some(m) = &m {
        t = t.align_to(m.ground())?;
    }
    let h = entropy_function(&t)?;
    let unit = (v as f64).log2();
    let mut worst: Option<(u32, f64)> = None;
    let entries: Vec<_> = h
        .iter()
        .enumerate()
        .map(|(a, &bits)| {
            let a = a as u32;
            let mut e = json!({ "subset": t.columns().labels_of(a), "bits": bits });
            if let Some(m) = &m {
                let want = m.rank(a) as f64 * unit;
                e["rank_bits"] = json!(want);
                let dev = (bits - want).abs();
                if dev > ENTROPY_TOL && worst.is_none_or(|(_, d)| dev > d) {
                    worst = Some((a, dev));
                }
            }
            e
        })
        .collect();
    emit(out, &pretty(&json!({ "level": v, "labels": t.labels(), "entropy": entries })))?;
    match worst {
        Some((a, dev)) => Err(CliError::Failed(format!(
            "entropy of {{{}}} differs from r(A)·log2 v by {dev:e}",
            t.columns().labels_of(a).join(",")
        ))),
        None => Ok(()),
    }
}

// ---- orthogonal arrays, search, classification ----

fn oa_cmd(c: OaCmd, max_rows: u64) -> CliResult<()> {
    match c {
        OaCmd::Build { t, n, v, out } => {
            if v < 2 {
                return Err(matroidal::Error::InvalidLevel(v).into());
            }
            if t == 0 || t > n || n > matroidal::MAX_GROUND {
                return Err(input(format!("no OA({t},{n},{v}) builder: need 1 <= t <= n <= {}", matroidal::MAX_GROUND)));
            }
            guard_rows(pow_rows(v, t as u32), max_rows)?;
            let ground = GroundSet::numbered(n)?;
            let a = if t == n {
                Voa::full_factorial(v, ground)?
            } else if (t, n) == (2, 3) {
                cyclic_oa23(v)?
            } else if (t, n) == (2, 4) {
                oa_2_4(v)?
            } else if n == t + 1 {
                // (x_1, ..., x_t, x_1 + ... + x_t mod v)
                let base = Voa::full_factorial(v, GroundSet::numbered(t)?)?;
                let rows = base.rows().map(|r| {
                    let mut row = r.to_vec();
                    row.push(r.iter().sum::<u32>() % v);
                    row
                });
                Voa::new(v, ground, rows.collect())?
            } else if t == 1 {
                Voa::new(v, ground, (0..v).map(|x| vec![x; n]).collect())?
            } else {
                return Err(input(format!("no OA({t},{n},{v}) builder; supported: t = 1, t = n, n = t + 1, and t = 2, n = 4")));
            };
            let r = verify_oa(&a, t)?;
            if !(r.holds && r.lambda == Some(1)) {
                return Err(CliError::Failed(format!("built OA({t},{n},{v}) failed its own check")));
            }
            emit_array(out.as_deref(), &a)
        }
        OaCmd::Catalog343 { out_dir } => {
            let all = enumerate_oa343();
            for (i, a) in all.iter().enumerate() {
                let r = verify_oa(a, 3)?;
                if !(r.holds && r.lambda == Some(1)) {
                    return Err(CliError::Failed(format!("catalogue array {} failed strength 3", i + 1)));
                }
            }
            match out_dir {
                Some(dir) => {
                    std::fs::create_dir_all(&dir).map_err(|e| input(format!("{}: {e}", dir.display())))?;
                    for (i, a) in all.iter().enumerate() {
                        emit_array(Some(&dir.join(format!("oa343_{:02}.csv", i + 1))), a)?;
                    }
                    sayln!("{} arrays written to {}", all.len(), dir.display());
                }
                None => {
                    for (i, a) in all.iter().enumerate() {
                        if i > 0 {
                            say("");
                        }
                        emit_array(None, a)?;
                    }
                }
            }
            Ok(())
        }
    }
}

fn report_search(r: &SearchResult, json: bool, m: &Matroid, v: u32, out: Option<&Path>) -> CliResult<()> {
    if json {
        sayln!("{}", pretty(&r.summary()));
    }
    match &r.outcome {
        SearchOutcome::Found(t) => {
            certify(t, m, "the search result")?;
            if !json {
                sayln!("found after {} node(s), {:.3} s", r.trace.nodes, r.elapsed.as_secs_f64());
            }
            if out.is_some() || !json {
                emit_array(out, t)?;
            }
        }
        SearchOutcome::Exhausted { candidates } if !json => {
            sayln!("exhausted {candidates}, none valid: no VOA at v = {v} ({:.3} s)", r.elapsed.as_secs_f64())
        }
        SearchOutcome::BudgetExceeded { nodes } if !json => {
            sayln!("budget exceeded after {nodes} nodes; undecided at v = {v}")
        }
        _ => {}
    }
    Ok(())
}

fn search_cmd(c: SearchCmd) -> CliResult<()> {
    match c {
        SearchCmd::F7star { v, json, out } => {
            let r = f7star_search(v)?;
            report_search(&r, json, &standard(StandardKind::FanoDual)?, v, out.as_deref())
        }
        SearchCmd::Voa { matroid, v, budget, json, out } => {
            let m = load_matroid(&matroid)?;
            let r = voa_backtracking_search(&m, v, budget)?;
            report_search(&r, json, &m, v, out.as_deref())
        }
    }
}

fn classify_cmd(c: ClassifyArgs) -> CliResult<()> {
    let report = if let Some(p) = &c.matroid {
        classify_matroid(&load_matroid(p)?)?
    } else if let Some(p) = &c.expr {
        let e: ConstructionExpr =
            serde_json::from_str(&read_text(p)?).map_err(|e| input(format!("{}: {e}", p.display())))?;
        classify_expr(&e)?
    } else if let Some(k) = standard_kind(&c.kind)? {
        classify_expr(&ConstructionExpr::leaf(k))?
    } else {
        return Err(input("give one of --matroid, --expr or --kind"));
    };
    emit(c.out.as_deref(), &report.to_json())
}
