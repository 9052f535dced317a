use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use matroidal::linalg::IntMatrix;
use matroidal::matroid::Edge;
use matroidal::{Matroid, Voa};
use tempfile::NamedTempFile;

/// Exit 1: the computation ran and the property is false.
/// Exit 2: bad input or an operation that cannot run on it.
#[derive(Debug)]
pub enum CliError {
    Failed(String),
    Input(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Input(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Failed(m) | CliError::Input(m) => f.write_str(m),
        }
    }
}

impl From<matroidal::Error> for CliError {
    fn from(e: matroidal::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn load_matroid(path: &Path) -> CliResult<Matroid> {
    Matroid::from_json(&read_text(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn load_array(path: &Path, v: u32) -> CliResult<Voa> {
    Voa::from_csv(&read_text(path)?, v).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Integer matrix, one row per line, entries separated by commas or spaces.
pub fn load_matrix(path: &Path) -> CliResult<IntMatrix> {
    let text = read_text(path)?;
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let mut row = Vec::new();
        for (j, tok) in line.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()).enumerate() {
            let x = tok.parse::<i64>().map_err(|_| {
                CliError::Input(format!("{}: line {}, column {}: `{tok}` is not an integer", path.display(), i + 1, j + 1))
            })?;
            row.push(x);
        }
        rows.push(row);
    }
    IntMatrix::from_rows(&rows).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// `0-1,1-2,2-0` style edge lists.
pub fn parse_edges(s: &str) -> CliResult<Vec<Edge>> {
    s.split(',')
        .enumerate()
        .map(|(i, tok)| {
            let bad = || CliError::Input(format!("edge {}: `{tok}` is not of the form u-w", i + 1));
            let (a, b) = tok.trim().split_once('-').ok_or_else(bad)?;
            Ok(Edge(a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
        })
        .collect()
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, fill: impl FnOnce(&mut dyn Write) -> io::Result<()>) -> CliResult<()> {
    let io_err = |e: io::Error| CliError::Input(format!("{}: {e}", path.display()));
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let tmp = NamedTempFile::new_in(&dir).map_err(io_err)?;
    {
        let mut w = BufWriter::new(tmp.as_file());
        fill(&mut w).map_err(io_err)?;
        w.flush().map_err(io_err)?;
    }
    tmp.persist(path).map_err(|e| io_err(e.error))?;
    Ok(())
}

/// To `out` when given, else stdout.
pub fn emit(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(p) => write_atomic(p, |w| w.write_all(text.as_bytes())),
        None => {
            say(text.strip_suffix('\n').unwrap_or(text));
            Ok(())
        }
    }
}

/// One line to stdout; a closed pipe is not an error.
pub fn say(line: impl std::fmt::Display) {
    let _ = writeln!(io::stdout().lock(), "{line}");
}

fn quiet_pipe(r: io::Result<()>) -> io::Result<()> {
    match r {
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
        other => other,
    }
}

fn write_rows(w: &mut dyn Write, t: &Voa) -> io::Result<()> {
    writeln!(w, "{}", t.labels().join(","))?;
    let mut line = String::new();
    for r in t.rows() {
        line.clear();
        for (j, x) in r.iter().enumerate() {
            if j > 0 {
                line.push(',');
            }
            line.push_str(&x.to_string());
        }
        writeln!(w, "{line}")?;
    }
    Ok(())
}

/// CSV, row by row.
pub fn emit_array(out: Option<&Path>, t: &Voa) -> CliResult<()> {
    match out {
        Some(p) => write_atomic(p, |w| write_rows(w, t)),
        None => {
            let stdout = io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            quiet_pipe(write_rows(&mut w, t).and_then(|_| w.flush())).map_err(|e| CliError::Input(format!("stdout: {e}")))
        }
    }
}
