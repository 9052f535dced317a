use std::fmt::Write as _;

use super::Voa;
use crate::error::{Error, Result};
use crate::matroid::GroundSet;

impl Voa {
    /// Header line of labels, then one line per row. No spaces, `\n` endings.
    pub fn to_csv(&self) -> String {
        let mut out = self.labels().join(",");
        out.push('\n');
        for r in self.rows() {
            for (j, x) in r.iter().enumerate() {
                if j > 0 {
                    out.push(',');
                }
                write!(out, "{x}").expect("write to string");
            }
            out.push('\n');
        }
        out
    }

    /// Parse CSV over ℤᵥ, range checking every entry.
    pub fn from_csv(text: &str, level: u32) -> Result<Voa> {
        let t = parse(text, level)?;
        t.check_range().map_err(|e| match e {
            Error::SymbolOutOfRange { row, column, value, limit } => Error::Parse(format!(
                "line {}, column `{column}`: symbol {value} is outside 0..{limit}",
                row + 2
            )),
            other => other,
        })?;
        Ok(t)
    }

    /// Parse CSV without the `< v` range check (MVOA input).
    pub fn from_csv_mixed(text: &str, level: u32) -> Result<Voa> {
        parse(text, level)
    }
}

fn parse(text: &str, level: u32) -> Result<Voa> {
    if level < 2 {
        return Err(Error::InvalidLevel(level));
    }
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.strip_suffix('\r').unwrap_or(l)));
    let (_, header) = lines.next().ok_or_else(|| Error::Parse("line 1: missing header".into()))?;
    let labels: Vec<String> = if header.trim().is_empty() {
        Vec::new()
    } else {
        header.split(',').map(|s| s.trim().to_string()).collect()
    };
    let columns = GroundSet::new(labels).map_err(|e| Error::Parse(format!("line 1: {e}")))?;
    let n = columns.len();
    let mut data = Vec::new();
    let mut rows = 0;
    for (lineno, line) in lines {
        if n > 0 && line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = if n == 0 { Vec::new() } else { line.split(',').collect() };
        if n == 0 && !line.trim().is_empty() {
            return Err(Error::Parse(format!("line {lineno}: entries given but the header has no columns")));
        }
        if fields.len() != n {
            return Err(Error::Parse(format!("line {lineno}: expected {n} fields, found {}", fields.len())));
        }
        for (col, f) in fields.iter().enumerate() {
            let x: u32 = f.trim().parse().map_err(|_| {
                Error::Parse(format!("line {lineno}, field {}: `{}` is not a non-negative integer", col + 1, f.trim()))
            })?;
            data.push(x);
        }
        rows += 1;
    }
    Ok(Voa::from_parts(level, columns, data, rows))
}
