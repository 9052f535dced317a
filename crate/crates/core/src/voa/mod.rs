//! Arrays over ℤᵥ and the oracles that decide whether they are orthogonal
//! arrays, VOAs of a matroid or MVOAs of an integer polymatroid.

mod csv;
mod verify;

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::matroid::GroundSet;
use crate::subset::{self, Subset};

pub use verify::{
    entropy_function, lemma1_report, verify_mvoa, verify_oa, verify_voa, ClauseReport, Failure, Lemma1Report,
    OaReport, VerificationReport,
};

/// A multiset of rows over labelled columns. `level` is v; entries are
/// normally in `0..v` but arrays meant for MVOA checks may exceed it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Voa {
    level: u32,
    columns: GroundSet,
    data: Vec<u32>,
    rows: usize,
}

impl Voa {
    /// Rows over ℤᵥ; every entry is range checked.
    pub fn new(level: u32, columns: GroundSet, rows: Vec<Vec<u32>>) -> Result<Voa> {
        let t = Self::mixed(level, columns, rows)?;
        t.check_range()?;
        Ok(t)
    }

    /// Rows whose entries may exceed `v − 1` (MVOA input).
    pub fn mixed(level: u32, columns: GroundSet, rows: Vec<Vec<u32>>) -> Result<Voa> {
        if level < 2 {
            return Err(Error::InvalidLevel(level));
        }
        let n = columns.len();
        let mut data = Vec::with_capacity(rows.len() * n);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::Parse(format!("row {i} has {} entries, expected {n}", r.len())));
            }
            data.extend_from_slice(r);
        }
        Ok(Voa { level, columns, data, rows: rows.len() })
    }

    pub fn from_flat(level: u32, columns: GroundSet, data: Vec<u32>) -> Result<Voa> {
        if level < 2 {
            return Err(Error::InvalidLevel(level));
        }
        let n = columns.len();
        let rows = data.len().checked_div(n).unwrap_or(0);
        if n > 0 && !data.len().is_multiple_of(n) {
            return Err(Error::Parse(format!("{} entries do not fill rows of width {n}", data.len())));
        }
        let t = Voa { level, columns, data, rows };
        t.check_range()?;
        Ok(t)
    }

    pub(crate) fn from_parts(level: u32, columns: GroundSet, data: Vec<u32>, rows: usize) -> Voa {
        debug_assert_eq!(data.len(), rows * columns.len());
        Voa { level, columns, data, rows }
    }

    /// The array whose rows are all of ℤᵥⁿ in lexicographic order.
    pub fn full_factorial(level: u32, columns: GroundSet) -> Result<Voa> {
        if level < 2 {
            return Err(Error::InvalidLevel(level));
        }
        let n = columns.len();
        let rows = (level as u64)
            .checked_pow(n as u32)
            .filter(|&r| r <= 1 << 32)
            .ok_or_else(|| Error::TooLarge(format!("{level}^{n} rows")))? as usize;
        let mut data = Vec::with_capacity(rows * n);
        let mut cur = vec![0u32; n];
        for _ in 0..rows {
            data.extend_from_slice(&cur);
            for j in (0..n).rev() {
                cur[j] += 1;
                if cur[j] < level {
                    break;
                }
                cur[j] = 0;
            }
        }
        Ok(Voa { level, columns, data, rows })
    }

    /// A single row with no columns: the unit for direct sums.
    pub fn unit(level: u32) -> Result<Voa> {
        if level < 2 {
            return Err(Error::InvalidLevel(level));
        }
        Ok(Voa { level, columns: GroundSet::numbered(0)?, data: Vec::new(), rows: 1 })
    }

    pub fn check_range(&self) -> Result<()> {
        let n = self.n_cols();
        match self.data.iter().position(|&x| x >= self.level) {
            None => Ok(()),
            Some(p) => Err(Error::SymbolOutOfRange {
                row: p / n,
                column: self.columns.labels()[p % n].clone(),
                value: self.data[p],
                limit: self.level as u64,
            }),
        }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn columns(&self) -> &GroundSet {
        &self.columns
    }

    pub fn labels(&self) -> &[String] {
        self.columns.labels()
    }

    pub fn n_rows(&self) -> usize {
        self.rows
    }

    pub fn n_cols(&self) -> usize {
        self.columns.len()
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u32] {
        let n = self.n_cols();
        &self.data[i * n..(i + 1) * n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u32]> + '_ {
        (0..self.rows).map(|i| self.row(i))
    }

    #[inline]
    pub fn entry(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.n_cols() + c]
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn column_index(&self, label: &str) -> Result<usize> {
        self.columns.index_of(label).ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Columns listed by position, in the given order (rows kept, not deduplicated).
    pub fn select_positions(&self, cols: &[usize]) -> Voa {
        let labels: Vec<String> = cols.iter().map(|&c| self.labels()[c].clone()).collect();
        let mut data = Vec::with_capacity(self.rows * cols.len());
        for r in self.rows() {
            data.extend(cols.iter().map(|&c| r[c]));
        }
        Voa::from_parts(self.level, GroundSet::new(labels).expect("distinct labels"), data, self.rows)
    }

    /// T(A) as an array with A's columns in ascending position order.
    pub fn project(&self, a: Subset) -> Voa {
        let cols: Vec<usize> = subset::elements(a).collect();
        self.select_positions(&cols)
    }

    /// Columns by label, in the given order.
    pub fn select<S: AsRef<str>>(&self, labels: &[S]) -> Result<Voa> {
        let cols = labels.iter().map(|l| self.column_index(l.as_ref())).collect::<Result<Vec<_>>>()?;
        let mut seen = HashSet::new();
        if let Some(c) = cols.iter().find(|&&c| !seen.insert(c)) {
            return Err(Error::DuplicateLabel(self.labels()[*c].clone()));
        }
        Ok(self.select_positions(&cols))
    }

    /// Same array with columns rearranged to `ground`'s label order.
    pub fn align_to(&self, ground: &GroundSet) -> Result<Voa> {
        let mismatch = || Error::ColumnMismatch { array: self.labels().to_vec(), ground: ground.labels().to_vec() };
        if ground.len() != self.n_cols() {
            return Err(mismatch());
        }
        let cols = ground
            .labels()
            .iter()
            .map(|l| self.columns.index_of(l).ok_or_else(mismatch))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.select_positions(&cols))
    }

    pub fn relabel<S: Into<String>>(&self, labels: impl IntoIterator<Item = S>) -> Result<Voa> {
        let columns = GroundSet::new(labels)?;
        if columns.len() != self.n_cols() {
            return Err(Error::Precondition("relabel needs one label per column".into()));
        }
        Ok(Voa { columns, ..self.clone() })
    }

    /// Duplicate rows removed, first occurrences kept in order.
    pub fn ded(&self) -> Voa {
        let mut seen: HashSet<&[u32]> = HashSet::with_capacity(self.rows);
        let mut data = Vec::new();
        let mut rows = 0;
        for r in self.rows() {
            if seen.insert(r) {
                data.extend_from_slice(r);
                rows += 1;
            }
        }
        Voa::from_parts(self.level, self.columns.clone(), data, rows)
    }

    /// Rows sorted lexicographically.
    pub fn canonical(&self) -> Voa {
        let mut rows: Vec<&[u32]> = self.rows().collect();
        rows.sort_unstable();
        let data = rows.concat();
        Voa::from_parts(self.level, self.columns.clone(), data, self.rows)
    }

    /// Equal as row multisets over the same labelled columns.
    pub fn same_rows(&self, other: &Voa) -> bool {
        self.labels() == other.labels() && self.rows == other.rows && self.canonical().data == other.canonical().data
    }

    /// Whether `row` (over this array's columns) occurs.
    pub fn contains_row(&self, row: &[u32]) -> bool {
        self.rows().any(|r| r == row)
    }

    /// Apply a symbol permutation to one column.
    pub fn map_column(&self, col: usize, perm: &[u32]) -> Voa {
        let mut out = self.clone();
        let n = self.n_cols();
        for r in 0..self.rows {
            let x = &mut out.data[r * n + col];
            *x = perm[*x as usize];
        }
        out
    }

    /// Rows reordered by `order` (a permutation of `0..n_rows`).
    pub fn permute_rows(&self, order: &[usize]) -> Voa {
        let data = order.iter().flat_map(|&i| self.row(i).iter().copied()).collect();
        Voa::from_parts(self.level, self.columns.clone(), data, self.rows)
    }
}
