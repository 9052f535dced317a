//! Array-level counterparts of the matroid operations: minors, series and
//! parallel connections, direct sums and 2-sums, plus the matrix, whirl
//! and free-expansion builders.

mod expansion;
mod matrix;
mod whirl;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matroid::Layout;
use crate::oa::{cyclic_oa23, LatinSquare};
use crate::voa::{verify_oa, Voa};

pub use expansion::{free_expansion, FreeExpansion};
pub use matrix::{graphic_tu_matrix, is_totally_unimodular, matrix_voa, ZvMatrix};
pub use whirl::{whirl_voa, whirl_voa_with, WhirlBuild, WhirlStage, DEFAULT_WHIRL_BUDGET};

/// T ∖ S = ded(T(N∖S)).
pub fn voa_delete<S: AsRef<str>>(t: &Voa, delete: &[S]) -> Result<Voa> {
    let s = t.columns().mask_of(delete)?;
    let keep = t.columns().full() & !s;
    Ok(t.project(keep).ded())
}

/// T|_{S:a}: the rows c(N∖S) of every row c with c(S) = a. `a` lists
/// the symbols on S in the array's column order; by default it is the
/// first row of T(S).
pub fn voa_contract<S: AsRef<str>>(t: &Voa, contract: &[S], a: Option<&[u32]>) -> Result<Voa> {
    let s = t.columns().mask_of(contract)?;
    let s_cols: Vec<usize> = crate::subset::elements(s).collect();
    let keep: Vec<usize> = (0..t.n_cols()).filter(|&c| s & 1 << c == 0).collect();
    let target: Vec<u32> = match a {
        Some(a) => {
            if a.len() != s_cols.len() {
                return Err(Error::NotARow(a.to_vec()));
            }
            a.to_vec()
        }
        None if t.n_rows() == 0 => return Err(Error::Precondition("contraction of an empty array".into())),
        None => s_cols.iter().map(|&c| t.entry(0, c)).collect(),
    };
    let mut data = Vec::new();
    let mut rows = 0;
    for r in t.rows() {
        if s_cols.iter().zip(&target).all(|(&c, &x)| r[c] == x) {
            data.extend(keep.iter().map(|&c| r[c]));
            rows += 1;
        }
    }
    if rows == 0 {
        return Err(Error::NotARow(target));
    }
    let labels: Vec<String> = keep.iter().map(|&c| t.labels()[c].clone()).collect();
    Ok(Voa::from_parts(t.level(), crate::matroid::GroundSet::new(labels)?, data, rows))
}

fn same_level(t1: &Voa, t2: &Voa) -> Result<u32> {
    if t1.level() != t2.level() {
        return Err(Error::LevelMismatch(t1.level(), t2.level()));
    }
    Ok(t1.level())
}

fn base_positions(t1: &Voa, p1: &str, t2: &Voa, p2: &str) -> Result<(usize, usize)> {
    Ok((t1.column_index(p1)?, t2.column_index(p2)?))
}

/// Checks that `u` is an OA(2,3,v) of index one and reads it as (x,y) ↦ z.
fn auxiliary(u: Option<&Voa>, v: u32) -> Result<LatinSquare> {
    let owned;
    let u = match u {
        Some(u) => u,
        None => {
            owned = cyclic_oa23(v)?;
            &owned
        }
    };
    if u.level() != v || u.n_cols() != 3 {
        return Err(Error::InvalidAuxiliary(v));
    }
    let report = verify_oa(u, 2)?;
    if !report.holds || report.lambda != Some(1) {
        return Err(Error::InvalidAuxiliary(v));
    }
    LatinSquare::from_oa23(u)
}

/// An array connection together with the column layout used.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrayConnection {
    pub array: Voa,
    pub layout: Layout,
}

impl ArrayConnection {
    pub fn joint_label(&self) -> Option<&str> {
        self.layout.joint.map(|j| self.layout.ground.labels()[j].as_str())
    }
}

fn assemble(
    layout: &Layout,
    level: u32,
    pairs: impl Iterator<Item = (usize, usize, Option<u32>)>,
    t1: &Voa,
    t2: &Voa,
) -> Voa {
    let n = layout.ground.len();
    let mut data = Vec::new();
    let mut rows = 0;
    let mut row = vec![0u32; n];
    for (i, j, p) in pairs {
        for (c, pos) in layout.map1.iter().enumerate() {
            if let Some(pos) = pos {
                row[*pos] = t1.entry(i, c);
            }
        }
        for (c, pos) in layout.map2.iter().enumerate() {
            if let Some(pos) = pos {
                row[*pos] = t2.entry(j, c);
            }
        }
        if let (Some(jp), Some(x)) = (layout.joint, p) {
            row[jp] = x;
        }
        data.extend_from_slice(&row);
        rows += 1;
    }
    Voa::from_parts(level, layout.ground.clone(), data, rows)
}

/// Series connection: one row per (row a₁ of T₁, row a₂ of T₂), with
/// b(p) chosen so that (a₁(p₁), a₂(p₂), b(p)) is a row of `u` (default
/// the cyclic OA(2,3,v)). Rows are T₁-major.
pub fn voa_series(t1: &Voa, p1: &str, t2: &Voa, p2: &str, u: Option<&Voa>) -> Result<ArrayConnection> {
    let v = same_level(t1, t2)?;
    let (i1, i2) = base_positions(t1, p1, t2, p2)?;
    let sq = auxiliary(u, v)?;
    let layout = Layout::new(t1.labels(), Some(i1), t2.labels(), Some(i2))?;
    let pairs = (0..t1.n_rows())
        .flat_map(|i| (0..t2.n_rows()).map(move |j| (i, j)))
        .map(|(i, j)| (i, j, Some(sq.get(t1.entry(i, i1), t2.entry(j, i2)))));
    let array = assemble(&layout, v, pairs, t1, t2);
    Ok(ArrayConnection { array, layout })
}

/// Parallel connection: one row per pair with a₁(p₁) = a₂(p₂), and
/// b(p) = a₁(p₁).
pub fn voa_parallel(t1: &Voa, p1: &str, t2: &Voa, p2: &str) -> Result<ArrayConnection> {
    let v = same_level(t1, t2)?;
    let (i1, i2) = base_positions(t1, p1, t2, p2)?;
    let layout = Layout::new(t1.labels(), Some(i1), t2.labels(), Some(i2))?;
    // rows of T₂ grouped by their symbol at p₂, keeping row order
    let mut by_symbol: Vec<Vec<usize>> = vec![Vec::new(); v as usize];
    for j in 0..t2.n_rows() {
        by_symbol[t2.entry(j, i2) as usize].push(j);
    }
    let by_symbol = &by_symbol;
    let pairs = (0..t1.n_rows()).flat_map(|i| {
        let x = t1.entry(i, i1);
        by_symbol[x as usize].iter().map(move |&j| (i, j, Some(x)))
    });
    let array = assemble(&layout, v, pairs, t1, t2);
    Ok(ArrayConnection { array, layout })
}

/// Direct sum: every row of T₁ concatenated with every row of T₂.
pub fn voa_direct_sum(t1: &Voa, t2: &Voa) -> Result<ArrayConnection> {
    let v = same_level(t1, t2)?;
    let layout = Layout::new(t1.labels(), None, t2.labels(), None)?;
    let pairs = (0..t1.n_rows()).flat_map(|i| (0..t2.n_rows()).map(move |j| (i, j, None)));
    let array = assemble(&layout, v, pairs, t1, t2);
    Ok(ArrayConnection { array, layout })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum TwoSumMode {
    /// S(T₁,T₂)|_{p:a} with auxiliary `u` (default cyclic).
    Series { a: u32, u: Option<Vec<Vec<u32>>> },
    /// P(T₁,T₂) ∖ p.
    Parallel,
}

/// 2-sum by either composition.
pub fn voa_two_sum(t1: &Voa, p1: &str, t2: &Voa, p2: &str, mode: &TwoSumMode) -> Result<ArrayConnection> {
    let (conn, series_a) = match mode {
        TwoSumMode::Series { a, u } => {
            let aux = match u {
                Some(rows) => Some(Voa::new(t1.level(), crate::matroid::GroundSet::numbered(3)?, rows.clone())?),
                None => None,
            };
            (voa_series(t1, p1, t2, p2, aux.as_ref())?, Some(*a))
        }
        TwoSumMode::Parallel => (voa_parallel(t1, p1, t2, p2)?, None),
    };
    let joint = conn.joint_label().expect("joint present").to_string();
    let array = match series_a {
        Some(a) => voa_contract(&conn.array, &[joint.as_str()], Some(&[a]))?,
        None => voa_delete(&conn.array, &[joint.as_str()])?,
    };
    let mut layout = conn.layout;
    let jp = layout.joint.take().expect("joint present");
    let shift = |p: Option<usize>| match p {
        Some(q) if q == jp => None,
        Some(q) if q > jp => Some(q - 1),
        other => other,
    };
    layout.map1 = layout.map1.into_iter().map(shift).collect();
    layout.map2 = layout.map2.into_iter().map(shift).collect();
    layout.provenance.retain(|o| o.label != joint);
    layout.ground = array.columns().clone();
    Ok(ArrayConnection { array, layout })
}
