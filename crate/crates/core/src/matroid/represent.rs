use serde::{Deserialize, Serialize};

use super::{GroundSet, Matroid};
use crate::error::{Error, Result};
use crate::gf::GfTable;
use crate::linalg::{rank_gf, rank_rational, IntMatrix};
use crate::subset::{self, Subset};

/// Arithmetic used for a vector matroid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldMode {
    /// GF(q) for a prime power q; integer entries are reduced mod q first
    /// (for non-prime q this means entries name field elements by index).
    Field(u32),
    Rational,
}

/// Column matroid of `matrix`, one ground element per column.
pub fn vector_matroid(matrix: &IntMatrix, ground: &GroundSet, mode: FieldMode) -> Result<Matroid> {
    if matrix.cols() != ground.len() {
        return Err(Error::Precondition(format!(
            "matrix has {} columns but the ground set has {} labels",
            matrix.cols(),
            ground.len()
        )));
    }
    let rows = matrix.rows();
    let n = ground.len();
    let mut table = vec![0u8; 1 << n];
    let full_rank: usize;
    match mode {
        FieldMode::Field(q) => {
            let field = GfTable::new(q)?;
            let reduced: Vec<u32> = matrix.entries().iter().map(|&x| field.element(x)).collect();
            full_rank = rank_gf(&field, &reduced, rows, n);
            fill(&mut table, n, full_rank, |cols| {
                rank_gf(&field, &block(&reduced, rows, n, cols), rows, cols.len())
            });
        }
        FieldMode::Rational => {
            let wide: Vec<i128> = matrix.entries().iter().map(|&x| x as i128).collect();
            full_rank = rank_rational(&wide, rows, n);
            fill(&mut table, n, full_rank, |cols| rank_rational(&block(&wide, rows, n, cols), rows, cols.len()));
        }
    }
    Ok(Matroid::from_trusted(ground.clone(), table))
}

fn block<T: Copy>(entries: &[T], rows: usize, width: usize, cols: &[usize]) -> Vec<T> {
    let mut out = Vec::with_capacity(rows * cols.len());
    for r in 0..rows {
        out.extend(cols.iter().map(|&c| entries[r * width + c]));
    }
    out
}

/// Fill a rank table bottom-up. r(A) is r(A−e) or r(A−e)+1, so an
/// elimination is only needed when neither bound settles it.
fn fill(table: &mut [u8], n: usize, full_rank: usize, rank_of: impl Fn(&[usize]) -> usize) {
    let mut cols = Vec::with_capacity(n);
    for a in 1..1usize << n {
        let top = usize::BITS - 1 - a.leading_zeros();
        let below = table[a & !(1 << top)];
        table[a] = if below as usize == full_rank {
            below
        } else {
            cols.clear();
            cols.extend(subset::elements(a as Subset));
            rank_of(&cols) as u8
        };
    }
}

/// An edge between two vertices of a multigraph; equal endpoints make a loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge(pub usize, pub usize);

/// Cycle matroid: r(A) = |V(A)| − components(A).
pub fn graphic_matroid(ground: &GroundSet, edges: &[Edge]) -> Result<Matroid> {
    if edges.len() != ground.len() {
        return Err(Error::Precondition(format!(
            "{} edges but {} labels",
            edges.len(),
            ground.len()
        )));
    }
    // dense vertex ids
    let mut verts: Vec<usize> = edges.iter().flat_map(|e| [e.0, e.1]).collect();
    verts.sort_unstable();
    verts.dedup();
    let id = |v: usize| verts.binary_search(&v).expect("vertex listed");
    let ends: Vec<(usize, usize)> = edges.iter().map(|e| (id(e.0), id(e.1))).collect();
    Ok(Matroid::trusted_from_fn(ground.clone(), |a| {
        let mut parent: Vec<usize> = (0..verts.len()).collect();
        let mut rank = 0;
        for e in subset::elements(a) {
            let (u, v) = ends[e];
            let ru = find(&mut parent, u);
            let rv = find(&mut parent, v);
            if ru != rv {
                parent[ru] = rv;
                rank += 1;
            }
        }
        rank
    }))
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}
