//! Exact linear algebra on small integer matrices: fraction-free
//! (Bareiss) determinants and ranks over the rationals, and Gaussian
//! elimination over GF(q).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::GfTable;

/// Dense row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<i64>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<i64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Precondition(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(IntMatrix { rows, cols, entries })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Precondition("matrix rows have different lengths".into()));
        }
        Self::new(rows.len(), cols, rows.concat())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.entries[r * self.cols + c]
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    /// Row-major entries of the submatrix on the given columns.
    pub fn column_block(&self, cols: &[usize]) -> Vec<i64> {
        (0..self.rows).flat_map(|r| cols.iter().map(move |&c| self.get(r, c))).collect()
    }
}

/// Determinant of a square integer matrix (row-major, `k*k` entries)
/// by Bareiss elimination. Exact as long as intermediate minors fit `i128`.
pub fn det(entries: &[i128], k: usize) -> i128 {
    debug_assert_eq!(entries.len(), k * k);
    if k == 0 {
        return 1;
    }
    let mut a = entries.to_vec();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for col in 0..k {
        if a[col * k + col] == 0 {
            let Some(swap) = (col + 1..k).find(|&r| a[r * k + col] != 0) else {
                return 0;
            };
            for j in 0..k {
                a.swap(col * k + j, swap * k + j);
            }
            sign = -sign;
        }
        let pivot = a[col * k + col];
        for r in col + 1..k {
            for j in col + 1..k {
                a[r * k + j] = (a[r * k + j] * pivot - a[r * k + col] * a[col * k + j]) / prev;
            }
            a[r * k + col] = 0;
        }
        prev = pivot;
    }
    sign * a[(k - 1) * k + (k - 1)]
}

/// Rank over the rationals of the `rows x cols` matrix, fraction-free.
pub fn rank_rational(entries: &[i128], rows: usize, cols: usize) -> usize {
    let mut a = entries.to_vec();
    let mut rank = 0;
    let mut prev = 1i128;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv_row) = (rank..rows).find(|&r| a[r * cols + col] != 0) else {
            continue;
        };
        if piv_row != rank {
            for j in 0..cols {
                a.swap(rank * cols + j, piv_row * cols + j);
            }
        }
        let pivot = a[rank * cols + col];
        for r in rank + 1..rows {
            for j in col + 1..cols {
                a[r * cols + j] = (a[r * cols + j] * pivot - a[r * cols + col] * a[rank * cols + j]) / prev;
            }
            a[r * cols + col] = 0;
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

/// Rank over GF(q) of a matrix whose entries are already field elements.
pub fn rank_gf(field: &GfTable, entries: &[u32], rows: usize, cols: usize) -> usize {
    let mut a = entries.to_vec();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv_row) = (rank..rows).find(|&r| a[r * cols + col] != 0) else {
            continue;
        };
        if piv_row != rank {
            for j in 0..cols {
                a.swap(rank * cols + j, piv_row * cols + j);
            }
        }
        let inv = field.inv(a[rank * cols + col]);
        for j in col..cols {
            a[rank * cols + j] = field.mul(a[rank * cols + j], inv);
        }
        for r in 0..rows {
            if r != rank {
                let factor = a[r * cols + col];
                if factor != 0 {
                    for j in col..cols {
                        let t = field.mul(factor, a[rank * cols + j]);
                        a[r * cols + j] = field.sub(a[r * cols + j], t);
                    }
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Greatest common divisor of `|a|` and `b`.
pub fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Laplace expansion, exponential but independent of the Bareiss path.
    fn det_laplace(a: &[i128], k: usize) -> i128 {
        if k == 0 {
            return 1;
        }
        if k == 1 {
            return a[0];
        }
        let mut total = 0;
        for c in 0..k {
            let minor: Vec<i128> = (1..k)
                .flat_map(|r| (0..k).filter(move |&j| j != c).map(move |j| (r, j)))
                .map(|(r, j)| a[r * k + j])
                .collect();
            let term = a[c] * det_laplace(&minor, k - 1);
            total += if c % 2 == 0 { term } else { -term };
        }
        total
    }

    #[test]
    fn bareiss_matches_laplace() {
        let mats: Vec<(Vec<i128>, usize)> = vec![
            (vec![2, -1, 0, -1, 2, -1, 0, -1, 2], 3),
            (vec![0, 1, 1, 0], 2),
            (vec![1, 2, 3, 4, 5, 6, 7, 8, 10], 3),
            (vec![0, 0, 1, 3, 1, 0, 2, -2, 5, 1, 1, 1, 0, 4, -3, 2], 4),
        ];
        for (m, k) in mats {
            assert_eq!(det(&m, k), det_laplace(&m, k));
        }
    }

    #[test]
    fn ranks() {
        // rows (1,1),(0,0)
        assert_eq!(rank_rational(&[1, 1, 0, 0], 2, 2), 1);
        assert_eq!(rank_rational(&[1, 0, 1, 0, 1, 1], 2, 3), 2);
        let f2 = GfTable::new(2).unwrap();
        // columns (1,1),(1,1),(0,1) etc: [[1,1,0],[1,1,1]] rank 2
        assert_eq!(rank_gf(&f2, &[1, 1, 0, 1, 1, 1], 2, 3), 2);
        // over GF(2), 1+1=0 so [[1,1],[1,1]] rank 1; over Q also 1
        assert_eq!(rank_gf(&f2, &[1, 1, 1, 1], 2, 2), 1);
        // [[2]] over GF(2) is zero
        assert_eq!(rank_gf(&f2, &[0], 1, 1), 0);
    }
}
