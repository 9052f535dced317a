//! Builders for the orthogonal arrays the constructions consume: OA(2,3,v)
//! from Latin squares, OA(2,4,v) from a pair of orthogonal Latin squares,
//! and the catalog of OA(3,4,v) from Latin cubes.

use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{prime_power_factors, GfTable};
use crate::matroid::GroundSet;
use crate::voa::Voa;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatinSquare {
    order: u32,
    cells: Vec<u32>,
}

impl LatinSquare {
    /// Row-major cells; every row and column must be a permutation of ℤᵥ.
    pub fn new(order: u32, cells: Vec<u32>) -> Result<Self> {
        let v = order as usize;
        if order < 1 || cells.len() != v * v {
            return Err(Error::Precondition(format!("a Latin square of order {order} has {} cells", v * v)));
        }
        for i in 0..v {
            let mut row = vec![false; v];
            let mut col = vec![false; v];
            for j in 0..v {
                for (seen, x) in [(&mut row, cells[i * v + j]), (&mut col, cells[j * v + i])] {
                    if x >= order || std::mem::replace(&mut seen[x as usize], true) {
                        return Err(Error::Precondition(format!("not a Latin square: line {i} repeats or overflows")));
                    }
                }
            }
        }
        Ok(LatinSquare { order, cells })
    }

    pub fn from_fn(order: u32, f: impl Fn(u32, u32) -> u32) -> Result<Self> {
        let cells = (0..order).flat_map(|x| (0..order).map(move |y| (x, y))).map(|(x, y)| f(x, y)).collect();
        Self::new(order, cells)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    #[inline]
    pub fn get(&self, x: u32, y: u32) -> u32 {
        self.cells[(x * self.order + y) as usize]
    }

    pub fn cells(&self) -> &[u32] {
        &self.cells
    }

    /// Superimposing the two squares gives every ordered pair exactly once.
    pub fn is_orthogonal_to(&self, other: &LatinSquare) -> bool {
        let v = self.order;
        if other.order != v {
            return false;
        }
        let mut seen = vec![false; (v * v) as usize];
        (0..v).all(|x| {
            (0..v).all(|y| {
                let k = (self.get(x, y) * v + other.get(x, y)) as usize;
                !std::mem::replace(&mut seen[k], true)
            })
        })
    }

    /// The OA(2,3,v) with rows (x, y, L(x,y)), columns labelled 1,2,3.
    pub fn to_oa23(&self) -> Voa {
        let v = self.order;
        let data = (0..v).flat_map(|x| (0..v).flat_map(move |y| [x, y, self.get(x, y)])).collect();
        Voa::from_parts(v, GroundSet::numbered(3).expect("3 labels"), data, (v * v) as usize)
    }

    /// Read an OA(2,3,v) of index one back as the square (x, y) ↦ z.
    pub fn from_oa23(t: &Voa) -> Result<Self> {
        let v = t.level();
        if t.n_cols() != 3 || t.n_rows() != (v * v) as usize {
            return Err(Error::InvalidAuxiliary(v));
        }
        let mut cells = vec![u32::MAX; (v * v) as usize];
        for r in t.rows() {
            if r[0] >= v || r[1] >= v || cells[(r[0] * v + r[1]) as usize] != u32::MAX {
                return Err(Error::InvalidAuxiliary(v));
            }
            cells[(r[0] * v + r[1]) as usize] = r[2];
        }
        Self::new(v, cells).map_err(|_| Error::InvalidAuxiliary(v))
    }
}

/// Rows (x, y, (x+y) mod v).
pub fn cyclic_oa23(v: u32) -> Result<Voa> {
    if v < 2 {
        return Err(Error::InvalidLevel(v));
    }
    Ok(LatinSquare::from_fn(v, |x, y| (x + y) % v)?.to_oa23())
}

/// Visit the Latin squares of order `v` in lexicographic order of their
/// row-major cell sequence, stopping when `f` breaks.
pub fn for_each_latin_square(v: u32, mut f: impl FnMut(&LatinSquare) -> ControlFlow<()>) {
    let n = v as usize;
    let mut cells = vec![0u32; n * n];
    let mut row_used = vec![0u64; n];
    let mut col_used = vec![0u64; n];
    fn go(
        pos: usize,
        n: usize,
        cells: &mut [u32],
        row_used: &mut [u64],
        col_used: &mut [u64],
        f: &mut dyn FnMut(&LatinSquare) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if pos == n * n {
            let sq = LatinSquare { order: n as u32, cells: cells.to_vec() };
            return f(&sq);
        }
        let (i, j) = (pos / n, pos % n);
        for s in 0..n {
            let bit = 1u64 << s;
            if row_used[i] & bit != 0 || col_used[j] & bit != 0 {
                continue;
            }
            cells[pos] = s as u32;
            row_used[i] |= bit;
            col_used[j] |= bit;
            let flow = go(pos + 1, n, cells, row_used, col_used, f);
            row_used[i] &= !bit;
            col_used[j] &= !bit;
            flow?;
        }
        ControlFlow::Continue(())
    }
    if (1..=64).contains(&v) {
        let _ = go(0, n, &mut cells, &mut row_used, &mut col_used, &mut f);
    }
}

/// Linear squares x + α·y over GF(q) for α = 1 and α = the element coded 2.
fn field_pair(q: u32) -> Result<(LatinSquare, LatinSquare)> {
    let f = GfTable::new(q)?;
    let l1 = LatinSquare::from_fn(q, |x, y| f.add(x, y))?;
    let l2 = LatinSquare::from_fn(q, |x, y| f.add(x, f.mul(2, y)))?;
    Ok((l1, l2))
}

/// Kronecker product: symbols are mixed-radix digits, `a` most significant.
fn product(a: &LatinSquare, b: &LatinSquare) -> LatinSquare {
    let (p, q) = (a.order, b.order);
    let v = p * q;
    let cells = (0..v)
        .flat_map(|x| (0..v).map(move |y| (x, y)))
        .map(|(x, y)| a.get(x / q, y / q) * q + b.get(x % q, y % q))
        .collect();
    LatinSquare { order: v, cells }
}

/// Two mutually orthogonal Latin squares of order `v`, from finite-field
/// linear squares on each prime-power factor.
pub fn mols_pair(v: u32) -> Result<(LatinSquare, LatinSquare)> {
    let reason = match v {
        0 | 1 => return Err(Error::InvalidLevel(v)),
        2 => Some("no pair of orthogonal Latin squares of order 2 exists"),
        6 => Some("no pair of orthogonal Latin squares of order 6 exists (Euler's 36 officers)"),
        _ if v % 4 == 2 => Some("pairs exist for this order but the product builder needs every prime-power factor >= 3"),
        _ => None,
    };
    if let Some(reason) = reason {
        return Err(Error::UnsupportedLevel { v, reason: reason.into() });
    }
    let mut acc: Option<(LatinSquare, LatinSquare)> = None;
    for q in prime_power_factors(v) {
        let (a, b) = field_pair(q)?;
        acc = Some(match acc {
            None => (a, b),
            Some((x, y)) => (product(&x, &a), product(&y, &b)),
        });
    }
    let (l1, l2) = acc.expect("v >= 3 has a factor");
    // rebuild through the validating constructor and check orthogonality
    let l1 = LatinSquare::new(v, l1.cells)?;
    let l2 = LatinSquare::new(v, l2.cells)?;
    if !l1.is_orthogonal_to(&l2) {
        return Err(Error::Precondition(format!("internal: squares of order {v} are not orthogonal")));
    }
    Ok((l1, l2))
}

/// OA(2,4,v) with rows (x, y, L₁(x,y), L₂(x,y)), columns 1..4.
pub fn oa_2_4(v: u32) -> Result<Voa> {
    let (l1, l2) = mols_pair(v)?;
    let data = (0..v)
        .flat_map(|x| (0..v).map(move |y| (x, y)))
        .flat_map(|(x, y)| [x, y, l1.get(x, y), l2.get(x, y)])
        .collect();
    Ok(Voa::from_parts(v, GroundSet::numbered(4)?, data, (v * v) as usize))
}

/// All Latin cubes of order `v` (functions ℤᵥ³ → ℤᵥ that are bijective
/// in each coordinate), as value tables indexed by x·v² + y·v + z, in
/// lexicographic order.
pub fn latin_cubes(v: u32) -> Result<Vec<Vec<u32>>> {
    if !(2..=4).contains(&v) {
        return Err(Error::UnsupportedLevel { v, reason: "Latin cube enumeration is limited to orders 2..4".into() });
    }
    let n = v as usize;
    let mut out = Vec::new();
    let mut cells = vec![0u32; n * n * n];
    // used[d][line] bitmask of symbols on the line through a cell in direction d
    let mut used = vec![vec![0u32; n * n]; 3];
    fn go(pos: usize, n: usize, cells: &mut [u32], used: &mut [Vec<u32>], out: &mut Vec<Vec<u32>>) {
        if pos == cells.len() {
            out.push(cells.to_vec());
            return;
        }
        let (x, y, z) = (pos / (n * n), pos / n % n, pos % n);
        let lines = [y * n + z, x * n + z, x * n + y];
        for s in 0..n {
            let bit = 1 << s;
            if (0..3).any(|d| used[d][lines[d]] & bit != 0) {
                continue;
            }
            cells[pos] = s as u32;
            for d in 0..3 {
                used[d][lines[d]] |= bit;
            }
            go(pos + 1, n, cells, used, out);
            for d in 0..3 {
                used[d][lines[d]] &= !bit;
            }
        }
    }
    go(0, n, &mut cells, &mut used, &mut out);
    Ok(out)
}

/// The OA(3,4,v) whose rows are (x, y, z, f(x,y,z)); rows come out sorted.
pub fn cube_to_oa34(v: u32, cube: &[u32]) -> Voa {
    let n = v as usize;
    let data = (0..n * n * n)
        .flat_map(|i| [(i / (n * n)) as u32, (i / n % n) as u32, (i % n) as u32, cube[i]])
        .collect();
    Voa::from_parts(v, GroundSet::numbered(4).expect("4 labels"), data, n * n * n)
}

/// Every OA(3,4,v) of index one up to row order, canonical and sorted.
pub fn enumerate_oa34(v: u32) -> Result<Vec<Voa>> {
    let mut all: Vec<Voa> = latin_cubes(v)?.iter().map(|c| cube_to_oa34(v, c)).collect();
    all.sort_by(|a, b| a.data().cmp(b.data()));
    Ok(all)
}

/// The 24 OA(3,4,3).
pub fn enumerate_oa343() -> Vec<Voa> {
    enumerate_oa34(3).expect("order 3 supported")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::{standard, StandardKind};
    use crate::voa::{verify_oa, verify_voa};

    #[test]
    fn cyclic_oa23_properties() {
        for v in 2..=7 {
            let t = cyclic_oa23(v).unwrap();
            let r = verify_oa(&t, 2).unwrap();
            assert!(r.holds && r.lambda == Some(1), "v={v}");
        }
        let u23 = standard(StandardKind::Uniform { t: 2, n: 3 }).unwrap();
        assert!(verify_voa(&cyclic_oa23(2).unwrap(), &u23).unwrap().pass);
    }

    #[test]
    fn latin_square_counts() {
        // reduced-free counts of Latin squares: 1, 2, 12, 576
        for (v, want) in [(1, 1), (2, 2), (3, 12), (4, 576)] {
            let mut count = 0;
            let mut prev: Option<Vec<u32>> = None;
            for_each_latin_square(v, |sq| {
                if let Some(p) = &prev {
                    assert!(p.as_slice() < sq.cells());
                }
                prev = Some(sq.cells().to_vec());
                count += 1;
                ControlFlow::Continue(())
            });
            assert_eq!(count, want);
        }
        let mut first = None;
        for_each_latin_square(4, |sq| {
            first = Some(sq.clone());
            ControlFlow::Break(())
        });
        // lexicographically first square of order 4 is the XOR table
        let xor = LatinSquare::from_fn(4, |x, y| x ^ y).unwrap();
        assert_eq!(first.unwrap(), xor);
    }

    #[test]
    fn mols_supported_levels() {
        for v in [3, 4, 5, 7, 8, 9, 12, 15, 16, 20, 21, 25, 28] {
            let (a, b) = mols_pair(v).unwrap();
            assert!(a.is_orthogonal_to(&b), "v={v}");
            let t = oa_2_4(v).unwrap();
            let r = verify_oa(&t, 2).unwrap();
            assert!(r.holds && r.lambda == Some(1));
        }
        for v in [2, 6, 10, 14] {
            assert!(matches!(mols_pair(v), Err(Error::UnsupportedLevel { .. })), "v={v}");
        }
        let err = oa_2_4(6).unwrap_err().to_string();
        assert!(err.contains("Euler"));
    }

    #[test]
    fn oa24_is_a_u24_voa() {
        let u24 = standard(StandardKind::Uniform { t: 2, n: 4 }).unwrap();
        for v in [3, 4, 5] {
            assert!(verify_voa(&oa_2_4(v).unwrap(), &u24).unwrap().pass);
        }
    }

    #[test]
    fn oa343_catalog() {
        let cat = enumerate_oa343();
        assert_eq!(cat.len(), 24);
        let ff = Voa::full_factorial(3, GroundSet::numbered(3).unwrap()).unwrap();
        for t in &cat {
            let r = verify_oa(t, 3).unwrap();
            assert!(r.holds && r.lambda == Some(1));
            assert!(t.project(0b0111).same_rows(&ff));
            assert_eq!(t.canonical(), *t);
        }
        for i in 0..cat.len() {
            for j in i + 1..cat.len() {
                assert_ne!(cat[i], cat[j]);
            }
        }
        // x+y+z mod 3 is a member
        let sum: Vec<u32> = (0..27).map(|i| (i / 9 + i / 3 % 3 + i % 3) as u32 % 3).collect();
        assert!(cat.contains(&cube_to_oa34(3, &sum)));
        // closure under a symbol permutation on the last column
        for t in &cat {
            assert!(cat.contains(&t.map_column(3, &[1, 2, 0]).canonical()));
            assert!(cat.contains(&t.map_column(0, &[0, 2, 1]).canonical()));
        }
        assert_eq!(enumerate_oa34(2).unwrap().len(), 2);
    }

    #[test]
    fn from_oa23_round_trip() {
        let sq = LatinSquare::from_fn(5, |x, y| (2 * x + y) % 5).unwrap();
        assert_eq!(LatinSquare::from_oa23(&sq.to_oa23()).unwrap(), sq);
        let bad = Voa::full_factorial(2, GroundSet::numbered(3).unwrap()).unwrap();
        assert!(matches!(LatinSquare::from_oa23(&bad), Err(Error::InvalidAuxiliary(2))));
    }
}
