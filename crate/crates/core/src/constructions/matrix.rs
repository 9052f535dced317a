use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{det, gcd, IntMatrix};
use crate::matroid::{Edge, GroundSet};
use crate::subset;
use crate::voa::Voa;

/// Largest number of matrix rows `matrix_voa` will expand (vʳ rows).
pub const MAX_MATRIX_ROWS: usize = 12;

/// Largest edge count for which total unimodularity is checked exactly.
const TU_CHECK_EDGES: usize = 12;

/// An integer matrix read over ℤᵥ, with labelled columns.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZvMatrix {
    pub matrix: IntMatrix,
    pub columns: GroundSet,
    /// `Some(true)` only after an exhaustive check.
    pub totally_unimodular: Option<bool>,
}

impl ZvMatrix {
    pub fn new(matrix: IntMatrix, columns: GroundSet) -> Result<Self> {
        if matrix.cols() != columns.len() {
            return Err(Error::Precondition(format!(
                "{} matrix columns but {} labels",
                matrix.cols(),
                columns.len()
            )));
        }
        Ok(ZvMatrix { matrix, columns, totally_unimodular: None })
    }
}

/// Every square submatrix has determinant in {−1, 0, 1}.
pub fn is_totally_unimodular(m: &IntMatrix) -> bool {
    let (r, c) = (m.rows(), m.cols());
    for k in 1..=r.min(c) {
        for rs in subset::k_subsets(r, k) {
            let rows: Vec<usize> = subset::elements(rs).collect();
            for cs in subset::k_subsets(c, k) {
                let cols: Vec<usize> = subset::elements(cs).collect();
                let block: Vec<i128> =
                    rows.iter().flat_map(|&i| cols.iter().map(move |&j| m.get(i, j) as i128)).collect();
                if det(&block, k).abs() > 1 {
                    return false;
                }
            }
        }
    }
    true
}

/// The network matrix of a connected graph: one row per edge of the
/// spanning tree grown greedily in edge order, and for each edge e = (u,w)
/// the signed indicator of the tree path from u to w (+1 where the path
/// runs along a tree edge's own direction).
pub fn graphic_tu_matrix(ground: &GroundSet, edges: &[Edge]) -> Result<ZvMatrix> {
    if edges.len() != ground.len() {
        return Err(Error::Precondition(format!("{} edges but {} labels", edges.len(), ground.len())));
    }
    let mut verts: Vec<usize> = edges.iter().flat_map(|e| [e.0, e.1]).collect();
    verts.sort_unstable();
    verts.dedup();
    let id = |v: usize| verts.binary_search(&v).expect("vertex listed");
    let ends: Vec<(usize, usize)> = edges.iter().map(|e| (id(e.0), id(e.1))).collect();
    let nv = verts.len();

    let mut parent: Vec<usize> = (0..nv).collect();
    let mut tree = Vec::new();
    for (e, &(u, w)) in ends.iter().enumerate() {
        let (ru, rw) = (find(&mut parent, u), find(&mut parent, w));
        if ru != rw {
            parent[ru] = rw;
            tree.push(e);
        }
    }
    if nv > 0 && tree.len() != nv - 1 {
        return Err(Error::DisconnectedGraph);
    }

    // root the tree at vertex 0: up[x] = (parent vertex, tree row)
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nv];
    for (row, &e) in tree.iter().enumerate() {
        let (u, w) = ends[e];
        adj[u].push((w, row));
        adj[w].push((u, row));
    }
    let mut up: Vec<Option<(usize, usize)>> = vec![None; nv];
    let mut depth = vec![0usize; nv];
    let mut seen = vec![false; nv];
    let mut stack = vec![0usize];
    if nv > 0 {
        seen[0] = true;
    }
    while let Some(x) = stack.pop() {
        for &(y, row) in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                up[y] = Some((x, row));
                depth[y] = depth[x] + 1;
                stack.push(y);
            }
        }
    }

    let rows = tree.len();
    let mut entries = vec![0i64; rows * edges.len()];
    for (e, &(u, w)) in ends.iter().enumerate() {
        let (mut a, mut b) = (u, w);
        // walk up from both ends to the common ancestor
        while a != b {
            if depth[a] >= depth[b] {
                let (p, row) = up[a].expect("non-root");
                // travelling a -> p, forward half of the path
                entries[row * edges.len() + e] += sign(ends[tree[row]], a, p);
                a = p;
            } else {
                let (p, row) = up[b].expect("non-root");
                // travelling p -> b, backward half of the path
                entries[row * edges.len() + e] += sign(ends[tree[row]], p, b);
                b = p;
            }
        }
    }
    let matrix = IntMatrix::new(rows, edges.len(), entries)?;
    let mut out = ZvMatrix::new(matrix, ground.clone())?;
    if edges.len() <= TU_CHECK_EDGES {
        out.totally_unimodular = Some(is_totally_unimodular(&out.matrix));
    }
    Ok(out)
}

fn sign(edge: (usize, usize), from: usize, to: usize) -> i64 {
    if edge == (from, to) {
        1
    } else {
        -1
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// The array with rows x·A mod v for every x ∈ ℤᵥʳ (x in lexicographic
/// order). A must have full row rank and every basis of its rational
/// column matroid must have a determinant that is a unit modulo v; the
/// first basis that fails is reported.
pub fn matrix_voa(a: &ZvMatrix, v: u32) -> Result<Voa> {
    if v < 2 {
        return Err(Error::InvalidLevel(v));
    }
    let (r, n) = (a.matrix.rows(), a.matrix.cols());
    if r > MAX_MATRIX_ROWS {
        return Err(Error::TooLarge(format!("{r} matrix rows; at most {MAX_MATRIX_ROWS} are expanded")));
    }
    let mut any_basis = false;
    for b in subset::k_subsets(n, r) {
        let cols: Vec<usize> = subset::elements(b).collect();
        let block: Vec<i128> = a.matrix.column_block(&cols).into_iter().map(i128::from).collect();
        let d = det(&block, r);
        if d == 0 {
            continue;
        }
        any_basis = true;
        if gcd(d, v as i128) != 1 {
            return Err(Error::NonUnitDeterminant { basis: a.columns.labels_of(b), det: d, v });
        }
    }
    if !any_basis {
        return Err(Error::Precondition("matrix rows are linearly dependent".into()));
    }
    let count = (v as u64)
        .checked_pow(r as u32)
        .filter(|&c| c.saturating_mul(n.max(1) as u64) <= 1 << 32)
        .ok_or_else(|| Error::TooLarge(format!("{v}^{r} rows")))? as usize;
    let m = v as i64;
    let reduced: Vec<i64> = a.matrix.entries().iter().map(|x| x.rem_euclid(m)).collect();
    let mut data = Vec::with_capacity(count * n);
    let mut x = vec![0i64; r];
    for _ in 0..count {
        for j in 0..n {
            let s: i64 = (0..r).map(|i| x[i] * reduced[i * n + j]).sum();
            data.push(s.rem_euclid(m) as u32);
        }
        for i in (0..r).rev() {
            x[i] += 1;
            if x[i] < m {
                break;
            }
            x[i] = 0;
        }
    }
    Voa::from_flat(v, a.columns.clone(), data)
}
