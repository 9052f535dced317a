//! Exhaustive searches that settle existence questions for small VOAs.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matroid::{has_minor, standard, GroundSet, Matroid, StandardKind};
use crate::oa::enumerate_oa34;
use crate::subset::{self, Subset};
use crate::voa::{verify_oa, verify_voa, Voa};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    /// A verified array.
    Found(Voa),
    /// Every candidate in the declared space was tested and none is valid.
    Exhausted { candidates: u64 },
    /// The node budget ran out first.
    BudgetExceeded { nodes: u64 },
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SearchTrace {
    /// Complete candidates examined (f7star) or cells assigned (backtracking).
    pub candidates: u64,
    pub nodes: u64,
    pub hits: u64,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    pub outcome: SearchOutcome,
    pub elapsed: Duration,
    pub trace: SearchTrace,
}

/// Flat JSON-friendly view of a result (the array itself is written separately).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchSummary {
    pub outcome: &'static str,
    pub candidates: u64,
    pub nodes: u64,
    pub hits: u64,
    pub elapsed_secs: f64,
    pub notes: Vec<String>,
}

impl SearchResult {
    pub fn found(&self) -> Option<&Voa> {
        match &self.outcome {
            SearchOutcome::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_exhausted(&self) -> bool {
        matches!(self.outcome, SearchOutcome::Exhausted { .. })
    }

    pub fn summary(&self) -> SearchSummary {
        let outcome = match self.outcome {
            SearchOutcome::Found(_) => "found",
            SearchOutcome::Exhausted { .. } => "exhausted",
            SearchOutcome::BudgetExceeded { .. } => "budget_exceeded",
        };
        SearchSummary {
            outcome,
            candidates: self.trace.candidates,
            nodes: self.trace.nodes,
            hits: self.trace.hits,
            elapsed_secs: self.elapsed.as_secs_f64(),
            notes: self.trace.notes.clone(),
        }
    }
}

/// The three 4-sets that fix columns 5, 6, 7 from the basis {1,2,3,4},
/// as (three basis columns, new column), 0-based.
const F7STAR_BUILD: [([usize; 3], usize); 3] = [([0, 1, 2], 4), ([0, 1, 3], 5), ([0, 2, 3], 6)];

/// The remaining rank-3 4-sets of F₇*, 0-based.
const F7STAR_CHECK: [[usize; 4]; 4] = [[0, 4, 5, 6], [1, 2, 5, 6], [1, 3, 4, 6], [2, 3, 4, 5]];

/// Lemma-style search for a VOA(F₇*, v): T(1,2,3,4) is all of ℤᵥ⁴, and
/// columns 5, 6, 7 are read off OA(3,4,v)s from the catalog on
/// {1,2,3,5}, {1,2,4,6}, {1,3,4,7}. A candidate is valid when the four
/// other rank-3 4-sets deduplicate to OA(3,4,v)s and the whole array
/// verifies. Supported for v ∈ {2, 3}.
pub fn f7star_search(v: u32) -> Result<SearchResult> {
    if !(2..=3).contains(&v) {
        return Err(Error::UnsupportedLevel { v, reason: "the OA(3,4,v) catalog is enumerated for v = 2 and 3".into() });
    }
    let start = Instant::now();
    let m = standard(StandardKind::FanoDual)?;
    let catalog = enumerate_oa34(v)?;
    // each catalog member as a map (x, y, z) -> w
    let tables: Vec<Vec<u32>> = catalog
        .iter()
        .map(|oa| {
            let mut f = vec![0u32; (v * v * v) as usize];
            for r in oa.rows() {
                f[((r[0] * v + r[1]) * v + r[2]) as usize] = r[3];
            }
            f
        })
        .collect();
    let basis = Voa::full_factorial(v, GroundSet::numbered(4)?)?;
    let rows = basis.n_rows();
    let mut trace = SearchTrace::default();
    trace.notes.push(format!(
        "T(1,2,3,4) fixed to Z_{v}^4; columns 5,6,7 from a catalog of {} OA(3,4,{v})",
        catalog.len()
    ));
    let mut first_hit = None;
    let k = tables.len();
    let mut data = vec![0u32; rows * 7];
    for i in 0..rows {
        data[i * 7..i * 7 + 4].copy_from_slice(basis.row(i));
    }
    for c5 in 0..k {
        for c6 in 0..k {
            for c7 in 0..k {
                trace.candidates += 1;
                for ((cols, new), t) in F7STAR_BUILD.iter().zip([c5, c6, c7]) {
                    for i in 0..rows {
                        let r = &data[i * 7..];
                        let key = (r[cols[0]] * v + r[cols[1]]) * v + r[cols[2]];
                        data[i * 7 + new] = tables[t][key as usize];
                    }
                }
                let t = Voa::from_flat(v, m.ground().clone(), data.clone())?;
                if !quadruples_ok(&t)? {
                    continue;
                }
                if verify_voa(&t, &m)?.pass {
                    trace.hits += 1;
                    first_hit.get_or_insert(t);
                }
            }
        }
    }
    let outcome = match first_hit {
        Some(t) => SearchOutcome::Found(t),
        None => SearchOutcome::Exhausted { candidates: trace.candidates },
    };
    Ok(SearchResult { outcome, elapsed: start.elapsed(), trace })
}

fn quadruples_ok(t: &Voa) -> Result<bool> {
    for q in F7STAR_CHECK {
        let d = t.select_positions(&q).ded();
        let r = verify_oa(&d, 3)?;
        if !r.holds || r.lambda != Some(1) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One subset constraint checked while a column is filled.
struct Constraint {
    cols: Vec<usize>,
    lambda: u32,
    /// distinct patterns once the column is complete
    patterns: usize,
    counts: HashMap<u64, u32>,
}

/// Depth-first search for a VOA(M, v). The lexicographically first basis B
/// is fixed to ℤᵥ^r in lexicographic row order (rows of T(B) are distinct,
/// and row order is immaterial); every other column is filled row by row
/// with values in first-occurrence order (symbol bijections per column are
/// immaterial). Each assignment is pruned by the multiplicity bound of
/// every subset through the current column; completed columns must hit
/// the exact count. `budget` caps the number of assignments tried.
pub fn voa_backtracking_search(m: &Matroid, v: u32, budget: u64) -> Result<SearchResult> {
    if v < 2 {
        return Err(Error::InvalidLevel(v));
    }
    let start = Instant::now();
    let n = m.n();
    let r = m.full_rank();
    let rows = (v as u64)
        .checked_pow(r)
        .filter(|&x| x <= 1 << 24)
        .ok_or_else(|| Error::TooLarge(format!("{v}^{r} rows")))? as usize;
    let basis = m.greedy_basis();
    let basis_cols: Vec<usize> = subset::elements(basis).collect();
    let free: Vec<usize> = (0..n).filter(|&e| !subset::contains(basis, e)).collect();

    let mut data = vec![0u32; rows * n];
    let ff = Voa::full_factorial(v, GroundSet::numbered(basis_cols.len())?)?;
    for i in 0..rows {
        for (j, &c) in basis_cols.iter().enumerate() {
            data[i * n + c] = ff.entry(i, j);
        }
    }

    let mut trace = SearchTrace::default();
    trace.notes.push(format!(
        "basis {:?} fixed to Z_{v}^{r}; other columns in first-occurrence symbol order",
        m.ground().labels_of(basis)
    ));
    let mut search = Backtrack {
        n,
        v,
        rows,
        free: &free,
        data,
        constraints: Vec::new(),
        nodes: 0,
        budget,
    };
    // constraints for each free column: subsets of everything before it
    let mut assigned = basis;
    for &e in &free {
        let mut list = Vec::new();
        for s in subset::submasks(assigned) {
            let a: Subset = s | 1 << e;
            let ra = m.rank(a);
            list.push(Constraint {
                cols: subset::elements(a).collect(),
                lambda: (v as u64).pow(r - ra) as u32,
                patterns: (v as usize).pow(ra),
                counts: HashMap::new(),
            });
        }
        search.constraints.push(list);
        assigned |= 1 << e;
    }
    let status = if free.is_empty() { Status::Found } else { search.column(0) };
    trace.nodes = search.nodes;
    trace.candidates = search.nodes;
    let outcome = match status {
        Status::Found => {
            let t = Voa::from_flat(v, m.ground().clone(), search.data)?;
            if !verify_voa(&t, m)?.pass {
                // the full-factorial basis alone is not a VOA (no free columns)
                trace.notes.push("fixed basis array fails verification".into());
                SearchOutcome::Exhausted { candidates: trace.candidates }
            } else {
                trace.hits = 1;
                SearchOutcome::Found(t)
            }
        }
        Status::Exhausted => SearchOutcome::Exhausted { candidates: trace.candidates },
        Status::Budget => SearchOutcome::BudgetExceeded { nodes: trace.nodes },
    };
    Ok(SearchResult { outcome, elapsed: start.elapsed(), trace })
}

enum Status {
    Found,
    Exhausted,
    Budget,
}

struct Backtrack<'a> {
    n: usize,
    v: u32,
    rows: usize,
    free: &'a [usize],
    data: Vec<u32>,
    constraints: Vec<Vec<Constraint>>,
    nodes: u64,
    budget: u64,
}

impl Backtrack<'_> {
    fn key(&self, row: usize, cols: &[usize]) -> u64 {
        cols.iter().fold(0u64, |k, &c| k * self.v as u64 + self.data[row * self.n + c] as u64)
    }

    fn column(&mut self, k: usize) -> Status {
        if k == self.free.len() {
            return Status::Found;
        }
        self.cell(k, 0, 0)
    }

    /// Fill row `i` of free column `k`; `next` is the next unused symbol.
    fn cell(&mut self, k: usize, i: usize, next: u32) -> Status {
        if i == self.rows {
            let complete = self.constraints[k].iter().all(|c| c.counts.len() == c.patterns);
            return if complete { self.column(k + 1) } else { Status::Exhausted };
        }
        let e = self.free[k];
        for x in 0..=next.min(self.v - 1) {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Status::Budget;
            }
            self.data[i * self.n + e] = x;
            let keys: Vec<u64> = self.constraints[k].iter().map(|c| self.key(i, &c.cols)).collect();
            let mut ok = true;
            let mut done = 0;
            for (c, &key) in self.constraints[k].iter_mut().zip(&keys) {
                let count = c.counts.entry(key).or_insert(0);
                *count += 1;
                done += 1;
                if *count > c.lambda {
                    ok = false;
                    break;
                }
            }
            if ok {
                match self.cell(k, i + 1, next.max(x + 1)) {
                    Status::Exhausted => {}
                    other => return other,
                }
            }
            for (c, &key) in self.constraints[k].iter_mut().zip(&keys).take(done) {
                let count = c.counts.get_mut(&key).expect("counted");
                *count -= 1;
                if *count == 0 {
                    c.counts.remove(&key);
                }
            }
        }
        Status::Exhausted
    }
}

/// Regular iff none of U₂,₄, F₇, F₇* is a minor. Limited to 12 elements.
pub fn is_regular(m: &Matroid) -> Result<bool> {
    if m.n() > 12 {
        return Err(Error::TooLarge(format!("regularity test on {} elements (at most 12)", m.n())));
    }
    for kind in [StandardKind::Uniform { t: 2, n: 4 }, StandardKind::Fano, StandardKind::FanoDual] {
        if has_minor(m, &standard(kind)?) {
            return Ok(false);
        }
    }
    Ok(true)
}
