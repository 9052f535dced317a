use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::Voa;
use crate::error::{Error, Result};
use crate::matroid::{IntegerPolymatroid, Matroid};
use crate::subset::{self, Subset};

/// One reason an array fails a check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Failure {
    /// `row` occurs `observed` times in T(subset) instead of `expected`.
    Multiplicity {
        subset: Vec<String>,
        mask: Subset,
        expected: u64,
        row: Vec<u32>,
        observed: u64,
    },
    /// An entry outside its column's alphabet.
    Range {
        row: usize,
        column: String,
        value: u32,
        limit: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub pass: bool,
    pub subsets_checked: u64,
    /// At most one multiplicity failure per subset, sorted by subset bitmask.
    pub failures: Vec<Failure>,
}

impl VerificationReport {
    fn new(subsets_checked: u64, failures: Vec<Failure>) -> Self {
        VerificationReport { pass: failures.is_empty(), subsets_checked, failures }
    }
}

/// Refines a row partition one column at a time. Ids are dense and
/// numbered in first-occurrence order, so results never depend on hashing.
struct Refiner {
    alphabet: Vec<u64>,
    table: Vec<u32>,
}

impl Refiner {
    fn new(t: &Voa) -> Self {
        let n = t.n_cols();
        let mut alphabet = vec![1u64; n];
        for r in t.rows() {
            for (a, &x) in alphabet.iter_mut().zip(r) {
                *a = (*a).max(x as u64 + 1);
            }
        }
        Refiner { alphabet, table: Vec::new() }
    }

    /// Split classes `ids` (with `k` classes) by column `c`; returns new class count.
    fn refine(&mut self, t: &Voa, ids: &[u32], k: usize, c: usize, out: &mut Vec<u32>) -> usize {
        out.clear();
        let a = self.alphabet[c];
        let cells = k as u64 * a;
        let mut next = 0u32;
        if cells <= (4 * t.n_rows() as u64).max(1 << 16) {
            self.table.clear();
            self.table.resize(cells as usize, u32::MAX);
            for (i, &id) in ids.iter().enumerate() {
                let key = (id as u64 * a + t.entry(i, c) as u64) as usize;
                if self.table[key] == u32::MAX {
                    self.table[key] = next;
                    next += 1;
                }
                out.push(self.table[key]);
            }
        } else {
            let mut map: HashMap<u64, u32> = HashMap::new();
            for (i, &id) in ids.iter().enumerate() {
                let key = id as u64 * a + t.entry(i, c) as u64;
                let v = *map.entry(key).or_insert_with(|| {
                    next += 1;
                    next - 1
                });
                out.push(v);
            }
        }
        next as usize
    }
}

/// Visit every column subset of `t` (depth first, each exactly once) with
/// the class id of each row's projection and the number of classes.
fn for_each_subset(t: &Voa, mut visit: impl FnMut(Subset, &[u32], usize)) {
    let n = t.n_cols();
    let mut refiner = Refiner::new(t);
    let root = vec![0u32; t.n_rows()];
    let k0 = usize::from(t.n_rows() > 0);
    visit(0, &root, k0);
    let mut stack: Vec<Vec<u32>> = vec![Vec::new(); n];
    fn go(
        t: &Voa,
        refiner: &mut Refiner,
        stack: &mut [Vec<u32>],
        mask: Subset,
        ids: &[u32],
        k: usize,
        start: usize,
        visit: &mut dyn FnMut(Subset, &[u32], usize),
    ) {
        let n = t.n_cols();
        for e in start..n {
            let (head, tail) = stack.split_at_mut(1);
            let buf = &mut head[0];
            let k2 = refiner.refine(t, ids, k, e, buf);
            let child = mask | 1 << e;
            visit(child, buf, k2);
            if e + 1 < n {
                let ids2 = std::mem::take(buf);
                go(t, refiner, tail, child, &ids2, k2, e + 1, visit);
                head[0] = ids2;
            }
        }
    }
    go(t, &mut refiner, &mut stack, 0, &root, k0, 0, &mut visit);
}

/// Class sizes for a partition.
fn counts(ids: &[u32], k: usize) -> Vec<u64> {
    let mut c = vec![0u64; k];
    for &i in ids {
        c[i as usize] += 1;
    }
    c
}

fn pow_sat(v: u32, e: u32) -> u64 {
    (v as u64).checked_pow(e).unwrap_or(u64::MAX)
}

/// First row whose class size differs from `expected`.
fn first_mismatch(t: &Voa, mask: Subset, labels: &[String], ids: &[u32], k: usize, expected: u64) -> Option<Failure> {
    let c = counts(ids, k);
    let i = ids.iter().position(|&id| c[id as usize] != expected)?;
    let row: Vec<u32> = subset::elements(mask).map(|j| t.entry(i, j)).collect();
    Some(Failure::Multiplicity {
        subset: subset::elements(mask).map(|j| labels[j].clone()).collect(),
        mask,
        expected,
        row,
        observed: c[ids[i] as usize],
    })
}

/// Definition check: for every A ⊆ N every row of T(A) occurs exactly
/// v^{r(N)−r(A)} times. Exhaustive over all 2ⁿ subsets; the array's
/// columns are matched to the matroid by label.
pub fn verify_voa(t: &Voa, m: &Matroid) -> Result<VerificationReport> {
    let t = t.align_to(m.ground())?;
    t.check_range()?;
    let v = t.level();
    let rn = m.full_rank();
    let labels = m.labels();
    let mut failures = Vec::new();
    let mut checked = 0;
    for_each_subset(&t, |mask, ids, k| {
        checked += 1;
        let expected = pow_sat(v, rn - m.rank(mask));
        failures.extend(first_mismatch(&t, mask, labels, ids, k, expected));
    });
    failures.sort_by_key(mask_of);
    Ok(VerificationReport::new(checked, failures))
}

fn mask_of(f: &Failure) -> (Subset, usize) {
    match f {
        Failure::Multiplicity { mask, .. } => (*mask, 0),
        Failure::Range { row, .. } => (0, *row),
    }
}

/// MVOA check: column i uses symbols 0..v^{h(i)} and every row of T(A)
/// occurs v^{h(N)−h(A)} times. Range problems are reported as failures.
pub fn verify_mvoa(t: &Voa, p: &IntegerPolymatroid) -> Result<VerificationReport> {
    let t = t.align_to(p.ground())?;
    let v = t.level();
    let labels = p.labels();
    let mut failures = Vec::new();
    for (j, limit) in p.singleton_ranks().into_iter().map(|h| pow_sat(v, h)).enumerate() {
        if let Some(i) = (0..t.n_rows()).find(|&i| t.entry(i, j) as u64 >= limit) {
            failures.push(Failure::Range { row: i, column: labels[j].clone(), value: t.entry(i, j), limit });
        }
    }
    let rn = p.full_rank();
    let mut checked = 0;
    for_each_subset(&t, |mask, ids, k| {
        checked += 1;
        let expected = pow_sat(v, rn - p.rank(mask));
        failures.extend(first_mismatch(&t, mask, labels, ids, k, expected));
    });
    failures.sort_by_key(mask_of);
    Ok(VerificationReport::new(checked, failures))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OaReport {
    pub holds: bool,
    /// λ = rows / vᵗ when that is an integer.
    pub lambda: Option<u64>,
    pub witness: Option<Failure>,
}

/// Strength-t check: every t columns hit each t-tuple exactly λ times.
pub fn verify_oa(t: &Voa, strength: usize) -> Result<OaReport> {
    let n = t.n_cols();
    if strength > n {
        return Err(Error::Precondition(format!("strength {strength} exceeds {n} columns")));
    }
    if let Err(Error::SymbolOutOfRange { row, column, value, limit }) = t.check_range() {
        let witness = Some(Failure::Range { row, column, value, limit });
        return Ok(OaReport { holds: false, lambda: None, witness });
    }
    let cells = pow_sat(t.level(), strength as u32);
    let rows = t.n_rows() as u64;
    if rows == 0 || !rows.is_multiple_of(cells) {
        return Ok(OaReport { holds: false, lambda: None, witness: None });
    }
    let lambda = rows / cells;
    let mut refiner = Refiner::new(t);
    let labels = t.labels();
    for mask in subset::k_subsets(n, strength) {
        let mut ids = vec![0u32; t.n_rows()];
        let mut k = 1;
        let mut buf = Vec::new();
        for c in subset::elements(mask) {
            k = refiner.refine(t, &ids, k, c, &mut buf);
            std::mem::swap(&mut ids, &mut buf);
        }
        if let Some(f) = first_mismatch(t, mask, labels, &ids, k, lambda) {
            return Ok(OaReport { holds: false, lambda: Some(lambda), witness: Some(f) });
        }
    }
    Ok(OaReport { holds: true, lambda: Some(lambda), witness: None })
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClauseReport {
    pub checked: usize,
    pub failures: Vec<Failure>,
}

impl ClauseReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// The three family-wise multiplicity conditions: independent sets
/// (v^{r(N)−|I|}), bases (once), circuits and their one-element deletions
/// (v^{r(N)−|C|+1}).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma1Report {
    pub independents: ClauseReport,
    pub bases: ClauseReport,
    pub circuits: ClauseReport,
}

impl Lemma1Report {
    pub fn pass(&self) -> bool {
        self.independents.pass() && self.bases.pass() && self.circuits.pass()
    }
}

pub fn lemma1_report(t: &Voa, m: &Matroid) -> Result<Lemma1Report> {
    let t = t.align_to(m.ground())?;
    t.check_range()?;
    let v = t.level();
    let rn = m.full_rank();
    let labels = m.labels();
    let mut independents = ClauseReport::default();
    let mut bases = ClauseReport::default();
    let mut ind_fail: HashMap<Subset, Failure> = HashMap::new();
    let mut circ_fail: HashMap<Subset, Failure> = HashMap::new();
    let mut circuits_seen = Vec::new();
    for_each_subset(&t, |mask, ids, k| {
        let size = subset::size(mask);
        if m.is_independent(mask) {
            independents.checked += 1;
            let expected = pow_sat(v, rn - size);
            if let Some(f) = first_mismatch(&t, mask, labels, ids, k, expected) {
                ind_fail.insert(mask, f.clone());
                independents.failures.push(f);
            }
            if size == rn {
                bases.checked += 1;
                bases.failures.extend(first_mismatch(&t, mask, labels, ids, k, 1));
            }
        } else if m.is_circuit(mask) {
            circuits_seen.push(mask);
            let expected = pow_sat(v, rn + 1 - size);
            if let Some(f) = first_mismatch(&t, mask, labels, ids, k, expected) {
                circ_fail.insert(mask, f);
            }
        }
    });
    circuits_seen.sort_unstable();
    let mut circuits = ClauseReport::default();
    for c in circuits_seen {
        circuits.checked += 1;
        if let Some(f) = circ_fail.remove(&c) {
            circuits.failures.push(f);
            continue;
        }
        // C − e is independent of size |C|−1, so its clause-1 count is the same target
        if let Some(f) = subset::elements(c).find_map(|e| ind_fail.get(&(c & !(1 << e)))) {
            circuits.failures.push(f.clone());
        }
    }
    independents.failures.sort_by_key(mask_of);
    bases.failures.sort_by_key(mask_of);
    Ok(Lemma1Report { independents, bases, circuits })
}

/// Empirical entropy H(X_A) in bits of a uniformly chosen row, for every
/// column subset A (indexed by bitmask over the array's columns).
pub fn entropy_function(t: &Voa) -> Result<Vec<f64>> {
    if t.n_rows() == 0 {
        return Err(Error::Precondition("entropy of an array with no rows".into()));
    }
    let total = t.n_rows() as f64;
    let mut h = vec![0.0; 1 << t.n_cols()];
    for_each_subset(t, |mask, ids, k| {
        h[mask as usize] = counts(ids, k)
            .into_iter()
            .map(|c| {
                let p = c as f64 / total;
                -p * p.log2()
            })
            .sum::<f64>()
            .max(0.0);
    });
    Ok(h)
}
