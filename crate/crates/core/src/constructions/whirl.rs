use std::collections::HashMap;
use std::ops::ControlFlow;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matroid::{standard, GroundSet, Matroid, StandardKind};
use crate::oa::{for_each_latin_square, oa_2_4, LatinSquare};
use crate::voa::{verify_voa, Voa};

/// Latin squares tried per stage before giving up.
pub const DEFAULT_WHIRL_BUDGET: usize = 10_000;

/// How one growth step k → k+1 was completed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WhirlStage {
    /// Rank of the whirl produced by this step.
    pub rank: usize,
    /// `"cyclic"` or `"latin square #i"` (lexicographic index from 0).
    pub table: String,
    /// Tables tried, including the successful one.
    pub attempts: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WhirlBuild {
    pub array: Voa,
    pub stages: Vec<WhirlStage>,
}

fn whirl_labels(k: usize) -> GroundSet {
    let labels: Vec<String> = (1..=k).map(|i| format!("a{i}")).chain((1..=k).map(|i| format!("b{i}"))).collect();
    GroundSet::new(labels).expect("distinct labels")
}

/// A VOA of the rank-r whirl over ℤᵥ, columns a1..ar, b1..br.
pub fn whirl_voa(r: usize, v: u32) -> Result<Voa> {
    Ok(whirl_voa_with(r, v, DEFAULT_WHIRL_BUDGET)?.array)
}

/// Grows the array one rank at a time from an OA(2,4,v) on a1,a2,b1,b2.
/// Each step uses an OA(2,3,v) ⊗₁ (the cyclic one first, then Latin
/// squares in lexicographic order, up to `budget` of them), and keeps the
/// first result that verifies against the whirl of the next rank.
pub fn whirl_voa_with(r: usize, v: u32, budget: usize) -> Result<WhirlBuild> {
    if r < 2 {
        return Err(Error::Precondition(format!("whirls have rank at least 2, got {r}")));
    }
    if 2 * r > crate::MAX_GROUND {
        return Err(Error::GroundTooLarge(2 * r));
    }
    let base = oa_2_4(v)?;
    // oa_2_4 columns are (x, y, L1, L2)
    let mut t = base.relabel(["a1", "a2", "b1", "b2"])?;
    let w2 = standard(StandardKind::Whirl { r: 2 })?;
    if !verify_voa(&t, &w2)?.pass {
        return Err(Error::WhirlStage { stage: 2, attempts: 0 });
    }
    let mut stages = Vec::new();
    for k in 2..r {
        let target = standard(StandardKind::Whirl { r: k + 1 })?;
        let cyclic = LatinSquare::from_fn(v, |x, y| (x + y) % v)?;
        let mut attempts = 1;
        if let Some(next) = try_stage(&t, k, &cyclic, &target)? {
            t = next;
            stages.push(WhirlStage { rank: k + 1, table: "cyclic".into(), attempts });
            continue;
        }
        let mut found = None;
        let mut index = 0;
        let mut failure = None;
        for_each_latin_square(v, |sq| {
            if attempts > budget {
                return ControlFlow::Break(());
            }
            attempts += 1;
            match try_stage(&t, k, sq, &target) {
                Ok(Some(next)) => {
                    found = Some((next, index));
                    ControlFlow::Break(())
                }
                Ok(None) => {
                    index += 1;
                    ControlFlow::Continue(())
                }
                Err(e) => {
                    failure = Some(e);
                    ControlFlow::Break(())
                }
            }
        });
        if let Some(e) = failure {
            return Err(e);
        }
        match found {
            Some((next, i)) => {
                t = next;
                stages.push(WhirlStage { rank: k + 1, table: format!("latin square #{i}"), attempts });
            }
            None => return Err(Error::WhirlStage { stage: k + 1, attempts }),
        }
    }
    Ok(WhirlBuild { array: t, stages })
}

/// One growth step with ⊗₁ = `op`; `None` if ⊗₂ is not well defined or
/// the result fails verification.
fn try_stage(t: &Voa, k: usize, op: &LatinSquare, target: &Matroid) -> Result<Option<Voa>> {
    let v = t.level();
    let rows_k = t.n_rows();
    let width = 2 * (k + 1);
    // new column positions: a'_i at i-1, b'_i at k+i
    let (ak, ak1, b1, bk, bk1) = (k - 1, k, k + 1, 2 * k, 2 * k + 1);
    let mut data = vec![0u32; rows_k * v as usize * width];
    for tt in 0..v {
        for j in 0..rows_k {
            let old = t.row(j);
            let row = &mut data[(tt as usize * rows_k + j) * width..][..width];
            row[..k - 1].copy_from_slice(&old[..k - 1]);
            row[ak] = op.get(old[k - 1], tt);
            row[ak1] = tt;
            row[b1..=bk].copy_from_slice(&old[k..2 * k]);
        }
    }

    // ⊗₂ from the rows of ded(a'_k, b'_k, b'_1, a'_{k+1}) with a'_{k+1} = 0
    let mut table: HashMap<(u32, u32), u32> = HashMap::new();
    for row in data.chunks(width) {
        if row[ak1] != 0 {
            continue;
        }
        match table.insert((row[ak], row[bk]), row[b1]) {
            Some(prev) if prev != row[b1] => return Ok(None),
            _ => {}
        }
    }
    if table.len() != (v * v) as usize {
        return Ok(None);
    }
    for row in data.chunks_mut(width) {
        row[bk1] = table[&(row[ak], row[bk])];
    }
    let next = Voa::from_flat(v, whirl_labels(k + 1), data)?;
    Ok(verify_voa(&next, target)?.pass.then_some(next))
}
