use serde::{Deserialize, Serialize};

use super::Matroid;
use crate::subset::{self, Subset};

/// Per-element invariant: singleton rank, then how many circuits of each
/// size contain the element.
fn signatures(m: &Matroid) -> Vec<Vec<u32>> {
    let n = m.n();
    let mut sig = vec![vec![0u32; n + 2]; n];
    for (e, s) in sig.iter_mut().enumerate() {
        s[0] = m.rank(1 << e);
    }
    for c in m.families().circuits {
        let k = subset::size(c) as usize;
        for e in subset::elements(c) {
            sig[e][k + 1] += 1;
        }
    }
    sig
}

/// A bijection `phi` from the ground of `a` to that of `b` (as positions)
/// with `r_b(phi(X)) = r_a(X)` for every X, or `None`. Candidates are tried
/// in ascending order so the first witness found is deterministic.
pub fn find_isomorphism(a: &Matroid, b: &Matroid) -> Option<Vec<usize>> {
    let n = a.n();
    if n != b.n() || a.full_rank() != b.full_rank() {
        return None;
    }
    let sa = signatures(a);
    let sb = signatures(b);
    let mut ka = sa.clone();
    let mut kb = sb.clone();
    ka.sort();
    kb.sort();
    if ka != kb {
        return None;
    }
    let mut phi = vec![usize::MAX; n];
    let mut used = 0 as Subset;
    if extend(a, b, &sa, &sb, 0, &mut phi, &mut used) {
        Some(phi)
    } else {
        None
    }
}

fn extend(a: &Matroid, b: &Matroid, sa: &[Vec<u32>], sb: &[Vec<u32>], k: usize, phi: &mut [usize], used: &mut Subset) -> bool {
    if k == a.n() {
        return true;
    }
    for f in 0..b.n() {
        if subset::contains(*used, f) || sa[k] != sb[f] {
            continue;
        }
        phi[k] = f;
        // every subset of {0..k} containing k must keep its rank
        let ok = subset::submasks(subset::full(k)).all(|x| {
            let xb = subset::elements(x).fold(1 << f, |m, e| m | 1 << phi[e]);
            a.rank(x | 1 << k) == b.rank(xb)
        });
        if ok {
            *used |= 1 << f;
            if extend(a, b, sa, sb, k + 1, phi, used) {
                return true;
            }
            *used &= !(1 << f);
        }
    }
    phi[k] = usize::MAX;
    false
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorWitness {
    pub delete: Vec<String>,
    pub contract: Vec<String>,
    /// (target label, label in the host) pairs.
    pub mapping: Vec<(String, String)>,
}

/// Search for `target` as a minor of `m`. Every minor can be written as
/// `M ∖ S / T` with `T` independent and `S` coindependent, so only those
/// pairs are tried: kept sets in ascending combination order, then
/// contraction sets in ascending bitmask order.
pub fn minor_witness(m: &Matroid, target: &Matroid) -> Option<MinorWitness> {
    let n = m.n();
    let k = target.n();
    if k > n || target.full_rank() > m.full_rank() {
        return None;
    }
    let t_size = (m.full_rank() - target.full_rank()) as usize;
    if t_size > n - k {
        return None;
    }
    let full = m.ground().full();
    let rn = m.full_rank();
    for keep in subset::k_subsets(n, k) {
        let rest = full & !keep;
        let rest_n = subset::size(rest) as usize;
        for packed in subset::k_subsets(rest_n, t_size) {
            let contract = subset::deposit(packed, rest);
            let delete = rest & !contract;
            if !m.is_independent(contract) || m.rank(full & !delete) != rn {
                continue;
            }
            let minor = m.minor_unchecked(delete, contract);
            if let Some(phi) = find_isomorphism(target, &minor) {
                let mapping = (0..k)
                    .map(|i| (target.labels()[i].clone(), minor.labels()[phi[i]].clone()))
                    .collect();
                return Some(MinorWitness {
                    delete: m.ground().labels_of(delete),
                    contract: m.ground().labels_of(contract),
                    mapping,
                });
            }
        }
    }
    None
}

pub fn has_minor(m: &Matroid, target: &Matroid) -> bool {
    minor_witness(m, target).is_some()
}
