use crate::error::{Error, Result};
use crate::matroid::{GroundSet, IntegerPolymatroid, Matroid};
use crate::subset::{self, Subset};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeExpansion {
    pub matroid: Matroid,
    /// For each expanded element, the polymatroid element it copies.
    pub phi: Vec<usize>,
}

impl FreeExpansion {
    /// φ⁻¹(A): every copy of the elements of A.
    pub fn preimage(&self, a: Subset) -> Subset {
        self.phi.iter().enumerate().filter(|&(_, &i)| a & 1 << i != 0).fold(0, |m, (j, _)| m | 1 << j)
    }
}

/// Replaces each element i by h(i) free copies (labelled `i`, `i'`,
/// `i''`, ...), with rank(K) = min over I of h(I) + |K ∖ φ⁻¹(I)|.
pub fn free_expansion(p: &IntegerPolymatroid) -> Result<FreeExpansion> {
    let h = p.singleton_ranks();
    let total: u32 = h.iter().sum();
    if total as usize > crate::MAX_GROUND {
        return Err(Error::GroundTooLarge(total as usize));
    }
    let mut labels = Vec::new();
    let mut phi = Vec::new();
    for (i, &k) in h.iter().enumerate() {
        for c in 0..k {
            labels.push(format!("{}{}", p.labels()[i], "'".repeat(c as usize)));
            phi.push(i);
        }
    }
    let ground = GroundSet::new(labels)?;
    let mut copies = vec![0 as Subset; h.len()];
    for (j, &i) in phi.iter().enumerate() {
        copies[i] |= 1 << j;
    }
    let m = Matroid::from_rank_fn(ground, |k| {
        let support = copies.iter().enumerate().filter(|(_, &c)| c & k != 0).fold(0, |s, (i, _)| s | 1 << i);
        subset::submasks(support)
            .map(|i| {
                let covered = subset::elements(i).fold(0, |s, e| s | copies[e]);
                p.rank(i) + subset::size(k & !covered)
            })
            .min()
            .expect("empty set is a submask")
    })?;
    Ok(FreeExpansion { matroid: m, phi })
}
