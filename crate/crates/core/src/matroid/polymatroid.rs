use super::{check_set_function, GroundSet, Violation};
use crate::error::{Error, Result};
use crate::subset::{self, Subset};

/// Normalised, monotone, submodular integer set function (no `r(A) ≤ |A|`
/// bound). Matroids are the special case where singletons have rank ≤ 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerPolymatroid {
    ground: GroundSet,
    rank: Vec<u32>,
}

impl IntegerPolymatroid {
    pub fn new(ground: GroundSet, rank: Vec<u32>) -> Result<Self> {
        let v = Self::check(&rank, ground.len())?;
        if !v.is_empty() {
            return Err(Error::AxiomViolation(v));
        }
        Ok(IntegerPolymatroid { ground, rank })
    }

    pub fn from_rank_fn(ground: GroundSet, f: impl Fn(Subset) -> u32) -> Result<Self> {
        let rank = (0..1u32 << ground.len()).map(f).collect();
        Self::new(ground, rank)
    }

    pub fn check(rank: &[u32], n: usize) -> Result<Vec<Violation>> {
        check_set_function(rank, n, false)
    }

    pub(crate) fn from_trusted(ground: GroundSet, rank: Vec<u32>) -> Self {
        IntegerPolymatroid { ground, rank }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn labels(&self) -> &[String] {
        self.ground.labels()
    }

    pub fn n(&self) -> usize {
        self.ground.len()
    }

    #[inline]
    pub fn rank(&self, a: Subset) -> u32 {
        self.rank[a as usize]
    }

    pub fn full_rank(&self) -> u32 {
        self.rank(self.ground.full())
    }

    pub fn rank_table(&self) -> &[u32] {
        &self.rank
    }

    /// h({i}) for each element.
    pub fn singleton_ranks(&self) -> Vec<u32> {
        (0..self.n()).map(|i| self.rank(1 << i)).collect()
    }

    pub fn is_matroid(&self) -> bool {
        (0..self.rank.len() as Subset).all(|a| self.rank(a) <= subset::size(a))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::Axiom;

    #[test]
    fn hat_u25_is_a_polymatroid_not_a_matroid() {
        // h(A) = min(2, |A|) except h({1}) = 2
        let g = GroundSet::numbered(4).unwrap();
        let h = IntegerPolymatroid::from_rank_fn(g, |a| if a == 1 { 2 } else { a.count_ones().min(2) }).unwrap();
        assert!(!h.is_matroid());
        assert_eq!(h.singleton_ranks(), vec![2, 1, 1, 1]);
        assert_eq!(h.full_rank(), 2);
    }

    #[test]
    fn rejects_non_submodular() {
        let g = GroundSet::numbered(2).unwrap();
        let err = IntegerPolymatroid::new(g, vec![0, 1, 1, 3]).unwrap_err();
        match err {
            Error::AxiomViolation(v) => assert!(v.iter().any(|x| x.axiom == Axiom::Submodular)),
            other => panic!("{other:?}"),
        }
    }
}
