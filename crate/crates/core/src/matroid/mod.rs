//! Finite matroids stored as exact rank tables over all subsets.

mod connect;
mod families;
mod iso;
mod json;
mod polymatroid;
mod represent;
mod standard;

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::subset::{self, Subset};

pub use connect::{connect, ConnectKind, Connection, LabelOrigin, Layout};
pub use families::Families;
pub use iso::{find_isomorphism, has_minor, minor_witness, MinorWitness};
pub use json::{JsonLabel, MatroidJson};
pub use polymatroid::IntegerPolymatroid;
pub use represent::{graphic_matroid, vector_matroid, Edge, FieldMode};
pub use standard::{example1_graph, example1_matrix, standard, wheel_graph, StandardKind};

/// Ordered sequence of distinct element labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroundSet {
    labels: Vec<String>,
}

impl GroundSet {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() > crate::MAX_GROUND {
            return Err(Error::GroundTooLarge(labels.len()));
        }
        let mut seen = HashSet::new();
        for l in &labels {
            validate_label(l)?;
            if !seen.insert(l.as_str()) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(GroundSet { labels })
    }

    /// Labels `1..=n`.
    pub fn numbered(n: usize) -> Result<Self> {
        Self::new((1..=n).map(|i| i.to_string()))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn mask_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<Subset> {
        let mut mask = 0;
        for l in labels {
            let i = self
                .index_of(l.as_ref())
                .ok_or_else(|| Error::UnknownLabel(l.as_ref().to_string()))?;
            mask |= 1 << i;
        }
        Ok(mask)
    }

    pub fn labels_of(&self, mask: Subset) -> Vec<String> {
        subset::elements(mask).map(|i| self.labels[i].clone()).collect()
    }

    pub fn full(&self) -> Subset {
        subset::full(self.len())
    }
}

pub(crate) fn validate_label(l: &str) -> Result<()> {
    if l.is_empty() || l.contains([',', '"', '\n', '\r']) || l.trim() != l {
        return Err(Error::InvalidLabel(l.to_string()));
    }
    Ok(())
}

/// Which rank-function axiom a [`Violation`] breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Axiom {
    /// r(∅) = 0
    Normalized,
    /// 0 ≤ r(A) ≤ |A|
    Bounded,
    /// A ⊆ B ⟹ r(A) ≤ r(B)
    Monotone,
    /// r(A) + r(B) ≥ r(A∪B) + r(A∩B)
    Submodular,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub axiom: Axiom,
    /// Witness subsets (bitmasks): one for `Bounded`/`Normalized`, a pair otherwise.
    pub witness: Vec<Subset>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.axiom {
            Axiom::Normalized => "r(∅)=0",
            Axiom::Bounded => "0≤r(A)≤|A|",
            Axiom::Monotone => "r(A)≤r(B) for A⊆B",
            Axiom::Submodular => "r(A)+r(B)≥r(A∪B)+r(A∩B)",
        };
        write!(f, "{name} with witness {:?}", self.witness)
    }
}

/// Check normalisation, boundedness (when `bounded`), monotonicity and
/// submodularity of a set function given as a dense table over `2^n`.
///
/// Monotonicity and submodularity are checked in their local forms
/// (single-element extensions), which are equivalent to the global ones;
/// every reported witness is nevertheless a genuine violating pair.
pub(crate) fn check_set_function(rank: &[u32], n: usize, bounded: bool) -> Result<Vec<Violation>> {
    let expected = 1usize << n;
    if rank.len() != expected {
        return Err(Error::RankNotTotal { expected, found: rank.len() });
    }
    let mut out = Vec::new();
    if rank[0] != 0 {
        out.push(Violation { axiom: Axiom::Normalized, witness: vec![0] });
    }
    for a in 0..expected as Subset {
        let ra = rank[a as usize];
        if bounded && ra > subset::size(a) {
            out.push(Violation { axiom: Axiom::Bounded, witness: vec![a] });
        }
        for e in 0..n {
            if subset::contains(a, e) {
                continue;
            }
            let ae = a | 1 << e;
            if rank[ae as usize] < ra {
                out.push(Violation { axiom: Axiom::Monotone, witness: vec![a, ae] });
            }
            for f in e + 1..n {
                if subset::contains(a, f) {
                    continue;
                }
                let af = a | 1 << f;
                let aef = ae | 1 << f;
                if rank[ae as usize] + rank[af as usize] < rank[aef as usize] + ra {
                    out.push(Violation { axiom: Axiom::Submodular, witness: vec![ae, af] });
                }
            }
        }
    }
    Ok(out)
}

/// Matroid axioms for a rank table over `2^n` subsets.
pub fn check_axioms(rank: &[u32], n: usize) -> Result<Vec<Violation>> {
    check_set_function(rank, n, true)
}

/// A matroid on a labelled ground set with its full rank table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matroid {
    ground: GroundSet,
    rank: Vec<u8>,
}

impl Matroid {
    /// Build from a rank table, rejecting anything that is not a matroid.
    pub fn from_rank_table(ground: GroundSet, rank: Vec<u32>) -> Result<Self> {
        let violations = check_axioms(&rank, ground.len())?;
        if !violations.is_empty() {
            return Err(Error::AxiomViolation(violations));
        }
        Ok(Self::from_trusted(ground, rank.into_iter().map(|r| r as u8).collect()))
    }

    /// Build from a rank function evaluated on every subset.
    pub fn from_rank_fn(ground: GroundSet, f: impl Fn(Subset) -> u32) -> Result<Self> {
        let table = (0..1u32 << ground.len()).map(f).collect();
        Self::from_rank_table(ground, table)
    }

    pub(crate) fn from_trusted(ground: GroundSet, rank: Vec<u8>) -> Self {
        debug_assert_eq!(rank.len(), 1 << ground.len());
        Matroid { ground, rank }
    }

    pub(crate) fn trusted_from_fn(ground: GroundSet, f: impl Fn(Subset) -> u32) -> Self {
        let rank = (0..1u32 << ground.len()).map(|s| f(s) as u8).collect();
        Matroid { ground, rank }
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
        self.rank[a as usize] as u32
    }

    /// r(N)
    pub fn full_rank(&self) -> u32 {
        self.rank(self.ground.full())
    }

    pub fn rank_of_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<u32> {
        Ok(self.rank(self.ground.mask_of(labels)?))
    }

    pub fn rank_table(&self) -> Vec<u32> {
        self.rank.iter().map(|&r| r as u32).collect()
    }

    pub fn is_independent(&self, a: Subset) -> bool {
        self.rank(a) == subset::size(a)
    }

    pub fn is_circuit(&self, c: Subset) -> bool {
        c != 0 && !self.is_independent(c) && subset::elements(c).all(|e| self.is_independent(c & !(1 << e)))
    }

    pub fn is_loopless(&self) -> bool {
        (0..self.n()).all(|e| self.rank(1 << e) == 1)
    }

    /// Closure test: no element outside `a` is spanned by it.
    pub fn is_flat(&self, a: Subset) -> bool {
        let ra = self.rank(a);
        (0..self.n()).all(|e| subset::contains(a, e) || self.rank(a | 1 << e) > ra)
    }

    pub fn to_polymatroid(&self) -> IntegerPolymatroid {
        IntegerPolymatroid::from_trusted(self.ground.clone(), self.rank_table())
    }

    /// Minor `M \ delete / contract`: ground `N − delete − contract`,
    /// rank(A) = r(A ∪ contract) − r(contract).
    pub fn minor(&self, delete: Subset, contract: Subset) -> Result<Matroid> {
        let overlap = delete & contract;
        if overlap != 0 {
            return Err(Error::OverlappingSets(self.ground.labels_of(overlap).join(",")));
        }
        let full = self.ground.full();
        if (delete | contract) & !full != 0 {
            return Err(Error::Precondition("minor sets reach outside the ground set".into()));
        }
        Ok(self.minor_unchecked(delete, contract))
    }

    pub(crate) fn minor_unchecked(&self, delete: Subset, contract: Subset) -> Matroid {
        let keep = self.ground.full() & !delete & !contract;
        let labels = self.ground.labels_of(keep);
        let ground = GroundSet { labels };
        let rc = self.rank(contract);
        Matroid::trusted_from_fn(ground, |a| self.rank(subset::deposit(a, keep) | contract) - rc)
    }

    pub fn minor_by_labels<S: AsRef<str>>(&self, delete: &[S], contract: &[S]) -> Result<Matroid> {
        self.minor(self.ground.mask_of(delete)?, self.ground.mask_of(contract)?)
    }

    pub fn restrict(&self, keep: Subset) -> Matroid {
        self.minor_unchecked(self.ground.full() & !keep, 0)
    }

    /// rank*(A) = |A| − r(N) + r(N∖A)
    pub fn dual(&self) -> Matroid {
        let full = self.ground.full();
        let rn = self.full_rank();
        Matroid::trusted_from_fn(self.ground.clone(), |a| subset::size(a) + self.rank(full & !a) - rn)
    }

    /// Same matroid with the ground set listed in a different order.
    pub fn reorder<S: AsRef<str>>(&self, order: &[S]) -> Result<Matroid> {
        if order.len() != self.n() {
            return Err(Error::ColumnMismatch {
                array: order.iter().map(|s| s.as_ref().to_string()).collect(),
                ground: self.labels().to_vec(),
            });
        }
        let idx: Vec<usize> = order
            .iter()
            .map(|l| self.ground.index_of(l.as_ref()).ok_or_else(|| Error::UnknownLabel(l.as_ref().into())))
            .collect::<Result<_>>()?;
        let ground = GroundSet::new(order.iter().map(|s| s.as_ref().to_string()))?;
        Ok(Matroid::trusted_from_fn(ground, |a| {
            self.rank(subset::elements(a).fold(0, |m, i| m | 1 << idx[i]))
        }))
    }

    /// Replace labels positionally.
    pub fn relabel<S: Into<String>>(&self, labels: impl IntoIterator<Item = S>) -> Result<Matroid> {
        let ground = GroundSet::new(labels)?;
        if ground.len() != self.n() {
            return Err(Error::Precondition("relabel needs one label per element".into()));
        }
        Ok(Matroid { ground, rank: self.rank.clone() })
    }

    /// Equality of rank functions keyed by label, ignoring ground order.
    pub fn same_as(&self, other: &Matroid) -> bool {
        match other.reorder(self.labels()) {
            Ok(o) => o.rank == self.rank,
            Err(_) => false,
        }
    }

    /// Equal rank tables position by position (labels ignored).
    pub fn same_table(&self, other: &Matroid) -> bool {
        self.rank == other.rank
    }

    /// Every pair of elements lies on a common circuit.
    pub fn is_connected(&self) -> bool {
        let n = self.n();
        if n <= 1 {
            return true;
        }
        let mut mates = vec![0 as Subset; n];
        for c in self.families().circuits {
            for e in subset::elements(c) {
                mates[e] |= c;
            }
        }
        let full = self.ground.full();
        mates.iter().all(|&m| m == full)
    }

    /// Relax a circuit-hyperplane `x`: rank of `x` goes up by one.
    pub fn relax_circuit_hyperplane(&self, x: Subset) -> Result<Matroid> {
        let rn = self.full_rank();
        if !self.is_circuit(x) {
            return Err(Error::Precondition(format!("{:?} is not a circuit", self.ground.labels_of(x))));
        }
        if self.rank(x) + 1 != rn || !self.is_flat(x) {
            return Err(Error::Precondition(format!("{:?} is not a hyperplane", self.ground.labels_of(x))));
        }
        let mut rank = self.rank.clone();
        rank[x as usize] += 1;
        Ok(Matroid { ground: self.ground.clone(), rank })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example1() -> Matroid {
        standard(StandardKind::Example1).unwrap()
    }

    #[test]
    fn free_matroid_has_no_violations() {
        let table: Vec<u32> = (0..64u32).map(|a| a.count_ones()).collect();
        assert!(check_axioms(&table, 6).unwrap().is_empty());
    }

    #[test]
    fn bounded_violation_names_witness() {
        let mut table: Vec<u32> = (0..8u32).map(|a| a.count_ones()).collect();
        table[0b011] = 3;
        let v = check_axioms(&table, 3).unwrap();
        assert!(v.iter().any(|x| x.axiom == Axiom::Bounded && x.witness == vec![0b011]));
    }

    #[test]
    fn rank_not_total() {
        assert_eq!(
            check_axioms(&[0, 1, 1], 2),
            Err(Error::RankNotTotal { expected: 4, found: 3 })
        );
    }

    #[test]
    fn example1_rank_values() {
        let m = example1();
        assert!(check_axioms(&m.rank_table(), 6).unwrap().is_empty());
        assert_eq!(m.rank_of_labels(&["4", "5", "6"]).unwrap(), 2);
        assert_eq!(m.rank_of_labels(&["1", "2", "3", "4"]).unwrap(), 3);
        assert_eq!(m.rank_of_labels(&["4", "5", "6", "1"]).unwrap(), 3);
        assert_eq!(m.rank_of_labels(&["1", "2", "3", "5"]).unwrap(), 4);
        assert!(m.is_connected());
    }

    #[test]
    fn minor_examples() {
        let m = example1();
        let m1 = m.minor_by_labels(&["5", "6"], &[]).unwrap();
        let u34 = standard(StandardKind::Uniform { t: 3, n: 4 }).unwrap();
        assert!(m1.same_table(&u34));
        let m2 = m1.minor_by_labels(&[], &["4"]).unwrap();
        let u23 = standard(StandardKind::Uniform { t: 2, n: 3 }).unwrap();
        assert!(m2.same_table(&u23));
        assert_eq!(m.minor(0, 0).unwrap(), m);
        assert!(matches!(m.minor(0b1, 0b11), Err(Error::OverlappingSets(_))));
    }

    #[test]
    fn dual_examples() {
        let u24 = standard(StandardKind::Uniform { t: 2, n: 4 }).unwrap();
        assert_eq!(u24.dual(), u24);
        let u25 = standard(StandardKind::Uniform { t: 2, n: 5 }).unwrap();
        let u35 = standard(StandardKind::Uniform { t: 3, n: 5 }).unwrap();
        assert_eq!(u25.dual(), u35);
        let fano = standard(StandardKind::Fano).unwrap();
        let fd = standard(StandardKind::FanoDual).unwrap();
        assert_eq!(fano.dual(), fd);
    }

    #[test]
    fn connectivity() {
        let u12 = standard(StandardKind::Uniform { t: 1, n: 2 }).unwrap();
        assert!(u12.is_connected());
        let sum = connect(ConnectKind::DirectSum, &u12, None, &u12, None).unwrap();
        assert!(!sum.matroid.is_connected());
    }

    #[test]
    fn relaxation() {
        let wheel3 = standard(StandardKind::Wheel { r: 3 }).unwrap();
        let rim = wheel3.ground().mask_of(&["a1", "a2", "a3"]).unwrap();
        let whirl = wheel3.relax_circuit_hyperplane(rim).unwrap();
        assert_eq!(whirl.rank(rim), 3);
        let fam = whirl.families();
        // circuits: wheel circuits minus the rim, plus rim ∪ b_i
        let wheel_fam = wheel3.families();
        let mut expected: Vec<Subset> = wheel_fam.circuits.iter().copied().filter(|&c| c != rim).collect();
        for b in ["b1", "b2", "b3"] {
            expected.push(rim | wheel3.ground().mask_of(&[b]).unwrap());
        }
        expected.sort_unstable();
        let mut got = fam.circuits.clone();
        got.sort_unstable();
        assert_eq!(got, expected);
        // non-circuit rejected
        assert!(wheel3.relax_circuit_hyperplane(0b11).is_err());
        // circuit but not a hyperplane: triangle a1 b1 b2 in wheel(4) has rank 2 < 3
        let wheel4 = standard(StandardKind::Wheel { r: 4 }).unwrap();
        let tri = wheel4.ground().mask_of(&["a1", "b1", "b2"]).unwrap();
        assert!(wheel4.is_circuit(tri));
        assert!(wheel4.relax_circuit_hyperplane(tri).is_err());
    }
}
