use serde::{Deserialize, Serialize};

use super::{GroundSet, Matroid};
use crate::error::{Error, Result};
use crate::subset::{self, Subset};

/// Independent sets, bases, circuits, loops and coloops of a matroid,
/// each as ascending lists of bitmasks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Families {
    pub independents: Vec<Subset>,
    pub bases: Vec<Subset>,
    pub circuits: Vec<Subset>,
    pub loops: Vec<usize>,
    pub coloops: Vec<usize>,
}

impl Matroid {
    pub fn families(&self) -> Families {
        let n = self.n();
        let rn = self.full_rank();
        let mut independents = Vec::new();
        let mut bases = Vec::new();
        let mut circuits = Vec::new();
        for a in 0..1u32 << n {
            if self.is_independent(a) {
                independents.push(a);
                if subset::size(a) == rn {
                    bases.push(a);
                }
            } else if subset::elements(a).all(|e| self.is_independent(a & !(1 << e))) {
                circuits.push(a);
            }
        }
        let loops = (0..n).filter(|&e| self.rank(1 << e) == 0).collect();
        let in_some_circuit = circuits.iter().fold(0, |acc, &c| acc | c);
        let coloops = (0..n).filter(|&e| !subset::contains(in_some_circuit, e)).collect();
        Families { independents, bases, circuits, loops, coloops }
    }

    /// Lexicographically first basis by greedy scan over element order.
    pub fn greedy_basis(&self) -> Subset {
        let mut b = 0;
        for e in 0..self.n() {
            if self.is_independent(b | 1 << e) {
                b |= 1 << e;
            }
        }
        b
    }

    /// Matroid given by its circuit family. The family is validated: no
    /// member is empty or contains another, and circuit elimination holds
    /// for every pair.
    pub fn from_circuits(ground: GroundSet, circuits: &[Subset]) -> Result<Matroid> {
        let n = ground.len();
        let full = ground.full();
        for (i, &c) in circuits.iter().enumerate() {
            if c == 0 {
                return Err(Error::CircuitAxiom("the empty set is listed as a circuit".into()));
            }
            if c & !full != 0 {
                return Err(Error::CircuitAxiom(format!("circuit #{i} reaches outside the ground set")));
            }
            for (j, &d) in circuits.iter().enumerate() {
                if i != j && c & d == d {
                    let msg = if c == d {
                        format!("{:?} listed twice", ground.labels_of(c))
                    } else {
                        format!("{:?} contains {:?}", ground.labels_of(c), ground.labels_of(d))
                    };
                    return Err(Error::CircuitAxiom(msg));
                }
            }
        }
        // dependent[A] = some circuit ⊆ A, by superset closure
        let size = 1usize << n;
        let mut dependent = vec![false; size];
        for &c in circuits {
            dependent[c as usize] = true;
        }
        for e in 0..n {
            for a in 0..size {
                if a >> e & 1 == 1 && dependent[a & !(1 << e)] {
                    dependent[a] = true;
                }
            }
        }
        for (i, &c1) in circuits.iter().enumerate() {
            for &c2 in &circuits[i + 1..] {
                let union = c1 | c2;
                for e in subset::elements(c1 & c2) {
                    if !dependent[(union & !(1 << e)) as usize] {
                        return Err(Error::CircuitAxiom(format!(
                            "elimination fails for {:?} and {:?} at `{}`",
                            ground.labels_of(c1),
                            ground.labels_of(c2),
                            ground.labels()[e]
                        )));
                    }
                }
            }
        }
        let mut rank = vec![0u8; size];
        for a in 1..size {
            rank[a] = if dependent[a] {
                subset::elements(a as Subset)
                    .map(|e| rank[a & !(1 << e)])
                    .max()
                    .unwrap_or(0)
            } else {
                (a as Subset).count_ones() as u8
            };
        }
        Ok(Matroid::from_trusted(ground, rank))
    }

    pub fn from_circuit_labels<S: AsRef<str>>(ground: GroundSet, circuits: &[Vec<S>]) -> Result<Matroid> {
        let masks = circuits
            .iter()
            .map(|c| ground.mask_of(c))
            .collect::<Result<Vec<_>>>()?;
        Self::from_circuits(ground, &masks)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::{check_axioms, standard, StandardKind};

    fn lbl(g: &GroundSet, ls: &[&str]) -> Subset {
        g.mask_of(ls).unwrap()
    }

    #[test]
    fn example1_from_circuits() {
        let g = GroundSet::numbered(6).unwrap();
        let circuits = [
            lbl(&g, &["1", "2", "3", "4"]),
            lbl(&g, &["4", "5", "6"]),
            lbl(&g, &["1", "2", "3", "5", "6"]),
        ];
        let m = Matroid::from_circuits(g.clone(), &circuits).unwrap();
        assert_eq!(m, standard(StandardKind::Example1).unwrap());

        let fam = m.families();
        let c456 = lbl(&g, &["4", "5", "6"]);
        let c1234 = lbl(&g, &["1", "2", "3", "4"]);
        let expected_bases: Vec<Subset> = (0..64u32)
            .filter(|&a| a.count_ones() == 4 && a != c1234 && a & c456 != c456)
            .collect();
        assert_eq!(fam.bases, expected_bases);
        assert!(fam.loops.is_empty() && fam.coloops.is_empty());
        let expected_ind: Vec<Subset> = (0..64u32)
            .filter(|&a| a.count_ones() <= 2 || (a.count_ones() == 3 && a != c456) || expected_bases.contains(&a))
            .collect();
        assert_eq!(fam.independents, expected_ind);
    }

    #[test]
    fn empty_circuits_give_free_matroid() {
        let g = GroundSet::numbered(4).unwrap();
        let m = Matroid::from_circuits(g, &[]).unwrap();
        assert!((0..16u32).all(|a| m.rank(a) == a.count_ones()));
        let fam = m.families();
        assert!(fam.circuits.is_empty());
        assert_eq!(fam.coloops, vec![0, 1, 2, 3]);
    }

    #[test]
    fn all_t_plus_one_subsets_give_uniform() {
        // brute-force oracle: rank = min(t, |A|)
        for n in 2..=6 {
            for t in 0..n {
                let g = GroundSet::numbered(n).unwrap();
                let circuits: Vec<Subset> = crate::subset::k_subsets(n, t + 1).collect();
                let m = Matroid::from_circuits(g, &circuits).unwrap();
                for a in 0..1u32 << n {
                    assert_eq!(m.rank(a), a.count_ones().min(t as u32));
                }
                assert!(check_axioms(&m.rank_table(), n).unwrap().is_empty());
                let mut fam_c = m.families().circuits;
                fam_c.sort_unstable();
                let mut want = circuits.clone();
                want.sort_unstable();
                assert_eq!(fam_c, want);
            }
        }
    }

    #[test]
    fn invalid_circuit_families() {
        let g = GroundSet::numbered(4).unwrap();
        // nested
        assert!(Matroid::from_circuits(g.clone(), &[0b011, 0b111]).is_err());
        // elimination fails: {1,2},{2,3} would need a circuit inside {1,3}
        let err = Matroid::from_circuits(g.clone(), &[0b011, 0b110]).unwrap_err();
        assert!(matches!(err, Error::CircuitAxiom(msg) if msg.contains("elimination")));
        assert!(Matroid::from_circuits(g, &[0]).is_err());
    }
}
