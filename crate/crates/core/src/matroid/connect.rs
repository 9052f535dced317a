use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::{GroundSet, Matroid};
use crate::error::{Error, Result};
use crate::subset::{self, Subset};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConnectKind {
    Series,
    Parallel,
    DirectSum,
    TwoSum,
}

/// Where an element of a connection came from: operand (1 or 2) and its
/// label there.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelOrigin {
    pub label: String,
    pub from: Vec<(u8, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Connection {
    pub matroid: Matroid,
    /// Label of the joint element `p` (series and parallel only).
    pub joint: Option<String>,
    pub provenance: Vec<LabelOrigin>,
}

/// Ground-set layout shared by matroid and array connections: the
/// elements of `N1 − p1` keep their labels, then the joint `p` (if any),
/// then `N2 − p2`, where labels that would clash are replaced by the
/// smallest unused positive integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layout {
    pub ground: GroundSet,
    /// Position in the result of each element of operand 1 (`None` for p1).
    pub map1: Vec<Option<usize>>,
    pub map2: Vec<Option<usize>>,
    pub joint: Option<usize>,
    pub provenance: Vec<LabelOrigin>,
}

impl Layout {
    pub fn new(labels1: &[String], p1: Option<usize>, labels2: &[String], p2: Option<usize>) -> Result<Layout> {
        let with_joint = match (p1, p2) {
            (Some(_), Some(_)) => true,
            (None, None) => false,
            _ => return Err(Error::Precondition("base points must be given for both operands or neither".into())),
        };
        let kept1: Vec<usize> = (0..labels1.len()).filter(|&i| Some(i) != p1).collect();
        let kept2: Vec<usize> = (0..labels2.len()).filter(|&i| Some(i) != p2).collect();
        let mut taken: HashSet<String> = kept1.iter().map(|&i| labels1[i].clone()).collect();
        taken.extend(kept2.iter().map(|&i| labels2[i].clone()));
        let mut next = 1u64;
        let mut fresh = |taken: &mut HashSet<String>| loop {
            let s = next.to_string();
            next += 1;
            if taken.insert(s.clone()) {
                return s;
            }
        };

        let mut labels = Vec::new();
        let mut provenance = Vec::new();
        let mut map1 = vec![None; labels1.len()];
        let mut map2 = vec![None; labels2.len()];
        for &i in &kept1 {
            map1[i] = Some(labels.len());
            labels.push(labels1[i].clone());
            provenance.push(LabelOrigin { label: labels1[i].clone(), from: vec![(1, labels1[i].clone())] });
        }
        let joint = if with_joint {
            let (p1, p2) = (p1.unwrap(), p2.unwrap());
            let p = fresh(&mut taken);
            map1[p1] = Some(labels.len());
            map2[p2] = Some(labels.len());
            provenance.push(LabelOrigin {
                label: p.clone(),
                from: vec![(1, labels1[p1].clone()), (2, labels2[p2].clone())],
            });
            labels.push(p);
            Some(labels.len() - 1)
        } else {
            None
        };
        let used1: HashSet<&str> = kept1.iter().map(|&i| labels1[i].as_str()).collect();
        for &i in &kept2 {
            let old = &labels2[i];
            let new = if used1.contains(old.as_str()) || joint.is_some_and(|j| &labels[j] == old) {
                fresh(&mut taken)
            } else {
                old.clone()
            };
            map2[i] = Some(labels.len());
            provenance.push(LabelOrigin { label: new.clone(), from: vec![(2, old.clone())] });
            labels.push(new);
        }
        Ok(Layout { ground: GroundSet::new(labels)?, map1, map2, joint, provenance })
    }

    pub fn map_subset1(&self, a: Subset) -> Subset {
        subset::elements(a).fold(0, |m, e| m | self.map1[e].map_or(0, |i| 1 << i))
    }

    pub fn map_subset2(&self, a: Subset) -> Subset {
        subset::elements(a).fold(0, |m, e| m | self.map2[e].map_or(0, |i| 1 << i))
    }

    /// Elements of the result that came from operand 1 (joint excluded).
    pub fn side1(&self) -> Subset {
        self.map1.iter().flatten().filter(|&&i| Some(i) != self.joint).fold(0, |m, &i| m | 1 << i)
    }

    pub fn side2(&self) -> Subset {
        self.map2.iter().flatten().filter(|&&i| Some(i) != self.joint).fold(0, |m, &i| m | 1 << i)
    }
}

fn base_point(m: &Matroid, p: Option<&str>, which: u8) -> Result<usize> {
    let p = p.ok_or_else(|| Error::Precondition(format!("operand {which} needs a base point")))?;
    let i = m.ground().index_of(p).ok_or_else(|| Error::UnknownLabel(p.to_string()))?;
    if m.rank(1 << i) == 0 {
        return Err(Error::Precondition(format!("base point `{p}` of operand {which} is a loop")));
    }
    let full = m.ground().full();
    if m.rank(full & !(1 << i)) < m.full_rank() {
        return Err(Error::Precondition(format!("base point `{p}` of operand {which} is a coloop")));
    }
    Ok(i)
}

/// Binary connection of two matroids. Series and parallel connections are
/// built from their circuit families; the 2-sum is the series connection
/// with `p` contracted; the direct sum adds ranks of the two sides.
pub fn connect(kind: ConnectKind, m1: &Matroid, p1: Option<&str>, m2: &Matroid, p2: Option<&str>) -> Result<Connection> {
    if kind == ConnectKind::DirectSum {
        if p1.is_some() || p2.is_some() {
            return Err(Error::Precondition("the direct sum takes no base points".into()));
        }
        let layout = Layout::new(m1.labels(), None, m2.labels(), None)?;
        let (s1, s2) = (layout.side1(), layout.side2());
        let matroid = Matroid::trusted_from_fn(layout.ground.clone(), |a| {
            m1.rank(subset::extract(a, s1)) + m2.rank(subset::extract(a, s2))
        });
        return Ok(Connection { matroid, joint: None, provenance: layout.provenance });
    }

    let i1 = base_point(m1, p1, 1)?;
    let i2 = base_point(m2, p2, 2)?;
    let layout = Layout::new(m1.labels(), Some(i1), m2.labels(), Some(i2))?;
    let p = layout.joint.expect("joint present");
    let c1 = m1.families().circuits;
    let c2 = m2.families().circuits;
    let (through1, avoid1): (Vec<Subset>, Vec<Subset>) = c1.iter().partition(|&&c| subset::contains(c, i1));
    let (through2, avoid2): (Vec<Subset>, Vec<Subset>) = c2.iter().partition(|&&c| subset::contains(c, i2));

    let mut circuits: Vec<Subset> = avoid1.iter().map(|&c| layout.map_subset1(c)).collect();
    circuits.extend(avoid2.iter().map(|&c| layout.map_subset2(c)));
    // map_subset sends p_i to p, so (C_i − p_i) ∪ p is just the image of C_i
    let mixed = through1
        .iter()
        .flat_map(|&a| through2.iter().map(move |&b| (a, b)))
        .map(|(a, b)| layout.map_subset1(a) | layout.map_subset2(b));
    match kind {
        ConnectKind::Series | ConnectKind::TwoSum => circuits.extend(mixed),
        ConnectKind::Parallel => {
            circuits.extend(through1.iter().map(|&c| layout.map_subset1(c)));
            circuits.extend(through2.iter().map(|&c| layout.map_subset2(c)));
            circuits.extend(mixed.map(|c| c & !(1 << p)));
        }
        ConnectKind::DirectSum => unreachable!(),
    }
    circuits.sort_unstable();
    circuits.dedup();
    let joined = Matroid::from_circuits(layout.ground.clone(), &circuits)?;
    if kind == ConnectKind::TwoSum {
        let matroid = joined.minor_unchecked(0, 1 << p);
        let provenance = layout.provenance.into_iter().filter(|o| o.label != layout.ground.labels()[p]).collect();
        return Ok(Connection { matroid, joint: None, provenance });
    }
    Ok(Connection { matroid: joined, joint: Some(layout.ground.labels()[p].clone()), provenance: layout.provenance })
}
