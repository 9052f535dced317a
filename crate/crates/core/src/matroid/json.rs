use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{GroundSet, Matroid};
use crate::error::{Error, Result};

/// A label as it appears in JSON: small integers stay numbers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JsonLabel {
    Int(u64),
    Str(String),
}

impl JsonLabel {
    fn from_label(l: &str) -> Self {
        match l.parse::<u64>() {
            Ok(i) if i.to_string() == l => JsonLabel::Int(i),
            _ => JsonLabel::Str(l.to_string()),
        }
    }

    fn into_label(self) -> String {
        match self {
            JsonLabel::Int(i) => i.to_string(),
            JsonLabel::Str(s) => s,
        }
    }
}

/// On-disk matroid: either a full rank table keyed by decimal bitmask, or
/// a circuit list. Labels default to `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatroidJson {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<JsonLabel>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<BTreeMap<String, u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub circuits: Option<Vec<Vec<JsonLabel>>>,
}

impl MatroidJson {
    pub fn from_matroid(m: &Matroid) -> Self {
        let rank = (0..1u32 << m.n()).map(|a| (a.to_string(), m.rank(a))).collect();
        MatroidJson {
            n: m.n(),
            labels: Some(m.labels().iter().map(|l| JsonLabel::from_label(l)).collect()),
            rank: Some(rank),
            circuits: None,
        }
    }

    /// Circuit-list form (smaller for large ground sets).
    pub fn circuits_of(m: &Matroid) -> Self {
        let circuits = m
            .families()
            .circuits
            .iter()
            .map(|&c| m.ground().labels_of(c).iter().map(|l| JsonLabel::from_label(l)).collect())
            .collect();
        MatroidJson {
            n: m.n(),
            labels: Some(m.labels().iter().map(|l| JsonLabel::from_label(l)).collect()),
            rank: None,
            circuits: Some(circuits),
        }
    }

    pub fn to_matroid(&self) -> Result<Matroid> {
        if self.n > crate::MAX_GROUND {
            return Err(Error::GroundTooLarge(self.n));
        }
        let ground = match &self.labels {
            Some(ls) => {
                if ls.len() != self.n {
                    return Err(Error::Parse(format!("n = {} but {} labels given", self.n, ls.len())));
                }
                GroundSet::new(ls.iter().cloned().map(JsonLabel::into_label))?
            }
            None => GroundSet::numbered(self.n)?,
        };
        match (&self.rank, &self.circuits) {
            (Some(rank), None) => {
                let size = 1usize << self.n;
                let mut table = vec![None; size];
                for (k, &r) in rank {
                    let mask: usize = k
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("rank key `{k}` is not a decimal bitmask")))?;
                    if mask >= size {
                        return Err(Error::Parse(format!("rank key {mask} exceeds 2^{}", self.n)));
                    }
                    if table[mask].replace(r).is_some() {
                        return Err(Error::Parse(format!("rank key {mask} given twice")));
                    }
                }
                if let Some(missing) = table.iter().position(Option::is_none) {
                    return Err(Error::Parse(format!(
                        "rank table has {} of {size} subsets; first missing mask is {missing}",
                        rank.len()
                    )));
                }
                Matroid::from_rank_table(ground, table.into_iter().map(Option::unwrap).collect())
            }
            (None, Some(circuits)) => {
                let labels: Vec<Vec<String>> = circuits
                    .iter()
                    .map(|c| c.iter().cloned().map(JsonLabel::into_label).collect())
                    .collect();
                Matroid::from_circuit_labels(ground, &labels)
            }
            _ => Err(Error::Parse("exactly one of `rank` and `circuits` must be present".into())),
        }
    }
}

impl Matroid {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&MatroidJson::from_matroid(self)).expect("serialisable")
    }

    pub fn from_json(s: &str) -> Result<Matroid> {
        let j: MatroidJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        j.to_matroid()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::{standard, StandardKind};

    #[test]
    fn round_trip_rank_form() {
        for k in [StandardKind::Example1, StandardKind::Wheel { r: 3 }, StandardKind::Uniform { t: 0, n: 0 }] {
            let m = standard(k).unwrap();
            assert_eq!(Matroid::from_json(&m.to_json()).unwrap(), m);
        }
    }

    #[test]
    fn numeric_labels_are_numbers() {
        let m = standard(StandardKind::Uniform { t: 1, n: 2 }).unwrap();
        let v: serde_json::Value = serde_json::from_str(&m.to_json()).unwrap();
        assert_eq!(v["labels"], serde_json::json!([1, 2]));
        assert_eq!(v["rank"]["3"], 1);
    }

    #[test]
    fn circuit_form() {
        let m = standard(StandardKind::Whirl { r: 3 }).unwrap();
        let s = serde_json::to_string(&MatroidJson::circuits_of(&m)).unwrap();
        assert_eq!(Matroid::from_json(&s).unwrap(), m);
        let text = r#"{"n": 6, "circuits": [[1,2,3,4],[4,5,6],[1,2,3,5,6]]}"#;
        assert_eq!(Matroid::from_json(text).unwrap(), standard(StandardKind::Example1).unwrap());
    }

    #[test]
    fn malformed() {
        assert!(matches!(Matroid::from_json(r#"{"n": 1, "rank": {"0": 0}}"#), Err(Error::Parse(_))));
        assert!(matches!(
            Matroid::from_json(r#"{"n": 1, "rank": {"0": 0, "1": 2}}"#),
            Err(Error::AxiomViolation(_))
        ));
        assert!(Matroid::from_json(r#"{"n": 1}"#).is_err());
        assert!(Matroid::from_json(r#"{"n": 2, "circuits": [[1, 9]]}"#).is_err());
        assert!(matches!(Matroid::from_json(r#"{"n": 30, "circuits": []}"#), Err(Error::GroundTooLarge(30))));
    }
}
