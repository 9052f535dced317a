use serde::{Deserialize, Serialize};

use super::{graphic_matroid, vector_matroid, Edge, FieldMode, GroundSet, Matroid};
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::subset::{self, Subset};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StandardKind {
    Uniform { t: usize, n: usize },
    Fano,
    FanoDual,
    Wheel { r: usize },
    Whirl { r: usize },
    Example1,
}

impl std::fmt::Display for StandardKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StandardKind::Uniform { t, n } => write!(f, "U_{{{t},{n}}}"),
            StandardKind::Fano => f.write_str("F7"),
            StandardKind::FanoDual => f.write_str("F7*"),
            StandardKind::Wheel { r } => write!(f, "wheel({r})"),
            StandardKind::Whirl { r } => write!(f, "whirl({r})"),
            StandardKind::Example1 => f.write_str("example1"),
        }
    }
}

/// The 4-element circuits of F7*, each of rank 3; every other 4-set has rank 4.
pub(crate) const FANO_DUAL_RANK3: [[usize; 4]; 7] = [
    [1, 2, 3, 5],
    [1, 2, 4, 6],
    [1, 3, 4, 7],
    [1, 5, 6, 7],
    [2, 3, 6, 7],
    [2, 5, 4, 7],
    [3, 4, 5, 6],
];

pub fn standard(kind: StandardKind) -> Result<Matroid> {
    match kind {
        StandardKind::Uniform { t, n } => {
            if t > n {
                return Err(Error::Precondition(format!("uniform matroid needs t <= n, got t={t}, n={n}")));
            }
            let ground = GroundSet::numbered(n)?;
            Ok(Matroid::trusted_from_fn(ground, |a| subset::size(a).min(t as u32)))
        }
        StandardKind::Fano => {
            // columns are the nonzero vectors of GF(2)^3 placed so that the
            // lines are {1,2,7},{1,3,6},{1,4,5},{2,3,4},{2,5,6},{3,5,7},{4,6,7}
            let cols: [[i64; 3]; 7] = [
                [0, 0, 1],
                [0, 1, 0],
                [1, 0, 0],
                [1, 1, 0],
                [1, 1, 1],
                [1, 0, 1],
                [0, 1, 1],
            ];
            let entries: Vec<i64> = (0..3).flat_map(|r| cols.iter().map(move |c| c[r])).collect();
            let m = IntMatrix::new(3, 7, entries)?;
            vector_matroid(&m, &GroundSet::numbered(7)?, FieldMode::Field(2))
        }
        StandardKind::FanoDual => {
            let ground = GroundSet::numbered(7)?;
            let special: Vec<Subset> = FANO_DUAL_RANK3
                .iter()
                .map(|s| s.iter().fold(0, |m, &e| m | 1 << (e - 1)))
                .collect();
            Ok(Matroid::trusted_from_fn(ground, |a| {
                let k = subset::size(a);
                if k <= 3 {
                    k
                } else if special.contains(&a) {
                    3
                } else {
                    4
                }
            }))
        }
        StandardKind::Wheel { r } => {
            if r < 2 {
                return Err(Error::Precondition(format!("wheel needs r >= 2, got {r}")));
            }
            let (ground, edges) = wheel_graph(r)?;
            graphic_matroid(&ground, &edges)
        }
        StandardKind::Whirl { r } => {
            let wheel = standard(StandardKind::Wheel { r })?;
            let rim = subset::full(r);
            wheel.relax_circuit_hyperplane(rim)
        }
        StandardKind::Example1 => {
            let ground = GroundSet::numbered(6)?;
            let s456: Subset = 0b111000;
            let s1234: Subset = 0b001111;
            Ok(Matroid::trusted_from_fn(ground, |a| {
                let k = subset::size(a);
                if k <= 2 {
                    k
                } else if a == s456 {
                    2
                } else if k == 3 || (k == 4 && a & s456 == s456) || a == s1234 {
                    3
                } else {
                    4
                }
            }))
        }
    }
}

/// Wheel graph with hub `0` and rim vertices `1..=r`. Ground order is the
/// rim `a1..ar` followed by the spokes `b1..br`; `a_i` joins rim vertices
/// `i` and `i+1` (cyclically) and `b_i` joins the hub to rim vertex `i`.
pub fn wheel_graph(r: usize) -> Result<(GroundSet, Vec<Edge>)> {
    let labels = (1..=r).map(|i| format!("a{i}")).chain((1..=r).map(|i| format!("b{i}")));
    let ground = GroundSet::new(labels)?;
    let mut edges = Vec::with_capacity(2 * r);
    for i in 1..=r {
        edges.push(Edge(i, i % r + 1));
    }
    for i in 1..=r {
        edges.push(Edge(0, i));
    }
    Ok((ground, edges))
}

/// The graph whose cycle matroid is the Example-1 matroid: a 4-cycle on
/// edges 1..4 and a triangle 4,5,6 sharing edge 4.
pub fn example1_graph() -> (GroundSet, Vec<Edge>) {
    let ground = GroundSet::numbered(6).expect("six labels");
    let edges = vec![Edge(0, 1), Edge(1, 2), Edge(2, 3), Edge(3, 0), Edge(0, 4), Edge(4, 3)];
    (ground, edges)
}

/// A 4x6 binary matrix whose column matroid is the six-element example.
pub fn example1_matrix() -> IntMatrix {
    IntMatrix::new(
        4,
        6,
        vec![
            1, 0, 0, 1, 0, 1, //
            0, 1, 0, 1, 0, 1, //
            0, 0, 1, 1, 0, 1, //
            0, 0, 0, 0, 1, 1,
        ],
    )
    .expect("4x6")
}
