//! Linear-style code for the (4,2)-combination network: two sources x, y,
//! four middle edges, and one sink for every pair of middle edges.

use matroidal::matroid::{standard, StandardKind};
use matroidal::oa::mols_pair;
use matroidal::voa::verify_voa;
use matroidal::{Error, GroundSet, Result, Voa};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sink {
    /// The two middle edges (1-based λ indices) this sink listens to.
    pub edges: [usize; 2],
    /// `decode[a * v + b]` is the source pair (x, y) when λ_i = a, λ_j = b.
    pub decode: Vec<[u32; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NetcodeScheme {
    pub v: u32,
    /// `encoders[i][x * v + y]` is the symbol λ_{i+1} carries.
    pub encoders: [Vec<u32>; 4],
    pub sinks: Vec<Sink>,
}

impl NetcodeScheme {
    pub fn encode(&self, x: u32, y: u32) -> [u32; 4] {
        let k = (x * self.v + y) as usize;
        [self.encoders[0][k], self.encoders[1][k], self.encoders[2][k], self.encoders[3][k]]
    }

    pub fn decode(&self, sink: usize, received: [u32; 2]) -> [u32; 2] {
        self.sinks[sink].decode[(received[0] * self.v + received[1]) as usize]
    }

    /// Every sink recovers every source pair.
    pub fn verify(&self) -> bool {
        (0..self.v).all(|x| {
            (0..self.v).all(|y| {
                let sent = self.encode(x, y);
                self.sinks.iter().enumerate().all(|(s, sink)| {
                    let [i, j] = sink.edges;
                    self.decode(s, [sent[i - 1], sent[j - 1]]) == [x, y]
                })
            })
        })
    }

    /// The v² × 4 array of edge symbols.
    pub fn array(&self) -> Voa {
        let rows = (0..self.v).flat_map(|x| (0..self.v).map(move |y| (x, y))).map(|(x, y)| self.encode(x, y).to_vec());
        Voa::new(self.v, GroundSet::numbered(4).expect("four labels"), rows.collect()).expect("symbols below v")
    }
}

/// λ₁ = x, λ₂ = y, λ₃ = L₁(x,y), λ₄ = L₂(x,y) for orthogonal Latin squares
/// L₁, L₂ of order v, with decoding tables for all six sinks.
pub fn netcode_combination(v: u32) -> Result<NetcodeScheme> {
    let (l1, l2) = mols_pair(v)?;
    let pairs = (0..v).flat_map(|x| (0..v).map(move |y| (x, y)));
    let encoders = [
        pairs.clone().map(|(x, _)| x).collect(),
        pairs.clone().map(|(_, y)| y).collect(),
        pairs.clone().map(|(x, y)| l1.get(x, y)).collect(),
        pairs.clone().map(|(x, y)| l2.get(x, y)).collect(),
    ];
    let mut scheme = NetcodeScheme { v, encoders, sinks: Vec::new() };
    for i in 1..=4 {
        for j in i + 1..=4 {
            let mut decode = vec![None; (v * v) as usize];
            for (x, y) in pairs.clone() {
                let sent = scheme.encode(x, y);
                let slot = &mut decode[(sent[i - 1] * v + sent[j - 1]) as usize];
                if slot.replace([x, y]).is_some() {
                    return Err(Error::Precondition(format!("sink on edges {i},{j} cannot separate the sources")));
                }
            }
            let decode = decode.into_iter().map(|d| d.expect("v² distinct pairs fill v² slots")).collect();
            scheme.sinks.push(Sink { edges: [i, j], decode });
        }
    }
    let u24 = standard(StandardKind::Uniform { t: 2, n: 4 })?;
    if !scheme.verify() || !verify_voa(&scheme.array(), &u24)?.pass {
        return Err(Error::Precondition(format!("internal: combination code for v = {v} failed to verify")));
    }
    Ok(scheme)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_sinks_decode() {
        for v in [3, 4, 5, 7, 8, 9] {
            let s = netcode_combination(v).unwrap();
            assert_eq!(s.sinks.len(), 6);
            assert!(s.verify());
        }
    }

    #[test]
    fn first_sink_is_the_identity() {
        let s = netcode_combination(3).unwrap();
        assert_eq!(s.sinks[0].edges, [1, 2]);
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(s.decode(0, [a, b]), [a, b]);
            }
        }
    }

    #[test]
    fn levels_without_orthogonal_squares() {
        assert!(netcode_combination(2).is_err());
        assert!(netcode_combination(6).is_err());
    }
}
