//! Finite fields GF(q) as explicit addition/multiplication tables.
//!
//! Elements are `0..q`. For `q = p^k` an element `e` stands for the
//! polynomial whose coefficients are the base-`p` digits of `e` (least
//! significant digit = constant term), reduced modulo a fixed irreducible
//! polynomial of degree `k`.

use crate::error::{Error, Result};

/// Irreducible polynomials for the non-prime prime powers up to 49, as
/// coefficient lists (constant term first, monic leading term last).
const IRREDUCIBLE: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),       // x^2 + x + 1
    (2, 3, &[1, 1, 0, 1]),    // x^3 + x + 1
    (2, 4, &[1, 1, 0, 0, 1]), // x^4 + x + 1
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (3, 2, &[1, 0, 1]),    // x^2 + 1
    (3, 3, &[1, 2, 0, 1]), // x^3 + 2x + 1
    (5, 2, &[2, 0, 1]),    // x^2 + 2
    (7, 2, &[1, 0, 1]),    // x^2 + 1
];

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `Some((p, k))` with `n = p^k`, `k >= 1`.
pub fn prime_power(n: u32) -> Option<(u32, u32)> {
    if n < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= n && !n.is_multiple_of(p) {
        p += 1;
    }
    if !n.is_multiple_of(p) {
        // n itself is prime
        return Some((n, 1));
    }
    let mut rest = n;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

/// Prime-power factorisation `v = q_1 * q_2 * ...`, ascending by prime.
pub fn prime_power_factors(mut v: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= v {
        if v.is_multiple_of(p) {
            let mut q = 1;
            while v.is_multiple_of(p) {
                v /= p;
                q *= p;
            }
            out.push(q);
        }
        p += 1;
    }
    if v > 1 {
        out.push(v);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GfTable {
    q: u32,
    p: u32,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

impl GfTable {
    pub fn new(q: u32) -> Result<Self> {
        let (p, k) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        let n = q as usize;
        let mut add = vec![0; n * n];
        let mut mul = vec![0; n * n];
        if k == 1 {
            for a in 0..q {
                for b in 0..q {
                    add[(a * q + b) as usize] = (a + b) % q;
                    mul[(a * q + b) as usize] = ((a as u64 * b as u64) % q as u64) as u32;
                }
            }
        } else {
            let modulus = IRREDUCIBLE
                .iter()
                .find(|(pp, kk, _)| *pp == p && *kk == k)
                .map(|(_, _, m)| *m)
                .ok_or_else(|| Error::UnsupportedLevel {
                    v: q,
                    reason: "no irreducible polynomial tabulated for this prime power (q <= 49 only)"
                        .into(),
                })?;
            let digits = |e: u32| -> Vec<u32> {
                let mut d = vec![0; k as usize];
                let mut e = e;
                for x in d.iter_mut() {
                    *x = e % p;
                    e /= p;
                }
                d
            };
            let undigits = |d: &[u32]| d.iter().rev().fold(0, |acc, &x| acc * p + x);
            for a in 0..q {
                let da = digits(a);
                for b in 0..q {
                    let db = digits(b);
                    let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                    add[(a * q + b) as usize] = undigits(&sum);
                    let mut prod = vec![0u32; 2 * k as usize - 1];
                    for (i, x) in da.iter().enumerate() {
                        for (j, y) in db.iter().enumerate() {
                            prod[i + j] = (prod[i + j] + x * y) % p;
                        }
                    }
                    // reduce modulo the monic irreducible polynomial
                    for deg in (k as usize..prod.len()).rev() {
                        let c = prod[deg];
                        if c != 0 {
                            for (i, m) in modulus.iter().enumerate().take(k as usize) {
                                let idx = deg - k as usize + i;
                                prod[idx] = (prod[idx] + (p - c) * m) % p;
                            }
                            prod[deg] = 0;
                        }
                    }
                    mul[(a * q + b) as usize] = undigits(&prod[..k as usize]);
                }
            }
        }
        let mut neg = vec![0; n];
        let mut inv = vec![0; n];
        for a in 0..q {
            neg[a as usize] = (0..q)
                .find(|&b| add[(a * q + b) as usize] == 0)
                .expect("additive inverse");
            if a != 0 {
                inv[a as usize] = (1..q)
                    .find(|&b| mul[(a * q + b) as usize] == 1)
                    .ok_or_else(|| Error::Precondition(format!("GF({q}) table has no inverse for {a}")))?;
            }
        }
        let table = GfTable { q, p, add, mul, neg, inv };
        table.check_axioms()?;
        Ok(table)
    }

    fn check_axioms(&self) -> Result<()> {
        let q = self.q;
        for a in 0..q {
            for b in 0..q {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return Err(Error::Precondition(format!("GF({q}) not commutative at ({a},{b})")));
                }
                for c in 0..q {
                    let assoc = self.add(self.add(a, b), c) == self.add(a, self.add(b, c))
                        && self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c));
                    let distrib = self.mul(a, self.add(b, c)) == self.add(self.mul(a, b), self.mul(a, c));
                    if !assoc || !distrib {
                        return Err(Error::Precondition(format!("GF({q}) axioms fail at ({a},{b},{c})")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.q + b) as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.q + b) as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        debug_assert!(a != 0);
        self.inv[a as usize]
    }

    /// Map an arbitrary integer onto a field element (`rem_euclid(q)`).
    pub fn element(&self, x: i64) -> u32 {
        x.rem_euclid(self.q as i64) as u32
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_power_detection() {
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
        assert_eq!(prime_power_factors(60), vec![4, 3, 5]);
        assert_eq!(prime_power_factors(49), vec![49]);
    }

    #[test]
    fn all_tabulated_fields_build() {
        for q in [2, 3, 4, 5, 7, 8, 9, 11, 16, 25, 27, 32, 49] {
            let f = GfTable::new(q).unwrap();
            // multiplicative group is cyclic of order q-1: some element has that order
            let has_generator = (1..q).any(|g| {
                let mut x = g;
                let mut ord = 1;
                while x != 1 {
                    x = f.mul(x, g);
                    ord += 1;
                }
                ord == q - 1
            });
            assert!(has_generator, "GF({q})");
        }
    }

    #[test]
    fn gf4_is_not_z4() {
        let f = GfTable::new(4).unwrap();
        assert_eq!(f.add(1, 1), 0);
        assert_eq!(f.mul(2, 2), 3);
        assert!(GfTable::new(6).is_err());
        assert!(GfTable::new(64).is_err());
    }
}
