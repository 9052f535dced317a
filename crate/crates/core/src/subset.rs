//! Bitmask helpers. A subset of an `n`-element ground set is a `u32` whose
//! bit `i` marks element `i`.

pub type Subset = u32;

#[inline]
pub fn size(s: Subset) -> u32 {
    s.count_ones()
}

#[inline]
pub fn full(n: usize) -> Subset {
    if n == 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

#[inline]
pub fn contains(s: Subset, i: usize) -> bool {
    s >> i & 1 == 1
}

/// Element indices of `s`, ascending.
pub fn elements(s: Subset) -> impl Iterator<Item = usize> {
    let mut rest = s;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(i)
        }
    })
}

/// All submasks of `s`, including `0` and `s`, in decreasing numeric order.
pub fn submasks(s: Subset) -> impl Iterator<Item = Subset> {
    let mut next = Some(s);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 { None } else { Some((cur - 1) & s) };
        Some(cur)
    })
}

/// All `k`-subsets of an `n`-set in increasing numeric order (Gosper's hack).
pub fn k_subsets(n: usize, k: usize) -> impl Iterator<Item = Subset> {
    let limit: u64 = 1u64 << n;
    let mut cur: Option<u64> = if k > n {
        None
    } else {
        Some((1u64 << k) - 1)
    };
    std::iter::from_fn(move || {
        let c = cur?;
        if c >= limit {
            return None;
        }
        cur = if c == 0 {
            None
        } else {
            let low = c & c.wrapping_neg();
            let ripple = c + low;
            Some((((ripple ^ c) >> 2) / low) | ripple)
        };
        Some(c as Subset)
    })
}

/// Spread the low bits of `packed` onto the set bits of `positions`
/// (bit `j` of `packed` lands on the `j`-th set bit of `positions`).
#[inline]
pub fn deposit(packed: Subset, positions: Subset) -> Subset {
    let mut out = 0;
    let mut pos = positions;
    let mut bits = packed;
    while bits != 0 && pos != 0 {
        let low = pos & pos.wrapping_neg();
        if bits & 1 == 1 {
            out |= low;
        }
        bits >>= 1;
        pos &= pos - 1;
    }
    out
}

/// Inverse of [`deposit`]: gather the bits of `s` that sit on `positions`.
#[inline]
pub fn extract(s: Subset, positions: Subset) -> Subset {
    let mut out = 0;
    let mut pos = positions;
    let mut j = 0;
    while pos != 0 {
        let low = pos & pos.wrapping_neg();
        if s & low != 0 {
            out |= 1 << j;
        }
        j += 1;
        pos &= pos - 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_subsets_counts() {
        assert_eq!(k_subsets(6, 3).count(), 20);
        assert_eq!(k_subsets(5, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(k_subsets(3, 4).count(), 0);
        assert!(k_subsets(6, 2).all(|s| size(s) == 2 && s < 64));
    }

    #[test]
    fn deposit_extract_inverse() {
        let pos = 0b1011_0110;
        for packed in 0..16 {
            let s = deposit(packed, pos);
            assert_eq!(s & !pos, 0);
            assert_eq!(extract(s, pos), packed);
        }
    }

    #[test]
    fn submask_enumeration() {
        let subs: Vec<_> = submasks(0b101).collect();
        assert_eq!(subs, vec![0b101, 0b100, 0b001, 0]);
        assert_eq!(elements(0b10110).collect::<Vec<_>>(), vec![1, 2, 4]);
    }
}
