//! Arrays transcribed row by row from the printed worked examples.
#![allow(dead_code)]

use matroidal::{GroundSet, Voa};

fn parse(rows: &str) -> Vec<Vec<u32>> {
    rows.split_whitespace().map(|r| r.bytes().map(|b| (b - b'0') as u32).collect()).collect()
}

pub fn array(v: u32, labels: &[&str], rows: &str) -> Voa {
    Voa::new(v, GroundSet::new(labels.iter().copied()).unwrap(), parse(rows)).unwrap()
}

pub fn numbered(v: u32, n: usize, rows: &str) -> Voa {
    Voa::new(v, GroundSet::numbered(n).unwrap(), parse(rows)).unwrap()
}

/// The VOA of the six-element binary matroid, 16 x 6 over Z_2.
pub const BINARY6: &str = "000000 100101 010101 110000 001101 101000 011000 111101 \
                       000011 100110 010110 110011 001110 101011 011011 111110";

/// Its deletion of columns 5 and 6: a VOA(U_{3,4}, 2).
pub const BINARY6_DELETED: &str = "0000 1001 0101 1100 0011 1010 0110 1111";

/// Contraction of column 4 at 0: a VOA(U_{2,3}, 2).
pub const BINARY6_MINOR: &str = "000 110 101 011";

/// An OA(2,4,3).
pub const OA243: &str = "0000 0111 0222 1021 1102 1210 2012 2120 2201";

/// Series example inputs: T1 on 1..4, T2 on 4,5,6, U an OA(2,3,2).
pub const SERIES_T1: &str = BINARY6_DELETED;
pub const SERIES_T2: &str = "000 110 101 011";
pub const SERIES_U: &str = "000 011 101 110";

/// The first eight displayed rows of the series output, and its last row.
pub const SERIES_ROWS: &str = "000000 000110 000101 000011 100100 100010 100001 100111 111111";

/// Displayed rows of the parallel output. The display also ends with
/// 111111, which no matching pair can produce (rows of T2 with a 1 in
/// column 4 are 110 and 101); it is left out.
pub const PARALLEL_ROWS: &str = "000000 000011 100110 100101";

/// The mixed-level array for the polymatroid with h({1}) = 2.
pub const MIXED: &str = "0000 1011 2101 3110";

pub fn binary6() -> Voa {
    numbered(2, 6, BINARY6)
}

pub fn series_t1() -> Voa {
    numbered(2, 4, SERIES_T1)
}

pub fn series_t2() -> Voa {
    array(2, &["4", "5", "6"], SERIES_T2)
}

pub fn series_u() -> Voa {
    numbered(2, 3, SERIES_U)
}

pub fn rows(s: &str) -> Vec<Vec<u32>> {
    parse(s)
}
