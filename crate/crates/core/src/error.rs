use std::fmt;

use thiserror::Error;

/// Which end of a permutation a frame check failed on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum End {
    Left,
    Right,
}

impl fmt::Display for End {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            End::Left => f.write_str("left"),
            End::Right => f.write_str("right"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("no permutations given")]
    Empty,
    #[error("permutation {perm}: label {label} occurs more than once")]
    DuplicateElement { perm: usize, label: u64 },
    #[error("permutation {perm} has {found} elements, expected {expected}")]
    LengthMismatch {
        perm: usize,
        expected: usize,
        found: usize,
    },
    #[error("permutation {perm}: label {label} is missing, repeated or foreign to the first permutation")]
    NotAPermutation { perm: usize, label: u64 },
    #[error("permutation {perm}: {end} end is {found}, expected {expected}")]
    BadFrame {
        perm: usize,
        end: End,
        found: i64,
        expected: i64,
    },
    #[error("line {line}: cannot parse {token:?} as a signed label")]
    Parse { line: usize, token: String },
    #[error("b must be at least 1")]
    ZeroB,
    #[error("instance has n = {n}, above the oracle bound {bound}")]
    BoundExceeded { n: usize, bound: usize },
    #[error("internal structure error: {0}")]
    InternalStructure(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
