use std::fmt;

use thiserror::Error;

/// Witness of a failed verification check.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("delta_{j_left} * delta_{j_right} has nonzero entry ({row}, {col}) = {entry}")]
    NonzeroComposition {
        j_left: usize,
        j_right: usize,
        row: usize,
        col: usize,
        entry: String,
    },
    #[error(
        "delta_{j} entry ({row}, {col}) = {entry} is not homogeneous: degrees {first} and {second}"
    )]
    InhomogeneousEntry {
        j: usize,
        row: usize,
        col: usize,
        entry: String,
        first: i64,
        second: i64,
    },
    #[error("delta_{j} entry ({row}, {col}) has degree {found}, shift difference is {expected}")]
    DegreeMismatch {
        j: usize,
        row: usize,
        col: usize,
        expected: i64,
        found: i64,
    },
    #[error("delta_{j} entry ({row}, {col}) = {entry} has a nonzero constant term")]
    UnitEntry {
        j: usize,
        row: usize,
        col: usize,
        entry: String,
    },
    #[error("level {j}: expected {expected} basis elements, found {found}")]
    CountMismatch {
        j: usize,
        expected: usize,
        found: usize,
    },
    #[error("level {j}: shape {rows}x{cols}, expected {expected_rows}x{expected_cols}")]
    ShapeMismatch {
        j: usize,
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },
    #[error("pseudo-Frobenius sets differ: formula {formula:?}, brute force {bruteforce:?}")]
    PseudoFrobenius {
        formula: Vec<i64>,
        bruteforce: Vec<i64>,
    },
    #[error("level {j}: resolution shifts {claimed:?} differ from Tor degrees {oracle:?}")]
    BettiMismatch {
        j: usize,
        claimed: Vec<i64>,
        oracle: Vec<i64>,
    },
    #[error(
        "Tor_{j} is nonzero in degree {degree}, above the largest claimed shift {claimed_max}"
    )]
    TorAboveBound {
        j: usize,
        degree: i64,
        claimed_max: i64,
    },
    #[error("Hilbert series mismatch at degree {degree}: resolution gives {from_resolution}, semigroup gives {from_semigroup}")]
    HilbertMismatch {
        degree: i64,
        from_resolution: String,
        from_semigroup: i64,
    },
    #[error(
        "rank condition fails at level {j}: r_j + r_(j+1) = {left} + {right} != beta_j = {betti}"
    )]
    RankCondition {
        j: usize,
        left: usize,
        right: usize,
        betti: usize,
    },
    #[error("{0}")]
    Other(String),
}

pub type CheckResult = Result<(), Violation>;

/// Outcome of one named check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub result: CheckResult,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.result.is_ok()
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.result {
            Ok(()) => write!(f, "PASS {}", self.name),
            Err(v) => write!(f, "FAIL {}: {v}", self.name),
        }
    }
}
