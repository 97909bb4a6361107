//! The full verification pipeline for one parameter triple.

use std::fmt;

use crate::complex::{
    build_resolution, enumerated_shifts, verify_betti_counts, verify_complex, verify_homogeneity,
    verify_minimality, Fault, GradedComplex,
};
use crate::error::Result;
use crate::modp::DEFAULT_PRIME;
use crate::oracle::{
    claimed_max_shift, compare_with_oracle, generic_rank_check, graded_betti_oracle, hilbert_check,
    hilbert_min_degree, scan_bound, OracleBettiTable,
};
use crate::report::{CheckOutcome, CheckResult, Violation};
use crate::semigroup::{RepunitParams, RepunitSemigroup};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyConfig {
    pub prime: u64,
    pub trials: usize,
    pub seed: u64,
    /// Extra degrees scanned past the largest claimed shift; `None` means the
    /// largest generator.
    pub bound_margin: Option<i64>,
    pub fault: Option<Fault>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            prime: DEFAULT_PRIME,
            trials: 5,
            seed: 0x5eed,
            bound_margin: None,
            fault: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub params: RepunitParams,
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(CheckOutcome::passed)
    }

    pub fn passed_count(&self) -> usize {
        self.checks.iter().filter(|c| c.passed()).count()
    }

    pub fn check(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// `{"params", "checks": [{"name", "passed", "detail"}], "passed"}`,
    /// compact, newline-terminated.
    pub fn to_json(&self) -> String {
        let checks: Vec<serde_json::Value> = self
            .checks
            .iter()
            .map(|c| {
                serde_json::json!({
                    "name": c.name,
                    "passed": c.passed(),
                    "detail": c.result.as_ref().err().map(ToString::to_string),
                })
            })
            .collect();
        let p = self.params;
        let doc = serde_json::json!({
            "params": {"b": p.b, "n": p.n, "a": p.a},
            "checks": checks,
            "passed": self.all_passed(),
        });
        format!("{doc}\n")
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verify {}", self.params)?;
        for check in &self.checks {
            writeln!(f, "  {check}")?;
        }
        write!(
            f,
            "{}/{} {}",
            self.passed_count(),
            self.checks.len(),
            if self.all_passed() { "PASS" } else { "FAIL" }
        )
    }
}

pub const CHECK_NAMES: [&str; 8] = [
    "complex",
    "homogeneity",
    "minimality",
    "betti-counts",
    "pseudo-frobenius",
    "oracle-betti",
    "hilbert",
    "generic-rank",
];

/// Level sizes and shapes, plus agreement of the basis-element shifts with
/// the directly enumerated shift multisets.
fn check_counts_and_shift_sets(s: &RepunitSemigroup, gc: &GradedComplex) -> CheckResult {
    verify_betti_counts(gc)?;
    for level in gc.levels() {
        let direct = enumerated_shifts(s, level.j).map_err(|e| Violation::Other(e.to_string()))?;
        let mut ours = level.shifts.clone();
        ours.sort_unstable();
        if ours != direct {
            return Err(Violation::Other(format!(
                "level {}: basis shifts {ours:?} differ from enumerated shifts {direct:?}",
                level.j
            )));
        }
    }
    Ok(())
}

/// Formula vs. brute force, Frobenius number, and the top Tor degrees
/// shifted down by `a1 + ... + an`.
fn check_pseudo_frobenius(s: &RepunitSemigroup, oracle: &OracleBettiTable) -> CheckResult {
    let formula = s
        .pf_formula()
        .map_err(|e| Violation::Other(e.to_string()))?;
    let bruteforce = s.pf_bruteforce();
    if formula != bruteforce {
        return Err(Violation::PseudoFrobenius {
            formula,
            bruteforce,
        });
    }
    let max = *formula.last().expect("n >= 2");
    if s.frobenius() != max {
        return Err(Violation::Other(format!(
            "Frobenius number {} differs from max PF {max}",
            s.frobenius()
        )));
    }
    let total: i64 = s.generators().iter().sum();
    let top = s.embedding_dimension() - 1;
    let from_tor: Vec<i64> = oracle.multiset(top).iter().map(|d| d - total).collect();
    if from_tor != formula {
        return Err(Violation::Other(format!(
            "Tor_{top} degrees minus {total} give {from_tor:?}, expected {formula:?}"
        )));
    }
    Ok(())
}

/// Runs all checks. Errors only when the resolution cannot be built or a
/// configuration value is unusable.
pub fn verify(s: &RepunitSemigroup, config: &VerifyConfig) -> Result<VerifyReport> {
    let mut gc = build_resolution(s)?;
    if let Some(fault) = config.fault {
        gc.inject_fault(fault);
    }
    let claimed_max = claimed_max_shift(s)?;
    let bound = scan_bound(s, config.bound_margin)?.max(gc.max_shift());
    let oracle = graded_betti_oracle(s, config.prime, bound)?;
    let t_max = hilbert_min_degree(s, &gc);

    let results: [CheckResult; 8] = [
        verify_complex(&gc),
        verify_homogeneity(&gc),
        verify_minimality(&gc),
        check_counts_and_shift_sets(s, &gc),
        check_pseudo_frobenius(s, &oracle),
        compare_with_oracle(&gc, &oracle, claimed_max),
        hilbert_check(s, &gc, t_max)?,
        generic_rank_check(&gc, config.prime, config.trials, config.seed)?,
    ];
    Ok(VerifyReport {
        params: s.params(),
        checks: CHECK_NAMES
            .iter()
            .zip(results)
            .map(|(&name, result)| CheckOutcome { name, result })
            .collect(),
    })
}

/// Parameter triples with `b in bs`, `n in ns`, `a in as_` that pass the
/// coprimality filter.
pub fn parameter_grid(bs: &[i64], ns: &[i64], as_: &[i64]) -> Vec<RepunitParams> {
    let mut out = Vec::new();
    for &b in bs {
        for &n in ns {
            for &a in as_ {
                let p = RepunitParams::new(b, n, a);
                if p.validate().is_ok() {
                    out.push(p);
                }
            }
        }
    }
    out
}

/// `b in {2,3}`, `n in {2..5}`, `a in {1..8}`, coprime-filtered.
pub fn default_grid() -> Vec<RepunitParams> {
    parameter_grid(&[2, 3], &[2, 3, 4, 5], &(1..=8).collect::<Vec<_>>())
}
