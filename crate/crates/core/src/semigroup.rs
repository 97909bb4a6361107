//! Generalized repunit numerical semigroups.
//!
//! For a base `b >= 2`, embedding dimension `n >= 2` and step `a >= 1` coprime
//! to `a1 = 1 + b + ... + b^(n-1)`, the semigroup is generated by
//! `a1 < a2 < ... < an` with `a_i - a_(i-1) = a * b^(i-2)`.
//!
//! Membership is answered from the Apéry set with respect to `a1`, which is
//! computed once at construction by a shortest-path sweep over the residue
//! classes modulo `a1`.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

/// Largest `a1` for which the residue table is materialized.
pub const MAX_MULTIPLICITY: i64 = 1 << 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RepunitParams {
    pub b: i64,
    pub n: i64,
    pub a: i64,
}

impl RepunitParams {
    pub fn new(b: i64, n: i64, a: i64) -> Self {
        Self { b, n, a }
    }

    /// Checks the parameter invariants and returns `a1` on success.
    pub fn validate(&self) -> Result<i64> {
        if self.b < 2 {
            return Err(Error::BaseTooSmall(self.b));
        }
        if self.n < 2 {
            return Err(Error::DimensionTooSmall(self.n));
        }
        if self.a < 1 {
            return Err(Error::StepTooSmall(self.a));
        }
        let a1 = geometric_sum(self.b, self.n).ok_or(self.overflow())?;
        let gcd = self.a.gcd(&a1);
        if gcd != 1 {
            return Err(Error::NotCoprime { a: self.a, a1, gcd });
        }
        Ok(a1)
    }

    /// Non-fatal remarks about the parameters.
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.a == 1 {
            out.push(
                "a = 1 lies outside the a > 1 range used for the Eagon-Northcott construction; \
                 results are accepted only if the verification oracles agree"
                    .to_string(),
            );
        }
        out
    }

    fn overflow(&self) -> Error {
        Error::Overflow {
            b: self.b,
            n: self.n,
            a: self.a,
        }
    }
}

impl fmt::Display for RepunitParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(b={}, n={}, a={})", self.b, self.n, self.a)
    }
}

/// `1 + b + ... + b^(n-1)` with overflow detection.
fn geometric_sum(b: i64, n: i64) -> Option<i64> {
    let mut sum: i64 = 0;
    let mut power: i64 = 1;
    for k in 0..n {
        sum = sum.checked_add(power)?;
        if k + 1 < n {
            power = power.checked_mul(b)?;
        }
    }
    Some(sum)
}

/// A constructed generalized repunit semigroup. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepunitSemigroup {
    params: RepunitParams,
    generators: Vec<i64>,
    extended: i64,
    c: i64,
    /// Least element of each residue class modulo `a1`.
    apery: Vec<i64>,
}

impl RepunitSemigroup {
    pub fn new(params: RepunitParams) -> Result<Self> {
        let a1 = params.validate()?;
        let overflow = || params.overflow();
        let n = params.n as usize;

        let mut generators = Vec::with_capacity(n);
        generators.push(a1);
        // a_i = a_(i-1) + a * b^(i-2)
        let mut power: i64 = 1;
        for i in 1..n {
            let step = params.a.checked_mul(power).ok_or_else(overflow)?;
            let next = generators[i - 1].checked_add(step).ok_or_else(overflow)?;
            generators.push(next);
            if i + 1 < n {
                power = power.checked_mul(params.b).ok_or_else(overflow)?;
            }
        }
        let extended = (params.a + 1).checked_mul(a1).ok_or_else(overflow)?;
        let c = (0..n)
            .try_fold(1i64, |acc, _| acc.checked_mul(params.b))
            .and_then(|p| p.checked_sub(1 + params.a))
            .ok_or_else(overflow)?;
        // Degree sums of up to n+1 generators scaled by n must stay representable.
        extended
            .checked_mul(params.n + 1)
            .and_then(|v| v.checked_mul(params.n))
            .ok_or_else(overflow)?;

        if a1 > MAX_MULTIPLICITY {
            return Err(Error::TooLarge {
                a1,
                limit: MAX_MULTIPLICITY,
            });
        }
        let apery = residue_minima(a1, &generators);
        Ok(Self {
            params,
            generators,
            extended,
            c,
            apery,
        })
    }

    pub fn params(&self) -> RepunitParams {
        self.params
    }

    /// Embedding dimension `n`.
    pub fn embedding_dimension(&self) -> usize {
        self.generators.len()
    }

    /// Minimal generators `a1 < ... < an`.
    pub fn generators(&self) -> &[i64] {
        &self.generators
    }

    pub fn multiplicity(&self) -> i64 {
        self.generators[0]
    }

    /// `a_(n+1) = (a + 1) * a1`.
    pub fn extended(&self) -> i64 {
        self.extended
    }

    /// `c = b^n - 1 - a`; may be negative.
    pub fn c(&self) -> i64 {
        self.c
    }

    /// `a_i` for `i` in `1..=n+1` (1-based, `a_(n+1)` is the extended generator).
    pub fn a(&self, i: usize) -> i64 {
        assert!(
            (1..=self.generators.len() + 1).contains(&i),
            "generator index {i} out of range"
        );
        if i == self.generators.len() + 1 {
            self.extended
        } else {
            self.generators[i - 1]
        }
    }

    pub fn contains(&self, s: i64) -> Result<bool> {
        if s < 0 {
            return Err(Error::NegativeElement(s));
        }
        let a1 = self.multiplicity();
        Ok(s >= self.apery[s.rem_euclid(a1) as usize])
    }

    pub(crate) fn contains_unchecked(&self, s: i64) -> bool {
        s >= 0 && s >= self.apery[s.rem_euclid(self.multiplicity()) as usize]
    }

    /// Apéry set with respect to `m`, indexed by residue modulo `m`.
    pub fn apery_set(&self, m: i64) -> Result<Vec<i64>> {
        if m <= 0 || !self.contains(m)? {
            return Err(Error::NotInSemigroup(m));
        }
        if m == self.multiplicity() {
            return Ok(self.apery.clone());
        }
        Ok(residue_minima(m, &self.generators))
    }

    /// Largest integer not in the semigroup.
    pub fn frobenius(&self) -> i64 {
        self.apery.iter().copied().max().unwrap_or(0) - self.multiplicity()
    }

    pub fn gaps(&self) -> Vec<i64> {
        (0..=self.frobenius())
            .filter(|&s| !self.contains_unchecked(s))
            .collect()
    }

    /// Pseudo-Frobenius elements found directly from the gap list: gaps `x`
    /// such that `x + a_i` is in the semigroup for every generator.
    pub fn pf_bruteforce(&self) -> Vec<i64> {
        self.gaps()
            .into_iter()
            .filter(|&x| {
                self.generators
                    .iter()
                    .all(|&g| self.contains_unchecked(x + g))
            })
            .collect()
    }

    /// Pseudo-Frobenius elements from the closed form `k*c + a*a1`,
    /// `k = 1..n-1`, sorted ascending. Fails if any value is not a positive
    /// gap.
    pub fn pf_formula(&self) -> Result<Vec<i64>> {
        let base = self.params.a * self.multiplicity();
        let n = self.embedding_dimension() as i64;
        let mut out: Vec<i64> = (1..n).map(|k| k * self.c + base).collect();
        out.sort_unstable();
        for &x in &out {
            if x <= 0 {
                return Err(Error::Invariant(format!(
                    "pseudo-Frobenius candidate {x} is not positive for {}",
                    self.params
                )));
            }
            if self.contains_unchecked(x) {
                return Err(Error::Invariant(format!(
                    "pseudo-Frobenius candidate {x} lies in the semigroup for {}",
                    self.params
                )));
            }
        }
        Ok(out)
    }

    /// Checks `b * a_i = c + a_(i+1)` for `i = 1..n`.
    pub fn check_step_identity(&self) -> Result<()> {
        let b = self.params.b;
        for i in 1..=self.embedding_dimension() {
            let lhs = b * self.a(i);
            let rhs = self.c + self.a(i + 1);
            if lhs != rhs {
                return Err(Error::Invariant(format!(
                    "b*a_{i} = {lhs} but c + a_{} = {rhs}",
                    i + 1
                )));
            }
        }
        Ok(())
    }
}

/// Least combination of `generators` in each residue class modulo `m`
/// (Dijkstra on the residue graph).
fn residue_minima(m: i64, generators: &[i64]) -> Vec<i64> {
    let size = m as usize;
    let mut dist = vec![i64::MAX; size];
    let mut heap = BinaryHeap::new();
    dist[0] = 0;
    heap.push(Reverse((0i64, 0usize)));
    while let Some(Reverse((d, r))) = heap.pop() {
        if d > dist[r] {
            continue;
        }
        for &g in generators {
            let nd = d + g;
            let nr = (r + (g % m) as usize) % size;
            if nd < dist[nr] {
                dist[nr] = nd;
                heap.push(Reverse((nd, nr)));
            }
        }
    }
    dist
}
