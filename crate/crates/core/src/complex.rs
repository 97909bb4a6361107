//! The Eagon–Northcott resolution of the repunit semigroup algebra.
//!
//! The toric ideal is generated by the 2x2 minors of
//!
//! ```text
//!     X = ( x1^b  x2^b  ...  xn^b      )
//!         ( x2    x3    ...  x1^(a+1)  )
//! ```
//!
//! and level `j` of the resolution (`j = 1..n-1`) has basis
//! `e_I (x) y1^u1 y2^u2` with `|I| = j+1` and `u1 + u2 = j-1`. The basis
//! element gets the S-degree shift `(u1 + 1) c + sum_{i in I} a_(i+1)`.
//!
//! Bases are ordered by subset (lexicographic, ascending), then by `u1`
//! descending. Indices are 0-based throughout the API.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::poly::{PolyMatrix, SparsePolynomial};
use crate::report::{CheckResult, Violation};
use crate::semigroup::RepunitSemigroup;

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// `beta_j = j * C(n, j+1)`.
pub fn betti_number(n: usize, j: usize) -> Result<usize> {
    check_level(n, j)?;
    Ok(j * binomial(n, j + 1))
}

fn check_level(n: usize, j: usize) -> Result<()> {
    if j == 0 || j + 1 > n {
        return Err(Error::LevelOutOfRange {
            j,
            max: n.saturating_sub(1),
        });
    }
    Ok(())
}

/// A 2 x n matrix of polynomials whose maximal minors generate the ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixX {
    rows: [Vec<SparsePolynomial>; 2],
}

impl MatrixX {
    pub fn new(top: Vec<SparsePolynomial>, bottom: Vec<SparsePolynomial>) -> Self {
        assert_eq!(top.len(), bottom.len(), "rows must have equal length");
        assert!(top.len() >= 2, "need at least two columns");
        Self {
            rows: [top, bottom],
        }
    }

    /// Row 1 is `(x1^b, ..., xn^b)`, row 2 is `(x2, ..., xn, x1^(a+1))`.
    pub fn repunit(s: &RepunitSemigroup) -> Self {
        let n = s.embedding_dimension();
        let p = s.params();
        let b = u32::try_from(p.b).expect("base fits in u32");
        let a1 = u32::try_from(p.a + 1).expect("step fits in u32");
        let top = (0..n).map(|i| SparsePolynomial::var_pow(n, i, b)).collect();
        let bottom = (0..n)
            .map(|i| {
                if i + 1 < n {
                    SparsePolynomial::var_pow(n, i + 1, 1)
                } else {
                    SparsePolynomial::var_pow(n, 0, a1)
                }
            })
            .collect();
        Self::new(top, bottom)
    }

    pub fn ncols(&self) -> usize {
        self.rows[0].len()
    }

    pub fn nvars(&self) -> usize {
        self.rows[0][0].nvars()
    }

    /// Entry `x_{row+1, col+1}`; `row` is 0 or 1.
    pub fn entry(&self, row: usize, col: usize) -> &SparsePolynomial {
        &self.rows[row][col]
    }

    /// `x_{1i} x_{2k} - x_{2i} x_{1k}`.
    pub fn minor(&self, i: usize, k: usize) -> SparsePolynomial {
        let lhs = self.entry(0, i) * self.entry(1, k);
        let rhs = self.entry(1, i) * self.entry(0, k);
        &lhs - &rhs
    }
}

/// Basis vector `e_{i_1} ^ ... ^ e_{i_(j+1)} (x) y1^u1 y2^u2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EnBasisElement {
    /// Strictly increasing, 0-based.
    pub indices: Vec<usize>,
    pub u1: usize,
    pub u2: usize,
}

impl EnBasisElement {
    pub fn level(&self) -> usize {
        self.indices.len() - 1
    }

    /// `(u1 + 1) c + sum a_(i+1)` over the (1-based) indices `i`.
    pub fn shift(&self, s: &RepunitSemigroup) -> i64 {
        let sum: i64 = self.indices.iter().map(|&i| s.a(i + 2)).sum();
        (self.u1 as i64 + 1) * s.c() + sum
    }
}

impl fmt::Display for EnBasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wedge = self.indices.iter().map(|i| format!("e{}", i + 1)).join("^");
        write!(f, "{wedge}*y1^{}*y2^{}", self.u1, self.u2)
    }
}

/// Ordered basis of level `j` for `n` variables.
pub fn basis(n: usize, j: usize) -> Result<Vec<EnBasisElement>> {
    check_level(n, j)?;
    let mut out = Vec::with_capacity(betti_number(n, j)?);
    for indices in (0..n).combinations(j + 1) {
        for u1 in (0..j).rev() {
            out.push(EnBasisElement {
                indices: indices.clone(),
                u1,
                u2: j - 1 - u1,
            });
        }
    }
    Ok(out)
}

fn positive_shifts(s: &RepunitSemigroup, elements: &[EnBasisElement]) -> Result<Vec<i64>> {
    elements
        .iter()
        .map(|e| {
            let d = e.shift(s);
            if d > 0 {
                Ok(d)
            } else {
                Err(Error::Invariant(format!(
                    "basis element {e} has non-positive shift {d} for {}",
                    s.params()
                )))
            }
        })
        .collect()
}

/// Shifts of the level-`j` basis, in basis order.
pub fn shifts(s: &RepunitSemigroup, j: usize) -> Result<Vec<i64>> {
    positive_shifts(s, &basis(s.embedding_dimension(), j)?)
}

/// The multiset `{k c + a_(i_1) + ... + a_(i_(j+1)) : 1 <= k <= j,
/// 1 < i_1 < ... < i_(j+1) <= n+1}` enumerated directly, sorted.
pub fn enumerated_shifts(s: &RepunitSemigroup, j: usize) -> Result<Vec<i64>> {
    let n = s.embedding_dimension();
    check_level(n, j)?;
    let mut out = Vec::new();
    for subset in (2..=n + 1).combinations(j + 1) {
        let sum: i64 = subset.iter().map(|&i| s.a(i)).sum();
        for k in 1..=j as i64 {
            out.push(k * s.c() + sum);
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// First-syzygy degrees in the form `a_(n-i+1) + b a_(n-j)`, `1 <= i <= n-1`,
/// `0 <= j <= i-1`, sorted.
pub fn first_syzygy_cross_form(s: &RepunitSemigroup) -> Vec<i64> {
    let n = s.embedding_dimension();
    let b = s.params().b;
    let mut out = Vec::new();
    for i in 1..n {
        for j in 0..i {
            out.push(s.a(n - i + 1) + b * s.a(n - j));
        }
    }
    out.sort_unstable();
    out
}

/// Level `n-2` degrees in the form `k c + sum_{i=2, i != j+1}^{n+1} a_i`,
/// `1 <= k <= n-2`, `1 <= j <= n`, sorted. Empty for `n = 2`.
pub fn second_to_last_cross_form(s: &RepunitSemigroup) -> Vec<i64> {
    let n = s.embedding_dimension();
    let total: i64 = (2..=n + 1).map(|i| s.a(i)).sum();
    let mut out = Vec::new();
    for k in 1..n.saturating_sub(1) as i64 {
        for j in 1..=n {
            out.push(k * s.c() + total - s.a(j + 1));
        }
    }
    out.sort_unstable();
    out
}

/// `1 x C(n,2)` matrix of the minors, one column per pair `i < k`.
pub fn d1_matrix(x: &MatrixX) -> PolyMatrix {
    let n = x.ncols();
    let pairs: Vec<_> = (0..n).tuple_combinations::<(usize, usize)>().collect();
    let mut m = PolyMatrix::zeros(1, pairs.len(), x.nvars());
    for (col, &(i, k)) in pairs.iter().enumerate() {
        m.set(0, col, x.minor(i, k));
    }
    m
}

/// Matrix of `d_j : level j -> level j-1` for `2 <= j <= n-1`.
pub fn dj_matrix(x: &MatrixX, j: usize) -> Result<PolyMatrix> {
    let n = x.ncols();
    check_level(n, j)?;
    if j < 2 {
        return Err(Error::LevelOutOfRange { j, max: n - 1 });
    }
    let source = basis(n, j)?;
    let target = basis(n, j - 1)?;
    let row_of: HashMap<(&[usize], usize), usize> = target
        .iter()
        .enumerate()
        .map(|(r, e)| ((e.indices.as_slice(), e.u1), r))
        .collect();

    let mut m = PolyMatrix::zeros(target.len(), source.len(), x.nvars());
    for (col, e) in source.iter().enumerate() {
        for (k, exponent) in [(0usize, e.u1), (1usize, e.u2)] {
            if exponent == 0 {
                continue;
            }
            // dividing y1^u1 y2^u2 by y_k
            let target_u1 = if k == 0 { e.u1 - 1 } else { e.u1 };
            for (l, &il) in e.indices.iter().enumerate() {
                let rest: Vec<usize> = e.indices.iter().copied().filter(|&i| i != il).collect();
                let row = row_of[&(rest.as_slice(), target_u1)];
                let entry = x.entry(k, il);
                if l % 2 == 0 {
                    m.add_to(row, col, entry);
                } else {
                    m.add_to(row, col, &-entry);
                }
            }
        }
    }
    Ok(m)
}

/// The minors generating the toric ideal, in `d1_matrix` column order. Each
/// is checked to be a binomial `x^u - x^v` with equal S-degrees on both sides.
pub fn toric_minors(s: &RepunitSemigroup) -> Result<Vec<SparsePolynomial>> {
    let minors: Vec<SparsePolynomial> = d1_matrix(&MatrixX::repunit(s))
        .entries()
        .map(|(_, _, p)| p.clone())
        .collect();
    let expected = binomial(s.embedding_dimension(), 2);
    if minors.len() != expected {
        return Err(Error::Invariant(format!(
            "{} nonzero minors, expected {expected}",
            minors.len()
        )));
    }
    for p in &minors {
        let coeffs: Vec<&BigInt> = p.terms().map(|(_, c)| c).collect();
        let unit_pair = coeffs.len() == 2
            && coeffs.iter().any(|c| c.is_one())
            && coeffs.iter().any(|c| (-*c).is_one());
        if !unit_pair {
            return Err(Error::Invariant(format!("minor {p} is not a binomial")));
        }
        if let Err(e) = p.sdegree(s.generators()) {
            return Err(Error::Invariant(format!("minor {p}: {e}")));
        }
    }
    Ok(minors)
}

/// One homological level `j` of the resolution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Level {
    pub j: usize,
    pub basis: Vec<EnBasisElement>,
    /// S-degree of each basis element, in basis order.
    pub shifts: Vec<i64>,
    /// `delta_j`, of shape `beta_(j-1) x beta_j` (with `beta_0 = 1`).
    pub differential: PolyMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedComplex {
    weights: Vec<i64>,
    levels: Vec<Level>,
}

impl GradedComplex {
    pub fn from_levels(weights: Vec<i64>, levels: Vec<Level>) -> Self {
        Self { weights, levels }
    }

    /// Variable degrees `a1..an`.
    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn levels_mut(&mut self) -> &mut [Level] {
        &mut self.levels
    }

    pub fn length(&self) -> usize {
        self.levels.len()
    }

    /// Level `j`, 1-based.
    pub fn level(&self, j: usize) -> Option<&Level> {
        j.checked_sub(1).and_then(|i| self.levels.get(i))
    }

    pub fn betti_vector(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.differential.cols()).collect()
    }

    /// Shift of basis element `index` at level `j`; level 0 has the single
    /// shift 0.
    pub fn shift(&self, j: usize, index: usize) -> i64 {
        if j == 0 {
            0
        } else {
            self.levels[j - 1].shifts[index]
        }
    }

    pub fn max_shift(&self) -> i64 {
        self.levels
            .iter()
            .flat_map(|l| l.shifts.iter().copied())
            .max()
            .unwrap_or(0)
    }

    pub fn betti_table(&self) -> BettiTable {
        BettiTable::from_levels(self.levels.iter().map(|l| (l.j, l.shifts.iter().copied())))
    }

    /// Applies a deliberate fault, for exercising the verifiers.
    pub fn inject_fault(&mut self, fault: Fault) {
        let nvars = self.nvars();
        let last = self.levels.len() - 1;
        match fault {
            Fault::SignFlip => {
                let level = &mut self.levels[1.min(last)];
                let (r, c, p) = level
                    .differential
                    .entries()
                    .next()
                    .map(|(r, c, p)| (r, c, -p))
                    .expect("differential has entries");
                level.differential.set(r, c, p);
            }
            Fault::ConstantAdd => {
                let level = &mut self.levels[last];
                level
                    .differential
                    .add_to(0, 0, &SparsePolynomial::one(nvars));
            }
            Fault::ShiftPerturb => {
                self.levels[0].shifts[0] += 1;
            }
            Fault::ZeroLevel => {
                let level = &mut self.levels[1.min(last)];
                let (rows, cols) = (level.differential.rows(), level.differential.cols());
                level.differential = PolyMatrix::zeros(rows, cols, nvars);
            }
        }
    }
}

/// Single-point corruptions of a built complex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Fault {
    /// Negate one entry of `delta_2` (of `delta_1` when `n = 2`).
    SignFlip,
    /// Add the constant 1 to entry (0, 0) of the last differential.
    ConstantAdd,
    /// Increase the first level-1 shift by one.
    ShiftPerturb,
    /// Replace `delta_2` (or `delta_1` when `n = 2`) by the zero matrix.
    ZeroLevel,
}

impl std::str::FromStr for Fault {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sign" => Ok(Fault::SignFlip),
            "constant" => Ok(Fault::ConstantAdd),
            "shift" => Ok(Fault::ShiftPerturb),
            "zero" => Ok(Fault::ZeroLevel),
            other => Err(Error::Parse(format!("fault kind {other:?}"))),
        }
    }
}

/// Builds bases, shifts and all differentials `delta_1 .. delta_(n-1)`.
pub fn build_resolution(s: &RepunitSemigroup) -> Result<GradedComplex> {
    let n = s.embedding_dimension();
    let x = MatrixX::repunit(s);
    let levels = (1..n)
        .into_par_iter()
        .map(|j| {
            let basis = basis(n, j)?;
            let shifts = positive_shifts(s, &basis)?;
            let differential = if j == 1 {
                d1_matrix(&x)
            } else {
                dj_matrix(&x, j)?
            };
            Ok(Level {
                j,
                basis,
                shifts,
                differential,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GradedComplex {
        weights: s.generators().to_vec(),
        levels,
    })
}

/// Multisets of S-degrees per homological level.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BettiTable {
    levels: BTreeMap<usize, Vec<i64>>,
}

impl BettiTable {
    pub fn from_levels<I, D>(levels: I) -> Self
    where
        I: IntoIterator<Item = (usize, D)>,
        D: IntoIterator<Item = i64>,
    {
        let mut out = BTreeMap::new();
        for (j, degrees) in levels {
            let mut v: Vec<i64> = degrees.into_iter().collect();
            v.sort_unstable();
            out.insert(j, v);
        }
        Self { levels: out }
    }

    /// Sorted multiset at level `j` (empty if absent).
    pub fn level(&self, j: usize) -> &[i64] {
        self.levels.get(&j).map_or(&[], Vec::as_slice)
    }

    pub fn levels(&self) -> impl Iterator<Item = (usize, &[i64])> {
        self.levels.iter().map(|(&j, v)| (j, v.as_slice()))
    }

    pub fn total(&self, j: usize) -> usize {
        self.level(j).len()
    }
}

/// `delta_(j-1) * delta_j == 0` for every consecutive pair.
pub fn verify_complex(gc: &GradedComplex) -> CheckResult {
    for pair in gc.levels.windows(2) {
        let product = pair[0]
            .differential
            .matmul(&pair[1].differential)
            .map_err(|e| Violation::Other(e.to_string()))?;
        let witness = product
            .entries()
            .next()
            .map(|(row, col, entry)| (row, col, entry.to_string()));
        if let Some((row, col, entry)) = witness {
            return Err(Violation::NonzeroComposition {
                j_left: pair[0].j,
                j_right: pair[1].j,
                row,
                col,
                entry,
            });
        }
    }
    Ok(())
}

/// Every nonzero entry of `delta_j` at `(r, q)` is homogeneous of degree
/// `shift_j(q) - shift_(j-1)(r)`.
pub fn verify_homogeneity(gc: &GradedComplex) -> CheckResult {
    for level in &gc.levels {
        let j = level.j;
        for (row, col, entry) in level.differential.entries() {
            let found = match entry.sdegree(gc.weights()) {
                Ok(Some(d)) => d,
                Ok(None) => continue,
                Err(Error::NotHomogeneous(first, second)) => {
                    return Err(Violation::InhomogeneousEntry {
                        j,
                        row,
                        col,
                        entry: entry.to_string(),
                        first,
                        second,
                    })
                }
                Err(e) => return Err(Violation::Other(e.to_string())),
            };
            let expected = gc.shift(j, col) - gc.shift(j - 1, row);
            if found != expected {
                return Err(Violation::DegreeMismatch {
                    j,
                    row,
                    col,
                    expected,
                    found,
                });
            }
        }
    }
    Ok(())
}

/// No differential entry has a nonzero constant term.
pub fn verify_minimality(gc: &GradedComplex) -> CheckResult {
    for level in &gc.levels {
        for (row, col, entry) in level.differential.entries() {
            if !entry.constant_term().is_zero() {
                return Err(Violation::UnitEntry {
                    j: level.j,
                    row,
                    col,
                    entry: entry.to_string(),
                });
            }
        }
    }
    Ok(())
}

/// Level sizes and matrix shapes agree with `beta_j = j C(n, j+1)`.
pub fn verify_betti_counts(gc: &GradedComplex) -> CheckResult {
    let n = gc.nvars();
    let mut prev = 1;
    for level in &gc.levels {
        let j = level.j;
        let expected = betti_number(n, j).map_err(|e| Violation::Other(e.to_string()))?;
        if level.shifts.len() != expected || level.basis.len() != expected {
            return Err(Violation::CountMismatch {
                j,
                expected,
                found: level.shifts.len(),
            });
        }
        let d = &level.differential;
        if d.rows() != prev || d.cols() != expected {
            return Err(Violation::ShapeMismatch {
                j,
                rows: d.rows(),
                cols: d.cols(),
                expected_rows: prev,
                expected_cols: expected,
            });
        }
        prev = expected;
    }
    if gc.levels.len() + 1 != n {
        return Err(Violation::Other(format!(
            "resolution has {} levels, expected {}",
            gc.levels.len(),
            n - 1
        )));
    }
    Ok(())
}

/// Whether two chains of matrices agree after reordering each free module's
/// basis and flipping basis signs. Module 0 (the codomain of the first
/// matrix) may only change sign. Exhaustive search; meant for small modules.
pub fn equivalent_up_to_signed_permutation(ours: &[PolyMatrix], theirs: &[PolyMatrix]) -> bool {
    if ours.len() != theirs.len() {
        return false;
    }
    if ours
        .iter()
        .zip(theirs)
        .any(|(a, b)| a.rows() != b.rows() || a.cols() != b.cols())
    {
        return false;
    }
    let Some(first) = ours.first() else {
        return true;
    };
    let identity: Vec<usize> = (0..first.rows()).collect();
    [1i8, -1].iter().any(|&sign| {
        search_signed_permutations(ours, theirs, 0, &identity, &vec![sign; first.rows()])
    })
}

fn search_signed_permutations(
    ours: &[PolyMatrix],
    theirs: &[PolyMatrix],
    level: usize,
    row_perm: &[usize],
    row_signs: &[i8],
) -> bool {
    let Some((a, b)) = ours.get(level).zip(theirs.get(level)) else {
        return true;
    };
    for col_perm in (0..a.cols()).permutations(a.cols()) {
        let Some(col_signs) = match_columns(a, b, row_perm, row_signs, &col_perm) else {
            continue;
        };
        if search_signed_permutations(ours, theirs, level + 1, &col_perm, &col_signs) {
            return true;
        }
    }
    false
}

/// Finds column signs with `b[rp[r]][cp[c]] == rs[r] * cs[c] * a[r][c]`.
fn match_columns(
    a: &PolyMatrix,
    b: &PolyMatrix,
    row_perm: &[usize],
    row_signs: &[i8],
    col_perm: &[usize],
) -> Option<Vec<i8>> {
    let mut col_signs = Vec::with_capacity(a.cols());
    for (c, &target_col) in col_perm.iter().enumerate().take(a.cols()) {
        let mut sign = None;
        for r in 0..a.rows() {
            let ours = a.entry(r, c);
            let theirs = b.entry(row_perm[r], target_col);
            let candidate = if ours == theirs && ours.is_zero() {
                continue;
            } else if theirs == ours.scale(&BigInt::from(row_signs[r])) {
                1i8
            } else if theirs == ours.scale(&BigInt::from(-row_signs[r])) {
                -1i8
            } else {
                return None;
            };
            match sign {
                None => sign = Some(candidate),
                Some(s) if s != candidate => return None,
                Some(_) => {}
            }
        }
        col_signs.push(sign.unwrap_or(1));
    }
    Some(col_signs)
}
