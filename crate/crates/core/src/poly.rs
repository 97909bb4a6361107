//! Sparse multivariate polynomials with exact integer coefficients, and
//! sparse matrices over them.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose `Ord` is
//! graded-lex, so iteration order (and therefore the text form) is canonical.
//! Text syntax is the usual CAS one: `x1^4*x2^2-x3^3`, `2*x1-1`, `0`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exponent vector of a monomial in `x1, ..., xn`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    /// `x_var^exp`, with `var` 0-based.
    pub fn var_pow(nvars: usize, var: usize, exp: u32) -> Self {
        let mut e = vec![0; nvars];
        e[var] = exp;
        Monomial(e)
    }

    pub fn from_exponents(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Weighted degree `sum e_i * w_i`.
    pub fn weighted_degree(&self, weights: &[i64]) -> i64 {
        debug_assert_eq!(weights.len(), self.0.len());
        self.0
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as i64 * w)
            .sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn eval_mod(&self, point: &[u64], p: u64) -> u64 {
        self.0.iter().zip(point).fold(1u64, |acc, (&e, &x)| {
            mul_mod(acc, pow_mod(x % p, e as u64, p), p)
        })
    }
}

impl Ord for Monomial {
    /// Graded-lex: total degree first, then the exponent vectors lexicographically.
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SparsePolynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl SparsePolynomial {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        Self::term(c, Monomial::one(nvars))
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(BigInt::one(), m)
    }

    /// `x_var^exp`, with `var` 0-based.
    pub fn var_pow(nvars: usize, var: usize, exp: u32) -> Self {
        Self::monomial(Monomial::var_pow(nvars, var, exp))
    }

    pub fn term(c: impl Into<BigInt>, m: Monomial) -> Self {
        let mut p = Self::zero(m.nvars());
        p.add_term(m, c.into());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn constant_term(&self) -> BigInt {
        self.terms
            .get(&Monomial::one(self.nvars))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        assert_eq!(m.nvars(), self.nvars, "variable count mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    /// True iff all terms share one weighted degree (vacuously for zero).
    pub fn is_homogeneous(&self, weights: &[i64]) -> bool {
        self.sdegree(weights).is_ok()
    }

    /// Common weighted degree of all terms; `None` for the zero polynomial.
    pub fn sdegree(&self, weights: &[i64]) -> Result<Option<i64>> {
        let mut degrees = self.terms.keys().map(|m| m.weighted_degree(weights));
        let Some(first) = degrees.next() else {
            return Ok(None);
        };
        for d in degrees {
            if d != first {
                return Err(Error::NotHomogeneous(first, d));
            }
        }
        Ok(Some(first))
    }

    /// Value at `point` in `F_p`, coefficients reduced modulo `p`.
    pub fn evaluate(&self, point: &[u64], p: u64) -> u64 {
        assert_eq!(point.len(), self.nvars, "evaluation point has wrong length");
        let modulus = BigInt::from(p);
        self.terms.iter().fold(0u64, |acc, (m, c)| {
            let c = c.mod_floor(&modulus).to_u64().expect("reduced coefficient");
            (acc + mul_mod(c, m.eval_mod(point, p), p)) % p
        })
    }

    fn check_nvars(&self, other: &Self) {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
    }
}

impl<'a> Add<&'a SparsePolynomial> for &'a SparsePolynomial {
    type Output = SparsePolynomial;

    fn add(self, rhs: &'a SparsePolynomial) -> SparsePolynomial {
        self.check_nvars(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a SparsePolynomial> for &'a SparsePolynomial {
    type Output = SparsePolynomial;

    fn sub(self, rhs: &'a SparsePolynomial) -> SparsePolynomial {
        self.check_nvars(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a SparsePolynomial> for &'a SparsePolynomial {
    type Output = SparsePolynomial;

    fn mul(self, rhs: &'a SparsePolynomial) -> SparsePolynomial {
        self.check_nvars(rhs);
        let mut out = SparsePolynomial::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &SparsePolynomial {
    type Output = SparsePolynomial;

    fn neg(self) -> SparsePolynomial {
        SparsePolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for SparsePolynomial {
    /// Leading (largest) term first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            if negative {
                f.write_str("-")?;
            } else if idx > 0 {
                f.write_str("+")?;
            }
            let magnitude = c.abs();
            if m.is_one() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{magnitude}*{m}")?;
            }
        }
        Ok(())
    }
}

impl SparsePolynomial {
    /// Parses the canonical text form in `nvars` variables. Whitespace is
    /// ignored; factors may repeat (`x1*x1`) and coefficients may appear
    /// anywhere in a product.
    pub fn parse(text: &str, nvars: usize) -> Result<Self> {
        let err = || Error::Parse(format!("polynomial {text:?}"));
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err());
        }
        let bytes = compact.as_bytes();
        let mut out = SparsePolynomial::zero(nvars);
        let mut pos = 0;
        while pos < bytes.len() {
            let mut sign = BigInt::one();
            while pos < bytes.len() && (bytes[pos] == b'+' || bytes[pos] == b'-') {
                if bytes[pos] == b'-' {
                    sign = -sign;
                }
                pos += 1;
            }
            let end = bytes[pos..]
                .iter()
                .position(|&ch| ch == b'+' || ch == b'-')
                .map_or(bytes.len(), |off| pos + off);
            if end == pos {
                return Err(err());
            }
            let mut coeff = sign;
            let mut exps = vec![0u32; nvars];
            for factor in compact[pos..end].split('*') {
                if let Some(rest) = factor.strip_prefix('x') {
                    let (var, exp) = match rest.split_once('^') {
                        Some((v, e)) => (v, e.parse::<u32>().map_err(|_| err())?),
                        None => (rest, 1),
                    };
                    let var: usize = var.parse().map_err(|_| err())?;
                    if var == 0 || var > nvars {
                        return Err(err());
                    }
                    exps[var - 1] = exps[var - 1].checked_add(exp).ok_or_else(err)?;
                } else {
                    coeff *= BigInt::from_str(factor).map_err(|_| err())?;
                }
            }
            out.add_term(Monomial(exps), coeff);
            pos = end;
        }
        Ok(out)
    }
}

/// Sparse matrix of polynomials; only nonzero entries are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    nvars: usize,
    entries: BTreeMap<(usize, usize), SparsePolynomial>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize, nvars: usize) -> Self {
        Self {
            rows,
            cols,
            nvars,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(size: usize, nvars: usize) -> Self {
        let mut m = Self::zeros(size, size, nvars);
        for i in 0..size {
            m.set(i, i, SparsePolynomial::one(nvars));
        }
        m
    }

    /// Builds from dense rows. All rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<SparsePolynomial>>, nvars: usize) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols, nvars);
        for (r, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (c, p) in row.into_iter().enumerate() {
                m.set(r, c, p);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn get(&self, row: usize, col: usize) -> Option<&SparsePolynomial> {
        self.entries.get(&(row, col))
    }

    /// Entry at `(row, col)`, zero if absent.
    pub fn entry(&self, row: usize, col: usize) -> SparsePolynomial {
        self.get(row, col)
            .cloned()
            .unwrap_or_else(|| SparsePolynomial::zero(self.nvars))
    }

    pub fn set(&mut self, row: usize, col: usize, p: SparsePolynomial) {
        assert!(row < self.rows && col < self.cols, "index out of bounds");
        assert_eq!(p.nvars(), self.nvars, "variable count mismatch");
        if p.is_zero() {
            self.entries.remove(&(row, col));
        } else {
            self.entries.insert((row, col), p);
        }
    }

    pub fn add_to(&mut self, row: usize, col: usize, p: &SparsePolynomial) {
        let sum = &self.entry(row, col) + p;
        self.set(row, col, sum);
    }

    /// Nonzero entries in `(row, col)` order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &SparsePolynomial)> {
        self.entries.iter().map(|(&(r, c), p)| (r, c, p))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn column_nnz(&self, col: usize) -> usize {
        self.entries.keys().filter(|&&(_, c)| c == col).count()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn matmul(&self, rhs: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut by_col: Vec<Vec<(usize, &SparsePolynomial)>> = vec![Vec::new(); self.cols];
        for (&(r, c), p) in &self.entries {
            by_col[c].push((r, p));
        }
        let mut acc: BTreeMap<(usize, usize), SparsePolynomial> = BTreeMap::new();
        for (&(k, j), q) in &rhs.entries {
            for &(i, p) in &by_col[k] {
                let prod = p * q;
                acc.entry((i, j))
                    .and_modify(|e| *e = &*e + &prod)
                    .or_insert(prod);
            }
        }
        acc.retain(|_, p| !p.is_zero());
        Ok(PolyMatrix {
            rows: self.rows,
            cols: rhs.cols,
            nvars: self.nvars,
            entries: acc,
        })
    }

    /// Dense matrix of values at `point` over `F_p`.
    pub fn evaluate(&self, point: &[u64], p: u64) -> Vec<Vec<u64>> {
        let mut out = vec![vec![0u64; self.cols]; self.rows];
        for (&(r, c), poly) in &self.entries {
            out[r][c] = poly.evaluate(point, p);
        }
        out
    }
}
