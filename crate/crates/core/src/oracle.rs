//! Ground truth computed without reference to the Eagon–Northcott complex.
//!
//! Graded Betti numbers come from the squarefree divisor complex: for
//! `s` in the semigroup, `Delta_s` is the simplicial complex on the
//! generators whose faces `F` satisfy `s - sum_{i in F} a_i in S`, and
//! `dim Tor_j(k, k[S])_s = dim H~_(j-1)(Delta_s; k)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::complex::{enumerated_shifts, BettiTable, GradedComplex};
use crate::error::{Error, Result};
use crate::modp;
use crate::report::{CheckResult, Violation};
use crate::semigroup::RepunitSemigroup;

/// Simplicial complex on vertices `0..n`, faces stored as bitmasks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: usize,
    /// Sorted by size, then by mask value.
    faces: Vec<u64>,
}

impl SimplicialComplex {
    /// Closes `generators` downward. An empty generator list gives the void
    /// complex (no faces at all).
    pub fn from_facets(vertices: usize, generators: &[u64]) -> Self {
        assert!(vertices <= 63, "too many vertices");
        let mut faces = Vec::new();
        for mask in 0..(1u64 << vertices) {
            if generators.iter().any(|&g| mask & g == mask) {
                faces.push(mask);
            }
        }
        Self::from_faces(vertices, faces)
    }

    fn from_faces(vertices: usize, mut faces: Vec<u64>) -> Self {
        faces.sort_unstable_by_key(|&m| (m.count_ones(), m));
        faces.dedup();
        Self { vertices, faces }
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn faces(&self) -> &[u64] {
        &self.faces
    }

    pub fn contains(&self, face: u64) -> bool {
        self.faces
            .binary_search_by_key(&(face.count_ones(), face), |&m| (m.count_ones(), m))
            .is_ok()
    }

    pub fn is_downward_closed(&self) -> bool {
        self.faces.iter().all(|&f| {
            (0..self.vertices)
                .filter(|&v| f & (1 << v) != 0)
                .all(|v| self.contains(f & !(1 << v)))
        })
    }

    /// Faces of dimension `d` (size `d + 1`), `d >= -1`.
    fn faces_of_dim(&self, d: isize) -> Vec<u64> {
        let size = (d + 1) as u32;
        self.faces
            .iter()
            .copied()
            .filter(|m| m.count_ones() == size)
            .collect()
    }
}

/// Faces `F` of `{0..n}` with `s - sum_{i in F} a_i` in the semigroup.
pub fn divisor_complex(s: &RepunitSemigroup, degree: i64) -> SimplicialComplex {
    let gens = s.generators();
    let n = gens.len();
    let faces = (0..(1u64 << n))
        .filter(|&mask| {
            let sum: i64 = (0..n)
                .filter(|&i| mask & (1 << i) != 0)
                .map(|i| gens[i])
                .sum();
            s.contains_unchecked(degree - sum)
        })
        .collect();
    SimplicialComplex::from_faces(n, faces)
}

/// Rank over `F_p` of the boundary map from dimension `d` to `d - 1`.
fn boundary_rank(upper: &[u64], lower: &[u64], p: u64) -> usize {
    if upper.is_empty() || lower.is_empty() {
        return 0;
    }
    let index: BTreeMap<u64, usize> = lower.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let mut rows = vec![vec![0u64; upper.len()]; lower.len()];
    for (col, &face) in upper.iter().enumerate() {
        let mut position = 0;
        let mut bits = face;
        while bits != 0 {
            let v = bits.trailing_zeros();
            bits &= bits - 1;
            let row = index[&(face & !(1 << v))];
            rows[row][col] = if position % 2 == 0 { 1 } else { p - 1 };
            position += 1;
        }
    }
    modp::rank(rows, p)
}

/// `dim H~_d(K; F_p)` for `d = -1, 0, ..., n-1` (index `d + 1`).
pub fn reduced_homology_dims(k: &SimplicialComplex, p: u64) -> Vec<usize> {
    let n = k.vertices() as isize;
    let chains: Vec<Vec<u64>> = (-1..n).map(|d| k.faces_of_dim(d)).collect();
    // ranks[d + 1] = rank of boundary C_d -> C_(d-1); C_(-1) -> 0 has rank 0.
    let mut ranks = vec![0usize; chains.len() + 1];
    for d in 0..n {
        let i = (d + 1) as usize;
        ranks[i] = boundary_rank(&chains[i], &chains[i - 1], p);
    }
    (0..chains.len())
        .map(|i| chains[i].len() - ranks[i] - ranks[i + 1])
        .collect()
}

/// Nonzero graded Betti numbers `(j, s) -> dim Tor_j(k, k[S])_s`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OracleBettiTable {
    entries: BTreeMap<(usize, i64), usize>,
}

impl OracleBettiTable {
    pub fn get(&self, j: usize, degree: i64) -> usize {
        self.entries.get(&(j, degree)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, i64, usize)> + '_ {
        self.entries.iter().map(|(&(j, s), &d)| (j, s, d))
    }

    /// Sorted multiset of degrees at level `j`, each repeated by its dimension.
    pub fn multiset(&self, j: usize) -> Vec<i64> {
        self.entries
            .range((j, i64::MIN)..=(j, i64::MAX))
            .flat_map(|(&(_, s), &d)| std::iter::repeat_n(s, d))
            .collect()
    }

    pub fn total(&self, j: usize) -> usize {
        self.entries
            .range((j, i64::MIN)..=(j, i64::MAX))
            .map(|(_, &d)| d)
            .sum()
    }

    pub fn max_level(&self) -> usize {
        self.entries.keys().map(|&(j, _)| j).max().unwrap_or(0)
    }

    pub fn to_betti_table(&self) -> BettiTable {
        BettiTable::from_levels((1..=self.max_level()).map(|j| (j, self.multiset(j))))
    }
}

/// Scans `s = 1..=bound` and records every nonzero `Tor_j`, `j >= 1`.
pub fn graded_betti_oracle(s: &RepunitSemigroup, p: u64, bound: i64) -> Result<OracleBettiTable> {
    modp::require_prime(p)?;
    let found: Vec<(usize, i64, usize)> = (1..=bound.max(0))
        .into_par_iter()
        .filter(|&degree| s.contains_unchecked(degree))
        .flat_map_iter(|degree| {
            let dims = reduced_homology_dims(&divisor_complex(s, degree), p);
            // dims[i] is H~_(i-1), i.e. Tor_i
            dims.into_iter()
                .enumerate()
                .filter(|&(j, d)| j >= 1 && d > 0)
                .map(move |(j, d)| (j, degree, d))
        })
        .collect();
    Ok(OracleBettiTable {
        entries: found.into_iter().map(|(j, s, d)| ((j, s), d)).collect(),
    })
}

/// Largest degree any level of the claimed resolution uses.
pub fn claimed_max_shift(s: &RepunitSemigroup) -> Result<i64> {
    let n = s.embedding_dimension();
    let mut max = 0;
    for j in 1..n {
        if let Some(&m) = enumerated_shifts(s, j)?.last() {
            max = max.max(m);
        }
    }
    Ok(max)
}

/// Claimed maximum shift plus `margin` (default: the largest generator).
pub fn scan_bound(s: &RepunitSemigroup, margin: Option<i64>) -> Result<i64> {
    let margin = margin.unwrap_or_else(|| *s.generators().last().expect("generators"));
    Ok(claimed_max_shift(s)? + margin)
}

/// Compares the resolution's shift multisets with the oracle. Any Tor found
/// above `claimed_max` fails, as does a nonzero level the resolution lacks.
pub fn compare_with_oracle(
    gc: &GradedComplex,
    oracle: &OracleBettiTable,
    claimed_max: i64,
) -> CheckResult {
    if let Some((j, degree, _)) = oracle.entries().find(|&(_, s, _)| s > claimed_max) {
        return Err(Violation::TorAboveBound {
            j,
            degree,
            claimed_max,
        });
    }
    let claimed = gc.betti_table();
    let top = oracle.max_level().max(gc.length());
    for j in 1..=top {
        let ours = claimed.level(j);
        let theirs = oracle.multiset(j);
        if ours != theirs.as_slice() {
            return Err(Violation::BettiMismatch {
                j,
                claimed: ours.to_vec(),
                oracle: theirs,
            });
        }
    }
    Ok(())
}

/// Smallest truncation degree accepted by [`hilbert_check`].
pub fn hilbert_min_degree(s: &RepunitSemigroup, gc: &GradedComplex) -> i64 {
    s.frobenius() + gc.max_shift() + 1
}

/// Expands `(1 + sum_j (-1)^j sum_k t^(s_jk)) / prod_i (1 - t^(a_i))` up to
/// degree `t_max` and compares it with the semigroup's indicator series.
pub fn hilbert_check(s: &RepunitSemigroup, gc: &GradedComplex, t_max: i64) -> Result<CheckResult> {
    let required = hilbert_min_degree(s, gc);
    if t_max < required {
        return Err(Error::BoundTooSmall {
            bound: t_max,
            required,
        });
    }
    let len = t_max as usize + 1;
    let mut series = vec![BigInt::zero(); len];
    series[0] = BigInt::one();
    for level in gc.levels() {
        let negative = level.j % 2 == 1;
        for &shift in &level.shifts {
            if (0..len as i64).contains(&shift) {
                if negative {
                    series[shift as usize] -= 1;
                } else {
                    series[shift as usize] += 1;
                }
            }
        }
    }
    for &g in gc.weights() {
        let g = g as usize;
        for d in g..len {
            let prev = series[d - g].clone();
            series[d] += prev;
        }
    }
    for (degree, coeff) in series.iter().enumerate() {
        let expected = i64::from(s.contains_unchecked(degree as i64));
        if coeff.to_i64() != Some(expected) {
            return Ok(Err(Violation::HilbertMismatch {
                degree: degree as i64,
                from_resolution: coeff.to_string(),
                from_semigroup: expected,
            }));
        }
    }
    Ok(Ok(()))
}

/// Ranks of `delta_1 .. delta_(n-1)` at random points of `F_p^n`, maximized
/// over `trials` points.
pub fn generic_ranks(gc: &GradedComplex, p: u64, trials: usize, seed: u64) -> Result<Vec<usize>> {
    modp::require_prime(p)?;
    if trials == 0 {
        return Err(Error::Parse("trials must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ranks = vec![0usize; gc.length()];
    for _ in 0..trials {
        let point: Vec<u64> = (0..gc.nvars()).map(|_| rng.gen_range(0..p)).collect();
        for (rank, level) in ranks.iter_mut().zip(gc.levels()) {
            let r = modp::rank(level.differential.evaluate(&point, p), p);
            *rank = (*rank).max(r);
        }
    }
    Ok(ranks)
}

/// `r_j + r_(j+1) = beta_j` for `j = 0..n-1`, with `beta_0 = 1` and `r_n = 0`.
pub fn generic_rank_check(
    gc: &GradedComplex,
    p: u64,
    trials: usize,
    seed: u64,
) -> Result<CheckResult> {
    let ranks = generic_ranks(gc, p, trials, seed)?;
    let betti = gc.betti_vector();
    for j in 0..=ranks.len() {
        let left = if j == 0 { 0 } else { ranks[j - 1] };
        let right = ranks.get(j).copied().unwrap_or(0);
        let expected = if j == 0 { 1 } else { betti[j - 1] };
        if left + right != expected {
            return Ok(Err(Violation::RankCondition {
                j,
                left,
                right,
                betti: expected,
            }));
        }
    }
    Ok(Ok(()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::RepunitParams;

    fn sg(b: i64, n: i64, a: i64) -> RepunitSemigroup {
        RepunitSemigroup::new(RepunitParams::new(b, n, a)).unwrap()
    }

    #[test]
    fn homology_of_small_complexes() {
        let p = modp::DEFAULT_PRIME;
        let simplex = SimplicialComplex::from_facets(3, &[0b111]);
        assert_eq!(reduced_homology_dims(&simplex, p), vec![0, 0, 0, 0]);

        let two_points = SimplicialComplex::from_facets(2, &[0b01, 0b10]);
        assert_eq!(reduced_homology_dims(&two_points, p), vec![0, 1, 0]);

        let circle = SimplicialComplex::from_facets(3, &[0b011, 0b101, 0b110]);
        assert_eq!(reduced_homology_dims(&circle, p), vec![0, 0, 1, 0]);

        let empty_face = SimplicialComplex::from_faces(3, vec![0]);
        assert_eq!(reduced_homology_dims(&empty_face, p), vec![1, 0, 0, 0]);

        let void = SimplicialComplex::from_facets(3, &[]);
        assert_eq!(reduced_homology_dims(&void, p), vec![0, 0, 0, 0]);
    }

    #[test]
    fn divisor_complexes() {
        let s = sg(2, 3, 3);
        assert_eq!(divisor_complex(&s, 0).faces(), &[0]);
        assert!(divisor_complex(&s, 7).contains(0b001));
        // 30: 30-7=23, 30-10=20, 30-16=14 and 30-7-16=7 are in S; 13 and 4 are not
        let k = divisor_complex(&s, 30);
        assert_eq!(k.faces(), &[0, 0b001, 0b010, 0b100, 0b101]);
        assert!(k.is_downward_closed());
    }

    #[test]
    fn oracle_small_instances() {
        let p = modp::DEFAULT_PRIME;
        let s = sg(2, 3, 3);
        let table = graded_betti_oracle(&s, p, 62 + 16).unwrap();
        assert_eq!(table.multiset(1), vec![30, 42, 48]);
        assert_eq!(table.multiset(2), vec![58, 62]);
        assert_eq!(table.max_level(), 2);

        let s = sg(2, 2, 5);
        let table = graded_betti_oracle(&s, p, 40).unwrap();
        assert_eq!(table.multiset(1), vec![24]);
        assert_eq!(table.total(1), 1);
        assert_eq!(table.max_level(), 1);

        assert_eq!(graded_betti_oracle(&s, 10, 40), Err(Error::NotPrime(10)));
    }

    #[test]
    fn scan_bound_covers_claims() {
        let s = sg(2, 3, 3);
        assert_eq!(claimed_max_shift(&s).unwrap(), 62);
        assert_eq!(scan_bound(&s, None).unwrap(), 78);
        assert_eq!(scan_bound(&s, Some(5)).unwrap(), 67);
    }
}
