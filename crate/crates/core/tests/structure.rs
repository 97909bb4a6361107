//! Shape of the explicit complex: reference matrices for n = 3, the banded
//! last differential, and the closed forms for the first and second-to-last
//! shift sets.

mod common;

use common::sg;
use repunit_core::complex::{
    basis, betti_number, d1_matrix, dj_matrix, enumerated_shifts,
    equivalent_up_to_signed_permutation, first_syzygy_cross_form, second_to_last_cross_form,
    shifts, toric_minors, MatrixX,
};
use repunit_core::verify::default_grid;
use repunit_core::{build_resolution, Monomial, PolyMatrix, RepunitSemigroup, SparsePolynomial};

fn x(n: usize, i: usize, e: u32) -> SparsePolynomial {
    SparsePolynomial::var_pow(n, i - 1, e)
}

fn grid() -> Vec<RepunitSemigroup> {
    default_grid()
        .into_iter()
        .map(|p| RepunitSemigroup::new(p).unwrap())
        .collect()
}

fn sorted(mut v: Vec<i64>) -> Vec<i64> {
    v.sort_unstable();
    v
}

/// The reference `A1` (1 x 3) and `A2` (3 x 2) for n = 3, built symbolically.
fn reference_n3(b: u32, a: u32) -> (PolyMatrix, PolyMatrix) {
    let a1 = PolyMatrix::from_rows(
        vec![vec![
            &(&x(3, 2, b) * &x(3, 1, a + 1)) - &x(3, 3, b + 1),
            &(-&x(3, 1, a + b + 1)) + &(&x(3, 2, 1) * &x(3, 3, b)),
            &(&x(3, 1, b) * &x(3, 3, 1)) - &x(3, 2, b + 1),
        ]],
        3,
    );
    let a2 = PolyMatrix::from_rows(
        vec![
            vec![x(3, 1, b), x(3, 2, 1)],
            vec![x(3, 2, b), x(3, 3, 1)],
            vec![x(3, 3, b), x(3, 1, a + 1)],
        ],
        3,
    );
    (a1, a2)
}

#[test]
fn n3_matches_reference_matrices_for_all_grid_instances() {
    for s in grid().into_iter().filter(|s| s.embedding_dimension() == 3) {
        let p = s.params();
        let xm = MatrixX::repunit(&s);
        let ours = [d1_matrix(&xm), dj_matrix(&xm, 2).unwrap()];
        let (a1, a2) = reference_n3(p.b as u32, p.a as u32);
        assert!(
            equivalent_up_to_signed_permutation(&ours, &[a1, a2]),
            "{}",
            p
        );

        let (b, a1, a2, a3) = (p.b, s.a(1), s.a(2), s.a(3));
        assert_eq!(
            sorted(shifts(&s, 1).unwrap()),
            sorted(vec![(b + 1) * a2, a2 + b * a3, (b + 1) * a3]),
            "{p}"
        );
        assert_eq!(
            sorted(shifts(&s, 2).unwrap()),
            sorted(vec![b * a1 + (b + 1) * a3, a2 + (b + 1) * a3]),
            "{p}"
        );
    }
}

#[test]
fn signed_permutation_check_rejects_a_wrong_entry() {
    let s = sg(2, 3, 3);
    let xm = MatrixX::repunit(&s);
    let ours = [d1_matrix(&xm), dj_matrix(&xm, 2).unwrap()];
    let (a1, mut a2) = reference_n3(2, 3);
    a2.set(2, 1, x(3, 1, 3));
    assert!(!equivalent_up_to_signed_permutation(
        &ours,
        &[a1.clone(), a2]
    ));
    let (_, a2) = reference_n3(2, 3);
    let mut swapped = a2.clone();
    swapped.set(0, 0, x(3, 2, 1));
    swapped.set(0, 1, x(3, 1, 2));
    assert!(!equivalent_up_to_signed_permutation(&ours, &[a1, swapped]));
}

#[test]
fn golden_text_for_2_3_3() {
    let s = sg(2, 3, 3);
    let xm = MatrixX::repunit(&s);
    let text = |m: &PolyMatrix| -> Vec<String> {
        m.entries()
            .map(|(r, c, p)| format!("({r},{c}) {p}"))
            .collect()
    };
    assert_eq!(
        text(&d1_matrix(&xm)),
        [
            "(0,0) x1^2*x3-x2^3",
            "(0,1) x1^6-x2*x3^2",
            "(0,2) x1^4*x2^2-x3^3"
        ]
    );
    assert_eq!(
        text(&dj_matrix(&xm, 2).unwrap()),
        [
            "(0,0) x3^2",
            "(0,1) x1^4",
            "(1,0) -x2^2",
            "(1,1) -x3",
            "(2,0) x1^2",
            "(2,1) x2"
        ]
    );
    assert_eq!(shifts(&s, 1).unwrap(), vec![30, 42, 48]);
    assert_eq!(shifts(&s, 2).unwrap(), vec![62, 58]);
}

/// The last differential in block form: column `m` carries row 1 of X in
/// block `m` and row 2 of X in block `m - 1`, where block `m` lists the
/// complements `{1..n} \ {j}` for `j = 1..n` and has `u1 = n - 3 - m`.
fn banded_reference(xm: &MatrixX) -> PolyMatrix {
    let n = xm.ncols();
    let mut m = PolyMatrix::zeros(n * (n - 2), n - 1, xm.nvars());
    for col in 0..n - 1 {
        for j in 0..n {
            if col < n - 2 {
                m.set(col * n + j, col, xm.entry(0, j).clone());
            }
            if col >= 1 {
                m.set((col - 1) * n + j, col, xm.entry(1, j).clone());
            }
        }
    }
    m
}

#[test]
fn last_differential_is_banded() {
    for s in grid().into_iter().filter(|s| s.embedding_dimension() >= 4) {
        let n = s.embedding_dimension();
        let xm = MatrixX::repunit(&s);
        let ours = dj_matrix(&xm, n - 1).unwrap();
        let reference = banded_reference(&xm);
        let rows = basis(n, n - 2).unwrap();
        let cols = basis(n, n - 1).unwrap();
        assert_eq!(cols.len(), n - 1);
        for (c, e) in cols.iter().enumerate() {
            assert_eq!(e.u1, n - 2 - c, "column order");
        }
        for (r, e) in rows.iter().enumerate() {
            let missing = (0..n).find(|i| !e.indices.contains(i)).unwrap();
            let block = n - 3 - e.u1;
            let sign = if missing % 2 == 0 { 1 } else { -1 };
            for c in 0..n - 1 {
                let want = reference.entry(block * n + missing, c);
                let want = if sign == 1 { want } else { -&want };
                assert_eq!(ours.entry(r, c), want, "{} row {r} col {c}", s.params());
            }
        }
    }
}

#[test]
fn first_syzygy_cross_form_matches() {
    for s in grid() {
        assert_eq!(
            sorted(shifts(&s, 1).unwrap()),
            first_syzygy_cross_form(&s),
            "{}",
            s.params()
        );
    }
}

#[test]
fn second_to_last_cross_form_matches() {
    for s in grid().into_iter().filter(|s| s.embedding_dimension() >= 3) {
        let n = s.embedding_dimension();
        assert_eq!(
            sorted(shifts(&s, n - 2).unwrap()),
            second_to_last_cross_form(&s),
            "{}",
            s.params()
        );
    }
    assert!(second_to_last_cross_form(&sg(2, 2, 1)).is_empty());
}

#[test]
fn last_level_shifts_closed_form() {
    for s in grid() {
        let n = s.embedding_dimension();
        let total: i64 = (2..=n + 1).map(|i| s.a(i)).sum();
        let want: Vec<i64> = sorted((1..n as i64).map(|k| k * s.c() + total).collect());
        assert_eq!(sorted(shifts(&s, n - 1).unwrap()), want, "{}", s.params());
    }
}

#[test]
fn basis_shifts_equal_direct_enumeration() {
    for s in grid() {
        for j in 1..s.embedding_dimension() {
            assert_eq!(
                sorted(shifts(&s, j).unwrap()),
                enumerated_shifts(&s, j).unwrap()
            );
        }
    }
}

#[test]
fn column_structure() {
    for s in grid() {
        let n = s.embedding_dimension();
        let gc = build_resolution(&s).unwrap();
        let xm = MatrixX::repunit(&s);
        assert_eq!(gc.length(), n - 1);
        let mut prev = 1;
        for level in gc.levels() {
            let j = level.j;
            let d = &level.differential;
            assert_eq!((d.rows(), d.cols()), (prev, betti_number(n, j).unwrap()));
            prev = d.cols();
            for (col, e) in level.basis.iter().enumerate() {
                let active = if j == 1 {
                    1
                } else {
                    (e.u1 > 0) as usize + (e.u2 > 0) as usize
                };
                let expected = if j == 1 { 1 } else { (j + 1) * active };
                assert_eq!(
                    d.column_nnz(col),
                    expected,
                    "{} level {j} column {col}",
                    s.params()
                );
                if j >= 2 && e.u2 == 0 {
                    let row1: Vec<SparsePolynomial> =
                        (0..n).map(|i| xm.entry(0, i).clone()).collect();
                    for (_, _, p) in d.entries().filter(|&(_, c, _)| c == col) {
                        assert!(
                            row1.contains(p) || row1.contains(&-p),
                            "{p} is not from row 1 of X"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn build_resolution_betti_vectors() {
    assert_eq!(
        build_resolution(&sg(2, 3, 3)).unwrap().betti_vector(),
        vec![3, 2]
    );
    assert_eq!(
        build_resolution(&sg(2, 4, 1)).unwrap().betti_vector(),
        vec![6, 8, 3]
    );
    assert_eq!(
        build_resolution(&sg(3, 5, 2)).unwrap().betti_vector(),
        vec![10, 20, 15, 4]
    );
}

#[test]
fn n2_is_a_single_binomial() {
    let s = sg(2, 2, 5);
    let gc = build_resolution(&s).unwrap();
    assert_eq!(gc.length(), 1);
    let entries: Vec<String> = gc.levels()[0]
        .differential
        .entries()
        .map(|(_, _, p)| p.to_string())
        .collect();
    assert_eq!(entries, ["x1^8-x2^3"]);
    assert_eq!(shifts(&s, 1).unwrap(), vec![24]);
}

#[test]
fn toric_minors_are_balanced_binomials() {
    for s in grid() {
        let minors = toric_minors(&s).unwrap();
        let n = s.embedding_dimension();
        assert_eq!(minors.len(), n * (n - 1) / 2);
        for p in &minors {
            let degrees: Vec<i64> = p
                .terms()
                .map(|(m, _): (&Monomial, _)| m.weighted_degree(s.generators()))
                .collect();
            assert_eq!(degrees.len(), 2);
            assert_eq!(degrees[0], degrees[1], "{p}");
        }
    }
    let s = sg(2, 3, 3);
    let minors = toric_minors(&s).unwrap();
    let target = SparsePolynomial::parse("x2^2*x1^4 - x3^3", 3).unwrap();
    assert!(minors.iter().any(|p| *p == target || -p == target));
    assert_eq!(target.sdegree(s.generators()).unwrap(), Some(48));
}
