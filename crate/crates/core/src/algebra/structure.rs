//! Radical, nilpotency, idempotents, corners and strong gradings.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{GradedAlgebra, GradedLinMap};
use crate::error::{Error, Result};
use crate::exactlin::matrix::{is_zero_vec, zero_vec};
use crate::exactlin::{nullspace, Matrix, Scalar, Subspace, Vector};

fn trace(m: &Matrix) -> Scalar {
    let mut t = Scalar::zero();
    for k in 0..m.rows {
        t += &m[(k, k)];
    }
    t
}

/// Jacobson radical `{a : tr L_(a b) = 0 for all b}` (Dickson's criterion, characteristic 0).
pub fn radical(a: &GradedAlgebra) -> Subspace {
    let n = a.dim();
    let traces: Vec<Scalar> = (0..n).map(|m| trace(&a.left_mul_matrix(&a.basis_vec(m)))).collect();
    let mut t = Matrix::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut s = Scalar::zero();
            for (m, c) in a.product_basis(i, j) {
                s += &(c * &traces[*m]);
            }
            t[(j, i)] = s;
        }
    }
    nullspace(&t)
}

/// Whether `x^m = 0` for some `m <= dim A`.
pub fn is_nilpotent_element(a: &GradedAlgebra, x: &[Scalar]) -> bool {
    nilpotency_index(a, x).is_some()
}

/// Smallest `m >= 1` with `x^m = 0`, searched up to `dim A`.
pub fn nilpotency_index(a: &GradedAlgebra, x: &[Scalar]) -> Option<usize> {
    let mut p = x.to_vec();
    for m in 1..=a.dim().max(1) {
        if is_zero_vec(&p) {
            return Some(m);
        }
        p = a.mul(&p, x);
    }
    None
}

pub fn is_idempotent(a: &GradedAlgebra, e: &[Scalar]) -> bool {
    a.mul(e, e) == e
}

/// The two-sided ideal `A e A` as a subspace.
pub fn two_sided_ideal(a: &GradedAlgebra, e: &[Scalar]) -> Subspace {
    let mut rows = Vec::new();
    for i in 0..a.dim() {
        let be = a.basis_mul(i, e);
        for j in 0..a.dim() {
            rows.push(a.mul_by_basis(&be, j));
        }
    }
    Subspace::span(a.dim(), &rows).expect("row length")
}

/// `e^2 = e` and `A e A = A`.
pub fn full_idempotent_check(a: &GradedAlgebra, e: &[Scalar]) -> bool {
    is_idempotent(a, e) && two_sided_ideal(a, e).dim() == a.dim()
}

/// The corner algebra `e A e` with its embedding into `A`.
#[derive(Clone, Debug)]
pub struct Corner {
    pub algebra: GradedAlgebra,
    /// `dim A x dim eAe`; column `k` is the `k`-th corner basis element in `A`.
    pub embedding: GradedLinMap,
}

/// `e A e` on a homogeneous echelon basis, unit `e`, grading inherited.
pub fn corner(a: &GradedAlgebra, e: &[Scalar]) -> Result<Corner> {
    if !is_idempotent(a, e) {
        return Err(Error::NotIdempotent);
    }
    if !is_zero_vec(e) && a.degree_of(e) != Some(0) {
        return Err(Error::CheckFailed(String::from("corner idempotent is not homogeneous of degree 0")));
    }
    let mut basis: Vec<Vector> = Vec::new();
    for d in 0..(1u8 << a.rank()) {
        let rows: Vec<Vector> = a.component(d).into_iter().map(|i| a.mul(&a.mul_by_basis(e, i), e)).collect();
        if rows.is_empty() {
            continue;
        }
        basis.extend(Subspace::span(a.dim(), &rows)?.basis().iter().cloned());
    }
    let labels = (0..basis.len()).map(|k| format!("c{k}")).collect();
    let algebra = a.restrict(&basis, e, labels)?;
    let embedding = GradedLinMap::from_images(&basis, a.dim(), 0)?;
    Ok(Corner { algebra, embedding })
}

/// For a `Z2`-graded algebra: `A_1 A_1` spans `A_0` and `A_0 A_1` spans `A_1`.
pub fn strongly_graded_check(a: &GradedAlgebra) -> bool {
    let spans = |di: u8, dj: u8| {
        let mut rows = Vec::new();
        for i in a.component(di) {
            for j in a.component(dj) {
                rows.push(a.product_basis_dense(i, j));
            }
        }
        if rows.is_empty() {
            rows.push(zero_vec(a.dim()));
        }
        Subspace::span(a.dim(), &rows).expect("row length").dim()
    };
    a.rank() == 1 && spans(1, 1) == a.component(0).len() && spans(0, 1) == a.component(1).len()
}

/// Center `{x : x b = b x for all b}`.
pub fn center(a: &GradedAlgebra) -> Subspace {
    let n = a.dim();
    let mut rows = Vec::with_capacity(n * n);
    for j in 0..n {
        let b = a.basis_vec(j);
        rows.extend(a.right_mul_matrix(&b).sub(&a.left_mul_matrix(&b)).to_rows());
    }
    nullspace(&Matrix::from_rows(&rows, n).expect("row length"))
}

/// The subalgebra spanned by basis elements whose degree satisfies `keep`, with the
/// degrees relabelled by `relabel` into `Z2^rank`.
pub fn graded_part<K: Fn(u8) -> bool, F: Fn(u8) -> u8>(a: &GradedAlgebra, keep: K, rank: u8, relabel: F) -> Result<GradedAlgebra> {
    let idx: Vec<usize> = (0..a.dim()).filter(|&i| keep(a.degree(i))).collect();
    let basis: Vec<Vector> = idx.iter().map(|&i| a.basis_vec(i)).collect();
    let labels = idx.iter().map(|&i| a.labels()[i].clone()).collect();
    Ok(a.restrict(&basis, a.unit(), labels)?.regrade(rank, relabel))
}

/// The degree-0 part of a `Z2`-graded algebra, carrying the trivial grading.
pub fn degree_zero_part(a: &GradedAlgebra) -> Result<GradedAlgebra> {
    graded_part(a, |d| d == 0, 1, |_| 0)
}

/// Sizes `n_i` of the matrix blocks of `A (x) K-bar` for a semisimple `A`, when they are
/// determined by `dim A = sum n_i^2` and `dim Z(A) = #blocks`; sorted decreasingly.
pub fn block_sizes(a: &GradedAlgebra) -> Option<Vec<usize>> {
    if radical(a).dim() != 0 {
        return None;
    }
    let (d, z) = (a.dim(), center(a).dim());
    let mut found: Vec<Vec<usize>> = Vec::new();
    let mut cur = Vec::new();
    partitions_by_squares(d, z, d, &mut cur, &mut found);
    (found.len() == 1).then(|| found.pop().expect("one solution"))
}

fn partitions_by_squares(rest: usize, parts: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if parts == 0 {
        if rest == 0 {
            out.push(cur.clone());
        }
        return;
    }
    let mut k = 1;
    while k <= max && k * k + (parts - 1) <= rest {
        k += 1;
    }
    for n in (1..k).rev() {
        cur.push(n);
        partitions_by_squares(rest - n * n, parts - 1, n, cur, out);
        cur.pop();
    }
}

/// Renders block sizes as `k` or `M_n(k)`.
pub fn render_blocks(sizes: &[usize]) -> String {
    let parts: Vec<String> = sizes.iter().map(|&n| if n == 1 { String::from("k") } else { format!("M{n}(k)") }).collect();
    parts.join(",")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tests::{m2, quadratic_ext};
    use crate::algebra::verify_algebra;
    use crate::exactlin::matrix::unit_vec;

    #[test]
    fn radicals() {
        assert_eq!(radical(&quadratic_ext(Scalar::zero())).dim(), 1);
        assert_eq!(radical(&quadratic_ext(Scalar::one())).dim(), 0);
        assert_eq!(radical(&m2()).dim(), 0);
    }

    #[test]
    fn nilpotents() {
        let a = quadratic_ext(Scalar::zero());
        assert!(!is_nilpotent_element(&a, a.unit()));
        assert!(is_nilpotent_element(&a, &unit_vec(2, 1)));
        assert_eq!(nilpotency_index(&a, &unit_vec(2, 1)), Some(2));
    }

    #[test]
    fn idempotents_and_corners() {
        let a = m2();
        assert!(full_idempotent_check(&a, a.unit()));
        assert!(!full_idempotent_check(&a, &zero_vec(4)));
        assert!(full_idempotent_check(&a, &unit_vec(4, 0)));
        let c = corner(&a, &unit_vec(4, 0)).unwrap();
        assert_eq!(c.algebra.dim(), 1);
        assert!(verify_algebra(&c.algebra).passed());
        let whole = corner(&a, &a.unit().clone()).unwrap();
        assert_eq!(whole.algebra.dim(), 4);
        assert!(matches!(corner(&a, &unit_vec(4, 1)), Err(Error::NotIdempotent)));
    }

    #[test]
    fn centers_and_blocks() {
        let a = m2();
        assert_eq!(center(&a).dim(), 1);
        assert_eq!(block_sizes(&a), Some(alloc::vec![2]));
        let q = quadratic_ext(Scalar::one());
        assert_eq!(center(&q).dim(), 2);
        assert_eq!(block_sizes(&q), Some(alloc::vec![1, 1]));
        assert_eq!(block_sizes(&quadratic_ext(Scalar::zero())), None);
        assert_eq!(render_blocks(&[2, 1, 1]), "M2(k),k,k");
        let z = degree_zero_part(&q).unwrap();
        assert_eq!(z.dim(), 1);
        assert!(verify_algebra(&z).passed());
    }

    #[test]
    fn strong_gradings() {
        assert!(strongly_graded_check(&quadratic_ext(Scalar::one())));
        assert!(!strongly_graded_check(&quadratic_ext(Scalar::zero())));
    }
}
