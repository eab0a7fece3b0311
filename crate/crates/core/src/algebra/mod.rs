//! Finite-dimensional algebras given by structure constants, graded by `Z2^k`.

pub mod linmap;
pub mod mhom;
pub mod module;
pub mod present;
pub mod structure;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exactlin::matrix::{is_zero_vec, unit_vec, zero_vec};
use crate::exactlin::{Matrix, Scalar, Subspace, Vector};

pub use linmap::{xi_automorphism, GradedLinMap};
pub use mhom::{invert_hom, t_invert_hom, verify_hom_m2, MatrixHom};
pub use module::{hom_dim, is_absolutely_simple, spin, verify_decomposition, RightModule};
pub use present::{check_iso, extend_on_generators, verify_iso, PresentedAlgebra};
pub use structure::{
    block_sizes, center, corner, degree_zero_part, full_idempotent_check, graded_part, is_nilpotent_element, nilpotency_index, radical, render_blocks, strongly_graded_check, Corner,
};

/// Element of `Z2^k` stored as a bit mask; bit 0 is the first component.
pub type Degree = u8;

/// Sparse coordinate vector as `(index, nonzero coefficient)` pairs in increasing index order.
pub type SparseVec = Vec<(usize, Scalar)>;

fn sparsify(v: &[Scalar]) -> SparseVec {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, c.clone())).collect()
}

/// Algebra on a labelled basis with `b_i b_j = sum_k c_ij^k b_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedAlgebra {
    labels: Vec<String>,
    table: Vec<SparseVec>,
    unit: Vector,
    rank: u8,
    degrees: Vec<Degree>,
}

impl GradedAlgebra {
    /// `products[i * dim + j]` holds the coordinates of `b_i b_j`.
    pub fn new(labels: Vec<String>, products: Vec<Vector>, unit: Vector, rank: u8, degrees: Vec<Degree>) -> Result<Self> {
        let n = labels.len();
        if products.len() != n * n {
            return Err(Error::DimensionMismatch { expected: n * n, found: products.len() });
        }
        for v in products.iter().chain(core::iter::once(&unit)) {
            if v.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: v.len() });
            }
        }
        if degrees.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: degrees.len() });
        }
        let table = products.iter().map(|v| sparsify(v)).collect();
        Ok(GradedAlgebra { labels, table, unit, rank, degrees })
    }

    /// Builds the table from a closure returning the coordinates of `b_i b_j`.
    pub fn from_fn<F: FnMut(usize, usize) -> Vector>(labels: Vec<String>, mut f: F, unit: Vector, rank: u8, degrees: Vec<Degree>) -> Result<Self> {
        let n = labels.len();
        let mut products = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                products.push(f(i, j));
            }
        }
        Self::new(labels, products, unit, rank, degrees)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    /// `k` for the grading group `Z2^k`.
    pub fn rank(&self) -> u8 {
        self.rank
    }

    pub fn degrees(&self) -> &[Degree] {
        &self.degrees
    }

    pub fn degree(&self, i: usize) -> Degree {
        self.degrees[i]
    }

    pub fn basis_vec(&self, i: usize) -> Vector {
        unit_vec(self.dim(), i)
    }

    /// Nonzero coordinates of `b_i b_j`.
    pub fn product_basis(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.table[i * self.dim() + j]
    }

    pub fn product_basis_dense(&self, i: usize, j: usize) -> Vector {
        let mut v = zero_vec(self.dim());
        for (k, c) in self.product_basis(i, j) {
            v[*k] = c.clone();
        }
        v
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vector {
        let mut out = zero_vec(self.dim());
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                for (k, c) in self.product_basis(i, j) {
                    out[*k] += &(&xy * c);
                }
            }
        }
        out
    }

    /// Product of `a` with the basis element `b_j`.
    pub fn mul_by_basis(&self, a: &[Scalar], j: usize) -> Vector {
        let mut out = zero_vec(self.dim());
        for (i, x) in a.iter().enumerate() {
            if !x.is_zero() {
                for (k, c) in self.product_basis(i, j) {
                    out[*k] += &(x * c);
                }
            }
        }
        out
    }

    /// Product of the basis element `b_i` with `a`.
    pub fn basis_mul(&self, i: usize, a: &[Scalar]) -> Vector {
        let mut out = zero_vec(self.dim());
        for (j, x) in a.iter().enumerate() {
            if !x.is_zero() {
                for (k, c) in self.product_basis(i, j) {
                    out[*k] += &(x * c);
                }
            }
        }
        out
    }

    /// Matrix of `y -> a y` in the basis (columns are images).
    pub fn left_mul_matrix(&self, a: &[Scalar]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim()).map(|j| self.mul_by_basis(a, j)).collect();
        Matrix::from_columns(&cols, self.dim()).expect("square")
    }

    /// Matrix of `y -> y a` in the basis (columns are images).
    pub fn right_mul_matrix(&self, a: &[Scalar]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim()).map(|i| self.basis_mul(i, a)).collect();
        Matrix::from_columns(&cols, self.dim()).expect("square")
    }

    pub fn pow(&self, a: &[Scalar], e: usize) -> Vector {
        let mut out = self.unit.clone();
        for _ in 0..e {
            out = self.mul(&out, a);
        }
        out
    }

    /// Basis indices of the homogeneous component of degree `d`.
    pub fn component(&self, d: Degree) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degrees[i] == d).collect()
    }

    /// Degree of a nonzero homogeneous element, `None` if inhomogeneous or zero.
    pub fn degree_of(&self, v: &[Scalar]) -> Option<Degree> {
        let mut it = v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, _)| self.degrees[k]);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (i + 1..n).all(|j| self.product_basis(i, j) == self.product_basis(j, i)))
    }

    /// Same constants with new degree labels `f(old)` in `Z2^rank`.
    pub fn regrade<F: Fn(Degree) -> Degree>(&self, rank: u8, f: F) -> GradedAlgebra {
        GradedAlgebra { degrees: self.degrees.iter().map(|&d| f(d)).collect(), rank, ..self.clone() }
    }

    /// `Z2^2 -> Z2` by dropping the first component.
    pub fn forget_first(&self) -> GradedAlgebra {
        self.regrade(1, |d| (d >> 1) & 1)
    }

    /// `Z2^2 -> Z2` by adding the two components.
    pub fn total_degree(&self) -> GradedAlgebra {
        self.regrade(1, |d| (d ^ (d >> 1)) & 1)
    }

    pub fn with_labels(&self, labels: Vec<String>) -> Result<GradedAlgebra> {
        if labels.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: labels.len() });
        }
        Ok(GradedAlgebra { labels, ..self.clone() })
    }

    /// Human-readable form such as `1 - x1*x2*`.
    pub fn render(&self, v: &[Scalar]) -> String {
        render_combination(&self.labels, v)
    }

    /// Algebra on a homogeneous basis of a subspace closed under multiplication, with the given unit.
    pub fn restrict(&self, basis: &[Vector], unit: &[Scalar], labels: Vec<String>) -> Result<GradedAlgebra> {
        let span = Subspace::span(self.dim(), basis)?;
        if span.dim() != basis.len() {
            return Err(Error::CheckFailed(String::from("restriction basis is linearly dependent")));
        }
        let mut degrees = Vec::with_capacity(basis.len());
        for v in basis {
            degrees.push(self.degree_of(v).ok_or_else(|| Error::CheckFailed(String::from("restriction basis is not homogeneous")))?);
        }
        let coords = Coordinates::new(basis, self.dim())?;
        let unit_c = coords.of(unit).ok_or_else(|| Error::CheckFailed(String::from("unit outside the subspace")))?;
        let mut products = Vec::with_capacity(basis.len() * basis.len());
        for a in basis {
            for b in basis {
                let p = self.mul(a, b);
                products.push(coords.of(&p).ok_or_else(|| Error::CheckFailed(String::from("subspace is not closed under multiplication")))?);
            }
        }
        GradedAlgebra::new(labels, products, unit_c, self.rank, degrees)
    }
}

/// Renders `sum v_k label_k` with signs pulled out of rational coefficients.
pub fn render_combination(labels: &[String], v: &[Scalar]) -> String {
    let mut s = String::new();
    for (k, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let label = &labels[k];
        let is_unit_label = label == "1";
        let (neg, mag) = match c.as_rational() {
            Some(q) if q < crate::exactlin::Rational::from_integer(0.into()) => (true, -c),
            Some(_) => (false, c.clone()),
            None => (false, c.clone()),
        };
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let term = if mag.is_one() {
            label.clone()
        } else if mag.as_rational().is_some() {
            if is_unit_label {
                format!("{mag}")
            } else {
                format!("{mag}*{label}")
            }
        } else if is_unit_label {
            format!("({mag})")
        } else {
            format!("({mag})*{label}")
        };
        s.push_str(&term);
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

/// Solves for coordinates in a fixed, linearly independent family of vectors.
#[derive(Clone, Debug)]
pub struct Coordinates {
    /// RREF of the family augmented with an identity block.
    span: Subspace,
    basis_len: usize,
    ambient: usize,
}

impl Coordinates {
    pub fn new(basis: &[Vector], ambient: usize) -> Result<Self> {
        let m = basis.len();
        let rows: Vec<Vector> = basis
            .iter()
            .enumerate()
            .map(|(k, v)| {
                let mut r = v.clone();
                r.extend(unit_vec(m, k));
                r
            })
            .collect();
        for v in basis {
            if v.len() != ambient {
                return Err(Error::DimensionMismatch { expected: ambient, found: v.len() });
            }
        }
        Ok(Coordinates { span: Subspace::span(ambient + m, &rows)?, basis_len: m, ambient })
    }

    /// Coefficients `c` with `sum c_k basis_k = v`, when `v` lies in the span.
    pub fn of(&self, v: &[Scalar]) -> Option<Vector> {
        let mut x = v.to_vec();
        x.extend(zero_vec(self.basis_len));
        let r = self.span.reduce(&x);
        if !is_zero_vec(&r[..self.ambient]) {
            return None;
        }
        Some(r[self.ambient..].iter().map(|c| -c).collect())
    }
}

/// `sum c * v` over sparse vectors, sorted by index with zeros dropped.
fn sparse_sum<'a>(terms: impl Iterator<Item = (&'a Scalar, &'a [(usize, Scalar)])>) -> Vec<(usize, Scalar)> {
    let mut acc: Vec<(usize, Scalar)> = Vec::new();
    for (c, v) in terms {
        for (k, x) in v {
            let t = c * x;
            match acc.iter_mut().find(|(m, _)| m == k) {
                Some((_, y)) => *y += &t,
                None => acc.push((*k, t)),
            }
        }
    }
    acc.retain(|(_, x)| !x.is_zero());
    acc.sort_by_key(|(k, _)| *k);
    acc
}

/// First failing index tuples of the algebra axioms; all `None` means the algebra is valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AlgebraReport {
    pub associativity: Option<(usize, usize, usize)>,
    pub unit: Option<usize>,
    pub grading: Option<(usize, usize)>,
}

impl AlgebraReport {
    pub fn passed(&self) -> bool {
        self.associativity.is_none() && self.unit.is_none() && self.grading.is_none()
    }
}

/// Checks associativity, the unit axioms and homogeneity of the structure constants.
pub fn verify_algebra(a: &GradedAlgebra) -> AlgebraReport {
    let n = a.dim();
    let mut rep = AlgebraReport::default();
    'outer: for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let left = sparse_sum(a.product_basis(i, j).iter().map(|(m, c)| (c, a.product_basis(*m, k))));
                let right = sparse_sum(a.product_basis(j, k).iter().map(|(m, c)| (c, a.product_basis(i, *m))));
                if left != right {
                    rep.associativity = Some((i, j, k));
                    break 'outer;
                }
            }
        }
    }
    for i in 0..n {
        let e = a.basis_vec(i);
        if a.mul(a.unit(), &e) != e || a.mul(&e, a.unit()) != e {
            rep.unit = Some(i);
            break;
        }
    }
    'grading: for i in 0..n {
        for j in 0..n {
            let d = a.degree(i) ^ a.degree(j);
            if a.product_basis(i, j).iter().any(|(k, _)| a.degree(*k) != d) {
                rep.grading = Some((i, j));
                break 'grading;
            }
        }
    }
    rep
}

/// Product algebra `A x B` on the concatenated basis, labels wrapped as pairs.
pub fn direct_product(a: &GradedAlgebra, b: &GradedAlgebra) -> Result<GradedAlgebra> {
    if a.rank() != b.rank() {
        return Err(Error::CheckFailed(String::from("factors carry different grading groups")));
    }
    let (n, m) = (a.dim(), b.dim());
    let labels = a.labels().iter().map(|l| format!("({l},0)")).chain(b.labels().iter().map(|l| format!("(0,{l})"))).collect();
    let mut unit = a.unit().clone();
    unit.extend(b.unit().iter().cloned());
    let degrees = a.degrees().iter().chain(b.degrees()).cloned().collect();
    GradedAlgebra::from_fn(
        labels,
        |i, j| {
            let mut v = zero_vec(n + m);
            if i < n && j < n {
                for (k, c) in a.product_basis(i, j) {
                    v[*k] = c.clone();
                }
            } else if i >= n && j >= n {
                for (k, c) in b.product_basis(i - n, j - n) {
                    v[n + *k] = c.clone();
                }
            }
            v
        },
        unit,
        a.rank(),
        degrees,
    )
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub fn labels(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| String::from(*s)).collect()
    }

    /// `M_2(K)` on `E11, E12, E21, E22`, trivially graded.
    pub fn m2() -> GradedAlgebra {
        GradedAlgebra::from_fn(
            labels(&["E11", "E12", "E21", "E22"]),
            |i, j| {
                let (a, b) = (i / 2, i % 2);
                let (c, d) = (j / 2, j % 2);
                if b == c {
                    unit_vec(4, 2 * a + d)
                } else {
                    zero_vec(4)
                }
            },
            alloc::vec![Scalar::one(), Scalar::zero(), Scalar::zero(), Scalar::one()],
            1,
            alloc::vec![0; 4],
        )
        .unwrap()
    }

    /// `K[x]/(x^2 - c)` on `1, x` with parity grading.
    pub fn quadratic_ext(c: Scalar) -> GradedAlgebra {
        GradedAlgebra::from_fn(
            labels(&["1", "x"]),
            |i, j| match (i, j) {
                (0, k) | (k, 0) => unit_vec(2, k),
                _ => alloc::vec![c.clone(), Scalar::zero()],
            },
            unit_vec(2, 0),
            1,
            alloc::vec![0, 1],
        )
        .unwrap()
    }

    #[test]
    fn matrix_algebra_is_valid() {
        assert!(verify_algebra(&m2()).passed());
    }

    #[test]
    fn perturbed_constants_fail_at_origin() {
        let a = m2();
        let b = GradedAlgebra::from_fn(
            a.labels().to_vec(),
            |i, j| {
                let mut v = a.product_basis_dense(i, j);
                if (i, j) == (0, 0) {
                    v[1] = Scalar::one();
                }
                v
            },
            a.unit().clone(),
            1,
            a.degrees().to_vec(),
        )
        .unwrap();
        assert_eq!(verify_algebra(&b).associativity, Some((0, 0, 0)));
    }

    #[test]
    fn rendering() {
        let a = quadratic_ext(Scalar::one());
        assert_eq!(a.render(&[Scalar::one(), Scalar::int(-1)]), "1 - x");
        assert_eq!(a.render(&[Scalar::zero(), Scalar::frac(1, 2)]), "1/2*x");
        assert_eq!(a.render(&[Scalar::int(-2), Scalar::zero()]), "-2");
        assert_eq!(a.render(&zero_vec(2)), "0");
    }

    #[test]
    fn product_of_fields() {
        let k = GradedAlgebra::new(labels(&["1"]), alloc::vec![unit_vec(1, 0)], unit_vec(1, 0), 1, alloc::vec![0]).unwrap();
        let kk = direct_product(&k, &k).unwrap();
        assert!(verify_algebra(&kk).passed());
        assert_eq!(kk.dim(), 2);
        assert!(kk.is_commutative());
    }
}
