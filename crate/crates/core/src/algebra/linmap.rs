//! Linear maps between graded algebras, stored as matrices in the basis.

use alloc::vec::Vec;

use super::{Degree, GradedAlgebra};
use crate::error::{Error, Result};
use crate::exactlin::{Matrix, Scalar, Vector};

/// `matrix` is `dim(target) x dim(source)`; column `j` is the image of `b_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedLinMap {
    pub matrix: Matrix,
    pub shift: Degree,
}

impl GradedLinMap {
    pub fn new(matrix: Matrix, shift: Degree) -> Self {
        GradedLinMap { matrix, shift }
    }

    pub fn identity(n: usize) -> Self {
        GradedLinMap::new(Matrix::identity(n), 0)
    }

    pub fn zero(target: usize, source: usize) -> Self {
        GradedLinMap::new(Matrix::zero(target, source), 0)
    }

    /// Map whose image of `b_j` is `images[j]`.
    pub fn from_images(images: &[Vector], target_dim: usize, shift: Degree) -> Result<Self> {
        Ok(GradedLinMap::new(Matrix::from_columns(images, target_dim)?, shift))
    }

    pub fn source_dim(&self) -> usize {
        self.matrix.cols
    }

    pub fn target_dim(&self) -> usize {
        self.matrix.rows
    }

    pub fn apply(&self, v: &[Scalar]) -> Vector {
        self.matrix.apply(v)
    }

    /// Image of the basis element `b_j`.
    pub fn image(&self, j: usize) -> Vector {
        self.matrix.column(j)
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &GradedLinMap) -> GradedLinMap {
        GradedLinMap::new(self.matrix.mul(&other.matrix), self.shift ^ other.shift)
    }

    pub fn add(&self, other: &GradedLinMap) -> GradedLinMap {
        GradedLinMap::new(self.matrix.add(&other.matrix), self.shift)
    }

    pub fn sub(&self, other: &GradedLinMap) -> GradedLinMap {
        GradedLinMap::new(self.matrix.sub(&other.matrix), self.shift)
    }

    pub fn scale(&self, c: &Scalar) -> GradedLinMap {
        GradedLinMap::new(self.matrix.scale(c), self.shift)
    }

    pub fn inverse(&self) -> Option<GradedLinMap> {
        self.matrix.inverse().map(|m| GradedLinMap::new(m, self.shift))
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.rows == self.matrix.cols && self.matrix == Matrix::identity(self.matrix.rows)
    }

    /// Whether every `b_j` lands in the component of degree `deg b_j + shift`.
    pub fn respects_grading(&self, source: &GradedAlgebra, target: &GradedAlgebra) -> bool {
        (0..self.source_dim()).all(|j| {
            let d = source.degree(j) ^ self.shift;
            (0..self.target_dim()).all(|r| self.matrix[(r, j)].is_zero() || target.degree(r) == d)
        })
    }

    /// First basis pair `(i, j)` with `f(b_i b_j) != f(b_i) f(b_j)`.
    pub fn multiplicativity_failure(&self, source: &GradedAlgebra, target: &GradedAlgebra) -> Option<(usize, usize)> {
        let images: Vec<Vector> = (0..self.source_dim()).map(|j| self.image(j)).collect();
        for i in 0..source.dim() {
            for j in 0..source.dim() {
                let lhs = self.apply(&source.product_basis_dense(i, j));
                if lhs != target.mul(&images[i], &images[j]) {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

/// `b_i -> k^d b_i` where `d` is the total degree of `b_i` read in `{0, 1}`.
pub fn xi_automorphism(a: &GradedAlgebra, k: &Scalar) -> Result<GradedLinMap> {
    if k.is_zero() {
        return Err(Error::ZeroScale);
    }
    let mut m = Matrix::zero(a.dim(), a.dim());
    for i in 0..a.dim() {
        let d = a.degree(i).count_ones() % 2;
        m[(i, i)] = if d == 1 { k.clone() } else { Scalar::one() };
    }
    Ok(GradedLinMap::new(m, 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tests::quadratic_ext;

    #[test]
    fn xi_examples() {
        let a = quadratic_ext(Scalar::one());
        assert!(xi_automorphism(&a, &Scalar::one()).unwrap().is_identity());
        let xi = xi_automorphism(&a, &Scalar::int(-1)).unwrap();
        assert_eq!(xi.apply(&[Scalar::one(), Scalar::one()]), alloc::vec![Scalar::one(), Scalar::int(-1)]);
        assert!(xi.compose(&xi).is_identity());
        assert!(xi.multiplicativity_failure(&a, &a).is_none());
        assert!(xi.respects_grading(&a, &a));
        assert_eq!(xi_automorphism(&a, &Scalar::zero()), Err(Error::ZeroScale));
    }
}
