//! Right modules given by the action of every basis element, acting on row vectors.

use alloc::vec::Vec;

use super::structure::radical;
use super::GradedAlgebra;
use crate::error::{Error, Result};
use crate::exactlin::matrix::is_zero_vec;
use crate::exactlin::{nullspace, Matrix, Scalar, Subspace, Vector};

/// `m . b_i = m * action[i]` for row vectors `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RightModule {
    dim: usize,
    action: Vec<Matrix>,
}

impl RightModule {
    pub fn new(dim: usize, action: Vec<Matrix>) -> Result<Self> {
        for m in &action {
            if m.rows != dim || m.cols != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: m.rows });
            }
        }
        Ok(RightModule { dim, action })
    }

    /// `A` acting on itself by right multiplication.
    pub fn regular(a: &GradedAlgebra) -> Self {
        let n = a.dim();
        let action = (0..n)
            .map(|i| {
                let rows: Vec<Vector> = (0..n).map(|r| a.product_basis_dense(r, i)).collect();
                Matrix::from_rows(&rows, n).expect("square")
            })
            .collect();
        RightModule { dim: n, action }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self, i: usize) -> &Matrix {
        &self.action[i]
    }

    /// `m . a` for an algebra element in coordinates.
    pub fn act(&self, m: &[Scalar], a: &[Scalar]) -> Vector {
        let mut out = alloc::vec![Scalar::zero(); self.dim];
        for (i, c) in a.iter().enumerate() {
            if !c.is_zero() {
                let v = self.action[i].apply_left(m);
                for (o, x) in out.iter_mut().zip(&v) {
                    *o += &(c * x);
                }
            }
        }
        out
    }

    /// Whether `action(b_i) action(b_j) = action(b_i b_j)` and the unit acts as the identity.
    pub fn is_valid_for(&self, a: &GradedAlgebra) -> bool {
        if self.action.len() != a.dim() {
            return false;
        }
        let mut unit = Matrix::zero(self.dim, self.dim);
        for (k, c) in a.unit().iter().enumerate() {
            unit = unit.add(&self.action[k].scale(c));
        }
        if unit != Matrix::identity(self.dim) {
            return false;
        }
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let mut rhs = Matrix::zero(self.dim, self.dim);
                for (k, c) in a.product_basis(i, j) {
                    rhs = rhs.add(&self.action[*k].scale(c));
                }
                if self.action[i].mul(&self.action[j]) != rhs {
                    return false;
                }
            }
        }
        true
    }

    /// The module structure on an invariant subspace, in the subspace's echelon basis.
    pub fn submodule(&self, s: &Subspace) -> Result<RightModule> {
        let b = s.basis();
        let mut action = Vec::with_capacity(self.action.len());
        for m in &self.action {
            let rows = b
                .iter()
                .map(|v| s.coordinates(&m.apply_left(v)).ok_or_else(|| Error::CheckFailed(alloc::string::String::from("subspace is not invariant"))))
                .collect::<Result<Vec<_>>>()?;
            action.push(Matrix::from_rows(&rows, b.len())?);
        }
        RightModule::new(b.len(), action)
    }
}

/// Smallest invariant subspace containing the seeds.
pub fn spin(m: &RightModule, seeds: &[Vector]) -> Subspace {
    let mut span = Subspace::span(m.dim, seeds).expect("seed length");
    let mut frontier: Vec<Vector> = span.basis().to_vec();
    while let Some(v) = frontier.pop() {
        for a in &m.action {
            let w = a.apply_left(&v);
            if !span.contains(&w) {
                span = span.sum(&Subspace::span(m.dim, core::slice::from_ref(&w)).expect("length"));
                frontier.push(w);
            }
        }
    }
    span
}

/// Burnside criterion: the action matrices span all `dim x dim` matrices.
pub fn is_absolutely_simple(m: &RightModule) -> bool {
    if m.dim == 0 {
        return false;
    }
    let rows: Vec<Vector> = m.action.iter().map(|a| a.entries().to_vec()).collect();
    Subspace::span(m.dim * m.dim, &rows).expect("length").dim() == m.dim * m.dim
}

/// Dimension of `{F : A_i^M F = F A_i^N for all i}`.
pub fn hom_dim(m: &RightModule, n: &RightModule) -> usize {
    let (p, q) = (m.dim, n.dim);
    let unknowns = p * q;
    let mut rows = Vec::new();
    for (am, an) in m.action.iter().zip(&n.action) {
        // entry (r, c) of A^M F - F A^N; F[s][t] is unknown s * q + t
        for r in 0..p {
            for c in 0..q {
                let mut row = alloc::vec![Scalar::zero(); unknowns];
                for s in 0..p {
                    let x = &am[(r, s)];
                    if !x.is_zero() {
                        row[s * q + c] += x;
                    }
                }
                for t in 0..q {
                    let x = &an[(t, c)];
                    if !x.is_zero() {
                        row[r * q + t] -= x;
                    }
                }
                if !is_zero_vec(&row) {
                    rows.push(row);
                }
            }
        }
    }
    let mat = Matrix::from_rows(&rows, unknowns).expect("length");
    nullspace(&mat).dim()
}

/// Radical zero, absolutely simple pairwise non-isomorphic summands with the given
/// multiplicities in the regular module, and a matching dimension count.
pub fn verify_decomposition(a: &GradedAlgebra, simples: &[RightModule], mults: &[usize]) -> bool {
    if simples.len() != mults.len() || radical(a).dim() != 0 {
        return false;
    }
    if !simples.iter().all(|s| s.is_valid_for(a) && is_absolutely_simple(s)) {
        return false;
    }
    for i in 0..simples.len() {
        for j in i + 1..simples.len() {
            if hom_dim(&simples[i], &simples[j]) != 0 {
                return false;
            }
        }
    }
    let reg = RightModule::regular(a);
    if simples.iter().zip(mults).any(|(s, &k)| hom_dim(s, &reg) != k) {
        return false;
    }
    simples.iter().zip(mults).map(|(s, &k)| s.dim * k).sum::<usize>() == a.dim()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::direct_product;
    use crate::algebra::tests::{labels, m2};
    use crate::exactlin::matrix::{unit_vec, zero_vec};

    fn k() -> GradedAlgebra {
        GradedAlgebra::new(labels(&["1"]), alloc::vec![unit_vec(1, 0)], unit_vec(1, 0), 1, alloc::vec![0]).unwrap()
    }

    #[test]
    fn regular_module_is_valid() {
        let a = m2();
        assert!(RightModule::regular(&a).is_valid_for(&a));
    }

    #[test]
    fn spinning() {
        let a = m2();
        let reg = RightModule::regular(&a);
        assert_eq!(spin(&reg, &[zero_vec(4)]).dim(), 0);
        assert_eq!(spin(&reg, &[a.unit().clone()]).dim(), 4);
        // E11 spans the first row E11, E12
        let row = spin(&reg, &[unit_vec(4, 0)]);
        assert_eq!(row.dim(), 2);
        let sub = reg.submodule(&row).unwrap();
        assert!(sub.is_valid_for(&a));
        assert!(is_absolutely_simple(&sub));
        assert_eq!(hom_dim(&sub, &sub), 1);
        assert_eq!(hom_dim(&sub, &reg), 2);
        assert!(verify_decomposition(&a, &[sub], &[2]));
    }

    #[test]
    fn split_commutative() {
        let kk = direct_product(&k(), &k()).unwrap();
        let reg = RightModule::regular(&kk);
        assert!(!is_absolutely_simple(&reg));
        let s1 = reg.submodule(&spin(&reg, &[unit_vec(2, 0)])).unwrap();
        let s2 = reg.submodule(&spin(&reg, &[unit_vec(2, 1)])).unwrap();
        assert!(is_absolutely_simple(&s1));
        assert_eq!(hom_dim(&s1, &s2), 0);
        assert!(verify_decomposition(&kk, &[s1.clone(), s2.clone()], &[1, 1]));
        assert!(!verify_decomposition(&kk, &[s1, s2], &[2, 1]));
    }
}
