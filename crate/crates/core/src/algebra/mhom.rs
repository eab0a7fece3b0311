//! 2x2 tables of linear maps `E -> E`, read as maps `E -> M_2(E)`.

use super::GradedAlgebra;
use crate::error::{Error, Result};
use crate::exactlin::{Matrix, Scalar, Vector};

/// `entries[i][j]` is the matrix of the `(i, j)` component map in the basis of `E`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixHom {
    pub entries: [[Matrix; 2]; 2],
}

impl MatrixHom {
    pub fn new(entries: [[Matrix; 2]; 2]) -> Result<Self> {
        let n = entries[0][0].rows;
        for row in &entries {
            for m in row {
                if m.rows != n || m.cols != n {
                    return Err(Error::DimensionMismatch { expected: n, found: if m.rows != n { m.rows } else { m.cols } });
                }
            }
        }
        Ok(MatrixHom { entries })
    }

    pub fn diagonal(a: Matrix, b: Matrix) -> Result<Self> {
        let n = a.rows;
        MatrixHom::new([[a, Matrix::zero(n, n)], [Matrix::zero(n, n), b]])
    }

    pub fn identity(n: usize) -> Self {
        MatrixHom::diagonal(Matrix::identity(n), Matrix::identity(n)).expect("square")
    }

    pub fn dim(&self) -> usize {
        self.entries[0][0].rows
    }

    pub fn entry(&self, i: usize, j: usize) -> &Matrix {
        &self.entries[i][j]
    }

    /// The four images of `x`, indexed like the table.
    pub fn apply(&self, x: &[Scalar]) -> [[Vector; 2]; 2] {
        [[self.entries[0][0].apply(x), self.entries[0][1].apply(x)], [self.entries[1][0].apply(x), self.entries[1][1].apply(x)]]
    }

    /// The `2n x 2n` block matrix with block `(i, j)` equal to entry `(i, j)`.
    pub fn block(&self) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zero(2 * n, 2 * n);
        for bi in 0..2 {
            for bj in 0..2 {
                let e = &self.entries[bi][bj];
                for r in 0..n {
                    for c in 0..n {
                        m[(bi * n + r, bj * n + c)] = e[(r, c)].clone();
                    }
                }
            }
        }
        m
    }

    pub fn from_block(m: &Matrix) -> Self {
        let n = m.rows / 2;
        let blk = |bi: usize, bj: usize| {
            let mut e = Matrix::zero(n, n);
            for r in 0..n {
                for c in 0..n {
                    e[(r, c)] = m[(bi * n + r, bj * n + c)].clone();
                }
            }
            e
        };
        MatrixHom { entries: [[blk(0, 0), blk(0, 1)], [blk(1, 0), blk(1, 1)]] }
    }

    /// Swaps entries `(0, 1)` and `(1, 0)` without transposing them.
    pub fn block_transpose(&self) -> Self {
        let e = &self.entries;
        MatrixHom { entries: [[e[0][0].clone(), e[1][0].clone()], [e[0][1].clone(), e[1][1].clone()]] }
    }

    /// Entry-wise `entry_ij` after `f`.
    pub fn after(&self, f: &Matrix) -> Self {
        let e = &self.entries;
        MatrixHom { entries: [[e[0][0].mul(f), e[0][1].mul(f)], [e[1][0].mul(f), e[1][1].mul(f)]] }
    }

    /// Entry-wise `f` after `entry_ij`.
    pub fn before(&self, f: &Matrix) -> Self {
        let e = &self.entries;
        MatrixHom { entries: [[f.mul(&e[0][0]), f.mul(&e[0][1])], [f.mul(&e[1][0]), f.mul(&e[1][1])]] }
    }

    /// Values at the unit of `a` as a `2 x 2` scalar matrix, when every entry sends `1` into `K 1`.
    pub fn at_unit(&self, a: &GradedAlgebra) -> Option<Matrix> {
        let one = a.unit();
        let p = one.iter().position(|c| !c.is_zero())?;
        let mut m = Matrix::zero(2, 2);
        for i in 0..2 {
            for j in 0..2 {
                let v = self.entries[i][j].apply(one);
                let c = v[p].checked_div(&one[p]).ok()?;
                if one.iter().zip(&v).any(|(u, w)| &(u * &c) != w) {
                    return None;
                }
                m[(i, j)] = c;
            }
        }
        Some(m)
    }
}

/// Whether `s_ij(xy) = sum_k s_ik(x) s_kj(y)` on all basis pairs.
pub fn verify_hom_m2(a: &GradedAlgebra, s: &MatrixHom) -> bool {
    let n = a.dim();
    if s.dim() != n {
        return false;
    }
    let cols: [[alloc::vec::Vec<Vector>; 2]; 2] = core::array::from_fn(|i| core::array::from_fn(|j| (0..n).map(|b| s.entries[i][j].column(b)).collect()));
    for x in 0..n {
        for y in 0..n {
            let xy = a.product_basis_dense(x, y);
            for i in 0..2 {
                for j in 0..2 {
                    let lhs = s.entries[i][j].apply(&xy);
                    let mut rhs = a.mul(&cols[i][0][x], &cols[0][j][y]);
                    let t = a.mul(&cols[i][1][x], &cols[1][j][y]);
                    for (r, v) in rhs.iter_mut().zip(&t) {
                        *r += v;
                    }
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// The inverse `p` of `s`: `sum_k s_ki p_kj = delta_ij id` and `sum_k p_jk s_ik = delta_ij id`.
pub fn invert_hom(s: &MatrixHom) -> Result<MatrixHom> {
    let inv = s.block_transpose().block().inverse().ok_or(Error::NotInvertible)?;
    Ok(MatrixHom::from_block(&inv))
}

/// The t-inverse `p` of `t`: `sum_k p_ki t_kj = delta_ij id` and `sum_k t_jk p_ik = delta_ij id`.
pub fn t_invert_hom(t: &MatrixHom) -> Result<MatrixHom> {
    let inv = t.block().inverse().ok_or(Error::NotInvertible)?;
    Ok(MatrixHom::from_block(&inv).block_transpose())
}

/// Checks the two defining identities of "`p` is the inverse of `s`" entry by entry.
pub fn is_inverse_pair(s: &MatrixHom, p: &MatrixHom) -> bool {
    let n = s.dim();
    let id = Matrix::identity(n);
    let zero = Matrix::zero(n, n);
    (0..2).all(|i| {
        (0..2).all(|j| {
            let target = if i == j { &id } else { &zero };
            let a = s.entries[0][i].mul(&p.entries[0][j]).add(&s.entries[1][i].mul(&p.entries[1][j]));
            let b = p.entries[j][0].mul(&s.entries[i][0]).add(&p.entries[j][1].mul(&s.entries[i][1]));
            &a == target && &b == target
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tests::quadratic_ext;
    use crate::algebra::xi_automorphism;

    #[test]
    fn diagonal_homs() {
        let a = quadratic_ext(Scalar::one());
        assert!(verify_hom_m2(&a, &MatrixHom::identity(2)));
        let xi = xi_automorphism(&a, &Scalar::int(-1)).unwrap().matrix;
        let s = MatrixHom::diagonal(Matrix::identity(2), xi.clone()).unwrap();
        assert!(verify_hom_m2(&a, &s));
        // moving xi off the diagonal breaks the identity on (x, x)
        let z = Matrix::zero(2, 2);
        let bad = MatrixHom::new([[Matrix::identity(2), xi], [z.clone(), z]]).unwrap();
        assert!(!verify_hom_m2(&a, &bad));
    }

    #[test]
    fn inverses() {
        let id = MatrixHom::identity(3);
        assert_eq!(t_invert_hom(&id).unwrap(), id);
        assert_eq!(invert_hom(&id).unwrap(), id);
        let z = Matrix::zero(2, 2);
        let nil = MatrixHom::new([[z.clone(), z.clone()], [Matrix::identity(2), Matrix::identity(2)]]).unwrap();
        assert_eq!(t_invert_hom(&nil), Err(Error::NotInvertible));
    }

    #[test]
    fn inverse_and_t_inverse_are_transposed_roles() {
        // s = [[a, b], [0, a]] with a = 2 id, b = id on a 1-dim space
        let m = |c: i64| Matrix::scalar_identity(1, &Scalar::int(c));
        let s = MatrixHom::new([[m(2), m(1)], [m(0), m(3)]]).unwrap();
        let p = invert_hom(&s).unwrap();
        assert!(is_inverse_pair(&s, &p));
        // s is then the t-inverse of p
        assert_eq!(t_invert_hom(&p).unwrap(), s);
    }
}
