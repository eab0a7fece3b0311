//! Dense exact matrices, row reduction and subspaces.

use alloc::vec;
use alloc::vec::Vec;

use super::scalar::Scalar;
use crate::error::{Error, Result};

pub type Vector = Vec<Scalar>;

pub fn zero_vec(n: usize) -> Vector {
    vec![Scalar::zero(); n]
}

pub fn unit_vec(n: usize, k: usize) -> Vector {
    let mut v = zero_vec(n);
    v[k] = Scalar::one();
    v
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

pub fn add_vec(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vec(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vec(c: &Scalar, a: &[Scalar]) -> Vector {
    if c.is_zero() {
        return zero_vec(a.len());
    }
    a.iter().map(|x| if x.is_zero() { Scalar::zero() } else { c * x }).collect()
}

/// `acc += c * a`
pub fn axpy(acc: &mut [Scalar], c: &Scalar, a: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (t, x) in acc.iter_mut().zip(a) {
        if !x.is_zero() {
            *t += &(c * x);
        }
    }
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut s = Scalar::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += &(x * y);
        }
    }
    s
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for k in 0..n {
            m[(k, k)] = Scalar::one();
        }
        m
    }

    pub fn scalar_identity(n: usize, c: &Scalar) -> Self {
        let mut m = Self::zero(n, n);
        for k in 0..n {
            m[(k, k)] = c.clone();
        }
        m
    }

    pub fn from_rows(rows: &[Vector], cols: usize) -> Result<Self> {
        let mut m = Self::zero(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: row.len() });
            }
            m.data[r * cols..(r + 1) * cols].clone_from_slice(row);
        }
        Ok(m)
    }

    /// Builds the matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vector], rows: usize) -> Result<Self> {
        let mut m = Self::zero(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::DimensionMismatch { expected: rows, found: col.len() });
            }
            for (r, x) in col.iter().enumerate() {
                m[(r, c)] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vector> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.data)
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "matrix product shape");
        let mut out = Matrix::zero(self.rows, o.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..o.cols {
                    let b = &o[(k, c)];
                    if !b.is_zero() {
                        let t = a * b;
                        out[(r, c)] += &t;
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Scalar]) -> Vector {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        let mut out = zero_vec(self.rows);
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (r, o) in out.iter_mut().enumerate() {
                let a = &self[(r, c)];
                if !a.is_zero() {
                    *o += &(a * x);
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn apply_left(&self, v: &[Scalar]) -> Vector {
        assert_eq!(self.rows, v.len(), "vector-matrix shape");
        let mut out = zero_vec(self.cols);
        for (r, x) in v.iter().enumerate() {
            if !x.is_zero() {
                axpy(&mut out, x, self.row(r));
            }
        }
        out
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix { rows: self.rows, cols: self.cols, data: add_vec(&self.data, &o.data) }
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix { rows: self.rows, cols: self.cols, data: sub_vec(&self.data, &o.data) }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: scale_vec(c, &self.data) }
    }

    /// Entries flattened row by row.
    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..self.cols {
            if lead == self.rows {
                break;
            }
            let Some(p) = (lead..self.rows).find(|&r| !self[(r, c)].is_zero()) else { continue };
            if p != lead {
                for k in 0..self.cols {
                    self.data.swap(p * self.cols + k, lead * self.cols + k);
                }
            }
            let inv = self[(lead, c)].inv().expect("nonzero pivot");
            for k in c..self.cols {
                if !self[(lead, k)].is_zero() {
                    self[(lead, k)] = &self[(lead, k)] * &inv;
                }
            }
            let pivot_row: Vector = self.row(lead)[c..].to_vec();
            for r in 0..self.rows {
                if r == lead || self[(r, c)].is_zero() {
                    continue;
                }
                let f = self[(r, c)].clone();
                for (off, x) in pivot_row.iter().enumerate() {
                    if !x.is_zero() {
                        let t = &f * x;
                        self[(r, c + off)] -= &t;
                    }
                }
            }
            pivots.push(c);
            lead += 1;
        }
        self.data.truncate(lead * self.cols);
        self.rows = lead;
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref_in_place().len()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zero(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, n + r)] = Scalar::one();
        }
        let piv = aug.rref_in_place();
        if piv.len() < n || piv[n - 1] >= n {
            return None;
        }
        let mut inv = Matrix::zero(n, n);
        for r in 0..n {
            for c in 0..n {
                inv[(r, c)] = aug[(r, n + c)].clone();
            }
        }
        Some(inv)
    }

    /// Some solution `x` of `self * x = b`, if the system is consistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vector> {
        assert_eq!(self.rows, b.len());
        let mut aug = Matrix::zero(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, self.cols)] = b[r].clone();
        }
        let piv = aug.rref_in_place();
        if piv.last() == Some(&self.cols) {
            return None;
        }
        let mut x = zero_vec(self.cols);
        for (r, &p) in piv.iter().enumerate() {
            x[p] = aug[(r, self.cols)].clone();
        }
        Some(x)
    }
}

impl core::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        &self.data[r * self.cols + c]
    }
}

impl core::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Scalar {
        &mut self.data[r * self.cols + c]
    }
}

/// A linear subspace of K^n stored by its reduced row echelon basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, basis: (0..ambient).map(|k| unit_vec(ambient, k)).collect(), pivots: (0..ambient).collect() }
    }

    pub fn span(ambient: usize, vectors: &[Vector]) -> Result<Self> {
        let mut m = Matrix::from_rows(vectors, ambient)?;
        let pivots = m.rref_in_place();
        Ok(Subspace { ambient, basis: m.to_rows(), pivots })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Canonical coset representative of `v` modulo this subspace (pivot entries cleared).
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        let mut w = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if !w[p].is_zero() {
                let f = -&w[p];
                axpy(&mut w, &f, row);
            }
        }
        w
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        v.len() == self.ambient && is_zero_vec(&self.reduce(v))
    }

    /// Coefficients of `v` in the stored basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient, &all).expect("same ambient")
    }

    /// Complement with respect to the standard dot product.
    pub fn perp(&self) -> Subspace {
        let m = Matrix::from_rows(&self.basis, self.ambient).expect("well formed");
        nullspace(&m)
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        self.perp().sum(&other.perp()).perp()
    }
}

/// Row-reduces the given rows; returns the row space and its rank.
pub fn rref(rows: &[Vector], ambient: usize) -> Result<(Subspace, usize)> {
    let s = Subspace::span(ambient, rows)?;
    let r = s.dim();
    Ok((s, r))
}

/// Kernel `{v : M v = 0}` as a subspace in reduced echelon form.
pub fn nullspace(m: &Matrix) -> Subspace {
    let mut r = m.clone();
    let pivots = r.rref_in_place();
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    let mut vecs = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = zero_vec(m.cols);
        v[f] = Scalar::one();
        for (row, &p) in pivots.iter().enumerate() {
            v[p] = -&r[(row, f)];
        }
        vecs.push(v);
    }
    Subspace::span(m.cols, &vecs).expect("well formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| Scalar::int(x)).collect()
    }

    #[test]
    fn rref_examples() {
        let (s, r) = rref(&[row(&[1, 1]), row(&[2, 2])], 2).unwrap();
        assert_eq!(r, 1);
        assert_eq!(s.basis(), &[row(&[1, 1])]);
        let (s, r) = rref(&[], 3).unwrap();
        assert_eq!((r, s.ambient()), (0, 3));
        assert_eq!(rref(&[row(&[1, 2])], 3), Err(Error::DimensionMismatch { expected: 3, found: 2 }));
    }

    #[test]
    fn nullspace_examples() {
        assert_eq!(nullspace(&Matrix::identity(2)).dim(), 0);
        assert_eq!(nullspace(&Matrix::zero(1, 3)).dim(), 3);
        let pairing = Matrix::from_rows(&[row(&[0, 1, 1, 0])], 4).unwrap();
        let k = nullspace(&pairing);
        assert_eq!(k.dim(), 3);
        for v in k.basis() {
            assert!(is_zero_vec(&pairing.apply(v)));
        }
    }

    #[test]
    fn inverse_and_solve() {
        let m = Matrix::from_rows(&[row(&[2, 1]), row(&[1, 1])], 2).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        assert!(Matrix::from_rows(&[row(&[1, 2]), row(&[2, 4])], 2).unwrap().inverse().is_none());
        let x = m.solve(&row(&[3, 2])).unwrap();
        assert_eq!(x, row(&[1, 1]));
        let sing = Matrix::from_rows(&[row(&[1, 1]), row(&[1, 1])], 2).unwrap();
        assert!(sing.solve(&row(&[1, 2])).is_none());
    }

    #[test]
    fn intersection_and_sum() {
        let a = Subspace::span(3, &[row(&[1, 0, 0]), row(&[0, 1, 0])]).unwrap();
        let b = Subspace::span(3, &[row(&[0, 1, 0]), row(&[0, 0, 1])]).unwrap();
        assert_eq!(a.intersect(&b), Subspace::span(3, &[row(&[0, 1, 0])]).unwrap());
        assert_eq!(a.sum(&b), Subspace::full(3));
        assert_eq!(a.coordinates(&row(&[2, 3, 0])), Some(row(&[2, 3])));
        assert_eq!(a.coordinates(&row(&[0, 0, 1])), None);
    }
}
