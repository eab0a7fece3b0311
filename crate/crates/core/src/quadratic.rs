//! Quadratic algebras `T(V)/(R)`: graded dimensions, Koszul duals and centrality.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exactlin::matrix::{axpy, is_zero_vec, unit_vec, zero_vec};
use crate::exactlin::{nullspace, Matrix, Scalar, Subspace, TensorElement, Vector, Word};

/// Largest degree handled by graded computations unless a caller raises it.
pub const DEFAULT_DEGREE_BOUND: usize = 8;

/// Generators (all of degree 1) and a subspace of relations in `V (x) V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticPresentation {
    generators: Vec<String>,
    relations: Subspace,
}

impl QuadraticPresentation {
    pub fn new(generators: Vec<String>, relations: &[TensorElement]) -> Result<Self> {
        let n = generators.len();
        let rows = relations
            .iter()
            .map(|r| match r.homogeneous_degree() {
                Some(2) => r.to_coords(n, 2),
                None if r.is_zero() => Ok(zero_vec(n * n)),
                _ => Err(Error::NotQuadratic),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_subspace(generators, Subspace::span(n * n, &rows)?)
    }

    pub fn from_subspace(generators: Vec<String>, relations: Subspace) -> Result<Self> {
        for (k, g) in generators.iter().enumerate() {
            if generators[..k].contains(g) {
                return Err(Error::DuplicateGenerator(g.clone()));
            }
        }
        let n = generators.len();
        if relations.ambient() != n * n {
            return Err(Error::DimensionMismatch { expected: n * n, found: relations.ambient() });
        }
        Ok(QuadraticPresentation { generators, relations })
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn ngens(&self) -> usize {
        self.generators.len()
    }

    pub fn relations(&self) -> &Subspace {
        &self.relations
    }

    pub fn relation_elements(&self) -> Vec<TensorElement> {
        let n = self.ngens();
        self.relations.basis().iter().map(|v| TensorElement::from_coords(v, n, 2)).collect()
    }

    pub fn generator_index(&self, name: &str) -> Result<usize> {
        self.generators.iter().position(|g| g == name).ok_or_else(|| Error::UnknownGenerator(String::from(name)))
    }
}

/// A degree-2 lift `z^` of an element `z` in `A_2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralElement {
    pub lift: TensorElement,
}

impl CentralElement {
    pub fn new(lift: TensorElement) -> Result<Self> {
        match lift.homogeneous_degree() {
            Some(2) => Ok(CentralElement { lift }),
            None if lift.is_zero() => Ok(CentralElement { lift }),
            _ => Err(Error::NotQuadratic),
        }
    }
}

/// Degree-wise normal words of `T(V)/(R)` together with the reduction maps
/// `A_{n-1} (x) V -> A_n`, built one degree at a time.
#[derive(Clone, Debug)]
pub struct GradedQuotient {
    ngens: usize,
    levels: Vec<Level>,
}

#[derive(Clone, Debug)]
struct Level {
    normal: Vec<Word>,
    /// `step[a * ngens + g]` = coordinates of `normal_{n-1}[a] * g` in this level.
    step: Vec<Vector>,
}

impl GradedQuotient {
    pub fn new(p: &QuadraticPresentation, top: usize) -> Self {
        let n = p.ngens();
        let rels = p.relation_elements();
        let mut levels = alloc::vec![Level { normal: alloc::vec![Word::empty()], step: Vec::new() }];
        if top >= 1 {
            levels.push(Level { normal: (0..n).map(Word::letter).collect(), step: (0..n).map(|g| unit_vec(n, g)).collect() });
        }
        for deg in 2..=top {
            let prev = &levels[deg - 1];
            let prev2 = &levels[deg - 2];
            let m = prev.normal.len() * n;
            // Columns are candidate words a*g sorted deglex descending, so pivots land on large words.
            let mut cols: Vec<(Word, usize)> = (0..m).map(|k| (prev.normal[k / n].concat(&Word::letter(k % n)), k)).collect();
            cols.sort_by(|x, y| y.0.cmp(&x.0));
            let mut pos = alloc::vec![0; m];
            for (c, (_, k)) in cols.iter().enumerate() {
                pos[*k] = c;
            }
            let mut rows = Vec::new();
            for u in 0..prev2.normal.len() {
                for r in &rels {
                    let mut row = zero_vec(m);
                    for (w, c) in r.terms() {
                        let (b, g) = (w.letters()[0], w.letters()[1]);
                        let ub = &prev.step[u * n + b];
                        for (a, x) in ub.iter().enumerate() {
                            if !x.is_zero() {
                                row[pos[a * n + g]] += &(x * c);
                            }
                        }
                    }
                    if !is_zero_vec(&row) {
                        rows.push(row);
                    }
                }
            }
            let mut mat = Matrix::from_rows(&rows, m).expect("row length");
            let pivots = mat.rref_in_place();
            let free: Vec<usize> = (0..m).filter(|c| !pivots.contains(c)).collect();
            // Normal words in increasing deglex order.
            let mut normal_cols = free.clone();
            normal_cols.reverse();
            let normal: Vec<Word> = normal_cols.iter().map(|&c| cols[c].0.clone()).collect();
            let mut free_index = alloc::vec![usize::MAX; m];
            for (i, &c) in normal_cols.iter().enumerate() {
                free_index[c] = i;
            }
            let dim = normal.len();
            let mut step = alloc::vec![Vec::new(); m];
            for k in 0..m {
                let c = pos[k];
                step[k] = if free_index[c] != usize::MAX {
                    unit_vec(dim, free_index[c])
                } else {
                    let r = pivots.iter().position(|&p| p == c).expect("pivot row");
                    let mut v = zero_vec(dim);
                    for &f in &free {
                        let x = &mat[(r, f)];
                        if !x.is_zero() {
                            v[free_index[f]] = -x;
                        }
                    }
                    v
                };
            }
            levels.push(Level { normal, step });
        }
        GradedQuotient { ngens: n, levels }
    }

    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn dim(&self, n: usize) -> usize {
        self.levels[n].normal.len()
    }

    pub fn normal_words(&self, n: usize) -> &[Word] {
        &self.levels[n].normal
    }

    /// Coordinates of the class of a word in the normal-word basis of its degree.
    pub fn reduce_word(&self, w: &Word) -> Vector {
        let mut v = unit_vec(1, 0);
        for (d, &g) in w.letters().iter().enumerate() {
            let lvl = &self.levels[d + 1];
            let mut next = zero_vec(lvl.normal.len());
            for (a, x) in v.iter().enumerate() {
                if !x.is_zero() {
                    axpy(&mut next, x, &lvl.step[a * self.ngens + g]);
                }
            }
            v = next;
        }
        v
    }

    /// Class of a homogeneous element of degree `n`.
    pub fn reduce(&self, t: &TensorElement, n: usize) -> Result<Vector> {
        let mut v = zero_vec(self.dim(n));
        for (w, c) in t.terms() {
            if w.len() != n {
                return Err(Error::DegreeMismatch { left: n, right: w.len() });
            }
            axpy(&mut v, c, &self.reduce_word(w));
        }
        Ok(v)
    }

    /// The element of `T(V)` given by normal-word coordinates.
    pub fn lift(&self, v: &[Scalar], n: usize) -> TensorElement {
        TensorElement::from_terms(self.levels[n].normal.iter().cloned().zip(v.iter().cloned()))
    }
}

/// `dim A_n`.
pub fn graded_dim(p: &QuadraticPresentation, n: usize) -> usize {
    GradedQuotient::new(p, n).dim(n)
}

/// `[dim A_0, ..., dim A_top]` with the default degree bound.
pub fn hilbert_profile(p: &QuadraticPresentation, top: usize) -> Result<Vec<usize>> {
    hilbert_profile_bounded(p, top, DEFAULT_DEGREE_BOUND)
}

pub fn hilbert_profile_bounded(p: &QuadraticPresentation, top: usize, bound: usize) -> Result<Vec<usize>> {
    if top > bound {
        return Err(Error::BoundExceeded { requested: top, bound });
    }
    let q = GradedQuotient::new(p, top);
    Ok((0..=top).map(|n| q.dim(n)).collect())
}

/// The degree-`n` part `sum_i V^i R V^(n-2-i)` of the relation ideal, computed densely.
pub fn ideal_component(p: &QuadraticPresentation, n: usize) -> Subspace {
    let g = p.ngens();
    let total = g.pow(n as u32);
    if n < 2 {
        return Subspace::zero(total);
    }
    let mut rows = Vec::new();
    for r in p.relations.basis() {
        for i in 0..=n - 2 {
            let right = n - 2 - i;
            for u in 0..g.pow(i as u32) {
                for v in 0..g.pow(right as u32) {
                    let mut row = zero_vec(total);
                    for (k, c) in r.iter().enumerate() {
                        if !c.is_zero() {
                            let idx = (u * g * g + k) * g.pow(right as u32) + v;
                            row[idx] = c.clone();
                        }
                    }
                    rows.push(row);
                }
            }
        }
    }
    Subspace::span(total, &rows).expect("row length")
}

/// `A^! = T(V*)/(R^perp)`; dual names append `*` (or drop a trailing one).
pub fn koszul_dual(p: &QuadraticPresentation) -> QuadraticPresentation {
    let names = p
        .generators
        .iter()
        .map(|g| match g.strip_suffix('*') {
            Some(base) => String::from(base),
            None => format!("{g}*"),
        })
        .collect();
    let n = p.ngens();
    let m = Matrix::from_rows(p.relations.basis(), n * n).expect("row length");
    QuadraticPresentation { generators: names, relations: nullspace(&m) }
}

/// Whether `z^ v - v z^` lies in `R V + V R` for every generator `v`.
pub fn check_central(p: &QuadraticPresentation, z: &CentralElement) -> Result<bool> {
    let n = p.ngens();
    let i3 = ideal_component(p, 3);
    for g in 0..n {
        let v = TensorElement::word(Word::letter(g));
        let comm = z.lift.mul(&v).sub(&v.mul(&z.lift));
        if !i3.contains(&comm.to_coords(n, 3)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub fn w(v: &[usize]) -> TensorElement {
        TensorElement::word(Word(v.to_vec()))
    }

    pub fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| String::from(*s)).collect()
    }

    /// `k_{-1}[x1, x2]`
    pub fn skew_plane() -> QuadraticPresentation {
        QuadraticPresentation::new(names(&["x1", "x2"]), &[w(&[0, 1]).add(&w(&[1, 0]))]).unwrap()
    }

    fn free2() -> QuadraticPresentation {
        QuadraticPresentation::new(names(&["x", "y"]), &[]).unwrap()
    }

    #[test]
    fn graded_dims() {
        assert_eq!(graded_dim(&skew_plane(), 2), 3);
        assert_eq!(graded_dim(&skew_plane(), 0), 1);
        assert_eq!(hilbert_profile(&skew_plane(), 3).unwrap(), alloc::vec![1, 2, 3, 4]);
        assert_eq!(hilbert_profile(&koszul_dual(&skew_plane()), 3).unwrap(), alloc::vec![1, 2, 1, 0]);
        assert_eq!(hilbert_profile(&free2(), 2).unwrap(), alloc::vec![1, 2, 4]);
        assert_eq!(hilbert_profile(&free2(), 9), Err(Error::BoundExceeded { requested: 9, bound: 8 }));
    }

    #[test]
    fn dual_relations() {
        let d = koszul_dual(&skew_plane());
        assert_eq!(d.generators(), &names(&["x1*", "x2*"])[..]);
        let expected = Subspace::span(4, &[w(&[0, 0]).to_coords(2, 2).unwrap(), w(&[1, 1]).to_coords(2, 2).unwrap(), w(&[0, 1]).sub(&w(&[1, 0])).to_coords(2, 2).unwrap()]).unwrap();
        assert_eq!(d.relations(), &expected);
        assert_eq!(koszul_dual(&free2()).relations().dim(), 4);
        assert_eq!(koszul_dual(&d), skew_plane());
    }

    #[test]
    fn centrality() {
        let p = skew_plane();
        let z = CentralElement::new(w(&[0, 0]).add(&w(&[1, 1]))).unwrap();
        assert!(check_central(&p, &z).unwrap());
        // squares are central in the skew plane: x2 x1 x1 = -x1 x2 x1 = x1 x1 x2
        assert!(check_central(&p, &CentralElement::new(w(&[0, 0])).unwrap()).unwrap());
        assert!(!check_central(&p, &CentralElement::new(w(&[0, 1])).unwrap()).unwrap());
        let comm = QuadraticPresentation::new(names(&["x1", "x2"]), &[w(&[0, 1]).sub(&w(&[1, 0]))]).unwrap();
        for lift in [w(&[0, 1]), w(&[1, 1]).add(&w(&[1, 0]))] {
            assert!(check_central(&comm, &CentralElement::new(lift).unwrap()).unwrap());
        }
    }

    #[test]
    fn quotient_matches_dense_ideal() {
        for p in [skew_plane(), koszul_dual(&skew_plane()), free2()] {
            let q = GradedQuotient::new(&p, 5);
            for n in 0..=5 {
                let i = ideal_component(&p, n);
                assert_eq!(q.dim(n) + i.dim(), p.ngens().pow(n as u32), "degree {n}");
                // every word minus the lift of its class lies in the ideal
                for k in 0..p.ngens().pow(n as u32) {
                    let word = Word::from_index(k, n, p.ngens());
                    let diff = TensorElement::word(word.clone()).sub(&q.lift(&q.reduce_word(&word), n));
                    assert!(i.contains(&diff.to_coords(p.ngens(), n).unwrap()));
                }
            }
        }
    }
}
