//! Words in a tensor algebra and finite linear combinations of them.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::matrix::{zero_vec, Vector};
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// A word in the generators, ordered degree-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(g: usize) -> Self {
        Word(alloc::vec![g])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn concat(&self, o: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&o.0);
        Word(v)
    }

    /// Position of the first occurrence of `pat` as a contiguous subword.
    pub fn find(&self, pat: &Word) -> Option<usize> {
        if pat.len() > self.len() {
            return None;
        }
        (0..=self.len() - pat.len()).find(|&k| self.0[k..k + pat.len()] == pat.0[..])
    }

    pub fn ends_with(&self, pat: &Word) -> bool {
        self.0.ends_with(&pat.0)
    }

    pub fn slice(&self, from: usize, to: usize) -> Word {
        Word(self.0[from..to].to_vec())
    }

    /// Index among all words of the same length (base-`n` digits, most significant first).
    pub fn index(&self, n: usize) -> usize {
        self.0.iter().fold(0, |acc, &g| acc * n + g)
    }

    pub fn from_index(mut idx: usize, len: usize, n: usize) -> Word {
        let mut v = alloc::vec![0; len];
        for k in (0..len).rev() {
            v[k] = idx % n;
            idx /= n;
        }
        Word(v)
    }

    /// Renders the word by concatenating generator names; the empty word is `1`.
    pub fn render(&self, names: &[String]) -> String {
        if self.is_empty() {
            return String::from("1");
        }
        let mut s = String::new();
        for &g in &self.0 {
            s.push_str(&names[g]);
        }
        s
    }
}

impl Ord for Word {
    fn cmp(&self, o: &Self) -> Ordering {
        self.len().cmp(&o.len()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Finite linear combination of words; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct TensorElement {
    terms: BTreeMap<Word, Scalar>,
}

impl TensorElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn word(w: Word) -> Self {
        Self::term(w, Scalar::one())
    }

    pub fn term(w: Word, c: Scalar) -> Self {
        let mut t = Self::zero();
        t.add_term(w, &c);
        t
    }

    pub fn scalar(c: Scalar) -> Self {
        Self::term(Word::empty(), c)
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, Scalar)>>(it: I) -> Self {
        let mut t = Self::zero();
        for (w, c) in it {
            t.add_term(w, &c);
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: Word, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, c: &Scalar, o: &TensorElement) {
        if c.is_zero() {
            return;
        }
        for (w, x) in &o.terms {
            self.add_term(w.clone(), &(c * x));
        }
    }

    pub fn add(&self, o: &TensorElement) -> TensorElement {
        let mut t = self.clone();
        t.add_scaled(&Scalar::one(), o);
        t
    }

    pub fn sub(&self, o: &TensorElement) -> TensorElement {
        let mut t = self.clone();
        t.add_scaled(&Scalar::int(-1), o);
        t
    }

    pub fn scale(&self, c: &Scalar) -> TensorElement {
        let mut t = TensorElement::zero();
        t.add_scaled(c, self);
        t
    }

    /// Concatenation product.
    pub fn mul(&self, o: &TensorElement) -> TensorElement {
        let mut t = TensorElement::zero();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                t.add_term(a.concat(b), &(x * y));
            }
        }
        t
    }

    pub fn coefficient(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Terms in increasing deglex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn leading(&self) -> Option<(&Word, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Word::len).max()
    }

    /// The tensor degree when every term has the same length.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(Word::len);
        let d = it.next()?;
        it.all(|l| l == d).then_some(d)
    }

    /// Coordinates in the basis of all words of length `len` over `n` letters.
    pub fn to_coords(&self, n: usize, len: usize) -> Result<Vector> {
        let mut v = zero_vec(n.pow(len as u32));
        for (w, c) in &self.terms {
            if w.len() != len {
                return Err(Error::DegreeMismatch { left: len, right: w.len() });
            }
            v[w.index(n)] = c.clone();
        }
        Ok(v)
    }

    pub fn from_coords(v: &[Scalar], n: usize, len: usize) -> TensorElement {
        TensorElement::from_terms(v.iter().enumerate().map(|(k, c)| (Word::from_index(k, len, n), c.clone())))
    }
}

/// Evaluates `(f1 ... fn)(v1 ... vn) = f1(v1) ... fn(vn)` on dual and primal word bases.
pub fn pairing(dual: &TensorElement, primal: &TensorElement) -> Result<Scalar> {
    if let (Some(a), Some(b)) = (dual.degree(), primal.degree()) {
        let da = dual.homogeneous_degree().ok_or(Error::DegreeMismatch { left: a, right: b })?;
        let db = primal.homogeneous_degree().ok_or(Error::DegreeMismatch { left: a, right: b })?;
        if da != db {
            return Err(Error::DegreeMismatch { left: da, right: db });
        }
    }
    let mut s = Scalar::zero();
    for (w, c) in dual.terms() {
        let p = primal.coefficient(w);
        if !p.is_zero() {
            s += &(c * &p);
        }
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[usize]) -> TensorElement {
        TensorElement::word(Word(v.to_vec()))
    }

    #[test]
    fn deglex_order() {
        let mut v = alloc::vec![Word(alloc::vec![1, 0]), Word(alloc::vec![0]), Word::empty(), Word(alloc::vec![0, 1]), Word(alloc::vec![1])];
        v.sort();
        assert_eq!(v, alloc::vec![Word::empty(), Word(alloc::vec![0]), Word(alloc::vec![1]), Word(alloc::vec![0, 1]), Word(alloc::vec![1, 0])]);
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(pairing(&w(&[0, 1]), &w(&[0, 1])).unwrap(), Scalar::one());
        assert_eq!(pairing(&w(&[0, 1]), &w(&[1, 0])).unwrap(), Scalar::zero());
        let zhat = w(&[0, 0]).add(&w(&[1, 1]));
        assert_eq!(pairing(&w(&[0, 0]), &zhat).unwrap(), Scalar::one());
        assert!(matches!(pairing(&w(&[0]), &w(&[0, 0])), Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn coordinates_round_trip() {
        let t = w(&[1, 0]).add(&w(&[0, 1]).scale(&Scalar::int(3)));
        let c = t.to_coords(2, 2).unwrap();
        assert_eq!(TensorElement::from_coords(&c, 2, 2), t);
    }
}
