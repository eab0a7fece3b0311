//! Algebras remembered together with a presentation, and maps defined on generators.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{GradedAlgebra, GradedLinMap};
use crate::error::{Error, Result};
use crate::exactlin::matrix::{axpy, is_zero_vec, zero_vec};
use crate::exactlin::{Scalar, TensorElement, Vector, Word};

/// `T(W)/(relations)` with basis given by normal words and structure constants in `algebra`.
#[derive(Clone, Debug)]
pub struct PresentedAlgebra {
    pub generators: Vec<String>,
    pub relations: Vec<TensorElement>,
    pub normal_words: Vec<Word>,
    pub algebra: GradedAlgebra,
}

impl PresentedAlgebra {
    /// Coordinates of the class of a single generator.
    pub fn generator(&self, g: usize) -> Result<Vector> {
        self.word_vector(&Word::letter(g))
    }

    /// Coordinates of the class of a word, computed as a product of generators.
    pub fn word_vector(&self, w: &Word) -> Result<Vector> {
        let a = &self.algebra;
        let mut v = a.unit().clone();
        for &g in w.letters() {
            let idx = self
                .normal_words
                .iter()
                .position(|n| n.len() == 1 && n.letters()[0] == g)
                .ok_or_else(|| Error::CheckFailed(format!("generator {} is not a basis word", self.generators.get(g).cloned().unwrap_or_default())))?;
            v = a.mul_by_basis(&v, idx);
        }
        Ok(v)
    }

    pub fn element(&self, t: &TensorElement) -> Result<Vector> {
        let mut v = zero_vec(self.algebra.dim());
        for (w, c) in t.terms() {
            axpy(&mut v, c, &self.word_vector(w)?);
        }
        Ok(v)
    }
}

fn evaluate(target: &GradedAlgebra, images: &[Vector], w: &Word) -> Vector {
    let mut v = target.unit().clone();
    for &g in w.letters() {
        v = target.mul(&v, &images[g]);
    }
    v
}

fn evaluate_element(target: &GradedAlgebra, images: &[Vector], t: &TensorElement) -> Vector {
    let mut v = zero_vec(target.dim());
    for (w, c) in t.terms() {
        axpy(&mut v, c, &evaluate(target, images, w));
    }
    v
}

/// The algebra map sending generator `g` to `images[g]`, evaluated on normal words.
pub fn extend_on_generators(source: &PresentedAlgebra, target: &GradedAlgebra, images: &[Vector]) -> Result<GradedLinMap> {
    if images.len() != source.generators.len() {
        return Err(Error::DimensionMismatch { expected: source.generators.len(), found: images.len() });
    }
    for (k, r) in source.relations.iter().enumerate() {
        if !is_zero_vec(&evaluate_element(target, images, r)) {
            return Err(Error::RelationViolated(k));
        }
    }
    let cols: Vec<Vector> = source.normal_words.iter().map(|w| evaluate(target, images, w)).collect();
    let mut shift = 0;
    for (g, img) in images.iter().enumerate() {
        if let (Some(d), Ok(v)) = (target.degree_of(img), source.generator(g)) {
            if let Some(e) = source.algebra.degree_of(&v) {
                shift = d ^ e;
                break;
            }
        }
    }
    GradedLinMap::from_images(&cols, target.dim(), shift)
}

/// Bijective, unital, degree-preserving and multiplicative on all basis pairs.
pub fn check_iso(source: &GradedAlgebra, target: &GradedAlgebra, f: &GradedLinMap) -> Result<()> {
    if f.source_dim() != source.dim() || f.target_dim() != target.dim() {
        return Err(Error::IsoFailed(format!("shape {}x{} against dims {} -> {}", f.target_dim(), f.source_dim(), source.dim(), target.dim())));
    }
    if f.matrix.inverse().is_none() {
        return Err(Error::IsoFailed(String::from("matrix is singular")));
    }
    if &f.apply(source.unit()) != target.unit() {
        return Err(Error::IsoFailed(String::from("unit is not preserved")));
    }
    if f.shift != 0 || !f.respects_grading(source, target) {
        return Err(Error::IsoFailed(String::from("degrees are not preserved")));
    }
    if let Some((i, j)) = f.multiplicativity_failure(source, target) {
        return Err(Error::IsoFailed(format!("not multiplicative on ({}, {})", source.labels()[i], source.labels()[j])));
    }
    Ok(())
}

pub fn verify_iso(source: &GradedAlgebra, target: &GradedAlgebra, f: &GradedLinMap) -> bool {
    check_iso(source, target, f).is_ok()
}

/// Scalar-valued helper for building images: `c * v`.
pub fn scaled(c: &Scalar, v: &[Scalar]) -> Vector {
    v.iter().map(|x| c * x).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tests::{labels, quadratic_ext};
    use crate::exactlin::matrix::unit_vec;

    /// `K<x>/(xx - 1)` with basis `1, x`.
    fn presented() -> PresentedAlgebra {
        PresentedAlgebra {
            generators: labels(&["x"]),
            relations: alloc::vec![TensorElement::word(Word(alloc::vec![0, 0])).sub(&TensorElement::scalar(Scalar::one()))],
            normal_words: alloc::vec![Word::empty(), Word::letter(0)],
            algebra: quadratic_ext(Scalar::one()),
        }
    }

    #[test]
    fn identity_extension() {
        let p = presented();
        let f = extend_on_generators(&p, &p.algebra, &[unit_vec(2, 1)]).unwrap();
        assert!(f.is_identity());
        assert!(verify_iso(&p.algebra, &p.algebra, &f));
    }

    #[test]
    fn relation_violation() {
        let p = presented();
        let target = quadratic_ext(Scalar::int(2));
        assert_eq!(extend_on_generators(&p, &target, &[unit_vec(2, 1)]), Err(Error::RelationViolated(0)));
    }

    #[test]
    fn sign_automorphism_and_failures() {
        let p = presented();
        let f = extend_on_generators(&p, &p.algebra, &[scaled(&Scalar::int(-1), &unit_vec(2, 1))]).unwrap();
        assert!(verify_iso(&p.algebra, &p.algebra, &f));
        let g = GradedLinMap::identity(2).scale(&Scalar::int(2));
        assert!(matches!(check_iso(&p.algebra, &p.algebra, &g), Err(Error::IsoFailed(_))));
    }
}
