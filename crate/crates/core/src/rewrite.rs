//! Bounded-degree rewriting for inhomogeneous quotients `T(W)/(f - c_f)`.
//!
//! Words are ordered deglex; every rule rewrites a word to a combination of strictly
//! smaller words, so reduction terminates. Completion resolves ambiguities (overlaps
//! and inclusions of leading words) up to a degree bound.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::algebra::{render_combination, GradedAlgebra, PresentedAlgebra};
use crate::error::{Error, Result};
use crate::exactlin::matrix::zero_vec;
use crate::exactlin::{Matrix, Scalar, TensorElement, Word};

/// Default cap on the number of rules produced by completion.
pub const DEFAULT_RULE_CAP: usize = 512;
/// Cap on the number of normal words collected by extraction.
pub const NORMAL_WORD_CAP: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRule {
    pub lhs: Word,
    pub rhs: TensorElement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteSystem {
    rules: Vec<RewriteRule>,
    alphabet: Vec<String>,
    max_degree: usize,
    confluent_up_to: usize,
    rule_cap: usize,
}

impl RewriteSystem {
    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    /// Largest ambiguity degree examined by completion.
    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// Elements up to this degree have a unique normal form.
    pub fn confluent_up_to(&self) -> usize {
        self.confluent_up_to
    }

    pub fn with_rule_cap(mut self, cap: usize) -> Self {
        self.rule_cap = cap;
        self
    }

    fn lhs_index(&self) -> BTreeMap<Word, usize> {
        self.rules.iter().enumerate().map(|(k, r)| (r.lhs.clone(), k)).collect()
    }

    fn lhs_lengths(&self) -> BTreeSet<usize> {
        self.rules.iter().map(|r| r.lhs.len()).collect()
    }

    /// Whether no rule applies anywhere inside `w`.
    pub fn is_irreducible(&self, w: &Word) -> bool {
        Reducer::new(self).find(w).is_none()
    }

    /// One line per rule, `lhs -> rhs`, in rule order.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for r in &self.rules {
            s.push_str(&format!("{} -> {}\n", r.lhs.render(&self.alphabet), render_tensor(&r.rhs, &self.alphabet)));
        }
        s
    }
}

/// Renders a tensor element, largest words first.
pub fn render_tensor(t: &TensorElement, names: &[String]) -> String {
    let terms: Vec<(&Word, &Scalar)> = t.terms().rev().collect();
    let labels: Vec<String> = terms.iter().map(|(w, _)| w.render(names)).collect();
    let coeffs: Vec<Scalar> = terms.iter().map(|(_, c)| (*c).clone()).collect();
    render_combination(&labels, &coeffs)
}

/// Memoized reduction against a fixed rule set.
struct Reducer<'a> {
    sys: &'a RewriteSystem,
    index: BTreeMap<Word, usize>,
    lengths: BTreeSet<usize>,
    memo: BTreeMap<Word, TensorElement>,
}

impl<'a> Reducer<'a> {
    fn new(sys: &'a RewriteSystem) -> Self {
        Reducer { sys, index: sys.lhs_index(), lengths: sys.lhs_lengths(), memo: BTreeMap::new() }
    }

    /// Leftmost occurrence `(position, rule)` of a leading word in `w`.
    fn find(&self, w: &Word) -> Option<(usize, usize)> {
        for p in 0..w.len() {
            for &l in &self.lengths {
                if p + l <= w.len() {
                    if let Some(&k) = self.index.get(&w.slice(p, p + l)) {
                        return Some((p, k));
                    }
                }
            }
        }
        None
    }

    fn word(&mut self, w: &Word) -> TensorElement {
        if let Some(t) = self.memo.get(w) {
            return t.clone();
        }
        let out = match self.find(w) {
            None => TensorElement::word(w.clone()),
            Some((p, k)) => {
                let rule = &self.sys.rules[k];
                let (u, v) = (w.slice(0, p), w.slice(p + rule.lhs.len(), w.len()));
                let rhs = rule.rhs.clone();
                let mut acc = TensorElement::zero();
                for (m, c) in rhs.terms() {
                    let next = u.concat(m).concat(&v);
                    let r = self.word(&next);
                    acc.add_scaled(c, &r);
                }
                acc
            }
        };
        self.memo.insert(w.clone(), out.clone());
        out
    }

    fn element(&mut self, t: &TensorElement) -> TensorElement {
        let mut acc = TensorElement::zero();
        for (w, c) in t.terms() {
            let r = self.word(w);
            acc.add_scaled(c, &r);
        }
        acc
    }
}

/// Turns a nonzero element into a rule `leading word -> rest`, or fails when it is a nonzero constant.
fn rule_from(t: &TensorElement) -> Result<RewriteRule> {
    let (lw, lc) = t.leading().ok_or(Error::NotOrientable)?;
    if lw.is_empty() {
        return Err(Error::NotOrientable);
    }
    let inv = lc.inv().ok_or(Error::DivisionByZero)?;
    let lhs = lw.clone();
    let mut rhs = t.scale(&-&inv);
    rhs.add_term(lhs.clone(), &Scalar::one());
    Ok(RewriteRule { lhs, rhs })
}

/// Gaussian elimination on leading words, then one rule per pivot.
pub fn orient(relations: &[TensorElement], alphabet: Vec<String>) -> Result<RewriteSystem> {
    let mut words: Vec<Word> = relations.iter().flat_map(|r| r.terms().map(|(w, _)| w.clone())).collect::<BTreeSet<_>>().into_iter().collect();
    words.reverse();
    let col: BTreeMap<&Word, usize> = words.iter().enumerate().map(|(k, w)| (w, k)).collect();
    let rows: Vec<Vec<Scalar>> = relations
        .iter()
        .map(|r| {
            let mut v = zero_vec(words.len());
            for (w, c) in r.terms() {
                v[col[w]] = c.clone();
            }
            v
        })
        .collect();
    let mut m = Matrix::from_rows(&rows, words.len())?;
    let pivots = m.rref_in_place();
    let mut rules = Vec::with_capacity(pivots.len());
    for (r, &p) in pivots.iter().enumerate() {
        if words[p].is_empty() {
            return Err(Error::NotOrientable);
        }
        let t = TensorElement::from_terms(words.iter().cloned().zip(m.row(r).iter().cloned()));
        rules.push(rule_from(&t)?);
    }
    rules.sort_by(|a, b| a.lhs.cmp(&b.lhs));
    let min_len = rules.iter().map(|r| r.lhs.len()).min().unwrap_or(usize::MAX);
    Ok(RewriteSystem { rules, alphabet, max_degree: min_len, confluent_up_to: min_len, rule_cap: DEFAULT_RULE_CAP })
}

/// Ambiguity words of rules `i` and `j` with their two one-step reductions.
fn ambiguities(sys: &RewriteSystem, i: usize, j: usize, maxdeg: usize, out: &mut Vec<(TensorElement, TensorElement)>) {
    let (a, b) = (&sys.rules[i], &sys.rules[j]);
    let (la, lb) = (a.lhs.len(), b.lhs.len());
    // overlap: suffix of a.lhs equals prefix of b.lhs
    for k in 1..la.min(lb) {
        if la + lb - k > maxdeg {
            continue;
        }
        if a.lhs.slice(la - k, la) == b.lhs.slice(0, k) {
            let head = a.lhs.slice(0, la - k);
            let tail = b.lhs.slice(k, lb);
            let one = a.rhs.mul(&TensorElement::word(tail));
            let two = TensorElement::word(head).mul(&b.rhs);
            out.push((one, two));
        }
    }
    // inclusion: b.lhs inside a.lhs
    if i != j && lb <= la && la <= maxdeg {
        let mut p = 0;
        while p + lb <= la {
            if a.lhs.slice(p, p + lb) == b.lhs {
                let u = TensorElement::word(a.lhs.slice(0, p));
                let v = TensorElement::word(a.lhs.slice(p + lb, la));
                out.push((a.rhs.clone(), u.mul(&b.rhs).mul(&v)));
            }
            p += 1;
        }
    }
}

/// Resolves every ambiguity of degree at most `maxdeg`, adding rules until none remain.
pub fn complete(sys: &RewriteSystem, maxdeg: usize) -> Result<RewriteSystem> {
    if maxdeg < 3 {
        return Err(Error::CheckFailed(String::from("completion degree must be at least 3")));
    }
    let mut cur = sys.clone();
    let mut checked: BTreeSet<(usize, usize)> = BTreeSet::new();
    loop {
        let mut added = false;
        let n = cur.rules.len();
        'pairs: for i in 0..n {
            for j in 0..n {
                if !checked.insert((i, j)) {
                    continue;
                }
                let mut amb = Vec::new();
                ambiguities(&cur, i, j, maxdeg, &mut amb);
                for (one, two) in amb {
                    let mut red = Reducer::new(&cur);
                    let diff = red.element(&one.sub(&two));
                    if diff.is_zero() {
                        continue;
                    }
                    let rule = rule_from(&diff)?;
                    if cur.rules.len() >= cur.rule_cap {
                        return Err(Error::CompletionDiverged { cap: cur.rule_cap });
                    }
                    cur.rules.push(rule);
                    added = true;
                    // pairs with the new rule are unchecked; restart the scan with the larger set
                    break 'pairs;
                }
            }
        }
        if !added {
            break;
        }
    }
    cur.max_degree = maxdeg;
    cur.confluent_up_to = maxdeg;
    Ok(cur)
}

/// The unique irreducible representative of `t`.
pub fn normal_form(sys: &RewriteSystem, t: &TensorElement) -> Result<TensorElement> {
    let d = t.degree().unwrap_or(0);
    if d > sys.confluent_up_to {
        return Err(Error::DegreeExceedsConfluence { degree: d, bound: sys.confluent_up_to });
    }
    Ok(Reducer::new(sys).element(t))
}

/// Irreducible words in deglex order, collected breadth-first.
pub fn normal_words(sys: &RewriteSystem) -> Result<Vec<Word>> {
    let red = Reducer::new(sys);
    let n = sys.alphabet.len();
    let mut all = alloc::vec![Word::empty()];
    let mut layer = alloc::vec![Word::empty()];
    while !layer.is_empty() {
        let mut next = Vec::new();
        for w in &layer {
            for g in 0..n {
                let x = w.concat(&Word::letter(g));
                if red.find(&x).is_none() {
                    next.push(x);
                }
            }
        }
        all.extend(next.iter().cloned());
        if all.len() > NORMAL_WORD_CAP {
            return Err(Error::InfiniteDimensional { cap: NORMAL_WORD_CAP });
        }
        layer = next;
    }
    all.sort();
    Ok(all)
}

/// Structure constants on the normal words, `Z2`-graded by word-length parity.
pub fn extract_algebra(sys: &RewriteSystem) -> Result<GradedAlgebra> {
    Ok(extract_presented(sys, Vec::new())?.algebra)
}

/// Like [`extract_algebra`], keeping the presentation for evaluating maps on generators.
pub fn extract_presented(sys: &RewriteSystem, relations: Vec<TensorElement>) -> Result<PresentedAlgebra> {
    let words = normal_words(sys)?;
    let top = words.iter().map(Word::len).max().unwrap_or(0);
    if 2 * top > sys.confluent_up_to {
        return Err(Error::NotConfluent);
    }
    let pos: BTreeMap<&Word, usize> = words.iter().enumerate().map(|(k, w)| (w, k)).collect();
    let dim = words.len();
    let mut red = Reducer::new(sys);
    let mut products = Vec::with_capacity(dim * dim);
    for a in &words {
        for b in &words {
            let nf = red.word(&a.concat(b));
            let mut v = zero_vec(dim);
            for (w, c) in nf.terms() {
                let k = *pos.get(w).ok_or(Error::NotConfluent)?;
                v[k] = c.clone();
            }
            products.push(v);
        }
    }
    let labels = words.iter().map(|w| w.render(&sys.alphabet)).collect();
    let degrees = words.iter().map(|w| (w.len() % 2) as u8).collect();
    let mut unit = zero_vec(dim);
    unit[0] = Scalar::one();
    let algebra = GradedAlgebra::new(labels, products, unit, 1, degrees)?;
    Ok(PresentedAlgebra { generators: sys.alphabet.clone(), relations, normal_words: words, algebra })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::algebra::{radical, verify_algebra};
    use crate::quadratic::tests::{names, w};

    fn one() -> TensorElement {
        TensorElement::scalar(Scalar::one())
    }

    /// `x1* x1* - 1, x2* x2* - 1, x1* x2* - x2* x1*` over `x1*, x2*`.
    pub fn clifford_skew_plane() -> Vec<TensorElement> {
        alloc::vec![w(&[0, 0]).sub(&one()), w(&[1, 1]).sub(&one()), w(&[0, 1]).sub(&w(&[1, 0]))]
    }

    #[test]
    fn orient_examples() {
        let s = orient(&[w(&[0, 0]).sub(&one())], names(&["x"])).unwrap();
        assert_eq!(s.rules(), &[RewriteRule { lhs: Word(alloc::vec![0, 0]), rhs: one() }]);

        let s = orient(&clifford_skew_plane(), names(&["x1*", "x2*"])).unwrap();
        assert_eq!(s.dump(), "x1*x1* -> 1\nx2*x1* -> x1*x2*\nx2*x2* -> 1\n");

        let bad = orient(&[w(&[0, 1]).sub(&one()), w(&[0, 1])], names(&["x", "y"]));
        assert_eq!(bad, Err(Error::NotOrientable));
    }

    #[test]
    fn completion_keeps_confluent_systems() {
        let s = orient(&clifford_skew_plane(), names(&["x1*", "x2*"])).unwrap();
        let c = complete(&s, 6).unwrap();
        assert_eq!(c.rules(), s.rules());
        let s = orient(&[w(&[0, 0]).sub(&one())], names(&["x"])).unwrap();
        assert_eq!(complete(&s, 4).unwrap().rules(), s.rules());
    }

    #[test]
    fn completion_adds_missing_rules() {
        // xy = 1 and yx = 0 force x = x (yx)... = 0 after resolution, so 1 = 0
        let r = alloc::vec![w(&[0, 1]).sub(&one()), w(&[1, 0])];
        let s = orient(&r, names(&["x", "y"])).unwrap();
        assert_eq!(complete(&s, 6), Err(Error::NotOrientable));
        // xx = 0, yy = 0, yx = xy is already complete with 4 normal words
        let r = alloc::vec![w(&[0, 0]), w(&[1, 1]), w(&[1, 0]).sub(&w(&[0, 1]))];
        let s = complete(&orient(&r, names(&["x", "y"])).unwrap(), 6).unwrap();
        assert_eq!(extract_algebra(&s).unwrap().dim(), 4);
        // yx -> x and xy -> y: the overlaps xyx and yxy add xx -> x and yy -> y
        let r = alloc::vec![w(&[1, 0]).sub(&w(&[0])), w(&[0, 1]).sub(&w(&[1]))];
        let c = complete(&orient(&r, names(&["x", "y"])).unwrap(), 6).unwrap();
        assert_eq!(c.rules().len(), 4);
        assert!(c.rules().contains(&RewriteRule { lhs: Word(alloc::vec![0, 0]), rhs: w(&[0]) }));
        assert!(c.rules().contains(&RewriteRule { lhs: Word(alloc::vec![1, 1]), rhs: w(&[1]) }));
    }

    #[test]
    fn completion_cap() {
        // a single rule yxy -> xyx style system keeps producing longer rules
        let r = alloc::vec![w(&[1, 0, 1]).sub(&w(&[0, 1, 0]))];
        let s = orient(&r, names(&["x", "y"])).unwrap().with_rule_cap(1);
        assert_eq!(complete(&s, 12), Err(Error::CompletionDiverged { cap: 1 }));
    }

    #[test]
    fn normal_form_examples() {
        let s = complete(&orient(&[w(&[0, 0]).sub(&one())], names(&["x"])).unwrap(), 4).unwrap();
        assert_eq!(normal_form(&s, &w(&[0, 0, 0])).unwrap(), w(&[0]));
        assert_eq!(normal_form(&s, &TensorElement::zero()).unwrap(), TensorElement::zero());
        assert!(matches!(normal_form(&s, &w(&[0; 5])), Err(Error::DegreeExceedsConfluence { degree: 5, bound: 4 })));

        let c = complete(&orient(&clifford_skew_plane(), names(&["x1*", "x2*"])).unwrap(), 6).unwrap();
        assert_eq!(normal_form(&c, &w(&[1, 0, 1])).unwrap(), w(&[0]));
    }

    #[test]
    fn extraction_examples() {
        let s = complete(&orient(&[w(&[0, 0]).sub(&one())], names(&["x"])).unwrap(), 4).unwrap();
        let a = extract_algebra(&s).unwrap();
        assert_eq!(a.dim(), 2);
        assert_eq!(a.product_basis_dense(1, 1), alloc::vec![Scalar::one(), Scalar::zero()]);
        assert!(verify_algebra(&a).passed());

        let c = complete(&orient(&clifford_skew_plane(), names(&["x1*", "x2*"])).unwrap(), 6).unwrap();
        let a = extract_algebra(&c).unwrap();
        assert_eq!(a.dim(), 4);
        assert!(a.is_commutative());
        assert!(verify_algebra(&a).passed());
        assert_eq!(a.labels(), &names(&["1", "x1*", "x2*", "x1*x2*"])[..]);
    }

    #[test]
    fn degenerate_clifford_has_radical() {
        // skew plane dual deformed by y2^2: y1* y1* = 0, y2* y2* = 1, y1* y2* = y2* y1*
        let r = alloc::vec![w(&[0, 0]), w(&[1, 1]).sub(&one()), w(&[0, 1]).sub(&w(&[1, 0]))];
        let c = complete(&orient(&r, names(&["y1*", "y2*"])).unwrap(), 6).unwrap();
        let a = extract_algebra(&c).unwrap();
        assert_eq!(a.dim(), 4);
        assert!(verify_algebra(&a).passed());
        assert!(radical(&a).dim() >= 1);
    }

    #[test]
    fn free_algebra_is_infinite() {
        let s = complete(&orient(&[], names(&["x", "y"])).unwrap(), 4).unwrap();
        assert_eq!(extract_algebra(&s), Err(Error::InfiniteDimensional { cap: NORMAL_WORD_CAP }));
    }
}
