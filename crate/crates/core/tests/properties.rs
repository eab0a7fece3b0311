use nqh_core::algebra::{extend_on_generators, strongly_graded_check, verify_algebra, verify_iso, xi_automorphism, GradedLinMap};
use nqh_core::deform::{build_clifford, CliffordData};
use nqh_core::exactlin::{nullspace, rat, Matrix, Scalar, TensorElement, Word};
use nqh_core::quadratic::{hilbert_profile, CentralElement, QuadraticPresentation};
use nqh_core::rewrite::normal_form;
use nqh_core::twist::zhang_twist;
use proptest::prelude::*;

fn coefficient() -> impl Strategy<Value = (i64, i64)> {
    prop_oneof![
        4 => (-20i64..=20, 1i64..=12),
        1 => (prop_oneof![Just(i64::MAX), Just(i64::MIN + 1), Just(1i64 << 40)], prop_oneof![Just(1i64), Just(3), Just(i64::MAX)]),
    ]
}

fn scalar() -> impl Strategy<Value = Scalar> {
    [coefficient(), coefficient(), coefficient(), coefficient()].prop_map(|c| Scalar::new(rat(c[0].0, c[0].1), rat(c[1].0, c[1].1), rat(c[2].0, c[2].1), rat(c[3].0, c[3].1)))
}

fn small_scalar() -> impl Strategy<Value = Scalar> {
    (-3i64..=3, -2i64..=2, 1i64..=3).prop_map(|(a, b, d)| &Scalar::frac(a, d) + &(&Scalar::frac(b, d) * &Scalar::i()))
}

fn word(v: &[usize]) -> TensorElement {
    TensorElement::word(v.iter().fold(Word::empty(), |w, &g| w.concat(&Word::letter(g))))
}

fn skew_plane() -> QuadraticPresentation {
    QuadraticPresentation::new(vec!["x1".into(), "x2".into()], &[word(&[0, 1]).add(&word(&[1, 0]))]).unwrap()
}

/// Clifford deformation of the skew plane at the central element `a x1^2 + b x2^2`.
fn deformation(a: &Scalar, b: &Scalar) -> CliffordData {
    let z = word(&[0, 0]).scale(a).add(&word(&[1, 1]).scale(b));
    build_clifford(&skew_plane(), &CentralElement::new(z).unwrap()).unwrap()
}

fn element() -> impl Strategy<Value = TensorElement> {
    prop::collection::vec((prop::collection::vec(0usize..2, 0..=4), small_scalar()), 1..5).prop_map(|terms| {
        terms.iter().fold(TensorElement::zero(), |acc, (w, c)| acc.add(&word(w).scale(c)))
    })
}

proptest! {
    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&(&a - &b) + &b) == a);
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn scalar_text_round_trip(a in scalar()) {
        prop_assert_eq!(a.to_string().parse::<Scalar>().unwrap(), a);
    }

    #[test]
    fn squares_have_square_roots(a in small_scalar()) {
        let sq = &a * &a;
        let r = sq.sqrt().unwrap();
        prop_assert_eq!(&r * &r, sq);
    }

    #[test]
    fn nullspace_is_the_kernel(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 4), 1..4)) {
        let m = Matrix::from_rows(&rows.iter().map(|r| r.iter().map(|&x| Scalar::int(x)).collect()).collect::<Vec<_>>(), 4).unwrap();
        let k = nullspace(&m);
        prop_assert_eq!(k.dim() + m.rank(), 4);
        for v in k.basis() {
            prop_assert!(m.apply(v).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn clifford_deformations_are_valid(a in small_scalar(), b in small_scalar(), ts in prop::collection::vec(element(), 5)) {
        let c = deformation(&a, &b);
        let alg = c.algebra();
        let pbw: usize = hilbert_profile(&c.dual, 3).unwrap().iter().sum();
        prop_assert_eq!(alg.dim(), pbw);
        prop_assert!(verify_algebra(alg).passed());
        prop_assert_eq!(strongly_graded_check(alg), !a.is_zero() || !b.is_zero());
        for t in &ts {
            let once = normal_form(&c.system, t).unwrap();
            prop_assert_eq!(&normal_form(&c.system, &once).unwrap(), &once);
            prop_assert_eq!(c.presented.element(&once).unwrap(), c.presented.element(t).unwrap());
        }
        let flat = alg.regrade(1, |_| 0);
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                prop_assert_eq!(flat.product_basis(i, j), alg.product_basis(i, j));
            }
        }
    }

    #[test]
    fn zhang_twists_by_involutions(a in small_scalar(), b in small_scalar(), pick in 0usize..4) {
        let c = deformation(&a, &b);
        let alg = c.algebra();
        let g: Vec<_> = (0..2).map(|k| c.presented.generator(k).unwrap()).collect();
        let neg = |v: &[Scalar]| v.iter().map(|x| -x).collect::<Vec<_>>();
        let nu1 = match pick {
            0 => GradedLinMap::identity(alg.dim()),
            1 => xi_automorphism(alg, &Scalar::int(-1)).unwrap(),
            2 => extend_on_generators(&c.presented, alg, &[neg(&g[0]), g[1].clone()]).unwrap(),
            _ => extend_on_generators(&c.presented, alg, &[g[0].clone(), neg(&g[1])]).unwrap(),
        };
        prop_assert!(verify_iso(alg, alg, &nu1));
        let twisted = zhang_twist(alg, &[GradedLinMap::identity(alg.dim()), nu1]).unwrap();
        prop_assert_eq!(twisted.dim(), alg.dim());
        prop_assert!(verify_algebra(&twisted).passed());
    }
}
