use std::sync::{Arc, OnceLock};

use hopf_twist::catalog;
use hopf_twist::twisting::TwistedComoduleAlgebra;
use hopf_twist::{AlgebraElement, GaloisInstance, HopfStructure, Presentation, Scalar, ScalarRing, Word};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn ring() -> Arc<ScalarRing> {
    static R: OnceLock<Arc<ScalarRing>> = OnceLock::new();
    R.get_or_init(ScalarRing::standard).clone()
}

fn instanton() -> &'static Arc<GaloisInstance> {
    static I: OnceLock<Arc<GaloisInstance>> = OnceLock::new();
    I.get_or_init(|| catalog::instanton().unwrap())
}

fn sphere_theta() -> &'static Arc<TwistedComoduleAlgebra> {
    static A: OnceLock<Arc<TwistedComoduleAlgebra>> = OnceLock::new();
    A.get_or_init(|| instanton().deform_named(None, Some("gamma_theta")).unwrap())
}

fn sphere_theta_compiled() -> &'static Arc<Presentation> {
    static P: OnceLock<Arc<Presentation>> = OnceLock::new();
    P.get_or_init(|| sphere_theta().compile(6).unwrap())
}

fn bundle() -> &'static (Arc<GaloisInstance>, Arc<TwistedComoduleAlgebra>) {
    static B: OnceLock<(Arc<GaloisInstance>, Arc<TwistedComoduleAlgebra>)> = OnceLock::new();
    B.get_or_init(|| {
        let inst = catalog::trivial_bundle(3).unwrap();
        let g = inst.right_cocycle("cyclic_table_1").unwrap().clone();
        let a = TwistedComoduleAlgebra::twist_right(inst.algebra(), &g).unwrap();
        (inst, a)
    })
}

fn scalar() -> impl Strategy<Value = Scalar> {
    prop::collection::vec((0i64..4, -3i64..=3, -6i64..=6, 1i64..=4), 0..4).prop_map(|terms| {
        let r = ring();
        let mut s = Scalar::zero(&r);
        for (z, e, n, d) in terms {
            let c = BigRational::new(BigInt::from(n), BigInt::from(d));
            s += &Scalar::unit_monomial(&r, z, &[e]).scale_rational(&c);
        }
        s
    })
}

fn word(gens: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..gens, 0..=max_len).prop_map(Word)
}

fn element(p: &Arc<Presentation>, raw: &[(Word, Scalar)]) -> AlgebraElement {
    AlgebraElement::normal_form(p, raw.iter().cloned()).unwrap()
}

fn raw_element(gens: usize, max_len: usize) -> impl Strategy<Value = Vec<(Word, Scalar)>> {
    prop::collection::vec((word(gens, max_len), scalar()), 0..3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn scalar_ring_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn scalar_star(a in scalar(), b in scalar()) {
        prop_assert_eq!((&a * &b).star(), &a.star() * &b.star());
        prop_assert_eq!((&a + &b).star(), &a.star() + &b.star());
        prop_assert_eq!(a.star().star(), a);
    }

    #[test]
    fn monomial_units_invert(z in 0i64..4, e in -5i64..=5) {
        let u = Scalar::unit_monomial(&ring(), z, &[e]);
        prop_assert!((&u.invert().unwrap() * &u).is_one());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rewriting_order_is_irrelevant(w in word(8, 5), seed in any::<u64>()) {
        for p in [instanton().presentation(), sphere_theta_compiled()] {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let fixed = p.reduce_word(&w).unwrap();
            prop_assert_eq!(&*fixed, &p.reduce_word_randomized(&w, &mut rng).unwrap());
        }
    }

    #[test]
    fn normal_form_idempotent_and_homogeneous(w in word(8, 5)) {
        let p = instanton().presentation();
        let x = AlgebraElement::from_word(p, &w).unwrap();
        let again = AlgebraElement::normal_form(p, x.terms().clone()).unwrap();
        prop_assert_eq!(&again, &x);
        if !x.is_zero() {
            prop_assert_eq!(x.homogeneous_degree(), Some(p.word_degree(&w)));
        }
    }

    #[test]
    fn multiplication_distributes(x in raw_element(8, 3), y in raw_element(8, 3), z in raw_element(8, 3)) {
        let p = sphere_theta_compiled();
        let (x, y, z) = (element(p, &x), element(p, &y), element(p, &z));
        let one = AlgebraElement::one(p);
        let lhs = x.try_mul(&y.try_add(&z).unwrap()).unwrap();
        prop_assert_eq!(lhs, x.try_mul(&y).unwrap().try_add(&x.try_mul(&z).unwrap()).unwrap());
        prop_assert_eq!(&one.try_mul(&x).unwrap(), &x);
        prop_assert_eq!(&x.try_mul(&one).unwrap(), &x);
    }

    #[test]
    fn star_reverses_products(x in raw_element(8, 3), y in raw_element(8, 3)) {
        for p in [instanton().presentation(), sphere_theta_compiled()] {
            prop_assume!(p.has_star());
            let (x, y) = (element(p, &x), element(p, &y));
            let lhs = x.try_mul(&y).unwrap().star().unwrap();
            prop_assert_eq!(lhs, y.star().unwrap().try_mul(&x.star().unwrap()).unwrap());
        }
    }

    #[test]
    fn bicharacter_inverse_cancels(a in word(4, 3), b in word(4, 3)) {
        let t = catalog::torus_hopf(2).unwrap();
        let g = catalog::cl_cocycle(&t).unwrap();
        let p = t.presentation();
        let (a, b) = (normal_word(p, &a), normal_word(p, &b));
        let prod = &g.eval_words(&a, &b) * &g.inverse_eval_words(&a, &b).unwrap();
        prop_assert_eq!(prod, &t.counit_word(&a) * &t.counit_word(&b));
    }

    #[test]
    fn sphere_theta_associative(a in word(8, 3), b in word(8, 3), c in word(8, 3)) {
        let alg = sphere_theta();
        let p = alg.presentation();
        let (a, b, c) = (normal_word(p, &a), normal_word(p, &b), normal_word(p, &c));
        let (x, y, z) = (
            AlgebraElement::from_word(p, &a).unwrap(),
            AlgebraElement::from_word(p, &b).unwrap(),
            AlgebraElement::from_word(p, &c).unwrap(),
        );
        let lhs = alg.multiply(&alg.multiply(&x, &y).unwrap(), &z).unwrap();
        prop_assert_eq!(lhs, alg.multiply(&x, &alg.multiply(&y, &z).unwrap()).unwrap());
    }

    #[test]
    fn coinvariants_multiply_plainly(w in word(2, 6), k in 0usize..3) {
        let (inst, alg) = bundle();
        let p = inst.presentation();
        let a = AlgebraElement::from_word(p, &w).unwrap();
        let (_, b) = &inst.coinvariant_generators()[0];
        let b = b.pow(k).unwrap();
        prop_assert_eq!(alg.multiply(&b, &a).unwrap(), b.try_mul(&a).unwrap());
        prop_assert_eq!(alg.multiply(&a, &b).unwrap(), a.try_mul(&b).unwrap());
    }
}

/// Leading word of the normal form, or 1 when the word reduces to a scalar.
fn normal_word(p: &Arc<Presentation>, w: &Word) -> Word {
    p.reduce_word(w)
        .unwrap()
        .keys()
        .next_back()
        .cloned()
        .unwrap_or_else(Word::one)
}
