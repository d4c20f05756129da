use hopf_twist::catalog;
use hopf_twist::galois::{
    canonical_map, check_chi_colinear, check_chi_grading, check_middle_well_defined, find_coinvariants,
    verify_coinvariant, verify_diagram_sigma, verify_translation_map,
};
use hopf_twist::sampling;
use hopf_twist::{AlgebraElement, HopfStructure, Scalar, TensorElement, Word};

fn el(inst: &hopf_twist::GaloisInstance, s: &str) -> AlgebraElement {
    AlgebraElement::parse(inst.presentation(), s).unwrap()
}

#[test]
fn coinvariants_and_sphere_relation() {
    let inst = catalog::instanton().unwrap();
    let alg = inst.algebra();
    for s in [catalog::ALPHA, catalog::BETA, catalog::X, "1"] {
        assert!(verify_coinvariant(alg, &el(&inst, s)).unwrap(), "{s}");
    }
    assert!(!verify_coinvariant(alg, &el(&inst, "z1")).unwrap());
    let (a, b, x) = (el(&inst, catalog::ALPHA), el(&inst, catalog::BETA), el(&inst, catalog::X));
    let lhs = a.star().unwrap().try_mul(&a).unwrap()
        .try_add(&b.star().unwrap().try_mul(&b).unwrap()).unwrap()
        .try_add(&x.try_mul(&x).unwrap()).unwrap();
    assert_eq!(lhs, el(&inst, "1"));
}

#[test]
fn coinvariants_up_to_degree_two() {
    let inst = catalog::instanton().unwrap();
    let found = find_coinvariants(inst.algebra(), 2).unwrap();
    assert_eq!(found.len(), 6);
}

#[test]
fn translation_witness_undeformed_and_deformed() {
    let inst = catalog::instanton().unwrap();
    let r = verify_translation_map(&inst, inst.algebra(), 1).unwrap();
    assert!(r.passed(), "{r}");
    let tw = inst.deform_named(None, Some("gamma_theta")).unwrap();
    let r = verify_translation_map(&inst, &tw, 1).unwrap();
    assert!(r.passed(), "{r}");
}

#[test]
fn sigma_diagram_on_samples() {
    let inst = catalog::instanton().unwrap();
    let tw = inst.deform_named(None, Some("gamma_theta")).unwrap();
    let basis = inst.presentation().basis_up_to(2).unwrap();
    let pairs = sampling::pairs(sampling::sample_tuples(&basis, 2, 200, 1));
    let r = verify_diagram_sigma(&tw, &pairs).unwrap();
    assert_eq!(r.checked, 200);
    assert!(r.passed(), "{r}");
    let r = check_chi_grading(&tw, &pairs);
    assert!(r.passed(), "{r}");
    let r = check_chi_colinear(inst.algebra(), &pairs[..40]);
    assert!(r.passed(), "{r}");
    let r = check_middle_well_defined(&inst, &tw, &pairs[..40]);
    assert!(r.passed(), "{r}");
}

#[test]
fn deformed_relations() {
    let inst = catalog::instanton().unwrap();
    let tw = inst.deform_named(None, Some("gamma_theta")).unwrap();
    let ring = inst.presentation().ring().clone();
    let q = |k: i32| Scalar::param(&ring, 0, k);
    let f = |x: &str, y: &str| tw.commutation_factor(&el(&inst, x), &el(&inst, y)).unwrap().unwrap();
    assert_eq!(f("z1", "z3"), q(2));
    assert_eq!(f("z1", "z2"), q(0));
    assert_eq!(f(catalog::ALPHA, catalog::BETA), q(-4));
    let mut sum = AlgebraElement::zero(inst.presentation());
    for i in 1..=4 {
        sum = sum.try_add(&tw.multiply(&el(&inst, &format!("z{i}*")), &el(&inst, &format!("z{i}"))).unwrap()).unwrap();
    }
    assert_eq!(sum, el(&inst, "1"));
    let p = inst.presentation().clone();
    let z1 = p.parse_word("z1").unwrap();
    let chi = canonical_map(&tw, &TensorElement::pure(&[&el(&inst, "z1"), &el(&inst, "1")])).unwrap();
    let mut want = TensorElement::zero(vec![p.clone(), inst.hopf().presentation().clone()]);
    want.add_term(vec![z1, Word::one()], Scalar::one(&ring));
    assert_eq!(chi, want);
}

#[test]
fn truncated_injectivity_up_to_three() {
    let inst = catalog::instanton().unwrap();
    let r = hopf_twist::galois::check_truncated_injectivity(inst.algebra(), 3).unwrap();
    assert_eq!(r.checked, 25);
    assert!(r.passed(), "{r}");
    let tw = inst.deform_named(None, Some("gamma_theta")).unwrap();
    assert!(hopf_twist::galois::check_truncated_injectivity(&tw, 2).unwrap().passed());
}

/// The matrix u and the coinvariants as entered, against δ(u) = u⊗̇T and u†u = 1₂.
#[test]
fn u_matrix_transcription() {
    let inst = catalog::instanton().unwrap();
    assert_eq!(catalog::ALPHA, "2 z1 z3* + 2 z2* z4");
    assert_eq!(catalog::BETA, "2 z2 z3* - 2 z1* z4");
    assert_eq!(catalog::X, "z1 z1* + z2 z2* - z3 z3* - z4 z4*");
    let u = [
        ["z1", "-z2*"],
        ["z2", "z1*"],
        ["z3", "-z4*"],
        ["z4", "z3*"],
    ];
    let h = inst.hopf().presentation().clone();
    let t = [["w1", "-w2*"], ["w2", "w1*"]];
    let tel = |s: &str| AlgebraElement::parse(&h, s).unwrap();
    let delta = inst.algebra().coaction();
    for row in &u {
        for j in 0..2 {
            let lhs = delta.coact(&el(&inst, row[j]), 2).unwrap();
            let mut rhs = TensorElement::zero(lhs.legs().to_vec());
            for k in 0..2 {
                rhs = rhs.try_add(&TensorElement::pure(&[&el(&inst, row[k]), &tel(t[k][j])])).unwrap();
            }
            assert_eq!(lhs, rhs, "δ({})", row[j]);
        }
    }
    for a in 0..2 {
        for b in 0..2 {
            let mut s = AlgebraElement::zero(inst.presentation());
            for row in &u {
                let term = el(&inst, row[a]).star().unwrap().try_mul(&el(&inst, row[b])).unwrap();
                s = s.try_add(&term).unwrap();
            }
            let expected = if a == b { "1" } else { "0" };
            assert_eq!(s, el(&inst, expected), "(u†u)[{a}][{b}]");
        }
    }
}
