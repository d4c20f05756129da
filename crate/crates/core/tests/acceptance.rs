//! Acceptance criteria, one line per criterion. Every comparison is exact; the only
//! tolerances are the wall-clock budgets printed next to each line.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use hopf_twist::catalog::{self, Built};
use hopf_twist::cocycles::{check_cocycle_condition, TwoCocycle};
use hopf_twist::galois::{
    check_bijective_finite, check_q, verify_coinvariant, verify_diagram_gamma, verify_diagram_sigma, verify_section,
    verify_translation_map,
};
use hopf_twist::hopf::{check_hopf_axioms, RightCoaction};
use hopf_twist::sampling;
use hopf_twist::suites::{run_suites, Suite, SuiteConfig, Target};
use hopf_twist::twisting::{check_associativity, twist_hopf, TwistedComoduleAlgebra};
use hopf_twist::{AlgebraElement, GaloisInstance, HopfAlgebra, HopfStructure, Presentation, Report, Scalar, Word};

const SEED: u64 = 20_240_611;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, u64);

fn ensure(r: &Report) -> Result<usize, String> {
    if r.passed() {
        Ok(r.checked)
    } else {
        Err(r.to_string())
    }
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn instance(name: &str, params: &[(&str, i64)]) -> Result<Arc<GaloisInstance>, String> {
    let p: BTreeMap<String, i64> = params.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    ok(catalog::build(name, &p).and_then(Built::into_instance))
}

fn all_pairs(basis: &[Word]) -> Vec<[Word; 2]> {
    sampling::pairs(sampling::all_tuples(basis, 2))
}

fn q(k: i32, p: &Presentation) -> Scalar {
    Scalar::param(p.ring(), 0, k)
}

fn criterion_1() -> Outcome {
    let torus = ok(catalog::torus_hopf(2))?;
    let cl = ok(catalog::cl_cocycle(&torus))?;
    let basis = ok(torus.presentation().basis_up_to(2))?;
    let r = check_cocycle_condition(&cl, 2);
    let n = ensure(&r)?;
    if n != basis.len().pow(3) {
        return Err(format!("{n} triples checked on O(T^2), expected {}", basis.len().pow(3)));
    }
    let fun = ok(catalog::finite_function_hopf(2, 2))?;
    let table = ok(catalog::table_cocycle(&fun))?;
    let n_table = ensure(&check_cocycle_condition(&table, 2))?;
    if n_table != 64 {
        return Err(format!("{n_table} table triples checked, expected 64"));
    }
    let bad = check_cocycle_condition(&ok(catalog::corrupted_table_cocycle(&fun))?, 2);
    match bad.witnesses.first() {
        Some(w) if !bad.passed() => Ok(format!(
            "gamma_theta {n} triples, table {n_table} triples, corrupted fails at {}",
            w.case
        )),
        _ => Err("corrupted table passed".into()),
    }
}

fn twisted_hopf_checks(h: &Arc<HopfAlgebra>, g: &TwoCocycle, triples: &[[Word; 3]], degree: usize) -> Result<usize, String> {
    let hg = ok(twist_hopf(h.clone(), g))?;
    let assoc = check_associativity("m_gamma", h.presentation(), triples, |x, y| hg.multiply(x, y));
    Ok(ensure(&assoc)? + ensure(&check_hopf_axioms(&*hg, degree))?)
}

fn criterion_2() -> Outcome {
    let fun = ok(catalog::finite_function_hopf(2, 2))?;
    let table = ok(catalog::table_cocycle(&fun))?;
    let basis = ok(fun.presentation().finite_basis())?;
    let triples = sampling::triples(sampling::all_tuples(&basis, 3));
    let n_table = twisted_hopf_checks(&fun, &table, &triples, 3)?;
    let torus = ok(catalog::torus_hopf(2))?;
    let cl = ok(catalog::cl_cocycle(&torus))?;
    let words = ok(torus.presentation().basis_up_to(3))?;
    let triples = sampling::triples(sampling::sample_tuples(&words, 3, 200, SEED));
    let n_torus = twisted_hopf_checks(&torus, &cl, &triples, 3)?;
    Ok(format!("table {n_table} checks exhaustive, gamma_theta {n_torus} checks on 200 triples"))
}

fn criterion_3() -> Outcome {
    let fun = ok(catalog::finite_function_hopf(2, 2))?;
    let table = ok(catalog::table_cocycle(&fun))?;
    let basis = ok(fun.presentation().finite_basis())?;
    let h: Arc<dyn HopfStructure> = fun.clone();
    let a = ensure(&check_q(&h, &table, &basis))?;
    let torus = ok(catalog::torus_hopf(2))?;
    let cl = ok(catalog::cl_cocycle(&torus))?;
    let words = ok(torus.presentation().basis_up_to(3))?;
    let h: Arc<dyn HopfStructure> = torus.clone();
    let b = ensure(&check_q(&h, &cl, &words))?;
    Ok(format!("finite {a} checks on {} words, O(T^2) {b} checks on {} words", basis.len(), words.len()))
}

fn criterion_4() -> Outcome {
    let mut notes = Vec::new();
    for (name, params, gamma) in [
        ("finite_function_galois", &[][..], "sign_table"),
        ("finite_group_galois", &[("n", 2)][..], "cyclic_table_1"),
        ("trivial_bundle", &[("n", 2)][..], "cyclic_table_1"),
    ] {
        let inst = instance(name, params)?;
        let alg = ok(inst.deform_named(Some(gamma), None))?;
        let basis = ok(inst.presentation().finite_basis())?;
        let n = ensure(&ok(verify_diagram_gamma(&alg, &all_pairs(&basis)))?)?;
        notes.push(format!("{name} {n} pairs"));
    }
    for (name, gamma) in [("torus_galois", "gamma_theta"), ("instanton", "trivial")] {
        let inst = instance(name, &[])?;
        let alg = ok(inst.deform_named(Some(gamma), None))?;
        let words = ok(inst.presentation().basis_up_to(2))?;
        let pairs = sampling::pairs(sampling::sample_tuples(&words, 2, 200, SEED));
        let n = ensure(&ok(verify_diagram_gamma(&alg, &pairs))?)?;
        notes.push(format!("{name} {n} sampled pairs"));
    }
    Ok(notes.join(", "))
}

fn criterion_5() -> Outcome {
    let inst = instance("instanton", &[])?;
    let alg = ok(inst.deform_named(None, Some("gamma_theta")))?;
    let words = ok(inst.presentation().basis_up_to(2))?;
    let pairs = sampling::pairs(sampling::sample_tuples(&words, 2, 200, SEED));
    let n = ensure(&ok(verify_diagram_sigma(&alg, &pairs))?)?;
    Ok(format!("instanton sigma = gamma_theta, {n} sampled pairs of degree <= 2"))
}

fn criterion_6() -> Outcome {
    let mut verdicts = Vec::new();
    for n in [2, 3, 4] {
        let inst = instance("finite_group_galois", &[("n", n)])?;
        let g = ok(inst.right_cocycle("cyclic_table_1"))?;
        let s = ok(inst.left_cocycle("cyclic_table_1"))?;
        let base = inst.algebra();
        for alg in [
            base.clone(),
            ok(TwistedComoduleAlgebra::twist_right(base, g))?,
            ok(TwistedComoduleAlgebra::twist_left(base, s))?,
            ok(TwistedComoduleAlgebra::twist_both(base, s, g))?,
        ] {
            ensure(&check_bijective_finite(&alg))?;
        }
        verdicts.push(format!("n={n}"));
    }
    Ok(format!("bijective before and after every twist for {}", verdicts.join(", ")))
}

/// Degree of a generator under the torus coaction z1, z2, z3, z4 ↦ t1, t1*, t2, t2*.
fn torus_degree(p: &Presentation, w: &Word) -> [i64; 2] {
    let name = p.format_word(w);
    let (base, star) = match name.strip_suffix('*') {
        Some(b) => (b.to_string(), -1),
        None => (name.clone(), 1),
    };
    let d = match base.as_str() {
        "z1" => [1, 0],
        "z2" => [-1, 0],
        "z3" => [0, 1],
        "z4" => [0, -1],
        _ => panic!("unexpected generator {name}"),
    };
    [star * d[0], star * d[1]]
}

/// λ with x•y = λ y•x for homogeneous x, y: σ(x, y)/σ(y, x) with σ(a, b) = q^{a₁b₂ − a₂b₁}.
fn oracle_factor(p: &Presentation, a: [i64; 2], b: [i64; 2]) -> Scalar {
    let form = |a: [i64; 2], b: [i64; 2]| a[0] * b[1] - a[1] * b[0];
    q((form(a, b) - form(b, a)) as i32, p)
}

fn criterion_7abc() -> Outcome {
    let inst = instance("instanton", &[])?;
    let p = inst.presentation().clone();
    let plain = ok(inst.deform(None, None))?;
    for (name, b) in inst.coinvariant_generators() {
        if !ok(verify_coinvariant(&plain, b))? {
            return Err(format!("{name} is not coinvariant"));
        }
    }
    let el = |s: &str| AlgebraElement::parse(&p, s).map_err(|e| e.to_string());
    let (alpha, beta, x) = (el(catalog::ALPHA)?, el(catalog::BETA)?, el(catalog::X)?);
    let one = AlgebraElement::one(&p);
    let sphere = |alg: &TwistedComoduleAlgebra| -> Result<AlgebraElement, String> {
        let terms = [
            ok(alg.multiply(&ok(alpha.star())?, &alpha))?,
            ok(alg.multiply(&ok(beta.star())?, &beta))?,
            ok(alg.multiply(&x, &x))?,
        ];
        Ok(terms.iter().fold(AlgebraElement::zero(&p), |acc, t| acc.try_add(t).unwrap()))
    };
    if sphere(&plain)? != one {
        return Err("α*α + β*β + x² ≠ 1".into());
    }
    let theta = ok(inst.deform_named(None, Some("gamma_theta")))?;
    if sphere(&theta)? != one {
        return Err("α*•α + β*•β + x•x ≠ 1".into());
    }
    let a = ensure(&ok(verify_translation_map(&inst, &plain, 1))?)?;
    let b = ensure(&ok(verify_translation_map(&inst, &theta, 1))?)?;
    Ok(format!("5 coinvariants, sphere relation plain and deformed, translation map {a} + {b} checks"))
}

/// Relation table of the σ-deformed instanton against the degree oracle.
fn criterion_7d_oracle() -> Outcome {
    let inst = instance("instanton", &[])?;
    let p = inst.presentation().clone();
    let theta = ok(inst.deform_named(None, Some("gamma_theta")))?;
    let el = |s: &str| AlgebraElement::parse(&p, s).map_err(|e| e.to_string());
    let factor = |x: &AlgebraElement, y: &AlgebraElement| -> Result<Scalar, String> {
        ok(theta.commutation_factor(x, y))?.ok_or_else(|| "not proportional".to_string())
    };
    let mut checked = 0;
    for a in 0..p.generators().len() {
        for b in 0..p.generators().len() {
            let (wa, wb) = (Word::letter(a), Word::letter(b));
            let x = ok(AlgebraElement::from_word(&p, &wa))?;
            let y = ok(AlgebraElement::from_word(&p, &wb))?;
            let expected = oracle_factor(&p, torus_degree(&p, &wa), torus_degree(&p, &wb));
            let got = factor(&x, &y)?;
            if got != expected {
                return Err(format!("{} • {}: expected {expected}, got {got}", p.format_word(&wa), p.format_word(&wb)));
            }
            checked += 1;
        }
    }
    let (z1, z2, z3) = (el("z1")?, el("z2")?, el("z3")?);
    if factor(&z1, &z3)? != q(2, &p) || !factor(&z1, &z2)?.is_one() {
        return Err("z1•z3 or z1•z2 factor".into());
    }
    let (alpha, beta) = (el(catalog::ALPHA)?, el(catalog::BETA)?);
    let ab = oracle_factor(&p, [1, -1], [-1, -1]);
    if factor(&alpha, &beta)? != ab {
        return Err(format!("α•β: expected {ab}, got {}", factor(&alpha, &beta)?));
    }
    let mut sum = AlgebraElement::zero(&p);
    for i in 1..=4 {
        let t = ok(theta.multiply(&el(&format!("z{i}*"))?, &el(&format!("z{i}"))?))?;
        sum = ok(sum.try_add(&t))?;
    }
    if sum != AlgebraElement::one(&p) {
        return Err(format!("Σ z_i*•z_i = {sum}"));
    }
    Ok(format!("{checked} generator pairs, z1•z3 = q^2 z3•z1, z1•z2 = z2•z1, α•β = {ab} β•α, Σ z_i*•z_i = 1"))
}

/// α•β = q⁻² β•α exactly as listed; the degree oracle gives q⁻⁴.
fn criterion_7d_as_listed() -> Outcome {
    let inst = instance("instanton", &[])?;
    let p = inst.presentation().clone();
    let theta = ok(inst.deform_named(None, Some("gamma_theta")))?;
    let alpha = ok(AlgebraElement::parse(&p, catalog::ALPHA))?;
    let beta = ok(AlgebraElement::parse(&p, catalog::BETA))?;
    let got = ok(theta.commutation_factor(&alpha, &beta))?.ok_or("not proportional")?;
    if got == q(-2, &p) {
        Ok("α•β = q^-2 β•α".into())
    } else {
        Err(format!("α•β = {got} β•α, listed value q^-2 (σ(α,β)/σ(β,α) = q^-2/q^2)"))
    }
}

fn untwist_products(alg: &Arc<TwistedComoduleAlgebra>, back: &TwistedComoduleAlgebra, words: &[Word]) -> Result<usize, String> {
    let mut n = 0;
    for x in words {
        for y in words {
            let plain = ok(alg.multiply_words(x, y))?;
            if ok(back.multiply_words(x, y))? != plain {
                return Err(format!("{}: products differ on ({x:?}, {y:?})", alg.name()));
            }
            n += 1;
        }
    }
    Ok(n)
}

fn words_to(p: &Presentation, d: usize) -> Result<Vec<Word>, String> {
    p.finite_basis().or_else(|_| p.basis_up_to(d)).map_err(|e| e.to_string())
}

fn criterion_8() -> Outcome {
    let mut total = 0;
    let mut covered = Vec::new();
    for d in catalog::list() {
        match ok(catalog::build(d.name, &BTreeMap::new()))? {
            Built::Instance(inst) => {
                let words = words_to(inst.presentation(), 3)?;
                let base = inst.algebra();
                for g in inst.right_cocycles().values().filter(|g| !g.name().starts_with("corrupted")) {
                    let tw = ok(TwistedComoduleAlgebra::twist_right(base, g))?;
                    let back = ok(TwistedComoduleAlgebra::twist_right(&tw, &ok(g.inverse())?))?;
                    total += untwist_products(base, &back, &words)?;
                }
                for s in inst.left_cocycles().values() {
                    let tw = ok(TwistedComoduleAlgebra::twist_left(base, s))?;
                    let back = ok(TwistedComoduleAlgebra::twist_left(&tw, &ok(s.inverse())?))?;
                    total += untwist_products(base, &back, &words)?;
                }
                covered.push(d.name);
            }
            Built::Cocycle(g) => {
                let h = g.host().clone();
                let words = words_to(h.presentation(), 3)?;
                let hg = ok(twist_hopf(h.clone(), &g))?;
                let back = ok(twist_hopf(hg, &ok(g.inverse())?))?;
                for x in &words {
                    for y in &words {
                        if ok(back.multiply_words(x, y))? != ok(h.multiply_words(x, y))? {
                            return Err(format!("{}: H_γ untwist differs", d.name));
                        }
                        total += 1;
                    }
                }
                covered.push(d.name);
            }
            _ => {}
        }
    }
    Ok(format!("{total} products on {}", covered.join(", ")))
}

fn criterion_9() -> Outcome {
    let mut notes = Vec::new();
    for (name, params) in [("finite_group_galois", &[("n", 2)][..]), ("trivial_bundle", &[("n", 2)][..])] {
        let inst = instance(name, params)?;
        let degree = ok(inst.presentation().finite_basis())?.iter().map(Word::len).max().unwrap_or(0);
        for sigma in inst.left_cocycles().keys() {
            let alg = ok(inst.deform_named(None, Some(sigma)))?;
            let n = ensure(&ok(verify_section(&inst, &alg, degree))?)?;
            notes.push(format!("{name}/{sigma} {n}"));
        }
    }
    Ok(notes.join(", "))
}

fn criterion_10() -> Outcome {
    let cfg = SuiteConfig { max_degree: 2, samples: 80, seed: SEED };
    let mut runs = 0;
    for (name, params, gamma, sigma) in [
        ("finite_function_galois", &[][..], Some("sign_table"), Some("sign_table")),
        ("trivial_bundle", &[("n", 3)][..], Some("cyclic_table_1"), Some("sign_table")),
        ("torus_galois", &[][..], Some("gamma_theta"), Some("gamma_theta")),
        ("instanton", &[][..], None, Some("gamma_theta")),
    ] {
        let inst = instance(name, params)?;
        let t = ok(Target::named(&inst, gamma, sigma))?;
        let a = run_suites(&t, &Suite::ALL, &cfg);
        let b = run_suites(&t, &Suite::ALL, &cfg);
        if a != b {
            return Err(format!("{name}: reports differ between runs"));
        }
        runs += a.len();
    }
    Ok(format!("{runs} suite runs repeated with identical reports"))
}

fn regular_torus_sanity() -> Outcome {
    let torus = ok(catalog::torus_hopf(2))?;
    let base = TwistedComoduleAlgebra::untwisted("O(T^2)", Arc::new(RightCoaction::regular(&torus)));
    let tw = ok(TwistedComoduleAlgebra::twist_right(&base, &ok(catalog::cl_cocycle(&torus))?))?;
    let table = ok(tw.relation_table())?;
    let e = table.iter().find(|e| e.left == "t1" && e.right == "t2").ok_or("missing t1,t2")?;
    if e.factor == q(-2, torus.presentation()) {
        Ok("t1•t2 = q^-2 t2•t1".into())
    } else {
        Err(format!("t1•t2 factor {}", e.factor))
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 13] = [
        ("1 cocycle axioms", criterion_1, 10),
        ("2 twisted Hopf axioms", criterion_2, 60),
        ("3 Q isomorphism", criterion_3, 60),
        ("4 right-twist diagram", criterion_4, 60),
        ("5 left-twist diagram", criterion_5, 60),
        ("6 bijectivity transfer", criterion_6, 60),
        ("7abc instanton coinvariants and translation map", criterion_7abc, 120),
        ("7d instanton relations against the degree oracle", criterion_7d_oracle, 120),
        ("7d instanton alpha-beta factor as listed (q^-2)", criterion_7d_as_listed, 120),
        ("8 untwisting", criterion_8, 120),
        ("9 section twisting", criterion_9, 60),
        ("10 determinism", criterion_10, 120),
        ("noncommutative torus table", regular_torus_sanity, 10),
    ];
    let mut failures = 0;
    for (name, f, budget) in criteria {
        let t0 = Instant::now();
        let outcome = f();
        let dt = t0.elapsed();
        let over = dt > Duration::from_secs(budget);
        match (&outcome, over) {
            (Ok(detail), false) => println!("criterion {name}: PASS ({detail}; {dt:.1?} of {budget}s)"),
            (Ok(detail), true) => println!("criterion {name}: FAIL (over budget {dt:.1?} > {budget}s; {detail})"),
            (Err(e), _) => println!("criterion {name}: FAIL ({}; {dt:.1?})", e.trim()),
        }
        if outcome.is_err() || over {
            failures += 1;
        }
    }
    println!("acceptance: {} criteria, {failures} failed", criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
