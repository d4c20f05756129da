//! Canonical maps of comodule algebras, the comodule isomorphism Q, the
//! diagrams relating χ to its twisted variants, coinvariants, exact
//! finite-dimensional bijectivity and witness verification.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::cocycles::{u_bar_gamma, u_gamma, TwoCocycle};
use crate::error::{Error, Result};
use crate::hopf::{
    adjoint_coaction, adjoint_coaction_word, check_bicomodule, check_coaction_axioms, HopfAlgebra,
    HopfStructure, RightCoaction,
};
use crate::linalg::{self, Echelon, SparseRow};
use crate::presentations::{AlgebraElement, Presentation, Word};
use crate::report::Report;
use crate::tensor::TensorElement;
use crate::twisting::{phi, phi_left, twist_hopf, Layer, LegComodule, LegGrading, TwistedComoduleAlgebra};
use crate::util::accumulate;
use crate::Scalar;

pub const COACTION_DEGREE: usize = 2;

/// Section s: A → B⊗A, given on basis words (legs A, A).
pub type SectionFn = Arc<dyn Fn(&Word) -> Result<TensorElement> + Send + Sync>;
/// θ: A → B⊗H on basis words (legs A, H).
pub type CleavingFn = Arc<dyn Fn(&Word) -> Result<TensorElement> + Send + Sync>;
/// θ⁻¹ on a pair of basis words (A-word of a B-element, H-word).
pub type CleavingInverseFn = Arc<dyn Fn(&Word, &Word) -> Result<AlgebraElement> + Send + Sync>;

#[derive(Clone)]
pub struct Cleaving {
    pub theta: CleavingFn,
    pub inverse: CleavingInverseFn,
}

/// A comodule algebra with its coinvariant data, witnesses and cocycles.
#[derive(Clone)]
pub struct GaloisInstance {
    name: String,
    provenance: String,
    algebra: Arc<TwistedComoduleAlgebra>,
    coinvariants: Vec<(String, AlgebraElement)>,
    grading_host: Option<Arc<HopfAlgebra>>,
    translation: Option<Vec<(usize, TensorElement)>>,
    cleaving: Option<Cleaving>,
    section: Option<SectionFn>,
    right_cocycles: BTreeMap<String, TwoCocycle>,
    left_cocycles: BTreeMap<String, TwoCocycle>,
}

impl fmt::Debug for GaloisInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GaloisInstance")
            .field("name", &self.name)
            .field("algebra", &self.algebra)
            .field("coinvariants", &self.coinvariants.len())
            .finish()
    }
}

impl GaloisInstance {
    pub fn builder(name: impl Into<String>, coaction: RightCoaction) -> GaloisBuilder {
        let name = name.into();
        let mut right = BTreeMap::new();
        right.insert("trivial".to_string(), TwoCocycle::trivial(coaction.hopf()));
        GaloisBuilder {
            inst: GaloisInstance {
                algebra: TwistedComoduleAlgebra::untwisted(coaction.source().name().to_string(), Arc::new(coaction)),
                name,
                provenance: String::new(),
                coinvariants: Vec::new(),
                grading_host: None,
                translation: None,
                cleaving: None,
                section: None,
                right_cocycles: right,
                left_cocycles: BTreeMap::new(),
            },
            translation_text: Vec::new(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    /// The undeformed comodule algebra.
    pub fn algebra(&self) -> &Arc<TwistedComoduleAlgebra> {
        &self.algebra
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        self.algebra.presentation()
    }

    pub fn hopf(&self) -> &Arc<HopfAlgebra> {
        self.algebra.base_hopf()
    }

    pub fn coinvariant_generators(&self) -> &[(String, AlgebraElement)] {
        &self.coinvariants
    }

    pub fn grading_host(&self) -> Option<&Arc<HopfAlgebra>> {
        self.grading_host.as_ref()
    }

    pub fn has_translation(&self) -> bool {
        self.translation.is_some()
    }

    pub fn translation_witness(&self) -> Option<&[(usize, TensorElement)]> {
        self.translation.as_deref()
    }

    pub fn cleaving(&self) -> Option<&Cleaving> {
        self.cleaving.as_ref()
    }

    pub fn section(&self) -> Option<&SectionFn> {
        self.section.as_ref()
    }

    pub fn right_cocycles(&self) -> &BTreeMap<String, TwoCocycle> {
        &self.right_cocycles
    }

    pub fn left_cocycles(&self) -> &BTreeMap<String, TwoCocycle> {
        &self.left_cocycles
    }

    pub fn right_cocycle(&self, name: &str) -> Result<&TwoCocycle> {
        self.right_cocycles.get(name).ok_or_else(|| {
            Error::BadParams(format!(
                "`{}` has no right cocycle `{name}` (known: {})",
                self.name,
                self.right_cocycles.keys().cloned().collect::<Vec<_>>().join(", ")
            ))
        })
    }

    pub fn left_cocycle(&self, name: &str) -> Result<&TwoCocycle> {
        self.left_cocycles.get(name).ok_or_else(|| {
            Error::BadParams(format!(
                "`{}` has no left cocycle `{name}` (known: {})",
                self.name,
                self.left_cocycles.keys().cloned().collect::<Vec<_>>().join(", ")
            ))
        })
    }

    /// True when A and H are both finite-dimensional.
    pub fn is_finite(&self) -> bool {
        self.presentation().finite_basis().is_ok() && self.hopf().presentation().finite_basis().is_ok()
    }

    /// _σA_γ for the optional cocycles; right layer first.
    pub fn deform(&self, gamma: Option<&TwoCocycle>, sigma: Option<&TwoCocycle>) -> Result<Arc<TwistedComoduleAlgebra>> {
        let mut a = self.algebra.clone();
        if let Some(g) = gamma {
            a = TwistedComoduleAlgebra::twist_right(&a, g)?;
        }
        if let Some(s) = sigma {
            a = TwistedComoduleAlgebra::twist_left(&a, s)?;
        }
        Ok(a)
    }

    /// Same as [`deform`](Self::deform) with cocycles looked up by name.
    pub fn deform_named(&self, gamma: Option<&str>, sigma: Option<&str>) -> Result<Arc<TwistedComoduleAlgebra>> {
        let g = gamma.map(|n| self.right_cocycle(n)).transpose()?;
        let s = sigma.map(|n| self.left_cocycle(n)).transpose()?;
        self.deform(g, s)
    }
}

pub struct GaloisBuilder {
    inst: GaloisInstance,
    translation_text: Vec<(String, String)>,
}

impl GaloisBuilder {
    pub fn provenance(mut self, s: impl Into<String>) -> Self {
        self.inst.provenance = s.into();
        self
    }

    pub fn coinvariant(mut self, name: impl Into<String>, x: AlgebraElement) -> Self {
        self.inst.coinvariants.push((name.into(), x));
        self
    }

    pub fn grading_host(mut self, k: &Arc<HopfAlgebra>) -> Self {
        self.inst
            .left_cocycles
            .insert("trivial".to_string(), TwoCocycle::trivial(k));
        self.inst.grading_host = Some(k.clone());
        self
    }

    /// τ(h) for the H-generator `h`, as 2-leg text over A⊗A.
    pub fn translation(mut self, h: &str, tau: &str) -> Self {
        self.translation_text.push((h.to_string(), tau.to_string()));
        self
    }

    pub fn cleaving(mut self, c: Cleaving) -> Self {
        self.inst.cleaving = Some(c);
        self
    }

    pub fn section(mut self, s: SectionFn) -> Self {
        self.inst.section = Some(s);
        self
    }

    pub fn right_cocycle(mut self, g: TwoCocycle) -> Self {
        self.inst.right_cocycles.insert(g.name().to_string(), g);
        self
    }

    pub fn left_cocycle(mut self, s: TwoCocycle) -> Self {
        self.inst.left_cocycles.insert(s.name().to_string(), s);
        self
    }

    /// Runs the coaction, bicomodule and coinvariance checks.
    pub fn seal(self) -> Result<Arc<GaloisInstance>> {
        let mut inst = self.inst;
        let a = inst.presentation().clone();
        if !self.translation_text.is_empty() {
            let h = inst.hopf().presentation().clone();
            let mut tau = Vec::new();
            for (g, text) in &self.translation_text {
                let i = h
                    .generator_index(g)
                    .ok_or_else(|| Error::Parse(format!("unknown H-generator `{g}`")))?;
                tau.push((i, TensorElement::parse(&[a.clone(), a.clone()], text)?));
            }
            inst.translation = Some(tau);
        }
        let mut report = Report::new(format!("seal {}", inst.name));
        report.absorb(check_coaction_axioms(inst.algebra.coaction(), COACTION_DEGREE));
        if inst.grading_host.is_some() {
            report.absorb(check_bicomodule(inst.algebra.coaction(), COACTION_DEGREE));
        }
        for (name, b) in &inst.coinvariants {
            let ok = verify_coinvariant(&inst.algebra, b)?;
            report.compare(&true, &ok, || format!("coinvariance of {name}"));
        }
        if !report.passed() {
            return Err(Error::SealingFailed(Box::new(report)));
        }
        Ok(Arc::new(inst))
    }
}

/// χ(a⊗a′) = a•a′₀ ⊗ a′₁ with the product of `alg` (deformed if `alg` is).
pub fn canonical_map(alg: &TwistedComoduleAlgebra, x: &TensorElement) -> Result<TensorElement> {
    if x.leg_count() != 2 {
        return Err(Error::UnsupportedModule("χ acts on two-leg tensors".into()));
    }
    let a = alg.presentation().clone();
    let h = alg.base_hopf().presentation().clone();
    let mut out = TensorElement::zero(vec![a, h]);
    for (k, c) in x.terms() {
        let d = alg.coaction().coact_word(&k[1], 2)?;
        for (t, ct) in d.terms() {
            let cc = c * ct;
            for (w, cw) in alg.multiply_words(&k[0], &t[0])?.terms() {
                out.add_term(vec![w.clone(), t[1].clone()], &cc * cw);
            }
        }
    }
    Ok(out)
}

/// χ on a single pair of basis words.
pub fn canonical_map_words(alg: &TwistedComoduleAlgebra, a: &Word, b: &Word) -> Result<TensorElement> {
    let p = alg.presentation().clone();
    let mut x = TensorElement::zero(vec![p.clone(), p]);
    x.add_term(vec![a.clone(), b.clone()], Scalar::one(alg.presentation().ring()));
    canonical_map(alg, &x)
}

/// A 2-leg tensor over A⊗A read as a class in A⊗_B A.
#[derive(Clone, Debug)]
pub struct MiddleTensor {
    tensor: TensorElement,
    movable: Vec<usize>,
}

impl MiddleTensor {
    /// B-generators that are single letters of A can be moved across the middle.
    pub fn new(inst: &GaloisInstance, tensor: TensorElement) -> Self {
        let p = inst.presentation();
        let movable = inst
            .coinvariants
            .iter()
            .filter_map(|(_, b)| match b.terms().iter().collect::<Vec<_>>()[..] {
                [(w, c)] if w.len() == 1 && c.is_one() => Some(w.0[0]),
                _ => None,
            })
            .filter(|i| *i < p.generators().len())
            .collect();
        MiddleTensor { tensor, movable }
    }

    pub fn tensor(&self) -> &TensorElement {
        &self.tensor
    }

    /// Greedy representative: trailing B-letters of the left leg move right.
    pub fn reduce(&self) -> Result<TensorElement> {
        let legs = self.tensor.legs().to_vec();
        let p = legs[0].clone();
        let mut todo: Vec<(Vec<Word>, Scalar)> = self.tensor.terms().iter().map(|(k, c)| (k.clone(), c.clone())).collect();
        let mut acc: BTreeMap<Vec<Word>, Scalar> = BTreeMap::new();
        while let Some((k, c)) = todo.pop() {
            match k[0].0.last() {
                Some(l) if self.movable.contains(l) => {
                    let left = Word(k[0].0[..k[0].len() - 1].to_vec());
                    let right = p.reduce_word(&Word::letter(*l).concat(&k[1]))?;
                    for (w, cw) in right.iter() {
                        todo.push((vec![left.clone(), w.clone()], &c * cw));
                    }
                }
                _ => accumulate(&mut acc, k, c),
            }
        }
        let mut out = TensorElement::zero(legs);
        for (k, c) in acc {
            out.add_term(k, c);
        }
        Ok(out)
    }
}

/// χ(ab⊗a′) = χ(a⊗ba′) for every declared B-generator b and the given pairs.
pub fn check_middle_well_defined(inst: &GaloisInstance, alg: &TwistedComoduleAlgebra, pairs: &[[Word; 2]]) -> Report {
    let mut report = Report::new("middle B-linearity of the canonical map");
    let p = alg.presentation().clone();
    for [a, a2] in pairs {
        for (name, b) in &inst.coinvariants {
            let res: Result<(TensorElement, TensorElement)> = (|| {
                let x = AlgebraElement::from_word(&p, a)?;
                let y = AlgebraElement::from_word(&p, a2)?;
                let lhs = TensorElement::pure(&[&alg.multiply(&x, b)?, &y]);
                let rhs = TensorElement::pure(&[&x, &alg.multiply(b, &y)?]);
                Ok((canonical_map(alg, &lhs)?, canonical_map(alg, &rhs)?))
            })();
            let case = || format!("a = {}, b = {name}, a' = {}", p.format_word(a), p.format_word(a2));
            match res {
                Ok((l, r)) => report.compare(&l, &r, case),
                Err(e) => report.fail(case(), "evaluation", e),
            }
        }
    }
    report
}

/// Greedy middle reduction does not change χ on the given pairs.
pub fn check_middle_reduction(inst: &GaloisInstance, alg: &TwistedComoduleAlgebra, pairs: &[[Word; 2]]) -> Report {
    let mut report = Report::new("middle reduction representatives");
    let p = alg.presentation().clone();
    for [a, a2] in pairs {
        let mut x = TensorElement::zero(vec![p.clone(), p.clone()]);
        x.add_term(vec![a.clone(), a2.clone()], Scalar::one(p.ring()));
        let res: Result<(TensorElement, TensorElement)> = (|| {
            let r = MiddleTensor::new(inst, x.clone()).reduce()?;
            Ok((canonical_map(alg, &x)?, canonical_map(alg, &r)?))
        })();
        let case = || format!("{} ⊗ {}", p.format_word(a), p.format_word(a2));
        match res {
            Ok((l, r)) => report.compare(&l, &r, case),
            Err(e) => report.fail(case(), "evaluation", e),
        }
    }
    report
}

/// δ^{A⊗H̲}∘χ = (χ⊗id)∘δ^{A⊗A} with the coactions of `alg`'s Hopf algebra.
pub fn check_chi_colinear(alg: &TwistedComoduleAlgebra, pairs: &[[Word; 2]]) -> Report {
    let mut report = Report::new("canonical map is H-colinear");
    let h = alg.hopf().clone();
    let a = alg.presentation().clone();
    let hp = h.presentation().clone();
    for [x, y] in pairs {
        let res: Result<(TensorElement, TensorElement)> = (|| {
            let chi = canonical_map_words(alg, x, y)?;
            let mut lhs = TensorElement::zero(vec![a.clone(), hp.clone(), hp.clone()]);
            for (k, c) in chi.terms() {
                let d = alg.coaction().coact_word(&k[0], 2)?;
                let ad = adjoint_coaction_word(&*h, &k[1])?;
                for (s, cs) in d.terms() {
                    for (t, ct) in ad.terms() {
                        let f = &(c * cs) * ct;
                        for (w, cw) in h.multiply_words(&s[1], &t[1])?.terms() {
                            lhs.add_term(vec![s[0].clone(), t[0].clone(), w.clone()], &f * cw);
                        }
                    }
                }
            }
            let dx = alg.coaction().coact_word(x, 2)?;
            let dy = alg.coaction().coact_word(y, 2)?;
            let mut rhs = TensorElement::zero(vec![a.clone(), hp.clone(), hp.clone()]);
            for (s, cs) in dx.terms() {
                for (t, ct) in dy.terms() {
                    let f = cs * ct;
                    let chi = canonical_map_words(alg, &s[0], &t[0])?;
                    let prod = h.multiply_words(&s[1], &t[1])?;
                    for (k, ck) in chi.terms() {
                        for (w, cw) in prod.terms() {
                            rhs.add_term(vec![k[0].clone(), k[1].clone(), w.clone()], &(&f * ck) * cw);
                        }
                    }
                }
            }
            Ok((lhs, rhs))
        })();
        let case = || format!("{} ⊗ {}", a.format_word(x), a.format_word(y));
        match res {
            Ok((l, r)) => report.compare(&l, &r, case),
            Err(e) => report.fail(case(), "evaluation", e),
        }
    }
    report
}

/// Every term of χ(a⊗a′) has K-degree deg a + deg a′.
pub fn check_chi_grading(alg: &TwistedComoduleAlgebra, pairs: &[[Word; 2]]) -> Report {
    let mut report = Report::new("canonical map preserves the grading");
    let a = alg.presentation().clone();
    let g = a.grading();
    for [x, y] in pairs {
        let want = g.add(&a.word_degree(x), &a.word_degree(y));
        match canonical_map_words(alg, x, y) {
            Ok(chi) => {
                for k in chi.terms().keys() {
                    let got = a.word_degree(&k[0]);
                    report.compare(&format!("{want:?}"), &format!("{got:?}"), || {
                        format!("{} ⊗ {} term {}", a.format_word(x), a.format_word(y), a.format_word(&k[0]))
                    });
                }
            }
            Err(e) => report.fail(format!("{} ⊗ {}", a.format_word(x), a.format_word(y)), "evaluation", e),
        }
    }
    report
}

fn terms_element(p: &Arc<Presentation>, terms: BTreeMap<Word, Scalar>) -> Result<AlgebraElement> {
    AlgebraElement::normal_form(p, terms)
}

/// Q(h) = h₃ u_γ(h₁) γ̄(S(h₂)⊗h₄).
pub fn map_q(h: &dyn HopfStructure, gamma: &TwoCocycle, x: &AlgebraElement) -> Result<AlgebraElement> {
    q_generic(h, gamma, x, false)
}

/// Q⁻¹(h) = h₃ ū_γ(h₂) γ(S(h₁)⊗h₄).
pub fn map_q_inv(h: &dyn HopfStructure, gamma: &TwoCocycle, x: &AlgebraElement) -> Result<AlgebraElement> {
    q_generic(h, gamma, x, true)
}

fn q_generic(h: &dyn HopfStructure, gamma: &TwoCocycle, x: &AlgebraElement, inverse: bool) -> Result<AlgebraElement> {
    let p = h.presentation().clone();
    if gamma.is_trivial() {
        return Ok(x.clone());
    }
    let u = if inverse { u_bar_gamma(gamma) } else { u_gamma(gamma) };
    let mut acc = BTreeMap::new();
    for (w, c) in x.terms() {
        let d = h.coproduct_word(w, 4)?;
        for (k, ck) in d.terms() {
            let (ui, si) = if inverse { (1, 0) } else { (0, 1) };
            let uv = u.eval_word(h, &k[ui])?;
            if uv.is_zero() {
                continue;
            }
            let s = h.antipode_word(&k[si])?;
            let right = AlgebraElement::from_word(&p, &k[3])?;
            let gv = if inverse {
                gamma.eval(&s, &right)
            } else {
                gamma.inverse_eval(&s, &right)?
            };
            if gv.is_zero() {
                continue;
            }
            accumulate(&mut acc, k[2].clone(), &(&(c * ck) * &uv) * &gv);
        }
    }
    terms_element(&p, acc)
}

/// Q⁻¹∘Q = Q∘Q⁻¹ = id and (Q⊗id)∘Ad_γ = Ad∘Q on the given words of H.
pub fn check_q(h: &Arc<dyn HopfStructure>, gamma: &TwoCocycle, words: &[Word]) -> Report {
    let mut report = Report::new(format!("Q for {}", gamma.name()));
    let p = h.presentation().clone();
    let hg = match twist_hopf(h.clone(), gamma) {
        Ok(x) => x,
        Err(e) => {
            report.fail("building H_γ", "twisted Hopf algebra", e);
            return report;
        }
    };
    for w in words {
        let case = || p.format_word(w);
        let res: Result<()> = (|| {
            let x = AlgebraElement::from_word(&p, w)?;
            let q = map_q(&**h, gamma, &x)?;
            let qi = map_q_inv(&**h, gamma, &x)?;
            report.compare(&x, &map_q_inv(&**h, gamma, &q)?, || format!("Q⁻¹Q({})", case()));
            report.compare(&x, &map_q(&**h, gamma, &qi)?, || format!("QQ⁻¹({})", case()));
            let adg = adjoint_coaction_word(&*hg, w)?;
            let lhs = adg.map_leg(0, &p, |v| map_q(&**h, gamma, &AlgebraElement::from_word(&p, v)?))?;
            let rhs = adjoint_coaction(&**h, &q)?;
            report.compare(&rhs, &lhs, || format!("Ad-intertwining at {}", case()));
            Ok(())
        })();
        if let Err(e) = res {
            report.fail(case(), "evaluation", e);
        }
    }
    report
}

fn pair_tensor(p: &Arc<Presentation>, a: &Word, b: &Word) -> TensorElement {
    let mut x = TensorElement::zero(vec![p.clone(), p.clone()]);
    x.add_term(vec![a.clone(), b.clone()], Scalar::one(p.ring()));
    x
}

/// (id⊗Q)∘χ_γ = φ⁻¹_{A,H̲}∘χ∘φ_{A,A} for the top right layer of `alg`.
pub fn verify_diagram_gamma(alg: &TwistedComoduleAlgebra, pairs: &[[Word; 2]]) -> Result<Report> {
    let (parent, gamma) = match (alg.parent(), alg.top_layer()) {
        (Some(p), Some(Layer::Right(g))) => (p.clone(), g.clone()),
        _ => {
            return Err(Error::UnsupportedModule(
                "diagram γ needs an algebra whose top layer is a right twist".into(),
            ))
        }
    };
    let mut report = Report::new(format!("diagram for χ twisted on the right by {}", gamma.name()));
    let a = alg.presentation().clone();
    let hbase = parent.hopf().clone();
    let hp = hbase.presentation().clone();
    let delta = alg.coaction().clone();
    for [x, y] in pairs {
        let case = || format!("{} ⊗ {}", a.format_word(x), a.format_word(y));
        let res: Result<(TensorElement, TensorElement)> = (|| {
            let t = pair_tensor(&a, x, y);
            let lhs = canonical_map(alg, &t)?
                .map_leg(1, &hp, |v| map_q(&*hbase, &gamma, &AlgebraElement::from_word(&hp, v)?))?;
            let f = phi(&t, LegComodule::Algebra(&delta), LegComodule::Algebra(&delta), &gamma, false)?;
            let chi = canonical_map(&parent, &f)?;
            let rhs = phi(&chi, LegComodule::Algebra(&delta), LegComodule::Adjoint(&*hbase), &gamma, true)?;
            Ok((lhs, rhs))
        })();
        match res {
            Ok((l, r)) => report.compare(&r, &l, case),
            Err(e) => report.fail(case(), "evaluation", e),
        }
    }
    Ok(report)
}

/// _σχ = (φ^ℓ_{A,H̲})⁻¹∘χ∘φ^ℓ_{A,A} for the top left layer of `alg`.
pub fn verify_diagram_sigma(alg: &TwistedComoduleAlgebra, pairs: &[[Word; 2]]) -> Result<Report> {
    let (parent, sigma) = match (alg.parent(), alg.top_layer()) {
        (Some(p), Some(Layer::Left(s))) => (p.clone(), s.clone()),
        _ => {
            return Err(Error::UnsupportedModule(
                "diagram σ needs an algebra whose top layer is a left twist".into(),
            ))
        }
    };
    let mut report = Report::new(format!("diagram for χ twisted on the left by {}", sigma.name()));
    let a = alg.presentation().clone();
    for [x, y] in pairs {
        let case = || format!("{} ⊗ {}", a.format_word(x), a.format_word(y));
        let res: Result<(TensorElement, TensorElement)> = (|| {
            let t = pair_tensor(&a, x, y);
            let lhs = canonical_map(alg, &t)?;
            let f = phi_left(&t, LegGrading::Graded(&a), LegGrading::Graded(&a), &sigma, false)?;
            let chi = canonical_map(&parent, &f)?;
            let rhs = phi_left(&chi, LegGrading::Graded(&a), LegGrading::Trivial, &sigma, true)?;
            Ok((lhs, rhs))
        })();
        match res {
            Ok((l, r)) => report.compare(&r, &l, case),
            Err(e) => report.fail(case(), "evaluation", e),
        }
    }
    Ok(report)
}

/// δ(x) = x⊗1.
pub fn verify_coinvariant(alg: &TwistedComoduleAlgebra, x: &AlgebraElement) -> Result<bool> {
    let d = alg.coaction().coact(x, 2)?;
    let one = AlgebraElement::one(alg.base_hopf().presentation());
    Ok(d == TensorElement::pure(&[x, &one]))
}

/// Basis of the coinvariants inside the span of `words` (assumed normal).
pub fn coinvariant_space(alg: &TwistedComoduleAlgebra, words: &[Word]) -> Result<Vec<AlgebraElement>> {
    let p = alg.presentation().clone();
    let one = Word::one();
    let mut index: HashMap<Vec<Word>, usize> = HashMap::new();
    let mut images = Vec::with_capacity(words.len());
    for w in words {
        let mut row: SparseRow = BTreeMap::new();
        let d = alg.coaction().coact_word(w, 2)?;
        for (k, c) in d.terms() {
            let n = index.len();
            let col = *index.entry(k.clone()).or_insert(n);
            accumulate(&mut row, col, c.clone());
        }
        let n = index.len();
        let col = *index.entry(vec![w.clone(), one.clone()]).or_insert(n);
        accumulate(&mut row, col, -Scalar::one(p.ring()));
        images.push(row);
    }
    let kernel = linalg::kernel(p.ring(), &images)?;
    kernel
        .into_iter()
        .map(|v| {
            let terms: BTreeMap<Word, Scalar> = v.into_iter().map(|(i, c)| (words[i].clone(), c)).collect();
            AlgebraElement::normal_form(&p, terms)
        })
        .collect()
}

/// Coinvariants among the normal words of length ≤ `degree`.
pub fn find_coinvariants(alg: &TwistedComoduleAlgebra, degree: usize) -> Result<Vec<AlgebraElement>> {
    let p = alg.presentation();
    if !p.verified_for(degree) {
        return Err(Error::ConfluenceNotVerified {
            name: p.name().to_string(),
            verified: p.confluence_bound(),
            requested: degree,
        });
    }
    coinvariant_space(alg, &p.basis_up_to(degree)?)
}

/// Rank data of the canonical map on a finite-dimensional instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bijectivity {
    pub dim_a: usize,
    pub dim_h: usize,
    pub dim_b: usize,
    pub relation_rank: usize,
    pub chi_rank: usize,
    pub well_defined: bool,
}

impl Bijectivity {
    pub fn quotient_dim(&self) -> usize {
        self.dim_a * self.dim_a - self.relation_rank
    }

    pub fn bijective(&self) -> bool {
        self.well_defined && self.chi_rank == self.dim_a * self.dim_h && self.quotient_dim() == self.dim_a * self.dim_h
    }

    pub fn report(&self, label: &str) -> Report {
        let mut r = Report::new(format!("finite bijectivity of {label}"));
        r.note(format!(
            "dim A = {}, dim H = {}, dim B = {}, dim A⊗_B A = {}, rank χ = {}",
            self.dim_a,
            self.dim_h,
            self.dim_b,
            self.quotient_dim(),
            self.chi_rank
        ));
        r.compare(&true, &self.well_defined, || "χ vanishes on the B-relations".into());
        r.compare(&(self.dim_a * self.dim_h), &self.chi_rank, || "rank χ = dim A⊗H".into());
        r.compare(&(self.dim_a * self.dim_h), &self.quotient_dim(), || "dim A⊗_B A = dim A⊗H".into());
        r
    }
}

fn word_index(words: &[Word]) -> HashMap<Word, usize> {
    words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect()
}

fn lookup(index: &HashMap<Word, usize>, w: &Word) -> Result<usize> {
    index
        .get(w)
        .copied()
        .ok_or_else(|| Error::NotFiniteDimensional(format!("word {w:?} outside the finite basis")))
}

/// Exact ranks of χ: A⊗_B A → A⊗H with the product of `alg`.
pub fn bijectivity_data(alg: &TwistedComoduleAlgebra) -> Result<Bijectivity> {
    let p = alg.presentation().clone();
    let a_basis = p.finite_basis()?;
    let h_basis = alg.base_hopf().presentation().finite_basis()?;
    let (n, m) = (a_basis.len(), h_basis.len());
    let ai = word_index(&a_basis);
    let hi = word_index(&h_basis);
    let b_basis = coinvariant_space(alg, &a_basis)?;
    let mut chi_rows = Vec::with_capacity(n * n);
    for x in &a_basis {
        for y in &a_basis {
            let mut row = BTreeMap::new();
            for (k, c) in canonical_map_words(alg, x, y)?.terms() {
                accumulate(&mut row, lookup(&ai, &k[0])? * m + lookup(&hi, &k[1])?, c.clone());
            }
            chi_rows.push(row);
        }
    }
    let mut relations = Echelon::new(n * n);
    let mut well_defined = true;
    for b in &b_basis {
        for x in &a_basis {
            let ex = AlgebraElement::from_word(&p, x)?;
            let xb = alg.multiply(&ex, b)?;
            for y in &a_basis {
                let ey = AlgebraElement::from_word(&p, y)?;
                let by = alg.multiply(b, &ey)?;
                let mut row: SparseRow = BTreeMap::new();
                for (w, c) in xb.terms() {
                    accumulate(&mut row, lookup(&ai, w)? * n + lookup(&ai, y)?, c.clone());
                }
                for (w, c) in by.terms() {
                    accumulate(&mut row, lookup(&ai, x)? * n + lookup(&ai, w)?, -c.clone());
                }
                let mut image: SparseRow = BTreeMap::new();
                for (i, c) in &row {
                    for (j, v) in &chi_rows[*i] {
                        accumulate(&mut image, *j, c * v);
                    }
                }
                well_defined &= image.is_empty();
                relations.insert(row)?;
            }
        }
    }
    Ok(Bijectivity {
        dim_a: n,
        dim_h: m,
        dim_b: b_basis.len(),
        relation_rank: relations.rank(),
        chi_rank: linalg::rank(chi_rows)?,
        well_defined,
    })
}

pub fn check_bijective_finite(alg: &TwistedComoduleAlgebra) -> Report {
    match bijectivity_data(alg) {
        Ok(b) => b.report(alg.name()),
        Err(e) => {
            let mut r = Report::new(format!("finite bijectivity of {}", alg.name()));
            r.fail("setup", "finite-dimensional data", e);
            r
        }
    }
}

/// Injectivity of χ on the truncation A_{≤d}⊗A_{≤d'} (d + d′ ≤ `bound`),
/// per K-degree: the kernel must be spanned by the truncated B-relations.
pub fn check_truncated_injectivity(alg: &TwistedComoduleAlgebra, bound: usize) -> Result<Report> {
    let p = alg.presentation().clone();
    let mut report = Report::new(format!("truncated injectivity of χ up to {bound}"));
    let basis = p.basis_up_to(bound)?;
    let b_space = find_coinvariants(alg, bound)?;
    let g = p.grading();
    let mut pairs: BTreeMap<Vec<i64>, Vec<(Word, Word)>> = BTreeMap::new();
    for x in &basis {
        for y in &basis {
            if x.len() + y.len() <= bound {
                pairs
                    .entry(g.add(&p.word_degree(x), &p.word_degree(y)))
                    .or_default()
                    .push((x.clone(), y.clone()));
            }
        }
    }
    for (deg, list) in pairs {
        let index: HashMap<(Word, Word), usize> = list.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        let mut out_index: HashMap<Vec<Word>, usize> = HashMap::new();
        let mut images = Vec::new();
        for (x, y) in &list {
            let mut row = BTreeMap::new();
            for (k, c) in canonical_map_words(alg, x, y)?.terms() {
                let l = out_index.len();
                accumulate(&mut row, *out_index.entry(k.clone()).or_insert(l), c.clone());
            }
            images.push(row);
        }
        let kernel_dim = images.len() - linalg::rank(images.iter().cloned())?;
        let mut rel = Echelon::new(list.len());
        for b in &b_space {
            let Some(bd) = b.homogeneous_degree() else { continue };
            let blen = b.terms().keys().map(Word::len).max().unwrap_or(0);
            for x in &basis {
                for y in &basis {
                    if x.len() + y.len() + blen > bound || g.add(&g.add(&p.word_degree(x), &bd), &p.word_degree(y)) != deg {
                        continue;
                    }
                    let ex = AlgebraElement::from_word(&p, x)?;
                    let ey = AlgebraElement::from_word(&p, y)?;
                    let mut row = BTreeMap::new();
                    let mut inside = true;
                    for (w, c) in alg.multiply(&ex, b)?.terms() {
                        match index.get(&(w.clone(), y.clone())) {
                            Some(&i) => accumulate(&mut row, i, c.clone()),
                            None => inside = false,
                        }
                    }
                    for (w, c) in alg.multiply(b, &ey)?.terms() {
                        match index.get(&(x.clone(), w.clone())) {
                            Some(&i) => accumulate(&mut row, i, -c.clone()),
                            None => inside = false,
                        }
                    }
                    if inside {
                        rel.insert(row)?;
                    }
                }
            }
        }
        report.compare(&rel.rank(), &kernel_dim, || format!("degree {deg:?}: dim ker χ vs B-relations"));
    }
    Ok(report)
}

fn translation_gen(inst: &GaloisInstance, g: usize) -> Result<TensorElement> {
    inst.translation
        .as_ref()
        .ok_or_else(|| Error::MissingWitness(inst.name.clone(), "translation map"))?
        .iter()
        .find(|(i, _)| *i == g)
        .map(|(_, t)| t.clone())
        .ok_or_else(|| Error::MissingWitness(inst.name.clone(), "translation map on every H-generator"))
}

/// τ(gw) = τ(g)¹τ(w)¹ ⊗ τ(w)²τ(g)² in the undeformed algebra.
fn translation_word(inst: &GaloisInstance, w: &Word) -> Result<TensorElement> {
    let a = inst.presentation().clone();
    if w.is_empty() {
        return Ok(TensorElement::unit(vec![a.clone(), a]));
    }
    let head = translation_gen(inst, w.0[0])?;
    let rest = translation_word(inst, &Word(w.0[1..].to_vec()))?;
    let mut out = TensorElement::zero(vec![a.clone(), a.clone()]);
    for (k, c) in head.terms() {
        for (l, d) in rest.terms() {
            let left = a.reduce_word(&k[0].concat(&l[0]))?;
            let right = a.reduce_word(&l[1].concat(&k[1]))?;
            for (x, cx) in left.iter() {
                for (y, cy) in right.iter() {
                    out.add_term(vec![x.clone(), y.clone()], &(&(c * d) * cx) * cy);
                }
            }
        }
    }
    Ok(out)
}

fn translation_element(inst: &GaloisInstance, alg: &TwistedComoduleAlgebra, h: &AlgebraElement) -> Result<TensorElement> {
    let a = inst.presentation().clone();
    let mut out = TensorElement::zero(vec![a.clone(), a]);
    for (w, c) in h.terms() {
        out.add_scaled(&translation_at(inst, alg, w)?, c)?;
    }
    Ok(out)
}

/// τ for the deformed algebra: φ⁻¹_{A,A}∘τ∘Q on right layers and
/// (φ^ℓ_{A,A})⁻¹∘τ on left layers.
pub fn translation_at(inst: &GaloisInstance, alg: &TwistedComoduleAlgebra, w: &Word) -> Result<TensorElement> {
    match (alg.parent(), alg.top_layer()) {
        (Some(parent), Some(Layer::Right(g))) => {
            let hp = parent.hopf().presentation().clone();
            let q = map_q(&**parent.hopf(), g, &AlgebraElement::from_word(&hp, w)?)?;
            let t = translation_element(inst, parent, &q)?;
            let d = alg.coaction();
            phi(&t, LegComodule::Algebra(d), LegComodule::Algebra(d), g, true)
        }
        (Some(parent), Some(Layer::Left(s))) => {
            let t = translation_at(inst, parent, w)?;
            let a = alg.presentation();
            phi_left(&t, LegGrading::Graded(a), LegGrading::Graded(a), s, true)
        }
        _ => translation_word(inst, w),
    }
}

/// χ(τ(h)) = 1⊗h on H-words of length ≤ `degree` (generators at 1).
pub fn verify_translation_map(inst: &GaloisInstance, alg: &TwistedComoduleAlgebra, degree: usize) -> Result<Report> {
    if inst.translation.is_none() {
        return Err(Error::MissingWitness(inst.name.clone(), "translation map"));
    }
    let hp = alg.base_hopf().presentation().clone();
    let a = alg.presentation().clone();
    let mut report = Report::new(format!("translation map of {}", alg.name()));
    for w in hp.basis_up_to(degree)? {
        let case = || hp.format_word(&w);
        let res: Result<(TensorElement, TensorElement)> = (|| {
            let t = translation_at(inst, alg, &w)?;
            let lhs = canonical_map(alg, &t)?;
            let mut rhs = TensorElement::zero(vec![a.clone(), hp.clone()]);
            rhs.add_term(vec![Word::one(), w.clone()], Scalar::one(a.ring()));
            Ok((lhs, rhs))
        })();
        match res {
            Ok((l, r)) => report.compare(&r, &l, case),
            Err(e) => report.fail(case(), "evaluation", e),
        }
    }
    Ok(report)
}

/// B-basis inside the finite basis of A, or inside words up to `degree`.
fn b_basis(inst: &GaloisInstance, degree: usize) -> Result<Vec<AlgebraElement>> {
    let p = inst.presentation();
    match p.finite_basis() {
        Ok(words) => coinvariant_space(&inst.algebra, &words),
        Err(_) => find_coinvariants(&inst.algebra, degree),
    }
}

fn a_words(p: &Presentation, degree: usize) -> Result<Vec<Word>> {
    match p.finite_basis() {
        Ok(w) => Ok(w),
        Err(_) => p.basis_up_to(degree),
    }
}

/// θ⁻¹θ = id, θθ⁻¹ = id, θ(ba) = bθ(a) and (θ⊗id)δ = (id⊗Δ)θ.
pub fn verify_cleft(inst: &GaloisInstance, degree: usize) -> Result<Report> {
    let c = inst
        .cleaving
        .as_ref()
        .ok_or_else(|| Error::MissingWitness(inst.name.clone(), "cleaving map"))?;
    let a = inst.presentation().clone();
    let h = inst.hopf().clone();
    let hp = h.presentation().clone();
    let mut report = Report::new(format!("cleaving map of {}", inst.name));
    let words = a_words(&a, degree)?;
    let bs = b_basis(inst, degree)?;
    let inv = |t: &TensorElement| -> Result<AlgebraElement> {
        let mut acc = AlgebraElement::zero(&a);
        for (k, v) in t.terms() {
            acc = acc.try_add(&(c.inverse)(&k[0], &k[1])?.scale(v))?;
        }
        Ok(acc)
    };
    let theta = |x: &AlgebraElement| -> Result<TensorElement> {
        let mut acc = TensorElement::zero(vec![a.clone(), hp.clone()]);
        for (w, v) in x.terms() {
            acc.add_scaled(&(c.theta)(w)?, v)?;
        }
        Ok(acc)
    };
    for w in &words {
        let case = a.format_word(w);
        let res: Result<()> = (|| {
            let x = AlgebraElement::from_word(&a, w)?;
            let t = (c.theta)(w)?;
            report.compare(&x, &inv(&t)?, || format!("θ⁻¹θ({case})"));
            for b in &bs {
                let lhs = theta(&inst.algebra.multiply(b, &x)?)?;
                let rhs = TensorElement::pure(&[b, &AlgebraElement::one(&hp)]).mul_legwise(&t)?;
                report.compare(&rhs, &lhs, || format!("θ(b·{case})"));
            }
            let d = inst.algebra.coaction().coact_word(w, 2)?;
            let lhs = d.expand_leg(0, &[a.clone(), hp.clone()], |v| Ok(Arc::new((c.theta)(v)?)))?;
            let rhs = t.expand_leg(1, &[hp.clone(), hp.clone()], |v| h.coproduct_word(v, 2))?;
            report.compare(&rhs, &lhs, || format!("colinearity at {case}"));
            Ok(())
        })();
        if let Err(e) = res {
            report.fail(case, "evaluation", e);
        }
    }
    for b in &bs {
        for hw in hp.finite_basis().or_else(|_| hp.basis_up_to(degree))? {
            let res: Result<()> = (|| {
                let he = AlgebraElement::from_word(&hp, &hw)?;
                let pure = TensorElement::pure(&[b, &he]);
                report.compare(&pure, &theta(&inv(&pure)?)?, || format!("θθ⁻¹(b⊗{})", hp.format_word(&hw)));
                Ok(())
            })();
            if let Err(e) = res {
                report.fail(format!("θθ⁻¹ at {}", hp.format_word(&hw)), "evaluation", e);
            }
        }
    }
    Ok(report)
}

/// _σs for the layers of `alg`: right layers keep s, a left layer σ applies
/// 𝔖 and then (φ^ℓ_{B,A})⁻¹.
pub fn twisted_section(inst: &GaloisInstance, alg: &TwistedComoduleAlgebra, w: &Word) -> Result<TensorElement> {
    let s = inst
        .section
        .as_ref()
        .ok_or_else(|| Error::MissingWitness(inst.name.clone(), "section"))?;
    match (alg.parent(), alg.top_layer()) {
        (Some(parent), Some(Layer::Right(_))) => twisted_section(inst, parent, w),
        (Some(parent), Some(Layer::Left(sigma))) => {
            let a = alg.presentation().clone();
            let base = twisted_section(inst, parent, w)?;
            let g = a.grading();
            let mut prod = AlgebraElement::zero(&a);
            for (k, c) in base.terms() {
                prod = prod.try_add(&parent.multiply_words(&k[0], &k[1])?.scale(c))?;
            }
            let deg_w = a.word_degree(w);
            let f = if prod.is_zero() {
                Scalar::one(a.ring())
            } else {
                let dm = prod.homogeneous_degree().ok_or_else(|| {
                    Error::NotHomogeneous(format!("m(s({})) is not homogeneous", a.format_word(w)))
                })?;
                sigma.eval_degrees(&deg_w, &g.add(&g.neg(&deg_w), &dm))?
            };
            let frak = base.scale(&f);
            phi_left(&frak, LegGrading::Graded(&a), LegGrading::Graded(&a), sigma, true)
        }
        _ => s(w),
    }
}

/// m_σ∘_σs = id on the basis of A (or its words up to `degree`).
pub fn verify_section(inst: &GaloisInstance, alg: &TwistedComoduleAlgebra, degree: usize) -> Result<Report> {
    if inst.section.is_none() {
        return Err(Error::MissingWitness(inst.name.clone(), "section"));
    }
    let a = alg.presentation().clone();
    let mut report = Report::new(format!("section of {}", alg.name()));
    for w in a_words(&a, degree)? {
        let case = || a.format_word(&w);
        let res: Result<(AlgebraElement, AlgebraElement)> = (|| {
            let s = twisted_section(inst, alg, &w)?;
            let mut acc = AlgebraElement::zero(&a);
            for (k, c) in s.terms() {
                acc = acc.try_add(&alg.multiply_words(&k[0], &k[1])?.scale(c))?;
            }
            Ok((AlgebraElement::from_word(&a, &w)?, acc))
        })();
        match res {
            Ok((x, y)) => report.compare(&x, &y, || format!("m(s({}))", case())),
            Err(e) => report.fail(case(), "evaluation", e),
        }
    }
    Ok(report)
}
