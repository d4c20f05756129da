//! Hopf algebras over presentations, right coactions, gradings and the
//! corresponding axiom checkers.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::presentations::{check_same, same_presentation, AlgebraElement, Presentation, Word};
use crate::report::Report;
use crate::tensor::TensorElement;
use crate::Scalar;

/// Default degree bound for axiom checks run at sealing.
pub const DEFAULT_AXIOM_DEGREE: usize = 3;

/// Product, coproduct, counit and antipode on a fixed normal-form basis.
///
/// Implemented by [`HopfAlgebra`] and by twisted Hopf algebras, which share
/// the coalgebra structure of their base but change product and antipode.
pub trait HopfStructure: Send + Sync {
    fn presentation(&self) -> &Arc<Presentation>;
    fn label(&self) -> String;
    fn multiply_words(&self, a: &Word, b: &Word) -> Result<AlgebraElement>;
    /// Δ^{(legs−1)}(w); `legs = 1` returns `w` itself.
    fn coproduct_word(&self, w: &Word, legs: usize) -> Result<Arc<TensorElement>>;
    fn counit_word(&self, w: &Word) -> Scalar;
    fn antipode_word(&self, w: &Word) -> Result<AlgebraElement>;

    fn multiply(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        let p = self.presentation();
        check_same(p, x.presentation())?;
        check_same(p, y.presentation())?;
        let mut acc = AlgebraElement::zero(p);
        for (a, ca) in x.terms() {
            for (b, cb) in y.terms() {
                let prod = self.multiply_words(a, b)?;
                acc = acc.try_add(&prod.scale(&(ca * cb)))?;
            }
        }
        Ok(acc)
    }

    fn coproduct(&self, x: &AlgebraElement, legs: usize) -> Result<TensorElement> {
        let p = self.presentation();
        check_same(p, x.presentation())?;
        let mut acc = TensorElement::zero(vec![p.clone(); legs]);
        for (w, c) in x.terms() {
            acc.add_scaled(&*self.coproduct_word(w, legs)?, c)?;
        }
        Ok(acc)
    }

    fn counit(&self, x: &AlgebraElement) -> Result<Scalar> {
        check_same(self.presentation(), x.presentation())?;
        let mut acc = Scalar::zero(x.presentation().ring());
        for (w, c) in x.terms() {
            acc += &(c * &self.counit_word(w));
        }
        Ok(acc)
    }

    fn antipode(&self, x: &AlgebraElement) -> Result<AlgebraElement> {
        let p = self.presentation();
        check_same(p, x.presentation())?;
        let mut acc = AlgebraElement::zero(p);
        for (w, c) in x.terms() {
            acc = acc.try_add(&self.antipode_word(w)?.scale(c))?;
        }
        Ok(acc)
    }
}

type Cache<K, V> = RwLock<HashMap<K, V>>;

fn cached<K, V, F>(cache: &Cache<K, V>, key: K, compute: F) -> Result<V>
where
    K: std::hash::Hash + Eq + Clone,
    V: Clone,
    F: FnOnce() -> Result<V>,
{
    if let Some(v) = cache.read().expect("cache lock").get(&key) {
        return Ok(v.clone());
    }
    let v = compute()?;
    cache.write().expect("cache lock").insert(key, v.clone());
    Ok(v)
}

/// A presentation with Δ, ε, S given on generators.
pub struct HopfAlgebra {
    name: String,
    pres: Arc<Presentation>,
    delta: Vec<TensorElement>,
    eps: Vec<Scalar>,
    antipode: Vec<AlgebraElement>,
    antipode_inv: Option<Vec<AlgebraElement>>,
    gen_iter: Cache<(usize, usize), Arc<TensorElement>>,
    word_delta: Cache<(Word, usize), Arc<TensorElement>>,
    word_s: Cache<(Word, bool), AlgebraElement>,
}

impl fmt::Debug for HopfAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HopfAlgebra").field("name", &self.name).finish()
    }
}

impl HopfAlgebra {
    /// Generator data in generator order.
    pub fn new(
        name: impl Into<String>,
        pres: &Arc<Presentation>,
        delta: Vec<TensorElement>,
        eps: Vec<Scalar>,
        antipode: Vec<AlgebraElement>,
    ) -> Result<Self> {
        let n = pres.generators().len();
        if delta.len() != n || eps.len() != n || antipode.len() != n {
            return Err(Error::InvalidPresentation(format!(
                "Hopf data needs one entry per generator ({n})"
            )));
        }
        for d in &delta {
            if d.leg_count() != 2 || !d.legs().iter().all(|l| same_presentation(l, pres)) {
                return Err(Error::InvalidPresentation(
                    "coproduct images must be 2-leg tensors over the algebra".into(),
                ));
            }
        }
        for s in &antipode {
            check_same(pres, s.presentation())?;
        }
        Ok(HopfAlgebra {
            name: name.into(),
            pres: pres.clone(),
            delta,
            eps,
            antipode,
            antipode_inv: None,
            gen_iter: RwLock::new(HashMap::new()),
            word_delta: RwLock::new(HashMap::new()),
            word_s: RwLock::new(HashMap::new()),
        })
    }

    /// Generator data as text: `(generator, Δ, ε, S)` per generator, any order.
    pub fn from_text(
        name: impl Into<String>,
        pres: &Arc<Presentation>,
        data: &[(&str, &str, &str, &str)],
    ) -> Result<Self> {
        let n = pres.generators().len();
        let legs = vec![pres.clone(), pres.clone()];
        let mut delta = vec![None; n];
        let mut eps = vec![None; n];
        let mut s = vec![None; n];
        for (g, d, e, a) in data {
            let i = pres
                .generator_index(g)
                .ok_or_else(|| Error::Parse(format!("unknown generator `{g}`")))?;
            delta[i] = Some(TensorElement::parse(&legs, d)?);
            eps[i] = Some(Scalar::parse(pres.ring(), e)?);
            s[i] = Some(AlgebraElement::parse(pres, a)?);
        }
        fn collect<T>(p: &Presentation, v: Vec<Option<T>>) -> Result<Vec<T>> {
            v.into_iter()
                .enumerate()
                .map(|(i, x)| {
                    x.ok_or_else(|| {
                        Error::InvalidPresentation(format!(
                            "no Hopf data for `{}`",
                            p.generators()[i].name
                        ))
                    })
                })
                .collect()
        }
        Self::new(
            name,
            pres,
            collect(pres, delta)?,
            collect(pres, eps)?,
            collect(pres, s)?,
        )
    }

    pub fn with_antipode_inverse(mut self, inv: Vec<AlgebraElement>) -> Result<Self> {
        if inv.len() != self.pres.generators().len() {
            return Err(Error::InvalidPresentation("S⁻¹ needs one entry per generator".into()));
        }
        self.antipode_inv = Some(inv);
        Ok(self)
    }

    /// Runs [`check_hopf_axioms`] and refuses to seal on failure.
    pub fn seal(self, max_degree: usize) -> Result<Arc<Self>> {
        let h = Arc::new(self);
        let report = check_hopf_algebra(&h, max_degree);
        if !report.passed() {
            return Err(Error::SealingFailed(Box::new(report)));
        }
        Ok(h)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generator_coproduct(&self, i: usize) -> &TensorElement {
        &self.delta[i]
    }

    pub fn generator_counit(&self, i: usize) -> &Scalar {
        &self.eps[i]
    }

    pub fn generator_antipode(&self, i: usize) -> &AlgebraElement {
        &self.antipode[i]
    }

    pub fn has_antipode_inverse(&self) -> bool {
        self.antipode_inv.is_some()
    }

    pub fn generator_antipode_inverse(&self, i: usize) -> Option<&AlgebraElement> {
        self.antipode_inv.as_ref().map(|v| &v[i])
    }

    fn generator_iterated(&self, g: usize, legs: usize) -> Result<Arc<TensorElement>> {
        cached(&self.gen_iter, (g, legs), || {
            Ok(Arc::new(match legs {
                1 => TensorElement::from_element(&AlgebraElement::from_word(
                    &self.pres,
                    &Word::letter(g),
                )?),
                2 => self.delta[g].clone(),
                _ => {
                    let prev = self.generator_iterated(g, legs - 1)?;
                    let pair = [self.pres.clone(), self.pres.clone()];
                    prev.expand_leg(legs - 2, &pair, |w| self.coproduct_word(w, 2))?
                }
            }))
        })
    }

    /// S⁻¹ on a word (anti-multiplicative extension of the supplied data).
    pub fn antipode_inverse_word(&self, w: &Word) -> Result<AlgebraElement> {
        if self.antipode_inv.is_none() {
            return Err(Error::MissingWitness(self.name.clone(), "antipode inverse"));
        }
        self.anti_extend(w, true)
    }

    fn anti_extend(&self, w: &Word, inverse: bool) -> Result<AlgebraElement> {
        cached(&self.word_s, (w.clone(), inverse), || {
            let data = if inverse {
                self.antipode_inv.as_ref().expect("checked")
            } else {
                &self.antipode
            };
            let mut acc = AlgebraElement::one(&self.pres);
            for &l in w.0.iter().rev() {
                acc = acc.try_mul(&data[l])?;
            }
            Ok(acc)
        })
    }

    /// Coproduct of a word evaluated letter by letter, without reducing it first.
    pub fn coproduct_raw(&self, w: &Word, legs: usize) -> Result<TensorElement> {
        let mut acc = TensorElement::unit(vec![self.pres.clone(); legs]);
        for &l in &w.0 {
            acc = acc.mul_legwise(&*self.generator_iterated(l, legs)?)?;
        }
        Ok(acc)
    }

    fn counit_raw(&self, w: &Word) -> Scalar {
        let mut acc = Scalar::one(self.pres.ring());
        for &l in &w.0 {
            acc = &acc * &self.eps[l];
        }
        acc
    }
}

impl HopfStructure for HopfAlgebra {
    fn presentation(&self) -> &Arc<Presentation> {
        &self.pres
    }

    fn label(&self) -> String {
        self.name.clone()
    }

    fn multiply_words(&self, a: &Word, b: &Word) -> Result<AlgebraElement> {
        AlgebraElement::from_word(&self.pres, &a.concat(b))
    }

    fn coproduct_word(&self, w: &Word, legs: usize) -> Result<Arc<TensorElement>> {
        assert!(legs >= 1, "coproduct needs at least one leg");
        if legs == 1 {
            return Ok(Arc::new(TensorElement::from_element(&AlgebraElement::from_word(
                &self.pres, w,
            )?)));
        }
        cached(&self.word_delta, (w.clone(), legs), || {
            Ok(Arc::new(self.coproduct_raw(w, legs)?))
        })
    }

    fn counit_word(&self, w: &Word) -> Scalar {
        self.counit_raw(w)
    }

    fn antipode_word(&self, w: &Word) -> Result<AlgebraElement> {
        self.anti_extend(w, false)
    }
}

/// Iterated coproduct with `legs ≥ 2` legs.
pub fn coproduct(h: &dyn HopfStructure, x: &AlgebraElement, legs: usize) -> Result<TensorElement> {
    h.coproduct(x, legs)
}

/// Right adjoint coaction h ↦ h₍₂₎ ⊗ S(h₍₁₎)h₍₃₎.
pub fn adjoint_coaction_word(h: &dyn HopfStructure, w: &Word) -> Result<TensorElement> {
    let p = h.presentation();
    let d3 = h.coproduct_word(w, 3)?;
    let mut out = TensorElement::zero(vec![p.clone(), p.clone()]);
    for (k, c) in d3.terms() {
        let right = h.multiply(&h.antipode_word(&k[0])?, &AlgebraElement::from_word(p, &k[2])?)?;
        let left = AlgebraElement::from_word(p, &k[1])?;
        out.add_scaled(&TensorElement::pure(&[&left, &right]), c)?;
    }
    Ok(out)
}

pub fn adjoint_coaction(h: &dyn HopfStructure, x: &AlgebraElement) -> Result<TensorElement> {
    let p = h.presentation();
    check_same(p, x.presentation())?;
    let mut out = TensorElement::zero(vec![p.clone(), p.clone()]);
    for (w, c) in x.terms() {
        out.add_scaled(&adjoint_coaction_word(h, w)?, c)?;
    }
    Ok(out)
}

/// Convolution (f∗g)(w) = f(w₍₁₎) g(w₍₂₎).
pub fn convolve<F, G>(h: &dyn HopfStructure, f: F, g: G, w: &Word) -> Result<Scalar>
where
    F: Fn(&Word) -> Result<Scalar>,
    G: Fn(&Word) -> Result<Scalar>,
{
    h.coproduct_word(w, 2)?
        .contract_all(|k| Ok(&f(&k[0])? * &g(&k[1])?))
}

fn show<T: fmt::Display>(r: &Result<T>) -> String {
    match r {
        Ok(x) => x.to_string(),
        Err(e) => format!("error: {e}"),
    }
}

fn record<T: PartialEq + fmt::Display>(report: &mut Report, case: String, a: Result<T>, b: Result<T>) {
    match (&a, &b) {
        (Ok(x), Ok(y)) if x == y => report.pass(),
        _ => report.fail(case, show(&a), show(&b)),
    }
}

/// Coassociativity, counit and antipode axioms on every basis word of
/// degree ≤ `max_degree`, plus (for presented Hopf algebras) that the
/// generator data respects the relations.
pub fn check_hopf_axioms(h: &dyn HopfStructure, max_degree: usize) -> Report {
    let p = h.presentation().clone();
    let mut report = Report::new(format!("hopf-axioms[{}]", h.label()));
    let basis = match p.basis_up_to(max_degree) {
        Ok(b) => b,
        Err(e) => {
            report.fail("basis", format!("degree {max_degree} basis"), e);
            return report;
        }
    };
    let pair = [p.clone(), p.clone()];
    for w in &basis {
        let name = p.format_word(w);
        let d = h.coproduct_word(w, 2);
        let left = d
            .as_ref()
            .map_err(clone_err)
            .and_then(|d| d.expand_leg(0, &pair, |x| h.coproduct_word(x, 2)));
        let right = d
            .as_ref()
            .map_err(clone_err)
            .and_then(|d| d.expand_leg(1, &pair, |x| h.coproduct_word(x, 2)));
        record(&mut report, format!("coassociativity on {name}"), left, right);
        let x = AlgebraElement::from_word(&p, w);
        for leg in [0usize, 1] {
            let c = d.as_ref().map_err(clone_err).and_then(|d| {
                d.contract(&[leg], |k| Ok(h.counit_word(k[0])))?.to_element()
            });
            record(
                &mut report,
                format!("counit on leg {} of {name}", leg + 1),
                x.as_ref().map(|x| x.clone()).map_err(clone_err),
                c,
            );
        }
        let unit = AlgebraElement::scalar(&p, h.counit_word(w));
        for leg in [0usize, 1] {
            let m = d.as_ref().map_err(clone_err).and_then(|d| {
                let mut acc = AlgebraElement::zero(&p);
                for (k, c) in d.terms() {
                    let (a, b) = if leg == 0 {
                        (h.antipode_word(&k[0])?, AlgebraElement::from_word(&p, &k[1])?)
                    } else {
                        (AlgebraElement::from_word(&p, &k[0])?, h.antipode_word(&k[1])?)
                    };
                    acc = acc.try_add(&h.multiply(&a, &b)?.scale(c))?;
                }
                Ok(acc)
            });
            record(
                &mut report,
                format!("antipode on leg {} of {name}", leg + 1),
                Ok(unit.clone()),
                m,
            );
        }
    }
    report
}

fn clone_err(e: &Error) -> Error {
    Error::Parse(e.to_string())
}

/// Δ, ε and S evaluated letter by letter on both sides of every relation.
pub fn check_relations_respected(h: &HopfAlgebra) -> Report {
    let p = h.pres.clone();
    let mut report = Report::new(format!("hopf-relations[{}]", h.name));
    for r in p.rewrites() {
        let name = p.format_word(&r.lead);
        let lhs = h.coproduct_raw(&r.lead, 2);
        let rhs = (|| {
            let mut acc = TensorElement::zero(vec![p.clone(), p.clone()]);
            for (w, c) in &r.replacement {
                acc.add_scaled(&h.coproduct_raw(w, 2)?, c)?;
            }
            Ok(acc)
        })();
        record(&mut report, format!("coproduct respects {name}"), lhs, rhs);
        let mut e = Scalar::zero(p.ring());
        for (w, c) in &r.replacement {
            e += &(c * &h.counit_raw(w));
        }
        report.compare(&h.counit_raw(&r.lead), &e, || format!("counit respects {name}"));
        for inverse in [false, true] {
            if inverse && h.antipode_inv.is_none() {
                continue;
            }
            let lhs = h.anti_extend(&r.lead, inverse);
            let rhs = (|| {
                let mut acc = AlgebraElement::zero(&p);
                for (w, c) in &r.replacement {
                    acc = acc.try_add(&h.anti_extend(w, inverse)?.scale(c))?;
                }
                Ok(acc)
            })();
            let label = if inverse { "inverse antipode" } else { "antipode" };
            record(&mut report, format!("{label} respects {name}"), lhs, rhs);
        }
    }
    if h.antipode_inv.is_some() {
        for g in 0..p.generators().len() {
            let w = Word::letter(g);
            let name = p.format_word(&w);
            let x = AlgebraElement::from_word(&p, &w);
            let s_sinv = h
                .anti_extend(&w, true)
                .and_then(|y| h.antipode(&y));
            record(&mut report, format!("S(S⁻¹({name}))"), x.as_ref().map(|x| x.clone()).map_err(clone_err), s_sinv);
            let sinv_s = h.anti_extend(&w, false).and_then(|y| {
                let mut acc = AlgebraElement::zero(&p);
                for (v, c) in y.terms() {
                    acc = acc.try_add(&h.anti_extend(v, true)?.scale(c))?;
                }
                Ok(acc)
            });
            record(&mut report, format!("S⁻¹(S({name}))"), x.map_err(|e| clone_err(&e)), sinv_s);
        }
    }
    report
}

/// Full axiom suite for a presented Hopf algebra.
pub fn check_hopf_algebra(h: &HopfAlgebra, max_degree: usize) -> Report {
    let mut report = Report::new(format!("hopf[{}]", h.name));
    report.absorb(check_relations_respected(h));
    report.absorb(check_hopf_axioms(h, max_degree));
    report
}

/// Right H-coaction given on generators and extended as an algebra map.
pub struct RightCoaction {
    source: Arc<Presentation>,
    hopf: Arc<HopfAlgebra>,
    on_gens: Vec<TensorElement>,
    cache: Cache<(Word, usize), Arc<TensorElement>>,
}

impl fmt::Debug for RightCoaction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RightCoaction({} ← {})", self.source.name(), self.hopf.name())
    }
}

impl RightCoaction {
    pub fn new(source: &Arc<Presentation>, hopf: &Arc<HopfAlgebra>, on_gens: Vec<TensorElement>) -> Result<Self> {
        if on_gens.len() != source.generators().len() {
            return Err(Error::InvalidPresentation(format!(
                "coaction needs one image per generator of `{}`",
                source.name()
            )));
        }
        for t in &on_gens {
            if t.leg_count() != 2
                || !same_presentation(&t.legs()[0], source)
                || !same_presentation(&t.legs()[1], hopf.presentation())
            {
                return Err(Error::InvalidPresentation(
                    "coaction images must lie in A ⊗ H".into(),
                ));
            }
        }
        Ok(RightCoaction {
            source: source.clone(),
            hopf: hopf.clone(),
            on_gens,
            cache: RwLock::new(HashMap::new()),
        })
    }

    /// Images as text `(generator, "a | h + …")`.
    pub fn from_text(source: &Arc<Presentation>, hopf: &Arc<HopfAlgebra>, data: &[(&str, &str)]) -> Result<Self> {
        let legs = vec![source.clone(), hopf.presentation().clone()];
        let mut images = vec![None; source.generators().len()];
        for (g, t) in data {
            let i = source
                .generator_index(g)
                .ok_or_else(|| Error::Parse(format!("unknown generator `{g}`")))?;
            images[i] = Some(TensorElement::parse(&legs, t)?);
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(i, x)| {
                x.ok_or_else(|| {
                    Error::InvalidPresentation(format!(
                        "no coaction image for `{}`",
                        source.generators()[i].name
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(source, hopf, images)
    }

    /// The coproduct of `H` seen as a coaction on itself.
    pub fn regular(hopf: &Arc<HopfAlgebra>) -> Self {
        let n = hopf.presentation().generators().len();
        let on_gens = (0..n).map(|i| hopf.delta[i].clone()).collect();
        RightCoaction {
            source: hopf.presentation().clone(),
            hopf: hopf.clone(),
            on_gens,
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn source(&self) -> &Arc<Presentation> {
        &self.source
    }

    pub fn hopf(&self) -> &Arc<HopfAlgebra> {
        &self.hopf
    }

    pub fn generator_image(&self, i: usize) -> &TensorElement {
        &self.on_gens[i]
    }

    /// Iterated coaction: leg 1 in A, legs 2.. in H.
    pub fn coact_word(&self, w: &Word, legs: usize) -> Result<Arc<TensorElement>> {
        assert!(legs >= 2, "a coaction has at least two legs");
        cached(&self.cache, (w.clone(), legs), || {
            if legs == 2 {
                let mut acc = TensorElement::unit(vec![self.source.clone(), self.hopf.presentation().clone()]);
                for &l in &w.0 {
                    acc = acc.mul_legwise(&self.on_gens[l])?;
                }
                Ok(Arc::new(acc))
            } else {
                let base = self.coact_word(w, 2)?;
                let hl = vec![self.hopf.presentation().clone(); legs - 1];
                Ok(Arc::new(base.expand_leg(1, &hl, |h| self.hopf.coproduct_word(h, legs - 1))?))
            }
        })
    }

    pub fn coact(&self, x: &AlgebraElement, legs: usize) -> Result<TensorElement> {
        check_same(&self.source, x.presentation())?;
        let mut legs_v = vec![self.source.clone()];
        legs_v.extend(std::iter::repeat_n(self.hopf.presentation().clone(), legs - 1));
        let mut acc = TensorElement::zero(legs_v);
        for (w, c) in x.terms() {
            acc.add_scaled(&*self.coact_word(w, legs)?, c)?;
        }
        Ok(acc)
    }
}

/// Coaction axioms and relation compatibility up to `max_degree`.
pub fn check_coaction_axioms(delta: &RightCoaction, max_degree: usize) -> Report {
    let a = delta.source.clone();
    let h = delta.hopf.clone();
    let hp = h.presentation().clone();
    let mut report = Report::new(format!("coaction-axioms[{} ← {}]", a.name(), h.name()));
    let basis = match a.basis_up_to(max_degree) {
        Ok(b) => b,
        Err(e) => {
            report.fail("basis", format!("degree {max_degree} basis"), e);
            return report;
        }
    };
    for w in &basis {
        let name = a.format_word(w);
        let d = match delta.coact_word(w, 2) {
            Ok(d) => d,
            Err(e) => {
                report.fail(format!("coaction of {name}"), "a tensor", e);
                continue;
            }
        };
        let left = d.expand_leg(0, &[a.clone(), hp.clone()], |x| delta.coact_word(x, 2));
        let right = d.expand_leg(1, &[hp.clone(), hp.clone()], |x| h.coproduct_word(x, 2));
        record(&mut report, format!("coassociativity on {name}"), left, right);
        let c = d
            .contract(&[1], |k| Ok(h.counit_word(k[0])))
            .and_then(|t| t.to_element());
        record(&mut report, format!("counit on {name}"), AlgebraElement::from_word(&a, w), c);
    }
    for r in a.rewrites() {
        let name = a.format_word(&r.lead);
        let lhs = delta.coact_word(&r.lead, 2).map(|t| (*t).clone());
        let rhs = (|| {
            let mut acc = TensorElement::zero(vec![a.clone(), hp.clone()]);
            for (w, c) in &r.replacement {
                acc.add_scaled(&*delta.coact_word(w, 2)?, c)?;
            }
            Ok(acc)
        })();
        record(&mut report, format!("coaction respects {name}"), lhs, rhs);
    }
    report
}

/// The left grading commutes with the right coaction: every term of δ(w)
/// has its A-leg in the degree of `w`.
pub fn check_bicomodule(delta: &RightCoaction, max_degree: usize) -> Report {
    let a = delta.source.clone();
    let mut report = Report::new(format!("bicomodule[{}]", a.name()));
    let basis = match a.basis_up_to(max_degree) {
        Ok(b) => b,
        Err(e) => {
            report.fail("basis", format!("degree {max_degree} basis"), e);
            return report;
        }
    };
    let fmt_deg = |d: &[i64]| format!("{d:?}");
    for w in &basis {
        let deg = a.word_degree(w);
        match delta.coact_word(w, 2) {
            Ok(t) => {
                let bad = t
                    .terms()
                    .keys()
                    .map(|k| a.word_degree(&k[0]))
                    .find(|d| d != &deg);
                match bad {
                    None => report.pass(),
                    Some(d) => report.fail(
                        format!("grading of δ({})", a.format_word(w)),
                        fmt_deg(&deg),
                        fmt_deg(&d),
                    ),
                }
            }
            Err(e) => report.fail(format!("coaction of {}", a.format_word(w)), "a tensor", e),
        }
    }
    report
}
