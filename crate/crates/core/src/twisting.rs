//! Twist deformations: H_γ, A_γ, _σA, _σA_γ, deformed module actions and
//! the comparison isomorphisms φ, φ^ℓ.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::cocycles::{Functional, TwoCocycle};
use crate::error::{Error, Result};
use crate::hopf::{adjoint_coaction_word, check_bicomodule, HopfAlgebra, HopfStructure, RightCoaction};
use crate::presentations::{
    check_same, AlgebraElement, Presentation, PresentationBuilder, Rule, Terms, Word,
};
use crate::report::Report;
use crate::tensor::TensorElement;
use crate::util::accumulate;
use crate::Scalar;

/// Degree bound for the bicomodule check run by [`TwistedComoduleAlgebra::twist_left`].
pub const COMPATIBILITY_DEGREE: usize = 2;

type Cache<K, V> = RwLock<HashMap<K, V>>;

fn cached<K, V, F>(cache: &Cache<K, V>, key: K, compute: F) -> Result<V>
where
    K: std::hash::Hash + Eq,
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

fn element(p: &Arc<Presentation>, terms: Terms) -> AlgebraElement {
    AlgebraElement::normal_form(p, terms).expect("normal words stay normal")
}

/// H_γ: same coalgebra, product γ(h₁⊗k₁) h₂k₂ γ̄(h₃⊗k₃), antipode u_γ∗S∗ū_γ.
pub struct TwistedHopfAlgebra {
    base: Arc<dyn HopfStructure>,
    gamma: TwoCocycle,
    products: Cache<(Word, Word), AlgebraElement>,
    antipodes: Cache<Word, AlgebraElement>,
}

impl fmt::Debug for TwistedHopfAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TwistedHopfAlgebra({})", self.label())
    }
}

/// Twists `base` (itself possibly twisted) by a cocycle on its underlying coalgebra.
pub fn twist_hopf(base: Arc<dyn HopfStructure>, gamma: &TwoCocycle) -> Result<Arc<TwistedHopfAlgebra>> {
    check_same(base.presentation(), gamma.host().presentation())?;
    Ok(Arc::new(TwistedHopfAlgebra {
        base,
        gamma: gamma.clone(),
        products: RwLock::new(HashMap::new()),
        antipodes: RwLock::new(HashMap::new()),
    }))
}

impl TwistedHopfAlgebra {
    pub fn base(&self) -> &Arc<dyn HopfStructure> {
        &self.base
    }

    pub fn cocycle(&self) -> &TwoCocycle {
        &self.gamma
    }
}

impl HopfStructure for TwistedHopfAlgebra {
    fn presentation(&self) -> &Arc<Presentation> {
        self.base.presentation()
    }

    fn label(&self) -> String {
        format!("{}_{}", self.base.label(), self.gamma.name())
    }

    fn multiply_words(&self, a: &Word, b: &Word) -> Result<AlgebraElement> {
        if self.gamma.is_trivial() {
            return self.base.multiply_words(a, b);
        }
        cached(&self.products, (a.clone(), b.clone()), || {
            let p = self.presentation();
            let da = self.base.coproduct_word(a, 3)?;
            let db = self.base.coproduct_word(b, 3)?;
            let mut acc = Terms::new();
            for (x, cx) in da.terms() {
                for (y, cy) in db.terms() {
                    let f = self.gamma.eval_words(&x[0], &y[0]);
                    if f.is_zero() {
                        continue;
                    }
                    let g = self.gamma.inverse_eval_words(&x[2], &y[2])?;
                    if g.is_zero() {
                        continue;
                    }
                    let k = &(cx * cy) * &(&f * &g);
                    for (w, c) in self.base.multiply_words(&x[1], &y[1])?.terms() {
                        accumulate(&mut acc, w.clone(), &k * c);
                    }
                }
            }
            Ok(element(p, acc))
        })
    }

    fn coproduct_word(&self, w: &Word, legs: usize) -> Result<Arc<TensorElement>> {
        self.base.coproduct_word(w, legs)
    }

    fn counit_word(&self, w: &Word) -> Scalar {
        self.base.counit_word(w)
    }

    fn antipode_word(&self, w: &Word) -> Result<AlgebraElement> {
        if self.gamma.is_trivial() {
            return self.base.antipode_word(w);
        }
        cached(&self.antipodes, w.clone(), || {
            let p = self.presentation();
            let u = Functional::U(self.gamma.clone());
            let ubar = Functional::UBar(self.gamma.clone());
            let mut acc = Terms::new();
            for (k, c) in self.base.coproduct_word(w, 3)?.terms() {
                let f = u.eval_word(&*self.base, &k[0])?;
                if f.is_zero() {
                    continue;
                }
                let g = ubar.eval_word(&*self.base, &k[2])?;
                if g.is_zero() {
                    continue;
                }
                let s = &(c * &f) * &g;
                for (x, cx) in self.base.antipode_word(&k[1])?.terms() {
                    accumulate(&mut acc, x.clone(), &s * cx);
                }
            }
            Ok(element(p, acc))
        })
    }
}

/// One deformation step applied to a comodule algebra.
#[derive(Clone, Debug)]
pub enum Layer {
    /// a •_γ a′ = a₀a′₀ γ̄(a₁⊗a′₁), γ on H.
    Right(TwoCocycle),
    /// a _σ• a′ = σ(a₋₁⊗a′₋₁) a₀a′₀, σ on K acting through the grading.
    Left(TwoCocycle),
}

impl Layer {
    pub fn cocycle(&self) -> &TwoCocycle {
        match self {
            Layer::Right(g) | Layer::Left(g) => g,
        }
    }
}

/// A right H-comodule algebra, optionally deformed by a stack of layers.
///
/// The underlying vector space, its normal-form basis and the coaction are
/// those of the undeformed algebra.
pub struct TwistedComoduleAlgebra {
    name: String,
    coaction: Arc<RightCoaction>,
    parent: Option<Arc<TwistedComoduleAlgebra>>,
    layer: Option<Layer>,
    hopf: Arc<dyn HopfStructure>,
    products: Cache<(Word, Word), AlgebraElement>,
}

impl fmt::Debug for TwistedComoduleAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TwistedComoduleAlgebra({})", self.name)
    }
}

/// The relative Hopf modules with deformed-action support.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelativeHopfModule {
    /// A with left and right multiplication.
    Algebra,
    /// A⊗A standing for A⊗_B A, with actions on the outer legs.
    BalancedTensor,
    /// A⊗H̲ with (a⊗h)◁c = a c₀ ⊗ h c₁.
    AlgebraTimesHopf,
}

impl TwistedComoduleAlgebra {
    pub fn untwisted(name: impl Into<String>, coaction: Arc<RightCoaction>) -> Arc<Self> {
        let hopf: Arc<dyn HopfStructure> = coaction.hopf().clone();
        Arc::new(TwistedComoduleAlgebra {
            name: name.into(),
            coaction,
            parent: None,
            layer: None,
            hopf,
            products: RwLock::new(HashMap::new()),
        })
    }

    /// A_γ with γ on H (or on an already twisted H_γ′, same coalgebra).
    pub fn twist_right(this: &Arc<Self>, gamma: &TwoCocycle) -> Result<Arc<Self>> {
        check_same(this.coaction.hopf().presentation(), gamma.host().presentation())?;
        let hopf: Arc<dyn HopfStructure> = twist_hopf(this.hopf.clone(), gamma)?;
        Ok(Arc::new(TwistedComoduleAlgebra {
            name: format!("({})_{}", this.name, gamma.name()),
            coaction: this.coaction.clone(),
            parent: Some(this.clone()),
            layer: Some(Layer::Right(gamma.clone())),
            hopf,
            products: RwLock::new(HashMap::new()),
        }))
    }

    /// _σA with σ on K, where the left K-coaction is the grading of A.
    pub fn twist_left(this: &Arc<Self>, sigma: &TwoCocycle) -> Result<Arc<Self>> {
        let a = this.presentation();
        let k = sigma.host().presentation();
        if a.grading().dim() != k.grading().dim() {
            return Err(Error::NotHomogeneous(format!(
                "`{}` is not graded by the group of `{}`",
                a.name(),
                k.name()
            )));
        }
        let report = check_bicomodule(&this.coaction, COMPATIBILITY_DEGREE);
        if !report.passed() {
            return Err(Error::CompatibilityFailure(report.summary()));
        }
        Ok(Arc::new(TwistedComoduleAlgebra {
            name: format!("{}_({})", sigma.name(), this.name),
            coaction: this.coaction.clone(),
            parent: Some(this.clone()),
            layer: Some(Layer::Left(sigma.clone())),
            hopf: this.hopf.clone(),
            products: RwLock::new(HashMap::new()),
        }))
    }

    /// _σA_γ := _σ(A_γ).
    pub fn twist_both(this: &Arc<Self>, sigma: &TwoCocycle, gamma: &TwoCocycle) -> Result<Arc<Self>> {
        Self::twist_left(&Self::twist_right(this, gamma)?, sigma)
    }

    /// Re-applies `layers` in order on top of this algebra.
    pub fn with_layers(this: &Arc<Self>, layers: &[Layer]) -> Result<Arc<Self>> {
        let mut cur = this.clone();
        for l in layers {
            cur = match l {
                Layer::Right(g) => Self::twist_right(&cur, g)?,
                Layer::Left(s) => Self::twist_left(&cur, s)?,
            };
        }
        Ok(cur)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        self.coaction.source()
    }

    pub fn coaction(&self) -> &Arc<RightCoaction> {
        &self.coaction
    }

    /// The undeformed structure Hopf algebra.
    pub fn base_hopf(&self) -> &Arc<HopfAlgebra> {
        self.coaction.hopf()
    }

    /// H with every right layer applied.
    pub fn hopf(&self) -> &Arc<dyn HopfStructure> {
        &self.hopf
    }

    pub fn parent(&self) -> Option<&Arc<TwistedComoduleAlgebra>> {
        self.parent.as_ref()
    }

    pub fn top_layer(&self) -> Option<&Layer> {
        self.layer.as_ref()
    }

    /// Layers from the bottom up.
    pub fn layers(&self) -> Vec<Layer> {
        let mut out = Vec::new();
        let mut cur = Some(self);
        while let Some(c) = cur {
            if let Some(l) = &c.layer {
                out.push(l.clone());
            }
            cur = c.parent.as_deref();
        }
        out.reverse();
        out
    }

    /// The undeformed algebra at the bottom of the stack.
    pub fn root(self: &Arc<Self>) -> Arc<Self> {
        let mut cur = self.clone();
        while let Some(p) = cur.parent.clone() {
            cur = p;
        }
        cur
    }

    pub fn degree(&self, w: &Word) -> Vec<i64> {
        self.presentation().word_degree(w)
    }

    pub fn multiply_words(&self, a: &Word, b: &Word) -> Result<AlgebraElement> {
        let (parent, layer) = match (&self.parent, &self.layer) {
            (Some(p), Some(l)) => (p, l),
            _ => {
                let p = self.presentation();
                return Ok(element(p, (*p.reduce_word(&a.concat(b))?).clone()));
            }
        };
        if layer.cocycle().is_trivial() {
            return parent.multiply_words(a, b);
        }
        cached(&self.products, (a.clone(), b.clone()), || match layer {
            Layer::Right(g) => {
                let da = self.coaction.coact_word(a, 2)?;
                let db = self.coaction.coact_word(b, 2)?;
                let mut acc = Terms::new();
                for (x, cx) in da.terms() {
                    for (y, cy) in db.terms() {
                        let f = g.inverse_eval_words(&x[1], &y[1])?;
                        if f.is_zero() {
                            continue;
                        }
                        let k = &(cx * cy) * &f;
                        for (w, c) in parent.multiply_words(&x[0], &y[0])?.terms() {
                            accumulate(&mut acc, w.clone(), &k * c);
                        }
                    }
                }
                Ok(element(self.presentation(), acc))
            }
            Layer::Left(s) => {
                let f = s.eval_degrees(&self.degree(a), &self.degree(b))?;
                Ok(parent.multiply_words(a, b)?.scale(&f))
            }
        })
    }

    pub fn multiply(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        let p = self.presentation();
        check_same(p, x.presentation())?;
        check_same(p, y.presentation())?;
        let mut acc = Terms::new();
        for (a, ca) in x.terms() {
            for (b, cb) in y.terms() {
                let k = ca * cb;
                for (w, c) in self.multiply_words(a, b)?.terms() {
                    accumulate(&mut acc, w.clone(), &k * c);
                }
            }
        }
        Ok(element(p, acc))
    }

    /// Left-nested product x₁•x₂•…•x_k.
    pub fn multiply_all(&self, xs: &[AlgebraElement]) -> Result<AlgebraElement> {
        let mut acc = AlgebraElement::one(self.presentation());
        for x in xs {
            acc = self.multiply(&acc, x)?;
        }
        Ok(acc)
    }

    /// λ with x•y = λ y•x, if the two products are proportional.
    pub fn commutation_factor(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<Option<Scalar>> {
        let xy = self.multiply(x, y)?;
        let yx = self.multiply(y, x)?;
        Ok(proportionality(&xy, &yx))
    }

    /// H-coaction on a module term; legs are the module legs followed by H.
    pub fn module_coaction(&self, kind: RelativeHopfModule, v: &[Word]) -> Result<TensorElement> {
        let a = self.presentation().clone();
        let h = self.base_hopf().clone();
        let hp = h.presentation().clone();
        match kind {
            RelativeHopfModule::Algebra => Ok((*self.coaction.coact_word(&v[0], 2)?).clone()),
            RelativeHopfModule::BalancedTensor => {
                let dx = self.coaction.coact_word(&v[0], 2)?;
                let dy = self.coaction.coact_word(&v[1], 2)?;
                let mut out = TensorElement::zero(vec![a.clone(), a, hp]);
                for (x, cx) in dx.terms() {
                    for (y, cy) in dy.terms() {
                        let k = cx * cy;
                        for (w, c) in h.multiply_words(&x[1], &y[1])?.terms() {
                            out.add_term(vec![x[0].clone(), y[0].clone(), w.clone()], &k * c);
                        }
                    }
                }
                Ok(out)
            }
            RelativeHopfModule::AlgebraTimesHopf => {
                let dx = self.coaction.coact_word(&v[0], 2)?;
                let ad = adjoint_coaction_word(&*h, &v[1])?;
                let mut out = TensorElement::zero(vec![a, hp.clone(), hp]);
                for (x, cx) in dx.terms() {
                    for (y, cy) in ad.terms() {
                        let k = cx * cy;
                        for (w, c) in h.multiply_words(&x[1], &y[1])?.terms() {
                            out.add_term(vec![x[0].clone(), y[0].clone(), w.clone()], &k * c);
                        }
                    }
                }
                Ok(out)
            }
        }
    }

    /// Grading degree of a module term; H̲ carries the trivial left coaction.
    pub fn module_degree(&self, kind: RelativeHopfModule, v: &[Word]) -> Vec<i64> {
        let p = self.presentation();
        match kind {
            RelativeHopfModule::Algebra | RelativeHopfModule::AlgebraTimesHopf => p.word_degree(&v[0]),
            RelativeHopfModule::BalancedTensor => {
                p.grading().add(&p.word_degree(&v[0]), &p.word_degree(&v[1]))
            }
        }
    }

    pub fn module_legs(&self, kind: RelativeHopfModule) -> Vec<Arc<Presentation>> {
        let a = self.presentation().clone();
        match kind {
            RelativeHopfModule::Algebra => vec![a],
            RelativeHopfModule::BalancedTensor => vec![a.clone(), a],
            RelativeHopfModule::AlgebraTimesHopf => vec![a, self.base_hopf().presentation().clone()],
        }
    }

    /// a ▷ v in the deformed module.
    pub fn act_left_word(&self, kind: RelativeHopfModule, a: &Word, v: &[Word]) -> Result<TensorElement> {
        let (parent, layer) = match (&self.parent, &self.layer) {
            (Some(p), Some(l)) => (p, l),
            _ => {
                let mut out = TensorElement::zero(self.module_legs(kind));
                let prod = self.multiply_words(a, &v[0])?;
                for (w, c) in prod.terms() {
                    let mut k = vec![w.clone()];
                    k.extend_from_slice(&v[1..]);
                    out.add_term(k, c.clone());
                }
                return Ok(out);
            }
        };
        match layer {
            Layer::Right(g) => {
                let da = self.coaction.coact_word(a, 2)?;
                let dv = self.module_coaction(kind, v)?;
                let n = v.len();
                let mut out = TensorElement::zero(self.module_legs(kind));
                for (x, cx) in da.terms() {
                    for (y, cy) in dv.terms() {
                        let f = g.inverse_eval_words(&x[1], &y[n])?;
                        if f.is_zero() {
                            continue;
                        }
                        let inner = parent.act_left_word(kind, &x[0], &y[..n])?;
                        out.add_scaled(&inner, &(&(cx * cy) * &f))?;
                    }
                }
                Ok(out)
            }
            Layer::Left(s) => {
                let f = s.eval_degrees(&self.degree(a), &self.module_degree(kind, v))?;
                Ok(parent.act_left_word(kind, a, v)?.scale(&f))
            }
        }
    }

    /// v ◁ a in the deformed module.
    pub fn act_right_word(&self, kind: RelativeHopfModule, v: &[Word], a: &Word) -> Result<TensorElement> {
        let (parent, layer) = match (&self.parent, &self.layer) {
            (Some(p), Some(l)) => (p, l),
            _ => return self.act_right_base(kind, v, a),
        };
        match layer {
            Layer::Right(g) => {
                let da = self.coaction.coact_word(a, 2)?;
                let dv = self.module_coaction(kind, v)?;
                let n = v.len();
                let mut out = TensorElement::zero(self.module_legs(kind));
                for (y, cy) in dv.terms() {
                    for (x, cx) in da.terms() {
                        let f = g.inverse_eval_words(&y[n], &x[1])?;
                        if f.is_zero() {
                            continue;
                        }
                        let inner = parent.act_right_word(kind, &y[..n], &x[0])?;
                        out.add_scaled(&inner, &(&(cx * cy) * &f))?;
                    }
                }
                Ok(out)
            }
            Layer::Left(s) => {
                let f = s.eval_degrees(&self.module_degree(kind, v), &self.degree(a))?;
                Ok(parent.act_right_word(kind, v, a)?.scale(&f))
            }
        }
    }

    fn act_right_base(&self, kind: RelativeHopfModule, v: &[Word], a: &Word) -> Result<TensorElement> {
        let mut out = TensorElement::zero(self.module_legs(kind));
        match kind {
            RelativeHopfModule::Algebra | RelativeHopfModule::BalancedTensor => {
                let last = v.len() - 1;
                for (w, c) in self.multiply_words(&v[last], a)?.terms() {
                    let mut k = v[..last].to_vec();
                    k.push(w.clone());
                    out.add_term(k, c.clone());
                }
            }
            RelativeHopfModule::AlgebraTimesHopf => {
                let h = self.base_hopf().clone();
                for (x, cx) in self.coaction.coact_word(a, 2)?.terms() {
                    let left = self.multiply_words(&v[0], &x[0])?;
                    let right = h.multiply_words(&v[1], &x[1])?;
                    for (l, cl) in left.terms() {
                        for (r, cr) in right.terms() {
                            out.add_term(vec![l.clone(), r.clone()], &(cx * cl) * cr);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn act_left(&self, kind: RelativeHopfModule, a: &AlgebraElement, v: &TensorElement) -> Result<TensorElement> {
        let mut out = TensorElement::zero(self.module_legs(kind));
        for (wa, ca) in a.terms() {
            for (k, cv) in v.terms() {
                out.add_scaled(&self.act_left_word(kind, wa, k)?, &(ca * cv))?;
            }
        }
        Ok(out)
    }

    pub fn act_right(&self, kind: RelativeHopfModule, v: &TensorElement, a: &AlgebraElement) -> Result<TensorElement> {
        let mut out = TensorElement::zero(self.module_legs(kind));
        for (k, cv) in v.terms() {
            for (wa, ca) in a.terms() {
                out.add_scaled(&self.act_right_word(kind, k, wa)?, &(ca * cv))?;
            }
        }
        Ok(out)
    }

    /// Presentation of the deformed algebra when every generator pair deforms by a
    /// scalar, x_i•x_j = c_ij x_i x_j. Word w of the result stands for the
    /// left-nested product of its letters. The star structure is kept when the
    /// deformed relations remain star-compatible.
    pub fn compile(&self, bound: usize) -> Result<Arc<Presentation>> {
        match self.compiled_builder(true)?.seal(bound) {
            Err(Error::SealingFailed(r)) if r.suite.starts_with("star-relations") => {
                self.compiled_builder(false)?.seal(bound)
            }
            other => other,
        }
    }

    fn compiled_builder(&self, with_star: bool) -> Result<PresentationBuilder> {
        let p = self.presentation();
        let ring = p.ring();
        let c = self.pair_factors()?;
        let kappa = |w: &Word| -> Scalar {
            let mut k = Scalar::one(ring);
            for (x, &a) in w.0.iter().enumerate() {
                for &b in &w.0[x + 1..] {
                    k = &k * &c[a][b];
                }
            }
            k
        };
        let mut b = PresentationBuilder::new(format!("{}[compiled]", self.name), ring, p.grading().clone());
        for g in p.generators() {
            b = b.generator(&g.name, &g.degree);
            if let (true, Some(s)) = (with_star, g.star) {
                b = b.star_pair(&g.name, &p.generators()[s].name);
            }
        }
        for (&(i, j), lambda) in p.commutation() {
            let l = &(lambda * &c[i][j]) * &c[j][i].invert()?;
            b = b.commute(&p.generators()[i].name, &p.generators()[j].name, l);
        }
        for r in p.rules() {
            let kl = kappa(&r.lead);
            let replacement = r
                .replacement
                .iter()
                .map(|(w, coef)| Ok((w.clone(), &(&kl * coef) * &kappa(w).invert()?)))
                .collect::<Result<Vec<_>>>()?;
            b = b.rule_terms(Rule {
                lead: r.lead.clone(),
                replacement,
            });
        }
        Ok(b)
    }

    /// c_ij with x_i•x_j = c_ij x_i x_j, or `NotHomogeneous`.
    pub fn pair_factors(&self) -> Result<Vec<Vec<Scalar>>> {
        let p = self.presentation();
        let n = p.generators().len();
        let mut out = vec![Vec::with_capacity(n); n];
        for (i, row) in out.iter_mut().enumerate() {
            for j in 0..n {
                let (a, b) = (Word::letter(i), Word::letter(j));
                let deformed = self.multiply_words(&a, &b)?;
                let plain = element(p, (*p.reduce_word(&a.concat(&b))?).clone());
                match proportionality(&deformed, &plain) {
                    Some(c) if c.is_unit() => row.push(c),
                    _ => {
                        return Err(Error::NotHomogeneous(format!(
                            "{} • {} is not a unit multiple of the undeformed product",
                            p.generators()[i].name,
                            p.generators()[j].name
                        )))
                    }
                }
            }
        }
        Ok(out)
    }

    /// Commutation scalars of the deformed algebra for every commuting generator
    /// pair x_i, x_j (i < j): x_i•x_j = λ x_j•x_i.
    pub fn relation_table(&self) -> Result<Vec<RelationEntry>> {
        let p = self.presentation();
        let c = self.pair_factors()?;
        let mut out = Vec::new();
        for (&(i, j), lambda) in p.commutation() {
            // x_i x_j = λ x_j x_i with i > j, so x_j•x_i = (c_ji/(λ c_ij)) x_i•x_j
            let l = &c[j][i] * &(lambda * &c[i][j]).invert()?;
            out.push(RelationEntry {
                left: p.generators()[j].name.clone(),
                right: p.generators()[i].name.clone(),
                factor: l,
            });
        }
        out.sort_by(|a, b| {
            let ia = (p.generator_index(&a.left), p.generator_index(&a.right));
            let ib = (p.generator_index(&b.left), p.generator_index(&b.right));
            ia.cmp(&ib)
        });
        Ok(out)
    }
}

/// `left • right = factor · right • left`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationEntry {
    pub left: String,
    pub right: String,
    pub factor: Scalar,
}

impl fmt::Display for RelationEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} • {} = {} · {} • {}", self.left, self.right, self.factor, self.right, self.left)
    }
}

/// λ with x = λ y, when one exists and can be read off a unit or rational coefficient.
pub fn proportionality(x: &AlgebraElement, y: &AlgebraElement) -> Option<Scalar> {
    if x.is_zero() && y.is_zero() {
        return Some(Scalar::one(x.presentation().ring()));
    }
    let (w, cy) = y.terms().iter().next()?;
    let cx = x.coefficient(w);
    let lambda = if cy.is_unit() {
        &cx * &cy.invert().ok()?
    } else {
        let r = cy.as_rational()?;
        if num_traits::Zero::is_zero(&r) {
            return None;
        }
        cx.scale_rational(&num_traits::Inv::inv(r))
    };
    (y.scale(&lambda) == *x).then_some(lambda)
}

/// Comodule structures on the legs of φ.
#[derive(Clone, Copy)]
pub enum LegComodule<'a> {
    Algebra(&'a RightCoaction),
    Regular(&'a dyn HopfStructure),
    Adjoint(&'a dyn HopfStructure),
}

impl LegComodule<'_> {
    fn coact(&self, w: &Word) -> Result<Arc<TensorElement>> {
        match self {
            LegComodule::Algebra(d) => d.coact_word(w, 2),
            LegComodule::Regular(h) => h.coproduct_word(w, 2),
            LegComodule::Adjoint(h) => Ok(Arc::new(adjoint_coaction_word(*h, w)?)),
        }
    }
}

/// φ_{V,W}(v⊗w) = v₀⊗w₀ γ̄(v₁⊗w₁); with `inverse`, the cocycle γ replaces γ̄.
pub fn phi(
    x: &TensorElement,
    v: LegComodule<'_>,
    w: LegComodule<'_>,
    gamma: &TwoCocycle,
    inverse: bool,
) -> Result<TensorElement> {
    if x.leg_count() != 2 {
        return Err(Error::UnsupportedModule("φ acts on two-leg tensors".into()));
    }
    let mut out = TensorElement::zero(x.legs().to_vec());
    for (k, c) in x.terms() {
        let dv = v.coact(&k[0])?;
        let dw = w.coact(&k[1])?;
        for (a, ca) in dv.terms() {
            for (b, cb) in dw.terms() {
                let f = if inverse {
                    gamma.eval_words(&a[1], &b[1])
                } else {
                    gamma.inverse_eval_words(&a[1], &b[1])?
                };
                if f.is_zero() {
                    continue;
                }
                out.add_term(vec![a[0].clone(), b[0].clone()], &(&(c * ca) * cb) * &f);
            }
        }
    }
    Ok(out)
}

/// Grading carried by a leg of φ^ℓ.
#[derive(Clone, Copy)]
pub enum LegGrading<'a> {
    Graded(&'a Presentation),
    /// The trivial left coaction h ↦ 1⊗h.
    Trivial,
}

impl LegGrading<'_> {
    fn degree(&self, w: &Word, dim: usize) -> Vec<i64> {
        match self {
            LegGrading::Graded(p) => p.word_degree(w),
            LegGrading::Trivial => vec![0; dim],
        }
    }
}

/// φ^ℓ_{V,W}(v⊗w) = σ(v₋₁⊗w₋₁) v₀⊗w₀; with `inverse`, σ̄ replaces σ.
pub fn phi_left(
    x: &TensorElement,
    v: LegGrading<'_>,
    w: LegGrading<'_>,
    sigma: &TwoCocycle,
    inverse: bool,
) -> Result<TensorElement> {
    if x.leg_count() != 2 {
        return Err(Error::UnsupportedModule("φ^ℓ acts on two-leg tensors".into()));
    }
    let dim = sigma.host().presentation().grading().dim();
    let mut out = TensorElement::zero(x.legs().to_vec());
    for (k, c) in x.terms() {
        let (dv, dw) = (v.degree(&k[0], dim), w.degree(&k[1], dim));
        let f = if inverse {
            sigma.inverse_eval_degrees(&dv, &dw)?
        } else {
            sigma.eval_degrees(&dv, &dw)?
        };
        out.add_term(k.clone(), c * &f);
    }
    Ok(out)
}

/// Associativity of `mul` on the given triples.
pub fn check_associativity<F>(suite: &str, p: &Arc<Presentation>, triples: &[[Word; 3]], mul: F) -> Report
where
    F: Fn(&AlgebraElement, &AlgebraElement) -> Result<AlgebraElement>,
{
    let mut report = Report::new(suite.to_string());
    for [a, b, c] in triples {
        let case = || format!("({}, {}, {})", p.format_word(a), p.format_word(b), p.format_word(c));
        let res: Result<(AlgebraElement, AlgebraElement)> = (|| {
            let (x, y, z) = (
                AlgebraElement::from_word(p, a)?,
                AlgebraElement::from_word(p, b)?,
                AlgebraElement::from_word(p, c)?,
            );
            Ok((mul(&mul(&x, &y)?, &z)?, mul(&x, &mul(&y, &z)?)?))
        })();
        match res {
            Ok((l, r)) => report.compare(&l, &r, case),
            Err(e) => report.fail(case(), "evaluation", e),
        }
    }
    report
}

/// Sorted map of degrees to the basis words of that degree.
pub fn words_by_degree(p: &Presentation, words: &[Word]) -> BTreeMap<Vec<i64>, Vec<Word>> {
    let mut out: BTreeMap<Vec<i64>, Vec<Word>> = BTreeMap::new();
    for w in words {
        out.entry(p.word_degree(w)).or_default().push(w.clone());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::hopf::check_hopf_axioms;
    use crate::sampling;
    use crate::ScalarRing;

    fn q(k: i32) -> Scalar {
        Scalar::param(&ScalarRing::standard(), 0, k)
    }

    fn el(p: &Arc<Presentation>, s: &str) -> AlgebraElement {
        AlgebraElement::parse(p, s).unwrap()
    }

    fn torus_regular() -> (Arc<HopfAlgebra>, TwoCocycle, Arc<TwistedComoduleAlgebra>) {
        let t = catalog::torus_hopf(2).unwrap();
        let g = catalog::cl_cocycle(&t).unwrap();
        let base = TwistedComoduleAlgebra::untwisted("O(T^2)", Arc::new(RightCoaction::regular(&t)));
        let a = TwistedComoduleAlgebra::twist_right(&base, &g).unwrap();
        (t, g, a)
    }

    #[test]
    fn torus_right_twist_products() {
        let (t, _, a) = torus_regular();
        let p = t.presentation();
        let (t1, t2) = (el(p, "t1"), el(p, "t2"));
        let t1t2 = el(p, "t1 t2");
        assert_eq!(a.multiply(&t1, &t2).unwrap(), t1t2.scale(&q(-1)));
        assert_eq!(a.multiply(&t2, &t1).unwrap(), t1t2.scale(&q(1)));
        assert_eq!(a.commutation_factor(&t1, &t2).unwrap(), Some(q(-2)));
        let table = a.relation_table().unwrap();
        let e = table.iter().find(|e| e.left == "t1" && e.right == "t2").unwrap();
        assert_eq!(e.factor, q(-2));
        let star = table.iter().find(|e| e.left == "t1" && e.right == "t1*").unwrap();
        assert!(star.factor.is_one());
    }

    #[test]
    fn torus_compiles_to_noncommutative_torus() {
        let (_, _, a) = torus_regular();
        let c = a.compile(4).unwrap();
        let i1 = c.generator_index("t1").unwrap();
        let i2 = c.generator_index("t2").unwrap();
        // t2 t1 = q² t1 t2
        assert_eq!(c.commutation()[&(i2, i1)], q(2));
        let lhs = el(&c, "t2 t1");
        assert_eq!(lhs, el(&c, "t1 t2").scale(&q(2)));
        assert_eq!(el(&c, "t1 t1*"), AlgebraElement::one(&c));
    }

    #[test]
    fn twisted_antipode_on_torus() {
        let (t, g, _) = torus_regular();
        let hg = twist_hopf(t.clone(), &g).unwrap();
        let p = t.presentation();
        for (x, sx) in [("t1", "t1*"), ("t2", "t2*"), ("t1*", "t1")] {
            let w = p.parse_word(x).unwrap();
            assert_eq!(hg.antipode_word(&w).unwrap(), el(p, sx));
        }
        assert!(check_hopf_axioms(&*hg, 2).passed());
    }

    #[test]
    fn grouplike_products_survive_twist() {
        let h = catalog::finite_function_hopf(2, 2).unwrap();
        let g = catalog::table_cocycle(&h).unwrap();
        let hg = twist_hopf(h.clone(), &g).unwrap();
        let basis = h.presentation().finite_basis().unwrap();
        for x in &basis {
            for y in &basis {
                assert_eq!(hg.multiply_words(x, y).unwrap(), h.multiply_words(x, y).unwrap());
            }
        }
    }

    #[test]
    fn trivial_twist_is_identity() {
        let (t, _, _) = torus_regular();
        let triv = TwoCocycle::trivial(&t);
        let hg = twist_hopf(t.clone(), &triv).unwrap();
        let base = TwistedComoduleAlgebra::untwisted("O(T^2)", Arc::new(RightCoaction::regular(&t)));
        let a = TwistedComoduleAlgebra::twist_right(&base, &triv).unwrap();
        let words = t.presentation().basis_up_to(2).unwrap();
        for x in &words {
            assert_eq!(hg.antipode_word(x).unwrap(), t.antipode_word(x).unwrap());
            for y in &words {
                let plain = t.multiply_words(x, y).unwrap();
                assert_eq!(hg.multiply_words(x, y).unwrap(), plain);
                assert_eq!(a.multiply_words(x, y).unwrap(), plain);
            }
        }
    }

    #[test]
    fn unit_and_coinvariants_act_plainly() {
        let inst = catalog::trivial_bundle(3).unwrap();
        let g = inst.right_cocycle("cyclic_table_1").unwrap();
        let a = TwistedComoduleAlgebra::twist_right(inst.algebra(), g).unwrap();
        let p = inst.presentation().clone();
        let b = p.parse_word("b").unwrap();
        let one = Word::one();
        for w in p.finite_basis().unwrap() {
            let plain = AlgebraElement::normal_form(&p, [(b.concat(&w), Scalar::one(p.ring()))]).unwrap();
            assert_eq!(a.multiply_words(&b, &w).unwrap(), plain);
            assert_eq!(a.multiply_words(&one, &w).unwrap(), AlgebraElement::from_word(&p, &w).unwrap());
            assert_eq!(a.multiply_words(&w, &one).unwrap(), AlgebraElement::from_word(&p, &w).unwrap());
        }
    }

    #[test]
    fn sphere_left_twist_products() {
        let inst = catalog::instanton().unwrap();
        let a = inst.deform_named(None, Some("gamma_theta")).unwrap();
        let p = inst.presentation().clone();
        let (z1, z2, z3) = (el(&p, "z1"), el(&p, "z2"), el(&p, "z3"));
        let z1z3 = el(&p, "z1 z3");
        assert_eq!(a.multiply(&z1, &z3).unwrap(), z1z3.scale(&q(1)));
        assert_eq!(a.multiply(&z3, &z1).unwrap(), z1z3.scale(&q(-1)));
        assert_eq!(a.multiply(&z1, &z2).unwrap(), el(&p, "z1 z2"));
        let c = a.compile(4).unwrap();
        let (i1, i3) = (c.generator_index("z1").unwrap(), c.generator_index("z3").unwrap());
        assert_eq!(c.commutation()[&(i3, i1)], q(-2));
    }

    #[test]
    fn layer_order_is_irrelevant() {
        let inst = catalog::finite_function_galois(2, 2).unwrap();
        let g = inst.right_cocycle("sign_table").unwrap();
        let s = inst.left_cocycle("sign_table").unwrap();
        let base = inst.algebra();
        let sg = TwistedComoduleAlgebra::twist_left(&TwistedComoduleAlgebra::twist_right(base, g).unwrap(), s).unwrap();
        let gs = TwistedComoduleAlgebra::twist_right(&TwistedComoduleAlgebra::twist_left(base, s).unwrap(), g).unwrap();
        let both = TwistedComoduleAlgebra::twist_both(base, s, g).unwrap();
        let right = TwistedComoduleAlgebra::twist_right(base, g).unwrap();
        let basis = inst.presentation().finite_basis().unwrap();
        let mut differs = false;
        for x in &basis {
            for y in &basis {
                let r = sg.multiply_words(x, y).unwrap();
                assert_eq!(r, gs.multiply_words(x, y).unwrap());
                assert_eq!(r, both.multiply_words(x, y).unwrap());
                differs |= r != right.multiply_words(x, y).unwrap();
            }
        }
        assert!(differs);
    }

    fn module_axioms(a: &TwistedComoduleAlgebra, kind: RelativeHopfModule, triples: &[[Word; 3]], m: &[Word]) {
        let p = a.presentation();
        for [x, y, _] in triples {
            let (ex, ey) = (AlgebraElement::from_word(p, x).unwrap(), AlgebraElement::from_word(p, y).unwrap());
            let xy = a.multiply(&ex, &ey).unwrap();
            let v = {
                let mut v = TensorElement::zero(a.module_legs(kind));
                v.add_term(m.to_vec(), Scalar::one(p.ring()));
                v
            };
            let lhs = a.act_left(kind, &xy, &v).unwrap();
            let rhs = a.act_left(kind, &ex, &a.act_left(kind, &ey, &v).unwrap()).unwrap();
            assert_eq!(lhs, rhs, "left action {kind:?}");
            let lhs = a.act_right(kind, &v, &xy).unwrap();
            let rhs = a.act_right(kind, &a.act_right(kind, &v, &ex).unwrap(), &ey).unwrap();
            assert_eq!(lhs, rhs, "right action {kind:?}");
        }
    }

    #[test]
    fn twisted_module_axioms_finite() {
        let inst = catalog::finite_function_galois(2, 2).unwrap();
        let g = inst.right_cocycle("sign_table").unwrap();
        let a = TwistedComoduleAlgebra::twist_right(inst.algebra(), g).unwrap();
        let basis = inst.presentation().finite_basis().unwrap();
        let triples = sampling::triples(sampling::tuples(&basis, 3, 100, 3));
        for t in &triples {
            let one = [t[2].clone()];
            module_axioms(&a, RelativeHopfModule::Algebra, std::slice::from_ref(t), &one);
            let two = [t[2].clone(), t[0].clone()];
            module_axioms(&a, RelativeHopfModule::BalancedTensor, std::slice::from_ref(t), &two);
            module_axioms(&a, RelativeHopfModule::AlgebraTimesHopf, std::slice::from_ref(t), &two);
        }
    }

    #[test]
    fn twisted_module_axioms_sphere() {
        let inst = catalog::instanton().unwrap();
        let a = inst.deform_named(None, Some("gamma_theta")).unwrap();
        let basis = inst.presentation().basis_up_to(2).unwrap();
        let triples = sampling::triples(sampling::sample_tuples(&basis, 3, 100, 5));
        for t in &triples {
            module_axioms(&a, RelativeHopfModule::Algebra, std::slice::from_ref(t), &[t[2].clone()]);
        }
    }

    #[test]
    fn phi_round_trips() {
        let (t, g, _) = torus_regular();
        let p = t.presentation().clone();
        let basis = p.basis_up_to(3).unwrap();
        let delta = RightCoaction::regular(&t);
        let graded = LegGrading::Graded(&p);
        for pair in sampling::sample_tuples(&basis, 2, 200, 9) {
            let mut x = TensorElement::zero(vec![p.clone(), p.clone()]);
            x.add_term(pair, Scalar::one(p.ring()));
            let leg = LegComodule::Algebra(&delta);
            let y = phi(&x, leg, leg, &g, false).unwrap();
            assert_eq!(phi(&y, leg, leg, &g, true).unwrap(), x);
            let y = phi_left(&x, graded, graded, &g, false).unwrap();
            assert_eq!(phi_left(&y, graded, graded, &g, true).unwrap(), x);
            assert_eq!(phi_left(&x, graded, LegGrading::Trivial, &g, false).unwrap(), x);
        }
    }
}
