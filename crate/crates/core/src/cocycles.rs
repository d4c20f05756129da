//! 2-cocycles γ: H⊗H → 𝕂 in bicharacter and finite-table form.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hopf::{HopfAlgebra, HopfStructure};
use crate::linalg::{self, SparseRow};
use crate::presentations::{AlgebraElement, GradingGroup, Presentation, Word};
use crate::report::Report;
use crate::scalars::ScalarRing;
use crate::util::accumulate;
use crate::Scalar;

/// Default degree bound for the cocycle condition run when sealing a bicharacter.
pub const DEFAULT_COCYCLE_DEGREE: usize = 2;

/// Bilinear form on a grading group with values ζ_N^{aᵀRb} · Π_k q_k^{aᵀF_k b}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bicharacter {
    grading: GradingGroup,
    param_forms: Vec<Vec<Vec<i64>>>,
    root_form: Vec<Vec<i64>>,
}

fn square(m: &[Vec<i64>], n: usize) -> bool {
    m.len() == n && m.iter().all(|r| r.len() == n)
}

fn bilinear(m: &[Vec<i64>], a: &[i64], b: &[i64]) -> i64 {
    let mut s = 0;
    for (i, row) in m.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            s += a[i] * v * b[j];
        }
    }
    s
}

impl Bicharacter {
    /// Any bilinear form that is well defined on the torsion part.
    pub fn bilinear(
        ring: &ScalarRing,
        grading: &GradingGroup,
        param_forms: Vec<Vec<Vec<i64>>>,
        root_form: Vec<Vec<i64>>,
    ) -> Result<Self> {
        let n = grading.dim();
        let bad = |m: String| Error::BadParams(m);
        if param_forms.len() != ring.params().len() {
            return Err(bad(format!(
                "one parameter form per ring parameter ({}) required",
                ring.params().len()
            )));
        }
        if !param_forms.iter().all(|m| square(m, n)) || !square(&root_form, n) {
            return Err(bad(format!("forms must be {n}×{n}")));
        }
        let order = ring.order() as i64;
        for (t, &tors) in grading.torsion.iter().enumerate() {
            let i = grading.rank + t;
            for j in 0..n {
                if param_forms.iter().any(|m| m[i][j] != 0 || m[j][i] != 0) {
                    return Err(bad("parameter forms must vanish on torsion".into()));
                }
                if (tors as i64 * root_form[i][j]) % order != 0 || (tors as i64 * root_form[j][i]) % order != 0 {
                    return Err(bad(format!(
                        "root-of-unity form is not defined modulo {tors} with N = {order}"
                    )));
                }
            }
        }
        Ok(Bicharacter {
            grading: grading.clone(),
            param_forms,
            root_form,
        })
    }

    /// Antisymmetric form, as required for bicharacter cocycles.
    pub fn antisymmetric(
        ring: &ScalarRing,
        grading: &GradingGroup,
        param_forms: Vec<Vec<Vec<i64>>>,
        root_form: Vec<Vec<i64>>,
    ) -> Result<Self> {
        let b = Self::bilinear(ring, grading, param_forms, root_form)?;
        let n = grading.dim();
        let order = ring.order() as i64;
        for i in 0..n {
            for j in 0..n {
                if b.param_forms.iter().any(|m| m[i][j] != -m[j][i])
                    || (b.root_form[i][j] + b.root_form[j][i]) % order != 0
                {
                    return Err(Error::BadParams("bicharacter form must be antisymmetric".into()));
                }
            }
        }
        Ok(b)
    }

    pub fn zero(ring: &ScalarRing, grading: &GradingGroup) -> Self {
        let n = grading.dim();
        Bicharacter {
            grading: grading.clone(),
            param_forms: vec![vec![vec![0; n]; n]; ring.params().len()],
            root_form: vec![vec![0; n]; n],
        }
    }

    pub fn grading(&self) -> &GradingGroup {
        &self.grading
    }

    pub fn param_forms(&self) -> &[Vec<Vec<i64>>] {
        &self.param_forms
    }

    pub fn root_form(&self) -> &[Vec<i64>] {
        &self.root_form
    }

    pub fn eval(&self, ring: &Arc<ScalarRing>, a: &[i64], b: &[i64]) -> Scalar {
        let exps: Vec<i64> = self.param_forms.iter().map(|m| bilinear(m, a, b)).collect();
        Scalar::unit_monomial(ring, bilinear(&self.root_form, a, b), &exps)
    }

    pub fn negated(&self) -> Self {
        let neg = |m: &Vec<Vec<i64>>| m.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
        Bicharacter {
            grading: self.grading.clone(),
            param_forms: self.param_forms.iter().map(neg).collect(),
            root_form: neg(&self.root_form),
        }
    }
}

#[derive(Clone, Debug)]
struct Table {
    basis: Vec<Word>,
    index: HashMap<Word, usize>,
    values: Vec<Vec<Scalar>>,
}

impl Table {
    fn get(&self, a: &Word, b: &Word) -> Scalar {
        let i = self.index[a];
        let j = self.index[b];
        self.values[i][j].clone()
    }
}

#[derive(Clone, Debug)]
enum Kind {
    Bicharacter(Bicharacter),
    Table(Table),
}

struct Inner {
    name: String,
    host: Arc<HopfAlgebra>,
    forward: Kind,
    inverse: Option<Kind>,
    grouplike_by_degree: HashMap<Vec<i64>, Word>,
}

/// Unital, convolution-invertible 2-cocycle on a Hopf algebra.
#[derive(Clone)]
pub struct TwoCocycle {
    inner: Arc<Inner>,
}

impl fmt::Debug for TwoCocycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TwoCocycle({} on {})", self.inner.name, self.inner.host.name())
    }
}

impl TwoCocycle {
    fn assemble(name: String, host: &Arc<HopfAlgebra>, forward: Kind, inverse: Option<Kind>) -> Self {
        let mut grouplike_by_degree = HashMap::new();
        if let Kind::Table(t) = &forward {
            let p = host.presentation();
            for w in &t.basis {
                let grouplike = host
                    .coproduct_word(w, 2)
                    .map(|d| d.len() == 1 && d.terms().contains_key(&vec![w.clone(), w.clone()]))
                    .unwrap_or(false);
                if grouplike {
                    grouplike_by_degree.entry(p.word_degree(w)).or_insert_with(|| w.clone());
                }
            }
        }
        TwoCocycle {
            inner: Arc::new(Inner {
                name,
                host: host.clone(),
                forward,
                inverse,
                grouplike_by_degree,
            }),
        }
    }

    /// Bicharacter cocycle; the cocycle condition is checked up to `check_degree`.
    pub fn bicharacter(
        name: impl Into<String>,
        host: &Arc<HopfAlgebra>,
        form: Bicharacter,
        check_degree: usize,
    ) -> Result<Self> {
        if form.grading != *host.presentation().grading() {
            return Err(Error::BadParams(format!(
                "bicharacter grading does not match `{}`",
                host.name()
            )));
        }
        let ring = host.presentation().ring();
        let n = form.grading.dim();
        for i in 0..n {
            for j in 0..n {
                if form.param_forms.iter().any(|m| m[i][j] != -m[j][i])
                    || (form.root_form[i][j] + form.root_form[j][i]) % ring.order() as i64 != 0
                {
                    return Err(Error::BadParams("bicharacter form must be antisymmetric".into()));
                }
            }
        }
        let inv = form.negated();
        let g = Self::assemble(name.into(), host, Kind::Bicharacter(form), Some(Kind::Bicharacter(inv)));
        let mut report = check_unitality(&g, check_degree);
        report.absorb(check_cocycle_condition(&g, check_degree));
        if !report.passed() {
            return Err(Error::SealingFailed(Box::new(report)));
        }
        Ok(g)
    }

    /// The counit ε⊗ε.
    pub fn trivial(host: &Arc<HopfAlgebra>) -> Self {
        let p = host.presentation();
        let b = Bicharacter::zero(p.ring(), p.grading());
        Self::assemble(
            "trivial".into(),
            host,
            Kind::Bicharacter(b.clone()),
            Some(Kind::Bicharacter(b)),
        )
    }

    fn make_table(host: &Arc<HopfAlgebra>, values: Vec<Vec<Scalar>>) -> Result<Table> {
        let basis = host.presentation().finite_basis()?;
        let n = basis.len();
        if values.len() != n || values.iter().any(|r| r.len() != n) {
            return Err(Error::BadParams(format!("cocycle table must be {n}×{n}")));
        }
        let index = basis.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        Ok(Table { basis, index, values })
    }

    /// Table cocycle on a finite-dimensional host, checked exhaustively.
    pub fn table(name: impl Into<String>, host: &Arc<HopfAlgebra>, values: Vec<Vec<Scalar>>) -> Result<Self> {
        let name = name.into();
        let t = Self::make_table(host, values)?;
        let inv = table_inverse(host, &t)?.ok_or_else(|| Error::NotInvertible(name.clone()))?;
        let g = Self::assemble(name, host, Kind::Table(t), Some(Kind::Table(inv)));
        let mut report = check_unitality(&g, 0);
        report.absorb(check_cocycle_condition(&g, 0));
        report.absorb(check_convolution_inverse(&g, 0));
        if !report.passed() {
            return Err(Error::SealingFailed(Box::new(report)));
        }
        Ok(g)
    }

    /// Table without any checks; the inverse is computed when the system is solvable.
    pub fn table_unchecked(name: impl Into<String>, host: &Arc<HopfAlgebra>, values: Vec<Vec<Scalar>>) -> Result<Self> {
        let t = Self::make_table(host, values)?;
        let inv = table_inverse(host, &t)?.map(Kind::Table);
        Ok(Self::assemble(name.into(), host, Kind::Table(t), inv))
    }

    /// Tabulates a bilinear form on the degrees of a finite host's basis.
    pub fn table_from_form(name: impl Into<String>, host: &Arc<HopfAlgebra>, form: &Bicharacter) -> Result<Self> {
        let p = host.presentation();
        let basis = p.finite_basis()?;
        let values = basis
            .iter()
            .map(|a| {
                basis
                    .iter()
                    .map(|b| {
                        let e = &host.counit_word(a) * &host.counit_word(b);
                        &e * &form.eval(p.ring(), &p.word_degree(a), &p.word_degree(b))
                    })
                    .collect()
            })
            .collect();
        Self::table(name, host, values)
    }

    pub fn name(&self) -> &str {
        &self.inner.name
    }

    pub fn host(&self) -> &Arc<HopfAlgebra> {
        &self.inner.host
    }

    pub fn is_table(&self) -> bool {
        matches!(self.inner.forward, Kind::Table(_))
    }

    pub fn bicharacter_form(&self) -> Option<&Bicharacter> {
        match &self.inner.forward {
            Kind::Bicharacter(b) => Some(b),
            Kind::Table(_) => None,
        }
    }

    /// Table entries in basis order, for table cocycles.
    pub fn table_values(&self) -> Option<(&[Word], &[Vec<Scalar>])> {
        match &self.inner.forward {
            Kind::Table(t) => Some((&t.basis, &t.values)),
            Kind::Bicharacter(_) => None,
        }
    }

    /// True when the form is identically the counit.
    pub fn is_trivial(&self) -> bool {
        match &self.inner.forward {
            Kind::Bicharacter(b) => *b == b.negated(),
            Kind::Table(t) => {
                let h = &self.inner.host;
                t.basis.iter().enumerate().all(|(i, a)| {
                    t.basis.iter().enumerate().all(|(j, b)| {
                        t.values[i][j] == &h.counit_word(a) * &h.counit_word(b)
                    })
                })
            }
        }
    }

    /// The convolution inverse γ̄ as a cocycle in its own right.
    pub fn inverse(&self) -> Result<Self> {
        let inv = self
            .inner
            .inverse
            .clone()
            .ok_or_else(|| Error::NotInvertible(self.inner.name.clone()))?;
        let name = match self.inner.name.strip_suffix("^-1") {
            Some(base) => base.to_string(),
            None => format!("{}^-1", self.inner.name),
        };
        Ok(Self::assemble(name, &self.inner.host, inv, Some(self.inner.forward.clone())))
    }

    fn eval_kind(&self, kind: &Kind, a: &Word, b: &Word) -> Scalar {
        let h = &self.inner.host;
        match kind {
            Kind::Bicharacter(bc) => {
                let e = &h.counit_word(a) * &h.counit_word(b);
                if e.is_zero() {
                    return e;
                }
                let p = h.presentation();
                &e * &bc.eval(p.ring(), &p.word_degree(a), &p.word_degree(b))
            }
            Kind::Table(t) => t.get(a, b),
        }
    }

    /// γ(a⊗b) on normal words.
    pub fn eval_words(&self, a: &Word, b: &Word) -> Scalar {
        self.eval_kind(&self.inner.forward, a, b)
    }

    /// γ̄(a⊗b) on normal words.
    pub fn inverse_eval_words(&self, a: &Word, b: &Word) -> Result<Scalar> {
        let inv = self
            .inner
            .inverse
            .as_ref()
            .ok_or_else(|| Error::NotInvertible(self.inner.name.clone()))?;
        Ok(self.eval_kind(inv, a, b))
    }

    /// Bilinear extension to elements of the host.
    pub fn eval(&self, x: &AlgebraElement, y: &AlgebraElement) -> Scalar {
        let mut acc = Scalar::zero(x.presentation().ring());
        for (a, ca) in x.terms() {
            for (b, cb) in y.terms() {
                acc += &(&(ca * cb) * &self.eval_words(a, b));
            }
        }
        acc
    }

    pub fn inverse_eval(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<Scalar> {
        let mut acc = Scalar::zero(x.presentation().ring());
        for (a, ca) in x.terms() {
            for (b, cb) in y.terms() {
                acc += &(&(ca * cb) * &self.inverse_eval_words(a, b)?);
            }
        }
        Ok(acc)
    }

    /// σ(a⊗b) on grading degrees, as used for left deformations.
    pub fn eval_degrees(&self, a: &[i64], b: &[i64]) -> Result<Scalar> {
        self.eval_degrees_kind(&self.inner.forward, a, b)
    }

    /// σ̄(a⊗b) on grading degrees.
    pub fn inverse_eval_degrees(&self, a: &[i64], b: &[i64]) -> Result<Scalar> {
        let inv = self
            .inner
            .inverse
            .as_ref()
            .ok_or_else(|| Error::NotInvertible(self.inner.name.clone()))?;
        self.eval_degrees_kind(inv, a, b)
    }

    fn eval_degrees_kind(&self, kind: &Kind, a: &[i64], b: &[i64]) -> Result<Scalar> {
        let p = self.inner.host.presentation();
        match kind {
            Kind::Bicharacter(bc) => Ok(bc.eval(p.ring(), a, b)),
            Kind::Table(t) => {
                let find = |d: &[i64]| {
                    self.inner.grouplike_by_degree.get(d).ok_or_else(|| {
                        Error::NotHomogeneous(format!(
                            "no grouplike element of degree {d:?} in `{}`",
                            self.inner.host.name()
                        ))
                    })
                };
                Ok(t.get(find(a)?, find(b)?))
            }
        }
    }

    /// Basis words used for checks up to `max_degree` (the whole basis for tables).
    pub fn check_basis(&self, max_degree: usize) -> Result<Vec<Word>> {
        match &self.inner.forward {
            Kind::Table(t) => Ok(t.basis.clone()),
            Kind::Bicharacter(_) => self.inner.host.presentation().basis_up_to(max_degree),
        }
    }
}

fn table_inverse(host: &Arc<HopfAlgebra>, t: &Table) -> Result<Option<Table>> {
    let n = t.basis.len();
    let mut rows = Vec::with_capacity(n * n);
    for p in &t.basis {
        let dp = host.coproduct_word(p, 2)?;
        for q in &t.basis {
            let dq = host.coproduct_word(q, 2)?;
            let mut row = SparseRow::new();
            for (kp, cp) in dp.terms() {
                for (kq, cq) in dq.terms() {
                    let idx = t.index[&kp[0]] * n + t.index[&kq[0]];
                    let v = &(cp * cq) * &t.get(&kp[1], &kq[1]);
                    accumulate(&mut row, idx, v);
                }
            }
            let rhs = &host.counit_word(p) * &host.counit_word(q);
            rows.push((row, rhs));
        }
    }
    Ok(linalg::solve(&rows, n * n)?.map(|x| Table {
        basis: t.basis.clone(),
        index: t.index.clone(),
        values: x.chunks(n).map(|c| c.to_vec()).collect(),
    }))
}

/// γ(h⊗1) = ε(h) = γ(1⊗h).
pub fn check_unitality(g: &TwoCocycle, max_degree: usize) -> Report {
    let mut report = Report::new(format!("cocycle-unitality[{}]", g.name()));
    let h = g.host();
    let p = h.presentation().clone();
    let basis = match g.check_basis(max_degree) {
        Ok(b) => b,
        Err(e) => {
            report.fail("basis", "a basis", e);
            return report;
        }
    };
    let one = Word::one();
    for w in &basis {
        let e = h.counit_word(w);
        report.compare(&e, &g.eval_words(w, &one), || format!("γ({} ⊗ 1)", p.format_word(w)));
        report.compare(&e, &g.eval_words(&one, w), || format!("γ(1 ⊗ {})", p.format_word(w)));
    }
    report
}

/// γ(g₁⊗h₁)γ(g₂h₂⊗k) = γ(h₁⊗k₁)γ(g⊗h₂k₂) on all basis triples.
pub fn check_cocycle_condition(g: &TwoCocycle, max_degree: usize) -> Report {
    check_cocycle_condition_on(g, &**g.host(), max_degree)
}

/// Cocycle condition with products taken in `h` (e.g. a twisted host).
pub fn check_cocycle_condition_on(g: &TwoCocycle, h: &dyn HopfStructure, max_degree: usize) -> Report {
    let mut report = Report::new(format!("cocycle-condition[{}]", g.name()));
    let basis = match g.check_basis(max_degree) {
        Ok(b) => b,
        Err(e) => {
            report.fail("basis", "a basis", e);
            return report;
        }
    };
    let p = h.presentation().clone();
    for a in &basis {
        for b in &basis {
            for c in &basis {
                let res = cocycle_sides(g, h, a, b, c);
                let case = || {
                    format!(
                        "triple ({}, {}, {})",
                        p.format_word(a),
                        p.format_word(b),
                        p.format_word(c)
                    )
                };
                match res {
                    Ok((l, r)) => report.compare(&l, &r, case),
                    Err(e) => report.fail(case(), "evaluation", e),
                }
            }
        }
    }
    report
}

fn cocycle_sides(g: &TwoCocycle, h: &dyn HopfStructure, a: &Word, b: &Word, c: &Word) -> Result<(Scalar, Scalar)> {
    let p = h.presentation();
    let ring = p.ring();
    let da = h.coproduct_word(a, 2)?;
    let db = h.coproduct_word(b, 2)?;
    let dc = h.coproduct_word(c, 2)?;
    let kc = AlgebraElement::from_word(p, c)?;
    let ka = AlgebraElement::from_word(p, a)?;
    let mut lhs = Scalar::zero(ring);
    for (x, cx) in da.terms() {
        for (y, cy) in db.terms() {
            let f = g.eval_words(&x[0], &y[0]);
            if f.is_zero() {
                continue;
            }
            let prod = h.multiply_words(&x[1], &y[1])?;
            lhs += &(&(&(cx * cy) * &f) * &g.eval(&prod, &kc));
        }
    }
    let mut rhs = Scalar::zero(ring);
    for (y, cy) in db.terms() {
        for (z, cz) in dc.terms() {
            let f = g.eval_words(&y[0], &z[0]);
            if f.is_zero() {
                continue;
            }
            let prod = h.multiply_words(&y[1], &z[1])?;
            rhs += &(&(&(cy * cz) * &f) * &g.eval(&ka, &prod));
        }
    }
    Ok((lhs, rhs))
}

/// γ̄∗γ = ε⊗ε = γ∗γ̄ on basis pairs.
pub fn check_convolution_inverse(g: &TwoCocycle, max_degree: usize) -> Report {
    let mut report = Report::new(format!("cocycle-inverse[{}]", g.name()));
    let h = g.host().clone();
    let p = h.presentation().clone();
    let basis = match g.check_basis(max_degree) {
        Ok(b) => b,
        Err(e) => {
            report.fail("basis", "a basis", e);
            return report;
        }
    };
    for a in &basis {
        for b in &basis {
            let expected = &h.counit_word(a) * &h.counit_word(b);
            let res: Result<(Scalar, Scalar)> = (|| {
                let da = h.coproduct_word(a, 2)?;
                let db = h.coproduct_word(b, 2)?;
                let mut left = Scalar::zero(p.ring());
                let mut right = Scalar::zero(p.ring());
                for (x, cx) in da.terms() {
                    for (y, cy) in db.terms() {
                        let c = cx * cy;
                        left += &(&c * &(&g.inverse_eval_words(&x[0], &y[0])? * &g.eval_words(&x[1], &y[1])));
                        right += &(&c * &(&g.eval_words(&x[0], &y[0]) * &g.inverse_eval_words(&x[1], &y[1])?));
                    }
                }
                Ok((left, right))
            })();
            let case = |s: &str| format!("{s} on ({}, {})", p.format_word(a), p.format_word(b));
            match res {
                Ok((l, r)) => {
                    report.compare(&expected, &l, || case("γ̄∗γ"));
                    report.compare(&expected, &r, || case("γ∗γ̄"));
                }
                Err(e) => report.fail(case("inverse"), "evaluation", e),
            }
        }
    }
    report
}

/// Convolution functionals built from cocycles.
#[derive(Clone, Debug)]
pub enum Functional {
    Counit,
    /// u_γ(h) = γ(h₍₁₎ ⊗ S(h₍₂₎)).
    U(TwoCocycle),
    /// ū_γ(h) = γ̄(S(h₍₁₎) ⊗ h₍₂₎).
    UBar(TwoCocycle),
    Convolution(Box<Functional>, Box<Functional>),
}

impl Functional {
    /// Evaluates on a normal word, with S and Δ taken from `h`.
    pub fn eval_word(&self, h: &dyn HopfStructure, w: &Word) -> Result<Scalar> {
        match self {
            Functional::Counit => Ok(h.counit_word(w)),
            Functional::U(g) => {
                let p = h.presentation();
                let mut acc = Scalar::zero(p.ring());
                for (k, c) in h.coproduct_word(w, 2)?.terms() {
                    let left = AlgebraElement::from_word(p, &k[0])?;
                    let s = h.antipode_word(&k[1])?;
                    acc += &(c * &g.eval(&left, &s));
                }
                Ok(acc)
            }
            Functional::UBar(g) => {
                let p = h.presentation();
                let mut acc = Scalar::zero(p.ring());
                for (k, c) in h.coproduct_word(w, 2)?.terms() {
                    let s = h.antipode_word(&k[0])?;
                    let right = AlgebraElement::from_word(p, &k[1])?;
                    acc += &(c * &g.inverse_eval(&s, &right)?);
                }
                Ok(acc)
            }
            Functional::Convolution(f, g) => {
                let mut acc = Scalar::zero(h.presentation().ring());
                for (k, c) in h.coproduct_word(w, 2)?.terms() {
                    let a = f.eval_word(h, &k[0])?;
                    if a.is_zero() {
                        continue;
                    }
                    acc += &(&(c * &a) * &g.eval_word(h, &k[1])?);
                }
                Ok(acc)
            }
        }
    }

    pub fn eval(&self, h: &dyn HopfStructure, x: &AlgebraElement) -> Result<Scalar> {
        let mut acc = Scalar::zero(x.presentation().ring());
        for (w, c) in x.terms() {
            acc += &(c * &self.eval_word(h, w)?);
        }
        Ok(acc)
    }

    pub fn convolve(self, other: Functional) -> Functional {
        Functional::Convolution(Box::new(self), Box::new(other))
    }
}

pub fn u_gamma(g: &TwoCocycle) -> Functional {
    Functional::U(g.clone())
}

pub fn u_bar_gamma(g: &TwoCocycle) -> Functional {
    Functional::UBar(g.clone())
}

/// u_γ ∗ ū_γ = ε = ū_γ ∗ u_γ on the check basis.
pub fn check_u_inverse(g: &TwoCocycle, max_degree: usize) -> Report {
    let mut report = Report::new(format!("u-inverse[{}]", g.name()));
    let h = g.host().clone();
    let p = h.presentation().clone();
    let basis = match g.check_basis(max_degree) {
        Ok(b) => b,
        Err(e) => {
            report.fail("basis", "a basis", e);
            return report;
        }
    };
    let uu = u_gamma(g).convolve(u_bar_gamma(g));
    let uu2 = u_bar_gamma(g).convolve(u_gamma(g));
    for w in &basis {
        let e = h.counit_word(w);
        for (label, f) in [("u∗ū", &uu), ("ū∗u", &uu2)] {
            match f.eval_word(&*h, w) {
                Ok(v) => report.compare(&e, &v, || format!("{label} on {}", p.format_word(w))),
                Err(err) => report.fail(format!("{label} on {}", p.format_word(w)), e.clone(), err),
            }
        }
    }
    report
}

fn abc_sides(g: &TwoCocycle, h: &dyn HopfStructure, a: &Word, b: &Word, c: &Word) -> Result<(Scalar, Scalar)> {
    let p = h.presentation().clone();
    let ring = p.ring();
    let ea = AlgebraElement::from_word(&p, a)?;
    let ec = AlgebraElement::from_word(&p, c)?;
    let mut lhs = Scalar::zero(ring);
    for (k, cb) in h.coproduct_word(b, 2)?.terms() {
        let left = h.multiply(&ea, &AlgebraElement::from_word(&p, &k[0])?)?;
        let right = h.multiply(&h.antipode_word(&k[1])?, &ec)?;
        lhs += &(cb * &g.eval(&left, &right));
    }
    let u = u_gamma(g);
    let da = h.coproduct_word(a, 2)?;
    let db = h.coproduct_word(b, 3)?;
    let dc = h.coproduct_word(c, 2)?;
    let mut rhs = Scalar::zero(ring);
    for (x, cx) in da.terms() {
        for (y, cy) in db.terms() {
            let f1 = g.inverse_eval_words(&x[0], &y[0])?;
            if f1.is_zero() {
                continue;
            }
            let f2 = u.eval_word(h, &y[1])?;
            if f2.is_zero() {
                continue;
            }
            let sy = h.antipode_word(&y[2])?;
            for (z, cz) in dc.terms() {
                let f3 = g.inverse_eval(&sy, &AlgebraElement::from_word(&p, &z[0])?)?;
                let f4 = g.eval_words(&x[1], &z[1]);
                let coeff = &(&(cx * cy) * cz) * &(&(&f1 * &f2) * &(&f3 * &f4));
                rhs += &coeff;
            }
        }
    }
    Ok((lhs, rhs))
}

/// γ(g h₍₁₎ ⊗ S(h₍₂₎)k) = γ̄(g₍₁₎⊗h₍₁₎) u_γ(h₍₂₎) γ̄(S(h₍₃₎)⊗k₍₁₎) γ(g₍₂₎⊗k₍₂₎)
/// on basis triples; all of them when `samples` is `None`, otherwise a
/// seeded random selection.
pub fn check_identity_abc(g: &TwoCocycle, max_degree: usize, samples: Option<(usize, u64)>) -> Report {
    let mut report = Report::new(format!("identity-abc[{}]", g.name()));
    let h = g.host().clone();
    let p = h.presentation().clone();
    let basis = match g.check_basis(max_degree) {
        Ok(b) => b,
        Err(e) => {
            report.fail("basis", "a basis", e);
            return report;
        }
    };
    let triples: Vec<(Word, Word, Word)> = match samples {
        None => {
            let mut v = Vec::new();
            for a in &basis {
                for b in &basis {
                    for c in &basis {
                        v.push((a.clone(), b.clone(), c.clone()));
                    }
                }
            }
            v
        }
        Some((n, seed)) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..n)
                .map(|_| {
                    let pick = |r: &mut ChaCha8Rng| basis.choose(r).expect("nonempty basis").clone();
                    (pick(&mut rng), pick(&mut rng), pick(&mut rng))
                })
                .collect()
        }
    };
    for (a, b, c) in &triples {
        let case = || {
            format!(
                "triple ({}, {}, {})",
                p.format_word(a),
                p.format_word(b),
                p.format_word(c)
            )
        };
        match abc_sides(g, &*h, a, b, c) {
            Ok((l, r)) => report.compare(&l, &r, case),
            Err(e) => report.fail(case(), "evaluation", e),
        }
    }
    report
}

/// Presentation-level helper: degrees of the basis words of a finite host.
pub fn basis_degrees(p: &Presentation) -> Result<Vec<(Word, Vec<i64>)>> {
    Ok(p.finite_basis()?
        .into_iter()
        .map(|w| {
            let d = p.word_degree(&w);
            (w, d)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn el(h: &Arc<HopfAlgebra>, s: &str) -> AlgebraElement {
        AlgebraElement::parse(h.presentation(), s).unwrap()
    }

    fn sc(h: &Arc<HopfAlgebra>, s: &str) -> Scalar {
        Scalar::parse(h.presentation().ring(), s).unwrap()
    }

    #[test]
    fn torus_cocycle_values() {
        let t = catalog::torus_hopf(2).unwrap();
        let g = catalog::cl_cocycle(&t).unwrap();
        assert_eq!(g.eval(&el(&t, "t1"), &el(&t, "t2")), sc(&t, "q"));
        // two-step extension: γ(t1⊗t1*)γ(t2⊗t1*)
        let two_step = &g.eval(&el(&t, "t1"), &el(&t, "t1*")) * &g.eval(&el(&t, "t2"), &el(&t, "t1*"));
        assert_eq!(g.eval(&el(&t, "t1 t2"), &el(&t, "t1*")), two_step);
        assert_eq!(two_step, sc(&t, "q"));
        assert_eq!(g.inverse_eval(&el(&t, "t1"), &el(&t, "t2")).unwrap(), sc(&t, "q^-1"));
        assert_eq!(g.eval(&el(&t, "1"), &el(&t, "t1 t2 + 3")), sc(&t, "4"));
    }

    #[test]
    fn torus_cocycle_axioms() {
        let t = catalog::torus_hopf(2).unwrap();
        let g = catalog::cl_cocycle(&t).unwrap();
        assert!(check_cocycle_condition(&g, 2).passed());
        assert!(check_convolution_inverse(&g, 2).passed());
        assert!(check_u_inverse(&g, 3).passed());
        assert!(check_identity_abc(&g, 1, None).passed());
        assert!(u_gamma(&g).eval_word(&*t, &t.presentation().parse_word("t1 t2").unwrap()).unwrap().is_one());
    }

    #[test]
    fn trivial_cocycle_is_counit() {
        let h = catalog::su2_hopf().unwrap();
        let g = TwoCocycle::trivial(&h);
        assert!(g.is_trivial());
        assert_eq!(g.eval(&el(&h, "w1"), &el(&h, "w1*")), sc(&h, "1"));
        assert!(g.eval(&el(&h, "w2"), &el(&h, "w1")).is_zero());
        assert!(check_cocycle_condition(&g, 1).passed());
        assert!(g.inverse().unwrap().is_trivial());
    }

    #[test]
    fn sign_table_is_self_inverse() {
        let f = catalog::finite_function_hopf(2, 2).unwrap();
        let g = catalog::table_cocycle(&f).unwrap();
        let inv = g.inverse().unwrap();
        assert_eq!(g.table_values().unwrap().1, inv.table_values().unwrap().1);
        let r = check_identity_abc(&g, 0, None);
        assert_eq!((r.checked, r.failed), (64, 0));
    }

    #[test]
    fn corrupted_table_fails_with_witness() {
        let f = catalog::finite_function_hopf(2, 2).unwrap();
        let g = catalog::corrupted_table_cocycle(&f).unwrap();
        let r = check_cocycle_condition(&g, 0);
        assert!(!r.passed());
        assert!(r.witnesses[0].case.starts_with("triple ("));
        let values = g.table_values().unwrap().1.to_vec();
        assert!(matches!(
            TwoCocycle::table("again", &f, values),
            Err(Error::SealingFailed(_))
        ));
    }

    #[test]
    fn non_antisymmetric_bicharacter_rejected() {
        let t = catalog::torus_hopf(2).unwrap();
        let p = t.presentation();
        let sym = Bicharacter::bilinear(p.ring(), p.grading(), vec![vec![vec![1, 0], vec![0, 0]]], vec![vec![0; 2]; 2]).unwrap();
        assert!(matches!(TwoCocycle::bicharacter("s", &t, sym, 1), Err(Error::BadParams(_))));
    }
}
