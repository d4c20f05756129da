//! Finitely presented algebras: words, scalar-commutation relations,
//! oriented rewrite rules, confluent normal forms and monomial bases.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, RwLock};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::Report;
use crate::scalars::{is_identifier, ScalarRing};
use crate::util::{accumulate, split_signed_terms};
use crate::Scalar;

/// Rewrite steps allowed for a single normal form computation.
pub const STEP_BUDGET: usize = 1_000_000;

/// Default overlap degree for the confluence check run at sealing.
pub const DEFAULT_CONFLUENCE_BOUND: usize = 6;

const BASIS_DEGREE_LIMIT: usize = 64;
/// Larger bases are treated as infinite by [`Presentation::finite_basis`].
const FINITE_BASIS_LIMIT: usize = 4096;

/// A word in the generators, ordered degree-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn one() -> Self {
        Word(Vec::new())
    }

    pub fn letter(i: usize) -> Self {
        Word(vec![i])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub type Terms = BTreeMap<Word, Scalar>;

/// Grading group ℤ^rank × ⊕ ℤ/torsion_i.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradingGroup {
    pub rank: usize,
    #[serde(default)]
    pub torsion: Vec<u64>,
}

impl GradingGroup {
    pub fn free(rank: usize) -> Self {
        GradingGroup {
            rank,
            torsion: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rank + self.torsion.len()
    }

    pub fn zero(&self) -> Vec<i64> {
        vec![0; self.dim()]
    }

    pub fn reduce(&self, d: &mut [i64]) {
        for (t, &n) in self.torsion.iter().enumerate() {
            let x = &mut d[self.rank + t];
            *x = x.rem_euclid(n as i64);
        }
    }

    pub fn add(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut d: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        self.reduce(&mut d);
        d
    }

    pub fn neg(&self, a: &[i64]) -> Vec<i64> {
        let mut d: Vec<i64> = a.iter().map(|x| -x).collect();
        self.reduce(&mut d);
        d
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: Vec<i64>,
    pub star: Option<usize>,
}

/// Oriented relation `lead → Σ c·word`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub lead: Word,
    pub replacement: Vec<(Word, Scalar)>,
}

pub struct Presentation {
    name: String,
    ring: Arc<ScalarRing>,
    generators: Vec<Generator>,
    grading: GradingGroup,
    commutation: BTreeMap<(usize, usize), Scalar>,
    rules: Vec<Rule>,
    // swaps first, then the user rules
    rewrites: Vec<Rule>,
    by_first: Vec<Vec<usize>>,
    confluence_bound: usize,
    complete: bool,
    cache: RwLock<HashMap<Word, Arc<Terms>>>,
    levels: RwLock<Vec<Vec<Word>>>,
}

impl fmt::Debug for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Presentation")
            .field("name", &self.name)
            .field("generators", &self.generators.len())
            .field("rules", &self.rules.len())
            .finish()
    }
}

impl PartialEq for Presentation {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other)
            || (self.name == other.name
                && *self.ring == *other.ring
                && self.generators == other.generators
                && self.commutation == other.commutation
                && self.rules == other.rules)
    }
}

pub(crate) fn same_presentation(a: &Arc<Presentation>, b: &Arc<Presentation>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

pub(crate) fn check_same(a: &Arc<Presentation>, b: &Arc<Presentation>) -> Result<()> {
    if same_presentation(a, b) {
        Ok(())
    } else {
        Err(Error::MixedPresentation(a.name.clone(), b.name.clone()))
    }
}

impl Presentation {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ring(&self) -> &Arc<ScalarRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn grading(&self) -> &GradingGroup {
        &self.grading
    }

    /// Commutation data: `(i, j) ↦ λ` with `i > j` and `x_i x_j = λ x_j x_i`.
    pub fn commutation(&self) -> &BTreeMap<(usize, usize), Scalar> {
        &self.commutation
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    /// Swap rules followed by the declared rules.
    pub fn rewrites(&self) -> &[Rule] {
        &self.rewrites
    }

    pub fn has_star(&self) -> bool {
        !self.generators.is_empty() && self.generators.iter().all(|g| g.star.is_some())
    }

    pub fn confluence_bound(&self) -> usize {
        self.confluence_bound
    }

    /// True when every critical pair has been checked.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn verified_for(&self, degree: usize) -> bool {
        self.complete || degree <= self.confluence_bound
    }

    pub fn word_degree(&self, w: &Word) -> Vec<i64> {
        let mut d = self.grading.zero();
        for &l in &w.0 {
            for (x, y) in d.iter_mut().zip(&self.generators[l].degree) {
                *x += y;
            }
        }
        self.grading.reduce(&mut d);
        d
    }

    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.0.iter()
            .map(|&l| self.generators[l].name.as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Parses whitespace separated generator names (`g^k` repeats), `1` for the empty word.
    pub fn parse_word(&self, s: &str) -> Result<Word> {
        let mut out = Vec::new();
        for tok in s.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let (name, reps) = match tok.split_once('^') {
                Some((n, k)) => (
                    n,
                    k.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad power in `{tok}`")))?,
                ),
                None => (tok, 1),
            };
            let idx = self
                .generator_index(name)
                .ok_or_else(|| Error::Parse(format!("unknown generator `{name}` in `{s}`")))?;
            out.extend(std::iter::repeat_n(idx, reps));
        }
        Ok(Word(out))
    }

    fn find_redex(&self, w: &[usize]) -> Option<(usize, &Rule)> {
        for pos in 0..w.len() {
            for &ri in &self.by_first[w[pos]] {
                let r = &self.rewrites[ri];
                if w[pos..].starts_with(&r.lead.0) {
                    return Some((pos, r));
                }
            }
        }
        None
    }

    /// True when no relation applies anywhere in `w`.
    pub fn is_normal(&self, w: &Word) -> bool {
        self.find_redex(&w.0).is_none()
    }

    fn redex_at_end(&self, w: &[usize]) -> bool {
        let last = w.len();
        self.rewrites.iter().any(|r| {
            let l = r.lead.len();
            l <= last && w[last - l..] == r.lead.0[..]
        })
    }

    fn apply_at(pos: usize, rule: &Rule, w: &[usize]) -> Vec<(Word, Scalar)> {
        let suffix = &w[pos + rule.lead.len()..];
        rule.replacement
            .iter()
            .map(|(rw, c)| {
                let mut v = Vec::with_capacity(w.len());
                v.extend_from_slice(&w[..pos]);
                v.extend_from_slice(&rw.0);
                v.extend_from_slice(suffix);
                (Word(v), c.clone())
            })
            .collect()
    }

    /// Normal form of a single word, memoized.
    pub fn reduce_word(&self, w: &Word) -> Result<Arc<Terms>> {
        let mut steps = 0usize;
        self.reduce_inner(w, &mut steps)
    }

    fn reduce_inner(&self, w: &Word, steps: &mut usize) -> Result<Arc<Terms>> {
        if let Some(hit) = self.cache.read().expect("cache lock").get(w) {
            return Ok(hit.clone());
        }
        let result = match self.find_redex(&w.0) {
            None => {
                let mut t = Terms::new();
                t.insert(w.clone(), Scalar::one(&self.ring));
                t
            }
            Some((pos, rule)) => {
                *steps += 1;
                if *steps > STEP_BUDGET {
                    return Err(Error::NonTerminating(STEP_BUDGET));
                }
                let mut t = Terms::new();
                for (nw, c) in Self::apply_at(pos, rule, &w.0) {
                    let sub = self.reduce_inner(&nw, steps)?;
                    for (k, v) in sub.iter() {
                        accumulate(&mut t, k.clone(), &c * v);
                    }
                }
                t
            }
        };
        let result = Arc::new(result);
        self.cache
            .write()
            .expect("cache lock")
            .insert(w.clone(), result.clone());
        Ok(result)
    }

    /// Rewrites without the memo, picking a random redex at every step.
    pub fn reduce_word_randomized<G: Rng>(&self, w: &Word, rng: &mut G) -> Result<Terms> {
        let mut current: Terms = Terms::new();
        current.insert(w.clone(), Scalar::one(&self.ring));
        let mut steps = 0usize;
        loop {
            let reducible: Vec<Word> = current
                .keys()
                .filter(|k| !self.is_normal(k))
                .cloned()
                .collect();
            if reducible.is_empty() {
                return Ok(current);
            }
            let target = reducible[rng.gen_range(0..reducible.len())].clone();
            let coeff = current.remove(&target).expect("present");
            let mut redexes = Vec::new();
            for pos in 0..target.len() {
                for &ri in &self.by_first[target.0[pos]] {
                    if target.0[pos..].starts_with(&self.rewrites[ri].lead.0) {
                        redexes.push((pos, ri));
                    }
                }
            }
            let (pos, ri) = redexes[rng.gen_range(0..redexes.len())];
            for (nw, c) in Self::apply_at(pos, &self.rewrites[ri], &target.0) {
                accumulate(&mut current, nw, &coeff * &c);
            }
            steps += 1;
            if steps > STEP_BUDGET {
                return Err(Error::NonTerminating(STEP_BUDGET));
            }
        }
    }

    fn star_word_raw(&self, w: &Word) -> Result<Word> {
        w.0.iter()
            .rev()
            .map(|&l| {
                self.generators[l]
                    .star
                    .ok_or_else(|| Error::NoStarStructure(self.name.clone()))
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    fn level(&self, degree: usize) -> Vec<Word> {
        {
            let levels = self.levels.read().expect("levels lock");
            if let Some(l) = levels.get(degree) {
                return l.clone();
            }
        }
        let mut levels = self.levels.write().expect("levels lock");
        if levels.is_empty() {
            levels.push(vec![Word::one()]);
        }
        while levels.len() <= degree {
            let prev = levels.last().expect("nonempty");
            let mut next = Vec::new();
            for w in prev {
                for g in 0..self.generators.len() {
                    let mut v = w.0.clone();
                    v.push(g);
                    if !self.redex_at_end(&v) {
                        next.push(Word(v));
                    }
                }
            }
            next.sort();
            levels.push(next);
        }
        levels[degree].clone()
    }

    /// Normal words of total degree `degree`, deglex ordered.
    pub fn monomial_basis(&self, degree: usize) -> Result<Vec<Word>> {
        if !self.verified_for(degree) {
            return Err(Error::ConfluenceNotVerified {
                name: self.name.clone(),
                verified: self.confluence_bound,
                requested: degree,
            });
        }
        Ok(self.level(degree))
    }

    /// Normal words of degree at most `degree`.
    pub fn basis_up_to(&self, degree: usize) -> Result<Vec<Word>> {
        let mut out = Vec::new();
        for d in 0..=degree {
            out.extend(self.monomial_basis(d)?);
        }
        Ok(out)
    }

    /// Full basis of a finite-dimensional presentation.
    pub fn finite_basis(&self) -> Result<Vec<Word>> {
        if !self.complete {
            return Err(Error::ConfluenceNotVerified {
                name: self.name.clone(),
                verified: self.confluence_bound,
                requested: usize::MAX,
            });
        }
        let mut out = Vec::new();
        for d in 0..=BASIS_DEGREE_LIMIT {
            let l = self.level(d);
            if l.is_empty() {
                return Ok(out);
            }
            out.extend(l);
            if out.len() > FINITE_BASIS_LIMIT {
                break;
            }
        }
        Err(Error::NotFiniteDimensional(self.name.clone()))
    }

    /// Largest word length on which a critical pair can live.
    pub fn max_overlap_length(&self) -> usize {
        let lens: Vec<usize> = self.rewrites.iter().map(|r| r.lead.len()).collect();
        let mut best = 0;
        for &a in &lens {
            for &b in &lens {
                best = best.max(a + b - 1).max(a);
            }
        }
        best
    }
}

/// Checks all critical pairs whose overlap word has length ≤ `max_degree`.
pub fn check_confluence(p: &Presentation, max_degree: usize) -> Report {
    let mut report = Report::new(format!("confluence[{}]", p.name));
    let rw = &p.rewrites;
    let resolve = |w: &[usize], pos: usize, r: &Rule| -> Result<Terms> {
        let mut t = Terms::new();
        for (nw, c) in Presentation::apply_at(pos, r, w) {
            for (k, v) in p.reduce_word(&nw)?.iter() {
                accumulate(&mut t, k.clone(), &c * v);
            }
        }
        Ok(t)
    };
    let show = |t: &Result<Terms>| match t {
        Ok(t) => format_terms(p, t),
        Err(e) => e.to_string(),
    };
    let mut compare = |w: Vec<usize>, p1: usize, r1: &Rule, p2: usize, r2: &Rule| {
        let a = resolve(&w, p1, r1);
        let b = resolve(&w, p2, r2);
        let ok = matches!((&a, &b), (Ok(x), Ok(y)) if x == y);
        if ok {
            report.pass();
        } else {
            report.fail(p.format_word(&Word(w)), show(&a), show(&b));
        }
    };
    for (i, r1) in rw.iter().enumerate() {
        let l1 = &r1.lead.0;
        for (j, r2) in rw.iter().enumerate() {
            let l2 = &r2.lead.0;
            // proper overlaps: suffix of l1 equals prefix of l2
            for k in 1..l1.len().min(l2.len()) {
                if l1.len() + l2.len() - k > max_degree {
                    continue;
                }
                if l1[l1.len() - k..] == l2[..k] {
                    let mut w = l1.clone();
                    w.extend_from_slice(&l2[k..]);
                    compare(w, 0, r1, l1.len() - k, r2);
                }
            }
            // inclusions of l2 in l1
            if i != j && l2.len() <= l1.len() && l1.len() <= max_degree {
                for pos in 0..=(l1.len() - l2.len()) {
                    if l1[pos..pos + l2.len()] == l2[..] {
                        compare(l1.clone(), 0, r1, pos, r2);
                    }
                }
            }
        }
    }
    report
}

fn format_terms(p: &Presentation, t: &Terms) -> String {
    let mut out = String::new();
    write_terms(&mut out, t.iter().map(|(w, c)| (p.format_word(w), c)), "0").expect("string write");
    out
}

/// Writes `[c] body` terms joined by signs; coefficient 1 is omitted.
pub(crate) fn write_terms<'a, W, I>(out: &mut W, terms: I, zero: &str) -> fmt::Result
where
    W: fmt::Write,
    I: Iterator<Item = (String, &'a Scalar)>,
{
    let mut first = true;
    for (body, c) in terms {
        let neg_rational = c.as_rational().filter(|r| r < &num_traits::Zero::zero());
        let (sign, coeff) = match neg_rational {
            Some(r) => {
                let abs = Scalar::from_rational(c.ring(), -r);
                ("-", if abs.is_one() { None } else { Some(abs) })
            }
            None => ("+", if c.is_one() { None } else { Some(c.clone()) }),
        };
        if first {
            if sign == "-" {
                out.write_char('-')?;
            }
        } else {
            write!(out, " {sign} ")?;
        }
        first = false;
        match coeff {
            Some(c) if body == "1" => write!(out, "[{c}]")?,
            Some(c) => write!(out, "[{c}] {body}")?,
            None => out.write_str(&body)?,
        }
    }
    if first {
        out.write_str(zero)?;
    }
    Ok(())
}

/// Builder collecting generators and relations before validation.
pub struct PresentationBuilder {
    name: String,
    ring: Arc<ScalarRing>,
    grading: GradingGroup,
    generators: Vec<Generator>,
    stars: Vec<(String, String)>,
    commutation: Vec<(String, String, Scalar)>,
    all_commute: bool,
    rules: Vec<(String, String)>,
    typed_rules: Vec<Rule>,
}

impl PresentationBuilder {
    pub fn new(name: impl Into<String>, ring: &Arc<ScalarRing>, grading: GradingGroup) -> Self {
        PresentationBuilder {
            name: name.into(),
            ring: ring.clone(),
            grading,
            generators: Vec::new(),
            stars: Vec::new(),
            commutation: Vec::new(),
            all_commute: false,
            rules: Vec::new(),
            typed_rules: Vec::new(),
        }
    }

    pub fn generator(mut self, name: &str, degree: &[i64]) -> Self {
        self.generators.push(Generator {
            name: name.to_string(),
            degree: degree.to_vec(),
            star: None,
        });
        self
    }

    /// Declares `a* = b` (and `b* = a`).
    pub fn star_pair(mut self, a: &str, b: &str) -> Self {
        self.stars.push((a.to_string(), b.to_string()));
        self
    }

    /// Declares `a b = λ b a`.
    pub fn commute(mut self, a: &str, b: &str, lambda: Scalar) -> Self {
        self.commutation.push((a.to_string(), b.to_string(), lambda));
        self
    }

    /// Every pair of generators commutes (explicit `commute` entries win).
    pub fn commutative(mut self) -> Self {
        self.all_commute = true;
        self
    }

    /// Oriented rule given as text, e.g. `("w2* w2", "1 - w1* w1")`.
    pub fn rule(mut self, lead: &str, replacement: &str) -> Self {
        self.rules.push((lead.to_string(), replacement.to_string()));
        self
    }

    pub fn rule_terms(mut self, rule: Rule) -> Self {
        self.typed_rules.push(rule);
        self
    }

    /// Validates the data without checking confluence.
    pub fn build(self) -> Result<Presentation> {
        let invalid = |m: String| Error::InvalidPresentation(m);
        let mut generators = self.generators;
        let dim = self.grading.dim();
        for g in generators.iter_mut() {
            if !is_identifier(&g.name.replace('*', "_")) || g.name.starts_with('*') {
                return Err(invalid(format!("bad generator name `{}`", g.name)));
            }
            if g.degree.len() != dim {
                return Err(invalid(format!(
                    "generator `{}` has degree of length {}, grading needs {dim}",
                    g.name,
                    g.degree.len()
                )));
            }
            self.grading.reduce(&mut g.degree);
        }
        for i in 0..generators.len() {
            if generators[..i].iter().any(|g| g.name == generators[i].name) {
                return Err(invalid(format!("duplicate generator `{}`", generators[i].name)));
            }
        }
        let names: Vec<String> = generators.iter().map(|g| g.name.clone()).collect();
        let index = |name: &str| -> Result<usize> {
            names
                .iter()
                .position(|g| g == name)
                .ok_or_else(|| invalid(format!("unknown generator `{name}`")))
        };
        let mut star = vec![None; generators.len()];
        for (a, b) in &self.stars {
            let (ia, ib) = (index(a)?, index(b)?);
            for (x, y) in [(ia, ib), (ib, ia)] {
                if star[x].is_some_and(|s| s != y) {
                    return Err(invalid(format!("conflicting star for `{}`", generators[x].name)));
                }
                star[x] = Some(y);
            }
        }
        for (i, s) in star.iter().enumerate() {
            if let Some(j) = *s {
                if generators[j].degree != self.grading.neg(&generators[i].degree) {
                    return Err(invalid(format!(
                        "star partner of `{}` must carry the negated degree",
                        generators[i].name
                    )));
                }
            }
        }
        for (g, s) in generators.iter_mut().zip(&star) {
            g.star = *s;
        }
        let mut commutation = BTreeMap::new();
        if self.all_commute {
            for i in 0..generators.len() {
                for j in 0..i {
                    commutation.insert((i, j), Scalar::one(&self.ring));
                }
            }
        }
        for (a, b, lambda) in self.commutation {
            let (ia, ib) = (index(&a)?, index(&b)?);
            if ia == ib {
                return Err(invalid(format!("`{a}` cannot commute with itself")));
            }
            if !lambda.is_unit() {
                return Err(invalid(format!("commutation factor `{lambda}` is not a monomial unit")));
            }
            let (key, val) = if ia > ib {
                ((ia, ib), lambda)
            } else {
                ((ib, ia), lambda.invert()?)
            };
            commutation.insert(key, val);
        }
        let mut rules = Vec::new();
        let word_of = |s: &str| -> Result<Word> {
            let mut out = Vec::new();
            for tok in s.split_whitespace() {
                if tok == "1" {
                    continue;
                }
                out.push(
                    names
                        .iter()
                        .position(|n| n == tok)
                        .ok_or_else(|| Error::Parse(format!("unknown generator `{tok}`")))?,
                );
            }
            Ok(Word(out))
        };
        for (lead, rep) in &self.rules {
            let lead = word_of(lead)?;
            let mut repl = Terms::new();
            for (neg, term) in split_signed_terms(rep) {
                let (c, w) = parse_term(&self.ring, &term, &word_of)?;
                accumulate(&mut repl, w, if neg { -c } else { c });
            }
            rules.push(Rule {
                lead,
                replacement: repl.into_iter().collect(),
            });
        }
        rules.extend(self.typed_rules);
        let mut p = Presentation {
            name: self.name,
            ring: self.ring,
            generators,
            grading: self.grading,
            commutation,
            rules: Vec::new(),
            rewrites: Vec::new(),
            by_first: Vec::new(),
            confluence_bound: 0,
            complete: false,
            cache: RwLock::new(HashMap::new()),
            levels: RwLock::new(Vec::new()),
        };
        for r in &rules {
            if r.lead.is_empty() {
                return Err(invalid("rule with empty leading word".into()));
            }
            let d = p.word_degree(&r.lead);
            for (w, c) in &r.replacement {
                if w >= &r.lead {
                    return Err(invalid(format!(
                        "rule {} does not decrease: {} is not smaller",
                        p.format_word(&r.lead),
                        p.format_word(w)
                    )));
                }
                if **c.ring() != *p.ring {
                    return Err(Error::MixedRing);
                }
                if p.word_degree(w) != d {
                    return Err(invalid(format!(
                        "rule {} is not homogeneous: {} has another degree",
                        p.format_word(&r.lead),
                        p.format_word(w)
                    )));
                }
            }
        }
        p.rules = rules;
        let mut rewrites: Vec<Rule> = p
            .commutation
            .iter()
            .map(|(&(i, j), l)| Rule {
                lead: Word(vec![i, j]),
                replacement: vec![(Word(vec![j, i]), l.clone())],
            })
            .collect();
        rewrites.extend(p.rules.iter().cloned());
        let mut by_first = vec![Vec::new(); p.generators.len()];
        for (k, r) in rewrites.iter().enumerate() {
            by_first[r.lead.0[0]].push(k);
        }
        p.rewrites = rewrites;
        p.by_first = by_first;
        Ok(p)
    }

    /// Validates, checks confluence up to `bound` and star compatibility.
    pub fn seal(self, bound: usize) -> Result<Arc<Presentation>> {
        let p = self.build()?;
        seal_presentation(p, bound)
    }
}

pub(crate) fn seal_presentation(mut p: Presentation, bound: usize) -> Result<Arc<Presentation>> {
    let report = check_confluence(&p, bound);
    if !report.passed() {
        return Err(Error::SealingFailed(Box::new(report)));
    }
    p.confluence_bound = bound;
    p.complete = bound >= p.max_overlap_length();
    p.levels.write().expect("levels lock").clear();
    let p = Arc::new(p);
    if p.has_star() {
        let report = check_star_relations(&p);
        if !report.passed() {
            return Err(Error::SealingFailed(Box::new(report)));
        }
    } else if p.generators.iter().any(|g| g.star.is_some()) {
        return Err(Error::InvalidPresentation(format!(
            "`{}` has partial star data",
            p.name
        )));
    }
    Ok(p)
}

/// The star of every relation must reduce to zero.
pub fn check_star_relations(p: &Arc<Presentation>) -> Report {
    let mut report = Report::new(format!("star-relations[{}]", p.name));
    for r in p.rewrites.iter() {
        let lhs = AlgebraElement::from_word(p, &r.lead).and_then(|x| x.star());
        let rhs: Result<AlgebraElement> = (|| {
            let mut acc = AlgebraElement::zero(p);
            for (w, c) in &r.replacement {
                let x = AlgebraElement::from_word(p, w)?.star()?;
                acc = acc.try_add(&x.scale(&c.star()))?;
            }
            Ok(acc)
        })();
        match (lhs, rhs) {
            (Ok(a), Ok(b)) => report.compare(&a, &b, || format!("star of {}", p.format_word(&r.lead))),
            (a, b) => report.fail(
                format!("star of {}", p.format_word(&r.lead)),
                a.map(|x| x.to_string()).unwrap_or_else(|e| e.to_string()),
                b.map(|x| x.to_string()).unwrap_or_else(|e| e.to_string()),
            ),
        }
    }
    report
}

fn parse_term<F>(ring: &Arc<ScalarRing>, term: &str, word_of: &F) -> Result<(Scalar, Word)>
where
    F: Fn(&str) -> Result<Word>,
{
    let term = term.trim();
    if term.is_empty() {
        return Err(Error::Parse("empty term".into()));
    }
    let (mut coeff, rest) = if let Some(stripped) = term.strip_prefix('[') {
        let end = stripped
            .find(']')
            .ok_or_else(|| Error::Parse(format!("unclosed `[` in `{term}`")))?;
        (Scalar::parse(ring, &stripped[..end])?, &stripped[end + 1..])
    } else {
        (Scalar::one(ring), term)
    };
    let mut words = Vec::new();
    for tok in rest.split_whitespace() {
        if tok.chars().next().is_some_and(|c| c.is_ascii_digit()) && tok != "1" {
            coeff = &coeff * &Scalar::parse(ring, tok)?;
        } else {
            words.push(tok);
        }
    }
    Ok((coeff, word_of(&words.join(" "))?))
}

/// Element of a presentation, stored in normal form.
#[derive(Clone)]
pub struct AlgebraElement {
    pres: Arc<Presentation>,
    terms: Terms,
}

impl AlgebraElement {
    pub fn zero(p: &Arc<Presentation>) -> Self {
        AlgebraElement {
            pres: p.clone(),
            terms: Terms::new(),
        }
    }

    pub fn one(p: &Arc<Presentation>) -> Self {
        Self::scalar(p, Scalar::one(&p.ring))
    }

    pub fn scalar(p: &Arc<Presentation>, c: Scalar) -> Self {
        let mut terms = Terms::new();
        accumulate(&mut terms, Word::one(), c);
        AlgebraElement {
            pres: p.clone(),
            terms,
        }
    }

    pub fn generator(p: &Arc<Presentation>, name: &str) -> Result<Self> {
        let i = p
            .generator_index(name)
            .ok_or_else(|| Error::Parse(format!("unknown generator `{name}`")))?;
        Self::from_word(p, &Word::letter(i))
    }

    /// Normal form of a single (possibly reducible) word.
    pub fn from_word(p: &Arc<Presentation>, w: &Word) -> Result<Self> {
        Ok(AlgebraElement {
            pres: p.clone(),
            terms: (*p.reduce_word(w)?).clone(),
        })
    }

    /// Normal form of a raw linear combination of words.
    pub fn normal_form<I>(p: &Arc<Presentation>, raw: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Word, Scalar)>,
    {
        let mut terms = Terms::new();
        for (w, c) in raw {
            if c.is_zero() {
                continue;
            }
            for (k, v) in p.reduce_word(&w)?.iter() {
                accumulate(&mut terms, k.clone(), &c * v);
            }
        }
        Ok(AlgebraElement {
            pres: p.clone(),
            terms,
        })
    }

    pub fn parse(p: &Arc<Presentation>, s: &str) -> Result<Self> {
        let word_of = |t: &str| p.parse_word(t);
        let mut raw = Vec::new();
        if s.trim() == "0" {
            return Ok(Self::zero(p));
        }
        for (neg, term) in split_signed_terms(s) {
            let (c, w) = parse_term(&p.ring, &term, &word_of)?;
            raw.push((w, if neg { -c } else { c }));
        }
        Self::normal_form(p, raw)
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.pres
    }

    pub fn terms(&self) -> &Terms {
        &self.terms
    }

    pub fn into_terms(self) -> Terms {
        self.terms
    }

    pub fn coefficient(&self, w: &Word) -> Scalar {
        self.terms
            .get(w)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(&self.pres.ring))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        check_same(&self.pres, &other.pres)?;
        let mut terms = self.terms.clone();
        for (w, c) in &other.terms {
            accumulate(&mut terms, w.clone(), c.clone());
        }
        Ok(AlgebraElement {
            pres: self.pres.clone(),
            terms,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut terms = Terms::new();
        for (w, v) in &self.terms {
            accumulate(&mut terms, w.clone(), v * c);
        }
        AlgebraElement {
            pres: self.pres.clone(),
            terms,
        }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        check_same(&self.pres, &other.pres)?;
        let mut terms = Terms::new();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let c = c1 * c2;
                for (k, v) in self.pres.reduce_word(&w1.concat(w2))?.iter() {
                    accumulate(&mut terms, k.clone(), &c * v);
                }
            }
        }
        Ok(AlgebraElement {
            pres: self.pres.clone(),
            terms,
        })
    }

    pub fn pow(&self, n: usize) -> Result<Self> {
        let mut acc = Self::one(&self.pres);
        for _ in 0..n {
            acc = acc.try_mul(self)?;
        }
        Ok(acc)
    }

    /// Antilinear, antimultiplicative involution.
    pub fn star(&self) -> Result<Self> {
        if !self.pres.has_star() {
            return Err(Error::NoStarStructure(self.pres.name.clone()));
        }
        let mut raw = Vec::with_capacity(self.terms.len());
        for (w, c) in &self.terms {
            raw.push((self.pres.star_word_raw(w)?, c.star()));
        }
        Self::normal_form(&self.pres, raw)
    }

    /// Common degree of all terms, if there is one (the zero element has every degree).
    pub fn homogeneous_degree(&self) -> Option<Vec<i64>> {
        let mut it = self.terms.keys().map(|w| self.pres.word_degree(w));
        let first = it.next().unwrap_or_else(|| self.pres.grading.zero());
        it.all(|d| d == first).then_some(first)
    }
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        same_presentation(&self.pres, &other.pres) && self.terms == other.terms
    }
}

impl Eq for AlgebraElement {}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.terms.iter().map(|(w, c)| (self.pres.format_word(w), c)),
            "0",
        )
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({self})", self.pres.name)
    }
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.try_add(rhs).expect("elements of different presentations")
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.try_sub(rhs).expect("elements of different presentations")
    }
}

impl Mul for &AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.try_mul(rhs).expect("elements of different presentations")
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        let m1 = Scalar::from_i64(&self.pres.ring, -1);
        self.scale(&m1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn su2() -> Arc<Presentation> {
        let ring = ScalarRing::standard();
        PresentationBuilder::new("O(SU(2))", &ring, GradingGroup::default())
            .generator("w1*", &[])
            .generator("w1", &[])
            .generator("w2*", &[])
            .generator("w2", &[])
            .star_pair("w1", "w1*")
            .star_pair("w2", "w2*")
            .commutative()
            .rule("w2* w2", "1 - w1* w1")
            .seal(DEFAULT_CONFLUENCE_BOUND)
            .unwrap()
    }

    #[test]
    fn deglex_order() {
        assert!(Word(vec![5]) < Word(vec![0, 0]));
        assert!(Word(vec![0, 1]) < Word(vec![1, 0]));
    }

    #[test]
    fn su2_degree_two_basis_has_nine_words() {
        let p = su2();
        let b = p.monomial_basis(2).unwrap();
        assert_eq!(b.len(), 9);
        assert!(!b.contains(&p.parse_word("w2* w2").unwrap()));
        assert_eq!(p.monomial_basis(0).unwrap(), vec![Word::one()]);
        assert!(p.is_complete());
    }

    #[test]
    fn rule_applies_in_products() {
        let p = su2();
        let a = AlgebraElement::parse(&p, "w2").unwrap();
        let b = AlgebraElement::parse(&p, "w2*").unwrap();
        assert_eq!(&a * &b, AlgebraElement::parse(&p, "1 - w1* w1").unwrap());
    }

    #[test]
    fn non_confluent_rules_reported() {
        let ring = ScalarRing::standard();
        let p = PresentationBuilder::new("bad", &ring, GradingGroup::default())
            .generator("x", &[])
            .rule("x x", "x")
            .rule_terms(Rule {
                lead: Word(vec![0, 0]),
                replacement: vec![(Word::one(), Scalar::one(&ring))],
            })
            .build()
            .unwrap();
        let r = check_confluence(&p, 4);
        assert!(!r.passed());
        assert_eq!(r.witnesses[0].case, "x x");
    }

    #[test]
    fn empty_rule_set_is_confluent() {
        let ring = ScalarRing::standard();
        let p = PresentationBuilder::new("free", &ring, GradingGroup::default())
            .generator("x", &[])
            .generator("y", &[])
            .build()
            .unwrap();
        assert!(check_confluence(&p, 4).passed());
        assert_eq!(check_confluence(&p, 4).checked, 0);
    }

    #[test]
    fn increasing_rule_rejected() {
        let ring = ScalarRing::standard();
        let r = PresentationBuilder::new("up", &ring, GradingGroup::default())
            .generator("x", &[])
            .generator("y", &[])
            .rule("x", "y y")
            .build();
        assert!(matches!(r, Err(Error::InvalidPresentation(_))));
    }

    #[test]
    fn element_text_round_trip() {
        let p = su2();
        for s in ["0", "1", "-1", "[q^1] w1 w2 - [1/2] w2*", "w1^2 - w1*", "[3]"] {
            let x = AlgebraElement::parse(&p, s).unwrap();
            assert_eq!(AlgebraElement::parse(&p, &x.to_string()).unwrap(), x, "{s}");
        }
    }

    #[test]
    fn star_reverses_and_conjugates() {
        let p = su2();
        let x = AlgebraElement::parse(&p, "[q] w1 w2").unwrap();
        let y = AlgebraElement::parse(&p, "[q^-1] w1* w2*").unwrap();
        assert_eq!(x.star().unwrap(), y);
    }

    #[test]
    fn unit_word_basis_without_confluence() {
        let ring = ScalarRing::standard();
        let p = PresentationBuilder::new("free", &ring, GradingGroup::default())
            .generator("x", &[])
            .build()
            .unwrap();
        assert!(matches!(
            p.monomial_basis(1),
            Err(Error::ConfluenceNotVerified { .. })
        ));
    }
}
