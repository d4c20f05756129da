//! Exact coefficients: Laurent polynomials in formal unit parameters over
//! the cyclotomic field Q(ζ_N).
//!
//! A cyclotomic coefficient is stored densely in the power basis
//! 1, ζ, …, ζ^{φ(N)−1}; a scalar is a sparse map from parameter exponent
//! vectors to such coefficients. Both layers are kept canonical, so equality
//! is structural.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::Arc;

use num_traits::{FromPrimitive, Num, Signed};

use crate::error::{Error, Result};

/// Rational base field of a scalar ring.
pub trait Rational:
    Clone
    + Num
    + Signed
    + FromPrimitive
    + Ord
    + Hash
    + fmt::Debug
    + fmt::Display
    + FromStr
    + Send
    + Sync
    + 'static
{
}

impl<T> Rational for T where
    T: Clone
        + Num
        + Signed
        + FromPrimitive
        + Ord
        + Hash
        + fmt::Debug
        + fmt::Display
        + FromStr
        + Send
        + Sync
        + 'static
{
}

const MAX_ORDER: u32 = 1024;

/// The ring Q(ζ_N)[q₁^{±1}, …, q_m^{±1}].
#[derive(Debug)]
pub struct ScalarRing {
    order: u32,
    params: Vec<String>,
    modulus: Vec<i64>,
    powers: Vec<Vec<i64>>,
}

impl PartialEq for ScalarRing {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.params == other.params
    }
}

impl Eq for ScalarRing {}

impl ScalarRing {
    pub fn new<I, S>(order: u32, params: I) -> Result<Arc<Self>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        if order == 0 || order > MAX_ORDER {
            return Err(Error::BadParams(format!(
                "cyclotomic order must lie in 1..={MAX_ORDER}, got {order}"
            )));
        }
        let params: Vec<String> = params.into_iter().map(Into::into).collect();
        for (i, p) in params.iter().enumerate() {
            if !is_identifier(p) || p == "z" {
                return Err(Error::BadParams(format!("invalid parameter name `{p}`")));
            }
            if params[..i].contains(p) {
                return Err(Error::BadParams(format!("duplicate parameter `{p}`")));
            }
        }
        let modulus = cyclotomic_polynomial(order);
        let phi = modulus.len() - 1;
        let mut powers = Vec::with_capacity(order as usize);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        for _ in 0..order {
            powers.push(cur.clone());
            // multiply by x and reduce with the monic modulus
            let top = cur[phi - 1];
            for k in (1..phi).rev() {
                cur[k] = cur[k - 1] - top * modulus[k];
            }
            cur[0] = -top * modulus[0];
        }
        Ok(Arc::new(ScalarRing {
            order,
            params,
            modulus,
            powers,
        }))
    }

    /// Ring with N = 4 and a single parameter `q`.
    pub fn standard() -> Arc<Self> {
        Self::new(4, ["q"]).expect("standard ring")
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn param_index(&self, name: &str) -> Option<usize> {
        self.params.iter().position(|p| p == name)
    }

    /// Degree φ(N) of the cyclotomic extension.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    /// Coefficients of Φ_N, lowest degree first.
    pub fn modulus(&self) -> &[i64] {
        &self.modulus
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    let n = n as usize;
    let mut p = vec![0i64; n + 1];
    p[0] = -1;
    p[n] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = divide_monic(&p, &cyclotomic_polynomial(d as u32));
        }
    }
    p
}

fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = num.len() - 1 - dd;
    let mut quot = vec![0i64; qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[k + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quot
}

/// Element of a [`ScalarRing`] with rational base `R`.
#[derive(Clone)]
pub struct CycloLaurent<R: Rational> {
    ring: Arc<ScalarRing>,
    terms: BTreeMap<Vec<i32>, Vec<R>>,
}

fn same_ring(a: &Arc<ScalarRing>, b: &Arc<ScalarRing>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn int<R: Rational>(k: i64) -> R {
    R::from_i64(k).expect("small integer fits the base field")
}

fn cyclo_is_zero<R: Rational>(c: &[R]) -> bool {
    c.iter().all(|x| x.is_zero())
}

fn cyclo_add_scaled<R: Rational>(acc: &mut [R], c: &R, power: &[i64]) {
    for (a, &p) in acc.iter_mut().zip(power) {
        if p != 0 {
            *a = a.clone() + c.clone() * int::<R>(p);
        }
    }
}

fn cyclo_mul<R: Rational>(ring: &ScalarRing, a: &[R], b: &[R]) -> Vec<R> {
    let phi = ring.degree();
    let mut long = vec![R::zero(); 2 * phi - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                long[i + j] = long[i + j].clone() + x.clone() * y.clone();
            }
        }
    }
    let mut out: Vec<R> = long[..phi].to_vec();
    for (k, c) in long.iter().enumerate().skip(phi) {
        if !c.is_zero() {
            cyclo_add_scaled(&mut out, c, &ring.powers[k % ring.order as usize]);
        }
    }
    out
}

fn cyclo_root<R: Rational>(ring: &ScalarRing, k: i64) -> Vec<R> {
    let n = ring.order as i64;
    ring.powers[k.rem_euclid(n) as usize]
        .iter()
        .map(|&c| int::<R>(c))
        .collect()
}

fn cyclo_star<R: Rational>(ring: &ScalarRing, a: &[R]) -> Vec<R> {
    let n = ring.order as usize;
    let mut out = vec![R::zero(); ring.degree()];
    for (k, c) in a.iter().enumerate() {
        if !c.is_zero() {
            cyclo_add_scaled(&mut out, c, &ring.powers[(n - k % n) % n]);
        }
    }
    out
}

fn cyclo_inverse<R: Rational>(ring: &ScalarRing, a: &[R]) -> Option<Vec<R>> {
    let phi = ring.degree();
    // columns a·ζ^j, augmented with e_0
    let cols: Vec<Vec<R>> = (0..phi)
        .map(|j| cyclo_mul(ring, a, &cyclo_root::<R>(ring, j as i64)))
        .collect();
    let mut m: Vec<Vec<R>> = (0..phi)
        .map(|i| {
            let mut row: Vec<R> = cols.iter().map(|c| c[i].clone()).collect();
            row.push(if i == 0 { R::one() } else { R::zero() });
            row
        })
        .collect();
    for col in 0..phi {
        let piv = (col..phi).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let p = m[col][col].clone();
        for x in m[col].iter_mut() {
            *x = x.clone() / p.clone();
        }
        for r in 0..phi {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=phi {
                    let v = m[col][c].clone() * f.clone();
                    m[r][c] = m[r][c].clone() - v;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[phi].clone()).collect())
}

impl<R: Rational> CycloLaurent<R> {
    pub fn zero(ring: &Arc<ScalarRing>) -> Self {
        CycloLaurent {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Arc<ScalarRing>) -> Self {
        Self::from_rational(ring, R::one())
    }

    pub fn from_i64(ring: &Arc<ScalarRing>, k: i64) -> Self {
        Self::from_rational(ring, int(k))
    }

    pub fn from_rational(ring: &Arc<ScalarRing>, r: R) -> Self {
        let mut c = vec![R::zero(); ring.degree()];
        c[0] = r;
        Self::from_parts(ring, vec![0; ring.params.len()], c)
    }

    /// ζ_N^k.
    pub fn root_of_unity(ring: &Arc<ScalarRing>, k: i64) -> Self {
        Self::from_parts(ring, vec![0; ring.params.len()], cyclo_root(ring, k))
    }

    /// The parameter with index `index` raised to `exp`.
    pub fn param(ring: &Arc<ScalarRing>, index: usize, exp: i32) -> Self {
        let mut exps = vec![0; ring.params.len()];
        exps[index] = exp;
        Self::from_parts(ring, exps, cyclo_root(ring, 0))
    }

    /// ζ_N^k · Π q_i^{e_i}.
    pub fn unit_monomial(ring: &Arc<ScalarRing>, zeta_exp: i64, exps: &[i64]) -> Self {
        assert_eq!(exps.len(), ring.params.len(), "exponent vector length");
        let exps = exps.iter().map(|&e| e as i32).collect();
        Self::from_parts(ring, exps, cyclo_root(ring, zeta_exp))
    }

    fn from_parts(ring: &Arc<ScalarRing>, exps: Vec<i32>, coeff: Vec<R>) -> Self {
        let mut terms = BTreeMap::new();
        if !cyclo_is_zero(&coeff) {
            terms.insert(exps, coeff);
        }
        CycloLaurent {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<ScalarRing> {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one(&self.ring)
    }

    /// Number of parameter monomials carrying a nonzero coefficient.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Parameter exponent vectors with their power-basis coefficients.
    pub fn terms(&self) -> impl Iterator<Item = (&[i32], &[R])> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c.as_slice()))
    }

    /// The value as a plain rational, when it is one.
    pub fn as_rational(&self) -> Option<R> {
        if self.is_zero() {
            return Some(R::zero());
        }
        let (exps, c) = self.terms.iter().next()?;
        if self.terms.len() == 1
            && exps.iter().all(|&e| e == 0)
            && c[1..].iter().all(|x| x.is_zero())
        {
            Some(c[0].clone())
        } else {
            None
        }
    }

    /// A single parameter monomial with nonzero coefficient.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    fn check(&self, other: &Self) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::MixedRing)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        out.add_in_place(other, false);
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        out.add_in_place(other, true);
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(&self.ring);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let exps: Vec<i32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let prod = cyclo_mul(&self.ring, c1, c2);
                out.accumulate(exps, prod, false);
            }
        }
        Ok(out)
    }

    fn add_in_place(&mut self, other: &Self, negate: bool) {
        for (e, c) in &other.terms {
            self.accumulate(e.clone(), c.clone(), negate);
        }
    }

    fn accumulate(&mut self, exps: Vec<i32>, coeff: Vec<R>, negate: bool) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                let coeff = if negate {
                    coeff.into_iter().map(|x| -x).collect()
                } else {
                    coeff
                };
                if !cyclo_is_zero(&coeff) {
                    v.insert(coeff);
                }
            }
            Entry::Occupied(mut o) => {
                for (a, b) in o.get_mut().iter_mut().zip(coeff) {
                    *a = if negate { a.clone() - b } else { a.clone() + b };
                }
                if cyclo_is_zero(o.get()) {
                    o.remove();
                }
            }
        }
    }

    pub fn scale_rational(&self, r: &R) -> Self {
        if r.is_zero() {
            return Self::zero(&self.ring);
        }
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            for x in c.iter_mut() {
                *x = x.clone() * r.clone();
            }
        }
        out
    }

    /// Inverse of a monomial unit.
    pub fn invert(&self) -> Result<Self> {
        if self.terms.len() != 1 {
            return Err(Error::NotAUnit(self.to_string()));
        }
        let (exps, c) = self.terms.iter().next().expect("one term");
        let inv = cyclo_inverse(&self.ring, c).ok_or_else(|| Error::NotAUnit(self.to_string()))?;
        let exps = exps.iter().map(|e| -e).collect();
        Ok(Self::from_parts(&self.ring, exps, inv))
    }

    /// Integer power of a unit (non-negative powers of anything).
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.invert()? } else { self.clone() };
        let mut out = Self::one(&self.ring);
        for _ in 0..e.unsigned_abs() {
            out = &out * &base;
        }
        Ok(out)
    }

    /// Conjugation: ζ ↦ ζ⁻¹, q_i ↦ q_i⁻¹, rationals fixed.
    pub fn star(&self) -> Self {
        let mut out = Self::zero(&self.ring);
        for (e, c) in &self.terms {
            let exps = e.iter().map(|x| -x).collect();
            out.accumulate(exps, cyclo_star(&self.ring, c), false);
        }
        out
    }

    pub fn parse(ring: &Arc<ScalarRing>, s: &str) -> Result<Self> {
        Parser::new(ring, s)?.scalar()
    }
}

impl<R: Rational> PartialEq for CycloLaurent<R> {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl<R: Rational> Eq for CycloLaurent<R> {}

impl<R: Rational> Hash for CycloLaurent<R> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl<R: Rational> fmt::Display for CycloLaurent<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (exps, coeff) in &self.terms {
            for (k, c) in coeff.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let mut factors = Vec::new();
                if k > 0 {
                    factors.push(format!("z^{k}"));
                }
                for (name, &e) in self.ring.params.iter().zip(exps) {
                    if e != 0 {
                        factors.push(format!("{name}^{e}"));
                    }
                }
                let term = if factors.is_empty() {
                    c.to_string()
                } else if c.is_one() {
                    factors.join("*")
                } else if (-c.clone()).is_one() {
                    format!("-{}", factors.join("*"))
                } else {
                    format!("{}*{}", c, factors.join("*"))
                };
                if first {
                    f.write_str(&term)?;
                    first = false;
                } else if let Some(rest) = term.strip_prefix('-') {
                    write!(f, " - {rest}")?;
                } else {
                    write!(f, " + {term}")?;
                }
            }
        }
        Ok(())
    }
}

impl<R: Rational> fmt::Debug for CycloLaurent<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<R: Rational> $tr<&CycloLaurent<R>> for &CycloLaurent<R> {
            type Output = CycloLaurent<R>;
            fn $method(self, rhs: &CycloLaurent<R>) -> CycloLaurent<R> {
                self.$checked(rhs).expect("scalars from different rings")
            }
        }
        impl<R: Rational> $tr for CycloLaurent<R> {
            type Output = CycloLaurent<R>;
            fn $method(self, rhs: CycloLaurent<R>) -> CycloLaurent<R> {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl<R: Rational> AddAssign<&CycloLaurent<R>> for CycloLaurent<R> {
    fn add_assign(&mut self, rhs: &CycloLaurent<R>) {
        self.check(rhs).expect("scalars from different rings");
        self.add_in_place(rhs, false);
    }
}

impl<R: Rational> SubAssign<&CycloLaurent<R>> for CycloLaurent<R> {
    fn sub_assign(&mut self, rhs: &CycloLaurent<R>) {
        self.check(rhs).expect("scalars from different rings");
        self.add_in_place(rhs, true);
    }
}

impl<R: Rational> Neg for &CycloLaurent<R> {
    type Output = CycloLaurent<R>;
    fn neg(self) -> CycloLaurent<R> {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            for x in c.iter_mut() {
                *x = -x.clone();
            }
        }
        out
    }
}

impl<R: Rational> Neg for CycloLaurent<R> {
    type Output = CycloLaurent<R>;
    fn neg(self) -> CycloLaurent<R> {
        -&self
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Caret,
    Star,
    Plus,
    Minus,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '^' => {
                out.push(Tok::Caret);
                i += 1;
            }
            '*' => {
                out.push(Tok::Star);
                i += 1;
            }
            '+' => {
                out.push(Tok::Plus);
                i += 1;
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1;
            }
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if i < chars.len() && chars[i] == '/' {
                    i += 1;
                    let den = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    if den == i {
                        return Err(Error::Parse(format!("missing denominator in `{s}`")));
                    }
                }
                out.push(Tok::Num(chars[start..i].iter().collect()));
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Tok::Ident(chars[start..i].iter().collect()));
            }
            other => {
                return Err(Error::Parse(format!("unexpected `{other}` in scalar `{s}`")));
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    ring: &'a Arc<ScalarRing>,
    src: &'a str,
    toks: Vec<Tok>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(ring: &'a Arc<ScalarRing>, src: &'a str) -> Result<Self> {
        Ok(Parser {
            ring,
            src,
            toks: tokenize(src)?,
            pos: 0,
        })
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} in scalar `{}`", self.src))
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn scalar<R: Rational>(&mut self) -> Result<CycloLaurent<R>> {
        if self.toks.is_empty() {
            return Err(self.err("empty input"));
        }
        let mut acc = CycloLaurent::zero(self.ring);
        let mut negate = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                true
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            let t = self.term::<R>()?;
            if negate {
                acc -= &t;
            } else {
                acc += &t;
            }
            match self.next() {
                None => return Ok(acc),
                Some(Tok::Plus) => negate = false,
                Some(Tok::Minus) => negate = true,
                Some(_) => return Err(self.err("expected `+` or `-`")),
            }
        }
    }

    fn term<R: Rational>(&mut self) -> Result<CycloLaurent<R>> {
        let mut acc = self.factor::<R>()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            acc = &acc * &self.factor::<R>()?;
        }
        Ok(acc)
    }

    fn exponent(&mut self) -> Result<i64> {
        if self.peek() != Some(&Tok::Caret) {
            return Ok(1);
        }
        self.pos += 1;
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        match self.next() {
            Some(Tok::Num(n)) if !n.contains('/') => {
                let v: i64 = n.parse().map_err(|_| self.err("exponent out of range"))?;
                Ok(if neg { -v } else { v })
            }
            _ => Err(self.err("expected integer exponent")),
        }
    }

    fn factor<R: Rational>(&mut self) -> Result<CycloLaurent<R>> {
        match self.next() {
            Some(Tok::Num(n)) => {
                let r = R::from_str(&n).map_err(|_| self.err("bad rational"))?;
                Ok(CycloLaurent::from_rational(self.ring, r))
            }
            Some(Tok::Ident(name)) => {
                let e = self.exponent()?;
                if name == "z" {
                    Ok(CycloLaurent::root_of_unity(self.ring, e))
                } else {
                    let idx = self
                        .ring
                        .param_index(&name)
                        .ok_or_else(|| self.err(&format!("unknown parameter `{name}`")))?;
                    let e = i32::try_from(e).map_err(|_| self.err("exponent out of range"))?;
                    Ok(CycloLaurent::param(self.ring, idx, e))
                }
            }
            _ => Err(self.err("expected a number or a symbol")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Scalar;

    fn ring() -> Arc<ScalarRing> {
        ScalarRing::standard()
    }

    fn s(x: &str) -> Scalar {
        Scalar::parse(&ring(), x).unwrap()
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn additive_and_multiplicative_inverses() {
        assert!((s("q") + s("-q")).is_zero());
        assert!((s("q") * s("q^-1")).is_one());
    }

    #[test]
    fn zeta_four_squares_to_minus_one() {
        let z = Scalar::root_of_unity(&ring(), 1);
        assert_eq!(&z * &z, Scalar::from_i64(&ring(), -1));
    }

    #[test]
    fn invert_units() {
        assert_eq!(s("q^2").invert().unwrap(), s("q^-2"));
        assert_eq!(s("2").invert().unwrap(), s("1/2"));
        assert!(matches!(s("1 + q").invert(), Err(Error::NotAUnit(_))));
        assert!(matches!(s("0").invert(), Err(Error::NotAUnit(_))));
        let u = s("1 + z^1");
        assert!((&u.invert().unwrap() * &u).is_one());
    }

    #[test]
    fn star_examples() {
        assert_eq!(s("q").star(), s("q^-1"));
        assert_eq!(s("z").star(), s("-z"));
        assert_eq!(s("3/2").star(), s("3/2"));
    }

    #[test]
    fn display_round_trip() {
        for text in ["0", "1", "-1", "1/2*z^1*q^-2", "q - 3*q^2", "-z^1 + 2"] {
            let x = s(text);
            assert_eq!(s(&x.to_string()), x, "{text}");
        }
        assert_eq!(s("q*1/2*z").to_string(), "1/2*z^1*q^1");
        assert_eq!(s("2 - q").to_string(), "2 - q^1");
    }

    #[test]
    fn mixed_rings_rejected() {
        let other = ScalarRing::new(3, ["q"]).unwrap();
        let a = Scalar::one(&ring());
        let b = Scalar::one(&other);
        assert!(matches!(a.checked_add(&b), Err(Error::MixedRing)));
    }

    #[test]
    fn parse_errors() {
        assert!(Scalar::parse(&ring(), "").is_err());
        assert!(Scalar::parse(&ring(), "p").is_err());
        assert!(Scalar::parse(&ring(), "q^").is_err());
        assert!(Scalar::parse(&ring(), "1/").is_err());
    }

    #[test]
    fn small_rational_base() {
        let r = ring();
        let z = crate::Scalar64::root_of_unity(&r, 1);
        assert_eq!((&z * &z).to_string(), "-1");
    }
}
