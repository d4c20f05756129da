//! Materialized Sweedler sums: linear combinations of pure tensors of
//! normal-form words with a fixed number of legs.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::presentations::{check_same, same_presentation, write_terms, AlgebraElement, Presentation, Word};
use crate::util::{accumulate, split_signed_terms};
use crate::Scalar;

#[derive(Clone)]
pub struct TensorElement {
    legs: Vec<Arc<Presentation>>,
    terms: BTreeMap<Vec<Word>, Scalar>,
}

impl TensorElement {
    pub fn zero(legs: Vec<Arc<Presentation>>) -> Self {
        assert!(!legs.is_empty(), "a tensor needs at least one leg");
        TensorElement {
            legs,
            terms: BTreeMap::new(),
        }
    }

    /// 1 ⊗ … ⊗ 1.
    pub fn unit(legs: Vec<Arc<Presentation>>) -> Self {
        let ring = legs[0].ring().clone();
        let mut t = Self::zero(legs);
        let n = t.legs.len();
        t.add_term(vec![Word::one(); n], Scalar::one(&ring));
        t
    }

    pub fn pure(factors: &[&AlgebraElement]) -> Self {
        let legs: Vec<_> = factors.iter().map(|f| f.presentation().clone()).collect();
        let mut t = Self::zero(legs);
        let ring = t.legs[0].ring().clone();
        let mut partial: Vec<(Vec<Word>, Scalar)> = vec![(Vec::new(), Scalar::one(&ring))];
        for f in factors {
            let mut next = Vec::new();
            for (ws, c) in &partial {
                for (w, v) in f.terms() {
                    let mut ws = ws.clone();
                    ws.push(w.clone());
                    next.push((ws, c * v));
                }
            }
            partial = next;
        }
        for (ws, c) in partial {
            t.add_term(ws, c);
        }
        t
    }

    /// Lifts an element to a one-leg tensor.
    pub fn from_element(x: &AlgebraElement) -> Self {
        Self::pure(&[x])
    }

    /// Adds `c·(w₁⊗…⊗w_n)`; the words must already be normal.
    pub fn add_term(&mut self, words: Vec<Word>, c: Scalar) {
        debug_assert_eq!(words.len(), self.legs.len());
        accumulate(&mut self.terms, words, c);
    }

    pub fn legs(&self) -> &[Arc<Presentation>] {
        &self.legs
    }

    pub fn leg_count(&self) -> usize {
        self.legs.len()
    }

    pub fn terms(&self) -> &BTreeMap<Vec<Word>, Scalar> {
        &self.terms
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

    fn check_legs(&self, other: &Self) -> Result<()> {
        if self.legs.len() != other.legs.len() {
            return Err(Error::MixedPresentation(
                format!("{} legs", self.legs.len()),
                format!("{} legs", other.legs.len()),
            ));
        }
        for (a, b) in self.legs.iter().zip(&other.legs) {
            check_same(a, b)?;
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_legs(other)?;
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_legs(other)?;
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), -v);
        }
        Ok(out)
    }

    /// In-place `self += c·other`.
    pub fn add_scaled(&mut self, other: &Self, c: &Scalar) -> Result<()> {
        self.check_legs(other)?;
        if c.is_zero() {
            return Ok(());
        }
        for (k, v) in &other.terms {
            accumulate(&mut self.terms, k.clone(), v * c);
        }
        Ok(())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.legs.clone());
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v * c);
        }
        out
    }

    /// Leg-by-leg product in each leg's presentation.
    pub fn mul_legwise(&self, other: &Self) -> Result<Self> {
        self.check_legs(other)?;
        let mut out = Self::zero(self.legs.clone());
        for (ka, va) in &self.terms {
            for (kb, vb) in &other.terms {
                let mut partial: Vec<(Vec<Word>, Scalar)> = vec![(Vec::new(), va * vb)];
                for (i, (wa, wb)) in ka.iter().zip(kb).enumerate() {
                    let nf = self.legs[i].reduce_word(&wa.concat(wb))?;
                    let mut next = Vec::with_capacity(partial.len() * nf.len());
                    for (ws, c) in &partial {
                        for (w, v) in nf.iter() {
                            let mut ws = ws.clone();
                            ws.push(w.clone());
                            next.push((ws, c * v));
                        }
                    }
                    partial = next;
                }
                for (ws, c) in partial {
                    out.add_term(ws, c);
                }
            }
        }
        Ok(out)
    }

    /// Replaces leg `i` by the legs of `f(word)`, whose legs must be `new_legs`.
    pub fn expand_leg<F>(&self, i: usize, new_legs: &[Arc<Presentation>], mut f: F) -> Result<Self>
    where
        F: FnMut(&Word) -> Result<Arc<TensorElement>>,
    {
        let mut legs = self.legs[..i].to_vec();
        legs.extend_from_slice(new_legs);
        legs.extend_from_slice(&self.legs[i + 1..]);
        let mut out = Self::zero(legs);
        for (k, c) in &self.terms {
            let img = f(&k[i])?;
            if img.legs.len() != new_legs.len()
                || !img.legs.iter().zip(new_legs).all(|(a, b)| same_presentation(a, b))
            {
                return Err(Error::MixedPresentation(
                    "expansion".into(),
                    "declared legs".into(),
                ));
            }
            for (ik, iv) in &img.terms {
                let mut words = k[..i].to_vec();
                words.extend_from_slice(ik);
                words.extend_from_slice(&k[i + 1..]);
                out.add_term(words, c * iv);
            }
        }
        Ok(out)
    }

    /// Applies a linear map to leg `i`.
    pub fn map_leg<F>(&self, i: usize, target: &Arc<Presentation>, mut f: F) -> Result<Self>
    where
        F: FnMut(&Word) -> Result<AlgebraElement>,
    {
        self.expand_leg(i, std::slice::from_ref(target), |w| {
            Ok(Arc::new(TensorElement::from_element(&f(w)?)))
        })
    }

    /// Evaluates the legs listed in `drop` (in that order) to a scalar and removes them.
    pub fn contract<F>(&self, drop: &[usize], mut f: F) -> Result<Self>
    where
        F: FnMut(&[&Word]) -> Result<Scalar>,
    {
        let keep: Vec<usize> = (0..self.legs.len()).filter(|i| !drop.contains(i)).collect();
        assert!(!keep.is_empty(), "use contract_all to remove every leg");
        let legs = keep.iter().map(|&i| self.legs[i].clone()).collect();
        let mut out = Self::zero(legs);
        for (k, c) in &self.terms {
            let args: Vec<&Word> = drop.iter().map(|&i| &k[i]).collect();
            let v = f(&args)?;
            if v.is_zero() {
                continue;
            }
            out.add_term(keep.iter().map(|&i| k[i].clone()).collect(), c * &v);
        }
        Ok(out)
    }

    /// Evaluates every leg, summing to a scalar.
    pub fn contract_all<F>(&self, mut f: F) -> Result<Scalar>
    where
        F: FnMut(&[Word]) -> Result<Scalar>,
    {
        let mut acc = Scalar::zero(self.legs[0].ring());
        for (k, c) in &self.terms {
            acc += &(c * &f(k)?);
        }
        Ok(acc)
    }

    /// New leg `k` is old leg `perm[k]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let legs = perm.iter().map(|&i| self.legs[i].clone()).collect();
        let mut out = Self::zero(legs);
        for (k, c) in &self.terms {
            out.add_term(perm.iter().map(|&i| k[i].clone()).collect(), c.clone());
        }
        out
    }

    /// Tensor product, concatenating legs.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut legs = self.legs.clone();
        legs.extend_from_slice(&other.legs);
        let mut out = Self::zero(legs);
        for (ka, va) in &self.terms {
            for (kb, vb) in &other.terms {
                let mut k = ka.clone();
                k.extend_from_slice(kb);
                out.add_term(k, va * vb);
            }
        }
        out
    }

    /// The single leg as an algebra element.
    pub fn to_element(&self) -> Result<AlgebraElement> {
        if self.legs.len() != 1 {
            return Err(Error::MixedPresentation(
                format!("{} legs", self.legs.len()),
                "1 leg".into(),
            ));
        }
        AlgebraElement::normal_form(
            &self.legs[0],
            self.terms.iter().map(|(k, v)| (k[0].clone(), v.clone())),
        )
    }

    /// Parses `[c] w | w' - …`; each leg is reduced to normal form.
    pub fn parse(legs: &[Arc<Presentation>], s: &str) -> Result<Self> {
        let mut out = Self::zero(legs.to_vec());
        if s.trim() == "0" {
            return Ok(out);
        }
        let ring = legs[0].ring().clone();
        for (neg, term) in split_signed_terms(s) {
            let (coeff, body) = match term.strip_prefix('[') {
                Some(rest) => {
                    let end = rest
                        .find(']')
                        .ok_or_else(|| Error::Parse(format!("unclosed `[` in `{term}`")))?;
                    (Scalar::parse(&ring, &rest[..end])?, rest[end + 1..].to_string())
                }
                None => (Scalar::one(&ring), term.clone()),
            };
            let parts: Vec<&str> = body.split('|').collect();
            if parts.len() != legs.len() {
                return Err(Error::Parse(format!(
                    "term `{term}` has {} legs, expected {}",
                    parts.len(),
                    legs.len()
                )));
            }
            let factors: Vec<AlgebraElement> = parts
                .iter()
                .zip(legs)
                .map(|(p, l)| {
                    let p = p.trim();
                    AlgebraElement::parse(l, if p.is_empty() { "1" } else { p })
                })
                .collect::<Result<_>>()?;
            let refs: Vec<&AlgebraElement> = factors.iter().collect();
            let c = if neg { -coeff } else { coeff };
            out.add_scaled(&TensorElement::pure(&refs), &c)?;
        }
        Ok(out)
    }
}

impl PartialEq for TensorElement {
    fn eq(&self, other: &Self) -> bool {
        self.legs.len() == other.legs.len()
            && self
                .legs
                .iter()
                .zip(&other.legs)
                .all(|(a, b)| same_presentation(a, b))
            && self.terms == other.terms
    }
}

impl Eq for TensorElement {}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = |k: &Vec<Word>| {
            k.iter()
                .zip(&self.legs)
                .map(|(w, p)| p.format_word(w))
                .collect::<Vec<_>>()
                .join(" | ")
        };
        let mut s = String::new();
        write_terms(&mut s, self.terms.iter().map(|(k, c)| (body(k), c)), "0")?;
        f.write_str(&s)
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tensor({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::{GradingGroup, PresentationBuilder};
    use crate::ScalarRing;

    fn pres() -> Arc<Presentation> {
        let ring = ScalarRing::standard();
        PresentationBuilder::new("C[a,b]", &ring, GradingGroup::default())
            .generator("a", &[])
            .generator("b", &[])
            .commutative()
            .seal(6)
            .unwrap()
    }

    #[test]
    fn parse_display_round_trip() {
        let p = pres();
        let legs = vec![p.clone(), p.clone()];
        for s in ["a | b - [q] 1 | a b", "[2] 1 | 1", "0", "-b | 1"] {
            let t = TensorElement::parse(&legs, s).unwrap();
            assert_eq!(TensorElement::parse(&legs, &t.to_string()).unwrap(), t, "{s}");
        }
    }

    #[test]
    fn legwise_product_sorts_each_leg() {
        let p = pres();
        let legs = vec![p.clone(), p.clone()];
        let x = TensorElement::parse(&legs, "b | a").unwrap();
        let y = TensorElement::parse(&legs, "a | b").unwrap();
        assert_eq!(x.mul_legwise(&y).unwrap(), TensorElement::parse(&legs, "a b | a b").unwrap());
    }

    #[test]
    fn permute_and_contract() {
        let p = pres();
        let legs = vec![p.clone(), p.clone()];
        let x = TensorElement::parse(&legs, "a | b").unwrap();
        assert_eq!(x.permute(&[1, 0]), TensorElement::parse(&legs, "b | a").unwrap());
        let ring = p.ring().clone();
        let c = x.contract(&[1], |_| Ok(Scalar::from_i64(&ring, 3))).unwrap();
        assert_eq!(c.to_element().unwrap(), AlgebraElement::parse(&p, "[3] a").unwrap());
    }
}
