//! Built-in Hopf algebras, comodule algebras, cocycles and Galois instances.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::cocycles::{Bicharacter, TwoCocycle, DEFAULT_COCYCLE_DEGREE};
use crate::error::{Error, Result};
use crate::galois::{Cleaving, GaloisInstance};
use crate::hopf::{HopfAlgebra, HopfStructure, RightCoaction, DEFAULT_AXIOM_DEGREE};
use crate::presentations::{AlgebraElement, GradingGroup, Presentation, PresentationBuilder, Word};
use crate::scalars::ScalarRing;
use crate::tensor::TensorElement;
use crate::Scalar;

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u32, b: u32) -> u32 {
    a / gcd(a, b) * b
}

/// Ring ℚ(ζ_N)[q^±1] with N divisible by 4 and by every given order.
pub fn ring_for_orders(orders: &[u32]) -> Result<Arc<ScalarRing>> {
    let n = orders.iter().fold(4, |acc, &o| lcm(acc, o.max(1)));
    ScalarRing::new(n, ["q"])
}

/// Coordinate algebra of the torus T^r with grouplike unitaries t_i.
pub fn torus_hopf(r: usize) -> Result<Arc<HopfAlgebra>> {
    torus_hopf_over(&ScalarRing::standard(), r)
}

pub fn torus_hopf_over(ring: &Arc<ScalarRing>, r: usize) -> Result<Arc<HopfAlgebra>> {
    if r == 0 {
        return Err(Error::BadParams("torus rank must be at least 1".into()));
    }
    let mut b = PresentationBuilder::new(format!("O(T^{r})"), ring, GradingGroup::free(r));
    let mut data = Vec::new();
    for i in 0..r {
        let mut deg = vec![0; r];
        deg[i] = 1;
        let t = format!("t{}", i + 1);
        let ts = format!("t{}*", i + 1);
        b = b.generator(&t, &deg);
        deg[i] = -1;
        b = b.generator(&ts, &deg).star_pair(&t, &ts);
        b = b.rule(&format!("{t} {ts}"), "1");
        data.push((t.clone(), format!("{t} | {t}"), "1".to_string(), ts.clone()));
        data.push((ts.clone(), format!("{ts} | {ts}"), "1".to_string(), t.clone()));
    }
    let p = b.commutative().seal(4)?;
    let rows: Vec<(&str, &str, &str, &str)> = data
        .iter()
        .map(|(a, b, c, d)| (a.as_str(), b.as_str(), c.as_str(), d.as_str()))
        .collect();
    let h = HopfAlgebra::from_text(format!("O(T^{r})"), &p, &rows)?;
    let inv = antipode_as_inverse(&h)?;
    h.with_antipode_inverse(inv)?.seal(DEFAULT_AXIOM_DEGREE)
}

fn antipode_as_inverse(h: &HopfAlgebra) -> Result<Vec<AlgebraElement>> {
    Ok((0..h.presentation().generators().len())
        .map(|i| h.generator_antipode(i).clone())
        .collect())
}

/// O(SU(2)) with T = (w1, −w2*; w2, w1*), Δ(T) = T⊗̇T and S(T) = T†.
pub fn su2_hopf() -> Result<Arc<HopfAlgebra>> {
    let ring = ScalarRing::standard();
    let p = PresentationBuilder::new("O(SU(2))", &ring, GradingGroup::free(0))
        .generator("w1*", &[])
        .generator("w1", &[])
        .generator("w2*", &[])
        .generator("w2", &[])
        .star_pair("w1", "w1*")
        .star_pair("w2", "w2*")
        .commutative()
        .rule("w2* w2", "1 - w1* w1")
        .seal(4)?;
    let h = HopfAlgebra::from_text(
        "O(SU(2))",
        &p,
        &[
            ("w1", "w1 | w1 - w2* | w2", "1", "w1*"),
            ("w2", "w2 | w1 + w1* | w2", "0", "-w2"),
            ("w1*", "w1* | w1* - w2 | w2*", "1", "w1"),
            ("w2*", "w1 | w2* + w2* | w1*", "0", "-w2*"),
        ],
    )?;
    let inv = antipode_as_inverse(&h)?;
    h.with_antipode_inverse(inv)?.seal(DEFAULT_AXIOM_DEGREE)
}

/// O(S⁷) graded by the T² action z1 ↦ t1 z1, z2 ↦ t1* z2, z3 ↦ t2 z3, z4 ↦ t2* z4.
pub fn s7_algebra() -> Result<Arc<Presentation>> {
    let ring = ScalarRing::standard();
    let degs: [[i64; 2]; 4] = [[1, 0], [-1, 0], [0, 1], [0, -1]];
    let mut b = PresentationBuilder::new("O(S^7)", &ring, GradingGroup::free(2));
    for (i, d) in degs.iter().enumerate() {
        let z = format!("z{}", i + 1);
        let zs = format!("z{}*", i + 1);
        b = b
            .generator(&zs, &[-d[0], -d[1]])
            .generator(&z, d)
            .star_pair(&z, &zs);
    }
    b.commutative()
        .rule("z4* z4", "1 - z1* z1 - z2* z2 - z3* z3")
        .seal(4)
}

/// Group algebra 𝕂[ℤ_n] = ⟨g | gⁿ = 1⟩, graded by ℤ_n.
pub fn group_algebra(n: u32) -> Result<Arc<HopfAlgebra>> {
    if n < 2 {
        return Err(Error::BadParams("group order must be at least 2".into()));
    }
    let ring = ring_for_orders(&[n])?;
    let lead = vec!["g"; n as usize].join(" ");
    let p = PresentationBuilder::new(format!("K[Z{n}]"), &ring, GradingGroup { rank: 0, torsion: vec![n as u64] })
        .generator("g", &[1])
        .rule(&lead, "1")
        .seal(2 * n as usize)?;
    let s = if n == 2 { "g".to_string() } else { format!("g^{}", n - 1) };
    let h = HopfAlgebra::from_text(format!("K[Z{n}]"), &p, &[("g", "g | g", "1", &s)])?;
    h.seal(DEFAULT_AXIOM_DEGREE)
}

/// Functions on ℤ_n×ℤ_m, presented in the basis of characters a, b.
pub fn finite_function_hopf(n: u32, m: u32) -> Result<Arc<HopfAlgebra>> {
    if n < 2 || m < 2 {
        return Err(Error::BadParams("both cyclic factors need order at least 2".into()));
    }
    let ring = ring_for_orders(&[n, m])?;
    let name = format!("Fun(Z{n}xZ{m})");
    let p = PresentationBuilder::new(&name, &ring, GradingGroup { rank: 0, torsion: vec![n as u64, m as u64] })
        .generator("a", &[1, 0])
        .generator("b", &[0, 1])
        .commutative()
        .rule(&vec!["a"; n as usize].join(" "), "1")
        .rule(&vec!["b"; m as usize].join(" "), "1")
        .seal(2 * n.max(m) as usize)?;
    let pw = |g: &str, k: u32| if k == 1 { g.to_string() } else { format!("{g}^{k}") };
    let sa = pw("a", n - 1);
    let sb = pw("b", m - 1);
    let h = HopfAlgebra::from_text(
        &name,
        &p,
        &[("a", "a | a", "1", &sa), ("b", "b | b", "1", &sb)],
    )?;
    h.seal(DEFAULT_AXIOM_DEGREE)
}

/// The torus cocycle γ(t_j⊗t_k) = exp(iπΘ_jk) with Θ = ½(0 θ; −θ 0), written with q = e^{iπθ/2}.
pub fn cl_cocycle(torus: &Arc<HopfAlgebra>) -> Result<TwoCocycle> {
    let p = torus.presentation();
    if p.grading().rank != 2 || !p.grading().torsion.is_empty() {
        return Err(Error::BadParams("cl_cocycle lives on O(T^2)".into()));
    }
    let form = Bicharacter::antisymmetric(
        p.ring(),
        p.grading(),
        vec![vec![vec![0, 1], vec![-1, 0]]],
        vec![vec![0, 0], vec![0, 0]],
    )?;
    TwoCocycle::bicharacter("gamma_theta", torus, form, DEFAULT_COCYCLE_DEGREE)
}

/// Bilinear form β(x, y) = ζ_n^{x₂y₁} on ℤ_n×ℤ_n written in ζ_N.
pub fn sign_form(h: &Arc<HopfAlgebra>) -> Result<Bicharacter> {
    let p = h.presentation();
    let g = p.grading();
    if g.rank != 0 || g.torsion.len() != 2 || g.torsion[0] != g.torsion[1] {
        return Err(Error::BadParams("sign form needs a ℤ_n×ℤ_n grading".into()));
    }
    let step = (p.ring().order() as u64 / g.torsion[0]) as i64;
    Bicharacter::bilinear(
        p.ring(),
        g,
        vec![vec![vec![0, 0], vec![0, 0]]; p.ring().params().len()],
        vec![vec![0, 0], vec![step, 0]],
    )
}

/// Table cocycle on Fun(ℤ_n×ℤ_n) from [`sign_form`]; for n = 2 the values are ±1.
pub fn table_cocycle(h: &Arc<HopfAlgebra>) -> Result<TwoCocycle> {
    TwoCocycle::table_from_form("sign_table", h, &sign_form(h)?)
}

/// [`table_cocycle`] with one entry negated; fails the cocycle condition.
pub fn corrupted_table_cocycle(h: &Arc<HopfAlgebra>) -> Result<TwoCocycle> {
    let good = table_cocycle(h)?;
    let (basis, values) = good.table_values().expect("table");
    let p = h.presentation();
    let a = p.parse_word("a")?;
    let b = p.parse_word("b")?;
    let i = basis.iter().position(|w| *w == a).expect("a in basis");
    let j = basis.iter().position(|w| *w == b).expect("b in basis");
    let mut values = values.to_vec();
    values[i][j] = -&values[i][j];
    TwoCocycle::table_unchecked("corrupted_table", h, values)
}

/// Table cocycle on a cyclic group algebra from a root-of-unity form ζ^{k·xy}.
pub fn cyclic_table_cocycle(h: &Arc<HopfAlgebra>, k: i64) -> Result<TwoCocycle> {
    let p = h.presentation();
    let g = p.grading();
    if g.rank != 0 || g.torsion.len() != 1 {
        return Err(Error::BadParams("cyclic table cocycle needs a ℤ_n grading".into()));
    }
    let step = (p.ring().order() as u64 / g.torsion[0]) as i64;
    let form = Bicharacter::bilinear(
        p.ring(),
        g,
        vec![vec![vec![0]]; p.ring().params().len()],
        vec![vec![k * step]],
    )?;
    TwoCocycle::table_from_form(format!("cyclic_table_{k}"), h, &form)
}


/// δ(u) = u⊗̇T for u with rows (z1, −z2*), (z2, z1*), (z3, −z4*), (z4, z3*).
pub fn instanton_coaction() -> Result<RightCoaction> {
    RightCoaction::from_text(
        &s7_algebra()?,
        &su2_hopf()?,
        &[
            ("z1", "z1 | w1 - z2* | w2"),
            ("z2", "z2 | w1 + z1* | w2"),
            ("z3", "z3 | w1 - z4* | w2"),
            ("z4", "z4 | w1 + z3* | w2"),
            ("z1*", "z1* | w1* - z2 | w2*"),
            ("z2*", "z1 | w2* + z2* | w1*"),
            ("z3*", "z3* | w1* - z4 | w2*"),
            ("z4*", "z3 | w2* + z4* | w1*"),
        ],
    )
}

pub const ALPHA: &str = "2 z1 z3* + 2 z2* z4";
pub const BETA: &str = "2 z2 z3* - 2 z1* z4";
pub const X: &str = "z1 z1* + z2 z2* - z3 z3* - z4 z4*";

/// O(S⁷) over O(S⁴) with structure Hopf algebra O(SU(2)) and T²-grading.
pub fn instanton() -> Result<Arc<GaloisInstance>> {
    let delta = instanton_coaction()?;
    let p = delta.source().clone();
    let alpha = AlgebraElement::parse(&p, ALPHA)?;
    let beta = AlgebraElement::parse(&p, BETA)?;
    let x = AlgebraElement::parse(&p, X)?;
    let torus = torus_hopf(2)?;
    GaloisInstance::builder("instanton", delta)
        .provenance("instanton bundle S^7 -> S^4_theta: coinvariants alpha, beta, x; T^2 acting on the left")
        .coinvariant("alpha*", alpha.star()?)
        .coinvariant("alpha", alpha)
        .coinvariant("beta*", beta.star()?)
        .coinvariant("beta", beta)
        .coinvariant("x", x)
        .grading_host(&torus)
        .left_cocycle(cl_cocycle(&torus)?)
        .translation("w1", "z1* | z1 + z2* | z2 + z3* | z3 + z4* | z4")
        .translation("w2*", "z1* | z2* - z2* | z1* + z3* | z4* - z4* | z3*")
        .translation("w2", "-z2 | z1 + z1 | z2 - z4 | z3 + z3 | z4")
        .translation("w1*", "z2 | z2* + z1 | z1* + z4 | z4* + z3 | z3*")
        .seal()
}

fn unit_tensor_pair(a: &Arc<Presentation>, b: &Arc<Presentation>, x: Word, y: Word) -> TensorElement {
    let mut t = TensorElement::zero(vec![a.clone(), b.clone()]);
    t.add_term(vec![x, y], Scalar::one(a.ring()));
    t
}

/// A = H = 𝕂[ℤ_n] with the regular coaction, B = 𝕂.
pub fn finite_group_galois(n: u32) -> Result<Arc<GaloisInstance>> {
    let h = group_algebra(n)?;
    let p = h.presentation().clone();
    let (pa, pb) = (p.clone(), p.clone());
    let (pc, pd) = (p.clone(), p.clone());
    GaloisInstance::builder(format!("finite_group_galois({n})"), RightCoaction::regular(&h))
        .provenance("finite Hopf-Galois object: group algebra coacting on itself")
        .grading_host(&h)
        .right_cocycle(cyclic_table_cocycle(&h, 1)?)
        .left_cocycle(cyclic_table_cocycle(&h, 1)?)
        .section(Arc::new(move |w: &Word| Ok(unit_tensor_pair(&pa, &pa, Word::one(), w.clone()))))
        .cleaving(Cleaving {
            theta: Arc::new(move |w: &Word| Ok(unit_tensor_pair(&pb, &pb, Word::one(), w.clone()))),
            inverse: Arc::new(move |u: &Word, v: &Word| {
                AlgebraElement::normal_form(&pc, (*pd.reduce_word(&u.concat(v))?).clone())
            }),
        })
        .seal()
}

/// O(T²) coacting on itself, B = 𝕂; the γ_θ twist is the noncommutative torus.
pub fn torus_galois() -> Result<Arc<GaloisInstance>> {
    let h = torus_hopf(2)?;
    let p = h.presentation().clone();
    let (pa, pb) = (p.clone(), p.clone());
    let (pc, pd) = (p.clone(), p.clone());
    GaloisInstance::builder("torus_galois", RightCoaction::regular(&h))
        .provenance("O(T^2) coacting on itself, theta-twisted on either side")
        .grading_host(&h)
        .right_cocycle(cl_cocycle(&h)?)
        .left_cocycle(cl_cocycle(&h)?)
        .translation("t1", "t1* | t1")
        .translation("t1*", "t1 | t1*")
        .translation("t2", "t2* | t2")
        .translation("t2*", "t2 | t2*")
        .section(Arc::new(move |w: &Word| Ok(unit_tensor_pair(&pa, &pa, Word::one(), w.clone()))))
        .cleaving(Cleaving {
            theta: Arc::new(move |w: &Word| Ok(unit_tensor_pair(&pb, &pb, Word::one(), w.clone()))),
            inverse: Arc::new(move |u: &Word, v: &Word| {
                AlgebraElement::normal_form(&pc, (*pd.reduce_word(&u.concat(v))?).clone())
            }),
        })
        .seal()
}

/// H = Fun(ℤ_n×ℤ_m) coacting on itself, with the sign table and a corrupted copy.
pub fn finite_function_galois(n: u32, m: u32) -> Result<Arc<GaloisInstance>> {
    let h = finite_function_hopf(n, m)?;
    let mut b = GaloisInstance::builder(format!("finite_function_galois({n},{m})"), RightCoaction::regular(&h))
        .provenance("finite Hopf-Galois object: functions on a product of cyclic groups coacting on itself")
        .grading_host(&h);
    if n == m {
        b = b
            .right_cocycle(table_cocycle(&h)?)
            .right_cocycle(corrupted_table_cocycle(&h)?)
            .left_cocycle(table_cocycle(&h)?);
    }
    b.seal()
}

/// Trivial bundle A = B⊗H with B = 𝕂[ℤ_n] on b and H = 𝕂[ℤ_n] on g.
pub fn trivial_bundle(n: u32) -> Result<Arc<GaloisInstance>> {
    let h = group_algebra(n)?;
    let ring = ring_for_orders(&[n])?;
    let pw = |g: &str| vec![g; n as usize].join(" ");
    let a = PresentationBuilder::new(
        format!("K[Z{n}]#K[Z{n}]"),
        &ring,
        GradingGroup { rank: 0, torsion: vec![n as u64, n as u64] },
    )
    .generator("b", &[1, 0])
    .generator("g", &[0, 1])
    .commutative()
    .rule(&pw("b"), "1")
    .rule(&pw("g"), "1")
    .seal(2 * n as usize + 2)?;
    let delta = RightCoaction::from_text(&a, &h, &[("b", "b | 1"), ("g", "g | g")])?;
    let k = finite_function_hopf(n, n)?;
    let (bi, gi) = (a.generator_index("b").expect("b"), a.generator_index("g").expect("g"));
    let hg = h.presentation().generator_index("g").expect("g");
    let split = move |w: &Word| -> (Word, Word, usize) {
        let bs = Word(w.0.iter().copied().filter(|&l| l == bi).collect());
        let gs = Word(w.0.iter().copied().filter(|&l| l == gi).collect());
        let count = gs.len();
        (bs, gs, count)
    };
    let hp = h.presentation().clone();
    let (a1, a2, a3, hp1) = (a.clone(), a.clone(), a.clone(), hp.clone());
    GaloisInstance::builder(format!("trivial_bundle({n})"), delta)
        .provenance("trivial principal bundle: B tensor H with the coaction on the H factor")
        .coinvariant("b", AlgebraElement::generator(&a, "b")?)
        .grading_host(&k)
        .right_cocycle(cyclic_table_cocycle(&h, 1)?)
        .left_cocycle(table_cocycle(&k)?)
        .section(Arc::new(move |w: &Word| {
            let (bs, gs, _) = split(w);
            Ok(unit_tensor_pair(&a1, &a1, bs, gs))
        }))
        .cleaving(Cleaving {
            theta: Arc::new(move |w: &Word| {
                let (bs, _, count) = split(w);
                Ok(unit_tensor_pair(&a2, &hp1, bs, Word(vec![hg; count])))
            }),
            inverse: Arc::new(move |u: &Word, v: &Word| {
                let gs = Word(vec![gi; v.len()]);
                AlgebraElement::normal_form(&a3, (*a3.reduce_word(&u.concat(&gs))?).clone())
            }),
        })
        .seal()
}

/// Objects the registry can build.
#[derive(Clone, Debug)]
pub enum Built {
    Instance(Arc<GaloisInstance>),
    Hopf(Arc<HopfAlgebra>),
    Algebra(Arc<Presentation>),
    Cocycle(TwoCocycle),
}

impl Built {
    pub fn kind(&self) -> &'static str {
        match self {
            Built::Instance(_) => "galois instance",
            Built::Hopf(_) => "hopf algebra",
            Built::Algebra(_) => "algebra",
            Built::Cocycle(_) => "2-cocycle",
        }
    }

    pub fn into_instance(self) -> Result<Arc<GaloisInstance>> {
        match self {
            Built::Instance(i) => Ok(i),
            other => Err(Error::BadParams(format!("expected a galois instance, got a {}", other.kind()))),
        }
    }
}

/// Registry entry: name, parameters with defaults, provenance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceDescriptor {
    pub name: &'static str,
    pub kind: &'static str,
    pub parameters: Vec<(&'static str, i64)>,
    pub provenance: &'static str,
}

/// Name, kind, parameters with defaults, provenance.
type Entry = (&'static str, &'static str, &'static [(&'static str, i64)], &'static str);

const REGISTRY: &[Entry] = &[
    ("cl_cocycle", "2-cocycle", &[], "theta-deformation bicharacter on O(T^2), theta carried by q"),
    ("finite_function_galois", "galois instance", &[("n", 2), ("m", 2)], "Fun(Z_n x Z_m) coacting on itself, sign table cocycles"),
    ("finite_function_hopf", "hopf algebra", &[("n", 2), ("m", 2)], "functions on Z_n x Z_m in the character basis"),
    ("finite_group_galois", "galois instance", &[("n", 2)], "K[Z_n] coacting on itself, B = K"),
    ("instanton", "galois instance", &[], "instanton bundle O(S^4) in O(S^7) with O(SU(2)) coaction and T^2 grading"),
    ("s7_algebra", "algebra", &[], "O(S^7) with the sphere relation, T^2-graded"),
    ("su2_hopf", "hopf algebra", &[], "O(SU(2)) with Delta(T) = T (x) T and S(T) = T^dagger"),
    ("table_cocycle", "2-cocycle", &[("n", 2)], "table cocycle on Fun(Z_n x Z_n) from a bicharacter"),
    ("torus_galois", "galois instance", &[], "O(T^2) coacting on itself, B = K, gamma_theta on both sides"),
    ("torus_hopf", "hopf algebra", &[("r", 2)], "O(T^r) with grouplike unitary generators"),
    ("trivial_bundle", "galois instance", &[("n", 2)], "trivial bundle K[Z_n] (x) K[Z_n] with identity cleaving"),
];

/// Registry listing sorted by name.
pub fn list() -> Vec<InstanceDescriptor> {
    let mut out: Vec<InstanceDescriptor> = REGISTRY
        .iter()
        .map(|(name, kind, params, prov)| InstanceDescriptor {
            name,
            kind,
            parameters: params.to_vec(),
            provenance: prov,
        })
        .collect();
    out.sort_by_key(|d| d.name);
    out
}

fn param(d: &InstanceDescriptor, given: &BTreeMap<String, i64>, key: &str) -> Result<u32> {
    let default = d.parameters.iter().find(|(k, _)| *k == key).map(|(_, v)| *v);
    let v = given.get(key).copied().or(default).expect("declared parameter");
    u32::try_from(v).map_err(|_| Error::BadParams(format!("{key} = {v} is out of range")))
}

/// Builds a registered object; unknown parameter names are rejected.
pub fn build(name: &str, params: &BTreeMap<String, i64>) -> Result<Built> {
    let d = list()
        .into_iter()
        .find(|d| d.name == name)
        .ok_or_else(|| Error::UnknownInstance(name.to_string()))?;
    if let Some(k) = params.keys().find(|k| !d.parameters.iter().any(|(p, _)| p == k)) {
        return Err(Error::BadParams(format!("`{name}` takes no parameter `{k}`")));
    }
    let p = |k: &str| param(&d, params, k);
    Ok(match name {
        "cl_cocycle" => Built::Cocycle(cl_cocycle(&torus_hopf(2)?)?),
        "finite_function_galois" => Built::Instance(finite_function_galois(p("n")?, p("m")?)?),
        "finite_function_hopf" => Built::Hopf(finite_function_hopf(p("n")?, p("m")?)?),
        "finite_group_galois" => Built::Instance(finite_group_galois(p("n")?)?),
        "instanton" => Built::Instance(instanton()?),
        "s7_algebra" => Built::Algebra(s7_algebra()?),
        "su2_hopf" => Built::Hopf(su2_hopf()?),
        "table_cocycle" => {
            let n = p("n")?;
            Built::Cocycle(table_cocycle(&finite_function_hopf(n, n)?)?)
        }
        "torus_galois" => Built::Instance(torus_galois()?),
        "torus_hopf" => Built::Hopf(torus_hopf(p("r")? as usize)?),
        "trivial_bundle" => Built::Instance(trivial_bundle(p("n")?)?),
        _ => unreachable!("registry and builder agree"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::check_hopf_algebra;

    #[test]
    fn torus_rank_two_has_four_generators() {
        let t = torus_hopf(2).unwrap();
        assert_eq!(t.presentation().generators().len(), 4);
        assert!(check_hopf_algebra(&t, 3).passed());
    }

    #[test]
    fn su2_and_s7_seal() {
        let h = su2_hopf().unwrap();
        assert_eq!(h.presentation().monomial_basis(2).unwrap().len(), 9);
        let s7 = s7_algebra().unwrap();
        assert_eq!(s7.generators().len(), 8);
    }

    #[test]
    fn finite_hosts_have_expected_dimension() {
        assert_eq!(group_algebra(3).unwrap().presentation().finite_basis().unwrap().len(), 3);
        let f = finite_function_hopf(2, 2).unwrap();
        assert_eq!(f.presentation().finite_basis().unwrap().len(), 4);
        let e = f.counit(&AlgebraElement::parse(f.presentation(), "a b").unwrap());
        assert!(e.unwrap().is_one());
    }
}
