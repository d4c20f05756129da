//! JSON instance files, format `hopf-twist-instance/1`.
//!
//! ```text
//! {
//!   "format": "hopf-twist-instance/1",
//!   "name": "...", "provenance": "...",
//!   "ring": { "order": 4, "params": ["q"] },
//!   "hopf": { "name", "presentation", "generators": [{ "name", "coproduct",
//!             "counit", "antipode", "antipode_inverse"? }], "axiom_degree" },
//!   "algebra": presentation?          // absent: H coacting on itself
//!   "coaction": [{ "generator", "image" }],
//!   "coinvariants": [{ "name", "element" }],
//!   "grading_host": hopf?,
//!   "translation": [{ "generator", "image" }],
//!   "right_cocycles" / "left_cocycles": [{ "name", "kind": "bicharacter",
//!             "param_forms", "root_form" } | { "name", "kind": "table",
//!             "basis", "values", "unchecked"? }]
//! }
//! presentation = { "name", "grading": { "rank", "torsion" },
//!   "generators": [{ "name", "degree", "star"? }],
//!   "commutation": [{ "left", "right", "factor" }],   // left right = factor · right left
//!   "rules": [{ "lead", "replacement": [[coefficient, word]] }],
//!   "confluence_bound" }
//! ```
//! Scalars are written in the scalar text syntax, words as generator names
//! separated by spaces, elements and tensors in the element text syntax.
//! Section and cleaving witnesses are procedures and are not stored.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cocycles::{Bicharacter, TwoCocycle, DEFAULT_COCYCLE_DEGREE};
use crate::error::{Error, Result};
use crate::galois::GaloisInstance;
use crate::hopf::{HopfAlgebra, HopfStructure, RightCoaction, DEFAULT_AXIOM_DEGREE};
use crate::presentations::{AlgebraElement, GradingGroup, Presentation, PresentationBuilder, Rule};
use crate::scalars::ScalarRing;
use crate::Scalar;

pub const FORMAT: &str = "hopf-twist-instance/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub format: String,
    pub name: String,
    #[serde(default)]
    pub provenance: String,
    pub ring: RingBlock,
    pub hopf: HopfBlock,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<PresentationBlock>,
    #[serde(default)]
    pub coaction: Vec<ImageEntry>,
    #[serde(default)]
    pub coinvariants: Vec<NamedElement>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grading_host: Option<HopfBlock>,
    #[serde(default)]
    pub translation: Vec<ImageEntry>,
    #[serde(default)]
    pub right_cocycles: Vec<CocycleBlock>,
    #[serde(default)]
    pub left_cocycles: Vec<CocycleBlock>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingBlock {
    pub order: u32,
    pub params: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorBlock {
    pub name: String,
    pub degree: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub star: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommutationEntry {
    pub left: String,
    pub right: String,
    pub factor: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleBlock {
    pub lead: String,
    pub replacement: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationBlock {
    pub name: String,
    pub grading: GradingGroup,
    pub generators: Vec<GeneratorBlock>,
    #[serde(default)]
    pub commutation: Vec<CommutationEntry>,
    #[serde(default)]
    pub rules: Vec<RuleBlock>,
    pub confluence_bound: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HopfGeneratorBlock {
    pub name: String,
    pub coproduct: String,
    pub counit: String,
    pub antipode: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub antipode_inverse: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HopfBlock {
    pub name: String,
    pub presentation: PresentationBlock,
    pub generators: Vec<HopfGeneratorBlock>,
    #[serde(default = "default_axiom_degree")]
    pub axiom_degree: usize,
}

fn default_axiom_degree() -> usize {
    DEFAULT_AXIOM_DEGREE
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImageEntry {
    pub generator: String,
    pub image: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedElement {
    pub name: String,
    pub element: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleBlock {
    pub name: String,
    #[serde(flatten)]
    pub data: CocycleData,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CocycleData {
    Bicharacter {
        param_forms: Vec<Vec<Vec<i64>>>,
        root_form: Vec<Vec<i64>>,
    },
    Table {
        basis: Vec<String>,
        values: Vec<Vec<String>>,
        #[serde(default, skip_serializing_if = "std::ops::Not::not")]
        unchecked: bool,
    },
}

fn export_presentation(p: &Presentation) -> PresentationBlock {
    let gens = p.generators();
    PresentationBlock {
        name: p.name().to_string(),
        grading: p.grading().clone(),
        generators: gens
            .iter()
            .map(|g| GeneratorBlock {
                name: g.name.clone(),
                degree: g.degree.clone(),
                star: g.star.map(|s| gens[s].name.clone()),
            })
            .collect(),
        commutation: p
            .commutation()
            .iter()
            .map(|(&(i, j), c)| CommutationEntry {
                left: gens[i].name.clone(),
                right: gens[j].name.clone(),
                factor: c.to_string(),
            })
            .collect(),
        rules: p
            .rules()
            .iter()
            .map(|r| RuleBlock {
                lead: p.format_word(&r.lead),
                replacement: r
                    .replacement
                    .iter()
                    .map(|(w, c)| (c.to_string(), p.format_word(w)))
                    .collect(),
            })
            .collect(),
        confluence_bound: p.confluence_bound(),
    }
}

fn import_presentation(ring: &Arc<ScalarRing>, b: &PresentationBlock) -> Result<Arc<Presentation>> {
    let mut builder = PresentationBuilder::new(&b.name, ring, b.grading.clone());
    for g in &b.generators {
        builder = builder.generator(&g.name, &g.degree);
    }
    for (i, g) in b.generators.iter().enumerate() {
        if let Some(s) = &g.star {
            let j = b.generators.iter().position(|h| &h.name == s);
            if j.is_none_or(|j| j >= i) {
                builder = builder.star_pair(&g.name, s);
            }
        }
    }
    for c in &b.commutation {
        builder = builder.commute(&c.left, &c.right, Scalar::parse(ring, &c.factor)?);
    }
    let probe = {
        let mut pb = PresentationBuilder::new(&b.name, ring, b.grading.clone());
        for g in &b.generators {
            pb = pb.generator(&g.name, &g.degree);
        }
        pb.build()?
    };
    for r in &b.rules {
        let replacement = r
            .replacement
            .iter()
            .map(|(c, w)| Ok((probe.parse_word(w)?, Scalar::parse(ring, c)?)))
            .collect::<Result<Vec<_>>>()?;
        builder = builder.rule_terms(Rule {
            lead: probe.parse_word(&r.lead)?,
            replacement,
        });
    }
    builder.seal(b.confluence_bound)
}

fn export_hopf(h: &HopfAlgebra) -> HopfBlock {
    let p = h.presentation();
    HopfBlock {
        name: h.name().to_string(),
        presentation: export_presentation(p),
        generators: p
            .generators()
            .iter()
            .enumerate()
            .map(|(i, g)| HopfGeneratorBlock {
                name: g.name.clone(),
                coproduct: h.generator_coproduct(i).to_string(),
                counit: h.generator_counit(i).to_string(),
                antipode: h.generator_antipode(i).to_string(),
                antipode_inverse: h.generator_antipode_inverse(i).map(|x| x.to_string()),
            })
            .collect(),
        axiom_degree: DEFAULT_AXIOM_DEGREE,
    }
}

fn import_hopf(ring: &Arc<ScalarRing>, b: &HopfBlock) -> Result<Arc<HopfAlgebra>> {
    let p = import_presentation(ring, &b.presentation)?;
    let rows: Vec<(&str, &str, &str, &str)> = b
        .generators
        .iter()
        .map(|g| (g.name.as_str(), g.coproduct.as_str(), g.counit.as_str(), g.antipode.as_str()))
        .collect();
    let mut h = HopfAlgebra::from_text(&b.name, &p, &rows)?;
    if !b.generators.is_empty() && b.generators.iter().all(|g| g.antipode_inverse.is_some()) {
        let mut inv = vec![AlgebraElement::zero(&p); p.generators().len()];
        for g in &b.generators {
            let i = p
                .generator_index(&g.name)
                .ok_or_else(|| Error::Parse(format!("unknown generator `{}`", g.name)))?;
            inv[i] = AlgebraElement::parse(&p, g.antipode_inverse.as_deref().expect("checked"))?;
        }
        h = h.with_antipode_inverse(inv)?;
    }
    h.seal(b.axiom_degree)
}

fn export_cocycle(g: &TwoCocycle) -> CocycleBlock {
    let data = match (g.bicharacter_form(), g.table_values()) {
        (Some(f), _) => CocycleData::Bicharacter {
            param_forms: f.param_forms().to_vec(),
            root_form: f.root_form().to_vec(),
        },
        (None, Some((basis, values))) => {
            let p = g.host().presentation();
            CocycleData::Table {
                basis: basis.iter().map(|w| p.format_word(w)).collect(),
                values: values
                    .iter()
                    .map(|row| row.iter().map(|v| v.to_string()).collect())
                    .collect(),
                unchecked: TwoCocycle::table(g.name(), g.host(), values.to_vec()).is_err(),
            }
        }
        (None, None) => unreachable!("cocycles are bicharacters or tables"),
    };
    CocycleBlock {
        name: g.name().to_string(),
        data,
    }
}

fn import_cocycle(host: &Arc<HopfAlgebra>, b: &CocycleBlock) -> Result<TwoCocycle> {
    let p = host.presentation();
    match &b.data {
        CocycleData::Bicharacter { param_forms, root_form } => {
            let form = Bicharacter::bilinear(p.ring(), p.grading(), param_forms.clone(), root_form.clone())?;
            TwoCocycle::bicharacter(&b.name, host, form, DEFAULT_COCYCLE_DEGREE)
        }
        CocycleData::Table { basis, values, unchecked } => {
            let expected: Vec<String> = p.finite_basis()?.iter().map(|w| p.format_word(w)).collect();
            if *basis != expected {
                return Err(Error::Parse(format!(
                    "table `{}` lists basis {basis:?}, `{}` has {expected:?}",
                    b.name,
                    host.name()
                )));
            }
            let values = values
                .iter()
                .map(|row| row.iter().map(|v| Scalar::parse(p.ring(), v)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            if *unchecked {
                TwoCocycle::table_unchecked(&b.name, host, values)
            } else {
                TwoCocycle::table(&b.name, host, values)
            }
        }
    }
}

fn is_default_trivial(g: &TwoCocycle) -> bool {
    g.name() == "trivial" && g.is_trivial()
}

/// Serializable description of a sealed instance.
pub fn export(inst: &GaloisInstance) -> InstanceFile {
    let a = inst.presentation();
    let h = inst.hopf();
    let regular = Arc::ptr_eq(a, h.presentation()) && {
        let d = RightCoaction::regular(h);
        (0..a.generators().len()).all(|i| d.generator_image(i) == inst.algebra().coaction().generator_image(i))
    };
    let delta = inst.algebra().coaction();
    let ring = a.ring();
    InstanceFile {
        format: FORMAT.to_string(),
        name: inst.name().to_string(),
        provenance: inst.provenance().to_string(),
        ring: RingBlock {
            order: ring.order(),
            params: ring.params().to_vec(),
        },
        hopf: export_hopf(h),
        algebra: (!regular).then(|| export_presentation(a)),
        coaction: if regular {
            Vec::new()
        } else {
            a.generators()
                .iter()
                .enumerate()
                .map(|(i, g)| ImageEntry {
                    generator: g.name.clone(),
                    image: delta.generator_image(i).to_string(),
                })
                .collect()
        },
        coinvariants: inst
            .coinvariant_generators()
            .iter()
            .map(|(n, x)| NamedElement {
                name: n.clone(),
                element: x.to_string(),
            })
            .collect(),
        grading_host: inst.grading_host().map(|k| export_hopf(k)),
        translation: inst
            .translation_witness()
            .unwrap_or(&[])
            .iter()
            .map(|(i, t)| ImageEntry {
                generator: h.presentation().generators()[*i].name.clone(),
                image: t.to_string(),
            })
            .collect(),
        right_cocycles: inst
            .right_cocycles()
            .values()
            .filter(|g| !is_default_trivial(g))
            .map(export_cocycle)
            .collect(),
        left_cocycles: inst
            .left_cocycles()
            .values()
            .filter(|g| !is_default_trivial(g))
            .map(export_cocycle)
            .collect(),
    }
}

/// Rebuilds and seals the instance described by `f`.
pub fn import(f: &InstanceFile) -> Result<Arc<GaloisInstance>> {
    if f.format != FORMAT {
        return Err(Error::Parse(format!("unsupported format `{}`, expected `{FORMAT}`", f.format)));
    }
    let ring = ScalarRing::new(f.ring.order, f.ring.params.iter().cloned())?;
    let h = import_hopf(&ring, &f.hopf)?;
    let delta = match &f.algebra {
        None => RightCoaction::regular(&h),
        Some(pb) => {
            let a = import_presentation(&ring, pb)?;
            let data: Vec<(&str, &str)> = f
                .coaction
                .iter()
                .map(|e| (e.generator.as_str(), e.image.as_str()))
                .collect();
            RightCoaction::from_text(&a, &h, &data)?
        }
    };
    let a = delta.source().clone();
    let mut b = GaloisInstance::builder(&f.name, delta).provenance(&f.provenance);
    for c in &f.coinvariants {
        b = b.coinvariant(&c.name, AlgebraElement::parse(&a, &c.element)?);
    }
    if let Some(kb) = &f.grading_host {
        let k = if kb == &f.hopf { h.clone() } else { import_hopf(&ring, kb)? };
        b = b.grading_host(&k);
        for c in &f.left_cocycles {
            b = b.left_cocycle(import_cocycle(&k, c)?);
        }
    } else if !f.left_cocycles.is_empty() {
        return Err(Error::Parse("left cocycles need a grading_host".into()));
    }
    for c in &f.right_cocycles {
        b = b.right_cocycle(import_cocycle(&h, c)?);
    }
    for t in &f.translation {
        b = b.translation(&t.generator, &t.image);
    }
    b.seal()
}

pub fn to_json(inst: &GaloisInstance) -> Result<String> {
    Ok(serde_json::to_string_pretty(&export(inst))?)
}

pub fn from_json(s: &str) -> Result<Arc<GaloisInstance>> {
    import(&serde_json::from_str(s)?)
}

pub fn load(path: &Path) -> Result<Arc<GaloisInstance>> {
    from_json(&std::fs::read_to_string(path)?)
}

pub fn save(inst: &GaloisInstance, path: &Path) -> Result<()> {
    std::fs::write(path, to_json(inst)? + "\n")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn round_trip_is_exact() {
        for inst in [
            catalog::finite_function_galois(2, 2).unwrap(),
            catalog::finite_group_galois(3).unwrap(),
            catalog::trivial_bundle(2).unwrap(),
            catalog::instanton().unwrap(),
        ] {
            let file = export(&inst);
            let back = import(&file).unwrap();
            assert_eq!(export(&back), file, "{}", inst.name());
            assert!(**back.presentation() == **inst.presentation());
            let json = to_json(&inst).unwrap();
            assert_eq!(to_json(&from_json(&json).unwrap()).unwrap(), json);
        }
    }

    #[test]
    fn corrupted_table_survives_as_unchecked() {
        let inst = catalog::finite_function_galois(2, 2).unwrap();
        let file = export(&inst);
        let bad = file.right_cocycles.iter().find(|c| c.name == "corrupted_table").unwrap();
        assert!(matches!(bad.data, CocycleData::Table { unchecked: true, .. }));
    }

    #[test]
    fn wrong_format_is_rejected() {
        let mut file = export(&catalog::finite_group_galois(2).unwrap());
        file.format = "other/1".into();
        assert!(matches!(import(&file), Err(Error::Parse(_))));
    }
}
