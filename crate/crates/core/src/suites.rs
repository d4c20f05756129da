//! Named verification suites over an instance and a choice of cocycles.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cocycles::{
    check_cocycle_condition, check_convolution_inverse, check_identity_abc, check_u_inverse, check_unitality,
    TwoCocycle,
};
use crate::error::{Error, Result};
use crate::galois::{
    bijectivity_data, check_chi_colinear, check_chi_grading, check_middle_well_defined, check_q,
    check_truncated_injectivity, coinvariant_space, find_coinvariants, verify_cleft, verify_coinvariant,
    verify_diagram_gamma, verify_diagram_sigma, verify_section, verify_translation_map, GaloisInstance,
};
use crate::hopf::{check_bicomodule, check_coaction_axioms, check_hopf_algebra, check_hopf_axioms, HopfStructure};
use crate::presentations::{AlgebraElement, Presentation, Word};
use crate::report::Report;
use crate::sampling;
use crate::twisting::{check_associativity, twist_hopf, TwistedComoduleAlgebra};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Axioms,
    Cocycle,
    Twisted,
    Untwist,
    Q,
    Diagrams,
    Bijectivity,
    Translation,
    Coinvariants,
    Section,
    Cleft,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::Axioms,
        Suite::Cocycle,
        Suite::Twisted,
        Suite::Untwist,
        Suite::Q,
        Suite::Diagrams,
        Suite::Bijectivity,
        Suite::Translation,
        Suite::Coinvariants,
        Suite::Section,
        Suite::Cleft,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Axioms => "axioms",
            Suite::Cocycle => "cocycle",
            Suite::Twisted => "twisted",
            Suite::Untwist => "untwist",
            Suite::Q => "q",
            Suite::Diagrams => "diagrams",
            Suite::Bijectivity => "bijectivity",
            Suite::Translation => "translation",
            Suite::Coinvariants => "coinvariants",
            Suite::Section => "section",
            Suite::Cleft => "cleft",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::BadParams(format!("unknown suite `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub max_degree: usize,
    pub samples: usize,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            max_degree: 3,
            samples: 200,
            seed: sampling::DEFAULT_SEED,
        }
    }
}

/// Instance plus the selected deformation.
pub struct Target<'a> {
    pub inst: &'a GaloisInstance,
    pub gamma: Option<TwoCocycle>,
    pub sigma: Option<TwoCocycle>,
}

impl<'a> Target<'a> {
    pub fn named(inst: &'a GaloisInstance, gamma: Option<&str>, sigma: Option<&str>) -> Result<Self> {
        Ok(Target {
            inst,
            gamma: gamma.map(|g| inst.right_cocycle(g).cloned()).transpose()?,
            sigma: sigma.map(|s| inst.left_cocycle(s).cloned()).transpose()?,
        })
    }

    pub fn deformed(&self) -> Result<Arc<TwistedComoduleAlgebra>> {
        self.inst.deform(self.gamma.as_ref(), self.sigma.as_ref())
    }
}

fn failed(suite: &str, e: Error) -> Report {
    let mut r = Report::new(suite.to_string());
    r.fail("setup", "evaluation", e);
    r
}

/// Degree reaching every basis word of a finite presentation, else `d`.
fn covering_degree(p: &Presentation, d: usize) -> usize {
    p.finite_basis()
        .ok()
        .and_then(|b| b.iter().map(Word::len).max())
        .unwrap_or(d)
}

fn words(p: &Presentation, d: usize) -> Result<Vec<Word>> {
    p.finite_basis().or_else(|_| p.basis_up_to(d))
}

fn pair_samples(p: &Presentation, d: usize, cfg: &SuiteConfig, salt: u64) -> Result<Vec<[Word; 2]>> {
    let basis = words(p, d)?;
    Ok(sampling::pairs(sampling::tuples(&basis, 2, cfg.samples, cfg.seed ^ salt)))
}

fn triple_samples(p: &Presentation, d: usize, cfg: &SuiteConfig, salt: u64) -> Result<Vec<[Word; 3]>> {
    let basis = words(p, d)?;
    Ok(sampling::triples(sampling::tuples(&basis, 3, cfg.samples, cfg.seed ^ salt)))
}

fn cocycle_reports(g: &TwoCocycle, d: usize, cfg: &SuiteConfig) -> Vec<Report> {
    let d = covering_degree(g.host().presentation(), d);
    vec![
        check_unitality(g, d),
        check_cocycle_condition(g, d),
        check_convolution_inverse(g, d),
        check_u_inverse(g, d),
        check_identity_abc(g, d, Some((cfg.samples, cfg.seed))),
    ]
}

/// Runs one suite; suites that do not apply return no reports.
pub fn run_suite(t: &Target<'_>, suite: Suite, cfg: &SuiteConfig) -> Vec<Report> {
    match run_suite_inner(t, suite, cfg) {
        Ok(r) => r,
        Err(e) => vec![failed(suite.name(), e)],
    }
}

fn run_suite_inner(t: &Target<'_>, suite: Suite, cfg: &SuiteConfig) -> Result<Vec<Report>> {
    let inst = t.inst;
    let a = inst.presentation().clone();
    let h = inst.hopf().clone();
    let d = cfg.max_degree;
    let mut out = Vec::new();
    match suite {
        Suite::Axioms => {
            out.push(check_hopf_algebra(&h, covering_degree(h.presentation(), d.max(1))));
            out.push(check_coaction_axioms(inst.algebra().coaction(), covering_degree(&a, d)));
            if let Some(k) = inst.grading_host() {
                if !Arc::ptr_eq(k, &h) {
                    out.push(check_hopf_algebra(k, covering_degree(k.presentation(), d.max(1))));
                }
                out.push(check_bicomodule(inst.algebra().coaction(), covering_degree(&a, d)));
            }
        }
        Suite::Cocycle => {
            for g in t.gamma.iter().chain(t.sigma.iter()) {
                out.extend(cocycle_reports(g, d, cfg));
            }
        }
        Suite::Twisted => {
            if let Some(g) = &t.gamma {
                let hg = twist_hopf(h.clone(), g)?;
                let hp = h.presentation();
                out.push(check_hopf_axioms(&*hg, covering_degree(hp, d)));
                let triples = triple_samples(hp, covering_degree(hp, d), cfg, 1)?;
                out.push(check_associativity(&format!("associativity[{}]", hg.label()), hp, &triples, |x, y| {
                    hg.multiply(x, y)
                }));
            }
            let alg = t.deformed()?;
            if alg.parent().is_some() {
                let triples = triple_samples(&a, d, cfg, 2)?;
                out.push(check_associativity(&format!("associativity[{}]", alg.name()), &a, &triples, |x, y| {
                    alg.multiply(x, y)
                }));
            }
        }
        Suite::Untwist => {
            let alg = t.deformed()?;
            if alg.parent().is_some() {
                let mut back = alg.clone();
                for layer in alg.layers().iter().rev() {
                    back = match layer {
                        crate::twisting::Layer::Right(g) => TwistedComoduleAlgebra::twist_right(&back, &g.inverse()?)?,
                        crate::twisting::Layer::Left(s) => TwistedComoduleAlgebra::twist_left(&back, &s.inverse()?)?,
                    };
                }
                let mut r = Report::new(format!("untwisting {}", alg.name()));
                for [x, y] in pair_samples(&a, d, cfg, 3)? {
                    let want = inst.algebra().multiply_words(&x, &y)?;
                    let got = back.multiply_words(&x, &y)?;
                    r.compare(&want, &got, || format!("{} · {}", a.format_word(&x), a.format_word(&y)));
                }
                out.push(r);
            }
        }
        Suite::Q => {
            if let Some(g) = &t.gamma {
                let hd: Arc<dyn HopfStructure> = h.clone();
                out.push(check_q(&hd, g, &words(h.presentation(), d.max(1))?));
            }
        }
        Suite::Diagrams => {
            let mut cur = inst.algebra().clone();
            let pairs = pair_samples(&a, d, cfg, 4)?;
            if let Some(g) = &t.gamma {
                cur = TwistedComoduleAlgebra::twist_right(&cur, g)?;
                out.push(verify_diagram_gamma(&cur, &pairs)?);
            }
            if let Some(s) = &t.sigma {
                cur = TwistedComoduleAlgebra::twist_left(&cur, s)?;
                out.push(verify_diagram_sigma(&cur, &pairs)?);
            }
            out.push(check_middle_well_defined(inst, &cur, &pairs));
            out.push(check_chi_colinear(&cur, &pairs));
            if inst.grading_host().is_some() {
                out.push(check_chi_grading(&cur, &pairs));
            }
        }
        Suite::Bijectivity => {
            let alg = t.deformed()?;
            if inst.is_finite() {
                let before = bijectivity_data(inst.algebra())?;
                let mut r = before.report(inst.algebra().name());
                if alg.parent().is_some() {
                    let after = bijectivity_data(&alg)?;
                    r.absorb(after.report(alg.name()));
                    r.compare(&before.bijective(), &after.bijective(), || "verdict before and after twisting".into());
                }
                out.push(r);
            } else {
                let bound = d.clamp(1, 3);
                out.push(check_truncated_injectivity(&alg, bound)?);
            }
        }
        Suite::Translation => {
            if inst.has_translation() {
                out.push(verify_translation_map(inst, inst.algebra(), 1)?);
                let alg = t.deformed()?;
                if alg.parent().is_some() {
                    out.push(verify_translation_map(inst, &alg, 1)?);
                }
            }
        }
        Suite::Coinvariants => {
            let mut r = Report::new(format!("coinvariants of {}", inst.name()));
            for (name, b) in inst.coinvariant_generators() {
                r.compare(&true, &verify_coinvariant(inst.algebra(), b)?, || format!("δ({name}) = {name} ⊗ 1"));
            }
            let one = AlgebraElement::one(&a);
            r.compare(&true, &verify_coinvariant(inst.algebra(), &one)?, || "δ(1) = 1 ⊗ 1".into());
            let space = match a.finite_basis() {
                Ok(w) => coinvariant_space(inst.algebra(), &w)?,
                Err(_) => find_coinvariants(inst.algebra(), d)?,
            };
            r.note(format!("dimension of the coinvariants found: {}", space.len()));
            out.push(r);
        }
        Suite::Section => {
            if inst.section().is_some() {
                let alg = t.deformed()?;
                out.push(verify_section(inst, &alg, d)?);
            }
        }
        Suite::Cleft => {
            if inst.cleaving().is_some() {
                out.push(verify_cleft(inst, d)?);
            }
        }
    }
    Ok(out)
}

/// Every suite in `suites`, in order.
pub fn run_suites(t: &Target<'_>, suites: &[Suite], cfg: &SuiteConfig) -> Vec<(Suite, Vec<Report>)> {
    suites.iter().map(|&s| (s, run_suite(t, s, cfg))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn every_suite_passes_on_the_twisted_group_instance() {
        let inst = catalog::finite_group_galois(2).unwrap();
        let t = Target::named(&inst, Some("cyclic_table_1"), Some("cyclic_table_1")).unwrap();
        for (s, reports) in run_suites(&t, &Suite::ALL, &SuiteConfig::default()) {
            for r in reports {
                assert!(r.passed(), "{s}: {r}");
            }
        }
    }

    #[test]
    fn corrupted_cocycle_fails_with_a_triple() {
        let inst = catalog::finite_function_galois(2, 2).unwrap();
        let t = Target::named(&inst, Some("corrupted_table"), None).unwrap();
        let reports = run_suite(&t, Suite::Cocycle, &SuiteConfig::default());
        let cond = reports.iter().find(|r| r.suite.starts_with("cocycle-condition")).unwrap();
        assert!(!cond.passed());
        assert!(cond.witnesses[0].case.contains("triple ("));
    }

    #[test]
    fn suite_names_parse() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }
}
