use std::collections::BTreeMap;

use hopf_twist::catalog::{self, Built};
use hopf_twist::suites::{run_suites, Suite, SuiteConfig, Target};

fn instances() -> Vec<(String, BTreeMap<String, i64>)> {
    let mut out = Vec::new();
    for d in catalog::list() {
        if d.kind != "galois instance" {
            continue;
        }
        out.push((d.name.to_string(), BTreeMap::new()));
    }
    for n in [3, 4] {
        out.push(("finite_group_galois".into(), BTreeMap::from([("n".to_string(), n)])));
    }
    out.push(("trivial_bundle".into(), BTreeMap::from([("n".to_string(), 3)])));
    out
}

#[test]
fn every_catalog_instance_passes_every_suite() {
    let cfg = SuiteConfig { max_degree: 2, samples: 60, seed: 11 };
    for (name, params) in instances() {
        let inst = match catalog::build(&name, &params).unwrap() {
            Built::Instance(i) => i,
            _ => unreachable!(),
        };
        let gammas: Vec<Option<String>> = std::iter::once(None)
            .chain(inst.right_cocycles().keys().filter(|k| !k.starts_with("corrupted")).map(|k| Some(k.clone())))
            .collect();
        let sigmas: Vec<Option<String>> =
            std::iter::once(None).chain(inst.left_cocycles().keys().map(|k| Some(k.clone()))).collect();
        for g in &gammas {
            for s in &sigmas {
                let t0 = std::time::Instant::now();
                let t = Target::named(&inst, g.as_deref(), s.as_deref()).unwrap();
                for (suite, reports) in run_suites(&t, &Suite::ALL, &cfg) {
                    for r in reports {
                        assert!(r.passed(), "{name} {params:?} γ={g:?} σ={s:?} {suite}: {r}");
                    }
                }
                println!("{name} {params:?} γ={g:?} σ={s:?}: {:?}", t0.elapsed());
            }
        }
    }
}
