#![allow(dead_code)]

//! Helpers shared by the integration suites: data loading and the
//! published-system regression check.

use std::collections::BTreeMap;
use std::path::PathBuf;

use help_core::lp::{self, PartialAugmentation, PowerProfile};
use help_core::pipeline::Pipeline;
use help_core::tables::{self, TableBundle, TableKind};
use help_core::Int;

pub fn data_dir(group: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(group)
}

pub fn load_group(group: &str) -> TableBundle {
    let (bundle, warnings) = tables::load_bundle(&data_dir(group)).expect("bundle loads");
    assert!(warnings.is_empty(), "unexpected warnings: {warnings:?}");
    bundle
}

pub fn fixture_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/paper_systems.json")
}

fn table_key(s: &str) -> TableKind {
    if s == "*" {
        TableKind::Ordinary
    } else {
        TableKind::Brauer(s.parse().expect("prime table key"))
    }
}

/// Check every published affine form against the engine, coefficient for
/// coefficient, over every coherent profile of its order.  Returns the
/// number of forms checked.
pub fn check_paper_systems(pipeline: &Pipeline<'_>) -> usize {
    let bytes = std::fs::read(fixture_path()).expect("fixture present");
    let doc: serde_json::Value = serde_json::from_slice(&bytes).expect("fixture parses");
    let bundle = pipeline.bundle;

    // profiles for the case-split constants, in fixture order
    let case_profiles: BTreeMap<u64, Vec<PowerProfile>> = doc["case_profiles"]
        .as_object()
        .expect("case_profiles")
        .iter()
        .map(|(k, cases)| {
            let k: u64 = k.parse().unwrap();
            let profiles = cases
                .as_array()
                .unwrap()
                .iter()
                .map(|case| {
                    let mut assignments = BTreeMap::new();
                    for (m, tuple) in case.as_object().unwrap() {
                        let m: u64 = m.parse().unwrap();
                        let entries: BTreeMap<String, Int> = tuple
                            .as_object()
                            .unwrap()
                            .iter()
                            .map(|(c, v)| (c.clone(), Int::from(v.as_i64().unwrap())))
                            .collect();
                        assignments.insert(m, PartialAugmentation::new(entries).unwrap());
                    }
                    PowerProfile::new(k, assignments).unwrap()
                })
                .collect();
            (k, profiles)
        })
        .collect();

    let mut checked = 0;
    for form_spec in doc["forms"].as_array().expect("forms array") {
        let k = form_spec["order"].as_u64().unwrap();
        let table = table_key(form_spec["table"].as_str().unwrap());
        let chi = form_spec["chi"].as_str().unwrap();
        let l = form_spec["l"].as_u64().unwrap();
        let want_coeffs: BTreeMap<String, Int> = form_spec["coeffs"]
            .as_object()
            .unwrap()
            .iter()
            .map(|(c, v)| (c.clone(), Int::from(v.as_i64().unwrap())))
            .collect();
        let want_constants: Vec<Int> = form_spec["constants"]
            .as_array()
            .unwrap()
            .iter()
            .map(|v| Int::from(v.as_i64().unwrap()))
            .collect();

        let t = bundle.table(table).expect("table shipped");
        let (_, row) = t.character(chi).expect("character present");
        let variables = lp::allowed_classes(k, &bundle.ordinary);

        let profiles: Vec<PowerProfile> = if let Some(cases) = case_profiles.get(&k) {
            cases.clone()
        } else {
            pipeline.verdicts[&k]
                .nodes
                .iter()
                .map(|n| n.profile.clone())
                .collect()
        };
        assert!(!profiles.is_empty(), "order {k} has no profiles");

        let mut constants = Vec::new();
        for profile in &profiles {
            let form = lp::build_mu(k, l, t, row, profile, &variables).expect("form builds");
            let nonzero: BTreeMap<String, Int> = form
                .coeffs
                .iter()
                .filter(|(_, a)| **a != Int::from(0))
                .map(|(c, a)| (c.clone(), a.clone()))
                .collect();
            assert_eq!(
                nonzero, want_coeffs,
                "coefficients differ for mu_{l}(u,{chi},{table}) at order {k}"
            );
            constants.push(form.constant);
        }
        if want_constants.len() == 1 {
            for c in &constants {
                assert_eq!(
                    *c, want_constants[0],
                    "constant differs for mu_{l}(u,{chi},{table}) at order {k}"
                );
            }
        } else {
            assert_eq!(
                constants, want_constants,
                "per-case constants differ for mu_{l}(u,{chi},{table}) at order {k}"
            );
        }
        checked += 1;
    }
    checked
}

/// Parse an integer tuple list into the solver's representation.
pub fn tuples(list: &[&[i64]]) -> Vec<Vec<Int>> {
    let mut out: Vec<Vec<Int>> = list
        .iter()
        .map(|t| t.iter().map(|&x| Int::from(x)).collect())
        .collect();
    out.sort();
    out
}
