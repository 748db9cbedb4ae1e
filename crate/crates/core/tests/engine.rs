//! Operation-level checks on the shipped M23 data: allowed classes, the
//! congruence constraints, power-value evaluation, case counts,
//! verification oracles, monotonicity under constraint growth and
//! determinism of the serialised solution sets.

mod common;

use std::collections::BTreeMap;

use help_core::lp::{self, CharacterSelection, FormSpec, PartialAugmentation, PowerProfile};
use help_core::pipeline::{prime_graph, OrderStatus, Pipeline, PipelineConfig};
use help_core::solver;
use help_core::tables::TableKind;
use help_core::{Cyclotomic, Int};

use common::load_group;

fn pa(pairs: &[(&str, i64)]) -> PartialAugmentation {
    PartialAugmentation::new(
        pairs
            .iter()
            .map(|(c, v)| (c.to_string(), Int::from(*v)))
            .collect(),
    )
    .unwrap()
}

#[test]
fn allowed_classes_examples() {
    let bundle = load_group("m23");
    let t = &bundle.ordinary;
    assert_eq!(lp::allowed_classes(4, t), vec!["2a", "4a"]);
    assert_eq!(lp::allowed_classes(6, t), vec!["2a", "3a", "6a"]);
    assert_eq!(lp::allowed_classes(10, t), vec!["2a", "5a"]);
    assert_eq!(lp::allowed_classes(2, t), vec!["2a"]);
    assert_eq!(lp::allowed_classes(77, t), vec!["7a", "7b", "11a", "11b"]);
}

#[test]
fn divisibility_constraint_examples() {
    let bundle = load_group("m23");
    let t = &bundle.ordinary;
    let c4 = lp::divisibility_constraints(4, t);
    assert_eq!(c4.len(), 1);
    assert_eq!(c4[0].classes, vec!["2a"]);
    assert_eq!(c4[0].modulus, 2);
    let c8 = lp::divisibility_constraints(8, t);
    assert_eq!(c8.len(), 2);
    assert_eq!(c8[1].classes, vec!["4a"]);
    assert!(lp::divisibility_constraints(6, t).is_empty());
}

#[test]
fn chi_of_power_examples() {
    let bundle = load_group("m23");
    let t23 = &bundle.brauer[&23];
    let (_, chi2) = t23.character("chi_2").unwrap(); // degree 21
    // u^k = 1 contributes the degree
    let profile = PowerProfile::empty(8);
    let val = lp::chi_of_power(&profile, t23, chi2, 8).unwrap();
    assert_eq!(val, Cyclotomic::from_int(21));
    // order-4 assignment (0, 1): chi(u^2) = chi(4a)
    let mut a = BTreeMap::new();
    a.insert(2, pa(&[("2a", 1)]));
    a.insert(4, pa(&[("4a", 1)]));
    let profile = PowerProfile::new(8, a).unwrap();
    let got = lp::chi_of_power(&profile, t23, chi2, 2).unwrap();
    assert_eq!(got, t23.value(chi2, "4a").unwrap().clone());
    // order-4 assignment (-2, 3): chi(u^2) = -2 chi(2a) + 3 chi(4a)
    let mut a = BTreeMap::new();
    a.insert(2, pa(&[("2a", 1)]));
    a.insert(4, pa(&[("2a", -2), ("4a", 3)]));
    let profile = PowerProfile::new(8, a).unwrap();
    let got = lp::chi_of_power(&profile, t23, chi2, 2).unwrap();
    let want = t23
        .value(chi2, "2a")
        .unwrap()
        .scale(&help_core::Rat::from_integer(Int::from(-2)))
        .add(&t23.value(chi2, "4a").unwrap().scale(&help_core::Rat::from_integer(Int::from(3))));
    assert_eq!(got, want);
    // a missing assignment is an error
    assert!(lp::chi_of_power(&PowerProfile::empty(8), t23, chi2, 2).is_err());
}

#[test]
fn case_counts_match_the_analysis() {
    let bundle = load_group("m23");
    let mut p = Pipeline::new(&bundle, PipelineConfig::default());
    for (k, cases) in [(4u64, 1u64), (8, 3), (21, 4), (35, 4), (46, 2), (77, 80), (253, 40)] {
        let v = p.solve_order(k).expect("order solves");
        assert_eq!(v.profile_count, cases, "case count for order {k}");
    }
}

#[test]
fn build_system_order_23_subset_matches() {
    // restricted to the Brauer(2) character chi_2 at l = 1, 5 the system is
    // the published pair of forms
    let bundle = load_group("m23");
    let selection = CharacterSelection::Named(BTreeMap::from([(
        23u64,
        vec![FormSpec { table: TableKind::Brauer(2), character: "chi_2".into(), ls: vec![1, 5] }],
    )]));
    let system = lp::build_system(23, &bundle, &PowerProfile::empty(23), &selection).unwrap();
    assert_eq!(system.variables, vec!["23a", "23b"]);
    assert_eq!(system.forms.len(), 2);
    let f1 = &system.forms[0].1;
    assert_eq!(f1.coeffs[&"23a".to_string()], Int::from(12));
    assert_eq!(f1.coeffs[&"23b".to_string()], Int::from(-11));
    assert_eq!(f1.constant, Int::from(11));
    let f5 = &system.forms[1].1;
    assert_eq!(f5.coeffs[&"23a".to_string()], Int::from(-11));
    assert_eq!(f5.coeffs[&"23b".to_string()], Int::from(12));
    assert_eq!(f5.constant, Int::from(11));
    // and that subsystem already has exactly the two trivial solutions
    let set = solver::enumerate_solutions(&system, &PowerProfile::empty(23), 1 << 20).unwrap();
    assert_eq!(set.tuples.len(), 2);
}

#[test]
fn verify_solution_examples() {
    let bundle = load_group("m23");
    // the order-4 system over the full Brauer(23) table plus congruences
    let system = lp::build_system(
        4,
        &bundle,
        &PowerProfile::new(2 * 2, BTreeMap::from([(2, pa(&[("2a", 1)]))])).unwrap(),
        &CharacterSelection::All,
    )
    .unwrap();
    let (ok, report) = solver::verify_solution(&system, &pa(&[("2a", 2), ("4a", -1)])).unwrap();
    assert!(ok);
    assert!(report.iter().all(|(_, mu)| mu.is_integer() && *mu >= help_core::Rat::from_integer(Int::from(0))));
    // (1, 0) satisfies every inequality but violates the parity congruence
    let (ok, report) = solver::verify_solution(&system, &pa(&[("2a", 1), ("4a", 0)])).unwrap();
    assert!(!ok);
    assert!(report.iter().all(|(_, mu)| mu.is_integer() && *mu >= help_core::Rat::from_integer(Int::from(0))));
    // unknown variables are rejected
    assert!(solver::verify_solution(&system, &pa(&[("8a", 1)])).is_err());

    // order 11: (-5, 6) is one of the published pairs
    let system = lp::build_system(11, &bundle, &PowerProfile::empty(11), &CharacterSelection::All)
        .unwrap();
    let (ok, _) = solver::verify_solution(&system, &pa(&[("11a", -5), ("11b", 6)])).unwrap();
    assert!(ok);
    let (ok, _) = solver::verify_solution(&system, &pa(&[("11a", -10), ("11b", 11)])).unwrap();
    assert!(!ok);
}

#[test]
fn growing_the_constraint_set_never_adds_solutions() {
    // paper-subset runs versus all-characters runs at orders 6 and 8
    let bundle = load_group("m23");
    let paper = load_paper_selection();
    for k in [6u64, 8] {
        let mut all_run = Pipeline::new(&bundle, PipelineConfig::default());
        all_run.solve_order(k).unwrap();
        let mut paper_run = Pipeline::new(
            &bundle,
            PipelineConfig { selection: paper.clone(), ..PipelineConfig::default() },
        );
        paper_run.solve_order(k).unwrap();
        let all: Vec<Vec<Int>> = all_run.verdicts[&k].union_tuples();
        let subset: Vec<Vec<Int>> = paper_run.verdicts[&k].union_tuples();
        for t in &all {
            assert!(subset.contains(t), "order {k}: {t:?} lost under fewer constraints");
        }
        // at these orders the published subsets are already tight
        assert_eq!(all, subset, "order {k}");
    }
}

fn load_paper_selection() -> CharacterSelection {
    let path = common::data_dir("m23").join("../paper_characters.json");
    let doc: serde_json::Value =
        serde_json::from_slice(&std::fs::read(path).unwrap()).unwrap();
    let mut map = BTreeMap::new();
    for (order, specs) in doc.as_object().unwrap() {
        let k: u64 = order.parse().unwrap();
        let specs = specs
            .as_array()
            .unwrap()
            .iter()
            .map(|s| FormSpec {
                table: match s["table"].as_str().unwrap() {
                    "*" => TableKind::Ordinary,
                    p => TableKind::Brauer(p.parse().unwrap()),
                },
                character: s["chi"].as_str().unwrap().to_string(),
                ls: s["l"].as_array().unwrap().iter().map(|v| v.as_u64().unwrap()).collect(),
            })
            .collect();
        map.insert(k, specs);
    }
    CharacterSelection::Named(map)
}

#[test]
fn enumeration_is_deterministic() {
    let bundle = load_group("m23");
    let system =
        lp::build_system(11, &bundle, &PowerProfile::empty(11), &CharacterSelection::All).unwrap();
    let a = solver::enumerate_solutions(&system, &PowerProfile::empty(11), 1 << 30).unwrap();
    let b = solver::enumerate_solutions(&system, &PowerProfile::empty(11), 1 << 30).unwrap();
    assert_eq!(a.to_json().to_string(), b.to_json().to_string());
}

#[test]
fn surviving_order_33_would_break_the_graph() {
    let bundle = load_group("m23");
    let mut p = Pipeline::new(&bundle, PipelineConfig { profile_cap: 100, ..Default::default() });
    p.run_all().unwrap();
    assert!(p.kimmerle_check().equal);
    // flip order 33 to "not excluded": the unit graph gains the edge {3, 11}
    let v = p.verdicts.get_mut(&33).unwrap();
    v.status = OrderStatus::Constrained;
    let kr = p.kimmerle_check();
    assert!(!kr.equal);
    assert_eq!(kr.extra_edges, vec![(3, 11)]);
}

#[test]
fn bound_box_contains_the_trivial_pair_at_order_23() {
    let bundle = load_group("m23");
    let system =
        lp::build_system(23, &bundle, &PowerProfile::empty(23), &CharacterSelection::All).unwrap();
    let bounds = solver::bound_box(&system).unwrap().expect("feasible");
    let zero = help_core::Rat::from_integer(Int::from(0));
    let one = help_core::Rat::from_integer(Int::from(1));
    for (lo, hi) in &bounds {
        assert!(*lo <= zero && *hi >= one, "box excludes the trivial tuples");
    }
}

#[test]
fn rational_conjugacy_classification_examples() {
    use help_core::pipeline::classify_rational_conjugacy;
    let trivial_profile = PowerProfile::empty(23);
    assert!(classify_rational_conjugacy(&pa(&[("23a", 1)]), &trivial_profile));
    assert!(!classify_rational_conjugacy(&pa(&[("2a", -2), ("4a", 3)]), &PowerProfile::empty(4)));
    assert!(!classify_rational_conjugacy(&pa(&[("7a", 2), ("7b", -1)]), &PowerProfile::empty(7)));
    // a non-delta assignment deeper in the chain also disqualifies
    let mut a = BTreeMap::new();
    a.insert(4, pa(&[("2a", -2), ("4a", 3)]));
    a.insert(2, pa(&[("2a", 1)]));
    let profile = PowerProfile::new(8, a).unwrap();
    assert!(!classify_rational_conjugacy(&pa(&[("8a", 1)]), &profile));
}

#[test]
fn candidate_orders_for_m23() {
    let bundle = load_group("m23");
    let orders = help_core::pipeline::candidate_orders(&bundle);
    assert_eq!(orders.len(), 127);
    for k in [2u64, 23, 10, 12, 21, 22, 24, 28, 33, 35, 46, 55, 56, 69, 77, 115, 161, 253] {
        assert!(orders.contains(&k), "missing candidate {k}");
    }
    assert_eq!(prime_graph(&bundle.element_orders()).edges.len(), 3);
}
