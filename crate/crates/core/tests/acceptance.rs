//! Acceptance suite: the full case analysis for M23, checked against the
//! published solution sets, plus the property batch.  One line per
//! criterion is printed as it passes.

mod common;

use std::collections::{BTreeMap, BTreeSet};

use help_core::lp::{self, CharacterSelection, FormSpec, PartialAugmentation};
use help_core::pipeline::{self, OrderStatus, Pipeline, PipelineConfig};
use help_core::solver;
use help_core::tables::{self, TableKind};
use help_core::Int;

use common::{check_paper_systems, load_group, tuples};

fn pass(n: u32, what: &str) {
    println!("criterion {n:>2}: PASS - {what}");
}

fn run_config() -> PipelineConfig {
    PipelineConfig {
        profile_cap: 100,
        ..PipelineConfig::default()
    }
}

#[test]
fn acceptance_criteria() {
    let bundle = load_group("m23");
    let mut pipeline = Pipeline::new(&bundle, run_config());
    pipeline.run_all().expect("full M23 run completes");

    let union = |k: u64| -> Vec<Vec<Int>> { pipeline.verdicts[&k].union_tuples() };
    let status = |k: u64| -> OrderStatus { pipeline.verdicts[&k].status };

    // 1. order 4 under the full Brauer(23) table plus the congruences
    {
        let specs: Vec<FormSpec> = bundle.brauer[&23]
            .characters
            .iter()
            .map(|ch| FormSpec {
                table: TableKind::Brauer(23),
                character: ch.id.clone(),
                ls: (0..4).collect(),
            })
            .collect();
        let selection = CharacterSelection::Named(BTreeMap::from([(4u64, specs)]));
        let config = PipelineConfig { selection, ..run_config() };
        let mut p4 = Pipeline::new(&bundle, config);
        let verdict = p4.solve_order(4).expect("order 4 solves");
        assert_eq!(verdict.variables(), vec!["2a".to_string(), "4a".to_string()]);
        assert_eq!(verdict.union_tuples(), tuples(&[&[0, 1], &[-2, 3], &[2, -1]]));
        pass(1, "order 4 under BCT(23): exactly {(0,1), (-2,3), (2,-1)}");
    }

    // 2. order 6: the 21 published triples
    let sol6 = tuples(&[
        &[0, 0, 1], &[4, -6, 3], &[-6, 6, 1], &[-6, 9, -2], &[-6, 12, -5],
        &[-4, 3, 2], &[-4, 6, -1], &[-4, 9, -4], &[-2, 0, 3], &[-2, 3, 0],
        &[-2, 6, -3], &[0, -3, 4], &[0, 3, -2], &[2, -6, 5], &[2, -3, 2],
        &[2, 0, -1], &[4, -9, 6], &[4, -3, 0], &[6, -12, 7], &[6, -9, 4],
        &[6, -6, 1],
    ]);
    assert_eq!(union(6), sol6);
    assert_eq!(status(6), OrderStatus::Constrained);
    pass(2, "order 6: exactly the 21 published triples");

    // 3. order 7
    assert_eq!(union(7), tuples(&[&[0, 1], &[2, -1], &[1, 0], &[-1, 2]]));
    pass(3, "order 7: exactly {(0,1), (2,-1), (1,0), (-1,2)}");

    // 4. order 8: union over the three order-4 cases
    let sol8 = tuples(&[
        &[-2, 4, -1], &[0, 4, -3], &[2, 0, -1], &[0, 0, 1], &[0, 2, -1],
        &[2, -2, 1], &[-2, 2, 1], &[0, -2, 3], &[-2, 6, -3], &[2, -4, 3],
    ]);
    assert_eq!(pipeline.verdicts[&8].profile_count, 3);
    assert_eq!(union(8), sol8);
    pass(4, "order 8: the 10 published triples over 3 cases");

    // 5. order 11: the 20 published pairs
    let sol11: Vec<Vec<Int>> = (-9..=10).map(|a| vec![Int::from(a), Int::from(1 - a)]).collect();
    assert_eq!(union(11), sol11);
    pass(5, "order 11: exactly the 20 published pairs");

    // 6. order 15: the 6 published quadruples
    let sol15 = tuples(&[
        &[-3, 5, -1, 0], &[-3, 5, 0, -1], &[0, 0, 0, 1], &[0, 0, 1, 0],
        &[3, -5, 1, 2], &[3, -5, 2, 1],
    ]);
    assert_eq!(union(15), sol15);
    pass(6, "order 15: exactly the 6 published quadruples");

    // 7. order 23: the trivial pair, classified rational
    assert_eq!(union(23), tuples(&[&[1, 0], &[0, 1]]));
    assert_eq!(status(23), OrderStatus::Rational);
    pass(7, "order 23: {(1,0), (0,1)} and RATIONAL");

    // 8. orders 2, 3, 5: unique trivial tuple, rational
    for k in [2u64, 3, 5] {
        assert_eq!(status(k), OrderStatus::Rational, "order {k}");
        assert_eq!(union(k), vec![vec![Int::from(1)]], "order {k}");
    }
    pass(8, "orders 2, 3, 5: unique trivial tuple, RATIONAL");

    // 9. the twelve exclusions
    let excluded = [10u64, 21, 22, 33, 35, 46, 55, 69, 77, 115, 161, 253];
    for &k in &excluded {
        assert_eq!(status(k), OrderStatus::Excluded, "order {k}");
    }
    // and these are exactly the exclusions among small candidates outside
    // the element orders and the capped set
    let element_orders: BTreeSet<u64> = bundle.element_orders().into_iter().collect();
    for (k, v) in &pipeline.verdicts {
        if element_orders.contains(k) || [12, 24, 28, 56].contains(k) {
            assert_ne!(v.status, OrderStatus::Excluded, "order {k} wrongly excluded");
        }
    }
    pass(9, "orders 10,21,22,33,35,46,55,69,77,115,161,253 all EXCLUDED");

    // 10. coefficient-level regression of every published system
    let n = check_paper_systems(&pipeline);
    pass(10, &format!("all {n} published affine forms reproduced exactly"));

    // 11. the prime-graph verdict
    {
        let kr = pipeline.kimmerle_check();
        assert!(kr.equal, "prime graphs differ");
        assert_eq!(kr.group_graph.vertices, BTreeSet::from([2, 3, 5, 7, 11, 23]));
        assert_eq!(kr.group_graph.edges, BTreeSet::from([(2, 3), (2, 7), (3, 5)]));
        assert_eq!(kr.unit_graph, kr.group_graph);
        pass(11, "Kimmerle verdict EQUAL with the published prime graph");
    }

    // 12. the property batch
    property_batch(&bundle, &mut pipeline);
    pass(12, "property suite (row sums, trivial tuples, oracle, symmetry, fuzz)");
}

fn property_batch(bundle: &help_core::TableBundle, pipeline: &mut Pipeline<'_>) {
    // orthogonality validation passes on every shipped table
    for group in ["m23", "a5"] {
        let dir = common::data_dir(group);
        let mut files: Vec<_> = std::fs::read_dir(&dir)
            .unwrap()
            .map(|e| e.unwrap().path())
            .filter(|p| p.extension().map(|e| e == "json").unwrap_or(false))
            .collect();
        files.sort();
        for f in files {
            let t = tables::parse_table(&std::fs::read(&f).unwrap()).unwrap();
            let report = tables::validate_table(&t);
            assert!(report.is_clean(), "{}: {:?}", f.display(), report.violations);
        }
    }

    // group order and exponent of the shipped M23 data
    assert_eq!(bundle.ordinary.group_order, 10_200_960);
    assert_eq!(bundle.ordinary.group_order, 128 * 9 * 5 * 7 * 11 * 23);
    assert_eq!(bundle.ordinary.exponent(), 8 * 3 * 5 * 7 * 11 * 23);

    // row-sum identity: over a whole residue system the mu forms add up to
    // the constant chi(1)
    for &k in &[4u64, 6, 11, 15] {
        let node = &pipeline.verdicts[&k].nodes[0];
        let system = lp::build_system(k, bundle, &node.profile, &CharacterSelection::All)
            .expect("system builds");
        let mut by_row: BTreeMap<(TableKind, String), Vec<&lp::AffineForm>> = BTreeMap::new();
        for (label, form) in &system.forms {
            by_row
                .entry((label.table, label.character.clone()))
                .or_default()
                .push(form);
        }
        for ((table, chi), forms) in by_row {
            assert_eq!(forms.len() as u64, k);
            let mut sum = forms[0].clone();
            for f in &forms[1..] {
                sum = sum.plus(f);
            }
            assert!(sum.coeffs.values().all(|a| *a == Int::from(0)), "{table} {chi}");
            let t = bundle.table(table).unwrap();
            let (_, row) = t.character(&chi).unwrap();
            assert_eq!(sum.constant, Int::from(k) * Int::from(row.degree));
        }
    }

    // trivial tuples are present for every element order
    for k in bundle.element_orders().into_iter().filter(|&k| k > 1) {
        let verdict = &pipeline.verdicts[&k];
        assert_ne!(verdict.status, OrderStatus::Capped, "order {k} capped");
        let union = verdict.union_tuples();
        for class in bundle.ordinary.classes.iter().filter(|c| c.element_order == k) {
            let delta = PartialAugmentation::delta(&class.name);
            let tuple = delta.tuple(&verdict.variables());
            assert!(union.contains(&tuple), "delta tuple for {} missing", class.name);
        }
    }

    // brute-force oracle: enumeration equals the verify_solution filter over
    // the whole box on every small system
    for &k in &[4u64, 7, 10, 11, 23, 46] {
        for node in &pipeline.verdicts[&k].nodes {
            let system = lp::build_system(k, bundle, &node.profile, &CharacterSelection::All)
                .expect("system builds");
            let boxed = solver::bound_box(&system).expect("bounded");
            let Some(bounds) = boxed else {
                assert!(node.set.is_empty());
                continue;
            };
            let ranges: Vec<(i64, i64)> = bounds
                .iter()
                .map(|(lo, hi)| {
                    let lo = lo.ceil().to_integer();
                    let hi = hi.floor().to_integer();
                    (i64::try_from(&lo).unwrap(), i64::try_from(&hi).unwrap())
                })
                .collect();
            let volume: i64 = ranges
                .iter()
                .map(|(lo, hi)| (hi - lo + 1).max(0))
                .product();
            assert!(volume <= 1_000_000, "order {k} box too large for brute force");
            let mut found = Vec::new();
            let mut point = vec![0i64; ranges.len()];
            brute(&system, &ranges, 0, &mut point, &mut found);
            found.sort();
            assert_eq!(found, node.set.tuples, "oracle mismatch at order {k}");
        }
    }

    // conjugate-pair swap invariance of the solution sets
    let swaps: [(u64, &[(&str, &str)]); 4] = [
        (7, &[("7a", "7b")]),
        (11, &[("11a", "11b")]),
        (15, &[("15a", "15b")]),
        (23, &[("23a", "23b")]),
    ];
    for (k, pairs) in swaps {
        let verdict = &pipeline.verdicts[&k];
        let vars = verdict.variables();
        let union = verdict.union_tuples();
        let swapped: BTreeSet<Vec<Int>> = union
            .iter()
            .map(|t| {
                let mut m: BTreeMap<&str, Int> = vars
                    .iter()
                    .map(String::as_str)
                    .zip(t.iter().cloned())
                    .collect();
                for (a, b) in pairs {
                    let va = m[a].clone();
                    let vb = m[b].clone();
                    m.insert(a, vb);
                    m.insert(b, va);
                }
                vars.iter().map(|v| m[v.as_str()].clone()).collect()
            })
            .collect();
        let original: BTreeSet<Vec<Int>> = union.into_iter().collect();
        assert_eq!(swapped, original, "swap invariance fails at order {k}");
    }

    // orders 12 and 14 solve to large constrained sets; 24, 28, 56 cap
    assert_eq!(pipeline.verdicts[&12].status, OrderStatus::Constrained);
    assert!(pipeline.verdicts[&12].union_tuples().len() > 64);
    assert_eq!(pipeline.verdicts[&14].status, OrderStatus::Constrained);
    assert!(pipeline.verdicts[&14].union_tuples().len() > 64);
    for k in [24u64, 28, 56] {
        assert_eq!(pipeline.verdicts[&k].status, OrderStatus::Capped, "order {k}");
    }

    // cyclotomic ring laws and trace linearity on pseudo-random elements
    cyclo_fuzz();

    // the A5 cross check: the original rational-conjugacy result
    let a5 = load_group("a5");
    let mut p5 = Pipeline::new(&a5, run_config());
    p5.run_all().expect("A5 run completes");
    assert_eq!(pipeline::candidate_orders(&a5), vec![2, 3, 5, 6, 10, 15, 30]);
    for k in [2u64, 3, 5] {
        assert_eq!(p5.verdicts[&k].status, OrderStatus::Rational);
    }
    for k in [6u64, 10, 15, 30] {
        assert_eq!(p5.verdicts[&k].status, OrderStatus::Excluded);
    }
    let kr = p5.kimmerle_check();
    assert!(kr.equal && kr.group_graph.edges.is_empty());
}

fn brute(
    system: &lp::ConstraintSystem,
    ranges: &[(i64, i64)],
    level: usize,
    point: &mut Vec<i64>,
    found: &mut Vec<Vec<Int>>,
) {
    if level == ranges.len() {
        let entries: BTreeMap<String, Int> = system
            .variables
            .iter()
            .cloned()
            .zip(point.iter().map(|&x| Int::from(x)))
            .collect();
        let Ok(pa) = PartialAugmentation::new(entries) else {
            return;
        };
        let (ok, _) = solver::verify_solution(system, &pa).expect("verify runs");
        if ok {
            found.push(point.iter().map(|&x| Int::from(x)).collect());
        }
        return;
    }
    for x in ranges[level].0..=ranges[level].1 {
        point[level] = x;
        brute(system, ranges, level + 1, point, found);
    }
}

/// Small deterministic fuzz of the ring laws; the deeper proptest suite
/// lives in tests/properties.rs.
fn cyclo_fuzz() {
    use help_core::Cyclotomic;
    let mut state = 0x2545F4914F6CDD1Du64;
    let mut next = move |m: u64| {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state % m
    };
    let conductors = [1u64, 2, 3, 4, 5, 6, 8, 9, 12, 15, 16, 18, 20, 21, 24];
    let random_elt = |next: &mut dyn FnMut(u64) -> u64| {
        let n = conductors[next(conductors.len() as u64) as usize];
        let mut acc = Cyclotomic::from_int(0);
        for _ in 0..=next(3) {
            let e = next(n) as i64;
            let c = next(9) as i64 - 4;
            acc = acc.add(&Cyclotomic::root_of_unity(n, e).unwrap().scale(
                &help_core::Rat::from_integer(Int::from(c)),
            ));
        }
        acc
    };
    for _ in 0..200 {
        let a = random_elt(&mut next);
        let b = random_elt(&mut next);
        let c = random_elt(&mut next);
        assert_eq!(a.add(&b), b.add(&a));
        assert_eq!(a.mul(&b), b.mul(&a));
        assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        // trace linearity at a common field
        let m = help_core::arith::lcm(a.conductor(), b.conductor());
        let lhs = a.add(&b).trace_to_q(m).unwrap();
        let rhs = a.trace_to_q(m).unwrap() + b.trace_to_q(m).unwrap();
        assert_eq!(lhs, rhs);
    }
}
