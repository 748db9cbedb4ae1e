//! Exact enumeration of the integer points of a constraint system: every
//! mu form must be a non-negative integer, the augmentations sum to 1 and
//! all congruences hold.  Bounding boxes come from exact Fourier-Motzkin
//! elimination over the integers; enumeration is a pruned interval scan.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::Sign;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::Value;
use thiserror::Error;

use crate::lp::{ConstraintSystem, FormLabel, LpError, PartialAugmentation, PowerProfile};
use crate::{Int, Rat};

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("system is unbounded in variable `{variable}`")]
    Unbounded { variable: String },
    #[error("candidate box holds {volume} lattice points, over the cap {cap}")]
    CapExceeded { volume: u128, cap: u128 },
    #[error("tuple mentions unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("fourier-motzkin row budget exceeded ({0} rows)")]
    EliminationBlowup(usize),
    #[error(transparent)]
    Lp(#[from] LpError),
}

/// Why an enumeration returned the tuples it did.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnumerationOutcome {
    /// The whole box was scanned.
    Exhausted,
    /// The rational relaxation was already empty.
    InfeasibleRelaxation,
}

/// All integer tuples surviving a system, with certified mu values.
#[derive(Debug, Clone)]
pub struct SolutionSet {
    pub k: u64,
    pub profile: PowerProfile,
    pub variables: Vec<String>,
    pub labels: Vec<FormLabel>,
    /// tuples, sorted lexicographically in variable order
    pub tuples: Vec<Vec<Int>>,
    /// row i holds the integer value of every form at tuple i
    pub certified: Vec<Vec<Int>>,
    pub outcome: EnumerationOutcome,
}

impl SolutionSet {
    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn augmentations(&self) -> impl Iterator<Item = PartialAugmentation> + '_ {
        self.tuples
            .iter()
            .map(|t| PartialAugmentation::from_tuple(&self.variables, t).expect("stored tuples sum to 1"))
    }

    pub fn contains_tuple(&self, tuple: &[Int]) -> bool {
        self.tuples.iter().any(|t| t == tuple)
    }

    pub fn to_json(&self) -> Value {
        serde_json::json!({
            "order": self.k,
            "profile": self.profile.to_json(),
            "profile_digest": self.profile.digest(),
            "variables": self.variables,
            "labels": self.labels.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
            "tuples": self
                .tuples
                .iter()
                .map(|t| t.iter().map(|v| v.to_string()).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "certified": self
                .certified
                .iter()
                .map(|row| row.iter().map(|v| v.to_string()).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "outcome": match self.outcome {
                EnumerationOutcome::Exhausted => "exhausted",
                EnumerationOutcome::InfeasibleRelaxation => "infeasible",
            },
        })
    }
}

/// One inequality sum(coeffs . x) + constant >= 0 over integer data.
/// `ancestors` tracks which original rows produced it, for Chernikov's
/// redundancy rule.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
struct IntRow {
    coeffs: Vec<Int>,
    constant: Int,
    ancestors: Vec<u32>,
}

impl IntRow {
    fn normalized(mut self) -> IntRow {
        let mut g = self.constant.abs();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        if !g.is_zero() && g > Int::from(1) {
            for c in &mut self.coeffs {
                *c /= &g;
            }
            self.constant /= &g;
        }
        self
    }
}

/// Keep, for each coefficient direction, only the binding constant.  The
/// dropped rows are implied, so the feasible region is unchanged.
fn tighten(rows: Vec<IntRow>) -> Vec<IntRow> {
    let mut best: BTreeMap<Vec<Int>, (Int, Vec<u32>)> = BTreeMap::new();
    for row in rows {
        match best.get_mut(&row.coeffs) {
            Some((c, anc)) => {
                if row.constant < *c {
                    *c = row.constant;
                    *anc = row.ancestors;
                }
            }
            None => {
                best.insert(row.coeffs, (row.constant, row.ancestors));
            }
        }
    }
    best.into_iter()
        .map(|(coeffs, (constant, ancestors))| IntRow { coeffs, constant, ancestors })
        .collect()
}

fn system_rows(system: &ConstraintSystem) -> Vec<IntRow> {
    let nvars = system.variables.len();
    let mut rows = Vec::new();
    let as_row = |form: &crate::lp::AffineForm| -> IntRow {
        let coeffs: Vec<Int> = system
            .variables
            .iter()
            .map(|v| form.coeffs.get(v).cloned().unwrap_or_else(Int::zero))
            .collect();
        IntRow { coeffs, constant: form.constant.clone(), ancestors: Vec::new() }.normalized()
    };
    for (_, form) in &system.forms {
        rows.push(as_row(form));
    }
    // When a (table, character) group carries every l in 0..k, the row-sum
    // identity sum_l mu_l = chi(1) makes mu_l <= chi(1) a consequence of the
    // other inequalities; adding the implied upper rows keeps the region
    // unchanged and bounds every direction for the elimination.
    let mut groups: BTreeMap<(crate::tables::TableKind, &str), Vec<usize>> = BTreeMap::new();
    for (i, (label, _)) in system.forms.iter().enumerate() {
        groups
            .entry((label.table, label.character.as_str()))
            .or_default()
            .push(i);
    }
    for idxs in groups.values() {
        if idxs.len() as u64 != system.k {
            continue;
        }
        let mut coeff_sum = vec![Int::zero(); nvars];
        let mut const_sum = Int::zero();
        for &i in idxs {
            let (_, form) = &system.forms[i];
            for (j, v) in system.variables.iter().enumerate() {
                if let Some(a) = form.coeffs.get(v) {
                    coeff_sum[j] += a;
                }
            }
            const_sum += &form.constant;
        }
        if !coeff_sum.iter().all(Int::is_zero) {
            continue; // data does not satisfy the identity; skip the shortcut
        }
        for &i in idxs {
            let (_, form) = &system.forms[i];
            let coeffs: Vec<Int> = system
                .variables
                .iter()
                .map(|v| -form.coeffs.get(v).cloned().unwrap_or_else(Int::zero))
                .collect();
            let constant = &const_sum - &form.constant;
            rows.push(IntRow { coeffs, constant, ancestors: Vec::new() }.normalized());
        }
    }
    // augmentation as a pair of inequalities
    rows.push(IntRow {
        coeffs: vec![Int::from(1); nvars],
        constant: Int::from(-1),
        ancestors: Vec::new(),
    });
    rows.push(IntRow {
        coeffs: vec![Int::from(-1); nvars],
        constant: Int::from(1),
        ancestors: Vec::new(),
    });
    tighten(rows)
}

const FM_ROW_BUDGET: usize = 400_000;

/// Eliminate variable `var` from the rows (Fourier-Motzkin, exact).
/// `depth` counts previously eliminated variables: a combined row whose
/// ancestor set exceeds depth + 2 original rows is redundant (Chernikov)
/// provided ancestry is tracked for every original row.
fn eliminate(rows: &[IntRow], var: usize, depth: u32) -> Result<Vec<IntRow>, SolveError> {
    let mut kept = BTreeSet::new();
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for row in rows {
        match row.coeffs[var].sign() {
            Sign::NoSign => {
                kept.insert(row.clone());
            }
            Sign::Plus => pos.push(row),
            Sign::Minus => neg.push(row),
        }
    }
    // the pair scan itself is cheap; Chernikov pruning keeps the output small
    if pos.len().saturating_mul(neg.len()) > 20_000_000 {
        return Err(SolveError::EliminationBlowup(pos.len() * neg.len()));
    }
    for p in &pos {
        for n in &neg {
            let mut ancestors: Vec<u32> =
                p.ancestors.iter().chain(&n.ancestors).cloned().collect();
            ancestors.sort_unstable();
            ancestors.dedup();
            if ancestors.len() as u32 > depth + 2 {
                continue;
            }
            let a = p.coeffs[var].clone();
            let b = -n.coeffs[var].clone();
            // b * p + a * n eliminates var
            let coeffs: Vec<Int> = p
                .coeffs
                .iter()
                .zip(&n.coeffs)
                .map(|(pc, nc)| &b * pc + &a * nc)
                .collect();
            let constant = &b * &p.constant + &a * &n.constant;
            kept.insert(IntRow { coeffs, constant, ancestors }.normalized());
            if kept.len() > FM_ROW_BUDGET {
                return Err(SolveError::EliminationBlowup(kept.len()));
            }
        }
    }
    Ok(tighten(kept.into_iter().collect()))
}

/// Pick the next variable to eliminate: fewest positive-negative pairings.
fn cheapest_variable(rows: &[IntRow], remaining: &[usize]) -> usize {
    let mut best = remaining[0];
    let mut best_cost = usize::MAX;
    for &v in remaining {
        let (mut pos, mut neg) = (0usize, 0usize);
        for row in rows {
            match row.coeffs[v].sign() {
                Sign::Plus => pos += 1,
                Sign::Minus => neg += 1,
                Sign::NoSign => {}
            }
        }
        let cost = pos.saturating_mul(neg);
        if cost < best_cost {
            best_cost = cost;
            best = v;
        }
    }
    best
}

/// Exact per-variable bounds valid for every real point satisfying all the
/// forms plus the augmentation equality.  `None` means the relaxation is
/// empty (infeasible).
///
/// Bounds derived from a subset of the rows are valid for the whole system,
/// so the elimination runs over an escalating ladder of low-support subsets
/// and only falls back to the full row set when a smaller one stays
/// unbounded or blows up.
pub fn bound_box(system: &ConstraintSystem) -> Result<Option<Vec<(Rat, Rat)>>, SolveError> {
    let nvars = system.variables.len();
    let mut base = system_rows(system);
    // rows with no variables are plain feasibility statements, not bounds
    for row in &base {
        if row.coeffs.iter().all(Int::is_zero) && row.constant.is_negative() {
            return Ok(None);
        }
    }
    base.retain(|row| !row.coeffs.iter().all(Int::is_zero));
    base.sort_by_key(|row| {
        (
            row.coeffs.iter().filter(|c| !c.is_zero()).count(),
            row.coeffs.iter().map(|c| c.abs()).sum::<Int>(),
            row.coeffs.clone(),
            row.constant.clone(),
        )
    });
    // interleave the support patterns so every direction family shows up
    // early; subsets of the rows always give valid (if looser) bounds
    {
        let mut buckets: BTreeMap<Vec<bool>, Vec<IntRow>> = BTreeMap::new();
        for row in base.drain(..) {
            let pattern: Vec<bool> = row.coeffs.iter().map(|c| !c.is_zero()).collect();
            buckets.entry(pattern).or_default().push(row);
        }
        let mut queues: Vec<Vec<IntRow>> = buckets.into_values().collect();
        let mut i = 0;
        while queues.iter().any(|q| i < q.len()) {
            for q in &mut queues {
                if i < q.len() {
                    base.push(q[i].clone());
                }
            }
            i += 1;
        }
    }
    let mut last_err = None;
    for take in [128usize, 384, usize::MAX] {
        if take < nvars + 1 {
            continue;
        }
        let mut subset: Vec<IntRow> = base.iter().take(take).cloned().collect();
        for (i, row) in subset.iter_mut().enumerate() {
            row.ancestors = vec![i as u32];
        }
        match fm_bounds(&subset, nvars, &system.variables) {
            Ok(done) => return Ok(done),
            Err(e) => {
                last_err = Some(e);
                if take >= base.len() {
                    break;
                }
            }
        }
    }
    Err(last_err.expect("at least one ladder step runs"))
}

fn fm_bounds(
    base: &[IntRow],
    nvars: usize,
    variables: &[String],
) -> Result<Option<Vec<(Rat, Rat)>>, SolveError> {
    let mut bounds = Vec::with_capacity(nvars);
    for target in 0..nvars {
        let mut rows = base.to_vec();
        let mut remaining: Vec<usize> = (0..nvars).filter(|&v| v != target).collect();
        let mut depth = 0;
        while !remaining.is_empty() {
            let var = cheapest_variable(&rows, &remaining);
            remaining.retain(|&v| v != var);
            rows = eliminate(&rows, var, depth)?;
            depth += 1;
        }
        let mut lower: Option<Rat> = None;
        let mut upper: Option<Rat> = None;
        for row in &rows {
            let a = &row.coeffs[target];
            let c = &row.constant;
            match a.sign() {
                Sign::NoSign => {
                    if c.is_negative() {
                        return Ok(None);
                    }
                }
                Sign::Plus => {
                    // a x + c >= 0  ->  x >= -c/a
                    let b = Rat::new(-c.clone(), a.clone());
                    lower = Some(match lower {
                        Some(old) if old >= b => old,
                        _ => b,
                    });
                }
                Sign::Minus => {
                    // a x + c >= 0 with a < 0  ->  x <= c/(-a)
                    let b = Rat::new(c.clone(), -a.clone());
                    upper = Some(match upper {
                        Some(old) if old <= b => old,
                        _ => b,
                    });
                }
            }
        }
        match (lower, upper) {
            (Some(lo), Some(hi)) => {
                if lo > hi {
                    return Ok(None);
                }
                bounds.push((lo, hi));
            }
            _ => {
                return Err(SolveError::Unbounded {
                    variable: variables[target].clone(),
                })
            }
        }
    }
    Ok(Some(bounds))
}

fn ceil_rat(q: &Rat) -> Int {
    q.ceil().to_integer()
}

fn floor_rat(q: &Rat) -> Int {
    q.floor().to_integer()
}

/// Complete enumeration of the integer solutions inside the bounding box.
/// Fails fast when the box holds more than `cap` candidate points.
pub fn enumerate_solutions(
    system: &ConstraintSystem,
    profile: &PowerProfile,
    cap: u128,
) -> Result<SolutionSet, SolveError> {
    let labels: Vec<FormLabel> = system.forms.iter().map(|(l, _)| l.clone()).collect();
    let empty = |outcome| SolutionSet {
        k: system.k,
        profile: profile.clone(),
        variables: system.variables.clone(),
        labels: labels.clone(),
        tuples: Vec::new(),
        certified: Vec::new(),
        outcome,
    };

    let Some(box_) = bound_box(system)? else {
        return Ok(empty(EnumerationOutcome::InfeasibleRelaxation));
    };
    let ranges: Vec<(Int, Int)> = box_
        .iter()
        .map(|(lo, hi)| (ceil_rat(lo), floor_rat(hi)))
        .collect();
    let mut volume: u128 = 1;
    for (lo, hi) in &ranges {
        if hi < lo {
            return Ok(empty(EnumerationOutcome::Exhausted));
        }
        let width = (hi - lo + 1u32).to_u128().unwrap_or(u128::MAX);
        volume = volume.saturating_mul(width);
    }
    if volume > cap {
        return Err(SolveError::CapExceeded { volume, cap });
    }

    // enumeration only needs one representative per (direction, constant
    // mod k) class: the others are implied for both signs and integrality
    let kint_dedup = Int::from(system.k);
    let mut scan_src: BTreeMap<(Vec<Int>, Int), Int> = BTreeMap::new();
    for (_, form) in &system.forms {
        let coeffs: Vec<Int> = system
            .variables
            .iter()
            .map(|v| form.coeffs.get(v).cloned().unwrap_or_else(Int::zero))
            .collect();
        let residue = form.constant.mod_floor(&kint_dedup);
        let key = (coeffs, residue);
        match scan_src.get_mut(&key) {
            Some(c) => {
                if form.constant < *c {
                    *c = form.constant.clone();
                }
            }
            None => {
                scan_src.insert(key, form.constant.clone());
            }
        }
    }

    // scan variables by ascending width; the last scanned variable is fixed
    // by the augmentation equality
    let nvars = system.variables.len();
    let mut order: Vec<usize> = (0..nvars).collect();
    order.sort_by_key(|&i| (&ranges[i].1 - &ranges[i].0).to_u128().unwrap_or(u128::MAX));

    // per form, coefficients in scan order, plus suffix min/max contributions
    struct ScanForm {
        coeffs: Vec<Int>,
        constant: Int,
        suffix_max: Vec<Int>,
    }
    let mut scan_forms = Vec::with_capacity(scan_src.len());
    for ((var_coeffs, _), constant) in &scan_src {
        let coeffs: Vec<Int> = order.iter().map(|&i| var_coeffs[i].clone()).collect();
        let mut suffix_max = vec![Int::zero(); nvars + 1];
        for i in (0..nvars).rev() {
            let (lo, hi) = &ranges[order[i]];
            let a = &coeffs[i];
            let cmax = if a.is_negative() { a * lo } else { a * hi };
            suffix_max[i] = &suffix_max[i + 1] + cmax;
        }
        scan_forms.push(ScanForm { coeffs, constant: constant.clone(), suffix_max });
    }
    // suffix bounds for the augmentation sum
    let mut sum_min = vec![Int::zero(); nvars + 1];
    let mut sum_max = vec![Int::zero(); nvars + 1];
    for i in (0..nvars).rev() {
        let (lo, hi) = &ranges[order[i]];
        sum_min[i] = &sum_min[i + 1] + lo;
        sum_max[i] = &sum_max[i + 1] + hi;
    }

    struct ScanCtx<'a> {
        nvars: usize,
        order: &'a [usize],
        ranges: &'a [(Int, Int)],
        scan_forms: &'a [ScanForm],
        sum_min: &'a [Int],
        sum_max: &'a [Int],
        kint: Int,
        system: &'a ConstraintSystem,
    }
    struct ScanState {
        partial_forms: Vec<Int>,
        partial_sum: Int,
        assignment: Vec<Int>,
        found: Vec<Vec<Int>>,
    }

    fn descend(ctx: &ScanCtx<'_>, st: &mut ScanState, level: usize) {
        // prune on the augmentation equality
        let one = Int::from(1);
        if &st.partial_sum + &ctx.sum_max[level] < one
            || &st.partial_sum + &ctx.sum_min[level] > one
        {
            return;
        }
        // prune any form whose best case is still negative
        for (f, acc) in ctx.scan_forms.iter().zip(st.partial_forms.iter()) {
            if acc + &f.suffix_max[level] < Int::zero() {
                return;
            }
        }
        if level == ctx.nvars {
            // complete assignment: check integrality and congruences
            for acc in st.partial_forms.iter() {
                if acc.is_negative() || !(acc % &ctx.kint).is_zero() {
                    return;
                }
            }
            if !congruences_hold(ctx.system, &st.assignment) {
                return;
            }
            st.found.push(st.assignment.clone());
            return;
        }
        let var = ctx.order[level];
        let (lo, hi) = ctx.ranges[var].clone();
        let mut x = lo;
        while x <= hi {
            st.assignment[var] = x.clone();
            let mut saved = Vec::with_capacity(st.partial_forms.len());
            for (f, acc) in ctx.scan_forms.iter().zip(st.partial_forms.iter_mut()) {
                saved.push(acc.clone());
                *acc += &f.coeffs[level] * &x;
            }
            let saved_sum = st.partial_sum.clone();
            st.partial_sum += &x;
            descend(ctx, st, level + 1);
            for (acc, s) in st.partial_forms.iter_mut().zip(saved) {
                *acc = s;
            }
            st.partial_sum = saved_sum;
            x += 1u32;
        }
    }

    let ctx = ScanCtx {
        nvars,
        order: &order,
        ranges: &ranges,
        scan_forms: &scan_forms,
        sum_min: &sum_min,
        sum_max: &sum_max,
        kint: Int::from(system.k),
        system,
    };
    let mut st = ScanState {
        partial_forms: scan_forms.iter().map(|f| f.constant.clone()).collect(),
        partial_sum: Int::zero(),
        assignment: vec![Int::zero(); nvars],
        found: Vec::new(),
    };
    descend(&ctx, &mut st, 0);
    let kint = ctx.kint;
    let mut found = st.found;

    found.sort();
    found.dedup();
    let mut certified = Vec::with_capacity(found.len());
    for tuple in &found {
        let nu = PartialAugmentation::from_tuple(&system.variables, tuple)
            .expect("enumerated tuples satisfy the augmentation equality");
        let mus: Vec<Int> = system
            .forms
            .iter()
            .map(|(_, f)| f.numerator_at(&nu) / &kint)
            .collect();
        certified.push(mus);
    }
    Ok(SolutionSet {
        k: system.k,
        profile: profile.clone(),
        variables: system.variables.clone(),
        labels,
        tuples: found,
        certified,
        outcome: EnumerationOutcome::Exhausted,
    })
}

fn congruences_hold(system: &ConstraintSystem, assignment: &[Int]) -> bool {
    for cong in &system.congruences {
        let m = Int::from(cong.modulus);
        let mut sum = Int::zero();
        for class in &cong.classes {
            if let Some(i) = system.variables.iter().position(|v| v == class) {
                sum += &assignment[i];
            }
        }
        if !(sum % &m).is_zero() {
            return false;
        }
    }
    true
}

/// Straight re-evaluation of every constraint at a tuple, independent of the
/// enumeration's pruning; acts as its oracle.
pub fn verify_solution(
    system: &ConstraintSystem,
    tuple: &PartialAugmentation,
) -> Result<(bool, Vec<(FormLabel, Rat)>), SolveError> {
    for (class, _) in tuple.entries() {
        if !system.variables.contains(class) {
            return Err(SolveError::UnknownVariable(class.clone()));
        }
    }
    let kint = Int::from(system.k);
    let mut ok = true;
    let mut report = Vec::new();
    for (label, form) in &system.forms {
        let num = form.numerator_at(tuple);
        let mu = Rat::new(num, kint.clone());
        if !mu.is_integer() || mu.is_negative() {
            ok = false;
        }
        report.push((label.clone(), mu));
    }
    let assignment: Vec<Int> = system.variables.iter().map(|v| tuple.get(v)).collect();
    let sum: Int = assignment.iter().sum();
    if sum != Int::from(1) {
        ok = false;
    }
    if !congruences_hold(system, &assignment) {
        ok = false;
    }
    Ok((ok, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::AffineForm;
    use std::collections::BTreeMap;

    fn single_var_system() -> ConstraintSystem {
        // one variable, one trivially satisfied form
        let mut coeffs = BTreeMap::new();
        coeffs.insert("2a".to_string(), Int::from(2));
        ConstraintSystem {
            k: 2,
            variables: vec!["2a".to_string()],
            forms: vec![(
                FormLabel {
                    table: crate::tables::TableKind::Ordinary,
                    character: "chi_1".into(),
                    l: 0,
                },
                AffineForm { k: 2, coeffs, constant: Int::from(0) },
            )],
            congruences: vec![],
            contributing_tables: vec![],
        }
    }

    #[test]
    fn single_variable_box_is_unit() {
        let sys = single_var_system();
        let b = bound_box(&sys).unwrap().unwrap();
        assert_eq!(b[0].0, Rat::from_integer(Int::from(1)));
        assert_eq!(b[0].1, Rat::from_integer(Int::from(1)));
        let set = enumerate_solutions(&sys, &PowerProfile::empty(2), 1000).unwrap();
        assert_eq!(set.tuples, vec![vec![Int::from(1)]]);
        assert_eq!(set.certified, vec![vec![Int::from(1)]]);
    }

    #[test]
    fn degenerate_system_is_unbounded() {
        // two variables, no forms binding them: only the augmentation
        let sys = ConstraintSystem {
            k: 4,
            variables: vec!["2a".to_string(), "4a".to_string()],
            forms: vec![],
            congruences: vec![],
            contributing_tables: vec![],
        };
        assert!(matches!(bound_box(&sys), Err(SolveError::Unbounded { .. })));
    }

    #[test]
    fn infeasible_relaxation_detected() {
        // 2a >= 1 (aug, single var) but form forces -2*2a - 4 >= 0
        let mut coeffs = BTreeMap::new();
        coeffs.insert("2a".to_string(), Int::from(-2));
        let sys = ConstraintSystem {
            k: 2,
            variables: vec!["2a".to_string()],
            forms: vec![(
                FormLabel {
                    table: crate::tables::TableKind::Ordinary,
                    character: "chi_1".into(),
                    l: 0,
                },
                AffineForm { k: 2, coeffs, constant: Int::from(-4) },
            )],
            congruences: vec![],
            contributing_tables: vec![],
        };
        let set = enumerate_solutions(&sys, &PowerProfile::empty(2), 1000).unwrap();
        assert!(set.is_empty());
        assert_eq!(set.outcome, EnumerationOutcome::InfeasibleRelaxation);
    }
}
