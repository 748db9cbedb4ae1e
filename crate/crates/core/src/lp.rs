//! Builds the exact affine constraint systems of the Luthar-Passi method:
//! for a candidate order k, a table bundle and a power profile, the mu_l
//! quantities become affine forms in the partial augmentations, together
//! with the augmentation equality and prime-power congruences.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde_json::Value;
use thiserror::Error;

use crate::arith::{self, divisors, fnv64, p_part, prime_divisors};
use crate::cyclo::{CycloError, Cyclotomic};
use crate::tables::{CharacterRow, CharacterTable, TableBundle, TableKind};
use crate::{Int, Rat};

#[derive(Debug, Error)]
pub enum LpError {
    #[error("partial augmentations must sum to 1 (got {0})")]
    BadAugmentationSum(Int),
    #[error("profile for order {k} is missing the assignment for order {m}")]
    MissingAssignment { k: u64, m: u64 },
    #[error("profile assignment for order {m} does not divide {k}")]
    BadAssignmentOrder { k: u64, m: u64 },
    #[error("class `{0}` is not present in the {1} table")]
    UnknownClass(String, TableKind),
    #[error("character `{chi}` not found in the {table} table")]
    UnknownCharacter { chi: String, table: TableKind },
    #[error("Brauer table p={p} requires gcd(p, k) = 1 but k = {k}")]
    NonCoprimeBrauer { p: u64, k: u64 },
    #[error("non-integral trace for {label}: {value} (corrupted table data)")]
    NonIntegralTrace { label: String, value: Rat },
    #[error(transparent)]
    Cyclo(#[from] CycloError),
}

/// A tuple of partial augmentations nu_C, with sum 1 (Berman's nu_1 = 0 is
/// implicit: the identity class never appears).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PartialAugmentation {
    entries: BTreeMap<String, Int>,
}

impl PartialAugmentation {
    pub fn new(entries: BTreeMap<String, Int>) -> Result<Self, LpError> {
        let sum: Int = entries.values().sum();
        if !sum.is_one() {
            return Err(LpError::BadAugmentationSum(sum));
        }
        Ok(PartialAugmentation {
            entries: entries.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        })
    }

    pub fn delta(class: &str) -> Self {
        let mut entries = BTreeMap::new();
        entries.insert(class.to_string(), Int::one());
        PartialAugmentation { entries }
    }

    pub fn from_tuple(variables: &[String], values: &[Int]) -> Result<Self, LpError> {
        Self::new(
            variables
                .iter()
                .cloned()
                .zip(values.iter().cloned())
                .collect(),
        )
    }

    pub fn get(&self, class: &str) -> Int {
        self.entries.get(class).cloned().unwrap_or_else(Int::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&String, &Int)> {
        self.entries.iter()
    }

    /// True iff exactly one entry is nonzero (it is then 1 by the sum rule).
    pub fn is_delta(&self) -> bool {
        self.entries.len() == 1
    }

    pub fn tuple(&self, variables: &[String]) -> Vec<Int> {
        variables.iter().map(|v| self.get(v)).collect()
    }

    pub fn to_json(&self) -> Value {
        let map: serde_json::Map<String, Value> = self
            .entries
            .iter()
            .map(|(c, v)| (c.clone(), Value::from(i64::try_from(v).expect("small"))))
            .collect();
        Value::Object(map)
    }
}

/// For each order m with m | k, 1 < m < k, the partial-augmentation tuple
/// chosen for u^{k/m}: one of the paper's "cases".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerProfile {
    pub k: u64,
    assignments: BTreeMap<u64, PartialAugmentation>,
}

impl PowerProfile {
    pub fn new(k: u64, assignments: BTreeMap<u64, PartialAugmentation>) -> Result<Self, LpError> {
        for &m in assignments.keys() {
            if m <= 1 || m >= k || k % m != 0 {
                return Err(LpError::BadAssignmentOrder { k, m });
            }
        }
        Ok(PowerProfile { k, assignments })
    }

    pub fn empty(k: u64) -> Self {
        PowerProfile { k, assignments: BTreeMap::new() }
    }

    pub fn assignment(&self, m: u64) -> Option<&PartialAugmentation> {
        self.assignments.get(&m)
    }

    pub fn assignments(&self) -> impl Iterator<Item = (u64, &PartialAugmentation)> {
        self.assignments.iter().map(|(m, t)| (*m, t))
    }

    /// The induced sub-profile for a divisor m of k.
    pub fn restricted(&self, m: u64) -> PowerProfile {
        let assignments = self
            .assignments
            .iter()
            .filter(|(&d, _)| d < m && m % d == 0)
            .map(|(&d, t)| (d, t.clone()))
            .collect();
        PowerProfile { k: m, assignments }
    }

    /// Every assigned tuple in the chain has a single nonzero entry.
    pub fn is_delta_chain(&self) -> bool {
        self.assignments.values().all(PartialAugmentation::is_delta)
    }

    pub fn to_json(&self) -> Value {
        let map: serde_json::Map<String, Value> = self
            .assignments
            .iter()
            .map(|(m, t)| (m.to_string(), t.to_json()))
            .collect();
        serde_json::json!({ "k": self.k, "assignments": map })
    }

    /// Stable digest used as the cache key component.
    pub fn digest(&self) -> String {
        fnv64(self.to_json().to_string().as_bytes())
    }

    /// Profile induced by the table's power maps for a trivial unit in `class`.
    pub fn induced_by_power_maps(table: &CharacterTable, class: &str, k: u64) -> Option<Self> {
        let mut assignments = BTreeMap::new();
        for m in divisors(k) {
            if m <= 1 || m >= k {
                continue;
            }
            let target = table.power_class(class, k / m)?;
            assignments.insert(m, PartialAugmentation::delta(&target));
        }
        Some(PowerProfile { k, assignments })
    }
}

/// mu = (sum of coeffs(C) * nu_C, plus the constant) / k, with integer data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineForm {
    pub k: u64,
    pub coeffs: BTreeMap<String, Int>,
    pub constant: Int,
}

impl AffineForm {
    /// Numerator at a tuple; mu itself is numerator / k.
    pub fn numerator_at(&self, nu: &PartialAugmentation) -> Int {
        let mut acc = self.constant.clone();
        for (c, a) in &self.coeffs {
            acc += a * nu.get(c);
        }
        acc
    }

    pub fn plus(&self, other: &AffineForm) -> AffineForm {
        assert_eq!(self.k, other.k);
        let mut coeffs = self.coeffs.clone();
        for (c, a) in &other.coeffs {
            let entry = coeffs.entry(c.clone()).or_insert_with(Int::zero);
            *entry += a;
        }
        AffineForm { k: self.k, coeffs, constant: &self.constant + &other.constant }
    }

    pub fn to_json(&self) -> Value {
        let coeffs: serde_json::Map<String, Value> = self
            .coeffs
            .iter()
            .map(|(c, a)| (c.clone(), Value::String(a.to_string())))
            .collect();
        serde_json::json!({
            "coeffs": coeffs,
            "constant": self.constant.to_string(),
            "denominator": self.k,
        })
    }
}

/// Identifies one form: which table, which character row, which l.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct FormLabel {
    pub table: TableKind,
    pub character: String,
    pub l: u64,
}

impl fmt::Display for FormLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "mu_{}(u,{},{})", self.l, self.character, self.table)
    }
}

/// Sum over a subset of variables is divisible by `modulus`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Congruence {
    pub classes: Vec<String>,
    pub modulus: u64,
}

#[derive(Debug, Clone)]
pub struct ConstraintSystem {
    pub k: u64,
    pub variables: Vec<String>,
    pub forms: Vec<(FormLabel, AffineForm)>,
    pub congruences: Vec<Congruence>,
    pub contributing_tables: Vec<TableKind>,
}

impl ConstraintSystem {
    pub fn to_json(&self) -> Value {
        let forms: Vec<Value> = self
            .forms
            .iter()
            .map(|(label, form)| {
                let mut obj = form.to_json();
                obj.as_object_mut()
                    .unwrap()
                    .insert("label".into(), Value::String(label.to_string()));
                obj
            })
            .collect();
        let congruences: Vec<Value> = self
            .congruences
            .iter()
            .map(|c| serde_json::json!({ "classes": c.classes, "modulus": c.modulus }))
            .collect();
        serde_json::json!({
            "order": self.k,
            "variables": self.variables,
            "forms": forms,
            "augmentation": "sum nu = 1",
            "congruences": congruences,
        })
    }
}

/// Which character rows contribute forms to a system.
#[derive(Debug, Clone)]
pub enum CharacterSelection {
    /// Every row of every admissible table, every l in 0..k.
    All,
    /// A named subset per order (paper-regression mode).
    Named(BTreeMap<u64, Vec<FormSpec>>),
}

#[derive(Debug, Clone)]
pub struct FormSpec {
    pub table: TableKind,
    pub character: String,
    pub ls: Vec<u64>,
}

/// Classes whose partial augmentation may be nonzero for a unit of order k:
/// the identity is excluded and every p-part of the class order must not
/// exceed the p-part of k.
pub fn allowed_classes(k: u64, table: &CharacterTable) -> Vec<String> {
    table
        .classes
        .iter()
        .filter(|c| c.element_order > 1)
        .filter(|c| {
            prime_divisors(c.element_order)
                .into_iter()
                .all(|p| p_part(c.element_order, p) <= p_part(k, p))
        })
        .map(|c| c.name.clone())
        .collect()
}

/// chi(u^d) as an exact cyclotomic value: the degree when u^d = 1, otherwise
/// the profile's order-(k/d) tuple paired with the row's class values.
pub fn chi_of_power(
    profile: &PowerProfile,
    table: &CharacterTable,
    row: &CharacterRow,
    d: u64,
) -> Result<Cyclotomic, LpError> {
    let k = profile.k;
    debug_assert_eq!(k % d, 0);
    let m = k / d;
    if m == 1 {
        return Ok(Cyclotomic::from_rat(Rat::from_integer(Int::from(row.degree))));
    }
    let tuple = profile
        .assignment(m)
        .ok_or(LpError::MissingAssignment { k, m })?;
    let mut acc = Cyclotomic::zero();
    for (class, nu) in tuple.entries() {
        let value = table
            .value(row, class)
            .ok_or_else(|| LpError::UnknownClass(class.clone(), table.kind))?;
        acc = acc.add(&value.scale(&Rat::from_integer(nu.clone())));
    }
    Ok(acc)
}

/// The affine form whose value at any tuple equals mu_l of the Luthar-Passi
/// inequality.  The d = 1 term contributes the variable coefficients, the
/// d > 1 terms the constant.
pub fn build_mu(
    k: u64,
    l: u64,
    table: &CharacterTable,
    row: &CharacterRow,
    profile: &PowerProfile,
    variables: &[String],
) -> Result<AffineForm, LpError> {
    let label = FormLabel { table: table.kind, character: row.id.clone(), l };
    let as_int = |value: Rat| -> Result<Int, LpError> {
        if value.is_integer() {
            Ok(value.to_integer())
        } else {
            Err(LpError::NonIntegralTrace { label: label.to_string(), value })
        }
    };
    let mut coeffs = BTreeMap::new();
    let lneg = -(l as i64);
    for class in variables {
        let value = table
            .value(row, class)
            .ok_or_else(|| LpError::UnknownClass(class.clone(), table.kind))?;
        let coeff = as_int(value.trace_times_root(k, lneg)?)?;
        coeffs.insert(class.clone(), coeff);
    }
    let mut constant = Int::zero();
    for d in divisors(k) {
        if d == 1 {
            continue;
        }
        let m = k / d;
        let val = chi_of_power(profile, table, row, d)?;
        constant += as_int(val.trace_times_root(m.max(1), lneg)?)?;
    }
    Ok(AffineForm { k, coeffs, constant })
}

/// Cohn-Livingstone congruences for prime-power orders k = p^n: for each
/// 1 <= m < n, the allowed classes of element order p^m must have nu-sum
/// divisible by p.
pub fn divisibility_constraints(k: u64, table: &CharacterTable) -> Vec<Congruence> {
    let factors = arith::factorize(k);
    if factors.len() != 1 {
        return Vec::new();
    }
    let (p, n) = factors[0];
    let allowed = allowed_classes(k, table);
    let mut out = Vec::new();
    for m in 1..n {
        let pm = p.pow(m);
        let classes: Vec<String> = allowed
            .iter()
            .filter(|name| table.class(name).map(|c| c.element_order) == Some(pm))
            .cloned()
            .collect();
        if !classes.is_empty() {
            out.push(Congruence { classes, modulus: p });
        }
    }
    out
}

/// Assemble the full constraint system for order k under the profile.
/// Brauer tables with p | k are skipped (the coprimality hypothesis); the
/// contributing tables are recorded for the report.
pub fn build_system(
    k: u64,
    bundle: &TableBundle,
    profile: &PowerProfile,
    selection: &CharacterSelection,
) -> Result<ConstraintSystem, LpError> {
    let variables = allowed_classes(k, &bundle.ordinary);
    let mut forms = Vec::new();
    let mut contributing = Vec::new();

    let mut tables: Vec<&CharacterTable> = vec![&bundle.ordinary];
    for (&p, t) in &bundle.brauer {
        if arith::gcd(p, k) == 1 {
            tables.push(t);
        }
    }

    match selection {
        CharacterSelection::All => {
            for table in &tables {
                contributing.push(table.kind);
                for row in &table.characters {
                    for l in 0..k {
                        let form = build_mu(k, l, table, row, profile, &variables)?;
                        forms.push((
                            FormLabel { table: table.kind, character: row.id.clone(), l },
                            form,
                        ));
                    }
                }
            }
        }
        CharacterSelection::Named(by_order) => {
            for spec in by_order.get(&k).map(Vec::as_slice).unwrap_or(&[]) {
                let Some(table) = tables.iter().find(|t| t.kind == spec.table) else {
                    // missing table: the caller decides whether to warn
                    continue;
                };
                contributing.push(table.kind);
                let (_, row) = table.character(&spec.character).ok_or_else(|| {
                    LpError::UnknownCharacter { chi: spec.character.clone(), table: spec.table }
                })?;
                for &l in &spec.ls {
                    let form = build_mu(k, l, table, row, profile, &variables)?;
                    forms.push((
                        FormLabel { table: table.kind, character: row.id.clone(), l },
                        form,
                    ));
                }
            }
            contributing.dedup();
        }
    }

    // stable order: ordinary first, then Brauer primes ascending; rows in
    // table order; l ascending
    let row_rank = |label: &FormLabel| -> (u8, u64, usize, u64) {
        let (tk, p) = match label.table {
            TableKind::Ordinary => (0u8, 0u64),
            TableKind::Brauer(p) => (1, p),
        };
        let idx = bundle
            .table(label.table)
            .and_then(|t| t.character(&label.character).map(|(i, _)| i))
            .unwrap_or(usize::MAX);
        (tk, p, idx, label.l)
    };
    forms.sort_by(|a, b| row_rank(&a.0).cmp(&row_rank(&b.0)));

    Ok(ConstraintSystem {
        k,
        variables,
        forms,
        congruences: divisibility_constraints(k, &bundle.ordinary),
        contributing_tables: contributing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn augmentation_sum_enforced() {
        let mut m = BTreeMap::new();
        m.insert("2a".to_string(), Int::from(2));
        assert!(PartialAugmentation::new(m.clone()).is_err());
        m.insert("4a".to_string(), Int::from(-1));
        let pa = PartialAugmentation::new(m).unwrap();
        assert!(!pa.is_delta());
        assert_eq!(pa.get("2a"), Int::from(2));
        assert_eq!(pa.get("8a"), Int::from(0));
    }

    #[test]
    fn profile_restriction() {
        let mut m = BTreeMap::new();
        m.insert(2, PartialAugmentation::delta("2a"));
        m.insert(4, PartialAugmentation::delta("4a"));
        let p = PowerProfile::new(8, m).unwrap();
        let r = p.restricted(4);
        assert_eq!(r.k, 4);
        assert!(r.assignment(2).is_some());
        assert!(r.assignment(4).is_none());
        assert!(p.is_delta_chain());
    }

    #[test]
    fn digest_is_stable() {
        let p = PowerProfile::empty(7);
        assert_eq!(p.digest(), PowerProfile::empty(7).digest());
        assert_ne!(p.digest(), PowerProfile::empty(11).digest());
    }
}
