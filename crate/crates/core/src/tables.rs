//! Data model, ingestion and validation for ordinary and p-Brauer character
//! tables.  Files are the only ingestion path; parsing canonicalises every
//! character value.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;

use serde_json::Value;
use thiserror::Error;

use crate::arith::{self, lcm};
use crate::cyclo::{CycloError, Cyclotomic};
use crate::{Int, Rat};

#[derive(Debug, Error)]
pub enum TableError {
    #[error("structural error: {0}")]
    Structure(String),
    #[error("semantic error: {0}")]
    Semantic(String),
    #[error("bad cyclotomic value for character {chi} at class {class}: {source}")]
    Value {
        chi: String,
        class: String,
        source: CycloError,
    },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjClass {
    pub name: String,
    pub element_order: u64,
    pub centralizer_order: u64,
    /// prime p -> name of the class containing g^p
    pub power_map: BTreeMap<u64, String>,
}

#[derive(Debug, Clone)]
pub struct CharacterRow {
    pub id: String,
    pub degree: u64,
    pub values: Vec<Cyclotomic>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum TableKind {
    Ordinary,
    Brauer(u64),
}

impl fmt::Display for TableKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableKind::Ordinary => write!(f, "*"),
            TableKind::Brauer(p) => write!(f, "{p}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CharacterTable {
    pub group_name: String,
    pub group_order: u64,
    pub kind: TableKind,
    pub classes: Vec<ConjClass>,
    pub characters: Vec<CharacterRow>,
    index: BTreeMap<String, usize>,
}

#[derive(Debug, Clone)]
pub struct TableBundle {
    pub ordinary: CharacterTable,
    pub brauer: BTreeMap<u64, CharacterTable>,
}

#[derive(Debug, Default)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

fn get<'a>(obj: &'a Value, key: &str) -> Result<&'a Value, TableError> {
    obj.get(key)
        .ok_or_else(|| TableError::Structure(format!("missing field `{key}`")))
}

fn get_u64(obj: &Value, key: &str) -> Result<u64, TableError> {
    get(obj, key)?
        .as_u64()
        .ok_or_else(|| TableError::Structure(format!("field `{key}` must be a positive integer")))
}

fn get_str<'a>(obj: &'a Value, key: &str) -> Result<&'a str, TableError> {
    get(obj, key)?
        .as_str()
        .ok_or_else(|| TableError::Structure(format!("field `{key}` must be a string")))
}

/// Parse a table document (see the JSON schema in the README).
pub fn parse_table(bytes: &[u8]) -> Result<CharacterTable, TableError> {
    let doc: Value = serde_json::from_slice(bytes)?;
    let group_name = get_str(&doc, "group")?.to_string();
    let group_order = get_u64(&doc, "order")?;
    let kind = match get(&doc, "kind")? {
        Value::String(s) if s == "ordinary" => TableKind::Ordinary,
        Value::Object(obj) => {
            let p = obj
                .get("brauer")
                .and_then(Value::as_u64)
                .ok_or_else(|| TableError::Structure("kind object must be {\"brauer\": p}".into()))?;
            TableKind::Brauer(p)
        }
        other => {
            return Err(TableError::Structure(format!(
                "kind must be \"ordinary\" or {{\"brauer\": p}}, got {other}"
            )))
        }
    };

    let classes_json = get(&doc, "classes")?
        .as_array()
        .ok_or_else(|| TableError::Structure("`classes` must be an array".into()))?;
    let mut classes = Vec::new();
    let mut index = BTreeMap::new();
    for c in classes_json {
        let name = get_str(c, "name")?.to_string();
        let element_order = get_u64(c, "order")?;
        let centralizer_order = get_u64(c, "centralizer")?;
        let pm_json = get(c, "powermap")?
            .as_object()
            .ok_or_else(|| TableError::Structure("`powermap` must be an object".into()))?;
        let mut power_map = BTreeMap::new();
        for (p, target) in pm_json {
            let p: u64 = p
                .parse()
                .map_err(|_| TableError::Structure(format!("bad powermap prime `{p}`")))?;
            let target = target
                .as_str()
                .ok_or_else(|| TableError::Structure("powermap target must be a class name".into()))?;
            power_map.insert(p, target.to_string());
        }
        if index.insert(name.clone(), classes.len()).is_some() {
            return Err(TableError::Semantic(format!("duplicate class name `{name}`")));
        }
        classes.push(ConjClass { name, element_order, centralizer_order, power_map });
    }
    for c in &classes {
        for target in c.power_map.values() {
            if !index.contains_key(target) {
                return Err(TableError::Semantic(format!(
                    "powermap of class `{}` references unknown class `{target}`",
                    c.name
                )));
            }
        }
    }

    let chars_json = get(&doc, "characters")?
        .as_array()
        .ok_or_else(|| TableError::Structure("`characters` must be an array".into()))?;
    let mut characters = Vec::new();
    let mut seen_ids = BTreeSet::new();
    for ch in chars_json {
        let id = get_str(ch, "id")?.to_string();
        if !seen_ids.insert(id.clone()) {
            return Err(TableError::Semantic(format!("duplicate character id `{id}`")));
        }
        let degree = get_u64(ch, "degree")?;
        let values_json = get(ch, "values")?
            .as_array()
            .ok_or_else(|| TableError::Structure("`values` must be an array".into()))?;
        if values_json.len() != classes.len() {
            return Err(TableError::Structure(format!(
                "character `{id}` has {} values for {} classes",
                values_json.len(),
                classes.len()
            )));
        }
        let mut values = Vec::new();
        for (v, class) in values_json.iter().zip(&classes) {
            let val = Cyclotomic::from_json(v).map_err(|source| TableError::Value {
                chi: id.clone(),
                class: class.name.clone(),
                source,
            })?;
            values.push(val);
        }
        characters.push(CharacterRow { id, degree, values });
    }

    Ok(CharacterTable { group_name, group_order, kind, classes, characters, index })
}

/// Serialise back to the document schema (canonical, key-sorted JSON).
pub fn serialize_table(t: &CharacterTable) -> Value {
    let kind = match t.kind {
        TableKind::Ordinary => Value::String("ordinary".into()),
        TableKind::Brauer(p) => serde_json::json!({ "brauer": p }),
    };
    let classes: Vec<Value> = t
        .classes
        .iter()
        .map(|c| {
            let pm: serde_json::Map<String, Value> = c
                .power_map
                .iter()
                .map(|(p, target)| (p.to_string(), Value::String(target.clone())))
                .collect();
            serde_json::json!({
                "name": c.name,
                "order": c.element_order,
                "centralizer": c.centralizer_order,
                "powermap": pm,
            })
        })
        .collect();
    let characters: Vec<Value> = t
        .characters
        .iter()
        .map(|ch| {
            serde_json::json!({
                "id": ch.id,
                "degree": ch.degree,
                "values": ch.values.iter().map(Cyclotomic::to_json).collect::<Vec<_>>(),
            })
        })
        .collect();
    serde_json::json!({
        "group": t.group_name,
        "order": t.group_order,
        "kind": kind,
        "classes": classes,
        "characters": characters,
    })
}

impl CharacterTable {
    pub fn class_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn class(&self, name: &str) -> Option<&ConjClass> {
        self.class_index(name).map(|i| &self.classes[i])
    }

    pub fn character(&self, id: &str) -> Option<(usize, &CharacterRow)> {
        self.characters
            .iter()
            .enumerate()
            .find(|(_, ch)| ch.id == id)
    }

    pub fn value<'r>(&self, row: &'r CharacterRow, class: &str) -> Option<&'r Cyclotomic> {
        self.class_index(class).map(|i| &row.values[i])
    }

    /// Class of g^d for g in `class`, by iterated prime power maps.
    pub fn power_class(&self, class: &str, mut d: u64) -> Option<String> {
        let mut name = class.to_string();
        while d > 1 {
            let p = arith::prime_divisors(d)[0];
            let c = self.class(&name)?;
            name = c.power_map.get(&p)?.clone();
            d /= p;
        }
        Some(name)
    }

    /// lcm of element orders (the exponent of the group, for ordinary tables).
    pub fn exponent(&self) -> u64 {
        self.classes.iter().fold(1, |acc, c| lcm(acc, c.element_order))
    }

    pub fn digest(&self) -> String {
        arith::fnv64(serialize_table(self).to_string().as_bytes())
    }
}

/// Integrity oracle over ingested data; violations are report entries.
pub fn validate_table(t: &CharacterTable) -> ValidationReport {
    let mut report = ValidationReport::default();
    let mut push = |s: String| report.violations.push(s);

    // class-level invariants
    let mut size_sum: u64 = 0;
    for c in &t.classes {
        let prefix: String = c.name.chars().take_while(|ch| ch.is_ascii_digit()).collect();
        if prefix.parse::<u64>().ok() != Some(c.element_order) {
            push(format!(
                "class `{}`: name prefix does not match element order {}",
                c.name, c.element_order
            ));
        }
        if c.centralizer_order == 0 || t.group_order % c.centralizer_order != 0 {
            push(format!(
                "class `{}`: centralizer order {} does not divide group order",
                c.name, c.centralizer_order
            ));
        } else {
            size_sum += t.group_order / c.centralizer_order;
        }
        for (&p, target) in &c.power_map {
            if let Some(tc) = t.class(target) {
                let want = c.element_order / arith::gcd(c.element_order, p);
                if tc.element_order != want {
                    push(format!(
                        "class `{}`: power map at {} lands on `{}` of order {} (expected {})",
                        c.name, p, target, tc.element_order, want
                    ));
                }
            }
        }
    }

    match t.kind {
        TableKind::Ordinary => {
            if size_sum != t.group_order {
                push(format!(
                    "class sizes sum to {size_sum}, expected the group order {}",
                    t.group_order
                ));
            }
            if t.characters.len() != t.classes.len() {
                push(format!(
                    "{} characters for {} classes",
                    t.characters.len(),
                    t.classes.len()
                ));
            }
            validate_identity_column(t, &mut report);
            validate_orthogonality(t, &mut report);
            validate_power_compatibility(t, &mut report);
        }
        TableKind::Brauer(p) => {
            if t.group_order % p != 0 {
                report
                    .violations
                    .push(format!("Brauer prime {p} does not divide the group order"));
            }
            for c in &t.classes {
                if c.element_order % p == 0 {
                    report.violations.push(format!(
                        "class `{}` of order {} is not {p}-regular",
                        c.name, c.element_order
                    ));
                }
            }
            for ch in &t.characters {
                if ch.degree == 0 {
                    report
                        .violations
                        .push(format!("character `{}` has non-positive degree", ch.id));
                }
            }
            validate_identity_column(t, &mut report);
            validate_power_compatibility(t, &mut report);
        }
    }
    report
}

fn validate_identity_column(t: &CharacterTable, report: &mut ValidationReport) {
    let Some(i) = t
        .classes
        .iter()
        .position(|c| c.element_order == 1)
    else {
        report.violations.push("no identity class".into());
        return;
    };
    for ch in &t.characters {
        if ch.values[i] != Cyclotomic::from_rat(Rat::from_integer(Int::from(ch.degree))) {
            report.violations.push(format!(
                "character `{}`: identity value differs from degree {}",
                ch.id, ch.degree
            ));
        }
    }
}

fn validate_orthogonality(t: &CharacterTable, report: &mut ValidationReport) {
    let order = Rat::from_integer(Int::from(t.group_order));
    let sizes: Vec<Rat> = t
        .classes
        .iter()
        .map(|c| Rat::from_integer(Int::from(t.group_order / c.centralizer_order.max(1))))
        .collect();
    for i in 0..t.characters.len() {
        for j in i..t.characters.len() {
            let mut sum = Cyclotomic::zero();
            for (k, size) in sizes.iter().enumerate() {
                let prod = t.characters[i].values[k]
                    .mul(&t.characters[j].values[k].conj())
                    .scale(size);
                sum = sum.add(&prod);
            }
            let want = if i == j { order.clone() } else { Rat::from_integer(Int::from(0)) };
            if sum.as_rational() != Some(want) {
                report.violations.push(format!(
                    "orthogonality fails for characters `{}`, `{}`",
                    t.characters[i].id, t.characters[j].id
                ));
            }
        }
    }
}

fn validate_power_compatibility(t: &CharacterTable, report: &mut ValidationReport) {
    // chi(C^p) = sigma_p(chi(C)) whenever p is coprime to the element order
    for c in &t.classes {
        for (&p, target) in &c.power_map {
            if c.element_order % p == 0 {
                continue;
            }
            let (Some(ci), Some(ti)) = (t.class_index(&c.name), t.class_index(target)) else {
                continue;
            };
            for ch in &t.characters {
                match ch.values[ci].galois_apply(p as i64) {
                    Ok(img) if img == ch.values[ti] => {}
                    _ => report.violations.push(format!(
                        "character `{}`: value at `{target}` is not the Galois image of `{}` under {p}",
                        ch.id, c.name
                    )),
                }
            }
        }
    }
}

/// Load every table document in a directory into a bundle; non-table JSON
/// files are skipped.  Returns the bundle plus any warnings.
pub fn load_bundle(dir: &Path) -> Result<(TableBundle, Vec<String>), TableError> {
    let mut ordinary = None;
    let mut brauer = BTreeMap::new();
    let mut warnings = Vec::new();
    let mut entries: Vec<_> = std::fs::read_dir(dir)?
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .map(|e| e.path())
        .filter(|p| p.extension().map(|e| e == "json").unwrap_or(false))
        .collect();
    entries.sort();
    if entries.is_empty() {
        return Err(TableError::Structure(format!("no tables found in {}", dir.display())));
    }
    for path in entries {
        let bytes = std::fs::read(&path)?;
        // files without a `kind` field are not table documents (e.g. the
        // character-selection config) and are skipped
        if let Ok(v) = serde_json::from_slice::<Value>(&bytes) {
            if v.get("kind").is_none() {
                continue;
            }
        }
        let table = parse_table(&bytes).map_err(|e| {
            TableError::Structure(format!("{}: {e}", path.display()))
        })?;
        match table.kind {
            TableKind::Ordinary => {
                if ordinary.is_some() {
                    return Err(TableError::Semantic(format!(
                        "multiple ordinary tables in {}",
                        dir.display()
                    )));
                }
                ordinary = Some(table);
            }
            TableKind::Brauer(p) => {
                if brauer.insert(p, table).is_some() {
                    return Err(TableError::Semantic(format!("duplicate Brauer table for p={p}")));
                }
            }
        }
    }
    let ordinary = ordinary
        .ok_or_else(|| TableError::Semantic(format!("no ordinary table in {}", dir.display())))?;
    for (p, t) in &brauer {
        if t.group_name != ordinary.group_name || t.group_order != ordinary.group_order {
            return Err(TableError::Semantic(format!(
                "Brauer table for p={p} belongs to a different group"
            )));
        }
        for c in &t.classes {
            match ordinary.class(&c.name) {
                None => {
                    return Err(TableError::Semantic(format!(
                        "Brauer class `{}` (p={p}) is missing from the ordinary table",
                        c.name
                    )))
                }
                Some(oc) => {
                    if oc.element_order != c.element_order {
                        return Err(TableError::Semantic(format!(
                            "class `{}` order differs between tables",
                            c.name
                        )));
                    }
                    for (&q, target) in &c.power_map {
                        if t.class(target).is_some() && oc.power_map.get(&q) != Some(target) {
                            warnings.push(format!(
                                "class `{}`: power map at {q} differs from the ordinary table",
                                c.name
                            ));
                        }
                    }
                }
            }
        }
    }
    Ok((TableBundle { ordinary, brauer }, warnings))
}

impl TableBundle {
    pub fn table(&self, kind: TableKind) -> Option<&CharacterTable> {
        match kind {
            TableKind::Ordinary => Some(&self.ordinary),
            TableKind::Brauer(p) => self.brauer.get(&p),
        }
    }

    /// Orders of actual group elements, ascending and deduplicated.
    pub fn element_orders(&self) -> Vec<u64> {
        let mut orders: Vec<u64> = self.ordinary.classes.iter().map(|c| c.element_order).collect();
        orders.sort_unstable();
        orders.dedup();
        orders
    }
}
