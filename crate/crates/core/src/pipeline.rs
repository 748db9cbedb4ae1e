//! Order-by-order workflow: candidate orders from the exponent, recursive
//! power-profile case analysis, exclusion and rational-conjugacy
//! classification, caching, and the prime-graph comparison.

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;
use std::str::FromStr;

use serde_json::Value;
use thiserror::Error;

use crate::arith::{self, divisors, fnv64};
use crate::lp::{self, CharacterSelection, FormLabel, LpError, PartialAugmentation, PowerProfile};
use crate::solver::{self, EnumerationOutcome, SolveError, SolutionSet};
use crate::tables::{TableBundle, TableKind};
use crate::Int;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("order {k}: prerequisite order {m} has not been solved")]
    MissingPrereq { k: u64, m: u64 },
    #[error("order {k}: trivial tuple for class `{class}` is missing (corrupted data)")]
    Soundness { k: u64, class: String },
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("cache io error: {0}")]
    CacheIo(#[from] std::io::Error),
    #[error("cache format error: {0}")]
    CacheFormat(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderStatus {
    /// No solutions over all coherent profiles.
    Excluded,
    /// Element order, and every surviving chain is a delta chain.
    Rational,
    /// Nonempty solution sets, listed.
    Constrained,
    /// Case or box explosion exceeded the configured caps.
    Capped,
}

impl OrderStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            OrderStatus::Excluded => "EXCLUDED",
            OrderStatus::Rational => "RATIONAL",
            OrderStatus::Constrained => "CONSTRAINED",
            OrderStatus::Capped => "CAPPED",
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolutionNode {
    pub profile: PowerProfile,
    pub set: SolutionSet,
}

#[derive(Debug, Clone)]
pub struct OrderVerdict {
    pub k: u64,
    pub status: OrderStatus,
    pub nodes: Vec<SolutionNode>,
    pub profile_count: u64,
    /// statistics recorded when the caps fire
    pub cap_note: Option<String>,
}

impl OrderVerdict {
    /// Distinct surviving tuples over all profiles, sorted.
    pub fn union_tuples(&self) -> Vec<Vec<Int>> {
        let mut out: Vec<Vec<Int>> = self
            .nodes
            .iter()
            .flat_map(|n| n.set.tuples.iter().cloned())
            .collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn variables(&self) -> Vec<String> {
        self.nodes
            .first()
            .map(|n| n.set.variables.clone())
            .unwrap_or_default()
    }
}

/// True iff the tuple and every tuple in its profile chain has exactly one
/// nonzero partial augmentation.
pub fn classify_rational_conjugacy(tuple: &PartialAugmentation, profile: &PowerProfile) -> bool {
    tuple.is_delta() && profile.is_delta_chain()
}

/// All divisors of the exponent greater than 1, ascending.
pub fn candidate_orders(bundle: &TableBundle) -> Vec<u64> {
    divisors(bundle.ordinary.exponent())
        .into_iter()
        .filter(|&d| d > 1)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeGraph {
    pub vertices: BTreeSet<u64>,
    pub edges: BTreeSet<(u64, u64)>,
}

/// Vertices are primes dividing a listed order; an edge {p, q} appears iff
/// some listed order is divisible by pq.
pub fn prime_graph(orders: &[u64]) -> PrimeGraph {
    let mut vertices = BTreeSet::new();
    let mut edges = BTreeSet::new();
    for &n in orders {
        let primes = arith::prime_divisors(n);
        for &p in &primes {
            vertices.insert(p);
        }
        for i in 0..primes.len() {
            for j in i + 1..primes.len() {
                edges.insert((primes[i], primes[j]));
            }
        }
    }
    PrimeGraph { vertices, edges }
}

#[derive(Debug, Clone)]
pub struct KimmerleReport {
    pub group_graph: PrimeGraph,
    pub unit_graph: PrimeGraph,
    pub equal: bool,
    pub extra_edges: Vec<(u64, u64)>,
    pub extra_vertices: Vec<u64>,
}

#[derive(Debug, Clone)]
pub struct PipelineConfig {
    pub selection: CharacterSelection,
    pub profile_cap: u64,
    pub box_cap: u128,
    pub jobs: usize,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            selection: CharacterSelection::All,
            profile_cap: 10_000,
            box_cap: 100_000_000,
            jobs: 1,
        }
    }
}

impl PipelineConfig {
    pub fn digest(&self) -> String {
        let sel = match &self.selection {
            CharacterSelection::All => "all".to_string(),
            CharacterSelection::Named(map) => {
                let mut s = String::from("named:");
                for (k, specs) in map {
                    s.push_str(&format!("{k}=["));
                    for spec in specs {
                        s.push_str(&format!("{}:{}:{:?};", spec.table, spec.character, spec.ls));
                    }
                    s.push(']');
                }
                s
            }
        };
        fnv64(format!("{sel}|{}|{}", self.profile_cap, self.box_cap).as_bytes())
    }
}

/// Append-only cache of solution sets keyed by (order, profile digest).
#[derive(Debug, Default)]
pub struct SolutionCache {
    mem: BTreeMap<(u64, String), SolutionSet>,
    dir: Option<PathBuf>,
}

impl SolutionCache {
    pub fn in_memory() -> Self {
        SolutionCache::default()
    }

    pub fn with_dir(dir: PathBuf) -> Self {
        SolutionCache { mem: BTreeMap::new(), dir: Some(dir) }
    }

    fn path(&self, k: u64, digest: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("order_{k}")).join(format!("{digest}.json")))
    }

    pub fn get(&mut self, k: u64, digest: &str) -> Result<Option<SolutionSet>, PipelineError> {
        if let Some(s) = self.mem.get(&(k, digest.to_string())) {
            return Ok(Some(s.clone()));
        }
        if let Some(path) = self.path(k, digest) {
            if path.exists() {
                let bytes = std::fs::read(&path)?;
                let value: Value = serde_json::from_slice(&bytes)
                    .map_err(|e| PipelineError::CacheFormat(e.to_string()))?;
                let set = solution_set_from_json(&value)?;
                self.mem.insert((k, digest.to_string()), set.clone());
                return Ok(Some(set));
            }
        }
        Ok(None)
    }

    pub fn put(&mut self, set: &SolutionSet) -> Result<(), PipelineError> {
        let digest = set.profile.digest();
        if let Some(path) = self.path(set.k, &digest) {
            std::fs::create_dir_all(path.parent().unwrap())?;
            std::fs::write(&path, set.to_json().to_string())?;
        }
        self.mem.insert((set.k, digest), set.clone());
        Ok(())
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(u64, String), &SolutionSet)> {
        self.mem.iter()
    }
}

fn partial_augmentation_from_json(v: &Value) -> Result<PartialAugmentation, PipelineError> {
    let obj = v
        .as_object()
        .ok_or_else(|| PipelineError::CacheFormat("tuple must be an object".into()))?;
    let mut entries = BTreeMap::new();
    for (c, val) in obj {
        let n = val
            .as_i64()
            .ok_or_else(|| PipelineError::CacheFormat("tuple entries must be integers".into()))?;
        entries.insert(c.clone(), Int::from(n));
    }
    PartialAugmentation::new(entries).map_err(|e| PipelineError::CacheFormat(e.to_string()))
}

fn profile_from_json(v: &Value) -> Result<PowerProfile, PipelineError> {
    let k = v
        .get("k")
        .and_then(Value::as_u64)
        .ok_or_else(|| PipelineError::CacheFormat("profile is missing k".into()))?;
    let mut assignments = BTreeMap::new();
    if let Some(map) = v.get("assignments").and_then(Value::as_object) {
        for (m, tup) in map {
            let m: u64 = m
                .parse()
                .map_err(|_| PipelineError::CacheFormat("bad assignment order".into()))?;
            assignments.insert(m, partial_augmentation_from_json(tup)?);
        }
    }
    PowerProfile::new(k, assignments).map_err(|e| PipelineError::CacheFormat(e.to_string()))
}

fn label_from_str(s: &str) -> Result<FormLabel, PipelineError> {
    // format: mu_{l}(u,{chi},{table})
    let err = || PipelineError::CacheFormat(format!("bad form label `{s}`"));
    let rest = s.strip_prefix("mu_").ok_or_else(err)?;
    let (l, rest) = rest.split_once("(u,").ok_or_else(err)?;
    let body = rest.strip_suffix(')').ok_or_else(err)?;
    let (chi, table) = body.rsplit_once(',').ok_or_else(err)?;
    let table = if table == "*" {
        TableKind::Ordinary
    } else {
        TableKind::Brauer(table.parse().map_err(|_| err())?)
    };
    Ok(FormLabel {
        table,
        character: chi.to_string(),
        l: l.parse().map_err(|_| err())?,
    })
}

fn solution_set_from_json(v: &Value) -> Result<SolutionSet, PipelineError> {
    let err = |m: &str| PipelineError::CacheFormat(m.to_string());
    let k = v.get("order").and_then(Value::as_u64).ok_or_else(|| err("missing order"))?;
    let profile = profile_from_json(v.get("profile").ok_or_else(|| err("missing profile"))?)?;
    let variables: Vec<String> = v
        .get("variables")
        .and_then(Value::as_array)
        .ok_or_else(|| err("missing variables"))?
        .iter()
        .map(|s| s.as_str().unwrap_or_default().to_string())
        .collect();
    let labels = v
        .get("labels")
        .and_then(Value::as_array)
        .ok_or_else(|| err("missing labels"))?
        .iter()
        .map(|s| label_from_str(s.as_str().unwrap_or_default()))
        .collect::<Result<Vec<_>, _>>()?;
    let parse_matrix = |key: &str| -> Result<Vec<Vec<Int>>, PipelineError> {
        v.get(key)
            .and_then(Value::as_array)
            .ok_or_else(|| err("missing matrix"))?
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| err("bad matrix row"))?
                    .iter()
                    .map(|x| {
                        Int::from_str(x.as_str().unwrap_or_default())
                            .map_err(|_| err("bad integer"))
                    })
                    .collect()
            })
            .collect()
    };
    let tuples = parse_matrix("tuples")?;
    let certified = parse_matrix("certified")?;
    let outcome = match v.get("outcome").and_then(Value::as_str) {
        Some("infeasible") => EnumerationOutcome::InfeasibleRelaxation,
        _ => EnumerationOutcome::Exhausted,
    };
    Ok(SolutionSet { k, profile, variables, labels, tuples, certified, outcome })
}

enum Profiles {
    Ready(Vec<PowerProfile>),
    CappedPrereq(u64),
}

/// Drives the whole workflow over a table bundle.
pub struct Pipeline<'a> {
    pub bundle: &'a TableBundle,
    pub config: PipelineConfig,
    pub cache: SolutionCache,
    pub verdicts: BTreeMap<u64, OrderVerdict>,
    pub warnings: Vec<String>,
}

impl<'a> Pipeline<'a> {
    pub fn new(bundle: &'a TableBundle, config: PipelineConfig) -> Self {
        Pipeline {
            bundle,
            config,
            cache: SolutionCache::in_memory(),
            verdicts: BTreeMap::new(),
            warnings: Vec::new(),
        }
    }

    pub fn with_cache(mut self, cache: SolutionCache) -> Self {
        self.cache = cache;
        self
    }

    pub fn candidate_orders(&self) -> Vec<u64> {
        candidate_orders(self.bundle)
    }

    /// All coherent profiles for order k, assembled from the cached solution
    /// sets of the proper divisors.
    fn consistent_profiles(&mut self, k: u64) -> Result<Profiles, PipelineError> {
        let proper: Vec<u64> = divisors(k).into_iter().filter(|&m| m > 1 && m < k).collect();
        // an excluded divisor leaves no coherent cases at all, whatever the
        // other divisors look like; a capped divisor only obstructs when no
        // divisor is excluded
        let mut capped_prereq = None;
        for &m in &proper {
            match self.verdicts.get(&m) {
                None => return Err(PipelineError::MissingPrereq { k, m }),
                Some(v) if v.status == OrderStatus::Excluded => {
                    return Ok(Profiles::Ready(Vec::new()))
                }
                Some(v) if v.status == OrderStatus::Capped => capped_prereq = Some(m),
                Some(_) => {}
            }
        }
        if let Some(m) = capped_prereq {
            return Ok(Profiles::CappedPrereq(m));
        }
        let mut partials: Vec<BTreeMap<u64, PartialAugmentation>> = vec![BTreeMap::new()];
        for &m in &proper {
            let mut next = Vec::new();
            for partial in &partials {
                let sub: BTreeMap<u64, PartialAugmentation> = partial
                    .iter()
                    .filter(|(&d, _)| d < m && m % d == 0)
                    .map(|(&d, t)| (d, t.clone()))
                    .collect();
                let sub_profile = PowerProfile::new(m, sub).expect("restriction is valid");
                let digest = sub_profile.digest();
                let Some(set) = self.cache.get(m, &digest)? else {
                    // that sub-case died earlier: nothing to extend
                    continue;
                };
                for tuple in set.augmentations() {
                    let mut extended = partial.clone();
                    extended.insert(m, tuple);
                    next.push(extended);
                }
            }
            partials = next;
            if partials.is_empty() {
                break;
            }
        }
        Ok(Profiles::Ready(
            partials
                .into_iter()
                .map(|a| PowerProfile::new(k, a).expect("assembled profiles are valid"))
                .collect(),
        ))
    }

    /// Solve one order (prerequisites are solved on demand).
    pub fn solve_order(&mut self, k: u64) -> Result<&OrderVerdict, PipelineError> {
        self.ensure_order(k)?;
        Ok(&self.verdicts[&k])
    }

    fn ensure_order(&mut self, k: u64) -> Result<(), PipelineError> {
        if self.verdicts.contains_key(&k) {
            return Ok(());
        }
        for m in divisors(k) {
            if m > 1 && m < k {
                self.ensure_order(m)?;
            }
        }
        let verdict = self.compute_order(k)?;
        self.verdicts.insert(k, verdict);
        Ok(())
    }

    fn compute_order(&mut self, k: u64) -> Result<OrderVerdict, PipelineError> {
        let profiles = match self.consistent_profiles(k)? {
            Profiles::CappedPrereq(m) => {
                return Ok(OrderVerdict {
                    k,
                    status: OrderStatus::Capped,
                    nodes: Vec::new(),
                    profile_count: 0,
                    cap_note: Some(format!("prerequisite order {m} is capped")),
                })
            }
            Profiles::Ready(p) => p,
        };
        let profile_count = profiles.len() as u64;
        if profile_count > self.config.profile_cap {
            return Ok(OrderVerdict {
                k,
                status: OrderStatus::Capped,
                nodes: Vec::new(),
                profile_count,
                cap_note: Some(format!(
                    "{profile_count} coherent profiles exceed the cap {}",
                    self.config.profile_cap
                )),
            });
        }

        // reuse cached sets; solve the rest (optionally in parallel)
        let mut nodes: Vec<Option<SolutionNode>> = vec![None; profiles.len()];
        let mut todo: Vec<(usize, &PowerProfile)> = Vec::new();
        for (i, profile) in profiles.iter().enumerate() {
            if let Some(set) = self.cache.get(k, &profile.digest())? {
                nodes[i] = Some(SolutionNode { profile: profile.clone(), set });
            } else {
                todo.push((i, profile));
            }
        }

        let bundle = self.bundle;
        let selection = &self.config.selection;
        let box_cap = self.config.box_cap;
        let solve_one = |profile: &PowerProfile| -> Result<SolutionSet, PipelineError> {
            let system = lp::build_system(k, bundle, profile, selection)?;
            Ok(solver::enumerate_solutions(&system, profile, box_cap)?)
        };

        let mut cap_notes: Vec<String> = Vec::new();
        let jobs = self.config.jobs.max(1);
        let results: Vec<(usize, Result<SolutionSet, PipelineError>)> = if jobs == 1 || todo.len() <= 1 {
            todo.iter().map(|(i, p)| (*i, solve_one(p))).collect()
        } else {
            std::thread::scope(|scope| {
                let chunks: Vec<Vec<(usize, &PowerProfile)>> = {
                    let mut cs: Vec<Vec<(usize, &PowerProfile)>> = vec![Vec::new(); jobs];
                    for (n, item) in todo.iter().enumerate() {
                        cs[n % jobs].push(*item);
                    }
                    cs
                };
                let handles: Vec<_> = chunks
                    .into_iter()
                    .map(|chunk| {
                        scope.spawn(move || {
                            chunk
                                .into_iter()
                                .map(|(i, p)| (i, solve_one(p)))
                                .collect::<Vec<_>>()
                        })
                    })
                    .collect();
                let mut all = Vec::new();
                for h in handles {
                    all.extend(h.join().expect("worker panicked"));
                }
                all.sort_by_key(|(i, _)| *i);
                all
            })
        };

        for (i, result) in results {
            match result {
                Ok(set) => {
                    self.cache.put(&set)?;
                    nodes[i] = Some(SolutionNode { profile: profiles[i].clone(), set });
                }
                Err(PipelineError::Solve(SolveError::CapExceeded { volume, cap })) => {
                    cap_notes.push(format!(
                        "profile {} box volume {volume} exceeds cap {cap}",
                        profiles[i].digest()
                    ));
                }
                Err(e) => return Err(e),
            }
        }
        if !cap_notes.is_empty() {
            cap_notes.truncate(8);
            return Ok(OrderVerdict {
                k,
                status: OrderStatus::Capped,
                nodes: Vec::new(),
                profile_count,
                cap_note: Some(cap_notes.join("; ")),
            });
        }
        let nodes: Vec<SolutionNode> = nodes.into_iter().map(Option::unwrap).collect();

        // soundness guard: trivial tuples of actual elements must be present
        let is_element_order = self
            .bundle
            .ordinary
            .classes
            .iter()
            .any(|c| c.element_order == k);
        if is_element_order {
            for class in self
                .bundle
                .ordinary
                .classes
                .iter()
                .filter(|c| c.element_order == k)
            {
                let induced =
                    PowerProfile::induced_by_power_maps(&self.bundle.ordinary, &class.name, k)
                        .ok_or_else(|| PipelineError::Soundness { k, class: class.name.clone() })?;
                let digest = induced.digest();
                let node = nodes
                    .iter()
                    .find(|n| n.profile.digest() == digest)
                    .ok_or_else(|| PipelineError::Soundness { k, class: class.name.clone() })?;
                let delta = PartialAugmentation::delta(&class.name);
                let tuple = delta.tuple(&node.set.variables);
                if !node.set.contains_tuple(&tuple) {
                    return Err(PipelineError::Soundness { k, class: class.name.clone() });
                }
            }
        }

        let union_empty = nodes.iter().all(|n| n.set.is_empty());
        let status = if union_empty {
            OrderStatus::Excluded
        } else if is_element_order
            && nodes.iter().all(|n| {
                n.set
                    .augmentations()
                    .all(|t| classify_rational_conjugacy(&t, &n.profile))
            })
        {
            OrderStatus::Rational
        } else {
            OrderStatus::Constrained
        };
        Ok(OrderVerdict { k, status, nodes, profile_count, cap_note: None })
    }

    /// Process every candidate order in divisor-closure order.
    pub fn run_all(&mut self) -> Result<(), PipelineError> {
        for k in self.candidate_orders() {
            self.ensure_order(k)?;
        }
        Ok(())
    }

    /// Prime-graph comparison; CAPPED orders count as "unit may exist".
    pub fn kimmerle_check(&self) -> KimmerleReport {
        let element_orders = self.bundle.element_orders();
        let group_graph = prime_graph(&element_orders);
        let mut unit_orders: Vec<u64> = element_orders.clone();
        for (k, v) in &self.verdicts {
            if v.status != OrderStatus::Excluded {
                unit_orders.push(*k);
            }
        }
        let unit_graph = prime_graph(&unit_orders);
        let extra_edges: Vec<(u64, u64)> = unit_graph
            .edges
            .difference(&group_graph.edges)
            .cloned()
            .collect();
        let extra_vertices: Vec<u64> = unit_graph
            .vertices
            .difference(&group_graph.vertices)
            .cloned()
            .collect();
        let equal = extra_edges.is_empty() && extra_vertices.is_empty();
        KimmerleReport { group_graph, unit_graph, equal, extra_edges, extra_vertices }
    }

    /// Machine-readable run report (key-sorted, deterministic).
    pub fn report_json(&self) -> Value {
        let orders: Vec<Value> = self
            .verdicts
            .values()
            .map(|v| {
                let tuples = v.union_tuples();
                serde_json::json!({
                    "order": v.k,
                    "status": v.status.as_str(),
                    "profiles": v.profile_count,
                    "variables": v.variables(),
                    "tuples": tuples
                        .iter()
                        .map(|t| t.iter().map(Int::to_string).collect::<Vec<_>>())
                        .collect::<Vec<_>>(),
                    "cap_note": v.cap_note,
                })
            })
            .collect();
        let kimmerle = if self.verdicts.len() == self.candidate_orders().len() {
            let kr = self.kimmerle_check();
            serde_json::json!({
                "group_graph": graph_json(&kr.group_graph),
                "unit_graph": graph_json(&kr.unit_graph),
                "equal": kr.equal,
                "extra_edges": kr.extra_edges,
            })
        } else {
            Value::Null
        };
        serde_json::json!({
            "group": self.bundle.ordinary.group_name,
            "group_order": self.bundle.ordinary.group_order,
            "exponent": self.bundle.ordinary.exponent(),
            "config_digest": self.config.digest(),
            "table_digests": table_digests(self.bundle),
            "orders": orders,
            "kimmerle": kimmerle,
        })
    }

    /// Human-readable report mirroring the per-order itemisation.
    pub fn report_text(&self) -> String {
        let mut out = String::new();
        let b = self.bundle;
        out.push_str(&format!(
            "group {} of order {}, exponent {}\n",
            b.ordinary.group_name,
            b.ordinary.group_order,
            b.ordinary.exponent()
        ));
        for v in self.verdicts.values() {
            out.push_str(&render_verdict(v));
        }
        if self.verdicts.len() == self.candidate_orders().len() {
            let kr = self.kimmerle_check();
            out.push_str(&render_kimmerle(&kr));
        }
        out
    }

    /// Write the run manifest next to the cached solution sets.
    pub fn write_manifest(&self) -> Result<(), PipelineError> {
        let Some(dir) = self.cache.dir.clone() else {
            return Ok(());
        };
        std::fs::create_dir_all(&dir)?;
        let manifest = serde_json::json!({
            "config_digest": self.config.digest(),
            "table_digests": table_digests(self.bundle),
            "verdicts": self
                .verdicts
                .values()
                .map(|v| serde_json::json!({
                    "order": v.k,
                    "status": v.status.as_str(),
                    "profiles": v.profile_count,
                    "tuples": v.union_tuples().len(),
                }))
                .collect::<Vec<_>>(),
        });
        std::fs::write(dir.join("run_manifest.json"), manifest.to_string())?;
        Ok(())
    }
}

fn table_digests(bundle: &TableBundle) -> Value {
    let mut map = serde_json::Map::new();
    map.insert("*".into(), Value::String(bundle.ordinary.digest()));
    for (p, t) in &bundle.brauer {
        map.insert(p.to_string(), Value::String(t.digest()));
    }
    Value::Object(map)
}

fn graph_json(g: &PrimeGraph) -> Value {
    serde_json::json!({
        "vertices": g.vertices.iter().collect::<Vec<_>>(),
        "edges": g.edges.iter().map(|(p, q)| vec![*p, *q]).collect::<Vec<_>>(),
    })
}

pub fn render_verdict(v: &OrderVerdict) -> String {
    let mut out = format!("order {:>3}: {}", v.k, v.status.as_str());
    match v.status {
        OrderStatus::Capped => {
            if let Some(note) = &v.cap_note {
                out.push_str(&format!(" ({note})"));
            }
            out.push('\n');
        }
        OrderStatus::Excluded => {
            out.push_str(&format!(" ({} cases, no solutions)\n", v.profile_count));
        }
        _ => {
            let vars = v.variables();
            let tuples = v.union_tuples();
            out.push_str(&format!(
                " ({} cases) ({})",
                v.profile_count,
                vars.iter()
                    .map(|c| format!("nu_{c}"))
                    .collect::<Vec<_>>()
                    .join(", ")
            ));
            if tuples.len() <= 64 {
                let body = tuples
                    .iter()
                    .map(|t| {
                        format!(
                            "({})",
                            t.iter().map(Int::to_string).collect::<Vec<_>>().join(",")
                        )
                    })
                    .collect::<Vec<_>>()
                    .join(", ");
                out.push_str(&format!(" in {{ {body} }}\n"));
            } else {
                out.push_str(&format!(": {} tuples\n", tuples.len()));
            }
        }
    }
    out
}

pub fn render_kimmerle(kr: &KimmerleReport) -> String {
    let fmt_graph = |g: &PrimeGraph| {
        let vs = g.vertices.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        let es = g
            .edges
            .iter()
            .map(|(p, q)| format!("{p}-{q}"))
            .collect::<Vec<_>>()
            .join(", ");
        format!("vertices {{{vs}}}, edges {{{es}}}")
    };
    let mut out = String::new();
    out.push_str(&format!("pi(G):      {}\n", fmt_graph(&kr.group_graph)));
    out.push_str(&format!("pi(V(ZG)):  {}\n", fmt_graph(&kr.unit_graph)));
    if kr.equal {
        out.push_str("prime graphs EQUAL: the Kimmerle property holds\n");
    } else {
        out.push_str(&format!(
            "prime graphs UNEQUAL: extra edges {:?}, extra vertices {:?}\n",
            kr.extra_edges, kr.extra_vertices
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_graph_examples() {
        let g = prime_graph(&[1, 2, 3, 4, 5, 6, 7, 8, 11, 14, 15, 23]);
        assert_eq!(g.vertices, BTreeSet::from([2, 3, 5, 7, 11, 23]));
        assert_eq!(g.edges, BTreeSet::from([(2, 3), (2, 7), (3, 5)]));
        assert!(prime_graph(&[]).vertices.is_empty());
        let h = prime_graph(&[6]);
        assert_eq!(h.edges, BTreeSet::from([(2, 3)]));
    }

    #[test]
    fn label_round_trip() {
        let l = FormLabel {
            table: TableKind::Brauer(23),
            character: "chi_10".into(),
            l: 2,
        };
        assert_eq!(label_from_str(&l.to_string()).unwrap(), l);
        let o = FormLabel { table: TableKind::Ordinary, character: "chi_5".into(), l: 0 };
        assert_eq!(label_from_str(&o.to_string()).unwrap(), o);
    }
}
