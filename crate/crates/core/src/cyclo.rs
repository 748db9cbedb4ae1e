//! Exact arithmetic in cyclotomic fields Q(zeta_n).
//!
//! Elements are stored on the power basis {zeta_n^e : 0 <= e < phi(n)} after
//! reduction modulo the n-th cyclotomic polynomial, with the conductor
//! minimised on construction.  Two equal field elements therefore have
//! identical representations and equality is plain structural comparison.
//! No floating point is used anywhere in this module.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};


use num_traits::{One, Zero};
use serde_json::Value;
use thiserror::Error;

use crate::arith::{euler_phi, gcd, lcm, moebius, prime_divisors};
use crate::{Int, Rat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CycloError {
    #[error("conductor must be a positive integer")]
    ZeroConductor,
    #[error("galois exponent {j} is not coprime to conductor {conductor}")]
    NonCoprimeGalois { j: i64, conductor: u64 },
    #[error("element of conductor {conductor} does not lie in Q(zeta_{m})")]
    NotInField { conductor: u64, m: u64 },
    #[error("bad cyclotomic encoding: {0}")]
    Encoding(String),
}

/// An element of a cyclotomic field, in canonical reduced form.
#[derive(Clone, PartialEq, Eq)]
pub struct Cyclotomic {
    conductor: u64,
    coeffs: BTreeMap<u64, Rat>,
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .map(|(e, c)| {
                if *e == 0 {
                    format!("{c}")
                } else {
                    format!("{c}*z{}^{e}", self.conductor)
                }
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

fn rat_int(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// Coefficients of the n-th cyclotomic polynomial (integer, monic), cached.
fn cyclotomic_poly(n: u64) -> Vec<Int> {
    static CACHE: OnceLock<Mutex<BTreeMap<u64, Vec<Int>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by Phi_d for every proper divisor d of n
    let mut poly = vec![Int::zero(); n as usize + 1];
    poly[0] = -Int::one();
    poly[n as usize] = Int::one();
    for d in crate::arith::divisors(n) {
        if d == n {
            continue;
        }
        let phi_d = cyclotomic_poly(d);
        poly = poly_div_exact(&poly, &phi_d);
    }
    cache.lock().unwrap().insert(n, poly.clone());
    poly
}

/// Exact division of integer polynomials; divisor must be monic.
fn poly_div_exact(num: &[Int], den: &[Int]) -> Vec<Int> {
    let dn = den.len() - 1;
    assert!(den[dn].is_one());
    let mut rem: Vec<Int> = num.to_vec();
    let qn = num.len() - 1 - dn;
    let mut quot = vec![Int::zero(); qn + 1];
    for i in (0..=qn).rev() {
        let c = rem[i + dn].clone();
        if c.is_zero() {
            continue;
        }
        quot[i] = c.clone();
        for (k, dc) in den.iter().enumerate() {
            let t = &c * dc;
            rem[i + k] -= t;
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "non-exact polynomial division");
    quot
}

impl Cyclotomic {
    /// The rational number zero.
    pub fn zero() -> Self {
        Cyclotomic { conductor: 1, coeffs: BTreeMap::new() }
    }

    pub fn from_rat(q: Rat) -> Self {
        let mut coeffs = BTreeMap::new();
        if !q.is_zero() {
            coeffs.insert(0, q);
        }
        Cyclotomic { conductor: 1, coeffs }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(rat_int(n))
    }

    /// zeta_n^e, canonicalised.
    pub fn root_of_unity(n: u64, e: i64) -> Result<Self, CycloError> {
        if n == 0 {
            return Err(CycloError::ZeroConductor);
        }
        let em = e.rem_euclid(n as i64) as u64;
        let mut coeffs = BTreeMap::new();
        coeffs.insert(em, rat_int(1));
        Ok(Self::canonical(n, coeffs))
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Iterator over (exponent, coefficient) pairs of the reduced form.
    pub fn coeffs(&self) -> impl Iterator<Item = (u64, &Rat)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    pub fn as_rational(&self) -> Option<Rat> {
        if self.conductor == 1 {
            Some(self.coeffs.get(&0).cloned().unwrap_or_else(|| Rat::zero()))
        } else {
            None
        }
    }

    /// Canonical form: exponents reduced modulo Phi_n, conductor minimal.
    fn canonical(n: u64, coeffs: BTreeMap<u64, Rat>) -> Self {
        let mut n = n;
        let mut map = reduce_mod_phi(n, coeffs);
        loop {
            let mut descended = false;
            for p in prime_divisors(n) {
                if let Some((n2, map2)) = try_descend(n, &map, p) {
                    n = n2;
                    map = map2;
                    descended = true;
                    break;
                }
            }
            if !descended {
                break;
            }
        }
        if map.is_empty() {
            n = 1;
        }
        Cyclotomic { conductor: n, coeffs: map }
    }

    fn embedded(&self, m: u64) -> BTreeMap<u64, Rat> {
        debug_assert_eq!(m % self.conductor, 0);
        let k = m / self.conductor;
        self.coeffs.iter().map(|(e, c)| (e * k, c.clone())).collect()
    }

    pub fn add(&self, other: &Cyclotomic) -> Cyclotomic {
        let m = lcm(self.conductor, other.conductor);
        let mut map = self.embedded(m);
        for (e, c) in other.embedded(m) {
            let entry = map.entry(e).or_insert_with(Rat::zero);
            *entry += c;
        }
        Self::canonical(m, map)
    }

    pub fn sub(&self, other: &Cyclotomic) -> Cyclotomic {
        self.add(&other.scale(&rat_int(-1)))
    }

    pub fn scale(&self, q: &Rat) -> Cyclotomic {
        if q.is_zero() {
            return Self::zero();
        }
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, c * q)).collect(),
        }
    }

    pub fn mul(&self, other: &Cyclotomic) -> Cyclotomic {
        let m = lcm(self.conductor, other.conductor);
        let a = self.embedded(m);
        let b = other.embedded(m);
        let mut map: BTreeMap<u64, Rat> = BTreeMap::new();
        for (e1, c1) in &a {
            for (e2, c2) in &b {
                let e = (e1 + e2) % m;
                let entry = map.entry(e).or_insert_with(Rat::zero);
                *entry += c1 * c2;
            }
        }
        Self::canonical(m, map)
    }

    /// Image under zeta_n -> zeta_n^j; requires gcd(j, conductor) = 1.
    pub fn galois_apply(&self, j: i64) -> Result<Cyclotomic, CycloError> {
        let n = self.conductor;
        let jm = j.rem_euclid(n as i64) as u64;
        if gcd(jm % n, n) != 1 && n > 1 {
            return Err(CycloError::NonCoprimeGalois { j, conductor: n });
        }
        if n == 1 {
            return Ok(self.clone());
        }
        let map = self
            .coeffs
            .iter()
            .map(|(e, c)| ((e * jm) % n, c.clone()))
            .fold(BTreeMap::new(), |mut m, (e, c)| {
                let entry = m.entry(e).or_insert_with(Rat::zero);
                *entry += c;
                m
            });
        // an automorphism preserves the conductor, so only basis reduction is needed
        Ok(Cyclotomic { conductor: n, coeffs: reduce_mod_phi(n, map) })
    }

    /// Complex conjugation.
    pub fn conj(&self) -> Cyclotomic {
        self.galois_apply(-1).expect("-1 is always coprime to the conductor")
    }

    /// Trace from Q(zeta_m) down to Q; the element must lie in Q(zeta_m).
    pub fn trace_to_q(&self, m: u64) -> Result<Rat, CycloError> {
        if m == 0 {
            return Err(CycloError::ZeroConductor);
        }
        if m % self.conductor != 0 {
            return Err(CycloError::NotInField { conductor: self.conductor, m });
        }
        // Tr_m = [phi(m)/phi(n)] * Tr_n, and Tr_n(zeta_n^e) is a Ramanujan sum
        let n = self.conductor;
        let scale = Int::from(euler_phi(m) / euler_phi(n));
        let mut total = Rat::zero();
        for (e, c) in &self.coeffs {
            total += c * Rat::from_integer(ramanujan(n, *e));
        }
        Ok(total * Rat::from_integer(scale))
    }

    /// Tr_{Q(zeta_m)/Q}(self * zeta_m^shift) computed termwise via Ramanujan
    /// sums, avoiding the canonicalising multiplication.
    pub fn trace_times_root(&self, m: u64, shift: i64) -> Result<Rat, CycloError> {
        if m == 0 {
            return Err(CycloError::ZeroConductor);
        }
        if m % self.conductor != 0 {
            return Err(CycloError::NotInField { conductor: self.conductor, m });
        }
        let stretch = m / self.conductor;
        let s = shift.rem_euclid(m as i64) as u64;
        let mut total = Rat::zero();
        for (e, c) in &self.coeffs {
            total += c * Rat::from_integer(ramanujan(m, (e * stretch + s) % m));
        }
        Ok(total)
    }
}

/// Tr_{Q(zeta_m)/Q}(zeta_m^e)  =  mu(m/g) * phi(m)/phi(m/g),  g = gcd(e, m).
fn ramanujan(m: u64, e: u64) -> Int {
    if m == 1 {
        return Int::one();
    }
    let g = gcd(e % m, m);
    let d = m / g;
    Int::from(moebius(d) * (euler_phi(m) / euler_phi(d)) as i64)
}

/// Reduce exponents into the power basis {0 .. phi(n)-1} modulo Phi_n.
fn reduce_mod_phi(n: u64, coeffs: BTreeMap<u64, Rat>) -> BTreeMap<u64, Rat> {
    let phi = euler_phi(n) as usize;
    let mut dense = vec![Rat::zero(); n as usize];
    for (e, c) in coeffs {
        dense[(e % n) as usize] += c;
    }
    if n > 1 {
        let poly = cyclotomic_poly(n);
        for i in (phi..n as usize).rev() {
            if dense[i].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut dense[i], Rat::zero());
            // x^i = x^(i-phi) * (x^phi - Phi_n) since Phi_n is monic
            for (k, pc) in poly.iter().enumerate().take(phi) {
                if !pc.is_zero() {
                    dense[i - phi + k] -= &c * Rat::from_integer(pc.clone());
                }
            }
        }
    }
    dense
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(e, c)| (e as u64, c))
        .collect()
}

/// Try to rewrite an element of Q(zeta_n) in Q(zeta_{n/p}).
fn try_descend(n: u64, map: &BTreeMap<u64, Rat>, p: u64) -> Option<(u64, BTreeMap<u64, Rat>)> {
    let m = n / p;
    if m == 0 || n % p != 0 {
        return None;
    }
    if m % p == 0 {
        // p^2 | n: membership iff every basis exponent is divisible by p
        if map.keys().all(|e| e % p == 0) {
            let down: BTreeMap<u64, Rat> =
                map.iter().map(|(e, c)| (e / p, c.clone())).collect();
            return Some((m, reduce_mod_phi(m, down)));
        }
        return None;
    }
    // p || n: the relative extension has degree p-1
    if p > 2 {
        // test invariance under a generator of Gal(Q(zeta_n)/Q(zeta_m))
        let g = primitive_root(p);
        let j = crt(1, m, g, p);
        let image = apply_exp(n, map, j);
        if image != *map {
            return None;
        }
    }
    // a = Tr_rel(a)/(p-1) with Tr_rel = p*B - P0 computed termwise
    let t0 = inv_mod(m % p, p).map(|im| (p - im) % p)?;
    let j0 = 1 + t0 * m; // the unique 1 + t*m divisible by p
    debug_assert_eq!(j0 % p, 0);
    let mut rel: BTreeMap<u64, Rat> = BTreeMap::new();
    for (e, c) in map {
        if e % p == 0 {
            let entry = rel.entry(*e).or_insert_with(Rat::zero);
            *entry += c * rat_int(p as i64);
        }
        let e0 = (e * j0) % n;
        debug_assert_eq!(e0 % p, 0);
        let entry = rel.entry(e0).or_insert_with(Rat::zero);
        *entry -= c;
    }
    let denom = rat_int((p - 1) as i64);
    let down: BTreeMap<u64, Rat> = rel
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(e, c)| (e / p, c / &denom))
        .collect();
    Some((m, reduce_mod_phi(m, down)))
}

fn apply_exp(n: u64, map: &BTreeMap<u64, Rat>, j: u64) -> BTreeMap<u64, Rat> {
    let moved = map
        .iter()
        .map(|(e, c)| ((e * j) % n, c.clone()))
        .fold(BTreeMap::new(), |mut m: BTreeMap<u64, Rat>, (e, c)| {
            let entry = m.entry(e).or_insert_with(Rat::zero);
            *entry += c;
            m
        });
    reduce_mod_phi(n, moved)
}

fn inv_mod(a: u64, p: u64) -> Option<u64> {
    if a % p == 0 {
        return None;
    }
    let mut x = 1u64;
    // p is small and prime here; brute force is fine
    while (a * x) % p != 1 {
        x += 1;
    }
    Some(x)
}

fn primitive_root(p: u64) -> u64 {
    'outer: for g in 2..p {
        let mut x = 1u64;
        for _ in 0..p - 2 {
            x = x * g % p;
            if x == 1 {
                continue 'outer;
            }
        }
        return g;
    }
    1
}

fn crt(a1: u64, m1: u64, a2: u64, m2: u64) -> u64 {
    // x = a1 mod m1, x = a2 mod m2 with gcd(m1,m2)=1
    for t in 0..m2 {
        let x = a1 + t * m1;
        if x % m2 == a2 % m2 {
            return x;
        }
    }
    unreachable!("crt with coprime moduli always solves")
}

// ---- JSON value encoding shared with the table documents ----

fn int_from_json(v: &Value) -> Result<Int, CycloError> {
    v.as_i64()
        .map(Int::from)
        .ok_or_else(|| CycloError::Encoding(format!("expected integer, got {v}")))
}

fn rat_from_json(v: &Value) -> Result<Rat, CycloError> {
    match v {
        Value::Number(_) => Ok(Rat::from_integer(int_from_json(v)?)),
        Value::Array(parts) if parts.len() == 2 => {
            let num = int_from_json(&parts[0])?;
            let den = int_from_json(&parts[1])?;
            if den <= Int::zero() {
                return Err(CycloError::Encoding("denominator must be positive".into()));
            }
            Ok(Rat::new(num, den))
        }
        _ => Err(CycloError::Encoding(format!("expected rational, got {v}"))),
    }
}

impl Cyclotomic {
    /// Parse the shared JSON encoding: integer, [num, den], or
    /// {"conductor": n, "coeffs": {"e": rational}}.
    pub fn from_json(v: &Value) -> Result<Self, CycloError> {
        match v {
            Value::Number(_) | Value::Array(_) => Ok(Self::from_rat(rat_from_json(v)?)),
            Value::Object(obj) => {
                let n = obj
                    .get("conductor")
                    .and_then(Value::as_u64)
                    .ok_or_else(|| CycloError::Encoding("missing conductor".into()))?;
                if n == 0 {
                    return Err(CycloError::ZeroConductor);
                }
                let coeffs = obj
                    .get("coeffs")
                    .and_then(Value::as_object)
                    .ok_or_else(|| CycloError::Encoding("missing coeffs".into()))?;
                let mut map = BTreeMap::new();
                for (k, val) in coeffs {
                    let e: u64 = k
                        .parse()
                        .map_err(|_| CycloError::Encoding(format!("bad exponent key {k}")))?;
                    if e >= n {
                        return Err(CycloError::Encoding(format!(
                            "exponent {e} out of range for conductor {n}"
                        )));
                    }
                    let c = rat_from_json(val)?;
                    if !c.is_zero() {
                        let entry = map.entry(e).or_insert_with(Rat::zero);
                        *entry += c;
                    }
                }
                Ok(Self::canonical(n, map))
            }
            _ => Err(CycloError::Encoding(format!("unrecognised value {v}"))),
        }
    }

    pub fn to_json(&self) -> Value {
        fn rat_json(q: &Rat) -> Value {
            if q.is_integer() {
                int_json(q.numer())
            } else {
                Value::Array(vec![int_json(q.numer()), int_json(q.denom())])
            }
        }
        fn int_json(n: &Int) -> Value {
            let v: i64 = n.try_into().expect("table values fit in i64");
            Value::from(v)
        }
        if let Some(q) = self.as_rational() {
            return rat_json(&q);
        }
        let mut coeffs = serde_json::Map::new();
        for (e, c) in &self.coeffs {
            coeffs.insert(e.to_string(), rat_json(c));
        }
        serde_json::json!({ "conductor": self.conductor, "coeffs": coeffs })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn root(n: u64, e: i64) -> Cyclotomic {
        Cyclotomic::root_of_unity(n, e).unwrap()
    }

    #[test]
    fn roots_of_unity_canonicalise() {
        assert_eq!(root(1, 0), Cyclotomic::from_int(1));
        assert_eq!(root(4, 2), Cyclotomic::from_int(-1));
        assert_eq!(root(2, 1), Cyclotomic::from_int(-1));
        assert_eq!(root(6, 3), Cyclotomic::from_int(-1));
        assert!(Cyclotomic::root_of_unity(0, 1).is_err());
    }

    #[test]
    fn conductor_is_minimal() {
        // zeta_6 lies in Q(zeta_3); zeta_8^2 = zeta_4
        assert_eq!(root(6, 1).conductor(), 3);
        assert_eq!(root(8, 2), root(4, 1));
        assert_eq!(root(12, 3), root(4, 1));
        // sum of all primitive 5th roots is -1
        let s = root(5, 1).add(&root(5, 2)).add(&root(5, 3)).add(&root(5, 4));
        assert_eq!(s, Cyclotomic::from_int(-1));
    }

    #[test]
    fn add_and_mul_examples() {
        assert_eq!(root(3, 1).add(&root(3, 2)), Cyclotomic::from_int(-1));
        assert_eq!(root(4, 1).mul(&root(4, 1)), Cyclotomic::from_int(-1));
        assert_eq!(root(5, 1).mul(&root(5, 4)), Cyclotomic::from_int(1));
    }

    #[test]
    fn galois_examples() {
        assert_eq!(root(8, 1).galois_apply(3).unwrap(), root(8, 3));
        let q = Cyclotomic::from_int(7);
        assert_eq!(q.galois_apply(5).unwrap(), q);
        let a = root(7, 1).add(&root(7, 6));
        assert_eq!(a.galois_apply(2).unwrap(), root(7, 2).add(&root(7, 5)));
        assert!(root(8, 1).galois_apply(2).is_err());
    }

    #[test]
    fn trace_examples() {
        for p in [3u64, 5, 7, 11, 23] {
            assert_eq!(root(p, 1).trace_to_q(p).unwrap(), rat_int(-1));
        }
        assert_eq!(root(4, 1).trace_to_q(4).unwrap(), rat_int(0));
        assert_eq!(Cyclotomic::from_int(5).trace_to_q(4).unwrap(), rat_int(10));
        assert!(root(7, 1).trace_to_q(8).is_err());
    }

    #[test]
    fn json_round_trip() {
        let b7 = root(7, 1).add(&root(7, 2)).add(&root(7, 4));
        let j = b7.to_json();
        assert_eq!(Cyclotomic::from_json(&j).unwrap(), b7);
        let half = Cyclotomic::from_rat(Rat::new(Int::from(1), Int::from(2)));
        assert_eq!(Cyclotomic::from_json(&half.to_json()).unwrap(), half);
        let v: Value = serde_json::json!({"conductor": 4, "coeffs": {"2": 1}});
        assert_eq!(Cyclotomic::from_json(&v).unwrap(), Cyclotomic::from_int(-1));
    }
}
