//! Conjugacy classes of special cyclic subgroups, as orbits of spectra
//! under the unit-group power action t · k ↦ tk (mod m): replacing a
//! generator h by h^t relabels each eigenvalue exponent k to tk.
//!
//! Canonical representatives use the colex order on sorted exponent
//! tuples: compare from the largest exponent down, smaller wins. Under
//! this normal form every orbit's representative is the member whose top
//! exponents are smallest, and representative listings are reproducible
//! bit for bit.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::CheckedSub;
use rayon::prelude::*;

use crate::counting::{enumeration_guard, DEFAULT_ENUMERATION_CEILING};
use crate::error::{Error, Result};
use crate::numtheory::{binomial, catalan, exact_div, phi, require_prime, Residue};
use crate::spectra::{
    enumerate_spectra, expand_counts, order_of_counts, spectrum_partitions, ExponentTuple,
    Spectrum,
};

/// An orbit of spectra under the unit action: one conjugacy class of
/// cyclic subgroups, with its canonical representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitClass {
    m: u64,
    representative: ExponentTuple,
    orbit_size: u64,
    members: Vec<ExponentTuple>,
}

impl OrbitClass {
    pub fn modulus(&self) -> u64 {
        self.m
    }

    /// Canonical (colex-least) member.
    pub fn representative(&self) -> &ExponentTuple {
        &self.representative
    }

    pub fn orbit_size(&self) -> u64 {
        self.orbit_size
    }

    /// All members, sorted in canonical (colex) order.
    pub fn members(&self) -> &[ExponentTuple] {
        &self.members
    }
}

/// Subgroup-class count with the methods that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpcgReport {
    pub n: u64,
    pub m: u64,
    pub spcg: BigUint,
    pub methods: Vec<SpcgMethod>,
    pub includes_center: bool,
    pub agreement: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpcgMethod {
    OrbitEnumeration,
    Burnside,
    ClosedForm,
}

impl SpcgMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            SpcgMethod::OrbitEnumeration => "orbit_enumeration",
            SpcgMethod::Burnside => "burnside",
            SpcgMethod::ClosedForm => "closed_form",
        }
    }
}

/// Colexicographic comparison of equal-length sorted exponent slices:
/// scan from the largest exponent down; the first difference decides.
pub fn colex_cmp(a: &[u64], b: &[u64]) -> Ordering {
    debug_assert_eq!(a.len(), b.len());
    a.iter().rev().cmp(b.iter().rev())
}

/// The spectrum of h^t: multiplicity at exponent k moves to t·k mod m.
/// `t` must be a unit modulo m.
pub fn act(t: u64, s: &Spectrum) -> Result<Spectrum> {
    let m = s.modulus();
    if t.gcd(&m) != 1 {
        return Err(Error::Domain(format!("{t} is not a unit modulo {m}")));
    }
    Ok(Spectrum::from_raw(m, act_counts(t, m, s.counts())))
}

fn act_counts(t: u64, m: u64, counts: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; m as usize];
    for (k, &c) in counts.iter().enumerate() {
        if c > 0 {
            let j = (t as u128 * k as u128 % m as u128) as usize;
            out[j] += c;
        }
    }
    out
}

fn units(m: u64) -> Vec<u64> {
    (1..=m).filter(|t| t.gcd(&m) == 1).collect()
}

/// The full orbit of a spectrum under all units, with the canonical
/// representative and materialized members.
pub fn orbit_of(s: &Spectrum) -> OrbitClass {
    let m = s.modulus();
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    for t in units(m) {
        seen.insert(expand_counts(&act_counts(t, m, s.counts())));
    }
    let mut members: Vec<Vec<u64>> = seen.into_iter().collect();
    members.sort_unstable_by(|a, b| colex_cmp(a, b));
    let members: Vec<ExponentTuple> = members
        .into_iter()
        .map(|exps| ExponentTuple::new(m, exps).expect("orbit members are valid tuples"))
        .collect();
    OrbitClass {
        m,
        representative: members[0].clone(),
        orbit_size: members.len() as u64,
        members,
    }
}

/// Eligibility for subgroup-class counting: a generator of a special
/// cyclic subgroup of order exactly m.
fn eligible(m: u64, counts: &[u64]) -> bool {
    counts[0] == 0
        && counts
            .iter()
            .enumerate()
            .all(|(k, &c)| c == 0 || (k as u64).gcd(&m) == 1)
        && order_of_counts(m, counts) == m
}

/// Colex-least exponent tuple in the orbit of the given multiplicities.
fn canonical_exponents(m: u64, counts: &[u64]) -> Vec<u64> {
    let mut best: Option<Vec<u64>> = None;
    for t in units(m) {
        let exps = expand_counts(&act_counts(t, m, counts));
        match &best {
            Some(b) if colex_cmp(&exps, b) != Ordering::Less => {}
            _ => best = Some(exps),
        }
    }
    best.expect("unit group is never empty")
}

/// The set of canonical representatives of all eligible orbits, built by
/// canonicalizing every eligible spectrum; safe to shard across the
/// partitioned search space.
fn canonical_orbit_set(n: u64, m: u64, ceiling: u64) -> Result<BTreeSet<Vec<u64>>> {
    enumeration_guard(n, m, ceiling)?;
    let parts = spectrum_partitions(n, m, true)?;
    Ok(parts
        .into_par_iter()
        .map(|mut it| {
            let mut local: BTreeSet<Vec<u64>> = BTreeSet::new();
            while it.advance() {
                let counts = it.current_counts();
                if eligible(m, counts) {
                    local.insert(canonical_exponents(m, counts));
                }
            }
            local
        })
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        }))
}

/// Number of conjugacy classes of special cyclic subgroups of order `m`
/// in SU(`n`), by explicit orbit enumeration. Scalar (central) subgroups
/// are included when they qualify.
pub fn count_subgroup_classes(n: u64, m: u64) -> Result<SpcgReport> {
    count_subgroup_classes_with_ceiling(n, m, DEFAULT_ENUMERATION_CEILING)
}

pub fn count_subgroup_classes_with_ceiling(n: u64, m: u64, ceiling: u64) -> Result<SpcgReport> {
    let set = canonical_orbit_set(n, m, ceiling)?;
    Ok(SpcgReport {
        n,
        m,
        spcg: BigUint::from(set.len() as u64),
        methods: vec![SpcgMethod::OrbitEnumeration],
        includes_center: true,
        agreement: true,
    })
}

/// Burnside oracle: the orbit count equals the average, over units t, of
/// the number of eligible spectra fixed by t.
pub fn count_subgroup_classes_burnside(n: u64, m: u64) -> Result<BigUint> {
    count_subgroup_classes_burnside_with_ceiling(n, m, DEFAULT_ENUMERATION_CEILING)
}

pub fn count_subgroup_classes_burnside_with_ceiling(
    n: u64,
    m: u64,
    ceiling: u64,
) -> Result<BigUint> {
    enumeration_guard(n, m, ceiling)?;
    let ts = units(m);
    let parts = spectrum_partitions(n, m, true)?;
    let fixed_total: u128 = parts
        .into_par_iter()
        .map(|mut it| {
            let mut local: u128 = 0;
            while it.advance() {
                let counts = it.current_counts();
                if !eligible(m, counts) {
                    continue;
                }
                for &t in &ts {
                    let fixed = counts.iter().enumerate().all(|(k, &c)| {
                        let j = (t as u128 * k as u128 % m as u128) as usize;
                        counts[j] == c
                    });
                    if fixed {
                        local += 1;
                    }
                }
            }
            local
        })
        .sum();
    let order = phi(m) as u128;
    if !fixed_total.is_multiple_of(order) {
        return Err(Error::Internal(format!(
            "Burnside sum {fixed_total} is not divisible by φ({m}) = {order}"
        )));
    }
    Ok(BigUint::from(fixed_total / order))
}

/// Closed form for the subgroup-class count with dimension p and order q,
/// distinct primes with p ∤ (q − 1).
pub fn spcg_closed_form_pq(p: u64, q: u64) -> Result<BigUint> {
    require_prime(p)?;
    require_prime(q)?;
    if p == q {
        return Err(Error::Domain(
            "equal primes are handled by the Catalan closed form".into(),
        ));
    }
    if (q - 1).is_multiple_of(p) {
        return Err(Error::Hypothesis(format!(
            "the free-orbit argument needs p ∤ q−1, but {p} divides {}",
            q - 1
        )));
    }
    let base = binomial(q + p - 2, p);
    let num = if (p - 1).is_multiple_of(q) {
        base.checked_sub(&BigUint::from(q - 1))
            .ok_or_else(|| Error::Internal(format!("negative count at p={p} q={q}")))?
    } else {
        base
    };
    exact_div(num, (q - 1) * q, "spcg_closed_form_pq")
}

/// Closed form for equal primes: (1 + C_{p−1}) / p.
pub fn spcg_closed_form_pp(p: u64) -> Result<BigUint> {
    require_prime(p)?;
    let num = BigUint::from(1u32) + catalan(p - 1);
    exact_div(num, p, "spcg_closed_form_pp")
}

/// One canonical representative per subgroup class, in colex order.
/// `exclude_center` drops the scalar (central) class.
pub fn subgroup_class_representatives(
    n: u64,
    m: u64,
    exclude_center: bool,
) -> Result<Vec<ExponentTuple>> {
    subgroup_class_representatives_with_ceiling(n, m, exclude_center, DEFAULT_ENUMERATION_CEILING)
}

pub fn subgroup_class_representatives_with_ceiling(
    n: u64,
    m: u64,
    exclude_center: bool,
    ceiling: u64,
) -> Result<Vec<ExponentTuple>> {
    let set = canonical_orbit_set(n, m, ceiling)?;
    let mut reps: Vec<Vec<u64>> = set
        .into_iter()
        .filter(|exps| !(exclude_center && exps.iter().all(|&a| a == exps[0])))
        .collect();
    reps.sort_unstable_by(|a, b| colex_cmp(a, b));
    Ok(reps
        .into_iter()
        .map(|exps| ExponentTuple::new(m, exps).expect("representatives are valid tuples"))
        .collect())
}

/// True iff a central (scalar) special subgroup of order m exists in
/// SU(n), i.e. m ≥ 2 and m | n.
pub fn center_class_exists(n: u64, m: u64) -> bool {
    m >= 2 && n.is_multiple_of(m)
}

/// Checks the free-orbit statement: with n and q prime and n ∤ (q − 1),
/// every orbit of special spectra has size exactly q − 1, so distinct
/// generator powers are never conjugate.
pub fn verify_distinct_generators(n: u64, q: u64) -> Result<bool> {
    require_prime(n)?;
    require_prime(q)?;
    if (q - 1).is_multiple_of(n) {
        return Err(Error::Hypothesis(format!(
            "the free-orbit argument needs n ∤ q−1, but {n} divides {}",
            q - 1
        )));
    }
    enumeration_guard(n, q, DEFAULT_ENUMERATION_CEILING)?;
    let mut visited: HashSet<Vec<u64>> = HashSet::new();
    for s in enumerate_spectra(n, q, true)? {
        let exps = expand_counts(s.counts());
        if visited.contains(&exps) {
            continue;
        }
        let orbit = orbit_of(&s);
        if orbit.orbit_size() != q - 1 {
            return Ok(false);
        }
        for member in orbit.members() {
            visited.insert(member.exponents().to_vec());
        }
    }
    Ok(true)
}

/// The congruence check for primes with q | p − 1: the exact integer
/// C(q+p−2, p) / (q−1), reduced mod q. Predicted residue: 1.
pub fn congruence_pq(p: u64, q: u64) -> Result<Residue> {
    require_prime(p)?;
    require_prime(q)?;
    if !(p - 1).is_multiple_of(q) {
        return Err(Error::Domain(format!(
            "congruence_pq needs q | p−1, but {q} does not divide {}",
            p - 1
        )));
    }
    let value = exact_div(binomial(q + p - 2, p), q - 1, "congruence_pq")?;
    Ok(Residue::from_biguint(&value, q))
}
