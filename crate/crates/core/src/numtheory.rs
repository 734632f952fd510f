//! Exact arbitrary-precision arithmetic functions: divisors, totient,
//! Möbius, memoized binomial coefficients, Catalan numbers, and the
//! congruence checks built on them.
//!
//! Everything here is a pure function of its inputs; the binomial memo
//! table is behind an `RwLock` and is safe to hit from many threads.

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{OnceLock, RwLock};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Default cap on the number of memoized binomial entries.
pub const DEFAULT_BINOMIAL_MEMO_CAP: usize = 1_000_000;

static BINOMIAL_MEMO: OnceLock<RwLock<HashMap<(u64, u64), BigUint>>> = OnceLock::new();
static BINOMIAL_MEMO_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_BINOMIAL_MEMO_CAP);

/// A residue class: a value reduced into `[0, modulus)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    modulus: u64,
}

impl Residue {
    /// Reduces `value` modulo `modulus`. Panics if `modulus == 0`.
    pub fn new(value: u64, modulus: u64) -> Self {
        assert!(modulus > 0, "modulus must be positive");
        Residue {
            value: value % modulus,
            modulus,
        }
    }

    pub(crate) fn from_biguint(value: &BigUint, modulus: u64) -> Self {
        assert!(modulus > 0, "modulus must be positive");
        let r = value % BigUint::from(modulus);
        Residue {
            value: r.to_u64().expect("reduced residue fits in u64"),
            modulus,
        }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

/// All divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    if n == 0 {
        return Err(Error::Domain("divisors(0) is undefined".into()));
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    Ok(small)
}

/// Euler's totient of `n` as a `u64`, by trial-division factorization.
pub(crate) fn phi(n: u64) -> u64 {
    debug_assert!(n >= 1);
    let mut result = n;
    let mut x = n;
    let mut p = 2u64;
    while p.saturating_mul(p) <= x {
        if x.is_multiple_of(p) {
            while x.is_multiple_of(p) {
                x /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if x > 1 {
        result -= result / x;
    }
    result
}

/// Euler's totient function: the count of `k` in `1..=n` coprime to `n`.
pub fn euler_phi(n: u64) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::Domain("euler_phi(0) is undefined".into()));
    }
    Ok(BigUint::from(phi(n)))
}

/// Möbius function: 0 if `n` has a squared prime factor, otherwise
/// (−1)^(number of prime factors).
pub fn mobius(n: u64) -> Result<i32> {
    if n == 0 {
        return Err(Error::Domain("mobius(0) is undefined".into()));
    }
    let mut x = n;
    let mut sign = 1i32;
    let mut p = 2u64;
    while p.saturating_mul(p) <= x {
        if x.is_multiple_of(p) {
            x /= p;
            if x.is_multiple_of(p) {
                return Ok(0);
            }
            sign = -sign;
        }
        p += 1;
    }
    if x > 1 {
        sign = -sign;
    }
    Ok(sign)
}

/// Set the cap on memoized binomial entries. Once the table is full,
/// further results are computed but no longer stored.
pub fn set_binomial_memo_cap(cap: usize) {
    BINOMIAL_MEMO_CAP.store(cap, Ordering::Relaxed);
}

/// Binomial coefficient C(a, b), exact; 0 when `b > a`.
///
/// Results are memoized (bounded by [`set_binomial_memo_cap`]) since the
/// counting formulas query the same coefficients over and over during
/// sweeps.
pub fn binomial(a: u64, b: u64) -> BigUint {
    if b > a {
        return BigUint::zero();
    }
    let b = b.min(a - b);
    if b == 0 {
        return BigUint::one();
    }
    let memo = BINOMIAL_MEMO.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(hit) = memo.read().expect("binomial memo poisoned").get(&(a, b)) {
        return hit.clone();
    }
    let value = binomial_uncached(a, b);
    let cap = BINOMIAL_MEMO_CAP.load(Ordering::Relaxed);
    let mut table = memo.write().expect("binomial memo poisoned");
    if table.len() < cap {
        table.insert((a, b), value.clone());
    }
    value
}

/// Multiplicative evaluation; every intermediate quotient is itself a
/// binomial coefficient, so each division is exact.
fn binomial_uncached(a: u64, b: u64) -> BigUint {
    let mut result = BigUint::one();
    for i in 0..b {
        result *= BigUint::from(a - b + i + 1);
        result /= BigUint::from(i + 1);
    }
    result
}

/// The k-th Catalan number C(2k, k) / (k + 1), exact.
pub fn catalan(k: u64) -> BigUint {
    let numerator = binomial(2 * k, k);
    let (q, r) = numerator.div_rem(&BigUint::from(k + 1));
    debug_assert!(r.is_zero(), "(k+1) must divide C(2k,k)");
    q
}

/// C_{p−1} mod p for a prime p; equals p − 1.
pub fn catalan_congruence(p: u64) -> Result<Residue> {
    require_prime(p)?;
    Ok(Residue::from_biguint(&catalan(p - 1), p))
}

/// (p−1)! mod p for a prime p; Wilson's theorem makes this p − 1.
pub fn wilson_check(p: u64) -> Result<Residue> {
    require_prime(p)?;
    let mut acc: u64 = 1;
    for i in 2..p {
        acc = ((acc as u128 * i as u128) % p as u128) as u64;
    }
    Ok(Residue::new(acc, p))
}

pub(crate) fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// Deterministic Miller–Rabin over the full u64 range (fixed witness set,
/// valid far beyond 2^64). No probabilistic acceptance anywhere.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// All primes up to and including `bound`, by sieve.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut p = 2usize;
    while p * p <= n {
        if sieve[p] {
            let mut q = p * p;
            while q <= n {
                sieve[q] = false;
                q += p;
            }
        }
        p += 1;
    }
    (2..=n).filter(|&i| sieve[i]).map(|i| i as u64).collect()
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Exact division with an internal-consistency check: the callers invoke
/// this only where a theorem guarantees divisibility.
pub(crate) fn exact_div(numerator: BigUint, divisor: u64, context: &str) -> Result<BigUint> {
    let (q, r) = numerator.div_rem(&BigUint::from(divisor));
    if r.is_zero() {
        Ok(q)
    } else {
        Err(Error::Internal(format!(
            "{context}: division by {divisor} left remainder {r}"
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    /// Oracle: divisors by exhaustive trial over 1..=n.
    fn divisors_oracle(n: u64) -> Vec<u64> {
        (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
    }

    #[test]
    fn divisors_examples() {
        assert_eq!(divisors(1).unwrap(), vec![1]);
        assert_eq!(divisors(12).unwrap(), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(7).unwrap(), vec![1, 7]);
        assert!(matches!(divisors(0), Err(Error::Domain(_))));
    }

    #[test]
    fn divisors_match_oracle() {
        for n in 1..=2000 {
            assert_eq!(divisors(n).unwrap(), divisors_oracle(n), "n={n}");
        }
    }

    /// Oracle: count coprime residues directly.
    fn phi_oracle(n: u64) -> u64 {
        (1..=n).filter(|&k| k.gcd(&n) == 1).count() as u64
    }

    #[test]
    fn euler_phi_examples() {
        assert_eq!(euler_phi(1).unwrap(), BigUint::from(1u32));
        assert_eq!(euler_phi(12).unwrap(), BigUint::from(4u32));
        for p in [2u64, 3, 5, 13, 97] {
            assert_eq!(euler_phi(p).unwrap(), BigUint::from(p - 1));
        }
        assert!(euler_phi(0).is_err());
    }

    #[test]
    fn euler_phi_matches_direct_count() {
        for n in 1..=500 {
            assert_eq!(phi(n), phi_oracle(n), "n={n}");
        }
    }

    #[test]
    fn totient_divisor_sum_is_n() {
        for n in 1..=10_000u64 {
            let total: u64 = divisors(n).unwrap().into_iter().map(phi).sum();
            assert_eq!(total, n, "sum of phi over divisors of {n}");
        }
    }

    /// Oracle: Möbius via full factorization with explicit square detection.
    fn mobius_oracle(n: u64) -> i32 {
        let mut x = n;
        let mut count = 0;
        for p in 2..=n {
            if p * p > x {
                break;
            }
            if x.is_multiple_of(p) {
                x /= p;
                if x.is_multiple_of(p) {
                    return 0;
                }
                count += 1;
            }
        }
        if x > 1 {
            count += 1;
        }
        if count % 2 == 0 {
            1
        } else {
            -1
        }
    }

    #[test]
    fn mobius_examples() {
        assert_eq!(mobius(1).unwrap(), 1);
        assert_eq!(mobius(6).unwrap(), 1);
        assert_eq!(mobius(12).unwrap(), 0);
        assert!(mobius(0).is_err());
    }

    #[test]
    fn mobius_matches_oracle_and_divisor_sum() {
        for n in 1..=10_000u64 {
            if n <= 500 {
                assert_eq!(mobius(n).unwrap(), mobius_oracle(n), "n={n}");
            }
            let total: i64 = divisors(n)
                .unwrap()
                .into_iter()
                .map(|d| mobius(d).unwrap() as i64)
                .sum();
            assert_eq!(total, i64::from(n == 1), "mobius divisor sum at {n}");
        }
    }

    /// Oracle: Pascal's triangle built by addition only.
    fn pascal_triangle(rows: usize) -> Vec<Vec<BigUint>> {
        let mut tri = vec![vec![BigUint::one()]];
        for r in 1..rows {
            let prev = &tri[r - 1];
            let mut row = vec![BigUint::one()];
            for c in 1..r {
                row.push(&prev[c - 1] + &prev[c]);
            }
            row.push(BigUint::one());
            tri.push(row);
        }
        tri
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(8, 5), BigUint::from(56u32));
        assert_eq!(binomial(12, 7), BigUint::from(792u32));
        for n in 0..50 {
            assert_eq!(binomial(n, 0), BigUint::one());
        }
        assert_eq!(binomial(3, 9), BigUint::zero());
    }

    #[test]
    fn binomial_matches_pascal_triangle() {
        let tri = pascal_triangle(201);
        for a in 0..=200u64 {
            for b in 0..=a {
                assert_eq!(binomial(a, b), tri[a as usize][b as usize], "C({a},{b})");
            }
        }
    }

    /// Oracle: Catalan via brute-force enumeration of all ±1 ballot
    /// sequences of length 2k.
    fn catalan_oracle(k: u32) -> u64 {
        if k == 0 {
            return 1;
        }
        let len = 2 * k;
        let mut count = 0u64;
        for mask in 0u32..(1 << len) {
            let mut height = 0i32;
            let mut ok = true;
            for i in 0..len {
                height += if mask >> i & 1 == 1 { 1 } else { -1 };
                if height < 0 {
                    ok = false;
                    break;
                }
            }
            if ok && height == 0 {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn catalan_examples_and_oracle() {
        assert_eq!(catalan(0), BigUint::one());
        assert_eq!(catalan(4), BigUint::from(14u32));
        assert_eq!(catalan(6), BigUint::from(132u32));
        for k in 0..=8u64 {
            assert_eq!(catalan(k).to_u64().unwrap(), catalan_oracle(k as u32));
        }
    }

    #[test]
    fn catalan_integrality_up_to_500() {
        for k in 0..=500u64 {
            let c = catalan(k);
            assert_eq!(c * BigUint::from(k + 1), binomial(2 * k, k), "k={k}");
        }
    }

    #[test]
    fn catalan_congruence_examples() {
        assert_eq!(catalan_congruence(5).unwrap().value(), 4);
        assert_eq!(catalan_congruence(11).unwrap().value(), 10);
        assert_eq!(catalan_congruence(3).unwrap().value(), 2);
        assert_eq!(catalan(10), BigUint::from(16796u32));
        assert!(matches!(catalan_congruence(12), Err(Error::NotPrime(12))));
    }

    #[test]
    fn catalan_congruence_sweep() {
        for p in primes_up_to(1000) {
            assert_eq!(catalan_congruence(p).unwrap().value(), p - 1, "p={p}");
        }
    }

    #[test]
    fn wilson_examples_and_sweep() {
        assert_eq!(wilson_check(5).unwrap().value(), 4);
        assert_eq!(wilson_check(7).unwrap().value(), 6);
        assert_eq!(wilson_check(2).unwrap().value(), 1);
        assert!(wilson_check(8).is_err());
        for p in primes_up_to(1000) {
            assert_eq!(wilson_check(p).unwrap().value(), p - 1, "p={p}");
        }
    }

    #[test]
    fn is_prime_matches_trial_division() {
        let trial = |n: u64| n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d));
        for n in 0..=10_000 {
            assert_eq!(is_prime(n), trial(n), "n={n}");
        }
        assert!(is_prime(2_147_483_647)); // 2^31 − 1
        assert!(!is_prime(2_147_483_649));
    }

    #[test]
    fn primes_up_to_matches_is_prime() {
        let ps = primes_up_to(500);
        let expect: Vec<u64> = (2..=500).filter(|&n| is_prime(n)).collect();
        assert_eq!(ps, expect);
    }

    #[test]
    fn residue_reduces() {
        let r = Residue::new(17, 5);
        assert_eq!(r.value(), 2);
        assert_eq!(r.modulus(), 5);
        assert_eq!(r.to_string(), "2 (mod 5)");
    }

    #[test]
    fn binomial_concurrent_access() {
        let handles: Vec<_> = (0..8)
            .map(|t| {
                std::thread::spawn(move || {
                    for a in 0..80u64 {
                        let b = (a + t) % 40;
                        let want = if b > a {
                            BigUint::zero()
                        } else {
                            binomial_uncached(a, b.min(a - b))
                        };
                        assert_eq!(binomial(a, b), want, "C({a},{b}) from thread {t}");
                    }
                })
            })
            .collect();
        for h in handles {
            h.join().unwrap();
        }
    }

    #[test]
    fn pascal_rule_random() {
        use proptest::prelude::*;
        let mut runner = proptest::test_runner::TestRunner::default();
        runner
            .run(&(1u64..=200, 1u64..=200), |(a, b)| {
                prop_assert_eq!(
                    binomial(a, b),
                    binomial(a - 1, b - 1) + binomial(a - 1, b)
                );
                Ok(())
            })
            .unwrap();
    }

    #[test]
    fn binomial_memo_cap_does_not_affect_values() {
        // With the cap at zero nothing new is stored; answers are
        // recomputed and must not change.
        set_binomial_memo_cap(0);
        for a in 0..60u64 {
            for b in 0..=a {
                assert_eq!(binomial(a, b), binomial_uncached(a, b.min(a - b)));
            }
        }
        set_binomial_memo_cap(DEFAULT_BINOMIAL_MEMO_CAP);
    }
}
