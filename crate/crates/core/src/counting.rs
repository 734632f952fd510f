//! Counts of special conjugacy classes: the closed-form divisor-sum
//! formula, its prime specializations, and enumeration/series oracles that
//! recompute every count independently.
//!
//! The closed form for the number of classes of elements of order
//! dividing m in SU(n) with no eigenvalue 1 is
//!
//! ```text
//! N'(n, m) = (1/m) [ Σ_{d|(m,n)}   φ(d)·C(m/d + n/d − 1, n/d)
//!                  − Σ_{d|(m,n−1)} φ(d)·C(m/d + (n−1)/d − 1, (n−1)/d) ]
//! ```
//!
//! The division by m is provably exact; a remainder is reported as an
//! internal error rather than rounded away.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{CheckedSub, One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numtheory::{binomial, divisors, exact_div, mobius, phi, require_prime};
use crate::series::special_count_coefficients;
use crate::spectra::{order_of_counts, spectrum_partitions};

/// Default ceiling for the enumeration search-space estimate C(m+n−2, n).
pub const DEFAULT_ENUMERATION_CEILING: u64 = 100_000_000;

/// How a count was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountMethod {
    ClosedForm,
    Enumeration,
    Series,
    ExactOrderVariant,
}

impl CountMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            CountMethod::ClosedForm => "closed_form",
            CountMethod::Enumeration => "enumeration",
            CountMethod::Series => "series",
            CountMethod::ExactOrderVariant => "exact_order_variant",
        }
    }
}

impl fmt::Display for CountMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A count together with every method that produced it, for audits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountReport {
    pub n: u64,
    pub m: u64,
    /// The first recorded method's value.
    pub count: BigUint,
    pub method_counts: Vec<(CountMethod, BigUint)>,
    /// True iff every recorded method produced the identical count.
    pub agreement: bool,
}

impl CountReport {
    pub fn from_methods(n: u64, m: u64, method_counts: Vec<(CountMethod, BigUint)>) -> Self {
        assert!(!method_counts.is_empty(), "a report needs at least one method");
        let count = method_counts[0].1.clone();
        let agreement = method_counts.iter().all(|(_, c)| *c == count);
        CountReport {
            n,
            m,
            count,
            method_counts,
            agreement,
        }
    }
}

/// Closed-form count of special conjugacy classes of elements of order
/// dividing `m` in SU(`n`).
pub fn count_special_formula(n: u64, m: u64) -> Result<BigUint> {
    if n == 0 || m == 0 {
        return Err(Error::Domain("count_special_formula requires n, m ≥ 1".into()));
    }
    let sum1 = divisor_sum(m, n);
    let sum2 = divisor_sum(m, n - 1);
    let diff = sum1
        .checked_sub(&sum2)
        .ok_or_else(|| Error::Internal(format!("negative class count for n={n} m={m}")))?;
    exact_div(diff, m, "count_special_formula")
}

/// Σ_{d|(m,j)} φ(d)·C(m/d + j/d − 1, j/d); `j = 0` sums over all divisors
/// of m and contributes exactly m.
fn divisor_sum(m: u64, j: u64) -> BigUint {
    let g = m.gcd(&j);
    divisors(g)
        .expect("g ≥ 1")
        .into_iter()
        .map(|d| BigUint::from(phi(d)) * binomial(m / d + j / d - 1, j / d))
        .sum()
}

/// Prime specialization: (1/p)[C(p+n−2, n) + (p−1)·α] with α = 1 when
/// p | n, −1 when p | n−1, and 0 otherwise.
pub fn count_special_prime(n: u64, p: u64) -> Result<BigUint> {
    require_prime(p)?;
    if n == 0 {
        return Err(Error::Domain("count_special_prime requires n ≥ 1".into()));
    }
    let base = binomial(p + n - 2, n);
    let divides_n = n.is_multiple_of(p);
    let divides_n1 = (n - 1).is_multiple_of(p);
    // p ≥ 2 cannot divide both n and n−1.
    debug_assert!(!(divides_n && divides_n1));
    let adjusted = if divides_n {
        base + BigUint::from(p - 1)
    } else if divides_n1 {
        base.checked_sub(&BigUint::from(p - 1))
            .ok_or_else(|| Error::Internal(format!("negative count at n={n} p={p}")))?
    } else {
        base
    };
    exact_div(adjusted, p, "count_special_prime")
}

/// Count of special element classes of order dividing `q` in SU(`p`) for
/// primes p and q (the two-prime and equal-prime closed forms).
pub fn count_special_pq(p: u64, q: u64) -> Result<BigUint> {
    require_prime(p)?;
    require_prime(q)?;
    if p == q {
        let value = BigUint::from(p - 1) + binomial(2 * p - 2, p);
        return exact_div(value, p, "count_special_pq (p = q)");
    }
    let base = binomial(q + p - 2, p);
    let num = if (p - 1).is_multiple_of(q) {
        base.checked_sub(&BigUint::from(q - 1))
            .ok_or_else(|| Error::Internal(format!("negative count at p={p} q={q}")))?
    } else {
        base
    };
    exact_div(num, q, "count_special_pq")
}

/// Checks the enumeration search-space estimate C(m+n−2, n) against a
/// ceiling, returning the estimate. The estimate is computed with early
/// abort, so huge parameters fail fast.
pub fn enumeration_guard(n: u64, m: u64, ceiling: u64) -> Result<BigUint> {
    if n == 0 || m == 0 {
        return Err(Error::Domain("enumeration requires n, m ≥ 1".into()));
    }
    let ceiling_big = BigUint::from(ceiling);
    let a = m as u128 + n as u128 - 2;
    let b = (n as u128).min(m.saturating_sub(2) as u128);
    let mut estimate = BigUint::one();
    for i in 0..b {
        estimate *= BigUint::from(a - b + i + 1);
        estimate /= BigUint::from(i + 1);
        // Partial products are binomials themselves and only grow.
        if estimate > ceiling_big {
            return Err(Error::ResourceLimit {
                estimate,
                ceiling: ceiling_big,
            });
        }
    }
    Ok(estimate)
}

/// Enumeration oracle for [`count_special_formula`], under the default
/// search-space ceiling.
pub fn count_special_enumeration(n: u64, m: u64) -> Result<BigUint> {
    count_special_enumeration_with_ceiling(n, m, DEFAULT_ENUMERATION_CEILING)
}

pub fn count_special_enumeration_with_ceiling(n: u64, m: u64, ceiling: u64) -> Result<BigUint> {
    enumeration_guard(n, m, ceiling)?;
    let parts = spectrum_partitions(n, m, true)?;
    let total: u64 = parts.into_par_iter().map(|it| it.count_remaining()).sum();
    Ok(BigUint::from(total))
}

/// Count of all conjugacy classes of elements of order dividing `m`
/// (eigenvalue 1 allowed), by enumeration only.
pub fn count_all_enumeration(n: u64, m: u64) -> Result<BigUint> {
    count_all_enumeration_with_ceiling(n, m, DEFAULT_ENUMERATION_CEILING)
}

pub fn count_all_enumeration_with_ceiling(n: u64, m: u64, ceiling: u64) -> Result<BigUint> {
    enumeration_guard(n, m, ceiling)?;
    let parts = spectrum_partitions(n, m, false)?;
    let total: u64 = parts.into_par_iter().map(|it| it.count_remaining()).sum();
    Ok(BigUint::from(total))
}

/// Möbius refinement of the closed form: the number of special spectra of
/// order exactly `m` (rather than dividing `m`).
pub fn count_special_exact_order(n: u64, m: u64) -> Result<BigUint> {
    if n == 0 || m == 0 {
        return Err(Error::Domain("count_special_exact_order requires n, m ≥ 1".into()));
    }
    let mut acc = BigInt::zero();
    for d in divisors(m)? {
        let mu = mobius(m / d)?;
        if mu == 0 {
            continue;
        }
        let term = BigInt::from(count_special_formula(n, d)?);
        acc += BigInt::from(mu) * term;
    }
    if acc.is_negative() {
        return Err(Error::Internal(format!(
            "Möbius refinement went negative at n={n} m={m}"
        )));
    }
    Ok(acc.to_biguint().expect("checked non-negative"))
}

/// Enumeration oracle for the exact-order count: the special stream
/// filtered to spectra of multiplicative order exactly `m`.
pub fn count_special_exact_order_enumeration(n: u64, m: u64, ceiling: u64) -> Result<BigUint> {
    enumeration_guard(n, m, ceiling)?;
    let parts = spectrum_partitions(n, m, true)?;
    let total: u64 = parts
        .into_par_iter()
        .map(|mut it| {
            let mut count = 0;
            while it.advance() {
                if order_of_counts(m, it.current_counts()) == m {
                    count += 1;
                }
            }
            count
        })
        .sum();
    Ok(BigUint::from(total))
}

/// Series route for the exact-order count: the same Möbius combination
/// applied to generating-function coefficients.
pub fn count_special_exact_order_series(n: u64, m: u64) -> Result<BigUint> {
    if n == 0 || m == 0 {
        return Err(Error::Domain("count_special_exact_order_series requires n, m ≥ 1".into()));
    }
    let mut acc = BigInt::zero();
    for d in divisors(m)? {
        let mu = mobius(m / d)?;
        if mu == 0 {
            continue;
        }
        let coeff = special_count_coefficients(d, n)?
            .pop()
            .expect("coefficient vector reaches index n");
        acc += BigInt::from(mu) * BigInt::from(coeff);
    }
    if acc.is_negative() {
        return Err(Error::Internal(format!(
            "series Möbius refinement went negative at n={n} m={m}"
        )));
    }
    Ok(acc.to_biguint().expect("checked non-negative"))
}

/// Runs closed form, enumeration, and series extraction, and reports
/// whether they agree. Disagreement is a reportable result, not an error.
pub fn cross_check(n: u64, m: u64) -> Result<CountReport> {
    cross_check_with_ceiling(n, m, DEFAULT_ENUMERATION_CEILING)
}

pub fn cross_check_with_ceiling(n: u64, m: u64, ceiling: u64) -> Result<CountReport> {
    let formula = count_special_formula(n, m)?;
    let enumerated = count_special_enumeration_with_ceiling(n, m, ceiling)?;
    let series = special_count_coefficients(m, n)?
        .pop()
        .expect("coefficient vector reaches index n");
    Ok(CountReport::from_methods(
        n,
        m,
        vec![
            (CountMethod::ClosedForm, formula),
            (CountMethod::Enumeration, enumerated),
            (CountMethod::Series, series),
        ],
    ))
}

/// Exact-order variant of [`cross_check`]: Möbius-refined closed form,
/// filtered enumeration, and Möbius-combined series coefficients.
pub fn cross_check_exact_order(n: u64, m: u64, ceiling: u64) -> Result<CountReport> {
    let formula = count_special_exact_order(n, m)?;
    let enumerated = count_special_exact_order_enumeration(n, m, ceiling)?;
    let series = count_special_exact_order_series(n, m)?;
    Ok(CountReport::from_methods(
        n,
        m,
        vec![
            (CountMethod::ExactOrderVariant, formula),
            (CountMethod::Enumeration, enumerated),
            (CountMethod::Series, series),
        ],
    ))
}
