//! Truncated formal power series with exact rational coefficients, and the
//! generating function whose x^n coefficient counts the special conjugacy
//! classes of order dividing m in SU(n).
//!
//! The generating function is evaluated in its divisor-sum form
//!
//! ```text
//! G(x) = (1/m) Σ_{d|m} φ(d) (1 − x) / (1 − x^d)^{m/d}
//! ```
//!
//! which never touches roots of unity: each summand expands over the
//! rationals, so the whole computation stays exact.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numtheory::{binomial, divisors, euler_phi};

/// A formal power series truncated at an explicit order N: coefficients
/// for x^0 .. x^N, kept in lowest terms by `BigRational` itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesPoly {
    coeffs: Vec<BigRational>,
}

impl SeriesPoly {
    /// The zero series truncated at `order`.
    pub fn zero(order: u64) -> Self {
        SeriesPoly {
            coeffs: vec![BigRational::zero(); order as usize + 1],
        }
    }

    /// The constant series 1 truncated at `order`.
    pub fn one(order: u64) -> Self {
        let mut s = SeriesPoly::zero(order);
        s.coeffs[0] = BigRational::one();
        s
    }

    /// Builds a series from explicit coefficients; the truncation order is
    /// `coeffs.len() − 1`. Panics on an empty coefficient list.
    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least the x^0 slot");
        SeriesPoly { coeffs }
    }

    pub fn order(&self) -> u64 {
        (self.coeffs.len() - 1) as u64
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// The coefficient of x^n, or a range error past the truncation order.
    pub fn coefficient(&self, n: u64) -> Result<&BigRational> {
        self.coeffs.get(n as usize).ok_or(Error::Range {
            index: n,
            order: self.order(),
        })
    }

    /// Sum, truncated to the shorter of the two orders.
    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().min(other.coeffs.len());
        SeriesPoly {
            coeffs: (0..len)
                .map(|i| &self.coeffs[i] + &other.coeffs[i])
                .collect(),
        }
    }

    /// Difference, truncated to the shorter of the two orders.
    pub fn sub(&self, other: &Self) -> Self {
        let len = self.coeffs.len().min(other.coeffs.len());
        SeriesPoly {
            coeffs: (0..len)
                .map(|i| &self.coeffs[i] - &other.coeffs[i])
                .collect(),
        }
    }

    /// Product, truncated to the shorter of the two orders.
    pub fn mul(&self, other: &Self) -> Self {
        let len = self.coeffs.len().min(other.coeffs.len());
        let mut out = vec![BigRational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                if b.is_zero() {
                    continue;
                }
                out[i + j] += a * b;
            }
        }
        SeriesPoly { coeffs: out }
    }

    /// Scalar multiple.
    pub fn scale(&self, c: &BigRational) -> Self {
        SeriesPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplication by x^k (coefficients shift up, truncation preserved).
    pub fn shift_up(&self, k: u64) -> Self {
        let len = self.coeffs.len();
        let mut out = vec![BigRational::zero(); len];
        for i in 0..len.saturating_sub(k as usize) {
            out[i + k as usize] = self.coeffs[i].clone();
        }
        SeriesPoly { coeffs: out }
    }
}

/// The expansion of (1 − x^d)^(−e) to the given truncation order:
/// Σ_b C(e+b−1, b) x^(d·b).
pub fn geometric_pow(d: u64, e: u64, order: u64) -> Result<SeriesPoly> {
    if d == 0 || e == 0 {
        return Err(Error::Domain(
            "geometric_pow requires d ≥ 1 and e ≥ 1".into(),
        ));
    }
    let mut s = SeriesPoly::zero(order);
    let mut b = 0u64;
    while d * b <= order {
        let c = binomial(e + b - 1, b);
        s.coeffs[(d * b) as usize] = BigRational::from(BigInt::from(c));
        b += 1;
    }
    Ok(s)
}

/// Expands G(x) for modulus `m` to the given truncation order. Every
/// coefficient is checked to be a non-negative integer before returning.
pub fn expand_g(m: u64, order: u64) -> Result<SeriesPoly> {
    if m == 0 {
        return Err(Error::Domain("expand_g requires m ≥ 1".into()));
    }
    let mut sum = SeriesPoly::zero(order);
    for d in divisors(m)? {
        let phi_d = BigRational::from(BigInt::from(euler_phi(d)?));
        let term = geometric_pow(d, m / d, order)?;
        sum = sum.add(&term.scale(&phi_d));
    }
    // Multiply by (1 − x), then divide by m.
    let one_minus_x = sum.sub(&sum.shift_up(1));
    let inv_m = BigRational::new(BigInt::one(), BigInt::from(m));
    let g = one_minus_x.scale(&inv_m);
    for (n, c) in g.coeffs.iter().enumerate() {
        if !c.is_integer() || c.is_negative() {
            return Err(Error::Internal(format!(
                "coefficient of x^{n} in G for m={m} is {c}, not a non-negative integer"
            )));
        }
    }
    Ok(g)
}

/// The integer coefficients of G(x) for modulus `m`: entry `n` is the
/// number of special conjugacy classes of order dividing `m` in SU(n).
pub fn special_count_coefficients(m: u64, order: u64) -> Result<Vec<BigUint>> {
    let g = expand_g(m, order)?;
    Ok(g.coeffs
        .iter()
        .map(|c| {
            c.to_integer()
                .to_biguint()
                .expect("expand_g checked non-negativity")
        })
        .collect())
}
