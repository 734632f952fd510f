//! Cross-module identities that tie the three computation routes together
//! beyond the acceptance bounds.

use num_bigint::BigInt;
use num_rational::BigRational;

use suclass::counting::count_special_formula;
use suclass::series::expand_g;

/// The generating-function coefficients reproduce the closed form far past
/// the enumeration range: every coefficient of G(x) up to x^40 equals the
/// divisor-sum formula, for every modulus up to 12.
#[test]
fn series_coefficients_match_closed_form_to_order_40() {
    for m in 1..=12u64 {
        let g = expand_g(m, 40).unwrap();
        for n in 1..=40u64 {
            let coeff = g.coefficient(n).unwrap();
            let want = BigRational::from(BigInt::from(count_special_formula(n, m).unwrap()));
            assert_eq!(coeff, &want, "coefficient of x^{n} at m={m}");
        }
    }
}

/// expand_g re-validates integrality and non-negativity internally; this
/// exercises that path at the full sweep width.
#[test]
fn series_integrality_sweep() {
    for m in 1..=12u64 {
        let g = expand_g(m, 40).unwrap();
        assert_eq!(g.order(), 40);
        for c in g.coeffs() {
            assert!(c.is_integer());
        }
    }
}
