//! Eigenvalue spectra of finite-order diagonal SU(n) elements.
//!
//! A [`Spectrum`] records, for a modulus m, how many times each m-th root
//! of unity e^(2πik/m) occurs as an eigenvalue. Validity means the
//! multiplicities sum to the matrix dimension and the weighted exponent
//! sum is divisible by m (determinant 1). The same data in human-readable
//! form is an [`ExponentTuple`]: the nondecreasing list of exponents with
//! repetition.
//!
//! [`enumerate_spectra`] walks all valid spectra as a stream without
//! materializing the composition space. The walk assigns multiplicities
//! slot by slot and prunes with an exact reachability test: with r units
//! left to place on exponents j..m−1, the achievable weighted sums are
//! precisely the integers in [j·r, (m−1)·r], so a branch survives iff that
//! interval meets the required residue class mod m. Every surviving branch
//! therefore reaches at least one valid leaf.

use num_integer::Integer;

use crate::error::{Error, Result};

/// Largest modulus accepted by the enumerator (the multiplicity vector is
/// dense in m).
const MAX_ENUMERABLE_MODULUS: u64 = 1 << 32;

/// Multiplicity vector of eigenvalue exponents for a diagonal element of
/// order dividing m.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Spectrum {
    m: u64,
    counts: Vec<u64>,
}

impl Spectrum {
    /// Validates and builds a spectrum. `counts[k]` is the multiplicity of
    /// the eigenvalue with exponent k; the vector must have length m, sum
    /// to at least 1, and satisfy Σ k·counts[k] ≡ 0 (mod m).
    pub fn new(m: u64, counts: Vec<u64>) -> Result<Self> {
        if m == 0 {
            return Err(Error::Domain("spectrum modulus must be positive".into()));
        }
        if counts.len() as u64 != m {
            return Err(Error::Domain(format!(
                "spectrum for modulus {m} needs exactly {m} multiplicities, got {}",
                counts.len()
            )));
        }
        let n: u64 = counts.iter().sum();
        if n == 0 {
            return Err(Error::Domain("spectrum dimension must be at least 1".into()));
        }
        let weighted = counts
            .iter()
            .enumerate()
            .fold(0u128, |acc, (k, &c)| acc + k as u128 * c as u128);
        if weighted % m as u128 != 0 {
            return Err(Error::Domain(format!(
                "weighted exponent sum {weighted} is not divisible by modulus {m}"
            )));
        }
        Ok(Spectrum { m, counts })
    }

    /// Construction for enumerator output, which is valid by construction.
    pub(crate) fn from_raw(m: u64, counts: Vec<u64>) -> Self {
        debug_assert!(Spectrum::new(m, counts.clone()).is_ok());
        Spectrum { m, counts }
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Matrix dimension n = Σ counts.
    pub fn dimension(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn count_at(&self, k: u64) -> u64 {
        self.counts[k as usize]
    }

    /// Exponents with non-zero multiplicity, ascending.
    pub fn support(&self) -> impl Iterator<Item = u64> + '_ {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(k, _)| k as u64)
    }

    /// Exact multiplicative order of the diagonal element:
    /// m / gcd(m, gcd of the support).
    pub fn order(&self) -> u64 {
        order_of_counts(self.m, &self.counts)
    }

    /// True iff all eigenvalues coincide, i.e. the element is scalar.
    pub fn is_center(&self) -> bool {
        self.support().count() == 1
    }

    /// True iff the element generates a cyclic subgroup none of whose
    /// non-identity elements has eigenvalue 1: every support exponent is
    /// coprime to m. The explicit exponent-0 exclusion only bites at
    /// m = 1, where the element is the identity.
    pub fn is_special_subgroup_generator(&self) -> bool {
        self.counts[0] == 0 && self.support().all(|k| k.gcd(&self.m) == 1)
    }

    /// The sorted exponent list with multiplicity.
    pub fn to_exponent_tuple(&self) -> ExponentTuple {
        ExponentTuple {
            m: self.m,
            exponents: expand_counts(&self.counts),
        }
    }
}

pub(crate) fn order_of_counts(m: u64, counts: &[u64]) -> u64 {
    let g = counts
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .fold(m, |acc, (k, _)| acc.gcd(&(k as u64)));
    m / g
}

pub(crate) fn expand_counts(counts: &[u64]) -> Vec<u64> {
    let mut exps = Vec::with_capacity(counts.iter().sum::<u64>() as usize);
    for (k, &c) in counts.iter().enumerate() {
        for _ in 0..c {
            exps.push(k as u64);
        }
    }
    exps
}

/// Nondecreasing exponent list [a₁ ≤ … ≤ a_n] with Σ aᵢ ≡ 0 (mod m);
/// `[a₁, …, a_n]` describes the diagonal matrix diag(ζ^a₁, …, ζ^a_n).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExponentTuple {
    m: u64,
    exponents: Vec<u64>,
}

impl ExponentTuple {
    /// Validates and builds a tuple; the exponent list is sorted into the
    /// canonical nondecreasing form.
    pub fn new(m: u64, mut exponents: Vec<u64>) -> Result<Self> {
        if m == 0 {
            return Err(Error::Domain("tuple modulus must be positive".into()));
        }
        if exponents.is_empty() {
            return Err(Error::Domain("tuple needs at least one exponent".into()));
        }
        if let Some(&bad) = exponents.iter().find(|&&a| a >= m) {
            return Err(Error::Domain(format!(
                "exponent {bad} is out of range for modulus {m}"
            )));
        }
        let sum: u128 = exponents.iter().map(|&a| a as u128).sum();
        if !sum.is_multiple_of(m as u128) {
            return Err(Error::Domain(format!(
                "exponent sum {sum} is not divisible by modulus {m}"
            )));
        }
        exponents.sort_unstable();
        Ok(ExponentTuple { m, exponents })
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    /// The inverse of [`Spectrum::to_exponent_tuple`].
    pub fn to_spectrum(&self) -> Spectrum {
        let mut counts = vec![0u64; self.m as usize];
        for &a in &self.exponents {
            counts[a as usize] += 1;
        }
        Spectrum {
            m: self.m,
            counts,
        }
    }
}

impl std::fmt::Display for ExponentTuple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (i, a) in self.exponents.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "]")
    }
}

/// Streams every spectrum with dimension `n` and modulus `m`, in
/// lexicographic order on the multiplicity vector. With `special = true`
/// the exponent 0 is excluded (multiplicity 0), so no enumerated matrix
/// has eigenvalue 1.
pub fn enumerate_spectra(n: u64, m: u64, special: bool) -> Result<SpectrumIter> {
    validate_enumeration(n, m)?;
    Ok(SpectrumIter::new(n, m, special, 0, n))
}

/// Splits the stream of [`enumerate_spectra`] into independent parts by
/// the value of the first free multiplicity, for parallel sweeps. The
/// concatenation of the parts, in order, equals the serial stream exactly.
pub fn spectrum_partitions(n: u64, m: u64, special: bool) -> Result<Vec<SpectrumIter>> {
    validate_enumeration(n, m)?;
    let k0 = if special { 1 } else { 0 };
    if (k0 as u64) >= m - 1 {
        // No free slot to split on (m = 1, or m = 2 with special).
        return Ok(vec![SpectrumIter::new(n, m, special, 0, n)]);
    }
    Ok((0..=n)
        .map(|v| SpectrumIter::new(n, m, special, v, v))
        .collect())
}

fn validate_enumeration(n: u64, m: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("dimension n must be at least 1".into()));
    }
    if m == 0 {
        return Err(Error::Domain("modulus m must be at least 1".into()));
    }
    if m > MAX_ENUMERABLE_MODULUS {
        return Err(Error::Domain(format!(
            "modulus {m} exceeds the enumerable bound {MAX_ENUMERABLE_MODULUS}"
        )));
    }
    Ok(())
}

/// Streaming iterator over spectra. See [`enumerate_spectra`].
#[derive(Debug, Clone)]
pub struct SpectrumIter {
    m: u64,
    n: u64,
    k0: usize,
    counts: Vec<u64>,
    /// Dimension still unassigned when slot k is reached.
    rem_before: Vec<u64>,
    /// Weighted sum mod m of the slots before k.
    wsum_before: Vec<u64>,
    /// Bounds on the first free slot's value (used for partitioning).
    first_lo: u64,
    first_hi: u64,
    started: bool,
    done: bool,
}

impl SpectrumIter {
    fn new(n: u64, m: u64, special: bool, first_lo: u64, first_hi: u64) -> Self {
        let slots = m as usize;
        SpectrumIter {
            m,
            n,
            k0: usize::from(special),
            counts: vec![0; slots],
            rem_before: vec![0; slots],
            wsum_before: vec![0; slots],
            first_lo,
            first_hi,
            started: false,
            done: false,
        }
    }

    /// Positions the iterator at the next valid spectrum. Returns false
    /// when the stream is exhausted.
    pub fn advance(&mut self) -> bool {
        if self.done {
            return false;
        }
        let last = (self.m - 1) as usize;
        if !self.started {
            self.started = true;
            if self.k0 > last {
                // m = 1 with the zero exponent excluded: nothing to place.
                self.done = true;
                return false;
            }
            self.rem_before[self.k0] = self.n;
            self.wsum_before[self.k0] = 0;
            if self.descend(self.k0, self.first_lo) {
                return true;
            }
            self.done = true;
            return false;
        }
        for k in (self.k0..last).rev() {
            if self.descend(k, self.counts[k] + 1) {
                return true;
            }
        }
        self.done = true;
        false
    }

    /// Multiplicity vector of the spectrum the iterator is positioned on.
    pub fn current_counts(&self) -> &[u64] {
        &self.counts
    }

    /// Consumes the rest of the stream, counting without allocating.
    pub fn count_remaining(mut self) -> u64 {
        let mut count = 0;
        while self.advance() {
            count += 1;
        }
        count
    }

    /// From slot k (whose incoming state is already recorded), assign the
    /// smallest feasible values downward until the forced last slot.
    fn descend(&mut self, mut k: usize, mut min_v: u64) -> bool {
        let m = self.m;
        let last = (m - 1) as usize;
        loop {
            let r = self.rem_before[k];
            let s = self.wsum_before[k];
            if k == last {
                // Forced slot: all remaining dimension lands here.
                let total = (s as u128 + last as u128 * r as u128) % m as u128;
                if total != 0 {
                    return false;
                }
                self.counts[last] = r;
                return true;
            }
            let hi = if k == self.k0 {
                r.min(self.first_hi)
            } else {
                r
            };
            let mut chosen = None;
            let mut v = min_v;
            while v <= hi {
                let child_s = ((s as u128 + k as u128 * v as u128) % m as u128) as u64;
                if self.feasible(k + 1, r - v, child_s) {
                    chosen = Some((v, child_s));
                    break;
                }
                v += 1;
            }
            match chosen {
                None => return false,
                Some((v, child_s)) => {
                    self.counts[k] = v;
                    self.rem_before[k + 1] = r - v;
                    self.wsum_before[k + 1] = child_s;
                    k += 1;
                    min_v = 0;
                }
            }
        }
    }

    /// Exact reachability: with r units on slots k..m−1 the weighted sums
    /// achievable are all integers in [k·r, (m−1)·r]; the branch survives
    /// iff some member of that interval is ≡ −s (mod m).
    fn feasible(&self, k: usize, r: u64, s: u64) -> bool {
        let m = self.m as u128;
        let lo = k as u128 * r as u128;
        let hi = (self.m - 1) as u128 * r as u128;
        let target = (m - s as u128) % m;
        let first = lo + (target + m - lo % m) % m;
        first <= hi
    }
}

impl Iterator for SpectrumIter {
    type Item = Spectrum;

    fn next(&mut self) -> Option<Spectrum> {
        if self.advance() {
            Some(Spectrum::from_raw(self.m, self.counts.clone()))
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Oracle: nondecreasing exponent tuples by naive nested recursion,
    /// independent of the composition walk.
    fn tuple_oracle(n: u64, m: u64, special: bool) -> Vec<Vec<u64>> {
        let mut out = Vec::new();
        let lo = u64::from(special);
        fn rec(out: &mut Vec<Vec<u64>>, prefix: &mut Vec<u64>, lo: u64, m: u64, rem: u64, sum: u64) {
            if rem == 0 {
                if sum.is_multiple_of(m) {
                    out.push(prefix.clone());
                }
                return;
            }
            for a in lo..m {
                prefix.push(a);
                rec(out, prefix, a, m, rem - 1, sum + a);
                prefix.pop();
            }
        }
        rec(&mut out, &mut Vec::new(), lo, m, n, 0);
        out
    }

    fn collect_tuples(n: u64, m: u64, special: bool) -> Vec<Vec<u64>> {
        enumerate_spectra(n, m, special)
            .unwrap()
            .map(|s| s.to_exponent_tuple().exponents().to_vec())
            .collect()
    }

    #[test]
    fn matches_naive_oracle() {
        for n in 1..=10 {
            for m in 1..=10 {
                for special in [false, true] {
                    let mut got = collect_tuples(n, m, special);
                    let mut want = tuple_oracle(n, m, special);
                    got.sort();
                    want.sort();
                    assert_eq!(got, want, "n={n} m={m} special={special}");
                }
            }
        }
    }

    #[test]
    fn unique_spectrum_for_su2_order3() {
        let all: Vec<Spectrum> = enumerate_spectra(2, 3, true).unwrap().collect();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].counts(), &[0, 1, 1]);
    }

    #[test]
    fn su5_includes_paper_generator() {
        let target = Spectrum::new(5, vec![0, 3, 0, 1, 1]).unwrap();
        assert!(enumerate_spectra(5, 5, true).unwrap().any(|s| s == target));
    }

    #[test]
    fn su1_special_is_empty() {
        for m in 1..=12 {
            assert_eq!(enumerate_spectra(1, m, true).unwrap().count(), 0, "m={m}");
        }
    }

    #[test]
    fn zero_arguments_are_domain_errors() {
        assert!(enumerate_spectra(0, 3, false).is_err());
        assert!(enumerate_spectra(3, 0, false).is_err());
    }

    #[test]
    fn stream_is_lexicographic_and_valid() {
        for (n, m, special) in [(6, 6, false), (6, 6, true), (7, 5, false), (5, 8, true)] {
            let mut prev: Option<Vec<u64>> = None;
            for s in enumerate_spectra(n, m, special).unwrap() {
                // Re-validate every yielded spectrum against the type invariants.
                let revalidated = Spectrum::new(s.modulus(), s.counts().to_vec()).unwrap();
                assert_eq!(revalidated.dimension(), n);
                if special {
                    assert_eq!(s.counts()[0], 0);
                }
                let cur = s.counts().to_vec();
                if let Some(p) = prev {
                    assert!(p < cur, "stream must strictly ascend: {p:?} then {cur:?}");
                }
                prev = Some(cur);
            }
        }
    }

    #[test]
    fn special_stream_is_filtered_general_stream() {
        for n in 1..=10 {
            for m in 1..=10 {
                let special: Vec<Spectrum> = enumerate_spectra(n, m, true).unwrap().collect();
                let filtered: Vec<Spectrum> = enumerate_spectra(n, m, false)
                    .unwrap()
                    .filter(|s| s.counts()[0] == 0)
                    .collect();
                assert_eq!(special, filtered, "n={n} m={m}");
            }
        }
    }

    #[test]
    fn partitions_concatenate_to_serial_stream() {
        for (n, m, special) in [(8, 7, true), (8, 7, false), (6, 9, true), (5, 2, true), (4, 1, false)] {
            let serial: Vec<Spectrum> = enumerate_spectra(n, m, special).unwrap().collect();
            let parts: Vec<Spectrum> = spectrum_partitions(n, m, special)
                .unwrap()
                .into_iter()
                .flatten()
                .collect();
            assert_eq!(serial, parts, "n={n} m={m} special={special}");
        }
    }

    #[test]
    fn order_examples() {
        let s = Spectrum::new(12, {
            let mut c = vec![0; 12];
            c[4] = 3;
            c[6] = 2;
            c
        })
        .unwrap();
        assert_eq!(s.order(), 6);

        let s = Spectrum::new(5, vec![0, 3, 0, 1, 1]).unwrap();
        assert_eq!(s.order(), 5);

        let s = Spectrum::new(4, vec![0, 0, 2, 0]).unwrap();
        assert_eq!(s.order(), 2);

        // Identity spectrum has order 1.
        let s = Spectrum::new(6, vec![3, 0, 0, 0, 0, 0]).unwrap();
        assert_eq!(s.order(), 1);
    }

    #[test]
    fn order_divides_modulus_and_is_m_for_special_prime() {
        for n in 1..=8 {
            for m in 1..=8 {
                for s in enumerate_spectra(n, m, false).unwrap() {
                    assert_eq!(m % s.order(), 0, "order divides m");
                }
                if [2u64, 3, 5, 7].contains(&m) {
                    for s in enumerate_spectra(n, m, true).unwrap() {
                        assert_eq!(s.order(), m, "special spectra at prime m");
                    }
                }
            }
        }
    }

    #[test]
    fn tuple_round_trip_paper_examples() {
        let t = ExponentTuple::new(7, vec![1, 2, 2, 2, 2, 2, 3]).unwrap();
        let s = t.to_spectrum();
        assert_eq!(s.counts(), &[0, 1, 5, 1, 0, 0, 0]);
        assert_eq!(s.to_exponent_tuple(), t);

        let t = ExponentTuple::new(5, vec![1, 1, 2, 2, 4]).unwrap();
        let s = t.to_spectrum();
        assert_eq!(s.counts(), &[0, 2, 2, 0, 1]);
        assert_eq!(s.to_exponent_tuple(), t);
    }

    #[test]
    fn tuple_round_trip_exhaustive() {
        for n in 1..=8 {
            for m in 1..=8 {
                for s in enumerate_spectra(n, m, false).unwrap() {
                    assert_eq!(s.to_exponent_tuple().to_spectrum(), s);
                }
            }
        }
    }

    #[test]
    fn tuple_validation_errors() {
        assert!(ExponentTuple::new(7, vec![1, 2, 7]).is_err());
        assert!(ExponentTuple::new(7, vec![1, 2, 3]).is_err());
        assert!(ExponentTuple::new(0, vec![0]).is_err());
        assert!(ExponentTuple::new(3, vec![]).is_err());
        // Input order does not matter; the tuple canonicalizes.
        let t = ExponentTuple::new(5, vec![4, 1, 2, 2, 1]).unwrap();
        assert_eq!(t.exponents(), &[1, 1, 2, 2, 4]);
    }

    #[test]
    fn center_detection() {
        let s = Spectrum::new(7, vec![0, 7, 0, 0, 0, 0, 0]).unwrap();
        assert!(s.is_center());
        let t = ExponentTuple::new(7, vec![1, 2, 2, 2, 2, 2, 3]).unwrap();
        assert!(!t.to_spectrum().is_center());
        // Standard inclusion of SU(3)'s center in SU(4): eigenvalue 1 present.
        let s = Spectrum::new(3, vec![1, 3, 0]).unwrap();
        assert!(!s.is_center());
        assert!(!s.is_special_subgroup_generator());
    }

    #[test]
    fn special_generator_examples() {
        // Support {2, 3} mod 4: squaring hits eigenvalue 1 early.
        let s = Spectrum::new(4, vec![0, 0, 1, 2]).unwrap();
        assert!(!s.is_special_subgroup_generator());

        let s = ExponentTuple::new(6, vec![1, 5]).unwrap().to_spectrum();
        assert!(s.is_special_subgroup_generator());

        // Prime modulus: every special spectrum generates a special subgroup.
        for s in enumerate_spectra(5, 5, true).unwrap() {
            assert!(s.is_special_subgroup_generator());
        }

        // m = 1: the only subgroup is trivial and its generator is the identity.
        let s = Spectrum::new(1, vec![3]).unwrap();
        assert!(!s.is_special_subgroup_generator());
    }

    /// The coprime-support criterion agrees with the brute-force power
    /// check: an exact-order-m generator is special iff no power h^t with
    /// t in 1..m has eigenvalue 1.
    #[test]
    fn special_generator_brute_force_lemma() {
        for n in 1..=8u64 {
            for m in 2..=8u64 {
                for s in enumerate_spectra(n, m, false).unwrap() {
                    let brute = s.order() == m
                        && (1..m).all(|t| s.support().all(|k| (t * k) % m != 0));
                    assert_eq!(
                        s.is_special_subgroup_generator(),
                        brute,
                        "n={n} m={m} counts={:?}",
                        s.counts()
                    );
                }
            }
        }
    }

    #[test]
    fn special_generator_implies_no_eigenvalue_one() {
        for n in 1..=8u64 {
            for m in 1..=8u64 {
                for s in enumerate_spectra(n, m, false).unwrap() {
                    if s.is_special_subgroup_generator() {
                        assert_eq!(s.counts()[0], 0);
                    }
                }
            }
        }
    }

    #[test]
    fn random_tuples_round_trip() {
        use proptest::prelude::*;
        let mut runner = proptest::test_runner::TestRunner::default();
        runner
            .run(
                &(2u64..=12, proptest::collection::vec(0u64..1000, 0..=9)),
                |(m, raw)| {
                    // Fix the last exponent so the sum constraint holds.
                    let mut exps: Vec<u64> = raw.iter().map(|&a| a % m).collect();
                    let sum: u64 = exps.iter().sum();
                    exps.push((m - sum % m) % m);
                    let t = ExponentTuple::new(m, exps).unwrap();
                    let s = t.to_spectrum();
                    prop_assert_eq!(s.to_exponent_tuple(), t.clone());
                    prop_assert_eq!(s.dimension() as usize, t.len());
                    // Spectrum validity is re-checked by the constructor.
                    Spectrum::new(s.modulus(), s.counts().to_vec()).unwrap();
                    Ok(())
                },
            )
            .unwrap();
    }
}
