//! Truncated formal power series over a prime field `F_p`.
//!
//! A [`TruncatedSeries`] stores the coefficients of `X^0 .. X^(N-1)`; every
//! binary operation truncates to the smaller of the two precisions. All
//! arithmetic is exact.

mod relation;

pub use relation::{
    power_relation_search, relation_residual, ExponentPattern, PolyRelation, RelationTerm,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::modp;

/// Outer series with at most this many coefficients are composed by Horner's
/// rule; longer ones are split by residue class of the exponent mod p.
const HORNER_CUTOFF: usize = 48;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("{0} is not a prime modulus")]
    NotPrime(u64),
    #[error("precision must be at least 1")]
    ZeroPrecision,
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),
    #[error("inner series of a composition must have zero constant term")]
    NonzeroConstantTerm,
    #[error("series has nonzero constant term and cannot be reverted")]
    NotRevertible,
    #[error("linear coefficient is zero, so the series has no compositional inverse")]
    LinearTermNotInvertible,
    #[error("series has zero constant term and no multiplicative inverse")]
    NotAUnit,
    #[error("relation has no nonzero coefficient polynomial")]
    TrivialRelation,
    #[error("exponent {0} occurs twice in relation")]
    DuplicateExponent(u64),
    #[error("precision {precision} too small for {unknowns} unknowns (need at least {required})")]
    PrecisionTooSmall {
        precision: usize,
        unknowns: usize,
        required: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSeries")]
pub struct TruncatedSeries {
    p: u32,
    coeffs: Vec<u32>,
}

#[derive(Deserialize)]
struct RawSeries {
    p: u32,
    coeffs: Vec<u64>,
}

impl TryFrom<RawSeries> for TruncatedSeries {
    type Error = SeriesError;

    fn try_from(raw: RawSeries) -> Result<Self, Self::Error> {
        let p = raw.p as u64;
        check_prime(p)?;
        TruncatedSeries::new(
            raw.p,
            raw.coeffs.into_iter().map(|c| (c % p) as u32).collect(),
        )
    }
}

pub(crate) fn check_prime(p: u64) -> Result<(), SeriesError> {
    if p > u32::MAX as u64 || !modp::is_prime(p) {
        return Err(SeriesError::NotPrime(p));
    }
    Ok(())
}

impl TruncatedSeries {
    /// Builds a series from raw coefficients, reducing each one mod `p`.
    pub fn new(p: u32, coeffs: Vec<u32>) -> Result<Self, SeriesError> {
        check_prime(p as u64)?;
        if coeffs.is_empty() {
            return Err(SeriesError::ZeroPrecision);
        }
        let coeffs = coeffs.into_iter().map(|c| c % p).collect();
        Ok(Self { p, coeffs })
    }

    pub fn from_fn(
        p: u32,
        precision: usize,
        mut f: impl FnMut(usize) -> u64,
    ) -> Result<Self, SeriesError> {
        let pm = p as u64;
        check_prime(pm)?;
        Self::new(p, (0..precision).map(|n| (f(n) % pm) as u32).collect())
    }

    pub fn zero(p: u32, precision: usize) -> Result<Self, SeriesError> {
        Self::new(p, vec![0; precision])
    }

    pub fn one(p: u32, precision: usize) -> Result<Self, SeriesError> {
        Self::monomial(p, precision, 0, 1)
    }

    /// The identity series `X`.
    pub fn x(p: u32, precision: usize) -> Result<Self, SeriesError> {
        Self::monomial(p, precision, 1, 1)
    }

    pub fn monomial(p: u32, precision: usize, exp: usize, coeff: u32) -> Result<Self, SeriesError> {
        let mut s = Self::zero(p, precision)?;
        if exp < precision {
            s.coeffs[exp] = coeff % p;
        }
        Ok(s)
    }

    /// Generating function of a polynomial given by its coefficient list.
    pub fn from_poly(p: u32, precision: usize, poly: &[u32]) -> Result<Self, SeriesError> {
        Self::from_fn(p, precision, |n| poly.get(n).copied().unwrap_or(0) as u64)
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> u32 {
        self.coeffs[n]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Index of the first nonzero coefficient, if any.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }

    pub fn truncate(&self, precision: usize) -> Self {
        assert!(precision >= 1, "precision must stay positive");
        let n = precision.min(self.precision());
        Self {
            p: self.p,
            coeffs: self.coeffs[..n].to_vec(),
        }
    }

    fn with_coeffs(&self, coeffs: Vec<u32>) -> Self {
        Self { p: self.p, coeffs }
    }

    /// Same series padded with zero coefficients up to `precision`.
    fn padded(&self, precision: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(precision, 0);
        coeffs.truncate(precision);
        self.with_coeffs(coeffs)
    }

    fn same_field(&self, other: &Self) -> Result<(), SeriesError> {
        if self.p != other.p {
            return Err(SeriesError::ModulusMismatch(self.p, other.p));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.same_field(other)?;
        let p = self.p;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| (a + b) % p)
            .collect();
        Ok(self.with_coeffs(coeffs))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let p = self.p;
        self.with_coeffs(self.coeffs.iter().map(|&c| (p - c) % p).collect())
    }

    pub fn scale(&self, k: u32) -> Self {
        let p = self.p as u64;
        let k = k as u64 % p;
        self.with_coeffs(
            self.coeffs
                .iter()
                .map(|&c| (c as u64 * k % p) as u32)
                .collect(),
        )
    }

    /// Cauchy product truncated to the smaller precision.
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.same_field(other)?;
        let n = self.precision().min(other.precision());
        Ok(self.with_coeffs(convolve(self.p, &self.coeffs[..n], &other.coeffs[..n], n)))
    }

    /// Product with a polynomial, keeping this series' precision.
    pub fn mul_poly(&self, poly: &[u32]) -> Self {
        let p = self.p as u64;
        let n = self.precision();
        let mut out = vec![0u64; n];
        for (shift, &c) in poly.iter().enumerate() {
            let c = c as u64 % p;
            if c == 0 || shift >= n {
                continue;
            }
            for (o, &a) in out[shift..].iter_mut().zip(&self.coeffs) {
                *o = (*o + c * a as u64) % p;
            }
        }
        self.with_coeffs(out.into_iter().map(|c| c as u32).collect())
    }

    /// `a(X^(p^i))`, which equals `a^(p^i)` over `F_p`.
    pub fn frobenius(&self, i: u32) -> Self {
        let n = self.precision();
        let step = (self.p as usize).checked_pow(i).unwrap_or(usize::MAX);
        self.stretch(step, n)
    }

    /// `a(X^step)` truncated to `precision`.
    fn stretch(&self, step: usize, precision: usize) -> Self {
        let mut out = vec![0u32; precision];
        for (k, &c) in self.coeffs.iter().enumerate() {
            match k.checked_mul(step) {
                Some(idx) if idx < precision => out[idx] = c,
                _ => break,
            }
        }
        self.with_coeffs(out)
    }

    /// `a^e`, using `a^(d p^j) = (a^d)(X^(p^j))` for each base-p digit of `e`.
    pub fn pow(&self, mut e: u64) -> Self {
        let n = self.precision();
        let p = self.p as u64;
        let mut acc = Self::one(self.p, n).expect("valid modulus");
        let mut j = 0u32;
        while e > 0 {
            let digit = e % p;
            if digit > 0 {
                let mut term = self.clone();
                for _ in 1..digit {
                    term = term.mul(self).expect("same field");
                }
                acc = acc.mul(&term.frobenius(j)).expect("same field");
            }
            e /= p;
            j += 1;
            if e > 0 && (p as usize).checked_pow(j).map_or(true, |s| s >= n) {
                // Every remaining digit d contributes a(X^(p^j))^d = a_0^d
                // at this precision.
                let c0 = self.coeffs[0] as u64;
                let mut k = 1u64;
                while e > 0 {
                    k = k * modp::pow_mod(c0, e % p, p) % p;
                    e /= p;
                }
                return acc.scale(k as u32);
            }
        }
        acc
    }

    /// Formal derivative. The top coefficient is unknown at this precision
    /// and is set to zero.
    pub fn derivative(&self) -> Self {
        let p = self.p as u64;
        let n = self.precision();
        let coeffs = (0..n)
            .map(|k| {
                if k + 1 < n {
                    (((k + 1) as u64 % p) * self.coeffs[k + 1] as u64 % p) as u32
                } else {
                    0
                }
            })
            .collect();
        self.with_coeffs(coeffs)
    }

    /// Multiplicative inverse `1/a`; requires a nonzero constant term.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let p = self.p as u64;
        let a0 = self.coeffs[0] as u64;
        if a0 == 0 {
            return Err(SeriesError::NotAUnit);
        }
        let inv0 = modp::inv_mod(a0, p);
        let n = self.precision();
        let mut out = vec![0u64; n];
        out[0] = inv0;
        for k in 1..n {
            let mut acc = 0u64;
            for j in 1..=k {
                let a = self.coeffs[j] as u64;
                if a != 0 {
                    acc = (acc + a * out[k - j]) % p;
                }
            }
            out[k] = (p - acc) % p * inv0 % p;
        }
        Ok(self.with_coeffs(out.into_iter().map(|c| c as u32).collect()))
    }

    /// `self(inner(X))`; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self, SeriesError> {
        self.same_field(inner)?;
        if inner.coeffs[0] != 0 {
            return Err(SeriesError::NonzeroConstantTerm);
        }
        let n = self.precision().min(inner.precision());
        Ok(compose_rec(
            &self.coeffs[..n],
            &inner.truncate(n),
            n,
            self.p,
        ))
    }

    /// Compositional inverse `V` with `self(V) = X = V(self)`.
    ///
    /// Solved by Newton iteration on `self(V) - X = 0`, doubling the number
    /// of correct coefficients per step.
    pub fn reversion(&self) -> Result<Self, SeriesError> {
        if self.coeffs[0] != 0 {
            return Err(SeriesError::NotRevertible);
        }
        let n = self.precision();
        if n == 1 {
            return Ok(self.clone());
        }
        let a1 = self.coeffs[1];
        if a1 == 0 {
            return Err(SeriesError::LinearTermNotInvertible);
        }
        let p = self.p as u64;
        let deriv = self.derivative();
        let mut v = Self::monomial(self.p, 2, 1, modp::inv_mod(a1 as u64, p) as u32)?;
        let mut known = 2;
        while known < n {
            let m = (2 * known).min(n);
            let v_m = v.padded(m);
            let x = Self::x(self.p, m)?;
            let defect = self.truncate(m).compose(&v_m)?.sub(&x)?;
            let slope = deriv.truncate(m).compose(&v_m)?;
            let correction = defect.mul(&slope.inverse()?)?;
            v = v_m.sub(&correction)?;
            known = m;
        }
        Ok(v)
    }
}

/// Truncated convolution of two coefficient slices mod p, with reductions
/// deferred while the accumulators cannot overflow.
fn convolve(p: u32, a: &[u32], b: &[u32], n: usize) -> Vec<u32> {
    let p64 = p as u64;
    let max_term = (p64 - 1) * (p64 - 1);
    let batch = if max_term == 0 {
        u64::MAX
    } else {
        (u64::MAX - p64) / max_term
    };
    let mut acc = vec![0u64; n];
    let mut pending = 0u64;
    for (i, &ai) in a.iter().enumerate().take(n) {
        if ai == 0 {
            continue;
        }
        let ai = ai as u64;
        for (slot, &bj) in acc[i..].iter_mut().zip(b) {
            *slot += ai * bj as u64;
        }
        pending += 1;
        if pending >= batch {
            for slot in acc.iter_mut() {
                *slot %= p64;
            }
            pending = 0;
        }
    }
    acc.into_iter().map(|c| (c % p64) as u32).collect()
}

/// `outer(inner)` mod `X^n`, where `outer` has at most `n` coefficients.
///
/// Over `F_p`, `A(Y) = sum_r Y^r A_r(Y^p)` and `A_r(inner^p) = A_r(inner)(X^p)`,
/// so each `A_r` only needs composing to precision `ceil(n/p)`.
fn compose_rec(outer: &[u32], inner: &TruncatedSeries, n: usize, p: u32) -> TruncatedSeries {
    let len = outer.len().min(n);
    let outer = &outer[..len];
    if len <= HORNER_CUTOFF || n <= HORNER_CUTOFF {
        let mut acc = TruncatedSeries::zero(p, n).expect("valid modulus");
        for &c in outer.iter().rev() {
            acc = acc.mul(inner).expect("same field");
            acc.coeffs[0] = (acc.coeffs[0] + c) % p;
        }
        return acc;
    }
    let pu = p as usize;
    let sub_n = n.div_ceil(pu);
    let sub_inner = inner.truncate(sub_n);
    let mut total = TruncatedSeries::zero(p, n).expect("valid modulus");
    let mut inner_pow = TruncatedSeries::one(p, n).expect("valid modulus");
    for r in 0..pu {
        let part: Vec<u32> = outer.iter().skip(r).step_by(pu).copied().collect();
        if part.iter().any(|&c| c != 0) {
            let composed = compose_rec(&part, &sub_inner, sub_n, p).stretch(pu, n);
            let term = composed.mul(&inner_pow).expect("same field");
            total = total.add(&term).expect("same field");
        }
        if r + 1 < pu {
            inner_pow = inner_pow.mul(inner).expect("same field");
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(p: u32, c: &[u32]) -> TruncatedSeries {
        TruncatedSeries::new(p, c.to_vec()).unwrap()
    }

    /// Plain Horner composition, independent of the residue-splitting path.
    fn compose_horner(a: &TruncatedSeries, b: &TruncatedSeries) -> TruncatedSeries {
        let n = a.precision().min(b.precision());
        let mut acc = TruncatedSeries::zero(a.p, n).unwrap();
        for &c in a.coeffs[..n].iter().rev() {
            acc = acc.mul(b).unwrap();
            acc.coeffs[0] = (acc.coeffs[0] + c) % a.p;
        }
        acc
    }

    /// Term-by-term reversion from `V(a(X)) = X` using the table of powers of
    /// `a`; cubic time, used only as an oracle.
    fn reversion_by_powers(a: &TruncatedSeries) -> TruncatedSeries {
        let n = a.precision();
        let p = a.p as u64;
        let mut powers = vec![TruncatedSeries::one(a.p, n).unwrap()];
        for k in 1..n {
            powers.push(powers[k - 1].mul(a).unwrap());
        }
        let mut v = vec![0u64; n];
        for m in 1..n {
            let mut acc = 0u64;
            for (k, vk) in v.iter().enumerate().take(m).skip(1) {
                acc = (acc + vk * powers[k].coeffs[m] as u64) % p;
            }
            let target = u64::from(m == 1);
            let lead = powers[m].coeffs[m] as u64;
            v[m] = (target + p - acc) % p * modp::inv_mod(lead, p) % p;
        }
        s(a.p, &v.into_iter().map(|c| c as u32).collect::<Vec<_>>())
    }

    #[test]
    fn rejects_bad_construction() {
        assert_eq!(
            TruncatedSeries::new(4, vec![1]),
            Err(SeriesError::NotPrime(4))
        );
        assert_eq!(
            TruncatedSeries::new(2, vec![]),
            Err(SeriesError::ZeroPrecision)
        );
        assert_eq!(s(3, &[4, 5, 7]).coeffs(), &[1, 2, 1]);
    }

    #[test]
    fn freshman_square_over_f2() {
        let a = s(2, &[1, 1, 0, 0, 0]);
        assert_eq!(a.mul(&a).unwrap(), s(2, &[1, 0, 1, 0, 0]));
    }

    #[test]
    fn mul_truncates_and_checks_modulus() {
        let a = s(3, &[1, 2, 0, 1]);
        let b = s(3, &[2, 1]);
        assert_eq!(a.mul(&b).unwrap(), s(3, &[2, 2]));
        assert_eq!(a.mul(&s(5, &[1])), Err(SeriesError::ModulusMismatch(3, 5)));
    }

    #[test]
    fn compose_examples() {
        let a = s(3, &[1, 2, 0, 1, 1, 2]);
        let x = TruncatedSeries::x(3, 6).unwrap();
        assert_eq!(a.compose(&x).unwrap(), a);

        let b = s(2, &[0, 1, 1, 0, 0, 0, 0, 0]);
        assert_eq!(b.compose(&b).unwrap(), s(2, &[0, 1, 0, 0, 1, 0, 0, 0]));

        assert_eq!(
            a.compose(&s(3, &[1, 1])),
            Err(SeriesError::NonzeroConstantTerm)
        );
    }

    #[test]
    fn reversion_of_x_plus_x_squared() {
        let n = 300;
        let a = TruncatedSeries::from_poly(2, n, &[0, 1, 1]).unwrap();
        let v = a.reversion().unwrap();
        for k in 0..n {
            let expected = u32::from(k.is_power_of_two());
            assert_eq!(v.coeff(k), expected, "coefficient {k}");
        }
        assert_eq!(a.compose(&v).unwrap(), TruncatedSeries::x(2, n).unwrap());
    }

    #[test]
    fn reversion_errors() {
        assert_eq!(
            s(2, &[1, 1, 0]).reversion(),
            Err(SeriesError::NotRevertible)
        );
        assert_eq!(
            s(3, &[0, 0, 1]).reversion(),
            Err(SeriesError::LinearTermNotInvertible)
        );
        let x = TruncatedSeries::x(5, 10).unwrap();
        assert_eq!(x.reversion().unwrap(), x);
    }

    #[test]
    fn pow_matches_repeated_mul() {
        let a = s(3, &[2, 1, 0, 2, 1, 1, 0, 2, 1, 0, 0, 1, 2]);
        let mut acc = TruncatedSeries::one(3, a.precision()).unwrap();
        for e in 0..30u64 {
            assert_eq!(a.pow(e), acc, "exponent {e}");
            acc = acc.mul(&a).unwrap();
        }
        // exponent far beyond the precision
        let mut slow = TruncatedSeries::one(3, a.precision()).unwrap();
        for _ in 0..100 {
            slow = slow.mul(&a).unwrap();
        }
        assert_eq!(a.pow(100), slow);
    }

    #[test]
    fn inverse_roundtrip() {
        let a = s(5, &[3, 1, 4, 1, 0, 2, 2, 1]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), TruncatedSeries::one(5, 8).unwrap());
        assert_eq!(s(5, &[0, 1]).inverse(), Err(SeriesError::NotAUnit));
    }

    #[test]
    fn json_shape() {
        let a = s(2, &[0, 1, 0]);
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            r#"{"p":2,"coeffs":[0,1,0]}"#
        );
        let back: TruncatedSeries = serde_json::from_str(r#"{"p":3,"coeffs":[0,4,2]}"#).unwrap();
        assert_eq!(back, s(3, &[0, 1, 2]));
        assert!(serde_json::from_str::<TruncatedSeries>(r#"{"p":6,"coeffs":[0]}"#).is_err());
    }

    fn series_strategy(p: u32, n: usize) -> impl Strategy<Value = TruncatedSeries> {
        proptest::collection::vec(0..p, n).prop_map(move |c| s(p, &c))
    }

    fn revertible(p: u32, n: usize) -> impl Strategy<Value = TruncatedSeries> {
        (proptest::collection::vec(0..p, n), 1..p).prop_map(move |(mut c, lead)| {
            c[0] = 0;
            c[1] = lead;
            s(p, &c)
        })
    }

    proptest! {
        #[test]
        fn mul_commutes(a in series_strategy(3, 64), b in series_strategy(3, 64)) {
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        }

        #[test]
        fn frobenius_is_pth_power(
            (p, a) in prop_oneof![Just(2u32), Just(3u32), Just(5u32)]
                .prop_flat_map(|p| (Just(p), series_strategy(p, 80)))
        ) {
            let mut acc = TruncatedSeries::one(p, a.precision()).unwrap();
            for _ in 0..p {
                acc = acc.mul(&a).unwrap();
            }
            prop_assert_eq!(acc, a.frobenius(1));
        }

        #[test]
        fn compose_agrees_with_horner(
            (a, b) in prop_oneof![Just(2u32), Just(3u32), Just(5u32)].prop_flat_map(|p| {
                (series_strategy(p, 150), revertible(p, 150))
            })
        ) {
            prop_assert_eq!(a.compose(&b).unwrap(), compose_horner(&a, &b));
        }

        #[test]
        fn reversion_round_trip(
            a in prop_oneof![Just(2u32), Just(3u32), Just(5u32)]
                .prop_flat_map(|p| revertible(p, 120))
        ) {
            let v = a.reversion().unwrap();
            let x = TruncatedSeries::x(a.modulus(), a.precision()).unwrap();
            prop_assert_eq!(&a.compose(&v).unwrap(), &x);
            prop_assert_eq!(&v.compose(&a).unwrap(), &x);
            prop_assert_eq!(v, reversion_by_powers(&a));
        }
    }
}
