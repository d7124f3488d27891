//! Polynomial relations `sum_i c_i(X) a^(e_i) = 0` and a linear-algebra
//! search for relations whose exponents are powers of `p`.

use serde::{Deserialize, Serialize};

use super::{check_prime, SeriesError, TruncatedSeries};
use crate::modp;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExponentPattern {
    /// The series raised to the power `e`. `Power(0)` is the constant 1,
    /// which makes the term a pure polynomial.
    Power(u64),
    /// The series with `X` replaced by `X^(p^i)`; equal to `a^(p^i)`.
    Frobenius(u32),
}

impl ExponentPattern {
    /// The exponent this pattern raises the series to, saturating on overflow.
    pub fn exponent(&self, p: u32) -> u64 {
        match *self {
            ExponentPattern::Power(e) => e,
            ExponentPattern::Frobenius(i) => (p as u64).checked_pow(i).unwrap_or(u64::MAX),
        }
    }

    fn apply(&self, a: &TruncatedSeries) -> TruncatedSeries {
        match *self {
            ExponentPattern::Power(e) => a.pow(e),
            ExponentPattern::Frobenius(i) => a.frobenius(i),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationTerm {
    /// Coefficient polynomial, lowest degree first.
    pub coeff: Vec<u32>,
    pub pattern: ExponentPattern,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawRelation")]
pub struct PolyRelation {
    p: u32,
    terms: Vec<RelationTerm>,
}

#[derive(Deserialize)]
struct RawRelation {
    p: u32,
    terms: Vec<RelationTerm>,
}

impl TryFrom<RawRelation> for PolyRelation {
    type Error = SeriesError;

    fn try_from(raw: RawRelation) -> Result<Self, Self::Error> {
        PolyRelation::new(raw.p, raw.terms)
    }
}

impl PolyRelation {
    pub fn new(p: u32, mut terms: Vec<RelationTerm>) -> Result<Self, SeriesError> {
        check_prime(p as u64)?;
        let mut seen = Vec::new();
        for t in &mut terms {
            for c in &mut t.coeff {
                *c %= p;
            }
            while t.coeff.last() == Some(&0) {
                t.coeff.pop();
            }
            let e = t.pattern.exponent(p);
            if seen.contains(&e) {
                return Err(SeriesError::DuplicateExponent(e));
            }
            seen.push(e);
        }
        if terms.iter().all(|t| t.coeff.is_empty()) {
            return Err(SeriesError::TrivialRelation);
        }
        Ok(Self { p, terms })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn terms(&self) -> &[RelationTerm] {
        &self.terms
    }

    /// Left-hand side evaluated at `a`, at the precision of `a`.
    pub fn residual(&self, a: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
        if a.modulus() != self.p {
            return Err(SeriesError::ModulusMismatch(self.p, a.modulus()));
        }
        let mut acc = TruncatedSeries::zero(self.p, a.precision())?;
        for t in &self.terms {
            if t.coeff.is_empty() {
                continue;
            }
            acc = acc.add(&t.pattern.apply(a).mul_poly(&t.coeff))?;
        }
        Ok(acc)
    }

    /// Zero-coefficient terms dropped, terms sorted by exponent, and scaled so
    /// that the first nonzero coefficient is 1.
    pub fn normalized(&self) -> Self {
        let p = self.p as u64;
        let mut terms: Vec<RelationTerm> = self
            .terms
            .iter()
            .filter(|t| !t.coeff.is_empty())
            .map(|t| RelationTerm {
                coeff: t.coeff.clone(),
                pattern: match t.pattern {
                    ExponentPattern::Frobenius(0) => ExponentPattern::Power(1),
                    other => other,
                },
            })
            .collect();
        terms.sort_by_key(|t| t.pattern.exponent(self.p));
        let lead = terms
            .iter()
            .flat_map(|t| t.coeff.iter())
            .find(|&&c| c != 0)
            .copied()
            .expect("nontrivial relation");
        let scale = modp::inv_mod(lead as u64, p);
        for t in &mut terms {
            for c in &mut t.coeff {
                *c = (*c as u64 * scale % p) as u32;
            }
        }
        Self { p: self.p, terms }
    }

    /// Whether both relations have the same terms after scaling by a nonzero
    /// constant. Frobenius and plain powers with equal exponents are identified.
    pub fn same_up_to_scalar(&self, other: &Self) -> bool {
        if self.p != other.p {
            return false;
        }
        let key = |r: &Self| -> Vec<(u64, Vec<u32>)> {
            r.normalized()
                .terms
                .into_iter()
                .map(|t| (t.pattern.exponent(r.p), t.coeff))
                .collect()
        };
        key(self) == key(other)
    }
}

pub fn relation_residual(
    r: &PolyRelation,
    a: &TruncatedSeries,
) -> Result<TruncatedSeries, SeriesError> {
    r.residual(a)
}

/// Searches for polynomials `c_0..c_d` and `c_inh` of degree at most
/// `max_coeff_degree`, not all zero, with
/// `c_inh(X) + sum_i c_i(X) a(X^(p^i)) = 0` to the precision of `a`.
///
/// The linear system is first solved on half of the available coefficients;
/// a candidate is only returned once its residual vanishes at full precision.
pub fn power_relation_search(
    a: &TruncatedSeries,
    max_frobenius_depth: u32,
    max_coeff_degree: usize,
) -> Result<Option<PolyRelation>, SeriesError> {
    let p = a.modulus();
    let n = a.precision();
    let width = max_coeff_degree + 1;
    let blocks = max_frobenius_depth as usize + 2;
    let unknowns = blocks * width;
    if n < 2 * unknowns {
        return Err(SeriesError::PrecisionTooSmall {
            precision: n,
            unknowns,
            required: 2 * unknowns,
        });
    }

    let mut columns: Vec<TruncatedSeries> =
        (0..=max_frobenius_depth).map(|i| a.frobenius(i)).collect();
    columns.push(TruncatedSeries::one(p, n)?);
    let build_rows = |rows: usize| -> Vec<Vec<u64>> {
        (0..rows)
            .map(|m| {
                let mut row = Vec::with_capacity(unknowns);
                for col in &columns {
                    for j in 0..width {
                        row.push(if m >= j { col.coeff(m - j) as u64 } else { 0 });
                    }
                }
                row
            })
            .collect()
    };

    let to_relation = |v: &[u64]| -> Result<PolyRelation, SeriesError> {
        let mut terms: Vec<RelationTerm> = (0..=max_frobenius_depth)
            .map(|i| RelationTerm {
                coeff: block(v, i as usize, width),
                pattern: ExponentPattern::Frobenius(i),
            })
            .collect();
        terms.push(RelationTerm {
            coeff: block(v, blocks - 1, width),
            pattern: ExponentPattern::Power(0),
        });
        Ok(PolyRelation::new(p, terms)?.normalized())
    };

    let pm = p as u64;
    let half = modp::nullspace(build_rows(n / 2), unknowns, pm);
    let Some(candidate) = half.first() else {
        return Ok(None);
    };
    let relation = to_relation(candidate)?;
    if relation.residual(a)?.is_zero() {
        return Ok(Some(relation));
    }
    let full = modp::nullspace(build_rows(n), unknowns, pm);
    match full.first() {
        None => Ok(None),
        Some(v) => {
            let relation = to_relation(v)?;
            if relation.residual(a)?.is_zero() {
                Ok(Some(relation))
            } else {
                Ok(None)
            }
        }
    }
}

fn block(v: &[u64], index: usize, width: usize) -> Vec<u32> {
    v[index * width..(index + 1) * width]
        .iter()
        .map(|&c| c as u32)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn term(coeff: &[u32], pattern: ExponentPattern) -> RelationTerm {
        RelationTerm {
            coeff: coeff.to_vec(),
            pattern,
        }
    }

    #[test]
    fn validation() {
        use ExponentPattern::*;
        assert_eq!(
            PolyRelation::new(2, vec![term(&[0, 0], Power(1))]),
            Err(SeriesError::TrivialRelation)
        );
        assert_eq!(
            PolyRelation::new(2, vec![term(&[1], Power(2)), term(&[1], Frobenius(1))]),
            Err(SeriesError::DuplicateExponent(2))
        );
    }

    #[test]
    fn finds_identity_relation() {
        for p in [2u32, 3, 5, 7] {
            let x = TruncatedSeries::x(p, 64).unwrap();
            let r = power_relation_search(&x, 0, 1).unwrap().unwrap();
            let expected = PolyRelation::new(
                p,
                vec![
                    term(&[1], ExponentPattern::Power(1)),
                    term(&[0, p - 1], ExponentPattern::Power(0)),
                ],
            )
            .unwrap();
            assert!(r.same_up_to_scalar(&expected), "p = {p}: {r:?}");
        }
    }

    #[test]
    fn refuses_low_precision() {
        let x = TruncatedSeries::x(2, 10).unwrap();
        assert!(matches!(
            power_relation_search(&x, 2, 3),
            Err(SeriesError::PrecisionTooSmall { required: 32, .. })
        ));
    }

    #[test]
    fn transcendental_looking_series_has_no_small_relation() {
        // coefficients 1 at triangular numbers: not algebraic of low degree
        let s = TruncatedSeries::from_fn(2, 400, |n| {
            let k = ((8 * n + 1) as f64).sqrt() as usize;
            u64::from(k * k == 8 * n + 1)
        })
        .unwrap();
        assert_eq!(power_relation_search(&s, 1, 4).unwrap(), None);
    }

    #[test]
    fn json_round_trip() {
        let r = PolyRelation::new(
            2,
            vec![
                term(&[1], ExponentPattern::Frobenius(0)),
                term(&[0, 1], ExponentPattern::Power(0)),
            ],
        )
        .unwrap();
        let text = serde_json::to_string(&r).unwrap();
        assert_eq!(
            text,
            r#"{"p":2,"terms":[{"coeff":[1],"pattern":{"frobenius":0}},{"coeff":[0,1],"pattern":{"power":0}}]}"#
        );
        assert_eq!(serde_json::from_str::<PolyRelation>(&text).unwrap(), r);
    }
}
