//! Perron–Frobenius eigenvalues of incidence matrices, computed from exact
//! characteristic polynomials, and multiplicative independence of the
//! resulting algebraic numbers.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::MorphismError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceMatrix {
    entries: Vec<Vec<u64>>,
}

impl IncidenceMatrix {
    /// Square matrix given row by row.
    pub fn new(entries: Vec<Vec<u64>>) -> Self {
        let n = entries.len();
        assert!(
            entries.iter().all(|r| r.len() == n),
            "incidence matrix must be square"
        );
        Self { entries }
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<u64>] {
        &self.entries
    }

    /// Groups of mutually reachable indices, where `b -> a` whenever
    /// entry `(a, b)` is positive.
    pub fn strongly_connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.size();
        let mut reach = vec![vec![false; n]; n];
        for (i, row) in reach.iter_mut().enumerate() {
            row[i] = true;
        }
        for a in 0..n {
            for b in 0..n {
                if self.entries[a][b] > 0 {
                    reach[b][a] = true;
                }
            }
        }
        for k in 0..n {
            for i in 0..n {
                if reach[i][k] {
                    for j in 0..n {
                        if reach[k][j] {
                            reach[i][j] = true;
                        }
                    }
                }
            }
        }
        let mut assigned = vec![false; n];
        let mut comps = Vec::new();
        for i in 0..n {
            if assigned[i] {
                continue;
            }
            let comp: Vec<usize> = (i..n).filter(|&j| reach[i][j] && reach[j][i]).collect();
            for &j in &comp {
                assigned[j] = true;
            }
            comps.push(comp);
        }
        comps
    }

    fn submatrix(&self, idx: &[usize]) -> Vec<Vec<BigInt>> {
        idx.iter()
            .map(|&a| {
                idx.iter()
                    .map(|&b| BigInt::from(self.entries[a][b]))
                    .collect()
            })
            .collect()
    }
}

/// Exactly known dominant eigenvalue.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExactRoot {
    Integer(u64),
    /// Larger root of `x^2 - s x + q`, which is irreducible over the rationals.
    Quadratic {
        s: i64,
        q: i64,
    },
}

impl ExactRoot {
    pub fn value(&self) -> f64 {
        match *self {
            ExactRoot::Integer(k) => k as f64,
            ExactRoot::Quadratic { s, q } => {
                let d = (s * s - 4 * q) as f64;
                (s as f64 + d.sqrt()) / 2.0
            }
        }
    }
}

impl fmt::Display for ExactRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ExactRoot::Integer(k) => write!(f, "{k}"),
            ExactRoot::Quadratic { s, q } => {
                f.write_str("x^2")?;
                match s {
                    0 => {}
                    1 => f.write_str(" - x")?,
                    -1 => f.write_str(" + x")?,
                    s if s > 0 => write!(f, " - {s}x")?,
                    s => write!(f, " + {}x", -s)?,
                }
                match q {
                    0 => Ok(()),
                    q if q > 0 => write!(f, " + {q}"),
                    q => write!(f, " - {}", -q),
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PfEigenvalue {
    pub value: f64,
    pub exact: Option<ExactRoot>,
}

/// Largest spectral radius over the strongly connected components.
pub fn pf_eigenvalue(m: &IncidenceMatrix) -> PfEigenvalue {
    let mut best: Option<(BigRational, Vec<BigInt>)> = None;
    for comp in m.strongly_connected_components() {
        let poly = char_poly(&m.submatrix(&comp));
        let root = largest_real_root(&poly);
        if best.as_ref().map_or(true, |(r, _)| root > *r) {
            best = Some((root, poly));
        }
    }
    let Some((root, poly)) = best else {
        return PfEigenvalue {
            value: 0.0,
            exact: Some(ExactRoot::Integer(0)),
        };
    };
    let value = root.to_f64().unwrap_or(f64::NAN);
    PfEigenvalue {
        value,
        exact: exact_tag(&poly, value),
    }
}

/// Coefficients of `det(x I - A)`, lowest degree first (Faddeev–LeVerrier).
fn char_poly(a: &[Vec<BigInt>]) -> Vec<BigInt> {
    let n = a.len();
    let mut c = vec![BigInt::zero(); n + 1];
    c[n] = BigInt::one();
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        let am = mat_mul(a, &m);
        m = am;
        for (i, row) in m.iter_mut().enumerate() {
            row[i] += &c[n - k + 1];
        }
        let am = mat_mul(a, &m);
        let trace: BigInt = (0..n).map(|i| &am[i][i]).sum();
        c[n - k] = -trace / BigInt::from(k);
    }
    c
}

fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| &a[i][k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

type Poly = Vec<BigRational>;

fn to_rational(p: &[BigInt]) -> Poly {
    p.iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect()
}

fn trim(p: &mut Poly) {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn degree(p: &Poly) -> usize {
    p.len() - 1
}

fn is_zero_poly(p: &Poly) -> bool {
    p.iter().all(Zero::is_zero)
}

fn derivative(p: &Poly) -> Poly {
    if p.len() <= 1 {
        return vec![BigRational::zero()];
    }
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
        .collect()
}

/// Quotient and remainder of polynomial division.
fn div_rem(a: &Poly, b: &Poly) -> (Poly, Poly) {
    let mut rem = a.clone();
    trim(&mut rem);
    let db = degree(b);
    let lead = b[db].clone();
    if rem.len() < b.len() {
        return (vec![BigRational::zero()], rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    for i in (0..quot.len()).rev() {
        let coef = &rem[i + db] / &lead;
        if !coef.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                let t = &coef * bj;
                rem[i + j] -= t;
            }
        }
        quot[i] = coef;
    }
    rem.truncate(db.max(1));
    trim(&mut rem);
    (quot, rem)
}

fn gcd(a: &Poly, b: &Poly) -> Poly {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !is_zero_poly(&y) {
        let (_, r) = div_rem(&x, &y);
        x = std::mem::replace(&mut y, r);
    }
    x
}

fn eval(p: &Poly, x: &BigRational) -> BigRational {
    p.iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * x + c)
}

fn sign_changes(seq: &[Poly], x: &BigRational) -> usize {
    let signs: Vec<bool> = seq
        .iter()
        .map(|p| eval(p, x))
        .filter(|v| !v.is_zero())
        .map(|v| v.is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Largest real root of a monic integer polynomial that has a nonnegative
/// real root, located to within `2^-60` by Sturm sequences.
fn largest_real_root(poly: &[BigInt]) -> BigRational {
    let p = to_rational(poly);
    if degree(&p) == 0 {
        return BigRational::zero();
    }
    let g = gcd(&p, &derivative(&p));
    let (sqfree, _) = div_rem(&p, &g);
    let mut seq = vec![sqfree.clone(), derivative(&sqfree)];
    loop {
        let n = seq.len();
        let (_, r) = div_rem(&seq[n - 2], &seq[n - 1]);
        if is_zero_poly(&r) {
            break;
        }
        seq.push(r.into_iter().map(|c| -c).collect());
    }
    let bound = BigRational::one()
        + poly
            .iter()
            .map(|c| BigRational::from_integer(c.abs()))
            .fold(BigRational::zero(), |a, b| if b > a { b } else { a });
    let roots_above = |x: &BigRational| sign_changes(&seq, x) - sign_changes(&seq, &bound);
    let mut lo = BigRational::zero();
    if roots_above(&lo) == 0 {
        return BigRational::zero();
    }
    let mut hi = bound.clone();
    let eps = BigRational::new(BigInt::one(), BigInt::one() << 60);
    let two = BigRational::from_integer(BigInt::from(2));
    while &hi - &lo > eps {
        let mid = (&lo + &hi) / &two;
        if roots_above(&mid) > 0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // Snap to an exact rational root if the interval contains one.
    let mid = (&lo + &hi) / &two;
    let rounded = mid.round();
    if eval(&p, &rounded).is_zero() && (&rounded - &mid).abs() <= eps {
        return rounded;
    }
    mid
}

fn exact_tag(poly: &[BigInt], root: f64) -> Option<ExactRoot> {
    let p = to_rational(poly);
    let k = root.round();
    if (k - root).abs() < 1e-9 && k >= 0.0 {
        let kr = BigRational::from_integer(BigInt::from(k as u64));
        if eval(&p, &kr).is_zero() {
            return Some(ExactRoot::Integer(k as u64));
        }
    }
    let s_max = (2.0 * root).ceil() as i64 + 1;
    for s in 0..=s_max {
        let q = (s as f64 * root - root * root).round() as i64;
        let disc = s * s - 4 * q;
        if disc <= 0 || is_square(disc as u64) {
            continue;
        }
        let larger = (s as f64 + (disc as f64).sqrt()) / 2.0;
        if (larger - root).abs() > 1e-9 * root.max(1.0) {
            continue;
        }
        let factor: Poly = [q, -s, 1]
            .iter()
            .map(|&c| BigRational::from_integer(c.into()))
            .collect();
        let (_, rem) = div_rem(&p, &factor);
        if is_zero_poly(&rem) {
            return Some(ExactRoot::Quadratic { s, q });
        }
    }
    None
}

fn is_square(n: u64) -> bool {
    let r = (n as f64).sqrt().round() as u64;
    (r.saturating_sub(1)..=r + 1).any(|x| x * x == n)
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        let mut e = 0;
        while n % d == 0 {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn squarefree_part(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .filter(|&(_, e)| e % 2 == 1)
        .map(|(p, _)| p)
        .product()
}

/// Integers `a, b >= 1` are dependent iff one is 1 or their prime exponent
/// vectors are proportional.
fn integers_independent(a: u64, b: u64) -> bool {
    if a == 1 || b == 1 {
        return false;
    }
    let (fa, fb) = (factorize(a), factorize(b));
    if fa.len() != fb.len() || fa.iter().zip(&fb).any(|(x, y)| x.0 != y.0) {
        return true;
    }
    let (a0, b0) = (fa[0].1 as u64, fb[0].1 as u64);
    fa.iter()
        .zip(&fb)
        .any(|(x, y)| x.1 as u64 * b0 != y.1 as u64 * a0)
}

/// Whether `alpha^k = beta^l` forces `k = l = 0`.
///
/// A quadratic irrational `(s + sqrt(D))/2` with `s != 0` has no rational
/// power and no power in `Q * sqrt(D)`, so it is independent of every
/// integer and of every square root. With `s = 0` it equals `sqrt(-q)` and
/// the question reduces to the integer `-q`. Two quadratics with `s != 0`
/// in the same field are only decided when they coincide.
pub fn multiplicatively_independent(
    alpha: &ExactRoot,
    beta: &ExactRoot,
) -> Result<bool, MorphismError> {
    use ExactRoot::*;
    let unsupported = || {
        Err(MorphismError::Unsupported(
            alpha.to_string(),
            beta.to_string(),
        ))
    };
    match (*alpha, *beta) {
        (Integer(0), _) | (_, Integer(0)) => unsupported(),
        (Integer(a), Integer(b)) => Ok(integers_independent(a, b)),
        (Integer(n), Quadratic { s, q }) | (Quadratic { s, q }, Integer(n)) => {
            if n == 1 {
                Ok(false)
            } else if s != 0 {
                Ok(true)
            } else {
                Ok(integers_independent(n, (-q) as u64))
            }
        }
        (Quadratic { s: s1, q: q1 }, Quadratic { s: s2, q: q2 }) => {
            if (s1, q1) == (s2, q2) {
                return Ok(false);
            }
            match (s1 == 0, s2 == 0) {
                (true, true) => Ok(integers_independent((-q1) as u64, (-q2) as u64)),
                (true, false) | (false, true) => Ok(true),
                (false, false) => {
                    let d1 = squarefree_part((s1 * s1 - 4 * q1) as u64);
                    let d2 = squarefree_part((s2 * s2 - 4 * q2) as u64);
                    if d1 != d2 {
                        Ok(true)
                    } else {
                        unsupported()
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const GOLDEN: ExactRoot = ExactRoot::Quadratic { s: 1, q: -1 };

    #[test]
    fn characteristic_polynomials() {
        let a = vec![
            vec![BigInt::from(2), BigInt::from(2)],
            vec![BigInt::from(1), BigInt::from(3)],
        ];
        let expect: Vec<BigInt> = [4, -5, 1].iter().map(|&c| BigInt::from(c)).collect();
        assert_eq!(char_poly(&a), expect);
    }

    #[test]
    fn eigenvalues() {
        let golden = IncidenceMatrix::new(vec![vec![1, 1], vec![1, 0]]);
        let e = pf_eigenvalue(&golden);
        assert!((e.value - (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-12);
        assert_eq!(e.exact, Some(GOLDEN));
        assert_eq!(GOLDEN.to_string(), "x^2 - x - 1");

        let uniform3 = IncidenceMatrix::new(vec![vec![2, 1, 0], vec![0, 1, 1], vec![1, 1, 2]]);
        assert_eq!(pf_eigenvalue(&uniform3).exact, Some(ExactRoot::Integer(3)));

        let zero = IncidenceMatrix::new(vec![vec![0, 0], vec![0, 0]]);
        assert_eq!(
            pf_eigenvalue(&zero),
            PfEigenvalue {
                value: 0.0,
                exact: Some(ExactRoot::Integer(0))
            }
        );

        // Block triangular: the maximum is taken over the diagonal blocks.
        let blocks = IncidenceMatrix::new(vec![vec![1, 5], vec![0, 2]]);
        assert_eq!(pf_eigenvalue(&blocks).exact, Some(ExactRoot::Integer(2)));

        // Double root and a cubic dominant root with no small exact tag.
        let cubic = IncidenceMatrix::new(vec![vec![0, 0, 1], vec![1, 0, 1], vec![0, 1, 0]]);
        let e = pf_eigenvalue(&cubic);
        assert!((e.value.powi(3) - e.value - 1.0).abs() < 1e-9);
        assert_eq!(e.exact, None);
    }

    #[test]
    fn independence() {
        use ExactRoot::*;
        assert!(!multiplicatively_independent(&Integer(2), &Integer(8)).unwrap());
        assert!(multiplicatively_independent(&Integer(2), &Integer(3)).unwrap());
        assert!(!multiplicatively_independent(&Integer(12), &Integer(144)).unwrap());
        assert!(multiplicatively_independent(&Integer(12), &Integer(18)).unwrap());
        for k in 2..=10 {
            assert!(multiplicatively_independent(&Integer(k), &GOLDEN).unwrap());
        }
        let sqrt2 = Quadratic { s: 0, q: -2 };
        assert!(!multiplicatively_independent(&Integer(2), &sqrt2).unwrap());
        assert!(!multiplicatively_independent(&Integer(8), &sqrt2).unwrap());
        assert!(multiplicatively_independent(&Integer(3), &sqrt2).unwrap());
        assert!(multiplicatively_independent(&GOLDEN, &Quadratic { s: 0, q: -5 }).unwrap());
        assert!(multiplicatively_independent(&GOLDEN, &Quadratic { s: 2, q: -1 }).unwrap());
        assert!(multiplicatively_independent(&GOLDEN, &Quadratic { s: 3, q: 1 }).is_err());
        assert!(multiplicatively_independent(&Integer(0), &GOLDEN).is_err());
    }

    /// Exponent-vector oracle: a^k = b^l for some small positive k, l.
    #[test]
    fn integer_independence_matches_brute_force() {
        use num_bigint::BigUint;
        for a in 2u64..40 {
            for b in 2u64..40 {
                let dependent = (1u32..8)
                    .any(|k| (1u32..8).any(|l| BigUint::from(a).pow(k) == BigUint::from(b).pow(l)));
                assert_eq!(integers_independent(a, b), !dependent, "{a} {b}");
            }
        }
    }
}
