//! Named sequences around the period-doubling sequence and its formal
//! inverse. Every sequence has a primary definition plus independent
//! alternates, and [`cross_check`] compares them termwise.
//!
//! | name    | primary definition                                   |
//! |---------|------------------------------------------------------|
//! | `d`     | `nu_2(n+1) mod 2`                                    |
//! | `t`     | Thue–Morse, binary digit sum mod 2                   |
//! | `tpP`   | base-`P` digit sum mod `P` (`P` prime)               |
//! | `p`     | fixed point of `1 -> 121, 2 -> 12221`                |
//! | `u`     | `u_0=0, u_1=1, u_2n=0, u_4n+1=u_2n-1, u_4n+3=u_n`    |
//! | `o`,`z` | positions of 1s and 0s in `d`                        |
//! | `a`,`b` | positions of 1s and 0s in `u`                        |
//! | `delta` | `(a_n+1 - a_n) mod 3 != 0`                           |
//! | `x`     | characteristic sequence of `{1, 2, 3, 5, 8, ...}`    |
//! | `F`     | `F(0)=F(1)=1`, `F(n)=F(n-1)+F(n-2)`                  |

pub mod objects;

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use serde::Serialize;
use thiserror::Error;

use crate::automata::AutomatonError;
use crate::morphisms::{run_lengths, MorphismError};
use crate::numeration::{NumerationError, NumerationSystem};
use crate::series::SeriesError;

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("unknown sequence {0:?}")]
    UnknownName(String),
    #[error("unknown definition {definition:?} for sequence {name}")]
    UnknownDefinition { name: String, definition: String },
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("term {index} of {name} does not fit in 64 bits")]
    Overflow { name: String, index: usize },
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
    #[error(transparent)]
    Morphism(#[from] MorphismError),
    #[error(transparent)]
    Numeration(#[from] NumerationError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SequenceName {
    D,
    T,
    Tp(u32),
    P,
    U,
    O,
    Z,
    A,
    B,
    Delta,
    X,
    F,
}

impl SequenceName {
    /// All fixed names, with `tp3` standing for the `tpP` family.
    pub const ALL: [SequenceName; 12] = [
        SequenceName::D,
        SequenceName::T,
        SequenceName::Tp(3),
        SequenceName::P,
        SequenceName::U,
        SequenceName::O,
        SequenceName::Z,
        SequenceName::A,
        SequenceName::B,
        SequenceName::Delta,
        SequenceName::X,
        SequenceName::F,
    ];
}

impl fmt::Display for SequenceName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceName::D => f.write_str("d"),
            SequenceName::T => f.write_str("t"),
            SequenceName::Tp(p) => write!(f, "tp{p}"),
            SequenceName::P => f.write_str("p"),
            SequenceName::U => f.write_str("u"),
            SequenceName::O => f.write_str("o"),
            SequenceName::Z => f.write_str("z"),
            SequenceName::A => f.write_str("a"),
            SequenceName::B => f.write_str("b"),
            SequenceName::Delta => f.write_str("delta"),
            SequenceName::X => f.write_str("x"),
            SequenceName::F => f.write_str("F"),
        }
    }
}

impl FromStr for SequenceName {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "d" => SequenceName::D,
            "t" => SequenceName::T,
            "p" => SequenceName::P,
            "u" => SequenceName::U,
            "o" => SequenceName::O,
            "z" => SequenceName::Z,
            "a" => SequenceName::A,
            "b" => SequenceName::B,
            "delta" => SequenceName::Delta,
            "x" => SequenceName::X,
            "F" => SequenceName::F,
            _ => {
                let p: u32 = s
                    .strip_prefix("tp")
                    .and_then(|rest| rest.parse().ok())
                    .ok_or_else(|| CatalogError::UnknownName(s.to_string()))?;
                if !crate::modp::is_prime(p as u64) {
                    return Err(CatalogError::NotPrime(p));
                }
                SequenceName::Tp(p)
            }
        })
    }
}

/// Period-doubling term `nu_2(n+1) mod 2`.
pub fn period_doubling(n: u64) -> u8 {
    ((n + 1).trailing_zeros() % 2) as u8
}

/// Streams `u` in index order. Each term only looks back to an index below
/// `n / 2`, so the memo is an append-only bitset of the first half.
#[derive(Clone, Debug, Default)]
pub struct InversePeriodDoubling {
    bits: Vec<u64>,
    next: u64,
}

impl InversePeriodDoubling {
    pub fn new() -> Self {
        Self::default()
    }

    fn get(&self, i: u64) -> u8 {
        ((self.bits[(i / 64) as usize] >> (i % 64)) & 1) as u8
    }

    fn value(&self, n: u64) -> u8 {
        match n {
            0 => 0,
            1 => 1,
            _ if n % 2 == 0 => 0,
            _ if n % 4 == 1 => self.get(n / 2 - 1),
            _ => self.get(n / 4),
        }
    }
}

impl Iterator for InversePeriodDoubling {
    type Item = u8;

    fn next(&mut self) -> Option<u8> {
        let n = self.next;
        let v = self.value(n);
        if n % 64 == 0 {
            self.bits.push(0);
        }
        self.bits[(n / 64) as usize] |= (v as u64) << (n % 64);
        self.next += 1;
        Some(v)
    }
}

/// `u_n` by descending the recurrences, `O(log n)` steps.
pub fn inverse_period_doubling(mut n: u64) -> u8 {
    loop {
        match n {
            0 => return 0,
            1 => return 1,
            _ if n % 2 == 0 => return 0,
            _ if n % 4 == 1 => n = n / 2 - 1,
            _ => n /= 4,
        }
    }
}

/// Monotone iterator over the indices at which `inner` yields `target`.
#[derive(Clone, Debug)]
pub struct Positions<I> {
    inner: I,
    index: u64,
    target: u8,
}

impl<I: Iterator<Item = u8>> Positions<I> {
    pub fn new(inner: I, target: u8) -> Self {
        Self {
            inner,
            index: 0,
            target,
        }
    }
}

impl<I: Iterator<Item = u8>> Iterator for Positions<I> {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        loop {
            let v = self.inner.next()?;
            let i = self.index;
            self.index += 1;
            if v == self.target {
                return Some(i);
            }
        }
    }
}

fn d_stream() -> impl Iterator<Item = u8> + Clone {
    (0u64..).map(period_doubling)
}

fn is_fibonacci(n: u64) -> bool {
    crate::numeration::FibBasis::weights()
        .take_while(|&w| w <= n)
        .any(|w| w == n)
}

fn digit_sum_mod(n: u64, p: u64) -> i64 {
    (objects::digit_sum(n, p) % p) as i64
}

/// `F(0), ..., F(n-1)` with `F(0) = F(1) = 1`.
pub fn fibonacci_numbers(n: usize) -> Vec<BigUint> {
    let mut out = Vec::with_capacity(n);
    let (mut a, mut b) = (BigUint::from(1u32), BigUint::from(1u32));
    for _ in 0..n {
        out.push(a.clone());
        let c = &a + &b;
        a = b;
        b = c;
    }
    out
}

/// Names of the definitions of `name`; the first is the primary one.
pub fn definitions(name: SequenceName) -> Vec<&'static str> {
    match name {
        SequenceName::D => vec![
            "nu2",
            "h-fixed-point",
            "msd-dfao",
            "coded-f24-fixed-point",
            "thue-morse-difference",
        ],
        SequenceName::T => vec!["digit-sum", "tau-fixed-point", "dfao"],
        SequenceName::Tp(2) => vec!["digit-sum", "digit-recursion", "tau-fixed-point"],
        SequenceName::Tp(_) => vec!["digit-sum", "digit-recursion"],
        SequenceName::P => vec!["f-fixed-point", "thue-morse-runs"],
        SequenceName::U => vec!["recurrence", "reversion", "lsd-dfao"],
        SequenceName::O => vec!["ones-of-d", "f24-differences"],
        SequenceName::Z => vec!["zeros-of-d", "run-length-sums"],
        SequenceName::A => vec!["ones-of-u", "la-enumeration"],
        SequenceName::B => vec!["zeros-of-u", "la-complement"],
        SequenceName::Delta => vec!["a-differences", "shifted-x"],
        SequenceName::X => vec![
            "fibonacci-membership",
            "zeckendorf-dfao",
            "coded-phi-fixed-point",
        ],
        SequenceName::F => vec!["recurrence", "lprime-count"],
    }
}

fn letters_as_values(m: &crate::morphisms::Morphism, word: &[usize]) -> Vec<i64> {
    word.iter()
        .map(|&c| m.codomain()[c].parse::<i64>().expect("numeric letter"))
        .collect()
}

fn u_prefix(n: usize) -> Vec<i64> {
    InversePeriodDoubling::new()
        .take(n)
        .map(i64::from)
        .collect()
}

fn la_values(n: usize) -> Result<Vec<i64>, CatalogError> {
    let ans = crate::numeration::AnsSystem::new(objects::l_a_dfa())?;
    let mut words = ans.words();
    (0..n)
        .map(|i| {
            i64::try_from(words.next_value(2)).map_err(|_| CatalogError::Overflow {
                name: "a".into(),
                index: i,
            })
        })
        .collect()
}

/// The first `n` terms of `name` according to definition `def`.
pub fn definition_prefix(
    name: SequenceName,
    def: &str,
    n: usize,
) -> Result<Vec<i64>, CatalogError> {
    use SequenceName::*;
    let unknown = || CatalogError::UnknownDefinition {
        name: name.to_string(),
        definition: def.to_string(),
    };
    if !definitions(name).contains(&def) {
        return Err(unknown());
    }
    let base2 = NumerationSystem::BaseK(2);
    Ok(match (name, def) {
        (D, "nu2") => d_stream().take(n).map(i64::from).collect(),
        (D, "h-fixed-point") => {
            let h = objects::h();
            letters_as_values(&h, &h.fixed_point_prefix(0, n)?)
        }
        (D, "msd-dfao") => {
            let m = objects::period_doubling_dfao();
            (0..n as u64)
                .map(|i| m.eval(i, &base2).map(|&v| v as i64))
                .collect::<Result<_, _>>()?
        }
        (D, "coded-f24-fixed-point") => {
            let (f, g) = (objects::f24(), objects::g24());
            let mut out = Vec::with_capacity(n + 4);
            for c in f.fixed_point(0)? {
                if out.len() >= n {
                    break;
                }
                out.extend(letters_as_values(&g, g.image(c)));
            }
            out.truncate(n);
            out
        }
        (D, "thue-morse-difference") => (0..n as u64)
            .map(|i| 1 - (digit_sum_mod(i + 1, 2) - digit_sum_mod(i, 2)).rem_euclid(2))
            .collect(),
        (T, "digit-sum") | (Tp(_), "digit-sum") => {
            let p = if let Tp(p) = name { p as u64 } else { 2 };
            (0..n as u64).map(|i| digit_sum_mod(i, p)).collect()
        }
        (T, "tau-fixed-point") | (Tp(2), "tau-fixed-point") => {
            let tau = objects::tau();
            letters_as_values(&tau, &tau.fixed_point_prefix(0, n)?)
        }
        (T, "dfao") => {
            let m = objects::thue_morse_dfao();
            (0..n as u64)
                .map(|i| m.eval(i, &base2).map(|&v| v as i64))
                .collect::<Result<_, _>>()?
        }
        (Tp(p), "digit-recursion") => {
            // t(p m + r) = t(m) + r
            let mut out: Vec<i64> = Vec::with_capacity(n);
            let pp = p as usize;
            for i in 0..n {
                let v = if i < pp {
                    i as i64
                } else {
                    (out[i / pp] + (i % pp) as i64) % p as i64
                };
                out.push(v);
            }
            out
        }
        (P, "f-fixed-point") => {
            let f = objects::run_length_morphism();
            letters_as_values(&f, &f.fixed_point_prefix(0, n)?)
        }
        (P, "thue-morse-runs") => {
            let runs = run_lengths((0u64..).map(|i| i.count_ones() % 2), n)?;
            runs.into_iter().map(|r| r as i64).collect()
        }
        (U, "recurrence") => u_prefix(n),
        (U, "reversion") => {
            if n == 0 {
                Vec::new()
            } else {
                let d = objects::period_doubling_series(n);
                d.reversion()?.coeffs().iter().map(|&c| c as i64).collect()
            }
        }
        (U, "lsd-dfao") => {
            let m = objects::inverse_period_doubling_dfao();
            (0..n as u64)
                .map(|i| m.eval(i, &base2).map(|&v| v as i64))
                .collect::<Result<_, _>>()?
        }
        (O, "ones-of-d") => Positions::new(d_stream(), 1)
            .take(n)
            .map(|v| v as i64)
            .collect(),
        (Z, "zeros-of-d") => Positions::new(d_stream(), 0)
            .take(n)
            .map(|v| v as i64)
            .collect(),
        (O, "f24-differences") => {
            let f = objects::f24();
            let mut acc = 1i64;
            let mut out = Vec::with_capacity(n);
            let mut diffs = f.fixed_point(0)?.skip(1);
            for _ in 0..n {
                out.push(acc);
                let c = diffs.next().expect("infinite fixed point");
                acc += f.codomain()[c].parse::<i64>().expect("numeric letter");
            }
            out
        }
        (Z, "run-length-sums") => {
            // z_0 = 0 and z_n = p_1 + ... + p_n
            let p = definition_prefix(P, "f-fixed-point", n)?;
            let mut acc = 0i64;
            (0..n)
                .map(|i| {
                    if i > 0 {
                        acc += p[i];
                    }
                    acc
                })
                .collect()
        }
        (A, "ones-of-u") => Positions::new(InversePeriodDoubling::new(), 1)
            .take(n)
            .map(|v| v as i64)
            .collect(),
        (B, "zeros-of-u") => Positions::new(InversePeriodDoubling::new(), 0)
            .take(n)
            .map(|v| v as i64)
            .collect(),
        (A, "la-enumeration") => la_values(n)?,
        (B, "la-complement") => {
            let la = objects::l_a_dfa();
            let mut out = Vec::with_capacity(n);
            let mut i = 0u64;
            while out.len() < n {
                if !la.accepts(&base2.rep(i))? {
                    out.push(i as i64);
                }
                i += 1;
            }
            out
        }
        (Delta, "a-differences") => {
            let a: Vec<u64> = Positions::new(InversePeriodDoubling::new(), 1)
                .take(n + 1)
                .collect();
            a.windows(2)
                .map(|w| i64::from((w[1] - w[0]) % 3 != 0))
                .collect()
        }
        (Delta, "shifted-x") => {
            definition_prefix(X, "fibonacci-membership", n + 2)?.split_off(2.min(n + 2))
        }
        (X, "fibonacci-membership") => (0..n as u64).map(|i| i64::from(is_fibonacci(i))).collect(),
        (X, "zeckendorf-dfao") => {
            let m = objects::fibonacci_indicator_dfao();
            let z = NumerationSystem::Zeckendorf;
            (0..n as u64)
                .map(|i| m.eval(i, &z).map(|&v| v as i64))
                .collect::<Result<_, _>>()?
        }
        (X, "coded-phi-fixed-point") => {
            let (phi, mu) = (objects::phi(), objects::mu());
            let word: Vec<usize> = phi.fixed_point(0)?.take(n).collect();
            letters_as_values(&mu, &mu.apply(&word))
        }
        (F, "recurrence") => fibonacci_numbers(n)
            .into_iter()
            .enumerate()
            .map(|(i, v)| {
                i64::try_from(v).map_err(|_| CatalogError::Overflow {
                    name: "F".into(),
                    index: i,
                })
            })
            .collect::<Result<_, _>>()?,
        (F, "lprime-count") => objects::l_prime_dfa()
            .counts_by_length(n.saturating_sub(1))
            .into_iter()
            .take(n)
            .enumerate()
            .map(|(i, v)| {
                i64::try_from(v).map_err(|_| CatalogError::Overflow {
                    name: "F".into(),
                    index: i,
                })
            })
            .collect::<Result<_, _>>()?,
        _ => return Err(unknown()),
    })
}

/// First `n` terms by the primary definition, as machine integers.
pub fn prefix_i64(name: SequenceName, n: usize) -> Result<Vec<i64>, CatalogError> {
    definition_prefix(name, definitions(name)[0], n)
}

/// First `n` terms using the cheapest definition. `a` and `delta` come from
/// enumerating `L_a` rather than scanning `u`, so long prefixes need no
/// memo of `u`; [`cross_check`] is what ties the two together.
pub fn prefix_fast(name: SequenceName, n: usize) -> Result<Vec<i64>, CatalogError> {
    match name {
        SequenceName::A => la_values(n),
        SequenceName::Delta => Ok(la_values(n + 1)?
            .windows(2)
            .map(|w| i64::from((w[1] - w[0]) % 3 != 0))
            .collect()),
        _ => prefix_i64(name, n),
    }
}

/// First `n` terms by the primary definition.
pub fn prefix(name: SequenceName, n: usize) -> Result<Vec<BigInt>, CatalogError> {
    if name == SequenceName::F {
        return Ok(fibonacci_numbers(n).into_iter().map(BigInt::from).collect());
    }
    Ok(prefix_i64(name, n)?.into_iter().map(BigInt::from).collect())
}

/// Term `n` by the primary definition.
pub fn term(name: SequenceName, n: u64) -> Result<BigInt, CatalogError> {
    use SequenceName::*;
    Ok(match name {
        D => BigInt::from(period_doubling(n)),
        T => BigInt::from(digit_sum_mod(n, 2)),
        Tp(p) => BigInt::from(digit_sum_mod(n, p as u64)),
        U => BigInt::from(inverse_period_doubling(n)),
        X => BigInt::from(u8::from(is_fibonacci(n))),
        F => {
            let (mut a, mut b) = (BigUint::from(1u32), BigUint::from(1u32));
            for _ in 0..n {
                let c = &a + &b;
                a = b;
                b = c;
            }
            BigInt::from(a)
        }
        _ => {
            let len = usize::try_from(n + 1).expect("index fits in memory");
            prefix(name, len)?.pop().expect("nonempty prefix")
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub index: usize,
    /// `(definition, value)` for every definition, or `None` where a
    /// definition produced fewer terms.
    pub values: Vec<(String, Option<i64>)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossCheckReport {
    pub name: String,
    pub terms: usize,
    pub definitions: Vec<String>,
    pub mismatch: Option<Mismatch>,
}

impl CrossCheckReport {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none()
    }
}

/// Compares prefixes from several definitions over their first `terms`
/// entries and reports the first index where they disagree.
pub fn compare_definitions(
    name: &str,
    terms: usize,
    defs: &[(String, Vec<i64>)],
) -> CrossCheckReport {
    let mismatch = (0..terms).find_map(|i| {
        let values: Vec<(String, Option<i64>)> = defs
            .iter()
            .map(|(d, v)| (d.clone(), v.get(i).copied()))
            .collect();
        let first = values.first().and_then(|(_, v)| *v);
        let agree = first.is_some() && values.iter().all(|(_, v)| *v == first);
        (!agree).then_some(Mismatch { index: i, values })
    });
    CrossCheckReport {
        name: name.to_string(),
        terms,
        definitions: defs.iter().map(|(d, _)| d.clone()).collect(),
        mismatch,
    }
}

/// Evaluates every definition of `name` to `n` terms and compares them.
pub fn cross_check(name: SequenceName, n: usize) -> Result<CrossCheckReport, CatalogError> {
    use rayon::prelude::*;
    let defs: Vec<(String, Vec<i64>)> = definitions(name)
        .into_par_iter()
        .map(|d| definition_prefix(name, d, n).map(|v| (d.to_string(), v)))
        .collect::<Result<_, _>>()?;
    Ok(compare_definitions(&name.to_string(), n, &defs))
}

/// Writes `n` terms as `"<index> <value>"` lines, indices starting at `offset`.
pub fn write_bfile(
    out: &mut impl Write,
    name: SequenceName,
    n: usize,
    offset: i64,
) -> Result<(), CatalogError> {
    for (i, v) in prefix(name, n)?.into_iter().enumerate() {
        writeln!(out, "{} {}", offset + i as i64, v)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<i64> {
        v.to_vec()
    }

    #[test]
    fn listed_prefixes() {
        use SequenceName::*;
        assert_eq!(
            prefix_i64(D, 21).unwrap(),
            ints(&[0, 1, 0, 0, 0, 1, 0, 1, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0])
        );
        assert_eq!(
            prefix_i64(U, 41).unwrap(),
            ints(&[
                0, 1, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0,
                0, 1, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0
            ])
        );
        assert_eq!(
            prefix_i64(A, 12).unwrap(),
            ints(&[1, 5, 7, 13, 17, 23, 29, 31, 37, 49, 55, 61])
        );
        assert_eq!(
            prefix_i64(Z, 10).unwrap(),
            ints(&[0, 2, 3, 4, 6, 8, 10, 11, 12, 14])
        );
        assert_eq!(
            prefix_i64(O, 10).unwrap(),
            ints(&[1, 5, 7, 9, 13, 17, 21, 23, 25, 29])
        );
        assert_eq!(
            prefix_i64(B, 10).unwrap(),
            ints(&[0, 2, 3, 4, 6, 8, 9, 10, 11, 12])
        );
        assert_eq!(prefix_i64(F, 6).unwrap(), ints(&[1, 1, 2, 3, 5, 8]));
        assert_eq!(prefix_i64(P, 8).unwrap(), ints(&[1, 2, 1, 1, 2, 2, 2, 1]));
        assert_eq!(&prefix_i64(X, 6).unwrap()[1..], &[1, 1, 1, 0, 1]);
        for name in SequenceName::ALL {
            assert!(prefix(name, 0).unwrap().is_empty());
        }
    }

    #[test]
    fn term_matches_prefix() {
        for name in SequenceName::ALL {
            let pre = prefix(name, 40).unwrap();
            for n in [0u64, 1, 7, 39] {
                assert_eq!(term(name, n).unwrap(), pre[n as usize], "{name} at {n}");
            }
        }
    }

    #[test]
    fn streamed_u_matches_descent() {
        for (n, v) in InversePeriodDoubling::new().take(1 << 16).enumerate() {
            assert_eq!(v, inverse_period_doubling(n as u64));
        }
    }

    #[test]
    fn every_definition_agrees_on_short_prefixes() {
        for name in SequenceName::ALL
            .into_iter()
            .chain([SequenceName::Tp(2), SequenceName::Tp(5)])
        {
            let n = if name == SequenceName::F { 80 } else { 2000 };
            let report = cross_check(name, n).unwrap();
            assert!(report.passed(), "{report:?}");
        }
    }

    #[test]
    fn names_round_trip() {
        for name in SequenceName::ALL.into_iter().chain([SequenceName::Tp(7)]) {
            assert_eq!(name.to_string().parse::<SequenceName>().unwrap(), name);
        }
        assert!(matches!(
            "tp4".parse::<SequenceName>(),
            Err(CatalogError::NotPrime(4))
        ));
        assert!(matches!(
            "q".parse::<SequenceName>(),
            Err(CatalogError::UnknownName(_))
        ));
    }

    #[test]
    fn corrupted_definition_fails_at_first_corruption() {
        let good = prefix_i64(SequenceName::D, 100).unwrap();
        let mut bad = good.clone();
        bad[37] ^= 1;
        bad[50] ^= 1;
        let r = compare_definitions("d", 100, &[("nu2".into(), good), ("corrupt".into(), bad)]);
        assert_eq!(r.mismatch.unwrap().index, 37);
    }

    #[test]
    fn bfile_format() {
        let mut out = Vec::new();
        write_bfile(&mut out, SequenceName::A, 3, 1).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "1 1\n2 5\n3 7\n");
    }
}
