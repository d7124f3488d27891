//! k-kernels of integer sequences: class discovery by fingerprints, DFAO
//! synthesis from a closed kernel, and rank profiles over the rationals.
//!
//! A sequence is any `Fn(usize) -> Option<i64>`; `None` means the term is
//! not available, which surfaces as [`KernelError::HorizonInsufficient`].

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::automata::{AutomatonError, Dfao, ReadOrder};
use crate::modp::{self, IncrementalEchelon};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KernelError {
    #[error("base must be at least 2, got {0}")]
    InvalidBase(u32),
    #[error("horizon must be positive")]
    ZeroHorizon,
    #[error("sequence term {index} is not available")]
    HorizonInsufficient { index: usize },
    #[error("kernel is open at depth {0}")]
    NotClosed(u32),
    #[error("class merge of (i={scale}, r={residue}) fails at the verification horizon")]
    UnverifiedMerge { scale: u32, residue: u64 },
    #[error("k^depth overflows")]
    TooDeep,
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelClass {
    pub scale: u32,
    pub residue: u64,
    /// First `H` terms of `n -> u(k^scale n + residue)`.
    pub fingerprint: Vec<i64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum KernelStatus {
    /// Every child of every class matched an existing class; the deepest
    /// class has the given scale.
    Closed { depth: u32 },
    /// A new class appeared beyond the depth cap.
    Open { depth: u32 },
}

#[derive(Clone, Debug, Serialize)]
pub struct Kernel {
    pub k: u32,
    pub horizon: usize,
    pub classes: Vec<KernelClass>,
    /// `closure[c][digit]` is the class of the child `(i+1, r + digit k^i)`
    /// of class `c`, when it was explored.
    pub closure: Vec<Vec<Option<usize>>>,
    pub status: KernelStatus,
    /// Merges that disagreed once re-tested at four times the horizon.
    pub failed_merges: Vec<(u32, u64)>,
}

impl Kernel {
    pub fn is_closed(&self) -> bool {
        matches!(self.status, KernelStatus::Closed { .. })
    }

    pub fn classes_at_scale(&self, scale: u32) -> impl Iterator<Item = &KernelClass> {
        self.classes.iter().filter(move |c| c.scale == scale)
    }
}

fn fingerprint<S>(seq: &S, step: u64, residue: u64, len: usize) -> Result<Vec<i64>, KernelError>
where
    S: Fn(usize) -> Option<i64> + ?Sized,
{
    (0..len as u64)
        .map(|n| {
            let index = (step * n + residue) as usize;
            seq(index).ok_or(KernelError::HorizonInsufficient { index })
        })
        .collect()
}

fn pow_checked(k: u64, i: u32) -> Result<u64, KernelError> {
    k.checked_pow(i).ok_or(KernelError::TooDeep)
}

/// Breadth-first exploration of the k-kernel from `(0, 0)`. Children whose
/// fingerprint equals an existing class are merged into it; each merge is
/// re-checked on `4 H` terms.
pub fn compute_kernel<S>(
    seq: &S,
    k: u32,
    max_depth: u32,
    horizon: usize,
) -> Result<Kernel, KernelError>
where
    S: Fn(usize) -> Option<i64> + Sync + ?Sized,
{
    if k < 2 {
        return Err(KernelError::InvalidBase(k));
    }
    if horizon == 0 {
        return Err(KernelError::ZeroHorizon);
    }
    let kk = k as u64;
    let root = KernelClass {
        scale: 0,
        residue: 0,
        fingerprint: fingerprint(seq, 1, 0, horizon)?,
    };
    let mut index: HashMap<Vec<i64>, usize> = HashMap::from([(root.fingerprint.clone(), 0)]);
    let mut classes = vec![root];
    let mut closure: Vec<Vec<Option<usize>>> = vec![vec![None; k as usize]];
    let mut merges: Vec<(u32, u64, usize)> = Vec::new();
    let mut frontier = vec![0usize];
    let mut status = None;

    while !frontier.is_empty() {
        let depth = classes[frontier[0]].scale;
        let step = pow_checked(kk, depth)?;
        let child_step = pow_checked(kk, depth + 1)?;
        let children: Vec<(usize, u32, u64)> = frontier
            .iter()
            .flat_map(|&c| (0..k).map(move |digit| (c, digit)))
            .map(|(c, digit)| (c, digit, classes[c].residue + digit as u64 * step))
            .collect();
        let prints: Vec<Vec<i64>> = children
            .par_iter()
            .map(|&(_, _, r)| fingerprint(seq, child_step, r, horizon))
            .collect::<Result<_, _>>()?;
        let mut next = Vec::new();
        for ((parent, digit, residue), print) in children.into_iter().zip(prints) {
            let target = match index.get(&print) {
                Some(&existing) => {
                    merges.push((depth + 1, residue, existing));
                    existing
                }
                None => {
                    if depth + 1 > max_depth {
                        status.get_or_insert(KernelStatus::Open { depth: depth + 1 });
                        continue;
                    }
                    let id = classes.len();
                    index.insert(print.clone(), id);
                    classes.push(KernelClass {
                        scale: depth + 1,
                        residue,
                        fingerprint: print,
                    });
                    closure.push(vec![None; k as usize]);
                    next.push(id);
                    id
                }
            };
            closure[parent][digit as usize] = Some(target);
        }
        if status.is_some() {
            break;
        }
        frontier = next;
    }
    let status = status.unwrap_or(KernelStatus::Closed {
        depth: classes.iter().map(|c| c.scale).max().unwrap_or(0),
    });

    let long = 4 * horizon;
    let failed: Vec<Option<(u32, u64)>> = merges
        .par_iter()
        .map(|&(scale, residue, class)| {
            let c = &classes[class];
            let a = fingerprint(seq, pow_checked(kk, scale)?, residue, long)?;
            let b = fingerprint(seq, pow_checked(kk, c.scale)?, c.residue, long)?;
            Ok((a != b).then_some((scale, residue)))
        })
        .collect::<Result<_, KernelError>>()?;
    let failed_merges = failed.into_iter().flatten().collect();

    Ok(Kernel {
        k,
        horizon,
        classes,
        closure,
        status,
        failed_merges,
    })
}

/// DFAO reading base-k digits least significant first whose states are the
/// kernel classes; the output of a class is its first term.
pub fn synthesize_dfao(kernel: &Kernel) -> Result<Dfao<i64>, KernelError> {
    if let KernelStatus::Open { depth } = kernel.status {
        return Err(KernelError::NotClosed(depth));
    }
    if let Some(&(scale, residue)) = kernel.failed_merges.first() {
        return Err(KernelError::UnverifiedMerge { scale, residue });
    }
    let transitions = kernel
        .closure
        .iter()
        .map(|row| {
            row.iter()
                .map(|t| t.expect("closed kernel has all children"))
                .collect()
        })
        .collect();
    let names = kernel
        .classes
        .iter()
        .map(|c| format!("{},{}", c.scale, c.residue))
        .collect();
    let outputs = kernel.classes.iter().map(|c| c.fingerprint[0]).collect();
    Ok(Dfao::with_names(
        names,
        0,
        (0..kernel.k).collect(),
        transitions,
        outputs,
        ReadOrder::LsdFirst,
    )?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DepthRank {
    pub depth: u32,
    /// Distinct fingerprints among all `(i, r)` with `i <= depth`.
    pub classes: usize,
    /// Rank over the rationals of those fingerprints.
    pub rank: usize,
    /// Whether the rank is proven exact (see [`rank_profile`]).
    pub certified: bool,
    pub primes_used: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankProfile {
    pub k: u32,
    pub horizon: usize,
    pub depths: Vec<DepthRank>,
}

/// Default number of primes the rank certificate may consume per depth.
pub const DEFAULT_PRIME_BUDGET: usize = 48;

/// For each depth `i <= max_depth`, the number of distinct fingerprints and
/// the rational rank of all `(u(k^j n + r))_{n < H}` with `j <= i`.
///
/// Ranks are computed modulo primes just below `2^31`. The rank modulo any
/// prime is a lower bound; it is certified exact once it equals the row or
/// column count, or once the product of the primes used exceeds the
/// Hadamard bound on the next-larger minors, which would then have to be
/// divisible by all of them.
pub fn rank_profile<S>(
    seq: &S,
    k: u32,
    max_depth: u32,
    horizon: usize,
    prime_budget: usize,
) -> Result<RankProfile, KernelError>
where
    S: Fn(usize) -> Option<i64> + Sync + ?Sized,
{
    if k < 2 {
        return Err(KernelError::InvalidBase(k));
    }
    if horizon == 0 {
        return Err(KernelError::ZeroHorizon);
    }
    let kk = k as u64;
    let mut distinct: Vec<Vec<i64>> = Vec::new();
    let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
    let mut rows_per_depth = Vec::new();
    for depth in 0..=max_depth {
        let step = pow_checked(kk, depth)?;
        let prints: Vec<Vec<i64>> = (0..step)
            .into_par_iter()
            .map(|r| fingerprint(seq, step, r, horizon))
            .collect::<Result<_, _>>()?;
        for p in prints {
            if seen.insert(p.clone(), ()).is_none() {
                distinct.push(p);
            }
        }
        rows_per_depth.push(distinct.len());
    }

    let primes: Vec<u64> = modp::large_primes().take(prime_budget.max(1)).collect();
    let log_norms: Vec<f64> = distinct
        .iter()
        .map(|row| {
            let sq: f64 = row.iter().map(|&v| (v as f64) * (v as f64)).sum();
            0.5 * sq.max(1.0).log2()
        })
        .collect();

    // Ranks per depth for each prime, computed lazily: most profiles are
    // certified by the first prime.
    let rank_for_prime = |p: u64| -> Vec<usize> {
        let mut ech = IncrementalEchelon::new(p);
        let mut out = Vec::with_capacity(rows_per_depth.len());
        let mut done = 0;
        for &upto in &rows_per_depth {
            for row in &distinct[done..upto] {
                let reduced = row.iter().map(|&v| v.rem_euclid(p as i64) as u64).collect();
                ech.insert(reduced);
            }
            done = upto;
            out.push(ech.rank());
        }
        out
    };

    let mut best: Vec<usize> = vec![0; rows_per_depth.len()];
    let mut certified = vec![false; rows_per_depth.len()];
    let mut primes_used = vec![0usize; rows_per_depth.len()];
    let mut log_product = 0.0f64;
    for (used, &p) in primes.iter().enumerate() {
        let ranks = rank_for_prime(p);
        log_product += (p as f64).log2();
        for d in 0..rows_per_depth.len() {
            if certified[d] {
                continue;
            }
            best[d] = best[d].max(ranks[d]);
            primes_used[d] = used + 1;
            let rows = rows_per_depth[d];
            if best[d] == rows.min(horizon) {
                certified[d] = true;
                continue;
            }
            let mut norms: Vec<f64> = log_norms[..rows].to_vec();
            norms.sort_by(|a, b| b.total_cmp(a));
            let bound: f64 = norms.iter().take(best[d] + 1).sum();
            if log_product > bound + 1.0 {
                certified[d] = true;
            }
        }
        if certified.iter().all(|&c| c) {
            break;
        }
    }

    let depths = (0..=max_depth)
        .zip(rows_per_depth)
        .enumerate()
        .map(|(d, (depth, classes))| DepthRank {
            depth,
            classes,
            rank: best[d],
            certified: certified[d],
            primes_used: primes_used[d],
        })
        .collect();
    Ok(RankProfile { k, horizon, depths })
}

/// Number of fingerprint terms shown per class representative in reports.
pub const REPORT_PREFIX: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassRepresentative {
    pub i: u32,
    pub r: u64,
    pub fingerprint: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DepthReport {
    pub depth: u32,
    /// Distinct fingerprints among all `(i, r)` with `i <= depth`.
    pub classes: usize,
    pub rank: usize,
    pub rank_certified: bool,
    /// Kernel classes first reached at this depth.
    pub representatives: Vec<ClassRepresentative>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelReport {
    pub k: u32,
    pub horizon: usize,
    pub status: KernelStatus,
    /// `"closed at depth d (consistent with k-automatic)"` or `"open at depth d"`.
    pub verdict: String,
    pub failed_merges: Vec<(u32, u64)>,
    pub depths: Vec<DepthReport>,
}

/// Kernel exploration and rank profile combined into one report.
pub fn kernel_report<S>(
    seq: &S,
    k: u32,
    max_depth: u32,
    horizon: usize,
    prime_budget: usize,
) -> Result<KernelReport, KernelError>
where
    S: Fn(usize) -> Option<i64> + Sync + ?Sized,
{
    let kernel = compute_kernel(seq, k, max_depth, horizon)?;
    let profile = rank_profile(seq, k, max_depth, horizon, prime_budget)?;
    let verdict = match kernel.status {
        KernelStatus::Closed { depth } => {
            format!("closed at depth {depth} (consistent with {k}-automatic)")
        }
        KernelStatus::Open { depth } => format!("open at depth {depth}"),
    };
    let depths = profile
        .depths
        .into_iter()
        .map(|d| DepthReport {
            depth: d.depth,
            classes: d.classes,
            rank: d.rank,
            rank_certified: d.certified,
            representatives: kernel
                .classes_at_scale(d.depth)
                .map(|c| ClassRepresentative {
                    i: c.scale,
                    r: c.residue,
                    fingerprint: c.fingerprint.iter().take(REPORT_PREFIX).copied().collect(),
                })
                .collect(),
        })
        .collect();
    Ok(KernelReport {
        k,
        horizon,
        status: kernel.status,
        verdict,
        failed_merges: kernel.failed_merges,
        depths,
    })
}

/// Number of terms [`kernel_report`] may read: children one level below
/// `max_depth`, re-checked at four times the horizon.
pub fn terms_needed(k: u32, max_depth: u32, horizon: usize) -> Option<usize> {
    (k as usize)
        .checked_pow(max_depth + 1)?
        .checked_mul(4 * horizon)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn period_doubling(n: usize) -> i64 {
        ((n + 1).trailing_zeros() % 2) as i64
    }

    #[test]
    fn period_doubling_kernel() {
        let seq = |n: usize| Some(period_doubling(n));
        let kernel = compute_kernel(&seq, 2, 10, 512).unwrap();
        assert!(kernel.is_closed());
        assert_eq!(kernel.classes.len(), 4);
        assert!(kernel.failed_merges.is_empty());
        let m = synthesize_dfao(&kernel).unwrap();
        let b2 = crate::numeration::NumerationSystem::base(2).unwrap();
        for n in 0..4096u64 {
            assert_eq!(*m.eval(n, &b2).unwrap(), period_doubling(n as usize));
        }
        // Least significant digit first, d needs four states: the parity of
        // the trailing block of 1s, then one absorbing state per output.
        assert_eq!(m.minimize().len(), 4);
    }

    #[test]
    fn constant_sequence() {
        let zero = |_: usize| Some(0i64);
        let kernel = compute_kernel(&zero, 3, 5, 64).unwrap();
        assert_eq!(kernel.classes.len(), 1);
        assert_eq!(kernel.status, KernelStatus::Closed { depth: 0 });
        assert_eq!(synthesize_dfao(&kernel).unwrap().len(), 1);
    }

    #[test]
    fn open_kernel_and_missing_terms() {
        let ident = |n: usize| Some(n as i64);
        let kernel = compute_kernel(&ident, 2, 3, 32).unwrap();
        assert_eq!(kernel.status, KernelStatus::Open { depth: 4 });
        assert!(matches!(
            synthesize_dfao(&kernel),
            Err(KernelError::NotClosed(4))
        ));

        let short: Vec<i64> = vec![0; 100];
        let seq = |n: usize| short.get(n).copied();
        assert!(matches!(
            compute_kernel(&seq, 2, 3, 64),
            Err(KernelError::HorizonInsufficient { .. })
        ));
    }

    #[test]
    fn merge_verification_catches_late_difference() {
        // A single 1 at index 300: invisible to every fingerprint at H = 64.
        let seq = |n: usize| Some(i64::from(n == 300));
        let kernel = compute_kernel(&seq, 2, 2, 64).unwrap();
        assert!(!kernel.failed_merges.is_empty());
        assert!(matches!(
            synthesize_dfao(&kernel),
            Err(KernelError::UnverifiedMerge { .. })
        ));
    }

    #[test]
    fn identity_has_rank_two() {
        let ident = |n: usize| Some(n as i64);
        let profile = rank_profile(&ident, 2, 6, 64, DEFAULT_PRIME_BUDGET).unwrap();
        let ranks: Vec<usize> = profile.depths.iter().map(|d| d.rank).collect();
        assert_eq!(ranks, vec![1, 2, 2, 2, 2, 2, 2]);
        assert!(profile.depths.iter().all(|d| d.certified));
    }

    /// Exact rank over the rationals by fraction-free Gaussian elimination.
    fn bareiss_rank(rows: &[Vec<i64>]) -> usize {
        use num_bigint::BigInt;
        use num_traits::Zero;
        let mut m: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        let cols = m.first().map_or(0, Vec::len);
        let mut rank = 0;
        let mut prev = BigInt::from(1);
        for c in 0..cols {
            let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(rank, p);
            for i in rank + 1..m.len() {
                for j in c + 1..cols {
                    let v = (&m[rank][c] * &m[i][j] - &m[i][c] * &m[rank][j]) / &prev;
                    m[i][j] = v;
                }
                m[i][c] = BigInt::zero();
            }
            prev = m[rank][c].clone();
            rank += 1;
        }
        rank
    }

    #[test]
    fn modular_rank_matches_exact_rank() {
        // Pseudo-random small-valued sequence with plenty of coincidences.
        let seq = |n: usize| Some(((n as i64 * 7919) % 13 + (n as i64 % 5)) % 4);
        let profile = rank_profile(&seq, 2, 4, 24, DEFAULT_PRIME_BUDGET).unwrap();
        for d in &profile.depths {
            let mut rows: Vec<Vec<i64>> = Vec::new();
            for j in 0..=d.depth {
                for r in 0..(1usize << j) {
                    let row: Vec<i64> = (0..24).map(|n| seq((n << j) + r).unwrap()).collect();
                    if !rows.contains(&row) {
                        rows.push(row);
                    }
                }
            }
            assert_eq!(d.classes, rows.len());
            assert_eq!(d.rank, bareiss_rank(&rows), "depth {}", d.depth);
            assert!(d.certified);
        }
    }

    #[test]
    fn counts_grow_with_horizon() {
        let seq = |n: usize| Some(((n * n) % 7) as i64);
        let small = rank_profile(&seq, 2, 5, 16, 4).unwrap();
        let large = rank_profile(&seq, 2, 5, 32, 4).unwrap();
        for (a, b) in small.depths.iter().zip(&large.depths) {
            assert!(a.classes <= b.classes);
            assert!(a.rank <= b.rank);
        }
    }
}
