//! Executable checks of the computational claims about the period-doubling
//! sequence, its formal inverse and the related Fibonacci constructions.
//!
//! Each check has a stable id and one size knob (its horizon). Results are
//! deterministic except for `elapsed_ms`.

use std::collections::HashMap;
use std::time::Instant;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::catalog::{self, objects, SequenceName};
use crate::kernel;
use crate::morphisms::{
    equivalent_up_to_renaming, multiplicatively_independent, numeration_presentation,
    pf_eigenvalue, remove_erasure, trim_to_prolongable, ExactRoot,
};
use crate::numeration::{AnsSystem, NumerationSystem};
use crate::series::power_relation_search;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CheckError {
    #[error("unknown check id {0:?}")]
    UnknownId(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub status: CheckStatus,
    pub horizon: u64,
    /// What was compared, and on failure the first disagreement.
    pub detail: String,
    pub elapsed_ms: u64,
}

pub struct CheckInfo {
    pub id: &'static str,
    pub default_horizon: u64,
    pub summary: &'static str,
    run: fn(u64) -> Outcome,
}

type Outcome = Result<String, String>;

/// All checks, sorted by id.
pub const CHECKS: [CheckInfo; 14] = [
    CheckInfo {
        id: "algebraic-relations",
        default_horizon: 1024,
        summary: "polynomial equations for D, U and T_p have zero residual",
        run: algebraic_relations,
    },
    CheckInfo {
        id: "complexity",
        default_horizon: 30,
        summary: "word counts of {1,00}* and of the language of positions of 1s in u",
        run: complexity,
    },
    CheckInfo {
        id: "delta-vs-x",
        default_horizon: 100_000,
        summary: "delta_n = x_(n+2), with x from the Zeckendorf DFAO and by membership",
        run: delta_vs_x,
    },
    CheckInfo {
        id: "eigenvalues",
        default_horizon: 0,
        summary: "dominant eigenvalues and multiplicative independence",
        run: eigenvalues,
    },
    CheckInfo {
        id: "kernel-dfao",
        default_horizon: 512,
        summary: "2-kernel of u closes with 5 classes and yields the 5-state DFAO",
        run: kernel_dfao,
    },
    CheckInfo {
        id: "kernel-identities",
        default_horizon: 100_000,
        summary: "the listed identities between 2-kernel elements of u",
        run: kernel_identities,
    },
    CheckInfo {
        id: "mod3-fibonacci-runs",
        default_horizon: 10_000_000,
        summary: "Fibonacci sums, a_n mod 3 by language, runs of a_n mod 3",
        run: mod3_fibonacci_runs,
    },
    CheckInfo {
        id: "morphic-pipeline",
        default_horizon: 100_000,
        summary: "erasure removal and trimming turn the product presentation into (phi, mu, a)",
        run: morphic_pipeline,
    },
    CheckInfo {
        id: "nonregularity-evidence",
        default_horizon: 512,
        summary: "2-kernel rank growth of a, z, o, p and class count of u",
        run: nonregularity_evidence,
    },
    CheckInfo {
        id: "numeration",
        default_horizon: 100_000,
        summary: "ANS unranking over Zeckendorf and L_a, trailing-1 parity of o and z",
        run: numeration,
    },
    CheckInfo {
        id: "ore-recovery",
        default_horizon: 512,
        summary: "relation search on U recovers the quartic Frobenius relation",
        run: ore_recovery,
    },
    CheckInfo {
        id: "period-doubling-morphisms",
        default_horizon: 7,
        summary: "h^(2n+1)(0) = g(f^n(2)) and h^(2n+1)(10) = g(f^n(4))",
        run: period_doubling_morphisms,
    },
    CheckInfo {
        id: "reversion",
        default_horizon: 4096,
        summary: "reversion of D equals the recurrence sequence u",
        run: reversion,
    },
    CheckInfo {
        id: "run-length-identity",
        default_horizon: 100_000,
        summary: "first differences of z and o against p and f^omega(2)",
        run: run_length_identity,
    },
];

pub fn check_ids() -> impl Iterator<Item = &'static str> {
    CHECKS.iter().map(|c| c.id)
}

/// Runs the selected checks (all when `selection` is empty or contains
/// `"all"`) concurrently and returns the results in id order. A horizon of
/// zero in `horizons` skips the check.
pub fn run_checks(
    selection: &[String],
    horizons: &HashMap<String, u64>,
) -> Result<Vec<CheckResult>, CheckError> {
    for id in selection.iter().chain(horizons.keys()) {
        if id != "all" && !check_ids().any(|c| c == id) {
            return Err(CheckError::UnknownId(id.clone()));
        }
    }
    let all = selection.is_empty() || selection.iter().any(|s| s == "all");
    let chosen: Vec<&CheckInfo> = CHECKS
        .iter()
        .filter(|c| all || selection.iter().any(|s| s == c.id))
        .collect();
    Ok(chosen
        .into_par_iter()
        .map(|check| {
            let horizon = horizons
                .get(check.id)
                .copied()
                .unwrap_or(check.default_horizon);
            if horizon == 0 && check.default_horizon != 0 {
                return CheckResult {
                    id: check.id.to_string(),
                    status: CheckStatus::Skipped,
                    horizon,
                    detail: "horizon set to 0".into(),
                    elapsed_ms: 0,
                };
            }
            let start = Instant::now();
            let outcome = (check.run)(horizon);
            let elapsed_ms = start.elapsed().as_millis() as u64;
            let (status, detail) = match outcome {
                Ok(d) => (CheckStatus::Pass, d),
                Err(d) => (CheckStatus::Fail, d),
            };
            CheckResult {
                id: check.id.to_string(),
                status,
                horizon,
                detail,
                elapsed_ms,
            }
        })
        .collect())
}

fn fail<T>(msg: impl Into<String>) -> Result<T, String> {
    Err(msg.into())
}

fn err<E: std::fmt::Display>(e: E) -> String {
    format!("error: {e}")
}

fn seq_prefix(name: SequenceName, n: usize) -> Result<Vec<i64>, String> {
    catalog::prefix_i64(name, n).map_err(err)
}

/// First index where `a` and `b` differ.
fn first_difference(a: &[i64], b: &[i64]) -> Option<usize> {
    a.iter()
        .zip(b)
        .position(|(x, y)| x != y)
        .or_else(|| (a.len() != b.len()).then(|| a.len().min(b.len())))
}

const U_LISTING: [i64; 41] = [
    0, 1, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 1,
    0, 0, 0, 0, 0, 1, 0, 0, 0,
];

fn reversion(n: u64) -> Outcome {
    let n = n as usize;
    let d = objects::period_doubling_series(n);
    let v = d.reversion().map_err(err)?;
    let rev: Vec<i64> = v.coeffs().iter().map(|&c| c as i64).collect();
    let rec = seq_prefix(SequenceName::U, n)?;
    if let Some(i) = first_difference(&rev, &rec) {
        return fail(format!(
            "reversion and recurrence differ at index {i}: {} vs {}",
            rev[i], rec[i]
        ));
    }
    let listed = U_LISTING.len().min(n);
    if let Some(i) = first_difference(&rev[..listed], &U_LISTING[..listed]) {
        return fail(format!(
            "coefficient {i} is {} but the listing has {}",
            rev[i], U_LISTING[i]
        ));
    }
    Ok(format!(
        "reversion of D over F_2 equals u on {n} coefficients; first {listed} match the listing"
    ))
}

fn algebraic_relations(n: u64) -> Outcome {
    let n = n as usize;
    let d = objects::period_doubling_series(n);
    let u = d.reversion().map_err(err)?;
    let mut cases = vec![
        ("D quadratic", objects::period_doubling_relation(), d),
        ("U cubic", objects::inverse_cubic_relation(), u.clone()),
        ("U quartic", objects::inverse_quartic_relation(), u),
    ];
    for p in [2u32, 3, 5] {
        let t = objects::thue_morse_series(p, p.pow(6) as usize).map_err(err)?;
        let r = objects::thue_morse_relation(p).map_err(err)?;
        cases.push((["T_2", "T_3", "T_5"][(p as usize - 1) / 2], r, t));
    }
    let mut done = Vec::new();
    for (label, r, s) in cases {
        let res = r.residual(&s).map_err(err)?;
        if let Some(v) = res.valuation() {
            return fail(format!(
                "{label}: residual has nonzero coefficient at X^{v}"
            ));
        }
        done.push(format!("{label} (N={})", s.precision()));
    }
    Ok(format!("zero residual: {}", done.join(", ")))
}

fn ore_recovery(n: u64) -> Outcome {
    let u = objects::period_doubling_series(n as usize)
        .reversion()
        .map_err(err)?;
    let expected = objects::inverse_quartic_relation();
    match power_relation_search(&u, 2, 3).map_err(err)? {
        None => fail("no relation of Frobenius depth 2 and degree 3 found"),
        Some(r) if r.same_up_to_scalar(&expected) => Ok(format!(
            "recovered X^3 U^4 + X^3 U^2 + U + X = 0 from {n} coefficients"
        )),
        Some(r) => fail(format!(
            "found a different relation: {}",
            serde_json::to_string(&r).unwrap_or_default()
        )),
    }
}

fn kernel_dfao(h: u64) -> Outcome {
    let seq = |i: usize| Some(catalog::inverse_period_doubling(i as u64) as i64);
    let k = kernel::compute_kernel(&seq, 2, 10, h as usize).map_err(err)?;
    if !k.is_closed() {
        return fail(format!("kernel is not closed: {:?}", k.status));
    }
    if k.classes.len() != 5 {
        return fail(format!(
            "kernel closed with {} classes, expected 5",
            k.classes.len()
        ));
    }
    let m = kernel::synthesize_dfao(&k).map_err(err)?.minimize();
    if m.len() != 5 {
        return fail(format!("synthesized DFAO minimizes to {} states", m.len()));
    }
    let fig = objects::inverse_period_doubling_dfao().map_outputs(|&o| o as i64);
    if m.isomorphism(&fig).is_none() {
        return fail("minimized DFAO is not isomorphic to the hand-coded 5-state automaton");
    }
    let base2 = NumerationSystem::BaseK(2);
    let limit = 1u64 << 20;
    let bad = (0..limit).into_par_iter().find_first(|&n| {
        m.eval(n, &base2)
            .map(|&v| v != catalog::inverse_period_doubling(n) as i64)
            .unwrap_or(true)
    });
    if let Some(n) = bad {
        return fail(format!("DFAO disagrees with u at n = {n}"));
    }
    Ok(format!("closed with 5 classes at H={h}; minimized DFAO isomorphic to the 5-state automaton; agrees with u for n < 2^20"))
}

/// `(description, index maps)`: every map gives an index whose term must
/// equal the common value; `zero` chains also equal 0.
struct Chain {
    label: &'static str,
    members: Vec<(u64, u64)>,
    zero: bool,
}

fn kernel_chains() -> Vec<Chain> {
    let mut zero_members = vec![(2, 0)];
    zero_members.extend([0, 2].map(|r| (4, r)));
    zero_members.extend([0, 2, 4, 6].map(|r| (8, r)));
    zero_members.push((8, 3));
    zero_members.extend((0..16).step_by(2).map(|r| (16, r)));
    zero_members.extend([3, 9, 11].map(|r| (16, r)));
    vec![
        Chain {
            label: "u_n = u_4n+3 = u_16n+15",
            members: vec![(1, 0), (4, 3), (16, 15)],
            zero: false,
        },
        Chain {
            label: "u_2n = ... = 0",
            members: zero_members,
            zero: true,
        },
        Chain {
            label: "u_2n+1 = u_8n+7",
            members: vec![(2, 1), (8, 7)],
            zero: false,
        },
        Chain {
            label: "u_4n+1 = u_8n+5 = u_16n+1 = u_16n+7 = u_16n+13",
            members: vec![(4, 1), (8, 5), (16, 1), (16, 7), (16, 13)],
            zero: false,
        },
        Chain {
            label: "u_8n+1 = u_16n+5",
            members: vec![(8, 1), (16, 5)],
            zero: false,
        },
    ]
}

fn kernel_identities(n: u64) -> Outcome {
    let u = seq_prefix(SequenceName::U, (16 * n + 16) as usize)?;
    let chains = kernel_chains();
    let mut equalities = 0;
    for c in &chains {
        equalities += c.members.len() - 1 + usize::from(c.zero);
        for i in 0..n {
            let vals: Vec<i64> = c
                .members
                .iter()
                .map(|&(s, r)| u[(s * i + r) as usize])
                .collect();
            let target = if c.zero { 0 } else { vals[0] };
            if let Some(j) = vals.iter().position(|&v| v != target) {
                let (s, r) = c.members[j];
                return fail(format!("{}: fails at n = {i} for u_({s}n+{r})", c.label));
            }
        }
    }
    Ok(format!(
        "{equalities} equalities in {} chains hold for n < {n}",
        chains.len()
    ))
}

fn period_doubling_morphisms(max_n: u64) -> Outcome {
    let (h, f, g) = (objects::h(), objects::f24(), objects::g24());
    for n in 1..=max_n as usize {
        for (h_seed, f_seed) in [("0", "2"), ("1 0", "4")] {
            let lhs = h
                .spell(&h.iterate(&h.word(h_seed).map_err(err)?, 2 * n + 1))
                .concat();
            let fw = f.iterate(&f.word(f_seed).map_err(err)?, n);
            let rhs = g.spell(&g.apply(&fw)).concat();
            if lhs != rhs {
                let i = lhs
                    .bytes()
                    .zip(rhs.bytes())
                    .position(|(x, y)| x != y)
                    .unwrap_or(lhs.len().min(rhs.len()));
                return fail(format!(
                    "h^{}({}) and g(f^{n}({f_seed})) differ at position {i} (lengths {} and {})",
                    2 * n + 1,
                    h_seed.replace(' ', ""),
                    lhs.len(),
                    rhs.len()
                ));
            }
        }
    }
    Ok(format!("both word identities hold for n = 1..{max_n}"))
}

fn run_length_identity(n: u64) -> Outcome {
    let n = n as usize;
    let z = seq_prefix(SequenceName::Z, n + 1)?;
    let o = seq_prefix(SequenceName::O, n + 1)?;
    let p = seq_prefix(SequenceName::P, n + 1)?;
    let dz: Vec<i64> = z.windows(2).map(|w| w[1] - w[0]).collect();
    let d_o: Vec<i64> = o.windows(2).map(|w| w[1] - w[0]).collect();
    let f = objects::f24();
    let shifted: Vec<i64> = f
        .fixed_point(0)
        .map_err(err)?
        .skip(1)
        .take(n)
        .map(|c| f.codomain()[c].parse().expect("numeric letter"))
        .collect();
    let mut notes = Vec::new();
    let mut failed = false;
    match first_difference(&dz, &p[..n]) {
        None => notes.push(format!("first difference of z equals p on {n} terms")),
        Some(i) => {
            failed = true;
            let shift_ok = first_difference(&dz, &p[1..]).is_none();
            notes.push(format!(
                "first difference of z differs from p at index {i} ({} vs {}); {}",
                dz[i],
                p[i],
                if shift_ok {
                    format!("it equals p with its first term dropped on all {n} terms")
                } else {
                    "it does not equal shifted p either".to_string()
                }
            ));
        }
    }
    match first_difference(&d_o, &shifted) {
        None => notes.push(format!(
            "first difference of o equals f^omega(2) without its first term on {n} terms"
        )),
        Some(i) => {
            failed = true;
            notes.push(format!(
                "first difference of o differs from shifted f^omega(2) at index {i} ({} vs {})",
                d_o[i], shifted[i]
            ));
        }
    }
    let detail = notes.join("; ");
    if failed {
        Err(detail)
    } else {
        Ok(detail)
    }
}

fn complexity(max_n: u64) -> Outcome {
    let max_n = max_n as usize;
    let fib = catalog::fibonacci_numbers(2 * max_n + 2);
    let lp = objects::l_prime_dfa().counts_by_length(max_n);
    for (n, c) in lp.iter().enumerate() {
        if *c != fib[n] {
            return fail(format!(
                "{{1,00}}* has {c} words of length {n}, F({n}) = {}",
                fib[n]
            ));
        }
    }
    let la = objects::l_a_dfa().counts_by_length(2 * max_n + 1);
    let one = BigUint::from(1u32);
    for n in 2..=max_n {
        let want = &fib[2 * n - 2] - &one;
        if la[2 * n] != want {
            return fail(format!(
                "L_a has {} words of length {}, expected F({}) - 1 = {want}",
                la[2 * n],
                2 * n,
                2 * n - 2
            ));
        }
    }
    for n in 1..=max_n {
        let want = &fib[2 * n - 1] + &one;
        if la[2 * n + 1] != want {
            return fail(format!(
                "L_a has {} words of length {}, expected F({}) + 1 = {want}",
                la[2 * n + 1],
                2 * n + 1,
                2 * n - 1
            ));
        }
    }
    let boundary: Vec<u32> = (0..3)
        .map(|i| u32::try_from(&la[i]).unwrap_or(u32::MAX))
        .collect();
    if boundary != [0, 1, 0] {
        return fail(format!(
            "L_a counts at lengths 0, 1, 2 are {boundary:?}, expected [0, 1, 0]"
        ));
    }
    Ok(format!(
        "{{1,00}}* counts are F(n) for n <= {max_n}; L_a counts match for lengths up to {}",
        2 * max_n + 1
    ))
}

fn mod3_fibonacci_runs(n_terms: u64) -> Outcome {
    let fib = catalog::fibonacci_numbers(90);
    for n in 1..=40usize {
        let s: BigUint = (0..n).map(|l| &fib[2 * l]).sum();
        if s != fib[2 * n - 1] {
            return fail(format!(
                "sum of F(2l) for l < {n} is {s}, not F({})",
                2 * n - 1
            ));
        }
        if n >= 2 {
            let s: BigUint = (0..=n - 2).map(|l| &fib[2 * l + 1]).sum();
            if s + 1u32 != fib[2 * n - 2] {
                return fail(format!(
                    "sum of F(2l+1) for l <= {} is not F({}) - 1",
                    n - 2,
                    2 * n - 2
                ));
            }
        }
    }

    let (la1, la2) = (objects::l_a1_dfa(), objects::l_a2_dfa());
    let base2 = NumerationSystem::BaseK(2);
    let mut classified = 0;
    for a in catalog::Positions::new(catalog::InversePeriodDoubling::new(), 1)
        .take_while(|&a| a < 1 << 20)
    {
        let w = base2.rep(a);
        let in1 = la1.accepts(&w).map_err(err)?;
        let in2 = la2.accepts(&w).map_err(err)?;
        let predicted = if in1 || (in2 && w.len() % 2 == 0) {
            1
        } else if in2 {
            2
        } else {
            return fail(format!(
                "{a} is a position of 1 in u but its expansion is in neither language"
            ));
        };
        if a % 3 != predicted {
            return fail(format!(
                "{a} mod 3 = {}, languages predict {predicted}",
                a % 3
            ));
        }
        classified += 1;
    }

    let ans = AnsSystem::new(objects::l_a_dfa()).map_err(err)?;
    let mut words = ans.words();
    let residues = (0..n_terms).map(move |_| (words.next_value(2) % 3) as u8);
    let mut runs: Vec<(u8, u64)> = Vec::new();
    for r in residues {
        match runs.last_mut() {
            Some((v, len)) if *v == r => *len += 1,
            _ => runs.push((r, 1)),
        }
    }
    // The last run may continue past the horizon.
    runs.pop();
    for (i, &(v, len)) in runs.iter().enumerate() {
        let want_v = if i % 2 == 0 { 1 } else { 2 };
        if v != want_v || BigUint::from(len) != fib[i] {
            return fail(format!(
                "run {i} is {v}^{len}, expected {want_v}^F({i}) = {want_v}^{}",
                fib[i]
            ));
        }
    }
    if runs.len() < 25 {
        return fail(format!(
            "only {} complete runs within {n_terms} terms, need at least 25",
            runs.len()
        ));
    }
    Ok(format!(
        "Fibonacci sums hold for n <= 40; {classified} terms below 2^20 classified; first {n_terms} terms give {} complete runs of lengths F(0)..F({})",
        runs.len(),
        runs.len() - 1
    ))
}

fn delta_vs_x(n: u64) -> Outcome {
    let n = n as usize;
    let delta = catalog::definition_prefix(SequenceName::Delta, "a-differences", n).map_err(err)?;
    let x_dfao =
        catalog::definition_prefix(SequenceName::X, "zeckendorf-dfao", n + 2).map_err(err)?;
    let x_set =
        catalog::definition_prefix(SequenceName::X, "fibonacci-membership", n + 2).map_err(err)?;
    if let Some(i) = first_difference(&x_dfao, &x_set) {
        return fail(format!("x from the DFAO and by membership differ at {i}"));
    }
    if let Some(i) = first_difference(&delta, &x_set[2..]) {
        return fail(format!(
            "delta_{i} = {} but x_{} = {}",
            delta[i],
            i + 2,
            x_set[i + 2]
        ));
    }
    Ok(format!(
        "delta_n = x_(n+2) for n < {n}; both constructions of x agree"
    ))
}

fn morphic_pipeline(n: u64) -> Outcome {
    let n = n as usize;
    let (f, g) = (
        objects::fibonacci_product_morphism(),
        objects::fibonacci_product_coding(),
    );
    let (df, dg) = numeration_presentation(
        &objects::zeckendorf_language_dfa(),
        &objects::fibonacci_indicator_dfao(),
    )
    .map_err(err)?;
    if equivalent_up_to_renaming(&df, &dg, 0, &f, &g, 0).is_none() {
        return fail(
            "presentation built from the product automaton differs from the 9-letter table",
        );
    }
    let erase: Vec<usize> = ["a1", "a4", "a7"]
        .iter()
        .map(|l| f.letter(l).expect("letter"))
        .collect();
    let (fe, ge) = remove_erasure(&f, &g, &erase).map_err(err)?;
    let z = fe.letter("z").expect("seed letter");
    let (ft, gt, seed) = trim_to_prolongable(&fe, &ge, z).map_err(err)?;
    let (phi, mu) = (objects::phi(), objects::mu());
    let Some(pi) = equivalent_up_to_renaming(&ft, &gt, seed, &phi, &mu, 0) else {
        return fail(format!(
            "trimmed presentation is not a renaming of (phi, mu, a):\n{}",
            ft.to_text(Some(seed))
        ));
    };
    let renaming: Vec<String> = pi
        .iter()
        .enumerate()
        .map(|(i, &j)| format!("{}->{}", ft.domain()[i], phi.domain()[j]))
        .collect();

    let x = catalog::definition_prefix(SequenceName::X, "fibonacci-membership", n).map_err(err)?;
    let via_phi =
        catalog::definition_prefix(SequenceName::X, "coded-phi-fixed-point", n).map_err(err)?;
    if let Some(i) = first_difference(&via_phi, &x) {
        return fail(format!("mu(phi^omega(a)) differs from x at index {i}"));
    }
    let mut coded = Vec::with_capacity(n);
    for c in f.fixed_point(0).map_err(err)? {
        if coded.len() >= n {
            break;
        }
        coded.extend(
            g.image(c)
                .iter()
                .map(|&b| g.codomain()[b].parse::<i64>().expect("digit")),
        );
    }
    if let Some(i) = first_difference(&coded[..n], &x) {
        return fail(format!(
            "coded fixed point of the 9-letter morphism differs from x at index {i}"
        ));
    }
    Ok(format!(
        "product presentation matches the table; after erasure and trimming it is (phi, mu, a) via {}; both codings equal x on {n} terms",
        renaming.join(", ")
    ))
}

fn eigenvalues(_: u64) -> Outcome {
    let mut notes = Vec::new();
    let mut failed = false;
    let golden = (1.0 + 5f64.sqrt()) / 2.0;
    let pf_phi = pf_eigenvalue(&objects::phi().incidence_matrix());
    let golden_tag = ExactRoot::Quadratic { s: 1, q: -1 };
    if (pf_phi.value - golden).abs() <= 1e-9 && pf_phi.exact == Some(golden_tag) {
        notes.push(format!(
            "phi: {:.12} with minimal polynomial {golden_tag}",
            pf_phi.value
        ));
    } else {
        failed = true;
        notes.push(format!(
            "phi: got {} ({:?}), expected the golden ratio",
            pf_phi.value, pf_phi.exact
        ));
    }
    let pf_f = pf_eigenvalue(&objects::run_length_morphism().incidence_matrix());
    if pf_f.exact == Some(ExactRoot::Integer(2)) {
        notes.push("1->121, 2->12221: exactly 2".into());
    } else {
        failed = true;
        notes.push(format!(
            "1->121, 2->12221: expected exactly 2, got {} (exact {}); the incidence matrix [[2,2],[1,3]] has characteristic polynomial x^2 - 5x + 4",
            pf_f.value,
            pf_f.exact.map_or("none".to_string(), |e| e.to_string())
        ));
    }
    for k in 2..=10u64 {
        match multiplicatively_independent(&ExactRoot::Integer(k), &golden_tag) {
            Ok(true) => {}
            other => {
                failed = true;
                notes.push(format!(
                    "independence of {k} and the golden ratio: {other:?}"
                ));
            }
        }
    }
    match multiplicatively_independent(&ExactRoot::Integer(2), &ExactRoot::Integer(8)) {
        Ok(false) => notes.push("2..10 independent of the golden ratio; 2 and 8 dependent".into()),
        other => {
            failed = true;
            notes.push(format!("independence of 2 and 8: {other:?}"));
        }
    }
    let detail = notes.join("; ");
    if failed {
        Err(detail)
    } else {
        Ok(detail)
    }
}

fn nonregularity_evidence(h: u64) -> Outcome {
    const DEPTH: u32 = 8;
    let h = h as usize;
    let len = (1usize << DEPTH) * 2 * h;
    let mut notes = Vec::new();
    let mut failed = false;
    for name in [
        SequenceName::A,
        SequenceName::Z,
        SequenceName::O,
        SequenceName::P,
    ] {
        let values = seq_prefix(name, len)?;
        let seq = |i: usize| values.get(i).copied();
        let small =
            kernel::rank_profile(&seq, 2, DEPTH, h, kernel::DEFAULT_PRIME_BUDGET).map_err(err)?;
        let large = kernel::rank_profile(&seq, 2, DEPTH, 2 * h, kernel::DEFAULT_PRIME_BUDGET)
            .map_err(err)?;
        let ranks: Vec<usize> = small.depths.iter().map(|d| d.rank).collect();
        let ranks2: Vec<usize> = large.depths.iter().map(|d| d.rank).collect();
        let increasing = ranks[1..].windows(2).all(|w| w[0] < w[1]);
        let stable = ranks == ranks2;
        let certified = small
            .depths
            .iter()
            .chain(&large.depths)
            .all(|d| d.certified);
        failed |= !(increasing && stable && certified);
        notes.push(format!(
            "{name}: ranks {ranks:?} at H={h}{}, {ranks2:?} at H={}{}",
            if increasing {
                ""
            } else {
                " (not strictly increasing on depths 1..8)"
            },
            2 * h,
            if stable { "" } else { " (changed)" },
        ));
    }
    let u = |i: usize| Some(catalog::inverse_period_doubling(i as u64) as i64);
    let prof = kernel::rank_profile(&u, 2, DEPTH, h, kernel::DEFAULT_PRIME_BUDGET).map_err(err)?;
    let classes: Vec<usize> = prof.depths.iter().map(|d| d.classes).collect();
    let settles = classes.last() == Some(&5) && classes.iter().rev().take(4).all(|&c| c == 5);
    failed |= !settles;
    notes.push(format!("u: distinct kernel classes by depth {classes:?}"));
    let detail = notes.join("; ");
    if failed {
        Err(detail)
    } else {
        Ok(detail)
    }
}

fn numeration(n: u64) -> Outcome {
    let zeck = AnsSystem::new(objects::zeckendorf_language_dfa()).map_err(err)?;
    let greedy = NumerationSystem::Zeckendorf;
    if let Some(i) = (0..n)
        .into_par_iter()
        .find_first(|&i| zeck.unrank(&BigUint::from(i)) != greedy.rep(i))
    {
        return fail(format!(
            "unrank({i}) over the Zeckendorf language differs from the greedy representation"
        ));
    }
    let la = AnsSystem::new(objects::l_a_dfa()).map_err(err)?;
    let first: Vec<String> = (0..4u32)
        .map(|i| {
            la.unrank(&BigUint::from(i))
                .iter()
                .map(|d| d.to_string())
                .collect()
        })
        .collect();
    if first != ["1", "101", "111", "1101"] {
        return fail(format!("first words of L_a are {first:?}"));
    }
    let trailing_ones = |v: i64| (v as u64).trailing_ones();
    for (name, parity) in [(SequenceName::O, 1), (SequenceName::Z, 0)] {
        let values = catalog::Positions::new((0u64..).map(catalog::period_doubling), parity as u8)
            .take_while(|&v| v < n)
            .map(|v| v as i64);
        for v in values {
            if trailing_ones(v) % 2 != parity {
                return fail(format!(
                    "{name} term {v} ends with {} ones",
                    trailing_ones(v)
                ));
            }
        }
    }
    Ok(format!(
        "Zeckendorf unranking equals greedy for n < {n}; L_a starts 1, 101, 111, 1101; o terms end in an odd and z terms in an even number of 1s below {n}"
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_sorted_and_unique() {
        let ids: Vec<&str> = check_ids().collect();
        let mut sorted = ids.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(ids, sorted);
    }

    #[test]
    fn unknown_id_is_rejected() {
        assert_eq!(
            run_checks(&["nope".into()], &HashMap::new()),
            Err(CheckError::UnknownId("nope".into()))
        );
    }

    #[test]
    fn small_horizons_pass() {
        let horizons: HashMap<String, u64> =
            [("kernel-identities", 500), ("period-doubling-morphisms", 3)]
                .map(|(k, v)| (k.to_string(), v))
                .into();
        let ids = vec![
            "kernel-identities".to_string(),
            "period-doubling-morphisms".to_string(),
        ];
        let results = run_checks(&ids, &horizons).unwrap();
        assert_eq!(results.len(), 2);
        assert!(
            results.iter().all(|r| r.status == CheckStatus::Pass),
            "{results:?}"
        );
    }

    #[test]
    fn zero_horizon_skips() {
        let horizons: HashMap<String, u64> = [("numeration".to_string(), 0)].into();
        let r = run_checks(&["numeration".into()], &horizons).unwrap();
        assert_eq!(r[0].status, CheckStatus::Skipped);
    }
}
