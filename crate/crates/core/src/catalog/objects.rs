//! Hand-coded automata, languages, morphisms and series relations for the
//! period-doubling family, the Fibonacci-numeration constructions and the
//! generalized Thue–Morse sequences.

use crate::automata::{Dfa, Dfao, ReadOrder};
use crate::morphisms::Morphism;
use crate::series::{ExponentPattern, PolyRelation, RelationTerm, SeriesError, TruncatedSeries};

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

/// Two-state automaton for `d`: parity of the final block of 1s, read most
/// significant digit first.
pub fn period_doubling_dfao() -> Dfao<u8> {
    Dfao::with_names(
        names(&["0", "1"]),
        0,
        vec![0, 1],
        vec![vec![0, 1], vec![0, 0]],
        vec![0, 1],
        ReadOrder::MsdFirst,
    )
    .expect("valid automaton")
}

/// Five-state automaton for `u`, read least significant digit first.
pub fn inverse_period_doubling_dfao() -> Dfao<u8> {
    Dfao::with_names(
        names(&["a", "b", "c", "d", "e"]),
        0,
        vec![0, 1],
        vec![vec![1, 2], vec![1, 1], vec![3, 0], vec![4, 3], vec![3, 1]],
        vec![0, 0, 1, 1, 1],
        ReadOrder::LsdFirst,
    )
    .expect("valid automaton")
}

/// Two-state Thue–Morse automaton (parity of 1s); either read order works.
pub fn thue_morse_dfao() -> Dfao<u8> {
    Dfao::with_names(
        names(&["0", "1"]),
        0,
        vec![0, 1],
        vec![vec![0, 1], vec![1, 0]],
        vec![0, 1],
        ReadOrder::LsdFirst,
    )
    .expect("valid automaton")
}

/// `{eps} u 1{0,01}*`, the Zeckendorf representations.
pub fn zeckendorf_language_dfa() -> Dfa {
    Dfa::with_names(
        names(&["A", "B", "C", "D", "E"]),
        0,
        vec![0, 1],
        vec![vec![4, 1], vec![2, 4], vec![2, 3], vec![2, 4], vec![4, 4]],
        vec![true, true, true, true, false],
        ReadOrder::MsdFirst,
    )
    .expect("valid automaton")
}

/// Outputs 1 exactly on words with a single 1: in the Zeckendorf system,
/// the characteristic sequence of the Fibonacci numbers.
pub fn fibonacci_indicator_dfao() -> Dfao<u8> {
    Dfao::with_names(
        names(&["0_0", "1", "0_1"]),
        0,
        vec![0, 1],
        vec![vec![0, 1], vec![1, 2], vec![2, 2]],
        vec![0, 1, 0],
        ReadOrder::MsdFirst,
    )
    .expect("valid automaton")
}

/// `{1, 00}*`.
pub fn l_prime_dfa() -> Dfa {
    Dfa::with_names(
        names(&["even", "odd0", "dead"]),
        0,
        vec![0, 1],
        vec![vec![1, 0], vec![0, 2], vec![2, 2]],
        vec![true, false, false],
        ReadOrder::MsdFirst,
    )
    .expect("valid automaton")
}

/// `{11}* 1`.
pub fn l_a1_dfa() -> Dfa {
    Dfa::with_names(
        names(&["even", "odd", "dead"]),
        0,
        vec![0, 1],
        vec![vec![2, 1], vec![2, 0], vec![2, 2]],
        vec![false, true, false],
        ReadOrder::MsdFirst,
    )
    .expect("valid automaton")
}

/// `1 {1, 00}* 0 {11}* 1`.
pub fn l_a2_dfa() -> Dfa {
    // start, prefix (after 1{1,00}*), zero (a 0 after the prefix),
    // accept (0{11}*1 complete), pending (inside an 11 block), dead
    Dfa::with_names(
        names(&["start", "prefix", "zero", "accept", "pending", "dead"]),
        0,
        vec![0, 1],
        vec![
            vec![5, 1],
            vec![2, 1],
            vec![1, 3],
            vec![5, 4],
            vec![5, 3],
            vec![5, 5],
        ],
        vec![false, false, false, true, false, false],
        ReadOrder::MsdFirst,
    )
    .expect("valid automaton")
}

/// Binary expansions of the positions of 1s in `u`.
pub fn l_a_dfa() -> Dfa {
    l_a1_dfa().union(&l_a2_dfa()).expect("same alphabet")
}

/// Languages addressable by name.
pub fn language(name: &str) -> Option<Dfa> {
    Some(match name {
        "lprime" => l_prime_dfa(),
        "la" => l_a_dfa(),
        "la1" => l_a1_dfa(),
        "la2" => l_a2_dfa(),
        "lf" => zeckendorf_language_dfa(),
        _ => return None,
    })
}

pub const LANGUAGE_NAMES: [&str; 5] = ["lprime", "la", "la1", "la2", "lf"];

/// `0 -> 01, 1 -> 00`.
pub fn h() -> Morphism {
    Morphism::from_rules(&[("0", &["0", "1"]), ("1", &["0", "0"])]).expect("valid morphism")
}

/// Thue–Morse morphism `0 -> 01, 1 -> 10`.
pub fn tau() -> Morphism {
    Morphism::from_rules(&[("0", &["0", "1"]), ("1", &["1", "0"])]).expect("valid morphism")
}

/// `1 -> 121, 2 -> 12221`, whose fixed point is the run-length sequence of
/// Thue–Morse.
pub fn run_length_morphism() -> Morphism {
    Morphism::from_rules(&[("1", &["1", "2", "1"]), ("2", &["1", "2", "2", "2", "1"])])
        .expect("valid morphism")
}

/// `2 -> 242, 4 -> 24442`.
pub fn f24() -> Morphism {
    Morphism::from_rules(&[("2", &["2", "4", "2"]), ("4", &["2", "4", "4", "4", "2"])])
        .expect("valid morphism")
}

/// `2 -> 01, 4 -> 0001`.
pub fn g24() -> Morphism {
    Morphism::coding(
        &["2", "4"],
        &["0", "1"],
        &[("2", &["0", "1"]), ("4", &["0", "0", "0", "1"])],
    )
    .expect("valid morphism")
}

const FIB_LETTERS: [&str; 9] = ["z", "a0", "a1", "a2", "a3", "a4", "a5", "a6", "a7"];

/// Morphism read off the product of the Zeckendorf language DFA and the
/// Fibonacci indicator DFAO, with `z -> z a0`.
pub fn fibonacci_product_morphism() -> Morphism {
    Morphism::from_rules(&[
        ("z", &["z", "a0"]),
        ("a0", &["a1", "a2"]),
        ("a1", &["a1", "a4"]),
        ("a2", &["a3", "a7"]),
        ("a3", &["a3", "a6"]),
        ("a4", &["a4", "a7"]),
        ("a5", &["a5", "a6"]),
        ("a6", &["a5", "a7"]),
        ("a7", &["a7", "a7"]),
    ])
    .expect("valid morphism")
}

/// Coding paired with [`fibonacci_product_morphism`].
pub fn fibonacci_product_coding() -> Morphism {
    Morphism::coding(
        &FIB_LETTERS,
        &["0", "1"],
        &[
            ("z", &[]),
            ("a0", &["0"]),
            ("a1", &[]),
            ("a2", &["1"]),
            ("a3", &["1"]),
            ("a4", &[]),
            ("a5", &["0"]),
            ("a6", &["0"]),
            ("a7", &[]),
        ],
    )
    .expect("valid morphism")
}

/// Names of the product states, in the letter order of
/// [`fibonacci_product_morphism`] (after `z`).
pub const FIB_PRODUCT_STATES: [(&str, &str); 8] = [
    ("A", "0_0"),
    ("E", "0_0"),
    ("B", "1"),
    ("C", "1"),
    ("E", "1"),
    ("C", "0_1"),
    ("D", "0_1"),
    ("E", "0_1"),
];

/// `a -> ab, b -> c, c -> ce, d -> de, e -> d`.
pub fn phi() -> Morphism {
    Morphism::from_rules(&[
        ("a", &["a", "b"]),
        ("b", &["c"]),
        ("c", &["c", "e"]),
        ("d", &["d", "e"]),
        ("e", &["d"]),
    ])
    .expect("valid morphism")
}

/// `a, d, e -> 0; b, c -> 1`.
pub fn mu() -> Morphism {
    Morphism::coding(
        &["a", "b", "c", "d", "e"],
        &["0", "1"],
        &[
            ("a", &["0"]),
            ("b", &["1"]),
            ("c", &["1"]),
            ("d", &["0"]),
            ("e", &["0"]),
        ],
    )
    .expect("valid morphism")
}

/// Morphisms addressable by name, with their seed letter.
pub fn morphism(name: &str) -> Option<(Morphism, Option<usize>)> {
    Some(match name {
        "h" => (h(), Some(0)),
        "tau" => (tau(), Some(0)),
        "f" => (run_length_morphism(), Some(0)),
        "f24" => (f24(), Some(0)),
        "g24" => (g24(), None),
        "fib" => (fibonacci_product_morphism(), Some(0)),
        "fibcoding" => (fibonacci_product_coding(), None),
        "phi" => (phi(), Some(0)),
        "mu" => (mu(), None),
        _ => return None,
    })
}

fn term(coeff: &[u32], pattern: ExponentPattern) -> RelationTerm {
    RelationTerm {
        coeff: coeff.to_vec(),
        pattern,
    }
}

/// `X (1 + X^2) D^2 + (1 + X^2) D + X = 0` over `F_2`.
pub fn period_doubling_relation() -> PolyRelation {
    use ExponentPattern::Power;
    PolyRelation::new(
        2,
        vec![
            term(&[0, 1, 0, 1], Power(2)),
            term(&[1, 0, 1], Power(1)),
            term(&[0, 1], Power(0)),
        ],
    )
    .expect("valid relation")
}

/// `X^2 U^3 + X U^2 + (X^2 + 1) U + X = 0` over `F_2`.
pub fn inverse_cubic_relation() -> PolyRelation {
    use ExponentPattern::Power;
    PolyRelation::new(
        2,
        vec![
            term(&[0, 0, 1], Power(3)),
            term(&[0, 1], Power(2)),
            term(&[1, 0, 1], Power(1)),
            term(&[0, 1], Power(0)),
        ],
    )
    .expect("valid relation")
}

/// `X^3 U^4 + X^3 U^2 + U + X = 0` over `F_2`.
pub fn inverse_quartic_relation() -> PolyRelation {
    use ExponentPattern::Power;
    PolyRelation::new(
        2,
        vec![
            term(&[0, 0, 0, 1], Power(4)),
            term(&[0, 0, 0, 1], Power(2)),
            term(&[1], Power(1)),
            term(&[0, 1], Power(0)),
        ],
    )
    .expect("valid relation")
}

fn one_minus_x_pow(p: u32, e: u32) -> Vec<u32> {
    let pm = p as u64;
    let mut poly = vec![1u64];
    for _ in 0..e {
        let mut next = vec![0u64; poly.len() + 1];
        for (i, &c) in poly.iter().enumerate() {
            next[i] = (next[i] + c) % pm;
            next[i + 1] = (next[i + 1] + (pm - c)) % pm;
        }
        poly = next;
    }
    poly.into_iter().map(|c| c as u32).collect()
}

/// `(1 - X)^(p+1) T_p^p - (1 - X)^2 T_p + X = 0` over `F_p`.
pub fn thue_morse_relation(p: u32) -> Result<PolyRelation, SeriesError> {
    let minus_sq: Vec<u32> = one_minus_x_pow(p, 2)
        .into_iter()
        .map(|c| (p - c) % p)
        .collect();
    PolyRelation::new(
        p,
        vec![
            term(&one_minus_x_pow(p, p + 1), ExponentPattern::Power(p as u64)),
            term(&minus_sq, ExponentPattern::Power(1)),
            term(&[0, 1], ExponentPattern::Power(0)),
        ],
    )
}

/// Generating function of `d` over `F_2`.
pub fn period_doubling_series(n: usize) -> TruncatedSeries {
    TruncatedSeries::from_fn(2, n, |k| ((k + 1).trailing_zeros() % 2) as u64).expect("valid series")
}

/// `T_p(X) = sum s_p(n) X^n` over `F_p`, with `s_p` the base-p digit sum.
pub fn thue_morse_series(p: u32, n: usize) -> Result<TruncatedSeries, SeriesError> {
    TruncatedSeries::from_fn(p, n, |k| digit_sum(k as u64, p as u64))
}

pub(crate) fn digit_sum(mut n: u64, p: u64) -> u64 {
    let mut s = 0;
    while n > 0 {
        s += n % p;
        n /= p;
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn languages_match_structural_predicates() {
        let la1 = |w: &[u32]| w.len() % 2 == 1 && w.iter().all(|&c| c == 1);
        // 1 u 0 v 1 with u in {1,00}*, v in {11}*
        let in_lprime = |w: &[u32]| {
            let mut i = 0;
            while i < w.len() {
                if w[i] == 1 {
                    i += 1;
                } else if i + 1 < w.len() && w[i + 1] == 0 {
                    i += 2;
                } else {
                    return false;
                }
            }
            true
        };
        let la2 = |w: &[u32]| {
            if w.len() < 3 || w[0] != 1 || *w.last().unwrap() != 1 {
                return false;
            }
            let mid = &w[1..w.len() - 1];
            (0..mid.len()).any(|z| {
                mid[z] == 0
                    && in_lprime(&mid[..z])
                    && (mid.len() - z - 1) % 2 == 0
                    && mid[z + 1..].iter().all(|&c| c == 1)
            })
        };
        let zeck = |w: &[u32]| w.is_empty() || (w[0] == 1 && !w.windows(2).any(|p| p == [1, 1]));
        let (a1, a2, a, lp, lf) = (
            l_a1_dfa(),
            l_a2_dfa(),
            l_a_dfa(),
            l_prime_dfa(),
            zeckendorf_language_dfa(),
        );
        for len in 0..=14usize {
            for bits in 0u32..(1 << len) {
                let w: Vec<u32> = (0..len).rev().map(|b| (bits >> b) & 1).collect();
                assert_eq!(a1.accepts(&w).unwrap(), la1(&w), "{w:?}");
                assert_eq!(a2.accepts(&w).unwrap(), la2(&w), "{w:?}");
                assert_eq!(a.accepts(&w).unwrap(), la1(&w) || la2(&w), "{w:?}");
                assert_eq!(lp.accepts(&w).unwrap(), in_lprime(&w), "{w:?}");
                assert_eq!(lf.accepts(&w).unwrap(), zeck(&w), "{w:?}");
            }
        }
    }

    #[test]
    fn thue_morse_relation_shape() {
        let r = thue_morse_relation(3).unwrap();
        // (1 - X)^4 = 1 - 4X + 6X^2 - 4X^3 + X^4 = 1 + 2X + 0 + 2X^3 + X^4 mod 3
        assert_eq!(r.terms()[0].coeff, vec![1, 2, 0, 2, 1]);
        // -(1 - X)^2 = -1 + 2X - X^2 = 2 + 2X + 2X^2 mod 3
        assert_eq!(r.terms()[1].coeff, vec![2, 2, 2]);
    }
}
