//! Integer representations: base k, Zeckendorf, and abstract numeration
//! systems given by a regular language in genealogical order.
//!
//! Words are most significant digit first everywhere in this module; the
//! representation of 0 is always the empty word.

use std::sync::{Arc, Mutex};

use num_bigint::BigUint;
use num_traits::Zero;
use thiserror::Error;

use crate::automata::{AutomatonError, Dfa, Dfao, ReadOrder};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumerationError {
    #[error("base must be at least 2, got {0}")]
    InvalidBase(u32),
    #[error("word {0:?} is not a valid representation")]
    NotInLanguage(Vec<u32>),
    #[error("numeration language must be infinite")]
    FiniteLanguage,
    #[error("numeration automaton must read most significant digit first")]
    WrongReadOrder,
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
}

/// Weights `1, 2, 3, 5, 8, ...` of the Zeckendorf system.
#[derive(Clone, Copy, Debug, Default)]
pub struct FibBasis;

impl FibBasis {
    /// All weights that fit in a `u64`, in increasing order.
    pub fn weights() -> impl Iterator<Item = u64> {
        let mut state = Some((1u64, 2u64));
        std::iter::from_fn(move || {
            let (a, b) = state?;
            state = a.checked_add(b).map(|c| (b, c));
            Some(a)
        })
    }

    pub fn weight(i: usize) -> u64 {
        Self::weights().nth(i).expect("weight index fits in u64")
    }
}

#[derive(Clone, Debug)]
pub enum NumerationSystem {
    BaseK(u32),
    Zeckendorf,
    Ans(AnsSystem),
}

impl NumerationSystem {
    pub fn base(k: u32) -> Result<Self, NumerationError> {
        if k < 2 {
            return Err(NumerationError::InvalidBase(k));
        }
        Ok(NumerationSystem::BaseK(k))
    }

    pub fn ans(dfa: Dfa) -> Result<Self, NumerationError> {
        Ok(NumerationSystem::Ans(AnsSystem::new(dfa)?))
    }

    /// Representation of `n`, most significant digit first.
    pub fn rep(&self, n: u64) -> Vec<u32> {
        match self {
            NumerationSystem::BaseK(k) => {
                let k = *k as u64;
                let mut digits = Vec::new();
                let mut m = n;
                while m > 0 {
                    digits.push((m % k) as u32);
                    m /= k;
                }
                digits.reverse();
                digits
            }
            NumerationSystem::Zeckendorf => zeckendorf_rep(n),
            NumerationSystem::Ans(a) => a.unrank(&BigUint::from(n)),
        }
    }

    /// Value of a word; the inverse of [`rep`](Self::rep).
    pub fn val(&self, word: &[u32]) -> Result<BigUint, NumerationError> {
        let bad = || NumerationError::NotInLanguage(word.to_vec());
        match self {
            NumerationSystem::BaseK(k) => {
                if word.first() == Some(&0) || word.iter().any(|&d| d >= *k) {
                    return Err(bad());
                }
                Ok(word.iter().fold(BigUint::zero(), |acc, &d| acc * *k + d))
            }
            NumerationSystem::Zeckendorf => {
                let valid = word.first() != Some(&0)
                    && word.iter().all(|&d| d <= 1)
                    && word.windows(2).all(|w| w != [1, 1]);
                if !valid {
                    return Err(bad());
                }
                let mut total = BigUint::zero();
                let (mut w_lo, mut w_hi) = (BigUint::from(1u32), BigUint::from(2u32));
                for &d in word.iter().rev() {
                    if d == 1 {
                        total += &w_lo;
                    }
                    let next = &w_lo + &w_hi;
                    w_lo = std::mem::replace(&mut w_hi, next);
                }
                Ok(total)
            }
            NumerationSystem::Ans(a) => a.rank(word),
        }
    }
}

/// The `x_n = mu(delta(q0, rep(n)))` value of an automatic sequence.
pub fn automatic_eval<'a, O>(
    s: &NumerationSystem,
    m: &'a Dfao<O>,
    n: u64,
) -> Result<&'a O, AutomatonError> {
    m.eval(n, s)
}

fn zeckendorf_rep(n: u64) -> Vec<u32> {
    if n == 0 {
        return Vec::new();
    }
    let weights: Vec<u64> = FibBasis::weights().take_while(|&w| w <= n).collect();
    let mut rest = n;
    weights
        .iter()
        .rev()
        .map(|&w| {
            if w <= rest {
                rest -= w;
                1
            } else {
                0
            }
        })
        .collect()
}

/// Abstract numeration system: the `n`-th word (from 0) of an infinite
/// regular language in genealogical order represents `n`.
#[derive(Clone, Debug)]
pub struct AnsSystem {
    dfa: Dfa,
    /// Alphabet positions sorted by letter value.
    letter_order: Vec<usize>,
    /// `counts[l][q]`: accepted words of length `l` read from state `q`.
    counts: Arc<Mutex<Arc<Vec<Vec<BigUint>>>>>,
}

impl AnsSystem {
    pub fn new(dfa: Dfa) -> Result<Self, NumerationError> {
        if dfa.read_order() != ReadOrder::MsdFirst {
            return Err(NumerationError::WrongReadOrder);
        }
        if !dfa.is_infinite() {
            return Err(NumerationError::FiniteLanguage);
        }
        let mut letter_order: Vec<usize> = (0..dfa.alphabet().len()).collect();
        letter_order.sort_by_key(|&j| dfa.alphabet()[j]);
        Ok(Self {
            dfa,
            letter_order,
            counts: Arc::new(Mutex::new(Arc::new(Vec::new()))),
        })
    }

    pub fn dfa(&self) -> &Dfa {
        &self.dfa
    }

    /// Suffix-count tables for all lengths up to at least `max_len`. The
    /// cache only ever grows; readers get a cheap shared snapshot.
    fn counts_upto(&self, max_len: usize) -> Arc<Vec<Vec<BigUint>>> {
        let mut guard = self.counts.lock().expect("count cache poisoned");
        if guard.len() > max_len {
            return Arc::clone(&guard);
        }
        let table = Arc::make_mut(&mut guard);
        if table.is_empty() {
            table.push(
                self.dfa
                    .outputs()
                    .iter()
                    .map(|&acc| BigUint::from(u32::from(acc)))
                    .collect(),
            );
        }
        while table.len() <= max_len {
            let prev = table.last().expect("nonempty");
            let row = (0..self.dfa.len())
                .map(|q| {
                    self.letter_order
                        .iter()
                        .map(|&j| &prev[self.dfa.target(q, j)])
                        .sum::<BigUint>()
                })
                .collect();
            table.push(row);
        }
        Arc::clone(&guard)
    }

    /// Number of accepted words of length `len`.
    pub fn words_of_length(&self, len: usize) -> BigUint {
        self.counts_upto(len)[len][self.dfa.initial()].clone()
    }

    /// The `n`-th accepted word in genealogical order.
    pub fn unrank(&self, n: &BigUint) -> Vec<u32> {
        let q0 = self.dfa.initial();
        let mut rest = n.clone();
        let mut len = 0;
        loop {
            let here = self.words_of_length(len);
            if rest < here {
                break;
            }
            rest -= here;
            len += 1;
        }
        let counts = self.counts_upto(len);
        let mut q = q0;
        let mut word = Vec::with_capacity(len);
        for pos in 0..len {
            let remaining = len - pos - 1;
            for &j in &self.letter_order {
                let t = self.dfa.target(q, j);
                let c = &counts[remaining][t];
                if rest < *c {
                    word.push(self.dfa.alphabet()[j]);
                    q = t;
                    break;
                }
                rest -= c;
            }
        }
        word
    }

    /// Position of `word` in the genealogical order of the language.
    pub fn rank(&self, word: &[u32]) -> Result<BigUint, NumerationError> {
        if !self
            .dfa
            .accepts(word)
            .map_err(|_| NumerationError::NotInLanguage(word.to_vec()))?
        {
            return Err(NumerationError::NotInLanguage(word.to_vec()));
        }
        let len = word.len();
        let counts = self.counts_upto(len);
        let q0 = self.dfa.initial();
        let mut r: BigUint = counts[..len].iter().map(|row| &row[q0]).sum();
        let mut q = q0;
        for (pos, &letter) in word.iter().enumerate() {
            let remaining = len - pos - 1;
            for &j in &self.letter_order {
                if self.dfa.alphabet()[j] >= letter {
                    break;
                }
                r += &counts[remaining][self.dfa.target(q, j)];
            }
            q = self.dfa.step(q, letter)?;
        }
        Ok(r)
    }

    /// Streams the accepted words in genealogical order.
    pub fn words(&self) -> GenealogicalWords {
        GenealogicalWords::new(&self.dfa, self.letter_order.clone())
    }
}

/// Lending iterator over the words of a language in genealogical order.
pub struct GenealogicalWords {
    dfa: Dfa,
    letter_order: Vec<usize>,
    /// `live[l][q]`: some accepted word of length `l` starts at `q`.
    live: Vec<Vec<bool>>,
    /// Letter positions of the current word.
    choice: Vec<usize>,
    /// `states[i]` is the state before reading position `i`.
    states: Vec<usize>,
    started: bool,
}

impl GenealogicalWords {
    fn new(dfa: &Dfa, letter_order: Vec<usize>) -> Self {
        let live = vec![dfa.outputs().to_vec()];
        Self {
            dfa: dfa.clone(),
            letter_order,
            live,
            choice: Vec::new(),
            states: vec![dfa.initial()],
            started: false,
        }
    }

    fn live(&mut self, len: usize, q: usize) -> bool {
        while self.live.len() <= len {
            let prev = self.live.last().expect("nonempty");
            let row = (0..self.dfa.len())
                .map(|s| {
                    self.letter_order
                        .iter()
                        .any(|&j| prev[self.dfa.target(s, j)])
                })
                .collect();
            self.live.push(row);
        }
        self.live[len][q]
    }

    /// Fills positions `from..len` with the smallest completion; the prefix
    /// up to `from` must be extendable.
    fn fill_min(&mut self, from: usize, len: usize) {
        self.choice.truncate(from);
        self.states.truncate(from + 1);
        for pos in from..len {
            let q = self.states[pos];
            let remaining = len - pos - 1;
            let j = (0..self.letter_order.len())
                .find(|&i| {
                    let t = self.dfa.target(q, self.letter_order[i]);
                    self.live(remaining, t)
                })
                .expect("extendable prefix");
            self.choice.push(j);
            self.states.push(self.dfa.target(q, self.letter_order[j]));
        }
    }

    fn advance(&mut self) {
        let len = self.choice.len();
        if self.started {
            for pos in (0..len).rev() {
                let q = self.states[pos];
                let remaining = len - pos - 1;
                let next = (self.choice[pos] + 1..self.letter_order.len()).find(|&i| {
                    let t = self.dfa.target(q, self.letter_order[i]);
                    self.live(remaining, t)
                });
                if let Some(i) = next {
                    self.choice.truncate(pos);
                    self.states.truncate(pos + 1);
                    self.choice.push(i);
                    self.states.push(self.dfa.target(q, self.letter_order[i]));
                    self.fill_min(pos + 1, len);
                    return;
                }
            }
        }
        let q0 = self.dfa.initial();
        let mut l = if self.started { len + 1 } else { 0 };
        self.started = true;
        while !self.live(l, q0) {
            l += 1;
        }
        self.fill_min(0, l);
    }

    /// Advances to the next word and returns it as letter values.
    pub fn next_word(&mut self) -> Vec<u32> {
        self.advance();
        self.choice
            .iter()
            .map(|&i| self.dfa.alphabet()[self.letter_order[i]])
            .collect()
    }

    /// Advances and returns the value of the next word read in base `k`.
    pub fn next_value(&mut self, k: u64) -> u128 {
        self.advance();
        self.choice.iter().fold(0u128, |acc, &i| {
            acc * k as u128 + self.dfa.alphabet()[self.letter_order[i]] as u128
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Words with letters in {0,1} and no factor 11, starting with 1.
    fn zeckendorf_dfa() -> Dfa {
        Dfa::new(
            0,
            vec![0, 1],
            vec![vec![3, 1], vec![2, 3], vec![2, 1], vec![3, 3]],
            vec![true, true, true, false],
            ReadOrder::MsdFirst,
        )
        .unwrap()
    }

    /// Zeckendorf words listed by brute force: all binary strings without 11
    /// and without a leading 0, sorted by value.
    fn brute_zeckendorf(limit: usize) -> Vec<Vec<u32>> {
        let mut words = vec![Vec::new()];
        let mut len = 1;
        while words.len() < limit {
            for bits in 0u64..(1 << len) {
                let w: Vec<u32> = (0..len).rev().map(|b| ((bits >> b) & 1) as u32).collect();
                if w[0] == 1 && !w.windows(2).any(|p| p == [1, 1]) {
                    words.push(w);
                }
            }
            len += 1;
        }
        words.truncate(limit);
        words
    }

    #[test]
    fn base_k_examples() {
        let b2 = NumerationSystem::base(2).unwrap();
        assert_eq!(b2.rep(13), vec![1, 1, 0, 1]);
        assert_eq!(b2.rep(0), Vec::<u32>::new());
        assert_eq!(b2.val(&[1, 0, 1]).unwrap(), BigUint::from(5u32));
        assert!(b2.val(&[0, 1]).is_err());
        assert!(NumerationSystem::base(1).is_err());
    }

    #[test]
    fn zeckendorf_matches_enumeration() {
        let z = NumerationSystem::Zeckendorf;
        assert_eq!(z.rep(4), vec![1, 0, 1]);
        assert_eq!(z.rep(1), vec![1]);
        for (n, w) in brute_zeckendorf(2000).into_iter().enumerate() {
            assert_eq!(z.rep(n as u64), w, "n = {n}");
            assert_eq!(z.val(&w).unwrap(), BigUint::from(n));
        }
        assert!(z.val(&[1, 1]).is_err());
    }

    #[test]
    fn ans_over_zeckendorf_language() {
        let ans = NumerationSystem::ans(zeckendorf_dfa()).unwrap();
        assert_eq!(ans.val(&[1, 0, 0, 0]).unwrap(), BigUint::from(5u32));
        let z = NumerationSystem::Zeckendorf;
        for n in 0..3000u64 {
            let w = ans.rep(n);
            assert_eq!(w, z.rep(n));
            assert_eq!(ans.val(&w).unwrap(), BigUint::from(n));
        }
        let NumerationSystem::Ans(sys) = &ans else {
            unreachable!()
        };
        let mut it = sys.words();
        for n in 0..3000u64 {
            assert_eq!(it.next_word(), z.rep(n));
        }
    }

    #[test]
    fn finite_language_rejected() {
        let finite = Dfa::new(
            0,
            vec![0],
            vec![vec![1], vec![1]],
            vec![true, false],
            ReadOrder::MsdFirst,
        )
        .unwrap();
        assert_eq!(
            NumerationSystem::ans(finite).unwrap_err(),
            NumerationError::FiniteLanguage
        );
    }

    #[test]
    fn fib_basis() {
        let w: Vec<u64> = FibBasis::weights().take(6).collect();
        assert_eq!(w, vec![1, 2, 3, 5, 8, 13]);
        assert!(FibBasis::weights().count() > 85);
    }
}
