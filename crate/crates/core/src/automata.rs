//! Deterministic finite automata with output (DFAOs) and plain DFAs.
//!
//! Letters are small unsigned integers (digits). Words passed to the
//! evaluation functions are always written most significant digit first;
//! an automaton with [`ReadOrder::LsdFirst`] reverses them internally.

use std::collections::{HashMap, VecDeque};
use std::fmt::{self, Display, Write as _};
use std::hash::Hash;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numeration::NumerationSystem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReadOrder {
    LsdFirst,
    MsdFirst,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AutomatonError {
    #[error("automaton needs at least one state")]
    NoStates,
    #[error("initial state {0} out of range")]
    BadInitial(usize),
    #[error("state {state} has {got} transitions, expected {expected}")]
    NotTotal {
        state: usize,
        got: usize,
        expected: usize,
    },
    #[error("transition from state {from} targets missing state {to}")]
    BadTarget { from: usize, to: usize },
    #[error("{got} outputs for {expected} states")]
    OutputCount { got: usize, expected: usize },
    #[error("{got} state names for {expected} states")]
    NameCount { got: usize, expected: usize },
    #[error("letter {0} occurs twice in the alphabet")]
    DuplicateLetter(u32),
    #[error("letter {0} is not in the input alphabet")]
    UnknownLetter(u32),
    #[error("input alphabets differ")]
    AlphabetMismatch,
    #[error("read orders differ")]
    ReadOrderMismatch,
}

/// A complete DFAO. States are numbered `0..len`; every state has one
/// transition per alphabet letter.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawDfao<O>", bound(deserialize = "O: Deserialize<'de>"))]
pub struct Dfao<O> {
    states: Vec<String>,
    initial: usize,
    alphabet: Vec<u32>,
    /// `transitions[q][j]` is the target of state `q` on `alphabet[j]`.
    transitions: Vec<Vec<usize>>,
    outputs: Vec<O>,
    read_order: ReadOrder,
    #[serde(skip)]
    letter_index: Vec<Option<usize>>,
}

#[derive(Deserialize)]
struct RawDfao<O> {
    states: Vec<String>,
    initial: usize,
    alphabet: Vec<u32>,
    transitions: Vec<Vec<usize>>,
    outputs: Vec<O>,
    read_order: ReadOrder,
}

impl<O> TryFrom<RawDfao<O>> for Dfao<O> {
    type Error = AutomatonError;

    fn try_from(r: RawDfao<O>) -> Result<Self, Self::Error> {
        Dfao::with_names(
            r.states,
            r.initial,
            r.alphabet,
            r.transitions,
            r.outputs,
            r.read_order,
        )
    }
}

/// A DFA is a DFAO whose outputs say whether the state is accepting.
pub type Dfa = Dfao<bool>;

impl<O> Dfao<O> {
    /// Builds an automaton with states named by their index.
    pub fn new(
        initial: usize,
        alphabet: Vec<u32>,
        transitions: Vec<Vec<usize>>,
        outputs: Vec<O>,
        read_order: ReadOrder,
    ) -> Result<Self, AutomatonError> {
        let names = (0..transitions.len()).map(|q| q.to_string()).collect();
        Self::with_names(names, initial, alphabet, transitions, outputs, read_order)
    }

    pub fn with_names(
        states: Vec<String>,
        initial: usize,
        alphabet: Vec<u32>,
        transitions: Vec<Vec<usize>>,
        outputs: Vec<O>,
        read_order: ReadOrder,
    ) -> Result<Self, AutomatonError> {
        let n = transitions.len();
        if n == 0 {
            return Err(AutomatonError::NoStates);
        }
        if initial >= n {
            return Err(AutomatonError::BadInitial(initial));
        }
        if states.len() != n {
            return Err(AutomatonError::NameCount {
                got: states.len(),
                expected: n,
            });
        }
        if outputs.len() != n {
            return Err(AutomatonError::OutputCount {
                got: outputs.len(),
                expected: n,
            });
        }
        for (q, row) in transitions.iter().enumerate() {
            if row.len() != alphabet.len() {
                return Err(AutomatonError::NotTotal {
                    state: q,
                    got: row.len(),
                    expected: alphabet.len(),
                });
            }
            if let Some(&to) = row.iter().find(|&&t| t >= n) {
                return Err(AutomatonError::BadTarget { from: q, to });
            }
        }
        let max = alphabet.iter().copied().max().map_or(0, |m| m as usize + 1);
        let mut letter_index = vec![None; max];
        for (j, &a) in alphabet.iter().enumerate() {
            if letter_index[a as usize].replace(j).is_some() {
                return Err(AutomatonError::DuplicateLetter(a));
            }
        }
        Ok(Self {
            states,
            initial,
            alphabet,
            transitions,
            outputs,
            read_order,
            letter_index,
        })
    }

    pub fn len(&self) -> usize {
        self.transitions.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn alphabet(&self) -> &[u32] {
        &self.alphabet
    }

    pub fn read_order(&self) -> ReadOrder {
        self.read_order
    }

    pub fn state_names(&self) -> &[String] {
        &self.states
    }

    pub(crate) fn target(&self, q: usize, letter_pos: usize) -> usize {
        self.transitions[q][letter_pos]
    }

    pub fn state_name(&self, q: usize) -> &str {
        &self.states[q]
    }

    pub fn outputs(&self) -> &[O] {
        &self.outputs
    }

    pub fn output(&self, q: usize) -> &O {
        &self.outputs[q]
    }

    fn index_of(&self, letter: u32) -> Result<usize, AutomatonError> {
        self.letter_index
            .get(letter as usize)
            .copied()
            .flatten()
            .ok_or(AutomatonError::UnknownLetter(letter))
    }

    pub fn step(&self, q: usize, letter: u32) -> Result<usize, AutomatonError> {
        Ok(self.transitions[q][self.index_of(letter)?])
    }

    /// Runs the letters in the order given, ignoring [`ReadOrder`].
    pub fn run_raw(&self, letters: impl IntoIterator<Item = u32>) -> Result<usize, AutomatonError> {
        letters
            .into_iter()
            .try_fold(self.initial, |q, a| self.step(q, a))
    }

    /// State reached on a word written most significant digit first.
    pub fn final_state(&self, msd_word: &[u32]) -> Result<usize, AutomatonError> {
        match self.read_order {
            ReadOrder::MsdFirst => self.run_raw(msd_word.iter().copied()),
            ReadOrder::LsdFirst => self.run_raw(msd_word.iter().rev().copied()),
        }
    }

    /// Output after reading a word written most significant digit first.
    pub fn eval_word(&self, msd_word: &[u32]) -> Result<&O, AutomatonError> {
        Ok(&self.outputs[self.final_state(msd_word)?])
    }

    /// `mu(delta(q0, rep(n)))` for the representation of `n` in `numeration`.
    pub fn eval(&self, n: u64, numeration: &NumerationSystem) -> Result<&O, AutomatonError> {
        self.eval_word(&numeration.rep(n))
    }

    /// Same automaton with each output replaced by `f(output)`.
    pub fn map_outputs<P>(&self, f: impl FnMut(&O) -> P) -> Dfao<P> {
        Dfao {
            states: self.states.clone(),
            initial: self.initial,
            alphabet: self.alphabet.clone(),
            transitions: self.transitions.clone(),
            outputs: self.outputs.iter().map(f).collect(),
            read_order: self.read_order,
            letter_index: self.letter_index.clone(),
        }
    }

    /// States in breadth-first order from the initial state, following
    /// letters in alphabet order. Unreachable states are omitted.
    pub fn bfs_order(&self) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        let mut order = vec![self.initial];
        seen[self.initial] = true;
        let mut head = 0;
        while head < order.len() {
            let q = order[head];
            head += 1;
            for &t in &self.transitions[q] {
                if !seen[t] {
                    seen[t] = true;
                    order.push(t);
                }
            }
        }
        order
    }

    /// Renumbers the reachable states in breadth-first order, dropping the rest.
    pub fn canonical(&self) -> Self
    where
        O: Clone,
    {
        let order = self.bfs_order();
        let mut new_id = vec![usize::MAX; self.len()];
        for (i, &q) in order.iter().enumerate() {
            new_id[q] = i;
        }
        let remap = |q: usize| new_id[q];
        Dfao {
            states: order.iter().map(|&q| self.states[q].clone()).collect(),
            initial: 0,
            alphabet: self.alphabet.clone(),
            transitions: order
                .iter()
                .map(|&q| self.transitions[q].iter().map(|&t| remap(t)).collect())
                .collect(),
            outputs: order.iter().map(|&q| self.outputs[q].clone()).collect(),
            read_order: self.read_order,
            letter_index: self.letter_index.clone(),
        }
    }

    /// Reachable part of the synchronous product. Each product state is named
    /// `(a,b)` after its components.
    pub fn product<P: Clone>(&self, other: &Dfao<P>) -> Result<Dfao<(O, P)>, AutomatonError>
    where
        O: Clone,
    {
        if self.alphabet != other.alphabet {
            return Err(AutomatonError::AlphabetMismatch);
        }
        if self.read_order != other.read_order {
            return Err(AutomatonError::ReadOrderMismatch);
        }
        let start = (self.initial, other.initial);
        let mut ids: HashMap<(usize, usize), usize> = HashMap::from([(start, 0)]);
        let mut pairs = vec![start];
        let mut transitions = Vec::new();
        let mut head = 0;
        while head < pairs.len() {
            let (a, b) = pairs[head];
            head += 1;
            let row = (0..self.alphabet.len())
                .map(|j| {
                    let next = (self.transitions[a][j], other.transitions[b][j]);
                    *ids.entry(next).or_insert_with(|| {
                        pairs.push(next);
                        pairs.len() - 1
                    })
                })
                .collect();
            transitions.push(row);
        }
        let names = pairs
            .iter()
            .map(|&(a, b)| format!("({},{})", self.states[a], other.states[b]))
            .collect();
        let outputs = pairs
            .iter()
            .map(|&(a, b)| (self.outputs[a].clone(), other.outputs[b].clone()))
            .collect();
        Dfao::with_names(
            names,
            0,
            self.alphabet.clone(),
            transitions,
            outputs,
            self.read_order,
        )
    }

    /// Moore partition refinement seeded by outputs. The result is reachable,
    /// minimal and numbered in breadth-first order; each class keeps the name
    /// of its first member in that order.
    pub fn minimize(&self) -> Self
    where
        O: Clone + Eq + Hash,
    {
        let reach = self.canonical();
        let n = reach.len();
        let mut block = {
            let mut ids: HashMap<&O, usize> = HashMap::new();
            let mut block = Vec::with_capacity(n);
            for o in &reach.outputs {
                let next = ids.len();
                block.push(*ids.entry(o).or_insert(next));
            }
            block
        };
        let mut count = block.iter().max().map_or(0, |m| m + 1);
        loop {
            let mut ids: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
            let refined: Vec<usize> = (0..n)
                .map(|q| {
                    let sig = (
                        block[q],
                        reach.transitions[q].iter().map(|&t| block[t]).collect(),
                    );
                    let next = ids.len();
                    *ids.entry(sig).or_insert(next)
                })
                .collect();
            let new_count = ids.len();
            block = refined;
            if new_count == count {
                break;
            }
            count = new_count;
        }
        let mut rep = vec![usize::MAX; count];
        for q in (0..n).rev() {
            rep[block[q]] = q;
        }
        let quotient = Dfao {
            states: rep.iter().map(|&q| reach.states[q].clone()).collect(),
            initial: block[0],
            alphabet: reach.alphabet.clone(),
            transitions: rep
                .iter()
                .map(|&q| reach.transitions[q].iter().map(|&t| block[t]).collect())
                .collect(),
            outputs: rep.iter().map(|&q| reach.outputs[q].clone()).collect(),
            read_order: reach.read_order,
            letter_index: reach.letter_index.clone(),
        };
        quotient.canonical()
    }

    /// State bijection `self -> other` preserving initial state, transitions
    /// and outputs, if one exists. Only reachable states are compared.
    pub fn isomorphism(&self, other: &Dfao<O>) -> Option<Vec<(usize, usize)>>
    where
        O: Clone + PartialEq,
    {
        if self.alphabet != other.alphabet || self.read_order != other.read_order {
            return None;
        }
        let (a_order, b_order) = (self.bfs_order(), other.bfs_order());
        if a_order.len() != b_order.len() {
            return None;
        }
        let (a, b) = (self.canonical(), other.canonical());
        if a.transitions != b.transitions || a.outputs != b.outputs {
            return None;
        }
        Some(a_order.into_iter().zip(b_order).collect())
    }

    /// DOT rendering: states labelled `name/output`, one edge per target
    /// labelled with the set of letters leading there.
    pub fn to_dot(&self) -> String
    where
        O: Display,
    {
        let mut out = String::from("digraph dfao {\n  rankdir=LR;\n");
        let _ = writeln!(out, "  start [shape=point];");
        let _ = writeln!(out, "  start -> q{};", self.initial);
        for (q, name) in self.states.iter().enumerate() {
            let _ = writeln!(
                out,
                "  q{q} [label=\"{}/{}\"];",
                escape(name),
                self.outputs[q]
            );
        }
        for (q, row) in self.transitions.iter().enumerate() {
            let mut targets: Vec<(usize, Vec<u32>)> = Vec::new();
            for (j, &t) in row.iter().enumerate() {
                match targets.iter_mut().find(|(tt, _)| *tt == t) {
                    Some((_, letters)) => letters.push(self.alphabet[j]),
                    None => targets.push((t, vec![self.alphabet[j]])),
                }
            }
            for (t, letters) in targets {
                let label: Vec<String> = letters.iter().map(u32::to_string).collect();
                let _ = writeln!(out, "  q{q} -> q{t} [label=\"{}\"];", label.join(","));
            }
        }
        out.push_str("}\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

impl Dfa {
    pub fn accepts(&self, msd_word: &[u32]) -> Result<bool, AutomatonError> {
        Ok(*self.eval_word(msd_word)?)
    }

    pub fn complement(&self) -> Dfa {
        self.map_outputs(|&b| !b)
    }

    pub fn union(&self, other: &Dfa) -> Result<Dfa, AutomatonError> {
        Ok(self
            .product(other)?
            .map_outputs(|&(a, b)| a || b)
            .minimize())
    }

    pub fn intersection(&self, other: &Dfa) -> Result<Dfa, AutomatonError> {
        Ok(self
            .product(other)?
            .map_outputs(|&(a, b)| a && b)
            .minimize())
    }

    /// Number of accepted words of each length `0..=max_len`, where words are
    /// read in the automaton's own order.
    pub fn counts_by_length(&self, max_len: usize) -> Vec<BigUint> {
        let n = self.len();
        let mut occupancy = vec![BigUint::zero(); n];
        occupancy[self.initial] = BigUint::from(1u32);
        let mut counts = Vec::with_capacity(max_len + 1);
        for step in 0..=max_len {
            counts.push(self.accepted_mass(&occupancy));
            if step == max_len {
                break;
            }
            let mut next = vec![BigUint::zero(); n];
            for (q, c) in occupancy.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for &t in &self.transitions[q] {
                    next[t] += c;
                }
            }
            occupancy = next;
        }
        counts
    }

    fn accepted_mass(&self, occupancy: &[BigUint]) -> BigUint {
        occupancy
            .iter()
            .zip(&self.outputs)
            .filter(|(_, &acc)| acc)
            .map(|(c, _)| c)
            .sum()
    }

    /// Number of accepted words of length exactly `n`.
    pub fn count_length_n(&self, n: usize) -> BigUint {
        self.counts_by_length(n).pop().expect("at least one length")
    }

    /// States from which some accepting state is reachable.
    pub fn coreachable(&self) -> Vec<bool> {
        let n = self.len();
        let mut rev: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (q, row) in self.transitions.iter().enumerate() {
            for &t in row {
                rev[t].push(q);
            }
        }
        let mut good: Vec<bool> = self.outputs.clone();
        let mut queue: VecDeque<usize> = (0..n).filter(|&q| good[q]).collect();
        while let Some(q) = queue.pop_front() {
            for &s in &rev[q] {
                if !good[s] {
                    good[s] = true;
                    queue.push_back(s);
                }
            }
        }
        good
    }

    /// Whether the language is infinite: some reachable, co-reachable state
    /// lies on a cycle of such states.
    pub fn is_infinite(&self) -> bool {
        let co = self.coreachable();
        let mut useful = vec![false; self.len()];
        for q in self.bfs_order() {
            useful[q] = co[q];
        }
        // Kahn's algorithm on the useful subgraph: leftovers lie on a cycle.
        let mut indeg = vec![0usize; self.len()];
        for q in (0..self.len()).filter(|&q| useful[q]) {
            for &t in &self.transitions[q] {
                if useful[t] {
                    indeg[t] += 1;
                }
            }
        }
        let mut queue: Vec<usize> = (0..self.len())
            .filter(|&q| useful[q] && indeg[q] == 0)
            .collect();
        let mut removed = 0;
        while let Some(q) = queue.pop() {
            removed += 1;
            for &t in &self.transitions[q] {
                if useful[t] {
                    indeg[t] -= 1;
                    if indeg[t] == 0 {
                        queue.push(t);
                    }
                }
            }
        }
        removed < useful.iter().filter(|&&u| u).count()
    }
}

impl fmt::Display for ReadOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReadOrder::LsdFirst => "lsd-first",
            ReadOrder::MsdFirst => "msd-first",
        })
    }
}
