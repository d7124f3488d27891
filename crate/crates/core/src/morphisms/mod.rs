//! Morphisms of free monoids over small named alphabets: fixed points,
//! codings, erasure removal, incidence matrices and run lengths.
//!
//! Letters are indices into the alphabet's list of names. The text format is
//! one rule per line, `a -> a b`, with an optional `seed: a` header line.

mod spectral;

pub use spectral::{
    multiplicatively_independent, pf_eigenvalue, ExactRoot, IncidenceMatrix, PfEigenvalue,
};

use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::automata::{Dfa, Dfao};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MorphismError {
    #[error("letter {0:?} appears twice on the left of a rule")]
    DuplicateLetter(String),
    #[error("unknown letter {0:?}")]
    UnknownLetter(String),
    #[error("letter index {0} out of range")]
    LetterOutOfRange(usize),
    #[error("image count {got} does not match alphabet size {expected}")]
    ImageCount { got: usize, expected: usize },
    #[error("morphism maps letters outside its own alphabet")]
    NotEndomorphism,
    #[error("morphism is not prolongable on {0:?}")]
    NotProlongable(String),
    #[error("erased set is invalid: {0}")]
    BadErasure(String),
    #[error("trimming construction does not apply: {0}")]
    TrimInapplicable(String),
    #[error("stream ended before {0} complete runs")]
    InsufficientStream(usize),
    #[error("prefix of length {len} too short for period {period} and preperiod {preperiod} (need {required})")]
    PrefixTooShort {
        len: usize,
        period: usize,
        preperiod: usize,
        required: usize,
    },
    #[error("cannot decide independence of {0} and {1}")]
    Unsupported(String, String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    domain: Vec<String>,
    codomain: Vec<String>,
    images: Vec<Vec<usize>>,
}

impl Morphism {
    pub fn new(
        domain: Vec<String>,
        codomain: Vec<String>,
        images: Vec<Vec<usize>>,
    ) -> Result<Self, MorphismError> {
        check_distinct(&domain)?;
        check_distinct(&codomain)?;
        if images.len() != domain.len() {
            return Err(MorphismError::ImageCount {
                got: images.len(),
                expected: domain.len(),
            });
        }
        if let Some(&bad) = images.iter().flatten().find(|&&c| c >= codomain.len()) {
            return Err(MorphismError::LetterOutOfRange(bad));
        }
        Ok(Self {
            domain,
            codomain,
            images,
        })
    }

    /// Endomorphism from rules `(letter, image)`; the alphabet is the list of
    /// left-hand letters in rule order.
    pub fn from_rules(rules: &[(&str, &[&str])]) -> Result<Self, MorphismError> {
        let alphabet: Vec<String> = rules.iter().map(|(a, _)| a.to_string()).collect();
        let images = rules
            .iter()
            .map(|(_, img)| {
                img.iter()
                    .map(|l| {
                        alphabet
                            .iter()
                            .position(|x| x == l)
                            .ok_or_else(|| MorphismError::UnknownLetter(l.to_string()))
                    })
                    .collect()
            })
            .collect::<Result<_, _>>()?;
        Self::new(alphabet.clone(), alphabet, images)
    }

    /// Morphism `domain -> codomain*` from rules; every domain letter needs a rule.
    pub fn coding(
        domain: &[&str],
        codomain: &[&str],
        rules: &[(&str, &[&str])],
    ) -> Result<Self, MorphismError> {
        let domain: Vec<String> = domain.iter().map(|s| s.to_string()).collect();
        let codomain: Vec<String> = codomain.iter().map(|s| s.to_string()).collect();
        let mut images = vec![None; domain.len()];
        for (a, img) in rules {
            let i = index_in(&domain, a)?;
            if images[i].is_some() {
                return Err(MorphismError::DuplicateLetter(a.to_string()));
            }
            images[i] = Some(
                img.iter()
                    .map(|l| index_in(&codomain, l))
                    .collect::<Result<Vec<_>, _>>()?,
            );
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(i, img)| img.ok_or_else(|| MorphismError::UnknownLetter(domain[i].clone())))
            .collect::<Result<_, _>>()?;
        Self::new(domain, codomain, images)
    }

    /// Parses the text format. If every image letter is a left-hand letter
    /// the result is an endomorphism; otherwise the codomain consists of the
    /// image letters in order of first appearance.
    pub fn parse(text: &str) -> Result<(Self, Option<usize>), MorphismError> {
        let mut seed_name = None;
        let mut rules: Vec<(String, Vec<String>)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: &str| MorphismError::Parse {
                line: i + 1,
                msg: msg.to_string(),
            };
            if let Some(rest) = line.strip_prefix("seed:") {
                let s = rest.trim();
                if s.is_empty() || s.contains(char::is_whitespace) {
                    return Err(err("seed must be a single letter"));
                }
                seed_name = Some(s.to_string());
                continue;
            }
            let (lhs, rhs) = line
                .split_once("->")
                .ok_or_else(|| err("expected `letter -> image`"))?;
            let lhs = lhs.trim();
            if lhs.is_empty() || lhs.contains(char::is_whitespace) {
                return Err(err("left side must be a single letter"));
            }
            rules.push((
                lhs.to_string(),
                rhs.split_whitespace().map(str::to_string).collect(),
            ));
        }
        let domain: Vec<String> = rules.iter().map(|(a, _)| a.clone()).collect();
        check_distinct(&domain)?;
        let closed = rules
            .iter()
            .flat_map(|(_, r)| r)
            .all(|l| domain.contains(l));
        let codomain = if closed {
            domain.clone()
        } else {
            let mut letters: Vec<String> = Vec::new();
            for l in rules.iter().flat_map(|(_, r)| r) {
                if !letters.contains(l) {
                    letters.push(l.clone());
                }
            }
            letters
        };
        let images = rules
            .iter()
            .map(|(_, r)| r.iter().map(|l| index_in(&codomain, l)).collect())
            .collect::<Result<_, _>>()?;
        let m = Self::new(domain, codomain, images)?;
        let seed = seed_name
            .map(|s| m.letter(&s).ok_or(MorphismError::UnknownLetter(s)))
            .transpose()?;
        Ok((m, seed))
    }

    /// Renders the text format, with a seed header when given.
    pub fn to_text(&self, seed: Option<usize>) -> String {
        let mut out = String::new();
        if let Some(s) = seed {
            let _ = writeln!(out, "seed: {}", self.domain[s]);
        }
        for (a, img) in self.domain.iter().zip(&self.images) {
            let rhs: Vec<&str> = img.iter().map(|&c| self.codomain[c].as_str()).collect();
            let _ = writeln!(out, "{a} -> {}", rhs.join(" "));
        }
        out.lines()
            .map(str::trim_end)
            .collect::<Vec<_>>()
            .join("\n")
            + "\n"
    }

    pub fn domain(&self) -> &[String] {
        &self.domain
    }

    pub fn codomain(&self) -> &[String] {
        &self.codomain
    }

    pub fn image(&self, letter: usize) -> &[usize] {
        &self.images[letter]
    }

    pub fn letter(&self, name: &str) -> Option<usize> {
        self.domain.iter().position(|x| x == name)
    }

    pub fn is_endomorphism(&self) -> bool {
        self.domain == self.codomain
    }

    pub fn is_non_erasing(&self) -> bool {
        self.images.iter().all(|img| !img.is_empty())
    }

    /// Common image length, if all images have the same length.
    pub fn uniform_length(&self) -> Option<usize> {
        let first = self.images.first()?.len();
        self.images
            .iter()
            .all(|i| i.len() == first)
            .then_some(first)
    }

    pub fn apply(&self, word: &[usize]) -> Vec<usize> {
        word.iter()
            .flat_map(|&c| self.images[c].iter().copied())
            .collect()
    }

    /// `self^n(word)`; requires an endomorphism when `n > 1`.
    pub fn iterate(&self, word: &[usize], n: usize) -> Vec<usize> {
        (0..n).fold(word.to_vec(), |w, _| self.apply(&w))
    }

    /// Names of the letters of a codomain word.
    pub fn spell(&self, word: &[usize]) -> Vec<&str> {
        word.iter().map(|&c| self.codomain[c].as_str()).collect()
    }

    /// Parses space-separated domain letter names.
    pub fn word(&self, text: &str) -> Result<Vec<usize>, MorphismError> {
        text.split_whitespace()
            .map(|l| index_in(&self.domain, l))
            .collect()
    }

    /// Letters whose iterated images eventually vanish.
    pub fn mortal_letters(&self) -> Vec<bool> {
        let mut mortal = vec![false; self.domain.len()];
        loop {
            let mut changed = false;
            for (a, img) in self.images.iter().enumerate() {
                if !mortal[a] && img.iter().all(|&c| mortal[c]) {
                    mortal[a] = true;
                    changed = true;
                }
            }
            if !changed {
                return mortal;
            }
        }
    }

    /// `f(seed) = seed w` where `w` contains a letter that never dies.
    pub fn is_prolongable_on(&self, seed: usize) -> bool {
        if !self.is_endomorphism() || seed >= self.images.len() {
            return false;
        }
        let img = &self.images[seed];
        let mortal = self.mortal_letters();
        img.first() == Some(&seed) && img[1..].iter().any(|&c| !mortal[c])
    }

    /// Streams `f^omega(seed)`.
    pub fn fixed_point(&self, seed: usize) -> Result<FixedPoint<'_>, MorphismError> {
        if !self.is_prolongable_on(seed) {
            return Err(MorphismError::NotProlongable(
                self.domain
                    .get(seed)
                    .cloned()
                    .unwrap_or_else(|| seed.to_string()),
            ));
        }
        Ok(FixedPoint::new(self, seed))
    }

    pub fn fixed_point_prefix(&self, seed: usize, n: usize) -> Result<Vec<usize>, MorphismError> {
        Ok(self.fixed_point(seed)?.take(n).collect())
    }

    /// Incidence matrix: entry `(a, b)` counts `a` in the image of `b`.
    pub fn incidence_matrix(&self) -> IncidenceMatrix {
        let mut m = vec![vec![0u64; self.domain.len()]; self.codomain.len()];
        for (b, img) in self.images.iter().enumerate() {
            for &a in img {
                m[a][b] += 1;
            }
        }
        IncidenceMatrix::new(m)
    }

    /// Restriction to the domain letters in `keep`, deleting every codomain
    /// letter in `erase` from the images. Letters keep their names.
    fn restrict(&self, keep: &[usize], erase: &[bool], endo: bool) -> Morphism {
        let codomain_keep: Vec<usize> = if endo {
            keep.to_vec()
        } else {
            (0..self.codomain.len()).collect()
        };
        let mut new_index = vec![usize::MAX; self.codomain.len()];
        for (i, &c) in codomain_keep.iter().enumerate() {
            new_index[c] = i;
        }
        Morphism {
            domain: keep.iter().map(|&a| self.domain[a].clone()).collect(),
            codomain: codomain_keep
                .iter()
                .map(|&c| self.codomain[c].clone())
                .collect(),
            images: keep
                .iter()
                .map(|&a| {
                    self.images[a]
                        .iter()
                        .filter(|&&c| !(endo && erase[c]))
                        .map(|&c| new_index[c])
                        .collect()
                })
                .collect(),
        }
    }
}

fn check_distinct(letters: &[String]) -> Result<(), MorphismError> {
    for (i, a) in letters.iter().enumerate() {
        if letters[..i].contains(a) {
            return Err(MorphismError::DuplicateLetter(a.clone()));
        }
    }
    Ok(())
}

fn index_in(letters: &[String], name: &str) -> Result<usize, MorphismError> {
    letters
        .iter()
        .position(|x| x == name)
        .ok_or_else(|| MorphismError::UnknownLetter(name.to_string()))
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text(None))
    }
}

/// Lazy generator of `f^omega(seed) = seed w f(w) f^2(w) ...` where
/// `f(seed) = seed w`. Memory grows with the current expansion depth only.
#[derive(Clone, Debug)]
pub struct FixedPoint<'a> {
    m: &'a Morphism,
    seed: usize,
    emitted_seed: bool,
    level: usize,
    /// Frames `(letters, position, remaining expansion depth)`.
    stack: Vec<(&'a [usize], usize, usize)>,
}

impl<'a> FixedPoint<'a> {
    fn new(m: &'a Morphism, seed: usize) -> Self {
        Self {
            m,
            seed,
            emitted_seed: false,
            level: 0,
            stack: Vec::new(),
        }
    }
}

impl Iterator for FixedPoint<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if !self.emitted_seed {
            self.emitted_seed = true;
            return Some(self.seed);
        }
        loop {
            let Some(top) = self.stack.last_mut() else {
                let tail = &self.m.images[self.seed][1..];
                self.stack.push((tail, 0, self.level));
                self.level += 1;
                continue;
            };
            let (letters, pos, depth) = *top;
            if pos == letters.len() {
                self.stack.pop();
                continue;
            }
            top.1 += 1;
            let c = letters[pos];
            if depth == 0 {
                return Some(c);
            }
            self.stack.push((&self.m.images[c], 0, depth - 1));
        }
    }
}

/// Removes the letters in `erase` from `(f, g)`: the new morphism is `f`
/// with those letters deleted from every image, restricted to the remaining
/// letters, and the new coding is `g` restricted likewise.
pub fn remove_erasure(
    f: &Morphism,
    g: &Morphism,
    erase: &[usize],
) -> Result<(Morphism, Morphism), MorphismError> {
    if !f.is_endomorphism() {
        return Err(MorphismError::NotEndomorphism);
    }
    if g.domain != f.domain {
        return Err(MorphismError::BadErasure(
            "coding must share the morphism's alphabet".into(),
        ));
    }
    let n = f.domain.len();
    let mut in_c = vec![false; n];
    for &c in erase {
        if c >= n {
            return Err(MorphismError::LetterOutOfRange(c));
        }
        in_c[c] = true;
    }
    for &c in erase {
        if !g.images[c].is_empty() {
            return Err(MorphismError::BadErasure(format!(
                "coding does not erase {:?}",
                f.domain[c]
            )));
        }
        if f.images[c].iter().any(|&x| !in_c[x]) {
            return Err(MorphismError::BadErasure(format!(
                "image of {:?} leaves the erased set",
                f.domain[c]
            )));
        }
    }
    let keep: Vec<usize> = (0..n).filter(|&a| !in_c[a]).collect();
    Ok((
        f.restrict(&keep, &in_c, true),
        g.restrict(&keep, &in_c, false),
    ))
}

/// Turns `(f, g, seed)` with `f(seed) = seed a` and `g(seed)` empty into a
/// presentation without `seed`, prolongable on `a` via `f'(a) = a f(a)`.
pub fn trim_to_prolongable(
    f: &Morphism,
    g: &Morphism,
    seed: usize,
) -> Result<(Morphism, Morphism, usize), MorphismError> {
    let fail = |msg: String| Err(MorphismError::TrimInapplicable(msg));
    if !f.is_endomorphism() {
        return Err(MorphismError::NotEndomorphism);
    }
    if seed >= f.domain.len() {
        return Err(MorphismError::LetterOutOfRange(seed));
    }
    if g.domain != f.domain {
        return fail("coding must share the morphism's alphabet".into());
    }
    if !g.images[seed].is_empty() {
        return fail(format!(
            "coding does not erase the seed {:?}",
            f.domain[seed]
        ));
    }
    let img = &f.images[seed];
    if img.len() != 2 || img[0] != seed || img[1] == seed {
        return fail("image of the seed must be the seed followed by one other letter".into());
    }
    let a = img[1];
    // Letters reachable from f(a), which must avoid both a and the seed so
    // that the new image of a does not disturb the rest of the word.
    let n = f.domain.len();
    let mut reach = vec![false; n];
    let mut todo: Vec<usize> = f.images[a].clone();
    while let Some(c) = todo.pop() {
        if !reach[c] {
            reach[c] = true;
            todo.extend(&f.images[c]);
        }
    }
    if reach[a] || reach[seed] {
        return fail(format!(
            "{:?} recurs in its own iterated images",
            f.domain[a]
        ));
    }
    if (0..n).any(|b| b != seed && f.images[b].contains(&seed)) {
        return fail("seed occurs in the image of another letter".into());
    }
    let keep: Vec<usize> = (0..n).filter(|&b| b != seed).collect();
    let none = vec![false; n];
    let mut f2 = f.restrict(&keep, &none, true);
    let g2 = g.restrict(&keep, &none, false);
    let a2 = keep.iter().position(|&b| b == a).expect("a is kept");
    let mut new_img = vec![a2];
    new_img.extend_from_slice(&f2.images[a2]);
    f2.images[a2] = new_img;
    Ok((f2, g2, a2))
}

/// Morphic presentation `(f, g, z)` of the sequence `n -> m(rep(n))` in the
/// numeration system whose representations are the words accepted by `lang`
/// (most significant digit first, genealogical order).
///
/// Letters are `z` and the reachable states of `lang x m`; `f(z) = z q0`,
/// `f(q)` lists the successors of `q` by increasing digit, and `g` erases
/// `z` and every state whose `lang` component rejects, sending the others
/// to their output.
pub fn numeration_presentation<O: fmt::Display + Clone>(
    lang: &Dfa,
    m: &Dfao<O>,
) -> Result<(Morphism, Morphism), MorphismError> {
    let prod = lang
        .product(m)
        .map_err(|e| MorphismError::Unsupported(e.to_string(), String::new()))?;
    let mut digits: Vec<usize> = (0..prod.alphabet().len()).collect();
    digits.sort_by_key(|&j| prod.alphabet()[j]);
    let n = prod.len();
    let mut seed = String::from("z");
    while prod.state_names().contains(&seed) {
        seed.push('\'');
    }
    let mut domain = vec![seed];
    domain.extend(prod.state_names().iter().cloned());
    let mut images = vec![vec![0, 1 + prod.initial()]];
    for q in 0..n {
        images.push(digits.iter().map(|&j| 1 + prod.target(q, j)).collect());
    }
    let f = Morphism::new(domain.clone(), domain.clone(), images)?;
    let mut codomain: Vec<String> = Vec::new();
    let mut coding = vec![Vec::new()];
    for (accept, out) in prod.outputs() {
        if *accept {
            let name = out.to_string();
            let idx = codomain.iter().position(|c| *c == name).unwrap_or_else(|| {
                codomain.push(name);
                codomain.len() - 1
            });
            coding.push(vec![idx]);
        } else {
            coding.push(Vec::new());
        }
    }
    let g = Morphism::new(domain, codomain, coding)?;
    Ok((f, g))
}

/// Letter bijection `pi` (as `pi[letter of f1] = letter of f2`) with
/// `f2 . pi = pi . f1`, `g2 . pi = g1` (on codomain names) and
/// `pi(seed1) = seed2`, found by backtracking.
pub fn equivalent_up_to_renaming(
    f1: &Morphism,
    g1: &Morphism,
    seed1: usize,
    f2: &Morphism,
    g2: &Morphism,
    seed2: usize,
) -> Option<Vec<usize>> {
    let n = f1.domain.len();
    if n != f2.domain.len() || g1.domain.len() != n || g2.domain.len() != n {
        return None;
    }
    let coding_of = |g: &Morphism, a: usize| -> Vec<String> {
        g.images[a].iter().map(|&c| g.codomain[c].clone()).collect()
    };
    let compatible = |a: usize, b: usize| {
        f1.images[a].len() == f2.images[b].len() && coding_of(g1, a) == coding_of(g2, b)
    };
    let mut pi = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if !compatible(seed1, seed2) {
        return None;
    }
    pi[seed1] = seed2;
    used[seed2] = true;
    let order: Vec<usize> = (0..n).filter(|&a| a != seed1).collect();

    fn consistent(f1: &Morphism, f2: &Morphism, pi: &[usize], a: usize) -> bool {
        let img1 = &f1.images[a];
        let img2 = &f2.images[pi[a]];
        img1.iter()
            .zip(img2)
            .all(|(&x, &y)| pi[x] == usize::MAX || pi[x] == y)
    }

    #[allow(clippy::too_many_arguments)]
    fn search(
        k: usize,
        order: &[usize],
        pi: &mut Vec<usize>,
        used: &mut Vec<bool>,
        f1: &Morphism,
        f2: &Morphism,
        compatible: &dyn Fn(usize, usize) -> bool,
    ) -> bool {
        let assigned_ok = |pi: &[usize]| {
            (0..pi.len())
                .filter(|&a| pi[a] != usize::MAX)
                .all(|a| consistent(f1, f2, pi, a))
        };
        if k == order.len() {
            return assigned_ok(pi);
        }
        let a = order[k];
        for b in 0..pi.len() {
            if used[b] || !compatible(a, b) {
                continue;
            }
            pi[a] = b;
            used[b] = true;
            if assigned_ok(pi) && search(k + 1, order, pi, used, f1, f2, compatible) {
                return true;
            }
            pi[a] = usize::MAX;
            used[b] = false;
        }
        false
    }

    search(0, &order, &mut pi, &mut used, f1, f2, &compatible).then_some(pi)
}

/// Lengths of the first `n` maximal blocks of equal letters. A block only
/// counts once a different letter follows it.
pub fn run_lengths<T: PartialEq>(
    stream: impl IntoIterator<Item = T>,
    n: usize,
) -> Result<Vec<u64>, MorphismError> {
    let mut out = Vec::with_capacity(n);
    if n == 0 {
        return Ok(out);
    }
    let mut iter = stream.into_iter();
    let Some(mut current) = iter.next() else {
        return Err(MorphismError::InsufficientStream(n));
    };
    let mut len = 1u64;
    for x in iter {
        if x == current {
            len += 1;
        } else {
            out.push(len);
            if out.len() == n {
                return Ok(out);
            }
            current = x;
            len = 1;
        }
    }
    Err(MorphismError::InsufficientStream(n))
}

/// Searches for a period `<= max_period` with preperiod `<= max_preperiod`
/// that holds on the whole prefix. Returns the smallest such period and its
/// shortest preperiod. The prefix must have length at least
/// `4 (max_period + max_preperiod)`, so a positive answer is not an artefact
/// of a short prefix; a negative answer only means no small period exists.
pub fn small_period<T: PartialEq>(
    prefix: &[T],
    max_period: usize,
    max_preperiod: usize,
) -> Result<Option<(usize, usize)>, MorphismError> {
    let required = 4 * (max_period + max_preperiod);
    if prefix.len() < required {
        return Err(MorphismError::PrefixTooShort {
            len: prefix.len(),
            period: max_period,
            preperiod: max_preperiod,
            required,
        });
    }
    for period in 1..=max_period {
        let last_break = (0..prefix.len() - period)
            .rev()
            .find(|&i| prefix[i] != prefix[i + period]);
        let preperiod = last_break.map_or(0, |i| i + 1);
        if preperiod <= max_preperiod {
            return Ok(Some((preperiod, period)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pd() -> Morphism {
        Morphism::from_rules(&[("0", &["0", "1"]), ("1", &["0", "0"])]).unwrap()
    }

    fn thue_morse() -> Morphism {
        Morphism::from_rules(&[("0", &["0", "1"]), ("1", &["1", "0"])]).unwrap()
    }

    #[test]
    fn fixed_point_prefixes() {
        let h = pd();
        let w: String = h
            .fixed_point_prefix(0, 21)
            .unwrap()
            .iter()
            .map(|&c| h.domain[c].clone())
            .collect();
        assert_eq!(w, "010001010100010001000");

        let f = Morphism::from_rules(&[("1", &["1", "2", "1"]), ("2", &["1", "2", "2", "2", "1"])])
            .unwrap();
        let w: Vec<&str> = f.spell(&f.fixed_point_prefix(0, 8).unwrap());
        assert_eq!(w, ["1", "2", "1", "1", "2", "2", "2", "1"]);

        let m = Morphism::from_rules(&[("a", &["a", "b"]), ("b", &["b"])]).unwrap();
        assert_eq!(
            m.spell(&m.fixed_point_prefix(0, 4).unwrap()),
            ["a", "b", "b", "b"]
        );
        assert!(m.fixed_point(1).is_err());
    }

    #[test]
    fn fixed_point_matches_iteration() {
        let f = Morphism::from_rules(&[("a", &["a", "b", "c"]), ("b", &[]), ("c", &["c", "a"])])
            .unwrap();
        let full = f.iterate(&[0], 12);
        let streamed = f.fixed_point_prefix(0, 500).unwrap();
        assert_eq!(&full[..500], &streamed[..]);
    }

    #[test]
    fn mortal_seed_tail_is_not_prolongable() {
        let f = Morphism::from_rules(&[("a", &["a", "b"]), ("b", &[])]).unwrap();
        assert!(!f.is_prolongable_on(0));
    }

    #[test]
    fn parse_and_render() {
        let (m, seed) =
            Morphism::parse("seed: a\n# comment\na -> a b\nb -> c\nc -> c e\ne ->\n").unwrap();
        assert!(m.is_endomorphism());
        assert_eq!(seed, Some(0));
        assert!(!m.is_non_erasing());
        assert_eq!(
            m.to_text(seed),
            "seed: a\na -> a b\nb -> c\nc -> c e\ne ->\n"
        );
        let (g, _) = Morphism::parse("a -> 0\nb -> 1 0\n").unwrap();
        assert_eq!(g.codomain(), ["0", "1"]);
        assert!(Morphism::parse("a b -> c").is_err());
        assert!(Morphism::parse("a -> a\na -> a").is_err());
    }

    #[test]
    fn incidence_counts() {
        let f = Morphism::from_rules(&[("1", &["1", "2", "1"]), ("2", &["1", "2", "2", "2", "1"])])
            .unwrap();
        assert_eq!(f.incidence_matrix().entries(), &[vec![2, 2], vec![1, 3]]);
    }

    #[test]
    fn erasure_and_trimming() {
        let f = Morphism::from_rules(&[
            ("z", &["z", "x"]),
            ("x", &["y", "e"]),
            ("y", &["y", "x"]),
            ("e", &["e"]),
        ])
        .unwrap();
        let g = Morphism::coding(
            &["z", "x", "y", "e"],
            &["0", "1"],
            &[("z", &[]), ("x", &["0"]), ("y", &["1"]), ("e", &[])],
        )
        .unwrap();
        let (fe, ge) = remove_erasure(&f, &g, &[3]).unwrap();
        assert_eq!(fe.domain(), ["z", "x", "y"]);
        assert_eq!(fe.spell(fe.image(1)), ["y"]);
        let (unchanged, _) = remove_erasure(&f, &g, &[]).unwrap();
        assert_eq!(unchanged, f);
        assert!(remove_erasure(&f, &g, &[1]).is_err());

        let original: Vec<usize> = f
            .fixed_point(0)
            .unwrap()
            .take(300)
            .flat_map(|c| g.image(c).to_vec())
            .collect();
        let erased: Vec<usize> = fe
            .fixed_point(0)
            .unwrap()
            .take(300)
            .flat_map(|c| ge.image(c).to_vec())
            .collect();
        let n = original.len().min(erased.len());
        assert_eq!(original[..n], erased[..n]);

        // x recurs through y -> y x, so trimming must refuse.
        assert!(trim_to_prolongable(&fe, &ge, 0).is_err());
        assert!(trim_to_prolongable(&fe, &ge, 1).is_err());
    }

    #[test]
    fn renaming() {
        let h = pd();
        let id =
            Morphism::coding(&["0", "1"], &["0", "1"], &[("0", &["0"]), ("1", &["1"])]).unwrap();
        assert_eq!(
            equivalent_up_to_renaming(&h, &id, 0, &h, &id, 0),
            Some(vec![0, 1])
        );
        assert_eq!(
            equivalent_up_to_renaming(&h, &id, 0, &thue_morse(), &id, 0),
            None
        );
        let swapped = Morphism::from_rules(&[("1", &["1", "0"]), ("0", &["1", "1"])]).unwrap();
        let g_sw =
            Morphism::coding(&["1", "0"], &["0", "1"], &[("1", &["0"]), ("0", &["1"])]).unwrap();
        assert_eq!(
            equivalent_up_to_renaming(&h, &id, 0, &swapped, &g_sw, 0),
            Some(vec![0, 1])
        );
    }

    #[test]
    fn run_length_examples() {
        let w = [0, 1, 1, 0, 0, 0, 1, 1, 1, 1, 0];
        assert_eq!(run_lengths(w, 4).unwrap(), vec![1, 2, 3, 4]);
        assert_eq!(
            run_lengths([1, 1, 1], 1),
            Err(MorphismError::InsufficientStream(1))
        );
        let t = thue_morse().fixed_point_prefix(0, 64).unwrap();
        assert_eq!(run_lengths(t, 8).unwrap(), vec![1, 2, 1, 1, 2, 2, 2, 1]);
    }

    #[test]
    fn periodicity() {
        let w: Vec<u8> = (0..100)
            .map(|i| if i < 7 { 9 } else { (i % 3) as u8 })
            .collect();
        assert_eq!(small_period(&w, 5, 10).unwrap(), Some((7, 3)));
        let h = pd();
        let d = h.fixed_point_prefix(0, 4 * 64).unwrap();
        assert_eq!(small_period(&d, 32, 32).unwrap(), None);
        assert!(small_period(&d, 64, 64).is_err());
    }

    proptest! {
        #[test]
        fn homomorphism_property(
            w in proptest::collection::vec(0usize..2, 0..50),
            split in 0usize..50,
        ) {
            for m in [pd(), thue_morse()] {
                let s = split.min(w.len());
                let (u, v) = w.split_at(s);
                let mut joined = m.apply(u);
                joined.extend(m.apply(v));
                prop_assert_eq!(m.apply(&w), joined);
            }
        }
    }
}
