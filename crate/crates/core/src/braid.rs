//! Pseudo braid words over the monoid PMₙ.
//!
//! A word is a strand count together with a sequence of letters σᵢ, σᵢ⁻¹,
//! pᵢ. The module provides the text grammar (`"1 -2 p1"`), the degree
//! statistics e(α) and d(α), the defining relations of PMₙ as checked
//! rewrite steps, the Markov moves, and seeded random word generation.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A single generator occurrence: σᵢ, σᵢ⁻¹, or the pseudo generator pᵢ.
/// Indices are 1-based and must satisfy `1 ≤ i ≤ strands − 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    Sigma(usize),
    SigmaInv(usize),
    Pseudo(usize),
}

impl Letter {
    pub fn index(self) -> usize {
        match self {
            Letter::Sigma(i) | Letter::SigmaInv(i) | Letter::Pseudo(i) => i,
        }
    }

    /// Contribution to the exponent sum e(α).
    pub fn sign(self) -> i64 {
        match self {
            Letter::Sigma(_) => 1,
            Letter::SigmaInv(_) => -1,
            Letter::Pseudo(_) => 0,
        }
    }

    pub fn is_pseudo(self) -> bool {
        matches!(self, Letter::Pseudo(_))
    }

    pub fn is_classical(self) -> bool {
        !self.is_pseudo()
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Sigma(i) => write!(f, "{i}"),
            Letter::SigmaInv(i) => write!(f, "-{i}"),
            Letter::Pseudo(i) => write!(f, "p{i}"),
        }
    }
}

/// A pseudo braid word: a strand count n ≥ 1 and a letter sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PseudoWord {
    strands: usize,
    letters: Vec<Letter>,
}

/// Errors from parsing, rewriting, and Markov moves.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WordError {
    #[error("malformed token `{token}`")]
    Parse { token: String },
    #[error("generator index 0 in token `{token}`")]
    ZeroIndex { token: String },
    #[error("generator index {index} needs at least {} strands, word has {strands}", index + 1)]
    IndexOutOfRange { index: usize, strands: usize },
    #[error("relation {rule:?} does not match at position {position}")]
    NoMatch {
        rule: RelationRule,
        position: usize,
    },
    #[error("conjugating word must be classical")]
    IllegalConjugator,
    #[error("illegal destabilization: {0}")]
    IllegalDestab(&'static str),
}

impl PseudoWord {
    /// Build a word, validating every letter index against the strand count.
    pub fn new(strands: usize, letters: Vec<Letter>) -> Result<Self, WordError> {
        assert!(strands >= 1, "strand count must be at least 1");
        for l in &letters {
            if l.index() >= strands {
                return Err(WordError::IndexOutOfRange {
                    index: l.index(),
                    strands,
                });
            }
        }
        Ok(PseudoWord { strands, letters })
    }

    pub fn empty(strands: usize) -> Self {
        PseudoWord::new(strands, Vec::new()).expect("empty word")
    }

    /// Parse the whitespace token grammar: a nonzero signed integer `k` is
    /// σ_{|k|}^{sign k}, `pK` is the pseudo generator p_K. Without an
    /// explicit strand count, n = 1 + max index (n = 1 for the empty word).
    pub fn parse(text: &str, strands: Option<usize>) -> Result<Self, WordError> {
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            let letter = if let Some(rest) = token.strip_prefix('p') {
                match rest.parse::<usize>() {
                    Ok(0) => {
                        return Err(WordError::ZeroIndex {
                            token: token.into(),
                        })
                    }
                    Ok(i) => Letter::Pseudo(i),
                    Err(_) => {
                        return Err(WordError::Parse {
                            token: token.into(),
                        })
                    }
                }
            } else {
                match token.parse::<i64>() {
                    Ok(0) => {
                        return Err(WordError::ZeroIndex {
                            token: token.into(),
                        })
                    }
                    Ok(k) if k > 0 => Letter::Sigma(k as usize),
                    Ok(k) => Letter::SigmaInv((-k) as usize),
                    Err(_) => {
                        return Err(WordError::Parse {
                            token: token.into(),
                        })
                    }
                }
            };
            letters.push(letter);
        }
        let n = match strands {
            Some(n) => n,
            None => 1 + letters.iter().map(|l| l.index()).max().unwrap_or(0),
        };
        PseudoWord::new(n, letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Exponent sum of the classical letters.
    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.sign()).sum()
    }

    /// Number of pseudo letters.
    pub fn pseudo_degree(&self) -> usize {
        self.letters.iter().filter(|l| l.is_pseudo()).count()
    }

    /// `(e(α), d(α))`, always recomputed from the letters.
    pub fn degree_stats(&self) -> (i64, usize) {
        (self.exponent_sum(), self.pseudo_degree())
    }

    pub fn is_classical(&self) -> bool {
        self.pseudo_degree() == 0
    }

    /// Concatenation on a common strand count.
    pub fn concat(&self, other: &PseudoWord) -> PseudoWord {
        assert_eq!(self.strands, other.strands, "strand counts differ");
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        PseudoWord {
            strands: self.strands,
            letters,
        }
    }

    /// Copy of the word with one letter replaced.
    pub fn with_letter(&self, position: usize, letter: Letter) -> Result<PseudoWord, WordError> {
        let mut letters = self.letters.clone();
        letters[position] = letter;
        PseudoWord::new(self.strands, letters)
    }

    /// Copy of the word with a letter inserted at `position`.
    pub fn with_insertion(
        &self,
        position: usize,
        letter: Letter,
    ) -> Result<PseudoWord, WordError> {
        let mut letters = self.letters.clone();
        letters.insert(position, letter);
        PseudoWord::new(self.strands, letters)
    }

    /// The same letters viewed on a larger strand count.
    pub fn embed(&self, strands: usize) -> PseudoWord {
        assert!(strands >= self.strands);
        PseudoWord {
            strands,
            letters: self.letters.clone(),
        }
    }
}

impl fmt::Display for PseudoWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// The defining relations of PMₙ, plus free cancellation of inverse pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelationRule {
    /// σᵢ^a σⱼ^b = σⱼ^b σᵢ^a for |i−j| ≥ 2
    BraidComm,
    /// σᵢ^ε σᵢ₊₁^ε σᵢ^ε = σᵢ₊₁^ε σᵢ^ε σᵢ₊₁^ε
    BraidYangBaxter,
    /// pᵢ pⱼ = pⱼ pᵢ for |i−j| ≥ 2
    PpComm,
    /// pᵢ σⱼ^± = σⱼ^± pᵢ for |i−j| ≥ 2
    PsFarComm,
    /// pᵢ σᵢ^± = σᵢ^± pᵢ
    PsAdjacentComm,
    /// σᵢ σᵢ₊₁ pᵢ = pᵢ₊₁ σᵢ σᵢ₊₁
    MixedLeft,
    /// σᵢ₊₁ σᵢ pᵢ₊₁ = pᵢ σᵢ₊₁ σᵢ
    MixedRight,
    /// σᵢ^ε σᵢ^{−ε} = ∅
    FreeInverse,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

/// One rewrite step: a rule applied at a position, in a direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RelationInstance {
    pub rule: RelationRule,
    pub position: usize,
    pub direction: Direction,
}

/// Apply a defining relation at a position. Fails with `NoMatch` when the
/// rule's pattern does not occur there. Backward free-inverse (inserting a
/// cancelling pair) is not supported, since the generator index cannot be
/// inferred from an empty match.
pub fn apply_relation(w: &PseudoWord, r: &RelationInstance) -> Result<PseudoWord, WordError> {
    let ls = &w.letters;
    let pos = r.position;
    let no_match = || WordError::NoMatch {
        rule: r.rule,
        position: pos,
    };
    let at = |k: usize| ls.get(pos + k).copied().ok_or_else(no_match);
    let replace = |span: usize, with: Vec<Letter>| {
        let mut letters = ls.clone();
        letters.splice(pos..pos + span, with);
        Ok(PseudoWord {
            strands: w.strands,
            letters,
        })
    };

    match r.rule {
        RelationRule::BraidComm => {
            let (a, b) = (at(0)?, at(1)?);
            if a.is_classical() && b.is_classical() && a.index().abs_diff(b.index()) >= 2 {
                replace(2, vec![b, a])
            } else {
                Err(no_match())
            }
        }
        RelationRule::PpComm => {
            let (a, b) = (at(0)?, at(1)?);
            if a.is_pseudo() && b.is_pseudo() && a.index().abs_diff(b.index()) >= 2 {
                replace(2, vec![b, a])
            } else {
                Err(no_match())
            }
        }
        RelationRule::PsFarComm | RelationRule::PsAdjacentComm => {
            let (a, b) = (at(0)?, at(1)?);
            // forward matches the pseudo letter first, backward the mirror
            let (p, s) = match r.direction {
                Direction::Forward => (a, b),
                Direction::Backward => (b, a),
            };
            let far = r.rule == RelationRule::PsFarComm;
            let index_ok = if far {
                p.index().abs_diff(s.index()) >= 2
            } else {
                p.index() == s.index()
            };
            if p.is_pseudo() && s.is_classical() && index_ok {
                replace(2, vec![b, a])
            } else {
                Err(no_match())
            }
        }
        RelationRule::BraidYangBaxter => {
            let (a, b, c) = (at(0)?, at(1)?, at(2)?);
            let same_kind = a == c
                && a.is_classical()
                && b.is_classical()
                && a.sign() == b.sign();
            let adjacency = match r.direction {
                Direction::Forward => b.index() == a.index() + 1,
                Direction::Backward => a.index() == b.index() + 1,
            };
            if same_kind && adjacency {
                replace(3, vec![b, a, b])
            } else {
                Err(no_match())
            }
        }
        RelationRule::MixedLeft => match (r.direction, at(0)?, at(1)?, at(2)?) {
            (Direction::Forward, Letter::Sigma(i), Letter::Sigma(j), Letter::Pseudo(k))
                if j == i + 1 && k == i =>
            {
                replace(
                    3,
                    vec![Letter::Pseudo(i + 1), Letter::Sigma(i), Letter::Sigma(i + 1)],
                )
            }
            (Direction::Backward, Letter::Pseudo(k), Letter::Sigma(i), Letter::Sigma(j))
                if j == i + 1 && k == i + 1 =>
            {
                replace(
                    3,
                    vec![Letter::Sigma(i), Letter::Sigma(i + 1), Letter::Pseudo(i)],
                )
            }
            _ => Err(no_match()),
        },
        RelationRule::MixedRight => match (r.direction, at(0)?, at(1)?, at(2)?) {
            (Direction::Forward, Letter::Sigma(j), Letter::Sigma(i), Letter::Pseudo(k))
                if j == i + 1 && k == i + 1 =>
            {
                replace(
                    3,
                    vec![Letter::Pseudo(i), Letter::Sigma(i + 1), Letter::Sigma(i)],
                )
            }
            (Direction::Backward, Letter::Pseudo(k), Letter::Sigma(j), Letter::Sigma(i))
                if j == i + 1 && k == i =>
            {
                replace(
                    3,
                    vec![Letter::Sigma(i + 1), Letter::Sigma(i), Letter::Pseudo(i + 1)],
                )
            }
            _ => Err(no_match()),
        },
        RelationRule::FreeInverse => {
            if r.direction == Direction::Backward {
                return Err(no_match());
            }
            let (a, b) = (at(0)?, at(1)?);
            let cancels = matches!(
                (a, b),
                (Letter::Sigma(i), Letter::SigmaInv(j)) | (Letter::SigmaInv(i), Letter::Sigma(j))
                    if i == j
            );
            if cancels {
                replace(2, vec![])
            } else {
                Err(no_match())
            }
        }
    }
}

/// Remove all cancelling σᵢ σᵢ⁻¹ / σᵢ⁻¹ σᵢ pairs until none remain.
pub fn free_reduce(w: &PseudoWord) -> PseudoWord {
    let mut stack: Vec<Letter> = Vec::with_capacity(w.letters.len());
    for &l in &w.letters {
        match (stack.last(), l) {
            (Some(&Letter::Sigma(i)), Letter::SigmaInv(j)) if i == j => {
                stack.pop();
            }
            (Some(&Letter::SigmaInv(i)), Letter::Sigma(j)) if i == j => {
                stack.pop();
            }
            _ => stack.push(l),
        }
    }
    PseudoWord {
        strands: w.strands,
        letters: stack,
    }
}

/// The pseudo Markov moves on braid words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MarkovMove {
    /// α ↦ β⁻¹αβ for a classical word β on the same strands.
    Conjugate(PseudoWord),
    /// Cyclic rotation at a split point: αβ ↦ βα.
    Commute(usize),
    /// α ↦ α σₙ on n+1 strands.
    StabPos,
    /// α ↦ α σₙ⁻¹ on n+1 strands.
    StabNeg,
    /// α ↦ α pₙ on n+1 strands.
    StabPseudo,
    /// Inverse of a stabilization, when syntactically legal.
    Destab,
}

impl fmt::Display for MarkovMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MarkovMove::Conjugate(beta) => write!(f, "conjugate by \"{beta}\""),
            MarkovMove::Commute(k) => write!(f, "commute at {k}"),
            MarkovMove::StabPos => write!(f, "positive stabilization"),
            MarkovMove::StabNeg => write!(f, "negative stabilization"),
            MarkovMove::StabPseudo => write!(f, "pseudo stabilization"),
            MarkovMove::Destab => write!(f, "destabilization"),
        }
    }
}

/// Invert a purely classical word (reverse order, flip signs).
fn invert_classical(letters: &[Letter]) -> Vec<Letter> {
    letters
        .iter()
        .rev()
        .map(|l| match l {
            Letter::Sigma(i) => Letter::SigmaInv(*i),
            Letter::SigmaInv(i) => Letter::Sigma(*i),
            Letter::Pseudo(_) => unreachable!("conjugator checked classical"),
        })
        .collect()
}

pub fn markov_move(w: &PseudoWord, mv: &MarkovMove) -> Result<PseudoWord, WordError> {
    match mv {
        MarkovMove::Conjugate(beta) => {
            if !beta.is_classical() {
                return Err(WordError::IllegalConjugator);
            }
            for l in beta.letters() {
                if l.index() >= w.strands {
                    return Err(WordError::IndexOutOfRange {
                        index: l.index(),
                        strands: w.strands,
                    });
                }
            }
            let mut letters = invert_classical(&beta.letters);
            letters.extend_from_slice(&w.letters);
            letters.extend_from_slice(&beta.letters);
            Ok(PseudoWord {
                strands: w.strands,
                letters,
            })
        }
        MarkovMove::Commute(split) => {
            if w.letters.is_empty() {
                return Ok(w.clone());
            }
            let k = split % w.letters.len();
            let mut letters = w.letters[k..].to_vec();
            letters.extend_from_slice(&w.letters[..k]);
            Ok(PseudoWord {
                strands: w.strands,
                letters,
            })
        }
        MarkovMove::StabPos | MarkovMove::StabNeg | MarkovMove::StabPseudo => {
            let n = w.strands;
            let new = match mv {
                MarkovMove::StabPos => Letter::Sigma(n),
                MarkovMove::StabNeg => Letter::SigmaInv(n),
                _ => Letter::Pseudo(n),
            };
            let mut letters = w.letters.clone();
            letters.push(new);
            Ok(PseudoWord {
                strands: n + 1,
                letters,
            })
        }
        MarkovMove::Destab => {
            if w.strands < 2 {
                return Err(WordError::IllegalDestab("word has a single strand"));
            }
            let top = w.strands - 1;
            let Some((last, rest)) = w.letters.split_last() else {
                return Err(WordError::IllegalDestab("empty word"));
            };
            if last.index() != top {
                return Err(WordError::IllegalDestab(
                    "last letter does not use the top strand pair",
                ));
            }
            if rest.iter().any(|l| l.index() == top) {
                return Err(WordError::IllegalDestab(
                    "top strand index occurs before the final letter",
                ));
            }
            Ok(PseudoWord {
                strands: top,
                letters: rest.to_vec(),
            })
        }
    }
}

/// Deterministic random word: `d(word) ≤ max_pseudo`, letters otherwise
/// uniform over the allowed alphabet. A single-strand monoid has no
/// generators, so the result is empty for n = 1.
pub fn random_word(strands: usize, len: usize, max_pseudo: usize, seed: u64) -> PseudoWord {
    assert!(strands >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut letters = Vec::with_capacity(len);
    if strands == 1 {
        return PseudoWord::empty(1);
    }
    let indices = strands - 1;
    let mut pseudo_used = 0usize;
    for _ in 0..len {
        let variants = if pseudo_used < max_pseudo {
            3 * indices
        } else {
            2 * indices
        };
        let pick = rng.gen_range(0..variants);
        let letter = match pick / indices {
            0 => Letter::Sigma(pick % indices + 1),
            1 => Letter::SigmaInv(pick % indices + 1),
            _ => {
                pseudo_used += 1;
                Letter::Pseudo(pick % indices + 1)
            }
        };
        letters.push(letter);
    }
    PseudoWord {
        strands,
        letters,
    }
}
