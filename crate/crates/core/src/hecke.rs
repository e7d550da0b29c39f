//! Iwahori–Hecke algebra Hₙ(q) and the Ocneanu trace.
//!
//! Elements are stored on the permutation basis {T_w}: a map from
//! permutations to scalar coefficients. Products are built by repeated
//! right multiplication with a generator gᵢ, using
//!
//!   T_w gᵢ = T_{wsᵢ}                      if ℓ(wsᵢ) > ℓ(w),
//!   T_w gᵢ = (q−1) T_w + q T_{wsᵢ}        otherwise,
//!
//! and gᵢ⁻¹ = q⁻¹ gᵢ + (q⁻¹ − 1). The trace trₙ is the unique family with
//! tr₁(1) = 1, trₙ₊₁(a) = trₙ(a) and trₙ₊₁(a gₙ b) = z·trₙ(ab) for
//! a, b ∈ Hₙ; it is evaluated by peeling the top strand off one coset
//! representative at a time, with a global memo keyed by the permutation.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use crate::braid::{Letter, PseudoWord};
use crate::coeff::{ExtScalar, RationalFn, Var};

/// A permutation of {1,…,n} in one-line notation. Internally the images
/// are 0-based; `Display` shows the 1-based form `[2,1,3]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<u8>,
}

/// Errors from Hecke-algebra construction.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HeckeError {
    #[error("generator index {index} out of range for H_{n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("word contains a pseudo letter; resolve it before mapping into the algebra")]
    PseudoLetterPresent,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n as u8).collect(),
        }
    }

    /// Build from 0-based images; panics unless they form a permutation.
    pub fn from_images(images: Vec<u8>) -> Self {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            assert!((v as usize) < n && !seen[v as usize], "not a permutation");
            seen[v as usize] = true;
        }
        Permutation { images }
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    /// Right multiplication by the adjacent transposition sᵢ (1-based i):
    /// swaps the images at positions i−1 and i.
    pub fn right_mul_adjacent(&self, i: usize) -> Permutation {
        assert!(i >= 1 && i < self.size(), "transposition out of range");
        let mut images = self.images.clone();
        images.swap(i - 1, i);
        Permutation { images }
    }

    /// Coxeter length = number of inversions.
    pub fn inversions(&self) -> usize {
        let mut count = 0;
        for a in 0..self.images.len() {
            for b in a + 1..self.images.len() {
                if self.images[a] > self.images[b] {
                    count += 1;
                }
            }
        }
        count
    }

    /// ℓ(w·sᵢ) > ℓ(w) exactly when the images at positions i−1, i ascend.
    fn ascends_at(&self, i: usize) -> bool {
        self.images[i - 1] < self.images[i]
    }

    pub fn fixes_last(&self) -> bool {
        match self.images.last() {
            Some(&v) => v as usize == self.size() - 1,
            None => true,
        }
    }

    /// Drop the last point, which must be fixed.
    pub fn restrict(&self) -> Permutation {
        assert!(self.fixes_last(), "last point is not fixed");
        Permutation {
            images: self.images[..self.size() - 1].to_vec(),
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, v) in self.images.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", v + 1)?;
        }
        write!(f, "]")
    }
}

/// An element of Hₙ(q) on the permutation basis. Zero coefficients are
/// never stored, so structural equality of the maps (with the scalar
/// field's own equality) decides equality of elements.
#[derive(Clone, Debug, PartialEq)]
pub struct HeckeElement {
    n: usize,
    terms: BTreeMap<Permutation, ExtScalar>,
}

impl HeckeElement {
    pub fn zero(n: usize) -> Self {
        HeckeElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::basis(n, Permutation::identity(n))
    }

    /// The basis element T_w.
    pub fn basis(n: usize, w: Permutation) -> Self {
        assert_eq!(w.size(), n, "permutation size must match the algebra");
        let mut terms = BTreeMap::new();
        terms.insert(w, ExtScalar::one());
        HeckeElement { n, terms }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &ExtScalar)> {
        self.terms.iter()
    }

    fn accumulate(&mut self, w: Permutation, c: ExtScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&w) {
            None => {
                self.terms.insert(w, c);
            }
            Some(old) => {
                let sum = &old + &c;
                if !sum.is_zero() {
                    self.terms.insert(w, sum);
                }
            }
        }
    }

    pub fn add(&self, other: &HeckeElement) -> HeckeElement {
        assert_eq!(self.n, other.n, "algebra sizes differ");
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.accumulate(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, s: &ExtScalar) -> HeckeElement {
        if s.is_zero() {
            return HeckeElement::zero(self.n);
        }
        HeckeElement {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c * s))
                .collect(),
        }
    }

    /// Right-multiply by gᵢ (or gᵢ⁻¹ when `inverse`), 1 ≤ i ≤ n−1.
    pub fn right_mul_gen(&self, i: usize, inverse: bool) -> Result<HeckeElement, HeckeError> {
        if i < 1 || i >= self.n {
            return Err(HeckeError::IndexOutOfRange { index: i, n: self.n });
        }
        let q = ExtScalar::variable(Var::Q);
        let q_minus_one = &q - &ExtScalar::one();
        let mut by_gen = HeckeElement::zero(self.n);
        for (w, c) in &self.terms {
            let ws = w.right_mul_adjacent(i);
            if w.ascends_at(i) {
                by_gen.accumulate(ws, c.clone());
            } else {
                by_gen.accumulate(w.clone(), c * &q_minus_one);
                by_gen.accumulate(ws, c * &q);
            }
        }
        if !inverse {
            return Ok(by_gen);
        }
        // gᵢ⁻¹ = q⁻¹ gᵢ + (q⁻¹ − 1)
        let q_inv = ExtScalar::from_ratfn(RationalFn::variable(Var::Q).inverse().expect("q ≠ 0"));
        let q_inv_minus_one = &q_inv - &ExtScalar::one();
        Ok(by_gen.scale(&q_inv).add(&self.scale(&q_inv_minus_one)))
    }

    /// Right-multiply by the image of a whole classical word.
    pub fn right_mul_word(&self, word: &PseudoWord) -> Result<HeckeElement, HeckeError> {
        let mut out = self.clone();
        for &l in word.letters() {
            out = match l {
                Letter::Sigma(i) => out.right_mul_gen(i, false)?,
                Letter::SigmaInv(i) => out.right_mul_gen(i, true)?,
                Letter::Pseudo(_) => return Err(HeckeError::PseudoLetterPresent),
            };
        }
        Ok(out)
    }
}

impl fmt::Display for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "T{w}")?;
            } else {
                write!(f, "({c})*T{w}")?;
            }
        }
        Ok(())
    }
}

/// π: the multiplicative map sending σᵢ ↦ gᵢ, σᵢ⁻¹ ↦ gᵢ⁻¹. Pseudo letters
/// are rejected.
pub fn word_to_element(word: &PseudoWord) -> Result<HeckeElement, HeckeError> {
    HeckeElement::one(word.strands()).right_mul_word(word)
}

/// Split w ∈ Sₙ as w = v·(sₙ₋₁ sₙ₋₂ … sⱼ) with v fixing the last point.
/// Returns v and the descending run of generator indices (empty when w
/// already fixes the last point).
pub fn coset_decompose(w: &Permutation) -> (Permutation, Vec<usize>) {
    let n = w.size();
    let k = w
        .images()
        .iter()
        .position(|&v| v as usize == n - 1)
        .expect("permutation contains its maximum");
    if k == n - 1 {
        return (w.clone(), Vec::new());
    }
    // undo the run: v = w · s_{k+1} · s_{k+2} · … · s_{n−1}
    let mut v = w.clone();
    for i in k + 1..n {
        v = v.right_mul_adjacent(i);
    }
    let tail = (k + 1..n).rev().collect();
    (v, tail)
}

static TRACE_MEMO: OnceLock<Mutex<HashMap<Vec<u8>, ExtScalar>>> = OnceLock::new();

fn basis_trace(w: &Permutation) -> ExtScalar {
    let memo = TRACE_MEMO.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = memo.lock().unwrap().get(w.images()) {
        return hit.clone();
    }

    let n = w.size();
    let value = if n <= 1 {
        ExtScalar::one()
    } else {
        let (v, tail) = coset_decompose(w);
        if tail.is_empty() {
            basis_trace(&v.restrict())
        } else {
            // trₙ(T_v gₙ₋₁ gₙ₋₂ … gⱼ) = z · trₙ₋₁(T_v gₙ₋₂ … gⱼ)
            let mut rest = HeckeElement::basis(n - 1, v.restrict());
            for &i in &tail[1..] {
                rest = rest.right_mul_gen(i, false).expect("tail index in range");
            }
            &ExtScalar::variable(Var::Z) * &ocneanu_trace(&rest)
        }
    };

    memo.lock()
        .unwrap()
        .insert(w.images().to_vec(), value.clone());
    value
}

/// The Ocneanu trace trₙ: Hₙ(q) → scalars, extended linearly from the
/// basis values.
pub fn ocneanu_trace(elem: &HeckeElement) -> ExtScalar {
    let mut total = ExtScalar::zero();
    for (w, c) in elem.terms() {
        total = &total + &(c * &basis_trace(w));
    }
    total
}
