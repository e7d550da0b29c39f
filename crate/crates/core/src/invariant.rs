//! The pseudo-link invariant 𝒫 and everything around it.
//!
//! A pseudo letter pᵢ is resolved inside the Hecke algebra as
//! hᵢ = X·gᵢ + Y·gᵢ⁻¹; composing with the Ocneanu trace gives the induced
//! trace Tₙ, and
//!
//!   𝒫(α̂) = Aⁿ⁻¹ · B^{e(α)} · C^{d(α)} · Tₙ(α)
//!
//! is invariant under all pseudo Markov moves. The normalization constants
//! live in [`Constants`]. Two independent reformulations are implemented
//! alongside the direct pipeline: a state sum over all 2^d classical
//! resolutions ([`state_sum_p`]) and a recursive skein evaluation
//! ([`skein_evaluate`]); agreement of the three is part of the test
//! surface, not an assumption.

use std::sync::OnceLock;

use crate::braid::{Letter, PseudoWord, WordError};
use crate::coeff::{z_minus, ExtScalar, Var};
use crate::hecke::{ocneanu_trace, word_to_element, HeckeElement, HeckeError};

/// Errors from the invariant pipeline.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InvariantError {
    #[error(transparent)]
    Hecke(#[from] HeckeError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("2^{degree} resolution states exceed the cap of {cap}")]
    StateBudgetExceeded { degree: usize, cap: u64 },
    #[error("letter at position {position} is not a pseudo generator")]
    MarkNotPseudo { position: usize },
}

/// Default limit on the number of states the state sum may enumerate.
pub const DEFAULT_STATE_CAP: u64 = 1 << 16;

/// The normalization constants, satisfying exactly
///
///   A·B·z = 1,   A·B⁻¹·z₋ = 1,   A·C·(Xz + Yz₋) = 1,   B² = z₋/z,
///
/// with z₋ = q⁻¹z + q⁻¹ − 1, plus the skein weights λ₊ = XCB⁻¹ and
/// λ₋ = YCB.
pub struct Constants {
    pub b: ExtScalar,
    pub b_inv: ExtScalar,
    pub a: ExtScalar,
    pub c: ExtScalar,
    pub z_minus: ExtScalar,
    /// Xz + Yz₋, the factor a pseudo stabilization contributes to Tₙ.
    pub pseudo_weight: ExtScalar,
    pub lambda_plus: ExtScalar,
    pub lambda_minus: ExtScalar,
}

/// The shared, lazily built constant set.
pub fn constants() -> &'static Constants {
    static CELL: OnceLock<Constants> = OnceLock::new();
    CELL.get_or_init(|| {
        let b = ExtScalar::b();
        let b_inv = b.inverse().expect("B is invertible");
        let z = ExtScalar::variable(Var::Z);
        let x = ExtScalar::variable(Var::X);
        let y = ExtScalar::variable(Var::Y);
        let z_minus = ExtScalar::from_ratfn(z_minus());
        let a = (&b * &z).inverse().expect("Bz is invertible");
        let pseudo_weight = &(&x * &z) + &(&y * &z_minus);
        let c = (&a * &pseudo_weight)
            .inverse()
            .expect("A(Xz+Yz₋) is invertible");
        let lambda_plus = &(&x * &c) * &b_inv;
        let lambda_minus = &(&y * &c) * &b;
        Constants {
            b,
            b_inv,
            a,
            c,
            z_minus,
            pseudo_weight,
            lambda_plus,
            lambda_minus,
        }
    })
}

/// The resolution map: classical letters act as themselves, a pseudo
/// letter pᵢ acts by elem ↦ X·(elem·gᵢ) + Y·(elem·gᵢ⁻¹).
pub fn resolve(w: &PseudoWord) -> HeckeElement {
    let x = ExtScalar::variable(Var::X);
    let y = ExtScalar::variable(Var::Y);
    let mut e = HeckeElement::one(w.strands());
    for &l in w.letters() {
        e = match l {
            Letter::Sigma(i) => e.right_mul_gen(i, false),
            Letter::SigmaInv(i) => e.right_mul_gen(i, true),
            Letter::Pseudo(i) => {
                let plus = e.right_mul_gen(i, false).expect("index validated");
                let minus = e.right_mul_gen(i, true).expect("index validated");
                Ok(plus.scale(&x).add(&minus.scale(&y)))
            }
        }
        .expect("word indices validated at construction");
    }
    e
}

/// Outcome of checking the defining relations under [`resolve`].
#[derive(Debug, Clone)]
pub struct RhoReport {
    pub strands: usize,
    pub instances: usize,
    /// Human-readable "lhs vs rhs" descriptions of any failed relation.
    pub violations: Vec<String>,
}

impl RhoReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Every defining relation of the n-strand monoid, as word pairs over all
/// admissible index choices (both signs where a relation admits them),
/// including the free cancellations σᵢσᵢ⁻¹ = σᵢ⁻¹σᵢ = 1.
fn defining_relation_pairs(n: usize) -> Vec<(PseudoWord, PseudoWord)> {
    use Letter::{Pseudo, Sigma, SigmaInv};
    let word = |ls: Vec<Letter>| PseudoWord::new(n, ls).expect("indices in range");
    let sig = |i: usize, neg: bool| if neg { SigmaInv(i) } else { Sigma(i) };
    let signs = [false, true];
    let mut pairs = Vec::new();

    for i in 1..n {
        for j in i + 2..n {
            // far commutations: classical/classical, pseudo/pseudo, mixed
            for &si in &signs {
                for &sj in &signs {
                    pairs.push((
                        word(vec![sig(i, si), sig(j, sj)]),
                        word(vec![sig(j, sj), sig(i, si)]),
                    ));
                }
            }
            pairs.push((word(vec![Pseudo(i), Pseudo(j)]), word(vec![Pseudo(j), Pseudo(i)])));
            for &s in &signs {
                pairs.push((
                    word(vec![Pseudo(i), sig(j, s)]),
                    word(vec![sig(j, s), Pseudo(i)]),
                ));
                pairs.push((
                    word(vec![Pseudo(j), sig(i, s)]),
                    word(vec![sig(i, s), Pseudo(j)]),
                ));
            }
        }
        // pᵢ commutes with σᵢ^{±1}
        for &s in &signs {
            pairs.push((
                word(vec![Pseudo(i), sig(i, s)]),
                word(vec![sig(i, s), Pseudo(i)]),
            ));
        }
        // free cancellation
        pairs.push((word(vec![Sigma(i), SigmaInv(i)]), word(vec![])));
        pairs.push((word(vec![SigmaInv(i), Sigma(i)]), word(vec![])));
    }
    for i in 1..n.saturating_sub(1) {
        for &s in &signs {
            pairs.push((
                word(vec![sig(i, s), sig(i + 1, s), sig(i, s)]),
                word(vec![sig(i + 1, s), sig(i, s), sig(i + 1, s)]),
            ));
        }
        pairs.push((
            word(vec![Sigma(i), Sigma(i + 1), Pseudo(i)]),
            word(vec![Pseudo(i + 1), Sigma(i), Sigma(i + 1)]),
        ));
        pairs.push((
            word(vec![Sigma(i + 1), Sigma(i), Pseudo(i + 1)]),
            word(vec![Pseudo(i), Sigma(i + 1), Sigma(i)]),
        ));
    }
    pairs
}

/// Verify that [`resolve`] respects every defining relation on n strands.
/// A homomorphism must send both sides of each relation to the same
/// algebra element; the report lists any pair where it does not.
pub fn rho_relation_check(n: usize) -> RhoReport {
    assert!(n >= 2, "relations need at least two strands");
    let pairs = defining_relation_pairs(n);
    let mut violations = Vec::new();
    for (l, r) in &pairs {
        if resolve(l) != resolve(r) {
            violations.push(format!("\"{l}\" vs \"{r}\" on {n} strands"));
        }
    }
    RhoReport {
        strands: n,
        instances: pairs.len(),
        violations,
    }
}

/// The induced trace Tₙ = trₙ ∘ resolve.
pub fn induced_trace(w: &PseudoWord) -> ExtScalar {
    ocneanu_trace(&resolve(w))
}

/// The invariant 𝒫 of the closure of `w`:
/// Aⁿ⁻¹ · B^{e(w)} · C^{d(w)} · Tₙ(w).
pub fn invariant_p(w: &PseudoWord) -> ExtScalar {
    let k = constants();
    let (e, d) = w.degree_stats();
    let a_pow = k.a.powi(w.strands() as i64 - 1).expect("A is invertible");
    let b_pow = k.b.powi(e).expect("B is invertible");
    let c_pow = k.c.powi(d as i64).expect("C is invertible");
    let norm = &(&a_pow * &b_pow) * &c_pow;
    &norm * &induced_trace(w)
}

/// The normalized classical value ℋ(β̂) = Aⁿ⁻¹ B^{e(β)} trₙ(π(β)),
/// defined only for words without pseudo letters.
pub fn classical_h(w: &PseudoWord) -> Result<ExtScalar, InvariantError> {
    let elem = word_to_element(w)?;
    let k = constants();
    let a_pow = k.a.powi(w.strands() as i64 - 1).expect("A is invertible");
    let b_pow = k.b.powi(w.exponent_sum()).expect("B is invertible");
    Ok(&(&a_pow * &b_pow) * &ocneanu_trace(&elem))
}

/// One choice of classical resolution per pseudo letter, in order of
/// occurrence: +1 picks σᵢ, −1 picks σᵢ⁻¹.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateResolution {
    choices: Vec<i8>,
}

impl StateResolution {
    /// All 2^d states, in the fixed enumeration order used by the state
    /// sum (state index counts up, bit t of the index drives choice t).
    pub fn all(d: usize) -> impl Iterator<Item = StateResolution> {
        assert!(d < 64, "state space too large to enumerate");
        (0..(1u64 << d)).map(move |s| StateResolution {
            choices: (0..d)
                .map(|t| if (s >> t) & 1 == 0 { 1 } else { -1 })
                .collect(),
        })
    }

    pub fn choices(&self) -> &[i8] {
        &self.choices
    }

    pub fn r_plus(&self) -> usize {
        self.choices.iter().filter(|&&c| c > 0).count()
    }

    pub fn r_minus(&self) -> usize {
        self.choices.len() - self.r_plus()
    }

    /// Replace each pseudo letter of `w` by the chosen classical crossing.
    pub fn apply(&self, w: &PseudoWord) -> PseudoWord {
        let mut letters = w.letters().to_vec();
        let mut t = 0;
        for l in letters.iter_mut() {
            if let Letter::Pseudo(i) = *l {
                *l = if self.choices[t] > 0 {
                    Letter::Sigma(i)
                } else {
                    Letter::SigmaInv(i)
                };
                t += 1;
            }
        }
        debug_assert_eq!(t, self.choices.len(), "choice count must equal d");
        PseudoWord::new(w.strands(), letters).expect("indices unchanged")
    }
}

/// The state-sum form of the invariant:
///
///   𝒫(α̂) = C^d Σ_s (XB⁻¹)^{r₊(s)} (YB)^{r₋(s)} ℋ(α̂_s),
///
/// summing over all 2^d classical resolutions of the pseudo letters.
/// Exceeding `state_cap` states is an error rather than a long night.
pub fn state_sum_p(w: &PseudoWord, state_cap: u64) -> Result<ExtScalar, InvariantError> {
    let d = w.pseudo_degree();
    let over_budget = Err(InvariantError::StateBudgetExceeded {
        degree: d,
        cap: state_cap,
    });
    if d >= 64 {
        return over_budget;
    }
    if 1u64 << d > state_cap {
        return over_budget;
    }

    let k = constants();
    let x = ExtScalar::variable(Var::X);
    let y = ExtScalar::variable(Var::Y);
    let weight_plus = &x * &k.b_inv;
    let weight_minus = &y * &k.b;
    let e = w.exponent_sum();

    let mut total = ExtScalar::zero();
    for state in StateResolution::all(d) {
        let resolved = state.apply(w);
        let (r_plus, r_minus) = (state.r_plus() as i64, state.r_minus() as i64);
        debug_assert_eq!(resolved.exponent_sum(), e + r_plus - r_minus);
        let h = classical_h(&resolved).expect("resolved state is classical");
        let weight = &weight_plus.powi(r_plus).expect("weight is invertible")
            * &weight_minus.powi(r_minus).expect("weight is invertible");
        total = &total + &(&weight * &h);
    }
    let c_pow = k.c.powi(d as i64).expect("C is invertible");
    Ok(&c_pow * &total)
}

/// The three closures around one pseudo crossing and the relation
/// 𝒫(L_p) = λ₊𝒫(L₊) + λ₋𝒫(L₋) they must satisfy.
#[derive(Clone, Debug)]
pub struct PseudoSkeinCheck {
    pub pseudo: ExtScalar,
    pub positive: ExtScalar,
    pub negative: ExtScalar,
}

impl PseudoSkeinCheck {
    pub fn holds(&self) -> bool {
        let k = constants();
        self.pseudo
            == &(&k.lambda_plus * &self.positive) + &(&k.lambda_minus * &self.negative)
    }
}

/// Compute the skein triple at the marked letter, which must be pseudo.
pub fn pseudo_skein_check(
    w: &PseudoWord,
    mark: usize,
) -> Result<PseudoSkeinCheck, InvariantError> {
    let letter = w
        .letters()
        .get(mark)
        .copied()
        .filter(|l| l.is_pseudo())
        .ok_or(InvariantError::MarkNotPseudo { position: mark })?;
    let i = letter.index();
    let plus = w.with_letter(mark, Letter::Sigma(i))?;
    let minus = w.with_letter(mark, Letter::SigmaInv(i))?;
    Ok(PseudoSkeinCheck {
        pseudo: invariant_p(w),
        positive: invariant_p(&plus),
        negative: invariant_p(&minus),
    })
}

/// The three closures obtained by inserting σᵢ, σᵢ⁻¹, or nothing at a
/// position, and the classical relation
/// B⁻¹𝒫(L₊) − qB𝒫(L₋) = (q−1)𝒫(L₀) they must satisfy.
#[derive(Clone, Debug)]
pub struct ClassicalSkeinCheck {
    pub positive: ExtScalar,
    pub negative: ExtScalar,
    pub zero: ExtScalar,
}

impl ClassicalSkeinCheck {
    pub fn holds(&self) -> bool {
        let k = constants();
        let q = ExtScalar::variable(Var::Q);
        let lhs = &(&k.b_inv * &self.positive) - &(&(&q * &k.b) * &self.negative);
        let rhs = &(&q - &ExtScalar::one()) * &self.zero;
        lhs == rhs
    }
}

/// Compute the crossing-insertion triple at `position` with generator
/// index `index`.
pub fn classical_skein_check(
    context: &PseudoWord,
    position: usize,
    index: usize,
) -> Result<ClassicalSkeinCheck, InvariantError> {
    assert!(position <= context.len(), "insertion position out of range");
    let plus = context.with_insertion(position, Letter::Sigma(index))?;
    let minus = context.with_insertion(position, Letter::SigmaInv(index))?;
    Ok(ClassicalSkeinCheck {
        positive: invariant_p(&plus),
        negative: invariant_p(&minus),
        zero: invariant_p(context),
    })
}

fn skein_eval_impl(w: &PseudoWord, rightmost: bool) -> ExtScalar {
    let mark = if rightmost {
        w.letters().iter().rposition(|l| l.is_pseudo())
    } else {
        w.letters().iter().position(|l| l.is_pseudo())
    };
    match mark {
        None => classical_h(w).expect("word without pseudo letters"),
        Some(pos) => {
            let i = w.letters()[pos].index();
            let k = constants();
            let plus = w
                .with_letter(pos, Letter::Sigma(i))
                .expect("index unchanged");
            let minus = w
                .with_letter(pos, Letter::SigmaInv(i))
                .expect("index unchanged");
            &(&k.lambda_plus * &skein_eval_impl(&plus, rightmost))
                + &(&k.lambda_minus * &skein_eval_impl(&minus, rightmost))
        }
    }
}

/// Evaluate 𝒫 purely by the skein relation: resolve the leftmost pseudo
/// letter via 𝒫 = λ₊𝒫(+) + λ₋𝒫(−) until the word is classical, then
/// evaluate ℋ. Always equals [`invariant_p`].
pub fn skein_evaluate(w: &PseudoWord) -> ExtScalar {
    skein_eval_impl(w, false)
}

/// Same recursion resolving the rightmost pseudo letter first; the
/// resolution order must not matter, and this is the instrument that
/// checks it.
pub fn skein_evaluate_rightmost(w: &PseudoWord) -> ExtScalar {
    skein_eval_impl(w, true)
}

/// σ₁^m on two strands (inverse letters for negative m).
pub fn sigma1_power(m: i64) -> PseudoWord {
    let letter = if m >= 0 {
        Letter::Sigma(1)
    } else {
        Letter::SigmaInv(1)
    };
    PseudoWord::new(2, vec![letter; m.unsigned_abs() as usize]).expect("index 1 on 2 strands")
}

/// Both sides of the closed form for the family σ₁ᵏp₁:
///
///   𝒫(α̂ₖ) = A·Bᵏ·C·(X·tr₂(g₁^{k+1}) + Y·tr₂(g₁^{k−1})).
#[derive(Clone, Debug)]
pub struct FamilyCheck {
    pub k: i64,
    pub invariant: ExtScalar,
    pub closed_form: ExtScalar,
}

impl FamilyCheck {
    pub fn holds(&self) -> bool {
        self.invariant == self.closed_form
    }
}

/// Evaluate 𝒫(σ₁ᵏp₁) directly and via the closed form.
pub fn family_alpha_k(k: i64) -> FamilyCheck {
    let mut letters = sigma1_power(k).letters().to_vec();
    letters.push(Letter::Pseudo(1));
    let word = PseudoWord::new(2, letters).expect("two-strand word");
    let invariant = invariant_p(&word);

    let kc = constants();
    let x = ExtScalar::variable(Var::X);
    let y = ExtScalar::variable(Var::Y);
    let tr2 = |m: i64| induced_trace(&sigma1_power(m));
    let b_pow = kc.b.powi(k).expect("B is invertible");
    let closed_form = &(&(&kc.a * &b_pow) * &kc.c)
        * &(&(&x * &tr2(k + 1)) + &(&y * &tr2(k - 1)));
    FamilyCheck {
        k,
        invariant,
        closed_form,
    }
}
