//! The acceptance gate: ten end-to-end criteria, each checked at exact
//! symbolic equality (cross-multiplication, never string comparison) and
//! within its runtime budget. Every test prints one final pass line; a
//! failed assertion fails the corresponding criterion and nothing else.

use std::time::{Duration, Instant};

use pseudo_homfly::braid::PseudoWord;
use pseudo_homfly::coeff::{ExtScalar, MultiPoly, RationalFn, Var};
use pseudo_homfly::invariant::{
    classical_h, constants, family_alpha_k, induced_trace, invariant_p, skein_evaluate,
    skein_evaluate_rightmost, state_sum_p,
};
use pseudo_homfly::verify::{
    run_classical_skein, run_markov, run_pseudo_skein, run_rho, run_statesum, run_trace_props,
    trial_words, SuiteConfig,
};

fn word(text: &str) -> PseudoWord {
    PseudoWord::parse(text, None).unwrap()
}

fn var(v: Var) -> ExtScalar {
    ExtScalar::variable(v)
}

/// z₋ built from scratch as (z + 1 − q)/q, independent of the library's
/// own constant.
fn z_minus_from_scratch() -> ExtScalar {
    let q = MultiPoly::variable(Var::Q);
    let z = MultiPoly::variable(Var::Z);
    let num = &(&z + &MultiPoly::one()) - &q;
    ExtScalar::from_ratfn(RationalFn::new(num, q))
}

/// (q−1)z + q, the trace of a doubled crossing.
fn quadratic_bracket() -> ExtScalar {
    let q = MultiPoly::variable(Var::Q);
    let z = MultiPoly::variable(Var::Z);
    ExtScalar::from_ratfn(RationalFn::from_poly(
        &(&(&q - &MultiPoly::one()) * &z) + &q,
    ))
}

fn assert_within(start: Instant, budget: Duration, what: &str) {
    let elapsed = start.elapsed();
    assert!(
        elapsed <= budget,
        "{what} took {elapsed:?}, over the {budget:?} budget"
    );
}

#[test]
fn criterion_01_exact_closed_form_values() {
    let start = Instant::now();
    let one = ExtScalar::one();
    let z = var(Var::Z);
    let z_minus = z_minus_from_scratch();

    assert_eq!(invariant_p(&PseudoWord::empty(1)), one, "P(unknot) = 1");
    assert_eq!(invariant_p(&word("p1")), one, "P(closure of p1) = 1");
    assert_eq!(invariant_p(&word("1")), one, "P(closure of s1) = 1");
    assert_eq!(
        induced_trace(&word("p1")),
        &(&var(Var::X) * &z) + &(&var(Var::Y) * &z_minus),
        "T2(p1) = Xz + Yz-"
    );
    assert_eq!(induced_trace(&word("1")), z, "tr2(g1) = z");
    assert_eq!(induced_trace(&word("-1")), z_minus, "tr2(g1^-1) = z-");
    assert_eq!(
        induced_trace(&word("1 1")),
        quadratic_bracket(),
        "tr2(g1^2) = (q-1)z + q"
    );
    let k = constants();
    let expected = &(&(&k.a * &k.b) * &k.c)
        * &(&(&var(Var::X) * &quadratic_bracket()) + &var(Var::Y));
    assert_eq!(
        invariant_p(&word("1 p1")),
        expected,
        "P(closure of g1 p1) = ABC(X((q-1)z+q) + Y)"
    );

    assert_within(start, Duration::from_secs(1), "criterion 1");
    println!("criterion 01 exact closed-form values: PASS");
}

#[test]
fn criterion_02_normalization_equations() {
    let k = constants();
    let one = ExtScalar::one();
    let z = var(Var::Z);
    let z_minus = z_minus_from_scratch();
    let weight = &(&var(Var::X) * &z) + &(&var(Var::Y) * &z_minus);

    assert_eq!(&(&k.a * &k.b) * &z, one, "ABz = 1");
    assert_eq!(&(&k.a * &k.b_inv) * &z_minus, one, "AB^-1 z- = 1");
    assert_eq!(&(&k.a * &k.c) * &weight, one, "AC(Xz + Yz-) = 1");
    assert_eq!(
        &k.b * &k.b,
        z_minus.checked_div(&z).unwrap(),
        "B^2 = z-/z"
    );
    println!("criterion 02 normalization equations: PASS");
}

#[test]
fn criterion_03_resolution_respects_all_relations() {
    let start = Instant::now();
    let report = run_rho(&SuiteConfig {
        max_strands: 5,
        ..Default::default()
    });
    assert!(report.instances > 0);
    assert!(
        report.passed(),
        "relation violations: {:?}",
        report.failures
    );
    assert_within(start, Duration::from_secs(10), "criterion 3");
    println!(
        "criterion 03 resolution map respects all {} relation instances (n <= 5): PASS",
        report.instances
    );
}

#[test]
fn criterion_04_induced_trace_properties() {
    let start = Instant::now();
    let report = run_trace_props(&SuiteConfig {
        trials: 200,
        ..Default::default()
    });
    assert_eq!(report.instances, 800, "four identities per trial");
    assert!(report.passed(), "trace failures: {:?}", report.failures);
    assert_within(start, Duration::from_secs(60), "criterion 4");
    println!("criterion 04 induced-trace properties on 200 random words: PASS");
}

#[test]
fn criterion_05_markov_invariance() {
    let start = Instant::now();
    let report = run_markov(&SuiteConfig {
        trials: 200,
        ..Default::default()
    });
    assert_eq!(report.instances, 1000, "five moves per word");
    assert!(report.passed(), "markov failures: {:?}", report.failures);
    assert_within(start, Duration::from_secs(300), "criterion 5");
    println!("criterion 05 invariance under all Markov moves, 200 words: PASS");
}

#[test]
fn criterion_06_state_sum_agrees_with_pipeline() {
    let start = Instant::now();
    let report = run_statesum(&SuiteConfig {
        trials: 100,
        max_strands: 4,
        max_pseudo: 6,
        ..Default::default()
    });
    assert_eq!(report.instances, 101, "100 words plus the closed form");
    assert!(report.passed(), "state-sum failures: {:?}", report.failures);
    assert_within(start, Duration::from_secs(300), "criterion 6");
    println!("criterion 06 state sum = direct pipeline on 100 words: PASS");
}

#[test]
fn criterion_07_skein_relations() {
    let start = Instant::now();
    let pseudo = run_pseudo_skein(&SuiteConfig {
        trials: 100,
        ..Default::default()
    });
    assert_eq!(pseudo.instances, 100);
    assert!(pseudo.passed(), "pseudo-skein failures: {:?}", pseudo.failures);

    let classical = run_classical_skein(&SuiteConfig {
        trials: 100,
        ..Default::default()
    });
    assert_eq!(classical.instances, 100);
    assert!(
        classical.passed(),
        "classical-skein failures: {:?}",
        classical.failures
    );
    assert_within(start, Duration::from_secs(300), "criterion 7");
    println!("criterion 07 pseudo and classical skein relations, 100 + 100 words: PASS");
}

#[test]
fn criterion_08_skein_evaluation_is_the_same_invariant() {
    // exactly the word streams of criteria 5 and 6
    let mut words = trial_words(&SuiteConfig {
        trials: 200,
        ..Default::default()
    });
    words.extend(trial_words(&SuiteConfig {
        trials: 100,
        max_strands: 4,
        max_pseudo: 6,
        ..Default::default()
    }));
    assert_eq!(words.len(), 300);

    for (i, (seed, w)) in words.iter().enumerate() {
        let direct = invariant_p(w);
        assert_eq!(
            skein_evaluate(w),
            direct,
            "leftmost-first resolution, seed {seed}, word {w}"
        );
        if i < 25 {
            assert_eq!(
                skein_evaluate_rightmost(w),
                direct,
                "rightmost-first resolution, seed {seed}, word {w}"
            );
        }
    }
    println!("criterion 08 skein evaluation matches on all 300 words (25 order-checked): PASS");
}

#[test]
fn criterion_09_twist_family_closed_form() {
    for k in -3..=5i64 {
        let check = family_alpha_k(k);
        assert!(
            check.holds(),
            "closed form fails at k = {k}: {} vs {}",
            check.invariant,
            check.closed_form
        );
    }
    println!("criterion 09 twist family closed form for k in -3..=5: PASS");
}

#[test]
fn criterion_10_trefoil_is_not_the_unknot() {
    let trefoil = invariant_p(&word("1 1 1"));
    let unknot = invariant_p(&PseudoWord::empty(1));
    assert_ne!(trefoil, unknot, "the invariant must distinguish them");
    println!("criterion 10 trefoil and unknot distinguished: PASS");
}

/// The state sum and the skein evaluation also agree with each other on a
/// word where both are nontrivial — a spot weld across the two oracles,
/// independent of the pipeline value they are each compared against.
#[test]
fn oracles_agree_with_each_other() {
    let w = word("1 p1 -2 p1 2");
    let a = state_sum_p(&w, 1 << 16).unwrap();
    let b = skein_evaluate(&w);
    assert_eq!(a, b);
    assert_eq!(a, invariant_p(&w));
    let classical = word("1 -2 1 -2");
    assert_eq!(
        classical_h(&classical).unwrap(),
        skein_evaluate(&classical)
    );
}
