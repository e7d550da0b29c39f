//! Randomized re-verification of every invariance claim the engine makes.
//!
//! Each suite draws seeded pseudo-random words, checks an exact identity
//! on them, and reports failures as reproducible (seed, word, move)
//! triples. Instance seeds are `config.seed + trial`, so any reported
//! failure can be replayed in isolation. A passing suite is a report with
//! an empty failure list, never a silent unit value.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::braid::{markov_move, random_word, Letter, MarkovMove, PseudoWord};
use crate::coeff::{ExtScalar, Var};
use crate::invariant::{
    classical_skein_check, constants, induced_trace, invariant_p, pseudo_skein_check,
    rho_relation_check, state_sum_p, DEFAULT_STATE_CAP,
};

/// Bounds and seeding for the randomized suites.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    pub trials: usize,
    pub max_strands: usize,
    pub max_len: usize,
    pub max_pseudo: usize,
    pub state_cap: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            trials: 100,
            max_strands: 5,
            max_len: 8,
            max_pseudo: 4,
            state_cap: DEFAULT_STATE_CAP,
        }
    }
}

/// One failing instance, replayable from its seed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub seed: u64,
    pub word: String,
    #[serde(rename = "move")]
    pub step: String,
}

/// Outcome of one suite.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub check: String,
    pub instances: usize,
    pub failures: Vec<Failure>,
    pub elapsed_ms: u128,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// The available suites, by their command-line names.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Markov,
    Rho,
    TraceProps,
    StateSum,
    PseudoSkein,
    ClassicalSkein,
    All,
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "markov" => Ok(Suite::Markov),
            "rho" => Ok(Suite::Rho),
            "trace-props" => Ok(Suite::TraceProps),
            "statesum" => Ok(Suite::StateSum),
            "pseudo-skein" => Ok(Suite::PseudoSkein),
            "classical-skein" => Ok(Suite::ClassicalSkein),
            "all" => Ok(Suite::All),
            other => Err(format!(
                "unknown suite `{other}` (expected markov, rho, trace-props, \
                 statesum, pseudo-skein, classical-skein, or all)"
            )),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Suite::Markov => "markov",
            Suite::Rho => "rho",
            Suite::TraceProps => "trace-props",
            Suite::StateSum => "statesum",
            Suite::PseudoSkein => "pseudo-skein",
            Suite::ClassicalSkein => "classical-skein",
            Suite::All => "all",
        };
        f.write_str(name)
    }
}

/// Run one suite (or all of them) and collect the reports.
pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Vec<VerifyReport> {
    match suite {
        Suite::Markov => vec![run_markov(cfg)],
        Suite::Rho => vec![run_rho(cfg)],
        Suite::TraceProps => vec![run_trace_props(cfg)],
        Suite::StateSum => vec![run_statesum(cfg)],
        Suite::PseudoSkein => vec![run_pseudo_skein(cfg)],
        Suite::ClassicalSkein => vec![run_classical_skein(cfg)],
        Suite::All => vec![
            run_markov(cfg),
            run_rho(cfg),
            run_trace_props(cfg),
            run_statesum(cfg),
            run_pseudo_skein(cfg),
            run_classical_skein(cfg),
        ],
    }
}

fn trial_rng(cfg: &SuiteConfig, trial: usize) -> (u64, ChaCha8Rng) {
    let seed = cfg.seed.wrapping_add(trial as u64);
    (seed, ChaCha8Rng::seed_from_u64(seed))
}

fn draw_word(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> PseudoWord {
    let n = rng.gen_range(2..=cfg.max_strands.max(2));
    let len = rng.gen_range(1..=cfg.max_len.max(1));
    random_word(n, len, cfg.max_pseudo, rng.gen())
}

/// The deterministic word stream a suite with this config examines, as
/// (seed, word) pairs. This is the replay hook: external checks can
/// re-test a different formulation on exactly the words a suite saw.
pub fn trial_words(cfg: &SuiteConfig) -> Vec<(u64, PseudoWord)> {
    (0..cfg.trials)
        .map(|trial| {
            let (seed, mut rng) = trial_rng(cfg, trial);
            (seed, draw_word(cfg, &mut rng))
        })
        .collect()
}

/// The invariant is unchanged by conjugation, cyclic commuting, both
/// classical stabilizations, and pseudo stabilization.
pub fn run_markov(cfg: &SuiteConfig) -> VerifyReport {
    let start = Instant::now();
    let mut instances = 0;
    let mut failures = Vec::new();
    for trial in 0..cfg.trials {
        let (seed, mut rng) = trial_rng(cfg, trial);
        let word = draw_word(cfg, &mut rng);
        let base = invariant_p(&word);
        let beta = random_word(word.strands(), rng.gen_range(0..=4), 0, rng.gen());
        let moves = [
            MarkovMove::Conjugate(beta),
            MarkovMove::Commute(rng.gen_range(0..=word.len())),
            MarkovMove::StabPos,
            MarkovMove::StabNeg,
            MarkovMove::StabPseudo,
        ];
        for mv in moves {
            instances += 1;
            let moved = markov_move(&word, &mv).expect("generated moves always apply");
            if invariant_p(&moved) != base {
                failures.push(Failure {
                    seed,
                    word: word.to_string(),
                    step: mv.to_string(),
                });
            }
        }
    }
    VerifyReport {
        check: "markov".into(),
        instances,
        failures,
        elapsed_ms: start.elapsed().as_millis(),
    }
}

/// The resolution map respects every defining relation — exhaustively,
/// for each strand count up to the bound.
pub fn run_rho(cfg: &SuiteConfig) -> VerifyReport {
    let start = Instant::now();
    let mut instances = 0;
    let mut failures = Vec::new();
    for n in 2..=cfg.max_strands.max(2) {
        let report = rho_relation_check(n);
        instances += report.instances;
        for violation in report.violations {
            failures.push(Failure {
                seed: n as u64,
                word: violation,
                step: "defining relation".into(),
            });
        }
    }
    VerifyReport {
        check: "rho".into(),
        instances,
        failures,
        elapsed_ms: start.elapsed().as_millis(),
    }
}

/// The four structural properties of the induced trace: commutativity and
/// the three stabilization factors z, z₋, Xz+Yz₋.
pub fn run_trace_props(cfg: &SuiteConfig) -> VerifyReport {
    let start = Instant::now();
    let k = constants();
    let z = ExtScalar::variable(Var::Z);
    let mut instances = 0;
    let mut failures = Vec::new();
    for trial in 0..cfg.trials {
        let (seed, mut rng) = trial_rng(cfg, trial);
        let a = draw_word(cfg, &mut rng);
        let b = random_word(
            a.strands(),
            rng.gen_range(1..=cfg.max_len.max(1)),
            cfg.max_pseudo,
            rng.gen(),
        );
        let trace_a = induced_trace(&a);

        instances += 1;
        if induced_trace(&a.concat(&b)) != induced_trace(&b.concat(&a)) {
            failures.push(Failure {
                seed,
                word: format!("{a} | {b}"),
                step: "T(ab) = T(ba)".into(),
            });
        }

        let n = a.strands();
        let stabilizations = [
            (Letter::Sigma(n), z.clone(), "T(a gn) = z T(a)"),
            (Letter::SigmaInv(n), k.z_minus.clone(), "T(a gn^-1) = z- T(a)"),
            (
                Letter::Pseudo(n),
                k.pseudo_weight.clone(),
                "T(a pn) = (Xz+Yz-) T(a)",
            ),
        ];
        for (letter, factor, name) in stabilizations {
            instances += 1;
            let tail = PseudoWord::new(n + 1, vec![letter]).expect("top index fits");
            let stabbed = a.embed(n + 1).concat(&tail);
            if induced_trace(&stabbed) != &factor * &trace_a {
                failures.push(Failure {
                    seed,
                    word: a.to_string(),
                    step: name.into(),
                });
            }
        }
    }
    VerifyReport {
        check: "trace-props".into(),
        instances,
        failures,
        elapsed_ms: start.elapsed().as_millis(),
    }
}

/// The state sum equals the direct pipeline, and the one-crossing closed
/// form C(XB⁻¹ + YB) collapses to 1.
pub fn run_statesum(cfg: &SuiteConfig) -> VerifyReport {
    let start = Instant::now();
    let mut instances = 0;
    let mut failures = Vec::new();
    for trial in 0..cfg.trials {
        let (seed, mut rng) = trial_rng(cfg, trial);
        let word = draw_word(cfg, &mut rng);
        instances += 1;
        match state_sum_p(&word, cfg.state_cap) {
            Ok(value) if value == invariant_p(&word) => {}
            Ok(_) => failures.push(Failure {
                seed,
                word: word.to_string(),
                step: "state sum vs pipeline".into(),
            }),
            Err(err) => failures.push(Failure {
                seed,
                word: word.to_string(),
                step: format!("state sum failed: {err}"),
            }),
        }
    }

    instances += 1;
    let k = constants();
    let x = ExtScalar::variable(Var::X);
    let y = ExtScalar::variable(Var::Y);
    let closed = &k.c * &(&(&x * &k.b_inv) + &(&y * &k.b));
    if !closed.is_one() {
        failures.push(Failure {
            seed: cfg.seed,
            word: "p1".into(),
            step: "C(XB^-1 + YB) = 1".into(),
        });
    }

    VerifyReport {
        check: "statesum".into(),
        instances,
        failures,
        elapsed_ms: start.elapsed().as_millis(),
    }
}

/// 𝒫(L_p) = λ₊𝒫(L₊) + λ₋𝒫(L₋) at a random marked pseudo letter.
pub fn run_pseudo_skein(cfg: &SuiteConfig) -> VerifyReport {
    let start = Instant::now();
    let mut instances = 0;
    let mut failures = Vec::new();
    for trial in 0..cfg.trials {
        let (seed, mut rng) = trial_rng(cfg, trial);
        let mut word = draw_word(cfg, &mut rng);
        if word.pseudo_degree() == 0 {
            // force a pseudo letter so the relation has something to resolve
            let pos = rng.gen_range(0..word.len());
            let index = word.letters()[pos].index();
            word = word
                .with_letter(pos, Letter::Pseudo(index))
                .expect("index unchanged");
        }
        let marks: Vec<usize> = word
            .letters()
            .iter()
            .enumerate()
            .filter(|(_, l)| l.is_pseudo())
            .map(|(p, _)| p)
            .collect();
        let mark = marks[rng.gen_range(0..marks.len())];
        instances += 1;
        match pseudo_skein_check(&word, mark) {
            Ok(check) if check.holds() => {}
            Ok(_) => failures.push(Failure {
                seed,
                word: word.to_string(),
                step: format!("pseudo skein at {mark}"),
            }),
            Err(err) => failures.push(Failure {
                seed,
                word: word.to_string(),
                step: format!("pseudo skein failed: {err}"),
            }),
        }
    }
    VerifyReport {
        check: "pseudo-skein".into(),
        instances,
        failures,
        elapsed_ms: start.elapsed().as_millis(),
    }
}

/// B⁻¹𝒫(L₊) − qB𝒫(L₋) = (q−1)𝒫(L₀) for random classical contexts.
pub fn run_classical_skein(cfg: &SuiteConfig) -> VerifyReport {
    let start = Instant::now();
    let mut instances = 0;
    let mut failures = Vec::new();
    for trial in 0..cfg.trials {
        let (seed, mut rng) = trial_rng(cfg, trial);
        let n = rng.gen_range(2..=cfg.max_strands.max(2));
        let len = rng.gen_range(0..=cfg.max_len);
        let context = random_word(n, len, 0, rng.gen());
        let position = rng.gen_range(0..=context.len());
        let index = rng.gen_range(1..n);
        instances += 1;
        match classical_skein_check(&context, position, index) {
            Ok(check) if check.holds() => {}
            Ok(_) => failures.push(Failure {
                seed,
                word: context.to_string(),
                step: format!("classical skein at {position} with index {index}"),
            }),
            Err(err) => failures.push(Failure {
                seed,
                word: context.to_string(),
                step: format!("classical skein failed: {err}"),
            }),
        }
    }
    VerifyReport {
        check: "classical-skein".into(),
        instances,
        failures,
        elapsed_ms: start.elapsed().as_millis(),
    }
}
