//! Depolarizing-channel trials through the full encode/decode pipeline.
//!
//! Every qubit independently suffers nothing with probability `1 - p`, or
//! one of X, Y, Z with probability `p/3` each. Trial `t` draws from a
//! ChaCha8 stream selected by `(seed, t)`, so results do not depend on how
//! trials are scheduled across threads.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::codes::CodeId;
use crate::decoder::{qubit_fidelity, Decoder, Syndrome, FIDELITY_TOLERANCE};
use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliString};
use crate::statevec::StateVector;

/// Rounds to 9 significant digits so serialized output is stable.
pub fn round_sig9(v: f64) -> f64 {
    if v == 0.0 || !v.is_finite() {
        return v;
    }
    format!("{v:.8e}").parse().expect("formatted float")
}

fn sig9<S: Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(round_sig9(*v))
}

fn sig9_opt<S: Serializer>(v: &Option<f64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.serialize_f64(round_sig9(*v)),
        None => s.serialize_none(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimulationConfig {
    pub code: CodeId,
    pub p: f64,
    pub trials: u64,
    pub seed: u64,
    pub alpha0: Complex64,
    pub alpha1: Complex64,
}

impl SimulationConfig {
    /// Default input qubit `0.6|0> + 0.8i|1>`; none of the logical X, Y, Z
    /// operators leaves it invariant, so every logical error lowers fidelity.
    pub fn new(code: CodeId, p: f64, trials: u64, seed: u64) -> Self {
        SimulationConfig {
            code,
            p,
            trials,
            seed,
            alpha0: Complex64::new(0.6, 0.0),
            alpha1: Complex64::new(0.0, 0.8),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialRecord {
    pub trial: u64,
    /// Single-qubit errors injected by the channel, in site order.
    pub injected: Vec<String>,
    /// `None` when the syndrome had no table entry.
    pub syndrome: Option<Syndrome>,
    pub applied: Option<String>,
    #[serde(serialize_with = "sig9")]
    pub fidelity: f64,
    pub success: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationSummary {
    pub code: CodeId,
    #[serde(serialize_with = "sig9")]
    pub p: f64,
    pub trials: u64,
    pub seed: u64,
    pub successes: u64,
    #[serde(serialize_with = "sig9")]
    pub success_rate: f64,
    pub trials_with_at_most_one_error: u64,
    pub successes_with_at_most_one_error: u64,
    #[serde(serialize_with = "sig9_opt")]
    pub conditional_success_rate: Option<f64>,
    pub uncorrectable: u64,
    #[serde(serialize_with = "sig9")]
    pub mean_fidelity: f64,
}

/// Samples one channel use on `n` qubits.
pub fn sample_channel<R: Rng>(n: usize, p: f64, rng: &mut R) -> Vec<(Pauli, usize)> {
    let mut out = Vec::new();
    for site in 1..=n {
        if rng.gen::<f64>() < p {
            let letter = match rng.gen_range(0..3) {
                0 => Pauli::X,
                1 => Pauli::Y,
                _ => Pauli::Z,
            };
            out.push((letter, site));
        }
    }
    out
}

/// Generator for trial `trial` under `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Applies `errors` to `encoded`, decodes and scores against `input`.
pub fn run_errors(
    decoder: &Decoder,
    encoded: &StateVector,
    input: (Complex64, Complex64),
    errors: &[(Pauli, usize)],
    trial: u64,
) -> Result<TrialRecord> {
    let n = decoder.code().n();
    let mut op = PauliString::identity(n)?;
    for &(letter, site) in errors {
        op = op.multiply(&PauliString::single(n, letter, site)?)?;
    }
    let received = encoded.apply_pauli(&op)?;
    let injected = errors
        .iter()
        .map(|&(l, s)| format!("{}{}", l.as_char(), s))
        .collect();
    let record = match decoder.decode(&received) {
        Ok(out) => {
            let fidelity = qubit_fidelity(input, (out.alpha0, out.alpha1));
            TrialRecord {
                trial,
                injected,
                syndrome: Some(out.syndrome),
                applied: Some(out.applied.label()),
                fidelity,
                success: fidelity >= 1.0 - FIDELITY_TOLERANCE,
            }
        }
        Err(Error::UncorrectableSyndrome(_)) => TrialRecord {
            trial,
            injected,
            syndrome: None,
            applied: None,
            fidelity: 0.0,
            success: false,
        },
        Err(e) => return Err(e),
    };
    Ok(record)
}

/// Runs `cfg.trials` independent trials, in parallel, and summarizes them.
pub fn simulate(cfg: &SimulationConfig) -> Result<(SimulationSummary, Vec<TrialRecord>)> {
    if !(0.0..=1.0).contains(&cfg.p) {
        return Err(Error::InvalidParameters(format!(
            "p = {} not in [0, 1]",
            cfg.p
        )));
    }
    if cfg.trials == 0 {
        return Err(Error::InvalidParameters("trials must be at least 1".into()));
    }
    let decoder = Decoder::for_code(cfg.code)?;
    let encoded = decoder.code().encode(cfg.alpha0, cfg.alpha1)?;
    let input = (cfg.alpha0, cfg.alpha1);
    let n = decoder.code().n();

    let records = (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(cfg.seed, t);
            let errors = sample_channel(n, cfg.p, &mut rng);
            run_errors(&decoder, &encoded, input, &errors, t)
        })
        .collect::<Result<Vec<_>>>()?;

    let successes = records.iter().filter(|r| r.success).count() as u64;
    let low: Vec<&TrialRecord> = records.iter().filter(|r| r.injected.len() <= 1).collect();
    let low_successes = low.iter().filter(|r| r.success).count() as u64;
    let fidelity_sum: f64 = records.iter().map(|r| r.fidelity).sum();
    let summary = SimulationSummary {
        code: cfg.code,
        p: cfg.p,
        trials: cfg.trials,
        seed: cfg.seed,
        successes,
        success_rate: successes as f64 / cfg.trials as f64,
        trials_with_at_most_one_error: low.len() as u64,
        successes_with_at_most_one_error: low_successes,
        conditional_success_rate: (!low.is_empty())
            .then(|| low_successes as f64 / low.len() as f64),
        uncorrectable: records.iter().filter(|r| r.syndrome.is_none()).count() as u64,
        mean_fidelity: fidelity_sum / cfg.trials as f64,
    };
    Ok((summary, records))
}

/// Exact probability that a trial succeeds, by enumerating all `4^n` error
/// configurations. Practical for the five-qubit and repetition codes.
pub fn exact_success_probability(
    code: CodeId,
    p: f64,
    alpha0: Complex64,
    alpha1: Complex64,
) -> Result<f64> {
    let decoder = Decoder::for_code(code)?;
    let encoded = decoder.code().encode(alpha0, alpha1)?;
    let n = decoder.code().n();
    let letters = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];
    let mut total = 0.0;
    for cfg in 0..4usize.pow(n as u32) {
        let mut errors = Vec::new();
        let mut prob = 1.0;
        for site in 1..=n {
            let letter = letters[(cfg >> (2 * (site - 1))) & 3];
            if letter == Pauli::I {
                prob *= 1.0 - p;
            } else {
                prob *= p / 3.0;
                errors.push((letter, site));
            }
        }
        if prob == 0.0 {
            continue;
        }
        if run_errors(&decoder, &encoded, (alpha0, alpha1), &errors, 0)?.success {
            total += prob;
        }
    }
    Ok(total)
}
