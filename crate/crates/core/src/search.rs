//! End-to-end search runs: set element search, array element retrieval,
//! array value search and the adaptive random-(j, ω) strategy.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, PI};

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::circuits::{
    amplification_program, build_oracle, reflection_iterate, CircuitProgram, OracleSpec, Pipeline,
    RegisterPredicate, Superposition,
};
use crate::error::{Error, Result};
use crate::math::GroverPlan;
use crate::qdict::{
    conditional_value_distribution, decode_twos_complement, expected_subset_sum, window,
    DictionarySpec,
};
use crate::sv::{basis_label, BasisPattern, StateVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RunStatus {
    #[default]
    Ok,
    /// Requested value lies outside the value register's two's-complement window.
    UnsatisfiableInRange,
}

/// Outcome of one search run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub mode: String,
    pub omega: Option<f64>,
    pub iterations: usize,
    /// Exact simulated probability of measuring a target.
    pub target_probability: f64,
    pub histogram: BTreeMap<String, u64>,
    pub shots: u64,
    pub seed: u64,
    pub plan: Option<GroverPlan>,
    pub gate_count: usize,
    #[serde(default)]
    pub status: RunStatus,
    /// Value read from the register for the target index (retrieval only).
    #[serde(default)]
    pub decoded_value: Option<i64>,
    /// Index labels whose classical subset sum satisfies the predicate (value search only).
    #[serde(default)]
    pub satisfying_indices: Option<Vec<String>>,
    #[serde(default)]
    pub round: Option<usize>,
    #[serde(default)]
    pub verified: Option<bool>,
}

impl RunReport {
    fn new(mode: Superposition, j: usize, shots: u64, seed: u64) -> Self {
        Self {
            mode: mode.name().to_string(),
            omega: mode.omega(),
            iterations: j,
            target_probability: 0.0,
            histogram: BTreeMap::new(),
            shots,
            seed,
            plan: None,
            gate_count: 0,
            status: RunStatus::Ok,
            decoded_value: None,
            satisfying_indices: None,
            round: None,
            verified: None,
        }
    }

    // summed squared amplitudes can overshoot 1 by an ulp
    fn set_probability(&mut self, p: f64) {
        self.target_probability = p.clamp(0.0, 1.0);
    }

    pub fn with_plan(mut self, plan: GroverPlan) -> Self {
        self.plan = Some(plan);
        self
    }
}

/// Searches an unstructured `n`-qubit set for `target`.
///
/// Binomial mode runs `B(ω)·G(ω)^j·H^{⊗n}`, converting an equal
/// superposition into the binomial one.
pub fn set_search(
    target: &BasisPattern,
    mode: Superposition,
    j: usize,
    shots: u64,
    seed: u64,
) -> Result<RunReport> {
    let pipeline = match mode {
        Superposition::Uniform => Pipeline::Uniform,
        Superposition::Binomial(w) => Pipeline::BGjA(w),
    };
    let program = amplification_program(pipeline, &OracleSpec::exact(target.clone()), j)?;
    let state = program.execute()?;
    let mut report = RunReport::new(mode, j, shots, seed);
    report.set_probability(state.amplitude(target.value()).norm_sqr());
    report.histogram = state.sample(shots, seed)?.labeled();
    report.gate_count = program.gate_count();
    Ok(report)
}

/// `A·(G)^j` where `A` prepares the dictionary and `G = -A·D·A†·O`.
fn dictionary_amplification(
    spec: &DictionarySpec,
    oracle: &OracleSpec,
    j: usize,
) -> Result<(CircuitProgram, StateVector)> {
    let prep = spec.program()?;
    let iterate = reflection_iterate(&prep, &build_oracle(oracle)?)?;
    let mut program = prep.clone();
    for _ in 0..j {
        program.append(&iterate)?;
    }
    program.iterations = j;
    let state = program.execute()?;
    Ok((program, state))
}

/// Amplifies one index of the dictionary and reads back its stored value.
pub fn array_retrieve(
    spec: &DictionarySpec,
    target_index: &BasisPattern,
    j: usize,
    shots: u64,
    seed: u64,
) -> Result<RunReport> {
    spec.validate()?;
    if target_index.n_bits() != spec.n_index() {
        return Err(Error::WidthMismatch {
            expected: spec.n_index(),
            actual: target_index.n_bits(),
        });
    }
    let oracle = OracleSpec::register(
        spec.n_qubits(),
        spec.index_register(),
        RegisterPredicate::Equals(target_index.value()),
    );
    let (program, state) = dictionary_amplification(spec, &oracle, j)?;
    let mut report = RunReport::new(spec.index_prep, j, shots, seed);
    report.set_probability(state.marginal(spec.index_register())?[target_index.value()]);
    let cond = conditional_value_distribution(&state, spec, target_index.value());
    let best = cond
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(v, _)| v as u64)
        .unwrap_or(0);
    report.decoded_value = Some(decode_twos_complement(best, spec.m_value));
    report.histogram = state.sample(shots, seed)?.labeled();
    report.gate_count = program.gate_count();
    Ok(report)
}

/// Condition on the signed value stored for an index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ValuePredicate {
    Negative,
    Equals(i64),
}

impl ValuePredicate {
    pub fn holds(&self, value: i64) -> bool {
        match *self {
            ValuePredicate::Negative => value < 0,
            ValuePredicate::Equals(v) => value == v,
        }
    }

    /// Register-level form, or `None` if no m-bit value can satisfy it.
    pub fn register_form(&self, m: usize) -> Option<RegisterPredicate> {
        match *self {
            ValuePredicate::Negative => Some(RegisterPredicate::SignBitSet),
            ValuePredicate::Equals(v) => {
                let (lo, hi) = window(m);
                (lo..=hi)
                    .contains(&v)
                    .then(|| RegisterPredicate::Equals(v.rem_euclid(1 << m) as usize))
            }
        }
    }
}

/// Indices whose classical subset sum satisfies `predicate`.
pub fn satisfying_indices(spec: &DictionarySpec, predicate: ValuePredicate) -> Vec<usize> {
    (0..1usize << spec.n_index())
        .filter(|&i| predicate.holds(expected_subset_sum(&spec.values, i, spec.m_value)))
        .collect()
}

/// Marks every basis state whose value register satisfies `predicate` and amplifies.
pub fn array_value_search(
    spec: &DictionarySpec,
    predicate: ValuePredicate,
    j: usize,
    shots: u64,
    seed: u64,
) -> Result<RunReport> {
    spec.validate()?;
    let mut report = RunReport::new(spec.index_prep, j, shots, seed);
    let d = spec.n_index();
    report.satisfying_indices = Some(
        satisfying_indices(spec, predicate)
            .into_iter()
            .map(|i| basis_label(i, d))
            .collect(),
    );
    let Some(reg_pred) = predicate.register_form(spec.m_value) else {
        let prep = spec.program()?;
        report.status = RunStatus::UnsatisfiableInRange;
        report.iterations = 0;
        report.histogram = prep.execute()?.sample(shots, seed)?.labeled();
        report.gate_count = prep.gate_count();
        return Ok(report);
    };
    let oracle = OracleSpec::register(spec.n_qubits(), spec.value_register(), reg_pred);
    let (program, state) = dictionary_amplification(spec, &oracle, j)?;
    report.set_probability(
        oracle
            .flip_set()?
            .into_iter()
            .map(|i| state.amplitude(i).norm_sqr())
            .sum(),
    );
    report.histogram = state.sample(shots, seed)?.labeled();
    report.gate_count = program.gate_count();
    Ok(report)
}

/// Randomized schedule for adaptive search.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdaptiveSchedule {
    pub growth_factor: f64,
    pub max_rounds: usize,
    pub omega_candidates: Vec<f64>,
    pub seed: u64,
}

impl Default for AdaptiveSchedule {
    fn default() -> Self {
        Self {
            growth_factor: 8.0 / 7.0,
            max_rounds: 64,
            omega_candidates: vec![15.0 * PI / 32.0, FRAC_PI_2, 17.0 * PI / 32.0],
            seed: 0,
        }
    }
}

impl AdaptiveSchedule {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.growth_factor.is_finite() || self.growth_factor <= 1.0 {
            return Err(Error::BadSchedule(format!(
                "growth factor {} must exceed 1",
                self.growth_factor
            )));
        }
        if self.omega_candidates.is_empty() {
            return Err(Error::BadSchedule("no rotation candidates".into()));
        }
        if let Some(w) = self
            .omega_candidates
            .iter()
            .find(|w| !(0.0..=PI).contains(*w))
        {
            return Err(Error::BadSchedule(format!("rotation {w} outside [0, pi]")));
        }
        Ok(())
    }
}

/// Adaptive search: each round draws `j ∈ [0, ⌈λ^r⌉]` and ω from the
/// candidates, measures one shot and checks the outcome classically.
///
/// Stops at the first verified outcome. The last report has
/// `verified == Some(false)` when every round failed.
pub fn adaptive_search(
    spec: &DictionarySpec,
    predicate: ValuePredicate,
    schedule: &AdaptiveSchedule,
) -> Result<Vec<RunReport>> {
    schedule.validate()?;
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(schedule.seed);
    let mask = (1usize << spec.n_index()) - 1;
    let mut rounds = Vec::new();
    for r in 1..=schedule.max_rounds {
        let j_cap = schedule.growth_factor.powi(r as i32).ceil() as usize;
        let j = rng.gen_range(0..=j_cap);
        let w = schedule.omega_candidates[rng.gen_range(0..schedule.omega_candidates.len())];
        let shot_seed = rng.next_u64();
        let round_spec = DictionarySpec {
            index_prep: Superposition::Binomial(w),
            ..spec.clone()
        };
        let mut report = array_value_search(&round_spec, predicate, j, 1, shot_seed)?;
        let label = report
            .histogram
            .keys()
            .next()
            .expect("one shot yields one outcome");
        let outcome = usize::from_str_radix(label, 2).expect("labels are binary");
        let index = outcome & mask;
        let verified = predicate.holds(expected_subset_sum(&spec.values, index, spec.m_value));
        report.round = Some(r);
        report.verified = Some(verified);
        rounds.push(report);
        if verified {
            break;
        }
    }
    Ok(rounds)
}

/// True when an adaptive run ended in a verified success.
pub fn adaptive_succeeded(rounds: &[RunReport]) -> bool {
    rounds.last().and_then(|r| r.verified) == Some(true)
}
