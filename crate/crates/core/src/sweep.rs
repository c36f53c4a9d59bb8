//! Row generators behind the table and sweep commands.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::circuits::{run_amplification, OracleSpec, Pipeline};
use crate::error::{Error, Result};
use crate::math::{self, Convention};
use crate::par;
use crate::sv::BasisPattern;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IterationRow {
    pub n: usize,
    pub k: usize,
    pub j_uniform: usize,
    pub j_ideal_round: usize,
    pub j_ideal_ceil: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AmplitudeRow {
    pub k: usize,
    pub binomial: f64,
    pub uniform: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbabilityRow {
    pub k: usize,
    pub j: usize,
    pub uniform: f64,
    /// Binomial superposition at `ω_max`.
    pub binomial_max: f64,
    /// Binomial superposition at the ceil plan's `ω_ideal`.
    pub binomial_ideal: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareRow {
    pub outcome: String,
    pub uniform: f64,
    pub binomial: f64,
}

fn iteration_row(n: usize, k: usize) -> Result<IterationRow> {
    Ok(IterationRow {
        n,
        k,
        j_uniform: math::j_uniform(n),
        j_ideal_round: math::plan(n, k, Convention::Round)?.j_ideal,
        j_ideal_ceil: math::plan(n, k, Convention::Ceil)?.j_ideal,
    })
}

/// Iteration counts for every weight of an `n`-qubit register.
pub fn table1(n: usize) -> Result<Vec<IterationRow>> {
    qubits_vs_iterations(n, n)
}

/// Iteration counts for every `(n, k)` with `n_min ≤ n ≤ n_max`.
pub fn qubits_vs_iterations(n_min: usize, n_max: usize) -> Result<Vec<IterationRow>> {
    if n_min == 0 || n_min > n_max {
        return Err(Error::Size(n_min));
    }
    let points: Vec<(usize, usize)> = (n_min..=n_max)
        .flat_map(|n| (0..=n).map(move |k| (n, k)))
        .collect();
    par::map(&points, |&(n, k)| iteration_row(n, k))
        .into_iter()
        .collect()
}

/// Initial per-weight amplitudes next to the uniform amplitude.
///
/// With `favored_only`, keeps the weights the rotation favours over uniform.
pub fn amplitude_table(n: usize, omega: f64, favored_only: bool) -> Result<Vec<AmplitudeRow>> {
    let profile = math::partition_profile(n, omega)?;
    let uniform = 2f64.powf(-(n as f64) / 2.0);
    Ok(profile
        .per_k_amplitude
        .into_iter()
        .enumerate()
        .map(|(k, binomial)| AmplitudeRow {
            k,
            binomial,
            uniform,
        })
        .filter(|r| !favored_only || r.binomial > r.uniform)
        .collect())
}

/// Closed-form target probabilities for `j = 0..=j_max` and every weight.
pub fn iterations_vs_probability(n: usize, j_max: usize) -> Result<Vec<ProbabilityRow>> {
    let plans = (0..=n)
        .map(|k| math::plan(n, k, Convention::Ceil))
        .collect::<Result<Vec<_>>>()?;
    let points: Vec<(usize, usize)> = (0..=n)
        .flat_map(|k| (0..=j_max).map(move |j| (k, j)))
        .collect();
    par::map(&points, |&(k, j)| {
        let p = &plans[k];
        Ok(ProbabilityRow {
            k,
            j,
            uniform: math::predicted_probability(n, k, FRAC_PI_2, j)?,
            binomial_max: math::predicted_probability(n, k, p.omega_max, j)?,
            binomial_ideal: math::predicted_probability(n, k, p.omega(), j)?,
        })
    })
    .into_iter()
    .collect()
}

/// Simulated target vs summed non-target probability, uniform against binomial at `ω_max`.
pub fn compare(target: &BasisPattern, j: usize) -> Result<Vec<CompareRow>> {
    let n = target.n_bits();
    let w = math::omega_max(n, target.hamming_weight())?;
    let spec = OracleSpec::exact(target.clone());
    let pipelines = [Pipeline::Uniform, Pipeline::BGjA(w)];
    let probs = par::map(&pipelines, |&p| {
        run_amplification(p, &spec, j).map(|s| s.amplitude(target.value()).norm_sqr())
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    Ok(vec![
        CompareRow {
            outcome: target.label(),
            uniform: probs[0],
            binomial: probs[1],
        },
        CompareRow {
            outcome: "other".into(),
            uniform: 1.0 - probs[0],
            binomial: 1.0 - probs[1],
        },
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table1_rows() {
        let rows = table1(8).unwrap();
        assert_eq!(rows.len(), 9);
        assert!(rows.iter().all(|r| r.j_uniform == 12));
        let round: Vec<usize> = rows.iter().map(|r| r.j_ideal_round).collect();
        assert_eq!(round, vec![1, 3, 7, 11, 12, 11, 7, 3, 1]);
    }

    #[test]
    fn extreme_weights_need_one_iteration() {
        let rows = qubits_vs_iterations(1, 14).unwrap();
        for r in rows.iter().filter(|r| r.k == 0 || r.k == r.n) {
            assert_eq!((r.j_ideal_round, r.j_ideal_ceil), (1, 1), "n={}", r.n);
        }
        assert!(qubits_vs_iterations(5, 3).is_err());
    }

    #[test]
    fn favored_rows() {
        let rows = amplitude_table(11, 15.0 * std::f64::consts::PI / 32.0, true).unwrap();
        assert_eq!(
            rows.iter().map(|r| r.k).collect::<Vec<_>>(),
            vec![0, 1, 2, 3, 4, 5]
        );
        let rows = amplitude_table(11, 17.0 * std::f64::consts::PI / 32.0, true).unwrap();
        assert_eq!(
            rows.iter().map(|r| r.k).collect::<Vec<_>>(),
            vec![6, 7, 8, 9, 10, 11]
        );
    }

    #[test]
    fn ideal_rotation_reaches_one() {
        let rows = iterations_vs_probability(8, 12).unwrap();
        let r = rows.iter().find(|r| r.k == 2 && r.j == 7).unwrap();
        assert!((r.binomial_ideal - 1.0).abs() < 1e-12);
        let r0 = rows.iter().find(|r| r.k == 0 && r.j == 1).unwrap();
        assert!((r0.binomial_max - 1.0).abs() < 1e-12);
    }

    #[test]
    fn compare_depth_budget() {
        let rows = compare(&BasisPattern::parse("10000001").unwrap(), 6).unwrap();
        assert!(rows[0].binomial > rows[0].uniform);
        assert!((rows[0].binomial + rows[1].binomial - 1.0).abs() < 1e-15);
    }
}
