//! Closed-form analytics for uniform and binomial amplitude amplification.
//!
//! A weight-`k` basis state on `n` qubits prepared by `RY(ω)^{⊗n}|0⟩` has
//! amplitude `a_k(ω) = sin^k(ω/2)·cos^{n-k}(ω/2)`; after `j` Grover iterations
//! its amplitude is `sin((2j+1)·θ(ω))` with `θ(ω) = arcsin(a_k(ω))`.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Residual bound for the ω_ideal root solve.
pub const ROOT_TOLERANCE: f64 = 1e-13;

/// Iteration estimates closer than this to an integer are treated as that
/// integer, so a rounding error in `asin` cannot push `⌈1.0⌉` to 2.
const INTEGER_SNAP: f64 = 1e-9;

/// How `j_ideal` is derived from the real-valued estimate `π/(4θ_max) − 1/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    /// Smallest `j` with `(2j+1)·θ_max ≥ π/2`; always admits an exact plan.
    #[default]
    Ceil,
    /// Nearest integer.
    Round,
}

impl std::str::FromStr for Convention {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "ceil" => Ok(Convention::Ceil),
            "round" => Ok(Convention::Round),
            _ => Err(format!("unknown convention {s:?} (expected ceil or round)")),
        }
    }
}

/// Analytic plan for amplifying a single weight-`k` target.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroverPlan {
    pub n: usize,
    pub k: usize,
    pub omega_max: f64,
    pub theta_max: f64,
    pub j_ideal: usize,
    pub theta_ideal: f64,
    /// Absent when the rounded iteration count cannot reach π/2 exactly.
    pub omega_ideal: Option<f64>,
    pub convention: Convention,
    pub predicted_success: f64,
}

impl GroverPlan {
    /// The rotation the plan actually runs with.
    pub fn omega(&self) -> f64 {
        self.omega_ideal.unwrap_or(self.omega_max)
    }
}

/// Which multi-target angle formula to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MultiTargetFormula {
    /// `arcsin(√Σ a_{k(i)}²)`: the marked subspace's amplitude norm.
    RootSumSquare,
    /// `arcsin(Σ a_{k(i)})`, summing amplitudes linearly.
    Linear,
}

/// Per-Hamming-weight amplitudes of the binomial superposition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartitionProfile {
    pub n: usize,
    pub omega: f64,
    pub per_k_amplitude: Vec<f64>,
    pub per_k_probability: Vec<f64>,
}

fn check_weight(n: usize, k: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Size(0));
    }
    if k > n {
        return Err(Error::WeightOutOfRange { n, k });
    }
    Ok(())
}

fn check_omega(omega: f64) -> Result<()> {
    if !(0.0..=PI).contains(&omega) {
        return Err(Error::OmegaOutOfRange(omega));
    }
    Ok(())
}

fn raw_amplitude(n: usize, k: usize, omega: f64) -> f64 {
    let (s, c) = (omega / 2.0).sin_cos();
    s.powi(k as i32) * c.powi((n - k) as i32)
}

/// `sin^k(ω/2)·cos^{n-k}(ω/2)`.
pub fn amplitude_a(n: usize, k: usize, omega: f64) -> Result<f64> {
    check_weight(n, k)?;
    check_omega(omega)?;
    Ok(raw_amplitude(n, k, omega))
}

/// `d a_k / dω = ½·sin^{k-1}(ω/2)·cos^{n-k-1}(ω/2)·(k·cos²(ω/2) − (n−k)·sin²(ω/2))`.
pub fn amplitude_derivative(n: usize, k: usize, omega: f64) -> Result<f64> {
    check_weight(n, k)?;
    check_omega(omega)?;
    let (s, c) = (omega / 2.0).sin_cos();
    let (kf, rest) = (k as f64, (n - k) as f64);
    // the k-1 and n-k-1 powers are absorbed by the vanishing coefficients
    let lead = if k == 0 {
        0.0
    } else {
        kf * s.powi(k as i32 - 1) * c.powi(rest as i32 + 1)
    };
    let trail = if k == n {
        0.0
    } else {
        rest * s.powi(k as i32 + 1) * c.powi(rest as i32 - 1)
    };
    Ok(0.5 * (lead - trail))
}

pub fn theta_of_omega(n: usize, k: usize, omega: f64) -> Result<f64> {
    Ok(amplitude_a(n, k, omega)?.asin())
}

/// `arcsin(2^{-n/2})`.
pub fn theta_uniform(n: usize) -> f64 {
    2f64.powf(-(n as f64) / 2.0).asin()
}

/// Rotation used for a weight-`k` target.
///
/// Interior weights get the maximizer of `a_k`. For `k = 0` and `k = n` the
/// returned rotation makes `a_k = 1/2`, the one-iteration point, not the
/// trivial maximizer at ω = 0 or ω = π.
pub fn omega_max(n: usize, k: usize) -> Result<f64> {
    check_weight(n, k)?;
    let root = 2f64.powf(-1.0 / n as f64);
    Ok(if k == 0 {
        2.0 * root.acos()
    } else if k == n {
        2.0 * root.asin()
    } else {
        2.0 * (k as f64 / (n - k) as f64).sqrt().atan()
    })
}

fn snap(v: f64) -> f64 {
    let r = v.round();
    if (v - r).abs() < INTEGER_SNAP {
        r
    } else {
        v
    }
}

/// Real-valued `π/(4θ) − 1/2`.
pub fn iteration_estimate(theta: f64) -> f64 {
    snap(PI / (4.0 * theta) - 0.5)
}

fn to_count(v: f64) -> usize {
    v.max(0.0) as usize
}

/// Nearest-integer iteration count for the uniform superposition.
pub fn j_uniform(n: usize) -> usize {
    to_count(iteration_estimate(theta_uniform(n)).round())
}

/// Ceiling variant of [`j_uniform`].
pub fn j_uniform_ceil(n: usize) -> usize {
    to_count(iteration_estimate(theta_uniform(n)).ceil())
}

pub fn plan(n: usize, k: usize, convention: Convention) -> Result<GroverPlan> {
    let omega_max = omega_max(n, k)?;
    let theta_max = theta_of_omega(n, k, omega_max)?;
    let est = iteration_estimate(theta_max);
    let j_ideal = to_count(match convention {
        Convention::Ceil => est.ceil(),
        Convention::Round => est.round(),
    });
    let theta_ideal = PI / (2.0 * (2 * j_ideal + 1) as f64);
    // θ_ideal can exceed θ_max by an ulp when they are analytically equal
    let (omega_ideal, predicted_success) = if theta_ideal > theta_max * (1.0 + 1e-12) {
        let p = ((2 * j_ideal + 1) as f64 * theta_max).sin().powi(2);
        (None, p)
    } else {
        let w = solve_omega_ideal(n, k, theta_ideal)?;
        let p = ((2 * j_ideal + 1) as f64 * theta_ideal).sin().powi(2);
        (Some(w), p)
    };
    Ok(GroverPlan {
        n,
        k,
        omega_max,
        theta_max,
        j_ideal,
        theta_ideal,
        omega_ideal,
        convention,
        predicted_success,
    })
}

/// Finds ω with `a_k(ω) = sin(theta_ideal)` on the monotone branch of `a_k`.
///
/// The branch is `[0, ω_max]` for `k ≥ 1`, where `a_k` increases, and
/// `[ω_max, π]` for `k = 0`, where it decreases.
pub fn solve_omega_ideal(n: usize, k: usize, theta_ideal: f64) -> Result<f64> {
    let w_max = omega_max(n, k)?;
    let a_max = raw_amplitude(n, k, w_max);
    let target = theta_ideal.sin();
    if !target.is_finite() || target < 0.0 || target > a_max * (1.0 + 1e-12) {
        return Err(Error::NoSolution { target, max: a_max });
    }
    if target >= a_max {
        return Ok(w_max);
    }
    let (lo, hi, sign) = if k == 0 {
        (w_max, PI, -1.0)
    } else {
        (0.0, w_max, 1.0)
    };
    let f = |w: f64| sign * (raw_amplitude(n, k, w) - target);
    Ok(bisect(f, lo, hi))
}

/// Bisection for an increasing `f` with `f(lo) ≤ 0 ≤ f(hi)`. Runs until the
/// bracket cannot be split further and returns the endpoint with the smaller
/// residual.
fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..2000 {
        let mid = lo + (hi - lo) / 2.0;
        if mid <= lo || mid >= hi {
            break;
        }
        let v = f(mid);
        if v == 0.0 {
            return mid;
        }
        if v < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if f(lo).abs() <= f(hi).abs() {
        lo
    } else {
        hi
    }
}

/// `sin²((2j+1)·θ(ω))`.
pub fn predicted_probability(n: usize, k: usize, omega: f64, j: usize) -> Result<f64> {
    let theta = theta_of_omega(n, k, omega)?;
    Ok(amplified_probability(theta, j))
}

/// `sin²((2j+1)·θ)`.
pub fn amplified_probability(theta: f64, j: usize) -> f64 {
    ((2 * j + 1) as f64 * theta).sin().powi(2)
}

pub fn multi_target_theta(
    n: usize,
    weights: &[usize],
    omega: f64,
    formula: MultiTargetFormula,
) -> Result<f64> {
    if weights.is_empty() {
        return Err(Error::EmptyTargets);
    }
    let mut amps = Vec::with_capacity(weights.len());
    for &k in weights {
        amps.push(amplitude_a(n, k, omega)?);
    }
    let arg = match formula {
        MultiTargetFormula::Linear => amps.iter().sum::<f64>(),
        MultiTargetFormula::RootSumSquare => amps.iter().map(|a| a * a).sum::<f64>().sqrt(),
    };
    if arg > 1.0 + 1e-12 {
        return Err(Error::InfeasibleAngle(arg));
    }
    Ok(arg.min(1.0).asin())
}

/// `C(n, k)` as a float.
pub fn binomial(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

pub fn partition_profile(n: usize, omega: f64) -> Result<PartitionProfile> {
    check_weight(n, 0)?;
    check_omega(omega)?;
    let per_k_amplitude: Vec<f64> = (0..=n).map(|k| raw_amplitude(n, k, omega)).collect();
    let per_k_probability = per_k_amplitude
        .iter()
        .enumerate()
        .map(|(k, a)| binomial(n, k) * a * a)
        .collect();
    Ok(PartitionProfile {
        n,
        omega,
        per_k_amplitude,
        per_k_probability,
    })
}

/// True when a ceil plan lands exactly on π/2.
pub fn is_exact(plan: &GroverPlan) -> bool {
    plan.omega_ideal.is_some()
        && (((2 * plan.j_ideal + 1) as f64) * plan.theta_ideal - FRAC_PI_2).abs() < 1e-15
}
