//! Dense statevector simulation.
//!
//! Qubit 0 is the least-significant bit of a basis index. Printed labels are
//! most-significant-first, so the label `1101` is basis index 13.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::Range;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernels::{self, Mat2};

pub const MAX_QUBITS: usize = 24;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Single-qubit gates understood by [`StateVector::apply_gate`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Gate {
    H,
    X,
    Z,
    Ry(f64),
}

impl Gate {
    pub fn matrix(&self) -> Mat2 {
        match *self {
            Gate::H => {
                let c = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
                [[c, c], [c, -c]]
            }
            Gate::X => [[ZERO, ONE], [ONE, ZERO]],
            Gate::Z => [[ONE, ZERO], [ZERO, -ONE]],
            Gate::Ry(angle) => {
                let (s, c) = (angle / 2.0).sin_cos();
                [
                    [Complex64::new(c, 0.0), Complex64::new(-s, 0.0)],
                    [Complex64::new(s, 0.0), Complex64::new(c, 0.0)],
                ]
            }
        }
    }
}

/// Dense amplitude table over `n_qubits` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// The all-zeros basis state `|0...0⟩`.
    pub fn new_zero(n_qubits: usize) -> Result<Self> {
        check_size(n_qubits)?;
        let mut amps = vec![ZERO; 1 << n_qubits];
        amps[0] = ONE;
        Ok(Self { n_qubits, amps })
    }

    /// Builds a state from raw amplitudes; the caller is responsible for normalization.
    pub fn from_amplitudes(n_qubits: usize, amps: Vec<Complex64>) -> Result<Self> {
        check_size(n_qubits)?;
        if amps.len() != 1 << n_qubits {
            return Err(Error::WidthMismatch {
                expected: 1 << n_qubits,
                actual: amps.len(),
            });
        }
        Ok(Self { n_qubits, amps })
    }

    /// Computational basis state with the given index.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        let mut s = Self::new_zero(n_qubits)?;
        s.check_index(index)?;
        s.amps[0] = ZERO;
        s.amps[index] = ONE;
        Ok(s)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Inner product `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Largest entrywise distance to `other`.
    pub fn max_abs_diff(&self, other: &StateVector) -> f64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn apply_gate(&mut self, gate: Gate, qubit: usize) -> Result<&mut Self> {
        self.check_qubit(qubit)?;
        if let Gate::Ry(angle) = gate {
            if !angle.is_finite() {
                return Err(Error::NonFiniteAngle(angle));
            }
        }
        match gate {
            Gate::Z => {
                let mask = 1 << qubit;
                kernels::scale_where(&mut self.amps, -ONE, |i| i & mask != 0);
            }
            _ => kernels::apply_1q(&mut self.amps, qubit, &gate.matrix()),
        }
        Ok(self)
    }

    /// Controlled phase: multiplies by `e^{i·angle}` where both qubits are 1.
    pub fn apply_cphase(&mut self, angle: f64, control: usize, target: usize) -> Result<&mut Self> {
        self.check_qubit(control)?;
        self.check_qubit(target)?;
        if !angle.is_finite() {
            return Err(Error::NonFiniteAngle(angle));
        }
        let mask = (1 << control) | (1 << target);
        let phase = Complex64::from_polar(1.0, angle);
        kernels::scale_where(&mut self.amps, phase, |i| i & mask == mask);
        Ok(self)
    }

    pub fn apply_swap(&mut self, a: usize, b: usize) -> Result<&mut Self> {
        self.check_qubit(a)?;
        self.check_qubit(b)?;
        if a != b {
            kernels::swap_bits_seq(&mut self.amps, a, b);
        }
        Ok(self)
    }

    /// Negates the amplitudes of exactly the listed basis indices.
    ///
    /// Duplicates in `targets` are ignored, so the operation is always an
    /// involution.
    pub fn apply_phase_flip(&mut self, targets: &[usize]) -> Result<&mut Self> {
        for &t in targets {
            self.check_index(t)?;
        }
        let mut seen = vec![false; self.amps.len()];
        for &t in targets {
            if !seen[t] {
                seen[t] = true;
                self.amps[t] = -self.amps[t];
            }
        }
        Ok(self)
    }

    /// Multiplies every amplitude by -1.
    pub fn apply_global_scale(&mut self) -> &mut Self {
        kernels::scale_where(&mut self.amps, -ONE, |_| true);
        self
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Outcome distribution of the qubits in `register`; outcome bit `t` is qubit `register.start + t`.
    pub fn marginal(&self, register: Range<usize>) -> Result<Vec<f64>> {
        self.check_register(&register)?;
        let width = register.end - register.start;
        let mask = (1usize << width) - 1;
        let mut out = vec![0.0; 1 << width];
        for (i, a) in self.amps.iter().enumerate() {
            out[(i >> register.start) & mask] += a.norm_sqr();
        }
        Ok(out)
    }

    /// Draws `shots` measurement outcomes from a ChaCha8 stream seeded with `seed`.
    ///
    /// Each shot consumes one `f64` from the stream and is resolved by
    /// inverse-CDF lookup, so histograms are reproducible across platforms.
    pub fn sample(&self, shots: u64, seed: u64) -> Result<Histogram> {
        if shots == 0 {
            return Err(Error::ZeroShots);
        }
        let mut cdf = Vec::with_capacity(self.amps.len());
        let mut acc = 0.0;
        for a in &self.amps {
            acc += a.norm_sqr();
            cdf.push(acc);
        }
        let total = acc;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut counts = BTreeMap::new();
        for _ in 0..shots {
            let x = rng.gen::<f64>() * total;
            let idx = cdf.partition_point(|&c| c <= x).min(cdf.len() - 1);
            *counts.entry(idx).or_insert(0u64) += 1;
        }
        Ok(Histogram {
            n_bits: self.n_qubits,
            counts,
        })
    }

    /// Debug dump: one line per basis state, `label re im`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (i, a) in self.amps.iter().enumerate() {
            let _ = writeln!(out, "{} {} {}", basis_label(i, self.n_qubits), a.re, a.im);
        }
        out
    }

    pub(crate) fn check_qubit(&self, qubit: usize) -> Result<()> {
        if qubit >= self.n_qubits {
            return Err(Error::QubitOutOfRange {
                qubit,
                n_qubits: self.n_qubits,
            });
        }
        Ok(())
    }

    fn check_index(&self, index: usize) -> Result<()> {
        if index >= self.amps.len() {
            return Err(Error::IndexOutOfRange {
                index,
                n_qubits: self.n_qubits,
            });
        }
        Ok(())
    }

    fn check_register(&self, r: &Range<usize>) -> Result<()> {
        if r.start >= r.end || r.end > self.n_qubits {
            return Err(Error::BadRegister {
                start: r.start,
                end: r.end,
                n_qubits: self.n_qubits,
            });
        }
        Ok(())
    }
}

fn check_size(n: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::Size(n));
    }
    Ok(())
}

/// Most-significant-first binary label of `index` over `n_bits` bits.
pub fn basis_label(index: usize, n_bits: usize) -> String {
    (0..n_bits)
        .rev()
        .map(|b| if index >> b & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Measurement counts keyed by basis index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Histogram {
    pub n_bits: usize,
    pub counts: BTreeMap<usize, u64>,
}

impl Histogram {
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn count(&self, index: usize) -> u64 {
        self.counts.get(&index).copied().unwrap_or(0)
    }

    pub fn labeled(&self) -> BTreeMap<String, u64> {
        self.counts
            .iter()
            .map(|(&i, &c)| (basis_label(i, self.n_bits), c))
            .collect()
    }
}

/// A computational basis label such as `1101`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BasisPattern {
    n_bits: usize,
    value: usize,
}

impl BasisPattern {
    pub fn new(value: usize, n_bits: usize) -> Result<Self> {
        if n_bits == 0 || n_bits > MAX_QUBITS || value >> n_bits != 0 {
            return Err(Error::BadPattern(format!("{value} in {n_bits} bits")));
        }
        Ok(Self { n_bits, value })
    }

    /// Parses a most-significant-first bit string.
    pub fn parse(bits: &str) -> Result<Self> {
        if bits.is_empty() || bits.len() > MAX_QUBITS {
            return Err(Error::BadPattern(bits.to_string()));
        }
        let mut value = 0usize;
        for ch in bits.chars() {
            value = (value << 1)
                | match ch {
                    '0' => 0,
                    '1' => 1,
                    _ => return Err(Error::BadPattern(bits.to_string())),
                };
        }
        Ok(Self {
            n_bits: bits.len(),
            value,
        })
    }

    pub fn n_bits(&self) -> usize {
        self.n_bits
    }

    pub fn value(&self) -> usize {
        self.value
    }

    pub fn hamming_weight(&self) -> usize {
        self.value.count_ones() as usize
    }

    pub fn label(&self) -> String {
        basis_label(self.value, self.n_bits)
    }
}

impl std::fmt::Display for BasisPattern {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.label())
    }
}
