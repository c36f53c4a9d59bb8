//! Subset-sum dictionary: an index register in superposition entangled with a
//! value register holding the sum of the selected array elements.
//!
//! Layout: index qubits `0..d` (bit `j` selects `values[j]`), value qubits
//! `d..d+m`. Sums live in the m-bit two's-complement window.

use std::f64::consts::PI;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::circuits::{CircuitProgram, Op, Superposition};
use crate::error::{Error, Result};
use crate::sv::{StateVector, MAX_QUBITS};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DictionarySpec {
    pub values: Vec<i64>,
    pub m_value: usize,
    pub index_prep: Superposition,
}

impl DictionarySpec {
    pub fn new(values: Vec<i64>, m_value: usize, index_prep: Superposition) -> Result<Self> {
        let spec = Self {
            values,
            m_value,
            index_prep,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn n_index(&self) -> usize {
        self.values.len()
    }

    pub fn n_qubits(&self) -> usize {
        self.n_index() + self.m_value
    }

    pub fn index_register(&self) -> Range<usize> {
        0..self.n_index()
    }

    pub fn value_register(&self) -> Range<usize> {
        self.n_index()..self.n_qubits()
    }

    pub fn validate(&self) -> Result<()> {
        if self.values.is_empty() || self.m_value == 0 || self.n_qubits() > MAX_QUBITS {
            return Err(Error::Size(self.n_qubits()));
        }
        if let Superposition::Binomial(w) = self.index_prep {
            if !(0.0..=PI).contains(&w) {
                return Err(Error::OmegaOutOfRange(w));
            }
        }
        Ok(())
    }

    /// Index-register preparation only.
    pub fn index_program(&self) -> CircuitProgram {
        let mut p = CircuitProgram::new(self.n_qubits(), "index_prep");
        p.ops
            .extend(self.index_register().map(|q| match self.index_prep {
                Superposition::Uniform => Op::H(q),
                Superposition::Binomial(w) => Op::Ry(w, q),
            }));
        p
    }

    /// Full preparation: index superposition, phase-gradient value encoding,
    /// inverse Fourier transform on the value register.
    pub fn program(&self) -> Result<CircuitProgram> {
        self.validate()?;
        let d = self.n_index();
        let m = self.m_value;
        let mut p = self.index_program();
        p.name = "dictionary_prep".into();
        p.ops.extend(self.value_register().map(Op::H));
        let modulus = (1u64 << m) as f64;
        for (j, &a) in self.values.iter().enumerate() {
            let a = a.rem_euclid(1 << m) as f64;
            for t in 0..m {
                // phase 2π·a·2^t/2^m, reduced to [0, 2π)
                let turns = (a * (1u64 << t) as f64 / modulus).fract();
                if turns != 0.0 {
                    p.push(Op::Cp(2.0 * PI * turns, j, d + t))?;
                }
            }
        }
        p.append(&fourier_program(
            self.n_qubits(),
            self.value_register(),
            true,
        )?)?;
        Ok(p)
    }
}

pub fn build_dictionary_state(spec: &DictionarySpec) -> Result<StateVector> {
    spec.program()?.execute()
}

/// Fourier transform on `register`: `|x⟩ ↦ 2^{-m/2} Σ_y e^{2πi·x·y/2^m} |y⟩`
/// with register bit `t` at qubit `register.start + t`.
pub fn fourier_program(
    n_qubits: usize,
    register: Range<usize>,
    inverse: bool,
) -> Result<CircuitProgram> {
    if register.start >= register.end || register.end > n_qubits {
        return Err(Error::BadRegister {
            start: register.start,
            end: register.end,
            n_qubits,
        });
    }
    let qs: Vec<usize> = register.collect();
    let m = qs.len();
    let mut p = CircuitProgram::new(n_qubits, "qft");
    for i in (0..m).rev() {
        p.push(Op::H(qs[i]))?;
        for c in (0..i).rev() {
            p.push(Op::Cp(PI / (1u64 << (i - c)) as f64, qs[c], qs[i]))?;
        }
    }
    for i in 0..m / 2 {
        p.push(Op::Swap(qs[i], qs[m - 1 - i]))?;
    }
    Ok(if inverse { p.inverse() } else { p })
}

pub fn fourier_transform(
    state: &mut StateVector,
    register: Range<usize>,
    inverse: bool,
) -> Result<()> {
    fourier_program(state.n_qubits(), register, inverse)?.run(state)
}

/// Signed reading of an m-bit register value.
pub fn decode_twos_complement(bits: u64, m: usize) -> i64 {
    debug_assert!(bits >> m == 0);
    if bits >> (m - 1) & 1 == 1 {
        bits as i64 - (1i64 << m)
    } else {
        bits as i64
    }
}

/// Reduces `v` into the m-bit two's-complement window.
pub fn wrap_to_window(v: i64, m: usize) -> i64 {
    decode_twos_complement(v.rem_euclid(1 << m) as u64, m)
}

/// Two's-complement window `[-2^{m-1}, 2^{m-1} - 1]`.
pub fn window(m: usize) -> (i64, i64) {
    (-(1i64 << (m - 1)), (1i64 << (m - 1)) - 1)
}

/// Classical subset sum for `index`, reduced to the m-bit window.
pub fn expected_subset_sum(values: &[i64], index: usize, m: usize) -> i64 {
    let s: i64 = values
        .iter()
        .enumerate()
        .filter(|(j, _)| index >> j & 1 == 1)
        .map(|(_, a)| a)
        .sum();
    wrap_to_window(s, m)
}

/// Value-register distribution conditioned on the index register holding `index`.
pub fn conditional_value_distribution(
    state: &StateVector,
    spec: &DictionarySpec,
    index: usize,
) -> Vec<f64> {
    let d = spec.n_index();
    let mut out = vec![0.0; 1 << spec.m_value];
    let mut total = 0.0;
    for (v, slot) in out.iter_mut().enumerate() {
        let p = state.amplitude(v << d | index).norm_sqr();
        *slot = p;
        total += p;
    }
    if total > 0.0 {
        out.iter_mut().for_each(|p| *p /= total);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sv::Gate;
    use num_complex::Complex64;

    fn spec(values: &[i64], m: usize) -> DictionarySpec {
        DictionarySpec::new(values.to_vec(), m, Superposition::Uniform).unwrap()
    }

    // direct O(N^2) DFT on the register, independent of the gate construction
    fn dft(state: &StateVector, register: Range<usize>, inverse: bool) -> StateVector {
        let m = register.end - register.start;
        let dim = 1usize << m;
        let mask = (dim - 1) << register.start;
        let sign = if inverse { -1.0 } else { 1.0 };
        let scale = (dim as f64).sqrt().recip();
        let mut out = vec![Complex64::new(0.0, 0.0); state.len()];
        for (i, a) in state.amplitudes().iter().enumerate() {
            let x = (i & mask) >> register.start;
            let rest = i & !mask;
            for y in 0..dim {
                let phase = sign * 2.0 * PI * (x * y) as f64 / dim as f64;
                out[rest | y << register.start] += a * Complex64::from_polar(scale, phase);
            }
        }
        StateVector::from_amplitudes(state.n_qubits(), out).unwrap()
    }

    fn scrambled(n: usize) -> StateVector {
        let mut s = StateVector::new_zero(n).unwrap();
        for q in 0..n {
            s.apply_gate(Gate::Ry(0.3 + 0.7 * q as f64), q).unwrap();
            s.apply_cphase(0.4 * (q + 1) as f64, q, (q + 1) % n)
                .unwrap();
        }
        s
    }

    #[test]
    fn fourier_matches_dft() {
        for (n, reg) in [(3, 0..3), (5, 1..4), (4, 2..4), (4, 3..4)] {
            for inverse in [false, true] {
                let mut s = scrambled(n);
                let want = dft(&s, reg.clone(), inverse);
                fourier_transform(&mut s, reg.clone(), inverse).unwrap();
                assert!(s.max_abs_diff(&want) < 1e-12, "n={n} reg={reg:?}");
            }
        }
    }

    #[test]
    fn fourier_examples() {
        let orig = scrambled(3);
        let mut s = orig.clone();
        fourier_transform(&mut s, 0..3, false).unwrap();
        fourier_transform(&mut s, 0..3, true).unwrap();
        assert!(s.max_abs_diff(&orig) < 1e-12);

        let mut z = StateVector::new_zero(3).unwrap();
        fourier_transform(&mut z, 0..3, false).unwrap();
        let u = 8f64.sqrt().recip();
        assert!(z
            .amplitudes()
            .iter()
            .all(|a| (a - Complex64::new(u, 0.0)).norm() < 1e-15));

        let mut a = scrambled(2);
        let mut b = a.clone();
        fourier_transform(&mut a, 1..2, false).unwrap();
        b.apply_gate(Gate::H, 1).unwrap();
        assert!(a.max_abs_diff(&b) < 1e-15);

        assert!(fourier_transform(&mut a, 1..3, false).is_err());
    }

    #[test]
    fn decode_examples() {
        assert_eq!(decode_twos_complement(0b10, 2), -2);
        assert_eq!(decode_twos_complement(0b01, 2), 1);
        assert_eq!(decode_twos_complement(0b00, 2), 0);
        assert_eq!(decode_twos_complement(0b11, 2), -1);
        assert_eq!(window(2), (-2, 1));
    }

    #[test]
    fn subset_sum_examples() {
        let v = [1, -1, 1];
        assert_eq!(expected_subset_sum(&v, 0b111, 2), 1);
        assert_eq!(expected_subset_sum(&[5, -7, 3], 0, 4), 0);
        assert_eq!(expected_subset_sum(&v, 0b010, 2), -1);
        assert_eq!(expected_subset_sum(&v, 0b110, 2), 0);
        assert_eq!(expected_subset_sum(&v, 0b101, 2), -2);
    }

    #[test]
    fn dictionary_examples() {
        let sp = spec(&[1, -1, 1], 2);
        let s = build_dictionary_state(&sp).unwrap();
        let c = conditional_value_distribution(&s, &sp, 0b110);
        assert!((c[0] - 1.0).abs() < 1e-12);
        let c = conditional_value_distribution(&s, &sp, 0b101);
        assert!((c[0b10] - 1.0).abs() < 1e-12);
        assert_eq!(decode_twos_complement(0b10, 2), -2);
        let c = conditional_value_distribution(&s, &sp, 0);
        assert!((c[0] - 1.0).abs() < 1e-12);
        let idx = s.marginal(sp.index_register()).unwrap();
        assert!(idx.iter().all(|p| (p - 0.125).abs() < 1e-12));
    }

    #[test]
    fn binomial_index_marginal_preserved() {
        let w = 1.1;
        let sp = DictionarySpec::new(vec![3, -2, 5, 1], 3, Superposition::Binomial(w)).unwrap();
        let s = build_dictionary_state(&sp).unwrap();
        let idx = s.marginal(sp.index_register()).unwrap();
        let prep = sp.index_program().execute().unwrap();
        let want = prep.marginal(sp.index_register()).unwrap();
        for (a, b) in idx.iter().zip(&want) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn spec_validation() {
        assert!(DictionarySpec::new(vec![], 2, Superposition::Uniform).is_err());
        assert!(DictionarySpec::new(vec![1], 0, Superposition::Uniform).is_err());
        assert!(DictionarySpec::new(vec![1; 20], 5, Superposition::Uniform).is_err());
        assert!(DictionarySpec::new(vec![1], 2, Superposition::Binomial(4.0)).is_err());
    }
}
