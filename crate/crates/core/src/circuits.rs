//! Gate-level programs: state preparation, oracles, diffusion and Grover iterates.

use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sv::{BasisPattern, Gate, StateVector};

/// One step of a [`CircuitProgram`].
#[derive(Debug, Clone, PartialEq)]
pub enum Op {
    H(usize),
    X(usize),
    Z(usize),
    Ry(f64, usize),
    /// Controlled phase `e^{iφ}` on `|11⟩` of (control, target).
    Cp(f64, usize, usize),
    Swap(usize, usize),
    /// Multi-controlled phase flip, executed directly on the listed basis indices.
    Flip(Vec<usize>),
    /// Global factor -1.
    Neg,
}

impl Op {
    fn qubits(&self) -> Vec<usize> {
        match *self {
            Op::H(q) | Op::X(q) | Op::Z(q) | Op::Ry(_, q) => vec![q],
            Op::Cp(_, a, b) | Op::Swap(a, b) => vec![a, b],
            Op::Flip(_) | Op::Neg => vec![],
        }
    }

    fn inverse(&self) -> Op {
        match self {
            Op::Ry(t, q) => Op::Ry(-t, *q),
            Op::Cp(t, a, b) => Op::Cp(-t, *a, *b),
            other => other.clone(),
        }
    }

    pub fn apply(&self, state: &mut StateVector) -> Result<()> {
        match self {
            Op::H(q) => state.apply_gate(Gate::H, *q).map(drop),
            Op::X(q) => state.apply_gate(Gate::X, *q).map(drop),
            Op::Z(q) => state.apply_gate(Gate::Z, *q).map(drop),
            Op::Ry(t, q) => state.apply_gate(Gate::Ry(*t), *q).map(drop),
            Op::Cp(t, c, q) => state.apply_cphase(*t, *c, *q).map(drop),
            Op::Swap(a, b) => state.apply_swap(*a, *b).map(drop),
            Op::Flip(set) => state.apply_phase_flip(set).map(drop),
            Op::Neg => {
                state.apply_global_scale();
                Ok(())
            }
        }
    }
}

/// An ordered gate list over a fixed number of qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct CircuitProgram {
    pub n_qubits: usize,
    pub ops: Vec<Op>,
    pub name: String,
    pub iterations: usize,
}

impl CircuitProgram {
    pub fn new(n_qubits: usize, name: impl Into<String>) -> Self {
        Self {
            n_qubits,
            ops: Vec::new(),
            name: name.into(),
            iterations: 0,
        }
    }

    pub fn push(&mut self, op: Op) -> Result<()> {
        for q in op.qubits() {
            if q >= self.n_qubits {
                return Err(Error::QubitOutOfRange {
                    qubit: q,
                    n_qubits: self.n_qubits,
                });
            }
        }
        if let Op::Flip(set) = &op {
            if let Some(&bad) = set.iter().find(|&&i| i >> self.n_qubits != 0) {
                return Err(Error::IndexOutOfRange {
                    index: bad,
                    n_qubits: self.n_qubits,
                });
            }
        }
        self.ops.push(op);
        Ok(())
    }

    pub fn append(&mut self, other: &CircuitProgram) -> Result<()> {
        self.check_width(other.n_qubits)?;
        self.ops.extend(other.ops.iter().cloned());
        Ok(())
    }

    pub fn inverse(&self) -> CircuitProgram {
        CircuitProgram {
            n_qubits: self.n_qubits,
            ops: self.ops.iter().rev().map(Op::inverse).collect(),
            name: format!("{}^-1", self.name),
            iterations: self.iterations,
        }
    }

    /// Number of operations; a multi-controlled flip counts as one.
    pub fn gate_count(&self) -> usize {
        self.ops.len()
    }

    pub fn run(&self, state: &mut StateVector) -> Result<()> {
        self.check_width(state.n_qubits())?;
        for op in &self.ops {
            op.apply(state)?;
        }
        Ok(())
    }

    /// Runs the program on `|0...0⟩`.
    pub fn execute(&self) -> Result<StateVector> {
        let mut s = StateVector::new_zero(self.n_qubits)?;
        self.run(&mut s)?;
        Ok(s)
    }

    fn check_width(&self, n: usize) -> Result<()> {
        if n != self.n_qubits {
            return Err(Error::WidthMismatch {
                expected: self.n_qubits,
                actual: n,
            });
        }
        Ok(())
    }
}

/// Predicate on the bits of a contiguous register.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegisterPredicate {
    /// Register holds exactly this value.
    Equals(usize),
    /// Most significant register bit is set (two's-complement sign).
    SignBitSet,
}

impl RegisterPredicate {
    pub fn holds(&self, value: usize, width: usize) -> bool {
        match *self {
            RegisterPredicate::Equals(v) => value == v,
            RegisterPredicate::SignBitSet => value >> (width - 1) & 1 == 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleKind {
    ExactTarget(BasisPattern),
    RegisterPredicate {
        register: Range<usize>,
        predicate: RegisterPredicate,
    },
}

/// Which basis states an oracle marks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleSpec {
    pub n_qubits: usize,
    pub kind: OracleKind,
}

impl OracleSpec {
    pub fn exact(target: BasisPattern) -> Self {
        Self {
            n_qubits: target.n_bits(),
            kind: OracleKind::ExactTarget(target),
        }
    }

    pub fn register(n_qubits: usize, register: Range<usize>, predicate: RegisterPredicate) -> Self {
        Self {
            n_qubits,
            kind: OracleKind::RegisterPredicate {
                register,
                predicate,
            },
        }
    }

    /// Every basis index the oracle negates, in increasing order.
    pub fn flip_set(&self) -> Result<Vec<usize>> {
        let dim = 1usize << self.n_qubits;
        match &self.kind {
            OracleKind::ExactTarget(p) => Ok(vec![p.value()]),
            OracleKind::RegisterPredicate {
                register,
                predicate,
            } => {
                if register.start >= register.end || register.end > self.n_qubits {
                    return Err(Error::BadRegister {
                        start: register.start,
                        end: register.end,
                        n_qubits: self.n_qubits,
                    });
                }
                let width = register.end - register.start;
                let mask = (1usize << width) - 1;
                Ok((0..dim)
                    .filter(|i| predicate.holds((i >> register.start) & mask, width))
                    .collect())
            }
        }
    }
}

/// Uniform superposition `H^{⊗n}`.
pub fn build_uniform_prep(n: usize) -> CircuitProgram {
    let mut p = CircuitProgram::new(n, "uniform_prep");
    p.ops.extend((0..n).map(Op::H));
    p
}

/// Starting superposition of a search register.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", content = "omega", rename_all = "lowercase")]
pub enum Superposition {
    /// `H` on every qubit.
    Uniform,
    /// `RY(ω)` on every qubit (from `|0⟩`), or `B(ω)` after `H` (from the uniform state).
    Binomial(f64),
}

impl Superposition {
    pub fn name(&self) -> &'static str {
        match self {
            Superposition::Uniform => "uniform",
            Superposition::Binomial(_) => "binomial",
        }
    }

    pub fn omega(&self) -> Option<f64> {
        match *self {
            Superposition::Uniform => None,
            Superposition::Binomial(w) => Some(w),
        }
    }
}

/// Algebraic form of the binomial conversion `B(ω)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BinomialForm {
    /// `RY(ω)^{⊗n}·H^{⊗n}`.
    #[default]
    RyAfterH,
    /// `RY(π/2 + ω)^{⊗n}·Z^{⊗n}`.
    RyZ,
}

/// `B(ω)`, which turns the uniform superposition into the binomial one.
pub fn build_binomial_prep(n: usize, omega: f64, form: BinomialForm) -> Result<CircuitProgram> {
    check_omega(omega)?;
    let mut p = CircuitProgram::new(n, "binomial_prep");
    match form {
        BinomialForm::RyAfterH => {
            p.ops.extend((0..n).map(Op::H));
            p.ops.extend((0..n).map(|q| Op::Ry(omega, q)));
        }
        BinomialForm::RyZ => {
            p.ops.extend((0..n).map(Op::Z));
            p.ops
                .extend((0..n).map(|q| Op::Ry(std::f64::consts::FRAC_PI_2 + omega, q)));
        }
    }
    Ok(p)
}

/// `RY(ω)^{⊗n}`: prepares the binomial superposition directly from `|0⟩`.
pub fn build_native_prep(n: usize, omega: f64) -> Result<CircuitProgram> {
    check_omega(omega)?;
    let mut p = CircuitProgram::new(n, "native_prep");
    p.ops.extend((0..n).map(|q| Op::Ry(omega, q)));
    Ok(p)
}

fn check_omega(omega: f64) -> Result<()> {
    if !(0.0..=std::f64::consts::PI).contains(&omega) {
        return Err(Error::OmegaOutOfRange(omega));
    }
    Ok(())
}

/// Oracle program. Exact targets become an X-conjugated multi-controlled Z;
/// register predicates flip their whole flip set in one step.
pub fn build_oracle(spec: &OracleSpec) -> Result<CircuitProgram> {
    let flips = spec.flip_set()?;
    if flips.is_empty() {
        return Err(Error::EmptyFlipSet);
    }
    let n = spec.n_qubits;
    let mut p = CircuitProgram::new(n, "oracle");
    match &spec.kind {
        OracleKind::ExactTarget(target) => {
            let zeros: Vec<usize> = (0..n).filter(|q| target.value() >> q & 1 == 0).collect();
            for &q in &zeros {
                p.push(Op::X(q))?;
            }
            p.push(Op::Flip(vec![(1 << n) - 1]))?;
            for &q in &zeros {
                p.push(Op::X(q))?;
            }
        }
        OracleKind::RegisterPredicate { .. } => p.push(Op::Flip(flips))?,
    }
    Ok(p)
}

/// `D`: negates the all-zeros amplitude.
pub fn build_diffusion(n: usize) -> CircuitProgram {
    let mut p = CircuitProgram::new(n, "diffusion");
    p.ops.push(Op::Flip(vec![0]));
    p
}

/// `-A·D·A†·O` for an arbitrary preparation `A`.
pub fn reflection_iterate(
    prep: &CircuitProgram,
    oracle: &CircuitProgram,
) -> Result<CircuitProgram> {
    let mut g = reflection_iterate_without_sign(prep, oracle)?;
    g.ops.push(Op::Neg);
    Ok(g)
}

/// `A·D·A†·O`, the iterate with the global -1 dropped.
pub fn reflection_iterate_without_sign(
    prep: &CircuitProgram,
    oracle: &CircuitProgram,
) -> Result<CircuitProgram> {
    let mut g = CircuitProgram::new(prep.n_qubits, "grover_iterate");
    g.append(oracle)?;
    g.append(&prep.inverse())?;
    g.append(&build_diffusion(prep.n_qubits))?;
    g.append(prep)?;
    Ok(g)
}

/// Flavour of Grover iterate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum IterateVariant {
    /// `-H D H O`.
    Uniform,
    /// `-H D H B†(ω) O B(ω)`, for a uniform starting state.
    BinomialConjugated(f64),
    /// `-RY(ω) D RY(-ω) O`, for a binomial starting state.
    BinomialNative(f64),
}

pub fn grover_iterate(oracle: &CircuitProgram, variant: IterateVariant) -> Result<CircuitProgram> {
    let n = oracle.n_qubits;
    match variant {
        IterateVariant::Uniform => reflection_iterate(&build_uniform_prep(n), oracle),
        IterateVariant::BinomialNative(omega) => {
            reflection_iterate(&build_native_prep(n, omega)?, oracle)
        }
        IterateVariant::BinomialConjugated(omega) => {
            let b = build_binomial_prep(n, omega, BinomialForm::RyAfterH)?;
            let mut conj = CircuitProgram::new(n, "canonical_oracle");
            conj.append(&b)?;
            conj.append(oracle)?;
            conj.append(&b.inverse())?;
            reflection_iterate(&build_uniform_prep(n), &conj)
        }
    }
}

/// End-to-end amplification routine.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Pipeline {
    /// `G^j·H^{⊗n}`.
    Uniform,
    /// `B(ω)·G(ω)^j·H^{⊗n}` with the conjugated iterate.
    BGjA(f64),
    /// `G(ω)^j·RY(ω)^{⊗n}` with the native iterate.
    GjANative(f64),
}

pub fn amplification_program(
    pipeline: Pipeline,
    oracle: &OracleSpec,
    j: usize,
) -> Result<CircuitProgram> {
    let n = oracle.n_qubits;
    let o = build_oracle(oracle)?;
    let (prep, iterate, tail) = match pipeline {
        Pipeline::Uniform => (
            build_uniform_prep(n),
            grover_iterate(&o, IterateVariant::Uniform)?,
            None,
        ),
        Pipeline::BGjA(w) => (
            build_uniform_prep(n),
            grover_iterate(&o, IterateVariant::BinomialConjugated(w))?,
            Some(build_binomial_prep(n, w, BinomialForm::RyAfterH)?),
        ),
        Pipeline::GjANative(w) => (
            build_native_prep(n, w)?,
            grover_iterate(&o, IterateVariant::BinomialNative(w))?,
            None,
        ),
    };
    let mut p = CircuitProgram::new(n, "amplification");
    p.append(&prep)?;
    for _ in 0..j {
        p.append(&iterate)?;
    }
    if let Some(t) = tail {
        p.append(&t)?;
    }
    p.iterations = j;
    Ok(p)
}

pub fn run_amplification(pipeline: Pipeline, oracle: &OracleSpec, j: usize) -> Result<StateVector> {
    amplification_program(pipeline, oracle, j)?.execute()
}

/// Text form: `#`-prefixed metadata lines, then one `GATE [param] qubits...` per line.
///
/// Angles print in shortest round-trip decimal form (at most 17 significant
/// digits), so [`parse_gate_list`] reproduces the program exactly.
pub fn export_gate_list(program: &CircuitProgram) -> String {
    let mut out = format!(
        "# name {}\n# qubits {}\n# iterations {}\n",
        program.name, program.n_qubits, program.iterations
    );
    for op in &program.ops {
        let line = match op {
            Op::H(q) => format!("H {q}"),
            Op::X(q) => format!("X {q}"),
            Op::Z(q) => format!("Z {q}"),
            Op::Ry(t, q) => format!("RY {t:?} {q}"),
            Op::Cp(t, c, q) => format!("CP {t:?} {c} {q}"),
            Op::Swap(a, b) => format!("SWAP {a} {b}"),
            Op::Flip(set) => {
                let idx: Vec<String> = set.iter().map(|i| i.to_string()).collect();
                format!("FLIP {}", idx.join(" ")).trim_end().to_string()
            }
            Op::Neg => "NEG".to_string(),
        };
        out.push_str(&line);
        out.push('\n');
    }
    out
}

pub fn parse_gate_list(text: &str) -> Result<CircuitProgram> {
    let mut name = String::new();
    let mut n_qubits = None;
    let mut iterations = 0;
    let mut ops = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let err = |msg: &str| Error::Parse {
            line,
            msg: msg.to_string(),
        };
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(meta) = trimmed.strip_prefix('#') {
            let meta = meta.trim_start();
            let (key, value) = meta.split_once(' ').unwrap_or((meta, ""));
            match key {
                "name" => name = value.to_string(),
                "qubits" => n_qubits = Some(value.parse().map_err(|_| err("bad qubit count"))?),
                "iterations" => {
                    iterations = value.parse().map_err(|_| err("bad iteration count"))?
                }
                _ => {}
            }
            continue;
        }
        let mut it = trimmed.split_whitespace();
        let gate = it.next().unwrap_or_default();
        let rest: Vec<&str> = it.collect();
        let q = |i: usize| -> Result<usize> {
            rest.get(i)
                .ok_or_else(|| err("missing operand"))?
                .parse()
                .map_err(|_| err("bad qubit index"))
        };
        let angle = || -> Result<f64> {
            rest.first()
                .ok_or_else(|| err("missing angle"))?
                .parse()
                .map_err(|_| err("bad angle"))
        };
        let arity = |want: usize| -> Result<()> {
            if rest.len() != want {
                return Err(err(&format!("{gate} takes {want} operands")));
            }
            Ok(())
        };
        let op = match gate {
            "H" => arity(1).and_then(|_| Ok(Op::H(q(0)?)))?,
            "X" => arity(1).and_then(|_| Ok(Op::X(q(0)?)))?,
            "Z" => arity(1).and_then(|_| Ok(Op::Z(q(0)?)))?,
            "RY" => arity(2).and_then(|_| Ok(Op::Ry(angle()?, q(1)?)))?,
            "CP" => arity(3).and_then(|_| Ok(Op::Cp(angle()?, q(1)?, q(2)?)))?,
            "SWAP" => arity(2).and_then(|_| Ok(Op::Swap(q(0)?, q(1)?)))?,
            "FLIP" => Op::Flip((0..rest.len()).map(q).collect::<Result<_>>()?),
            "NEG" => arity(0).map(|_| Op::Neg)?,
            other => return Err(err(&format!("unknown gate {other:?}"))),
        };
        ops.push((line, op));
    }
    let n = n_qubits.ok_or(Error::Parse {
        line: 0,
        msg: "missing '# qubits' header".into(),
    })?;
    let mut program = CircuitProgram::new(n, name);
    program.iterations = iterations;
    for (line, op) in ops {
        program.push(op).map_err(|e| Error::Parse {
            line,
            msg: e.to_string(),
        })?;
    }
    Ok(program)
}
