//! Binomial amplitude amplification.
//!
//! A dense statevector simulator ([`sv`]) runs uniform and binomial Grover
//! circuits ([`circuits`]) and a subset-sum dictionary ([`qdict`]); the
//! closed-form planner ([`math`]) predicts what the simulator should produce.
//! [`search`] ties them into end-to-end search runs and [`sweep`] produces
//! the table and sweep rows served by the CLI.
//!
//! With the default `parallel` feature, gate kernels on large states and
//! sweep points run on rayon; results are identical to the sequential build.

pub mod circuits;
pub mod error;
pub mod kernels;
pub mod math;
pub mod par;
pub mod qdict;
pub mod search;
pub mod sv;
pub mod sweep;

pub use circuits::{
    amplification_program, build_binomial_prep, build_diffusion, build_native_prep, build_oracle,
    build_uniform_prep, export_gate_list, grover_iterate, parse_gate_list, reflection_iterate,
    run_amplification, BinomialForm, CircuitProgram, IterateVariant, Op, OracleKind, OracleSpec,
    Pipeline, RegisterPredicate, Superposition,
};
pub use error::{Error, Result};
pub use math::{Convention, GroverPlan, MultiTargetFormula, PartitionProfile};
pub use qdict::DictionarySpec;
pub use search::{AdaptiveSchedule, RunReport, RunStatus, ValuePredicate};
pub use sv::{BasisPattern, Gate, Histogram, StateVector};
