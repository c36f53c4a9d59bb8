//! Report envelope, CSV writers and float formatting.

use std::collections::BTreeMap;

use binomial_grover::math::{GroverPlan, PartitionProfile};
use binomial_grover::sweep::{AmplitudeRow, CompareRow, IterationRow, ProbabilityRow};
use binomial_grover::RunReport;
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "data", rename_all = "snake_case")]
pub enum Payload {
    Plan(GroverPlan),
    Profile(PartitionProfile),
    Iterations(Vec<IterationRow>),
    Amplitudes(Vec<AmplitudeRow>),
    Probabilities(Vec<ProbabilityRow>),
    Compare(Vec<CompareRow>),
    Run(RunReport),
    Adaptive(Vec<RunReport>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportEnvelope {
    pub schema_version: u32,
    pub command: String,
    pub params: BTreeMap<String, Value>,
    pub result: Payload,
}

impl ReportEnvelope {
    pub fn new(command: &str, params: BTreeMap<String, Value>, result: Payload) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            params,
            result,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("envelope is always serializable") + "\n"
    }
}

/// `x` with `sig` significant digits in plain decimal notation.
pub fn fmt_sig(x: f64, sig: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    let decimals = (sig as i32 - 1 - exp).max(0) as usize;
    let s = format!("{x:.decimals$}");
    // rounding can carry into a new leading digit (9.9999995 -> 10.000000)
    let digits = s
        .chars()
        .filter(|c| c.is_ascii_digit())
        .skip_while(|&c| c == '0')
        .count();
    if digits > sig && decimals > 0 {
        format!("{x:.prec$}", prec = decimals - 1)
    } else {
        s
    }
}

/// Float rendering for CSV cells.
#[derive(Debug, Clone, Copy)]
pub struct Precision(pub usize);

impl Precision {
    pub fn new(full: bool) -> Self {
        Precision(if full { 17 } else { 6 })
    }

    pub fn f(&self, x: f64) -> String {
        fmt_sig(x, self.0)
    }
}

pub fn write_csv(header: &[&str], rows: Vec<Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
}

pub fn iterations_csv(rows: &[IterationRow], with_n: bool) -> String {
    let header: &[&str] = if with_n {
        &["n", "k", "j_uniform", "j_ideal_round", "j_ideal_ceil"]
    } else {
        &["k", "j_uniform", "j_ideal_round", "j_ideal_ceil"]
    };
    let body = rows
        .iter()
        .map(|r| {
            let mut v = vec![r.k, r.j_uniform, r.j_ideal_round, r.j_ideal_ceil];
            if with_n {
                v.insert(0, r.n);
            }
            v.into_iter().map(|x| x.to_string()).collect()
        })
        .collect();
    write_csv(header, body)
}

pub fn amplitudes_csv(rows: &[AmplitudeRow], p: Precision) -> String {
    write_csv(
        &["k", "binomial", "uniform"],
        rows.iter()
            .map(|r| vec![r.k.to_string(), p.f(r.binomial), p.f(r.uniform)])
            .collect(),
    )
}

pub fn probabilities_csv(rows: &[ProbabilityRow], p: Precision) -> String {
    write_csv(
        &["k", "j", "uniform", "binomial_max", "binomial_ideal"],
        rows.iter()
            .map(|r| {
                vec![
                    r.k.to_string(),
                    r.j.to_string(),
                    p.f(r.uniform),
                    p.f(r.binomial_max),
                    p.f(r.binomial_ideal),
                ]
            })
            .collect(),
    )
}

pub fn compare_csv(rows: &[CompareRow], p: Precision) -> String {
    write_csv(
        &["outcome", "uniform", "binomial"],
        rows.iter()
            .map(|r| vec![r.outcome.clone(), p.f(r.uniform), p.f(r.binomial)])
            .collect(),
    )
}

pub fn histogram_csv(report: &RunReport) -> String {
    write_csv(
        &["label", "count"],
        report
            .histogram
            .iter()
            .map(|(l, c)| vec![l.clone(), c.to_string()])
            .collect(),
    )
}

pub fn rounds_csv(rounds: &[RunReport], p: Precision) -> String {
    write_csv(
        &["round", "omega", "iterations", "outcome", "verified"],
        rounds
            .iter()
            .map(|r| {
                vec![
                    r.round.unwrap_or(0).to_string(),
                    r.omega.map(|w| p.f(w)).unwrap_or_default(),
                    r.iterations.to_string(),
                    r.histogram.keys().next().cloned().unwrap_or_default(),
                    r.verified.unwrap_or(false).to_string(),
                ]
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(fmt_sig(0.036956, 6), "0.0369560");
        assert_eq!(fmt_sig(0.0220970869, 6), "0.0220971");
        assert_eq!(fmt_sig(1.0, 6), "1.00000");
        assert_eq!(fmt_sig(123456.7, 6), "123457");
        assert_eq!(fmt_sig(9.9999996, 6), "10.0000");
        assert_eq!(fmt_sig(-0.5, 3), "-0.500");
        assert_eq!(fmt_sig(0.0, 6), "0");
        let full = fmt_sig(std::f64::consts::PI, 17);
        assert_eq!(full.parse::<f64>().unwrap(), std::f64::consts::PI);
    }

    #[test]
    fn csv_header_first() {
        let s = write_csv(&["a", "b"], vec![vec!["1".into(), "2".into()]]);
        assert_eq!(s, "a,b\n1,2\n");
    }
}
