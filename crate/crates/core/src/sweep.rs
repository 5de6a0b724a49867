//! Parameter sweeps: construct and verify every admissible tuple in a range.

use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::assemble::construct;
use crate::build::Claim;
use crate::error::Error;
use crate::params::Parameters;

/// Inclusive bounds on `m, n, s, k`. Only even `s, k` are enumerated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRange {
    pub m: RangeInclusive<u64>,
    pub n: RangeInclusive<u64>,
    pub s: RangeInclusive<u64>,
    pub k: RangeInclusive<u64>,
}

impl SweepRange {
    /// Every `(m, n, s, k, t)` with `s, k` even, `4 <= s <= n`, `4 <= k <= m`,
    /// `ms = nk`, and `t | 2ms`, in lexicographic order.
    pub fn tuples(&self) -> Vec<Parameters> {
        let mut out = Vec::new();
        for m in self.m.clone() {
            for n in self.n.clone() {
                for s in self.s.clone().filter(|s| s % 2 == 0 && *s >= 4 && s <= &n) {
                    for k in self.k.clone().filter(|k| k % 2 == 0 && *k >= 4 && k <= &m) {
                        if m * s != n * k {
                            continue;
                        }
                        let two_ms = 2 * m * s;
                        for t in (1..=two_ms).filter(|t| two_ms % t == 0) {
                            out.push(Parameters::derive(m, n, s, k, t).expect("admissible tuple"));
                        }
                    }
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Outcome {
    Pass,
    Fail(String),
    /// Excluded by a parity obstruction or a necessary condition.
    NonExistent,
    /// `m, n` both odd with `s, k = 2 (mod 4)`.
    Open,
}

impl Outcome {
    pub fn label(&self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail(_) => "fail",
            Outcome::NonExistent => "nonexistent",
            Outcome::Open => "open",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub params: Parameters,
    pub trace: Vec<String>,
    pub outcome: Outcome,
    #[serde(skip)]
    pub claims: Vec<Claim>,
    pub millis: u128,
}

pub fn run_one(p: &Parameters) -> SweepRow {
    let start = Instant::now();
    let (trace, outcome, claims) = match construct(p) {
        Ok(c) => (c.trace, Outcome::Pass, c.claims),
        Err(Error::NonExistent(_)) => (Vec::new(), Outcome::NonExistent, Vec::new()),
        Err(Error::OpenCase { .. }) => (Vec::new(), Outcome::Open, Vec::new()),
        Err(e) => (Vec::new(), Outcome::Fail(e.to_string()), Vec::new()),
    };
    SweepRow {
        params: *p,
        trace,
        outcome,
        claims,
        millis: start.elapsed().as_millis(),
    }
}

/// Runs every tuple in parallel; rows come back in enumeration order.
pub fn run_sweep(range: &SweepRange) -> Vec<SweepRow> {
    range.tuples().par_iter().map(run_one).collect()
}

/// True iff no row failed.
pub fn all_passed(rows: &[SweepRow]) -> bool {
    rows.iter().all(|r| !matches!(r.outcome, Outcome::Fail(_)))
}

/// CSV with columns `m,n,s,k,t,branch,pass,millis`. Branch ids are joined by `;`.
pub fn report_csv(rows: &[SweepRow], timing: bool) -> String {
    let mut out = String::from("m,n,s,k,t,branch,pass,millis\n");
    for r in rows {
        let p = &r.params;
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            p.m(),
            p.n(),
            p.s(),
            p.k(),
            p.t(),
            r.trace.join(";"),
            r.outcome.label(),
            if timing { r.millis } else { 0 }
        );
    }
    out
}
