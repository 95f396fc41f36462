//! Report types emitted by the CLI, with their text renderings.
//!
//! Every report serializes to JSON and parses back to an equal value.

use std::fmt::Write as _;

use entcat::strategy::{Strategy, StrategyReport};
use entcat::verify::VerifyReport;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbReport {
    pub alpha: f64,
    pub n: u32,
    pub p_baseline: f64,
    pub incommensurate: bool,
    pub deterministic: bool,
    /// Binary entropy of `alpha`: Bell pairs per copy in the many-copy limit.
    pub entropy: f64,
}

impl ProbReport {
    pub fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "instance: alpha = {}, N = {}", self.alpha, self.n);
        let _ = writeln!(s, "baseline LOCC probability: {:.6}", self.p_baseline);
        if self.deterministic {
            let _ = writeln!(s, "status: deterministic (alpha^N <= 1/2)");
        } else {
            let _ = writeln!(s, "status: incommensurate: true");
        }
        let _ = writeln!(s, "entropy per copy: {:.6}", self.entropy);
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    Search,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CatalystReport {
    pub alpha: f64,
    pub n: u32,
    pub rank: usize,
    pub method: Method,
    /// Larger squared Schmidt coefficient of a two-qubit catalyst.
    pub c_opt: Option<f64>,
    /// Full catalyst spectrum, non-increasing.
    pub spectrum: Option<Vec<f64>>,
    /// Same value as `p_catalyzed`.
    pub p: f64,
    pub p_catalyzed: f64,
    pub p_baseline: f64,
    pub boost: f64,
    pub deterministic: bool,
    pub converged: bool,
    pub warning: Option<String>,
}

impl CatalystReport {
    pub fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "instance: alpha = {}, N = {}", self.alpha, self.n);
        if self.deterministic {
            let _ = writeln!(s, "deterministic: true (no catalyst needed), p = 1");
            return s;
        }
        let method = match self.method {
            Method::ClosedForm => "closed form",
            Method::Search => "numerical search",
        };
        let _ = writeln!(s, "method: {method}, catalyst rank {}", self.rank);
        match (&self.spectrum, self.c_opt) {
            (_, Some(c)) => {
                let _ = writeln!(s, "c_opt: {c:.6}");
            }
            (Some(spec), None) => {
                let parts: Vec<String> = spec.iter().map(|v| format!("{v:.6}")).collect();
                let _ = writeln!(s, "catalyst spectrum: ({})", parts.join(", "));
            }
            (None, None) => {
                let _ = writeln!(s, "no catalyst improves a single copy");
            }
        }
        let _ = writeln!(s, "p_catalyzed: {:.6}", self.p_catalyzed);
        let _ = writeln!(s, "p_baseline: {:.6}", self.p_baseline);
        let _ = writeln!(s, "boost: {:.6}", self.boost);
        if let Some(w) = &self.warning {
            let _ = writeln!(s, "warning: {w}");
        }
        s
    }
}

pub fn strategy_text(r: &StrategyReport) -> String {
    let mut s = String::new();
    let i = &r.instance;
    let _ = writeln!(s, "instance: alpha = {}, N = {}, m* = {}", i.alpha, i.n, i.m_star);

    let pw = &r.pairwise;
    let _ = writeln!(s, "strategy-1: pairwise catalysis over {} pairs", pw.n_pairs);
    match pw.c_opt {
        Some(c) => {
            let _ = writeln!(s, "  per-pair probability {:.6} (catalyst c = {c:.6})", pw.p_single);
        }
        None => {
            let _ = writeln!(s, "  per-pair probability {:.6} (no catalyst needed)", pw.p_single);
        }
    }
    let _ = writeln!(s, "  m  P(m)");
    for (m, p) in &pw.distribution {
        let _ = writeln!(s, "  {m:<2} {p:.6}");
    }
    let _ = writeln!(s, "  expected Bell pairs {:.6}", pw.expected_bells);
    let _ = writeln!(s, "  s1 P(exactly m*) = {:.6}", r.strategy1_exact_m);
    let _ = writeln!(
        s,
        "  s1 without binomial coefficient = {:.6}",
        r.strategy1_exact_m_no_coefficient
    );

    let plan = &r.strategy2_best;
    let sizes: Vec<String> = plan.sizes.iter().map(u32::to_string).collect();
    let _ = writeln!(s, "strategy-2: partition into m* groups");
    let _ = writeln!(
        s,
        "  s2 {:.6} [({})]",
        plan.joint_probability,
        sizes.join(",")
    );
    for ((size, p), c) in plan.sizes.iter().zip(&plan.per_group).zip(&plan.catalysts) {
        let catalyst = c.map_or_else(|| "none".to_string(), |c| format!("c = {c:.6}"));
        let _ = writeln!(s, "  group of {size}: p = {p:.6}, catalyst {catalyst}");
    }
    let rec = match r.recommended {
        Strategy::Pairwise => "strategy-1 (pairwise)",
        Strategy::Partition => "strategy-2 (partition)",
    };
    let _ = writeln!(s, "recommended: {rec}");
    s
}

pub fn verify_text(r: &VerifyReport) -> String {
    let mut s = String::new();
    for c in &r.checks {
        let verdict = if c.ok() { "pass" } else { "FAIL" };
        let _ = writeln!(s, "{}: {}/{} {verdict}", c.name, c.passed, c.total);
    }
    let _ = writeln!(
        s,
        "overall: {}",
        if r.all_passed() { "pass" } else { "FAIL" }
    );
    s
}
