//! Runs a [`Command`] and turns library results into [`ReportRecord`]s.

use std::time::Instant;

use anyhow::Context;

use hhkit_core::convexity::{certify, CertificationReport, ConvexityParams, DEFAULT_TOLERANCE};
use hhkit_core::expr::FunctionSpec;
use hhkit_core::hhbounds::{
    hh_gap, theorem_bound, verify_theorem_with, BoundReport, CheckId, TheoremId, VerifyOptions,
    VERIFY_TOLERANCE,
};
use hhkit_core::kernels::HolderExponents;
use hhkit_core::means::{self, PropositionId};
use hhkit_core::quadrature::{integrate_with_guarantee, reference_integrate};
use hhkit_core::Interval;

use crate::args::{Action, Command};
use crate::report::{ReportRecord, Verdict};
use crate::suite;

pub const DEFAULT_P: f64 = 2.0;
pub const DEFAULT_N: i32 = 2;
/// Absolute slack in the mean ordering.
pub const CHAIN_TOLERANCE: f64 = means::CHAIN_TOLERANCE;

/// Runs `f` and stamps its wall time on the record.
pub fn timed(f: impl FnOnce() -> anyhow::Result<ReportRecord>) -> anyhow::Result<ReportRecord> {
    let start = Instant::now();
    let mut r = f()?;
    r.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(r)
}

pub fn dispatch(cmd: &Command) -> anyhow::Result<Vec<ReportRecord>> {
    match cmd.action {
        Action::Certify => Ok(vec![timed(|| run_certify(cmd))?]),
        Action::Bound => run_theorems(cmd, false),
        Action::Verify => run_theorems(cmd, true),
        Action::Integrate => Ok(vec![timed(|| run_integrate(cmd))?]),
        Action::Means => run_means(cmd),
        Action::Suite => suite::run(cmd.grid, cmd.seed),
    }
}

fn spec(cmd: &Command) -> anyhow::Result<FunctionSpec<f64>> {
    let text = cmd.function_text()?;
    FunctionSpec::parse(text, cmd.function_domain()?)
        .with_context(|| format!("function `{text}`"))
}

fn params_inputs(r: ReportRecord, params: &ConvexityParams<f64>) -> ReportRecord {
    r.input("s", params.s())
        .input("alpha", params.alpha())
        .input("m", params.m())
        .input("sense", params.sense())
}

pub fn certification_record(
    f: &FunctionSpec<f64>,
    iv: Interval<f64>,
    params: &ConvexityParams<f64>,
    grid: usize,
    tol: f64,
    report: &CertificationReport<f64>,
) -> ReportRecord {
    let w = report.worst_sample;
    let verdict = if report.is_falsified() {
        Verdict::Falsified
    } else {
        Verdict::NotFalsified
    };
    let r = ReportRecord::new("certify", w.lhs, w.rhs, verdict)
        .input("function", f.text())
        .input("interval", iv);
    params_inputs(r, params)
        .input("grid", grid)
        .input("tol", tol)
        .output("x", w.x)
        .output("y", w.y)
        .output("mu", w.mu)
        .output("relative_margin", report.worst_relative_margin)
        .output("samples", report.samples_checked)
}

fn run_certify(cmd: &Command) -> anyhow::Result<ReportRecord> {
    let f = spec(cmd)?;
    let iv = cmd.interval()?;
    let report = certify(&f, iv, &cmd.params, cmd.grid, cmd.tol)?;
    Ok(certification_record(&f, iv, &cmd.params, cmd.grid, cmd.tol, &report))
}

/// Record for a theorem or proposition report. `failure` is the verdict used
/// when the inequality fails although its hypothesis was not refuted.
pub fn bound_record(report: &BoundReport<f64>, failure: Verdict) -> ReportRecord {
    let verdict = if report.holds {
        Verdict::Holds
    } else if report.hypothesis_certified == Some(false) {
        Verdict::NotApplicable
    } else {
        failure
    };
    let mut r = ReportRecord::new(report.check.to_string(), report.lhs_gap, report.rhs_bound, verdict);
    r.margin = report.margin;
    for (k, v) in report.inputs.pairs() {
        r = r.input(k, v);
    }
    if let Some(h) = report.hypothesis_certified {
        r = r.output("hypothesis_certified", h);
    }
    r
}

fn holder(id: TheoremId, p: Option<f64>) -> anyhow::Result<Option<HolderExponents<f64>>> {
    Ok(if id.needs_holder() {
        Some(HolderExponents::new(p.unwrap_or(DEFAULT_P))?)
    } else {
        None
    })
}

fn run_theorems(cmd: &Command, verify: bool) -> anyhow::Result<Vec<ReportRecord>> {
    let f = spec(cmd)?;
    let iv = cmd.interval()?;
    let ids = match cmd.theorem {
        Some(id) => vec![id],
        None => TheoremId::ALL.to_vec(),
    };
    let options = VerifyOptions {
        grid_n: cmd.grid,
        certify_tolerance: DEFAULT_TOLERANCE,
    };
    ids.into_iter()
        .map(|id| {
            timed(|| {
                let h = holder(id, cmd.p)?;
                if verify {
                    let report = verify_theorem_with(id, &f, iv, &cmd.params, h.as_ref(), &options)?;
                    Ok(bound_record(&report, Verdict::Violation))
                } else {
                    let rhs = theorem_bound(id, &f, iv, &cmd.params, h.as_ref())?;
                    let lhs = hh_gap(&f, iv)?;
                    let verdict = if rhs - lhs >= -VERIFY_TOLERANCE {
                        Verdict::Holds
                    } else {
                        Verdict::Exceeds
                    };
                    let mut r = ReportRecord::new(CheckId::Theorem(id).to_string(), lhs, rhs, verdict)
                        .input("function", f.text())
                        .input("interval", iv);
                    r = params_inputs(r, &cmd.params);
                    if let Some(h) = h {
                        r = r.input("p", h.p());
                    }
                    Ok(r)
                }
            })
        })
        .collect()
}

/// Integrates with a guarantee and compares against the reference integral.
///
/// The checked inequality is `|S - ∫f| ≤ min(bound_p4, bound_p5)`.
pub fn integration_record(
    f: &FunctionSpec<f64>,
    iv: Interval<f64>,
    tol: f64,
    s: f64,
    p: f64,
) -> anyhow::Result<ReportRecord> {
    let q = integrate_with_guarantee(f, iv, tol, s, p)?;
    let exact = reference_integrate(f, iv, (tol / 100.0).max(1e-14))?;
    let err = (q.value - exact).abs();
    let verdict = if err <= q.bound() + VERIFY_TOLERANCE {
        Verdict::Holds
    } else if q.hypothesis_certified {
        Verdict::Violation
    } else {
        Verdict::NotApplicable
    };
    Ok(ReportRecord::new("integrate", err, q.bound(), verdict)
        .input("function", f.text())
        .input("interval", iv)
        .input("tol", tol)
        .input("s", s)
        .input("p", p)
        .output("value", q.value)
        .output("reference", exact)
        .output("n", q.n)
        .output("bound", q.bound())
        .output("bound_p4", q.bound_p4)
        .output("bound_p5", q.bound_p5)
        .output("hypothesis_certified", q.hypothesis_certified))
}

fn run_integrate(cmd: &Command) -> anyhow::Result<ReportRecord> {
    let f = spec(cmd)?;
    integration_record(
        &f,
        cmd.interval()?,
        cmd.tol,
        cmd.params.s(),
        cmd.p.unwrap_or(DEFAULT_P),
    )
}

/// `H ≤ G ≤ L ≤ I ≤ A` for one pair: `lhs = H`, `rhs = A`, and the margin is
/// the smallest step along the chain.
pub fn chain_record(a: f64, b: f64, p: Option<f64>) -> anyhow::Result<ReportRecord> {
    let c = means::mean_chain_check(a, b)?;
    let chain = [c.harmonic, c.geometric, c.logarithmic, c.identric, c.arithmetic];
    let step = chain
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::INFINITY, f64::min);
    let verdict = if c.holds { Verdict::Holds } else { Verdict::Violation };
    let mut r = ReportRecord::new("chain", c.harmonic, c.arithmetic, verdict)
        .input("a", a)
        .input("b", b)
        .output("H", c.harmonic)
        .output("G", c.geometric)
        .output("L", c.logarithmic)
        .output("I", c.identric)
        .output("A", c.arithmetic);
    r.margin = step;
    if let Some(p) = p {
        r = r.input("p", p).output("L_p", means::p_logarithmic(a, b, p)?);
    }
    Ok(r)
}

/// P1 failures are violations; P2 and P3 are checked as printed and their
/// failures are findings.
pub fn proposition_record(
    id: PropositionId,
    a: f64,
    b: f64,
    p: f64,
    n: Option<i32>,
) -> anyhow::Result<ReportRecord> {
    let h = HolderExponents::new(p)?;
    let report = means::proposition_check(id, a, b, &h, n)?;
    let failure = if id == PropositionId::P1 {
        Verdict::Violation
    } else {
        Verdict::Finding
    };
    Ok(bound_record(&report, failure))
}

fn run_means(cmd: &Command) -> anyhow::Result<Vec<ReportRecord>> {
    let (a, b) = cmd.pair.context("--interval is required")?;
    let mut records = vec![timed(|| chain_record(a, b, cmd.p))?];
    if a < b {
        let p = cmd.p.unwrap_or(DEFAULT_P);
        for id in PropositionId::ALL {
            let n = (id == PropositionId::P3).then(|| cmd.n.unwrap_or(DEFAULT_N));
            records.push(timed(|| proposition_record(id, a, b, p, n))?);
        }
    }
    Ok(records)
}
