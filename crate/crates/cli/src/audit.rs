//! Exhaustive classification audit over small templates.

use crate::commands::Outcome;
use crate::error::{CliError, CliResult};
use edgecsp::classify::{classify, Verdict};
use edgecsp::graphs::{enumerate_classes, TEMPLATE_ALPHABET};
use edgecsp::hardness::{siggers_certificate, HardnessCertificate, SIGGERS_CERTIFICATE_LIMIT};
use edgecsp::homsearch::{build_wnu_pair, core_of, find_siggers_with_budget, DEFAULT_BUDGET};
use edgecsp::{ColouredGraph, Error};
use rayon::prelude::*;
use serde::Serialize;

/// Largest template size audited without `--force`.
pub const AUDIT_GUARD: usize = 4;

#[derive(Clone, Debug)]
pub struct AuditOptions {
    pub max_n: usize,
    pub jobs: usize,
    pub force: bool,
    /// Largest size at which the Siggers search cross-check runs.
    pub siggers_max_n: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    fn new(name: &'static str, status: Status, detail: Option<String>) -> Self {
        Check {
            name,
            status,
            detail,
        }
    }

    fn expect(name: &'static str, ok: bool, detail: impl FnOnce() -> String) -> Self {
        if ok {
            Check::new(name, Status::Pass, None)
        } else {
            Check::new(name, Status::Fail, Some(detail()))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub code: String,
    pub n: usize,
    pub verdict: Verdict,
    pub evidence: String,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Exception {
    pub code: String,
    pub check: &'static str,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub max_n: usize,
    pub classes: Vec<ClassReport>,
    pub exceptions: Vec<Exception>,
}

impl AuditReport {
    pub fn count(&self, n: usize, verdict: Verdict) -> usize {
        self.classes
            .iter()
            .filter(|c| c.n == n && c.verdict == verdict)
            .count()
    }
}

/// Runs the audit; classes are reported in size and canonical order.
pub fn run_audit(opts: &AuditOptions) -> CliResult<AuditReport> {
    if opts.max_n > AUDIT_GUARD && !opts.force {
        return Err(CliError::Input(format!(
            "--max-n {} exceeds {AUDIT_GUARD}; pass --force",
            opts.max_n
        )));
    }
    let mut templates = Vec::new();
    for n in 1..=opts.max_n {
        templates.extend(enumerate_classes(n, &TEMPLATE_ALPHABET)?);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs.max(1))
        .build()
        .map_err(|e| CliError::Input(format!("cannot start worker pool: {e}")))?;
    let classes = pool.install(|| {
        templates
            .par_iter()
            .map(|h| audit_class(h, opts.siggers_max_n))
            .collect::<CliResult<Vec<_>>>()
    })?;
    let exceptions = classes
        .iter()
        .flat_map(|c| {
            c.checks
                .iter()
                .filter(|k| k.status == Status::Fail)
                .map(|k| Exception {
                    code: c.code.clone(),
                    check: k.name,
                    detail: k.detail.clone().unwrap_or_default(),
                })
        })
        .collect();
    Ok(AuditReport {
        max_n: opts.max_n,
        classes,
        exceptions,
    })
}

fn audit_class(h: &ColouredGraph, siggers_max_n: usize) -> CliResult<ClassReport> {
    let c = classify(h)?;
    let mut checks = Vec::new();
    let dual = classify(&h.dual())?.verdict;
    checks.push(Check::expect("dual_invariant", dual == c.verdict, || {
        format!("dual classified {dual:?}")
    }));

    if h.n() <= siggers_max_n {
        let core = core_of(h)?;
        checks.push(
            match find_siggers_with_budget(&core.graph, true, DEFAULT_BUDGET) {
                Ok(found) => Check::expect(
                    "siggers",
                    found.is_some() == (c.verdict == Verdict::PolynomialTime),
                    || format!("idempotent Siggers on the core: {}", found.is_some()),
                ),
                Err(Error::BudgetExceeded(b)) => {
                    Check::new("siggers", Status::Inconclusive, Some(format!("budget {b}")))
                }
                Err(e) => return Err(e.into()),
            },
        );
    } else {
        checks.push(Check::new("siggers", Status::Skipped, None));
    }

    let evidence = match (&c.decomposition, &c.certificate) {
        (Some(d), _) => {
            let pair = build_wnu_pair(h, d)?;
            checks.push(Check::expect("wnu_pair", pair.verify().is_ok(), || {
                format!("{:?}", pair.verify())
            }));
            if h.star_loop().is_none() && h.n() <= SIGGERS_CERTIFICATE_LIMIT {
                let sig = siggers_certificate(h)?;
                checks.push(Check::expect(
                    "siggers_star_odd_cycle_free",
                    sig.is_none(),
                    || format!("{sig:?}"),
                ));
            } else {
                checks.push(Check::new(
                    "siggers_star_odd_cycle_free",
                    Status::Skipped,
                    None,
                ));
            }
            format!(
                "decomposition: {}",
                d.blocks
                    .iter()
                    .map(|b| format!("{:?}{:?}", b.kind, b.vertices))
                    .collect::<Vec<_>>()
                    .join(" ")
            )
        }
        (None, Some(cert)) => {
            let self_contained = !matches!(cert, HardnessCertificate::RecognizerReject(_));
            checks.push(Check::expect(
                "certificate",
                self_contained && cert.verify(h)?,
                || format!("{cert:?}"),
            ));
            format!("certificate: {}", serde_json::to_string(cert)?)
        }
        (None, None) => unreachable!("classification carries evidence"),
    };
    Ok(ClassReport {
        code: h.canonical_form()?.to_code(),
        n: h.n(),
        verdict: c.verdict,
        evidence,
        checks,
    })
}

pub fn cmd_audit(opts: &AuditOptions, out: Option<&str>) -> CliResult<Outcome> {
    let report = run_audit(opts)?;
    let value = serde_json::to_value(&report)?;
    if let Some(path) = out {
        let text = serde_json::to_string_pretty(&value)? + "\n";
        std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.to_string(),
            source,
        })?;
    }
    let mut text = String::new();
    for n in 1..=opts.max_n {
        let p = report.count(n, Verdict::PolynomialTime);
        let npc = report.count(n, Verdict::NpComplete);
        text += &format!("n={n}: {} classes, {p} P, {npc} NP-complete\n", p + npc);
    }
    text += &format!("exceptions: {}\n", report.exceptions.len());
    for e in &report.exceptions {
        text += &format!("  {} {}: {}\n", e.code, e.check, e.detail);
    }
    let exit = if report.exceptions.is_empty() { 0 } else { 1 };
    Ok(Outcome {
        report: value,
        text,
        exit,
    })
}
