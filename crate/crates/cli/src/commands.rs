//! One function per subcommand. Each validates its input completely
//! before computing and returns the full report at once.

use crate::error::{CliError, CliResult};
use crate::input::{
    parse_instance, parse_json, parse_matrix, parse_template, ListMap, TemplateKind,
};
use edgecsp::classify::{classify, classify_fullhom_sandwich, Verdict};
use edgecsp::decompose::{recognize_with_state, Recognition};
use edgecsp::hardness::{
    certify, siggers_certificate, HardnessCertificate, SIGGERS_CERTIFICATE_LIMIT,
};
use edgecsp::homsearch::{core_of, find_hom};
use edgecsp::polysolve::solve_list_csp;
use edgecsp::sandwich::{solve_list_sandwich, solve_sandwich, SandwichInstance, SearchPolicy};
use edgecsp::{ColouredGraph, Error, SimpleGraph};
use serde_json::{json, Value};

/// Largest instance the `--oracle` fallback will search.
pub const ORACLE_INSTANCE_LIMIT: usize = 64;

/// A finished command: its report and exit status.
#[derive(Debug)]
pub struct Outcome {
    pub report: Value,
    pub text: String,
    pub exit: u8,
}

impl Outcome {
    fn ok(report: Value, text: String) -> Self {
        Outcome {
            report,
            text,
            exit: 0,
        }
    }

    fn decision(yes: bool, report: Value, text: String) -> Self {
        Outcome {
            report,
            text,
            exit: if yes { 0 } else { 1 },
        }
    }
}

fn verdict_word(v: Verdict) -> &'static str {
    match v {
        Verdict::PolynomialTime => "P",
        Verdict::NpComplete => "NP-complete",
    }
}

fn certificate_summary(c: &HardnessCertificate) -> String {
    match c {
        HardnessCertificate::StarOddCycle { arena, cycle, .. } => {
            format!("*-odd-cycle of length {} in {:?}", cycle.len(), arena)
        }
        HardnessCertificate::MonoLoopOddCycle { cycle, colour } => {
            format!("{colour}-odd-cycle {cycle:?} through opposite loops")
        }
        HardnessCertificate::PatternHom { pattern, map } => {
            format!("homomorphism from {pattern}: {map:?}")
        }
        HardnessCertificate::PpOddCycle { formula, cycle } => {
            let atoms: Vec<String> = formula.iter().map(|a| a.to_string()).collect();
            format!(
                "exists z. {} defines a loopless graph with odd cycle {cycle:?}",
                atoms.join(" & ")
            )
        }
        HardnessCertificate::NoSiggers { core, .. } => {
            format!("core {core:?} has no idempotent Siggers polymorphism")
        }
        HardnessCertificate::RecognizerReject(state) => {
            format!("recognizer rejected ({:?})", state.reason)
        }
    }
}

pub fn cmd_classify(input: &str, kind: TemplateKind) -> CliResult<Outcome> {
    let template = parse_template(input, kind)?;
    let c = classify(&template.graph)?;
    let mut text = format!("verdict: {}\n", verdict_word(c.verdict));
    if let Some(d) = &c.decomposition {
        for b in &d.blocks {
            text += &format!("block {:?}: {:?}\n", b.kind, b.vertices);
        }
    }
    if let Some(cert) = &c.certificate {
        text += &format!("certificate: {}\n", certificate_summary(cert));
    }
    Ok(Outcome::ok(serde_json::to_value(&c)?, text))
}

pub fn cmd_solve(
    template: &str,
    instance: &str,
    lists: Option<&str>,
    oracle: bool,
) -> CliResult<Outcome> {
    let t = parse_template(template, TemplateKind::Auto)?.graph;
    t.check_reflexive_complete()?;
    let override_lists: Option<ListMap> = lists.map(parse_json).transpose()?;
    let inst = parse_instance(instance, t.n(), override_lists)?;
    let (witness, route) = match solve_list_csp(&t, &inst) {
        Ok(w) => (w, "polynomial"),
        Err(Error::Intractable | Error::OpenListRegime) if oracle => {
            if inst.n() > ORACLE_INSTANCE_LIMIT {
                return Err(CliError::Input(format!(
                    "instance has {} vertices; the oracle accepts at most {ORACLE_INSTANCE_LIMIT}",
                    inst.n()
                )));
            }
            (find_hom(&inst, &t), "oracle")
        }
        Err(e) => return Err(e.into()),
    };
    let sat = witness.is_some();
    let text = match &witness {
        Some(w) => format!("satisfiable ({route}): {:?}\n", w.map),
        None => format!("unsatisfiable ({route})\n"),
    };
    let report = json!({ "satisfiable": sat, "route": route, "witness": witness });
    Ok(Outcome::decision(sat, report, text))
}

pub fn cmd_sandwich(matrix: &str, instance: &str, oracle: bool) -> CliResult<Outcome> {
    let m = parse_matrix(matrix)?;
    let s: SandwichInstance = parse_json(instance)?;
    let policy = if oracle {
        SearchPolicy::AllowOracle
    } else {
        SearchPolicy::PolynomialOnly
    };
    if oracle && s.n() > ORACLE_INSTANCE_LIMIT {
        return Err(CliError::Input(format!(
            "instance has {} vertices; the oracle accepts at most {ORACLE_INSTANCE_LIMIT}",
            s.n()
        )));
    }
    let w = if s.lists().is_some() {
        solve_list_sandwich(&m, &s, policy)?
    } else {
        solve_sandwich(&m, &s, policy)?
    };
    let sat = w.is_some();
    let text = match &w {
        Some(w) => format!("yes: edges {:?}, partition {:?}\n", w.edges, w.partition),
        None => "no\n".to_string(),
    };
    let report = match w {
        Some(w) => json!({ "satisfiable": true, "edges": w.edges, "partition": w.partition }),
        None => json!({ "satisfiable": false, "edges": null, "partition": null }),
    };
    Ok(Outcome::decision(sat, report, text))
}

pub fn cmd_fullhom(graph: &str) -> CliResult<Outcome> {
    let g: SimpleGraph = parse_json(graph)?;
    let c = classify_fullhom_sandwich(&g);
    let mut text = format!(
        "verdict: {}\npoint-determining core: {:?}\npeeled: {:?}\nresidue: {:?}\n",
        verdict_word(c.verdict),
        c.core.vertices,
        c.peeled,
        c.residue
    );
    if let Some(w) = &c.forbidden {
        text += &format!("induced {:?} on {:?}\n", w.kind, w.vertices);
    }
    Ok(Outcome::ok(serde_json::to_value(&c)?, text))
}

/// Prefers the Siggers-power certificate on small templates, then the
/// cheaper detectors.
pub fn cmd_certify(template: &str) -> CliResult<Outcome> {
    let h = parse_template(template, TemplateKind::Auto)?.graph;
    h.check_reflexive_complete()?;
    let siggers = if h.n() <= SIGGERS_CERTIFICATE_LIMIT && h.star_loop().is_none() {
        siggers_certificate(&h)?
    } else {
        None
    };
    let cert = match siggers {
        Some(c) => Some(c),
        None => certify(&h)?,
    };
    let text = match &cert {
        Some(c) => format!("certificate: {}\n", certificate_summary(c)),
        None => "no certificate found\n".to_string(),
    };
    let found = cert.is_some();
    Ok(Outcome::decision(
        found,
        json!({ "certificate": cert }),
        text,
    ))
}

pub fn cmd_core(template: &str) -> CliResult<Outcome> {
    let h = parse_template(template, TemplateKind::Auto)?.graph;
    let core = core_of(&h)?;
    let text = format!(
        "core vertices: {:?}\nretraction: {:?}\n",
        core.vertices, core.retraction
    );
    let report =
        json!({ "vertices": core.vertices, "retraction": core.retraction, "graph": core.graph });
    Ok(Outcome::ok(report, text))
}

pub fn cmd_decompose(template: &str) -> CliResult<Outcome> {
    let h: ColouredGraph = parse_template(template, TemplateKind::Auto)?.graph;
    Ok(match recognize_with_state(&h)? {
        Recognition::Accepted(d) => {
            let text = d
                .blocks
                .iter()
                .map(|b| format!("block {:?}: {:?}\n", b.kind, b.vertices))
                .collect();
            Outcome::ok(
                json!({ "tractable": true, "decomposition": d, "reject": null }),
                text,
            )
        }
        Recognition::Rejected(state) => {
            let text = format!(
                "no tractable decomposition ({:?}) at {:?}\n",
                state.reason, state.minimal_set
            );
            Outcome::ok(
                json!({ "tractable": false, "decomposition": null, "reject": state }),
                text,
            )
        }
    })
}
