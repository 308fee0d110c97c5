//! Dichotomy classification of templates and matrices, and the
//! full-homomorphism classifiers.

pub mod fullhom;

pub use crate::polysolve::TwinQuotient;
pub use fullhom::{
    are_twins, classify_fullhom_sandwich, find_full_hom, forbidden_induced_subgraph, is_full_hom,
    is_k3_2k2_p4_free, lift_via_fullhom, point_determining_core, shrink_lists_via_fullhom,
    solve_list_via_fullhom, ForbiddenKind, ForbiddenWitness, FullHomClassification,
    PointDeterminingCore,
};

use crate::decompose::{recognize_with_state, Decomposition, Recognition};
use crate::error::Result;
use crate::graphs::{ColouredGraph, StarMatrix};
use crate::hardness::{certify, HardnessCertificate};
use crate::homsearch::core_of;
use serde::Serialize;

/// Templates up to this size get their core computed alongside the verdict.
pub const CORE_LIMIT: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Verdict {
    #[serde(rename = "P")]
    PolynomialTime,
    #[serde(rename = "NP-complete")]
    NpComplete,
}

/// Core vertices of the template and a retraction onto them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoreSummary {
    pub vertices: Vec<usize>,
    pub retraction: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub verdict: Verdict,
    /// Present exactly for polynomial verdicts.
    pub decomposition: Option<Decomposition>,
    /// Present exactly for NP-complete verdicts.
    pub certificate: Option<HardnessCertificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub core: Option<CoreSummary>,
}

/// Polynomial iff the recognizer accepts; otherwise the cheapest
/// self-contained certificate, or the recognizer's failure state.
pub fn classify(h: &ColouredGraph) -> Result<Classification> {
    let recognition = recognize_with_state(h)?;
    let core = if h.n() <= CORE_LIMIT {
        let c = core_of(h)?;
        Some(CoreSummary {
            vertices: c.vertices,
            retraction: c.retraction,
        })
    } else {
        None
    };
    Ok(match recognition {
        Recognition::Accepted(d) => Classification {
            verdict: Verdict::PolynomialTime,
            decomposition: Some(d),
            certificate: None,
            core,
        },
        Recognition::Rejected(state) => {
            let certificate = certify(h)?.unwrap_or(HardnessCertificate::RecognizerReject(state));
            Classification {
                verdict: Verdict::NpComplete,
                decomposition: None,
                certificate: Some(certificate),
                core,
            }
        }
    })
}

pub fn classify_matrix(m: &StarMatrix) -> Result<Classification> {
    classify(&ColouredGraph::from_matrix(m))
}
