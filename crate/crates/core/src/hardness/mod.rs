//! NP-hardness evidence: *-odd-cycles, monochromatic odd cycles, pattern
//! homomorphisms and certificates found in the Siggers and cyclic powers.
//!
//! Every certificate can be re-checked with [`HardnessCertificate::verify`].

mod patterns;
mod ppdef;

pub use patterns::{
    five_a, four_a, four_b, four_c, four_d, h3, pattern, pattern_library, star_path, three_a,
    three_b, three_c, three_d, Pattern,
};
pub use ppdef::{find_pp_odd_cycle, satisfies as pp_satisfies, verify_pp_odd_cycle, Atom, Var};

use crate::decompose::{recognize_with_state, Recognition, RejectState};
use crate::error::{Error, Result};
use crate::graphs::{ColouredGraph, Colours, QuotientPower};
use crate::homsearch::{
    core_of, find_hom, find_siggers_with_budget, ListCspInstance, DEFAULT_BUDGET,
};
use serde::Serialize;
use std::collections::VecDeque;

/// Structure in which a cycle certificate lives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Arena {
    Template,
    Siggers,
    Cyclic(usize),
}

impl Arena {
    fn build(self, h: &ColouredGraph) -> Result<Option<QuotientPower>> {
        match self {
            Arena::Template => Ok(None),
            Arena::Siggers => h.siggers_power().map(Some),
            Arena::Cyclic(p) => h.cyclic_power(p).map(Some),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HardnessCertificate {
    /// A closed walk of odd length along *-edges; a single vertex stands
    /// for a *-loop. In a quotient arena the vertices are class ids and
    /// `representatives` lists the lexicographically least tuple of each.
    StarOddCycle {
        arena: Arena,
        cycle: Vec<usize>,
        representatives: Vec<Vec<usize>>,
    },
    /// An odd cycle of `colour` edges through vertices whose loops carry
    /// only the other colour.
    MonoLoopOddCycle { cycle: Vec<usize>, colour: char },
    /// A homomorphism from a library pattern.
    PatternHom { pattern: String, map: Vec<usize> },
    /// A formula `phi(x, y) = exists z. atoms` whose symmetrised relation
    /// is loopless and contains the odd cycle `cycle`, so `h` pp-defines a
    /// loopless non-bipartite graph.
    PpOddCycle {
        formula: Vec<Atom>,
        cycle: Vec<usize>,
    },
    /// `retraction` maps `h` onto the core `core`, and exhaustive search
    /// finds no idempotent Siggers polymorphism of that core.
    NoSiggers {
        core: Vec<usize>,
        retraction: Vec<usize>,
    },
    /// The recognizer's failure state; evidence only in combination with
    /// the dichotomy, not a self-contained proof.
    RecognizerReject(RejectState),
}

impl HardnessCertificate {
    /// Re-derives the certificate's claims against `h`.
    pub fn verify(&self, h: &ColouredGraph) -> Result<bool> {
        Ok(match self {
            HardnessCertificate::StarOddCycle {
                arena,
                cycle,
                representatives,
            } => {
                let q = arena.build(h)?;
                let graph = q.as_ref().map_or(h, |q| &q.graph);
                let reps_ok = match &q {
                    None => representatives.is_empty(),
                    Some(q) => {
                        representatives.len() == cycle.len()
                            && cycle.iter().zip(representatives).all(|(&c, t)| {
                                c < q.n_classes()
                                    && t.len() == q.space.arity()
                                    && q.class_of_tuple(t) == c
                            })
                    }
                };
                reps_ok && is_closed_walk(graph, cycle, Colours::STAR)
            }
            HardnessCertificate::MonoLoopOddCycle { cycle, colour } => {
                let c = match colour {
                    'R' => Colours::RED,
                    'B' => Colours::BLUE,
                    _ => return Ok(false),
                };
                cycle
                    .iter()
                    .all(|&v| v < h.n() && h.loop_colours(v) == c.swapped())
                    && is_closed_walk(h, cycle, c)
            }
            HardnessCertificate::PatternHom { pattern: id, map } => match pattern(id) {
                Some(p) => {
                    map.len() == p.graph.n()
                        && map.iter().all(|&v| v < h.n())
                        && p.graph.is_hom(h, map)
                }
                None => false,
            },
            HardnessCertificate::PpOddCycle { formula, cycle } => {
                verify_pp_odd_cycle(h, formula, cycle)
            }
            HardnessCertificate::NoSiggers { core, retraction } => {
                let onto = retraction.len() == h.n()
                    && retraction.iter().all(|v| core.binary_search(v).is_ok())
                    && core.iter().all(|&v| retraction.get(v) == Some(&v))
                    && core.windows(2).all(|w| w[0] < w[1])
                    && h.is_hom(h, retraction);
                if !onto {
                    return Ok(false);
                }
                let g = h.induced(core);
                core_of(&g)?.vertices.len() == g.n()
                    && find_siggers_with_budget(&g, true, DEFAULT_BUDGET)?.is_none()
            }
            HardnessCertificate::RecognizerReject(state) => {
                matches!(recognize_with_state(h)?, Recognition::Rejected(s) if &s == state)
            }
        })
    }
}

/// Odd length and every consecutive pair (closing pair included) carries `c`.
fn is_closed_walk(g: &ColouredGraph, cycle: &[usize], c: Colours) -> bool {
    let k = cycle.len();
    k % 2 == 1
        && cycle.iter().all(|&v| v < g.n())
        && (0..k).all(|i| g.colours(cycle[i], cycle[(i + 1) % k]).contains(c))
}

/// An odd cycle in the graph on `vertices` whose edges are the pairs
/// carrying `c`; loops are ignored.
fn odd_cycle(g: &ColouredGraph, vertices: &[usize], c: Colours) -> Option<Vec<usize>> {
    let n = g.n();
    let mut inside = vec![false; n];
    for &v in vertices {
        inside[v] = true;
    }
    let mut depth = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    for &s in vertices {
        if depth[s] != usize::MAX {
            continue;
        }
        depth[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for w in g.neighbours(u, c) {
                if !inside[w] {
                    continue;
                }
                if depth[w] == usize::MAX {
                    depth[w] = depth[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if depth[w] == depth[u] {
                    // Equal depths: climb to the common ancestor.
                    let (mut a, mut b) = (u, w);
                    let (mut left, mut right) = (vec![a], vec![b]);
                    while a != b {
                        a = parent[a];
                        b = parent[b];
                        left.push(a);
                        right.push(b);
                    }
                    right.pop();
                    left.reverse();
                    left.extend(right);
                    return Some(left);
                }
            }
        }
    }
    None
}

/// A *-odd-cycle of `g`, preferring a *-loop.
fn star_odd_cycle_in(g: &ColouredGraph) -> Option<Vec<usize>> {
    if let Some(v) = g.star_loop() {
        return Some(vec![v]);
    }
    let all: Vec<usize> = g.vertices().collect();
    odd_cycle(g, &all, Colours::STAR)
}

/// A *-loop of `h`, else an odd cycle of *-edges.
pub fn find_star_odd_cycle(h: &ColouredGraph) -> Option<HardnessCertificate> {
    star_odd_cycle_in(h).map(|cycle| HardnessCertificate::StarOddCycle {
        arena: Arena::Template,
        cycle,
        representatives: Vec::new(),
    })
}

/// An odd cycle of red edges among blue-looped vertices, else of blue
/// edges among red-looped vertices.
pub fn find_mono_loop_odd_cycle(h: &ColouredGraph) -> Result<Option<HardnessCertificate>> {
    h.check_no_star_loop()?;
    for colour in [Colours::RED, Colours::BLUE] {
        let side: Vec<usize> = h
            .vertices()
            .filter(|&v| h.loop_colours(v) == colour.swapped())
            .collect();
        if let Some(cycle) = odd_cycle(h, &side, colour) {
            return Ok(Some(HardnessCertificate::MonoLoopOddCycle {
                cycle,
                colour: colour.symbol(),
            }));
        }
    }
    Ok(None)
}

/// The first library pattern (in library order) that maps into `h`.
pub fn find_pattern_hom(h: &ColouredGraph) -> Result<Option<HardnessCertificate>> {
    h.check_reflexive()?;
    h.check_no_star_loop()?;
    Ok(pattern_library().into_iter().find_map(|p| {
        let inst = ListCspInstance::unrestricted(p.graph.clone(), h.n());
        find_hom(&inst, h).map(|hom| HardnessCertificate::PatternHom {
            pattern: p.id,
            map: hom.map,
        })
    }))
}

fn quotient_certificate(h: &ColouredGraph, arena: Arena) -> Result<Option<HardnessCertificate>> {
    h.check_no_star_loop()?;
    let q = arena.build(h)?.expect("quotient arena");
    Ok(
        star_odd_cycle_in(&q.graph).map(|cycle| HardnessCertificate::StarOddCycle {
            arena,
            representatives: cycle.iter().map(|&c| q.representative_tuple(c)).collect(),
            cycle,
        }),
    )
}

/// A *-loop or *-odd-cycle in the Siggers power of `h`.
pub fn siggers_certificate(h: &ColouredGraph) -> Result<Option<HardnessCertificate>> {
    quotient_certificate(h, Arena::Siggers)
}

/// A *-loop or *-odd-cycle in the `p`-ary cyclic power, `p` a prime above `|h|`.
pub fn cyclic_certificate(h: &ColouredGraph, p: usize) -> Result<Option<HardnessCertificate>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p <= h.n() {
        return Err(Error::PrimeTooSmall { p, n: h.n() });
    }
    quotient_certificate(h, Arena::Cyclic(p))
}

pub(crate) fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Largest template for which [`certify`] tries the Siggers power.
pub const SIGGERS_CERTIFICATE_LIMIT: usize = 6;

/// The first certificate found among *-odd-cycles, monochromatic odd
/// cycles, pattern homomorphisms, (for small templates) the Siggers
/// power, pp-defined odd cycles and, for small templates, the absence of
/// a Siggers polymorphism on the core. `None` for templates with a
/// *-loop, which are tractable, and when every search comes up empty.
pub fn certify(h: &ColouredGraph) -> Result<Option<HardnessCertificate>> {
    h.check_reflexive()?;
    if h.star_loop().is_some() {
        return Ok(None);
    }
    if let Some(c) = find_star_odd_cycle(h) {
        return Ok(Some(c));
    }
    if let Some(c) = find_mono_loop_odd_cycle(h)? {
        return Ok(Some(c));
    }
    if let Some(c) = find_pattern_hom(h)? {
        return Ok(Some(c));
    }
    if h.n() <= SIGGERS_CERTIFICATE_LIMIT {
        if let Some(c) = siggers_certificate(h)? {
            return Ok(Some(c));
        }
    }
    if let Some((formula, cycle)) = find_pp_odd_cycle(h) {
        return Ok(Some(HardnessCertificate::PpOddCycle { formula, cycle }));
    }
    if h.n() <= SIGGERS_CERTIFICATE_LIMIT {
        return no_siggers_certificate(h);
    }
    Ok(None)
}

/// The core of `h` when it has no idempotent Siggers polymorphism;
/// `None` if one exists or the search budget runs out.
pub fn no_siggers_certificate(h: &ColouredGraph) -> Result<Option<HardnessCertificate>> {
    let core = core_of(h)?;
    match find_siggers_with_budget(&core.graph, true, DEFAULT_BUDGET) {
        Ok(None) => Ok(Some(HardnessCertificate::NoSiggers {
            core: core.vertices,
            retraction: core.retraction,
        })),
        Ok(Some(_)) | Err(Error::BudgetExceeded(_)) => Ok(None),
        Err(e) => Err(e),
    }
}
