//! Homogeneous sets, the peeling recognizer for tractable decompositions,
//! alternating components and the block taxonomy.

mod blocks;

pub use blocks::{block_kind, classify_block, four_alt, BlockKind};

use crate::error::{Error, Result};
use crate::graphs::ColouredGraph;
use crate::polysolve::solve_pair;
use crate::scc::tarjan;
use crate::vset::VertexSet;
use serde::Serialize;
use std::collections::HashMap;

/// One block of a homogeneous concatenation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Block {
    pub kind: BlockKind,
    pub vertices: Vec<usize>,
}

/// Ordered blocks `A1, ..., Ak` such that each `Ai` is homogeneous in the
/// structure induced by `A1 ∪ ... ∪ Ai`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub blocks: Vec<Block>,
    /// The first block has at most two vertices.
    pub base_ok: bool,
    /// Endomorphism of the input onto the union of the blocks, identity there.
    pub retraction: Vec<usize>,
}

impl Decomposition {
    /// Union of all blocks, ascending.
    pub fn vertices(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .blocks
            .iter()
            .flat_map(|b| b.vertices.iter().copied())
            .collect();
        v.sort_unstable();
        v
    }

    /// Structure induced on [`Decomposition::vertices`].
    pub fn structure(&self, h: &ColouredGraph) -> ColouredGraph {
        h.induced(&self.vertices())
    }

    /// Base of at most two vertices and every later block a single
    /// non-star loop or a reflexive *-edge.
    pub fn is_tractable_shape(&self) -> bool {
        self.base_ok
            && self.blocks.iter().skip(1).all(|b| {
                matches!(
                    b.kind,
                    BlockKind::SingleBlueLoop
                        | BlockKind::SingleRedLoop
                        | BlockKind::MonoStarEdgeRed
                        | BlockKind::MonoStarEdgeBlue
                        | BlockKind::BichromaticStarEdge
                )
            })
    }

    /// Checks that the blocks are disjoint and that each block is
    /// homogeneous over the blocks before it.
    pub fn validate(&self, h: &ColouredGraph) -> Result<()> {
        let mut seen = VertexSet::EMPTY;
        let mut prefix: Vec<usize> = Vec::new();
        for (i, b) in self.blocks.iter().enumerate() {
            if b.vertices.is_empty() {
                return Err(Error::InvalidDecomposition(format!("block {i} is empty")));
            }
            for &v in &b.vertices {
                if v >= h.n() || seen.contains(v) {
                    return Err(Error::InvalidDecomposition(format!(
                        "vertex {v} repeated or out of range"
                    )));
                }
                seen.insert(v);
            }
            prefix.extend(&b.vertices);
            if !homogeneous_within(h, &prefix, &b.vertices) {
                return Err(Error::InvalidDecomposition(format!(
                    "block {i} is not homogeneous over earlier blocks"
                )));
            }
        }
        Ok(())
    }
}

/// Why the recognizer stopped.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RejectReason {
    /// A proper minimal homogeneous set was neither a vertex nor a reflexive *-edge.
    PeelNotVertexOrStarEdge,
    /// The remainder admits no retraction onto at most two vertices.
    RemainderCoreTooLarge,
}

/// The state in which the recognizer rejected.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RejectState {
    pub reason: RejectReason,
    /// Vertices not yet peeled.
    pub remaining: Vec<usize>,
    /// The minimal homogeneous set under consideration.
    pub minimal_set: Vec<usize>,
    /// Blocks peeled before the failure, outermost first.
    pub peeled: Vec<Block>,
}

/// True iff every vertex outside `s` meets each `s` vertex exactly in the
/// colours of that vertex's loop.
pub fn is_homogeneous(h: &ColouredGraph, s: &[usize]) -> Result<bool> {
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    if let Some(&v) = s.iter().find(|&&v| v >= h.n()) {
        return Err(Error::VertexOutOfRange {
            vertex: v,
            n: h.n(),
        });
    }
    let all: Vec<usize> = h.vertices().collect();
    Ok(homogeneous_within(h, &all, s))
}

/// Homogeneity of `s` inside the substructure induced on `scope`.
pub(crate) fn homogeneous_within(h: &ColouredGraph, scope: &[usize], s: &[usize]) -> bool {
    scope
        .iter()
        .filter(|x| !s.contains(x))
        .all(|&x| s.iter().all(|&v| h.colours(x, v) == h.loop_colours(v)))
}

/// Smallest homogeneous set containing `seed`: close under adding `w`
/// whenever some member `u` has `colours(u, w)` different from its loop.
fn homogeneous_closure(h: &ColouredGraph, seed: usize) -> Vec<usize> {
    let n = h.n();
    let mut inside = vec![false; n];
    inside[seed] = true;
    let mut members = vec![seed];
    let mut next = 0;
    while next < members.len() {
        let u = members[next];
        next += 1;
        let lu = h.loop_colours(u);
        for w in 0..n {
            if !inside[w] && h.colours(u, w) != lu {
                inside[w] = true;
                members.push(w);
            }
        }
    }
    members.sort_unstable();
    members
}

/// A minimum-cardinality minimal homogeneous set; ties go to the smallest seed.
pub fn minimal_homogeneous_set(h: &ColouredGraph) -> Vec<usize> {
    let mut best: Option<Vec<usize>> = None;
    for v in h.vertices() {
        let s = homogeneous_closure(h, v);
        if best.as_ref().is_none_or(|b| s.len() < b.len()) {
            if s.len() == 1 {
                return s;
            }
            best = Some(s);
        }
    }
    best.unwrap_or_default()
}

/// Outcome of the recognizer with the failure state kept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Recognition {
    Accepted(Decomposition),
    Rejected(RejectState),
}

/// The polynomial recognizer. Accepts at once on a *-loop; otherwise peels
/// minimal homogeneous sets (each must be a vertex or a reflexive *-edge)
/// and finally asks whether the remainder retracts onto at most two of its
/// vertices. The decomposition describes the image of the retraction.
pub fn recognize_tractable(h: &ColouredGraph) -> Result<Option<Decomposition>> {
    Ok(match recognize_with_state(h)? {
        Recognition::Accepted(d) => Some(d),
        Recognition::Rejected(_) => None,
    })
}

pub fn recognize_with_state(h: &ColouredGraph) -> Result<Recognition> {
    h.check_reflexive_complete()?;
    if let Some(v) = h.star_loop() {
        return Ok(Recognition::Accepted(Decomposition {
            blocks: vec![Block {
                kind: BlockKind::StarLoop,
                vertices: vec![v],
            }],
            base_ok: true,
            retraction: vec![v; h.n()],
        }));
    }
    peel(h, true)
}

/// Decomposition of `h` itself (no retraction): peel as the recognizer
/// does and require the remainder to have at most two vertices.
pub fn decompose_exact(h: &ColouredGraph) -> Result<Option<Decomposition>> {
    h.check_reflexive_complete()?;
    Ok(match peel(h, false)? {
        Recognition::Accepted(d) => Some(d),
        Recognition::Rejected(_) => None,
    })
}

fn peel(h: &ColouredGraph, retract_remainder: bool) -> Result<Recognition> {
    let mut remaining: Vec<usize> = h.vertices().collect();
    let mut peeled: Vec<Block> = Vec::new();
    let mut retraction: Vec<usize> = h.vertices().collect();
    // Remainders met so far, each with its peel count and retraction.
    let mut history: Vec<(Vec<usize>, usize, Vec<usize>)> = Vec::new();
    let failure = loop {
        if retract_remainder {
            fold_dominated(h, &mut remaining, &mut retraction);
            history.push((remaining.clone(), peeled.len(), retraction.clone()));
        }
        let sub = h.induced(&remaining);
        let local = minimal_homogeneous_set(&sub);
        let set: Vec<usize> = local.iter().map(|&i| remaining[i]).collect();
        if set.len() == remaining.len() {
            if !retract_remainder && remaining.len() <= 2 {
                return Ok(Recognition::Accepted(assemble(
                    h, &remaining, peeled, retraction,
                )));
            }
            break RejectState {
                reason: RejectReason::RemainderCoreTooLarge,
                minimal_set: remaining.clone(),
                remaining,
                peeled,
            };
        }
        let kind = block_kind(&h.induced(&set));
        let peelable = match set.len() {
            1 => true,
            2 => h.colours(set[0], set[1]).is_star(),
            _ => false,
        };
        if !peelable || (!retract_remainder && !kind.is_peelable()) {
            break RejectState {
                reason: RejectReason::PeelNotVertexOrStarEdge,
                remaining,
                minimal_set: set,
                peeled,
            };
        }
        remaining.retain(|v| !set.contains(v));
        peeled.push(Block {
            kind,
            vertices: set,
        });
    };
    // Peeling is stuck; accept if some remainder, latest first, retracts
    // onto at most two vertices.
    for (rest, count, mut retraction) in history.into_iter().rev() {
        if let Some(assignment) = retract_to_pair(h, &rest) {
            let image_of: HashMap<usize, usize> = assignment.into_iter().collect();
            for r in retraction.iter_mut() {
                if let Some(&image) = image_of.get(r) {
                    *r = image;
                }
            }
            let base: Vec<usize> = rest.iter().map(|&v| retraction[v]).collect();
            let blocks = failure.peeled[..count].to_vec();
            return Ok(Recognition::Accepted(assemble(
                h, &base, blocks, retraction,
            )));
        }
    }
    Ok(Recognition::Rejected(failure))
}

/// Base block on `base` (deduplicated) followed by the peeled blocks,
/// innermost first.
fn assemble(
    h: &ColouredGraph,
    base: &[usize],
    peeled: Vec<Block>,
    retraction: Vec<usize>,
) -> Decomposition {
    let mut base_vertices = base.to_vec();
    base_vertices.sort_unstable();
    base_vertices.dedup();
    let mut blocks = vec![Block {
        kind: block_kind(&h.induced(&base_vertices)),
        vertices: base_vertices,
    }];
    blocks.extend(peeled.into_iter().rev());
    Decomposition {
        blocks,
        base_ok: true,
        retraction,
    }
}

/// Repeatedly maps a vertex `v` of `remaining` onto another vertex `u`
/// whenever that is an endomorphism, i.e. `v` sees everything in colours
/// that `u` also shows, and drops `v`. Peeled vertices see `u` and `v` in
/// the same colour (their own loop's), so the fold extends to all of `h`.
fn fold_dominated(h: &ColouredGraph, remaining: &mut Vec<usize>, retraction: &mut [usize]) {
    let folds_onto = |v: usize, u: usize, remaining: &[usize]| {
        h.loop_colours(u).contains(h.loop_colours(v))
            && remaining
                .iter()
                .all(|&w| w == v || h.colours(u, w).contains(h.colours(v, w)))
    };
    'fold: loop {
        for &v in remaining.iter().rev() {
            if let Some(&u) = remaining
                .iter()
                .find(|&&u| u != v && folds_onto(v, u, remaining))
            {
                remaining.retain(|&x| x != v);
                for r in retraction.iter_mut().filter(|r| **r == v) {
                    *r = u;
                }
                continue 'fold;
            }
        }
        return;
    }
}

/// A retraction of `h[remaining]` onto at most two of its vertices, trying
/// single vertices first and then pairs in lexicographic order.
fn retract_to_pair(h: &ColouredGraph, remaining: &[usize]) -> Option<Vec<(usize, usize)>> {
    let sub = h.induced(remaining);
    let k = sub.n();
    let all: Vec<usize> = (0..k).collect();
    let candidates = (0..k)
        .map(VertexSet::singleton)
        .chain((0..k).flat_map(|a| {
            (a + 1..k).map(move |b| VertexSet::singleton(a).union(VertexSet::singleton(b)))
        }));
    for pair in candidates {
        // Pinning the pair to itself loses nothing: a map onto the pair that
        // permutes it composes with the inverse automorphism.
        let lists: Vec<VertexSet> = (0..k)
            .map(|v| {
                if pair.contains(v) {
                    VertexSet::singleton(v)
                } else {
                    VertexSet::full(k)
                }
            })
            .collect();
        if let Some(map) = solve_pair(&sub, &all, &lists, &sub, pair) {
            return Some(
                map.into_iter()
                    .enumerate()
                    .map(|(i, t)| (remaining[i], remaining[t]))
                    .collect(),
            );
        }
    }
    None
}

/// Strongly connected components of the alternating digraph, ordered so
/// that every component is homogeneous over the components before it.
/// Components are fixed from the last position backwards, each time taking
/// the sink with the smallest vertex.
pub fn alternating_components(h: &ColouredGraph) -> Result<Vec<Vec<usize>>> {
    let alt = h.alt_digraph()?;
    let (k, comp) = tarjan(alt.digraph.adjacency());
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); k];
    for v in h.vertices() {
        members[comp[v]].push(v);
    }
    let mut out_arcs = vec![VecSet::default(); k];
    for (u, v) in alt.digraph.arcs() {
        if comp[u] != comp[v] {
            out_arcs[comp[u]].insert(comp[v]);
        }
    }
    let mut placed = vec![false; k];
    let mut reversed = Vec::with_capacity(k);
    for _ in 0..k {
        let sink = (0..k)
            .filter(|&c| !placed[c] && out_arcs[c].0.iter().all(|&d| placed[d]))
            .min_by_key(|&c| members[c][0])
            .expect("condensation is acyclic");
        placed[sink] = true;
        reversed.push(std::mem::take(&mut members[sink]));
    }
    reversed.reverse();
    Ok(reversed)
}

#[derive(Clone, Default)]
struct VecSet(Vec<usize>);

impl VecSet {
    fn insert(&mut self, x: usize) {
        if !self.0.contains(&x) {
            self.0.push(x);
        }
    }
}
