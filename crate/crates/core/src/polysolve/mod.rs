//! Polynomial-time solving of list CSPs for templates with a tractable
//! homogeneous decomposition.
//!
//! Blocks are stripped from the top of the decomposition one at a time;
//! each strip either fixes instance vertices to block vertices (recorded in
//! a [`ReductionLog`]) or removes block vertices from lists. What remains
//! maps into a base of at most two vertices and is settled by 2-SAT.

mod base2;
mod strip;

pub use base2::solve_base2;
pub(crate) use base2::solve_pair;
pub use strip::{
    alternating_reach, strip_bi_star_edge, strip_homogeneous_vertex, strip_mono_star_edge,
    AlternatingReach,
};

use crate::decompose::{decompose_exact, recognize_tractable, BlockKind, Decomposition};
use crate::error::{Error, Result};
use crate::graphs::ColouredGraph;
use crate::homsearch::{find_hom, Homomorphism, ListCspInstance};
use crate::vset::VertexSet;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Reason {
    HomVertex,
    MonoStarEdge,
    BiStarEdge,
    Base,
}

/// Instance vertices fixed by one reduction, as `(vertex, image)` pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionStep {
    pub forced: Vec<(usize, usize)>,
    pub reason: Reason,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ReductionLog {
    pub steps: Vec<ReductionStep>,
}

impl ReductionLog {
    /// Total map assembled from the steps, if they cover `n` vertices.
    pub fn assemble(&self, n: usize) -> Option<Vec<usize>> {
        let mut map = vec![None; n];
        for &(v, t) in self.steps.iter().flat_map(|s| &s.forced) {
            map[v] = Some(t);
        }
        map.into_iter().collect()
    }
}

/// Template vertices still available to the reductions.
#[derive(Clone, Copy, Debug)]
pub struct Scope<'a> {
    pub template: &'a ColouredGraph,
    pub vertices: VertexSet,
}

/// An instance under reduction: the original graph with shrinking lists
/// and a set of vertices still to be assigned.
#[derive(Clone, Debug)]
pub struct Residual<'a> {
    graph: &'a ColouredGraph,
    lists: Vec<VertexSet>,
    alive: Vec<bool>,
}

impl<'a> Residual<'a> {
    pub fn new(inst: &'a ListCspInstance) -> Self {
        Residual {
            graph: inst.graph(),
            lists: inst.lists().to_vec(),
            alive: vec![true; inst.n()],
        }
    }

    pub fn graph(&self) -> &'a ColouredGraph {
        self.graph
    }

    pub fn is_alive(&self, v: usize) -> bool {
        self.alive[v]
    }

    pub fn alive(&self) -> &[bool] {
        &self.alive
    }

    pub fn alive_vertices(&self) -> Vec<usize> {
        (0..self.alive.len()).filter(|&v| self.alive[v]).collect()
    }

    pub fn list(&self, v: usize) -> VertexSet {
        self.lists[v]
    }

    pub fn lists(&self) -> &[VertexSet] {
        &self.lists
    }

    pub fn restrict_lists(&mut self, scope: VertexSet) {
        for l in &mut self.lists {
            *l = l.intersect(scope);
        }
    }

    pub fn has_empty_list(&self) -> bool {
        self.alive_vertices()
            .into_iter()
            .any(|v| self.lists[v].is_empty())
    }

    pub(crate) fn delete(&mut self, v: usize) {
        self.alive[v] = false;
    }

    pub(crate) fn remove_value(&mut self, v: usize, t: usize) {
        self.lists[v].remove(t);
    }
}

/// Result of running the reductions to completion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Reduction {
    pub witness: Option<Homomorphism>,
    pub log: ReductionLog,
}

/// Solves `inst` over `template` restricted to the vertices of `d`, which
/// must be a decomposition of (a substructure of) `template` whose later
/// blocks can be stripped.
pub fn solve_with_decomposition(
    template: &ColouredGraph,
    inst: &ListCspInstance,
    d: &Decomposition,
) -> Result<Reduction> {
    inst.check_lists(template.n())?;
    d.validate(template)?;
    if d.blocks.first().is_none_or(|b| b.vertices.len() > 2) {
        return Err(Error::InvalidDecomposition(
            "the base block must have one or two vertices".into(),
        ));
    }
    if let Some(b) = d.blocks.iter().skip(1).find(|b| !b.kind.is_peelable()) {
        return Err(Error::InvalidDecomposition(format!(
            "block {:?} cannot be stripped",
            b.vertices
        )));
    }
    let mut scope: VertexSet = d.vertices().into_iter().collect();
    let mut res = Residual::new(inst);
    res.restrict_lists(scope);
    let mut log = ReductionLog::default();
    for block in d.blocks.iter().skip(1).rev() {
        let here = Scope {
            template,
            vertices: scope,
        };
        let steps = match (block.kind, block.vertices.as_slice()) {
            (BlockKind::SingleBlueLoop | BlockKind::SingleRedLoop | BlockKind::StarLoop, &[h]) => {
                strip_homogeneous_vertex(&mut res, here, h)?
            }
            (BlockKind::MonoStarEdgeRed | BlockKind::MonoStarEdgeBlue, &[h1, h2]) => {
                strip_mono_star_edge(&mut res, here, h1, h2)?
            }
            (BlockKind::BichromaticStarEdge, &[h1, h2]) => {
                strip_bi_star_edge(&mut res, here, h1, h2)?
            }
            _ => {
                return Err(Error::InvalidDecomposition(format!(
                    "block {:?} has the wrong size",
                    block.vertices
                )))
            }
        };
        log.steps.extend(steps);
        scope = scope.minus(block.vertices.iter().copied().collect());
        res.restrict_lists(scope);
    }
    let rest = res.alive_vertices();
    let Some(images) = solve_pair(inst.graph(), &rest, res.lists(), template, scope) else {
        return Ok(Reduction { witness: None, log });
    };
    if !rest.is_empty() {
        log.steps.push(ReductionStep {
            forced: rest.into_iter().zip(images).collect(),
            reason: Reason::Base,
        });
    }
    let map = log
        .assemble(inst.n())
        .expect("every vertex is fixed by some step");
    let witness = Homomorphism { map };
    assert!(
        witness.verify(inst, template),
        "reductions produced an invalid witness"
    );
    Ok(Reduction {
        witness: Some(witness),
        log,
    })
}

/// Solves a list CSP over a reflexive complete template.
///
/// * Full lists: the template is recognized; if accepted, the instance is
///   solved over the retract, otherwise [`Error::Intractable`].
/// * Restricted lists: the template itself, or its quotient by coloured
///   twins, must decompose without retraction. Otherwise the result is
///   [`Error::Intractable`] when the recognizer rejects the template and
///   [`Error::OpenListRegime`] when it accepts.
pub fn solve_list_csp(
    template: &ColouredGraph,
    inst: &ListCspInstance,
) -> Result<Option<Homomorphism>> {
    template.check_reflexive_complete()?;
    if template.n() > VertexSet::CAPACITY {
        return Err(Error::TemplateTooLarge(template.n()));
    }
    inst.check_lists(template.n())?;
    if inst.has_full_lists(template.n()) {
        let d = recognize_tractable(template)?.ok_or(Error::Intractable)?;
        return Ok(solve_with_decomposition(template, inst, &d)?.witness);
    }
    if let Some(d) = decompose_exact(template)? {
        return Ok(solve_with_decomposition(template, inst, &d)?.witness);
    }
    let twins = TwinQuotient::new(template);
    if twins.graph.n() < template.n() {
        if let Some(d) = decompose_exact(&twins.graph)? {
            let lists = inst
                .lists()
                .iter()
                .map(|l| l.iter().map(|t| twins.class_of[t]).collect())
                .collect();
            let quotient_inst = ListCspInstance::with_lists(inst.graph().clone(), lists)?;
            let Some(h) = solve_with_decomposition(&twins.graph, &quotient_inst, &d)?.witness
            else {
                return Ok(None);
            };
            let map = h
                .map
                .iter()
                .enumerate()
                .map(|(v, &class)| {
                    inst.list(v)
                        .iter()
                        .find(|&t| twins.class_of[t] == class)
                        .expect("class meets the list")
                })
                .collect();
            let lifted = Homomorphism { map };
            assert!(
                lifted.verify(inst, template),
                "twin lift produced an invalid witness"
            );
            return Ok(Some(lifted));
        }
    }
    match recognize_tractable(template)? {
        None => Err(Error::Intractable),
        Some(_) => Err(Error::OpenListRegime),
    }
}

/// Polynomial path where available, exhaustive search otherwise.
pub fn solve_list_csp_or_search(
    template: &ColouredGraph,
    inst: &ListCspInstance,
) -> Result<Option<Homomorphism>> {
    match solve_list_csp(template, inst) {
        Err(Error::Intractable | Error::OpenListRegime) => Ok(find_hom(inst, template)),
        other => other,
    }
}

/// Quotient by coloured twins: `u ~ w` when `u` and `w` have the same
/// colours to every other vertex and `uu = uw = ww`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwinQuotient {
    pub graph: ColouredGraph,
    /// Class index of every vertex; classes are numbered by smallest member.
    pub class_of: Vec<usize>,
}

impl TwinQuotient {
    pub fn new(h: &ColouredGraph) -> Self {
        let n = h.n();
        let twins = |u: usize, w: usize| {
            let l = h.loop_colours(u);
            l == h.loop_colours(w)
                && h.colours(u, w) == l
                && (0..n)
                    .filter(|&x| x != u && x != w)
                    .all(|x| h.colours(u, x) == h.colours(w, x))
        };
        let mut class_of = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for v in 0..n {
            if let Some(c) = reps.iter().position(|&r| twins(r, v)) {
                class_of[v] = c;
            } else {
                class_of[v] = reps.len();
                reps.push(v);
            }
        }
        TwinQuotient {
            graph: h.induced(&reps),
            class_of,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{Colours, SimpleGraph, StarMatrix};
    use crate::testutil::{coloured_graph, reflexive_complete};
    use proptest::prelude::*;

    fn k1_k2_star() -> ColouredGraph {
        ColouredGraph::star_encode(&SimpleGraph::from_edges(3, &[(1, 2)]).unwrap())
    }

    #[test]
    fn three_colouring_is_intractable() {
        let k3 = ColouredGraph::star_encode(&SimpleGraph::complete(3));
        let inst = ListCspInstance::unrestricted(ColouredGraph::empty(2), 3);
        assert_eq!(solve_list_csp(&k3, &inst), Err(Error::Intractable));
    }

    #[test]
    fn split_partition_examples() {
        let t = k1_k2_star();
        let c5 = ColouredGraph::nu(&SimpleGraph::cycle(5)).unwrap();
        let inst = ListCspInstance::unrestricted(c5.clone(), 3);
        let h = solve_list_csp(&t, &inst).unwrap();
        assert_eq!(h.is_some(), find_hom(&inst, &t).is_some());
        if let Some(h) = h {
            assert!(h.verify(&inst, &t));
        }
    }

    #[test]
    fn log_covers_every_vertex() {
        let t = k1_k2_star();
        let d = decompose_exact(&t).unwrap().unwrap();
        let g = ColouredGraph::nu(&SimpleGraph::path(3)).unwrap();
        let inst = ListCspInstance::unrestricted(g, 3);
        let r = solve_with_decomposition(&t, &inst, &d).unwrap();
        let w = r.witness.unwrap();
        assert_eq!(r.log.assemble(3).unwrap(), w.map);
    }

    #[test]
    fn twin_quotient_merges_twins() {
        let t = ColouredGraph::from_matrix(&StarMatrix::parse(&["111", "111", "110"]).unwrap());
        let q = TwinQuotient::new(&t);
        assert_eq!(q.class_of, vec![0, 0, 1]);
        assert_eq!(q.graph.n(), 2);
    }

    #[test]
    fn malformed_input_is_reported() {
        let t = k1_k2_star();
        let inst =
            ListCspInstance::with_lists(ColouredGraph::empty(1), vec![VertexSet::singleton(5)])
                .unwrap();
        assert!(matches!(
            solve_list_csp(&t, &inst),
            Err(Error::InvalidList { .. })
        ));
        assert!(solve_list_csp(&ColouredGraph::empty(1), &inst).is_err());
    }

    #[test]
    fn star_loop_template_lists() {
        let mut t = ColouredGraph::star_encode(&SimpleGraph::complete(3));
        t.set(0, 0, Colours::STAR);
        let g = ColouredGraph::nu(&SimpleGraph::complete(4)).unwrap();
        let inst = ListCspInstance::unrestricted(g, 3);
        assert_eq!(solve_list_csp(&t, &inst).unwrap().unwrap().map, vec![0; 4]);
    }

    fn lists_strategy(n: usize, t: usize) -> impl Strategy<Value = Vec<VertexSet>> {
        proptest::collection::vec(1u64..(1 << t), n)
            .prop_map(|bits| bits.into_iter().map(VertexSet).collect())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(600))]
        #[test]
        fn agrees_with_search(
            (t, g, lists) in (1usize..=5).prop_flat_map(|t| {
                (reflexive_complete(t), (0usize..=6).prop_flat_map(|n| coloured_graph(n, &[0, 0, 1, 2, 3])))
                    .prop_flat_map(move |(t_graph, g)| {
                        let n = g.n();
                        (Just(t_graph), Just(g), lists_strategy(n, t))
                    })
            }),
            restrict in any::<bool>(),
        ) {
            let inst = if restrict {
                ListCspInstance::with_lists(g, lists).unwrap()
            } else {
                ListCspInstance::unrestricted(g, t.n())
            };
            match solve_list_csp(&t, &inst) {
                Ok(found) => {
                    if let Some(h) = &found {
                        prop_assert!(h.verify(&inst, &t));
                    }
                    prop_assert_eq!(found.is_some(), find_hom(&inst, &t).is_some());
                }
                Err(Error::Intractable) => prop_assert!(recognize_tractable(&t).unwrap().is_none()),
                Err(Error::OpenListRegime) => prop_assert!(restrict),
                Err(e) => prop_assert!(false, "unexpected error {e}"),
            }
        }
    }
}
