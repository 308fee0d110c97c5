//! Exhaustive homomorphism search (the reference oracle), cores, and
//! polymorphism search, construction and verification.

mod cores;
mod polymorphism;

pub use cores::{automorphisms, core_of, endomorphisms, Core};
pub use polymorphism::{
    build_wnu_pair, find_cyclic, find_cyclic_with_budget, find_siggers, find_siggers_with_budget,
    verify_polymorphism, Identity, Polymorphism, Violation, WnuPair, DEFAULT_BUDGET,
};

use crate::error::{Error, Result};
use crate::graphs::ColouredGraph;
use crate::vset::VertexSet;
use serde::{Deserialize, Serialize};
use std::ops::ControlFlow;

/// An instance graph with a list of admissible template vertices per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ListCspInstance {
    graph: ColouredGraph,
    lists: Vec<VertexSet>,
}

impl ListCspInstance {
    /// Every vertex may map to any of the `template_n` template vertices.
    pub fn unrestricted(graph: ColouredGraph, template_n: usize) -> Self {
        let lists = vec![VertexSet::full(template_n); graph.n()];
        ListCspInstance { graph, lists }
    }

    pub fn with_lists(graph: ColouredGraph, lists: Vec<VertexSet>) -> Result<Self> {
        if lists.len() != graph.n() {
            return Err(Error::Precondition(format!(
                "{} lists given for an instance on {} vertices",
                lists.len(),
                graph.n()
            )));
        }
        Ok(ListCspInstance { graph, lists })
    }

    pub fn graph(&self) -> &ColouredGraph {
        &self.graph
    }

    pub fn lists(&self) -> &[VertexSet] {
        &self.lists
    }

    pub fn list(&self, v: usize) -> VertexSet {
        self.lists[v]
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// Rejects lists naming vertices outside a template on `template_n` vertices.
    pub fn check_lists(&self, template_n: usize) -> Result<()> {
        let allowed = VertexSet::full(template_n.min(VertexSet::CAPACITY));
        for (vertex, l) in self.lists.iter().enumerate() {
            if let Some(value) = l.minus(allowed).first() {
                return Err(Error::InvalidList {
                    vertex,
                    value,
                    n: template_n,
                });
            }
        }
        Ok(())
    }

    pub fn has_full_lists(&self, template_n: usize) -> bool {
        let full = VertexSet::full(template_n);
        self.lists.iter().all(|&l| full.is_subset(l))
    }
}

/// A vertex map from an instance into a template.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Homomorphism {
    pub map: Vec<usize>,
}

impl Homomorphism {
    /// True when the map is total, respects every list and preserves colours.
    pub fn verify(&self, inst: &ListCspInstance, template: &ColouredGraph) -> bool {
        self.map.len() == inst.n()
            && self
                .map
                .iter()
                .enumerate()
                .all(|(v, &t)| t < template.n() && inst.list(v).contains(t))
            && inst.graph().hom_violation(template, &self.map).is_none()
    }
}

/// Searches for a list homomorphism with arc-consistency propagation and
/// deterministic branching (lowest-index open variable, lowest value first).
pub fn find_hom(inst: &ListCspInstance, template: &ColouredGraph) -> Option<Homomorphism> {
    find_hom_with_budget(inst, template, u64::MAX).expect("unbounded search")
}

/// As [`find_hom`], giving up after `budget` search nodes.
pub fn find_hom_with_budget(
    inst: &ListCspInstance,
    template: &ColouredGraph,
    budget: u64,
) -> Result<Option<Homomorphism>> {
    let mut found = None;
    let mut engine = Engine::new(inst.graph(), template, budget);
    engine.run(inst, &mut |map| {
        found = Some(Homomorphism { map: map.to_vec() });
        ControlFlow::Break(())
    })?;
    Ok(found)
}

/// Calls `visit` on every list homomorphism in lexicographic order of the
/// image tuple until it returns `Break`.
pub fn for_each_hom(
    inst: &ListCspInstance,
    template: &ColouredGraph,
    mut visit: impl FnMut(&[usize]) -> ControlFlow<()>,
) {
    let mut engine = Engine::new(inst.graph(), template, u64::MAX);
    engine.run(inst, &mut visit).expect("unbounded search");
}

struct Engine<'a> {
    template: &'a ColouredGraph,
    loop_ok: [u64; 4],
    /// `compat[c][a]`: template vertices `b` with `colours(a, b) ⊇ c`.
    compat: [Vec<u64>; 4],
    adj: Vec<Vec<(usize, usize)>>,
    nodes: u64,
    budget: u64,
}

impl<'a> Engine<'a> {
    fn new(inst: &ColouredGraph, template: &'a ColouredGraph, budget: u64) -> Self {
        let t = template.n();
        assert!(
            t <= VertexSet::CAPACITY,
            "templates are limited to 64 vertices"
        );
        let mut compat: [Vec<u64>; 4] = Default::default();
        let mut loop_ok = [0u64; 4];
        for (c, table) in compat.iter_mut().enumerate() {
            let colour = crate::graphs::Colours::from_bits(c as u8);
            *table = (0..t)
                .map(|a| {
                    (0..t)
                        .filter(|&b| template.colours(a, b).contains(colour))
                        .fold(0, |m, b| m | 1 << b)
                })
                .collect();
            loop_ok[c] = (0..t)
                .filter(|&a| template.loop_colours(a).contains(colour))
                .fold(0, |m, a| m | 1 << a);
        }
        let adj = (0..inst.n())
            .map(|u| {
                (0..inst.n())
                    .filter(|&v| v != u && !inst.colours(u, v).is_empty())
                    .map(|v| (v, inst.colours(u, v).bits() as usize))
                    .collect()
            })
            .collect();
        Engine {
            template,
            loop_ok,
            compat,
            adj,
            nodes: 0,
            budget,
        }
    }

    fn run(
        &mut self,
        inst: &ListCspInstance,
        visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
    ) -> Result<()> {
        let full = VertexSet::full(self.template.n()).0;
        let mut domains: Vec<u64> = (0..inst.n())
            .map(|v| {
                inst.list(v).0 & full & self.loop_ok[inst.graph().loop_colours(v).bits() as usize]
            })
            .collect();
        if domains.contains(&0) {
            return Ok(());
        }
        let all: Vec<usize> = (0..inst.n()).collect();
        if self.propagate(&mut domains, all) {
            let _ = self.search(domains, visit)?;
        }
        Ok(())
    }

    fn support(&self, domain: u64, colour: usize) -> u64 {
        let table = &self.compat[colour];
        let mut bits = domain;
        let mut out = 0;
        while bits != 0 {
            out |= table[bits.trailing_zeros() as usize];
            bits &= bits - 1;
        }
        out
    }

    fn propagate(&self, domains: &mut [u64], mut queue: Vec<usize>) -> bool {
        let mut queued = vec![false; domains.len()];
        for &v in &queue {
            queued[v] = true;
        }
        while let Some(u) = queue.pop() {
            queued[u] = false;
            for &(v, colour) in &self.adj[u] {
                let narrowed = domains[v] & self.support(domains[u], colour);
                if narrowed != domains[v] {
                    if narrowed == 0 {
                        return false;
                    }
                    domains[v] = narrowed;
                    if !queued[v] {
                        queued[v] = true;
                        queue.push(v);
                    }
                }
            }
        }
        true
    }

    fn search(
        &mut self,
        domains: Vec<u64>,
        visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
    ) -> Result<ControlFlow<()>> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded(self.budget));
        }
        let Some(var) = domains.iter().position(|d| d.count_ones() > 1) else {
            let map: Vec<usize> = domains
                .iter()
                .map(|d| d.trailing_zeros() as usize)
                .collect();
            return Ok(visit(&map));
        };
        let mut values = domains[var];
        while values != 0 {
            let a = values.trailing_zeros();
            values &= values - 1;
            let mut next = domains.clone();
            next[var] = 1 << a;
            if self.propagate(&mut next, vec![var]) && self.search(next, visit)?.is_break() {
                return Ok(ControlFlow::Break(()));
            }
        }
        Ok(ControlFlow::Continue(()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{SimpleGraph, StarMatrix};
    use crate::testutil::coloured_graph;
    use proptest::prelude::*;

    fn m_b() -> ColouredGraph {
        ColouredGraph::from_matrix(&StarMatrix::parse(&["0*", "*0"]).unwrap())
    }

    fn raw_enumeration(inst: &ListCspInstance, template: &ColouredGraph) -> bool {
        let (n, t) = (inst.n(), template.n());
        let total = t.pow(n as u32);
        (0..total).any(|code| {
            let map: Vec<usize> = (0..n).map(|i| code / t.pow(i as u32) % t).collect();
            Homomorphism { map }.verify(inst, template)
        })
    }

    #[test]
    fn bipartite_examples() {
        let c5 = ColouredGraph::nu(&SimpleGraph::cycle(5)).unwrap();
        assert!(find_hom(&ListCspInstance::unrestricted(c5, 2), &m_b()).is_none());
        let c4 = ColouredGraph::nu(&SimpleGraph::cycle(4)).unwrap();
        let inst = ListCspInstance::unrestricted(c4, 2);
        let h = find_hom(&inst, &m_b()).unwrap();
        assert!(h.verify(&inst, &m_b()));
        assert_eq!(h.map, vec![0, 1, 0, 1]);
    }

    #[test]
    fn identity_on_example_a() {
        let a = ColouredGraph::from_matrix(&StarMatrix::parse(&["011", "110", "101"]).unwrap());
        let inst = ListCspInstance::unrestricted(a.clone(), 3);
        assert_eq!(find_hom(&inst, &a).unwrap().map, vec![0, 1, 2]);
    }

    #[test]
    fn empty_list_is_unsatisfiable() {
        let inst =
            ListCspInstance::with_lists(ColouredGraph::empty(1), vec![VertexSet::EMPTY]).unwrap();
        assert!(find_hom(&inst, &m_b()).is_none());
    }

    #[test]
    fn empty_instance_has_empty_map() {
        let inst = ListCspInstance::unrestricted(ColouredGraph::empty(0), 2);
        assert_eq!(find_hom(&inst, &m_b()).unwrap().map, Vec::<usize>::new());
    }

    #[test]
    fn budget_is_reported() {
        let k = ColouredGraph::nu(&SimpleGraph::complete(6)).unwrap();
        let three_a = ColouredGraph::star_encode(&SimpleGraph::complete(3));
        let inst = ListCspInstance::unrestricted(k, 3);
        assert_eq!(
            find_hom_with_budget(&inst, &three_a, 2),
            Err(Error::BudgetExceeded(2))
        );
    }

    #[test]
    fn enumeration_is_lexicographic() {
        let inst = ListCspInstance::unrestricted(ColouredGraph::empty(2), 2);
        let mut seen = Vec::new();
        for_each_hom(&inst, &m_b(), |m| {
            seen.push(m.to_vec());
            ControlFlow::Continue(())
        });
        assert_eq!(seen, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn list_validation() {
        let inst =
            ListCspInstance::with_lists(ColouredGraph::empty(1), vec![VertexSet::singleton(3)])
                .unwrap();
        assert_eq!(
            inst.check_lists(2),
            Err(Error::InvalidList {
                vertex: 0,
                value: 3,
                n: 2
            })
        );
        assert!(ListCspInstance::with_lists(ColouredGraph::empty(2), vec![]).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(400))]
        #[test]
        fn agrees_with_raw_enumeration(
            inst_graph in (0usize..=5).prop_flat_map(|n| coloured_graph(n, &[0, 0, 1, 2, 3])),
            template in (1usize..=4).prop_flat_map(|n| coloured_graph(n, &[1, 2, 3])),
            list_bits in proptest::collection::vec(0u64..16, 5),
            use_lists in any::<bool>(),
        ) {
            let t = template.n();
            let inst = if use_lists {
                let lists = (0..inst_graph.n()).map(|v| VertexSet(list_bits[v]).intersect(VertexSet::full(t))).collect();
                ListCspInstance::with_lists(inst_graph, lists).unwrap()
            } else {
                ListCspInstance::unrestricted(inst_graph, t)
            };
            let found = find_hom(&inst, &template);
            if let Some(h) = &found {
                prop_assert!(h.verify(&inst, &template));
            }
            prop_assert_eq!(found.is_some(), raw_enumeration(&inst, &template));
        }
    }
}
