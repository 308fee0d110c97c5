//! Instance reductions for a homogeneous top block of the template.

use super::{solve_pair, Reason, ReductionStep, Residual, Scope};
use crate::decompose::homogeneous_within;
use crate::error::{Error, Result};
use crate::graphs::{ColouredGraph, Colours};
use crate::vset::VertexSet;
use std::collections::VecDeque;

/// Vertices reachable from a start vertex by walks whose edge colours
/// alternate, beginning with a given colour. A *-edge may serve as either
/// colour.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlternatingReach {
    /// `(vertex, parity)` sorted by vertex; parity is the length of a
    /// shortest such walk modulo 2. The start vertex has parity 0.
    pub members: Vec<(usize, u8)>,
}

impl AlternatingReach {
    pub fn vertices(&self) -> Vec<usize> {
        self.members.iter().map(|&(v, _)| v).collect()
    }

    pub fn parity(&self, v: usize) -> Option<u8> {
        self.members.iter().find(|&&(w, _)| w == v).map(|&(_, p)| p)
    }
}

/// Alternating reach of `start` in `g`, first edge of colour `first`
/// (red or blue).
pub fn alternating_reach(g: &ColouredGraph, start: usize, first: Colours) -> AlternatingReach {
    reach_in(g, &vec![true; g.n()], start, first)
}

pub(crate) fn reach_in(
    g: &ColouredGraph,
    alive: &[bool],
    start: usize,
    first: Colours,
) -> AlternatingReach {
    debug_assert!(first == Colours::RED || first == Colours::BLUE);
    let second = first.swapped();
    let n = g.n();
    // State (v, 0): the next edge must have colour `first`.
    let mut dist = vec![[usize::MAX; 2]; n];
    dist[start][0] = 0;
    let mut queue = VecDeque::from([(start, 0usize)]);
    while let Some((v, state)) = queue.pop_front() {
        let need = if state == 0 { first } else { second };
        let d = dist[v][state];
        for w in g.neighbours(v, need) {
            if alive[w] && dist[w][1 - state] == usize::MAX {
                dist[w][1 - state] = d + 1;
                queue.push_back((w, 1 - state));
            }
        }
    }
    let members = (0..n)
        .filter_map(|v| {
            let best = dist[v][0].min(dist[v][1]);
            (best != usize::MAX).then_some((v, (best % 2) as u8))
        })
        .collect();
    AlternatingReach { members }
}

fn scope_vec(scope: &Scope) -> Vec<usize> {
    scope.vertices.to_vec()
}

fn check_in_scope(scope: &Scope, vs: &[usize]) -> Result<()> {
    for &v in vs {
        if !scope.vertices.contains(v) {
            return Err(Error::Precondition(format!(
                "template vertex {v} is not in the current scope"
            )));
        }
    }
    if !homogeneous_within(scope.template, &scope_vec(scope), vs) {
        return Err(Error::NotHomogeneous(vs.to_vec()));
    }
    Ok(())
}

/// Reduction for a homogeneous vertex `h` with a single-coloured loop.
///
/// For a blue loop: a vertex meeting a red edge (loops included) loses `h`
/// from its list; any other vertex with `h` in its list is deleted and
/// mapped to `h`. Red loops are symmetric. For a *-loop every vertex with
/// `h` in its list is mapped to `h`, since `h` is *-adjacent to the scope.
pub fn strip_homogeneous_vertex(
    res: &mut Residual,
    scope: Scope,
    h: usize,
) -> Result<Vec<ReductionStep>> {
    check_in_scope(&scope, &[h])?;
    let loop_c = scope.template.loop_colours(h);
    let opposite = loop_c.swapped();
    let g = res.graph();
    let mut removed = Vec::new();
    for u in res.alive_vertices() {
        let meets_opposite = !loop_c.is_star()
            && (0..g.n()).any(|w| res.is_alive(w) && g.colours(u, w).contains(opposite));
        if meets_opposite {
            res.remove_value(u, h);
        } else if res.list(u).contains(h) {
            removed.push(u);
        }
    }
    for &u in &removed {
        res.delete(u);
    }
    Ok(step(removed, |_| h, Reason::HomVertex))
}

fn step(removed: Vec<usize>, image: impl Fn(usize) -> usize, reason: Reason) -> Vec<ReductionStep> {
    if removed.is_empty() {
        return Vec::new();
    }
    let forced = removed.iter().map(|&v| (v, image(v))).collect();
    vec![ReductionStep { forced, reason }]
}

/// Reduction for a homogeneous *-edge `h1 h2` whose loops share one colour.
///
/// With blue loops, each connected component of the instance's red edges
/// (a *-edge counts as red) either maps into `{h1, h2}`, and is deleted with
/// that map, or loses `h1` and `h2` from all its lists. Red loops use blue
/// components.
pub fn strip_mono_star_edge(
    res: &mut Residual,
    scope: Scope,
    h1: usize,
    h2: usize,
) -> Result<Vec<ReductionStep>> {
    let t = scope.template;
    let loop_c = t.loop_colours(h1);
    if h1 == h2
        || !t.colours(h1, h2).is_star()
        || loop_c != t.loop_colours(h2)
        || loop_c.is_star()
        || loop_c.is_empty()
    {
        return Err(Error::Precondition(format!(
            "{{{h1}, {h2}}} is not a monochromatic *-edge"
        )));
    }
    check_in_scope(&scope, &[h1, h2])?;
    let link = loop_c.swapped();
    let pair = VertexSet::singleton(h1).union(VertexSet::singleton(h2));
    let mut steps = Vec::new();
    for component in components(res, link) {
        match solve_pair(res.graph(), &component, res.lists(), t, pair) {
            Some(images) => {
                for &v in &component {
                    res.delete(v);
                }
                steps.push(ReductionStep {
                    forced: component.iter().copied().zip(images).collect(),
                    reason: Reason::MonoStarEdge,
                });
            }
            None => {
                for &v in &component {
                    res.remove_value(v, h1);
                    res.remove_value(v, h2);
                }
            }
        }
    }
    Ok(steps)
}

/// Connected components of the alive instance using edges that carry `link`.
fn components(res: &Residual, link: Colours) -> Vec<Vec<usize>> {
    let g = res.graph();
    let mut seen = vec![false; g.n()];
    let mut out = Vec::new();
    for s in res.alive_vertices() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut next = 0;
        while next < comp.len() {
            let v = comp[next];
            next += 1;
            for w in g.neighbours(v, link) {
                if res.is_alive(w) && !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Reduction for a homogeneous bichromatic *-edge (`h1` blue loop, `h2`
/// red loop; the arguments may come in either order).
///
/// While some vertex `g` has `h1` in its list, map its red-first alternating
/// reach by parity (even to `h1`, odd to `h2`); if that map respects lists
/// and edges, delete the reach, otherwise drop `h1` from `L(g)`. Then the
/// same for `h2` with blue-first reaches.
pub fn strip_bi_star_edge(
    res: &mut Residual,
    scope: Scope,
    h1: usize,
    h2: usize,
) -> Result<Vec<ReductionStep>> {
    let t = scope.template;
    let (blue, red) = match (t.loop_colours(h1), t.loop_colours(h2)) {
        (Colours::BLUE, Colours::RED) => (h1, h2),
        (Colours::RED, Colours::BLUE) => (h2, h1),
        _ => {
            return Err(Error::Precondition(format!(
                "{{{h1}, {h2}}} is not a bichromatic *-edge"
            )))
        }
    };
    if !t.colours(blue, red).is_star() {
        return Err(Error::Precondition(format!(
            "{{{h1}, {h2}}} is not a *-edge"
        )));
    }
    check_in_scope(&scope, &[blue, red])?;
    let mut steps = Vec::new();
    for (even, odd, first) in [(blue, red, Colours::RED), (red, blue, Colours::BLUE)] {
        while let Some(g) = res
            .alive_vertices()
            .into_iter()
            .find(|&v| res.list(v).contains(even))
        {
            let reach = reach_in(res.graph(), res.alive(), g, first);
            let image = |p: u8| if p == 0 { even } else { odd };
            if parity_map_consistent(res, t, &reach, image) {
                for &(v, _) in &reach.members {
                    res.delete(v);
                }
                steps.push(ReductionStep {
                    forced: reach.members.iter().map(|&(v, p)| (v, image(p))).collect(),
                    reason: Reason::BiStarEdge,
                });
            } else {
                res.remove_value(g, even);
            }
        }
    }
    Ok(steps)
}

fn parity_map_consistent(
    res: &Residual,
    t: &ColouredGraph,
    reach: &AlternatingReach,
    image: impl Fn(u8) -> usize,
) -> bool {
    let g = res.graph();
    reach
        .members
        .iter()
        .all(|&(v, p)| res.list(v).contains(image(p)))
        && reach.members.iter().enumerate().all(|(i, &(u, pu))| {
            reach.members[i..]
                .iter()
                .all(|&(v, pv)| t.colours(image(pu), image(pv)).contains(g.colours(u, v)))
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{SimpleGraph, StarMatrix};
    use crate::homsearch::ListCspInstance;

    fn k1_k2_star() -> ColouredGraph {
        ColouredGraph::star_encode(&SimpleGraph::from_edges(3, &[(1, 2)]).unwrap())
    }

    fn scope(t: &ColouredGraph) -> Scope<'_> {
        Scope {
            template: t,
            vertices: VertexSet::full(t.n()),
        }
    }

    #[test]
    fn reach_examples() {
        let g = ColouredGraph::from_pairs(2, &[], &[(0, 1)]).unwrap();
        assert_eq!(alternating_reach(&g, 0, Colours::RED).members, vec![(0, 0)]);

        let path = ColouredGraph::from_pairs(3, &[(0, 1)], &[(1, 2)]).unwrap();
        assert_eq!(
            alternating_reach(&path, 0, Colours::RED).members,
            vec![(0, 0), (1, 1), (2, 0)]
        );

        // Red path then red again: alternation stops.
        let rr = ColouredGraph::from_pairs(3, &[(0, 1), (1, 2)], &[]).unwrap();
        assert_eq!(
            alternating_reach(&rr, 0, Colours::RED).vertices(),
            vec![0, 1]
        );

        // A *-edge serves as either colour.
        let star = ColouredGraph::from_pairs(3, &[(0, 1), (1, 2)], &[(1, 2)]).unwrap();
        assert_eq!(
            alternating_reach(&star, 0, Colours::RED).members,
            vec![(0, 0), (1, 1), (2, 0)]
        );
    }

    #[test]
    fn homogeneous_vertex_examples() {
        let t = k1_k2_star();
        let inst = ListCspInstance::unrestricted(ColouredGraph::empty(1), 3);
        let mut res = Residual::new(&inst);
        let steps = strip_homogeneous_vertex(&mut res, scope(&t), 0).unwrap();
        assert_eq!(steps[0].forced, vec![(0, 0)]);
        assert!(res.alive_vertices().is_empty());

        // Red-looped h: vertices meeting a blue edge lose h.
        let blue_edge = ColouredGraph::from_pairs(2, &[], &[(0, 1)]).unwrap();
        let inst =
            ListCspInstance::with_lists(blue_edge, vec![VertexSet::singleton(0); 2]).unwrap();
        let mut res = Residual::new(&inst);
        assert!(strip_homogeneous_vertex(&mut res, scope(&t), 0)
            .unwrap()
            .is_empty());
        assert!(res.list(0).is_empty() && res.list(1).is_empty());

        // Blue-looped h: a vertex with a red edge loses h.
        let dual = t.dual();
        let red_edge = ColouredGraph::from_pairs(2, &[(0, 1)], &[]).unwrap();
        let inst = ListCspInstance::unrestricted(red_edge, 3);
        let mut res = Residual::new(&inst);
        strip_homogeneous_vertex(&mut res, scope(&dual), 0).unwrap();
        assert!(!res.list(0).contains(0));
    }

    #[test]
    fn non_homogeneous_vertex_rejected() {
        let t = k1_k2_star();
        let inst = ListCspInstance::unrestricted(ColouredGraph::empty(1), 3);
        let mut res = Residual::new(&inst);
        assert!(matches!(
            strip_homogeneous_vertex(&mut res, scope(&t), 1),
            Err(Error::NotHomogeneous(_))
        ));
    }

    #[test]
    fn mono_star_edge_examples() {
        let t = ColouredGraph::from_matrix(&StarMatrix::parse(&["1*", "*1"]).unwrap());
        let c4 = ColouredGraph::nu(&SimpleGraph::cycle(4)).unwrap().dual();
        let inst = ListCspInstance::unrestricted(c4, 2);
        let mut res = Residual::new(&inst);
        let steps = strip_mono_star_edge(&mut res, scope(&t), 0, 1).unwrap();
        assert_eq!(steps.len(), 1);
        let images: Vec<usize> = steps[0].forced.iter().map(|&(_, t)| t).collect();
        assert_eq!(steps[0].forced.len(), 4);
        assert!((0..4).all(|i| images[i] != images[(i + 1) % 4]));

        let c5 = ColouredGraph::nu(&SimpleGraph::cycle(5)).unwrap().dual();
        let inst = ListCspInstance::unrestricted(c5, 2);
        let mut res = Residual::new(&inst);
        assert!(strip_mono_star_edge(&mut res, scope(&t), 0, 1)
            .unwrap()
            .is_empty());
        assert!(res.alive_vertices().iter().all(|&v| res.list(v).is_empty()));

        let inst = ListCspInstance::unrestricted(ColouredGraph::empty(2), 2);
        let mut res = Residual::new(&inst);
        assert_eq!(
            strip_mono_star_edge(&mut res, scope(&t), 0, 1)
                .unwrap()
                .len(),
            2
        );
    }

    #[test]
    fn bi_star_edge_examples() {
        // 0 red loop, 1 blue loop.
        let t = ColouredGraph::from_matrix(&StarMatrix::parse(&["0*", "*1"]).unwrap());
        let inst = ListCspInstance::unrestricted(ColouredGraph::empty(1), 2);
        let mut res = Residual::new(&inst);
        let steps = strip_bi_star_edge(&mut res, scope(&t), 0, 1).unwrap();
        assert_eq!(steps[0].forced, vec![(0, 1)]);

        let red = ColouredGraph::from_pairs(2, &[(0, 1)], &[]).unwrap();
        let inst = ListCspInstance::unrestricted(red, 2);
        let mut res = Residual::new(&inst);
        let steps = strip_bi_star_edge(&mut res, scope(&t), 1, 0).unwrap();
        assert_eq!(steps[0].forced, vec![(0, 1), (1, 0)]);
    }

    #[test]
    fn bi_star_edge_inconsistent_reach_drops_value() {
        let t = ColouredGraph::from_matrix(&StarMatrix::parse(&["0*", "*1"]).unwrap());
        // Red triangle: odd red cycle cannot alternate consistently.
        let tri = ColouredGraph::from_pairs(3, &[(0, 1), (1, 2), (0, 2)], &[]).unwrap();
        let inst = ListCspInstance::unrestricted(tri, 2);
        let mut res = Residual::new(&inst);
        strip_bi_star_edge(&mut res, scope(&t), 1, 0).unwrap();
        assert!(res
            .alive_vertices()
            .iter()
            .all(|&v| !res.list(v).contains(1)));
    }
}
