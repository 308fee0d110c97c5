//! Full homomorphisms, point-determining cores and the sandwich
//! classification for full-homomorphism targets.

use super::Verdict;
use crate::error::{Error, Result};
use crate::graphs::{ColouredGraph, SimpleGraph};
use crate::homsearch::{Homomorphism, ListCspInstance};
use crate::polysolve::solve_list_csp;
use crate::vset::VertexSet;
use serde::Serialize;

/// `f` preserves every colour and every missing colour, loops included.
pub fn is_full_hom(g: &ColouredGraph, h: &ColouredGraph, f: &[usize]) -> bool {
    f.len() == g.n()
        && f.iter().all(|&t| t < h.n())
        && (0..g.n()).all(|u| (u..g.n()).all(|v| g.colours(u, v) == h.colours(f[u], f[v])))
}

/// Maps each list through the full homomorphism `f: g → h`.
pub fn shrink_lists_via_fullhom(
    g: &ColouredGraph,
    h: &ColouredGraph,
    f: &[usize],
    inst: &ListCspInstance,
) -> Result<ListCspInstance> {
    if !is_full_hom(g, h, f) {
        return Err(Error::NotFullHom(format!(
            "{f:?} is not a full homomorphism"
        )));
    }
    inst.check_lists(g.n())?;
    let lists = inst
        .lists()
        .iter()
        .map(|l| l.iter().map(|t| f[t]).collect())
        .collect();
    ListCspInstance::with_lists(inst.graph().clone(), lists)
}

/// Pulls a solution over `h` back to `g`, choosing for each instance
/// vertex the smallest list entry with the right image.
pub fn lift_via_fullhom(
    f: &[usize],
    inst: &ListCspInstance,
    solution: &Homomorphism,
) -> Option<Homomorphism> {
    let map = solution
        .map
        .iter()
        .enumerate()
        .map(|(v, &t)| inst.list(v).iter().find(|&x| f[x] == t))
        .collect::<Option<Vec<usize>>>()?;
    Some(Homomorphism { map })
}

/// Solves the list CSP of `g` through a full homomorphism onto `h`.
pub fn solve_list_via_fullhom(
    g: &ColouredGraph,
    h: &ColouredGraph,
    f: &[usize],
    inst: &ListCspInstance,
) -> Result<Option<Homomorphism>> {
    let shrunk = shrink_lists_via_fullhom(g, h, f, inst)?;
    Ok(solve_list_csp(h, &shrunk)?
        .map(|s| lift_via_fullhom(f, inst, &s).expect("images come from the lists")))
}

/// `u` and `v` see every third vertex alike, and `uu = uv = vv`.
pub fn are_twins(g: &SimpleGraph, u: usize, v: usize) -> bool {
    u != v
        && g.has_loop(u) == g.has_edge(u, v)
        && g.has_loop(v) == g.has_edge(u, v)
        && g.vertices()
            .filter(|&w| w != u && w != v)
            .all(|w| g.has_edge(u, w) == g.has_edge(v, w))
}

/// The graph left after contracting twins, smallest pair first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointDeterminingCore {
    #[serde(skip)]
    pub graph: SimpleGraph,
    /// Input vertices kept, ascending; core vertex `i` is `vertices[i]`.
    pub vertices: Vec<usize>,
    /// Core position of every input vertex; a full homomorphism onto the core.
    pub map: Vec<usize>,
}

pub fn point_determining_core(g: &SimpleGraph) -> PointDeterminingCore {
    let mut keep: Vec<usize> = g.vertices().collect();
    let mut rep: Vec<usize> = g.vertices().collect();
    'contract: loop {
        let sub = g.induced(&keep);
        for i in 0..keep.len() {
            for j in i + 1..keep.len() {
                if are_twins(&sub, i, j) {
                    let (u, v) = (keep[i], keep[j]);
                    for r in rep.iter_mut().filter(|r| **r == v) {
                        *r = u;
                    }
                    keep.remove(j);
                    continue 'contract;
                }
            }
        }
        break;
    }
    let map = rep
        .iter()
        .map(|r| keep.binary_search(r).expect("representative kept"))
        .collect();
    PointDeterminingCore {
        graph: g.induced(&keep),
        vertices: keep,
        map,
    }
}

/// Backtracking search for a full homomorphism between graphs with loops.
pub fn find_full_hom(g: &SimpleGraph, h: &SimpleGraph) -> Option<Vec<usize>> {
    fn extend(g: &SimpleGraph, h: &SimpleGraph, map: &mut Vec<usize>) -> bool {
        let u = map.len();
        if u == g.n() {
            return true;
        }
        for t in h.vertices() {
            if (0..u).all(|w| g.has_edge(u, w) == h.has_edge(t, map[w]))
                && g.has_loop(u) == h.has_loop(t)
            {
                map.push(t);
                if extend(g, h, map) {
                    return true;
                }
                map.pop();
            }
        }
        false
    }
    let mut map = Vec::with_capacity(g.n());
    extend(g, h, &mut map).then_some(map)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ForbiddenKind {
    K3,
    #[serde(rename = "2K2")]
    TwoK2,
    P4,
}

/// An induced copy of a forbidden graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ForbiddenWitness {
    pub kind: ForbiddenKind,
    pub vertices: Vec<usize>,
}

/// First induced triangle, then the first 4-set inducing 2K2 or P4.
pub fn forbidden_induced_subgraph(g: &SimpleGraph) -> Result<Option<ForbiddenWitness>> {
    g.check_loopless()?;
    let n = g.n();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c) {
                    return Ok(Some(ForbiddenWitness {
                        kind: ForbiddenKind::K3,
                        vertices: vec![a, b, c],
                    }));
                }
            }
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let vs = [a, b, c, d];
                    let degree =
                        |x: usize| vs.iter().filter(|&&y| y != x && g.has_edge(x, y)).count();
                    let mut degrees: Vec<usize> = vs.iter().map(|&x| degree(x)).collect();
                    degrees.sort_unstable();
                    // Triangle-free here, so these degree sequences identify the graphs.
                    let kind = match degrees.as_slice() {
                        [1, 1, 1, 1] => ForbiddenKind::TwoK2,
                        [1, 1, 2, 2] => ForbiddenKind::P4,
                        _ => continue,
                    };
                    return Ok(Some(ForbiddenWitness {
                        kind,
                        vertices: vs.to_vec(),
                    }));
                }
            }
        }
    }
    Ok(None)
}

pub fn is_k3_2k2_p4_free(g: &SimpleGraph) -> Result<bool> {
    Ok(forbidden_induced_subgraph(g)?.is_none())
}

/// Outcome of [`classify_fullhom_sandwich`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FullHomClassification {
    pub verdict: Verdict,
    pub core: PointDeterminingCore,
    /// Core vertices (input ids) removed by peeling, in order.
    pub peeled: Vec<usize>,
    /// Core vertices (input ids) left when no more can be peeled.
    pub residue: Vec<usize>,
    /// For loopless inputs, an induced K3, 2K2 or P4 if one exists.
    pub forbidden: Option<ForbiddenWitness>,
}

/// Peels loopless isolated vertices and dominant loops off the
/// point-determining core, smallest id first; polynomial iff what remains
/// is empty, one vertex, two non-adjacent looped vertices, or K2.
pub fn classify_fullhom_sandwich(h: &SimpleGraph) -> FullHomClassification {
    let core = point_determining_core(h);
    let (peeled_local, residue_local) = peel(&core.graph, |remaining| remaining.first());
    let verdict = if residue_is_start(&core.graph, &residue_local) {
        Verdict::PolynomialTime
    } else {
        Verdict::NpComplete
    };
    let forbidden = if h.is_loopless() {
        forbidden_induced_subgraph(h).expect("loopless")
    } else {
        None
    };
    let to_input = |vs: Vec<usize>| vs.into_iter().map(|i| core.vertices[i]).collect();
    FullHomClassification {
        verdict,
        peeled: to_input(peeled_local),
        residue: to_input(residue_local),
        core,
        forbidden,
    }
}

/// Peels with `choose` picking among the currently removable vertices.
pub(crate) fn peel(
    g: &SimpleGraph,
    mut choose: impl FnMut(&[usize]) -> Option<&usize>,
) -> (Vec<usize>, Vec<usize>) {
    let mut remaining: VertexSet = g.vertices().collect();
    let mut peeled = Vec::new();
    loop {
        let removable: Vec<usize> = remaining
            .iter()
            .filter(|&v| {
                let others = remaining.minus(VertexSet::singleton(v));
                if g.has_loop(v) {
                    others.iter().all(|u| g.has_edge(u, v))
                } else {
                    others.iter().all(|u| !g.has_edge(u, v))
                }
            })
            .collect();
        // Never peel the last vertex: every start graph contains one.
        if remaining.len() <= 1 {
            break;
        }
        let Some(&v) = choose(&removable) else { break };
        remaining.remove(v);
        peeled.push(v);
    }
    (peeled, remaining.to_vec())
}

pub(crate) fn residue_is_start(g: &SimpleGraph, residue: &[usize]) -> bool {
    match *residue {
        [] | [_] => true,
        [a, b] => {
            let both_looped = g.has_loop(a) && g.has_loop(b);
            let both_loopless = !g.has_loop(a) && !g.has_loop(b);
            (both_looped && !g.has_edge(a, b)) || (both_loopless && g.has_edge(a, b))
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::classify_matrix;
    use crate::graphs::StarMatrix;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    fn k1_k2() -> SimpleGraph {
        SimpleGraph::from_edges(3, &[(1, 2)]).unwrap()
    }

    fn with_loops(n: usize, edges: &[(usize, usize)]) -> SimpleGraph {
        SimpleGraph::from_edges(n, edges).unwrap()
    }

    #[test]
    fn point_determining_examples() {
        let k23 = SimpleGraph::complete_bipartite(2, 3);
        let core = point_determining_core(&k23);
        assert_eq!(core.graph.n(), 2);
        assert!(core.graph.has_edge(0, 1));
        assert_eq!(core.map, vec![0, 0, 1, 1, 1]);

        let p4 = SimpleGraph::path(4);
        assert_eq!(point_determining_core(&p4).vertices, vec![0, 1, 2, 3]);

        // Two isolated vertices and an edge contract to K1 + K2.
        let blown = SimpleGraph::from_edges(4, &[(2, 3)]).unwrap();
        let core = point_determining_core(&blown);
        assert_eq!(core.vertices, vec![0, 2, 3]);
        assert!(find_full_hom(&blown, &k1_k2()).is_some());
    }

    #[test]
    fn looped_twins_must_be_adjacent() {
        // Two non-adjacent looped vertices are not twins.
        let two_l = with_loops(2, &[(0, 0), (1, 1)]);
        assert!(!are_twins(&two_l, 0, 1));
        let joined = with_loops(2, &[(0, 0), (1, 1), (0, 1)]);
        assert!(are_twins(&joined, 0, 1));
    }

    #[test]
    fn forbidden_examples() {
        let w = forbidden_induced_subgraph(&SimpleGraph::cycle(5))
            .unwrap()
            .unwrap();
        assert_eq!(w.kind, ForbiddenKind::P4);
        assert!(is_k3_2k2_p4_free(&SimpleGraph::complete_bipartite(3, 3)).unwrap());
        let two_k2 = SimpleGraph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(
            forbidden_induced_subgraph(&two_k2).unwrap().unwrap().kind,
            ForbiddenKind::TwoK2
        );
        assert!(forbidden_induced_subgraph(&with_loops(1, &[(0, 0)])).is_err());
    }

    #[test]
    fn fullhom_sandwich_examples() {
        assert_eq!(
            classify_fullhom_sandwich(&k1_k2()).verdict,
            Verdict::PolynomialTime
        );
        let p4 = classify_fullhom_sandwich(&SimpleGraph::path(4));
        assert_eq!(p4.verdict, Verdict::NpComplete);
        assert!(p4.forbidden.is_some());
        // K2 with a dominant loop added.
        let threshold = with_loops(3, &[(0, 1), (2, 2), (0, 2), (1, 2)]);
        let c = classify_fullhom_sandwich(&threshold);
        assert_eq!(c.verdict, Verdict::PolynomialTime);
        assert_eq!(c.peeled, vec![2]);
        assert_eq!(
            classify_fullhom_sandwich(&with_loops(2, &[(0, 0), (1, 1)])).verdict,
            Verdict::PolynomialTime
        );
    }

    #[test]
    fn fullhom_list_reduction() {
        let h = ColouredGraph::star_encode(&k1_k2());
        let g = ColouredGraph::star_encode(
            &SimpleGraph::from_edges(5, &[(1, 2), (1, 3), (4, 2), (4, 3)]).unwrap(),
        );
        let f = vec![0, 1, 2, 2, 1];
        assert!(is_full_hom(&g, &h, &f));
        let inst =
            ListCspInstance::unrestricted(ColouredGraph::nu(&SimpleGraph::cycle(4)).unwrap(), 5);
        let shrunk = shrink_lists_via_fullhom(&g, &h, &f, &inst).unwrap();
        assert!(shrunk.lists().iter().all(|&l| l == VertexSet::full(3)));
        let solved = solve_list_via_fullhom(&g, &h, &f, &inst).unwrap();
        assert_eq!(
            solved.is_some(),
            crate::homsearch::find_hom(&inst, &g).is_some()
        );
        if let Some(s) = solved {
            assert!(s.verify(&inst, &g));
        }

        let identity: Vec<usize> = (0..3).collect();
        let inst =
            ListCspInstance::with_lists(ColouredGraph::empty(1), vec![VertexSet::singleton(2)])
                .unwrap();
        assert_eq!(
            shrink_lists_via_fullhom(&h, &h, &identity, &inst).unwrap(),
            inst
        );
        assert!(matches!(
            shrink_lists_via_fullhom(&h, &h, &[0, 0, 0], &inst),
            Err(Error::NotFullHom(_))
        ));
    }

    #[test]
    fn constant_fullhom_onto_star_loop() {
        let mut star = ColouredGraph::empty(1);
        star.set(0, 0, crate::graphs::Colours::STAR);
        let mut g = ColouredGraph::empty(3);
        for u in 0..3 {
            for v in u..3 {
                g.set(u, v, crate::graphs::Colours::STAR);
            }
        }
        let inst = ListCspInstance::with_lists(
            ColouredGraph::empty(2),
            vec![VertexSet::singleton(1), VertexSet::singleton(2)],
        )
        .unwrap();
        let shrunk = shrink_lists_via_fullhom(&g, &star, &[0, 0, 0], &inst).unwrap();
        assert!(shrunk.lists().iter().all(|&l| l == VertexSet::singleton(0)));
    }

    fn looped_graph(n: usize) -> impl Strategy<Value = SimpleGraph> {
        proptest::collection::vec(any::<bool>(), n * (n + 1) / 2).prop_map(move |bits| {
            let mut g = SimpleGraph::new(n);
            let mut it = bits.into_iter();
            for u in 0..n {
                for v in u..n {
                    if it.next().unwrap() {
                        g.add_edge(u, v);
                    }
                }
            }
            g
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]
        #[test]
        fn agrees_with_matrix_route(h in (1usize..=4).prop_flat_map(looped_graph)) {
            let via_peeling = classify_fullhom_sandwich(&h).verdict;
            let via_matrix = classify_matrix(&StarMatrix::adjacency(&h)).unwrap().verdict;
            prop_assert_eq!(via_peeling, via_matrix);
        }

        #[test]
        fn core_is_point_determining_and_full(h in (1usize..=6).prop_flat_map(looped_graph)) {
            let core = point_determining_core(&h);
            let g = &core.graph;
            for u in 0..g.n() {
                for v in u + 1..g.n() {
                    prop_assert!(!are_twins(g, u, v));
                }
            }
            let hc = ColouredGraph::star_encode(&h);
            let gc = ColouredGraph::star_encode(g);
            prop_assert!(is_full_hom(&hc, &gc, &core.map));
        }

        #[test]
        fn peeling_order_does_not_matter(h in (1usize..=6).prop_flat_map(looped_graph), seed in any::<u64>()) {
            let core = point_determining_core(&h);
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let (_, residue) = peel(&core.graph, |r| r.choose(&mut rng));
            let random_order = residue_is_start(&core.graph, &residue);
            prop_assert_eq!(random_order, classify_fullhom_sandwich(&h).verdict == Verdict::PolynomialTime);
        }

        #[test]
        fn loopless_route_matches_freeness(h in (1usize..=6).prop_flat_map(looped_graph)) {
            let mut g = h.clone();
            for v in 0..g.n() {
                g.remove_edge(v, v);
            }
            let c = classify_fullhom_sandwich(&g);
            prop_assert_eq!(c.verdict == Verdict::PolynomialTime, c.forbidden.is_none());
            prop_assert_eq!(find_full_hom(&g, &k1_k2()).is_some(), c.forbidden.is_none());
        }
    }
}
