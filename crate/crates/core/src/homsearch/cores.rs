use super::{find_hom, for_each_hom, ListCspInstance};
use crate::error::{Error, Result};
use crate::graphs::ColouredGraph;
use crate::vset::VertexSet;
use std::ops::ControlFlow;

const MAX_CORE_VERTICES: usize = 32;
const MAX_ENDO_VERTICES: usize = 7;

/// The core of a structure as an induced substructure plus a retraction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Core {
    /// The core, with vertex `i` standing for `vertices[i]` of the input.
    pub graph: ColouredGraph,
    /// Input vertices forming the core, ascending.
    pub vertices: Vec<usize>,
    /// Endomorphism of the input onto `vertices`, identity on `vertices`.
    pub retraction: Vec<usize>,
}

/// Repeatedly retracts onto the image of a non-injective endomorphism.
pub fn core_of(h: &ColouredGraph) -> Result<Core> {
    if h.n() > MAX_CORE_VERTICES {
        return Err(Error::SizeLimit {
            what: "core computation",
            size: h.n(),
            limit: MAX_CORE_VERTICES,
        });
    }
    let mut vertices: Vec<usize> = h.vertices().collect();
    // map[v] is a position in `vertices`.
    let mut map: Vec<usize> = h.vertices().collect();
    'shrink: loop {
        let g = h.induced(&vertices);
        let k = g.n();
        for missing in 0..k {
            let lists = vec![VertexSet::full(k).minus(VertexSet::singleton(missing)); k];
            let inst = ListCspInstance::with_lists(g.clone(), lists)?;
            if let Some(e) = find_hom(&inst, &g) {
                let mut image: Vec<usize> = e.map.clone();
                image.sort_unstable();
                image.dedup();
                let position = |p: usize| image.binary_search(&e.map[p]).expect("in image");
                map = map.iter().map(|&p| position(p)).collect();
                vertices = image.iter().map(|&p| vertices[p]).collect();
                continue 'shrink;
            }
        }
        break;
    }
    let graph = h.induced(&vertices);
    // The composite restricted to the core is an automorphism; undo it.
    let mut inverse = vec![usize::MAX; vertices.len()];
    for (p, &v) in vertices.iter().enumerate() {
        inverse[map[v]] = p;
    }
    let retraction = map.iter().map(|&p| vertices[inverse[p]]).collect();
    Ok(Core {
        graph,
        vertices,
        retraction,
    })
}

/// All endomorphisms in lexicographic order.
pub fn endomorphisms(h: &ColouredGraph) -> Result<Vec<Vec<usize>>> {
    if h.n() > MAX_ENDO_VERTICES {
        return Err(Error::SizeLimit {
            what: "endomorphism enumeration",
            size: h.n(),
            limit: MAX_ENDO_VERTICES,
        });
    }
    let inst = ListCspInstance::unrestricted(h.clone(), h.n());
    let mut out = Vec::new();
    for_each_hom(&inst, h, |m| {
        out.push(m.to_vec());
        ControlFlow::Continue(())
    });
    Ok(out)
}

/// All automorphisms in lexicographic order.
pub fn automorphisms(h: &ColouredGraph) -> Result<Vec<Vec<usize>>> {
    Ok(endomorphisms(h)?
        .into_iter()
        .filter(|m| {
            let mut seen = vec![false; m.len()];
            m.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{Colours, SimpleGraph};
    use crate::testutil::coloured_graph;
    use proptest::prelude::*;

    fn k2_star() -> ColouredGraph {
        ColouredGraph::star_encode(&SimpleGraph::complete(2))
    }

    #[test]
    fn star_loop_collapses_everything() {
        let mut h = ColouredGraph::star_encode(&SimpleGraph::complete(3));
        h.set(1, 1, Colours::STAR);
        let c = core_of(&h).unwrap();
        assert_eq!(c.vertices, vec![1]);
        assert_eq!(c.retraction, vec![1, 1, 1]);
    }

    #[test]
    fn k2_star_is_a_core() {
        let c = core_of(&k2_star()).unwrap();
        assert_eq!(c.vertices, vec![0, 1]);
        assert_eq!(c.retraction, vec![0, 1]);
    }

    #[test]
    fn k1_plus_k2_star_is_a_core() {
        let h = ColouredGraph::star_encode(&SimpleGraph::from_edges(3, &[(1, 2)]).unwrap());
        assert_eq!(core_of(&h).unwrap().vertices, vec![0, 1, 2]);
    }

    #[test]
    fn endomorphism_counts() {
        assert_eq!(
            automorphisms(&k2_star()).unwrap(),
            vec![vec![0, 1], vec![1, 0]]
        );
        let red = ColouredGraph::from_pairs(1, &[(0, 0)], &[]).unwrap();
        assert_eq!(endomorphisms(&red).unwrap().len(), 1);
        let three_a = ColouredGraph::star_encode(&SimpleGraph::complete(3));
        assert_eq!(endomorphisms(&three_a).unwrap().len(), 6);
        assert!(endomorphisms(&ColouredGraph::empty(8)).is_err());
    }

    proptest! {
        #[test]
        fn core_is_idempotent_retract(h in (1usize..=5).prop_flat_map(|n| coloured_graph(n, &[1, 2, 3]))) {
            let c = core_of(&h).unwrap();
            prop_assert!(h.is_hom(&h, &c.retraction));
            for &v in &c.vertices {
                prop_assert_eq!(c.retraction[v], v);
            }
            let again = core_of(&c.graph).unwrap();
            prop_assert_eq!(again.vertices.len(), c.vertices.len());
            prop_assert_eq!(automorphisms(&c.graph).unwrap().len(), endomorphisms(&c.graph).unwrap().len());
        }
    }
}
