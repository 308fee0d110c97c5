//! Small reflexive structures whose presence forces NP-hardness.

use crate::graphs::{ColouredGraph, Colours};

/// A named hardness pattern.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    pub id: String,
    pub graph: ColouredGraph,
}

const R: Colours = Colours::RED;
const B: Colours = Colours::BLUE;
const S: Colours = Colours::STAR;

fn build(loops: &[Colours], edges: &[(usize, usize, Colours)]) -> ColouredGraph {
    ColouredGraph::from_loops_and_edges(loops, edges)
}

/// Red loops around a blue triangle.
pub fn three_a() -> ColouredGraph {
    build(&[R, R, R], &[(0, 1, B), (0, 2, B), (1, 2, B)])
}

pub fn three_b() -> ColouredGraph {
    build(&[R, R, B], &[(0, 1, B), (0, 2, B), (1, 2, S)])
}

pub fn three_c() -> ColouredGraph {
    build(&[R, R, B], &[(0, 1, B), (1, 2, S), (0, 2, R)])
}

pub fn three_d() -> ColouredGraph {
    build(&[R, R, B], &[(0, 1, S), (1, 2, B), (0, 2, R)])
}

/// Hard as a homomorphic source into any reflexive graph without *-loops.
pub fn h3() -> ColouredGraph {
    build(&[R, R, B], &[(0, 1, B), (1, 2, B), (0, 2, R)])
}

/// A blue-looped vertex with *-edges to two red-looped vertices; the pair
/// of red-looped vertices is left unconnected.
pub fn star_path() -> ColouredGraph {
    build(&[R, B, R], &[(0, 1, S), (0, 2, S)])
}

pub fn four_a() -> ColouredGraph {
    build(
        &[B, B, R, R],
        &[
            (2, 3, S),
            (0, 1, R),
            (1, 2, R),
            (1, 3, R),
            (0, 2, B),
            (0, 3, B),
        ],
    )
}

pub fn four_b() -> ColouredGraph {
    build(
        &[R, B, R, R],
        &[
            (2, 3, S),
            (0, 1, R),
            (0, 2, R),
            (1, 2, B),
            (1, 3, B),
            (0, 3, B),
        ],
    )
}

pub fn four_c() -> ColouredGraph {
    build(
        &[R, B, R, R],
        &[
            (2, 3, S),
            (1, 2, R),
            (1, 3, R),
            (0, 3, R),
            (0, 1, B),
            (0, 2, B),
        ],
    )
}

pub fn four_d() -> ColouredGraph {
    build(
        &[R, R, R, B],
        &[
            (2, 3, S),
            (0, 2, R),
            (0, 3, R),
            (1, 2, R),
            (0, 1, B),
            (1, 3, B),
        ],
    )
}

pub fn five_a() -> ColouredGraph {
    build(
        &[B, R, R, R, B],
        &[
            (0, 4, B),
            (0, 3, B),
            (1, 2, B),
            (1, 4, B),
            (2, 4, B),
            (0, 1, R),
            (1, 3, R),
            (2, 3, R),
            (3, 4, R),
            (0, 2, R),
        ],
    )
}

/// The pattern list in search order: by size, figure order first and then
/// the duals of the same size.
pub fn pattern_library() -> Vec<Pattern> {
    let named = |id: &str, graph: ColouredGraph| Pattern {
        id: id.to_string(),
        graph,
    };
    let dual = |p: &Pattern| Pattern {
        id: format!("dual({})", p.id),
        graph: p.graph.dual(),
    };
    let three = vec![
        named("3A", three_a()),
        named("3B", three_b()),
        named("3C", three_c()),
        named("path", star_path()),
        named("dual(path)", star_path().dual()),
        named("H3", h3()),
        named("3D", three_d()),
    ];
    let four = vec![
        named("4A", four_a()),
        named("4B", four_b()),
        named("4C", four_c()),
        named("4D", four_d()),
    ];
    let five = vec![named("5A", five_a())];
    let mut out = Vec::new();
    for group in [three, four, five] {
        let duals: Vec<Pattern> = group
            .iter()
            .filter(|p| !p.id.contains("path"))
            .map(dual)
            .collect();
        out.extend(group);
        out.extend(duals);
    }
    out
}

/// Library pattern by id.
pub fn pattern(id: &str) -> Option<Pattern> {
    pattern_library().into_iter().find(|p| p.id == id)
}
