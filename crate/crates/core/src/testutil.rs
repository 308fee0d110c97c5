//! Proptest strategies shared by unit tests.

use crate::graphs::{ColouredGraph, Colours};
use proptest::prelude::*;

/// Graphs on `n` vertices whose cells are drawn from `alphabet` (colour bits).
pub fn coloured_graph(n: usize, alphabet: &'static [u8]) -> impl Strategy<Value = ColouredGraph> {
    proptest::collection::vec(proptest::sample::select(alphabet), n * (n + 1) / 2).prop_map(
        move |cells| {
            let mut g = ColouredGraph::empty(n);
            let mut it = cells.into_iter();
            for u in 0..n {
                for v in u..n {
                    g.set(u, v, Colours::from_bits(it.next().unwrap()));
                }
            }
            g
        },
    )
}

pub fn reflexive_complete(n: usize) -> impl Strategy<Value = ColouredGraph> {
    coloured_graph(n, &[1, 2, 3])
}

/// Reflexive complete graphs without *-loops.
pub fn star_loop_free(n: usize) -> impl Strategy<Value = ColouredGraph> {
    (
        coloured_graph(n, &[1, 2, 3]),
        proptest::collection::vec(1u8..3, n),
    )
        .prop_map(|(mut g, loops)| {
            for (v, l) in loops.into_iter().enumerate() {
                g.set(v, v, Colours::from_bits(l));
            }
            g
        })
}
