//! Primitive positive definitions of loopless non-bipartite graphs.
//!
//! A formula `phi(x, y) = exists z. atoms` defines the graph with an edge
//! `uv` whenever `phi(u, v)` and `phi(v, u)` hold. If that graph has no
//! loop and an odd cycle, the template pp-constructs `K3`.

use crate::graphs::{ColouredGraph, Colours};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Var {
    X,
    Y,
    Z,
}

/// `colour(left, right)`, with `colour` written `R` or `B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Atom {
    pub colour: char,
    pub left: Var,
    pub right: Var,
}

impl std::fmt::Display for Atom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = |v: Var| match v {
            Var::X => 'x',
            Var::Y => 'y',
            Var::Z => 'z',
        };
        write!(
            f,
            "{}({},{})",
            self.colour,
            name(self.left),
            name(self.right)
        )
    }
}

const PAIRS: [(Var, Var); 6] = [
    (Var::X, Var::Z),
    (Var::Y, Var::Z),
    (Var::X, Var::Y),
    (Var::X, Var::X),
    (Var::Y, Var::Y),
    (Var::Z, Var::Z),
];

fn colour_of(c: char) -> Option<Colours> {
    match c {
        'R' => Some(Colours::RED),
        'B' => Some(Colours::BLUE),
        _ => None,
    }
}

/// Whether `phi(u, v)` holds.
pub fn satisfies(h: &ColouredGraph, atoms: &[Atom], u: usize, v: usize) -> bool {
    h.vertices().any(|z| {
        let value = |t: Var| match t {
            Var::X => u,
            Var::Y => v,
            Var::Z => z,
        };
        atoms.iter().all(|a| {
            colour_of(a.colour)
                .is_some_and(|c| h.colours(value(a.left), value(a.right)).contains(c))
        })
    })
}

/// Adjacency of the symmetrised defined graph, or `None` if it has a loop.
fn defined_graph(h: &ColouredGraph, atoms: &[Atom]) -> Option<Vec<Vec<bool>>> {
    let n = h.n();
    let phi: Vec<Vec<bool>> = (0..n)
        .map(|u| (0..n).map(|v| satisfies(h, atoms, u, v)).collect())
        .collect();
    if (0..n).any(|u| phi[u][u]) {
        return None;
    }
    Some(
        (0..n)
            .map(|u| (0..n).map(|v| phi[u][v] && phi[v][u]).collect())
            .collect(),
    )
}

/// The defined graph is loopless and `cycle` is an odd closed walk in it.
pub fn verify_pp_odd_cycle(h: &ColouredGraph, atoms: &[Atom], cycle: &[usize]) -> bool {
    let k = cycle.len();
    let Some(adj) = defined_graph(h, atoms) else {
        return false;
    };
    k % 2 == 1
        && cycle.iter().all(|&v| v < h.n())
        && (0..k).all(|i| adj[cycle[i]][cycle[(i + 1) % k]])
}

fn odd_cycle(adj: &[Vec<bool>]) -> Option<Vec<usize>> {
    let n = adj.len();
    let mut side = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    for s in 0..n {
        if side[s] != usize::MAX {
            continue;
        }
        side[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for w in (0..n).filter(|&w| adj[u][w]) {
                if side[w] == usize::MAX {
                    side[w] = side[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if side[w] == side[u] {
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

/// Searches formulas by increasing number of atoms; returns the first
/// whose defined graph is loopless and not bipartite.
pub fn find_pp_odd_cycle(h: &ColouredGraph) -> Option<(Vec<Atom>, Vec<usize>)> {
    let atoms: Vec<Atom> = PAIRS
        .iter()
        .flat_map(|&(left, right)| {
            ['R', 'B'].map(|colour| Atom {
                colour,
                left,
                right,
            })
        })
        .collect();
    let mut masks: Vec<u32> = (1..1u32 << atoms.len()).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    masks.into_iter().find_map(|mask| {
        let chosen: Vec<Atom> = atoms
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &a)| a)
            .collect();
        let adj = defined_graph(h, &chosen)?;
        odd_cycle(&adj).map(|cycle| (chosen, cycle))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::StarMatrix;

    #[test]
    fn example_formula_defines_a_triangle() {
        let a = ColouredGraph::from_matrix(&StarMatrix::parse(&["011", "110", "101"]).unwrap());
        let formula = [
            Atom {
                colour: 'B',
                left: Var::X,
                right: Var::Z,
            },
            Atom {
                colour: 'R',
                left: Var::Y,
                right: Var::Z,
            },
        ];
        for u in 0..3 {
            for v in 0..3 {
                assert_eq!(satisfies(&a, &formula, u, v), u != v, "{u} {v}");
            }
        }
        assert!(verify_pp_odd_cycle(&a, &formula, &[0, 1, 2]));
        let (found, cycle) = find_pp_odd_cycle(&a).unwrap();
        assert!(verify_pp_odd_cycle(&a, &found, &cycle));
    }

    #[test]
    fn tractable_templates_have_none() {
        for rows in [&["0*", "*1"][..], &["0*", "*0"][..], &["01", "11"][..]] {
            let h = ColouredGraph::from_matrix(&StarMatrix::parse(rows).unwrap());
            assert!(find_pp_odd_cycle(&h).is_none());
        }
    }

    #[test]
    fn rejects_loops_and_even_walks() {
        let a = ColouredGraph::from_matrix(&StarMatrix::parse(&["011", "110", "101"]).unwrap());
        let formula = [
            Atom {
                colour: 'B',
                left: Var::X,
                right: Var::Z,
            },
            Atom {
                colour: 'R',
                left: Var::Y,
                right: Var::Z,
            },
        ];
        assert!(!verify_pp_odd_cycle(&a, &formula, &[0, 1]));
        let looped = [Atom {
            colour: 'B',
            left: Var::X,
            right: Var::X,
        }];
        assert!(!verify_pp_odd_cycle(&a, &looped, &[1]));
    }
}
