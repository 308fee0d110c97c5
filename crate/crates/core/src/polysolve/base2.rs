//! List homomorphisms onto at most two template vertices via 2-SAT.

use crate::graphs::ColouredGraph;
use crate::homsearch::{Homomorphism, ListCspInstance};
use crate::scc::tarjan;
use crate::vset::VertexSet;

/// Solves the list CSP of a template with at most two vertices.
///
/// # Panics
/// If the template has more than two vertices.
pub fn solve_base2(inst: &ListCspInstance, template: &ColouredGraph) -> Option<Homomorphism> {
    assert!(
        template.n() <= 2,
        "solve_base2 needs a template with at most two vertices"
    );
    let vertices: Vec<usize> = inst.graph().vertices().collect();
    solve_pair(
        inst.graph(),
        &vertices,
        inst.lists(),
        template,
        VertexSet::full(template.n()),
    )
    .map(|map| Homomorphism { map })
}

/// Maps `vertices` of `graph` into the template vertices `pair` (at most
/// two), respecting `lists` (indexed by graph vertex). Returns the image of
/// each entry of `vertices`, in order.
pub(crate) fn solve_pair(
    graph: &ColouredGraph,
    vertices: &[usize],
    lists: &[VertexSet],
    template: &ColouredGraph,
    pair: VertexSet,
) -> Option<Vec<usize>> {
    debug_assert!(pair.len() <= 2);
    let k = vertices.len();
    if k == 0 {
        return Some(Vec::new());
    }
    let values = pair.to_vec();
    let (a, b) = match values.as_slice() {
        [] => return None,
        [a] => (*a, *a),
        [a, b] => (*a, *b),
        _ => unreachable!(),
    };
    // Variable i true means vertices[i] maps to b.
    let value = |x: bool| if x { b } else { a };
    let mut clauses = Clauses::new(k);
    for (i, &v) in vertices.iter().enumerate() {
        let loop_c = graph.loop_colours(v);
        let ok = |t: usize| lists[v].contains(t) && template.loop_colours(t).contains(loop_c);
        match (ok(a), ok(b)) {
            (false, false) => return None,
            (true, false) => clauses.unit(i, false),
            (false, true) => clauses.unit(i, true),
            (true, true) => {}
        }
    }
    for i in 0..k {
        for j in i + 1..k {
            let c = graph.colours(vertices[i], vertices[j]);
            if c.is_empty() {
                continue;
            }
            for xi in [false, true] {
                for xj in [false, true] {
                    if !template.colours(value(xi), value(xj)).contains(c) {
                        clauses.forbid(i, xi, j, xj);
                    }
                }
            }
        }
    }
    clauses
        .solve()
        .map(|assignment| assignment.into_iter().map(value).collect())
}

/// 2-CNF over variables `0..k`; literal `2i` is "x_i true", `2i+1` is "x_i false".
struct Clauses {
    k: usize,
    implications: Vec<Vec<usize>>,
}

impl Clauses {
    fn new(k: usize) -> Self {
        Clauses {
            k,
            implications: vec![Vec::new(); 2 * k],
        }
    }

    fn lit(var: usize, value: bool) -> usize {
        2 * var + usize::from(!value)
    }

    /// Adds the clause `l1 ∨ l2`.
    fn or(&mut self, l1: usize, l2: usize) {
        self.implications[l1 ^ 1].push(l2);
        self.implications[l2 ^ 1].push(l1);
    }

    fn unit(&mut self, var: usize, value: bool) {
        let l = Self::lit(var, value);
        self.or(l, l);
    }

    /// Forbids `x_i = vi ∧ x_j = vj`.
    fn forbid(&mut self, i: usize, vi: bool, j: usize, vj: bool) {
        self.or(Self::lit(i, !vi), Self::lit(j, !vj));
    }

    fn solve(&self) -> Option<Vec<bool>> {
        let (_, comp) = tarjan(&self.implications);
        (0..self.k)
            .map(|v| {
                let (t, f) = (comp[2 * v], comp[2 * v + 1]);
                // Tarjan numbers components in reverse topological order.
                (t != f).then_some(t < f)
            })
            .collect()
    }
}
