//! Two-edge-coloured graphs and the constructions built on them.
//!
//! A [`ColouredGraph`] carries two symmetric relations, red and blue, over
//! the vertices `0..n`. Loops live on the diagonal. A pair in both relations
//! is a *-edge (or *-loop).

mod canon;
mod json;
mod matrix;
mod power;
mod simple;

pub use canon::{enumerate_classes, CanonicalForm, INSTANCE_ALPHABET, TEMPLATE_ALPHABET};
pub use matrix::{Entry, StarMatrix};
pub use power::{product, QuotientPower, TupleSpace};
pub use simple::{Digraph, SimpleGraph};

use crate::error::{Error, Result};
use std::collections::VecDeque;
use std::fmt;

/// The set of colours present on a pair: none, red, blue or both (`*`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Colours(u8);

impl Colours {
    pub const NONE: Colours = Colours(0);
    pub const RED: Colours = Colours(1);
    pub const BLUE: Colours = Colours(2);
    pub const STAR: Colours = Colours(3);

    pub const fn from_bits(bits: u8) -> Colours {
        Colours(bits & 3)
    }

    pub const fn bits(self) -> u8 {
        self.0
    }

    pub const fn has_red(self) -> bool {
        self.0 & 1 != 0
    }

    pub const fn has_blue(self) -> bool {
        self.0 & 2 != 0
    }

    pub const fn is_star(self) -> bool {
        self.0 == 3
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// True when every colour of `other` is present in `self`.
    pub const fn contains(self, other: Colours) -> bool {
        other.0 & !self.0 == 0
    }

    pub const fn union(self, other: Colours) -> Colours {
        Colours(self.0 | other.0)
    }

    pub const fn intersect(self, other: Colours) -> Colours {
        Colours(self.0 & other.0)
    }

    /// Red and blue exchanged.
    pub const fn swapped(self) -> Colours {
        Colours(((self.0 & 1) << 1) | ((self.0 & 2) >> 1))
    }

    pub fn symbol(self) -> char {
        ['-', 'R', 'B', '*'][self.0 as usize]
    }
}

impl fmt::Debug for Colours {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

impl fmt::Display for Colours {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// A 2-edge-coloured graph on vertices `0..n`.
///
/// Colours are stored densely as a symmetric `n × n` table of 2-bit codes,
/// so every colour query is a single lookup.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ColouredGraph {
    n: usize,
    cells: Vec<u8>,
}

impl ColouredGraph {
    /// Graph on `n` vertices with no edges and no loops.
    pub fn empty(n: usize) -> Self {
        ColouredGraph {
            n,
            cells: vec![0; n * n],
        }
    }

    /// Builds a graph from red and blue pair lists (in either orientation).
    pub fn from_pairs(n: usize, red: &[(usize, usize)], blue: &[(usize, usize)]) -> Result<Self> {
        let mut g = ColouredGraph::empty(n);
        for (pairs, colour) in [(red, Colours::RED), (blue, Colours::BLUE)] {
            for &(u, v) in pairs {
                for w in [u, v] {
                    if w >= n {
                        return Err(Error::VertexOutOfRange { vertex: w, n });
                    }
                }
                g.add(u, v, colour);
            }
        }
        Ok(g)
    }

    /// Reflexive complete graph from loop colours and the colours of each
    /// unordered pair `u < v`. Pairs not mentioned are left uncoloured.
    pub fn from_loops_and_edges(loops: &[Colours], edges: &[(usize, usize, Colours)]) -> Self {
        let mut g = ColouredGraph::empty(loops.len());
        for (v, &c) in loops.iter().enumerate() {
            g.set(v, v, c);
        }
        for &(u, v, c) in edges {
            g.set(u, v, c);
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    #[inline]
    pub fn colours(&self, u: usize, v: usize) -> Colours {
        Colours(self.cells[u * self.n + v])
    }

    #[inline]
    pub fn loop_colours(&self, v: usize) -> Colours {
        self.colours(v, v)
    }

    /// Replaces the colours of the pair `uv`.
    pub fn set(&mut self, u: usize, v: usize, c: Colours) {
        self.cells[u * self.n + v] = c.0;
        self.cells[v * self.n + u] = c.0;
    }

    /// Adds `c` to the colours of the pair `uv`.
    pub fn add(&mut self, u: usize, v: usize, c: Colours) {
        let merged = self.colours(u, v).union(c);
        self.set(u, v, merged);
    }

    pub fn add_red(&mut self, u: usize, v: usize) {
        self.add(u, v, Colours::RED);
    }

    pub fn add_blue(&mut self, u: usize, v: usize) {
        self.add(u, v, Colours::BLUE);
    }

    /// Pairs `(i, j)` with `i <= j` carrying colour `c`, sorted.
    pub fn pairs_with(&self, c: Colours) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i..self.n {
                if self.colours(i, j).contains(c) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn red_pairs(&self) -> Vec<(usize, usize)> {
        self.pairs_with(Colours::RED)
    }

    pub fn blue_pairs(&self) -> Vec<(usize, usize)> {
        self.pairs_with(Colours::BLUE)
    }

    /// *-edges between distinct vertices.
    pub fn star_edges(&self) -> Vec<(usize, usize)> {
        self.pairs_with(Colours::STAR)
            .into_iter()
            .filter(|&(u, v)| u != v)
            .collect()
    }

    pub fn is_reflexive(&self) -> bool {
        self.vertices().all(|v| !self.loop_colours(v).is_empty())
    }

    pub fn is_complete(&self) -> bool {
        (0..self.n).all(|u| (u + 1..self.n).all(|v| !self.colours(u, v).is_empty()))
    }

    pub fn check_reflexive(&self) -> Result<()> {
        match self.vertices().find(|&v| self.loop_colours(v).is_empty()) {
            Some(v) => Err(Error::NotReflexive(v)),
            None => Ok(()),
        }
    }

    pub fn check_reflexive_complete(&self) -> Result<()> {
        self.check_reflexive()?;
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.colours(u, v).is_empty() {
                    return Err(Error::NotComplete(u, v));
                }
            }
        }
        Ok(())
    }

    /// Smallest vertex with a *-loop.
    pub fn star_loop(&self) -> Option<usize> {
        self.vertices().find(|&v| self.loop_colours(v).is_star())
    }

    pub fn check_no_star_loop(&self) -> Result<()> {
        match self.star_loop() {
            Some(v) => Err(Error::StarLoop(v)),
            None => Ok(()),
        }
    }

    /// Red and blue exchanged everywhere.
    pub fn dual(&self) -> Self {
        ColouredGraph {
            n: self.n,
            cells: self.cells.iter().map(|&c| Colours(c).swapped().0).collect(),
        }
    }

    /// Substructure induced on `vertices`; vertex `vertices[i]` becomes `i`.
    pub fn induced(&self, vertices: &[usize]) -> Self {
        let k = vertices.len();
        let mut g = ColouredGraph::empty(k);
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i) {
                g.set(i, j, self.colours(u, v));
            }
        }
        g
    }

    /// Copy with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let mut g = ColouredGraph::empty(self.n);
        for u in 0..self.n {
            for v in u..self.n {
                g.set(perm[u], perm[v], self.colours(u, v));
            }
        }
        g
    }

    /// Disjoint union with `other` placed after `self`; no edges between them.
    pub fn disjoint_union(&self, other: &ColouredGraph) -> Self {
        let n = self.n + other.n;
        let mut g = ColouredGraph::empty(n);
        for u in 0..self.n {
            for v in u..self.n {
                g.set(u, v, self.colours(u, v));
            }
        }
        for u in 0..other.n {
            for v in u..other.n {
                g.set(self.n + u, self.n + v, other.colours(u, v));
            }
        }
        g
    }

    /// Vertices `w != v` whose pair with `v` carries colour `c`.
    pub fn neighbours(&self, v: usize, c: Colours) -> impl Iterator<Item = usize> + '_ {
        let row = &self.cells[v * self.n..(v + 1) * self.n];
        row.iter()
            .enumerate()
            .filter(move |&(w, &cell)| w != v && Colours(cell).contains(c))
            .map(|(w, _)| w)
    }

    /// First pair `(u, v)` of `self` whose colours are not preserved by
    /// `map` into `template`, or `None` if `map` is a homomorphism.
    pub fn hom_violation(&self, template: &ColouredGraph, map: &[usize]) -> Option<(usize, usize)> {
        assert_eq!(map.len(), self.n, "map must be total");
        for u in 0..self.n {
            for v in u..self.n {
                let c = self.colours(u, v);
                if !c.is_empty() && !template.colours(map[u], map[v]).contains(c) {
                    return Some((u, v));
                }
            }
        }
        None
    }

    pub fn is_hom(&self, template: &ColouredGraph, map: &[usize]) -> bool {
        map.len() == self.n
            && map.iter().all(|&t| t < template.n)
            && self.hom_violation(template, map).is_none()
    }

    /// The matrix graph: blue where the entry is 1 or *, red where it is 0 or *.
    pub fn from_matrix(m: &StarMatrix) -> Self {
        let n = m.n();
        let mut g = ColouredGraph::empty(n);
        for i in 0..n {
            for j in i..n {
                g.set(i, j, m.get(i, j).colours());
            }
        }
        g
    }

    pub fn to_matrix(&self) -> Result<StarMatrix> {
        self.check_reflexive_complete()?;
        let rows = (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| Entry::from_colours(self.colours(i, j)).expect("complete"))
                    .collect()
            })
            .collect();
        StarMatrix::new(rows)
    }

    /// Blue edges for the edges of `g`, red edges for its non-edges, no loops.
    pub fn nu(g: &SimpleGraph) -> Result<Self> {
        if let Some(v) = g.vertices().find(|&v| g.has_edge(v, v)) {
            return Err(Error::UnexpectedLoop(v));
        }
        let mut h = ColouredGraph::empty(g.n());
        for u in 0..g.n() {
            for v in u + 1..g.n() {
                h.set(
                    u,
                    v,
                    if g.has_edge(u, v) {
                        Colours::BLUE
                    } else {
                        Colours::RED
                    },
                );
            }
        }
        Ok(h)
    }

    /// Reflexive complete encoding: blue on edges (a loop becomes a blue
    /// loop), red on every non-adjacent pair including loopless diagonals.
    pub fn star_encode(g: &SimpleGraph) -> Self {
        let mut h = ColouredGraph::empty(g.n());
        for u in 0..g.n() {
            for v in u..g.n() {
                h.set(
                    u,
                    v,
                    if g.has_edge(u, v) {
                        Colours::BLUE
                    } else {
                        Colours::RED
                    },
                );
            }
        }
        h
    }

    /// The alternating digraph: arc `(x, y)` for `x != y` when the loop at `x`
    /// is blue and `xy` is red, or the loop at `x` is red and `xy` is blue.
    pub fn alt_digraph(&self) -> Result<AltDigraph> {
        self.check_reflexive()?;
        let mut digraph = Digraph::new(self.n);
        for x in 0..self.n {
            let lx = self.loop_colours(x);
            for y in 0..self.n {
                if x == y {
                    continue;
                }
                let c = self.colours(x, y);
                if (lx.has_blue() && c.has_red()) || (lx.has_red() && c.has_blue()) {
                    digraph.add_arc(x, y);
                }
            }
        }
        let tags = self.vertices().map(|v| self.loop_colours(v)).collect();
        Ok(AltDigraph { digraph, tags })
    }

    /// Length of a shortest cycle: 1 with a loop, 2 with a *-edge, otherwise
    /// the girth of the union of both colours. `None` if acyclic.
    pub fn girth(&self) -> Option<usize> {
        if self.vertices().any(|v| !self.loop_colours(v).is_empty()) {
            return Some(1);
        }
        if !self.star_edges().is_empty() {
            return Some(2);
        }
        let mut best: Option<usize> = None;
        for s in 0..self.n {
            let mut dist = vec![usize::MAX; self.n];
            let mut parent = vec![usize::MAX; self.n];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for w in self
                    .neighbours(u, Colours::NONE)
                    .filter(|&w| !self.colours(u, w).is_empty())
                {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }
}

impl fmt::Debug for ColouredGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ColouredGraph(n={})", self.n)?;
        for u in 0..self.n {
            let row: String = (0..self.n).map(|v| self.colours(u, v).symbol()).collect();
            writeln!(f, "  {row}")?;
        }
        Ok(())
    }
}

/// The alternating digraph together with the loop colours of its vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AltDigraph {
    pub digraph: Digraph,
    pub tags: Vec<Colours>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m_s() -> ColouredGraph {
        ColouredGraph::from_matrix(&StarMatrix::parse(&["0*", "*1"]).unwrap())
    }

    #[test]
    fn colour_algebra() {
        assert!(Colours::STAR.contains(Colours::RED));
        assert!(!Colours::RED.contains(Colours::BLUE));
        assert_eq!(Colours::RED.swapped(), Colours::BLUE);
        assert_eq!(Colours::STAR.swapped(), Colours::STAR);
        assert_eq!(Colours::NONE.swapped(), Colours::NONE);
    }

    #[test]
    fn split_matrix_encoding() {
        let g = m_s();
        assert_eq!(g.loop_colours(0), Colours::RED);
        assert_eq!(g.loop_colours(1), Colours::BLUE);
        assert_eq!(g.colours(0, 1), Colours::STAR);
        assert_eq!(
            g.to_matrix().unwrap(),
            StarMatrix::parse(&["0*", "*1"]).unwrap()
        );
    }

    #[test]
    fn bipartite_matrix_encoding() {
        let g = ColouredGraph::from_matrix(&StarMatrix::parse(&["0*", "*0"]).unwrap());
        assert_eq!(g.loop_colours(0), Colours::RED);
        assert_eq!(g.loop_colours(1), Colours::RED);
        assert_eq!(g.colours(0, 1), Colours::STAR);
    }

    #[test]
    fn single_zero_is_red_loop() {
        let g = ColouredGraph::from_matrix(&StarMatrix::parse(&["0"]).unwrap());
        assert_eq!(g.n(), 1);
        assert_eq!(g.loop_colours(0), Colours::RED);
        assert_eq!(g.to_matrix().unwrap().get(0, 0), Entry::Zero);
    }

    #[test]
    fn to_matrix_rejects_incomplete() {
        let mut g = ColouredGraph::empty(2);
        g.add_red(0, 0);
        assert_eq!(g.to_matrix(), Err(Error::NotReflexive(1)));
        g.add_red(1, 1);
        assert_eq!(g.to_matrix(), Err(Error::NotComplete(0, 1)));
    }

    #[test]
    fn example_a_matrix() {
        let a = ColouredGraph::from_loops_and_edges(
            &[Colours::RED, Colours::BLUE, Colours::BLUE],
            &[
                (0, 1, Colours::BLUE),
                (0, 2, Colours::BLUE),
                (1, 2, Colours::RED),
            ],
        );
        assert_eq!(
            a.to_matrix().unwrap(),
            StarMatrix::parse(&["011", "110", "101"]).unwrap()
        );
    }

    #[test]
    fn nu_examples() {
        let k2 = ColouredGraph::nu(&SimpleGraph::complete(2)).unwrap();
        assert_eq!(k2.blue_pairs(), vec![(0, 1)]);
        assert!(k2.red_pairs().is_empty());

        let p3 = ColouredGraph::nu(&SimpleGraph::path(3)).unwrap();
        assert_eq!(p3.blue_pairs(), vec![(0, 1), (1, 2)]);
        assert_eq!(p3.red_pairs(), vec![(0, 2)]);

        let c5 = ColouredGraph::nu(&SimpleGraph::cycle(5)).unwrap();
        assert_eq!(c5.blue_pairs().len(), 5);
        assert_eq!(c5.red_pairs().len(), 5);

        let mut looped = SimpleGraph::new(1);
        looped.add_edge(0, 0);
        assert_eq!(ColouredGraph::nu(&looped), Err(Error::UnexpectedLoop(0)));
    }

    #[test]
    fn star_encode_examples() {
        let k2 = ColouredGraph::star_encode(&SimpleGraph::complete(2));
        assert_eq!(k2.loop_colours(0), Colours::RED);
        assert_eq!(k2.loop_colours(1), Colours::RED);
        assert_eq!(k2.colours(0, 1), Colours::BLUE);

        let k1k2 = ColouredGraph::star_encode(&SimpleGraph::from_edges(3, &[(1, 2)]).unwrap());
        assert!(k1k2
            .vertices()
            .all(|v| k1k2.loop_colours(v) == Colours::RED));
        assert_eq!(k1k2.colours(1, 2), Colours::BLUE);
        assert_eq!(k1k2.colours(0, 1), Colours::RED);
        assert_eq!(k1k2.colours(0, 2), Colours::RED);

        let mut looped = SimpleGraph::new(1);
        looped.add_edge(0, 0);
        assert_eq!(
            ColouredGraph::star_encode(&looped).loop_colours(0),
            Colours::BLUE
        );
    }

    #[test]
    fn dual_examples() {
        let k2 = ColouredGraph::star_encode(&SimpleGraph::complete(2)).dual();
        assert_eq!(k2.loop_colours(0), Colours::BLUE);
        assert_eq!(k2.colours(0, 1), Colours::RED);
        let k3 = ColouredGraph::star_encode(&SimpleGraph::complete(3)).dual();
        assert!(k3.vertices().all(|v| k3.loop_colours(v) == Colours::BLUE));
        assert_eq!(k3.red_pairs(), vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn alt_digraph_examples() {
        let alt = m_s().alt_digraph().unwrap();
        assert!(alt.digraph.has_arc(0, 1) && alt.digraph.has_arc(1, 0));

        let k2 = ColouredGraph::star_encode(&SimpleGraph::complete(2))
            .alt_digraph()
            .unwrap();
        assert!(k2.digraph.has_arc(0, 1) && k2.digraph.has_arc(1, 0));

        let k3 = ColouredGraph::star_encode(&SimpleGraph::complete(3))
            .alt_digraph()
            .unwrap();
        assert_eq!(k3.digraph.arcs().len(), 6);

        assert_eq!(
            ColouredGraph::empty(1).alt_digraph(),
            Err(Error::NotReflexive(0))
        );
    }

    #[test]
    fn alt_digraph_tags() {
        let alt = m_s().alt_digraph().unwrap();
        assert_eq!(alt.tags, vec![Colours::RED, Colours::BLUE]);
        let mut g = ColouredGraph::empty(1);
        g.set(0, 0, Colours::STAR);
        assert_eq!(g.alt_digraph().unwrap().tags, vec![Colours::STAR]);
    }

    #[test]
    fn girth_examples() {
        assert_eq!(m_s().girth(), Some(1));
        assert_eq!(
            ColouredGraph::nu(&SimpleGraph::cycle(5)).unwrap().girth(),
            Some(3)
        );
        let g = ColouredGraph::from_pairs(2, &[(0, 1)], &[(0, 1)]).unwrap();
        assert_eq!(g.girth(), Some(2));
        let path = ColouredGraph::from_pairs(3, &[(0, 1)], &[(1, 2)]).unwrap();
        assert_eq!(path.girth(), None);
        let c4 = ColouredGraph::from_pairs(4, &[(0, 1), (2, 3)], &[(1, 2), (3, 0)]).unwrap();
        assert_eq!(c4.girth(), Some(4));
    }

    #[test]
    fn hom_violation_reports_pair() {
        let g = ColouredGraph::from_pairs(2, &[(0, 1)], &[]).unwrap();
        let blue_loop = ColouredGraph::from_pairs(1, &[], &[(0, 0)]).unwrap();
        assert_eq!(g.hom_violation(&blue_loop, &[0, 0]), Some((0, 1)));
        assert!(g.is_hom(&m_s(), &[0, 1]));
    }

    #[test]
    fn from_pairs_range_checked() {
        assert_eq!(
            ColouredGraph::from_pairs(2, &[(0, 2)], &[]),
            Err(Error::VertexOutOfRange { vertex: 2, n: 2 })
        );
    }
}
