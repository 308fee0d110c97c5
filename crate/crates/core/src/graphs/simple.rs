use crate::error::{Error, Result};

/// Undirected graph on `0..n`; loops are allowed and checked per operation.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SimpleGraph {
    n: usize,
    adj: Vec<bool>,
}

impl SimpleGraph {
    pub fn new(n: usize) -> Self {
        SimpleGraph {
            n,
            adj: vec![false; n * n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = SimpleGraph::new(n);
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = SimpleGraph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = SimpleGraph::new(n);
        for v in 1..n {
            g.add_edge(v - 1, v);
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = SimpleGraph::path(n);
        if n > 2 {
            g.add_edge(n - 1, 0);
        }
        g
    }

    /// Complete bipartite graph with sides `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = SimpleGraph::new(a + b);
        for u in 0..a {
            for v in a..a + b {
                g.add_edge(u, v);
            }
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
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.n + v]
    }

    pub fn has_loop(&self, v: usize) -> bool {
        self.has_edge(v, v)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        self.adj[u * self.n + v] = true;
        self.adj[v * self.n + u] = true;
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u * self.n + v] = false;
        self.adj[v * self.n + u] = false;
    }

    /// Edges `(i, j)` with `i <= j`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i..self.n {
                if self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn is_loopless(&self) -> bool {
        self.vertices().all(|v| !self.has_loop(v))
    }

    pub fn check_loopless(&self) -> Result<()> {
        match self.vertices().find(|&v| self.has_loop(v)) {
            Some(v) => Err(Error::UnexpectedLoop(v)),
            None => Ok(()),
        }
    }

    pub fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&w| self.has_edge(v, w))
    }

    pub fn induced(&self, vertices: &[usize]) -> Self {
        let mut g = SimpleGraph::new(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    pub fn disjoint_union(&self, other: &SimpleGraph) -> Self {
        let mut g = SimpleGraph::new(self.n + other.n);
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.add_edge(self.n + u, self.n + v);
        }
        g
    }
}

/// Directed graph on `0..n` with successor lists kept sorted.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Digraph {
    n: usize,
    succ: Vec<Vec<usize>>,
}

impl Digraph {
    pub fn new(n: usize) -> Self {
        Digraph {
            n,
            succ: vec![Vec::new(); n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_arc(&mut self, u: usize, v: usize) {
        if let Err(pos) = self.succ[u].binary_search(&v) {
            self.succ[u].insert(pos, v);
        }
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.succ[u].binary_search(&v).is_ok()
    }

    pub fn successors(&self, u: usize) -> &[usize] {
        &self.succ[u]
    }

    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.succ
    }

    pub fn arcs(&self) -> Vec<(usize, usize)> {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(u, s)| s.iter().map(move |&v| (u, v)))
            .collect()
    }
}
