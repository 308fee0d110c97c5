//! Products, powers and the Siggers and cyclic quotient powers.

use super::{ColouredGraph, Colours};
use crate::error::{Error, Result};

const MAX_TUPLES: usize = 1 << 20;
const MAX_POWER_VERTICES: usize = 4096;
const MAX_CLASSES: usize = 4096;
const MAX_EDGE_WORK: usize = 1 << 28;

/// Mixed-radix little-endian indexing of `arity`-tuples over `0..base`:
/// tuple `(t0, t1, ...)` has index `t0 + t1*base + ...`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TupleSpace {
    base: usize,
    arity: usize,
    size: usize,
}

impl TupleSpace {
    pub fn new(base: usize, arity: usize) -> Result<Self> {
        if arity == 0 {
            return Err(Error::Arity { got: 0, min: 1 });
        }
        let mut size: usize = 1;
        for _ in 0..arity {
            size = size
                .checked_mul(base)
                .filter(|&s| s <= MAX_TUPLES)
                .ok_or(Error::SizeLimit {
                    what: "tuple space",
                    size: usize::MAX,
                    limit: MAX_TUPLES,
                })?;
        }
        Ok(TupleSpace { base, arity, size })
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn index(&self, tuple: &[usize]) -> usize {
        debug_assert_eq!(tuple.len(), self.arity);
        tuple.iter().rev().fold(0, |acc, &t| acc * self.base + t)
    }

    pub fn tuple(&self, mut index: usize) -> Vec<usize> {
        let mut t = Vec::with_capacity(self.arity);
        for _ in 0..self.arity {
            t.push(index % self.base);
            index /= self.base;
        }
        t
    }

    /// Position of the tuple in lexicographic order (first coordinate most significant).
    pub fn lex_key(&self, index: usize) -> usize {
        self.tuple(index)
            .iter()
            .fold(0, |acc, &t| acc * self.base + t)
    }

    /// Index of the constant tuple `(x, ..., x)`.
    pub fn constant(&self, x: usize) -> usize {
        self.index(&vec![x; self.arity])
    }

    /// Index of the rotation `(t1, ..., t_{m-1}, t0)`.
    pub fn rotate(&self, index: usize) -> usize {
        index / self.base + (index % self.base) * (self.size / self.base)
    }
}

/// Componentwise product; vertex `(a, b)` has index `a + |g| * b`.
pub fn product(g: &ColouredGraph, h: &ColouredGraph) -> ColouredGraph {
    let (gn, hn) = (g.n(), h.n());
    let mut p = ColouredGraph::empty(gn * hn);
    for x in 0..gn * hn {
        for y in x..gn * hn {
            let c = g
                .colours(x % gn, y % gn)
                .intersect(h.colours(x / gn, y / gn));
            p.set(x, y, c);
        }
    }
    p
}

impl ColouredGraph {
    /// The `m`-th power with mixed-radix little-endian tuple indexing.
    pub fn power(&self, m: usize) -> Result<ColouredGraph> {
        let space = TupleSpace::new(self.n(), m)?;
        if space.size() > MAX_POWER_VERTICES {
            return Err(Error::SizeLimit {
                what: "power",
                size: space.size(),
                limit: MAX_POWER_VERTICES,
            });
        }
        let tuples: Vec<Vec<usize>> = (0..space.size()).map(|i| space.tuple(i)).collect();
        let mut p = ColouredGraph::empty(space.size());
        for x in 0..space.size() {
            for y in x..space.size() {
                let c = tuples[x]
                    .iter()
                    .zip(&tuples[y])
                    .fold(Colours::STAR, |acc, (&a, &b)| {
                        acc.intersect(self.colours(a, b))
                    });
                p.set(x, y, c);
            }
        }
        Ok(p)
    }

    /// `H^4` modulo the identification of `(a,r,e,a)` with `(r,a,r,e)`.
    pub fn siggers_power(&self) -> Result<QuotientPower> {
        let space = TupleSpace::new(self.n(), 4)?;
        let mut uf = UnionFind::new(space.size());
        let n = self.n();
        for a in 0..n {
            for r in 0..n {
                for e in 0..n {
                    uf.union(space.index(&[a, r, e, a]), space.index(&[r, a, r, e]));
                }
            }
        }
        QuotientPower::build(self, space, uf)
    }

    /// `H^p` modulo cyclic rotation of coordinates.
    pub fn cyclic_power(&self, p: usize) -> Result<QuotientPower> {
        if p < 2 {
            return Err(Error::Arity { got: p, min: 2 });
        }
        let space = TupleSpace::new(self.n(), p)?;
        let mut uf = UnionFind::new(space.size());
        for x in 0..space.size() {
            uf.union(x, space.rotate(x));
        }
        QuotientPower::build(self, space, uf)
    }
}

/// A quotient of a power: classes of tuples with the induced edge colours.
#[derive(Clone, Debug)]
pub struct QuotientPower {
    pub graph: ColouredGraph,
    pub space: TupleSpace,
    class_of: Vec<usize>,
    representatives: Vec<usize>,
}

impl QuotientPower {
    fn build(h: &ColouredGraph, space: TupleSpace, mut uf: UnionFind) -> Result<Self> {
        let size = space.size();
        let roots: Vec<usize> = (0..size).map(|x| uf.find(x)).collect();
        let mut best = vec![usize::MAX; size];
        for x in 0..size {
            let key = space.lex_key(x);
            if key < best[roots[x]] {
                best[roots[x]] = key;
            }
        }
        let mut classes: Vec<(usize, usize)> = (0..size)
            .filter(|&x| roots[x] == x)
            .map(|root| (best[root], root))
            .collect();
        classes.sort_unstable();
        if classes.len() > MAX_CLASSES {
            return Err(Error::SizeLimit {
                what: "quotient class count",
                size: classes.len(),
                limit: MAX_CLASSES,
            });
        }
        let mut id_of_root = vec![usize::MAX; size];
        for (id, &(_, root)) in classes.iter().enumerate() {
            id_of_root[root] = id;
        }
        let class_of: Vec<usize> = roots.iter().map(|&r| id_of_root[r]).collect();
        let lex_base = TupleSpace {
            base: space.base,
            arity: space.arity,
            size,
        };
        let representatives = classes
            .iter()
            .map(|&(key, _)| {
                // The lexicographic key reads the tuple in reverse digit order.
                let mut t = lex_base.tuple(key);
                t.reverse();
                space.index(&t)
            })
            .collect();

        let mut graph = ColouredGraph::empty(classes.len());
        let weights: Vec<usize> = (0..space.arity).map(|i| space.base.pow(i as u32)).collect();
        for colour in [Colours::RED, Colours::BLUE] {
            let nbrs: Vec<Vec<usize>> = (0..h.n())
                .map(|a| {
                    (0..h.n())
                        .filter(|&b| h.colours(a, b).contains(colour))
                        .collect()
                })
                .collect();
            let total: usize = nbrs.iter().map(Vec::len).sum();
            let work = (total as f64).powi(space.arity as i32);
            if work > MAX_EDGE_WORK as f64 {
                return Err(Error::SizeLimit {
                    what: "quotient edge enumeration",
                    size: work as usize,
                    limit: MAX_EDGE_WORK,
                });
            }
            for x in 0..size {
                let t = space.tuple(x);
                let lists: Vec<&[usize]> = t.iter().map(|&a| nbrs[a].as_slice()).collect();
                let cx = class_of[x];
                for_each_product(&lists, &weights, |y| graph.add(cx, class_of[y], colour));
            }
        }
        Ok(QuotientPower {
            graph,
            space,
            class_of,
            representatives,
        })
    }

    pub fn n_classes(&self) -> usize {
        self.representatives.len()
    }

    pub fn class_of(&self, index: usize) -> usize {
        self.class_of[index]
    }

    pub fn class_of_tuple(&self, tuple: &[usize]) -> usize {
        self.class_of[self.space.index(tuple)]
    }

    /// Index of the lexicographically smallest tuple in `class`.
    pub fn representative(&self, class: usize) -> usize {
        self.representatives[class]
    }

    pub fn representative_tuple(&self, class: usize) -> Vec<usize> {
        self.space.tuple(self.representatives[class])
    }

    /// Tuple indices in `class`, ascending.
    pub fn members(&self, class: usize) -> Vec<usize> {
        (0..self.space.size())
            .filter(|&x| self.class_of[x] == class)
            .collect()
    }

    /// Class id of every tuple, indexed by tuple index.
    pub fn class_map(&self) -> &[usize] {
        &self.class_of
    }
}

/// Calls `f` with the index of every tuple in the product of `lists`.
fn for_each_product(lists: &[&[usize]], weights: &[usize], mut f: impl FnMut(usize)) {
    if lists.iter().any(|l| l.is_empty()) {
        return;
    }
    let m = lists.len();
    let mut pos = vec![0usize; m];
    let mut idx: usize = lists.iter().zip(weights).map(|(l, w)| l[0] * w).sum();
    loop {
        f(idx);
        let mut i = 0;
        loop {
            if i == m {
                return;
            }
            idx -= lists[i][pos[i]] * weights[i];
            pos[i] += 1;
            if pos[i] < lists[i].len() {
                idx += lists[i][pos[i]] * weights[i];
                break;
            }
            pos[i] = 0;
            idx += lists[i][0] * weights[i];
            i += 1;
        }
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}
