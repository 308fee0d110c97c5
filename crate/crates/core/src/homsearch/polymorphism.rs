use super::{find_hom_with_budget, ListCspInstance};
use crate::decompose::Decomposition;
use crate::error::{Error, Result};
use crate::graphs::{ColouredGraph, Colours, QuotientPower, TupleSpace};
use crate::vset::VertexSet;
use serde::{Deserialize, Serialize};

/// Search-node budget used by [`find_siggers`] and [`find_cyclic`].
pub const DEFAULT_BUDGET: u64 = 5_000_000;

/// An operation `H^arity → H` stored as a dense table indexed by the
/// mixed-radix little-endian tuple index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polymorphism {
    pub arity: usize,
    pub base: usize,
    pub table: Vec<usize>,
}

impl Polymorphism {
    pub fn new(base: usize, arity: usize, table: Vec<usize>) -> Result<Self> {
        let space = TupleSpace::new(base, arity)?;
        if table.len() != space.size() {
            return Err(Error::Precondition(format!(
                "table has {} entries, expected {}",
                table.len(),
                space.size()
            )));
        }
        if let Some(&v) = table.iter().find(|&&v| v >= base) {
            return Err(Error::VertexOutOfRange { vertex: v, n: base });
        }
        Ok(Polymorphism { arity, base, table })
    }

    /// The projection onto coordinate `i`.
    pub fn projection(base: usize, arity: usize, i: usize) -> Result<Self> {
        let space = TupleSpace::new(base, arity)?;
        let table = (0..space.size()).map(|x| space.tuple(x)[i]).collect();
        Ok(Polymorphism { arity, base, table })
    }

    pub fn space(&self) -> TupleSpace {
        TupleSpace::new(self.base, self.arity).expect("validated on construction")
    }

    pub fn apply(&self, args: &[usize]) -> usize {
        self.table[self.space().index(args)]
    }
}

/// Identities that [`verify_polymorphism`] can check.
#[derive(Clone, Copy, Debug)]
pub enum Identity<'a> {
    /// `f(y,x,...,x) = f(x,y,x,...,x) = ... = f(x,...,x,y)`.
    Wnu,
    /// `f(a,r,e,a) = f(r,a,r,e)`.
    Siggers,
    /// Invariance under rotating the arguments.
    Cyclic,
    Conservative,
    Idempotent,
    /// `f(y,x,x) = g(y,x,x,x)` for the given 4-ary `g`.
    Eq1With(&'a Polymorphism),
}

/// A concrete reason a table is not a polymorphism with the requested identities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// Two tuples joined by an edge of `colour` whose images are not.
    Edge {
        left: Vec<usize>,
        right: Vec<usize>,
        colour: char,
    },
    /// Argument tuples that the identity says must agree but do not.
    Identity {
        identity: String,
        left: Vec<usize>,
        right: Vec<usize>,
    },
    /// The table does not fit the template or the identity.
    Shape(String),
}

/// Checks colour preservation over every edge of `H^m` and then each
/// requested identity over every argument tuple.
pub fn verify_polymorphism(
    h: &ColouredGraph,
    f: &Polymorphism,
    identities: &[Identity],
) -> std::result::Result<(), Violation> {
    if f.base != h.n() {
        return Err(Violation::Shape(format!(
            "table over {} elements, template has {}",
            f.base,
            h.n()
        )));
    }
    let space = TupleSpace::new(f.base, f.arity).map_err(|e| Violation::Shape(e.to_string()))?;
    if f.table.len() != space.size() || f.table.iter().any(|&v| v >= h.n()) {
        return Err(Violation::Shape("table size or values out of range".into()));
    }
    check_edges(h, f, space)?;
    for identity in identities {
        check_identity(f, space, *identity)?;
    }
    Ok(())
}

fn check_edges(
    h: &ColouredGraph,
    f: &Polymorphism,
    space: TupleSpace,
) -> std::result::Result<(), Violation> {
    let n = h.n();
    for colour in [Colours::RED, Colours::BLUE] {
        let nbrs: Vec<Vec<usize>> = (0..n)
            .map(|a| {
                (0..n)
                    .filter(|&b| h.colours(a, b).contains(colour))
                    .collect()
            })
            .collect();
        for x in 0..space.size() {
            let tx = space.tuple(x);
            let fx = f.table[x];
            let mut ty = vec![0; f.arity];
            let mut pos = vec![0; f.arity];
            if tx.iter().any(|&a| nbrs[a].is_empty()) {
                continue;
            }
            loop {
                for i in 0..f.arity {
                    ty[i] = nbrs[tx[i]][pos[i]];
                }
                let y = space.index(&ty);
                if !h.colours(fx, f.table[y]).contains(colour) {
                    return Err(Violation::Edge {
                        left: tx,
                        right: ty,
                        colour: colour.symbol(),
                    });
                }
                let mut i = 0;
                while i < f.arity {
                    pos[i] += 1;
                    if pos[i] < nbrs[tx[i]].len() {
                        break;
                    }
                    pos[i] = 0;
                    i += 1;
                }
                if i == f.arity {
                    break;
                }
            }
        }
    }
    Ok(())
}

fn check_identity(
    f: &Polymorphism,
    space: TupleSpace,
    identity: Identity,
) -> std::result::Result<(), Violation> {
    let n = f.base;
    let m = f.arity;
    let mismatch = |name: &str, left: Vec<usize>, right: Vec<usize>| {
        Err(Violation::Identity {
            identity: name.to_string(),
            left,
            right,
        })
    };
    match identity {
        Identity::Wnu => {
            for x in 0..n {
                for y in 0..n {
                    let at = |i: usize| {
                        (0..m)
                            .map(|j| if j == i { y } else { x })
                            .collect::<Vec<_>>()
                    };
                    let first = at(0);
                    for i in 1..m {
                        let other = at(i);
                        if f.apply(&first) != f.apply(&other) {
                            return mismatch("wnu", first, other);
                        }
                    }
                }
            }
        }
        Identity::Siggers => {
            if m != 4 {
                return Err(Violation::Shape(format!(
                    "Siggers identity needs arity 4, got {m}"
                )));
            }
            for a in 0..n {
                for r in 0..n {
                    for e in 0..n {
                        let (left, right) = (vec![a, r, e, a], vec![r, a, r, e]);
                        if f.apply(&left) != f.apply(&right) {
                            return mismatch("siggers", left, right);
                        }
                    }
                }
            }
        }
        Identity::Cyclic => {
            for x in 0..space.size() {
                if f.table[x] != f.table[space.rotate(x)] {
                    return mismatch("cyclic", space.tuple(x), space.tuple(space.rotate(x)));
                }
            }
        }
        Identity::Conservative => {
            if let Some(x) = (0..space.size()).find(|&x| !space.tuple(x).contains(&f.table[x])) {
                return mismatch("conservative", space.tuple(x), vec![f.table[x]]);
            }
        }
        Identity::Idempotent => {
            if let Some(x) = (0..n).find(|&x| f.table[space.constant(x)] != x) {
                return mismatch("idempotent", vec![x; m], vec![f.table[space.constant(x)]]);
            }
        }
        Identity::Eq1With(g) => {
            if m != 3 || g.arity != 4 || g.base != n {
                return Err(Violation::Shape(
                    "Eq1 relates a ternary and a 4-ary operation on one domain".into(),
                ));
            }
            for x in 0..n {
                for y in 0..n {
                    let (left, right) = (vec![y, x, x], vec![y, x, x, x]);
                    if f.apply(&left) != g.apply(&right) {
                        return mismatch("eq1", left, right);
                    }
                }
            }
        }
    }
    Ok(())
}

/// A Siggers polymorphism of `h`, searched as a homomorphism from the
/// Siggers power; with `idempotent` the constant classes are pinned.
pub fn find_siggers(h: &ColouredGraph, idempotent: bool) -> Result<Option<Polymorphism>> {
    find_siggers_with_budget(h, idempotent, DEFAULT_BUDGET)
}

pub fn find_siggers_with_budget(
    h: &ColouredGraph,
    idempotent: bool,
    budget: u64,
) -> Result<Option<Polymorphism>> {
    let q = h.siggers_power()?;
    search_quotient(h, &q, idempotent, budget)
}

/// A `p`-ary cyclic polymorphism of `h`, searched on the cyclic power.
pub fn find_cyclic(h: &ColouredGraph, p: usize, idempotent: bool) -> Result<Option<Polymorphism>> {
    find_cyclic_with_budget(h, p, idempotent, DEFAULT_BUDGET)
}

pub fn find_cyclic_with_budget(
    h: &ColouredGraph,
    p: usize,
    idempotent: bool,
    budget: u64,
) -> Result<Option<Polymorphism>> {
    let q = h.cyclic_power(p)?;
    search_quotient(h, &q, idempotent, budget)
}

fn search_quotient(
    h: &ColouredGraph,
    q: &QuotientPower,
    idempotent: bool,
    budget: u64,
) -> Result<Option<Polymorphism>> {
    if h.n() > VertexSet::CAPACITY {
        return Err(Error::TemplateTooLarge(h.n()));
    }
    let mut lists = vec![VertexSet::full(h.n()); q.n_classes()];
    if idempotent {
        for x in 0..h.n() {
            lists[q.class_of(q.space.constant(x))] = VertexSet::singleton(x);
        }
    }
    let inst = ListCspInstance::with_lists(q.graph.clone(), lists)?;
    Ok(
        find_hom_with_budget(&inst, h, budget)?.map(|hom| Polymorphism {
            arity: q.space.arity(),
            base: h.n(),
            table: q.class_map().iter().map(|&c| hom.map[c]).collect(),
        }),
    )
}

/// The ternary and 4-ary operations built from a tractable decomposition.
/// Both act on the substructure induced by the decomposition's vertices;
/// element `i` of the operations stands for `domain[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WnuPair {
    pub domain: Vec<usize>,
    #[serde(skip)]
    pub structure: ColouredGraph,
    pub f3: Polymorphism,
    pub f4: Polymorphism,
}

impl WnuPair {
    /// Both operations are conservative WNU polymorphisms of the structure
    /// and `f3(y,x,x) = f4(y,x,x,x)`.
    pub fn verify(&self) -> std::result::Result<(), Violation> {
        let ids = [Identity::Wnu, Identity::Conservative];
        verify_polymorphism(&self.structure, &self.f3, &ids)?;
        verify_polymorphism(&self.structure, &self.f4, &ids)?;
        verify_polymorphism(&self.structure, &self.f3, &[Identity::Eq1With(&self.f4)])
    }
}

/// Builds `f3` and `f4` block by block: on tuples inside one block, `f3` is
/// the majority and `f4` the near-unanimity value (first projection if no
/// value occurs three times); on other tuples both return the first entry
/// lying in the latest block that the tuple meets.
pub fn build_wnu_pair(h: &ColouredGraph, d: &Decomposition) -> Result<WnuPair> {
    d.validate(h)?;
    let Some(base) = d.blocks.first() else {
        return Err(Error::InvalidDecomposition("no blocks".into()));
    };
    if base.vertices.len() > 2 {
        return Err(Error::InvalidDecomposition(
            "the base block has more than two vertices".into(),
        ));
    }
    for b in &d.blocks[1..] {
        let ok = match b.vertices.as_slice() {
            [_] => true,
            [u, v] => h.colours(*u, *v).is_star(),
            _ => false,
        };
        if !ok {
            return Err(Error::InvalidDecomposition(format!(
                "block {:?} is neither a vertex nor a *-edge",
                b.vertices
            )));
        }
    }
    let domain = d.vertices();
    let structure = h.induced(&domain);
    let mut block_of = vec![0; domain.len()];
    for (i, b) in d.blocks.iter().enumerate() {
        for v in &b.vertices {
            block_of[domain.binary_search(v).expect("in domain")] = i;
        }
    }
    let build = |arity: usize| -> Result<Polymorphism> {
        let space = TupleSpace::new(domain.len(), arity)?;
        let table = (0..space.size())
            .map(|x| {
                let t = space.tuple(x);
                let top = t.iter().map(|&a| block_of[a]).max().expect("arity ≥ 1");
                if t.iter().all(|&a| block_of[a] == top) {
                    let count = |v: usize| t.iter().filter(|&&a| a == v).count();
                    let threshold = if arity == 3 { 2 } else { 3 };
                    t.iter()
                        .copied()
                        .find(|&v| count(v) >= threshold)
                        .unwrap_or(t[0])
                } else {
                    *t.iter()
                        .find(|&&a| block_of[a] == top)
                        .expect("max is attained")
                }
            })
            .collect();
        Polymorphism::new(domain.len(), arity, table)
    };
    Ok(WnuPair {
        f3: build(3)?,
        f4: build(4)?,
        domain,
        structure,
    })
}
