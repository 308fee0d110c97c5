//! Sandwich problems for matrix partitions: instances, the reduction to a
//! list CSP over the matrix graph, witness extraction and a brute-force
//! oracle.

use crate::classify::{classify_matrix, Verdict};
use crate::error::{Error, Result};
use crate::graphs::{ColouredGraph, Entry, StarMatrix};
use crate::homsearch::{find_hom, Homomorphism, ListCspInstance};
use crate::polysolve::solve_list_csp;
use crate::vset::VertexSet;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

/// Most optional pairs the brute-force oracle will enumerate over.
pub const BRUTE_FORCE_SLACK_LIMIT: usize = 20;

type Pair = (usize, usize);

/// Mandatory edges `E1` inside allowed edges `E2` on `n` vertices, with
/// optional lists of matrix rows per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SandwichWire", into = "SandwichWire")]
pub struct SandwichInstance {
    n: usize,
    mandatory: BTreeSet<Pair>,
    allowed: BTreeSet<Pair>,
    lists: Option<Vec<VertexSet>>,
}

#[derive(Serialize, Deserialize)]
struct SandwichWire {
    n: usize,
    mandatory: Vec<[usize; 2]>,
    allowed: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    lists: Option<BTreeMap<usize, Vec<usize>>>,
}

impl TryFrom<SandwichWire> for SandwichInstance {
    type Error = Error;

    fn try_from(w: SandwichWire) -> Result<Self> {
        let pairs = |v: &[[usize; 2]]| v.iter().map(|p| (p[0], p[1])).collect::<Vec<_>>();
        let s = SandwichInstance::new(w.n, &pairs(&w.mandatory), &pairs(&w.allowed))?;
        match w.lists {
            None => Ok(s),
            Some(map) => {
                if let Some(&vertex) = map.keys().find(|&&v| v >= w.n) {
                    return Err(Error::VertexOutOfRange { vertex, n: w.n });
                }
                let mut lists = vec![VertexSet::full(VertexSet::CAPACITY); w.n];
                for (v, parts) in map {
                    if let Some(&value) = parts.iter().find(|&&p| p >= VertexSet::CAPACITY) {
                        return Err(Error::InvalidList {
                            vertex: v,
                            value,
                            n: VertexSet::CAPACITY,
                        });
                    }
                    lists[v] = parts.into_iter().collect();
                }
                s.with_lists(lists)
            }
        }
    }
}

impl From<SandwichInstance> for SandwichWire {
    fn from(s: SandwichInstance) -> Self {
        let arrays = |set: &BTreeSet<Pair>| set.iter().map(|&(u, v)| [u, v]).collect();
        SandwichWire {
            n: s.n,
            mandatory: arrays(&s.mandatory),
            allowed: arrays(&s.allowed),
            lists: s.lists.map(|ls| {
                ls.into_iter()
                    .enumerate()
                    .map(|(v, l)| (v, l.to_vec()))
                    .collect()
            }),
        }
    }
}

fn normalise(n: usize, pairs: &[Pair]) -> Result<BTreeSet<Pair>> {
    pairs
        .iter()
        .map(|&(u, v)| {
            if let Some(vertex) = [u, v].into_iter().find(|&x| x >= n) {
                Err(Error::VertexOutOfRange { vertex, n })
            } else if u == v {
                Err(Error::UnexpectedLoop(u))
            } else {
                Ok((u.min(v), u.max(v)))
            }
        })
        .collect()
}

impl SandwichInstance {
    pub fn new(n: usize, mandatory: &[Pair], allowed: &[Pair]) -> Result<Self> {
        let mandatory = normalise(n, mandatory)?;
        let allowed = normalise(n, allowed)?;
        if let Some(&(u, v)) = mandatory.difference(&allowed).next() {
            return Err(Error::MandatoryNotAllowed(u, v));
        }
        Ok(SandwichInstance {
            n,
            mandatory,
            allowed,
            lists: None,
        })
    }

    /// Restricts each vertex to the matrix rows in its list.
    pub fn with_lists(mut self, lists: Vec<VertexSet>) -> Result<Self> {
        if lists.len() != self.n {
            return Err(Error::Precondition(format!(
                "{} lists given for {} vertices",
                lists.len(),
                self.n
            )));
        }
        self.lists = Some(lists);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mandatory(&self) -> &BTreeSet<Pair> {
        &self.mandatory
    }

    pub fn allowed(&self) -> &BTreeSet<Pair> {
        &self.allowed
    }

    pub fn lists(&self) -> Option<&[VertexSet]> {
        self.lists.as_deref()
    }

    /// Allowed pairs that are not mandatory.
    pub fn optional(&self) -> Vec<Pair> {
        self.allowed.difference(&self.mandatory).copied().collect()
    }

    fn list(&self, v: usize, parts: usize) -> VertexSet {
        let full = VertexSet::full(parts);
        self.lists.as_ref().map_or(full, |ls| ls[v].intersect(full))
    }
}

/// Blue on mandatory pairs, red on pairs outside the allowed set.
pub fn to_coloured_graph(s: &SandwichInstance) -> ColouredGraph {
    let mut g = ColouredGraph::empty(s.n);
    for &(u, v) in &s.mandatory {
        g.add_blue(u, v);
    }
    for u in 0..s.n {
        for v in u + 1..s.n {
            if !s.allowed.contains(&(u, v)) {
                g.add_red(u, v);
            }
        }
    }
    g
}

/// The CSP instance over the graph of an `parts`-row matrix. Lists beyond
/// the matrix are cut to it.
pub fn to_csp_instance(s: &SandwichInstance, parts: usize) -> Result<ListCspInstance> {
    if parts > VertexSet::CAPACITY {
        return Err(Error::TemplateTooLarge(parts));
    }
    let lists = (0..s.n).map(|v| s.list(v, parts)).collect();
    ListCspInstance::with_lists(to_coloured_graph(s), lists)
}

/// An edge set between the bounds and the partition it satisfies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SandwichWitness {
    pub edges: Vec<Pair>,
    pub partition: Vec<usize>,
}

impl SandwichWitness {
    /// Pairs on a `1` entry, plus mandatory pairs on a `*` entry.
    pub fn from_partition(m: &StarMatrix, s: &SandwichInstance, partition: Vec<usize>) -> Self {
        let mut edges = Vec::new();
        for u in 0..s.n {
            for v in u + 1..s.n {
                let include = match m.get(partition[u], partition[v]) {
                    Entry::One => true,
                    Entry::Star => s.mandatory.contains(&(u, v)),
                    Entry::Zero => false,
                };
                if include {
                    edges.push((u, v));
                }
            }
        }
        SandwichWitness { edges, partition }
    }

    /// `E1 ⊆ E ⊆ E2`, lists respected and every pair allowed by its entry.
    pub fn verify(&self, m: &StarMatrix, s: &SandwichInstance) -> bool {
        let edges: BTreeSet<Pair> = self.edges.iter().copied().collect();
        self.partition.len() == s.n
            && edges.len() == self.edges.len()
            && s.mandatory.is_subset(&edges)
            && edges.is_subset(&s.allowed)
            && self
                .partition
                .iter()
                .enumerate()
                .all(|(v, &p)| s.list(v, m.n()).contains(p))
            && is_partition(m, s.n, &edges, &self.partition)
    }
}

fn is_partition(m: &StarMatrix, n: usize, edges: &BTreeSet<Pair>, f: &[usize]) -> bool {
    (0..n).all(|u| (u + 1..n).all(|v| m.get(f[u], f[v]).allows(edges.contains(&(u, v)))))
}

/// Whether exponential search may be used when no polynomial route applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchPolicy {
    PolynomialOnly,
    AllowOracle,
}

/// Solves the sandwich problem without lists through the CSP of the
/// matrix graph. NP-complete matrices need [`SearchPolicy::AllowOracle`].
pub fn solve_sandwich(
    m: &StarMatrix,
    s: &SandwichInstance,
    policy: SearchPolicy,
) -> Result<Option<SandwichWitness>> {
    if s.lists.is_some() {
        return Err(Error::Precondition(
            "instance carries lists; use solve_list_sandwich".into(),
        ));
    }
    let template = ColouredGraph::from_matrix(m);
    let inst = to_csp_instance(s, m.n())?;
    let hom = match (classify_matrix(m)?.verdict, policy) {
        (Verdict::PolynomialTime, _) => solve_list_csp(&template, &inst)?,
        (Verdict::NpComplete, SearchPolicy::AllowOracle) => find_hom(&inst, &template),
        (Verdict::NpComplete, SearchPolicy::PolynomialOnly) => return Err(Error::Intractable),
    };
    Ok(hom.map(|h| witness(m, s, h)))
}

/// As [`solve_sandwich`] with the instance lists threaded through. Fails
/// with [`Error::OpenListRegime`] or [`Error::Intractable`] when no
/// polynomial list route exists, unless the oracle is allowed.
pub fn solve_list_sandwich(
    m: &StarMatrix,
    s: &SandwichInstance,
    policy: SearchPolicy,
) -> Result<Option<SandwichWitness>> {
    let template = ColouredGraph::from_matrix(m);
    let inst = to_csp_instance(s, m.n())?;
    let hom = match solve_list_csp(&template, &inst) {
        Err(Error::Intractable | Error::OpenListRegime) if policy == SearchPolicy::AllowOracle => {
            find_hom(&inst, &template)
        }
        other => other?,
    };
    Ok(hom.map(|h| witness(m, s, h)))
}

fn witness(m: &StarMatrix, s: &SandwichInstance, h: Homomorphism) -> SandwichWitness {
    let w = SandwichWitness::from_partition(m, s, h.map);
    assert!(
        w.verify(m, s),
        "homomorphism gave an invalid sandwich witness"
    );
    w
}

/// Tries every edge set between the bounds, smallest optional subsets in
/// binary counting order, with a backtracking partition search for each.
pub fn brute_force_sandwich(
    m: &StarMatrix,
    s: &SandwichInstance,
) -> Result<Option<SandwichWitness>> {
    let optional = s.optional();
    if optional.len() > BRUTE_FORCE_SLACK_LIMIT {
        return Err(Error::SizeLimit {
            what: "optional pairs for brute-force sandwich",
            size: optional.len(),
            limit: BRUTE_FORCE_SLACK_LIMIT,
        });
    }
    for mask in 0u32..1 << optional.len() {
        let mut edges = s.mandatory.clone();
        edges.extend(
            optional
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &p)| p),
        );
        if let Some(partition) = brute_force_partition(m, s, &edges) {
            return Ok(Some(SandwichWitness {
                edges: edges.into_iter().collect(),
                partition,
            }));
        }
    }
    Ok(None)
}

/// Backtracking search for an `m`-partition of the graph `(n, edges)`
/// respecting the instance lists.
pub fn brute_force_partition(
    m: &StarMatrix,
    s: &SandwichInstance,
    edges: &BTreeSet<Pair>,
) -> Option<Vec<usize>> {
    fn extend(
        m: &StarMatrix,
        s: &SandwichInstance,
        edges: &BTreeSet<Pair>,
        f: &mut Vec<usize>,
    ) -> bool {
        let v = f.len();
        if v == s.n {
            return true;
        }
        for p in s.list(v, m.n()).iter() {
            if (0..v).all(|u| m.get(f[u], p).allows(edges.contains(&(u, v)))) {
                f.push(p);
                if extend(m, s, edges, f) {
                    return true;
                }
                f.pop();
            }
        }
        false
    }
    let mut f = Vec::with_capacity(s.n);
    extend(m, s, edges, &mut f).then_some(f)
}
