//! Brute-force canonical labelling and enumeration up to isomorphism.

use super::{ColouredGraph, Colours};
use crate::error::{Error, Result};
use std::collections::HashSet;

const MAX_CANON_VERTICES: usize = 8;
const MAX_LABELLED: usize = 1 << 21;

/// Pair colours allowed in reflexive complete templates.
pub const TEMPLATE_ALPHABET: [Colours; 3] = [Colours::RED, Colours::BLUE, Colours::STAR];
/// Pair colours allowed in arbitrary instances.
pub const INSTANCE_ALPHABET: [Colours; 4] =
    [Colours::NONE, Colours::RED, Colours::BLUE, Colours::STAR];

/// Isomorphism-invariant byte string: the vertex count followed by the
/// column-major upper triangle, minimised over all vertex orders.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    /// Compact text form: vertex count, then one symbol per cell.
    pub fn to_code(&self) -> String {
        let mut s = self.0[0].to_string();
        s.push(':');
        s.extend(self.0[1..].iter().map(|&b| Colours::from_bits(b).symbol()));
        s
    }

    /// The canonical representative graph.
    pub fn to_graph(&self) -> ColouredGraph {
        let n = self.0[0] as usize;
        let mut g = ColouredGraph::empty(n);
        let mut cells = self.0[1..].iter();
        for j in 0..n {
            for i in 0..=j {
                g.set(
                    i,
                    j,
                    Colours::from_bits(*cells.next().expect("well-formed form")),
                );
            }
        }
        g
    }
}

impl ColouredGraph {
    pub fn canonical_form(&self) -> Result<CanonicalForm> {
        let n = self.n();
        if n > MAX_CANON_VERTICES {
            return Err(Error::SizeLimit {
                what: "canonical form vertex count",
                size: n,
                limit: MAX_CANON_VERTICES,
            });
        }
        let mut search = Search {
            g: self,
            order: Vec::with_capacity(n),
            used: vec![false; n],
            current: Vec::with_capacity(n * (n + 1) / 2),
            best: None,
        };
        search.extend();
        let mut bytes = vec![n as u8];
        bytes.extend(search.best.unwrap_or_default());
        Ok(CanonicalForm(bytes))
    }

    /// Parses the text form written by [`CanonicalForm::to_code`]; the
    /// graph need not be in canonical order.
    pub fn from_code(code: &str) -> Result<ColouredGraph> {
        let bad = || Error::InvalidCode(code.to_string());
        let (n, cells) = code.split_once(':').ok_or_else(bad)?;
        let n: usize = n.parse().map_err(|_| bad())?;
        let colours: Vec<Colours> = cells
            .chars()
            .map(|c| {
                ['-', 'R', 'B', '*']
                    .iter()
                    .position(|&s| s == c)
                    .map(|b| Colours::from_bits(b as u8))
            })
            .collect::<Option<_>>()
            .ok_or_else(bad)?;
        if colours.len() != n * (n + 1) / 2 {
            return Err(bad());
        }
        let mut g = ColouredGraph::empty(n);
        let mut cells = colours.into_iter();
        for j in 0..n {
            for i in 0..=j {
                g.set(i, j, cells.next().expect("length checked"));
            }
        }
        Ok(g)
    }

    pub fn canonical_graph(&self) -> Result<ColouredGraph> {
        Ok(self.canonical_form()?.to_graph())
    }
}

struct Search<'a> {
    g: &'a ColouredGraph,
    order: Vec<usize>,
    used: Vec<bool>,
    current: Vec<u8>,
    best: Option<Vec<u8>>,
}

impl Search<'_> {
    fn extend(&mut self) {
        let n = self.g.n();
        if self.order.len() == n {
            if self.best.as_ref().is_none_or(|b| self.current < *b) {
                self.best = Some(self.current.clone());
            }
            return;
        }
        let j = self.order.len();
        for v in 0..n {
            if self.used[v] {
                continue;
            }
            let mark = self.current.len();
            self.order.push(v);
            for i in 0..=j {
                self.current.push(self.g.colours(self.order[i], v).bits());
            }
            let prefix_ok = match &self.best {
                Some(b) => self.current[..] <= b[..self.current.len()],
                None => true,
            };
            if prefix_ok {
                self.used[v] = true;
                self.extend();
                self.used[v] = false;
            }
            self.order.pop();
            self.current.truncate(mark);
        }
    }
}

/// All graphs on `n` vertices whose loops and pairs take colours from
/// `alphabet`, one canonical representative per isomorphism class, sorted
/// by canonical form.
pub fn enumerate_classes(n: usize, alphabet: &[Colours]) -> Result<Vec<ColouredGraph>> {
    let cells = n * (n + 1) / 2;
    let total = (alphabet.len() as f64).powi(cells as i32);
    if total > MAX_LABELLED as f64 {
        return Err(Error::SizeLimit {
            what: "labelled enumeration",
            size: total as usize,
            limit: MAX_LABELLED,
        });
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let mut digits = vec![0usize; cells];
    let mut seen: HashSet<CanonicalForm> = HashSet::new();
    let mut g = ColouredGraph::empty(n);
    loop {
        for (&(i, j), &d) in pairs.iter().zip(&digits) {
            g.set(i, j, alphabet[d]);
        }
        seen.insert(g.canonical_form()?);
        let mut k = 0;
        loop {
            if k == cells {
                let mut forms: Vec<CanonicalForm> = seen.into_iter().collect();
                forms.sort();
                return Ok(forms.iter().map(CanonicalForm::to_graph).collect());
            }
            digits[k] += 1;
            if digits[k] < alphabet.len() {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
    }
}
