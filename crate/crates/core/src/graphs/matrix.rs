use super::{Colours, SimpleGraph};
use crate::error::{Error, Result};
use std::fmt;

/// An entry of a partition matrix.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Entry {
    Zero,
    One,
    Star,
}

impl Entry {
    pub fn symbol(self) -> char {
        match self {
            Entry::Zero => '0',
            Entry::One => '1',
            Entry::Star => '*',
        }
    }

    pub fn from_symbol(c: char) -> Option<Entry> {
        match c {
            '0' => Some(Entry::Zero),
            '1' => Some(Entry::One),
            '*' => Some(Entry::Star),
            _ => None,
        }
    }

    /// Colours of the corresponding pair in the matrix graph.
    pub fn colours(self) -> Colours {
        match self {
            Entry::Zero => Colours::RED,
            Entry::One => Colours::BLUE,
            Entry::Star => Colours::STAR,
        }
    }

    pub fn from_colours(c: Colours) -> Option<Entry> {
        match c {
            Colours::RED => Some(Entry::Zero),
            Colours::BLUE => Some(Entry::One),
            Colours::STAR => Some(Entry::Star),
            _ => None,
        }
    }

    /// Whether an edge (`true`) or non-edge (`false`) may sit on this entry.
    pub fn allows(self, edge: bool) -> bool {
        match self {
            Entry::Zero => !edge,
            Entry::One => edge,
            Entry::Star => true,
        }
    }
}

/// Symmetric matrix over `{0, 1, *}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StarMatrix {
    n: usize,
    entries: Vec<Entry>,
}

impl StarMatrix {
    pub fn new(rows: Vec<Vec<Entry>>) -> Result<Self> {
        let n = rows.len();
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::RaggedMatrix {
                    row,
                    len: r.len(),
                    expected: n,
                });
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::AsymmetricMatrix(i, j));
                }
            }
        }
        Ok(StarMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Parses rows written as strings such as `["0*", "*1"]`.
    pub fn parse(rows: &[&str]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|r| {
                r.chars()
                    .map(|c| {
                        Entry::from_symbol(c).ok_or_else(|| Error::InvalidEntry(c.to_string()))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        StarMatrix::new(parsed)
    }

    /// 0/1 adjacency matrix of a graph; loops give 1 on the diagonal.
    pub fn adjacency(g: &SimpleGraph) -> Self {
        let n = g.n();
        let entries = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| {
                if g.has_edge(i, j) {
                    Entry::One
                } else {
                    Entry::Zero
                }
            })
            .collect();
        StarMatrix { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Entry {
        self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<Entry>> {
        self.entries
            .chunks(self.n.max(1))
            .take(self.n)
            .map(|r| r.to_vec())
            .collect()
    }
}

impl fmt::Debug for StarMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| r.iter().map(|e| e.symbol()).collect())
            .collect();
        write!(f, "StarMatrix{rows:?}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_get() {
        let m = StarMatrix::parse(&["0*", "*1"]).unwrap();
        assert_eq!(m.n(), 2);
        assert_eq!(m.get(0, 1), Entry::Star);
        assert_eq!(m.get(1, 1), Entry::One);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            StarMatrix::parse(&["01", "*1"]),
            Err(Error::AsymmetricMatrix(0, 1))
        );
        assert_eq!(
            StarMatrix::parse(&["0", "11"]),
            Err(Error::RaggedMatrix {
                row: 0,
                len: 1,
                expected: 2
            })
        );
        assert_eq!(
            StarMatrix::parse(&["x"]),
            Err(Error::InvalidEntry("x".into()))
        );
    }

    #[test]
    fn adjacency_of_triangle() {
        let m = StarMatrix::adjacency(&SimpleGraph::complete(3));
        assert_eq!(m, StarMatrix::parse(&["011", "101", "110"]).unwrap());
    }

    #[test]
    fn entry_semantics() {
        assert!(Entry::Star.allows(true) && Entry::Star.allows(false));
        assert!(Entry::One.allows(true) && !Entry::One.allows(false));
        assert!(Entry::Zero.allows(false) && !Entry::Zero.allows(true));
    }
}
