//! JSON wire formats. Pairs are written with `i <= j`, sorted.

use super::{ColouredGraph, Entry, SimpleGraph, StarMatrix};
use crate::error::{Error, Result};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Serialize, Deserialize)]
struct GraphWire {
    n: usize,
    blue: Vec<[usize; 2]>,
    red: Vec<[usize; 2]>,
}

#[derive(Serialize, Deserialize)]
struct SimpleWire {
    n: usize,
    edges: Vec<[usize; 2]>,
}

#[derive(Serialize, Deserialize)]
struct MatrixWire {
    entries: Vec<Vec<String>>,
}

fn tuples(pairs: &[[usize; 2]]) -> Vec<(usize, usize)> {
    pairs.iter().map(|p| (p[0], p[1])).collect()
}

fn arrays(pairs: Vec<(usize, usize)>) -> Vec<[usize; 2]> {
    pairs.into_iter().map(|(i, j)| [i, j]).collect()
}

impl Serialize for ColouredGraph {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphWire {
            n: self.n(),
            blue: arrays(self.blue_pairs()),
            red: arrays(self.red_pairs()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ColouredGraph {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = GraphWire::deserialize(d)?;
        ColouredGraph::from_pairs(w.n, &tuples(&w.red), &tuples(&w.blue)).map_err(D::Error::custom)
    }
}

impl Serialize for SimpleGraph {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SimpleWire {
            n: self.n(),
            edges: arrays(self.edges()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SimpleGraph {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = SimpleWire::deserialize(d)?;
        SimpleGraph::from_edges(w.n, &tuples(&w.edges)).map_err(D::Error::custom)
    }
}

fn parse_entry(s: &str) -> Result<Entry> {
    let mut chars = s.chars();
    match (chars.next().and_then(Entry::from_symbol), chars.next()) {
        (Some(e), None) => Ok(e),
        _ => Err(Error::InvalidEntry(s.to_string())),
    }
}

impl Serialize for StarMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let entries = self
            .rows()
            .iter()
            .map(|r| r.iter().map(|e| e.symbol().to_string()).collect())
            .collect();
        MatrixWire { entries }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for StarMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = MatrixWire::deserialize(d)?;
        let rows = w
            .entries
            .iter()
            .map(|r| r.iter().map(|s| parse_entry(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        StarMatrix::new(rows).map_err(D::Error::custom)
    }
}
