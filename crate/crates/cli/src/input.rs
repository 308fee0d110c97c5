//! Reading templates, instances and graphs from files or inline JSON.

use crate::error::{CliError, CliResult};
use edgecsp::homsearch::ListCspInstance;
use edgecsp::{ColouredGraph, StarMatrix, VertexSet};
use serde::Deserialize;
use serde_json::Value;
use std::collections::BTreeMap;

/// An argument starting with `{` is inline JSON; anything else is a path.
pub fn read_source(arg: &str) -> CliResult<String> {
    if arg.trim_start().starts_with('{') {
        Ok(arg.to_string())
    } else {
        std::fs::read_to_string(arg).map_err(|source| CliError::Io {
            path: arg.to_string(),
            source,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum TemplateKind {
    /// Matrix if the JSON has `entries`, coloured graph otherwise.
    #[default]
    Auto,
    Matrix,
    Graph,
}

/// A template, with the matrix it came from if any.
pub struct Template {
    pub graph: ColouredGraph,
    pub matrix: Option<StarMatrix>,
}

pub fn parse_template(arg: &str, kind: TemplateKind) -> CliResult<Template> {
    let value: Value = serde_json::from_str(&read_source(arg)?)?;
    let as_matrix = match kind {
        TemplateKind::Auto => value.get("entries").is_some(),
        TemplateKind::Matrix => true,
        TemplateKind::Graph => false,
    };
    if as_matrix {
        let matrix: StarMatrix = serde_json::from_value(value)?;
        Ok(Template {
            graph: ColouredGraph::from_matrix(&matrix),
            matrix: Some(matrix),
        })
    } else {
        Ok(Template {
            graph: serde_json::from_value(value)?,
            matrix: None,
        })
    }
}

pub fn parse_matrix(arg: &str) -> CliResult<StarMatrix> {
    Ok(serde_json::from_str(&read_source(arg)?)?)
}

pub fn parse_json<T: for<'de> Deserialize<'de>>(arg: &str) -> CliResult<T> {
    Ok(serde_json::from_str(&read_source(arg)?)?)
}

/// Lists keyed by instance vertex; unlisted vertices may go anywhere.
pub type ListMap = BTreeMap<usize, Vec<usize>>;

#[derive(Deserialize)]
struct InstanceWire {
    #[serde(flatten)]
    graph: Value,
    #[serde(default)]
    lists: Option<ListMap>,
}

/// An instance graph plus optional lists; `override_lists` replaces them.
pub fn parse_instance(
    arg: &str,
    template_n: usize,
    override_lists: Option<ListMap>,
) -> CliResult<ListCspInstance> {
    let wire: InstanceWire = serde_json::from_str(&read_source(arg)?)?;
    let graph: ColouredGraph = serde_json::from_value(wire.graph)?;
    let lists = build_lists(
        graph.n(),
        template_n,
        override_lists.or(wire.lists).unwrap_or_default(),
    )?;
    let inst = ListCspInstance::with_lists(graph, lists)?;
    inst.check_lists(template_n)?;
    Ok(inst)
}

pub fn build_lists(n: usize, template_n: usize, map: ListMap) -> CliResult<Vec<VertexSet>> {
    if template_n > VertexSet::CAPACITY {
        return Err(edgecsp::Error::TemplateTooLarge(template_n).into());
    }
    let mut lists = vec![VertexSet::full(template_n); n];
    for (v, values) in map {
        if v >= n {
            return Err(CliError::Input(format!(
                "lists mention vertex {v}, but the instance has {n} vertices"
            )));
        }
        if let Some(&value) = values.iter().find(|&&t| t >= template_n) {
            return Err(edgecsp::Error::InvalidList {
                vertex: v,
                value,
                n: template_n,
            }
            .into());
        }
        lists[v] = values.into_iter().collect();
    }
    Ok(lists)
}
