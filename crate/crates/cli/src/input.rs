use std::io::Read;
use std::path::Path;

use clap::ValueEnum;
use mpss_core::graph::{parse_edge_list, parse_json, DirectedGraph, GraphMap};

use crate::Failure;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// JSON when the text starts with `{`, an edge list otherwise.
    #[default]
    Auto,
    Json,
    Edgelist,
}

/// Reads a graph from `path`, or from stdin for `None` and `-`.
pub fn read_graph(path: Option<&Path>, format: Format) -> Result<DirectedGraph, Failure> {
    let text = match path {
        None => read_stdin()?,
        Some(p) if p.as_os_str() == "-" => read_stdin()?,
        Some(p) => {
            std::fs::read_to_string(p).map_err(|e| Failure::Input(format!("cannot read {}: {e}", p.display())))?
        }
    };
    parse_graph(&text, format)
}

pub fn parse_graph(text: &str, format: Format) -> Result<DirectedGraph, Failure> {
    let json = match format {
        Format::Json => true,
        Format::Edgelist => false,
        Format::Auto => text.trim_start().starts_with('{'),
    };
    let parsed = if json { parse_json(text) } else { parse_edge_list(text) };
    parsed.map_err(Failure::from)
}

fn read_stdin() -> Result<String, Failure> {
    let mut s = String::new();
    std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Input(format!("cannot read stdin: {e}")))?;
    Ok(s)
}

/// `a:y1,b:y2` as a map from `source` to `target`.
pub fn parse_map(text: &str, source: &DirectedGraph, target: &DirectedGraph) -> Result<GraphMap, Failure> {
    let mut pairs = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (a, b) = item
            .split_once(':')
            .ok_or_else(|| Failure::Input(format!("map entry `{item}` is not of the form `a:b`")))?;
        pairs.push((a.trim().to_string(), b.trim().to_string()));
    }
    GraphMap::from_names(source, target, &pairs).map_err(Failure::from)
}

/// A homotopy level: a positive integer, or `None` for `∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Level(pub Option<usize>);

/// `inf`/`∞` or a positive integer.
pub fn parse_level(s: &str) -> Result<Level, String> {
    match s {
        "inf" | "infinity" | "∞" => Ok(Level(None)),
        _ => match s.parse::<usize>() {
            Ok(0) => Err("r must be at least 1".into()),
            Ok(r) => Ok(Level(Some(r))),
            Err(e) => Err(e.to_string()),
        },
    }
}
