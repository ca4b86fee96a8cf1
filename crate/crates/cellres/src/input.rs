//! Graph input: `{"m":2,"n":2,"edge_weights":[[2,3],[3,2]]}` or
//! `{"m":2,"n":2,"vertex_weights":{"x":[1,3],"y":[2,4]}}`.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use cellres_core::graph::{EdgeWeighting, VertexLabeling, VertexWeighting};
use serde::Deserialize;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGraph {
    m: usize,
    n: usize,
    edge_weights: Option<Vec<Vec<u32>>>,
    vertex_weights: Option<RawVertexWeights>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawVertexWeights {
    x: Vec<u32>,
    y: Vec<u32>,
}

/// A weighted `K_{m,n}` as read from JSON.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphInput {
    /// Edge weights `ω`.
    Edge(EdgeWeighting),
    /// Vertex weights `λ`.
    Vertex(VertexWeighting),
}

impl GraphInput {
    /// Parses and validates one graph document.
    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawGraph = serde_json::from_str(text).context("malformed graph JSON")?;
        match (raw.edge_weights, raw.vertex_weights) {
            (Some(rows), None) => {
                if rows.len() != raw.m || rows.iter().any(|r| r.len() != raw.n) {
                    bail!("edge_weights must be an {}x{} matrix", raw.m, raw.n);
                }
                Ok(Self::Edge(EdgeWeighting::new(&rows)?))
            }
            (None, Some(v)) => {
                if v.x.len() != raw.m || v.y.len() != raw.n {
                    bail!("vertex_weights needs {} x-weights and {} y-weights", raw.m, raw.n);
                }
                Ok(Self::Vertex(VertexWeighting::new(v.x, v.y)?))
            }
            (Some(_), Some(_)) => bail!("give exactly one of edge_weights and vertex_weights, not both"),
            (None, None) => bail!("one of edge_weights or vertex_weights is required"),
        }
    }

    /// Reads a graph document from a file.
    pub fn from_path(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
        Self::parse(&text)
    }

    /// Number of X-vertices.
    pub fn m(&self) -> usize {
        match self {
            Self::Edge(w) => w.m(),
            Self::Vertex(v) => v.m(),
        }
    }

    /// Number of Y-vertices.
    pub fn n(&self) -> usize {
        match self {
            Self::Edge(w) => w.n(),
            Self::Vertex(v) => v.n(),
        }
    }

    /// Generators labeling the vertices of `V_{m,n}`.
    pub fn labeling(&self) -> VertexLabeling {
        match self {
            Self::Edge(w) => w.labels(),
            Self::Vertex(v) => v.labels(),
        }
    }
}
