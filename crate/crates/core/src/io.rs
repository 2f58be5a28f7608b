//! Graph text format, JSON mirror and DOT export.
//!
//! Text form:
//!
//! ```text
//! vertices: u v:1
//! a: u v
//! l: v v
//! ```
//!
//! Lines may also be separated by `;`, and `#` starts a comment. Without a
//! `vertices:` header the vertex set is read off the edges, all of weight 0.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{MultiGraph, WeightedGraph};
use crate::label::{EdgeLabel, VertexId};

#[derive(Serialize, Deserialize)]
struct RawVertex {
    id: VertexId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weight: Option<u32>,
}

#[derive(Serialize, Deserialize)]
struct RawEdge {
    label: EdgeLabel,
    ends: (VertexId, VertexId),
}

#[derive(Serialize, Deserialize)]
struct RawGraph {
    vertices: Vec<RawVertex>,
    edges: Vec<RawEdge>,
}

impl RawGraph {
    fn build(self) -> Result<WeightedGraph> {
        let weights: BTreeMap<VertexId, u32> = self
            .vertices
            .iter()
            .map(|v| (v.id.clone(), v.weight.unwrap_or(0)))
            .collect();
        let graph = MultiGraph::new(
            self.vertices.into_iter().map(|v| v.id),
            self.edges.into_iter().map(|e| (e.label, e.ends.0, e.ends.1)),
        )?;
        WeightedGraph::new(graph, weights)
    }

    fn of(g: &MultiGraph, weights: Option<&BTreeMap<VertexId, u32>>) -> RawGraph {
        RawGraph {
            vertices: g
                .vertices()
                .iter()
                .map(|v| RawVertex {
                    id: v.clone(),
                    weight: weights.map(|w| w[v]),
                })
                .collect(),
            edges: g
                .edges()
                .map(|(l, u, v)| RawEdge {
                    label: l.clone(),
                    ends: (u.clone(), v.clone()),
                })
                .collect(),
        }
    }
}

impl Serialize for MultiGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawGraph::of(self, None).serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawGraph::deserialize(d)?;
        raw.build()
            .map(|w| w.graph().clone())
            .map_err(serde::de::Error::custom)
    }
}

impl Serialize for WeightedGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawGraph::of(self.graph(), Some(self.weights())).serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeightedGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        RawGraph::deserialize(d)?
            .build()
            .map_err(serde::de::Error::custom)
    }
}

/// Parses the text form.
pub fn parse_text(input: &str) -> Result<WeightedGraph> {
    let mut header: Option<Vec<(VertexId, u32)>> = None;
    let mut edges: Vec<(EdgeLabel, VertexId, VertexId)> = Vec::new();
    for raw in input.split(['\n', ';']) {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, rest) = line
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected `key: ...`, got `{line}`")))?;
        let key = key.trim();
        if key == "vertices" {
            if header.is_some() || !edges.is_empty() {
                return Err(Error::Parse("`vertices:` must come first, once".into()));
            }
            let mut vs = Vec::new();
            for tok in rest.split_whitespace() {
                let (id, w) = match tok.split_once(':') {
                    Some((id, w)) => (
                        id,
                        w.parse::<u32>()
                            .map_err(|_| Error::Parse(format!("bad weight in `{tok}`")))?,
                    ),
                    None => (tok, 0),
                };
                vs.push((VertexId::new(id), w));
            }
            header = Some(vs);
        } else {
            let ends: Vec<&str> = rest.split_whitespace().collect();
            let [u, v] = ends[..] else {
                return Err(Error::Parse(format!("edge `{key}` needs two endpoints")));
            };
            if key.is_empty() {
                return Err(Error::Parse("empty edge label".into()));
            }
            edges.push((EdgeLabel::new(key), VertexId::new(u), VertexId::new(v)));
        }
    }
    let vertices = match header {
        Some(vs) => vs,
        None => {
            let mut seen: Vec<VertexId> = edges
                .iter()
                .flat_map(|(_, u, v)| [u.clone(), v.clone()])
                .collect();
            seen.sort();
            seen.dedup();
            seen.into_iter().map(|v| (v, 0)).collect()
        }
    };
    if vertices.is_empty() {
        return Err(Error::Parse("graph has no vertices".into()));
    }
    let weights: BTreeMap<VertexId, u32> = vertices.iter().cloned().collect();
    let graph = MultiGraph::new(vertices.into_iter().map(|(v, _)| v), edges)?;
    WeightedGraph::new(graph, weights)
}

/// Parses either the JSON mirror (input starting with `{`) or the text form.
pub fn parse_graph(input: &str) -> Result<WeightedGraph> {
    if input.trim_start().starts_with('{') {
        serde_json::from_str(input).map_err(|e| Error::Parse(e.to_string()))
    } else {
        parse_text(input)
    }
}

/// Text form; weights are written only when some vertex is weighted.
pub fn to_text(g: &WeightedGraph) -> String {
    let weighted = g.weights().values().any(|&w| w > 0);
    let vs: Vec<String> = g
        .graph()
        .vertices()
        .iter()
        .map(|v| {
            if weighted {
                format!("{v}:{}", g.weight(v))
            } else {
                v.to_string()
            }
        })
        .collect();
    let mut s = format!("vertices: {}\n", vs.join(" "));
    for (l, u, v) in g.graph().edges() {
        let _ = writeln!(s, "{l}: {u} {v}");
    }
    s
}

/// Undirected DOT with edge labels; weighted vertices show their weight.
pub fn to_dot(g: &WeightedGraph) -> String {
    let mut s = String::from("graph G {\n");
    for v in g.graph().vertices() {
        let w = g.weight(v);
        if w > 0 {
            let _ = writeln!(s, "  \"{v}\" [label=\"{v} ({w})\"];");
        } else {
            let _ = writeln!(s, "  \"{v}\";");
        }
    }
    for (l, u, v) in g.graph().edges() {
        let _ = writeln!(s, "  \"{u}\" -- \"{v}\" [label=\"{l}\"];");
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn text_round_trip() {
        let g = WeightedGraph::unweighted(corpus::figure1());
        assert_eq!(parse_text(&to_text(&g)).unwrap(), g);
        for (_, g) in corpus::genus2() {
            assert_eq!(parse_text(&to_text(&g)).unwrap(), g);
        }
    }

    #[test]
    fn inline_form_with_semicolons() {
        let g = parse_graph("vertices: u v:1; a: u v; l: u u").unwrap();
        assert_eq!(g.graph().num_edges(), 2);
        assert_eq!(g.weight(&VertexId::new("v")), 1);
        assert_eq!(g.genus().unwrap(), 2);
    }

    #[test]
    fn header_is_optional() {
        let g = parse_graph("a: 1 2\nb: 2 3  # comment\nc: 3 1").unwrap();
        assert_eq!(g.graph().num_vertices(), 3);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_graph("a: u"), Err(Error::Parse(_))));
        assert!(matches!(parse_graph("vertices: u:x"), Err(Error::Parse(_))));
        assert!(matches!(parse_graph("garbage"), Err(Error::Parse(_))));
        assert!(matches!(
            parse_graph("vertices: u\na: u w"),
            Err(Error::UnknownVertex(_))
        ));
        assert!(matches!(
            parse_graph("a: u v\na: v u"),
            Err(Error::DuplicateEdge(_))
        ));
    }

    #[test]
    fn json_mirror() {
        let json = r#"{"vertices":[{"id":"u","weight":1},{"id":2}],
                       "edges":[{"label":"a","ends":["u",2]}]}"#;
        let g = parse_graph(json).unwrap();
        assert_eq!(g.weight(&VertexId::new("u")), 1);
        assert_eq!(g.weight(&VertexId::new("2")), 0);
        let back: WeightedGraph = serde_json::from_str(&serde_json::to_string(&g).unwrap()).unwrap();
        assert_eq!(back, g);
        let plain = serde_json::to_string(g.graph()).unwrap();
        assert!(!plain.contains("weight"));
    }

    #[test]
    fn dot_mentions_every_edge() {
        let dot = to_dot(&WeightedGraph::unweighted(corpus::dumbbell()));
        for l in ["l1", "l2", "bridge"] {
            assert!(dot.contains(&format!("label=\"{l}\"")));
        }
    }
}
