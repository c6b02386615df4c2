//! JSON problem files.
//!
//! ```json
//! {"schema": 1, "field": {"p": 2, "deg": 2},
//!  "construction": {"type": "amalgam",
//!    "left": {"cyclic": 6}, "right": {"cyclic": 4}, "edge": {"cyclic": 2},
//!    "embed_left": {"gen_to": "g^3"}, "embed_right": {"gen_to": "g^2"}}}
//! ```
//!
//! Construction types are `amalgam`, `hnn` (`vertex`, `edge`,
//! `embed_initial`, `embed_terminal`), `graph` (`vertices`, `edges` with
//! `group`/`from`/`to`/`embed_initial`/`embed_terminal`, `tree_edges`) and
//! `single` (`vertex`). A vertex is a group description or
//! `{"profile": "Z_times", "of": <group or construction>}`.

use serde::Deserialize;
use thiserror::Error;

use crate::exactlin::{Fq, LinAlgError};
use crate::groups::{build_group, mono_from_generator_images, Group, GroupError, GroupMono, GroupSpec};
use crate::picard::{PicardError, ProfileKind};

use super::{Edge, GraphOfGroups, TreeError, Vertex};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InputError {
    #[error("malformed input: {0}")]
    Json(String),
    #[error("schema: {0}")]
    Schema(String),
    #[error("field: {0}")]
    Field(#[from] LinAlgError),
    #[error("group: {0}")]
    Group(#[from] GroupError),
    #[error(transparent)]
    Tree(#[from] TreeError),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ProblemJson {
    schema: u32,
    #[serde(default)]
    field: Option<FieldJson>,
    construction: ConstructionJson,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FieldJson {
    p: u64,
    #[serde(default = "one")]
    deg: u32,
}

fn one() -> u32 {
    1
}

#[derive(Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
enum ConstructionJson {
    Amalgam {
        left: VertexJson,
        right: VertexJson,
        edge: GroupSpec,
        embed_left: EmbedJson,
        embed_right: EmbedJson,
    },
    Hnn {
        vertex: VertexJson,
        edge: GroupSpec,
        embed_initial: EmbedJson,
        embed_terminal: EmbedJson,
    },
    Graph {
        vertices: Vec<VertexJson>,
        edges: Vec<EdgeJson>,
        #[serde(default)]
        tree_edges: Option<Vec<usize>>,
    },
    Single {
        vertex: VertexJson,
    },
}

#[derive(Deserialize)]
#[serde(untagged)]
enum VertexJson {
    Profile { profile: String, of: Box<OfJson> },
    Group(GroupSpec),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum OfJson {
    Construction(ConstructionJson),
    Group(GroupSpec),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeJson {
    group: GroupSpec,
    from: usize,
    to: usize,
    embed_initial: EmbedJson,
    embed_terminal: EmbedJson,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EmbedJson {
    gen_to: GenTo,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum GenTo {
    One(String),
    Many(Vec<String>),
}

/// A parsed problem: optional coefficients and the graph of groups.
#[derive(Clone, Debug)]
pub struct Problem {
    pub field: Option<Fq>,
    pub graph: GraphOfGroups,
}

impl Problem {
    pub fn from_json(text: &str) -> Result<Problem, InputError> {
        let raw: ProblemJson = serde_json::from_str(text).map_err(|e| InputError::Json(e.to_string()))?;
        if raw.schema != SCHEMA_VERSION {
            return Err(InputError::Schema(format!(
                "unsupported schema version {} (expected {SCHEMA_VERSION})",
                raw.schema
            )));
        }
        let field = match raw.field {
            Some(f) => Some(Fq::new(f.p, f.deg)?),
            None => None,
        };
        Ok(Problem {
            field,
            graph: construction(&raw.construction)?,
        })
    }

    pub fn require_field(&self) -> Result<&Fq, InputError> {
        self.field
            .as_ref()
            .ok_or_else(|| InputError::Schema("missing \"field\"".into()))
    }
}

fn vertex(v: &VertexJson) -> Result<Vertex, InputError> {
    match v {
        VertexJson::Group(spec) => Ok(Vertex::Finite(build_group(spec)?)),
        VertexJson::Profile { profile, of } => {
            let kind = ProfileKind::parse(profile).map_err(|e: PicardError| InputError::Schema(e.to_string()))?;
            let inner = match of.as_ref() {
                OfJson::Group(spec) => GraphOfGroups::single(Vertex::Finite(build_group(spec)?)),
                OfJson::Construction(c) => construction(c)?,
            };
            Ok(Vertex::Profile {
                kind,
                of: Box::new(inner),
            })
        }
    }
}

/// The mono given by images of the edge generators.
fn embed(edge: &Group, v: &Vertex, e: &EmbedJson) -> Result<GroupMono, InputError> {
    let Some(target) = v.as_finite() else {
        return Err(TreeError::UnsupportedVertex(format!(
            "edge into profile vertex {}; profile restrictions are not available",
            v.label()
        ))
        .into());
    };
    let words: Vec<&str> = match &e.gen_to {
        GenTo::One(s) => vec![s.as_str()],
        GenTo::Many(v) => v.iter().map(String::as_str).collect(),
    };
    let mut images = Vec::new();
    for w in words {
        images.push(target.parse_element(w)?);
    }
    if edge.generators().is_empty() && images.iter().all(|&x| x == target.identity()) {
        images.clear();
    }
    Ok(mono_from_generator_images(edge, target, &images)?)
}

fn construction(c: &ConstructionJson) -> Result<GraphOfGroups, InputError> {
    Ok(match c {
        ConstructionJson::Amalgam {
            left,
            right,
            edge,
            embed_left,
            embed_right,
        } => {
            let (a, b) = (vertex(left)?, vertex(right)?);
            let eg = build_group(edge)?;
            let ma = embed(&eg, &a, embed_left)?;
            let mb = embed(&eg, &b, embed_right)?;
            let e = Edge {
                group: eg,
                initial: 0,
                terminal: 1,
                mono_initial: ma,
                mono_terminal: mb,
            };
            GraphOfGroups::new(vec![a, b], vec![e], vec![0])?
        }
        ConstructionJson::Hnn {
            vertex: v,
            edge,
            embed_initial,
            embed_terminal,
        } => {
            let h = vertex(v)?;
            let eg = build_group(edge)?;
            let mi = embed(&eg, &h, embed_initial)?;
            let mt = embed(&eg, &h, embed_terminal)?;
            let e = Edge {
                group: eg,
                initial: 0,
                terminal: 0,
                mono_initial: mi,
                mono_terminal: mt,
            };
            GraphOfGroups::new(vec![h], vec![e], Vec::new())?
        }
        ConstructionJson::Graph {
            vertices,
            edges,
            tree_edges,
        } => {
            let vs: Vec<Vertex> = vertices.iter().map(vertex).collect::<Result<_, _>>()?;
            let mut es = Vec::new();
            for (i, e) in edges.iter().enumerate() {
                if e.from >= vs.len() || e.to >= vs.len() {
                    return Err(InputError::Schema(format!("edge {i} has an endpoint out of range")));
                }
                let eg = build_group(&e.group)?;
                let mi = embed(&eg, &vs[e.from], &e.embed_initial)?;
                let mt = embed(&eg, &vs[e.to], &e.embed_terminal)?;
                es.push(Edge {
                    group: eg,
                    initial: e.from,
                    terminal: e.to,
                    mono_initial: mi,
                    mono_terminal: mt,
                });
            }
            let tree = match tree_edges {
                Some(t) => t.clone(),
                None if es.len() + 1 == vs.len() => (0..es.len()).collect(),
                None => return Err(InputError::Schema("\"tree_edges\" is required when the graph has cycles".into())),
            };
            GraphOfGroups::new(vs, es, tree)?
        }
        ConstructionJson::Single { vertex: v } => GraphOfGroups::single(vertex(v)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_amalgam() {
        let p = Problem::from_json(
            r#"{"schema":1, "field":{"p":2,"deg":2},
               "construction":{"type":"amalgam",
                 "left":{"cyclic":6}, "right":{"cyclic":4}, "edge":{"cyclic":2},
                 "embed_left":{"gen_to":"g^3"}, "embed_right":{"gen_to":["g^2"]}}}"#,
        )
        .unwrap();
        assert_eq!(p.field.unwrap().order(), 4);
        assert_eq!(p.graph.vertices().len(), 2);
        assert_eq!(p.graph.edges()[0].mono_initial.map(), &[0, 3]);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(Problem::from_json("{"), Err(InputError::Json(_))));
        assert!(matches!(
            Problem::from_json(r#"{"schema":2,"construction":{"type":"single","vertex":{"cyclic":2}}}"#),
            Err(InputError::Schema(_))
        ));
        // C4 does not embed in C2
        let bad = r#"{"schema":1,"construction":{"type":"amalgam","left":{"cyclic":2},"right":{"cyclic":2},
            "edge":{"cyclic":4},"embed_left":{"gen_to":"g"},"embed_right":{"gen_to":"g"}}}"#;
        assert!(matches!(Problem::from_json(bad), Err(InputError::Group(_))));
    }

    #[test]
    fn parses_profiles() {
        let p = Problem::from_json(
            r#"{"schema":1,"field":{"p":2,"deg":2},"construction":{"type":"single",
               "vertex":{"profile":"Z_times","of":{"type":"amalgam","left":{"cyclic":2},"right":{"cyclic":2},
               "edge":{"cyclic":1},"embed_left":{"gen_to":[]},"embed_right":{"gen_to":[]}}}}}"#,
        )
        .unwrap();
        assert!(matches!(p.graph.vertices()[0], Vertex::Profile { .. }));
    }
}
