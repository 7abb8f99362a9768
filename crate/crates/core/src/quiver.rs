//! Quivers with a frozen subquiver, and the subdivided incidence graph
//! used to index the local pieces of the Chekanov-Eliashberg model.
//!
//! Loops and parallel arrows are allowed throughout; everything incidence
//! related is phrased in terms of half-edges (an arrow plus one of its two
//! ends) so that a loop contributes two distinct half-edges at its vertex.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Identifier of a quiver vertex. Opaque, compared as a string.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub String);

/// Identifier of a quiver arrow. Opaque, compared as a string.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ArrowId(pub String);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for ArrowId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for VertexId {
    fn from(s: &str) -> Self {
        VertexId(s.to_owned())
    }
}

impl From<&str> for ArrowId {
    fn from(s: &str) -> Self {
        ArrowId(s.to_owned())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub id: ArrowId,
    pub src: VertexId,
    pub tgt: VertexId,
    pub frozen: bool,
}

impl Arrow {
    /// The vertex this arrow touches at the given end.
    pub fn endpoint(&self, role: EndpointRole) -> &VertexId {
        match role {
            EndpointRole::Tail => &self.src,
            EndpointRole::Head => &self.tgt,
        }
    }

    pub fn is_loop(&self) -> bool {
        self.src == self.tgt
    }
}

/// Which end of an arrow a half-edge sits on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EndpointRole {
    Tail,
    Head,
}

impl EndpointRole {
    pub fn as_str(self) -> &'static str {
        match self {
            EndpointRole::Tail => "tail",
            EndpointRole::Head => "head",
        }
    }

    pub const BOTH: [EndpointRole; 2] = [EndpointRole::Tail, EndpointRole::Head];
}

impl fmt::Display for EndpointRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One half-edge: an arrow together with one of its two ends.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfEdge {
    pub arrow: ArrowId,
    pub role: EndpointRole,
}

#[derive(Debug, Error)]
pub enum QuiverError {
    #[error("malformed quiver document: {0}")]
    Malformed(String),
    #[error("duplicate vertex id {0:?}")]
    DuplicateVertex(String),
    #[error("duplicate arrow id {0:?}")]
    DuplicateArrow(String),
    #[error("arrow {arrow:?} references undeclared vertex {vertex:?}")]
    DanglingEndpoint { arrow: String, vertex: String },
    #[error("frozen_vertices entry {0:?} is not a declared vertex")]
    UnknownFrozenVertex(String),
    #[error("frozen arrow {arrow:?} has non-frozen endpoint {vertex:?}")]
    FrozenSubquiverViolation { arrow: String, vertex: String },
}

/// Raw JSON shape of a quiver document.
///
/// ```json
/// {"vertices": ["v", "w"],
///  "arrows": [{"id": "e", "src": "v", "tgt": "w", "frozen": false}],
///  "frozen_vertices": []}
/// ```
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverDoc {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowDoc>,
    #[serde(default)]
    pub frozen_vertices: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowDoc {
    pub id: String,
    pub src: String,
    pub tgt: String,
    #[serde(default)]
    pub frozen: bool,
}

/// A validated quiver `Q` with a frozen subquiver `F`.
///
/// Invariant: every frozen arrow has frozen endpoints. Frozen vertices with
/// no incident frozen arrow are allowed. Vertex and arrow declaration order
/// is preserved; it is the ordering used everywhere determinism matters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverWithFrozen {
    vertices: Vec<VertexId>,
    arrows: Vec<Arrow>,
    frozen_vertices: BTreeSet<VertexId>,
}

impl QuiverWithFrozen {
    pub fn from_doc(doc: &QuiverDoc) -> Result<Self, QuiverError> {
        let mut seen = BTreeSet::new();
        for v in &doc.vertices {
            if !seen.insert(v.clone()) {
                return Err(QuiverError::DuplicateVertex(v.clone()));
            }
        }
        let mut arrow_ids = BTreeSet::new();
        for a in &doc.arrows {
            if !arrow_ids.insert(a.id.clone()) {
                return Err(QuiverError::DuplicateArrow(a.id.clone()));
            }
            for end in [&a.src, &a.tgt] {
                if !seen.contains(end) {
                    return Err(QuiverError::DanglingEndpoint {
                        arrow: a.id.clone(),
                        vertex: end.clone(),
                    });
                }
            }
        }
        let mut frozen_vertices = BTreeSet::new();
        for v in &doc.frozen_vertices {
            if !seen.contains(v) {
                return Err(QuiverError::UnknownFrozenVertex(v.clone()));
            }
            frozen_vertices.insert(VertexId(v.clone()));
        }
        for a in &doc.arrows {
            if a.frozen {
                for end in [&a.src, &a.tgt] {
                    if !frozen_vertices.contains(&VertexId(end.clone())) {
                        return Err(QuiverError::FrozenSubquiverViolation {
                            arrow: a.id.clone(),
                            vertex: end.clone(),
                        });
                    }
                }
            }
        }
        Ok(QuiverWithFrozen {
            vertices: doc.vertices.iter().map(|v| VertexId(v.clone())).collect(),
            arrows: doc
                .arrows
                .iter()
                .map(|a| Arrow {
                    id: ArrowId(a.id.clone()),
                    src: VertexId(a.src.clone()),
                    tgt: VertexId(a.tgt.clone()),
                    frozen: a.frozen,
                })
                .collect(),
            frozen_vertices,
        })
    }

    /// Parse and validate a JSON quiver document.
    pub fn parse(text: &str) -> Result<Self, QuiverError> {
        let doc: QuiverDoc =
            serde_json::from_str(text).map_err(|e| QuiverError::Malformed(e.to_string()))?;
        Self::from_doc(&doc)
    }

    /// Canonical document: frozen vertices listed in vertex declaration order.
    pub fn to_doc(&self) -> QuiverDoc {
        QuiverDoc {
            vertices: self.vertices.iter().map(|v| v.0.clone()).collect(),
            arrows: self
                .arrows
                .iter()
                .map(|a| ArrowDoc {
                    id: a.id.0.clone(),
                    src: a.src.0.clone(),
                    tgt: a.tgt.0.clone(),
                    frozen: a.frozen,
                })
                .collect(),
            frozen_vertices: self
                .vertices
                .iter()
                .filter(|v| self.frozen_vertices.contains(v))
                .map(|v| v.0.clone())
                .collect(),
        }
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, id: &ArrowId) -> Option<&Arrow> {
        self.arrows.iter().find(|a| &a.id == id)
    }

    pub fn is_frozen_vertex(&self, v: &VertexId) -> bool {
        self.frozen_vertices.contains(v)
    }

    /// Frozen vertices in declaration order.
    pub fn frozen_vertices(&self) -> impl Iterator<Item = &VertexId> {
        self.vertices.iter().filter(|v| self.frozen_vertices.contains(*v))
    }

    pub fn non_frozen_vertices(&self) -> impl Iterator<Item = &VertexId> {
        self.vertices.iter().filter(|v| !self.frozen_vertices.contains(*v))
    }

    pub fn frozen_arrows(&self) -> impl Iterator<Item = &Arrow> {
        self.arrows.iter().filter(|a| a.frozen)
    }

    pub fn non_frozen_arrows(&self) -> impl Iterator<Item = &Arrow> {
        self.arrows.iter().filter(|a| !a.frozen)
    }

    /// Half-edges at `v`, in arrow declaration order, tail end before head
    /// end. A loop at `v` contributes both of its half-edges.
    pub fn half_edges_at(&self, v: &VertexId) -> Vec<(&Arrow, EndpointRole)> {
        let mut out = Vec::new();
        for a in &self.arrows {
            if &a.src == v {
                out.push((a, EndpointRole::Tail));
            }
            if &a.tgt == v {
                out.push((a, EndpointRole::Head));
            }
        }
        out
    }

    /// Number of half-edges at `v` (a loop counts twice).
    pub fn valency(&self, v: &VertexId) -> usize {
        self.half_edges_at(v).len()
    }

    /// The frozen subquiver `F` as a quiver in its own right, with all
    /// frozen markings cleared.
    pub fn frozen_subquiver(&self) -> QuiverWithFrozen {
        QuiverWithFrozen {
            vertices: self
                .vertices
                .iter()
                .filter(|v| self.frozen_vertices.contains(*v))
                .cloned()
                .collect(),
            arrows: self
                .arrows
                .iter()
                .filter(|a| a.frozen)
                .map(|a| Arrow { frozen: false, ..a.clone() })
                .collect(),
            frozen_vertices: BTreeSet::new(),
        }
    }

    /// A copy with every frozen marking cleared.
    pub fn with_frozen_cleared(&self) -> QuiverWithFrozen {
        QuiverWithFrozen {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow { frozen: false, ..a.clone() })
                .collect(),
            frozen_vertices: BTreeSet::new(),
        }
    }

    pub fn has_loops(&self) -> bool {
        self.arrows.iter().any(|a| a.is_loop())
    }

    pub fn has_parallel_arrows(&self) -> bool {
        let mut pairs = BTreeSet::new();
        self.arrows
            .iter()
            .any(|a| !pairs.insert((a.src.clone(), a.tgt.clone())))
    }

    /// Copy with the arrow at `idx` removed. Frozen vertices are kept.
    pub fn with_arrow_removed(&self, idx: usize) -> QuiverWithFrozen {
        let mut arrows = self.arrows.clone();
        arrows.remove(idx);
        QuiverWithFrozen {
            vertices: self.vertices.clone(),
            arrows,
            frozen_vertices: self.frozen_vertices.clone(),
        }
    }

    /// Copy with the (isolated) vertex at `idx` removed.
    pub fn with_vertex_removed(&self, idx: usize) -> QuiverWithFrozen {
        let v = self.vertices[idx].clone();
        debug_assert!(self.valency(&v) == 0);
        let mut vertices = self.vertices.clone();
        vertices.remove(idx);
        let mut frozen_vertices = self.frozen_vertices.clone();
        frozen_vertices.remove(&v);
        QuiverWithFrozen {
            vertices,
            arrows: self.arrows.clone(),
            frozen_vertices,
        }
    }
}

/// One edge of the subdivided incidence graph: it joins the edge-vertex of
/// `arrow` to the quiver vertex sitting at the given end.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CEdge {
    pub arrow: ArrowId,
    pub role: EndpointRole,
    pub vertex: VertexId,
    pub frozen: bool,
}

/// The incidence graph of `Q`, subdivided once per arrow: every arrow `e`
/// becomes a vertex, joined to its endpoints by two c-edges. Vertices are
/// partitioned into non-frozen quiver vertices `V`, frozen quiver vertices
/// `F0`, non-frozen edge-vertices `E` and frozen edge-vertices `F1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceGraphC {
    pub non_frozen_vertices: Vec<VertexId>,
    pub frozen_vertices: Vec<VertexId>,
    pub non_frozen_edge_vertices: Vec<ArrowId>,
    pub frozen_edge_vertices: Vec<ArrowId>,
    pub c_edges: Vec<CEdge>,
}

/// Subdivide the incidence graph of `q`. Deterministic: vertices keep
/// declaration order, c-edges come in arrow declaration order with the tail
/// half-edge before the head half-edge.
pub fn subdivide(q: &QuiverWithFrozen) -> IncidenceGraphC {
    let mut c_edges = Vec::with_capacity(2 * q.arrows().len());
    for a in q.arrows() {
        for role in EndpointRole::BOTH {
            c_edges.push(CEdge {
                arrow: a.id.clone(),
                role,
                vertex: a.endpoint(role).clone(),
                frozen: a.frozen,
            });
        }
    }
    IncidenceGraphC {
        non_frozen_vertices: q.non_frozen_vertices().cloned().collect(),
        frozen_vertices: q.frozen_vertices().cloned().collect(),
        non_frozen_edge_vertices: q.non_frozen_arrows().map(|a| a.id.clone()).collect(),
        frozen_edge_vertices: q.frozen_arrows().map(|a| a.id.clone()).collect(),
        c_edges,
    }
}
