//! Spherical Howie diagrams over the system
//! `b^{-x}b^φ = 1`, `[t, c] = 1`, `x⁻¹ b₀ a₀ᵗ … b_m a_mᵗ b_{m+1} = 1`.
//!
//! A face boundary is a cyclic list of entries read anticlockwise; each entry
//! is an edge (traversed along or against its arrow) followed by the corner
//! the car reaches at the end of that edge.

pub mod fixtures;
mod motion;
mod reduce;
mod template;
mod validate;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::free_word::FreeWord;

pub use motion::{
    check_parity_invariant, check_parity_schedules, schedule_of, schedules, simulate, CollisionEvent, CollisionReport,
    CornerVisits, FaceSchedule, Location, ParityReport, ParityViolation, Segment,
};
pub use reduce::{reduce_step, reducedness_report, ReducednessReport};
pub use template::{FaceKind, FaceMatch};
pub use validate::{labels, validate, Labels, ValidationReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("invalid diagram at {pointer}: {message}")]
    Schema { pointer: String, message: String },
    #[error("diagram is not spherical: {0}")]
    NotSpherical(String),
    #[error("exterior vertex \"{0}\" is not a vertex of the diagram")]
    NoExteriorVertex(String),
    #[error("face \"{0}\" does not match its declared template")]
    TemplateMismatch(String),
    #[error("interior vertex \"{vertex}\" has nontrivial label {label}")]
    NontrivialInteriorVertex { vertex: String, label: String },
    #[error("cannot merge across edge \"{edge}\": {reason}")]
    NotMergeable { edge: String, reason: String },
    #[error("unknown edge \"{0}\"")]
    UnknownEdge(String),
    #[error("unknown face \"{0}\"")]
    UnknownFace(String),
}

impl DiagramError {
    /// Stable name of the error class, used in CLI reports.
    pub fn class(&self) -> &'static str {
        match self {
            DiagramError::Schema { .. } => "Schema",
            DiagramError::NotSpherical(_) => "NotSpherical",
            DiagramError::NoExteriorVertex(_) => "NoExteriorVertex",
            DiagramError::TemplateMismatch(_) => "TemplateMismatch",
            DiagramError::NontrivialInteriorVertex { .. } => "NontrivialInteriorVertex",
            DiagramError::NotMergeable { .. } => "NotMergeable",
            DiagramError::UnknownEdge(_) => "UnknownEdge",
            DiagramError::UnknownFace(_) => "UnknownFace",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum EdgeLabel {
    #[serde(rename = "t")]
    T,
    #[serde(rename = "x")]
    X,
}

impl fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EdgeLabel::T => "t",
            EdgeLabel::X => "x",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FaceType {
    #[serde(rename = "B_FACE")]
    B,
    #[serde(rename = "B_FACE_INV")]
    BInv,
    #[serde(rename = "C_FACE")]
    C,
    #[serde(rename = "C_FACE_INV")]
    CInv,
    #[serde(rename = "W_FACE")]
    W,
    #[serde(rename = "W_FACE_INV")]
    WInv,
}

impl FaceType {
    pub fn is_b(self) -> bool {
        matches!(self, FaceType::B | FaceType::BInv)
    }

    pub fn is_c(self) -> bool {
        matches!(self, FaceType::C | FaceType::CInv)
    }

    pub fn name(self) -> &'static str {
        match self {
            FaceType::B => "B_FACE",
            FaceType::BInv => "B_FACE_INV",
            FaceType::C => "C_FACE",
            FaceType::CInv => "C_FACE_INV",
            FaceType::W => "W_FACE",
            FaceType::WInv => "W_FACE_INV",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub from: String,
    pub to: String,
    pub label: EdgeLabel,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryEntry {
    pub edge: String,
    pub along: bool,
    /// Corner reached after traversing the edge.
    pub corner: FreeWord,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub id: String,
    pub face_type: FaceType,
    pub boundary: Vec<BoundaryEntry>,
}

/// The coefficients `a₀…a_m` and `b₀…b_{m+1}` of the W equation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coefficients {
    pub a: Vec<FreeWord>,
    pub b: Vec<FreeWord>,
}

impl Coefficients {
    /// Formal symbols `a0…am`, `b0…b{m+1}`.
    pub fn symbolic(m: usize) -> Self {
        Coefficients {
            a: (0..=m).map(|i| FreeWord::letter(format!("a{i}"))).collect(),
            b: (0..=m + 1).map(|i| FreeWord::letter(format!("b{i}"))).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HowieDiagram {
    pub m: usize,
    pub exterior: String,
    pub vertices: Vec<String>,
    pub edges: Vec<Edge>,
    pub faces: Vec<Face>,
    pub coefficients: Coefficients,
}

/// The JSON shape of a diagram, before corner words are parsed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramSpec {
    pub m: usize,
    pub exterior: String,
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeSpec>,
    pub faces: Vec<FaceSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<CoefficientSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeSpec {
    pub id: String,
    pub from: String,
    pub to: String,
    pub label: EdgeLabel,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FaceSpec {
    pub id: String,
    #[serde(rename = "type")]
    pub face_type: FaceType,
    pub boundary: Vec<EntrySpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntrySpec {
    pub edge: String,
    pub along: bool,
    pub corner: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoefficientSpec {
    pub a: Vec<String>,
    pub b: Vec<String>,
}

fn parse_corner(text: &str, pointer: String) -> Result<FreeWord, DiagramError> {
    FreeWord::parse(text).ok_or_else(|| DiagramError::Schema {
        pointer,
        message: format!("cannot parse corner word \"{text}\""),
    })
}

impl HowieDiagram {
    /// Resolves references and parses corner words. Topological and
    /// template checks are left to [`validate`].
    pub fn from_spec(spec: &DiagramSpec) -> Result<Self, DiagramError> {
        let schema = |pointer: String, message: String| DiagramError::Schema { pointer, message };
        if spec.m < 1 {
            return Err(schema("/m".into(), "m must be at least 1".into()));
        }
        let mut seen = std::collections::BTreeSet::new();
        for (i, v) in spec.vertices.iter().enumerate() {
            if !seen.insert(v) {
                return Err(schema(format!("/vertices/{i}"), format!("duplicate vertex \"{v}\"")));
            }
        }
        let mut edge_ids = std::collections::BTreeSet::new();
        for (i, e) in spec.edges.iter().enumerate() {
            if !edge_ids.insert(&e.id) {
                return Err(schema(format!("/edges/{i}/id"), format!("duplicate edge \"{}\"", e.id)));
            }
            for (field, v) in [("from", &e.from), ("to", &e.to)] {
                if !seen.contains(v) {
                    return Err(schema(format!("/edges/{i}/{field}"), format!("unknown vertex \"{v}\"")));
                }
            }
        }
        let mut face_ids = std::collections::BTreeSet::new();
        let mut faces = Vec::with_capacity(spec.faces.len());
        for (i, f) in spec.faces.iter().enumerate() {
            if !face_ids.insert(&f.id) {
                return Err(schema(format!("/faces/{i}/id"), format!("duplicate face \"{}\"", f.id)));
            }
            if f.boundary.is_empty() {
                return Err(schema(format!("/faces/{i}/boundary"), "boundary is empty".into()));
            }
            let mut boundary = Vec::with_capacity(f.boundary.len());
            for (k, entry) in f.boundary.iter().enumerate() {
                if !edge_ids.contains(&entry.edge) {
                    return Err(schema(
                        format!("/faces/{i}/boundary/{k}/edge"),
                        format!("unknown edge \"{}\"", entry.edge),
                    ));
                }
                boundary.push(BoundaryEntry {
                    edge: entry.edge.clone(),
                    along: entry.along,
                    corner: parse_corner(&entry.corner, format!("/faces/{i}/boundary/{k}/corner"))?,
                });
            }
            faces.push(Face {
                id: f.id.clone(),
                face_type: f.face_type,
                boundary,
            });
        }
        let coefficients = match &spec.coefficients {
            None => Coefficients::symbolic(spec.m),
            Some(c) => {
                if c.a.len() != spec.m + 1 {
                    return Err(schema(
                        "/coefficients/a".into(),
                        format!("expected {} entries", spec.m + 1),
                    ));
                }
                if c.b.len() != spec.m + 2 {
                    return Err(schema(
                        "/coefficients/b".into(),
                        format!("expected {} entries", spec.m + 2),
                    ));
                }
                let parse_all = |list: &[String], key: &str| -> Result<Vec<FreeWord>, DiagramError> {
                    list.iter()
                        .enumerate()
                        .map(|(i, s)| parse_corner(s, format!("/coefficients/{key}/{i}")))
                        .collect()
                };
                Coefficients {
                    a: parse_all(&c.a, "a")?,
                    b: parse_all(&c.b, "b")?,
                }
            }
        };
        Ok(HowieDiagram {
            m: spec.m,
            exterior: spec.exterior.clone(),
            vertices: spec.vertices.clone(),
            edges: spec
                .edges
                .iter()
                .map(|e| Edge {
                    id: e.id.clone(),
                    from: e.from.clone(),
                    to: e.to.clone(),
                    label: e.label,
                })
                .collect(),
            faces,
            coefficients,
        })
    }

    pub fn to_spec(&self) -> DiagramSpec {
        DiagramSpec {
            m: self.m,
            exterior: self.exterior.clone(),
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeSpec {
                    id: e.id.clone(),
                    from: e.from.clone(),
                    to: e.to.clone(),
                    label: e.label,
                })
                .collect(),
            faces: self
                .faces
                .iter()
                .map(|f| FaceSpec {
                    id: f.id.clone(),
                    face_type: f.face_type,
                    boundary: f
                        .boundary
                        .iter()
                        .map(|b| EntrySpec {
                            edge: b.edge.clone(),
                            along: b.along,
                            corner: b.corner.to_string(),
                        })
                        .collect(),
                })
                .collect(),
            coefficients: Some(CoefficientSpec {
                a: self.coefficients.a.iter().map(ToString::to_string).collect(),
                b: self.coefficients.b.iter().map(ToString::to_string).collect(),
            }),
        }
    }

    pub fn edge(&self, id: &str) -> Option<&Edge> {
        self.edges.iter().find(|e| e.id == id)
    }

    pub fn face_index(&self, id: &str) -> Option<usize> {
        self.faces.iter().position(|f| f.id == id)
    }

    /// `(start, end)` vertices of a boundary entry in traversal direction.
    fn entry_ends(&self, entry: &BoundaryEntry) -> Option<(&str, &str)> {
        self.edge(&entry.edge).map(|e| {
            if entry.along {
                (e.from.as_str(), e.to.as_str())
            } else {
                (e.to.as_str(), e.from.as_str())
            }
        })
    }

    /// For each `(edge, along)`, the `(face, entry)` traversing it that way.
    fn traversals(&self) -> BTreeMap<(&str, bool), Vec<(usize, usize)>> {
        let mut out: BTreeMap<(&str, bool), Vec<(usize, usize)>> = BTreeMap::new();
        for (fi, f) in self.faces.iter().enumerate() {
            for (k, b) in f.boundary.iter().enumerate() {
                out.entry((b.edge.as_str(), b.along)).or_default().push((fi, k));
            }
        }
        out
    }
}

/// `φ` on corner words: appends `^phi` to every symbol.
pub fn phi(w: &FreeWord) -> FreeWord {
    w.map_symbols(|s| format!("{s}^phi"))
}
