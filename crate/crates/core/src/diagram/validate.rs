//! Sphericity, template conformance and vertex labels.

use std::collections::{BTreeMap, BTreeSet};

use super::template::{match_face, FaceMatch};
use super::{DiagramError, HowieDiagram};
use crate::free_word::{FreeWord, Letter};

/// A corner is identified by `(face index, boundary entry index)`: the corner
/// following that entry.
pub(crate) type Corner = (usize, usize);

/// Structure shared by validation, reduction and simulation.
#[derive(Clone, Debug)]
pub(crate) struct Analysis {
    pub matches: Vec<FaceMatch>,
    /// Corners around each vertex, in clockwise order.
    pub vertex_corners: BTreeMap<String, Vec<Corner>>,
    /// `(edge, along)` → the unique `(face, entry)` traversing it that way.
    pub traversal: BTreeMap<(String, bool), Corner>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub exterior: String,
    /// The exterior label, unevaluated.
    pub exterior_label: FreeWord,
    pub labels: Labels,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labels {
    /// Clockwise corner products, starting at the least corner.
    pub vertices: BTreeMap<String, FreeWord>,
    /// Anticlockwise edge-and-corner words over `t`, `x` and corner symbols.
    pub faces: BTreeMap<String, FreeWord>,
}

fn not_spherical(msg: String) -> DiagramError {
    DiagramError::NotSpherical(msg)
}

pub(crate) fn analyze(d: &HowieDiagram) -> Result<Analysis, DiagramError> {
    if !d.vertices.contains(&d.exterior) {
        return Err(DiagramError::NoExteriorVertex(d.exterior.clone()));
    }
    // closed boundaries
    for f in &d.faces {
        let n = f.boundary.len();
        for k in 0..n {
            let (_, end) = d
                .entry_ends(&f.boundary[k])
                .ok_or_else(|| DiagramError::UnknownEdge(f.boundary[k].edge.clone()))?;
            let (start, _) = d
                .entry_ends(&f.boundary[(k + 1) % n])
                .ok_or_else(|| DiagramError::UnknownEdge(f.boundary[(k + 1) % n].edge.clone()))?;
            if end != start {
                return Err(not_spherical(format!(
                    "boundary of face \"{}\" is not closed after entry {k}",
                    f.id
                )));
            }
        }
    }
    // each edge traversed once in each direction
    let raw = d.traversals();
    let mut traversal = BTreeMap::new();
    for e in &d.edges {
        for along in [true, false] {
            match raw.get(&(e.id.as_str(), along)).map(Vec::as_slice) {
                Some([one]) => {
                    traversal.insert((e.id.clone(), along), *one);
                }
                _ => {
                    return Err(not_spherical(format!(
                        "edge \"{}\" must be traversed exactly once along and once against its arrow",
                        e.id
                    )))
                }
            }
        }
    }
    // corners around each vertex form one clockwise cycle
    let corner_vertex = |(fi, k): Corner| -> &str { d.entry_ends(&d.faces[fi].boundary[k]).expect("edges checked").1 };
    let next = |(fi, k): Corner| -> Corner {
        let f = &d.faces[fi];
        let following = &f.boundary[(k + 1) % f.boundary.len()];
        traversal[&(following.edge.clone(), !following.along)]
    };
    let mut by_vertex: BTreeMap<&str, BTreeSet<Corner>> = BTreeMap::new();
    for (fi, f) in d.faces.iter().enumerate() {
        for k in 0..f.boundary.len() {
            by_vertex.entry(corner_vertex((fi, k))).or_default().insert((fi, k));
        }
    }
    let mut vertex_corners = BTreeMap::new();
    for v in &d.vertices {
        let corners = by_vertex
            .get(v.as_str())
            .ok_or_else(|| not_spherical(format!("vertex \"{v}\" has no incident edges")))?;
        let start = *corners.iter().next().expect("nonempty");
        let mut cycle = vec![start];
        let mut c = next(start);
        while c != start {
            cycle.push(c);
            c = next(c);
        }
        if cycle.len() != corners.len() {
            return Err(not_spherical(format!(
                "the neighbourhood of vertex \"{v}\" is not a disc"
            )));
        }
        vertex_corners.insert(v.clone(), cycle);
    }
    // connectedness
    let index: BTreeMap<&str, usize> = d.vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
    let mut parent: Vec<usize> = (0..d.vertices.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for e in &d.edges {
        let (a, b) = (
            find(&mut parent, index[e.from.as_str()]),
            find(&mut parent, index[e.to.as_str()]),
        );
        parent[a] = b;
    }
    let root = find(&mut parent, 0);
    if (0..d.vertices.len()).any(|i| find(&mut parent, i) != root) {
        return Err(not_spherical("the map is not connected".into()));
    }
    let chi = d.vertices.len() as i64 - d.edges.len() as i64 + d.faces.len() as i64;
    if chi != 2 {
        return Err(not_spherical(format!("V - E + F = {chi}, expected 2")));
    }
    let mut matches = Vec::with_capacity(d.faces.len());
    for f in &d.faces {
        matches.push(match_face(d, f).ok_or_else(|| DiagramError::TemplateMismatch(f.id.clone()))?);
    }
    Ok(Analysis {
        matches,
        vertex_corners,
        traversal,
    })
}

pub(crate) fn vertex_label(d: &HowieDiagram, corners: &[Corner]) -> FreeWord {
    corners.iter().fold(FreeWord::identity(), |acc, &(fi, k)| {
        acc.mul(&d.faces[fi].boundary[k].corner)
    })
}

fn face_label(d: &HowieDiagram, fi: usize) -> FreeWord {
    let mut letters = Vec::new();
    for entry in &d.faces[fi].boundary {
        let label = d.edge(&entry.edge).expect("edges checked").label;
        letters.push(Letter::new(label.to_string(), !entry.along));
        letters.extend(entry.corner.letters().iter().cloned());
    }
    FreeWord::from_letters(letters)
}

fn all_labels(d: &HowieDiagram, a: &Analysis) -> Labels {
    Labels {
        vertices: a
            .vertex_corners
            .iter()
            .map(|(v, cs)| (v.clone(), vertex_label(d, cs)))
            .collect(),
        faces: (0..d.faces.len())
            .map(|fi| (d.faces[fi].id.clone(), face_label(d, fi)))
            .collect(),
    }
}

/// Vertex and face labels of a diagram whose structure is sound.
pub fn labels(d: &HowieDiagram) -> Result<Labels, DiagramError> {
    let a = analyze(d)?;
    Ok(all_labels(d, &a))
}

/// Full check: sphericity, templates, then trivial interior vertex labels.
pub fn validate(d: &HowieDiagram) -> Result<ValidationReport, DiagramError> {
    validated(d).map(|(r, _)| r)
}

pub(crate) fn validated(d: &HowieDiagram) -> Result<(ValidationReport, Analysis), DiagramError> {
    let a = analyze(d)?;
    let labels = all_labels(d, &a);
    for (v, label) in &labels.vertices {
        if *v != d.exterior && !label.is_identity() {
            return Err(DiagramError::NontrivialInteriorVertex {
                vertex: v.clone(),
                label: label.to_string(),
            });
        }
    }
    Ok((
        ValidationReport {
            exterior: d.exterior.clone(),
            exterior_label: labels.vertices[&d.exterior].clone(),
            labels,
        },
        a,
    ))
}
