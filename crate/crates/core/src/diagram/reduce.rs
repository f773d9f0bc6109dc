//! Reducible pairs and merging of adjacent faces of the same kind.

use super::validate::{analyze, Analysis};
use super::{BoundaryEntry, DiagramError, EdgeLabel, HowieDiagram};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducednessReport {
    pub reduced: bool,
    pub strongly_reduced: bool,
    /// An edge whose two faces form a reducible pair.
    pub reducible_edge: Option<String>,
    /// An edge shared by two distinct B faces or two distinct C faces.
    pub same_kind_edge: Option<String>,
}

/// Faces `(f, i)` and `(g, j)` on either side of an edge form a reducible
/// pair when `f` read anticlockwise from the edge spells `g` read clockwise
/// from it: the labels written from that edge are mutually inverse.
fn is_reducible_pair(d: &HowieDiagram, (f, i): (usize, usize), (g, j): (usize, usize)) -> bool {
    let (bf, bg) = (&d.faces[f].boundary, &d.faces[g].boundary);
    let n = bf.len();
    if f == g || n != bg.len() {
        return false;
    }
    let label = |e: &BoundaryEntry| -> EdgeLabel { d.edge(&e.edge).expect("edges checked").label };
    (0..n).all(|k| {
        let ef = &bf[(i + k) % n];
        let eg = &bg[(j + n - k) % n];
        let before_g = &bg[(j + 2 * n - k - 1) % n];
        label(ef) == label(eg) && ef.along != eg.along && ef.corner == before_g.corner.inverse()
    })
}

fn edge_faces(a: &Analysis, edge: &str) -> ((usize, usize), (usize, usize)) {
    (
        a.traversal[&(edge.to_string(), true)],
        a.traversal[&(edge.to_string(), false)],
    )
}

pub fn reducedness_report(d: &HowieDiagram) -> Result<ReducednessReport, DiagramError> {
    let a = analyze(d)?;
    let mut reducible_edge = None;
    let mut same_kind_edge = None;
    for e in &d.edges {
        let (f, g) = edge_faces(&a, &e.id);
        if reducible_edge.is_none() && is_reducible_pair(d, f, g) {
            reducible_edge = Some(e.id.clone());
        }
        let (tf, tg) = (d.faces[f.0].face_type, d.faces[g.0].face_type);
        if same_kind_edge.is_none() && f.0 != g.0 && ((tf.is_b() && tg.is_b()) || (tf.is_c() && tg.is_c())) {
            same_kind_edge = Some(e.id.clone());
        }
    }
    Ok(ReducednessReport {
        reduced: reducible_edge.is_none(),
        strongly_reduced: reducible_edge.is_none() && same_kind_edge.is_none(),
        reducible_edge,
        same_kind_edge,
    })
}

/// Erases `edge` between two faces of the same B or C kind that do not form a
/// reducible pair, multiplying the two pairs of corners the edge separated.
pub fn reduce_step(d: &HowieDiagram, edge: &str) -> Result<HowieDiagram, DiagramError> {
    let a = analyze(d)?;
    if d.edge(edge).is_none() {
        return Err(DiagramError::UnknownEdge(edge.to_string()));
    }
    let refuse = |reason: &str| DiagramError::NotMergeable {
        edge: edge.to_string(),
        reason: reason.to_string(),
    };
    let ((f, i), (g, j)) = edge_faces(&a, edge);
    if f == g {
        return Err(refuse("both sides belong to the same face"));
    }
    let (tf, tg) = (d.faces[f].face_type, d.faces[g].face_type);
    if !((tf.is_b() && tg.is_b()) || (tf.is_c() && tg.is_c())) {
        return Err(refuse("faces are not both B faces or both C faces"));
    }
    if is_reducible_pair(d, (f, i), (g, j)) {
        return Err(refuse("the faces form a reducible pair"));
    }
    let (bf, bg) = (&d.faces[f].boundary, &d.faces[g].boundary);
    let (nf, ng) = (bf.len(), bg.len());
    let mut merged = Vec::with_capacity(nf + ng - 2);
    for k in 1..nf {
        let mut e = bf[(i + k) % nf].clone();
        if k == nf - 1 {
            e.corner = e.corner.mul(&bg[j].corner);
        }
        merged.push(e);
    }
    for k in 1..ng {
        let mut e = bg[(j + k) % ng].clone();
        if k == ng - 1 {
            e.corner = e.corner.mul(&bf[i].corner);
        }
        merged.push(e);
    }
    let mut out = d.clone();
    out.faces[f].boundary = merged;
    out.faces.remove(g);
    out.edges.retain(|e| e.id != edge);
    Ok(out)
}
