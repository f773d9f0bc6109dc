//! Small hand-built diagrams used by tests and the command line examples.

use super::{CoefficientSpec, DiagramSpec, EdgeLabel, EdgeSpec, EntrySpec, FaceSpec, FaceType};

fn edge(id: &str, from: &str, to: &str, label: EdgeLabel) -> EdgeSpec {
    EdgeSpec {
        id: id.into(),
        from: from.into(),
        to: to.into(),
        label,
    }
}

fn face(id: &str, face_type: FaceType, boundary: &[(&str, bool, &str)]) -> FaceSpec {
    FaceSpec {
        id: id.into(),
        face_type,
        boundary: boundary
            .iter()
            .map(|&(edge, along, corner)| EntrySpec {
                edge: edge.into(),
                along,
                corner: corner.into(),
            })
            .collect(),
    }
}

fn strings(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

/// Two C faces glued along both of their t-edges: a reducible pair.
pub fn c_balloon() -> DiagramSpec {
    DiagramSpec {
        m: 1,
        exterior: "v0".into(),
        vertices: strings(&["v0", "v1"]),
        edges: vec![
            edge("e1", "v0", "v1", EdgeLabel::T),
            edge("e2", "v0", "v1", EdgeLabel::T),
        ],
        faces: vec![
            face("f1", FaceType::C, &[("e1", false, "c^-1"), ("e2", true, "c")]),
            face("f2", FaceType::CInv, &[("e2", false, "c"), ("e1", true, "c^-1")]),
        ],
        coefficients: None,
    }
}

/// [`c_balloon`] with the parameter of `f1` changed, so the interior vertex
/// `v1` reads `d·c⁻¹`.
pub fn c_balloon_corrupted() -> DiagramSpec {
    let mut d = c_balloon();
    d.faces[0] = face("f1", FaceType::C, &[("e1", false, "d^-1"), ("e2", true, "d")]);
    d
}

/// A single C face on two edges: the map has the wrong Euler characteristic.
pub fn lone_face() -> DiagramSpec {
    let mut d = c_balloon();
    d.faces.truncate(1);
    d
}

/// Three B faces between two vertices joined by three x-edges. Reduced, but
/// adjacent B faces keep it from being strongly reduced.
pub fn b_theta() -> DiagramSpec {
    DiagramSpec {
        m: 1,
        exterior: "T".into(),
        vertices: strings(&["T", "H"]),
        edges: vec![
            edge("p", "T", "H", EdgeLabel::X),
            edge("e", "T", "H", EdgeLabel::X),
            edge("q", "T", "H", EdgeLabel::X),
        ],
        faces: vec![
            face("B1", FaceType::B, &[("p", false, "b1^-1"), ("e", true, "b1^phi")]),
            face("B2", FaceType::B, &[("e", false, "b2^-1"), ("q", true, "b2^phi")]),
            face(
                "B3",
                FaceType::BInv,
                &[("q", false, "b2*b1"), ("p", true, "b1^-phi*b2^-phi")],
            ),
        ],
        coefficients: None,
    }
}

/// A strongly reduced diagram: a W face and a W⁻¹ face joined through
/// `2m + 2` C faces and one B face. The coefficients satisfy
/// `aᵢ = bⱼ = c₁` for `1 ≤ j ≤ m`, a relation with `t`, so they are not
/// transcendental.
///
/// Vertices run `T = P0, P1, …, P{2m+1}, H = P{2m+2}`; the W face crosses
/// t-edges `w1…w{2m+2}` between consecutive vertices and the W⁻¹ face the
/// parallel edges `y1…y{2m+2}`.
pub fn w_sandwich(m: usize) -> DiagramSpec {
    assert!(m >= 1);
    let n = 2 * m + 2;
    let p = |k: usize| match k {
        0 => "T".to_string(),
        k if k == n => "H".to_string(),
        k => format!("P{k}"),
    };
    let mut edges = vec![edge("p", "T", "H", EdgeLabel::X), edge("q", "T", "H", EdgeLabel::X)];
    for prefix in ["w", "y"] {
        for k in 1..=n {
            let (from, to) = if k % 2 == 1 { (p(k), p(k - 1)) } else { (p(k - 1), p(k)) };
            edges.push(edge(&format!("{prefix}{k}"), &from, &to, EdgeLabel::T));
        }
    }
    let a: Vec<String> = (0..=m).map(|_| "c1".to_string()).collect();
    let b: Vec<String> = (0..=m + 1)
        .map(|i| match i {
            0 => "b0".to_string(),
            i if i == m + 1 => format!("b{i}"),
            _ => "c1".to_string(),
        })
        .collect();
    let inv = |w: &str| format!("{w}^-1");

    let mut w_face: Vec<(String, bool, String)> = vec![("q".into(), false, b[0].clone())];
    for i in 0..=m {
        w_face.push((format!("w{}", 2 * i + 1), false, a[i].clone()));
        w_face.push((format!("w{}", 2 * i + 2), true, b[i + 1].clone()));
    }
    let mut w_inv: Vec<(String, bool, String)> =
        vec![("y1".into(), true, inv(&b[0])), ("p".into(), true, inv(&b[m + 1]))];
    for i in (1..=m).rev() {
        w_inv.push((format!("y{}", 2 * i + 2), false, inv(&a[i])));
        w_inv.push((format!("y{}", 2 * i + 1), true, inv(&b[i])));
    }
    w_inv.push(("y2".into(), false, inv(&a[0])));

    let owned = |id: &str, t: FaceType, entries: &[(String, bool, String)]| {
        let borrowed: Vec<(&str, bool, &str)> =
            entries.iter().map(|(e, al, c)| (e.as_str(), *al, c.as_str())).collect();
        face(id, t, &borrowed)
    };
    let mut faces = vec![
        face(
            "B",
            FaceType::B,
            &[("p", false, "b0*c1*b0^-1"), ("q", true, "b0^phi*c1^-phi*b0^-phi")],
        ),
        owned("W", FaceType::W, &w_face),
        owned("Winv", FaceType::WInv, &w_inv),
    ];
    for k in 1..=n {
        let (w, y) = (format!("w{k}"), format!("y{k}"));
        let entries = if k % 2 == 1 {
            [(y, false, "c1".to_string()), (w, true, "c1^-1".to_string())]
        } else {
            [(w, false, "c1^-1".to_string()), (y, true, "c1".to_string())]
        };
        faces.push(owned(&format!("C{k}"), FaceType::C, &entries));
    }
    DiagramSpec {
        m,
        exterior: "H".into(),
        vertices: (0..=n).map(p).collect(),
        edges,
        faces,
        coefficients: Some(CoefficientSpec { a, b }),
    }
}

/// Every valid fixture, for suites that run a check across all of them.
pub fn valid() -> Vec<(&'static str, DiagramSpec)> {
    vec![
        ("c_balloon", c_balloon()),
        ("b_theta", b_theta()),
        ("w_sandwich_1", w_sandwich(1)),
        ("w_sandwich_2", w_sandwich(2)),
        ("w_sandwich_3", w_sandwich(3)),
    ]
}
