//! Face templates and their car schedules.

use num_rational::Ratio;

use super::{phi, EdgeLabel, Face, FaceType, HowieDiagram};
use crate::free_word::FreeWord;
use crate::ratio::Q;

/// Boundary shape of a face; `B` and `C` cover their inverses, which have the
/// same shape with the parameter inverted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum FaceKind {
    B,
    C,
    W,
    WInv,
}

impl FaceKind {
    pub fn of(t: FaceType) -> FaceKind {
        match t {
            FaceType::B | FaceType::BInv => FaceKind::B,
            FaceType::C | FaceType::CInv => FaceKind::C,
            FaceType::W => FaceKind::W,
            FaceType::WInv => FaceKind::WInv,
        }
    }
}

/// A face matched against its template: template entry `k` is boundary entry
/// `(offset + k) mod len`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FaceMatch {
    pub kind: FaceKind,
    pub offset: usize,
}

impl FaceMatch {
    pub fn boundary_index(&self, k: usize, len: usize) -> usize {
        (self.offset + k) % len
    }
}

type Expected = (EdgeLabel, bool, FreeWord);

fn w_template(d: &HowieDiagram) -> Vec<Expected> {
    let (a, b) = (&d.coefficients.a, &d.coefficients.b);
    let mut out = vec![(EdgeLabel::X, false, b[0].clone())];
    for i in 0..=d.m {
        out.push((EdgeLabel::T, false, a[i].clone()));
        out.push((EdgeLabel::T, true, b[i + 1].clone()));
    }
    out
}

fn w_inv_template(d: &HowieDiagram) -> Vec<Expected> {
    let (a, b) = (&d.coefficients.a, &d.coefficients.b);
    let mut out = vec![
        (EdgeLabel::T, true, b[0].inverse()),
        (EdgeLabel::X, true, b[d.m + 1].inverse()),
    ];
    for i in (1..=d.m).rev() {
        out.push((EdgeLabel::T, false, a[i].inverse()));
        out.push((EdgeLabel::T, true, b[i].inverse()));
    }
    out.push((EdgeLabel::T, false, a[0].inverse()));
    out
}

pub(crate) fn match_face(d: &HowieDiagram, face: &Face) -> Option<FaceMatch> {
    let kind = FaceKind::of(face.face_type);
    let n = face.boundary.len();
    let label_of = |k: usize| d.edge(&face.boundary[k].edge).map(|e| e.label);
    let fits = |offset: usize| -> bool {
        let at = |k: usize| &face.boundary[(offset + k) % n];
        match kind {
            FaceKind::B | FaceKind::C => {
                let label = if kind == FaceKind::B {
                    EdgeLabel::X
                } else {
                    EdgeLabel::T
                };
                let (first, second) = (at(0), at(1));
                let u = &first.corner;
                let partner = if kind == FaceKind::B {
                    phi(&u.inverse())
                } else {
                    u.inverse()
                };
                n == 2
                    && label_of((offset) % n) == Some(label)
                    && label_of((offset + 1) % n) == Some(label)
                    && !first.along
                    && second.along
                    && !u.is_identity()
                    && second.corner == partner
            }
            FaceKind::W | FaceKind::WInv => {
                let expected = if kind == FaceKind::W {
                    w_template(d)
                } else {
                    w_inv_template(d)
                };
                expected.len() == n
                    && expected.iter().enumerate().all(|(k, (label, along, corner))| {
                        let e = at(k);
                        label_of((offset + k) % n) == Some(*label) && e.along == *along && e.corner == *corner
                    })
            }
        }
    };
    (0..n).find(|&r| fits(r)).map(|offset| FaceMatch { kind, offset })
}

/// `(template entry, duration)` in travel order, starting from the corner the
/// car occupies at time zero, and that corner's template index.
pub(crate) fn schedule_template(kind: FaceKind, m: usize) -> (usize, Vec<(usize, Q)>) {
    let m_i = m as i64;
    let one = Q::from_integer(1);
    let half = Ratio::new(1, 2);
    match kind {
        // from the corner b⁻¹ at speed 1/(2m)
        FaceKind::B => (0, vec![(1, Q::from_integer(2 * m_i)), (0, Q::from_integer(2 * m_i))]),
        // from the corner c⁻¹ at unit speed
        FaceKind::C => (0, vec![(1, one), (0, one)]),
        FaceKind::W => {
            let mut segs: Vec<(usize, Q)> = (2..=2 * m + 1).map(|k| (k, one)).collect();
            segs.push((2 * m + 2, half));
            segs.push((0, Q::from_integer(2 * m_i - 1)));
            segs.push((1, half));
            (1, segs)
        }
        FaceKind::WInv => {
            let mut segs = vec![(0, half), (1, Q::from_integer(2 * m_i - 1)), (2, half)];
            segs.extend((3..=2 * m + 2).map(|k| (k, one)));
            (2 * m + 2, segs)
        }
    }
}
