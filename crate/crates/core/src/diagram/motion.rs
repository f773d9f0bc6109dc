//! Car schedules, the parity invariants of their directions, and exact
//! detection of complete collisions.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;

use super::template::{schedule_template, FaceKind};
use super::validate::{validated, Analysis, Corner};
use super::{DiagramError, EdgeLabel, HowieDiagram};
use crate::ratio::Q;

/// The car traverses boundary entry `entry` during `[start, start + duration]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub entry: usize,
    pub start: Q,
    pub duration: Q,
}

impl Segment {
    pub fn end(&self) -> Q {
        self.start + self.duration
    }
}

/// One loop of a car around its face, starting from the corner it occupies
/// at time zero. The motion repeats every `loop_time`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceSchedule {
    pub face: String,
    pub kind: FaceKind,
    /// Boundary entry whose corner the car occupies at time zero.
    pub start_corner: usize,
    pub segments: Vec<Segment>,
    pub loop_time: Q,
    /// `4m`, common to all cars.
    pub period: Q,
}

impl FaceSchedule {
    /// All segment occurrences with start in `[0, period)`.
    pub fn instances(&self) -> Vec<Segment> {
        let mut out = Vec::new();
        let mut base = Q::from_integer(0);
        while base < self.period {
            for s in &self.segments {
                let start = reduce_mod(s.start + base, self.period);
                out.push(Segment {
                    entry: s.entry,
                    start,
                    duration: s.duration,
                });
            }
            base += self.loop_time;
        }
        out.sort_by(|a, b| a.start.cmp(&b.start).then(a.entry.cmp(&b.entry)));
        out
    }

    /// Times in `[0, period)` at which the car sits at the corner after `entry`.
    pub fn corner_times(&self, entry: usize) -> BTreeSet<Q> {
        self.instances()
            .iter()
            .filter(|s| s.entry == entry)
            .map(|s| reduce_mod(s.end(), self.period))
            .collect()
    }

    /// The boundary entry whose corner the car occupies at `tau`, if any.
    pub fn corner_at(&self, tau: Q) -> Option<usize> {
        let tau = reduce_mod(tau, self.period);
        self.instances()
            .iter()
            .find(|s| reduce_mod(s.end(), self.period) == tau)
            .map(|s| s.entry)
    }

    /// The same motion delayed by `delta`.
    pub fn phase_shifted(&self, delta: Q) -> FaceSchedule {
        let mut out = self.clone();
        for s in &mut out.segments {
            s.start += delta;
        }
        out
    }
}

fn reduce_mod(x: Q, p: Q) -> Q {
    let k = (x / p).floor();
    x - k * p
}

fn build_schedule(d: &HowieDiagram, a: &Analysis, fi: usize) -> FaceSchedule {
    let face = &d.faces[fi];
    let n = face.boundary.len();
    let fm = a.matches[fi];
    let (start, durations) = schedule_template(fm.kind, d.m);
    let mut t = Q::from_integer(0);
    let mut segments = Vec::with_capacity(durations.len());
    for (k, dur) in durations {
        segments.push(Segment {
            entry: fm.boundary_index(k, n),
            start: t,
            duration: dur,
        });
        t += dur;
    }
    FaceSchedule {
        face: face.id.clone(),
        kind: fm.kind,
        start_corner: fm.boundary_index(start, n),
        segments,
        loop_time: t,
        period: Q::from_integer(4 * d.m as i64),
    }
}

pub fn schedule_of(d: &HowieDiagram, face: &str) -> Result<FaceSchedule, DiagramError> {
    let fi = d
        .face_index(face)
        .ok_or_else(|| DiagramError::UnknownFace(face.to_string()))?;
    let (_, a) = validated(d)?;
    Ok(build_schedule(d, &a, fi))
}

/// Schedules of every face, in face order.
pub fn schedules(d: &HowieDiagram) -> Result<Vec<FaceSchedule>, DiagramError> {
    let (_, a) = validated(d)?;
    Ok((0..d.faces.len()).map(|fi| build_schedule(d, &a, fi)).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityViolation {
    pub face: String,
    pub edge: String,
    pub label: EdgeLabel,
    pub along: bool,
    pub start: Q,
    pub end: Q,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityReport {
    pub t_edges_ok: bool,
    pub x_edges_ok: bool,
    pub violations: Vec<ParityViolation>,
}

/// t-edges are crossed along their arrow only inside `[2j, 2j+1]` and against
/// it only inside `[2j+1, 2j+2]`; x-edges along inside `[0, 2m] + 4mℤ` and
/// against inside `[2m, 4m] + 4mℤ`. Checked on segment endpoints.
pub fn check_parity_schedules(d: &HowieDiagram, schedules: &[FaceSchedule]) -> ParityReport {
    let two_m = Q::from_integer(2 * d.m as i64);
    let mut violations = Vec::new();
    for s in schedules {
        let fi = d.face_index(&s.face).expect("schedule of a diagram face");
        for seg in s.instances() {
            let entry = &d.faces[fi].boundary[seg.entry];
            let label = d.edge(&entry.edge).expect("edges checked").label;
            let ok = match label {
                EdgeLabel::T => {
                    let j = seg.start.floor();
                    let parity_even = j.to_integer().is_even();
                    seg.end() <= j + Q::from_integer(1) && parity_even == entry.along
                }
                EdgeLabel::X => {
                    let window = if entry.along { Q::from_integer(0) } else { two_m };
                    seg.start >= window && seg.end() <= window + two_m
                }
            };
            if !ok {
                violations.push(ParityViolation {
                    face: s.face.clone(),
                    edge: entry.edge.clone(),
                    label,
                    along: entry.along,
                    start: seg.start,
                    end: seg.end(),
                });
            }
        }
    }
    ParityReport {
        t_edges_ok: !violations.iter().any(|v| v.label == EdgeLabel::T),
        x_edges_ok: !violations.iter().any(|v| v.label == EdgeLabel::X),
        violations,
    }
}

pub fn check_parity_invariant(d: &HowieDiagram) -> Result<ParityReport, DiagramError> {
    Ok(check_parity_schedules(d, &schedules(d)?))
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Location {
    /// A point of an edge at `offset ∈ (0, 1)` from its tail.
    Edge {
        edge: String,
        offset: Q,
    },
    Vertex(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollisionEvent {
    pub time: Q,
    pub location: Location,
    /// Faces whose cars are present.
    pub faces: Vec<String>,
    /// Number of cars present equals the multiplicity of the point.
    pub complete: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CornerVisits {
    pub face: String,
    pub entry: usize,
    pub times: BTreeSet<Q>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollisionReport {
    pub period: Q,
    /// Meetings of two or more cars, sorted by time then location.
    pub events: Vec<CollisionEvent>,
    /// Distinct locations with at least one complete collision.
    pub complete_points: Vec<Location>,
    /// Arrival times of every corner's car at each vertex.
    pub vertex_visits: BTreeMap<String, Vec<CornerVisits>>,
}

impl CollisionReport {
    pub fn complete_at(&self, vertex: &str) -> bool {
        self.complete_points
            .iter()
            .any(|l| matches!(l, Location::Vertex(v) if v == vertex))
    }
}

/// Runs every car over one period `[0, 4m)` and reports where cars meet.
pub fn simulate(d: &HowieDiagram) -> Result<CollisionReport, DiagramError> {
    let (_, a) = validated(d)?;
    let scheds: Vec<FaceSchedule> = (0..d.faces.len()).map(|fi| build_schedule(d, &a, fi)).collect();
    let period = Q::from_integer(4 * d.m as i64);
    let mut events = Vec::new();

    // edge meetings: one car along the arrow, the other against it
    for e in &d.edges {
        let (fa, ka) = a.traversal[&(e.id.clone(), true)];
        let (fb, kb) = a.traversal[&(e.id.clone(), false)];
        if fa == fb {
            continue;
        }
        for s1 in scheds[fa].instances().iter().filter(|s| s.entry == ka) {
            for s2 in scheds[fb].instances().iter().filter(|s| s.entry == kb) {
                // (τ − s₁)/d₁ = 1 − (τ − s₂)/d₂
                let (d1, d2) = (s1.duration, s2.duration);
                let one = Q::from_integer(1);
                let tau = (one + s1.start / d1 + s2.start / d2) / (one / d1 + one / d2);
                if tau > s1.start && tau < s1.end() && tau > s2.start && tau < s2.end() {
                    let mut faces = vec![d.faces[fa].id.clone(), d.faces[fb].id.clone()];
                    faces.sort();
                    events.push(CollisionEvent {
                        time: reduce_mod(tau, period),
                        location: Location::Edge {
                            edge: e.id.clone(),
                            offset: (tau - s1.start) / d1,
                        },
                        faces,
                        complete: true,
                    });
                }
            }
        }
    }

    // vertex meetings
    let mut vertex_visits = BTreeMap::new();
    for (v, corners) in &a.vertex_corners {
        let visits: Vec<CornerVisits> = corners
            .iter()
            .map(|&(fi, k): &Corner| CornerVisits {
                face: d.faces[fi].id.clone(),
                entry: k,
                times: scheds[fi].corner_times(k),
            })
            .collect();
        let all_times: BTreeSet<Q> = visits.iter().flat_map(|c| c.times.iter().copied()).collect();
        for tau in all_times {
            let present: Vec<&CornerVisits> = visits.iter().filter(|c| c.times.contains(&tau)).collect();
            if present.len() >= 2 || present.len() == visits.len() {
                let mut faces: Vec<String> = present.iter().map(|c| c.face.clone()).collect();
                faces.sort();
                events.push(CollisionEvent {
                    time: tau,
                    location: Location::Vertex(v.clone()),
                    faces,
                    complete: present.len() == visits.len(),
                });
            }
        }
        vertex_visits.insert(v.clone(), visits);
    }

    events.sort_by(|x, y| x.time.cmp(&y.time).then_with(|| x.location.cmp(&y.location)));
    let complete_points: BTreeSet<Location> = events
        .iter()
        .filter(|e| e.complete)
        .map(|e| e.location.clone())
        .collect();
    Ok(CollisionReport {
        period,
        events,
        complete_points: complete_points.into_iter().collect(),
        vertex_visits,
    })
}
