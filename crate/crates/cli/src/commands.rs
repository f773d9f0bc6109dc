use std::collections::BTreeSet;
use std::path::Path;

use serde_json::{json, Map, Value};

use relpres_core::backend::Backend;
use relpres_core::diagram::{
    self, CollisionReport, DiagramError, DiagramSpec, FaceSchedule, HowieDiagram, Location, ParityReport,
};
use relpres_core::presentation::{check_omega_conditions, CaseSplit, RelativePresentation, SetSystem};
use relpres_core::ratio::{self, Q};
use relpres_core::small_cancellation::{
    build_distinct_block_family, build_shared_letter_family, CPrimeReport, Family, MemberId, SymmetrizedSet,
};
use relpres_core::up::{has_strong_up, unique_products, FiniteSubset, StrongUp, UniqueProduct};
use relpres_core::word::{FreeProduct, ProperPower, Word};

use crate::input::{self, PresentationInput, RelatorsInput, SystemInput, UpInput};
use crate::{CliError, DiagramAction, FamilyKind, Outcome};

fn rational(r: &Q) -> Value {
    Value::String(ratio::format(r))
}

pub fn analyze(path: &Path, subfamily: Option<&[String]>, gen: Option<&str>) -> Result<Outcome, CliError> {
    let inp: PresentationInput = input::read(path)?;
    let ctx = input::build_ctx(&inp.factors, &inp.free_gens)?;
    let relator = input::word(&ctx, &inp.relator, "/relator")?;
    let p = RelativePresentation::new(ctx.clone(), relator.clone(), inp.t_factor.clone())?;

    let mut report = Map::new();
    let mut checks = Map::new();
    report.insert("relator".into(), ctx.word_to_json(&relator));

    let mut sums = Map::new();
    let mut unimodular = Map::new();
    for g in ctx.free_gens() {
        sums.insert(g.clone(), json!(relator.exponent_sum(g)));
        unimodular.insert(g.clone(), json!(p.is_unimodular(g)?));
    }
    report.insert("exponent_sums".into(), Value::Object(sums));
    report.insert("unimodular".into(), Value::Object(unimodular));

    let t_gen = match gen {
        Some(g) => Some(g.to_string()),
        None if ctx.free_gens().len() == 1 => Some(ctx.free_gens()[0].clone()),
        None => None,
    };
    if let Some(t) = &t_gen {
        checks.insert("unimodular".into(), json!(p.is_unimodular(t)?));
    }

    if !ctx.free_gens().is_empty() {
        report.insert("case_split".into(), case_split_json(&ctx, &p.split_cases()?));
    }

    if inp.t_factor.is_some() {
        let g = p.generalized_unimodular_report()?;
        checks.insert("generalized_unimodular".into(), json!(g.verdict.holds()));
        report.insert("generalized".into(), serde_json::to_value(&g).expect("plain data"));
        let coset = match p.rewrite_to_coset_form() {
            Ok(form) => {
                let entries: Vec<Value> = form
                    .entries
                    .iter()
                    .map(|e| json!({"coefficient": ctx.word_to_json(&e.coefficient), "coset": e.coset, "k": e.k}))
                    .collect();
                json!({"t": form.t, "entries": entries, "x1": form.x1})
            }
            Err(e) => {
                let c: CliError = e.into();
                c.report()
            }
        };
        report.insert("coset_form".into(), coset);
    }

    if let Some(t) = &t_gen {
        let sub = subfamily.unwrap_or(&[]);
        let h = p.hypothesis_report(t, sub)?;
        if subfamily.is_some() {
            checks.insert("hypotheses".into(), json!(h.all_green()));
        }
        let coefficients: Vec<Value> = h
            .coefficients
            .iter()
            .map(|c| json!({"coefficient": ctx.word_to_json(&c.coefficient), "infinite_order": c.infinite_order}))
            .collect();
        report.insert(
            "hypothesis".into(),
            json!({
                "t": t,
                "subfamily": sub,
                "unimodular": h.unimodular,
                "exponent_sum": h.exponent_sum,
                "coefficients": coefficients,
                "coefficients_infinite_order": h.coefficients_infinite_order,
                "w_not_conjugate_into_subfamily": h.w_not_conjugate_into_subfamily,
                "splitting_flag": h.splitting_flag,
                "all_green": h.all_green(),
            }),
        );
    }

    let ok = checks.values().all(|v| v == &Value::Bool(true));
    report.insert("checks".into(), Value::Object(checks));
    report.insert("ok".into(), json!(ok));
    Ok(Outcome::checked(ok, Value::Object(report)))
}

fn case_split_json(ctx: &FreeProduct, split: &CaseSplit) -> Value {
    match split {
        CaseSplit::ProperPower { w_prime, power } => {
            let (root, k) = match power {
                ProperPower::Power { root, k } => (ctx.word_to_json(root), json!(k)),
                _ => (Value::Null, Value::Null),
            };
            json!({
                "case": "PROPER_POWER",
                "w_prime": ctx.word_to_json(w_prime),
                "identity": matches!(power, ProperPower::Identity),
                "root": root,
                "k": k,
            })
        }
        CaseSplit::NotProperPower {
            w_prime,
            t_relators,
            abelianization_rank,
        } => json!({
            "case": "NOT_PROPER_POWER",
            "w_prime": ctx.word_to_json(w_prime),
            "t_relators": t_relators.iter().map(|r| ctx.word_to_json(r)).collect::<Vec<_>>(),
            "abelianization_rank": abelianization_rank,
        }),
    }
}

pub struct FamilyParams {
    pub l: Option<usize>,
    pub j: Option<usize>,
    pub blocks: Option<usize>,
    pub count: Option<usize>,
}

fn missing(flag: &str) -> CliError {
    CliError::Input {
        class: "Arguments",
        message: format!("--{flag} is required for this family"),
    }
}

pub fn sc_check(
    path: Option<&Path>,
    lambda: &str,
    family: Option<FamilyKind>,
    params: FamilyParams,
) -> Result<Outcome, CliError> {
    let lambda = ratio::parse(lambda).map_err(|e| CliError::Input {
        class: "Arguments",
        message: e.to_string(),
    })?;
    if lambda <= Q::from_integer(0) {
        return Err(CliError::Input {
            class: "Arguments",
            message: "--lambda must be positive".into(),
        });
    }
    let (source, fam) = match (family, path) {
        (Some(_), Some(_)) => {
            return Err(CliError::Input {
                class: "Arguments",
                message: "give either an input file or --family, not both".into(),
            })
        }
        (None, None) => {
            return Err(CliError::Input {
                class: "Arguments",
                message: "an input file or --family is required".into(),
            })
        }
        (Some(FamilyKind::DistinctBlocks), None) => {
            let (l, count, j) = (
                params.l.ok_or_else(|| missing("l"))?,
                params.count.ok_or_else(|| missing("count"))?,
                params.j.ok_or_else(|| missing("J"))?,
            );
            (
                json!({"family": "distinct-blocks", "l": l, "count": count, "J": j}),
                build_distinct_block_family(l, count, j)?,
            )
        }
        (Some(FamilyKind::SharedLetter), None) => {
            let (count, blocks) = (
                params.count.ok_or_else(|| missing("count"))?,
                params.blocks.ok_or_else(|| missing("blocks"))?,
            );
            (
                json!({"family": "shared-letter", "count": count, "blocks": blocks}),
                build_shared_letter_family(count, blocks)?,
            )
        }
        (None, Some(path)) => {
            let inp: RelatorsInput = input::read(path)?;
            let ctx = input::build_ctx(&inp.factors, &inp.free_gens)?;
            let relators = inp
                .relators
                .iter()
                .enumerate()
                .map(|(i, r)| input::word(&ctx, r, &format!("/relators/{i}")))
                .collect::<Result<Vec<Word>, _>>()?;
            let name = path
                .file_name()
                .map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned());
            (json!({"file": name}), Family { ctx, relators })
        }
    };
    let set = SymmetrizedSet::new(&fam.ctx, &fam.relators)?;
    let report = set.check_cprime(lambda)?;
    let mut out = cprime_json(&fam.ctx, &report);
    out["source"] = source;
    out["relators"] = json!(fam.relators.len());
    Ok(Outcome::checked(report.holds, out))
}

fn member_json(m: &MemberId) -> Value {
    json!({"relator": m.relator, "inverted": m.inverted, "offset": m.offset})
}

fn cprime_json(ctx: &FreeProduct, r: &CPrimeReport) -> Value {
    let p = &r.pieces;
    let witness = p.witness.as_ref().map(|w| {
        json!({
            "first": member_json(&w.first),
            "second": member_json(&w.second),
            "first_word": ctx.word_to_json(&w.first_word),
            "second_word": ctx.word_to_json(&w.second_word),
            "common_prefix": ctx.word_to_json(&w.common_prefix),
        })
    });
    let violation = r
        .first_violation
        .as_ref()
        .map(|v| json!({"member": member_json(&v.member), "piece": v.piece, "length": v.length}));
    json!({
        "holds": r.holds,
        "lambda": rational(&r.lambda),
        "max_piece": p.max_piece,
        "min_relator_length": p.min_relator_length,
        "ratio": rational(&p.ratio),
        "members": p.members,
        "witness": witness,
        "first_violation": violation,
    })
}

fn subset(backend: &Backend, values: &[Value], key: &str) -> Result<FiniteSubset, CliError> {
    let elements = values
        .iter()
        .enumerate()
        .map(|(i, v)| {
            backend.parse_element(v).map_err(|e| CliError::Json {
                pointer: format!("/{key}/{i}"),
                message: e.to_string(),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(FiniteSubset::new(backend.clone(), elements)?)
}

pub fn up_check(path: &Path) -> Result<Outcome, CliError> {
    let inp: UpInput = input::read(path)?;
    let backend = Backend::from_json(&inp.backend).map_err(|e| CliError::Json {
        pointer: "/backend".into(),
        message: e.to_string(),
    })?;
    let (x, y) = (subset(&backend, &inp.x, "x")?, subset(&backend, &inp.y, "y")?);
    let table = unique_products(&x, &y)?;
    let strong = has_strong_up(&x, &y)?;
    let up_json = |u: &UniqueProduct| {
        json!({
            "product": backend.element_to_json(&u.product),
            "x": backend.element_to_json(&u.x),
            "y": backend.element_to_json(&u.y),
        })
    };
    let counts: Vec<Value> = table
        .decompositions
        .iter()
        .map(|(g, d)| json!({"product": backend.element_to_json(g), "count": d.len()}))
        .collect();
    let has_up = !table.unique.is_empty();
    let strong_json = match &strong {
        StrongUp::NotApplicable => json!({"applicable": false, "holds": null}),
        StrongUp::Applicable {
            holds,
            witnesses,
            distinct_x,
        } => json!({
            "applicable": true,
            "holds": holds,
            "witnesses": witnesses.as_ref().map(|(a, b)| vec![up_json(a), up_json(b)]),
            "distinct_x": distinct_x,
        }),
    };
    let ok = has_up && strong.holds().unwrap_or(true);
    Ok(Outcome::checked(
        ok,
        json!({
            "up": has_up,
            "unique_products": table.unique.iter().map(up_json).collect::<Vec<_>>(),
            "decomposition_counts": counts,
            "strong_up": strong_json,
            "ok": ok,
        }),
    ))
}

pub fn omega_check(path: &Path) -> Result<Outcome, CliError> {
    let inp: SystemInput = input::read(path)?;
    let system = SetSystem {
        labels: inp.labels,
        omega: inp
            .omega
            .into_iter()
            .map(|w| w.into_iter().collect::<BTreeSet<_>>())
            .collect(),
        n_flags: inp.n_flags,
    };
    let r = check_omega_conditions(&system)?;
    let ok = r.ok && r.n_flags_hold != Some(false);
    Ok(Outcome::checked(ok, serde_json::to_value(&r).expect("plain data")))
}

fn load_diagram(path: &Path) -> Result<HowieDiagram, CliError> {
    let spec: DiagramSpec = input::read(path)?;
    Ok(HowieDiagram::from_spec(&spec)?)
}

/// Structural failures of a well-formed diagram are failed checks (exit 1);
/// schema problems stay input errors (exit 2).
fn diagram_failure(e: DiagramError, key: &str) -> Result<Outcome, CliError> {
    if let DiagramError::Schema { .. } = e {
        return Err(e.into());
    }
    Ok(Outcome::checked(
        false,
        json!({key: false, "error": {"class": e.class(), "message": e.to_string()}}),
    ))
}

pub fn diagram(action: &DiagramAction) -> Result<Outcome, CliError> {
    match action {
        DiagramAction::Validate { input } => {
            let d = load_diagram(input)?;
            match diagram::validate(&d) {
                Ok(r) => Ok(Outcome::checked(
                    true,
                    json!({
                        "valid": true,
                        "exterior": r.exterior,
                        "exterior_label": r.exterior_label.to_string(),
                        "labels": {
                            "vertices": r.labels.vertices.iter().map(|(k, v)| (k.clone(), json!(v.to_string()))).collect::<Map<_, _>>(),
                            "faces": r.labels.faces.iter().map(|(k, v)| (k.clone(), json!(v.to_string()))).collect::<Map<_, _>>(),
                        },
                    }),
                )),
                Err(e) => diagram_failure(e, "valid"),
            }
        }
        DiagramAction::Simulate { input } => {
            let d = load_diagram(input)?;
            match diagram::simulate(&d) {
                Ok(r) => {
                    let ok = r.complete_points.len() >= 2;
                    let mut v = collisions_json(&r);
                    v["ok"] = json!(ok);
                    Ok(Outcome::checked(ok, v))
                }
                Err(e) => diagram_failure(e, "ok"),
            }
        }
        DiagramAction::Parity { input } => {
            let d = load_diagram(input)?;
            match diagram::schedules(&d) {
                Ok(s) => {
                    let r = diagram::check_parity_schedules(&d, &s);
                    let ok = r.t_edges_ok && r.x_edges_ok;
                    Ok(Outcome::checked(ok, parity_json(&d, &s, &r)))
                }
                Err(e) => diagram_failure(e, "ok"),
            }
        }
        DiagramAction::Reduce { input, edge } => {
            let d = load_diagram(input)?;
            match edge {
                None => match diagram::reducedness_report(&d) {
                    Ok(r) => Ok(Outcome::checked(
                        r.reduced,
                        json!({
                            "reduced": r.reduced,
                            "strongly_reduced": r.strongly_reduced,
                            "reducible_edge": r.reducible_edge,
                            "same_kind_edge": r.same_kind_edge,
                        }),
                    )),
                    Err(e) => diagram_failure(e, "reduced"),
                },
                Some(edge) => match diagram::reduce_step(&d, edge) {
                    Ok(merged) => {
                        let valid = diagram::validate(&merged).is_ok();
                        Ok(Outcome::checked(
                            valid,
                            json!({
                                "merged": true,
                                "valid": valid,
                                "diagram": serde_json::to_value(merged.to_spec()).expect("plain data"),
                            }),
                        ))
                    }
                    Err(e) => diagram_failure(e, "merged"),
                },
            }
        }
    }
}

fn location_json(l: &Location) -> Value {
    match l {
        Location::Vertex(v) => json!({"vertex": v}),
        Location::Edge { edge, offset } => json!({"edge": edge, "offset": rational(offset)}),
    }
}

fn collisions_json(r: &CollisionReport) -> Value {
    let events: Vec<Value> = r
        .events
        .iter()
        .map(|e| {
            json!({
                "time": rational(&e.time),
                "location": location_json(&e.location),
                "faces": e.faces,
                "complete": e.complete,
            })
        })
        .collect();
    let visits: Map<String, Value> = r
        .vertex_visits
        .iter()
        .map(|(v, cs)| {
            let list: Vec<Value> = cs
                .iter()
                .map(|c| {
                    json!({
                        "face": c.face,
                        "entry": c.entry,
                        "times": c.times.iter().map(rational).collect::<Vec<_>>(),
                    })
                })
                .collect();
            (v.clone(), Value::Array(list))
        })
        .collect();
    json!({
        "period": rational(&r.period),
        "events": events,
        "complete_points": r.complete_points.iter().map(location_json).collect::<Vec<_>>(),
        "vertex_visits": visits,
    })
}

fn parity_json(d: &HowieDiagram, schedules: &[FaceSchedule], r: &ParityReport) -> Value {
    let scheds: Vec<Value> = schedules
        .iter()
        .map(|s| {
            let face = &d.faces[d.face_index(&s.face).expect("schedule of a diagram face")];
            let segments: Vec<Value> = s
                .segments
                .iter()
                .map(|seg| {
                    json!({
                        "entry": seg.entry,
                        "edge": face.boundary[seg.entry].edge,
                        "start": rational(&seg.start),
                        "duration": rational(&seg.duration),
                    })
                })
                .collect();
            json!({
                "face": s.face,
                "kind": format!("{:?}", s.kind),
                "start_corner": s.start_corner,
                "loop_time": rational(&s.loop_time),
                "period": rational(&s.period),
                "segments": segments,
            })
        })
        .collect();
    let violations: Vec<Value> = r
        .violations
        .iter()
        .map(|v| {
            json!({
                "face": v.face,
                "edge": v.edge,
                "label": v.label.to_string(),
                "along": v.along,
                "start": rational(&v.start),
                "end": rational(&v.end),
            })
        })
        .collect();
    json!({
        "t_edges_ok": r.t_edges_ok,
        "x_edges_ok": r.x_edges_ok,
        "ok": r.t_edges_ok && r.x_edges_ok,
        "violations": violations,
        "schedules": scheds,
    })
}
