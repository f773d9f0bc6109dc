//! Relative presentations `⟨G, x₁…xₙ | w⟩` and the checks run on them.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::backend::{content, coset_decompose, in_span, Backend, BackendError, Element};
use crate::word::{FreeProduct, ProperPower, SubproductSpec, Syllable, Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Backend(#[from] BackendError),
    #[error("relator is not cyclically reduced")]
    NotCyclicallyReduced,
    #[error("\"{0}\" is not a free generator")]
    UnknownGenerator(String),
    #[error("presentation has no T factor")]
    MissingT,
    #[error("T must be free_abelian, got {0}")]
    UnsupportedT(&'static str),
    #[error("every t_i lies in <t>: this is the splitting case")]
    SplittingCase,
    #[error("generalised unimodularity conditions do not all hold")]
    NotUnimodular,
    #[error("set system has {0} sets; at most {max} are supported", max = MAX_OMEGA)]
    TooLarge(usize),
    #[error("set {index} contains \"{label}\" which is not in I")]
    UnknownLabel { index: usize, label: String },
    #[error("{flags} N-flags given for {sets} sets")]
    FlagCount { flags: usize, sets: usize },
}

/// Largest `|Ω|` accepted by [`check_omega_conditions`].
pub const MAX_OMEGA: usize = 20;

/// A coefficient run `gᵢ` and the T-syllable `tᵢ` after it.
type TPair = (Word, Vec<i64>);

/// A relator over a free product, optionally with one factor playing the role
/// of `T` (for presentations of the form `∏ gᵢtᵢ = 1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelativePresentation {
    ctx: FreeProduct,
    relator: Word,
    t_factor: Option<String>,
}

/// Outcome of a condition that may not be decidable for every input.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Holds,
    Fails,
    Unverified,
}

impl Status {
    pub fn from_bool(b: bool) -> Status {
        if b {
            Status::Holds
        } else {
            Status::Fails
        }
    }

    pub fn holds(self) -> bool {
        self == Status::Holds
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneralizedReport {
    /// `t = t₁ + … + tₙ`, when T is free abelian.
    pub t: Option<Vec<i64>>,
    pub cond1: Status,
    pub cond2: Status,
    pub cond3: Status,
    pub verdict: Status,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetEntry {
    pub coefficient: Word,
    /// Coset representative `c_x`.
    pub coset: Vec<i64>,
    pub k: i64,
}

/// The relator rewritten as `t · ∏ gᵢ^{c_{xᵢ} t^{kᵢ}}`, with `g^s = s⁻¹ g s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetForm {
    pub t: Vec<i64>,
    pub entries: Vec<CosetEntry>,
    pub x1: BTreeSet<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CaseSplit {
    /// `w′` is a proper power (or trivial).
    ProperPower { w_prime: Word, power: ProperPower },
    /// `w′` is not a proper power; `T = ⟨x₁…xₙ | [xᵢ, w′]⟩`.
    NotProperPower {
        w_prime: Word,
        t_relators: Vec<Word>,
        abelianization_rank: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientReport {
    pub coefficient: Word,
    pub infinite_order: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypothesisReport {
    pub unimodular: bool,
    pub exponent_sum: i64,
    pub coefficients: Vec<CoefficientReport>,
    pub coefficients_infinite_order: bool,
    pub w_not_conjugate_into_subfamily: bool,
    pub splitting_flag: bool,
}

impl HypothesisReport {
    pub fn all_green(&self) -> bool {
        self.unimodular
            && self.coefficients_infinite_order
            && self.w_not_conjugate_into_subfamily
            && !self.splitting_flag
    }
}

impl RelativePresentation {
    pub fn new(ctx: FreeProduct, relator: Word, t_factor: Option<String>) -> Result<Self, PresentationError> {
        if let Some(t) = &t_factor {
            ctx.backend(t)?;
        }
        if ctx.cyclic_reduce(&relator)?.cyclic != relator {
            return Err(PresentationError::NotCyclicallyReduced);
        }
        Ok(RelativePresentation { ctx, relator, t_factor })
    }

    pub fn ctx(&self) -> &FreeProduct {
        &self.ctx
    }

    pub fn relator(&self) -> &Word {
        &self.relator
    }

    pub fn t_factor(&self) -> Option<&str> {
        self.t_factor.as_deref()
    }

    fn ensure_gen(&self, gen: &str) -> Result<(), PresentationError> {
        if self.ctx.has_gen(gen) {
            Ok(())
        } else {
            Err(PresentationError::UnknownGenerator(gen.to_string()))
        }
    }

    pub fn is_unimodular(&self, gen: &str) -> Result<bool, PresentationError> {
        self.ensure_gen(gen)?;
        Ok(self.relator.exponent_sum(gen).abs() == 1)
    }

    /// Splits the relator into `(gᵢ, tᵢ)` pairs: `gᵢ` is the run of syllables
    /// before the i-th T-syllable. A trailing run gets `tₙ = 1`.
    fn t_pairs(&self) -> Result<(usize, Vec<TPair>), PresentationError> {
        let t_name = self.t_factor.clone().ok_or(PresentationError::MissingT)?;
        let backend = self.ctx.backend(&t_name)?;
        let Backend::FreeAbelian { rank } = backend else {
            return Err(PresentationError::UnsupportedT(backend.kind_name()));
        };
        let mut pairs = Vec::new();
        let mut run = Vec::new();
        for s in self.relator.syllables() {
            match s {
                Syllable::Factor {
                    factor,
                    elem: Element::Vector(v),
                } if *factor == t_name => {
                    pairs.push((Word(std::mem::take(&mut run)), v.clone()));
                }
                _ => run.push(s.clone()),
            }
        }
        if !run.is_empty() {
            pairs.push((Word(run), vec![0; *rank]));
        }
        Ok((*rank, pairs))
    }

    /// Conditions 1–3 for `∏ gᵢtᵢ = 1` with `T` free abelian.
    ///
    /// Condition 3 asks for the strong unique-product property of `T/⟨t⟩`.
    /// It is certified when the quotient is torsion-free (`t` primitive or
    /// zero); otherwise it is left unverified.
    pub fn generalized_unimodular_report(&self) -> Result<GeneralizedReport, PresentationError> {
        let (rank, pairs) = match self.t_pairs() {
            Ok(p) => p,
            Err(PresentationError::UnsupportedT(_)) => {
                return Ok(GeneralizedReport {
                    t: None,
                    cond1: Status::Unverified,
                    cond2: Status::Unverified,
                    cond3: Status::Unverified,
                    verdict: Status::Unverified,
                })
            }
            Err(e) => return Err(e),
        };
        let mut t = vec![0i64; rank];
        for (_, ti) in &pairs {
            for (a, b) in t.iter_mut().zip(ti) {
                *a += b;
            }
        }
        let g = content(&t);
        let cond1 = Status::from_bool(g != 0);
        let cond2 = Status::Holds;
        let cond3 = if g <= 1 { Status::Holds } else { Status::Unverified };
        let verdict = [cond1, cond2, cond3]
            .into_iter()
            .fold(Status::Holds, |acc, s| match (acc, s) {
                (Status::Fails, _) | (_, Status::Fails) => Status::Fails,
                (Status::Unverified, _) | (_, Status::Unverified) => Status::Unverified,
                _ => Status::Holds,
            });
        Ok(GeneralizedReport {
            t: Some(t),
            cond1,
            cond2,
            cond3,
            verdict,
        })
    }

    /// Rewrites `∏ gᵢtᵢ` as `t · ∏ gᵢ^{Sᵢ}` with suffix sums
    /// `Sᵢ = tᵢ + … + tₙ = c_{xᵢ} + kᵢ·t`.
    pub fn rewrite_to_coset_form(&self) -> Result<CosetForm, PresentationError> {
        if !self.generalized_unimodular_report()?.verdict.holds() {
            return Err(PresentationError::NotUnimodular);
        }
        let (rank, pairs) = self.t_pairs()?;
        let mut t = vec![0i64; rank];
        for (_, ti) in &pairs {
            for (a, b) in t.iter_mut().zip(ti) {
                *a += b;
            }
        }
        if pairs.iter().all(|(_, ti)| in_span(&t, ti)) {
            return Err(PresentationError::SplittingCase);
        }
        let mut suffix = vec![0i64; rank];
        let mut raw = Vec::with_capacity(pairs.len());
        for (g, ti) in pairs.iter().rev() {
            for (a, b) in suffix.iter_mut().zip(ti) {
                *a += b;
            }
            let d = coset_decompose(&t, &suffix)?;
            raw.push(CosetEntry {
                coefficient: g.clone(),
                coset: d.rep,
                k: d.l,
            });
        }
        raw.reverse();
        let mut entries: Vec<CosetEntry> = Vec::with_capacity(raw.len());
        for e in raw {
            if e.coefficient.is_empty() {
                continue;
            }
            match entries.last_mut() {
                Some(top) if top.coset == e.coset && top.k == e.k => {
                    top.coefficient = self.ctx.mul(&top.coefficient, &e.coefficient)?;
                    if top.coefficient.is_empty() {
                        entries.pop();
                    }
                }
                _ => entries.push(e),
            }
        }
        let x1 = entries.iter().map(|e| e.coset.clone()).collect();
        Ok(CosetForm { t, entries, x1 })
    }

    /// Multiplies a coset form back out in the ambient free product.
    pub fn expand_coset_form(&self, form: &CosetForm) -> Result<Word, PresentationError> {
        let t_name = self.t_factor.clone().ok_or(PresentationError::MissingT)?;
        let t_syl = |v: Vec<i64>| Syllable::factor(t_name.clone(), Element::Vector(v));
        let mut raw = vec![t_syl(form.t.clone())];
        for e in &form.entries {
            let s: Vec<i64> = e.coset.iter().zip(&form.t).map(|(c, ti)| c + e.k * ti).collect();
            raw.push(t_syl(s.iter().map(|x| -x).collect()));
            raw.extend(e.coefficient.syllables().iter().cloned());
            raw.push(t_syl(s));
        }
        Ok(self.ctx.reduce(&raw)?)
    }

    /// Erases coefficients and decides which of the two cases applies.
    pub fn split_cases(&self) -> Result<CaseSplit, PresentationError> {
        let w_prime = self.relator.erase_coefficients();
        let power = w_prime.proper_power();
        if power.is_proper_power() {
            return Ok(CaseSplit::ProperPower { w_prime, power });
        }
        let w_inv = self.ctx.inverse(&w_prime);
        let mut t_relators = Vec::with_capacity(self.ctx.free_gens().len());
        for x in self.ctx.free_gens() {
            let raw: Vec<Syllable> = std::iter::once(Syllable::gen(x.clone(), -1))
                .chain(w_inv.syllables().iter().cloned())
                .chain(std::iter::once(Syllable::gen(x.clone(), 1)))
                .chain(w_prime.syllables().iter().cloned())
                .collect();
            t_relators.push(self.ctx.reduce(&raw)?);
        }
        Ok(CaseSplit::NotProperPower {
            w_prime,
            abelianization_rank: t_relators.len(),
            t_relators,
        })
    }

    /// Hypothesis certificate for a relator over `G₁ * … * G_l * ⟨t⟩`.
    ///
    /// Coefficients are the maximal runs of factor syllables between
    /// occurrences of `t`, read cyclically.
    pub fn hypothesis_report(&self, t_gen: &str, subfamily: &[String]) -> Result<HypothesisReport, PresentationError> {
        self.ensure_gen(t_gen)?;
        for f in subfamily {
            self.ctx.backend(f)?;
        }
        let exponent_sum = self.relator.exponent_sum(t_gen);
        let syl = self.relator.syllables();
        let is_t = |s: &Syllable| matches!(s, Syllable::Gen { gen, .. } if gen == t_gen);
        let start = syl.iter().position(&is_t).unwrap_or(0);
        let mut coefficients = Vec::new();
        let mut run = Vec::new();
        for s in syl[start..].iter().chain(&syl[..start]) {
            if is_t(s) {
                if !run.is_empty() {
                    coefficients.push(Word(std::mem::take(&mut run)));
                }
            } else {
                run.push(s.clone());
            }
        }
        if !run.is_empty() {
            coefficients.push(Word(run));
        }
        let mut reports = Vec::with_capacity(coefficients.len());
        for c in coefficients {
            let infinite_order = self.ctx.has_infinite_order(&c)?;
            reports.push(CoefficientReport {
                coefficient: c,
                infinite_order,
            });
        }
        let sub = SubproductSpec::new(subfamily.iter().cloned(), [t_gen.to_string()]);
        let conjugate_into = self.ctx.membership_in_subproduct(&self.relator, &sub, true)?;
        let splitting_flag = !syl.iter().any(|s| matches!(s, Syllable::Factor { .. }));
        Ok(HypothesisReport {
            unimodular: exponent_sum.abs() == 1,
            exponent_sum,
            coefficients_infinite_order: reports.iter().all(|r| r.infinite_order),
            coefficients: reports,
            w_not_conjugate_into_subfamily: !conjugate_into,
            splitting_flag,
        })
    }
}

/// A family `Ω` of subsets of a label set `I`, listed in the order used to
/// pick witnesses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetSystem {
    pub labels: Vec<String>,
    pub omega: Vec<BTreeSet<String>>,
    /// Caller-supplied certificates that `N_ω` meets the subproducts trivially.
    pub n_flags: Option<Vec<bool>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubfamilyWitness {
    pub subfamily: Vec<usize>,
    pub min: String,
    pub omega_min: usize,
    pub max: String,
    pub omega_max: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OmegaReport {
    pub ok: bool,
    pub failing_subfamily: Option<Vec<usize>>,
    pub witnesses: Vec<SubfamilyWitness>,
    /// `None` when no flags were supplied.
    pub n_flags_hold: Option<bool>,
}

/// Checks every subfamily `F ⊆ Ω` with `|F| ≥ 2` for two elements of `⋃F`
/// that each lie in exactly one member of `F`, those members being distinct.
///
/// Subfamilies are visited in increasing bitmask order and the scan stops at
/// the first failure.
pub fn check_omega_conditions(s: &SetSystem) -> Result<OmegaReport, PresentationError> {
    let n = s.omega.len();
    if n > MAX_OMEGA {
        return Err(PresentationError::TooLarge(n));
    }
    if let Some(flags) = &s.n_flags {
        if flags.len() != n {
            return Err(PresentationError::FlagCount {
                flags: flags.len(),
                sets: n,
            });
        }
    }
    for (index, w) in s.omega.iter().enumerate() {
        if let Some(label) = w.iter().find(|l| !s.labels.contains(l)) {
            return Err(PresentationError::UnknownLabel {
                index,
                label: label.clone(),
            });
        }
    }
    let mut witnesses = Vec::new();
    let mut failing = None;
    for mask in 1u32..(1u32 << n) {
        if mask.count_ones() < 2 {
            continue;
        }
        let members: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        // elements of ⋃F in exactly one member, paired with that member
        let unique: Vec<(&String, usize)> = s
            .labels
            .iter()
            .filter_map(|l| {
                let mut holders = members.iter().filter(|&&i| s.omega[i].contains(l));
                match (holders.next(), holders.next()) {
                    (Some(&i), None) => Some((l, i)),
                    _ => None,
                }
            })
            .collect();
        let found = unique.first().and_then(|&(min, omega_min)| {
            unique
                .iter()
                .rev()
                .find(|&&(_, j)| j != omega_min)
                .map(|&(max, omega_max)| SubfamilyWitness {
                    subfamily: members.clone(),
                    min: min.clone(),
                    omega_min,
                    max: max.clone(),
                    omega_max,
                })
        });
        match found {
            Some(w) => witnesses.push(w),
            None => {
                failing = Some(members);
                break;
            }
        }
    }
    Ok(OmegaReport {
        ok: failing.is_none(),
        failing_subfamily: failing,
        witnesses,
        n_flags_hold: s.n_flags.as_ref().map(|f| f.iter().all(|&b| b)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free_word::FreeWord;

    fn free(basis: &[&str]) -> Backend {
        Backend::Free {
            basis: basis.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn gen_ctx() -> FreeProduct {
        FreeProduct::new(vec![("G".into(), free(&["a", "b"]))], vec!["x1".into(), "x2".into()])
    }

    fn g(s: &str) -> Syllable {
        Syllable::factor("G", Element::Word(FreeWord::parse(s).unwrap()))
    }

    fn pres(ctx: FreeProduct, raw: &[Syllable], t: Option<&str>) -> RelativePresentation {
        let w = ctx.reduce(raw).unwrap();
        RelativePresentation::new(ctx, w, t.map(String::from)).unwrap()
    }

    #[test]
    fn unimodular_examples() {
        let p = pres(
            gen_ctx(),
            &[g("a"), Syllable::gen("x1", 1), g("b"), Syllable::gen("x2", 1)],
            None,
        );
        assert!(p.is_unimodular("x1").unwrap());
        let p = pres(
            gen_ctx(),
            &[g("a"), Syllable::gen("x1", 1), g("b"), Syllable::gen("x1", -1)],
            None,
        );
        assert!(!p.is_unimodular("x1").unwrap());
        let p = pres(gen_ctx(), &[g("a"), Syllable::gen("x1", -1)], None);
        assert!(p.is_unimodular("x1").unwrap());
        assert_eq!(
            p.is_unimodular("y"),
            Err(PresentationError::UnknownGenerator("y".into()))
        );
    }

    #[test]
    fn relator_must_be_cyclically_reduced() {
        let ctx = gen_ctx();
        let w = ctx
            .reduce(&[Syllable::gen("x1", 1), g("a"), Syllable::gen("x1", -1)])
            .unwrap();
        assert_eq!(
            RelativePresentation::new(ctx, w, None),
            Err(PresentationError::NotCyclicallyReduced)
        );
    }

    fn t_ctx(rank: usize) -> FreeProduct {
        FreeProduct::new(
            vec![
                ("G".into(), free(&["a", "b"])),
                ("T".into(), Backend::FreeAbelian { rank }),
            ],
            vec![],
        )
    }

    fn tv(v: &[i64]) -> Syllable {
        Syllable::factor("T", Element::Vector(v.to_vec()))
    }

    #[test]
    fn generalized_report_examples() {
        let p = pres(t_ctx(2), &[g("a"), tv(&[1, 0]), g("b"), tv(&[0, 1])], Some("T"));
        let r = p.generalized_unimodular_report().unwrap();
        assert_eq!(r.t, Some(vec![1, 1]));
        assert_eq!(r.verdict, Status::Holds);

        let p = pres(t_ctx(1), &[g("a"), tv(&[1]), g("b"), tv(&[-1])], Some("T"));
        assert_eq!(p.generalized_unimodular_report().unwrap().cond1, Status::Fails);

        let p = pres(t_ctx(2), &[g("a"), tv(&[2, 0]), g("b"), tv(&[0, 2])], Some("T"));
        let r = p.generalized_unimodular_report().unwrap();
        assert_eq!(r.cond3, Status::Unverified);
        assert!(!r.verdict.holds());
    }

    #[test]
    fn generalized_report_on_non_abelian_t_is_unverified() {
        let ctx = FreeProduct::new(vec![("G".into(), free(&["a"])), ("T".into(), free(&["s"]))], vec![]);
        let w = ctx
            .reduce(&[
                g("a"),
                Syllable::factor("T", Element::Word(FreeWord::parse("s").unwrap())),
            ])
            .unwrap();
        let p = RelativePresentation::new(ctx, w, Some("T".into())).unwrap();
        let r = p.generalized_unimodular_report().unwrap();
        assert_eq!(r.verdict, Status::Unverified);
        assert_eq!(p.rewrite_to_coset_form(), Err(PresentationError::NotUnimodular));
    }

    #[test]
    fn coset_form_two_cosets() {
        let p = pres(t_ctx(2), &[g("a"), tv(&[1, 0]), g("b"), tv(&[0, 1])], Some("T"));
        let form = p.rewrite_to_coset_form().unwrap();
        assert_eq!(form.t, vec![1, 1]);
        assert_eq!(form.x1.len(), 2);
        assert_eq!(p.expand_coset_form(&form).unwrap(), *p.relator());
    }

    #[test]
    fn coset_form_splitting_case() {
        let p = pres(t_ctx(2), &[g("a"), tv(&[2, 1]), g("b"), tv(&[-1, -1])], Some("T"));
        // t = (1,0); (2,1) ∉ ⟨t⟩, so this one is nonsplitting
        assert!(p.rewrite_to_coset_form().is_ok());
        let p = pres(t_ctx(2), &[g("a"), tv(&[2, 1]), g("b"), tv(&[-1, 0])], Some("T"));
        // t = (1,1); (2,1) ∉ ⟨t⟩
        assert!(p.rewrite_to_coset_form().is_ok());
        let p = pres(t_ctx(2), &[g("a"), tv(&[2, 2]), g("b"), tv(&[-1, -1])], Some("T"));
        assert_eq!(p.rewrite_to_coset_form(), Err(PresentationError::SplittingCase));
    }

    #[test]
    fn coset_form_with_leading_t_syllable() {
        // relator starts with a T-syllable: g₁ is the identity and is dropped
        let p = pres(t_ctx(2), &[tv(&[1, 0]), g("a"), tv(&[0, 1]), g("b")], Some("T"));
        let form = p.rewrite_to_coset_form().unwrap();
        assert!(form.entries.iter().all(|e| !e.coefficient.is_empty()));
        assert_eq!(p.expand_coset_form(&form).unwrap(), *p.relator());
    }

    #[test]
    fn split_cases_examples() {
        let x = |n: &str, e| Syllable::gen(n, e);
        let p = pres(
            gen_ctx(),
            &[g("a"), x("x1", 1), x("x2", 1), x("x1", 1), x("x2", 1)],
            None,
        );
        match p.split_cases().unwrap() {
            CaseSplit::ProperPower {
                power: ProperPower::Power { k, .. },
                ..
            } => assert_eq!(k, 2),
            other => panic!("unexpected {other:?}"),
        }
        let p = pres(
            gen_ctx(),
            &[g("a"), x("x1", 1), x("x2", 1), x("x1", -1), x("x2", -1)],
            None,
        );
        match p.split_cases().unwrap() {
            CaseSplit::NotProperPower {
                t_relators,
                abelianization_rank,
                ..
            } => {
                assert_eq!(t_relators.len(), 2);
                assert_eq!(abelianization_rank, 2);
            }
            other => panic!("unexpected {other:?}"),
        }
        let p = pres(gen_ctx(), &[g("a"), x("x1", 1), g("b"), x("x1", -1)], None);
        assert!(matches!(
            p.split_cases().unwrap(),
            CaseSplit::ProperPower {
                power: ProperPower::Identity,
                ..
            }
        ));
    }

    fn two_factor_ctx() -> FreeProduct {
        FreeProduct::new(
            vec![
                ("G1".into(), Backend::FreeAbelian { rank: 2 }),
                ("G2".into(), Backend::FreeAbelian { rank: 2 }),
            ],
            vec!["t".into()],
        )
    }

    fn ab(f: &str, x: i64, y: i64) -> Syllable {
        Syllable::factor(f, Element::Vector(vec![x, y]))
    }

    #[test]
    fn hypothesis_report_examples() {
        let t = |e| Syllable::gen("t", e);
        let p = pres(
            two_factor_ctx(),
            &[ab("G1", 1, 0), t(1), ab("G2", 0, 1), t(1), ab("G1", 1, 1), t(-1)],
            None,
        );
        let r = p.hypothesis_report("t", &["G1".into()]).unwrap();
        assert!(r.all_green(), "{r:?}");
        assert_eq!(r.coefficients.len(), 3);

        let p = pres(two_factor_ctx(), &[ab("G1", 1, 0), t(1), ab("G1", 0, 1), t(-1)], None);
        let r = p.hypothesis_report("t", &["G1".into()]).unwrap();
        assert!(!r.w_not_conjugate_into_subfamily);

        let p = pres(two_factor_ctx(), &[t(1)], None);
        assert!(p.hypothesis_report("t", &[]).unwrap().splitting_flag);
    }

    fn system(omega: &[&[&str]]) -> SetSystem {
        let mut labels: BTreeSet<String> = BTreeSet::new();
        for w in omega {
            labels.extend(w.iter().map(|s| s.to_string()));
        }
        SetSystem {
            labels: labels.into_iter().collect(),
            omega: omega
                .iter()
                .map(|w| w.iter().map(|s| s.to_string()).collect())
                .collect(),
            n_flags: None,
        }
    }

    #[test]
    fn omega_examples() {
        let ok = check_omega_conditions(&system(&[
            &["a", "b", "d", "e"],
            &["b", "c", "e", "f"],
            &["d", "e", "f"],
        ]))
        .unwrap();
        assert!(ok.ok);
        assert_eq!(ok.witnesses.len(), 4);

        let bad = check_omega_conditions(&system(&[&["a", "b"], &["b", "c"], &["c", "a"]])).unwrap();
        assert!(!bad.ok);
        assert_eq!(bad.failing_subfamily, Some(vec![0, 1, 2]));

        let single = check_omega_conditions(&system(&[&["a"]])).unwrap();
        assert!(single.ok);
        assert!(single.witnesses.is_empty());
    }

    #[test]
    fn omega_too_large() {
        let names: Vec<String> = (0..21).map(|i| format!("e{i}")).collect();
        let s = SetSystem {
            labels: names.clone(),
            omega: names.iter().map(|n| BTreeSet::from([n.clone()])).collect(),
            n_flags: None,
        };
        assert_eq!(check_omega_conditions(&s), Err(PresentationError::TooLarge(21)));
    }
}
