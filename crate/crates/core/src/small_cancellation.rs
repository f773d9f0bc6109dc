//! Pieces and the C′(λ) condition for relators over a free product.
//!
//! Lengths are counted in units: a factor syllable is one unit and a
//! free-generator power `x^k` is `|k|` letter units. Two members agreeing on
//! a prefix and then continuing with different syllables of the same factor
//! are charged one extra unit for that partial syllable.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::backend::{Backend, Element, FormalAlphabet};
use crate::free_word::FreeWord;
use crate::ratio::Q;
use crate::word::{FreeProduct, Syllable, Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("relator {0} is trivial after cyclic reduction")]
    IdentityRelator(usize),
    #[error("lambda must be positive")]
    NonPositiveLambda,
    #[error("invalid family parameter: {0}")]
    InvalidParameter(String),
}

/// One unit of length.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Unit {
    Factor { factor: String, elem: Element },
    Letter { gen: String, inverse: bool },
}

pub fn units_of(w: &Word) -> Vec<Unit> {
    let mut out = Vec::with_capacity(w.len());
    for s in w.syllables() {
        match s {
            Syllable::Factor { factor, elem } => out.push(Unit::Factor {
                factor: factor.clone(),
                elem: elem.clone(),
            }),
            Syllable::Gen { gen, exp } => {
                for _ in 0..exp.unsigned_abs() {
                    out.push(Unit::Letter {
                        gen: gen.clone(),
                        inverse: *exp < 0,
                    });
                }
            }
        }
    }
    out
}

fn word_of(ctx: &FreeProduct, units: &[Unit]) -> Result<Word, WordError> {
    let raw: Vec<Syllable> = units
        .iter()
        .map(|u| match u {
            Unit::Factor { factor, elem } => Syllable::factor(factor.clone(), elem.clone()),
            Unit::Letter { gen, inverse } => Syllable::gen(gen.clone(), if *inverse { -1 } else { 1 }),
        })
        .collect();
    ctx.reduce(&raw)
}

/// A cyclic permutation of a relator or of its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct MemberId {
    pub relator: usize,
    pub inverted: bool,
    pub offset: usize,
}

#[derive(Clone, Debug)]
struct Class {
    relator: usize,
    inverted: bool,
    units: Vec<u32>,
}

/// The relators closed under inversion and cyclic permutation.
///
/// Conjugacy classes are stored once each; members are addressed by a class
/// and a rotation offset.
#[derive(Clone, Debug)]
pub struct SymmetrizedSet {
    ctx: FreeProduct,
    classes: Vec<Class>,
    units: Vec<Unit>,
    /// Factor index of each interned unit, `None` for free-generator letters.
    groups: Vec<Option<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PieceWitness {
    pub first: MemberId,
    pub second: MemberId,
    pub first_word: Word,
    pub second_word: Word,
    /// Common prefix of the two members; the piece may add one partial syllable.
    pub common_prefix: Word,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PieceReport {
    pub max_piece: usize,
    pub witness: Option<PieceWitness>,
    pub min_relator_length: usize,
    pub ratio: Q,
    pub members: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub member: MemberId,
    pub piece: usize,
    pub length: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CPrimeReport {
    pub holds: bool,
    pub lambda: Q,
    pub pieces: PieceReport,
    pub first_violation: Option<Violation>,
}

type Position = (usize, usize);
/// Two members and the length of their common prefix.
type PiecePair = (Position, Position, usize);

impl SymmetrizedSet {
    pub fn new(ctx: &FreeProduct, relators: &[Word]) -> Result<Self, ScError> {
        let mut raw_classes: Vec<(usize, bool, Vec<Unit>)> = Vec::new();
        for (i, r) in relators.iter().enumerate() {
            let cyc = ctx.cyclic_reduce(r)?.cyclic;
            if cyc.is_empty() {
                return Err(ScError::IdentityRelator(i));
            }
            let inv = ctx.cyclic_reduce(&ctx.inverse(&cyc))?.cyclic;
            raw_classes.push((i, false, units_of(&cyc)));
            raw_classes.push((i, true, units_of(&inv)));
        }
        let interned: BTreeSet<&Unit> = raw_classes.iter().flat_map(|c| c.2.iter()).collect();
        let units: Vec<Unit> = interned.into_iter().cloned().collect();
        let index: BTreeMap<&Unit, u32> = units.iter().enumerate().map(|(i, u)| (u, i as u32)).collect();
        let mut factor_ids: BTreeMap<&str, u32> = BTreeMap::new();
        let groups = units
            .iter()
            .map(|u| match u {
                Unit::Factor { factor, .. } => {
                    let next = factor_ids.len() as u32;
                    Some(*factor_ids.entry(factor.as_str()).or_insert(next))
                }
                Unit::Letter { .. } => None,
            })
            .collect();
        let mut seen = BTreeSet::new();
        let mut classes = Vec::new();
        for (relator, inverted, us) in &raw_classes {
            let ids: Vec<u32> = us.iter().map(|u| index[u]).collect();
            if seen.insert(least_rotation(&ids)) {
                classes.push(Class {
                    relator: *relator,
                    inverted: *inverted,
                    units: ids,
                });
            }
        }
        Ok(SymmetrizedSet {
            ctx: ctx.clone(),
            classes,
            units,
            groups,
        })
    }

    fn unit(&self, p: Position, i: usize) -> u32 {
        let c = &self.classes[p.0].units;
        c[(p.1 + i) % c.len()]
    }

    fn len_of(&self, p: Position) -> usize {
        self.classes[p.0].units.len()
    }

    fn positions(&self) -> Vec<Position> {
        self.classes
            .iter()
            .enumerate()
            .flat_map(|(ci, c)| (0..c.units.len()).map(move |o| (ci, o)))
            .collect()
    }

    fn compare(&self, p: Position, q: Position) -> Ordering {
        let n = self.len_of(p).min(self.len_of(q));
        for i in 0..n {
            match self.unit(p, i).cmp(&self.unit(q, i)) {
                Ordering::Equal => continue,
                other => return other,
            }
        }
        self.len_of(p).cmp(&self.len_of(q))
    }

    fn lcp(&self, p: Position, q: Position) -> usize {
        let n = self.len_of(p).min(self.len_of(q));
        (0..n).take_while(|&i| self.unit(p, i) == self.unit(q, i)).count()
    }

    /// Piece length between two members that are not the same word.
    fn piece_between(&self, p: Position, q: Position) -> usize {
        let f = self.lcp(p, q);
        let n = self.len_of(p).min(self.len_of(q));
        if f < n {
            let (a, b) = (self.unit(p, f), self.unit(q, f));
            if self.groups[a as usize].is_some() && self.groups[a as usize] == self.groups[b as usize] {
                return f + 1;
            }
        }
        f
    }

    fn member_id(&self, p: Position) -> MemberId {
        let c = &self.classes[p.0];
        MemberId {
            relator: c.relator,
            inverted: c.inverted,
            offset: p.1,
        }
    }

    fn member_units(&self, p: Position, len: usize) -> Vec<Unit> {
        (0..len).map(|i| self.units[self.unit(p, i) as usize].clone()).collect()
    }

    /// Distinct members as words.
    pub fn members(&self) -> Result<BTreeSet<Word>, ScError> {
        let mut out = BTreeSet::new();
        for p in self.positions() {
            out.insert(word_of(&self.ctx, &self.member_units(p, self.len_of(p)))?);
        }
        Ok(out)
    }

    /// Longest piece starting each member, by sorting all members and
    /// comparing neighbours. Identical rotations (periodic relators) share a
    /// piece of length `len − 1`.
    fn per_position(&self) -> (Vec<(Position, usize)>, Option<PiecePair>) {
        let mut order = self.positions();
        order.sort_by(|&a, &b| self.compare(a, b));
        // runs of identical sequences
        let mut runs: Vec<(usize, usize)> = Vec::new();
        let mut start = 0;
        for i in 1..=order.len() {
            if i == order.len() || self.compare(order[i - 1], order[i]) != Ordering::Equal {
                runs.push((start, i));
                start = i;
            }
        }
        let boundary: Vec<usize> = runs
            .windows(2)
            .map(|w| self.piece_between(order[w[0].0], order[w[1].0]))
            .collect();
        let mut best: Option<(Position, Position, usize)> = None;
        let mut consider = |p: Position, q: Position, v: usize| {
            if best.is_none_or(|b| v > b.2) {
                best = Some((p, q, v));
            }
        };
        let mut out = Vec::with_capacity(order.len());
        for (ri, &(lo, hi)) in runs.iter().enumerate() {
            let p = order[lo];
            let mut m = 0;
            if hi - lo >= 2 {
                m = self.len_of(p) - 1;
                consider(p, order[lo + 1], m);
            }
            if ri > 0 {
                m = m.max(boundary[ri - 1]);
                consider(order[runs[ri - 1].0], p, boundary[ri - 1]);
            }
            if ri + 1 < runs.len() {
                m = m.max(boundary[ri]);
            }
            for &q in &order[lo..hi] {
                out.push((q, m));
            }
        }
        (out, best)
    }

    pub fn max_piece(&self) -> Result<PieceReport, ScError> {
        let (_, best) = self.per_position();
        let min_len = self.classes.iter().map(|c| c.units.len()).min().unwrap_or(0);
        let members = self.classes.iter().map(|c| rotation_period(&c.units)).sum();
        let (max_piece, witness) = match best {
            None => (0, None),
            Some((p, q, v)) => {
                let (p, q) = if self.member_id(p) <= self.member_id(q) {
                    (p, q)
                } else {
                    (q, p)
                };
                let f = self.lcp(p, q).min(v);
                let w = PieceWitness {
                    first: self.member_id(p),
                    second: self.member_id(q),
                    first_word: word_of(&self.ctx, &self.member_units(p, self.len_of(p)))?,
                    second_word: word_of(&self.ctx, &self.member_units(q, self.len_of(q)))?,
                    common_prefix: word_of(&self.ctx, &self.member_units(p, f))?,
                };
                (v, Some(w))
            }
        };
        Ok(PieceReport {
            max_piece,
            witness,
            min_relator_length: min_len,
            ratio: if min_len == 0 {
                Q::from_integer(0)
            } else {
                Q::new(max_piece as i64, min_len as i64)
            },
            members,
        })
    }

    /// `C′(λ)`: every piece starting a member is shorter than `λ` times the
    /// length of that member.
    pub fn check_cprime(&self, lambda: Q) -> Result<CPrimeReport, ScError> {
        if lambda <= Q::from_integer(0) {
            return Err(ScError::NonPositiveLambda);
        }
        let (per, _) = self.per_position();
        let first_violation = per
            .iter()
            .filter(|&&(p, piece)| Q::from_integer(piece as i64) >= lambda * Q::from_integer(self.len_of(p) as i64))
            .map(|&(p, piece)| Violation {
                member: self.member_id(p),
                piece,
                length: self.len_of(p),
            })
            .min_by_key(|v| v.member);
        Ok(CPrimeReport {
            holds: first_violation.is_none(),
            lambda,
            pieces: self.max_piece()?,
            first_violation,
        })
    }
}

/// Number of distinct rotations of a cyclic sequence.
fn rotation_period(ids: &[u32]) -> usize {
    let n = ids.len();
    (1..=n)
        .find(|&p| n.is_multiple_of(p) && (0..n).all(|i| ids[i] == ids[(i + p) % n]))
        .unwrap_or(n)
}

fn least_rotation(ids: &[u32]) -> Vec<u32> {
    let n = ids.len();
    let rot = |r: usize| (0..n).map(move |i| ids[(r + i) % n]);
    let best = (0..n).min_by(|&a, &b| rot(a).cmp(rot(b)).then(a.cmp(&b))).unwrap_or(0);
    rot(best).collect()
}

pub fn check_cprime(ctx: &FreeProduct, relators: &[Word], lambda: Q) -> Result<CPrimeReport, ScError> {
    SymmetrizedSet::new(ctx, relators)?.check_cprime(lambda)
}

/// Relators together with the free product they live in.
#[derive(Clone, Debug)]
pub struct Family {
    pub ctx: FreeProduct,
    pub relators: Vec<Word>,
}

fn formal(symbols: impl IntoIterator<Item = String>) -> Backend {
    Backend::Formal(FormalAlphabet::closed(symbols))
}

fn sym(factor: &str, symbol: String, inverse: bool) -> Syllable {
    let w = FreeWord::letter(symbol);
    Syllable::factor(factor, Element::Word(if inverse { w.inverse() } else { w }))
}

/// Relators `vᵢ·sᵢ⁻¹`, `vᵢ = ∏_{j≤J} ∏_{k≤l} g_{ijk}` with `g_{ijk}` a fresh
/// symbol of factor `G_k` and `sᵢ` a fresh symbol of factor `S`.
pub fn build_distinct_block_family(l: usize, count: usize, j: usize) -> Result<Family, ScError> {
    if l < 2 || count == 0 || j == 0 {
        return Err(ScError::InvalidParameter(format!(
            "need l >= 2, count >= 1, J >= 1 (got l={l}, count={count}, J={j})"
        )));
    }
    let g = |i: usize, jj: usize, k: usize| format!("g{i}_{jj}_{k}");
    let mut factors: Vec<(String, Backend)> = (1..=l)
        .map(|k| {
            let symbols = (1..=count).flat_map(|i| (1..=j).map(move |jj| g(i, jj, k)));
            (format!("G{k}"), formal(symbols))
        })
        .collect();
    factors.push(("S".into(), formal((1..=count).map(|i| format!("s{i}")))));
    let ctx = FreeProduct::new(factors, vec![]);
    let mut relators = Vec::with_capacity(count);
    for i in 1..=count {
        let mut raw = Vec::with_capacity(l * j + 1);
        for jj in 1..=j {
            for k in 1..=l {
                raw.push(sym(&format!("G{k}"), g(i, jj, k), false));
            }
        }
        raw.push(sym("S", format!("s{i}"), true));
        relators.push(ctx.reduce(&raw)?);
    }
    Ok(Family { ctx, relators })
}

/// Relators `sᵢ·∏_{j≤blocks} (r·t_{ij})` over factors `S`, `R`, `T`, with one
/// shared symbol `r` and fresh symbols `sᵢ`, `t_{ij}`.
pub fn build_shared_letter_family(count: usize, blocks: usize) -> Result<Family, ScError> {
    if count == 0 || blocks == 0 {
        return Err(ScError::InvalidParameter(format!(
            "need count >= 1 and blocks >= 1 (got count={count}, blocks={blocks})"
        )));
    }
    let t = |i: usize, jj: usize| format!("t{i}_{jj}");
    let ctx = FreeProduct::new(
        vec![
            ("S".into(), formal((1..=count).map(|i| format!("s{i}")))),
            ("R".into(), formal(["r".to_string()])),
            (
                "T".into(),
                formal((1..=count).flat_map(|i| (1..=blocks).map(move |jj| t(i, jj)))),
            ),
        ],
        vec![],
    );
    let mut relators = Vec::with_capacity(count);
    for i in 1..=count {
        let mut raw = Vec::with_capacity(2 * blocks + 1);
        raw.push(sym("S", format!("s{i}"), false));
        for jj in 1..=blocks {
            raw.push(sym("R", "r".into(), false));
            raw.push(sym("T", t(i, jj), false));
        }
        relators.push(ctx.reduce(&raw)?);
    }
    Ok(Family { ctx, relators })
}
