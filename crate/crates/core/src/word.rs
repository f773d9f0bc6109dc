//! Normal forms in free products `G₁ * … * G_l * F(free generators)`.

use std::collections::BTreeSet;
use std::fmt;

use serde_json::{json, Value};
use thiserror::Error;

use crate::backend::{Backend, BackendError, Element, Order};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("unknown factor \"{0}\"")]
    UnknownFactor(String),
    #[error("unknown free generator \"{0}\"")]
    UnknownGenerator(String),
    #[error("factor {factor}: {source}")]
    Backend {
        factor: String,
        #[source]
        source: BackendError,
    },
    #[error("Z membership is not decidable for the {0} backend")]
    UndecidableZ(&'static str),
    #[error("syllable {0} lies outside X * Y")]
    OutsideAmbient(String),
    #[error("invalid word JSON at {pointer}: {message}")]
    Json { pointer: String, message: String },
}

/// The ambient free product: named factors plus free generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeProduct {
    factors: Vec<(String, Backend)>,
    free_gens: Vec<String>,
}

impl FreeProduct {
    pub fn new(factors: Vec<(String, Backend)>, free_gens: Vec<String>) -> Self {
        FreeProduct { factors, free_gens }
    }

    pub fn factors(&self) -> &[(String, Backend)] {
        &self.factors
    }

    pub fn free_gens(&self) -> &[String] {
        &self.free_gens
    }

    pub fn backend(&self, factor: &str) -> Result<&Backend, WordError> {
        self.factors
            .iter()
            .find(|(n, _)| n == factor)
            .map(|(_, b)| b)
            .ok_or_else(|| WordError::UnknownFactor(factor.to_string()))
    }

    pub fn has_gen(&self, gen: &str) -> bool {
        self.free_gens.iter().any(|g| g == gen)
    }

    fn wrap<T>(factor: &str, r: Result<T, BackendError>) -> Result<T, WordError> {
        r.map_err(|source| WordError::Backend {
            factor: factor.to_string(),
            source,
        })
    }

    fn check_syllable(&self, s: &Syllable) -> Result<(), WordError> {
        match s {
            Syllable::Factor { factor, elem } => {
                let b = self.backend(factor)?;
                Self::wrap(factor, b.check(elem))
            }
            Syllable::Gen { gen, .. } => {
                if self.has_gen(gen) {
                    Ok(())
                } else {
                    Err(WordError::UnknownGenerator(gen.clone()))
                }
            }
        }
    }

    /// Free reduction to the normal form.
    pub fn reduce(&self, raw: &[Syllable]) -> Result<Word, WordError> {
        let mut out: Vec<Syllable> = Vec::with_capacity(raw.len());
        for s in raw {
            self.check_syllable(s)?;
            if self.is_trivial(s)? {
                continue;
            }
            match out.last_mut() {
                Some(top) if top.same_letter(s) => {
                    let merged = self.merge(top, s)?;
                    match merged {
                        Some(m) => *top = m,
                        None => {
                            out.pop();
                        }
                    }
                }
                _ => out.push(s.clone()),
            }
        }
        Ok(Word(out))
    }

    /// Cyclic reduction: returns `(cyclic, conjugator)` with
    /// `w = conjugator · cyclic · conjugator⁻¹`.
    pub fn cyclic_reduce(&self, w: &Word) -> Result<CyclicForm, WordError> {
        let mut core = w.clone();
        let mut conj = Word::identity();
        while core.0.len() >= 2 && core.0[0].same_letter(core.0.last().unwrap()) {
            let last = core.0.pop().unwrap();
            let first = core.0.remove(0);
            let merged = self.merge(&last, &first)?;
            if let Some(m) = merged {
                core.0.insert(0, m);
            }
            conj = self.mul(&conj, &self.inverse(&Word(vec![last])))?;
        }
        Ok(CyclicForm {
            cyclic: core,
            conjugator: conj,
        })
    }

    pub fn mul(&self, a: &Word, b: &Word) -> Result<Word, WordError> {
        let raw: Vec<Syllable> = a.0.iter().chain(b.0.iter()).cloned().collect();
        self.reduce(&raw)
    }

    pub fn inverse(&self, w: &Word) -> Word {
        Word(
            w.0.iter()
                .rev()
                .map(|s| match s {
                    Syllable::Factor { factor, elem } => Syllable::Factor {
                        factor: factor.clone(),
                        elem: self
                            .backend(factor)
                            .and_then(|b| Self::wrap(factor, b.inv(elem)))
                            .expect("word syllables are validated on construction"),
                    },
                    Syllable::Gen { gen, exp } => Syllable::Gen {
                        gen: gen.clone(),
                        exp: -exp,
                    },
                })
                .collect(),
        )
    }

    fn is_trivial(&self, s: &Syllable) -> Result<bool, WordError> {
        Ok(match s {
            Syllable::Factor { factor, elem } => self.backend(factor)?.is_identity(elem),
            Syllable::Gen { exp, .. } => *exp == 0,
        })
    }

    fn merge(&self, a: &Syllable, b: &Syllable) -> Result<Option<Syllable>, WordError> {
        let merged = match (a, b) {
            (Syllable::Factor { factor, elem: x }, Syllable::Factor { elem: y, .. }) => {
                let backend = self.backend(factor)?;
                let elem = Self::wrap(factor, backend.mul(x, y))?;
                Syllable::Factor {
                    factor: factor.clone(),
                    elem,
                }
            }
            (Syllable::Gen { gen, exp: x }, Syllable::Gen { exp: y, .. }) => Syllable::Gen {
                gen: gen.clone(),
                exp: x + y,
            },
            _ => unreachable!("merge is only called on syllables of the same letter"),
        };
        Ok(if self.is_trivial(&merged)? { None } else { Some(merged) })
    }

    /// Reads the `[{"factor":..,"elem":..} | {"gen":..,"exp":..}]` form and
    /// reduces it.
    pub fn parse_word(&self, value: &Value, pointer: &str) -> Result<Word, WordError> {
        let json_err = |p: String, m: &str| WordError::Json {
            pointer: p,
            message: m.to_string(),
        };
        let arr = value
            .as_array()
            .ok_or_else(|| json_err(pointer.to_string(), "a word must be an array"))?;
        let mut raw = Vec::with_capacity(arr.len());
        for (i, item) in arr.iter().enumerate() {
            let here = format!("{pointer}/{i}");
            if let Some(factor) = item.get("factor").and_then(Value::as_str) {
                let backend = self
                    .backend(factor)
                    .map_err(|_| json_err(format!("{here}/factor"), &format!("unknown factor \"{factor}\"")))?;
                let elem_json = item
                    .get("elem")
                    .ok_or_else(|| json_err(here.clone(), "missing \"elem\""))?;
                let elem = backend
                    .parse_element(elem_json)
                    .map_err(|e| json_err(format!("{here}/elem"), &e.to_string()))?;
                raw.push(Syllable::Factor {
                    factor: factor.to_string(),
                    elem,
                });
            } else if let Some(gen) = item.get("gen").and_then(Value::as_str) {
                if !self.has_gen(gen) {
                    return Err(json_err(
                        format!("{here}/gen"),
                        &format!("unknown free generator \"{gen}\""),
                    ));
                }
                let exp = match item.get("exp") {
                    None => 1,
                    Some(e) => e
                        .as_i64()
                        .ok_or_else(|| json_err(format!("{here}/exp"), "exponent must be an integer"))?,
                };
                raw.push(Syllable::Gen {
                    gen: gen.to_string(),
                    exp,
                });
            } else {
                return Err(json_err(here, "expected a \"factor\" or \"gen\" syllable"));
            }
        }
        self.reduce(&raw)
    }

    pub fn word_to_json(&self, w: &Word) -> Value {
        Value::Array(
            w.0.iter()
                .map(|s| match s {
                    Syllable::Factor { factor, elem } => {
                        let backend = self.backend(factor).expect("validated word");
                        json!({"factor": factor, "elem": backend.element_to_json(elem)})
                    }
                    Syllable::Gen { gen, exp } => json!({"gen": gen, "exp": exp}),
                })
                .collect(),
        )
    }

    /// Classifies `u` against the two shapes allowed for an element algebraic
    /// over `X * Z` inside `X * Y`.
    ///
    /// `IN_XZ_Y_XZ` holds exactly when at most one `Y`-syllable of the normal
    /// form lies outside `Z`: a product `a·y·b` with `a, b ∈ X * Z` can only
    /// create a non-`Z` syllable at the junction with `y`.
    pub fn syllable_membership_form(
        &self,
        u: &Word,
        x: &SubproductSpec,
        y: &str,
        z: &SubgroupSpec,
    ) -> Result<SyllableForm, WordError> {
        let y_backend = self.backend(y)?;
        z.ensure_decidable(y_backend)?;
        let in_z = |s: &Syllable| -> Result<bool, WordError> {
            match s {
                Syllable::Factor { factor, elem } if factor == y => Self::wrap(y, z.contains(y_backend, elem)),
                _ => Ok(false),
            }
        };
        let mut in_xz = Vec::with_capacity(u.0.len());
        for s in &u.0 {
            let is_y = matches!(s, Syllable::Factor { factor, .. } if factor == y);
            if !is_y && !x.contains(s) {
                return Err(WordError::OutsideAmbient(s.to_string()));
            }
            in_xz.push(!is_y || in_z(s)?);
        }
        let outside: Vec<usize> = (0..u.0.len()).filter(|&i| !in_xz[i]).collect();
        if outside.len() <= 1 {
            let split = outside.first().copied();
            return Ok(SyllableForm::InXzYXz { y_syllable: split });
        }
        // x₁ = u[..i], u′ = u[i..j], x₂ = u[j..] over syllable split points.
        let n = u.0.len();
        for i in 0..=n {
            if !in_xz[..i].iter().all(|&b| b) {
                break;
            }
            for j in (i..=n).rev() {
                if !in_xz[j..].iter().all(|&b| b) {
                    break;
                }
                let middle = Word(u.0[i..j].to_vec());
                if !self.has_infinite_order(&middle)? {
                    return Ok(SyllableForm::X1UX2 {
                        x1: Word(u.0[..i].to_vec()),
                        u_mid: middle,
                        x2: Word(u.0[j..].to_vec()),
                    });
                }
            }
        }
        Ok(SyllableForm::Neither)
    }

    /// True iff `w` has infinite order in the free product: its cyclic
    /// reduction has at least two syllables, or one syllable of infinite order.
    pub fn has_infinite_order(&self, w: &Word) -> Result<bool, WordError> {
        let c = self.cyclic_reduce(w)?;
        Ok(match c.cyclic.0.as_slice() {
            [] => false,
            [Syllable::Gen { .. }] => true,
            [Syllable::Factor { factor, elem }] => {
                let b = self.backend(factor)?;
                Self::wrap(factor, b.order(elem))? == Order::Infinite
            }
            _ => true,
        })
    }

    /// Every syllable of the normal form (or of its cyclic reduction) lies in
    /// the subproduct `s`.
    pub fn membership_in_subproduct(
        &self,
        w: &Word,
        s: &SubproductSpec,
        upto_conjugacy: bool,
    ) -> Result<bool, WordError> {
        let target = if upto_conjugacy {
            self.cyclic_reduce(w)?.cyclic
        } else {
            w.clone()
        };
        Ok(target.0.iter().all(|syl| s.contains(syl)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Syllable {
    Factor { factor: String, elem: Element },
    Gen { gen: String, exp: i64 },
}

impl Syllable {
    pub fn factor(factor: impl Into<String>, elem: Element) -> Self {
        Syllable::Factor {
            factor: factor.into(),
            elem,
        }
    }

    pub fn gen(gen: impl Into<String>, exp: i64) -> Self {
        Syllable::Gen { gen: gen.into(), exp }
    }

    /// Name of the free factor this syllable lives in (`⟨x⟩` for a generator).
    pub fn letter_name(&self) -> &str {
        match self {
            Syllable::Factor { factor, .. } => factor,
            Syllable::Gen { gen, .. } => gen,
        }
    }

    pub fn same_letter(&self, other: &Syllable) -> bool {
        match (self, other) {
            (Syllable::Factor { factor: a, .. }, Syllable::Factor { factor: b, .. }) => a == b,
            (Syllable::Gen { gen: a, .. }, Syllable::Gen { gen: b, .. }) => a == b,
            _ => false,
        }
    }
}

impl fmt::Display for Syllable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Syllable::Factor { factor, elem } => write!(f, "{factor}:{elem}"),
            Syllable::Gen { gen, exp: 1 } => write!(f, "{gen}"),
            Syllable::Gen { gen, exp } => write!(f, "{gen}^{exp}"),
        }
    }
}

/// A word in normal form: adjacent syllables never share a factor or
/// generator, and no syllable is trivial. Construct through
/// [`FreeProduct::reduce`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub(crate) Vec<Syllable>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent_sum(&self, gen: &str) -> i64 {
        self.0
            .iter()
            .map(|s| match s {
                Syllable::Gen { gen: g, exp } if g == gen => *exp,
                _ => 0,
            })
            .sum()
    }

    /// Deletes every factor syllable and freely reduces what is left.
    pub fn erase_coefficients(&self) -> Word {
        let mut out: Vec<Syllable> = Vec::new();
        for s in &self.0 {
            if let Syllable::Gen { gen, exp } = s {
                match out.last_mut() {
                    Some(Syllable::Gen { gen: g, exp: e }) if g == gen => {
                        *e += exp;
                        if *e == 0 {
                            out.pop();
                        }
                    }
                    _ => out.push(s.clone()),
                }
            }
        }
        Word(out)
    }

    /// Expands free-generator syllables into `(generator, ±1)` letters.
    /// Returns `None` if the word has factor syllables.
    pub fn gen_letters(&self) -> Option<Vec<(String, i8)>> {
        let mut out = Vec::new();
        for s in &self.0 {
            match s {
                Syllable::Gen { gen, exp } => {
                    let sign = if *exp > 0 { 1 } else { -1 };
                    for _ in 0..exp.unsigned_abs() {
                        out.push((gen.clone(), sign));
                    }
                }
                Syllable::Factor { .. } => return None,
            }
        }
        Some(out)
    }

    /// Rebuilds a word from `(generator, ±1)` letters, reducing freely.
    pub fn from_gen_letters(letters: &[(String, i8)]) -> Word {
        let mut out: Vec<Syllable> = Vec::new();
        for (g, sign) in letters {
            match out.last_mut() {
                Some(Syllable::Gen { gen, exp }) if gen == g => {
                    *exp += i64::from(*sign);
                    if *exp == 0 {
                        out.pop();
                    }
                }
                _ => out.push(Syllable::gen(g.clone(), i64::from(*sign))),
            }
        }
        Word(out)
    }

    /// Detects whether a word over free generators is a proper power.
    ///
    /// A cyclically reduced `k`-th power in a free group is a literal
    /// concatenation, so the smallest period of the cyclic letter sequence
    /// that divides its length gives the maximal `k`.
    pub fn proper_power(&self) -> ProperPower {
        let Some(letters) = self.gen_letters() else {
            return ProperPower::NotGenWord;
        };
        let mut lo = 0;
        let mut hi = letters.len();
        while hi - lo >= 2 && letters[lo].0 == letters[hi - 1].0 && letters[lo].1 == -letters[hi - 1].1 {
            lo += 1;
            hi -= 1;
        }
        let core = &letters[lo..hi];
        let n = core.len();
        if n == 0 {
            return ProperPower::Identity;
        }
        for period in 1..n {
            if n % period == 0 && (period..n).all(|i| core[i] == core[i - period]) {
                let mut root: Vec<(String, i8)> = letters[..lo].to_vec();
                root.extend_from_slice(&core[..period]);
                root.extend(letters[..lo].iter().rev().map(|(g, s)| (g.clone(), -s)));
                return ProperPower::Power {
                    root: Word::from_gen_letters(&root),
                    k: (n / period) as u64,
                };
            }
        }
        ProperPower::NotProperPower
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicForm {
    pub cyclic: Word,
    pub conjugator: Word,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProperPower {
    /// The empty word; the identity counts as a proper power.
    Identity,
    /// `root^k = w` exactly, `k ≥ 2` maximal.
    Power {
        root: Word,
        k: u64,
    },
    NotProperPower,
    /// The word has coefficient syllables; the question is not posed.
    NotGenWord,
}

impl ProperPower {
    pub fn is_proper_power(&self) -> bool {
        matches!(self, ProperPower::Identity | ProperPower::Power { .. })
    }
}

/// A sub-free-product: a subset of the factors and free generators.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SubproductSpec {
    pub factors: BTreeSet<String>,
    pub free_gens: BTreeSet<String>,
}

impl SubproductSpec {
    pub fn new<I, J, S, T>(factors: I, free_gens: J) -> Self
    where
        I: IntoIterator<Item = S>,
        J: IntoIterator<Item = T>,
        S: Into<String>,
        T: Into<String>,
    {
        SubproductSpec {
            factors: factors.into_iter().map(Into::into).collect(),
            free_gens: free_gens.into_iter().map(Into::into).collect(),
        }
    }

    pub fn contains(&self, s: &Syllable) -> bool {
        match s {
            Syllable::Factor { factor, .. } => self.factors.contains(factor),
            Syllable::Gen { gen, .. } => self.free_gens.contains(gen),
        }
    }
}

/// A subgroup `Z` of a single factor, in a form whose membership is decidable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubgroupSpec {
    Trivial,
    Whole,
    /// Cyclic subgroup of a `free_abelian` or `finite_table` backend.
    Cyclic(Element),
    /// Subgroup of a `free`/`formal` backend generated by a subset of symbols.
    FreeFactor(BTreeSet<String>),
}

impl SubgroupSpec {
    fn ensure_decidable(&self, backend: &Backend) -> Result<(), WordError> {
        match (self, backend) {
            (SubgroupSpec::Trivial | SubgroupSpec::Whole, _) => Ok(()),
            (SubgroupSpec::Cyclic(_), Backend::FreeAbelian { .. } | Backend::FiniteTable(_)) => Ok(()),
            (SubgroupSpec::FreeFactor(_), Backend::Free { .. } | Backend::Formal(_)) => Ok(()),
            (_, b) => Err(WordError::UndecidableZ(b.kind_name())),
        }
    }

    pub fn contains(&self, backend: &Backend, g: &Element) -> Result<bool, BackendError> {
        backend.check(g)?;
        Ok(match (self, g) {
            (SubgroupSpec::Trivial, _) => backend.is_identity(g),
            (SubgroupSpec::Whole, _) => true,
            (SubgroupSpec::Cyclic(gen), Element::Vector(x)) => {
                let Element::Vector(z) = gen else {
                    return Err(BackendError::MixedBackend(gen.to_string()));
                };
                crate::backend::in_span(z, x)
            }
            (SubgroupSpec::Cyclic(gen), Element::Index(_)) => {
                backend.check(gen)?;
                let mut acc = backend.identity();
                loop {
                    if acc == *g {
                        break true;
                    }
                    acc = backend.mul(&acc, gen)?;
                    if backend.is_identity(&acc) {
                        break false;
                    }
                }
            }
            (SubgroupSpec::FreeFactor(syms), Element::Word(w)) => w.letters().iter().all(|l| syms.contains(&l.symbol)),
            _ => return Err(BackendError::MixedBackend(g.to_string())),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SyllableForm {
    /// `u ∈ (X*Z)·Y·(X*Z)`; `y_syllable` is the index of the single non-`Z`
    /// `Y`-syllable, if any.
    InXzYXz {
        y_syllable: Option<usize>,
    },
    /// `u = x₁·u′·x₂` with `x₁, x₂ ∈ X*Z` and `u′` of finite order.
    X1UX2 {
        x1: Word,
        u_mid: Word,
        x2: Word,
    },
    Neither,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backend::FiniteTable;
    use crate::free_word::FreeWord;

    fn ctx() -> FreeProduct {
        FreeProduct::new(
            vec![
                (
                    "G1".into(),
                    Backend::Free {
                        basis: vec!["a".into(), "b".into()],
                    },
                ),
                ("G2".into(), Backend::FreeAbelian { rank: 2 }),
                ("Z4".into(), Backend::FiniteTable(FiniteTable::cyclic(4).unwrap())),
            ],
            vec!["t".into(), "x1".into(), "x2".into()],
        )
    }

    fn g1(s: &str) -> Syllable {
        Syllable::factor("G1", Element::Word(FreeWord::parse(s).unwrap()))
    }

    fn g2(x: i64, y: i64) -> Syllable {
        Syllable::factor("G2", Element::Vector(vec![x, y]))
    }

    #[test]
    fn reduce_examples() {
        let c = ctx();
        assert!(c.reduce(&[g1("a"), g1("a^-1")]).unwrap().is_empty());
        assert_eq!(c.reduce(&[g1("a"), g1("b")]).unwrap().syllables(), &[g1("a b")]);
        let w = c
            .reduce(&[Syllable::gen("t", -1), g1("a"), Syllable::gen("t", 1)])
            .unwrap();
        let cyc = c.cyclic_reduce(&w).unwrap();
        assert_eq!(cyc.cyclic.syllables(), &[g1("a")]);
        assert_eq!(cyc.conjugator.syllables(), &[Syllable::gen("t", -1)]);
        let back = c
            .mul(
                &c.mul(&cyc.conjugator, &cyc.cyclic).unwrap(),
                &c.inverse(&cyc.conjugator),
            )
            .unwrap();
        assert_eq!(back, w);
    }

    #[test]
    fn reduce_rejects_unknown_factor() {
        let c = ctx();
        let bad = Syllable::factor("G9", Element::Index(0));
        assert_eq!(c.reduce(&[bad]), Err(WordError::UnknownFactor("G9".into())));
    }

    #[test]
    fn cancellation_cascades_through_the_middle() {
        let c = ctx();
        let w = c
            .reduce(&[
                g1("a"),
                g2(1, 0),
                Syllable::gen("t", 2),
                Syllable::gen("t", -2),
                g2(-1, 0),
                g1("b"),
            ])
            .unwrap();
        assert_eq!(w.syllables(), &[g1("a b")]);
    }

    #[test]
    fn cyclic_reduce_merges_ends() {
        let c = ctx();
        let w = c.reduce(&[g1("a"), g2(1, 1), g1("b")]).unwrap();
        let cyc = c.cyclic_reduce(&w).unwrap();
        assert_eq!(cyc.cyclic.syllables(), &[g1("b a"), g2(1, 1)]);
        let back = c
            .mul(
                &c.mul(&cyc.conjugator, &cyc.cyclic).unwrap(),
                &c.inverse(&cyc.conjugator),
            )
            .unwrap();
        assert_eq!(back, w);
    }

    #[test]
    fn exponent_sum_examples() {
        let c = ctx();
        let w = c
            .reduce(&[
                g1("a"),
                Syllable::gen("t", 1),
                g2(1, 0),
                Syllable::gen("t", 1),
                g1("b"),
                Syllable::gen("t", -1),
            ])
            .unwrap();
        assert_eq!(w.exponent_sum("t"), 1);
        let w = c
            .reduce(&[
                g1("a"),
                Syllable::gen("x1", 1),
                g2(1, 0),
                Syllable::gen("x2", 1),
                Syllable::gen("x1", -1),
            ])
            .unwrap();
        assert_eq!(w.exponent_sum("x1"), 0);
        assert_eq!(Word::identity().exponent_sum("t"), 0);
    }

    #[test]
    fn erase_coefficients_examples() {
        let c = ctx();
        let w = c
            .reduce(&[g1("a"), Syllable::gen("x1", 1), g2(0, 1), Syllable::gen("x2", -1)])
            .unwrap();
        assert_eq!(
            w.erase_coefficients().syllables(),
            &[Syllable::gen("x1", 1), Syllable::gen("x2", -1)]
        );
        let only_gens = c.reduce(&[Syllable::gen("x1", 2), Syllable::gen("x2", 1)]).unwrap();
        assert_eq!(only_gens.erase_coefficients(), only_gens);
        assert!(c.reduce(&[g1("a")]).unwrap().erase_coefficients().is_empty());
        let w = c
            .reduce(&[Syllable::gen("x1", 1), g1("a"), Syllable::gen("x1", -1)])
            .unwrap();
        assert!(w.erase_coefficients().is_empty());
    }

    fn gens(spec: &[(&str, i64)]) -> Word {
        Word(spec.iter().map(|(g, e)| Syllable::gen(*g, *e)).collect())
    }

    #[test]
    fn proper_power_examples() {
        let w = gens(&[("x1", 1), ("x2", 1), ("x1", 1), ("x2", 1)]);
        assert_eq!(
            w.proper_power(),
            ProperPower::Power {
                root: gens(&[("x1", 1), ("x2", 1)]),
                k: 2
            }
        );
        assert_eq!(gens(&[("x1", 1)]).proper_power(), ProperPower::NotProperPower);
        assert_eq!(
            gens(&[("x1", 1), ("x2", 1), ("x1", -1), ("x2", -1)]).proper_power(),
            ProperPower::NotProperPower
        );
        assert_eq!(Word::identity().proper_power(), ProperPower::Identity);
        assert_eq!(
            gens(&[("x1", 6)]).proper_power(),
            ProperPower::Power {
                root: gens(&[("x1", 1)]),
                k: 6
            }
        );
    }

    #[test]
    fn proper_power_root_is_conjugated_back() {
        // x2 · (x1 x1) · x2⁻¹ = (x2 x1 x2⁻¹)²
        let w = gens(&[("x2", 1), ("x1", 2), ("x2", -1)]);
        assert_eq!(
            w.proper_power(),
            ProperPower::Power {
                root: gens(&[("x2", 1), ("x1", 1), ("x2", -1)]),
                k: 2
            }
        );
    }

    #[test]
    fn membership_examples() {
        let c = ctx();
        let s = SubproductSpec::new(["G1"], Vec::<String>::new());
        let w = c.reduce(&[g1("a"), g2(0, 1)]).unwrap();
        assert!(!c.membership_in_subproduct(&w, &s, false).unwrap());
        let w = c.reduce(&[g1("a")]).unwrap();
        assert!(c.membership_in_subproduct(&w, &s, false).unwrap());
        let w = c.reduce(&[g2(0, 1), g1("a"), g2(0, -1)]).unwrap();
        assert!(!c.membership_in_subproduct(&w, &s, false).unwrap());
        assert!(c.membership_in_subproduct(&w, &s, true).unwrap());
    }

    #[test]
    fn infinite_order_examples() {
        let c = ctx();
        let w = c.reduce(&[g1("a"), g2(0, 1)]).unwrap();
        assert!(c.has_infinite_order(&w).unwrap());
        assert!(c.has_infinite_order(&c.reduce(&[g2(1, 0)]).unwrap()).unwrap());
        let z4 = Syllable::factor("Z4", Element::Index(2));
        assert!(!c
            .has_infinite_order(&c.reduce(std::slice::from_ref(&z4)).unwrap())
            .unwrap());
        // a conjugate of a finite-order syllable is still of finite order
        let w = c.reduce(&[g1("a"), z4, g1("a^-1")]).unwrap();
        assert!(!c.has_infinite_order(&w).unwrap());
        assert!(!c.has_infinite_order(&Word::identity()).unwrap());
    }

    fn membership_ctx() -> FreeProduct {
        FreeProduct::new(
            vec![
                (
                    "X".into(),
                    Backend::Free {
                        basis: vec!["a".into(), "c".into()],
                    },
                ),
                ("Y".into(), Backend::FreeAbelian { rank: 2 }),
                ("F".into(), Backend::FiniteTable(FiniteTable::cyclic(4).unwrap())),
            ],
            vec![],
        )
    }

    fn xs(s: &str) -> Syllable {
        Syllable::factor("X", Element::Word(FreeWord::parse(s).unwrap()))
    }

    fn ys(x: i64, y: i64) -> Syllable {
        Syllable::factor("Y", Element::Vector(vec![x, y]))
    }

    #[test]
    fn syllable_forms_of_short_words() {
        let c = membership_ctx();
        let x = SubproductSpec::new(["X"], Vec::<String>::new());
        let z = SubgroupSpec::Cyclic(Element::Vector(vec![1, 0]));
        let u = c.reduce(&[ys(0, 1)]).unwrap();
        assert_eq!(
            c.syllable_membership_form(&u, &x, "Y", &z).unwrap(),
            SyllableForm::InXzYXz { y_syllable: Some(0) }
        );
        let u = c.reduce(&[xs("a c")]).unwrap();
        assert_eq!(
            c.syllable_membership_form(&u, &x, "Y", &z).unwrap(),
            SyllableForm::InXzYXz { y_syllable: None }
        );
        // y-syllables inside Z do not count
        let u = c.reduce(&[ys(3, 0), xs("a"), ys(0, 1), xs("c"), ys(-2, 0)]).unwrap();
        assert_eq!(
            c.syllable_membership_form(&u, &x, "Y", &z).unwrap(),
            SyllableForm::InXzYXz { y_syllable: Some(2) }
        );
        let u = c.reduce(&[xs("a"), ys(0, 1), xs("c"), ys(1, 1)]).unwrap();
        assert_eq!(
            c.syllable_membership_form(&u, &x, "Y", &z).unwrap(),
            SyllableForm::Neither
        );
    }

    #[test]
    fn finite_order_middle_is_found() {
        let c = membership_ctx();
        let x = SubproductSpec::new(["X"], Vec::<String>::new());
        let f = |i| Syllable::factor("F", Element::Index(i));
        // a · (y c y² c⁻¹ y⁻¹) · a, the middle being a conjugate of y²
        let u = c
            .reduce(&[xs("a"), f(1), xs("c"), f(2), xs("c^-1"), f(3), xs("a")])
            .unwrap();
        assert_eq!(
            c.syllable_membership_form(&u, &x, "F", &SubgroupSpec::Trivial).unwrap(),
            SyllableForm::X1UX2 {
                x1: c.reduce(&[xs("a")]).unwrap(),
                u_mid: c.reduce(&[f(1), xs("c"), f(2), xs("c^-1"), f(3)]).unwrap(),
                x2: c.reduce(&[xs("a")]).unwrap(),
            }
        );
        let u = c.reduce(&[xs("c"), f(1), xs("c^-1"), f(1)]).unwrap();
        assert_eq!(
            c.syllable_membership_form(&u, &x, "F", &SubgroupSpec::Trivial).unwrap(),
            SyllableForm::Neither
        );
    }

    #[test]
    fn undecidable_z_membership_is_reported() {
        let c = membership_ctx();
        let x = SubproductSpec::new(["Y"], Vec::<String>::new());
        let z = SubgroupSpec::Cyclic(Element::Word(FreeWord::parse("a").unwrap()));
        let u = c.reduce(&[xs("a")]).unwrap();
        assert_eq!(
            c.syllable_membership_form(&u, &x, "X", &z),
            Err(WordError::UndecidableZ("free"))
        );
    }
}
