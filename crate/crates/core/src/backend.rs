//! Concrete groups with a decidable word problem.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_integer::Integer;
use serde_json::{json, Value};
use thiserror::Error;

use crate::free_word::{FreeWord, Letter};

/// Largest multiplication table accepted by [`FiniteTable::new`].
pub const MAX_TABLE_SIZE: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BackendError {
    #[error("element does not belong to this backend: {0}")]
    MixedBackend(String),
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
    #[error("coset decomposition needs a nonzero direction")]
    ZeroDirection,
    #[error("invalid backend description: {0}")]
    InvalidSpec(String),
}

/// A value of some backend. Which variant is legal depends on the backend.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Vector(Vec<i64>),
    Word(FreeWord),
    Index(usize),
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Vector(v) => {
                write!(f, "(")?;
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
            Element::Word(w) => write!(f, "{w}"),
            Element::Index(i) => write!(f, "#{i}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Order {
    Finite(u64),
    Infinite,
}

impl Order {
    pub fn is_infinite(self) -> bool {
        matches!(self, Order::Infinite)
    }
}

/// A group given by its full Cayley table. Validated on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteTable {
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    identity: usize,
}

impl FiniteTable {
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self, BackendError> {
        let n = table.len();
        if n == 0 {
            return Err(BackendError::InvalidTable("empty table".into()));
        }
        if n > MAX_TABLE_SIZE {
            return Err(BackendError::InvalidTable(format!(
                "size {n} exceeds the cap of {MAX_TABLE_SIZE}"
            )));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(BackendError::InvalidTable(format!(
                    "row {i} has length {} instead of {n}",
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(BackendError::InvalidTable(format!(
                    "row {i} contains out-of-range entry {bad}"
                )));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| BackendError::InvalidTable("no two-sided identity".into()))?;
        let mut inverse = vec![0; n];
        for (x, inv) in inverse.iter_mut().enumerate() {
            *inv = (0..n)
                .find(|&y| table[x][y] == identity && table[y][x] == identity)
                .ok_or_else(|| BackendError::InvalidTable(format!("element {x} has no inverse")))?;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(BackendError::InvalidTable(format!("not associative at ({a},{b},{c})")));
                    }
                }
            }
        }
        Ok(FiniteTable {
            table,
            inverse,
            identity,
        })
    }

    /// The cyclic group Z_n with elements 0..n.
    pub fn cyclic(n: usize) -> Result<Self, BackendError> {
        FiniteTable::new((0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect())
    }

    pub fn size(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.table
    }
}

/// How the formal automorphism acts on symbols of a `Formal` backend.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PhiRule {
    Map(BTreeMap<String, String>),
    /// `s` maps to `s` followed by the suffix.
    Suffix(String),
}

/// A free group on formal symbols, possibly carrying a formal automorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalAlphabet {
    /// `None` accepts any symbol.
    pub symbols: Option<BTreeSet<String>>,
    pub phi: Option<PhiRule>,
}

impl FormalAlphabet {
    pub fn closed<I: IntoIterator<Item = String>>(symbols: I) -> Self {
        FormalAlphabet {
            symbols: Some(symbols.into_iter().collect()),
            phi: None,
        }
    }

    pub fn open_with_phi_suffix() -> Self {
        FormalAlphabet {
            symbols: None,
            phi: Some(PhiRule::Suffix("^phi".into())),
        }
    }

    fn accepts(&self, symbol: &str) -> bool {
        match &self.symbols {
            Some(set) => set.contains(symbol),
            None => true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Backend {
    FreeAbelian { rank: usize },
    Free { basis: Vec<String> },
    FiniteTable(FiniteTable),
    Formal(FormalAlphabet),
}

impl Backend {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Backend::FreeAbelian { .. } => "free_abelian",
            Backend::Free { .. } => "free",
            Backend::FiniteTable(_) => "finite_table",
            Backend::Formal(_) => "formal",
        }
    }

    pub fn identity(&self) -> Element {
        match self {
            Backend::FreeAbelian { rank } => Element::Vector(vec![0; *rank]),
            Backend::Free { .. } | Backend::Formal(_) => Element::Word(FreeWord::identity()),
            Backend::FiniteTable(t) => Element::Index(t.identity()),
        }
    }

    pub fn is_identity(&self, g: &Element) -> bool {
        *g == self.identity()
    }

    /// Checks that `g` is a canonical element of this backend.
    pub fn check(&self, g: &Element) -> Result<(), BackendError> {
        let ok = match (self, g) {
            (Backend::FreeAbelian { rank }, Element::Vector(v)) => v.len() == *rank,
            (Backend::Free { basis }, Element::Word(w)) => w.letters().iter().all(|l| basis.contains(&l.symbol)),
            (Backend::Formal(a), Element::Word(w)) => w.letters().iter().all(|l| a.accepts(&l.symbol)),
            (Backend::FiniteTable(t), Element::Index(i)) => *i < t.size(),
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(BackendError::MixedBackend(format!(
                "{g} is not an element of this {} backend",
                self.kind_name()
            )))
        }
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Result<Element, BackendError> {
        self.check(a)?;
        self.check(b)?;
        Ok(match (self, a, b) {
            (Backend::FreeAbelian { .. }, Element::Vector(x), Element::Vector(y)) => {
                Element::Vector(x.iter().zip(y).map(|(p, q)| p + q).collect())
            }
            (Backend::FiniteTable(t), Element::Index(x), Element::Index(y)) => Element::Index(t.mul(*x, *y)),
            (_, Element::Word(x), Element::Word(y)) => Element::Word(x.mul(y)),
            _ => unreachable!("checked above"),
        })
    }

    pub fn inv(&self, a: &Element) -> Result<Element, BackendError> {
        self.check(a)?;
        Ok(match (self, a) {
            (Backend::FreeAbelian { .. }, Element::Vector(x)) => Element::Vector(x.iter().map(|p| -p).collect()),
            (Backend::FiniteTable(t), Element::Index(x)) => Element::Index(t.inv(*x)),
            (_, Element::Word(w)) => Element::Word(w.inverse()),
            _ => unreachable!("checked above"),
        })
    }

    pub fn pow(&self, a: &Element, k: i64) -> Result<Element, BackendError> {
        let base = if k < 0 { self.inv(a)? } else { a.clone() };
        let mut acc = self.identity();
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(&acc, &base)?;
        }
        Ok(acc)
    }

    /// Evaluates a product of elements, each optionally inverted.
    pub fn evaluate(&self, factors: &[(Element, bool)]) -> Result<Element, BackendError> {
        let mut acc = self.identity();
        for (g, inverted) in factors {
            let g = if *inverted { self.inv(g)? } else { g.clone() };
            acc = self.mul(&acc, &g)?;
        }
        Ok(acc)
    }

    pub fn order(&self, g: &Element) -> Result<Order, BackendError> {
        self.check(g)?;
        if self.is_identity(g) {
            return Ok(Order::Finite(1));
        }
        match (self, g) {
            (Backend::FiniteTable(t), Element::Index(x)) => {
                let mut k = 1u64;
                let mut acc = *x;
                while acc != t.identity() {
                    acc = t.mul(acc, *x);
                    k += 1;
                }
                Ok(Order::Finite(k))
            }
            _ => Ok(Order::Infinite),
        }
    }

    /// Applies the formal automorphism of a `Formal` backend. Backends without
    /// one act as the identity map.
    pub fn phi(&self, g: &Element) -> Result<Element, BackendError> {
        self.check(g)?;
        match (self, g) {
            (Backend::Formal(a), Element::Word(w)) => Ok(Element::Word(match &a.phi {
                None => w.clone(),
                Some(PhiRule::Suffix(s)) => w.map_symbols(|sym| format!("{sym}{s}")),
                Some(PhiRule::Map(m)) => w.map_symbols(|sym| m.get(sym).cloned().unwrap_or_else(|| sym.to_string())),
            })),
            _ => Ok(g.clone()),
        }
    }

    /// Reads an element from its JSON form: an integer array for
    /// `free_abelian`, an array of letters such as `"a^-1"` for `free` and
    /// `formal`, an index for `finite_table`.
    pub fn parse_element(&self, value: &Value) -> Result<Element, BackendError> {
        let bad = || BackendError::MixedBackend(format!("{value} is not a {} element", self.kind_name()));
        let elem = match self {
            Backend::FreeAbelian { .. } => {
                let arr = value.as_array().ok_or_else(bad)?;
                let v = arr
                    .iter()
                    .map(|x| x.as_i64().ok_or_else(bad))
                    .collect::<Result<Vec<_>, _>>()?;
                Element::Vector(v)
            }
            Backend::Free { .. } | Backend::Formal(_) => {
                let word = match value {
                    Value::String(s) => FreeWord::parse(s).ok_or_else(bad)?,
                    Value::Array(arr) => {
                        let mut letters = Vec::new();
                        for x in arr {
                            let s = x.as_str().ok_or_else(bad)?;
                            letters.push(Letter::parse(s).ok_or_else(bad)?);
                        }
                        FreeWord::from_letters(letters)
                    }
                    _ => return Err(bad()),
                };
                Element::Word(word)
            }
            Backend::FiniteTable(_) => Element::Index(value.as_u64().ok_or_else(bad)? as usize),
        };
        self.check(&elem)?;
        Ok(elem)
    }

    pub fn element_to_json(&self, g: &Element) -> Value {
        match g {
            Element::Vector(v) => json!(v),
            Element::Word(w) => json!(w.letters().iter().map(|l| l.to_string()).collect::<Vec<_>>()),
            Element::Index(i) => json!(i),
        }
    }

    /// Builds a backend from `{"kind": ...}` JSON.
    pub fn from_json(value: &Value) -> Result<Backend, BackendError> {
        let spec = |m: &str| BackendError::InvalidSpec(m.to_string());
        let kind = value
            .get("kind")
            .and_then(Value::as_str)
            .ok_or_else(|| spec("missing \"kind\""))?;
        let strings = |key: &str| -> Result<Vec<String>, BackendError> {
            value
                .get(key)
                .and_then(Value::as_array)
                .ok_or_else(|| spec(&format!("missing array \"{key}\"")))?
                .iter()
                .map(|s| {
                    s.as_str()
                        .map(str::to_string)
                        .ok_or_else(|| spec(&format!("\"{key}\" must hold strings")))
                })
                .collect()
        };
        match kind {
            "free_abelian" => {
                let rank = value
                    .get("rank")
                    .and_then(Value::as_u64)
                    .filter(|&r| r > 0)
                    .ok_or_else(|| spec("\"rank\" must be a positive integer"))?;
                Ok(Backend::FreeAbelian { rank: rank as usize })
            }
            "free" => Ok(Backend::Free {
                basis: strings("basis")?,
            }),
            "formal" => {
                let symbols = if value.get("alphabet").is_some() {
                    Some(strings("alphabet")?.into_iter().collect())
                } else {
                    None
                };
                let phi = match value.get("phi") {
                    None | Some(Value::Null) => None,
                    Some(Value::String(s)) => Some(PhiRule::Suffix(s.clone())),
                    Some(Value::Object(m)) => Some(PhiRule::Map(
                        m.iter()
                            .map(|(k, v)| {
                                v.as_str()
                                    .map(|s| (k.clone(), s.to_string()))
                                    .ok_or_else(|| spec("\"phi\" values must be strings"))
                            })
                            .collect::<Result<_, _>>()?,
                    )),
                    Some(_) => return Err(spec("\"phi\" must be a suffix string or a map")),
                };
                Ok(Backend::Formal(FormalAlphabet { symbols, phi }))
            }
            "finite_table" => {
                let rows = value
                    .get("table")
                    .and_then(Value::as_array)
                    .ok_or_else(|| spec("missing \"table\""))?;
                let table = rows
                    .iter()
                    .map(|r| {
                        r.as_array()
                            .ok_or_else(|| spec("table rows must be arrays"))?
                            .iter()
                            .map(|x| {
                                x.as_u64()
                                    .map(|x| x as usize)
                                    .ok_or_else(|| spec("table entries must be indices"))
                            })
                            .collect::<Result<Vec<_>, _>>()
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Backend::FiniteTable(FiniteTable::new(table)?))
            }
            other => Err(spec(&format!("unknown kind \"{other}\""))),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Backend::FreeAbelian { rank } => json!({"kind": "free_abelian", "rank": rank}),
            Backend::Free { basis } => json!({"kind": "free", "basis": basis}),
            Backend::FiniteTable(t) => json!({"kind": "finite_table", "table": t.rows()}),
            Backend::Formal(a) => {
                let mut obj = serde_json::Map::new();
                obj.insert("kind".into(), json!("formal"));
                if let Some(s) = &a.symbols {
                    obj.insert("alphabet".into(), json!(s));
                }
                match &a.phi {
                    Some(PhiRule::Suffix(s)) => {
                        obj.insert("phi".into(), json!(s));
                    }
                    Some(PhiRule::Map(m)) => {
                        obj.insert("phi".into(), json!(m));
                    }
                    None => {}
                }
                Value::Object(obj)
            }
        }
    }
}

/// `x = rep + l·t` with `rep` the canonical representative of `x + ⟨t⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetDecomposition {
    pub rep: Vec<i64>,
    pub l: i64,
}

/// Unimodular `u` with `u·t = d·e₀`, `d = gcd(t) > 0`, computed by a fixed
/// sequence of Euclidean row operations.
fn basis_adapted_to(t: &[i64]) -> Option<(Vec<Vec<i64>>, i64)> {
    let n = t.len();
    let mut v = t.to_vec();
    let mut u: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    loop {
        let pivot = (0..n)
            .filter(|&i| v[i] != 0)
            .min_by_key(|&i| (v[i].unsigned_abs(), i))?;
        let mut done = true;
        for j in 0..n {
            if j != pivot && v[j] != 0 {
                let q = Integer::div_floor(&v[j], &v[pivot]);
                v[j] -= q * v[pivot];
                let row = u[pivot].clone();
                for (a, b) in u[j].iter_mut().zip(&row) {
                    *a -= q * b;
                }
                if v[j] != 0 {
                    done = false;
                }
            }
        }
        if done {
            v.swap(0, pivot);
            u.swap(0, pivot);
            if v[0] < 0 {
                v[0] = -v[0];
                for c in u[0].iter_mut() {
                    *c = -*c;
                }
            }
            return Some((u, v[0]));
        }
    }
}

/// Decomposes `x ∈ Zⁿ` against the cyclic subgroup `⟨t⟩`.
///
/// Representatives are fixed by completing `t/d` to a basis (Hermite form of
/// the column `t`); the representative of a coset is the element whose first
/// coordinate in that basis lies in `[0, d)`.
pub fn coset_decompose(t: &[i64], x: &[i64]) -> Result<CosetDecomposition, BackendError> {
    if t.len() != x.len() {
        return Err(BackendError::MixedBackend(format!(
            "rank mismatch: direction has rank {}, element has rank {}",
            t.len(),
            x.len()
        )));
    }
    let (u, d) = basis_adapted_to(t).ok_or(BackendError::ZeroDirection)?;
    let y0: i64 = u[0].iter().zip(x).map(|(a, b)| a * b).sum();
    let l = Integer::div_floor(&y0, &d);
    let rep = x.iter().zip(t).map(|(xi, ti)| xi - l * ti).collect();
    Ok(CosetDecomposition { rep, l })
}

/// Right action of `x ∈ T` on cosets of `⟨t⟩`: `c_y·x = c_{yx}·t^l`.
/// Returns the representative of the image coset together with `l`.
pub fn coset_action(t: &[i64], rep: &[i64], x: &[i64]) -> Result<CosetDecomposition, BackendError> {
    let sum: Vec<i64> = rep.iter().zip(x).map(|(a, b)| a + b).collect();
    coset_decompose(t, &sum)
}

/// `x ∈ ⟨z⟩` in Zⁿ.
pub fn in_span(z: &[i64], x: &[i64]) -> bool {
    if z.len() != x.len() {
        return false;
    }
    let Some(p) = z.iter().position(|&c| c != 0) else {
        return x.iter().all(|&c| c == 0);
    };
    if x[p] % z[p] != 0 {
        return false;
    }
    let k = x[p] / z[p];
    z.iter().zip(x).all(|(a, b)| a * k == *b)
}

/// gcd of the coordinates (0 for the zero vector).
pub fn content(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |acc, &x| acc.gcd(&x))
}
