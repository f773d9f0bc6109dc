//! Reduced words over a set of named symbols with formal inverses.
//!
//! This is the element representation shared by the `Free` and `Formal`
//! backends and by the corner labels of Howie diagrams.

use std::fmt;

use serde::{Deserialize, Serialize};

/// A symbol or its formal inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub symbol: String,
    pub inverse: bool,
}

impl Letter {
    pub fn new(symbol: impl Into<String>, inverse: bool) -> Self {
        Letter {
            symbol: symbol.into(),
            inverse,
        }
    }

    pub fn inv(&self) -> Letter {
        Letter {
            symbol: self.symbol.clone(),
            inverse: !self.inverse,
        }
    }

    pub fn cancels(&self, other: &Letter) -> bool {
        self.symbol == other.symbol && self.inverse != other.inverse
    }

    /// Parses `a`, `a^-1`, `a^phi` and `a^-phi`. The `^phi` suffix is part
    /// of the symbol name.
    pub fn parse(token: &str) -> Option<Letter> {
        let token = token.trim();
        if token.is_empty() {
            return None;
        }
        let (base, suffix) = match token.find('^') {
            Some(i) => (&token[..i], &token[i + 1..]),
            None => (token, ""),
        };
        if base.is_empty() || !base.chars().all(is_symbol_char) {
            return None;
        }
        match suffix {
            "" => Some(Letter::new(base, false)),
            "-1" => Some(Letter::new(base, true)),
            "phi" => Some(Letter::new(format!("{base}^phi"), false)),
            "-phi" | "phi-1" => Some(Letter::new(format!("{base}^phi"), true)),
            _ => None,
        }
    }
}

fn is_symbol_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\'' || c == '.'
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.symbol.strip_suffix("^phi"), self.inverse) {
            (Some(base), true) => write!(f, "{base}^-phi"),
            (Some(_), false) => write!(f, "{}", self.symbol),
            (None, true) => write!(f, "{}^-1", self.symbol),
            (None, false) => write!(f, "{}", self.symbol),
        }
    }
}

/// A freely reduced word. The empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord(Vec<Letter>);

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord(Vec::new())
    }

    pub fn letter(symbol: impl Into<String>) -> Self {
        FreeWord(vec![Letter::new(symbol, false)])
    }

    /// Builds the reduced word equal to the product of `letters`.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last().is_some_and(|top| top.cancels(&l)) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        FreeWord(out)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_identity()
    }

    pub fn is_reduced(letters: &[Letter]) -> bool {
        letters.windows(2).all(|w| !w[0].cancels(&w[1]))
    }

    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        FreeWord::from_letters(self.0.iter().chain(other.0.iter()).cloned())
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord(self.0.iter().rev().map(Letter::inv).collect())
    }

    pub fn pow(&self, k: i64) -> FreeWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = FreeWord::identity();
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// Applies a letter-wise map that respects inverses.
    pub fn map_symbols(&self, f: impl Fn(&str) -> String) -> FreeWord {
        FreeWord::from_letters(self.0.iter().map(|l| Letter::new(f(&l.symbol), l.inverse)))
    }

    /// Strips matching first/last letters. Returns `(core, conjugator)` with
    /// `self = conjugator * core * conjugator^-1`.
    pub fn cyclic_reduce(&self) -> (FreeWord, FreeWord) {
        let mut lo = 0;
        let mut hi = self.0.len();
        while hi - lo >= 2 && self.0[lo].cancels(&self.0[hi - 1]) {
            lo += 1;
            hi -= 1;
        }
        (FreeWord(self.0[lo..hi].to_vec()), FreeWord(self.0[..lo].to_vec()))
    }

    /// Lexicographically least rotation of the cyclic reduction: a canonical
    /// representative of the conjugacy class.
    pub fn conjugacy_canonical(&self) -> FreeWord {
        let (core, _) = self.cyclic_reduce();
        let n = core.0.len();
        (0..n.max(1))
            .map(|r| {
                let mut v = core.0[r.min(n)..].to_vec();
                v.extend_from_slice(&core.0[..r.min(n)]);
                v
            })
            .min()
            .map(FreeWord)
            .unwrap_or_default()
    }

    /// Parses a product written as tokens separated by `*`, `·` or spaces.
    /// `1` and the empty string denote the identity.
    pub fn parse(text: &str) -> Option<FreeWord> {
        let cleaned = text.replace(['*', '·'], " ");
        let mut letters = Vec::new();
        for token in cleaned.split_whitespace() {
            if token == "1" {
                continue;
            }
            letters.push(Letter::parse(token)?);
        }
        Some(FreeWord::from_letters(letters))
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl From<Vec<Letter>> for FreeWord {
    fn from(v: Vec<Letter>) -> Self {
        FreeWord::from_letters(v)
    }
}
