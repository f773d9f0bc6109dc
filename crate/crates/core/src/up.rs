//! Unique products in `XY` for finite subsets of a backend group.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::backend::{Backend, BackendError, Element};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UpError {
    #[error(transparent)]
    Backend(#[from] BackendError),
    #[error("element {0} occurs twice")]
    Duplicate(String),
    #[error("subsets must be nonempty")]
    Empty,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSubset {
    backend: Backend,
    elements: Vec<Element>,
}

impl FiniteSubset {
    pub fn new(backend: Backend, elements: Vec<Element>) -> Result<Self, UpError> {
        if elements.is_empty() {
            return Err(UpError::Empty);
        }
        let mut seen = std::collections::BTreeSet::new();
        for e in &elements {
            backend.check(e)?;
            if !seen.insert(e) {
                return Err(UpError::Duplicate(e.to_string()));
            }
        }
        Ok(FiniteSubset { backend, elements })
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn backend(&self) -> &Backend {
        &self.backend
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `{s⁻¹ : s ∈ S}`, in the same order.
    pub fn inverse(&self) -> Result<FiniteSubset, UpError> {
        let elements = self
            .elements
            .iter()
            .map(|e| self.backend.inv(e))
            .collect::<Result<_, _>>()?;
        Ok(FiniteSubset {
            backend: self.backend.clone(),
            elements,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniqueProduct {
    pub product: Element,
    pub x: Element,
    pub y: Element,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductTable {
    /// Every product with all of its decompositions `(x, y)`.
    pub decompositions: BTreeMap<Element, Vec<(Element, Element)>>,
    /// Products with exactly one decomposition, in element order.
    pub unique: Vec<UniqueProduct>,
}

impl ProductTable {
    pub fn count(&self, g: &Element) -> usize {
        self.decompositions.get(g).map_or(0, Vec::len)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StrongUp {
    /// `|Y| < 2`: the property says nothing.
    NotApplicable,
    Applicable {
        holds: bool,
        /// Two unique products with distinct `y`, when they exist.
        witnesses: Option<(UniqueProduct, UniqueProduct)>,
        /// Whether the witnesses also have distinct `x`.
        distinct_x: Option<bool>,
    },
}

impl StrongUp {
    pub fn holds(&self) -> Option<bool> {
        match self {
            StrongUp::NotApplicable => None,
            StrongUp::Applicable { holds, .. } => Some(*holds),
        }
    }
}

pub fn unique_products(x: &FiniteSubset, y: &FiniteSubset) -> Result<ProductTable, UpError> {
    if x.backend != y.backend {
        return Err(BackendError::MixedBackend(format!(
            "X is over {} but Y is over {}",
            x.backend.kind_name(),
            y.backend.kind_name()
        ))
        .into());
    }
    let mut decompositions: BTreeMap<Element, Vec<(Element, Element)>> = BTreeMap::new();
    for a in &x.elements {
        for b in &y.elements {
            let g = x.backend.mul(a, b)?;
            decompositions.entry(g).or_default().push((a.clone(), b.clone()));
        }
    }
    let unique = decompositions
        .iter()
        .filter(|(_, d)| d.len() == 1)
        .map(|(g, d)| UniqueProduct {
            product: g.clone(),
            x: d[0].0.clone(),
            y: d[0].1.clone(),
        })
        .collect();
    Ok(ProductTable { decompositions, unique })
}

/// At least two uniquely decomposable products `x₁y₁`, `x₂y₂` with `y₁ ≠ y₂`.
pub fn has_strong_up(x: &FiniteSubset, y: &FiniteSubset) -> Result<StrongUp, UpError> {
    let table = unique_products(x, y)?;
    if y.len() < 2 {
        return Ok(StrongUp::NotApplicable);
    }
    let witnesses = table.unique.first().and_then(|first| {
        table
            .unique
            .iter()
            .rev()
            .find(|u| u.y != first.y)
            .map(|second| (first.clone(), second.clone()))
    });
    let distinct_x = witnesses.as_ref().map(|(a, b)| a.x != b.x);
    Ok(StrongUp::Applicable {
        holds: witnesses.is_some(),
        witnesses,
        distinct_x,
    })
}
