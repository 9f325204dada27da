//! Vertex identifiers, finite index windows and finitely supported integer vectors.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A vertex of a quiver or an element of a poset.
///
/// The derived ordering is only a storage order for maps; printing and windows
/// follow the display order of the owning presentation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexId {
    Int(i64),
    Name(String),
}

impl VertexId {
    pub fn as_int(&self) -> Option<i64> {
        match self {
            VertexId::Int(n) => Some(*n),
            VertexId::Name(_) => None,
        }
    }
}

impl From<i64> for VertexId {
    fn from(n: i64) -> Self {
        VertexId::Int(n)
    }
}

impl From<&str> for VertexId {
    fn from(s: &str) -> Self {
        s.parse().expect("vertex parsing is infallible")
    }
}

impl FromStr for VertexId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Invalid("empty vertex id".into()));
        }
        Ok(match s.parse::<i64>() {
            Ok(n) => VertexId::Int(n),
            Err(_) => VertexId::Name(s.to_string()),
        })
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexId::Int(n) => write!(f, "{n}"),
            VertexId::Name(s) => f.write_str(s),
        }
    }
}

/// An ordered, duplicate-free finite list of vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IndexWindow {
    vertices: Vec<VertexId>,
}

impl IndexWindow {
    /// Builds a window from vertices that are already in display order.
    pub(crate) fn from_ordered(vertices: Vec<VertexId>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::EmptyWindow);
        }
        Ok(IndexWindow { vertices })
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: &VertexId) -> bool {
        self.vertices.contains(v)
    }

    pub fn position(&self, v: &VertexId) -> Option<usize> {
        self.vertices.iter().position(|w| w == v)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, VertexId> {
        self.vertices.iter()
    }
}

impl<'a> IntoIterator for &'a IndexWindow {
    type Item = &'a VertexId;
    type IntoIter = std::slice::Iter<'a, VertexId>;

    fn into_iter(self) -> Self::IntoIter {
        self.vertices.iter()
    }
}

/// A finitely supported integer vector, e.g. the dimension vector of a
/// finite-dimensional comodule. Zero coordinates are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct SparseVector {
    entries: BTreeMap<VertexId, BigInt>,
}

impl SparseVector {
    pub fn zero() -> Self {
        SparseVector::default()
    }

    pub fn unit(v: VertexId) -> Self {
        let mut x = SparseVector::zero();
        x.set(v, BigInt::one());
        x
    }

    pub fn from_pairs<I, C>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (VertexId, C)>,
        C: Into<BigInt>,
    {
        let mut x = SparseVector::zero();
        for (v, c) in pairs {
            x.add_at(v, &c.into());
        }
        x
    }

    pub fn get(&self, v: &VertexId) -> BigInt {
        self.entries.get(v).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, v: VertexId, c: BigInt) {
        if c.is_zero() {
            self.entries.remove(&v);
        } else {
            self.entries.insert(v, c);
        }
    }

    pub fn add_at(&mut self, v: VertexId, c: &BigInt) {
        let next = self.get(&v) + c;
        self.set(v, next);
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = &VertexId> {
        self.entries.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&VertexId, &BigInt)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.values().all(|c| c.sign() != num_bigint::Sign::Minus)
    }

    pub fn scaled(&self, k: &BigInt) -> SparseVector {
        let mut out = SparseVector::zero();
        for (v, c) in &self.entries {
            out.set(v.clone(), c * k);
        }
        out
    }

    pub fn add(&self, other: &SparseVector) -> SparseVector {
        let mut out = self.clone();
        for (v, c) in &other.entries {
            out.add_at(v.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &SparseVector) -> SparseVector {
        let mut out = self.clone();
        for (v, c) in &other.entries {
            out.add_at(v.clone(), &-c);
        }
        out
    }

    pub fn neg(&self) -> SparseVector {
        self.scaled(&-BigInt::one())
    }

    /// Parses the `coeff@vertex,...` literal. Repeated vertices accumulate.
    pub fn parse_literal(text: &str) -> Result<SparseVector> {
        let mut out = SparseVector::zero();
        let text = text.trim();
        if text.is_empty() || text == "0" {
            return Ok(out);
        }
        for term in text.split(',') {
            let term = term.trim();
            let (coeff, vertex) = term
                .split_once('@')
                .ok_or_else(|| Error::Invalid(format!("vector term `{term}` lacks `@`")))?;
            let coeff: BigInt = coeff
                .trim()
                .parse()
                .map_err(|_| Error::Invalid(format!("bad coefficient in `{term}`")))?;
            out.add_at(vertex.parse()?, &coeff);
        }
        Ok(out)
    }

    /// Formats as `coeff@vertex,...` in the supplied vertex order; vertices
    /// missing from `order` follow in storage order.
    pub fn to_literal(&self, order: &[VertexId]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut seen = Vec::new();
        let mut parts = Vec::new();
        for v in order {
            if let Some(c) = self.entries.get(v) {
                parts.push(format!("{c}@{v}"));
                seen.push(v);
            }
        }
        for (v, c) in &self.entries {
            if !seen.contains(&v) {
                parts.push(format!("{c}@{v}"));
            }
        }
        parts.join(",")
    }
}

impl FromIterator<(VertexId, BigInt)> for SparseVector {
    fn from_iter<T: IntoIterator<Item = (VertexId, BigInt)>>(iter: T) -> Self {
        SparseVector::from_pairs(iter)
    }
}

/// Dimension vectors are finitely supported integer vectors.
pub type DimensionVector = SparseVector;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_vertex_ids() {
        assert_eq!("-3".parse::<VertexId>().unwrap(), VertexId::Int(-3));
        assert_eq!("a".parse::<VertexId>().unwrap(), VertexId::Name("a".into()));
        assert!("".parse::<VertexId>().is_err());
    }

    #[test]
    fn literal_is_order_insensitive_and_accumulates() {
        let x = SparseVector::parse_literal("2@3, 1@0,1@3,-3@3").unwrap();
        assert_eq!(x, SparseVector::from_pairs([(VertexId::Int(0), 1)]));
        let y = SparseVector::parse_literal("1@0,2@3").unwrap();
        let order: Vec<VertexId> = (0..5).map(VertexId::Int).collect();
        assert_eq!(y.to_literal(&order), "1@0,2@3");
        assert_eq!(SparseVector::zero().to_literal(&order), "0");
    }

    #[test]
    fn bad_literals() {
        assert!(SparseVector::parse_literal("1").is_err());
        assert!(SparseVector::parse_literal("x@1").is_err());
    }
}
