//! Integer matrices and vectors over a possibly infinite index set.
//!
//! Entries are produced on demand by a rule. Each row and column carries a
//! support certificate; a product entry is only evaluated when one of the two
//! factors certifies that the defining sum is finite.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::vertex::{IndexWindow, SparseVector, VertexId};

/// What is known about the nonzero positions of a row, column or vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Support {
    /// Entries vanish outside this set.
    Finite(Vec<VertexId>),
    /// Certified to have infinitely many nonzero entries.
    Infinite,
    Unknown,
}

impl Support {
    pub fn is_finite(&self) -> bool {
        matches!(self, Support::Finite(_))
    }

    pub fn finite(&self) -> Option<&[VertexId]> {
        match self {
            Support::Finite(v) => Some(v),
            _ => None,
        }
    }
}

pub type EntryRule = Arc<dyn Fn(&VertexId, &VertexId) -> Result<BigInt> + Send + Sync>;
pub type SupportRule = Arc<dyn Fn(&VertexId) -> Result<Support> + Send + Sync>;

struct Inner {
    name: String,
    entry: EntryRule,
    row_support: SupportRule,
    col_support: SupportRule,
    memo: Mutex<HashMap<(VertexId, VertexId), BigInt>>,
}

/// A lazily evaluated integer matrix. Cloning is cheap and shares the memo.
#[derive(Clone)]
pub struct LazyIntMatrix {
    inner: Arc<Inner>,
}

impl fmt::Debug for LazyIntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LazyIntMatrix({})", self.inner.name)
    }
}

impl LazyIntMatrix {
    pub fn new(
        name: impl Into<String>,
        entry: EntryRule,
        row_support: SupportRule,
        col_support: SupportRule,
    ) -> LazyIntMatrix {
        LazyIntMatrix {
            inner: Arc::new(Inner {
                name: name.into(),
                entry,
                row_support,
                col_support,
                memo: Mutex::new(HashMap::new()),
            }),
        }
    }

    pub fn identity() -> LazyIntMatrix {
        LazyIntMatrix::new(
            "E",
            Arc::new(|i, j| Ok(if i == j { BigInt::one() } else { BigInt::zero() })),
            Arc::new(|i| Ok(Support::Finite(vec![i.clone()]))),
            Arc::new(|j| Ok(Support::Finite(vec![j.clone()]))),
        )
    }

    pub fn name(&self) -> &str {
        &self.inner.name
    }

    pub fn entry(&self, i: &VertexId, j: &VertexId) -> Result<BigInt> {
        let key = (i.clone(), j.clone());
        if let Some(v) = self.inner.memo.lock().unwrap().get(&key) {
            return Ok(v.clone());
        }
        // The lock is released while computing; a concurrent duplicate
        // evaluation produces the same value.
        let v = (self.inner.entry)(i, j)?;
        self.inner.memo.lock().unwrap().insert(key, v.clone());
        Ok(v)
    }

    /// Columns that may be nonzero in row `i`.
    pub fn row_support(&self, i: &VertexId) -> Result<Support> {
        (self.inner.row_support)(i)
    }

    /// Rows that may be nonzero in column `j`.
    pub fn col_support(&self, j: &VertexId) -> Result<Support> {
        (self.inner.col_support)(j)
    }

    pub fn transpose(&self) -> LazyIntMatrix {
        let m = self.clone();
        let r = self.clone();
        let c = self.clone();
        LazyIntMatrix::new(
            format!("{}^tr", self.name()),
            Arc::new(move |i, j| m.entry(j, i)),
            Arc::new(move |i| r.col_support(i)),
            Arc::new(move |j| c.row_support(j)),
        )
    }

    pub fn negate(&self) -> LazyIntMatrix {
        let m = self.clone();
        let r = self.clone();
        let c = self.clone();
        LazyIntMatrix::new(
            format!("-{}", self.name()),
            Arc::new(move |i, j| Ok(-m.entry(i, j)?)),
            Arc::new(move |i| r.row_support(i)),
            Arc::new(move |j| c.col_support(j)),
        )
    }

    /// Evaluates a dense block. Entries are exact; memoization does not
    /// change results.
    pub fn evaluate_window(&self, rows: &IndexWindow, cols: &IndexWindow) -> Result<MatrixWindow> {
        let mut data = Vec::with_capacity(rows.len());
        for i in rows {
            let mut row = Vec::with_capacity(cols.len());
            for j in cols {
                row.push(self.entry(i, j)?);
            }
            data.push(row);
        }
        Ok(MatrixWindow {
            rows: rows.clone(),
            cols: cols.clone(),
            data,
        })
    }
}

/// The product `a * b`. Each entry is a finite sum over the certified row
/// support of `a` or, failing that, the certified column support of `b`.
pub fn multiply(a: &LazyIntMatrix, b: &LazyIntMatrix) -> LazyIntMatrix {
    let (ea, eb) = (a.clone(), b.clone());
    let (ra, rb) = (a.clone(), b.clone());
    let (ca, cb) = (a.clone(), b.clone());
    LazyIntMatrix::new(
        format!("({})*({})", a.name(), b.name()),
        Arc::new(move |i, j| {
            let terms = match ea.row_support(i)? {
                Support::Finite(ks) => ks,
                _ => match eb.col_support(j)? {
                    Support::Finite(ks) => ks,
                    _ => {
                        return Err(Error::UndefinedProduct {
                            row: i.clone(),
                            col: j.clone(),
                        })
                    }
                },
            };
            let mut sum = BigInt::zero();
            for k in &terms {
                let x = ea.entry(i, k)?;
                if !x.is_zero() {
                    sum += x * eb.entry(k, j)?;
                }
            }
            Ok(sum)
        }),
        Arc::new(move |i| compose_support(ra.row_support(i)?, |k| rb.row_support(k))),
        Arc::new(move |j| compose_support(cb.col_support(j)?, |k| ca.col_support(k))),
    )
}

fn compose_support(first: Support, next: impl Fn(&VertexId) -> Result<Support>) -> Result<Support> {
    let Support::Finite(ks) = first else {
        return Ok(Support::Unknown);
    };
    let mut all = BTreeSet::new();
    for k in &ks {
        match next(k)? {
            Support::Finite(vs) => all.extend(vs),
            _ => return Ok(Support::Unknown),
        }
    }
    Ok(Support::Finite(all.into_iter().collect()))
}

/// Which one-sided identity a check is about; only used for reporting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub holds: bool,
    /// First window entry `(i, j, value)` of `a * b` that differs from the identity.
    pub counterexample: Option<(VertexId, VertexId, BigInt)>,
}

/// Checks that `a * b` restricted to `w x w` is the identity. Entries of the
/// product are full sums over the index set, not truncated sums.
pub fn verify_identity_on_window(
    a: &LazyIntMatrix,
    b: &LazyIntMatrix,
    w: &IndexWindow,
    _side: Side,
) -> Result<IdentityCheck> {
    let p = multiply(a, b);
    for i in w {
        for j in w {
            let v = p.entry(i, j)?;
            let expect = if i == j { BigInt::one() } else { BigInt::zero() };
            if v != expect {
                return Ok(IdentityCheck {
                    holds: false,
                    counterexample: Some((i.clone(), j.clone(), v)),
                });
            }
        }
    }
    Ok(IdentityCheck {
        holds: true,
        counterexample: None,
    })
}

/// A dense block of a lazy matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixWindow {
    pub rows: IndexWindow,
    pub cols: IndexWindow,
    pub data: Vec<Vec<BigInt>>,
}

impl MatrixWindow {
    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r][c]
    }

    pub fn to_i64(&self) -> Vec<Vec<i64>> {
        self.data
            .iter()
            .map(|row| row.iter().map(|x| i64::try_from(x).expect("entry fits i64")).collect())
            .collect()
    }

    /// Tab-separated values with a header row and a leading column of vertex ids.
    pub fn to_tsv(&self) -> String {
        let mut s = String::new();
        for c in &self.cols {
            s.push('\t');
            s.push_str(&c.to_string());
        }
        s.push('\n');
        for (r, row) in self.rows.iter().zip(&self.data) {
            s.push_str(&r.to_string());
            for x in row {
                s.push('\t');
                s.push_str(&x.to_string());
            }
            s.push('\n');
        }
        s
    }
}

type VectorRule = Arc<dyn Fn(&VertexId) -> Result<BigInt> + Send + Sync>;

/// A lazily evaluated integer vector indexed by vertices.
#[derive(Clone)]
pub struct LazyVector {
    entry: VectorRule,
    support: Support,
}

impl fmt::Debug for LazyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LazyVector({:?})", self.support)
    }
}

impl LazyVector {
    pub fn new(entry: VectorRule, support: Support) -> LazyVector {
        LazyVector { entry, support }
    }

    pub fn from_sparse(x: &SparseVector) -> LazyVector {
        let y = x.clone();
        LazyVector {
            entry: Arc::new(move |v| Ok(y.get(v))),
            support: Support::Finite(x.support().cloned().collect()),
        }
    }

    pub fn get(&self, v: &VertexId) -> Result<BigInt> {
        if let Support::Finite(s) = &self.support {
            if !s.contains(v) {
                return Ok(BigInt::zero());
            }
        }
        (self.entry)(v)
    }

    pub fn support(&self) -> &Support {
        &self.support
    }

    /// The vector as a sparse vector, when its support is certified finite.
    pub fn to_sparse(&self) -> Result<Option<SparseVector>> {
        let Support::Finite(s) = &self.support else {
            return Ok(None);
        };
        let mut out = SparseVector::zero();
        for v in s {
            out.set(v.clone(), (self.entry)(v)?);
        }
        Ok(Some(out))
    }

    pub fn evaluate(&self, w: &IndexWindow) -> Result<Vec<BigInt>> {
        w.iter().map(|v| self.get(v)).collect()
    }

    /// The restriction to a window, as a sparse vector.
    pub fn restrict(&self, w: &IndexWindow) -> Result<SparseVector> {
        let mut out = SparseVector::zero();
        for v in w {
            out.set(v.clone(), self.get(v)?);
        }
        Ok(out)
    }

    pub fn neg(&self) -> LazyVector {
        let x = self.clone();
        LazyVector {
            entry: Arc::new(move |v| Ok(-x.get(v)?)),
            support: self.support.clone(),
        }
    }

    pub fn scaled(&self, k: BigInt) -> LazyVector {
        let x = self.clone();
        let support = if k.is_zero() {
            Support::Finite(vec![])
        } else {
            self.support.clone()
        };
        LazyVector {
            entry: Arc::new(move |v| Ok(&k * x.get(v)?)),
            support,
        }
    }

    pub fn add(&self, other: &LazyVector) -> LazyVector {
        let (x, y) = (self.clone(), other.clone());
        let support = match (&self.support, &other.support) {
            (Support::Finite(a), Support::Finite(b)) => {
                let all: BTreeSet<VertexId> = a.iter().chain(b).cloned().collect();
                Support::Finite(all.into_iter().collect())
            }
            _ => Support::Unknown,
        };
        LazyVector {
            entry: Arc::new(move |v| Ok(x.get(v)? + y.get(v)?)),
            support,
        }
    }
}

/// The row vector `x * m`: coordinate `j` is `sum_i x_i m_ij`.
pub fn apply_vector(x: &LazyVector, m: &LazyIntMatrix) -> Result<LazyVector> {
    if let Support::Finite(s) = x.support() {
        let terms: Vec<(VertexId, BigInt)> = s
            .iter()
            .map(|v| Ok((v.clone(), x.get(v)?)))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let mut cols = BTreeSet::new();
        let mut finite = true;
        for (i, _) in &terms {
            match m.row_support(i)? {
                Support::Finite(vs) => cols.extend(vs),
                _ => finite = false,
            }
        }
        let support = if finite {
            Support::Finite(cols.into_iter().collect())
        } else {
            Support::Unknown
        };
        let m = m.clone();
        return Ok(LazyVector {
            entry: Arc::new(move |j| {
                let mut sum = BigInt::zero();
                for (i, c) in &terms {
                    sum += c * m.entry(i, j)?;
                }
                Ok(sum)
            }),
            support,
        });
    }
    let (x, m) = (x.clone(), m.clone());
    Ok(LazyVector {
        entry: Arc::new(move |j| match m.col_support(j)? {
            Support::Finite(is) => {
                let mut sum = BigInt::zero();
                for i in &is {
                    let c = x.get(i)?;
                    if !c.is_zero() {
                        sum += c * m.entry(i, j)?;
                    }
                }
                Ok(sum)
            }
            _ => Err(Error::UndefinedProduct {
                row: VertexId::Name("x".into()),
                col: j.clone(),
            }),
        }),
        support: Support::Unknown,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::Presentation;

    fn all_ones_lower() -> LazyIntMatrix {
        // Lower-triangular ones on the naturals: rows finite, columns infinite.
        LazyIntMatrix::new(
            "L",
            Arc::new(|i, j| {
                let (i, j) = (i.as_int().unwrap(), j.as_int().unwrap());
                Ok(BigInt::from((j <= i) as i64))
            }),
            Arc::new(|i| Ok(Support::Finite((0..=i.as_int().unwrap()).map(VertexId::Int).collect()))),
            Arc::new(|_| Ok(Support::Infinite)),
        )
    }

    #[test]
    fn transpose_twice_is_identity() {
        let l = all_ones_lower();
        let tt = l.transpose().transpose();
        let w = Presentation::a_infinity().window("0..5").unwrap();
        assert_eq!(l.evaluate_window(&w, &w).unwrap(), tt.evaluate_window(&w, &w).unwrap());
    }

    #[test]
    fn product_with_infinite_inner_sum_is_refused() {
        let l = all_ones_lower();
        // L^tr * L has an infinite sum in every entry.
        let p = multiply(&l.transpose(), &l);
        assert!(matches!(
            p.entry(&VertexId::Int(0), &VertexId::Int(0)),
            Err(Error::UndefinedProduct { .. })
        ));
        // L * L^tr is fine: rows of L are finite.
        let p = multiply(&l, &l.transpose());
        assert_eq!(p.entry(&VertexId::Int(2), &VertexId::Int(5)).unwrap(), BigInt::from(3));
    }

    #[test]
    fn identity_product() {
        let l = all_ones_lower();
        let p = multiply(&l, &LazyIntMatrix::identity());
        let w = Presentation::a_infinity().window("0..6").unwrap();
        assert_eq!(p.evaluate_window(&w, &w).unwrap(), l.evaluate_window(&w, &w).unwrap());
        let check =
            verify_identity_on_window(&LazyIntMatrix::identity(), &LazyIntMatrix::identity(), &w, Side::Left).unwrap();
        assert!(check.holds);
        let check = verify_identity_on_window(&l, &LazyIntMatrix::identity(), &w, Side::Left).unwrap();
        assert_eq!(
            check.counterexample,
            Some((VertexId::Int(1), VertexId::Int(0), BigInt::one()))
        );
    }

    #[test]
    fn vector_action() {
        let l = all_ones_lower();
        let x = LazyVector::from_sparse(&SparseVector::zero());
        let y = apply_vector(&x, &l).unwrap();
        assert_eq!(y.to_sparse().unwrap(), Some(SparseVector::zero()));
        let e3 = LazyVector::from_sparse(&SparseVector::unit(VertexId::Int(3)));
        let row = apply_vector(&e3, &l).unwrap().to_sparse().unwrap().unwrap();
        assert_eq!(row.len(), 4);
    }

    #[test]
    fn tsv_layout() {
        let w = Presentation::a_infinity().window("0..1").unwrap();
        let tsv = all_ones_lower().evaluate_window(&w, &w).unwrap().to_tsv();
        assert_eq!(tsv, "\t0\t1\n0\t1\t0\n1\t1\t1\n");
    }
}
