//! Cartan matrices and their row- and column-finite inverses.
//!
//! Entry `(i, j)` of the Cartan matrix is the multiplicity of `S(j)` in the
//! injective envelope `E(i)`: the number of paths `j -> i` in a quiver, or
//! `[j <= i]` in a poset.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lazymatrix::{LazyIntMatrix, LazyVector, Side, Support};
use crate::presentation::{Direction, Kind, Presentation, Reach};
use crate::resolutions::{minimal_injective_resolution, ResolutionSummary, DEFAULT_CAP};
use crate::vertex::{IndexWindow, VertexId};

pub const DEFAULT_NODE_BUDGET: usize = 1_000_000;

/// The path enumeration budget, overridable through `COX_NODE_BUDGET`.
pub fn node_budget() -> usize {
    std::env::var("COX_NODE_BUDGET")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_NODE_BUDGET)
}

/// Number of directed paths `from -> to`, the trivial path included.
pub fn path_count(p: &Presentation, from: &VertexId, to: &VertexId) -> Result<BigInt> {
    path_count_with_budget(p, from, to, node_budget())
}

pub fn path_count_with_budget(p: &Presentation, from: &VertexId, to: &VertexId, budget: usize) -> Result<BigInt> {
    if p.kind() != Kind::Quiver {
        return Err(Error::WrongKind { expected: "quiver" });
    }
    let target_height = p.height(to)?;
    let mut memo: HashMap<VertexId, BigInt> = HashMap::new();
    let mut visited = 0usize;
    count_paths(p, from, to, target_height, budget, &mut visited, &mut memo)
}

fn count_paths(
    p: &Presentation,
    v: &VertexId,
    to: &VertexId,
    target_height: i64,
    budget: usize,
    visited: &mut usize,
    memo: &mut HashMap<VertexId, BigInt>,
) -> Result<BigInt> {
    if let Some(c) = memo.get(v) {
        return Ok(c.clone());
    }
    *visited += 1;
    if *visited > budget {
        return Err(Error::IntervalFinitenessViolated {
            from: v.clone(),
            to: to.clone(),
            budget,
        });
    }
    let mut total = if v == to { BigInt::one() } else { BigInt::zero() };
    if v != to {
        for (w, mult) in p.neighbors(v, Direction::Out)? {
            // Heights increase along arrows, so nothing above the target reaches it.
            if p.height(&w)? <= target_height {
                total += BigInt::from(mult) * count_paths(p, &w, to, target_height, budget, visited, memo)?;
            }
        }
    }
    memo.insert(v.clone(), total.clone());
    Ok(total)
}

fn reach_support(r: Reach) -> Support {
    match r {
        Reach::Finite(vs) => Support::Finite(vs),
        Reach::Infinite => Support::Infinite,
    }
}

/// The Cartan matrix; row `i` is `dim E(i)`, column `a` is `dim Ê(a)`.
pub fn cartan_matrix(p: &Presentation) -> LazyIntMatrix {
    let (pe, pr, pc) = (p.clone(), p.clone(), p.clone());
    LazyIntMatrix::new(
        "c",
        Arc::new(move |i, j| match pe.kind() {
            Kind::Quiver => path_count(&pe, j, i),
            Kind::Poset => Ok(BigInt::from(pe.leq(j, i)? as i64)),
        }),
        Arc::new(move |i| Ok(reach_support(pr.reach(i, Direction::In)?))),
        Arc::new(move |j| Ok(reach_support(pc.reach(j, Direction::Out)?))),
    )
}

/// The inverse Cartan matrix. For quivers this is the hereditary closed form
/// `delta(j, p) - #arrows(p -> j)`; for posets entry `(j, p)` is the
/// alternating sum of Bass numbers of the minimal injective resolution of
/// `S(j)`.
pub fn cartan_inverse(p: &Presentation) -> Result<LazyIntMatrix> {
    match p.kind() {
        Kind::Quiver => Ok(hereditary_inverse(p)),
        Kind::Poset => Ok(incidence_inverse(p)),
    }
}

fn hereditary_inverse(p: &Presentation) -> LazyIntMatrix {
    let (pe, pr, pc) = (p.clone(), p.clone(), p.clone());
    let around = |p: &Presentation, v: &VertexId, d: Direction| -> Result<Support> {
        let mut vs = vec![v.clone()];
        vs.extend(p.neighbors(v, d)?.into_iter().map(|(w, _)| w));
        p.sort_vertices(&mut vs);
        Ok(Support::Finite(vs))
    };
    LazyIntMatrix::new(
        "c^-1",
        Arc::new(move |j, q| {
            let delta = if j == q { BigInt::one() } else { BigInt::zero() };
            Ok(delta - BigInt::from(pe.arrow_count(q, j)?))
        }),
        Arc::new(move |j| around(&pr, j, Direction::In)),
        Arc::new(move |q| around(&pc, q, Direction::Out)),
    )
}

fn incidence_inverse(p: &Presentation) -> LazyIntMatrix {
    let cache: Arc<Mutex<HashMap<VertexId, ResolutionSummary>>> = Arc::new(Mutex::new(HashMap::new()));
    let resolve = {
        let p = p.clone();
        move |j: &VertexId| -> Result<ResolutionSummary> {
            if let Some(r) = cache.lock().unwrap().get(j) {
                return Ok(r.clone());
            }
            let r = minimal_injective_resolution(&p, j, Side::Left, DEFAULT_CAP).map_err(|e| match e {
                Error::CapExceeded { vertex, cap } => Error::SharpEulerViolated {
                    vertex,
                    reason: format!("injective resolution longer than {cap}"),
                },
                other => other,
            })?;
            cache.lock().unwrap().insert(j.clone(), r.clone());
            Ok(r)
        }
    };
    let (pr, pc) = (p.clone(), p.clone());
    LazyIntMatrix::new(
        "c^-1",
        Arc::new(move |j, q| Ok(resolve(j)?.alternating_sum(q))),
        Arc::new(move |j| Ok(Support::Finite(pr.junction_cone(j, Direction::In)?))),
        Arc::new(move |q| Ok(Support::Finite(pc.junction_cone(q, Direction::Out)?))),
    )
}

/// A Cartan matrix together with its canonical inverse.
#[derive(Debug, Clone)]
pub struct CartanPair {
    pub presentation: Presentation,
    pub cartan: LazyIntMatrix,
    pub inverse: LazyIntMatrix,
}

impl CartanPair {
    pub fn new(p: &Presentation) -> Result<CartanPair> {
        Ok(CartanPair {
            presentation: p.clone(),
            cartan: cartan_matrix(p),
            inverse: cartan_inverse(p)?,
        })
    }
}

/// Three-valued answer of a sampled finiteness check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Finiteness {
    Finite,
    Infinite,
    Unknown,
}

impl Finiteness {
    fn of(s: &Support) -> Finiteness {
        match s {
            Support::Finite(_) => Finiteness::Finite,
            Support::Infinite => Finiteness::Infinite,
            Support::Unknown => Finiteness::Unknown,
        }
    }

    fn combine(self, other: Finiteness) -> Finiteness {
        use Finiteness::*;
        match (self, other) {
            (Infinite, _) | (_, Infinite) => Infinite,
            (Unknown, _) | (_, Unknown) => Unknown,
            _ => Finite,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitenessReport {
    pub rows: Finiteness,
    pub cols: Finiteness,
    pub per_vertex: Vec<(VertexId, Finiteness, Finiteness)>,
}

impl FinitenessReport {
    /// Finite rows of the Cartan matrix mean right semiperfect.
    pub fn right_semiperfect(&self) -> Finiteness {
        self.rows
    }

    /// Finite columns of the Cartan matrix mean left semiperfect.
    pub fn left_semiperfect(&self) -> Finiteness {
        self.cols
    }
}

pub fn classify_finiteness(p: &Presentation, sample: &IndexWindow) -> Result<FinitenessReport> {
    let c = cartan_matrix(p);
    let mut rows = Finiteness::Finite;
    let mut cols = Finiteness::Finite;
    let mut per_vertex = Vec::new();
    for v in sample {
        let r = Finiteness::of(&c.row_support(v)?);
        let k = Finiteness::of(&c.col_support(v)?);
        rows = rows.combine(r);
        cols = cols.combine(k);
        per_vertex.push((v.clone(), r, k));
    }
    Ok(FinitenessReport { rows, cols, per_vertex })
}

/// `dim E(a)` (left, row `a` of the Cartan matrix) or `dim Ê(a)` (right,
/// column `a`).
pub fn dim_injective(p: &Presentation, a: &VertexId, side: Side) -> Result<LazyVector> {
    let c = cartan_matrix(p);
    let a = a.clone();
    Ok(match side {
        Side::Left => {
            let support = c.row_support(&a)?;
            LazyVector::new(Arc::new(move |j| c.entry(&a, j)), support)
        }
        Side::Right => {
            let support = c.col_support(&a)?;
            LazyVector::new(Arc::new(move |i| c.entry(i, &a)), support)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;

    fn v(n: i64) -> VertexId {
        VertexId::Int(n)
    }

    #[test]
    fn path_counts() {
        let a = Presentation::a_infinity();
        assert_eq!(path_count(&a, &v(0), &v(3)).unwrap(), BigInt::from(1));
        assert_eq!(path_count(&a, &v(3), &v(0)).unwrap(), BigInt::from(0));
        assert_eq!(path_count(&a, &v(4), &v(4)).unwrap(), BigInt::from(1));
        let k = parse_presentation("kind quiver\narrow 0 1\narrow 0 1").unwrap();
        assert_eq!(path_count(&k, &v(0), &v(1)).unwrap(), BigInt::from(2));
    }

    #[test]
    fn budget_guard() {
        let a = Presentation::a_infinity();
        let err = path_count_with_budget(&a, &v(0), &v(50), 10).unwrap_err();
        assert!(matches!(err, Error::IntervalFinitenessViolated { .. }));
    }

    #[test]
    fn d_infinity_rows() {
        let d = Presentation::d_infinity();
        let w = d.window("-1..4").unwrap();
        let c = cartan_matrix(&d).evaluate_window(&w, &w).unwrap().to_i64();
        assert_eq!(c[0], vec![1, 0, 1, 0, 0, 0]);
        assert_eq!(c[3], vec![0, 0, 1, 1, 0, 0]);
        let inv = cartan_inverse(&d).unwrap().evaluate_window(&w, &w).unwrap().to_i64();
        assert_eq!(inv[0], vec![1, 0, -1, 0, 0, 0]);
        assert_eq!(inv[2], vec![0, 0, 1, 0, 0, 0]);
    }

    #[test]
    fn chain_poset_inverse() {
        let chain = parse_presentation("kind poset\ncover a b\ncover b c").unwrap();
        let w = chain.window("a..c").unwrap();
        let c = cartan_matrix(&chain).evaluate_window(&w, &w).unwrap().to_i64();
        assert_eq!(c, vec![vec![1, 0, 0], vec![1, 1, 0], vec![1, 1, 1]]);
        let inv = cartan_inverse(&chain)
            .unwrap()
            .evaluate_window(&w, &w)
            .unwrap()
            .to_i64();
        assert_eq!(inv, vec![vec![1, 0, 0], vec![-1, 1, 0], vec![0, -1, 1]]);
    }

    #[test]
    fn finiteness_classes() {
        let a = Presentation::a_infinity();
        let r = classify_finiteness(&a, &a.window("0..4").unwrap()).unwrap();
        assert_eq!(
            (r.right_semiperfect(), r.left_semiperfect()),
            (Finiteness::Finite, Finiteness::Infinite)
        );
        let z = Presentation::za_infinity();
        let r = classify_finiteness(&z, &z.window("-2..2").unwrap()).unwrap();
        assert_eq!((r.rows, r.cols), (Finiteness::Infinite, Finiteness::Infinite));
        let f = parse_presentation("kind quiver\narrow 0 1").unwrap();
        let r = classify_finiteness(&f, &f.window("0..1").unwrap()).unwrap();
        assert_eq!((r.rows, r.cols), (Finiteness::Finite, Finiteness::Finite));
    }

    #[test]
    fn injective_dimension_vectors() {
        let a = Presentation::a_infinity();
        let e3 = dim_injective(&a, &v(3), Side::Left)
            .unwrap()
            .to_sparse()
            .unwrap()
            .unwrap();
        assert_eq!(
            e3,
            crate::vertex::SparseVector::parse_literal("1@0,1@1,1@2,1@3").unwrap()
        );
        let col0 = dim_injective(&a, &v(0), Side::Right).unwrap();
        assert_eq!(col0.support(), &Support::Infinite);
        assert_eq!(col0.get(&v(40)).unwrap(), BigInt::one());
        let d = Presentation::d_infinity();
        let e1 = dim_injective(&d, &v(1), Side::Left)
            .unwrap()
            .to_sparse()
            .unwrap()
            .unwrap();
        assert_eq!(e1, crate::vertex::SparseVector::unit(v(1)));
    }
}
