//! Finite-dimensional comodules as representations on finite windows of a
//! presentation, and the Auslander-Reiten machinery built on them: injective
//! copresentations, the transpose, translates, meshes and knitting.
//!
//! Windows are convex, so the injectives of a window are the restrictions of
//! the ambient ones. Anything that depends on the part of an infinite
//! injective outside the window is recomputed on a window one step wider and
//! must agree, otherwise `WindowInsufficient` is raised.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::cartan::dim_injective;
use crate::coxeter::{CoxDirection, CoxInput, CoxeterOperator};
use crate::error::{Error, Result};
use crate::lazymatrix::{LazyVector, Side};
use crate::linalg::{Mat, Q};
use crate::presentation::{Direction, Family, Kind, Presentation};
use crate::rep::{interval_rep, FiniteQuiver, Rep};
use crate::vertex::{IndexWindow, SparseVector, VertexId};

pub const DEFAULT_MARGIN: usize = 2;

#[derive(Debug, Clone)]
pub struct Comodule {
    presentation: Presentation,
    quiver: FiniteQuiver,
    rep: Rep,
}

impl Comodule {
    /// Wraps a representation of the full subquiver of `p` on `region`.
    pub fn from_rep(p: &Presentation, region: &[VertexId], rep: Rep) -> Result<Comodule> {
        let quiver = FiniteQuiver::restrict(p, region)?;
        if rep.dims.len() != quiver.len() || rep.maps.len() != quiver.arrows().len() {
            return Err(Error::Invalid("representation does not fit the region".into()));
        }
        for (a, &(s, t)) in quiver.arrows().iter().enumerate() {
            let m = &rep.maps[a];
            if m.rows() != rep.dims[t] || m.cols() != rep.dims[s] {
                return Err(Error::Invalid(format!("arrow map {a} has the wrong shape")));
            }
        }
        Ok(Comodule {
            presentation: p.clone(),
            quiver,
            rep,
        })
    }

    pub fn zero(p: &Presentation) -> Comodule {
        let quiver = FiniteQuiver::restrict(p, &[]).expect("empty region");
        Comodule {
            presentation: p.clone(),
            rep: quiver.zero_rep(),
            quiver,
        }
    }

    pub fn simple(p: &Presentation, v: &VertexId) -> Result<Comodule> {
        if !p.contains(v) {
            return Err(Error::UnknownVertex(v.to_string()));
        }
        let quiver = FiniteQuiver::restrict(p, std::slice::from_ref(v))?;
        let rep = quiver.simple(0);
        Ok(Comodule {
            presentation: p.clone(),
            quiver,
            rep,
        })
    }

    /// `E(v)`, when it is finite-dimensional.
    pub fn injective(p: &Presentation, v: &VertexId) -> Result<Comodule> {
        let region = match p.reach(v, Direction::In)? {
            crate::presentation::Reach::Finite(vs) => vs,
            crate::presentation::Reach::Infinite => return Err(Error::InfiniteDimensional(v.clone())),
        };
        let quiver = FiniteQuiver::restrict(p, &region)?;
        let j = quiver.index_of(v).expect("vertex reaches itself");
        let rep = quiver.injective(j);
        Ok(Comodule {
            presentation: p.clone(),
            quiver,
            rep,
        })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn quiver(&self) -> &FiniteQuiver {
        &self.quiver
    }

    pub fn rep(&self) -> &Rep {
        &self.rep
    }

    pub fn dim_vector(&self) -> SparseVector {
        self.quiver.dim_vector(&self.rep)
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    pub fn total_dim(&self) -> usize {
        self.rep.total_dim()
    }

    /// Vertices with a nonzero space, in display order.
    pub fn support(&self) -> Vec<VertexId> {
        let mut out: Vec<VertexId> = self
            .quiver
            .vertices()
            .iter()
            .zip(&self.rep.dims)
            .filter(|(_, &d)| d > 0)
            .map(|(v, _)| v.clone())
            .collect();
        self.presentation.sort_vertices(&mut out);
        out
    }

    pub fn support_window(&self) -> Result<IndexWindow> {
        self.presentation.window_of(self.support())
    }

    /// The same comodule as a representation on a larger region.
    pub fn embed(&self, region: &[VertexId]) -> Result<(FiniteQuiver, Rep)> {
        for v in self.support() {
            if !region.contains(&v) {
                return Err(Error::Invalid(format!("region misses support vertex {v}")));
            }
        }
        let q = FiniteQuiver::restrict(&self.presentation, region)?;
        let dims: Vec<usize> = q
            .vertices()
            .iter()
            .map(|v| self.quiver.index_of(v).map_or(0, |i| self.rep.dims[i]))
            .collect();
        let mut old: HashMap<(VertexId, VertexId), Vec<usize>> = HashMap::new();
        let ov = self.quiver.vertices();
        for (a, &(s, t)) in self.quiver.arrows().iter().enumerate() {
            old.entry((ov[s].clone(), ov[t].clone())).or_default().push(a);
        }
        let mut used: HashMap<(VertexId, VertexId), usize> = HashMap::new();
        let mut maps = Vec::with_capacity(q.arrows().len());
        for &(s, t) in q.arrows() {
            let key = (q.vertices()[s].clone(), q.vertices()[t].clone());
            let k = used.entry(key.clone()).or_insert(0);
            let occurrence = *k;
            *k += 1;
            if dims[s] == 0 || dims[t] == 0 {
                maps.push(Mat::zeros(dims[t], dims[s]));
                continue;
            }
            let a = old
                .get(&key)
                .and_then(|list| list.get(occurrence))
                .ok_or_else(|| Error::Invalid(format!("no arrow {} -> {} in the source region", key.0, key.1)))?;
            maps.push(self.rep.maps[*a].clone());
        }
        Ok((q, Rep { dims, maps }))
    }

    pub fn on_region(&self, region: &[VertexId]) -> Result<Comodule> {
        let (quiver, rep) = self.embed(region)?;
        Ok(Comodule {
            presentation: self.presentation.clone(),
            quiver,
            rep,
        })
    }

    /// Restricted to its own support.
    pub fn trimmed(&self) -> Comodule {
        self.on_region(&self.support()).expect("support is contained in itself")
    }

    /// `D M`, a comodule over the opposite presentation.
    pub fn dual(&self) -> Comodule {
        Comodule {
            presentation: self.presentation.opposite(),
            quiver: self.quiver.opposite(),
            rep: self.quiver.dual(&self.rep),
        }
    }

    pub fn direct_sum(&self, other: &Comodule) -> Result<Comodule> {
        same_presentation(self, other)?;
        let region = self.union_support(other);
        let (q, a) = self.embed(&region)?;
        let (_, b) = other.embed(&region)?;
        let dims = a.dims.iter().zip(&b.dims).map(|(x, y)| x + y).collect();
        let maps = a.maps.iter().zip(&b.maps).map(|(f, g)| block_diag(f, g)).collect();
        Ok(Comodule {
            presentation: self.presentation.clone(),
            quiver: q,
            rep: Rep { dims, maps },
        })
    }

    pub fn is_isomorphic(&self, other: &Comodule) -> Result<bool> {
        same_presentation(self, other)?;
        if self.dim_vector() != other.dim_vector() {
            return Ok(false);
        }
        let region = self.union_support(other);
        let (q, a) = self.embed(&region)?;
        let (_, b) = other.embed(&region)?;
        Ok(q.is_isomorphic(&a, &b))
    }

    fn union_support(&self, other: &Comodule) -> Vec<VertexId> {
        let mut region = self.support();
        for v in other.support() {
            if !region.contains(&v) {
                region.push(v);
            }
        }
        self.presentation.sort_vertices(&mut region);
        region
    }
}

fn same_presentation(a: &Comodule, b: &Comodule) -> Result<()> {
    if a.presentation != b.presentation {
        return Err(Error::Invalid("comodules over different presentations".into()));
    }
    Ok(())
}

fn block_diag(f: &Mat, g: &Mat) -> Mat {
    let mut out = Mat::zeros(f.rows() + g.rows(), f.cols() + g.cols());
    for r in 0..f.rows() {
        for c in 0..f.cols() {
            out[(r, c)] = f[(r, c)].clone();
        }
    }
    for r in 0..g.rows() {
        for c in 0..g.cols() {
            out[(f.rows() + r, f.cols() + c)] = g[(r, c)].clone();
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntervalFamily {
    AInfinity,
    ZAInfinity,
}

/// The interval comodule `I[n, m]`: one-dimensional on `n..=m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntervalModule {
    pub family: IntervalFamily,
    pub n: i64,
    pub m: i64,
}

impl IntervalModule {
    pub fn new(family: IntervalFamily, n: i64, m: i64) -> Result<IntervalModule> {
        if n > m || (family == IntervalFamily::AInfinity && n < 0) {
            return Err(Error::Invalid(format!("no interval [{n}, {m}]")));
        }
        Ok(IntervalModule { family, n, m })
    }

    pub fn presentation(&self) -> Presentation {
        match self.family {
            IntervalFamily::AInfinity => Presentation::a_infinity(),
            IntervalFamily::ZAInfinity => Presentation::za_infinity(),
        }
    }

    pub fn comodule(&self) -> Comodule {
        let p = self.presentation();
        let region: Vec<VertexId> = (self.n..=self.m).map(VertexId::Int).collect();
        let quiver = FiniteQuiver::restrict(&p, &region).expect("interval region");
        let all: Vec<usize> = (0..region.len()).collect();
        let rep = interval_rep(&quiver, &all).expect("nonempty interval");
        Comodule {
            presentation: p,
            quiver,
            rep,
        }
    }

    pub fn dim_vector(&self) -> SparseVector {
        SparseVector::from_pairs((self.n..=self.m).map(|k| (VertexId::Int(k), 1i64)))
    }

    pub fn label(&self) -> String {
        format!("I[{},{}]", self.n, self.m)
    }

    /// Recognizes an interval comodule up to isomorphism.
    pub fn recognize(m: &Comodule) -> Result<Option<IntervalModule>> {
        let family = match interval_family(m.presentation()) {
            Some(f) => f,
            None => return Ok(None),
        };
        let Some((n, hi)) = interval_bounds(&m.dim_vector()) else {
            return Ok(None);
        };
        let candidate = IntervalModule { family, n, m: hi };
        if family == IntervalFamily::AInfinity && n < 0 {
            return Ok(None);
        }
        Ok(if m.is_isomorphic(&candidate.comodule())? {
            Some(candidate)
        } else {
            None
        })
    }
}

fn interval_family(p: &Presentation) -> Option<IntervalFamily> {
    if p.is_reversed() {
        return None;
    }
    match p.family_kind() {
        Family::AInfinity => Some(IntervalFamily::AInfinity),
        Family::ZAInfinity => Some(IntervalFamily::ZAInfinity),
        _ => None,
    }
}

/// `(a, b)` when `x` is the indicator of the integers `a..=b`.
fn interval_bounds(x: &SparseVector) -> Option<(i64, i64)> {
    let mut ints = Vec::new();
    for (v, c) in x.iter() {
        if *c != BigInt::from(1) {
            return None;
        }
        ints.push(v.as_int()?);
    }
    ints.sort_unstable();
    let (&lo, &hi) = (ints.first()?, ints.last()?);
    (hi - lo + 1 == ints.len() as i64).then_some((lo, hi))
}

/// `I[a,b]` for indicator vectors of intervals in the linear families.
pub fn interval_label(p: &Presentation, x: &SparseVector) -> Option<String> {
    interval_family(p)?;
    let (a, b) = interval_bounds(x)?;
    Some(format!("I[{a},{b}]"))
}

#[derive(Debug, Clone)]
pub struct Socle {
    pub dims: SparseVector,
    pub module: Comodule,
}

pub fn socle(m: &Comodule) -> Socle {
    let (rep, _) = m.quiver.socle_rep(&m.rep);
    let module = Comodule {
        presentation: m.presentation.clone(),
        quiver: m.quiver.clone(),
        rep,
    };
    Socle {
        dims: module.dim_vector(),
        module,
    }
}

pub fn dim_vector(m: &Comodule) -> SparseVector {
    m.dim_vector()
}

/// `⊕ E(j)^{d_j}` by socle labels and multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FormalInjective {
    pub summands: Vec<(VertexId, u32)>,
}

impl FormalInjective {
    /// Merges repeated labels; the first occurrence fixes the order.
    pub fn new(labels: impl IntoIterator<Item = VertexId>) -> FormalInjective {
        let mut summands: Vec<(VertexId, u32)> = Vec::new();
        for v in labels {
            match summands.iter_mut().find(|(w, _)| *w == v) {
                Some((_, k)) => *k += 1,
                None => summands.push((v, 1)),
            }
        }
        FormalInjective { summands }
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    /// Summand labels repeated by multiplicity.
    pub fn expanded(&self) -> Vec<VertexId> {
        self.summands
            .iter()
            .flat_map(|(v, k)| std::iter::repeat_n(v.clone(), *k as usize))
            .collect()
    }

    /// `Σ d_j · dim E(j)`.
    pub fn dim(&self, p: &Presentation) -> Result<SparseVector> {
        self.weighted(p, Side::Left)
    }

    fn weighted(&self, p: &Presentation, side: Side) -> Result<SparseVector> {
        let mut out = SparseVector::zero();
        for (j, k) in &self.summands {
            let g = dim_injective(p, j, side)?
                .to_sparse()?
                .ok_or_else(|| Error::InfiniteDimensional(j.clone()))?;
            out = out.add(&g.scaled(&BigInt::from(*k)));
        }
        Ok(out)
    }

    fn lazy(&self, p: &Presentation, side: Side) -> Result<LazyVector> {
        let mut acc = LazyVector::from_sparse(&SparseVector::zero());
        for (j, k) in &self.summands {
            acc = acc.add(&dim_injective(p, j, side)?.scaled(BigInt::from(*k)));
        }
        Ok(acc)
    }
}

/// Dimension vector of the Nakayama image: `Σ d_j · dim Ê(j)`.
pub fn nakayama_dim(p: &Presentation, e: &FormalInjective) -> Result<SparseVector> {
    e.weighted(p, Side::Right)
}

/// One coefficient of the map `E0 -> E1`: `coeff` times the path from the
/// socle vertex of the target summand to that of the source summand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CopresentationTerm {
    /// Index into `e0.expanded()`.
    pub source: usize,
    /// Index into `e1.expanded()`.
    pub target: usize,
    /// Vertices along the path.
    pub path: Vec<VertexId>,
    pub coeff: Q,
}

#[derive(Debug, Clone)]
pub struct InjCopresentation {
    pub module: Comodule,
    pub e0: FormalInjective,
    pub e1: FormalInjective,
    pub map: Vec<CopresentationTerm>,
    /// The region the linear algebra ran on.
    pub window: Vec<VertexId>,
}

struct Windowed {
    quiver: FiniteQuiver,
    cop: crate::rep::Copresentation,
    region: Vec<VertexId>,
}

/// `ball(supp, margin)` closed under paths, or everything for finite
/// presentations.
fn window_region(p: &Presentation, support: &[VertexId], margin: usize) -> Result<Vec<VertexId>> {
    if let Some(mut all) = p.finite_vertices() {
        p.sort_vertices(&mut all);
        return Ok(all);
    }
    if support.is_empty() {
        return Ok(Vec::new());
    }
    let ball = p.ball(support, margin)?;
    p.convex_hull(&ball)
}

fn out_leaks(p: &Presentation, q: &FiniteQuiver) -> Result<Vec<bool>> {
    q.vertices()
        .iter()
        .map(|v| {
            Ok(p.neighbors(v, Direction::Out)?
                .iter()
                .any(|(w, _)| q.index_of(w).is_none()))
        })
        .collect()
}

fn require_quiver(p: &Presentation, what: &str) -> Result<()> {
    if p.kind() != Kind::Quiver {
        return Err(Error::HypothesisViolated(format!(
            "{what} needs a path coalgebra (hereditary presentation)"
        )));
    }
    Ok(())
}

fn windowed_copresentation(m: &Comodule, margin: usize) -> Result<Windowed> {
    let p = m.presentation();
    let region = window_region(p, &m.support(), margin)?;
    let (quiver, rep) = m.embed(&region)?;
    let cop = quiver.copresentation(&rep);
    let (coker, _) = quiver.cokernel(&cop.e0.rep, &cop.iota0);
    let leaks = out_leaks(p, &quiver)?;
    for (x, &leak) in leaks.iter().enumerate() {
        if leak && coker.dims[x] > 0 {
            return Err(Error::WindowInsufficient(format!(
                "cokernel reaches {} whose successors lie outside margin {margin}",
                quiver.vertices()[x]
            )));
        }
    }
    Ok(Windowed { quiver, cop, region })
}

fn summand_labels(q: &FiniteQuiver, summands: &[usize]) -> FormalInjective {
    FormalInjective::new(summands.iter().map(|&j| q.vertices()[j].clone()))
}

/// Minimal injective copresentation `0 -> M -> E0 -> E1`, computed on
/// `ball(supp M, margin)` and confirmed on a window one step wider.
pub fn min_inj_copresentation(m: &Comodule, margin: usize) -> Result<InjCopresentation> {
    let w = windowed_copresentation(m, margin)?;
    let q = &w.quiver;
    let e0 = summand_labels(q, &w.cop.e0.summands);
    let e1 = summand_labels(q, &w.cop.e1.summands);
    if !m.presentation().is_finite() && !m.is_zero() {
        let wider = windowed_copresentation(m, margin + 1)?;
        if summand_labels(&wider.quiver, &wider.cop.e0.summands) != e0
            || summand_labels(&wider.quiver, &wider.cop.e1.summands) != e1
        {
            return Err(Error::WindowInsufficient(format!(
                "copresentation changes between margins {margin} and {}",
                margin + 1
            )));
        }
    }
    let mut map = Vec::new();
    for (t, &k) in w.cop.e1.summands.iter().enumerate() {
        for (s, &j) in w.cop.e0.summands.iter().enumerate() {
            for (b, path) in q.inj_basis(j)[k].iter().enumerate() {
                let c = &w.cop.g[k][(w.cop.e1.offsets[t][k], w.cop.e0.offsets[s][k] + b)];
                if c.is_zero() {
                    continue;
                }
                let mut verts = vec![q.vertices()[k].clone()];
                for &a in path {
                    verts.push(q.vertices()[q.arrows()[a].1].clone());
                }
                map.push(CopresentationTerm {
                    source: s,
                    target: t,
                    path: verts,
                    coeff: c.clone(),
                });
            }
        }
    }
    Ok(InjCopresentation {
        module: m.clone(),
        e0,
        e1,
        map,
        window: w.region,
    })
}

/// `Hom(E(j), M) = 0` for every `j` within `margin` arrows of the support.
pub fn certify_no_inj_hom(m: &Comodule, margin: usize) -> Result<bool> {
    if m.is_zero() {
        return Ok(true);
    }
    let p = m.presentation();
    let support = m.support();
    let region = window_region(p, &support, margin.max(1))?;
    let (q, rep) = m.embed(&region)?;
    let candidates = if p.is_finite() {
        region.clone()
    } else {
        p.ball(&support, margin)?
    };
    for j in &candidates {
        let Some(idx) = q.index_of(j) else { continue };
        if q.hom_dim(&q.injective(idx), &rep) > 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

fn transpose_on_window(m: &Comodule, margin: usize) -> Result<Comodule> {
    let p = m.presentation();
    let w = windowed_copresentation(m, margin)?;
    let tr = w.quiver.transpose_rep(&w.cop);
    for x in w.quiver.boundary(p)? {
        if tr.dims[x] > 0 {
            return Err(Error::WindowInsufficient(format!(
                "transpose reaches the window boundary at {}",
                w.quiver.vertices()[x]
            )));
        }
    }
    let out = Comodule {
        presentation: p.opposite(),
        quiver: w.quiver.opposite(),
        rep: tr,
    };
    Ok(out.trimmed())
}

fn stable_transpose(m: &Comodule, margin: usize) -> Result<Comodule> {
    let tr = transpose_on_window(m, margin)?;
    if !m.presentation().is_finite() && !m.is_zero() {
        let wider = transpose_on_window(m, margin + 1)?;
        if wider.dim_vector() != tr.dim_vector() {
            return Err(Error::WindowInsufficient(format!(
                "transpose changes between margins {margin} and {}",
                margin + 1
            )));
        }
    }
    Ok(tr)
}

#[derive(Debug, Clone)]
pub struct Transpose {
    /// `dim ∇E1 - dim ∇E0`, lazily.
    pub formula: LazyVector,
    /// Dimension vector of the materialized kernel.
    pub dim: SparseVector,
    /// `Tr M` over the opposite presentation.
    pub module: Comodule,
}

/// `Tr M`, both by the dimension formula and as a kernel.
pub fn transpose_tr(m: &Comodule, margin: usize) -> Result<Transpose> {
    let p = m.presentation();
    require_quiver(p, "the transpose")?;
    if !certify_no_inj_hom(m, 1)? {
        return Err(Error::HomCNotZero(format!(
            "some injective maps nontrivially to the module supported on {}",
            m.dim_vector().to_literal(&m.support())
        )));
    }
    let cop = min_inj_copresentation(m, margin)?;
    let formula = cop.e1.lazy(p, Side::Right)?.add(&cop.e0.lazy(p, Side::Right)?.neg());
    let module = stable_transpose(m, margin)?;
    Ok(Transpose {
        formula,
        dim: module.dim_vector(),
        module,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TauDirection {
    Tau,
    TauMinus,
}

#[derive(Debug, Clone)]
pub enum Translate {
    Module(Comodule),
    /// Only the dimension vector, from the Coxeter transformation.
    Dimension(SparseVector),
}

impl Translate {
    pub fn dim_vector(&self) -> SparseVector {
        match self {
            Translate::Module(m) => m.dim_vector(),
            Translate::Dimension(d) => d.clone(),
        }
    }
}

/// `τ N = Tr D N` or `τ⁻ N = D Tr N` at comodule level.
pub fn tau_module(n: &Comodule, direction: TauDirection, margin: usize) -> Result<Comodule> {
    let p = n.presentation();
    require_quiver(p, "comodule-level translation")?;
    if n.is_zero() {
        return Ok(Comodule::zero(p));
    }
    match direction {
        TauDirection::TauMinus => {
            if min_inj_copresentation(n, margin)?.e1.is_empty() {
                return Ok(Comodule::zero(p));
            }
            Ok(stable_transpose(n, margin)?.dual())
        }
        TauDirection::Tau => {
            let dn = n.dual();
            if min_inj_copresentation(&dn, margin)?.e1.is_empty() {
                return Ok(Comodule::zero(p));
            }
            let mut out = stable_transpose(&dn, margin)?;
            out.presentation = p.clone();
            Ok(out)
        }
    }
}

/// Translate at comodule level for quivers; for finite posets the dimension
/// vector from the Coxeter transformation once the hypotheses of the
/// dimension formula are checked on the whole poset.
pub fn tau(n: &Comodule, direction: TauDirection, margin: usize) -> Result<Translate> {
    let p = n.presentation();
    if p.kind() == Kind::Quiver {
        return tau_module(n, direction, margin).map(Translate::Module);
    }
    if !p.is_finite() {
        return Err(Error::HypothesisViolated(
            "dimension-level translation needs a finite poset to certify its hypotheses".into(),
        ));
    }
    let (subject, cox) = match direction {
        TauDirection::Tau => (n.dual(), CoxDirection::Forward),
        TauDirection::TauMinus => (n.clone(), CoxDirection::Inverse),
    };
    let region = window_region(subject.presentation(), &[], 0)?;
    let (q, rep) = subject.embed(&region)?;
    let (terms, done) = q.injective_resolution(&rep, 2);
    if !done || terms.len() != 2 {
        return Err(Error::HypothesisViolated(format!(
            "injective dimension is {}, not 1",
            if done {
                terms.len().saturating_sub(1).to_string()
            } else {
                "at least 2".into()
            }
        )));
    }
    if !certify_no_inj_hom(&subject, 1)? {
        return Err(Error::HypothesisViolated("Hom(C, -) does not vanish".into()));
    }
    let op = CoxeterOperator::new(p)?;
    let y = op.apply(&CoxInput::Sparse(n.dim_vector()), cox)?;
    Ok(Translate::Dimension(y.to_sparse()?.ok_or(Error::NotInDomain)?))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TauDimensionCheck {
    pub holds: bool,
    pub lhs: SparseVector,
    pub rhs: SparseVector,
}

/// Compares `dim τN` (comodule level) with `Φ(dim N)`.
pub fn verify_tau_dimension(n: &Comodule, margin: usize) -> Result<TauDimensionCheck> {
    let p = n.presentation();
    require_quiver(p, "the comodule side of the Coxeter formula")?;
    if !certify_no_inj_hom(&n.dual(), 1)? {
        return Err(Error::HypothesisViolated(
            "Hom(C, DN) is not zero: N has a projective summand".into(),
        ));
    }
    let lhs = tau_module(n, TauDirection::Tau, margin)?.dim_vector();
    let op = CoxeterOperator::new(p)?;
    let image = op.apply(&CoxInput::Sparse(n.dim_vector()), CoxDirection::Forward)?;
    let rhs = match image.to_sparse()? {
        Some(v) => v,
        None => {
            let mut seed = n.support();
            seed.extend(lhs.support().cloned());
            let region = p.convex_hull(&p.ball(&seed, margin.max(1))?)?;
            image.restrict(&p.window_of(region)?)?
        }
    };
    Ok(TauDimensionCheck {
        holds: lhs == rhs,
        lhs,
        rhs,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeshDirection {
    EndingAt,
    StartingFrom,
}

#[derive(Debug, Clone)]
pub struct MeshTerm {
    pub dim: SparseVector,
    pub label: Option<String>,
    /// Present for closed-form meshes; knitted meshes carry dimensions only.
    pub module: Option<Comodule>,
}

impl MeshTerm {
    fn interval(iv: IntervalModule) -> MeshTerm {
        MeshTerm {
            dim: iv.dim_vector(),
            label: Some(iv.label()),
            module: Some(iv.comodule()),
        }
    }

    fn render(&self, order: &[VertexId]) -> String {
        self.label
            .clone()
            .unwrap_or_else(|| format!("({})", self.dim.to_literal(order)))
    }
}

/// `0 -> left -> ⊕ middle -> right -> 0`.
#[derive(Debug, Clone)]
pub struct MeshSequence {
    pub left: MeshTerm,
    pub middle: Vec<MeshTerm>,
    pub right: MeshTerm,
}

impl MeshSequence {
    /// `dim left - Σ dim middle + dim right`.
    pub fn defect(&self) -> SparseVector {
        let mut d = self.left.dim.add(&self.right.dim);
        for m in &self.middle {
            d = d.sub(&m.dim);
        }
        d
    }

    pub fn is_additive(&self) -> bool {
        self.defect().is_zero()
    }

    pub fn render(&self, order: &[VertexId]) -> String {
        let middle: Vec<String> = self.middle.iter().map(|m| m.render(order)).collect();
        format!(
            "0 -> {} -> {} -> {} -> 0",
            self.left.render(order),
            middle.join(" + "),
            self.right.render(order)
        )
    }
}

/// The almost split sequence ending at or starting from `n`: closed form for
/// intervals, otherwise read off a knitted fragment.
pub fn almost_split_mesh(n: &Comodule, direction: MeshDirection, knitted: Option<&ArFragment>) -> Result<MeshSequence> {
    require_quiver(n.presentation(), "almost split sequences")?;
    if let Some(iv) = IntervalModule::recognize(n)? {
        return interval_mesh(iv, direction);
    }
    if direction == MeshDirection::StartingFrom && min_inj_copresentation(n, DEFAULT_MARGIN)?.e1.is_empty() {
        return Err(Error::HypothesisViolated(
            "no almost split sequence starts at an injective".into(),
        ));
    }
    let fragment = knitted.ok_or(Error::NotInKnittedRegion)?;
    fragment.mesh(&n.dim_vector(), direction)
}

fn interval_mesh(iv: IntervalModule, direction: MeshDirection) -> Result<MeshSequence> {
    let make = |n: i64, m: i64| IntervalModule {
        family: iv.family,
        n,
        m,
    };
    let (left, right) = match direction {
        MeshDirection::EndingAt => (make(iv.n + 1, iv.m + 1), iv),
        MeshDirection::StartingFrom => {
            if iv.family == IntervalFamily::AInfinity && iv.n == 0 {
                return Err(Error::HypothesisViolated(format!("{} is injective", iv.label())));
            }
            (iv, make(iv.n - 1, iv.m - 1))
        }
    };
    let mut middle = vec![MeshTerm::interval(make(right.n, left.m))];
    if left.n <= right.m {
        middle.push(MeshTerm::interval(make(left.n, right.m)));
    }
    Ok(MeshSequence {
        left: MeshTerm::interval(left),
        middle,
        right: MeshTerm::interval(right),
    })
}

/// Where knitting starts.
#[derive(Debug, Clone)]
pub enum KnitStart {
    /// `E(j)` for the window vertices, with `E(j) -> E(k)` for each arrow
    /// `k -> j`.
    InjectiveSection,
    /// Intervals `I[a, b]` for `b` in the window and `a` its first vertex,
    /// with the epimorphisms `I[a, b+1] -> I[a, b]`.
    Ray,
    Seed(KnitSeed),
}

/// An explicit starting fragment. A node is complete when all arrows into
/// and out of it within the component are among `arrows`.
#[derive(Debug, Clone, Default)]
pub struct KnitSeed {
    pub nodes: Vec<(SparseVector, bool)>,
    pub arrows: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArNode {
    pub id: String,
    pub dim: SparseVector,
    pub label: Option<String>,
}

/// A piece of an Auslander-Reiten quiver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArFragment {
    pub nodes: Vec<ArNode>,
    /// Irreducible maps, repeated by multiplicity.
    pub arrows: Vec<(usize, usize)>,
    /// `(N, τN)`.
    pub tau_links: Vec<(usize, usize)>,
    order: Vec<VertexId>,
}

impl ArFragment {
    pub fn vertex_order(&self) -> &[VertexId] {
        &self.order
    }

    pub fn find(&self, dim: &SparseVector) -> Option<usize> {
        self.nodes.iter().position(|n| n.dim == *dim)
    }

    pub fn predecessors(&self, node: usize) -> Vec<usize> {
        self.arrows.iter().filter(|a| a.1 == node).map(|a| a.0).collect()
    }

    pub fn tau_of(&self, node: usize) -> Option<usize> {
        self.tau_links.iter().find(|l| l.0 == node).map(|l| l.1)
    }

    fn term(&self, i: usize) -> MeshTerm {
        MeshTerm {
            dim: self.nodes[i].dim.clone(),
            label: self.nodes[i].label.clone(),
            module: None,
        }
    }

    pub fn mesh(&self, dim: &SparseVector, direction: MeshDirection) -> Result<MeshSequence> {
        let node = self.find(dim).ok_or(Error::NotInKnittedRegion)?;
        let (end, start) = match direction {
            MeshDirection::EndingAt => (node, self.tau_of(node).ok_or(Error::NotInKnittedRegion)?),
            MeshDirection::StartingFrom => {
                let end = self
                    .tau_links
                    .iter()
                    .find(|l| l.1 == node)
                    .map(|l| l.0)
                    .ok_or(Error::NotInKnittedRegion)?;
                (end, node)
            }
        };
        Ok(MeshSequence {
            left: self.term(start),
            middle: self.predecessors(end).into_iter().map(|i| self.term(i)).collect(),
            right: self.term(end),
        })
    }

    /// `node`, `arrow` and `tau` lines.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for n in &self.nodes {
            let _ = write!(out, "node {} dim={}", n.id, n.dim.to_literal(&self.order));
            if let Some(l) = &n.label {
                let _ = write!(out, " label={l}");
            }
            out.push('\n');
        }
        for &(a, b) in &self.arrows {
            let _ = writeln!(out, "arrow {} {}", self.nodes[a].id, self.nodes[b].id);
        }
        for &(a, b) in &self.tau_links {
            let _ = writeln!(out, "tau {} {}", self.nodes[a].id, self.nodes[b].id);
        }
        out
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph ar {\n  rankdir=RL;\n");
        for n in &self.nodes {
            let dim = n.dim.to_literal(&self.order);
            let label = match &n.label {
                Some(l) => format!("{l}\\n{dim}"),
                None => dim,
            };
            let _ = writeln!(out, "  {} [label=\"{}\"];", n.id, label);
        }
        for &(a, b) in &self.arrows {
            let _ = writeln!(out, "  {} -> {};", self.nodes[a].id, self.nodes[b].id);
        }
        for &(a, b) in &self.tau_links {
            let _ = writeln!(
                out,
                "  {} -> {} [style=dashed, constraint=false];",
                self.nodes[a].id, self.nodes[b].id
            );
        }
        out.push_str("}\n");
        out
    }
}

struct KnitNode {
    dim: SparseVector,
    layer: usize,
    base: usize,
    complete: bool,
    resolved: bool,
    tau: Option<usize>,
}

struct Section {
    nodes: Vec<(SparseVector, bool)>,
    arrows: Vec<(usize, usize)>,
}

fn build_section(p: &Presentation, start: &KnitStart, window: &[VertexId]) -> Result<Section> {
    match start {
        KnitStart::Seed(seed) => Ok(Section {
            nodes: seed.nodes.clone(),
            arrows: seed.arrows.clone(),
        }),
        KnitStart::InjectiveSection => {
            let mut nodes = Vec::new();
            let mut arrows = Vec::new();
            for j in window {
                let dim = FormalInjective::new([j.clone()]).dim(p)?;
                let mut complete = true;
                for d in [Direction::In, Direction::Out] {
                    for (k, _) in p.neighbors(j, d)? {
                        complete &= window.contains(&k);
                    }
                }
                nodes.push((dim, complete));
            }
            for (a, j) in window.iter().enumerate() {
                for (k, mult) in p.neighbors(j, Direction::In)? {
                    if let Some(b) = window.iter().position(|w| *w == k) {
                        for _ in 0..mult {
                            arrows.push((a, b));
                        }
                    }
                }
            }
            Ok(Section { nodes, arrows })
        }
        KnitStart::Ray => {
            interval_family(p).ok_or_else(|| Error::Invalid("ray seeds exist for the linear families only".into()))?;
            let ends: Vec<i64> = window
                .iter()
                .map(|v| {
                    v.as_int()
                        .ok_or_else(|| Error::Invalid(format!("{v} is not an integer")))
                })
                .collect::<Result<_>>()?;
            let a = *ends.first().ok_or(Error::EmptyWindow)?;
            let nodes = ends
                .iter()
                .enumerate()
                .map(|(i, &b)| {
                    let dim = SparseVector::from_pairs((a..=b).map(|k| (VertexId::Int(k), 1i64)));
                    (dim, i + 1 < ends.len())
                })
                .collect();
            let arrows = (1..ends.len()).map(|i| (i, i - 1)).collect();
            Ok(Section { nodes, arrows })
        }
    }
}

/// Longest path from each node to a node without successors.
fn sink_distances(n: usize, arrows: &[(usize, usize)]) -> Result<Vec<usize>> {
    let mut succ = vec![Vec::new(); n];
    for &(a, b) in arrows {
        succ[a].push(b);
    }
    let mut memo: Vec<Option<usize>> = vec![None; n];
    let mut state = vec![0u8; n];
    fn visit(v: usize, succ: &[Vec<usize>], memo: &mut [Option<usize>], state: &mut [u8]) -> Result<usize> {
        if let Some(d) = memo[v] {
            return Ok(d);
        }
        if state[v] == 1 {
            return Err(Error::Invalid("starting section has an oriented cycle".into()));
        }
        state[v] = 1;
        let mut best = 0;
        for &w in &succ[v] {
            best = best.max(visit(w, succ, memo, state)? + 1);
        }
        memo[v] = Some(best);
        Ok(best)
    }
    (0..n).map(|v| visit(v, &succ, &mut memo, &mut state)).collect()
}

/// Knits from `section` until `steps` meshes are completed. Returns the
/// fragment or the number of meshes completed before getting stuck.
fn knit_section(p: &Presentation, section: Section, steps: usize) -> Result<std::result::Result<ArFragment, usize>> {
    let dist = sink_distances(section.nodes.len(), &section.arrows)?;
    let mut nodes: Vec<KnitNode> = section
        .nodes
        .into_iter()
        .enumerate()
        .map(|(i, (dim, complete))| KnitNode {
            dim,
            layer: 0,
            base: i,
            complete,
            resolved: false,
            tau: None,
        })
        .collect();
    let mut arrows = section.arrows;
    let mut tau_links = Vec::new();
    let mut completed = 0;
    while completed < steps {
        let mut best: Option<((usize, usize, usize), usize)> = None;
        for (i, node) in nodes.iter().enumerate() {
            if node.resolved || !node.complete {
                continue;
            }
            let ready = arrows.iter().filter(|a| a.0 == i).all(|&(_, z)| nodes[z].resolved);
            if !ready {
                continue;
            }
            let key = (node.layer + dist[node.base], node.layer, node.base);
            if best.as_ref().is_none_or(|(k, _)| key < *k) {
                best = Some((key, i));
            }
        }
        let Some((_, x)) = best else {
            return Ok(Err(completed));
        };
        let preds: Vec<usize> = arrows.iter().filter(|a| a.1 == x).map(|a| a.0).collect();
        let mut dim = nodes[x].dim.neg();
        for &pr in &preds {
            dim = dim.add(&nodes[pr].dim);
        }
        nodes[x].resolved = true;
        if dim.iter().all(|(_, c)| !c.is_positive()) {
            // Projective: no mesh ends here.
            continue;
        }
        if !dim.is_nonnegative() {
            return Err(Error::Invalid(format!(
                "mesh additivity gives a vector with mixed signs: {}",
                dim.to_literal(&[])
            )));
        }
        let t = nodes.len();
        nodes.push(KnitNode {
            dim,
            layer: nodes[x].layer + 1,
            base: nodes[x].base,
            complete: true,
            resolved: false,
            tau: None,
        });
        nodes[x].tau = Some(t);
        for &pr in &preds {
            arrows.push((t, pr));
        }
        tau_links.push((x, t));
        completed += 1;
    }
    let mut order: Vec<VertexId> = Vec::new();
    for n in &nodes {
        for v in n.dim.support() {
            if !order.contains(v) {
                order.push(v.clone());
            }
        }
    }
    p.sort_vertices(&mut order);
    let out_nodes = nodes
        .iter()
        .enumerate()
        .map(|(i, n)| ArNode {
            id: format!("n{i}"),
            label: interval_label(p, &n.dim),
            dim: n.dim.clone(),
        })
        .collect();
    Ok(Ok(ArFragment {
        nodes: out_nodes,
        arrows,
        tau_links,
        order,
    }))
}

/// Knits the component through `start` by mesh additivity. Without a
/// window, the section grows one vertex at a time until `steps` meshes fit.
pub fn knit_component(
    p: &Presentation,
    start: &KnitStart,
    steps: usize,
    window: Option<&IndexWindow>,
) -> Result<ArFragment> {
    require_quiver(p, "knitting")?;
    let fixed: Option<Vec<VertexId>> = match (window, p.finite_vertices(), start) {
        (_, _, KnitStart::Seed(_)) => Some(Vec::new()),
        (Some(w), _, _) => Some(w.vertices().to_vec()),
        (None, Some(mut all), _) => {
            p.sort_vertices(&mut all);
            Some(all)
        }
        (None, None, _) => None,
    };
    if let Some(w) = fixed {
        return knit_section(p, build_section(p, start, &w)?, steps)?.map_err(|completed| Error::KnittingStuck {
            completed,
            requested: steps,
        });
    }
    let first = match p.family_kind() {
        Family::DInfinity => -1,
        _ => 0,
    };
    let limit = first + 4 * steps as i64 + 8;
    let mut last = 0;
    for hi in first + 1..=limit {
        let w = p.window_between(&VertexId::Int(first), &VertexId::Int(hi))?;
        match knit_section(p, build_section(p, start, w.vertices())?, steps)? {
            Ok(f) => return Ok(f),
            Err(completed) => last = completed,
        }
    }
    Err(Error::KnittingStuck {
        completed: last,
        requested: steps,
    })
}

/// Dimension vectors of a knitted fragment keyed by label, for lookups.
pub fn labeled_nodes(f: &ArFragment) -> BTreeMap<String, SparseVector> {
    f.nodes
        .iter()
        .filter_map(|n| n.label.clone().map(|l| (l, n.dim.clone())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;

    fn v(n: i64) -> VertexId {
        VertexId::Int(n)
    }

    fn lit(s: &str) -> SparseVector {
        SparseVector::parse_literal(s).unwrap()
    }

    fn iv(n: i64, m: i64) -> Comodule {
        IntervalModule::new(IntervalFamily::AInfinity, n, m).unwrap().comodule()
    }

    fn a2() -> Presentation {
        parse_presentation("kind quiver\narrow 0 1").unwrap()
    }

    #[test]
    fn dims_and_socles() {
        assert_eq!(iv(1, 2).dim_vector(), lit("1@1,1@2"));
        assert!(Comodule::zero(&Presentation::a_infinity()).dim_vector().is_zero());
        let e3 = Comodule::injective(&Presentation::a_infinity(), &v(3)).unwrap();
        assert_eq!(e3.dim_vector(), lit("1@0,1@1,1@2,1@3"));
        assert!(e3.is_isomorphic(&iv(0, 3)).unwrap());
        assert_eq!(socle(&iv(2, 5)).dims, lit("1@5"));
        let sum = iv(0, 1).direct_sum(&iv(1, 2)).unwrap();
        let s = socle(&sum);
        assert_eq!(s.dims, lit("1@1,1@2"));
        assert_eq!(socle(&s.module).dims, s.dims);
    }

    #[test]
    fn copresentations() {
        let c = min_inj_copresentation(&iv(1, 2), DEFAULT_MARGIN).unwrap();
        assert_eq!(c.e0, FormalInjective::new([v(2)]));
        assert_eq!(c.e1, FormalInjective::new([v(0)]));
        assert_eq!(c.map.len(), 1);
        assert_eq!(c.map[0].path, vec![v(0), v(1), v(2)]);
        let s1 = Comodule::simple(&Presentation::a_infinity(), &v(1)).unwrap();
        let c = min_inj_copresentation(&s1, DEFAULT_MARGIN).unwrap();
        assert_eq!(
            (c.e0, c.e1),
            (FormalInjective::new([v(1)]), FormalInjective::new([v(0)]))
        );
        let c = min_inj_copresentation(&iv(0, 4), DEFAULT_MARGIN).unwrap();
        assert!(c.e1.is_empty());
    }

    #[test]
    fn narrow_margin_is_rejected() {
        let z = IntervalModule::new(IntervalFamily::ZAInfinity, 1, 2)
            .unwrap()
            .comodule();
        assert!(matches!(
            min_inj_copresentation(&z, 0),
            Err(Error::WindowInsufficient(_))
        ));
    }

    #[test]
    fn transpose_examples() {
        let t = transpose_tr(&iv(1, 2), DEFAULT_MARGIN).unwrap();
        assert_eq!(t.dim, lit("1@0,1@1"));
        let w = Presentation::a_infinity().window("0..5").unwrap();
        assert_eq!(t.formula.restrict(&w).unwrap(), lit("1@0,1@1"));
        let s1 = Comodule::simple(&a2(), &v(1)).unwrap();
        assert_eq!(transpose_tr(&s1, 1).unwrap().dim, lit("1@0"));
        let e2 = Comodule::injective(&Presentation::a_infinity(), &v(2)).unwrap();
        assert!(matches!(transpose_tr(&e2, 2), Err(Error::HomCNotZero(_))));
    }

    #[test]
    fn hom_certificates() {
        assert!(certify_no_inj_hom(&iv(1, 2), 1).unwrap());
        let e2 = Comodule::injective(&Presentation::a_infinity(), &v(2)).unwrap();
        assert!(!certify_no_inj_hom(&e2, 1).unwrap());
        let s0 = Comodule::simple(&a2(), &v(0)).unwrap();
        assert!(!certify_no_inj_hom(&s0, 1).unwrap());
    }

    #[test]
    fn translates_of_intervals() {
        let up = tau_module(&iv(2, 4), TauDirection::TauMinus, 2).unwrap();
        assert!(up.is_isomorphic(&iv(1, 3)).unwrap());
        let down = tau_module(&iv(1, 3), TauDirection::Tau, 2).unwrap();
        assert!(down.is_isomorphic(&iv(2, 4)).unwrap());
        let e = Comodule::injective(&Presentation::a_infinity(), &v(3)).unwrap();
        assert!(tau_module(&e, TauDirection::TauMinus, 2).unwrap().is_zero());
        let z = IntervalFamily::ZAInfinity;
        let n = IntervalModule::new(z, -3, 1).unwrap();
        let t = tau_module(&n.comodule(), TauDirection::Tau, 2).unwrap();
        assert_eq!(t.dim_vector(), IntervalModule::new(z, -2, 2).unwrap().dim_vector());
    }

    #[test]
    fn translates_in_finite_a2() {
        let p = a2();
        let s1 = Comodule::simple(&p, &v(1)).unwrap();
        let s0 = Comodule::simple(&p, &v(0)).unwrap();
        assert!(tau_module(&s1, TauDirection::TauMinus, 1)
            .unwrap()
            .is_isomorphic(&s0)
            .unwrap());
        assert!(tau_module(&s0, TauDirection::Tau, 1)
            .unwrap()
            .is_isomorphic(&s1)
            .unwrap());
    }

    #[test]
    fn poset_translate_by_dimension() {
        let p = parse_presentation("kind poset\ncover a b\ncover b c").unwrap();
        let sb = Comodule::simple(&p, &"b".into()).unwrap();
        let t = tau(&sb, TauDirection::Tau, 1).unwrap();
        assert!(matches!(t, Translate::Dimension(_)));
        let hq = p.hasse_quiver().unwrap();
        let sq = Comodule::simple(&hq, &"b".into()).unwrap();
        let tq = tau(&sq, TauDirection::Tau, 1).unwrap();
        assert_eq!(t.dim_vector(), tq.dim_vector());
    }

    #[test]
    fn tau_dimension_check_on_interval() {
        let c = verify_tau_dimension(&iv(1, 2), 2).unwrap();
        assert!(c.holds);
        assert_eq!(c.lhs, lit("1@2,1@3"));
    }

    #[test]
    fn interval_meshes() {
        let m = almost_split_mesh(&iv(0, 1), MeshDirection::EndingAt, None).unwrap();
        assert_eq!(m.render(&[]), "0 -> I[1,2] -> I[0,2] + I[1,1] -> I[0,1] -> 0");
        let m = almost_split_mesh(&iv(0, 0), MeshDirection::EndingAt, None).unwrap();
        assert_eq!(m.render(&[]), "0 -> I[1,1] -> I[0,1] -> I[0,0] -> 0");
        assert!(m.is_additive());
        assert!(almost_split_mesh(&iv(0, 3), MeshDirection::StartingFrom, None).is_err());
    }

    #[test]
    fn nakayama() {
        let e = FormalInjective::new([v(0)]);
        assert_eq!(nakayama_dim(&a2(), &e).unwrap(), lit("1@0,1@1"));
        assert!(nakayama_dim(&a2(), &FormalInjective::default()).unwrap().is_zero());
        let a3 = parse_presentation("kind quiver\narrow 0 1\narrow 1 2").unwrap();
        assert_eq!(
            nakayama_dim(&a3, &FormalInjective::new([v(1)])).unwrap(),
            lit("1@1,1@2")
        );
        let e = FormalInjective::new([v(0)]);
        assert!(matches!(
            nakayama_dim(&Presentation::a_infinity(), &e),
            Err(Error::InfiniteDimensional(_))
        ));
    }

    #[test]
    fn knitting_a_infinity() {
        let f = knit_component(&Presentation::a_infinity(), &KnitStart::InjectiveSection, 6, None).unwrap();
        let labels: Vec<String> = f.nodes.iter().filter_map(|n| n.label.clone()).collect();
        assert_eq!(
            labels,
            ["I[0,0]", "I[0,1]", "I[0,2]", "I[0,3]", "I[1,1]", "I[1,2]", "I[2,2]", "I[1,3]", "I[2,3]", "I[3,3]"]
        );
        let m = f.mesh(&lit("1@0,1@1"), MeshDirection::EndingAt).unwrap();
        assert!(m.is_additive());
        assert_eq!(m.left.label.as_deref(), Some("I[1,2]"));
    }

    #[test]
    fn knitting_d_infinity() {
        let d = Presentation::d_infinity();
        let f = knit_component(&d, &KnitStart::InjectiveSection, 4, None).unwrap();
        let taus: Vec<SparseVector> = f.tau_links.iter().map(|&(_, t)| f.nodes[t].dim.clone()).collect();
        assert_eq!(taus[0], lit("1@-1,1@0,2@1,1@2"));
        assert!(taus.contains(&lit("1@-1,1@1,1@2")));
        assert!(taus.contains(&lit("1@-1,1@0,2@1,1@2,1@3")));
    }

    #[test]
    fn knitting_stuck_in_small_window() {
        let a = Presentation::a_infinity();
        let w = a.window("0..2").unwrap();
        assert!(matches!(
            knit_component(&a, &KnitStart::InjectiveSection, 6, Some(&w)),
            Err(Error::KnittingStuck {
                completed: 3,
                requested: 6
            })
        ));
    }

    #[test]
    fn knitting_za_infinity_ray() {
        let f = knit_component(&Presentation::za_infinity(), &KnitStart::Ray, 4, None).unwrap();
        let labels = labeled_nodes(&f);
        assert!(labels.contains_key("I[1,1]"));
        assert!(labels.contains_key("I[1,2]"));
        assert!(labels.contains_key("I[2,2]"));
    }
}
