//! Finite-dimensional representations of finite quivers over exact rationals.
//!
//! Comodules over a path coalgebra are representations of its quiver; over an
//! incidence coalgebra they are representations of the Hasse quiver whose
//! square diagrams commute. Both are handled here; the difference only shows
//! in the model of the indecomposable injectives.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{q, Mat, Q};
use crate::presentation::{Direction, Kind, Presentation};
use crate::vertex::{SparseVector, VertexId};

/// How the injective `E(j)` looks as a representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InjModel {
    /// Basis at `x` is the set of paths `x -> j`; an arrow strips itself off
    /// the front of a path and kills paths not starting with it.
    Path,
    /// Basis at `x` is one vector when `x <= j`; arrows act by identity.
    Poset,
}

/// A finite quiver, usually a convex piece of a presentation.
#[derive(Debug, Clone)]
pub struct FiniteQuiver {
    vertices: Vec<VertexId>,
    index: HashMap<VertexId, usize>,
    arrows: Vec<(usize, usize)>,
    out_arrows: Vec<Vec<usize>>,
    model: InjModel,
}

pub type Path = Vec<usize>;

impl FiniteQuiver {
    pub fn new(vertices: Vec<VertexId>, arrows: Vec<(usize, usize)>, model: InjModel) -> FiniteQuiver {
        let n = vertices.len();
        let index = vertices.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        let mut out_arrows = vec![Vec::new(); n];
        for (a, &(s, _)) in arrows.iter().enumerate() {
            out_arrows[s].push(a);
        }
        FiniteQuiver {
            vertices,
            index,
            arrows,
            out_arrows,
            model,
        }
    }

    /// The full subquiver of `p` on `region` (Hasse quiver for posets).
    /// `region` should be convex for the injectives to be restrictions of
    /// the ambient ones.
    pub fn restrict(p: &Presentation, region: &[VertexId]) -> Result<FiniteQuiver> {
        let index: HashMap<&VertexId, usize> = region.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let mut arrows = Vec::new();
        for (i, v) in region.iter().enumerate() {
            for (w, mult) in p.neighbors(v, Direction::Out)? {
                if let Some(&j) = index.get(&w) {
                    for _ in 0..mult {
                        arrows.push((i, j));
                    }
                }
            }
        }
        let model = match p.kind() {
            Kind::Quiver => InjModel::Path,
            Kind::Poset => InjModel::Poset,
        };
        Ok(FiniteQuiver::new(region.to_vec(), arrows, model))
    }

    pub fn opposite(&self) -> FiniteQuiver {
        let arrows = self.arrows.iter().map(|&(s, t)| (t, s)).collect();
        FiniteQuiver::new(self.vertices.clone(), arrows, self.model)
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

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn model(&self) -> InjModel {
        self.model
    }

    pub fn index_of(&self, v: &VertexId) -> Option<usize> {
        self.index.get(v).copied()
    }

    /// Vertices with an arrow to or from a vertex outside this quiver in `p`.
    pub fn boundary(&self, p: &Presentation) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for (i, v) in self.vertices.iter().enumerate() {
            let mut leaks = false;
            for d in [Direction::In, Direction::Out] {
                for (w, _) in p.neighbors(v, d)? {
                    if !self.index.contains_key(&w) {
                        leaks = true;
                    }
                }
            }
            if leaks {
                out.push(i);
            }
        }
        Ok(out)
    }

    /// Basis of `E(j)_x` for every `x`: all paths `x -> j`, or a single
    /// representative path in the poset model. The trivial path comes first.
    pub fn inj_basis(&self, j: usize) -> Vec<Vec<Path>> {
        let mut memo: Vec<Option<Vec<Path>>> = vec![None; self.len()];
        for x in 0..self.len() {
            self.paths_to(x, j, &mut memo);
        }
        let mut basis: Vec<Vec<Path>> = memo.into_iter().map(Option::unwrap).collect();
        if self.model == InjModel::Poset {
            for b in &mut basis {
                b.truncate(1);
            }
        }
        basis
    }

    fn paths_to(&self, x: usize, j: usize, memo: &mut Vec<Option<Vec<Path>>>) -> Vec<Path> {
        if let Some(p) = &memo[x] {
            return p.clone();
        }
        let mut out = Vec::new();
        if x == j {
            out.push(Vec::new());
        }
        for &a in &self.out_arrows[x] {
            let t = self.arrows[a].1;
            for tail in self.paths_to(t, j, memo) {
                let mut p = vec![a];
                p.extend(tail);
                out.push(p);
            }
        }
        memo[x] = Some(out.clone());
        out
    }

    pub fn zero_rep(&self) -> Rep {
        Rep {
            dims: vec![0; self.len()],
            maps: self.arrows.iter().map(|_| Mat::zeros(0, 0)).collect(),
        }
    }

    pub fn simple(&self, j: usize) -> Rep {
        let mut dims = vec![0; self.len()];
        dims[j] = 1;
        self.rep_with_zero_maps(dims)
    }

    pub fn rep_with_zero_maps(&self, dims: Vec<usize>) -> Rep {
        let maps = self.arrows.iter().map(|&(s, t)| Mat::zeros(dims[t], dims[s])).collect();
        Rep { dims, maps }
    }

    /// The indecomposable injective with socle `S(j)`.
    pub fn injective(&self, j: usize) -> Rep {
        let basis = self.inj_basis(j);
        let dims: Vec<usize> = basis.iter().map(Vec::len).collect();
        let mut rep = self.rep_with_zero_maps(dims);
        for (a, &(s, t)) in self.arrows.iter().enumerate() {
            for (c, p) in basis[s].iter().enumerate() {
                let target = match self.model {
                    InjModel::Path if p.first() == Some(&a) => basis[t].iter().position(|r| r.as_slice() == &p[1..]),
                    InjModel::Path => None,
                    InjModel::Poset => (!basis[t].is_empty()).then_some(0),
                };
                if let Some(r) = target {
                    rep.maps[a][(r, c)] = q(1);
                }
            }
        }
        rep
    }

    /// The morphism `E(j) -> E(k)` attached to a path `k -> j`: it strips the
    /// path off the end of basis paths.
    pub fn inj_morphism(&self, j: usize, k: usize, path: &[usize]) -> Vec<Mat> {
        let bj = self.inj_basis(j);
        let bk = self.inj_basis(k);
        let mut out = Vec::with_capacity(self.len());
        for x in 0..self.len() {
            let mut m = Mat::zeros(bk[x].len(), bj[x].len());
            for (c, p) in bj[x].iter().enumerate() {
                let target = match self.model {
                    InjModel::Path => {
                        if p.len() >= path.len() && p.ends_with(path) {
                            let head = &p[..p.len() - path.len()];
                            bk[x].iter().position(|r| r.as_slice() == head)
                        } else {
                            None
                        }
                    }
                    InjModel::Poset => (!bk[x].is_empty()).then_some(0),
                };
                if let Some(r) = target {
                    m[(r, c)] = q(1);
                }
            }
            out.push(m);
        }
        out
    }

    /// The linear map `M_x -> M_y` of a path `x -> y`.
    pub fn path_map(&self, m: &Rep, start: usize, path: &[usize]) -> Mat {
        let mut acc = Mat::identity(m.dims[start]);
        for &a in path {
            acc = m.maps[a].mul(&acc);
        }
        acc
    }

    pub fn is_morphism(&self, m: &Rep, n: &Rep, f: &[Mat]) -> bool {
        self.arrows
            .iter()
            .enumerate()
            .all(|(a, &(s, t))| n.maps[a].mul(&f[s]) == f[t].mul(&m.maps[a]))
    }

    /// Socle basis at each vertex: the common kernel of all outgoing maps.
    pub fn socle(&self, m: &Rep) -> Vec<Mat> {
        (0..self.len())
            .map(|x| {
                let outs: Vec<&Mat> = self.out_arrows[x].iter().map(|&a| &m.maps[a]).collect();
                if outs.is_empty() {
                    return Mat::identity(m.dims[x]);
                }
                let rows: usize = outs.iter().map(|o| o.rows()).sum();
                if rows == 0 {
                    return Mat::identity(m.dims[x]);
                }
                Mat::vstack(&outs, m.dims[x]).kernel()
            })
            .collect()
    }

    pub fn socle_dims(&self, m: &Rep) -> Vec<usize> {
        self.socle(m).iter().map(Mat::cols).collect()
    }

    /// The socle as a subrepresentation with its inclusion.
    pub fn socle_rep(&self, m: &Rep) -> (Rep, Vec<Mat>) {
        let soc = self.socle(m);
        let dims = soc.iter().map(Mat::cols).collect();
        (self.rep_with_zero_maps(dims), soc)
    }

    pub fn direct_sum_of_injectives(&self, summands: &[usize]) -> InjectiveSum {
        let parts: Vec<Rep> = summands.iter().map(|&j| self.injective(j)).collect();
        let mut offsets = vec![vec![0; self.len()]; summands.len()];
        let mut dims = vec![0; self.len()];
        for (s, part) in parts.iter().enumerate() {
            for x in 0..self.len() {
                offsets[s][x] = dims[x];
                dims[x] += part.dims[x];
            }
        }
        let mut rep = self.rep_with_zero_maps(dims);
        for (s, part) in parts.iter().enumerate() {
            for (a, &(src, tgt)) in self.arrows.iter().enumerate() {
                let m = &part.maps[a];
                for r in 0..m.rows() {
                    for c in 0..m.cols() {
                        rep.maps[a][(offsets[s][tgt] + r, offsets[s][src] + c)] = m[(r, c)].clone();
                    }
                }
            }
        }
        InjectiveSum {
            summands: summands.to_vec(),
            rep,
            offsets,
        }
    }

    /// Injective envelope `M -> E` with `soc E = soc M`.
    pub fn envelope(&self, m: &Rep) -> (InjectiveSum, Vec<Mat>) {
        let soc = self.socle(m);
        let mut summands = Vec::new();
        // Functionals on M_j extending a dual basis of soc_j M.
        let mut functionals: Vec<Vec<Q>> = Vec::new();
        for j in 0..self.len() {
            let s = &soc[j];
            if s.cols() == 0 {
                continue;
            }
            let (comp, _) = s.complement();
            let full = Mat::hstack(&[s, &comp], m.dims[j]);
            let inv = full.inverse().expect("completed basis");
            for k in 0..s.cols() {
                summands.push(j);
                functionals.push((0..m.dims[j]).map(|c| inv[(k, c)].clone()).collect());
            }
        }
        let e = self.direct_sum_of_injectives(&summands);
        let bases: HashMap<usize, Vec<Vec<Path>>> = summands.iter().map(|&j| (j, self.inj_basis(j))).collect();
        let mut iota = Vec::with_capacity(self.len());
        for x in 0..self.len() {
            let mut f = Mat::zeros(e.rep.dims[x], m.dims[x]);
            for (s, &j) in summands.iter().enumerate() {
                for (b, path) in bases[&j][x].iter().enumerate() {
                    let along = self.path_map(m, x, path);
                    for c in 0..m.dims[x] {
                        let mut v = Q::from_integer(0.into());
                        for r in 0..m.dims[j] {
                            v += &functionals[s][r] * &along[(r, c)];
                        }
                        f[(e.offsets[s][x] + b, c)] = v;
                    }
                }
            }
            iota.push(f);
        }
        (e, iota)
    }

    /// Cokernel of an injective morphism `sub -> big` with the projection.
    pub fn cokernel(&self, big: &Rep, incl: &[Mat]) -> (Rep, Vec<Mat>) {
        let mut sections = Vec::with_capacity(self.len());
        let mut projections = Vec::with_capacity(self.len());
        for x in 0..self.len() {
            let image = incl[x].column_basis();
            let (comp, proj) = if big.dims[x] == 0 {
                (Mat::zeros(0, 0), Mat::zeros(0, 0))
            } else {
                image.complement()
            };
            sections.push(comp);
            projections.push(proj);
        }
        let dims: Vec<usize> = sections.iter().map(Mat::cols).collect();
        let mut rep = self.rep_with_zero_maps(dims);
        for (a, &(s, t)) in self.arrows.iter().enumerate() {
            if rep.dims[s] > 0 && rep.dims[t] > 0 {
                rep.maps[a] = projections[t].mul(&big.maps[a]).mul(&sections[s]);
            }
        }
        let proj = (0..self.len())
            .map(|x| {
                if big.dims[x] == 0 {
                    Mat::zeros(0, 0)
                } else {
                    projections[x].clone()
                }
            })
            .collect();
        (rep, proj)
    }

    /// Kernel of a morphism `f: m -> n`, with its inclusion into `m`.
    pub fn kernel(&self, m: &Rep, f: &[Mat]) -> (Rep, Vec<Mat>) {
        let incl: Vec<Mat> = (0..self.len())
            .map(|x| {
                if m.dims[x] == 0 {
                    Mat::zeros(0, 0)
                } else if f[x].rows() == 0 {
                    Mat::identity(m.dims[x])
                } else {
                    f[x].kernel()
                }
            })
            .collect();
        let dims: Vec<usize> = incl.iter().map(Mat::cols).collect();
        let mut rep = self.rep_with_zero_maps(dims);
        for (a, &(s, t)) in self.arrows.iter().enumerate() {
            if rep.dims[s] > 0 && rep.dims[t] > 0 {
                let image = m.maps[a].mul(&incl[s]);
                rep.maps[a] = incl[t].solve(&image).expect("kernel is a subrepresentation");
            }
        }
        (rep, incl)
    }

    /// A basis of `Hom(m, n)`.
    pub fn hom_basis(&self, m: &Rep, n: &Rep) -> Vec<Vec<Mat>> {
        // Unknowns: entries of f_x (n_x by m_x), laid out vertex after vertex.
        let mut offset = vec![0; self.len()];
        let mut total = 0;
        for x in 0..self.len() {
            offset[x] = total;
            total += n.dims[x] * m.dims[x];
        }
        if total == 0 {
            return Vec::new();
        }
        let var = |x: usize, r: usize, c: usize| offset[x] + r * m.dims[x] + c;
        let mut rows: Vec<Vec<Q>> = Vec::new();
        for (a, &(s, t)) in self.arrows.iter().enumerate() {
            // (N_a f_s - f_t M_a)[r][c] = 0
            for r in 0..n.dims[t] {
                for c in 0..m.dims[s] {
                    let mut row = vec![q(0); total];
                    for k in 0..n.dims[s] {
                        row[var(s, k, c)] += &n.maps[a][(r, k)];
                    }
                    for k in 0..m.dims[t] {
                        row[var(t, r, k)] -= &m.maps[a][(k, c)];
                    }
                    rows.push(row);
                }
            }
        }
        let kernel = if rows.is_empty() {
            Mat::identity(total)
        } else {
            Mat::from_rows(rows).kernel()
        };
        (0..kernel.cols())
            .map(|k| {
                (0..self.len())
                    .map(|x| {
                        let mut f = Mat::zeros(n.dims[x], m.dims[x]);
                        for r in 0..n.dims[x] {
                            for c in 0..m.dims[x] {
                                f[(r, c)] = kernel[(var(x, r, c), k)].clone();
                            }
                        }
                        f
                    })
                    .collect()
            })
            .collect()
    }

    pub fn hom_dim(&self, m: &Rep, n: &Rep) -> usize {
        self.hom_basis(m, n).len()
    }

    /// Isomorphism test: equal dimensions and a generic homomorphism that is
    /// invertible at every vertex. Random combinations are seeded, so the
    /// answer is deterministic.
    pub fn is_isomorphic(&self, m: &Rep, n: &Rep) -> bool {
        if m.dims != n.dims {
            return false;
        }
        if m.dims.iter().all(|&d| d == 0) {
            return true;
        }
        let basis = self.hom_basis(m, n);
        if basis.is_empty() {
            return false;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..16 {
            let coeffs: Vec<Q> = basis.iter().map(|_| q(rng.gen_range(-7..=7))).collect();
            let ok = (0..self.len()).all(|x| {
                let mut f = Mat::zeros(n.dims[x], m.dims[x]);
                for (b, c) in basis.iter().zip(&coeffs) {
                    f = f.add(&b[x].scale(c));
                }
                f.rank() == m.dims[x]
            });
            if ok {
                return true;
            }
        }
        false
    }

    /// The dual representation, living on the opposite quiver.
    pub fn dual(&self, m: &Rep) -> Rep {
        Rep {
            dims: m.dims.clone(),
            maps: m.maps.iter().map(Mat::transpose).collect(),
        }
    }

    /// Bass numbers of a minimal injective resolution: entry `[k][x]` is the
    /// multiplicity of `E(x)` in degree `k`. The flag is true when the
    /// resolution ended (a zero cosyzygy) within `max_degree`.
    pub fn injective_resolution(&self, m: &Rep, max_degree: usize) -> (Vec<Vec<usize>>, bool) {
        let mut terms = Vec::new();
        let mut current = m.clone();
        for _ in 0..=max_degree {
            if current.is_zero() {
                return (terms, true);
            }
            terms.push(self.socle_dims(&current));
            let (e, iota) = self.envelope(&current);
            current = self.cokernel(&e.rep, &iota).0;
        }
        let done = current.is_zero();
        (terms, done)
    }

    pub fn dim_vector(&self, m: &Rep) -> SparseVector {
        SparseVector::from_pairs(self.vertices.iter().zip(&m.dims).map(|(v, &d)| (v.clone(), d as i64)))
    }

    /// Minimal injective copresentation `0 -> M -> E0 -> E1`.
    pub fn copresentation(&self, m: &Rep) -> Copresentation {
        let (e0, iota0) = self.envelope(m);
        let (coker, proj) = self.cokernel(&e0.rep, &iota0);
        let (e1, iota1) = self.envelope(&coker);
        let g = (0..self.len())
            .map(|x| {
                if e1.rep.dims[x] == 0 || e0.rep.dims[x] == 0 || coker.dims[x] == 0 {
                    Mat::zeros(e1.rep.dims[x], e0.rep.dims[x])
                } else {
                    iota1[x].mul(&proj[x])
                }
            })
            .collect();
        Copresentation { e0, iota0, e1, g }
    }

    /// The transpose: kernel of the map induced by the copresentation between
    /// the injectives of the opposite quiver. Returns a representation of the
    /// opposite quiver.
    pub fn transpose_rep(&self, cop: &Copresentation) -> Rep {
        let op = self.opposite();
        let n0 = op.direct_sum_of_injectives(&cop.e0.summands);
        let n1 = op.direct_sum_of_injectives(&cop.e1.summands);
        let mut f: Vec<Mat> = (0..self.len())
            .map(|x| Mat::zeros(n0.rep.dims[x], n1.rep.dims[x]))
            .collect();
        for (t, &k) in cop.e1.summands.iter().enumerate() {
            for (s, &j) in cop.e0.summands.iter().enumerate() {
                let bj = self.inj_basis(j);
                // Coefficient of path q: k -> j, read at the trivial path of E(k).
                for (b, path) in bj[k].iter().enumerate() {
                    let c = &cop.g[k][(cop.e1.offsets[t][k], cop.e0.offsets[s][k] + b)];
                    if *c == q(0) {
                        continue;
                    }
                    let reversed: Path = path.iter().rev().copied().collect();
                    let block = op.inj_morphism(k, j, &reversed);
                    for x in 0..self.len() {
                        for r in 0..block[x].rows() {
                            for cc in 0..block[x].cols() {
                                let v = &block[x][(r, cc)] * c;
                                f[x][(n0.offsets[s][x] + r, n1.offsets[t][x] + cc)] += v;
                            }
                        }
                    }
                }
            }
        }
        op.kernel(&n1.rep, &f).0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rep {
    pub dims: Vec<usize>,
    /// One matrix per arrow, `dims[target] x dims[source]`.
    pub maps: Vec<Mat>,
}

impl Rep {
    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }
}

/// A direct sum of indecomposable injectives with its block layout.
#[derive(Debug, Clone)]
pub struct InjectiveSum {
    /// Socle vertex of each summand.
    pub summands: Vec<usize>,
    pub rep: Rep,
    /// `offsets[s][x]`: first coordinate of summand `s` at vertex `x`.
    pub offsets: Vec<Vec<usize>>,
}

#[derive(Debug, Clone)]
pub struct Copresentation {
    pub e0: InjectiveSum,
    pub iota0: Vec<Mat>,
    pub e1: InjectiveSum,
    /// `E0 -> E1` at each vertex.
    pub g: Vec<Mat>,
}

/// Interval modules, indecomposable injectives and similar test fixtures on
/// linearly ordered quivers.
pub fn interval_rep(quiver: &FiniteQuiver, support: &[usize]) -> Result<Rep> {
    let mut dims = vec![0; quiver.len()];
    for &x in support {
        dims[x] = 1;
    }
    let mut rep = quiver.rep_with_zero_maps(dims);
    for (a, &(s, t)) in quiver.arrows.iter().enumerate() {
        if rep.dims[s] == 1 && rep.dims[t] == 1 {
            rep.maps[a] = Mat::identity(1);
        }
    }
    if support.is_empty() && quiver.is_empty() {
        return Err(Error::EmptyWindow);
    }
    Ok(rep)
}
