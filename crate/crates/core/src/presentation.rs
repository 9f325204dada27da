//! Quiver and poset presentations of pointed coalgebras.
//!
//! A presentation is either a finite quiver/poset read from text, or one of the
//! built-in infinite families answered by closed-form neighbor rules. The same
//! object serves the path coalgebra of a quiver and the incidence coalgebra of
//! a poset; `kind` says which one is meant.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::vertex::{IndexWindow, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    /// Path coalgebra of an acyclic quiver.
    Quiver,
    /// Incidence coalgebra of an intervally finite poset.
    Poset,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    In,
    Out,
}

impl Direction {
    pub fn flip(self) -> Direction {
        match self {
            Direction::In => Direction::Out,
            Direction::Out => Direction::In,
        }
    }
}

/// Block sizes of a garland poset. A block of size `m` is the garland
/// `G_m`: two strands of `m` elements between two junctions, every element
/// of one level below every element of the next.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GarlandShape {
    /// Every block is `G_m`; junctions are indexed by all integers.
    Constant(u32),
    /// Block between junctions `k` and `k+1` is `G_{k+1}` for `k >= 0` and
    /// `G_k` for `k < 0`; junctions are indexed by all integers.
    Growing,
    /// Finitely many blocks between junctions `0, 1, ..., len`.
    Sequence(Vec<u32>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Family {
    AInfinity,
    ZAInfinity,
    DInfinity,
    Garland(GarlandShape),
    Finite,
}

impl Family {
    pub fn name(&self) -> String {
        match self {
            Family::AInfinity => "a-infinity".into(),
            Family::ZAInfinity => "z-a-infinity".into(),
            Family::DInfinity => "d-infinity".into(),
            Family::Garland(GarlandShape::Constant(m)) => format!("garland {m}"),
            Family::Garland(GarlandShape::Growing) => "garland-growing".into(),
            Family::Garland(GarlandShape::Sequence(v)) => format!(
                "garland-seq {}",
                v.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(",")
            ),
            Family::Finite => "finite".into(),
        }
    }
}

#[derive(Debug)]
struct FiniteData {
    vertices: Vec<VertexId>,
    index: HashMap<VertexId, usize>,
    /// Quiver arrows (repeated for multiplicity) or Hasse covers, as index pairs.
    arrows: Vec<(usize, usize)>,
    /// Reflexive-transitive reachability; `reach[a][b]` iff a path a -> b exists.
    reach: Vec<Vec<bool>>,
    /// Strictly increasing along arrows.
    height: Vec<i64>,
}

/// Finite local-boundedness report for a window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundednessReport {
    pub left_bounded: bool,
    pub right_bounded: bool,
    /// True when the answer comes from the family's closed form.
    pub certified_by_family: bool,
    /// `(vertex, in-degree, out-degree)` for each window vertex.
    pub witnesses: Vec<(VertexId, u32, u32)>,
}

/// Either a finite vertex set, or a set known to be infinite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reach {
    Finite(Vec<VertexId>),
    Infinite,
}

#[derive(Clone)]
pub struct Presentation {
    kind: Kind,
    family: Family,
    reversed: bool,
    finite: Option<Arc<FiniteData>>,
}

impl fmt::Debug for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Presentation")
            .field("kind", &self.kind)
            .field("family", &self.family)
            .field("reversed", &self.reversed)
            .finish()
    }
}

impl PartialEq for Presentation {
    fn eq(&self, other: &Self) -> bool {
        if self.kind != other.kind || self.family != other.family || self.reversed != other.reversed {
            return false;
        }
        match (&self.finite, &other.finite) {
            (None, None) => true,
            (Some(a), Some(b)) => {
                let named = |d: &FiniteData| {
                    let mut v: Vec<(VertexId, VertexId)> = d
                        .arrows
                        .iter()
                        .map(|&(s, t)| (d.vertices[s].clone(), d.vertices[t].clone()))
                        .collect();
                    v.sort();
                    v
                };
                a.vertices == b.vertices && named(a) == named(b)
            }
            _ => false,
        }
    }
}

impl Presentation {
    pub fn family(family: Family) -> Result<Presentation> {
        let kind = match &family {
            Family::AInfinity | Family::ZAInfinity | Family::DInfinity => Kind::Quiver,
            Family::Garland(shape) => {
                let bad = match shape {
                    GarlandShape::Constant(m) => *m == 0,
                    GarlandShape::Growing => false,
                    GarlandShape::Sequence(v) => v.is_empty() || v.contains(&0),
                };
                if bad {
                    return Err(Error::Invalid("garland blocks need size >= 1".into()));
                }
                Kind::Poset
            }
            Family::Finite => {
                return Err(Error::Invalid(
                    "finite presentations are built from vertices and arrows".into(),
                ))
            }
        };
        Ok(Presentation {
            kind,
            family,
            reversed: false,
            finite: None,
        })
    }

    pub fn a_infinity() -> Presentation {
        Presentation::family(Family::AInfinity).unwrap()
    }

    pub fn za_infinity() -> Presentation {
        Presentation::family(Family::ZAInfinity).unwrap()
    }

    pub fn d_infinity() -> Presentation {
        Presentation::family(Family::DInfinity).unwrap()
    }

    pub fn garland(m: u32) -> Result<Presentation> {
        Presentation::family(Family::Garland(GarlandShape::Constant(m)))
    }

    /// Finite quiver from vertex ids and arrows; arrow multiplicity is
    /// expressed by repetition.
    pub fn finite_quiver(vertices: Vec<VertexId>, arrows: Vec<(VertexId, VertexId)>) -> Result<Self> {
        Presentation::finite(Kind::Quiver, vertices, arrows)
    }

    /// Finite poset from its elements and a generating set of relations `lo < hi`.
    pub fn finite_poset(vertices: Vec<VertexId>, covers: Vec<(VertexId, VertexId)>) -> Result<Self> {
        Presentation::finite(Kind::Poset, vertices, covers)
    }

    fn finite(kind: Kind, vertices: Vec<VertexId>, edges: Vec<(VertexId, VertexId)>) -> Result<Self> {
        let mut order = Vec::new();
        let mut index = HashMap::new();
        let mut register = |v: &VertexId, order: &mut Vec<VertexId>| {
            if !index.contains_key(v) {
                index.insert(v.clone(), order.len());
                order.push(v.clone());
            }
        };
        for v in &vertices {
            register(v, &mut order);
        }
        for (s, t) in &edges {
            register(s, &mut order);
            register(t, &mut order);
        }
        let pairs: Vec<(usize, usize)> = edges.iter().map(|(s, t)| (index[s], index[t])).collect();
        let n = order.len();

        // Kahn's algorithm; a leftover vertex lies on a cycle.
        let mut indeg = vec![0usize; n];
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(s, t) in &pairs {
            indeg[t] += 1;
            out[s].push(t);
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut topo = Vec::with_capacity(n);
        while let Some(v) = queue.pop_front() {
            topo.push(v);
            for &t in &out[v] {
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    queue.push_back(t);
                }
            }
        }
        if topo.len() < n {
            let culprit = (0..n).find(|&v| indeg[v] > 0).unwrap();
            return Err(match kind {
                Kind::Quiver => Error::CycleDetected(order[culprit].clone()),
                Kind::Poset => Error::NotAPoset(order[culprit].clone()),
            });
        }

        let mut height = vec![0i64; n];
        for &v in &topo {
            for &t in &out[v] {
                height[t] = height[t].max(height[v] + 1);
            }
        }
        let mut reach = vec![vec![false; n]; n];
        for &v in topo.iter().rev() {
            reach[v][v] = true;
            for &t in &out[v] {
                for w in 0..n {
                    if reach[t][w] {
                        reach[v][w] = true;
                    }
                }
            }
        }

        let arrows = match kind {
            Kind::Quiver => pairs,
            Kind::Poset => {
                // Hasse diagram: a < b with nothing strictly between.
                let mut covers = Vec::new();
                for a in 0..n {
                    for b in 0..n {
                        if a != b && reach[a][b] && !(0..n).any(|c| c != a && c != b && reach[a][c] && reach[c][b]) {
                            covers.push((a, b));
                        }
                    }
                }
                covers
            }
        };

        Ok(Presentation {
            kind,
            family: Family::Finite,
            reversed: false,
            finite: Some(Arc::new(FiniteData {
                vertices: order,
                index,
                arrows,
                reach,
                height,
            })),
        })
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn family_kind(&self) -> &Family {
        &self.family
    }

    pub fn is_reversed(&self) -> bool {
        self.reversed
    }

    pub fn is_finite(&self) -> bool {
        self.finite.is_some() || matches!(self.family, Family::Garland(GarlandShape::Sequence(_)))
    }

    /// The opposite coalgebra: all arrows reversed, or the dual poset.
    pub fn opposite(&self) -> Presentation {
        let mut p = self.clone();
        p.reversed = !p.reversed;
        p
    }

    /// All vertices in display order, when there are finitely many.
    pub fn finite_vertices(&self) -> Option<Vec<VertexId>> {
        if let Some(d) = &self.finite {
            return Some(d.vertices.clone());
        }
        if let Family::Garland(GarlandShape::Sequence(sizes)) = &self.family {
            return Some(self.garland_range(0, sizes.len() as i64));
        }
        None
    }

    fn dir(&self, d: Direction) -> Direction {
        if self.reversed {
            d.flip()
        } else {
            d
        }
    }

    pub fn contains(&self, v: &VertexId) -> bool {
        self.order_key(v).is_some()
    }

    /// Sort key realizing the display order.
    pub fn order_key(&self, v: &VertexId) -> Option<(i64, i64)> {
        if let Some(d) = &self.finite {
            return d.index.get(v).map(|&i| (i as i64, 0));
        }
        match &self.family {
            Family::AInfinity => v.as_int().filter(|&n| n >= 0).map(|n| (n, 0)),
            Family::ZAInfinity => v.as_int().map(|n| (n, 0)),
            Family::DInfinity => v.as_int().filter(|&n| n >= -1).map(|n| (n, 0)),
            Family::Garland(shape) => {
                let g = GarlandVertex::decode(shape, v)?;
                Some((g.rank(shape), g.strand as i64))
            }
            Family::Finite => None,
        }
    }

    fn require(&self, v: &VertexId) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v.to_string()))
        }
    }

    pub fn sort_vertices(&self, vs: &mut [VertexId]) {
        vs.sort_by_key(|v| self.order_key(v).unwrap_or((i64::MAX, i64::MAX)));
    }

    /// Arrows into or out of `v` (Hasse covers for posets), with multiplicities,
    /// in display order.
    pub fn neighbors(&self, v: &VertexId, direction: Direction) -> Result<Vec<(VertexId, u32)>> {
        self.require(v)?;
        let d = self.dir(direction);
        let mut out: Vec<(VertexId, u32)> = Vec::new();
        let mut push = |w: VertexId| {
            if let Some(entry) = out.iter_mut().find(|(u, _)| *u == w) {
                entry.1 += 1;
            } else {
                out.push((w, 1));
            }
        };
        if let Some(data) = &self.finite {
            let i = data.index[v];
            for &(s, t) in &data.arrows {
                match d {
                    Direction::Out if s == i => push(data.vertices[t].clone()),
                    Direction::In if t == i => push(data.vertices[s].clone()),
                    _ => {}
                }
            }
        } else {
            match &self.family {
                Family::AInfinity => {
                    let n = v.as_int().unwrap();
                    match d {
                        Direction::Out => push(VertexId::Int(n + 1)),
                        Direction::In if n >= 1 => push(VertexId::Int(n - 1)),
                        Direction::In => {}
                    }
                }
                Family::ZAInfinity => {
                    let n = v.as_int().unwrap();
                    match d {
                        Direction::Out => push(VertexId::Int(n + 1)),
                        Direction::In => push(VertexId::Int(n - 1)),
                    }
                }
                Family::DInfinity => {
                    // 1 -> -1, 1 -> 0, and n -> n+1 for n >= 1.
                    let n = v.as_int().unwrap();
                    match d {
                        Direction::Out if n == 1 => {
                            for w in [-1, 0, 2] {
                                push(VertexId::Int(w));
                            }
                        }
                        Direction::Out if n >= 2 => push(VertexId::Int(n + 1)),
                        Direction::Out => {}
                        Direction::In if n == -1 || n == 0 => push(VertexId::Int(1)),
                        Direction::In if n >= 2 => push(VertexId::Int(n - 1)),
                        Direction::In => {}
                    }
                }
                Family::Garland(shape) => {
                    let g = GarlandVertex::decode(shape, v).unwrap();
                    for w in g.covers(shape, d) {
                        push(w.encode());
                    }
                }
                Family::Finite => unreachable!(),
            }
        }
        self.sort_pairs(&mut out);
        Ok(out)
    }

    fn sort_pairs(&self, pairs: &mut [(VertexId, u32)]) {
        pairs.sort_by_key(|(v, _)| self.order_key(v).unwrap_or((i64::MAX, i64::MAX)));
    }

    /// Number of arrows `from -> to` (Hasse covers for posets).
    pub fn arrow_count(&self, from: &VertexId, to: &VertexId) -> Result<u32> {
        self.require(to)?;
        Ok(self
            .neighbors(from, Direction::Out)?
            .into_iter()
            .find(|(w, _)| w == to)
            .map_or(0, |(_, m)| m))
    }

    /// A function strictly increasing along every arrow.
    pub fn height(&self, v: &VertexId) -> Result<i64> {
        self.require(v)?;
        let h = if let Some(d) = &self.finite {
            d.height[d.index[v]]
        } else {
            match &self.family {
                Family::AInfinity | Family::ZAInfinity => v.as_int().unwrap(),
                Family::DInfinity => match v.as_int().unwrap() {
                    -1 | 0 => 2,
                    n => n,
                },
                Family::Garland(shape) => GarlandVertex::decode(shape, v).unwrap().rank(shape),
                Family::Finite => unreachable!(),
            }
        };
        Ok(if self.reversed { -h } else { h })
    }

    /// Order relation `a <= b` of a poset presentation.
    pub fn leq(&self, a: &VertexId, b: &VertexId) -> Result<bool> {
        if self.kind != Kind::Poset {
            return Err(Error::WrongKind { expected: "poset" });
        }
        self.require(a)?;
        self.require(b)?;
        let (a, b) = if self.reversed { (b, a) } else { (a, b) };
        if let Some(d) = &self.finite {
            return Ok(d.reach[d.index[a]][d.index[b]]);
        }
        match &self.family {
            Family::Garland(shape) => {
                let x = GarlandVertex::decode(shape, a).unwrap();
                let y = GarlandVertex::decode(shape, b).unwrap();
                Ok(x == y || x.rank(shape) < y.rank(shape))
            }
            _ => unreachable!("poset families are garlands"),
        }
    }

    /// Vertices `u` with a path `u -> v` (direction `In`) or `v -> u` (`Out`),
    /// including `v` itself. Closed form for families.
    pub fn reach(&self, v: &VertexId, direction: Direction) -> Result<Reach> {
        self.require(v)?;
        let d = self.dir(direction);
        if let Some(data) = &self.finite {
            let i = data.index[v];
            let mut out: Vec<VertexId> = (0..data.vertices.len())
                .filter(|&u| match d {
                    Direction::In => data.reach[u][i],
                    Direction::Out => data.reach[i][u],
                })
                .map(|u| data.vertices[u].clone())
                .collect();
            self.sort_vertices(&mut out);
            return Ok(Reach::Finite(out));
        }
        let ints = |r: std::ops::RangeInclusive<i64>| Reach::Finite(r.map(VertexId::Int).collect());
        let n = v.as_int();
        Ok(match (&self.family, d) {
            (Family::AInfinity, Direction::In) => ints(0..=n.unwrap()),
            (Family::AInfinity, Direction::Out) => Reach::Infinite,
            (Family::ZAInfinity, _) => Reach::Infinite,
            (Family::DInfinity, Direction::In) => match n.unwrap() {
                -1 => Reach::Finite(vec![VertexId::Int(-1), VertexId::Int(1)]),
                0 => Reach::Finite(vec![VertexId::Int(0), VertexId::Int(1)]),
                k => ints(1..=k),
            },
            (Family::DInfinity, Direction::Out) => match n.unwrap() {
                -1 | 0 => Reach::Finite(vec![v.clone()]),
                _ => Reach::Infinite,
            },
            (Family::Garland(GarlandShape::Sequence(sizes)), _) => {
                let all = self.garland_range(0, sizes.len() as i64);
                let mut out = Vec::new();
                for u in all {
                    let keep = match d {
                        Direction::In => self.leq_unreversed(&u, v),
                        Direction::Out => self.leq_unreversed(v, &u),
                    };
                    if keep {
                        out.push(u);
                    }
                }
                Reach::Finite(out)
            }
            (Family::Garland(_), _) => Reach::Infinite,
            (Family::Finite, _) => unreachable!(),
        })
    }

    fn leq_unreversed(&self, a: &VertexId, b: &VertexId) -> bool {
        match &self.family {
            Family::Garland(shape) => {
                let x = GarlandVertex::decode(shape, a).unwrap();
                let y = GarlandVertex::decode(shape, b).unwrap();
                x == y || x.rank(shape) < y.rank(shape)
            }
            _ => unreachable!(),
        }
    }

    /// Vertices lying on some path `lo -> hi`; for posets, the closed interval `[lo, hi]`.
    pub fn interval_hull(&self, lo: &VertexId, hi: &VertexId) -> Result<Vec<VertexId>> {
        let (h_lo, h_hi) = (self.height(lo)?, self.height(hi)?);
        let forward = self.sweep(lo, Direction::Out, |h| h <= h_hi)?;
        if !forward.contains(hi) {
            return Ok(Vec::new());
        }
        let backward = self.sweep(hi, Direction::In, |h| h >= h_lo)?;
        let mut out: Vec<VertexId> = forward.intersection(&backward).cloned().collect();
        self.sort_vertices(&mut out);
        Ok(out)
    }

    /// Smallest convex set of vertices containing `vs`: everything on a path
    /// between two of them.
    pub fn convex_hull(&self, vs: &[VertexId]) -> Result<Vec<VertexId>> {
        if vs.is_empty() {
            return Ok(Vec::new());
        }
        let heights = vs.iter().map(|v| self.height(v)).collect::<Result<Vec<_>>>()?;
        let (lo, hi) = (*heights.iter().min().unwrap(), *heights.iter().max().unwrap());
        let forward = self.sweep_from(vs, Direction::Out, |h| h <= hi)?;
        let backward = self.sweep_from(vs, Direction::In, |h| h >= lo)?;
        let mut out: Vec<VertexId> = forward.intersection(&backward).cloned().collect();
        self.sort_vertices(&mut out);
        Ok(out)
    }

    fn sweep(&self, start: &VertexId, d: Direction, keep: impl Fn(i64) -> bool) -> Result<BTreeSet<VertexId>> {
        self.sweep_from(std::slice::from_ref(start), d, keep)
    }

    fn sweep_from(&self, start: &[VertexId], d: Direction, keep: impl Fn(i64) -> bool) -> Result<BTreeSet<VertexId>> {
        let mut seen: BTreeSet<VertexId> = start.iter().cloned().collect();
        let mut stack = start.to_vec();
        while let Some(v) = stack.pop() {
            for (w, _) in self.neighbors(&v, d)? {
                if keep(self.height(&w)?) && seen.insert(w.clone()) {
                    stack.push(w);
                }
            }
        }
        Ok(seen)
    }

    /// Elements `u <= v` (direction `In`) or `u >= v` (`Out`) with no garland
    /// junction strictly between `u` and `v`. For finite posets this is the
    /// whole down-set or up-set.
    pub fn junction_cone(&self, v: &VertexId, direction: Direction) -> Result<Vec<VertexId>> {
        if self.kind != Kind::Poset {
            return Err(Error::WrongKind { expected: "poset" });
        }
        self.require(v)?;
        if self.finite.is_some() {
            return match self.reach(v, direction)? {
                Reach::Finite(vs) => Ok(vs),
                Reach::Infinite => unreachable!(),
            };
        }
        let Family::Garland(shape) = &self.family else {
            unreachable!()
        };
        let d = self.dir(direction);
        let g = GarlandVertex::decode(shape, v).unwrap();
        let (lo, hi) = match d {
            Direction::In => {
                let j = if g.level == 0 { g.junction - 1 } else { g.junction };
                (j, j + 1)
            }
            Direction::Out => {
                let j = g.junction + 1;
                (j - 1, j)
            }
        };
        if !garland_has_junction(shape, lo) || !garland_has_junction(shape, hi) {
            return Ok(vec![v.clone()]);
        }
        Ok(self
            .garland_range(lo, hi)
            .into_iter()
            .filter(|u| match d {
                Direction::In => self.leq_unreversed(u, v),
                Direction::Out => self.leq_unreversed(v, u),
            })
            .collect())
    }

    /// The quiver of cover relations of a poset presentation.
    pub fn hasse_quiver(&self) -> Result<Presentation> {
        if self.kind != Kind::Poset {
            return Err(Error::WrongKind { expected: "poset" });
        }
        let mut q = self.clone();
        q.kind = Kind::Quiver;
        Ok(q)
    }

    pub fn check_local_boundedness(&self, w: &IndexWindow) -> Result<BoundednessReport> {
        let mut witnesses = Vec::new();
        for v in w {
            let inn: u32 = self.neighbors(v, Direction::In)?.iter().map(|(_, m)| m).sum();
            let out: u32 = self.neighbors(v, Direction::Out)?.iter().map(|(_, m)| m).sum();
            witnesses.push((v.clone(), inn, out));
        }
        // Every family's neighbor rule returns finitely many arrows, and finite
        // presentations are trivially bounded.
        Ok(BoundednessReport {
            left_bounded: true,
            right_bounded: true,
            certified_by_family: self.finite.is_none(),
            witnesses,
        })
    }

    /// Builds a window from `a..b` (inclusive, in display order) or a
    /// comma-separated list of vertex ids.
    pub fn window(&self, spec: &str) -> Result<IndexWindow> {
        let spec = spec.trim();
        if spec.is_empty() {
            return Err(Error::EmptyWindow);
        }
        if let Some((a, b)) = spec.split_once("..") {
            let a: VertexId = a.parse()?;
            let b: VertexId = b.parse()?;
            return self.window_between(&a, &b);
        }
        let vs = spec.split(',').map(|s| s.parse()).collect::<Result<Vec<VertexId>>>()?;
        self.window_of(vs)
    }

    /// Window from an explicit list; sorted into display order.
    pub fn window_of(&self, mut vs: Vec<VertexId>) -> Result<IndexWindow> {
        for v in &vs {
            self.require(v)?;
        }
        self.sort_vertices(&mut vs);
        for pair in vs.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::Invalid(format!("duplicate vertex {} in window", pair[0])));
            }
        }
        IndexWindow::from_ordered(vs)
    }

    pub fn window_between(&self, a: &VertexId, b: &VertexId) -> Result<IndexWindow> {
        match &self.family {
            Family::Garland(_) => {
                let (a, b) = (
                    a.as_int().ok_or_else(|| Error::UnknownVertex(a.to_string()))?,
                    b.as_int().ok_or_else(|| Error::UnknownVertex(b.to_string()))?,
                );
                self.require(&VertexId::Int(a))?;
                self.require(&VertexId::Int(b))?;
                IndexWindow::from_ordered(self.garland_range(a, b))
            }
            Family::Finite => {
                let d = self.finite.as_ref().unwrap();
                let ia = *d.index.get(a).ok_or_else(|| Error::UnknownVertex(a.to_string()))?;
                let ib = *d.index.get(b).ok_or_else(|| Error::UnknownVertex(b.to_string()))?;
                if ia > ib {
                    return Err(Error::EmptyWindow);
                }
                IndexWindow::from_ordered(d.vertices[ia..=ib].to_vec())
            }
            _ => {
                self.require(a)?;
                self.require(b)?;
                let (a, b) = (a.as_int().unwrap(), b.as_int().unwrap());
                IndexWindow::from_ordered((a..=b).map(VertexId::Int).collect())
            }
        }
    }

    /// All vertices between junction `a` and junction `b` of a garland.
    fn garland_range(&self, a: i64, b: i64) -> Vec<VertexId> {
        let Family::Garland(shape) = &self.family else {
            unreachable!()
        };
        let mut out = Vec::new();
        for k in a..=b {
            out.push(VertexId::Int(k));
            if k < b {
                for level in 1..=garland_block(shape, k).unwrap_or(0) {
                    for strand in 0..2 {
                        out.push(
                            GarlandVertex {
                                junction: k,
                                level,
                                strand,
                            }
                            .encode(),
                        );
                    }
                }
            }
        }
        out
    }

    /// Vertices within `radius` undirected arrow-steps of `seed`, in display order.
    pub fn ball(&self, seed: &[VertexId], radius: usize) -> Result<Vec<VertexId>> {
        let mut seen: BTreeSet<VertexId> = seed.iter().cloned().collect();
        let mut frontier: Vec<VertexId> = seed.to_vec();
        for _ in 0..radius {
            let mut next = Vec::new();
            for v in &frontier {
                for d in [Direction::In, Direction::Out] {
                    for (w, _) in self.neighbors(v, d)? {
                        if seen.insert(w.clone()) {
                            next.push(w);
                        }
                    }
                }
            }
            frontier = next;
        }
        let mut out: Vec<VertexId> = seen.into_iter().collect();
        self.sort_vertices(&mut out);
        Ok(out)
    }

    /// Serializes a presentation in the text format accepted by [`parse_presentation`].
    pub fn emit(&self) -> String {
        let mut s = String::new();
        if let Some(d) = &self.finite {
            s.push_str(match self.kind {
                Kind::Quiver => "kind quiver\n",
                Kind::Poset => "kind poset\n",
            });
            for v in &d.vertices {
                s.push_str(&format!("vertex {v}\n"));
            }
            let word = match self.kind {
                Kind::Quiver => "arrow",
                Kind::Poset => "cover",
            };
            for &(a, b) in &d.arrows {
                let (a, b) = if self.reversed { (b, a) } else { (a, b) };
                s.push_str(&format!("{word} {} {}\n", d.vertices[a], d.vertices[b]));
            }
        } else {
            s.push_str(&format!("family {}\n", self.family.name()));
        }
        s
    }
}

fn garland_block(shape: &GarlandShape, k: i64) -> Option<u32> {
    match shape {
        GarlandShape::Constant(m) => Some(*m),
        GarlandShape::Growing => Some(if k >= 0 { (k + 1) as u32 } else { (-k) as u32 }),
        GarlandShape::Sequence(v) => usize::try_from(k).ok().and_then(|i| v.get(i).copied()),
    }
}

fn garland_has_junction(shape: &GarlandShape, k: i64) -> bool {
    match shape {
        GarlandShape::Sequence(v) => k >= 0 && k <= v.len() as i64,
        _ => true,
    }
}

fn garland_junction_rank(shape: &GarlandShape, k: i64) -> i64 {
    match shape {
        GarlandShape::Constant(m) => k * (*m as i64 + 1),
        _ => {
            let mut r = 0i64;
            if k >= 0 {
                for j in 0..k {
                    r += garland_block(shape, j).unwrap() as i64 + 1;
                }
            } else {
                for j in k..0 {
                    r -= garland_block(shape, j).unwrap() as i64 + 1;
                }
            }
            r
        }
    }
}

/// Junction `k` is `Int(k)`; level `l` strand `a`/`b` of the block above
/// junction `k` is `Name("k:la")` / `Name("k:lb")`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct GarlandVertex {
    junction: i64,
    /// 0 for the junction itself.
    level: u32,
    strand: u8,
}

impl GarlandVertex {
    fn decode(shape: &GarlandShape, v: &VertexId) -> Option<GarlandVertex> {
        let g = match v {
            VertexId::Int(k) => GarlandVertex {
                junction: *k,
                level: 0,
                strand: 0,
            },
            VertexId::Name(s) => {
                let (k, rest) = s.split_once(':')?;
                let strand = match rest.chars().last()? {
                    'a' => 0,
                    'b' => 1,
                    _ => return None,
                };
                let level: u32 = rest[..rest.len() - 1].parse().ok()?;
                GarlandVertex {
                    junction: k.parse().ok()?,
                    level,
                    strand,
                }
            }
        };
        if !garland_has_junction(shape, g.junction) {
            return None;
        }
        if g.level > 0 {
            let size = garland_block(shape, g.junction)?;
            if g.level > size || g.encode() != *v {
                return None;
            }
        }
        Some(g)
    }

    fn encode(&self) -> VertexId {
        if self.level == 0 {
            VertexId::Int(self.junction)
        } else {
            let s = if self.strand == 0 { 'a' } else { 'b' };
            VertexId::Name(format!("{}:{}{}", self.junction, self.level, s))
        }
    }

    fn rank(&self, shape: &GarlandShape) -> i64 {
        garland_junction_rank(shape, self.junction) + self.level as i64
    }

    fn covers(&self, shape: &GarlandShape, d: Direction) -> Vec<GarlandVertex> {
        let level = |junction, level| {
            (0..2)
                .map(|strand| GarlandVertex {
                    junction,
                    level,
                    strand,
                })
                .collect::<Vec<_>>()
        };
        let junction = |k| GarlandVertex {
            junction: k,
            level: 0,
            strand: 0,
        };
        let k = self.junction;
        match d {
            Direction::Out => {
                if self.level == 0 {
                    match garland_block(shape, k) {
                        Some(_) if garland_has_junction(shape, k + 1) => level(k, 1),
                        _ => vec![],
                    }
                } else if self.level < garland_block(shape, k).unwrap() {
                    level(k, self.level + 1)
                } else {
                    vec![junction(k + 1)]
                }
            }
            Direction::In => {
                if self.level == 0 {
                    if garland_has_junction(shape, k - 1) {
                        let size = garland_block(shape, k - 1).unwrap();
                        level(k - 1, size)
                    } else {
                        vec![]
                    }
                } else if self.level == 1 {
                    vec![junction(k)]
                } else {
                    level(k, self.level - 1)
                }
            }
        }
    }
}

/// Parses the presentation text format.
///
/// ```text
/// kind quiver | kind poset
/// vertex <id>
/// arrow <src> <dst>
/// cover <lo> <hi>
/// family a-infinity | z-a-infinity | d-infinity | garland <m> | garland-seq <m,m,...> | garland-growing
/// ```
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let mut kind: Option<Kind> = None;
    let mut family: Option<(Family, usize)> = None;
    let mut vertices = Vec::new();
    let mut arrows = Vec::new();
    let mut covers = Vec::new();

    let syntax = |line: usize, message: String| Error::Syntax { line, message };

    for (no, raw) in text.lines().enumerate() {
        let line_no = no + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let words: Vec<&str> = line.split_whitespace().collect();
        let id =
            |s: &str| -> Result<VertexId> { s.parse().map_err(|_| syntax(line_no, format!("bad vertex id `{s}`"))) };
        match words.as_slice() {
            ["kind", "quiver"] => kind = Some(Kind::Quiver),
            ["kind", "poset"] => kind = Some(Kind::Poset),
            ["kind", other] => return Err(syntax(line_no, format!("unknown kind `{other}`"))),
            ["vertex", v] => vertices.push(id(v)?),
            ["arrow", a, b] => arrows.push((id(a)?, id(b)?)),
            ["cover", a, b] => covers.push((id(a)?, id(b)?)),
            ["family", rest @ ..] => {
                let fam = match rest {
                    ["a-infinity"] => Family::AInfinity,
                    ["z-a-infinity"] => Family::ZAInfinity,
                    ["d-infinity"] => Family::DInfinity,
                    ["garland-growing"] => Family::Garland(GarlandShape::Growing),
                    ["garland", m] => Family::Garland(GarlandShape::Constant(
                        m.parse()
                            .map_err(|_| syntax(line_no, format!("bad garland size `{m}`")))?,
                    )),
                    ["garland-seq", seq] => Family::Garland(GarlandShape::Sequence(
                        seq.split(',')
                            .map(|m| m.trim().parse::<u32>())
                            .collect::<std::result::Result<_, _>>()
                            .map_err(|_| syntax(line_no, format!("bad garland sequence `{seq}`")))?,
                    )),
                    _ => return Err(syntax(line_no, format!("unknown family `{}`", rest.join(" ")))),
                };
                family = Some((fam, line_no));
            }
            _ => return Err(syntax(line_no, format!("unrecognized directive `{line}`"))),
        }
    }

    if let Some((fam, line_no)) = family {
        let p = Presentation::family(fam).map_err(|e| syntax(line_no, e.to_string()))?;
        if let Some(k) = kind {
            if k != p.kind() {
                return Err(syntax(line_no, "family does not match the declared kind".into()));
            }
        }
        return Ok(p);
    }
    match kind {
        Some(Kind::Quiver) => {
            if !covers.is_empty() {
                return Err(syntax(0, "`cover` lines need `kind poset`".into()));
            }
            Presentation::finite_quiver(vertices, arrows)
        }
        Some(Kind::Poset) => {
            if !arrows.is_empty() {
                return Err(syntax(0, "`arrow` lines need `kind quiver`".into()));
            }
            Presentation::finite_poset(vertices, covers)
        }
        None => Err(syntax(0, "missing `kind` or `family` directive".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: i64) -> VertexId {
        VertexId::Int(n)
    }

    #[test]
    fn parses_finite_a3() {
        let p = parse_presentation("kind quiver\narrow 0 1\narrow 1 2").unwrap();
        assert_eq!(p.finite_vertices().unwrap(), vec![v(0), v(1), v(2)]);
        assert_eq!(p.neighbors(&v(1), Direction::Out).unwrap(), vec![(v(2), 1)]);
        assert_eq!(p.neighbors(&v(0), Direction::In).unwrap(), vec![]);
    }

    #[test]
    fn parses_family() {
        let p = parse_presentation("family a-infinity").unwrap();
        assert_eq!(p, Presentation::a_infinity());
        assert_eq!(p.neighbors(&v(0), Direction::In).unwrap(), vec![]);
    }

    #[test]
    fn rejects_cycles() {
        let err = parse_presentation("kind quiver\narrow 0 1\narrow 1 0").unwrap_err();
        assert!(matches!(err, Error::CycleDetected(_)));
        let err = parse_presentation("kind poset\ncover a b\ncover b a").unwrap_err();
        assert!(matches!(err, Error::NotAPoset(_)));
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        let err = parse_presentation("kind quiver\n# comment\nedge 0 1").unwrap_err();
        assert_eq!(
            err,
            Error::Syntax {
                line: 3,
                message: "unrecognized directive `edge 0 1`".into()
            }
        );
        let err = parse_presentation("kind quiver\narrow 0").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 2, .. }));
    }

    #[test]
    fn d_infinity_neighbors() {
        let p = Presentation::d_infinity();
        assert_eq!(
            p.neighbors(&v(1), Direction::Out).unwrap(),
            vec![(v(-1), 1), (v(0), 1), (v(2), 1)]
        );
        assert_eq!(p.neighbors(&v(-1), Direction::In).unwrap(), vec![(v(1), 1)]);
        assert!(p.neighbors(&v(-2), Direction::In).is_err());
    }

    #[test]
    fn kronecker_multiplicity() {
        let p = parse_presentation("kind quiver\narrow 0 1\narrow 0 1").unwrap();
        assert_eq!(p.neighbors(&v(1), Direction::In).unwrap(), vec![(v(0), 2)]);
        assert_eq!(p.arrow_count(&v(0), &v(1)).unwrap(), 2);
    }

    #[test]
    fn hasse_of_chain_and_diamond() {
        let chain = parse_presentation("kind poset\ncover a b\ncover b c\ncover a c").unwrap();
        let q = chain.hasse_quiver().unwrap();
        let a: VertexId = "a".into();
        let b: VertexId = "b".into();
        let c: VertexId = "c".into();
        assert_eq!(q.kind(), Kind::Quiver);
        assert_eq!(q.neighbors(&a, Direction::Out).unwrap(), vec![(b.clone(), 1)]);
        assert_eq!(q.neighbors(&b, Direction::Out).unwrap(), vec![(c.clone(), 1)]);

        let diamond = parse_presentation("kind poset\ncover a b\ncover a c\ncover b d\ncover c d").unwrap();
        let q = diamond.hasse_quiver().unwrap();
        let d: VertexId = "d".into();
        assert_eq!(
            q.neighbors(&a, Direction::Out).unwrap(),
            vec![(b.clone(), 1), (c.clone(), 1)]
        );
        assert_eq!(q.neighbors(&d, Direction::In).unwrap(), vec![(b, 1), (c, 1)]);
    }

    #[test]
    fn garland_structure() {
        let p = Presentation::garland(1).unwrap();
        let w = p.window("0..1").unwrap();
        let names: Vec<String> = w.iter().map(|v| v.to_string()).collect();
        assert_eq!(names, ["0", "0:1a", "0:1b", "1"]);
        assert_eq!(
            p.neighbors(&v(0), Direction::Out).unwrap(),
            vec![("0:1a".into(), 1), ("0:1b".into(), 1)]
        );
        assert_eq!(
            p.neighbors(&v(0), Direction::In).unwrap(),
            vec![("-1:1a".into(), 1), ("-1:1b".into(), 1)]
        );
        assert!(p.leq(&v(0), &v(1)).unwrap());
        assert!(!p.leq(&"0:1a".into(), &"0:1b".into()).unwrap());
        assert!(!p.contains(&"0:2a".into()));

        let g2 = Presentation::garland(2).unwrap();
        assert_eq!(
            g2.neighbors(&"0:1b".into(), Direction::Out).unwrap(),
            vec![("0:2a".into(), 1), ("0:2b".into(), 1)]
        );
        assert_eq!(g2.neighbors(&"0:2a".into(), Direction::Out).unwrap(), vec![(v(1), 1)]);
    }

    #[test]
    fn growing_garland_blocks() {
        let p = Presentation::family(Family::Garland(GarlandShape::Growing)).unwrap();
        // Block above junction 1 is G_2, block above junction -1 is G_1.
        assert!(p.contains(&"1:2a".into()));
        assert!(!p.contains(&"1:3a".into()));
        assert!(p.contains(&"-1:1b".into()));
        assert!(!p.contains(&"-1:2b".into()));
        assert_eq!(p.window("-1..0").unwrap().len(), 4);
    }

    #[test]
    fn windows() {
        let a = Presentation::a_infinity();
        assert_eq!(a.window("0..7").unwrap().len(), 8);
        assert!(a.window("-1..2").is_err());
        let d = Presentation::d_infinity();
        let w = d.window("-1..3").unwrap();
        assert_eq!(w.vertices(), &[v(-1), v(0), v(1), v(2), v(3)]);
        let z = Presentation::za_infinity();
        assert_eq!(z.window("-2..2").unwrap().len(), 5);
        assert_eq!(z.window("3,1,2").unwrap().vertices(), &[v(1), v(2), v(3)]);
        assert!(z.window("1,1").is_err());
        assert!(z.window("").is_err());
    }

    #[test]
    fn opposite_reverses() {
        let a = Presentation::a_infinity().opposite();
        assert_eq!(a.neighbors(&v(1), Direction::Out).unwrap(), vec![(v(0), 1)]);
        assert_eq!(
            a.reach(&v(2), Direction::Out).unwrap(),
            Reach::Finite(vec![v(0), v(1), v(2)])
        );
    }

    #[test]
    fn local_boundedness() {
        let a = Presentation::a_infinity();
        let r = a.check_local_boundedness(&a.window("0..5").unwrap()).unwrap();
        assert!(r.left_bounded && r.right_bounded && r.certified_by_family);
        assert_eq!(r.witnesses[0], (v(0), 0, 1));
    }

    #[test]
    fn emit_round_trip() {
        let text = "kind quiver\nvertex x\narrow 0 1\narrow 0 1\narrow 1 x\n";
        let p = parse_presentation(text).unwrap();
        assert_eq!(parse_presentation(&p.emit()).unwrap(), p);
        let q = parse_presentation("kind poset\ncover a b\ncover b c\ncover a c").unwrap();
        assert_eq!(parse_presentation(&q.emit()).unwrap(), q);
    }
}
