//! Caterpillars, hairy cycles, coronas and even cycles as ordered bipartite
//! graphs.
//!
//! A caterpillar `C[n_1, m_1, ..., n_t, m_t]` has spine `x_1, y_1, ..., x_t, y_t`,
//! `n_r` pendants `x_r^1..x_r^{n_r}` hanging from `x_r` and `m_r` pendants
//! `y_r^1..y_r^{m_r}` hanging from `y_r`. The two parts are ordered as
//!
//! ```text
//! A = x_1, y_1^1..y_1^{m_1}, x_2, y_2^1..y_2^{m_2}, ..., x_t, y_t^1..y_t^{m_t}
//! B = x_1^1..x_1^{n_1}, y_1, x_2^1..x_2^{n_2}, y_2, ..., x_t^1..x_t^{n_t}, y_t
//! ```
//!
//! and the edges run from `[x_1, x_1^1]` up to `[y_t, y_t^{m_t}]` along the spine.
//! Vertex ids are dense: the A part takes `0..|A|` in the order above, the B
//! part takes `|A|..|V|`. Hairy cycles and cycles are the caterpillar plus the
//! closing edge `[x_1, y_t]`, appended last.
//!
//! Spine and pendant indices in this module are 1-based, like the vertex names.

use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Pendant counts `[n_1, m_1, ..., n_t, m_t]` of a caterpillar.
///
/// An odd-length sequence omits the trailing `m_t`, which is read as zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CaterpillarSpec {
    pendants: Vec<usize>,
}

impl CaterpillarSpec {
    pub fn new(pendants: Vec<usize>) -> Result<Self> {
        if pendants.is_empty() {
            return Err(Error::InvalidSpec("empty pendant sequence".into()));
        }
        Ok(Self { pendants })
    }

    pub fn pendants(&self) -> &[usize] {
        &self.pendants
    }

    /// Number of spine pairs `t = ceil(len / 2)`.
    pub fn t(&self) -> usize {
        self.pendants.len().div_ceil(2)
    }

    /// The sequence padded with `m_t = 0` when it has odd length.
    pub fn normalized(&self) -> Vec<usize> {
        let mut p = self.pendants.clone();
        if p.len() % 2 == 1 {
            p.push(0);
        }
        p
    }

    /// Edge count of the caterpillar: spine edges plus pendant edges.
    pub fn size(&self) -> usize {
        2 * self.t() - 1 + self.pendants.iter().sum::<usize>()
    }
}

impl fmt::Display for CaterpillarSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.pendants.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphKind {
    Caterpillar,
    HairyCycle,
    Cycle,
}

impl GraphKind {
    pub fn is_closed(self) -> bool {
        !matches!(self, GraphKind::Caterpillar)
    }
}

/// Structural role of a vertex, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Vertex {
    X(usize),
    Y(usize),
    /// `x_r^i`, a pendant of `x_r` (lives in B).
    XPendant(usize, usize),
    /// `y_r^i`, a pendant of `y_r` (lives in A).
    YPendant(usize, usize),
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Vertex::X(r) => write!(f, "x{r}"),
            Vertex::Y(r) => write!(f, "y{r}"),
            Vertex::XPendant(r, i) => write!(f, "x{r}^{i}"),
            Vertex::YPendant(r, i) => write!(f, "y{r}^{i}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

/// A caterpillar, hairy cycle or cycle with the canonical vertex and edge
/// orders. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedBipartiteGraph {
    kind: GraphKind,
    pendants: Vec<usize>,
    lambda: Option<usize>,
    // index of x_r in the A order, r = 1..=t stored at r-1
    a_start: Vec<usize>,
    // index of x_r^1 (or y_r when n_r = 0) in the B order
    b_start: Vec<usize>,
    a_len: usize,
    roles: Vec<Vertex>,
    edges: Vec<(usize, usize)>,
    closing_edge: Option<usize>,
}

impl OrderedBipartiteGraph {
    fn from_pendants(pendants: Vec<usize>, kind: GraphKind, lambda: Option<usize>) -> Self {
        debug_assert!(pendants.len().is_multiple_of(2) && !pendants.is_empty());
        let t = pendants.len() / 2;
        let (mut a_start, mut b_start) = (Vec::with_capacity(t), Vec::with_capacity(t));
        let (mut a_len, mut b_len) = (0, 0);
        for r in 0..t {
            a_start.push(a_len);
            a_len += 1 + pendants[2 * r + 1];
            b_start.push(b_len);
            b_len += pendants[2 * r] + 1;
        }
        let mut g = Self {
            kind,
            pendants,
            lambda,
            a_start,
            b_start,
            a_len,
            roles: Vec::new(),
            edges: Vec::new(),
            closing_edge: None,
        };
        let mut roles = vec![Vertex::X(1); a_len + b_len];
        for r in 1..=t {
            roles[g.x(r)] = Vertex::X(r);
            roles[g.y(r)] = Vertex::Y(r);
            for i in 1..=g.n(r) {
                roles[g.x_pendant(r, i)] = Vertex::XPendant(r, i);
            }
            for i in 1..=g.m(r) {
                roles[g.y_pendant(r, i)] = Vertex::YPendant(r, i);
            }
        }
        let mut edges = Vec::with_capacity(a_len + b_len);
        for r in 1..=t {
            for i in 1..=g.n(r) {
                edges.push((g.x(r), g.x_pendant(r, i)));
            }
            edges.push((g.x(r), g.y(r)));
            for i in 1..=g.m(r) {
                edges.push((g.y_pendant(r, i), g.y(r)));
            }
            if r < t {
                edges.push((g.x(r + 1), g.y(r)));
            }
        }
        if kind.is_closed() {
            g.closing_edge = Some(edges.len());
            edges.push((g.x(1), g.y(t)));
        }
        g.roles = roles;
        g.edges = edges;
        g
    }

    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    /// Normalized (even-length) pendant sequence.
    pub fn pendants(&self) -> &[usize] {
        &self.pendants
    }

    pub fn spec(&self) -> CaterpillarSpec {
        CaterpillarSpec {
            pendants: self.pendants.clone(),
        }
    }

    /// Pendant multiplicity when the graph was built as a corona.
    pub fn lambda(&self) -> Option<usize> {
        self.lambda
    }

    pub fn t(&self) -> usize {
        self.pendants.len() / 2
    }

    /// `n_r`, the number of pendants at `x_r`.
    pub fn n(&self, r: usize) -> usize {
        self.pendants[2 * (r - 1)]
    }

    /// `m_r`, the number of pendants at `y_r`.
    pub fn m(&self, r: usize) -> usize {
        self.pendants[2 * (r - 1) + 1]
    }

    pub fn x(&self, r: usize) -> usize {
        self.a_start[r - 1]
    }

    pub fn y_pendant(&self, r: usize, i: usize) -> usize {
        debug_assert!(i >= 1 && i <= self.m(r));
        self.a_start[r - 1] + i
    }

    pub fn x_pendant(&self, r: usize, i: usize) -> usize {
        debug_assert!(i >= 1 && i <= self.n(r));
        self.a_len + self.b_start[r - 1] + i - 1
    }

    pub fn y(&self, r: usize) -> usize {
        self.a_len + self.b_start[r - 1] + self.n(r)
    }

    pub fn vertex(&self, id: usize) -> Vertex {
        self.roles[id]
    }

    pub fn vertex_count(&self) -> usize {
        self.roles.len()
    }

    pub fn vertices_a(&self) -> Range<usize> {
        0..self.a_len
    }

    pub fn vertices_b(&self) -> Range<usize> {
        self.a_len..self.roles.len()
    }

    pub fn side(&self, id: usize) -> Side {
        if id < self.a_len {
            Side::A
        } else {
            Side::B
        }
    }

    pub fn vertices(&self, side: Side) -> Range<usize> {
        match side {
            Side::A => self.vertices_a(),
            Side::B => self.vertices_b(),
        }
    }

    /// `k = |B|`.
    pub fn k(&self) -> usize {
        self.roles.len() - self.a_len
    }

    /// Edges as `(a, b)` pairs, `a` in A and `b` in B, in canonical order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn closing_edge_index(&self) -> Option<usize> {
        self.closing_edge
    }

    /// The underlying caterpillar: the same vertices without the closing edge.
    pub fn open(&self) -> OrderedBipartiteGraph {
        match self.kind {
            GraphKind::Caterpillar => self.clone(),
            _ => Self::from_pendants(self.pendants.clone(), GraphKind::Caterpillar, self.lambda),
        }
    }

    /// Adds the closing edge `[x_1, y_t]` to a caterpillar.
    pub fn close(&self) -> Result<OrderedBipartiteGraph> {
        if self.kind.is_closed() {
            return Err(Error::WrongKind("graph already has a closing edge".into()));
        }
        if self.t() < 2 {
            return Err(Error::InvalidSpec(
                "closing edge [x1,y1] would duplicate a spine edge; t must be at least 2".into(),
            ));
        }
        let kind = if self.pendants.iter().all(|&p| p == 0) {
            GraphKind::Cycle
        } else {
            GraphKind::HairyCycle
        };
        Ok(Self::from_pendants(self.pendants.clone(), kind, self.lambda))
    }

    pub fn neighbors(&self, id: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == id {
                    Some(b)
                } else if b == id {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count()];
        for &(a, b) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    /// Position of an edge in the canonical order, if present.
    pub fn edge_index(&self, u: usize, w: usize) -> Option<usize> {
        self.edges
            .iter()
            .position(|&(a, b)| (a, b) == (u, w) || (a, b) == (w, u))
    }

    /// Position of a vertex within its own part's order.
    pub fn order_index(&self, id: usize) -> usize {
        if id < self.a_len {
            id
        } else {
            id - self.a_len
        }
    }
}

pub fn build_caterpillar(spec: &CaterpillarSpec) -> OrderedBipartiteGraph {
    OrderedBipartiteGraph::from_pendants(spec.normalized(), GraphKind::Caterpillar, None)
}

/// The hairy cycle `HC(n_1, ..., m_t)`: the caterpillar plus `[x_1, y_t]`.
pub fn build_hairy_cycle(spec: &CaterpillarSpec) -> Result<OrderedBipartiteGraph> {
    let p = spec.pendants();
    if p.len() % 2 == 1 {
        return Err(Error::NonBipartiteUnsupported(format!(
            "HC({spec}) has a cycle of odd length {}",
            p.len()
        )));
    }
    if spec.t() < 2 {
        return Err(Error::InvalidSpec("a hairy cycle needs t >= 2".into()));
    }
    if p.iter().all(|&x| x == 0) {
        return Err(Error::InvalidSpec(
            "pendant-free sequence describes a cycle, not a hairy cycle".into(),
        ));
    }
    Ok(OrderedBipartiteGraph::from_pendants(
        p.to_vec(),
        GraphKind::HairyCycle,
        None,
    ))
}

/// The corona `H(2t, lambda)`, `lambda` pendants on every vertex of `C_2t`.
pub fn build_corona(t: usize, lambda: usize) -> Result<OrderedBipartiteGraph> {
    if t < 2 || lambda < 1 {
        return Err(Error::InvalidSpec(format!(
            "corona needs t >= 2 and lambda >= 1, got t={t}, lambda={lambda}"
        )));
    }
    Ok(OrderedBipartiteGraph::from_pendants(
        vec![lambda; 2 * t],
        GraphKind::HairyCycle,
        Some(lambda),
    ))
}

/// The cycle with `edges` edges, drawn on parts `x_1..x_{edges/2}`, `y_1..y_{edges/2}`.
pub fn build_cycle(edges: usize) -> Result<OrderedBipartiteGraph> {
    if edges % 2 == 1 {
        return Err(Error::NonBipartiteUnsupported(format!(
            "C_{edges} is an odd cycle"
        )));
    }
    if edges < 4 {
        return Err(Error::InvalidSpec(format!("C_{edges}: need at least 4 edges")));
    }
    Ok(OrderedBipartiteGraph::from_pendants(
        vec![0; edges],
        GraphKind::Cycle,
        None,
    ))
}

/// Cycle position (0-based, `x_1 = 0, y_1 = 1, ...`) of the spine vertex
/// that lands at position `i` of a re-represented hairy cycle.
fn source_position(len: usize, rotation: i64, reflect: bool, i: usize) -> usize {
    let len_i = len as i64;
    let pos = if reflect {
        rotation - i as i64
    } else {
        rotation + i as i64
    };
    pos.rem_euclid(len_i) as usize
}

/// Another description of the same hairy cycle: the traversal starts at
/// spine position `rotation` (0 = `x_1`, 1 = `y_1`, ...) and runs backwards
/// when `reflect` is set. All `4t` representations are reachable.
pub fn rerepresent_hairy(
    g: &OrderedBipartiteGraph,
    rotation: i64,
    reflect: bool,
) -> Result<CaterpillarSpec> {
    if g.kind() != GraphKind::HairyCycle {
        return Err(Error::WrongKind(format!(
            "expected a hairy cycle, got {:?}",
            g.kind()
        )));
    }
    let p = g.pendants();
    let pendants = (0..p.len())
        .map(|i| p[source_position(p.len(), rotation, reflect, i)])
        .collect();
    Ok(CaterpillarSpec { pendants })
}

/// Vertex correspondence for a re-representation: entry `v` of the result is
/// the id in `g` of vertex `v` of the re-represented graph.
pub fn representation_map(
    g: &OrderedBipartiteGraph,
    rep: &OrderedBipartiteGraph,
    rotation: i64,
    reflect: bool,
) -> Vec<usize> {
    let len = g.pendants().len();
    let spine_of = |graph: &OrderedBipartiteGraph, pos: usize| -> (usize, Vec<usize>) {
        let r = pos / 2 + 1;
        if pos.is_multiple_of(2) {
            (
                graph.x(r),
                (1..=graph.n(r)).map(|i| graph.x_pendant(r, i)).collect(),
            )
        } else {
            (
                graph.y(r),
                (1..=graph.m(r)).map(|i| graph.y_pendant(r, i)).collect(),
            )
        }
    };
    let mut map = vec![usize::MAX; rep.vertex_count()];
    for i in 0..len {
        let (new_v, new_p) = spine_of(rep, i);
        let (old_v, old_p) = spine_of(g, source_position(len, rotation, reflect, i));
        map[new_v] = old_v;
        for (a, b) in new_p.into_iter().zip(old_p) {
            map[a] = b;
        }
    }
    map
}

/// Whether two pendant sequences describe the same hairy cycle, i.e. lie in
/// one orbit under rotation and reflection of the cycle.
pub fn same_hairy_cycle(p: &[usize], q: &[usize]) -> bool {
    if p.len() != q.len() {
        return false;
    }
    let len = p.len() as i64;
    (0..len).any(|rot| {
        [false, true].iter().any(|&refl| {
            (0..p.len()).all(|i| q[i] == p[source_position(p.len(), rot, refl, i)])
        })
    })
}

/// `K_{partCount x partSize}` on `Z_v`, parts being the residues mod `partCount`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MultipartiteSpec {
    pub part_count: usize,
    pub part_size: usize,
}

impl MultipartiteSpec {
    pub fn new(part_count: usize, part_size: usize) -> Result<Self> {
        if part_count == 0 || part_size == 0 {
            return Err(Error::InvalidSpec(
                "multipartite graph needs positive part count and size".into(),
            ));
        }
        Ok(Self {
            part_count,
            part_size,
        })
    }

    pub fn v(&self) -> usize {
        self.part_count * self.part_size
    }

    pub fn edge_count(&self) -> usize {
        self.v() * (self.v() - self.part_size) / 2
    }
}

/// All pairs `{u, w}` with `u < w` in different parts, lexicographically.
pub fn multipartite_edges(spec: MultipartiteSpec) -> impl Iterator<Item = (usize, usize)> {
    let v = spec.v();
    let pc = spec.part_count;
    (0..v).flat_map(move |u| ((u + 1)..v).filter(move |w| (w - u) % pc != 0).map(move |w| (u, w)))
}
