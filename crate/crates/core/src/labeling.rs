//! Vertex labelings, label sets, the standard alpha_S construction for
//! caterpillars, and the verifiers for every labeling predicate used here.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{GraphKind, OrderedBipartiteGraph, Side};

/// A set of positive integers kept in ascending order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct LabelSet {
    values: Vec<i64>,
}

impl LabelSet {
    /// Sorts the input; rejects duplicates and non-positive entries.
    pub fn new(mut values: Vec<i64>) -> Result<Self> {
        values.sort_unstable();
        if let Some(&v) = values.first() {
            if v < 1 {
                return Err(Error::InvalidLabelSet(format!("{v} is not positive")));
            }
        }
        if let Some(w) = values.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidLabelSet(format!("duplicate value {}", w[0])));
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn max_value(&self) -> i64 {
        self.values.last().copied().unwrap_or(0)
    }

    pub fn contains(&self, v: i64) -> bool {
        self.values.binary_search(&v).is_ok()
    }

    /// The set with `c` removed; errors if `c` is not a member.
    pub fn without(&self, c: i64) -> Result<LabelSet> {
        let pos = self
            .values
            .binary_search(&c)
            .map_err(|_| Error::InvalidLabelSet(format!("{c} is not in the set")))?;
        let mut values = self.values.clone();
        values.remove(pos);
        Ok(LabelSet { values })
    }
}

impl TryFrom<Vec<i64>> for LabelSet {
    type Error = Error;

    fn try_from(values: Vec<i64>) -> Result<Self> {
        LabelSet::new(values)
    }
}

impl From<LabelSet> for Vec<i64> {
    fn from(s: LabelSet) -> Self {
        s.values
    }
}

/// `{1, ..., d(m+1)-1}` minus the multiples of `m+1`, where `e = d*m`.
pub fn divisible_label_set(e: usize, d: usize) -> Result<LabelSet> {
    let params = DivisibilityParams::new(e, d)?;
    Ok(LabelSet {
        values: params.admissible_differences().collect(),
    })
}

/// The numbers that drive every case split: `e = d*m`,
/// `Delta = {1..e+d-1}`, `Delta' = {m+1, ..., (d-1)(m+1)}`, and the optional
/// removed value, candidate closing values, `k = |B|` and mv-label counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DivisibilityParams {
    pub e: usize,
    pub d: usize,
    pub m: usize,
    pub c: Option<i64>,
    pub c1: Option<i64>,
    pub c2: Option<i64>,
    pub k: Option<usize>,
    pub d_a: Option<usize>,
    pub d_b: Option<usize>,
}

impl DivisibilityParams {
    pub fn new(e: usize, d: usize) -> Result<Self> {
        if e == 0 || d == 0 || !e.is_multiple_of(d) {
            return Err(Error::NotAdmissible { e, d });
        }
        Ok(Self {
            e,
            d,
            m: e / d,
            c: None,
            c1: None,
            c2: None,
            k: None,
            d_a: None,
            d_b: None,
        })
    }

    /// Largest element of `Delta`, also the largest admissible vertex label.
    pub fn top(&self) -> i64 {
        (self.d * (self.m + 1) - 1) as i64
    }

    pub fn delta(&self) -> std::ops::RangeInclusive<i64> {
        1..=self.top()
    }

    pub fn delta_prime(&self) -> Vec<i64> {
        let step = (self.m + 1) as i64;
        (1..self.d as i64).map(|i| i * step).collect()
    }

    pub fn in_delta_prime(&self, v: i64) -> bool {
        let step = (self.m + 1) as i64;
        v > 0 && v < self.d as i64 * step && v % step == 0
    }

    /// `Delta \ Delta'` in ascending order.
    pub fn admissible_differences(&self) -> impl Iterator<Item = i64> + '_ {
        let step = (self.m + 1) as i64;
        self.delta().filter(move |v| v % step != 0)
    }
}

/// An injective vertex labeling of an ordered bipartite graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeling {
    graph: Arc<OrderedBipartiteGraph>,
    values: Vec<i64>,
}

impl Labeling {
    /// Values are indexed by vertex id (A order, then B order).
    pub fn new(graph: Arc<OrderedBipartiteGraph>, values: Vec<i64>) -> Result<Self> {
        if values.len() != graph.vertex_count() {
            return Err(Error::InvalidLabeling(format!(
                "{} values for {} vertices",
                values.len(),
                graph.vertex_count()
            )));
        }
        Ok(Self { graph, values })
    }

    pub fn graph(&self) -> &OrderedBipartiteGraph {
        &self.graph
    }

    pub fn graph_arc(&self) -> &Arc<OrderedBipartiteGraph> {
        &self.graph
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn value(&self, id: usize) -> i64 {
        self.values[id]
    }

    /// Same graph, new values. Used by the transforms.
    pub(crate) fn with_values(&self, values: Vec<i64>) -> Labeling {
        debug_assert_eq!(values.len(), self.values.len());
        Labeling {
            graph: Arc::clone(&self.graph),
            values,
        }
    }

    /// `|f(a) - f(b)|` for each edge in canonical order.
    pub fn edge_differences(&self) -> Vec<i64> {
        self.graph
            .edges()
            .iter()
            .map(|&(a, b)| (self.values[b] - self.values[a]).abs())
            .collect()
    }

    pub fn side_values(&self, side: Side) -> impl Iterator<Item = i64> + '_ {
        self.graph.vertices(side).map(move |v| self.values[v])
    }

    pub fn min_max(&self, side: Side) -> Option<(i64, i64)> {
        let mut it = self.side_values(side);
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), v| (lo.min(v), hi.max(v))))
    }

    pub fn max_label(&self) -> i64 {
        self.values.iter().copied().max().unwrap_or(0)
    }

    /// The part holding the small labels, when the two parts are separated.
    pub fn low_side(&self) -> Option<Side> {
        let (a_lo, a_hi) = self.min_max(Side::A)?;
        let (b_lo, b_hi) = self.min_max(Side::B)?;
        if a_hi < b_lo {
            Some(Side::A)
        } else if b_hi < a_lo {
            Some(Side::B)
        } else {
            None
        }
    }
}

impl fmt::Display for Labeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = &self.graph;
        let show = |side: Side| -> Vec<String> {
            g.vertices(side)
                .map(|v| format!("{}={}", g.vertex(v), self.values[v]))
                .collect()
        };
        write!(f, "A[{}] B[{}]", show(Side::A).join(" "), show(Side::B).join(" "))
    }
}

/// The standard alpha_S-labeling of a caterpillar: the edges, in canonical
/// order, receive the elements of `s` in ascending order as `f(b) - f(a)`,
/// anchored at `f(y_t^{m_t}) = 0` (or `f(x_t) = 0` when `m_t = 0`).
pub fn standard_alpha_s(g: &Arc<OrderedBipartiteGraph>, s: &LabelSet) -> Result<Labeling> {
    if g.kind() != GraphKind::Caterpillar {
        return Err(Error::WrongKind(format!(
            "standard alpha_S needs a caterpillar, got {:?}",
            g.kind()
        )));
    }
    if s.len() != g.size() {
        return Err(Error::SizeMismatch {
            expected: g.size(),
            got: s.len(),
        });
    }
    let t = g.t();
    let anchor = if g.m(t) > 0 {
        g.y_pendant(t, g.m(t))
    } else {
        g.x(t)
    };
    let mut adj: Vec<Vec<(usize, i64)>> = vec![Vec::new(); g.vertex_count()];
    for (&(a, b), &label) in g.edges().iter().zip(s.values()) {
        adj[a].push((b, label));
        adj[b].push((a, -label));
    }
    let mut values = vec![None; g.vertex_count()];
    values[anchor] = Some(0i64);
    let mut queue = VecDeque::from([anchor]);
    while let Some(u) = queue.pop_front() {
        let fu = values[u].expect("queued vertices are labeled");
        for &(w, delta) in &adj[u] {
            if values[w].is_none() {
                values[w] = Some(fu + delta);
                queue.push_back(w);
            }
        }
    }
    let values = values
        .into_iter()
        .map(|v| v.ok_or_else(|| Error::InternalContradiction("caterpillar is disconnected".into())))
        .collect::<Result<Vec<_>>>()?;
    Labeling::new(Arc::clone(g), values)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FailureCode {
    NotInjective,
    OutOfRange,
    DifferenceSet,
    AlphaSeparation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub code: FailureCode,
    pub detail: String,
}

/// Outcome of a verification: every violated clause is listed.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Report {
    pub holds: bool,
    pub failures: Vec<Failure>,
}

impl Report {
    fn from_failures(failures: Vec<Failure>) -> Self {
        Self {
            holds: failures.is_empty(),
            failures,
        }
    }

    pub fn has(&self, code: FailureCode) -> bool {
        self.failures.iter().any(|f| f.code == code)
    }
}

fn check_injective(l: &Labeling, out: &mut Vec<Failure>) {
    let mut seen: BTreeMap<i64, usize> = BTreeMap::new();
    for (v, &x) in l.values.iter().enumerate() {
        if let Some(&u) = seen.get(&x) {
            out.push(Failure {
                code: FailureCode::NotInjective,
                detail: format!(
                    "{} and {} both labeled {x}",
                    l.graph.vertex(u),
                    l.graph.vertex(v)
                ),
            });
        } else {
            seen.insert(x, v);
        }
    }
}

fn check_range(l: &Labeling, max: i64, out: &mut Vec<Failure>) {
    for (v, &x) in l.values.iter().enumerate() {
        if x < 0 || x > max {
            out.push(Failure {
                code: FailureCode::OutOfRange,
                detail: format!("{} labeled {x}, outside 0..={max}", l.graph.vertex(v)),
            });
        }
    }
}

fn check_differences(l: &Labeling, expected: &[i64], out: &mut Vec<Failure>) {
    let mut got = l.edge_differences();
    got.sort_unstable();
    if got != expected {
        let have: BTreeSet<i64> = got.iter().copied().collect();
        let want: BTreeSet<i64> = expected.iter().copied().collect();
        let missing: Vec<_> = want.difference(&have).collect();
        let extra: Vec<_> = have.difference(&want).collect();
        let repeated: Vec<_> = got.windows(2).filter(|w| w[0] == w[1]).map(|w| w[0]).collect();
        out.push(Failure {
            code: FailureCode::DifferenceSet,
            detail: format!(
                "edge differences differ: missing {missing:?}, unexpected {extra:?}, repeated {repeated:?}"
            ),
        });
    }
}

/// Checks the alpha_S conditions: injective, labels in `0..=max s`, edge
/// differences exactly `s`, and `max_A f < min_B f`.
pub fn verify_alpha_s(l: &Labeling, s: &LabelSet) -> Report {
    let mut failures = Vec::new();
    check_injective(l, &mut failures);
    check_range(l, s.max_value(), &mut failures);
    check_differences(l, s.values(), &mut failures);
    if let (Some((_, a_hi)), Some((b_lo, _))) = (l.min_max(Side::A), l.min_max(Side::B)) {
        if a_hi >= b_lo {
            failures.push(Failure {
                code: FailureCode::AlphaSeparation,
                detail: format!("max over A is {a_hi}, min over B is {b_lo}"),
            });
        }
    }
    Report::from_failures(failures)
}

/// Checks a d-divisible graceful labeling, and optionally the alpha
/// separation (in either direction).
pub fn verify_d_divisible(l: &Labeling, d: usize, require_alpha: bool) -> Result<Report> {
    let params = DivisibilityParams::new(l.graph.size(), d)?;
    let expected: Vec<i64> = params.admissible_differences().collect();
    let mut failures = Vec::new();
    check_injective(l, &mut failures);
    check_range(l, params.top(), &mut failures);
    check_differences(l, &expected, &mut failures);
    if require_alpha && l.low_side().is_none() {
        failures.push(Failure {
            code: FailureCode::AlphaSeparation,
            detail: "neither part lies entirely below the other".into(),
        });
    }
    Ok(Report::from_failures(failures))
}

/// Missing vertex labels of one part: integers between the part's minimum
/// and maximum that the part does not use.
pub fn mv_labels(l: &Labeling, side: Side) -> BTreeSet<i64> {
    let used: BTreeSet<i64> = l.side_values(side).collect();
    match (used.first(), used.last()) {
        (Some(&lo), Some(&hi)) => (lo..=hi).filter(|v| !used.contains(v)).collect(),
        _ => BTreeSet::new(),
    }
}

/// `f(y_t) - f(x_1)`, the difference the closing edge would carry.
pub fn closing_difference(l: &Labeling) -> i64 {
    let g = &l.graph;
    l.values[g.y(g.t())] - l.values[g.x(1)]
}

/// Closes a caterpillar labeling whose endpoints differ by `c`, adding the
/// edge `[x_1, y_t]` with difference `c`.
pub fn extend_with_closing_edge(l: &Labeling, c: i64) -> Result<Labeling> {
    if l.graph.kind() != GraphKind::Caterpillar {
        return Err(Error::CannotExtend("labeling is not on a caterpillar".into()));
    }
    let have = closing_difference(l);
    if have != c {
        return Err(Error::CannotExtend(format!(
            "f(y_t) - f(x_1) = {have}, not {c}"
        )));
    }
    if l.edge_differences().contains(&c) {
        return Err(Error::CannotExtend(format!("{c} is already an edge difference")));
    }
    let closed = l.graph.close().map_err(|e| Error::CannotExtend(e.to_string()))?;
    Labeling::new(Arc::new(closed), l.values.clone())
}

/// `g(x) = top - f(x)`. Edge differences are unchanged and the parts swap
/// roles in the alpha separation.
pub fn complement_labeling(l: &Labeling, top: i64) -> Result<Labeling> {
    let max = l.max_label();
    if top < max {
        return Err(Error::InvalidTop { top, max });
    }
    Ok(l.with_values(l.values.iter().map(|&v| top - v).collect()))
}
