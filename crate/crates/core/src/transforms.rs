//! Local rewrites of an alpha_S-labeling of a caterpillar that keep the
//! difference set but lower `f(y_t) - f(x_1)`.
//!
//! Each operation shifts a prefix of both vertex orders up by a constant and
//! moves one or two vertices so that the differences of two or three edges
//! permute among themselves. Preconditions are checked against the current
//! labeling, so operations may follow each other.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{GraphKind, OrderedBipartiteGraph, Side};
use crate::labeling::{verify_alpha_s, LabelSet, Labeling};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Op {
    O1,
    O2,
    O3,
    O4,
    O5,
    #[serde(rename = "O5_4")]
    O54,
}

impl Op {
    pub const ALL: [Op; 6] = [Op::O1, Op::O2, Op::O3, Op::O4, Op::O5, Op::O54];

    /// How far the operation shifts the prefix `H_2`.
    fn shift(self) -> i64 {
        match self {
            Op::O1 | Op::O5 | Op::O54 => 1,
            Op::O2 | Op::O3 => 2,
            Op::O4 => 0,
        }
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Op::O1 => "O1",
            Op::O2 => "O2",
            Op::O3 => "O3",
            Op::O4 => "O4",
            Op::O5 => "O5",
            Op::O54 => "O5_4",
        };
        f.write_str(s)
    }
}

impl FromStr for Op {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "O1" => Ok(Op::O1),
            "O2" => Ok(Op::O2),
            "O3" => Ok(Op::O3),
            "O4" => Ok(Op::O4),
            "O5" => Ok(Op::O5),
            "O5_4" | "O54" => Ok(Op::O54),
            _ => Err(Error::InvalidRequest(format!("unknown operation {s:?}"))),
        }
    }
}

/// An operation at spine index `s` (ignored by O4); `j` picks the pendant
/// `y_s^j` for O5_4 and is searched for when absent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TransformRequest {
    pub op: Op,
    pub s: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j: Option<usize>,
}

impl TransformRequest {
    pub fn new(op: Op, s: usize) -> Self {
        Self { op, s, j: None }
    }
}

impl fmt::Display for TransformRequest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.op, self.j) {
            (Op::O4, _) => write!(f, "O4"),
            (op, Some(j)) => write!(f, "{op}@s={},j={j}", self.s),
            (op, None) => write!(f, "{op}@s={}", self.s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Condition {
    pub number: u8,
    pub holds: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub request: TransformRequest,
    pub conditions: Vec<Condition>,
}

impl ConditionReport {
    pub fn all_hold(&self) -> bool {
        self.conditions.iter().all(|c| c.holds)
    }

    fn failed(&self) -> String {
        self.conditions
            .iter()
            .filter(|c| !c.holds)
            .map(|c| format!("({}) {}", c.number, c.detail))
            .collect::<Vec<_>>()
            .join("; ")
    }
}

fn cond(number: u8, holds: bool, detail: impl Into<String>) -> Condition {
    Condition {
        number,
        holds,
        detail: detail.into(),
    }
}

fn validate(l: &Labeling, r: &TransformRequest) -> Result<()> {
    let g = l.graph();
    if g.kind() != GraphKind::Caterpillar {
        return Err(Error::WrongKind(
            "transforms act on caterpillar labelings; open the graph first".into(),
        ));
    }
    if r.op != Op::O4 && (r.s < 1 || r.s >= g.t()) {
        return Err(Error::InvalidRequest(format!(
            "s = {} outside 1..={}",
            r.s,
            g.t().saturating_sub(1)
        )));
    }
    if let Some(j) = r.j {
        if r.op != Op::O54 {
            return Err(Error::InvalidRequest(format!("pendant index only applies to O5_4, got {}", r.op)));
        }
        if j < 1 || j > g.m(r.s) {
            return Err(Error::InvalidRequest(format!("j = {j} outside 1..={}", g.m(r.s))));
        }
    }
    Ok(())
}

/// Value of `x_s^{n_s}`, if `x_s` has pendants.
fn last_x_pendant(l: &Labeling, s: usize) -> Option<i64> {
    let g = l.graph();
    (g.n(s) > 0).then(|| l.value(g.x_pendant(s, g.n(s))))
}

fn x_pendant(l: &Labeling, r: usize, i: usize) -> Option<i64> {
    let g = l.graph();
    (g.n(r) >= i).then(|| l.value(g.x_pendant(r, i)))
}

/// Gap between `f(y_s)` and the label just below it once the prefix has
/// shifted: the B vertex before `y_s` (`x_s^{n_s}`, or `y_{s-1}` when `x_s`
/// has no pendants), or the largest A label when `y_s` comes first in B.
fn gap_condition(l: &Labeling, s: usize, number: u8, min: i64) -> Condition {
    let g = l.graph();
    let ys = l.value(g.y(s));
    let (p, name) = match last_x_pendant(l, s) {
        Some(p) => (p, format!("x_{s}^{}", g.n(s))),
        None if s > 1 => (l.value(g.y(s - 1)), format!("y_{}", s - 1)),
        None => (
            l.side_values(Side::A).max().unwrap_or(i64::MIN),
            "max A".to_string(),
        ),
    };
    cond(
        number,
        ys - p >= min,
        format!("f(y_{s}) - f({name}) = {} (need >= {min})", ys - p),
    )
}

fn resolve_j(l: &Labeling, s: usize) -> Option<usize> {
    let g = l.graph();
    let target = l.value(g.x(s)) - 4;
    (1..=g.m(s)).find(|&j| l.value(g.y_pendant(s, j)) == target)
}

/// Evaluates the numbered conditions of the requested operation.
pub fn check_preconditions(l: &Labeling, r: &TransformRequest) -> Result<ConditionReport> {
    validate(l, r)?;
    let g = l.graph();
    let s = r.s;
    let conditions = match r.op {
        Op::O4 => {
            let t = g.t();
            vec![
                cond(1, g.n(t) != 0, format!("n_t = {}", g.n(t))),
                cond(2, g.m(t) == 0, format!("m_t = {}", g.m(t))),
            ]
        }
        Op::O1 | Op::O2 => {
            let want = if r.op == Op::O1 { 1 } else { 2 };
            let ys = l.value(g.y(s));
            let c1 = match x_pendant(l, s + 1, 1) {
                Some(v) => cond(
                    1,
                    ys + want == v,
                    format!("f(x_{}^1) - f(y_{s}) = {} (need {want})", s + 1, v - ys),
                ),
                None => cond(1, false, format!("x_{} has no pendants", s + 1)),
            };
            vec![c1, gap_condition(l, s, 2, want + 1)]
        }
        Op::O3 => {
            let ys = l.value(g.y(s));
            let c1 = match (x_pendant(l, s + 1, 1), x_pendant(l, s + 1, 2)) {
                (Some(p1), Some(p2)) => cond(
                    1,
                    ys + 2 == p1 + 1 && p1 + 1 == p2,
                    format!("f(y_{s}) + 2 = {}, f(x^1) + 1 = {}, f(x^2) = {p2}", ys + 2, p1 + 1),
                ),
                _ => cond(1, false, format!("x_{} has fewer than 2 pendants", s + 1)),
            };
            vec![c1, gap_condition(l, s, 2, 3)]
        }
        Op::O5 => {
            let ys = l.value(g.y(s));
            let c1 = match x_pendant(l, s + 1, 1) {
                Some(v) => cond(
                    1,
                    ys == v - 2,
                    format!("f(x_{}^1) - f(y_{s}) = {} (need 2)", s + 1, v - ys),
                ),
                None => cond(1, false, format!("x_{} has no pendants", s + 1)),
            };
            let c2 = match last_x_pendant(l, s) {
                Some(p) => cond(2, ys == p + 1, format!("f(y_{s}) - f(x_{s}^n) = {} (need 1)", ys - p)),
                None => cond(2, false, format!("x_{s} has no pendants")),
            };
            vec![c1, c2]
        }
        Op::O54 => {
            let ys = l.value(g.y(s));
            let xs = l.value(g.x(s));
            let j = r.j.or_else(|| resolve_j(l, s));
            let c1 = match j {
                Some(j) => {
                    let v = l.value(g.y_pendant(s, j));
                    cond(1, v == xs - 4, format!("f(y_{s}^{j}) = {v}, f(x_{s}) - 4 = {}", xs - 4))
                }
                None => cond(1, false, format!("no y_{s}^j labeled f(x_{s}) - 4 = {}", xs - 4)),
            };
            let c2 = match last_x_pendant(l, s) {
                Some(p) => cond(2, ys == p + 1, format!("f(y_{s}) - f(x_{s}^n) = {} (need 1)", ys - p)),
                None => cond(2, false, format!("x_{s} has no pendants")),
            };
            let c3 = if g.n(s + 1) < 5 {
                cond(3, false, format!("x_{} has {} < 5 pendants", s + 1, g.n(s + 1)))
            } else {
                let offs: Vec<i64> = (1..=5).map(|i| l.value(g.x_pendant(s + 1, i)) - ys).collect();
                cond(
                    3,
                    offs == [1, 2, 3, 4, 6],
                    format!("f(x_{}^i) - f(y_{s}) = {offs:?} (need [1, 2, 3, 4, 6])", s + 1),
                )
            };
            vec![c1, c2, c3]
        }
    };
    Ok(ConditionReport {
        request: TransformRequest {
            j: if r.op == Op::O54 { r.j.or_else(|| resolve_j(l, s)) } else { None },
            ..*r
        },
        conditions,
    })
}

/// Edges whose differences the operation permutes, plus for O5 and O5_4 the
/// pendant edges at `x_{s+1}` its conditions read. Two operations may be
/// combined when these sets are disjoint.
pub fn touched_edges(l: &Labeling, r: &TransformRequest) -> Result<BTreeSet<usize>> {
    validate(l, r)?;
    let g = l.graph();
    let s = r.s;
    let idx = |u: usize, w: usize| {
        g.edge_index(u, w)
            .ok_or_else(|| Error::PreconditionsNotMet(format!("{r}: required edge missing")))
    };
    let need = |ok: bool| {
        if ok {
            Ok(())
        } else {
            Err(Error::PreconditionsNotMet(format!("{r}: required vertex missing")))
        }
    };
    let mut out = BTreeSet::new();
    match r.op {
        Op::O1 | Op::O2 => {
            need(g.n(s + 1) >= 1)?;
            out.insert(idx(g.x(s + 1), g.y(s))?);
            out.insert(idx(g.x(s + 1), g.x_pendant(s + 1, 1))?);
        }
        Op::O3 => {
            need(g.n(s + 1) >= 2)?;
            out.insert(idx(g.x(s + 1), g.y(s))?);
            out.insert(idx(g.x(s + 1), g.x_pendant(s + 1, 2))?);
        }
        Op::O4 => {
            let t = g.t();
            need(g.n(t) >= 1)?;
            out.insert(idx(g.x(t), g.y(t))?);
            out.insert(idx(g.x(t), g.x_pendant(t, g.n(t)))?);
        }
        Op::O5 | Op::O54 => {
            need(g.n(s) >= 1)?;
            out.insert(idx(g.x(s), g.x_pendant(s, g.n(s)))?);
            out.insert(idx(g.x(s), g.y(s))?);
            // condition (1) reads the first pendants of x_{s+1}
            let read = if r.op == Op::O5 { 1 } else { 5 };
            for i in 1..=read.min(g.n(s + 1)) {
                out.insert(idx(g.x(s + 1), g.x_pendant(s + 1, i))?);
            }
            if r.op == Op::O54 {
                let j = r
                    .j
                    .or_else(|| resolve_j(l, s))
                    .ok_or_else(|| Error::PreconditionsNotMet(format!("{r}: no pendant y_s^j")))?;
                out.insert(idx(g.y_pendant(s, j), g.y(s))?);
            }
        }
    }
    Ok(out)
}

/// The labeling produced by the operation. Fails without side effects when
/// a precondition does not hold.
pub fn apply_transform(l: &Labeling, r: &TransformRequest) -> Result<Labeling> {
    let report = check_preconditions(l, r)?;
    if !report.all_hold() {
        return Err(Error::PreconditionsNotMet(format!("{r}: {}", report.failed())));
    }
    let g = l.graph();
    let s = r.s;
    let f = l.values();
    let mut out = f.to_vec();
    match r.op {
        Op::O4 => {
            let t = g.t();
            out.swap(g.y(t), g.x_pendant(t, g.n(t)));
        }
        Op::O1 | Op::O2 | Op::O3 => {
            let shift = r.op.shift();
            // H_2: A up to y_s^{m_s}, B up to y_s
            let a_end = g.x(s + 1);
            let b_end = g.y(s);
            shift_prefix(g, &mut out, a_end, b_end + 1, shift);
            let moved = if r.op == Op::O3 {
                g.x_pendant(s + 1, 2)
            } else {
                g.x_pendant(s + 1, 1)
            };
            out[moved] = f[moved] - shift;
        }
        Op::O5 | Op::O54 => {
            // H_2: A up to x_s, B up to x_s^{n_s - 1}
            let last = g.x_pendant(s, g.n(s));
            shift_prefix(g, &mut out, g.x(s) + 1, last, 1);
            if r.op == Op::O5 {
                out[last] = f[last] + 2;
            } else {
                let j = report.request.j.expect("condition (1) resolved j");
                out[last] = f[g.y(s)] + 5;
                out[g.y_pendant(s, j)] = f[g.x(s)];
            }
        }
    }
    // The conditions guarantee a valid result only on a standard labeling;
    // after earlier transforms the moved labels can collide.
    let g = l.with_values(out);
    let set = LabelSet::new(l.edge_differences())
        .map_err(|_| Error::InvalidLabeling("input has repeated edge differences".into()))?;
    let report = verify_alpha_s(&g, &set);
    if !report.holds {
        return Err(Error::PreconditionsNotMet(format!(
            "{r}: result is not an alpha_S-labeling: {}",
            report
                .failures
                .iter()
                .map(|f| f.detail.as_str())
                .collect::<Vec<_>>()
                .join("; ")
        )));
    }
    Ok(g)
}

// Adds `shift` to A ids below `a_end` and to B ids in `b_start..b_end`
// (B ids are absolute).
fn shift_prefix(g: &OrderedBipartiteGraph, out: &mut [i64], a_end: usize, b_end: usize, shift: i64) {
    for v in g.vertices(Side::A).take_while(|&v| v < a_end) {
        out[v] += shift;
    }
    for v in g.vertices(Side::B).take_while(|&v| v < b_end) {
        out[v] += shift;
    }
}

/// Decrease of `f(y_t) - f(x_1)` caused by `r` on `l` (assuming it applies).
pub fn closing_delta(l: &Labeling, r: &TransformRequest) -> i64 {
    match r.op {
        Op::O4 => {
            let g = l.graph();
            let t = g.t();
            l.value(g.y(t)) - l.value(g.x_pendant(t, g.n(t)))
        }
        op => op.shift(),
    }
}

/// Applies the requests in order after checking that the edge sets they
/// touch are pairwise disjoint.
pub fn compose_transforms(l: &Labeling, rs: &[TransformRequest]) -> Result<Labeling> {
    let mut seen: BTreeSet<usize> = BTreeSet::new();
    for r in rs {
        let touched = touched_edges(l, r)?;
        if let Some(e) = touched.intersection(&seen).next() {
            let (a, b) = l.graph().edges()[*e];
            return Err(Error::NotDisjoint(format!(
                "{r} touches edge [{},{}] already used",
                l.graph().vertex(a),
                l.graph().vertex(b)
            )));
        }
        seen.extend(touched);
    }
    let mut cur = l.clone();
    for r in rs {
        cur = apply_transform(&cur, r)?;
    }
    Ok(cur)
}
