//! Odd alpha-labelings of bipartite hairy cycles and d-divisible
//! alpha-labelings of the coronas `H(2t, lambda)`.
//!
//! Every construction starts from the standard alpha_S-labeling of the
//! caterpillar left after deleting `[x_1, y_t]`, with one difference `c`
//! held back for the closing edge, and patches the closing difference with
//! transforms when it misses `c`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::construction::{Construction, TraceStep};
use crate::error::{Error, Result};
use crate::graph::{
    build_corona, rerepresent_hairy, representation_map, build_hairy_cycle, GraphKind,
    OrderedBipartiteGraph, Vertex,
};
use crate::labeling::{
    closing_difference, divisible_label_set, extend_with_closing_edge, standard_alpha_s,
    verify_d_divisible, DivisibilityParams, Labeling,
};
use crate::oracle::{
    local_search_alpha, search_transform_sequence, search_with, SearchOptions, Separation,
    MAX_ORACLE_VERTICES,
};
use crate::transforms::{compose_transforms, Op, TransformRequest};

/// Which edge of the caterpillar order is the `k`-th one, `k = |B|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OddCaseTag {
    /// `[y_s, y_s^j]`
    PendantFromB,
    /// `[x_s, x_s^j]`
    PendantFromA,
    /// `[x_s, y_{s-1}]`
    CycleEdgeXYPrev,
    /// `[x_s, y_s]`
    CycleEdgeXY,
}

/// How a `[x_s, y_s]` case is repaired.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Subcase4 {
    /// `n_{s+1} != 0`: fixed by O2 at `s`.
    NextHasPendants,
    /// `n_t != 0` and `m_t = 0`: fixed by O4.
    TailPendantOnX,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OddCase {
    pub tag: OddCaseTag,
    pub s: usize,
    pub j: Option<usize>,
    /// `None` for a `[x_s, y_s]` edge means neither repair applies to this
    /// representation.
    pub subcase: Option<Subcase4>,
}

impl OddCase {
    fn name(&self) -> &'static str {
        match (self.tag, self.subcase) {
            (OddCaseTag::PendantFromB, _) => "case-1",
            (OddCaseTag::PendantFromA, _) => "case-2",
            (OddCaseTag::CycleEdgeXYPrev, _) => "case-3",
            (OddCaseTag::CycleEdgeXY, Some(Subcase4::NextHasPendants)) => "case-4.1",
            (OddCaseTag::CycleEdgeXY, Some(Subcase4::TailPendantOnX)) => "case-4.2",
            (OddCaseTag::CycleEdgeXY, None) => "case-4",
        }
    }

    fn resolved(&self) -> bool {
        self.tag != OddCaseTag::CycleEdgeXY || self.subcase.is_some()
    }
}

fn require_hairy(g: &OrderedBipartiteGraph) -> Result<()> {
    if g.kind() != GraphKind::HairyCycle {
        return Err(Error::WrongKind(format!(
            "expected a hairy cycle, got {:?}",
            g.kind()
        )));
    }
    Ok(())
}

/// Classifies the `k`-th edge of the caterpillar order, `k = |B|`.
pub fn classify_kth_edge(g: &OrderedBipartiteGraph) -> Result<OddCase> {
    require_hairy(g)?;
    let (a, b) = g.edges()[g.k() - 1];
    let case = match (g.vertex(a), g.vertex(b)) {
        (Vertex::YPendant(r, i), Vertex::Y(_)) => OddCase {
            tag: OddCaseTag::PendantFromB,
            s: r,
            j: Some(i),
            subcase: None,
        },
        (Vertex::X(_), Vertex::XPendant(r, i)) => OddCase {
            tag: OddCaseTag::PendantFromA,
            s: r,
            j: Some(i),
            subcase: None,
        },
        (Vertex::X(r), Vertex::Y(q)) if q == r => {
            let t = g.t();
            let subcase = if r < t && g.n(r + 1) != 0 {
                Some(Subcase4::NextHasPendants)
            } else if g.n(t) != 0 && g.m(t) == 0 {
                Some(Subcase4::TailPendantOnX)
            } else {
                None
            };
            OddCase {
                tag: OddCaseTag::CycleEdgeXY,
                s: r,
                j: None,
                subcase,
            }
        }
        (Vertex::X(r), Vertex::Y(_)) => OddCase {
            tag: OddCaseTag::CycleEdgeXYPrev,
            s: r,
            j: None,
            subcase: None,
        },
        (u, w) => {
            return Err(Error::InternalContradiction(format!(
                "unexpected edge [{u}, {w}] in caterpillar order"
            )))
        }
    };
    Ok(case)
}

/// The first re-representation (by rotation, then reflection) whose last
/// spine pair has `n_t != 0` and `m_t = 0`.
fn tail_representation(g: &OrderedBipartiteGraph) -> Result<(i64, bool)> {
    let len = g.pendants().len() as i64;
    for rotation in 0..len {
        for reflect in [false, true] {
            let q = rerepresent_hairy(g, rotation, reflect)?;
            let p = q.pendants();
            if p[p.len() - 2] != 0 && p[p.len() - 1] == 0 {
                return Ok((rotation, reflect));
            }
        }
    }
    Err(Error::InternalContradiction(
        "hairy cycle has no representation ending in (n_t != 0, m_t = 0)".into(),
    ))
}

struct Representation {
    graph: Arc<OrderedBipartiteGraph>,
    case: OddCase,
    // rotation, reflection and vertex map back to the original when moved
    moved: Option<(i64, bool, Vec<usize>)>,
}

fn odd_representation(g: &OrderedBipartiteGraph) -> Result<Representation> {
    let case = classify_kth_edge(g)?;
    if case.resolved() {
        return Ok(Representation {
            graph: Arc::new(g.clone()),
            case,
            moved: None,
        });
    }
    let (rotation, reflect) = tail_representation(g)?;
    let rep = build_hairy_cycle(&rerepresent_hairy(g, rotation, reflect)?)?;
    let case = classify_kth_edge(&rep)?;
    if !case.resolved() {
        return Err(Error::InternalContradiction(format!(
            "representation ({rotation}, {reflect}) still unresolved"
        )));
    }
    let map = representation_map(g, &rep, rotation, reflect);
    Ok(Representation {
        graph: Arc::new(rep),
        case,
        moved: Some((rotation, reflect, map)),
    })
}

impl Representation {
    fn transport(&self, original: &Arc<OrderedBipartiteGraph>, values: &[i64]) -> Result<Labeling> {
        match &self.moved {
            None => Labeling::new(Arc::clone(original), values.to_vec()),
            Some((_, _, map)) => {
                let mut out = vec![0; values.len()];
                for (v, &old) in map.iter().enumerate() {
                    out[old] = values[v];
                }
                Labeling::new(Arc::clone(original), out)
            }
        }
    }

    fn provenance(&self, prefix: &str) -> String {
        match &self.moved {
            None => format!("{prefix}/{}", self.case.name()),
            Some((rot, refl, _)) => format!(
                "{prefix}/{}/rotation={rot},reflect={refl}",
                self.case.name()
            ),
        }
    }
}

/// Difference withheld for the closing edge in each odd case.
fn odd_removed(case: &OddCase, k: i64) -> i64 {
    match case.tag {
        OddCaseTag::PendantFromA => 2 * k + 1,
        _ => 2 * k - 1,
    }
}

/// Closed-form odd labeling of a resolved representation.
// `literal_tail` reproduces the printed `f(y_{r-1}) + 2i - 1` for the x
// pendants of the tail case, which gives even differences; the working
// labeling uses `+ 2i` as every other case does.
fn closed_form_values(g: &OrderedBipartiteGraph, case: &OddCase, literal_tail: bool) -> Vec<i64> {
    let t = g.t();
    let e = g.size() as i64;
    let n = |r: usize| g.n(r) as i64;
    let m = |r: usize| g.m(r) as i64;
    let tail_m = |r: usize| (r..=t).map(m).sum::<i64>();
    let head_n = |r: usize| (1..=r).map(n).sum::<i64>();
    let base_x = |r: usize| 2 * tail_m(r) + 2 * (t - r) as i64;
    let s = case.s;
    let mut f = vec![0i64; g.vertex_count()];

    let x_shift = |r: usize| -> i64 {
        match case.tag {
            OddCaseTag::PendantFromB => (r <= s) as i64 * 2,
            OddCaseTag::CycleEdgeXYPrev => (r < s) as i64 * 2,
            OddCaseTag::CycleEdgeXY if case.subcase == Some(Subcase4::NextHasPendants) => {
                (r <= s) as i64 * 2
            }
            _ => 0,
        }
    };
    for r in 1..=t {
        f[g.x(r)] = base_x(r) + x_shift(r);
    }
    let fx1 = f[g.x(1)];
    for r in 1..=t {
        let plain = fx1 + 2 * head_n(r) + 2 * r as i64 - 1;
        f[g.y(r)] = match (case.tag, case.subcase) {
            (OddCaseTag::PendantFromA, _) if r >= s => plain + 2,
            (OddCaseTag::CycleEdgeXY, Some(Subcase4::NextHasPendants)) if r == s => plain + 2,
            (OddCaseTag::CycleEdgeXY, Some(Subcase4::TailPendantOnX)) => {
                if r == t {
                    2 * e - 3
                } else if r >= s {
                    plain + 2
                } else {
                    plain
                }
            }
            _ => plain,
        };
    }
    for r in 1..=t {
        for i in 1..=g.n(r) {
            let ii = i as i64;
            let v = if r == 1 {
                fx1 + 2 * ii - 1
            } else {
                let prev = f[g.y(r - 1)];
                match (case.tag, case.subcase) {
                    (OddCaseTag::PendantFromA, _) if r == s && Some(i) > case.j => {
                        prev + 2 * ii + 2
                    }
                    (OddCaseTag::CycleEdgeXY, Some(Subcase4::NextHasPendants)) if r == s + 1 => {
                        if i == 1 {
                            prev - 2
                        } else {
                            prev + 2 * (ii - 1)
                        }
                    }
                    (OddCaseTag::CycleEdgeXY, Some(Subcase4::TailPendantOnX)) => {
                        if r == t && i == g.n(t) {
                            2 * e - 1
                        } else {
                            prev + 2 * ii - literal_tail as i64
                        }
                    }
                    _ => prev + 2 * ii,
                }
            };
            f[g.x_pendant(r, i)] = v;
        }
    }
    for r in 1..=t {
        for i in 1..=g.m(r) {
            let ii = i as i64;
            let skip = case.tag == OddCaseTag::PendantFromB && r == s && Some(i) >= case.j;
            f[g.y_pendant(r, i)] = f[g.x(r)] - 2 * if skip { ii + 1 } else { ii };
        }
    }
    f
}

fn check(l: &Labeling, d: usize, what: &str) -> Result<()> {
    let report = verify_d_divisible(l, d, true)?;
    if !report.holds {
        return Err(Error::InternalContradiction(format!(
            "{what} does not verify: {:?}",
            report.failures
        )));
    }
    Ok(())
}

/// Odd alpha-labeling of a bipartite hairy cycle from the closed forms.
pub fn odd_alpha_hairy(g: &Arc<OrderedBipartiteGraph>) -> Result<Construction> {
    let rep = odd_representation(g)?;
    let values = closed_form_values(&rep.graph, &rep.case, false);
    let l = rep.transport(g, &values)?;
    let e = g.size();
    check(&l, e, "closed-form odd labeling")?;
    let c = l.value(g.y(g.t())) - l.value(g.x(1));
    Ok(Construction {
        labeling: l,
        d: e,
        provenance: rep.provenance("odd/closed-form"),
        removed: Some(c),
        trace: Vec::new(),
    })
}

/// Odd alpha-labeling of a bipartite hairy cycle built as the standard
/// labeling plus at most one transform.
pub fn odd_alpha_hairy_by_transforms(g: &Arc<OrderedBipartiteGraph>) -> Result<Construction> {
    let rep = odd_representation(g)?;
    let e = g.size();
    let k = rep.graph.k() as i64;
    let c = odd_removed(&rep.case, k);
    let plan: Vec<TransformRequest> = match rep.case.subcase {
        Some(Subcase4::NextHasPendants) => vec![TransformRequest::new(Op::O2, rep.case.s)],
        Some(Subcase4::TailPendantOnX) => vec![TransformRequest::new(Op::O4, 0)],
        None => Vec::new(),
    };
    let path = Arc::new(rep.graph.open());
    let (f, trace) = run_plan(&path, e, e, c, &plan)?;
    let closed = extend_with_closing_edge(&f, c)?;
    let l = rep.transport(g, closed.values())?;
    check(&l, e, "transform-built odd labeling")?;
    Ok(Construction {
        labeling: l,
        d: e,
        provenance: rep.provenance("odd/transforms"),
        removed: Some(c),
        trace,
    })
}

/// Standard labeling with `c` removed followed by `plan`, required to end
/// with closing difference `c`.
fn run_plan(
    path: &Arc<OrderedBipartiteGraph>,
    e: usize,
    d: usize,
    c: i64,
    plan: &[TransformRequest],
) -> Result<(Labeling, Vec<TraceStep>)> {
    let s = divisible_label_set(e, d)?.without(c)?;
    let f = standard_alpha_s(path, &s)?;
    let g = compose_transforms(&f, plan)?;
    let mut trace = vec![TraceStep {
        op: None,
        closing: closing_difference(&f),
    }];
    let mut cur = f;
    for r in plan {
        cur = compose_transforms(&cur, std::slice::from_ref(r))?;
        trace.push(TraceStep {
            op: Some(*r),
            closing: closing_difference(&cur),
        });
    }
    debug_assert_eq!(cur, g);
    let closing = closing_difference(&g);
    if closing != c {
        return Err(Error::InternalContradiction(format!(
            "after {plan:?} the closing difference is {closing}, expected {c}"
        )));
    }
    Ok((g, trace))
}

/// The two candidate closing differences for a corona, ascending. Both are
/// checked to avoid the multiples of `m + 1`.
pub fn candidate_closing_values(p: &DivisibilityParams) -> Result<(i64, i64)> {
    let (e, d) = (p.e as i64, p.d as i64);
    let (c1, c2) = if d % 2 == 1 {
        ((e + d - 1) / 2, (e + d + 1) / 2)
    } else {
        ((e + d - 2) / 2, (e + d + 2) / 2)
    };
    for c in [c1, c2] {
        if c < 1 || c > p.top() || p.in_delta_prime(c) {
            return Err(Error::InternalContradiction(format!(
                "candidate {c} is not an admissible difference for e={e}, d={d}"
            )));
        }
    }
    Ok((c1, c2))
}

/// Sub-branches of the `t` odd, `d` even, `lambda = m - 3 (mod m)` case.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShiftBranch {
    /// `lambda, m >= 4`: O1 and O5_4.
    LargeLambda,
    /// `m = 2`: O1 at the middle and O5 at 1.
    M2,
    /// `m = 3`: O1 at 1 and at the middle.
    M3,
    /// `m = 5, lambda = 2`.
    M5Lambda2,
    /// `m = 6, lambda = 3`; `t = 3` uses a stored labeling.
    M6Lambda3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "case")]
pub enum CoronaCase {
    /// `d = e`, the odd labeling.
    Odd,
    /// `t` even: no transform needed.
    EvenT,
    /// `t` odd, `d` odd: O1 at the middle.
    OddD,
    /// `t` odd, `d` even, generic `lambda`: O3 at the middle.
    GenericLambda,
    /// `lambda = m - 2 (mod m)`: O2 at the middle.
    LambdaMinus2,
    LambdaMinus3 { branch: ShiftBranch },
    /// `lambda = 1`.
    SinglePendant,
}

/// Which branch of the corona construction handles `(t, lambda, d)`.
pub fn classify_corona(t: usize, lambda: usize, d: usize) -> Result<CoronaCase> {
    if t < 2 || lambda < 1 {
        return Err(Error::OutOfDomain(format!(
            "corona needs t >= 2 and lambda >= 1, got t={t}, lambda={lambda}"
        )));
    }
    let e = 2 * t * (lambda + 1);
    let p = DivisibilityParams::new(e, d)?;
    let m = p.m;
    Ok(if d == e {
        CoronaCase::Odd
    } else if t.is_multiple_of(2) {
        CoronaCase::EvenT
    } else if d % 2 == 1 {
        CoronaCase::OddD
    } else if lambda == 1 {
        CoronaCase::SinglePendant
    } else if (lambda + 2).is_multiple_of(m) {
        CoronaCase::LambdaMinus2
    } else if !(lambda + 3).is_multiple_of(m) {
        CoronaCase::GenericLambda
    } else {
        let branch = if m == 2 {
            ShiftBranch::M2
        } else if m == 3 {
            ShiftBranch::M3
        } else if lambda == 2 {
            ShiftBranch::M5Lambda2
        } else if lambda == 3 {
            ShiftBranch::M6Lambda3
        } else if t >= 5 || lambda >= 7 {
            ShiftBranch::LargeLambda
        } else {
            return Err(Error::InternalContradiction(format!(
                "no branch for t={t}, lambda={lambda}, d={d}: m={m} divides lambda+3 with t = 3"
            )));
        };
        CoronaCase::LambdaMinus3 { branch }
    })
}

impl CoronaCase {
    fn name(&self) -> String {
        match self {
            CoronaCase::Odd => "odd".into(),
            CoronaCase::EvenT => "even-t".into(),
            CoronaCase::OddD => "odd-d".into(),
            CoronaCase::GenericLambda => "even-d/generic".into(),
            CoronaCase::LambdaMinus2 => "even-d/lambda=m-2".into(),
            CoronaCase::LambdaMinus3 { branch } => format!("even-d/lambda=m-3/{branch:?}"),
            CoronaCase::SinglePendant => "even-d/lambda=1".into(),
        }
    }
}

/// Stored 4-divisible alpha-labeling of `H(6, 3)`, values in A order then
/// B order. Found once by exhaustive search.
pub const H6_3_FOUR_DIVISIBLE: [i64; 24] = [
    0, 9, 10, 11, 8, 3, 4, 5, 1, 2, 6, 7, 25, 26, 27, 12, 13, 16, 23, 14, 17, 20, 21, 24,
];

/// A d-divisible alpha-labeling of `H(2t, lambda)`.
pub fn corona_d_divisible(t: usize, lambda: usize, d: usize) -> Result<Construction> {
    let case = classify_corona(t, lambda, d)?;
    let g = Arc::new(build_corona(t, lambda)?);
    let e = g.size();
    if case == CoronaCase::Odd {
        let mut out = odd_alpha_hairy(&g)?;
        out.provenance = format!("corona/odd/{}", out.provenance);
        return Ok(out);
    }
    let p = DivisibilityParams::new(e, d)?;
    let (c1, c2) = candidate_closing_values(&p)?;
    let path = Arc::new(g.open());
    let mid = t.div_ceil(2);
    let req = TransformRequest::new;
    let name = case.name();

    let finish = |f: Labeling, c: i64, trace: Vec<TraceStep>, how: &str| -> Result<Construction> {
        let l = extend_with_closing_edge(&f, c)?;
        check(&l, d, &format!("corona H({}, {lambda}) with d={d}", 2 * t))?;
        Ok(Construction {
            labeling: l,
            d,
            provenance: format!("corona/{name}{how}"),
            removed: Some(c),
            trace,
        })
    };
    let planned = |c: i64, plan: &[TransformRequest]| -> Result<Construction> {
        let (f, trace) = run_plan(&path, e, d, c, plan)?;
        finish(f, c, trace, "")
    };
    // transform sequences for every withheld difference, c1 and c2 first,
    // then exhaustive search on small graphs, local search on larger ones
    let searched = || -> Result<Construction> {
        let full = divisible_label_set(e, d)?;
        let rest = full.values().iter().copied().filter(|&c| c != c1 && c != c2);
        for c in [c1, c2].into_iter().chain(rest) {
            let f = standard_alpha_s(&path, &full.without(c)?)?;
            if let Some(seq) = search_transform_sequence(&f, c, TRANSFORM_SEARCH_DEPTH) {
                let (f, trace) = run_plan(&path, e, d, c, &seq)?;
                return finish(f, c, trace, "/transform-search");
            }
        }
        let (found, how) = if g.vertex_count() <= MAX_ORACLE_VERTICES {
            let found = search_with(
                &g,
                &full,
                SearchOptions {
                    separation: Separation::LowA,
                    limit: Some(1),
                    ordered_leaves: true,
                    ..SearchOptions::default()
                },
            )?;
            (found.into_iter().next(), "exhaustive-search")
        } else {
            (local_search_alpha(&g, &full, LOCAL_SEARCH_SEED), "local-search")
        };
        let l = found.ok_or_else(|| {
            Error::InternalContradiction(format!(
                "no {d}-divisible alpha-labeling of H({}, {lambda}) found ({how})",
                2 * t
            ))
        })?;
        check(&l, d, "searched labeling")?;
        let c = closing_difference(&l);
        Ok(Construction {
            labeling: l,
            d,
            provenance: format!("corona/{name}/{how}"),
            removed: Some(c),
            trace: Vec::new(),
        })
    };

    match case {
        CoronaCase::Odd => unreachable!(),
        CoronaCase::EvenT => planned(c2, &[]),
        CoronaCase::OddD => planned(c1, &[req(Op::O1, mid)]),
        CoronaCase::GenericLambda => planned(c1, &[req(Op::O3, mid)]),
        CoronaCase::LambdaMinus2 => planned(c1, &[req(Op::O2, mid)]),
        CoronaCase::LambdaMinus3 { branch } => match branch {
            ShiftBranch::M2 => planned(c1, &[req(Op::O1, mid), req(Op::O5, 1)]),
            ShiftBranch::M3 => planned(c1, &[req(Op::O1, 1), req(Op::O1, mid)]),
            ShiftBranch::M5Lambda2 => planned(c1, &[req(Op::O1, mid), req(Op::O5, mid + 1)]),
            ShiftBranch::M6Lambda3 if t == 3 => {
                let l = Labeling::new(Arc::clone(&g), H6_3_FOUR_DIVISIBLE.to_vec())?;
                check(&l, d, "stored H(6, 3) labeling")?;
                let c = closing_difference(&l);
                Ok(Construction {
                    labeling: l,
                    d,
                    provenance: format!("corona/{name}/stored"),
                    removed: Some(c),
                    trace: Vec::new(),
                })
            }
            ShiftBranch::M6Lambda3 => planned(c1, &[req(Op::O1, mid), req(Op::O5, 3)]),
            ShiftBranch::LargeLambda => {
                // the position of O5_4 is left open; take the first that fits
                for s in 1..t {
                    if let Ok(out) = planned(c1, &[req(Op::O1, mid), req(Op::O54, s)]) {
                        return Ok(out);
                    }
                }
                searched()
            }
        },
        CoronaCase::SinglePendant if d == 2 => {
            let l = h2t1_two_divisible(t)?;
            let c = closing_difference(&l);
            Ok(Construction {
                labeling: l,
                d,
                provenance: format!("corona/{name}/closed-form"),
                removed: Some(c),
                trace: Vec::new(),
            })
        }
        CoronaCase::SinglePendant => searched(),
    }
}

/// Maximum number of transforms tried when the construction does not name them.
pub const TRANSFORM_SEARCH_DEPTH: usize = 3;

/// Seed for the randomized fallback on graphs too big to search exhaustively.
pub const LOCAL_SEARCH_SEED: u64 = 0x5eed;

/// Closed-form 2-divisible alpha-labeling of `H(2t, 1)` for odd `t > 1`.
pub fn h2t1_two_divisible(t: usize) -> Result<Labeling> {
    if t < 3 || t.is_multiple_of(2) {
        return Err(Error::OutOfDomain(format!("t must be odd and > 1, got {t}")));
    }
    let g = Arc::new(build_corona(t, 1)?);
    let ti = t as i64;
    let mut f = vec![0i64; g.vertex_count()];
    let one_mod_four = t % 4 == 1;
    for r in 1..=t {
        let ri = r as i64;
        let x = if one_mod_four {
            if 4 * ri <= ti + 3 {
                2 * ti + 3 - 2 * ri
            } else if 2 * ri <= ti + 1 {
                2 * ti + 2 - 2 * ri
            } else {
                2 * ti + 1 - 2 * ri
            }
        } else if 4 * ri <= ti + 1 {
            2 * ti + 3 - 2 * ri
        } else if 2 * ri <= ti + 1 {
            2 * ti + 2 - 2 * ri
        } else {
            2 * ti + 1 - 2 * ri
        };
        let y_pendant = if one_mod_four {
            if 4 * ri < ti {
                2 * ti + 2 - 2 * ri
            } else if 2 * ri < ti {
                2 * ti + 1 - 2 * ri
            } else {
                2 * ti - 2 * ri
            }
        } else if 4 * ri <= ti + 1 {
            2 * ti + 2 - 2 * ri
        } else if 2 * ri <= ti + 1 {
            2 * ti + 1 - 2 * ri
        } else {
            2 * ti - 2 * ri
        };
        let x_pendant = if r == 1 {
            if one_mod_four {
                3 * ti + 2
            } else {
                3 * ti + 1
            }
        } else if one_mod_four {
            if 2 * ri <= ti + 1 {
                2 * ti - 1 + 2 * ri
            } else if 2 * ri == ti + 3 {
                3 * ti + 1
            } else {
                2 * ti + 2 * ri
            }
        } else if 2 * ri <= ti + 3 {
            2 * ti - 1 + 2 * ri
        } else {
            2 * ti + 2 * ri
        };
        let y = if 2 * ri < ti {
            2 * ti + 2 * ri
        } else if 2 * ri == ti + 1 {
            3 * ti + 3
        } else {
            2 * ti + 1 + 2 * ri
        };
        f[g.x(r)] = x;
        f[g.y_pendant(r, 1)] = y_pendant;
        f[g.x_pendant(r, 1)] = x_pendant;
        f[g.y(r)] = y;
    }
    let l = Labeling::new(g, f)?;
    check(&l, 2, &format!("closed-form H({}, 1)", 2 * t))?;
    Ok(l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{CaterpillarSpec, Side};
    use crate::labeling::mv_labels;

    fn hairy(p: &[usize]) -> Arc<OrderedBipartiteGraph> {
        Arc::new(build_hairy_cycle(&CaterpillarSpec::new(p.to_vec()).unwrap()).unwrap())
    }

    #[test]
    fn classify_examples() {
        let g = hairy(&[3, 3, 0, 0, 3, 6, 0, 1, 3, 1]);
        let c = classify_kth_edge(&g).unwrap();
        assert_eq!((c.tag, c.s, c.subcase), (OddCaseTag::CycleEdgeXY, 3, None));
        let g = hairy(&[1, 3, 1, 3, 3, 0, 0, 3, 6, 0]);
        let c = classify_kth_edge(&g).unwrap();
        assert_eq!(
            (c.tag, c.s, c.subcase),
            (OddCaseTag::CycleEdgeXY, 3, Some(Subcase4::TailPendantOnX))
        );
        for (t, lambda) in [(2, 1), (3, 2), (4, 3), (5, 1)] {
            let g = build_corona(t, lambda).unwrap();
            let tag = classify_kth_edge(&g).unwrap().tag;
            assert!(matches!(tag, OddCaseTag::CycleEdgeXY | OddCaseTag::CycleEdgeXYPrev));
        }
    }

    #[test]
    fn rearranged_example() {
        let g = hairy(&[3, 3, 0, 0, 3, 6, 0, 1, 3, 1]);
        let rep = odd_representation(&g).unwrap();
        let q = rep.graph.pendants();
        assert!(crate::graph::same_hairy_cycle(g.pendants(), q));
        assert!(q[q.len() - 2] != 0 && q[q.len() - 1] == 0);
        let rep_graph = hairy(&[1, 3, 1, 3, 3, 0, 0, 3, 6, 0]);
        let l = odd_alpha_hairy(&rep_graph).unwrap().labeling;
        let t = rep_graph.t();
        assert_eq!(l.value(rep_graph.x_pendant(t, rep_graph.n(t))), 59);
        assert_eq!(l.value(rep_graph.y(t)), 57);
        let case = classify_kth_edge(&rep_graph).unwrap();
        let literal = Labeling::new(
            Arc::clone(&rep_graph),
            closed_form_values(&rep_graph, &case, true),
        )
        .unwrap();
        assert!(!verify_d_divisible(&literal, 30, true).unwrap().holds);
        let via = odd_alpha_hairy(&g).unwrap();
        assert!(verify_d_divisible(&via.labeling, 30, true).unwrap().holds);
    }

    #[test]
    fn case_one_withholds_2k_minus_1() {
        let g = hairy(&[0, 3, 0, 0]);
        let case = classify_kth_edge(&g).unwrap();
        assert_eq!(case.tag, OddCaseTag::PendantFromB);
        let k = g.k() as i64;
        let out = odd_alpha_hairy_by_transforms(&g).unwrap();
        assert_eq!(out.removed, Some(2 * k - 1));
        let kth = out.labeling.edge_differences()[g.k() - 1];
        assert_eq!(kth, 2 * k + 1);
    }

    #[test]
    fn closing_candidates() {
        let p = DivisibilityParams::new(30, 6).unwrap();
        assert_eq!(candidate_closing_values(&p).unwrap(), (17, 19));
        let p = DivisibilityParams::new(30, 5).unwrap();
        assert_eq!(candidate_closing_values(&p).unwrap(), (17, 18));
    }

    #[test]
    fn fig5_corona() {
        let out = corona_d_divisible(5, 2, 6).unwrap();
        assert_eq!(out.removed, Some(17));
        let steps: Vec<_> = out.trace.iter().map(|s| (s.op, s.closing)).collect();
        assert_eq!(
            steps,
            vec![
                (None, 19),
                (Some(TransformRequest::new(Op::O1, 3)), 18),
                (Some(TransformRequest::new(Op::O5, 4)), 17),
            ]
        );
    }

    #[test]
    fn h2t1_examples() {
        let l = h2t1_two_divisible(5).unwrap();
        let g = l.graph();
        assert_eq!(l.value(g.x(1)), 11);
        assert_eq!(l.value(g.y(3)), 18);
        let l = h2t1_two_divisible(3).unwrap();
        assert_eq!(l.value(l.graph().x_pendant(1, 1)), 10);
        assert!(verify_d_divisible(&h2t1_two_divisible(7).unwrap(), 2, true).unwrap().holds);
        assert!(h2t1_two_divisible(4).is_err());
        assert!(h2t1_two_divisible(1).is_err());
    }

    #[test]
    fn odd_d_mv_labels_split_evenly() {
        for t in [3usize, 5, 7] {
            for lambda in 1..=4 {
                let e = 2 * t * (lambda + 1);
                for d in (1..e).filter(|d| e % d == 0 && d % 2 == 1) {
                    let p = DivisibilityParams::new(e, d).unwrap();
                    let (c1, c2) = candidate_closing_values(&p).unwrap();
                    let path = Arc::new(build_corona(t, lambda).unwrap().open());
                    for c in [c1, c2] {
                        let s = divisible_label_set(e, d).unwrap().without(c).unwrap();
                        let f = standard_alpha_s(&path, &s).unwrap();
                        let d_b = mv_labels(&f, Side::B).len();
                        assert!(d_b == (d - 1) / 2 || d_b == d.div_ceil(2));
                        assert_eq!(closing_difference(&f), (e / 2 + d_b) as i64);
                    }
                }
            }
        }
    }
}
