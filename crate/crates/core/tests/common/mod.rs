#![allow(dead_code)]

use std::sync::Arc;

use divlabel::graph::{build_caterpillar, CaterpillarSpec};
use divlabel::labeling::{
    closing_difference, divisible_label_set, standard_alpha_s, verify_alpha_s, LabelSet, Labeling,
};
use divlabel::transforms::{
    apply_transform, check_preconditions, closing_delta, compose_transforms, touched_edges, Op,
    TransformRequest,
};

/// All pendant sequences of length `len` with sum at most `budget`.
pub fn sequences(len: usize, budget: usize) -> Vec<Vec<usize>> {
    if len == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 0..=budget {
        for mut rest in sequences(len - 1, budget - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

pub fn divisors(n: usize) -> impl Iterator<Item = usize> {
    (1..=n).filter(move |d| n.is_multiple_of(*d))
}

/// A caterpillar whose closing edge would make a hairy cycle of size
/// `e + 1`, labeled standardly with `(Delta \ Delta') \ {c}`.
pub fn open_path_instance(pendants: &[usize], d: usize, c_index: usize) -> Option<(Labeling, LabelSet, i64)> {
    let g = Arc::new(build_caterpillar(&CaterpillarSpec::new(pendants.to_vec()).ok()?));
    let full = divisible_label_set(g.size() + 1, d).ok()?;
    let c = full.values()[c_index % full.len()];
    let s = full.without(c).ok()?;
    let f = standard_alpha_s(&g, &s).ok()?;
    Some((f, s, c))
}

#[derive(Debug, Default)]
pub struct LawCounts {
    pub applied: usize,
    pub commuted: usize,
}

fn requests(t: usize) -> Vec<TransformRequest> {
    let mut out = vec![TransformRequest::new(Op::O4, 0)];
    for op in Op::ALL.into_iter().filter(|&op| op != Op::O4) {
        out.extend((1..=t).map(|s| TransformRequest::new(op, s)));
    }
    out
}

/// Every applicable transform keeps S and moves the closing difference by
/// its stated amount; every disjoint applicable pair commutes.
pub fn check_transform_laws(f: &Labeling, s: &LabelSet) -> Result<LawCounts, String> {
    let mut counts = LawCounts::default();
    let before = f.values().to_vec();
    let mut applicable = Vec::new();
    for r in requests(f.graph().t()) {
        let Ok(report) = check_preconditions(f, &r) else {
            continue;
        };
        if !report.all_hold() {
            continue;
        }
        let g = apply_transform(f, &r).map_err(|e| format!("{r} on {:?}: {e}", f.values()))?;
        let rep = verify_alpha_s(&g, s);
        if !rep.holds {
            return Err(format!("{r} on {:?} breaks alpha_S: {:?}", f.values(), rep.failures));
        }
        let moved = closing_difference(f) - closing_difference(&g);
        if moved != closing_delta(f, &r) {
            return Err(format!(
                "{r} on {:?} moved the closing difference by {moved}, expected {}",
                f.values(),
                closing_delta(f, &r)
            ));
        }
        counts.applied += 1;
        applicable.push((report.request, touched_edges(f, &r).map_err(|e| e.to_string())?));
    }
    if f.values() != before.as_slice() {
        return Err("input labeling was modified".into());
    }
    for (i, (a, ta)) in applicable.iter().enumerate() {
        for (b, tb) in &applicable[i + 1..] {
            if !ta.is_disjoint(tb) {
                continue;
            }
            let ab = compose_transforms(f, &[*a, *b]);
            let ba = compose_transforms(f, &[*b, *a]);
            match (ab, ba) {
                (Ok(x), Ok(y)) if x == y => counts.commuted += 1,
                (Ok(x), Ok(y)) => {
                    return Err(format!("{a}, {b} on {:?}: {:?} vs {:?}", f.values(), x.values(), y.values()))
                }
                (x, y) => {
                    return Err(format!(
                        "{a}, {b} on {:?}: {:?} / {:?}",
                        f.values(),
                        x.err(),
                        y.err()
                    ))
                }
            }
        }
    }
    Ok(counts)
}

/// A constructed labeling to look up in the oracle's result set.
pub struct OracleInstance {
    pub name: String,
    pub labeling: Labeling,
    pub d: usize,
}

/// Every constructed labeling with at most `max_vertices` vertices from the
/// caterpillar, odd hairy-cycle (both paths), corona and cycle sweeps.
pub fn oracle_instances(max_vertices: usize) -> divlabel::Result<Vec<OracleInstance>> {
    use divlabel::construction::caterpillar_d_divisible;
    use divlabel::cycle::{cycle_closing_values, cycle_d_divisible};
    use divlabel::graph::build_hairy_cycle;
    use divlabel::hairy::{corona_d_divisible, odd_alpha_hairy, odd_alpha_hairy_by_transforms};

    let mut out = Vec::new();
    let mut push = |name: String, labeling: Labeling, d: usize| {
        if labeling.graph().vertex_count() <= max_vertices {
            out.push(OracleInstance { name, labeling, d });
        }
    };
    for t in 1..=4 {
        for p in sequences(2 * t, 8) {
            let spec = CaterpillarSpec::new(p.clone())?;
            if spec.size() > 12 || spec.size() + 1 > max_vertices {
                continue;
            }
            for d in divisors(spec.size()) {
                push(format!("caterpillar {p:?} d={d}"), caterpillar_d_divisible(&spec, d)?.labeling, d);
            }
        }
    }
    for t in 2..=4 {
        for p in sequences(2 * t, 8) {
            if p.iter().all(|&x| x == 0) || p.iter().sum::<usize>() + p.len() > max_vertices {
                continue;
            }
            let g = Arc::new(build_hairy_cycle(&CaterpillarSpec::new(p.clone())?)?);
            let e = g.size();
            push(format!("hairy {p:?} closed form"), odd_alpha_hairy(&g)?.labeling, e);
            push(format!("hairy {p:?} transforms"), odd_alpha_hairy_by_transforms(&g)?.labeling, e);
        }
    }
    for t in 2..=7 {
        for lambda in 1..=4 {
            let e = 2 * t * (lambda + 1);
            if e > max_vertices {
                continue;
            }
            for d in divisors(e) {
                push(format!("H({}, {lambda}) d={d}", 2 * t), corona_d_divisible(t, lambda, d)?.labeling, d);
            }
        }
    }
    for k in (1..=10).filter(|k| 4 * k <= max_vertices) {
        for d in divisors(4 * k) {
            for c in cycle_closing_values(k, d)? {
                push(format!("C_{} d={d} c={c}", 4 * k), cycle_d_divisible(k, d, Some(c))?.labeling, d);
            }
        }
    }
    Ok(out)
}

// Labels of sibling leaves sorted into increasing id order, the form the
// oracle reports with `ordered_leaves`.
fn sort_sibling_leaves(l: &Labeling) -> Vec<i64> {
    let g = l.graph();
    let deg = g.degrees();
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for v in (0..g.vertex_count()).filter(|&v| deg[v] == 1) {
        groups.entry(g.neighbors(v)[0]).or_default().push(v);
    }
    let mut values = l.values().to_vec();
    for ids in groups.values().filter(|ids| ids.len() > 1) {
        let mut vals: Vec<i64> = ids.iter().map(|&v| values[v]).collect();
        vals.sort_unstable();
        for (&v, x) in ids.iter().zip(vals) {
            values[v] = x;
        }
    }
    values
}

/// Runs the exhaustive search for the instance's graph and difference set
/// and looks the labeling up in the result.
pub fn oracle_contains(inst: &OracleInstance, max_vertices: usize) -> Result<(), String> {
    use divlabel::graph::Side;
    use divlabel::oracle::{search_with, SearchOptions, Separation};

    let l = &inst.labeling;
    let g = l.graph_arc();
    let s = divisible_label_set(g.size(), inst.d).map_err(|e| e.to_string())?;
    let separation = match l.low_side() {
        Some(Side::A) => Separation::LowA,
        _ => Separation::Either,
    };
    let found = search_with(
        g,
        &s,
        divlabel::oracle::SearchOptions {
            separation,
            ordered_leaves: true,
            max_vertices,
            ..SearchOptions::default()
        },
    )
    .map_err(|e| format!("{}: {e}", inst.name))?;
    let want = sort_sibling_leaves(l);
    if found.iter().any(|f| f.values() == want.as_slice()) {
        Ok(())
    } else {
        Err(format!("{}: {:?} not among {} oracle labelings", inst.name, l.values(), found.len()))
    }
}
