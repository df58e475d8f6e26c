//! Exhaustive backtracking search for alpha_S and d-divisible labelings of
//! small graphs, randomized search for larger ones, and breadth-first search
//! for transform sequences.
//!
//! The labeling search shares nothing with the constructions: it only knows
//! the graph's edges and the target difference set.

use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{OrderedBipartiteGraph, Side};
use crate::labeling::{closing_difference, LabelSet, Labeling};
use crate::transforms::{apply_transform, touched_edges, Op, TransformRequest};

/// Largest instance [`search_labelings`] accepts.
pub const MAX_ORACLE_VERTICES: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Separation {
    /// Plain injective labelings with the prescribed differences.
    None,
    /// `max_A f < min_B f`, the alpha_S orientation.
    LowA,
    /// One part entirely below the other, either way round.
    Either,
}

#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    pub separation: Separation,
    pub limit: Option<usize>,
    pub max_vertices: usize,
    /// Abort after visiting this many search nodes.
    pub node_budget: Option<u64>,
    /// Only report labelings whose sibling leaves increase in id order.
    /// Each labeling found then stands for all its leaf permutations.
    pub ordered_leaves: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            separation: Separation::LowA,
            limit: None,
            max_vertices: MAX_ORACLE_VERTICES,
            node_budget: None,
            ordered_leaves: false,
        }
    }
}

/// All labelings of `g` into `0..=max s` whose edge differences are exactly
/// `s`, up to `limit`, sorted by value vector. `alpha` asks for
/// `max_A < min_B`.
pub fn search_labelings(
    g: &Arc<OrderedBipartiteGraph>,
    s: &LabelSet,
    alpha: bool,
    limit: Option<usize>,
) -> Result<Vec<Labeling>> {
    search_with(
        g,
        s,
        SearchOptions {
            separation: if alpha { Separation::LowA } else { Separation::None },
            limit,
            ..SearchOptions::default()
        },
    )
}

pub fn search_with(
    g: &Arc<OrderedBipartiteGraph>,
    s: &LabelSet,
    opts: SearchOptions,
) -> Result<Vec<Labeling>> {
    if s.len() != g.size() {
        return Err(Error::SizeMismatch {
            expected: g.size(),
            got: s.len(),
        });
    }
    if g.vertex_count() > opts.max_vertices {
        return Err(Error::SearchBudgetExceeded(format!(
            "{} vertices exceeds the limit of {}",
            g.vertex_count(),
            opts.max_vertices
        )));
    }
    let mut search = Search::new(g, s, opts);
    search.run()?;
    let mut found = search.found;
    found.sort();
    found
        .into_iter()
        .map(|values| Labeling::new(Arc::clone(g), values))
        .collect()
}

#[derive(Debug, Clone, Copy)]
struct Bounds {
    a_lo: i64,
    a_hi: i64,
    b_lo: i64,
    b_hi: i64,
}

impl Bounds {
    const EMPTY: Bounds = Bounds {
        a_lo: i64::MAX,
        a_hi: i64::MIN,
        b_lo: i64::MAX,
        b_hi: i64::MIN,
    };

    fn with(self, side: Side, x: i64) -> Bounds {
        match side {
            Side::A => Bounds {
                a_lo: self.a_lo.min(x),
                a_hi: self.a_hi.max(x),
                ..self
            },
            Side::B => Bounds {
                b_lo: self.b_lo.min(x),
                b_hi: self.b_hi.max(x),
                ..self
            },
        }
    }

    fn allows(&self, sep: Separation) -> bool {
        let low_a = self.a_hi < self.b_lo;
        match sep {
            Separation::None => true,
            Separation::LowA => low_a,
            Separation::Either => low_a || self.b_hi < self.a_lo,
        }
    }
}

// Two stages. The non-leaf vertices are labeled one by one in BFS order, so
// each has an earlier neighbour and picks a free difference from it. The
// leaves are then placed difference by difference, largest first: the
// largest free difference has to hang on some parent with a free leaf.
// Sibling leaves are interchangeable, so each parent just collects labels
// and the assignment to its leaves is expanded at the end.
struct Search<'a> {
    g: &'a OrderedBipartiteGraph,
    s: &'a LabelSet,
    opts: SearchOptions,
    max: i64,
    order: Vec<usize>,
    // for order[i], its neighbours earlier in the order
    back: Vec<Vec<usize>>,
    // leaves of each vertex, in id order
    leaves: Vec<Vec<usize>>,
    parents: Vec<usize>,
    leaf_count: usize,
    placed: Vec<Vec<i64>>,
    values: Vec<i64>,
    used_label: Vec<bool>,
    used_diff: Vec<bool>,
    in_s: Vec<bool>,
    bounds: Bounds,
    found: Vec<Vec<i64>>,
    nodes: u64,
}

impl<'a> Search<'a> {
    fn new(g: &'a OrderedBipartiteGraph, s: &'a LabelSet, opts: SearchOptions) -> Self {
        let n = g.vertex_count();
        let max = s.max_value();
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in g.edges() {
            adj[a].push(b);
            adj[b].push(a);
        }
        let core = |v: usize| adj[v].len() > 1 || n <= 2;
        let mut order = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        for root in (0..n).filter(|&v| core(v)) {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut q = VecDeque::from([root]);
            while let Some(u) = q.pop_front() {
                order.push(u);
                for &w in &adj[u] {
                    if !seen[w] && core(w) {
                        seen[w] = true;
                        q.push_back(w);
                    }
                }
            }
        }
        let mut pos = vec![usize::MAX; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let back = order
            .iter()
            .map(|&v| adj[v].iter().copied().filter(|&w| pos[w] < pos[v]).collect())
            .collect();
        let mut leaves = vec![Vec::new(); n];
        for v in (0..n).filter(|&v| !core(v)) {
            leaves[adj[v][0]].push(v);
        }
        let parents: Vec<usize> = order.iter().copied().filter(|&p| !leaves[p].is_empty()).collect();
        let mut in_s = vec![false; max as usize + 1];
        for &x in s.values() {
            in_s[x as usize] = true;
        }
        Self {
            g,
            s,
            opts,
            max,
            order,
            back,
            leaf_count: n - pos.iter().filter(|&&p| p != usize::MAX).count(),
            leaves,
            parents,
            placed: vec![Vec::new(); n],
            values: vec![-1; n],
            used_label: vec![false; max as usize + 1],
            used_diff: vec![false; max as usize + 1],
            in_s,
            bounds: Bounds::EMPTY,
            found: Vec::new(),
            nodes: 0,
        }
    }

    fn run(&mut self) -> Result<()> {
        self.descend(0).map(|_| ())
    }

    fn done(&self) -> bool {
        self.opts.limit.is_some_and(|l| self.found.len() >= l)
    }

    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        match self.opts.node_budget {
            Some(b) if self.nodes > b => Err(Error::SearchBudgetExceeded(format!("visited {b} nodes"))),
            _ => Ok(()),
        }
    }

    // Returns Ok(true) to stop the search.
    fn descend(&mut self, depth: usize) -> Result<bool> {
        self.tick()?;
        if depth == self.order.len() {
            return self.place_leaves(self.leaf_count);
        }
        let v = self.order[depth];
        let candidates: Vec<i64> = match self.back[depth].first() {
            None => (0..=self.max).collect(),
            Some(&p) => {
                let pv = self.values[p];
                let mut c = Vec::new();
                for &delta in self.s.values() {
                    if self.used_diff[delta as usize] {
                        continue;
                    }
                    for x in [pv - delta, pv + delta] {
                        if (0..=self.max).contains(&x) {
                            c.push(x);
                        }
                    }
                }
                c.sort_unstable();
                c.dedup();
                c
            }
        };
        let side = self.g.side(v);
        for x in candidates {
            let bounds = self.bounds.with(side, x);
            if self.used_label[x as usize] || !bounds.allows(self.opts.separation) {
                continue;
            }
            // all edges to earlier vertices need fresh, distinct differences in S
            let mut diffs = Vec::with_capacity(self.back[depth].len());
            let ok = self.back[depth].iter().all(|&u| {
                let dlt = (self.values[u] - x).unsigned_abs() as usize;
                let fresh = dlt < self.in_s.len()
                    && self.in_s[dlt]
                    && !self.used_diff[dlt]
                    && !diffs.contains(&dlt);
                diffs.push(dlt);
                fresh
            });
            if !ok {
                continue;
            }
            let saved = self.bounds;
            self.bounds = bounds;
            self.values[v] = x;
            self.used_label[x as usize] = true;
            for &dl in &diffs {
                self.used_diff[dl] = true;
            }
            let stop = self.descend(depth + 1)?;
            for &dl in &diffs {
                self.used_diff[dl] = false;
            }
            self.used_label[x as usize] = false;
            self.values[v] = -1;
            self.bounds = saved;
            if stop {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn place_leaves(&mut self, left: usize) -> Result<bool> {
        self.tick()?;
        if left == 0 {
            return Ok(self.record());
        }
        let delta = *self
            .s
            .values()
            .iter()
            .rev()
            .find(|&&d| !self.used_diff[d as usize])
            .expect("one free difference per unplaced leaf");
        for i in 0..self.parents.len() {
            let p = self.parents[i];
            if self.placed[p].len() == self.leaves[p].len() {
                continue;
            }
            let side = self.g.side(p).other();
            let pv = self.values[p];
            for x in [pv - delta, pv + delta] {
                if !(0..=self.max).contains(&x) || self.used_label[x as usize] {
                    continue;
                }
                let bounds = self.bounds.with(side, x);
                if !bounds.allows(self.opts.separation) {
                    continue;
                }
                let saved = self.bounds;
                self.bounds = bounds;
                self.placed[p].push(x);
                self.used_label[x as usize] = true;
                self.used_diff[delta as usize] = true;
                let stop = self.place_leaves(left - 1)?;
                self.used_diff[delta as usize] = false;
                self.used_label[x as usize] = false;
                self.placed[p].pop();
                self.bounds = saved;
                if stop {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    // Writes every assignment of the collected labels to sibling leaves
    // (only the increasing one with `ordered_leaves`). Returns true when the
    // limit is reached.
    fn record(&mut self) -> bool {
        let mut groups: Vec<(Vec<usize>, Vec<i64>)> = self
            .parents
            .iter()
            .map(|&p| {
                let mut labels = self.placed[p].clone();
                labels.sort_unstable();
                (self.leaves[p].clone(), labels)
            })
            .collect();
        loop {
            for (ids, labels) in &groups {
                for (&v, &x) in ids.iter().zip(labels) {
                    self.values[v] = x;
                }
            }
            self.found.push(self.values.clone());
            if self.done() {
                return true;
            }
            if self.opts.ordered_leaves || !advance(&mut groups) {
                return false;
            }
        }
    }
}

// Steps to the next combination of per-group permutations, odometer style.
fn advance(groups: &mut [(Vec<usize>, Vec<i64>)]) -> bool {
    for (_, labels) in groups.iter_mut() {
        if next_permutation(labels) {
            return true;
        }
        // wrapped round to ascending; carry into the next group
    }
    false
}

// Lexicographic successor; on the last permutation, resets to ascending and
// returns false.
fn next_permutation(v: &mut [i64]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        v.reverse();
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Every request that could apply to a caterpillar with `t` spine pairs.
fn candidate_requests(t: usize) -> Vec<TransformRequest> {
    let mut out = Vec::new();
    for op in Op::ALL {
        if op == Op::O4 {
            out.push(TransformRequest::new(op, 0));
        } else {
            out.extend((1..t).map(|s| TransformRequest::new(op, s)));
        }
    }
    out
}

/// Restarts and annealing steps per restart for [`local_search_alpha`].
pub const LOCAL_SEARCH_RESTARTS: usize = 200;
pub const LOCAL_SEARCH_STEPS: usize = 2_000_000;

// Mismatch between the edge differences and `s`: edges with a difference
// outside `s` plus, for each target difference, how far its count is from 1.
fn mismatch(edges: &[(usize, usize)], values: &[i64], wanted: &[bool], counts: &mut [i64]) -> i64 {
    counts.iter_mut().for_each(|c| *c = 0);
    let mut bad = 0;
    for &(a, b) in edges {
        let d = values[a].abs_diff(values[b]) as usize;
        if d < wanted.len() && wanted[d] {
            counts[d] += 1;
        } else {
            bad += 1;
        }
    }
    bad + wanted
        .iter()
        .zip(counts.iter())
        .filter(|(w, _)| **w)
        .map(|(_, c)| (c - 1).abs())
        .sum::<i64>()
}

/// Randomized search for an alpha_S-labeling with A below B, for graphs too
/// large for [`search_labelings`]. Simulated annealing over a split
/// `A -> 0..=th`, `B -> th+1..=max s`, moving one value at a time. Fixed
/// `seed`, so the result is reproducible. `None` when every restart fails.
pub fn local_search_alpha(g: &Arc<OrderedBipartiteGraph>, s: &LabelSet, seed: u64) -> Option<Labeling> {
    use rand::{rngs::StdRng, Rng, SeedableRng};

    let top = s.max_value();
    if top < 0 || s.len() != g.size() {
        return None;
    }
    let mut wanted = vec![false; top as usize + 1];
    for &v in s.values() {
        wanted[v as usize] = true;
    }
    let mut counts = vec![0i64; wanted.len()];
    let edges = g.edges();
    let n = g.vertex_count();
    let sides: [Vec<usize>; 2] = [
        (0..n).filter(|&x| g.side(x) == Side::A).collect(),
        (0..n).filter(|&x| g.side(x) == Side::B).collect(),
    ];
    let slack = (top as usize + 1).checked_sub(n)?;
    let mut rng = StdRng::seed_from_u64(seed);

    for _ in 0..LOCAL_SEARCH_RESTARTS {
        let th = sides[0].len() as i64 - 1 + rng.gen_range(0..=slack) as i64;
        let mut pools: [Vec<i64>; 2] = [(0..=th).collect(), (th + 1..=top).collect()];
        let mut values = vec![0i64; n];
        for (verts, pool) in sides.iter().zip(pools.iter_mut()) {
            for i in (1..pool.len()).rev() {
                pool.swap(i, rng.gen_range(0..=i));
            }
            for (&x, &v) in verts.iter().zip(pool.iter()) {
                values[x] = v;
            }
        }
        let mut cost = mismatch(edges, &values, &wanted, &mut counts);
        let mut temp = 2.0f64;
        for _ in 0..LOCAL_SEARCH_STEPS {
            if cost == 0 {
                break;
            }
            let side = rng.gen_range(0..2);
            let (verts, pool) = (&sides[side], &mut pools[side]);
            // pool[..k] are in use; a swap with j >= k brings in an unused value
            let k = verts.len();
            let (i, j) = (rng.gen_range(0..k), rng.gen_range(0..pool.len()));
            if i == j {
                continue;
            }
            pool.swap(i, j);
            values[verts[i]] = pool[i];
            if j < k {
                values[verts[j]] = pool[j];
            }
            let next = mismatch(edges, &values, &wanted, &mut counts);
            if next <= cost || rng.gen::<f64>() < ((cost - next) as f64 / temp).exp() {
                cost = next;
            } else {
                pool.swap(i, j);
                values[verts[i]] = pool[i];
                if j < k {
                    values[verts[j]] = pool[j];
                }
            }
            temp = (temp * 0.999995).max(0.05);
        }
        if cost == 0 {
            return Labeling::new(Arc::clone(g), values).ok();
        }
    }
    None
}

/// Shortest sequence (at most `depth` long) of edge-disjoint transforms
/// taking `l` to closing difference `target`.
pub fn search_transform_sequence(
    l: &Labeling,
    target: i64,
    depth: usize,
) -> Option<Vec<TransformRequest>> {
    if closing_difference(l) == target {
        return Some(Vec::new());
    }
    let requests = candidate_requests(l.graph().t());
    let mut seen: HashSet<Vec<i64>> = HashSet::from([l.values().to_vec()]);
    // (labeling, sequence, edges used so far)
    let mut queue = VecDeque::from([(l.clone(), Vec::new(), HashSet::new())]);
    while let Some((cur, seq, used)) = queue.pop_front() {
        if seq.len() >= depth {
            continue;
        }
        for r in &requests {
            let Ok(next) = apply_transform(&cur, r) else {
                continue;
            };
            let Ok(touched) = touched_edges(&cur, r) else {
                continue;
            };
            if touched.iter().any(|e| used.contains(e)) {
                continue;
            }
            if !seen.insert(next.values().to_vec()) {
                continue;
            }
            let mut seq2: Vec<TransformRequest> = seq.clone();
            let resolved = match r.op {
                Op::O54 => crate::transforms::check_preconditions(&cur, r)
                    .map(|rep| rep.request)
                    .unwrap_or(*r),
                _ => *r,
            };
            seq2.push(resolved);
            if closing_difference(&next) == target {
                return Some(seq2);
            }
            let mut used2 = used.clone();
            used2.extend(touched);
            queue.push_back((next, seq2, used2));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_caterpillar, build_corona, build_cycle, CaterpillarSpec};
    use crate::labeling::{divisible_label_set, standard_alpha_s, verify_alpha_s};

    fn cat(p: &[usize]) -> Arc<OrderedBipartiteGraph> {
        Arc::new(build_caterpillar(&CaterpillarSpec::new(p.to_vec()).unwrap()))
    }

    #[test]
    fn local_search_on_a_large_corona() {
        let g = Arc::new(build_corona(7, 1).unwrap());
        let s = divisible_label_set(28, 4).unwrap();
        let l = local_search_alpha(&g, &s, 1).unwrap();
        assert!(verify_alpha_s(&l, &s).holds);
        assert_eq!(l.low_side(), Some(Side::A));
        assert_eq!(local_search_alpha(&g, &s, 1), Some(l));
        // wrong number of differences
        assert!(local_search_alpha(&g, &LabelSet::new(vec![1, 2]).unwrap(), 1).is_none());
    }

    #[test]
    fn single_edge() {
        let g = cat(&[0]);
        let s = LabelSet::new(vec![1]).unwrap();
        let all = search_labelings(&g, &s, true, None).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].values(), &[0, 1]);
        let any = search_labelings(&g, &s, false, None).unwrap();
        assert_eq!(any.len(), 2);
    }

    #[test]
    fn small_caterpillar_contains_standard() {
        let g = cat(&[1, 1]);
        let s = LabelSet::new(vec![1, 2, 3]).unwrap();
        let all = search_labelings(&g, &s, true, None).unwrap();
        assert!(all.iter().any(|l| l.values() == [1, 0, 2, 3]));
        for l in &all {
            assert!(verify_alpha_s(l, &s).holds);
        }
    }

    #[test]
    fn results_are_sorted_and_limited() {
        let g = cat(&[0, 0, 0, 0, 0, 0]);
        let s = divisible_label_set(5, 1).unwrap();
        let all = search_labelings(&g, &s, false, None).unwrap();
        assert!(all.windows(2).all(|w| w[0].values() < w[1].values()));
        let some = search_labelings(&g, &s, false, Some(3)).unwrap();
        assert_eq!(some.len(), 3);
    }

    #[test]
    fn c8_divisible_contains_construction() {
        let g = Arc::new(build_cycle(8).unwrap());
        let s = divisible_label_set(8, 2).unwrap();
        let all = search_labelings(&g, &s, true, None).unwrap();
        let built = crate::cycle::cycle_d_divisible(2, 2, None).unwrap();
        assert!(all.iter().any(|l| l.values() == built.labeling.values()));
    }

    #[test]
    fn size_limits() {
        let g = cat(&[3, 3, 3, 3, 3, 3]);
        let s = divisible_label_set(g.size(), 1).unwrap();
        assert!(matches!(
            search_labelings(&g, &s, true, None),
            Err(Error::SearchBudgetExceeded(_))
        ));
        let small = LabelSet::new(vec![1]).unwrap();
        assert!(matches!(
            search_labelings(&cat(&[1, 1]), &small, true, None),
            Err(Error::SizeMismatch { .. })
        ));
    }

    #[test]
    fn transform_search_reaches_corona_target() {
        let g = Arc::new(build_corona(5, 2).unwrap().open());
        let s = divisible_label_set(30, 6).unwrap().without(17).unwrap();
        let f = standard_alpha_s(&g, &s).unwrap();
        let seq = search_transform_sequence(&f, 17, 3).unwrap();
        let out = crate::transforms::compose_transforms(&f, &seq).unwrap();
        assert_eq!(closing_difference(&out), 17);
        assert_eq!(seq.len(), 2);
        assert_eq!(search_transform_sequence(&f, 19, 3), Some(vec![]));
    }

    #[test]
    fn transform_search_gives_up() {
        let g = cat(&[1, 1, 1, 1]);
        let s = divisible_label_set(g.size(), 1).unwrap();
        let f = standard_alpha_s(&g, &s).unwrap();
        assert_eq!(search_transform_sequence(&f, -100, 2), None);
    }
}
