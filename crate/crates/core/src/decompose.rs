//! Cyclic decompositions of `K_{(m+1) x 2dn}` into copies of a graph with a
//! d-divisible alpha-labeling.
//!
//! Vertices are `Z_v`, `v = (m+1) 2dn`, and the parts are the residue
//! classes mod `m + 1`. Base block `j` sends the low side of the labeling
//! to `f` and the high side to `f + j d(m+1)`; developing the `n` base
//! blocks under `u -> u + 1` gives the decomposition.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{multipartite_edges, MultipartiteSpec, OrderedBipartiteGraph};
use crate::labeling::{verify_d_divisible, DivisibilityParams, Labeling};

/// A copy of the graph inside `Z_v`: entry `x` is the image of vertex `x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Block(pub Vec<usize>);

impl Block {
    pub fn edges<'a>(&'a self, g: &'a OrderedBipartiteGraph) -> impl Iterator<Item = (usize, usize)> + 'a {
        g.edges().iter().map(|&(a, b)| (self.0[a], self.0[b]))
    }

    pub fn translate(&self, by: usize, v: usize) -> Block {
        Block(self.0.iter().map(|&x| (x + by) % v).collect())
    }

    /// Sorted edge set with each edge as `(min, max)`, for comparing blocks.
    fn canonical(&self, g: &OrderedBipartiteGraph) -> Vec<(usize, usize)> {
        let mut e: Vec<_> = self.edges(g).map(|(a, b)| (a.min(b), a.max(b))).collect();
        e.sort_unstable();
        e
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseBlock {
    pub shift_index: usize,
    pub block: Block,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub graph: Arc<OrderedBipartiteGraph>,
    pub spec: MultipartiteSpec,
    pub n: usize,
    pub base: Vec<BaseBlock>,
    /// All `v n` translates, when materialized.
    pub developed: Option<Vec<Block>>,
}

impl Decomposition {
    pub fn v(&self) -> usize {
        self.spec.v()
    }

    pub fn block_count(&self) -> usize {
        self.v() * self.base.len()
    }

    /// The developed blocks, generated on the fly when not stored.
    pub fn blocks(&self) -> Box<dyn Iterator<Item = Block> + '_> {
        match &self.developed {
            Some(b) => Box::new(b.iter().cloned()),
            None => {
                let v = self.v();
                Box::new(
                    self.base
                        .iter()
                        .flat_map(move |b| (0..v).map(move |i| b.block.translate(i, v))),
                )
            }
        }
    }
}

/// The `n` base blocks of a d-divisible alpha-labeling.
pub fn base_blocks(l: &Labeling, d: usize, n: usize) -> Result<(MultipartiteSpec, Vec<BaseBlock>)> {
    if n == 0 {
        return Err(Error::OutOfDomain("n must be positive".into()));
    }
    let report = verify_d_divisible(l, d, true)?;
    if !report.holds {
        return Err(Error::InvalidLabeling(format!(
            "not a {d}-divisible alpha-labeling: {:?}",
            report.failures
        )));
    }
    let g = l.graph();
    let p = DivisibilityParams::new(g.size(), d)?;
    let spec = MultipartiteSpec::new(p.m + 1, 2 * d * n)?;
    let low = l
        .low_side()
        .ok_or_else(|| Error::InvalidLabeling("no alpha separation".into()))?;
    let step = d * (p.m + 1);
    let base = (0..n)
        .map(|j| BaseBlock {
            shift_index: j,
            block: Block(
                (0..g.vertex_count())
                    .map(|x| {
                        let f = l.value(x) as usize;
                        if g.side(x) == low {
                            f
                        } else {
                            f + j * step
                        }
                    })
                    .collect(),
            ),
        })
        .collect();
    Ok((spec, base))
}

/// Develops base blocks over `Z_v`, storing every translate.
pub fn develop(
    graph: Arc<OrderedBipartiteGraph>,
    spec: MultipartiteSpec,
    n: usize,
    base: Vec<BaseBlock>,
    materialize: bool,
) -> Decomposition {
    let mut dec = Decomposition {
        graph,
        spec,
        n,
        base,
        developed: None,
    };
    if materialize {
        dec.developed = Some(dec.blocks().collect());
    }
    dec
}

/// Base blocks and development in one step.
pub fn decompose(l: &Labeling, d: usize, n: usize, materialize: bool) -> Result<Decomposition> {
    let (spec, base) = base_blocks(l, d, n)?;
    Ok(develop(Arc::clone(l.graph_arc()), spec, n, base, materialize))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClauseFailure {
    /// 1: injective copy, 2: parts respected, 3: exact edge partition,
    /// 4: cyclic invariance.
    pub clause: u8,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub holds: bool,
    pub blocks: usize,
    pub edges: usize,
    pub failures: Vec<ClauseFailure>,
}

impl DecompositionReport {
    pub fn failed(&self, clause: u8) -> bool {
        self.failures.iter().any(|f| f.clause == clause)
    }
}

// Keep reports readable on badly broken inputs.
const MAX_REPORTED: usize = 8;

/// Checks that the blocks are copies of `gamma` partitioning the edges of
/// `K_{partCount x partSize}` and that the block set is closed under `+1`.
pub fn verify_decomposition(dec: &Decomposition, gamma: &OrderedBipartiteGraph) -> DecompositionReport {
    let v = dec.v();
    let pc = dec.spec.part_count;
    let mut failures = Vec::new();
    let mut push = |clause: u8, detail: String| {
        if failures.iter().filter(|f: &&ClauseFailure| f.clause == clause).count() < MAX_REPORTED {
            failures.push(ClauseFailure { clause, detail });
        }
    };

    let mut counts: HashMap<(usize, usize), u32> = HashMap::new();
    let mut canon: HashSet<Vec<(usize, usize)>> = HashSet::new();
    let mut blocks = Vec::new();
    let mut edge_total = 0;
    for (bi, block) in dec.blocks().enumerate() {
        if block.0.len() != gamma.vertex_count() {
            push(1, format!("block {bi} has {} vertices, expected {}", block.0.len(), gamma.vertex_count()));
            continue;
        }
        let mut seen = HashSet::new();
        for (x, &u) in block.0.iter().enumerate() {
            if u >= v {
                push(1, format!("block {bi}: vertex {} maps to {u} outside Z_{v}", gamma.vertex(x)));
            } else if !seen.insert(u) {
                push(1, format!("block {bi}: two vertices map to {u}"));
            }
        }
        for (a, b) in block.edges(gamma) {
            edge_total += 1;
            if a % pc == b % pc {
                push(2, format!("block {bi}: edge ({a},{b}) lies inside part {}", a % pc));
            }
            *counts.entry((a.min(b), a.max(b))).or_default() += 1;
        }
        canon.insert(block.canonical(gamma));
        blocks.push(block);
    }

    let mut expected = 0;
    for pair in multipartite_edges(dec.spec) {
        expected += 1;
        match counts.remove(&pair).unwrap_or(0) {
            1 => {}
            0 => push(3, format!("edge ({},{}) is not covered", pair.0, pair.1)),
            k => push(3, format!("edge ({},{}) is covered {k} times", pair.0, pair.1)),
        }
    }
    let mut extra: Vec<_> = counts.into_keys().collect();
    extra.sort_unstable();
    for (a, b) in extra {
        push(3, format!("pair ({a},{b}) is not an edge of the multipartite graph"));
    }

    for (bi, block) in blocks.iter().enumerate() {
        if !canon.contains(&block.translate(1, v).canonical(gamma)) {
            push(4, format!("block {bi} shifted by 1 is not a block"));
        }
    }
    if blocks.len() != dec.block_count() {
        push(4, format!("{} blocks, expected {}", blocks.len(), dec.block_count()));
    }
    if edge_total != expected {
        push(3, format!("{edge_total} block edges for {expected} graph edges"));
    }

    DecompositionReport {
        holds: failures.is_empty(),
        blocks: blocks.len(),
        edges: edge_total,
        failures,
    }
}

/// Differences `min(|a-b|, v-|a-b|)` of every base-block edge.
pub fn base_differences(dec: &Decomposition) -> Vec<usize> {
    let v = dec.v();
    let mut out: Vec<usize> = dec
        .base
        .iter()
        .flat_map(|b| b.block.edges(&dec.graph).collect::<Vec<_>>())
        .map(|(a, b)| {
            let d = a.abs_diff(b);
            d.min(v - d)
        })
        .collect();
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycle::cycle_d_divisible;
    use crate::graph::{build_caterpillar, CaterpillarSpec};

    fn k2() -> Labeling {
        let g = Arc::new(build_caterpillar(&CaterpillarSpec::new(vec![0]).unwrap()));
        Labeling::new(g, vec![0, 1]).unwrap()
    }

    #[test]
    fn single_edge() {
        let dec = decompose(&k2(), 1, 1, true).unwrap();
        assert_eq!(dec.v(), 4);
        assert_eq!(dec.base[0].block.0, vec![0, 1]);
        let mut edges: Vec<_> = dec
            .blocks()
            .map(|b| {
                let (a, c) = (b.0[0], b.0[1]);
                (a.min(c), a.max(c))
            })
            .collect();
        edges.sort();
        assert_eq!(edges, vec![(0, 1), (0, 3), (1, 2), (2, 3)]);
        assert!(verify_decomposition(&dec, &dec.graph).holds);
    }

    #[test]
    fn c8_blocks() {
        let l = cycle_d_divisible(2, 2, None).unwrap().labeling;
        let dec = decompose(&l, 2, 1, true).unwrap();
        assert_eq!(dec.v(), 20);
        assert_eq!(base_differences(&dec), vec![1, 2, 3, 4, 6, 7, 8, 9]);
        assert_eq!(dec.block_count(), 20);
        let r = verify_decomposition(&dec, l.graph());
        assert!(r.holds, "{:?}", r.failures);
        assert_eq!(r.edges, 160);

        let dec = decompose(&l, 2, 2, false).unwrap();
        let mut second: Vec<usize> = dec.base[1]
            .block
            .edges(l.graph())
            .map(|(a, b)| a.abs_diff(b))
            .collect();
        second.sort();
        assert_eq!(second, vec![11, 12, 13, 14, 16, 17, 18, 19]);
        assert!(verify_decomposition(&dec, l.graph()).holds);
    }

    #[test]
    fn corrupted_block_fails_partition() {
        let l = cycle_d_divisible(2, 2, None).unwrap().labeling;
        let mut dec = decompose(&l, 2, 1, true).unwrap();
        let blocks = dec.developed.as_mut().unwrap();
        // move one vertex onto a free residue of another part
        let b = &mut blocks[3];
        let spare = (0..20).find(|u| !b.0.contains(u) && u % 5 != b.0[0] % 5).unwrap();
        b.0[0] = spare;
        let r = verify_decomposition(&dec, l.graph());
        assert!(!r.holds);
        assert!(r.failed(3));
        assert!(r.failures.iter().any(|f| f.detail.contains("not covered")));
    }

    #[test]
    fn rejects_invalid_labeling() {
        let g = Arc::new(build_caterpillar(&CaterpillarSpec::new(vec![1, 1]).unwrap()));
        let l = Labeling::new(g, vec![0, 1, 2, 3]).unwrap();
        assert!(matches!(decompose(&l, 1, 1, false), Err(Error::InvalidLabeling(_))));
    }
}
