//! JSON documents for graphs, labelings and decompositions, and DOT export.
//!
//! Serializing a parsed document gives back the same bytes: every field has
//! a fixed order and optional fields are omitted when empty.

use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::construction::{Construction, TraceStep};
use crate::decompose::{BaseBlock, Block, Decomposition, DecompositionReport};
use crate::error::{Error, Result};
use crate::graph::{
    build_caterpillar, build_corona, build_cycle, build_hairy_cycle, CaterpillarSpec, GraphKind,
    MultipartiteSpec, OrderedBipartiteGraph, Side,
};
use crate::labeling::Labeling;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    pub kind: GraphKind,
    pub pendants: Vec<usize>,
    pub t: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<usize>,
}

impl GraphDoc {
    pub fn from_graph(g: &OrderedBipartiteGraph) -> Self {
        Self {
            kind: g.kind(),
            pendants: g.pendants().to_vec(),
            t: g.t(),
            lambda: g.lambda(),
        }
    }

    pub fn to_graph(&self) -> Result<OrderedBipartiteGraph> {
        let spec = CaterpillarSpec::new(self.pendants.clone())?;
        let g = match (self.kind, self.lambda) {
            (GraphKind::Caterpillar, _) => build_caterpillar(&spec),
            (GraphKind::HairyCycle, Some(lambda)) => {
                if self.pendants.iter().any(|&p| p != lambda) {
                    return Err(Error::InvalidDocument(format!(
                        "corona with lambda = {lambda} has pendants {:?}",
                        self.pendants
                    )));
                }
                build_corona(self.pendants.len() / 2, lambda)?
            }
            (GraphKind::HairyCycle, None) => build_hairy_cycle(&spec)?,
            (GraphKind::Cycle, _) => {
                if self.pendants.iter().any(|&p| p != 0) {
                    return Err(Error::InvalidDocument("a cycle has no pendants".into()));
                }
                build_cycle(self.pendants.len())?
            }
        };
        if g.t() != self.t {
            return Err(Error::InvalidDocument(format!(
                "t = {} does not match the pendant sequence (t = {})",
                self.t,
                g.t()
            )));
        }
        Ok(g)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabelingMetadata {
    /// Difference given to the closing edge.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<i64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub trace: Vec<TraceStep>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabelingDoc {
    pub graph: GraphDoc,
    /// One value per vertex, A order then B order.
    pub values: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<LabelingMetadata>,
}

impl LabelingDoc {
    pub fn from_labeling(l: &Labeling, d: Option<usize>) -> Self {
        Self {
            graph: GraphDoc::from_graph(l.graph()),
            values: l.values().to_vec(),
            d,
            provenance: None,
            metadata: None,
        }
    }

    pub fn from_construction(c: &Construction) -> Self {
        Self {
            provenance: Some(c.provenance.clone()),
            metadata: Some(LabelingMetadata {
                c: c.removed,
                trace: c.trace.clone(),
            }),
            ..Self::from_labeling(&c.labeling, Some(c.d))
        }
    }

    pub fn to_labeling(&self) -> Result<Labeling> {
        Labeling::new(Arc::new(self.graph.to_graph()?), self.values.clone())
    }
}

type EdgeList = Vec<[usize; 2]>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct DecompositionDoc {
    pub graph: GraphDoc,
    pub v: usize,
    pub part_count: usize,
    pub part_size: usize,
    pub n: usize,
    pub block_count: usize,
    pub base_blocks: Vec<EdgeList>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub developed: Option<Vec<EdgeList>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<DecompositionReport>,
}

fn edge_list(b: &Block, g: &OrderedBipartiteGraph) -> EdgeList {
    b.edges(g).map(|(a, c)| [a, c]).collect()
}

// Inverse of `edge_list`: every vertex lies on an edge.
fn block_from_edges(edges: &EdgeList, g: &OrderedBipartiteGraph) -> Result<Block> {
    if edges.len() != g.size() {
        return Err(Error::InvalidDocument(format!(
            "block has {} edges, the graph has {}",
            edges.len(),
            g.size()
        )));
    }
    let mut map = vec![None; g.vertex_count()];
    for (&(a, b), &[u, w]) in g.edges().iter().zip(edges) {
        for (x, img) in [(a, u), (b, w)] {
            match map[x] {
                None => map[x] = Some(img),
                Some(prev) if prev == img => {}
                Some(prev) => {
                    return Err(Error::InvalidDocument(format!(
                        "vertex {} is sent to both {prev} and {img}",
                        g.vertex(x)
                    )))
                }
            }
        }
    }
    Ok(Block(map.into_iter().map(|x| x.unwrap_or(0)).collect()))
}

impl DecompositionDoc {
    pub fn from_decomposition(dec: &Decomposition) -> Self {
        let g = &dec.graph;
        Self {
            graph: GraphDoc::from_graph(g),
            v: dec.v(),
            part_count: dec.spec.part_count,
            part_size: dec.spec.part_size,
            n: dec.n,
            block_count: dec.block_count(),
            base_blocks: dec.base.iter().map(|b| edge_list(&b.block, g)).collect(),
            developed: dec
                .developed
                .as_ref()
                .map(|bs| bs.iter().map(|b| edge_list(b, g)).collect()),
            provenance: None,
            certificate: None,
        }
    }

    pub fn to_decomposition(&self) -> Result<Decomposition> {
        let g = Arc::new(self.graph.to_graph()?);
        let spec = MultipartiteSpec::new(self.part_count, self.part_size)?;
        if spec.v() != self.v {
            return Err(Error::InvalidDocument(format!(
                "v = {} but partCount x partSize = {}",
                self.v,
                spec.v()
            )));
        }
        let base = self
            .base_blocks
            .iter()
            .enumerate()
            .map(|(j, e)| {
                Ok(BaseBlock {
                    shift_index: j,
                    block: block_from_edges(e, &g)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let developed = self
            .developed
            .as_ref()
            .map(|bs| bs.iter().map(|e| block_from_edges(e, &g)).collect::<Result<Vec<_>>>())
            .transpose()?;
        Ok(Decomposition {
            graph: g,
            spec,
            n: self.n,
            base,
            developed,
        })
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents always serialize");
    s.push('\n');
    s
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::InvalidDocument(e.to_string()))
}

/// DOT drawing with A and B on two ranks. With a labeling, vertices show
/// their labels and edges their differences.
pub fn to_dot(g: &OrderedBipartiteGraph, l: Option<&Labeling>) -> String {
    let mut out = String::from("graph G {\n  node [shape=circle];\n");
    for side in [Side::A, Side::B] {
        out.push_str("  { rank=same;");
        for v in g.vertices(side) {
            let _ = write!(out, " v{v};");
        }
        out.push_str(" }\n");
    }
    for v in 0..g.vertex_count() {
        let name = g.vertex(v);
        match l {
            Some(l) => {
                let _ = writeln!(out, "  v{v} [label=\"{name}\\n{}\"];", l.value(v));
            }
            None => {
                let _ = writeln!(out, "  v{v} [label=\"{name}\"];");
            }
        }
    }
    for (i, &(a, b)) in g.edges().iter().enumerate() {
        let style = if Some(i) == g.closing_edge_index() {
            " style=dashed"
        } else {
            ""
        };
        match l {
            Some(l) => {
                let _ = writeln!(
                    out,
                    "  v{a} -- v{b} [label=\"{}\"{style}];",
                    (l.value(b) - l.value(a)).abs()
                );
            }
            None if style.is_empty() => {
                let _ = writeln!(out, "  v{a} -- v{b};");
            }
            None => {
                let _ = writeln!(out, "  v{a} -- v{b} [{}];", style.trim());
            }
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycle::cycle_d_divisible;
    use crate::decompose::decompose;
    use crate::hairy::corona_d_divisible;

    fn round_trip<T>(doc: &T)
    where
        T: Serialize + for<'de> Deserialize<'de> + PartialEq + std::fmt::Debug,
    {
        let text = to_json(doc);
        let back: T = from_json(&text).unwrap();
        assert_eq!(&back, doc);
        assert_eq!(to_json(&back), text);
    }

    #[test]
    fn labeling_documents() {
        let c = corona_d_divisible(5, 2, 6).unwrap();
        let doc = LabelingDoc::from_construction(&c);
        round_trip(&doc);
        assert_eq!(doc.to_labeling().unwrap(), c.labeling);
        assert_eq!(doc.metadata.as_ref().unwrap().c, Some(17));
        let text = to_json(&doc);
        assert!(text.contains("\"provenance\""));
        assert!(text.contains("\"lambda\": 2"));
    }

    #[test]
    fn decomposition_documents() {
        let l = cycle_d_divisible(2, 2, None).unwrap().labeling;
        for materialize in [false, true] {
            let dec = decompose(&l, 2, 2, materialize).unwrap();
            let doc = DecompositionDoc::from_decomposition(&dec);
            round_trip(&doc);
            assert_eq!(doc.to_decomposition().unwrap(), dec);
            assert_eq!((doc.v, doc.block_count), (40, 80));
        }
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(from_json::<GraphDoc>("{\"kind\":\"cycle\"}").is_err());
        let doc = GraphDoc {
            kind: GraphKind::Cycle,
            pendants: vec![0, 1, 0, 0],
            t: 2,
            lambda: None,
        };
        assert!(matches!(doc.to_graph(), Err(Error::InvalidDocument(_))));
        let doc = GraphDoc {
            kind: GraphKind::Caterpillar,
            pendants: vec![1, 1],
            t: 3,
            lambda: None,
        };
        assert!(doc.to_graph().is_err());
    }

    #[test]
    fn dot_output() {
        let l = cycle_d_divisible(2, 2, None).unwrap().labeling;
        let dot = to_dot(l.graph(), Some(&l));
        assert!(dot.starts_with("graph G {"));
        assert_eq!(dot.matches(" -- ").count(), 8);
        assert!(dot.contains("style=dashed"));
        assert!(dot.contains("rank=same"));
    }
}
