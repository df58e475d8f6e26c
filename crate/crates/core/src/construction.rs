use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::{build_caterpillar, CaterpillarSpec};
use crate::labeling::{divisible_label_set, standard_alpha_s, Labeling};
use crate::transforms::TransformRequest;

/// One step of a construction: the closing difference `f(y_t) - f(x_1)`
/// before any transform (`op = None`) or right after `op`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub op: Option<TransformRequest>,
    pub closing: i64,
}

/// A finished labeling together with how it was obtained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Construction {
    pub labeling: Labeling,
    pub d: usize,
    /// Construction branch that produced the labeling, e.g. `"corona/case-2.2.3/m=2"`.
    pub provenance: String,
    /// Difference withheld from the caterpillar and given to the closing edge.
    pub removed: Option<i64>,
    pub trace: Vec<TraceStep>,
}

/// The standard alpha_S-labeling of a caterpillar with `S` the full
/// d-divisible difference set, which is already d-divisible.
pub fn caterpillar_d_divisible(spec: &CaterpillarSpec, d: usize) -> Result<Construction> {
    let g = Arc::new(build_caterpillar(spec));
    let s = divisible_label_set(g.size(), d)?;
    let labeling = standard_alpha_s(&g, &s)?;
    Ok(Construction {
        labeling,
        d,
        provenance: format!("caterpillar/standard/m={}", g.size() / d),
        removed: None,
        trace: Vec::new(),
    })
}
