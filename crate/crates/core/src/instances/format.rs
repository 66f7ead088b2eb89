//! The instance file format.
//!
//! ```json
//! {"m":3,"universe_size":3,"k":3,"item_weights":[1,4,1],
//!  "elements":[{"id":0,"cost":1.0,"covers":[0,1]}, ...]}
//! ```
//!
//! `item_weights` is optional (all ones when absent). Elements appear in id
//! order, cover lists ascend, and the serializer emits keys in exactly the
//! order above. Unknown keys are rejected.

use serde::{Deserialize, Serialize};

use super::CoverageInstance;
use crate::error::InstanceError;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    m: usize,
    universe_size: usize,
    k: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    item_weights: Option<Vec<u64>>,
    elements: Vec<ElementDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ElementDoc {
    id: usize,
    cost: f64,
    covers: Vec<usize>,
}

pub fn parse_instance(bytes: &[u8]) -> Result<CoverageInstance, InstanceError> {
    let text = std::str::from_utf8(bytes)
        .map_err(|e| InstanceError::Schema(format!("instance is not UTF-8: {e}")))?;
    let doc: Document =
        serde_json::from_str(text).map_err(|e| InstanceError::Schema(e.to_string()))?;
    if doc.elements.len() != doc.m {
        return Err(InstanceError::Schema(format!(
            "m = {} but {} elements listed",
            doc.m,
            doc.elements.len()
        )));
    }
    if let Some(pos) = doc.elements.iter().enumerate().position(|(i, e)| e.id != i) {
        return Err(InstanceError::Schema(format!(
            "element at position {pos} has id {}; ids must be 0..m in order",
            doc.elements[pos].id
        )));
    }
    let (costs, covers) = doc.elements.into_iter().map(|e| (e.cost, e.covers)).unzip();
    CoverageInstance::new(doc.universe_size, covers, doc.item_weights, costs, doc.k)
}

pub fn serialize_instance(inst: &CoverageInstance) -> Vec<u8> {
    let doc = Document {
        m: inst.m(),
        universe_size: inst.universe_size(),
        k: inst.k(),
        item_weights: inst.item_weights().map(<[u64]>::to_vec),
        elements: (0..inst.m())
            .map(|id| ElementDoc { id, cost: inst.costs()[id], covers: inst.covers(id).to_vec() })
            .collect(),
    };
    let mut out = serde_json::to_vec(&doc).expect("instance documents always serialize");
    out.push(b'\n');
    out
}
