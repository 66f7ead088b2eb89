use crate::error::InstanceError;
use crate::oracle::{ElementId, SetFunction};

/// Weighted coverage: element `v` covers a fixed set of universe items, and
/// `f(S)` is the total weight of items covered by at least one member of `S`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverageInstance {
    universe_size: usize,
    covers: Vec<Vec<usize>>,
    item_weights: Option<Vec<u64>>,
    costs: Vec<f64>,
    k: u64,
}

impl CoverageInstance {
    /// Validates and builds an instance. Cover lists must be strictly
    /// increasing and inside the universe; weights, when given, are positive
    /// integers, one per item.
    pub fn new(
        universe_size: usize,
        covers: Vec<Vec<usize>>,
        item_weights: Option<Vec<u64>>,
        costs: Vec<f64>,
        k: u64,
    ) -> Result<Self, InstanceError> {
        if covers.len() != costs.len() {
            return Err(InstanceError::Schema(format!(
                "{} cover lists but {} costs",
                covers.len(),
                costs.len()
            )));
        }
        for (id, list) in covers.iter().enumerate() {
            if list.windows(2).any(|w| w[0] >= w[1]) {
                return Err(InstanceError::Schema(format!(
                    "covers of element {id} are not strictly increasing"
                )));
            }
            if let Some(&u) = list.last() {
                if u >= universe_size {
                    return Err(InstanceError::Schema(format!(
                        "element {id} covers item {u} outside universe of size {universe_size}"
                    )));
                }
            }
        }
        if let Some(weights) = &item_weights {
            if weights.len() != universe_size {
                return Err(InstanceError::Schema(format!(
                    "{} item weights for a universe of size {universe_size}",
                    weights.len()
                )));
            }
            if let Some(u) = weights.iter().position(|&w| w == 0) {
                return Err(InstanceError::Schema(format!("item {u} has zero weight")));
            }
        }
        for (id, &cost) in costs.iter().enumerate() {
            if !(cost > 0.0 && cost.is_finite()) {
                return Err(InstanceError::NonPositiveCost { id, cost });
            }
        }
        let inst = Self { universe_size, covers, item_weights, costs, k };
        let total = inst.total_value();
        if k > total {
            return Err(InstanceError::InfeasibleDemand { k, total });
        }
        Ok(inst)
    }

    /// Unit item weights.
    pub fn unit(
        universe_size: usize,
        covers: Vec<Vec<usize>>,
        costs: Vec<f64>,
        k: u64,
    ) -> Result<Self, InstanceError> {
        Self::new(universe_size, covers, None, costs, k)
    }

    pub fn m(&self) -> usize {
        self.covers.len()
    }

    pub fn universe_size(&self) -> usize {
        self.universe_size
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn costs(&self) -> &[f64] {
        &self.costs
    }

    pub fn covers(&self, v: ElementId) -> &[usize] {
        &self.covers[v]
    }

    pub fn item_weights(&self) -> Option<&[u64]> {
        self.item_weights.as_deref()
    }

    pub fn weight(&self, item: usize) -> u64 {
        self.item_weights.as_ref().map_or(1, |w| w[item])
    }

    /// `f(V)`.
    pub fn total_value(&self) -> u64 {
        let mut seen = vec![false; self.universe_size];
        let mut total = 0;
        for list in &self.covers {
            for &u in list {
                if !seen[u] {
                    seen[u] = true;
                    total += self.weight(u);
                }
            }
        }
        total
    }

    /// `Δ = max_v f({v})`.
    pub fn max_singleton(&self) -> u64 {
        self.covers
            .iter()
            .map(|list| list.iter().map(|&u| self.weight(u)).sum())
            .max()
            .unwrap_or(0)
    }

    /// Checked `f(S)`; duplicate ids are harmless.
    pub fn coverage_eval(&self, set: &[ElementId]) -> Result<u64, InstanceError> {
        if let Some(&id) = set.iter().find(|&&v| v >= self.m()) {
            return Err(InstanceError::OutOfRange { id, m: self.m() });
        }
        Ok(self.eval(set))
    }

    /// Same coverage, different costs.
    pub fn with_costs(&self, costs: Vec<f64>) -> Result<Self, InstanceError> {
        Self::new(self.universe_size, self.covers.clone(), self.item_weights.clone(), costs, self.k)
    }

    pub fn with_k(&self, k: u64) -> Result<Self, InstanceError> {
        Self::new(
            self.universe_size,
            self.covers.clone(),
            self.item_weights.clone(),
            self.costs.clone(),
            k,
        )
    }
}

/// Covered-item bitmap plus the covered weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverState {
    words: Vec<u64>,
    value: u64,
}

impl CoverState {
    fn is_set(&self, u: usize) -> bool {
        self.words[u / 64] >> (u % 64) & 1 == 1
    }
}

impl SetFunction for CoverageInstance {
    type State = CoverState;

    fn ground_size(&self) -> usize {
        self.m()
    }

    fn empty_state(&self) -> CoverState {
        CoverState { words: vec![0; self.universe_size.div_ceil(64)], value: 0 }
    }

    fn insert(&self, state: &mut CoverState, v: ElementId) {
        for &u in &self.covers[v] {
            let (w, b) = (u / 64, 1u64 << (u % 64));
            if state.words[w] & b == 0 {
                state.words[w] |= b;
                state.value += self.weight(u);
            }
        }
    }

    fn value(&self, state: &CoverState) -> u64 {
        state.value
    }

    fn gain(&self, state: &CoverState, v: ElementId) -> u64 {
        self.covers[v].iter().filter(|&&u| !state.is_set(u)).map(|&u| self.weight(u)).sum()
    }
}
