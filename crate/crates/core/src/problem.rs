use crate::error::{Error, InstanceError, Result};
use crate::instances::CoverageInstance;
use crate::oracle::{ElementId, SetFunction, Truncated};

/// A cover problem as the solvers see it: a (truncated) oracle `g`, costs
/// indexed by global element id, the ground set the solver may pick from,
/// and the demand `k`.
#[derive(Debug, Clone)]
pub struct Problem<'a, G> {
    oracle: G,
    costs: &'a [f64],
    ground: Vec<ElementId>,
    k: u64,
    total: u64,
}

impl<'a, G: SetFunction> Problem<'a, G> {
    /// Validates ids and costs and checks `k <= g(ground)`. The feasibility
    /// check is an uncharged query made before any solver runs.
    pub fn new(oracle: G, costs: &'a [f64], mut ground: Vec<ElementId>, k: u64) -> Result<Self> {
        ground.sort_unstable();
        ground.dedup();
        let m = oracle.ground_size();
        if let Some(&id) = ground.iter().find(|&&v| v >= m || v >= costs.len()) {
            return Err(InstanceError::OutOfRange { id, m: m.min(costs.len()) }.into());
        }
        if let Some(&id) = ground.iter().find(|&&v| !(costs[v] > 0.0 && costs[v].is_finite())) {
            return Err(InstanceError::NonPositiveCost { id, cost: costs[id] }.into());
        }
        let total = oracle.eval(&ground);
        if total < k {
            return Err(Error::InfeasibleDemand { k, total });
        }
        Ok(Self { oracle, costs, ground, k, total })
    }

    /// For sub-problems whose feasibility follows from how they were built;
    /// no query is made and `total` records the demand as a lower bound.
    pub(crate) fn derived(oracle: G, costs: &'a [f64], ground: Vec<ElementId>, k: u64) -> Self {
        Self { oracle, costs, ground, k, total: k }
    }

    pub fn oracle(&self) -> &G {
        &self.oracle
    }

    pub fn costs(&self) -> &'a [f64] {
        self.costs
    }

    pub fn cost(&self, v: ElementId) -> f64 {
        self.costs[v]
    }

    pub fn ground(&self) -> &[ElementId] {
        &self.ground
    }

    pub fn m(&self) -> usize {
        self.ground.len()
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    /// `g(ground)`, as measured at construction, or the demand for derived
    /// sub-problems.
    pub fn total(&self) -> u64 {
        self.total
    }

    /// `(c_min, c_max)` over the ground set.
    pub fn cost_range(&self) -> Option<(f64, f64)> {
        self.ground.iter().map(|&v| self.costs[v]).fold(None, |acc, c| match acc {
            None => Some((c, c)),
            Some((lo, hi)) => Some((lo.min(c), hi.max(c))),
        })
    }

    /// `c(S)`, summed in increasing id order.
    pub fn set_cost(&self, set: &[ElementId]) -> f64 {
        set_cost(self.costs, set)
    }
}

pub(crate) fn set_cost(costs: &[f64], set: &[ElementId]) -> f64 {
    let mut ids = set.to_vec();
    ids.sort_unstable();
    ids.iter().map(|&v| costs[v]).sum()
}

impl<'a> Problem<'a, Truncated<&'a CoverageInstance>> {
    /// The instance's own demand, ground set and costs, with `g = min(f, k)`.
    pub fn from_instance(inst: &'a CoverageInstance) -> Result<Self> {
        Self::new(Truncated::new(inst, inst.k()), inst.costs(), (0..inst.m()).collect(), inst.k())
    }
}
