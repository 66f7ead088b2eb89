//! Ledger-accounted queries against a truncated oracle.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ledger::{QueryCounter, QueryLedger};
use crate::oracle::{ElementId, SetFunction, Truncated};

const PAR_MIN_LEN: usize = 32;

fn check_ids<F: SetFunction>(g: &F, ids: &[ElementId]) -> Result<()> {
    let m = g.ground_size();
    match ids.iter().find(|&&v| v >= m) {
        Some(&v) => Err(Error::Contract(format!("element id {v} outside ground set of size {m}"))),
        None => Ok(()),
    }
}

/// `min(f(S), k)`, charged as one query to the open round.
pub fn truncated_eval<F: SetFunction>(
    f: &F,
    k: u64,
    set: &[ElementId],
    ledger: &mut QueryLedger,
) -> Result<u64> {
    if !ledger.is_open() {
        return Err(Error::LedgerMisuse("query issued with no open round"));
    }
    check_ids(f, set)?;
    let g = Truncated::new(f, k);
    let value = g.eval(set);
    ledger.record(1)?;
    Ok(value)
}

/// `g(B ∪ {v}) - g(B)`, charged as two queries to the open round.
pub fn marginal<G: SetFunction>(
    g: &G,
    base: &[ElementId],
    v: ElementId,
    ledger: &mut QueryLedger,
) -> Result<u64> {
    if !ledger.is_open() {
        return Err(Error::LedgerMisuse("query issued with no open round"));
    }
    check_ids(g, base)?;
    check_ids(g, &[v])?;
    let mut state = g.state_of(base);
    let before = g.value(&state);
    g.insert(&mut state, v);
    let after = g.value(&state);
    ledger.record(2)?;
    Ok(after - before)
}

/// Marginals of every candidate over `B`, evaluated as a single round.
///
/// `g(B)` is queried once and shared by the whole batch, so a batch over
/// `|C|` candidates costs `|C| + 1` queries.
pub fn batch_marginals<G: SetFunction>(
    g: &G,
    base: &[ElementId],
    candidates: &[ElementId],
    ledger: &mut QueryLedger,
) -> Result<BTreeMap<ElementId, u64>> {
    if candidates.is_empty() {
        return Err(Error::Contract("batch_marginals needs a nonempty candidate set".into()));
    }
    check_ids(g, base)?;
    check_ids(g, candidates)?;
    let state = g.state_of(base);
    let scan = ledger.round(|counter| scan_state(g, &state, candidates, counter))?;
    Ok(candidates.iter().copied().zip(scan.gains).collect())
}

/// `g(B)` and the marginal of each candidate, aligned with `candidates`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scan {
    pub base_value: u64,
    pub gains: Vec<u64>,
}

/// The body of a marginal batch; callers own the surrounding round.
pub fn scan_state<G: SetFunction>(
    g: &G,
    base: &G::State,
    candidates: &[ElementId],
    counter: &QueryCounter,
) -> Scan {
    let base_value = g.value(base);
    let gains = candidates
        .par_iter()
        .with_min_len(PAR_MIN_LEN)
        .map(|&v| g.gain(base, v))
        .collect();
    counter.add(1 + candidates.len() as u64);
    Scan { base_value, gains }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::CoverageInstance;
    use crate::ledger::LedgerSnapshot;

    fn three_sets() -> CoverageInstance {
        // items 1,2,3 renumbered to 0,1,2
        CoverageInstance::unit(3, vec![vec![0, 1], vec![1, 2], vec![0, 1, 2]], vec![1.0, 1.0, 2.5], 3)
            .unwrap()
    }

    #[test]
    fn truncated_eval_examples() {
        let inst = three_sets();
        let mut ledger = QueryLedger::new();
        assert!(matches!(truncated_eval(&inst, 3, &[0], &mut ledger), Err(Error::LedgerMisuse(_))));
        ledger.open_round().unwrap();
        assert_eq!(truncated_eval(&inst, 3, &[0, 1], &mut ledger).unwrap(), 3);
        assert_eq!(truncated_eval(&inst, 2, &[0, 1], &mut ledger).unwrap(), 2);
        assert_eq!(truncated_eval(&inst, 7, &[], &mut ledger).unwrap(), 0);
        ledger.close_round().unwrap();
        assert_eq!(ledger.snapshot(), LedgerSnapshot { rounds: 1, queries: 3 });
    }

    #[test]
    fn marginal_examples() {
        let inst = three_sets();
        let g = Truncated::new(&inst, 3);
        let mut ledger = QueryLedger::new();
        ledger.open_round().unwrap();
        assert_eq!(marginal(&g, &[0], 1, &mut ledger).unwrap(), 1);
        assert_eq!(marginal(&g, &[0, 1], 1, &mut ledger).unwrap(), 0);
        assert_eq!(marginal(&g, &[], 2, &mut ledger).unwrap(), 3);
        ledger.close_round().unwrap();
        assert_eq!(ledger.queries(), 6);
    }

    #[test]
    fn batch_examples() {
        let inst = three_sets();
        let g = Truncated::new(&inst, 3);
        let mut ledger = QueryLedger::new();
        let out = batch_marginals(&g, &[], &[0, 1, 2], &mut ledger).unwrap();
        assert_eq!(out.into_iter().collect::<Vec<_>>(), vec![(0, 2), (1, 2), (2, 3)]);
        assert_eq!(ledger.snapshot(), LedgerSnapshot { rounds: 1, queries: 4 });

        let out = batch_marginals(&g, &[0, 1], &[0, 1], &mut ledger).unwrap();
        assert!(out.values().all(|&x| x == 0));
        assert_eq!(ledger.rounds(), 2);

        let out = batch_marginals(&g, &[], &[1], &mut ledger).unwrap();
        assert_eq!(out[&1], 2);
        assert_eq!(ledger.rounds(), 3);
    }

    #[test]
    fn batch_rejects_empty_and_out_of_range() {
        let inst = three_sets();
        let g = Truncated::new(&inst, 3);
        let mut ledger = QueryLedger::new();
        assert!(matches!(batch_marginals(&g, &[], &[], &mut ledger), Err(Error::Contract(_))));
        assert!(matches!(batch_marginals(&g, &[], &[9], &mut ledger), Err(Error::Contract(_))));
        assert_eq!(ledger.rounds(), 0);
    }
}
