//! Adaptive-round accounting.
//!
//! A round is a batch of oracle queries whose inputs depend only on answers
//! from earlier rounds. The ledger is touched at round boundaries only:
//! queries issued inside a round are tallied on a shared [`QueryCounter`]
//! and merged when the round closes.

use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Default)]
pub struct QueryCounter(AtomicU64);

impl QueryCounter {
    pub fn add(&self, n: u64) {
        self.0.fetch_add(n, Ordering::Relaxed);
    }

    pub fn get(&self) -> u64 {
        self.0.load(Ordering::Relaxed)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerSnapshot {
    pub rounds: u64,
    pub queries: u64,
}

#[derive(Debug, Clone, Default)]
pub struct QueryLedger {
    per_round: Vec<u64>,
    open: bool,
}

impl QueryLedger {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn open_round(&mut self) -> Result<()> {
        if self.open {
            return Err(Error::LedgerMisuse("a round is already open"));
        }
        self.per_round.push(0);
        self.open = true;
        Ok(())
    }

    pub fn close_round(&mut self) -> Result<()> {
        if !self.open {
            return Err(Error::LedgerMisuse("no open round to close"));
        }
        self.open = false;
        Ok(())
    }

    pub fn is_open(&self) -> bool {
        self.open
    }

    /// Charges `n` queries to the open round.
    pub fn record(&mut self, n: u64) -> Result<()> {
        if !self.open {
            return Err(Error::LedgerMisuse("query issued with no open round"));
        }
        // open implies at least one round
        *self.per_round.last_mut().unwrap() += n;
        Ok(())
    }

    /// Runs `body` as one adaptive round. Everything `body` charges to the
    /// counter is merged into the ledger when it returns.
    pub fn round<T>(&mut self, body: impl FnOnce(&QueryCounter) -> T) -> Result<T> {
        self.open_round()?;
        let counter = QueryCounter::default();
        let out = body(&counter);
        self.record(counter.get())?;
        self.close_round()?;
        Ok(out)
    }

    pub fn rounds(&self) -> u64 {
        self.per_round.len() as u64
    }

    pub fn queries(&self) -> u64 {
        self.per_round.iter().sum()
    }

    pub fn per_round_queries(&self) -> &[u64] {
        &self.per_round
    }

    pub fn snapshot(&self) -> LedgerSnapshot {
        LedgerSnapshot { rounds: self.rounds(), queries: self.queries() }
    }
}
