use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Limits for a search. Node limits are deterministic; time limits are not.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub time_limit: Option<Duration>,
}

impl Budget {
    pub const UNLIMITED: Budget = Budget {
        max_nodes: None,
        time_limit: None,
    };

    pub fn nodes(max: u64) -> Self {
        Budget {
            max_nodes: Some(max),
            time_limit: None,
        }
    }
}

/// Budget outcome attached to reports. Wall time is deliberately not
/// serialized so reports stay byte-stable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BudgetReport {
    /// Search nodes spent on fully completed sizes.
    pub nodes: u64,
    pub max_nodes: Option<u64>,
    pub exhausted: bool,
    #[serde(skip)]
    pub elapsed: Duration,
}

const FLUSH_EVERY: u64 = 4096;

/// Shared node counter and deadline.
pub(crate) struct Meter {
    spent: AtomicU64,
    limit: u64,
    deadline: Option<Instant>,
    stop: AtomicBool,
    started: Instant,
}

impl Meter {
    pub(crate) fn new(budget: Budget) -> Self {
        let started = Instant::now();
        Meter {
            spent: AtomicU64::new(0),
            limit: budget.max_nodes.unwrap_or(u64::MAX),
            deadline: budget.time_limit.map(|d| started + d),
            stop: AtomicBool::new(false),
            started,
        }
    }

    pub(crate) fn spent(&self) -> u64 {
        self.spent.load(Ordering::Relaxed)
    }

    pub(crate) fn elapsed(&self) -> Duration {
        self.started.elapsed()
    }

    fn flush(&self, n: u64) -> Result<()> {
        let total = self.spent.fetch_add(n, Ordering::Relaxed).saturating_add(n);
        if total > self.limit || self.deadline.is_some_and(|d| Instant::now() >= d) {
            self.stop.store(true, Ordering::Relaxed);
        }
        if self.stop.load(Ordering::Relaxed) {
            return Err(Error::BudgetExhausted);
        }
        Ok(())
    }
}

/// Per-worker view of a [`Meter`] that batches counter updates.
pub(crate) struct Ticker<'a> {
    meter: &'a Meter,
    local: u64,
}

impl<'a> Ticker<'a> {
    pub(crate) fn new(meter: &'a Meter) -> Self {
        Ticker { meter, local: 0 }
    }

    #[inline]
    pub(crate) fn tick(&mut self) -> Result<()> {
        self.local += 1;
        if self.local == FLUSH_EVERY {
            self.local = 0;
            self.meter.flush(FLUSH_EVERY)?;
        }
        Ok(())
    }

    pub(crate) fn finish(mut self) -> Result<()> {
        let n = std::mem::take(&mut self.local);
        self.meter.flush(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn node_limit_trips_at_flush_or_finish() {
        let m = Meter::new(Budget::nodes(10));
        let mut t = Ticker::new(&m);
        for _ in 0..10 {
            t.tick().unwrap();
        }
        t.finish().unwrap();
        let mut t = Ticker::new(&m);
        t.tick().unwrap();
        assert_eq!(t.finish(), Err(Error::BudgetExhausted));
    }

    #[test]
    fn zero_time_limit_stops() {
        let m = Meter::new(Budget {
            max_nodes: None,
            time_limit: Some(Duration::ZERO),
        });
        assert_eq!(Ticker::new(&m).finish(), Err(Error::BudgetExhausted));
    }
}
