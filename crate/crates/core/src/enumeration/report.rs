use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::budget::BudgetReport;
use crate::error::{Error, Result};
use crate::quiddity::Tuple;
use crate::ring::{format_element, parse_element, parse_ring_spec, RingSpec};

/// Irreducible classes and quiddity counts per size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    pub ring: RingSpec,
    /// Size → canonical irreducible classes, sorted; every searched size >= 3
    /// has an entry.
    pub sizes: BTreeMap<usize, Vec<Tuple>>,
    /// Size → number of quiddities of that size.
    pub counts: BTreeMap<usize, u64>,
    pub searched_max_size: usize,
    /// Largest size searched to completion.
    pub exhausted_to: usize,
    pub budget: BudgetReport,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ReportJson {
    ring: String,
    sizes: BTreeMap<usize, Vec<Vec<String>>>,
    counts: BTreeMap<usize, u64>,
    searched_max_size: usize,
    exhausted_to: usize,
    budget: BudgetReport,
}

fn entries(t: &Tuple) -> Vec<String> {
    t.entries().iter().map(|e| format_element(t.ring(), e)).collect()
}

impl ClassificationReport {
    /// Whether every size up to `searched_max_size` completed.
    pub fn is_complete(&self) -> bool {
        !self.budget.exhausted && self.exhausted_to == self.searched_max_size
    }

    /// Sizes carrying at least one irreducible class.
    pub fn nonempty_sizes(&self) -> Vec<usize> {
        self.sizes
            .iter()
            .filter(|(_, v)| !v.is_empty())
            .map(|(&n, _)| n)
            .collect()
    }

    pub fn class_count(&self) -> usize {
        self.sizes.values().map(Vec::len).sum()
    }

    pub fn to_json(&self) -> String {
        let dto = ReportJson {
            ring: self.ring.to_string(),
            sizes: self
                .sizes
                .iter()
                .map(|(&n, ts)| (n, ts.iter().map(entries).collect()))
                .collect(),
            counts: self.counts.clone(),
            searched_max_size: self.searched_max_size,
            exhausted_to: self.exhausted_to,
            budget: self.budget.clone(),
        };
        serde_json::to_string_pretty(&dto).expect("report serializes")
    }

    /// Parses report JSON, checking that every class verifies, is canonical,
    /// has the size it is filed under, and that lists are sorted.
    ///
    /// Irreducibility is not re-checked here.
    pub fn from_json(text: &str) -> Result<Self> {
        let dto: ReportJson = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        let ring = parse_ring_spec(&dto.ring)?;
        let mut sizes = BTreeMap::new();
        for (n, list) in dto.sizes {
            let mut tuples = Vec::with_capacity(list.len());
            for item in list {
                let es = item
                    .iter()
                    .map(|s| parse_element(&ring, s))
                    .collect::<Result<Vec<_>>>()?;
                let t = Tuple::new(ring.clone(), es)?;
                if t.len() != n {
                    return Err(Error::Malformed(format!("class {t} filed under size {n}")));
                }
                if !t.verify()?.is_quiddity() {
                    return Err(Error::Malformed(format!("class {t} is not a quiddity")));
                }
                if !t.is_canonical() {
                    return Err(Error::Malformed(format!("class {t} is not canonical")));
                }
                tuples.push(t);
            }
            if tuples.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Malformed(format!("classes of size {n} are not strictly sorted")));
            }
            sizes.insert(n, tuples);
        }
        if dto.exhausted_to > dto.searched_max_size {
            return Err(Error::Malformed("exhausted_to exceeds searched_max_size".into()));
        }
        Ok(ClassificationReport {
            ring,
            sizes,
            counts: dto.counts,
            searched_max_size: dto.searched_max_size,
            exhausted_to: dto.exhausted_to,
            budget: dto.budget,
        })
    }

    /// One row per class: `ring,size,class`.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["ring", "size", "class"]).expect("in-memory write");
        let ring = self.ring.to_string();
        for (n, list) in &self.sizes {
            for t in list {
                w.write_record([ring.as_str(), &n.to_string(), &t.to_string()])
                    .expect("in-memory write");
            }
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 output")
    }
}

/// Outcome of the maximal-size search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LmaxReport {
    pub ring: RingSpec,
    pub searched_cap: usize,
    pub exhausted_to: usize,
    /// Size → number of irreducible classes, for every completed size >= 3.
    pub counts: BTreeMap<usize, u64>,
    /// Classes of the largest completed size with any, capped at
    /// `LARGEST_KEEP` in canonical order.
    pub largest: Vec<Tuple>,
    pub budget: BudgetReport,
}

#[derive(Serialize)]
struct LmaxJson<'a> {
    ring: String,
    observed_max: Option<usize>,
    exhausted_to: usize,
    searched_cap: usize,
    class_counts: &'a BTreeMap<usize, u64>,
    largest: Vec<Vec<String>>,
    largest_truncated: bool,
    budget: &'a BudgetReport,
}

impl LmaxReport {
    /// Largest completed size with an irreducible class.
    pub fn observed_max(&self) -> Option<usize> {
        self.counts.iter().rev().find(|(_, &c)| c > 0).map(|(&n, _)| n)
    }

    pub fn to_json(&self) -> String {
        let observed = self.observed_max();
        let dto = LmaxJson {
            ring: self.ring.to_string(),
            observed_max: observed,
            exhausted_to: self.exhausted_to,
            searched_cap: self.searched_cap,
            class_counts: &self.counts,
            largest: self.largest.iter().map(entries).collect(),
            largest_truncated: observed.is_some_and(|n| self.counts[&n] > self.largest.len() as u64),
            budget: &self.budget,
        };
        serde_json::to_string_pretty(&dto).expect("report serializes")
    }
}
