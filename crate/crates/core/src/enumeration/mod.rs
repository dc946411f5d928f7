//! Exhaustive search over finite rings.
//!
//! Every search walks prefixes `(a_1, ..., a_{n-2})` carrying `M_{n-2}` and
//! closes each prefix with [`closing_pairs`], so a size costs `|A|^{n-2}`
//! nodes instead of `|A|^n`. The prefix space is split into blocks by the
//! first entries; blocks run on a private thread pool and are merged in block
//! order, so results do not depend on the worker count.

mod budget;
mod report;
mod restricted;
mod witness;

use std::collections::BTreeMap;

use rayon::prelude::*;

pub use budget::{Budget, BudgetReport};
pub use report::{ClassificationReport, LmaxReport};
pub use restricted::{count_restricted, extend_word, Alphabet};
pub use witness::char0_witness;

use budget::{Meter, Ticker};

use crate::error::{Error, Result};
use crate::quiddity::{closing_pairs, is_canonical, Mat2, Tuple};
use crate::reduction::is_reducible_raw;
use crate::ring::{FiniteRing, RingOps, RingSpec};

/// Worker count and budget for a search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub workers: usize,
    pub budget: Budget,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
            budget: Budget::UNLIMITED,
        }
    }
}

impl SearchOptions {
    pub fn with_workers(workers: usize) -> Self {
        SearchOptions {
            workers,
            ..Default::default()
        }
    }
}

/// Irreducible classes found under one block: all are counted, the first
/// `keep` are stored.
struct Found {
    count: u64,
    keep: usize,
    kept: Vec<Vec<u16>>,
}

/// Classes of the largest size that an [`LmaxReport`] lists in full.
pub const LARGEST_KEEP: usize = 1 << 12;

struct Engine {
    ring: FiniteRing,
    pool: rayon::ThreadPool,
    meter: Meter,
}

impl Engine {
    fn new(spec: &RingSpec, opts: &SearchOptions) -> Result<Self> {
        let ring = FiniteRing::new(spec)?;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.workers.max(1))
            .build()
            .map_err(|e| Error::Unsupported(format!("thread pool: {e}")))?;
        Ok(Engine {
            ring,
            pool,
            meter: Meter::new(opts.budget),
        })
    }

    /// Prefix blocks of depth `min(k, 2)` in element order.
    fn blocks(&self, k: usize) -> Vec<Vec<u16>> {
        let mut out = vec![Vec::new()];
        for _ in 0..k.min(2) {
            out = out
                .into_iter()
                .flat_map(|p| {
                    self.ring.indices().map(move |a| {
                        let mut q = p.clone();
                        q.push(a);
                        q
                    })
                })
                .collect();
        }
        out
    }

    fn run_blocks<T, F>(&self, k: usize, f: F) -> Result<Vec<T>>
    where
        T: Send,
        F: Fn(&[u16], &mut Ticker<'_>) -> Result<T> + Sync,
    {
        let blocks = self.blocks(k);
        self.pool.install(|| {
            blocks
                .par_iter()
                .map(|b| {
                    let mut ticker = Ticker::new(&self.meter);
                    let out = f(b, &mut ticker)?;
                    ticker.finish()?;
                    Ok(out)
                })
                .collect()
        })
    }

    /// Calls `visit` on every quiddity of size `n >= 2` under `block`, in
    /// lexicographic order.
    fn walk<F>(&self, n: usize, block: &[u16], ticker: &mut Ticker<'_>, visit: &mut F) -> Result<()>
    where
        F: FnMut(&[u16]) -> Result<()>,
    {
        let mut prefix = Vec::with_capacity(n);
        let id = Mat2::identity(&self.ring);
        self.walk_from(n - 2, block, &mut prefix, &id, ticker, visit)
    }

    fn walk_from<F>(
        &self,
        k: usize,
        block: &[u16],
        prefix: &mut Vec<u16>,
        m: &Mat2<u16>,
        ticker: &mut Ticker<'_>,
        visit: &mut F,
    ) -> Result<()>
    where
        F: FnMut(&[u16]) -> Result<()>,
    {
        let d = prefix.len();
        if d >= block.len() {
            ticker.tick()?;
        }
        if d == k {
            return self.close(prefix, m, visit);
        }
        for a in self.choices(block, d) {
            prefix.push(a);
            let next = m.push_front(&self.ring, &a)?;
            self.walk_from(k, block, prefix, &next, ticker, visit)?;
            prefix.pop();
        }
        Ok(())
    }

    fn choices(&self, block: &[u16], depth: usize) -> std::ops::Range<u16> {
        match block.get(depth) {
            Some(&a) => a..a + 1,
            None => self.ring.indices(),
        }
    }

    fn close<F>(&self, prefix: &mut Vec<u16>, m: &Mat2<u16>, visit: &mut F) -> Result<()>
    where
        F: FnMut(&[u16]) -> Result<()>,
    {
        let mut pairs = closing_pairs(&self.ring, m)?;
        pairs.sort();
        for (p, q, _) in pairs {
            prefix.push(p);
            prefix.push(q);
            visit(prefix)?;
            prefix.truncate(prefix.len() - 2);
        }
        Ok(())
    }

    fn enumerate(&self, n: usize) -> Result<Vec<Vec<u16>>> {
        if n < 2 {
            return Ok(Vec::new());
        }
        let parts = self.run_blocks(n - 2, |block, ticker| {
            let mut out = Vec::new();
            self.walk(n, block, ticker, &mut |t| {
                out.push(t.to_vec());
                Ok(())
            })?;
            Ok(out)
        })?;
        Ok(parts.concat())
    }

    /// Quiddity count and canonical irreducible classes of size `n`.
    fn classify_size(&self, n: usize) -> Result<(u64, Vec<Vec<u16>>)> {
        if n < 2 {
            return Ok((0, Vec::new()));
        }
        let parts = self.run_blocks(n - 2, |block, ticker| {
            let mut count = 0u64;
            let mut classes = Vec::new();
            self.walk(n, block, ticker, &mut |t| {
                count += 1;
                if n >= 3 && is_canonical(t) && !is_reducible_raw(&self.ring, t)? {
                    classes.push(t.to_vec());
                }
                Ok(())
            })?;
            Ok((count, classes))
        })?;
        let count = parts.iter().map(|p| p.0).sum();
        Ok((count, parts.into_iter().flat_map(|p| p.1).collect()))
    }

    /// Canonical irreducibles of size `n >= 4`, pruning every prefix that
    /// contains a closable segment of length at most `n - 3`.
    ///
    /// A segment `w` is closable when some `(x, w, y)` is a quiddity, which
    /// holds iff `K(w) = ±1`. Such a segment is the tail of some dihedral
    /// image and splits the tuple as `c ⊕ (x, w, y)`.
    fn irreducibles_pruned(&self, n: usize, keep: usize) -> Result<(u64, Vec<Vec<u16>>)> {
        let parts = self.run_blocks(n - 2, |block, ticker| {
            let mut found = Found { count: 0, keep, kept: Vec::new() };
            let mut prefix = Vec::with_capacity(n);
            let id = Mat2::identity(&self.ring);
            self.prune_from(n, block, &mut prefix, &id, &[], ticker, &mut found)?;
            Ok(found)
        })?;
        let count = parts.iter().map(|f| f.count).sum();
        let kept = parts.into_iter().flat_map(|f| f.kept).take(keep).collect();
        Ok((count, kept))
    }

    #[allow(clippy::too_many_arguments)]
    fn prune_from(
        &self,
        n: usize,
        block: &[u16],
        prefix: &mut Vec<u16>,
        m: &Mat2<u16>,
        segs: &[(u16, u16)],
        ticker: &mut Ticker<'_>,
        out: &mut Found,
    ) -> Result<()> {
        let d = prefix.len();
        if d >= block.len() {
            ticker.tick()?;
        }
        let r = &self.ring;
        if d == n - 2 {
            return self.close(prefix, m, &mut |t| {
                if is_canonical(t) && !is_reducible_raw(r, t)? {
                    out.count += 1;
                    if out.kept.len() < out.keep {
                        out.kept.push(t.to_vec());
                    }
                }
                Ok(())
            });
        }
        let one = r.one();
        let minus_one = r.neg_idx(one);
        let longest = (d + 1).min(n - 3);
        let mut next = Vec::with_capacity(longest);
        'entry: for a in self.choices(block, d) {
            // segs[j] = (K, K without its last entry) for the segment of
            // length j + 1 ending at the previous entry
            next.clear();
            let mut cur = (a, one);
            for j in 0..longest {
                if j > 0 {
                    let (k, k_prev) = segs[j - 1];
                    cur = (r.add_idx(r.mul_idx(a, k), r.neg_idx(k_prev)), k);
                }
                if cur.0 == one || cur.0 == minus_one {
                    continue 'entry;
                }
                next.push(cur);
            }
            prefix.push(a);
            let m2 = m.push_front(r, &a)?;
            self.prune_from(n, block, prefix, &m2, &next, ticker, out)?;
            prefix.pop();
        }
        Ok(())
    }

    fn to_tuple(&self, xs: &[u16]) -> Tuple {
        Tuple::new_unchecked(self.ring.spec().clone(), self.ring.to_elements(xs))
    }
}

/// All quiddities of size `n` over a finite ring, in lexicographic order.
pub fn enumerate_quiddities(ring: &RingSpec, n: usize, opts: &SearchOptions) -> Result<Vec<Tuple>> {
    let engine = Engine::new(ring, opts)?;
    let found = engine.enumerate(n)?;
    Ok(found.iter().map(|t| engine.to_tuple(t)).collect())
}

/// Quiddity counts and canonical irreducible classes for sizes up to `max_size`.
///
/// Sizes run in ascending order. If the budget runs out, the size being
/// searched is dropped and the report is marked exhausted.
pub fn classify_irreducible(ring: &RingSpec, max_size: usize, opts: &SearchOptions) -> Result<ClassificationReport> {
    let engine = Engine::new(ring, opts)?;
    let mut sizes = BTreeMap::new();
    let mut counts = BTreeMap::new();
    let mut exhausted_to = 0;
    let mut nodes = 0;
    let mut exhausted = false;
    for n in 1..=max_size {
        let before = engine.meter.spent();
        match engine.classify_size(n) {
            Ok((count, classes)) => {
                counts.insert(n, count);
                if n >= 3 {
                    sizes.insert(n, classes.iter().map(|t| engine.to_tuple(t)).collect());
                }
                exhausted_to = n;
                nodes += engine.meter.spent() - before;
            }
            Err(Error::BudgetExhausted) => {
                exhausted = true;
                break;
            }
            Err(e) => return Err(e),
        }
    }
    Ok(ClassificationReport {
        ring: ring.clone(),
        sizes,
        counts,
        searched_max_size: max_size,
        exhausted_to,
        budget: BudgetReport {
            nodes,
            max_nodes: opts.budget.max_nodes,
            exhausted,
            elapsed: engine.meter.elapsed(),
        },
    })
}

impl Engine {
    /// Class count and the first `keep` canonical irreducibles of size `n >= 3`.
    fn irreducibles(&self, n: usize, keep: usize) -> Result<(u64, Vec<Vec<u16>>)> {
        if n == 3 {
            let (_, mut classes) = self.classify_size(3)?;
            let count = classes.len() as u64;
            classes.truncate(keep);
            Ok((count, classes))
        } else {
            self.irreducibles_pruned(n, keep)
        }
    }
}

/// Canonical irreducible classes of one size `n >= 3`, sorted, found with
/// the segment-pruned search.
pub fn irreducible_classes(ring: &RingSpec, n: usize, opts: &SearchOptions) -> Result<Vec<Tuple>> {
    if n < 3 {
        return Err(Error::Unsupported(format!("irreducibles have size >= 3, got {n}")));
    }
    let engine = Engine::new(ring, opts)?;
    let (_, classes) = engine.irreducibles(n, usize::MAX)?;
    Ok(classes.iter().map(|t| engine.to_tuple(t)).collect())
}

/// Largest size up to `cap` carrying an irreducible quiddity.
///
/// Uses the segment-pruned search and counts classes for every size; only
/// the classes of the largest nonempty size are kept, at most
/// [`LARGEST_KEEP`] of them. `observed_max` only covers sizes that were
/// searched to completion.
pub fn max_irreducible_size(ring: &RingSpec, cap: usize, opts: &SearchOptions) -> Result<LmaxReport> {
    let engine = Engine::new(ring, opts)?;
    let mut counts = BTreeMap::new();
    let mut largest = Vec::new();
    let mut exhausted_to = 2.min(cap);
    let mut nodes = 0;
    let mut exhausted = false;
    for n in 3..=cap {
        let before = engine.meter.spent();
        match engine.irreducibles(n, LARGEST_KEEP) {
            Ok((count, kept)) => {
                counts.insert(n, count);
                if count > 0 {
                    largest = kept;
                }
                exhausted_to = n;
                nodes += engine.meter.spent() - before;
            }
            Err(Error::BudgetExhausted) => {
                exhausted = true;
                break;
            }
            Err(e) => return Err(e),
        }
    }
    Ok(LmaxReport {
        ring: ring.clone(),
        searched_cap: cap,
        exhausted_to,
        counts,
        largest: largest.iter().map(|t| engine.to_tuple(t)).collect(),
        budget: BudgetReport {
            nodes,
            max_nodes: opts.budget.max_nodes,
            exhausted,
            elapsed: engine.meter.elapsed(),
        },
    })
}
