//! Reducibility: whether a quiddity is `~`-equivalent to a sum `c ⊕ b` in
//! which `b` is a quiddity and both summands have size at least 3.
//!
//! For a fixed dihedral image `t^σ` and size `ℓ` of `b`, the inner entries
//! `b_2..b_{ℓ-1}` are the last `ℓ - 2` entries of `t^σ`; only `b_1` and `b_ℓ`
//! are free, and they are solved with [`closing_pairs`] instead of searched.
//! Witnesses are the first hit in the order: rotation, unreflected before
//! reflected, `ℓ` ascending, `(b_1, b_ℓ)` ascending.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quiddity::{closing_pairs, matrix_of, oplus_of, verdict_of, DihedralOp, Sign, Tuple};
use crate::ring::{format_element, parse_element, Element, RingOps, RingSpec};

/// `t^σ = c ⊕ b` with `b` a quiddity of size `l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionWitness {
    pub sigma: DihedralOp,
    pub l: usize,
    pub b: Tuple,
    pub c: Tuple,
}

/// Witness over raw ring elements, as produced by [`find_witness`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawWitness<E> {
    pub sigma: DihedralOp,
    pub l: usize,
    pub b: Vec<E>,
    pub c: Vec<E>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reducibility {
    /// `(0, 0)`, reducible by convention.
    Conventional,
    Reducible(ReductionWitness),
    Irreducible,
}

impl Reducibility {
    pub fn is_reducible(&self) -> bool {
        !matches!(self, Reducibility::Irreducible)
    }

    pub fn witness(&self) -> Option<&ReductionWitness> {
        match self {
            Reducibility::Reducible(w) => Some(w),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundedOutcome {
    Conventional,
    Reducible(ReductionWitness),
    /// No witness with `|b_1|, |b_ℓ| <= window` in the integer components.
    NoWitnessWithinBound,
}

/// Result of a bounded search, labelled with the window it used.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedReduction {
    pub window: i64,
    pub outcome: BoundedOutcome,
}

/// Per-component witness of simultaneous reducibility.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimultaneousWitness {
    pub sigma: DihedralOp,
    pub l: usize,
    pub b: Vec<Tuple>,
    pub c: Vec<Tuple>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SimultaneousOutcome {
    Conventional,
    Reducible(SimultaneousWitness),
    NotSimultaneouslyReducible,
}

impl SimultaneousOutcome {
    pub fn is_reducible(&self) -> bool {
        !matches!(self, SimultaneousOutcome::NotSimultaneouslyReducible)
    }
}

fn is_zero_pair<R: RingOps>(ring: &R, xs: &[R::Elem]) -> bool {
    xs.len() == 2 && xs.iter().all(|x| *x == ring.zero())
}

/// Splits `ts = c ⊕ b` given `b`'s free entries; `None` if `c` fails to verify.
fn reconstruct<R: RingOps>(
    ring: &R,
    ts: &[R::Elem],
    l: usize,
    x: R::Elem,
    y: R::Elem,
) -> Result<Option<(Vec<R::Elem>, Vec<R::Elem>)>> {
    let n = ts.len();
    let m = n + 2 - l;
    let mut b = Vec::with_capacity(l);
    b.push(x);
    b.extend_from_slice(&ts[m..]);
    b.push(y);
    let mut c = ts[..m].to_vec();
    c[0] = ring.sub(&ts[0], &b[l - 1])?;
    c[m - 1] = ring.sub(&ts[m - 1], &b[0])?;
    if !verdict_of(ring, &c)?.is_quiddity() {
        return Ok(None);
    }
    debug_assert!(verdict_of(ring, &b)?.is_quiddity());
    debug_assert_eq!(oplus_of(ring, &c, &b)?, ts);
    Ok(Some((b, c)))
}

/// First witness for a quiddity `xs` of size at least 4, restricted to free
/// entries accepted by `admit`.
pub fn find_witness_with<R, F>(ring: &R, xs: &[R::Elem], mut admit: F) -> Result<Option<RawWitness<R::Elem>>>
where
    R: RingOps,
    F: FnMut(&R::Elem, &R::Elem) -> bool,
{
    let n = xs.len();
    for sigma in DihedralOp::all(n) {
        let ts = sigma.apply(xs);
        for l in 3..n {
            let w = &ts[n + 2 - l..];
            let m = matrix_of(ring, w)?;
            // (w, p, q) closes iff (q, w, p) does, so b = (q, w, p)
            let mut cands: Vec<(R::Elem, R::Elem)> = closing_pairs(ring, &m)?
                .into_iter()
                .map(|(p, q, _)| (q, p))
                .filter(|(x, y)| admit(x, y))
                .collect();
            cands.sort();
            for (x, y) in cands {
                if let Some((b, c)) = reconstruct(ring, &ts, l, x, y)? {
                    return Ok(Some(RawWitness { sigma, l, b, c }));
                }
            }
        }
    }
    Ok(None)
}

pub fn find_witness<R: RingOps>(ring: &R, xs: &[R::Elem]) -> Result<Option<RawWitness<R::Elem>>> {
    find_witness_with(ring, xs, |_, _| true)
}

/// Reducibility of a known quiddity over raw elements.
pub fn is_reducible_raw<R: RingOps>(ring: &R, xs: &[R::Elem]) -> Result<bool> {
    if is_zero_pair(ring, xs) {
        return Ok(true);
    }
    if xs.len() <= 3 {
        return Ok(false);
    }
    Ok(find_witness(ring, xs)?.is_some())
}

fn lift(ring: &RingSpec, raw: RawWitness<Element>) -> ReductionWitness {
    ReductionWitness {
        sigma: raw.sigma,
        l: raw.l,
        b: Tuple::new_unchecked(ring.clone(), raw.b),
        c: Tuple::new_unchecked(ring.clone(), raw.c),
    }
}

fn require_quiddity(t: &Tuple) -> Result<Sign> {
    t.verify()?.sign().ok_or(Error::NotQuiddity)
}

/// Exact reducibility over a finite ring.
pub fn is_reducible(t: &Tuple) -> Result<Reducibility> {
    let ring = t.ring();
    if !ring.is_finite() {
        return Err(Error::InfiniteRing(ring.to_string()));
    }
    require_quiddity(t)?;
    if is_zero_pair(ring, t.entries()) {
        return Ok(Reducibility::Conventional);
    }
    if t.len() <= 3 {
        return Ok(Reducibility::Irreducible);
    }
    Ok(match find_witness(ring, t.entries())? {
        Some(raw) => Reducibility::Reducible(lift(ring, raw)),
        None => Reducibility::Irreducible,
    })
}

fn within_window(e: &Element, window: i64) -> bool {
    match e {
        Element::Int(v) => v.unsigned_abs() <= window.unsigned_abs(),
        Element::Tuple(xs) => xs.iter().all(|x| within_window(x, window)),
        _ => true,
    }
}

/// Reducibility search with integer free entries limited to `[-window, window]`.
///
/// Finite components are searched in full. A negative answer is evidence
/// within the window only.
pub fn is_reducible_bounded(t: &Tuple, window: i64) -> Result<BoundedReduction> {
    if window < 0 {
        return Err(Error::InvalidBound(window));
    }
    let ring = t.ring();
    require_quiddity(t)?;
    let outcome = if is_zero_pair(ring, t.entries()) {
        BoundedOutcome::Conventional
    } else if t.len() <= 3 {
        BoundedOutcome::NoWitnessWithinBound
    } else {
        let admit = |x: &Element, y: &Element| within_window(x, window) && within_window(y, window);
        match find_witness_with(ring, t.entries(), admit)? {
            Some(raw) => BoundedOutcome::Reducible(lift(ring, raw)),
            None => BoundedOutcome::NoWitnessWithinBound,
        }
    };
    Ok(BoundedReduction { window, outcome })
}

/// Searches a common `σ`, `ℓ` and sign with every component reducing as
/// `t_i^σ = c_i ⊕ b_i`.
///
/// Components whose ring has `1 = -1` accept either sign. Candidates are
/// ordered as their assembly into the product ring would be, so the witness
/// matches [`is_reducible`] on the assembled tuple.
pub fn simultaneous_reducible(components: &[Tuple]) -> Result<SimultaneousOutcome> {
    let first = components
        .first()
        .ok_or_else(|| Error::Malformed("no components".into()))?;
    let n = first.len();
    for t in components {
        if t.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: t.len(),
            });
        }
    }
    let mut fixed: Option<Sign> = None;
    for t in components {
        let s = require_quiddity(t)?;
        if !t.ring().is_char_two() {
            if fixed.is_some_and(|f| f != s) {
                // no common sign, so the assembled tuple is no quiddity
                return Err(Error::NotQuiddity);
            }
            fixed = Some(s);
        }
    }
    if components.iter().all(|t| is_zero_pair(t.ring(), t.entries())) {
        return Ok(SimultaneousOutcome::Conventional);
    }
    if n <= 3 {
        return Ok(SimultaneousOutcome::NotSimultaneouslyReducible);
    }

    for sigma in DihedralOp::all(n) {
        let images: Vec<Vec<Element>> = components.iter().map(|t| sigma.apply(t.entries())).collect();
        for l in 3..n {
            // per sign, the solved (b_1, b_l) of every component
            let mut by_sign: Vec<(Vec<Element>, Vec<Element>)> = Vec::new();
            'sign: for sign in [Sign::Plus, Sign::Minus] {
                let mut xs = Vec::with_capacity(components.len());
                let mut ys = Vec::with_capacity(components.len());
                for (t, ts) in components.iter().zip(&images) {
                    let ring = t.ring();
                    let m = matrix_of(ring, &ts[n + 2 - l..])?;
                    let pairs = closing_pairs(ring, &m)?;
                    let hit = pairs
                        .into_iter()
                        .find(|(_, _, s)| ring.is_char_two() || *s == sign);
                    match hit {
                        Some((p, q, _)) => {
                            xs.push(q);
                            ys.push(p);
                        }
                        None => continue 'sign,
                    }
                }
                by_sign.push((xs, ys));
            }
            by_sign.sort();
            by_sign.dedup();
            'cand: for (xs, ys) in by_sign {
                let mut bs = Vec::with_capacity(components.len());
                let mut cs = Vec::with_capacity(components.len());
                for (((t, ts), x), y) in components.iter().zip(&images).zip(xs).zip(ys) {
                    let ring = t.ring();
                    match reconstruct(ring, ts, l, x, y)? {
                        Some((b, c)) => {
                            bs.push(Tuple::new_unchecked(ring.clone(), b));
                            cs.push(Tuple::new_unchecked(ring.clone(), c));
                        }
                        None => continue 'cand,
                    }
                }
                return Ok(SimultaneousOutcome::Reducible(SimultaneousWitness {
                    sigma,
                    l,
                    b: bs,
                    c: cs,
                }));
            }
        }
    }
    Ok(SimultaneousOutcome::NotSimultaneouslyReducible)
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WitnessJson {
    sigma: DihedralOp,
    l: usize,
    b: Vec<String>,
    c: Vec<String>,
}

impl ReductionWitness {
    /// Checks the witness invariants against the tuple it claims to reduce.
    pub fn check(&self, t: &Tuple) -> Result<()> {
        let n = t.len();
        let bad = |m: &str| Err(Error::Malformed(m.to_string()));
        if self.b.ring() != t.ring() || self.c.ring() != t.ring() {
            return Err(Error::RingMismatch(t.ring().to_string()));
        }
        if self.l < 3 || self.l + 1 > n || self.b.len() != self.l || self.c.len() != n + 2 - self.l {
            return bad("witness sizes do not fit the tuple");
        }
        if !self.b.verify()?.is_quiddity() {
            return bad("b is not a quiddity");
        }
        if t.apply(self.sigma)? != self.c.oplus(&self.b)? {
            return bad("c ⊕ b does not reconstruct the tuple");
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        let ring = self.b.ring();
        let dto = WitnessJson {
            sigma: self.sigma,
            l: self.l,
            b: self.b.entries().iter().map(|e| format_element(ring, e)).collect(),
            c: self.c.entries().iter().map(|e| format_element(ring, e)).collect(),
        };
        serde_json::to_string(&dto).expect("witness serializes")
    }

    /// Parses witness JSON; checks sizes and that `b` verifies, but not the
    /// reconstruction, which needs the reduced tuple (see [`Self::check`]).
    pub fn from_json(ring: &RingSpec, text: &str) -> Result<Self> {
        ring.validate()?;
        let dto: WitnessJson = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        let parse = |xs: &[String]| -> Result<Tuple> {
            let es = xs
                .iter()
                .map(|s| parse_element(ring, s))
                .collect::<Result<Vec<_>>>()?;
            Tuple::new(ring.clone(), es)
        };
        let b = parse(&dto.b)?;
        let c = parse(&dto.c)?;
        let n = (b.len() + c.len()).saturating_sub(2);
        if dto.l < 3 || b.len() != dto.l || c.len() < 3 || dto.sigma.rotation >= n.max(1) {
            return Err(Error::Malformed("witness sizes are inconsistent".into()));
        }
        if !b.verify()?.is_quiddity() {
            return Err(Error::Malformed("b is not a quiddity".into()));
        }
        Ok(ReductionWitness {
            sigma: dto.sigma,
            l: dto.l,
            b,
            c,
        })
    }
}
