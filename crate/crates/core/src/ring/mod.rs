//! Ring descriptors, element values and their arithmetic.
//!
//! A [`RingSpec`] names one of the rings the library works over: `Z/N`, the
//! field with four elements, finite direct products, power-set rings and a
//! bounded window of the integers standing in for a characteristic-zero ring.
//! [`Element`] values are plain reduced payloads; every operation takes the
//! ring explicitly and rejects payloads that do not belong to it.

mod parse;
mod table;

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

pub use parse::{format_element, format_entries, parse_element, parse_entries, parse_ring_spec};
pub use table::FiniteRing;

/// Largest element count [`RingSpec::elements`] will materialize.
pub const MAX_LISTED_ELEMENTS: u128 = 1 << 24;

/// Descriptor of a commutative unital ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingSpec {
    /// `Z/NZ`, `N >= 2`.
    ModN(u64),
    /// `F_4 = F_2[X]/(X^2 + X + 1)`.
    F4,
    /// Direct product; never nested and never empty once normalized.
    Product(Vec<RingSpec>),
    /// Subsets of a `k`-element ground set under symmetric difference and intersection.
    PowerSet(u32),
    /// Integers restricted to `[-B, B]`; leaving the window is an error.
    BoundedInt(i64),
}

/// Bit set over a power-set ground set; bit `i` is ground element `i`.
///
/// Ordered lexicographically on the membership vector `(b_0, b_1, ...)`, which
/// keeps it consistent with the product order on `(Z/2)^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BitSet(pub u64);

impl Ord for BitSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.reverse_bits().cmp(&other.0.reverse_bits())
    }
}

impl PartialOrd for BitSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A reduced ring value. Which variant is valid depends on the ring.
///
/// For `F4` the payload is `2 * (coefficient of X) + constant`, so the derived
/// order is `0 < 1 < X < X+1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Residue(u64),
    F4(u8),
    Tuple(Vec<Element>),
    Set(BitSet),
    Int(i64),
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

fn f4_mul(a: u8, b: u8) -> u8 {
    let (a1, a0) = (a >> 1 & 1, a & 1);
    let (b1, b0) = (b >> 1 & 1, b & 1);
    // X^2 = X + 1
    let x = (a1 & b1) ^ (a1 & b0) ^ (a0 & b1);
    let c = (a1 & b1) ^ (a0 & b0);
    x << 1 | c
}

impl RingSpec {
    /// Builds a product, flattening nested products left to right.
    pub fn product(components: Vec<RingSpec>) -> Result<RingSpec> {
        if components.is_empty() {
            return Err(Error::Malformed("empty product".into()));
        }
        let mut flat = Vec::with_capacity(components.len());
        for c in components {
            match c {
                RingSpec::Product(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        Ok(RingSpec::Product(flat))
    }

    /// Checks the descriptor invariants.
    pub fn validate(&self) -> Result<()> {
        match self {
            RingSpec::ModN(n) if *n < 2 => Err(Error::InvalidModulus(*n)),
            RingSpec::BoundedInt(b) if *b < 1 => Err(Error::InvalidBound(*b)),
            RingSpec::PowerSet(k) if !(1..=26).contains(k) => Err(Error::InvalidGroundSize(*k)),
            RingSpec::Product(cs) => {
                if cs.is_empty() {
                    return Err(Error::Malformed("empty product".into()));
                }
                for c in cs {
                    if matches!(c, RingSpec::Product(_)) {
                        return Err(Error::Malformed("nested product is not normalized".into()));
                    }
                    c.validate()?;
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    pub fn components(&self) -> Option<&[RingSpec]> {
        match self {
            RingSpec::Product(cs) => Some(cs),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        match self {
            RingSpec::BoundedInt(_) => false,
            RingSpec::Product(cs) => cs.iter().all(RingSpec::is_finite),
            _ => true,
        }
    }

    /// Number of elements, `None` for rings containing a bounded-integer factor.
    pub fn element_count(&self) -> Option<u128> {
        match self {
            RingSpec::ModN(n) => Some(*n as u128),
            RingSpec::F4 => Some(4),
            RingSpec::PowerSet(k) => Some(1u128 << k),
            RingSpec::BoundedInt(_) => None,
            RingSpec::Product(cs) => cs
                .iter()
                .try_fold(1u128, |acc, c| c.element_count().map(|n| acc.saturating_mul(n))),
        }
    }

    /// Smallest `n >= 1` with `n * 1 = 0`, or 0 when there is none.
    pub fn characteristic(&self) -> u64 {
        match self {
            RingSpec::ModN(n) => *n,
            RingSpec::F4 | RingSpec::PowerSet(_) => 2,
            RingSpec::BoundedInt(_) => 0,
            RingSpec::Product(cs) => cs.iter().map(RingSpec::characteristic).fold(1, lcm),
        }
    }

    /// `1 = -1`, i.e. `Id` and `-Id` coincide.
    pub fn is_char_two(&self) -> bool {
        self.characteristic() == 2
    }

    pub fn zero(&self) -> Element {
        match self {
            RingSpec::ModN(_) => Element::Residue(0),
            RingSpec::F4 => Element::F4(0),
            RingSpec::PowerSet(_) => Element::Set(BitSet(0)),
            RingSpec::BoundedInt(_) => Element::Int(0),
            RingSpec::Product(cs) => Element::Tuple(cs.iter().map(RingSpec::zero).collect()),
        }
    }

    pub fn one(&self) -> Element {
        match self {
            RingSpec::ModN(_) => Element::Residue(1),
            RingSpec::F4 => Element::F4(1),
            RingSpec::PowerSet(k) => Element::Set(BitSet(full_mask(*k))),
            RingSpec::BoundedInt(_) => Element::Int(1),
            RingSpec::Product(cs) => Element::Tuple(cs.iter().map(RingSpec::one).collect()),
        }
    }

    /// Image of `k` under the unital map `Z -> A`.
    pub fn from_int(&self, k: i64) -> Result<Element> {
        Ok(match self {
            RingSpec::ModN(n) => Element::Residue((k as i128).rem_euclid(*n as i128) as u64),
            RingSpec::F4 => Element::F4(k.rem_euclid(2) as u8),
            RingSpec::PowerSet(m) => {
                Element::Set(BitSet(if k.rem_euclid(2) == 1 { full_mask(*m) } else { 0 }))
            }
            RingSpec::BoundedInt(b) => Element::Int(window(k as i128, *b)?),
            RingSpec::Product(cs) => Element::Tuple(
                cs.iter()
                    .map(|c| c.from_int(k))
                    .collect::<Result<Vec<_>>>()?,
            ),
        })
    }

    /// Whether `e` is a reduced payload of this ring.
    pub fn contains(&self, e: &Element) -> bool {
        match (self, e) {
            (RingSpec::ModN(n), Element::Residue(r)) => r < n,
            (RingSpec::F4, Element::F4(v)) => *v < 4,
            (RingSpec::PowerSet(k), Element::Set(s)) => s.0 & !full_mask(*k) == 0,
            (RingSpec::BoundedInt(b), Element::Int(v)) => v.unsigned_abs() <= b.unsigned_abs(),
            (RingSpec::Product(cs), Element::Tuple(xs)) => {
                cs.len() == xs.len() && cs.iter().zip(xs).all(|(c, x)| c.contains(x))
            }
            _ => false,
        }
    }

    pub(crate) fn check(&self, e: &Element) -> Result<()> {
        if self.contains(e) {
            Ok(())
        } else {
            Err(self.mismatch())
        }
    }

    fn mismatch(&self) -> Error {
        Error::RingMismatch(self.to_string())
    }

    pub fn add(&self, x: &Element, y: &Element) -> Result<Element> {
        match (self, x, y) {
            (RingSpec::ModN(n), Element::Residue(a), Element::Residue(b)) if a < n && b < n => {
                Ok(Element::Residue(((*a as u128 + *b as u128) % *n as u128) as u64))
            }
            (RingSpec::F4, Element::F4(a), Element::F4(b)) if *a < 4 && *b < 4 => {
                Ok(Element::F4(a ^ b))
            }
            (RingSpec::PowerSet(_), Element::Set(a), Element::Set(b))
                if self.contains(x) && self.contains(y) =>
            {
                Ok(Element::Set(BitSet(a.0 ^ b.0)))
            }
            (RingSpec::BoundedInt(bound), Element::Int(a), Element::Int(b))
                if self.contains(x) && self.contains(y) =>
            {
                Ok(Element::Int(window(*a as i128 + *b as i128, *bound)?))
            }
            (RingSpec::Product(cs), Element::Tuple(xs), Element::Tuple(ys))
                if xs.len() == cs.len() && ys.len() == cs.len() =>
            {
                cs.iter()
                    .zip(xs.iter().zip(ys))
                    .map(|(c, (a, b))| c.add(a, b))
                    .collect::<Result<Vec<_>>>()
                    .map(Element::Tuple)
            }
            _ => Err(self.mismatch()),
        }
    }

    pub fn mul(&self, x: &Element, y: &Element) -> Result<Element> {
        match (self, x, y) {
            (RingSpec::ModN(n), Element::Residue(a), Element::Residue(b)) if a < n && b < n => {
                Ok(Element::Residue(((*a as u128 * *b as u128) % *n as u128) as u64))
            }
            (RingSpec::F4, Element::F4(a), Element::F4(b)) if *a < 4 && *b < 4 => {
                Ok(Element::F4(f4_mul(*a, *b)))
            }
            (RingSpec::PowerSet(_), Element::Set(a), Element::Set(b))
                if self.contains(x) && self.contains(y) =>
            {
                Ok(Element::Set(BitSet(a.0 & b.0)))
            }
            (RingSpec::BoundedInt(bound), Element::Int(a), Element::Int(b))
                if self.contains(x) && self.contains(y) =>
            {
                Ok(Element::Int(window(*a as i128 * *b as i128, *bound)?))
            }
            (RingSpec::Product(cs), Element::Tuple(xs), Element::Tuple(ys))
                if xs.len() == cs.len() && ys.len() == cs.len() =>
            {
                cs.iter()
                    .zip(xs.iter().zip(ys))
                    .map(|(c, (a, b))| c.mul(a, b))
                    .collect::<Result<Vec<_>>>()
                    .map(Element::Tuple)
            }
            _ => Err(self.mismatch()),
        }
    }

    pub fn neg(&self, x: &Element) -> Result<Element> {
        match (self, x) {
            (RingSpec::ModN(n), Element::Residue(a)) if a < n => {
                Ok(Element::Residue(if *a == 0 { 0 } else { n - a }))
            }
            (RingSpec::F4, Element::F4(a)) if *a < 4 => Ok(x.clone()),
            (RingSpec::PowerSet(_), Element::Set(_)) if self.contains(x) => Ok(x.clone()),
            (RingSpec::BoundedInt(_), Element::Int(a)) if self.contains(x) => Ok(Element::Int(-a)),
            (RingSpec::Product(cs), Element::Tuple(xs)) if xs.len() == cs.len() => cs
                .iter()
                .zip(xs)
                .map(|(c, a)| c.neg(a))
                .collect::<Result<Vec<_>>>()
                .map(Element::Tuple),
            _ => Err(self.mismatch()),
        }
    }

    pub fn sub(&self, x: &Element, y: &Element) -> Result<Element> {
        self.add(x, &self.neg(y)?)
    }

    /// Every element once, in the canonical order.
    pub fn elements(&self) -> Result<Vec<Element>> {
        let count = self
            .element_count()
            .ok_or_else(|| Error::InfiniteRing(self.to_string()))?;
        if count > MAX_LISTED_ELEMENTS {
            return Err(Error::TooLarge {
                ring: self.to_string(),
                size: count,
            });
        }
        Ok(match self {
            RingSpec::ModN(n) => (0..*n).map(Element::Residue).collect(),
            RingSpec::F4 => (0..4).map(Element::F4).collect(),
            RingSpec::PowerSet(k) => {
                let mut sets: Vec<BitSet> = (0..1u64 << k).map(BitSet).collect();
                sets.sort();
                sets.into_iter().map(Element::Set).collect()
            }
            RingSpec::BoundedInt(_) => unreachable!("bounded rings have no element count"),
            RingSpec::Product(cs) => {
                let lists = cs
                    .iter()
                    .map(RingSpec::elements)
                    .collect::<Result<Vec<_>>>()?;
                let mut out: Vec<Vec<Element>> = vec![Vec::new()];
                for list in &lists {
                    out = out
                        .into_iter()
                        .flat_map(|prefix| {
                            list.iter().map(move |e| {
                                let mut next = prefix.clone();
                                next.push(e.clone());
                                next
                            })
                        })
                        .collect();
                }
                out.into_iter().map(Element::Tuple).collect()
            }
        })
    }

    /// `x^p` by repeated squaring.
    pub fn pow(&self, x: &Element, mut p: u64) -> Result<Element> {
        let mut base = x.clone();
        let mut acc = self.one();
        while p > 0 {
            if p & 1 == 1 {
                acc = self.mul(&acc, &base)?;
            }
            p >>= 1;
            if p > 0 {
                base = self.mul(&base, &base)?;
            }
        }
        Ok(acc)
    }

    /// Finite fields among the supported rings: `Z/p` for prime `p`, and `F4`.
    pub fn is_finite_field(&self) -> bool {
        match self {
            RingSpec::ModN(n) => is_prime(*n),
            RingSpec::F4 => true,
            _ => false,
        }
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn full_mask(k: u32) -> u64 {
    if k >= 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

fn window(value: i128, bound: i64) -> Result<i64> {
    if value.unsigned_abs() <= bound.unsigned_abs() as u128 {
        Ok(value as i64)
    } else {
        Err(Error::Overflow { value, bound })
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::ModN(n) => write!(f, "Z/{n}"),
            RingSpec::F4 => f.write_str("F4"),
            RingSpec::PowerSet(k) => write!(f, "P({k})"),
            RingSpec::BoundedInt(b) => write!(f, "Z[{b}]"),
            RingSpec::Product(cs) => {
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        f.write_str("x")?;
                    }
                    write!(f, "{c}")?;
                }
                Ok(())
            }
        }
    }
}

impl std::str::FromStr for RingSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_ring_spec(s)
    }
}

/// Uniform ring arithmetic used by the generic algorithms.
///
/// Implemented by [`RingSpec`] over structural [`Element`]s and by
/// [`FiniteRing`] over compact table indices. Element order must agree with
/// the canonical element order of the ring.
pub trait RingOps: Sync {
    type Elem: Clone + Eq + Ord + std::hash::Hash + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Result<Self::Elem>;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Result<Self::Elem>;
    fn neg(&self, x: &Self::Elem) -> Result<Self::Elem>;
    fn from_int(&self, k: i64) -> Result<Self::Elem>;
    fn is_char_two(&self) -> bool;

    fn sub(&self, x: &Self::Elem, y: &Self::Elem) -> Result<Self::Elem> {
        self.add(x, &self.neg(y)?)
    }
}

impl RingOps for RingSpec {
    type Elem = Element;

    fn zero(&self) -> Element {
        RingSpec::zero(self)
    }
    fn one(&self) -> Element {
        RingSpec::one(self)
    }
    fn add(&self, x: &Element, y: &Element) -> Result<Element> {
        RingSpec::add(self, x, y)
    }
    fn mul(&self, x: &Element, y: &Element) -> Result<Element> {
        RingSpec::mul(self, x, y)
    }
    fn neg(&self, x: &Element) -> Result<Element> {
        RingSpec::neg(self, x)
    }
    fn from_int(&self, k: i64) -> Result<Element> {
        RingSpec::from_int(self, k)
    }
    fn is_char_two(&self) -> bool {
        RingSpec::is_char_two(self)
    }
}
