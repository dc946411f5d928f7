//! Ring morphisms and their action on quiddities and classifications.
//!
//! A unital morphism maps quiddities to quiddities entrywise; an isomorphism
//! also preserves irreducibility in both directions, so classifications can
//! be carried across.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::enumeration::ClassificationReport;
use crate::error::{Error, Result};
use crate::quiddity::Tuple;
use crate::ring::{is_prime, BitSet, Element, RingSpec};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MorphismSpec {
    /// `Z/n x Z/m -> Z/nm` for coprime `n, m`.
    Crt { n: u64, m: u64 },
    /// `Z/nm -> Z/n x Z/m`.
    CrtInverse { n: u64, m: u64 },
    /// `x -> x^p` on a ring of prime characteristic `p`.
    Frobenius,
    /// `(Z/2)^k -> P(k)`, bit `i` set iff ground element `i` belongs.
    PowerSet(u32),
    /// `P(k) -> (Z/2)^k`, membership indicators.
    PowerSetInverse(u32),
    /// `Z[B] -> Z/N`, or `Z/M -> Z/N` with `N | M`.
    ModReduction(u64),
    /// Output factor `i` is input factor `perm[i]`.
    ComponentPermutation(Vec<usize>),
    Identity,
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

fn z2_power(k: u32) -> RingSpec {
    if k == 1 {
        RingSpec::ModN(2)
    } else {
        RingSpec::Product(vec![RingSpec::ModN(2); k as usize])
    }
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidMorphism(msg.into())
}

impl MorphismSpec {
    /// Codomain for `domain`, or an error if the morphism does not apply.
    pub fn codomain(&self, domain: &RingSpec) -> Result<RingSpec> {
        domain.validate()?;
        let mismatch = |want: &str| bad(format!("{self} expects {want}, got {domain}"));
        match self {
            MorphismSpec::Crt { n, m } => {
                check_coprime(*n, *m)?;
                let want = RingSpec::Product(vec![RingSpec::ModN(*n), RingSpec::ModN(*m)]);
                if *domain != want {
                    return Err(mismatch(&want.to_string()));
                }
                Ok(RingSpec::ModN(n * m))
            }
            MorphismSpec::CrtInverse { n, m } => {
                check_coprime(*n, *m)?;
                if *domain != RingSpec::ModN(n * m) {
                    return Err(mismatch(&format!("Z/{}", n * m)));
                }
                Ok(RingSpec::Product(vec![RingSpec::ModN(*n), RingSpec::ModN(*m)]))
            }
            MorphismSpec::Frobenius => {
                let p = domain.characteristic();
                if !is_prime(p) {
                    return Err(bad(format!("{domain} does not have prime characteristic")));
                }
                Ok(domain.clone())
            }
            MorphismSpec::PowerSet(k) => {
                if *domain != z2_power(*k) {
                    return Err(mismatch(&z2_power(*k).to_string()));
                }
                Ok(RingSpec::PowerSet(*k))
            }
            MorphismSpec::PowerSetInverse(k) => {
                if *domain != RingSpec::PowerSet(*k) {
                    return Err(mismatch(&format!("P({k})")));
                }
                Ok(z2_power(*k))
            }
            MorphismSpec::ModReduction(n) => {
                let target = RingSpec::ModN(*n);
                target.validate()?;
                match domain {
                    RingSpec::BoundedInt(_) => Ok(target),
                    RingSpec::ModN(m) if m % n == 0 => Ok(target),
                    _ => Err(mismatch(&format!("Z[B] or Z/M with {n} | M"))),
                }
            }
            MorphismSpec::ComponentPermutation(perm) => {
                let parts = domain.components().ok_or_else(|| mismatch("a product"))?;
                let mut seen = vec![false; parts.len()];
                if perm.len() != parts.len() || perm.iter().any(|&i| i >= parts.len() || std::mem::replace(&mut seen[i], true)) {
                    return Err(bad(format!("{perm:?} is not a permutation of {} factors", parts.len())));
                }
                Ok(RingSpec::Product(perm.iter().map(|&i| parts[i].clone()).collect()))
            }
            MorphismSpec::Identity => Ok(domain.clone()),
        }
    }

    /// Whether the morphism is bijective on `domain`; decided exhaustively
    /// for the kinds that are not bijective by construction.
    pub fn is_isomorphism_on(&self, domain: &RingSpec) -> Result<bool> {
        let codomain = self.codomain(domain)?;
        match self {
            MorphismSpec::Frobenius | MorphismSpec::ModReduction(_) => {
                if !domain.is_finite() || domain.element_count() != codomain.element_count() {
                    return Ok(false);
                }
                let images = domain
                    .elements()?
                    .iter()
                    .map(|x| self.map_element(domain, x))
                    .collect::<Result<BTreeSet<_>>>()?;
                Ok(domain.element_count() == Some(images.len() as u128))
            }
            _ => Ok(true),
        }
    }

    pub fn map_element(&self, domain: &RingSpec, x: &Element) -> Result<Element> {
        let codomain = self.codomain(domain)?;
        if !domain.contains(x) {
            return Err(Error::RingMismatch(domain.to_string()));
        }
        match (self, x) {
            (MorphismSpec::Crt { n, m }, Element::Tuple(xs)) => {
                let (Element::Residue(a), Element::Residue(b)) = (&xs[0], &xs[1]) else {
                    unreachable!("validated payload")
                };
                let (n, m) = (*n as i128, *m as i128);
                let (_, u, v) = ext_gcd(n, m);
                // n u + m v = 1
                let x = (*a as i128 * m * v + *b as i128 * n * u).rem_euclid(n * m);
                Ok(Element::Residue(x as u64))
            }
            (MorphismSpec::CrtInverse { n, m }, Element::Residue(x)) => {
                Ok(Element::Tuple(vec![Element::Residue(x % n), Element::Residue(x % m)]))
            }
            (MorphismSpec::Frobenius, _) => domain.pow(x, domain.characteristic()),
            (MorphismSpec::PowerSet(k), _) => {
                let bits = match x {
                    Element::Residue(b) => *b,
                    Element::Tuple(xs) => xs
                        .iter()
                        .enumerate()
                        .map(|(i, e)| match e {
                            Element::Residue(b) => b << i,
                            _ => unreachable!("validated payload"),
                        })
                        .sum(),
                    _ => unreachable!("validated payload"),
                };
                debug_assert!(bits < 1 << k);
                Ok(Element::Set(BitSet(bits)))
            }
            (MorphismSpec::PowerSetInverse(k), Element::Set(s)) => {
                let bit = |i: u32| Element::Residue((s.0 >> i) & 1);
                Ok(if *k == 1 {
                    bit(0)
                } else {
                    Element::Tuple((0..*k).map(bit).collect())
                })
            }
            (MorphismSpec::ModReduction(_), Element::Int(v)) => codomain.from_int(*v),
            (MorphismSpec::ModReduction(n), Element::Residue(r)) => Ok(Element::Residue(r % n)),
            (MorphismSpec::ComponentPermutation(perm), Element::Tuple(xs)) => {
                Ok(Element::Tuple(perm.iter().map(|&i| xs[i].clone()).collect()))
            }
            (MorphismSpec::Identity, _) => Ok(x.clone()),
            _ => Err(Error::RingMismatch(domain.to_string())),
        }
    }

    /// Exhaustively checks `f(1) = 1`, `f(x + y) = f(x) + f(y)` and
    /// `f(xy) = f(x) f(y)` on a finite domain.
    pub fn is_ring_morphism_on(&self, domain: &RingSpec) -> Result<bool> {
        let codomain = self.codomain(domain)?;
        let els = domain.elements()?;
        let images = els
            .iter()
            .map(|x| self.map_element(domain, x))
            .collect::<Result<Vec<_>>>()?;
        if self.map_element(domain, &domain.one())? != codomain.one() {
            return Ok(false);
        }
        let image = |e: &Element| &images[els.binary_search(e).expect("closed operation")];
        for (x, fx) in els.iter().zip(&images) {
            for (y, fy) in els.iter().zip(&images) {
                if image(&domain.add(x, y)?) != &codomain.add(fx, fy)? || image(&domain.mul(x, y)?) != &codomain.mul(fx, fy)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

fn check_coprime(n: u64, m: u64) -> Result<()> {
    RingSpec::ModN(n).validate()?;
    RingSpec::ModN(m).validate()?;
    let (g, _, _) = ext_gcd(n as i128, m as i128);
    if g.abs() != 1 {
        return Err(bad(format!("{n} and {m} are not coprime")));
    }
    Ok(())
}

impl fmt::Display for MorphismSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MorphismSpec::Crt { n, m } => write!(f, "crt:{n},{m}"),
            MorphismSpec::CrtInverse { n, m } => write!(f, "crt-inv:{n},{m}"),
            MorphismSpec::Frobenius => f.write_str("frob"),
            MorphismSpec::PowerSet(k) => write!(f, "pset:{k}"),
            MorphismSpec::PowerSetInverse(k) => write!(f, "pset-inv:{k}"),
            MorphismSpec::ModReduction(n) => write!(f, "mod:{n}"),
            MorphismSpec::ComponentPermutation(p) => {
                let parts: Vec<String> = p.iter().map(usize::to_string).collect();
                write!(f, "perm:{}", parts.join(","))
            }
            MorphismSpec::Identity => f.write_str("id"),
        }
    }
}

fn numbers<T: FromStr>(args: &str, what: &str) -> Result<Vec<T>> {
    args.split(',')
        .map(|a| a.trim().parse().map_err(|_| bad(format!("bad {what} argument {a:?}"))))
        .collect()
}

impl FromStr for MorphismSpec {
    type Err = Error;

    /// Descriptors: `crt:2,3`, `crt-inv:2,3`, `frob`, `pset:2`, `pset-inv:2`,
    /// `mod:6`, `perm:1,0`, `id`.
    fn from_str(s: &str) -> Result<Self> {
        let (head, args) = match s.split_once(':') {
            Some((h, a)) => (h.trim(), Some(a)),
            None => (s.trim(), None),
        };
        let spec = match (head, args) {
            ("crt" | "crt-inv", Some(a)) => {
                let v: Vec<u64> = numbers(a, head)?;
                let [n, m] = v[..] else {
                    return Err(bad("crt takes two moduli"));
                };
                check_coprime(n, m)?;
                if head == "crt" {
                    MorphismSpec::Crt { n, m }
                } else {
                    MorphismSpec::CrtInverse { n, m }
                }
            }
            ("frob", None) => MorphismSpec::Frobenius,
            ("id", None) => MorphismSpec::Identity,
            ("pset" | "pset-inv", Some(a)) => {
                let k: u32 = a.trim().parse().map_err(|_| bad(format!("bad ground size {a:?}")))?;
                RingSpec::PowerSet(k).validate()?;
                if head == "pset" {
                    MorphismSpec::PowerSet(k)
                } else {
                    MorphismSpec::PowerSetInverse(k)
                }
            }
            ("mod", Some(a)) => {
                let n: u64 = a.trim().parse().map_err(|_| bad(format!("bad modulus {a:?}")))?;
                RingSpec::ModN(n).validate()?;
                MorphismSpec::ModReduction(n)
            }
            ("perm", Some(a)) => MorphismSpec::ComponentPermutation(numbers(a, "perm")?),
            _ => return Err(bad(format!("unknown morphism {s:?}"))),
        };
        Ok(spec)
    }
}

/// Entrywise image of a quiddity.
pub fn apply_morphism(m: &MorphismSpec, t: &Tuple) -> Result<Tuple> {
    if !t.verify()?.is_quiddity() {
        return Err(Error::NotQuiddity);
    }
    let codomain = m.codomain(t.ring())?;
    let entries = t
        .entries()
        .iter()
        .map(|e| m.map_element(t.ring(), e))
        .collect::<Result<Vec<_>>>()?;
    let image = Tuple::new(codomain, entries)?;
    if !image.verify()?.is_quiddity() {
        return Err(bad(format!("{m} is not a ring morphism on {}", t.ring())));
    }
    Ok(image)
}

/// The CRT bijection `Z/n x Z/m -> Z/nm`, in domain element order.
pub fn crt_value_table(n: u64, m: u64) -> Result<Vec<(Element, Element)>> {
    let spec = MorphismSpec::Crt { n, m };
    let domain = RingSpec::Product(vec![RingSpec::ModN(n), RingSpec::ModN(m)]);
    spec.codomain(&domain)?;
    domain
        .elements()?
        .into_iter()
        .map(|x| {
            let y = spec.map_element(&domain, &x)?;
            Ok((x, y))
        })
        .collect()
}

fn image_classes(m: &MorphismSpec, report: &ClassificationReport) -> Result<BTreeMap<usize, Vec<Tuple>>> {
    report
        .sizes
        .iter()
        .map(|(&n, list)| {
            let mut out = list
                .iter()
                .map(|t| apply_morphism(m, t).map(|u| u.canonical_form()))
                .collect::<Result<Vec<_>>>()?;
            out.sort();
            Ok((n, out))
        })
        .collect()
}

/// Carries a classification across an isomorphism.
pub fn transfer_classification(m: &MorphismSpec, report: &ClassificationReport) -> Result<ClassificationReport> {
    if !m.is_isomorphism_on(&report.ring)? {
        return Err(bad(format!("{m} is not an isomorphism on {}", report.ring)));
    }
    Ok(ClassificationReport {
        ring: m.codomain(&report.ring)?,
        sizes: image_classes(m, report)?,
        ..report.clone()
    })
}

/// Whether the classes of a finite-field classification are permuted by
/// the Frobenius map.
pub fn frobenius_closure_check(report: &ClassificationReport) -> Result<bool> {
    if !report.ring.is_finite_field() {
        return Err(Error::Unsupported(format!("{} is not a finite field", report.ring)));
    }
    let image = image_classes(&MorphismSpec::Frobenius, report)?;
    Ok(report.sizes.iter().all(|(n, list)| {
        let before: BTreeSet<&Tuple> = list.iter().collect();
        let after: BTreeSet<&Tuple> = image[n].iter().collect();
        before == after
    }))
}
