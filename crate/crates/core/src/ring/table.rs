use super::{Element, RingOps, RingSpec};
use crate::error::{Error, Result};

/// Upper bound on the size of rings compiled into tables.
pub const MAX_TABLE_ELEMENTS: usize = 1024;

/// A finite ring compiled into addition/multiplication tables.
///
/// Elements are `u16` indices into the canonical element list, so index order
/// is element order. Used by the enumeration hot loops.
#[derive(Debug, Clone)]
pub struct FiniteRing {
    spec: RingSpec,
    elements: Vec<Element>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    zero: u16,
    one: u16,
    char_two: bool,
    characteristic: u64,
}

impl FiniteRing {
    pub fn new(spec: &RingSpec) -> Result<Self> {
        spec.validate()?;
        let count = spec
            .element_count()
            .ok_or_else(|| Error::InfiniteRing(spec.to_string()))?;
        if count > MAX_TABLE_ELEMENTS as u128 {
            return Err(Error::TooLarge {
                ring: spec.to_string(),
                size: count,
            });
        }
        let elements = spec.elements()?;
        let size = elements.len();
        let index = |e: &Element| -> u16 {
            elements
                .binary_search(e)
                .expect("ring operations stay inside the element list") as u16
        };
        let mut add = Vec::with_capacity(size * size);
        let mut mul = Vec::with_capacity(size * size);
        for a in &elements {
            for b in &elements {
                add.push(index(&spec.add(a, b)?));
                mul.push(index(&spec.mul(a, b)?));
            }
        }
        let neg = elements
            .iter()
            .map(|a| spec.neg(a).map(|n| index(&n)))
            .collect::<Result<Vec<_>>>()?;
        Ok(FiniteRing {
            zero: index(&spec.zero()),
            one: index(&spec.one()),
            char_two: spec.is_char_two(),
            characteristic: spec.characteristic(),
            spec: spec.clone(),
            elements,
            add,
            mul,
            neg,
        })
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn element(&self, i: u16) -> &Element {
        &self.elements[i as usize]
    }

    pub fn index_of(&self, e: &Element) -> Result<u16> {
        self.elements
            .binary_search(e)
            .map(|i| i as u16)
            .map_err(|_| Error::RingMismatch(self.spec.to_string()))
    }

    pub fn indices(&self) -> std::ops::Range<u16> {
        0..self.elements.len() as u16
    }

    #[inline]
    pub fn add_idx(&self, a: u16, b: u16) -> u16 {
        self.add[a as usize * self.elements.len() + b as usize]
    }

    #[inline]
    pub fn mul_idx(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.elements.len() + b as usize]
    }

    #[inline]
    pub fn neg_idx(&self, a: u16) -> u16 {
        self.neg[a as usize]
    }

    pub fn to_elements(&self, xs: &[u16]) -> Vec<Element> {
        xs.iter().map(|&i| self.element(i).clone()).collect()
    }

    pub fn to_indices(&self, xs: &[Element]) -> Result<Vec<u16>> {
        xs.iter().map(|e| self.index_of(e)).collect()
    }
}

impl RingOps for FiniteRing {
    type Elem = u16;

    fn zero(&self) -> u16 {
        self.zero
    }
    fn one(&self) -> u16 {
        self.one
    }
    #[inline]
    fn add(&self, x: &u16, y: &u16) -> Result<u16> {
        Ok(self.add_idx(*x, *y))
    }
    #[inline]
    fn mul(&self, x: &u16, y: &u16) -> Result<u16> {
        Ok(self.mul_idx(*x, *y))
    }
    #[inline]
    fn neg(&self, x: &u16) -> Result<u16> {
        Ok(self.neg_idx(*x))
    }
    fn from_int(&self, k: i64) -> Result<u16> {
        self.index_of(&self.spec.from_int(k)?)
    }
    fn is_char_two(&self) -> bool {
        self.char_two
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_agree_with_structural_arithmetic() {
        for spec in [
            RingSpec::ModN(6),
            RingSpec::F4,
            RingSpec::PowerSet(3),
            RingSpec::product(vec![RingSpec::ModN(2), RingSpec::ModN(4)]).unwrap(),
        ] {
            let r = FiniteRing::new(&spec).unwrap();
            for a in r.indices() {
                for b in r.indices() {
                    let (ea, eb) = (r.element(a), r.element(b));
                    assert_eq!(r.element(r.add_idx(a, b)), &spec.add(ea, eb).unwrap());
                    assert_eq!(r.element(r.mul_idx(a, b)), &spec.mul(ea, eb).unwrap());
                }
            }
            assert_eq!(r.element(r.one), &spec.one());
        }
    }

    #[test]
    fn rejects_infinite_and_large_rings() {
        assert!(matches!(
            FiniteRing::new(&RingSpec::BoundedInt(5)),
            Err(Error::InfiniteRing(_))
        ));
        assert!(matches!(
            FiniteRing::new(&RingSpec::ModN(5000)),
            Err(Error::TooLarge { .. })
        ));
    }
}
