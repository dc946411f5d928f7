use crate::error::{Error, Result};
use crate::quiddity::Tuple;
use crate::ring::{Element, RingSpec};

/// Irreducible candidate of size `n` over a product with two or more
/// characteristic-zero factors.
///
/// The first integer factor carries `(1, n-2, 1, 2, ..., 2)`, every other
/// factor its rotation `(2, 1, n-2, 1, 2, ..., 2)`; both are triangulation
/// quiddities, so each factor has sign `-1`. For `n = 3` this is `(1, 1, 1)`.
pub fn char0_witness(ring: &RingSpec, n: usize) -> Result<Tuple> {
    ring.validate()?;
    let parts = match ring {
        RingSpec::Product(parts) => parts,
        _ => return Err(Error::Unsupported(format!("{ring} is not a product"))),
    };
    let ints: Vec<usize> = parts
        .iter()
        .enumerate()
        .filter(|(_, p)| matches!(p, RingSpec::BoundedInt(_)))
        .map(|(i, _)| i)
        .collect();
    if ints.len() < 2 {
        return Err(Error::Unsupported(format!(
            "{ring} needs at least two integer factors"
        )));
    }
    if n < 3 {
        return Err(Error::Unsupported(format!("size {n} is below 3")));
    }
    if n == 3 {
        return Tuple::from_ints(ring, &[1, 1, 1]);
    }
    for p in parts {
        if let RingSpec::BoundedInt(b) = p {
            if (*b as u128) < n as u128 {
                return Err(Error::Overflow {
                    value: n as i128,
                    bound: *b,
                });
            }
        }
    }
    let k = n as i64 - 2;
    let mut first = vec![1, k, 1];
    first.resize(n, 2);
    let mut other = vec![2, 1, k, 1];
    other.resize(n, 2);
    let entries = (0..n)
        .map(|i| {
            let comps = parts
                .iter()
                .enumerate()
                .map(|(j, p)| p.from_int(if j == ints[0] { first[i] } else { other[i] }))
                .collect::<Result<Vec<_>>>()?;
            Ok(Element::Tuple(comps))
        })
        .collect::<Result<Vec<_>>>()?;
    Tuple::new(ring.clone(), entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiddity::{Sign, Verdict};
    use crate::ring::parse_ring_spec;

    #[test]
    fn examples() {
        let r = parse_ring_spec("Z[50]xZ[50]").unwrap();
        assert_eq!(char0_witness(&r, 4).unwrap().to_string(), "(1,2),(2,1),(1,2),(2,1)");
        let five = char0_witness(&r, 5).unwrap();
        assert_eq!(five.split_components().unwrap()[0].to_string(), "1,3,1,2,2");
        assert_eq!(char0_witness(&r, 3).unwrap().to_string(), "(1,1),(1,1),(1,1)");
    }

    #[test]
    fn every_component_has_sign_minus_one() {
        let r = parse_ring_spec("Z[50]xZ[50]xZ/3").unwrap();
        for n in 4..=20 {
            let t = char0_witness(&r, n).unwrap();
            assert_eq!(t.verify().unwrap(), Verdict::Quiddity(Sign::Minus), "n={n}");
            for c in t.split_components().unwrap() {
                assert_eq!(c.verify().unwrap(), Verdict::Quiddity(Sign::Minus));
            }
        }
    }

    #[test]
    fn errors() {
        let r = parse_ring_spec("Z[5]xZ[5]").unwrap();
        assert!(matches!(char0_witness(&r, 6), Err(Error::Overflow { .. })));
        assert!(char0_witness(&parse_ring_spec("Z[50]xZ/2").unwrap(), 5).is_err());
        assert!(char0_witness(&parse_ring_spec("Z[50]").unwrap(), 5).is_err());
    }
}
