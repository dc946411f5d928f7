//! Quiddities over `Z/4` with entries restricted to `{0, 2}` or `{1, -1}`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::quiddity::{closing_pairs, matrix_of, Mat2, Tuple};
use crate::ring::{Element, RingSpec};

const Z4: RingSpec = RingSpec::ModN(4);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Alphabet {
    /// `{0, 2}`; sizes must be even.
    ZeroTwo,
    /// `{1, -1}`; sizes must be multiples of 3.
    PlusMinusOne,
}

impl Alphabet {
    pub fn letters(self) -> [Element; 2] {
        match self {
            Alphabet::ZeroTwo => [Element::Residue(0), Element::Residue(2)],
            Alphabet::PlusMinusOne => [Element::Residue(1), Element::Residue(3)],
        }
    }

    pub fn contains(self, e: &Element) -> bool {
        self.letters().contains(e)
    }

    /// Whether quiddities of size `n` are counted for this alphabet.
    pub fn admits_size(self, n: usize) -> bool {
        match self {
            Alphabet::ZeroTwo => n >= 2 && n.is_multiple_of(2),
            Alphabet::PlusMinusOne => n >= 3 && n.is_multiple_of(3),
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Alphabet::ZeroTwo => "02",
            Alphabet::PlusMinusOne => "pm1",
        })
    }
}

impl FromStr for Alphabet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "02" | "0,2" => Ok(Alphabet::ZeroTwo),
            "pm1" | "1,-1" | "±1" => Ok(Alphabet::PlusMinusOne),
            other => Err(Error::Unsupported(format!("alphabet {other:?}; expected 02 or pm1"))),
        }
    }
}

fn check_size(alphabet: Alphabet, n: usize) -> Result<()> {
    if alphabet.admits_size(n) {
        Ok(())
    } else {
        Err(Error::Unsupported(format!("size {n} with alphabet {alphabet}")))
    }
}

/// Number of size-`n` quiddities over `Z/4` with every entry in `alphabet`.
pub fn count_restricted(alphabet: Alphabet, n: usize) -> Result<u64> {
    check_size(alphabet, n)?;
    let letters = alphabet.letters();
    fn go(letters: &[Element; 2], alphabet: Alphabet, left: usize, m: &Mat2<Element>) -> Result<u64> {
        if left == 0 {
            let pairs = closing_pairs(&Z4, m)?;
            return Ok(pairs
                .iter()
                .filter(|(p, q, _)| alphabet.contains(p) && alphabet.contains(q))
                .count() as u64);
        }
        let mut total = 0;
        for a in letters {
            total += go(letters, alphabet, left - 1, &m.push_front(&Z4, a)?)?;
        }
        Ok(total)
    }
    go(&letters, alphabet, n - 2, &Mat2::identity(&Z4))
}

/// All quiddities `(x, w_1, ..., w_k, y)` with `x, y` in the alphabet.
///
/// For admissible lengths there is exactly one.
pub fn extend_word(alphabet: Alphabet, word: &[Element]) -> Result<Vec<Tuple>> {
    check_size(alphabet, word.len() + 2)?;
    if let Some(bad) = word.iter().find(|e| !alphabet.contains(e)) {
        return Err(Error::Unsupported(format!("{bad:?} is outside alphabet {alphabet}")));
    }
    let m = matrix_of(&Z4, word)?;
    let mut out: Vec<Tuple> = closing_pairs(&Z4, &m)?
        .into_iter()
        .filter(|(p, q, _)| alphabet.contains(p) && alphabet.contains(q))
        .map(|(p, q, _)| {
            let mut xs = Vec::with_capacity(word.len() + 2);
            xs.push(q);
            xs.extend_from_slice(word);
            xs.push(p);
            Tuple::new_unchecked(Z4, xs)
        })
        .collect();
    out.sort();
    Ok(out)
}
