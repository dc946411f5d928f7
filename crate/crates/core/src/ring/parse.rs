//! Text forms: the ring descriptor grammar and element/tuple literals.
//!
//! Ring descriptors: `Z/N`, `F4`, `P(k)`, `Z[B]`, products with `x`, and
//! parentheses for grouping, e.g. `(Z/2xZ/3)xZ[50]`.
//!
//! Element literals depend on the ring: integers for `Z/N` and `Z[B]`,
//! `0|1|X|X+1` for `F4`, `{a,c}` for power sets and parenthesized component
//! lists for products. A tuple literal is a comma-separated element list.

use super::{BitSet, Element, RingSpec};
use crate::error::{Error, Result};

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{token}`")))
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::syntax(self.pos, message)
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.src.len()
    }

    fn digits(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let len = self
            .rest()
            .bytes()
            .take_while(u8::is_ascii_digit)
            .count();
        if len == 0 {
            return Err(self.error("expected digits"));
        }
        let s = &self.rest()[..len];
        self.pos += len;
        Ok(s)
    }

    fn unsigned(&mut self) -> Result<u64> {
        let start = self.pos;
        let d = self.digits()?;
        d.parse::<u64>()
            .map_err(|_| Error::syntax(start, "number out of range"))
    }

    fn signed(&mut self) -> Result<i128> {
        let negative = if self.eat("-") {
            true
        } else {
            self.eat("+");
            false
        };
        let start = self.pos;
        let d = self.digits()?;
        let v = d
            .parse::<i128>()
            .map_err(|_| Error::syntax(start, "number out of range"))?;
        Ok(if negative { -v } else { v })
    }
}

/// Parses a ring descriptor into a normalized [`RingSpec`].
pub fn parse_ring_spec(text: &str) -> Result<RingSpec> {
    let mut c = Cursor::new(text);
    let spec = product(&mut c, 0)?;
    if !c.at_end() {
        return Err(c.error("trailing input"));
    }
    Ok(spec)
}

const MAX_NESTING: usize = 64;

fn product(c: &mut Cursor<'_>, depth: usize) -> Result<RingSpec> {
    let mut factors = vec![factor(c, depth)?];
    while c.eat("x") {
        factors.push(factor(c, depth)?);
    }
    if factors.len() == 1 {
        Ok(factors.pop().expect("one factor"))
    } else {
        RingSpec::product(factors)
    }
}

fn factor(c: &mut Cursor<'_>, depth: usize) -> Result<RingSpec> {
    if depth > MAX_NESTING {
        return Err(c.error("nesting too deep"));
    }
    if c.eat("(") {
        let inner = product(c, depth + 1)?;
        c.expect(")")?;
        return Ok(inner);
    }
    if c.eat("F4") {
        return Ok(RingSpec::F4);
    }
    if c.eat("P(") {
        let start = c.pos;
        let k = c.unsigned()?;
        c.expect(")")?;
        let k = u32::try_from(k).map_err(|_| Error::syntax(start, "ground size out of range"))?;
        let spec = RingSpec::PowerSet(k);
        spec.validate()?;
        return Ok(spec);
    }
    if c.eat("Z/") {
        let n = c.unsigned()?;
        if n < 2 {
            return Err(Error::InvalidModulus(n));
        }
        return Ok(RingSpec::ModN(n));
    }
    if c.eat("Z[") {
        let start = c.pos;
        let b = c.unsigned()?;
        c.expect("]")?;
        let b = i64::try_from(b).map_err(|_| Error::syntax(start, "bound out of range"))?;
        if b < 1 {
            return Err(Error::InvalidBound(b));
        }
        return Ok(RingSpec::BoundedInt(b));
    }
    Err(c.error("expected a ring (`Z/N`, `Z[B]`, `F4`, `P(k)` or `(...)`)"))
}

/// Parses a single element literal of `ring`.
pub fn parse_element(ring: &RingSpec, text: &str) -> Result<Element> {
    let mut c = Cursor::new(text);
    let e = element(ring, &mut c)?;
    if !c.at_end() {
        return Err(c.error("trailing input"));
    }
    Ok(e)
}

/// Parses a comma-separated tuple literal of `ring`.
pub fn parse_entries(ring: &RingSpec, text: &str) -> Result<Vec<Element>> {
    let mut c = Cursor::new(text);
    if c.at_end() {
        return Err(Error::EmptyTuple);
    }
    let mut out = vec![element(ring, &mut c)?];
    while c.eat(",") {
        out.push(element(ring, &mut c)?);
    }
    if !c.at_end() {
        return Err(c.error("expected `,` or end of tuple"));
    }
    Ok(out)
}

fn element(ring: &RingSpec, c: &mut Cursor<'_>) -> Result<Element> {
    match ring {
        RingSpec::ModN(n) => {
            let v = c.signed()?;
            Ok(Element::Residue(v.rem_euclid(*n as i128) as u64))
        }
        RingSpec::BoundedInt(b) => {
            let v = c.signed()?;
            if v.unsigned_abs() > b.unsigned_abs() as u128 {
                return Err(Error::Overflow { value: v, bound: *b });
            }
            Ok(Element::Int(v as i64))
        }
        RingSpec::F4 => {
            if c.eat("0") {
                Ok(Element::F4(0))
            } else if c.eat("1") {
                if c.eat("+") {
                    if c.eat("X") || c.eat("x") {
                        return Ok(Element::F4(3));
                    }
                    return Err(c.error("expected `X`"));
                }
                Ok(Element::F4(1))
            } else if c.eat("X") || c.eat("x") {
                if c.eat("+") {
                    c.expect("1")?;
                    return Ok(Element::F4(3));
                }
                Ok(Element::F4(2))
            } else {
                Err(c.error("expected an F4 element (`0`, `1`, `X`, `X+1`)"))
            }
        }
        RingSpec::PowerSet(k) => {
            c.expect("{")?;
            let mut mask = 0u64;
            if !c.eat("}") {
                loop {
                    let ch = c.peek().ok_or_else(|| c.error("unterminated set"))?;
                    let idx = (ch as u32).wrapping_sub('a' as u32);
                    if !ch.is_ascii_lowercase() || idx >= *k {
                        return Err(c.error(format!("`{ch}` is not a ground element")));
                    }
                    c.pos += 1;
                    mask |= 1 << idx;
                    if c.eat("}") {
                        break;
                    }
                    c.expect(",")?;
                }
            }
            Ok(Element::Set(BitSet(mask)))
        }
        RingSpec::Product(cs) => {
            c.expect("(")?;
            let mut parts = Vec::with_capacity(cs.len());
            for (i, comp) in cs.iter().enumerate() {
                if i > 0 {
                    c.expect(",")?;
                }
                parts.push(element(comp, c)?);
            }
            c.expect(")")?;
            Ok(Element::Tuple(parts))
        }
    }
}

/// Formats an element in the literal syntax accepted by [`parse_element`].
pub fn format_element(ring: &RingSpec, e: &Element) -> String {
    let mut s = String::new();
    write_element(ring, e, &mut s);
    s
}

fn write_element(ring: &RingSpec, e: &Element, out: &mut String) {
    use std::fmt::Write;
    match (ring, e) {
        (_, Element::Residue(r)) => {
            let _ = write!(out, "{r}");
        }
        (_, Element::Int(v)) => {
            let _ = write!(out, "{v}");
        }
        (_, Element::F4(v)) => out.push_str(match v {
            0 => "0",
            1 => "1",
            2 => "X",
            _ => "X+1",
        }),
        (_, Element::Set(s)) => {
            out.push('{');
            let mut first = true;
            for i in 0..26u32 {
                if s.0 >> i & 1 == 1 {
                    if !first {
                        out.push(',');
                    }
                    first = false;
                    out.push(char::from(b'a' + i as u8));
                }
            }
            out.push('}');
        }
        (RingSpec::Product(cs), Element::Tuple(xs)) => {
            out.push('(');
            for (i, (c, x)) in cs.iter().zip(xs).enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_element(c, x, out);
            }
            out.push(')');
        }
        (_, Element::Tuple(xs)) => {
            // ring/payload disagreement; print structurally
            out.push('(');
            for (i, x) in xs.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_element(ring, x, out);
            }
            out.push(')');
        }
    }
}

/// Formats a tuple as a comma-separated literal.
pub fn format_entries(ring: &RingSpec, entries: &[Element]) -> String {
    entries
        .iter()
        .map(|e| format_element(ring, e))
        .collect::<Vec<_>>()
        .join(",")
}
