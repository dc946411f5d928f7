//! λ-quiddities: tuples `(a_1, ..., a_n)` over a commutative ring with
//! `M(a_n) ... M(a_1) = ±Id`, where `M(a) = (a, -1; 1, 0)`.
//!
//! The crate covers rings and their parsers, verification and the dihedral
//! action, reducibility, exhaustive classification, polygon decompositions
//! and ring morphisms.

pub mod enumeration;
pub mod error;
pub mod geometry;
pub mod morphism;
pub mod quiddity;
pub mod reduction;
pub mod ring;

pub use error::{Error, Result};
pub use quiddity::{DihedralOp, Mat2, Sign, Tuple, Verdict};
pub use ring::{Element, FiniteRing, RingOps, RingSpec};
