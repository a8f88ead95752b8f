//! Exact computational topology for rational finiteness questions.
//!
//! Everything in this crate is integer or rational arithmetic over
//! arbitrary-precision numbers; there is no floating point anywhere.
//! The crate is `no_std` and only needs an allocator.
//!
//! Layout:
//!
//! - [`simplicial`]: finite abstract simplicial complexes and their
//!   combinatorics (flag complexes, subdivision, links, joins, components).
//! - [`homology`]: boundary matrices, Smith normal form, integral and
//!   rational homology, induced maps and Lefschetz numbers.
//! - [`action`]: finite permutation groups acting simplicially, subgroup
//!   enumeration, regularization and fixed subcomplexes.
//! - [`orbit`]: the orbit category, balanced products of orbit diagrams,
//!   component-indexed Euler characteristic vectors and the FH(Q) verdict.
//! - [`groups`]: a catalogue of small groups as permutation groups.
//! - [`constructions`]: mirrors, the finite basic construction, Salvetti
//!   homology, the Bestvina–Brady report and equivariant joins.
//! - [`resolution`]: exact arithmetic in Q[Z × Z/n] and a checked free
//!   resolution of the trivial module.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod action;
pub mod constructions;
pub mod groups;
pub mod homology;
pub mod orbit;
pub mod resolution;
pub mod simplicial;

use core::fmt;
use core::str::FromStr;

/// Coefficient ring for homology questions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ring {
    Z,
    Q,
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Z => f.write_str("Z"),
            Ring::Q => f.write_str("Q"),
        }
    }
}

impl FromStr for Ring {
    type Err = UnknownRing;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "Z" | "z" => Ok(Ring::Z),
            "Q" | "q" => Ok(Ring::Q),
            _ => Err(UnknownRing),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("ring must be Z or Q")]
pub struct UnknownRing;
