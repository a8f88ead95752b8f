//! Simplicial chain complexes and their homology over Z and Q.

mod lefschetz;
mod matrix;
mod snf;

pub use lefschetz::{
    chain_level_lefschetz, induced_homology_map, lefschetz_number, HomologyBasis, MapError,
    SimplicialMap,
};
pub use matrix::{IntegerMatrix, RationalMatrix};
pub use snf::{invariant_factors, smith_normal_form, SnfResult};

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed};

use crate::simplicial::{SimplicialComplex, Simplex};
use crate::Ring;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum HomologyError {
    #[error("acyclicity is undefined for the empty complex")]
    EmptyComplex,
}

/// Integral simplicial chain complex. `boundary(k)` maps k-chains to
/// (k−1)-chains in the canonical simplex bases.
#[derive(Clone, Debug)]
pub struct ChainComplexZ {
    bases: Vec<Vec<Simplex>>,
    boundaries: Vec<IntegerMatrix>,
}

impl ChainComplexZ {
    pub fn basis(&self, k: usize) -> &[Simplex] {
        self.bases.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn rank(&self, k: usize) -> usize {
        self.basis(k).len()
    }

    /// Top degree, or `None` if there are no chains at all.
    pub fn dimension(&self) -> Option<usize> {
        self.bases.len().checked_sub(1)
    }

    /// ∂_k for k ≥ 1.
    pub fn boundary(&self, k: usize) -> Option<&IntegerMatrix> {
        k.checked_sub(1).and_then(|i| self.boundaries.get(i))
    }

    pub fn boundaries(&self) -> &[IntegerMatrix] {
        &self.boundaries
    }
}

/// ∂σ = Σ_i (−1)^i (σ without its i-th vertex).
pub fn chain_complex(c: &SimplicialComplex) -> ChainComplexZ {
    let dim = c.dimension();
    let bases: Vec<Vec<Simplex>> = match dim {
        None => Vec::new(),
        Some(d) => (0..=d).map(|k| c.simplices(k).cloned().collect()).collect(),
    };
    let mut boundaries = Vec::new();
    for k in 1..bases.len() {
        let index: BTreeMap<&Simplex, usize> =
            bases[k - 1].iter().enumerate().map(|(i, s)| (s, i)).collect();
        let columns = bases[k]
            .iter()
            .map(|s| {
                s.boundary_faces()
                    .enumerate()
                    .map(|(i, f)| {
                        let sign = if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                        (index[&f], sign)
                    })
                    .collect()
            })
            .collect();
        boundaries.push(IntegerMatrix::from_columns(bases[k - 1].len(), columns));
    }
    ChainComplexZ { bases, boundaries }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeHomology {
    pub degree: usize,
    pub betti: usize,
    /// Invariant factors greater than one, in divisibility order.
    pub torsion: Vec<BigUint>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyProfile {
    pub reduced: bool,
    pub degrees: Vec<DegreeHomology>,
}

impl HomologyProfile {
    pub fn betti_numbers(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.betti).collect()
    }

    pub fn betti(&self, k: usize) -> usize {
        self.degrees.get(k).map_or(0, |d| d.betti)
    }

    pub fn torsion(&self, k: usize) -> &[BigUint] {
        self.degrees.get(k).map_or(&[], |d| d.torsion.as_slice())
    }

    pub fn has_torsion(&self) -> bool {
        self.degrees.iter().any(|d| !d.torsion.is_empty())
    }

    /// All Betti numbers vanish (and, over Z, all torsion).
    pub fn vanishes(&self, ring: Ring) -> bool {
        self.degrees
            .iter()
            .all(|d| d.betti == 0 && (ring == Ring::Q || d.torsion.is_empty()))
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees
            .iter()
            .map(|d| if d.degree % 2 == 0 { d.betti as i64 } else { -(d.betti as i64) })
            .sum()
    }
}

/// Homology of an abstract chain complex given by its ranks and boundary
/// matrices (`boundaries[k-1]` is ∂_k : C_k → C_{k−1}).
///
/// With `reduced`, C_0 is augmented to Z (only meaningful when C_0 ≠ 0).
pub fn homology_of(ranks: &[usize], boundaries: &[IntegerMatrix], reduced: bool) -> HomologyProfile {
    let factors: Vec<Vec<BigInt>> = boundaries.iter().map(invariant_factors).collect();
    let rank_of = |k: usize| -> usize {
        // rank of ∂_k
        match k {
            0 => usize::from(reduced && ranks.first().is_some_and(|n| *n > 0)),
            _ => factors.get(k - 1).map_or(0, Vec::len),
        }
    };
    let degrees = (0..ranks.len())
        .map(|k| {
            let betti = ranks[k] - rank_of(k) - rank_of(k + 1);
            let torsion = factors
                .get(k)
                .map(|f| {
                    f.iter()
                        .filter(|x| !x.abs().is_one())
                        .map(|x| x.to_biguint().expect("invariant factors are positive"))
                        .collect()
                })
                .unwrap_or_default();
            DegreeHomology {
                degree: k,
                betti,
                torsion,
            }
        })
        .collect();
    HomologyProfile { reduced, degrees }
}

/// Betti numbers and torsion in every degree 0..=dim.
pub fn homology(c: &SimplicialComplex, reduced: bool) -> HomologyProfile {
    let cc = chain_complex(c);
    let ranks: Vec<usize> = (0..cc.bases.len()).map(|k| cc.rank(k)).collect();
    homology_of(&ranks, &cc.boundaries, reduced)
}

/// Reduced homology vanishes over `ring`.
pub fn is_acyclic(c: &SimplicialComplex, ring: Ring) -> Result<bool, HomologyError> {
    if c.is_empty() {
        return Err(HomologyError::EmptyComplex);
    }
    Ok(homology(c, true).vanishes(ring))
}
