//! Simplicial self-maps, their action on rational homology, and Lefschetz
//! numbers.
//!
//! Rational homology bases come from a column reduction of the boundary
//! matrices over Q in the canonical simplex order (dimension first, then
//! lexicographic). After reduction every cycle has a unique "lowest" simplex;
//! lows of nonzero reduced columns span the boundaries, and the remaining
//! positive simplices carry the homology classes. Writing a cycle in the
//! homology basis is then a triangular solve against those lows.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::matrix::RationalMatrix;
use crate::simplicial::{Simplex, SimplicialComplex, VertexId};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum MapError {
    #[error("vertex map has {got} entries, complex has {expected} vertices")]
    WrongLength { expected: usize, got: usize },
    #[error("vertex image {0} is out of range")]
    OutOfRange(VertexId),
    #[error("no vertex labelled `{0}`")]
    UnknownVertex(String),
    #[error("image of simplex {0} is not a simplex")]
    NotSimplicial(String),
}

/// Vertex map of a complex to itself that sends simplices to simplices
/// (possibly of lower dimension).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    images: Vec<VertexId>,
}

impl SimplicialMap {
    pub fn new(c: &SimplicialComplex, images: Vec<VertexId>) -> Result<Self, MapError> {
        if images.len() != c.vertex_count() {
            return Err(MapError::WrongLength {
                expected: c.vertex_count(),
                got: images.len(),
            });
        }
        if let Some(v) = images.iter().find(|v| **v as usize >= c.vertex_count()) {
            return Err(MapError::OutOfRange(*v));
        }
        let map = SimplicialMap { images };
        for s in c.iter() {
            let image = map.image_set(s);
            if !c.contains(&image) {
                return Err(MapError::NotSimplicial(c.simplex_name(s)));
            }
        }
        Ok(map)
    }

    /// Unlisted vertices stay fixed.
    pub fn from_labels<S: AsRef<str>>(c: &SimplicialComplex, pairs: &[(S, S)]) -> Result<Self, MapError> {
        let mut images: Vec<VertexId> = (0..c.vertex_count() as VertexId).collect();
        let id = |l: &str| c.vertex_id(l).ok_or_else(|| MapError::UnknownVertex(l.into()));
        for (a, b) in pairs {
            images[id(a.as_ref())? as usize] = id(b.as_ref())?;
        }
        Self::new(c, images)
    }

    pub fn identity(c: &SimplicialComplex) -> Self {
        SimplicialMap {
            images: (0..c.vertex_count() as VertexId).collect(),
        }
    }

    pub fn images(&self) -> &[VertexId] {
        &self.images
    }

    fn image_set(&self, s: &Simplex) -> Simplex {
        Simplex::from_image(s.vertices().iter().map(|v| self.images[*v as usize]).collect())
            .expect("image of a nonempty simplex is nonempty")
    }

    /// Oriented image of `s`: `None` when the map collapses it, otherwise the
    /// image simplex and the sign of the vertex reordering.
    pub fn oriented_image(&self, s: &Simplex) -> Option<(Simplex, i32)> {
        let raw: Vec<VertexId> = s.vertices().iter().map(|v| self.images[*v as usize]).collect();
        let mut inversions = 0usize;
        for i in 0..raw.len() {
            for j in i + 1..raw.len() {
                if raw[i] == raw[j] {
                    return None;
                }
                if raw[i] > raw[j] {
                    inversions += 1;
                }
            }
        }
        let sign = if inversions.is_multiple_of(2) { 1 } else { -1 };
        Some((Simplex::new(raw).unwrap(), sign))
    }
}

type SparseQ = Vec<(usize, BigRational)>;

fn axpy_q(x: &SparseQ, f: &BigRational, y: &SparseQ) -> SparseQ {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut a, mut b) = (0, 0);
    while a < x.len() || b < y.len() {
        if b >= y.len() || (a < x.len() && x[a].0 < y[b].0) {
            out.push(x[a].clone());
            a += 1;
        } else if a >= x.len() || y[b].0 < x[a].0 {
            out.push((y[b].0, -(f * &y[b].1)));
            b += 1;
        } else {
            let v = &x[a].1 - f * &y[b].1;
            if !v.is_zero() {
                out.push((x[a].0, v));
            }
            a += 1;
            b += 1;
        }
    }
    out
}

/// Rational homology bases of a complex, reusable across many maps.
#[derive(Clone, Debug)]
pub struct HomologyBasis {
    offsets: Vec<usize>,
    index: Vec<BTreeMap<Simplex, usize>>,
    reduced: Vec<SparseQ>,
    pivot_of: BTreeMap<usize, usize>,
    cycles: BTreeMap<usize, SparseQ>,
    essential: Vec<Vec<usize>>,
}

impl HomologyBasis {
    pub fn new(c: &SimplicialComplex) -> Self {
        let dims = c.dimension().map_or(0, |d| d + 1);
        let mut offsets = Vec::with_capacity(dims + 1);
        let mut index = Vec::with_capacity(dims);
        let mut total = 0;
        for k in 0..dims {
            offsets.push(total);
            let map: BTreeMap<Simplex, usize> = c.simplices(k).cloned().enumerate().map(|(i, s)| (s, total + i)).collect();
            total += map.len();
            index.push(map);
        }
        offsets.push(total);

        let mut reduced: Vec<SparseQ> = vec![Vec::new(); total];
        let mut transforms: Vec<SparseQ> = vec![Vec::new(); total];
        let mut pivot_of: BTreeMap<usize, usize> = BTreeMap::new();
        for k in 0..dims {
            for (s, &j) in &index[k] {
                let mut r: SparseQ = if k == 0 {
                    Vec::new()
                } else {
                    let mut col: SparseQ = s
                        .boundary_faces()
                        .enumerate()
                        .map(|(i, f)| {
                            let sign = if i % 2 == 0 { 1 } else { -1 };
                            (index[k - 1][&f], BigRational::from_integer(BigInt::from(sign)))
                        })
                        .collect();
                    col.sort_by_key(|(i, _)| *i);
                    col
                };
                let mut v: SparseQ = vec![(j, BigRational::one())];
                while let Some((low, coeff)) = r.last().cloned() {
                    let Some(&i) = pivot_of.get(&low) else { break };
                    let f = coeff / &reduced[i].last().unwrap().1;
                    r = axpy_q(&r, &f, &reduced[i]);
                    v = axpy_q(&v, &f, &transforms[i]);
                }
                if let Some((low, _)) = r.last() {
                    pivot_of.insert(*low, j);
                }
                reduced[j] = r;
                transforms[j] = v;
            }
        }

        let mut essential = vec![Vec::new(); dims];
        let mut cycles = BTreeMap::new();
        for k in 0..dims {
            for j in offsets[k]..offsets[k + 1] {
                if reduced[j].is_empty() && !pivot_of.contains_key(&j) {
                    essential[k].push(j);
                    cycles.insert(j, core::mem::take(&mut transforms[j]));
                }
            }
        }
        HomologyBasis {
            offsets,
            index,
            reduced,
            pivot_of,
            cycles,
            essential,
        }
    }

    /// Rational Betti numbers.
    pub fn betti_numbers(&self) -> Vec<usize> {
        self.essential.iter().map(Vec::len).collect()
    }

    fn degree_of(&self, global: usize) -> usize {
        self.offsets.partition_point(|o| *o <= global) - 1
    }

    /// Coordinates of the class of a k-cycle in the chosen basis of H_k.
    ///
    /// Panics if `chain` is not a cycle.
    fn coordinates(&self, k: usize, mut chain: SparseQ) -> Vec<BigRational> {
        let position: BTreeMap<usize, usize> =
            self.essential[k].iter().enumerate().map(|(i, j)| (*j, i)).collect();
        let mut coords = vec![BigRational::zero(); self.essential[k].len()];
        while let Some((low, coeff)) = chain.last().cloned() {
            if let Some(&i) = self.pivot_of.get(&low) {
                let f = coeff / &self.reduced[i].last().unwrap().1;
                chain = axpy_q(&chain, &f, &self.reduced[i]);
            } else if let Some(&p) = position.get(&low) {
                chain = axpy_q(&chain, &coeff, &self.cycles[&low]);
                coords[p] = coeff;
            } else {
                panic!("chain in degree {k} is not a cycle (stuck at {})", self.degree_of(low));
            }
        }
        coords
    }

    fn push_forward(&self, k: usize, f: &SimplicialMap, chain: &SparseQ) -> SparseQ {
        let simplices: Vec<&Simplex> = self.index[k].keys().collect();
        let mut acc: BTreeMap<usize, BigRational> = BTreeMap::new();
        for (j, c) in chain {
            let s = simplices[j - self.offsets[k]];
            if let Some((t, sign)) = f.oriented_image(s) {
                let slot = acc.entry(self.index[k][&t]).or_insert_with(BigRational::zero);
                *slot += c * BigRational::from_integer(BigInt::from(sign));
            }
        }
        acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
    }

    /// Matrix of `f_*` on H_k(c; Q) for every degree k.
    pub fn induced_map(&self, f: &SimplicialMap) -> Vec<RationalMatrix> {
        (0..self.essential.len())
            .map(|k| {
                let b = self.essential[k].len();
                let mut m = RationalMatrix::zeros(b, b);
                for (col, j) in self.essential[k].iter().enumerate() {
                    let image = self.push_forward(k, f, &self.cycles[j]);
                    for (row, x) in self.coordinates(k, image).into_iter().enumerate() {
                        m.set(row, col, x);
                    }
                }
                m
            })
            .collect()
    }

    pub fn lefschetz_number(&self, f: &SimplicialMap) -> i64 {
        alternating_trace(&self.induced_map(f))
    }
}

fn alternating_trace(maps: &[RationalMatrix]) -> i64 {
    let total = maps
        .iter()
        .enumerate()
        .map(|(k, m)| if k % 2 == 0 { m.trace() } else { -m.trace() })
        .fold(BigRational::zero(), |a, b| a + b);
    assert!(total.is_integer(), "Lefschetz number {total} is not an integer");
    total.to_integer().to_i64().expect("Lefschetz number fits in i64")
}

/// Per-degree matrices of `f_*` on rational homology.
pub fn induced_homology_map(c: &SimplicialComplex, f: &SimplicialMap) -> Vec<RationalMatrix> {
    HomologyBasis::new(c).induced_map(f)
}

/// Σ_k (−1)^k trace(f_* on H_k(c; Q)).
pub fn lefschetz_number(c: &SimplicialComplex, f: &SimplicialMap) -> i64 {
    HomologyBasis::new(c).lefschetz_number(f)
}

/// Σ_k (−1)^k trace(f_# on C_k(c)), which equals the Lefschetz number by the
/// Hopf trace formula.
pub fn chain_level_lefschetz(c: &SimplicialComplex, f: &SimplicialMap) -> i64 {
    let mut total = 0i64;
    for s in c.iter() {
        if let Some((t, sign)) = f.oriented_image(s) {
            if &t == s {
                total += if s.dim() % 2 == 0 { sign as i64 } else { -(sign as i64) };
            }
        }
    }
    total
}
