//! Exact arithmetic in Q[Z × Z/n] and a checked free resolution of Q over it.
//!
//! The group is ⟨t, s | sⁿ = 1, st = ts⟩. Elements are finite sums of
//! rational multiples of `t^i s^j` with `j` reduced mod `n`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::homology::RationalMatrix;

pub const MAX_TORSION_ORDER: u32 = 12;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ResolutionError {
    #[error("cannot combine elements of Q[Z x Z/{0}] and Q[Z x Z/{1}]")]
    MixedOrder(u32, u32),
    #[error("torsion order must be between 1 and {MAX_TORSION_ORDER}, got {0}")]
    OrderOutOfRange(u32),
    #[error("map shapes do not compose: {0}")]
    Shape(String),
    #[error("no candidate differential passes all checks")]
    NoCandidate(ResolutionReport),
    #[error("{} candidate differentials pass all checks", .0.len())]
    Ambiguous(Vec<usize>),
}

/// An element of Q[Z × Z/n], keyed by the exponents `(i, j)` of `t^i s^j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupRingElement {
    n: u32,
    terms: BTreeMap<(i64, u32), BigRational>,
}

fn q(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

impl GroupRingElement {
    pub fn zero(n: u32) -> Self {
        assert!(n >= 1, "torsion order must be positive");
        GroupRingElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(n: u32, i: i64, j: i64, c: BigRational) -> Self {
        let mut e = Self::zero(n);
        e.add_term(i, j.rem_euclid(n as i64) as u32, c);
        e
    }

    pub fn one(n: u32) -> Self {
        Self::monomial(n, 0, 0, BigRational::one())
    }

    pub fn scalar(n: u32, c: BigRational) -> Self {
        Self::monomial(n, 0, 0, c)
    }

    pub fn t(n: u32) -> Self {
        Self::monomial(n, 1, 0, BigRational::one())
    }

    pub fn t_inv(n: u32) -> Self {
        Self::monomial(n, -1, 0, BigRational::one())
    }

    pub fn s(n: u32) -> Self {
        Self::monomial(n, 0, 1, BigRational::one())
    }

    /// `1 − t`.
    pub fn one_minus_t(n: u32) -> Self {
        let mut e = Self::one(n);
        e.add_term(1, 0, -BigRational::one());
        e
    }

    pub fn from_terms(n: u32, terms: impl IntoIterator<Item = ((i64, i64), BigRational)>) -> Self {
        let mut e = Self::zero(n);
        for ((i, j), c) in terms {
            e.add_term(i, j.rem_euclid(n as i64) as u32, c);
        }
        e
    }

    fn add_term(&mut self, i: i64, j: u32, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let key = (i, j);
        let sum = match self.terms.remove(&key) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    pub fn order(&self) -> u32 {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, u32), &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, i: i64, j: u32) -> BigRational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ResolutionError> {
        self.same_ring(other)?;
        let mut out = self.clone();
        for ((i, j), c) in &other.terms {
            out.add_term(*i, *j, c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ResolutionError> {
        self.same_ring(other)?;
        let mut out = Self::zero(self.n);
        for ((i1, j1), c1) in &self.terms {
            for ((i2, j2), c2) in &other.terms {
                out.add_term(i1 + i2, (j1 + j2) % self.n, c1 * c2);
            }
        }
        Ok(out)
    }

    fn same_ring(&self, other: &Self) -> Result<(), ResolutionError> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(ResolutionError::MixedOrder(self.n, other.n))
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero(self.n);
        for ((i, j), x) in &self.terms {
            out.add_term(*i, *j, x * c);
        }
        out
    }

    /// Sum of all coefficients: the ring map sending t and s to 1.
    pub fn augment(&self) -> BigRational {
        self.terms.values().fold(BigRational::zero(), |a, c| a + c)
    }
}

impl Add for &GroupRingElement {
    type Output = GroupRingElement;

    /// Panics on mixed torsion orders; use `checked_add` to handle them.
    fn add(self, rhs: Self) -> GroupRingElement {
        self.checked_add(rhs).unwrap()
    }
}

impl Sub for &GroupRingElement {
    type Output = GroupRingElement;

    fn sub(self, rhs: Self) -> GroupRingElement {
        self.checked_add(&-rhs).unwrap()
    }
}

impl Mul for &GroupRingElement {
    type Output = GroupRingElement;

    /// Panics on mixed torsion orders; use `checked_mul` to handle them.
    fn mul(self, rhs: Self) -> GroupRingElement {
        self.checked_mul(rhs).unwrap()
    }
}

impl Neg for &GroupRingElement {
    type Output = GroupRingElement;

    fn neg(self) -> GroupRingElement {
        self.scale(&-BigRational::one())
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, ((i, j), c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            let mono = match (i, j) {
                (0, 0) => String::new(),
                (0, j) => format!("s^{j}"),
                (i, 0) => format!("t^{i}"),
                (i, j) => format!("t^{i} s^{j}"),
            };
            match (c.is_one(), mono.is_empty()) {
                (true, false) => f.write_str(&mono)?,
                (_, true) => write!(f, "{c}")?,
                (false, false) => write!(f, "{c} {mono}")?,
            }
        }
        Ok(())
    }
}

/// The idempotent `(1/n)(1 + s + … + s^{n−1})`.
pub fn norm_idempotent(n: u32) -> GroupRingElement {
    let c = BigRational::new(BigInt::one(), BigInt::from(n));
    GroupRingElement::from_terms(n, (0..n as i64).map(|j| ((0, j), c.clone())))
}

/// Projection onto the summand where `s` acts trivially.
pub fn proj1(z: &GroupRingElement) -> GroupRingElement {
    &norm_idempotent(z.n) * z
}

/// The complementary projection `z − proj1(z)`.
pub fn proj0(z: &GroupRingElement) -> GroupRingElement {
    z - &proj1(z)
}

/// A map of free modules given by a matrix acting on column vectors;
/// `entries[i][j]` is the coefficient of source generator `j` in target
/// coordinate `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeModuleMap {
    n: u32,
    source: usize,
    target: usize,
    entries: Vec<Vec<GroupRingElement>>,
}

impl FreeModuleMap {
    pub fn new(n: u32, source: usize, entries: Vec<Vec<GroupRingElement>>) -> Result<Self, ResolutionError> {
        let target = entries.len();
        for row in &entries {
            if row.len() != source {
                return Err(ResolutionError::Shape(format!("row of length {} for source rank {source}", row.len())));
            }
            if let Some(e) = row.iter().find(|e| e.n != n) {
                return Err(ResolutionError::MixedOrder(n, e.n));
            }
        }
        Ok(FreeModuleMap {
            n,
            source,
            target,
            entries,
        })
    }

    pub fn identity(n: u32, rank: usize) -> Self {
        let entries = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| if i == j { GroupRingElement::one(n) } else { GroupRingElement::zero(n) })
                    .collect()
            })
            .collect();
        FreeModuleMap {
            n,
            source: rank,
            target: rank,
            entries,
        }
    }

    pub fn source_rank(&self) -> usize {
        self.source
    }

    pub fn target_rank(&self) -> usize {
        self.target
    }

    pub fn entry(&self, i: usize, j: usize) -> &GroupRingElement {
        &self.entries[i][j]
    }

    pub fn apply(&self, x: &[GroupRingElement]) -> Result<Vec<GroupRingElement>, ResolutionError> {
        if x.len() != self.source {
            return Err(ResolutionError::Shape(format!("vector of length {} for source rank {}", x.len(), self.source)));
        }
        self.entries
            .iter()
            .map(|row| {
                row.iter().zip(x).try_fold(GroupRingElement::zero(self.n), |acc, (a, v)| {
                    acc.checked_add(&a.checked_mul(v)?)
                })
            })
            .collect()
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &FreeModuleMap) -> Result<FreeModuleMap, ResolutionError> {
        if first.target != self.source {
            return Err(ResolutionError::Shape(format!(
                "cannot follow a map into rank {} by one from rank {}",
                first.target, self.source
            )));
        }
        if first.n != self.n {
            return Err(ResolutionError::MixedOrder(self.n, first.n));
        }
        let entries = (0..self.target)
            .map(|i| {
                (0..first.source)
                    .map(|j| {
                        (0..self.source).fold(GroupRingElement::zero(self.n), |acc, k| {
                            &acc + &(&self.entries[i][k] * &first.entries[k][j])
                        })
                    })
                    .collect()
            })
            .collect();
        Ok(FreeModuleMap {
            n: self.n,
            source: first.source,
            target: self.target,
            entries,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(GroupRingElement::is_zero)
    }

    /// The induced map on `Q ⊗ (−)`.
    pub fn augment(&self) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(self.target, self.source);
        for (i, row) in self.entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                m.set(i, j, e.augment());
            }
        }
        m
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Projection {
    P0,
    P1,
}

impl Projection {
    fn element(self, n: u32) -> GroupRingElement {
        match self {
            Projection::P1 => norm_idempotent(n),
            Projection::P0 => proj0(&GroupRingElement::one(n)),
        }
    }

    fn name(self) -> &'static str {
        match self {
            Projection::P0 => "proj0",
            Projection::P1 => "proj1",
        }
    }
}

/// One member of the candidate family:
/// `d1(x, y) = (1−t)x + a·y` and
/// `d2(z) = (b·z, sign·(1−t)·c·z + d·z)` with `(c, d)` complementary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Variant {
    pub d1_projection: Projection,
    pub d2_first: Projection,
    pub sign: i8,
    pub d2_twisted: Projection,
}

impl Variant {
    /// The pair as originally stated, which fails the checks:
    /// `d1(x,y) = (1−t)x + proj1 y`, `d2(z) = (proj0 z, −(1−t)proj1 z + proj0 z)`.
    pub const PRINTED: Variant = Variant {
        d1_projection: Projection::P1,
        d2_first: Projection::P0,
        sign: -1,
        d2_twisted: Projection::P1,
    };

    /// All 16 members in a fixed order.
    pub fn all() -> Vec<Variant> {
        let ps = [Projection::P1, Projection::P0];
        let mut out = Vec::with_capacity(16);
        for a in ps {
            for b in ps {
                for sign in [-1, 1] {
                    for c in ps {
                        out.push(Variant {
                            d1_projection: a,
                            d2_first: b,
                            sign,
                            d2_twisted: c,
                        });
                    }
                }
            }
        }
        out
    }

    fn untwisted(self) -> Projection {
        match self.d2_twisted {
            Projection::P0 => Projection::P1,
            Projection::P1 => Projection::P0,
        }
    }

    pub fn label(self) -> String {
        let sign = if self.sign < 0 { "-" } else { "" };
        format!(
            "d1(x,y) = (1-t)x + {} y; d2(z) = ({} z, {}(1-t){} z + {} z)",
            self.d1_projection.name(),
            self.d2_first.name(),
            sign,
            self.d2_twisted.name(),
            self.untwisted().name()
        )
    }

    pub fn maps(self, n: u32) -> (FreeModuleMap, FreeModuleMap) {
        let d1 = FreeModuleMap::new(n, 2, vec![vec![GroupRingElement::one_minus_t(n), self.d1_projection.element(n)]])
            .expect("well-formed");
        let twisted = (&GroupRingElement::one_minus_t(n) * &self.d2_twisted.element(n))
            .scale(&q(self.sign as i64));
        let second = &twisted + &self.untwisted().element(n);
        let d2 = FreeModuleMap::new(n, 1, vec![vec![self.d2_first.element(n)], vec![second]]).expect("well-formed");
        (d1, d2)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub variant: Variant,
    pub d1: FreeModuleMap,
    pub d2: FreeModuleMap,
}

/// The candidate family with identical pairs removed (keeping the first).
/// When `n = 1`, proj0 vanishes and several variants coincide.
pub fn candidate_differentials(n: u32) -> Vec<Candidate> {
    let mut out: Vec<Candidate> = Vec::new();
    for v in Variant::all() {
        let (d1, d2) = v.maps(n);
        if !out.iter().any(|c| c.d1 == d1 && c.d2 == d2) {
            out.push(Candidate { variant: v, d1, d2 });
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateCheck {
    pub variant: Variant,
    pub label: String,
    pub printed: bool,
    /// ε∘d1 = 0.
    pub augmentation_vanishes: bool,
    /// d1∘d2 = 0.
    pub composite_vanishes: bool,
    /// Rational Betti numbers of `Q ⊗ F` in degrees 0, 1, 2.
    pub tensor_homology: [usize; 3],
    pub homology_matches: bool,
    pub passes: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionReport {
    pub n: u32,
    pub candidates: Vec<CandidateCheck>,
    /// Index into `candidates` of the unique passing variant.
    pub selected: Option<usize>,
    pub printed_passes: bool,
    /// The selected d2 has the left inverse `(u, v) ↦ proj0 u + proj1 v`.
    pub left_inverse: bool,
}

impl ResolutionReport {
    pub fn selected(&self) -> Option<&CandidateCheck> {
        self.selected.map(|i| &self.candidates[i])
    }
}

/// Rational homology of the augmented complex `Q ⊗ F`.
fn tensor_homology(d1: &FreeModuleMap, d2: &FreeModuleMap) -> [usize; 3] {
    let r1 = d1.augment().rank();
    let r2 = d2.augment().rank();
    [1 - r1, 2 - r1 - r2, 1 - r2]
}

pub const EXPECTED_TENSOR_HOMOLOGY: [usize; 3] = [1, 1, 0];

pub fn check_candidate(c: &Candidate) -> CandidateCheck {
    let augmentation_vanishes = c.d1.augment().rank() == 0;
    let composite_vanishes = c.d1.after(&c.d2).map(|m| m.is_zero()).unwrap_or(false);
    let tensor_homology = tensor_homology(&c.d1, &c.d2);
    let homology_matches = tensor_homology == EXPECTED_TENSOR_HOMOLOGY;
    CandidateCheck {
        variant: c.variant,
        label: c.variant.label(),
        printed: c.variant == Variant::PRINTED,
        augmentation_vanishes,
        composite_vanishes,
        tensor_homology,
        homology_matches,
        passes: augmentation_vanishes && composite_vanishes && homology_matches,
    }
}

/// `(u, v) ↦ proj0 u + proj1 v`.
pub fn d2_left_inverse(n: u32) -> FreeModuleMap {
    FreeModuleMap::new(n, 2, vec![vec![Projection::P0.element(n), Projection::P1.element(n)]]).expect("well-formed")
}

/// Checks every candidate and selects the unique one that is a complex,
/// augments to zero and has the rational homology of a circle after
/// tensoring with Q.
pub fn verify_resolution(n: u32) -> Result<ResolutionReport, ResolutionError> {
    if !(1..=MAX_TORSION_ORDER).contains(&n) {
        return Err(ResolutionError::OrderOutOfRange(n));
    }
    let candidates = candidate_differentials(n);
    report_from_checks(n, &candidates, candidates.iter().map(check_candidate).collect())
}

/// Assembles the report from per-candidate checks, which may have been
/// computed in any order.
pub fn report_from_checks(
    n: u32,
    candidates: &[Candidate],
    checks: Vec<CandidateCheck>,
) -> Result<ResolutionReport, ResolutionError> {
    let passing: Vec<usize> = checks.iter().enumerate().filter(|(_, c)| c.passes).map(|(i, _)| i).collect();
    let printed_passes = checks.iter().any(|c| c.printed && c.passes);
    let mut report = ResolutionReport {
        n,
        candidates: checks,
        selected: None,
        printed_passes,
        left_inverse: false,
    };
    match passing.as_slice() {
        [] => Err(ResolutionError::NoCandidate(report)),
        [i] => {
            report.selected = Some(*i);
            let composite = d2_left_inverse(n).after(&candidates[*i].d2)?;
            report.left_inverse = composite == FreeModuleMap::identity(n, 1);
            Ok(report)
        }
        _ => Err(ResolutionError::Ambiguous(passing)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Dense oracle: coefficients of t^i s^j for i in lo..lo+len.
    #[derive(Clone, Debug, PartialEq)]
    struct Dense {
        n: usize,
        lo: i64,
        rows: Vec<Vec<BigRational>>,
    }

    impl Dense {
        fn from(e: &GroupRingElement) -> Dense {
            let n = e.order() as usize;
            let lo = e.terms().map(|((i, _), _)| *i).min().unwrap_or(0);
            let hi = e.terms().map(|((i, _), _)| *i).max().unwrap_or(0);
            let mut rows = vec![vec![BigRational::zero(); n]; (hi - lo + 1) as usize];
            for ((i, j), c) in e.terms() {
                rows[(i - lo) as usize][*j as usize] = c.clone();
            }
            Dense { n, lo, rows }
        }

        fn mul(&self, o: &Dense) -> Dense {
            let mut rows = vec![vec![BigRational::zero(); self.n]; self.rows.len() + o.rows.len() - 1];
            for (a, ra) in self.rows.iter().enumerate() {
                for (b, rb) in o.rows.iter().enumerate() {
                    for (j1, x) in ra.iter().enumerate() {
                        for (j2, y) in rb.iter().enumerate() {
                            rows[a + b][(j1 + j2) % self.n] += x * y;
                        }
                    }
                }
            }
            Dense {
                n: self.n,
                lo: self.lo + o.lo,
                rows,
            }
        }

        fn add(&self, o: &Dense) -> Dense {
            let lo = self.lo.min(o.lo);
            let hi = (self.lo + self.rows.len() as i64).max(o.lo + o.rows.len() as i64);
            let mut rows = vec![vec![BigRational::zero(); self.n]; (hi - lo) as usize];
            for d in [self, o] {
                for (a, r) in d.rows.iter().enumerate() {
                    for (j, x) in r.iter().enumerate() {
                        rows[(d.lo - lo) as usize + a][j] += x;
                    }
                }
            }
            Dense { n: self.n, lo, rows }
        }

        fn is_zero(&self) -> bool {
            self.rows.iter().flatten().all(Zero::is_zero)
        }

        fn sum(&self) -> BigRational {
            self.rows.iter().flatten().fold(BigRational::zero(), |a, c| a + c)
        }
    }

    fn element(n: u32) -> impl Strategy<Value = GroupRingElement> {
        prop::collection::vec(((-3i64..=3, 0i64..n as i64), -4i64..=4, 1i64..=3), 0..5).prop_map(move |ts| {
            GroupRingElement::from_terms(n, ts.into_iter().map(|(k, a, b)| (k, BigRational::new(a.into(), b.into()))))
        })
    }

    fn ring_and_triple() -> impl Strategy<Value = (GroupRingElement, GroupRingElement, GroupRingElement)> {
        prop_oneof![Just(2u32), Just(3u32), Just(5u32)]
            .prop_flat_map(|n| (element(n), element(n), element(n)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn ring_axioms((a, b, c) in ring_and_triple()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!((&a * &b).augment(), a.augment() * b.augment());
        }

        #[test]
        fn multiplication_matches_dense_oracle((a, b, c) in ring_and_triple()) {
            let prod = &(&a * &b) + &c;
            let oracle = Dense::from(&a).mul(&Dense::from(&b)).add(&Dense::from(&c));
            prop_assert_eq!(Dense::from(&prod).sum(), oracle.sum());
            prop_assert!(Dense::from(&prod).add(&Dense::from(&-&prod)).is_zero());
            let diff = oracle.add(&Dense::from(&-&prod));
            prop_assert!(diff.is_zero());
        }

        #[test]
        fn projections_split((_, b, _) in ring_and_triple()) {
            let n = b.order();
            prop_assert!(proj0(&proj1(&b)).is_zero());
            prop_assert_eq!(proj1(&(&GroupRingElement::s(n) * &b)), proj1(&b));
            prop_assert!((&GroupRingElement::one_minus_t(n) * &b).augment().is_zero());
        }
    }

    #[test]
    fn basic_identities() {
        for n in 1..=MAX_TORSION_ORDER {
            let one = GroupRingElement::one(n);
            assert_eq!(&GroupRingElement::t(n) * &GroupRingElement::t_inv(n), one);
            let mut s_pow = one.clone();
            for _ in 0..n {
                s_pow = &s_pow * &GroupRingElement::s(n);
            }
            assert_eq!(s_pow, one);
            let p1 = norm_idempotent(n);
            let p0 = proj0(&one);
            assert_eq!(&p1 * &p1, p1);
            assert_eq!(&p0 * &p0, p0);
            assert!((&p0 * &p1).is_zero());
            assert_eq!(&p0 + &p1, one);
        }
        let half = BigRational::new(1.into(), 2.into());
        let expected = GroupRingElement::from_terms(2, [((0, 0), half.clone()), ((0, 1), half)]);
        assert_eq!(proj1(&GroupRingElement::one(2)), expected);
    }

    #[test]
    fn mixed_orders_rejected() {
        let a = GroupRingElement::one(2);
        let b = GroupRingElement::one(3);
        assert_eq!(a.checked_add(&b), Err(ResolutionError::MixedOrder(2, 3)));
        assert_eq!(a.checked_mul(&b), Err(ResolutionError::MixedOrder(2, 3)));
    }

    #[test]
    fn candidate_family() {
        let all = candidate_differentials(4);
        assert_eq!(all.len(), 16);
        assert!(all.iter().any(|c| c.variant == Variant::PRINTED));
        assert!(all.iter().any(|c| c.variant.d1_projection == Projection::P0));
        assert!(candidate_differentials(1).len() < 16);
    }

    #[test]
    fn printed_pair_fails_augmentation() {
        let c = candidate_differentials(2).into_iter().find(|c| c.variant == Variant::PRINTED).unwrap();
        let check = check_candidate(&c);
        assert!(!check.augmentation_vanishes);
        assert!(!check.passes);
    }

    /// Independent check of the identities with the dense oracle.
    fn oracle_passes(c: &Candidate) -> bool {
        let e = |m: &FreeModuleMap, i, j| Dense::from(m.entry(i, j));
        let aug = e(&c.d1, 0, 0).sum().is_zero() && e(&c.d1, 0, 1).sum().is_zero();
        let comp = e(&c.d1, 0, 0).mul(&e(&c.d2, 0, 0)).add(&e(&c.d1, 0, 1).mul(&e(&c.d2, 1, 0))).is_zero();
        let eps2 = [e(&c.d2, 0, 0).sum(), e(&c.d2, 1, 0).sum()];
        let homology = eps2.iter().any(|x| !x.is_zero());
        aug && comp && homology
    }

    #[test]
    fn unique_selection_matches_oracle() {
        for n in 1..=MAX_TORSION_ORDER {
            let report = verify_resolution(n).unwrap();
            let candidates = candidate_differentials(n);
            let oracle: Vec<bool> = candidates.iter().map(oracle_passes).collect();
            let ours: Vec<bool> = report.candidates.iter().map(|c| c.passes).collect();
            assert_eq!(ours, oracle, "n = {n}");
            let sel = report.selected().unwrap();
            assert_eq!(sel.tensor_homology, [1, 1, 0]);
            assert!(!report.printed_passes);
            assert!(report.left_inverse);
            assert_eq!(
                sel.variant,
                Variant {
                    d1_projection: Projection::P0,
                    d2_first: Projection::P0,
                    sign: -1,
                    d2_twisted: Projection::P0,
                }
            );
        }
    }

    #[test]
    fn degenerate_case_is_the_circle_resolution() {
        let report = verify_resolution(1).unwrap();
        let c = &candidate_differentials(1)[report.selected.unwrap()];
        assert_eq!(c.d1.entry(0, 0), &GroupRingElement::one_minus_t(1));
        assert!(c.d1.entry(0, 1).is_zero());
    }

    #[test]
    fn order_bounds() {
        assert_eq!(verify_resolution(0), Err(ResolutionError::OrderOutOfRange(0)));
        assert_eq!(verify_resolution(13), Err(ResolutionError::OrderOutOfRange(13)));
    }

    #[test]
    fn display() {
        let e = &GroupRingElement::one_minus_t(3) * &GroupRingElement::s(3);
        assert_eq!(alloc::string::ToString::to_string(&e), "s^1 + -1 t^1 s^1");
    }
}
