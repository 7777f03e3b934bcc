//! Rank/degree invariants of bundles on an elliptic curve and the action of the
//! Fourier-Mukai transform on them.
//!
//! A semistable bundle of type `(r, d)` has `ch = (r, d)`. If it is IT_i, its
//! transform has `ch = ((-1)^i d, (-1)^(i+1) r)`. The index bundle itself has
//! `ch = (d, -r)`; the sign `(-1)^i` is what keeps the rank positive.

use std::fmt;

use num_integer::Integer;
use thiserror::Error;

use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantsError {
    #[error("total rank is zero")]
    ZeroRank,
    #[error("class is not IT: a summand has degree zero or the degree signs are mixed")]
    NotIT,
    #[error("degree zero is excluded")]
    DegreeZero,
    #[error("summand ({rank},{degree}) is not the type of a stable bundle (gcd must be 1, rank positive)")]
    NotStable { rank: i64, degree: i64 },
    #[error("multiplicity must be positive")]
    ZeroMultiplicity,
    #[error("class flagged semistable has summands of different slopes")]
    SlopeMismatch,
    #[error("point coordinates must lie in [0,1) x [0,1)")]
    PointOutsideDomain,
}

/// Topological invariants `(rank, degree)` of a bundle, or of a virtual one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ChernPair {
    pub rank: i64,
    pub degree: i64,
}

impl ChernPair {
    pub const fn new(rank: i64, degree: i64) -> Self {
        ChernPair { rank, degree }
    }

    /// `gcd(rank, |degree|)`.
    pub fn h(&self) -> i64 {
        self.rank.gcd(&self.degree)
    }

    /// Slope `degree / rank`. Panics on rank zero.
    pub fn slope(&self) -> Rational {
        Rational::new(self.degree, self.rank)
    }

    pub fn neg(&self) -> ChernPair {
        ChernPair::new(-self.rank, -self.degree)
    }

    /// Chern character of the index bundle `Ind = H^0 - H^1` of the transform,
    /// `(d, -r)`, before any sign normalization.
    pub fn raw_index_pair(&self) -> ChernPair {
        ChernPair::new(self.degree, -self.rank)
    }

    /// Representative of the ray `±self` with positive rank.
    pub fn rank_normalized(&self) -> ChernPair {
        if self.rank < 0 {
            self.neg()
        } else {
            *self
        }
    }
}

impl fmt::Display for ChernPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.rank, self.degree)
    }
}

/// Index of an IT bundle: the only non-vanishing cohomology degree of the
/// twisted family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ITIndex {
    Zero,
    One,
}

impl ITIndex {
    pub fn as_u8(self) -> u8 {
        match self {
            ITIndex::Zero => 0,
            ITIndex::One => 1,
        }
    }

    pub fn flip(self) -> ITIndex {
        match self {
            ITIndex::Zero => ITIndex::One,
            ITIndex::One => ITIndex::Zero,
        }
    }

    /// `(-1)^i`.
    pub fn sign(self) -> i64 {
        match self {
            ITIndex::Zero => 1,
            ITIndex::One => -1,
        }
    }

    /// IT index determined by the sign of a nonzero degree.
    pub fn from_degree(degree: i64) -> Result<ITIndex, InvariantsError> {
        match degree.signum() {
            1 => Ok(ITIndex::Zero),
            -1 => Ok(ITIndex::One),
            _ => Err(InvariantsError::NotIT),
        }
    }
}

impl fmt::Display for ITIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IT_{}", self.as_u8())
    }
}

/// A point of the curve (or its dual) in the fundamental domain, given by its
/// real coordinates `(s, t)` with respect to the period basis `(1, τ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CurvePoint {
    pub s: Rational,
    pub t: Rational,
}

impl CurvePoint {
    pub fn new(s: Rational, t: Rational) -> Result<CurvePoint, InvariantsError> {
        let zero = Rational::from_integer(0);
        let one = Rational::from_integer(1);
        if s < zero || s >= one || t < zero || t >= one {
            return Err(InvariantsError::PointOutsideDomain);
        }
        Ok(CurvePoint { s, t })
    }

    pub fn origin() -> CurvePoint {
        CurvePoint {
            s: Rational::from_integer(0),
            t: Rational::from_integer(0),
        }
    }
}

/// One stable summand of a formal polystable class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Summand {
    pub pair: ChernPair,
    pub multiplicity: u32,
    pub point: Option<CurvePoint>,
}

impl Summand {
    pub fn new(
        pair: ChernPair,
        multiplicity: u32,
        point: Option<CurvePoint>,
    ) -> Result<Summand, InvariantsError> {
        if pair.rank <= 0 || pair.h() != 1 {
            return Err(InvariantsError::NotStable {
                rank: pair.rank,
                degree: pair.degree,
            });
        }
        if multiplicity == 0 {
            return Err(InvariantsError::ZeroMultiplicity);
        }
        Ok(Summand {
            pair,
            multiplicity,
            point,
        })
    }
}

/// Formal polystable class: a multiset of stable types, the invariant shadow
/// of a Jordan-Hölder graded object `Gr(E) = ⊕ E_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BundleClass {
    summands: Vec<Summand>,
    semistable: bool,
}

impl BundleClass {
    /// Validates stable summands, positive total rank and, for a class flagged
    /// semistable, a common slope.
    pub fn new(summands: Vec<Summand>, semistable: bool) -> Result<BundleClass, InvariantsError> {
        for s in &summands {
            Summand::new(s.pair, s.multiplicity, s.point)?;
        }
        if summands.is_empty() {
            return Err(InvariantsError::ZeroRank);
        }
        if semistable {
            let mu = summands[0].pair.slope();
            if summands.iter().any(|s| s.pair.slope() != mu) {
                return Err(InvariantsError::SlopeMismatch);
            }
        }
        Ok(BundleClass {
            summands,
            semistable,
        })
    }

    /// Class of a single stable bundle of type `(rank, degree)`.
    pub fn stable(rank: i64, degree: i64) -> Result<BundleClass, InvariantsError> {
        BundleClass::new(vec![Summand::new(ChernPair::new(rank, degree), 1, None)?], true)
    }

    /// Graded class of a semistable bundle of type `(rank, degree)`: on an
    /// elliptic curve it is `h` stable pieces of type `(r/h, d/h)`,
    /// `h = gcd(r, d)`.
    pub fn semistable(rank: i64, degree: i64) -> Result<BundleClass, InvariantsError> {
        if rank <= 0 {
            return Err(InvariantsError::NotStable { rank, degree });
        }
        let h = rank.gcd(&degree);
        let pair = ChernPair::new(rank / h, degree / h);
        BundleClass::new(vec![Summand::new(pair, h as u32, None)?], true)
    }

    /// Direct sum of stable types, each with multiplicity one.
    pub fn polystable(pairs: &[(i64, i64)]) -> Result<BundleClass, InvariantsError> {
        let summands = pairs
            .iter()
            .map(|&(r, d)| Summand::new(ChernPair::new(r, d), 1, None))
            .collect::<Result<Vec<_>, _>>()?;
        let semistable = {
            let mut slopes = summands.iter().map(|s| s.pair.slope());
            let first = slopes.next();
            slopes.all(|m| Some(m) == first)
        };
        BundleClass::new(summands, semistable)
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    pub fn is_semistable(&self) -> bool {
        self.semistable
    }

    pub fn total(&self) -> ChernPair {
        self.summands.iter().fold(ChernPair::new(0, 0), |acc, s| {
            let m = i64::from(s.multiplicity);
            ChernPair::new(acc.rank + m * s.pair.rank, acc.degree + m * s.pair.degree)
        })
    }
}

impl fmt::Display for BundleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .summands
            .iter()
            .map(|s| {
                if s.multiplicity == 1 {
                    s.pair.to_string()
                } else {
                    format!("{}^{}", s.pair, s.multiplicity)
                }
            })
            .collect();
        f.write_str(&parts.join(" ⊕ "))
    }
}

/// Which curve a moduli space lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Curve {
    Original,
    Dual,
}

/// Symbolic tag `S^h X` for a symmetric product of a curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymmetricProduct {
    pub power: i64,
    pub curve: Curve,
}

impl fmt::Display for SymmetricProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.curve {
            Curve::Original => "C",
            Curve::Dual => "Ĉ",
        };
        write!(f, "S^{} {}", self.power, c)
    }
}

/// Description of the moduli space of semistable bundles of type `(r, d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModuliDescriptor {
    pub rank: i64,
    pub degree: i64,
    pub h: i64,
    pub description: SymmetricProduct,
    pub all_stable: bool,
}

/// Slope of the total class.
pub fn slope(b: &BundleClass) -> Result<Rational, InvariantsError> {
    let t = b.total();
    if t.rank == 0 {
        return Err(InvariantsError::ZeroRank);
    }
    Ok(Rational::new(t.degree, t.rank))
}

/// IT index of a formal polystable class: 0 if every summand has positive
/// degree, 1 if every summand has negative degree.
pub fn it_class(b: &BundleClass) -> Result<ITIndex, InvariantsError> {
    let mut signs = b.summands.iter().map(|s| s.pair.degree.signum());
    let first = signs.next().ok_or(InvariantsError::ZeroRank)?;
    if first == 0 || signs.any(|s| s != first) {
        return Err(InvariantsError::NotIT);
    }
    ITIndex::from_degree(first)
}

/// Transform of one Chern pair with known IT index:
/// `(r, d) ↦ ((-1)^i d, (-1)^(i+1) r)`.
pub fn fm_pair(p: ChernPair, i: ITIndex) -> ChernPair {
    let raw = p.raw_index_pair();
    ChernPair::new(i.sign() * raw.rank, i.sign() * raw.degree)
}

/// Fourier-Mukai transform of a formal polystable class. Multiplicities,
/// marked points and the semistable flag are carried through unchanged.
pub fn fm_transform_class(b: &BundleClass) -> Result<(BundleClass, ITIndex), InvariantsError> {
    let i = it_class(b)?;
    let summands = b
        .summands
        .iter()
        .map(|s| Summand {
            pair: fm_pair(s.pair, i),
            multiplicity: s.multiplicity,
            point: s.point,
        })
        .collect();
    let out = BundleClass::new(summands, b.semistable)?;
    Ok((out, i))
}

/// `h = gcd(r, |d|)`, the moduli space is `S^h C`, and every semistable bundle
/// is stable exactly when `h = 1`.
pub fn moduli_descriptor(rank: i64, degree: i64) -> Result<ModuliDescriptor, InvariantsError> {
    moduli_descriptor_on(rank, degree, Curve::Original)
}

fn moduli_descriptor_on(
    rank: i64,
    degree: i64,
    curve: Curve,
) -> Result<ModuliDescriptor, InvariantsError> {
    if rank <= 0 {
        return Err(InvariantsError::ZeroRank);
    }
    if degree == 0 {
        return Err(InvariantsError::DegreeZero);
    }
    let h = rank.gcd(&degree);
    Ok(ModuliDescriptor {
        rank,
        degree,
        h,
        description: SymmetricProduct { power: h, curve },
        all_stable: h == 1,
    })
}

/// Descriptor of the moduli space on the dual curve that the transform maps
/// `M_C(r, d)` onto.
pub fn transformed_moduli_descriptor(
    rank: i64,
    degree: i64,
) -> Result<ModuliDescriptor, InvariantsError> {
    moduli_descriptor(rank, degree)?;
    let i = ITIndex::from_degree(degree)?;
    let p = fm_pair(ChernPair::new(rank, degree), i);
    moduli_descriptor_on(p.rank, p.degree, Curve::Dual)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn slope_examples() {
        assert_eq!(slope(&BundleClass::stable(2, 3).unwrap()).unwrap(), rat(3, 2));
        let b = BundleClass::polystable(&[(1, 1), (1, 1)]).unwrap();
        assert_eq!(slope(&b).unwrap(), rat(1, 1));
        let b = BundleClass::polystable(&[(1, 2), (2, 3)]).unwrap();
        assert_eq!(slope(&b).unwrap(), rat(5, 3));
        assert!(!b.is_semistable());
    }

    #[test]
    fn it_class_examples() {
        assert_eq!(it_class(&BundleClass::stable(1, 3).unwrap()), Ok(ITIndex::Zero));
        assert_eq!(it_class(&BundleClass::stable(2, -1).unwrap()), Ok(ITIndex::One));
        let b = BundleClass::polystable(&[(1, 2), (1, 0)]).unwrap();
        assert_eq!(it_class(&b), Err(InvariantsError::NotIT));
        let b = BundleClass::polystable(&[(1, 2), (1, -1)]).unwrap();
        assert_eq!(it_class(&b), Err(InvariantsError::NotIT));
    }

    #[test]
    fn transform_examples() {
        let (b, i) = fm_transform_class(&BundleClass::stable(1, 3).unwrap()).unwrap();
        assert_eq!(i, ITIndex::Zero);
        assert_eq!(b.total(), ChernPair::new(3, -1));
        let (b, i) = fm_transform_class(&BundleClass::stable(1, -2).unwrap()).unwrap();
        assert_eq!(i, ITIndex::One);
        assert_eq!(b.total(), ChernPair::new(2, 1));
        let b = BundleClass::semistable(2, 0).unwrap();
        assert_eq!(fm_transform_class(&b), Err(InvariantsError::NotIT));
    }

    #[test]
    fn semistable_class_splits_into_stable_pieces() {
        let b = BundleClass::semistable(4, 2).unwrap();
        assert_eq!(b.summands().len(), 1);
        assert_eq!(b.summands()[0].pair, ChernPair::new(2, 1));
        assert_eq!(b.summands()[0].multiplicity, 2);
        assert_eq!(b.total(), ChernPair::new(4, 2));
    }

    #[test]
    fn non_coprime_summand_is_rejected() {
        assert!(matches!(
            BundleClass::stable(2, 4),
            Err(InvariantsError::NotStable { .. })
        ));
    }

    #[test]
    fn moduli_examples() {
        let m = moduli_descriptor(2, 3).unwrap();
        assert_eq!((m.h, m.all_stable), (1, true));
        assert_eq!(m.description.to_string(), "S^1 C");
        let m = moduli_descriptor(4, 2).unwrap();
        assert_eq!((m.h, m.all_stable), (2, false));
        assert_eq!(moduli_descriptor(3, 0), Err(InvariantsError::DegreeZero));
    }

    #[test]
    fn transformed_moduli_lives_on_dual_curve() {
        let m = transformed_moduli_descriptor(4, 2).unwrap();
        assert_eq!((m.rank, m.degree, m.h), (2, -4, 2));
        assert_eq!(m.description.to_string(), "S^2 Ĉ");
    }

    #[test]
    fn points_are_carried_through() {
        let p = CurvePoint::new(rat(1, 3), rat(1, 2)).unwrap();
        let s = Summand::new(ChernPair::new(1, 2), 1, Some(p)).unwrap();
        let b = BundleClass::new(vec![s], true).unwrap();
        let (t, _) = fm_transform_class(&b).unwrap();
        assert_eq!(t.summands()[0].point, Some(p));
        assert!(CurvePoint::new(rat(1, 1), rat(0, 1)).is_err());
    }

    #[test]
    fn raw_index_pair_squares_to_minus_identity() {
        let p = ChernPair::new(3, -5);
        assert_eq!(p.raw_index_pair().raw_index_pair(), p.neg());
    }
}
