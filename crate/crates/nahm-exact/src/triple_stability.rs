//! α-stability calculus for holomorphic triples `T = (E1, E2, Φ: E2 → E1)` at
//! the level of types `(n1, n2, d1, d2)`.
//!
//! The α-slope is `μ_α = (d1 + d2 + n2 α) / (n1 + n2)`. Stable triples can
//! exist only for `α_m ≤ α ≤ α_M` with `α_m = μ1 - μ2` and
//! `α_M = (1 + (n1+n2)/|n1-n2|)(μ1 - μ2)` (infinite when `n1 = n2`).

use std::fmt;

use num_integer::Integer;
use num_traits::Signed;
use thiserror::Error;

use crate::invariants::{fm_pair, ChernPair, ITIndex};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TripleError {
    #[error("ranks must be non-negative with n1 + n2 > 0")]
    InvalidType,
    #[error("a rank is zero")]
    ZeroRank,
    #[error("moduli space is empty: μ1 < μ2")]
    EmptyModuli,
    #[error("window is unbounded (n1 = n2); supply a finite cap")]
    UnboundedWindow,
    #[error("cap must exceed α_m")]
    BadCap,
    #[error("triple is not IT: degrees must be nonzero with a common sign")]
    NotIT,
    #[error("α must be positive")]
    NonPositiveAlpha,
}

/// Type `(n1, n2, d1, d2)` of a holomorphic triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TripleType {
    pub n1: i64,
    pub n2: i64,
    pub d1: i64,
    pub d2: i64,
}

impl TripleType {
    pub fn new(n1: i64, n2: i64, d1: i64, d2: i64) -> Result<TripleType, TripleError> {
        if n1 < 0 || n2 < 0 || n1 + n2 == 0 {
            return Err(TripleError::InvalidType);
        }
        Ok(TripleType { n1, n2, d1, d2 })
    }

    pub fn mu1(&self) -> Option<Rational> {
        (self.n1 > 0).then(|| Rational::new(self.d1, self.n1))
    }

    pub fn mu2(&self) -> Option<Rational> {
        (self.n2 > 0).then(|| Rational::new(self.d2, self.n2))
    }

    /// `n2 d1 - n1 d2`; controls the fibration and moduli dimensions.
    pub fn dimension_invariant(&self) -> i64 {
        self.n2 * self.d1 - self.n1 * self.d2
    }

    /// The dual triple `(E2*, E1*, Φ^t)`, of type `(n2, n1, -d2, -d1)`.
    pub fn dual(&self) -> TripleType {
        TripleType {
            n1: self.n2,
            n2: self.n1,
            d1: -self.d2,
            d2: -self.d1,
        }
    }

    /// Smallest type with `n1 = n2` realizing the given `τ, τ'` through
    /// `d1 = n τ`, `d2 = n τ'`, so that `n1 τ + n2 τ' = d1 + d2` holds.
    pub fn realizing(tau: Rational, tau_prime: Rational) -> TripleType {
        let n = tau.denom().lcm(tau_prime.denom());
        TripleType {
            n1: n,
            n2: n,
            d1: (tau * n).to_integer(),
            d2: (tau_prime * n).to_integer(),
        }
    }
}

impl fmt::Display for TripleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.n1, self.n2, self.d1, self.d2)
    }
}

/// Upper end of the α-window.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlphaBound {
    Finite(Rational),
    Infinite,
}

impl AlphaBound {
    pub fn finite(&self) -> Option<Rational> {
        match self {
            AlphaBound::Finite(r) => Some(*r),
            AlphaBound::Infinite => None,
        }
    }

    fn exceeds(&self, a: Rational) -> bool {
        match self {
            AlphaBound::Finite(r) => a < *r,
            AlphaBound::Infinite => true,
        }
    }
}

impl fmt::Display for AlphaBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlphaBound::Finite(r) => write!(f, "{r}"),
            AlphaBound::Infinite => f.write_str("∞"),
        }
    }
}

/// How much of the window the candidate scan covered.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CriticalScan {
    Complete,
    CappedAt(Rational),
    NotScanned,
}

/// The α-window of a type together with its candidate critical values.
///
/// When `μ1 = μ2` and `n1 ≠ n2` the window degenerates to `α_m = α_M = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaWindow {
    pub alpha_m: Rational,
    pub alpha_upper: AlphaBound,
    pub criticals: Vec<Rational>,
    pub alpha_l: Rational,
    pub scan: CriticalScan,
}

impl AlphaWindow {
    pub fn chamber_count(&self) -> usize {
        self.criticals.len() + 1
    }

    /// Locates `alpha` relative to the chambers of the window.
    pub fn locate(&self, alpha: Rational) -> ChamberPosition {
        if alpha <= self.alpha_m || !self.alpha_upper.exceeds(alpha) {
            return ChamberPosition::OutsideWindow;
        }
        if self.criticals.contains(&alpha) {
            return ChamberPosition::Critical;
        }
        let smallest = self.criticals.first().is_none_or(|c| alpha < *c);
        let largest = match self.scan {
            CriticalScan::Complete => alpha > self.alpha_l,
            _ => false,
        };
        match (smallest, largest) {
            (true, true) => ChamberPosition::OnlyChamber,
            (true, false) => ChamberPosition::Smallest,
            (false, true) => ChamberPosition::Largest,
            (false, false) => ChamberPosition::Intermediate,
        }
    }
}

/// Position of a parameter value among the chambers of a window.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChamberPosition {
    OutsideWindow,
    Critical,
    OnlyChamber,
    Smallest,
    Largest,
    /// Between two candidate critical values. Nothing is known about
    /// preservation of stability here.
    Intermediate,
}

impl fmt::Display for ChamberPosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ChamberPosition::OutsideWindow => "outside the window",
            ChamberPosition::Critical => "at a candidate critical value",
            ChamberPosition::OnlyChamber => "single chamber (both smallest and largest)",
            ChamberPosition::Smallest => "smallest chamber",
            ChamberPosition::Largest => "largest chamber",
            ChamberPosition::Intermediate => "intermediate chamber: unknown",
        };
        f.write_str(s)
    }
}

/// `μ_α(T) = (d1 + d2 + n2 α)/(n1 + n2)`.
pub fn alpha_slope(t: &TripleType, alpha: Rational) -> Rational {
    (Rational::from_integer(t.d1 + t.d2) + alpha * t.n2) / (t.n1 + t.n2)
}

fn window_bounds(t: &TripleType) -> Result<(Rational, AlphaBound), TripleError> {
    let (mu1, mu2) = match (t.mu1(), t.mu2()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(TripleError::ZeroRank),
    };
    if mu1 < mu2 {
        return Err(TripleError::EmptyModuli);
    }
    let alpha_m = mu1 - mu2;
    if t.n1 == t.n2 {
        return Ok((alpha_m, AlphaBound::Infinite));
    }
    let factor = Rational::from_integer(1) + Rational::new(t.n1 + t.n2, (t.n1 - t.n2).abs());
    Ok((alpha_m, AlphaBound::Finite(factor * alpha_m)))
}

/// Window with a complete candidate scan when `α_M` is finite; for `n1 = n2`
/// the criticals are left unscanned (see [`alpha_window_capped`]).
pub fn alpha_window(t: &TripleType) -> Result<AlphaWindow, TripleError> {
    alpha_window_capped(t, None)
}

/// Window whose candidate scan stops at `cap` when the window is unbounded.
pub fn alpha_window_capped(
    t: &TripleType,
    cap: Option<Rational>,
) -> Result<AlphaWindow, TripleError> {
    let (alpha_m, alpha_upper) = window_bounds(t)?;
    let (criticals, scan) = match (alpha_upper, cap) {
        (AlphaBound::Finite(_), _) => (critical_values_capped(t, None)?, CriticalScan::Complete),
        (AlphaBound::Infinite, Some(c)) => (critical_values_capped(t, Some(c))?, CriticalScan::CappedAt(c)),
        (AlphaBound::Infinite, None) => (Vec::new(), CriticalScan::NotScanned),
    };
    let alpha_l = criticals.last().copied().unwrap_or(alpha_m);
    Ok(AlphaWindow {
        alpha_m,
        alpha_upper,
        criticals,
        alpha_l,
        scan,
    })
}

/// Candidate critical values strictly inside the window.
///
/// For every rank pair `0 ≤ ni' ≤ ni` other than `(0,0)` and `(n1,n2)`, the
/// equation `μ_α(n1',n2',d') = μ_α(T)` is linear in `α` and in the total
/// subdegree `d'`. Only finitely many integers `d'` put `α` inside the window.
/// The result is a superset of the values where strictly semistable triples
/// actually occur.
pub fn critical_values(t: &TripleType) -> Result<Vec<Rational>, TripleError> {
    critical_values_capped(t, None)
}

/// As [`critical_values`], with an explicit cap replacing an infinite `α_M`.
pub fn critical_values_capped(
    t: &TripleType,
    cap: Option<Rational>,
) -> Result<Vec<Rational>, TripleError> {
    let (lo, upper) = window_bounds(t)?;
    let hi = match (upper, cap) {
        (AlphaBound::Finite(h), _) => h,
        (AlphaBound::Infinite, Some(c)) => {
            if c <= lo {
                return Err(TripleError::BadCap);
            }
            c
        }
        (AlphaBound::Infinite, None) => return Err(TripleError::UnboundedWindow),
    };
    let n = t.n1 + t.n2;
    let total = t.d1 + t.d2;
    let mut out = Vec::new();
    for n1p in 0..=t.n1 {
        for n2p in 0..=t.n2 {
            if (n1p, n2p) == (0, 0) || (n1p, n2p) == (t.n1, t.n2) {
                continue;
            }
            let np = n1p + n2p;
            let k = n * n2p - np * t.n2;
            if k == 0 {
                continue;
            }
            // α(d') = (np·total - n·d') / k ; solve the window for d'.
            let at = |a: Rational| (Rational::from_integer(np * total) - a * k) / n;
            let (e1, e2) = (at(lo), at(hi));
            let (dmin, dmax) = if e1 < e2 { (e1, e2) } else { (e2, e1) };
            let first = dmin.floor().to_integer();
            let last = dmax.ceil().to_integer();
            for dp in first..=last {
                let a = Rational::new(np * total - n * dp, k);
                if a > lo && a < hi {
                    out.push(a);
                }
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Componentwise transform of an IT triple type.
pub fn transform_triple_type(t: &TripleType) -> Result<(TripleType, ITIndex), TripleError> {
    if t.d1 == 0 || t.d2 == 0 || t.d1.signum() != t.d2.signum() {
        return Err(TripleError::NotIT);
    }
    let i = ITIndex::from_degree(t.d1).map_err(|_| TripleError::NotIT)?;
    let e1 = fm_pair(ChernPair::new(t.n1, t.d1), i);
    let e2 = fm_pair(ChernPair::new(t.n2, t.d2), i);
    Ok((
        TripleType {
            n1: e1.rank,
            n2: e2.rank,
            d1: e1.degree,
            d2: e2.degree,
        },
        i,
    ))
}

/// Which preservation criterion produced a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    SmallAlpha,
    LargeAlpha,
    EqualRanks,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::SmallAlpha => "small",
            Regime::LargeAlpha => "large",
            Regime::EqualRanks => "equal-ranks",
        })
    }
}

/// The first failed hypothesis of a criterion, or `AllHold`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reason {
    AllHold,
    WindowInvalid,
    GcdN1D1(i64),
    GcdN2D2(i64),
    DegreeProductNonPositive,
    EqualRanks,
    GcdRankDifference(i64),
    DegreeSignsNotUniform,
    NotSelfPaired,
    DegreeZero,
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reason::AllHold => f.write_str("all hypotheses hold"),
            Reason::WindowInvalid => f.write_str("α-window is empty"),
            Reason::GcdN1D1(g) => write!(f, "gcd(n1,d1)={g}"),
            Reason::GcdN2D2(g) => write!(f, "gcd(n2,d2)={g}"),
            Reason::DegreeProductNonPositive => f.write_str("d1d2 ≤ 0"),
            Reason::EqualRanks => f.write_str("n1 = n2"),
            Reason::GcdRankDifference(g) => write!(f, "gcd(n1−n2,d1−d2)={g}"),
            Reason::DegreeSignsNotUniform => f.write_str("d1, d2, d1−d2 not of one strict sign"),
            Reason::NotSelfPaired => f.write_str("type is not of the form (n,n,d,d)"),
            Reason::DegreeZero => f.write_str("d1 = d2 = 0"),
        }
    }
}

/// One line of a hypothesis checklist.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypothesis {
    pub label: String,
    pub holds: bool,
}

impl Hypothesis {
    fn new(label: impl Into<String>, holds: bool) -> Hypothesis {
        Hypothesis {
            label: label.into(),
            holds,
        }
    }
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.label, if self.holds { "✓" } else { "✗" })
    }
}

/// Outcome of a preservation criterion. When `applies` is true the transform
/// fields are populated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreservationVerdict {
    pub regime: Regime,
    pub applies: bool,
    pub reason: Reason,
    pub checklist: Vec<Hypothesis>,
    pub transformed: Option<TripleType>,
    pub it_index: Option<ITIndex>,
    pub fibration_dim_n: Option<i64>,
    pub moduli_dim: Option<i64>,
    pub transformed_window: Option<AlphaWindow>,
    /// Set by the equal-rank criterion: the transform is stable for every
    /// positive parameter.
    pub stable_for_all_alpha_hat: bool,
}

impl PreservationVerdict {
    fn rejected(regime: Regime, reason: Reason, checklist: Vec<Hypothesis>) -> PreservationVerdict {
        PreservationVerdict {
            regime,
            applies: false,
            reason,
            checklist,
            transformed: None,
            it_index: None,
            fibration_dim_n: None,
            moduli_dim: None,
            transformed_window: None,
            stable_for_all_alpha_hat: false,
        }
    }
}

fn first_failure(checks: &[(Reason, bool)]) -> Reason {
    checks
        .iter()
        .find(|(_, ok)| !ok)
        .map(|(r, _)| *r)
        .unwrap_or(Reason::AllHold)
}

/// Small-α criterion: for `α` in the first chamber, stability is preserved
/// when `gcd(n1,d1) = gcd(n2,d2) = 1` and `d1 d2 > 0`. The moduli space is
/// then a `P^N`-fibration with `N = n2 d1 - n1 d2 - 1`.
pub fn check_small_alpha_preservation(t: &TripleType) -> PreservationVerdict {
    let regime = Regime::SmallAlpha;
    if alpha_window(t).is_err() {
        return PreservationVerdict::rejected(
            regime,
            Reason::WindowInvalid,
            vec![Hypothesis::new("μ1 ≥ μ2", false)],
        );
    }
    let g1 = t.n1.gcd(&t.d1);
    let g2 = t.n2.gcd(&t.d2);
    let checks = [
        (Reason::GcdN1D1(g1), g1 == 1),
        (Reason::GcdN2D2(g2), g2 == 1),
        (Reason::DegreeProductNonPositive, t.d1 * t.d2 > 0),
    ];
    let checklist = vec![
        Hypothesis::new("gcd(n1,d1)=1", g1 == 1),
        Hypothesis::new("gcd(n2,d2)=1", g2 == 1),
        Hypothesis::new("d1d2>0", t.d1 * t.d2 > 0),
    ];
    let reason = first_failure(&checks);
    if reason != Reason::AllHold {
        return PreservationVerdict::rejected(regime, reason, checklist);
    }
    let (transformed, i) = transform_triple_type(t).expect("d1 d2 > 0 implies IT");
    let strict = t.mu1() > t.mu2();
    PreservationVerdict {
        regime,
        applies: true,
        reason,
        checklist,
        transformed: Some(transformed),
        it_index: Some(i),
        fibration_dim_n: strict.then(|| t.dimension_invariant() - 1),
        moduli_dim: strict.then(|| t.dimension_invariant() + 1),
        transformed_window: alpha_window(&transformed).ok(),
        stable_for_all_alpha_hat: false,
    }
}

/// Large-α criterion: for `α` in the last chamber, stability is preserved
/// when `gcd(n1-n2, d1-d2) = gcd(n2,d2) = 1`, `n1 ≠ n2` and `d1, d2, d1-d2`
/// share a strict sign. The moduli space is smooth of dimension
/// `n2 d1 - n1 d2 + 1`; for `n1 < n2` that statement is read off the dual
/// triple and is only reported when the dual satisfies its coprimality
/// condition.
pub fn check_large_alpha_preservation(t: &TripleType) -> PreservationVerdict {
    let regime = Regime::LargeAlpha;
    if alpha_window(t).is_err() {
        return PreservationVerdict::rejected(
            regime,
            Reason::WindowInvalid,
            vec![Hypothesis::new("μ1 ≥ μ2", false)],
        );
    }
    let g = (t.n1 - t.n2).gcd(&(t.d1 - t.d2));
    let g2 = t.n2.gcd(&t.d2);
    let diff = t.d1 - t.d2;
    let uniform = (t.d1 > 0 && t.d2 > 0 && diff > 0) || (t.d1 < 0 && t.d2 < 0 && diff < 0);
    let checks = [
        (Reason::EqualRanks, t.n1 != t.n2),
        (Reason::GcdRankDifference(g), g == 1),
        (Reason::GcdN2D2(g2), g2 == 1),
        (Reason::DegreeSignsNotUniform, uniform),
    ];
    let checklist = vec![
        Hypothesis::new("n1≠n2", t.n1 != t.n2),
        Hypothesis::new("gcd(n1−n2,d1−d2)=1", g == 1),
        Hypothesis::new("gcd(n2,d2)=1", g2 == 1),
        Hypothesis::new("d1,d2,d1−d2 same strict sign", uniform),
    ];
    let reason = first_failure(&checks);
    if reason != Reason::AllHold {
        return PreservationVerdict::rejected(regime, reason, checklist);
    }
    let (transformed, i) = transform_triple_type(t).expect("uniform signs imply IT");
    let reference = if t.n1 > t.n2 { *t } else { t.dual() };
    let dims_known = reference.mu1() > reference.mu2()
        && (reference.n1 - reference.n2).gcd(&(reference.d1 - reference.d2)) == 1
        && reference.n2.gcd(&reference.d2) == 1;
    let k = reference.dimension_invariant();
    PreservationVerdict {
        regime,
        applies: true,
        reason,
        checklist,
        transformed: Some(transformed),
        it_index: Some(i),
        fibration_dim_n: dims_known.then_some(k - 1),
        moduli_dim: dims_known.then_some(k + 1),
        transformed_window: alpha_window(&transformed).ok(),
        stable_for_all_alpha_hat: false,
    }
}

/// Equal-rank self-paired case `E1 ≅ E2`: the transformed triple is stable
/// for every positive parameter when `gcd(n, d) = 1` and `d ≠ 0`.
pub fn check_equal_ranks_case(t: &TripleType) -> PreservationVerdict {
    let regime = Regime::EqualRanks;
    let paired = t.n1 == t.n2 && t.d1 == t.d2 && t.n1 > 0;
    let g = t.n1.gcd(&t.d1);
    let checks = [
        (Reason::NotSelfPaired, paired),
        (Reason::DegreeZero, t.d1 != 0),
        (Reason::GcdN1D1(g), g == 1),
    ];
    let checklist = vec![
        Hypothesis::new("n1=n2, d1=d2", paired),
        Hypothesis::new("d1≠0", t.d1 != 0),
        Hypothesis::new("gcd(n1,d1)=1", g == 1),
    ];
    let reason = first_failure(&checks);
    if reason != Reason::AllHold {
        return PreservationVerdict::rejected(regime, reason, checklist);
    }
    let (transformed, i) = transform_triple_type(t).expect("d1 = d2 ≠ 0 implies IT");
    PreservationVerdict {
        regime,
        applies: true,
        reason,
        checklist,
        transformed: Some(transformed),
        it_index: Some(i),
        fibration_dim_n: None,
        moduli_dim: None,
        transformed_window: alpha_window(&transformed).ok(),
        stable_for_all_alpha_hat: true,
    }
}

/// Invariant data of the SU(2)-equivariant bundle
/// `E = p*E1 ⊕ (p*E2 ⊗ q*H^2)` on `C × P^1` attached to a triple, polarized by
/// `ω_α = (α/2) p*ω_C + q*ω_{P^1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EquivariantType {
    pub triple: TripleType,
    pub alpha: Rational,
    pub kahler_coeff: Rational,
    pub total_rank: i64,
}

pub fn equivariant_descriptor(
    t: &TripleType,
    alpha: Rational,
) -> Result<EquivariantType, TripleError> {
    if !alpha.is_positive() {
        return Err(TripleError::NonPositiveAlpha);
    }
    Ok(EquivariantType {
        triple: *t,
        alpha,
        kahler_coeff: alpha / 2,
        total_rank: t.n1 + t.n2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{int, rat};

    fn tt(n1: i64, n2: i64, d1: i64, d2: i64) -> TripleType {
        TripleType::new(n1, n2, d1, d2).unwrap()
    }

    #[test]
    fn alpha_slope_examples() {
        assert_eq!(alpha_slope(&tt(2, 1, 1, 0), int(1)), rat(2, 3));
        assert_eq!(alpha_slope(&tt(1, 1, 2, 1), int(0)), rat(3, 2));
        assert_eq!(alpha_slope(&tt(0, 1, 0, -1), int(2)), int(1));
    }

    #[test]
    fn window_examples() {
        let w = alpha_window(&tt(3, 1, 4, 1)).unwrap();
        assert_eq!(w.alpha_m, rat(1, 3));
        assert_eq!(w.alpha_upper, AlphaBound::Finite(int(1)));
        let w = alpha_window(&tt(2, 2, 3, 1)).unwrap();
        assert_eq!(w.alpha_m, int(1));
        assert_eq!(w.alpha_upper, AlphaBound::Infinite);
        assert_eq!(w.scan, CriticalScan::NotScanned);
        let w = alpha_window(&tt(2, 1, 1, 0)).unwrap();
        assert_eq!(w.alpha_m, rat(1, 2));
        assert_eq!(w.alpha_upper, AlphaBound::Finite(int(2)));
        assert_eq!(w.alpha_l, w.alpha_m);
    }

    #[test]
    fn window_errors() {
        assert_eq!(alpha_window(&tt(1, 1, 0, 1)), Err(TripleError::EmptyModuli));
        assert_eq!(alpha_window(&tt(2, 0, 1, 0)), Err(TripleError::ZeroRank));
        // μ1 = μ2 with n1 ≠ n2 collapses the window to the point 0.
        let w = alpha_window(&tt(2, 1, 2, 1)).unwrap();
        assert_eq!(w.alpha_upper, AlphaBound::Finite(int(0)));
        assert!(w.criticals.is_empty());
    }

    #[test]
    fn critical_value_examples() {
        assert!(critical_values(&tt(2, 1, 1, 0)).unwrap().is_empty());
        assert_eq!(critical_values(&tt(2, 1, 3, 0)).unwrap(), vec![int(3), rat(9, 2)]);
        assert!(critical_values(&tt(3, 1, 4, 1)).unwrap().is_empty());
        assert_eq!(critical_values(&tt(2, 2, 3, 1)), Err(TripleError::UnboundedWindow));
    }

    #[test]
    fn capped_scan_of_unbounded_window() {
        let t = tt(2, 2, 3, 1);
        let c = critical_values_capped(&t, Some(int(10))).unwrap();
        assert!(c.iter().all(|a| *a > int(1) && *a < int(10)));
        let w = alpha_window_capped(&t, Some(int(10))).unwrap();
        assert_eq!(w.scan, CriticalScan::CappedAt(int(10)));
        assert_eq!(w.criticals, c);
        assert_eq!(critical_values_capped(&t, Some(int(1))), Err(TripleError::BadCap));
    }

    #[test]
    fn chamber_location() {
        let w = alpha_window(&tt(2, 1, 3, 0)).unwrap();
        assert_eq!(w.locate(int(2)), ChamberPosition::Smallest);
        assert_eq!(w.locate(int(3)), ChamberPosition::Critical);
        assert_eq!(w.locate(rat(7, 2)), ChamberPosition::Intermediate);
        assert_eq!(w.locate(int(5)), ChamberPosition::Largest);
        assert_eq!(w.locate(int(6)), ChamberPosition::OutsideWindow);
        let w = alpha_window(&tt(2, 1, 1, 0)).unwrap();
        assert_eq!(w.locate(int(1)), ChamberPosition::OnlyChamber);
    }

    #[test]
    fn transform_examples() {
        assert_eq!(
            transform_triple_type(&tt(1, 1, 2, 1)),
            Ok((tt(2, 1, -1, -1), ITIndex::Zero))
        );
        assert_eq!(
            transform_triple_type(&tt(1, 2, -1, -2)),
            Ok((tt(1, 2, 1, 2), ITIndex::One))
        );
        assert_eq!(transform_triple_type(&tt(1, 1, 1, -1)), Err(TripleError::NotIT));
    }

    #[test]
    fn small_alpha_examples() {
        let v = check_small_alpha_preservation(&tt(1, 2, 1, 1));
        assert!(v.applies);
        assert_eq!(v.transformed, Some(tt(1, 1, -1, -2)));
        assert_eq!(v.fibration_dim_n, Some(0));
        let v = check_small_alpha_preservation(&tt(2, 1, 2, 1));
        assert!(!v.applies);
        assert_eq!(v.reason.to_string(), "gcd(n1,d1)=2");
        let v = check_small_alpha_preservation(&tt(1, 1, 1, -1));
        assert!(!v.applies);
        assert_eq!(v.reason, Reason::DegreeProductNonPositive);
    }

    #[test]
    fn large_alpha_examples() {
        let v = check_large_alpha_preservation(&tt(3, 1, 4, 1));
        assert!(v.applies);
        assert_eq!(v.it_index, Some(ITIndex::Zero));
        assert_eq!(v.moduli_dim, Some(2));
        assert_eq!(v.transformed, Some(tt(4, 1, -3, -1)));
        let v = check_large_alpha_preservation(&tt(3, 1, 3, 1));
        assert_eq!(v.reason.to_string(), "gcd(n1−n2,d1−d2)=2");
        let v = check_large_alpha_preservation(&tt(2, 2, 3, 1));
        assert_eq!(v.reason, Reason::EqualRanks);
    }

    #[test]
    fn large_alpha_dual_branch_dimension() {
        // n1 < n2: dimensions come from the dual triple (2,1,-1,-3).
        let t = tt(1, 2, 3, 1);
        let v = check_large_alpha_preservation(&t);
        assert!(v.applies);
        assert_eq!(v.moduli_dim, Some(t.dimension_invariant() + 1));
    }

    #[test]
    fn equal_rank_examples() {
        let v = check_equal_ranks_case(&tt(1, 1, 1, 1));
        assert!(v.applies && v.stable_for_all_alpha_hat);
        assert_eq!(v.transformed, Some(tt(1, 1, -1, -1)));
        assert!(!check_equal_ranks_case(&tt(1, 1, 0, 0)).applies);
        assert!(check_equal_ranks_case(&tt(2, 2, 1, 1)).applies);
        assert_eq!(check_equal_ranks_case(&tt(2, 1, 1, 1)).reason, Reason::NotSelfPaired);
    }

    #[test]
    fn checklist_lines_render_marks() {
        let v = check_small_alpha_preservation(&tt(1, 2, 1, 1));
        assert_eq!(v.checklist[0].to_string(), "gcd(n1,d1)=1 ✓");
    }

    #[test]
    fn equivariant_examples() {
        assert_eq!(
            equivariant_descriptor(&tt(1, 1, 2, 1), int(1)).unwrap().kahler_coeff,
            rat(1, 2)
        );
        assert_eq!(
            equivariant_descriptor(&tt(3, 1, 4, 1), rat(1, 2)).unwrap().kahler_coeff,
            rat(1, 4)
        );
        assert_eq!(
            equivariant_descriptor(&tt(1, 1, 2, 1), int(0)),
            Err(TripleError::NonPositiveAlpha)
        );
    }

    #[test]
    fn realizing_type_satisfies_constraint() {
        let t = TripleType::realizing(rat(2, 3), rat(5, 2));
        assert_eq!(t.n1, 6);
        assert_eq!(
            Rational::from_integer(t.d1 + t.d2),
            rat(2, 3) * t.n1 + rat(5, 2) * t.n2
        );
    }
}
