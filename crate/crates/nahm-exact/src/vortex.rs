//! Exact calculus of the τ-coupled vortex equations
//!
//! ```text
//! iΛF1 + ΦΦ* = 2πτ Id,    iΛF2 − Φ*Φ = 2πτ' Id,    n1 τ + n2 τ' = d1 + d2,
//! ```
//!
//! with `α = τ − τ'`. A covariantly constant solution splits as
//! `(Ker Φ*, 0, 0) ⊕ (E', E', Φ) ⊕ (0, Ker Φ, 0)` with block slopes
//! `τ, (τ+τ')/2, τ'` and `ΦΦ* = λ Id` on `E'`, `λ = π(τ − τ')`.

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::invariants::{fm_pair, ChernPair, ITIndex};
use crate::triple_stability::{alpha_slope, TripleType};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VortexError {
    #[error("α must be positive")]
    NonPositiveAlpha,
    #[error("τ' exceeds τ (α = τ − τ' must be non-negative)")]
    NegativeAlpha,
    #[error("n2 must be positive")]
    ZeroRank,
    #[error("n1 τ + n2 τ' ≠ d1 + d2")]
    ConstraintViolated,
    #[error("τ and τ' must be nonzero with a common sign")]
    MixedSigns,
    #[error("μ1 must exceed μ2")]
    SlopeOrder,
    #[error("slopes cannot be realized by coprime pairs of one strict degree sign")]
    NotRepresentable,
    #[error("neither sign pattern of the vanishing criterion holds")]
    Indeterminate,
    #[error("no block present")]
    Empty,
}

/// Vortex parameters. Invariants: `n1 τ + n2 τ' = d1 + d2` and `α = τ − τ'`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VortexParams {
    pub tau: Rational,
    pub tau_prime: Rational,
    pub alpha: Rational,
    pub triple: TripleType,
}

impl VortexParams {
    /// Checks the linear constraint and `τ ≥ τ'`. The degenerate case
    /// `τ = τ'` is admitted because covariantly constant triples reach it.
    pub fn new(
        triple: TripleType,
        tau: Rational,
        tau_prime: Rational,
    ) -> Result<VortexParams, VortexError> {
        if tau * triple.n1 + tau_prime * triple.n2 != Rational::from_integer(triple.d1 + triple.d2) {
            return Err(VortexError::ConstraintViolated);
        }
        if tau < tau_prime {
            return Err(VortexError::NegativeAlpha);
        }
        Ok(VortexParams {
            tau,
            tau_prime,
            alpha: tau - tau_prime,
            triple,
        })
    }

    /// Parameters with the given `τ, τ'` on the smallest realizing type.
    pub fn from_taus(tau: Rational, tau_prime: Rational) -> Result<VortexParams, VortexError> {
        VortexParams::new(TripleType::realizing(tau, tau_prime), tau, tau_prime)
    }
}

/// `τ = (d1+d2+n2 α)/(n1+n2)`, `τ' = (d1+d2−n1 α)/(n1+n2)`.
pub fn tau_from_alpha(t: &TripleType, alpha: Rational) -> Result<VortexParams, VortexError> {
    if t.n2 <= 0 {
        return Err(VortexError::ZeroRank);
    }
    if !alpha.is_positive() {
        return Err(VortexError::NonPositiveAlpha);
    }
    let n = t.n1 + t.n2;
    let d = Rational::from_integer(t.d1 + t.d2);
    let tau = (d + alpha * t.n2) / n;
    let tau_prime = (d - alpha * t.n1) / n;
    Ok(VortexParams {
        tau,
        tau_prime,
        alpha,
        triple: *t,
    })
}

/// Inverse of [`tau_from_alpha`]: `α = ((n1+n2)τ − d1 − d2)/n2`.
pub fn alpha_from_tau(t: &TripleType, tau: Rational) -> Result<VortexParams, VortexError> {
    if t.n2 <= 0 {
        return Err(VortexError::ZeroRank);
    }
    let alpha = (tau * (t.n1 + t.n2) - Rational::from_integer(t.d1 + t.d2)) / t.n2;
    if !alpha.is_positive() {
        return Err(VortexError::NonPositiveAlpha);
    }
    Ok(VortexParams {
        tau,
        tau_prime: tau - alpha,
        alpha,
        triple: *t,
    })
}

/// One block of a covariantly constant decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CovConstBlock {
    pub slope: Rational,
    pub pair: Option<ChernPair>,
}

/// Covariantly constant decomposition `Ker Φ* ⊕ E' ⊕ Ker Φ`.
///
/// `lambda_over_pi` is `λ/π` where `ΦΦ* = λ Id` on `E'`; it is exact because
/// `λ = π(τ − τ')`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CovConstTriple {
    pub ker_phi_star: Option<CovConstBlock>,
    pub prime_part: Option<CovConstBlock>,
    pub ker_phi: Option<CovConstBlock>,
    pub lambda_over_pi: Option<Rational>,
}

impl CovConstTriple {
    pub fn blocks(&self) -> [Option<CovConstBlock>; 3] {
        [self.ker_phi_star, self.prime_part, self.ker_phi]
    }

    pub fn slopes(&self) -> Vec<Rational> {
        self.blocks().iter().flatten().map(|b| b.slope).collect()
    }
}

/// Block slopes `τ, (τ+τ')/2, τ'` and `λ = π(τ − τ')`.
pub fn cov_const_slopes(v: &VortexParams) -> CovConstTriple {
    let block = |slope| Some(CovConstBlock { slope, pair: None });
    CovConstTriple {
        ker_phi_star: block(v.tau),
        prime_part: block((v.tau + v.tau_prime) / 2),
        ker_phi: block(v.tau_prime),
        lambda_over_pi: Some(v.tau - v.tau_prime),
    }
}

/// Result of transforming a covariantly constant triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NahmCovConst {
    pub transformed: CovConstTriple,
    pub solvable: bool,
    pub tau_hat: Option<Rational>,
    pub it_index: ITIndex,
}

fn common_sign(v: &VortexParams) -> Result<ITIndex, VortexError> {
    let (a, b) = (v.tau.signum(), v.tau_prime.signum());
    if a.is_zero() || a != b {
        return Err(VortexError::MixedSigns);
    }
    Ok(if a.is_positive() { ITIndex::Zero } else { ITIndex::One })
}

/// Slopes after the transform are `−1/τ, −2/(τ+τ'), −1/τ'`. The transformed
/// triple solves the coupled equations for some `τ̂` exactly when `τ = τ'`,
/// since only then is the middle slope the mean of the outer two.
pub fn nahm_cov_const(c: &CovConstTriple, v: &VortexParams) -> Result<NahmCovConst, VortexError> {
    let i = common_sign(v)?;
    let map = |b: Option<CovConstBlock>| {
        b.map(|b| CovConstBlock {
            slope: -b.slope.recip(),
            pair: b.pair.map(|p| fm_pair(p, i)),
        })
    };
    if c.blocks().iter().all(Option::is_none) {
        return Err(VortexError::Empty);
    }
    let solvable = v.tau == v.tau_prime;
    let tau_hat = solvable.then(|| -v.tau.recip());
    Ok(NahmCovConst {
        transformed: CovConstTriple {
            ker_phi_star: map(c.ker_phi_star),
            prime_part: map(c.prime_part),
            ker_phi: map(c.ker_phi),
            lambda_over_pi: solvable.then(Rational::zero),
        },
        solvable,
        tau_hat,
        it_index: i,
    })
}

/// The three blocks of `T = (F1,0,0) ⊕ (F,F,Id) ⊕ (0,F2,0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockKind {
    KerPhiStar,
    IsoPair,
    KerPhi,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockTriple {
    pub blocks: Vec<(BlockKind, ChernPair)>,
}

impl BlockTriple {
    /// Type `(n1, n2, d1, d2)` of the assembled triple.
    pub fn triple_type(&self) -> TripleType {
        let mut t = TripleType {
            n1: 0,
            n2: 0,
            d1: 0,
            d2: 0,
        };
        for (kind, p) in &self.blocks {
            if matches!(kind, BlockKind::KerPhiStar | BlockKind::IsoPair) {
                t.n1 += p.rank;
                t.d1 += p.degree;
            }
            if matches!(kind, BlockKind::IsoPair | BlockKind::KerPhi) {
                t.n2 += p.rank;
                t.d2 += p.degree;
            }
        }
        t
    }

    fn block(&self, kind: BlockKind) -> Option<ChernPair> {
        self.blocks.iter().find(|(k, _)| *k == kind).map(|(_, p)| *p)
    }

    pub fn cov_const(&self) -> CovConstTriple {
        let b = |kind| {
            self.block(kind).map(|p| CovConstBlock {
                slope: p.slope(),
                pair: Some(p),
            })
        };
        let lambda = match (self.block(BlockKind::KerPhiStar), self.block(BlockKind::KerPhi)) {
            (Some(a), Some(c)) => Some(a.slope() - c.slope()),
            _ => None,
        };
        CovConstTriple {
            ker_phi_star: b(BlockKind::KerPhiStar),
            prime_part: b(BlockKind::IsoPair),
            ker_phi: b(BlockKind::KerPhi),
            lambda_over_pi: lambda,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolystabilityVerdict {
    NotPolystableAfterTransform,
}

/// Witness that polystability is not preserved by the transform.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub blocks: BlockTriple,
    pub params: VortexParams,
    pub transform: NahmCovConst,
    pub verdict: PolystabilityVerdict,
}

/// Minimal coprime pair `(q, p)` of slope `p/q`.
fn minimal_pair(mu: Rational) -> ChernPair {
    ChernPair::new(*mu.denom(), *mu.numer())
}

/// Builds `F1, F, F2` of slopes `μ1, (μ1+μ2)/2, μ2` with minimal denominators,
/// assembles `(F1,0,0) ⊕ (F,F,Id) ⊕ (0,F2,0)`, which solves the coupled
/// equations with `τ = μ1, τ' = μ2`, and certifies that its transform does not.
pub fn polystability_counterexample(
    mu1: Rational,
    mu2: Rational,
) -> Result<Counterexample, VortexError> {
    if mu1 <= mu2 {
        return Err(VortexError::SlopeOrder);
    }
    let mid = (mu1 + mu2) / 2;
    let pairs = [minimal_pair(mu1), minimal_pair(mid), minimal_pair(mu2)];
    let sign = pairs[0].degree.signum();
    if sign == 0 || pairs.iter().any(|p| p.degree.signum() != sign) {
        return Err(VortexError::NotRepresentable);
    }
    let blocks = BlockTriple {
        blocks: vec![
            (BlockKind::KerPhiStar, pairs[0]),
            (BlockKind::IsoPair, pairs[1]),
            (BlockKind::KerPhi, pairs[2]),
        ],
    };
    let params = VortexParams::new(blocks.triple_type(), mu1, mu2)?;
    let transform = nahm_cov_const(&blocks.cov_const(), &params)?;
    debug_assert!(!transform.solvable);
    Ok(Counterexample {
        blocks,
        params,
        transform,
        verdict: PolystabilityVerdict::NotPolystableAfterTransform,
    })
}

/// Bound on `ΦΦ*/2π` for a covariantly constant triple: `λ/2π = (τ − τ')/2`.
pub fn cov_const_phi_bound(v: &VortexParams) -> Rational {
    (v.tau - v.tau_prime) / 2
}

/// Vanishing criterion. With `φ ≥ ΦΦ*/2π` pointwise:
/// IT_0 when `τ > 0`, `τ' > 0` and `τ > φ` (so `2πτ − ΦΦ* > 0`);
/// IT_1 when `τ < 0`, `τ' < 0` and `τ' + φ < 0` (so `2πτ' + Φ*Φ < 0`).
pub fn vanishing_check(v: &VortexParams, phi_norm_sq_max: Rational) -> Result<ITIndex, VortexError> {
    let zero = Rational::zero();
    if v.tau > zero && v.tau_prime > zero && v.tau > phi_norm_sq_max {
        return Ok(ITIndex::Zero);
    }
    if v.tau < zero && v.tau_prime < zero && v.tau_prime + phi_norm_sq_max < zero {
        return Ok(ITIndex::One);
    }
    Err(VortexError::Indeterminate)
}

/// Consistency of `τ` with the α-slope of the triple.
pub fn tau_matches_alpha_slope(v: &VortexParams) -> bool {
    alpha_slope(&v.triple, v.alpha) == v.tau
}
