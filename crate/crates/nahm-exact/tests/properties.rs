use std::collections::BTreeSet;

use nahm_exact::invariants::{
    fm_transform_class, it_class, moduli_descriptor, slope, transformed_moduli_descriptor,
    BundleClass, ChernPair, CurvePoint, ITIndex, Summand,
};
use nahm_exact::triple_stability::{
    alpha_slope, alpha_window, check_large_alpha_preservation, check_small_alpha_preservation,
    critical_values, transform_triple_type, AlphaBound, TripleType,
};
use nahm_exact::vortex::{
    alpha_from_tau, cov_const_slopes, nahm_cov_const, polystability_counterexample,
    tau_from_alpha, VortexParams,
};
use nahm_exact::{int, rat, Rational};
use num_integer::Integer;
use proptest::prelude::*;

fn coprime_pairs(bound: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for r in 1..=bound {
        for d in -bound..=bound {
            if d != 0 && r.gcd(&d) == 1 {
                out.push((r, d));
            }
        }
    }
    out
}

#[test]
fn double_transform_sign_law_is_exhaustive_on_small_pairs() {
    for (r, d) in coprime_pairs(6) {
        let p = ChernPair::new(r, d);
        assert_eq!(p.raw_index_pair().raw_index_pair(), p.neg());
        let b = BundleClass::stable(r, d).unwrap();
        let (once, i) = fm_transform_class(&b).unwrap();
        let (twice, j) = fm_transform_class(&once).unwrap();
        assert_eq!(twice, b, "({r},{d})");
        assert_eq!(j, i.flip());
        assert_eq!(slope(&once).unwrap(), -slope(&b).unwrap().recip());
        assert_eq!(once.total().h(), p.h());
        let m = moduli_descriptor(r, d).unwrap();
        let mt = transformed_moduli_descriptor(r, d).unwrap();
        assert_eq!(m.h, mt.h);
    }
}

fn point() -> impl Strategy<Value = Option<CurvePoint>> {
    prop::option::of((0i64..12, 0i64..12).prop_map(|(a, b)| {
        CurvePoint::new(rat(a, 12), rat(b, 12)).unwrap()
    }))
}

fn it_class_strategy() -> impl Strategy<Value = BundleClass> {
    let pair = (1i64..=6, 1i64..=6).prop_filter("coprime", |(r, d)| r.gcd(d) == 1);
    (prop::collection::vec((pair, 1u32..4, point()), 1..5), any::<bool>()).prop_map(
        |(items, negative)| {
            let summands = items
                .into_iter()
                .map(|((r, d), m, p)| {
                    let d = if negative { -d } else { d };
                    Summand::new(ChernPair::new(r, d), m, p).unwrap()
                })
                .collect();
            BundleClass::new(summands, false).unwrap()
        },
    )
}

proptest! {
    #[test]
    fn transform_of_sums_is_involutive(b in it_class_strategy()) {
        let (once, i) = fm_transform_class(&b).unwrap();
        let (twice, j) = fm_transform_class(&once).unwrap();
        prop_assert_eq!(&twice, &b);
        prop_assert_eq!(j, i.flip());
        prop_assert_eq!(it_class(&once).unwrap(), i.flip());
        for (s, t) in b.summands().iter().zip(once.summands()) {
            prop_assert_eq!(s.point, t.point);
            prop_assert_eq!(s.multiplicity, t.multiplicity);
            prop_assert_eq!(t.pair.slope(), -s.pair.slope().recip());
        }
    }
}

fn it_types(bound: i64) -> Vec<TripleType> {
    let mut out = Vec::new();
    for n1 in 1..=bound {
        for n2 in 1..=bound {
            for d1 in -bound..=bound {
                for d2 in -bound..=bound {
                    if d1 != 0 && d2 != 0 && d1.signum() == d2.signum() {
                        out.push(TripleType::new(n1, n2, d1, d2).unwrap());
                    }
                }
            }
        }
    }
    out
}

#[test]
fn dimension_invariant_is_preserved() {
    let types = it_types(5);
    assert_eq!(types.len(), 1250);
    for t in types {
        let (s, i) = transform_triple_type(&t).unwrap();
        assert_eq!(s.dimension_invariant(), t.dimension_invariant(), "{t}");
        let (back, j) = transform_triple_type(&s).unwrap();
        assert_eq!(back, t);
        assert_eq!(j, i.flip());
    }
}

/// Independent scan: every rational with small denominator in the open
/// window is tested against every subtype directly.
fn brute_force_criticals(t: &TripleType) -> BTreeSet<Rational> {
    let w = alpha_window(t).unwrap();
    let hi = w.alpha_upper.finite().unwrap();
    let n = t.n1 + t.n2;
    let qmax = n * t.n1.max(t.n2);
    let mut mesh = BTreeSet::new();
    for q in 1..=qmax {
        let lo_p = (w.alpha_m * q).floor().to_integer();
        let hi_p = (hi * q).ceil().to_integer();
        for p in lo_p..=hi_p {
            let a = rat(p, q);
            if a > w.alpha_m && a < hi {
                mesh.insert(a);
            }
        }
    }
    let mut found = BTreeSet::new();
    for a in mesh {
        let target = alpha_slope(t, a);
        'search: for n1p in 0..=t.n1 {
            for n2p in 0..=t.n2 {
                if (n1p, n2p) == (0, 0) || (n1p, n2p) == (t.n1, t.n2) {
                    continue;
                }
                // Only d1' + d2' enters the α-slope.
                for dp in -40..=40 {
                    let sub = TripleType { n1: n1p, n2: n2p, d1: dp, d2: 0 };
                    if alpha_slope(&sub, a) == target {
                        found.insert(a);
                        break 'search;
                    }
                }
            }
        }
    }
    found
}

#[test]
fn critical_values_match_brute_force_scan() {
    let cases = [
        (2, 1, 1, 0),
        (2, 1, 3, 0),
        (3, 1, 4, 1),
        (3, 2, 5, 1),
        (1, 2, 3, 0),
        (3, 1, 5, -2),
        (2, 3, 4, 1),
    ];
    for (n1, n2, d1, d2) in cases {
        let t = TripleType::new(n1, n2, d1, d2).unwrap();
        let got: BTreeSet<_> = critical_values(&t).unwrap().into_iter().collect();
        assert_eq!(got, brute_force_criticals(&t), "{t}");
    }
    assert_eq!(
        brute_force_criticals(&TripleType::new(2, 1, 3, 0).unwrap()),
        [int(3), rat(9, 2)].into_iter().collect()
    );
}

#[test]
fn window_consistency_over_small_types() {
    for n1 in 1..=4 {
        for n2 in 1..=4 {
            if n1 == n2 {
                continue;
            }
            for d1 in -4..=4 {
                for d2 in -4..=4 {
                    let t = TripleType::new(n1, n2, d1, d2).unwrap();
                    let Ok(w) = alpha_window(&t) else { continue };
                    let AlphaBound::Finite(hi) = w.alpha_upper else { unreachable!() };
                    assert!(w.alpha_m <= w.alpha_l);
                    for c in &w.criticals {
                        assert!(*c > w.alpha_m && *c < hi, "{t}: {c}");
                    }
                    assert!(w.criticals.windows(2).all(|p| p[0] < p[1]));
                }
            }
        }
    }
}

#[test]
fn small_alpha_hypotheses_are_closed_under_the_transform() {
    for t in it_types(5) {
        let s = check_small_alpha_preservation(&t);
        if s.applies {
            let back = check_small_alpha_preservation(&s.transformed.unwrap());
            assert!(back.applies, "{t}");
        }
    }
}

#[test]
fn large_alpha_verdicts_carry_the_transformed_type() {
    let mut applied = 0;
    for t in it_types(5) {
        let l = check_large_alpha_preservation(&t);
        assert_eq!(l.applies, l.transformed.is_some());
        if let Some(s) = l.transformed {
            applied += 1;
            assert_eq!(s.dimension_invariant(), t.dimension_invariant());
            assert_eq!(transform_triple_type(&t).unwrap().0, s);
        }
    }
    assert!(applied > 0);
}

fn rational(range: i64, den: i64) -> impl Strategy<Value = Rational> {
    (-range..=range, 1..=den).prop_map(|(p, q)| rat(p, q))
}

fn positive_rational(range: i64, den: i64) -> impl Strategy<Value = Rational> {
    (1..=range, 1..=den).prop_map(|(p, q)| rat(p, q))
}

fn triple_strategy() -> impl Strategy<Value = TripleType> {
    (0i64..6, 1i64..6, -8i64..8, -8i64..8)
        .prop_map(|(n1, n2, d1, d2)| TripleType::new(n1, n2, d1, d2).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn vortex_identities(t in triple_strategy(), a in positive_rational(40, 9)) {
        let v = tau_from_alpha(&t, a).unwrap();
        prop_assert_eq!(v.tau - v.tau_prime, a);
        prop_assert_eq!(v.tau, alpha_slope(&t, a));
        prop_assert_eq!(
            v.tau * t.n1 + v.tau_prime * t.n2,
            Rational::from_integer(t.d1 + t.d2)
        );
        prop_assert_eq!(alpha_from_tau(&t, v.tau).unwrap(), v);
    }

    #[test]
    fn alpha_slope_is_affine(t in triple_strategy(), a in rational(20, 7), b in rational(20, 7)) {
        let slope = Rational::new(t.n2, t.n1 + t.n2);
        prop_assert_eq!(alpha_slope(&t, b) - alpha_slope(&t, a), slope * (b - a));
    }
}

fn tau_grid() -> Vec<Rational> {
    (1..=12).map(|k| rat(k, 3)).collect()
}

#[test]
fn solvability_iff_equal_taus() {
    for &tau in &tau_grid() {
        for &tau_prime in &tau_grid() {
            if tau < tau_prime {
                continue;
            }
            let v = VortexParams::from_taus(tau, tau_prime).unwrap();
            let r = nahm_cov_const(&cov_const_slopes(&v), &v).unwrap();
            let s = r.transformed.slopes();
            let all_equal = s.iter().all(|x| *x == s[0]);
            let mean_ok = s[1] == (s[0] + s[2]) / 2;
            assert_eq!(r.solvable, tau == tau_prime);
            assert_eq!(r.solvable, all_equal);
            assert_eq!(r.solvable, mean_ok);
        }
    }
}

#[test]
fn counterexamples_are_sound_on_a_grid() {
    let grid = tau_grid();
    for &mu1 in &grid {
        for &mu2 in &grid {
            if mu1 <= mu2 {
                continue;
            }
            let c = polystability_counterexample(mu1, mu2).unwrap();
            let cc = c.blocks.cov_const();
            assert_eq!(cc.slopes(), vec![mu1, (mu1 + mu2) / 2, mu2]);
            let t = c.blocks.triple_type();
            assert_eq!(
                mu1 * t.n1 + mu2 * t.n2,
                Rational::from_integer(t.d1 + t.d2)
            );
            assert!(!c.transform.solvable);
            for (_, p) in &c.blocks.blocks {
                assert_eq!(p.h(), 1);
            }
        }
    }
}

#[test]
fn slope_map_is_an_involution_on_equal_taus() {
    for &tau in &tau_grid() {
        let v = VortexParams::from_taus(tau, tau).unwrap();
        let r = nahm_cov_const(&cov_const_slopes(&v), &v).unwrap();
        let th = r.tau_hat.unwrap();
        let v2 = VortexParams::from_taus(th, th).unwrap();
        let r2 = nahm_cov_const(&r.transformed, &v2).unwrap();
        assert_eq!(r2.transformed.slopes(), vec![tau; 3]);
        assert_eq!(r.it_index, ITIndex::Zero);
        assert_eq!(r2.it_index, ITIndex::One);
    }
}
