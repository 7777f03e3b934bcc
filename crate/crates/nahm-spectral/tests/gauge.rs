use std::sync::OnceLock;

use faer::Mat;
use nahm_spectral::curvature::{berry_curvature, CurvatureMap};
use nahm_spectral::linalg::polar;
use nahm_spectral::morphism::{transform_morphism, Multiplier, MorphismField};
use nahm_spectral::sweep::{transform_sweep, TransformSweep};
use nahm_spectral::torus::BundleSpec;
use nahm_spectral::C64;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

struct Reference {
    one: TransformSweep,
    two: TransformSweep,
    curvature: CurvatureMap,
    scalar: MorphismField,
    theta: MorphismField,
}

const SCALAR: Multiplier = Multiplier::Scalar(C64 { re: 0.8, im: 0.3 });
const THETA: Multiplier = Multiplier::Theta { level: 1, residue: 0 };

fn reference() -> &'static Reference {
    static R: OnceLock<Reference> = OnceLock::new();
    R.get_or_init(|| {
        let one = transform_sweep(&BundleSpec::from_degrees(&[1]).unwrap(), 8, 16).unwrap();
        let two = transform_sweep(&BundleSpec::from_degrees(&[2]).unwrap(), 8, 16).unwrap();
        let curvature = berry_curvature(&two).unwrap();
        let scalar = transform_morphism(&two, &two, &SCALAR).unwrap();
        let theta = transform_morphism(&two, &one, &THETA).unwrap();
        Reference { one, two, curvature, scalar, theta }
    })
}

fn random_unitary(rng: &mut StdRng, k: usize) -> Mat<C64> {
    let m = Mat::from_fn(k, k, |_, _| C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5));
    polar(m.as_ref()).unwrap()
}

fn remix(sweep: &TransformSweep, rng: &mut StdRng) -> TransformSweep {
    let mut out = sweep.clone();
    for f in &mut out.frames {
        f.basis = &f.basis * random_unitary(rng, f.dim);
    }
    out
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn reported_quantities_are_gauge_invariant(seed in any::<u64>()) {
        let r = reference();
        let mut rng = StdRng::seed_from_u64(seed);
        let one = remix(&r.one, &mut rng);
        let two = remix(&r.two, &mut rng);

        let c = berry_curvature(&two).unwrap();
        prop_assert_eq!(c.chern, r.curvature.chern);
        prop_assert!(max_diff(&c.plaquette_phases, &r.curvature.plaquette_phases) < 1e-10);
        prop_assert!((c.mean_curvature_density - r.curvature.mean_curvature_density).abs() < 1e-10);
        prop_assert!((c.max_relative_deviation - r.curvature.max_relative_deviation).abs() < 1e-10);

        for (field, reference) in [
            (transform_morphism(&two, &two, &SCALAR).unwrap(), &r.scalar),
            (transform_morphism(&two, &one, &THETA).unwrap(), &r.theta),
        ] {
            for (s, t) in field.singular_values.iter().zip(&reference.singular_values) {
                prop_assert!(max_diff(s, t) < 1e-10);
            }
        }
    }
}
