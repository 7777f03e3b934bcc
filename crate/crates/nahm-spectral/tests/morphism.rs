use nahm_spectral::morphism::{transform_morphism, Multiplier};
use nahm_spectral::sweep::transform_sweep;
use nahm_spectral::torus::BundleSpec;
use nahm_spectral::{SpectralError, C64};

fn sweep(d: &[i64]) -> nahm_spectral::sweep::TransformSweep {
    transform_sweep(&BundleSpec::from_degrees(d).unwrap(), 8, 16).unwrap()
}

#[test]
fn scalar_morphism_transforms_to_a_scalar() {
    let s = sweep(&[2]);
    let c = C64::new(0.6, -1.3);
    let f = transform_morphism(&s, &s, &Multiplier::Scalar(c)).unwrap();
    for m in &f.matrices {
        let gram = m.adjoint() * m;
        for i in 0..2 {
            for j in 0..2 {
                let expect = if i == j { c.norm_sqr() } else { 0.0 };
                assert!((gram[(i, j)] - expect).norm() < 1e-8);
            }
        }
    }
    let z = transform_morphism(&s, &s, &Multiplier::Scalar(C64::new(0.0, 0.0))).unwrap();
    assert!(z.singular_values.iter().flatten().all(|&x| x < 1e-14));
}

#[test]
fn theta_morphism_has_low_rank_and_bounded_slope() {
    let (one, two) = (sweep(&[1]), sweep(&[2]));
    let f = transform_morphism(&two, &one, &Multiplier::Theta { level: 1, residue: 0 }).unwrap();
    assert!(f.max_rank(1e-8) <= 1);
    assert!(f.singular_values.iter().all(|s| s[0] > 1e-3));
    assert!(f.max_singular_slope().is_finite() && f.max_singular_slope() < 50.0);
}

#[test]
fn mismatched_inputs_are_rejected() {
    let (one, two) = (sweep(&[1]), sweep(&[2]));
    let small = transform_sweep(&BundleSpec::from_degrees(&[1]).unwrap(), 9, 16).unwrap();
    let scalar = Multiplier::Scalar(C64::new(1.0, 0.0));
    assert!(matches!(transform_morphism(&two, &one, &scalar), Err(SpectralError::ShapeMismatch(_))));
    assert!(matches!(transform_morphism(&one, &small, &scalar), Err(SpectralError::ShapeMismatch(_))));
    let wrong = Multiplier::Theta { level: 2, residue: 0 };
    assert!(matches!(transform_morphism(&two, &one, &wrong), Err(SpectralError::ShapeMismatch(_))));
}
