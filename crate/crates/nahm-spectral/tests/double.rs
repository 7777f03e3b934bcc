use std::f64::consts::PI;

use nahm_spectral::double::double_transform_with;
use nahm_spectral::kernel::KernelSide;
use nahm_spectral::torus::LineBundleSpec;
use nahm_spectral::SpectralError;

#[test]
fn degree_one_returns_to_itself() {
    let spec = LineBundleSpec::untwisted(1).unwrap();
    let t = double_transform_with(&spec, 12, 32, 8).unwrap();
    assert_eq!(t.first.chern, -1);
    assert_eq!(t.second_side, KernelSide::Adjoint);
    assert_eq!(t.chern_pair, (1, 1));
    assert!((t.lambda_out - 2.0 * PI).abs() < 0.05 * 2.0 * PI);
    assert!((t.lambda_in - 2.0 * PI).abs() < 1e-15);
    assert!(t.min_gap_ratio >= 1e2);
}

#[test]
fn non_positive_degrees_are_rejected() {
    let spec = LineBundleSpec::untwisted(-1).unwrap();
    assert_eq!(double_transform_with(&spec, 8, 16, 8).unwrap_err(), SpectralError::NonPositiveDegree);
}
