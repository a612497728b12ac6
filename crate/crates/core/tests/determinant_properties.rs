use std::f64::consts::{FRAC_1_PI, PI};

use proptest::prelude::*;

use nanoloop_core::determinant::{
    delta_consistency, det_rectangular, det_shorted_triangular, numeric_det, numeric_factor, trig_form,
    AiryEnds, BoundaryMatrix,
};
use nanoloop_core::kinematics::{decay_constant, wavenumber, BarrierKinematics, CircuitSpec};

fn circuit() -> impl Strategy<Value = CircuitSpec> {
    (0.2f64..2.0, 0.02f64..0.98, 0.05f64..1.0, 1.0f64..100.0, 0usize..4).prop_map(|(v0, f, len, xi, m)| {
        let e = v0 * f;
        match m {
            0 => CircuitSpec::rectangular(e, v0, len),
            1 => CircuitSpec::triangular(e, v0, 2.0 * len),
            2 => CircuitSpec::scaled_rectangular(e, v0, len, xi),
            _ => CircuitSpec::delta(e, v0 * len),
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn closed_forms_are_two_pi_periodic(c in circuit(), theta in -4.0 * PI..0.0) {
        let kin = c.kinematics().unwrap();
        let form = trig_form(&kin).unwrap();
        let a = form.eval(theta);
        let b = form.eval(theta - 2.0 * PI);
        prop_assert!((a.value - b.value).abs() <= 1e-12 * a.scale.max(1.0));
        if !matches!(kin.barrier, BarrierKinematics::Delta) {
            let na = numeric_det(&kin, theta).unwrap();
            let nb = numeric_det(&kin, theta - 2.0 * PI).unwrap();
            prop_assert!((na.value - nb.value).abs() <= 1e-9 * na.scale.max(1.0));
        }
    }

    #[test]
    fn numeric_determinant_matches_closed_form(c in circuit(), theta in -4.0 * PI - 1.0..0.0) {
        let kin = c.kinematics().unwrap();
        let closed = trig_form(&kin).unwrap().eval(theta);
        let numeric = numeric_det(&kin, theta).unwrap();
        let expected = match kin.barrier {
            BarrierKinematics::Delta => 4.0 * kin.k * theta.sin() * closed.value,
            _ => numeric_factor(&kin) * closed.value,
        };
        let scale = match kin.barrier {
            BarrierKinematics::Delta => 4.0 * kin.k,
            _ => numeric_factor(&kin) * closed.scale.max(1.0),
        };
        prop_assert!((numeric.value - expected).abs() <= 1e-10 * scale.max(1.0),
            "{c:?} theta {theta}: numeric {} vs {expected}", numeric.value);
    }

    /// The rectangular amplitude always reaches the constant term:
    /// p² + q² − r² = sinh²Φ (β/k + k/β)².
    #[test]
    fn rectangular_amplitude_identity(v0 in 0.1f64..5.0, f in 0.01f64..0.99, b in 0.01f64..2.0) {
        let e = v0 * f;
        let kin = CircuitSpec::rectangular(e, v0, b).kinematics().unwrap();
        let form = trig_form(&kin).unwrap();
        let (k, beta) = (wavenumber(e).unwrap(), decay_constant(e, v0).unwrap());
        let phi = beta * b;
        let lhs = form.amplitude().powi(2) - form.constant.powi(2);
        let rhs = (phi.sinh() * (beta / k + k / beta)).powi(2);
        prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(form.amplitude().powi(2)));
        prop_assert!(form.amplitude() >= form.constant.abs());
    }

    /// sin²Θ + cos²Θ = 1 recovered from the form at three phases.
    #[test]
    fn trig_form_coefficients_are_recoverable(c in circuit()) {
        let kin = c.kinematics().unwrap();
        let form = trig_form(&kin).unwrap();
        let at = |t: f64| form.eval(t).value;
        let r = 0.5 * (at(0.0) + at(-PI));
        let q = at(0.0) - r;
        let p = at(-1.5 * PI) - r;
        let tol = 1e-12 * (form.amplitude() + form.constant.abs()).max(1.0);
        prop_assert!((p - form.sin).abs() <= tol && (q - form.cos).abs() <= tol && (r - form.constant).abs() <= tol);
        for t in [-0.3, -2.0, -5.5] {
            let (s, co) = f64::sin_cos(t);
            prop_assert!((s * s + co * co - 1.0).abs() < 1e-15);
            prop_assert!((at(t) - (p * s + q * co + r)).abs() <= 10.0 * tol);
        }
    }

    #[test]
    fn triangular_constant_is_wronskian_multiple(r in 0.1f64..10.0, k in -8.0f64..0.0, x in 0.0f64..8.0) {
        let ends = AiryEnds::at(k, x).unwrap();
        let form = nanoloop_core::determinant::triangular_form(r, &ends);
        prop_assert!((form.constant + 2.0 * r * FRAC_1_PI).abs() <= 1e-10 * r.max(1.0) * ends.far.bi.abs().max(1.0));
    }
}

#[test]
fn shorted_determinant_vanishes_on_the_diagonal() {
    for &t in &[-3.0, -1.0, 0.0, 0.5, 2.0] {
        let d = det_shorted_triangular(t, t, 1.0).unwrap();
        assert!(d.value.abs() <= 1e-12 * d.scale.max(1.0), "K = X = {t}: {}", d.value);
    }
}

#[test]
fn half_height_determinant_reduces_to_sech() {
    let kin = CircuitSpec::rectangular(0.5, 1.0, 0.3).kinematics().unwrap();
    let phi = match kin.barrier {
        BarrierKinematics::Rectangular { phi, .. } => phi,
        _ => unreachable!(),
    };
    let theta = -(1.0 / phi.cosh()).acos();
    assert!(det_rectangular(&kin, theta).unwrap().value.abs() < 1e-14);
}

#[test]
fn delta_matrix_is_a_tangential_double_zero() {
    let k = wavenumber(0.5).unwrap();
    for n in 1..=3 {
        let theta = -(n as f64) * PI;
        let m = BoundaryMatrix::delta(k, theta);
        assert!(m.determinant().abs() < 1e-12);
        assert!(delta_consistency(theta).value.abs() < 1e-12);
        let eps = 1e-3;
        let left = BoundaryMatrix::delta(k, theta - eps).determinant();
        let right = BoundaryMatrix::delta(k, theta + eps).determinant();
        assert!(left > 0.0 && right > 0.0, "no sign change across -{n}pi");
    }
}
