use std::f64::consts::FRAC_1_PI;

use proptest::prelude::*;

use nanoloop_core::airy::{airy_eval, airy_oracle, AIRY_LIMIT};
use nanoloop_core::Error;

fn close(got: f64, want: f64, tol: f64) -> bool {
    (got - want).abs() <= tol * want.abs().max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn wronskian_is_one_over_pi(x in -15.0f64..15.0) {
        let w = airy_eval(x).unwrap().wronskian();
        prop_assert!((w - FRAC_1_PI).abs() <= 1e-12 * FRAC_1_PI, "x = {x}: W = {w}");
    }

    #[test]
    fn derivatives_match_central_differences(x in -10.0f64..10.0) {
        let h = 1e-4;
        let lo = airy_eval(x - h).unwrap();
        let hi = airy_eval(x + h).unwrap();
        let mid = airy_eval(x).unwrap();
        let dai = (hi.ai - lo.ai) / (2.0 * h);
        let dbi = (hi.bi - lo.bi) / (2.0 * h);
        prop_assert!((dai - mid.aip).abs() <= 1e-6 * mid.aip.abs().max(1.0), "Ai' at {x}");
        prop_assert!((dbi - mid.bip).abs() <= 1e-6 * mid.bip.abs().max(1.0), "Bi' at {x}");
    }

    #[test]
    fn airy_equation_holds_through_second_differences(x in -10.0f64..10.0) {
        let h = 1e-3;
        let lo = airy_eval(x - h).unwrap();
        let hi = airy_eval(x + h).unwrap();
        let mid = airy_eval(x).unwrap();
        let d2 = (hi.aip - lo.aip) / (2.0 * h);
        prop_assert!((d2 - x * mid.ai).abs() <= 1e-5 * (x * mid.ai).abs().max(1.0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn evaluator_agrees_with_ode_oracle(x in -12.0f64..6.0) {
        let got = airy_eval(x).unwrap().as_array();
        let want = airy_oracle(x, 0.05).unwrap().as_array();
        for (g, w) in got.iter().zip(want) {
            prop_assert!(close(*g, w, 1e-10), "x = {x}: {g} vs {w}");
        }
    }
}

fn zeros(f: impl Fn(f64) -> f64, lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let mut out = Vec::new();
    let mut prev = (lo, f(lo));
    for i in 1..=n {
        let x = lo + (hi - lo) * i as f64 / n as f64;
        let v = f(x);
        if prev.1 * v < 0.0 {
            out.push(0.5 * (prev.0 + x));
        }
        prev = (x, v);
    }
    out
}

#[test]
fn zeros_of_ai_and_bi_interlace() {
    let ai = zeros(|x| airy_eval(x).unwrap().ai, -15.0, 0.0, 30_000);
    let bi = zeros(|x| airy_eval(x).unwrap().bi, -15.0, 0.0, 30_000);
    assert_eq!(ai.len(), 12);
    assert_eq!(bi.len(), 13);
    let mut merged: Vec<(f64, char)> = ai.iter().map(|&x| (x, 'a')).chain(bi.iter().map(|&x| (x, 'b'))).collect();
    merged.sort_by(|p, q| p.0.total_cmp(&q.0));
    for w in merged.windows(2) {
        assert_ne!(w[0].1, w[1].1, "consecutive zeros of the same function near {}", w[0].0);
    }
    // First zeros, from 40-digit references.
    assert!((ai.last().unwrap() + 2.338_107_410_459_767).abs() < 1e-3);
    assert!((bi.last().unwrap() + 1.173_713_222_709_128).abs() < 1e-3);
}

#[test]
fn positive_axis_is_monotone() {
    let mut prev = airy_eval(0.0).unwrap();
    for i in 1..=2000 {
        let q = airy_eval(i as f64 * 0.01).unwrap();
        assert!(q.ai < prev.ai && q.bi > prev.bi, "at x = {}", i as f64 * 0.01);
        assert!(q.ai > 0.0 && q.aip < 0.0 && q.bip > 0.0);
        prev = q;
    }
}

#[test]
fn overflow_is_reported_not_returned() {
    assert!(matches!(airy_eval(AIRY_LIMIT + 1.0), Err(Error::AiryOverflow { .. })));
    assert!(airy_eval(f64::NAN).is_err());
    let msg = airy_eval(200.0).unwrap_err().to_string();
    assert!(msg.contains("Bi overflows"), "{msg}");
}
