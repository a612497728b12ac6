//! Independent reference values for Ai, Bi, Ai′, Bi′ by direct integration
//! of `y″ = x·y` from the origin.
//!
//! Each fixed step advances the state `(y, y′)` with a local Taylor
//! polynomial of order [`ORDER`], built from the recurrence the ODE imposes
//! on the Taylor coefficients about the current point. The starting values
//! come from the Gamma function, not from stored constants. Used by the
//! test suites to certify [`super::airy_eval`].

use crate::error::{Error, Result};

use super::AiryQuad;

/// Largest |x| the oracle is trusted for.
pub const ORACLE_LIMIT: f64 = 20.0;

/// Number of Taylor coefficients per step.
pub const ORDER: usize = 28;

/// Values at x = 0 from `Ai(0) = 3^(−2/3)/Γ(2/3)` and `Ai′(0) = −3^(−1/3)/Γ(1/3)`.
pub fn initial_values() -> AiryQuad {
    let ai = 3f64.powf(-2.0 / 3.0) / libm::tgamma(2.0 / 3.0);
    let aip = -(3f64.powf(-1.0 / 3.0) / libm::tgamma(1.0 / 3.0));
    let sqrt3 = 3f64.sqrt();
    AiryQuad {
        ai,
        bi: sqrt3 * ai,
        aip,
        bip: sqrt3 * aip.abs(),
    }
}

/// One Taylor step of length `h` from `x0` for a single solution `(y, y′)`.
fn step(x0: f64, h: f64, y: f64, yp: f64) -> (f64, f64) {
    let mut a = [0.0f64; ORDER];
    a[0] = y;
    a[1] = yp;
    a[2] = x0 * y / 2.0;
    for n in 1..ORDER - 2 {
        a[n + 2] = (x0 * a[n] + a[n - 1]) / (((n + 2) * (n + 1)) as f64);
    }
    // Horner for y(x0+h) and y′(x0+h).
    let mut val = 0.0;
    let mut der = 0.0;
    for n in (0..ORDER).rev() {
        val = val * h + a[n];
        if n >= 1 {
            der = der * h + n as f64 * a[n];
        }
    }
    (val, der)
}

/// Integrates from 0 to `x` with steps no longer than `max_step`.
pub fn airy_oracle(x: f64, max_step: f64) -> Result<AiryQuad> {
    if !x.is_finite() || x.abs() > ORACLE_LIMIT {
        return Err(Error::OracleRange {
            x,
            limit: ORACLE_LIMIT,
        });
    }
    if !(max_step > 0.0) || max_step > 0.5 {
        return Err(Error::Domain(format!(
            "oracle step must lie in (0, 0.5], got {max_step}"
        )));
    }
    let mut q = initial_values();
    if x == 0.0 {
        return Ok(q);
    }
    let n = (x.abs() / max_step).ceil() as usize;
    let h = x / n as f64;
    for i in 0..n {
        let x0 = i as f64 * h;
        let (ai, aip) = step(x0, h, q.ai, q.aip);
        let (bi, bip) = step(x0, h, q.bi, q.bip);
        q = AiryQuad { ai, bi, aip, bip };
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn origin_is_returned_exactly() {
        let q = airy_oracle(0.0, 0.1).unwrap();
        assert_eq!(q, initial_values());
        assert!((q.ai - 0.3550280539).abs() < 1e-9);
        assert!((q.bi - 0.6149266274).abs() < 1e-9);
        assert!((q.aip + 0.2588194038).abs() < 1e-9);
        assert!((q.bip - 0.4482883574).abs() < 1e-9);
    }

    #[test]
    fn step_halving_is_converged() {
        for &x in &[-5.0, -1.0, 1.0, 2.5] {
            let coarse = airy_oracle(x, 0.1).unwrap();
            let fine = airy_oracle(x, 0.05).unwrap();
            for (a, b) in coarse.as_array().iter().zip(fine.as_array()) {
                assert!((a - b).abs() < 1e-12 * b.abs().max(1.0), "x={x}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn range_guard() {
        assert!(matches!(airy_oracle(20.5, 0.1), Err(Error::OracleRange { .. })));
        assert!(airy_oracle(1.0, 0.0).is_err());
        assert!(airy_oracle(1.0, 1.0).is_err());
    }
}
