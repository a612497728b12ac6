//! Large-|x| asymptotic expansions in ζ = (2/3)|x|^(3/2).
//!
//! Coefficients follow `u₀ = 1`,
//! `uₖ = uₖ₋₁ (6k−5)(6k−3)(6k−1) / ((2k−1)·216·k)` and
//! `vₖ = −(6k+1)/(6k−1)·uₖ`. The series are summed until the terms stop
//! shrinking or fall below the double-precision floor; at |x| ≥ 9 the
//! smallest term is already below `exp(−2ζ) ≈ 2e-16`.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use super::AiryQuad;

const MAX_TERMS: usize = 60;

struct Coefficients {
    u: [f64; MAX_TERMS],
    v: [f64; MAX_TERMS],
}

fn coefficients() -> Coefficients {
    let mut u = [0.0; MAX_TERMS];
    let mut v = [0.0; MAX_TERMS];
    u[0] = 1.0;
    v[0] = 1.0;
    for k in 1..MAX_TERMS {
        let kf = k as f64;
        u[k] = u[k - 1] * (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0)
            / ((2.0 * kf - 1.0) * 216.0 * kf);
        v[k] = -(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * u[k];
    }
    Coefficients { u, v }
}

/// Sums `Σ sign(k)·c[k]/ζᵏ` over the index set `ks`, truncating at the
/// smallest term.
fn truncated_sum(c: &[f64], zeta: f64, ks: impl Iterator<Item = usize>, alternate: bool) -> f64 {
    let mut sum = 0.0;
    let mut last = f64::INFINITY;
    for (j, k) in ks.enumerate() {
        if k >= c.len() {
            break;
        }
        let mag = c[k] / zeta.powi(k as i32);
        if mag.abs() > last {
            break;
        }
        let sign = if alternate && j % 2 == 1 { -1.0 } else { 1.0 };
        sum += sign * mag;
        if mag.abs() < 1e-18 * sum.abs() {
            break;
        }
        last = mag.abs();
    }
    sum
}

pub(crate) fn positive(x: f64) -> AiryQuad {
    let c = coefficients();
    let zeta = 2.0 / 3.0 * x * x.sqrt();
    let quarter = x.sqrt().sqrt();
    let sqrt_pi = PI.sqrt();

    // Ai uses (−1)ᵏ, Bi uses all-positive signs.
    let ai_sum = truncated_sum(&c.u, zeta, 0..MAX_TERMS, true);
    let aip_sum = truncated_sum(&c.v, zeta, 0..MAX_TERMS, true);
    let bi_sum = truncated_sum(&c.u, zeta, 0..MAX_TERMS, false);
    let bip_sum = truncated_sum(&c.v, zeta, 0..MAX_TERMS, false);

    let decay = (-zeta).exp();
    let growth = zeta.exp();
    AiryQuad {
        ai: decay / (2.0 * sqrt_pi * quarter) * ai_sum,
        aip: -quarter * decay / (2.0 * sqrt_pi) * aip_sum,
        bi: growth / (sqrt_pi * quarter) * bi_sum,
        bip: quarter * growth / sqrt_pi * bip_sum,
    }
}

/// Oscillatory expansions for `x = −z`, z > 0.
pub(crate) fn negative(x: f64) -> AiryQuad {
    let c = coefficients();
    let z = -x;
    let zeta = 2.0 / 3.0 * z * z.sqrt();
    let quarter = z.sqrt().sqrt();
    let sqrt_pi = PI.sqrt();

    let even = |coef: &[f64]| truncated_sum(coef, zeta, (0..MAX_TERMS).step_by(2), true);
    let odd = |coef: &[f64]| truncated_sum(coef, zeta, (1..MAX_TERMS).step_by(2), true);
    let (p, q) = (even(&c.u), odd(&c.u));
    let (r, s) = (even(&c.v), odd(&c.v));

    let (sz, cz) = zeta.sin_cos();
    // cos(ζ − π/4) and sin(ζ − π/4)
    let cph = (cz + sz) * FRAC_1_SQRT_2;
    let sph = (sz - cz) * FRAC_1_SQRT_2;

    let amp = 1.0 / (sqrt_pi * quarter);
    let damp = quarter / sqrt_pi;
    AiryQuad {
        ai: amp * (cph * p + sph * q),
        bi: amp * (-sph * p + cph * q),
        aip: damp * (sph * r - cph * s),
        bip: damp * (cph * r + sph * s),
    }
}
