//! Maclaurin expansion of Ai, Bi and their derivatives, summed in
//! double-double precision.
//!
//! With `f = Σ 3ᵏ(1/3)ₖ x³ᵏ/(3k)!` and `g = Σ 3ᵏ(2/3)ₖ x³ᵏ⁺¹/(3k+1)!`,
//!
//! ```text
//! Ai = c₁f − c₂g,   Bi = √3 (c₁f + c₂g),   c₁ = Ai(0), c₂ = −Ai′(0)
//! ```

use super::dd::Dd;
use super::AiryQuad;

const AI0: Dd = Dd::new(0.355_028_053_887_817_2, 2.052_336_324_362_12e-17);
const NEG_AIP0: Dd = Dd::new(0.258_819_403_792_806_8, -2.522_243_111_610_832e-17);
const SQRT3: Dd = Dd::new(1.732_050_807_568_877_2, 1.003_508_422_180_690_3e-16);

/// Relative size (against the largest term) below which summation stops.
const TAIL: f64 = 1e-34;
const MAX_TERMS: usize = 400;

pub(crate) fn maclaurin(x: f64) -> AiryQuad {
    let xd = Dd::from(x);
    let x3 = xd * xd * xd;

    // f, g and their derivative series, each as (term, sum).
    let mut t = Dd::ONE;
    let mut f = Dd::ONE;
    let mut u = xd;
    let mut g = xd;
    let mut d = xd * xd * Dd::from(0.5);
    let mut fp = d;
    let mut e = Dd::ONE;
    let mut gp = Dd::ONE;

    let mut peak = 1f64.max(u.abs_hi()).max(d.abs_hi());
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        t = (t * x3).div_f64((3.0 * kf + 2.0) * (3.0 * kf + 3.0));
        u = (u * x3).div_f64((3.0 * kf + 3.0) * (3.0 * kf + 4.0));
        e = (e * x3).div_f64((3.0 * kf + 1.0) * (3.0 * kf + 3.0));
        f = f + t;
        g = g + u;
        gp = gp + e;
        // The f′ series starts at k = 1 with x²/2.
        if k >= 1 {
            d = (d * x3).div_f64(3.0 * kf * (3.0 * kf + 2.0));
            fp = fp + d;
        }
        let biggest = t.abs_hi().max(u.abs_hi()).max(d.abs_hi()).max(e.abs_hi());
        peak = peak.max(biggest);
        if k >= 2 && biggest <= TAIL * peak {
            break;
        }
    }

    let c1f = AI0 * f;
    let c2g = NEG_AIP0 * g;
    let c1fp = AI0 * fp;
    let c2gp = NEG_AIP0 * gp;
    AiryQuad {
        ai: (c1f - c2g).to_f64(),
        bi: (SQRT3 * (c1f + c2g)).to_f64(),
        aip: (c1fp - c2gp).to_f64(),
        bip: (SQRT3 * (c1fp + c2gp)).to_f64(),
    }
}
