//! Boundary-condition determinants for every barrier model.
//!
//! Each closed form is linear in `sin Θ` and `cos Θ` for fixed barrier
//! parameters; [`TrigForm`] holds the three coefficients. [`BoundaryMatrix`]
//! is the literal 4×4 system.

use nalgebra::Matrix4;
use serde::Serialize;

use crate::airy::{airy_eval, AiryQuad};
use crate::error::{Error, Result};
use crate::kinematics::{BarrierKinematics, Kinematics, HBAR2_OVER_2M};

/// How a determinant value has been scaled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    /// Rectangular determinant divided by `2kβ`.
    TwoKBeta,
    /// Scaled-rectangular determinant divided by `2kβ'`.
    TwoKBetaPrime,
    /// Six-term Airy form, identical to the literal 4×4 determinant.
    Unscaled,
    /// Delta model reduced to `sin Θ`.
    SineReduced,
    /// Shorted triangular form (Θ = 0).
    Shorted,
    /// Literal 4×4 determinant by LU elimination.
    Numeric,
}

impl Normalization {
    pub fn describe(&self) -> &'static str {
        match self {
            Normalization::TwoKBeta => "divided by 2*k*beta",
            Normalization::TwoKBetaPrime => "divided by 2*k*beta'",
            Normalization::Unscaled => "unscaled six-term Airy form",
            Normalization::SineReduced => "reduced to sin(theta)",
            Normalization::Shorted => "shorted form at theta = 0",
            Normalization::Numeric => "literal 4x4 determinant",
        }
    }
}

/// A determinant value with the magnitude of the terms that produced it.
///
/// `scale` is the sum of the absolute values of the summed terms, so
/// `value / scale` measures cancellation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DeterminantValue {
    pub value: f64,
    pub scale: f64,
    pub normalization: Normalization,
}

impl DeterminantValue {
    pub fn relative(&self) -> f64 {
        self.value.abs() / self.scale.max(1.0)
    }
}

/// `sin·sinΘ + cos·cosΘ + constant`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrigForm {
    pub sin: f64,
    pub cos: f64,
    pub constant: f64,
    pub normalization: Normalization,
}

impl TrigForm {
    pub fn eval(&self, theta: f64) -> DeterminantValue {
        let (s, c) = theta.sin_cos();
        let (ts, tc) = (self.sin * s, self.cos * c);
        DeterminantValue {
            value: ts + tc + self.constant,
            scale: ts.abs() + tc.abs() + self.constant.abs(),
            normalization: self.normalization,
        }
    }

    /// `sqrt(sin² + cos²)`, the oscillation amplitude in Θ.
    pub fn amplitude(&self) -> f64 {
        self.sin.hypot(self.cos)
    }
}

fn rectangular_form(k: f64, beta: f64, phi: f64, normalization: Normalization) -> Result<TrigForm> {
    if !(beta > 0.0) {
        return Err(Error::Domain(format!(
            "decay constant must be > 0 for the rectangular determinant, got {beta}"
        )));
    }
    Ok(TrigForm {
        sin: (beta / k - k / beta) * phi.sinh(),
        cos: -2.0 * phi.cosh(),
        constant: 2.0,
        normalization,
    })
}

/// Airy values at both ends of the triangular barrier.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AiryEnds {
    pub origin: AiryQuad,
    pub far: AiryQuad,
}

impl AiryEnds {
    pub fn at(k_arg: f64, x_arg: f64) -> Result<AiryEnds> {
        Ok(AiryEnds {
            origin: airy_eval(k_arg)?,
            far: airy_eval(x_arg)?,
        })
    }
}

/// Coefficients of the six-term Airy determinant for given `R`, `Ai/Bi(K)`
/// and `Ai/Bi(X)`. The constant part is the two single-argument brackets
/// evaluated literally (it equals `−2R/π`).
pub fn triangular_form(ratio: f64, ends: &AiryEnds) -> TrigForm {
    let (k, x, r) = (&ends.origin, &ends.far, ratio);
    let sin = r * r * (k.aip * x.bip - x.aip * k.bip) + (k.ai * x.bi - x.ai * k.bi);
    let cos = r * (x.ai * k.bip - x.aip * k.bi) + r * (k.ai * x.bip - k.aip * x.bi);
    let constant = r * (x.aip * x.bi - x.ai * x.bip) + r * (k.aip * k.bi - k.ai * k.bip);
    TrigForm {
        sin,
        cos,
        constant,
        normalization: Normalization::Unscaled,
    }
}

/// The closed-form determinant of any model as a function of Θ.
pub fn trig_form(kin: &Kinematics) -> Result<TrigForm> {
    match kin.barrier {
        BarrierKinematics::Rectangular { beta, phi } => {
            rectangular_form(kin.k, beta, phi, Normalization::TwoKBeta)
        }
        BarrierKinematics::ScaledRectangular { beta, phi, .. } => {
            rectangular_form(kin.k, beta, phi, Normalization::TwoKBetaPrime)
        }
        BarrierKinematics::Triangular(t) => {
            let ends = AiryEnds::at(t.airy_origin, t.airy_far)?;
            Ok(triangular_form(t.ratio, &ends))
        }
        BarrierKinematics::Delta => Ok(TrigForm {
            sin: 1.0,
            cos: 0.0,
            constant: 0.0,
            normalization: Normalization::SineReduced,
        }),
    }
}

fn require_rectangular(kin: &Kinematics) -> Result<()> {
    match kin.barrier {
        BarrierKinematics::Rectangular { .. } => Ok(()),
        _ => Err(Error::Domain("expected rectangular kinematics".into())),
    }
}

/// `(β/k − k/β)·sinh Φ·sin Θ + 2[1 − cosh Φ·cos Θ]`.
pub fn det_rectangular(kin: &Kinematics, theta: f64) -> Result<DeterminantValue> {
    require_rectangular(kin)?;
    Ok(trig_form(kin)?.eval(theta))
}

/// Same closed form with `β' = sqrt((ξV0 − E)/(ħ²/2m))` and width `b/ξ`.
pub fn det_scaled_rectangular(kin: &Kinematics, theta: f64) -> Result<DeterminantValue> {
    match kin.barrier {
        BarrierKinematics::ScaledRectangular { .. } => Ok(trig_form(kin)?.eval(theta)),
        _ => Err(Error::Domain("expected scaled-rectangular kinematics".into())),
    }
}

pub fn det_triangular(kin: &Kinematics, theta: f64) -> Result<DeterminantValue> {
    match kin.barrier {
        BarrierKinematics::Triangular(_) => Ok(trig_form(kin)?.eval(theta)),
        _ => Err(Error::Domain("expected triangular kinematics".into())),
    }
}

/// `R·{[Ai(X)−Ai(K)][Bi′(K)−Bi′(X)] + [Bi(X)−Bi(K)][Ai′(X)−Ai′(K)]}`.
pub fn det_shorted_triangular(k_arg: f64, x_arg: f64, ratio: f64) -> Result<DeterminantValue> {
    let ends = AiryEnds::at(k_arg, x_arg)?;
    let (k, x) = (&ends.origin, &ends.far);
    let t1 = (x.ai - k.ai) * (k.bip - x.bip);
    let t2 = (x.bi - k.bi) * (x.aip - k.aip);
    Ok(DeterminantValue {
        value: ratio * (t1 + t2),
        scale: ratio.abs() * (t1.abs() + t2.abs()),
        normalization: Normalization::Shorted,
    })
}

/// The delta model's consistency condition `sin Θ`.
pub fn delta_consistency(theta: f64) -> DeterminantValue {
    DeterminantValue {
        value: theta.sin(),
        scale: theta.sin().abs(),
        normalization: Normalization::SineReduced,
    }
}

/// Large-scale-factor limit of the scaled rectangular determinant:
/// the Θ ∈ (−π, 0) solving `V0·b/(2·(ħ²/2m)·k) = (cos Θ − 1)/sin Θ`.
///
/// `(cos Θ − 1)/sin Θ = −tan(Θ/2)`, so the root is closed-form. Add
/// `−2πn` for the rest of the family.
pub fn scaled_limit_theta(energy: f64, height: f64, width: f64) -> Result<f64> {
    if !(energy > 0.0 && height > 0.0 && width > 0.0) {
        return Err(Error::Domain(format!(
            "limit condition needs E, V0, b > 0 (E = {energy}, V0 = {height}, b = {width})"
        )));
    }
    let k = (energy / HBAR2_OVER_2M).sqrt();
    let lhs = height * width / (2.0 * HBAR2_OVER_2M * k);
    Ok(-2.0 * lhs.atan())
}

/// Literal boundary-condition matrix acting on `(A, B, C, D)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundaryMatrix {
    pub rows: [[f64; 4]; 4],
}

impl BoundaryMatrix {
    pub fn rectangular(k: f64, beta: f64, phi: f64, theta: f64) -> BoundaryMatrix {
        let (s, c) = theta.sin_cos();
        let (ep, em) = (phi.exp(), (-phi).exp());
        BoundaryMatrix {
            rows: [
                [1.0, 0.0, -1.0, -1.0],
                [0.0, k, -beta, beta],
                [c, s, -ep, -em],
                [k * s, -k * c, beta * ep, -beta * em],
            ],
        }
    }

    pub fn triangular(ratio: f64, ends: &AiryEnds, theta: f64) -> BoundaryMatrix {
        let (s, c) = theta.sin_cos();
        let (k, x, r) = (&ends.origin, &ends.far, ratio);
        BoundaryMatrix {
            rows: [
                [1.0, 0.0, -k.ai, -k.bi],
                [0.0, 1.0, -r * k.aip, -r * k.bip],
                [c, s, -x.ai, -x.bi],
                [s, -c, r * x.aip, r * x.bip],
            ],
        }
    }

    pub fn delta(k: f64, theta: f64) -> BoundaryMatrix {
        let (s, c) = theta.sin_cos();
        BoundaryMatrix {
            rows: [
                [1.0, 0.0, -1.0, 0.0],
                [0.0, 1.0, 0.0, -1.0],
                [c, -s, -c, -s],
                [k * s, k * c, k * s, -k * c],
            ],
        }
    }

    pub fn for_kinematics(kin: &Kinematics, theta: f64) -> Result<BoundaryMatrix> {
        Ok(match kin.barrier {
            BarrierKinematics::Rectangular { beta, phi }
            | BarrierKinematics::ScaledRectangular { beta, phi, .. } => {
                Self::rectangular(kin.k, beta, phi, theta)
            }
            BarrierKinematics::Triangular(t) => {
                let ends = AiryEnds::at(t.airy_origin, t.airy_far)?;
                Self::triangular(t.ratio, &ends, theta)
            }
            BarrierKinematics::Delta => Self::delta(kin.k, theta),
        })
    }

    /// Determinant by Gaussian elimination with partial pivoting.
    pub fn determinant(&self) -> f64 {
        let mut m = self.rows;
        let mut det = 1.0;
        for col in 0..4 {
            let pivot = (col..4)
                .max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))
                .unwrap_or(col);
            if m[pivot][col] == 0.0 {
                return 0.0;
            }
            if pivot != col {
                m.swap(pivot, col);
                det = -det;
            }
            let p = m[col][col];
            det *= p;
            for row in col + 1..4 {
                let f = m[row][col] / p;
                for j in col..4 {
                    m[row][j] -= f * m[col][j];
                }
            }
        }
        det
    }

    pub fn apply(&self, v: &[f64; 4]) -> [f64; 4] {
        let mut out = [0.0; 4];
        for (o, row) in out.iter_mut().zip(&self.rows) {
            *o = row.iter().zip(v).map(|(a, b)| a * b).sum();
        }
        out
    }

    /// Per-row `|Σ M_ij v_j| / max(1, Σ |M_ij v_j|)`.
    pub fn residuals(&self, v: &[f64; 4]) -> [f64; 4] {
        let mut out = [0.0; 4];
        for (o, row) in out.iter_mut().zip(&self.rows) {
            let (sum, mag) = row
                .iter()
                .zip(v)
                .fold((0.0, 0.0), |(s, m), (a, b)| (s + a * b, m + (a * b).abs()));
            *o = sum.abs() / mag.max(1.0);
        }
        out
    }

    /// `σ_min / σ_max`.
    pub fn singular_value_ratio(&self) -> f64 {
        let m = Matrix4::from_fn(|i, j| self.rows[i][j]);
        let sv = m.singular_values();
        let max = sv.max();
        if max == 0.0 {
            return 0.0;
        }
        sv.min() / max
    }
}

/// Literal 4×4 determinant for the model (no normalization).
pub fn numeric_det(kin: &Kinematics, theta: f64) -> Result<DeterminantValue> {
    let m = BoundaryMatrix::for_kinematics(kin, theta)?;
    let scale = m
        .rows
        .iter()
        .map(|r| r.iter().map(|v| v * v).sum::<f64>().sqrt())
        .product();
    Ok(DeterminantValue {
        value: m.determinant(),
        scale,
        normalization: Normalization::Numeric,
    })
}

/// Factor between [`numeric_det`] and the closed form of [`trig_form`].
pub fn numeric_factor(kin: &Kinematics) -> f64 {
    match kin.barrier {
        BarrierKinematics::Rectangular { beta, .. }
        | BarrierKinematics::ScaledRectangular { beta, .. } => 2.0 * kin.k * beta,
        BarrierKinematics::Triangular(_) => 1.0,
        // 4k·sin²Θ: the sin Θ reduction is not a constant factor.
        BarrierKinematics::Delta => f64::NAN,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kinematics::{decay_constant, CircuitSpec};
    use std::f64::consts::{FRAC_1_PI, PI};

    fn rect(e: f64, v0: f64, b: f64) -> Kinematics {
        CircuitSpec::rectangular(e, v0, b).kinematics().unwrap()
    }

    #[test]
    fn rectangular_trivial_points() {
        // Φ → 0 is not admissible through kinematics; build the form directly.
        let f = rectangular_form(1.0, 1.0, 0.0, Normalization::TwoKBeta).unwrap();
        assert_eq!(f.eval(0.0).value, 0.0);
        let kin = rect(0.5, 1.0, 0.1);
        let phi = 0.1 * decay_constant(0.5, 1.0).unwrap();
        let d = det_rectangular(&kin, 0.0).unwrap().value;
        assert!((d - 2.0 * (1.0 - phi.cosh())).abs() < 1e-15);
        assert!(d < 0.0);
    }

    #[test]
    fn rectangular_symmetric_root() {
        let kin = rect(0.5, 1.0, 0.1);
        let phi = 0.1 * decay_constant(0.5, 1.0).unwrap();
        let theta = -(1.0 / phi.cosh()).acos();
        assert!((theta + 0.3546).abs() < 1e-4);
        assert!(det_rectangular(&kin, theta).unwrap().value.abs() < 1e-12);
        assert!(det_rectangular(&kin, -0.3546).unwrap().value.abs() < 1e-4);
    }

    #[test]
    fn rectangular_rejects_zero_beta() {
        assert!(rectangular_form(1.0, 0.0, 0.0, Normalization::TwoKBeta).is_err());
        let tri = CircuitSpec::triangular(0.5, 1.0, 1.0).kinematics().unwrap();
        assert!(det_rectangular(&tri, -1.0).is_err());
    }

    #[test]
    fn triangular_constant_is_wronskian() {
        let kin = CircuitSpec::triangular(0.3, 1.0, 0.7).kinematics().unwrap();
        let f = trig_form(&kin).unwrap();
        let r = match kin.barrier {
            BarrierKinematics::Triangular(t) => t.ratio,
            _ => unreachable!(),
        };
        assert!((f.constant + 2.0 * r * FRAC_1_PI).abs() < 1e-12 * r);
    }

    #[test]
    fn shorted_vanishes_on_diagonal() {
        for &z in &[0.0, -1.5, 2.0] {
            assert_eq!(det_shorted_triangular(z, z, 3.0).unwrap().value, 0.0);
        }
    }

    #[test]
    fn delta_condition() {
        assert!(delta_consistency(-PI).value.abs() < 1e-15);
        assert_eq!(delta_consistency(-PI / 2.0).value, -1.0);
        let kin = CircuitSpec::delta(1.0, 0.3).kinematics().unwrap();
        let m = BoundaryMatrix::delta(kin.k, -0.7);
        let expect = 4.0 * kin.k * (-0.7f64).sin().powi(2);
        assert!((m.determinant() - expect).abs() < 1e-12 * expect);
    }

    #[test]
    fn limit_root_closed_form() {
        let t = scaled_limit_theta(0.5, 1.0, 0.5).unwrap();
        assert!((t + 2.132_706_5).abs() < 1e-6, "{t}");
        assert!(t > -PI && t < 0.0);
        let k = (0.5 / HBAR2_OVER_2M).sqrt();
        let lhs = 0.5 / (2.0 * HBAR2_OVER_2M * k);
        assert!(((t.cos() - 1.0) / t.sin() - lhs).abs() < 1e-12);
        assert!(scaled_limit_theta(0.5, 1.0, 1e-9).unwrap() > -1e-6);
        assert!(scaled_limit_theta(0.5, 1.0, 1e6).unwrap() < -PI + 1e-4);
    }

    #[test]
    fn lu_determinant_matches_cofactor_expansion() {
        let m = BoundaryMatrix {
            rows: [
                [2.0, -1.0, 0.5, 3.0],
                [0.0, 4.0, -2.0, 1.0],
                [1.0, 1.0, 1.0, -1.0],
                [-3.0, 0.25, 2.0, 0.0],
            ],
        };
        let d = m.determinant();
        let n = Matrix4::from_fn(|i, j| m.rows[i][j]).determinant();
        assert!((d - n).abs() < 1e-12 * n.abs());
    }

    #[test]
    fn singular_ratio_flags_rank_deficiency() {
        let kin = CircuitSpec::delta(1.0, 0.0).kinematics().unwrap();
        assert!(BoundaryMatrix::delta(kin.k, -PI).singular_value_ratio() < 1e-12);
        assert!(BoundaryMatrix::delta(kin.k, -PI / 2.0).singular_value_ratio() > 1e-3);
    }
}
