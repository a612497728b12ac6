//! Unit system, physical constants and the derived kinematic parameters.
//!
//! Energies are in eV, lengths in nm and angles in radians throughout. The
//! only physical input is `ħ²/(2mₑ)` expressed in eV·nm², so every derived
//! wavenumber comes out in nm⁻¹ and every product such as `k·a` is a pure
//! number.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// CODATA 2018 physical constants together with the derived kinetic prefactor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhysicalConstants {
    /// Reduced Planck constant, J·s.
    pub hbar: f64,
    /// Electron rest mass, kg.
    pub electron_mass: f64,
    /// Elementary charge, C.
    pub elementary_charge: f64,
    /// `ħ²/(2mₑ)` in eV·nm².
    pub hbar2_over_2m: f64,
}

const HBAR: f64 = 1.054_571_817e-34;
const ELECTRON_MASS: f64 = 9.109_383_701_5e-31;
const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;

/// `ħ²/(2mₑ)` in eV·nm² (J·m² divided by e, then m² → nm²).
pub const HBAR2_OVER_2M: f64 =
    HBAR * HBAR / (2.0 * ELECTRON_MASS * ELEMENTARY_CHARGE) * 1.0e18;

pub const CODATA_2018: PhysicalConstants = PhysicalConstants {
    hbar: HBAR,
    electron_mass: ELECTRON_MASS,
    elementary_charge: ELEMENTARY_CHARGE,
    hbar2_over_2m: HBAR2_OVER_2M,
};

/// Free-particle wavenumber `k = sqrt(E / (ħ²/2m))` in nm⁻¹.
pub fn wavenumber(energy: f64) -> Result<f64> {
    if !(energy >= 0.0) || !energy.is_finite() {
        return domain(format!("energy must be finite and >= 0, got {energy}"));
    }
    Ok((energy / HBAR2_OVER_2M).sqrt())
}

/// Decay constant `β = sqrt((V0 − E) / (ħ²/2m))` under a flat barrier.
///
/// Only the tunneling regime `E < V0` is admitted.
pub fn decay_constant(energy: f64, height: f64) -> Result<f64> {
    if !energy.is_finite() || !height.is_finite() {
        return domain("energy and barrier height must be finite");
    }
    if energy >= height {
        return domain(format!(
            "decay constant needs E < V0 (E = {energy}, V0 = {height})"
        ));
    }
    Ok(((height - energy) / HBAR2_OVER_2M).sqrt())
}

/// Parameters of the linear-ramp barrier `V(x) = (1 − x/c)·V0` on `[0, c]`.
///
/// Inside the barrier the Airy argument is `ξ(x) = K + γx`, so `K` is its
/// value at the junction with the wire and `X = K + γc` its value at the far
/// end.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TriangularKinematics {
    /// `γ = (V0 / (ħ²/2m · c))^(1/3)`, nm⁻¹.
    pub gamma: f64,
    /// Airy argument at x = 0 (≤ 0 in the tunneling regime).
    pub airy_origin: f64,
    /// Airy argument at x = c (≥ 0).
    pub airy_far: f64,
    /// `R = γ/k`.
    pub ratio: f64,
    /// Classical turning point `b = (1 − E/V0)·c`, nm.
    pub tunneling_extent: f64,
}

impl TriangularKinematics {
    /// Airy argument at position `x` inside the barrier.
    pub fn airy_argument(&self, x: f64) -> f64 {
        self.airy_origin + self.gamma * x
    }
}

pub fn triangular_kinematics(energy: f64, height: f64, length: f64) -> Result<TriangularKinematics> {
    if !(length > 0.0) || !length.is_finite() {
        return domain(format!("barrier length c must be > 0, got {length}"));
    }
    if !(energy > 0.0) || !(height > 0.0) {
        return domain(format!(
            "triangular barrier needs E > 0 and V0 > 0 (E = {energy}, V0 = {height})"
        ));
    }
    if energy >= height {
        return domain(format!(
            "triangular barrier needs E < V0 (E = {energy}, V0 = {height})"
        ));
    }
    let k = wavenumber(energy)?;
    let gamma = (height / (HBAR2_OVER_2M * length)).cbrt();
    let fraction = energy / height;
    let gc = gamma * length;
    Ok(TriangularKinematics {
        gamma,
        airy_origin: -(1.0 - fraction) * gc,
        airy_far: gc * fraction,
        ratio: gamma / k,
        tunneling_extent: (1.0 - fraction) * length,
    })
}

/// Barrier inserted between the two ends of the pre-barrier wire.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BarrierModel {
    /// Flat barrier of height `height` (eV) and width `width` (nm).
    Rectangular { height: f64, width: f64 },
    /// Linear ramp from `height` (eV) at x = 0 to zero at x = `length` (nm).
    Triangular { height: f64, length: f64 },
    /// Point barrier of strength `strength` (eV·nm).
    Delta { strength: f64 },
    /// Rectangular barrier of height `scale·height` and width `width/scale`.
    ScaledRectangular { height: f64, width: f64, scale: f64 },
}

impl BarrierModel {
    pub fn name(&self) -> &'static str {
        match self {
            BarrierModel::Rectangular { .. } => "rectangular",
            BarrierModel::Triangular { .. } => "triangular",
            BarrierModel::Delta { .. } => "delta",
            BarrierModel::ScaledRectangular { .. } => "scaled_rectangular",
        }
    }

    /// Extent of region II along the loop, nm.
    pub fn barrier_extent(&self) -> Option<f64> {
        match *self {
            BarrierModel::Rectangular { width, .. } => Some(width),
            BarrierModel::Triangular { length, .. } => Some(length),
            BarrierModel::ScaledRectangular { width, scale, .. } => Some(width / scale),
            BarrierModel::Delta { .. } => None,
        }
    }
}

/// A closed circuit: barrier model, particle energy and (optionally) the
/// magnitude of the pre-barrier length.
///
/// The wire occupies `[a, 0]` with `a < 0`; only `|a|` is stored.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CircuitSpec {
    pub model: BarrierModel,
    /// Particle energy, eV.
    pub energy: f64,
    /// `|a|`, nm.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pre_barrier_length: Option<f64>,
}

impl CircuitSpec {
    pub fn new(model: BarrierModel, energy: f64) -> Self {
        CircuitSpec {
            model,
            energy,
            pre_barrier_length: None,
        }
    }

    pub fn rectangular(energy: f64, height: f64, width: f64) -> Self {
        Self::new(BarrierModel::Rectangular { height, width }, energy)
    }

    pub fn triangular(energy: f64, height: f64, length: f64) -> Self {
        Self::new(BarrierModel::Triangular { height, length }, energy)
    }

    pub fn delta(energy: f64, strength: f64) -> Self {
        Self::new(BarrierModel::Delta { strength }, energy)
    }

    pub fn scaled_rectangular(energy: f64, height: f64, width: f64, scale: f64) -> Self {
        Self::new(
            BarrierModel::ScaledRectangular {
                height,
                width,
                scale,
            },
            energy,
        )
    }

    pub fn with_pre_barrier_length(mut self, length: f64) -> Self {
        self.pre_barrier_length = Some(length);
        self
    }

    pub fn validate(&self) -> Result<()> {
        let e = self.energy;
        if !(e > 0.0) || !e.is_finite() {
            return domain(format!("energy must be > 0, got {e}"));
        }
        if let Some(a) = self.pre_barrier_length {
            if !(a >= 0.0) || !a.is_finite() {
                return domain(format!("pre-barrier length |a| must be >= 0, got {a}"));
            }
        }
        let positive = |name: &str, v: f64| -> Result<()> {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                domain(format!("{name} must be > 0, got {v}"))
            }
        };
        match self.model {
            BarrierModel::Rectangular { height, width } => {
                positive("V0", height)?;
                positive("b", width)?;
                if e >= height {
                    return domain(format!("rectangular barrier needs E < V0 (E = {e}, V0 = {height})"));
                }
            }
            BarrierModel::Triangular { height, length } => {
                positive("V0", height)?;
                positive("c", length)?;
                if e >= height {
                    return domain(format!("triangular barrier needs E < V0 (E = {e}, V0 = {height})"));
                }
            }
            BarrierModel::Delta { strength } => {
                if !strength.is_finite() {
                    return domain("delta strength must be finite");
                }
            }
            BarrierModel::ScaledRectangular {
                height,
                width,
                scale,
            } => {
                positive("V0", height)?;
                positive("b", width)?;
                if !(scale >= 1.0) || !scale.is_finite() {
                    return domain(format!("scale factor must be >= 1, got {scale}"));
                }
                if e >= scale * height {
                    return domain(format!(
                        "scaled barrier needs E < xi*V0 (E = {e}, xi*V0 = {})",
                        scale * height
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn kinematics(&self) -> Result<Kinematics> {
        self.validate()?;
        let k = wavenumber(self.energy)?;
        let barrier = match self.model {
            BarrierModel::Rectangular { height, width } => {
                let beta = decay_constant(self.energy, height)?;
                BarrierKinematics::Rectangular {
                    beta,
                    phi: beta * width,
                }
            }
            BarrierModel::Triangular { height, length } => {
                BarrierKinematics::Triangular(triangular_kinematics(self.energy, height, length)?)
            }
            BarrierModel::Delta { .. } => BarrierKinematics::Delta,
            BarrierModel::ScaledRectangular {
                height,
                width,
                scale,
            } => {
                let beta = decay_constant(self.energy, scale * height)?;
                BarrierKinematics::ScaledRectangular {
                    beta,
                    phi: beta * width / scale,
                    scale,
                }
            }
        };
        Ok(Kinematics { k, barrier })
    }
}

/// Model-specific quantities that enter the boundary conditions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BarrierKinematics {
    /// `phi = β·b`.
    Rectangular { beta: f64, phi: f64 },
    Triangular(TriangularKinematics),
    Delta,
    /// `beta` is the decay constant under the raised barrier and
    /// `phi = β'·b/ξ`.
    ScaledRectangular { beta: f64, phi: f64, scale: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Kinematics {
    /// Wavenumber in the wire, nm⁻¹.
    pub k: f64,
    pub barrier: BarrierKinematics,
}

impl Kinematics {
    /// `Θ = k·a` for a pre-barrier of magnitude `length` (a = −length).
    pub fn theta_for_length(&self, length: f64) -> f64 {
        -self.k * length
    }

    /// `|a| = |Θ|/k`.
    pub fn length_for_theta(&self, theta: f64) -> f64 {
        theta.abs() / self.k
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn codata_oracle() -> f64 {
        let hbar = 1.054571817e-34_f64;
        let m = 9.1093837015e-31_f64;
        let e = 1.602176634e-19_f64;
        hbar.powi(2) / (2.0 * m * e) * 1e18
    }

    #[test]
    fn prefactor_matches_codata() {
        assert!((HBAR2_OVER_2M / codata_oracle() - 1.0).abs() < 1e-14);
        assert!((HBAR2_OVER_2M / 0.0380998 - 1.0).abs() < 1e-6);
        assert!(CODATA_2018.hbar2_over_2m > 0.0);
    }

    #[test]
    fn wavenumber_values() {
        assert_eq!(wavenumber(0.0).unwrap(), 0.0);
        assert!((wavenumber(1.0).unwrap() - 5.1232).abs() < 1e-3);
        let ratio = wavenumber(0.25).unwrap() / wavenumber(1.0).unwrap();
        assert!((ratio - 0.5).abs() < 1e-15);
        assert!(wavenumber(-1e-9).is_err());
        assert!(wavenumber(f64::NAN).is_err());
    }

    #[test]
    fn decay_constant_values() {
        let beta = decay_constant(0.5, 1.0).unwrap();
        assert_eq!(beta, wavenumber(0.5).unwrap());
        assert!((beta - 3.6227).abs() < 1e-3);
        assert!((decay_constant(0.99, 1.0).unwrap() - 0.51232).abs() < 1e-4);
        assert!(decay_constant(1.0 - 1e-14, 1.0).unwrap() < 1e-6);
        assert!(decay_constant(1.0, 1.0).is_err());
        assert!(decay_constant(1.5, 1.0).is_err());
    }

    #[test]
    fn pythagorean_identity() {
        for &(e, v0) in &[(0.1, 1.0), (0.5, 1.0), (0.99, 1.0), (1.3, 2.7)] {
            let k = wavenumber(e).unwrap();
            let beta = decay_constant(e, v0).unwrap();
            let target = v0 / HBAR2_OVER_2M;
            assert!(((k * k + beta * beta) - target).abs() / target < 1e-12);
        }
    }

    #[test]
    fn triangular_values() {
        let t = triangular_kinematics(0.5, 1.0, 1.0).unwrap();
        assert!((t.gamma - 2.9717).abs() < 1e-3);
        assert!((t.airy_origin + t.airy_far).abs() < 1e-14);
        assert!((t.airy_far - t.gamma / 2.0).abs() < 1e-14);
        assert!((t.ratio - t.gamma / wavenumber(0.5).unwrap()).abs() < 1e-15);

        let t2 = triangular_kinematics(0.5, 1.0, 2.0).unwrap();
        assert!((t2.tunneling_extent - 1.0).abs() < 1e-15);
        assert!(((t2.airy_far - t2.airy_origin) - t2.gamma * 2.0).abs() < 1e-13);
    }

    #[test]
    fn triangular_barrier_top_limit() {
        let t = triangular_kinematics(1.0 - 1e-12, 1.0, 1.0).unwrap();
        assert!(t.airy_origin.abs() < 1e-10);
        assert!((t.airy_far - t.gamma).abs() < 1e-10);
        assert!(t.tunneling_extent < 1e-10);
        assert!(triangular_kinematics(1.0, 1.0, 1.0).is_err());
        assert!(triangular_kinematics(0.5, 1.0, 0.0).is_err());
        assert!(triangular_kinematics(0.5, 1.0, -1.0).is_err());
    }

    #[test]
    fn airy_arguments_monotone_in_energy() {
        let mut prev = triangular_kinematics(0.01, 1.0, 1.0).unwrap();
        for i in 2..100 {
            let t = triangular_kinematics(i as f64 * 0.01, 1.0, 1.0).unwrap();
            assert!(t.airy_far > prev.airy_far);
            assert!(t.airy_origin > prev.airy_origin);
            assert!(t.airy_origin <= 0.0 && t.airy_far >= 0.0);
            prev = t;
        }
    }

    #[test]
    fn circuit_validation() {
        assert!(CircuitSpec::rectangular(0.5, 1.0, 0.1).validate().is_ok());
        assert!(CircuitSpec::rectangular(1.0, 1.0, 0.1).validate().is_err());
        assert!(CircuitSpec::rectangular(0.0, 1.0, 0.1).validate().is_err());
        assert!(CircuitSpec::rectangular(0.5, 1.0, 0.0).validate().is_err());
        assert!(CircuitSpec::triangular(0.5, 1.0, -2.0).validate().is_err());
        assert!(CircuitSpec::delta(1.0, 0.3).validate().is_ok());
        assert!(CircuitSpec::scaled_rectangular(1.5, 1.0, 0.5, 2.0).validate().is_ok());
        assert!(CircuitSpec::scaled_rectangular(2.5, 1.0, 0.5, 2.0).validate().is_err());
        assert!(CircuitSpec::scaled_rectangular(0.5, 1.0, 0.5, 0.5).validate().is_err());
        assert!(CircuitSpec::rectangular(0.5, 1.0, 0.1)
            .with_pre_barrier_length(-1.0)
            .validate()
            .is_err());
    }

    #[test]
    fn theta_phi_dimensionless_roundtrip() {
        let kin = CircuitSpec::rectangular(0.3, 1.0, 0.4).kinematics().unwrap();
        let theta = kin.theta_for_length(1.7);
        assert!(theta < 0.0);
        assert!((kin.length_for_theta(theta) - 1.7).abs() < 1e-14);
        match kin.barrier {
            BarrierKinematics::Rectangular { beta, phi } => {
                assert!((phi - beta * 0.4).abs() < 1e-15);
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn scaled_kinematics_keeps_height_width_product() {
        let kin = CircuitSpec::scaled_rectangular(0.5, 1.0, 0.5, 10.0)
            .kinematics()
            .unwrap();
        match kin.barrier {
            BarrierKinematics::ScaledRectangular { beta, phi, scale } => {
                assert_eq!(scale, 10.0);
                assert!((beta - decay_constant(0.5, 10.0).unwrap()).abs() < 1e-15);
                assert!((phi - beta * 0.05).abs() < 1e-15);
            }
            _ => unreachable!(),
        }
    }
}
