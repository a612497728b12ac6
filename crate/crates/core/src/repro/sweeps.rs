use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::determinant::{det_shorted_triangular, scaled_limit_theta};
use crate::error::{Error, Result};
use crate::kinematics::CircuitSpec;
use crate::solver::{PreparedCircuit, ScanOptions};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Fig6Point {
    pub energy: f64,
    /// The two roots nearest −360°, ascending; equal when only one exists.
    pub lower_deg: f64,
    pub upper_deg: f64,
    pub midpoint_deg: f64,
}

/// Mean, spread and least-squares line of the root angle (degrees) against
/// energy for the root pair nearest −360°.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegressionStats {
    pub height: f64,
    /// nm
    pub length: f64,
    pub mean_theta_deg: f64,
    /// Sample standard deviation (n − 1).
    pub stddev_theta_deg: f64,
    pub population_stddev_deg: f64,
    pub slope_deg_per_ev: f64,
    pub intercept_deg: f64,
    pub points: Vec<Fig6Point>,
}

/// Search window around −2π for [`fig6_stats`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Fig6Options {
    /// rad
    pub half_window: f64,
    pub grid_step: f64,
}

impl Default for Fig6Options {
    /// Root pairs at picometre barrier lengths can be 1e-6 rad apart.
    fn default() -> Self {
        Fig6Options {
            half_window: 0.1,
            grid_step: 1e-7,
        }
    }
}

pub fn fig6_stats(height: f64, length: f64, energies: &[f64], options: &Fig6Options) -> Result<RegressionStats> {
    if energies.len() < 2 {
        return Err(Error::Domain("regression needs at least two energies".into()));
    }
    let center = -2.0 * PI;
    let points: Vec<Fig6Point> = energies
        .par_iter()
        .map(|&e| -> Result<Fig6Point> {
            let p = PreparedCircuit::new(&CircuitSpec::triangular(e, height, length))?;
            let opts = ScanOptions::window(center - options.half_window, (center + options.half_window).min(0.0))
                .with_step(options.grid_step);
            let mut roots = p.scan(&opts)?;
            if roots.is_empty() {
                return Err(Error::NoRoot {
                    branch: 0,
                    lo: opts.theta_min,
                    hi: opts.theta_max,
                });
            }
            roots.sort_by(|a, b| (a.theta - center).abs().total_cmp(&(b.theta - center).abs()));
            let first = roots[0].theta.to_degrees();
            let second = roots.get(1).map_or(first, |r| r.theta.to_degrees());
            Ok(Fig6Point {
                energy: e,
                lower_deg: first.min(second),
                upper_deg: first.max(second),
                midpoint_deg: 0.5 * (first + second),
            })
        })
        .collect::<Result<_>>()?;

    let n = points.len() as f64;
    let mean_e = points.iter().map(|p| p.energy).sum::<f64>() / n;
    let mean = points.iter().map(|p| p.midpoint_deg).sum::<f64>() / n;
    let ss = points.iter().map(|p| (p.midpoint_deg - mean).powi(2)).sum::<f64>();
    let sxy: f64 = points.iter().map(|p| (p.energy - mean_e) * (p.midpoint_deg - mean)).sum();
    let sxx: f64 = points.iter().map(|p| (p.energy - mean_e).powi(2)).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    Ok(RegressionStats {
        height,
        length,
        mean_theta_deg: mean,
        stddev_theta_deg: (ss / (n - 1.0)).sqrt(),
        population_stddev_deg: (ss / n).sqrt(),
        slope_deg_per_ev: slope,
        intercept_deg: mean - slope * mean_e,
        points,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct XiSweepRow {
    pub scale: f64,
    /// eV
    pub effective_height: f64,
    /// nm
    pub effective_width: f64,
    /// Tracked branch angles; `None` once a branch is lost.
    pub branches: Vec<Option<f64>>,
    /// `|Θ_0(ξ) − Θ_limit|`
    pub limit_gap: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyVerdict {
    /// Converges to the large-scale limit root in (−π, 0).
    LimitCondition,
    /// Converges to an even multiple of π (the 2πn family).
    EvenMultipleOfPi,
    /// Converges to an odd multiple of π.
    OddMultipleOfPi,
    Unresolved,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BranchFamily {
    pub branch: usize,
    pub final_theta: Option<f64>,
    pub verdict: FamilyVerdict,
    /// Nearest multiple of π, as the integer n in nπ.
    pub nearest_multiple: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct XiSweepReport {
    pub height: f64,
    pub width: f64,
    pub energy: f64,
    pub limit_theta: f64,
    pub rows: Vec<XiSweepRow>,
    pub families: Vec<BranchFamily>,
    pub findings: Vec<String>,
}

/// Largest jump accepted when continuing a branch between scale factors.
const TRACK_LIMIT: f64 = PI / 2.0;
const CONVERGED: f64 = 1e-2;

/// Tracks the roots in (−2π, 0) at the first scale factor through the
/// increasing list, at fixed `V0·b`.
pub fn xi_sweep(height: f64, width: f64, energy: f64, scales: &[f64]) -> Result<XiSweepReport> {
    if scales.is_empty() || scales.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::Domain("scale factors must be a non-empty increasing list".into()));
    }
    let limit_theta = scaled_limit_theta(energy, height, width)?;
    let opts = ScanOptions::default();

    let mut tracked: Vec<Option<f64>> = Vec::new();
    let mut rows = Vec::with_capacity(scales.len());
    for (i, &xi) in scales.iter().enumerate() {
        let p = PreparedCircuit::new(&CircuitSpec::scaled_rectangular(energy, height, width, xi))?;
        let roots: Vec<f64> = p.scan(&opts)?.iter().map(|r| r.theta).collect();
        if i == 0 {
            tracked = roots.iter().copied().filter(|&t| t > -2.0 * PI).map(Some).collect();
        } else {
            for slot in tracked.iter_mut() {
                *slot = slot.and_then(|prev| {
                    roots
                        .iter()
                        .copied()
                        .min_by(|a, b| (a - prev).abs().total_cmp(&(b - prev).abs()))
                        .filter(|t| (t - prev).abs() <= TRACK_LIMIT)
                });
            }
        }
        rows.push(XiSweepRow {
            scale: xi,
            effective_height: xi * height,
            effective_width: width / xi,
            limit_gap: tracked.first().copied().flatten().map(|t| (t - limit_theta).abs()),
            branches: tracked.clone(),
        });
    }

    let families: Vec<BranchFamily> = tracked
        .iter()
        .enumerate()
        .map(|(branch, t)| {
            let Some(t) = *t else {
                return BranchFamily {
                    branch,
                    final_theta: None,
                    verdict: FamilyVerdict::Unresolved,
                    nearest_multiple: None,
                };
            };
            let n = (t / PI).round() as i64;
            let verdict = if (t - limit_theta).abs() < CONVERGED {
                FamilyVerdict::LimitCondition
            } else if (t - n as f64 * PI).abs() < CONVERGED {
                if n % 2 == 0 {
                    FamilyVerdict::EvenMultipleOfPi
                } else {
                    FamilyVerdict::OddMultipleOfPi
                }
            } else {
                FamilyVerdict::Unresolved
            };
            BranchFamily {
                branch,
                final_theta: Some(t),
                verdict,
                nearest_multiple: Some(n),
            }
        })
        .collect();

    let mut findings = Vec::new();
    let last = rows.last().expect("non-empty");
    for f in &families {
        let text = match f.verdict {
            FamilyVerdict::LimitCondition => format!(
                "branch {} converges to the limit root {:.6} in (-pi, 0), not to a multiple of pi",
                f.branch, limit_theta
            ),
            FamilyVerdict::EvenMultipleOfPi => format!(
                "branch {} converges to {}pi: the 2*pi*n family",
                f.branch,
                f.nearest_multiple.unwrap_or(0)
            ),
            FamilyVerdict::OddMultipleOfPi => format!(
                "branch {} converges to {}pi: an odd multiple, the n*pi family",
                f.branch,
                f.nearest_multiple.unwrap_or(0)
            ),
            FamilyVerdict::Unresolved => format!("branch {} has not converged by scale {}", f.branch, last.scale),
        };
        findings.push(text);
    }
    if !families.iter().any(|f| f.verdict == FamilyVerdict::OddMultipleOfPi) {
        findings.push(
            "No branch approaches an odd multiple of pi; the delta-model family Theta = n*pi \
             (odd n) does not emerge from the large-scale limit."
                .into(),
        );
    }
    for r in &rows {
        findings.push(format!(
            "scale {}: effective height x width = {:.12}",
            r.scale,
            r.effective_height * r.effective_width
        ));
    }

    Ok(XiSweepReport {
        height,
        width,
        energy,
        limit_theta,
        rows,
        families,
        findings,
    })
}

/// Two horizontally or vertically adjacent grid points with opposite signs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SignViolation {
    pub k_arg: f64,
    pub x_arg: f64,
    pub value: f64,
    pub neighbour_k: f64,
    pub neighbour_x: f64,
    pub neighbour_value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShortedScanReport {
    pub spacing: f64,
    pub k_points: usize,
    pub x_points: usize,
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
    /// Adjacent pairs with opposite signs.
    pub sign_changes: usize,
    pub first_violation: Option<SignViolation>,
    pub min_value: f64,
    pub max_value: f64,
}

impl ShortedScanReport {
    pub fn constant_sign(&self) -> bool {
        self.sign_changes == 0 && (self.positive == 0 || self.negative == 0)
    }
}

/// Scans `K = −extent + i·spacing < 0` and `X = j·spacing ∈ (0, extent]` with
/// `R = 1` (R > 0 only rescales).
pub fn shorted_grid_scan(extent: f64, spacing: f64) -> Result<ShortedScanReport> {
    if !(spacing > 0.0 && extent > 0.0) {
        return Err(Error::Domain("extent and spacing must be > 0".into()));
    }
    let n = (extent / spacing).round() as usize;
    let k_at = |i: usize| -extent + i as f64 * spacing;
    let x_at = |j: usize| (j + 1) as f64 * spacing;
    let values: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            (0..n)
                .map(|j| det_shorted_triangular(k_at(i), x_at(j), 1.0).map(|d| d.value))
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<_>>()?;

    let (mut positive, mut negative, mut zero, mut sign_changes) = (0, 0, 0, 0);
    let (mut min_value, mut max_value) = (f64::INFINITY, f64::NEG_INFINITY);
    let mut first_violation = None;
    for i in 0..n {
        for j in 0..n {
            let v = values[i][j];
            match v.partial_cmp(&0.0) {
                Some(std::cmp::Ordering::Greater) => positive += 1,
                Some(std::cmp::Ordering::Less) => negative += 1,
                _ => zero += 1,
            }
            min_value = min_value.min(v);
            max_value = max_value.max(v);
            for (ni, nj) in [(i + 1, j), (i, j + 1)] {
                if ni >= n || nj >= n {
                    continue;
                }
                let w = values[ni][nj];
                if v * w < 0.0 {
                    sign_changes += 1;
                    first_violation.get_or_insert(SignViolation {
                        k_arg: k_at(i),
                        x_arg: x_at(j),
                        value: v,
                        neighbour_k: k_at(ni),
                        neighbour_x: x_at(nj),
                        neighbour_value: w,
                    });
                }
            }
        }
    }
    Ok(ShortedScanReport {
        spacing,
        k_points: n,
        x_points: n,
        positive,
        negative,
        zero,
        sign_changes,
        first_violation,
        min_value,
        max_value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xi_sweep_rejects_bad_lists() {
        assert!(xi_sweep(1.0, 0.5, 0.5, &[]).is_err());
        assert!(xi_sweep(1.0, 0.5, 0.5, &[10.0, 1.0]).is_err());
    }

    #[test]
    fn shorted_scan_grid_shape() {
        let r = shorted_grid_scan(1.0, 0.25).unwrap();
        assert_eq!((r.k_points, r.x_points), (4, 4));
        assert_eq!(r.positive + r.negative + r.zero, 16);
    }
}
