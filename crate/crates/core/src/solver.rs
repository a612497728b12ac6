//! Root location in Θ, coefficient recovery and wavefunction sampling.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::airy::airy_eval;
use crate::determinant::{trig_form, AiryEnds, BoundaryMatrix, DeterminantValue, TrigForm};
use crate::error::{Error, Result};
use crate::kinematics::{BarrierKinematics, CircuitSpec, Kinematics};

/// Grid scan and refinement settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanOptions {
    pub theta_min: f64,
    pub theta_max: f64,
    pub grid_step: f64,
    /// Acceptance bound on `|det| / max(1, scale)`.
    pub tolerance: f64,
    /// Largest accepted final bracket width. Bisection always runs to
    /// floating-point resolution; this only rejects huge |Θ|.
    pub bracket_width: f64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            theta_min: -4.0 * PI - 1.0,
            theta_max: 0.0,
            grid_step: 1e-3,
            tolerance: 1e-10,
            bracket_width: 1e-12,
        }
    }
}

impl ScanOptions {
    pub fn window(theta_min: f64, theta_max: f64) -> Self {
        ScanOptions {
            theta_min,
            theta_max,
            ..Default::default()
        }
    }

    pub fn with_step(mut self, step: f64) -> Self {
        self.grid_step = step;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let (lo, hi) = (self.theta_min, self.theta_max);
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::EmptyWindow { lo, hi });
        }
        if hi > 0.0 {
            return Err(Error::Domain(format!(
                "theta window must lie in (-inf, 0], got upper end {hi}"
            )));
        }
        if !(self.grid_step > 0.0) || !self.grid_step.is_finite() {
            return Err(Error::Domain(format!("grid step must be > 0, got {}", self.grid_step)));
        }
        if !(self.tolerance > 0.0) {
            return Err(Error::Domain(format!("tolerance must be > 0, got {}", self.tolerance)));
        }
        Ok(())
    }
}

/// A located null-point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RootSolution {
    pub theta: f64,
    /// `|a| = |Θ|/k`, nm.
    pub pre_barrier_length: f64,
    pub det_residual: f64,
    pub det_scale: f64,
    /// `σ_min/σ_max` of the boundary matrix at the root.
    pub matrix_condition: f64,
    pub branch_index: usize,
}

/// A circuit with its kinematics and cached determinant coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PreparedCircuit {
    pub circuit: CircuitSpec,
    pub kinematics: Kinematics,
    pub form: TrigForm,
}

impl PreparedCircuit {
    pub fn new(circuit: &CircuitSpec) -> Result<PreparedCircuit> {
        let kinematics = circuit.kinematics()?;
        let form = trig_form(&kinematics)?;
        Ok(PreparedCircuit {
            circuit: *circuit,
            kinematics,
            form,
        })
    }

    pub fn determinant(&self, theta: f64) -> DeterminantValue {
        self.form.eval(theta)
    }

    pub fn boundary_matrix(&self, theta: f64) -> Result<BoundaryMatrix> {
        BoundaryMatrix::for_kinematics(&self.kinematics, theta)
    }

    /// Refines `[lo, hi]`, which must bracket a sign change, to full
    /// floating-point resolution and returns the endpoint with smaller |det|.
    fn bisect(&self, mut lo: f64, mut hi: f64) -> (DeterminantRoot, f64) {
        let mut flo = self.determinant(lo);
        let mut fhi = self.determinant(hi);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let fm = self.determinant(mid);
            if fm.value == 0.0 {
                return (DeterminantRoot { theta: mid, det: fm }, 0.0);
            }
            if (fm.value < 0.0) == (flo.value < 0.0) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
                fhi = fm;
            }
        }
        let best = if flo.value.abs() <= fhi.value.abs() {
            DeterminantRoot { theta: lo, det: flo }
        } else {
            DeterminantRoot { theta: hi, det: fhi }
        };
        (best, hi - lo)
    }

    /// Every sign change on the midpoint grid of the window, refined and
    /// certified, sorted by |Θ| with branch indices assigned.
    pub fn scan(&self, opts: &ScanOptions) -> Result<Vec<RootSolution>> {
        opts.validate()?;
        let (lo, hi) = (opts.theta_min, opts.theta_max);
        let n = ((hi - lo) / opts.grid_step).ceil().max(1.0) as usize;
        let h = (hi - lo) / n as f64;
        let point = |i: usize| lo + (i as f64 + 0.5) * h;

        let mut roots = Vec::new();
        let mut prev_theta = point(0);
        let mut prev = self.determinant(prev_theta);
        if prev.value == 0.0 && prev_theta < 0.0 {
            roots.push((DeterminantRoot { theta: prev_theta, det: prev }, 0.0));
        }
        for i in 1..n {
            let theta = point(i);
            let cur = self.determinant(theta);
            if cur.value == 0.0 {
                if theta < 0.0 {
                    roots.push((DeterminantRoot { theta, det: cur }, 0.0));
                }
            } else if prev.value != 0.0 && (cur.value < 0.0) != (prev.value < 0.0) {
                roots.push(self.bisect(prev_theta, theta));
            }
            prev_theta = theta;
            prev = cur;
        }

        roots.sort_by(|a, b| a.0.theta.abs().total_cmp(&b.0.theta.abs()));
        roots
            .into_iter()
            .enumerate()
            .map(|(branch_index, (r, width))| self.certify(r, width, branch_index, opts))
            .collect()
    }

    fn certify(&self, root: DeterminantRoot, width: f64, branch_index: usize, opts: &ScanOptions) -> Result<RootSolution> {
        let bound = opts.tolerance * root.det.scale.max(1.0);
        if !(root.det.value.abs() <= bound) || width > opts.bracket_width {
            return Err(Error::Unconverged {
                theta: root.theta,
                residual: root.det.value.abs(),
                tolerance: bound,
            });
        }
        let matrix_condition = self.boundary_matrix(root.theta)?.singular_value_ratio();
        Ok(RootSolution {
            theta: root.theta,
            pre_barrier_length: self.kinematics.length_for_theta(root.theta),
            det_residual: root.det.value.abs(),
            det_scale: root.det.scale,
            matrix_condition,
            branch_index,
        })
    }

    pub fn solve_branch(&self, branch: usize, opts: &ScanOptions) -> Result<RootSolution> {
        self.scan(opts)?
            .into_iter()
            .nth(branch)
            .ok_or(Error::NoRoot {
                branch,
                lo: opts.theta_min,
                hi: opts.theta_max,
            })
    }
}

#[derive(Debug, Clone, Copy)]
struct DeterminantRoot {
    theta: f64,
    det: DeterminantValue,
}

pub fn scan_roots(circuit: &CircuitSpec, opts: &ScanOptions) -> Result<Vec<RootSolution>> {
    PreparedCircuit::new(circuit)?.scan(opts)
}

pub fn solve_for_length(circuit: &CircuitSpec, branch: usize, opts: &ScanOptions) -> Result<RootSolution> {
    PreparedCircuit::new(circuit)?.solve_branch(branch, opts)
}

/// Normalized wavefunction coefficients (`A = 1`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoefficientSet {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    /// Scaled residual of each boundary equation.
    pub boundary_residuals: [f64; 4],
}

impl CoefficientSet {
    pub fn as_array(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn max_residual(&self) -> f64 {
        self.boundary_residuals.iter().copied().fold(0.0, f64::max)
    }
}

/// Below this value of `cosh Φ − cos Θ` the B coefficient comes from the
/// value-matching row at the loop closure instead of the derivative row.
pub const CLOSURE_FLOOR: f64 = 1e-6;

/// With `A = 1` the junction rows give `C + D = 1` and `C − D = (k/β)·B`;
/// B then follows from one closure row.
pub fn recover_coefficients_rectangular(k: f64, beta: f64, phi: f64, theta: f64) -> CoefficientSet {
    let ratio = k / beta;
    let (s, cs) = theta.sin_cos();
    let (sh, ch) = (phi.sinh(), phi.cosh());
    let derivative_den = ch - cs;
    let b = if derivative_den.abs() >= CLOSURE_FLOOR {
        -(s + sh / ratio) / derivative_den
    } else {
        derivative_den / (s - ratio * sh)
    };
    let c = 0.5 * (1.0 + ratio * b);
    let d = 0.5 * (1.0 - ratio * b);
    let v = [1.0, b, c, d];
    CoefficientSet {
        a: 1.0,
        b,
        c,
        d,
        boundary_residuals: BoundaryMatrix::rectangular(k, beta, phi, theta).residuals(&v),
    }
}

/// Solves the value-matching rows at x = 0 and at the closure with B taken
/// from the derivative row at x = 0; the closure derivative row is left as
/// the certificate.
pub fn recover_coefficients_triangular(ratio: f64, ends: &AiryEnds, theta: f64) -> Result<CoefficientSet> {
    let (k, x, r) = (&ends.origin, &ends.far, ratio);
    let (s, cs) = theta.sin_cos();
    // Ai(K)·C + Bi(K)·D = 1
    // (R·Ai′(K)·sinΘ − Ai(X))·C + (R·Bi′(K)·sinΘ − Bi(X))·D = −cosΘ
    let (m11, m12) = (k.ai, k.bi);
    let (m21, m22) = (r * k.aip * s - x.ai, r * k.bip * s - x.bi);
    let det = m11 * m22 - m12 * m21;
    let size = (m11 * m22).abs() + (m12 * m21).abs();
    if !(det.abs() > 1e-12 * size) {
        return Err(Error::Degenerate(format!(
            "coefficient system is singular at theta = {theta} (det {det:e}, scale {size:e})"
        )));
    }
    let c = (m22 + cs * m12) / det;
    let d = (-cs * m11 - m21) / det;
    let b = r * (k.aip * c + k.bip * d);
    let v = [1.0, b, c, d];
    Ok(CoefficientSet {
        a: 1.0,
        b,
        c,
        d,
        boundary_residuals: BoundaryMatrix::triangular(ratio, ends, theta).residuals(&v),
    })
}

/// `A = C = 1`, `B = D = 0`.
pub fn recover_coefficients_delta(k: f64, theta: f64) -> CoefficientSet {
    let v = [1.0, 0.0, 1.0, 0.0];
    CoefficientSet {
        a: 1.0,
        b: 0.0,
        c: 1.0,
        d: 0.0,
        boundary_residuals: BoundaryMatrix::delta(k, theta).residuals(&v),
    }
}

pub fn recover_coefficients(kin: &Kinematics, theta: f64) -> Result<CoefficientSet> {
    match kin.barrier {
        BarrierKinematics::Rectangular { beta, phi }
        | BarrierKinematics::ScaledRectangular { beta, phi, .. } => {
            Ok(recover_coefficients_rectangular(kin.k, beta, phi, theta))
        }
        BarrierKinematics::Triangular(t) => {
            let ends = AiryEnds::at(t.airy_origin, t.airy_far)?;
            recover_coefficients_triangular(t.ratio, &ends, theta)
        }
        BarrierKinematics::Delta => Ok(recover_coefficients_delta(kin.k, theta)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    /// The wire, `x ∈ [a, 0]`.
    Wire,
    /// The barrier (or, for the delta model, the second wire half).
    Barrier,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WavefunctionSample {
    pub region: Region,
    /// nm
    pub x: f64,
    pub psi: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WavefunctionTrace {
    pub samples: Vec<WavefunctionSample>,
    /// `|ψ_I(0) − ψ_II(0)|`
    pub junction_residual: f64,
    /// `|ψ_I(a) − ψ_II(far end)|`
    pub closure_residual: f64,
    /// Discrete L² norm the samples were divided by, if normalized.
    pub norm: Option<f64>,
}

/// Samples ψ at `n_samples` uniform points in each region, endpoints
/// included.
pub fn trace_wavefunction(
    kin: &Kinematics,
    coeffs: &CoefficientSet,
    theta: f64,
    n_samples: usize,
    normalize: bool,
) -> Result<WavefunctionTrace> {
    if n_samples < 2 {
        return Err(Error::Domain(format!("need at least 2 samples per region, got {n_samples}")));
    }
    let k = kin.k;
    let a = theta / k;
    let CoefficientSet { a: ca, b: cb, c: cc, d: cd, .. } = *coeffs;
    let wire = |x: f64| ca * (k * x).cos() + cb * (k * x).sin();

    let (far, barrier): (f64, Box<dyn Fn(f64) -> Result<f64>>) = match kin.barrier {
        BarrierKinematics::Rectangular { beta, phi }
        | BarrierKinematics::ScaledRectangular { beta, phi, .. } => {
            (phi / beta, Box::new(move |x| Ok(cc * (beta * x).exp() + cd * (-beta * x).exp())))
        }
        BarrierKinematics::Triangular(t) => (
            t.airy_far / t.gamma - t.airy_origin / t.gamma,
            Box::new(move |x| {
                let q = airy_eval(t.airy_argument(x))?;
                Ok(cc * q.ai + cd * q.bi)
            }),
        ),
        BarrierKinematics::Delta => (-a, Box::new(move |x| Ok(cc * (k * x).cos() + cd * (k * x).sin()))),
    };

    let mut samples = Vec::with_capacity(2 * n_samples);
    let last = (n_samples - 1) as f64;
    for i in 0..n_samples {
        let x = a * (1.0 - i as f64 / last) + 0.0;
        samples.push(WavefunctionSample { region: Region::Wire, x, psi: wire(x) });
    }
    for i in 0..n_samples {
        let x = far * i as f64 / last;
        samples.push(WavefunctionSample { region: Region::Barrier, x, psi: barrier(x)? });
    }

    let junction_residual = (wire(0.0) - barrier(0.0)?).abs();
    let closure_residual = (wire(a) - barrier(far)?).abs();

    let norm = if normalize {
        let trapezoid = |pts: &[WavefunctionSample]| -> f64 {
            pts.windows(2)
                .map(|w| 0.5 * (w[1].x - w[0].x).abs() * (w[0].psi.powi(2) + w[1].psi.powi(2)))
                .sum()
        };
        let n = (trapezoid(&samples[..n_samples]) + trapezoid(&samples[n_samples..])).sqrt();
        if n > 0.0 {
            for s in &mut samples {
                s.psi /= n;
            }
        }
        Some(n)
    } else {
        None
    };

    Ok(WavefunctionTrace {
        samples,
        junction_residual,
        closure_residual,
        norm,
    })
}
