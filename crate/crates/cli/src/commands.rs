use std::f64::consts::PI;

use serde_json::{json, Value};

use nanoloop_core::determinant::numeric_det;
use nanoloop_core::repro::{
    fig6_stats, printed, reproduce_table1, reproduce_table2, shorted_grid_scan, table1_entries, table2_entries,
    xi_sweep, Fig6Options, Table2Reading, TableReport,
};
use nanoloop_core::solver::{recover_coefficients, trace_wavefunction, PreparedCircuit};

use crate::args::{CoeffArgs, DetArgs, Reading, ReproCommand, RootArgs, WaveArgs};
use crate::config::{resolve_circuit, resolve_scan, ConfigFile};
use crate::error::{CliError, CliResult};
use crate::output::{num, opt, Document, Table};

/// Angle unit chosen by `--degrees`.
#[derive(Debug, Clone, Copy)]
pub struct Angle {
    pub degrees: bool,
}

impl Angle {
    fn to_rad(self) -> f64 {
        if self.degrees { PI / 180.0 } else { 1.0 }
    }

    fn out(self, rad: f64) -> Value {
        num(rad / self.to_rad())
    }

    fn col(self, name: &str) -> String {
        format!("{name}_{}", self.unit())
    }

    fn unit(self) -> &'static str {
        if self.degrees { "deg" } else { "rad" }
    }
}

fn units(pairs: &[(&str, &str)]) -> Value {
    Value::Object(pairs.iter().map(|(k, v)| (k.to_string(), Value::from(*v))).collect())
}

fn table(columns: &[String]) -> Table {
    Table::new(&columns.iter().map(String::as_str).collect::<Vec<_>>())
}

pub fn det(args: &DetArgs, cfg: &ConfigFile, angle: Angle) -> CliResult<Document> {
    let (circuit, circuit_echo) = resolve_circuit(&args.circuit, cfg)?;
    let (opts, scan_echo) = resolve_scan(&args.scan, cfg, angle.to_rad())?;
    let prepared = PreparedCircuit::new(&circuit)?;
    let thetas: Vec<f64> = if args.theta.is_empty() {
        let n = ((opts.theta_max - opts.theta_min) / opts.grid_step).floor() as usize;
        (0..=n).map(|i| opts.theta_min + i as f64 * opts.grid_step).collect()
    } else {
        args.theta.iter().map(|t| t * angle.to_rad()).collect()
    };
    let mut t = table(&[
        angle.col("theta"),
        "pre_barrier_length_nm".into(),
        "det".into(),
        "det_scale".into(),
        "det_relative".into(),
        "numeric_det".into(),
        "numeric_scale".into(),
    ]);
    for &theta in &thetas {
        let d = prepared.determinant(theta);
        let n = numeric_det(&prepared.kinematics, theta)?;
        t.push(vec![
            angle.out(theta),
            num(prepared.kinematics.length_for_theta(theta)),
            num(d.value),
            num(d.scale),
            num(d.relative()),
            num(n.value),
            num(n.scale),
        ]);
    }
    Ok(Document {
        schema: "nanoloop.det/1",
        config: json!({"circuit": circuit_echo, "scan": scan_echo, "angle_unit": angle.unit()}),
        units: units(&[("theta", angle.unit()), ("length", "nm"), ("det", prepared.form.normalization.describe())]),
        records: t,
        summary: Some(json!({
            "normalization": prepared.form.normalization.describe(),
            "k_per_nm": prepared.kinematics.k,
            "sin_coefficient": prepared.form.sin,
            "cos_coefficient": prepared.form.cos,
            "constant": prepared.form.constant,
        })),
        findings: Vec::new(),
    })
}

pub fn roots(args: &RootArgs, cfg: &ConfigFile, angle: Angle) -> CliResult<Document> {
    let (circuit, circuit_echo) = resolve_circuit(&args.circuit, cfg)?;
    let (opts, scan_echo) = resolve_scan(&args.scan, cfg, angle.to_rad())?;
    let found = PreparedCircuit::new(&circuit)?.scan(&opts)?;
    let mut t = table(&[
        "branch".into(),
        angle.col("theta"),
        "pre_barrier_length_nm".into(),
        "det_residual".into(),
        "det_scale".into(),
        "sigma_ratio".into(),
    ]);
    for r in &found {
        t.push(vec![
            Value::from(r.branch_index),
            angle.out(r.theta),
            num(r.pre_barrier_length),
            num(r.det_residual),
            num(r.det_scale),
            num(r.matrix_condition),
        ]);
    }
    Ok(Document {
        schema: "nanoloop.roots/1",
        config: json!({"circuit": circuit_echo, "scan": scan_echo, "angle_unit": angle.unit()}),
        units: units(&[("theta", angle.unit()), ("pre_barrier_length", "nm")]),
        records: t,
        summary: Some(json!({"root_count": found.len()})),
        findings: Vec::new(),
    })
}

pub fn coeffs(args: &CoeffArgs, cfg: &ConfigFile, angle: Angle) -> CliResult<Document> {
    let (circuit, circuit_echo) = resolve_circuit(&args.circuit, cfg)?;
    let (opts, scan_echo) = resolve_scan(&args.scan, cfg, angle.to_rad())?;
    let prepared = PreparedCircuit::new(&circuit)?;
    let (theta, branch) = match args.theta {
        Some(t) => (t * angle.to_rad(), Value::Null),
        None => (prepared.solve_branch(args.branch, &opts)?.theta, Value::from(args.branch)),
    };
    let co = recover_coefficients(&prepared.kinematics, theta)?;
    let mut t = table(&[
        "branch".into(),
        angle.col("theta"),
        "pre_barrier_length_nm".into(),
        "A".into(),
        "B".into(),
        "C".into(),
        "D".into(),
        "residual_junction_value".into(),
        "residual_junction_derivative".into(),
        "residual_closure_value".into(),
        "residual_closure_derivative".into(),
    ]);
    let mut row = vec![branch, angle.out(theta), num(prepared.kinematics.length_for_theta(theta))];
    row.extend(co.as_array().iter().map(|&v| num(v)));
    row.extend(co.boundary_residuals.iter().map(|&v| num(v)));
    t.push(row);
    Ok(Document {
        schema: "nanoloop.coeffs/1",
        config: json!({"circuit": circuit_echo, "scan": scan_echo, "branch": args.branch, "angle_unit": angle.unit()}),
        units: units(&[("theta", angle.unit()), ("pre_barrier_length", "nm"), ("A,B,C,D", "A = 1")]),
        records: t,
        summary: Some(json!({"max_residual": co.max_residual()})),
        findings: Vec::new(),
    })
}

pub fn wavefunction(args: &WaveArgs, cfg: &ConfigFile, angle: Angle) -> CliResult<Document> {
    let (circuit, circuit_echo) = resolve_circuit(&args.circuit, cfg)?;
    let (opts, scan_echo) = resolve_scan(&args.scan, cfg, angle.to_rad())?;
    let prepared = PreparedCircuit::new(&circuit)?;
    let root = prepared.solve_branch(args.branch, &opts)?;
    let co = recover_coefficients(&prepared.kinematics, root.theta)?;
    let trace = trace_wavefunction(&prepared.kinematics, &co, root.theta, args.samples, args.normalize)?;
    let mut t = Table::new(&["region", "x_nm", "psi"]);
    for s in &trace.samples {
        let region = serde_json::to_value(s.region)?;
        t.push(vec![region, num(s.x), num(s.psi)]);
    }
    Ok(Document {
        schema: "nanoloop.wavefunction/1",
        config: json!({
            "circuit": circuit_echo,
            "scan": scan_echo,
            "branch": args.branch,
            "samples_per_region": args.samples,
            "normalize": args.normalize,
            "angle_unit": angle.unit(),
        }),
        units: units(&[("x", "nm"), ("psi", if args.normalize { "nm^-1/2" } else { "A = 1" })]),
        records: t,
        summary: Some(json!({
            angle.col("theta"): angle.out(root.theta),
            "pre_barrier_length_nm": root.pre_barrier_length,
            "junction_residual": trace.junction_residual,
            "closure_residual": trace.closure_residual,
            "norm": opt(trace.norm),
        })),
        findings: Vec::new(),
    })
}

fn table_document(report: TableReport, schema: &'static str, length_col: &str, config: Value, angle: Angle) -> Document {
    let mut diag_names: Vec<String> = Vec::new();
    for cell in &report.cells {
        for d in &cell.diagnostics {
            if !diag_names.contains(&d.name) {
                diag_names.push(d.name.clone());
            }
        }
    }
    let mut columns: Vec<String> = vec![
        "energy_eV".into(),
        length_col.into(),
        "printed".into(),
        "computed_exact_nm".into(),
        "computed_branch1_nm".into(),
        "computed_linearized_nm".into(),
        angle.col("theta"),
        "det_residual".into(),
        "class".into(),
    ];
    columns.extend(diag_names.iter().cloned());
    columns.push("note".into());
    let mut t = table(&columns);
    for c in &report.cells {
        let mut row = vec![
            num(c.energy),
            num(c.barrier_length),
            num(c.printed_value),
            opt(c.computed_exact),
            opt(c.computed_branch1),
            opt(c.computed_linearized),
            c.theta.map(|v| angle.out(v)).unwrap_or(Value::Null),
            opt(c.det_residual),
            Value::from(c.class.label()),
        ];
        row.extend(diag_names.iter().map(|n| opt(c.diagnostic(n))));
        row.push(c.note.clone().map(Value::from).unwrap_or(Value::Null));
        t.push(row);
    }
    Document {
        schema,
        config,
        units: units(&[("energy", "eV"), ("computed", "nm"), ("theta", angle.unit())]),
        records: t,
        summary: Some(json!({
            "counts": report.counts,
            "outliers": report.outliers,
        })),
        findings: report.findings,
    }
}

pub fn repro(cmd: &ReproCommand, angle: Angle) -> CliResult<Document> {
    match *cmd {
        ReproCommand::Table1 { height } => {
            let report = reproduce_table1(height, &table1_entries());
            Ok(table_document(
                report,
                "nanoloop.repro.table1/1",
                "b_nm",
                json!({"V0_eV": height, "angle_unit": angle.unit()}),
                angle,
            ))
        }
        ReproCommand::Table2 { height, reading } => {
            let (r, col) = match reading {
                Reading::Pm => (Table2Reading::Picometre, "c_pm"),
                Reading::Nm => (Table2Reading::Nanometre, "c_nm"),
            };
            let report = reproduce_table2(height, &table2_entries(), r);
            Ok(table_document(
                report,
                "nanoloop.repro.table2/1",
                col,
                json!({"V0_eV": height, "reading": reading, "angle_unit": angle.unit()}),
                angle,
            ))
        }
        ReproCommand::Fig6 { height, length, half_window, grid_step } => {
            let stats = fig6_stats(height, length, &printed::ENERGIES, &Fig6Options { half_window, grid_step })?;
            let mut t = Table::new(&["energy_eV", "lower_deg", "upper_deg", "midpoint_deg"]);
            for p in &stats.points {
                t.push(vec![num(p.energy), num(p.lower_deg), num(p.upper_deg), num(p.midpoint_deg)]);
            }
            Ok(Document {
                schema: "nanoloop.repro.fig6/1",
                config: json!({"V0_eV": height, "c_nm": length, "half_window_rad": half_window, "grid_step_rad": grid_step}),
                units: units(&[("energy", "eV"), ("angles", "deg")]),
                records: t,
                summary: Some(json!({
                    "mean_theta_deg": stats.mean_theta_deg,
                    "stddev_theta_deg": stats.stddev_theta_deg,
                    "population_stddev_deg": stats.population_stddev_deg,
                    "slope_deg_per_eV": stats.slope_deg_per_ev,
                    "intercept_deg": stats.intercept_deg,
                    "printed_mean_deg": printed::FIG6_MEAN_DEG,
                    "printed_stddev_deg": printed::FIG6_STDDEV_DEG,
                })),
                findings: Vec::new(),
            })
        }
        ReproCommand::XiSweep { height, width, energy, ref xi } => {
            let report = xi_sweep(height, width, energy, xi)?;
            let n = report.rows.iter().map(|r| r.branches.len()).max().unwrap_or(0);
            let mut columns: Vec<String> = vec!["xi".into(), "effective_height_eV".into(), "effective_width_nm".into()];
            columns.extend((0..n).map(|i| angle.col(&format!("branch{i}_theta"))));
            columns.push(angle.col("limit_gap"));
            let mut t = table(&columns);
            for r in &report.rows {
                let mut row = vec![num(r.scale), num(r.effective_height), num(r.effective_width)];
                row.extend((0..n).map(|i| r.branches.get(i).copied().flatten().map(|v| angle.out(v)).unwrap_or(Value::Null)));
                row.push(r.limit_gap.map(|v| angle.out(v)).unwrap_or(Value::Null));
                t.push(row);
            }
            Ok(Document {
                schema: "nanoloop.repro.xi_sweep/1",
                config: json!({"V0_eV": height, "b_nm": width, "E_eV": energy, "xi": xi, "angle_unit": angle.unit()}),
                units: units(&[("effective_height", "eV"), ("effective_width", "nm"), ("theta", angle.unit())]),
                records: t,
                summary: Some(json!({
                    angle.col("limit_theta"): angle.out(report.limit_theta),
                    "families": report.families,
                })),
                findings: report.findings,
            })
        }
        ReproCommand::Shorted { extent, spacing } => {
            let r = shorted_grid_scan(extent, spacing)?;
            let v = r.first_violation.as_ref();
            let mut t = Table::new(&[
                "extent", "spacing", "k_points", "x_points", "positive", "negative", "zero", "sign_changes",
                "min_value", "max_value", "violation_K", "violation_X", "violation_value", "neighbour_K",
                "neighbour_X", "neighbour_value",
            ]);
            t.push(vec![
                num(extent),
                num(spacing),
                Value::from(r.k_points),
                Value::from(r.x_points),
                Value::from(r.positive),
                Value::from(r.negative),
                Value::from(r.zero),
                Value::from(r.sign_changes),
                num(r.min_value),
                num(r.max_value),
                opt(v.map(|v| v.k_arg)),
                opt(v.map(|v| v.x_arg)),
                opt(v.map(|v| v.value)),
                opt(v.map(|v| v.neighbour_k)),
                opt(v.map(|v| v.neighbour_x)),
                opt(v.map(|v| v.neighbour_value)),
            ]);
            let finding = if r.constant_sign() {
                "The shorted determinant keeps one sign on the grid.".to_string()
            } else {
                format!("The shorted determinant changes sign {} times on the grid.", r.sign_changes)
            };
            Ok(Document {
                schema: "nanoloop.repro.shorted/1",
                config: json!({"extent": extent, "spacing": spacing, "R": 1.0}),
                units: units(&[("K", "Airy argument"), ("X", "Airy argument")]),
                records: t,
                summary: Some(json!({"constant_sign": r.constant_sign()})),
                findings: vec![finding],
            })
        }
    }
}

pub fn check_jobs(jobs: Option<usize>) -> CliResult<()> {
    match jobs {
        Some(0) => Err(CliError::Usage("--jobs must be at least 1".into())),
        _ => Ok(()),
    }
}
