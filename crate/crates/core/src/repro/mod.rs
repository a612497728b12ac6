//! Regeneration of the rectangular and triangular length tables, the
//! near −360° regression and the scale-factor sweep, with per-cell
//! agreement classes against the printed values.

pub mod printed;
mod sweeps;
mod tables;

use serde::Serialize;

pub use sweeps::{
    fig6_stats, shorted_grid_scan, xi_sweep, BranchFamily, FamilyVerdict, Fig6Options, Fig6Point,
    RegressionStats, ShortedScanReport, SignViolation, XiSweepReport, XiSweepRow,
};
pub use tables::{reproduce_table1, reproduce_table2, table1_entries, table2_entries, Table2Reading};

/// Relative tolerance for EXACT and UNIT-SHIFT.
pub const LENGTH_TOLERANCE: f64 = 0.005;
/// Relative tolerance on the linearized diagnostic ratio.
pub const RATIO_TOLERANCE: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum AgreementClass {
    #[serde(rename = "EXACT")]
    Exact,
    #[serde(rename = "LINEARIZED-MATCH")]
    LinearizedMatch,
    #[serde(rename = "UNIT-SHIFT")]
    UnitShift,
    #[serde(rename = "OUTLIER")]
    Outlier,
}

impl AgreementClass {
    pub fn label(&self) -> &'static str {
        match self {
            AgreementClass::Exact => "EXACT",
            AgreementClass::LinearizedMatch => "LINEARIZED-MATCH",
            AgreementClass::UnitShift => "UNIT-SHIFT",
            AgreementClass::Outlier => "OUTLIER",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Diagnostic {
    pub name: String,
    pub value: f64,
}

fn diag(name: &str, value: f64) -> Diagnostic {
    Diagnostic {
        name: name.to_string(),
        value,
    }
}

/// One reproduced table entry.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableCell {
    /// eV
    pub energy: f64,
    /// Column label as printed (b or c), nm.
    pub barrier_length: f64,
    pub printed_value: f64,
    /// Exact root length (branch 0 for rectangular, nearest −2π for triangular), nm.
    pub computed_exact: Option<f64>,
    /// Rectangular only: branch-1 root length, nm.
    pub computed_branch1: Option<f64>,
    /// Rectangular only: `b(V0 − E)/E`, nm.
    pub computed_linearized: Option<f64>,
    pub theta: Option<f64>,
    pub det_residual: Option<f64>,
    pub diagnostics: Vec<Diagnostic>,
    pub class: AgreementClass,
    pub note: Option<String>,
}

impl TableCell {
    pub fn diagnostic(&self, name: &str) -> Option<f64> {
        self.diagnostics.iter().find(|d| d.name == name).map(|d| d.value)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct ClassCounts {
    pub exact: usize,
    pub linearized_match: usize,
    pub unit_shift: usize,
    pub outlier: usize,
}

impl ClassCounts {
    fn tally(cells: &[TableCell]) -> ClassCounts {
        let mut c = ClassCounts::default();
        for cell in cells {
            match cell.class {
                AgreementClass::Exact => c.exact += 1,
                AgreementClass::LinearizedMatch => c.linearized_match += 1,
                AgreementClass::UnitShift => c.unit_shift += 1,
                AgreementClass::Outlier => c.outlier += 1,
            }
        }
        c
    }

    pub fn total(&self) -> usize {
        self.exact + self.linearized_match + self.unit_shift + self.outlier
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableReport {
    pub table: String,
    pub height: f64,
    pub cells: Vec<TableCell>,
    pub counts: ClassCounts,
    /// `(E, length)` of every OUTLIER cell.
    pub outliers: Vec<(f64, f64)>,
    pub findings: Vec<String>,
}

impl TableReport {
    fn new(table: &str, height: f64, mut cells: Vec<TableCell>, findings: Vec<String>) -> TableReport {
        cells.sort_by(|a, b| {
            a.energy
                .total_cmp(&b.energy)
                .then(a.barrier_length.total_cmp(&b.barrier_length))
        });
        let counts = ClassCounts::tally(&cells);
        let outliers = cells
            .iter()
            .filter(|c| c.class == AgreementClass::Outlier)
            .map(|c| (c.energy, c.barrier_length))
            .collect();
        TableReport {
            table: table.to_string(),
            height,
            cells,
            counts,
            outliers,
            findings,
        }
    }

    pub fn cell(&self, energy: f64, length: f64) -> Option<&TableCell> {
        self.cells
            .iter()
            .find(|c| (c.energy - energy).abs() < 1e-12 && (c.barrier_length - length).abs() < 1e-12)
    }
}

fn within(value: f64, target: f64, tol: f64) -> bool {
    target != 0.0 && ((value / target) - 1.0).abs() <= tol
}
