//! Report types emitted by the CLI and their JSON, CSV and text renderings.

use serde::{Deserialize, Serialize};

use crate::hubbard::ModelParams;
use crate::swd::HalfInt;

/// Output encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

/// Header and rows of a flat rendering; numbers already formatted.
pub struct Grid {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

/// A report that renders to every [`Format`].
pub trait Report: Serialize {
    /// Flat rendering; `num` formats floating-point cells.
    fn grid(&self, num: &dyn Fn(f64) -> String) -> Grid;

    /// Lines printed above the table rendering.
    fn preamble(&self) -> Vec<String> {
        Vec::new()
    }
}

/// Shortest round-trip decimal, as used in JSON.
/// Integers verbatim, other magnitudes in three-digit scientific notation.
pub fn compact(x: f64) -> String {
    if x == 0.0 {
        "0".into()
    } else if x.fract() == 0.0 && x.abs() < 1e15 {
        format!("{x}")
    } else {
        format!("{x:.3e}")
    }
}

pub fn shortest(x: f64) -> String {
    let a = x.abs();
    if a == 0.0 || !x.is_finite() || (1e-5..1e16).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

/// Twelve significant digits; magnitudes below `1e-12` print as `0`.
pub fn twelve(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x.is_finite() { "0".into() } else { x.to_string() };
    }
    let mag = x.abs().log10().floor() as i32;
    let decimals = (11 - mag).clamp(0, 12) as usize;
    let s = format!("{x:.decimals$}");
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        "0".into()
    } else {
        s
    }
}

pub fn render(report: &dyn ReportDyn, format: Format) -> Result<String, String> {
    match format {
        Format::Json => report.json(),
        Format::Csv => {
            let g = report.grid_dyn(&shortest);
            let mut w = csv::Writer::from_writer(Vec::new());
            let mut write = |rec: &[String]| w.write_record(rec).map_err(|e| e.to_string());
            write(&g.header)?;
            for r in &g.rows {
                write(r)?;
            }
            let bytes = w.into_inner().map_err(|e| e.to_string())?;
            String::from_utf8(bytes).map_err(|e| e.to_string())
        }
        Format::Table => {
            let g = report.grid_dyn(&twelve);
            let mut out = String::new();
            for line in report.preamble_dyn() {
                out.push_str(&line);
                out.push('\n');
            }
            out.push_str(&align(&g));
            Ok(out)
        }
    }
}

/// Object-safe view of [`Report`].
pub trait ReportDyn {
    fn json(&self) -> Result<String, String>;
    fn grid_dyn(&self, num: &dyn Fn(f64) -> String) -> Grid;
    fn preamble_dyn(&self) -> Vec<String>;
}

impl<R: Report> ReportDyn for R {
    fn json(&self) -> Result<String, String> {
        serde_json::to_string_pretty(self).map(|s| s + "\n").map_err(|e| e.to_string())
    }
    fn grid_dyn(&self, num: &dyn Fn(f64) -> String) -> Grid {
        self.grid(num)
    }
    fn preamble_dyn(&self) -> Vec<String> {
        self.preamble()
    }
}

fn align(g: &Grid) -> String {
    let cols = g.header.len();
    let width = |i: usize| {
        std::iter::once(&g.header).chain(&g.rows).map(|r| r.get(i).map_or(0, |c| c.chars().count())).max().unwrap_or(0)
    };
    let widths: Vec<usize> = (0..cols).map(width).collect();
    let line = |r: &[String]| {
        let cells: Vec<String> = r.iter().zip(&widths).map(|(c, &w)| format!("{c:<w$}")).collect();
        cells.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(&g.header);
    out.push_str(&line(&widths.iter().map(|&w| "-".repeat(w)).collect::<Vec<_>>()));
    for r in &g.rows {
        out.push_str(&line(r));
    }
    out
}

fn s<T: ToString>(v: T) -> String {
    v.to_string()
}

fn header(names: &[&str]) -> Vec<String> {
    names.iter().map(|n| n.to_string()).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ElectronCount {
    pub ne: usize,
    pub dim: u128,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SectorCount {
    pub n_plus: usize,
    pub n_minus: usize,
    pub dim: u128,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DimsReport {
    pub n: usize,
    pub total: u128,
    pub by_electrons: Vec<ElectronCount>,
    pub half_filled: u128,
    pub half_filled_sectors: Vec<SectorCount>,
    /// Dimension of the `--ne` or `--nplus/--nminus` selection, when given.
    pub selected: Option<SelectedDim>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectedDim {
    pub label: String,
    pub dim: u128,
}

impl Report for DimsReport {
    fn grid(&self, _: &dyn Fn(f64) -> String) -> Grid {
        let mut rows = vec![vec![s("total"), s(self.total)]];
        rows.extend(self.by_electrons.iter().map(|e| vec![format!("ne={}", e.ne), s(e.dim)]));
        rows.extend(
            self.half_filled_sectors.iter().map(|c| vec![format!("sector=({},{})", c.n_plus, c.n_minus), s(c.dim)]),
        );
        rows.push(vec![s("half_filled"), s(self.half_filled)]);
        if let Some(sel) = &self.selected {
            rows.push(vec![format!("selected {}", sel.label), s(sel.dim)]);
        }
        Grid { header: header(&["quantity", "dim"]), rows }
    }

    fn preamble(&self) -> Vec<String> {
        vec![format!("N = {}", self.n)]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitEntry {
    pub representative: String,
    pub period: usize,
    pub kappa: usize,
    /// Letter-level momenta `B/κ`.
    pub momenta: Vec<i64>,
    /// Momenta of the fermionic translation on this orbit.
    pub fermionic_momenta: Vec<i64>,
    pub elements: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitsReport {
    pub n: usize,
    pub selection: String,
    pub brillouin_zone: Vec<i64>,
    pub states: usize,
    pub orbits: Vec<OrbitEntry>,
}

impl Report for OrbitsReport {
    fn grid(&self, _: &dyn Fn(f64) -> String) -> Grid {
        let list = |v: &[i64]| v.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(" ");
        let rows = self
            .orbits
            .iter()
            .map(|o| {
                vec![o.representative.clone(), s(o.period), s(o.kappa), list(&o.momenta), list(&o.fermionic_momenta)]
            })
            .collect();
        Grid { header: header(&["representative", "period", "kappa", "momenta", "fermionic_momenta"]), rows }
    }

    fn preamble(&self) -> Vec<String> {
        let zone: Vec<String> = self.brillouin_zone.iter().map(|k| k.to_string()).collect();
        vec![
            format!("N = {}, {}, {} states in {} orbits", self.n, self.selection, self.states, self.orbits.len()),
            format!("Brillouin zone: {}", zone.join(" ")),
        ]
    }
}

/// One `μ` row of the ledger; list columns run over the `λ′` and `λ″` shapes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table1Row {
    pub mu_spin: [usize; 2],
    pub mu_pseudo: [usize; 2],
    pub lambda_spin: Vec<Vec<usize>>,
    pub lambda_pseudo: Vec<Vec<usize>>,
    #[serde(rename = "S")]
    pub s: Vec<HalfInt>,
    #[serde(rename = "J")]
    pub j: Vec<HalfInt>,
    pub dim_spin: Vec<u128>,
    pub dim_pseudo: Vec<u128>,
    pub tau: u128,
    pub x: u128,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaterializedVector {
    pub mu: [usize; 4],
    pub lambda_spin: Vec<usize>,
    pub tableau_spin: usize,
    pub lambda_pseudo: Vec<usize>,
    pub tableau_pseudo: usize,
    pub spin_sites: Vec<usize>,
    #[serde(rename = "S")]
    pub s: HalfInt,
    #[serde(rename = "J")]
    pub j: HalfInt,
    /// `(configuration literal, coefficient)`.
    pub components: Vec<(String, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table1Report {
    pub n: usize,
    pub n_plus: usize,
    pub n_minus: usize,
    #[serde(rename = "S_z")]
    pub s_z: HalfInt,
    #[serde(rename = "J_z")]
    pub j_z: HalfInt,
    pub rows: Vec<Table1Row>,
    pub total: u128,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub vectors: Option<Vec<MaterializedVector>>,
}

fn shape_cell(parts: &[usize]) -> String {
    if parts.is_empty() {
        "-".into()
    } else {
        format!("{{{}}}", parts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(","))
    }
}

impl Report for Table1Report {
    fn grid(&self, _: &dyn Fn(f64) -> String) -> Grid {
        let mut rows = Vec::new();
        for r in &self.rows {
            let height = r.lambda_spin.len().max(r.lambda_pseudo.len()).max(1);
            for i in 0..height {
                let first = i == 0;
                let pick = |v: &[String], empty: &str| -> String {
                    match v.get(i) {
                        Some(x) => x.clone(),
                        None if i == 0 => empty.to_string(),
                        None => String::new(),
                    }
                };
                let ls: Vec<String> = r.lambda_spin.iter().map(|p| shape_cell(p)).collect();
                let lp: Vec<String> = r.lambda_pseudo.iter().map(|p| shape_cell(p)).collect();
                let ss: Vec<String> = r.s.iter().map(|h| h.to_string()).collect();
                let js: Vec<String> = r.j.iter().map(|h| h.to_string()).collect();
                let ds: Vec<String> = r.dim_spin.iter().map(|d| d.to_string()).collect();
                let dp: Vec<String> = r.dim_pseudo.iter().map(|d| d.to_string()).collect();
                let pair = |p: [usize; 2]| format!("({},{})", p[0], p[1]);
                rows.push(vec![
                    if first { pair(r.mu_spin) } else { String::new() },
                    if first { pair(r.mu_pseudo) } else { String::new() },
                    pick(&ls, "-"),
                    pick(&lp, "-"),
                    pick(&ss, "-"),
                    pick(&js, "-"),
                    pick(&ds, "-"),
                    pick(&dp, "-"),
                    if first { s(r.tau) } else { String::new() },
                    if first { s(r.x) } else { String::new() },
                ]);
            }
        }
        rows.push(vec![String::new(); 8].into_iter().chain([s("total"), s(self.total)]).collect());
        Grid { header: header(&["mu'", "mu''", "lambda'", "lambda''", "S", "J", "dim'", "dim''", "tau", "x_mu"]), rows }
    }

    fn preamble(&self) -> Vec<String> {
        vec![format!(
            "N = {}, N+ = {}, N- = {}, S_z = {}, J_z = {}, total = {}",
            self.n, self.n_plus, self.n_minus, self.s_z, self.j_z, self.total
        )]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BasisReport {
    pub n: usize,
    pub mu: [usize; 4],
    /// Configuration literals, one per orbit word.
    pub rows: Vec<String>,
    /// Column labels `{λ}:T<index>`.
    pub columns: Vec<String>,
    /// Tableau of each column, rows separated by `/`.
    pub tableaux: Vec<String>,
    /// `coefficients[row][column]`.
    pub coefficients: Vec<Vec<f64>>,
}

impl Report for BasisReport {
    fn grid(&self, num: &dyn Fn(f64) -> String) -> Grid {
        let mut head = vec![s("configuration")];
        head.extend(self.columns.iter().cloned());
        let rows = self
            .rows
            .iter()
            .zip(&self.coefficients)
            .map(|(label, coeffs)| std::iter::once(label.clone()).chain(coeffs.iter().map(|&c| num(c))).collect())
            .collect();
        Grid { header: head, rows }
    }

    fn preamble(&self) -> Vec<String> {
        let cols: Vec<String> = self.columns.iter().zip(&self.tableaux).map(|(c, t)| format!("{c}={t}")).collect();
        vec![format!("N = {}, mu = {:?}", self.n, self.mu), format!("tableaux: {}", cols.join(" "))]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockEntry {
    pub label: String,
    pub dim: usize,
    pub eigenvalues: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Residuals {
    /// Worst `‖Av − λv‖ / ‖A‖_F` over all blocks.
    pub eigen: f64,
    /// Frobenius norm of `H` outside the blocks after the basis change.
    pub off_block: f64,
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub params: ModelParams,
    pub strategy: String,
    pub selection: String,
    pub blocks: Vec<BlockEntry>,
    pub residuals: Residuals,
}

impl Report for SpectrumReport {
    fn grid(&self, num: &dyn Fn(f64) -> String) -> Grid {
        let rows = self
            .blocks
            .iter()
            .flat_map(|b| b.eigenvalues.iter().enumerate().map(move |(i, &e)| vec![b.label.clone(), s(i), num(e)]))
            .collect();
        Grid { header: header(&["block_label", "index", "eigenvalue"]), rows }
    }

    fn preamble(&self) -> Vec<String> {
        let p = &self.params;
        vec![format!(
            "N = {}, t = {}, u = {}, {}, strategy {}, {}, {} blocks, residual {:e}, off-block {:e}",
            p.n,
            p.t,
            p.u,
            p.boundary,
            self.strategy,
            self.selection,
            self.blocks.len(),
            self.residuals.eigen,
            self.residuals.off_block
        )]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub suite: String,
    pub name: String,
    pub value: f64,
    pub bound: f64,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub params: ModelParams,
    pub suites: Vec<String>,
    pub checks: Vec<CheckEntry>,
    pub passed: bool,
}

impl Report for VerifyReport {
    fn grid(&self, _: &dyn Fn(f64) -> String) -> Grid {
        let rows = self
            .checks
            .iter()
            .map(|c| {
                vec![
                    c.suite.clone(),
                    c.name.clone(),
                    compact(c.value),
                    compact(c.bound),
                    c.status.to_string(),
                    c.note.clone().unwrap_or_default(),
                ]
            })
            .collect();
        Grid { header: header(&["suite", "check", "value", "bound", "status", "note"]), rows }
    }

    fn preamble(&self) -> Vec<String> {
        let p = &self.params;
        vec![format!(
            "N = {}, t = {}, u = {}, {}: {}",
            p.n,
            p.t,
            p.u,
            p.boundary,
            if self.passed { "PASS" } else { "FAIL" }
        )]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_digits() {
        assert_eq!(twelve(0.408248290463863), "0.408248290464");
        assert_eq!(twelve(-2.0), "-2.00000000000");
        assert_eq!(twelve(1e-17), "0");
        assert_eq!(twelve(-3e-16), "0");
        assert_eq!(twelve(1234.5), "1234.50000000");
    }

    #[test]
    fn shortest_round_trips() {
        let x = 0.1 + 0.2;
        assert_eq!(shortest(x).parse::<f64>().unwrap(), x);
    }
}
