//! Command-line front end.
//!
//! Exit codes: 0 success, 1 invariant failure, 2 usage error, 3 numerical failure.

pub mod report;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::fock::{Configuration, Letter, Sector, MAX_SITES};
use crate::hubbard::{block_diagonalize, Boundary, HubbardError, ModelParams, SectorSelection, Strategy};
use crate::scalar::binomial;
use crate::swd::{halffilling_dimension, sector_adapted_basis, sector_ledger, SwdError};
use crate::symrep::{irreducible_basis, OrbitSpace};
use crate::translation::{brillouin_zone, orbits, orbits_of};

use report::{
    render, BasisReport, BlockEntry, DimsReport, ElectronCount, Format, MaterializedVector, OrbitEntry, OrbitsReport,
    ReportDyn, Residuals, SectorCount, SelectedDim, SpectrumReport, Table1Report, Table1Row, VerifyReport,
};
use verify::{run_suites, Suite, SuiteError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVARIANT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

/// Largest chain for commands that enumerate configurations.
const MAX_ENUMERATED: usize = 16;

#[derive(Debug, Parser)]
#[command(name = "hubbard-swd", version, about = "Symmetry-adapted exact diagonalization of the 1D Hubbard chain")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Hilbert-space dimensions: total, per electron number, half-filled.
    Dims(DimsArgs),
    /// Translation orbits with period, rarefaction index and momenta.
    Orbits(OrbitsArgs),
    /// Schur-Weyl dimension ledger of a half-filled sector.
    Table1(Table1Args),
    /// Irreducible symmetric-group basis of a two-letter orbit.
    Basis(BasisArgs),
    /// Block-diagonalized Hamiltonian spectrum.
    Spectrum(SpectrumArgs),
    /// Invariant suite: commutators, projector algebra, ledgers, blocks.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output format
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Write the report to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SectorArgs {
    /// Total electron number.
    #[arg(long, conflicts_with_all = ["nplus", "nminus", "sector"])]
    pub ne: Option<usize>,
    /// Spin-up electron number (with --nminus).
    #[arg(long, requires = "nminus", conflicts_with = "sector")]
    pub nplus: Option<usize>,
    /// Spin-down electron number (with --nplus).
    #[arg(long, requires = "nplus", conflicts_with = "sector")]
    pub nminus: Option<usize>,
    /// Sector as `N+,N-`.
    #[arg(long, value_parser = parse_pair)]
    pub sector: Option<(usize, usize)>,
}

impl SectorArgs {
    fn selection(&self, n: usize) -> Result<Option<SectorSelection>, String> {
        let pick = match (self.ne, self.nplus.zip(self.nminus).or(self.sector)) {
            (Some(ne), _) => {
                if ne > 2 * n {
                    return Err(format!("--ne {ne} exceeds 2N = {}", 2 * n));
                }
                Some(SectorSelection::Electrons(ne))
            }
            (None, Some((p, m))) => {
                if p > n || m > n {
                    return Err(format!("sector ({p},{m}) does not fit on {n} sites"));
                }
                Some(SectorSelection::Single(Sector::new(p, m)))
            }
            (None, None) => None,
        };
        Ok(pick)
    }
}

#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    /// Hopping energy.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub t: f64,
    /// On-site repulsion.
    #[arg(long, default_value_t = 4.0, allow_negative_numbers = true)]
    pub u: f64,
    /// Boundary condition: periodic or open
    #[arg(long, default_value = "periodic")]
    pub boundary: Boundary,
}

#[derive(Debug, Clone, Args)]
pub struct DimsArgs {
    /// Number of lattice sites
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub sector: SectorArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct OrbitsArgs {
    /// Number of lattice sites
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub sector: SectorArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct Table1Args {
    /// Number of lattice sites
    #[arg(long)]
    pub n: usize,
    /// Spin-up electron number
    #[arg(long)]
    pub nplus: usize,
    /// Spin-down electron number
    #[arg(long)]
    pub nminus: usize,
    /// Boundary condition: periodic or open
    #[arg(long, default_value = "periodic")]
    pub boundary: Boundary,
    /// Also emit every adapted vector of the sector.
    #[arg(long)]
    pub materialize: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct BasisArgs {
    /// Number of lattice sites
    #[arg(long)]
    pub n: usize,
    /// Weight `#+,#-,#±,#∅` with at most two nonzero entries.
    #[arg(long, value_parser = parse_mu)]
    pub mu: [usize; 4],
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SpectrumArgs {
    /// Number of lattice sites
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub sector: SectorArgs,
    /// Block strategy: sector, sector+momentum or sector+swd
    #[arg(long, default_value = "sector")]
    pub strategy: Strategy,
    /// Largest accepted eigenpair residual relative to the block norm.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Number of lattice sites
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub model: ModelArgs,
    /// Suites to run (comma-separated): all, spin, pseudospin, projectors, ledger, casimir, blocks.
    #[arg(long, value_delimiter = ',', default_value = "all")]
    pub suite: Vec<String>,
    /// Commutator tolerance relative to the Hamiltonian norm.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

fn parse_list(s: &str) -> Result<Vec<usize>, String> {
    s.split(',').map(|p| p.trim().parse::<usize>().map_err(|e| format!("'{p}': {e}"))).collect()
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    match parse_list(s)?.as_slice() {
        [a, b] => Ok((*a, *b)),
        _ => Err(format!("expected two comma-separated integers, got '{s}'")),
    }
}

fn parse_mu(s: &str) -> Result<[usize; 4], String> {
    match parse_list(s)?.as_slice() {
        [a, b, c, d] => Ok([*a, *b, *c, *d]),
        _ => Err(format!("expected four comma-separated integers, got '{s}'")),
    }
}

/// A failure mapped onto an exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }

    fn numerical(message: impl Into<String>) -> Self {
        Failure { code: EXIT_NUMERICAL, message: message.into() }
    }
}

impl From<HubbardError> for Failure {
    fn from(e: HubbardError) -> Self {
        match e {
            HubbardError::Precondition { .. } | HubbardError::InvalidModel(_) | HubbardError::Fock(_) => {
                Failure::usage(e.to_string())
            }
            HubbardError::Swd(SwdError::NotHalfFilled { .. } | SwdError::OddPeriodic(_)) => {
                Failure::usage(e.to_string())
            }
            _ => Failure::numerical(e.to_string()),
        }
    }
}

impl From<SuiteError> for Failure {
    fn from(e: SuiteError) -> Self {
        match e {
            SuiteError::Hubbard(h) => h.into(),
            SuiteError::Symrep(s) => Failure::numerical(s.to_string()),
        }
    }
}

/// Rendered report plus the exit code it implies.
pub struct Outcome {
    pub text: String,
    pub code: i32,
}

/// Parses `args` (including the program name), runs the command and writes
/// the report. Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { stdout } else { stderr };
            let _ = sink.write_all(text.as_bytes());
            return if code == 0 { EXIT_OK } else { EXIT_USAGE };
        }
    };
    let out_path = output_args(&cli.command).out.clone();
    let started = Instant::now();
    let result = execute(&cli.command);
    log::info!("command finished in {:.3} s", started.elapsed().as_secs_f64());
    match result {
        Ok(outcome) => {
            let written = match &out_path {
                Some(path) => {
                    std::fs::write(path, &outcome.text).map_err(|e| format!("cannot write {}: {e}", path.display()))
                }
                None => stdout.write_all(outcome.text.as_bytes()).map_err(|e| e.to_string()),
            };
            if let Err(msg) = written {
                let _ = writeln!(stderr, "error: {msg}");
                return EXIT_USAGE;
            }
            outcome.code
        }
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn output_args(c: &Command) -> &OutputArgs {
    match c {
        Command::Dims(a) => &a.output,
        Command::Orbits(a) => &a.output,
        Command::Table1(a) => &a.output,
        Command::Basis(a) => &a.output,
        Command::Spectrum(a) => &a.output,
        Command::Verify(a) => &a.output,
    }
}

fn check_sites(n: usize, limit: usize) -> Result<(), Failure> {
    if n == 0 || n > limit {
        return Err(Failure::usage(format!("--n must lie in 1..={limit}, got {n}")));
    }
    Ok(())
}

fn emit(report: &dyn ReportDyn, format: Format, code: i32) -> Result<Outcome, Failure> {
    let text = render(report, format).map_err(Failure::numerical)?;
    Ok(Outcome { text, code })
}

/// Runs a parsed command and renders its report.
pub fn execute(command: &Command) -> Result<Outcome, Failure> {
    match command {
        Command::Dims(a) => emit(&dims(a)?, a.output.format, EXIT_OK),
        Command::Orbits(a) => emit(&orbit_report(a)?, a.output.format, EXIT_OK),
        Command::Table1(a) => emit(&table1(a)?, a.output.format, EXIT_OK),
        Command::Basis(a) => emit(&basis(a)?, a.output.format, EXIT_OK),
        Command::Spectrum(a) => {
            let r = spectrum(a)?;
            let bad = r.residuals.eigen > a.tol;
            if bad {
                log::error!("eigenpair residual {:e} exceeds tolerance {:e}", r.residuals.eigen, a.tol);
            }
            emit(&r, a.output.format, if bad { EXIT_NUMERICAL } else { EXIT_OK })
        }
        Command::Verify(a) => {
            let r = verify(a)?;
            for c in r.checks.iter().filter(|c| c.status == report::Status::Fail) {
                log::error!("{} / {}: {:e} exceeds {:e}", c.suite, c.name, c.value, c.bound);
            }
            emit(&r, a.output.format, if r.passed { EXIT_OK } else { EXIT_INVARIANT })
        }
    }
}

pub fn dims(a: &DimsArgs) -> Result<DimsReport, Failure> {
    check_sites(a.n, MAX_SITES)?;
    let n = a.n;
    let two_n = 2 * n as u64;
    let by_electrons = (0..=2 * n).map(|ne| ElectronCount { ne, dim: binomial(two_n, ne as u64) }).collect();
    let half_filled_sectors = Sector::with_electrons(n, n)
        .into_iter()
        .map(|s| SectorCount { n_plus: s.n_plus, n_minus: s.n_minus, dim: s.dimension(n) })
        .collect();
    let selected = a.sector.selection(n).map_err(Failure::usage)?.map(|sel| match sel {
        SectorSelection::Electrons(ne) => SelectedDim { label: format!("ne={ne}"), dim: binomial(two_n, ne as u64) },
        SectorSelection::Single(s) => SelectedDim { label: format!("sector={s}"), dim: s.dimension(n) },
        SectorSelection::All => SelectedDim { label: "all".into(), dim: 1u128 << two_n },
    });
    Ok(DimsReport {
        n,
        total: 1u128 << two_n,
        by_electrons,
        half_filled: halffilling_dimension(n),
        half_filled_sectors,
        selected,
    })
}

fn selection_label(sel: Option<SectorSelection>) -> String {
    match sel {
        None | Some(SectorSelection::All) => "all sectors".into(),
        Some(SectorSelection::Electrons(ne)) => format!("ne={ne}"),
        Some(SectorSelection::Single(s)) => format!("sector {s}"),
    }
}

pub fn orbit_report(a: &OrbitsArgs) -> Result<OrbitsReport, Failure> {
    check_sites(a.n, MAX_ENUMERATED)?;
    let sel = a.sector.selection(a.n).map_err(Failure::usage)?;
    let list = match sel {
        Some(SectorSelection::Single(s)) => orbits(a.n, Some(s)).map_err(|e| Failure::usage(e.to_string()))?,
        Some(SectorSelection::Electrons(ne)) => {
            let states = crate::fock::Basis::electrons(a.n, ne).map_err(|e| Failure::usage(e.to_string()))?;
            orbits_of(states.states())
        }
        _ => orbits(a.n, None).map_err(|e| Failure::usage(e.to_string()))?,
    };
    let lit = |c: &Configuration| c.literal();
    Ok(OrbitsReport {
        n: a.n,
        selection: selection_label(sel),
        brillouin_zone: brillouin_zone(a.n).momenta,
        states: list.iter().map(|o| o.period).sum(),
        orbits: list
            .iter()
            .map(|o| OrbitEntry {
                representative: lit(&o.representative),
                period: o.period,
                kappa: o.kappa,
                momenta: o.momenta(),
                fermionic_momenta: o.fermionic_momenta(),
                elements: o.elements.iter().map(lit).collect(),
            })
            .collect(),
    })
}

pub fn table1(a: &Table1Args) -> Result<Table1Report, Failure> {
    check_sites(a.n, MAX_ENUMERATED)?;
    let ledger = sector_ledger(a.n, a.nplus, a.nminus, a.boundary).map_err(|e| Failure::usage(e.to_string()))?;
    let rows = ledger
        .rows
        .iter()
        .map(|r| Table1Row {
            mu_spin: [r.mu_spin.0, r.mu_spin.1],
            mu_pseudo: [r.mu_pseudo.0, r.mu_pseudo.1],
            lambda_spin: r.spin.iter().map(|e| e.shape.parts().to_vec()).collect(),
            lambda_pseudo: r.pseudo.iter().map(|e| e.shape.parts().to_vec()).collect(),
            s: r.spin.iter().map(|e| e.quantum).collect(),
            j: r.pseudo.iter().map(|e| e.quantum).collect(),
            dim_spin: r.spin.iter().map(|e| e.dim).collect(),
            dim_pseudo: r.pseudo.iter().map(|e| e.dim).collect(),
            tau: r.tau,
            x: r.x,
        })
        .collect();
    let first = ledger.rows.first().ok_or_else(|| Failure::usage("empty ledger"))?;
    let vectors = if a.materialize {
        let sector = Sector::new(a.nplus, a.nminus);
        let basis = crate::fock::Basis::sector(a.n, sector).map_err(|e| Failure::usage(e.to_string()))?;
        let vs =
            sector_adapted_basis(a.n, sector, a.boundary, &basis).map_err(|e| Failure::numerical(e.to_string()))?;
        Some(
            vs.into_iter()
                .map(|v| MaterializedVector {
                    mu: v.label.mu,
                    lambda_spin: v.label.spin_shape.parts().to_vec(),
                    tableau_spin: v.label.spin_tableau,
                    lambda_pseudo: v.label.pseudo_shape.parts().to_vec(),
                    tableau_pseudo: v.label.pseudo_tableau,
                    spin_sites: v.label.placement.spin_sites.clone(),
                    s: v.label.s,
                    j: v.label.j,
                    components: v.entries.iter().map(|&(i, c)| (basis.states()[i].literal(), c)).collect(),
                })
                .collect(),
        )
    } else {
        None
    };
    Ok(Table1Report {
        n: a.n,
        n_plus: a.nplus,
        n_minus: a.nminus,
        s_z: first.s_z,
        j_z: first.j_z,
        rows,
        total: ledger.total,
        vectors,
    })
}

/// Letters of `μ = (#+, #−, #±, #∅)` in basis order `∅ < + < − < ±`.
const MU_LETTERS: [(usize, Letter); 4] = [(3, Letter::Empty), (0, Letter::Up), (1, Letter::Down), (2, Letter::Both)];

pub fn basis(a: &BasisArgs) -> Result<BasisReport, Failure> {
    check_sites(a.n, 20)?;
    if a.mu.iter().sum::<usize>() != a.n {
        return Err(Failure::usage(format!("--mu {:?} does not sum to N = {}", a.mu, a.n)));
    }
    let present: Vec<(usize, Letter)> = MU_LETTERS.iter().copied().filter(|(i, _)| a.mu[*i] > 0).collect();
    if present.len() > 2 {
        return Err(Failure::usage(format!("--mu {:?} uses more than two letters", a.mu)));
    }
    let low = present[0];
    let high = present.get(1).copied().unwrap_or((low.0, low.1));
    let weight = if present.len() == 2 { (a.mu[low.0], a.mu[high.0]) } else { (a.n, 0) };
    let space = OrbitSpace::new(weight);
    let b = irreducible_basis(&space).map_err(|e| Failure::numerical(e.to_string()))?;
    let rows = space
        .words()
        .iter()
        .map(|&w| space.letters(w).iter().map(|&l| if l == 0 { low.1.literal() } else { high.1.literal() }).collect())
        .collect();
    let coefficients = (0..space.dim()).map(|i| b.coefficients.row(i).to_vec()).collect();
    Ok(BasisReport {
        n: a.n,
        mu: a.mu,
        rows,
        columns: b.labels.iter().map(|l| l.to_string()).collect(),
        tableaux: b.labels.iter().map(|l| l.tableau.to_string()).collect(),
        coefficients,
    })
}

pub fn spectrum(a: &SpectrumArgs) -> Result<SpectrumReport, Failure> {
    check_sites(a.n, MAX_ENUMERATED)?;
    let params = ModelParams::new(a.n, a.model.t, a.model.u, a.model.boundary);
    let sel = a.sector.selection(a.n).map_err(Failure::usage)?;
    let selection = sel.unwrap_or(match a.strategy {
        Strategy::SectorSwd => SectorSelection::Electrons(a.n),
        _ => SectorSelection::All,
    });
    let d = block_diagonalize(&params, selection, a.strategy)?;
    let mut blocks = Vec::with_capacity(d.blocks.len());
    let mut worst: f64 = 0.0;
    for b in &d.blocks {
        let s = b.operator.diagonalize()?;
        log::info!("block {}: dim {}, residual {:e}", b.label, b.operator.dim(), s.relative_residual());
        worst = worst.max(s.relative_residual());
        blocks.push(BlockEntry { label: b.label.to_string(), dim: b.operator.dim(), eigenvalues: s.eigenvalues });
    }
    Ok(SpectrumReport {
        params,
        strategy: a.strategy.to_string(),
        selection: selection_label(Some(selection)),
        blocks,
        residuals: Residuals { eigen: worst, off_block: d.off_block_residual, tolerance: a.tol },
    })
}

pub fn verify(a: &VerifyArgs) -> Result<VerifyReport, Failure> {
    check_sites(a.n, 8)?;
    let mut suites = Vec::new();
    for name in &a.suite {
        if name == "all" {
            suites.extend(Suite::ALL);
        } else {
            suites.push(name.parse::<Suite>().map_err(Failure::usage)?);
        }
    }
    suites.sort();
    suites.dedup();
    let params = ModelParams::new(a.n, a.model.t, a.model.u, a.model.boundary);
    let checks = run_suites(&params, &suites, a.tol)?;
    let passed = checks.iter().all(|c| c.status != report::Status::Fail);
    Ok(VerifyReport { params, suites: suites.iter().map(|s| s.to_string()).collect(), checks, passed })
}

/// Binary entry point: logging to standard error, report to standard output.
pub fn main_entry() -> i32 {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .target(env_logger::Target::Stderr)
        .init();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();

    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
