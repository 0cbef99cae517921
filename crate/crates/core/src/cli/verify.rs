//! The invariant suites behind `verify`.

use std::fmt;
use std::str::FromStr;

use crate::fock::{Basis, Sector};
use crate::hubbard::{
    block_diagonalize, build_hamiltonian, build_pseudospin_ops, build_spin_ops, pseudo_squared, pseudo_z, spin_squared,
    spin_z, verify_symmetries, HubbardError, ModelParams, SectorSelection, Strategy, SymmetrySelection,
};
use crate::linalg::{DenseMatrix, SparseOperator};
use crate::swd::{halffilling_dimension, sector_adapted_basis, sector_ledger};
use crate::symrep::{
    content_vector, irreducible_basis, jm_matrix, orbit_labels, standard_tableaux, young_projector, OrbitSpace,
    Partition, SymrepError,
};

use super::report::{CheckEntry, Status};

/// Equality tolerance for exact-in-principle floating-point identities.
const ALGEBRA_TOL: f64 = 1e-12;
/// Allowed deviation between blocked and naive spectra.
const SPECTRUM_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Spin,
    Pseudospin,
    Projectors,
    Ledger,
    Casimir,
    Blocks,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::Spin, Suite::Pseudospin, Suite::Projectors, Suite::Ledger, Suite::Casimir, Suite::Blocks];
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Spin => "spin",
            Suite::Pseudospin => "pseudospin",
            Suite::Projectors => "projectors",
            Suite::Ledger => "ledger",
            Suite::Casimir => "casimir",
            Suite::Blocks => "blocks",
        })
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL.into_iter().find(|x| x.to_string() == s).ok_or_else(|| {
            format!("unknown suite '{s}' (expected all, spin, pseudospin, projectors, ledger, casimir or blocks)")
        })
    }
}

/// Failures that abort a suite rather than fail one check.
#[derive(Debug, thiserror::Error)]
pub enum SuiteError {
    #[error(transparent)]
    Hubbard(#[from] HubbardError),
    #[error(transparent)]
    Symrep(#[from] SymrepError),
}

struct Collector {
    suite: Suite,
    checks: Vec<CheckEntry>,
}

impl Collector {
    fn le(&mut self, name: impl Into<String>, value: f64, bound: f64) {
        let value = value.abs();
        let status = if value <= bound { Status::Pass } else { Status::Fail };
        self.checks.push(CheckEntry {
            suite: self.suite.to_string(),
            name: name.into(),
            value,
            bound,
            status,
            note: None,
        });
    }

    fn eq(&mut self, name: impl Into<String>, got: u128, want: u128) {
        let status = if got == want { Status::Pass } else { Status::Fail };
        self.checks.push(CheckEntry {
            suite: self.suite.to_string(),
            name: name.into(),
            value: got as f64,
            bound: want as f64,
            status,
            note: None,
        });
    }

    fn skip(&mut self, name: impl Into<String>, reason: &str) {
        self.checks.push(CheckEntry {
            suite: self.suite.to_string(),
            name: name.into(),
            value: 0.0,
            bound: 0.0,
            status: Status::Skipped,
            note: Some(reason.into()),
        });
    }
}

/// Runs the requested suites in a fixed order.
pub fn run_suites(params: &ModelParams, suites: &[Suite], tol: f64) -> Result<Vec<CheckEntry>, SuiteError> {
    let mut out = Vec::new();
    for &suite in Suite::ALL.iter().filter(|s| suites.contains(s)) {
        log::info!("verify: running suite {suite}");
        let mut c = Collector { suite, checks: Vec::new() };
        match suite {
            Suite::Spin => spin_suite(params, tol, &mut c)?,
            Suite::Pseudospin => pseudospin_suite(params, tol, &mut c)?,
            Suite::Projectors => projector_suite(params.n, &mut c)?,
            Suite::Ledger => ledger_suite(params, &mut c),
            Suite::Casimir => casimir_suite(params, &mut c)?,
            Suite::Blocks => block_suite(params, tol, &mut c)?,
        }
        out.extend(c.checks);
    }
    Ok(out)
}

fn defect(a: &SparseOperator<f64>, b: &SparseOperator<f64>) -> f64 {
    a.sub(b).frobenius_norm()
}

fn push_commutators(
    params: &ModelParams,
    tol: f64,
    which: SymmetrySelection,
    c: &mut Collector,
) -> Result<(), SuiteError> {
    let report = verify_symmetries(params, tol, which)?;
    for chk in report.checks {
        let name = format!("{} ({})", chk.name, chk.scope);
        match chk.skipped {
            Some(reason) => c.skip(name, &reason),
            None => c.le(name, chk.relative, tol),
        }
    }
    Ok(())
}

fn spin_suite(params: &ModelParams, tol: f64, c: &mut Collector) -> Result<(), SuiteError> {
    push_commutators(params, tol, SymmetrySelection { spin: true, pseudospin: false }, c)?;
    let s = build_spin_ops(&Basis::full(params.n).map_err(HubbardError::from)?)?;
    c.le("[S_z,S_+] - S_+", defect(&s.z.commutator(&s.plus), &s.plus), ALGEBRA_TOL);
    c.le("[S_+,S_-] - 2S_z", defect(&s.plus.commutator(&s.minus), &s.z.scale(2.0)), ALGEBRA_TOL);
    Ok(())
}

fn pseudospin_suite(params: &ModelParams, tol: f64, c: &mut Collector) -> Result<(), SuiteError> {
    if !params.pseudospin_compatible() {
        c.skip("pseudo-spin symmetry", "odd N with periodic boundary; use --boundary open");
        return Ok(());
    }
    push_commutators(params, tol, SymmetrySelection { spin: false, pseudospin: true }, c)?;
    let full = Basis::full(params.n).map_err(HubbardError::from)?;
    let j = build_pseudospin_ops(&full)?;
    let s = build_spin_ops(&full)?;
    c.le("[J_z,J_+] - J_+", defect(&j.z.commutator(&j.plus), &j.plus), ALGEBRA_TOL);
    c.le("[J_+,J_-] - 2J_z", defect(&j.plus.commutator(&j.minus), &j.z.scale(2.0)), ALGEBRA_TOL);
    let mut worst: f64 = 0.0;
    for a in [&s.z, &s.plus, &s.minus] {
        for b in [&j.z, &j.plus, &j.minus] {
            worst = worst.max(a.commutator(b).frobenius_norm());
        }
    }
    c.le("max [S_a,J_b]", worst, ALGEBRA_TOL);
    Ok(())
}

/// Projector algebra on every two-letter orbit of `n` letters.
fn projector_suite(n: usize, c: &mut Collector) -> Result<(), SuiteError> {
    for b in 0..=n / 2 {
        let space = OrbitSpace::new((n - b, b));
        let dim = space.dim();
        let labels = orbit_labels(&space);
        let projectors = labels
            .iter()
            .map(|l| young_projector::<f64>(&l.shape, &l.tableau, &space).map(|p| p.matrix))
            .collect::<Result<Vec<_>, _>>()?;
        let basis = irreducible_basis(&space)?;
        let mut idem: f64 = 0.0;
        let mut sym: f64 = 0.0;
        let mut ortho: f64 = 0.0;
        let mut sum = DenseMatrix::<f64>::zeros(dim, dim);
        for (k, e) in projectors.iter().enumerate() {
            idem = idem.max(e.matmul(e).sub(e).max_abs());
            sym = sym.max(e.sub(&e.transpose()).max_abs());
            for l in 0..labels.len() {
                if l != k {
                    let v = e.matvec(&basis.column(l));
                    ortho = ortho.max(v.iter().fold(0.0, |m, x| m.max(x.abs())));
                }
            }
            sum = sum.add(e);
        }
        let complete = sum.sub(&DenseMatrix::identity(dim)).max_abs();
        let mut eigen: f64 = 0.0;
        for j in 2..=n {
            let m = jm_matrix::<f64>(j, &space)?;
            for (k, l) in labels.iter().enumerate() {
                let v = basis.column(k);
                let mj = content_vector(&l.tableau).get(j) as f64;
                let mv = m.matvec(&v);
                eigen = eigen.max(mv.iter().zip(&v).fold(0.0, |acc, (a, x)| acc.max((a - mj * x).abs())));
            }
        }
        let w = format!("mu=({},{})", n - b, b);
        c.le(format!("{w} idempotence"), idem, ALGEBRA_TOL);
        c.le(format!("{w} symmetry"), sym, ALGEBRA_TOL);
        c.le(format!("{w} orthogonality"), ortho, ALGEBRA_TOL);
        c.le(format!("{w} completeness"), complete, ALGEBRA_TOL);
        c.le(format!("{w} JM eigenvectors"), eigen, ALGEBRA_TOL);
        c.eq(format!("{w} basis size"), labels.len() as u128, dim as u128);
    }
    let mismatched = Partition::all(n).iter().filter(|p| standard_tableaux(p).len() as u128 != p.dim_irrep()).count();
    c.eq(format!("SYT count = hook length, all partitions of {n}"), mismatched as u128, 0);
    Ok(())
}

fn ledger_suite(params: &ModelParams, c: &mut Collector) {
    let n = params.n;
    if !params.pseudospin_compatible() {
        c.skip("ledger", "odd N with periodic boundary; use --boundary open");
        return;
    }
    let mut total = 0;
    for s in Sector::with_electrons(n, n) {
        match sector_ledger(n, s.n_plus, s.n_minus, params.boundary) {
            Ok(l) => {
                c.eq(format!("sector {s} sum x"), l.total, s.dimension(n));
                total += l.total;
            }
            Err(e) => c.skip(format!("sector {s}"), &e.to_string()),
        }
    }
    c.eq("half-filled total", total, halffilling_dimension(n));
}

fn casimir_suite(params: &ModelParams, c: &mut Collector) -> Result<(), SuiteError> {
    let n = params.n;
    if !params.pseudospin_compatible() {
        c.skip("adapted-vector Casimirs", "odd N with periodic boundary; use --boundary open");
        return Ok(());
    }
    for sector in Sector::with_electrons(n, n) {
        let basis = Basis::sector(n, sector).map_err(HubbardError::from)?;
        let vectors = sector_adapted_basis(n, sector, params.boundary, &basis).map_err(HubbardError::from)?;
        let s2 = spin_squared::<f64>(n).matrix(&basis)?;
        let j2 = pseudo_squared::<f64>(n).matrix(&basis)?;
        let sz = spin_z::<f64>(n).matrix(&basis)?;
        let jz = pseudo_z::<f64>(n).matrix(&basis)?;
        let (mut ds, mut dj, mut dz) = (0.0f64, 0.0f64, 0.0f64);
        for v in &vectors {
            let dense = v.to_dense(basis.len());
            let dev = |op: &SparseOperator<f64>, ev: f64| {
                op.matvec(&dense).iter().zip(&dense).map(|(a, x)| (a - ev * x).powi(2)).sum::<f64>().sqrt()
            };
            ds = ds.max(dev(&s2, v.label.s.casimir()));
            dj = dj.max(dev(&j2, v.label.j.casimir()));
            dz = dz.max(dev(&sz, v.label.s_z.value()).max(dev(&jz, v.label.j_z.value())));
        }
        c.eq(format!("sector {sector} vector count"), vectors.len() as u128, sector.dimension(n));
        c.le(format!("sector {sector} max |S^2 v - S(S+1) v|"), ds, 1e-10);
        c.le(format!("sector {sector} max |J^2 v - J(J+1) v|"), dj, 1e-10);
        c.le(format!("sector {sector} max S_z/J_z deviation"), dz, 1e-10);
    }
    Ok(())
}

fn sorted_eigenvalues(params: &ModelParams, strategy: Strategy) -> Result<(Vec<f64>, f64), SuiteError> {
    let d = block_diagonalize(params, SectorSelection::Electrons(params.n), strategy)?;
    let mut e = Vec::new();
    for b in &d.blocks {
        e.extend(b.operator.diagonalize()?.eigenvalues);
    }
    e.sort_by(f64::total_cmp);
    Ok((e, d.off_block_residual))
}

fn block_suite(params: &ModelParams, tol: f64, c: &mut Collector) -> Result<(), SuiteError> {
    let (naive, _) = sorted_eigenvalues(params, Strategy::Sector)?;
    let half = Basis::electrons(params.n, params.n).map_err(HubbardError::from)?;
    let h_norm = build_hamiltonian(params, &half)?.frobenius_norm();
    for strategy in [Strategy::SectorMomentum, Strategy::SectorSwd] {
        let applicable = match strategy {
            Strategy::SectorMomentum => params.boundary == crate::hubbard::Boundary::Periodic,
            _ => params.pseudospin_compatible(),
        };
        if !applicable {
            c.skip(format!("{strategy} spectrum"), "strategy precondition not met");
            continue;
        }
        let (e, off) = sorted_eigenvalues(params, strategy)?;
        c.eq(format!("{strategy} eigenvalue count"), e.len() as u128, naive.len() as u128);
        let dev = naive.iter().zip(&e).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        c.le(format!("{strategy} max eigenvalue deviation"), dev, SPECTRUM_TOL);
        c.le(format!("{strategy} off-block residual"), off, tol * h_norm.max(1.0));
    }
    Ok(())
}
