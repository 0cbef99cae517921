use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize, Serializer};

use crate::fock::{Basis, Sector};
use crate::linalg::{symmetric_eigen, DenseMatrix, SparseOperator};
use crate::swd::{sector_adapted_basis, AdaptedVector, HalfInt};
use crate::translation::{brillouin_zone, fermionic_wavelet_basis, orbits_of};

use super::{build_hamiltonian, sectors, Boundary, HubbardError, ModelParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Strategy {
    #[serde(rename = "sector")]
    Sector,
    #[serde(rename = "sector+momentum")]
    SectorMomentum,
    #[serde(rename = "sector+swd")]
    SectorSwd,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Sector => "sector",
            Strategy::SectorMomentum => "sector+momentum",
            Strategy::SectorSwd => "sector+swd",
        })
    }
}

impl FromStr for Strategy {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "sector" => Ok(Strategy::Sector),
            "sector+momentum" => Ok(Strategy::SectorMomentum),
            "sector+swd" => Ok(Strategy::SectorSwd),
            _ => Err(format!("unknown strategy '{s}' (expected sector, sector+momentum or sector+swd)")),
        }
    }
}

/// Which `(N₊, N₋)` sectors to treat.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SectorSelection {
    All,
    Electrons(usize),
    Single(Sector),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BlockLabel {
    pub sector: Sector,
    pub momentum: Option<i64>,
    pub spin: Option<HalfInt>,
    pub pseudo: Option<HalfInt>,
}

impl BlockLabel {
    fn sort_key(&self, n: usize) -> (usize, Reverse<usize>, usize, Option<HalfInt>, Option<HalfInt>) {
        let k = self.momentum.and_then(|k| brillouin_zone(n).position(k)).unwrap_or(0);
        (self.sector.electrons(), Reverse(self.sector.n_plus), k, self.spin, self.pseudo)
    }
}

impl fmt::Display for BlockLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.sector)?;
        if let Some(k) = self.momentum {
            write!(f, " k={k}")?;
        }
        if let Some(s) = self.spin {
            write!(f, " S={s}")?;
        }
        if let Some(j) = self.pseudo {
            write!(f, " J={j}")?;
        }
        Ok(())
    }
}

impl Serialize for BlockLabel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum BlockOperator {
    Real(SparseOperator<f64>),
    Complex(SparseOperator<Complex64>),
}

impl BlockOperator {
    pub fn dim(&self) -> usize {
        match self {
            BlockOperator::Real(m) => m.rows(),
            BlockOperator::Complex(m) => m.rows(),
        }
    }

    pub fn diagonalize(&self) -> Result<Spectrum, HubbardError> {
        match self {
            BlockOperator::Real(m) => diagonalize(m),
            BlockOperator::Complex(m) => diagonalize_complex(m),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Block {
    pub label: BlockLabel,
    pub operator: BlockOperator,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BlockDecomposition {
    pub params: ModelParams,
    pub strategy: Strategy,
    pub blocks: Vec<Block>,
    /// Frobenius norm of the part of `H` that the basis change leaves off the blocks.
    pub off_block_residual: f64,
}

/// Splits `H` into blocks on the selected sectors.
///
/// `sector` keeps each `(N₊, N₋)` sector whole; `sector+momentum` further
/// splits it by fermionic-translation momentum `k`; `sector+swd` by the
/// `(S, J)` labels of the Schur-Weyl adapted basis (half-filling only).
pub fn block_diagonalize(
    params: &ModelParams,
    selection: SectorSelection,
    strategy: Strategy,
) -> Result<BlockDecomposition, HubbardError> {
    let list = sectors(params.n, selection);
    match strategy {
        Strategy::Sector => {}
        Strategy::SectorMomentum if params.boundary != Boundary::Periodic => {
            return Err(HubbardError::Precondition { strategy, requirement: "a periodic boundary".into() });
        }
        Strategy::SectorMomentum => {}
        Strategy::SectorSwd => {
            if let Some(s) = list.iter().find(|s| !s.is_half_filled(params.n)) {
                return Err(HubbardError::Precondition {
                    strategy,
                    requirement: format!("half-filled sectors, got {s} on {} sites", params.n),
                });
            }
            if !params.pseudospin_compatible() {
                return Err(HubbardError::Precondition { strategy, requirement: "even N or an open boundary".into() });
            }
        }
    }
    let mut blocks = Vec::new();
    let mut off = 0.0;
    for sector in list {
        let basis = Basis::sector(params.n, sector)?;
        if basis.is_empty() {
            continue;
        }
        let h = build_hamiltonian(params, &basis)?;
        let label = BlockLabel { sector, momentum: None, spin: None, pseudo: None };
        match strategy {
            Strategy::Sector => blocks.push(Block { label, operator: BlockOperator::Real(h) }),
            Strategy::SectorMomentum => off += momentum_blocks(&basis, &h, label, &mut blocks),
            Strategy::SectorSwd => {
                let vectors = sector_adapted_basis(params.n, sector, params.boundary, &basis)?;
                off += swd_blocks(&vectors, &h, label, &mut blocks);
            }
        }
    }
    blocks.sort_by_key(|b| b.label.sort_key(params.n));
    Ok(BlockDecomposition { params: *params, strategy, blocks, off_block_residual: off.sqrt() })
}

/// Appends one block per momentum; returns the squared off-block residual.
fn momentum_blocks(basis: &Basis, h: &SparseOperator<f64>, label: BlockLabel, out: &mut Vec<Block>) -> f64 {
    let zone = brillouin_zone(basis.sites());
    let orbits = orbits_of(basis.states());
    // Per configuration: (orbit, position in orbit).
    let mut place = vec![(0usize, 0usize); basis.len()];
    // Per orbit and momentum: block column and wavelet coefficients.
    let mut wavelets: Vec<BTreeMap<i64, (usize, Vec<Complex64>)>> = Vec::with_capacity(orbits.len());
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); zone.len()];
    for (o, orbit) in orbits.iter().enumerate() {
        for (pos, c) in orbit.elements.iter().enumerate() {
            place[basis.index_of(c).expect("orbit stays in the sector")] = (o, pos);
        }
        let mut per_k = BTreeMap::new();
        for w in fermionic_wavelet_basis(orbit) {
            let kpos = zone.position(w.k).expect("wavelet momentum lies in the zone");
            per_k.insert(w.k, (members[kpos].len(), w.coefficients));
            members[kpos].push(o);
        }
        wavelets.push(per_k);
    }
    let mut off = 0.0;
    for (kpos, &k) in zone.momenta.iter().enumerate() {
        let dim = members[kpos].len();
        if dim == 0 {
            continue;
        }
        let mut trip = Vec::new();
        for (b, &ob) in members[kpos].iter().enumerate() {
            let wb = &wavelets[ob][&k].1;
            let mut hw: BTreeMap<usize, Complex64> = BTreeMap::new();
            for (pos, c) in orbits[ob].elements.iter().enumerate() {
                let col = basis.index_of(c).expect("orbit stays in the sector");
                for (row, v) in h.row_entries(col) {
                    *hw.entry(row).or_default() += wb[pos] * *v;
                }
            }
            let mut block_col: BTreeMap<usize, Complex64> = BTreeMap::new();
            for (&r, &v) in &hw {
                let (o, pos) = place[r];
                if let Some((a, wa)) = wavelets[o].get(&k) {
                    *block_col.entry(*a).or_default() += wa[pos].conj() * v;
                }
            }
            for (&r, &v) in &hw {
                let (o, pos) = place[r];
                let projected = wavelets[o].get(&k).map_or(Complex64::new(0.0, 0.0), |(a, wa)| {
                    wa[pos] * block_col.get(a).copied().unwrap_or_default()
                });
                off += (v - projected).norm_sqr();
            }
            trip.extend(block_col.into_iter().map(|(a, v)| (a, b, v)));
        }
        out.push(Block {
            label: BlockLabel { momentum: Some(k), ..label },
            operator: BlockOperator::Complex(SparseOperator::from_triplets(dim, dim, trip)),
        });
    }
    off
}

/// Appends one block per `(S, J)`; returns the squared off-block residual.
fn swd_blocks(vectors: &[AdaptedVector], h: &SparseOperator<f64>, label: BlockLabel, out: &mut Vec<Block>) -> f64 {
    let mut groups: BTreeMap<(HalfInt, HalfInt), Vec<usize>> = BTreeMap::new();
    for (i, v) in vectors.iter().enumerate() {
        groups.entry((v.label.s, v.label.j)).or_default().push(i);
    }
    let dim = h.rows();
    let mut off = 0.0;
    for ((s, j), members) in groups {
        let g = members.len();
        let mut trip = Vec::new();
        for (b, &vb) in members.iter().enumerate() {
            let mut hu = vec![0.0; dim];
            for &(col, c) in &vectors[vb].entries {
                for (row, v) in h.row_entries(col) {
                    hu[row] += v * c;
                }
            }
            let mut residual = hu.clone();
            for (a, &va) in members.iter().enumerate() {
                let entries = &vectors[va].entries;
                let overlap: f64 = entries.iter().map(|&(i, c)| c * hu[i]).sum();
                if overlap != 0.0 {
                    trip.push((a, b, overlap));
                    for &(i, c) in entries {
                        residual[i] -= overlap * c;
                    }
                }
            }
            off += residual.iter().map(|r| r * r).sum::<f64>();
        }
        out.push(Block {
            label: BlockLabel { spin: Some(s), pseudo: Some(j), ..label },
            operator: BlockOperator::Real(SparseOperator::from_triplets(g, g, trip)),
        });
    }
    off
}

/// Eigenvalues (ascending) of a Hermitian block with the worst residual.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    /// Columns are eigenvectors (real blocks only).
    pub eigenvectors: Option<DenseMatrix<f64>>,
    /// `max ‖Av − λv‖₂` over the returned pairs.
    pub residual: f64,
    /// `‖A‖_F`.
    pub norm: f64,
}

impl Spectrum {
    /// Residual over `max(‖A‖_F, 1)`, so roundoff-sized blocks do not inflate it.
    pub fn relative_residual(&self) -> f64 {
        self.residual / self.norm.max(1.0)
    }
}

fn hermitian_guard(defect: f64, norm: f64) -> Result<(), HubbardError> {
    if defect > 1e-12 * norm.max(1.0) {
        return Err(HubbardError::NotHermitian(defect));
    }
    Ok(())
}

fn dense_residual(a: &DenseMatrix<f64>, values: &[f64], vectors: &DenseMatrix<f64>) -> f64 {
    (0..values.len())
        .map(|k| {
            let v = vectors.column(k);
            a.matvec(&v).iter().zip(&v).map(|(av, x)| (av - values[k] * x).powi(2)).sum::<f64>().sqrt()
        })
        .fold(0.0, f64::max)
}

/// Full dense spectrum of a real symmetric operator.
pub fn diagonalize(op: &SparseOperator<f64>) -> Result<Spectrum, HubbardError> {
    let norm = op.frobenius_norm();
    hermitian_guard(op.hermiticity_defect(), norm)?;
    let a = op.to_dense();
    let eig = symmetric_eigen(&a)?;
    let residual = dense_residual(&a, &eig.eigenvalues, &eig.eigenvectors);
    Ok(Spectrum { eigenvalues: eig.eigenvalues, eigenvectors: Some(eig.eigenvectors), residual, norm })
}

/// Spectrum of a complex Hermitian operator via the real embedding
/// `[[A, −B], [B, A]]`, whose eigenvalues are those of `A + iB`, each twice.
pub fn diagonalize_complex(op: &SparseOperator<Complex64>) -> Result<Spectrum, HubbardError> {
    let norm = op.frobenius_norm();
    hermitian_guard(op.hermiticity_defect(), norm)?;
    let n = op.rows();
    let mut emb = DenseMatrix::<f64>::zeros(2 * n, 2 * n);
    for (i, j, v) in op.triplets() {
        emb[(i, j)] = v.re;
        emb[(i + n, j + n)] = v.re;
        emb[(i, j + n)] = -v.im;
        emb[(i + n, j)] = v.im;
    }
    let eig = symmetric_eigen(&emb)?;
    let residual = dense_residual(&emb, &eig.eigenvalues, &eig.eigenvectors);
    let eigenvalues = eig.eigenvalues.iter().step_by(2).copied().collect();
    Ok(Spectrum { eigenvalues, eigenvectors: None, residual, norm })
}
