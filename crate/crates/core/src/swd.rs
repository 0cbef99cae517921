//! Half-filling Schur-Weyl decomposition: spin/pseudo-spin splitting of
//! configurations, the dimension ledger per `(N₊, N₋)` sector, and the
//! symmetry-adapted vectors built from the two irreducible orbit bases.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::fock::{Basis, Configuration, FockError, Letter, Sector};
use crate::hubbard::Boundary;
use crate::scalar::binomial;
use crate::symrep::{irreducible_basis, partitions_dominating, AdaptedBasis, OrbitSpace, Partition, SymrepError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SwdError {
    #[error("sector ({n_plus},{n_minus}) is not half-filled on {n} sites")]
    NotHalfFilled { n: usize, n_plus: usize, n_minus: usize },
    #[error("N = {0} is odd: the pseudo-spin symmetry needs open boundaries")]
    OddPeriodic(usize),
    #[error(transparent)]
    Symrep(#[from] SymrepError),
    #[error(transparent)]
    Fock(#[from] FockError),
}

/// Half-integer stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInt(pub i64);

impl HalfInt {
    pub fn from_twice(twice: i64) -> Self {
        HalfInt(twice)
    }

    pub fn twice(self) -> i64 {
        self.0
    }

    pub fn value(self) -> f64 {
        self.0 as f64 / 2.0
    }

    /// `x(x+1)`, the SU(2) Casimir eigenvalue.
    pub fn casimir(self) -> f64 {
        let v = self.value();
        v * (v + 1.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl Serialize for HalfInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0 % 2 == 0 {
            s.serialize_i64(self.0 / 2)
        } else {
            s.serialize_f64(self.value())
        }
    }
}

impl<'de> Deserialize<'de> for HalfInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = f64::deserialize(d)?;
        let twice = 2.0 * v;
        if twice.fract() != 0.0 {
            return Err(serde::de::Error::custom(format!("{v} is not a half-integer")));
        }
        Ok(HalfInt(twice as i64))
    }
}

/// Sites carrying spin letters (`+`, `−`) and pseudo-spin letters (`±`, `∅`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Placement {
    pub spin_sites: Vec<usize>,
    pub pseudo_sites: Vec<usize>,
}

impl Placement {
    /// Placement whose spin sites are the set bits of `mask` (bit `j−1` ↔ site `j`).
    pub fn from_mask(n: usize, mask: u32) -> Self {
        let (spin_sites, pseudo_sites) = (1..=n).partition(|&j| mask >> (j - 1) & 1 == 1);
        Placement { spin_sites, pseudo_sites }
    }

    pub fn mask(&self) -> u32 {
        self.spin_sites.iter().fold(0, |m, &j| m | 1 << (j - 1))
    }
}

/// Spin letters are read `+ → 0`, `− → 1`; pseudo-spin letters `∅ → 0`, `± → 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Split {
    pub placement: Placement,
    pub spin_word: Vec<u8>,
    pub pseudo_word: Vec<u8>,
}

pub fn split(config: &Configuration) -> Split {
    let mut spin_sites = Vec::new();
    let mut pseudo_sites = Vec::new();
    let mut spin_word = Vec::new();
    let mut pseudo_word = Vec::new();
    for (j, l) in config.letters().into_iter().enumerate() {
        match l {
            Letter::Up | Letter::Down => {
                spin_sites.push(j + 1);
                spin_word.push((l == Letter::Down) as u8);
            }
            Letter::Empty | Letter::Both => {
                pseudo_sites.push(j + 1);
                pseudo_word.push((l == Letter::Both) as u8);
            }
        }
    }
    Split { placement: Placement { spin_sites, pseudo_sites }, spin_word, pseudo_word }
}

/// Inverse of [`split`].
pub fn join(n: usize, placement: &Placement, spin_word: &[u8], pseudo_word: &[u8]) -> Configuration {
    let mut letters = vec![Letter::Empty; n];
    for (&j, &l) in placement.spin_sites.iter().zip(spin_word) {
        letters[j - 1] = if l == 0 { Letter::Up } else { Letter::Down };
    }
    for (&j, &l) in placement.pseudo_sites.iter().zip(pseudo_word) {
        letters[j - 1] = if l == 0 { Letter::Empty } else { Letter::Both };
    }
    Configuration::from_letters(&letters).expect("site count already validated")
}

/// One irrep of a factor space: shape, its quantum number and dimension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShapeEntry {
    pub shape: Partition,
    /// `S` for the spin factor, `J` for the pseudo-spin factor.
    pub quantum: HalfInt,
    pub dim: u128,
}

fn shape_entries(weight: (usize, usize)) -> Vec<ShapeEntry> {
    let n = weight.0 + weight.1;
    if n == 0 {
        return Vec::new();
    }
    partitions_dominating(n, &[weight.0, weight.1], 2)
        .into_iter()
        .map(|shape| {
            let r = shape.part(1);
            ShapeEntry { quantum: HalfInt::from_twice(n as i64 - 2 * r as i64), dim: shape.dim_irrep(), shape }
        })
        .collect()
}

/// One weight class `μ` of a half-filled sector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LedgerRow {
    /// `(#+, #−, #±, #∅)`.
    pub mu: [usize; 4],
    pub mu_spin: (usize, usize),
    pub mu_pseudo: (usize, usize),
    pub spin: Vec<ShapeEntry>,
    pub pseudo: Vec<ShapeEntry>,
    pub s_z: HalfInt,
    pub j_z: HalfInt,
    pub tau: u128,
    pub x: u128,
}

impl LedgerRow {
    pub fn spin_sites(&self) -> usize {
        self.mu[0] + self.mu[1]
    }

    pub fn pseudo_sites(&self) -> usize {
        self.mu[2] + self.mu[3]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Ledger {
    pub n: usize,
    pub n_plus: usize,
    pub n_minus: usize,
    pub rows: Vec<LedgerRow>,
    pub total: u128,
}

/// Dimension ledger of a half-filled sector, one row per doublon count.
pub fn sector_ledger(n: usize, n_plus: usize, n_minus: usize, boundary: Boundary) -> Result<Ledger, SwdError> {
    if n_plus + n_minus != n || n == 0 {
        return Err(SwdError::NotHalfFilled { n, n_plus, n_minus });
    }
    if n % 2 == 1 && boundary == Boundary::Periodic {
        return Err(SwdError::OddPeriodic(n));
    }
    let mut rows = Vec::new();
    for d in 0..=n_plus.min(n_minus) {
        let mu = [n_plus - d, n_minus - d, d, d];
        let spin = shape_entries((mu[0], mu[1]));
        let pseudo = shape_entries((mu[3], mu[2]));
        let n_spin = mu[0] + mu[1];
        let tau = binomial(n as u64, n_spin as u64);
        let sum = |e: &[ShapeEntry]| if e.is_empty() { 1 } else { e.iter().map(|s| s.dim).sum::<u128>() };
        rows.push(LedgerRow {
            mu,
            mu_spin: (mu[0], mu[1]),
            mu_pseudo: (mu[2], mu[3]),
            s_z: HalfInt::from_twice(mu[0] as i64 - mu[1] as i64),
            j_z: HalfInt::from_twice(mu[2] as i64 - mu[3] as i64),
            tau,
            x: tau * sum(&spin) * sum(&pseudo),
            spin,
            pseudo,
        });
    }
    let total = rows.iter().map(|r| r.x).sum();
    Ok(Ledger { n, n_plus, n_minus, rows, total })
}

/// `C(2N, N)`, the number of half-filled configurations.
pub fn halffilling_dimension(n: usize) -> u128 {
    binomial(2 * n as u64, n as u64)
}

/// Quantum-number label of one adapted vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SwdLabel {
    pub mu: [usize; 4],
    pub spin_shape: Partition,
    /// 1-based position in the last-letter order of `spin_shape`.
    pub spin_tableau: usize,
    pub pseudo_shape: Partition,
    pub pseudo_tableau: usize,
    pub placement: Placement,
    pub s: HalfInt,
    pub j: HalfInt,
    pub s_z: HalfInt,
    pub j_z: HalfInt,
}

/// Unit vector over a configuration basis, stored sparsely.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdaptedVector {
    pub label: SwdLabel,
    /// `(basis index, coefficient)`, ascending index.
    pub entries: Vec<(usize, f64)>,
}

impl AdaptedVector {
    pub fn to_dense(&self, dim: usize) -> Vec<f64> {
        let mut v = vec![0.0; dim];
        for &(i, c) in &self.entries {
            v[i] = c;
        }
        v
    }
}

/// `Π_{j doubly occupied} (−1)^j`: the staggering carried by pseudo-spin states.
pub fn pseudo_phase(placement: &Placement, pseudo_word: &[u8]) -> f64 {
    let odd = placement.pseudo_sites.iter().zip(pseudo_word).filter(|(&j, &l)| l == 1 && j % 2 == 1).count();
    if odd % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Irreducible basis of a two-letter factor; the empty factor is the scalar 1.
fn factor_basis(weight: (usize, usize)) -> Result<AdaptedBasis, SwdError> {
    Ok(irreducible_basis(&OrbitSpace::new(weight))?)
}

fn factor_words(space: &OrbitSpace) -> Vec<Vec<u8>> {
    space.words().iter().map(|&w| space.letters(w)).collect()
}

/// Every adapted vector of a half-filled sector, in the order
/// `(μ, λ′, λ″, placement, y′, y″)` with placements in colexicographic order.
pub fn sector_adapted_basis(
    n: usize,
    sector: Sector,
    boundary: Boundary,
    basis: &Basis,
) -> Result<Vec<AdaptedVector>, SwdError> {
    let ledger = sector_ledger(n, sector.n_plus, sector.n_minus, boundary)?;
    let mut out = Vec::new();
    for row in &ledger.rows {
        let spin_w = (row.mu[0], row.mu[1]);
        let pseudo_w = (row.mu[3], row.mu[2]);
        let (spin_space, pseudo_space) = (OrbitSpace::new(spin_w), OrbitSpace::new(pseudo_w));
        let (spin_basis, pseudo_basis) = (factor_basis(spin_w)?, factor_basis(pseudo_w)?);
        let (spin_words, pseudo_words) = (factor_words(&spin_space), factor_words(&pseudo_space));
        let by_shape = |b: &AdaptedBasis| -> Vec<(Partition, Vec<(usize, usize)>)> {
            let mut groups: Vec<(Partition, Vec<(usize, usize)>)> = Vec::new();
            for (col, l) in b.labels.iter().enumerate() {
                match groups.last_mut() {
                    Some((s, cols)) if *s == l.shape => cols.push((col, l.index)),
                    _ => groups.push((l.shape.clone(), vec![(col, l.index)])),
                }
            }
            groups
        };
        let spin_groups = by_shape(&spin_basis);
        let pseudo_groups = by_shape(&pseudo_basis);
        let masks: Vec<u32> = (0u32..(1u32 << n)).filter(|m| m.count_ones() as usize == row.spin_sites()).collect();
        // Configuration index for every (placement, spin word, pseudo word).
        let mut lookup: HashMap<(u32, usize, usize), usize> = HashMap::new();
        for &m in &masks {
            let p = Placement::from_mask(n, m);
            for (a, sw) in spin_words.iter().enumerate() {
                for (b, pw) in pseudo_words.iter().enumerate() {
                    let c = join(n, &p, sw, pw);
                    lookup.insert((m, a, b), basis.index_of(&c).expect("configuration lies in the sector"));
                }
            }
        }
        for (spin_shape, spin_cols) in &spin_groups {
            let s = HalfInt::from_twice(spin_shape.size() as i64 - 2 * spin_shape.part(1) as i64);
            for (pseudo_shape, pseudo_cols) in &pseudo_groups {
                let j = HalfInt::from_twice(pseudo_shape.size() as i64 - 2 * pseudo_shape.part(1) as i64);
                for &m in &masks {
                    let placement = Placement::from_mask(n, m);
                    let phases: Vec<f64> = pseudo_words.iter().map(|pw| pseudo_phase(&placement, pw)).collect();
                    for &(sc, si) in spin_cols {
                        for &(pc, pi) in pseudo_cols {
                            let mut entries = Vec::new();
                            for a in 0..spin_words.len() {
                                let ca = spin_basis.coefficients[(a, sc)];
                                if ca == 0.0 {
                                    continue;
                                }
                                for b in 0..pseudo_words.len() {
                                    let cb = pseudo_basis.coefficients[(b, pc)];
                                    if cb != 0.0 {
                                        entries.push((lookup[&(m, a, b)], ca * cb * phases[b]));
                                    }
                                }
                            }
                            entries.sort_by_key(|e| e.0);
                            out.push(AdaptedVector {
                                label: SwdLabel {
                                    mu: row.mu,
                                    spin_shape: spin_shape.clone(),
                                    spin_tableau: si,
                                    pseudo_shape: pseudo_shape.clone(),
                                    pseudo_tableau: pi,
                                    placement: placement.clone(),
                                    s,
                                    j,
                                    s_z: row.s_z,
                                    j_z: row.j_z,
                                },
                                entries,
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}
