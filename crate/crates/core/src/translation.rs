//! Cyclic-group machinery: Brillouin zone, translation orbits, rarefied zones
//! and the momentum (wavelet) basis on each orbit.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::fock::{Basis, Configuration, FockError, FockState, Sector};
use crate::linalg::SparseOperator;
use crate::scalar::Sign;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TranslationError {
    #[error("rarefaction index {kappa} does not divide N = {n}")]
    KappaDoesNotDivide { n: usize, kappa: usize },
    #[error(transparent)]
    Fock(#[from] FockError),
}

/// Momentum labels `k` of the cyclic group `C_N`.
///
/// Ordered `0, 1, −1, 2, −2, …`, ending with `N/2` for even `N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BrillouinZone {
    pub n: usize,
    pub momenta: Vec<i64>,
}

impl BrillouinZone {
    pub fn len(&self) -> usize {
        self.momenta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.momenta.is_empty()
    }

    pub fn contains(&self, k: i64) -> bool {
        self.momenta.contains(&k)
    }

    /// Representative of `k mod N` inside the zone.
    pub fn fold(&self, k: i64) -> i64 {
        let n = self.n as i64;
        let r = k.rem_euclid(n);
        if 2 * r > n {
            r - n
        } else {
            r
        }
    }

    /// Position of `k` in the zone order.
    pub fn position(&self, k: i64) -> Option<usize> {
        self.momenta.iter().position(|&m| m == k)
    }
}

pub fn brillouin_zone(n: usize) -> BrillouinZone {
    let n_i = n as i64;
    let mut momenta = vec![0];
    for k in 1..=(n_i - 1) / 2 {
        momenta.push(k);
        momenta.push(-k);
    }
    if n.is_multiple_of(2) && n > 0 {
        momenta.push(n_i / 2);
    }
    BrillouinZone { n, momenta }
}

/// `B/κ`: the momenta `k` of the zone with `k/κ` an integer.
pub fn rarefied_zone(n: usize, kappa: usize) -> Result<Vec<i64>, TranslationError> {
    if kappa == 0 || !n.is_multiple_of(kappa) {
        return Err(TranslationError::KappaDoesNotDivide { n, kappa });
    }
    Ok(brillouin_zone(n).momenta.into_iter().filter(|k| k % kappa as i64 == 0).collect())
}

/// Orbit of a configuration under the letter-level cyclic shift.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CyclicOrbit {
    /// Smallest element in basis order.
    pub representative: Configuration,
    /// `T^j r` for `j = 0..period`.
    pub elements: Vec<Configuration>,
    pub period: usize,
    /// Rarefaction index `N / period`.
    pub kappa: usize,
}

impl CyclicOrbit {
    pub fn of(config: Configuration) -> Self {
        let mut orbit = vec![config];
        let mut cur = config.shifted();
        while cur != config {
            orbit.push(cur);
            cur = cur.shifted();
        }
        let representative = *orbit.iter().min().expect("orbit is non-empty");
        let start = orbit.iter().position(|c| *c == representative).unwrap_or(0);
        orbit.rotate_left(start);
        let period = orbit.len();
        CyclicOrbit { representative, elements: orbit, period, kappa: config.sites() / period }
    }

    pub fn sites(&self) -> usize {
        self.representative.sites()
    }

    /// Letter-level momenta, `B/κ`.
    pub fn momenta(&self) -> Vec<i64> {
        rarefied_zone(self.sites(), self.kappa).expect("period divides N")
    }

    /// Signs `s_j` with `T_f^j r = s_j · T^j r`, where `T_f` is the fermionic
    /// translation, and the twist `σ` with `T_f^p r = σ r`.
    pub fn fermionic_signs(&self) -> (Vec<Sign>, Sign) {
        let mut signs = Vec::with_capacity(self.period);
        let mut acc = Sign::Plus;
        for c in &self.elements {
            signs.push(acc);
            acc = acc * FockState(*c).translate().0;
        }
        (signs, acc)
    }

    /// Momenta carried by the fermionic translation on this orbit.
    ///
    /// A twisted orbit (`σ = −1`) carries the `k` with `k·p/N` half-integral.
    pub fn fermionic_momenta(&self) -> Vec<i64> {
        let (_, twist) = self.fermionic_signs();
        let (n, p) = (self.sites() as i64, self.period as i64);
        let offset = if twist.is_minus() { n } else { 0 };
        brillouin_zone(self.sites()).momenta.into_iter().filter(|k| (2 * k * p + offset) % (2 * n) == 0).collect()
    }
}

/// Translation orbits covering a sector (or the full space), sorted by representative.
pub fn orbits(n: usize, sector: Option<Sector>) -> Result<Vec<CyclicOrbit>, TranslationError> {
    let configs = crate::fock::enumerate_basis(n, sector)?;
    Ok(orbits_of(&configs))
}

/// Orbits of an arbitrary translation-closed set of configurations.
pub fn orbits_of(configs: &[Configuration]) -> Vec<CyclicOrbit> {
    let mut out: Vec<CyclicOrbit> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for c in configs {
        if seen.contains(c) {
            continue;
        }
        let orbit = CyclicOrbit::of(*c);
        seen.extend(orbit.elements.iter().copied());
        out.push(orbit);
    }
    out.sort_by_key(|a| a.representative);
    out
}

/// Momentum eigenvector supported on one orbit.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Wavelet {
    pub k: i64,
    /// Coefficient on `orbit.elements[j]`.
    pub coefficients: Vec<Complex64>,
}

/// Letter-level wavelets `Σ_j e^{i2πkj/N} T^j r / √p`, one per `k ∈ B/κ`.
///
/// Each is an eigenvector of the letter shift with eigenvalue `e^{−i2πk/N}`.
pub fn wavelet_basis(orbit: &CyclicOrbit) -> Vec<Wavelet> {
    let signs = vec![Sign::Plus; orbit.period];
    orbit.momenta().into_iter().map(|k| wavelet(orbit, k, &signs)).collect()
}

/// Wavelets for the fermionic translation: coefficients carry the signs `s_j`.
pub fn fermionic_wavelet_basis(orbit: &CyclicOrbit) -> Vec<Wavelet> {
    let (signs, _) = orbit.fermionic_signs();
    orbit.fermionic_momenta().into_iter().map(|k| wavelet(orbit, k, &signs)).collect()
}

fn wavelet(orbit: &CyclicOrbit, k: i64, signs: &[Sign]) -> Wavelet {
    let n = orbit.sites() as f64;
    let norm = (orbit.period as f64).sqrt();
    let coefficients = signs
        .iter()
        .enumerate()
        .map(|(j, s)| Complex64::from_polar(1.0, 2.0 * PI * (k as f64) * (j as f64) / n) * (s.value() as f64 / norm))
        .collect();
    Wavelet { k, coefficients }
}

/// Letter-level shift `T` on a basis (`T|f⟩ = |shifted f⟩`, no signs).
pub fn translation_matrix(basis: &Basis) -> SparseOperator<f64> {
    shift_matrix(basis, false)
}

/// Fermionic translation `c†_{j,σ} → c†_{j+1,σ}` on a basis.
pub fn fermionic_translation_matrix(basis: &Basis) -> SparseOperator<f64> {
    shift_matrix(basis, true)
}

fn shift_matrix(basis: &Basis, fermionic: bool) -> SparseOperator<f64> {
    let dim = basis.len();
    let trip = basis.states().iter().enumerate().map(|(col, c)| {
        let (sign, image) = FockState(*c).translate();
        let row = basis.index_of(&image.0).expect("basis is closed under translation");
        let v = if fermionic { sign.value() as f64 } else { 1.0 };
        (row, col, v)
    });
    SparseOperator::from_triplets(dim, dim, trip)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(s: &str) -> Configuration {
        s.parse().unwrap()
    }

    #[test]
    fn zones() {
        assert_eq!(brillouin_zone(4).momenta, vec![0, 1, -1, 2]);
        assert_eq!(brillouin_zone(5).momenta, vec![0, 1, -1, 2, -2]);
        assert_eq!(brillouin_zone(1).momenta, vec![0]);
        assert_eq!(rarefied_zone(4, 2).unwrap(), vec![0, 2]);
        assert_eq!(rarefied_zone(8, 4).unwrap(), vec![0, 4]);
        assert!(rarefied_zone(4, 3).is_err());
        assert_eq!(brillouin_zone(8).fold(7), -1);
        assert_eq!(brillouin_zone(8).fold(4), 4);
    }

    #[test]
    fn orbit_periods() {
        let o = CyclicOrbit::of(cfg("udud"));
        assert_eq!((o.period, o.kappa), (2, 2));
        assert_eq!(o.representative, cfg("udud"));
        let o = CyclicOrbit::of(cfg("dduu"));
        assert_eq!((o.period, o.kappa), (4, 1));
        assert_eq!(o.representative, cfg("uudd"));
        assert_eq!(o.elements[1], cfg("duud"));
    }

    #[test]
    fn two_element_wavelets() {
        let w = wavelet_basis(&CyclicOrbit::of(cfg("udud")));
        let h = 1.0 / 2f64.sqrt();
        assert_eq!(w.len(), 2);
        assert_eq!((w[0].k, w[1].k), (0, 2));
        assert!((w[1].coefficients[0] - Complex64::new(h, 0.0)).norm() < 1e-15);
        assert!((w[1].coefficients[1] - Complex64::new(-h, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn fermionic_momenta_count_period() {
        for o in orbits(4, Some(Sector::new(2, 2))).unwrap() {
            assert_eq!(o.fermionic_momenta().len(), o.period);
        }
    }
}
