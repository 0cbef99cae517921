//! Electron configurations of an `N`-site chain and fermionic ladder operators.
//!
//! A [`Configuration`] is a word over the one-site alphabet `{∅, +, −, ±}`
//! (site 1 leftmost). Its Fock state is fixed by the site-major ordering
//!
//! ```text
//! |f⟩ = Π_{j=1..N} (c†_{j+})^{n_{j+}} (c†_{j−})^{n_{j−}} |0⟩
//! ```
//!
//! with the product taken left to right in ascending site order. Under this
//! ordering `c†_{j+} c_{j−}` (a spin flip) never picks up a sign, so spin
//! rotations act on configurations exactly as on letter words.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::scalar::Sign;

/// Largest chain supported by the packed representation.
pub const MAX_SITES: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FockError {
    #[error("site {site} out of range 1..={n}")]
    SiteOutOfRange { site: usize, n: usize },
    #[error("site count {0} outside 1..={MAX_SITES}")]
    BadSiteCount(usize),
    #[error("invalid configuration literal {0:?}: expected letters from {{0,u,d,2}}")]
    BadLiteral(String),
}

/// One-site state. The derived order `Empty < Up < Down < Both` is the basis order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    Empty,
    Up,
    Down,
    Both,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::Empty, Letter::Up, Letter::Down, Letter::Both];

    fn code(self) -> u64 {
        match self {
            Letter::Empty => 0,
            Letter::Up => 1,
            Letter::Down => 2,
            Letter::Both => 3,
        }
    }

    fn from_bits(up: bool, down: bool) -> Self {
        match (up, down) {
            (false, false) => Letter::Empty,
            (true, false) => Letter::Up,
            (false, true) => Letter::Down,
            (true, true) => Letter::Both,
        }
    }

    /// Literal character: `0`, `u`, `d`, `2`.
    pub fn literal(self) -> char {
        match self {
            Letter::Empty => '0',
            Letter::Up => 'u',
            Letter::Down => 'd',
            Letter::Both => '2',
        }
    }

    pub fn from_literal(c: char) -> Option<Self> {
        match c {
            '0' => Some(Letter::Empty),
            'u' => Some(Letter::Up),
            'd' => Some(Letter::Down),
            '2' => Some(Letter::Both),
            _ => None,
        }
    }

    /// Symbol as printed in tables: `∅`, `+`, `−`, `±`.
    pub fn symbol(self) -> &'static str {
        match self {
            Letter::Empty => "∅",
            Letter::Up => "+",
            Letter::Down => "-",
            Letter::Both => "±",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Spin {
    Up,
    Down,
}

impl Spin {
    pub fn flip(self) -> Spin {
        match self {
            Spin::Up => Spin::Down,
            Spin::Down => Spin::Up,
        }
    }
}

/// Electron configuration, packed as two occupation masks (bit `j−1` ↔ site `j`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Configuration {
    n: u8,
    up: u32,
    down: u32,
}

impl Configuration {
    pub fn vacuum(n: usize) -> Result<Self, FockError> {
        check_sites(n)?;
        Ok(Configuration { n: n as u8, up: 0, down: 0 })
    }

    pub fn from_letters(letters: &[Letter]) -> Result<Self, FockError> {
        check_sites(letters.len())?;
        let mut c = Configuration { n: letters.len() as u8, up: 0, down: 0 };
        for (j, &l) in letters.iter().enumerate() {
            c.set_letter_unchecked(j, l);
        }
        Ok(c)
    }

    /// Builds a configuration from its occupation masks (bit `j−1` ↔ site `j`).
    pub fn from_masks(n: usize, up: u32, down: u32) -> Result<Self, FockError> {
        check_sites(n)?;
        let full = full_mask(n);
        debug_assert!(up & !full == 0 && down & !full == 0);
        Ok(Configuration { n: n as u8, up: up & full, down: down & full })
    }

    pub fn sites(&self) -> usize {
        self.n as usize
    }

    pub fn up_mask(&self) -> u32 {
        self.up
    }

    pub fn down_mask(&self) -> u32 {
        self.down
    }

    /// Letter at 1-based `site`.
    pub fn letter(&self, site: usize) -> Letter {
        assert!(site >= 1 && site <= self.sites(), "site {site} out of range");
        let b = 1u32 << (site - 1);
        Letter::from_bits(self.up & b != 0, self.down & b != 0)
    }

    pub fn letters(&self) -> Vec<Letter> {
        (1..=self.sites()).map(|j| self.letter(j)).collect()
    }

    /// Returns a copy with the letter at 1-based `site` replaced.
    pub fn with_letter(&self, site: usize, letter: Letter) -> Self {
        let mut c = *self;
        c.set_letter_unchecked(site - 1, letter);
        c
    }

    fn set_letter_unchecked(&mut self, idx: usize, l: Letter) {
        let b = 1u32 << idx;
        self.up &= !b;
        self.down &= !b;
        if matches!(l, Letter::Up | Letter::Both) {
            self.up |= b;
        }
        if matches!(l, Letter::Down | Letter::Both) {
            self.down |= b;
        }
    }

    pub fn is_occupied(&self, site: usize, spin: Spin) -> bool {
        let b = 1u32 << (site - 1);
        match spin {
            Spin::Up => self.up & b != 0,
            Spin::Down => self.down & b != 0,
        }
    }

    pub fn n_plus(&self) -> usize {
        self.up.count_ones() as usize
    }

    pub fn n_minus(&self) -> usize {
        self.down.count_ones() as usize
    }

    pub fn electrons(&self) -> usize {
        self.n_plus() + self.n_minus()
    }

    pub fn sector(&self) -> Sector {
        Sector { n_plus: self.n_plus(), n_minus: self.n_minus() }
    }

    /// Position in the lexicographic basis order (`∅ < + < − < ±`, site 1 most significant).
    pub fn rank(&self) -> u64 {
        (1..=self.sites()).fold(0u64, |acc, j| acc * 4 + self.letter(j).code())
    }

    /// Letter-level cyclic shift: the content of site `j` moves to site `j+1 (mod N)`.
    pub fn shifted(&self) -> Self {
        let n = self.sites() as u32;
        let rot = |m: u32| ((m << 1) | (m >> (n - 1))) & full_mask(n as usize);
        Configuration { n: self.n, up: rot(self.up), down: rot(self.down) }
    }

    /// Weight `μ = (#+, #−, #±, #∅)`.
    pub fn weight(&self) -> [usize; 4] {
        let both = (self.up & self.down).count_ones() as usize;
        let up = self.n_plus() - both;
        let down = self.n_minus() - both;
        [up, down, both, self.sites() - up - down - both]
    }

    pub fn literal(&self) -> String {
        self.letters().into_iter().map(Letter::literal).collect()
    }
}

impl PartialOrd for Configuration {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Configuration {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.n, self.rank()).cmp(&(other.n, other.rank()))
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.literal())
    }
}

impl FromStr for Configuration {
    type Err = FockError;

    fn from_str(s: &str) -> Result<Self, FockError> {
        let letters: Option<Vec<Letter>> = s.chars().map(Letter::from_literal).collect();
        match letters {
            Some(l) if !l.is_empty() => Configuration::from_letters(&l),
            _ => Err(FockError::BadLiteral(s.to_string())),
        }
    }
}

impl Serialize for Configuration {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.literal())
    }
}

impl<'de> Deserialize<'de> for Configuration {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Spin-resolved particle-number sector `(N₊, N₋)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Sector {
    pub n_plus: usize,
    pub n_minus: usize,
}

impl Sector {
    pub fn new(n_plus: usize, n_minus: usize) -> Self {
        Sector { n_plus, n_minus }
    }

    pub fn electrons(&self) -> usize {
        self.n_plus + self.n_minus
    }

    pub fn is_half_filled(&self, n: usize) -> bool {
        self.electrons() == n
    }

    /// `C(N, N₊)·C(N, N₋)`.
    pub fn dimension(&self, n: usize) -> u128 {
        crate::scalar::binomial(n as u64, self.n_plus as u64) * crate::scalar::binomial(n as u64, self.n_minus as u64)
    }

    /// All sectors with `N₊ + N₋ = n_e`, ordered by decreasing `N₊`.
    pub fn with_electrons(n: usize, n_e: usize) -> Vec<Sector> {
        (0..=n.min(n_e)).rev().filter(|&p| n_e - p <= n).map(|p| Sector::new(p, n_e - p)).collect()
    }
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.n_plus, self.n_minus)
    }
}

/// A configuration read as a Fock state in the site-major operator ordering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FockState(pub Configuration);

impl FockState {
    pub fn config(&self) -> &Configuration {
        &self.0
    }

    /// Parity of the occupied modes that precede `(site, spin)` in the ordering.
    fn sign_before(&self, site: usize, spin: Spin) -> Sign {
        let c = &self.0;
        let below = (1u32 << (site - 1)) - 1;
        let mut count = (c.up & below).count_ones() + (c.down & below).count_ones();
        if spin == Spin::Down && c.is_occupied(site, Spin::Up) {
            count += 1;
        }
        Sign::from_parity(count % 2 == 1)
    }

    fn check(&self, site: usize) -> Result<(), FockError> {
        let n = self.0.sites();
        if site == 0 || site > n {
            return Err(FockError::SiteOutOfRange { site, n });
        }
        Ok(())
    }

    /// `c†_{site,spin}|self⟩`; `None` when the mode is already occupied.
    pub fn create(&self, site: usize, spin: Spin) -> Result<Option<(Sign, FockState)>, FockError> {
        self.check(site)?;
        if self.0.is_occupied(site, spin) {
            return Ok(None);
        }
        let sign = self.sign_before(site, spin);
        Ok(Some((sign, FockState(toggle(&self.0, site, spin)))))
    }

    /// `c_{site,spin}|self⟩`; `None` when the mode is empty.
    pub fn annihilate(&self, site: usize, spin: Spin) -> Result<Option<(Sign, FockState)>, FockError> {
        self.check(site)?;
        if !self.0.is_occupied(site, spin) {
            return Ok(None);
        }
        let sign = self.sign_before(site, spin);
        Ok(Some((sign, FockState(toggle(&self.0, site, spin)))))
    }

    /// Fermionic translation `c†_{j,σ} → c†_{j+1 mod N,σ}` applied to the state.
    ///
    /// The operator string of site `N` is carried to the front, past the
    /// `N_e − n_N` operators of the other sites.
    pub fn translate(&self) -> (Sign, FockState) {
        let c = &self.0;
        let n = c.sites();
        let last = (c.is_occupied(n, Spin::Up) as usize) + (c.is_occupied(n, Spin::Down) as usize);
        let rest = c.electrons() - last;
        (Sign::from_parity(last * rest % 2 == 1), FockState(c.shifted()))
    }
}

fn toggle(c: &Configuration, site: usize, spin: Spin) -> Configuration {
    let b = 1u32 << (site - 1);
    let mut out = *c;
    match spin {
        Spin::Up => out.up ^= b,
        Spin::Down => out.down ^= b,
    }
    out
}

fn full_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

fn check_sites(n: usize) -> Result<(), FockError> {
    if n == 0 || n > MAX_SITES {
        return Err(FockError::BadSiteCount(n));
    }
    Ok(())
}

/// `c†_{site,spin}` on a configuration.
pub fn apply_creation(state: &FockState, site: usize, spin: Spin) -> Result<Option<(Sign, FockState)>, FockError> {
    state.create(site, spin)
}

/// `c_{site,spin}` on a configuration.
pub fn apply_annihilation(state: &FockState, site: usize, spin: Spin) -> Result<Option<(Sign, FockState)>, FockError> {
    state.annihilate(site, spin)
}

/// Weight `μ = (#+, #−, #±, #∅)` of a configuration.
pub fn weight(config: &Configuration) -> [usize; 4] {
    config.weight()
}

/// All configurations of `n` sites in basis order, optionally restricted to a sector.
pub fn enumerate_basis(n: usize, sector: Option<Sector>) -> Result<Vec<Configuration>, FockError> {
    check_sites(n)?;
    if n > 16 {
        // 4^n words no longer fit a practical enumeration.
        return Err(FockError::BadSiteCount(n));
    }
    let total = 1u64 << (2 * n);
    let mut out = Vec::new();
    let mut letters = vec![Letter::Empty; n];
    for rank in 0..total {
        let mut r = rank;
        for j in (0..n).rev() {
            letters[j] = Letter::ALL[(r & 3) as usize];
            r >>= 2;
        }
        let c = Configuration::from_letters(&letters)?;
        if sector.is_none_or(|s| c.sector() == s) {
            out.push(c);
        }
    }
    Ok(out)
}

/// An ordered basis of configurations with index lookup.
#[derive(Debug, Clone, PartialEq)]
pub struct Basis {
    sites: usize,
    states: Vec<Configuration>,
}

impl Basis {
    /// Sorts and deduplicates the given configurations.
    pub fn new(sites: usize, mut states: Vec<Configuration>) -> Self {
        assert!(states.iter().all(|c| c.sites() == sites));
        states.sort();
        states.dedup();
        Basis { sites, states }
    }

    pub fn full(n: usize) -> Result<Self, FockError> {
        Ok(Basis { sites: n, states: enumerate_basis(n, None)? })
    }

    pub fn sector(n: usize, sector: Sector) -> Result<Self, FockError> {
        Ok(Basis { sites: n, states: enumerate_basis(n, Some(sector))? })
    }

    /// All configurations with `n_e` electrons.
    pub fn electrons(n: usize, n_e: usize) -> Result<Self, FockError> {
        let states = enumerate_basis(n, None)?.into_iter().filter(|c| c.electrons() == n_e).collect();
        Ok(Basis { sites: n, states })
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[Configuration] {
        &self.states
    }

    pub fn index_of(&self, c: &Configuration) -> Option<usize> {
        self.states.binary_search(c).ok()
    }
}
