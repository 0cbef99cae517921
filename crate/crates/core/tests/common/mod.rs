//! Independent oracles shared by the integration tests.
//!
//! Fermion states are ordered strings of creation operators on the vacuum,
//! `c†_{m0} c†_{m1} … |0⟩`, with modes numbered site-major:
//! `mode(j, +) = 2(j−1)`, `mode(j, −) = 2(j−1)+1`. Operators act through the
//! canonical anticommutation relations only; nothing here calls into the
//! library's sign code.

#![allow(dead_code)]

use std::collections::BTreeMap;

use hubbard_swd::fock::Configuration;

pub const UP: usize = 0;
pub const DOWN: usize = 1;

pub fn mode(site: usize, spin: usize) -> usize {
    2 * (site - 1) + spin
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Op {
    pub mode: usize,
    pub dagger: bool,
}

pub fn cd(site: usize, spin: usize) -> Op {
    Op { mode: mode(site, spin), dagger: true }
}

pub fn c(site: usize, spin: usize) -> Op {
    Op { mode: mode(site, spin), dagger: false }
}

/// `coeff · ops[0] ops[1] …` (rightmost acts first).
#[derive(Debug, Clone)]
pub struct Word {
    pub coeff: f64,
    pub ops: Vec<Op>,
}

pub fn word(coeff: f64, ops: Vec<Op>) -> Word {
    Word { coeff, ops }
}

/// Sorts a creation string by adjacent swaps, each contributing `−1`.
/// Returns `None` when a mode repeats (Pauli).
pub fn normal_order(mut modes: Vec<usize>) -> Option<(f64, Vec<usize>)> {
    let mut sign = 1.0;
    for i in 0..modes.len() {
        for j in 0..modes.len() - 1 - i {
            if modes[j] == modes[j + 1] {
                return None;
            }
            if modes[j] > modes[j + 1] {
                modes.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    if modes.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((sign, modes))
}

/// One operator on an ordered creation string.
pub fn apply_op(op: Op, modes: &[usize]) -> Option<(f64, Vec<usize>)> {
    if op.dagger {
        let mut v = Vec::with_capacity(modes.len() + 1);
        v.push(op.mode);
        v.extend_from_slice(modes);
        normal_order(v)
    } else {
        // c_m c†_{a0} … c†_{ak}|0⟩: anticommute c_m to the right; the only
        // surviving term is the contraction with a_p = m, carrying (−1)^p.
        let p = modes.iter().position(|&m| m == op.mode)?;
        let sign = if p % 2 == 0 { 1.0 } else { -1.0 };
        let mut rest = modes.to_vec();
        rest.remove(p);
        Some((sign, rest))
    }
}

pub fn apply_word(w: &Word, modes: &[usize]) -> Option<(f64, Vec<usize>)> {
    let mut coeff = w.coeff;
    let mut cur = modes.to_vec();
    for &op in w.ops.iter().rev() {
        let (s, next) = apply_op(op, &cur)?;
        coeff *= s;
        cur = next;
    }
    Some((coeff, cur))
}

pub fn modes_of(config: &Configuration) -> Vec<usize> {
    let mut v = Vec::new();
    for j in 1..=config.sites() {
        let b = 1u32 << (j - 1);
        if config.up_mask() & b != 0 {
            v.push(mode(j, UP));
        }
        if config.down_mask() & b != 0 {
            v.push(mode(j, DOWN));
        }
    }
    v
}

pub fn config_of(n: usize, modes: &[usize]) -> Configuration {
    let (mut up, mut down) = (0u32, 0u32);
    for &m in modes {
        let bit = 1u32 << (m / 2);
        if m % 2 == UP {
            up |= bit;
        } else {
            down |= bit;
        }
    }
    Configuration::from_masks(n, up, down).unwrap()
}

/// Dense matrix of a sum of words on the given configurations.
/// Panics when the image leaves the span of `states`.
pub fn matrix(n: usize, states: &[Configuration], words: &[Word]) -> Vec<Vec<f64>> {
    let index: BTreeMap<Configuration, usize> = states.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let dim = states.len();
    let mut m = vec![vec![0.0; dim]; dim];
    for (col, s) in states.iter().enumerate() {
        let modes = modes_of(s);
        for w in words {
            if let Some((coeff, image)) = apply_word(w, &modes) {
                let target = config_of(n, &image);
                let row = *index.get(&target).unwrap_or_else(|| panic!("{target} leaves the basis"));
                m[row][col] += coeff;
            }
        }
    }
    m
}

/// Every configuration of `n` sites with the given `(N₊, N₋)`, any order.
pub fn sector_states(n: usize, n_plus: usize, n_minus: usize) -> Vec<Configuration> {
    let mut out = Vec::new();
    for up in 0u32..(1 << n) {
        for down in 0u32..(1 << n) {
            if up.count_ones() as usize == n_plus && down.count_ones() as usize == n_minus {
                out.push(Configuration::from_masks(n, up, down).unwrap());
            }
        }
    }
    out
}

pub fn all_states(n: usize) -> Vec<Configuration> {
    let mut out = Vec::new();
    for up in 0u32..(1 << n) {
        for down in 0u32..(1 << n) {
            out.push(Configuration::from_masks(n, up, down).unwrap());
        }
    }
    out
}

/// Hubbard Hamiltonian as a word list; bonds written out independently.
pub fn hamiltonian_words(n: usize, t: f64, u: f64, periodic: bool) -> Vec<Word> {
    let mut bonds: Vec<(usize, usize)> = (1..n).map(|j| (j, j + 1)).collect();
    if periodic && n >= 2 {
        bonds.push((n, 1));
    }
    let mut w = Vec::new();
    for (a, b) in bonds {
        for s in [UP, DOWN] {
            w.push(word(t, vec![cd(a, s), c(b, s)]));
            w.push(word(t, vec![cd(b, s), c(a, s)]));
        }
    }
    for j in 1..=n {
        w.push(word(u, vec![cd(j, UP), c(j, UP), cd(j, DOWN), c(j, DOWN)]));
    }
    w
}

pub fn spin_plus_words(n: usize) -> Vec<Word> {
    (1..=n).map(|j| word(1.0, vec![cd(j, UP), c(j, DOWN)])).collect()
}

pub fn spin_minus_words(n: usize) -> Vec<Word> {
    (1..=n).map(|j| word(1.0, vec![cd(j, DOWN), c(j, UP)])).collect()
}

pub fn spin_z_words(n: usize) -> Vec<Word> {
    (1..=n).flat_map(|j| [word(0.5, vec![cd(j, UP), c(j, UP)]), word(-0.5, vec![cd(j, DOWN), c(j, DOWN)])]).collect()
}

fn stagger(j: usize) -> f64 {
    if j.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

pub fn pseudo_plus_words(n: usize) -> Vec<Word> {
    (1..=n).map(|j| word(stagger(j), vec![cd(j, UP), cd(j, DOWN)])).collect()
}

pub fn pseudo_minus_words(n: usize) -> Vec<Word> {
    // (c†_{j+} c†_{j−})† = c_{j−} c_{j+}
    (1..=n).map(|j| word(stagger(j), vec![c(j, DOWN), c(j, UP)])).collect()
}

/// Fermionic translation: every creator moves one site to the right (mod N),
/// then the string is brought back to normal order.
pub fn translate(n: usize, modes: &[usize]) -> (f64, Vec<usize>) {
    let moved = modes.iter().map(|&m| ((m / 2 + 1) % n) * 2 + m % 2).collect();
    normal_order(moved).expect("translation is a bijection on modes")
}

pub fn translation_matrix(n: usize, states: &[Configuration]) -> Vec<Vec<f64>> {
    let index: BTreeMap<Configuration, usize> = states.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let mut m = vec![vec![0.0; states.len()]; states.len()];
    for (col, s) in states.iter().enumerate() {
        let (sign, image) = translate(n, &modes_of(s));
        m[index[&config_of(n, &image)]][col] = sign;
    }
    m
}

pub fn matmul(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    let mut out = vec![vec![0.0; m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l] != 0.0 {
                for j in 0..m {
                    out[i][j] += a[i][l] * b[l][j];
                }
            }
        }
    }
    out
}

pub fn max_abs_diff(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    a.iter().zip(b).flat_map(|(r, s)| r.iter().zip(s).map(|(x, y)| (x - y).abs())).fold(0.0, f64::max)
}

/// Eigenvalues of a symmetric matrix by nalgebra, ascending.
pub fn reference_eigenvalues(m: &[Vec<f64>]) -> Vec<f64> {
    let n = m.len();
    let dm = nalgebra::DMatrix::from_fn(n, n, |i, j| m[i][j]);
    let mut ev: Vec<f64> = dm.symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ev
}

pub fn max_pairwise(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len(), "spectra differ in size");
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

pub fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v
}

/// Reference irreducible basis for two `u` and two `d` letters on four sites:
/// columns are labeled by tableau, each entry is `(sign, p, q)` for the value
/// `sign·√(p/q)`. Column signs are a convention.
pub const REFERENCE_COLUMNS: [&str; 6] = ["1234", "123/4", "134/2", "124/3", "12/34", "13/24"];

/// `(sign, p, q)` per column.
pub type ReferenceRow = (&'static str, [(i8, i64, i64); 6]);

pub const REFERENCE_2X2: [ReferenceRow; 6] = [
    ("uudd", [(1, 1, 6), (-1, 1, 6), (0, 0, 1), (-1, 1, 3), (1, 1, 3), (0, 0, 1)]),
    ("duud", [(1, 1, 6), (-1, 1, 6), (1, 1, 4), (1, 1, 12), (-1, 1, 12), (-1, 1, 4)]),
    ("dduu", [(1, 1, 6), (1, 1, 6), (0, 0, 1), (1, 1, 3), (1, 1, 3), (0, 0, 1)]),
    ("uddu", [(1, 1, 6), (1, 1, 6), (-1, 1, 4), (-1, 1, 12), (-1, 1, 12), (-1, 1, 4)]),
    ("udud", [(1, 1, 6), (-1, 1, 6), (-1, 1, 4), (1, 1, 12), (-1, 1, 12), (1, 1, 4)]),
    ("dudu", [(1, 1, 6), (1, 1, 6), (1, 1, 4), (-1, 1, 12), (-1, 1, 12), (1, 1, 4)]),
];

pub fn reference_value((sign, p, q): (i8, i64, i64)) -> f64 {
    sign as f64 * (p as f64 / q as f64).sqrt()
}
