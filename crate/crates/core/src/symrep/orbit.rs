use std::collections::HashMap;

/// Symmetric-group orbit `O_μ` of two-letter words of length `n`.
///
/// Letters are `0` and `1`; the weight `(a, b)` counts them. A word is stored
/// as a bitmask with position `p` (1-based) at bit `n − p`, so ascending mask
/// order is lexicographic order with `0 < 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitSpace {
    n: usize,
    weight: (usize, usize),
    words: Vec<u32>,
    index: HashMap<u32, usize>,
}

impl OrbitSpace {
    pub fn new(weight: (usize, usize)) -> Self {
        let n = weight.0 + weight.1;
        assert!(n <= 24, "orbit spaces are limited to 24 letters");
        let words: Vec<u32> = (0u32..(1u32 << n)).filter(|w| w.count_ones() as usize == weight.1).collect();
        let index = words.iter().enumerate().map(|(i, &w)| (w, i)).collect();
        OrbitSpace { n, weight, words, index }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn weight(&self) -> (usize, usize) {
        self.weight
    }

    pub fn dim(&self) -> usize {
        self.words.len()
    }

    pub fn words(&self) -> &[u32] {
        &self.words
    }

    pub fn index_of(&self, word: u32) -> Option<usize> {
        self.index.get(&word).copied()
    }

    /// Letter (0 or 1) at 1-based `position` of `word`.
    pub fn letter(&self, word: u32, position: usize) -> u8 {
        ((word >> (self.n - position)) & 1) as u8
    }

    pub fn word_from_letters(&self, letters: &[u8]) -> u32 {
        assert_eq!(letters.len(), self.n);
        letters.iter().fold(0u32, |acc, &l| (acc << 1) | l as u32)
    }

    pub fn letters(&self, word: u32) -> Vec<u8> {
        (1..=self.n).map(|p| self.letter(word, p)).collect()
    }

    /// Place permutation by the transposition `(a, b)` of 1-based positions.
    pub fn transpose(&self, word: u32, a: usize, b: usize) -> u32 {
        let (ba, bb) = (self.n - a, self.n - b);
        let la = (word >> ba) & 1;
        let lb = (word >> bb) & 1;
        if la == lb {
            word
        } else {
            word ^ ((1 << ba) | (1 << bb))
        }
    }

    /// Index of `(a, b)` applied to the `i`-th orbit word.
    pub fn transpose_index(&self, i: usize, a: usize, b: usize) -> usize {
        self.index[&self.transpose(self.words[i], a, b)]
    }
}

/// Multinomial `n! / (a! b!)` for two letters.
pub fn orbit_dimension(weight: (usize, usize)) -> u128 {
    crate::scalar::binomial((weight.0 + weight.1) as u64, weight.1 as u64)
}
