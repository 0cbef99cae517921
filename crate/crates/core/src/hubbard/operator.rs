use std::fmt;

use crate::fock::{Basis, Configuration, FockState, Spin};
use crate::linalg::SparseOperator;
use crate::scalar::Scalar;

use super::HubbardError;

/// A single creation (`dagger`) or annihilation operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Ladder {
    pub site: usize,
    pub spin: Spin,
    pub dagger: bool,
}

impl Ladder {
    pub fn create(site: usize, spin: Spin) -> Self {
        Ladder { site, spin, dagger: true }
    }

    pub fn annihilate(site: usize, spin: Spin) -> Self {
        Ladder { site, spin, dagger: false }
    }

    pub fn adjoint(self) -> Self {
        Ladder { dagger: !self.dagger, ..self }
    }
}

impl fmt::Display for Ladder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.spin == Spin::Up { '+' } else { '-' };
        if self.dagger {
            write!(f, "c†({},{s})", self.site)
        } else {
            write!(f, "c({},{s})", self.site)
        }
    }
}

/// `coeff · o_1 o_2 … o_k`; the rightmost operator acts first. An empty
/// product is the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct Term<T> {
    pub coeff: T,
    pub ops: Vec<Ladder>,
}

/// Linear combination of products of ladder operators on `n` sites.
#[derive(Debug, Clone, PartialEq)]
pub struct FockOperator<T> {
    n: usize,
    terms: Vec<Term<T>>,
}

impl<T: Scalar> FockOperator<T> {
    pub fn zero(n: usize) -> Self {
        FockOperator { n, terms: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        FockOperator { n, terms: vec![Term { coeff: T::one(), ops: Vec::new() }] }
    }

    pub fn sites(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[Term<T>] {
        &self.terms
    }

    /// Adds `coeff · ops`; site indices must lie in `1..=n`.
    pub fn push(&mut self, coeff: T, ops: Vec<Ladder>) {
        assert!(ops.iter().all(|o| o.site >= 1 && o.site <= self.n), "ladder site out of range");
        if !coeff.is_zero() {
            self.terms.push(Term { coeff, ops });
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n);
        FockOperator { n: self.n, terms: self.terms.iter().chain(&rhs.terms).cloned().collect() }
    }

    pub fn scale(&self, s: T) -> Self {
        let terms =
            self.terms.iter().map(|t| Term { coeff: t.coeff.clone() * s.clone(), ops: t.ops.clone() }).collect();
        FockOperator { n: self.n, terms }
    }

    /// Operator product `self · rhs`.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n);
        let mut terms = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for a in &self.terms {
            for b in &rhs.terms {
                let mut ops = a.ops.clone();
                ops.extend_from_slice(&b.ops);
                terms.push(Term { coeff: a.coeff.clone() * b.coeff.clone(), ops });
            }
        }
        FockOperator { n: self.n, terms }
    }

    pub fn adjoint(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| Term { coeff: t.coeff.conj(), ops: t.ops.iter().rev().map(|o| o.adjoint()).collect() })
            .collect();
        FockOperator { n: self.n, terms }
    }

    /// Image of one configuration, as unmerged `(coefficient, configuration)` pairs.
    pub fn apply(&self, config: &Configuration) -> Vec<(T, Configuration)> {
        let mut out = Vec::new();
        for t in &self.terms {
            if let Some((sign, state)) = apply_string(&t.ops, *config) {
                out.push((t.coeff.clone() * T::from_int(sign), state));
            }
        }
        out
    }

    /// Matrix on a basis that the operator maps into itself.
    pub fn matrix(&self, basis: &Basis) -> Result<SparseOperator<T>, HubbardError> {
        self.matrix_between(basis, basis)
    }

    /// Matrix from `source` to `target`; fails if some image leaves `target`.
    pub fn matrix_between(&self, source: &Basis, target: &Basis) -> Result<SparseOperator<T>, HubbardError> {
        let mut trip = Vec::new();
        for (col, c) in source.states().iter().enumerate() {
            for (v, image) in self.apply(c) {
                let row = target.index_of(&image).ok_or(HubbardError::LeavesBasis(image.literal()))?;
                trip.push((row, col, v));
            }
        }
        Ok(SparseOperator::from_triplets(target.len(), source.len(), trip))
    }
}

fn apply_string(ops: &[Ladder], config: Configuration) -> Option<(i64, Configuration)> {
    let mut state = FockState(config);
    let mut sign = 1i64;
    for o in ops.iter().rev() {
        let step = if o.dagger { state.create(o.site, o.spin) } else { state.annihilate(o.site, o.spin) };
        let (s, next) = step.expect("sites checked on insertion")?;
        sign *= s.value();
        state = next;
    }
    Some((sign, state.0))
}
