//! Exponent vectors and monomial orders.

use core::cmp::Ordering;

use alloc::vec::Vec;
use smallvec::SmallVec;

use crate::error::{Error, Result};

pub type Exponents = SmallVec<[u32; 8]>;

/// An exponent vector with its cached weighted degree.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: Exponents,
    degree: u64,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { exps: SmallVec::from_elem(0, nvars), degree: 0 }
    }

    pub fn new(exps: &[u32], weights: &[u32]) -> Self {
        debug_assert_eq!(exps.len(), weights.len());
        let degree = exps.iter().zip(weights).map(|(&e, &w)| e as u64 * w as u64).sum();
        Monomial { exps: SmallVec::from_slice(exps), degree }
    }

    pub fn variable(index: usize, weights: &[u32]) -> Self {
        let mut exps = SmallVec::from_elem(0, weights.len());
        exps[index] = 1;
        Monomial { exps, degree: weights[index] as u64 }
    }

    #[inline]
    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    #[inline]
    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Number of variables with a positive exponent.
    pub fn support_len(&self) -> usize {
        self.exps.iter().filter(|&&e| e > 0).count()
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        let mut exps = self.exps.clone();
        for (a, &b) in exps.iter_mut().zip(other.exps.iter()) {
            *a = a.checked_add(b).ok_or(Error::ExponentOverflow { bound: u32::MAX as u64 })?;
        }
        Ok(Monomial { exps, degree: self.degree + other.degree })
    }

    /// Product; panics on exponent overflow (use [`Monomial::checked_mul`] when
    /// the inputs are not already bounded).
    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps.clone();
        for (a, &b) in exps.iter_mut().zip(other.exps.iter()) {
            *a = a.checked_add(b).expect("exponent overflow");
        }
        Monomial { exps, degree: self.degree + other.degree }
    }

    pub fn checked_pow(&self, k: u64) -> Result<Monomial> {
        let mut exps = self.exps.clone();
        for a in exps.iter_mut() {
            let v = (*a as u64).checked_mul(k).filter(|&v| v <= u32::MAX as u64);
            *a = v.ok_or(Error::ExponentOverflow { bound: k })? as u32;
        }
        let degree = self.degree.checked_mul(k).ok_or(Error::ExponentOverflow { bound: k })?;
        Ok(Monomial { exps, degree })
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree
            && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let exps = other.exps.iter().zip(self.exps.iter()).map(|(a, b)| a - b).collect();
        Monomial { exps, degree: other.degree - self.degree }
    }

    pub fn lcm(&self, other: &Monomial, weights: &[u32]) -> Monomial {
        let exps: Exponents =
            self.exps.iter().zip(other.exps.iter()).map(|(&a, &b)| a.max(b)).collect();
        let degree = exps.iter().zip(weights).map(|(&e, &w)| e as u64 * w as u64).sum();
        Monomial { exps, degree }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Drops the variable at `index` (used after elimination).
    pub fn drop_var(&self, index: usize, weights: &[u32]) -> Monomial {
        let mut exps = self.exps.clone();
        exps.remove(index);
        Monomial::new(&exps, weights)
    }

    /// Appends a variable with the given exponent and weight.
    pub fn push_var(&self, exp: u32, weight: u32) -> Monomial {
        let mut exps = self.exps.clone();
        exps.push(exp);
        Monomial { exps, degree: self.degree + exp as u64 * weight as u64 }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum OrderKind {
    Lex,
    GrLex,
    GRevLex,
}

/// A monomial order: a kind, a variable priority (most significant first)
/// and an optional block of variables compared before everything else.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct MonomialOrder {
    kind: OrderKind,
    priority: Vec<usize>,
    eliminate: Vec<usize>,
}

impl MonomialOrder {
    pub fn new(kind: OrderKind, nvars: usize) -> Self {
        MonomialOrder { kind, priority: (0..nvars).collect(), eliminate: Vec::new() }
    }

    pub fn grevlex(nvars: usize) -> Self {
        Self::new(OrderKind::GRevLex, nvars)
    }

    pub fn lex(nvars: usize) -> Self {
        Self::new(OrderKind::Lex, nvars)
    }

    /// `priority` must be a permutation of `0..nvars`.
    pub fn with_priority(kind: OrderKind, priority: Vec<usize>) -> Self {
        let mut seen = priority.clone();
        seen.sort_unstable();
        assert!(seen.iter().enumerate().all(|(i, &v)| i == v), "priority is not a permutation");
        MonomialOrder { kind, priority, eliminate: Vec::new() }
    }

    /// Block order: the exponent sum over `vars` decides first.
    pub fn eliminating(mut self, vars: Vec<usize>) -> Self {
        self.eliminate = vars;
        self
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn priority(&self) -> &[usize] {
        &self.priority
    }

    pub fn eliminated(&self) -> &[usize] {
        &self.eliminate
    }

    pub fn nvars(&self) -> usize {
        self.priority.len()
    }

    /// The same order on one more variable appended at the end, placed last
    /// in priority and eliminated first.
    pub fn with_elimination_var(&self) -> Self {
        let n = self.priority.len();
        let mut priority = self.priority.clone();
        priority.push(n);
        MonomialOrder { kind: self.kind, priority, eliminate: alloc::vec![n] }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        if !self.eliminate.is_empty() {
            let sa: u64 = self.eliminate.iter().map(|&i| a.exps[i] as u64).sum();
            let sb: u64 = self.eliminate.iter().map(|&i| b.exps[i] as u64).sum();
            match sa.cmp(&sb) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        match self.kind {
            OrderKind::Lex => self.lex_cmp(a, b),
            OrderKind::GrLex => a.degree.cmp(&b.degree).then_with(|| self.lex_cmp(a, b)),
            OrderKind::GRevLex => a.degree.cmp(&b.degree).then_with(|| {
                for &i in self.priority.iter().rev() {
                    match a.exps[i].cmp(&b.exps[i]) {
                        Ordering::Equal => continue,
                        o => return o.reverse(),
                    }
                }
                Ordering::Equal
            }),
        }
    }

    fn lex_cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        for &i in &self.priority {
            match a.exps[i].cmp(&b.exps[i]) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }

    /// A key whose lexicographic order agrees with [`MonomialOrder::cmp`].
    pub fn key(&self, m: &Monomial) -> SmallVec<[u64; 10]> {
        let mut key = SmallVec::new();
        if !self.eliminate.is_empty() {
            key.push(self.eliminate.iter().map(|&i| m.exps[i] as u64).sum());
        }
        match self.kind {
            OrderKind::Lex => key.extend(self.priority.iter().map(|&i| m.exps[i] as u64)),
            OrderKind::GrLex => {
                key.push(m.degree);
                key.extend(self.priority.iter().map(|&i| m.exps[i] as u64));
            }
            OrderKind::GRevLex => {
                key.push(m.degree);
                key.extend(
                    self.priority.iter().rev().map(|&i| u32::MAX as u64 - m.exps[i] as u64),
                );
            }
        }
        key
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e, &alloc::vec![1; e.len()])
    }

    #[test]
    fn grevlex_breaks_ties_on_last_variable() {
        let o = MonomialOrder::grevlex(3);
        assert_eq!(o.cmp(&m(&[3, 0, 0]), &m(&[0, 0, 3])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[3, 0, 0]), &m(&[0, 3, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
        let z_first = MonomialOrder::with_priority(OrderKind::GRevLex, alloc::vec![2, 0, 1]);
        assert_eq!(z_first.cmp(&m(&[0, 0, 3]), &m(&[3, 0, 0])), Ordering::Greater);
    }

    #[test]
    fn elimination_block_dominates() {
        let o = MonomialOrder::grevlex(2).with_elimination_var();
        assert_eq!(o.cmp(&m(&[0, 0, 1]), &m(&[5, 5, 0])), Ordering::Greater);
    }

    #[test]
    fn key_agrees_with_cmp() {
        let monos: Vec<Monomial> = (0..4)
            .flat_map(|a| (0..4).flat_map(move |b| (0..3).map(move |c| m(&[a, b, c]))))
            .collect();
        for kind in [OrderKind::Lex, OrderKind::GrLex, OrderKind::GRevLex] {
            for order in [
                MonomialOrder::new(kind, 3),
                MonomialOrder::with_priority(kind, alloc::vec![1, 2, 0]),
                MonomialOrder::new(kind, 2).with_elimination_var(),
            ] {
                for a in &monos {
                    for b in &monos {
                        assert_eq!(order.cmp(a, b), order.key(a).cmp(&order.key(b)));
                    }
                }
                // 1 is minimal
                for a in &monos {
                    assert_ne!(order.cmp(a, &m(&[0, 0, 0])), Ordering::Less);
                }
            }
        }
    }

    #[test]
    fn overflow_is_reported() {
        let big = m(&[u32::MAX / 2 + 1, 0]);
        assert!(matches!(big.checked_pow(2), Err(Error::ExponentOverflow { .. })));
        assert!(big.checked_mul(&big).is_err());
    }
}
