//! Sparse multivariate polynomials over F_p.

use core::cmp::Ordering;
use core::fmt;

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::PrimeChar;
use crate::monomial::{Monomial, MonomialOrder, OrderKind};

/// The ambient ring F_p[x_1..x_n] with a grading and a monomial order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyRing {
    ch: PrimeChar,
    names: Vec<String>,
    weights: Vec<u32>,
    order: MonomialOrder,
}

impl PolyRing {
    pub fn new(
        ch: PrimeChar,
        names: Vec<String>,
        weights: Vec<u32>,
        order: MonomialOrder,
    ) -> Arc<PolyRing> {
        assert_eq!(names.len(), weights.len());
        assert_eq!(names.len(), order.nvars());
        assert!(weights.iter().all(|&w| w > 0), "weights must be positive");
        Arc::new(PolyRing { ch, names, weights, order })
    }

    /// Standard-graded ring with grevlex order in the given variable order.
    pub fn standard(ch: PrimeChar, names: &[&str]) -> Arc<PolyRing> {
        let n = names.len();
        Self::new(
            ch,
            names.iter().map(|s| String::from(*s)).collect(),
            alloc::vec![1; n],
            MonomialOrder::grevlex(n),
        )
    }

    pub fn with_order(&self, order: MonomialOrder) -> Arc<PolyRing> {
        Self::new(self.ch, self.names.clone(), self.weights.clone(), order)
    }

    /// Appends an auxiliary variable of weight 1 that the order eliminates first.
    pub fn with_elimination_var(&self) -> Arc<PolyRing> {
        let mut names = self.names.clone();
        names.push(String::from("_t"));
        let mut weights = self.weights.clone();
        weights.push(1);
        Self::new(self.ch, names, weights, self.order.with_elimination_var())
    }

    #[inline]
    pub fn ch(&self) -> PrimeChar {
        self.ch
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.ch.p()
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Same variables, characteristic and weights (orders may differ).
    pub fn same_variables(&self, other: &PolyRing) -> bool {
        self.ch == other.ch && self.names == other.names && self.weights == other.weights
    }

    pub fn monomial(&self, exps: &[u32]) -> Monomial {
        Monomial::new(exps, &self.weights)
    }
}

pub type Term = (Monomial, u32);

/// A polynomial in canonical form: terms strictly descending in the ring's
/// order, no zero coefficients.
#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: Vec<Term>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[inline]
pub(crate) fn same_ring(a: &Arc<PolyRing>, b: &Arc<PolyRing>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, 1)
    }

    pub fn constant(ring: &Arc<PolyRing>, c: i64) -> Self {
        let c = ring.ch.reduce_i64(c);
        let mut terms = Vec::new();
        if c != 0 {
            terms.push((Monomial::one(ring.nvars()), c));
        }
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn var(ring: &Arc<PolyRing>, index: usize) -> Self {
        Polynomial { ring: ring.clone(), terms: alloc::vec![(Monomial::variable(index, &ring.weights), 1)] }
    }

    pub fn from_monomial(ring: &Arc<PolyRing>, m: Monomial, c: u32) -> Self {
        let c = c % ring.p();
        let terms = if c == 0 { Vec::new() } else { alloc::vec![(m, c)] };
        Polynomial { ring: ring.clone(), terms }
    }

    /// Builds a canonical polynomial from arbitrary terms (duplicates summed).
    pub fn from_terms(ring: &Arc<PolyRing>, mut terms: Vec<Term>) -> Self {
        let ch = ring.ch;
        let order = &ring.order;
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            let c = c % ch.p();
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = ch.add(last.1, c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| t.1 != 0);
        Polynomial { ring: ring.clone(), terms: out }
    }

    /// From integer coefficients and exponent vectors.
    pub fn from_int_terms(ring: &Arc<PolyRing>, terms: &[(Vec<u32>, i64)]) -> Self {
        let ch = ring.ch;
        let t = terms.iter().map(|(e, c)| (ring.monomial(e), ch.reduce_i64(*c))).collect();
        Self::from_terms(ring, t)
    }

    /// Trusts the caller that `terms` is already canonical.
    pub(crate) fn from_sorted(ring: &Arc<PolyRing>, terms: Vec<Term>) -> Self {
        debug_assert!(terms.windows(2).all(|w| ring.order.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|t| t.1 != 0));
        Polynomial { ring: ring.clone(), terms }
    }

    #[inline]
    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    #[inline]
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<u32> {
        self.terms.first().map(|t| t.1)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.0.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1 == 1
    }

    /// Homogeneous under the ring's weights (zero counts as homogeneous).
    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => self.terms.iter().all(|t| t.0.degree() == m.degree()),
        }
    }

    /// Largest weighted degree of a term; `None` for zero.
    pub fn degree(&self) -> Option<u64> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    /// Indices of variables that occur in some term.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.ring.nvars())
            .filter(|&i| self.terms.iter().any(|t| t.0.exps()[i] > 0))
            .collect()
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.add_scaled(other, 1))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.add_scaled(other, self.ring.ch.neg(1)))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.mul_unchecked(other))
    }

    /// self + c * other, merging sorted term lists.
    pub fn add_scaled(&self, other: &Polynomial, c: u32) -> Polynomial {
        debug_assert!(same_ring(&self.ring, &other.ring));
        let ch = self.ring.ch;
        let order = &self.ring.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match order.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let v = ch.mul(b[j].1, c);
                    if v != 0 {
                        out.push((b[j].0.clone(), v));
                    }
                    j += 1;
                }
                Ordering::Equal => {
                    let v = ch.add(a[i].1, ch.mul(b[j].1, c));
                    if v != 0 {
                        out.push((a[i].0.clone(), v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let v = ch.mul(t.1, c);
            if v != 0 {
                out.push((t.0.clone(), v));
            }
        }
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(self.ring.ch.neg(1))
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        let ch = self.ring.ch;
        let c = c % ch.p();
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(m, a)| (m.clone(), ch.mul(*a, c))).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    /// Multiplies by c * m.
    pub fn mul_term(&self, m: &Monomial, c: u32) -> Polynomial {
        let ch = self.ring.ch;
        if c.is_multiple_of(ch.p()) {
            return Polynomial::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(t, a)| (t.mul(m), ch.mul(*a, c))).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub(crate) fn mul_unchecked(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let (small, big) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        if small.len() == 1 {
            return big.mul_term(&small.terms[0].0, small.terms[0].1);
        }
        let ch = self.ring.ch;
        let mut terms = Vec::with_capacity(self.len() * other.len());
        for (m1, c1) in &small.terms {
            for (m2, c2) in &big.terms {
                terms.push((m1.mul(m2), ch.mul(*c1, *c2)));
            }
        }
        Polynomial::from_terms(&self.ring, terms)
    }

    /// Integer power by repeated squaring.
    pub fn pow(&self, mut k: u64) -> Result<Polynomial> {
        if let Some(d) = self.degree() {
            let bound = d.checked_mul(k).ok_or(Error::ExponentOverflow { bound: k })?;
            if bound > u32::MAX as u64 {
                return Err(Error::ExponentOverflow { bound });
            }
        }
        let mut acc = Polynomial::one(&self.ring);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        Ok(acc)
    }

    /// f^(p^e), computed termwise since coefficients are fixed by Frobenius.
    pub fn frobenius_power(&self, e: u32) -> Result<Polynomial> {
        let q = (self.ring.p() as u64)
            .checked_pow(e)
            .ok_or(Error::ExponentOverflow { bound: u64::MAX })?;
        self.frobenius_q(q)
    }

    /// Termwise power by q, valid when q is a power of the characteristic.
    pub(crate) fn frobenius_q(&self, q: u64) -> Result<Polynomial> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            terms.push((m.checked_pow(q)?, *c));
        }
        // monomial orders are preserved by m -> m^q
        Ok(Polynomial { ring: self.ring.clone(), terms })
    }

    pub fn monic(&self) -> Polynomial {
        match self.leading_coeff() {
            None => self.clone(),
            Some(1) => self.clone(),
            Some(c) => self.scale(self.ring.ch.inv(c).expect("nonzero leading coefficient")),
        }
    }

    /// Re-sorts the terms for a ring with the same variables but another order.
    pub fn to_ring(&self, ring: &Arc<PolyRing>) -> Polynomial {
        if same_ring(&self.ring, ring) {
            return Polynomial { ring: ring.clone(), terms: self.terms.clone() };
        }
        assert!(self.ring.same_variables(ring) || (self.ring.ch == ring.ch && self.ring.nvars() == ring.nvars()));
        let mut terms: Vec<Term> = self
            .terms
            .iter()
            .map(|(m, c)| (Monomial::new(m.exps(), ring.weights()), *c))
            .collect();
        terms.sort_by(|a, b| ring.order.cmp(&b.0, &a.0));
        Polynomial { ring: ring.clone(), terms }
    }

    /// Embeds into a ring with one extra trailing variable, multiplied by
    /// that variable to the power `t_exp`.
    pub(crate) fn lift_with_var(&self, ring: &Arc<PolyRing>, t_exp: u32) -> Polynomial {
        let w = *ring.weights().last().expect("extended ring");
        let terms = self.terms.iter().map(|(m, c)| (m.push_var(t_exp, w), *c)).collect();
        let mut out = Polynomial { ring: ring.clone(), terms };
        out.terms.sort_by(|a, b| ring.order.cmp(&b.0, &a.0));
        out
    }

    /// Drops the trailing variable, which must not occur.
    pub(crate) fn drop_last_var(&self, ring: &Arc<PolyRing>) -> Polynomial {
        let n = ring.nvars();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                debug_assert_eq!(m.exps()[n], 0);
                (m.drop_var(n, ring.weights()), *c)
            })
            .collect();
        let mut out = Polynomial { ring: ring.clone(), terms };
        out.terms.sort_by(|a, b| ring.order.cmp(&b.0, &a.0));
        out
    }

    pub fn derivative(&self, var: usize) -> Polynomial {
        let ch = self.ring.ch;
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exps()[var];
            if e == 0 {
                continue;
            }
            let coeff = ch.mul(*c, ch.reduce(e as u64));
            if coeff == 0 {
                continue;
            }
            let mut exps: Vec<u32> = m.exps().to_vec();
            exps[var] -= 1;
            terms.push((self.ring.monomial(&exps), coeff));
        }
        Polynomial::from_terms(&self.ring, terms)
    }

    /// Substitutes `images[i]` for variable i; the images share one ring.
    pub fn compose(&self, images: &[Polynomial], target: &Arc<PolyRing>) -> Result<Polynomial> {
        if images.len() != self.ring.nvars() {
            return Err(Error::Precondition(String::from("one image per variable required")));
        }
        for im in images {
            if !same_ring(im.ring(), target) {
                return Err(Error::RingMismatch);
            }
        }
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, *c as i64);
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t = t.mul_unchecked(&images[i].pow(e as u64)?);
                }
            }
            out = out.add_scaled(&t, 1);
        }
        Ok(out)
    }

    /// Exact quotient self / divisor, or `None` if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        let lm = divisor.leading_monomial()?;
        let ch = self.ring.ch;
        let inv = ch.inv(divisor.terms[0].1).ok()?;
        let mut rest = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rest.terms.first().cloned() {
            if !lm.divides(&m) {
                return None;
            }
            let qm = lm.quotient_of(&m);
            let qc = ch.mul(c, inv);
            rest = rest.add_scaled(&divisor.mul_term(&qm, qc), ch.neg(1));
            quot.push((qm, qc));
        }
        Some(Polynomial { ring: self.ring.clone(), terms: quot })
    }

    /// Homogeneous component of the given weighted degree.
    pub fn homogeneous_part(&self, degree: u64) -> Polynomial {
        let terms = self.terms.iter().filter(|t| t.0.degree() == degree).cloned().collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn is_canonical(&self) -> bool {
        self.terms.iter().all(|t| t.1 != 0 && t.1 < self.ring.p())
            && self
                .terms
                .windows(2)
                .all(|w| self.ring.order.cmp(&w[0].0, &w[1].0) == Ordering::Greater)
    }
}

impl core::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("ring mismatch")
    }
}

impl core::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("ring mismatch")
    }
}

impl core::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("ring mismatch")
    }
}

impl core::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(self)
    }
}

/// Writes a monomial as `x^2*y`; the empty product is written `1`.
pub fn write_monomial(f: &mut dyn fmt::Write, m: &Monomial, names: &[String]) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.exps().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_char('*')?;
        }
        first = false;
        f.write_str(&names[i])?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    if first {
        f.write_char('1')?;
    }
    Ok(())
}

impl fmt::Display for Polynomial {
    /// Canonical rendering: descending terms, signed coefficients in
    /// (-p/2, p/2], explicit `*` between factors.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let ch = self.ring.ch;
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let s = ch.signed(*c);
            let mag = s.unsigned_abs();
            if s < 0 {
                f.write_str("-")?;
            } else if i > 0 {
                f.write_str("+")?;
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else {
                if mag != 1 {
                    write!(f, "{mag}*")?;
                }
                write_monomial(f, m, &self.ring.names)?;
            }
        }
        Ok(())
    }
}

/// Smallest grevlex-style variable priority placing `front` first.
pub fn priority_with_front(nvars: usize, front: &[usize]) -> Vec<usize> {
    let mut p: Vec<usize> = front.to_vec();
    p.extend((0..nvars).filter(|i| !front.contains(i)));
    p
}

/// Order of the same kind whose priority puts the listed variables first.
pub fn order_with_front(kind: OrderKind, nvars: usize, front: &[usize]) -> MonomialOrder {
    MonomialOrder::with_priority(kind, priority_with_front(nvars, front))
}
