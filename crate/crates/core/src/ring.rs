//! Graded quotient rings F_p[x]/J, their elements and ideals, and systems
//! of parameters.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use once_cell::race::OnceBox;

use crate::error::{Error, Result};
use crate::field::PrimeChar;
use crate::groebner::GroebnerBasis;
use crate::ideal::AmbientIdeal;
use crate::monomial::MonomialOrder;
use crate::poly::{same_ring, PolyRing, Polynomial};

/// Cap on the number of Jacobian test-element candidates.
pub const MAX_JACOBIAN_CANDIDATES: usize = 20;

struct RingInner {
    poly: Arc<PolyRing>,
    relations: Vec<Polynomial>,
    ideal: AmbientIdeal,
    dim: usize,
    domain: bool,
    jacobian: OnceBox<Result<Vec<Polynomial>>>,
}

/// A graded quotient R = F_p[x_1..x_n]/J. Cheap to clone.
#[derive(Clone)]
pub struct RingPresentation(Arc<RingInner>);

impl fmt::Debug for RingPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}[{}]/{:?}", self.p(), self.0.poly.names().join(","), self.0.relations)
    }
}

impl PartialEq for RingPresentation {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (same_ring(&self.0.poly, &other.0.poly) && self.0.relations == other.0.relations)
    }
}

impl RingPresentation {
    /// Builds the presentation from relations in `poly`. Relations must be
    /// homogeneous and must not generate the unit ideal.
    pub fn new(poly: &Arc<PolyRing>, relations: Vec<Polynomial>, domain: bool) -> Result<Self> {
        for (i, r) in relations.iter().enumerate() {
            if !same_ring(r.ring(), poly) {
                return Err(Error::RingMismatch);
            }
            if !r.is_homogeneous() {
                return Err(Error::GradingError { relation: i + 1 });
            }
        }
        let ideal = AmbientIdeal::new(poly, relations.clone())?;
        let dim = ideal.krull_dimension().ok_or(Error::ZeroRing)?;
        Ok(RingPresentation(Arc::new(RingInner {
            poly: poly.clone(),
            relations,
            ideal,
            dim,
            domain,
            jacobian: OnceBox::new(),
        })))
    }

    /// Convenience constructor with grevlex order.
    pub fn with_names(
        ch: PrimeChar,
        names: &[&str],
        weights: &[u32],
        relations: &[&[(&[u32], i64)]],
        domain: bool,
    ) -> Result<Self> {
        let poly = PolyRing::new(
            ch,
            names.iter().map(|s| String::from(*s)).collect(),
            weights.to_vec(),
            MonomialOrder::grevlex(names.len()),
        );
        let rels = relations
            .iter()
            .map(|terms| {
                let t: Vec<(Vec<u32>, i64)> = terms.iter().map(|(e, c)| (e.to_vec(), *c)).collect();
                Polynomial::from_int_terms(&poly, &t)
            })
            .collect();
        Self::new(&poly, rels, domain)
    }

    pub fn poly_ring(&self) -> &Arc<PolyRing> {
        &self.0.poly
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.0.relations
    }

    /// The relation ideal J of the ambient ring.
    pub fn relation_ideal(&self) -> &AmbientIdeal {
        &self.0.ideal
    }

    pub fn relation_basis(&self) -> &GroebnerBasis {
        self.0.ideal.groebner()
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn is_domain(&self) -> bool {
        self.0.domain
    }

    pub fn ch(&self) -> PrimeChar {
        self.0.poly.ch()
    }

    pub fn p(&self) -> u32 {
        self.0.poly.p()
    }

    pub fn nvars(&self) -> usize {
        self.0.poly.nvars()
    }

    pub fn names(&self) -> &[String] {
        self.0.poly.names()
    }

    /// No relations: the ambient polynomial ring itself.
    pub fn is_polynomial_ring(&self) -> bool {
        self.0.relations.iter().all(|r| r.is_zero())
    }

    /// The same ring presented with a different monomial order.
    pub fn with_order(&self, order: MonomialOrder) -> Result<Self> {
        let poly = self.0.poly.with_order(order);
        if same_ring(&poly, &self.0.poly) {
            return Ok(self.clone());
        }
        let rels = self.0.relations.iter().map(|r| r.to_ring(&poly)).collect();
        Self::new(&poly, rels, self.0.domain)
    }

    /// R/(extra), presented over the same ambient ring.
    pub fn quotient(&self, extra: &[Polynomial]) -> Result<Self> {
        let mut rels = self.0.relations.clone();
        rels.extend(extra.iter().cloned());
        Self::new(&self.0.poly, rels, self.0.domain)
    }

    pub fn element(&self, f: &Polynomial) -> Result<QuotientElement> {
        if !same_ring(f.ring(), &self.0.poly) {
            return Err(Error::RingMismatch);
        }
        Ok(QuotientElement { ring: self.clone(), rep: self.reduce(f) })
    }

    pub fn var(&self, i: usize) -> QuotientElement {
        self.element(&Polynomial::var(&self.0.poly, i)).expect("same ring")
    }

    pub fn one(&self) -> QuotientElement {
        self.element(&Polynomial::one(&self.0.poly)).expect("same ring")
    }

    pub fn zero(&self) -> QuotientElement {
        QuotientElement { ring: self.clone(), rep: Polynomial::zero(&self.0.poly) }
    }

    /// Normal form modulo J.
    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        if self.is_polynomial_ring() {
            return f.clone();
        }
        self.relation_basis().normal_form(f)
    }

    pub fn ideal(&self, gens: &[Polynomial]) -> Result<RingIdeal> {
        RingIdeal::new(self, gens)
    }

    /// True iff xs are homogeneous and cut the dimension by their number.
    pub fn is_parameter_system(&self, xs: &[Polynomial]) -> bool {
        if xs.len() > self.dim() || xs.iter().any(|x| !x.is_homogeneous() || !same_ring(x.ring(), &self.0.poly)) {
            return false;
        }
        let lift = match self.0.ideal.with_generators(xs) {
            Ok(l) => l,
            Err(_) => return false,
        };
        lift.krull_dimension() == Some(self.dim() - xs.len())
    }

    /// Nonzero elements of the Jacobian ideal, monic, deduplicated, by
    /// ascending degree, at most [`MAX_JACOBIAN_CANDIDATES`]. Hypersurfaces
    /// use the partial derivatives; otherwise all maximal minors of size
    /// n − dim. With no relations the ring is regular and the list is {1}.
    pub fn jacobian_test_candidates(&self) -> Result<Vec<QuotientElement>> {
        let reps = self.0.jacobian.get_or_init(|| Box::new(self.compute_jacobian()));
        match reps {
            Ok(v) => Ok(v.iter().map(|r| QuotientElement { ring: self.clone(), rep: r.clone() }).collect()),
            Err(e) => Err(e.clone()),
        }
    }

    fn compute_jacobian(&self) -> Result<Vec<Polynomial>> {
        let poly = &self.0.poly;
        let rels: Vec<&Polynomial> = self.0.relations.iter().filter(|r| !r.is_zero()).collect();
        if rels.is_empty() {
            return Ok(alloc::vec![Polynomial::one(poly)]);
        }
        let n = poly.nvars();
        let codim = n - self.dim();
        let matrix: Vec<Vec<Polynomial>> = rels.iter().map(|r| (0..n).map(|j| r.derivative(j)).collect()).collect();
        let mut raw: Vec<Polynomial> = Vec::new();
        if rels.len() == 1 || codim == 1 {
            for row in &matrix {
                raw.extend(row.iter().cloned());
            }
        } else if codim > 0 {
            for rows in subsets(rels.len(), codim) {
                for cols in subsets(n, codim) {
                    raw.push(minor(&matrix, &rows, &cols, poly));
                }
            }
        }
        let mut out: Vec<Polynomial> = Vec::new();
        for f in raw {
            let r = self.reduce(&f);
            if r.is_zero() {
                continue;
            }
            let r = r.monic();
            if !out.contains(&r) {
                out.push(r);
            }
        }
        if out.is_empty() {
            return Err(Error::SingularEverywhere);
        }
        let order = poly.order();
        out.sort_by(|a, b| {
            a.degree()
                .cmp(&b.degree())
                .then_with(|| a.len().cmp(&b.len()))
                .then_with(|| order.cmp(b.leading_monomial().unwrap(), a.leading_monomial().unwrap()))
        });
        out.truncate(MAX_JACOBIAN_CANDIDATES);
        Ok(out)
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Determinant of a square submatrix by cofactor expansion along the first row.
fn minor(m: &[Vec<Polynomial>], rows: &[usize], cols: &[usize], ring: &Arc<PolyRing>) -> Polynomial {
    if rows.len() == 1 {
        return m[rows[0]][cols[0]].clone();
    }
    let mut acc = Polynomial::zero(ring);
    for (k, &c) in cols.iter().enumerate() {
        let entry = &m[rows[0]][c];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let sub = minor(m, &rows[1..], &rest, ring);
        let term = entry.mul_unchecked(&sub);
        let sign = if k % 2 == 0 { 1 } else { ring.ch().neg(1) };
        acc = acc.add_scaled(&term, sign);
    }
    acc
}

/// An element of a quotient ring, stored as its normal form.
#[derive(Clone)]
pub struct QuotientElement {
    ring: RingPresentation,
    rep: Polynomial,
}

impl PartialEq for QuotientElement {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.rep == other.rep
    }
}

impl fmt::Debug for QuotientElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep)
    }
}

impl fmt::Display for QuotientElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep)
    }
}

impl QuotientElement {
    pub fn ring(&self) -> &RingPresentation {
        &self.ring
    }

    /// The canonical representative (normal form modulo J).
    pub fn rep(&self) -> &Polynomial {
        &self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.rep.is_homogeneous()
    }

    pub fn degree(&self) -> Option<u64> {
        self.rep.degree()
    }

    fn check(&self, other: &QuotientElement) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn add(&self, other: &QuotientElement) -> Result<QuotientElement> {
        self.check(other)?;
        Ok(QuotientElement { ring: self.ring.clone(), rep: self.rep.add_scaled(&other.rep, 1) })
    }

    pub fn sub(&self, other: &QuotientElement) -> Result<QuotientElement> {
        self.check(other)?;
        let rep = self.rep.add_scaled(&other.rep, self.ring.ch().neg(1));
        Ok(QuotientElement { ring: self.ring.clone(), rep })
    }

    pub fn mul(&self, other: &QuotientElement) -> Result<QuotientElement> {
        self.check(other)?;
        self.ring.element(&self.rep.mul_unchecked(&other.rep))
    }

    pub fn pow(&self, k: u64) -> Result<QuotientElement> {
        let mut acc = self.ring.one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }
}

/// An ideal of a quotient ring, represented by its lift I + J.
#[derive(Clone, Debug)]
pub struct RingIdeal {
    ring: RingPresentation,
    gens: Vec<Polynomial>,
    lift: AmbientIdeal,
}

impl RingIdeal {
    pub fn new(ring: &RingPresentation, gens: &[Polynomial]) -> Result<Self> {
        for g in gens {
            if !same_ring(g.ring(), ring.poly_ring()) {
                return Err(Error::RingMismatch);
            }
        }
        let gens: Vec<Polynomial> = gens.to_vec();
        let mut all = gens.clone();
        all.extend(ring.relation_basis().generators().iter().cloned());
        let lift = AmbientIdeal::new(ring.poly_ring(), all)?;
        Ok(RingIdeal { ring: ring.clone(), gens, lift })
    }

    pub fn ring(&self) -> &RingPresentation {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    /// The ambient ideal I + J.
    pub fn lift(&self) -> &AmbientIdeal {
        &self.lift
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.lift.contains(f)
    }

    pub fn contains_ideal(&self, other: &RingIdeal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    pub fn same_ideal(&self, other: &RingIdeal) -> bool {
        self.contains_ideal(other) && other.contains_ideal(self)
    }

    pub fn is_unit(&self) -> bool {
        self.lift.is_unit()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous())
    }

    pub fn is_monomial(&self) -> bool {
        self.gens.iter().all(|g| g.len() <= 1)
    }

    /// Primary to the homogeneous maximal ideal (R/I has finite length).
    pub fn is_m_primary(&self) -> bool {
        self.lift.krull_dimension() == Some(0)
    }

    pub fn with_generators(&self, extra: &[Polynomial]) -> Result<RingIdeal> {
        let mut gens = self.gens.clone();
        gens.extend(extra.iter().cloned());
        RingIdeal::new(&self.ring, &gens)
    }

    /// (I : f) in R, with generators reduced modulo J and zeros dropped.
    pub fn colon(&self, f: &Polynomial) -> Result<RingIdeal> {
        let c = self.lift.colon(f)?;
        let gens: Vec<Polynomial> = c
            .groebner()
            .generators()
            .iter()
            .map(|g| self.ring.reduce(g))
            .filter(|g| !g.is_zero())
            .collect();
        let mut uniq: Vec<Polynomial> = Vec::new();
        for g in gens {
            let g = g.monic();
            if !uniq.contains(&g) {
                uniq.push(g);
            }
        }
        let order = self.ring.poly_ring().order().clone();
        uniq.sort_by(|a, b| order.cmp(b.leading_monomial().unwrap(), a.leading_monomial().unwrap()));
        RingIdeal::new(&self.ring, &uniq)
    }

    /// Largest generator degree (0 for the zero ideal).
    pub fn max_generator_degree(&self) -> u64 {
        self.gens.iter().filter_map(|g| g.degree()).max().unwrap_or(0)
    }
}

/// A sequence of homogeneous elements checked against the dimension.
#[derive(Clone)]
pub struct ParameterSystem {
    ring: RingPresentation,
    elements: Vec<Polynomial>,
    verified: bool,
    regular: Arc<OnceBox<Vec<bool>>>,
}

impl fmt::Debug for ParameterSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ParameterSystem").field("elements", &self.elements).field("verified", &self.verified).finish()
    }
}

impl ParameterSystem {
    /// Records whether `elements` are part of a system of parameters; never fails
    /// on unverified input (check [`ParameterSystem::is_verified`]).
    pub fn new(ring: &RingPresentation, elements: &[Polynomial]) -> Result<Self> {
        for e in elements {
            if !same_ring(e.ring(), ring.poly_ring()) {
                return Err(Error::RingMismatch);
            }
        }
        let elements: Vec<Polynomial> = elements.iter().map(|e| ring.reduce(e)).collect();
        let verified = ring.is_parameter_system(&elements);
        Ok(ParameterSystem { ring: ring.clone(), elements, verified, regular: Arc::new(OnceBox::new()) })
    }

    /// Like [`ParameterSystem::new`] but requires a verified full system.
    pub fn full(ring: &RingPresentation, elements: &[Polynomial]) -> Result<Self> {
        let s = Self::new(ring, elements)?;
        if !s.verified {
            return Err(Error::ParameterError(String::from("elements do not form a system of parameters")));
        }
        if !s.is_full() {
            return Err(Error::ParameterError(alloc::format!(
                "{} elements given, dimension is {}",
                s.elements.len(),
                ring.dim()
            )));
        }
        Ok(s)
    }

    pub fn ring(&self) -> &RingPresentation {
        &self.ring
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    pub fn is_full(&self) -> bool {
        self.verified && self.elements.len() == self.ring.dim()
    }

    /// For each i: (x_1..x_i) + J : x_{i+1} ⊆ (x_1..x_i) + J.
    pub fn regular_sequence_check(&self) -> &[bool] {
        self.regular.get_or_init(|| {
            let mut out = Vec::with_capacity(self.elements.len());
            for i in 0..self.elements.len() {
                let base = self.ring.ideal(&self.elements[..i]).expect("same ring");
                let ok = match base.lift().colon(&self.elements[i]) {
                    Ok(c) => base.lift().contains_ideal(&c),
                    Err(_) => false,
                };
                out.push(ok);
            }
            Box::new(out)
        })
    }

    /// Verified, full, and a regular sequence.
    pub fn certifies_cohen_macaulay(&self) -> bool {
        self.is_full() && self.regular_sequence_check().iter().all(|&b| b)
    }

    /// Searches subsets of the variables for a full system of parameters.
    pub fn find_among_variables(ring: &RingPresentation) -> Option<ParameterSystem> {
        let n = ring.nvars();
        for set in subsets(n, ring.dim()) {
            let xs: Vec<Polynomial> = set.iter().map(|&i| Polynomial::var(ring.poly_ring(), i)).collect();
            if ring.is_parameter_system(&xs) {
                return ParameterSystem::new(ring, &xs).ok();
            }
        }
        None
    }
}
