//! Ideals of the ambient polynomial ring.

use alloc::boxed::Box;
use alloc::sync::Arc;
use alloc::vec::Vec;

use once_cell::race::OnceBox;

use crate::error::{Error, Result};
use crate::groebner::GroebnerBasis;
use crate::monomial::Monomial;
use crate::poly::{same_ring, PolyRing, Polynomial};

/// An ideal given by generators, with its Gröbner basis computed on first use.
#[derive(Clone)]
pub struct AmbientIdeal {
    ring: Arc<PolyRing>,
    gens: Vec<Polynomial>,
    gb: Arc<OnceBox<GroebnerBasis>>,
}

impl core::fmt::Debug for AmbientIdeal {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_list().entries(self.gens.iter()).finish()
    }
}

impl AmbientIdeal {
    pub fn new(ring: &Arc<PolyRing>, gens: Vec<Polynomial>) -> Result<Self> {
        if gens.iter().any(|g| !same_ring(g.ring(), ring)) {
            return Err(Error::RingMismatch);
        }
        Ok(AmbientIdeal { ring: ring.clone(), gens, gb: Arc::new(OnceBox::new()) })
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        AmbientIdeal { ring: ring.clone(), gens: Vec::new(), gb: Arc::new(OnceBox::new()) }
    }

    pub fn unit(ring: &Arc<PolyRing>) -> Self {
        Self::new(ring, alloc::vec![Polynomial::one(ring)]).expect("same ring")
    }

    /// Ideal generated by the given variables.
    pub fn variables(ring: &Arc<PolyRing>, vars: &[usize]) -> Self {
        Self::new(ring, vars.iter().map(|&i| Polynomial::var(ring, i)).collect()).expect("same ring")
    }

    /// Uses a known Gröbner basis as both generators and cache.
    pub fn from_groebner(gb: GroebnerBasis) -> Self {
        let ring = gb.ring().clone();
        let gens = gb.generators().to_vec();
        let cell = OnceBox::new();
        let _ = cell.set(Box::new(gb));
        AmbientIdeal { ring, gens, gb: Arc::new(cell) }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    /// The reduced Gröbner basis; computed once, shared by clones.
    pub fn groebner(&self) -> &GroebnerBasis {
        self.gb.get_or_init(|| {
            Box::new(GroebnerBasis::compute(&self.gens, &self.ring).expect("generators share the ring"))
        })
    }

    pub fn is_groebner_cached(&self) -> bool {
        self.gb.get().is_some()
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        if f.is_zero() {
            return true;
        }
        self.groebner().contains(f)
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        self.groebner().normal_form(f)
    }

    pub fn is_unit(&self) -> bool {
        self.groebner().is_unit()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.iter().all(|g| g.is_zero())
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous())
    }

    pub fn is_monomial(&self) -> bool {
        self.gens.iter().all(|g| g.len() <= 1)
    }

    /// Every generator of `other` lies in `self`.
    pub fn contains_ideal(&self, other: &AmbientIdeal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    /// Equality as ideals.
    pub fn same_ideal(&self, other: &AmbientIdeal) -> bool {
        self.contains_ideal(other) && other.contains_ideal(self)
    }

    /// Same ideal re-expressed over `ring` (same variables, any order).
    pub fn to_ring(&self, ring: &Arc<PolyRing>) -> AmbientIdeal {
        AmbientIdeal::new(ring, self.gens.iter().map(|g| g.to_ring(ring)).collect()).expect("converted")
    }

    pub fn sum(&self, other: &AmbientIdeal) -> Result<AmbientIdeal> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        AmbientIdeal::new(&self.ring, gens)
    }

    pub fn with_generators(&self, extra: &[Polynomial]) -> Result<AmbientIdeal> {
        let mut gens = self.gens.clone();
        gens.extend(extra.iter().cloned());
        AmbientIdeal::new(&self.ring, gens)
    }

    /// Product ideal, interreduced to its reduced Gröbner basis.
    pub fn product(&self, other: &AmbientIdeal) -> Result<AmbientIdeal> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                let p = a.mul_unchecked(b);
                if !p.is_zero() && !gens.contains(&p) {
                    gens.push(p);
                }
            }
        }
        let gb = GroebnerBasis::compute(&gens, &self.ring)?;
        Ok(AmbientIdeal::from_groebner(gb))
    }

    /// n-th power by iterated products (n = 0 gives the unit ideal).
    pub fn power(&self, n: u32) -> Result<AmbientIdeal> {
        let mut acc = AmbientIdeal::unit(&self.ring);
        for _ in 0..n {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    /// I ∩ J as the t-free part of t·I + (1−t)·J.
    pub fn intersection(&self, other: &AmbientIdeal) -> Result<AmbientIdeal> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        if self.is_zero() || other.is_zero() {
            return Ok(AmbientIdeal::zero(&self.ring));
        }
        let ext = self.ring.with_elimination_var();
        let n = self.ring.nvars();
        let t = Polynomial::var(&ext, n);
        let one_minus_t = &Polynomial::one(&ext) - &t;
        let mut gens = Vec::new();
        for g in &self.gens {
            gens.push(g.lift_with_var(&ext, 1));
        }
        for g in &other.gens {
            gens.push(&g.lift_with_var(&ext, 0) * &one_minus_t);
        }
        let gb = GroebnerBasis::compute(&gens, &ext)?;
        let out: Vec<Polynomial> = gb
            .generators()
            .iter()
            .filter(|g| g.terms().iter().all(|(m, _)| m.exps()[n] == 0))
            .map(|g| g.drop_last_var(&self.ring))
            .collect();
        // the t-free elements of a block-order basis form a reduced basis
        Ok(AmbientIdeal::from_groebner(GroebnerBasis::compute(&out, &self.ring)?))
    }

    /// {g : g·f ∈ I}.
    pub fn colon(&self, f: &Polynomial) -> Result<AmbientIdeal> {
        if !same_ring(&self.ring, f.ring()) {
            return Err(Error::RingMismatch);
        }
        if f.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.contains(f) {
            return Ok(AmbientIdeal::unit(&self.ring));
        }
        let principal = AmbientIdeal::new(&self.ring, alloc::vec![f.clone()])?;
        let inter = self.intersection(&principal)?;
        let quotients = inter
            .generators()
            .iter()
            .map(|g| g.div_exact(f).expect("element of (f) is divisible by f"))
            .collect::<Vec<_>>();
        Ok(AmbientIdeal::from_groebner(GroebnerBasis::compute(&quotients, &self.ring)?))
    }

    /// I : J as the intersection of the colons by J's generators.
    pub fn colon_ideal(&self, other: &AmbientIdeal) -> Result<AmbientIdeal> {
        let mut acc = AmbientIdeal::unit(&self.ring);
        for g in other.generators() {
            if g.is_zero() {
                continue;
            }
            let c = self.colon(g)?;
            acc = if acc.is_unit() { c } else { acc.intersection(&c)? };
        }
        Ok(acc)
    }

    /// Krull dimension of the quotient; `None` for the unit ideal.
    pub fn krull_dimension(&self) -> Option<usize> {
        let gb = self.groebner();
        if gb.is_unit() {
            return None;
        }
        let n = self.ring.nvars();
        let supports: Vec<u64> = gb
            .leading_monomials()
            .iter()
            .map(|m| m.exps().iter().enumerate().filter(|(_, &e)| e > 0).fold(0u64, |a, (i, _)| a | 1 << i))
            .collect();
        assert!(n < 64, "too many variables for subset enumeration");
        let mut best = 0usize;
        for set in 0u64..(1u64 << n) {
            let size = set.count_ones() as usize;
            if size <= best {
                continue;
            }
            // independent: no leading monomial lives entirely in the set
            if supports.iter().all(|&s| s & !set != 0) {
                best = size;
            }
        }
        Some(best)
    }

    /// Dimension of the quotient as a vector space (number of standard monomials).
    pub fn vspace_dimension(&self) -> Result<u64> {
        let bounds = self.staircase_bounds()?;
        let lms = self.groebner().leading_monomials();
        let mut count = 0u64;
        let mut exps = alloc::vec![0u32; self.ring.nvars()];
        count_standard(&lms, &bounds, 0, &mut exps, &mut count, self.ring.weights());
        Ok(count)
    }

    /// For a zero-dimensional ideal, exponents below which every standard
    /// monomial lies.
    fn staircase_bounds(&self) -> Result<Vec<u32>> {
        let gb = self.groebner();
        let n = self.ring.nvars();
        if gb.is_unit() {
            return Ok(alloc::vec![0; n]);
        }
        let mut bounds = alloc::vec![u32::MAX; n];
        for m in gb.leading_monomials() {
            if m.support_len() == 1 {
                let (i, &e) = m.exps().iter().enumerate().find(|(_, &e)| e > 0).unwrap();
                bounds[i] = bounds[i].min(e);
            }
        }
        if bounds.contains(&u32::MAX) {
            return Err(Error::NotZeroDimensional);
        }
        Ok(bounds)
    }

    /// Standard monomials of the given weighted degree, descending in the
    /// ring's order: a basis of that graded piece of the quotient.
    pub fn degree_slice_basis(&self, degree: u64) -> Vec<Monomial> {
        let gb = self.groebner();
        let mut out: Vec<Monomial> = monomials_of_degree(&self.ring, degree)
            .into_iter()
            .filter(|m| gb.is_standard(m))
            .collect();
        let order = self.ring.order();
        out.sort_by(|a, b| order.cmp(b, a));
        out
    }

    /// Numerator N(t) of the Hilbert series N(t) / Π(1 − t^{w_i}) of the
    /// quotient (coefficients indexed by degree).
    pub fn hilbert_numerator(&self) -> Vec<i64> {
        let gb = self.groebner();
        if gb.is_unit() {
            return Vec::new();
        }
        let lms: Vec<Vec<u32>> = gb.leading_monomials().iter().map(|m| m.exps().to_vec()).collect();
        let mut num = hilbert_num(minimalize(lms), self.ring.weights());
        while num.last() == Some(&0) {
            num.pop();
        }
        num
    }
}

fn count_standard(
    lms: &[Monomial],
    bounds: &[u32],
    var: usize,
    exps: &mut Vec<u32>,
    count: &mut u64,
    weights: &[u32],
) {
    if var == exps.len() {
        *count += 1;
        return;
    }
    for e in 0..bounds[var] {
        exps[var] = e;
        // prune: with later exponents zero, a divisible prefix stays divisible
        let probe = Monomial::new(exps, weights);
        let trailing_zero = exps[var + 1..].iter().all(|&x| x == 0);
        if trailing_zero && lms.iter().any(|l| l.divides(&probe)) {
            break;
        }
        count_standard(lms, bounds, var + 1, exps, count, weights);
    }
    exps[var] = 0;
}

/// All monomials of the given weighted degree.
pub fn monomials_of_degree(ring: &Arc<PolyRing>, degree: u64) -> Vec<Monomial> {
    let w = ring.weights();
    let n = w.len();
    let mut out = Vec::new();
    let mut exps = alloc::vec![0u32; n];
    fn rec(w: &[u32], i: usize, left: u64, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == w.len() {
            if left.is_multiple_of(w[i] as u64) {
                exps[i] = (left / w[i] as u64) as u32;
                out.push(Monomial::new(exps, w));
                exps[i] = 0;
            }
            return;
        }
        let mut e = 0u64;
        while e * w[i] as u64 <= left {
            exps[i] = e as u32;
            rec(w, i + 1, left - e * w[i] as u64, exps, out);
            e += 1;
        }
        exps[i] = 0;
    }
    if n == 0 {
        if degree == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    rec(w, 0, degree, &mut exps, &mut out);
    out
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn minimalize(mut gens: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    gens.sort();
    gens.dedup();
    let keep: Vec<bool> = (0..gens.len())
        .map(|i| !(0..gens.len()).any(|j| j != i && divides(&gens[j], &gens[i])))
        .collect();
    gens.into_iter().zip(keep).filter(|(_, k)| *k).map(|(g, _)| g).collect()
}

fn poly_sub_shifted(a: &mut Vec<i64>, b: &[i64], shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (i, &c) in b.iter().enumerate() {
        a[i + shift] -= c;
    }
}

/// Hilbert-series numerator of k[x]/(monomials) by the standard recursion
/// N(M + (m)) = N(M) − t^{deg m} N(M : m).
fn hilbert_num(gens: Vec<Vec<u32>>, weights: &[u32]) -> Vec<i64> {
    if gens.is_empty() {
        return alloc::vec![1];
    }
    let deg = |m: &[u32]| m.iter().zip(weights).map(|(&e, &w)| e as usize * w as usize).sum::<usize>();
    // products of pairwise coprime generators: closed form
    let coprime = gens.iter().enumerate().all(|(i, a)| {
        gens[i + 1..].iter().all(|b| a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0))
    });
    if coprime {
        let mut acc = alloc::vec![1i64];
        for g in &gens {
            let d = deg(g);
            let mut next = acc.clone();
            poly_sub_shifted(&mut next, &acc, d);
            acc = next;
        }
        return acc;
    }
    let mut rest = gens;
    let last = rest.pop().unwrap();
    let colon: Vec<Vec<u32>> = rest
        .iter()
        .map(|g| g.iter().zip(&last).map(|(&a, &b)| a.saturating_sub(b)).collect())
        .collect();
    let mut out = hilbert_num(rest, weights);
    let sub = hilbert_num(minimalize(colon), weights);
    poly_sub_shifted(&mut out, &sub, deg(&last));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeChar;
    use crate::monomial::{MonomialOrder, OrderKind};
    use alloc::string::ToString;

    fn ring(p: u64, names: &[&str]) -> Arc<PolyRing> {
        PolyRing::standard(PrimeChar::new(p).unwrap(), names)
    }

    fn poly(r: &Arc<PolyRing>, terms: &[(&[u32], i64)]) -> Polynomial {
        let t: Vec<(Vec<u32>, i64)> = terms.iter().map(|(e, c)| (e.to_vec(), *c)).collect();
        Polynomial::from_int_terms(r, &t)
    }

    fn ideal(r: &Arc<PolyRing>, gens: Vec<Polynomial>) -> AmbientIdeal {
        AmbientIdeal::new(r, gens).unwrap()
    }

    fn fermat(r: &Arc<PolyRing>) -> Polynomial {
        poly(r, &[(&[3, 0, 0], 1), (&[0, 3, 0], 1), (&[0, 0, 3], -1)])
    }

    #[test]
    fn membership_examples() {
        let r = ring(7, &["x", "y"]).with_order(MonomialOrder::new(OrderKind::Lex, 2));
        let i = ideal(&r, alloc::vec![poly(&r, &[(&[2, 0], 1), (&[0, 2], 1)]), poly(&r, &[(&[1, 1], 1)])]);
        assert!(i.contains(&poly(&r, &[(&[3, 0], 1)])));
        assert!(i.contains(&Polynomial::zero(&r)));
        let r3 = ring(5, &["x", "y", "z"]);
        let xy = AmbientIdeal::variables(&r3, &[0, 1]);
        assert!(!xy.contains(&Polynomial::var(&r3, 2)));
    }

    #[test]
    fn colon_examples() {
        let r = ring(5, &["x", "y"]);
        let (x, y) = (Polynomial::var(&r, 0), Polynomial::var(&r, 1));
        let i = ideal(&r, alloc::vec![poly(&r, &[(&[2, 1], 1)])]);
        assert!(i.colon(&y).unwrap().same_ideal(&ideal(&r, alloc::vec![poly(&r, &[(&[2, 0], 1)])])));
        let j = ideal(&r, alloc::vec![poly(&r, &[(&[2, 0], 1)]), poly(&r, &[(&[1, 1], 1)])]);
        assert!(j.colon(&x).unwrap().same_ideal(&AmbientIdeal::variables(&r, &[0, 1])));
        let k = ideal(&r, alloc::vec![poly(&r, &[(&[4, 0], 1)]), poly(&r, &[(&[0, 4], 1)])]);
        let c = k.colon(&poly(&r, &[(&[2, 2], 1)])).unwrap();
        let expect = ideal(&r, alloc::vec![poly(&r, &[(&[2, 0], 1)]), poly(&r, &[(&[0, 2], 1)])]);
        assert!(c.same_ideal(&expect));
        assert_eq!(k.colon(&Polynomial::zero(&r)).unwrap_err(), Error::DivisionByZero);
        assert!(k.colon(&poly(&r, &[(&[5, 0], 1)])).unwrap().is_unit());
        let ij = ideal(&r, alloc::vec![x.clone()]).colon_ideal(&AmbientIdeal::variables(&r, &[0, 1])).unwrap();
        assert!(ij.same_ideal(&ideal(&r, alloc::vec![x])));
    }

    #[test]
    fn intersection_examples() {
        let r = ring(7, &["x", "y"]);
        let (x, y) = (Polynomial::var(&r, 0), Polynomial::var(&r, 1));
        let i = ideal(&r, alloc::vec![x.clone()]).intersection(&ideal(&r, alloc::vec![y.clone()])).unwrap();
        assert_eq!(i.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>(), ["x*y"]);
        let x2 = &x * &x;
        let n = ideal(&r, alloc::vec![x2.clone()]).intersection(&ideal(&r, alloc::vec![x.clone()])).unwrap();
        assert!(n.same_ideal(&ideal(&r, alloc::vec![x2])));
        let a = &x + &y;
        let b = &x - &y;
        let m = ideal(&r, alloc::vec![a.clone()]).intersection(&ideal(&r, alloc::vec![b.clone()])).unwrap();
        assert!(m.same_ideal(&ideal(&r, alloc::vec![&a * &b])));
    }

    #[test]
    fn dimensions() {
        let r = ring(5, &["x", "y", "z"]);
        assert_eq!(AmbientIdeal::zero(&r).krull_dimension(), Some(3));
        assert_eq!(ideal(&r, alloc::vec![fermat(&r)]).krull_dimension(), Some(2));
        assert_eq!(AmbientIdeal::unit(&r).krull_dimension(), None);
        let r2 = ring(5, &["x", "y"]);
        assert_eq!(AmbientIdeal::variables(&r2, &[0, 1]).krull_dimension(), Some(0));
    }

    #[test]
    fn vector_space_dimensions() {
        let r = ring(5, &["x", "y"]);
        let i = ideal(&r, alloc::vec![poly(&r, &[(&[2, 0], 1)]), poly(&r, &[(&[0, 3], 1)])]);
        assert_eq!(i.vspace_dimension().unwrap(), 6);
        let total: usize = (0..6).map(|d| i.degree_slice_basis(d).len()).sum();
        assert_eq!(total, 6);
        assert_eq!(ideal(&r, alloc::vec![Polynomial::var(&r, 0)]).vspace_dimension(), Err(Error::NotZeroDimensional));
        let r3 = ring(5, &["x", "y", "z"]);
        let f = ideal(&r3, alloc::vec![fermat(&r3)]);
        let s: Vec<_> = f.degree_slice_basis(1).iter().map(|m| m.exps().to_vec()).collect();
        assert_eq!(s, [[1, 0, 0], [0, 1, 0], [0, 0, 1]]);
        // x^3 + y^3 - z^3 already lies in (x^3, y^3, z^3): the quotient has length 27
        let cube = ideal(
            &r3,
            alloc::vec![
                poly(&r3, &[(&[3, 0, 0], 1)]),
                poly(&r3, &[(&[0, 3, 0], 1)]),
                poly(&r3, &[(&[0, 0, 3], 1)]),
                fermat(&r3),
            ],
        );
        assert_eq!(cube.vspace_dimension().unwrap(), 27);
    }

    #[test]
    fn hilbert_numerators() {
        let r = ring(5, &["x", "y", "z"]);
        let f = ideal(&r, alloc::vec![fermat(&r)]);
        assert_eq!(f.hilbert_numerator(), [1, 0, 0, -1]);
        let w = PolyRing::new(
            PrimeChar::new(5).unwrap(),
            alloc::vec!["a".into(), "b".into()],
            alloc::vec![2, 3],
            MonomialOrder::grevlex(2),
        );
        let cusp = ideal(&w, alloc::vec![poly(&w, &[(&[0, 2], 1), (&[3, 0], -1)])]);
        assert_eq!(cusp.hilbert_numerator(), [1, 0, 0, 0, 0, 0, -1]);
        assert_eq!(cusp.krull_dimension(), Some(1));
        assert_eq!(AmbientIdeal::zero(&r).hilbert_numerator(), [1]);
    }

    #[test]
    fn powers() {
        let r = ring(5, &["x", "y"]);
        let m = AmbientIdeal::variables(&r, &[0, 1]);
        assert_eq!(m.power(3).unwrap().vspace_dimension().unwrap(), 6);
        assert!(m.power(0).unwrap().is_unit());
    }
}
