//! Buchberger's algorithm with the sugar strategy and the Gebauer-Möller
//! criteria; normal forms by multivariate division.

use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::{same_ring, PolyRing, Polynomial, Term};

#[inline]
fn support_mask(m: &Monomial) -> u64 {
    let mut mask = 0u64;
    for (i, &e) in m.exps().iter().enumerate() {
        if e > 0 {
            mask |= 1 << (i % 64);
        }
    }
    mask
}

/// Leading data of a reducer list, for quick divisibility rejection.
struct Reducers {
    polys: Vec<Polynomial>,
    masks: Vec<u64>,
    active: Vec<bool>,
}

impl Reducers {
    fn new() -> Self {
        Reducers { polys: Vec::new(), masks: Vec::new(), active: Vec::new() }
    }

    fn push(&mut self, f: Polynomial) -> usize {
        self.masks.push(support_mask(f.leading_monomial().expect("nonzero")));
        self.polys.push(f);
        self.active.push(true);
        self.polys.len() - 1
    }

    #[inline]
    fn find(&self, m: &Monomial, mask: u64) -> Option<usize> {
        (0..self.polys.len()).find(|&i| {
            self.active[i]
                && self.masks[i] & !mask == 0
                && self.polys[i].leading_monomial().expect("nonzero").divides(m)
        })
    }

    /// Full reduction of `f`; reducers must be monic. Returns the remainder
    /// and the number of reduction steps.
    fn reduce(&self, ring: &Arc<PolyRing>, f: &Polynomial) -> (Polynomial, u64) {
        let order = ring.order();
        let ch = ring.ch();
        let mut steps = 0u64;
        let mut map: BTreeMap<_, (Monomial, u32)> =
            f.terms().iter().map(|(m, c)| (order.key(m), (m.clone(), *c))).collect();
        let mut rem: Vec<Term> = Vec::new();
        while let Some((_, (m, c))) = map.pop_last() {
            match self.find(&m, support_mask(&m)) {
                Some(i) => {
                    steps += 1;
                    let g = &self.polys[i];
                    let q = g.leading_monomial().expect("nonzero").quotient_of(&m);
                    let factor = ch.neg(c);
                    for (t, a) in &g.terms()[1..] {
                        let tm = t.mul(&q);
                        let v = ch.mul(*a, factor);
                        match map.entry(order.key(&tm)) {
                            Entry::Occupied(mut e) => {
                                let s = ch.add(e.get().1, v);
                                if s == 0 {
                                    e.remove();
                                } else {
                                    e.get_mut().1 = s;
                                }
                            }
                            Entry::Vacant(e) => {
                                e.insert((tm, v));
                            }
                        }
                    }
                }
                None => rem.push((m, c)),
            }
        }
        (Polynomial::from_sorted(ring, rem), steps)
    }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u64,
}

/// A Gröbner basis with respect to the order of its ring.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Arc<PolyRing>,
    gens: Vec<Polynomial>,
    masks: Vec<u64>,
    reduced: bool,
}

impl PartialEq for GroebnerBasis {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.gens == other.gens
    }
}

/// Computes the reduced Gröbner basis of the ideal generated by `gens` under
/// the order of `ring`.
pub fn buchberger(gens: &[Polynomial], ring: &Arc<PolyRing>) -> Result<GroebnerBasis> {
    GroebnerBasis::compute(gens, ring)
}

impl GroebnerBasis {
    pub fn compute(gens: &[Polynomial], ring: &Arc<PolyRing>) -> Result<GroebnerBasis> {
        for g in gens {
            if !same_ring(g.ring(), ring) {
                return Err(Error::RingMismatch);
            }
        }
        let input: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.monic()).collect();
        if input.iter().any(|g| g.is_constant()) {
            return Ok(Self::unit(ring));
        }
        let mut red = Reducers::new();
        let mut sugar: Vec<u64> = Vec::new();
        let mut pairs: Vec<Pair> = Vec::new();
        for g in input {
            // reduce each input against what is already there
            let (h, _) = red.reduce(ring, &g);
            if h.is_zero() {
                continue;
            }
            if h.is_constant() {
                return Ok(Self::unit(ring));
            }
            let s = g.degree().unwrap_or(0);
            Self::update(ring, &mut red, &mut sugar, &mut pairs, h.monic(), s);
        }
        while let Some(best) = Self::select(ring, &pairs) {
            let pair = pairs.swap_remove(best);
            let sp = Self::spoly(&red.polys[pair.i], &red.polys[pair.j], &pair.lcm);
            let (h, _) = red.reduce(ring, &sp);
            if h.is_zero() {
                continue;
            }
            if h.is_constant() {
                return Ok(Self::unit(ring));
            }
            Self::update(ring, &mut red, &mut sugar, &mut pairs, h.monic(), pair.sugar);
        }
        Ok(Self::interreduce(ring, red))
    }

    fn unit(ring: &Arc<PolyRing>) -> GroebnerBasis {
        let one = Polynomial::one(ring);
        GroebnerBasis { ring: ring.clone(), masks: alloc::vec![0], gens: alloc::vec![one], reduced: true }
    }

    /// Pair with the smallest sugar, then smallest lcm, then lowest indices.
    fn select(ring: &Arc<PolyRing>, pairs: &[Pair]) -> Option<usize> {
        let order = ring.order();
        let mut best: Option<usize> = None;
        for (k, p) in pairs.iter().enumerate() {
            best = match best {
                None => Some(k),
                Some(b) => {
                    let q = &pairs[b];
                    let c = p
                        .sugar
                        .cmp(&q.sugar)
                        .then_with(|| order.cmp(&p.lcm, &q.lcm))
                        .then_with(|| (p.j, p.i).cmp(&(q.j, q.i)));
                    if c == Ordering::Less {
                        Some(k)
                    } else {
                        Some(b)
                    }
                }
            };
        }
        best
    }

    fn spoly(f: &Polynomial, g: &Polynomial, lcm: &Monomial) -> Polynomial {
        let ring = f.ring();
        let qf = f.leading_monomial().expect("nonzero").quotient_of(lcm);
        let qg = g.leading_monomial().expect("nonzero").quotient_of(lcm);
        let a = f.mul_term(&qf, 1);
        let b = g.mul_term(&qg, 1);
        a.add_scaled(&b, ring.ch().neg(1))
    }

    /// Gebauer-Möller installation of a new basis element.
    fn update(
        ring: &Arc<PolyRing>,
        red: &mut Reducers,
        sugar: &mut Vec<u64>,
        pairs: &mut Vec<Pair>,
        h: Polynomial,
        h_sugar: u64,
    ) {
        let weights = ring.weights();
        let lm_h = h.leading_monomial().expect("nonzero").clone();
        let k = red.push(h);
        sugar.push(h_sugar);

        let lm = |i: usize| red.polys[i].leading_monomial().expect("nonzero");
        let pair_sugar = |i: usize, l: &Monomial| {
            let a = sugar[i] + l.degree() - lm(i).degree();
            let b = h_sugar + l.degree() - lm_h.degree();
            a.max(b)
        };

        let cands: Vec<(usize, Monomial)> = (0..k)
            .filter(|&i| red.active[i])
            .map(|i| (i, lm(i).lcm(&lm_h, weights)))
            .collect();
        // keep a candidate if coprime, or if no other candidate's lcm divides it
        // (ties broken towards the earlier index)
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        for (idx, (i, l)) in cands.iter().enumerate() {
            let coprime = lm(*i).is_coprime(&lm_h);
            let dominated = cands.iter().enumerate().any(|(jdx, (_, l2))| {
                jdx != idx && l2.divides(l) && (l2 != l || jdx < idx)
            });
            if coprime || !dominated {
                kept.push((*i, l.clone()));
            }
        }
        // among equal lcms keep one; drop coprime pairs
        let mut fresh: Vec<Pair> = Vec::new();
        for (i, l) in kept {
            if lm(i).is_coprime(&lm_h) {
                continue;
            }
            if fresh.iter().any(|p| p.lcm == l) {
                continue;
            }
            let s = pair_sugar(i, &l);
            fresh.push(Pair { i, j: k, lcm: l, sugar: s });
        }
        // old pairs made redundant by h
        pairs.retain(|p| {
            if !lm_h.divides(&p.lcm) {
                return true;
            }
            let l1 = lm(p.i).lcm(&lm_h, weights);
            let l2 = lm(p.j).lcm(&lm_h, weights);
            l1 == p.lcm || l2 == p.lcm
        });
        pairs.extend(fresh);
        for i in 0..k {
            if red.active[i] && lm_h.divides(lm(i)) {
                red.active[i] = false;
            }
        }
    }

    fn interreduce(ring: &Arc<PolyRing>, red: Reducers) -> GroebnerBasis {
        let order = ring.order();
        let mut lead: Vec<Polynomial> =
            red.polys.into_iter().zip(red.active).filter(|(_, a)| *a).map(|(p, _)| p).collect();
        // minimal basis: drop elements whose leading monomial is divisible by another's
        let mut keep = alloc::vec![true; lead.len()];
        for i in 0..lead.len() {
            for j in 0..lead.len() {
                if i != j && keep[j] {
                    let (li, lj) = (lead[i].leading_monomial().unwrap(), lead[j].leading_monomial().unwrap());
                    if lj.divides(li) && (lj != li || j < i) {
                        keep[i] = false;
                        break;
                    }
                }
            }
        }
        let mut k = keep.iter();
        lead.retain(|_| *k.next().unwrap());
        lead.sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
        let mut out: Vec<Polynomial> = Vec::with_capacity(lead.len());
        for i in 0..lead.len() {
            let mut others = Reducers::new();
            for (j, g) in lead.iter().enumerate() {
                if j != i {
                    others.push(g.clone());
                }
            }
            let f = &lead[i];
            let head = Polynomial::from_sorted(ring, alloc::vec![f.terms()[0].clone()]);
            let tail = Polynomial::from_sorted(ring, f.terms()[1..].to_vec());
            let (t, _) = others.reduce(ring, &tail);
            out.push(head.add_scaled(&t, 1));
        }
        let masks = out.iter().map(|g| support_mask(g.leading_monomial().unwrap())).collect();
        GroebnerBasis { ring: ring.clone(), gens: out, masks, reduced: true }
    }

    /// Wraps generators already known to form a Gröbner basis (for example,
    /// pairwise coprime leading monomials). They are made monic; no check is
    /// performed in release builds.
    pub fn from_basis_unchecked(ring: &Arc<PolyRing>, gens: Vec<Polynomial>) -> GroebnerBasis {
        let gens: Vec<Polynomial> = gens.into_iter().filter(|g| !g.is_zero()).map(|g| g.monic()).collect();
        let masks = gens.iter().map(|g| support_mask(g.leading_monomial().unwrap())).collect();
        GroebnerBasis { ring: ring.clone(), gens, masks, reduced: false }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    /// True when the basis is {1}.
    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_constant()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.gens.iter().map(|g| g.leading_monomial().unwrap().clone()).collect()
    }

    #[inline]
    fn reducer_for(&self, m: &Monomial) -> Option<usize> {
        let mask = support_mask(m);
        (0..self.gens.len()).find(|&i| {
            self.masks[i] & !mask == 0 && self.gens[i].leading_monomial().unwrap().divides(m)
        })
    }

    /// True when no leading monomial divides `m`.
    pub fn is_standard(&self, m: &Monomial) -> bool {
        self.reducer_for(m).is_none()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        self.normal_form_traced(f).0
    }

    /// Normal form together with the number of reduction steps taken.
    pub fn normal_form_traced(&self, f: &Polynomial) -> (Polynomial, u64) {
        debug_assert!(same_ring(f.ring(), &self.ring));
        if f.is_zero() || self.gens.is_empty() {
            return (f.clone(), 0);
        }
        let ring = &self.ring;
        let order = ring.order();
        let ch = ring.ch();
        let mut steps = 0u64;
        let mut map: BTreeMap<_, (Monomial, u32)> =
            f.terms().iter().map(|(m, c)| (order.key(m), (m.clone(), *c))).collect();
        let mut rem: Vec<Term> = Vec::new();
        while let Some((_, (m, c))) = map.pop_last() {
            let Some(i) = self.reducer_for(&m) else {
                rem.push((m, c));
                continue;
            };
            steps += 1;
            let g = &self.gens[i];
            let q = g.leading_monomial().unwrap().quotient_of(&m);
            let factor = ch.neg(c);
            for (t, a) in &g.terms()[1..] {
                let tm = t.mul(&q);
                let v = ch.mul(*a, factor);
                match map.entry(order.key(&tm)) {
                    Entry::Occupied(mut e) => {
                        let s = ch.add(e.get().1, v);
                        if s == 0 {
                            e.remove();
                        } else {
                            e.get_mut().1 = s;
                        }
                    }
                    Entry::Vacant(e) => {
                        e.insert((tm, v));
                    }
                }
            }
        }
        (Polynomial::from_sorted(ring, rem), steps)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Every S-polynomial reduces to zero (Buchberger's criterion).
    pub fn verify(&self) -> bool {
        let w = self.ring.weights();
        for i in 0..self.gens.len() {
            for j in i + 1..self.gens.len() {
                let (a, b) = (&self.gens[i], &self.gens[j]);
                let l = a.leading_monomial().unwrap().lcm(b.leading_monomial().unwrap(), w);
                if !self.contains(&Self::spoly(a, b, &l)) {
                    return false;
                }
            }
        }
        true
    }
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

    fn lex(p: u64, names: &[&str]) -> Arc<PolyRing> {
        ring(p, names).with_order(MonomialOrder::new(OrderKind::Lex, names.len()))
    }

    fn poly(r: &Arc<PolyRing>, terms: &[(&[u32], i64)]) -> Polynomial {
        let t: Vec<(Vec<u32>, i64)> = terms.iter().map(|(e, c)| (e.to_vec(), *c)).collect();
        Polynomial::from_int_terms(r, &t)
    }

    #[test]
    fn already_reduced_input() {
        let r = ring(5, &["x", "y"]);
        let gens = [poly(&r, &[(&[2, 0], 1)]), poly(&r, &[(&[1, 1], 1)])];
        let gb = buchberger(&gens, &r).unwrap();
        let s: Vec<_> = gb.generators().iter().map(|g| g.to_string()).collect();
        assert_eq!(s, ["x*y", "x^2"]);
        assert!(gb.verify());
    }

    #[test]
    fn one_buchberger_step_in_lex() {
        let r = lex(7, &["x", "y"]);
        let gens = [poly(&r, &[(&[2, 0], 1), (&[0, 2], 1)]), poly(&r, &[(&[1, 1], 1)])];
        let gb = buchberger(&gens, &r).unwrap();
        let s: Vec<_> = gb.generators().iter().map(|g| g.to_string()).collect();
        assert_eq!(s, ["y^3", "x*y", "x^2+y^2"]);
        let x3 = poly(&r, &[(&[3, 0], 1)]);
        assert!(gb.normal_form(&x3).is_zero());
        for g in gb.generators() {
            assert!(gb.normal_form(g).is_zero());
        }
    }

    #[test]
    fn degenerate_inputs() {
        let r = ring(5, &["x", "y"]);
        let gb = buchberger(&[Polynomial::zero(&r)], &r).unwrap();
        assert!(gb.is_empty());
        let y = Polynomial::var(&r, 1);
        assert_eq!(gb.normal_form(&y), y);
        let unit = buchberger(&[Polynomial::constant(&r, 3), y.clone()], &r).unwrap();
        assert!(unit.is_unit());
        let gbx = buchberger(&[Polynomial::var(&r, 0)], &r).unwrap();
        assert_eq!(gbx.normal_form(&y), y);
    }

    #[test]
    fn mismatched_ring_rejected() {
        let a = ring(5, &["x", "y"]);
        let b = ring(7, &["x", "y"]);
        assert_eq!(buchberger(&[Polynomial::var(&b, 0)], &a).unwrap_err(), Error::RingMismatch);
    }

    #[test]
    fn cyclic_three_is_verified() {
        let r = ring(32003, &["a", "b", "c"]);
        let gens = [
            poly(&r, &[(&[1, 0, 0], 1), (&[0, 1, 0], 1), (&[0, 0, 1], 1)]),
            poly(&r, &[(&[1, 1, 0], 1), (&[0, 1, 1], 1), (&[1, 0, 1], 1)]),
            poly(&r, &[(&[1, 1, 1], 1), (&[0, 0, 0], -1)]),
        ];
        let gb = buchberger(&gens, &r).unwrap();
        assert!(gb.verify());
        for g in &gens {
            assert!(gb.contains(g));
        }
        // the quotient has dimension 6
        let lms = gb.leading_monomials();
        let mut count = 0;
        for a in 0..7u32 {
            for b in 0..7u32 {
                for c in 0..7u32 {
                    let m = r.monomial(&[a, b, c]);
                    if lms.iter().all(|l| !l.divides(&m)) {
                        count += 1;
                    }
                }
            }
        }
        assert_eq!(count, 6);
    }
}
