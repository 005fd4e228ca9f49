//! Hilbert-Kunz and Hilbert-Samuel functions of m-primary homogeneous ideals.

use alloc::vec::Vec;

use num_rational::Ratio;

use crate::closure::BracketTower;
use crate::error::{Error, Result};
use crate::groebner::GroebnerBasis;
use crate::ideal::AmbientIdeal;
use crate::poly::Polynomial;
use crate::ring::RingIdeal;

pub type Rational = Ratio<i128>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HkRow {
    pub e: u32,
    pub q: u64,
    /// length of R / I^[q]
    pub length: u64,
    /// length / q^d
    pub normalized: Rational,
}

#[derive(Clone, Debug)]
pub struct HkTable {
    pub ideal: Vec<Polynomial>,
    pub dim: usize,
    pub rows: Vec<HkRow>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Trend {
    Increasing,
    Decreasing,
    Constant,
    Mixed,
}

impl Trend {
    pub fn code(self) -> &'static str {
        match self {
            Trend::Increasing => "increasing",
            Trend::Decreasing => "decreasing",
            Trend::Constant => "constant",
            Trend::Mixed => "mixed",
        }
    }
}

fn trend(values: &[Rational]) -> Trend {
    let up = values.windows(2).any(|w| w[1] > w[0]);
    let down = values.windows(2).any(|w| w[1] < w[0]);
    match (up, down) {
        (false, false) => Trend::Constant,
        (true, false) => Trend::Increasing,
        (false, true) => Trend::Decreasing,
        (true, true) => Trend::Mixed,
    }
}

fn abs(r: Rational) -> Rational {
    if r < Rational::from_integer(0) {
        -r
    } else {
        r
    }
}

impl HkTable {
    /// |norm(last) − norm(previous)|
    pub fn last_delta(&self) -> Option<Rational> {
        let n = self.rows.len();
        (n >= 2).then(|| abs(self.rows[n - 1].normalized - self.rows[n - 2].normalized))
    }

    /// The last normalized value widened by the last observed change.
    pub fn multiplicity_interval(&self) -> Option<(Rational, Rational)> {
        let last = self.rows.last()?.normalized;
        let d = self.last_delta().unwrap_or_else(|| Rational::from_integer(0));
        let lo = last - d;
        Some((if lo < Rational::from_integer(0) { Rational::from_integer(0) } else { lo }, last + d))
    }

    pub fn trend(&self) -> Trend {
        trend(&self.rows.iter().map(|r| r.normalized).collect::<Vec<_>>())
    }

    pub fn is_monotone(&self) -> bool {
        self.rows.windows(2).all(|w| w[1].length >= w[0].length)
    }
}

fn require_m_primary(ideal: &RingIdeal) -> Result<()> {
    if !ideal.is_homogeneous() {
        return Err(Error::Precondition(alloc::string::String::from("ideal must be homogeneous")));
    }
    if !ideal.is_m_primary() {
        return Err(Error::NotCofinite);
    }
    Ok(())
}

fn q_pow(q: u64, d: usize) -> Result<i128> {
    (q as i128).checked_pow(d as u32).ok_or(Error::ExponentOverflow { bound: q })
}

/// Lengths of R / I^[p^e] for e in `e_min..=e_max`.
pub fn hk_table(ideal: &RingIdeal, e_min: u32, e_max: u32) -> Result<HkTable> {
    require_m_primary(ideal)?;
    if e_min > e_max {
        return Err(Error::Precondition(alloc::string::String::from("empty e range")));
    }
    let ring = ideal.ring();
    let tower = BracketTower::new(ideal, e_max)?;
    let p = ring.p() as u64;
    let d = ring.dim();
    let mut rows = Vec::new();
    for e in e_min..=e_max {
        let q = p.checked_pow(e).ok_or(Error::ExponentOverflow { bound: p })?;
        let length = quotient_length(tower.level(e)?)?;
        rows.push(HkRow { e, q, length, normalized: Rational::new(length as i128, q_pow(q, d)?) });
    }
    Ok(HkTable { ideal: ideal.generators().to_vec(), dim: d, rows })
}

fn quotient_length(gb: &GroebnerBasis) -> Result<u64> {
    AmbientIdeal::from_groebner(gb.clone()).vspace_dimension()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HsRow {
    pub n: u32,
    /// length of R / I^n
    pub length: u64,
    /// d! · length / n^d
    pub normalized: Rational,
}

#[derive(Clone, Debug)]
pub struct HsTable {
    pub ideal: Vec<Polynomial>,
    pub dim: usize,
    pub rows: Vec<HsRow>,
}

impl HsTable {
    pub fn is_monotone(&self) -> bool {
        self.rows.windows(2).all(|w| w[1].length >= w[0].length)
    }
}

/// Lengths of R / I^n for n = 1..=n_max.
pub fn hs_table(ideal: &RingIdeal, n_max: u32) -> Result<HsTable> {
    require_m_primary(ideal)?;
    let ring = ideal.ring();
    let poly = ring.poly_ring();
    let d = ring.dim();
    let fact: i128 = (1..=d as i128).product();
    let jgens = ring.relation_basis().generators();
    let mut rows = Vec::new();
    // generators of I^n + J, interreduced at every step
    let mut current: Vec<Polynomial> = ideal.lift().groebner().generators().to_vec();
    for n in 1..=n_max {
        if n > 1 {
            let mut next: Vec<Polynomial> = jgens.to_vec();
            for a in &current {
                for b in ideal.generators() {
                    let f = ring.reduce(&a.checked_mul(b)?);
                    if !f.is_zero() {
                        next.push(f);
                    }
                }
            }
            current = GroebnerBasis::compute(&next, poly)?.generators().to_vec();
        }
        let length = quotient_length(&GroebnerBasis::from_basis_unchecked(poly, current.clone()))?;
        let denom = q_pow(n as u64, d)?;
        rows.push(HsRow { n, length, normalized: Rational::new(fact * length as i128, denom) });
    }
    Ok(HsTable { ideal: ideal.generators().to_vec(), dim: d, rows })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompareRow {
    pub e: u32,
    pub q: u64,
    pub smaller: u64,
    pub bigger: u64,
}

impl CompareRow {
    pub fn equal(&self) -> bool {
        self.smaller == self.bigger
    }
}

#[derive(Clone, Debug)]
pub struct HkComparison {
    pub smaller: Vec<Polynomial>,
    pub bigger: Vec<Polynomial>,
    pub rows: Vec<CompareRow>,
}

impl HkComparison {
    pub fn all_equal(&self) -> bool {
        self.rows.iter().all(|r| r.equal())
    }
}

/// Row-by-row Hilbert-Kunz lengths of I ⊆ I'.
pub fn hk_compare(smaller: &RingIdeal, bigger: &RingIdeal, e_min: u32, e_max: u32) -> Result<HkComparison> {
    if smaller.ring() != bigger.ring() {
        return Err(Error::RingMismatch);
    }
    if !bigger.contains_ideal(smaller) {
        return Err(Error::NotNested);
    }
    let a = hk_table(smaller, e_min, e_max)?;
    let b = hk_table(bigger, e_min, e_max)?;
    let rows = a
        .rows
        .iter()
        .zip(&b.rows)
        .map(|(x, y)| CompareRow { e: x.e, q: x.q, smaller: x.length, bigger: y.length })
        .collect();
    Ok(HkComparison { smaller: a.ideal, bigger: b.ideal, rows })
}
