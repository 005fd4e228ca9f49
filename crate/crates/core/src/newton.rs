//! Newton polyhedra of monomial ideals and their integral closures.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::ideal::AmbientIdeal;
use crate::poly::Polynomial;

/// Largest number of variables handled by the exact facet enumeration.
pub const MAX_NEWTON_VARS: usize = 4;

/// conv(points) + the non-negative orthant, as facet inequalities w·v ≥ b.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonRegion {
    nvars: usize,
    points: Vec<Vec<u32>>,
    facets: Vec<(Vec<i64>, i64)>,
}

impl NewtonRegion {
    pub fn new(points: &[Vec<u32>], nvars: usize) -> Result<Self> {
        if nvars > MAX_NEWTON_VARS {
            return Err(Error::Precondition(alloc::format!(
                "Newton polyhedra are computed for at most {MAX_NEWTON_VARS} variables"
            )));
        }
        let points = minimal_points(points.to_vec());
        let facets = if points.is_empty() { Vec::new() } else { facets(&points, nvars) };
        Ok(NewtonRegion { nvars, points, facets })
    }

    pub fn points(&self) -> &[Vec<u32>] {
        &self.points
    }

    pub fn facets(&self) -> &[(Vec<i64>, i64)] {
        &self.facets
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        if self.points.is_empty() {
            return false;
        }
        self.facets.iter().all(|(w, b)| dot(w, v) >= *b as i128)
    }

    /// Minimal exponent vectors of the lattice points in the region.
    pub fn closure_generators(&self) -> Vec<Vec<u32>> {
        if self.points.is_empty() {
            return Vec::new();
        }
        let bounds: Vec<u32> =
            (0..self.nvars).map(|j| self.points.iter().map(|p| p[j]).max().unwrap_or(0)).collect();
        let mut found = Vec::new();
        let mut v = alloc::vec![0u32; self.nvars];
        loop {
            if self.contains(&v) {
                found.push(v.clone());
            }
            // odometer over the box
            let mut j = 0;
            loop {
                if j == self.nvars {
                    return minimal_points(found);
                }
                if v[j] < bounds[j] {
                    v[j] += 1;
                    break;
                }
                v[j] = 0;
                j += 1;
            }
        }
    }
}

fn dot(w: &[i64], v: &[u32]) -> i128 {
    w.iter().zip(v).map(|(&a, &b)| a as i128 * b as i128).sum()
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Sorted, deduplicated, minimal under componentwise order.
pub fn minimal_points(mut pts: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    pts.sort();
    pts.dedup();
    let keep: Vec<bool> =
        (0..pts.len()).map(|i| !(0..pts.len()).any(|j| j != i && divides(&pts[j], &pts[i]))).collect();
    pts.into_iter().zip(keep).filter(|(_, k)| *k).map(|(p, _)| p).collect()
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0];
    }
    let mut acc = 0i128;
    for c in 0..n {
        if m[0][c] == 0 {
            continue;
        }
        let sub: Vec<Vec<i128>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|(k, _)| *k != c).map(|(_, &x)| x).collect()).collect();
        let s = if c % 2 == 0 { 1 } else { -1 };
        acc += s * m[0][c] * det(&sub);
    }
    acc
}

/// Normal to n−1 direction vectors in n-space by cofactor expansion.
fn normal(dirs: &[Vec<i128>], n: usize) -> Vec<i128> {
    (0..n)
        .map(|j| {
            let sub: Vec<Vec<i128>> =
                dirs.iter().map(|d| d.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, &x)| x).collect()).collect();
            let s = if j % 2 == 0 { 1 } else { -1 };
            s * det(&sub)
        })
        .collect()
}

fn facets(points: &[Vec<u32>], n: usize) -> Vec<(Vec<i64>, i64)> {
    let mut out: Vec<(Vec<i64>, i64)> = Vec::new();
    // directions: differences from a base point and the coordinate rays
    for (bi, base) in points.iter().enumerate() {
        let mut dirs: Vec<Vec<i128>> = Vec::new();
        for (i, p) in points.iter().enumerate() {
            if i != bi {
                dirs.push(p.iter().zip(base).map(|(&a, &b)| a as i128 - b as i128).collect());
            }
        }
        for j in 0..n {
            let mut e = alloc::vec![0i128; n];
            e[j] = 1;
            dirs.push(e);
        }
        let k = n - 1;
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let chosen: Vec<Vec<i128>> = idx.iter().map(|&i| dirs[i].clone()).collect();
            let mut w = normal(&chosen, n);
            if w.iter().any(|&x| x != 0) {
                if w.iter().all(|&x| x <= 0) {
                    for x in w.iter_mut() {
                        *x = -*x;
                    }
                }
                if w.iter().all(|&x| x >= 0) {
                    let g = w.iter().fold(0i64, |g, &x| gcd(g, x as i64));
                    let w: Vec<i64> = w.iter().map(|&x| x as i64 / g).collect();
                    let b = dot(&w, base);
                    if points.iter().all(|p| dot(&w, p) >= b) {
                        let entry = (w, b as i64);
                        if !out.contains(&entry) {
                            out.push(entry);
                        }
                    }
                }
            }
            // next k-subset of the directions
            let m = dirs.len();
            if k == 0 {
                break;
            }
            let mut i = k;
            while i > 0 && idx[i - 1] == m - k + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            idx[i - 1] += 1;
            for t in i..k {
                idx[t] = idx[t - 1] + 1;
            }
        }
    }
    out.sort();
    out
}

/// Exponent vectors of the generators of a monomial ideal.
pub fn monomial_exponents(ideal: &AmbientIdeal) -> Result<Vec<Vec<u32>>> {
    let mut out = Vec::new();
    for (i, g) in ideal.generators().iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        if !g.is_monomial() {
            return Err(Error::NotMonomial { generator: i + 1 });
        }
        out.push(g.leading_monomial().unwrap().exps().to_vec());
    }
    Ok(minimal_points(out))
}

/// Integral closure of a monomial ideal: the monomials over its Newton region.
pub fn monomial_integral_closure(ideal: &AmbientIdeal) -> Result<AmbientIdeal> {
    let ring = ideal.ring();
    let pts = monomial_exponents(ideal)?;
    let region = NewtonRegion::new(&pts, ring.nvars())?;
    let gens = region
        .closure_generators()
        .iter()
        .map(|e| Polynomial::from_monomial(ring, ring.monomial(e), 1))
        .collect();
    AmbientIdeal::new(ring, gens)
}

/// Whether every term of `f` lies in the integral closure of the monomial ideal.
pub fn in_monomial_integral_closure(ideal: &AmbientIdeal, f: &Polynomial) -> Result<bool> {
    let pts = monomial_exponents(ideal)?;
    let region = NewtonRegion::new(&pts, ideal.ring().nvars())?;
    Ok(f.terms().iter().all(|(m, _)| region.contains(m.exps())))
}

/// Number of minimal monomial generators.
pub fn minimal_generator_count(ideal: &AmbientIdeal) -> Result<usize> {
    Ok(monomial_exponents(ideal)?.len())
}

/// Human-readable facet list (for reports).
pub fn describe_facets(region: &NewtonRegion, names: &[String]) -> Vec<String> {
    region
        .facets()
        .iter()
        .map(|(w, b)| {
            let mut s = String::new();
            for (i, &c) in w.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                if !s.is_empty() {
                    s.push('+');
                }
                if c != 1 {
                    s.push_str(&alloc::format!("{c}*"));
                }
                s.push_str(&names[i]);
            }
            alloc::format!("{s} >= {b}")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeChar;
    use crate::poly::PolyRing;
    use alloc::sync::Arc;

    fn ideal(r: &Arc<PolyRing>, exps: &[&[u32]]) -> AmbientIdeal {
        AmbientIdeal::new(r, exps.iter().map(|e| Polynomial::from_monomial(r, r.monomial(e), 1)).collect()).unwrap()
    }

    fn gens(i: &AmbientIdeal) -> Vec<Vec<u32>> {
        monomial_exponents(i).unwrap()
    }

    #[test]
    fn closure_examples() {
        let r = PolyRing::standard(PrimeChar::new(5).unwrap(), &["x", "y"]);
        let c = monomial_integral_closure(&ideal(&r, &[&[3, 0], &[0, 3]])).unwrap();
        assert_eq!(gens(&c), [[0, 3], [1, 2], [2, 1], [3, 0]]);
        let c = monomial_integral_closure(&ideal(&r, &[&[1, 0]])).unwrap();
        assert_eq!(gens(&c), [[1, 0]]);
        let c = monomial_integral_closure(&ideal(&r, &[&[2, 0], &[1, 1], &[0, 2]])).unwrap();
        assert_eq!(gens(&c), [[0, 2], [1, 1], [2, 0]]);
        // (x^2, y^2) picks up xy
        let c = monomial_integral_closure(&ideal(&r, &[&[2, 0], &[0, 2]])).unwrap();
        assert_eq!(gens(&c), [[0, 2], [1, 1], [2, 0]]);
    }

    #[test]
    fn three_variables() {
        let r = PolyRing::standard(PrimeChar::new(5).unwrap(), &["x", "y", "z"]);
        let c = monomial_integral_closure(&ideal(&r, &[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2]])).unwrap();
        assert_eq!(gens(&c), [[0, 0, 2], [0, 1, 1], [0, 2, 0], [1, 0, 1], [1, 1, 0], [2, 0, 0]]);
        let region = NewtonRegion::new(&[alloc::vec![1, 1, 1]], 3).unwrap();
        assert!(region.contains(&[2, 1, 1]));
        assert!(!region.contains(&[5, 5, 0]));
    }

    #[test]
    fn not_monomial() {
        let r = PolyRing::standard(PrimeChar::new(5).unwrap(), &["x", "y"]);
        let f = &Polynomial::var(&r, 0) + &Polynomial::var(&r, 1);
        let i = AmbientIdeal::new(&r, alloc::vec![Polynomial::var(&r, 0), f]).unwrap();
        assert_eq!(monomial_integral_closure(&i).unwrap_err(), Error::NotMonomial { generator: 2 });
    }
}
