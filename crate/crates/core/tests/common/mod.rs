#![allow(dead_code)]

use proptest::prelude::*;
use tightclosure_core::{PolyRing, Polynomial, PrimeChar, RingPresentation};

pub fn ring(p: u64, names: &[&str], weights: &[u32], rels: &[&[(&[u32], i64)]]) -> RingPresentation {
    RingPresentation::with_names(PrimeChar::new(p).unwrap(), names, weights, rels, true).unwrap()
}

pub fn polyring(p: u64, names: &[&str]) -> RingPresentation {
    ring(p, names, &vec![1; names.len()], &[])
}

pub fn fermat(p: u64) -> RingPresentation {
    ring(p, &["x", "y", "z"], &[1, 1, 1], &[&[(&[3, 0, 0], 1), (&[0, 3, 0], 1), (&[0, 0, 3], -1)]])
}

pub fn cusp(p: u64) -> RingPresentation {
    ring(p, &["a", "b"], &[2, 3], &[&[(&[0, 2], 1), (&[3, 0], -1)]])
}

/// k[s^4, s^3t, st^3, t^4]
pub fn semigroup(p: u64) -> RingPresentation {
    ring(
        p,
        &["a", "b", "c", "d"],
        &[1, 1, 1, 1],
        &[
            &[(&[0, 1, 1, 0], 1), (&[1, 0, 0, 1], -1)],
            &[(&[0, 3, 0, 0], 1), (&[2, 0, 1, 0], -1)],
            &[(&[0, 0, 3, 0], 1), (&[0, 1, 0, 2], -1)],
            &[(&[1, 0, 2, 0], 1), (&[0, 2, 0, 1], -1)],
        ],
    )
}

pub fn mono(r: &RingPresentation, e: &[u32]) -> Polynomial {
    Polynomial::from_monomial(r.poly_ring(), r.poly_ring().monomial(e), 1)
}

pub fn poly(r: &std::sync::Arc<PolyRing>, terms: &[(Vec<u32>, i64)]) -> Polynomial {
    Polynomial::from_int_terms(r, terms)
}

/// Exponent vectors of total degree d in n variables (unit weights).
pub fn exponents_of_degree(n: usize, d: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in exponents_of_degree(n - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn rank_mod(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&i| !rows[i][c].is_multiple_of(p)) else { continue };
        rows.swap(rank, piv);
        let inv = pow_mod(rows[rank][c], p - 2, p);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..rows.len() {
            if i != rank && rows[i][c] != 0 {
                let f = rows[i][c];
                let pivot = rows[rank].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot) {
                    *x = (*x + p * p - f * y) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut a: u64, mut k: u64, p: u64) -> u64 {
    let mut r = 1;
    a %= p;
    while k > 0 {
        if k & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        k >>= 1;
    }
    r
}

/// Rows m·g of the Macaulay matrix in degree d (unit weights, homogeneous gens).
fn macaulay_rows(gens: &[Polynomial], n: usize, d: u32, p: u64) -> (Vec<Vec<u32>>, Vec<Vec<u64>>) {
    let cols = exponents_of_degree(n, d);
    let index: std::collections::HashMap<Vec<u32>, usize> = cols.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
    let mut rows = Vec::new();
    for g in gens.iter().filter(|g| !g.is_zero()) {
        let dg = g.degree().unwrap() as u32;
        if dg > d {
            continue;
        }
        for m in exponents_of_degree(n, d - dg) {
            let mut row = vec![0u64; cols.len()];
            for (t, c) in g.terms() {
                let e: Vec<u32> = t.exps().iter().zip(&m).map(|(a, b)| a + b).collect();
                row[index[&e]] = (row[index[&e]] + *c as u64) % p;
            }
            rows.push(row);
        }
    }
    (cols, rows)
}

/// Membership of a homogeneous f in the ideal of homogeneous gens by dense
/// linear algebra in degree deg f.
pub fn dense_member(gens: &[Polynomial], f: &Polynomial) -> bool {
    if f.is_zero() {
        return true;
    }
    let ring = f.ring();
    let p = ring.p() as u64;
    let d = f.degree().unwrap() as u32;
    let (cols, mut rows) = macaulay_rows(gens, ring.nvars(), d, p);
    let r0 = rank_mod(rows.clone(), p);
    let mut frow = vec![0u64; cols.len()];
    for (t, c) in f.terms() {
        let i = cols.iter().position(|e| e.as_slice() == t.exps()).unwrap();
        frow[i] = *c as u64;
    }
    rows.push(frow);
    rank_mod(rows, p) == r0
}

/// dim (S / I)_d by dense linear algebra.
pub fn dense_slice_dim(gens: &[Polynomial], n: usize, d: u32, p: u64) -> usize {
    let (cols, rows) = macaulay_rows(gens, n, d, p);
    cols.len() - rank_mod(rows, p)
}

/// A homogeneous polynomial strategy: degree d, up to `max_terms` terms.
pub fn homogeneous(n: usize, d: u32, max_terms: usize, p: u64) -> impl Strategy<Value = Vec<(Vec<u32>, i64)>> {
    let monos = exponents_of_degree(n, d);
    prop::collection::vec((prop::sample::select(monos), 1..p as i64), 1..=max_terms)
}

/// Up to `max_gens` homogeneous generators with degrees in 1..=max_deg.
pub fn ideal_terms(
    n: usize,
    max_gens: usize,
    max_deg: u32,
    max_terms: usize,
    p: u64,
) -> impl Strategy<Value = Vec<Vec<(Vec<u32>, i64)>>> {
    prop::collection::vec((1..=max_deg).prop_flat_map(move |d| homogeneous(n, d, max_terms, p)), 1..=max_gens)
}
