//! Prime fields F_p with p < 2^31.
//!
//! Coefficients inside polynomials are stored as bare `u32` residues; the
//! [`PrimeChar`] carries the modulus and a Barrett constant so the hot loops
//! of the Gröbner engine never issue a hardware division.

use core::fmt;

use crate::error::{Error, Result};

/// A prime characteristic, validated at construction.
#[derive(Clone, Copy)]
pub struct PrimeChar {
    p: u32,
    /// floor((2^64 - 1) / p)
    barrett: u64,
}

impl PartialEq for PrimeChar {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
    }
}

impl Eq for PrimeChar {}

impl fmt::Debug for PrimeChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PrimeChar({})", self.p)
    }
}

impl PrimeChar {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 31 {
            return Err(Error::CharTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeChar { p: p as u32, barrett: u64::MAX / p })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    /// Reduces any `x < 2^64`.
    #[inline]
    pub fn reduce(self, x: u64) -> u32 {
        let q = ((x as u128 * self.barrett as u128) >> 64) as u64;
        let mut r = x - q * self.p as u64;
        while r >= self.p as u64 {
            r -= self.p as u64;
        }
        r as u32
    }

    #[inline]
    pub fn reduce_i64(self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        self.reduce(a as u64 * b as u64)
    }

    pub fn pow(self, a: u32, mut k: u64) -> u32 {
        let mut base = a;
        let mut acc = 1 % self.p;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero residue (Fermat).
    pub fn inv(self, a: u32) -> Result<u32> {
        if a.is_multiple_of(self.p) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.p as u64 - 2))
    }

    /// Signed representative in (-p/2, p/2], used for rendering.
    pub fn signed(self, a: u32) -> i64 {
        if a as u64 * 2 > self.p as u64 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(sp) {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut a: u64, mut k: u64| {
        let mut r = 1u64;
        while k > 0 {
            if k & 1 == 1 {
                r = mulmod(r, a);
            }
            a = mulmod(a, a);
            k >>= 1;
        }
        r
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// An element of F_p together with its characteristic.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct FpScalar {
    residue: u32,
    ch: PrimeChar,
}

impl fmt::Debug for FpScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.residue, self.ch.p)
    }
}

impl fmt::Display for FpScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.residue)
    }
}

// fallible, so the operator traits do not fit
#[allow(clippy::should_implement_trait)]
impl FpScalar {
    pub fn new(value: i64, ch: PrimeChar) -> Self {
        FpScalar { residue: ch.reduce_i64(value), ch }
    }

    pub fn residue(self) -> u32 {
        self.residue
    }

    pub fn characteristic(self) -> PrimeChar {
        self.ch
    }

    pub fn is_zero(self) -> bool {
        self.residue == 0
    }

    fn check(self, other: FpScalar) -> Result<PrimeChar> {
        if self.ch != other.ch {
            return Err(Error::CharMismatch { left: self.ch.p, right: other.ch.p });
        }
        Ok(self.ch)
    }

    pub fn add(self, other: FpScalar) -> Result<FpScalar> {
        let ch = self.check(other)?;
        Ok(FpScalar { residue: ch.add(self.residue, other.residue), ch })
    }

    pub fn sub(self, other: FpScalar) -> Result<FpScalar> {
        let ch = self.check(other)?;
        Ok(FpScalar { residue: ch.sub(self.residue, other.residue), ch })
    }

    pub fn mul(self, other: FpScalar) -> Result<FpScalar> {
        let ch = self.check(other)?;
        Ok(FpScalar { residue: ch.mul(self.residue, other.residue), ch })
    }

    pub fn neg(self) -> FpScalar {
        FpScalar { residue: self.ch.neg(self.residue), ch: self.ch }
    }

    pub fn inv(self) -> Result<FpScalar> {
        Ok(FpScalar { residue: self.ch.inv(self.residue)?, ch: self.ch })
    }

    pub fn pow(self, k: u64) -> FpScalar {
        FpScalar { residue: self.ch.pow(self.residue, k), ch: self.ch }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(v: i64, p: u64) -> FpScalar {
        FpScalar::new(v, PrimeChar::new(p).unwrap())
    }

    #[test]
    fn scalar_examples() {
        assert_eq!(f(3, 7).inv().unwrap().residue(), 5);
        assert_eq!(f(2, 5).pow(4).residue(), 1);
        assert_eq!(f(4, 5).add(f(3, 5)).unwrap().residue(), 2);
    }

    #[test]
    fn scalar_errors() {
        assert_eq!(f(0, 7).inv(), Err(Error::DivisionByZero));
        assert_eq!(
            f(1, 5).add(f(1, 7)),
            Err(Error::CharMismatch { left: 5, right: 7 })
        );
        assert_eq!(PrimeChar::new(4).unwrap_err(), Error::NotPrime(4));
        assert_eq!(PrimeChar::new(1).unwrap_err(), Error::NotPrime(1));
        assert!(matches!(PrimeChar::new(1 << 31), Err(Error::CharTooLarge(_))));
    }

    #[test]
    fn primality_matches_trial_division() {
        for n in 0..5000u64 {
            let trial = n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
            assert_eq!(is_prime(n), trial, "n = {n}");
        }
        assert!(is_prime(2147483647));
    }

    #[test]
    fn barrett_agrees_with_remainder() {
        for p in [2u64, 3, 65521, 2147483647] {
            let ch = PrimeChar::new(p).unwrap();
            for x in [0u64, 1, p - 1, p, p * p - 1, (p - 1) * (p - 1), u64::MAX / 3, u64::MAX] {
                assert_eq!(ch.reduce(x) as u64, x % p, "p={p} x={x}");
            }
        }
    }

    #[test]
    fn field_axioms_small_prime() {
        let ch = PrimeChar::new(13).unwrap();
        for a in 0..13 {
            for b in 0..13 {
                let (x, y) = (FpScalar::new(a, ch), FpScalar::new(b, ch));
                assert_eq!(x.add(y).unwrap().sub(y).unwrap(), x);
                assert_eq!(x.mul(y).unwrap(), y.mul(x).unwrap());
            }
            if a != 0 {
                let x = FpScalar::new(a, ch);
                assert_eq!(x.mul(x.inv().unwrap()).unwrap().residue(), 1);
            }
        }
    }
}
