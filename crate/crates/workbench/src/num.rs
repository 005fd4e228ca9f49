//! Exact rationals and their decimal previews.

use tightclosure_core::hk::Rational;

/// `p/q` in lowest terms, or `p` for integers.
pub fn exact(r: &Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Decimal with `digits` significant digits, rounded half away from zero,
/// computed in integer arithmetic.
pub fn decimal(r: &Rational, digits: u32) -> String {
    let (n, d) = (*r.numer(), *r.denom());
    if n == 0 {
        return format!("0.{}", "0".repeat(digits.saturating_sub(1) as usize));
    }
    let neg = n < 0;
    let (n, d) = (n.unsigned_abs(), d.unsigned_abs());
    // exponent k with 10^(digits-1) <= n/d * 10^k < 10^digits
    let lo = 10u128.pow(digits - 1);
    let hi = 10u128.pow(digits);
    let mut k: i32 = 0;
    let scaled = |k: i32| -> (u128, u128) {
        if k >= 0 {
            (n * 10u128.pow(k as u32), d)
        } else {
            (n, d * 10u128.pow((-k) as u32))
        }
    };
    loop {
        let (a, b) = scaled(k);
        if a / b >= hi {
            k -= 1;
        } else if a / b < lo {
            k += 1;
        } else {
            break;
        }
    }
    let (a, b) = scaled(k);
    let mut m = a / b;
    if 2 * (a % b) >= b {
        m += 1;
    }
    if m == hi {
        m /= 10;
        k -= 1;
    }
    let digits_str = m.to_string();
    let point = digits as i32 - k; // digits before the decimal point
    let body = if point <= 0 {
        format!("0.{}{}", "0".repeat((-point) as usize), digits_str)
    } else if point as usize >= digits_str.len() {
        format!("{}{}", digits_str, "0".repeat(point as usize - digits_str.len()))
    } else {
        format!("{}.{}", &digits_str[..point as usize], &digits_str[point as usize..])
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i128, b: i128) -> Rational {
        Rational::new(a, b)
    }

    #[test]
    fn six_digits() {
        assert_eq!(decimal(&r(1, 1), 6), "1.00000");
        assert_eq!(decimal(&r(9, 4), 6), "2.25000");
        assert_eq!(decimal(&r(1405, 625), 6), "2.24800");
        assert_eq!(decimal(&r(2, 3), 6), "0.666667");
        assert_eq!(decimal(&r(-1, 7), 6), "-0.142857");
        assert_eq!(decimal(&r(35155, 1), 6), "35155.0");
        assert_eq!(decimal(&r(1234567, 1), 6), "1234570");
        assert_eq!(decimal(&r(999999, 1000000), 3), "1.00");
        assert_eq!(decimal(&r(1, 1000), 6), "0.00100000");
        assert_eq!(exact(&r(18, 8)), "9/4");
        assert_eq!(exact(&r(3, 1)), "3");
    }
}
