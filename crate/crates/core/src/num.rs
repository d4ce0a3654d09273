//! Integer helpers: exact square roots, floor/ceil bounds involving square
//! roots, and big-integer binomial coefficients.
//!
//! Everything here is pure integer arithmetic; no floating point.

use num_bigint::BigInt;
use num_traits::One;

/// Integer square root: the largest `r` with `r * r <= n`.
pub fn isqrt(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    // Newton's method with an integer seed >= sqrt(n).
    let mut x = 1u64 << ((64 - n.leading_zeros()).div_ceil(2));
    loop {
        let y = (x + n / x) / 2;
        if y >= x {
            debug_assert!(x * x <= n && (x + 1).checked_mul(x + 1).is_none_or(|s| s > n));
            return x;
        }
        x = y;
    }
}

/// Largest integer `t` with `b * t <= a - sqrt(x)`, i.e. `floor((a - sqrt(x)) / b)`.
///
/// Exact for irrational and perfect-square `x` alike: `b*t <= a - sqrt(x)`
/// iff `a - b*t >= 0` and `(a - b*t)^2 >= x`.
pub fn floor_sub_sqrt(a: i64, x: i64, b: i64) -> i64 {
    assert!(b > 0 && x >= 0);
    let fits = |t: i64| {
        let d = a - b * t;
        d >= 0 && d * d >= x
    };
    let mut t = (a - isqrt(x as u64) as i64).div_euclid(b) - 2;
    while fits(t + 1) {
        t += 1;
    }
    t
}

/// Smallest integer `t` with `b * t >= a + sqrt(x)`, i.e. `ceil((a + sqrt(x)) / b)`.
pub fn ceil_add_sqrt(a: i64, x: i64, b: i64) -> i64 {
    assert!(b > 0 && x >= 0);
    let fits = |t: i64| {
        let d = b * t - a;
        d >= 0 && d * d >= x
    };
    let mut t = (a + isqrt(x as u64) as i64).div_euclid(b) - 2;
    while !fits(t) {
        t += 1;
    }
    t
}

/// Binomial coefficient `C(n, k)` as a `BigInt`; zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || k > n || n < 0 {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}
