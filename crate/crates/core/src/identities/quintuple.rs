//! Closed formulas for `1/theta6` built from the quintuple product identity:
//! the full theorem-level double sum, its finite lemma-level approximant, and
//! the coefficient-level corollary.

use super::binom_sum;
use crate::macmahon::{family_table, family_window, FamilySpec};
use crate::num::{ceil_add_sqrt, floor_sub_sqrt, isqrt};
use crate::series::Series;
use num_bigint::BigInt;
use num_traits::Zero;

/// Index window `r1 ..= r2` of the finite quintuple approximant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuinBounds {
    pub r1: i64,
    pub r2: i64,
}

/// `r1 = floor((3n-1-sqrt(12n+13))/3) + 1`, `r2 = ceil((3n-1+sqrt(12n+13))/3) - 1`,
/// evaluated in exact integer arithmetic.
pub fn bounds_quin(n: i64) -> QuinBounds {
    assert!(n >= 1);
    QuinBounds {
        r1: floor_sub_sqrt(3 * n - 1, 12 * n + 13, 3) + 1,
        r2: ceil_add_sqrt(3 * n - 1, 12 * n + 13, 3) - 1,
    }
}

/// Sign convention for the lemma- and corollary-level formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignConvention {
    /// `(-1)^((n-k)/2)`: consistent with the theorem's total sign; verifies.
    Adjudicated,
    /// `(-1)^((3n-k)/2)`: differs by `(-1)^n` and fails already at `n = 1`.
    Printed,
}

impl SignConvention {
    fn eval(&self, n: i64, k: i64) -> i64 {
        let e = match self {
            SignConvention::Adjudicated => (n - k) / 2,
            SignConvention::Printed => (3 * n - k) / 2,
        };
        if e.rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }
}

/// Theorem-level right-hand side:
///
/// `(-1)^n q^(-(3n^2+n)/2) sum_{t in {3n, 3n+1}} sum_{a+2b=t} (-1)^b
///  (sum_s C(2s,s+a) A_s) (sum_s C(2s,s+b) C_s)`
///
/// truncated to `order`; identical for every integer `n`.
pub fn quin_theorem_rhs(n: i64, order: i64) -> Series {
    let shift = (3 * n * n + n) / 2;
    let n_eff = order + shift;
    let a_table = family_table(&FamilySpec::A, n_eff);
    let c_table = family_table(&FamilySpec::C, n_eff);
    let mut acc = Series::zero();
    let bmax = isqrt(n_eff.max(0) as u64) as i64 + 1;
    for t in [3 * n, 3 * n + 1] {
        for beta in -bmax..=bmax {
            let alpha = t - 2 * beta;
            if alpha.abs() * (alpha.abs() + 1) / 2 + beta * beta > n_eff {
                continue;
            }
            let sa = binom_sum(&a_table, alpha);
            let sc = binom_sum(&c_table, beta);
            if sa.is_zero() || sc.is_zero() {
                continue;
            }
            let prod = (&sa * &sc).truncate(n_eff);
            acc = if beta.rem_euclid(2) == 0 { &acc + &prod } else { &acc - &prod };
        }
    }
    if n.rem_euclid(2) == 1 {
        acc = -&acc;
    }
    acc.shift(-shift).truncate(order)
}

/// Lemma-level finite approximant, valid to `O(q^(n+1))`:
///
/// `q^(-(3n^2+n)/2) sum_{k=r1, k=n mod 2}^{r2} sign(n,k) A_k C_((3n-k)/2)`.
pub fn quin_lemma_partial(n: i64, order: i64, sign: SignConvention) -> Series {
    assert!(n >= 1, "the finite approximant needs n >= 1");
    let shift = (3 * n * n + n) / 2;
    let n_eff = order + shift;
    let bounds = bounds_quin(n);
    let a_table = family_table(&FamilySpec::A, n_eff);
    let c_table = family_table(&FamilySpec::C, n_eff);
    let mut acc = Series::zero();
    for k in bounds.r1.max(0)..=bounds.r2 {
        if (k - n).rem_euclid(2) != 0 {
            continue;
        }
        let l = (3 * n - k) / 2;
        if l < 0 || k as usize >= a_table.len() || l as usize >= c_table.len() {
            continue;
        }
        let prod = (&a_table[k as usize] * &c_table[l as usize]).truncate(n_eff);
        acc = if sign.eval(n, k) == 1 { &acc + &prod } else { &acc - &prod };
    }
    acc.shift(-shift).truncate(order)
}

/// Corollary-level coefficient formula: `a(m)` for `0 <= m <= n` as the
/// double convolution of family coefficients over the lemma's index window,
/// with the boundary terms `m(k; 0) = [k = 0]` included.
///
/// Family coefficients are read from near-valuation windows, so the cost is
/// polynomial in `m` regardless of how large `n` (and with it the valuation
/// `(3n^2+n)/2`) grows.
pub fn quin_corollary_coeff(n: i64, m: i64, sign: SignConvention) -> BigInt {
    assert!(n >= 1 && (0..=n).contains(&m), "need 1 <= n and 0 <= m <= n");
    let target = m + (3 * n * n + n) / 2;
    let bounds = bounds_quin(n);
    let mut total = BigInt::zero();
    for k in bounds.r1.max(0)..=bounds.r2 {
        if (k - n).rem_euclid(2) != 0 {
            continue;
        }
        let l = (3 * n - k) / 2;
        if l < 0 {
            continue;
        }
        let val_a = FamilySpec::A.min_part_sum(k);
        let val_c = FamilySpec::C.min_part_sum(l);
        let width = target - val_a - val_c;
        if width < 0 {
            continue;
        }
        let wa = family_window(&FamilySpec::A, k, width).expect("progression set");
        let wc = family_window(&FamilySpec::C, l, width).expect("progression set");
        let mut conv = BigInt::zero();
        for i in 0..=width {
            let ca = wa.coeff(val_a + i).expect("inside window");
            if ca.is_zero() {
                continue;
            }
            let cc = wc.coeff(val_c + width - i).expect("inside window");
            if !cc.is_zero() {
                conv += ca * cc;
            }
        }
        if sign.eval(n, k) == 1 {
            total += conv;
        } else {
            total -= conv;
        }
    }
    total
}
