//! Closed formulas for the reciprocals of the two Rogers-Ramanujan-times-F5
//! products, built from the septuple product identity.
//!
//! The two theorem-level double sums are distinguished by their monomial
//! shifts, `(5n^2-n)/2` and `(5n^2-3n)/2`. Numerics adjudicate which
//! reciprocal each sum equals (the source statements attach them
//! inconsistently between the theorem and the lemma/corollary level), and
//! the verifier reports the attachment it finds.

use super::binom_sum;
use crate::macmahon::{family_table, family_window, FamilySpec};
use crate::num::{ceil_add_sqrt, floor_sub_sqrt, isqrt};
use crate::series::Series;
use num_bigint::BigInt;
use num_traits::Zero;

/// Index windows `s1..s2` (odd-offset sum) and `s3..s4` (even-offset sum).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SeptBounds {
    pub s1: i64,
    pub s2: i64,
    pub s3: i64,
    pub s4: i64,
}

pub fn bounds_sept(n: i64) -> SeptBounds {
    assert!(n >= 1);
    SeptBounds {
        s1: floor_sub_sqrt(5 * n - 4, 40 * n + 41, 5) + 1,
        s2: ceil_add_sqrt(5 * n - 4, 40 * n + 41, 5) - 1,
        s3: floor_sub_sqrt(5 * n - 3, 40 * n + 49, 5) + 1,
        s4: ceil_add_sqrt(5 * n - 3, 40 * n + 49, 5) - 1,
    }
}

/// Which of the two theorem-level sums to build, labeled by shift.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeptVariant {
    /// Shift `(5n^2-n)/2`; summation rows `t = 5n+1, 5n, 5n-1, 5n-2`.
    ShiftN,
    /// Shift `(5n^2-3n)/2`; summation rows `t = 5n, 5n-1, 5n-2, 5n-3`.
    Shift3N,
}

/// Row set used for the `ShiftN` sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeptTset {
    /// Four consecutive rows `{5n+1, 5n, 5n-1, 5n-2}`; verifies exactly.
    Corrected,
    /// The printed rows `{5n+2, 5n+1, 5n-1, 5n-2}` (non-consecutive); fails.
    Printed,
}

/// Theorem-level double sum with signs `(+, +, -, -)` over its four rows,
/// truncated to `order`. Identical for every integer `n`.
pub fn sept_theorem_rhs(variant: SeptVariant, n: i64, order: i64, tset: SeptTset) -> Series {
    let (shift, rows) = match (variant, tset) {
        (SeptVariant::ShiftN, SeptTset::Corrected) => {
            ((5 * n * n - n) / 2, [5 * n + 1, 5 * n, 5 * n - 1, 5 * n - 2])
        }
        (SeptVariant::ShiftN, SeptTset::Printed) => {
            ((5 * n * n - n) / 2, [5 * n + 2, 5 * n + 1, 5 * n - 1, 5 * n - 2])
        }
        (SeptVariant::Shift3N, _) => {
            ((5 * n * n - 3 * n) / 2, [5 * n, 5 * n - 1, 5 * n - 2, 5 * n - 3])
        }
    };
    let signs = [1i64, 1, -1, -1];
    let n_eff = order + shift;
    let a_table = family_table(&FamilySpec::A, n_eff);
    let mut acc = Series::zero();
    let bmax = isqrt(2 * n_eff.max(0) as u64 + 4) as i64 + 1;
    for (t, outer) in rows.into_iter().zip(signs) {
        for beta in -bmax..=bmax {
            let alpha = t - 2 * beta;
            if alpha.abs() * (alpha.abs() + 1) / 2 + beta.abs() * (beta.abs() + 1) / 2 > n_eff {
                continue;
            }
            let sa = binom_sum(&a_table, alpha);
            let sb = binom_sum(&a_table, beta);
            if sa.is_zero() || sb.is_zero() {
                continue;
            }
            let prod = (&sa * &sb).truncate(n_eff);
            let total = outer * if beta.rem_euclid(2) == 0 { 1 } else { -1 };
            acc = if total == 1 { &acc + &prod } else { &acc - &prod };
        }
    }
    acc.shift(-shift).truncate(order)
}

/// The two finite lemma-level approximants, labeled by the coefficient
/// family they generate (`b_{1,4}` or `b_{2,3}` in the displayed q-series).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeptFormula {
    /// Shift `(5n^2-3n)/2`, window `s1..s2` with `k = n-1 (mod 2)`, weight
    /// `(-1)^((n-1-k)/2) A_k A_((5n-3-k)/2)`, extra term `+(2n+1) A_n A_(2n-1)`.
    /// Generates 1, 6, 26, 91, 282, 793, ...
    B14,
    /// Shift `(5n^2-n)/2`, window `s3..s4` with `k = n (mod 2)`, weight
    /// `(-1)^((n-k)/2) A_k A_((5n-2-k)/2)`, extra term `-(2n-1) A_(n-1) A_(2n)`.
    /// Generates 1, 5, 21, 71, 216, 597, ...
    B23,
}

struct FormulaShape {
    shift: i64,
    k_lo: i64,
    k_hi: i64,
    parity: i64,
    partner_from: i64,
    extra_pair: (i64, i64),
    extra_weight: i64,
    sign_offset: i64,
}

fn shape(f: SeptFormula, n: i64) -> FormulaShape {
    let b = bounds_sept(n);
    match f {
        SeptFormula::B14 => FormulaShape {
            shift: (5 * n * n - 3 * n) / 2,
            k_lo: b.s1,
            k_hi: b.s2,
            parity: (n - 1).rem_euclid(2),
            partner_from: 5 * n - 3,
            extra_pair: (n, 2 * n - 1),
            extra_weight: 2 * n + 1,
            sign_offset: n - 1,
        },
        SeptFormula::B23 => FormulaShape {
            shift: (5 * n * n - n) / 2,
            k_lo: b.s3,
            k_hi: b.s4,
            parity: n.rem_euclid(2),
            partner_from: 5 * n - 2,
            extra_pair: (n - 1, 2 * n),
            extra_weight: -(2 * n - 1),
            sign_offset: n,
        },
    }
}

/// Finite approximant of the corresponding reciprocal, valid to `O(q^(n+1))`.
pub fn sept_lemma_partial(f: SeptFormula, n: i64, order: i64) -> Series {
    assert!(n >= 2, "the finite approximant needs n >= 2");
    let sh = shape(f, n);
    let n_eff = order + sh.shift;
    let a_table = family_table(&FamilySpec::A, n_eff);
    let get = |k: i64| -> Option<&Series> {
        if k < 0 || k as usize >= a_table.len() {
            None
        } else {
            Some(&a_table[k as usize])
        }
    };
    let mut acc = Series::zero();
    for k in sh.k_lo.max(0)..=sh.k_hi {
        if k.rem_euclid(2) != sh.parity {
            continue;
        }
        let l = (sh.partner_from - k) / 2;
        let (Some(ak), Some(al)) = (get(k), get(l)) else { continue };
        let prod = (ak * al).truncate(n_eff);
        let sgn = if ((sh.sign_offset - k) / 2).rem_euclid(2) == 0 { 1 } else { -1 };
        acc = if sgn == 1 { &acc + &prod } else { &acc - &prod };
    }
    if let (Some(x), Some(y)) = (get(sh.extra_pair.0), get(sh.extra_pair.1)) {
        let extra = (x * y).truncate(n_eff).scale(&BigInt::from(sh.extra_weight));
        acc = &acc + &extra;
    }
    acc.shift(-sh.shift).truncate(order)
}

/// Coefficient-level corollary: the `q^m` coefficient of the corresponding
/// reciprocal for `0 <= m <= n`, as a double convolution of family
/// coefficients read from near-valuation windows.
pub fn sept_corollary_coeff(f: SeptFormula, n: i64, m: i64) -> BigInt {
    assert!(n >= 2 && (0..=n).contains(&m), "need 2 <= n and 0 <= m <= n");
    let sh = shape(f, n);
    let target = m + sh.shift;
    let window_conv = |k: i64, l: i64| -> BigInt {
        if k < 0 || l < 0 {
            return BigInt::zero();
        }
        let val_k = FamilySpec::A.min_part_sum(k);
        let val_l = FamilySpec::A.min_part_sum(l);
        let width = target - val_k - val_l;
        if width < 0 {
            return BigInt::zero();
        }
        let wk = family_window(&FamilySpec::A, k, width).expect("progression set");
        let wl = family_window(&FamilySpec::A, l, width).expect("progression set");
        let mut conv = BigInt::zero();
        for i in 0..=width {
            let ca = wk.coeff(val_k + i).expect("inside window");
            if ca.is_zero() {
                continue;
            }
            let cb = wl.coeff(val_l + width - i).expect("inside window");
            if !cb.is_zero() {
                conv += ca * cb;
            }
        }
        conv
    };
    let mut total = BigInt::zero();
    for k in sh.k_lo.max(0)..=sh.k_hi {
        if k.rem_euclid(2) != sh.parity {
            continue;
        }
        let l = (sh.partner_from - k) / 2;
        let conv = window_conv(k, l);
        if ((sh.sign_offset - k) / 2).rem_euclid(2) == 0 {
            total += conv;
        } else {
            total -= conv;
        }
    }
    total += BigInt::from(sh.extra_weight) * window_conv(sh.extra_pair.0, sh.extra_pair.1);
    total
}
