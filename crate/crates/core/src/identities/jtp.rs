//! Closed formulas from the two Jacobi triple product specializations:
//! part 1 covers `1/((q;q)(q^(2b+1);q)^2)` through the shifted families
//! `B_{s,b}`, part 2 covers `1/((q^2;q^2)(q^(g+1);q^2)^2)` through `D_{s,g}`.
//!
//! The adjudicated index form is derived by carrying the triple product
//! through the substitution chain; the printed form (other summation rows
//! and a different monomial shift) is retained because it demonstrably
//! fails, already in the unshifted special cases.

use super::binom_sum;
use crate::macmahon::{family_table, p_polynomial, pair_polynomial, FamilySpec};
use crate::series::Series;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JtpIndexForm {
    /// Summation rows `{k, k+1}` with shift `k(k+1)/2 + 2bk + b(2b+1)`
    /// (part 1) and parity-split prefactor polynomials (part 2). Verifies.
    Adjudicated,
    /// Rows `{k-1, k}` with shifts `k(k+1)/2 + 2bk + 2b(2b+1)` resp.
    /// `k^2 + gk + g(g-1)/2` and the uniform `P([2b])` / `P([g-1])`
    /// prefactors. Fails for every `k >= 1` already at `b = g = 0`.
    Printed,
}

/// Right-hand side of the first family:
/// `q^(-shift) sum_{rows} sum_{m+j=row} P-poly(m) sum_{s>=|j+2b|} C(2s, s+j+2b) B_{s,b}`.
pub fn jtp1_rhs(k: i64, beta: i64, order: i64, form: JtpIndexForm) -> Series {
    assert!(k >= 0 && beta >= 0);
    let (shift, rows) = match form {
        JtpIndexForm::Adjudicated => {
            (k * (k + 1) / 2 + 2 * beta * k + beta * (2 * beta + 1), [k, k + 1])
        }
        JtpIndexForm::Printed => {
            (k * (k + 1) / 2 + 2 * beta * k + 2 * beta * (2 * beta + 1), [k - 1, k])
        }
    };
    let n_eff = order + shift;
    let prefactor = p_polynomial(2 * beta);
    let b_table = family_table(&FamilySpec::B { beta }, n_eff);
    let mut acc = Series::zero();
    for row in rows {
        for m in prefactor.z_support() {
            let slice = prefactor.zcoeff(m);
            let j = row - m;
            let bs = binom_sum(&b_table, j + 2 * beta);
            if bs.is_zero() {
                continue;
            }
            acc = &acc + &(&slice * &bs).truncate(n_eff);
        }
    }
    acc.shift(-shift).truncate(order)
}

/// Right-hand side of the second family. In the adjudicated form the finite
/// prefactor polynomial runs over exponents of one parity only: odd
/// exponents `1, 3, ..., g-1` when `g` is even (a single summation row),
/// even exponents `2, 4, ..., g-1` when `g` is odd (two rows).
pub fn jtp2_rhs(k: i64, gamma: i64, order: i64, form: JtpIndexForm) -> Series {
    assert!(k >= 0 && gamma >= 0);
    let (shift, rows, prefactor, offset) = match form {
        JtpIndexForm::Adjudicated => {
            if gamma % 2 == 0 {
                let exps: Vec<i64> = (1..gamma).step_by(2).collect();
                (
                    k * k + gamma * k + gamma * gamma / 4,
                    vec![k + gamma / 2],
                    pair_polynomial(&exps),
                    0,
                )
            } else {
                let exps: Vec<i64> = (2..gamma).step_by(2).collect();
                (
                    k * k + gamma * k + (gamma * gamma - 1) / 4,
                    vec![k + (gamma - 1) / 2, k + (gamma + 1) / 2],
                    pair_polynomial(&exps),
                    0,
                )
            }
        }
        JtpIndexForm::Printed => (
            k * k + gamma * k + gamma * (gamma - 1) / 2,
            vec![k - 1, k],
            p_polynomial(gamma - 1),
            gamma - 1,
        ),
    };
    let n_eff = order + shift;
    let d_table = family_table(&FamilySpec::D { gamma }, n_eff);
    let mut acc = Series::zero();
    for row in rows {
        for m in prefactor.z_support() {
            let slice = prefactor.zcoeff(m);
            let j = row - m;
            let ds = binom_sum(&d_table, j + offset);
            if ds.is_zero() {
                continue;
            }
            acc = &acc + &(&slice * &ds).truncate(n_eff);
        }
    }
    acc.shift(-shift).truncate(order)
}
