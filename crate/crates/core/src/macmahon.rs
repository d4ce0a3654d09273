//! MacMahon partition families and their generating products.
//!
//! Each family sums `q^(t_1+...+t_k) / prod (1-q^(t_i))^2` over k distinct
//! part sizes drawn from an arithmetic set; equivalently, its k-th member is
//! the `x^(2k)` slice of `prod_{p in S} (1 + x^2 q^p / (1-q^p)^2)`. That
//! product form is the workhorse here; the literal nested sums live in the
//! `oracle` module as an independent check.

use crate::series::Series;
use crate::zseries::ZSeries;
use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FamilyError {
    #[error("family parameter out of range: {0}")]
    BadParameter(String),
    #[error("near-valuation windows need an arithmetic-progression part set")]
    WindowUnsupported,
}

/// Which arithmetic set of part sizes a family sums over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    /// All positive integers (the series `A_k`).
    A,
    /// Odd positive integers (the series `C_k`).
    C,
    /// Integers greater than `2*beta` (the shifted series `B_{k,beta}`).
    B { beta: i64 },
    /// `gamma+1, gamma+3, gamma+5, ...` (the series `D_{k,gamma}`; at
    /// `gamma = 0` this is the odd set, so `D_{k,0} = C_k`).
    D { gamma: i64 },
    /// Positive integers congruent to `±ell` mod `modulus`.
    Agen { ell: i64, modulus: i64 },
}

impl FamilySpec {
    pub fn validate(&self) -> Result<(), FamilyError> {
        match *self {
            FamilySpec::A | FamilySpec::C => Ok(()),
            FamilySpec::B { beta } if beta >= 0 => Ok(()),
            FamilySpec::D { gamma } if gamma >= 0 => Ok(()),
            FamilySpec::Agen { ell, modulus } if modulus >= 1 && ell >= 0 => Ok(()),
            other => Err(FamilyError::BadParameter(format!("{other:?}"))),
        }
    }

    /// Part sizes of the set, ascending, up to `limit` inclusive.
    pub fn parts_up_to(&self, limit: i64) -> Vec<i64> {
        match *self {
            FamilySpec::A => (1..=limit).collect(),
            FamilySpec::C => (1..=limit).step_by(2).collect(),
            FamilySpec::B { beta } => (2 * beta + 1..=limit).collect(),
            FamilySpec::D { gamma } => {
                let mut v = Vec::new();
                let mut p = gamma + 1;
                while p <= limit {
                    v.push(p);
                    p += 2;
                }
                v
            }
            FamilySpec::Agen { ell, modulus } => {
                let r1 = ell.rem_euclid(modulus);
                let r2 = (-ell).rem_euclid(modulus);
                (1..=limit).filter(|m| m % modulus == r1 || m % modulus == r2).collect()
            }
        }
    }

    /// Sum of the `k` smallest part sizes: the valuation of the family's
    /// k-th series.
    pub fn min_part_sum(&self, k: i64) -> i64 {
        match *self {
            FamilySpec::A => k * (k + 1) / 2,
            FamilySpec::C => k * k,
            FamilySpec::B { beta } => k * (k + 1) / 2 + 2 * beta * k,
            FamilySpec::D { gamma } => k * k + gamma * k,
            FamilySpec::Agen { .. } => {
                let mut sum = 0;
                let mut count = 0;
                let mut p = 1;
                while count < k {
                    // walk the set; parts are at most modulus apart
                    if self.contains(p) {
                        sum += p;
                        count += 1;
                    }
                    p += 1;
                }
                sum
            }
        }
    }

    /// Membership test for the part set.
    pub fn contains(&self, p: i64) -> bool {
        if p < 1 {
            return false;
        }
        match *self {
            FamilySpec::A => true,
            FamilySpec::C => p % 2 == 1,
            FamilySpec::B { beta } => p > 2 * beta,
            FamilySpec::D { gamma } => p > gamma && (p - gamma - 1) % 2 == 0,
            FamilySpec::Agen { ell, modulus } => {
                p % modulus == ell.rem_euclid(modulus) || p % modulus == (-ell).rem_euclid(modulus)
            }
        }
    }

    /// Arithmetic-progression view `(start, step)` of the part set, when the
    /// set is one (every family except `Agen` with distinct residues).
    fn progression(&self) -> Option<(i64, i64)> {
        match *self {
            FamilySpec::A => Some((1, 1)),
            FamilySpec::C => Some((1, 2)),
            FamilySpec::B { beta } => Some((2 * beta + 1, 1)),
            FamilySpec::D { gamma } => Some((gamma + 1, 2)),
            FamilySpec::Agen { .. } => None,
        }
    }
}

/// Polynomial in `x^2` whose coefficients are q-series: the truncated
/// generating product of a MacMahon family.
#[derive(Clone, Debug)]
pub struct XPoly {
    slices: Vec<Series>,
    order: i64,
}

impl XPoly {
    /// Coefficient of `x^(2k)`.
    pub fn slice(&self, k: i64) -> &Series {
        &self.slices[k as usize]
    }

    pub fn kmax(&self) -> i64 {
        self.slices.len() as i64 - 1
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn into_slices(self) -> Vec<Series> {
        self.slices
    }
}

/// `q^p / (1-q^p)^2 = sum_{m>=1} m q^(pm)`, truncated.
fn part_weight(p: i64, order: i64) -> Series {
    if p > order {
        return Series::zero();
    }
    let mut coeffs = vec![BigInt::zero(); (order - p + 1) as usize];
    let mut m = 1i64;
    while p * m <= order {
        coeffs[(p * m - p) as usize] = BigInt::from(m);
        m += 1;
    }
    Series::from_window(p, coeffs, order)
}

/// Expand `prod_{p in S, p <= order} (1 + x^2 q^p/(1-q^p)^2)` as a polynomial
/// in `x^2` of degree `kmax`, every slice truncated to `order`.
pub fn family_gen(spec: &FamilySpec, kmax: i64, order: i64) -> XPoly {
    spec.validate().expect("valid family parameters");
    assert!(kmax >= 0);
    let mut slices = vec![Series::zero(); (kmax + 1) as usize];
    slices[0] = Series::one();
    for p in spec.parts_up_to(order.max(0)) {
        let w = part_weight(p, order);
        for k in (1..=kmax as usize).rev() {
            if !slices[k - 1].is_zero() {
                let add = &slices[k - 1] * &w;
                slices[k] = &slices[k] + &add.truncate(order);
            }
        }
    }
    // slice 0 stays the exact constant 1; pin it to the common order
    slices[0] = slices[0].truncate(order);
    XPoly { slices, order }
}

/// The k-th member of a family as a single series.
pub fn family_series(spec: &FamilySpec, k: i64, order: i64) -> Series {
    family_gen(spec, k, order).slices.swap_remove(k as usize)
}

/// Family slices for every `k` whose valuation stays within `order`.
pub fn family_table(spec: &FamilySpec, order: i64) -> Vec<Series> {
    let mut kmax = 0;
    while spec.min_part_sum(kmax + 1) <= order {
        kmax += 1;
    }
    family_gen(spec, kmax, order).into_slices()
}

/// Coefficients of the family's k-th series at exponents
/// `valuation ..= valuation + width`, computed by a subset-walk over part
/// sets near the minimal staircase instead of the full product.
///
/// Walking candidate positions from the top down, a skipped position costs
/// `q^(step * chosen_above)` (it shifts every chosen part above it up by one
/// step) and a chosen position at part value `v` carries the multiplicity
/// weights `sum_m (m+1) q^(m v)`. This reaches the same coefficients as the
/// generating product but in time polynomial in `width`, independent of the
/// valuation, which is what makes large-index corollary evaluations cheap.
pub fn family_window(spec: &FamilySpec, k: i64, width: i64) -> Result<Series, FamilyError> {
    spec.validate()?;
    let (start, step) = spec.progression().ok_or(FamilyError::WindowUnsupported)?;
    assert!(k >= 0 && width >= 0);
    if k == 0 {
        return Ok(Series::one().truncate(width));
    }
    let w = width as usize;
    let positions = k + width / step + 1;
    // states[c] = excess polynomial over configurations with c parts chosen
    let mut states: Vec<Option<Vec<BigInt>>> = vec![None; (k + 1) as usize];
    states[0] = Some({
        let mut p = vec![BigInt::zero(); w + 1];
        p[0] = BigInt::from(1);
        p
    });
    for pos in (1..=positions).rev() {
        let value = start + (pos - 1) * step;
        let mut next: Vec<Option<Vec<BigInt>>> = vec![None; (k + 1) as usize];
        for (c, poly) in states.iter().enumerate() {
            let Some(poly) = poly else { continue };
            // skip this position: every chosen part above it moves up a step
            let hole = (c as i64) * step;
            if hole <= width {
                let dst = next[c].get_or_insert_with(|| vec![BigInt::zero(); w + 1]);
                for (t, coef) in poly.iter().enumerate() {
                    if coef.is_zero() {
                        continue;
                    }
                    let tt = t + hole as usize;
                    if tt <= w {
                        dst[tt] += coef;
                    }
                }
            }
            // choose this position
            if (c as i64) < k {
                let dst = next[c + 1].get_or_insert_with(|| vec![BigInt::zero(); w + 1]);
                if value > width {
                    for (t, coef) in poly.iter().enumerate() {
                        if !coef.is_zero() {
                            dst[t] += coef;
                        }
                    }
                } else {
                    for (t, coef) in poly.iter().enumerate() {
                        if coef.is_zero() {
                            continue;
                        }
                        let mut mult = 0i64;
                        while t as i64 + mult * value <= width {
                            dst[t + (mult * value) as usize] += coef * BigInt::from(mult + 1);
                            mult += 1;
                        }
                    }
                }
            }
        }
        states = next;
    }
    let poly = states[k as usize].take().unwrap_or_else(|| vec![BigInt::zero(); w + 1]);
    let val = spec.min_part_sum(k);
    Ok(Series::from_window(val, poly, val + width))
}

/// Exact bivariate generating polynomial of pairs of distinct-part
/// partitions with parts drawn from the given exponent list:
/// `prod_e (1 + z q^e)(1 + z^-1 q^e)`. The slices are exact polynomials.
pub fn pair_polynomial(exponents: &[i64]) -> ZSeries {
    let order = crate::series::EXACT;
    let mut acc = ZSeries::one(order);
    for &e in exponents {
        // (1 + z q^e)(1 + z^-1 q^e) = 1 + q^(2e) + q^e (z + z^-1)
        let factor = ZSeries::from_terms(
            order,
            [
                (0, &Series::one() + &Series::monomial(1, 2 * e)),
                (1, Series::monomial(1, e)),
                (-1, Series::monomial(1, e)),
            ],
        );
        acc = acc.zmul(&factor);
    }
    acc
}

/// `P([k], n, m)` generating polynomial: parts from `{1, ..., k}`,
/// q tracks total size, z tracks the part-count difference.
pub fn p_polynomial(k: i64) -> ZSeries {
    if k <= 0 {
        return ZSeries::one(crate::series::EXACT);
    }
    let exps: Vec<i64> = (1..=k).collect();
    pair_polynomial(&exps)
}

/// Congruence reading for the arithmetic-progression family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AgenReading {
    /// Every part satisfies `m_i = ±ell (mod n)`. This reading makes the
    /// `(ell, n) = (1, 2)` family coincide with the odd-part family, as the
    /// closed-formula reductions require.
    AllParts,
    /// Only the largest part is constrained (the literal nested-sum text).
    LastPartOnly,
}

/// Slices of the last-part-only reading of the progression family: run the
/// unrestricted prefix product over parts below each admissible top part.
pub fn agen_last_part_slices(ell: i64, modulus: i64, kmax: i64, order: i64) -> Vec<Series> {
    assert!(modulus >= 1 && kmax >= 0);
    let spec = FamilySpec::Agen { ell, modulus };
    let mut out = vec![Series::zero(); (kmax + 1) as usize];
    out[0] = Series::one().truncate(order);
    let mut prefix = vec![Series::zero(); (kmax + 1) as usize];
    prefix[0] = Series::one();
    for p in 1..=order.max(0) {
        let w = part_weight(p, order);
        if spec.contains(p) {
            for k in 1..=kmax as usize {
                if !prefix[k - 1].is_zero() {
                    let add = &prefix[k - 1] * &w;
                    out[k] = &out[k] + &add.truncate(order);
                }
            }
        }
        for k in (1..=kmax as usize).rev() {
            if !prefix[k - 1].is_zero() {
                let add = &prefix[k - 1] * &w;
                prefix[k] = &prefix[k] + &add.truncate(order);
            }
        }
    }
    out
}
