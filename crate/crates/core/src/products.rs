//! Infinite products: q-Pochhammer symbols, theta functions, the
//! Rogers-Ramanujan products, and bivariate verifiers for the classical
//! Jacobi triple, quintuple and septuple product identities.

use crate::num::isqrt;
use crate::report::{params, IdentityId, IdentityReport, Outcome};
use crate::series::Series;
use crate::zseries::ZSeries;
use num_bigint::BigInt;
use num_traits::Zero;
use std::time::Instant;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ProductError {
    #[error("pochhammer factor needs step d >= 1, got {0}")]
    BadStep(i64),
    #[error("pochhammer factor needs start exponent a >= 0, got {0}")]
    BadStart(i64),
    #[error("inverted pochhammer factor needs start exponent a >= 1 (unit constant term)")]
    NonUnitInverse,
    #[error("product has a factor with zero exponent: (1 {0} q^0)")]
    ZeroExponentFactor(&'static str),
    #[error("parameters out of domain: {0}")]
    Domain(String),
}

/// One factor `(sign * q^a; q^d)_inf ^ power` of a [`ProductSpec`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PochFactor {
    pub a: i64,
    pub d: i64,
    /// `+1` encodes `(q^a; q^d)` (terms `1 - q^(a+nd)`), `-1` encodes
    /// `(-q^a; q^d)` (terms `1 + q^(a+nd)`).
    pub sign: i8,
    pub power: i32,
}

impl PochFactor {
    pub fn new(a: i64, d: i64, sign: i8, power: i32) -> Self {
        PochFactor { a, d, sign, power }
    }
}

/// A finite description of a product of q-Pochhammer symbols.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProductSpec {
    pub factors: Vec<PochFactor>,
}

impl ProductSpec {
    pub fn new(factors: Vec<PochFactor>) -> Self {
        ProductSpec { factors }
    }

    fn validate(&self) -> Result<(), ProductError> {
        for f in &self.factors {
            if f.d < 1 {
                return Err(ProductError::BadStep(f.d));
            }
            if f.a < 0 {
                return Err(ProductError::BadStart(f.a));
            }
            if f.power < 0 && f.a == 0 {
                return Err(ProductError::NonUnitInverse);
            }
        }
        Ok(())
    }

    /// Expand the product to the given truncation order.
    pub fn eval(&self, order: i64) -> Result<Series, ProductError> {
        self.validate()?;
        let mut acc = Series::one().truncate(order.max(0));
        for f in &self.factors {
            let base = pochhammer_signed(f.a, f.d, f.sign, order.max(0));
            let factor = if f.power >= 0 {
                base.pow(f.power as u32)
            } else {
                // base has constant term 1 here (a >= 1), so the inverse is integral
                base.invert().expect("unit constant term").pow((-f.power) as u32)
            };
            acc = &acc * &factor;
        }
        Ok(acc.truncate(order))
    }
}

/// `(q^a; q^d)_inf` truncated to `order`: the product of `(1 - q^(a+nd))`
/// over all factors whose exponent is `<= order`. An `a = 0` factor is the
/// constant 0 and yields the zero series.
pub fn pochhammer(a: i64, d: i64, order: i64) -> Series {
    pochhammer_signed(a, d, 1, order)
}

fn pochhammer_signed(a: i64, d: i64, sign: i8, order: i64) -> Series {
    assert!(d >= 1, "pochhammer step must be >= 1");
    assert!(a >= 0, "pochhammer start exponent must be >= 0");
    let term = BigInt::from(-i64::from(sign));
    let mut acc = Series::one().truncate(order.max(0));
    let mut e = a;
    while e <= order {
        if e == 0 && sign == 1 {
            return Series::zero();
        }
        let factor = &Series::one() + &Series::monomial(term.clone(), e);
        acc = &acc * &factor.truncate(order);
        e += d;
    }
    acc.truncate(order)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Theta6Form {
    /// `(q;q)^3 (q;q^2)^2`
    Product,
    /// `(1/2) sum chi_6(n) n q^((n^2-1)/24)` over n = ±1 mod 6
    Sum,
}

/// The weight-3/2 theta series attached to the odd quadratic character mod 6,
/// in either of its two equivalent constructions.
pub fn theta6(order: i64, form: Theta6Form) -> Series {
    match form {
        Theta6Form::Product => {
            let p = ProductSpec::new(vec![
                PochFactor::new(1, 1, 1, 3),
                PochFactor::new(1, 2, 1, 2),
            ]);
            p.eval(order).expect("valid spec")
        }
        Theta6Form::Sum => {
            if order < 0 {
                return Series::zero();
            }
            // positive n = ±1 mod 6 pair up with -n, doubling the half-sum
            let mut coeffs = vec![BigInt::zero(); (order + 1) as usize];
            let mut n: i64 = 1;
            loop {
                let e = (n * n - 1) / 24;
                if e > order {
                    break;
                }
                if n % 6 == 1 || n % 6 == 5 {
                    let chi = if n % 6 == 1 { 1 } else { -1 };
                    coeffs[e as usize] += BigInt::from(chi * n);
                }
                n += 1;
            }
            Series::from_window(0, coeffs, order)
        }
    }
}

/// `1 / theta6`, the reciprocal series `1 + 5q + 18q^2 + ...`.
pub fn theta6_reciprocal(order: i64) -> Series {
    theta6(order, Theta6Form::Product).invert().expect("unit leading term")
}

/// The two Rogers-Ramanujan products and the colored-partition product
/// `F5 = (q;q)^6 / (q^5;q^5)`.
pub struct RrProducts {
    pub r14: Series,
    pub r23: Series,
    pub f5: Series,
}

pub fn rr_products(order: i64) -> RrProducts {
    let r14 = ProductSpec::new(vec![
        PochFactor::new(1, 5, 1, -1),
        PochFactor::new(4, 5, 1, -1),
    ]);
    let r23 = ProductSpec::new(vec![
        PochFactor::new(2, 5, 1, -1),
        PochFactor::new(3, 5, 1, -1),
    ]);
    let f5 = ProductSpec::new(vec![
        PochFactor::new(1, 1, 1, 6),
        PochFactor::new(5, 5, 1, -1),
    ]);
    RrProducts {
        r14: r14.eval(order).expect("valid spec"),
        r23: r23.eval(order).expect("valid spec"),
        f5: f5.eval(order).expect("valid spec"),
    }
}

/// `1 / (R_{1,4} F_5)` computed directly from the defining products.
pub fn recip_r14_f5(order: i64) -> Series {
    let rr = rr_products(order);
    (&rr.r14 * &rr.f5).invert().expect("unit leading term")
}

/// `1 / (R_{2,3} F_5)` computed directly from the defining products.
pub fn recip_r23_f5(order: i64) -> Series {
    let rr = rr_products(order);
    (&rr.r23 * &rr.f5).invert().expect("unit leading term")
}

/// Reciprocal target of the first triple-product family:
/// `1 / ((q;q) (q^(2b+1); q)^2)`.
pub fn recip_jtp1_target(beta: i64, order: i64) -> Series {
    let p = ProductSpec::new(vec![
        PochFactor::new(1, 1, 1, 1),
        PochFactor::new(2 * beta + 1, 1, 1, 2),
    ]);
    p.eval(order).expect("valid spec").invert().expect("unit leading term")
}

/// Reciprocal target of the second triple-product family:
/// `1 / ((q^2;q^2) (q^(g+1); q^2)^2)`.
pub fn recip_jtp2_target(gamma: i64, order: i64) -> Series {
    let p = ProductSpec::new(vec![
        PochFactor::new(2, 2, 1, 1),
        PochFactor::new(gamma + 1, 2, 1, 2),
    ]);
    p.eval(order).expect("valid spec").invert().expect("unit leading term")
}

/// Left-hand product of the arithmetic-progression identity:
///
/// `prod_{m>=1} (1+q^{nm}) (1+q^{2nm-n(j+2)+2l}) (1+q^{2nm+nj-2l})
///  / ((1-q^{nm}) (1-q^{nm+l-n})^2 (1-q^{nm-l})^2)`
///
/// Numerator factors with negative exponents are normalized as
/// `1 + q^{-e} = q^{-e} (1 + q^{e})`, so the result is a Laurent series.
/// A zero exponent anywhere is a domain error (the identity excludes those
/// parameter combinations).
pub fn progression_lhs(ell: i64, n: i64, j: i64, order: i64) -> Result<Series, ProductError> {
    if n < 1 || ell < 1 || ell >= n {
        return Err(ProductError::Domain(format!("need 1 <= l < n (got l={ell}, n={n})")));
    }
    if j < 0 {
        return Err(ProductError::Domain(format!("need j >= 0 (got j={j})")));
    }
    // Negative numerator exponents occur only for m <= (j+2)/2; normalize
    // them first so the working order accounts for the monomial pullout.
    let exp2 = |m: i64| 2 * n * m - n * (j + 2) + 2 * ell;
    let mut shift_acc: i64 = 0;
    for m in 1..=(j + 2) {
        let e = exp2(m);
        if e < 0 {
            shift_acc += e;
        }
    }
    let work = order - shift_acc;
    let mut acc = Series::one().truncate(work.max(0));
    let mul_numer = |acc: &Series, e: i64| -> Result<Series, ProductError> {
        if e == 0 {
            return Err(ProductError::ZeroExponentFactor("+"));
        }
        let e = e.abs();
        if e <= work {
            Ok(acc * &(&Series::one() + &Series::monomial(1, e)).truncate(work))
        } else {
            Ok(acc.clone())
        }
    };
    let m_max = work.max(0) / n + j + 4;
    for m in 1..=m_max {
        let nm = n * m;
        acc = mul_numer(&acc, nm)?;
        acc = mul_numer(&acc, exp2(m))?;
        acc = mul_numer(&acc, 2 * nm + n * j - 2 * ell)?;
        for (e, p) in [(nm, 1), (nm + ell - n, 2), (nm - ell, 2)] {
            if e < 1 {
                return Err(ProductError::ZeroExponentFactor("-"));
            }
            if e <= work {
                let inv = (&Series::one() - &Series::monomial(1, e))
                    .truncate(work)
                    .invert()
                    .expect("unit leading term");
                for _ in 0..p {
                    acc = &acc * &inv;
                }
            }
        }
    }
    Ok(acc.shift(shift_acc).truncate(order))
}

// ---------------------------------------------------------------------------
// Bivariate identity verifiers
// ---------------------------------------------------------------------------

fn two_term(order: i64, j: i64, qexp: i64, coeff: i64) -> ZSeries {
    // 1 + coeff * z^j q^qexp
    let mut f = ZSeries::one(order);
    f.add_term(j, &Series::monomial(coeff, qexp));
    f
}

fn bivariate_report(
    id: IdentityId,
    order: i64,
    lhs: &ZSeries,
    rhs: &ZSeries,
    started: Instant,
) -> IdentityReport {
    let mm = lhs.first_mismatch(rhs, order);
    IdentityReport {
        identity: id,
        params: params(&[]),
        order,
        outcome: if mm.is_none() { Outcome::ExactToOrder } else { Outcome::Mismatch },
        first_mismatch: mm.map(|(_, e)| e),
        millis: started.elapsed().as_millis(),
        variant: mm.map(|(j, _)| format!("z^{j}")),
    }
}

/// Both sides of the quintuple product identity as bivariate series:
/// sum side `sum_n q^((3n^2+n)/2) (z^(3n) - z^(-3n-1))`, product side
/// `(q;q) prod (1-z q^n)(1-z^-1 q^(n-1))(1-z^2 q^(2n-1))(1-z^-2 q^(2n-1))`.
pub fn quintuple_sides(order: i64) -> (ZSeries, ZSeries) {
    let mut sum = ZSeries::zero(order);
    let bound = isqrt((order.max(0) as u64) * 2 / 3 + 4) as i64 + 2;
    for n in -bound..=bound {
        let e = (3 * n * n + n) / 2;
        if e <= order {
            sum.add_term(3 * n, &Series::monomial(1, e));
            sum.add_term(-3 * n - 1, &Series::monomial(-1, e));
        }
    }
    let mut prod = ZSeries::one(order);
    prod = prod.zmul(&ZSeries::from_terms(order, [(0, pochhammer(1, 1, order))]));
    let mut n = 1i64;
    while n - 1 <= order {
        if n <= order {
            prod = prod.zmul(&two_term(order, 1, n, -1));
        }
        prod = prod.zmul(&two_term(order, -1, n - 1, -1));
        if 2 * n - 1 <= order {
            prod = prod.zmul(&two_term(order, 2, 2 * n - 1, -1));
            prod = prod.zmul(&two_term(order, -2, 2 * n - 1, -1));
        }
        n += 1;
    }
    (sum, prod)
}

pub fn verify_quintuple(order: i64) -> IdentityReport {
    let t = Instant::now();
    let (sum, prod) = quintuple_sides(order);
    bivariate_report(IdentityId::QuintupleProduct, order, &sum, &prod, t)
}

/// Both sides of the septuple product identity, in the combined form where
/// all q-exponents are integers:
///
/// ```text
/// (q^2;q^5)(q^3;q^5)(q^5;q^5) sum_n (-1)^n (q^((5n^2-3n)/2) z^(5n) + q^((5n^2+3n)/2) z^(5n+3))
///   - (q;q^5)(q^4;q^5)(q^5;q^5) sum_n (-1)^n (q^((5n^2-n)/2) z^(5n+1) + q^((5n^2+n)/2) z^(5n+2))
///   = (q;q)^2 prod_{n>=0} (1-z q^n)(1-z^-1 q^(n+1))(1-z^2 q^n)(1-z^-2 q^(n+1))
/// ```
pub fn septuple_sides(order: i64) -> (ZSeries, ZSeries) {
    let bound = isqrt((order.max(0) as u64) + 4) as i64 + 2;
    let mut sum23 = ZSeries::zero(order);
    let mut sum14 = ZSeries::zero(order);
    for n in -bound..=bound {
        let sign = if n.rem_euclid(2) == 0 { 1 } else { -1 };
        for (zexp, qexp) in [(5 * n, (5 * n * n - 3 * n) / 2), (5 * n + 3, (5 * n * n + 3 * n) / 2)]
        {
            if (0..=order).contains(&qexp) {
                sum23.add_term(zexp, &Series::monomial(sign, qexp));
            }
        }
        for (zexp, qexp) in
            [(5 * n + 1, (5 * n * n - n) / 2), (5 * n + 2, (5 * n * n + n) / 2)]
        {
            if (0..=order).contains(&qexp) {
                sum14.add_term(zexp, &Series::monomial(sign, qexp));
            }
        }
    }
    let p23 = ProductSpec::new(vec![
        PochFactor::new(2, 5, 1, 1),
        PochFactor::new(3, 5, 1, 1),
        PochFactor::new(5, 5, 1, 1),
    ])
    .eval(order)
    .expect("valid spec");
    let p14 = ProductSpec::new(vec![
        PochFactor::new(1, 5, 1, 1),
        PochFactor::new(4, 5, 1, 1),
        PochFactor::new(5, 5, 1, 1),
    ])
    .eval(order)
    .expect("valid spec");
    let mut lhs = ZSeries::zero(order);
    for j in sum23.z_support() {
        lhs.add_term(j, &(&sum23.zcoeff(j) * &p23));
    }
    for j in sum14.z_support() {
        lhs.add_term(j, &-&(&sum14.zcoeff(j) * &p14));
    }

    let mut rhs = ZSeries::from_terms(order, [(0, pochhammer(1, 1, order).pow(2))]);
    let mut n = 0i64;
    while n <= order {
        rhs = rhs.zmul(&two_term(order, 1, n, -1));
        rhs = rhs.zmul(&two_term(order, 2, n, -1));
        if n < order {
            rhs = rhs.zmul(&two_term(order, -1, n + 1, -1));
            rhs = rhs.zmul(&two_term(order, -2, n + 1, -1));
        }
        n += 1;
    }
    (lhs, rhs)
}

pub fn verify_septuple(order: i64) -> IdentityReport {
    let t = Instant::now();
    let (lhs, rhs) = septuple_sides(order);
    bivariate_report(IdentityId::SeptupleProduct, order, &lhs, &rhs, t)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JtpForm {
    /// `sum (-1)^n q^(n(n+1)/2) z^(2n+1) = (z - z^-1)(q;q) prod (1-z^-2 q^n)(1-z^2 q^n)`
    Odd,
    /// `sum q^(n^2) z^n = prod (1-q^(2n+2))(1+z^-1 q^(2n+1))(1+z q^(2n+1))`
    Even,
}

pub fn jtp_sides(order: i64, form: JtpForm) -> (ZSeries, ZSeries) {
    let bound = isqrt((order.max(0) as u64) * 2 + 4) as i64 + 2;
    match form {
        JtpForm::Odd => {
            let mut sum = ZSeries::zero(order);
            for n in -bound..=bound {
                let e = n * (n + 1) / 2;
                if (0..=order).contains(&e) {
                    let sign = if n.rem_euclid(2) == 0 { 1 } else { -1 };
                    sum.add_term(2 * n + 1, &Series::monomial(sign, e));
                }
            }
            let mut prod = ZSeries::from_terms(
                order,
                [(1, Series::one().truncate(order)), (-1, Series::constant(-1).truncate(order))],
            );
            prod = prod.zmul(&ZSeries::from_terms(order, [(0, pochhammer(1, 1, order))]));
            for n in 1..=order.max(0) {
                prod = prod.zmul(&two_term(order, -2, n, -1));
                prod = prod.zmul(&two_term(order, 2, n, -1));
            }
            (sum, prod)
        }
        JtpForm::Even => {
            let mut sum = ZSeries::zero(order);
            for n in -bound..=bound {
                let e = n * n;
                if e <= order {
                    sum.add_term(n, &Series::monomial(1, e));
                }
            }
            let mut prod = ZSeries::one(order);
            let mut n = 0i64;
            while 2 * n < order {
                if 2 * n + 2 <= order {
                    prod = prod.zmul(&two_term(order, 0, 2 * n + 2, -1));
                }
                prod = prod.zmul(&two_term(order, -1, 2 * n + 1, 1));
                prod = prod.zmul(&two_term(order, 1, 2 * n + 1, 1));
                n += 1;
            }
            (sum, prod)
        }
    }
}

pub fn verify_jtp(order: i64, form: JtpForm) -> IdentityReport {
    let t = Instant::now();
    let (sum, prod) = jtp_sides(order, form);
    let id = match form {
        JtpForm::Odd => IdentityId::JtpOddForm,
        JtpForm::Even => IdentityId::JtpEvenForm,
    };
    bivariate_report(id, order, &sum, &prod, t)
}
