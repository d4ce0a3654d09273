//! Exact truncated Laurent series in `q` over arbitrary-precision integers.
//!
//! A [`Series`] stores a dense coefficient window from its valuation up to an
//! inclusive truncation `order`; every retained coefficient is exact. Binary
//! operations propagate the largest exponent that is still fully determined
//! and never report coefficients beyond it.
//!
//! Exact Laurent polynomials (literals, monomials, finite products kept
//! without truncation) carry the sentinel order [`EXACT`]; the canonical zero
//! series is the empty window with order [`EXACT`], so that `f + 0 = f` holds
//! at `f`'s own order.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

/// Sentinel truncation order for series known exactly at every exponent.
pub const EXACT: i64 = i64::MAX;

/// Add an exponent offset to an order, keeping [`EXACT`] absorbing.
pub(crate) fn ord_add(order: i64, delta: i64) -> i64 {
    if order == EXACT {
        EXACT
    } else {
        order + delta
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeriesError {
    #[error("cannot invert the zero series")]
    InvertZero,
    #[error("leading coefficient {leading} at q^{valuation} is not +1 or -1; the inverse is not integral")]
    NotUnit { leading: BigInt, valuation: i64 },
    #[error("inverting an exact multi-term polynomial needs a finite truncation order")]
    UnboundedInverse,
    #[error("coefficient of q^{requested} lies beyond truncation order {order}")]
    BeyondOrder { requested: i64, order: i64 },
    #[error("mismatch scan up to q^{requested} exceeds truncation order {order}")]
    ScanBeyondOrder { requested: i64, order: i64 },
}

/// Truncated Laurent series with exact integer coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Series {
    valuation: i64,
    order: i64,
    /// Dense window: `coeffs[i]` is the coefficient of `q^(valuation + i)`.
    /// Empty iff this is the zero series. For finite order the window spans
    /// `valuation ..= order`; for EXACT series it spans the support.
    coeffs: Vec<BigInt>,
}

impl Series {
    /// The canonical zero series (exact at every order).
    pub fn zero() -> Self {
        Series { valuation: 0, order: EXACT, coeffs: Vec::new() }
    }

    /// The constant series 1 (exact).
    pub fn one() -> Self {
        Series::constant(1)
    }

    /// An exact constant.
    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        Series::monomial(c, 0)
    }

    /// An exact monomial `c * q^exp`.
    pub fn monomial<T: Into<BigInt>>(c: T, exp: i64) -> Self {
        let c = c.into();
        if c.is_zero() {
            Series::zero()
        } else {
            Series { valuation: exp, order: EXACT, coeffs: vec![c] }
        }
    }

    /// Build a series from a coefficient window starting at `valuation`,
    /// truncated to `order`. Coefficients beyond `order` are discarded;
    /// the result is normalized (nonzero leading coefficient or canonical zero).
    pub fn from_window(valuation: i64, coeffs: Vec<BigInt>, order: i64) -> Self {
        Series::normalized(valuation, coeffs, order)
    }

    fn normalized(mut valuation: i64, mut coeffs: Vec<BigInt>, order: i64) -> Self {
        if order != EXACT {
            if order < valuation {
                return Series::zero();
            }
            let keep = (order - valuation + 1) as usize;
            coeffs.truncate(keep);
        }
        let lead = coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => Series::zero(),
            Some(k) => {
                coeffs.drain(..k);
                valuation += k as i64;
                if order == EXACT {
                    while coeffs.last().is_some_and(|c| c.is_zero()) {
                        coeffs.pop();
                    }
                } else {
                    let want = (order - valuation + 1) as usize;
                    coeffs.resize(want, BigInt::zero());
                }
                Series { valuation, order, coeffs }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `true` when every coefficient is known (exact polynomial or zero).
    pub fn is_exact(&self) -> bool {
        self.order == EXACT
    }

    /// Smallest exponent with nonzero coefficient; `None` for the zero series.
    pub fn valuation(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.valuation)
        }
    }

    /// Inclusive truncation order ([`EXACT`] for exact polynomials and zero).
    pub fn order(&self) -> i64 {
        self.order
    }

    /// Exact coefficient of `q^m`. Zero below the valuation, an error beyond
    /// the truncation order (unknown coefficients are never reported as 0).
    pub fn coeff(&self, m: i64) -> Result<BigInt, SeriesError> {
        if m > self.order {
            return Err(SeriesError::BeyondOrder { requested: m, order: self.order });
        }
        Ok(self.coeff_known(m))
    }

    /// Coefficient of `q^m` assuming `m` is within the determined range.
    fn coeff_known(&self, m: i64) -> BigInt {
        if m < self.valuation {
            return BigInt::zero();
        }
        let idx = (m - self.valuation) as usize;
        self.coeffs.get(idx).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Iterate `(exponent, coefficient)` over nonzero retained terms.
    pub fn iter_terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        let v = self.valuation;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (v + i as i64, c))
    }

    /// Restrict to truncation order `m` (never extends knowledge).
    /// Truncating below the valuation yields the canonical zero series,
    /// which is exact by convention.
    pub fn truncate(&self, m: i64) -> Series {
        if self.is_zero() || m >= self.order {
            return self.clone();
        }
        Series::normalized(self.valuation, self.coeffs.clone(), m)
    }

    /// Multiply by `q^m`: translates valuation and order, coefficients unchanged.
    pub fn shift(&self, m: i64) -> Series {
        if self.is_zero() {
            return Series::zero();
        }
        Series {
            valuation: self.valuation + m,
            order: ord_add(self.order, m),
            coeffs: self.coeffs.clone(),
        }
    }

    /// Multiplicative inverse over the integers.
    ///
    /// Requires a nonzero series whose leading coefficient is +1 or -1. The
    /// result has valuation `-v` and order `order - 2v` (coefficients of the
    /// inverse beyond that are not determined by the retained window), and is
    /// computed by the linear recurrence on coefficients.
    pub fn invert(&self) -> Result<Series, SeriesError> {
        if self.is_zero() {
            return Err(SeriesError::InvertZero);
        }
        let v = self.valuation;
        let lead = &self.coeffs[0];
        if !(lead.magnitude().is_one()) {
            return Err(SeriesError::NotUnit { leading: lead.clone(), valuation: v });
        }
        if self.order == EXACT {
            if self.coeffs.len() == 1 {
                return Ok(Series::monomial(lead.clone(), -v));
            }
            return Err(SeriesError::UnboundedInverse);
        }
        // Inverse of the unit part g = q^{-v} f, then shift by -v again.
        let len = (self.order - v + 1) as usize; // exponents 0 ..= order - v of 1/g
        let mut inv = vec![BigInt::zero(); len];
        inv[0] = lead.clone(); // 1/lead = lead for lead = ±1
        for n in 1..len {
            let mut acc = BigInt::zero();
            for k in 1..=n {
                let gk = &self.coeffs[k];
                if !gk.is_zero() && !inv[n - k].is_zero() {
                    acc += gk * &inv[n - k];
                }
            }
            if !acc.is_zero() {
                inv[n] = -(lead * acc);
            }
        }
        Ok(Series::normalized(-v, inv, self.order - 2 * v))
    }

    /// Multiply every coefficient by an integer scalar.
    pub fn scale(&self, c: &BigInt) -> Series {
        if c.is_zero() || self.is_zero() {
            return Series::zero();
        }
        Series {
            valuation: self.valuation,
            order: self.order,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// `self` raised to a nonnegative power.
    pub fn pow(&self, e: u32) -> Series {
        let mut acc = Series::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Smallest exponent `<= up_to` where the two series differ, or `None`.
    /// Errors if `up_to` exceeds either truncation order.
    pub fn first_mismatch(&self, other: &Series, up_to: i64) -> Result<Option<i64>, SeriesError> {
        for (ord, _) in [(self.order, 0), (other.order, 1)] {
            if up_to > ord {
                return Err(SeriesError::ScanBeyondOrder { requested: up_to, order: ord });
            }
        }
        let lo = match (self.valuation(), other.valuation()) {
            (None, None) => return Ok(None),
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (Some(a), Some(b)) => a.min(b),
        };
        for m in lo..=up_to {
            if self.coeff_known(m) != other.coeff_known(m) {
                return Ok(Some(m));
            }
        }
        Ok(None)
    }

    /// Reference multiplication path: truncated schoolbook convolution.
    /// Kept alongside the dispatching [`Mul`] so the two can be compared
    /// bit-for-bit on the full test suite.
    pub fn mul_naive(&self, other: &Series) -> Series {
        self.mul_impl(other, true)
    }

    fn mul_impl(&self, other: &Series, force_naive: bool) -> Series {
        if self.is_zero() || other.is_zero() {
            return Series::zero();
        }
        let v = self.valuation + other.valuation;
        let order = ord_add(self.order, other.valuation).min(ord_add(other.order, self.valuation));
        let keep = if order == EXACT {
            self.coeffs.len() + other.coeffs.len() - 1
        } else {
            (order - v + 1) as usize
        };
        let a = &self.coeffs[..self.coeffs.len().min(keep)];
        let b = &other.coeffs[..other.coeffs.len().min(keep)];
        let prod = if force_naive {
            convolve_naive(a, b, keep)
        } else {
            convolve(a, b, keep)
        };
        Series::normalized(v, prod, order)
    }
}

const KARATSUBA_CUTOFF: usize = 48;

/// Truncated schoolbook convolution: first `keep` coefficients of `a * b`.
/// The operand with fewer nonzero terms drives the outer loop, so products
/// against sparse factors (Pochhammer terms, part weights) cost
/// O(nonzeros * dense length) rather than O(len * len).
fn convolve_naive(a: &[BigInt], b: &[BigInt], keep: usize) -> Vec<BigInt> {
    let nnz = |s: &[BigInt]| s.iter().filter(|c| !c.is_zero()).count();
    let (outer, inner) = if nnz(a) <= nnz(b) { (a, b) } else { (b, a) };
    let len = keep.min(a.len() + b.len() - 1);
    let mut out = vec![BigInt::zero(); len];
    for (i, oi) in outer.iter().enumerate() {
        if i >= len {
            break;
        }
        if oi.is_zero() {
            continue;
        }
        for (j, ij) in inner.iter().enumerate() {
            if i + j >= len {
                break;
            }
            if !ij.is_zero() {
                out[i + j] += oi * ij;
            }
        }
    }
    out
}

fn convolve(a: &[BigInt], b: &[BigInt], keep: usize) -> Vec<BigInt> {
    let nnz = |s: &[BigInt]| s.iter().filter(|c| !c.is_zero()).count();
    if a.len().min(b.len()) <= KARATSUBA_CUTOFF || nnz(a).min(nnz(b)) <= KARATSUBA_CUTOFF {
        return convolve_naive(a, b, keep);
    }
    let mut out = karatsuba(a, b);
    out.truncate(keep);
    out
}

fn slice_add(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o += s;
    }
    out
}

/// Full product of two coefficient slices by Karatsuba splitting.
fn karatsuba(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    if a.len().min(b.len()) <= KARATSUBA_CUTOFF {
        return convolve_naive(a, b, a.len() + b.len() - 1);
    }
    let m = a.len().max(b.len()).div_ceil(2);
    let (a0, a1) = a.split_at(m.min(a.len()));
    let (b0, b1) = b.split_at(m.min(b.len()));
    let z0 = karatsuba(a0, b0);
    let z2 = karatsuba(a1, b1);
    // mid = (a0+a1)(b0+b1) - z0 - z2 = a0*b1 + a1*b0; its support fits the
    // output even when z1 alone is longer (the excess cancels exactly).
    let mut mid = karatsuba(&slice_add(a0, a1), &slice_add(b0, b1));
    for (i, c) in z0.iter().enumerate() {
        mid[i] -= c;
    }
    for (i, c) in z2.iter().enumerate() {
        mid[i] -= c;
    }

    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, c) in z0.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in mid.iter().enumerate() {
        if !c.is_zero() {
            out[m + i] += c;
        }
    }
    for (i, c) in z2.iter().enumerate() {
        out[2 * m + i] += c;
    }
    out
}

impl Add for &Series {
    type Output = Series;
    fn add(self, other: &Series) -> Series {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let order = self.order.min(other.order);
        let v = self.valuation.min(other.valuation);
        let hi = if order == EXACT {
            (self.valuation + self.coeffs.len() as i64 - 1)
                .max(other.valuation + other.coeffs.len() as i64 - 1)
        } else {
            order
        };
        if hi < v {
            return Series::zero();
        }
        let mut out = vec![BigInt::zero(); (hi - v + 1) as usize];
        for f in [self, other] {
            for (i, c) in f.coeffs.iter().enumerate() {
                let e = f.valuation + i as i64;
                if e > hi {
                    break;
                }
                out[(e - v) as usize] += c;
            }
        }
        Series::normalized(v, out, order)
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, other: &Series) -> Series {
        self + &(-other)
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        Series {
            valuation: self.valuation,
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, other: &Series) -> Series {
        self.mul_impl(other, false)
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.iter_terms() {
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.magnitude();
            match e {
                0 => write!(f, "{mag}")?,
                1 if mag.is_one() => write!(f, "q")?,
                1 => write!(f, "{mag}*q")?,
                _ if mag.is_one() => write!(f, "q^{e}")?,
                _ => write!(f, "{mag}*q^{e}")?,
            }
        }
        if first {
            // all retained coefficients are zero but the series is nonzero: impossible
            write!(f, "0")?;
        }
        if self.order != EXACT {
            write!(f, " + O(q^{})", self.order + 1)?;
        }
        Ok(())
    }
}
