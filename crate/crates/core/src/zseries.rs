//! Laurent polynomials in a second variable `z` whose coefficients are
//! truncated `q`-series, used for the bivariate product-identity checks.
//!
//! Every stored slice is nonzero, has `q`-valuation >= 0, and shares the
//! common truncation order of the whole value. The `z`-support stays finite
//! automatically: slices whose `q`-window empties under truncation are
//! dropped, and in all identities handled here the `q`-exponent grows
//! quadratically with the `z`-exponent.

use crate::series::Series;
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZSeries {
    terms: BTreeMap<i64, Series>,
    order: i64,
}

impl ZSeries {
    /// The zero bivariate series at the given `q`-truncation order.
    pub fn zero(order: i64) -> Self {
        ZSeries { terms: BTreeMap::new(), order }
    }

    /// The constant 1.
    pub fn one(order: i64) -> Self {
        let mut z = ZSeries::zero(order);
        z.add_term(0, &Series::one());
        z
    }

    pub fn from_terms(order: i64, terms: impl IntoIterator<Item = (i64, Series)>) -> Self {
        let mut z = ZSeries::zero(order);
        for (j, s) in terms {
            z.add_term(j, &s);
        }
        z
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    /// Add `s * z^j`, truncating `s` to the common order.
    pub fn add_term(&mut self, j: i64, s: &Series) {
        let t = s.truncate(self.order);
        if t.is_zero() {
            return;
        }
        assert!(
            t.valuation().unwrap() >= 0,
            "ZSeries slices must have nonnegative q-valuation"
        );
        match self.terms.remove(&j) {
            None => {
                self.terms.insert(j, t);
            }
            Some(old) => {
                let sum = &old + &t;
                if !sum.is_zero() {
                    self.terms.insert(j, sum.truncate(self.order));
                }
            }
        }
    }

    /// The `q`-series at `z^j` (zero beyond the support).
    pub fn zcoeff(&self, j: i64) -> Series {
        self.terms.get(&j).cloned().unwrap_or_else(Series::zero)
    }

    /// Sorted `z`-exponents with nonzero slices.
    pub fn z_support(&self) -> Vec<i64> {
        self.terms.keys().copied().collect()
    }

    /// Distributive bivariate product at the common truncation order.
    pub fn zmul(&self, other: &ZSeries) -> ZSeries {
        assert_eq!(
            self.order, other.order,
            "cannot multiply ZSeries with different truncation orders"
        );
        let mut out = ZSeries::zero(self.order);
        for (j1, s1) in &self.terms {
            for (j2, s2) in &other.terms {
                let p = s1 * s2;
                if !p.is_zero() {
                    out.add_term(j1 + j2, &p);
                }
            }
        }
        out
    }

    /// Smallest mismatch as `(z_exponent, q_exponent)`, scanning slices in
    /// ascending `z` order up to `up_to` in `q`; `None` when all slices agree.
    pub fn first_mismatch(&self, other: &ZSeries, up_to: i64) -> Option<(i64, i64)> {
        let mut best: Option<(i64, i64)> = None;
        let keys: std::collections::BTreeSet<i64> =
            self.terms.keys().chain(other.terms.keys()).copied().collect();
        for j in keys {
            let a = self.zcoeff(j);
            let b = other.zcoeff(j);
            let cap = up_to.min(a.order()).min(b.order());
            if let Some(e) = a.first_mismatch(&b, cap).expect("cap bounded by orders") {
                best = match best {
                    None => Some((j, e)),
                    Some((_, be)) if e < be => Some((j, e)),
                    keep => keep,
                };
            }
        }
        best
    }
}
