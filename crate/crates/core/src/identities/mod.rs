//! Closed-formula identities: reciprocals of theta-type infinite products
//! expressed through binomial-weighted sums of MacMahon family series, with
//! one verifier per labeled identity.
//!
//! Where the source statements carry internal bookkeeping defects (a sign, a
//! summation-row index, or a shift/reciprocal attachment), both readings are
//! implemented: the adjudicated one that verifies exactly, and the printed
//! one kept behind an enum so its failure stays demonstrable.

mod jtp;
mod progression;
mod quintuple;
mod septuple;
mod verify;

pub use jtp::{jtp1_rhs, jtp2_rhs, JtpIndexForm};
pub use progression::progression_rhs;
pub use quintuple::{
    bounds_quin, quin_corollary_coeff, quin_lemma_partial, quin_theorem_rhs, QuinBounds,
    SignConvention,
};
pub use septuple::{
    bounds_sept, sept_corollary_coeff, sept_lemma_partial, sept_theorem_rhs, SeptBounds,
    SeptFormula, SeptTset, SeptVariant,
};
pub use verify::{default_order, verify, VerifyError};

use crate::num::binomial;
use crate::series::Series;

/// `sum_{s >= |alpha|} C(2s, s+alpha) F_s` over the computed family slices.
/// Slices are expected to extend as far as the working order requires
/// (`family_table` guarantees every `s` whose valuation fits is present).
pub(crate) fn binom_sum(slices: &[Series], alpha: i64) -> Series {
    let mut acc = Series::zero();
    for (s, f) in slices.iter().enumerate() {
        if f.is_zero() {
            continue;
        }
        let s = s as i64;
        let b = binomial(2 * s, s + alpha);
        if !num_traits::Zero::is_zero(&b) {
            acc = &acc + &f.scale(&b);
        }
    }
    acc
}

/// `q^(-k(k+1)/2) sum_{m>=k} C(2m+1, m+k+1) A_m`: the 3-colored-partition
/// reciprocal `1/(q;q)^3`.
pub fn os1_rhs(k: i64, order: i64) -> Series {
    assert!(k >= 0);
    let shift = k * (k + 1) / 2;
    let n_eff = order + shift;
    let table = crate::macmahon::family_table(&crate::macmahon::FamilySpec::A, n_eff);
    let mut acc = Series::zero();
    for (m, f) in table.iter().enumerate() {
        if f.is_zero() {
            continue;
        }
        let m = m as i64;
        let b = binomial(2 * m + 1, m + k + 1);
        if !num_traits::Zero::is_zero(&b) {
            acc = &acc + &f.scale(&b);
        }
    }
    acc.shift(-shift).truncate(order)
}

/// `q^(-k^2) sum_{m>=k} C(2m, m+k) C_m`: the overpartition reciprocal
/// `1/((q^2;q^2)(q;q^2)^2)`.
pub fn os2_rhs(k: i64, order: i64) -> Series {
    assert!(k >= 0);
    let shift = k * k;
    let n_eff = order + shift;
    let table = crate::macmahon::family_table(&crate::macmahon::FamilySpec::C, n_eff);
    binom_sum(&table, k).shift(-shift).truncate(order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::products::{pochhammer, ProductSpec, PochFactor};

    #[test]
    fn os1_matches_reciprocal() {
        let n = 60;
        let target = pochhammer(1, 1, n).pow(3).invert().unwrap();
        for k in 0..=3 {
            let rhs = os1_rhs(k, n);
            assert_eq!(rhs.first_mismatch(&target, n).unwrap(), None, "k={k}");
        }
    }

    #[test]
    fn os2_matches_reciprocal() {
        let n = 60;
        let target = ProductSpec::new(vec![
            PochFactor::new(2, 2, 1, 1),
            PochFactor::new(1, 2, 1, 2),
        ])
        .eval(n)
        .unwrap()
        .invert()
        .unwrap();
        for k in 0..=3 {
            let rhs = os2_rhs(k, n);
            assert_eq!(rhs.first_mismatch(&target, n).unwrap(), None, "k={k}");
        }
    }

    #[test]
    fn binom_sum_k0_constant() {
        // only the k = 0 slice survives at order 0
        let table = crate::macmahon::family_table(&crate::macmahon::FamilySpec::A, 0);
        let s = binom_sum(&table, 0);
        assert_eq!(s.coeff(0).unwrap(), num_bigint::BigInt::from(1));
        assert_eq!(s.order(), 0);
    }

    #[test]
    fn binom_sum_cutoff_is_stable() {
        // extending the slice table beyond the valuation cutoff adds nothing
        let n_eff = 30;
        let table = crate::macmahon::family_table(&crate::macmahon::FamilySpec::A, n_eff);
        let extended = crate::macmahon::family_gen(&crate::macmahon::FamilySpec::A, table.len() as i64 - 1 + 5, n_eff)
            .into_slices();
        for alpha in -4..=4 {
            let a = binom_sum(&table, alpha);
            let b = binom_sum(&extended, alpha);
            assert_eq!(a.first_mismatch(&b, n_eff).unwrap(), None, "alpha={alpha}");
        }
    }

    #[test]
    fn rhs_constructions_are_truncation_stable() {
        // every enumeration bound scales with the working order; recomputing
        // wider and truncating back must change nothing
        use super::*;
        let n = 18;
        for nn in [-1i64, 0, 2] {
            let a = quin_theorem_rhs(nn, n);
            let b = quin_theorem_rhs(nn, n + 5).truncate(n);
            assert_eq!(a, b, "quintuple n={nn}");
        }
        for v in [SeptVariant::ShiftN, SeptVariant::Shift3N] {
            let a = sept_theorem_rhs(v, 1, n, SeptTset::Corrected);
            let b = sept_theorem_rhs(v, 1, n + 5, SeptTset::Corrected).truncate(n);
            assert_eq!(a, b, "septuple {v:?}");
        }
        for (k, beta) in [(0i64, 1i64), (2, 2)] {
            let a = jtp1_rhs(k, beta, n, JtpIndexForm::Adjudicated);
            let b = jtp1_rhs(k, beta, n + 5, JtpIndexForm::Adjudicated).truncate(n);
            assert_eq!(a, b, "jtp1 k={k} beta={beta}");
            let a = jtp2_rhs(k, beta, n, JtpIndexForm::Adjudicated);
            let b = jtp2_rhs(k, beta, n + 5, JtpIndexForm::Adjudicated).truncate(n);
            assert_eq!(a, b, "jtp2 k={k} gamma={beta}");
        }
        let a = progression_rhs(2, 5, 1, n, crate::macmahon::AgenReading::AllParts).unwrap();
        let b = progression_rhs(2, 5, 1, n + 5, crate::macmahon::AgenReading::AllParts)
            .unwrap()
            .truncate(n);
        assert_eq!(a, b, "progression");
    }
}
