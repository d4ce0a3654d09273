//! One-cell verification dispatch: build the identity's two sides at the
//! requested parameters and truncation order, compare, and time the run.

use super::{
    jtp1_rhs, jtp2_rhs, os1_rhs, os2_rhs, progression_rhs,
    quin_corollary_coeff, quin_lemma_partial, quin_theorem_rhs, sept_corollary_coeff,
    sept_lemma_partial, sept_theorem_rhs, JtpIndexForm, SeptFormula, SeptTset, SeptVariant,
    SignConvention,
};
use crate::macmahon::AgenReading;
use crate::products::{
    recip_jtp1_target, recip_jtp2_target, recip_r14_f5, recip_r23_f5, progression_lhs,
    theta6_reciprocal, verify_jtp, verify_quintuple, verify_septuple, JtpForm, ProductError,
};
use crate::report::{IdentityId, IdentityReport, Outcome};
use crate::series::Series;
use std::collections::BTreeMap;
use std::time::Instant;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("{0}")]
    BadParams(String),
    #[error(transparent)]
    Domain(#[from] ProductError),
}

/// Default truncation order per identity (the order each statement is
/// routinely checked at).
pub fn default_order(id: IdentityId) -> i64 {
    match id {
        IdentityId::Os1 | IdentityId::Os2 => 100,
        IdentityId::ThmQuin => 60,
        IdentityId::LemQuin | IdentityId::LemSept14 | IdentityId::LemSept23 => 0, // per-cell
        IdentityId::CorQuin | IdentityId::CorSept14 | IdentityId::CorSept23 => 0, // per-cell
        IdentityId::ThmSept14 | IdentityId::ThmSept23 => 50,
        IdentityId::Jtp1 | IdentityId::Jtp2 => 50,
        IdentityId::Thm16 => 40,
        IdentityId::QuintupleProduct
        | IdentityId::SeptupleProduct
        | IdentityId::JtpOddForm
        | IdentityId::JtpEvenForm => 80,
    }
}

fn want(params: &BTreeMap<String, i64>, key: &str) -> Result<i64, VerifyError> {
    params
        .get(key)
        .copied()
        .ok_or_else(|| VerifyError::BadParams(format!("missing parameter '{key}'")))
}

fn exact_report(
    id: IdentityId,
    params: BTreeMap<String, i64>,
    order: i64,
    lhs: &Series,
    rhs: &Series,
    variant: Option<String>,
    started: Instant,
) -> IdentityReport {
    let cap = order.min(lhs.order()).min(rhs.order());
    let mm = lhs.first_mismatch(rhs, cap).expect("cap bounded by both orders");
    IdentityReport {
        identity: id,
        params,
        order,
        outcome: if mm.is_none() { Outcome::ExactToOrder } else { Outcome::Mismatch },
        first_mismatch: mm,
        millis: started.elapsed().as_millis(),
        variant,
    }
}

/// mismatch-beyond-`n` check for the lemma-level approximants
#[allow(clippy::too_many_arguments)]
fn claimed_report(
    id: IdentityId,
    params: BTreeMap<String, i64>,
    order: i64,
    n: i64,
    approximant: &Series,
    target: &Series,
    variant: Option<String>,
    started: Instant,
) -> IdentityReport {
    let mm = approximant.first_mismatch(target, order).expect("orders cover the scan");
    let valid = mm.is_none() || mm.unwrap() > n;
    IdentityReport {
        identity: id,
        params,
        order,
        outcome: if valid { Outcome::ValidToClaimedOrder } else { Outcome::Mismatch },
        first_mismatch: mm,
        millis: started.elapsed().as_millis(),
        variant,
    }
}

/// Verify one identity at one parameter cell. `order` falls back to the
/// identity's default; lemma/corollary cells derive their order from `n`.
pub fn verify(
    id: IdentityId,
    params: &BTreeMap<String, i64>,
    order: Option<i64>,
) -> Result<IdentityReport, VerifyError> {
    let t = Instant::now();
    let p = params.clone();
    let ord = order.unwrap_or_else(|| default_order(id));
    match id {
        IdentityId::Os1 => {
            let k = want(params, "k")?;
            if k < 0 {
                return Err(VerifyError::BadParams("k must be >= 0".into()));
            }
            let rhs = os1_rhs(k, ord);
            let target = crate::products::pochhammer(1, 1, ord).pow(3).invert().expect("unit");
            Ok(exact_report(id, p, ord, &rhs, &target, None, t))
        }
        IdentityId::Os2 => {
            let k = want(params, "k")?;
            if k < 0 {
                return Err(VerifyError::BadParams("k must be >= 0".into()));
            }
            let rhs = os2_rhs(k, ord);
            let target = recip_jtp2_target(0, ord);
            Ok(exact_report(id, p, ord, &rhs, &target, None, t))
        }
        IdentityId::ThmQuin => {
            let n = want(params, "n")?;
            let rhs = quin_theorem_rhs(n, ord);
            let target = theta6_reciprocal(ord);
            Ok(exact_report(id, p, ord, &rhs, &target, None, t))
        }
        IdentityId::LemQuin => {
            let n = want(params, "n")?;
            if n < 1 {
                return Err(VerifyError::BadParams("lemma needs n >= 1".into()));
            }
            let ord = order.unwrap_or(n + 5).max(n + 1);
            let partial = quin_lemma_partial(n, ord, SignConvention::Adjudicated);
            let target = theta6_reciprocal(ord);
            Ok(claimed_report(
                id,
                p,
                ord,
                n,
                &partial,
                &target,
                Some("sign (-1)^((n-k)/2)".into()),
                t,
            ))
        }
        IdentityId::CorQuin => {
            let n = want(params, "n")?;
            let m = want(params, "m")?;
            if n < 1 || m < 0 || m > n {
                return Err(VerifyError::BadParams("corollary needs 1 <= n, 0 <= m <= n".into()));
            }
            let got = quin_corollary_coeff(n, m, SignConvention::Adjudicated);
            let expect = theta6_reciprocal(m).coeff(m).expect("within order");
            let okay = got == expect;
            Ok(IdentityReport {
                identity: id,
                params: p,
                order: m,
                outcome: if okay { Outcome::ExactToOrder } else { Outcome::Mismatch },
                first_mismatch: if okay { None } else { Some(m) },
                millis: t.elapsed().as_millis(),
                variant: Some("sign (-1)^((n-k)/2)".into()),
            })
        }
        IdentityId::ThmSept14 | IdentityId::ThmSept23 => {
            let n = want(params, "n")?;
            let variant = if id == IdentityId::ThmSept14 {
                SeptVariant::ShiftN
            } else {
                SeptVariant::Shift3N
            };
            let rhs = sept_theorem_rhs(variant, n, ord, SeptTset::Corrected);
            let r14 = recip_r14_f5(ord);
            let r23 = recip_r23_f5(ord);
            let hit14 = rhs.first_mismatch(&r14, ord).expect("orders agree").is_none();
            let hit23 = rhs.first_mismatch(&r23, ord).expect("orders agree").is_none();
            let (target, name) = match (variant, hit14, hit23) {
                (SeptVariant::ShiftN, true, _) => (r14, "shift (5n^2-n)/2 -> 1/(R14*F5)"),
                (SeptVariant::Shift3N, _, true) => (r23, "shift (5n^2-3n)/2 -> 1/(R23*F5)"),
                (SeptVariant::ShiftN, _, _) => (r14, "shift (5n^2-n)/2 -> 1/(R14*F5)"),
                (SeptVariant::Shift3N, _, _) => (r23, "shift (5n^2-3n)/2 -> 1/(R23*F5)"),
            };
            Ok(exact_report(id, p, ord, &rhs, &target, Some(name.into()), t))
        }
        IdentityId::LemSept14 | IdentityId::LemSept23 => {
            let n = want(params, "n")?;
            if n < 2 {
                return Err(VerifyError::BadParams("lemma needs n >= 2".into()));
            }
            let ord = order.unwrap_or(n + 4).max(n + 1);
            let formula = if id == IdentityId::LemSept14 { SeptFormula::B14 } else { SeptFormula::B23 };
            let partial = sept_lemma_partial(formula, n, ord);
            let r14 = recip_r14_f5(ord);
            let r23 = recip_r23_f5(ord);
            let ok = |mm: Option<i64>| mm.is_none() || mm.unwrap() > n;
            let m14 = partial.first_mismatch(&r14, ord).expect("orders agree");
            let m23 = partial.first_mismatch(&r23, ord).expect("orders agree");
            let (target, mm, name) = if ok(m23) && !ok(m14) {
                (&r23, m23, "tracks 1/(R23*F5)")
            } else if ok(m14) && !ok(m23) {
                (&r14, m14, "tracks 1/(R14*F5)")
            } else {
                (&r14, m14, "tracks neither reciprocal")
            };
            let _ = target;
            Ok(IdentityReport {
                identity: id,
                params: p,
                order: ord,
                outcome: if ok(mm) { Outcome::ValidToClaimedOrder } else { Outcome::Mismatch },
                first_mismatch: mm,
                millis: t.elapsed().as_millis(),
                variant: Some(name.into()),
            })
        }
        IdentityId::CorSept14 | IdentityId::CorSept23 => {
            let n = want(params, "n")?;
            let m = want(params, "m")?;
            if n < 2 || m < 0 || m > n {
                return Err(VerifyError::BadParams("corollary needs 2 <= n, 0 <= m <= n".into()));
            }
            let formula = if id == IdentityId::CorSept14 { SeptFormula::B14 } else { SeptFormula::B23 };
            let got = sept_corollary_coeff(formula, n, m);
            // adjudicated attachment: the B14 values are the q-series of
            // 1/(R23*F5), the B23 values that of 1/(R14*F5)
            let (target, name) = match formula {
                SeptFormula::B14 => (recip_r23_f5(m), "coefficients of 1/(R23*F5)"),
                SeptFormula::B23 => (recip_r14_f5(m), "coefficients of 1/(R14*F5)"),
            };
            let expect = target.coeff(m).expect("within order");
            let okay = got == expect;
            Ok(IdentityReport {
                identity: id,
                params: p,
                order: m,
                outcome: if okay { Outcome::ExactToOrder } else { Outcome::Mismatch },
                first_mismatch: if okay { None } else { Some(m) },
                millis: t.elapsed().as_millis(),
                variant: Some(name.into()),
            })
        }
        IdentityId::Jtp1 => {
            let k = want(params, "k")?;
            let beta = want(params, "beta")?;
            if k < 0 || beta < 0 {
                return Err(VerifyError::BadParams("need k >= 0 and beta >= 0".into()));
            }
            let rhs = jtp1_rhs(k, beta, ord, JtpIndexForm::Adjudicated);
            let target = recip_jtp1_target(beta, ord);
            Ok(exact_report(
                id,
                p,
                ord,
                &rhs,
                &target,
                Some("rows {k, k+1}, shift k(k+1)/2+2bk+b(2b+1)".into()),
                t,
            ))
        }
        IdentityId::Jtp2 => {
            let k = want(params, "k")?;
            let gamma = want(params, "gamma")?;
            if k < 0 || gamma < 0 {
                return Err(VerifyError::BadParams("need k >= 0 and gamma >= 0".into()));
            }
            let rhs = jtp2_rhs(k, gamma, ord, JtpIndexForm::Adjudicated);
            let target = recip_jtp2_target(gamma, ord);
            Ok(exact_report(
                id,
                p,
                ord,
                &rhs,
                &target,
                Some("parity-split prefactor polynomial".into()),
                t,
            ))
        }
        IdentityId::Thm16 => {
            let ell = want(params, "l")?;
            let n = want(params, "n")?;
            let j = want(params, "j")?;
            let lhs = progression_lhs(ell, n, j, ord)?;
            let rhs = progression_rhs(ell, n, j, ord, AgenReading::AllParts)?;
            Ok(exact_report(
                id,
                p,
                ord,
                &lhs,
                &rhs,
                Some("all-parts congruence reading".into()),
                t,
            ))
        }
        IdentityId::QuintupleProduct => Ok(with_params(verify_quintuple(ord), p)),
        IdentityId::SeptupleProduct => Ok(with_params(verify_septuple(ord), p)),
        IdentityId::JtpOddForm => Ok(with_params(verify_jtp(ord, JtpForm::Odd), p)),
        IdentityId::JtpEvenForm => Ok(with_params(verify_jtp(ord, JtpForm::Even), p)),
    }
}

fn with_params(mut r: IdentityReport, p: BTreeMap<String, i64>) -> IdentityReport {
    r.params = p;
    r
}
