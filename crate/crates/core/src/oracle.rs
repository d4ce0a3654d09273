//! Independent brute-force enumerators for every combinatorial quantity the
//! analytic pipelines compute. Slow by design; the enumeration caps are hard
//! errors so a silently under-enumerated oracle can never poison a test.

use crate::macmahon::{AgenReading, FamilySpec};
use crate::series::Series;
use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

/// Documented enumeration caps.
pub const M_ORACLE_MAX_K: i64 = 4;
pub const M_ORACLE_MAX_N: i64 = 30;
pub const COLORED_MAX_N: i64 = 60;
pub const P_PAIR_MAX_K: i64 = 6;
pub const NESTED_MAX_K: i64 = 4;
pub const NESTED_MAX_ORDER: i64 = 40;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("enumeration cap exceeded: {0}")]
    CapExceeded(String),
}

fn check(ok: bool, what: &str) -> Result<(), OracleError> {
    if ok {
        Ok(())
    } else {
        Err(OracleError::CapExceeded(what.to_string()))
    }
}

/// Number of weighted k-tuples `0 < t_1 < ... < t_k`, `m_i >= 1`, with
/// `sum m_i t_i = n`, each counted with weight `m_1 ... m_k` (the
/// coefficient of `q^n` in the k-th all-parts family series).
pub fn m_oracle(k: i64, n: i64) -> Result<BigInt, OracleError> {
    check(k >= 0 && (0..=M_ORACLE_MAX_N).contains(&n) && k <= M_ORACLE_MAX_K, "m_oracle")?;
    Ok(weighted_tuples(k, n, 1, |t| t + 1))
}

/// Same count over odd part sizes (the odd-parts family coefficient).
pub fn modd_oracle(k: i64, n: i64) -> Result<BigInt, OracleError> {
    check(k >= 0 && (0..=M_ORACLE_MAX_N).contains(&n) && k <= M_ORACLE_MAX_K, "modd_oracle")?;
    Ok(weighted_tuples(k, n, 1, |t| t + 2))
}

fn weighted_tuples(k: i64, n: i64, t_min: i64, next: impl Fn(i64) -> i64 + Copy) -> BigInt {
    if k == 0 {
        return if n == 0 { BigInt::from(1) } else { BigInt::zero() };
    }
    let mut acc = BigInt::zero();
    let mut t = t_min;
    while t <= n {
        let mut m = 1i64;
        while m * t <= n {
            let rest = weighted_tuples(k - 1, n - m * t, next(t), next);
            if !rest.is_zero() {
                acc += BigInt::from(m) * rest;
            }
            m += 1;
        }
        t = next(t);
    }
    acc
}

/// Partitions of `n` with parts in three colors, counted exhaustively.
pub fn p3_oracle(n: i64) -> Result<BigInt, OracleError> {
    check((0..=COLORED_MAX_N).contains(&n), "p3_oracle")?;
    // multisets over (part, color) with colors ordered within a part size
    fn count(n: i64, part: i64, memo: &mut Vec<Vec<Option<BigInt>>>) -> BigInt {
        if n == 0 {
            return BigInt::from(1);
        }
        if part == 0 {
            return BigInt::zero();
        }
        if let Some(v) = &memo[n as usize][part as usize] {
            return v.clone();
        }
        // choose how many copies of `part` in each of the three colors
        let mut acc = BigInt::zero();
        let mut a = 0;
        while a * part <= n {
            let mut b = 0;
            while (a + b) * part <= n {
                let mut c = 0;
                while (a + b + c) * part <= n {
                    acc += count(n - (a + b + c) * part, part - 1, memo);
                    c += 1;
                }
                b += 1;
            }
            a += 1;
        }
        memo[n as usize][part as usize] = Some(acc.clone());
        acc
    }
    let mut memo = vec![vec![None; (n + 1) as usize]; (n + 1) as usize];
    Ok(count(n, n, &mut memo))
}

/// Overpartitions of `n`: the final occurrence of each part size may be
/// overlined, so each used part size contributes a factor 2.
pub fn overp_oracle(n: i64) -> Result<BigInt, OracleError> {
    check((0..=COLORED_MAX_N).contains(&n), "overp_oracle")?;
    fn count(n: i64, part: i64, memo: &mut Vec<Vec<Option<BigInt>>>) -> BigInt {
        if n == 0 {
            return BigInt::from(1);
        }
        if part == 0 {
            return BigInt::zero();
        }
        if let Some(v) = &memo[n as usize][part as usize] {
            return v.clone();
        }
        let mut acc = count(n, part - 1, memo);
        let mut copies = 1;
        while copies * part <= n {
            acc += BigInt::from(2) * count(n - copies * part, part - 1, memo);
            copies += 1;
        }
        memo[n as usize][part as usize] = Some(acc.clone());
        acc
    }
    let mut memo = vec![vec![None; (n + 1) as usize]; (n + 1) as usize];
    Ok(count(n, n, &mut memo))
}

/// Pairs `(lambda, mu)` of distinct-part partitions with parts from
/// `{1..k}`, total size `n`, part-count difference `m`.
pub fn p_pair_oracle(k: i64, n: i64, m: i64) -> Result<BigInt, OracleError> {
    check((0..=P_PAIR_MAX_K).contains(&k), "p_pair_oracle")?;
    let mut acc = BigInt::zero();
    for lam in 0u32..(1 << k) {
        for mu in 0u32..(1 << k) {
            let size = |s: u32| -> i64 {
                (0..k).filter(|i| s >> i & 1 == 1).map(|i| i + 1).sum()
            };
            let cnt = |s: u32| s.count_ones() as i64;
            if size(lam) + size(mu) == n && cnt(lam) - cnt(mu) == m {
                acc += 1;
            }
        }
    }
    Ok(acc)
}

/// Literal term-by-term expansion of a family's nested-sum definition:
/// enumerate part tuples and expand `q^(sum t_i) / prod (1-q^(t_i))^2`.
pub fn nested_family_oracle(
    spec: &FamilySpec,
    k: i64,
    order: i64,
) -> Result<Series, OracleError> {
    check(
        (0..=NESTED_MAX_K).contains(&k) && (0..=NESTED_MAX_ORDER).contains(&order),
        "nested_family_oracle",
    )?;
    let parts = spec.parts_up_to(order);
    let mut acc = Series::zero();
    let mut chosen = Vec::new();
    sum_over_tuples(&parts, 0, k, 0, order, &mut chosen, &mut acc);
    Ok(acc.truncate(order))
}

fn sum_over_tuples(
    parts: &[i64],
    from: usize,
    remaining: i64,
    val: i64,
    order: i64,
    chosen: &mut Vec<i64>,
    acc: &mut Series,
) {
    if remaining == 0 {
        *acc = &*acc + &tuple_term(chosen, order);
        return;
    }
    for i in from..parts.len() {
        let p = parts[i];
        // the remaining slots must each hold a strictly larger part
        if val + p > order {
            break;
        }
        chosen.push(p);
        sum_over_tuples(parts, i + 1, remaining - 1, val + p, order, chosen, acc);
        chosen.pop();
    }
}

fn tuple_term(parts: &[i64], order: i64) -> Series {
    let mut term = Series::one().truncate(order);
    for &p in parts {
        let geom_sq = (&Series::one() - &Series::monomial(1, p))
            .truncate(order)
            .invert()
            .expect("unit")
            .pow(2);
        term = &term * &geom_sq.shift(p).truncate(order);
    }
    term
}

/// Nested-sum expansion of the progression family under either congruence
/// reading.
pub fn nested_agen_oracle(
    ell: i64,
    modulus: i64,
    k: i64,
    order: i64,
    reading: AgenReading,
) -> Result<Series, OracleError> {
    check(
        (0..=NESTED_MAX_K).contains(&k) && (0..=NESTED_MAX_ORDER).contains(&order) && modulus >= 1,
        "nested_agen_oracle",
    )?;
    match reading {
        AgenReading::AllParts => {
            nested_family_oracle(&FamilySpec::Agen { ell, modulus }, k, order)
        }
        AgenReading::LastPartOnly => {
            let spec = FamilySpec::Agen { ell, modulus };
            let all: Vec<i64> = (1..=order).collect();
            let in_set = |p: i64| spec.contains(p);
            let mut acc = Series::zero();
            let mut chosen = Vec::new();
            // enumerate tuples over all parts, keep those whose top part is admissible
            #[allow(clippy::too_many_arguments)]
            fn rec(
                parts: &[i64],
                from: usize,
                remaining: i64,
                val: i64,
                order: i64,
                chosen: &mut Vec<i64>,
                acc: &mut Series,
                in_set: &dyn Fn(i64) -> bool,
            ) {
                if remaining == 0 {
                    if chosen.last().map(|&p| in_set(p)).unwrap_or(true) {
                        *acc = &*acc + &tuple_term(chosen, order);
                    }
                    return;
                }
                for i in from..parts.len() {
                    let p = parts[i];
                    if val + p > order {
                        break;
                    }
                    chosen.push(p);
                    rec(parts, i + 1, remaining - 1, val + p, order, chosen, acc, in_set);
                    chosen.pop();
                }
            }
            rec(&all, 0, k, 0, order, &mut chosen, &mut acc, &in_set);
            Ok(acc.truncate(order))
        }
    }
}

/// Literal reading of the shifted odd family's printed definition: parts
/// `2 m_i + gamma + 1` with `m_i` strictly increasing and numerator
/// `q^(sum m_i + k (gamma+1))`. Retained for comparison; it does not reduce
/// to the odd-parts family at `gamma = 0`.
pub fn nested_d_printed_oracle(gamma: i64, k: i64, order: i64) -> Result<Series, OracleError> {
    fn numerator_exp(m: i64, gamma: i64) -> i64 {
        m + gamma + 1
    }
    check(
        (0..=NESTED_MAX_K).contains(&k) && (0..=NESTED_MAX_ORDER).contains(&order) && gamma >= 0,
        "nested_d_printed_oracle",
    )?;
    fn rec(m_min: i64, remaining: i64, num: i64, gamma: i64, order: i64, term_parts: &mut Vec<(i64, i64)>, acc: &mut Series) {
        if remaining == 0 {
            let mut term = Series::one().truncate(order);
            let mut shift = 0;
            for &(numer, denom) in term_parts.iter() {
                shift += numer;
                let g = (&Series::one() - &Series::monomial(1, denom))
                    .truncate(order)
                    .invert()
                    .expect("unit")
                    .pow(2);
                term = &term * &g;
            }
            *acc = &*acc + &term.shift(shift).truncate(order);
            return;
        }
        let mut m = m_min;
        while num + numerator_exp(m, gamma) <= order {
            term_parts.push((numerator_exp(m, gamma), 2 * m + gamma + 1));
            rec(m + 1, remaining - 1, num + m + gamma + 1, gamma, order, term_parts, acc);
            term_parts.pop();
            m += 1;
        }
    }
    let mut acc = Series::zero();
    let mut parts = Vec::new();
    rec(1, k, 0, gamma, order, &mut parts, &mut acc);
    Ok(acc.truncate(order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::macmahon::family_series;

    #[test]
    fn m_oracle_values() {
        assert_eq!(m_oracle(1, 6).unwrap(), BigInt::from(12)); // sigma(6)
        assert_eq!(m_oracle(0, 0).unwrap(), BigInt::from(1));
        assert_eq!(m_oracle(0, 5).unwrap(), BigInt::from(0));
        for k in 1..=4 {
            assert_eq!(m_oracle(k, k * (k + 1) / 2).unwrap(), BigInt::from(1));
        }
        assert!(m_oracle(5, 10).is_err());
        assert!(m_oracle(2, 31).is_err());
    }

    #[test]
    fn modd_oracle_values() {
        assert_eq!(modd_oracle(1, 3).unwrap(), BigInt::from(4)); // 3*1 and 1*3
        assert_eq!(modd_oracle(0, 0).unwrap(), BigInt::from(1));
        for k in 1..=4 {
            assert_eq!(modd_oracle(k, k * k).unwrap(), BigInt::from(1));
        }
    }

    #[test]
    fn colored_and_overpartition_sequences() {
        let p3: Vec<i64> = (0..5).map(|n| i64::try_from(&p3_oracle(n).unwrap()).unwrap()).collect();
        assert_eq!(p3, [1, 3, 9, 22, 51]);
        let op: Vec<i64> =
            (0..5).map(|n| i64::try_from(&overp_oracle(n).unwrap()).unwrap()).collect();
        assert_eq!(op, [1, 2, 4, 8, 14]);
        assert!(p3_oracle(61).is_err());
    }

    #[test]
    fn p_pair_values() {
        assert_eq!(p_pair_oracle(2, 3, 0).unwrap(), BigInt::from(2));
        for k in 0..=6 {
            assert_eq!(p_pair_oracle(k, 0, 0).unwrap(), BigInt::from(1));
            let mut total = BigInt::zero();
            for n in 0..=(k * (k + 1)) {
                for m in -k..=k {
                    total += p_pair_oracle(k, n, m).unwrap();
                }
            }
            assert_eq!(total, BigInt::from(4).pow(k as u32));
        }
        assert!(p_pair_oracle(7, 0, 0).is_err());
    }

    #[test]
    fn nested_oracle_matches_product_path() {
        for spec in [
            FamilySpec::A,
            FamilySpec::C,
            FamilySpec::B { beta: 1 },
            FamilySpec::D { gamma: 2 },
            FamilySpec::Agen { ell: 1, modulus: 3 },
        ] {
            for k in 0..=3 {
                let n = 25;
                let nested = nested_family_oracle(&spec, k, n).unwrap();
                let product = family_series(&spec, k, n);
                assert_eq!(
                    nested.first_mismatch(&product, n).unwrap(),
                    None,
                    "{spec:?} k={k}"
                );
            }
        }
    }

    #[test]
    fn nested_oracle_examples() {
        let a1 = nested_family_oracle(&FamilySpec::A, 1, 10).unwrap();
        assert_eq!(a1.coeff(1).unwrap(), BigInt::from(1));
        assert_eq!(a1.coeff(2).unwrap(), BigInt::from(3));
        assert_eq!(a1.coeff(3).unwrap(), BigInt::from(4));
        let a2 = nested_family_oracle(&FamilySpec::A, 2, 5).unwrap();
        assert_eq!(a2.valuation(), Some(3));
        assert_eq!(a2.coeff(4).unwrap(), BigInt::from(3));
        let c1 = nested_family_oracle(&FamilySpec::C, 1, 5).unwrap();
        assert_eq!(c1.coeff(1).unwrap(), BigInt::from(1));
        assert_eq!(c1.coeff(2).unwrap(), BigInt::from(2));
        assert_eq!(c1.coeff(3).unwrap(), BigInt::from(4));
    }

    #[test]
    fn d_printed_reading_fails_gamma0_reduction() {
        let printed = nested_d_printed_oracle(0, 1, 12).unwrap();
        let c1 = family_series(&FamilySpec::C, 1, 12);
        // the printed numerator convention starts at q^2, the odd family at q
        assert_eq!(printed.valuation(), Some(2));
        assert_eq!(printed.first_mismatch(&c1, 12).unwrap(), Some(1));
    }

    #[test]
    fn agen_reading_comparison() {
        let all = nested_agen_oracle(1, 3, 2, 12, AgenReading::AllParts).unwrap();
        let last = nested_agen_oracle(1, 3, 2, 12, AgenReading::LastPartOnly).unwrap();
        assert_eq!(all.first_mismatch(&last, 12).unwrap(), Some(7));
        let product = family_series(&FamilySpec::Agen { ell: 1, modulus: 3 }, 2, 12);
        assert_eq!(all.first_mismatch(&product, 12).unwrap(), None);
    }
}
