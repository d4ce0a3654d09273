//! The arithmetic-progression identity: the product
//! `prod (1+q^{nm})(1+q^{2nm-n(j+2)+2l})(1+q^{2nm+nj-2l}) /
//!  ((1-q^{nm})(1-q^{nm+l-n})^2(1-q^{nm-l})^2)`
//! equals `q^(-j(jn-2l+n)/2) sum_{k>=j} C(2k, j+k) A_{l,n,k}` where the
//! family runs over parts congruent to `±l` mod `n`.

use super::binom_sum;
use crate::macmahon::{agen_last_part_slices, family_table, AgenReading, FamilySpec};
use crate::products::ProductError;
use crate::series::Series;

/// Right-hand side of the identity under either congruence reading.
pub fn progression_rhs(
    ell: i64,
    n: i64,
    j: i64,
    order: i64,
    reading: AgenReading,
) -> Result<Series, ProductError> {
    if n < 1 || ell < 1 || ell >= n {
        return Err(ProductError::Domain(format!("need 1 <= l < n (got l={ell}, n={n})")));
    }
    if j < 0 {
        return Err(ProductError::Domain(format!("need j >= 0 (got j={j})")));
    }
    let shift = j * (j + 1) * n / 2 - j * ell;
    let n_eff = order + shift;
    let slices = match reading {
        AgenReading::AllParts => family_table(&FamilySpec::Agen { ell, modulus: n }, n_eff),
        AgenReading::LastPartOnly => {
            // the k smallest admissible tuples still satisfy
            // sum >= k(k+1)/2, which bounds the slice count
            let mut kmax = 0;
            while (kmax + 1) * (kmax + 2) / 2 <= n_eff {
                kmax += 1;
            }
            agen_last_part_slices(ell, n, kmax, n_eff)
        }
    };
    Ok(binom_sum(&slices, j).shift(-shift).truncate(order))
}
