//! Fraction-free (Bareiss) integer determinants.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Exact determinant of a square integer matrix given row-major.
pub fn det_bigint(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign_flip = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign_flip = !sign_flip;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                // Exact by Sylvester's identity.
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign_flip {
        -d
    } else {
        d
    }
}

/// Same elimination in `i128`; `None` on overflow.
pub fn det_i128(m: &[i128], n: usize) -> Option<i128> {
    if n == 0 {
        return Some(1);
    }
    let mut a = m.to_vec();
    let mut sign_flip = false;
    let mut prev: i128 = 1;
    for k in 0..n - 1 {
        if a[k * n + k] == 0 {
            let r = (k + 1..n).find(|&r| a[r * n + k] != 0)?;
            for j in 0..n {
                a.swap(k * n + j, r * n + j);
            }
            sign_flip = !sign_flip;
        }
        let pivot = a[k * n + k];
        for i in k + 1..n {
            let lead = a[i * n + k];
            for j in k + 1..n {
                let v = a[i * n + j]
                    .checked_mul(pivot)?
                    .checked_sub(lead.checked_mul(a[k * n + j])?)?;
                a[i * n + j] = v / prev;
            }
        }
        prev = pivot;
    }
    let d = a[n * n - 1];
    Some(if sign_flip { -d } else { d })
}

/// `det_i128` with a transparent `BigInt` fallback. A zero column makes
/// `det_i128` bail out early, so `None` from it is also re-run exactly.
pub fn det_small(m: &[i128], n: usize) -> BigInt {
    match det_i128(m, n) {
        Some(d) => BigInt::from(d),
        None => det_bigint(
            (0..n)
                .map(|i| (0..n).map(|j| BigInt::from(m[i * n + j])).collect())
                .collect(),
        ),
    }
}
