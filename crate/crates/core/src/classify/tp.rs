use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;

use super::ClassifyError;
use crate::symfunc::{det_bigint, det_i128, det_small, IntegerSeries};

/// Largest minor size scanned by [`totally_positive_upto`].
pub const MAX_TP_ORDER: usize = 6;

/// A negative minor of the Toeplitz matrix `(a_{i-j})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorWitness {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub value: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TotalPositivity {
    /// Every scanned minor is non-negative.
    Holds,
    Violated(MinorWitness),
}

impl TotalPositivity {
    pub fn holds(&self) -> bool {
        matches!(self, TotalPositivity::Holds)
    }
}

/// Default index window for a series: `K + 1` for a truncated series, and
/// `order · (K + 1)` (at least `K + 1`) for a finite one.
pub fn default_window(a: &IntegerSeries, order: usize) -> usize {
    let len = a.horizon() + 1;
    if a.is_truncated() {
        len
    } else {
        (order * len).max(len)
    }
}

/// Checks every `k × k` minor, `k ≤ order`, of the Toeplitz matrix
/// `(a_{i-j})` restricted to indices `0..window` (see [`default_window`]).
pub fn totally_positive_upto(
    a: &IntegerSeries,
    order: usize,
) -> Result<TotalPositivity, ClassifyError> {
    totally_positive_window(a, order, default_window(a, order))
}

/// Minors of `(a_{i-j})_{0 ≤ i,j < window}` up to size `order`. The first
/// violation in (size, rows, columns) lexicographic order is reported.
pub fn totally_positive_window(
    a: &IntegerSeries,
    order: usize,
    window: usize,
) -> Result<TotalPositivity, ClassifyError> {
    if order > MAX_TP_ORDER {
        return Err(ClassifyError::OrderTooLarge { order, max: MAX_TP_ORDER });
    }
    if window == 0 {
        return Ok(TotalPositivity::Holds);
    }
    a.require(window - 1).map_err(ClassifyError::Series)?;
    let coeffs: Vec<BigInt> = (0..window)
        .map(|n| a.get(n as i64).expect("within horizon"))
        .collect();
    let small: Option<Vec<i128>> = coeffs.iter().map(ToPrimitive::to_i128).collect();

    for k in 1..=order.min(window) {
        let sets = subsets(window, k);
        // Translation invariance: only minors touching index 0 matter, so
        // a row set not starting at 0 pairs with column sets that do.
        let anchored = sets.partition_point(|s| s[0] == 0);
        let found = sets.par_iter().find_map_first(|rows| {
            let cols_range = if rows[0] == 0 { &sets[..] } else { &sets[..anchored] };
            for cols in cols_range {
                // The matrix is lower triangular; r_t < c_t leaves a zero
                // block of size t × (k - t + 1) and a vanishing minor.
                if rows.iter().zip(cols).any(|(r, c)| r < c) {
                    continue;
                }
                let negative = match &small {
                    Some(s) => {
                        let m: Vec<i128> = rows
                            .iter()
                            .flat_map(|&r| cols.iter().map(move |&c| if r >= c { s[r - c] } else { 0 }))
                            .collect();
                        match det_i128(&m, k) {
                            Some(v) => v < 0,
                            None => det_small(&m, k).is_negative(),
                        }
                    }
                    None => minor_bigint(&coeffs, rows, cols).is_negative(),
                };
                if negative {
                    let value = minor_bigint(&coeffs, rows, cols);
                    return Some(MinorWitness { rows: rows.clone(), cols: cols.clone(), value });
                }
            }
            None
        });
        if let Some(w) = found {
            return Ok(TotalPositivity::Violated(w));
        }
    }
    Ok(TotalPositivity::Holds)
}

fn minor_bigint(coeffs: &[BigInt], rows: &[usize], cols: &[usize]) -> BigInt {
    det_bigint(
        rows.iter()
            .map(|&r| {
                cols.iter()
                    .map(|&c| if r >= c { coeffs[r - c].clone() } else { BigInt::from(0) })
                    .collect()
            })
            .collect(),
    )
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}
