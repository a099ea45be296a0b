use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::Partition;

/// Pairwise coordinate distance below which the bialternant quotient is
/// treated as 0/0 and evaluation falls back to tableau summation.
pub const COINCIDENCE_THRESHOLD: f64 = 1e-9;

/// Calls `visit` with the type (content vector) of every semistandard Young
/// tableau of shape `lambda` with entries in `1..=d`.
pub fn for_each_ssyt_type(lambda: &Partition, d: usize, mut visit: impl FnMut(&[u32])) {
    if lambda.length() > d {
        return;
    }
    let shape = lambda.parts();
    let mut rows: Vec<Vec<usize>> = shape.iter().map(|&r| vec![0; r as usize]).collect();
    let mut content = vec![0u32; d];
    fill_cell(shape, d, 0, 0, &mut rows, &mut content, &mut visit);
}

fn fill_cell(
    shape: &[u32],
    d: usize,
    row: usize,
    col: usize,
    rows: &mut Vec<Vec<usize>>,
    content: &mut Vec<u32>,
    visit: &mut impl FnMut(&[u32]),
) {
    if row == shape.len() {
        visit(content);
        return;
    }
    if col == shape[row] as usize {
        fill_cell(shape, d, row + 1, 0, rows, content, visit);
        return;
    }
    let left = if col > 0 { rows[row][col - 1] } else { 0 };
    let above = if row > 0 { rows[row - 1][col] + 1 } else { 0 };
    // Entries are 0-based letters; column strictness leaves room below.
    let remaining_rows = shape[row + 1..].iter().filter(|&&r| r as usize > col).count();
    let lo = left.max(above);
    if d < remaining_rows + 1 {
        return;
    }
    let hi = d - 1 - remaining_rows;
    for v in lo..=hi {
        rows[row][col] = v;
        content[v] += 1;
        fill_cell(shape, d, row, col + 1, rows, content, visit);
        content[v] -= 1;
    }
}

/// Number of SSYT of shape `lambda` with entries `≤ d`.
pub fn ssyt_count(lambda: &Partition, d: usize) -> u64 {
    let mut n = 0u64;
    for_each_ssyt_type(lambda, d, |_| n += 1);
    n
}

/// Monomial expansion of `s_λ(x_1..x_d)`: exponent vector → Kostka number.
/// Empty when `d < l(λ)`, where the polynomial vanishes identically.
pub fn schur_monomials(lambda: &Partition, d: usize) -> BTreeMap<Vec<u32>, u64> {
    let mut out = BTreeMap::new();
    for_each_ssyt_type(lambda, d, |ty| *out.entry(ty.to_vec()).or_insert(0) += 1);
    out
}

/// Evaluates `s_λ` at a complex point.
///
/// Uses the bialternant `det(x_i^{λ_j+d-j}) / det(x_i^{d-j})` unless two
/// coordinates lie within [`COINCIDENCE_THRESHOLD`], in which case the SSYT
/// sum is used.
pub fn schur_eval(lambda: &Partition, point: &[Complex64]) -> Complex64 {
    let d = point.len();
    if lambda.length() > d {
        return Complex64::new(0.0, 0.0);
    }
    if d == 0 {
        return Complex64::new(1.0, 0.0);
    }
    let coincident = (0..d).any(|i| {
        (i + 1..d).any(|j| (point[i] - point[j]).norm() < COINCIDENCE_THRESHOLD)
    });
    if coincident {
        return schur_eval_tableaux(lambda, point);
    }
    let parts = lambda.padded(d);
    let numer = DMatrix::from_fn(d, d, |i, j| {
        point[i].powu(parts[j] + (d - 1 - j) as u32)
    });
    let denom = DMatrix::from_fn(d, d, |i, j| point[i].powu((d - 1 - j) as u32));
    numer.determinant() / denom.determinant()
}

/// `s_λ(point)` as an explicit sum over tableaux.
pub fn schur_eval_tableaux(lambda: &Partition, point: &[Complex64]) -> Complex64 {
    let mut total = Complex64::new(0.0, 0.0);
    for_each_ssyt_type(lambda, point.len(), |ty| {
        total += ty
            .iter()
            .zip(point)
            .map(|(&e, x)| x.powu(e))
            .product::<Complex64>();
    });
    total
}
