//! Exact univariate polynomial arithmetic: Sturm root counting over the
//! rationals and Kronecker factorization over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Coefficients lowest degree first, no trailing zeros (the zero polynomial
/// is empty).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatPoly(Vec<BigRational>);

impl RatPoly {
    pub fn from_ints(c: &[BigInt]) -> Self {
        let mut p = RatPoly(c.iter().cloned().map(BigRational::from_integer).collect());
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; `0` for constants and the zero polynomial.
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn lead(&self) -> &BigRational {
        self.0.last().expect("nonzero polynomial")
    }

    pub fn derivative(&self) -> Self {
        let mut p = RatPoly(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        );
        p.trim();
        p
    }

    pub fn rem(&self, divisor: &RatPoly) -> RatPoly {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let mut r = self.0.clone();
        let dd = divisor.degree();
        let lead = divisor.lead().clone();
        while r.len() > dd && !r.is_empty() {
            let shift = r.len() - 1 - dd;
            let factor = r.last().unwrap() / &lead;
            for (i, c) in divisor.0.iter().enumerate() {
                r[shift + i] -= &factor * c;
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        RatPoly(r)
    }

    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if !a.is_zero() {
            let lead = a.lead().clone();
            for c in &mut a.0 {
                *c /= &lead;
            }
        }
        a
    }

    fn sign_at_zero(&self) -> i32 {
        self.0.first().map_or(0, sign)
    }

    fn sign_at_pos_inf(&self) -> i32 {
        self.0.last().map_or(0, sign)
    }

    fn sign_at_neg_inf(&self) -> i32 {
        let s = self.sign_at_pos_inf();
        if self.degree() % 2 == 1 {
            -s
        } else {
            s
        }
    }

    fn sturm_chain(&self) -> Vec<RatPoly> {
        let mut chain = vec![self.clone(), self.derivative()];
        while !chain.last().unwrap().is_zero() {
            let n = chain.len();
            let r = chain[n - 2].rem(&chain[n - 1]);
            let neg = RatPoly(r.0.into_iter().map(|c| -c).collect());
            chain.push(neg);
        }
        chain.pop();
        chain
    }
}

fn sign(c: &BigRational) -> i32 {
    if c.is_positive() {
        1
    } else if c.is_negative() {
        -1
    } else {
        0
    }
}

fn variations(signs: impl Iterator<Item = i32>) -> usize {
    let nonzero: Vec<i32> = signs.filter(|&s| s != 0).collect();
    nonzero.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Distinct real roots of a polynomial with `p(0) ≠ 0`, split by sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RootCount {
    pub negative: usize,
    pub positive: usize,
}

/// Sturm count of distinct real roots on `(-∞, 0)` and `(0, ∞)`.
pub fn distinct_real_roots(p: &RatPoly) -> RootCount {
    if p.degree() == 0 {
        return RootCount::default();
    }
    assert!(p.sign_at_zero() != 0, "zero root is not supported");
    let chain = p.sturm_chain();
    let at_neg = variations(chain.iter().map(RatPoly::sign_at_neg_inf));
    let at_zero = variations(chain.iter().map(RatPoly::sign_at_zero));
    let at_pos = variations(chain.iter().map(RatPoly::sign_at_pos_inf));
    RootCount { negative: at_neg - at_zero, positive: at_zero - at_pos }
}

/// Real roots on each half-line counted with multiplicity, through the
/// chain `g_0 = p`, `g_{k+1} = gcd(g_k, g_k')`: a root of multiplicity `m`
/// is a simple root of every `g_k` with `k < m`.
pub fn real_roots_with_multiplicity(p: &RatPoly) -> RootCount {
    let mut total = RootCount::default();
    let mut g = p.clone();
    while g.degree() > 0 {
        let c = distinct_real_roots(&g);
        total.negative += c.negative;
        total.positive += c.positive;
        g = g.gcd(&g.derivative());
    }
    total
}

/// Largest degree accepted by [`is_reducible_over_z`].
pub const FACTORIZATION_DEGREE_BOUND: usize = 8;

fn eval_i128(p: &[BigInt], x: i128) -> Option<i128> {
    let mut acc: i128 = 0;
    for c in p.iter().rev() {
        acc = acc.checked_mul(x)?.checked_add(c.to_i128()?)?;
    }
    Some(acc)
}

fn divisors(n: u128) -> Vec<u128> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1u128;
    while i * i <= n {
        if n.is_multiple_of(i) {
            small.push(i);
            if i * i != n {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Lagrange interpolation through `(xs[i], ys[i])`, if the interpolant has
/// integer coefficients.
fn interpolate_integral(xs: &[i128], ys: &[i128]) -> Option<Vec<BigInt>> {
    let n = xs.len();
    let mut coeffs = vec![BigRational::zero(); n];
    for i in 0..n {
        // basis polynomial ∏_{j≠i} (x - x_j) / (x_i - x_j)
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for j in 0..n {
            if j == i {
                continue;
            }
            let xj = BigRational::from_integer(BigInt::from(xs[j]));
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, b) in basis.iter().enumerate() {
                next[k + 1] += b;
                next[k] -= b * &xj;
            }
            basis = next;
            denom *= BigRational::from_integer(BigInt::from(xs[i] - xs[j]));
        }
        let scale = BigRational::from_integer(BigInt::from(ys[i])) / denom;
        for (k, b) in basis.iter().enumerate() {
            coeffs[k] += b * &scale;
        }
    }
    coeffs
        .into_iter()
        .map(|c| c.is_integer().then(|| c.to_integer()))
        .collect::<Option<Vec<_>>>()
        .map(|mut v| {
            while v.len() > 1 && v.last().is_some_and(Zero::is_zero) {
                v.pop();
            }
            v
        })
}

/// Exact division over `Z`; `true` iff `divisor | p` with integral quotient.
fn divides_over_z(p: &[BigInt], divisor: &[BigInt]) -> bool {
    let dd = divisor.len() - 1;
    let lead = &divisor[dd];
    let mut r = p.to_vec();
    while r.len() > dd {
        let top = r.last().unwrap();
        let (q, rem) = top.div_rem(lead);
        if !rem.is_zero() {
            return false;
        }
        let shift = r.len() - 1 - dd;
        for (i, c) in divisor.iter().enumerate() {
            r[shift + i] -= &q * c;
        }
        r.pop();
    }
    r.iter().all(Zero::is_zero)
}

/// Content-free part of an integer polynomial.
fn primitive_part(p: &[BigInt]) -> Vec<BigInt> {
    let content = p.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if content.is_zero() {
        return p.to_vec();
    }
    p.iter().map(|c| c / &content).collect()
}

/// `Some(true)` iff `p` is a product of two non-constant integral polynomials
/// (Kronecker's method); `None` past [`FACTORIZATION_DEGREE_BOUND`] or when
/// the search leaves `i128` range.
pub fn is_reducible_over_z(p: &[BigInt]) -> Option<bool> {
    let p = primitive_part(p);
    let n = p.len() - 1;
    if n > FACTORIZATION_DEGREE_BOUND {
        return None;
    }
    if n <= 1 {
        return Some(false);
    }
    // Candidate points 0, 1, -1, 2, -2, ...
    let mut points: Vec<(i128, i128)> = Vec::new();
    for k in 0..(4 * n as i128 + 8) {
        let x = if k % 2 == 0 { k / 2 } else { -(k + 1) / 2 };
        let v = eval_i128(&p, x)?;
        if v == 0 {
            // (x - root) is a linear factor and n ≥ 2.
            return Some(true);
        }
        points.push((x, v));
    }
    points.sort_by_key(|&(x, v)| (divisors(v.unsigned_abs()).len(), x.abs()));

    for s in 1..=n / 2 {
        let chosen = &points[..=s];
        let xs: Vec<i128> = chosen.iter().map(|&(x, _)| x).collect();
        let divs: Vec<Vec<i128>> = chosen
            .iter()
            .enumerate()
            .map(|(i, &(_, v))| {
                let d = divisors(v.unsigned_abs());
                if i == 0 {
                    // A factor and its negation are equivalent.
                    d.into_iter().map(|x| x as i128).collect()
                } else {
                    d.into_iter().flat_map(|x| [x as i128, -(x as i128)]).collect()
                }
            })
            .collect();
        let mut idx = vec![0usize; s + 1];
        loop {
            let ys: Vec<i128> = idx.iter().zip(&divs).map(|(&i, d)| d[i]).collect();
            if let Some(f) = interpolate_integral(&xs, &ys) {
                if f.len() >= 2 && f.len() - 1 <= s && divides_over_z(&p, &f) {
                    return Some(true);
                }
            }
            // odometer increment
            let mut pos = 0;
            loop {
                if pos == idx.len() {
                    break;
                }
                idx[pos] += 1;
                if idx[pos] < divs[pos].len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos == idx.len() {
                break;
            }
        }
    }
    Some(false)
}
