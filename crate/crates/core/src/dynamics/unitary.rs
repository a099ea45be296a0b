use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::DynamicsError;

/// Default tolerance on `max |g†g − 1|`.
pub const UNITARITY_TOLERANCE: f64 = 1e-12;

/// Single-particle transformation `g ∈ U(d)` on `d` modes.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeUnitary {
    matrix: DMatrix<Complex64>,
}

impl ModeUnitary {
    pub fn new(matrix: DMatrix<Complex64>) -> Result<Self, DynamicsError> {
        Self::with_tolerance(matrix, UNITARITY_TOLERANCE)
    }

    pub fn with_tolerance(matrix: DMatrix<Complex64>, tol: f64) -> Result<Self, DynamicsError> {
        if !matrix.is_square() || matrix.nrows() == 0 {
            return Err(DynamicsError::NotUnitary { deviation: f64::INFINITY });
        }
        let deviation = unitarity_deviation(&matrix);
        if deviation > tol {
            return Err(DynamicsError::NotUnitary { deviation });
        }
        Ok(ModeUnitary { matrix })
    }

    /// Row-major `d × d` entries.
    pub fn from_row_major(d: usize, entries: &[Complex64], tol: f64) -> Result<Self, DynamicsError> {
        if entries.len() != d * d {
            return Err(DynamicsError::NotUnitary { deviation: f64::INFINITY });
        }
        Self::with_tolerance(DMatrix::from_row_slice(d, d, entries), tol)
    }

    pub fn identity(d: usize) -> Self {
        ModeUnitary { matrix: DMatrix::identity(d, d) }
    }

    /// Balanced beam splitter `(1/√2)[[1, 1], [1, −1]]`.
    pub fn beam_splitter() -> Self {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        ModeUnitary { matrix: DMatrix::from_row_slice(2, 2, &[h, h, h, -h]) }
    }

    /// Sends mode `j` to mode `sigma[j]`.
    pub fn permutation(sigma: &[usize]) -> Result<Self, DynamicsError> {
        let d = sigma.len();
        let mut seen = vec![false; d];
        for &s in sigma {
            if s >= d || std::mem::replace(&mut seen[s], true) {
                return Err(DynamicsError::NotUnitary { deviation: f64::INFINITY });
            }
        }
        let mut m = DMatrix::zeros(d, d);
        for (j, &s) in sigma.iter().enumerate() {
            m[(s, j)] = Complex64::new(1.0, 0.0);
        }
        Ok(ModeUnitary { matrix: m })
    }

    /// `diag(e^{iθ_1}, ..., e^{iθ_d})`.
    pub fn phases(thetas: &[f64]) -> Self {
        let d = thetas.len();
        let mut m = DMatrix::zeros(d, d);
        for (k, &t) in thetas.iter().enumerate() {
            m[(k, k)] = Complex64::from_polar(1.0, t);
        }
        ModeUnitary { matrix: m }
    }

    /// Haar-random unitary: QR of a complex Ginibre matrix with the phases
    /// of `R`'s diagonal absorbed into `Q`.
    pub fn haar<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Self {
        let z = DMatrix::from_fn(d, d, |_, _| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
        });
        let qr = z.qr();
        let (mut q, r) = (qr.q(), qr.r());
        for k in 0..d {
            let rkk = r[(k, k)];
            let phase = if rkk.norm() > 0.0 { rkk / rkk.norm() } else { Complex64::new(1.0, 0.0) };
            for i in 0..d {
                q[(i, k)] *= phase;
            }
        }
        ModeUnitary { matrix: q }
    }

    pub fn modes(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    /// `self · other`.
    pub fn compose(&self, other: &ModeUnitary) -> ModeUnitary {
        ModeUnitary { matrix: &self.matrix * &other.matrix }
    }
}

/// `max |(m†m − 1)_{ij}|`.
pub fn unitarity_deviation(m: &DMatrix<Complex64>) -> f64 {
    let gram = m.adjoint() * m;
    let id = DMatrix::<Complex64>::identity(m.nrows(), m.ncols());
    (gram - id).iter().map(|c| c.norm()).fold(0.0, f64::max)
}
