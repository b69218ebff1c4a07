//! Dense square real matrices and the matrix exponential.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// A dense square real matrix with finite entries.
///
/// Finiteness is checked at construction; operations that could produce
/// non-finite values re-check their result.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat {
    data: DMatrix<f64>,
}

impl Mat {
    pub fn new(data: DMatrix<f64>) -> Result<Self> {
        if data.nrows() != data.ncols() {
            return Err(Error::InvalidInput(format!(
                "matrix must be square, got {}x{}",
                data.nrows(),
                data.ncols()
            )));
        }
        if !data.iter().all(|x| x.is_finite()) {
            return Err(Error::InvalidInput("matrix has non-finite entries".into()));
        }
        Ok(Mat { data })
    }

    pub fn identity(n: usize) -> Self {
        Mat {
            data: DMatrix::identity(n, n),
        }
    }

    pub fn zeros(n: usize) -> Self {
        Mat {
            data: DMatrix::zeros(n, n),
        }
    }

    /// Builds an n×n matrix from row-major entries.
    pub fn from_row_major(n: usize, entries: &[f64]) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::InvalidInput(format!(
                "expected {} entries for a {n}x{n} matrix, got {}",
                n * n,
                entries.len()
            )));
        }
        Mat::new(DMatrix::from_row_slice(n, n, entries))
    }

    pub fn n(&self) -> usize {
        self.data.nrows()
    }

    pub fn dm(&self) -> &DMatrix<f64> {
        &self.data
    }

    pub fn into_inner(self) -> DMatrix<f64> {
        self.data
    }

    pub fn transpose(&self) -> Mat {
        Mat {
            data: self.data.transpose(),
        }
    }

    pub fn scale(&self, c: f64) -> Result<Mat> {
        Mat::new(&self.data * c)
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat> {
        Mat::new(&self.data * &other.data)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.norm()
    }

    pub fn try_inverse(&self) -> Result<Mat> {
        self.data
            .clone()
            .try_inverse()
            .map(|m| Mat { data: m })
            .ok_or_else(|| Error::Numeric("matrix is not invertible".into()))
    }

    /// Matrix exponential by scaling-and-squaring with a diagonal Padé core.
    pub fn exp(&self) -> Result<Mat> {
        Mat::new(expm(&self.data))
    }
}

impl AsRef<DMatrix<f64>> for Mat {
    fn as_ref(&self) -> &DMatrix<f64> {
        &self.data
    }
}

/// Scaling-and-squaring matrix exponential with a [13/13] Padé core.
///
/// The scaling step brings the 1-norm below 5.37 (the order-13 bound), the
/// Padé solve uses full-pivot LU, and the result is squared back. Relative
/// accuracy is better than 1e-12 for ‖A‖ ≤ 10.
pub fn expm(a: &DMatrix<f64>) -> DMatrix<f64> {
    let n = a.nrows();
    let norm = one_norm(a);
    const THETA_13: f64 = 5.371920351148152;
    let s = if norm > THETA_13 {
        (norm / THETA_13).log2().ceil().max(0.0) as u32
    } else {
        0
    };
    let scaled = a / 2f64.powi(s as i32);
    let mut e = pade13(&scaled);
    for _ in 0..s {
        e = &e * &e;
    }
    debug_assert_eq!(e.nrows(), n);
    e
}

fn one_norm(a: &DMatrix<f64>) -> f64 {
    (0..a.ncols())
        .map(|j| a.column(j).iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

fn pade13(a: &DMatrix<f64>) -> DMatrix<f64> {
    // Coefficients of the [13/13] diagonal Padé approximant to exp.
    const B: [f64; 14] = [
        64764752532480000.0,
        32382376266240000.0,
        7771770303897600.0,
        1187353796428800.0,
        129060195264000.0,
        10559470521600.0,
        670442572800.0,
        33522128640.0,
        1323241920.0,
        40840800.0,
        960960.0,
        16380.0,
        182.0,
        1.0,
    ];
    let n = a.nrows();
    let id = DMatrix::<f64>::identity(n, n);
    let a2 = a * a;
    let a4 = &a2 * &a2;
    let a6 = &a2 * &a4;
    let u_inner = &a6 * (&a6 * B[13] + &a4 * B[11] + &a2 * B[9])
        + &a6 * B[7]
        + &a4 * B[5]
        + &a2 * B[3]
        + &id * B[1];
    let u = a * u_inner;
    let v = &a6 * (&a6 * B[12] + &a4 * B[10] + &a2 * B[8])
        + &a6 * B[6]
        + &a4 * B[4]
        + &a2 * B[2]
        + &id * B[0];
    let num = &v + &u;
    let den = &v - &u;
    den.full_piv_lu()
        .solve(&num)
        .expect("Padé denominator is nonsingular for scaled input")
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    /// Truncated Taylor series oracle, independent of the Padé path.
    fn expm_taylor(a: &DMatrix<f64>, terms: usize) -> DMatrix<f64> {
        let n = a.nrows();
        let mut sum = DMatrix::<f64>::identity(n, n);
        let mut term = DMatrix::<f64>::identity(n, n);
        for k in 1..=terms {
            term = &term * a / k as f64;
            sum += &term;
        }
        sum
    }

    #[test]
    fn exp_of_zero_is_identity() {
        let z = Mat::zeros(3);
        assert_eq!(z.exp().unwrap(), Mat::identity(3));
    }

    #[test]
    fn exp_rotation_matches_taylor_oracle() {
        let a = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0]);
        let e = expm(&a);
        let oracle = expm_taylor(&a, 60);
        assert_relative_eq!(e, oracle, epsilon = 1e-14);
        assert_relative_eq!(e[(0, 0)], 1f64.cos(), epsilon = 1e-14);
        assert_relative_eq!(e[(0, 1)], 1f64.sin(), epsilon = 1e-14);
        assert_relative_eq!(e[(1, 0)], -(1f64.sin()), epsilon = 1e-14);
        assert!((e[(0, 0)] - 0.540302).abs() < 1e-6);
    }

    #[test]
    fn exp_diagonal() {
        let a = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]);
        let e = expm(&a);
        assert_relative_eq!(e[(0, 0)], std::f64::consts::E, epsilon = 1e-13);
        assert_relative_eq!(e[(1, 1)], 1.0 / std::f64::consts::E, epsilon = 1e-13);
        assert!(e[(0, 1)].abs() < 1e-15 && e[(1, 0)].abs() < 1e-15);
    }

    #[test]
    fn exp_large_norm_matches_taylor() {
        // ‖A‖ ≈ 10 exercises the scaling path.
        let a = DMatrix::from_row_slice(3, 3, &[0.0, 5.0, 1.0, -5.0, 0.0, 2.0, 1.0, -2.0, 0.5]);
        let e = expm(&a);
        let oracle = expm_taylor(&(a.clone() / 16.0), 90);
        let mut o = oracle;
        for _ in 0..4 {
            o = &o * &o;
        }
        assert_relative_eq!(e, o, epsilon = 1e-11);
    }

    #[test]
    fn exp_times_exp_neg_is_identity() {
        use rand::prelude::*;
        use rand_chacha::ChaCha8Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let n = rng.gen_range(2..6);
            let mut a = DMatrix::<f64>::zeros(n, n);
            for x in a.iter_mut() {
                *x = rng.gen_range(-1.0..1.0);
            }
            let scale = 5.0 / a.norm().max(1e-12);
            if scale < 1.0 {
                a *= scale;
            }
            let p = expm(&a) * expm(&(-&a));
            let id = DMatrix::<f64>::identity(n, n);
            assert!((p - id).norm() < 1e-10);
        }
    }

    #[test]
    fn non_finite_input_rejected() {
        let bad = DMatrix::from_row_slice(2, 2, &[f64::NAN, 0.0, 0.0, 1.0]);
        assert!(Mat::new(bad).is_err());
    }

    #[test]
    fn non_square_rejected() {
        let bad = DMatrix::<f64>::zeros(2, 3);
        assert!(Mat::new(bad).is_err());
    }
}
