//! Rank, kernel, least-squares and realification helpers shared by the
//! algebra and decomposition layers.

use nalgebra::{Complex, DMatrix, DVector};

use crate::error::{Error, Result};
use crate::tol;

/// Numeric rank with an explicit singular-value gap requirement.
///
/// Singular values below `RANK_ZERO_REL * s_max` are candidate zeros; the
/// split is accepted only when the retained/discarded ratio exceeds
/// `RANK_GAP`, otherwise the rank is ambiguous and the caller must not
/// silently pick one.
pub fn rank_with_gap(sv: &[f64]) -> Result<(usize, f64)> {
    if sv.is_empty() {
        return Ok((0, f64::INFINITY));
    }
    let smax = sv.iter().cloned().fold(0.0, f64::max);
    if smax == 0.0 {
        return Ok((0, f64::INFINITY));
    }
    let thresh = smax * tol::RANK_ZERO_REL;
    let rank = sv.iter().filter(|&&s| s > thresh).count();
    if rank == sv.len() {
        return Ok((rank, f64::INFINITY));
    }
    let smallest_kept = if rank == 0 {
        return Ok((0, f64::INFINITY));
    } else {
        sv.iter().cloned().filter(|&s| s > thresh).fold(f64::INFINITY, f64::min)
    };
    let largest_dropped = sv
        .iter()
        .cloned()
        .filter(|&s| s <= thresh)
        .fold(0.0, f64::max);
    let gap = if largest_dropped == 0.0 {
        f64::INFINITY
    } else {
        smallest_kept / largest_dropped
    };
    if gap < tol::RANK_GAP {
        return Err(Error::RankAmbiguity {
            gap,
            required: tol::RANK_GAP,
        });
    }
    Ok((rank, gap))
}

/// Orthonormal kernel basis of a real matrix, with the singular-value gap
/// used for the rank decision.
pub fn kernel_basis(a: &DMatrix<f64>) -> Result<(Vec<DVector<f64>>, f64)> {
    let ncols = a.ncols();
    if a.nrows() == 0 || ncols == 0 {
        return Ok(((0..ncols).map(|j| DVector::from_fn(ncols, |i, _| if i == j { 1.0 } else { 0.0 })).collect(), f64::INFINITY));
    }
    let svd = a.clone().svd(false, true);
    let sv: Vec<f64> = svd.singular_values.iter().cloned().collect();
    // Trailing columns of V beyond the number of singular values are exact
    // kernel directions when the matrix is wide.
    let (rank, gap) = rank_with_gap(&sv)?;
    let v_t = svd.v_t.expect("requested V^T");
    let mut basis = Vec::new();
    for i in rank..v_t.nrows() {
        basis.push(v_t.row(i).transpose());
    }
    // Wide matrix: V^T from nalgebra is (min_dim x ncols); complete the
    // kernel with an orthogonal complement when rows < cols.
    if v_t.nrows() < ncols {
        let mut proj = DMatrix::<f64>::identity(ncols, ncols);
        for i in 0..v_t.nrows() {
            let v = v_t.row(i).transpose();
            proj -= &v * v.transpose();
        }
        // Extract an orthonormal basis of the complement by column-pivoted
        // Gram-Schmidt on the projector.
        let mut cols: Vec<DVector<f64>> = Vec::new();
        for j in 0..ncols {
            let mut c = proj.column(j).clone_owned();
            for b in basis.iter().chain(cols.iter()) {
                let d = b.dot(&c);
                c -= b * d;
            }
            if c.norm() > 1e-8 {
                let cn = c.normalize();
                cols.push(cn);
            }
        }
        basis.extend(cols);
        basis.truncate(ncols - rank);
    }
    Ok((basis, gap))
}

/// Dimension of the kernel of a complex matrix (no basis needed).
pub fn complex_kernel_dim(a: &DMatrix<Complex<f64>>) -> Result<usize> {
    let svd = a.clone().svd(false, false);
    let sv: Vec<f64> = svd.singular_values.iter().cloned().collect();
    let (rank, _) = rank_with_gap(&sv)?;
    Ok(a.ncols() - rank)
}

/// Signature (n_plus, n_minus) of a symmetric Gram matrix, counting
/// eigenvalues outside `SIGNATURE_ZERO_REL * spectral_radius` of zero.
/// Returns the zero count as the third component.
pub fn signature(gram: &DMatrix<f64>) -> (usize, usize, usize) {
    if gram.nrows() == 0 {
        return (0, 0, 0);
    }
    let sym = (gram + gram.transpose()) * 0.5;
    let eig = sym.symmetric_eigen();
    let radius = eig.eigenvalues.iter().map(|x| x.abs()).fold(0.0, f64::max);
    let thresh = radius * tol::SIGNATURE_ZERO_REL;
    let mut plus = 0;
    let mut minus = 0;
    let mut zero = 0;
    for &ev in eig.eigenvalues.iter() {
        if ev > thresh {
            plus += 1;
        } else if ev < -thresh {
            minus += 1;
        } else {
            zero += 1;
        }
    }
    (plus, minus, zero)
}

/// Interleaved realification of a complex matrix: each entry a+bi becomes
/// the 2x2 block [[a, -b], [b, a]].
pub fn realify(z: &DMatrix<Complex<f64>>) -> DMatrix<f64> {
    let m = z.nrows();
    let mut r = DMatrix::<f64>::zeros(2 * m, 2 * m);
    for i in 0..m {
        for j in 0..z.ncols() {
            let w = z[(i, j)];
            r[(2 * i, 2 * j)] = w.re;
            r[(2 * i, 2 * j + 1)] = -w.im;
            r[(2 * i + 1, 2 * j)] = w.im;
            r[(2 * i + 1, 2 * j + 1)] = w.re;
        }
    }
    r
}

/// The realification of multiplication by i on the doubled space: block
/// operator with [[0, -1], [1, 0]] in every diagonal 2x2 block.
pub fn realified_complex_structure(m: usize) -> DMatrix<f64> {
    let mut j = DMatrix::<f64>::zeros(2 * m, 2 * m);
    for i in 0..m {
        j[(2 * i, 2 * i + 1)] = -1.0;
        j[(2 * i + 1, 2 * i)] = 1.0;
    }
    j
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn kernel_of_rank_one() {
        let a = DMatrix::from_row_slice(2, 3, &[1.0, 0.0, 0.0, 2.0, 0.0, 0.0]);
        let (basis, _) = kernel_basis(&a).unwrap();
        assert_eq!(basis.len(), 2);
        for b in &basis {
            assert!((&a * b).norm() < 1e-12);
        }
    }

    #[test]
    fn kernel_of_full_rank_is_empty() {
        let a = DMatrix::<f64>::identity(4, 4);
        let (basis, _) = kernel_basis(&a).unwrap();
        assert!(basis.is_empty());
    }

    #[test]
    fn signature_of_minkowski_form() {
        let g = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![1.0, 1.0, -1.0]));
        assert_eq!(signature(&g), (2, 1, 0));
    }

    #[test]
    fn realify_preserves_products() {
        let i = Complex64::new(0.0, 1.0);
        let a = DMatrix::from_row_slice(2, 2, &[i, Complex64::new(1.0, 2.0), -i, Complex64::new(0.5, 0.0)]);
        let b = DMatrix::from_row_slice(2, 2, &[Complex64::new(2.0, -1.0), i, i * 3.0, Complex64::new(0.0, 0.0)]);
        let lhs = realify(&(&a * &b));
        let rhs = realify(&a) * realify(&b);
        assert!((lhs - rhs).norm() < 1e-12);
    }
}
