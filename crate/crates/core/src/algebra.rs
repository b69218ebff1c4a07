//! Matrix Lie algebras presented by a basis, with derived structure
//! constants, Killing form and adjoint machinery.

use std::sync::Arc;

use nalgebra::{Complex, DMatrix, DVector};

use crate::error::{Error, Result};
use crate::linalg;
use crate::mat::Mat;
use crate::tol;

#[derive(Debug)]
struct AlgebraInner {
    name: String,
    basis: Vec<Mat>,
    n: usize,
    dim: usize,
    /// vec(X_i) as columns, n² × dim.
    basis_mat: DMatrix<f64>,
    /// Least-squares re-expression operator, dim × n²: coords = reexpress · vec(M).
    reexpress: DMatrix<f64>,
    /// ad matrices of the basis elements over the basis, dim × dim each.
    ad: Vec<DMatrix<f64>>,
    killing: DMatrix<f64>,
    form: DMatrix<f64>,
    /// Largest |form entry|; the problem scale for tolerance decisions.
    scale: f64,
    /// Largest basis Frobenius norm.
    basis_scale: f64,
}

/// A real Lie algebra presented by a linearly independent basis of square
/// real matrices. Cheap to clone (shared immutable state).
#[derive(Clone, Debug)]
pub struct MatrixLieAlgebra {
    inner: Arc<AlgebraInner>,
}

/// A vector in the algebra, stored as coordinates over the basis.
#[derive(Clone, Debug)]
pub struct AlgebraElement {
    algebra: MatrixLieAlgebra,
    coords: DVector<f64>,
}

/// Spectrum of ad(ξ) together with the semisimplicity decision.
#[derive(Clone, Debug)]
pub struct AdSpectrum {
    pub eigenvalues: Vec<Complex<f64>>,
    pub semisimple: bool,
    /// max |Re λ| over the spectrum, for the ellipticity test.
    pub max_abs_real: f64,
    pub spectral_radius: f64,
}

impl MatrixLieAlgebra {
    /// Builds the algebra from a basis, deriving structure constants and the
    /// Killing form. Fails if the basis is linearly dependent, not closed
    /// under the commutator, or violates the Jacobi identity.
    ///
    /// The invariant form defaults to the Killing form; use
    /// [`MatrixLieAlgebra::with_form`] to install a different one.
    pub fn from_basis(name: impl Into<String>, basis: Vec<Mat>) -> Result<Self> {
        let alg = Self::from_basis_unvalidated_form(name, basis)?;
        alg.validate_form()?;
        Ok(alg)
    }

    /// Like [`MatrixLieAlgebra::from_basis`] but skips the nondegeneracy and
    /// invariance checks on the form. Needed for algebras with degenerate
    /// Killing form (abelian factors, u(n)); callers install a proper form
    /// via [`MatrixLieAlgebra::with_form`].
    pub fn from_basis_unvalidated_form(name: impl Into<String>, basis: Vec<Mat>) -> Result<Self> {
        let name = name.into();
        if basis.is_empty() {
            return Err(Error::InvalidInput(format!("{name}: empty basis")));
        }
        let n = basis[0].n();
        if basis.iter().any(|b| b.n() != n) {
            return Err(Error::InvalidInput(format!(
                "{name}: basis matrices have mixed sizes"
            )));
        }
        let dim = basis.len();
        let mut basis_mat = DMatrix::<f64>::zeros(n * n, dim);
        for (j, b) in basis.iter().enumerate() {
            for (i, v) in b.dm().iter().enumerate() {
                basis_mat[(i, j)] = *v;
            }
        }

        // Pseudo-inverse via SVD; also decides linear independence.
        let svd = basis_mat.clone().svd(true, true);
        let smax = svd.singular_values.max();
        let smin = svd.singular_values.min();
        if smin < 1e-10 * smax {
            return Err(Error::InvalidInput(format!(
                "{name}: basis is linearly dependent (σ_min/σ_max = {:.2e})",
                smin / smax
            )));
        }
        let reexpress = pseudo_inverse(&svd);

        let basis_scale = basis.iter().map(|b| b.frobenius_norm()).fold(0.0, f64::max);

        // Structure constants via re-expression of commutators.
        let mut ad = vec![DMatrix::<f64>::zeros(dim, dim); dim];
        for i in 0..dim {
            for j in 0..dim {
                let comm = basis[i].dm() * basis[j].dm() - basis[j].dm() * basis[i].dm();
                let coords = &reexpress * vec_of(&comm);
                let resid = (&basis_mat * &coords - vec_of(&comm)).norm();
                let allowed = tol::REEXPRESS_REL * comm.norm().max(basis_scale * basis_scale);
                if resid > allowed {
                    return Err(Error::ClosureViolation {
                        residual: resid,
                        tolerance: allowed,
                    });
                }
                for k in 0..dim {
                    ad[i][(k, j)] = coords[k];
                }
            }
        }

        // Killing form from the structure constants.
        let mut killing = DMatrix::<f64>::zeros(dim, dim);
        for i in 0..dim {
            for j in i..dim {
                let t = (&ad[i] * &ad[j]).trace();
                killing[(i, j)] = t;
                killing[(j, i)] = t;
            }
        }

        let scale = killing.iter().map(|x| x.abs()).fold(0.0, f64::max).max(1e-30);
        let form = killing.clone();

        let alg = MatrixLieAlgebra {
            inner: Arc::new(AlgebraInner {
                name,
                basis,
                n,
                dim,
                basis_mat,
                reexpress,
                ad,
                killing,
                form,
                scale,
                basis_scale,
            }),
        };
        alg.validate_structure()?;
        Ok(alg)
    }

    /// Replaces the invariant form. The form must be symmetric, invariant
    /// (b([Z,X],Y) + b(X,[Z,Y]) = 0) and nondegenerate.
    pub fn with_form(&self, form: DMatrix<f64>) -> Result<Self> {
        let dim = self.dim();
        if form.nrows() != dim || form.ncols() != dim {
            return Err(Error::InvalidInput("form Gram size mismatch".into()));
        }
        let scale = form.iter().map(|x| x.abs()).fold(0.0, f64::max).max(1e-30);
        let sym_err = (&form - form.transpose()).norm();
        if sym_err > tol::STRUCTURAL_REL * scale {
            return Err(Error::Validation("form Gram is not symmetric".into()));
        }
        let inner = AlgebraInner {
            name: self.inner.name.clone(),
            basis: self.inner.basis.clone(),
            n: self.inner.n,
            dim,
            basis_mat: self.inner.basis_mat.clone(),
            reexpress: self.inner.reexpress.clone(),
            ad: self.inner.ad.clone(),
            killing: self.inner.killing.clone(),
            form,
            scale,
            basis_scale: self.inner.basis_scale,
        };
        let alg = MatrixLieAlgebra { inner: Arc::new(inner) };
        alg.validate_form()?;
        Ok(alg)
    }

    fn validate_structure(&self) -> Result<()> {
        let dim = self.dim();
        let ad = &self.inner.ad;
        // Antisymmetry c_ijk = -c_jik.
        let cscale = ad
            .iter()
            .map(|m| m.iter().map(|x| x.abs()).fold(0.0, f64::max))
            .fold(0.0, f64::max)
            .max(1e-30);
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let a = ad[i][(k, j)];
                    let b = ad[j][(k, i)];
                    if (a + b).abs() > 1e-9 * cscale.max(1.0) {
                        return Err(Error::Validation(format!(
                            "{}: antisymmetry violated at ({i},{j},{k})",
                            self.name()
                        )));
                    }
                }
            }
        }
        // Jacobi: ad[X_i] ad[X_j] - ad[X_j] ad[X_i] = ad[[X_i, X_j]].
        let jac_tol = tol::STRUCTURAL_REL
            * self.inner.basis_scale.powi(3).max(1.0)
            * (cscale * cscale).max(1.0);
        for i in 0..dim {
            for j in (i + 1)..dim {
                let lhs = &ad[i] * &ad[j] - &ad[j] * &ad[i];
                let mut rhs = DMatrix::<f64>::zeros(dim, dim);
                for k in 0..dim {
                    rhs += &ad[k] * ad[i][(k, j)];
                }
                if (lhs - rhs).norm() > jac_tol {
                    return Err(Error::Validation(format!(
                        "{}: Jacobi identity violated at ({i},{j})",
                        self.name()
                    )));
                }
            }
        }
        Ok(())
    }

    fn validate_form(&self) -> Result<()> {
        let dim = self.dim();
        let f = &self.inner.form;
        let ad = &self.inner.ad;
        // Invariance: ad(Z)^T F + F ad(Z) = 0 for all basis Z.
        for z in 0..dim {
            let r = ad[z].transpose() * f + f * &ad[z];
            if r.norm() > tol::STRUCTURAL_REL * self.scale() * (dim as f64) {
                return Err(Error::Validation(format!(
                    "{}: invariant form violated by basis element {z}",
                    self.name()
                )));
            }
        }
        // Nondegeneracy.
        let svd = f.clone().svd(false, false);
        let smax = svd.singular_values.max();
        let smin = svd.singular_values.min();
        if smin < 1e-9 * smax {
            return Err(Error::Validation(format!(
                "{}: invariant form is degenerate (σ_min/σ_max = {:.2e})",
                self.name(),
                smin / smax
            )));
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.inner.name
    }

    pub fn dim(&self) -> usize {
        self.inner.dim
    }

    /// Size of the matrices realizing the algebra.
    pub fn matrix_size(&self) -> usize {
        self.inner.n
    }

    pub fn basis(&self) -> &[Mat] {
        &self.inner.basis
    }

    pub fn killing_gram(&self) -> &DMatrix<f64> {
        &self.inner.killing
    }

    pub fn form_gram(&self) -> &DMatrix<f64> {
        &self.inner.form
    }

    /// Structure constant c_{ij}^k with [X_i, X_j] = Σ_k c_{ij}^k X_k.
    pub fn struct_const(&self, i: usize, j: usize, k: usize) -> f64 {
        self.inner.ad[i][(k, j)]
    }

    /// Problem scale (largest |form Gram entry|) used in tolerance decisions.
    pub fn scale(&self) -> f64 {
        self.inner.scale
    }

    pub fn same_algebra(&self, other: &MatrixLieAlgebra) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement {
            algebra: self.clone(),
            coords: DVector::zeros(self.dim()),
        }
    }

    pub fn basis_element(&self, i: usize) -> AlgebraElement {
        let mut coords = DVector::zeros(self.dim());
        coords[i] = 1.0;
        AlgebraElement {
            algebra: self.clone(),
            coords,
        }
    }

    pub fn element(&self, coords: DVector<f64>) -> Result<AlgebraElement> {
        if coords.len() != self.dim() {
            return Err(Error::InvalidInput(format!(
                "coordinate length {} does not match dim {}",
                coords.len(),
                self.dim()
            )));
        }
        if !coords.iter().all(|x| x.is_finite()) {
            return Err(Error::InvalidInput("non-finite coordinates".into()));
        }
        Ok(AlgebraElement {
            algebra: self.clone(),
            coords,
        })
    }

    /// Re-expresses a matrix over the basis; fails when the matrix is not in
    /// the span within the re-expression tolerance.
    pub fn element_from_matrix(&self, m: &Mat) -> Result<AlgebraElement> {
        let coords = self.reexpress_checked(m.dm())?;
        Ok(AlgebraElement {
            algebra: self.clone(),
            coords,
        })
    }

    fn reexpress_checked(&self, m: &DMatrix<f64>) -> Result<DVector<f64>> {
        if m.nrows() != self.inner.n {
            return Err(Error::InvalidInput(format!(
                "matrix size {} does not match algebra realization {}",
                m.nrows(),
                self.inner.n
            )));
        }
        let v = vec_of(m);
        let coords = &self.inner.reexpress * &v;
        let resid = (&self.inner.basis_mat * &coords - &v).norm();
        let allowed = tol::REEXPRESS_REL * v.norm().max(self.inner.basis_scale);
        if resid > allowed {
            return Err(Error::ElementLeftAlgebra {
                residual: resid,
                tolerance: allowed,
            });
        }
        Ok(coords)
    }

    /// The bracket [X, Y], computed as the matrix commutator re-expressed
    /// over the basis.
    pub fn bracket(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_parent(x)?;
        self.check_parent(y)?;
        let xm = x.matrix();
        let ym = y.matrix();
        let comm = xm.dm() * ym.dm() - ym.dm() * xm.dm();
        let coords = self.reexpress_checked(&comm).map_err(|e| match e {
            Error::ElementLeftAlgebra { residual, tolerance } => {
                Error::ClosureViolation { residual, tolerance }
            }
            other => other,
        })?;
        Ok(AlgebraElement {
            algebra: self.clone(),
            coords,
        })
    }

    /// Matrix of ad(X): Y ↦ [X, Y] over the basis, assembled from the
    /// structure constants.
    pub fn ad_matrix(&self, x: &AlgebraElement) -> DMatrix<f64> {
        let mut m = DMatrix::<f64>::zeros(self.dim(), self.dim());
        for (i, &c) in x.coords.iter().enumerate() {
            if c != 0.0 {
                m += &self.inner.ad[i] * c;
            }
        }
        m
    }

    pub fn killing_form(&self, x: &AlgebraElement, y: &AlgebraElement) -> f64 {
        (x.coords.transpose() * &self.inner.killing * &y.coords)[(0, 0)]
    }

    /// The invariant form b used for the normal metric.
    pub fn form(&self, x: &AlgebraElement, y: &AlgebraElement) -> f64 {
        (x.coords.transpose() * &self.inner.form * &y.coords)[(0, 0)]
    }

    /// Ad(g)X = g X g⁻¹ re-expressed over the basis. Checks both the
    /// re-expression residual and invariance of b.
    pub fn adjoint_action(&self, g: &Mat, x: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_parent(x)?;
        let gi = g.try_inverse()?;
        let conj = g.dm() * x.matrix().dm() * gi.dm();
        let coords = self.reexpress_checked(&conj)?;
        let out = AlgebraElement {
            algebra: self.clone(),
            coords,
        };
        let before = self.form(x, x);
        let after = self.form(&out, &out);
        let drift_scale = self.scale() * x.coords.norm_squared().max(out.coords.norm_squared());
        if (after - before).abs() > tol::ORBIT_DRIFT_REL * drift_scale.max(1.0) {
            return Err(Error::Numeric(format!(
                "adjoint action did not preserve b: {before:.6e} -> {after:.6e}"
            )));
        }
        Ok(out)
    }

    /// Eigenvalues of ad(X) and the semisimplicity decision (geometric
    /// multiplicity equals algebraic multiplicity for every eigenvalue
    /// cluster).
    pub fn spectrum_ad(&self, x: &AlgebraElement) -> Result<AdSpectrum> {
        self.check_parent(x)?;
        let ad = self.ad_matrix(x);
        let eigenvalues: Vec<Complex<f64>> = ad.complex_eigenvalues().iter().cloned().collect();
        let radius = eigenvalues.iter().map(|e| e.norm()).fold(0.0, f64::max);
        let cluster_tol = (radius * 1e-7).max(1e-9 * self.inner.basis_scale.max(1.0));

        // Cluster eigenvalues, then compare algebraic and geometric
        // multiplicities per cluster.
        let mut remaining: Vec<Complex<f64>> = eigenvalues.clone();
        let mut semisimple = true;
        let adc = ad.map(|v| Complex::new(v, 0.0));
        while let Some(&lambda) = remaining.first() {
            let (cluster, rest): (Vec<_>, Vec<_>) = remaining
                .iter()
                .cloned()
                .partition(|e| (e - lambda).norm() <= cluster_tol * 2.0);
            remaining = rest;
            let algebraic = cluster.len();
            if algebraic == 1 {
                continue;
            }
            let mut shifted = adc.clone();
            for i in 0..shifted.nrows() {
                shifted[(i, i)] -= lambda;
            }
            let geometric = linalg::complex_kernel_dim(&shifted)?;
            if geometric < algebraic {
                semisimple = false;
                break;
            }
        }

        let max_abs_real = eigenvalues.iter().map(|e| e.re.abs()).fold(0.0, f64::max);
        Ok(AdSpectrum {
            eigenvalues,
            semisimple,
            max_abs_real,
            spectral_radius: radius,
        })
    }

    fn check_parent(&self, x: &AlgebraElement) -> Result<()> {
        if !self.same_algebra(&x.algebra) {
            return Err(Error::InvalidInput(
                "element does not belong to this algebra".into(),
            ));
        }
        Ok(())
    }
}

impl AlgebraElement {
    pub fn coords(&self) -> &DVector<f64> {
        &self.coords
    }

    pub fn algebra(&self) -> &MatrixLieAlgebra {
        &self.algebra
    }

    /// The matrix realization Σ coords_i X_i.
    pub fn matrix(&self) -> Mat {
        let v = &self.algebra.inner.basis_mat * &self.coords;
        let n = self.algebra.inner.n;
        Mat::new(DMatrix::from_iterator(n, n, v.iter().cloned()))
            .expect("finite coords produce a finite matrix")
    }

    pub fn norm(&self) -> f64 {
        self.coords.norm()
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.coords.norm() <= tol
    }

    pub fn scaled(&self, c: f64) -> AlgebraElement {
        AlgebraElement {
            algebra: self.algebra.clone(),
            coords: &self.coords * c,
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        if !self.algebra.same_algebra(&other.algebra) {
            return Err(Error::InvalidInput("elements from different algebras".into()));
        }
        Ok(AlgebraElement {
            algebra: self.algebra.clone(),
            coords: &self.coords + &other.coords,
        })
    }
}

fn vec_of(m: &DMatrix<f64>) -> DVector<f64> {
    DVector::from_iterator(m.len(), m.iter().cloned())
}

fn pseudo_inverse(svd: &nalgebra::SVD<f64, nalgebra::Dyn, nalgebra::Dyn>) -> DMatrix<f64> {
    let u = svd.u.as_ref().expect("U requested");
    let v_t = svd.v_t.as_ref().expect("V^T requested");
    let smax = svd.singular_values.max();
    let mut sinv = DMatrix::<f64>::zeros(v_t.nrows(), u.ncols());
    for (i, &s) in svd.singular_values.iter().enumerate() {
        if s > 1e-13 * smax {
            sinv[(i, i)] = 1.0 / s;
        }
    }
    v_t.transpose() * sinv * u.transpose()
}
