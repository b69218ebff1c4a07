//! Reductive decomposition g = h + m, b-orthogonal projections, the Cartan
//! involution and the compact dual construction.

use nalgebra::{Complex, DMatrix, DVector};
use num_complex::Complex64;

use crate::algebra::{AlgebraElement, MatrixLieAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, realify, signature};
use crate::mat::Mat;
use crate::tol;

/// A pair (g, h) with m the b-orthocomplement of h, together with the
/// projections and (when available) a Cartan involution preserving h.
///
/// `h` may be empty, in which case the pair is a group manifold and pr_h is
/// identically zero.
#[derive(Clone, Debug)]
pub struct HomogeneousPair {
    name: String,
    g: MatrixLieAlgebra,
    /// h-basis coordinates over the g-basis, dim × dim_h.
    h_coords: DMatrix<f64>,
    /// m-basis coordinates, dim × dim_m.
    m_coords: DMatrix<f64>,
    proj_h: DMatrix<f64>,
    proj_m: DMatrix<f64>,
    theta: Option<DMatrix<f64>>,
    signature_m: (usize, usize),
}

/// θ-eigenspace decomposition g = k + p.
#[derive(Clone, Debug)]
pub struct CartanDecomposition {
    /// Basis of the +1 eigenspace (columns, coordinates over the g-basis).
    pub k_basis: DMatrix<f64>,
    /// Basis of the −1 eigenspace.
    pub p_basis: DMatrix<f64>,
}

/// Compact dual pair g_u = k + ip with the corresponded subalgebra
/// h_u = (h∩k) + i(h∩p), realized by realified matrices.
#[derive(Clone, Debug)]
pub struct CompactDualPair {
    pub pair: HomogeneousPair,
    /// Linear map sending g-coordinates of an element of k ∪ p to
    /// g_u-coordinates of its correspondent (k ↦ k, p ↦ ip).
    pub correspondence: DMatrix<f64>,
}

impl HomogeneousPair {
    /// Builds the pair from h given as elements of g. Validates bracket
    /// closure of h, nondegeneracy of b|h, reductivity [h,m] ⊂ m, and the
    /// projection identities.
    ///
    /// The involution X ↦ −Xᵀ is tried as the Cartan candidate; all catalog
    /// realizations are aligned so that it passes validation. A failing
    /// candidate is discarded (the defect machinery does not need θ);
    /// [`HomogeneousPair::with_theta_map`] installs a user-supplied one.
    pub fn new(
        name: impl Into<String>,
        g: MatrixLieAlgebra,
        h_basis: &[AlgebraElement],
    ) -> Result<Self> {
        let name = name.into();
        let dim = g.dim();
        let dim_h = h_basis.len();
        let f = g.form_gram().clone();

        for x in h_basis {
            if !g.same_algebra(x.algebra()) {
                return Err(Error::Construction(format!(
                    "{name}: h-basis element from a different algebra"
                )));
            }
        }

        let mut h_coords = DMatrix::<f64>::zeros(dim, dim_h);
        for (j, x) in h_basis.iter().enumerate() {
            h_coords.set_column(j, x.coords());
        }

        // Independence of the h-basis.
        if dim_h > 0 {
            let svd = h_coords.clone().svd(false, false);
            if svd.singular_values.min() < 1e-9 * svd.singular_values.max() {
                return Err(Error::Construction(format!(
                    "{name}: h-basis is linearly dependent"
                )));
            }
        }

        // Bracket closure of h inside g.
        let scale = g.scale();
        for i in 0..dim_h {
            for j in (i + 1)..dim_h {
                let br = g.bracket(&h_basis[i], &h_basis[j])?;
                let resid = residual_outside(&h_coords, br.coords());
                if resid > tol::STRUCTURAL_REL * scale.max(1.0) * 10.0 {
                    return Err(Error::ClosureViolation {
                        residual: resid,
                        tolerance: tol::STRUCTURAL_REL * scale.max(1.0) * 10.0,
                    });
                }
            }
        }

        let (proj_h, proj_m) = if dim_h == 0 {
            (DMatrix::zeros(dim, dim), DMatrix::identity(dim, dim))
        } else {
            // b|h Gram and nondegeneracy.
            let gram_h = h_coords.transpose() * &f * &h_coords;
            let svd = gram_h.clone().svd(false, false);
            if svd.singular_values.min() < 1e-9 * svd.singular_values.max() {
                return Err(Error::Construction(format!(
                    "{name}: b is degenerate on h"
                )));
            }
            let rhs = h_coords.transpose() * &f;
            let sol = gram_h
                .lu()
                .solve(&rhs)
                .ok_or_else(|| Error::Numeric(format!("{name}: projection solve failed")))?;
            let ph = &h_coords * sol;
            let pm = DMatrix::identity(dim, dim) - &ph;
            (ph, pm)
        };

        // m-basis: kernel of Hᵀ F (the b-orthocomplement of h).
        let m_coords = if dim_h == 0 {
            DMatrix::identity(dim, dim)
        } else {
            let (kern, _) = kernel_basis(&(h_coords.transpose() * &f))?;
            let mut m = DMatrix::zeros(dim, kern.len());
            for (j, v) in kern.iter().enumerate() {
                m.set_column(j, v);
            }
            m
        };
        if m_coords.ncols() != dim - dim_h {
            return Err(Error::Construction(format!(
                "{name}: dim m = {} but expected {}",
                m_coords.ncols(),
                dim - dim_h
            )));
        }

        // Reductivity [h, m] ⊂ m, i.e. pr_h([h,m]) = 0.
        for i in 0..dim_h {
            for j in 0..m_coords.ncols() {
                let hx = g.element(h_coords.column(i).clone_owned())?;
                let mx = g.element(m_coords.column(j).clone_owned())?;
                let br = g.bracket(&hx, &mx)?;
                let back = &proj_h * br.coords();
                if back.norm() > tol::STRUCTURAL_REL * scale.max(1.0) * 10.0 * br.coords().norm().max(1.0) {
                    return Err(Error::Construction(format!(
                        "{name}: [h,m] leaves m (not reductive), |pr_h| = {:.2e}",
                        back.norm()
                    )));
                }
            }
        }

        // Projection identities.
        let idem = (&proj_h * &proj_h) - &proj_h;
        if idem.norm() > 1e-8 * (dim as f64) {
            return Err(Error::Numeric(format!("{name}: projection not idempotent")));
        }

        let gram_m = m_coords.transpose() * &f * &m_coords;
        let (plus, minus, zero) = signature(&gram_m);
        if zero > 0 {
            return Err(Error::Construction(format!(
                "{name}: b is degenerate on m"
            )));
        }

        let mut pair = HomogeneousPair {
            name,
            g,
            h_coords,
            m_coords,
            proj_h,
            proj_m,
            theta: None,
            signature_m: (plus, minus),
        };
        // Default Cartan candidate: X ↦ −Xᵀ in the chosen realization.
        let cand = pair.theta_from_matrix_map(|m| -m.transpose());
        if let Ok(theta) = cand {
            if pair.validate_theta(&theta).is_ok() {
                pair.theta = Some(theta);
            }
        }
        Ok(pair)
    }

    /// Installs a user-supplied involution given by its action on matrices.
    pub fn with_theta_map(
        mut self,
        map: impl Fn(&DMatrix<f64>) -> DMatrix<f64>,
    ) -> Result<Self> {
        let theta = self.theta_from_matrix_map(map)?;
        self.validate_theta(&theta)?;
        self.theta = Some(theta);
        Ok(self)
    }

    fn theta_from_matrix_map(
        &self,
        map: impl Fn(&DMatrix<f64>) -> DMatrix<f64>,
    ) -> Result<DMatrix<f64>> {
        let dim = self.g.dim();
        let mut theta = DMatrix::<f64>::zeros(dim, dim);
        for i in 0..dim {
            let img = map(self.g.basis()[i].dm());
            let el = self.g.element_from_matrix(&Mat::new(img)?)?;
            theta.set_column(i, el.coords());
        }
        Ok(theta)
    }

    fn validate_theta(&self, theta: &DMatrix<f64>) -> Result<()> {
        let dim = self.g.dim();
        let id = DMatrix::<f64>::identity(dim, dim);
        if (theta * theta - &id).norm() > 1e-8 * dim as f64 {
            return Err(Error::Validation("theta is not an involution".into()));
        }
        // Automorphism: θ[X,Y] = [θX, θY] on basis pairs.
        for i in 0..dim {
            for j in (i + 1)..dim {
                let xi = self.g.basis_element(i);
                let xj = self.g.basis_element(j);
                let br = self.g.bracket(&xi, &xj).unwrap();
                let lhs = theta * br.coords();
                let txi = self.g.element(theta.column(i).clone_owned()).unwrap();
                let txj = self.g.element(theta.column(j).clone_owned()).unwrap();
                let rhs = self.g.bracket(&txi, &txj).unwrap();
                if (lhs - rhs.coords()).norm() > 1e-7 * (1.0 + br.coords().norm()) {
                    return Err(Error::Validation(
                        "theta is not a Lie algebra automorphism".into(),
                    ));
                }
            }
        }
        // Preserves h.
        if self.dim_h() > 0 {
            let th = theta * &self.h_coords;
            for j in 0..th.ncols() {
                let resid = residual_outside(&self.h_coords, &th.column(j).clone_owned());
                if resid > 1e-7 * (1.0 + th.column(j).norm()) {
                    return Err(Error::Validation("theta does not preserve h".into()));
                }
            }
        }
        // b(θX, θY) = b(X, Y).
        let f = self.g.form_gram();
        let pull = theta.transpose() * f * theta;
        if (&pull - f).norm() > 1e-7 * f.norm() {
            return Err(Error::Validation("theta does not preserve b".into()));
        }
        // Definiteness: b < 0 on the +1 eigenspace, b > 0 on the −1 eigenspace.
        let dec = self.cartan_eigenspaces(theta)?;
        let fk = dec.k_basis.transpose() * f * &dec.k_basis;
        let fp = dec.p_basis.transpose() * f * &dec.p_basis;
        let (kp, _km, kz) = signature(&fk);
        let (_pp, pm, pz) = signature(&fp);
        if kp + kz > 0 || pm + pz > 0 {
            return Err(Error::Validation(
                "theta eigenspaces do not have the Cartan definiteness".into(),
            ));
        }
        Ok(())
    }

    fn cartan_eigenspaces(&self, theta: &DMatrix<f64>) -> Result<CartanDecomposition> {
        let dim = self.g.dim();
        let id = DMatrix::<f64>::identity(dim, dim);
        let (kern_k, _) = kernel_basis(&(theta - &id))?;
        let (kern_p, _) = kernel_basis(&(theta + &id))?;
        if kern_k.len() + kern_p.len() != dim {
            return Err(Error::Numeric(
                "theta eigenspaces do not span the algebra".into(),
            ));
        }
        let mut k = DMatrix::zeros(dim, kern_k.len());
        for (j, v) in kern_k.iter().enumerate() {
            k.set_column(j, v);
        }
        let mut p = DMatrix::zeros(dim, kern_p.len());
        for (j, v) in kern_p.iter().enumerate() {
            p.set_column(j, v);
        }
        Ok(CartanDecomposition { k_basis: k, p_basis: p })
    }

    /// The Cartan decomposition g = k + p for the stored involution.
    pub fn cartan_involution(&self) -> Result<CartanDecomposition> {
        let theta = self.theta.as_ref().ok_or_else(|| {
            Error::Precondition(format!(
                "{}: no valid Cartan involution is attached to this pair",
                self.name
            ))
        })?;
        self.cartan_eigenspaces(theta)
    }

    pub fn theta(&self) -> Option<&DMatrix<f64>> {
        self.theta.as_ref()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn algebra(&self) -> &MatrixLieAlgebra {
        &self.g
    }

    pub fn dim_g(&self) -> usize {
        self.g.dim()
    }

    pub fn dim_h(&self) -> usize {
        self.h_coords.ncols()
    }

    pub fn dim_m(&self) -> usize {
        self.m_coords.ncols()
    }

    pub fn is_group_manifold(&self) -> bool {
        self.dim_h() == 0
    }

    pub fn h_coords(&self) -> &DMatrix<f64> {
        &self.h_coords
    }

    pub fn m_coords(&self) -> &DMatrix<f64> {
        &self.m_coords
    }

    pub fn proj_h_matrix(&self) -> &DMatrix<f64> {
        &self.proj_h
    }

    pub fn proj_m_matrix(&self) -> &DMatrix<f64> {
        &self.proj_m
    }

    /// Signature of b restricted to m.
    pub fn signature_m(&self) -> (usize, usize) {
        self.signature_m
    }

    /// b-orthogonal projection of X onto h.
    pub fn project_h(&self, x: &AlgebraElement) -> Result<AlgebraElement> {
        self.g.element(&self.proj_h * x.coords())
    }

    /// b-orthogonal projection of X onto m.
    pub fn project_m(&self, x: &AlgebraElement) -> Result<AlgebraElement> {
        self.g.element(&self.proj_m * x.coords())
    }

    /// Compact dual M_u = G_u/H_u: g_u = k + ip realified, h_u = (h∩k) + i(h∩p).
    pub fn compact_dual(&self) -> Result<CompactDualPair> {
        let dec = self.cartan_involution()?;
        let g = &self.g;
        let dim = g.dim();

        let to_complex = |m: &DMatrix<f64>| m.map(|x| Complex::new(x, 0.0));
        let i_c = Complex64::new(0.0, 1.0);

        // Dual basis: realify(k-elements) then realify(i * p-elements).
        let mut dual_basis: Vec<Mat> = Vec::with_capacity(dim);
        let mut correspondence = DMatrix::<f64>::zeros(dim, dim);
        let mut col = 0;
        for j in 0..dec.k_basis.ncols() {
            let el = g.element(dec.k_basis.column(j).clone_owned())?;
            let z = to_complex(el.matrix().dm());
            dual_basis.push(Mat::new(realify(&z))?);
            correspondence.set_column(col, &dec.k_basis.column(j).clone_owned());
            col += 1;
        }
        for j in 0..dec.p_basis.ncols() {
            let el = g.element(dec.p_basis.column(j).clone_owned())?;
            let z = to_complex(el.matrix().dm()) * i_c;
            dual_basis.push(Mat::new(realify(&z))?);
            correspondence.set_column(col, &dec.p_basis.column(j).clone_owned());
            col += 1;
        }
        debug_assert_eq!(col, dim);
        // correspondence currently maps dual coordinates to g coordinates;
        // invert it to map g-coords (of k- or p-elements) to dual coords.
        let correspondence = correspondence
            .try_inverse()
            .ok_or_else(|| Error::Numeric("correspondence map is singular".into()))?;

        let dual_alg = MatrixLieAlgebra::from_basis(format!("dual({})", g.name()), dual_basis)?;

        // Killing form of the dual must be negative definite.
        let (plus, minus, zero) = signature(dual_alg.killing_gram());
        if plus > 0 || zero > 0 {
            return Err(Error::Construction(format!(
                "compact dual of {} has indefinite Killing form ({plus},{minus},{zero})",
                self.name
            )));
        }

        // h_u basis: θ-split h into h∩k and h∩p, then map.
        let mut h_dual: Vec<AlgebraElement> = Vec::new();
        if self.dim_h() > 0 {
            let theta = self.theta.as_ref().expect("cartan_involution succeeded");
            let hk = intersect_with_eigenspace(&self.h_coords, theta, 1.0)?;
            let hp = intersect_with_eigenspace(&self.h_coords, theta, -1.0)?;
            if hk.ncols() + hp.ncols() != self.dim_h() {
                return Err(Error::Construction(format!(
                    "{}: theta does not split h (dim h∩k = {}, dim h∩p = {})",
                    self.name,
                    hk.ncols(),
                    hp.ncols()
                )));
            }
            let map_elem = |coords: DVector<f64>, in_p: bool| -> Result<AlgebraElement> {
                let el = g.element(coords)?;
                let z = if in_p {
                    to_complex(el.matrix().dm()) * i_c
                } else {
                    to_complex(el.matrix().dm())
                };
                dual_alg.element_from_matrix(&Mat::new(realify(&z))?)
            };
            for j in 0..hk.ncols() {
                h_dual.push(map_elem(hk.column(j).clone_owned(), false)?);
            }
            for j in 0..hp.ncols() {
                h_dual.push(map_elem(hp.column(j).clone_owned(), true)?);
            }
        }

        let dual_pair = HomogeneousPair::new(
            format!("dual({})", self.name),
            dual_alg,
            &h_dual,
        )?;
        if dual_pair.dim_g() != self.dim_g() || dual_pair.dim_h() != self.dim_h() {
            return Err(Error::Construction("compact dual dimension mismatch".into()));
        }
        Ok(CompactDualPair {
            pair: dual_pair,
            correspondence,
        })
    }

    /// Splits G/H into coset factors along ideals of g when h decomposes
    /// compatibly; returns the pair unchanged when it is coset irreducible.
    pub fn coset_reduce(&self) -> Result<Vec<HomogeneousPair>> {
        let parts = ideal_components(&self.g);
        if parts.len() <= 1 {
            return Ok(vec![self.clone()]);
        }
        // Merge parts that h ties together: P and Q merge when
        // dim(h ∩ (P⊕Q)) exceeds dim(h∩P) + dim(h∩Q).
        let mut groups: Vec<Vec<usize>> = (0..parts.len()).map(|i| vec![i]).collect();
        loop {
            let mut merged = false;
            'outer: for a in 0..groups.len() {
                for b in (a + 1)..groups.len() {
                    let da = self.h_cap_span_dim_multi(&groups[a], &parts);
                    let db = self.h_cap_span_dim_multi(&groups[b], &parts);
                    let idx: Vec<usize> =
                        groups[a].iter().chain(groups[b].iter()).cloned().collect();
                    let du = self.h_cap_span_dim_multi(&idx, &parts);
                    if du > da + db {
                        let gb = groups.remove(b);
                        groups[a].extend(gb);
                        merged = true;
                        break 'outer;
                    }
                }
            }
            if !merged {
                break;
            }
        }
        if groups.len() <= 1 {
            return Ok(vec![self.clone()]);
        }
        // Verify h splits completely across the groups.
        let total: usize = groups
            .iter()
            .map(|gr| self.h_cap_span_dim_multi(gr, &parts))
            .sum();
        if total != self.dim_h() {
            // h does not decompose along any partition: irreducible.
            return Ok(vec![self.clone()]);
        }
        let mut out = Vec::new();
        for (gi, gr) in groups.iter().enumerate() {
            let idx: Vec<usize> = gr.iter().flat_map(|&i| parts[i].iter().cloned()).collect();
            out.push(self.sub_pair(&idx, &format!("{}#factor{}", self.name, gi))?);
        }
        Ok(out)
    }

    fn h_cap_span_dim_multi(&self, group: &[usize], parts: &[Vec<usize>]) -> usize {
        let idx: Vec<usize> = group
            .iter()
            .flat_map(|&i| parts[i].iter().cloned())
            .collect();
        self.h_cap_indices_dim(&idx)
    }

    /// dim(h ∩ span of the given basis indices), via a joint kernel.
    fn h_cap_indices_dim(&self, idx: &[usize]) -> usize {
        if self.dim_h() == 0 {
            return 0;
        }
        let dim = self.g.dim();
        let outside: Vec<usize> = (0..dim).filter(|i| !idx.contains(i)).collect();
        // x ∈ h ∩ span(idx): x = H c with rows outside idx vanishing.
        let mut sys = DMatrix::<f64>::zeros(outside.len(), self.dim_h());
        for (r, &i) in outside.iter().enumerate() {
            for j in 0..self.dim_h() {
                sys[(r, j)] = self.h_coords[(i, j)];
            }
        }
        match kernel_basis(&sys) {
            Ok((kern, _)) => kern.len(),
            Err(_) => 0,
        }
    }

    /// Restriction of the pair to an ideal spanned by the given basis
    /// indices (assumes the basis is block-adapted to the ideal).
    fn sub_pair(&self, idx: &[usize], name: &str) -> Result<HomogeneousPair> {
        let g_basis: Vec<Mat> = idx.iter().map(|&i| self.g.basis()[i].clone()).collect();
        let sub = MatrixLieAlgebra::from_basis(name.to_string(), g_basis)?;
        // install the restricted form
        let mut form = DMatrix::<f64>::zeros(idx.len(), idx.len());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                form[(a, b)] = self.g.form_gram()[(i, j)];
            }
        }
        let sub = sub.with_form(form)?;
        // h ∩ ideal
        let dim = self.g.dim();
        let outside: Vec<usize> = (0..dim).filter(|i| !idx.contains(i)).collect();
        let mut sys = DMatrix::<f64>::zeros(outside.len(), self.dim_h());
        for (r, &i) in outside.iter().enumerate() {
            for j in 0..self.dim_h() {
                sys[(r, j)] = self.h_coords[(i, j)];
            }
        }
        let (kern, _) = kernel_basis(&sys)?;
        let mut h_sub = Vec::new();
        for v in &kern {
            let full = &self.h_coords * v;
            let restricted = DVector::from_iterator(idx.len(), idx.iter().map(|&i| full[i]));
            h_sub.push(sub.element(restricted)?);
        }
        HomogeneousPair::new(name.to_string(), sub, &h_sub)
    }
}

/// Connected components of the basis interaction graph: i ~ j when the
/// bracket or the form couples them. For block-adapted bases of semisimple
/// algebras these are the ideals.
pub fn ideal_components(g: &MatrixLieAlgebra) -> Vec<Vec<usize>> {
    let dim = g.dim();
    let mut parent: Vec<usize> = (0..dim).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let r = find(parent, parent[i]);
            parent[i] = r;
        }
        parent[i]
    }
    let scale = g.scale();
    for i in 0..dim {
        for j in (i + 1)..dim {
            let coupled = g.form_gram()[(i, j)].abs() > 1e-9 * scale
                || (0..dim).any(|k| g.struct_const(i, j, k).abs() > 1e-9);
            if coupled {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a] = b;
                }
            }
        }
    }
    let mut comps: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..dim {
        let r = find(&mut parent, i);
        comps.entry(r).or_default().push(i);
    }
    comps.into_values().collect()
}

/// dim(h ∩ eigenspace of theta), returning a basis of the intersection.
fn intersect_with_eigenspace(
    h_coords: &DMatrix<f64>,
    theta: &DMatrix<f64>,
    sign: f64,
) -> Result<DMatrix<f64>> {
    // x = H c with (theta - sign I) x = 0.
    let dim = h_coords.nrows();
    let id = DMatrix::<f64>::identity(dim, dim);
    let sys = (theta - id * sign) * h_coords;
    let (kern, _) = kernel_basis(&sys)?;
    let mut out = DMatrix::<f64>::zeros(dim, kern.len());
    for (j, v) in kern.iter().enumerate() {
        out.set_column(j, &(h_coords * v));
    }
    Ok(out)
}

fn residual_outside(span_cols: &DMatrix<f64>, v: &DVector<f64>) -> f64 {
    if span_cols.ncols() == 0 {
        return v.norm();
    }
    // least squares projection onto the column span
    let gram = span_cols.transpose() * span_cols;
    let rhs = span_cols.transpose() * v;
    match gram.lu().solve(&rhs) {
        Some(c) => (span_cols * c - v).norm(),
        None => v.norm(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use approx::assert_relative_eq;

    fn so3_so2() -> HomogeneousPair {
        let g = catalog::so_pq(3, 0).unwrap();
        let h = vec![g.basis_element(0)];
        HomogeneousPair::new("so(3)/so(2)", g, &h).unwrap()
    }

    #[test]
    fn projections_are_complementary_idempotent() {
        let pair = so3_so2();
        let g = pair.algebra().clone();
        let x = g
            .element(DVector::from_vec(vec![0.7, -0.4, 1.1]))
            .unwrap();
        let xh = pair.project_h(&x).unwrap();
        let xm = pair.project_m(&x).unwrap();
        assert!((xh.coords() + xm.coords() - x.coords()).norm() < 1e-12);
        let xhh = pair.project_h(&xh).unwrap();
        assert!((xhh.coords() - xh.coords()).norm() < 1e-12);
        // b(h, m) = 0
        assert!(g.form(&xh, &xm).abs() < 1e-10 * g.scale());
    }

    #[test]
    fn project_h_fixes_h_and_kills_m() {
        let pair = so3_so2();
        let g = pair.algebra().clone();
        let h_el = g.basis_element(0);
        let m_el = g.basis_element(2);
        assert!((pair.project_h(&h_el).unwrap().coords() - h_el.coords()).norm() < 1e-12);
        assert!(pair.project_h(&m_el).unwrap().norm() < 1e-12);
    }

    #[test]
    fn group_manifold_projects_to_zero() {
        let g = catalog::sl_r(2).unwrap();
        let pair = HomogeneousPair::new("sl(2,R)/{1}", g.clone(), &[]).unwrap();
        assert!(pair.is_group_manifold());
        let x = g.element(DVector::from_vec(vec![1.0, 2.0, 3.0])).unwrap();
        assert!(pair.project_h(&x).unwrap().norm() == 0.0);
        assert_eq!(pair.signature_m(), (2, 1)); // sl(2,R) Killing signature
    }

    #[test]
    fn decomposition_norm_identity_on_random_elements() {
        use rand::prelude::*;
        use rand_chacha::ChaCha8Rng;
        let pair = so3_so2();
        let g = pair.algebra().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            let x = g
                .element(DVector::from_fn(3, |_, _| rng.gen_range(-2.0..2.0)))
                .unwrap();
            let xh = pair.project_h(&x).unwrap();
            let xm = pair.project_m(&x).unwrap();
            let total = g.form(&x, &x);
            let split = g.form(&xh, &xh) + g.form(&xm, &xm);
            assert_relative_eq!(total, split, epsilon = 1e-9 * g.scale());
        }
    }

    #[test]
    fn sl2r_cartan_dims() {
        let g = catalog::sl_r(2).unwrap();
        let pair = HomogeneousPair::new("sl(2,R)/{1}", g, &[]).unwrap();
        let dec = pair.cartan_involution().unwrap();
        assert_eq!(dec.k_basis.ncols(), 1);
        assert_eq!(dec.p_basis.ncols(), 2);
    }

    #[test]
    fn compact_pair_has_trivial_p() {
        let pair = so3_so2();
        let dec = pair.cartan_involution().unwrap();
        assert_eq!(dec.k_basis.ncols(), 3);
        assert_eq!(dec.p_basis.ncols(), 0);
    }

    #[test]
    fn compact_dual_of_sl2r_is_su2() {
        let g = catalog::sl_r(2).unwrap();
        let pair = HomogeneousPair::new("sl(2,R)/{1}", g, &[]).unwrap();
        let dual = pair.compact_dual().unwrap();
        assert_eq!(dual.pair.dim_g(), 3);
        let (plus, minus, zero) = signature(dual.pair.algebra().killing_gram());
        assert_eq!((plus, minus, zero), (0, 3, 0));
    }

    #[test]
    fn compact_dual_of_compact_pair_is_isomorphic() {
        let pair = so3_so2();
        let dual = pair.compact_dual().unwrap();
        assert_eq!(dual.pair.dim_g(), 3);
        assert_eq!(dual.pair.dim_h(), 1);
        let (plus, minus, _) = signature(dual.pair.algebra().killing_gram());
        assert_eq!((plus, minus), (0, 3));
    }

    #[test]
    fn coset_reduce_of_simple_algebra_is_identity() {
        let pair = so3_so2();
        let factors = pair.coset_reduce().unwrap();
        assert_eq!(factors.len(), 1);
    }
}
