//! Constructors for the classical matrix families, the exceptional
//! derivation algebras, the catalog of homogeneous pairs and the product
//! builders.
//!
//! Conventions fixed here (the groups themselves are only defined up to
//! conjugacy, so a concrete realization must be chosen):
//! - indefinite forms are diag(I_p, −I_q) with the positive block first;
//! - symplectic forms use the per-coordinate 2×2 block Ω = diag(ω, …, ω)
//!   with ω = [[0,1],[−1,0]];
//! - quaternions embed in 2×2 complex blocks, so sp(p,q) sits inside
//!   su(2p,2q) with Hermitian form diag(I_p,−I_q) ⊗ I₂;
//! - complex algebras are realified: every entry a+bi becomes the block
//!   [[a,−b],[b,a]], doubling the real dimension;
//! - every basis matrix is normalized to unit Frobenius norm, which keeps
//!   word sampling well conditioned on the noncompact families.

mod entries;
mod products;

pub use entries::{
    battery_entries, build_pair, catalog_listing, CatalogEntry, EntryInfo, ExpectedVerdict,
};
pub use products::{
    build_product_pair, example73_pair, product_battery_cases, so4_so3_square,
    so4_x_so4_diag_so3, ProductCase, ProductPair, ProductSpec,
};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, realify};
use crate::mat::Mat;
use crate::octonion::{self, MultTable};
use crate::algebra::MatrixLieAlgebra;

fn e(n: usize, i: usize, j: usize) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(n, n);
    m[(i, j)] = 1.0;
    m
}

fn ec(n: usize, i: usize, j: usize) -> DMatrix<Complex64> {
    let mut m = DMatrix::zeros(n, n);
    m[(i, j)] = Complex64::new(1.0, 0.0);
    m
}

fn normalize(mats: Vec<DMatrix<f64>>) -> Vec<Mat> {
    mats.into_iter()
        .map(|m| {
            let nrm = m.norm();
            Mat::new(m / nrm).expect("finite basis matrix")
        })
        .collect()
}

fn signs(p: usize, q: usize) -> Vec<f64> {
    let mut s = vec![1.0; p];
    s.extend(vec![-1.0; q]);
    s
}

/// so(p,q): real matrices with Xᵀ S + S X = 0, S = diag(I_p, −I_q).
pub fn so_pq(p: usize, q: usize) -> Result<MatrixLieAlgebra> {
    let n = p + q;
    if n < 2 {
        return Err(Error::Catalog(format!("so({p},{q}) needs p+q >= 2")));
    }
    let s = signs(p, q);
    let mut basis = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            basis.push(e(n, i, j) - e(n, j, i) * (s[i] * s[j]));
        }
    }
    let name = format!("so({p},{q})");
    if n == 2 {
        // so(2) and so(1,1) are abelian; the Killing form vanishes, so the
        // trace form serves as the invariant form.
        let alg = MatrixLieAlgebra::from_basis_unvalidated_form(name, normalize(basis))?;
        let b = alg.basis()[0].dm();
        let gram = DMatrix::from_element(1, 1, (b * b).trace());
        return alg.with_form(gram);
    }
    MatrixLieAlgebra::from_basis(name, normalize(basis))
}

/// sl(n,ℝ): traceless real matrices.
pub fn sl_r(n: usize) -> Result<MatrixLieAlgebra> {
    if n < 2 {
        return Err(Error::Catalog("sl(n,R) needs n >= 2".into()));
    }
    let mut basis = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                basis.push(e(n, i, j));
            }
        }
    }
    for i in 0..n - 1 {
        basis.push(e(n, i, i) - e(n, i + 1, i + 1));
    }
    MatrixLieAlgebra::from_basis(format!("sl({n},R)"), normalize(basis))
}

/// Complex basis of su(p,q): X†J + JX = 0 and tr X = 0, J = diag(I_p,−I_q).
fn su_pq_complex_basis(p: usize, q: usize) -> Vec<DMatrix<Complex64>> {
    let n = p + q;
    let s = signs(p, q);
    let i = Complex64::new(0.0, 1.0);
    let mut basis = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            let sab = Complex64::new(s[a] * s[b], 0.0);
            basis.push(ec(n, a, b) - ec(n, b, a) * sab);
            basis.push((ec(n, a, b) + ec(n, b, a) * sab) * i);
        }
    }
    for a in 0..n - 1 {
        basis.push((ec(n, a, a) - ec(n, a + 1, a + 1)) * i);
    }
    basis
}

/// su(p,q), realified to 2(p+q)×2(p+q) real matrices.
pub fn su_pq(p: usize, q: usize) -> Result<MatrixLieAlgebra> {
    let n = p + q;
    if n < 2 {
        return Err(Error::Catalog(format!("su({p},{q}) needs p+q >= 2")));
    }
    let basis = su_pq_complex_basis(p, q).iter().map(realify).collect();
    MatrixLieAlgebra::from_basis(format!("su({p},{q})"), normalize(basis))
}

/// u(n): su(n) plus the center i·I. Invariant form is the negative trace
/// form, since the Killing form is degenerate on the center.
pub fn u_n(n: usize) -> Result<MatrixLieAlgebra> {
    if n < 1 {
        return Err(Error::Catalog("u(n) needs n >= 1".into()));
    }
    let i = Complex64::new(0.0, 1.0);
    let mut cb = if n >= 2 { su_pq_complex_basis(n, 0) } else { Vec::new() };
    cb.push(DMatrix::from_diagonal_element(n, n, i));
    let basis = normalize(cb.iter().map(realify).collect());
    let alg = MatrixLieAlgebra::from_basis_unvalidated_form(format!("u({n})"), basis)?;
    let dim = alg.dim();
    let mut gram = DMatrix::zeros(dim, dim);
    for a in 0..dim {
        for b in a..dim {
            let t = (alg.basis()[a].dm() * alg.basis()[b].dm()).trace();
            gram[(a, b)] = t;
            gram[(b, a)] = t;
        }
    }
    alg.with_form(gram)
}

/// sp(n,ℝ) for Ω = diag(ω,…,ω): matrices Ω·S with S symmetric.
pub fn sp_r(n: usize) -> Result<MatrixLieAlgebra> {
    if n < 1 {
        return Err(Error::Catalog("sp(n,R) needs n >= 1".into()));
    }
    let nn = 2 * n;
    let om = omega_block(nn);
    let mut basis = Vec::new();
    for a in 0..nn {
        for b in a..nn {
            let s = if a == b {
                e(nn, a, a)
            } else {
                e(nn, a, b) + e(nn, b, a)
            };
            basis.push(&om * s);
        }
    }
    MatrixLieAlgebra::from_basis(format!("sp({n},R)"), normalize(basis))
}

fn omega_block(nn: usize) -> DMatrix<f64> {
    let mut om = DMatrix::zeros(nn, nn);
    for i in 0..nn / 2 {
        om[(2 * i, 2 * i + 1)] = 1.0;
        om[(2 * i + 1, 2 * i)] = -1.0;
    }
    om
}

fn omega_block_c(nn: usize) -> DMatrix<Complex64> {
    omega_block(nn).map(|x| Complex64::new(x, 0.0))
}

/// Quaternion units as 2×2 complex matrices: q = α + βj ↦ [[α, β],[−β̄, ᾱ]].
fn quaternion_units() -> [DMatrix<Complex64>; 4] {
    let i = Complex64::new(0.0, 1.0);
    let o = Complex64::new(1.0, 0.0);
    let z = Complex64::new(0.0, 0.0);
    [
        DMatrix::from_row_slice(2, 2, &[o, z, z, o]),    // 1
        DMatrix::from_row_slice(2, 2, &[i, z, z, -i]),   // i
        DMatrix::from_row_slice(2, 2, &[z, o, -o, z]),   // j
        DMatrix::from_row_slice(2, 2, &[z, i, i, z]),    // k
    ]
}

fn put_block(m: &mut DMatrix<Complex64>, a: usize, b: usize, blk: &DMatrix<Complex64>, c: Complex64) {
    for r in 0..2 {
        for s in 0..2 {
            m[(2 * a + r, 2 * b + s)] += c * blk[(r, s)];
        }
    }
}

/// sp(p,q): quaternionic anti-Hermitian matrices w.r.t. diag(I_p,−I_q),
/// via 2×2 complex blocks, realified.
pub fn sp_pq(p: usize, q: usize) -> Result<MatrixLieAlgebra> {
    let n = p + q;
    if n < 1 {
        return Err(Error::Catalog("sp(p,q) needs p+q >= 1".into()));
    }
    let s = signs(p, q);
    let units = quaternion_units();
    let one = Complex64::new(1.0, 0.0);
    let nn = 2 * n;
    let mut cb: Vec<DMatrix<Complex64>> = Vec::new();
    for a in 0..n {
        for u in 1..4 {
            let mut m = DMatrix::zeros(nn, nn);
            put_block(&mut m, a, a, &units[u], one);
            cb.push(m);
        }
    }
    for a in 0..n {
        for b in (a + 1)..n {
            for u in 0..4 {
                let mut m = DMatrix::zeros(nn, nn);
                put_block(&mut m, a, b, &units[u], one);
                let dagger = units[u].adjoint();
                put_block(&mut m, b, a, &dagger, Complex64::new(-s[a] * s[b], 0.0));
                cb.push(m);
            }
        }
    }
    let basis = cb.iter().map(realify).collect();
    MatrixLieAlgebra::from_basis(format!("sp({p},{q})"), normalize(basis))
}

fn complexified(cb: Vec<DMatrix<Complex64>>) -> Vec<DMatrix<f64>> {
    let i = Complex64::new(0.0, 1.0);
    let mut out = Vec::with_capacity(2 * cb.len());
    for z in cb {
        out.push(realify(&z));
        out.push(realify(&(&z * i)));
    }
    out
}

/// sl(n,ℂ) as a real algebra (realified), dimension 2(n²−1).
pub fn sl_c(n: usize) -> Result<MatrixLieAlgebra> {
    if n < 2 {
        return Err(Error::Catalog("sl(n,C) needs n >= 2".into()));
    }
    let mut cb = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                cb.push(ec(n, i, j));
            }
        }
    }
    for i in 0..n - 1 {
        cb.push(ec(n, i, i) - ec(n, i + 1, i + 1));
    }
    MatrixLieAlgebra::from_basis(format!("sl({n},C)R"), normalize(complexified(cb)))
}

/// so(n,ℂ) as a real algebra (realified), dimension n(n−1).
pub fn so_c(n: usize) -> Result<MatrixLieAlgebra> {
    if n < 3 {
        return Err(Error::Catalog("so(n,C) needs n >= 3".into()));
    }
    let mut cb = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            cb.push(ec(n, i, j) - ec(n, j, i));
        }
    }
    MatrixLieAlgebra::from_basis(format!("so({n},C)R"), normalize(complexified(cb)))
}

/// sp(n,ℂ) as a real algebra (realified), dimension 2n(2n+1).
pub fn sp_c(n: usize) -> Result<MatrixLieAlgebra> {
    if n < 1 {
        return Err(Error::Catalog("sp(n,C) needs n >= 1".into()));
    }
    let nn = 2 * n;
    let om = omega_block_c(nn);
    let mut cb = Vec::new();
    for a in 0..nn {
        for b in a..nn {
            let s = if a == b {
                ec(nn, a, a)
            } else {
                ec(nn, a, b) + ec(nn, b, a)
            };
            cb.push(&om * s);
        }
    }
    MatrixLieAlgebra::from_basis(format!("sp({n},C)R"), normalize(complexified(cb)))
}

/// Derivation algebra of a bilinear multiplication on ℝ^m: all D with
/// D(xy) = D(x)y + x D(y), computed as the kernel of the induced linear
/// system. Fails with a rank-ambiguity error when the kernel is not
/// numerically well separated.
pub fn derivation_algebra(table: &MultTable, name: &str) -> Result<MatrixLieAlgebra> {
    let m = table.dim;
    if m > 8 {
        return Err(Error::Catalog("derivation solver supports m <= 8".into()));
    }
    // Unknowns D[k,l] flattened as k*m + l.
    let mut rows = DMatrix::<f64>::zeros(m * m * m, m * m);
    let mut r = 0;
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                for l in 0..m {
                    // D(e_i e_j)_k picks D[k,l] T[i,j,l].
                    rows[(r, k * m + l)] += table.entry(i, j, l);
                    // (D e_i · e_j)_k picks T[l,j,k] D[l,i].
                    rows[(r, l * m + i)] -= table.entry(l, j, k);
                    // (e_i · D e_j)_k picks T[i,l,k] D[l,j].
                    rows[(r, l * m + j)] -= table.entry(i, l, k);
                }
                r += 1;
            }
        }
    }
    let (kernel, _gap) = kernel_basis(&rows)?;
    if kernel.is_empty() {
        return Err(Error::Catalog(format!("{name}: no derivations found")));
    }
    let basis: Vec<DMatrix<f64>> = kernel
        .iter()
        .map(|v| DMatrix::from_fn(m, m, |k, l| v[k * m + l]))
        .collect();
    MatrixLieAlgebra::from_basis(name, normalize(basis))
}

/// Derivations restricted to the imaginary part (coordinates 1..m). Every
/// derivation of a unital composition algebra kills the unit and preserves
/// its orthocomplement; this is validated, not assumed.
pub fn derivation_algebra_imaginary(table: &MultTable, name: &str) -> Result<MatrixLieAlgebra> {
    let full = derivation_algebra(table, name)?;
    let m = table.dim;
    let mut basis = Vec::new();
    for b in full.basis() {
        let d = b.dm();
        let unit_action: f64 = (0..m)
            .map(|k| d[(k, 0)].abs() + d[(0, k)].abs())
            .sum();
        if unit_action > 1e-9 {
            return Err(Error::Validation(format!(
                "{name}: derivation does not annihilate the unit ({unit_action:.2e})"
            )));
        }
        basis.push(DMatrix::from_fn(m - 1, m - 1, |i, j| d[(i + 1, j + 1)]));
    }
    MatrixLieAlgebra::from_basis(name, normalize(basis))
}

/// Compact g₂ = Der(𝕆) acting on the 7-dimensional imaginary part.
pub fn g2_compact() -> Result<MatrixLieAlgebra> {
    derivation_algebra_imaginary(&octonion::octonions(), "g2")
}

/// Split g₂ = Der of the split octonions, inside so(3,4).
pub fn g2_split() -> Result<MatrixLieAlgebra> {
    derivation_algebra_imaginary(&octonion::split_octonions(), "g2 split")
}

/// g₂(ℂ) realified: complex span of the compact derivations, acting on the
/// realified ℂ⁷.
pub fn g2_complex() -> Result<MatrixLieAlgebra> {
    let compact = g2_compact()?;
    let cb: Vec<DMatrix<Complex64>> = compact
        .basis()
        .iter()
        .map(|b| b.dm().map(|x| Complex64::new(x, 0.0)))
        .collect();
    MatrixLieAlgebra::from_basis("g2(C)R", normalize(complexified(cb)))
}

/// Parses a family string like `su(2,2)`, `sl(4,R)`, `so(3,4)`, `sp(1,1)`,
/// `sp(2,R)`, `sl(4,C)`, `so(6,C)`, `sp(2,C)`, `g2`, `g2_split`, `g2_c`,
/// `u(3)`, `so(2)` and builds the algebra. Matrix realizations are capped
/// at size 16.
pub fn build_algebra(family: &str) -> Result<MatrixLieAlgebra> {
    let alg = parse_and_build(family)?;
    if alg.matrix_size() > 16 {
        return Err(Error::Catalog(format!(
            "{family}: matrix realization {}x{} exceeds the supported desk scale (16)",
            alg.matrix_size(),
            alg.matrix_size()
        )));
    }
    Ok(alg)
}

fn parse_and_build(family: &str) -> Result<MatrixLieAlgebra> {
    let f = family.trim();
    let lower = f.to_ascii_lowercase();
    match lower.as_str() {
        "g2" | "g2_compact" => return g2_compact(),
        "g2_split" => return g2_split(),
        "g2_c" | "g2(c)" => return g2_complex(),
        _ => {}
    }
    let (head, args) = lower
        .split_once('(')
        .and_then(|(h, rest)| rest.strip_suffix(')').map(|a| (h, a)))
        .ok_or_else(|| Error::Catalog(format!("unrecognized family: {family}")))?;
    let parts: Vec<&str> = args.split(',').map(str::trim).collect();
    let num = |s: &str| -> Result<usize> {
        s.parse::<usize>()
            .map_err(|_| Error::Catalog(format!("bad parameter {s:?} in {family}")))
    };
    match (head, parts.as_slice()) {
        ("so", [n, "c"]) => so_c(num(n)?),
        ("so", [p, q]) => so_pq(num(p)?, num(q)?),
        ("so", [n]) => so_pq(num(n)?, 0),
        ("su", [p, q]) => su_pq(num(p)?, num(q)?),
        ("su", [n]) => su_pq(num(n)?, 0),
        ("sl", [n, "r"]) => sl_r(num(n)?),
        ("sl", [n, "c"]) => sl_c(num(n)?),
        ("sp", [n, "r"]) => sp_r(num(n)?),
        ("sp", [n, "c"]) => sp_c(num(n)?),
        ("sp", [p, q]) => sp_pq(num(p)?, num(q)?),
        ("u", [n]) => u_n(num(n)?),
        _ => Err(Error::Catalog(format!("unrecognized family: {family}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_dimensions() {
        assert_eq!(so_pq(3, 0).unwrap().dim(), 3);
        assert_eq!(so_pq(3, 4).unwrap().dim(), 21);
        assert_eq!(su_pq(2, 2).unwrap().dim(), 15);
        assert_eq!(sl_r(4).unwrap().dim(), 15);
        assert_eq!(sp_r(2).unwrap().dim(), 10);
        // dim sp(p,q) = n(2n+1), n = p+q.
        assert_eq!(sp_pq(1, 1).unwrap().dim(), 10);
        assert_eq!(sp_pq(2, 0).unwrap().dim(), 10);
        // realified complex: twice the complex dimension.
        assert_eq!(sl_c(2).unwrap().dim(), 6);
        assert_eq!(sl_c(4).unwrap().dim(), 30);
        assert_eq!(so_c(6).unwrap().dim(), 30);
        assert_eq!(sp_c(2).unwrap().dim(), 20);
        assert_eq!(u_n(3).unwrap().dim(), 9);
    }

    #[test]
    fn g2_dimension_and_containment() {
        let g2 = g2_compact().unwrap();
        assert_eq!(g2.dim(), 14);
        assert_eq!(g2.matrix_size(), 7);
        // contained in so(7): antisymmetric in the orthonormal basis.
        for b in g2.basis() {
            assert!((b.dm() + b.dm().transpose()).norm() < 1e-9);
        }
        // Killing form negative definite.
        let (plus, minus, zero) = crate::linalg::signature(g2.killing_gram());
        assert_eq!((plus, minus, zero), (0, 14, 0));
    }

    #[test]
    fn g2_split_dimension_and_containment() {
        let g2s = g2_split().unwrap();
        assert_eq!(g2s.dim(), 14);
        // contained in so(3,4): Dᵀ S + S D = 0 for S = diag(1,1,1,-1,-1,-1,-1).
        let s = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            1.0, 1.0, 1.0, -1.0, -1.0, -1.0, -1.0,
        ]));
        for b in g2s.basis() {
            assert!((b.dm().transpose() * &s + &s * b.dm()).norm() < 1e-9);
        }
        // Killing signature (8, 6): 8 noncompact directions, 6 along the
        // maximal compact su(2)+su(2).
        let (plus, minus, zero) = crate::linalg::signature(g2s.killing_gram());
        assert_eq!((plus, minus, zero), (8, 6, 0));
    }

    #[test]
    fn g2_complex_dimension() {
        let g2c = g2_complex().unwrap();
        assert_eq!(g2c.dim(), 28);
        assert_eq!(g2c.matrix_size(), 14);
    }

    #[test]
    fn quaternion_derivations_dimension() {
        let der = derivation_algebra(&octonion::quaternions(), "der(H)").unwrap();
        assert_eq!(der.dim(), 3);
    }

    #[test]
    fn family_parser_accepts_catalog_grammar() {
        assert_eq!(build_algebra("sp(1,1)").unwrap().dim(), 10);
        assert_eq!(build_algebra("sl(2,C)").unwrap().dim(), 6);
        assert_eq!(build_algebra("g2").unwrap().dim(), 14);
        assert!(build_algebra("e8").is_err());
        assert!(build_algebra("so(20,20)").is_err());
    }
}
