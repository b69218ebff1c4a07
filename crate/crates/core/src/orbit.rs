//! Ellipticity, centralizers, orbit dimension tests, the eigenvalue profile
//! of ad(iξ), the Kostant–Souriau form and moment maps on the adjoint orbit.

use nalgebra::DMatrix;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::{AdSpectrum, AlgebraElement};
use crate::decomposition::HomogeneousPair;
use crate::error::{Error, Result};
use crate::linalg::kernel_basis;
use crate::mat::Mat;
use crate::tol;

/// ξ together with its cached spectral analysis.
#[derive(Clone, Debug)]
pub struct KillingElement {
    pub xi: AlgebraElement,
    pub spectrum: AdSpectrum,
    pub elliptic: bool,
}

impl KillingElement {
    pub fn new(xi: AlgebraElement) -> Result<Self> {
        let spectrum = xi.algebra().spectrum_ad(&xi)?;
        let elliptic = is_elliptic_spectrum(&spectrum);
        Ok(KillingElement {
            xi,
            spectrum,
            elliptic,
        })
    }
}

/// Elliptic ⟺ ad(ξ) semisimple with pure imaginary eigenvalues
/// (|Re λ| below tolerance × spectral radius).
pub fn is_elliptic_spectrum(sp: &AdSpectrum) -> bool {
    let tol_re = (sp.spectral_radius * 1e-8).max(1e-10);
    sp.semisimple && sp.max_abs_real <= tol_re
}

/// Ellipticity test with the full spectrum report.
pub fn is_elliptic(pair: &HomogeneousPair, xi: &AlgebraElement) -> Result<KillingElement> {
    let _ = pair;
    KillingElement::new(xi.clone())
}

/// Centralizer l = ker ad(ξ) as a basis of elements, with the
/// singular-value gap that justified the rank decision.
pub struct Centralizer {
    pub basis: Vec<AlgebraElement>,
    pub gap: f64,
}

pub fn centralizer(pair: &HomogeneousPair, xi: &AlgebraElement) -> Result<Centralizer> {
    let g = pair.algebra();
    let ad = g.ad_matrix(xi);
    let (kern, gap) = kernel_basis(&ad)?;
    let basis = kern
        .into_iter()
        .map(|v| g.element(v))
        .collect::<Result<Vec<_>>>()?;
    Ok(Centralizer { basis, gap })
}

/// Dimension bookkeeping for the open-orbit test at the base point.
#[derive(Clone, Debug, serde::Serialize)]
pub struct OrbitDimReport {
    pub dim_l: usize,
    pub dim_l_cap_h: usize,
    pub orbit_dim: usize,
    pub dim_m: usize,
    pub open: bool,
    /// Group manifolds delegate the verdict: the centralizing right
    /// translations are not inside Ad(G), so the Ad-centralizer test
    /// is skipped there.
    pub delegated_group_manifold: bool,
    /// Mirror test: dim h − dim(h∩l) compared against dim g − dim l,
    /// openness of the H-orbit through the base point of G/L.
    pub mirror_orbit_dim: usize,
    pub mirror_dim: usize,
    pub mirror_open: bool,
}

/// Open-orbit test: the L-orbit through the base point is open in G/H iff
/// dim l − dim(l∩h) = dim g − dim h. Also evaluates the mirror H-orbit
/// test on G/L.
pub fn open_orbit_check(pair: &HomogeneousPair, xi: &AlgebraElement) -> Result<OrbitDimReport> {
    let g = pair.algebra();
    let dim = g.dim();
    let ad = g.ad_matrix(xi);
    let (kern, _gap) = kernel_basis(&ad)?;
    let dim_l = kern.len();

    // l ∩ h: joint kernel of ad(ξ) and pr_m.
    let mut stacked = DMatrix::<f64>::zeros(2 * dim, dim);
    stacked.view_mut((0, 0), (dim, dim)).copy_from(&ad);
    stacked
        .view_mut((dim, 0), (dim, dim))
        .copy_from(pair.proj_m_matrix());
    let (kern_lh, _) = kernel_basis(&stacked)?;
    let dim_l_cap_h = kern_lh.len();

    // h ∩ l for the mirror test is the same joint kernel.
    let dim_m = pair.dim_m();
    let orbit_dim = dim_l - dim_l_cap_h;
    let delegated = pair.is_group_manifold();
    let open = if delegated {
        // Right translations centralize every ξ on the group manifold and
        // act transitively; openness holds by construction.
        true
    } else {
        orbit_dim == dim_m
    };

    let mirror_orbit_dim = pair.dim_h() - dim_l_cap_h;
    let mirror_dim = dim - dim_l;
    let mirror_open = if delegated {
        true
    } else {
        mirror_orbit_dim == mirror_dim
    };

    Ok(OrbitDimReport {
        dim_l,
        dim_l_cap_h,
        orbit_dim,
        dim_m,
        open,
        delegated_group_manifold: delegated,
        mirror_orbit_dim,
        mirror_dim,
        mirror_open,
    })
}

/// Counts of eigenvalues of ad(ξ) by the sign of the imaginary part.
/// For elliptic ξ these are the eigenvalue counts of ad(iξ) by sign, and
/// n_pos is the complex dimension of the flag manifold of the parabolic
/// built from ξ.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ParabolicProfile {
    pub n_neg: usize,
    pub n_zero: usize,
    pub n_pos: usize,
}

pub fn parabolic_profile(
    pair: &HomogeneousPair,
    xi: &KillingElement,
) -> Result<ParabolicProfile> {
    if !xi.elliptic {
        return Err(Error::Precondition(
            "parabolic profile requires an elliptic element".into(),
        ));
    }
    let _ = pair;
    let sp = &xi.spectrum;
    let thresh = (sp.spectral_radius * 1e-8).max(1e-10);
    let mut profile = ParabolicProfile {
        n_neg: 0,
        n_zero: 0,
        n_pos: 0,
    };
    for e in &sp.eigenvalues {
        if e.im > thresh {
            profile.n_pos += 1;
        } else if e.im < -thresh {
            profile.n_neg += 1;
        } else {
            profile.n_zero += 1;
        }
    }
    Ok(profile)
}

/// The Kostant–Souriau form ω(η,ζ) = b(ξ, [η,ζ]).
pub fn kostant_souriau(
    pair: &HomogeneousPair,
    xi: &AlgebraElement,
    eta: &AlgebraElement,
    zeta: &AlgebraElement,
) -> Result<f64> {
    let g = pair.algebra();
    let br = g.bracket(eta, zeta)?;
    Ok(g.form(xi, &br))
}

/// Moment map for the H-action on the orbit: pr_h of the orbit point.
pub fn moment_map_h(pair: &HomogeneousPair, point: &AlgebraElement) -> Result<AlgebraElement> {
    pair.project_h(point)
}

/// Deterministic sample of the adjoint orbit by random group words.
#[derive(Clone, Debug)]
pub struct OrbitSample {
    /// Each word is a list of (basis index, coefficient); the group element
    /// is the product of exp(c·X_i) factors in order.
    pub words: Vec<Vec<(usize, f64)>>,
    pub group: Vec<Mat>,
    pub points: Vec<AlgebraElement>,
    pub seed: u64,
    /// max relative drift of b(point, point) from b(ξ,ξ) over the sample.
    pub level_drift: f64,
}

/// Draws `n_samples` group words of the given length with coefficients
/// uniform in [−radius, radius] and evaluates Ad along them. Coefficients
/// are pre-drawn sequentially from the seeded generator, evaluation is
/// parallel, so results do not depend on the schedule.
pub fn sample_orbit(
    pair: &HomogeneousPair,
    xi: &AlgebraElement,
    n_samples: usize,
    radius: f64,
    word_length: usize,
    seed: u64,
) -> Result<OrbitSample> {
    if n_samples < 1 || word_length < 1 || radius <= 0.0 {
        return Err(Error::Precondition(
            "sample_orbit needs n_samples >= 1, word_length >= 1, radius > 0".into(),
        ));
    }
    let g = pair.algebra();
    let dim = g.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let words: Vec<Vec<(usize, f64)>> = (0..n_samples)
        .map(|_| {
            (0..word_length)
                .map(|_| (rng.gen_range(0..dim), rng.gen_range(-radius..radius)))
                .collect()
        })
        .collect();

    let results: Result<Vec<(Mat, AlgebraElement)>> = words
        .par_iter()
        .map(|word| {
            let gm = word_to_group(pair, word)?;
            let pt = g.adjoint_action(&gm, xi)?;
            Ok((gm, pt))
        })
        .collect();
    let pairs = results?;

    let b_xi = g.form(xi, xi);
    let scale = b_xi.abs().max(g.scale()).max(1.0);
    let mut level_drift: f64 = 0.0;
    for (_, pt) in &pairs {
        let b_pt = g.form(pt, pt);
        level_drift = level_drift.max((b_pt - b_xi).abs() / scale);
    }
    if level_drift > tol::ORBIT_DRIFT_REL {
        return Err(Error::Numeric(format!(
            "orbit sample left the level set of b: drift {level_drift:.3e}"
        )));
    }

    let (group, points) = pairs.into_iter().unzip();
    Ok(OrbitSample {
        words,
        group,
        points,
        seed,
        level_drift,
    })
}

/// Realizes a word as a product of exponentials.
pub fn word_to_group(pair: &HomogeneousPair, word: &[(usize, f64)]) -> Result<Mat> {
    let g = pair.algebra();
    let mut out = Mat::identity(g.matrix_size());
    for &(idx, c) in word {
        let factor = g.basis()[idx].scale(c)?.exp()?;
        out = out.mul(&factor)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::decomposition::HomogeneousPair;
    use approx::assert_relative_eq;
    use nalgebra::DVector;

    fn so3_so2() -> HomogeneousPair {
        let g = catalog::so_pq(3, 0).unwrap();
        let h = vec![g.basis_element(0)];
        HomogeneousPair::new("so(3)/so(2)", g, &h).unwrap()
    }

    #[test]
    fn elliptic_cases() {
        let pair = so3_so2();
        let g = pair.algebra().clone();
        let l3 = g.basis_element(2);
        assert!(is_elliptic(&pair, &l3).unwrap().elliptic);

        let sl2 = catalog::sl_r(2).unwrap();
        let gm = HomogeneousPair::new("sl(2,R)/{1}", sl2.clone(), &[]).unwrap();
        // diag(1,-1) has real spectrum.
        let h = sl2
            .element_from_matrix(&Mat::from_row_major(2, &[1., 0., 0., -1.]).unwrap())
            .unwrap();
        assert!(!is_elliptic(&gm, &h).unwrap().elliptic);
        // nilpotent e is not semisimple.
        let e = sl2
            .element_from_matrix(&Mat::from_row_major(2, &[0., 1., 0., 0.]).unwrap())
            .unwrap();
        assert!(!is_elliptic(&gm, &e).unwrap().elliptic);
    }

    #[test]
    fn su4_centralizer_of_xi1_is_u3() {
        let entry = catalog::build_pair("su(2p,2q)/sp(p,q)", &[2, 0]).unwrap();
        let xi = entry.canonical_xi.unwrap();
        let cent = centralizer(&entry.pair, &xi.xi).unwrap();
        assert_eq!(cent.basis.len(), 9);
        // bracket-closed
        let g = entry.pair.algebra();
        for a in &cent.basis {
            for b in &cent.basis {
                let br = g.bracket(a, b).unwrap();
                let ad = g.ad_matrix(&xi.xi);
                assert!((ad * br.coords()).norm() < 1e-8);
            }
        }
    }

    #[test]
    fn so4_centralizer_of_j_blocks_is_u2() {
        let g = catalog::so_pq(4, 0).unwrap();
        let pair = HomogeneousPair::new("so(4)/{1}", g.clone(), &[]).unwrap();
        let j = Mat::from_row_major(
            4,
            &[0., 1., 0., 0., -1., 0., 0., 0., 0., 0., 0., 1., 0., 0., -1., 0.],
        )
        .unwrap();
        let xi = g.element_from_matrix(&j).unwrap();
        assert_eq!(centralizer(&pair, &xi).unwrap().basis.len(), 4);
    }

    #[test]
    fn centralizer_of_abelian_is_everything() {
        let g = catalog::so_pq(2, 0).unwrap();
        let pair = HomogeneousPair::new("so(2)/{1}", g.clone(), &[]).unwrap();
        let xi = g.basis_element(0);
        assert_eq!(centralizer(&pair, &xi).unwrap().basis.len(), 1);
    }

    #[test]
    fn open_orbit_su4_sp2() {
        let entry = catalog::build_pair("su(2p,2q)/sp(p,q)", &[2, 0]).unwrap();
        let xi = entry.canonical_xi.unwrap();
        let rep = open_orbit_check(&entry.pair, &xi.xi).unwrap();
        assert_eq!(rep.dim_l, 9);
        assert_eq!(rep.dim_l_cap_h, 4);
        assert_eq!(rep.orbit_dim, 5);
        assert_eq!(rep.dim_m, 5);
        assert!(rep.open);
        assert!(rep.mirror_open);
    }

    #[test]
    fn parabolic_profile_su4() {
        let entry = catalog::build_pair("su(2p,2q)/sp(p,q)", &[2, 0]).unwrap();
        let xi = entry.canonical_xi.unwrap();
        let prof = parabolic_profile(&entry.pair, &xi).unwrap();
        assert_eq!(prof.n_pos, 3);
        assert_eq!(prof.n_neg, 3);
        assert_eq!(prof.n_zero, 9);
    }

    #[test]
    fn parabolic_profile_of_zero() {
        let pair = so3_so2();
        let z = KillingElement::new(pair.algebra().zero()).unwrap();
        let prof = parabolic_profile(&pair, &z).unwrap();
        assert_eq!(
            prof,
            ParabolicProfile {
                n_neg: 0,
                n_zero: 3,
                n_pos: 0
            }
        );
    }

    #[test]
    fn parabolic_profile_rejects_non_elliptic() {
        let sl2 = catalog::sl_r(2).unwrap();
        let pair = HomogeneousPair::new("sl(2,R)/{1}", sl2.clone(), &[]).unwrap();
        let h = sl2
            .element_from_matrix(&Mat::from_row_major(2, &[1., 0., 0., -1.]).unwrap())
            .unwrap();
        let ke = KillingElement::new(h).unwrap();
        assert!(parabolic_profile(&pair, &ke).is_err());
    }

    #[test]
    fn kostant_souriau_values_on_so3() {
        let g = crate::algebra::tests::so3_raw();
        let pair = HomogeneousPair::new("so(3)/{1}", g.clone(), &[]).unwrap();
        let l1 = g.basis_element(0);
        let l2 = g.basis_element(1);
        let l3 = g.basis_element(2);
        // ω(η,η) = 0
        assert_eq!(kostant_souriau(&pair, &l3, &l1, &l1).unwrap(), 0.0);
        // ξ = L1: ω(L1, L2) = B(L1, L3) = 0
        assert_relative_eq!(
            kostant_souriau(&pair, &l1, &l1, &l2).unwrap(),
            0.0,
            epsilon = 1e-12
        );
        // ξ = L3: ω(L1, L2) = B(L3, L3) = −2
        assert_relative_eq!(
            kostant_souriau(&pair, &l3, &l1, &l2).unwrap(),
            -2.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn kostant_radical_is_centralizer() {
        // {η : ω(η, ·) = 0} = ker ad ξ by invariance of b; compare ranks.
        let entry = catalog::build_pair("su(2p,2q)/sp(p,q)", &[2, 0]).unwrap();
        let pair = &entry.pair;
        let g = pair.algebra();
        let xi = entry.canonical_xi.unwrap().xi;
        let dim = g.dim();
        let mut w = DMatrix::<f64>::zeros(dim, dim);
        for i in 0..dim {
            for j in 0..dim {
                w[(i, j)] = kostant_souriau(pair, &xi, &g.basis_element(i), &g.basis_element(j))
                    .unwrap();
            }
        }
        let (kern_w, _) = kernel_basis(&w).unwrap();
        let (kern_ad, _) = kernel_basis(&g.ad_matrix(&xi)).unwrap();
        assert_eq!(kern_w.len(), kern_ad.len());
    }

    #[test]
    fn moment_map_kills_m_and_group_manifold() {
        let pair = so3_so2();
        let g = pair.algebra().clone();
        let m_el = g.basis_element(1); // orthogonal to h = span(basis 0)
        assert!(moment_map_h(&pair, &m_el).unwrap().norm() < 1e-12);

        let sl2 = catalog::sl_r(2).unwrap();
        let gm = HomogeneousPair::new("sl(2,R)/{1}", sl2.clone(), &[]).unwrap();
        let x = sl2.element(DVector::from_vec(vec![1., 2., 3.])).unwrap();
        assert_eq!(moment_map_h(&gm, &x).unwrap().norm(), 0.0);
    }

    #[test]
    fn orbit_sample_deterministic_and_level_preserving() {
        let pair = so3_so2();
        let g = pair.algebra().clone();
        let xi = g.basis_element(2);
        let s1 = sample_orbit(&pair, &xi, 50, 2.0, 3, 42).unwrap();
        let s2 = sample_orbit(&pair, &xi, 50, 2.0, 3, 42).unwrap();
        for (a, b) in s1.points.iter().zip(s2.points.iter()) {
            assert_eq!(a.coords(), b.coords());
        }
        assert!(s1.level_drift < 1e-9);

        // trivial word with zero coefficients gives back ξ
        let id_word = vec![(0usize, 0.0f64); 3];
        let gm = word_to_group(&pair, &id_word).unwrap();
        let pt = g.adjoint_action(&gm, &xi).unwrap();
        assert!((pt.coords() - xi.coords()).norm() < 1e-12);
    }

    #[test]
    fn centralizer_dim_constant_along_orbit() {
        let entry = catalog::build_pair("su(2p,2q)/sp(p,q)", &[2, 0]).unwrap();
        let pair = &entry.pair;
        let g = pair.algebra();
        let xi = entry.canonical_xi.unwrap().xi;
        let sample = sample_orbit(pair, &xi, 10, 1.0, 3, 7).unwrap();
        let d0 = centralizer(pair, &xi).unwrap().basis.len();
        for pt in &sample.points {
            assert_eq!(centralizer(pair, pt).unwrap().basis.len(), d0);
        }
    }

    #[test]
    fn sample_orbit_rejects_bad_config() {
        let pair = so3_so2();
        let xi = pair.algebra().basis_element(2);
        assert!(sample_orbit(&pair, &xi, 0, 1.0, 3, 1).is_err());
        assert!(sample_orbit(&pair, &xi, 1, -1.0, 3, 1).is_err());
    }
}
