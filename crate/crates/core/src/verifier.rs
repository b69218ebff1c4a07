//! The constant-length verdict engine: evaluates f_ξ over sampled group
//! elements, runs a derivative-free counterexample search, and hosts the
//! compact-dual carryover and product-space condition batteries.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraElement;
use crate::catalog::ProductPair;
use crate::decomposition::HomogeneousPair;
use crate::error::{Error, Result};
use crate::mat::Mat;
use crate::orbit::{self, open_orbit_check, sample_orbit, KillingElement};
use crate::tol;

/// f_ξ(g) = b(pr_h(Ad(g)ξ), pr_h(Ad(g)ξ)). ξ^M has constant length iff this
/// is independent of g.
pub fn f_xi(pair: &HomogeneousPair, xi: &AlgebraElement, g: &Mat) -> Result<f64> {
    let moved = pair.algebra().adjoint_action(g, xi)?;
    let h_part = pair.project_h(&moved)?;
    Ok(pair.algebra().form(&h_part, &h_part))
}

/// The squared metric length of ξ^M at the coset of g:
/// b(pr_m(Ad(g)ξ), pr_m(Ad(g)ξ)). Satisfies f_ξ + length = b(ξ,ξ).
pub fn killing_length(pair: &HomogeneousPair, xi: &AlgebraElement, g: &Mat) -> Result<f64> {
    let moved = pair.algebra().adjoint_action(g, xi)?;
    let m_part = pair.project_m(&moved)?;
    Ok(pair.algebra().form(&m_part, &m_part))
}

/// Verdict of a defect run. `Constant` and `NonConstant` are separated by a
/// two-sided tolerance band; anything in between is `Inconclusive`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Constant,
    NonConstant,
    Inconclusive,
}

/// Sampling and search configuration for [`verify_constant_length`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub n_samples: usize,
    pub radius_set: Vec<f64>,
    pub word_length: usize,
    pub seed: u64,
    /// Normalized defect below which the verdict is `Constant`.
    pub tolerance: f64,
    /// Minimum number of search evaluations in phase 2.
    pub search_min_iters: usize,
    /// Hard cap on search evaluations per start point.
    pub search_max_iters: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            n_samples: 1000,
            radius_set: vec![0.5, 1.0, 2.0],
            word_length: 3,
            seed: 42,
            tolerance: tol::DEFECT_CONSTANT,
            search_min_iters: 200,
            search_max_iters: 4000,
        }
    }
}

impl VerifyConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_samples == 0
            || self.word_length == 0
            || self.radius_set.is_empty()
            || self.radius_set.iter().any(|r| *r <= 0.0)
            || self.tolerance <= 0.0
        {
            return Err(Error::Precondition(
                "verify config requires positive samples, radii, word length and tolerance"
                    .into(),
            ));
        }
        Ok(())
    }
}

/// Statistics of f_ξ over sampled group elements plus the search phase.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DefectReport {
    pub baseline: f64,
    pub min_f: f64,
    pub max_f: f64,
    /// (max_f − min_f) / scale with scale = max(|b(ξ,ξ)|, max|f|, 1).
    pub defect: f64,
    pub scale: f64,
    pub n_samples: usize,
    pub seed: u64,
    pub search_iterations: usize,
    pub verdict: Verdict,
    pub tolerance_used: f64,
    pub elliptic: bool,
    /// Set when ξ is not elliptic: the classification scope is elliptic ξ,
    /// such runs are exploratory.
    pub exploratory_non_elliptic: bool,
    /// max relative drift of the orbit invariant b(Ad(g)ξ, Ad(g)ξ).
    pub level_drift: f64,
    pub notes: Vec<String>,
}

/// Two-phase constancy verdict for f_ξ.
///
/// Phase 1 evaluates f over seeded random words stratified by radius.
/// Phase 2 hill-climbs |f − baseline| from the most extreme samples over
/// coordinate directions with a shrinking step. The verdict is `Constant`
/// only if the normalized defect stays below the tolerance through both
/// phases, `NonConstant` only if it exceeds 100× the tolerance.
pub fn verify_constant_length(
    pair: &HomogeneousPair,
    xi: &AlgebraElement,
    config: &VerifyConfig,
) -> Result<DefectReport> {
    config.validate()?;
    if xi.norm() == 0.0 {
        return Err(Error::Precondition("xi must be nonzero".into()));
    }
    let g = pair.algebra();
    let ke = KillingElement::new(xi.clone())?;
    let mut notes = Vec::new();
    if !ke.elliptic {
        notes.push(
            "xi is not elliptic; run is exploratory (classification scope is elliptic xi)"
                .to_string(),
        );
    }

    let b_xi = g.form(xi, xi);
    let baseline = match f_xi(pair, xi, &Mat::identity(g.matrix_size())) {
        Ok(v) => v,
        Err(e) => return Ok(inconclusive_report(&ke, b_xi, config, e, notes)),
    };

    let mut min_f = baseline;
    let mut max_f = baseline;
    let mut level_drift: f64 = 0.0;
    // Keep the extreme samples (by |f − baseline|) as search seeds.
    let mut extremes: Vec<(f64, Mat)> = Vec::new();

    let per_radius = config.n_samples.div_ceil(config.radius_set.len());
    for (ri, &radius) in config.radius_set.iter().enumerate() {
        let sample = match sample_orbit(
            pair,
            xi,
            per_radius,
            radius,
            config.word_length,
            config.seed.wrapping_add(ri as u64),
        ) {
            Ok(s) => s,
            Err(e) => return Ok(inconclusive_report(&ke, b_xi, config, e, notes)),
        };
        level_drift = level_drift.max(sample.level_drift);
        let fs: Result<Vec<f64>> = sample
            .points
            .par_iter()
            .map(|pt| {
                let h_part = pair.project_h(pt)?;
                Ok(g.form(&h_part, &h_part))
            })
            .collect();
        let fs = match fs {
            Ok(v) => v,
            Err(e) => return Ok(inconclusive_report(&ke, b_xi, config, e, notes)),
        };
        for (f, gm) in fs.iter().zip(sample.group.iter()) {
            min_f = min_f.min(*f);
            max_f = max_f.max(*f);
            extremes.push(((f - baseline).abs(), gm.clone()));
        }
    }
    extremes.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
    extremes.truncate(5);

    // Phase 2: derivative-free search expanding the observed f-interval.
    let starts: Vec<Mat> = extremes.into_iter().map(|(_, m)| m).collect();
    let search_results: Result<Vec<(f64, f64, usize)>> = starts
        .par_iter()
        .map(|start| search_from(pair, xi, start, baseline, config))
        .collect();
    let mut search_iterations = 0;
    match search_results {
        Ok(results) => {
            for (lo, hi, iters) in results {
                min_f = min_f.min(lo);
                max_f = max_f.max(hi);
                search_iterations += iters;
            }
        }
        Err(e) => return Ok(inconclusive_report(&ke, b_xi, config, e, notes)),
    }

    let scale = b_xi.abs().max(max_f.abs()).max(min_f.abs()).max(1.0);
    let defect = (max_f - min_f) / scale;
    let verdict = if defect < config.tolerance {
        Verdict::Constant
    } else if defect > tol::DEFECT_NON_CONSTANT_FACTOR * config.tolerance {
        Verdict::NonConstant
    } else {
        Verdict::Inconclusive
    };
    Ok(DefectReport {
        baseline,
        min_f,
        max_f,
        defect,
        scale,
        n_samples: per_radius * config.radius_set.len(),
        seed: config.seed,
        search_iterations,
        verdict,
        tolerance_used: config.tolerance,
        elliptic: ke.elliptic,
        exploratory_non_elliptic: !ke.elliptic,
        level_drift,
        notes,
    })
}

fn inconclusive_report(
    ke: &KillingElement,
    b_xi: f64,
    config: &VerifyConfig,
    err: Error,
    mut notes: Vec<String>,
) -> DefectReport {
    notes.push(format!("numeric failure: {err}"));
    DefectReport {
        baseline: b_xi,
        min_f: f64::NAN,
        max_f: f64::NAN,
        defect: f64::NAN,
        scale: b_xi.abs().max(1.0),
        n_samples: 0,
        seed: config.seed,
        search_iterations: 0,
        verdict: Verdict::Inconclusive,
        tolerance_used: config.tolerance,
        elliptic: ke.elliptic,
        exploratory_non_elliptic: !ke.elliptic,
        level_drift: f64::NAN,
        notes,
    }
}

/// Coordinate-direction pattern search from one start point, maximizing
/// |f − baseline|. Returns (min_f, max_f, evaluations).
fn search_from(
    pair: &HomogeneousPair,
    xi: &AlgebraElement,
    start: &Mat,
    baseline: f64,
    config: &VerifyConfig,
) -> Result<(f64, f64, usize)> {
    let g = pair.algebra();
    let dim = g.dim();
    let mut current = start.clone();
    let mut best = f_xi(pair, xi, &current)?;
    let mut lo = best.min(baseline);
    let mut hi = best.max(baseline);
    let mut step = 0.5;
    let mut iters = 1usize;
    while iters < config.search_max_iters {
        let mut improved = false;
        for i in 0..dim {
            for sign in [1.0, -1.0] {
                if iters >= config.search_max_iters {
                    break;
                }
                let factor = g.basis()[i].scale(sign * step)?.exp()?;
                let cand = current.mul(&factor)?;
                let f = match f_xi(pair, xi, &cand) {
                    Ok(v) => v,
                    // A step that walks out of numerical range just ends
                    // the line search in that direction.
                    Err(_) => continue,
                };
                iters += 1;
                lo = lo.min(f);
                hi = hi.max(f);
                if (f - baseline).abs() > (best - baseline).abs() * (1.0 + 1e-12) {
                    best = f;
                    current = cand;
                    improved = true;
                }
            }
        }
        if !improved {
            step *= 0.5;
            if step < 1e-10 && iters >= config.search_min_iters {
                break;
            }
        }
    }
    Ok((lo, hi, iters))
}

/// Verdict comparison between a pair and its compact dual.
#[derive(Clone, Debug, Serialize)]
pub struct CarryoverReport {
    pub noncompact: DefectReport,
    pub compact: DefectReport,
    pub agree: bool,
    /// Which θ-eigenspace ξ lies in and how it was corresponded.
    pub correspondence: String,
    /// Set when the dual pair is a catalog family that admits constant
    /// length fields even though the corresponded ξ does not produce one
    /// (or vice versa); the comparison is ξ-wise, per the h-embedding.
    pub note: String,
}

/// Runs the defect verdict on both M = G/H and its compact dual M_u with
/// the corresponded ξ. ξ must be a θ-eigenvector: elements of k map
/// identically, elements of p map to i·ξ in the dual.
pub fn carryover_check(
    pair: &HomogeneousPair,
    xi: &AlgebraElement,
    config: &VerifyConfig,
) -> Result<CarryoverReport> {
    let dec = pair.cartan_involution()?;
    let theta = pair.theta().expect("cartan_involution succeeded");
    let tx = theta * xi.coords();
    let plus = (&tx - xi.coords()).norm();
    let minus = (&tx + xi.coords()).norm();
    let nrm = xi.norm().max(1e-30);
    let correspondence = if plus < 1e-8 * nrm {
        "xi in k: identity correspondence".to_string()
    } else if minus < 1e-8 * nrm {
        "xi in p: corresponded to i*xi in the dual".to_string()
    } else {
        return Err(Error::Precondition(
            "carryover requires xi in a theta eigenspace (k or p)".into(),
        ));
    };
    let _ = dec;
    let dual = pair.compact_dual()?;
    let xi_dual = dual
        .pair
        .algebra()
        .element(&dual.correspondence * xi.coords())?;

    let noncompact = verify_constant_length(pair, xi, config)?;
    let compact = verify_constant_length(&dual.pair, &xi_dual, config)?;
    let agree = noncompact.verdict == compact.verdict;
    let note = if agree {
        String::new()
    } else {
        "verdicts differ; the comparison is against the dual of the same h-embedding \
         with the corresponded xi, not against the dual pair's own canonical element"
            .to_string()
    };
    Ok(CarryoverReport {
        noncompact,
        compact,
        agree,
        correspondence,
        note,
    })
}

/// Computed conditions of the product-space theorem battery.
#[derive(Clone, Debug, Serialize)]
pub struct Theorem72Report {
    /// ξ has constant length on the product M.
    pub cond1: Option<bool>,
    /// every ξ_i has constant length on its factor M_i.
    pub cond2: Option<bool>,
    /// every ξ_i, padded with zeros, has constant length on M.
    pub cond3: Option<bool>,
    /// the Ad(G)-centralizer of ξ has an open orbit on M.
    pub cond4: Option<bool>,
    /// (1)⇒(2), (2)⇔(3), (1)⇔(4) on the computed verdicts; `None` when any
    /// sub-verdict was inconclusive.
    pub implications_ok: Option<bool>,
    pub factor_verdicts: Vec<Verdict>,
}

fn verdict_to_bool(v: Verdict) -> Option<bool> {
    match v {
        Verdict::Constant => Some(true),
        Verdict::NonConstant => Some(false),
        Verdict::Inconclusive => None,
    }
}

/// Evaluates the four conditions of the product-space theorem on a product
/// pair with ξ given per factor. Requires every factor image φ_i(H̃) to be
/// proper and positive-dimensional; other configurations are rejected
/// (see [`crate::catalog::example73_pair`] for the surjective-factor case).
pub fn theorem72_battery(
    product: &ProductPair,
    xi_parts: &[AlgebraElement],
    config: &VerifyConfig,
) -> Result<Theorem72Report> {
    product.check_theorem72_hypotheses()?;
    if xi_parts.len() != product.factor_count() {
        return Err(Error::Precondition(format!(
            "expected {} xi parts, got {}",
            product.factor_count(),
            xi_parts.len()
        )));
    }

    let xi_full = product.embed_sum(xi_parts)?;
    if xi_full.norm() == 0.0 {
        return Err(Error::Precondition("xi must be nonzero".into()));
    }

    // (1): constant length on the product.
    let r1 = verify_constant_length(&product.pair, &xi_full, config)?;
    // (2): per-factor verdicts; a zero ξ_i is trivially constant.
    let mut factor_verdicts = Vec::new();
    for (i, xi_i) in xi_parts.iter().enumerate() {
        if xi_i.norm() == 0.0 {
            factor_verdicts.push(Verdict::Constant);
            continue;
        }
        let fp = product.factor_pair(i)?;
        let r = verify_constant_length(&fp, xi_i, config)?;
        factor_verdicts.push(r.verdict);
    }
    let cond2 = factor_verdicts
        .iter()
        .map(|v| verdict_to_bool(*v))
        .try_fold(true, |acc, v| v.map(|b| acc && b));
    // (3): each ξ_i padded with zeros, on the full product.
    let mut cond3 = Some(true);
    for (i, xi_i) in xi_parts.iter().enumerate() {
        if xi_i.norm() == 0.0 {
            continue;
        }
        let padded = product.embed_single(i, xi_i)?;
        let r = verify_constant_length(&product.pair, &padded, config)?;
        cond3 = match (cond3, verdict_to_bool(r.verdict)) {
            (Some(acc), Some(b)) => Some(acc && b),
            _ => None,
        };
    }
    // (4): open orbit of the Ad(G)-centralizer.
    let orbit = open_orbit_check(&product.pair, &xi_full)?;
    let cond4 = Some(orbit.open);

    let cond1 = verdict_to_bool(r1.verdict);
    let implications_ok = match (cond1, cond2, cond3, cond4) {
        (Some(c1), Some(c2), Some(c3), Some(c4)) => {
            let imp12 = !c1 || c2;
            let eq23 = c2 == c3;
            let eq14 = c1 == c4;
            Some(imp12 && eq23 && eq14)
        }
        _ => None,
    };
    Ok(Theorem72Report {
        cond1,
        cond2,
        cond3,
        cond4,
        implications_ok,
        factor_verdicts,
    })
}

/// Moment-map consistency: b(μ_H(p), μ_H(p)) at orbit points equals f_ξ at
/// the generating group elements. Returns the max absolute discrepancy.
pub fn moment_map_consistency(
    pair: &HomogeneousPair,
    xi: &AlgebraElement,
    n_samples: usize,
    seed: u64,
) -> Result<f64> {
    let sample = sample_orbit(pair, xi, n_samples, 1.0, 3, seed)?;
    let g = pair.algebra();
    let mut worst: f64 = 0.0;
    for (pt, gm) in sample.points.iter().zip(sample.group.iter()) {
        let mu = orbit::moment_map_h(pair, pt)?;
        let lhs = g.form(&mu, &mu);
        let rhs = f_xi(pair, xi, gm)?;
        worst = worst.max((lhs - rhs).abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::decomposition::HomogeneousPair;
    use approx::assert_relative_eq;

    fn so3_so2() -> HomogeneousPair {
        let g = catalog::so_pq(3, 0).unwrap();
        let h = vec![g.basis_element(0)];
        HomogeneousPair::new("so(3)/so(2)", g, &h).unwrap()
    }

    fn quick() -> VerifyConfig {
        VerifyConfig {
            n_samples: 120,
            radius_set: vec![0.5, 1.5],
            word_length: 3,
            seed: 42,
            search_min_iters: 60,
            search_max_iters: 400,
            ..VerifyConfig::default()
        }
    }

    #[test]
    fn f_xi_identity_on_m_element_is_zero() {
        let pair = so3_so2();
        let g = pair.algebra().clone();
        let m_el = g.basis_element(2);
        let v = f_xi(&pair, &m_el, &Mat::identity(3)).unwrap();
        assert!(v.abs() < 1e-12);
    }

    #[test]
    fn f_xi_rotates_h_into_m_on_the_sphere() {
        // h = span of the rotation in the (1,2) coordinates; a quarter turn
        // around an orthogonal axis moves ξ entirely into m.
        let g = crate::algebra::tests::so3_raw();
        let h = vec![g.basis_element(2)];
        let pair = HomogeneousPair::new("so(3)/so(2)", g.clone(), &h).unwrap();
        let xi = g.basis_element(2);
        let f_id = f_xi(&pair, &xi, &Mat::identity(3)).unwrap();
        assert_relative_eq!(f_id, g.form(&xi, &xi), epsilon = 1e-10);
        let quarter = g
            .basis_element(0)
            .matrix()
            .scale(std::f64::consts::FRAC_PI_2)
            .unwrap()
            .exp()
            .unwrap();
        let f_rot = f_xi(&pair, &xi, &quarter).unwrap();
        assert!(f_rot.abs() < 1e-10, "f after quarter turn = {f_rot}");
    }

    #[test]
    fn group_manifold_f_is_zero() {
        let g = catalog::sl_r(2).unwrap();
        let pair = HomogeneousPair::new("sl(2,R)/{1}", g.clone(), &[]).unwrap();
        let xi = g.basis_element(0);
        let w = g.basis_element(2).matrix().exp().unwrap();
        assert_eq!(f_xi(&pair, &xi, &w).unwrap(), 0.0);
    }

    #[test]
    fn complementarity_holds_on_random_words() {
        use rand::prelude::*;
        use rand_chacha::ChaCha8Rng;
        let pair = so3_so2();
        let g = pair.algebra().clone();
        let xi = g
            .element(nalgebra::DVector::from_vec(vec![0.4, -0.8, 1.3]))
            .unwrap();
        let b = g.form(&xi, &xi);
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..100 {
            let w: Vec<(usize, f64)> = (0..3)
                .map(|_| (rng.gen_range(0..3), rng.gen_range(-2.0..2.0)))
                .collect();
            let gm = orbit::word_to_group(&pair, &w).unwrap();
            let total = f_xi(&pair, &xi, &gm).unwrap() + killing_length(&pair, &xi, &gm).unwrap();
            assert_relative_eq!(total, b, epsilon = 1e-9 * g.scale().max(1.0));
        }
    }

    #[test]
    fn sphere_is_non_constant() {
        let pair = so3_so2();
        let xi = pair.algebra().basis_element(0); // generator of h
        let rep = verify_constant_length(&pair, &xi, &quick()).unwrap();
        assert_eq!(rep.verdict, Verdict::NonConstant);
        // brute-force oracle: f sweeps from b(ξ,ξ) down to 0 along a
        // one-parameter rotation, so the defect is essentially 1.
        assert!(rep.defect > 0.5, "defect = {}", rep.defect);
    }

    #[test]
    fn hopf_field_is_constant() {
        let entry = catalog::build_pair("so(2p+2,2q)/so(2p+1,2q)", &[1, 0]).unwrap();
        let xi = entry.canonical_xi.unwrap();
        let rep = verify_constant_length(&entry.pair, &xi.xi, &quick()).unwrap();
        assert_eq!(rep.verdict, Verdict::Constant);
        assert!(rep.defect < 1e-8);
    }

    #[test]
    fn group_manifold_verdict_constant() {
        let g = catalog::sl_r(2).unwrap();
        let pair = HomogeneousPair::new("sl(2,R)/{1}", g.clone(), &[]).unwrap();
        let xi = g.basis_element(0);
        let rep = verify_constant_length(&pair, &xi, &quick()).unwrap();
        assert_eq!(rep.verdict, Verdict::Constant);
        assert_eq!(rep.baseline, 0.0);
        assert_eq!(rep.max_f, 0.0);
    }

    #[test]
    fn scale_covariance_of_the_report() {
        let pair = so3_so2();
        let xi = pair.algebra().basis_element(0);
        let cfg = quick();
        let r1 = verify_constant_length(&pair, &xi, &cfg).unwrap();
        let r2 = verify_constant_length(&pair, &xi.scaled(3.0), &cfg).unwrap();
        assert_eq!(r1.verdict, r2.verdict);
        assert_relative_eq!(r2.baseline, 9.0 * r1.baseline, epsilon = 1e-9);
        assert_relative_eq!(r2.max_f, 9.0 * r1.max_f, epsilon = 1e-7);
        assert_relative_eq!(r2.min_f, 9.0 * r1.min_f, epsilon = 1e-7);
    }

    #[test]
    fn zero_xi_rejected() {
        let pair = so3_so2();
        let z = pair.algebra().zero();
        assert!(verify_constant_length(&pair, &z, &quick()).is_err());
    }

    #[test]
    fn non_elliptic_is_exploratory_not_fatal() {
        let g = catalog::sl_r(2).unwrap();
        let pair = HomogeneousPair::new("sl(2,R)/{1}", g.clone(), &[]).unwrap();
        let h = g
            .element_from_matrix(&Mat::from_row_major(2, &[1., 0., 0., -1.]).unwrap())
            .unwrap();
        let rep = verify_constant_length(&pair, &h, &quick()).unwrap();
        assert!(rep.exploratory_non_elliptic);
        assert_eq!(rep.verdict, Verdict::Constant); // group manifold
    }

    #[test]
    fn moment_map_matches_f_xi() {
        let pair = so3_so2();
        let xi = pair
            .algebra()
            .element(nalgebra::DVector::from_vec(vec![1.0, 0.5, -0.25]))
            .unwrap();
        let worst = moment_map_consistency(&pair, &xi, 100, 5).unwrap();
        assert!(worst < 1e-10, "discrepancy {worst}");
    }
}
