//! Product homogeneous spaces G = G₁ × ⋯ × G_r with H embedded through
//! per-factor homomorphism images, and the standard battery cases.

use nalgebra::{DMatrix, DVector};

use crate::algebra::{AlgebraElement, MatrixLieAlgebra};
use crate::decomposition::HomogeneousPair;
use crate::error::{Error, Result};
use crate::mat::Mat;

use super::so_pq;

/// Build data for a product pair: factor algebras, the images of a common
/// set of H̃ generators in each factor, and per-factor form weights.
#[derive(Clone)]
pub struct ProductSpec {
    pub name: String,
    pub factors: Vec<MatrixLieAlgebra>,
    /// h_generators[k][i] = image of the k-th H̃ generator in factor i
    /// (a zero matrix for a trivial component map).
    pub h_generators: Vec<Vec<Mat>>,
    pub weights: Vec<f64>,
}

/// A built product pair with factor bookkeeping.
#[derive(Clone)]
pub struct ProductPair {
    pub pair: HomogeneousPair,
    factors: Vec<MatrixLieAlgebra>,
    /// basis-coordinate ranges of each factor inside the product algebra
    ranges: Vec<(usize, usize)>,
    h_generators: Vec<Vec<Mat>>,
    /// dim φ_i(H̃) per factor
    phi_dims: Vec<usize>,
    weights: Vec<f64>,
}

/// Block-diagonal product algebra with h the image of the diagonal-style
/// map and b the weighted sum of per-factor forms.
pub fn build_product_pair(spec: &ProductSpec) -> Result<ProductPair> {
    let r = spec.factors.len();
    if r == 0 {
        return Err(Error::Construction("product needs at least one factor".into()));
    }
    if spec.weights.len() != r {
        return Err(Error::Construction("one weight per factor required".into()));
    }
    if spec.weights.iter().any(|w| *w <= 0.0) {
        return Err(Error::Construction("factor weights must be positive".into()));
    }
    for gens in &spec.h_generators {
        if gens.len() != r {
            return Err(Error::Construction(
                "every H generator needs an image per factor".into(),
            ));
        }
    }

    let sizes: Vec<usize> = spec.factors.iter().map(|f| f.matrix_size()).collect();
    let total: usize = sizes.iter().sum();
    let offsets: Vec<usize> = sizes
        .iter()
        .scan(0usize, |acc, s| {
            let o = *acc;
            *acc += s;
            Some(o)
        })
        .collect();

    // Product basis: factor bases embedded block-diagonally.
    let mut basis = Vec::new();
    let mut ranges = Vec::new();
    for (i, f) in spec.factors.iter().enumerate() {
        let start = basis.len();
        for b in f.basis() {
            basis.push(Mat::new(embed_block(b.dm(), total, offsets[i]))?);
        }
        ranges.push((start, basis.len()));
    }
    let alg = MatrixLieAlgebra::from_basis(spec.name.clone(), basis)?;

    // Weighted block-diagonal form.
    let dim = alg.dim();
    let mut form = DMatrix::<f64>::zeros(dim, dim);
    for (i, f) in spec.factors.iter().enumerate() {
        let (s, e) = ranges[i];
        for a in s..e {
            for b in s..e {
                form[(a, b)] = spec.weights[i] * f.form_gram()[(a - s, b - s)];
            }
        }
    }
    let alg = alg.with_form(form)?;

    // h basis: block-diagonal tuples of the generator images.
    let mut h = Vec::new();
    for gens in &spec.h_generators {
        let mut m = DMatrix::<f64>::zeros(total, total);
        for (i, gi) in gens.iter().enumerate() {
            if gi.n() != sizes[i] {
                return Err(Error::Construction(format!(
                    "{}: generator image size {} does not match factor size {}",
                    spec.name,
                    gi.n(),
                    sizes[i]
                )));
            }
            copy_block(&mut m, gi.dm(), offsets[i]);
        }
        h.push(alg.element_from_matrix(&Mat::new(m)?)?);
    }

    // Injectivity of the combined map on the Lie algebra level.
    if !h.is_empty() {
        let mut stack = DMatrix::<f64>::zeros(dim, h.len());
        for (j, el) in h.iter().enumerate() {
            stack.set_column(j, el.coords());
        }
        let svd = stack.svd(false, false);
        if svd.singular_values.min() < 1e-9 * svd.singular_values.max() {
            return Err(Error::Construction(format!(
                "{}: diagonal map is not injective",
                spec.name
            )));
        }
    }

    // dim φ_i(H̃) per factor: rank of the span of the images.
    let mut phi_dims = Vec::new();
    for i in 0..r {
        let f = &spec.factors[i];
        let mut cols = Vec::new();
        for gens in &spec.h_generators {
            cols.push(f.element_from_matrix(&gens[i])?);
        }
        phi_dims.push(span_rank(f, &cols));
    }

    let pair = HomogeneousPair::new(spec.name.clone(), alg, &h)?;
    Ok(ProductPair {
        pair,
        factors: spec.factors.clone(),
        ranges,
        h_generators: spec.h_generators.clone(),
        phi_dims,
        weights: spec.weights.clone(),
    })
}

fn embed_block(b: &DMatrix<f64>, total: usize, offset: usize) -> DMatrix<f64> {
    let mut m = DMatrix::<f64>::zeros(total, total);
    copy_block(&mut m, b, offset);
    m
}

fn copy_block(m: &mut DMatrix<f64>, b: &DMatrix<f64>, offset: usize) {
    for i in 0..b.nrows() {
        for j in 0..b.ncols() {
            m[(offset + i, offset + j)] += b[(i, j)];
        }
    }
}

fn span_rank(f: &MatrixLieAlgebra, elems: &[AlgebraElement]) -> usize {
    if elems.is_empty() {
        return 0;
    }
    let mut stack = DMatrix::<f64>::zeros(f.dim(), elems.len());
    for (j, el) in elems.iter().enumerate() {
        stack.set_column(j, el.coords());
    }
    let svd = stack.svd(false, false);
    let smax = svd.singular_values.max();
    if smax == 0.0 {
        return 0;
    }
    svd.singular_values.iter().filter(|s| **s > 1e-9 * smax).count()
}

impl ProductPair {
    pub fn factor_count(&self) -> usize {
        self.factors.len()
    }

    pub fn factor_algebra(&self, i: usize) -> &MatrixLieAlgebra {
        &self.factors[i]
    }

    pub fn phi_dim(&self, i: usize) -> usize {
        self.phi_dims[i]
    }

    /// The factor space M_i = G_i / φ_i(H̃) as a standalone pair.
    pub fn factor_pair(&self, i: usize) -> Result<HomogeneousPair> {
        let f = &self.factors[i];
        let scaled = f.with_form(f.form_gram() * self.weights[i])?;
        let mut elems = Vec::new();
        for gens in &self.h_generators {
            elems.push(scaled.element_from_matrix(&gens[i])?);
        }
        // Reduce to an independent spanning subset.
        let mut chosen: Vec<AlgebraElement> = Vec::new();
        for el in elems {
            if el.norm() < 1e-12 {
                continue;
            }
            let mut trial = chosen.clone();
            trial.push(el.clone());
            if span_rank(&scaled, &trial) > chosen.len() {
                chosen.push(el);
            }
        }
        HomogeneousPair::new(
            format!("{}#factor{}", self.pair.name(), i),
            scaled,
            &chosen,
        )
    }

    /// Embeds per-factor elements as their sum in the product algebra.
    pub fn embed_sum(&self, parts: &[AlgebraElement]) -> Result<AlgebraElement> {
        if parts.len() != self.factor_count() {
            return Err(Error::Precondition(format!(
                "expected {} parts, got {}",
                self.factor_count(),
                parts.len()
            )));
        }
        let dim = self.pair.dim_g();
        let mut coords = DVector::<f64>::zeros(dim);
        for (i, part) in parts.iter().enumerate() {
            if !part.algebra().same_algebra(&self.factors[i]) {
                return Err(Error::Precondition(format!(
                    "part {i} does not live in factor algebra {i}"
                )));
            }
            let (s, _e) = self.ranges[i];
            for (j, v) in part.coords().iter().enumerate() {
                coords[s + j] = *v;
            }
        }
        self.pair.algebra().element(coords)
    }

    /// Embeds a single factor element, zero elsewhere.
    pub fn embed_single(&self, i: usize, part: &AlgebraElement) -> Result<AlgebraElement> {
        let mut parts: Vec<AlgebraElement> =
            self.factors.iter().map(|f| f.zero()).collect();
        parts[i] = part.clone();
        self.embed_sum(&parts)
    }

    /// The product battery requires every φ_i(H̃) proper and
    /// positive-dimensional.
    pub fn check_theorem72_hypotheses(&self) -> Result<()> {
        for (i, f) in self.factors.iter().enumerate() {
            if self.phi_dims[i] == 0 {
                return Err(Error::Precondition(format!(
                    "factor {i}: φ(H) is trivial; the coset reduces to a group factor"
                )));
            }
            if self.phi_dims[i] >= f.dim() {
                return Err(Error::Precondition(format!(
                    "factor {i}: φ(H) is all of the factor; route this case through the \
                     surjective-factor path instead"
                )));
            }
        }
        Ok(())
    }
}

/// so(3) generators acting on three chosen coordinates of ℝ^n.
fn so3_generators(n: usize, coords: [usize; 3]) -> Vec<Mat> {
    let pairs = [
        (coords[0], coords[1]),
        (coords[0], coords[2]),
        (coords[1], coords[2]),
    ];
    pairs
        .iter()
        .map(|&(a, b)| {
            let mut m = DMatrix::<f64>::zeros(n, n);
            m[(a, b)] = 1.0;
            m[(b, a)] = -1.0;
            Mat::new(m).expect("finite")
        })
        .collect()
}

fn j_full(n: usize) -> Mat {
    let mut m = DMatrix::<f64>::zeros(n, n);
    for k in 0..n / 2 {
        m[(2 * k, 2 * k + 1)] = 1.0;
        m[(2 * k + 1, 2 * k)] = -1.0;
    }
    Mat::new(m).expect("finite")
}

/// SO(4)×SO(4) with SO(3) embedded diagonally (acting on the last three
/// coordinates of each factor).
pub fn so4_x_so4_diag_so3() -> Result<ProductPair> {
    let f1 = so_pq(4, 0)?;
    let f2 = so_pq(4, 0)?;
    let gens = so3_generators(4, [1, 2, 3]);
    let h_generators = gens
        .iter()
        .map(|g| vec![g.clone(), g.clone()])
        .collect();
    build_product_pair(&ProductSpec {
        name: "so(4)+so(4)/diag so(3)".into(),
        factors: vec![f1, f2],
        h_generators,
        weights: vec![1.0, 1.0],
    })
}

/// (SO(4)/SO(3)) × (SO(4)/SO(3)) with the product (non-diagonal) embedding.
pub fn so4_so3_square() -> Result<ProductPair> {
    let f1 = so_pq(4, 0)?;
    let f2 = so_pq(4, 0)?;
    let gens = so3_generators(4, [1, 2, 3]);
    let zero = Mat::zeros(4);
    let mut h_generators: Vec<Vec<Mat>> = Vec::new();
    for g in &gens {
        h_generators.push(vec![g.clone(), zero.clone()]);
    }
    for g in &gens {
        h_generators.push(vec![zero.clone(), g.clone()]);
    }
    build_product_pair(&ProductSpec {
        name: "(so(4)/so(3))x(so(4)/so(3))".into(),
        factors: vec![f1, f2],
        h_generators,
        weights: vec![1.0, 1.0],
    })
}

/// SO(3)×SO(3) with SO(3) embedded diagonally: both component maps are
/// surjective, so the product battery rejects it; the verdict comes from a
/// plain defect run (the second factor centralizes ξ = (ξ', 0)).
pub fn example73_pair() -> Result<(ProductPair, AlgebraElement)> {
    let f1 = so_pq(3, 0)?;
    let f2 = so_pq(3, 0)?;
    let gens = so3_generators(3, [0, 1, 2]);
    let h_generators = gens
        .iter()
        .map(|g| vec![g.clone(), g.clone()])
        .collect();
    let product = build_product_pair(&ProductSpec {
        name: "so(3)+so(3)/diag so(3)".into(),
        factors: vec![f1.clone(), f2],
        h_generators,
        weights: vec![1.0, 1.0],
    })?;
    let l3 = f1.element_from_matrix(&so3_generators(3, [0, 1, 2])[0])?;
    let xi = product.embed_single(0, &l3)?;
    Ok((product, xi))
}

/// One named case of the product battery with its expected condition
/// pattern (cond1..cond4).
pub struct ProductCase {
    pub name: &'static str,
    pub product: ProductPair,
    pub xi_parts: Vec<AlgebraElement>,
    pub expected: [bool; 4],
}

/// The standard product battery: the counterexample (factor-wise constant
/// but not constant on the product), an all-true case, an all-false case,
/// and the non-diagonal product.
pub fn product_battery_cases() -> Result<Vec<ProductCase>> {
    let mut cases = Vec::new();

    let prod = so4_x_so4_diag_so3()?;
    let f0 = prod.factor_algebra(0).clone();
    let f1 = prod.factor_algebra(1).clone();
    let jf0 = f0.element_from_matrix(&j_full(4))?;
    let jf1 = f1.element_from_matrix(&j_full(4))?;
    cases.push(ProductCase {
        name: "so(4)+so(4)/diag so(3), xi=(J,J): factor-wise constant only",
        product: prod.clone(),
        xi_parts: vec![jf0.clone(), jf1],
        expected: [false, true, true, false],
    });
    cases.push(ProductCase {
        name: "so(4)+so(4)/diag so(3), xi=(J,0): centralizer transitive",
        product: prod.clone(),
        xi_parts: vec![jf0, f1.zero()],
        expected: [true, true, true, true],
    });
    let j01 = f0.element_from_matrix(&Mat::new({
        let mut m = DMatrix::<f64>::zeros(4, 4);
        m[(0, 1)] = 1.0;
        m[(1, 0)] = -1.0;
        m
    })?)?;
    cases.push(ProductCase {
        name: "so(4)+so(4)/diag so(3), xi=(J01,0): nowhere constant",
        product: prod,
        xi_parts: vec![j01, f1.zero()],
        expected: [false, false, false, false],
    });

    let square = so4_so3_square()?;
    let s0 = square.factor_algebra(0).clone();
    let s1 = square.factor_algebra(1).clone();
    let xi_parts = vec![
        s0.element_from_matrix(&j_full(4))?,
        s1.element_from_matrix(&j_full(4))?,
    ];
    cases.push(ProductCase {
        name: "(so(4)/so(3))x(so(4)/so(3)), xi=(J,J): product of constants",
        product: square,
        xi_parts,
        expected: [true, true, true, true],
    });

    Ok(cases)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbit::open_orbit_check;

    #[test]
    fn counterexample_dimensions() {
        let prod = so4_x_so4_diag_so3().unwrap();
        assert_eq!(prod.pair.dim_g(), 12);
        assert_eq!(prod.pair.dim_h(), 3);
        assert_eq!(prod.pair.dim_m(), 9);
        assert_eq!(prod.phi_dim(0), 3);
        assert_eq!(prod.phi_dim(1), 3);
        prod.check_theorem72_hypotheses().unwrap();

        // dim l = 8 for xi = (J, J): u(2) in each factor.
        let f0 = prod.factor_algebra(0).clone();
        let f1 = prod.factor_algebra(1).clone();
        let xi = prod
            .embed_sum(&[
                f0.element_from_matrix(&j_full(4)).unwrap(),
                f1.element_from_matrix(&j_full(4)).unwrap(),
            ])
            .unwrap();
        let rep = open_orbit_check(&prod.pair, &xi).unwrap();
        assert_eq!(rep.dim_l, 8);
        assert_eq!(rep.dim_m, 9);
        assert!(!rep.open);
    }

    #[test]
    fn factor_pair_is_the_sphere() {
        let prod = so4_x_so4_diag_so3().unwrap();
        let fp = prod.factor_pair(0).unwrap();
        assert_eq!(fp.dim_g(), 6);
        assert_eq!(fp.dim_h(), 3);
        assert_eq!(fp.dim_m(), 3);
    }

    #[test]
    fn example73_hypotheses_rejected() {
        let (prod, _xi) = example73_pair().unwrap();
        assert!(prod.check_theorem72_hypotheses().is_err());
    }

    #[test]
    fn embed_single_pads_with_zero() {
        let prod = so4_x_so4_diag_so3().unwrap();
        let f0 = prod.factor_algebra(0).clone();
        let xi = f0.element_from_matrix(&j_full(4)).unwrap();
        let padded = prod.embed_single(0, &xi).unwrap();
        let coords = padded.coords();
        assert!(coords.iter().skip(6).all(|c| *c == 0.0));
        assert!(coords.iter().take(6).any(|c| *c != 0.0));
    }

    #[test]
    fn single_factor_product_matches_plain_pair() {
        let f = so_pq(4, 0).unwrap();
        let gens = so3_generators(4, [1, 2, 3]);
        let h_generators = gens.iter().map(|g| vec![g.clone()]).collect();
        let prod = build_product_pair(&ProductSpec {
            name: "so(4)/so(3) as 1-factor product".into(),
            factors: vec![f.clone()],
            h_generators,
            weights: vec![1.0],
        })
        .unwrap();
        assert_eq!(prod.pair.dim_g(), 6);
        assert_eq!(prod.pair.dim_h(), 3);
        assert_eq!(prod.pair.dim_m(), 3);
        // identical to the directly built pair
        let h: Vec<_> = gens
            .iter()
            .map(|m| f.element_from_matrix(m).unwrap())
            .collect();
        let direct = HomogeneousPair::new("so(4)/so(3)", f, &h).unwrap();
        assert_eq!(prod.pair.dim_m(), direct.dim_m());
        assert_eq!(prod.pair.signature_m(), direct.signature_m());
    }

    #[test]
    fn product_of_spheres_coset_reduces() {
        // (SO(3)xSO(3)) / (SO(2)xSO(2)) with the product embedding splits
        // into two sphere factors.
        let f1 = so_pq(3, 0).unwrap();
        let f2 = so_pq(3, 0).unwrap();
        let l01 = so3_generators(3, [0, 1, 2])[0].clone();
        let zero = Mat::zeros(3);
        let prod = build_product_pair(&ProductSpec {
            name: "(so(3)/so(2))x(so(3)/so(2))".into(),
            factors: vec![f1, f2],
            h_generators: vec![
                vec![l01.clone(), zero.clone()],
                vec![zero, l01],
            ],
            weights: vec![1.0, 1.0],
        })
        .unwrap();
        let factors = prod.pair.coset_reduce().unwrap();
        assert_eq!(factors.len(), 2);
        for f in &factors {
            assert_eq!(f.dim_g(), 3);
            assert_eq!(f.dim_h(), 1);
        }
        // the diagonal embedding is coset irreducible
        let diag = so4_x_so4_diag_so3().unwrap();
        assert_eq!(diag.pair.coset_reduce().unwrap().len(), 1);
    }
}
