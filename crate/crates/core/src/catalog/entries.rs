//! The catalog of homogeneous pairs: the classified constant-length
//! families, the negative controls, and the group manifolds.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::algebra::MatrixLieAlgebra;
use crate::decomposition::HomogeneousPair;
use crate::error::{Error, Result};
use crate::linalg::realify;
use crate::mat::Mat;
use crate::orbit::KillingElement;

use super::{
    build_algebra, ec, g2_compact, g2_complex, g2_split, sl_c, sl_r, so_c, so_pq, sp_c, sp_pq,
    sp_r, su_pq,
};

/// Expected classification outcome attached to a catalog entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExpectedVerdict {
    Constant,
    NonConstant,
    GroupManifold,
}

/// A fully built catalog entry.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub id: String,
    pub params: Vec<usize>,
    pub pair: HomogeneousPair,
    pub canonical_xi: Option<KillingElement>,
    pub expected: ExpectedVerdict,
    pub note: String,
}

/// Listing row for the catalog command.
#[derive(Clone, Debug, Serialize)]
pub struct EntryInfo {
    pub id: &'static str,
    pub params: &'static str,
    pub expected: &'static str,
    pub note: &'static str,
}

pub fn catalog_listing() -> Vec<EntryInfo> {
    vec![
        EntryInfo {
            id: "su(2p,2q)/sp(p,q)",
            params: "p,q with 1 <= p+q <= 4",
            expected: "constant",
            note: "quaternionic subalgebra of the (special) unitary family",
        },
        EntryInfo {
            id: "sl(2n,R)/sp(n,R)",
            params: "n with 1 <= n <= 8 (matrix size 2n)",
            expected: "constant",
            note: "certifying element is hyperbolic; no elliptic element works in this real form",
        },
        EntryInfo {
            id: "sl(2n,C)/sp(n,C)",
            params: "n with 1 <= n <= 4",
            expected: "constant",
            note: "complex family, realified",
        },
        EntryInfo {
            id: "so(2p+2,2q)/so(2p+1,2q)",
            params: "p,q with p+q >= 1, 2p+2+2q <= 16",
            expected: "constant",
            note: "hyperquadric family; hyperplane stabilizer embedding",
        },
        EntryInfo {
            id: "so(2n,C)/so(2n-1,C)",
            params: "n with 2 <= n <= 4",
            expected: "constant",
            note: "complex hyperquadric family, realified",
        },
        EntryInfo {
            id: "so(7)/g2",
            params: "none",
            expected: "constant",
            note: "compact exceptional pair via octonion derivations",
        },
        EntryInfo {
            id: "so(3,4)/g2_split",
            params: "none",
            expected: "constant",
            note: "split exceptional pair via split-octonion derivations",
        },
        EntryInfo {
            id: "so(7,C)/g2(C)",
            params: "none",
            expected: "constant",
            note: "complex exceptional pair, realified",
        },
        EntryInfo {
            id: "<family>/{1}",
            params: "family grammar of build_algebra, e.g. sl(2,R)/{1}",
            expected: "group-manifold",
            note: "right translations centralize every xi; constant without ellipticity",
        },
        EntryInfo {
            id: "so(2p+1,2q+1)/so(2p+1,2q)",
            params: "p,q with p+q >= 1 or (p,q) in {(1,0),(0,1)}",
            expected: "non-constant",
            note: "negative control: the classification's excluded signature",
        },
        EntryInfo {
            id: "so(n)/so(n-1)",
            params: "n >= 3; odd n is the even-sphere negative control",
            expected: "constant for even n, non-constant for odd n",
            note: "round spheres; odd-dimensional spheres carry unit Killing fields, even ones do not",
        },
    ]
}

/// Entries the battery runs by default: all families at small parameters
/// (matrix realizations of size <= 12) plus the negative controls.
pub fn battery_entries() -> Vec<(&'static str, Vec<usize>)> {
    vec![
        ("su(2p,2q)/sp(p,q)", vec![1, 0]),
        ("su(2p,2q)/sp(p,q)", vec![2, 0]),
        ("su(2p,2q)/sp(p,q)", vec![1, 1]),
        ("sl(2n,R)/sp(n,R)", vec![2]),
        ("sl(2n,C)/sp(n,C)", vec![2]),
        ("so(2p+2,2q)/so(2p+1,2q)", vec![1, 0]),
        ("so(2p+2,2q)/so(2p+1,2q)", vec![2, 0]),
        ("so(2p+2,2q)/so(2p+1,2q)", vec![1, 1]),
        ("so(2n,C)/so(2n-1,C)", vec![3]),
        ("so(7)/g2", vec![]),
        ("so(3,4)/g2_split", vec![]),
        ("sl(2,R)/{1}", vec![]),
        ("su(2)/{1}", vec![]),
        ("so(n)/so(n-1)", vec![3]),
        ("so(n)/so(n-1)", vec![5]),
        ("so(2p+1,2q+1)/so(2p+1,2q)", vec![1, 0]),
        ("so(2p+1,2q+1)/so(2p+1,2q)", vec![0, 1]),
    ]
}

/// Builds a catalog entry by id and parameters. See [`catalog_listing`] for
/// the id grammar.
pub fn build_pair(entry_id: &str, params: &[usize]) -> Result<CatalogEntry> {
    let id = entry_id.trim();
    if let Some(family) = id.strip_suffix("/{1}") {
        return group_manifold(family, params);
    }
    match id {
        "su(2p,2q)/sp(p,q)" => su_sp(params),
        "sl(2n,R)/sp(n,R)" => slr_spr(params),
        "sl(2n,C)/sp(n,C)" => slc_spc(params),
        "so(2p+2,2q)/so(2p+1,2q)" => so_even_odd(params),
        "so(2n,C)/so(2n-1,C)" => soc_soc(params),
        "so(7)/g2" => so7_g2(),
        "so(3,4)/g2_split" => so34_g2split(),
        "so(7,C)/g2(C)" => so7c_g2c(),
        "so(2p+1,2q+1)/so(2p+1,2q)" => so_odd_odd(params),
        "so(n)/so(n-1)" => so_sphere(params),
        _ => Err(Error::Catalog(format!("unknown catalog entry: {entry_id}"))),
    }
}

fn need(params: &[usize], n: usize, id: &str) -> Result<()> {
    if params.len() != n {
        return Err(Error::Catalog(format!(
            "{id}: expected {n} parameter(s), got {}",
            params.len()
        )));
    }
    Ok(())
}

/// i·diag(-(2n-1), 1, …, 1) realified, the canonical element of the
/// unitary-type families.
fn xi1_realified(n2: usize) -> DMatrix<f64> {
    let i = Complex64::new(0.0, 1.0);
    let mut d = DMatrix::<Complex64>::zeros(n2, n2);
    d[(0, 0)] = i * (-((n2 - 1) as f64));
    for k in 1..n2 {
        d[(k, k)] = i;
    }
    realify(&d)
}

/// Sum of 2x2 rotation blocks at the given coordinate pairs.
fn j_sum(n: usize, pairs: &[(usize, usize)]) -> DMatrix<f64> {
    let mut m = DMatrix::<f64>::zeros(n, n);
    for &(a, b) in pairs {
        m[(a, b)] = 1.0;
        m[(b, a)] = -1.0;
    }
    m
}

/// J-block pairs filling the maximal compact part of so(P,Q): all of the
/// positive block, then all of the negative block.
fn max_compact_j_pairs(p: usize, q: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    let mut a = 0;
    while a + 1 < p {
        pairs.push((a, a + 1));
        a += 2;
    }
    let mut b = p;
    while b + 1 < p + q {
        pairs.push((b, b + 1));
        b += 2;
    }
    pairs
}

fn su_sp(params: &[usize]) -> Result<CatalogEntry> {
    need(params, 2, "su(2p,2q)/sp(p,q)")?;
    let (p, q) = (params[0], params[1]);
    let n = p + q;
    if n < 1 || n > 4 {
        return Err(Error::Catalog("su(2p,2q)/sp(p,q): need 1 <= p+q <= 4".into()));
    }
    let g = su_pq(2 * p, 2 * q)?;
    let h_alg = sp_pq(p, q)?;
    let h: Vec<_> = h_alg
        .basis()
        .iter()
        .map(|m| g.element_from_matrix(m))
        .collect::<Result<Vec<_>>>()?;
    let name = format!("su({},{})/sp({p},{q})", 2 * p, 2 * q);
    let pair = HomogeneousPair::new(name.clone(), g.clone(), &h)?;
    let xi = g.element_from_matrix(&Mat::new(xi1_realified(2 * n))?)?;
    let xi = KillingElement::new(xi)?;
    Ok(CatalogEntry {
        id: "su(2p,2q)/sp(p,q)".into(),
        params: params.to_vec(),
        pair,
        canonical_xi: Some(xi),
        expected: ExpectedVerdict::Constant,
        note: "quaternionic subalgebra of the special unitary family".into(),
    })
}

fn slr_spr(params: &[usize]) -> Result<CatalogEntry> {
    need(params, 1, "sl(2n,R)/sp(n,R)")?;
    let n = params[0];
    if n < 1 || 2 * n > 16 {
        return Err(Error::Catalog("sl(2n,R)/sp(n,R): need 1 <= n <= 8".into()));
    }
    let g = sl_r(2 * n)?;
    let h_alg = sp_r(n)?;
    let h: Vec<_> = h_alg
        .basis()
        .iter()
        .map(|m| g.element_from_matrix(m))
        .collect::<Result<Vec<_>>>()?;
    let name = format!("sl({},R)/sp({n},R)", 2 * n);
    let pair = HomogeneousPair::new(name, g.clone(), &h)?;
    // The real diagonal counterpart of the unitary family's canonical
    // element. It is hyperbolic, not elliptic: no elliptic element of this
    // real form certifies constancy (every elliptic spectrum here is
    // conjugation-symmetric, which is incompatible with the required
    // eigenvalue profile), but this element does.
    let mut d = DMatrix::<f64>::zeros(2 * n, 2 * n);
    d[(0, 0)] = -((2 * n - 1) as f64);
    for k in 1..2 * n {
        d[(k, k)] = 1.0;
    }
    let xi = KillingElement::new(g.element_from_matrix(&Mat::new(d)?)?)?;
    Ok(CatalogEntry {
        id: "sl(2n,R)/sp(n,R)".into(),
        params: params.to_vec(),
        pair,
        canonical_xi: Some(xi),
        expected: ExpectedVerdict::Constant,
        note: "certifying element is hyperbolic; the real form contains no elliptic certificate"
            .into(),
    })
}

fn slc_spc(params: &[usize]) -> Result<CatalogEntry> {
    need(params, 1, "sl(2n,C)/sp(n,C)")?;
    let n = params[0];
    if n < 1 || n > 4 {
        return Err(Error::Catalog("sl(2n,C)/sp(n,C): need 1 <= n <= 4".into()));
    }
    let g = sl_c(2 * n)?;
    let h_alg = sp_c(n)?;
    let h: Vec<_> = h_alg
        .basis()
        .iter()
        .map(|m| g.element_from_matrix(m))
        .collect::<Result<Vec<_>>>()?;
    let name = format!("sl({},C)/sp({n},C)", 2 * n);
    let pair = HomogeneousPair::new(name, g.clone(), &h)?;
    let xi = KillingElement::new(g.element_from_matrix(&Mat::new(xi1_realified(2 * n))?)?)?;
    Ok(CatalogEntry {
        id: "sl(2n,C)/sp(n,C)".into(),
        params: params.to_vec(),
        pair,
        canonical_xi: Some(xi),
        expected: ExpectedVerdict::Constant,
        note: "complex family, realified; canonical element uses the traceless variant".into(),
    })
}

fn so_even_odd(params: &[usize]) -> Result<CatalogEntry> {
    need(params, 2, "so(2p+2,2q)/so(2p+1,2q)")?;
    let (p, q) = (params[0], params[1]);
    let bigp = 2 * p + 2;
    let bigq = 2 * q;
    if p + q < 1 || bigp + bigq > 16 {
        return Err(Error::Catalog(
            "so(2p+2,2q)/so(2p+1,2q): need p+q >= 1 and 2p+2+2q <= 16".into(),
        ));
    }
    let g = so_pq(bigp, bigq)?;
    let n = bigp + bigq;
    // h: stabilizer of the first positive-definite coordinate.
    let h = so_stabilizer_basis(&g, n, 0)?;
    let name = format!("so({bigp},{bigq})/so({},{bigq})", bigp - 1);
    let pair = HomogeneousPair::new(name, g.clone(), &h)?;
    let xi_mat = j_sum(n, &max_compact_j_pairs(bigp, bigq));
    let xi = KillingElement::new(g.element_from_matrix(&Mat::new(xi_mat)?)?)?;
    Ok(CatalogEntry {
        id: "so(2p+2,2q)/so(2p+1,2q)".into(),
        params: params.to_vec(),
        pair,
        canonical_xi: Some(xi),
        expected: ExpectedVerdict::Constant,
        note: "hyperquadric family".into(),
    })
}

fn soc_soc(params: &[usize]) -> Result<CatalogEntry> {
    need(params, 1, "so(2n,C)/so(2n-1,C)")?;
    let n = params[0];
    if n < 2 || n > 4 {
        return Err(Error::Catalog("so(2n,C)/so(2n-1,C): need 2 <= n <= 4".into()));
    }
    let g = so_c(2 * n)?;
    // h = so(2n-1,C) stabilizing the first coordinate, realified.
    let mut h = Vec::new();
    let i_c = Complex64::new(0.0, 1.0);
    for a in 1..2 * n {
        for b in (a + 1)..2 * n {
            let z = ec(2 * n, a, b) - ec(2 * n, b, a);
            h.push(g.element_from_matrix(&Mat::new(realify(&z))?)?);
            h.push(g.element_from_matrix(&Mat::new(realify(&(&z * i_c)))?)?);
        }
    }
    let name = format!("so({},C)/so({},C)", 2 * n, 2 * n - 1);
    let pair = HomogeneousPair::new(name, g.clone(), &h)?;
    let pairs: Vec<(usize, usize)> = (0..n).map(|k| (2 * k, 2 * k + 1)).collect();
    let xi_c = j_sum(2 * n, &pairs).map(|x| Complex64::new(x, 0.0));
    let xi = KillingElement::new(g.element_from_matrix(&Mat::new(realify(&xi_c))?)?)?;
    Ok(CatalogEntry {
        id: "so(2n,C)/so(2n-1,C)".into(),
        params: params.to_vec(),
        pair,
        canonical_xi: Some(xi),
        expected: ExpectedVerdict::Constant,
        note: "complex hyperquadric family, realified".into(),
    })
}

fn so7_g2() -> Result<CatalogEntry> {
    let g = so_pq(7, 0)?;
    let g2 = g2_compact()?;
    let h: Vec<_> = g2
        .basis()
        .iter()
        .map(|m| g.element_from_matrix(m))
        .collect::<Result<Vec<_>>>()?;
    let pair = HomogeneousPair::new("so(7)/g2", g.clone(), &h)?;
    let xi = KillingElement::new(g.element_from_matrix(&Mat::new(j_sum(7, &[(0, 1)]))?)?)?;
    Ok(CatalogEntry {
        id: "so(7)/g2".into(),
        params: vec![],
        pair,
        canonical_xi: Some(xi),
        expected: ExpectedVerdict::Constant,
        note: "compact exceptional pair via octonion derivations".into(),
    })
}

fn so34_g2split() -> Result<CatalogEntry> {
    let g = so_pq(3, 4)?;
    let g2s = g2_split()?;
    let h: Vec<_> = g2s
        .basis()
        .iter()
        .map(|m| g.element_from_matrix(m))
        .collect::<Result<Vec<_>>>()?;
    let pair = HomogeneousPair::new("so(3,4)/g2_split", g.clone(), &h)?;
    // Generator of the rotation in the first two (positive) coordinates.
    let xi = KillingElement::new(g.element_from_matrix(&Mat::new(j_sum(7, &[(0, 1)]))?)?)?;
    Ok(CatalogEntry {
        id: "so(3,4)/g2_split".into(),
        params: vec![],
        pair,
        canonical_xi: Some(xi),
        expected: ExpectedVerdict::Constant,
        note: "split exceptional pair via split-octonion derivations".into(),
    })
}

fn so7c_g2c() -> Result<CatalogEntry> {
    let g = so_c(7)?;
    let g2c = g2_complex()?;
    let h: Vec<_> = g2c
        .basis()
        .iter()
        .map(|m| g.element_from_matrix(m))
        .collect::<Result<Vec<_>>>()?;
    let pair = HomogeneousPair::new("so(7,C)/g2(C)", g.clone(), &h)?;
    let xi_c = j_sum(7, &[(0, 1)]).map(|x| Complex64::new(x, 0.0));
    let xi = KillingElement::new(g.element_from_matrix(&Mat::new(realify(&xi_c))?)?)?;
    Ok(CatalogEntry {
        id: "so(7,C)/g2(C)".into(),
        params: vec![],
        pair,
        canonical_xi: Some(xi),
        expected: ExpectedVerdict::Constant,
        note: "complex exceptional pair, realified".into(),
    })
}

fn group_manifold(family: &str, params: &[usize]) -> Result<CatalogEntry> {
    if !params.is_empty() {
        return Err(Error::Catalog(
            "group manifold entries take parameters inside the family string".into(),
        ));
    }
    let g = build_algebra(family)?;
    let pair = HomogeneousPair::new(format!("{}/{{1}}", g.name()), g.clone(), &[])?;
    // Any element works; pick one in the maximal compact part so that the
    // canonical element is elliptic whenever a Cartan involution exists.
    let xi_el = match pair.cartan_involution() {
        Ok(dec) if dec.k_basis.ncols() > 0 => g.element(dec.k_basis.column(0).clone_owned())?,
        _ => g.basis_element(0),
    };
    let xi = KillingElement::new(xi_el)?;
    Ok(CatalogEntry {
        id: format!("{family}/{{1}}"),
        params: vec![],
        pair,
        canonical_xi: Some(xi),
        expected: ExpectedVerdict::GroupManifold,
        note: "group manifold: right translations centralize every xi".into(),
    })
}

fn so_odd_odd(params: &[usize]) -> Result<CatalogEntry> {
    need(params, 2, "so(2p+1,2q+1)/so(2p+1,2q)")?;
    let (p, q) = (params[0], params[1]);
    let bigp = 2 * p + 1;
    let bigq = 2 * q + 1;
    if bigp + bigq > 16 || bigp + bigq < 3 {
        return Err(Error::Catalog(
            "so(2p+1,2q+1)/so(2p+1,2q): size out of range".into(),
        ));
    }
    let g = so_pq(bigp, bigq)?;
    let n = bigp + bigq;
    // h: stabilizer of the last (negative-definite) coordinate.
    let h = so_stabilizer_basis(&g, n, n - 1)?;
    let name = format!("so({bigp},{bigq})/so({bigp},{})", bigq - 1);
    let pair = HomogeneousPair::new(name, g.clone(), &h)?;
    // An elliptic element: one rotation block inside the compact part.
    let xi_mat = if bigp >= 2 {
        j_sum(n, &[(0, 1)])
    } else {
        j_sum(n, &[(bigp, bigp + 1)])
    };
    let xi = KillingElement::new(g.element_from_matrix(&Mat::new(xi_mat)?)?)?;
    Ok(CatalogEntry {
        id: "so(2p+1,2q+1)/so(2p+1,2q)".into(),
        params: params.to_vec(),
        pair,
        canonical_xi: Some(xi),
        expected: ExpectedVerdict::NonConstant,
        note: "negative control: the classification's excluded signature".into(),
    })
}

fn so_sphere(params: &[usize]) -> Result<CatalogEntry> {
    need(params, 1, "so(n)/so(n-1)")?;
    let n = params[0];
    if n < 3 || n > 16 {
        return Err(Error::Catalog("so(n)/so(n-1): need 3 <= n <= 16".into()));
    }
    let g = so_pq(n, 0)?;
    let h = so_stabilizer_basis(&g, n, 0)?;
    let pair = HomogeneousPair::new(format!("so({n})/so({})", n - 1), g.clone(), &h)?;
    let pairs: Vec<(usize, usize)> = (0..n / 2).map(|k| (2 * k, 2 * k + 1)).collect();
    let xi = KillingElement::new(g.element_from_matrix(&Mat::new(j_sum(n, &pairs))?)?)?;
    let expected = if n % 2 == 0 {
        ExpectedVerdict::Constant
    } else {
        ExpectedVerdict::NonConstant
    };
    Ok(CatalogEntry {
        id: "so(n)/so(n-1)".into(),
        params: params.to_vec(),
        pair,
        canonical_xi: Some(xi),
        expected,
        note: if n % 2 == 0 {
            "odd-dimensional round sphere".into()
        } else {
            "even-dimensional round sphere: negative control".into()
        },
    })
}

/// Basis of the so-subalgebra stabilizing coordinate `fixed`, as elements
/// of g.
fn so_stabilizer_basis(
    g: &MatrixLieAlgebra,
    n: usize,
    fixed: usize,
) -> Result<Vec<crate::algebra::AlgebraElement>> {
    let mut out = Vec::new();
    // Signs are read off from g's own basis convention by matching the
    // elementary generators.
    for i in 0..n {
        for j in (i + 1)..n {
            if i == fixed || j == fixed {
                continue;
            }
            // Try both sign conventions; exactly one re-expresses.
            let plus = j_sum(n, &[(i, j)]);
            let mut minus = DMatrix::<f64>::zeros(n, n);
            minus[(i, j)] = 1.0;
            minus[(j, i)] = 1.0;
            let el = g
                .element_from_matrix(&Mat::new(plus)?)
                .or_else(|_| g.element_from_matrix(&Mat::new(minus)?))?;
            out.push(el);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn su_sp_dimensions() {
        let e = build_pair("su(2p,2q)/sp(p,q)", &[1, 1]).unwrap();
        assert_eq!(e.pair.dim_g(), 15);
        assert_eq!(e.pair.dim_h(), 10);
        assert_eq!(e.pair.dim_m(), 5);
        let xi = e.canonical_xi.unwrap();
        assert!(xi.elliptic);
        // signature bookkeeping: plus+minus = dim m
        let (plus, minus) = e.pair.signature_m();
        assert_eq!(plus + minus, 5);
    }

    #[test]
    fn su2_sp1_is_a_point() {
        let e = build_pair("su(2p,2q)/sp(p,q)", &[1, 0]).unwrap();
        assert_eq!(e.pair.dim_g(), 3);
        assert_eq!(e.pair.dim_h(), 3);
        assert_eq!(e.pair.dim_m(), 0);
    }

    #[test]
    fn so42_so32_dimensions() {
        let e = build_pair("so(2p+2,2q)/so(2p+1,2q)", &[1, 1]).unwrap();
        assert_eq!(e.pair.dim_g(), 15);
        assert_eq!(e.pair.dim_h(), 10);
        assert_eq!(e.pair.dim_m(), 5);
        assert!(e.canonical_xi.unwrap().elliptic);
    }

    #[test]
    fn negative_control_so31() {
        let e = build_pair("so(2p+1,2q+1)/so(2p+1,2q)", &[1, 0]).unwrap();
        assert_eq!(e.pair.algebra().name(), "so(3,1)");
        assert_eq!(e.pair.dim_h(), 3);
        assert_eq!(e.expected, ExpectedVerdict::NonConstant);
        assert!(e.canonical_xi.unwrap().elliptic);
    }

    #[test]
    fn slr_canonical_is_hyperbolic() {
        let e = build_pair("sl(2n,R)/sp(n,R)", &[2]).unwrap();
        assert_eq!(e.pair.dim_g(), 15);
        assert_eq!(e.pair.dim_h(), 10);
        let xi = e.canonical_xi.unwrap();
        assert!(!xi.elliptic);
        assert!(xi.spectrum.semisimple);
        // all eigenvalues real
        assert!(xi
            .spectrum
            .eigenvalues
            .iter()
            .all(|ev| ev.im.abs() < 1e-9));
    }

    #[test]
    fn g2_pairs_build() {
        let e = build_pair("so(7)/g2", &[]).unwrap();
        assert_eq!(e.pair.dim_g(), 21);
        assert_eq!(e.pair.dim_h(), 14);
        assert_eq!(e.pair.dim_m(), 7);
        let es = build_pair("so(3,4)/g2_split", &[]).unwrap();
        assert_eq!(es.pair.dim_m(), 7);
    }

    #[test]
    fn complex_entries_build() {
        let e = build_pair("sl(2n,C)/sp(n,C)", &[2]).unwrap();
        assert_eq!(e.pair.dim_g(), 30);
        assert_eq!(e.pair.dim_h(), 20);
        assert!(e.canonical_xi.unwrap().elliptic);
        let e2 = build_pair("so(2n,C)/so(2n-1,C)", &[3]).unwrap();
        assert_eq!(e2.pair.dim_g(), 30);
        assert_eq!(e2.pair.dim_h(), 20);
    }

    #[test]
    fn group_manifold_entries() {
        let e = build_pair("sl(2,R)/{1}", &[]).unwrap();
        assert!(e.pair.is_group_manifold());
        assert!(e.canonical_xi.as_ref().unwrap().elliptic);
        let e2 = build_pair("su(2)/{1}", &[]).unwrap();
        assert_eq!(e2.pair.dim_g(), 3);
    }

    #[test]
    fn unknown_entry_rejected() {
        assert!(build_pair("e8/f4", &[]).is_err());
        assert!(build_pair("su(2p,2q)/sp(p,q)", &[9, 9]).is_err());
    }

    #[test]
    fn canonical_xi_elliptic_across_battery_except_slr() {
        for (id, params) in battery_entries() {
            let e = build_pair(id, &params).unwrap();
            let xi = e.canonical_xi.as_ref().unwrap();
            assert!(xi.xi.norm() > 0.0, "{id}: canonical xi is zero");
            if id == "sl(2n,R)/sp(n,R)" {
                assert!(!xi.elliptic);
            } else {
                assert!(xi.elliptic, "{id}: canonical xi not elliptic");
            }
        }
    }
}
