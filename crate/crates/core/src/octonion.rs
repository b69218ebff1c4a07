//! Composition algebras by Cayley–Dickson doubling, used to construct the
//! exceptional derivation algebras.
//!
//! Doubling with parameter μ: (a,b)(c,d) = (ac + μ·d̄b, da + bc̄). Starting
//! from ℝ, three doublings with μ = −1 give the octonions; flipping the last
//! step to μ = +1 gives the split octonions (norm form of signature (4,4),
//! which restricts to (3,4) on the imaginary part in the basis order used
//! here: i, j, k, l, li, lj, lk).

/// A bilinear multiplication on ℝ^m given by its structure table:
/// (e_i · e_j) = Σ_k table[i][j][k] e_k.
#[derive(Clone, Debug)]
pub struct MultTable {
    pub dim: usize,
    table: Vec<f64>, // dim^3, index (i*dim + j)*dim + k
}

impl MultTable {
    pub fn entry(&self, i: usize, j: usize, k: usize) -> f64 {
        self.table[(i * self.dim + j) * self.dim + k]
    }

    /// Product of coefficient vectors.
    pub fn multiply(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        let d = self.dim;
        let mut out = vec![0.0; d];
        for i in 0..d {
            if x[i] == 0.0 {
                continue;
            }
            for j in 0..d {
                if y[j] == 0.0 {
                    continue;
                }
                for k in 0..d {
                    out[k] += x[i] * y[j] * self.entry(i, j, k);
                }
            }
        }
        out
    }

    /// Gram matrix of the norm bilinear form ⟨x,y⟩ with ⟨e_i,e_j⟩ read off
    /// from the real part of e_i·conj(e_j). Basis vector 0 is the unit.
    pub fn norm_gram(&self) -> Vec<Vec<f64>> {
        let d = self.dim;
        let mut g = vec![vec![0.0; d]; d];
        for i in 0..d {
            for j in 0..d {
                let mut cj = vec![0.0; d];
                cj[j] = if j == 0 { 1.0 } else { -1.0 };
                let mut x = vec![0.0; d];
                x[i] = 1.0;
                let prod = self.multiply(&x, &cj);
                g[i][j] = prod[0];
            }
        }
        g
    }
}

fn cd_conj(x: &[f64]) -> Vec<f64> {
    let mut y: Vec<f64> = x.iter().map(|v| -v).collect();
    y[0] = x[0];
    y
}

fn cd_mul(x: &[f64], y: &[f64], level: u32, mu_top: f64) -> Vec<f64> {
    if level == 0 {
        return vec![x[0] * y[0]];
    }
    let h = x.len() / 2;
    let (a, b) = x.split_at(h);
    let (c, d) = y.split_at(h);
    let mu = if level == 3 { mu_top } else { -1.0 };
    let ac = cd_mul(a, c, level - 1, mu_top);
    let db = cd_mul(&cd_conj(d), b, level - 1, mu_top);
    let da = cd_mul(d, a, level - 1, mu_top);
    let bc = cd_mul(b, &cd_conj(c), level - 1, mu_top);
    let mut out = Vec::with_capacity(x.len());
    for i in 0..h {
        out.push(ac[i] + mu * db[i]);
    }
    for i in 0..h {
        out.push(da[i] + bc[i]);
    }
    out
}

fn table_at_level(level: u32, mu_top: f64) -> MultTable {
    let dim = 1usize << level;
    let mut table = vec![0.0; dim * dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            let mut x = vec![0.0; dim];
            let mut y = vec![0.0; dim];
            x[i] = 1.0;
            y[j] = 1.0;
            let p = cd_mul(&x, &y, level, mu_top);
            for k in 0..dim {
                table[(i * dim + j) * dim + k] = p[k];
            }
        }
    }
    MultTable { dim, table }
}

/// The quaternions ℍ as a 4-dimensional real algebra.
pub fn quaternions() -> MultTable {
    table_at_level(2, -1.0)
}

/// The octonions 𝕆: positive definite norm form.
pub fn octonions() -> MultTable {
    table_at_level(3, -1.0)
}

/// The split octonions: norm form of signature (4,4).
pub fn split_octonions() -> MultTable {
    table_at_level(3, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quaternion_units() {
        let q = quaternions();
        // i*j = k, j*i = -k, i*i = -1.
        let mut i = vec![0.0; 4];
        i[1] = 1.0;
        let mut j = vec![0.0; 4];
        j[2] = 1.0;
        let ij = q.multiply(&i, &j);
        assert_eq!(ij, vec![0.0, 0.0, 0.0, 1.0]);
        let ji = q.multiply(&j, &i);
        assert_eq!(ji, vec![0.0, 0.0, 0.0, -1.0]);
        let ii = q.multiply(&i, &i);
        assert_eq!(ii, vec![-1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn octonion_norms() {
        let o = octonions();
        let g = o.norm_gram();
        for i in 0..8 {
            for j in 0..8 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((g[i][j] - expect).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn split_octonion_norm_signature() {
        let o = split_octonions();
        let g = o.norm_gram();
        let diag: Vec<f64> = (0..8).map(|i| g[i][i]).collect();
        assert_eq!(diag, vec![1.0, 1.0, 1.0, 1.0, -1.0, -1.0, -1.0, -1.0]);
    }

    #[test]
    fn octonions_are_alternative_not_associative() {
        let o = octonions();
        let mut e1 = vec![0.0; 8];
        e1[1] = 1.0;
        let mut e2 = vec![0.0; 8];
        e2[2] = 1.0;
        let mut e4 = vec![0.0; 8];
        e4[4] = 1.0;
        // (e1 e2) e4 vs e1 (e2 e4) differ: non-associativity.
        let lhs = o.multiply(&o.multiply(&e1, &e2), &e4);
        let rhs = o.multiply(&e1, &o.multiply(&e2, &e4));
        let diff: f64 = lhs.iter().zip(&rhs).map(|(a, b)| (a - b).abs()).sum();
        assert!(diff > 1.0);
        // Alternative law: x(xy) = (xx)y.
        let l = o.multiply(&e1, &o.multiply(&e1, &e2));
        let r = o.multiply(&o.multiply(&e1, &e1), &e2);
        let d: f64 = l.iter().zip(&r).map(|(a, b)| (a - b).abs()).sum();
        assert!(d < 1e-14);
    }
}
