//! Independent oracles: integer elimination and pencil arithmetic that do not
//! touch the library's linear algebra.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use quiverforge::{catalog, DimVector, QMatrix, Representation};

pub type IMat = Vec<Vec<i128>>;

/// Rank by fraction-free (Bareiss) elimination over the integers.
pub fn rank_i128(m: &IMat) -> usize {
    let mut a = m.clone();
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut rank = 0;
    let mut prev = 1i128;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, p);
        for r in rank + 1..rows {
            for k in c + 1..cols {
                a[r][k] = (a[rank][c] * a[r][k] - a[r][c] * a[rank][k]) / prev;
            }
            a[r][c] = 0;
        }
        prev = a[rank][c];
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// `φ2 X_M = X_N φ1` for each arrow `X` of the Kronecker quiver, written out entrywise.
/// `m` and `n` give `(a, b)` as row-major integer matrices of shape `d2 × d1`.
pub fn kronecker_hom_oracle(m: (&IMat, &IMat), n: (&IMat, &IMat)) -> usize {
    let (m1, m2) = (m.0[0].len(), m.0.len());
    let (n1, n2) = (n.0[0].len(), n.0.len());
    // φ1: n1 × m1 at offset 0, φ2: n2 × m2 after it.
    let u = n1 * m1 + n2 * m2;
    let p1 = |i: usize, j: usize| i * m1 + j;
    let p2 = |i: usize, j: usize| n1 * m1 + i * m2 + j;
    let mut rows = Vec::new();
    for (xm, xn) in [(m.0, n.0), (m.1, n.1)] {
        // (φ2 X_M)[i][j] - (X_N φ1)[i][j] for i < n2, j < m1
        for i in 0..n2 {
            for j in 0..m1 {
                let mut row = vec![0i128; u];
                for k in 0..m2 {
                    row[p2(i, k)] += xm[k][j];
                }
                for k in 0..n1 {
                    row[p1(k, j)] -= xn[i][k];
                }
                rows.push(row);
            }
        }
    }
    u - rank_i128(&rows)
}

pub fn zwara_matrices() -> (IMat, IMat) {
    let a = vec![vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0]];
    let b = vec![vec![1, 0, 0], vec![0, 0, 0], vec![0, 0, 1]];
    (a, b)
}

/// dim End of Zwara's module from the 18-unknown system.
pub fn zwara_end_oracle() -> usize {
    let (a, b) = zwara_matrices();
    kronecker_hom_oracle((&a, &b), (&a, &b))
}

pub fn random_imat(rng: &mut ChaCha8Rng, rows: usize, cols: usize, radius: i64) -> IMat {
    (0..rows).map(|_| (0..cols).map(|_| i128::from(rng.gen_range(-radius..=radius))).collect()).collect()
}

pub fn to_qmatrix(m: &IMat, rows: usize, cols: usize) -> QMatrix {
    let flat: Vec<i64> = m.iter().flatten().map(|&x| x as i64).collect();
    QMatrix::from_i64(rows, cols, &flat)
}

/// A Kronecker module from integer matrices `(a, b)` of shape `d2 × d1`.
pub fn kronecker_module(d1: usize, d2: usize, a: &IMat, b: &IMat) -> Representation {
    let k2 = catalog::kronecker();
    Representation::new(k2, DimVector(vec![d1, d2]), vec![to_qmatrix(a, d2, d1), to_qmatrix(b, d2, d1)]).unwrap()
}

pub fn random_kronecker(seed: u64, d1: usize, d2: usize) -> (IMat, IMat, Representation) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = random_imat(&mut rng, d2, d1, 2);
    let b = random_imat(&mut rng, d2, d1, 2);
    let m = kronecker_module(d1, d2, &a, &b);
    (a, b, m)
}

// Univariate polynomials over Q, lowest degree first.

type Poly = Vec<BigRational>;

fn qi(x: i128) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_rem(a: &Poly, b: &Poly) -> Poly {
    let mut r = trim(a.clone());
    let b = trim(b.clone());
    let lead = b.last().expect("nonzero divisor").clone();
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let f = r.last().unwrap().clone() / &lead;
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= &f * c;
        }
        r = trim(r);
    }
    r
}

fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    let (mut x, mut y) = (trim(a.clone()), trim(b.clone()));
    while !y.is_empty() {
        let r = poly_rem(&x, &y);
        x = y;
        y = r;
    }
    x
}

fn det_q(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else { return BigRational::zero() };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= &m[c][c];
        for r in c + 1..n {
            let f = &m[r][c] / &m[c][c];
            if f.is_zero() {
                continue;
            }
            for k in c..n {
                let t = &f * &m[c][k];
                m[r][k] -= t;
            }
        }
    }
    det
}

/// Coefficients of `det(t A_S + B_S)` for the row subset `S`, by interpolation.
fn minor_poly(a: &IMat, b: &IMat, rows: &[usize]) -> Poly {
    let k = rows.len();
    let pts: Vec<i128> = (0..=k as i128).collect();
    let vals: Vec<BigRational> = pts
        .iter()
        .map(|&t| det_q(rows.iter().map(|&r| (0..k).map(|c| qi(t * a[r][c] + b[r][c])).collect()).collect()))
        .collect();
    // Lagrange interpolation.
    let mut out = vec![BigRational::zero(); k + 1];
    for (i, &xi) in pts.iter().enumerate() {
        let mut basis: Poly = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (j, &xj) in pts.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (d, c) in basis.iter().enumerate() {
                next[d + 1] += c;
                next[d] -= c * qi(xj);
            }
            basis = next;
            denom *= qi(xi - xj);
        }
        for (d, c) in basis.iter().enumerate() {
            out[d] += c * &vals[i] / &denom;
        }
    }
    trim(out)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Does the pencil `x A + y B` (shape `d2 × d1`) have a kernel vector for some `(x:y) ≠ 0`
/// over the algebraic closure? Equivalently: does a `(1,1)`-dimensional subrepresentation exist?
pub fn pencil_has_kernel(a: &IMat, b: &IMat) -> bool {
    let (d2, d1) = (a.len(), a[0].len());
    if d1 == 0 {
        return false;
    }
    if d1 > d2 {
        return true;
    }
    // Point at infinity (y = 0): A itself singular.
    if rank_i128(a) < d1 {
        return true;
    }
    // Finite points: a common root of all maximal minors of t A + B.
    let mut g: Poly = Vec::new();
    for rows in subsets(d2, d1) {
        g = poly_gcd(&g, &minor_poly(a, b, &rows));
        if g.len() == 1 {
            return false;
        }
    }
    g.is_empty() || g.len() > 1
}

/// Is there a common kernel vector of `A` and `B`, i.e. a `(1,0)`-subrepresentation?
pub fn common_kernel(a: &IMat, b: &IMat) -> bool {
    let stacked: IMat = a.iter().chain(b).cloned().collect();
    rank_i128(&stacked) < a[0].len()
}

#[cfg(test)]
mod tests {
    #[allow(unused_imports)]
    use super::*;

    #[test]
    fn oracle_self_checks() {
        assert_eq!(rank_i128(&vec![vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(rank_i128(&vec![vec![0, 1], vec![1, 0]]), 2);
        // Identity pencil tI + B always has eigenvalues over the closure.
        let i2 = vec![vec![1, 0], vec![0, 1]];
        let rot = vec![vec![0, -1], vec![1, 0]];
        assert!(pencil_has_kernel(&i2, &rot));
        // 2×1: columns (1,0) and (0,1) are never proportional.
        assert!(!pencil_has_kernel(&vec![vec![1], vec![0]], &vec![vec![0], vec![1]]));
    }
}
