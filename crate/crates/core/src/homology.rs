//! Hom and Ext¹ between representations, computed exactly from the
//! two-step complex
//!
//! ```text
//! C⁰ = ⊕_i Hom(M(i), N(i))  --d⁰-->  C¹ = ⊕_a Hom(M(ta), N(ha))  --d¹-->  C² = ⊕_r Hom(M(tr), N(hr))
//! ```
//!
//! `Hom(M, N) = ker d⁰` and `Ext¹(M, N) = ker d¹ / im d⁰`. The differential
//! `d¹` substitutes a cochain into each generating relation one arrow
//! occurrence at a time, so the relations must generate the ideal.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms;
use crate::linalg::{Echelon, QMatrix, Q};
use crate::rep::Representation;

/// `φ(i): M(i) -> N(i)` for every vertex.
pub type Morphism = Vec<QMatrix>;

/// `Z(a): M(ta) -> N(ha)` for every arrow.
pub type Cochain = Vec<QMatrix>;

#[derive(Clone, Debug)]
pub struct HomBasis {
    pub dim: usize,
    pub basis: Vec<Morphism>,
}

#[derive(Clone, Debug)]
pub struct ExtCocycleBasis {
    pub dim: usize,
    /// Reduced-echelon coset representatives of `ker d¹ / im d⁰`.
    pub basis: Vec<Cochain>,
}

/// Coordinates of `C⁰` and `C¹` for a fixed pair `(M, N)`.
struct Layout {
    vertex_offsets: Vec<usize>,
    c0: usize,
    arrow_offsets: Vec<usize>,
    c1: usize,
}

impl Layout {
    fn new(m: &Representation, n: &Representation) -> Self {
        let alg = m.algebra();
        let (dm, dn) = (&m.dim().0, &n.dim().0);
        let mut vertex_offsets = Vec::with_capacity(dm.len());
        let mut c0 = 0;
        for i in 0..dm.len() {
            vertex_offsets.push(c0);
            c0 += dn[i] * dm[i];
        }
        let mut arrow_offsets = Vec::new();
        let mut c1 = 0;
        for a in alg.quiver().arrows() {
            arrow_offsets.push(c1);
            c1 += dn[a.head] * dm[a.tail];
        }
        Layout { vertex_offsets, c0, arrow_offsets, c1 }
    }
}

fn check_pair(m: &Representation, n: &Representation) -> Result<()> {
    if m.same_algebra(n) {
        Ok(())
    } else {
        Err(Error::AlgebraMismatch)
    }
}

/// Matrix of `d⁰` as rows indexed by `C¹` coordinates.
fn d0_rows(m: &Representation, n: &Representation, lay: &Layout) -> Vec<Vec<Q>> {
    let (dm, dn) = (&m.dim().0, &n.dim().0);
    let mut rows = Vec::with_capacity(lay.c1);
    for (ai, a) in m.algebra().quiver().arrows().iter().enumerate() {
        let (t, h) = (a.tail, a.head);
        let (ma, na) = (m.matrix(ai), n.matrix(ai));
        for r in 0..dn[h] {
            for c in 0..dm[t] {
                let mut row = vec![Q::zero(); lay.c0];
                // φ(h) M(a)
                for k in 0..dm[h] {
                    let v = &ma[(k, c)];
                    if !v.is_zero() {
                        row[lay.vertex_offsets[h] + r * dm[h] + k] += v;
                    }
                }
                // - N(a) φ(t)
                for k in 0..dn[t] {
                    let v = &na[(r, k)];
                    if !v.is_zero() {
                        row[lay.vertex_offsets[t] + k * dm[t] + c] -= v;
                    }
                }
                rows.push(row);
            }
        }
    }
    rows
}

/// Matrix of `d¹` as rows indexed by `C²` coordinates.
fn d1_rows(m: &Representation, n: &Representation, lay: &Layout) -> Vec<Vec<Q>> {
    let alg = m.algebra();
    let quiver = alg.quiver();
    let (dm, dn) = (&m.dim().0, &n.dim().0);
    let mut rows = Vec::new();
    for rel in alg.relations() {
        let (tr, hr) = (rel.tail(), rel.head());
        let block_start = rows.len();
        for _ in 0..dn[hr] * dm[tr] {
            rows.push(vec![Q::zero(); lay.c1]);
        }
        for term in rel.terms() {
            let arrows = term.path.arrows();
            for j in 0..arrows.len() {
                // left = N(α_k)...N(α_{j+1}), right = M(α_{j-1})...M(α_1)
                let aj = quiver.arrow(arrows[j]);
                let mut left = QMatrix::identity(dn[aj.head]);
                for &b in &arrows[j + 1..] {
                    left = n.matrix(b).mul(&left);
                }
                let mut right = QMatrix::identity(dm[tr]);
                for &b in &arrows[..j] {
                    right = m.matrix(b).mul(&right);
                }
                let off = lay.arrow_offsets[arrows[j]];
                let width = dm[aj.tail];
                for p in 0..dn[hr] {
                    for s in 0..dm[tr] {
                        let row = &mut rows[block_start + p * dm[tr] + s];
                        for u in 0..dn[aj.head] {
                            let l = &left[(p, u)];
                            if l.is_zero() {
                                continue;
                            }
                            for v in 0..width {
                                let rr = &right[(v, s)];
                                if !rr.is_zero() {
                                    row[off + u * width + v] += &term.coeff * l * rr;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    rows
}

fn unpack_morphism(m: &Representation, n: &Representation, lay: &Layout, v: &[Q]) -> Morphism {
    let (dm, dn) = (&m.dim().0, &n.dim().0);
    (0..dm.len())
        .map(|i| {
            let off = lay.vertex_offsets[i];
            let mut phi = QMatrix::zeros(dn[i], dm[i]);
            for r in 0..dn[i] {
                for c in 0..dm[i] {
                    phi[(r, c)] = v[off + r * dm[i] + c].clone();
                }
            }
            phi
        })
        .collect()
}

fn unpack_cochain(m: &Representation, n: &Representation, lay: &Layout, v: &[Q]) -> Cochain {
    let (dm, dn) = (&m.dim().0, &n.dim().0);
    m.algebra()
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let off = lay.arrow_offsets[ai];
            let mut z = QMatrix::zeros(dn[a.head], dm[a.tail]);
            for r in 0..dn[a.head] {
                for c in 0..dm[a.tail] {
                    z[(r, c)] = v[off + r * dm[a.tail] + c].clone();
                }
            }
            z
        })
        .collect()
}

/// Exact basis of `Hom_A(M, N)`.
pub fn hom_space(m: &Representation, n: &Representation) -> Result<HomBasis> {
    check_pair(m, n)?;
    let lay = Layout::new(m, n);
    let ech = Echelon::of_rows(lay.c0, d0_rows(m, n, &lay));
    let basis: Vec<Morphism> = ech.nullspace().iter().map(|v| unpack_morphism(m, n, &lay, v)).collect();
    debug_assert!(basis.iter().all(|phi| is_morphism(m, n, phi)));
    Ok(HomBasis { dim: basis.len(), basis })
}

/// `dim Hom_A(M, N)` without materializing a basis.
pub fn hom_dim(m: &Representation, n: &Representation) -> Result<usize> {
    check_pair(m, n)?;
    let lay = Layout::new(m, n);
    Ok(lay.c0 - Echelon::of_rows(lay.c0, d0_rows(m, n, &lay)).rank())
}

/// Coset basis of `Ext¹_A(M, N)`.
pub fn ext1_space(m: &Representation, n: &Representation) -> Result<ExtCocycleBasis> {
    check_pair(m, n)?;
    let lay = Layout::new(m, n);
    let kernel: Vec<Vec<Q>> = if m.algebra().is_hereditary() {
        (0..lay.c1)
            .map(|i| {
                let mut v = vec![Q::zero(); lay.c1];
                v[i] = Q::one();
                v
            })
            .collect()
    } else {
        Echelon::of_rows(lay.c1, d1_rows(m, n, &lay)).nullspace()
    };
    // im d⁰ is spanned by the columns of d⁰.
    let d0 = d0_rows(m, n, &lay);
    let image_rows: Vec<Vec<Q>> = (0..lay.c0).map(|c| d0.iter().map(|row| row[c].clone()).collect()).collect();
    let image = Echelon::of_rows(lay.c1, image_rows);
    let reduced: Vec<Vec<Q>> = kernel
        .into_iter()
        .map(|mut v| {
            image.reduce(&mut v);
            v
        })
        .collect();
    let reps = Echelon::of_rows(lay.c1, reduced);
    let basis: Vec<Cochain> = reps.rows.iter().map(|v| unpack_cochain(m, n, &lay, v)).collect();
    debug_assert!(basis.iter().all(|z| is_cocycle(m, n, z)));
    Ok(ExtCocycleBasis { dim: basis.len(), basis })
}

/// `dim Ext¹_A(M, N) = dim ker d¹ - rank d⁰`.
pub fn ext1_dim(m: &Representation, n: &Representation) -> Result<usize> {
    check_pair(m, n)?;
    let lay = Layout::new(m, n);
    let ker = if m.algebra().is_hereditary() {
        lay.c1
    } else {
        lay.c1 - Echelon::of_rows(lay.c1, d1_rows(m, n, &lay)).rank()
    };
    let rank_d0 = Echelon::of_rows(lay.c0, d0_rows(m, n, &lay)).rank();
    Ok(ker - rank_d0)
}

/// `φ(ha) M(a) = N(a) φ(ta)` for every arrow.
pub fn is_morphism(m: &Representation, n: &Representation, phi: &Morphism) -> bool {
    let quiver = m.algebra().quiver();
    phi.len() == quiver.vertex_count()
        && quiver.arrows().iter().enumerate().all(|(ai, a)| {
            phi[a.head].mul(m.matrix(ai)) == n.matrix(ai).mul(&phi[a.tail])
        })
}

/// Substituting `z` into every relation, one arrow at a time, gives zero.
pub fn is_cocycle(m: &Representation, n: &Representation, z: &Cochain) -> bool {
    let lay = Layout::new(m, n);
    let mut flat = Vec::with_capacity(lay.c1);
    for zm in z {
        flat.extend(zm.entries().iter().cloned());
    }
    if flat.len() != lay.c1 {
        return false;
    }
    d1_rows(m, n, &lay).iter().all(|row| {
        row.iter().zip(&flat).fold(Q::zero(), |acc, (a, b)| acc + a * b) == Q::zero()
    })
}

pub fn end_dim(m: &Representation) -> usize {
    hom_dim(m, m).expect("same module")
}

pub fn is_schur(m: &Representation) -> bool {
    end_dim(m) == 1
}

/// `dim GL(d) - dim End(M)`.
pub fn orbit_dimension(m: &Representation) -> usize {
    m.dim().0.iter().map(|d| d * d).sum::<usize>() - end_dim(m)
}

/// What is known about `dim Ext²(M, N)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Ext2 {
    /// Inferred from the Euler pairing under a declared global dimension at most 2.
    Inferred { value: i64 },
    /// No usable global dimension bound: only the defect `<dim M, dim N> - (hom - ext¹)` is reported.
    Unavailable { defect: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerPairingReport {
    pub hom: i64,
    pub ext1: i64,
    pub pairing: i64,
    pub ext2: Ext2,
    /// False when the inferred Ext² is negative, or nonzero for a hereditary algebra.
    pub consistent: bool,
}

impl EulerPairingReport {
    pub fn inferred_ext2(&self) -> Option<i64> {
        match self.ext2 {
            Ext2::Inferred { value } => Some(value),
            Ext2::Unavailable { .. } => None,
        }
    }
}

/// Reconciles `<dim M, dim N>_A` with `hom - ext¹ + ext²`.
pub fn euler_pairing_check(m: &Representation, n: &Representation) -> Result<EulerPairingReport> {
    check_pair(m, n)?;
    let alg = m.algebra();
    let hom = hom_dim(m, n)? as i64;
    let ext1 = ext1_dim(m, n)? as i64;
    let pairing = forms::euler_form(alg, m.dim(), n.dim())?;
    let residual = pairing - (hom - ext1);
    let (ext2, consistent) = match alg.gldim_bound() {
        Some(b) if b <= 2 => {
            let ok = residual >= 0 && (b >= 2 || residual == 0);
            (Ext2::Inferred { value: residual }, ok)
        }
        _ => (Ext2::Unavailable { defect: residual }, true),
    };
    Ok(EulerPairingReport { hom, ext1, pairing, ext2, consistent })
}
