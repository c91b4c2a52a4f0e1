//! Euler (Ringel) form, Tits form, isotropic roots and the defect weight.

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::dimvec::{DimVector, Weight};
use crate::error::{Error, Result};
use crate::linalg::{bigint_to_i64, primitive_integer, sign, QMatrix};
use crate::quiver::BoundQuiverAlgebra;
use crate::rep::Representation;

/// `E(i, j) = Σ_l (-1)^l dim Ext^l(S_i, S_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerMatrix {
    entries: Vec<Vec<i64>>,
}

impl EulerMatrix {
    /// `δ_ij - #arrows(i -> j) + r(i, j)` for a triangular algebra.
    pub fn of(algebra: &BoundQuiverAlgebra) -> Result<Self> {
        if !algebra.is_triangular() {
            return Err(Error::NonTriangular);
        }
        let n = algebra.vertex_count();
        let quiver = algebra.quiver();
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let delta = i64::from(i == j);
                        delta - quiver.arrows_between(i, j) as i64 + algebra.relation_count(i, j) as i64
                    })
                    .collect()
            })
            .collect();
        Ok(EulerMatrix { entries })
    }

    /// From user-supplied `dim Ext^l(S_i, S_j)` tables for `l = 1, 2`, for algebras
    /// with oriented cycles and finite global dimension at most 2.
    pub fn from_ext_tables(ext1: &[Vec<i64>], ext2: &[Vec<i64>]) -> Result<Self> {
        let n = ext1.len();
        if ext2.len() != n || ext1.iter().chain(ext2).any(|r| r.len() != n) {
            return Err(Error::Shape("Ext tables must be square and of equal size".into()));
        }
        let entries = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j) - ext1[i][j] + ext2[i][j]).collect())
            .collect();
        Ok(EulerMatrix { entries })
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn pair(&self, d: &DimVector, e: &DimVector) -> i64 {
        let (d, e) = (d.as_i64(), e.as_i64());
        let mut acc = 0;
        for (i, row) in self.entries.iter().enumerate() {
            if d[i] == 0 {
                continue;
            }
            for (j, v) in row.iter().enumerate() {
                acc += d[i] * v * e[j];
            }
        }
        acc
    }

    /// `E + Eᵀ`, the Gram matrix of the symmetrized form.
    pub fn symmetrized(&self) -> Vec<Vec<i64>> {
        let n = self.size();
        (0..n).map(|i| (0..n).map(|j| self.entries[i][j] + self.entries[j][i]).collect()).collect()
    }
}

/// `<d, e>_A`.
pub fn euler_form(algebra: &BoundQuiverAlgebra, d: &DimVector, e: &DimVector) -> Result<i64> {
    check_len(algebra, d)?;
    check_len(algebra, e)?;
    Ok(EulerMatrix::of(algebra)?.pair(d, e))
}

/// `q_A(d) = Σ d(i)² - Σ_a d(ta) d(ha) + Σ r(i, j) d(i) d(j)`.
pub fn tits_form(algebra: &BoundQuiverAlgebra, d: &DimVector) -> Result<i64> {
    check_len(algebra, d)?;
    if !algebra.is_triangular() {
        return Err(Error::NonTriangular);
    }
    let v = d.as_i64();
    let squares: i64 = v.iter().map(|x| x * x).sum();
    let arrows: i64 = algebra.quiver().arrows().iter().map(|a| v[a.tail] * v[a.head]).sum();
    let relations: i64 = algebra.relations().iter().map(|r| v[r.tail()] * v[r.head()]).sum();
    Ok(squares - arrows + relations)
}

fn check_len(algebra: &BoundQuiverAlgebra, d: &DimVector) -> Result<()> {
    if d.len() == algebra.vertex_count() {
        Ok(())
    } else {
        Err(Error::Shape(format!("dimension vector has {} entries, algebra has {} vertices", d.len(), algebra.vertex_count())))
    }
}

/// The positive primitive generator of the radical of `χ_A`.
///
/// Only defined when the radical is a line spanned by a strictly positive
/// vector, which is the tame concealed / extended Dynkin situation.
pub fn find_isotropic_root(algebra: &BoundQuiverAlgebra) -> Result<DimVector> {
    let sym = EulerMatrix::of(algebra)?.symmetrized();
    let n = sym.len();
    let flat: Vec<i64> = sym.into_iter().flatten().collect();
    let kernel = QMatrix::from_i64(n, n, &flat).nullspace();
    if kernel.len() != 1 {
        return Err(Error::Nullity(kernel.len()));
    }
    let mut gen: Vec<BigInt> = primitive_integer(&kernel[0]);
    if gen.iter().any(|x| x.is_negative()) {
        gen = gen.into_iter().map(|x| -x).collect();
    }
    if gen.iter().any(|x| !x.is_positive()) {
        let ints = gen.iter().map(|x| bigint_to_i64(x).unwrap_or(i64::MAX)).collect();
        return Err(Error::NotSignDefinite(ints));
    }
    let h = gen
        .iter()
        .map(|x| bigint_to_i64(x).map(|v| v as usize))
        .collect::<Result<Vec<_>>>()
        .map(DimVector)?;
    debug_assert_eq!(tits_form(algebra, &h).ok(), Some(0));
    Ok(h)
}

/// `θ_h(i) = <h, e_i>_A`.
pub fn defect_weight(algebra: &BoundQuiverAlgebra, h: &DimVector) -> Result<Weight> {
    check_len(algebra, h)?;
    let e = EulerMatrix::of(algebra)?;
    let n = algebra.vertex_count();
    let entries: Vec<i64> = (0..n).map(|i| e.pair(h, &DimVector::unit(n, i))).collect();
    Ok(Weight::from_ints(&entries))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DefectClass {
    /// `θ_h < 0`
    Preprojective,
    /// `θ_h = 0`
    Regular,
    /// `θ_h > 0`
    Preinjective,
}

pub fn classify_dim(theta_h: &Weight, d: &DimVector) -> DefectClass {
    match sign(&theta_h.eval(d)) {
        -1 => DefectClass::Preprojective,
        0 => DefectClass::Regular,
        _ => DefectClass::Preinjective,
    }
}

/// Sign class of `θ_h(dim X)`; indecomposability of `X` is the caller's concern.
pub fn classify_by_defect(theta_h: &Weight, x: &Representation) -> DefectClass {
    classify_dim(theta_h, x.dim())
}

/// `θ_h(d)` as an integer.
pub fn defect(theta_h: &Weight, d: &DimVector) -> i64 {
    let v = theta_h.eval(d);
    assert!(v.is_integer(), "defect weight must be integral");
    num_traits::ToPrimitive::to_i64(&v.to_integer()).expect("defect fits in i64")
}
