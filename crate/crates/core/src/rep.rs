//! Representations of bound quiver algebras with exact rational matrices.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::dimvec::DimVector;
use crate::error::{Error, Result};
use crate::linalg::{format_q, parse_q, QMatrix, Q};
use crate::quiver::{BoundQuiverAlgebra, Path, Relation};

/// A point of `mod(A, d)`: one matrix of shape `d(head) x d(tail)` per arrow,
/// satisfying every relation.
#[derive(Clone, Debug)]
pub struct Representation {
    algebra: Arc<BoundQuiverAlgebra>,
    dim: DimVector,
    matrices: Vec<QMatrix>,
}

impl PartialEq for Representation {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.algebra, &other.algebra) && self.dim == other.dim && self.matrices == other.matrices
    }
}

impl Eq for Representation {}

pub(crate) fn same_algebra(a: &Arc<BoundQuiverAlgebra>, b: &Arc<BoundQuiverAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// One reason a candidate point is not in `mod(A, d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    MissingDimension { vertex: String },
    UnknownVertex { vertex: String },
    MissingArrow { arrow: String },
    UnknownArrow { arrow: String },
    ShapeMismatch { arrow: String, expected: (usize, usize), found: (usize, usize) },
    RaggedMatrix { arrow: String },
    RelationViolation { relation: usize, value: QMatrix },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::MissingDimension { vertex } => write!(f, "no dimension for vertex {vertex:?}"),
            Violation::UnknownVertex { vertex } => write!(f, "unknown vertex {vertex:?}"),
            Violation::MissingArrow { arrow } => write!(f, "no matrix for arrow {arrow:?}"),
            Violation::UnknownArrow { arrow } => write!(f, "unknown arrow {arrow:?}"),
            Violation::ShapeMismatch { arrow, expected, found } => write!(
                f,
                "arrow {arrow:?}: expected {}x{}, found {}x{}",
                expected.0, expected.1, found.0, found.1
            ),
            Violation::RaggedMatrix { arrow } => write!(f, "arrow {arrow:?}: rows of unequal length"),
            Violation::RelationViolation { relation, value } => {
                write!(f, "relation {relation} evaluates to {value:?}")
            }
        }
    }
}

/// Outcome of [`validate_representation`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        let parts: Vec<String> = self.violations.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// Unvalidated dimensions and matrices keyed by id.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawRepresentation {
    pub dim: BTreeMap<String, usize>,
    pub matrices: BTreeMap<String, Vec<Vec<Q>>>,
}

/// Wire format: rationals are `"p/q"` strings.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RepresentationJson {
    pub dim: BTreeMap<String, usize>,
    pub matrices: BTreeMap<String, Vec<Vec<String>>>,
}

impl RepresentationJson {
    pub fn into_raw(self) -> Result<RawRepresentation> {
        let mut matrices = BTreeMap::new();
        for (k, rows) in self.matrices {
            let parsed = rows
                .iter()
                .map(|r| r.iter().map(|s| parse_q(s)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            matrices.insert(k, parsed);
        }
        Ok(RawRepresentation { dim: self.dim, matrices })
    }
}

/// Checks shapes against the dimension vector and evaluates every relation.
pub fn validate_representation(algebra: &BoundQuiverAlgebra, raw: &RawRepresentation) -> ValidationReport {
    checked_matrices(algebra, raw).map_or_else(|violations| ValidationReport { violations }, |_| ValidationReport {
        violations: Vec::new(),
    })
}

fn checked_matrices(
    algebra: &BoundQuiverAlgebra,
    raw: &RawRepresentation,
) -> std::result::Result<(DimVector, Vec<QMatrix>), Vec<Violation>> {
    let quiver = algebra.quiver();
    let mut violations = Vec::new();
    for v in raw.dim.keys() {
        if quiver.vertex_index(v).is_err() {
            violations.push(Violation::UnknownVertex { vertex: v.clone() });
        }
    }
    for a in raw.matrices.keys() {
        if quiver.arrow_index(a).is_err() {
            violations.push(Violation::UnknownArrow { arrow: a.clone() });
        }
    }
    let mut dim = Vec::with_capacity(quiver.vertex_count());
    for v in quiver.vertices() {
        match raw.dim.get(v) {
            Some(&d) => dim.push(d),
            None => {
                violations.push(Violation::MissingDimension { vertex: v.clone() });
                dim.push(0);
            }
        }
    }
    let mut matrices = Vec::with_capacity(quiver.arrow_count());
    for arrow in quiver.arrows() {
        let expected = (dim[arrow.head], dim[arrow.tail]);
        let Some(rows) = raw.matrices.get(&arrow.id) else {
            violations.push(Violation::MissingArrow { arrow: arrow.id.clone() });
            matrices.push(QMatrix::zeros(expected.0, expected.1));
            continue;
        };
        let ncols = rows.first().map_or(expected.1, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            violations.push(Violation::RaggedMatrix { arrow: arrow.id.clone() });
            matrices.push(QMatrix::zeros(expected.0, expected.1));
            continue;
        }
        let found = (rows.len(), ncols);
        // An empty row list carries no column count; accept it for zero-row targets.
        let shape_ok = found == expected || (rows.is_empty() && expected.0 == 0);
        if !shape_ok {
            violations.push(Violation::ShapeMismatch { arrow: arrow.id.clone(), expected, found });
            matrices.push(QMatrix::zeros(expected.0, expected.1));
            continue;
        }
        let m = if rows.is_empty() {
            QMatrix::zeros(expected.0, expected.1)
        } else {
            QMatrix::from_rows(expected.0, expected.1, rows.clone()).expect("shape checked")
        };
        matrices.push(m);
    }
    if !violations.is_empty() {
        return Err(violations);
    }
    for (index, rel) in algebra.relations().iter().enumerate() {
        let value = evaluate_relation_on(algebra, &dim, &matrices, rel);
        if !value.is_zero() {
            violations.push(Violation::RelationViolation { relation: index, value });
        }
    }
    if violations.is_empty() {
        Ok((DimVector(dim), matrices))
    } else {
        Err(violations)
    }
}

fn evaluate_path_on(dim: &[usize], matrices: &[QMatrix], path: &Path) -> QMatrix {
    let mut acc = QMatrix::identity(dim[path.start()]);
    for &a in path.arrows() {
        acc = matrices[a].mul(&acc);
    }
    acc
}

fn evaluate_relation_on(algebra: &BoundQuiverAlgebra, dim: &[usize], matrices: &[QMatrix], rel: &Relation) -> QMatrix {
    let _ = algebra;
    let mut acc = QMatrix::zeros(dim[rel.head()], dim[rel.tail()]);
    for term in rel.terms() {
        acc = acc.add(&evaluate_path_on(dim, matrices, &term.path).scale(&term.coeff));
    }
    acc
}

impl Representation {
    /// Validating constructor; matrices are indexed by canonical arrow order.
    pub fn new(algebra: Arc<BoundQuiverAlgebra>, dim: DimVector, matrices: Vec<QMatrix>) -> Result<Self> {
        let rep = Self::new_unchecked(algebra, dim, matrices)?;
        let report = rep.check();
        if !report.is_ok() {
            return Err(Error::InvalidRepresentation(report.to_string()));
        }
        Ok(rep)
    }

    /// Checks only shapes; relations are not evaluated.
    pub(crate) fn new_unchecked(algebra: Arc<BoundQuiverAlgebra>, dim: DimVector, matrices: Vec<QMatrix>) -> Result<Self> {
        let quiver = algebra.quiver();
        if dim.len() != quiver.vertex_count() || matrices.len() != quiver.arrow_count() {
            return Err(Error::Shape("dimension vector or arrow count does not match the quiver".into()));
        }
        for (arrow, m) in quiver.arrows().iter().zip(&matrices) {
            let expected = (dim.0[arrow.head], dim.0[arrow.tail]);
            if m.shape() != expected {
                return Err(Error::Shape(format!(
                    "arrow {:?}: expected {}x{}, found {}x{}",
                    arrow.id,
                    expected.0,
                    expected.1,
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(Representation { algebra, dim, matrices })
    }

    pub fn from_raw(algebra: Arc<BoundQuiverAlgebra>, raw: &RawRepresentation) -> Result<Self> {
        match checked_matrices(&algebra, raw) {
            Ok((dim, matrices)) => Ok(Representation { algebra, dim, matrices }),
            Err(violations) => Err(Error::InvalidRepresentation(ValidationReport { violations }.to_string())),
        }
    }

    pub fn from_json(algebra: Arc<BoundQuiverAlgebra>, text: &str) -> Result<Self> {
        let wire: RepresentationJson = serde_json::from_str(text)?;
        Self::from_raw(algebra, &wire.into_raw()?)
    }

    pub fn to_json(&self) -> RepresentationJson {
        let quiver = self.algebra.quiver();
        RepresentationJson {
            dim: self.dim.to_map(quiver),
            matrices: quiver
                .arrows()
                .iter()
                .zip(&self.matrices)
                .map(|(a, m)| (a.id.clone(), m.to_rows().iter().map(|r| r.iter().map(format_q).collect()).collect()))
                .collect(),
        }
    }

    pub fn to_raw(&self) -> RawRepresentation {
        let quiver = self.algebra.quiver();
        RawRepresentation {
            dim: self.dim.to_map(quiver),
            matrices: quiver.arrows().iter().zip(&self.matrices).map(|(a, m)| (a.id.clone(), m.to_rows())).collect(),
        }
    }

    /// Zero matrices on every arrow.
    pub fn zero_maps(algebra: Arc<BoundQuiverAlgebra>, dim: DimVector) -> Result<Self> {
        let matrices = algebra
            .quiver()
            .arrows()
            .iter()
            .map(|a| QMatrix::zeros(dim.0[a.head], dim.0[a.tail]))
            .collect();
        Self::new(algebra, dim, matrices)
    }

    pub fn zero(algebra: Arc<BoundQuiverAlgebra>) -> Self {
        let n = algebra.vertex_count();
        Self::zero_maps(algebra, DimVector::zero(n)).expect("zero module is valid")
    }

    /// Simple module `S_i`.
    pub fn simple(algebra: Arc<BoundQuiverAlgebra>, vertex: usize) -> Self {
        let n = algebra.vertex_count();
        Self::zero_maps(algebra, DimVector::unit(n, vertex)).expect("simple module is valid")
    }

    pub fn algebra(&self) -> &Arc<BoundQuiverAlgebra> {
        &self.algebra
    }

    pub fn dim(&self) -> &DimVector {
        &self.dim
    }

    pub fn matrix(&self, arrow: usize) -> &QMatrix {
        &self.matrices[arrow]
    }

    pub fn matrices(&self) -> &[QMatrix] {
        &self.matrices
    }

    pub fn matrix_by_id(&self, id: &str) -> Result<&QMatrix> {
        Ok(&self.matrices[self.algebra.quiver().arrow_index(id)?])
    }

    pub fn is_zero(&self) -> bool {
        self.dim.is_zero()
    }

    /// Re-runs shape and relation checks.
    pub fn check(&self) -> ValidationReport {
        validate_representation(&self.algebra, &self.to_raw())
    }

    /// Product of the arrow matrices along `path`, last arrow leftmost.
    pub fn evaluate_path(&self, path: &Path) -> QMatrix {
        evaluate_path_on(&self.dim.0, &self.matrices, path)
    }

    pub fn evaluate_relation(&self, rel: &Relation) -> QMatrix {
        evaluate_relation_on(&self.algebra, &self.dim.0, &self.matrices, rel)
    }

    pub fn same_algebra(&self, other: &Representation) -> bool {
        same_algebra(&self.algebra, &other.algebra)
    }

    /// Block-diagonal direct sum, `self` first.
    pub fn direct_sum(&self, other: &Representation) -> Result<Representation> {
        if !self.same_algebra(other) {
            return Err(Error::AlgebraMismatch);
        }
        let matrices = self.matrices.iter().zip(&other.matrices).map(|(a, b)| QMatrix::block_diag(a, b)).collect();
        Ok(Representation { algebra: self.algebra.clone(), dim: self.dim.add(&other.dim), matrices })
    }

    /// Same matrices viewed over another algebra with identical quiver.
    pub fn rebase(&self, algebra: Arc<BoundQuiverAlgebra>) -> Result<Representation> {
        if algebra.quiver() != self.algebra.quiver() {
            return Err(Error::AlgebraMismatch);
        }
        Representation::new(algebra, self.dim.clone(), self.matrices.clone())
    }
}

/// Evaluates a raw arrow-id path on a representation.
pub fn evaluate_path(rep: &Representation, arrow_ids: &[&str]) -> Result<QMatrix> {
    let path = rep.algebra().quiver().path(arrow_ids)?;
    Ok(rep.evaluate_path(&path))
}
