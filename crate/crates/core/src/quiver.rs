//! Quivers, paths, relations and bound quiver algebras.
//!
//! Vertices and arrows are identified by strings. On construction both are
//! sorted by id, and that sorted order is the canonical index order used by
//! dimension vectors, weights and every serialized output.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{format_q, parse_q, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub id: String,
    pub tail: usize,
    pub head: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: BTreeMap<String, usize>,
    arrow_index: BTreeMap<String, usize>,
}

impl Quiver {
    /// `arrows` are `(id, tail, head)` triples.
    pub fn new<V, A>(vertices: V, arrows: A) -> Result<Self>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        A: IntoIterator<Item = (String, String, String)>,
    {
        let mut vs: Vec<String> = vertices.into_iter().map(Into::into).collect();
        vs.sort();
        for w in vs.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateId { kind: "vertex", id: w[0].clone() });
            }
        }
        let vertex_index: BTreeMap<String, usize> =
            vs.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();

        let mut raw: Vec<(String, String, String)> = arrows.into_iter().collect();
        raw.sort();
        let mut arrows = Vec::with_capacity(raw.len());
        let mut arrow_index = BTreeMap::new();
        for (id, t, h) in raw {
            let tail = *vertex_index.get(&t).ok_or_else(|| Error::UnknownVertex(t.clone()))?;
            let head = *vertex_index.get(&h).ok_or_else(|| Error::UnknownVertex(h.clone()))?;
            if arrow_index.insert(id.clone(), arrows.len()).is_some() {
                return Err(Error::DuplicateId { kind: "arrow", id });
            }
            arrows.push(Arrow { id, tail, head });
        }
        Ok(Quiver { vertices: vs, arrows, vertex_index, arrow_index })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.arrows[a]
    }

    pub fn vertex_index(&self, id: &str) -> Result<usize> {
        self.vertex_index.get(id).copied().ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    pub fn arrow_index(&self, id: &str) -> Result<usize> {
        self.arrow_index.get(id).copied().ok_or_else(|| Error::UnknownArrow(id.to_string()))
    }

    /// Number of arrows `i -> j`.
    pub fn arrows_between(&self, i: usize, j: usize) -> usize {
        self.arrows.iter().filter(|a| a.tail == i && a.head == j).count()
    }

    /// Kahn order if the quiver has no oriented cycles.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.head] += 1;
        }
        let mut ready: BTreeSet<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = ready.pop_first() {
            order.push(v);
            for a in self.arrows.iter().filter(|a| a.tail == v) {
                indeg[a.head] -= 1;
                if indeg[a.head] == 0 {
                    ready.insert(a.head);
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// Resolves arrow ids into a composable path.
    pub fn path(&self, arrow_ids: &[&str]) -> Result<Path> {
        let arrows = arrow_ids.iter().map(|id| self.arrow_index(id)).collect::<Result<Vec<_>>>()?;
        Path::from_arrows(self, arrows)
    }
}

/// A path in traversal order: `arrows[0]` is applied first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    start: usize,
    arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(vertex: usize) -> Self {
        Path { start: vertex, arrows: Vec::new() }
    }

    pub fn from_arrows(quiver: &Quiver, arrows: Vec<usize>) -> Result<Self> {
        let Some(&first) = arrows.first() else {
            return Err(Error::NonComposable("empty arrow list; use a trivial path".into()));
        };
        if arrows.iter().any(|&a| a >= quiver.arrow_count()) {
            return Err(Error::NonComposable("arrow index out of range".into()));
        }
        for w in arrows.windows(2) {
            let (x, y) = (quiver.arrow(w[0]), quiver.arrow(w[1]));
            if x.head != y.tail {
                return Err(Error::NonComposable(format!("{} then {}", x.id, y.id)));
            }
        }
        Ok(Path { start: quiver.arrow(first).tail, arrows })
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn end(&self, quiver: &Quiver) -> usize {
        self.arrows.last().map_or(self.start, |&a| quiver.arrow(a).head)
    }

    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self` followed by `next`.
    pub fn then(&self, quiver: &Quiver, next: &Path) -> Result<Path> {
        if self.end(quiver) != next.start {
            return Err(Error::NonComposable("end of first path is not start of second".into()));
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&next.arrows);
        Ok(Path { start: self.start, arrows })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationTerm {
    pub coeff: Q,
    pub path: Path,
}

/// A linear combination of parallel paths of length at least two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    terms: Vec<RelationTerm>,
    tail: usize,
    head: usize,
}

impl Relation {
    pub fn new(quiver: &Quiver, index: usize, terms: Vec<(Q, Vec<usize>)>) -> Result<Self> {
        let bad = |reason: &str| Error::InvalidRelation { index, reason: reason.to_string() };
        let mut out = Vec::new();
        let mut ends = None;
        for (coeff, arrows) in terms {
            let path = Path::from_arrows(quiver, arrows).map_err(|e| bad(&e.to_string()))?;
            if path.len() < 2 {
                return Err(bad("paths in relations must have length at least 2"));
            }
            let e = (path.start(), path.end(quiver));
            match ends {
                None => ends = Some(e),
                Some(prev) if prev != e => return Err(bad("terms do not share tail and head")),
                _ => {}
            }
            if !coeff.is_zero() {
                out.push(RelationTerm { coeff, path });
            }
        }
        let Some((tail, head)) = ends else {
            return Err(bad("relation has no terms"));
        };
        if out.is_empty() {
            return Err(bad("all coefficients are zero"));
        }
        Ok(Relation { terms: out, tail, head })
    }

    pub fn terms(&self) -> &[RelationTerm] {
        &self.terms
    }

    pub fn tail(&self) -> usize {
        self.tail
    }

    pub fn head(&self) -> usize {
        self.head
    }
}

/// `A = kQ/I` with `I` generated by a user-declared minimal relation set.
///
/// The admissibility upper bound `R^L ⊆ I` and minimality of the relations
/// are not checked; they are recorded in [`BoundQuiverAlgebra::assumptions`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundQuiverAlgebra {
    quiver: Quiver,
    relations: Vec<Relation>,
    gldim_bound: Option<u32>,
    triangular: bool,
}

impl BoundQuiverAlgebra {
    pub fn new(quiver: Quiver, relations: Vec<Relation>, gldim_bound: Option<u32>) -> Self {
        let triangular = quiver.is_acyclic();
        BoundQuiverAlgebra { quiver, relations, gldim_bound, triangular }
    }

    /// Path algebra, no relations.
    pub fn path_algebra(quiver: Quiver) -> Self {
        Self::new(quiver, Vec::new(), None)
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count()
    }

    pub fn is_triangular(&self) -> bool {
        self.triangular
    }

    pub fn is_hereditary(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn declared_gldim_bound(&self) -> Option<u32> {
        self.gldim_bound
    }

    /// Declared bound, or 1 for path algebras of acyclic quivers.
    pub fn gldim_bound(&self) -> Option<u32> {
        match self.gldim_bound {
            Some(b) => Some(b),
            None if self.is_hereditary() && self.triangular => Some(1),
            None => None,
        }
    }

    /// `r(i, j)`: number of relations from `i` to `j`.
    pub fn relation_count(&self, i: usize, j: usize) -> usize {
        self.relations.iter().filter(|r| r.tail == i && r.head == j).count()
    }

    pub fn assumptions(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.relations.is_empty() {
            out.push("relations generate an admissible ideal (R^L ⊆ I is not checked)".to_string());
            out.push("relation set is minimal, so r(i,j) = dim Ext^2(S_i,S_j)".to_string());
        }
        if let Some(b) = self.gldim_bound {
            out.push(format!("global dimension is at most {b} (declared)"));
        }
        out
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let wire: AlgebraJson = serde_json::from_str(text)?;
        wire.into_algebra()
    }

    pub fn to_json(&self) -> AlgebraJson {
        let q = &self.quiver;
        AlgebraJson {
            vertices: q.vertices.clone(),
            arrows: q
                .arrows
                .iter()
                .map(|a| ArrowJson {
                    id: a.id.clone(),
                    tail: q.vertices[a.tail].clone(),
                    head: q.vertices[a.head].clone(),
                })
                .collect(),
            relations: self
                .relations
                .iter()
                .map(|r| RelationJson {
                    terms: r
                        .terms
                        .iter()
                        .map(|t| TermJson {
                            coeff: format_q(&t.coeff),
                            path: t.path.arrows.iter().map(|&a| q.arrows[a].id.clone()).collect(),
                        })
                        .collect(),
                })
                .collect(),
            gldim_bound: self.gldim_bound,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ArrowJson {
    pub id: String,
    pub tail: String,
    pub head: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TermJson {
    pub coeff: String,
    pub path: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RelationJson {
    pub terms: Vec<TermJson>,
}

/// Wire format of a bound quiver algebra.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct AlgebraJson {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowJson>,
    #[serde(default)]
    pub relations: Vec<RelationJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gldim_bound: Option<u32>,
}

impl AlgebraJson {
    pub fn into_algebra(self) -> Result<BoundQuiverAlgebra> {
        let quiver = Quiver::new(
            self.vertices,
            self.arrows.into_iter().map(|a| (a.id, a.tail, a.head)),
        )?;
        let mut relations = Vec::with_capacity(self.relations.len());
        for (index, rel) in self.relations.into_iter().enumerate() {
            let mut terms = Vec::with_capacity(rel.terms.len());
            for t in rel.terms {
                let coeff = parse_q(&t.coeff)?;
                let arrows = t
                    .path
                    .iter()
                    .map(|id| quiver.arrow_index(id))
                    .collect::<Result<Vec<_>>>()?;
                terms.push((coeff, arrows));
            }
            relations.push(Relation::new(&quiver, index, terms)?);
        }
        Ok(BoundQuiverAlgebra::new(quiver, relations, self.gldim_bound))
    }
}
