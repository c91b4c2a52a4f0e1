//! Generic subdimension vectors, cones of effective weights and their facets.

pub mod dd;

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, RwLock};

use crate::dimvec::{DimVector, Weight};
use crate::error::{Error, Result};
use crate::forms::{tits_form, EulerMatrix};
use crate::linalg::{q, sign, Echelon, Q};
use crate::quiver::BoundQuiverAlgebra;
use crate::rep::Representation;
use crate::stability::{subrep_exists, StabilityConfig};
use dd::double_description;

/// Memoized generic subdimension vectors for a hereditary algebra.
///
/// `e ↪ d` iff `⟨e', d - e⟩ ≥ 0` for every generic subdimension vector `e'` of `e`.
pub struct GenericSubdims {
    euler: EulerMatrix,
    memo: RwLock<HashMap<DimVector, Arc<Vec<DimVector>>>>,
}

impl GenericSubdims {
    pub fn new(algebra: &BoundQuiverAlgebra) -> Result<Self> {
        if !algebra.is_hereditary() {
            return Err(Error::NotHereditary);
        }
        Ok(GenericSubdims { euler: EulerMatrix::of(algebra)?, memo: RwLock::new(HashMap::new()) })
    }

    /// All generic subdimension vectors of `d`, in lexicographic order.
    pub fn of(&self, d: &DimVector) -> Arc<Vec<DimVector>> {
        if let Some(hit) = self.memo.read().expect("memo lock").get(d) {
            return hit.clone();
        }
        let mut out = Vec::new();
        for e in d.subvectors() {
            if e.is_zero() || &e == d {
                out.push(e);
                continue;
            }
            let rest = d.checked_sub(&e).expect("e <= d");
            let subs = self.of(&e);
            if subs.iter().all(|s| self.euler.pair(s, &rest) >= 0) {
                out.push(e);
            }
        }
        let out = Arc::new(out);
        self.memo.write().expect("memo lock").entry(d.clone()).or_insert_with(|| out.clone()).clone()
    }

    pub fn contains(&self, d: &DimVector, e: &DimVector) -> bool {
        self.of(d).binary_search(e).is_ok()
    }
}

pub fn generic_subdims(algebra: &BoundQuiverAlgebra, d: &DimVector) -> Result<Vec<DimVector>> {
    if d.len() != algebra.vertex_count() {
        return Err(Error::Shape(format!("dimension vector has {} entries, algebra has {} vertices", d.len(), algebra.vertex_count())));
    }
    Ok(GenericSubdims::new(algebra)?.of(d).as_ref().clone())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    /// Indices into [`EffCone::rays`], ascending.
    pub rays: Vec<usize>,
    /// Subdimension vectors whose inequality `θ(e) ≤ 0` is tight on the facet.
    pub supporting: Vec<DimVector>,
}

/// `{θ : θ(d) = 0, θ(e) ≤ 0 for the listed e}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EffCone {
    pub ambient: usize,
    pub d: DimVector,
    /// Inequalities `θ(e) ≤ 0` that vanish on the whole cone.
    pub implicit_equalities: Vec<DimVector>,
    pub inequalities: Vec<DimVector>,
    /// Primitive integer generators, sorted ascending.
    pub rays: Vec<Weight>,
    pub lineality: Vec<Weight>,
    pub facets: Vec<Facet>,
    pub dimension: usize,
}

fn as_q(e: &DimVector) -> Vec<Q> {
    e.0.iter().map(|&x| q(x as i64)).collect()
}

fn span_rank(vs: &[&Weight], n: usize) -> usize {
    Echelon::of_rows(n, vs.iter().map(|w| w.0.clone()).collect()).rank()
}

impl EffCone {
    /// Cone cut out by `θ(d) = 0` and `θ(e) ≤ 0` for each `e` in `subdims` (0 and `d` are ignored).
    pub fn from_subdims(d: &DimVector, subdims: &[DimVector]) -> EffCone {
        let n = d.len();
        let inequalities: Vec<DimVector> = subdims.iter().filter(|e| !e.is_zero() && *e != d).cloned().collect();
        let gens = double_description(n, &[as_q(d)], &inequalities.iter().map(as_q).collect::<Vec<_>>());
        let rays: Vec<Weight> = gens.rays.into_iter().map(Weight).collect();
        let lineality: Vec<Weight> = gens.lineality.into_iter().map(Weight).collect();
        let all: Vec<&Weight> = rays.iter().chain(&lineality).collect();
        let dimension = span_rank(&all, n);

        let mut implicit_equalities = Vec::new();
        let mut by_rays: Vec<(Vec<usize>, Vec<DimVector>)> = Vec::new();
        for e in &inequalities {
            let tight: Vec<usize> = (0..rays.len()).filter(|&i| sign(&rays[i].eval(e)) == 0).collect();
            if tight.len() == rays.len() {
                implicit_equalities.push(e.clone());
                continue;
            }
            let gens: Vec<&Weight> = tight.iter().map(|&i| &rays[i]).chain(&lineality).collect();
            if span_rank(&gens, n) + 1 != dimension {
                continue;
            }
            match by_rays.iter_mut().find(|(t, _)| *t == tight) {
                Some((_, sup)) => sup.push(e.clone()),
                None => by_rays.push((tight, vec![e.clone()])),
            }
        }
        by_rays.sort();
        let facets = by_rays.into_iter().map(|(rays, supporting)| Facet { rays, supporting }).collect();
        EffCone { ambient: n, d: d.clone(), implicit_equalities, inequalities, rays, lineality, facets, dimension }
    }

    pub fn contains(&self, theta: &Weight) -> bool {
        sign(&theta.eval(&self.d)) == 0 && self.inequalities.iter().all(|e| sign(&theta.eval(e)) <= 0)
    }

    /// Subdimension vectors whose inequality is tight at `theta`.
    pub fn tight_at(&self, theta: &Weight) -> Vec<DimVector> {
        self.inequalities.iter().filter(|e| sign(&theta.eval(e)) == 0).cloned().collect()
    }

    pub fn to_json(&self, algebra: &BoundQuiverAlgebra) -> serde_json::Value {
        let quiver = algebra.quiver();
        let dims = |v: &[DimVector]| v.iter().map(|e| e.to_map(quiver)).collect::<Vec<_>>();
        serde_json::json!({
            "vertices": quiver.vertices(),
            "d": self.d.to_map(quiver),
            "ambient_dimension": self.ambient,
            "dimension": self.dimension,
            "equalities": { "d": self.d.0, "implicit": dims(&self.implicit_equalities) },
            "inequalities": dims(&self.inequalities),
            "rays": self.rays.iter().map(Weight::to_strings).collect::<Vec<_>>(),
            "lineality": self.lineality.iter().map(Weight::to_strings).collect::<Vec<_>>(),
            "facets": self.facets.iter().map(|f| serde_json::json!({
                "rays": f.rays,
                "supporting": dims(&f.supporting),
            })).collect::<Vec<_>>(),
        })
    }
}

/// `Eff(A, d)` for hereditary `A`, from the generic subdimension recursion.
pub fn effective_cone(algebra: &BoundQuiverAlgebra, d: &DimVector) -> Result<EffCone> {
    let subs = generic_subdims(algebra, d)?;
    Ok(EffCone::from_subdims(d, &subs))
}

/// Fallback for algebras with relations: inequalities come from the actual
/// subrepresentations of a module assumed generic in its component.
pub fn effective_cone_from_witness(m: &Representation, cfg: &StabilityConfig) -> Result<EffCone> {
    let report = m.check();
    if !report.is_ok() {
        return Err(Error::InvalidRepresentation(report.to_string()));
    }
    let mut subs = Vec::new();
    for e in m.dim().subvectors() {
        if subrep_exists(m, &e, cfg)?.exists {
            subs.push(e);
        }
    }
    Ok(EffCone::from_subdims(m.dim(), &subs))
}

/// Sum of the facet's rays, checked to be tight on exactly the facet's inequalities.
pub fn facet_interior_weight(cone: &EffCone, facet: &Facet) -> Result<Weight> {
    if facet.rays.is_empty() {
        return Err(Error::DegenerateFacet("facet is the apex of the cone".into()));
    }
    if facet.rays.len() == cone.rays.len() {
        return Err(Error::DegenerateFacet("face is the whole cone, not a proper face".into()));
    }
    let mut theta = Weight::zero(cone.ambient);
    for &i in &facet.rays {
        for (t, r) in theta.0.iter_mut().zip(&cone.rays[i].0) {
            *t += r;
        }
    }
    let expected: BTreeSet<&DimVector> = cone
        .inequalities
        .iter()
        .filter(|e| facet.rays.iter().all(|&i| sign(&cone.rays[i].eval(e)) == 0))
        .collect();
    let tight = cone.tight_at(&theta);
    let found: BTreeSet<&DimVector> = tight.iter().collect();
    if !cone.contains(&theta) || found != expected {
        return Err(Error::DegenerateFacet(format!("weight {theta} does not lie in the relative interior")));
    }
    Ok(theta)
}

/// `d = n1 h1 + n2 h2` with both parts of Tits form 1 and `l = -⟨h1,h2⟩ - ⟨h2,h1⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StablePair {
    pub h1: DimVector,
    pub h2: DimVector,
    pub n1: usize,
    pub n2: usize,
    pub l: i64,
}

impl StablePair {
    pub fn to_json(&self, algebra: &BoundQuiverAlgebra) -> serde_json::Value {
        let quiver = algebra.quiver();
        serde_json::json!({
            "h1": self.h1.to_map(quiver),
            "h2": self.h2.to_map(quiver),
            "n1": self.n1,
            "n2": self.n2,
            "l": self.l,
        })
    }
}

/// Every pair with `h1 < h2` lexicographically, in lexicographic order of `h1`.
pub fn facet_stable_pairs(algebra: &BoundQuiverAlgebra, h: &DimVector, theta0: &Weight) -> Result<Vec<StablePair>> {
    if h.len() != algebra.vertex_count() || theta0.len() != h.len() {
        return Err(Error::Shape("dimension vector or weight does not match the algebra".into()));
    }
    let euler = EulerMatrix::of(algebra)?;
    if sign(&theta0.eval(h)) != 0 {
        return Err(Error::NoStablePair(format!("θ0 = {theta0} does not vanish on {h}")));
    }
    let mut out = Vec::new();
    for h1 in h.subvectors() {
        if h1.is_zero() || &h1 == h || !h1.is_indivisible() {
            continue;
        }
        if sign(&theta0.eval(&h1)) != 0 || tits_form(algebra, &h1)? != 1 {
            continue;
        }
        for n1 in 1.. {
            let Some(rest) = h.checked_sub(&h1.scale(n1)) else { break };
            if rest.is_zero() {
                break;
            }
            let n2 = rest.gcd();
            let h2 = DimVector(rest.0.iter().map(|x| x / n2).collect());
            if h2 <= h1 || tits_form(algebra, &h2)? != 1 {
                continue;
            }
            let (p12, p21) = (euler.pair(&h1, &h2), euler.pair(&h2, &h1));
            if p12 > 0 || p21 > 0 {
                continue;
            }
            let l = -p12 - p21;
            let (a, b) = (n1 as i64, n2 as i64);
            if 2 * a != b * l || 2 * b != a * l || a * a + b * b != l * a * b {
                continue;
            }
            debug_assert!(n1 == 1 && n2 == 1 && l == 2);
            out.push(StablePair { h1: h1.clone(), h2, n1, n2, l });
        }
    }
    Ok(out)
}

/// First pair in lexicographic order of `h1`.
pub fn facet_stable_pair(algebra: &BoundQuiverAlgebra, h: &DimVector, theta0: &Weight) -> Result<StablePair> {
    facet_stable_pairs(algebra, h, theta0)?
        .into_iter()
        .next()
        .ok_or_else(|| Error::NoStablePair(format!("no indivisible pair of Tits form 1 on the face of θ0 = {theta0}")))
}

/// The facet equals `Eff ∩ H(h1) ∩ H(h2)`, compared through exact generators.
pub fn facet_matches_pair(cone: &EffCone, facet: &Facet, pair: &StablePair) -> bool {
    let eqs = vec![as_q(&cone.d), as_q(&pair.h1), as_q(&pair.h2)];
    let ineqs: Vec<Vec<Q>> = cone.inequalities.iter().map(as_q).collect();
    let gens = double_description(cone.ambient, &eqs, &ineqs);
    let face_rays: Vec<Vec<Q>> = facet.rays.iter().map(|&i| cone.rays[i].0.clone()).collect();
    let cone_lin: Vec<Vec<Q>> = cone.lineality.iter().map(|w| w.0.clone()).collect();
    gens.rays == face_rays && gens.lineality == cone_lin
}
