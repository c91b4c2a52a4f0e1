//! King stability through subrepresentation existence.
//!
//! `subrep_exists` asks whether the quiver Grassmannian `Gr_e(M)` is nonempty.
//! Two backends work on the same Schubert-cell charts: the certifier looks for a
//! rational point by propagation and small-integer sampling, the decider tests
//! each cell's invariance ideal for triviality with Buchberger's algorithm.

pub mod groebner;
pub mod poly;
pub mod schubert;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;

use crate::dimvec::{DimVector, Weight};
use crate::error::{Error, Result};
use crate::linalg::{format_q, q, sign, QMatrix, Q};
use crate::rep::Representation;
use groebner::{contains_one, GroebnerLimits};
use schubert::{cells, Cell, Entry};

#[derive(Clone, Debug)]
pub struct StabilityConfig {
    pub limits: GroebnerLimits,
    pub seed: u64,
    /// Sampling rounds per cell in the certifier; round 0 sets every free parameter to 0.
    pub witness_attempts: usize,
    /// Run the decider even when the certifier succeeded, and fail on disagreement.
    pub cross_check: bool,
    pub parallel: bool,
}

impl Default for StabilityConfig {
    fn default() -> Self {
        StabilityConfig { limits: GroebnerLimits::default(), seed: 0, witness_attempts: 6, cross_check: false, parallel: true }
    }
}

/// `M` together with a candidate subdimension vector `e ≤ dim M`.
#[derive(Clone, Debug)]
pub struct SubrepQuery<'a> {
    m: &'a Representation,
    e: DimVector,
}

impl<'a> SubrepQuery<'a> {
    pub fn new(m: &'a Representation, e: DimVector) -> Result<Self> {
        if e.len() != m.dim().len() {
            return Err(Error::Shape(format!("subdimension vector has {} entries, expected {}", e.len(), m.dim().len())));
        }
        if !e.le(m.dim()) {
            return Err(Error::Shape(format!("{e} is not bounded by {}", m.dim())));
        }
        Ok(SubrepQuery { m, e })
    }

    pub fn module(&self) -> &Representation {
        self.m
    }

    pub fn subdim(&self) -> &DimVector {
        &self.e
    }
}

/// Subspaces `U_i ⊆ M_i`, given by column bases, closed under every arrow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subrep {
    pub dim: DimVector,
    pub bases: Vec<QMatrix>,
}

impl Subrep {
    /// Exact check of dimensions and invariance.
    pub fn verify(&self, m: &Representation) -> bool {
        let d = m.dim();
        if self.bases.len() != d.len() || self.dim.len() != d.len() {
            return false;
        }
        for (i, b) in self.bases.iter().enumerate() {
            if b.shape() != (d.0[i], self.dim.0[i]) || b.rank() != self.dim.0[i] {
                return false;
            }
        }
        m.algebra().quiver().arrows().iter().enumerate().all(|(a, arrow)| {
            let image = m.matrix(a).mul(&self.bases[arrow.tail]);
            self.bases[arrow.head].hstack(&image).rank() == self.dim.0[arrow.head]
        })
    }

    /// The subrepresentation as a module in the chosen bases.
    pub fn as_representation(&self, m: &Representation) -> Result<Representation> {
        let quiver = m.algebra().quiver();
        let mut mats = Vec::with_capacity(quiver.arrow_count());
        for (a, arrow) in quiver.arrows().iter().enumerate() {
            let image = m.matrix(a).mul(&self.bases[arrow.tail]);
            let bh = &self.bases[arrow.head];
            let cols: Vec<Vec<Q>> = (0..image.cols())
                .map(|c| bh.solve(&image.column(c)).ok_or_else(|| Error::InvalidRepresentation("subspace is not invariant".into())))
                .collect::<Result<_>>()?;
            mats.push(QMatrix::from_columns(self.dim.0[arrow.head], &cols));
        }
        Representation::new(m.algebra().clone(), self.dim.clone(), mats)
    }

    pub fn to_json(&self, m: &Representation) -> serde_json::Value {
        let quiver = m.algebra().quiver();
        let bases: BTreeMap<String, Vec<Vec<String>>> = quiver
            .vertices()
            .iter()
            .zip(&self.bases)
            .map(|(v, b)| (v.clone(), b.to_rows().iter().map(|r| r.iter().map(format_q).collect()).collect()))
            .collect();
        serde_json::json!({ "dim": self.dim.to_map(quiver), "bases": bases })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Backend {
    /// `e = 0` or `e = dim M`.
    Trivial,
    Certifier,
    Decider,
}

#[derive(Clone, Debug)]
pub struct SubrepAnswer {
    pub exists: bool,
    /// Present whenever a rational point was found.
    pub witness: Option<Subrep>,
    pub backend: Backend,
}

fn trivial_witness(m: &Representation, e: &DimVector) -> Subrep {
    let bases = m
        .dim()
        .0
        .iter()
        .zip(&e.0)
        .map(|(&d, &k)| if k == 0 { QMatrix::zeros(d, 0) } else { QMatrix::identity(d) })
        .collect();
    Subrep { dim: e.clone(), bases }
}

/// Is `Gr_e(M)` nonempty over the algebraic closure?
pub fn subrep_exists(m: &Representation, e: &DimVector, cfg: &StabilityConfig) -> Result<SubrepAnswer> {
    let query = SubrepQuery::new(m, e.clone())?;
    let e = query.subdim();
    if e.is_zero() || e == m.dim() {
        return Ok(SubrepAnswer { exists: true, witness: Some(trivial_witness(m, e)), backend: Backend::Trivial });
    }
    if let Some(w) = backend_a(m, e, cfg) {
        if cfg.cross_check && !backend_b(m, e, cfg)? {
            return Err(Error::BackendDisagreement(e.0.clone()));
        }
        return Ok(SubrepAnswer { exists: true, witness: Some(w), backend: Backend::Certifier });
    }
    let exists = backend_b(m, e, cfg)?;
    Ok(SubrepAnswer { exists, witness: None, backend: Backend::Decider })
}

/// Certifier: a verified rational subrepresentation of dimension `e`, if one is found.
pub fn backend_a(m: &Representation, e: &DimVector, cfg: &StabilityConfig) -> Option<Subrep> {
    let order = m.algebra().quiver().topological_order();
    for (ci, cell) in cells(m.dim(), e).iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ (ci as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
        for attempt in 0..cfg.witness_attempts.max(1) {
            let radius = if attempt == 0 { 0 } else { 2i64 << ((attempt - 1) / 3) };
            let values = match &order {
                Some(order) => propagate(m, cell, order, radius, &mut rng),
                None => Some((0..cell.nvars).map(|_| q(rng.gen_range(-radius..=radius))).collect()),
            };
            let Some(values) = values else { continue };
            let bases = (0..m.dim().len()).map(|i| cell.basis_at(i, m.dim().0[i], &values)).collect();
            let sub = Subrep { dim: e.clone(), bases };
            if sub.verify(m) {
                return Some(sub);
            }
        }
    }
    None
}

/// Chooses each vertex's parameters in topological order so that all incoming
/// arrows already land inside; leftover freedom is sampled from `[-radius, radius]`.
fn propagate(m: &Representation, cell: &Cell, order: &[usize], radius: i64, rng: &mut ChaCha8Rng) -> Option<Vec<Q>> {
    let quiver = m.algebra().quiver();
    let d = &m.dim().0;
    let mut values = vec![q(0); cell.nvars];
    for &v in order {
        let range = cell.vars[v].clone();
        let pivots = &cell.pivots[v];
        let mut rows: Vec<Vec<Q>> = Vec::new();
        let mut rhs: Vec<Q> = Vec::new();
        for (a, arrow) in quiver.arrows().iter().enumerate().filter(|(_, ar)| ar.head == v) {
            let image = m.matrix(a).mul(&cell.basis_at(arrow.tail, d[arrow.tail], &values));
            for col in 0..image.cols() {
                let w = image.column(col);
                for c in (0..d[v]).filter(|c| !pivots.contains(c)) {
                    let mut row = vec![q(0); range.len()];
                    for (k, &p) in pivots.iter().enumerate() {
                        if let Entry::Var(x) = cell.rows[v][k][c] {
                            row[x - range.start] += &w[p];
                        }
                    }
                    rows.push(row);
                    rhs.push(w[c].clone());
                }
            }
        }
        if range.is_empty() {
            if rhs.iter().any(|x| sign(x) != 0) {
                return None;
            }
            continue;
        }
        let sample = |rng: &mut ChaCha8Rng| if radius == 0 { q(0) } else { q(rng.gen_range(-radius..=radius)) };
        let solution: Vec<Q> = if rows.is_empty() {
            (0..range.len()).map(|_| sample(rng)).collect()
        } else {
            let a = QMatrix::from_rows(rows.len(), range.len(), rows).expect("rectangular system");
            let mut x = a.solve(&rhs)?;
            for n in a.nullspace() {
                let t = sample(rng);
                for (xi, ni) in x.iter_mut().zip(&n) {
                    *xi += &t * ni;
                }
            }
            x
        };
        for (slot, val) in values[range].iter_mut().zip(solution) {
            *slot = val;
        }
    }
    Some(values)
}

/// Decider: `Gr_e(M) ≠ ∅` iff some cell's invariance ideal is proper.
pub fn backend_b(m: &Representation, e: &DimVector, cfg: &StabilityConfig) -> Result<bool> {
    let mut undecided: Option<String> = None;
    for cell in cells(m.dim(), e) {
        let eqs = cell.invariance_equations(m);
        if eqs.is_empty() {
            return Ok(true);
        }
        if eqs.iter().any(|p| p.is_unit()) {
            continue;
        }
        match contains_one(&eqs, cfg.limits) {
            Ok(false) => return Ok(true),
            Ok(true) => {}
            Err(why) => {
                undecided.get_or_insert(format!("cell {:?}: {why}", cell.pivots));
            }
        }
    }
    match undecided {
        Some(reason) => Err(Error::Undecided { dim: e.0.clone(), reason }),
        None => Ok(false),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum StabilityStatus {
    #[serde(rename = "semistable")]
    Semistable,
    #[serde(rename = "stable")]
    Stable,
    /// `θ(dim M) ≠ 0`.
    #[serde(rename = "unstable")]
    Unstable,
    /// A subrepresentation with `θ > 0` exists.
    #[serde(rename = "not-semistable-witness")]
    NotSemistable,
}

#[derive(Clone, Debug)]
pub struct StabilityVerdict {
    pub status: StabilityStatus,
    /// Subrepresentation responsible for the verdict, when one was found rationally.
    pub witness: Option<Subrep>,
    /// Its dimension vector (also set when only the decider saw it).
    pub violating_dim: Option<DimVector>,
}

impl StabilityVerdict {
    fn plain(status: StabilityStatus) -> Self {
        StabilityVerdict { status, witness: None, violating_dim: None }
    }

    pub fn is_semistable(&self) -> bool {
        matches!(self.status, StabilityStatus::Semistable | StabilityStatus::Stable)
    }

    pub fn is_stable(&self) -> bool {
        self.status == StabilityStatus::Stable
    }

    pub fn to_json(&self, m: &Representation, theta: &Weight) -> serde_json::Value {
        let quiver = m.algebra().quiver();
        serde_json::json!({
            "status": self.status,
            "theta": theta.to_strings(),
            "violating_dim": self.violating_dim.as_ref().map(|d| d.to_map(quiver)),
            "theta_of_violating_dim": self.violating_dim.as_ref().map(|d| format_q(&theta.eval(d))),
            "witness": self.witness.as_ref().map(|w| w.to_json(m)),
        })
    }
}

fn check_theta(m: &Representation, theta: &Weight) -> Result<()> {
    if theta.len() != m.dim().len() {
        return Err(Error::Shape(format!("weight has {} entries, expected {}", theta.len(), m.dim().len())));
    }
    Ok(())
}

fn scan(m: &Representation, candidates: &[DimVector], cfg: &StabilityConfig) -> Vec<Result<SubrepAnswer>> {
    if cfg.parallel {
        candidates.par_iter().map(|e| subrep_exists(m, e, cfg)).collect()
    } else {
        candidates.iter().map(|e| subrep_exists(m, e, cfg)).collect()
    }
}

/// First hit in lexicographic order wins; errors only matter when no hit exists.
/// On failure returns the index of the first error.
fn first_hit(
    candidates: &[DimVector],
    results: &[Result<SubrepAnswer>],
    keep: impl Fn(&DimVector) -> bool,
) -> std::result::Result<Option<(DimVector, Option<Subrep>)>, usize> {
    let mut first_err = None;
    for (i, (e, r)) in candidates.iter().zip(results).enumerate() {
        if !keep(e) {
            continue;
        }
        match r {
            Ok(ans) if ans.exists => return Ok(Some((e.clone(), ans.witness.clone()))),
            Ok(_) => {}
            Err(_) => {
                first_err.get_or_insert(i);
            }
        }
    }
    first_err.map_or(Ok(None), Err)
}

fn take_err(results: &mut [Result<SubrepAnswer>], i: usize) -> Error {
    match std::mem::replace(&mut results[i], Err(Error::AlgebraMismatch)) {
        Err(e) => e,
        Ok(_) => unreachable!("index points at an error"),
    }
}

/// `θ(dim M) = 0` and `θ(e) ≤ 0` for every subrepresentation dimension `e`.
pub fn is_semistable(m: &Representation, theta: &Weight, cfg: &StabilityConfig) -> Result<StabilityVerdict> {
    check_theta(m, theta)?;
    if sign(&theta.eval(m.dim())) != 0 {
        return Ok(StabilityVerdict::plain(StabilityStatus::Unstable));
    }
    let candidates: Vec<DimVector> = m.dim().subvectors().into_iter().filter(|e| sign(&theta.eval(e)) > 0).collect();
    let mut results = scan(m, &candidates, cfg);
    let hit = first_hit(&candidates, &results, |_| true).map_err(|i| take_err(&mut results, i))?;
    Ok(match hit {
        Some((e, witness)) => StabilityVerdict { status: StabilityStatus::NotSemistable, witness, violating_dim: Some(e) },
        None => StabilityVerdict::plain(StabilityStatus::Semistable),
    })
}

/// Additionally `θ(e) < 0` for every proper nonzero subrepresentation. The zero module is never stable.
pub fn is_stable(m: &Representation, theta: &Weight, cfg: &StabilityConfig) -> Result<StabilityVerdict> {
    check_theta(m, theta)?;
    if sign(&theta.eval(m.dim())) != 0 {
        return Ok(StabilityVerdict::plain(StabilityStatus::Unstable));
    }
    if m.dim().is_zero() {
        return Ok(StabilityVerdict::plain(StabilityStatus::Semistable));
    }
    let candidates: Vec<DimVector> = m
        .dim()
        .subvectors()
        .into_iter()
        .filter(|e| !e.is_zero() && e != m.dim() && sign(&theta.eval(e)) >= 0)
        .collect();
    let mut results = scan(m, &candidates, cfg);
    let positive = first_hit(&candidates, &results, |e| sign(&theta.eval(e)) > 0).map_err(|i| take_err(&mut results, i))?;
    if let Some((e, witness)) = positive {
        return Ok(StabilityVerdict { status: StabilityStatus::NotSemistable, witness, violating_dim: Some(e) });
    }
    let balanced = first_hit(&candidates, &results, |e| sign(&theta.eval(e)) == 0).map_err(|i| take_err(&mut results, i))?;
    Ok(match balanced {
        Some((e, witness)) => StabilityVerdict { status: StabilityStatus::Semistable, witness, violating_dim: Some(e) },
        None => StabilityVerdict::plain(StabilityStatus::Stable),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::homology::is_schur;
    use crate::linalg::QMatrix;

    fn dv(v: &[usize]) -> DimVector {
        DimVector(v.to_vec())
    }

    fn k2_module(a: &[i64], b: &[i64], n: usize, m: usize) -> Representation {
        Representation::new(
            catalog::kronecker(),
            dv(&[n, m]),
            vec![QMatrix::from_i64(m, n, a), QMatrix::from_i64(m, n, b)],
        )
        .unwrap()
    }

    /// Three distinct regular parameters: a = I, b = diag(1,2,3).
    fn generic_33() -> Representation {
        k2_module(&[1, 0, 0, 0, 1, 0, 0, 0, 1], &[1, 0, 0, 0, 2, 0, 0, 0, 3], 3, 3)
    }

    #[test]
    fn sink_subspaces_always_exist() {
        let m = generic_33();
        let ans = subrep_exists(&m, &dv(&[0, 1]), &StabilityConfig::default()).unwrap();
        assert!(ans.exists);
        assert!(ans.witness.unwrap().verify(&m));
    }

    #[test]
    fn no_common_kernel_vector() {
        let m = generic_33();
        let cfg = StabilityConfig::default();
        assert!(!subrep_exists(&m, &dv(&[1, 0]), &cfg).unwrap().exists);
        assert!(!backend_b(&m, &dv(&[1, 0]), &cfg).unwrap());
    }

    #[test]
    fn eigenvector_gives_regular_subrep() {
        let m = generic_33();
        let cfg = StabilityConfig::default();
        let ans = subrep_exists(&m, &dv(&[1, 1]), &cfg).unwrap();
        assert!(ans.exists);
        assert!(ans.witness.unwrap().verify(&m));
        assert!(backend_b(&m, &dv(&[1, 1]), &cfg).unwrap());
        // a (2,1) subrep would need two independent vectors with proportional images
        assert!(!subrep_exists(&m, &dv(&[2, 1]), &cfg).unwrap().exists);
    }

    #[test]
    fn irrational_point_found_only_by_decider() {
        // b = [[0,2],[1,0]] has eigenvalues ±√2: no rational (1,1) subrep exists.
        let m = k2_module(&[1, 0, 0, 1], &[0, 2, 1, 0], 2, 2);
        let cfg = StabilityConfig::default();
        assert!(backend_a(&m, &dv(&[1, 1]), &cfg).is_none());
        let ans = subrep_exists(&m, &dv(&[1, 1]), &cfg).unwrap();
        assert!(ans.exists);
        assert_eq!(ans.backend, Backend::Decider);
        assert!(ans.witness.is_none());
    }

    #[test]
    fn regular_simple_is_stable() {
        let m = k2_module(&[1], &[0], 1, 1);
        let theta = Weight::from_ints(&[1, -1]);
        let v = is_stable(&m, &theta, &StabilityConfig::default()).unwrap();
        assert_eq!(v.status, StabilityStatus::Stable);
        assert!(is_schur(&m));
    }

    #[test]
    fn zero_weight() {
        let cfg = StabilityConfig::default();
        let m = generic_33();
        let zero = Weight::zero(2);
        assert!(is_semistable(&m, &zero, &cfg).unwrap().is_semistable());
        assert_eq!(is_stable(&m, &zero, &cfg).unwrap().status, StabilityStatus::Semistable);
        let s = Representation::simple(catalog::kronecker(), 0);
        assert_eq!(is_stable(&s, &zero, &cfg).unwrap().status, StabilityStatus::Stable);
        let z = Representation::zero(catalog::kronecker());
        assert_eq!(is_stable(&z, &zero, &cfg).unwrap().status, StabilityStatus::Semistable);
    }

    #[test]
    fn unstable_and_not_semistable() {
        let cfg = StabilityConfig::default();
        let theta = Weight::from_ints(&[1, -1]);
        let p = k2_module(&[1, 0], &[0, 1], 1, 2);
        assert_eq!(is_semistable(&p, &theta, &cfg).unwrap().status, StabilityStatus::Unstable);
        // zero maps: S1 is a summand with θ = 1
        let m = k2_module(&[0], &[0], 1, 1);
        let v = is_semistable(&m, &theta, &cfg).unwrap();
        assert_eq!(v.status, StabilityStatus::NotSemistable);
        assert_eq!(v.violating_dim, Some(dv(&[1, 0])));
        assert!(v.witness.unwrap().verify(&m));
    }

    #[test]
    fn direct_sum_of_regular_simples_is_not_stable() {
        let cfg = StabilityConfig::default();
        let theta = Weight::from_ints(&[1, -1]);
        let a = k2_module(&[1], &[0], 1, 1);
        let b = k2_module(&[0], &[1], 1, 1);
        let s = a.direct_sum(&b).unwrap();
        let v = is_stable(&s, &theta, &cfg).unwrap();
        assert_eq!(v.status, StabilityStatus::Semistable);
        assert_eq!(v.violating_dim, Some(dv(&[1, 1])));
    }

    #[test]
    fn restriction_is_a_module() {
        let m = generic_33();
        let ans = subrep_exists(&m, &dv(&[1, 2]), &StabilityConfig::default()).unwrap();
        let w = ans.witness.unwrap();
        let sub = w.as_representation(&m).unwrap();
        assert_eq!(sub.dim(), &dv(&[1, 2]));
    }
}
