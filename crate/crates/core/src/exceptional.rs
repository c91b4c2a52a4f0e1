//! Orthogonal exceptional sequences, the quotient algebra `A_E` and the lift `f_E`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dimvec::{DimVector, Weight};
use crate::error::{Error, Result};
use crate::forms::{defect_weight, find_isotropic_root, tits_form};
use crate::genericrep::{
    effective_cone, effective_cone_from_witness, facet_interior_weight, facet_matches_pair, facet_stable_pair,
    EffCone, StablePair,
};
use crate::homology::{end_dim, euler_pairing_check, ext1_space, EulerPairingReport, ExtCocycleBasis};
use crate::linalg::{q, sign, QMatrix, Q};
use crate::quiver::{BoundQuiverAlgebra, Quiver};
use crate::rep::Representation;
use crate::stability::StabilityConfig;

/// Matrices of dimension `d` with entries in `[-radius, radius]`; arrows ending a
/// relation are solved for linearly so that the result is a module over `A`.
pub fn random_module(
    algebra: &Arc<BoundQuiverAlgebra>,
    d: &DimVector,
    radius: i64,
    rng: &mut ChaCha8Rng,
) -> Result<Representation> {
    let quiver = algebra.quiver();
    if d.len() != quiver.vertex_count() {
        return Err(Error::Shape(format!("dimension vector has {} entries, expected {}", d.len(), quiver.vertex_count())));
    }
    let mut sample = |rows: usize, cols: usize| {
        let v: Vec<i64> = (0..rows * cols).map(|_| rng.gen_range(-radius..=radius)).collect();
        QMatrix::from_i64(rows, cols, &v)
    };
    let mut mats: Vec<QMatrix> = quiver.arrows().iter().map(|a| sample(d.0[a.head], d.0[a.tail])).collect();

    let relations = algebra.relations();
    let last: BTreeSet<usize> =
        relations.iter().flat_map(|r| r.terms().iter().map(|t| *t.path.arrows().last().expect("nonempty"))).collect();
    let inner: BTreeSet<usize> = relations
        .iter()
        .flat_map(|r| r.terms().iter().flat_map(|t| t.path.arrows()[..t.path.len() - 1].iter().copied()))
        .collect();
    if !last.is_empty() && last.is_disjoint(&inner) {
        // Unknowns: entries of the solved arrows, row-major, in arrow order.
        let mut offset = BTreeMap::new();
        let mut n = 0;
        for &a in &last {
            offset.insert(a, n);
            n += mats[a].rows() * mats[a].cols();
        }
        let mut rows: Vec<Vec<Q>> = Vec::new();
        for rel in relations {
            let (h, t) = (d.0[rel.head()], d.0[rel.tail()]);
            let mut eqs = vec![vec![q(0); n]; h * t];
            for term in rel.terms() {
                let arrows = term.path.arrows();
                let a = *arrows.last().expect("nonempty");
                let mut p = QMatrix::identity(t);
                for &b in &arrows[..arrows.len() - 1] {
                    p = mats[b].mul(&p);
                }
                // (X P)[i][j] = Σ_k X[i][k] P[k][j]
                let cols = mats[a].cols();
                for i in 0..h {
                    for j in 0..t {
                        for k in 0..cols {
                            if p[(k, j)] != q(0) {
                                eqs[i * t + j][offset[&a] + i * cols + k] += &term.coeff * &p[(k, j)];
                            }
                        }
                    }
                }
            }
            rows.extend(eqs);
        }
        let kernel = QMatrix::from_rows(rows.len(), n, rows).map(|m| m.nullspace()).unwrap_or_else(|_| {
            (0..n).map(|i| (0..n).map(|j| q(i64::from(i == j))).collect()).collect()
        });
        let mut x = vec![q(0); n];
        for v in &kernel {
            let c = q(rng.gen_range(-radius..=radius));
            for (xi, vi) in x.iter_mut().zip(v) {
                *xi += &c * vi;
            }
        }
        for (&a, &off) in &offset {
            let (r, c) = mats[a].shape();
            for i in 0..r {
                for j in 0..c {
                    mats[a][(i, j)] = x[off + i * c + j].clone();
                }
            }
        }
    }
    Representation::new(algebra.clone(), d.clone(), mats)
}

/// Sampling radius for attempt `k`: `2` for the first 40 attempts, then growing by one every 40.
fn radius_for(attempt: usize) -> i64 {
    2 + (attempt / 40) as i64
}

/// An exceptional module of dimension `r`, by seeded sampling and exact verification.
pub fn construct_exceptional(
    algebra: &Arc<BoundQuiverAlgebra>,
    r: &DimVector,
    rng: &mut ChaCha8Rng,
    budget: usize,
) -> Result<Representation> {
    let qr = tits_form(algebra, r)?;
    if qr != 1 {
        return Err(Error::ExceptionalCheck(format!("q_A({r}) = {qr}, expected 1")));
    }
    for attempt in 0..budget {
        let Ok(m) = random_module(algebra, r, radius_for(attempt), rng) else { continue };
        if is_exceptional(&m)? {
            return Ok(m);
        }
    }
    Err(Error::RetryBudgetExhausted { attempts: budget, what: format!("exceptional module of dimension {r}") })
}

/// `End = k`, `Ext¹ = 0` and, when inferable, `Ext² = 0`.
pub fn is_exceptional(m: &Representation) -> Result<bool> {
    let rep = euler_pairing_check(m, m)?;
    Ok(rep.hom == 1 && rep.ext1 == 0 && rep.inferred_ext2().unwrap_or(0) == 0)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairEntry {
    pub from: usize,
    pub to: usize,
    pub report: EulerPairingReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionResult {
    pub condition: u8,
    pub passed: bool,
    /// First failing index pair, `(i, i)` for condition 1.
    pub failing: Option<(usize, usize)>,
    pub detail: String,
}

/// Hom / Ext¹ / inferred Ext² for every ordered pair plus the three conditions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalTable {
    pub end_dims: Vec<usize>,
    pub entries: Vec<PairEntry>,
    pub conditions: Vec<ConditionResult>,
}

impl ExceptionalTable {
    pub fn passed(&self) -> bool {
        self.conditions.iter().all(|c| c.passed)
    }

    pub fn entry(&self, from: usize, to: usize) -> &EulerPairingReport {
        &self.entries.iter().find(|e| e.from == from && e.to == to).expect("entry present").report
    }
}

/// Checks (1) each `E_i` exceptional, (2) `Ext^l(E_i, E_j) = 0` for `i < j` and all `l ≥ 0`,
/// (3) `Hom(E_j, E_i) = 0` for `i < j`. Indices are zero-based.
pub fn verify_orthogonal_exceptional(sequence: &[Representation]) -> Result<ExceptionalTable> {
    let t = sequence.len();
    let mut entries = Vec::with_capacity(t * t);
    for i in 0..t {
        for j in 0..t {
            entries.push(PairEntry { from: i, to: j, report: euler_pairing_check(&sequence[i], &sequence[j])? });
        }
    }
    let get = |i: usize, j: usize| &entries[i * t + j].report;
    let end_dims: Vec<usize> = (0..t).map(|i| get(i, i).hom as usize).collect();

    let mut c1 = ConditionResult { condition: 1, passed: true, failing: None, detail: "every member is exceptional".into() };
    for i in 0..t {
        let r = get(i, i);
        let why = if r.hom != 1 {
            Some(format!("End(E{}) has dimension {}", i + 1, r.hom))
        } else if r.ext1 != 0 {
            Some(format!("Ext1(E{0},E{0}) has dimension {1}", i + 1, r.ext1))
        } else {
            match r.inferred_ext2() {
                Some(0) => None,
                Some(v) => Some(format!("Ext2(E{0},E{0}) has dimension {1}", i + 1, v)),
                None => Some("Ext2 not inferable without a global dimension bound".into()),
            }
        };
        if let Some(why) = why {
            c1 = ConditionResult { condition: 1, passed: false, failing: Some((i, i)), detail: why };
            break;
        }
    }

    let mut c2 = ConditionResult { condition: 2, passed: true, failing: None, detail: "no forward Hom or Ext".into() };
    let mut c3 = ConditionResult { condition: 3, passed: true, failing: None, detail: "no backward Hom".into() };
    'outer: for i in 0..t {
        for j in i + 1..t {
            let r = get(i, j);
            let why = if r.hom != 0 {
                Some(format!("Hom(E{},E{}) has dimension {}", i + 1, j + 1, r.hom))
            } else if r.ext1 != 0 {
                Some(format!("Ext1(E{},E{}) has dimension {}", i + 1, j + 1, r.ext1))
            } else {
                match r.inferred_ext2() {
                    Some(0) => None,
                    Some(v) => Some(format!("Ext2(E{},E{}) has dimension {}", i + 1, j + 1, v)),
                    None => Some("Ext2 not inferable without a global dimension bound".into()),
                }
            };
            if let Some(why) = why {
                c2 = ConditionResult { condition: 2, passed: false, failing: Some((i, j)), detail: why };
                break 'outer;
            }
        }
    }
    'outer3: for i in 0..t {
        for j in i + 1..t {
            let r = get(j, i);
            if r.hom != 0 {
                c3 = ConditionResult {
                    condition: 3,
                    passed: false,
                    failing: Some((j, i)),
                    detail: format!("Hom(E{},E{}) has dimension {}", j + 1, i + 1, r.hom),
                };
                break 'outer3;
            }
        }
    }
    Ok(ExceptionalTable { end_dims, entries, conditions: vec![c1, c2, c3] })
}

/// A verified orthogonal exceptional pair with a fixed cocycle basis of `Ext¹(E₂, E₁)`.
#[derive(Clone, Debug)]
pub struct ExceptionalPair {
    pub e1: Representation,
    pub e2: Representation,
    pub table: ExceptionalTable,
    pub cocycles: ExtCocycleBasis,
}

impl ExceptionalPair {
    pub fn new(e1: Representation, e2: Representation) -> Result<Self> {
        let table = verify_orthogonal_exceptional(&[e1.clone(), e2.clone()])?;
        if let Some(c) = table.conditions.iter().find(|c| !c.passed) {
            return Err(Error::ExceptionalCheck(format!("condition ({}) fails: {}", c.condition, c.detail)));
        }
        let cocycles = ext1_space(&e2, &e1)?;
        Ok(ExceptionalPair { e1, e2, table, cocycles })
    }

    pub fn algebra(&self) -> &Arc<BoundQuiverAlgebra> {
        self.e1.algebra()
    }

    /// `dim Ext¹(E₂, E₁)`, the number of arrows of `A_E`.
    pub fn ext1_backward(&self) -> usize {
        self.cocycles.dim
    }

    pub fn ext2_backward(&self) -> Option<i64> {
        self.table.entry(1, 0).inferred_ext2()
    }
}

/// `A_E` with the arrow names used for it and the identification with a generalized Kronecker quiver.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra {
    pub algebra: Arc<BoundQuiverAlgebra>,
    /// Generalized Kronecker id (`"1"` source, `"2"` sink, `a`, `b`, ...) to `A_E` id.
    pub relabel: BTreeMap<String, String>,
}

fn quotient_arrow_name(i: usize) -> String {
    match i {
        0 => "x".into(),
        1 => "y".into(),
        2 => "z".into(),
        _ => format!("g{}", i + 1),
    }
}

/// Vertices `1`, `2` and `dim Ext¹(E₂, E₁)` arrows `2 -> 1`, no relations.
pub fn build_quotient_algebra(pair: &ExceptionalPair) -> Result<QuotientAlgebra> {
    match pair.ext2_backward() {
        Some(0) => {}
        Some(v) => return Err(Error::NonzeroExt2(v)),
        None => return Err(Error::ExceptionalCheck("Ext2(E2,E1) not inferable without a global dimension bound".into())),
    }
    let m = pair.ext1_backward();
    let arrows: Vec<(String, String, String)> = (0..m).map(|i| (quotient_arrow_name(i), "2".into(), "1".into())).collect();
    let quiver = Quiver::new(["1", "2"], arrows)?;
    let mut relabel = BTreeMap::new();
    relabel.insert("1".to_string(), "2".to_string());
    relabel.insert("2".to_string(), "1".to_string());
    for i in 0..m {
        if i < 26 {
            relabel.insert(((b'a' + i as u8) as char).to_string(), quotient_arrow_name(i));
        }
    }
    Ok(QuotientAlgebra { algebra: Arc::new(BoundQuiverAlgebra::path_algebra(quiver)), relabel })
}

/// Moves a module over the generalized Kronecker quiver (source `1`) onto `A_E` (source `2`).
pub fn transport_from_kronecker(quotient: &QuotientAlgebra, m: &Representation) -> Result<Representation> {
    let kq = m.algebra().quiver();
    let target = quotient.algebra.quiver();
    if kq.vertex_count() != 2 || kq.arrow_count() != target.arrow_count() {
        return Err(Error::AlgebraMismatch);
    }
    let mut dim = vec![0; 2];
    for (v, d) in kq.vertices().iter().zip(&m.dim().0) {
        let to = quotient.relabel.get(v).ok_or_else(|| Error::UnknownVertex(v.clone()))?;
        dim[target.vertex_index(to)?] = *d;
    }
    let mut mats = vec![QMatrix::zeros(0, 0); target.arrow_count()];
    for (a, arrow) in kq.arrows().iter().enumerate() {
        let to = quotient.relabel.get(&arrow.id).ok_or_else(|| Error::UnknownArrow(arrow.id.clone()))?;
        mats[target.arrow_index(to)?] = m.matrix(a).clone();
    }
    Representation::new(quotient.algebra.clone(), DimVector(dim), mats)
}

/// `f_E(M')`: block upper-triangular matrices `[[E₁(α)⊗I, Σ_g Z_g(α)⊗M'(g)], [0, E₂(α)⊗I]]`.
pub fn lift(pair: &ExceptionalPair, quotient: &QuotientAlgebra, m: &Representation) -> Result<Representation> {
    if m.algebra().as_ref() != quotient.algebra.as_ref() {
        return Err(Error::AlgebraMismatch);
    }
    let aq = quotient.algebra.quiver();
    let (n1, n2) = (m.dim().0[aq.vertex_index("1")?], m.dim().0[aq.vertex_index("2")?]);
    let alg = pair.algebra();
    let (d1, d2) = (&pair.e1.dim().0, &pair.e2.dim().0);
    let dim = DimVector(d1.iter().zip(d2).map(|(a, b)| a * n1 + b * n2).collect());
    let (i1, i2) = (QMatrix::identity(n1), QMatrix::identity(n2));
    let mut mats = Vec::with_capacity(alg.quiver().arrow_count());
    for (a, arrow) in alg.quiver().arrows().iter().enumerate() {
        let (t, h) = (arrow.tail, arrow.head);
        let mut block = QMatrix::zeros(dim.0[h], dim.0[t]);
        block.set_block(0, 0, &pair.e1.matrix(a).kron(&i1));
        let mut corner = QMatrix::zeros(d1[h] * n1, d2[t] * n2);
        for (g, z) in pair.cocycles.basis.iter().enumerate() {
            corner = corner.add(&z[a].kron(m.matrix(g)));
        }
        block.set_block(0, d2[t] * 0 + d1[t] * n1, &corner);
        block.set_block(d1[h] * n1, d1[t] * n1, &pair.e2.matrix(a).kron(&i2));
        mats.push(block);
    }
    Representation::new(alg.clone(), dim, mats).map_err(|e| Error::LiftInvalid(e.to_string()))
}

/// Everything `find_orthogonal_pair` computed on the way.
#[derive(Clone, Debug)]
pub struct PairConstruction {
    pub h: DimVector,
    pub theta_h: Weight,
    pub cone: EffCone,
    pub facet_index: usize,
    pub theta0: Weight,
    pub stable_pair: StablePair,
    pub pair: ExceptionalPair,
    pub quotient: QuotientAlgebra,
}

impl PairConstruction {
    pub fn to_json(&self) -> serde_json::Value {
        let alg = self.pair.algebra();
        let quiver = alg.quiver();
        serde_json::json!({
            "schema_version": crate::SCHEMA_VERSION,
            "h": self.h.to_map(quiver),
            "theta_h": self.theta_h.to_strings(),
            "facet_index": self.facet_index,
            "theta0": self.theta0.to_strings(),
            "stable_pair": self.stable_pair.to_json(alg),
            "e1": self.pair.e1.to_json(),
            "e2": self.pair.e2.to_json(),
            "table": self.pair.table,
            "ext1_backward": self.pair.ext1_backward(),
            "quotient": self.quotient.algebra.to_json(),
            "relabel": self.quotient.relabel,
        })
    }
}

/// Reads `e1` and `e2` from a pair document and re-certifies them.
pub fn pair_from_json(algebra: &Arc<BoundQuiverAlgebra>, doc: &serde_json::Value) -> Result<ExceptionalPair> {
    let module = |key: &str| -> Result<Representation> {
        let v = doc.get(key).ok_or_else(|| Error::Parse(format!("pair document has no {key:?}")))?;
        let wire: crate::rep::RepresentationJson = serde_json::from_value(v.clone())?;
        Representation::from_raw(algebra.clone(), &wire.into_raw()?)
    };
    ExceptionalPair::new(module("e1")?, module("e2")?)
}

const EXCEPTIONAL_BUDGET: usize = 400;
const WITNESS_BUDGET: usize = 20;

/// Isotropic root, Eff cone, a facet with its stable pair, exceptional modules
/// ordered by the sign of `θ_h`, and all certificates.
pub fn find_orthogonal_pair(algebra: &Arc<BoundQuiverAlgebra>, seed: u64) -> Result<PairConstruction> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h = find_isotropic_root(algebra).map_err(Error::at_stage("isotropic-root"))?;
    let theta_h = defect_weight(algebra, &h).map_err(Error::at_stage("defect-weight"))?;
    let n = algebra.vertex_count();

    let cone = if algebra.is_hereditary() {
        effective_cone(algebra, &h).map_err(Error::at_stage("eff-cone"))?
    } else {
        witness_cone(algebra, &h, &mut rng).map_err(Error::at_stage("eff-cone"))?
    };
    if cone.dimension + 1 != n {
        return Err(Error::DegenerateFacet(format!("Eff cone has dimension {}, expected {}", cone.dimension, n - 1)))
            .map_err(Error::at_stage("eff-cone"));
    }

    // First facet whose stable pair spans it and is separated by the sign of θ_h.
    let mut found = None;
    let mut regular = None;
    for (idx, facet) in cone.facets.iter().enumerate() {
        let Ok(theta0) = facet_interior_weight(&cone, facet) else { continue };
        let Ok(sp) = facet_stable_pair(algebra, &h, &theta0) else { continue };
        if !facet_matches_pair(&cone, facet, &sp) {
            continue;
        }
        let order = match (sign(&theta_h.eval(&sp.h1)), sign(&theta_h.eval(&sp.h2))) {
            (-1, 1) => Some((sp.h1.clone(), sp.h2.clone())),
            (1, -1) => Some((sp.h2.clone(), sp.h1.clone())),
            _ => None,
        };
        match order {
            Some(o) => {
                found = Some((idx, theta0, sp, o));
                break;
            }
            None => {
                regular.get_or_insert((sp.h1, sp.h2));
            }
        }
    }
    let (facet_index, theta0, stable_pair, (r1, r2)) = match (found, regular) {
        (Some(f), _) => f,
        (None, Some((a, b))) => {
            return Err(Error::ExceptionalCheck(format!("θ_h does not separate {a} and {b} on any facet")))
                .map_err(Error::at_stage("ordering"))
        }
        (None, None) => {
            return Err(Error::NoStablePair("no facet of the Eff cone carries a stable pair".into()))
                .map_err(Error::at_stage("facet"))
        }
    };
    let e1 = construct_exceptional(algebra, &r1, &mut rng, EXCEPTIONAL_BUDGET).map_err(Error::at_stage("exceptional"))?;
    let e2 = construct_exceptional(algebra, &r2, &mut rng, EXCEPTIONAL_BUDGET).map_err(Error::at_stage("exceptional"))?;
    let pair = ExceptionalPair::new(e1, e2).map_err(Error::at_stage("certificates"))?;
    if pair.ext1_backward() != 2 {
        return Err(Error::ExceptionalCheck(format!("dim Ext1(E2,E1) = {}, expected 2", pair.ext1_backward())))
            .map_err(Error::at_stage("certificates"));
    }
    let quotient = build_quotient_algebra(&pair).map_err(Error::at_stage("quotient-algebra"))?;
    Ok(PairConstruction { h, theta_h, cone, facet_index, theta0, stable_pair, pair, quotient })
}

/// Eff cone from the subrepresentations of a sampled module; resampled until the
/// cone reaches the dimension a `θ_h`-stable generic module forces.
fn witness_cone(algebra: &Arc<BoundQuiverAlgebra>, h: &DimVector, rng: &mut ChaCha8Rng) -> Result<EffCone> {
    let cfg = StabilityConfig::default();
    let n = algebra.vertex_count();
    let mut best = None;
    for attempt in 0..WITNESS_BUDGET {
        let Ok(m) = random_module(algebra, h, radius_for(attempt * 10), rng) else { continue };
        let cone = effective_cone_from_witness(&m, &cfg)?;
        if cone.dimension + 1 == n {
            return Ok(cone);
        }
        best.get_or_insert(cone);
    }
    best.ok_or_else(|| Error::RetryBudgetExhausted { attempts: WITNESS_BUDGET, what: format!("module of dimension {h}") })
}

/// `end_dim` is preserved by the lift on the given modules.
pub fn end_dims_agree(pair: &ExceptionalPair, quotient: &QuotientAlgebra, m: &Representation) -> Result<bool> {
    Ok(end_dim(&lift(pair, quotient, m)?) == end_dim(m))
}
