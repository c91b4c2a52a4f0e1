//! End-to-end construction of a module whose orbit closure inherits the
//! singularities of Zwara's Kronecker module, and an independent re-verifier.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::catalog;
use crate::dimvec::{DimVector, Weight};
use crate::error::{Error, Result};
use crate::exceptional::{
    build_quotient_algebra, find_orthogonal_pair, lift, random_module, transport_from_kronecker, ExceptionalPair,
    ExceptionalTable, QuotientAlgebra,
};
use crate::forms::{defect_weight, find_isotropic_root, tits_form};
use crate::homology::{end_dim, ext1_dim, hom_dim, orbit_dimension, Cochain};
use crate::linalg::{format_q, sign, QMatrix};
use crate::quiver::{AlgebraJson, BoundQuiverAlgebra};
use crate::rep::{Representation, RepresentationJson};
use crate::SCHEMA_VERSION;

/// Zwara's module over `K2`: `M(a)` is the nilpotent shift, `M(b) = diag(1, 0, 1)`.
pub fn zwara_module() -> Representation {
    let k2 = catalog::kronecker();
    let a = QMatrix::from_i64(3, 3, &[0, 0, 0, 1, 0, 0, 0, 1, 0]);
    let b = QMatrix::from_i64(3, 3, &[1, 0, 0, 0, 0, 0, 0, 0, 1]);
    let ia = k2.quiver().arrow_index("a").expect("arrow a");
    let mut mats = vec![QMatrix::zeros(3, 3); 2];
    mats[ia] = a;
    mats[1 - ia] = b;
    Representation::new(k2, DimVector(vec![3, 3]), mats).expect("Zwara's module is valid")
}

/// Two vertices, two parallel arrows, no relations.
fn is_kronecker(algebra: &BoundQuiverAlgebra) -> bool {
    let q = algebra.quiver();
    q.vertex_count() == 2
        && q.arrow_count() == 2
        && algebra.relations().is_empty()
        && q.arrows()[0].tail == q.arrows()[1].tail
        && q.arrows()[0].head == q.arrows()[1].head
        && q.arrows()[0].tail != q.arrows()[0].head
}

/// Zwara's matrices on a relabelled Kronecker quiver, arrows in canonical order.
fn zwara_on(algebra: &Arc<BoundQuiverAlgebra>) -> Result<Representation> {
    let z = zwara_module();
    Representation::new(algebra.clone(), DimVector(vec![3, 3]), z.matrices().to_vec())
}

fn matrix_strings(m: &QMatrix) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| r.iter().map(format_q).collect()).collect()
}

fn cochain_json(algebra: &BoundQuiverAlgebra, z: &Cochain) -> BTreeMap<String, Vec<Vec<String>>> {
    algebra.quiver().arrows().iter().zip(z).map(|(a, m)| (a.id.clone(), matrix_strings(m))).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Certificate {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Certificate { name: name.into(), passed, detail: detail.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacetRecord {
    pub index: usize,
    pub rays: Vec<Vec<String>>,
    pub theta0: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StablePairRecord {
    pub h1: BTreeMap<String, usize>,
    pub h2: BTreeMap<String, usize>,
    pub n1: usize,
    pub n2: usize,
    pub l: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairRecord {
    pub e1: RepresentationJson,
    pub e2: RepresentationJson,
    pub table: ExceptionalTable,
    /// Basis of `Ext¹(E2, E1)` as cocycles `E2(ta) -> E1(ha)`.
    pub cocycles: Vec<BTreeMap<String, Vec<Vec<String>>>>,
    pub quotient: AlgebraJson,
    pub relabel: BTreeMap<String, String>,
    pub theta_h_values: [String; 2],
}

/// Hom and Ext¹ before and after lifting a pair of `A_E`-modules.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpotCheck {
    pub m: RepresentationJson,
    pub n: RepresentationJson,
    pub hom: usize,
    pub hom_lifted: usize,
    pub ext1: usize,
    pub ext1_lifted: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Invariants {
    pub end_dim: usize,
    pub end_dim_zwara: usize,
    pub gl_dimension: usize,
    pub orbit_dimension: usize,
    pub rep_dimension: usize,
    pub ext1_self: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CitedConclusion {
    pub claim: String,
    pub status: String,
}

/// The pair `(d, M)` with everything needed to re-check it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BadOrbitInstance {
    pub schema_version: u32,
    pub seed: u64,
    /// `"kronecker"` when the input is `K2` itself, `"exceptional-pair"` otherwise.
    pub route: String,
    pub algebra: AlgebraJson,
    pub assumptions: Vec<String>,
    pub h: BTreeMap<String, usize>,
    pub theta_h: Vec<String>,
    pub facet: Option<FacetRecord>,
    pub stable_pair: Option<StablePairRecord>,
    pub pair: Option<PairRecord>,
    pub zwara: RepresentationJson,
    pub zwara_transported: Option<RepresentationJson>,
    pub d: BTreeMap<String, usize>,
    pub module: RepresentationJson,
    pub invariants: Invariants,
    pub spot_checks: Vec<SpotCheck>,
    pub certificates: Vec<Certificate>,
    pub cited_conclusions: Vec<CitedConclusion>,
}

impl BadOrbitInstance {
    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance serializes")
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let inst: BadOrbitInstance = serde_json::from_str(text)?;
        if inst.schema_version != SCHEMA_VERSION {
            return Err(Error::Parse(format!("unsupported schema_version {}", inst.schema_version)));
        }
        Ok(inst)
    }
}

fn cited() -> Vec<CitedConclusion> {
    vec![
        CitedConclusion {
            claim: "the orbit closure of Zwara's module in mod(K2,(3,3)) is neither unibranch nor Cohen-Macaulay".into(),
            status: "cited theorem, not computed".into(),
        },
        CitedConclusion {
            claim: "f_E transfers unibranch and Cohen-Macaulay failures of orbit closures from A_E to A".into(),
            status: "cited theorem, not computed".into(),
        },
        CitedConclusion {
            claim: "hence the orbit closure of `module` in mod(A,d) is neither unibranch nor Cohen-Macaulay".into(),
            status: "conclusion from the two citations and the certificates above".into(),
        },
    ]
}

fn invariants(m: &Representation, zwara: &Representation) -> Result<Invariants> {
    let alg = m.algebra();
    let d = &m.dim().0;
    let rep_dimension = alg.quiver().arrows().iter().map(|a| d[a.tail] * d[a.head]).sum();
    Ok(Invariants {
        end_dim: end_dim(m),
        end_dim_zwara: end_dim(zwara),
        gl_dimension: d.iter().map(|x| x * x).sum(),
        orbit_dimension: orbit_dimension(m),
        rep_dimension,
        ext1_self: ext1_dim(m, m)?,
    })
}

const SPOT_DIMS: [[usize; 2]; 3] = [[1, 1], [1, 2], [2, 1]];

fn spot_checks(pair: &ExceptionalPair, quotient: &QuotientAlgebra, seed: u64) -> Result<Vec<SpotCheck>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5f0c_4e11);
    let mods = SPOT_DIMS
        .iter()
        .map(|d| random_module(&quotient.algebra, &DimVector(d.to_vec()), 2, &mut rng))
        .collect::<Result<Vec<_>>>()?;
    let lifted = mods.iter().map(|m| lift(pair, quotient, m)).collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    for (m, lm) in mods.iter().zip(&lifted) {
        for (n, ln) in mods.iter().zip(&lifted) {
            out.push(SpotCheck {
                m: m.to_json(),
                n: n.to_json(),
                hom: hom_dim(m, n)?,
                hom_lifted: hom_dim(lm, ln)?,
                ext1: ext1_dim(m, n)?,
                ext1_lifted: ext1_dim(lm, ln)?,
            });
        }
    }
    Ok(out)
}

/// Runs the whole construction for `A` and attaches the certificates of the verifier.
pub fn build_bad_orbit_instance(algebra: &Arc<BoundQuiverAlgebra>, seed: u64) -> Result<BadOrbitInstance> {
    let quiver = algebra.quiver();
    let zwara = zwara_module();
    let mut assumptions = algebra.assumptions();
    assumptions.push("A is tame hereditary or tame concealed (supplied by the user, not checked)".into());

    let mut inst = if is_kronecker(algebra) {
        let h = find_isotropic_root(algebra).map_err(Error::at_stage("isotropic-root"))?;
        let theta_h = defect_weight(algebra, &h).map_err(Error::at_stage("defect-weight"))?;
        let m = zwara_on(algebra)?;
        BadOrbitInstance {
            schema_version: SCHEMA_VERSION,
            seed,
            route: "kronecker".into(),
            algebra: algebra.to_json(),
            assumptions,
            h: h.to_map(quiver),
            theta_h: theta_h.to_strings(),
            facet: None,
            stable_pair: None,
            pair: None,
            zwara: zwara.to_json(),
            zwara_transported: None,
            d: m.dim().to_map(quiver),
            module: m.to_json(),
            invariants: invariants(&m, &zwara)?,
            spot_checks: Vec::new(),
            certificates: Vec::new(),
            cited_conclusions: cited(),
        }
    } else {
        let pc = find_orthogonal_pair(algebra, seed)?;
        assumptions.push("mod(A,h) is irreducible".into());
        let transported = transport_from_kronecker(&pc.quotient, &zwara).map_err(Error::at_stage("transport"))?;
        let m = lift(&pc.pair, &pc.quotient, &transported).map_err(Error::at_stage("lift"))?;
        let facet = &pc.cone.facets[pc.facet_index];
        let sp = &pc.stable_pair;
        BadOrbitInstance {
            schema_version: SCHEMA_VERSION,
            seed,
            route: "exceptional-pair".into(),
            algebra: algebra.to_json(),
            assumptions,
            h: pc.h.to_map(quiver),
            theta_h: pc.theta_h.to_strings(),
            facet: Some(FacetRecord {
                index: pc.facet_index,
                rays: facet.rays.iter().map(|&r| pc.cone.rays[r].to_strings()).collect(),
                theta0: pc.theta0.to_strings(),
            }),
            stable_pair: Some(StablePairRecord {
                h1: sp.h1.to_map(quiver),
                h2: sp.h2.to_map(quiver),
                n1: sp.n1,
                n2: sp.n2,
                l: sp.l,
            }),
            pair: Some(PairRecord {
                e1: pc.pair.e1.to_json(),
                e2: pc.pair.e2.to_json(),
                table: pc.pair.table.clone(),
                cocycles: pc.pair.cocycles.basis.iter().map(|z| cochain_json(algebra, z)).collect(),
                quotient: pc.quotient.algebra.to_json(),
                relabel: pc.quotient.relabel.clone(),
                theta_h_values: [
                    format_q(&pc.theta_h.eval(pc.pair.e1.dim())),
                    format_q(&pc.theta_h.eval(pc.pair.e2.dim())),
                ],
            }),
            zwara: zwara.to_json(),
            zwara_transported: Some(transported.to_json()),
            d: m.dim().to_map(quiver),
            module: m.to_json(),
            invariants: invariants(&m, &zwara)?,
            spot_checks: spot_checks(&pc.pair, &pc.quotient, seed).map_err(Error::at_stage("spot-checks"))?,
            certificates: Vec::new(),
            cited_conclusions: cited(),
        }
    };
    let report = verify_instance(&inst)?;
    inst.certificates = report.checks;
    Ok(inst)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub schema_version: u32,
    pub passed: bool,
    pub checks: Vec<Certificate>,
}

impl VerifyReport {
    pub fn failures(&self) -> impl Iterator<Item = &Certificate> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn parse_module(algebra: &Arc<BoundQuiverAlgebra>, json: &RepresentationJson) -> std::result::Result<Representation, String> {
    json.clone().into_raw().and_then(|raw| Representation::from_raw(algebra.clone(), &raw)).map_err(|e| e.to_string())
}

/// Re-runs every certificate from the stored data only.
///
/// Returns `Err` when the algebra itself cannot be read; any other problem is a failed check.
pub fn verify_instance(inst: &BadOrbitInstance) -> Result<VerifyReport> {
    let algebra = Arc::new(inst.algebra.clone().into_algebra()?);
    let quiver = algebra.quiver();
    let mut checks = Vec::new();
    let mut push = |name: &str, ok: bool, detail: String| checks.push(Certificate::new(name, ok, detail));

    let zwara = zwara_module();
    push("zwara-fixture", inst.zwara == zwara.to_json(), "stored Zwara module matches the fixed matrices".into());

    let module = match parse_module(&algebra, &inst.module) {
        Ok(m) => {
            push("module-valid", true, "matrices satisfy shapes and relations".into());
            Some(m)
        }
        Err(e) => {
            push("module-valid", false, e);
            None
        }
    };
    let d = DimVector::from_map(quiver, &inst.d).ok();
    push(
        "dimension-recorded",
        module.as_ref().zip(d.as_ref()).is_some_and(|(m, d)| m.dim() == d),
        "stored d equals the dimension of the module".into(),
    );

    // Isotropic root and defect.
    let h = find_isotropic_root(&algebra).ok();
    let stored_h = DimVector::from_map(quiver, &inst.h).ok();
    push(
        "isotropic-root",
        h.is_some() && h == stored_h,
        format!("recomputed h = {}", h.as_ref().map_or("none".into(), |h| h.to_string())),
    );
    let theta_h = h.as_ref().and_then(|h| defect_weight(&algebra, h).ok());
    push(
        "defect-weight",
        theta_h.as_ref().is_some_and(|t| t.to_strings() == inst.theta_h),
        "stored θ_h equals ⟨h,-⟩".into(),
    );
    if let (Some(h), Some(d)) = (&h, &d) {
        let ok = h.0.iter().zip(&d.0).all(|(hi, di)| *hi == 0 || *di > 0);
        push("support", ok, "d is positive wherever h is".into());
    }

    match inst.route.as_str() {
        "kronecker" => {
            let ok = is_kronecker(&algebra);
            push("kronecker-route", ok, "algebra is the Kronecker quiver".into());
            if ok {
                let z = zwara_on(&algebra).ok();
                let same = module.as_ref().zip(z.as_ref()).is_some_and(|(m, z)| m.matrices() == z.matrices());
                push("lift-recompute", same, "module is Zwara's module".into());
            }
        }
        "exceptional-pair" => verify_pair_route(inst, &algebra, theta_h.as_ref(), module.as_ref(), &mut push),
        other => push("route", false, format!("unknown route {other:?}")),
    }

    if let Some(m) = &module {
        let inv = invariants(m, &zwara)?;
        push(
            "end-dim-preserved",
            inv.end_dim == inv.end_dim_zwara,
            format!("dim End(M) = {}, dim End(Zwara) = {}", inv.end_dim, inv.end_dim_zwara),
        );
        push(
            "orbit-stabilizer",
            inv.orbit_dimension + inv.end_dim == inv.gl_dimension,
            format!("orbit {} + End {} = dim GL(d) {}", inv.orbit_dimension, inv.end_dim, inv.gl_dimension),
        );
        if algebra.is_hereditary() {
            push(
                "orbit-codimension",
                inv.rep_dimension - inv.orbit_dimension == inv.ext1_self,
                format!(
                    "codim of the orbit {} = dim Ext1(M,M) {}",
                    inv.rep_dimension - inv.orbit_dimension,
                    inv.ext1_self
                ),
            );
        }
        push("invariants-recorded", inv == inst.invariants, "stored invariants match".into());
    }

    let passed = checks.iter().all(|c| c.passed);
    Ok(VerifyReport { schema_version: SCHEMA_VERSION, passed, checks })
}

fn verify_pair_route(
    inst: &BadOrbitInstance,
    algebra: &Arc<BoundQuiverAlgebra>,
    theta_h: Option<&Weight>,
    module: Option<&Representation>,
    push: &mut impl FnMut(&str, bool, String),
) {
    let quiver = algebra.quiver();
    let Some(rec) = &inst.pair else {
        push("pair-present", false, "no exceptional pair stored".into());
        return;
    };
    let (e1, e2) = match (parse_module(algebra, &rec.e1), parse_module(algebra, &rec.e2)) {
        (Ok(a), Ok(b)) => (a, b),
        (a, b) => {
            let why = [a.err(), b.err()].into_iter().flatten().collect::<Vec<_>>().join("; ");
            push("pair-valid", false, why);
            return;
        }
    };

    // Sign test on θ_h: E1 on the preprojective side, E2 on the preinjective side.
    if let Some(t) = theta_h {
        let (s1, s2) = (t.eval(e1.dim()), t.eval(e2.dim()));
        push(
            "theta-h-sign",
            sign(&s1) < 0 && sign(&s2) > 0,
            format!("θ_h(dim E1) = {}, θ_h(dim E2) = {}", format_q(&s1), format_q(&s2)),
        );
    }

    if let Some(sp) = &inst.stable_pair {
        let h1 = DimVector::from_map(quiver, &sp.h1).ok();
        let h2 = DimVector::from_map(quiver, &sp.h2).ok();
        let dims = [e1.dim().clone(), e2.dim().clone()];
        let arith = match (&h1, &h2) {
            (Some(h1), Some(h2)) => {
                let h = DimVector::from_map(quiver, &inst.h).ok();
                let q1 = tits_form(algebra, h1).ok();
                let q2 = tits_form(algebra, h2).ok();
                sp.n1 == 1
                    && sp.n2 == 1
                    && sp.l == 2
                    && q1 == Some(1)
                    && q2 == Some(1)
                    && h == Some(h1.add(h2))
                    && ((dims[0] == *h1 && dims[1] == *h2) || (dims[0] == *h2 && dims[1] == *h1))
            }
            _ => false,
        };
        push("stable-pair-arithmetic", arith, "n1 = n2 = 1, l = 2, q(h1) = q(h2) = 1, h = h1 + h2".into());
    } else {
        push("stable-pair-arithmetic", false, "no stable pair stored".into());
    }

    let pair = match ExceptionalPair::new(e1.clone(), e2.clone()) {
        Ok(p) => {
            push("pair-conditions", true, "E1, E2 exceptional, no forward Hom/Ext, no backward Hom".into());
            p
        }
        Err(e) => {
            push("pair-conditions", false, e.to_string());
            return;
        }
    };
    push("pair-table-recorded", pair.table == rec.table, "stored Hom/Ext table matches".into());
    push(
        "ext1-backward",
        pair.ext1_backward() == 2,
        format!("dim Ext1(E2,E1) = {}", pair.ext1_backward()),
    );
    push(
        "ext2-backward",
        pair.ext2_backward() == Some(0),
        format!("inferred Ext2(E2,E1) = {:?}", pair.ext2_backward()),
    );
    let cocycles: Vec<_> = pair.cocycles.basis.iter().map(|z| cochain_json(algebra, z)).collect();
    push("cocycles-recorded", cocycles == rec.cocycles, "stored cocycle basis is the canonical one".into());

    let quotient = match build_quotient_algebra(&pair) {
        Ok(q) => q,
        Err(e) => {
            push("quotient-algebra", false, e.to_string());
            return;
        }
    };
    push(
        "quotient-recorded",
        quotient.algebra.to_json() == rec.quotient && quotient.relabel == rec.relabel,
        "A_E has two vertices and two arrows 2 -> 1".into(),
    );
    let lifted = transport_from_kronecker(&quotient, &zwara_module()).and_then(|t| {
        let same = inst.zwara_transported.as_ref() == Some(&t.to_json());
        push("transport-recorded", same, "Zwara's module moved onto A_E".into());
        lift(&pair, &quotient, &t)
    });
    match lifted {
        Ok(l) => {
            let same = module.is_some_and(|m| m.dim() == l.dim() && m.matrices() == l.matrices());
            push("lift-recompute", same, "module equals f_E(Zwara)".into());
            let expect = e1.dim().scale(3).add(&e2.dim().scale(3));
            push("dimension-identity", l.dim() == &expect, format!("d = 3 dim E1 + 3 dim E2 = {expect}"));
            for (i, s) in inst.spot_checks.iter().enumerate() {
                let ok = (|| -> Result<bool> {
                    let m = Representation::from_raw(quotient.algebra.clone(), &s.m.clone().into_raw()?)?;
                    let n = Representation::from_raw(quotient.algebra.clone(), &s.n.clone().into_raw()?)?;
                    let (lm, ln) = (lift(&pair, &quotient, &m)?, lift(&pair, &quotient, &n)?);
                    let hom = (hom_dim(&m, &n)?, hom_dim(&lm, &ln)?);
                    let ext = (ext1_dim(&m, &n)?, ext1_dim(&lm, &ln)?);
                    Ok(hom.0 == hom.1
                        && ext.0 == ext.1
                        && (hom.0, hom.1, ext.0, ext.1) == (s.hom, s.hom_lifted, s.ext1, s.ext1_lifted))
                })()
                .unwrap_or(false);
                push(&format!("hom-fidelity-{i}"), ok, format!("Hom/Ext1 preserved on spot pair {i}"));
            }
        }
        Err(e) => push("lift-recompute", false, e.to_string()),
    }
}
