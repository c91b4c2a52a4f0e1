//! Acceptance suite: one line per criterion, nonzero exit if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use quiverforge::exceptional::{find_orthogonal_pair, lift, random_module, transport_from_kronecker};
use quiverforge::forms::{defect_weight, euler_form, find_isotropic_root, tits_form};
use quiverforge::genericrep::effective_cone;
use quiverforge::homology::{end_dim, euler_pairing_check, ext1_dim, hom_dim};
use quiverforge::linalg::{q, sign};
use quiverforge::pipeline::{zwara_module, BadOrbitInstance};
use quiverforge::stability::{backend_a, backend_b, is_semistable, is_stable, StabilityConfig, StabilityStatus};
use quiverforge::{catalog, BoundQuiverAlgebra, DimVector, QMatrix, Representation, Weight};

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn dv(v: &[usize]) -> DimVector {
    DimVector(v.to_vec())
}

fn zwara_fixture() -> Check {
    let m = zwara_module();
    let a = m.matrix_by_id("a").map_err(|e| e.to_string())?;
    let b = m.matrix_by_id("b").map_err(|e| e.to_string())?;
    for i in 1..=3 {
        for j in 1..=3 {
            let one = (i, j) == (2, 1) || (i, j) == (3, 2);
            ensure!(a[(i - 1, j - 1)] == q(i64::from(one)), "M(a) entry ({i},{j})");
        }
    }
    ensure!(*b == QMatrix::from_i64(3, 3, &[1, 0, 0, 0, 0, 0, 0, 0, 1]), "M(b) is not diag(1,0,1)");
    ensure!(m.dim() == &dv(&[3, 3]), "dimension");
    ensure!(m.check().is_ok(), "does not validate over K2");
    let text = serde_json::to_string(&m.to_json()).unwrap();
    let back = Representation::from_json(catalog::kronecker(), &text).map_err(|e| e.to_string())?;
    ensure!(back.matrices() == m.matrices(), "JSON round trip changed the matrices");
    Ok("matrices bit-exact, validates over K2".into())
}

fn random_dims(rng: &mut ChaCha8Rng, n: usize, max: usize) -> DimVector {
    DimVector((0..n).map(|_| rng.gen_range(0..=max)).collect())
}

fn form_identities() -> Check {
    let mut total = 0;
    for (name, a, max) in [("K2", catalog::kronecker(), 3), ("D4~", catalog::dtilde4_subspace(), 2)] {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for _ in 0..20 {
            let (d, e) = (random_dims(&mut rng, a.vertex_count(), max), random_dims(&mut rng, a.vertex_count(), max));
            let m = random_module(&a, &d, 2, &mut rng).map_err(|e| e.to_string())?;
            let n = random_module(&a, &e, 2, &mut rng).map_err(|e| e.to_string())?;
            let r = euler_pairing_check(&m, &n).map_err(|e| e.to_string())?;
            let form = euler_form(&a, &d, &e).map_err(|e| e.to_string())?;
            ensure!(form == r.hom - r.ext1, "{name}: <{d},{e}> = {form} but hom - ext1 = {}", r.hom - r.ext1);
            ensure!(r.inferred_ext2() == Some(0), "{name}: inferred ext2 {:?}", r.inferred_ext2());
            total += 1;
        }
    }
    Ok(format!("{total} pairs, exact equality"))
}

fn isotropic_roots() -> Check {
    for (name, a, want) in
        [("K2", catalog::kronecker(), dv(&[1, 1])), ("D4~", catalog::dtilde4_subspace(), dv(&[2, 1, 1, 1, 1]))]
    {
        let h = find_isotropic_root(&a).map_err(|e| e.to_string())?;
        ensure!(h == want, "{name}: got {h}");
        ensure!(tits_form(&a, &h).map_err(|e| e.to_string())? == 0, "{name}: q(h) != 0");
        ensure!(h.is_indivisible(), "{name}: h divisible");
    }
    for (name, a) in [("A3", catalog::dynkin_a(3)), ("D4", catalog::dynkin_d4())] {
        ensure!(find_isotropic_root(&a).is_err(), "{name}: Dynkin input produced a root");
    }
    Ok("K2 -> (1,1), D4~ -> (2;1,1,1,1), Dynkin rejected".into())
}

fn lemma_stable_module() -> Check {
    let cfg = StabilityConfig { cross_check: true, ..StabilityConfig::default() };
    let mut found = Vec::new();
    for (name, a) in [("K2", catalog::kronecker()), ("D4~", catalog::dtilde4_subspace())] {
        let h = find_isotropic_root(&a).map_err(|e| e.to_string())?;
        let theta = defect_weight(&a, &h).map_err(|e| e.to_string())?;
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        let mut ok = false;
        for _ in 0..5 {
            let m = random_module(&a, &h, 3, &mut rng).map_err(|e| e.to_string())?;
            let v = is_stable(&m, &theta, &cfg).map_err(|e| format!("{name}: {e}"))?;
            if v.status == StabilityStatus::Stable {
                ok = true;
                break;
            }
        }
        ensure!(ok, "{name}: no θ_h-stable module of dimension {h} among the samples");
        found.push(name);
    }
    Ok(format!("θ_h-stable module of dimension h found for {}", found.join(", ")))
}

fn eff_cones() -> Check {
    let k2 = catalog::kronecker();
    let cone = effective_cone(&k2, &dv(&[3, 3])).map_err(|e| e.to_string())?;
    ensure!(cone.rays == vec![Weight::from_ints(&[1, -1])] && cone.lineality.is_empty(), "K2 rays {:?}", cone.rays);
    // Brute force over all e ≤ (3,3) admitting subrepresentations of a generic module (e1 ≤ e2).
    for t1 in -5i64..=5 {
        for t2 in -5i64..=5 {
            let brute = t1 + t2 == 0 && (0..=3i64).all(|e1| (e1..=3).all(|e2| t1 * e1 + t2 * e2 <= 0));
            ensure!(cone.contains(&Weight::from_ints(&[t1, t2])) == brute, "K2 cone disagrees at ({t1},{t2})");
        }
    }
    let d4 = catalog::dtilde4_subspace();
    let cone = effective_cone(&d4, &dv(&[2, 1, 1, 1, 1])).map_err(|e| e.to_string())?;
    ensure!(cone.dimension == 4, "dim Eff(D4~,h) = {}", cone.dimension);
    Ok(format!("K2 ray (1,-1); dim Eff(D4~,h) = 4 with {} facets", cone.facets.len()))
}

fn pair_arithmetic() -> Check {
    let mut lines = Vec::new();
    for (name, a) in [("D4~", catalog::dtilde4_subspace()), ("A2~", catalog::atilde2())] {
        let pc = find_orthogonal_pair(&a, 7).map_err(|e| format!("{name}: {e}"))?;
        let sp = &pc.stable_pair;
        ensure!((sp.n1, sp.n2, sp.l) == (1, 1, 2), "{name}: n1, n2, l = {}, {}, {}", sp.n1, sp.n2, sp.l);
        let (e1, e2) = (&pc.pair.e1, &pc.pair.e2);
        let q1 = tits_form(&a, e1.dim()).map_err(|e| e.to_string())?;
        let q2 = tits_form(&a, e2.dim()).map_err(|e| e.to_string())?;
        ensure!(q1 == 1 && q2 == 1, "{name}: q(h1) = {q1}, q(h2) = {q2}");
        let back = euler_pairing_check(e2, e1).map_err(|e| e.to_string())?;
        ensure!(back.ext1 == 2, "{name}: dim Ext1(E2,E1) = {}", back.ext1);
        ensure!(back.inferred_ext2() == Some(0), "{name}: Ext2(E2,E1) = {:?}", back.inferred_ext2());
        ensure!(back.hom == 0, "{name}: Hom(E2,E1) = {}", back.hom);
        let fwd = euler_pairing_check(e1, e2).map_err(|e| e.to_string())?;
        ensure!(
            fwd.hom == 0 && fwd.ext1 == 0 && fwd.inferred_ext2() == Some(0),
            "{name}: forward hom {} ext1 {} ext2 {:?}",
            fwd.hom,
            fwd.ext1,
            fwd.inferred_ext2()
        );
        let (t1, t2) = (pc.theta_h.eval(e1.dim()), pc.theta_h.eval(e2.dim()));
        ensure!(sign(&t1) < 0 && sign(&t2) > 0, "{name}: θ_h signs {t1} {t2}");
        ensure!(pc.quotient.algebra.quiver().arrow_count() == 2, "{name}: A_E is not K2");
        lines.push(format!("{name} h1 = {} h2 = {}", e1.dim(), e2.dim()));
    }
    Ok(lines.join("; "))
}

fn lift_fidelity() -> Check {
    let a = catalog::dtilde4_subspace();
    let pc = find_orthogonal_pair(&a, 7).map_err(|e| e.to_string())?;
    let k2 = catalog::kronecker();
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut mods = Vec::new();
    while mods.len() < 10 {
        let d = random_dims(&mut rng, 2, 3);
        let m = random_module(&k2, &d, 2, &mut rng).map_err(|e| e.to_string())?;
        mods.push(transport_from_kronecker(&pc.quotient, &m).map_err(|e| e.to_string())?);
    }
    let lifted = mods.iter().map(|m| lift(&pc.pair, &pc.quotient, m)).collect::<Result<Vec<_>, _>>().map_err(|e| e.to_string())?;
    for (i, (m, lm)) in mods.iter().zip(&lifted).enumerate() {
        ensure!(lm.check().is_ok(), "lift {i} does not validate");
        for (j, (n, ln)) in mods.iter().zip(&lifted).enumerate() {
            let (h, hl) = (hom_dim(m, n).unwrap(), hom_dim(lm, ln).unwrap());
            let (x, xl) = (ext1_dim(m, n).unwrap(), ext1_dim(lm, ln).unwrap());
            ensure!(h == hl && x == xl, "pair ({i},{j}): hom {h} -> {hl}, ext1 {x} -> {xl}");
        }
    }
    let z = transport_from_kronecker(&pc.quotient, &zwara_module()).map_err(|e| e.to_string())?;
    let lz = lift(&pc.pair, &pc.quotient, &z).map_err(|e| e.to_string())?;
    let (ez, elz) = (end_dim(&zwara_module()), end_dim(&lz));
    ensure!(ez == elz && ez == common::zwara_end_oracle(), "End(Zwara) = {ez}, End(lift) = {elz}");
    Ok(format!("100 ordered pairs preserved; End(lift(Zwara)) = End(Zwara) = {ez}"))
}

fn run_cli(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_quiverforge")).args(args).output().expect("binary runs")
}

fn theorem_instances() -> Check {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    let dir = tempfile::TempDir::new().map_err(|e| e.to_string())?;
    let mut lines = Vec::new();
    for (file, expect) in [("dtilde4.json", Some(vec![6, 3, 3, 3, 3])), ("atilde2.json", None)] {
        let alg = data.join(file);
        let mut texts = Vec::new();
        for run in 0..2 {
            let out = dir.path().join(format!("{file}.{run}"));
            let o = run_cli(&["theorem11", alg.to_str().unwrap(), "--seed", "7", "-o", out.to_str().unwrap()]);
            ensure!(o.status.success(), "{file}: theorem11 exit {:?}: {}", o.status.code(), String::from_utf8_lossy(&o.stderr));
            texts.push(std::fs::read(&out).map_err(|e| e.to_string())?);
        }
        ensure!(texts[0] == texts[1], "{file}: two runs with seed 7 differ");
        let inst = BadOrbitInstance::from_json_str(std::str::from_utf8(&texts[0]).unwrap()).map_err(|e| e.to_string())?;
        let a = Arc::new(BoundQuiverAlgebra::from_json(&serde_json::to_string(&inst.algebra).unwrap()).map_err(|e| e.to_string())?);
        let raw = inst.module.clone().into_raw().map_err(|e| e.to_string())?;
        let m = Representation::from_raw(a.clone(), &raw).map_err(|e| format!("{file}: module invalid: {e}"))?;
        if let Some(want) = expect {
            ensure!(m.dim().0 == want, "{file}: d = {}", m.dim());
        }
        let path = dir.path().join(format!("{file}.0"));
        let o = run_cli(&["verify", path.to_str().unwrap()]);
        ensure!(o.status.success(), "{file}: verify failed: {}", String::from_utf8_lossy(&o.stdout));
        lines.push(format!("{file} d = {}", m.dim()));
    }
    Ok(lines.join("; ") + "; verify passes, byte-identical reruns")
}

fn stability_soundness() -> Check {
    let cfg = StabilityConfig::default();
    let algebras = [catalog::kronecker(), catalog::dtilde4_subspace(), catalog::atilde2()];
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (mut witnesses, mut verdicts, mut instances) = (0, 0, 0);
    while instances < 50 {
        let a = &algebras[instances % algebras.len()];
        let n = a.vertex_count();
        let d = random_dims(&mut rng, n, 2);
        // Radius 1 gives many degenerate modules, so witnesses are common.
        let m = random_module(a, &d, 1, &mut rng).map_err(|e| e.to_string())?;
        let e = DimVector(d.0.iter().map(|&x| rng.gen_range(0..=x)).collect());
        if let Some(w) = backend_a(&m, &e, &cfg) {
            ensure!(w.verify(&m), "witness for {e} in {} does not re-validate", m.dim());
            let b = backend_b(&m, &e, &cfg).map_err(|err| format!("decider on {e}: {err}"))?;
            ensure!(b, "certifier found {e} in {} but the decider rejects it", m.dim());
            witnesses += 1;
        }
        // θ with θ(d) = 0.
        let s: i64 = d.0.iter().map(|&x| x as i64).sum();
        let r: Vec<i64> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
        let rd: i64 = r.iter().zip(&d.0).map(|(ri, di)| ri * *di as i64).sum();
        let theta = Weight::from_ints(&r.iter().map(|ri| ri * s - rd).collect::<Vec<_>>());
        let v = is_stable(&m, &theta, &cfg).map_err(|err| format!("is_stable: {err}"))?;
        if v.status == StabilityStatus::Stable {
            ensure!(end_dim(&m) == 1, "stable module of dimension {} is not Schur", m.dim());
        }
        if let Some(w) = &v.witness {
            ensure!(w.verify(&m), "verdict witness does not re-validate");
        }
        let zero = is_semistable(&m, &Weight::zero(n), &cfg).map_err(|err| err.to_string())?;
        ensure!(zero.is_semistable(), "θ = 0 not semistable for {}", m.dim());
        verdicts += 1;
        instances += 1;
    }
    Ok(format!("{instances} instances, {witnesses} certifier witnesses confirmed, {verdicts} verdicts"))
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Check,
}

fn main() {
    let criteria = [
        Criterion { id: 1, name: "Zwara fixture", limit: Duration::from_secs(1), run: zwara_fixture },
        Criterion { id: 2, name: "form identities", limit: Duration::from_secs(10), run: form_identities },
        Criterion { id: 3, name: "isotropic roots", limit: Duration::from_secs(1), run: isotropic_roots },
        Criterion { id: 4, name: "stable module of dimension h", limit: Duration::from_secs(300), run: lemma_stable_module },
        Criterion { id: 5, name: "Eff cones", limit: Duration::from_secs(30), run: eff_cones },
        Criterion { id: 6, name: "exceptional pair arithmetic", limit: Duration::from_secs(120), run: pair_arithmetic },
        Criterion { id: 7, name: "lift fidelity", limit: Duration::from_secs(120), run: lift_fidelity },
        Criterion { id: 8, name: "bad-orbit instances", limit: Duration::from_secs(300), run: theorem_instances },
        Criterion { id: 9, name: "stability soundness", limit: Duration::from_secs(600), run: stability_soundness },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        let took = start.elapsed();
        let (ok, detail) = match result {
            Ok(d) if took <= c.limit => (true, d),
            Ok(d) => (false, format!("{d}; over time limit")),
            Err(e) => (false, e),
        };
        failed += usize::from(!ok);
        println!(
            "criterion {} [{}]: {} ({:.2}s, limit {}s) {}",
            c.id,
            c.name,
            if ok { "PASS" } else { "FAIL" },
            took.as_secs_f64(),
            c.limit.as_secs(),
            detail
        );
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
