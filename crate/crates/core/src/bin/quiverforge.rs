use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use quiverforge::exceptional::{build_quotient_algebra, find_orthogonal_pair, lift, pair_from_json, transport_from_kronecker};
use quiverforge::forms::{defect_weight, euler_form, find_isotropic_root, tits_form};
use quiverforge::genericrep::{effective_cone, effective_cone_from_witness, facet_stable_pairs};
use quiverforge::homology::{ext1_space, hom_space};
use quiverforge::linalg::format_q;
use quiverforge::pipeline::{build_bad_orbit_instance, verify_instance, zwara_module, BadOrbitInstance};
use quiverforge::stability::groebner::GroebnerLimits;
use quiverforge::stability::{is_semistable, is_stable, StabilityConfig};
use quiverforge::{catalog, BoundQuiverAlgebra, DimVector, Error, QMatrix, Representation, Weight, SCHEMA_VERSION};

/// Exact invariants of quiver representations.
///
/// Algebras passed to `theorem11`, `pair` and `verify` must be tame hereditary
/// or tame concealed; this is assumed, not checked.
#[derive(Parser)]
#[command(name = "quiverforge", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// dim Hom(M, N) with a basis of morphisms.
    Hom { algebra: PathBuf, m: PathBuf, n: PathBuf },
    /// dim Ext¹(M, N) with a basis of cocycles.
    Ext1 { algebra: PathBuf, m: PathBuf, n: PathBuf },
    /// Euler and Tits forms, isotropic root and defect.
    Forms {
        algebra: PathBuf,
        #[arg(long, num_args = 2, value_names = ["D", "E"])]
        euler: Option<Vec<String>>,
        #[arg(long)]
        tits: Option<String>,
        #[arg(long)]
        isotropic: bool,
    },
    /// King (semi)stability of a module for a weight.
    Stability {
        algebra: PathBuf,
        module: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
        #[arg(long)]
        stable: bool,
        /// Also run the Gröbner decider when a witness is found.
        #[arg(long)]
        cross_check: bool,
        /// Gröbner degree cap; exceeding it reports UNDECIDED (exit 3).
        #[arg(long, default_value_t = 40)]
        max_degree: u32,
        #[arg(long, default_value_t = 20000)]
        max_basis: usize,
    },
    /// Cone of effective weights Eff(A, d).
    Effcone {
        algebra: PathBuf,
        #[arg(long)]
        dim: String,
        /// Sample a module of dimension d instead of using generic subdimensions.
        #[arg(long)]
        witness: bool,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// Stable pairs (h1, h2) for a facet weight θ0.
    Stablepair {
        algebra: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        theta0: String,
        /// Defaults to the isotropic root.
        #[arg(long)]
        dim: Option<String>,
    },
    /// Orthogonal exceptional pair for a tame algebra.
    Pair {
        algebra: PathBuf,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Lift a module over A_E (or the Kronecker quiver) along a stored pair.
    Lift {
        algebra: PathBuf,
        pair: PathBuf,
        module: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build the bad-orbit instance (d, M) for a tame algebra.
    Theorem11 {
        algebra: PathBuf,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Re-check every certificate of a stored instance.
    Verify { instance: PathBuf },
    /// Zwara's module over the Kronecker quiver.
    Zwara {
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn read(path: &Path) -> quiverforge::Result<String> {
    std::fs::read_to_string(path).map_err(Error::from)
}

fn load_algebra(path: &Path) -> quiverforge::Result<Arc<BoundQuiverAlgebra>> {
    Ok(Arc::new(BoundQuiverAlgebra::from_json(&read(path)?)?))
}

fn load_module(algebra: &Arc<BoundQuiverAlgebra>, path: &Path) -> quiverforge::Result<Representation> {
    Representation::from_json(algebra.clone(), &read(path)?)
}

fn matrix_json(m: &QMatrix) -> Value {
    json!(m.to_rows().iter().map(|r| r.iter().map(format_q).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn with_version(mut v: Value) -> Value {
    if let Value::Object(map) = &mut v {
        map.insert("schema_version".into(), json!(SCHEMA_VERSION));
    }
    v
}

fn emit(v: Value, output: Option<&Path>) -> quiverforge::Result<()> {
    let text = serde_json::to_string_pretty(&with_version(v))?;
    match output {
        Some(p) => std::fs::write(p, text + "\n")?,
        None => out(&(text + "\n"))?,
    }
    Ok(())
}

/// Writes to stdout; a closed pipe is not worth a panic.
fn out(text: &str) -> quiverforge::Result<()> {
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        r => Ok(r?),
    }
}

fn run(cmd: Cmd) -> quiverforge::Result<u8> {
    match cmd {
        Cmd::Hom { algebra, m, n } => {
            let a = load_algebra(&algebra)?;
            let (m, n) = (load_module(&a, &m)?, load_module(&a, &n)?);
            let hb = hom_space(&m, &n)?;
            let verts = a.quiver().vertices();
            let basis: Vec<Value> = hb
                .basis
                .iter()
                .map(|phi| Value::Object(verts.iter().zip(phi).map(|(v, x)| (v.clone(), matrix_json(x))).collect()))
                .collect();
            emit(json!({ "dim": hb.dim, "basis": basis }), None)?;
        }
        Cmd::Ext1 { algebra, m, n } => {
            let a = load_algebra(&algebra)?;
            let (m, n) = (load_module(&a, &m)?, load_module(&a, &n)?);
            let eb = ext1_space(&m, &n)?;
            let arrows = a.quiver().arrows();
            let basis: Vec<Value> = eb
                .basis
                .iter()
                .map(|z| Value::Object(arrows.iter().zip(z).map(|(ar, x)| (ar.id.clone(), matrix_json(x))).collect()))
                .collect();
            emit(json!({ "dim": eb.dim, "basis": basis }), None)?;
        }
        Cmd::Forms { algebra, euler, tits, isotropic } => {
            let a = load_algebra(&algebra)?;
            let mut out = serde_json::Map::new();
            if let Some(pair) = euler {
                let (d, e) = (DimVector::parse_list(&pair[0])?, DimVector::parse_list(&pair[1])?);
                out.insert("euler".into(), json!(euler_form(&a, &d, &e)?));
            }
            if let Some(d) = tits {
                out.insert("tits".into(), json!(tits_form(&a, &DimVector::parse_list(&d)?)?));
            }
            if isotropic {
                let h = find_isotropic_root(&a)?;
                let theta = defect_weight(&a, &h)?;
                out.insert("isotropic_root".into(), json!(h.to_map(a.quiver())));
                out.insert("theta_h".into(), json!(theta.to_strings()));
            }
            emit(Value::Object(out), None)?;
        }
        Cmd::Stability { algebra, module, theta, stable, cross_check, max_degree, max_basis } => {
            let a = load_algebra(&algebra)?;
            let m = load_module(&a, &module)?;
            let theta = Weight::parse_list(&theta)?;
            let limits = GroebnerLimits { max_degree, max_basis };
            let cfg = StabilityConfig { cross_check, limits, ..StabilityConfig::default() };
            let verdict = if stable { is_stable(&m, &theta, &cfg)? } else { is_semistable(&m, &theta, &cfg)? };
            emit(verdict.to_json(&m, &theta), None)?;
        }
        Cmd::Effcone { algebra, dim, witness, seed } => {
            let a = load_algebra(&algebra)?;
            let d = DimVector::parse_list(&dim)?;
            let cone = if witness || !a.is_hereditary() {
                let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
                let m = quiverforge::exceptional::random_module(&a, &d, 2, &mut rng)?;
                effective_cone_from_witness(&m, &StabilityConfig { seed, ..StabilityConfig::default() })?
            } else {
                effective_cone(&a, &d)?
            };
            emit(cone.to_json(&a), None)?;
        }
        Cmd::Stablepair { algebra, theta0, dim } => {
            let a = load_algebra(&algebra)?;
            let h = match dim {
                Some(d) => DimVector::parse_list(&d)?,
                None => find_isotropic_root(&a)?,
            };
            let theta0 = Weight::parse_list(&theta0)?;
            let pairs = facet_stable_pairs(&a, &h, &theta0)?;
            if pairs.is_empty() {
                return Err(Error::NoStablePair(format!("no pair for θ0 = {theta0}")));
            }
            let list: Vec<Value> = pairs.iter().map(|p| p.to_json(&a)).collect();
            emit(json!({ "h": h.to_map(a.quiver()), "theta0": theta0.to_strings(), "pairs": list }), None)?;
        }
        Cmd::Pair { algebra, seed, output } => {
            let a = load_algebra(&algebra)?;
            let pc = find_orthogonal_pair(&a, seed)?;
            emit(pc.to_json(), output.as_deref())?;
        }
        Cmd::Lift { algebra, pair, module, output } => {
            let a = load_algebra(&algebra)?;
            let doc: Value = serde_json::from_str(&read(&pair)?)?;
            let pair = pair_from_json(&a, &doc)?;
            let quotient = build_quotient_algebra(&pair)?;
            let text = read(&module)?;
            let m = match Representation::from_json(quotient.algebra.clone(), &text) {
                Ok(m) => m,
                Err(_) => {
                    let k = catalog::generalized_kronecker(pair.ext1_backward());
                    transport_from_kronecker(&quotient, &Representation::from_json(k, &text)?)?
                }
            };
            let lifted = lift(&pair, &quotient, &m)?;
            emit(serde_json::to_value(lifted.to_json())?, output.as_deref())?;
        }
        Cmd::Theorem11 { algebra, seed, output } => {
            let a = load_algebra(&algebra)?;
            let inst = build_bad_orbit_instance(&a, seed)?;
            let text = inst.to_json_string() + "\n";
            match output {
                Some(p) => std::fs::write(p, text)?,
                None => out(&text)?,
            }
            if inst.certificates.iter().any(|c| !c.passed) {
                return Ok(2);
            }
        }
        Cmd::Verify { instance } => {
            let inst = BadOrbitInstance::from_json_str(&read(&instance)?)?;
            let report = verify_instance(&inst)?;
            out(&(serde_json::to_string_pretty(&report)? + "\n"))?;
            if !report.passed {
                return Ok(2);
            }
        }
        Cmd::Zwara { output } => {
            emit(serde_json::to_value(zwara_module().to_json())?, output.as_deref())?;
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
