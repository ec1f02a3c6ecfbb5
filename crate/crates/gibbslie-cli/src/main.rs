//! gibbslie: analyze finite-dimensional real Lie algebras given by exact
//! structure constants — ellipticity and compact embeddings, root systems
//! and invariant cones, Gibbs-element decisions, character traces, and
//! KMS verification of thermal states on truncated representations.
//!
//! Exit codes: 0 all checks pass; 1 negative mathematical verdict (not an
//! error); 2 input error; 3 internal failure or inconclusive search.

mod report;
mod views;

use clap::{Parser, Subcommand};
use gibbslie_core::algebra::{algebra_from_toml, Element, LieAlgebra, Subspace};
use gibbslie_core::cones;
use gibbslie_core::error::Error as CoreError;
use gibbslie_core::gibbs::{
    build_truncated_rep, default_t_grid, invariance_check, kms_reflection_check,
    positive_definiteness_check, GibbsEnsemble, GibbsStateVal, GroupWord, RepFamily,
};
use gibbslie_core::hwmods::{
    oscillator_trace, su2_character_trace, WeightModule, DEFAULT_DEPTH, EPS_TRACE,
};
use gibbslie_core::roots::{
    enumerate_positive_systems, positive_system, root_decomposition, verify_cartan,
};
use gibbslie_core::spectral::{
    comp_interior_member, ellipticity_ideal, is_compactly_embedded, is_elliptic, SpectralConfig,
};
use report::{Report, ReportBuilder, Tolerances};
use serde::Serialize;
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use views::*;

#[derive(Parser)]
#[command(name = "gibbslie", version, about = "Gibbs elements and KMS states of finite-dimensional Lie algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Seed for all randomized searches (reports are deterministic given
    /// inputs and seed).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Override the spectral imaginary-axis tolerance.
    #[arg(long, global = true)]
    tol_spec: Option<f64>,
    /// Override the trace tail tolerance.
    #[arg(long, global = true)]
    tol_trace: Option<f64>,
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    json_out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Validate an algebra file: antisymmetry and the exact Jacobi identity.
    Algebra {
        #[command(subcommand)]
        sub: AlgebraCmd,
    },
    /// Ellipticity and compact-embedding tests.
    Spectral {
        #[command(subcommand)]
        sub: SpectralCmd,
    },
    /// Root decomposition and positive systems for a given Cartan.
    Roots {
        #[arg(long)]
        algebra: String,
        /// Comma-separated basis expressions, e.g. "z,p2+q2".
        #[arg(long)]
        cartan: String,
    },
    /// Minimal/maximal cones and admissibility per positive system.
    Cones {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        cartan: String,
        /// Restrict to the system defined by this regular element.
        #[arg(long)]
        x0: Option<String>,
    },
    /// Decide whether an element admits a thermal (Gibbs) representation.
    GibbsElement {
        #[arg(long)]
        algebra: String,
        /// Coordinates "1,0,0,1,1,0" or an expression "z+p2+q2".
        #[arg(long)]
        element: String,
        /// Cartan hint (repeatable), e.g. --cartan-hint "z,p2+q2".
        #[arg(long)]
        cartan_hint: Vec<String>,
    },
    /// Character/spectrum trace series with convergence certificates.
    Trace {
        /// Family: sl2 | su2 | oscillator.
        #[arg(long)]
        family: String,
        /// sl2: rational highest-weight coefficient, e.g. "-3".
        /// oscillator: positive frequency (f64).
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        /// Evaluation parameter theta (sl2 and su2 families).
        #[arg(long, allow_hyphen_values = true)]
        x_theta: Option<f64>,
        /// Inverse temperature (oscillator family).
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
        /// su2: spin as "1/2", "1", ...
        #[arg(long)]
        j: Option<String>,
    },
    /// KMS residual suite on a truncated Gibbs state.
    Kms {
        /// Family: su2 | oscillator | heisenberg | sl2.
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        lambda: f64,
        #[arg(long, default_value_t = 2.0, allow_hyphen_values = true)]
        beta: f64,
        /// Truncation dimension (ignored for su2).
        #[arg(long, default_value_t = 64)]
        n: usize,
        /// su2 spin as "1/2", "1", ...
        #[arg(long, default_value = "1/2")]
        j: String,
        /// Word, e.g. "p:0.5,q:0.3".
        #[arg(long)]
        word: Option<String>,
        /// Negative control: perturb the state weights (not the dynamics).
        #[arg(long)]
        perturb: bool,
    },
    /// Full decision pipeline with the witness chain.
    Pipeline {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        cartan: String,
        #[arg(long)]
        element: String,
    },
}

#[derive(Subcommand)]
enum AlgebraCmd {
    Validate {
        #[arg(long)]
        algebra: String,
    },
}

#[derive(Subcommand)]
enum SpectralCmd {
    /// Is ad(x) semisimple with purely imaginary spectrum?
    Elliptic {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        element: String,
    },
    /// Invariant-metric certificate for a compactly embedded subalgebra.
    CompactEmbed {
        #[arg(long)]
        algebra: String,
        /// Comma-separated basis expressions; defaults to the whole algebra.
        #[arg(long)]
        subalgebra: Option<String>,
    },
    /// Smallest ideal whose quotient makes ad(x) elliptic.
    EllipticityIdeal {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        element: String,
    },
}

fn exit_code_for(err: &CoreError) -> i32 {
    match err {
        CoreError::Parse(_)
        | CoreError::Invalid(_)
        | CoreError::DimensionMismatch { .. }
        | CoreError::Antisymmetry(..)
        | CoreError::JacobiViolation(..)
        | CoreError::NotRegular(_)
        | CoreError::NotInCartan
        | CoreError::NeedsConjugation
        | CoreError::UnknownFamily(_)
        | CoreError::OutsideStrip(_)
        | CoreError::BadWeights
        | CoreError::MismatchedDynamics
        | CoreError::NotAnIdeal(..)
        | CoreError::NotASubalgebra
        | CoreError::CartanRejected(_) => 2,
        CoreError::Eigensolver(_)
        | CoreError::Decomposition(_)
        | CoreError::MixedSignRoot { .. }
        | CoreError::BoundExceeded(_)
        | CoreError::MissingRepresentation(_) => 3,
    }
}

/// Resolve --algebra: a literal path, a file under GIBBSLIE_FIXTURES or
/// the bundled fixtures directory, or a built-in name.
fn load_algebra(spec: &str) -> Result<(LieAlgebra, String), CoreError> {
    let direct = Path::new(spec);
    if direct.is_file() {
        let text = std::fs::read_to_string(direct)
            .map_err(|e| CoreError::Parse(format!("cannot read {spec}: {e}")))?;
        return Ok((algebra_from_toml(&text)?, spec.to_string()));
    }
    let mut candidates: Vec<PathBuf> = Vec::new();
    if let Ok(dir) = std::env::var("GIBBSLIE_FIXTURES") {
        candidates.push(Path::new(&dir).join(spec));
        candidates.push(Path::new(&dir).join(format!("{spec}.toml")));
    }
    let bundled_dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    candidates.push(bundled_dir.join(spec));
    candidates.push(bundled_dir.join(format!("{spec}.toml")));
    for c in candidates {
        if c.is_file() {
            let text = std::fs::read_to_string(&c)
                .map_err(|e| CoreError::Parse(format!("cannot read {}: {e}", c.display())))?;
            return Ok((algebra_from_toml(&text)?, c.display().to_string()));
        }
    }
    if let Some(a) = gibbslie_core::algebra::bundled(spec) {
        return Ok((a, format!("bundled:{spec}")));
    }
    Err(CoreError::Parse(format!(
        "algebra `{spec}` is neither a readable file, a fixture, nor a bundled name"
    )))
}

fn parse_element(algebra: &LieAlgebra, text: &str) -> Result<Element, CoreError> {
    if text.chars().any(|c| c.is_alphabetic()) {
        algebra.parse_combination(text)
    } else {
        gibbslie_core::algebra::parse_coords(text, algebra.dim)
    }
}

fn parse_cartan(algebra: &LieAlgebra, text: &str) -> Result<Subspace, CoreError> {
    let vectors: Vec<_> = text
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|expr| algebra.parse_combination(expr).map(|e| e.coords))
        .collect::<Result<_, _>>()?;
    if vectors.is_empty() {
        return Err(CoreError::Parse("empty Cartan specification".into()));
    }
    Ok(Subspace::from_vectors(&vectors))
}

fn spectral_config(cli: &Cli) -> SpectralConfig {
    let mut cfg = SpectralConfig::default();
    cfg.seed = cli.seed;
    if let Some(t) = cli.tol_spec {
        cfg.eps_spec = t;
    }
    cfg
}

fn emit<T: Serialize>(cli: &Cli, report: &Report<T>, code: i32) -> ! {
    let text = serde_json::to_string_pretty(report).expect("report serialization");
    println!("{text}");
    if let Some(path) = &cli.json_out {
        if let Err(e) = std::fs::write(path, &text) {
            eprintln!("error: cannot write {}: {e}", path.display());
            std::process::exit(3);
        }
    }
    std::process::exit(code);
}

fn fail(cli: &Cli, command: &str, tol: Tolerances, inputs: Value, err: &CoreError) -> ! {
    let builder = ReportBuilder::new(command, cli.seed, tol, inputs);
    let report = builder.finish(json!({ "error": err.to_string() }));
    let text = serde_json::to_string_pretty(&report).expect("report serialization");
    eprintln!("{text}");
    if let Some(path) = &cli.json_out {
        let _ = std::fs::write(path, &text);
    }
    std::process::exit(exit_code_for(err));
}

fn main() {
    let cli = Cli::parse();
    let cfg = spectral_config(&cli);
    let eps_trace = cli.tol_trace.unwrap_or(EPS_TRACE);
    let tol = Tolerances::from_config(&cfg, eps_trace);

    match &cli.command {
        Command::Algebra { sub: AlgebraCmd::Validate { algebra } } => {
            let inputs = json!({ "algebra": algebra });
            let builder =
                ReportBuilder::new("algebra validate", cli.seed, tol.clone(), inputs.clone());
            match load_algebra(algebra) {
                Ok((alg, source)) => {
                    // The loader enforces antisymmetry and Jacobi; rerun
                    // the report form for the record.
                    let report = alg.verify_jacobi();
                    let results = json!({
                        "source": source,
                        "algebra": AlgebraView::from(&alg),
                        "antisymmetry_ok": true,
                        "jacobi_ok": report.ok,
                        "first_violation": report.first_violation,
                    });
                    emit(&cli, &builder.finish(results), 0)
                }
                Err(e) => fail(&cli, "algebra validate", tol, inputs, &e),
            }
        }

        Command::Spectral { sub } => match sub {
            SpectralCmd::Elliptic { algebra, element } => {
                let inputs = json!({ "algebra": algebra, "element": element });
                let run = || -> Result<(EllipticityView, bool), CoreError> {
                    let (alg, _) = load_algebra(algebra)?;
                    let x = parse_element(&alg, element)?;
                    let rep = is_elliptic(&alg, &x, &cfg)?;
                    Ok((EllipticityView::from(&rep), rep.verdict))
                };
                match run() {
                    Ok((view, verdict)) => {
                        let builder =
                            ReportBuilder::new("spectral elliptic", cli.seed, tol.clone(), inputs);
                        emit(&cli, &builder.finish(view), if verdict { 0 } else { 1 })
                    }
                    Err(e) => fail(&cli, "spectral elliptic", tol, inputs, &e),
                }
            }
            SpectralCmd::CompactEmbed { algebra, subalgebra } => {
                let inputs = json!({ "algebra": algebra, "subalgebra": subalgebra });
                let run = || -> Result<CompactEmbedView, CoreError> {
                    let (alg, _) = load_algebra(algebra)?;
                    let sub = match subalgebra {
                        Some(s) => parse_cartan(&alg, s)?,
                        None => alg.full_subspace(),
                    };
                    let rep = is_compactly_embedded(&alg, &sub, &cfg)?;
                    Ok(CompactEmbedView::from(&rep))
                };
                match run() {
                    Ok(view) => {
                        let code = if view.verdict {
                            0
                        } else if view.inconclusive {
                            3
                        } else {
                            1
                        };
                        let builder = ReportBuilder::new(
                            "spectral compact-embed",
                            cli.seed,
                            tol.clone(),
                            inputs,
                        );
                        emit(&cli, &builder.finish(view), code)
                    }
                    Err(e) => fail(&cli, "spectral compact-embed", tol, inputs, &e),
                }
            }
            SpectralCmd::EllipticityIdeal { algebra, element } => {
                let inputs = json!({ "algebra": algebra, "element": element });
                let run = || -> Result<Value, CoreError> {
                    let (alg, _) = load_algebra(algebra)?;
                    let x = parse_element(&alg, element)?;
                    let ideal = ellipticity_ideal(&alg, &x, &cfg)?;
                    let elliptic_before = is_elliptic(&alg, &x, &cfg)?.verdict;
                    Ok(json!({
                        "ideal": SubspaceView::from(&ideal),
                        "element_elliptic": elliptic_before,
                    }))
                };
                match run() {
                    Ok(results) => {
                        let builder = ReportBuilder::new(
                            "spectral ellipticity-ideal",
                            cli.seed,
                            tol.clone(),
                            inputs,
                        );
                        emit(&cli, &builder.finish(results), 0)
                    }
                    Err(e) => fail(&cli, "spectral ellipticity-ideal", tol, inputs, &e),
                }
            }
        },

        Command::Roots { algebra, cartan } => {
            let inputs = json!({ "algebra": algebra, "cartan": cartan });
            let run = || -> Result<Value, CoreError> {
                let (alg, _) = load_algebra(algebra)?;
                let t = parse_cartan(&alg, cartan)?;
                let cand = verify_cartan(&alg, &t, &cfg)?;
                if !cand.accepted {
                    return Err(CoreError::CartanRejected(format!(
                        "abelian={} self_centralizing={} compactly_embedded={}",
                        cand.abelian, cand.self_centralizing, cand.compactly_embedded
                    )));
                }
                let datum = root_decomposition(&alg, &cand, &cfg)?;
                let systems = enumerate_positive_systems(&datum, 40)?;
                Ok(json!({
                    "cartan": {
                        "t_basis": basis_strings(&datum.cartan.basis),
                        "abelian": cand.abelian,
                        "self_centralizing": cand.self_centralizing,
                        "compactly_embedded": cand.compactly_embedded,
                    },
                    "dimension_identity": {
                        "dim_g": alg.dim,
                        "dim_t": datum.t_dim(),
                        "root_space_total": alg.dim - datum.t_dim(),
                    },
                    "roots": datum.roots.iter().map(RootView::from).collect::<Vec<_>>(),
                    "positive_systems": systems
                        .iter()
                        .map(|s| PositiveSystemView::from(&datum, s))
                        .collect::<Vec<_>>(),
                }))
            };
            match run() {
                Ok(results) => {
                    let builder = ReportBuilder::new("roots", cli.seed, tol.clone(), inputs);
                    emit(&cli, &builder.finish(results), 0)
                }
                Err(e) => fail(&cli, "roots", tol, inputs, &e),
            }
        }

        Command::Cones { algebra, cartan, x0 } => {
            let inputs = json!({ "algebra": algebra, "cartan": cartan, "x0": x0 });
            let run = || -> Result<Value, CoreError> {
                let (alg, _) = load_algebra(algebra)?;
                let t = parse_cartan(&alg, cartan)?;
                let cand = verify_cartan(&alg, &t, &cfg)?;
                let datum = root_decomposition(&alg, &cand, &cfg)?;
                let systems = match x0 {
                    Some(expr) => vec![positive_system(&datum, &parse_element(&alg, expr)?)?],
                    None => enumerate_positive_systems(&datum, 40)?,
                };
                let mut out = Vec::new();
                for sys in &systems {
                    let cmin = cones::c_min(&alg, &datum, sys)?;
                    let cmax = cones::c_max(&datum, sys);
                    let pointed = cones::is_pointed(&cmin)?;
                    let contained = cones::contains(&cmax, &cmin)?;
                    let admissible = cones::is_admissible_system(&alg, &datum, sys)?;
                    let lineality = cones::lineality_space(&cmax)?;
                    out.push(json!({
                        "system": PositiveSystemView::from(&datum, sys),
                        "c_min_generators": basis_strings(&cmin.generators.clone().unwrap_or_default()),
                        "c_max_inequalities": basis_strings(&cmax.inequalities.clone().unwrap_or_default()),
                        "c_min_pointed": pointed,
                        "c_min_in_c_max": contained,
                        "admissible": admissible,
                        "c_max_lineality_dim": lineality.len(),
                    }));
                }
                Ok(json!({
                    "t_basis": basis_strings(&datum.cartan.basis),
                    "systems": out,
                }))
            };
            match run() {
                Ok(results) => {
                    let builder = ReportBuilder::new("cones", cli.seed, tol.clone(), inputs);
                    emit(&cli, &builder.finish(results), 0)
                }
                Err(e) => fail(&cli, "cones", tol, inputs, &e),
            }
        }

        Command::GibbsElement { algebra, element, cartan_hint } => {
            let inputs =
                json!({ "algebra": algebra, "element": element, "cartan_hints": cartan_hint });
            let run = || -> Result<GibbsDecisionView, CoreError> {
                let (alg, _) = load_algebra(algebra)?;
                let x = parse_element(&alg, element)?;
                let hints: Vec<Subspace> = cartan_hint
                    .iter()
                    .map(|h| parse_cartan(&alg, h))
                    .collect::<Result<_, _>>()?;
                let decision = cones::is_gibbs_element(&alg, &x, &hints, &cfg)?;
                Ok(GibbsDecisionView::from(&decision))
            };
            match run() {
                Ok(view) => {
                    let code = if view.verdict {
                        0
                    } else if view.inconclusive {
                        3
                    } else {
                        1
                    };
                    let builder =
                        ReportBuilder::new("gibbs-element", cli.seed, tol.clone(), inputs);
                    emit(&cli, &builder.finish(view), code)
                }
                Err(e) => fail(&cli, "gibbs-element", tol, inputs, &e),
            }
        }

        Command::Trace { family, lambda, x_theta, beta, depth, j } => {
            let inputs = json!({
                "family": family, "lambda": lambda, "x_theta": x_theta,
                "beta": beta, "depth": depth, "j": j,
            });
            let run = || -> Result<TraceView, CoreError> {
                match family.as_str() {
                    "sl2" => {
                        let lam =
                            gibbslie_core::algebra::parse_rat(lambda.as_deref().unwrap_or("-1"))?;
                        let theta = x_theta.ok_or_else(|| {
                            CoreError::Invalid("--x-theta is required for the sl2 family".into())
                        })?;
                        let module =
                            WeightModule::sl2_verma(lam, gibbslie_core::rational::rat(2), *depth);
                        let x = gibbslie_core::rational::approximate(theta, 1 << 24)
                            .ok_or_else(|| CoreError::Invalid("bad theta".into()))?;
                        Ok(TraceView::from(&module.trace(&[x], eps_trace)?))
                    }
                    "su2" => {
                        let jtxt = j.clone().unwrap_or_else(|| "1/2".into());
                        let twice_j = parse_twice_j(&jtxt)?;
                        let theta = x_theta.ok_or_else(|| {
                            CoreError::Invalid("--x-theta is required for the su2 family".into())
                        })?;
                        Ok(TraceView::from(&su2_character_trace(twice_j, theta)?))
                    }
                    "oscillator" => {
                        let lam: f64 = lambda
                            .as_deref()
                            .unwrap_or("1")
                            .parse()
                            .map_err(|_| CoreError::Invalid("bad lambda".into()))?;
                        let b = beta.ok_or_else(|| {
                            CoreError::Invalid(
                                "--beta is required for the oscillator family".into(),
                            )
                        })?;
                        Ok(TraceView::from(&oscillator_trace(lam, b, *depth, eps_trace)))
                    }
                    other => Err(CoreError::UnknownFamily(other.into())),
                }
            };
            match run() {
                Ok(view) => {
                    let code = if view.divergent { 1 } else { 0 };
                    let builder = ReportBuilder::new("trace", cli.seed, tol.clone(), inputs);
                    emit(&cli, &builder.finish(view), code)
                }
                Err(e) => fail(&cli, "trace", tol, inputs, &e),
            }
        }

        Command::Kms { family, lambda, beta, n, j, word, perturb } => {
            let inputs = json!({
                "family": family, "lambda": lambda, "beta": beta, "N": n,
                "j": j, "word": word, "perturb": perturb,
            });
            let run = || -> Result<(Value, bool), CoreError> {
                let (rep_family, mix_partner) = match family.as_str() {
                    "su2" => {
                        let twice_j = parse_twice_j(j)?;
                        (
                            RepFamily::Su2 { twice_j },
                            Some(RepFamily::Su2 { twice_j: twice_j + 1 }),
                        )
                    }
                    other => (RepFamily::parse(other, *lambda, 1)?, None),
                };
                if matches!(
                    rep_family,
                    RepFamily::Oscillator { .. } | RepFamily::Heisenberg { .. }
                ) && beta * lambda <= 0.0
                {
                    return Err(CoreError::Invalid(format!(
                        "trace-class refusal: beta * lambda = {} is not positive",
                        beta * lambda
                    )));
                }
                let rep = build_truncated_rep(rep_family.clone(), *n)?;
                let leakage = json!({
                    "interior_commutator_residual": rep.interior_residual,
                    "edge_leakage": rep.edge_leakage,
                });
                let mut state = GibbsStateVal::new(rep, *beta)?;
                if *perturb {
                    let noise: Vec<f64> =
                        (0..state.rep.dim).map(|k| 0.3 * (k as f64 + 1.0)).collect();
                    state = state.perturbed(&noise);
                }
                let default_word = match family.as_str() {
                    "su2" => GroupWord::single("x1", 0.6).then("x2", 0.4),
                    "sl2" | "sl2_lowest" => GroupWord::single("v", 0.3).then("w", 0.2),
                    _ => GroupWord::parse("p:0.5,q:0.3")?,
                };
                let w = match word {
                    Some(text) => GroupWord::parse(text)?,
                    None => default_word,
                };
                let x_probe = w.clone();
                let y_probe = w.inverse();
                let names = state.rep.names.clone();
                let ens = GibbsEnsemble::pure(state);
                let grid = default_t_grid();
                let reflection = kms_reflection_check(&ens, &x_probe, &y_probe, &grid)?;
                let invariance = invariance_check(&ens, &x_probe, &grid)?;
                let mut words = vec![GroupWord::identity(), w.clone(), w.inverse()];
                for (idx, name) in names.into_iter().enumerate().take(3) {
                    words.push(GroupWord::single(&name, 0.3 + 0.2 * idx as f64));
                }
                let min_gram = positive_definiteness_check(&ens, &words)?;
                let state_value = ens.evaluate(&w)?;

                let mixture = match mix_partner {
                    Some(partner) if !perturb => {
                        let a = GibbsStateVal::new(
                            build_truncated_rep(rep_family.clone(), *n)?,
                            *beta,
                        )?;
                        let b = GibbsStateVal::new(build_truncated_rep(partner, *n)?, *beta)?;
                        let mix = GibbsEnsemble::mixture(vec![a, b], &[0.5, 0.5])?;
                        let r = kms_reflection_check(&mix, &x_probe, &y_probe, &grid)?;
                        let i = invariance_check(&mix, &x_probe, &grid)?;
                        let g = positive_definiteness_check(&mix, &words)?;
                        Some(json!({
                            "reflection_residual": r,
                            "invariance_residual": i,
                            "min_gram_eigenvalue": g,
                        }))
                    }
                    _ => None,
                };

                let pass = reflection <= 1e-9 && invariance <= 1e-10 && min_gram >= -1e-10;
                let mixture_pass = mixture
                    .as_ref()
                    .map(|m| {
                        m["reflection_residual"].as_f64().unwrap() <= 1e-9
                            && m["invariance_residual"].as_f64().unwrap() <= 1e-10
                            && m["min_gram_eigenvalue"].as_f64().unwrap() >= -1e-10
                    })
                    .unwrap_or(true);
                Ok((
                    json!({
                        "state_value": [state_value.re, state_value.im],
                        "reflection_residual": reflection,
                        "invariance_residual": invariance,
                        "min_gram_eigenvalue": min_gram,
                        "truncation": leakage,
                        "mixture": mixture,
                        "pass": pass && mixture_pass,
                    }),
                    pass && mixture_pass,
                ))
            };
            match run() {
                Ok((results, pass)) => {
                    let builder = ReportBuilder::new("kms", cli.seed, tol.clone(), inputs);
                    emit(&cli, &builder.finish(results), if pass { 0 } else { 1 })
                }
                Err(e) => fail(&cli, "kms", tol, inputs, &e),
            }
        }

        Command::Pipeline { algebra, cartan, element } => {
            let inputs = json!({ "algebra": algebra, "cartan": cartan, "element": element });
            let run = || -> Result<(Value, i32), CoreError> {
                let (alg, _) = load_algebra(algebra)?;
                let x = parse_element(&alg, element)?;
                let t = parse_cartan(&alg, cartan)?;
                let mut stages = Vec::new();

                let cand = verify_cartan(&alg, &t, &cfg)?;
                stages.push(json!({
                    "stage": "verify_cartan",
                    "abelian": cand.abelian,
                    "self_centralizing": cand.self_centralizing,
                    "compactly_embedded": cand.compactly_embedded,
                    "accepted": cand.accepted,
                }));
                let comp = comp_interior_member(&alg, &x, &cfg)?;
                stages.push(json!({
                    "stage": "comp_interior_member",
                    "verdict": comp.verdict,
                    "inconclusive": comp.inconclusive,
                }));

                let mut decision_view = None;
                if cand.accepted {
                    let datum = root_decomposition(&alg, &cand, &cfg)?;
                    stages.push(json!({
                        "stage": "root_decomposition",
                        "roots": datum.roots.iter().map(RootView::from).collect::<Vec<_>>(),
                    }));
                    let systems = enumerate_positive_systems(&datum, 40)?;
                    let admissibility: Vec<Value> = systems
                        .iter()
                        .map(|s| {
                            let adm =
                                cones::is_admissible_system(&alg, &datum, s).unwrap_or(false);
                            json!({
                                "system": PositiveSystemView::from(&datum, s),
                                "admissible": adm,
                            })
                        })
                        .collect();
                    stages.push(json!({
                        "stage": "enumerate_positive_systems",
                        "count": systems.len(),
                        "systems": admissibility,
                    }));
                    let decision = cones::is_gibbs_element(&alg, &x, &[t.clone()], &cfg)?;
                    decision_view = Some(GibbsDecisionView::from(&decision));
                }

                let (verdict, inconclusive) = decision_view
                    .as_ref()
                    .map(|d| (d.verdict, d.inconclusive))
                    .unwrap_or((false, false));
                let code = if verdict {
                    0
                } else if inconclusive {
                    3
                } else {
                    1
                };
                Ok((
                    json!({
                        "stages": stages,
                        "decision": decision_view,
                    }),
                    code,
                ))
            };
            match run() {
                Ok((results, code)) => {
                    let builder = ReportBuilder::new("pipeline", cli.seed, tol.clone(), inputs);
                    emit(&cli, &builder.finish(results), code)
                }
                Err(e) => fail(&cli, "pipeline", tol, inputs, &e),
            }
        }
    }
}

/// Parse a spin like "1/2" or "3" into 2j.
fn parse_twice_j(text: &str) -> Result<u32, CoreError> {
    let jr = gibbslie_core::algebra::parse_rat(text)?;
    let twice = jr * gibbslie_core::rational::rat(2);
    if !twice.is_integer() || twice < gibbslie_core::rational::rat(0) {
        return Err(CoreError::Invalid("j must be a nonnegative half-integer".into()));
    }
    twice
        .to_integer()
        .to_string()
        .parse()
        .map_err(|_| CoreError::Invalid("bad j".into()))
}
