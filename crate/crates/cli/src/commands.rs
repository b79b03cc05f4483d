use std::f64::consts::FRAC_PI_2;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

use dynsym::entanglement::{
    concurrence_qutrit, concurrence_two_qubit, maximize_total_variance, pair_concurrences,
    three_tangle, OptimizerConfig,
};
use dynsym::formats::{DensityFile, StateFile, StateInput};
use dynsym::observables::ObservableBasis;
use dynsym::pentagram::{
    optimize_pentagram, pentagram_value, regular_pentagram, to_vector_rep, Vec3, DEFAULT_RESTARTS,
};
use dynsym::repro::{run_all, ReproConfig};
use dynsym::states::{
    atom_field_state, bi_state, coherent_state, ghz_state, ghz_type_state, squeezed_state,
    squeezing_report, w_state, werner_qutrit, werner_two_qubit, CoherentParams, SqueezeParams,
};
use dynsym::{AnalysisReport, DensityOperator, Error, Pentagram, StateVector};
use serde::Serialize;
use serde_json::json;

use crate::args::{Cli, Command, Family, Format, SweepArgs, SweepFamily};
use crate::CliError;

type Outcome = Result<(), CliError>;

pub fn run(cli: Cli) -> Outcome {
    let format = cli.format;
    match &cli.command {
        Command::Analyze { file, basis } => analyze(&cli, file, basis.as_deref()),
        Command::MaximizeVariance { basis } => maximize(&cli, basis),
        Command::Pentagram { file, regular, axis, pentagram } => {
            pentagram_cmd(&cli, file, *regular, axis, pentagram.as_deref())
        }
        Command::Tangle { file } => tangle(file),
        Command::Concurrence { file } => concurrence(file),
        Command::Generate { family, label } => generate(family, label.clone()),
        Command::Sweep(args) => sweep(args, format.unwrap_or(Format::Csv)),
        Command::Repro => repro(&cli),
    }
}

fn emit_json<T: Serialize>(value: &T) -> Outcome {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value).map_err(|e| CliError::Io(e.to_string()))?;
    writeln!(out).map_err(|e| CliError::Io(e.to_string()))
}

fn read_input(path: &Path) -> Result<StateInput, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(StateInput::parse(&text)?)
}

fn read_pure(path: &Path) -> Result<StateVector, CliError> {
    match read_input(path)? {
        StateInput::Pure(f) => Ok(f.to_state()?),
        StateInput::Mixed(_) => {
            Err(CliError::Usage(format!("{}: a pure state file is required", path.display())))
        }
    }
}

fn default_basis(dims: &[usize]) -> Result<ObservableBasis, CliError> {
    match dims {
        [3] => Ok(ObservableBasis::spin1()),
        d if !d.is_empty() && d.len() <= 4 && d.iter().all(|&k| k == 2) => {
            Ok(ObservableBasis::pauli(d.len())?)
        }
        d => Err(CliError::Usage(format!("no default basis for dims {d:?}; pass --basis"))),
    }
}

fn check_dims(basis: &ObservableBasis, dims: &[usize]) -> Result<(), CliError> {
    if basis.dims() != dims {
        return Err(CliError::Core(Error::DimensionMismatch {
            expected: basis.dim(),
            found: dims.iter().product(),
        }));
    }
    Ok(())
}

fn analyze(cli: &Cli, file: &Path, basis: Option<&str>) -> Outcome {
    let input = read_input(file)?;
    let basis = match basis {
        Some(name) => ObservableBasis::by_name(name)?,
        None => default_basis(input.dims())?,
    };
    check_dims(&basis, input.dims())?;
    let report = match input {
        StateInput::Pure(f) => AnalysisReport::pure(&f.to_state()?, &basis, cli.tol)?,
        StateInput::Mixed(f) => {
            eprintln!("note: mixed input; the measure is defined for pure states only");
            AnalysisReport::mixed(&f.to_density()?, &basis)?
        }
    };
    match cli.format.unwrap_or(Format::Json) {
        Format::Json => emit_json(&report),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(io::stdout());
            w.write_record(["observable", "expectation", "variance"])?;
            for ((label, e), v) in report.labels.iter().zip(&report.expectations).zip(&report.variances) {
                w.write_record([label.clone(), csv_number(*e), csv_number(*v)])?;
            }
            w.flush().map_err(|e| CliError::Io(e.to_string()))
        }
    }
}

fn maximize(cli: &Cli, basis: &str) -> Outcome {
    let basis = ObservableBasis::by_name(basis)?;
    let mut config = OptimizerConfig::with_seed(cli.seed);
    if let Some(r) = cli.restarts {
        config = config.restarts(r);
    }
    let best = maximize_total_variance(&basis, &config)?;
    if best.residual > cli.tol {
        eprintln!(
            "warning: no completely entangled state exists for {} (residual {:.6})",
            basis.name(),
            best.residual
        );
    }
    emit_json(&json!({
        "basis": basis.name(),
        "state": StateFile::from_state(&best.state, None),
        "value": best.value,
        "residual": best.residual,
        "gradient_norm": best.gradient_norm,
        "iterations": best.iterations,
    }))
}

fn parse_pentagram(arg: &str) -> Result<[Vec3; 5], CliError> {
    let text = match arg.strip_prefix('@') {
        Some(path) => fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {path}: {e}")))?,
        None => arg.to_string(),
    };
    serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("pentagram must be five 3-vectors as JSON: {e}")))
}

fn pentagram_cmd(cli: &Cli, file: &Path, regular: bool, axis: &[f64], explicit: Option<&str>) -> Outcome {
    let psi = read_pure(file)?;
    let v = to_vector_rep(&psi)?;
    let mut warnings = Vec::new();
    let (mode, p, report) = if let Some(arg) = explicit {
        let (p, w) = Pentagram::from_input(parse_pentagram(arg)?)?;
        warnings = w;
        ("explicit", p, pentagram_value(&p, &v)?)
    } else if regular {
        let &[x, y, z] = axis else {
            return Err(CliError::Usage(format!("--axis needs 3 components, got {}", axis.len())));
        };
        let p = regular_pentagram([x, y, z])?;
        ("regular", p, pentagram_value(&p, &v)?)
    } else {
        let restarts = cli.restarts.unwrap_or(DEFAULT_RESTARTS);
        let (p, r) = optimize_pentagram(&v, restarts, cli.seed)?;
        ("optimized", p, r)
    };
    for w in &warnings {
        eprintln!("warning: {w}");
    }
    emit_json(&json!({
        "mode": mode,
        "pentagram": p,
        "report": report,
        "warnings": warnings,
    }))
}

fn tangle(file: &Path) -> Outcome {
    let psi = read_pure(file)?;
    emit_json(&json!({
        "tau": three_tangle(&psi)?,
        "pair_concurrences": pair_concurrences(&psi)?,
    }))
}

fn concurrence(file: &Path) -> Outcome {
    let rho = match read_input(file)? {
        StateInput::Pure(f) => f.to_state()?.projector(),
        StateInput::Mixed(f) => f.to_density()?,
    };
    let c = match rho.dims() {
        [3] => concurrence_qutrit(&rho)?,
        [2, 2] => concurrence_two_qubit(&rho)?,
        _ => {
            return Err(CliError::Core(Error::DimensionMismatch { expected: 4, found: rho.dim() }))
        }
    };
    emit_json(&json!({ "dims": rho.dims(), "concurrence": c }))
}

enum Generated {
    Pure(StateVector),
    Mixed(DensityOperator),
}

fn generate(family: &Family, label: Option<String>) -> Outcome {
    let state = match *family {
        Family::Coherent { alpha_abs, alpha_arg } => {
            Generated::Pure(coherent_state(CoherentParams::from_polar(alpha_abs, alpha_arg)))
        }
        Family::Squeezed { xi_abs, xi_arg } => {
            Generated::Pure(squeezed_state(SqueezeParams::from_polar(xi_abs, xi_arg)))
        }
        Family::Ghz => Generated::Pure(ghz_state()),
        Family::W => Generated::Pure(w_state()),
        Family::Bi => Generated::Pure(bi_state()),
        Family::GhzType { x } => Generated::Pure(ghz_type_state(x)?),
        Family::WernerQutrit { x } => Generated::Mixed(werner_qutrit(x)?),
        Family::WernerTwoQubit { x } => Generated::Mixed(werner_two_qubit(x)?),
        Family::AtomField { g1, g2 } => Generated::Pure(atom_field_state(g1, g2)?),
    };
    match state {
        Generated::Pure(psi) => emit_json(&StateFile::from_state(&psi, label)),
        Generated::Mixed(rho) => emit_json(&DensityFile::from_density(&rho, label)),
    }
}

fn grid(args: &SweepArgs, domain: (f64, f64)) -> Result<Vec<f64>, CliError> {
    let from = args.from.unwrap_or(domain.0);
    let to = args.to.unwrap_or(domain.1);
    if !(from.is_finite() && to.is_finite()) || from > to || from < domain.0 || to > domain.1 {
        return Err(CliError::Usage(format!(
            "grid [{from}, {to}] must be increasing and inside [{}, {}]",
            domain.0, domain.1
        )));
    }
    match args.points {
        0 => Err(CliError::Usage("--points must be at least 1".into())),
        1 => Ok(vec![from]),
        n => Ok((0..n).map(|k| from + (to - from) * k as f64 / (n - 1) as f64).collect()),
    }
}

/// Shortest round-trip form, switching to exponent notation for very small
/// or very large magnitudes.
fn csv_number(v: f64) -> String {
    if v != 0.0 && (v.abs() < 1e-4 || v.abs() >= 1e16) {
        format!("{v:e}")
    } else {
        v.to_string()
    }
}

fn sweep(args: &SweepArgs, format: Format) -> Outcome {
    let (header, rows): (Vec<&str>, Vec<Vec<f64>>) = match args.family {
        SweepFamily::WernerQutrit => (
            vec!["x", "concurrence_analytic", "concurrence"],
            grid(args, (0.0, 1.0))?
                .into_iter()
                .map(|x| Ok(vec![x, (1.0 - 4.0 * x / 3.0).max(0.0), concurrence_qutrit(&werner_qutrit(x)?)?]))
                .collect::<Result<_, Error>>()?,
        ),
        SweepFamily::WernerTwoQubit => (
            vec!["x", "concurrence_analytic", "concurrence"],
            grid(args, (0.0, 1.0))?
                .into_iter()
                .map(|x| {
                    Ok(vec![x, (1.0 - 1.5 * x).max(0.0), concurrence_two_qubit(&werner_two_qubit(x)?)?])
                })
                .collect::<Result<_, Error>>()?,
        ),
        SweepFamily::Squeezed => {
            let basis = ObservableBasis::spin1();
            (
                vec!["xi", "mu_analytic", "mu", "total_variance", "min_transverse_variance"],
                grid(args, (0.0, FRAC_PI_2))?
                    .into_iter()
                    .map(|r| {
                        let psi = squeezed_state(SqueezeParams::from_polar(r, 0.0));
                        let a = dynsym::entanglement::assess(&psi, &basis)?;
                        let sq = squeezing_report(&psi)?;
                        Ok(vec![r, (2.0 * r).sin().abs(), a.mu, a.total_variance, sq.min_transverse_variance])
                    })
                    .collect::<Result<_, Error>>()?,
            )
        }
        SweepFamily::GhzType => (
            vec!["x", "tau_analytic", "tau", "pair_concurrence_01", "pair_concurrence_02", "pair_concurrence_12"],
            grid(args, (0.0, 1.0))?
                .into_iter()
                .map(|x| {
                    let psi = ghz_type_state(x)?;
                    let c = pair_concurrences(&psi)?;
                    Ok(vec![x, 4.0 * x * x * (1.0 - x * x), three_tangle(&psi)?, c[0], c[1], c[2]])
                })
                .collect::<Result<_, Error>>()?,
        ),
    };
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(io::stdout());
            w.write_record(&header)?;
            for row in &rows {
                w.write_record(row.iter().map(|&v| csv_number(v)))?;
            }
            w.flush().map_err(|e| CliError::Io(e.to_string()))
        }
        Format::Json => {
            let objects: Vec<serde_json::Map<String, serde_json::Value>> = rows
                .iter()
                .map(|row| header.iter().map(|h| h.to_string()).zip(row.iter().map(|&v| json!(v))).collect())
                .collect();
            emit_json(&objects)
        }
    }
}

fn repro(cli: &Cli) -> Outcome {
    let mut config = ReproConfig { seed: cli.seed, ..ReproConfig::default() };
    if let Some(r) = cli.restarts {
        config.variance_restarts = r;
        config.pentagram_restarts = r;
    }
    let outcomes = run_all(&config);
    if cli.format == Some(Format::Json) {
        emit_json(&outcomes)?;
    } else {
        for o in &outcomes {
            println!("{} {:>2}. {} ({})", if o.passed { "PASS" } else { "FAIL" }, o.id, o.title, o.detail);
        }
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    if failed > 0 {
        return Err(CliError::Failed(failed));
    }
    Ok(())
}
