use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};
use dcurv_core::convergence::{
    self, parse_level_range, write_artifacts, ConvergenceReport, ExperimentConfig, FitOutcome, Format, Quantity,
};
use dcurv_core::curve::{analyze_edge, DiscreteCurve, EdgeAnalysis};
use dcurv_core::smooth::RegistryCurve;
use dcurv_core::GeomError;

/// Discrete curvature, torsion and Frenet frames of polygonal curves.
#[derive(Parser)]
#[command(name = "dcurv", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Per-edge invariants of a polyline read from a text file.
    Analyze(AnalyzeArgs),
    /// Convergence study on the built-in test curves.
    Converge(ConvergeArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Curve file: a header line "open" or "closed", then one vertex per line.
    file: PathBuf,
    /// Emit JSON instead of a table.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ConvergeArgs {
    /// Comma-separated curve names.
    #[arg(long, value_delimiter = ',', default_value = "epitrochoid,logspiral,helix,helicalspiral,coil,trefoil,viviani")]
    curves: Vec<String>,
    /// Level range, coarse to fine; ε = 0.1·1.1^level.
    #[arg(long, default_value = "0..-15", allow_hyphen_values = true)]
    levels: String,
    /// Comma-separated quantities among kappa, tau, T, N, B.
    #[arg(long, value_delimiter = ',', default_value = "kappa,tau,T,N,B")]
    quantities: Vec<String>,
    /// Directory for the CSV, JSON and SVG artifacts. Nothing is written
    /// without it.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Vertex spacing as a multiple of each level's step size
    /// (default π/4; 2 gives the stencil `s(u ± ε), s(u ± 3ε)` at step ε).
    #[arg(long, default_value_t = convergence::DEFAULT_SPACING)]
    spacing: f64,
    /// Comma-separated artifact formats.
    #[arg(long, value_delimiter = ',', default_value = "csv,json,svg")]
    format: Vec<String>,
}

enum Failure {
    Config(anyhow::Error),
    Singular(anyhow::Error),
    Other(anyhow::Error),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Config(_) => 2,
            Failure::Singular(_) => 3,
            Failure::Other(_) => 1,
        }
    }

    fn error(&self) -> &anyhow::Error {
        match self {
            Failure::Config(e) | Failure::Singular(e) | Failure::Other(e) => e,
        }
    }
}

fn is_singular(e: &GeomError) -> bool {
    matches!(
        e,
        GeomError::Zigzag { .. } | GeomError::InconsistentCircle { .. } | GeomError::DegenerateCrossRatio
    )
}

fn analyze(args: &AnalyzeArgs) -> Result<(), Failure> {
    let text = fs::read_to_string(&args.file)
        .with_context(|| format!("reading {}", args.file.display()))
        .map_err(Failure::Config)?;
    let curve: DiscreteCurve = text
        .parse()
        .with_context(|| format!("parsing {}", args.file.display()))
        .map_err(Failure::Config)?;

    let results: Vec<(usize, Result<EdgeAnalysis, GeomError>)> =
        curve.interior_edges().map(|i| (i, analyze_edge(&curve, i))).collect();

    if args.json {
        let records: Vec<serde_json::Value> = results
            .iter()
            .map(|(i, r)| match r {
                Ok(a) => serde_json::to_value(a).expect("analysis serializes"),
                Err(e) => serde_json::json!({ "edge": i, "error": e.to_string() }),
            })
            .collect();
        let doc = serde_json::json!({
            "closed": curve.is_closed(),
            "dimension": curve.dimension(),
            "vertices": curve.len(),
            "edges": records,
        });
        println!("{}", serde_json::to_string_pretty(&doc).map_err(|e| Failure::Other(e.into()))?);
    } else {
        println!(
            "{:>5}  {:>14}  {:>14}  {:>14}  {:<32}  {:<32}",
            "edge", "kappa", "tau", "kappa'", "T", "N"
        );
        let fmt_opt = |v: Option<f64>| v.map_or_else(|| "-".to_string(), |x| format!("{x:.6e}"));
        for (i, r) in &results {
            match r {
                Ok(a) => {
                    let (t, n) = a.frame.map_or_else(
                        || ("-".to_string(), "-".to_string()),
                        |f| {
                            let v = |x: dcurv_core::Vec3| format!("({:.5}, {:.5}, {:.5})", x.x, x.y, x.z);
                            (v(f.tangent), v(f.normal))
                        },
                    );
                    println!(
                        "{:>5}  {:>14}  {:>14}  {:>14}  {:<32}  {:<32}",
                        i,
                        format!("{:.6e}", a.curvature),
                        fmt_opt(a.torsion),
                        fmt_opt(a.kappa_prime),
                        t,
                        n
                    );
                }
                Err(e) => println!("{i:>5}  error: {e}"),
            }
        }
    }

    let singular: Vec<_> = results
        .iter()
        .filter_map(|(i, r)| r.as_ref().err().filter(|e| is_singular(e)).map(|e| (i, e)))
        .collect();
    if let Some((i, e)) = singular.first() {
        return Err(Failure::Singular(anyhow!(
            "{} singular edge(s); first at edge {i}: {e}",
            singular.len()
        )));
    }
    Ok(())
}

fn config_from(args: &ConvergeArgs) -> anyhow::Result<(ExperimentConfig, Vec<Format>)> {
    let curves = args
        .curves
        .iter()
        .map(|c| c.parse::<RegistryCurve>())
        .collect::<Result<Vec<_>, _>>()?;
    let quantities = args
        .quantities
        .iter()
        .map(|q| q.parse::<Quantity>())
        .collect::<Result<Vec<_>, _>>()?;
    let range = parse_level_range(&args.levels)?;
    let formats = args
        .format
        .iter()
        .map(|f| f.parse::<Format>())
        .collect::<Result<Vec<_>, _>>()?;
    let config = ExperimentConfig {
        curves,
        coarsest: *range.start(),
        finest: *range.end(),
        quantities,
        spacing: args.spacing,
    };
    config.validate()?;
    Ok((config, formats))
}

fn cell(fit: &FitOutcome) -> String {
    match *fit {
        FitOutcome::Fitted {
            slope, low_confidence, ..
        } => format!("{slope:.4}{}", if low_confidence { "?" } else { "" }),
        FitOutcome::ExactAtMachinePrecision => "exact".to_string(),
        FitOutcome::Insufficient { .. } => "n/a".to_string(),
    }
}

fn print_summary(report: &ConvergenceReport) {
    print!("{:<8} {:<14}", "row", "curve");
    for q in &report.quantities {
        print!(" {:>10}", q.symbol());
    }
    println!(" {:>10} {:>8}", "p_bc", "skipped");
    for c in &report.curves {
        print!("{:<8} {:<14}", c.label, c.curve.name());
        if let Some(f) = &c.failure {
            println!(" failed: {f}");
            continue;
        }
        for q in &report.quantities {
            let cell = c.fit(*q).map_or_else(|| "-".to_string(), |f| cell(&f.fit));
            print!(" {cell:>10}");
        }
        println!(" {:>10} {:>8}", cell(&c.contact_fit), c.skipped_edges());
    }
    let notes: Vec<String> = report
        .curves
        .iter()
        .flat_map(|c| {
            c.fits
                .iter()
                .filter_map(move |f| f.note.as_ref().map(|n| format!("{} {}: {n}", c.curve, f.quantity)))
        })
        .collect();
    for n in notes {
        println!("note: {n}");
    }
    if report.curves.iter().any(|c| {
        c.fits
            .iter()
            .map(|f| &f.fit)
            .chain([&c.contact_fit])
            .any(|f| matches!(f, FitOutcome::ExactAtMachinePrecision))
    }) {
        println!("note: 'exact' marks a series at the rounding floor at every level");
    }
    if report
        .curves
        .iter()
        .flat_map(|c| &c.fits)
        .any(|f| matches!(f.fit, FitOutcome::Fitted { low_confidence: true, .. }))
    {
        println!(
            "note: '?' marks a low-confidence slope (fewer than {} levels)",
            convergence::MIN_CONFIDENT_POINTS
        );
    }
}

fn converge(args: &ConvergeArgs) -> Result<(), Failure> {
    let (config, formats) = config_from(args).map_err(Failure::Config)?;
    let report = convergence::run(&config).map_err(|e| Failure::Config(e.into()))?;
    print_summary(&report);
    if let Some(dir) = &args.out {
        let written = write_artifacts(&report, dir, &formats).map_err(|e| Failure::Other(e.into()))?;
        for p in written {
            println!("wrote {}", p.display());
        }
    }
    if report.has_failures() {
        return Err(Failure::Singular(anyhow!("one or more curves failed")));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Analyze(a) => analyze(a),
        Command::Converge(c) => converge(c),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.error());
            ExitCode::from(f.code())
        }
    }
}
