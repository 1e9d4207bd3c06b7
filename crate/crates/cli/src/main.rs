//! `hypdrill`: realize, drill and audit ideal right-angled polyhedra.

mod commands;
mod report;

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::{load_poly, parse_range, parse_spec, resolve, theta_grid, CliError, CliResult, Outcome};

/// Relative output paths are taken inside this directory when it is set.
const OUT_DIR_VAR: &str = "HYPDRILL_OUT_DIR";

#[derive(Parser, Debug)]
#[command(name = "hypdrill", version, about = "Drilling experiments on ideal right-angled hyperbolic polyhedra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit JSON instead of CSV.
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// Emit CSV (the default).
    #[arg(long, global = true)]
    csv: bool,
    /// Worker threads; 1 forces the sequential reference path.
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: Option<u16>,
    /// Run the command's invariant checks; exit 1 if any fails.
    #[arg(long, global = true)]
    check: bool,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Default directory for relative output paths.
    #[arg(long, global = true, env = OUT_DIR_VAR)]
    out_dir: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct PolyArgs {
    /// Antiprism with two n-gon faces.
    #[arg(long)]
    drum: Option<usize>,
    /// Polyhedron JSON ({"vertices", "faces"}).
    #[arg(long)]
    poly: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct SpecArgs {
    /// Face index, or top / bottom for drums.
    #[arg(long)]
    face: Option<String>,
    /// Two non-adjacent edge positions of the face, e.g. 0,2.
    #[arg(long)]
    edges: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Basic polyhedra reachable from drums by surgery, or exhaustive signings.
    Enumerate {
        /// Drum sizes used as seeds.
        #[arg(long, default_value = "3..6")]
        seeds: String,
        #[arg(long, default_value_t = 1)]
        generations: usize,
        /// Run the signing audit on `cube` or `tetrahedron` instead.
        #[arg(long)]
        signings: Option<String>,
    },
    /// Right-angled realization, volume and optional SVG.
    Realize {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Write the pattern JSON here.
        #[arg(long)]
        pattern: Option<PathBuf>,
    },
    /// Volume change of surgeries against the π/2·l and K bounds.
    Drill {
        #[command(flatten)]
        poly: PolyArgs,
        #[command(flatten)]
        spec: SpecArgs,
        /// Drum sizes for an inventory run when no polyhedron is given.
        #[arg(long)]
        drums: Option<String>,
    },
    /// Bending family over a θ-grid with the Schläfli and monotonicity checks.
    Deform {
        #[command(flatten)]
        poly: PolyArgs,
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 0.1)]
        from: f64,
        #[arg(long, default_value_t = FRAC_PI_2)]
        to: f64,
        #[arg(long, default_value_t = 0.01)]
        step: f64,
    },
    /// Perpendicular identity, the constant K and thin-polygon checks.
    Bounds {
        #[arg(long, default_value_t = 1000)]
        quads: usize,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        #[arg(long, default_value = "4..6")]
        drums: String,
    },
    /// The five-circle family P_n and its drilling rows.
    Brooks {
        #[arg(long, default_value = "1..6")]
        n: String,
        /// Exponent in the ratio dV / l^a.
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        /// Write P_n.svg for each n here.
        #[arg(long)]
        svg_dir: Option<PathBuf>,
    },
    /// Cone angles and short edge geodesics of the spherical dual.
    DualCheck {
        #[arg(long, default_value_t = 4)]
        drum: usize,
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_delimiter = ',', default_values_t = [FRAC_PI_4, FRAC_PI_2])]
        theta: Vec<f64>,
        #[arg(long, value_delimiter = ',', default_values_t = [0.01, 0.05])]
        t: Vec<f64>,
        /// Maximum number of edges in a searched geodesic.
        #[arg(long, default_value_t = 8)]
        budget: usize,
    },
    /// SVG of a realized pattern.
    Render {
        #[command(flatten)]
        poly: PolyArgs,
        /// Render the constructed P_n instead.
        #[arg(long)]
        brooks: Option<usize>,
    },
}

fn spec_or_default(p: &hypdrill::combin::CombPolyhedron, s: &SpecArgs) -> CliResult<hypdrill::combin::SurgerySpec> {
    parse_spec(p, s.face.as_deref().unwrap_or("top"), s.edges.as_deref().unwrap_or("0,2"))
}

fn run(cli: &Cli) -> CliResult<Outcome> {
    let out_dir = cli.out_dir.as_deref();
    let path = |p: &Option<PathBuf>| p.as_ref().map(|p| resolve(p, out_dir));
    match &cli.command {
        Command::Enumerate { seeds, generations, signings } => match signings {
            Some(base) => commands::signings(base, cli.check),
            None => commands::enumerate(seeds, *generations, cli.check),
        },
        Command::Realize { poly, svg, pattern } => {
            let p = load_poly(poly.drum, poly.poly.as_deref())?;
            commands::realize_cmd(&p, path(svg).as_deref(), path(pattern).as_deref(), cli.check)
        }
        Command::Drill { poly, spec, drums } => {
            if let Some(d) = drums {
                if poly.drum.is_some() || poly.poly.is_some() || spec.face.is_some() {
                    return Err(CliError::Usage("--drums excludes --drum, --poly and --face".into()));
                }
                let polys = parse_range(d)?.into_iter().map(hypdrill::combin::drum).collect::<Result<Vec<_>, _>>()?;
                return commands::drill(&polys, None, cli.check);
            }
            let p = load_poly(poly.drum, poly.poly.as_deref())?;
            let s = match (&spec.face, &spec.edges) {
                (None, None) => None,
                (Some(f), Some(e)) => Some(parse_spec(&p, f, e)?),
                _ => return Err(CliError::Usage("--face and --edges go together".into())),
            };
            commands::drill(&[p], s, cli.check)
        }
        Command::Deform { poly, spec, from, to, step } => {
            let p = load_poly(poly.drum.or(poly.poly.is_none().then_some(4)), poly.poly.as_deref())?;
            let s = spec_or_default(&p, spec)?;
            let grid = theta_grid(*from, *to, *step)?;
            commands::deform(&p, &s, &grid, *step, cli.check)
        }
        Command::Bounds { quads, seed, drums } => commands::bounds(*quads, *seed, drums, cli.check),
        Command::Brooks { n, a, svg_dir } => {
            let ns = parse_range(n)?;
            if ns[0] == 0 {
                return Err(CliError::Usage("n starts at 1".into()));
            }
            commands::brooks(&ns, *a, path(svg_dir).as_deref(), cli.check)
        }
        Command::DualCheck { drum, spec, theta, t, budget } => {
            let p = hypdrill::combin::drum(*drum)?;
            let s = spec_or_default(&p, spec)?;
            commands::dual_check(&p, &s, theta, t, *budget, cli.check)
        }
        Command::Render { poly, brooks } => {
            let p = if poly.drum.is_some() || poly.poly.is_some() {
                Some(load_poly(poly.drum, poly.poly.as_deref())?)
            } else {
                None
            };
            commands::render(p.as_ref(), *brooks)
        }
    }
}

fn emit(cli: &Cli, o: &Outcome) -> std::io::Result<()> {
    let text = match &o.raw {
        Some(raw) => raw.clone(),
        None if cli.json => o.table.to_json(),
        None => o.table.to_csv(),
    };
    match &cli.out {
        Some(p) => {
            let p = resolve(p, cli.out_dir.as_deref());
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir)?;
            }
            fs::write(&p, text)
        }
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j as usize).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    if let Some(dir) = cli.out_dir.as_deref().filter(|d| !Path::exists(d)) {
        if let Err(e) = fs::create_dir_all(dir) {
            eprintln!("error: cannot create {}: {e}", dir.display());
            return ExitCode::from(1);
        }
    }
    match run(&cli) {
        Ok(o) => {
            if let Err(e) = emit(&cli, &o) {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            eprint!("{}", report::check_lines(&o.checks));
            if o.checks.iter().any(|c| !c.pass) {
                eprintln!("error: invariant check failed");
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(CliError::Usage(m)) => {
            eprintln!("usage error: {m}");
            ExitCode::from(2)
        }
        Err(CliError::Numeric(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
