//! Command-line front end.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use symcurve_core::analysis::{analyze, AnalysisOptions, AnalyzedCurve};
use symcurve_core::forms::{
    moser_interpolation, pullback, realize_with, support_defect, PlanarMap, RealizeOptions,
};
use symcurve_core::moduli::{
    dimension_breakdown, labelled_equivalent, symplectically_equivalent, Decision, Verdict,
};
use symcurve_core::{
    integrate_density_over_faces, isotopy_match, AreaVector, Density, GenericityOptions, Grid,
};

use crate::error::CliError;
use crate::format;
use crate::report;
use crate::svg::render_svg;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INEQUIVALENT: i32 = 1;
pub const EXIT_NOT_GENERIC: i32 = 2;
pub const EXIT_INCOMPARABLE: i32 = 3;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_INPUT: i32 = 65;
pub const EXIT_FAILURE: i32 = 70;

#[derive(Debug, Parser)]
#[command(
    name = "symcurve",
    version,
    about = "Symplectic classification of generic plane curves"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub options: GlobalOptions,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOptions {
    /// Minimum crossing angle in radians.
    #[arg(long, global = true, default_value_t = 0.1)]
    pub angle_tol: f64,
    /// Separation tolerance; default 1e-6 times the bounding-box diagonal.
    #[arg(long, global = true)]
    pub sep_tol: Option<f64>,
    /// Relative area tolerance for comparisons.
    #[arg(long, global = true, default_value_t = symcurve_core::moduli::DEFAULT_TOLERANCE)]
    pub area_tol: f64,
    /// Grid nodes per axis.
    #[arg(long, global = true, default_value_t = symcurve_core::forms::DEFAULT_RESOLUTION)]
    pub grid: usize,
    /// RK4 steps for Moser flows.
    #[arg(long, global = true, default_value_t = 64)]
    pub steps: usize,
    /// Write an SVG picture of the (first) input curve.
    #[arg(long, global = true)]
    pub svg: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Resample every loop to N equal-arclength points before analysis.
    #[arg(long, global = true)]
    pub resample: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Genericity, subdivision counts, face areas and codes of a curve.
    Analyze { curve: PathBuf },
    /// Decide equivalence of two curves.
    Compare {
        a: PathBuf,
        b: PathBuf,
        /// Compare labelled area vectors through the diagram isomorphism.
        #[arg(long, conflicts_with = "symplectic")]
        labelled: bool,
        /// Compare up to the symmetry group (default).
        #[arg(long)]
        symplectic: bool,
    },
    /// Symmetry group acting on the bounded faces.
    Symmetry { curve: PathBuf },
    /// Build an area form with prescribed face integrals.
    Realize {
        curve: PathBuf,
        /// Comma-separated targets; random targets above the base when absent.
        #[arg(long, value_delimiter = ',')]
        targets: Option<Vec<f64>>,
        /// Factor applied to the standard form before adding bumps.
        #[arg(long, default_value_t = 1.0)]
        base_scale: f64,
        /// Write the resulting density file here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Moser flow pulling one density back to another.
    Moser {
        f0: PathBuf,
        f1: PathBuf,
        /// Write the displacement grid here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Moduli dimension of a declared curve spec.
    ModuliDim { spec: PathBuf },
    /// Draw a curve with labelled faces.
    Render {
        curve: PathBuf,
        /// Annotate face labels with areas.
        #[arg(long)]
        areas: bool,
    },
}

/// Validated settings shared by every command.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub genericity: GenericityOptions,
    pub area_tol: f64,
    pub grid: usize,
    pub steps: usize,
    pub svg: Option<PathBuf>,
    pub seed: u64,
    pub resample: Option<usize>,
}

impl RunConfig {
    pub fn from_options(o: &GlobalOptions) -> Result<Self, CliError> {
        let positive = |name: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(CliError::Usage(format!(
                    "--{name} must be positive, got {v}"
                )))
            }
        };
        positive("angle-tol", o.angle_tol)?;
        positive("area-tol", o.area_tol)?;
        if let Some(t) = o.sep_tol {
            positive("sep-tol", t)?;
        }
        if o.grid < 32 {
            return Err(CliError::Usage(format!(
                "--grid must be at least 32, got {}",
                o.grid
            )));
        }
        if o.steps == 0 {
            return Err(CliError::Usage("--steps must be at least 1".into()));
        }
        Ok(Self {
            genericity: GenericityOptions {
                angle_tol: o.angle_tol,
                sep_tol: o.sep_tol,
                ..GenericityOptions::default()
            },
            area_tol: o.area_tol,
            grid: o.grid,
            steps: o.steps,
            svg: o.svg.clone(),
            seed: o.seed,
            resample: o.resample,
        })
    }

    fn analysis(&self) -> AnalysisOptions {
        AnalysisOptions {
            genericity: self.genericity,
            resample: self.resample,
        }
    }
}

/// Text for standard output and the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            stdout,
            code: EXIT_OK,
        }
    }
}

fn load(cfg: &RunConfig, path: &std::path::Path) -> Result<AnalyzedCurve, CliError> {
    Ok(analyze(format::load_curve(path)?, &cfg.analysis())?)
}

fn not_generic(path: &std::path::Path, a: &AnalyzedCurve) -> Outcome {
    Outcome {
        stdout: format!(
            "NOT GENERIC: {}\n{}",
            path.display(),
            report::genericity(&a.report)
        ),
        code: EXIT_NOT_GENERIC,
    }
}

fn write_svg(cfg: &RunConfig, a: &AnalyzedCurve) -> Result<(), CliError> {
    if let (Some(path), Some(st)) = (&cfg.svg, &a.structure) {
        format::write_file(path, &render_svg(&st.arrangement, Some(&st.areas)))?;
    }
    Ok(())
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let cfg = RunConfig::from_options(&cli.options)?;
    match &cli.command {
        Command::Analyze { curve } => {
            let a = load(&cfg, curve)?;
            write_svg(&cfg, &a)?;
            let code = if a.is_generic() {
                EXIT_OK
            } else {
                EXIT_NOT_GENERIC
            };
            Ok(Outcome {
                stdout: report::analysis(&a),
                code,
            })
        }
        Command::Compare { a, b, labelled, .. } => compare(&cfg, a, b, *labelled),
        Command::Symmetry { curve } => {
            let a = load(&cfg, curve)?;
            let Some(st) = &a.structure else {
                return Ok(not_generic(curve, &a));
            };
            write_svg(&cfg, &a)?;
            Ok(Outcome::ok(report::symmetry(st.areas.len(), &st.symmetry)))
        }
        Command::Realize {
            curve,
            targets,
            base_scale,
            out,
        } => realize(&cfg, curve, targets.as_deref(), *base_scale, out.as_deref()),
        Command::Moser { f0, f1, out } => moser(&cfg, f0, f1, out.as_deref()),
        Command::ModuliDim { spec } => {
            let spec = format::load_spec(spec)?;
            let b = dimension_breakdown(&spec)?;
            Ok(Outcome::ok(report::dimension(&spec, &b)))
        }
        Command::Render { curve, areas } => {
            let a = load(&cfg, curve)?;
            let Some(st) = &a.structure else {
                return Ok(not_generic(curve, &a));
            };
            let svg = render_svg(&st.arrangement, areas.then_some(&st.areas));
            match &cfg.svg {
                Some(p) => {
                    format::write_file(p, &svg)?;
                    Ok(Outcome::ok(format!("wrote {}\n", p.display())))
                }
                None => Ok(Outcome::ok(svg)),
            }
        }
    }
}

fn exit_code(d: &Decision) -> i32 {
    match d.verdict {
        Verdict::Equivalent => EXIT_OK,
        Verdict::Inequivalent => EXIT_INEQUIVALENT,
        Verdict::Incomparable => EXIT_INCOMPARABLE,
    }
}

fn compare(
    cfg: &RunConfig,
    pa: &std::path::Path,
    pb: &std::path::Path,
    labelled: bool,
) -> Result<Outcome, CliError> {
    let a = load(cfg, pa)?;
    let b = load(cfg, pb)?;
    let (sa, sb) = match (&a.structure, &b.structure) {
        (Some(sa), Some(sb)) => (sa, sb),
        (None, _) => return Ok(not_generic(pa, &a)),
        (_, None) => return Ok(not_generic(pb, &b)),
    };
    write_svg(cfg, &a)?;
    let (mode, d) = if labelled {
        let d = match isotopy_match(&sa.arrangement, &sb.arrangement) {
            Some(m) => labelled_equivalent(&sa.areas, &sb.areas, &m.faces, cfg.area_tol)?,
            None => Decision::incomparable(cfg.area_tol),
        };
        ("labelled", d)
    } else {
        (
            "symplectic",
            symplectically_equivalent(&sa.arrangement, &sb.arrangement, cfg.area_tol)?,
        )
    };
    let mut s = report::decision(mode, &d);
    let _ = writeln!(s, "canonical code a: {}", sa.canonical_code());
    let _ = writeln!(s, "canonical code b: {}", sb.canonical_code());
    Ok(Outcome {
        code: exit_code(&d),
        stdout: s,
    })
}

fn realize(
    cfg: &RunConfig,
    path: &std::path::Path,
    targets: Option<&[f64]>,
    base_scale: f64,
    out: Option<&std::path::Path>,
) -> Result<Outcome, CliError> {
    let a = load(cfg, path)?;
    let Some(st) = &a.structure else {
        return Ok(not_generic(path, &a));
    };
    write_svg(cfg, &a)?;
    let arr = &st.arrangement;
    let grid = Grid::covering(&arr.bounding_box(), cfg.grid)?;
    let opts = RealizeOptions {
        base_scale,
        ..RealizeOptions::default()
    };
    let base = Density::standard(grid).scaled(base_scale)?;
    let base_integrals = integrate_density_over_faces(arr, &base)?;
    let target = match targets {
        Some(t) => AreaVector::new(t.to_vec())?,
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            AreaVector::new(
                base_integrals
                    .entries()
                    .iter()
                    .map(|b| b * (1.0 + rng.gen_range(0.05..1.0)))
                    .collect(),
            )?
        }
    };
    let omega = realize_with(arr, &target, &Density::standard(grid), &opts)?;
    let got = integrate_density_over_faces(arr, &omega)?;
    let mut s = String::new();
    let _ = writeln!(s, "grid: {}x{}", grid.nx(), grid.ny());
    let _ = writeln!(s, "base scale: {base_scale}");
    let _ = writeln!(s, "face base target realized rel.err");
    for j in 0..target.len() {
        let _ = writeln!(
            s,
            "D{} {:.9} {:.9} {:.9} {:.3e}",
            j + 1,
            base_integrals[j],
            target[j],
            got[j],
            (got[j] - target[j]).abs() / target[j]
        );
    }
    if let Some(p) = out {
        format::write_file(p, &format::write_density(&omega))?;
        let _ = writeln!(s, "density written to {}", p.display());
    }
    Ok(Outcome::ok(s))
}

fn moser(
    cfg: &RunConfig,
    p0: &std::path::Path,
    p1: &std::path::Path,
    out: Option<&std::path::Path>,
) -> Result<Outcome, CliError> {
    let f0 = format::load_density(p0)?;
    let f1 = format::load_density(p1)?;
    let map = moser_interpolation(&f0, &f1, cfg.steps)?;
    let back = pullback(&map, &f1)?;
    let defect = back.max_abs_diff(&f0, None)?;
    let mut s = String::new();
    let _ = writeln!(s, "grid: {}x{}", f0.grid().nx(), f0.grid().ny());
    let _ = writeln!(s, "steps: {}", cfg.steps);
    let _ = writeln!(s, "pullback defect: {defect:.6e}");
    let _ = writeln!(s, "support defect: {:.6e}", support_defect(&map, &f0, &f1));
    if let PlanarMap::Sampled(g) = &map {
        let _ = writeln!(s, "max displacement: {:.6e}", g.max_displacement());
        if let Some(p) = out {
            format::write_file(p, &format::write_displacement(g))?;
            let _ = writeln!(s, "displacement written to {}", p.display());
        }
    }
    Ok(Outcome::ok(s))
}

/// Parses `args`, runs the command and maps failures to exit codes. Errors
/// go to the returned `stderr` text.
pub fn main_with_args<I, T>(args: I) -> (Outcome, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                (
                    Outcome {
                        stdout: String::new(),
                        code,
                    },
                    text,
                )
            } else {
                (Outcome { stdout: text, code }, String::new())
            };
        }
    };
    match run(&cli) {
        Ok(o) => (o, String::new()),
        Err(e) => {
            let code = match &e {
                CliError::Usage(_) => EXIT_USAGE,
                CliError::Io { .. } | CliError::Parse(_) | CliError::ParseFile { .. } => EXIT_INPUT,
                CliError::Core(_) => EXIT_FAILURE,
            };
            (
                Outcome {
                    stdout: String::new(),
                    code,
                },
                format!("error: {e}\n"),
            )
        }
    }
}
