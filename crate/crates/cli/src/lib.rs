//! Command-line front end for the `toricdeg` library.
//!
//! [`run`] takes the argument vector and returns the process exit code:
//! 0 on success, 2 when a computed value fails a verification or a fixture
//! check, 1 on usage and I/O errors.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use toricdeg::degeneration::{
    embed_value_semigroup, family_ideal, fiber, projection_limit, valuation_pipeline, DegenError, DegenOptions,
};
use toricdeg::fixtures;
use toricdeg::groebner::{buchberger, initial_ideal, InitialSpec};
use toricdeg::intlat::weight_from_matrix;
use toricdeg::io::{read_ideal, read_matrix};
use toricdeg::momentmap::{emit_svg, sample_moment_image};
use toricdeg::toric::toric_ideal;
use toricdeg::{Coeff, Convention, Ideal, IntMatrix, TermOrder, VarList};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "toricdeg", version, about = "Exact toric degeneration computations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum OrderKind {
    Lex,
    Degrevlex,
    Weight,
}

#[derive(Args, Debug)]
struct Common {
    /// Ideal file (line format or JSON).
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    /// Print JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct WeightArgs {
    /// Weight vector, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    w: Option<Vec<i64>>,
    /// Valuation matrix (JSON rows); the weight is derived from it when `--w` is absent.
    #[arg(long, value_name = "FILE")]
    matrix: Option<PathBuf>,
    #[arg(long, default_value = "min")]
    convention: Convention,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reduced Gröbner basis.
    Gb {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "degrevlex")]
        order: OrderKind,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        w: Option<Vec<i64>>,
        #[arg(long, default_value = "min")]
        convention: Convention,
    },
    /// Initial ideal for a weight or a term order.
    Initial {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        weight: WeightArgs,
        /// Monomial initial ideal for lex or degrevlex instead of a weight.
        #[arg(long, value_enum)]
        order: Option<OrderKind>,
    },
    /// Toric ideal of the columns of an integer matrix.
    Toric {
        #[arg(long, value_name = "FILE")]
        matrix: PathBuf,
        /// Variable names, one per column (default x0,x1,...).
        #[arg(long, value_delimiter = ',')]
        vars: Option<Vec<String>>,
        #[arg(long)]
        json: bool,
    },
    /// Gröbner family over k[t].
    Family {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        weight: WeightArgs,
    },
    /// Fiber of the Gröbner family at t = VALUE.
    Fiber {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        weight: WeightArgs,
        /// Rational value of t, e.g. 0, 1, 3/2.
        #[arg(long, allow_hyphen_values = true)]
        t: String,
    },
    /// Weight, initial ideal and toric comparison for a valuation matrix.
    Pipeline {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_name = "FILE")]
        matrix: PathBuf,
        #[arg(long, default_value = "min")]
        convention: Convention,
    },
    /// Embedding of the ring into the semigroup algebra of its values.
    Embed {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_name = "FILE")]
        matrix: PathBuf,
        #[arg(long, default_value = "min")]
        convention: Convention,
        #[arg(long, default_value_t = 6)]
        degree_bound: i64,
    },
    /// Degeneration by projection onto the kept variables.
    Project {
        #[command(flatten)]
        common: Common,
        /// Kept variables, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        keep: Vec<String>,
    },
    /// Sampled moment-map image of the torus orbit closure of a matrix.
    Moment {
        #[arg(long, value_name = "FILE")]
        matrix: PathBuf,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write a scatter plot over the polytope outline.
        #[arg(long, value_name = "FILE")]
        svg: Option<PathBuf>,
        /// Coordinates shown in the plot.
        #[arg(long, value_delimiter = ',', num_args = 1, default_value = "0,1")]
        project: Vec<usize>,
        #[arg(long, default_value_t = 1e-9)]
        eps: f64,
        #[arg(long)]
        json: bool,
    },
    /// Bundled example fixtures.
    Fixtures {
        #[command(subcommand)]
        action: FixtureAction,
    },
}

#[derive(Subcommand, Debug)]
enum FixtureAction {
    /// Lists fixture names.
    List,
    /// Runs the checks of one fixture, or of all with `all`.
    Run {
        name: String,
        #[arg(long)]
        json: bool,
    },
}

/// Failure of a command, mapped to an exit code by [`run`].
#[derive(Debug)]
enum Failure {
    Usage(String),
    Verify(String),
}

impl From<DegenError> for Failure {
    fn from(e: DegenError) -> Self {
        match e {
            DegenError::VerificationFailed(m) => Failure::Verify(m),
            DegenError::NoIndependentSubset => Failure::Verify(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

macro_rules! usage_from {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Failure::Usage(e.to_string())
            }
        }
    )*};
}

usage_from!(
    std::io::Error,
    serde_json::Error,
    toricdeg::io::IoError,
    toricdeg::groebner::GroebnerError,
    toricdeg::intlat::LatticeError,
    toricdeg::toric::ToricError,
    toricdeg::momentmap::MomentError,
    toricdeg::fixtures::FixtureError
);

type CmdResult = Result<(), Failure>;

/// Runs the command line `args` (including the program name), writing
/// results to `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Verify(m)) => {
            let _ = writeln!(err, "verification failed: {m}");
            EXIT_VERIFY
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> CmdResult {
    match cmd {
        Command::Gb {
            common,
            order,
            w,
            convention,
        } => {
            let ideal = read_ideal(&common.input)?;
            let kind = order;
            let order = term_order(kind, w, convention, ideal.nvars())?;
            let gb = buchberger(&ideal, &order)?;
            if common.json {
                let name = kind.to_possible_value().map(|v| v.get_name().to_string());
                print_json(out, &json!({"vars": ideal.vars().names(), "order": name, "gens": gb.lines()}))
            } else {
                writeln!(out, "{} generators", gb.len())?;
                for l in gb.lines() {
                    writeln!(out, "{l}")?;
                }
                Ok(())
            }
        }
        Command::Initial { common, weight, order } => {
            let ideal = read_ideal(&common.input)?;
            let spec = match order {
                Some(OrderKind::Weight) | None => {
                    let w = resolve_weight(&ideal, &weight)?;
                    InitialSpec::Weight {
                        w,
                        convention: weight.convention,
                    }
                }
                Some(kind) => InitialSpec::Order(term_order(kind, None, weight.convention, ideal.nvars())?),
            };
            print_ideal(out, &initial_ideal(&ideal, &spec)?, common.json)
        }
        Command::Toric { matrix, vars, json } => {
            let a = read_matrix(&matrix)?;
            let names = match vars {
                Some(v) if v.len() != a.cols() => {
                    return Err(Failure::Usage(format!(
                        "--vars has {} names for {} columns",
                        v.len(),
                        a.cols()
                    )))
                }
                Some(v) => v,
                None => (0..a.cols()).map(|j| format!("x{j}")).collect(),
            };
            print_ideal(out, &toric_ideal(&a, &VarList::new(names))?, json)
        }
        Command::Family { common, weight } => {
            let ideal = read_ideal(&common.input)?;
            let w = resolve_weight(&ideal, &weight)?;
            let fam = family_ideal(&ideal, &w, weight.convention)?;
            if common.json {
                print_json(out, &fam)
            } else {
                for g in &fam.gens {
                    writeln!(out, "{g}")?;
                }
                Ok(())
            }
        }
        Command::Fiber { common, weight, t } => {
            let ideal = read_ideal(&common.input)?;
            let w = resolve_weight(&ideal, &weight)?;
            let t0: Coeff = t
                .parse()
                .map_err(|_| Failure::Usage(format!("--t: `{t}` is not a rational number")))?;
            let fam = family_ideal(&ideal, &w, weight.convention)?;
            print_ideal(out, &fiber(&fam, &t0)?, common.json)
        }
        Command::Pipeline {
            common,
            matrix,
            convention,
        } => {
            let ideal = read_ideal(&common.input)?;
            let m = read_matrix(&matrix)?;
            let opts = DegenOptions {
                convention,
                ..DegenOptions::default()
            };
            let report = valuation_pipeline(&ideal, &m, &opts)?;
            if common.json {
                print_json(out, &report)
            } else {
                writeln!(out, "w: {}", join(&report.w))?;
                writeln!(out, "convention: {}", convention_name(report.convention))?;
                writeln!(out, "init: {}", report.init)?;
                writeln!(out, "toric: {}", report.toric)?;
                writeln!(out, "binomial_prime: {}", report.binomial_prime)?;
                Ok(())
            }
        }
        Command::Embed {
            common,
            matrix,
            convention,
            degree_bound,
        } => {
            let ideal = read_ideal(&common.input)?;
            let m = read_matrix(&matrix)?;
            let opts = DegenOptions {
                convention,
                degree_bound,
                ..DegenOptions::default()
            };
            let report = embed_value_semigroup(&ideal, &m, &opts)?;
            if common.json {
                print_json(out, &report)?;
            } else {
                writeln!(out, "N: {}", report.n)?;
                writeln!(out, "independent: {}", report.independent_names.join(","))?;
                writeln!(out, "integral: {}", report.integral)?;
                for img in &report.images {
                    writeln!(out, "{} -> {}", img.label, img.monomial)?;
                }
                writeln!(out, "kernel: {}", report.kernel_check)?;
                writeln!(out, "kernel_matches: {}", report.kernel_matches)?;
                for d in &report.dims_checked {
                    writeln!(out, "m={}: {} {}", d.m, d.dim_r, d.dim_semigroup)?;
                }
            }
            if !report.kernel_matches || report.dims_checked.iter().any(|d| d.dim_r != d.dim_semigroup) {
                return Err(Failure::Verify("embedding checks disagree".into()));
            }
            Ok(())
        }
        Command::Project { common, keep } => {
            let ideal = read_ideal(&common.input)?;
            let kept = keep
                .iter()
                .map(|name| {
                    ideal
                        .vars()
                        .index_of(name)
                        .ok_or_else(|| Failure::Usage(format!("--keep: unknown variable `{name}`")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let report = projection_limit(&ideal, &kept)?;
            if common.json {
                print_json(out, &report)
            } else {
                writeln!(out, "limit: {}", report.limit)?;
                writeln!(out, "cone_part: {}", report.cone_part)?;
                writeln!(out, "closure: {}", report.closure)?;
                writeln!(out, "scheme_check: {}", report.scheme_check)?;
                Ok(())
            }
        }
        Command::Moment {
            matrix,
            samples,
            seed,
            svg,
            project,
            eps,
            json,
        } => moment(&matrix, samples, seed, svg.as_deref(), &project, eps, json, out),
        Command::Fixtures { action } => match action {
            FixtureAction::List => {
                for f in fixtures::load_all()? {
                    writeln!(out, "{}\t{}", f.name, f.summary)?;
                }
                Ok(())
            }
            FixtureAction::Run { name, json } => run_fixtures(&name, json, out),
        },
    }
}

#[allow(clippy::too_many_arguments)]
fn moment(
    matrix: &Path,
    samples: usize,
    seed: u64,
    svg: Option<&Path>,
    project: &[usize],
    eps: f64,
    json: bool,
    out: &mut dyn Write,
) -> CmdResult {
    let a = read_matrix(matrix)?;
    let proj = match project {
        [i] => (*i, *i),
        [i, j] => (*i, *j),
        _ => return Err(Failure::Usage("--project takes one or two coordinates".into())),
    };
    let s = sample_moment_image(&a, samples, seed)?;
    let p = fixtures::value_polytope(&a);
    let cmp = toricdeg::momentmap::image_vs_polytope(&s, &p, eps)?;
    if let Some(path) = svg {
        let proj = if a.rows() == 1 { (0, 0) } else { proj };
        emit_svg(&s, &p, proj, path)?;
    }
    if json {
        let values: Vec<&Vec<f64>> = s.iter().map(|x| &x.value).collect();
        print_json(
            out,
            &json!({
                "samples": values,
                "polytope": p,
                "inside_fraction": cmp.inside_fraction,
                "coverage_gap": finite_or_null(cmp.coverage_gap),
            }),
        )
    } else {
        writeln!(out, "samples: {}", s.len())?;
        writeln!(out, "vertices: {}", p.vertices().len())?;
        writeln!(out, "inside_fraction: {}", cmp.inside_fraction)?;
        writeln!(out, "coverage_gap: {}", cmp.coverage_gap)?;
        Ok(())
    }
}

fn run_fixtures(name: &str, json: bool, out: &mut dyn Write) -> CmdResult {
    let list = if name == "all" {
        fixtures::load_all()?
    } else {
        vec![fixtures::load(name)?]
    };
    let mut outcomes = Vec::new();
    for f in &list {
        outcomes.extend(fixtures::run(f));
    }
    if json {
        print_json(out, &outcomes)?;
    } else {
        for o in &outcomes {
            let status = if o.passed { "PASS" } else { "FAIL" };
            writeln!(out, "{status} {}::{} [{}]", o.fixture, o.key, o.provenance)?;
            if !o.passed {
                writeln!(out, "  expected: {}", o.expected)?;
                writeln!(out, "  actual:   {}", o.actual)?;
            }
        }
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    if failed > 0 {
        return Err(Failure::Verify(format!("{failed} of {} checks failed", outcomes.len())));
    }
    Ok(())
}

fn term_order(kind: OrderKind, w: Option<Vec<i64>>, convention: Convention, n: usize) -> Result<TermOrder, Failure> {
    Ok(match kind {
        OrderKind::Lex => TermOrder::lex(n),
        OrderKind::Degrevlex => TermOrder::degrevlex(n),
        OrderKind::Weight => {
            let w = w.ok_or_else(|| Failure::Usage("--order weight needs --w".into()))?;
            check_len(&w, n)?;
            TermOrder::weight(w, convention)
        }
    })
}

fn check_len(w: &[i64], n: usize) -> Result<(), Failure> {
    if w.len() != n {
        return Err(Failure::Usage(format!("--w has {} entries for {n} variables", w.len())));
    }
    Ok(())
}

fn resolve_weight(ideal: &Ideal, args: &WeightArgs) -> Result<Vec<i64>, Failure> {
    match (&args.w, &args.matrix) {
        (Some(w), _) => {
            check_len(w, ideal.nvars())?;
            Ok(w.clone())
        }
        (None, Some(path)) => {
            let m: IntMatrix = read_matrix(path)?;
            Ok(weight_from_matrix(ideal, &m, args.convention)?)
        }
        (None, None) => Err(Failure::Usage("one of --w or --matrix is required".into())),
    }
}

fn print_ideal(out: &mut dyn Write, ideal: &Ideal, json: bool) -> CmdResult {
    if json {
        return print_json(out, ideal);
    }
    if ideal.is_zero() {
        writeln!(out, "0")?;
    }
    for g in ideal.gens() {
        writeln!(out, "{g}")?;
    }
    Ok(())
}

fn print_json<T: Serialize + ?Sized>(out: &mut dyn Write, value: &T) -> CmdResult {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn finite_or_null(x: f64) -> serde_json::Value {
    if x.is_finite() {
        json!(x)
    } else {
        serde_json::Value::Null
    }
}

fn join(v: &[i64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn convention_name(c: Convention) -> &'static str {
    match c {
        Convention::Min => "min",
        Convention::Max => "max",
    }
}
