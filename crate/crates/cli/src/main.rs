use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgAction, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::json;
use torsionlab::algebra::{parse_ratfunc, GaussianRational, RatFunc, VarNames};
use torsionlab::checks::{run_suite, Suite};
use torsionlab::dynamics::{
    dynamical_torsion_truncated, lefschetz_zeta, lefschetz_zeta_symbolic, torus_action, zeta_r,
    CohomologyAction, CAT_MAP,
};
use torsionlab::io::{self, ActionFile, ComplexFile, OrbitFile, RatFuncFile, RepFile, RepSpec};
use torsionlab::twisted::{
    arg_invariant, milnor_turaev, EulerShift, OrientationSign, Representation, TorsionValue,
};
use torsionlab::Error;

/// Exact combinatorial torsion invariants.
///
/// Exit status: 0 on success, 1 for invalid input, 2 for mathematical
/// failures such as a non-acyclic complex or a pole.
#[derive(Parser)]
#[command(name = "torsionlab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Output {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Milnor–Turaev torsion of a group-ring complex at a representation.
    Torsion {
        complex: PathBuf,
        rep: PathBuf,
        /// Euler-structure shift, one integer per torus variable.
        #[arg(long, num_args = 1.., allow_negative_numbers = true)]
        shift: Vec<i64>,
        /// Homology orientation sign, 1 or -1.
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        orientation: i64,
        /// Evaluate a symbolic rank-one representation at this point; repeat
        /// once per variable, each value `re` or `re,im`.
        #[arg(long, allow_hyphen_values = true, action = ArgAction::Append)]
        at: Vec<String>,
        #[arg(long, value_enum, default_value = "text")]
        output: Output,
    },
    /// Twisted Lefschetz zeta function of a cohomology action.
    Zeta {
        /// Action file; omit with --cat-map.
        action: Option<PathBuf>,
        /// Use the action of the cat map [[2, 1], [1, 1]] on the 2-torus.
        #[arg(long)]
        cat_map: bool,
        /// Exact evaluation point, e.g. `1/2` or `1/2,1/3` for a complex value.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "symbolic")]
        at: Option<String>,
        /// Print the rational function.
        #[arg(long)]
        symbolic: bool,
    },
    /// Truncated dynamical torsion from closed-orbit data.
    Dyn {
        orbits: PathBuf,
        rep: PathBuf,
        /// Filtration bound R of the truncation.
        #[arg(long)]
        bound: f64,
        /// Complex of rest points; omitted when the flow has none.
        #[arg(long)]
        rest_complex: Option<PathBuf>,
        /// Point for a symbolic rank-one representation, repeated per variable.
        #[arg(long, allow_hyphen_values = true, action = ArgAction::Append)]
        at: Vec<String>,
        /// Rest-point orientation sign, 1 or -1.
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        orientation: i64,
        #[arg(long, value_enum, default_value = "text")]
        output: Output,
    },
    /// Runs invariant suites and prints a pass/fail report.
    Check {
        /// all, algebra, torsion, dynamics or corpus.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Phase invariant: the argument change of T along a path, mod π.
    Phase {
        /// Rational function file, or an inline expression in one variable.
        torsion: String,
        /// Path samples as `re,im` pairs; takes every remaining argument.
        #[arg(long, num_args = 2.., required = true, allow_hyphen_values = true)]
        path: Vec<String>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: if e.is_input_error() { 1 } else { 2 },
            message: e.to_string(),
        }
    }
}

fn input(message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        message: message.into(),
    }
}

fn parse_point(s: &str) -> Result<Complex64, Failure> {
    let bad = || {
        input(format!(
            "invalid complex number '{s}', expected re or re,im"
        ))
    };
    let mut parts = s.split(',');
    let re: f64 = parts
        .next()
        .ok_or_else(bad)?
        .trim()
        .parse()
        .map_err(|_| bad())?;
    let im: f64 = match parts.next() {
        Some(p) => p.trim().parse().map_err(|_| bad())?,
        None => 0.0,
    };
    if parts.next().is_some() || !re.is_finite() || !im.is_finite() {
        return Err(bad());
    }
    Ok(Complex64::new(re, im))
}

fn parse_points(v: &[String]) -> Result<Vec<Complex64>, Failure> {
    v.iter().map(|s| parse_point(s)).collect()
}

fn load_rep(path: &Path) -> Result<RepSpec, Failure> {
    Ok(io::read_json::<RepFile>(path)?.to_spec()?)
}

fn rep_names(spec: &RepSpec) -> VarNames {
    match spec {
        RepSpec::Rank1Symbolic(r) | RepSpec::Rank1Numeric(r, _) => r.names().clone(),
        RepSpec::Matrix(_) => VarNames(Vec::new()),
    }
}

fn print_numeric(z: Complex64, output: Output, extra: serde_json::Value) {
    match output {
        Output::Text => println!(
            "{} {} {}i",
            z.re,
            if z.im < 0.0 { "-" } else { "+" },
            z.im.abs()
        ),
        Output::Json => {
            let mut v =
                json!({ "format": io::FORMAT_VERSION, "kind": "numeric", "re": z.re, "im": z.im });
            if let (Some(obj), serde_json::Value::Object(more)) = (v.as_object_mut(), extra) {
                obj.extend(more);
            }
            println!("{v}");
        }
    }
}

fn print_symbolic(f: &RatFunc, names: &VarNames, output: Output) {
    let num = f.numer().display_with(names).to_string();
    let den = f.denom().display_with(names).to_string();
    match output {
        Output::Text => {
            println!("torsion: {}", f.display_with(names));
            println!("numerator: {num}");
            println!("denominator: {den}");
        }
        Output::Json => println!(
            "{}",
            json!({
                "format": io::FORMAT_VERSION,
                "kind": "symbolic",
                "variables": names.0,
                "expr": f.display_with(names).to_string(),
                "numerator": num,
                "denominator": den,
            })
        ),
    }
}

fn orientation(o: i64) -> Result<OrientationSign, Failure> {
    OrientationSign::from_i64(o).map_err(|_| input(format!("orientation must be 1 or -1, got {o}")))
}

fn cmd_torsion(
    complex: &Path,
    rep: &Path,
    shift: &[i64],
    o: i64,
    at: &[String],
    output: Output,
) -> Result<(), Failure> {
    let c = io::read_json::<ComplexFile>(complex)?.to_complex()?;
    let spec = load_rep(rep)?;
    spec.check_against(&c)?;
    let o = orientation(o)?;
    let point = parse_points(at)?;
    let rho = if point.is_empty() {
        spec.representation()?
    } else {
        Representation::Numeric(spec.numeric(Some(&point))?)
    };
    let nvars = rep_names(&spec).len();
    let shift = if shift.is_empty() {
        EulerShift(vec![0; nvars])
    } else {
        EulerShift(shift.to_vec())
    };
    if shift.0.len() != nvars && !shift.is_zero() {
        return Err(input(format!(
            "--shift takes {nvars} integers for this representation"
        )));
    }
    match milnor_turaev(&c, &rho, &shift, o)? {
        TorsionValue::Symbolic(f) => print_symbolic(&f, &rep_names(&spec), output),
        TorsionValue::Numeric(z) => print_numeric(z, output, json!({})),
    }
    Ok(())
}

fn cmd_zeta(
    action: Option<&Path>,
    cat_map: bool,
    at: Option<&str>,
    symbolic: bool,
) -> Result<(), Failure> {
    let act: CohomologyAction<GaussianRational> = match (action, cat_map) {
        (Some(_), true) => return Err(input("give either an action file or --cat-map")),
        (Some(p), false) => io::read_json::<ActionFile>(p)?.to_action()?,
        (None, true) => torus_action(CAT_MAP),
        (None, false) => return Err(input("an action file or --cat-map is required")),
    };
    match at {
        Some(z) => {
            let z: GaussianRational = z.parse()?;
            println!("{}", lefschetz_zeta(&act, &z)?);
        }
        None if symbolic => println!("{}", lefschetz_zeta_symbolic(&act)),
        None => return Err(input("give --at z or --symbolic")),
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_dyn(
    orbits: &Path,
    rep: &Path,
    bound: f64,
    rest: Option<&Path>,
    at: &[String],
    o: i64,
    output: Output,
) -> Result<(), Failure> {
    let series = io::read_json::<OrbitFile>(orbits)?.to_series()?;
    let spec = load_rep(rep)?;
    let point = parse_points(at)?;
    let rho = spec.numeric(if point.is_empty() { None } else { Some(&point) })?;
    let rest = match rest {
        Some(p) => {
            let c = io::read_json::<ComplexFile>(p)?.to_complex()?;
            spec.check_against(&c)?;
            Some(c)
        }
        None => None,
    };
    let t = dynamical_torsion_truncated(rest.as_ref(), &series, &rho, bound, orientation(o)?)?;
    // The llet product over period-one orbits; a vanishing factor is an error.
    let zr = zeta_r(&series, &rho, bound)?;
    let tail = |x: Option<f64>| x.map_or_else(|| "unavailable".to_string(), |v| format!("{v:e}"));
    match output {
        Output::Text => {
            print_numeric(t.value, output, json!({}));
            println!(
                "series P_X;R: {} {} {}i",
                t.series.re,
                if t.series.im < 0.0 { "-" } else { "+" },
                t.series.im.abs()
            );
            println!("series tail bound: {}", tail(t.series_tail));
            println!("value tail bound: {}", tail(t.value_tail));
            println!(
                "zeta_R: {} {} {}i",
                zr.re,
                if zr.im < 0.0 { "-" } else { "+" },
                zr.im.abs()
            );
        }
        Output::Json => print_numeric(
            t.value,
            output,
            json!({
                "series": [t.series.re, t.series.im],
                "rest_torsion": [t.rest_torsion.re, t.rest_torsion.im],
                "series_tail": t.series_tail,
                "value_tail": t.value_tail,
                "zeta_r": [zr.re, zr.im],
            }),
        ),
    }
    Ok(())
}

fn cmd_check(suite: &str, seed: u64) -> Result<(), Failure> {
    let suite: Suite = suite.parse()?;
    let report = run_suite(suite, seed, &io::corpus_dir());
    print!("{report}");
    if report.ok() {
        Ok(())
    } else {
        Err(Failure {
            code: 2,
            message: "some invariants failed".into(),
        })
    }
}

fn cmd_phase(torsion: &str, path: &[String]) -> Result<(), Failure> {
    let t = if Path::new(torsion).is_file() {
        io::read_json::<RatFuncFile>(Path::new(torsion))?
            .to_ratfunc()?
            .0
    } else {
        parse_ratfunc(torsion, None)?.0
    };
    let path = parse_points(path)?;
    println!("{:.10}", arg_invariant(&t, &path)?);
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Torsion {
            complex,
            rep,
            shift,
            orientation,
            at,
            output,
        } => cmd_torsion(&complex, &rep, &shift, orientation, &at, output),
        Command::Zeta {
            action,
            cat_map,
            at,
            symbolic,
        } => cmd_zeta(action.as_deref(), cat_map, at.as_deref(), symbolic),
        Command::Dyn {
            orbits,
            rep,
            bound,
            rest_complex,
            at,
            orientation,
            output,
        } => cmd_dyn(
            &orbits,
            &rep,
            bound,
            rest_complex.as_deref(),
            &at,
            orientation,
            output,
        ),
        Command::Check { suite, seed } => cmd_check(&suite, seed),
        Command::Phase { torsion, path } => cmd_phase(&torsion, &path),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
