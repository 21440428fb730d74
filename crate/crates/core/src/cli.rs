//! Command-line driver: `chart`, `coaction`, `obstruction`, `bound`, `selftest`.
//!
//! Exit codes: 0 success, 2 usage or input error, 3 computation error or failed check.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use num_traits::One;

use crate::bpalgebra::{BpAlgebra, Generator, Monomial, Poly, Tensor};
use crate::chern::{lcm_bound, rational_obstruction, section_report, s_number, CobordismClass};
use crate::cobar::{differential_candidates, e2_chart, CobarComplex};
use crate::comodules::{printed_cross_check, CoactionMode, Comodule, ComoduleSpec, Family};
use crate::error::Error;
use crate::exactlin::{AbelianGroupPresentation, ExactRational, Partition};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_COMPUTATION: i32 = 3;

/// Environment variable holding the worker thread count.
pub const THREADS_ENV: &str = "SECTIONS_THREADS";

#[derive(Parser, Debug)]
#[command(name = "sections", version, about = "Adams-Novikov E2 charts and complex-section obstructions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// E2 chart of a comodule family.
    Chart(ChartArgs),
    /// Coaction of one comodule element, in right-normal form.
    Coaction(CoactionArgs),
    /// Rational and integral section report for a cobordism class.
    Obstruction(ObstructionArgs),
    /// lcm multiplier over the refinements of a partition.
    Bound(BoundArgs),
    /// Runs the golden checks and prints a pass/fail table.
    Selftest,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Derived,
    PaperTable,
}

impl From<Mode> for CoactionMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Derived => CoactionMode::Derived,
            Mode::PaperTable => CoactionMode::PaperTable,
        }
    }
}

#[derive(Args, Debug)]
pub struct FamilyArgs {
    /// sphere, mu, mtu, mtubar or mtu-pair.
    #[arg(long, default_value = "mtubar")]
    pub family: String,
    #[arg(long)]
    pub d: Option<u32>,
    #[arg(long)]
    pub r: Option<u32>,
    #[arg(long, default_value_t = 2)]
    pub p: u64,
    #[arg(long, value_enum, default_value_t = Mode::Derived)]
    pub mode: Mode,
    /// Skip comparing the derived coaction with the printed one.
    #[arg(long)]
    pub no_cross_check: bool,
}

#[derive(Args, Debug)]
pub struct ChartArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long = "smax", default_value_t = 3)]
    pub s_max: u32,
    #[arg(long = "tmax", default_value_t = 16)]
    pub t_max: u32,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, short)]
    pub output: Option<std::path::PathBuf>,
    /// Append the possible Adams differentials leaving the zero line.
    #[arg(long)]
    pub candidates: bool,
}

#[derive(Args, Debug)]
pub struct CoactionArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Monomial such as `B2*B1^6` or `v1 B1^7`.
    pub element: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct ObstructionArgs {
    /// Class such as `3*[CP1xCP1]-4*[CP2]`.
    pub class: String,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct BoundArgs {
    /// Parts such as `2,1`.
    #[arg(long)]
    pub partition: String,
    #[arg(long, default_value_t = 1)]
    pub r: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

enum Failure {
    Usage(String),
    Computation(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::Invalid(_) | Error::WindowViolation(_) => Failure::Usage(e.to_string()),
            _ => Failure::Computation(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if code == EXIT_OK {
                write!(out, "{e}")
            } else {
                write!(err, "{e}")
            };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Chart(a) => cmd_chart(a, out),
        Command::Coaction(a) => cmd_coaction(a, out),
        Command::Obstruction(a) => cmd_obstruction(a, out),
        Command::Bound(a) => cmd_bound(a, out),
        Command::Selftest => cmd_selftest(out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Computation(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_COMPUTATION
        }
    }
}

/// Entry point for the binary: sizes the thread pool from the environment, then runs.
pub fn main_with_env() -> i32 {
    let mut stdout = std::io::stdout().lock();
    let mut stderr = std::io::stderr().lock();
    if let Ok(v) = std::env::var(THREADS_ENV) {
        match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            _ => {
                let _ = writeln!(stderr, "error: {THREADS_ENV} must be a positive integer, got {v:?}");
                return EXIT_USAGE;
            }
        }
    }
    run(std::env::args_os(), &mut stdout, &mut stderr)
}

fn spec_for(f: &FamilyArgs, t_max: u32) -> std::result::Result<ComoduleSpec, Failure> {
    let family = Family::from_parts(&f.family, f.d, f.r)?;
    Ok(ComoduleSpec::new(family, f.p, t_max + t_max % 2)?)
}

/// Runs the printed cross-check when the derived mode is used at `p = 2` on a family with `B`s.
fn guard(f: &FamilyArgs, family: Family) -> Outcome {
    if f.no_cross_check || f.mode != Mode::Derived || f.p != 2 || family == Family::Sphere {
        return Ok(());
    }
    let d = match family {
        Family::MtuBar { d } => Some(d),
        _ => None,
    };
    let diffs = printed_cross_check(d)?;
    if diffs.is_empty() {
        Ok(())
    } else {
        Err(Failure::Computation(format!("derived and printed coactions diverge: {}", diffs.join("; "))))
    }
}

fn emit(text: &str, path: Option<&std::path::Path>, out: &mut dyn Write) -> Outcome {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn cmd_chart(a: &ChartArgs, out: &mut dyn Write) -> Outcome {
    let spec = spec_for(&a.family, a.t_max)?;
    guard(&a.family, spec.family)?;
    let cobar = CobarComplex::for_spec(spec, a.family.mode.into())?;
    let chart = e2_chart(&cobar, a.s_max, a.t_max)?;
    let mut text = match a.format {
        Format::Json => chart.to_json() + "\n",
        Format::Text => chart.to_text(),
    };
    if a.candidates {
        let found: Vec<_> = (0..=a.t_max)
            .step_by(2)
            .flat_map(|t| differential_candidates(&chart, t).into_iter().map(move |c| (t, c)))
            .collect();
        match a.format {
            Format::Json => {
                let v: Vec<_> = found
                    .iter()
                    .map(|(t, c)| json!({"source_t": t, "r": c.r, "s": c.s, "t": c.t, "group": c.group}))
                    .collect();
                text += &(serde_json::to_string_pretty(&v).expect("serializes") + "\n");
            }
            Format::Text => {
                for (t, c) in &found {
                    text += &format!("d{} candidate: (0,{t}) -> ({},{}) {}\n", c.r, c.s, c.t, c.group);
                }
            }
        }
    }
    emit(&text, a.output.as_deref(), out)
}

fn cmd_coaction(a: &CoactionArgs, out: &mut dyn Write) -> Outcome {
    let x = Monomial::parse(&a.element.replace('*', " "))?;
    let degree = x.degree(a.family.p);
    let spec = spec_for(&a.family, degree.max(2))?;
    guard(&a.family, spec.family)?;
    if !spec.contains(&x) {
        return Err(Failure::Usage(format!("{x} is not a basis element of {}", spec.family)));
    }
    let c = Comodule::new(spec, a.family.mode.into())?;
    let psi = c.coaction(&x)?;
    let shown = c.format_coaction(&psi);
    match a.format {
        Format::Text => writeln!(out, "{shown}")?,
        Format::Json => writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&json!({
                "family": spec.family.to_string(),
                "p": spec.p,
                "mode": c.mode().to_string(),
                "element": x.to_string(),
                "coaction": shown,
            }))
            .expect("serializes")
        )?,
    }
    Ok(())
}

fn cmd_obstruction(a: &ObstructionArgs, out: &mut dyn Write) -> Outcome {
    let c = CobordismClass::parse(&a.class)?;
    if c.dim() == 0 {
        return Err(Failure::Usage("class has dimension 0".into()));
    }
    let report = section_report(&c);
    match a.format {
        Format::Json => {
            let mut v = report.to_json_value();
            v["class"] = json!(c.to_string());
            writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("serializes"))?;
        }
        Format::Text => {
            writeln!(out, "class {c}, d = {}", report.d)?;
            writeln!(out, "rational_max_r = {}", report.rational_max_r)?;
            writeln!(out, "guaranteed_r = {} ({})", report.guaranteed_r, report.certificate)?;
            match (&report.multiplier, &report.multiplier_error) {
                (Some(m), _) => writeln!(out, "multiplier = {m}")?,
                (None, Some(e)) => writeln!(out, "multiplier unavailable: {e}")?,
                (None, None) => {}
            }
            for (r, ws) in &report.witnesses {
                let ws: Vec<String> = ws.iter().map(ToString::to_string).collect();
                writeln!(out, "r = {r}: nonzero {}", ws.join(" "))?;
            }
        }
    }
    Ok(())
}

fn cmd_bound(a: &BoundArgs, out: &mut dyn Write) -> Outcome {
    let i = Partition::parse(&a.partition)?;
    if i.is_empty() {
        return Err(Failure::Usage("empty partition".into()));
    }
    let b = lcm_bound(&i, a.r)?;
    match a.format {
        Format::Text => {
            writeln!(out, "C = {}", b.multiplier)?;
            for (j, v) in &b.table {
                writeln!(out, "{j}: {v}")?;
            }
        }
        Format::Json => {
            let table: Vec<_> = b
                .table
                .iter()
                .map(|(j, v)| json!({"partition": j.parts(), "a": v.to_string()}))
                .collect();
            let v = json!({
                "partition": i.parts(),
                "r": b.r,
                "multiplier": b.multiplier.to_string(),
                "table": table,
                "a_convention": "(d+1)!/|B_2d|, divided by p when d+1 = p^i; B_1 = -1/2",
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("serializes"))?;
        }
    }
    Ok(())
}

type Check = (&'static str, fn() -> crate::Result<bool>);

fn bar(d: u32, bound: u32, mode: CoactionMode) -> crate::Result<CobarComplex> {
    CobarComplex::for_spec(ComoduleSpec::new(Family::MtuBar { d }, 2, bound)?, mode)
}

fn golden_checks() -> Vec<Check> {
    vec![
        ("right unit: eta_R(v1) = v1 + 2 t1", || {
            let bp = BpAlgebra::with_bound(2, 8)?;
            let v1 = Poly::generator(Generator::V(1));
            let want = v1.add(&Poly::generator(Generator::T(1)).scale(&ExactRational::from_integer(2.into())));
            Ok(bp.eta_r(&v1)? == want)
        }),
        ("coproduct: t1 is primitive", || {
            let bp = BpAlgebra::with_bound(2, 8)?;
            let t1 = Monomial::generator(Generator::T(1));
            let one = ExactRational::one();
            let want = Tensor::word(vec![t1.clone(), Monomial::one()], one.clone())
                .add(&Tensor::word(vec![Monomial::one(), t1], one));
            Ok(bp.delta_t(1)? == want)
        }),
        ("coaction of B1 and the four MTUbar(6) coactions", || {
            let c = Comodule::new(ComoduleSpec::new(Family::MtuBar { d: 6 }, 2, 18)?, CoactionMode::Derived)?;
            let show = |x: &str| -> crate::Result<String> { Ok(c.format_coaction(&c.coaction(&Monomial::parse(x)?)?)) };
            Ok(printed_cross_check(Some(6))?.is_empty()
                && show("B1^7")? == "1 (x) B1^7"
                && show("B2 B1^6")? == "2 t1 (x) B1^7 + 1 (x) B2 B1^6"
                && show("B1^8")? == "8 t1 (x) B1^7 + 1 (x) B1^8"
                && show("v1 B1^7")? == "-2 t1 (x) B1^7 + 1 (x) v1 B1^7")
        }),
        ("d1 table (0 -> 1, t = 2d+6), d = 6: row B2 B1^7 = (7, 2, 0, 15)", || {
            let c = bar(6, 18, CoactionMode::PaperTable)?;
            let m = c.d1_matrix(0, 18)?;
            let row: Vec<i64> = (0..4).map(|i| i64::try_from(m.get(i, 2)).unwrap_or(i64::MAX)).collect();
            Ok(row == [7, 2, 0, 15])
        }),
        ("E2^{1,2d+4}(MTUbar(d)) = Z/2 for even d, 0 for odd d, d = 4..7", || {
            for d in 4..=7u32 {
                let g = bar(d, 2 * d + 4, CoactionMode::Derived)?.e2_group(1, 2 * d + 4)?;
                let want = if d % 2 == 0 { vec![2] } else { vec![] };
                if g != AbelianGroupPresentation::from_u64(0, &want) {
                    return Ok(false);
                }
            }
            Ok(true)
        }),
        ("MTUbar(6) zero line: Z, Z^2, Z^4", || {
            let c = bar(6, 18, CoactionMode::Derived)?;
            let ranks: Vec<usize> = [14, 16, 18]
                .iter()
                .map(|&t| c.e2_group(0, t).map(|g| g.free_rank))
                .collect::<crate::Result<_>>()?;
            Ok(ranks == [1, 2, 4])
        }),
        ("MTUbar(6): single d3 candidate (0,18) -> (3,20), Z/2", || {
            let chart = e2_chart(&bar(6, 20, CoactionMode::Derived)?, 4, 20)?;
            let found: Vec<_> = [14, 16, 18].iter().flat_map(|&t| differential_candidates(&chart, t)).collect();
            Ok(found.len() == 1 && (found[0].r, found[0].t, found[0].group.as_str()) == (3, 20, "Z/2"))
        }),
        ("sphere at p = 2: Z/2, Z/4, Z/2, Z/2 at (1,2), (1,4), (2,4), (3,6)", || {
            let s = CobarComplex::for_spec(ComoduleSpec::new(Family::Sphere, 2, 8)?, CoactionMode::Derived)?;
            let chart = e2_chart(&s, 4, 8)?;
            let g = |s, t| chart.get(s, t).torsion_u64();
            Ok(g(1, 2) == [2] && g(1, 4) == [4] && g(2, 4) == [2] && g(3, 6) == [2] && chart.get(2, 6).is_zero())
        }),
        ("Chern numbers of CP2, CP1xCP1; 3[CP1xCP1]-4[CP2] unobstructed at r = 1", || {
            let n = |c: &str, w: &[u32]| -> crate::Result<i64> {
                let v = s_number(&CobordismClass::parse(c)?, &Partition::new(w.to_vec())?);
                Ok(i64::try_from(&v).unwrap_or(i64::MAX))
            };
            let c = CobordismClass::parse("3*[CP1xCP1]-4*[CP2]")?;
            Ok(n("[CP2]", &[2])? == 3
                && n("[CP1xCP1]", &[1, 1])? == 4
                && n("[CP1xCP1]", &[2])? == 0
                && rational_obstruction(&c, 1)?.vanishes)
        }),
        ("lcm bound for (2) is 180", || {
            Ok(lcm_bound(&Partition::new(vec![2])?, 1)?.multiplier == 180.into())
        }),
    ]
}

fn cmd_selftest(out: &mut dyn Write) -> Outcome {
    let mut failed = 0;
    let checks = golden_checks();
    let width = checks.iter().map(|(n, _)| n.len()).max().unwrap_or(0);
    for (name, check) in checks {
        let status = match check() {
            Ok(true) => "pass".to_string(),
            Ok(false) => {
                failed += 1;
                "FAIL".to_string()
            }
            Err(e) => {
                failed += 1;
                format!("FAIL ({e})")
            }
        };
        writeln!(out, "{name:<width$}  {status}")?;
    }
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Computation(format!("{failed} check(s) failed")))
    }
}
