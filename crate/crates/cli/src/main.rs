use std::fmt::Display;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use umbral::enumeration::brute::{
    brute_force_lattice_paths_capped, brute_force_parking_capped, brute_force_reluctant_capped, DEFAULT_BRUTE_CAP,
};
use umbral::enumeration::partitions::{goncarov_partition_capped, DEFAULT_PARTITION_CAP};
use umbral::enumeration::{closed_form_count, count_bounded, BoundSpec, CountRecord, Family, TreeClass};
use umbral::goncarov::{delta_abel, goncarov_determinant, goncarov_recursion, latex_in_basic, BasisRecord, CheckReport};
use umbral::identities::{run_suite, Suite};
use umbral::operators::{expand_in_delta, Indicator};
use umbral::rational::{factorial, parse_rational};
use umbral::{BasicSequence, Grid, OperatorSpec, Poly, TruncSeries};

const DEGREE_CAP: usize = 16;
const BRUTE_CAP_VAR: &str = "UMBRAL_BRUTE_CAP";
const PARTITION_CAP_VAR: &str = "UMBRAL_PARTITION_CAP";

#[derive(Parser, Debug)]
#[command(name = "umbral", version, about = "Exact finite operator calculus and bounded order-statistics counting")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    format: Format,

    /// Allow degrees above 16.
    #[arg(long, global = true)]
    allow_large_degree: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
    Latex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Route {
    Det,
    Partition,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Oracle {
    Brute,
    ClosedForm,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the basic polynomial p_n of a delta operator.
    Basic {
        #[arg(long)]
        op: String,
        #[arg(long)]
        n: usize,
    },
    /// Print the Gončarov polynomial t_n(x; op, grid).
    Goncarov {
        #[arg(long)]
        op: String,
        /// `affine:a,b`, `list:z0,z1,...` or `zero`.
        #[arg(long)]
        grid: String,
        #[arg(long)]
        n: usize,
        /// Cross-check the recursion against another route.
        #[arg(long, value_enum)]
        route: Option<Route>,
    },
    /// Print the closed form on the grid z_i = a + b i.
    Abel {
        #[arg(long)]
        op: String,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long)]
        n: usize,
    },
    /// Count sequences whose order statistics are bounded.
    Count {
        #[arg(long)]
        op: String,
        /// `affine:a,b` (needs --n) or `list:z0,z1,...` with positive integers.
        #[arg(long)]
        bounds: String,
        #[arg(long)]
        n: Option<usize>,
        /// Size of the value set; defaults to the largest bound.
        #[arg(long)]
        universe: Option<u64>,
        /// Cross-check against an independent count.
        #[arg(long, value_enum)]
        oracle: Option<Oracle>,
    },
    /// Run an identity suite and report each case.
    Verify {
        /// biortho, diff-rel, shift, binomial, perturb, integral, appell or all.
        #[arg(long)]
        suite: String,
        #[arg(long)]
        op: String,
        #[arg(long)]
        grid: String,
        #[arg(long)]
        nmax: usize,
    },
    /// Expand a shift-invariant operator in powers of a delta operator.
    Expand {
        #[arg(long)]
        op: String,
        #[arg(long)]
        delta: String,
        #[arg(long)]
        nmax: usize,
    },
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<umbral::Error> for Failure {
    fn from(e: umbral::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

#[derive(Serialize, Deserialize)]
struct BasicRecord {
    operator: String,
    n: usize,
    coeffs: Poly,
}

#[derive(Serialize, Deserialize)]
struct VerifyRecord {
    suite: String,
    operator: String,
    grid: Grid,
    nmax: usize,
    passed: bool,
    cases: Vec<CheckReport>,
}

#[derive(Serialize, Deserialize)]
struct ExpandRecord {
    operator: String,
    delta: String,
    series: TruncSeries,
}

/// Compact JSON with keys sorted, so parsing and re-emitting is byte-identical.
fn emit_json<T: Serialize>(value: &T) -> Outcome {
    let canonical = serde_json::to_value(value).map_err(|e| Failure::Usage(e.to_string()))?;
    println!("{canonical}");
    Ok(())
}

fn cap_from_env(var: &str, default: u128) -> Result<u128, Failure> {
    match std::env::var(var) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("{var} must be a nonnegative integer, got `{s}`"))),
        Err(_) => Ok(default),
    }
}

fn check_degree(n: usize, allow: bool) -> Outcome {
    if n > DEGREE_CAP && !allow {
        return Err(Failure::Usage(format!(
            "degree {n} exceeds the cap of {DEGREE_CAP}; pass --allow-large-degree to override"
        )));
    }
    Ok(())
}

fn operator(name: &str) -> Result<OperatorSpec, Failure> {
    Ok(OperatorSpec::from_name(name)?)
}

fn grid(spec: &str) -> Result<Grid, Failure> {
    Ok(Grid::parse(spec)?)
}

fn mismatch(what: impl Display, a: impl Display, b: impl Display) -> Failure {
    Failure::Check(format!("{what} disagree: {a} vs {b}"))
}

fn print_poly(format: Format, label: &str, p: &Poly, basic_latex: Option<String>) {
    match format {
        Format::Latex => match basic_latex {
            Some(alt) => println!("{label} = {} = {alt}", p.to_latex("x")),
            None => println!("{label} = {}", p.to_latex("x")),
        },
        _ => println!("{label} = {p}"),
    }
}

fn run_basic(format: Format, op: &str, n: usize) -> Outcome {
    let op = operator(op)?;
    let p = BasicSequence::new(&op)?.get(n);
    match format {
        Format::Json => emit_json(&BasicRecord { operator: op.name(), n, coeffs: p }),
        Format::Latex => {
            print_poly(format, &format!("p_{{{n}}}(x)"), &p, None);
            Ok(())
        }
        Format::Human => {
            print_poly(format, &format!("p_{n}(x)"), &p, None);
            Ok(())
        }
    }
}

fn run_goncarov(format: Format, op: &str, grid_spec: &str, n: usize, route: Option<Route>) -> Outcome {
    let op = operator(op)?;
    let grid = grid(grid_spec)?;
    let t = goncarov_recursion(&op, &grid, n)?;
    if let Some(route) = route {
        let other = match route {
            Route::Det => goncarov_determinant(&op, &grid, n)?,
            Route::Partition => {
                let cap = cap_from_env(PARTITION_CAP_VAR, DEFAULT_PARTITION_CAP as u128)?;
                goncarov_partition_capped(&op, &grid, n, cap.min(usize::MAX as u128) as usize)?
            }
        };
        if other != t {
            return Err(mismatch(format!("recursion and {route:?} routes"), &t, &other));
        }
        eprintln!("route {} agrees with the recursion", route_name(route));
    }
    match format {
        Format::Json => emit_json(&BasisRecord::new(&op, &grid, n, t)),
        Format::Latex => {
            print_poly(format, &format!("t_{{{n}}}(x)"), &t, Some(latex_in_basic(&op, &grid, n)?));
            Ok(())
        }
        Format::Human => {
            print_poly(format, &format!("t_{n}(x)"), &t, None);
            Ok(())
        }
    }
}

fn route_name(route: Route) -> &'static str {
    match route {
        Route::Det => "det",
        Route::Partition => "partition",
    }
}

fn run_abel(format: Format, op: &str, a: &str, b: &str, n: usize) -> Outcome {
    let op = operator(op)?;
    let (a, b) = (parse_rational(a)?, parse_rational(b)?);
    let t = delta_abel(&op, &a, &b, n)?;
    let grid = Grid::affine(a, b);
    match format {
        Format::Json => emit_json(&BasisRecord::new(&op, &grid, n, t)),
        Format::Latex => {
            print_poly(format, &format!("t_{{{n}}}(x)"), &t, None);
            Ok(())
        }
        Format::Human => {
            print_poly(format, &format!("t_{n}(x)"), &t, None);
            Ok(())
        }
    }
}

fn bound_int(s: &str) -> Result<u64, Failure> {
    s.trim()
        .parse()
        .map_err(|_| Failure::Usage(format!("bounds must be positive integers, got `{s}`")))
}

/// `(a, b)` of an `affine:a,b` bound spec.
fn affine_params(spec: &str) -> Result<Option<(u64, u64)>, Failure> {
    let Some(rest) = spec.strip_prefix("affine:") else {
        return Ok(None);
    };
    let parts: Vec<&str> = rest.split(',').collect();
    let [a, b] = parts.as_slice() else {
        return Err(Failure::Usage(format!("affine bounds need `affine:a,b`, got `{spec}`")));
    };
    Ok(Some((bound_int(a)?, bound_int(b)?)))
}

fn parse_bounds(spec: &str, n: Option<usize>, universe: Option<u64>) -> Result<BoundSpec, Failure> {
    let bounds: Vec<u64> = if let Some((a, b)) = affine_params(spec)? {
        let n = n.ok_or_else(|| Failure::Usage("affine bounds need --n".into()))?;
        (0..n as u64).map(|i| a + b * i).collect()
    } else if let Some(rest) = spec.strip_prefix("list:") {
        let list: Vec<u64> = if rest.trim().is_empty() {
            Vec::new()
        } else {
            rest.split(',').map(bound_int).collect::<Result<_, _>>()?
        };
        if let Some(n) = n {
            if n != list.len() {
                return Err(Failure::Usage(format!("--n {n} does not match {} listed bounds", list.len())));
            }
        }
        list
    } else {
        return Err(Failure::Usage(format!(
            "bounds must be `affine:a,b` or `list:z0,z1,...`, got `{spec}`"
        )));
    };
    let tight = bounds.last().copied().unwrap_or(1);
    Ok(BoundSpec::new(bounds, universe.unwrap_or(tight))?)
}

fn brute_count(op: &OperatorSpec, bounds: &BoundSpec) -> Result<BigInt, Failure> {
    let cap = cap_from_env(BRUTE_CAP_VAR, DEFAULT_BRUTE_CAP)?;
    let n = bounds.len();
    let class = TreeClass::ALL.into_iter().find(|c| c.operator_name() == op.name());
    let count = match (op.indicator(), class) {
        (Indicator::ForwardDifference, _) => {
            BigInt::from(brute_force_lattice_paths_capped(bounds, true, cap)?) * factorial(n)
        }
        (Indicator::BackwardDifference, _) => {
            BigInt::from(brute_force_lattice_paths_capped(bounds, false, cap)?) * factorial(n)
        }
        (_, Some(TreeClass::Singleton)) => BigInt::from(brute_force_parking_capped(bounds, cap)?),
        (_, Some(class)) => BigInt::from(brute_force_reluctant_capped(class, bounds, cap)?),
        _ => {
            return Err(Failure::Usage(format!(
                "no brute-force oracle for `{}`; oracles exist for D, abel:a=-1, laguerre, lambert, touchard, fwd-diff and bwd-diff",
                op.name()
            )))
        }
    };
    Ok(count)
}

fn closed_count(op: &OperatorSpec, spec: &str, bounds: &BoundSpec) -> Result<BigInt, Failure> {
    let family = Family::ALL
        .into_iter()
        .find(|f| f.operator().name() == op.name())
        .ok_or_else(|| Failure::Usage(format!("no closed form for `{}`", op.name())))?;
    let (a, b) = affine_params(spec)?
        .ok_or_else(|| Failure::Usage("the closed-form oracle needs affine bounds `affine:a,b`".into()))?;
    let n = bounds.len();
    Ok(closed_form_count(family, a, b, n)? * family.labeling_factor(n))
}

fn run_count(
    format: Format,
    op: &str,
    spec: &str,
    n: Option<usize>,
    universe: Option<u64>,
    oracle: Option<Oracle>,
) -> Outcome {
    let op = operator(op)?;
    let bounds = parse_bounds(spec, n, universe)?;
    let count = count_bounded(&op, &bounds)?;
    if let Some(oracle) = oracle {
        let (name, other) = match oracle {
            Oracle::Brute => ("brute", brute_count(&op, &bounds)?),
            Oracle::ClosedForm => ("closed-form", closed_count(&op, spec, &bounds)?),
        };
        if other != count {
            return Err(mismatch(format!("Gončarov and {name} counts"), &count, &other));
        }
        eprintln!("{name} oracle agrees: {other}");
    }
    match format {
        Format::Json => emit_json(&CountRecord::new(&op, &bounds, &count, "goncarov")),
        _ => {
            println!("{count}");
            Ok(())
        }
    }
}

fn run_verify(format: Format, suite: &str, op: &str, grid_spec: &str, nmax: usize) -> Outcome {
    let op = operator(op)?;
    let grid = grid(grid_spec)?;
    let suites: Vec<Suite> = if suite == "all" { Suite::ALL.to_vec() } else { vec![suite.parse()?] };
    let mut cases = Vec::new();
    for s in &suites {
        cases.extend(run_suite(*s, &op, &grid, nmax)?);
    }
    let failed = cases.iter().filter(|c| !c.passed).count();
    match format {
        Format::Json => emit_json(&VerifyRecord {
            suite: suite.to_string(),
            operator: op.name(),
            grid: grid.clone(),
            nmax,
            passed: failed == 0,
            cases,
        })?,
        _ => {
            for c in &cases {
                match &c.detail {
                    Some(d) => println!("{} {}: {d}", if c.passed { "PASS" } else { "FAIL" }, c.name),
                    None => println!("{} {}", if c.passed { "PASS" } else { "FAIL" }, c.name),
                }
            }
            println!("{suite} on {op} / {grid}: {} cases, {failed} failed", cases.len());
        }
    }
    if failed > 0 {
        return Err(Failure::Check(format!("{failed} case(s) failed")));
    }
    Ok(())
}

fn run_expand(format: Format, op: &str, delta: &str, nmax: usize) -> Outcome {
    let s = operator(op)?;
    let d = operator(delta)?;
    let series = expand_in_delta(&s, &d, nmax)?;
    match format {
        Format::Json => emit_json(&ExpandRecord { operator: s.name(), delta: d.name(), series }),
        Format::Latex => {
            let p = Poly::new(series.coeffs().to_vec());
            println!("{} = {} + O(\\mathfrak{{d}}^{{{}}})", s.name(), p.to_latex("\\mathfrak{d}"), nmax + 1);
            Ok(())
        }
        Format::Human => {
            let p = Poly::new(series.coeffs().to_vec());
            println!("{} = {} + O(d^{})", s.name(), p.to_string().replace('x', "d"), nmax + 1);
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Outcome {
    let format = cli.format;
    let allow = cli.allow_large_degree;
    match cli.command {
        Command::Basic { op, n } => {
            check_degree(n, allow)?;
            run_basic(format, &op, n)
        }
        Command::Goncarov { op, grid, n, route } => {
            check_degree(n, allow)?;
            run_goncarov(format, &op, &grid, n, route)
        }
        Command::Abel { op, a, b, n } => {
            check_degree(n, allow)?;
            run_abel(format, &op, &a, &b, n)
        }
        Command::Count { op, bounds, n, universe, oracle } => {
            if let Some(n) = n {
                check_degree(n, allow)?;
            }
            run_count(format, &op, &bounds, n, universe, oracle)
        }
        Command::Verify { suite, op, grid, nmax } => {
            check_degree(nmax, allow)?;
            run_verify(format, &suite, &op, &grid, nmax)
        }
        Command::Expand { op, delta, nmax } => {
            check_degree(nmax, allow)?;
            run_expand(format, &op, &delta, nmax)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
