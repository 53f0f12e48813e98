//! `quintic` — command-line entry point for the exact-arithmetic toolkit:
//! parametric solution families, identity verification, content-valuation
//! tables, pencil reduction, Pell-branch solutions, and bounded search.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on bad
//! arguments (including inputs outside an operation's domain).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use quintic_core::arith::{int, is_prime, parse_int, parse_rat, Int, Rat};
use quintic_core::family::{verify_family, ParametricFamily, VerifyOptions};
use quintic_core::fnseq::{fn_direct, phi_formula, phi_p};
use quintic_core::quadforms::{
    family_pell, family_pos1, family_pos1_symbolic, family_pos2, family_pos2_symbolic,
    family_pos3, family_pos3_symbolic, family_pos4, family_pos4_symbolic, QuadFormParams,
};
use quintic_core::quintics::{
    family_bremner, family_corollary_y, family_corollary_y_symbolic, family_fifth_general,
    family_fifth_general_symbolic, family_fifth_general_t, family_four_fifth,
    family_four_fifth_symbolic, family_mostafa, family_two_plus_minus,
    family_two_plus_minus_symbolic, QuinticEquation,
};
use quintic_core::reduction::{extract_h, solve_c1, solve_c1_c2, NullSolution};
use quintic_core::search::{
    conjecture_sweep, search_resumable, search_with_workers, sweep_row_csv, workers_from_env,
    BoundKind, Exclusions, SearchReport, SearchTask, SignMode, StopRule, SweepOptions,
    SWEEP_CSV_HEADER,
};
use quintic_core::{Error, Result};

#[derive(Parser)]
#[command(
    name = "quintic",
    version,
    about = "Exact-arithmetic toolkit for fifth-power and quadratic-form Diophantine equations"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a parametric solution family (verified before printing).
    Family(FamilyArgs),
    /// Verify a family's defining identity, content claim, coprimality,
    /// and random spot checks.
    Verify(VerifyArgs),
    /// Tabulate content valuations of the odd signed power-sum sequence:
    /// the closed formula against the expanded polynomial.
    FnVal(FnValArgs),
    /// Reduce a weighted fifth-power form along a null solution: pencil
    /// coefficients and the residual cubic.
    Reduce(ReduceArgs),
    /// Integer solutions of the quadratic-form branch driven by a Pell
    /// equation.
    Pell(PellArgs),
    /// Bounded exhaustive search for primitive solutions.
    Search(SearchArgs),
    /// Sweep weight tuples, searching each equation for one primitive
    /// solution.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct FamilyArgs {
    /// Family name: four-fifth[-symbolic], corollary-y[-symbolic], mostafa,
    /// fifth-general[-t|-symbolic], two-plus-minus[-symbolic], bremner.
    #[arg(long)]
    name: String,
    /// Rational parameter n, written as "a" or "a/b".
    #[arg(long)]
    n: Option<String>,
    /// Integer parameter m (fifth-general).
    #[arg(long)]
    m: Option<String>,
    /// Integer parameter a (corollary-y).
    #[arg(long)]
    a: Option<String>,
    /// Integer parameter b (corollary-y).
    #[arg(long)]
    b: Option<String>,
    /// Emit the family as JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Seed for the randomized spot checks.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Family name: pos1..pos4 (quadratic forms) or any quintic family
    /// accepted by `family --name`.
    #[arg(long)]
    family: String,
    /// Use the fully symbolic variant of the family.
    #[arg(long)]
    symbolic: bool,
    /// Parameters "n,a,b,c,d" for the concrete quadratic-form families.
    #[arg(long)]
    params: Option<String>,
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    m: Option<String>,
    #[arg(long)]
    a: Option<String>,
    #[arg(long)]
    b: Option<String>,
    /// Seed for the randomized spot checks.
    #[arg(long)]
    seed: Option<u64>,
    /// Override the family's claimed content divisor before verification.
    #[arg(long)]
    claim_content: Option<String>,
}

#[derive(Args)]
struct FnValArgs {
    /// Largest sequence index to tabulate.
    #[arg(long, default_value_t = 20)]
    n_max: u32,
    /// Largest prime to tabulate.
    #[arg(long, default_value_t = 20)]
    p_max: i64,
    /// Emit machine-readable CSV instead of aligned text.
    #[arg(long)]
    csv: bool,
}

#[derive(Args)]
struct ReduceArgs {
    /// Weights "a,b,c,d" of the fifth-power form.
    #[arg(long)]
    coeffs: String,
    /// Null solution "x1,x2,x3,x4" of the weighted form.
    #[arg(long)]
    null: String,
}

#[derive(Args)]
struct PellArgs {
    /// Positive non-square n of the target form.
    #[arg(long)]
    n: String,
    /// Form parameter c.
    #[arg(long)]
    c: String,
    /// Number of solutions to emit (successive Pell iterates).
    #[arg(long, default_value_t = 5)]
    count: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum BoundKindArg {
    MaxAbs,
    AbsSum,
}

#[derive(Clone, Copy, ValueEnum)]
enum SignModeArg {
    All,
    Nonneg,
}

#[derive(Clone, Copy, ValueEnum)]
enum StopArg {
    First,
    All,
}

#[derive(Args)]
struct SearchArgs {
    /// Weights "a,b,c,d"; a zero weight removes that coordinate from the
    /// search.
    #[arg(long)]
    coeffs: String,
    /// Overall rational scale of the weighted sum.
    #[arg(long, default_value = "1")]
    scale: String,
    /// Largest shell norm to enumerate.
    #[arg(long)]
    bound: u32,
    #[arg(long, value_enum, default_value_t = BoundKindArg::MaxAbs)]
    bound_kind: BoundKindArg,
    #[arg(long, value_enum, default_value_t = SignModeArg::All)]
    sign_mode: SignModeArg,
    #[arg(long, value_enum, default_value_t = StopArg::All)]
    stop: StopArg,
    /// Also report non-primitive solutions.
    #[arg(long)]
    include_nonprimitive: bool,
    /// Keep degenerate hits (zero coordinates, vanishing sub-sums, equal
    /// squares).
    #[arg(long)]
    allow_degenerate: bool,
    /// Candidate budget (default guard rail when omitted).
    #[arg(long)]
    budget: Option<u64>,
    /// Persist progress after each shell and resume from this file.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, default_value_t = 10)]
    a_max: u32,
    #[arg(long, default_value_t = 10)]
    d_max: u32,
    /// Per-tuple max-abs search bound.
    #[arg(long, default_value_t = 100)]
    bound: u32,
    /// Per-tuple candidate budget.
    #[arg(long, default_value_t = 2_000_000)]
    budget: u64,
    #[arg(long, value_enum, default_value_t = SignModeArg::All)]
    sign_mode: SignModeArg,
    /// Persist finished rows and resume from this file.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::Internal(_) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(cmd: Cmd) -> Result<ExitCode> {
    match cmd {
        Cmd::Family(args) => cmd_family(args),
        Cmd::Verify(args) => cmd_verify(args),
        Cmd::FnVal(args) => cmd_fn_val(args),
        Cmd::Reduce(args) => cmd_reduce(args),
        Cmd::Pell(args) => cmd_pell(args),
        Cmd::Search(args) => cmd_search(args),
        Cmd::Sweep(args) => cmd_sweep(args),
    }
}

fn req<'a>(opt: &'a Option<String>, flag: &str, family: &str) -> Result<&'a str> {
    opt.as_deref()
        .ok_or_else(|| Error::Domain(format!("family {family} requires --{flag}")))
}

fn build_quintic_family(
    name: &str,
    n: &Option<String>,
    m: &Option<String>,
    a: &Option<String>,
    b: &Option<String>,
) -> Result<ParametricFamily> {
    let rat = |s: &str| parse_rat(s);
    let integer = |s: &str| parse_int(s);
    match name {
        "four-fifth" => family_four_fifth(&rat(req(n, "n", name)?)?),
        "four-fifth-symbolic" => family_four_fifth_symbolic(),
        "corollary-y" => {
            family_corollary_y(&integer(req(a, "a", name)?)?, &integer(req(b, "b", name)?)?)
        }
        "corollary-y-symbolic" => family_corollary_y_symbolic(),
        "mostafa" => family_mostafa(),
        "fifth-general" => {
            family_fifth_general(&integer(req(m, "m", name)?)?, &integer(req(n, "n", name)?)?)
        }
        "fifth-general-t" => {
            family_fifth_general_t(&integer(req(m, "m", name)?)?, &integer(req(n, "n", name)?)?)
        }
        "fifth-general-symbolic" => family_fifth_general_symbolic(),
        "two-plus-minus" => family_two_plus_minus(&rat(req(n, "n", name)?)?),
        "two-plus-minus-symbolic" => family_two_plus_minus_symbolic(),
        "bremner" => family_bremner(),
        other => Err(Error::Domain(format!("unknown family name: {other}"))),
    }
}

fn cmd_family(args: FamilyArgs) -> Result<ExitCode> {
    let fam = build_quintic_family(&args.name, &args.n, &args.m, &args.a, &args.b)?;
    let mut opts = quintic_core::quintics::suggested_verify_options(&fam);
    if let Some(seed) = args.seed {
        opts.seed = seed;
    }
    let report = verify_family(&fam, &opts)?;
    if !report.passed() {
        println!("{report}");
        println!("FAIL {}", fam.name);
        return Ok(ExitCode::from(1));
    }
    if args.json {
        println!("{}", fam.to_json(true)?);
    } else {
        println!("family: {}", fam.name);
        for (k, v) in &fam.params {
            println!("param {k} = {v}");
        }
        for (sol_name, poly) in &fam.sols {
            println!("{sol_name} = {poly}");
        }
        println!("t = {}", fam.t_poly);
        println!("equation: {}", fam.equation);
        println!("claimed content divisor: {}", fam.claimed_content_divisor);
        println!("verified: PASS");
    }
    Ok(ExitCode::SUCCESS)
}

fn quad_params(spec: &str) -> Result<QuadFormParams> {
    let vals = parse_int_list(spec)?;
    let [n, a, b, c, d] = <[Int; 5]>::try_from(vals)
        .map_err(|_| Error::Domain("expected five comma-separated integers n,a,b,c,d".into()))?;
    QuadFormParams::new(n, a, b, c, d)
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode> {
    let quad = ["pos1", "pos2", "pos3", "pos4"].contains(&args.family.as_str());
    let mut fam = if quad {
        if args.symbolic {
            match args.family.as_str() {
                "pos1" => family_pos1_symbolic()?,
                "pos2" => family_pos2_symbolic()?,
                "pos3" => family_pos3_symbolic()?,
                _ => family_pos4_symbolic()?,
            }
        } else {
            let params = args.params.as_deref().ok_or_else(|| {
                Error::Domain("concrete quadratic-form families need --params n,a,b,c,d".into())
            })?;
            let p = quad_params(params)?;
            match args.family.as_str() {
                "pos1" => family_pos1(&p)?,
                "pos2" => family_pos2(&p)?,
                "pos3" => family_pos3(&p)?,
                _ => family_pos4(&p)?,
            }
        }
    } else {
        let name = if args.symbolic && !args.family.ends_with("-symbolic") {
            format!("{}-symbolic", args.family)
        } else {
            args.family.clone()
        };
        build_quintic_family(&name, &args.n, &args.m, &args.a, &args.b)?
    };
    if let Some(claim) = &args.claim_content {
        fam.claimed_content_divisor = parse_int(claim)?;
    }
    let mut opts: VerifyOptions = if quad {
        quintic_core::quadforms::suggested_verify_options(&fam)
    } else {
        quintic_core::quintics::suggested_verify_options(&fam)
    };
    if let Some(seed) = args.seed {
        opts.seed = seed;
    }
    let report = verify_family(&fam, &opts)?;
    println!("{report}");
    if report.passed() {
        println!("PASS {}", fam.name);
        Ok(ExitCode::SUCCESS)
    } else {
        println!("FAIL {}", fam.name);
        Ok(ExitCode::from(1))
    }
}

fn cmd_fn_val(args: FnValArgs) -> Result<ExitCode> {
    if args.n_max < 1 {
        return Err(Error::Domain("--n-max must be at least 1".into()));
    }
    let primes: Vec<Int> = (2..=args.p_max).map(int).filter(is_prime).collect();
    if primes.is_empty() {
        return Err(Error::Domain("--p-max admits no prime".into()));
    }
    if args.csv {
        println!("n,p,phi_formula,phi_direct,match");
    } else {
        println!("{:>4} {:>4} {:>11} {:>10} {:>5}", "n", "p", "phi_formula", "phi_direct", "ok");
    }
    let mut all_match = true;
    for n in 1..=args.n_max {
        let f = fn_direct(n)?;
        for p in &primes {
            let formula = phi_formula(n, p)?;
            let direct = phi_p(&f, p)?;
            let ok = formula == direct;
            all_match &= ok;
            if args.csv {
                println!("{n},{p},{formula},{direct},{ok}");
            } else {
                println!("{n:>4} {p:>4} {formula:>11} {direct:>10} {ok:>5}");
            }
        }
    }
    if all_match {
        Ok(ExitCode::SUCCESS)
    } else {
        println!("FAIL: formula and direct valuation disagree");
        Ok(ExitCode::from(1))
    }
}

fn parse_int_list(spec: &str) -> Result<Vec<Int>> {
    spec.split(',').map(|s| parse_int(s.trim())).collect()
}

fn cmd_reduce(args: ReduceArgs) -> Result<ExitCode> {
    let coeffs = <[Int; 4]>::try_from(parse_int_list(&args.coeffs)?)
        .map_err(|_| Error::Domain("--coeffs needs four comma-separated integers".into()))?;
    let xs = <[Int; 4]>::try_from(parse_int_list(&args.null)?)
        .map_err(|_| Error::Domain("--null needs four comma-separated integers".into()))?;
    let ns = NullSolution::new(coeffs, xs)?;
    let subs = match solve_c1_c2(&ns) {
        Ok(pair) => pair.to_vec(),
        Err(Error::Unsupported(_)) => vec![solve_c1(&ns)?],
        Err(e) => return Err(e),
    };
    let red = extract_h(&ns, &subs)?;
    for (i, c) in red.c.iter().enumerate() {
        println!("C{} = {}", i + 1, c);
    }
    println!("eliminated: {}", red.eliminated);
    println!("scale: {}", red.scale);
    println!("H = {}", red.h);
    Ok(ExitCode::SUCCESS)
}

fn cmd_pell(args: PellArgs) -> Result<ExitCode> {
    let n = parse_int(&args.n)?;
    let c = parse_int(&args.c)?;
    let params = QuadFormParams::new(n.clone(), int(0), int(2), c.clone(), int(0))?;
    println!("k,x,y,z,t,primitive");
    for k in 1..=args.count {
        let sol = family_pell(&n, &c, k)?;
        if !sol.verify(&params) {
            println!("FAIL at iterate {k}");
            return Ok(ExitCode::from(1));
        }
        println!(
            "{k},{},{},{},{},{}",
            sol.x,
            sol.y,
            sol.z,
            sol.t,
            sol.gcd_xyz() == int(1)
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn search_task_from_args(args: &SearchArgs) -> Result<SearchTask> {
    let coeffs = <[Int; 4]>::try_from(parse_int_list(&args.coeffs)?)
        .map_err(|_| Error::Domain("--coeffs needs four comma-separated integers".into()))?;
    let [a, b, c, d] = coeffs;
    let scale: Rat = parse_rat(&args.scale)?;
    let eq = QuinticEquation::new(a, b, c, d, scale)?;
    let mut task = SearchTask::new(eq, Int::from(args.bound))?;
    task.bound_kind = match args.bound_kind {
        BoundKindArg::MaxAbs => BoundKind::MaxAbs,
        BoundKindArg::AbsSum => BoundKind::AbsSum,
    };
    task.sign_mode = match args.sign_mode {
        SignModeArg::All => SignMode::All,
        SignModeArg::Nonneg => SignMode::Nonneg,
    };
    task.stop = match args.stop {
        StopArg::First => StopRule::First,
        StopArg::All => StopRule::All,
    };
    task.primitive_only = !args.include_nonprimitive;
    task.exclusions = if args.allow_degenerate {
        Exclusions::default()
    } else {
        Exclusions::all()
    };
    task.budget = args.budget;
    Ok(task)
}

fn print_search_report(report: &SearchReport) {
    let eq = &report.task.eq;
    println!("{SWEEP_CSV_HEADER}");
    for sol in &report.solutions {
        let mut xs: Vec<String> = sol.xs.iter().map(ToString::to_string).collect();
        while xs.len() < 4 {
            xs.push("0".into());
        }
        let norm: Int = match report.task.bound_kind {
            BoundKind::MaxAbs => sol
                .xs
                .iter()
                .map(|x| if x < &Int::from(0) { -x } else { x.clone() })
                .max()
                .unwrap_or_else(|| int(0)),
            BoundKind::AbsSum => sol
                .xs
                .iter()
                .map(|x| if x < &Int::from(0) { -x } else { x.clone() })
                .sum(),
        };
        println!(
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            eq.a,
            eq.b,
            eq.c,
            eq.d,
            xs[0],
            xs[1],
            xs[2],
            xs[3],
            sol.t,
            norm,
            sol.is_primitive(),
            report.wall_ms
        );
    }
    eprintln!(
        "# candidates={} squares_tested={} last_shell={} complete={} solutions={}",
        report.candidates,
        report.squares_tested,
        report.last_shell,
        report.complete,
        report.solutions.len()
    );
}

fn cmd_search(args: SearchArgs) -> Result<ExitCode> {
    let task = search_task_from_args(&args)?;
    let workers = workers_from_env();
    let report = match &args.checkpoint {
        Some(path) => search_resumable(&task, path, workers)?,
        None => search_with_workers(&task, workers)?,
    };
    print_search_report(&report);
    Ok(ExitCode::SUCCESS)
}

fn cmd_sweep(args: SweepArgs) -> Result<ExitCode> {
    let opts = SweepOptions {
        a_max: args.a_max,
        d_max: args.d_max,
        bound: args.bound,
        budget: args.budget,
        sign_mode: match args.sign_mode {
            SignModeArg::All => SignMode::All,
            SignModeArg::Nonneg => SignMode::Nonneg,
        },
        workers: workers_from_env(),
    };
    let rows = conjecture_sweep(&opts, args.checkpoint.as_deref())?;
    println!("{SWEEP_CSV_HEADER}");
    let mut found = 0usize;
    for row in &rows {
        if row.solution.is_some() {
            found += 1;
        }
        println!("{}", sweep_row_csv(row));
    }
    eprintln!("# tuples={} with_solution={}", rows.len(), found);
    Ok(ExitCode::SUCCESS)
}
