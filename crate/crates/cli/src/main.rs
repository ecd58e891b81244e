//! The `spm` command line: solve, generate, verify, and bench.
//!
//! Exit codes: 0 success, 1 parse or parameter error, 2 precondition
//! mismatch or failed verification, 3 size guard exceeded.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use spm_cli::bench::{known_optimum, BenchRecord, CSV_HEADER};
use spm_cli::builtins::builtin_source;
use spm_cli::formats::{
    parse_instance, parse_mkc, parse_multigraph, parse_sidecar, parse_solution, serialize_instance,
    serialize_sidecar, serialize_solution, MkcInstance, ParseError, Sidecar,
};
use spm_core::graph::{BipartiteInstance, Multigraph, ProblemKind, Solution};
use spm_core::reductions::{
    certify_kcover_identity, certify_vc_identity, gen_biregular, gen_tight_example,
    incidence_instance, kcover_gadget, vc_gadget, ReductionError,
};
use spm_core::solvers::{
    solve_32_regular, solve_a2, solve_auto, solve_brute_2pm, solve_brute_2ppm,
    solve_continuous_greedy, solve_d2_regular_d4, solve_greedy, CgParams, SolveError, SolveOutcome,
    Strategy,
};

#[derive(Parser)]
#[command(
    name = "spm",
    version,
    about = "Second price matching solvers and instance tools"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance and write the solution file
    Solve {
        /// Instance file in the `p spm` format
        instance: PathBuf,
        /// Which problem to solve
        #[arg(long, value_enum, default_value_t = KindArg::TwoPpm)]
        kind: KindArg,
        /// Solving strategy
        #[arg(long, value_enum, default_value_t = AlgoArg::Auto)]
        algo: AlgoArg,
        /// RNG seed (default: $SPM_SEED, then 0)
        #[arg(long)]
        seed: Option<u64>,
        /// Continuous-greedy time steps
        #[arg(long, default_value_t = 50)]
        cg_steps: usize,
        /// Continuous-greedy samples per estimate
        #[arg(long, default_value_t = 64)]
        cg_samples: usize,
        /// Solution file destination (stdout when omitted)
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Generate instance files
    Generate {
        /// What to generate
        #[arg(long = "type", value_enum)]
        kind: GenType,
        /// Goods count (biregular)
        #[arg(long)]
        na: Option<usize>,
        /// Left degree (biregular, incidence)
        #[arg(long)]
        d: Option<usize>,
        /// Disjoint copies (tight) or universe copies (kcover-gadget)
        #[arg(long, default_value_t = 1)]
        copies: usize,
        /// Source: a builtin name (k4, k33, petersen) or a file path
        #[arg(long)]
        src: Option<String>,
        /// RNG seed (default: $SPM_SEED, then 0)
        #[arg(long)]
        seed: Option<u64>,
        /// Instance file destination; gadgets also write `<out>.meta`
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Check a solution file or certify a gadget identity
    Verify {
        /// Instance file
        #[arg(long)]
        instance: PathBuf,
        /// Solution file to validate against the instance
        #[arg(long)]
        solution: Option<PathBuf>,
        /// Identity to certify by brute force
        #[arg(long, value_enum)]
        identity: Option<IdentityArg>,
        /// Sidecar path (default: `<instance>.meta`)
        #[arg(long)]
        meta: Option<PathBuf>,
    },
    /// Solve a directory of instances and write a CSV report
    Bench {
        /// Directory of `.spm` instance files
        #[arg(long)]
        dir: PathBuf,
        /// Comma-separated strategies
        #[arg(long, value_delimiter = ',', default_value = "auto")]
        algos: Vec<AlgoArg>,
        /// Comma-separated seeds
        #[arg(long, value_delimiter = ',', default_value = "0")]
        seeds: Vec<u64>,
        /// Which problem to solve
        #[arg(long, value_enum, default_value_t = KindArg::TwoPpm)]
        kind: KindArg,
        /// CSV destination
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    #[value(name = "2pm")]
    TwoPm,
    #[value(name = "2ppm")]
    TwoPpm,
}

impl From<KindArg> for ProblemKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::TwoPm => ProblemKind::TwoPm,
            KindArg::TwoPpm => ProblemKind::TwoPpm,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AlgoArg {
    Auto,
    #[value(name = "32regular")]
    ThreeTwoRegular,
    #[value(name = "d2regular")]
    DTwoRegular,
    A2,
    Greedy,
    Cg,
    Brute,
}

impl AlgoArg {
    fn name(self) -> &'static str {
        match self {
            AlgoArg::Auto => "auto",
            AlgoArg::ThreeTwoRegular => "32regular",
            AlgoArg::DTwoRegular => "d2regular",
            AlgoArg::A2 => "a2",
            AlgoArg::Greedy => "greedy",
            AlgoArg::Cg => "cg",
            AlgoArg::Brute => "brute",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GenType {
    Biregular,
    Tight,
    #[value(name = "vc-gadget")]
    VcGadget,
    #[value(name = "kcover-gadget")]
    KcoverGadget,
    Incidence,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum IdentityArg {
    Vc,
    Kcover,
}

/// An error with the exit code it maps to.
struct CliError {
    code: u8,
    msg: String,
}

impl CliError {
    fn param(msg: impl Into<String>) -> Self {
        Self {
            code: 1,
            msg: msg.into(),
        }
    }

    fn verification(msg: impl Into<String>) -> Self {
        Self {
            code: 2,
            msg: msg.into(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self {
            code: 1,
            msg: e.to_string(),
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        Self {
            code: 1,
            msg: e.to_string(),
        }
    }
}

impl From<SolveError> for CliError {
    fn from(e: SolveError) -> Self {
        let code = match e {
            SolveError::Precondition(_) => 2,
            SolveError::SearchSpace { .. } => 3,
        };
        Self {
            code,
            msg: e.to_string(),
        }
    }
}

impl From<ReductionError> for CliError {
    fn from(e: ReductionError) -> Self {
        let code = match &e {
            ReductionError::TooLarge { .. } => 3,
            ReductionError::Solve(inner) => CliError::from(inner.clone()).code,
            ReductionError::InvalidSolution(_) => 2,
            _ => 1,
        };
        Self {
            code,
            msg: e.to_string(),
        }
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
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.msg);
            ExitCode::from(e.code)
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Solve {
            instance,
            kind,
            algo,
            seed,
            cg_steps,
            cg_samples,
            output,
        } => cmd_solve(
            &instance,
            kind.into(),
            algo,
            resolve_seed(seed),
            cg_steps,
            cg_samples,
            output,
        ),
        Command::Generate {
            kind,
            na,
            d,
            copies,
            src,
            seed,
            out,
        } => cmd_generate(kind, na, d, copies, src, resolve_seed(seed), out),
        Command::Verify {
            instance,
            solution,
            identity,
            meta,
        } => cmd_verify(&instance, solution, identity, meta),
        Command::Bench {
            dir,
            algos,
            seeds,
            kind,
            out,
        } => cmd_bench(&dir, &algos, &seeds, kind.into(), &out),
    }
}

fn resolve_seed(flag: Option<u64>) -> u64 {
    flag.or_else(|| std::env::var("SPM_SEED").ok().and_then(|s| s.parse().ok()))
        .unwrap_or(0)
}

fn read_instance(path: &Path) -> Result<BipartiteInstance, CliError> {
    Ok(parse_instance(&fs::read_to_string(path)?)?)
}

fn dispatch(
    inst: &BipartiteInstance,
    kind: ProblemKind,
    algo: AlgoArg,
    cg: CgParams,
) -> Result<SolveOutcome, SolveError> {
    let wrap = |solution: Solution, strategy: Strategy| SolveOutcome {
        solution: Solution { kind, ..solution },
        strategy,
        guarantee: strategy.guarantee(kind),
    };
    match algo {
        AlgoArg::Auto => solve_auto(inst, kind),
        AlgoArg::ThreeTwoRegular => Ok(wrap(solve_32_regular(inst)?, Strategy::ThreeTwoRegular)),
        AlgoArg::DTwoRegular => Ok(wrap(solve_d2_regular_d4(inst)?, Strategy::DTwoRegular)),
        AlgoArg::A2 => Ok(wrap(solve_a2(inst)?, Strategy::DegreeATwo)),
        AlgoArg::Greedy => Ok(wrap(solve_greedy(inst)?, Strategy::Greedy)),
        AlgoArg::Cg => Ok(wrap(
            solve_continuous_greedy(inst, cg)?,
            Strategy::ContinuousGreedy,
        )),
        AlgoArg::Brute => {
            let solution = match kind {
                ProblemKind::TwoPpm => solve_brute_2ppm(inst)?,
                ProblemKind::TwoPm => solve_brute_2pm(inst)?,
            };
            Ok(wrap(solution, Strategy::Brute))
        }
    }
}

fn cmd_solve(
    instance: &Path,
    kind: ProblemKind,
    algo: AlgoArg,
    seed: u64,
    cg_steps: usize,
    cg_samples: usize,
    output: Option<PathBuf>,
) -> Result<(), CliError> {
    let inst = read_instance(instance)?;
    let cg = CgParams {
        steps: cg_steps,
        samples: cg_samples,
        seed,
    };
    let outcome = dispatch(&inst, kind, algo, cg)?;
    let text = serialize_solution(&outcome.solution);
    match output {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    println!(
        "{} profit={} guarantee={}",
        outcome.strategy.tag(),
        outcome.solution.profit,
        outcome.guarantee
    );
    Ok(())
}

fn load_source(src: &str) -> Result<Multigraph, CliError> {
    if let Some(g) = builtin_source(src) {
        return Ok(g);
    }
    Ok(parse_multigraph(&fs::read_to_string(src)?)?)
}

fn cmd_generate(
    kind: GenType,
    na: Option<usize>,
    d: Option<usize>,
    copies: usize,
    src: Option<String>,
    seed: u64,
    out: Option<PathBuf>,
) -> Result<(), CliError> {
    let need = |opt: Option<usize>, flag: &str| {
        opt.ok_or_else(|| CliError::param(format!("--{flag} is required for this type")))
    };
    let need_src = || {
        src.clone()
            .ok_or_else(|| CliError::param("--src is required for this type"))
    };

    let (instance, sidecar): (BipartiteInstance, Option<Sidecar>) = match kind {
        GenType::Biregular => (gen_biregular(need(na, "na")?, need(d, "d")?, seed)?, None),
        GenType::Tight => (incidence_instance(&gen_tight_example(copies), 3)?, None),
        GenType::Incidence => {
            let g = load_source(&need_src()?)?;
            (incidence_instance(&g, need(d, "d")?)?, None)
        }
        GenType::VcGadget => {
            let g = load_source(&need_src()?)?;
            let gadget = vc_gadget(&g)?;
            (gadget.instance, Some(Sidecar::Vc(g)))
        }
        GenType::KcoverGadget => {
            let path = need_src()?;
            let mkc = parse_mkc(&fs::read_to_string(&path)?)?;
            let gadget = kcover_gadget(mkc.universe_n, &mkc.sets, mkc.k, copies)?;
            (gadget.instance, Some(Sidecar::Kcover { mkc, copies }))
        }
    };

    let text = serialize_instance(&instance);
    match (&out, &sidecar) {
        (Some(path), _) => {
            fs::write(path, text)?;
            if let Some(sidecar) = &sidecar {
                fs::write(meta_path(path), serialize_sidecar(sidecar))?;
            }
        }
        (None, None) => print!("{text}"),
        (None, Some(_)) => {
            return Err(CliError::param(
                "--out is required for gadget types (they write a sidecar)",
            ));
        }
    }
    Ok(())
}

fn meta_path(instance: &Path) -> PathBuf {
    let mut os = instance.as_os_str().to_owned();
    os.push(".meta");
    PathBuf::from(os)
}

fn cmd_verify(
    instance: &Path,
    solution: Option<PathBuf>,
    identity: Option<IdentityArg>,
    meta: Option<PathBuf>,
) -> Result<(), CliError> {
    let inst = read_instance(instance)?;
    match (solution, identity) {
        (Some(sol_path), None) => {
            let sol = parse_solution(&fs::read_to_string(sol_path)?)?;
            match inst.validate_solution(&sol) {
                Ok(()) => {
                    println!("PASS profit={}", sol.profit);
                    Ok(())
                }
                Err(violation) => {
                    println!("FAIL {violation}");
                    Err(CliError::verification(format!(
                        "solution invalid: {violation}"
                    )))
                }
            }
        }
        (None, Some(which)) => {
            let meta_file = meta.unwrap_or_else(|| meta_path(instance));
            let sidecar = parse_sidecar(&fs::read_to_string(&meta_file)?)?;
            match (which, sidecar) {
                (IdentityArg::Vc, Sidecar::Vc(src)) => {
                    let gadget = vc_gadget(&src)?;
                    if gadget.instance != inst {
                        return Err(CliError::verification(
                            "instance does not match the sidecar source",
                        ));
                    }
                    let report = certify_vc_identity(&gadget)?;
                    let verdict = if report.holds() { "PASS" } else { "FAIL" };
                    println!(
                        "{} + {} = {} {}",
                        report.opt_2ppm,
                        report.opt_vc,
                        2 * report.n_src + report.m_src,
                        verdict
                    );
                    report
                        .holds()
                        .then_some(())
                        .ok_or_else(|| CliError::verification("vc identity failed"))
                }
                (IdentityArg::Kcover, Sidecar::Kcover { mkc, copies }) => {
                    let MkcInstance {
                        universe_n,
                        sets,
                        k,
                    } = mkc;
                    let gadget = kcover_gadget(universe_n, &sets, k, copies)?;
                    if gadget.instance != inst {
                        return Err(CliError::verification(
                            "instance does not match the sidecar source",
                        ));
                    }
                    let report = certify_kcover_identity(&gadget)?;
                    let verdict = if report.holds() { "PASS" } else { "FAIL" };
                    println!(
                        "{} = {}*{} + {} {}",
                        report.opt_2ppm, report.n_copies, report.opt_mc, report.dummies, verdict
                    );
                    report
                        .holds()
                        .then_some(())
                        .ok_or_else(|| CliError::verification("kcover identity failed"))
                }
                _ => Err(CliError::param("sidecar type does not match --identity")),
            }
        }
        _ => Err(CliError::param(
            "pass exactly one of --solution or --identity",
        )),
    }
}

fn cmd_bench(
    dir: &Path,
    algos: &[AlgoArg],
    seeds: &[u64],
    kind: ProblemKind,
    out: &Path,
) -> Result<(), CliError> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|e| e == "spm"))
        .collect();
    files.sort();

    let mut rows = vec![CSV_HEADER.to_string()];
    for path in &files {
        let name = path
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_default();
        let parsed = fs::read_to_string(path)
            .map_err(CliError::from)
            .and_then(|t| Ok(parse_instance(&t)?));
        let (inst, optimum) = match &parsed {
            Ok(inst) => (Some(inst), known_optimum(inst, kind)),
            Err(_) => (None, None),
        };
        for &algo in algos {
            for &seed in seeds {
                let record = match inst {
                    None => BenchRecord {
                        instance: name.clone(),
                        n_a: None,
                        n_b: None,
                        algo: algo.name().into(),
                        profit: Err("parse".into()),
                        optimum: None,
                        ms: 0,
                        seed,
                    },
                    Some(inst) => {
                        let cg = CgParams {
                            steps: 50,
                            samples: 64,
                            seed,
                        };
                        let started = Instant::now();
                        let result = dispatch(inst, kind, algo, cg);
                        let ms = started.elapsed().as_millis();
                        BenchRecord {
                            instance: name.clone(),
                            n_a: Some(inst.n_a()),
                            n_b: Some(inst.n_b()),
                            algo: algo.name().into(),
                            profit: result.map(|o| o.solution.profit).map_err(|e| match e {
                                SolveError::Precondition(_) => "precondition".into(),
                                SolveError::SearchSpace { .. } => "guard".into(),
                            }),
                            optimum,
                            ms,
                            seed,
                        }
                    }
                };
                rows.push(record.csv_row());
            }
        }
    }
    fs::write(out, rows.join("\n") + "\n")?;
    Ok(())
}
