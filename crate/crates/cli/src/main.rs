//! Command line front end: solve single SMT-LIB instances, compare the
//! covering variants over an instance set, re-check answers against
//! independent probes, and differential-test random conjunctions.
//!
//! Exit codes: 0 sat (or a clean comparison/fuzz run), 1 unsat, 2 usage or
//! parse error, 3 soundness alarm or variant disagreement.

use clap::{Parser, Subcommand, ValueEnum};
use covra_core::engine::{assignment_satisfies, solve, Formula, Stats, Variant, Verdict};
use covra_core::fuzzgen::{generator, random_formula, FuzzLimits};
use covra_core::report::{to_csv, StatsReport};
use covra_core::smtlib::{parse_script, print_model, script_text, Script};
use covra_core::verify::verify;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "covra", version, about = "Exact solver for polynomial constraints over the reals")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    Base,
    Closed,
    ClosedHeuristic,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Variant {
        match v {
            VariantArg::Base => Variant::Base,
            VariantArg::Closed => Variant::Closed,
            VariantArg::ClosedHeuristic => Variant::ClosedHeuristic,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide one instance, printing sat/unsat (and a model after get-model)
    Solve {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = VariantArg::Closed)]
        variant: VariantArg,
        /// Write run statistics to this path, or - for stdout
        #[arg(long)]
        stats: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run several variants over instance files or directories, emitting a
    /// CSV with per-variant statistics and a verdict agreement column
    Compare {
        /// .smt2 files, or directories searched recursively
        paths: Vec<PathBuf>,
        /// Comma-separated subset of base,closed,closed-heuristic
        #[arg(long, value_enum, value_delimiter = ',')]
        variants: Option<Vec<VariantArg>>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Also include this many generated instances
        #[arg(long, default_value_t = 0)]
        fuzz: usize,
        /// Seed for the generated instances
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Decide one instance, then re-check the answer with independent
    /// probes (unsat cells are probed and re-solved, models re-evaluated)
    Verify {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = VariantArg::Closed)]
        variant: VariantArg,
    },
    /// Differential-test random conjunctions across all variants
    Fuzz {
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Maximum variables per instance
        #[arg(long, default_value_t = 3)]
        vars: usize,
        /// Maximum total degree per monomial
        #[arg(long, default_value_t = 3)]
        degree: u32,
        /// Write every generated instance into this directory as .smt2
        #[arg(long)]
        dump: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.cmd {
        Cmd::Solve { file, variant, stats, format } => cmd_solve(&file, variant.into(), stats, format),
        Cmd::Compare { paths, variants, jobs, fuzz, seed } => {
            let variants: Vec<Variant> = match variants {
                Some(v) => v.into_iter().map(Variant::from).collect(),
                None => Variant::ALL.to_vec(),
            };
            cmd_compare(&paths, &variants, jobs, fuzz, seed)
        }
        Cmd::Verify { file, variant } => cmd_verify(&file, variant.into()),
        Cmd::Fuzz { count, seed, vars, degree, dump } => cmd_fuzz(count, seed, vars, degree, dump),
    }
}

fn load(file: &Path) -> Result<Script, String> {
    let src = std::fs::read_to_string(file).map_err(|e| format!("{}: {e}", file.display()))?;
    parse_script(&src).map_err(|e| format!("{}:{e}", file.display()))
}

fn cmd_solve(
    file: &Path,
    variant: Variant,
    stats: Option<String>,
    format: Format,
) -> Result<ExitCode, String> {
    let script = load(file)?;
    let name = file.display().to_string();
    let (sat, report) = if script.trivially_false {
        println!("unsat");
        (false, StatsReport::from_stats(&name, variant, false, &Stats::default(), 0))
    } else {
        let f = script.formula.as_ref().expect("parser guarantees a formula");
        let started = Instant::now();
        let res = solve(f, variant);
        let ms = started.elapsed().as_millis() as u64;
        println!("{}", if res.is_sat() { "sat" } else { "unsat" });
        if script.wants_model {
            if let Verdict::Sat(pt) = &res.verdict {
                println!("{}", print_model(f.var_names(), pt));
            }
        }
        (res.is_sat(), StatsReport::new(&name, variant, &res, ms))
    };
    if let Some(dest) = stats {
        let text = match format {
            Format::Json => report.to_json(),
            Format::Csv => to_csv(std::slice::from_ref(&report)),
        };
        if dest == "-" {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
        } else {
            std::fs::write(&dest, text).map_err(|e| format!("{dest}: {e}"))?;
        }
    }
    Ok(ExitCode::from(if sat { 0 } else { 1 }))
}

fn cmd_verify(file: &Path, variant: Variant) -> Result<ExitCode, String> {
    let script = load(file)?;
    if script.trivially_false {
        println!("unsat");
        println!("verified: an asserted atom folds to false");
        return Ok(ExitCode::from(1));
    }
    let f = script.formula.as_ref().expect("parser guarantees a formula");
    let report = verify(f, variant);
    println!("{}", if report.verdict_sat { "sat" } else { "unsat" });
    println!(
        "checked {} cells with {} probes",
        report.cells_checked, report.probes
    );
    if report.failures.is_empty() {
        println!("verified");
        Ok(ExitCode::from(if report.verdict_sat { 0 } else { 1 }))
    } else {
        for failure in &report.failures {
            eprintln!("FAIL: {failure}");
        }
        Ok(ExitCode::from(3))
    }
}

/// An instance ready to solve. `formula` is None when parsing already
/// folded the script to false.
type Instance = (String, Option<Formula>);

fn gather_instances(paths: &[PathBuf]) -> Result<Vec<Instance>, String> {
    let mut instances = Vec::new();
    for path in paths {
        if path.is_dir() {
            let mut files: Vec<PathBuf> = walkdir::WalkDir::new(path)
                .into_iter()
                .filter_map(|entry| entry.ok())
                .filter(|entry| {
                    entry.file_type().is_file()
                        && entry.path().extension().map_or(false, |e| e == "smt2")
                })
                .map(|entry| entry.into_path())
                .collect();
            files.sort();
            for file in files {
                instances.push(instance_of(&file)?);
            }
        } else {
            instances.push(instance_of(path)?);
        }
    }
    Ok(instances)
}

fn instance_of(file: &Path) -> Result<Instance, String> {
    let script = load(file)?;
    let formula = if script.trivially_false { None } else { script.formula };
    Ok((file.display().to_string(), formula))
}

fn solve_one(name: &str, formula: Option<&Formula>, variant: Variant) -> (bool, StatsReport) {
    match formula {
        None => (false, StatsReport::from_stats(name, variant, false, &Stats::default(), 0)),
        Some(f) => {
            let started = Instant::now();
            let res = solve(f, variant);
            let ms = started.elapsed().as_millis() as u64;
            (res.is_sat(), StatsReport::new(name, variant, &res, ms))
        }
    }
}

fn cmd_compare(
    paths: &[PathBuf],
    variants: &[Variant],
    jobs: usize,
    fuzz: usize,
    seed: u64,
) -> Result<ExitCode, String> {
    let mut instances = gather_instances(paths)?;
    let mut rng = generator(seed);
    for i in 0..fuzz {
        let f = random_formula(&mut rng, FuzzLimits::default());
        instances.push((format!("fuzz-{seed}-{i:04}"), Some(f)));
    }
    if instances.is_empty() {
        return Err("no instances given".into());
    }
    if variants.is_empty() {
        return Err("no variants selected".into());
    }

    let n = instances.len();
    let jobs = jobs.max(1).min(n);
    let next = AtomicUsize::new(0);
    let rows: Mutex<Vec<Option<Vec<(bool, StatsReport)>>>> = Mutex::new(vec![None; n]);
    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= n {
                    break;
                }
                let (name, formula) = &instances[i];
                let row: Vec<(bool, StatsReport)> = variants
                    .iter()
                    .map(|&v| solve_one(name, formula.as_ref(), v))
                    .collect();
                rows.lock().unwrap()[i] = Some(row);
            });
        }
    });
    let rows: Vec<Vec<(bool, StatsReport)>> = rows
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|row| row.expect("every index was processed"))
        .collect();

    let mut disagreements = Vec::new();
    let mut writer = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<String> =
        StatsReport::csv_header().iter().map(|s| s.to_string()).collect();
    header.push("agreement".to_string());
    writer.write_record(&header).expect("csv header");
    for (i, row) in rows.iter().enumerate() {
        let agree = row.iter().all(|(sat, _)| *sat == row[0].0);
        if !agree {
            let verdicts: Vec<String> = variants
                .iter()
                .zip(row)
                .map(|(v, (sat, _))| {
                    format!("{}={}", v.name(), if *sat { "sat" } else { "unsat" })
                })
                .collect();
            disagreements.push(format!("{}: {}", instances[i].0, verdicts.join(" ")));
        }
        for (_, report) in row {
            let mut fields = report.csv_fields();
            fields.push(if agree { "yes" } else { "no" }.to_string());
            writer.write_record(&fields).expect("csv row");
        }
    }
    let csv_text = String::from_utf8(writer.into_inner().expect("csv flush")).expect("utf8");
    print!("{csv_text}");
    if disagreements.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        for d in &disagreements {
            eprintln!("disagreement {d}");
        }
        Ok(ExitCode::from(3))
    }
}

fn cmd_fuzz(
    count: usize,
    seed: u64,
    vars: usize,
    degree: u32,
    dump: Option<PathBuf>,
) -> Result<ExitCode, String> {
    if vars == 0 {
        return Err("--vars must be at least 1".into());
    }
    if let Some(dir) = &dump {
        std::fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
    }
    let limits = FuzzLimits { max_vars: vars, max_degree: degree, ..FuzzLimits::default() };
    let mut rng = generator(seed);
    let mut failures = 0usize;
    for i in 0..count {
        let f = random_formula(&mut rng, limits);
        let name = format!("fuzz-{seed}-{i:04}");
        if let Some(dir) = &dump {
            let path = dir.join(format!("{name}.smt2"));
            std::fs::write(&path, script_text(&f))
                .map_err(|e| format!("{}: {e}", path.display()))?;
        }
        let mut bad = false;
        let mut verdicts = Vec::new();
        for v in Variant::ALL {
            let res = solve(&f, v);
            if let Verdict::Sat(pt) = &res.verdict {
                if !assignment_satisfies(&f, pt) {
                    eprintln!("{name}: {} returned a bad model", v.name());
                    bad = true;
                }
            }
            verdicts.push(res.is_sat());
        }
        if verdicts.iter().any(|&s| s != verdicts[0]) {
            eprintln!("{name}: variants disagree");
            bad = true;
        }
        if !bad {
            let report = verify(&f, Variant::Closed);
            for failure in &report.failures {
                eprintln!("{name}: {failure}");
                bad = true;
            }
        }
        if bad {
            failures += 1;
            eprintln!("{name}:\n{}", script_text(&f));
        }
    }
    println!("{count} instances, {failures} failures");
    Ok(if failures == 0 { ExitCode::SUCCESS } else { ExitCode::from(3) })
}
