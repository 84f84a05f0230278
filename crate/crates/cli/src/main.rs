use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand};
use leveling_cli::dispatch::{self, ProblemClass, Solution};
use leveling_cli::format::{parse_instance, preemptive_json, schedule_json, serialize_instance};
use leveling_cli::generate::{generate, Kind};
use leveling_cli::reduce::{reduce, Source};
use leveling_cli::verify::{run_suite, SUITES};
use leveling_core::l2prec::fstar_profile;
use leveling_core::Instance;

#[derive(Parser)]
#[command(name = "leveling", version, about = "Resource leveling solvers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance and print the schedule with its F value.
    Solve {
        /// Instance file, `-` for standard input.
        #[arg(short, long)]
        input: String,
        /// Problem class; detected from the instance when omitted.
        #[arg(long)]
        class: Option<ProblemClass>,
        /// Makespan deadline M, overriding the instance's.
        #[arg(long)]
        deadline: Option<u64>,
        /// Allow preemption.
        #[arg(long)]
        pmtn: bool,
    },
    /// Print the optimal value for each M as CSV.
    Profile {
        #[arg(short, long)]
        input: String,
        #[arg(long = "from")]
        from: Option<u64>,
        #[arg(long = "to")]
        to: Option<u64>,
    },
    /// Emit a random instance.
    Generate {
        #[arg(long)]
        kind: Kind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run solver-versus-oracle sweeps.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        /// Total time budget in seconds.
        #[arg(long, default_value_t = 30)]
        budget: u64,
    },
    /// Transform an instance.
    Reduce {
        #[arg(long = "from")]
        from: Source,
        #[arg(short, long)]
        input: String,
        #[arg(long)]
        deadline: Option<u64>,
    },
}

/// Exit codes: 1 for bad input, 2 for infeasible instances.
enum Failure {
    Input(String),
    Infeasible(String),
}

fn read(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Input(format!("standard input: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("{path}: {e}")))
    }
}

fn load(path: &str) -> Result<Instance, Failure> {
    parse_instance(&read(path)?).map_err(|e| Failure::Input(format!("{path}: {e}")))
}

fn solve(input: &str, class: Option<ProblemClass>, deadline: Option<u64>, pmtn: bool) -> Result<String, Failure> {
    let inst = load(input)?;
    let class = match class {
        Some(c) => c,
        None => match ProblemClass::detect(&inst, pmtn) {
            Some(ProblemClass::Brute) => {
                eprintln!("warning: no polynomial class matches; using the brute-force oracle");
                ProblemClass::Brute
            }
            Some(c) => c,
            None => return Err(Failure::Input("no preemptive class matches the instance".into())),
        },
    };
    match dispatch::solve(&inst, class, deadline) {
        Ok(Solution::Integer { x, f }) => Ok(schedule_json(&x, f)),
        Ok(Solution::Preemptive { schedule, f }) => Ok(preemptive_json(&schedule, &f)),
        Err(e) if e.is_infeasible() => Err(Failure::Infeasible(e.to_string())),
        Err(e) => Err(Failure::Input(e.to_string())),
    }
}

fn profile(input: &str, from: Option<u64>, to: Option<u64>) -> Result<String, Failure> {
    let inst = load(input)?;
    let prof = fstar_profile(&inst).map_err(|e| Failure::Input(e.to_string()))?;
    let [b0, b1, b2] = prof.breakpoints();
    eprintln!(
        "|P|={} m*_P={} m*={} |J|={} breakpoints={b0},{b1},{b2}",
        prof.path_len, prof.m_star_p, prof.m_star, prof.job_count
    );
    let lo = from.unwrap_or(0).max(prof.path_len);
    let hi = to.unwrap_or(prof.job_count);
    let mut out = String::from("M,FStar\n");
    for m in lo..=hi {
        let f = prof.value(m).map_err(|e| Failure::Input(e.to_string()))?;
        out.push_str(&format!("{m},{f}\n"));
    }
    Ok(out.trim_end().to_string())
}

fn verify(suite: &str, budget: u64) -> Result<String, Failure> {
    let names: Vec<&str> = if suite == "all" {
        SUITES.to_vec()
    } else if SUITES.contains(&suite) {
        vec![suite]
    } else {
        return Err(Failure::Input(format!(
            "unknown suite `{suite}` (expected all, {})",
            SUITES.join(", ")
        )));
    };
    let slice = Duration::from_secs_f64(budget as f64 / names.len() as f64);
    let mut out = format!("{:<12} {:>8} {:>8} {:>9}  status", "suite", "checked", "skipped", "failures");
    let mut ok = true;
    for name in names {
        let r = run_suite(name, slice, 200).expect("suite name checked above");
        ok &= r.passed();
        out.push_str(&format!(
            "\n{:<12} {:>8} {:>8} {:>9}  {}",
            r.suite,
            r.checked,
            r.skipped,
            r.failures.len(),
            if r.passed() { "PASS" } else { "FAIL" }
        ));
        for f in r.failures.iter().take(3) {
            out.push_str(&format!("\n    {f}"));
        }
    }
    if ok {
        Ok(out)
    } else {
        println!("{out}");
        Err(Failure::Input("verification found mismatches".into()))
    }
}

fn run(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::Solve {
            input,
            class,
            deadline,
            pmtn,
        } => solve(&input, class, deadline, pmtn),
        Command::Profile { input, from, to } => profile(&input, from, to),
        Command::Generate { kind, n, seed } => {
            if n == 0 {
                return Err(Failure::Input("n must be at least 1".into()));
            }
            Ok(serialize_instance(&generate(kind, n, seed)))
        }
        Command::Verify { suite, budget } => verify(&suite, budget),
        Command::Reduce { from, input, deadline } => {
            let text = read(&input)?;
            reduce(from, &text, deadline)
                .map(|i| serialize_instance(&i))
                .map_err(|e| Failure::Input(format!("{input}: {e}")))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            let _ = writeln!(stdout, "{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Infeasible(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
