use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use topogen::classdata::{enumerate_shapes, generation_criterion, restrict_tuple, ClassTuple};
use topogen::genexp::{
    classify_good_bad, enumerate_prime_order_shapes, estimate_for_orders, estimate_for_tuple, realize_shape,
    DEFAULT_CLOSURE_CAP,
};
use topogen::gflinalg::{prime_power, GaloisField};
use topogen::obstructions::sl3_base_case_audit;
use topogen::stabbounds::{alpha_exact, AlphaTable};
use topogen::{verify, DEFAULT_SEED};

/// Exit status for a mathematical obstruction or failed audit.
const EXIT_OBSTRUCTED: u8 = 2;

#[derive(Parser)]
#[command(name = "topogen", version, about = "Generation of SL_n by conjugacy classes")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format; each subcommand has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write the main artifact here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a tuple of classes can generate.
    Check {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Minimal number of class elements needed, for every shape of SL_n.
    MinGens {
        #[arg(long)]
        n: u32,
    },
    /// Restrict a generating tuple from SL_n to SL_{n-1}.
    Restrict {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Class-dimension bounds by number of generators.
    Alpha {
        #[arg(long)]
        n: u32,
        /// Also compute the exact values by shape enumeration (n <= 12).
        #[arg(long)]
        exact: bool,
    },
    /// Dimension audit of a generating SL_3 tuple against maximal subgroups.
    AuditSl3 {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Shapes of order-r semisimple elements of SL_n(q).
    Shapes {
        #[arg(long)]
        n: u32,
        #[arg(long, value_parser = parse_q)]
        q: u64,
        #[arg(long)]
        r: u64,
    },
    /// Good and bad pairs of order-r and order-s shapes.
    Classify {
        #[arg(long)]
        n: u32,
        #[arg(long, value_parser = parse_q)]
        q: u64,
        #[arg(long)]
        r: u64,
        #[arg(long)]
        s: u64,
    },
    /// Monte Carlo estimate of the probability that random conjugates
    /// generate SL_n(q).
    Simulate {
        /// Two-class spec file; otherwise the best good pair of orders r, s.
        #[arg(long, conflicts_with_all = ["r", "s", "n"])]
        spec: Option<PathBuf>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long, value_parser = parse_q)]
        q: u64,
        #[arg(long, requires = "s")]
        r: Option<u64>,
        #[arg(long, requires = "r")]
        s: Option<u64>,
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        #[arg(long, env = "TOPOGEN_SEED", default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Largest number of group elements a closure may store.
        #[arg(long, default_value_t = DEFAULT_CLOSURE_CAP)]
        cap: u64,
    },
    /// Run the oracle cross-checks.
    VerifyOracles,
}

fn parse_q(text: &str) -> Result<u64, String> {
    let q = match text.split_once('^') {
        Some((p, k)) => {
            let p: u64 = p.trim().parse().map_err(|e| format!("bad prime `{p}`: {e}"))?;
            let k: u32 = k.trim().parse().map_err(|e| format!("bad exponent `{k}`: {e}"))?;
            p.checked_pow(k).ok_or("field order overflows")?
        }
        None => text.trim().parse().map_err(|e| format!("bad field order `{text}`: {e}"))?,
    };
    if prime_power(q).is_none() {
        return Err(format!("{q} is not a prime power"));
    }
    Ok(q)
}

fn read_spec(path: &Path) -> anyhow::Result<ClassTuple> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    ClassTuple::from_json(&text).with_context(|| format!("malformed spec {}", path.display()))
}

fn emit(out: &Option<PathBuf>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> anyhow::Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    let format = cli.format;
    match cli.command {
        Command::Check { spec } => {
            let tuple = read_spec(&spec)?;
            let verdict = generation_criterion(&tuple)?;
            let text = match format.unwrap_or(Format::Table) {
                Format::Json => to_json(&verdict)?,
                Format::Csv => format!("outcome,witness\n{:?},{}\n", verdict.outcome, verdict.witness.map(|w| w.to_string()).unwrap_or_default()),
                Format::Table => format!("{verdict}\n"),
            };
            emit(&cli.out, &text)?;
            Ok(if verdict.is_generating() { 0 } else { EXIT_OBSTRUCTED })
        }
        Command::MinGens { n } => {
            #[derive(Serialize)]
            struct Row {
                shape: String,
                gamma: u32,
                quadratic: bool,
                class_dimension: u64,
                min_generators: u32,
            }
            let rows = enumerate_shapes(n, n)?
                .iter()
                .map(|s| {
                    Ok(Row {
                        shape: s.to_string(),
                        gamma: s.gamma(),
                        quadratic: s.is_quadratic(),
                        class_dimension: s.class_dimension(),
                        min_generators: s.min_generators()?,
                    })
                })
                .collect::<topogen::Result<Vec<_>>>()?;
            let text = match format.unwrap_or(Format::Csv) {
                Format::Json => to_json(&rows)?,
                Format::Csv | Format::Table => {
                    let mut t = String::from("shape,gamma,quadratic,class_dimension,min_generators\n");
                    for r in &rows {
                        writeln!(t, "\"{}\",{},{},{},{}", r.shape, r.gamma, r.quadratic, r.class_dimension, r.min_generators)?;
                    }
                    t
                }
            };
            emit(&cli.out, &text)?;
            Ok(0)
        }
        Command::Restrict { spec } => {
            let tuple = read_spec(&spec)?;
            let restricted = restrict_tuple(&tuple)?;
            emit(&cli.out, &restricted.to_canonical_json())?;
            Ok(0)
        }
        Command::Alpha { n, exact } => {
            let table = if exact { alpha_exact(n)? } else { AlphaTable::upper(n)? };
            let text = match format.unwrap_or(Format::Csv) {
                Format::Json => to_json(&table)?,
                Format::Csv | Format::Table => table.to_csv(),
            };
            emit(&cli.out, &text)?;
            Ok(0)
        }
        Command::AuditSl3 { spec } => {
            let tuple = read_spec(&spec)?;
            let audit = sl3_base_case_audit(&tuple)?;
            let text = match format.unwrap_or(Format::Table) {
                Format::Json => to_json(&audit)?,
                Format::Csv | Format::Table => {
                    let mut t = String::from("subgroup,dim_coset,cap_sum,dim_omega,strict_pass\n");
                    for r in &audit.records {
                        writeln!(t, "{},{},{},{},{}", r.subgroup, r.dim_coset, r.cap_sum, r.dim_omega, r.strict_pass)?;
                    }
                    writeln!(t, "pass,{}", audit.pass)?;
                    t
                }
            };
            emit(&cli.out, &text)?;
            Ok(if audit.pass { 0 } else { EXIT_OBSTRUCTED })
        }
        Command::Shapes { n, q, r } => {
            #[derive(Serialize)]
            struct Row {
                #[serde(flatten)]
                shape: topogen::genexp::ClassShape,
                gamma: u32,
                class_dimension: u64,
                realizable: bool,
            }
            let field = GaloisField::of_order(q)?;
            let rows = enumerate_prime_order_shapes(n, q, r)?
                .into_iter()
                .map(|s| {
                    Ok(Row {
                        gamma: s.gamma(),
                        class_dimension: s.class_dimension(),
                        realizable: realize_shape(&s, &field)?.is_some(),
                        shape: s,
                    })
                })
                .collect::<topogen::Result<Vec<_>>>()?;
            let text = match format.unwrap_or(Format::Csv) {
                Format::Json => to_json(&rows)?,
                Format::Csv | Format::Table => {
                    let mut t = String::from("n,q,r,a,l,counts,gamma,class_dimension,realizable\n");
                    for row in &rows {
                        let s = &row.shape;
                        let counts: Vec<String> = s.orbit_counts.iter().map(u32::to_string).collect();
                        writeln!(
                            t,
                            "{n},{q},{r},{},{},{},{},{},{}",
                            s.unit_multiplicity,
                            s.orbit_degree,
                            counts.join(" "),
                            row.gamma,
                            row.class_dimension,
                            row.realizable
                        )?;
                    }
                    t
                }
            };
            emit(&cli.out, &text)?;
            Ok(0)
        }
        Command::Classify { n, q, r, s } => {
            let report = classify_good_bad(n, q, r, s)?;
            let text = match format.unwrap_or(Format::Csv) {
                Format::Json => to_json(&report)?,
                Format::Csv | Format::Table => {
                    let mut t = String::from("shape_r,shape_s,gamma_sum,dim_omega,outcome,status\n");
                    for p in &report.pairs {
                        writeln!(
                            t,
                            "\"{}\",\"{}\",{},{},{:?},{}",
                            p.shape_r,
                            p.shape_s,
                            p.gamma_sum,
                            p.dim_omega,
                            p.outcome,
                            serde_json::to_value(p.status)?.as_str().unwrap_or_default()
                        )?;
                    }
                    writeln!(t, "# good_exists={}", report.good_exists)?;
                    t
                }
            };
            emit(&cli.out, &text)?;
            Ok(0)
        }
        Command::Simulate { spec, n, q, r, s, samples, seed, cap } => {
            let field = GaloisField::of_order(q)?;
            let report = match (spec, r, s) {
                (Some(path), _, _) => estimate_for_tuple(&read_spec(&path)?, &field, samples, seed, cap)?,
                (None, Some(r), Some(s)) => {
                    let Some(n) = n else { bail!("--n is required with --r and --s") };
                    estimate_for_orders(n, &field, r, s, samples, seed, cap)?
                }
                _ => bail!("give either --spec or both --r and --s"),
            };
            eprintln!("wall time: {} ms", report.wall_time_ms);
            let text = match format.unwrap_or(Format::Csv) {
                Format::Json => to_json(&report)?,
                Format::Csv | Format::Table => report.to_csv(),
            };
            emit(&cli.out, &text)?;
            Ok(0)
        }
        Command::VerifyOracles => {
            let results = verify::run_all();
            let text = match format.unwrap_or(Format::Table) {
                Format::Json => to_json(&results)?,
                Format::Csv | Format::Table => {
                    let mut t = String::new();
                    for r in &results {
                        writeln!(t, "[{}] {}: {}", if r.pass { "PASS" } else { "FAIL" }, r.name, r.detail)?;
                    }
                    let passed = results.iter().filter(|r| r.pass).count();
                    writeln!(t, "{passed}/{} checks passed", results.len())?;
                    t
                }
            };
            emit(&cli.out, &text)?;
            Ok(if results.iter().all(|r| r.pass) { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    // usage errors exit 1 like other errors; 2 is reserved for obstructions
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
