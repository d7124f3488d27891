//! `autseq` command-line front end.
//!
//! Exit status: 0 success, 1 a check or cross-check failed, 2 usage or I/O
//! error.

use std::collections::HashMap;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use autseq::automata::Dfao;
use autseq::catalog::{self, objects, SequenceName};
use autseq::checks::{self, CheckStatus};
use autseq::kernel;
use autseq::series::{power_relation_search, TruncatedSeries};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "autseq",
    version,
    about = "Automatic sequences, power series over F_p, and the period-doubling inverse"
)]
struct Cli {
    /// Output format.
    #[arg(
        long,
        global = true,
        value_enum,
        default_value = "text",
        env = "AUTSEQ_FORMAT"
    )]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print the first N terms of a named sequence as "n value" lines.
    Seq {
        name: String,
        n: usize,
        /// Index of the first printed term.
        #[arg(long, default_value_t = 0)]
        offset: i64,
    },
    /// Compare every definition of a named sequence on N terms.
    CrossCheck { name: String, n: usize },
    /// Formal inverse of a series given as JSON {"p":..,"coeffs":[..]}
    /// (inline, a file path, or - for stdin).
    Invert { series: String },
    /// k-kernel report: classes, ranks and representatives per depth.
    Kernel {
        name: String,
        #[arg(long, default_value_t = 2)]
        k: u32,
        #[arg(long, default_value_t = 10, env = "AUTSEQ_KERNEL_DEPTH")]
        depth: u32,
        #[arg(long, default_value_t = 512, env = "AUTSEQ_KERNEL_HORIZON")]
        horizon: usize,
        #[arg(long, default_value_t = kernel::DEFAULT_PRIME_BUDGET)]
        prime_budget: usize,
    },
    /// Print a catalog automaton (d, u, t, x, or a language name).
    Dfao {
        name: String,
        /// Graphviz DOT instead of JSON/text.
        #[arg(long)]
        dot: bool,
        /// Synthesize the automaton from the k-kernel of the named sequence.
        #[arg(long)]
        from_kernel: bool,
        #[arg(long, default_value_t = 2)]
        k: u32,
        #[arg(long, default_value_t = 512, env = "AUTSEQ_KERNEL_HORIZON")]
        horizon: usize,
    },
    /// Number of words of each length 0..=N in a language
    /// (lprime, la, la1, la2, lf).
    Complexity { language: String, n: usize },
    /// Search for c_inh + sum_i c_i S(X^(p^i)) = 0 over F_p. The series S is
    /// a catalog sequence reduced mod p; prefix the name with "inv:" to use
    /// its formal inverse.
    Ore {
        name: String,
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 2)]
        depth: u32,
        #[arg(long, default_value_t = 3)]
        deg: usize,
        /// Number of coefficients (default: four times the unknowns, at least 256).
        #[arg(long)]
        precision: Option<usize>,
    },
    /// Run the check suite; no ids means all.
    Check {
        ids: Vec<String>,
        /// Horizon override, id=value; repeatable. 0 skips the check.
        #[arg(long = "horizon", value_name = "ID=VALUE")]
        horizons: Vec<String>,
        /// List the available checks and exit.
        #[arg(long)]
        list: bool,
    },
}

type Failure = String;

enum Outcome {
    Ok,
    ChecksFailed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = run(cli, &mut out).and_then(|o| out.flush().map(|_| o).map_err(|e| e.to_string()));
    match result {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::ChecksFailed) => ExitCode::from(1),
        Err(msg) => {
            let _ = out.flush();
            eprintln!("autseq: {msg}");
            ExitCode::from(2)
        }
    }
}

fn err(e: impl std::fmt::Display) -> Failure {
    e.to_string()
}

fn sequence(name: &str) -> Result<SequenceName, Failure> {
    name.parse().map_err(err)
}

fn run(cli: Cli, out: &mut impl Write) -> Result<Outcome, Failure> {
    let json = cli.format == Format::Json;
    match cli.command {
        Command::Seq { name, n, offset } => {
            let name = sequence(&name)?;
            if json {
                for (i, v) in catalog::prefix(name, n)
                    .map_err(err)?
                    .into_iter()
                    .enumerate()
                {
                    let value =
                        i64::try_from(&v).map_or_else(|_| json!(v.to_string()), |x| json!(x));
                    writeln!(out, "{}", json!({"n": offset + i as i64, "value": value}))
                        .map_err(err)?;
                }
            } else {
                catalog::write_bfile(out, name, n, offset).map_err(err)?;
            }
        }
        Command::CrossCheck { name, n } => {
            let report = catalog::cross_check(sequence(&name)?, n).map_err(err)?;
            if json {
                writeln!(out, "{}", serde_json::to_string(&report).map_err(err)?).map_err(err)?;
            } else {
                match &report.mismatch {
                    None => writeln!(
                        out,
                        "PASS {}: {} agree on {} terms",
                        report.name,
                        report.definitions.join(", "),
                        n
                    ),
                    Some(m) => {
                        let vals: Vec<String> = m
                            .values
                            .iter()
                            .map(|(d, v)| {
                                format!("{d}={}", v.map_or("-".to_string(), |x| x.to_string()))
                            })
                            .collect();
                        writeln!(
                            out,
                            "FAIL {}: first mismatch at {}: {}",
                            report.name,
                            m.index,
                            vals.join(" ")
                        )
                    }
                }
                .map_err(err)?;
            }
            if !report.passed() {
                return Ok(Outcome::ChecksFailed);
            }
        }
        Command::Invert { series } => {
            let text = read_input(&series)?;
            let s: TruncatedSeries =
                serde_json::from_str(&text).map_err(|e| format!("invalid series: {e}"))?;
            let inv = s.reversion().map_err(err)?;
            if json {
                writeln!(out, "{}", serde_json::to_string(&inv).map_err(err)?).map_err(err)?;
            } else {
                let coeffs: Vec<String> = inv.coeffs().iter().map(|c| c.to_string()).collect();
                writeln!(out, "{}", coeffs.join(" ")).map_err(err)?;
            }
        }
        Command::Kernel {
            name,
            k,
            depth,
            horizon,
            prime_budget,
        } => {
            let name = sequence(&name)?;
            let needed = kernel::terms_needed(k, depth, horizon).ok_or("depth too large")?;
            let values = catalog::prefix_fast(name, needed).map_err(err)?;
            let seq = |i: usize| values.get(i).copied();
            let report =
                kernel::kernel_report(&seq, k, depth, horizon, prime_budget).map_err(err)?;
            if json {
                writeln!(out, "{}", serde_json::to_string(&report).map_err(err)?).map_err(err)?;
            } else {
                writeln!(out, "{name}: {}-kernel {} (H={horizon})", k, report.verdict)
                    .map_err(err)?;
                for d in &report.depths {
                    writeln!(
                        out,
                        "depth {:>2}: classes {:>5}  rank {:>5}{}  new {}",
                        d.depth,
                        d.classes,
                        d.rank,
                        if d.rank_certified {
                            ""
                        } else {
                            " (lower bound)"
                        },
                        d.representatives.len()
                    )
                    .map_err(err)?;
                }
                if !report.failed_merges.is_empty() {
                    writeln!(out, "merges failing at 4H: {:?}", report.failed_merges)
                        .map_err(err)?;
                }
            }
        }
        Command::Dfao {
            name,
            dot,
            from_kernel,
            k,
            horizon,
        } => {
            if from_kernel {
                let seq_name = sequence(&name)?;
                let needed = kernel::terms_needed(k, 10, horizon).ok_or("horizon too large")?;
                let values = catalog::prefix_fast(seq_name, needed).map_err(err)?;
                let seq = |i: usize| values.get(i).copied();
                let kern = kernel::compute_kernel(&seq, k, 10, horizon).map_err(err)?;
                if !kern.failed_merges.is_empty() {
                    return Err(format!("class merges fail at 4H: {:?}", kern.failed_merges));
                }
                let m = kernel::synthesize_dfao(&kern).map_err(err)?.minimize();
                print_automaton(out, &m, dot, json)?;
            } else if let Some(lang) = objects::language(&name) {
                print_automaton(out, &lang, dot, json)?;
            } else {
                let m = match name.as_str() {
                    "d" => objects::period_doubling_dfao(),
                    "u" => objects::inverse_period_doubling_dfao(),
                    "t" => objects::thue_morse_dfao(),
                    "x" => objects::fibonacci_indicator_dfao(),
                    _ => {
                        return Err(format!(
                            "no automaton named {name:?}; try d, u, t, x, {}",
                            objects::LANGUAGE_NAMES.join(", ")
                        ))
                    }
                };
                print_automaton(out, &m, dot, json)?;
            }
        }
        Command::Complexity { language, n } => {
            let dfa = objects::language(&language).ok_or_else(|| {
                format!(
                    "unknown language {language:?}; try {}",
                    objects::LANGUAGE_NAMES.join(", ")
                )
            })?;
            for (len, c) in dfa.counts_by_length(n).into_iter().enumerate() {
                if json {
                    writeln!(out, "{}", json!({"length": len, "count": c.to_string()}))
                        .map_err(err)?;
                } else {
                    writeln!(out, "{len} {c}").map_err(err)?;
                }
            }
        }
        Command::Ore {
            name,
            p,
            depth,
            deg,
            precision,
        } => {
            let (base, invert) = match name.strip_prefix("inv:") {
                Some(rest) => (rest, true),
                None => (name.as_str(), false),
            };
            let seq_name = sequence(base)?;
            let unknowns = (depth as usize + 2) * (deg + 1);
            let n = precision.unwrap_or((4 * unknowns).max(256));
            let values = catalog::prefix(seq_name, n).map_err(err)?;
            let pp = num_bigint::BigInt::from(p);
            let residues: Vec<u64> = values
                .iter()
                .map(|v| {
                    let r = ((v % &pp) + &pp) % &pp;
                    u64::try_from(r).expect("residue below p")
                })
                .collect();
            let mut s = TruncatedSeries::from_fn(p, n, |i| residues[i]).map_err(err)?;
            if invert {
                s = s.reversion().map_err(err)?;
            }
            let found = power_relation_search(&s, depth, deg).map_err(err)?;
            if json {
                writeln!(
                    out,
                    "{}",
                    json!({"series": name, "p": p, "precision": n, "relation": found})
                )
                .map_err(err)?;
            } else {
                match found {
                    None => writeln!(out, "no relation with Frobenius depth {depth} and degree {deg} on {n} coefficients"),
                    Some(r) => writeln!(out, "{}", serde_json::to_string(&r).map_err(err)?),
                }
                .map_err(err)?;
            }
        }
        Command::Check {
            ids,
            horizons,
            list,
        } => {
            if list {
                for check in &checks::CHECKS {
                    writeln!(
                        out,
                        "{:<26} {:>10}  {}",
                        check.id, check.default_horizon, check.summary
                    )
                    .map_err(err)?;
                }
                return Ok(Outcome::Ok);
            }
            let overrides = parse_horizons(&horizons)?;
            let results = checks::run_checks(&ids, &overrides).map_err(err)?;
            let mut failed = false;
            for r in &results {
                failed |= r.status == CheckStatus::Fail;
                if json {
                    writeln!(out, "{}", serde_json::to_string(r).map_err(err)?).map_err(err)?;
                } else {
                    let tag = match r.status {
                        CheckStatus::Pass => "PASS",
                        CheckStatus::Fail => "FAIL",
                        CheckStatus::Skipped => "SKIP",
                    };
                    writeln!(
                        out,
                        "{tag} {} (horizon {}, {} ms): {}",
                        r.id, r.horizon, r.elapsed_ms, r.detail
                    )
                    .map_err(err)?;
                }
            }
            if failed {
                return Ok(Outcome::ChecksFailed);
            }
        }
    }
    Ok(Outcome::Ok)
}

fn read_input(arg: &str) -> Result<String, Failure> {
    if arg == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(err)?;
        Ok(s)
    } else if arg.trim_start().starts_with('{') {
        Ok(arg.to_string())
    } else {
        std::fs::read_to_string(arg).map_err(|e| format!("{arg}: {e}"))
    }
}

/// `id=value` pairs from flags, then from `AUTSEQ_HORIZONS` (comma
/// separated) for ids the flags leave unset.
fn parse_horizons(flags: &[String]) -> Result<HashMap<String, u64>, Failure> {
    let env = std::env::var("AUTSEQ_HORIZONS").unwrap_or_default();
    let mut map = HashMap::new();
    let env_items = env.split(',').map(str::trim).filter(|s| !s.is_empty());
    for item in flags.iter().map(String::as_str).chain(env_items) {
        let (id, value) = item
            .split_once('=')
            .ok_or_else(|| format!("horizon {item:?} is not id=value"))?;
        let value: u64 = value
            .parse()
            .map_err(|_| format!("horizon {item:?} has a non-numeric value"))?;
        map.entry(id.to_string()).or_insert(value);
    }
    Ok(map)
}

fn print_automaton<O>(
    out: &mut impl Write,
    m: &Dfao<O>,
    dot: bool,
    json: bool,
) -> Result<(), Failure>
where
    O: std::fmt::Display + serde::Serialize,
{
    if dot {
        write!(out, "{}", m.to_dot()).map_err(err)?;
    } else if json {
        writeln!(out, "{}", serde_json::to_string(m).map_err(err)?).map_err(err)?;
    } else {
        writeln!(
            out,
            "read order: {}; initial: {}",
            m.read_order(),
            m.state_name(m.initial())
        )
        .map_err(err)?;
        for q in 0..m.len() {
            let moves: Vec<String> = m
                .alphabet()
                .iter()
                .map(|&c| {
                    format!(
                        "{c}->{}",
                        m.state_name(m.step(q, c).expect("letter in alphabet"))
                    )
                })
                .collect();
            writeln!(
                out,
                "{} [{}] {}",
                m.state_name(q),
                m.output(q),
                moves.join(" ")
            )
            .map_err(err)?;
        }
    }
    Ok(())
}
