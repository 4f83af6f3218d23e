//! `klein`: LLS periods, reductions, sails and census statistics of SL(2,Z) operators.

mod render;

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use klein_core::analysis::{canonical_period, census, min_complexity, ratio_experiment, CensusOptions};
use klein_core::numeric::{gk_probability, ContinuedFraction};
use klein_core::scalar::format_tuple;
use klein_core::{
    construct_from_period, construct_negative_lambda, construct_series_i, four_sail_periods, lls_period, reduce,
    Error, Matrix,
};
use num_bigint::BigInt;
use serde_json::json;

const MATRIX_HELP: &str = "Operator as \"m11 m12; m21 m22\" or JSON [[m11,m12],[m21,m22]] (rows). \
The letters a, b, c, d used in the output name the display [[a,c][b,d]], i.e. a=m11, c=m12, b=m21, d=m22.";

#[derive(Parser)]
#[command(name = "klein", version, about = "Geometric continued fractions of SL(2,Z) operators")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
    Svg,
}

#[derive(Subcommand)]
enum Command {
    /// LLS period of a hyperbolic operator and its canonical form.
    Period {
        #[arg(help = MATRIX_HELP, allow_hyphen_values = true)]
        matrix: String,
    },
    /// Reduce an operator, printing the reduced form and conjugator.
    Reduce {
        #[arg(help = MATRIX_HELP, allow_hyphen_values = true)]
        matrix: String,
        /// Print every step.
        #[arg(long)]
        trace: bool,
    },
    /// Operator with a prescribed period: prefix followed by lambda.
    Construct {
        /// Odd-length comma separated prefix; omit for the series with a = 0.
        #[arg(long)]
        prefix: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        lambda: BigInt,
    },
    /// One period of each of the four sails.
    Sail {
        #[arg(help = MATRIX_HELP, allow_hyphen_values = true)]
        matrix: String,
    },
    /// SVG picture of the four sails with integer lengths and sines.
    Render {
        #[arg(help = MATRIX_HELP, allow_hyphen_values = true)]
        matrix: String,
        /// Half-width of the drawn window in lattice units; chosen from the sails when omitted.
        #[arg(long)]
        window: Option<i64>,
        /// Write to this file instead of standard output.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Count reduced operators reached from all matrices with entries bounded by N.
    Census {
        /// The bound N on absolute values of entries.
        #[arg(long)]
        bound: i64,
        /// Only count operators with |trace| up to this value.
        #[arg(long)]
        trace_cap: Option<i64>,
        /// Worker threads (0 = all cores).
        #[arg(long, env = "KLEIN_WORKERS", default_value_t = 0)]
        workers: usize,
        /// Resume from and periodically save to this checkpoint file.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
    },
    /// Minimal complexity of a period.
    Mincomplexity {
        /// Comma separated period.
        period: String,
    },
    /// Gauss-Kuzmin probability of an odd-length pattern.
    Gk {
        /// Comma separated pattern.
        pattern: String,
    },
    /// Census ratio of two labels against the Gauss-Kuzmin ratio.
    Ratio {
        p1: String,
        p2: String,
        /// Comma separated bounds N.
        #[arg(long)]
        bound: String,
        #[arg(long, env = "KLEIN_WORKERS", default_value_t = 0)]
        workers: usize,
    },
}

enum Failure {
    Parse(String),
    Precondition(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_internal() {
            Failure::Internal(e.to_string())
        } else {
            Failure::Precondition(e.to_string())
        }
    }
}

type Output = Result<String, Failure>;

fn parse_matrix(s: &str) -> Result<Matrix, Failure> {
    s.parse().map_err(|e: Error| Failure::Parse(e.to_string()))
}

fn parse_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>, Failure> {
    s.split(',')
        .map(|t| t.trim().parse::<T>().map_err(|_| Failure::Parse(format!("cannot parse {t:?} in {s:?}"))))
        .collect()
}

fn to_json<T: serde::Serialize>(v: &T) -> Output {
    serde_json::to_string_pretty(v).map_err(|e| Failure::Internal(e.to_string()))
}

fn unsupported(format: Format, what: &str) -> Failure {
    let name = format.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
    Failure::Parse(format!("format {name} is not available for {what}"))
}

fn run(cli: Cli) -> Output {
    let format = cli.format;
    match cli.command {
        Command::Period { matrix } => {
            let a = parse_matrix(&matrix)?;
            let period = lls_period(&a)?;
            let canon = canonical_period(period.word())?;
            match format {
                Format::Text => Ok(format!("{period}\ncanonical: {canon}")),
                Format::Json => to_json(&json!({ "period": period, "canonical": canon })),
                _ => Err(unsupported(format, "period")),
            }
        }
        Command::Reduce { matrix, trace } => {
            let a = parse_matrix(&matrix)?;
            let t = reduce(&a)?;
            match format {
                Format::Json => to_json(&t),
                Format::Text => {
                    let mut out = String::new();
                    if trace {
                        for s in &t.steps {
                            let conj = s.conjugator.as_ref().map(|c| format!(" by {c}")).unwrap_or_default();
                            let flip = if s.sign_flip { " and negate" } else { "" };
                            let _ = writeln!(out, "{}{conj}{flip}: {}", s.label, s.state);
                        }
                    }
                    let _ = write!(out, "reduced: {}\nT: {}\nsign: {}", t.final_state, t.t, t.sign);
                    Ok(out)
                }
                _ => Err(unsupported(format, "reduce")),
            }
        }
        Command::Construct { prefix, lambda } => {
            let prefix = prefix.map(|p| parse_list::<BigInt>(&p)).transpose()?;
            let (op, period) = if lambda < BigInt::from(0) {
                let (op, p) = construct_negative_lambda(prefix.as_deref(), &lambda)?;
                (op, Some(p))
            } else {
                let op = match &prefix {
                    Some(p) => construct_from_period(p, &lambda)?,
                    None => construct_series_i(&lambda)?,
                };
                (op, None)
            };
            match format {
                Format::Text => Ok(match period {
                    Some(p) => format!("{op}\nperiod: {p}"),
                    None => op.to_string(),
                }),
                Format::Json => to_json(&json!({ "operator": op, "period": period })),
                _ => Err(unsupported(format, "construct")),
            }
        }
        Command::Sail { matrix } => {
            let a = parse_matrix(&matrix)?;
            let sails = four_sail_periods(&a)?;
            match format {
                Format::Json => to_json(&sails),
                Format::Text => {
                    let mut out = String::new();
                    for s in &sails {
                        let vs: Vec<String> = s.chain.vertices().iter().map(|v| v.to_string()).collect();
                        let _ = writeln!(out, "octant {}: {}", s.octant, vs.join(" "));
                        let _ = writeln!(out, "  lls: {}  shift: {}", format_tuple(s.word()), s.shift);
                    }
                    Ok(out.trim_end().to_string())
                }
                _ => Err(unsupported(format, "sail")),
            }
        }
        Command::Render { matrix, window, output } => {
            if !matches!(format, Format::Svg | Format::Text) {
                return Err(unsupported(format, "render"));
            }
            let a = parse_matrix(&matrix)?;
            let svg = render::render(&a, window)?;
            match output {
                Some(path) => {
                    std::fs::write(&path, &svg).map_err(|e| Failure::Precondition(format!("{}: {e}", path.display())))?;
                    Ok(String::new())
                }
                None => Ok(svg.trim_end().to_string()),
            }
        }
        Command::Census { bound, trace_cap, workers, checkpoint } => {
            let mut opts = CensusOptions::new(bound);
            opts.trace_cap = trace_cap;
            opts.workers = workers;
            opts.checkpoint = checkpoint;
            let report = census(&opts)?;
            match format {
                Format::Csv => Ok(report.to_csv()?.trim_end().to_string()),
                Format::Json => Ok(report.to_json()?),
                Format::Text => {
                    let mut out = format!("N = {bound}, {} matrices reduced\n", report.matrices_scanned);
                    for ((t, label), v) in &report.counts {
                        let _ = writeln!(out, "{t:>4}  {:<16} {v}", format_tuple(label));
                    }
                    Ok(out.trim_end().to_string())
                }
                Format::Svg => Err(unsupported(format, "census")),
            }
        }
        Command::Mincomplexity { period } => {
            let word = parse_list::<BigInt>(&period)?;
            let r = min_complexity(&word)?;
            match format {
                Format::Json => to_json(&r),
                Format::Text => {
                    let windows: Vec<String> =
                        r.argmin_windows.iter().map(|(s, w)| format!("{w} (start {s})")).collect();
                    Ok(format!("{}\n{}", r.value, windows.join("\n")))
                }
                _ => Err(unsupported(format, "mincomplexity")),
            }
        }
        Command::Gk { pattern } => {
            let p = parse_list::<BigInt>(&pattern)?;
            let g: f64 = gk_probability(&p)?;
            match format {
                Format::Text => Ok(format!("{g:.12}")),
                Format::Json => to_json(&json!({ "pattern": ContinuedFraction::new(p)?, "gk": g })),
                _ => Err(unsupported(format, "gk")),
            }
        }
        Command::Ratio { p1, p2, bound, workers } => {
            let (p1, p2) = (parse_list::<i64>(&p1)?, parse_list::<i64>(&p2)?);
            let ns = parse_list::<i64>(&bound)?;
            let rows = ratio_experiment(&p1, &p2, &ns, workers)?;
            match format {
                Format::Json => to_json(&rows),
                Format::Text | Format::Csv => {
                    let sep = if format == Format::Csv { "," } else { "\t" };
                    let mut out = ["N", "count1", "count2", "empirical", "gk_ratio"].join(sep);
                    for r in rows {
                        let emp = r.empirical.map(|e| format!("{e:.6}")).unwrap_or_else(|| "NA".into());
                        let _ = write!(out, "\n{}{sep}{}{sep}{}{sep}{emp}{sep}{:.6}", r.n, r.count1, r.count2, r.gk_ratio);
                    }
                    Ok(out)
                }
                Format::Svg => Err(unsupported(format, "ratio")),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            if !out.is_empty() {
                let mut stdout = std::io::stdout().lock();
                let _ = writeln!(stdout, "{out}");
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Parse(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Precondition(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(4)
        }
    }
}
