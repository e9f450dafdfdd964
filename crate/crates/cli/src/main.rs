use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use curvecheck::bounds::{self, CandidateWindow};
use curvecheck::groebner::{self, Ideal};
use curvecheck::hilbert;
use curvecheck::pipeline::{self, PipelineConfig, PrimeSource, ReportFormat};
use curvecheck::poly::MonomialOrder;

#[derive(Parser)]
#[command(name = "curvecheck", version, about = "Exact checks for a quadric-cut curve whose ideal needs cubics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    Grevlex,
    Lex,
}

#[derive(Subcommand)]
enum Command {
    /// Build the curve from random plane data and check every invariant.
    Verify {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Field characteristic; defaults to $CURVECHECK_PRIME or 31991.
        #[arg(long)]
        prime: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Sample all 22 points at random instead of fixing the triple points.
        #[arg(long)]
        no_normalize: bool,
        #[arg(long, default_value_t = 100)]
        budget: usize,
    },
    /// Genus windows where a nonspecial ACM curve cannot have a quadric-generated ideal.
    ScanBounds {
        #[arg(value_name = "R_MIN", conflicts_with = "r_min")]
        r_min_pos: Option<u32>,
        #[arg(value_name = "R_MAX", conflicts_with = "r_max")]
        r_max_pos: Option<u32>,
        #[arg(long)]
        r_min: Option<u32>,
        #[arg(long)]
        r_max: Option<u32>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Hilbert series, polynomial, degree and genus of a homogeneous ideal file.
    Hilbert {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Reduced Gröbner basis of an ideal file, in the same file format.
    Groebner {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Order::Grevlex)]
        order: Order,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read_ideal(path: &Path) -> anyhow::Result<Ideal> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ideal::parse_text(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn verify(seed: u64, prime: Option<u64>, format: Format, out: Option<PathBuf>, no_normalize: bool, budget: usize) -> anyhow::Result<bool> {
    let (prime, prime_source) = match prime {
        Some(p) => (p, PrimeSource::CommandLine),
        None => PipelineConfig::default_prime()?,
    };
    let format = match format {
        Format::Text => ReportFormat::Text,
        Format::Json => ReportFormat::Json,
    };
    let cfg = PipelineConfig {
        seed,
        prime,
        prime_source,
        normalize_triple_points: !no_normalize,
        rejection_budget: budget,
        format,
        out: out.clone(),
        ..Default::default()
    };
    let report = pipeline::run_verification(&cfg)?;
    match &out {
        Some(path) => {
            report.write_to(format, path).with_context(|| format!("writing {}", path.display()))?;
            println!("verdict: {} (report written to {})", if report.passed() { "PASS" } else { "FAIL" }, path.display());
        }
        None => print!("{}", report.serialize(format)),
    }
    Ok(report.passed())
}

fn window_row(w: &CandidateWindow) -> String {
    let escape = match &w.escape {
        None => "-".to_string(),
        Some(e) => format!(
            "g={} d={} forced genus {} ({})",
            e.g,
            e.d,
            e.forced_genus_display(),
            if e.consistent { "consistent" } else { "contradiction" }
        ),
    };
    let cands = if w.candidates.is_empty() {
        "empty".to_string()
    } else {
        w.candidates.iter().map(|(g, d)| format!("({g},{d})")).collect::<Vec<_>>().join(" ")
    };
    format!("{:>3} {:>6} {:>6}  {:<40} {}", w.r, w.g_min, w.g_max, escape, cands)
}

fn scan_bounds(r_min: u32, r_max: u32, format: Format) -> anyhow::Result<()> {
    if r_min < 3 || r_min > r_max {
        bail!("need 3 <= r-min <= r-max, got {r_min}..{r_max}");
    }
    let windows = bounds::candidate_scan(r_min, r_max);
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&windows)?),
        Format::Text => {
            println!("{:>3} {:>6} {:>6}  {:<40} candidates (g,d)", "r", "g_min", "g_max", "escape (exactly r quadrics)");
            for w in &windows {
                println!("{}", window_row(w));
            }
            for w in windows.iter().filter(|w| w.note.is_some()) {
                println!("note r={}: {}", w.r, w.note.as_deref().unwrap_or_default());
            }
        }
    }
    Ok(())
}

fn hilbert_cmd(file: &Path, format: Format) -> anyhow::Result<()> {
    let ideal = read_ideal(file)?;
    if !ideal.is_homogeneous() {
        bail!("{}: ideal is not homogeneous", file.display());
    }
    let series = hilbert::hilbert_series_of_ideal(&ideal);
    let poly = hilbert::hilbert_polynomial(&series);
    match format {
        Format::Json => {
            let v = serde_json::json!({
                "series": series.to_string(),
                "numerator": series.numerator,
                "denominator_exponent": series.denominator_exponent,
                "hilbert_polynomial": poly.to_string(),
                "dimension": poly.dimension,
                "degree": poly.degree,
                "genus": poly.genus,
            });
            println!("{}", serde_json::to_string_pretty(&v)?);
        }
        Format::Text => {
            println!("Hilbert series: {series}");
            println!("Hilbert polynomial: {poly}");
            println!("dimension {}", poly.dimension);
            match poly.genus {
                Some(g) => println!("degree {}, genus {g}", poly.degree),
                None => println!("degree {}", poly.degree),
            }
        }
    }
    Ok(())
}

fn groebner_cmd(file: &Path, order: Order, out: Option<&Path>) -> anyhow::Result<()> {
    let ideal = read_ideal(file)?;
    let order = match order {
        Order::Grevlex => MonomialOrder::Grevlex,
        Order::Lex => MonomialOrder::Lex,
    };
    let gb = groebner::buchberger(&ideal.with_order(order));
    emit(out, &gb.into_ideal().to_text())
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    match cli.command {
        Command::Verify { seed, prime, format, out, no_normalize, budget } => verify(seed, prime, format, out, no_normalize, budget),
        Command::ScanBounds { r_min_pos, r_max_pos, r_min, r_max, format } => {
            let lo = r_min.or(r_min_pos).unwrap_or(3);
            let hi = r_max.or(r_max_pos).unwrap_or(7);
            scan_bounds(lo, hi, format).map(|_| true)
        }
        Command::Hilbert { file, format } => hilbert_cmd(&file, format).map(|_| true),
        Command::Groebner { file, order, out } => groebner_cmd(&file, order, out.as_deref()).map(|_| true),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
