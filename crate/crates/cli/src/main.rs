use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use wreathcat::disks::enumerate_disks;
use wreathcat::duality::{verify_bj_duality, verify_crossed_duality, DualityReport, Fault};
use wreathcat::fincat::terminal;
use wreathcat::interchange::{check_document, check_format, document, write_category, DiskList};
use wreathcat::sieves::{berger_natural_iso, classify_sieves};
use wreathcat::sites::{materialize, Ambient, Site};
use wreathcat::wreath::{cosegal_omega, cowreath, m_of, mop_of, segal_gamma, theta, wreath};
use wreathcat::FiniteCategory;

#[derive(Parser)]
#[command(name = "wreathcat", version, about = "Finite wreath products, Θ_n, disks and sieves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count the morphisms [n] → [m] of a site.
    Hom {
        site: String,
        n: usize,
        m: usize,
        /// List the morphisms as canonical payloads.
        #[arg(long)]
        verbose: bool,
    },
    /// Materialize a construction as an interchange document.
    Build {
        what: Build,
        /// Level of Θ_n or dimension of the disks.
        n: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        bounds: Vec<usize>,
        /// Largest total disk size.
        #[arg(long)]
        size: Option<usize>,
        /// Largest index set for M and M^op.
        #[arg(long)]
        max: Option<usize>,
        /// Label category: `star` or a site name, truncated at the last bound.
        #[arg(long)]
        base: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "v1")]
        format: String,
    },
    /// Run a verification pipeline; exit 0 exactly when it passes.
    Verify {
        pipeline: Pipeline,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        bounds: Vec<usize>,
        /// Largest total disk size used as an essential-surjectivity target.
        #[arg(long)]
        size: Option<usize>,
        /// Largest rank of the sieve window.
        #[arg(long)]
        window: Option<usize>,
        /// Layers of the crossed wreath product, outermost first.
        #[arg(long, value_delimiter = ',')]
        ambients: Vec<String>,
        /// Largest rank for the Segal comparison.
        #[arg(long)]
        max: Option<usize>,
        #[arg(long)]
        inject_fault: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "v1")]
        format: String,
    },
    /// Validate an interchange document and confirm it is canonical.
    Check { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Build {
    Theta,
    Wreath,
    Cowreath,
    #[value(name = "M")]
    M,
    #[value(name = "Mop")]
    Mop,
    Disks,
}

#[derive(Clone, Copy, ValueEnum)]
enum Pipeline {
    Bj,
    Crossed,
    Sieves,
    SegalIso,
}

enum Failure {
    Usage(String),
    Stage(String),
}

impl From<wreathcat::Error> for Failure {
    fn from(e: wreathcat::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(format!("I/O error: {e}"))
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    match run(Cli::parse().command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Stage(s)) => {
            eprintln!("FAILED at {s}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Hom { site, n, m, verbose } => hom(&site, n, m, verbose),
        Command::Build {
            what,
            n,
            bounds,
            size,
            max,
            base,
            out,
            format,
        } => {
            check_format(&format)?;
            build(what, n, &bounds, size, max, base.as_deref(), out)
        }
        Command::Verify {
            pipeline,
            n,
            bounds,
            size,
            window,
            ambients,
            max,
            inject_fault,
            out,
            format,
        } => {
            check_format(&format)?;
            let fault = inject_fault.map(|f| f.parse::<Fault>()).transpose()?;
            if fault.is_some() && !matches!(pipeline, Pipeline::Bj) {
                return Err(Failure::Usage("faults can only be injected into bj".into()));
            }
            match pipeline {
                Pipeline::Bj => verify_bj(n, &bounds, size, fault, out),
                Pipeline::Crossed => verify_crossed(&ambients, &bounds, out),
                Pipeline::Sieves => verify_sieves(n, window, out),
                Pipeline::SegalIso => verify_segal_iso(max, out),
            }
        }
        Command::Check { file } => {
            let text = std::fs::read_to_string(&file)?;
            let kind = check_document(&text)?;
            println!("{}: valid canonical {kind} document", file.display());
            Ok(())
        }
    }
}

fn hom(site: &str, n: usize, m: usize, verbose: bool) -> Outcome {
    let site: Site = site.parse()?;
    if n.min(m) < site.min_rank() {
        return Err(Failure::Usage(format!("{site} has no objects of rank below {}", site.min_rank())));
    }
    let out = io::stdout();
    let mut w = out.lock();
    if verbose {
        let homs = site.hom(n, m);
        writeln!(w, "{}", homs.len())?;
        for p in homs {
            writeln!(w, "{p}")?;
        }
    } else {
        writeln!(w, "{}", site.hom_count(n, m))?;
    }
    Ok(())
}

fn sink(out: Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

fn emit(out: Option<PathBuf>, text: &str) -> io::Result<()> {
    let mut w = sink(out)?;
    w.write_all(text.as_bytes())?;
    w.flush()
}

fn emit_category(out: Option<PathBuf>, c: &FiniteCategory) -> Outcome {
    let mut w = sink(out)?;
    write_category(c, &mut w)?;
    w.flush()?;
    Ok(())
}

fn label_category(base: &str, bound: Option<usize>) -> Result<FiniteCategory, Failure> {
    if base == "star" || base == "*" {
        return Ok(terminal());
    }
    let site: Site = base.parse()?;
    let b = bound.ok_or_else(|| Failure::Usage(format!("--bounds must bound {site}")))?;
    Ok(materialize(site, b))
}

fn need_pair(bounds: &[usize]) -> Result<(usize, usize), Failure> {
    match bounds {
        [a, b] => Ok((*a, *b)),
        _ => Err(Failure::Usage("--bounds takes two values".into())),
    }
}

fn build(
    what: Build,
    n: Option<usize>,
    bounds: &[usize],
    size: Option<usize>,
    max: Option<usize>,
    base: Option<&str>,
    out: Option<PathBuf>,
) -> Outcome {
    if bounds.iter().any(|&b| b == 0) {
        return Err(Failure::Usage("bounds must be positive".into()));
    }
    match what {
        Build::Theta => {
            let n = n.unwrap_or(bounds.len());
            emit_category(out, &*theta(n, bounds)?)
        }
        Build::Wreath => {
            let (a, b) = need_pair(bounds)?;
            let labels = label_category(base.unwrap_or("delta"), Some(b))?;
            emit_category(out, &wreath(&segal_gamma(a)?, Arc::new(labels))?.category)
        }
        Build::Cowreath => {
            let (a, b) = need_pair(bounds)?;
            let labels = label_category(base.unwrap_or("delta"), Some(b))?;
            emit_category(out, &cowreath(&cosegal_omega(a)?, Arc::new(labels))?.category)
        }
        Build::M | Build::Mop => {
            let max = max.unwrap_or(3);
            let c = label_category(base.unwrap_or("star"), bounds.last().copied())?;
            let built = match what {
                Build::M => Arc::unwrap_or_clone(m_of(Arc::new(c), max)?.category),
                _ => mop_of(&c, max)?,
            };
            emit_category(out, &built)
        }
        Build::Disks => {
            let dim = n.unwrap_or(2);
            let size_bound = size.unwrap_or(8);
            let l = DiskList {
                dim,
                size_bound,
                disks: enumerate_disks(dim, size_bound),
            };
            eprintln!("{} disks of dimension {dim} and size at most {size_bound}", l.disks.len());
            emit(out, &document("disks", &l))?;
            Ok(())
        }
    }
}

fn finish(report: &DualityReport, out: Option<PathBuf>) -> Outcome {
    emit(out, &document("report", report))?;
    for s in &report.stages {
        eprintln!("{} {}", if s.passed { "ok  " } else { "FAIL" }, s.stage);
    }
    match report.failure() {
        None if report.passed => Ok(()),
        Some(f) => Err(Failure::Stage(f)),
        None => Err(Failure::Stage(report.failed_stage.clone().unwrap_or_default())),
    }
}

fn verify_bj(
    n: Option<usize>,
    bounds: &[usize],
    size: Option<usize>,
    fault: Option<Fault>,
    out: Option<PathBuf>,
) -> Outcome {
    let n = n.unwrap_or(if bounds.is_empty() { 2 } else { bounds.len() });
    let bounds = if bounds.is_empty() { vec![2; n] } else { bounds.to_vec() };
    let report = verify_bj_duality(n, &bounds, size.unwrap_or(8), fault)?;
    finish(&report, out)
}

fn verify_crossed(ambients: &[String], bounds: &[usize], out: Option<PathBuf>) -> Outcome {
    let ambients: Vec<Ambient> = if ambients.is_empty() {
        vec![Ambient::Lambda, Ambient::Delta]
    } else {
        ambients.iter().map(|a| a.parse()).collect::<Result<_, _>>()?
    };
    let bounds = if bounds.is_empty() { vec![1; ambients.len()] } else { bounds.to_vec() };
    let report = verify_crossed_duality(&ambients, &bounds)?;
    finish(&report, out)
}

fn verify_sieves(n: Option<usize>, window: Option<usize>, out: Option<PathBuf>) -> Outcome {
    let n = n.unwrap_or(2);
    let r = classify_sieves(n, window.unwrap_or(n + 1))?;
    emit(out, &document("sieve-classification", &r))?;
    eprintln!(
        "{} sieves on [{n}], {} families, {} sieves matched",
        r.sieves, r.families, r.matched
    );
    match r.failures.first() {
        None => Ok(()),
        Some(f) => Err(Failure::Stage(format!("sieve classification: {f}"))),
    }
}

fn verify_segal_iso(max: Option<usize>, out: Option<PathBuf>) -> Outcome {
    let r = berger_natural_iso(max.unwrap_or(5))?;
    emit(out, &document("segal-iso", &r))?;
    eprintln!("Y_[1]/S ≅ γ′ up to rank {}: {} violations", r.max_rank, r.violations.len());
    match r.violations.first() {
        None => Ok(()),
        Some(v) => Err(Failure::Stage(format!("Y_[1]/S ≅ γ′: {v}"))),
    }
}
