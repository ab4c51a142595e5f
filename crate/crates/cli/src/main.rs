use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cyclic_sieving::crystal::{self, braid_relations_hold};
use cyclic_sieving::csp::{check_main_corollary, check_refined_theorem, CspError};
use cyclic_sieving::sweep::{
    compare_orders, explore_full, explore_refined, promotion_contrasts, run_sweep,
    OrderComparison, SweepConfig, SweepRow,
};
use cyclic_sieving::tableau::{enumerate, enumerate_content};
use cyclic_sieving::{Convention, CspReport, SkewShape, Tableau, WeakComposition};

#[derive(Parser)]
#[command(name = "csp", version, about = "Skew tableaux, crystal actions and cyclic sieving checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List SSYT(shape, n) or SSYT(shape, content) in canonical order.
    Enumerate {
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long)]
        content: Option<String>,
    },
    /// Print the c_n-orbit of a tableau.
    Orbit {
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long)]
        tableau: String,
    },
    /// Verify a full-set or refined-union triple and print the JSON report.
    Verify {
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long)]
        content: Option<String>,
        #[arg(long, conflicts_with = "full")]
        refined: bool,
        #[arg(long)]
        full: bool,
        /// Statistic convention. Defaults to zero-based for --full and one-based for --refined.
        #[arg(long)]
        convention: Option<Convention>,
        /// Run even when gcd(|shape|, n) ≠ 1.
        #[arg(long)]
        explore: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check every instance up to the given bounds.
    Sweep(SweepArgs),
    /// Compare the orders of c_n and promotion.
    PromotionCompare {
        #[arg(long)]
        outer: Option<String>,
        #[arg(long, default_value = "")]
        inner: String,
        #[arg(long)]
        n: Option<usize>,
        /// Search every shape up to --max-size and n up to --max-n instead.
        #[arg(long)]
        sweep: bool,
        #[arg(long, default_value_t = 6)]
        max_size: u32,
        #[arg(long, default_value_t = 4)]
        max_n: usize,
    },
}

#[derive(Args)]
struct ShapeArgs {
    #[arg(long)]
    outer: String,
    #[arg(long, default_value = "")]
    inner: String,
    #[arg(long)]
    n: usize,
}

impl ShapeArgs {
    fn shape(&self) -> Result<SkewShape, Failure> {
        SkewShape::parse(&self.outer, &self.inner).map_err(Failure::input)
    }
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..))]
    max_size: u32,
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..=15))]
    max_n: u64,
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    skew: bool,
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    coprime_only: bool,
    /// Required with --coprime-only false; those rows carry no expectation.
    #[arg(long)]
    explore: bool,
    #[arg(long, default_value = "zero-based")]
    convention: Convention,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

/// An exit status and the message printed to stderr.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    const VERIFY: u8 = 1;
    const GCD: u8 = 2;
    const INPUT: u8 = 3;

    fn input(e: impl std::fmt::Display) -> Failure {
        Failure {
            code: Self::INPUT,
            message: e.to_string(),
        }
    }

    fn io(e: io::Error) -> Failure {
        Failure {
            code: Self::VERIFY,
            message: format!("i/o error: {e}"),
        }
    }
}

impl From<CspError> for Failure {
    fn from(e: CspError) -> Failure {
        let code = match e {
            CspError::Gcd { .. } => Failure::GCD,
            CspError::ContentLength { .. } => Failure::INPUT,
            _ => Failure::VERIFY,
        };
        let message = match e {
            CspError::Gcd { .. } => format!(
                "{e}; the theorem's hypotheses do not apply (pass --explore to test anyway)"
            ),
            _ => e.to_string(),
        };
        Failure { code, message }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(cli.command, &mut out).and_then(|code| {
        out.flush().map_err(Failure::io)?;
        Ok(code)
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            let _ = out.flush();
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command, out: &mut impl Write) -> Result<u8, Failure> {
    match command {
        Command::Enumerate { shape, content } => cmd_enumerate(&shape, content.as_deref(), out),
        Command::Orbit { shape, tableau } => cmd_orbit(&shape, &tableau, out),
        Command::Verify {
            shape,
            content,
            refined,
            full: _,
            convention,
            explore,
            output,
        } => {
            let report = cmd_verify(&shape, content.as_deref(), refined, convention, explore)?;
            let text = serde_json::to_string_pretty(&report.to_json()).expect("json");
            match output {
                Some(path) => std::fs::write(&path, format!("{text}\n")).map_err(Failure::io)?,
                None => writeln!(out, "{text}").map_err(Failure::io)?,
            }
            Ok(if report.verdict.holds() { 0 } else { Failure::VERIFY })
        }
        Command::Sweep(args) => cmd_sweep(&args, out),
        Command::PromotionCompare {
            outer,
            inner,
            n,
            sweep,
            max_size,
            max_n,
        } => {
            if sweep {
                cmd_promotion_sweep(max_size, max_n, out)
            } else {
                let (Some(outer), Some(n)) = (outer, n) else {
                    return Err(Failure::input("--outer and --n are required without --sweep"));
                };
                let args = ShapeArgs { outer, inner, n };
                cmd_promotion_compare(&args, out)
            }
        }
    }
}

fn parse_content(text: &str, n: usize) -> Result<WeakComposition, Failure> {
    let a: WeakComposition = text.parse().map_err(Failure::input)?;
    if a.len() != n {
        return Err(Failure::input(format!(
            "content {a} has length {}, expected n = {n}",
            a.len()
        )));
    }
    Ok(a)
}

fn cmd_enumerate(args: &ShapeArgs, content: Option<&str>, out: &mut impl Write) -> Result<u8, Failure> {
    let shape = args.shape()?;
    let set = match content {
        Some(text) => enumerate_content(&shape, &parse_content(text, args.n)?),
        None => enumerate(&shape, args.n),
    };
    for t in &set {
        writeln!(out, "{t}").map_err(Failure::io)?;
    }
    writeln!(out, "{}", set.len()).map_err(Failure::io)?;
    Ok(0)
}

fn cmd_orbit(args: &ShapeArgs, text: &str, out: &mut impl Write) -> Result<u8, Failure> {
    let shape = args.shape()?;
    let t = Tableau::parse_with_shape(&shape, text, args.n).map_err(Failure::input)?;
    let orbit = crystal::orbit(&t).map_err(|e| Failure::from(CspError::from(e)))?;
    for e in &orbit.elements {
        writeln!(out, "{e}\t{}", e.weight()).map_err(Failure::io)?;
    }
    writeln!(out, "{}", orbit.size()).map_err(Failure::io)?;
    Ok(0)
}

fn cmd_verify(
    args: &ShapeArgs,
    content: Option<&str>,
    refined: bool,
    convention: Option<Convention>,
    explore: bool,
) -> Result<CspReport, Failure> {
    let shape = args.shape()?;
    let n = args.n;
    if n == 0 {
        return Err(Failure::input("n must be positive"));
    }
    if refined {
        let Some(text) = content else {
            return Err(Failure::input("--refined requires --content"));
        };
        let a = parse_content(text, n)?;
        let convention = convention.unwrap_or(Convention::OneBased);
        match check_refined_theorem(&shape, &a, n, convention) {
            Err(CspError::Gcd { .. }) if explore => Ok(explore_refined(&shape, &a, convention)?),
            other => Ok(other?),
        }
    } else {
        if content.is_some() {
            return Err(Failure::input("--content applies only with --refined"));
        }
        let convention = convention.unwrap_or(Convention::ZeroBased);
        match check_main_corollary(&shape, n, convention) {
            Err(CspError::Gcd { .. }) if explore => Ok(explore_full(&shape, n, convention)?),
            Ok(mc) => Ok(mc.report),
            Err(e) => Err(e.into()),
        }
    }
}

fn row_json(row: &SweepRow) -> Value {
    let mut v = match &row.report {
        Some(r) => r.to_json(),
        None => json!({
            "shape_outer": row.shape.outer().parts(),
            "shape_inner": row.shape.inner().parts(),
            "n": row.n,
            "scope": row.scope.as_str(),
        }),
    };
    v.as_object_mut()
        .expect("report is an object")
        .insert("outcome".into(), json!(row.outcome.label()));
    v
}

fn cmd_sweep(args: &SweepArgs, out: &mut impl Write) -> Result<u8, Failure> {
    if !args.coprime_only && !args.explore {
        return Err(Failure::input(
            "--coprime-only false runs instances outside the theorem; pass --explore",
        ));
    }
    let config = SweepConfig {
        max_size: args.max_size,
        max_n: args.max_n as usize,
        skew: args.skew,
        coprime_only: args.coprime_only,
        convention: args.convention,
    };
    let mut file = match &args.output {
        Some(path) => Some(BufWriter::new(File::create(path).map_err(Failure::io)?)),
        None => None,
    };
    let mut io_error = None;
    {
        let sink: &mut dyn Write = match file.as_mut() {
            Some(f) => f,
            None => out,
        };
        let mut emit = |line: String| {
            if io_error.is_none() {
                if let Err(e) = writeln!(sink, "{line}") {
                    io_error = Some(e);
                }
            }
        };
        if let Format::Tsv = args.format {
            emit(SweepRow::TSV_HEADER.to_string());
        }
        let summary = run_sweep(&config, |row| {
            emit(match args.format {
                Format::Tsv => row.tsv(),
                Format::Json => row_json(row).to_string(),
            })
        });
        emit(summary.final_line());
        if let Some(e) = io_error {
            return Err(Failure::io(e));
        }
        if file.is_some() {
            writeln!(out, "{}", summary.final_line()).map_err(Failure::io)?;
        }
        if let Some(f) = file.as_mut() {
            f.flush().map_err(Failure::io)?;
        }
        Ok(if summary.all_hold() { 0 } else { Failure::VERIFY })
    }
}

fn write_comparison(c: &OrderComparison, out: &mut impl Write) -> io::Result<()> {
    writeln!(
        out,
        "{}\tn={}\t|SSYT|={}\tc_n order={}\tpromotion order={}{}",
        c.shape,
        c.n,
        c.set_size,
        c.c_order,
        c.promotion_order,
        if c.differs() { "\tdiffers" } else { "" }
    )
}

fn cmd_promotion_compare(args: &ShapeArgs, out: &mut impl Write) -> Result<u8, Failure> {
    let shape = args.shape()?;
    if args.n == 0 {
        return Err(Failure::input("n must be positive"));
    }
    let set = enumerate(&shape, args.n);
    if set.is_empty() {
        return Err(Failure::input(format!("SSYT({shape}, {}) is empty", args.n)));
    }
    let crystal_error = |e| Failure::from(CspError::from(e));
    let c = compare_orders(&shape, args.n).map_err(crystal_error)?;
    let braid = braid_relations_hold(&set).map_err(crystal_error)?;
    writeln!(out, "c_n order: {}", c.c_order).map_err(Failure::io)?;
    writeln!(out, "promotion order: {}", c.promotion_order).map_err(Failure::io)?;
    writeln!(
        out,
        "braid relations σᵢσᵢ₊₁σᵢ = σᵢ₊₁σᵢσᵢ₊₁: {}",
        if braid { "hold" } else { "fail" }
    )
    .map_err(Failure::io)?;
    writeln!(
        out,
        "{}",
        if c.differs() {
            "orders differ"
        } else {
            "orders agree"
        }
    )
    .map_err(Failure::io)?;
    Ok(0)
}

fn cmd_promotion_sweep(max_size: u32, max_n: usize, out: &mut impl Write) -> Result<u8, Failure> {
    let config = SweepConfig {
        max_size,
        max_n,
        ..SweepConfig::default()
    };
    let found = promotion_contrasts(&config).map_err(|e| Failure::from(CspError::from(e)))?;
    for c in &found {
        write_comparison(c, out).map_err(Failure::io)?;
    }
    writeln!(out, "{} instance(s) where promotion's order differs from n", found.len())
        .map_err(Failure::io)?;
    Ok(0)
}
