mod expr;

use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lifetime_core::homology::{self, persistence_pairs, FieldTag};
use lifetime_core::laws::{run_all, LawConfig, Ops};
use lifetime_core::rational::parse_rational;
use lifetime_core::sheaf::restrict;
use lifetime_core::{
    svg, Bounds, ComplexError, Cover, HomologyError, Lifetime, SheafError, Strategy,
    VariableComplex,
};

#[derive(Parser)]
#[command(name = "lifetimes", version, about = "Lifetime algebra, sheaves and persistent homology")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate expressions and check the algebra laws.
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    /// Check and glue covers read from a file.
    #[command(subcommand)]
    Sheaf(SheafCmd),
    /// Betti curves, persistence pairs and diagrams of a complex file.
    #[command(subcommand)]
    Homology(HomologyCmd),
    /// Validate or pretty-print a complex file.
    #[command(subcommand)]
    Complex(ComplexCmd),
}

#[derive(Subcommand)]
enum AlgebraCmd {
    /// Evaluate an expression such as `(1,4) ^ (3,7)`.
    Eval {
        expr: String,
        #[command(flatten)]
        bounds: BoundsArg,
        #[command(flatten)]
        render: Render,
    },
    /// Run the randomized law suites.
    Laws {
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        bounds: BoundsArg,
        /// Run single-threaded.
        #[arg(long)]
        sequential: bool,
    },
}

#[derive(Subcommand)]
enum SheafCmd {
    /// Report compatibility, the glued section and restriction checks.
    Check {
        path: PathBuf,
        #[command(flatten)]
        bounds: BoundsArg,
        #[command(flatten)]
        render: Render,
    },
    /// Print only the glued section.
    Glue {
        path: PathBuf,
        #[command(flatten)]
        bounds: BoundsArg,
        #[command(flatten)]
        render: Render,
    },
}

#[derive(Subcommand)]
enum HomologyCmd {
    /// Betti curves as CSV `dim,start,end,end_included,rank`, or an SVG barcode.
    Betti {
        path: PathBuf,
        #[arg(long)]
        dim: Option<usize>,
        #[command(flatten)]
        opts: HomologyOpts,
    },
    /// Persistence pairs of a filtration as CSV `dim,birth,death,class`.
    Pairs {
        path: PathBuf,
        #[arg(long)]
        dim: Option<usize>,
        #[command(flatten)]
        opts: HomologyOpts,
    },
    /// Persistence diagram of a filtration.
    Diagram {
        path: PathBuf,
        #[arg(long)]
        dim: Option<usize>,
        /// Count every distinct point once.
        #[arg(long)]
        collapse_multiplicity: bool,
        #[command(flatten)]
        opts: HomologyOpts,
    },
}

#[derive(Subcommand)]
enum ComplexCmd {
    /// Parse and validate, printing a one-line summary.
    Validate { path: PathBuf },
    /// Print the canonical form.
    Print {
        path: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct BoundsArg {
    #[arg(long, num_args = 2, value_names = ["E1", "E2"])]
    bounds: Option<Vec<String>>,
}

impl BoundsArg {
    fn resolve(&self) -> Result<Bounds, CliError> {
        let Some(v) = &self.bounds else {
            return Ok(Bounds::square(10));
        };
        let num = |s: &str| parse_rational(s).map_err(|e| CliError::usage(format!("--bounds: {e}")));
        Bounds::new(num(&v[0])?, num(&v[1])?).map_err(|e| CliError::usage(format!("--bounds: {e}")))
    }
}

#[derive(Args)]
struct Render {
    /// Show lifetimes as decimals with K places instead of exact fractions.
    #[arg(long, value_name = "K")]
    decimals: Option<usize>,
}

impl Render {
    fn lifetime(&self, l: &Lifetime) -> String {
        match self.decimals {
            Some(k) => l.to_decimal_string(k),
            None => l.to_string(),
        }
    }
}

#[derive(Args)]
struct HomologyOpts {
    #[arg(long, default_value = "f2", value_parser = parse_field)]
    field: FieldTag,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Svg,
}

fn parse_field(s: &str) -> Result<FieldTag, String> {
    s.parse::<FieldTag>().map_err(|_| format!("unknown field `{s}` (expected f2 or q)"))
}

#[derive(Debug)]
enum CliError {
    Domain(String),
    Counterexample,
    Usage(String),
}

impl CliError {
    fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    fn domain(msg: impl fmt::Display) -> Self {
        CliError::Domain(msg.to_string())
    }

    fn code(&self) -> u8 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Counterexample => 2,
            CliError::Usage(_) => 3,
        }
    }
}

impl From<ComplexError> for CliError {
    fn from(e: ComplexError) -> Self {
        let msg = format!("{} error: {e}", e.kind());
        match e {
            ComplexError::Parse { .. } => CliError::Usage(msg),
            _ => CliError::Domain(msg),
        }
    }
}

impl From<SheafError> for CliError {
    fn from(e: SheafError) -> Self {
        match e {
            SheafError::Parse { .. } => CliError::Usage(format!("parse error: {e}")),
            _ => CliError::domain(e),
        }
    }
}

impl From<HomologyError> for CliError {
    fn from(e: HomologyError) -> Self {
        CliError::domain(e)
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| CliError::usage(format!("{}: {e}", p.display()))),
        None => {
            // a closed pipe is not worth a panic
            let _ = io::stdout().write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn algebra(cmd: AlgebraCmd) -> Result<String, CliError> {
    match cmd {
        AlgebraCmd::Eval { expr, bounds, render } => {
            let bounds = bounds.resolve()?;
            let v = expr::evaluate(&expr, &bounds).map_err(|e| match e {
                expr::EvalError::Syntax { .. } => CliError::usage(format!("parse error {e}")),
                expr::EvalError::Algebra(a) => CliError::domain(a),
            })?;
            Ok(format!("{}\n", v.render(render.decimals)))
        }
        AlgebraCmd::Laws {
            samples,
            seed,
            bounds,
            sequential,
        } => {
            if samples == 0 {
                return Err(CliError::usage("--samples must be positive"));
            }
            let cfg = LawConfig {
                bounds: bounds.resolve()?,
                samples,
                seed,
                strategy: if sequential { Strategy::Sequential } else { Strategy::Parallel },
            };
            let reports = run_all(&cfg, Ops::standard());
            let mut out = String::new();
            for r in &reports {
                out.push_str(&format!("{r}\n"));
            }
            if reports.iter().all(|r| r.passed()) {
                out.push_str("all laws hold\n");
                Ok(out)
            } else {
                print!("{out}");
                Err(CliError::Counterexample)
            }
        }
    }
}

fn load_cover(path: &Path, bounds: &BoundsArg) -> Result<Cover, CliError> {
    Ok(Cover::parse(&read(path)?, &bounds.resolve()?)?)
}

fn sheaf(cmd: SheafCmd) -> Result<String, CliError> {
    match cmd {
        SheafCmd::Glue { path, bounds, render } => {
            let glued = load_cover(&path, &bounds)?.glue()?;
            Ok(format!("glued={}\n", render.lifetime(&glued)))
        }
        SheafCmd::Check { path, bounds, render } => {
            let cover = load_cover(&path, &bounds)?;
            let mut out = format!("base={}\nitems={}\n", render.lifetime(cover.base()), cover.items().len());
            if let Some((i, j, left, right)) = cover.first_incompatibility() {
                out.push_str("compatible=no\n");
                print!("{out}");
                return Err(SheafError::Incompatible { i, j, left, right }.into());
            }
            out.push_str("compatible=yes\n");
            let glued = cover.glue()?;
            out.push_str(&format!("glued={}\n", render.lifetime(&glued)));
            let mut all_ok = true;
            for (k, item) in cover.items().iter().enumerate() {
                let back = restrict(&glued, cover.base(), &item.patch)?;
                let ok = back == item.section;
                all_ok &= ok;
                out.push_str(&format!(
                    "restrict[{k}] patch={} -> {} {}\n",
                    render.lifetime(&item.patch),
                    render.lifetime(&back),
                    if ok { "ok" } else { "MISMATCH" }
                ));
            }
            if !all_ok {
                print!("{out}");
                return Err(CliError::domain("glued section does not restrict back to the family"));
            }
            Ok(out)
        }
    }
}

fn load_complex(path: &Path) -> Result<VariableComplex, CliError> {
    Ok(VariableComplex::parse(&read(path)?)?)
}

fn homology(cmd: HomologyCmd) -> Result<(String, Option<PathBuf>), CliError> {
    match cmd {
        HomologyCmd::Betti { path, dim, opts } => {
            let c = load_complex(&path)?;
            let dims: Vec<usize> = match dim {
                Some(n) => vec![n],
                None => (0..=c.max_dim().unwrap_or(0)).collect(),
            };
            let curves = dims
                .into_iter()
                .map(|n| homology::betti_curve(&c, n, opts.field, Strategy::Parallel))
                .collect::<Result<Vec<_>, _>>()?;
            let text = match opts.format.unwrap_or(Format::Csv) {
                Format::Csv => homology::curves_csv(&curves),
                Format::Svg => svg::barcode(&curves),
            };
            Ok((text, opts.out))
        }
        HomologyCmd::Pairs { path, dim, opts } => {
            if opts.format == Some(Format::Svg) {
                return Err(CliError::usage("pairs are CSV only; use `homology diagram` for SVG"));
            }
            let c = load_complex(&path)?;
            let mut pairs = persistence_pairs(&c, opts.field)?;
            pairs.retain(|p| dim.is_none_or(|n| p.dimension == n));
            Ok((homology::pairs_csv(&pairs), opts.out))
        }
        HomologyCmd::Diagram {
            path,
            dim,
            collapse_multiplicity,
            opts,
        } => {
            let c = load_complex(&path)?;
            let mut pairs = persistence_pairs(&c, opts.field)?;
            pairs.retain(|p| dim.is_none_or(|n| p.dimension == n));
            let mut d = homology::diagram(&pairs, c.bounds()).map_err(CliError::domain)?;
            if collapse_multiplicity {
                d = d.collapse_multiplicity();
            }
            let text = match opts.format.unwrap_or(Format::Svg) {
                Format::Svg => svg::diagram(&d),
                Format::Csv => d
                    .points()
                    .iter()
                    .map(|(p, m)| format!("{},{},{m}\n", p.x1(), p.x2()))
                    .collect(),
            };
            Ok((text, opts.out))
        }
    }
}

fn complex(cmd: ComplexCmd) -> Result<(String, Option<PathBuf>), CliError> {
    match cmd {
        ComplexCmd::Validate { path } => {
            let c = load_complex(&path)?;
            let filtration = if homology::is_filtration(&c) { "yes" } else { "no" };
            let text = format!(
                "ok: {} simplices, max dim {}, bounds {}, filtration {filtration}\n",
                c.len(),
                c.max_dim().map_or("-".to_string(), |d| d.to_string()),
                c.bounds()
            );
            Ok((text, None))
        }
        ComplexCmd::Print { path, out } => Ok((load_complex(&path)?.to_string(), out)),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let (text, out) = match cli.command {
        Command::Algebra(cmd) => (algebra(cmd)?, None),
        Command::Sheaf(cmd) => (sheaf(cmd)?, None),
        Command::Homology(cmd) => homology(cmd)?,
        Command::Complex(cmd) => complex(cmd)?,
    };
    emit(out.as_deref(), &text)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(3) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match &e {
                CliError::Domain(m) | CliError::Usage(m) => eprintln!("error: {m}"),
                CliError::Counterexample => eprintln!("error: law check found a counterexample"),
            }
            ExitCode::from(e.code())
        }
    }
}
