use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qsobolev::fault::Fault;
use qsobolev::{Backend, Ell, Error, QContext, Result};

/// Default ceiling on `--n-max`; `QSOBOLEV_NMAX_CAP` raises it.
pub const NMAX_CAP: usize = 12;

#[derive(Debug, Parser)]
#[command(name = "qsobolev", version, about = "Exact Al-Salam-Carlitz I Sobolev-type polynomials and their identities")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the coefficients of one polynomial.
    Poly(PolyArgs),
    /// Check every identity up to --n-max and report residuals.
    Verify(VerifyArgs),
    /// Sample polynomials on a uniform grid over [a, 1].
    PlotData(PlotArgs),
    /// Convergents of the J-fractions generated by the recurrence.
    Jfrac(JfracArgs),
    /// Per-degree tables of norms, connection or recurrence coefficients.
    Table(TableArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Asc,
    Sobolev,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Exact,
    Approx,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    Norms,
    Connection,
    Recurrence,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Base q as an exact rational, 0 < q < 1.
    #[arg(long, default_value = "1/2", allow_hyphen_values = true)]
    pub q: String,
    /// Lower endpoint a < 0.
    #[arg(long, default_value = "-1", allow_hyphen_values = true)]
    pub a: String,
    /// Mass at a.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub lambda: String,
    /// Mass at 1.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub mu: String,
    /// Order of the q-derivative in the discrete part.
    #[arg(long, default_value_t = 2)]
    pub j: usize,
    #[arg(long, value_enum, default_value_t = BackendArg::Exact)]
    pub backend: BackendArg,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Truncation tolerance for the numerical value of Z.
    #[arg(long, default_value_t = 1e-60)]
    pub z_tol: f64,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

impl Common {
    pub fn context(&self) -> Result<QContext> {
        let backend = match self.backend {
            BackendArg::Exact => Backend::Exact,
            BackendArg::Approx => Backend::Approx,
        };
        QContext::parse(&self.q, &self.a, &self.lambda, &self.mu, self.j)?
            .with_backend(backend)
            .with_tolerance(self.z_tol)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EllArg {
    #[value(name = "-1")]
    Minus,
    #[value(name = "1")]
    Plus,
    Both,
}

impl EllArg {
    pub fn ells(self) -> Vec<Ell> {
        match self {
            EllArg::Minus => vec![Ell::Minus],
            EllArg::Plus => vec![Ell::Plus],
            EllArg::Both => Ell::BOTH.to_vec(),
        }
    }
}

#[derive(Debug, Args)]
pub struct PolyArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum, default_value_t = Family::Sobolev)]
    pub family: Family,
    #[arg(long)]
    pub n: usize,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 5)]
    pub n_max: usize,
    #[arg(long, value_enum, default_value_t = EllArg::Both, allow_hyphen_values = true)]
    pub ell: EllArg,
    /// Debug aid: perturb one coefficient formula to prove the checks bite.
    #[arg(long, value_parser = parse_fault)]
    pub inject_fault: Option<Fault>,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 5)]
    pub n_max: usize,
    /// Comma-separated degrees; defaults to 0..=n-max.
    #[arg(long, value_delimiter = ',')]
    pub n_list: Vec<usize>,
    #[arg(long, default_value_t = 201)]
    pub grid_points: usize,
}

#[derive(Debug, Args)]
pub struct JfracArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 5)]
    pub n_max: usize,
    #[arg(long, value_enum, default_value_t = EllArg::Both, allow_hyphen_values = true)]
    pub ell: EllArg,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 5)]
    pub n_max: usize,
    #[arg(long, value_enum, default_value_t = TableKind::Norms)]
    pub kind: TableKind,
    #[arg(long, value_enum, default_value_t = EllArg::Both, allow_hyphen_values = true)]
    pub ell: EllArg,
}

fn parse_fault(s: &str) -> std::result::Result<Fault, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Rejects degree ranges above the cap.
pub fn check_n_max(n_max: usize) -> Result<()> {
    let cap = match std::env::var("QSOBOLEV_NMAX_CAP") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::InvalidContext(format!("QSOBOLEV_NMAX_CAP=`{v}` is not an integer")))?,
        Err(_) => NMAX_CAP,
    };
    if n_max > cap {
        return Err(Error::InvalidContext(format!(
            "n-max {n_max} exceeds the cap {cap} (set QSOBOLEV_NMAX_CAP to raise it)"
        )));
    }
    Ok(())
}
