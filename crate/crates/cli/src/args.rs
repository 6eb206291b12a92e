//! Command-line surface. Every flag maps onto one library parameter.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use simplex_limits::{ModPhiCase, ModelSpec, RegimeTag, SamplePath, SimplexDims, Target};

use crate::error::CliError;

#[derive(Debug, Parser, Serialize)]
#[command(name = "simplex-limits", version, about = "Exact moments, cumulants and limit theorems for random simplex volumes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output file (stdout when omitted). A `<output>.meta.json` sidecar is
    /// written next to it.
    #[arg(short, long, global = true)]
    #[serde(skip)]
    pub output: Option<PathBuf>,

    /// Worker threads for sampling; 0 uses every core. Results do not depend
    /// on this value.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Exact log-moments E[(r!V)^{2k}] or E[W^{2k}] (CSV).
    Moments {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        dims: DimArgs,
        /// Half-orders k, comma separated.
        #[arg(short = 'k', long = "k", value_delimiter = ',', required = true, allow_hyphen_values = true)]
        k: Vec<f64>,
        #[arg(long, value_enum, default_value_t = TargetArg::Simplex)]
        target: TargetArg,
    },
    /// Monte Carlo log-volumes (CSV).
    Sample {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        dims: DimArgs,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_enum, default_value_t = TargetArg::Simplex)]
        target: TargetArg,
        #[arg(long, value_enum, default_value_t = PathArg::Geometric)]
        path: PathArg,
    },
    /// Exact cumulants of log(r!V) (CSV).
    Cumulants {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        dims: DimArgs,
        #[arg(long, default_value_t = 4)]
        max_order: u32,
    },
    /// KS distance of the standardized log-volume from N(0,1) (JSON).
    VerifyClt {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        dims: DimArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// KS distance of the normalized volume from its limit law (JSON).
    VerifyVolume {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        regime: RegimeArgs,
        #[arg(short = 'n', long)]
        n: usize,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Exact mod-φ ratios against their limits (CSV).
    ModPhi {
        #[command(flatten)]
        case: CaseArgs,
        /// Dimensions, comma separated.
        #[arg(short = 'n', long = "n", value_delimiter = ',', required = true)]
        n: Vec<usize>,
        /// Tilts, comma separated.
        #[arg(short = 't', long = "t", value_delimiter = ',', required = true, allow_hyphen_values = true)]
        t: Vec<f64>,
    },
    /// Large deviation rate function on a uniform grid (CSV).
    RateFunction {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        regime: RegimeArgs,
        #[arg(long, allow_hyphen_values = true)]
        x_min: f64,
        #[arg(long, allow_hyphen_values = true)]
        x_max: f64,
        /// Number of grid points, end points included.
        #[arg(long)]
        steps: usize,
    },
    /// Distances from the origin to the affine hull of r + 1 points (CSV).
    Distance {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        dims: DimArgs,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_enum, default_value_t = PathArg::Geometric)]
        path: PathArg,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Moments { .. } => "moments",
            Command::Sample { .. } => "sample",
            Command::Cumulants { .. } => "cumulants",
            Command::VerifyClt { .. } => "verify-clt",
            Command::VerifyVolume { .. } => "verify-volume",
            Command::ModPhi { .. } => "mod-phi",
            Command::RateFunction { .. } => "rate-function",
            Command::Distance { .. } => "distance",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelArg {
    Gaussian,
    Beta,
    BetaPrime,
    Spherical,
}

#[derive(Debug, Args, Serialize)]
pub struct ModelArgs {
    #[arg(long, value_enum)]
    pub model: ModelArg,
    /// Shape ν of the Beta and Beta-prime models.
    #[arg(long)]
    pub nu: Option<f64>,
}

/// The spelling of a value on the command line.
fn flag_value(v: &impl ValueEnum) -> String {
    v.to_possible_value().map(|p| p.get_name().to_string()).unwrap_or_default()
}

impl ModelArgs {
    pub fn spec(&self) -> Result<ModelSpec, CliError> {
        let nu = || self.nu.ok_or_else(|| CliError::Validation(format!("--model {} requires --nu", flag_value(&self.model))));
        let spec = match self.model {
            ModelArg::Gaussian => ModelSpec::gaussian(),
            ModelArg::Spherical => ModelSpec::spherical(),
            ModelArg::Beta => ModelSpec::beta(nu()?)?,
            ModelArg::BetaPrime => ModelSpec::beta_prime(nu()?)?,
        };
        if self.nu.is_some() && matches!(self.model, ModelArg::Gaussian | ModelArg::Spherical) {
            return Err(CliError::Validation("--nu only applies to beta and beta-prime".into()));
        }
        Ok(spec)
    }
}

#[derive(Debug, Args, Serialize)]
pub struct DimArgs {
    /// Ambient dimension.
    #[arg(short = 'n', long)]
    pub n: usize,
    /// Dimension of the simplex, 1 ≤ r ≤ n.
    #[arg(short = 'r', long)]
    pub r: usize,
}

impl DimArgs {
    pub fn dims(&self) -> Result<SimplexDims, CliError> {
        Ok(SimplexDims::new(self.n, self.r)?)
    }
}

#[derive(Debug, Args, Serialize)]
pub struct RunArgs {
    /// Number of samples.
    #[arg(short = 'N', long = "samples")]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TargetArg {
    Simplex,
    Parallelotope,
}

impl From<TargetArg> for Target {
    fn from(t: TargetArg) -> Self {
        match t {
            TargetArg::Simplex => Target::Simplex,
            TargetArg::Parallelotope => Target::Parallelotope,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PathArg {
    /// Sample points and measure them.
    Geometric,
    /// Sample from the product representation or the reference law.
    Reference,
}

impl From<PathArg> for SamplePath {
    fn from(p: PathArg) -> Self {
        match p {
            PathArg::Geometric => SamplePath::Geometric,
            PathArg::Reference => SamplePath::Reference,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RegimeArg {
    SmallR,
    Proportional,
    FullCodimSmall,
    FixedR,
    FixedCodim,
}

#[derive(Debug, Args, Serialize)]
pub struct RegimeArgs {
    #[arg(long, value_enum)]
    pub regime: RegimeArg,
    /// r/n in the proportional regime.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// r in the fixed-r regime.
    #[arg(long)]
    pub fixed_r: Option<usize>,
    /// n − r in the fixed-codim regime.
    #[arg(long)]
    pub codim: Option<usize>,
}

fn required<T>(value: Option<T>, flag: &str, regime: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::Validation(format!("--regime {regime} requires --{flag}")))
}

impl RegimeArgs {
    pub fn tag(&self) -> Result<RegimeTag, CliError> {
        let tag = match self.regime {
            RegimeArg::SmallR => RegimeTag::SmallR,
            RegimeArg::FullCodimSmall => RegimeTag::FullCodimSmall,
            RegimeArg::Proportional => RegimeTag::Proportional { alpha: required(self.alpha, "alpha", "proportional")? },
            RegimeArg::FixedR => RegimeTag::FixedR { r: required(self.fixed_r, "fixed-r", "fixed-r")? },
            RegimeArg::FixedCodim => RegimeTag::FixedCodim { d: required(self.codim, "codim", "fixed-codim")? },
        };
        tag.validate()?;
        Ok(tag)
    }
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseArg {
    GaussFixedR,
    BetaFixedR,
    ExpGamma,
    GaussFullDim,
    BetaFullDim,
    GaussFixedCodim,
    BetaFixedCodim,
    GaussDivergingCodim,
    BetaDivergingCodim,
}

#[derive(Debug, Args, Serialize)]
pub struct CaseArgs {
    #[arg(long = "case", value_enum)]
    pub case: CaseArg,
    /// Fixed r of the fixed-r cases.
    #[arg(long = "fixed-r")]
    pub r: Option<usize>,
    /// Beta shape; 0 selects the spherical model.
    #[arg(long)]
    pub nu: Option<f64>,
    /// Codimension of the fixed-codim cases.
    #[arg(long)]
    pub codim: Option<usize>,
    /// n − r = ⌊n^exponent⌋ in the diverging-codim cases.
    #[arg(long)]
    pub exponent: Option<f64>,
}

impl CaseArgs {
    pub fn case(&self) -> Result<ModPhiCase, CliError> {
        let need = |flag: &str| CliError::Validation(format!("--case {} requires --{flag}", flag_value(&self.case)));
        let r = || self.r.ok_or_else(|| need("fixed-r"));
        let nu = || self.nu.ok_or_else(|| need("nu"));
        let d = || self.codim.ok_or_else(|| need("codim"));
        let exponent = || self.exponent.ok_or_else(|| need("exponent"));
        let case = match self.case {
            CaseArg::GaussFixedR => ModPhiCase::GaussFixedR { r: r()? },
            CaseArg::BetaFixedR => ModPhiCase::BetaFixedR { r: r()?, nu: nu()? },
            CaseArg::ExpGamma => ModPhiCase::ExpGamma,
            CaseArg::GaussFullDim => ModPhiCase::GaussFullDim,
            CaseArg::BetaFullDim => ModPhiCase::BetaFullDim { nu: nu()? },
            CaseArg::GaussFixedCodim => ModPhiCase::GaussFixedCodim { d: d()? },
            CaseArg::BetaFixedCodim => ModPhiCase::BetaFixedCodim { d: d()?, nu: nu()? },
            CaseArg::GaussDivergingCodim => ModPhiCase::GaussDivergingCodim { exponent: exponent()? },
            CaseArg::BetaDivergingCodim => ModPhiCase::BetaDivergingCodim { nu: nu()?, exponent: exponent()? },
        };
        case.validate()?;
        Ok(case)
    }
}
