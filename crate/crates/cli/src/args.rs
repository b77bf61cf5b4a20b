//! Command-line flags, config file and their resolution into a [`Command`].

use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use hhkit_core::convexity::{self, ConvexityParams, Sense};
use hhkit_core::hhbounds::TheoremId;
use hhkit_core::Interval;

pub const TOL_ENV: &str = "HHKIT_TOL";
pub const DEFAULT_TOL: f64 = 1e-6;

#[derive(Debug, Parser)]
#[command(name = "hhkit", version, about = "Evaluate and verify Hermite-Hadamard type bounds")]
pub struct Cli {
    #[command(subcommand)]
    pub action: ActionArgs,
}

#[derive(Debug, Subcommand)]
pub enum ActionArgs {
    /// Search a sampling lattice for a counterexample to class membership
    Certify(Options),
    /// Evaluate theorem bounds and the gap without checking hypotheses
    Bound(Options),
    /// Check theorem bounds, including their convexity hypotheses
    Verify(Options),
    /// Trapezoidal integration with an a-priori error guarantee
    Integrate(Options),
    /// Classical means of a pair, their ordering, and the mean inequalities
    Means(Options),
    /// Run every check on the built-in corpus
    Suite(Options),
}

impl ActionArgs {
    pub fn split(self) -> (Action, Options) {
        match self {
            ActionArgs::Certify(o) => (Action::Certify, o),
            ActionArgs::Bound(o) => (Action::Bound, o),
            ActionArgs::Verify(o) => (Action::Verify, o),
            ActionArgs::Integrate(o) => (Action::Integrate, o),
            ActionArgs::Means(o) => (Action::Means, o),
            ActionArgs::Suite(o) => (Action::Suite, o),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Action {
    Certify,
    Bound,
    Verify,
    Integrate,
    Means,
    Suite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

/// Every flag is optional here; a config file uses the same keys.
#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    /// Expression in x, e.g. "x^2 + 3*x"
    #[arg(long, allow_hyphen_values = true)]
    pub function: Option<String>,
    /// Interval `a:b`; the pair for `means`
    #[arg(long, allow_hyphen_values = true)]
    pub interval: Option<String>,
    /// Domain `lo:hi` of the function (defaults to the interval, widened to b/m)
    #[arg(long, allow_hyphen_values = true)]
    pub domain: Option<String>,
    #[arg(long)]
    pub s: Option<f64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub m: Option<f64>,
    /// first or second
    #[arg(long)]
    pub sense: Option<String>,
    /// Hölder exponent p > 1
    #[arg(long)]
    pub p: Option<f64>,
    /// T1..T6; all six when omitted
    #[arg(long)]
    pub theorem: Option<String>,
    /// Tolerance for `integrate` and `certify` [env: HHKIT_TOL] [default: 1e-6]
    #[arg(long)]
    pub tol: Option<f64>,
    /// Lattice points per axis for convexity sampling [default: 50]
    #[arg(long)]
    pub grid: Option<usize>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Seed for the random pairs of `suite` [default: 0]
    #[arg(long)]
    pub seed: Option<u64>,
    /// Integer order for P3 [default: 2]
    #[arg(long, allow_hyphen_values = true)]
    pub n: Option<i32>,
    /// TOML file with any of the above keys; flags take precedence
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

impl Options {
    /// Field-wise `self` over `fallback`.
    pub fn or(self, fallback: Options) -> Options {
        Options {
            function: self.function.or(fallback.function),
            interval: self.interval.or(fallback.interval),
            domain: self.domain.or(fallback.domain),
            s: self.s.or(fallback.s),
            alpha: self.alpha.or(fallback.alpha),
            m: self.m.or(fallback.m),
            sense: self.sense.or(fallback.sense),
            p: self.p.or(fallback.p),
            theorem: self.theorem.or(fallback.theorem),
            tol: self.tol.or(fallback.tol),
            grid: self.grid.or(fallback.grid),
            format: self.format.or(fallback.format),
            seed: self.seed.or(fallback.seed),
            n: self.n.or(fallback.n),
            config: self.config.or(fallback.config),
        }
    }
}

pub fn load_config(path: &Path) -> anyhow::Result<Options> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading config {}", path.display()))?;
    toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
}

/// A validated invocation.
#[derive(Debug, Clone)]
pub struct Command {
    pub action: Action,
    pub function: Option<String>,
    /// Raw `(a, b)` pair with `a ≤ b`.
    pub pair: Option<(f64, f64)>,
    pub domain: Option<Interval<f64>>,
    pub params: ConvexityParams<f64>,
    pub p: Option<f64>,
    pub theorem: Option<TheoremId>,
    pub tol: f64,
    pub grid: usize,
    pub format: Format,
    pub seed: u64,
    pub n: Option<i32>,
}

impl Command {
    pub fn interval(&self) -> anyhow::Result<Interval<f64>> {
        let (a, b) = self.pair.context("--interval is required")?;
        Ok(Interval::new(a, b)?)
    }

    pub fn function_text(&self) -> anyhow::Result<&str> {
        self.function.as_deref().context("--function is required")
    }

    /// Domain for the function: explicit, or the interval widened to `b/m`
    /// so that `f(b/m)` is defined.
    pub fn function_domain(&self) -> anyhow::Result<Interval<f64>> {
        if let Some(d) = self.domain {
            return Ok(d);
        }
        let iv = self.interval()?;
        let m = self.params.m();
        let hi = if m > 0.0 && m < 1.0 { iv.b().max(iv.b() / m) } else { iv.b() };
        Ok(Interval::new(iv.a(), hi)?)
    }
}

pub fn parse_pair(text: &str) -> anyhow::Result<(f64, f64)> {
    let (a, b) = text
        .split_once(':')
        .with_context(|| format!("expected `a:b`, got `{text}`"))?;
    let parse = |s: &str| -> anyhow::Result<f64> {
        let v: f64 = s.trim().parse().with_context(|| format!("bad number `{s}` in `{text}`"))?;
        if !v.is_finite() {
            bail!("non-finite bound in `{text}`");
        }
        Ok(v)
    };
    let (a, b) = (parse(a)?, parse(b)?);
    if a > b {
        bail!("interval `{text}` has a > b");
    }
    Ok((a, b))
}

/// Merges flags, the environment, the config file and defaults, in that order
/// of precedence, and validates what `action` needs.
pub fn resolve(action: Action, flags: Options, env_tol: Option<&str>) -> anyhow::Result<Command> {
    let file = match &flags.config {
        Some(path) => load_config(path)?,
        None => Options::default(),
    };
    let env_tol = env_tol
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .with_context(|| format!("{TOL_ENV}=`{t}` is not a number"))
        })
        .transpose()?;
    let tol = flags.tol.or(env_tol);
    let o = Options { tol, ..flags }.or(file);

    let tol = o.tol.unwrap_or(DEFAULT_TOL);
    if !(tol > 0.0 && tol.is_finite()) {
        bail!("tolerance must be positive, got {tol}");
    }
    let sense = match &o.sense {
        Some(s) => s.parse::<Sense>()?,
        None => Sense::First,
    };
    let params = ConvexityParams::new(
        o.s.unwrap_or(1.0),
        o.alpha.unwrap_or(1.0),
        o.m.unwrap_or(1.0),
        sense,
    )?;
    let cmd = Command {
        action,
        function: o.function,
        pair: o.interval.as_deref().map(parse_pair).transpose()?,
        domain: o
            .domain
            .as_deref()
            .map(|d| -> anyhow::Result<_> { Ok(d.parse::<Interval<f64>>()?) })
            .transpose()?,
        params,
        p: o.p,
        theorem: o.theorem.as_deref().map(str::parse).transpose()?,
        tol,
        grid: o.grid.unwrap_or(convexity::DEFAULT_GRID),
        format: o.format.unwrap_or_default(),
        seed: o.seed.unwrap_or(0),
        n: o.n,
    };

    if cmd.grid < 2 {
        bail!("--grid must be at least 2");
    }
    if let Some(p) = cmd.p {
        if !(p > 1.0 && p.is_finite()) {
            bail!("--p must exceed 1, got {p}");
        }
    }
    match action {
        Action::Certify | Action::Bound | Action::Verify | Action::Integrate => {
            cmd.function_text()?;
            cmd.interval()?;
        }
        Action::Means => {
            let (a, _) = cmd.pair.context("--interval a:b is required")?;
            if a <= 0.0 {
                bail!("means need 0 < a ≤ b");
            }
        }
        Action::Suite => {}
    }
    Ok(cmd)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(args: &[&str]) -> Options {
        let mut full = vec!["hhkit", "verify"];
        full.extend_from_slice(args);
        Cli::try_parse_from(full).unwrap().action.split().1
    }

    #[test]
    fn pairs() {
        assert_eq!(parse_pair("0:1").unwrap(), (0.0, 1.0));
        assert_eq!(parse_pair("-1.5:2e0").unwrap(), (-1.5, 2.0));
        assert_eq!(parse_pair("3:3").unwrap(), (3.0, 3.0));
        assert!(parse_pair("1:0").is_err());
        assert!(parse_pair("1").is_err());
        assert!(parse_pair("a:1").is_err());
    }

    #[test]
    fn defaults() {
        let c = resolve(Action::Verify, opts(&["--function", "x", "--interval", "0:1"]), None).unwrap();
        assert_eq!(c.tol, DEFAULT_TOL);
        assert_eq!(c.grid, 50);
        assert_eq!(c.format, Format::Text);
        assert_eq!(c.params, ConvexityParams::classical());
        assert_eq!(c.seed, 0);
    }

    #[test]
    fn tolerance_precedence() {
        let base = ["--function", "x", "--interval", "0:1"];
        let c = resolve(Action::Integrate, opts(&base), Some("1e-3")).unwrap();
        assert_eq!(c.tol, 1e-3);
        let mut with_flag = base.to_vec();
        with_flag.extend(["--tol", "1e-4"]);
        let c = resolve(Action::Integrate, opts(&with_flag), Some("1e-3")).unwrap();
        assert_eq!(c.tol, 1e-4);
        assert!(resolve(Action::Integrate, opts(&base), Some("abc")).is_err());
    }

    #[test]
    fn missing_required_fields() {
        assert!(resolve(Action::Verify, opts(&["--interval", "0:1"]), None).is_err());
        assert!(resolve(Action::Verify, opts(&["--function", "x"]), None).is_err());
        assert!(resolve(Action::Means, opts(&["--interval", "0:1"]), None).is_err());
        assert!(resolve(Action::Suite, opts(&[]), None).is_ok());
        assert!(resolve(Action::Verify, opts(&["--function", "x", "--interval", "0:1", "--theorem", "T9"]), None).is_err());
    }

    #[test]
    fn domain_widens_for_reduced_m() {
        let c = resolve(
            Action::Verify,
            opts(&["--function", "x^2", "--interval", "0:1", "--m", "0.5"]),
            None,
        )
        .unwrap();
        assert_eq!(c.function_domain().unwrap(), Interval::new(0.0, 2.0).unwrap());
    }
}
