//! `qcrystal`: series, identity checks and operator dumps from the command line.

mod dump;
mod suites;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qcrystal_core::crystal::{z_simple, z_two_param, CrystalModel, PotentialConfig};
use qcrystal_core::series::{parse_rational, rat, rpow};
use qcrystal_core::{Error, Normalization, QParams, Rational, SeriesContext};

pub const EXIT_FAIL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_INCONCLUSIVE: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "qcrystal", version, about = "Exact checks for the two-parameter melting crystal model")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Partition function as a canonical-JSON truncated series.
    Zseries(ZseriesArgs),
    /// Run one verification suite; the exit code aggregates the verdicts.
    Verify(VerifyArgs),
    /// Sparse matrix of a fermion operator on the truncated basis.
    FockDump(DumpArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct Output {
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Write here instead of standard output.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

impl Output {
    fn emit(&self, text: &str) -> Result<(), String> {
        match &self.output {
            Some(p) => fs::write(p, text).map_err(|e| format!("cannot write {}: {e}", p.display())),
            None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
        }
    }
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// Roots of `q`, `q1`, `q2`. Missing values default to `ζ1 = 1/2`,
/// `ζ2 = 1/3`, `ζ = ζ1`; with `--N1/--N2` they default to powers of
/// `1/2` satisfying `q1^{N1} = q = q2^{N2}`.
#[derive(Args, Debug, Clone)]
pub struct ParamArgs {
    #[arg(long, value_parser = rational)]
    pub zeta: Option<Rational>,
    #[arg(long, value_parser = rational)]
    pub zeta1: Option<Rational>,
    #[arg(long, value_parser = rational)]
    pub zeta2: Option<Rational>,
    #[arg(long = "N1")]
    pub n1: Option<u32>,
    #[arg(long = "N2")]
    pub n2: Option<u32>,
}

impl ParamArgs {
    pub fn bigraded(&self) -> Option<(u32, u32)> {
        match (self.n1, self.n2) {
            (None, None) => None,
            (a, b) => Some((a.unwrap_or(1), b.unwrap_or(1))),
        }
    }

    pub fn params(&self) -> Result<QParams, Error> {
        self.params_graded(None)
    }

    /// As `params`, with `fallback` standing in for an unset `(N1, N2)`.
    pub fn params_graded(&self, fallback: Option<(u32, u32)>) -> Result<QParams, Error> {
        let r = rat(1, 2);
        let grading = self.bigraded().or(fallback);
        let (z1, z2, z) = match grading {
            Some((n1, n2)) => (rpow(&r, n2 as i64), rpow(&r, n1 as i64), rpow(&r, (n1 * n2) as i64)),
            None => (r.clone(), rat(1, 3), r),
        };
        let zeta1 = self.zeta1.clone().unwrap_or(z1);
        let zeta = self.zeta.clone().unwrap_or(if grading.is_some() { z } else { zeta1.clone() });
        let p = QParams::new(zeta, zeta1, self.zeta2.clone().unwrap_or(z2))?;
        if let Some((n1, n2)) = grading {
            p.check_bigraded(n1, n2)?;
        }
        Ok(p)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Model {
    Simple,
    TwoParam,
}

#[derive(Args, Debug)]
struct ZseriesArgs {
    #[arg(long, value_enum, default_value = "simple")]
    model: Model,
    /// `q` cap of the simple model.
    #[arg(long, default_value_t = 10)]
    cap: i32,
    /// `Q` cap of the two-parameter model.
    #[arg(long, default_value_t = 6)]
    qcap: i32,
    /// Charge `p` of the potential.
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    p: i32,
    /// Caps of `t1, t2, …`, comma separated.
    #[arg(long, value_delimiter = ',')]
    tcaps: Vec<i32>,
    /// Cap of the `W0` coupling `beta`.
    #[arg(long)]
    beta_cap: Option<i32>,
    /// Weight `Q^{|λ| + p(p+1)/2}` instead of `Q^{|λ|}`.
    #[arg(long)]
    fermionic: bool,
    #[command(flatten)]
    params: ParamArgs,
    #[command(flatten)]
    out: Output,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long)]
    pub suite: String,
    #[command(flatten)]
    pub params: ParamArgs,
    /// Charges, comma separated; each suite has its own default.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub p: Vec<i32>,
    #[arg(long)]
    pub energy: Option<u32>,
    #[arg(long)]
    pub cap: Option<i32>,
    #[arg(long)]
    pub qcap: Option<i32>,
    #[arg(long)]
    pub xcap: Option<i32>,
    #[arg(long)]
    pub ycap: Option<i32>,
    #[arg(long, value_delimiter = ',')]
    pub tcaps: Vec<i32>,
    /// Largest `|m|`, `|n|` of current or torus modes.
    #[arg(long)]
    pub max_mode: Option<i32>,
    /// Largest `k` of `H_k`, `J_k` or `V^{(k)}`.
    #[arg(long)]
    pub kmax: Option<i32>,
    /// Which right-hand side of the Fay identity to test.
    #[arg(long, value_enum, default_value = "corrected")]
    pub fay_reading: suites::Reading,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Args, Debug)]
pub struct DumpArgs {
    /// `J(m)`, `L0`, `W0`, `H(k)`, `V(k,m)`, `G+` or `G-`.
    #[arg(long, allow_hyphen_values = true)]
    pub op: String,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub p: i32,
    #[arg(long, default_value_t = 3)]
    pub energy: u32,
    #[arg(long, value_parser = rational, default_value = "1/2")]
    pub zeta: Rational,
    #[command(flatten)]
    pub out: Output,
}

/// A failed command: the exit code and a diagnostic for standard error.
pub struct Failure(pub u8, pub String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(EXIT_USAGE, e.to_string())
    }
}

fn t_vars(n: usize) -> Vec<String> {
    (1..=n).map(|k| format!("t{k}")).collect()
}

fn zseries(a: &ZseriesArgs) -> Result<u8, Failure> {
    // validated for both models so that a zero root is always rejected
    let params = a.params.params()?;
    let series = match a.model {
        Model::Simple => {
            if a.cap < 0 {
                return Err(Failure(EXIT_USAGE, "cap must be nonnegative".into()));
            }
            z_simple(&SeriesContext::new(&["q"], &[a.cap])?, "q")?
        }
        Model::TwoParam => {
            let mut vars = vec!["Q".to_string()];
            let mut caps = vec![a.qcap];
            vars.extend(t_vars(a.tcaps.len()));
            caps.extend(&a.tcaps);
            let mut pot = PotentialConfig::new(a.p).with_t(a.tcaps.len());
            if let Some(c) = a.beta_cap {
                vars.push("beta".into());
                caps.push(c);
                pot = pot.with_beta("beta");
            }
            if caps.iter().any(|&c| c < 0) {
                return Err(Failure(EXIT_USAGE, "caps must be nonnegative".into()));
            }
            let norm = if a.fermionic { Normalization::Fermionic } else { Normalization::SchurSum };
            let mut model = CrystalModel::new(params, pot, norm, SeriesContext::new(&vars, &caps)?)?;
            if let Some((n1, n2)) = a.params.bigraded() {
                model = model.with_bigraded(n1, n2)?;
            }
            z_two_param(&model)?
        }
    };
    let text = match a.out.format {
        Format::Json => series.to_canonical_json() + "\n",
        Format::Csv => {
            let ctx = series.context();
            let mut s = format!("{},coefficient\n", ctx.vars().join(","));
            for (e, c) in series.terms() {
                let es: Vec<String> = e.iter().map(i32::to_string).collect();
                s.push_str(&format!("{},\"{}\"\n", es.join(","), qcrystal_core::series::format_rational(c)));
            }
            s
        }
    };
    a.out.emit(&text).map_err(|e| Failure(EXIT_USAGE, e))?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match &cli.command {
        Command::Zseries(a) => zseries(a),
        Command::Verify(a) => suites::verify(a),
        Command::FockDump(a) => dump::fock_dump(a),
    };
    match res {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("qcrystal: {msg}");
            ExitCode::from(code)
        }
    }
}
