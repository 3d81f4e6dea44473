//! The `snowflake` command line.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use ibig::IBig;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::conjugacy::{conjugacy_with, ConjugacyOptions};
use crate::engine::{canonicalize, z_exponent, CanonicalElement, GroupKind, GroupParams, TPoint};
use crate::error::{Error, Result};
use crate::oracle::{ball, DEFAULT_SIZE_CAP};
use crate::snowflake::{length_law_bound, snowflake_word};
use crate::words::{parse_word, Word};
use crate::zeta::cl_tilde;

use super::experiments::{cl_csv, csv_points, distortion_csv, experiment_cl, experiment_distortion};
use super::fit::{fit_loglog, render_svg, Window};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GroupArg {
    Bpq,
    #[value(name = "bpq+")]
    BpqPlus,
    #[value(name = "tbpq+")]
    Tbpq,
}

impl GroupArg {
    fn kind(self) -> GroupKind {
        match self {
            GroupArg::Bpq => GroupKind::Bpq,
            GroupArg::BpqPlus => GroupKind::BpqPlus,
            GroupArg::Tbpq => GroupKind::TildeBpqPlus,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "snowflake", version, about = "Normal forms, conjugacy and scaling experiments for snowflake groups")]
pub struct Cli {
    #[arg(long, global = true, default_value_t = 2)]
    pub p: u32,
    #[arg(long, global = true, default_value_t = 1)]
    pub q: u32,
    /// Group configuration; each subcommand has its own default.
    #[arg(long, global = true, value_enum)]
    pub group: Option<GroupArg>,
    /// Seed for sampled experiment inputs.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Output file for CSV, SVG or ball dumps.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// BFS distance cap for oracle columns and searches.
    #[arg(long, global = true, default_value_t = 6)]
    pub cap: u32,
    /// Fit window on n: `default` (drop lowest octave), `all`, or `lo:hi`.
    #[arg(long, global = true, default_value = "default")]
    pub window: Window,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the normal form of a word.
    Reduce { word: String },
    /// Decide whether two words are equal.
    Equal { u: String, v: String },
    /// Decide conjugacy in bpq or bpq+ and print a conjugator.
    Conjugate {
        u: String,
        v: String,
        /// Find the edge-group power by bounded search.
        #[arg(long)]
        eta_search: bool,
    },
    /// Conjugacy with a certified conjugator in tbpq+.
    Cl { u: String, v: String },
    /// The exponent N with w = z^N in tbpq+.
    Zexp { word: String },
    /// The snowflake word w_N.
    Snowflake {
        #[arg(allow_hyphen_values = true)]
        n: String,
    },
    /// Sphere sizes of the Cayley ball; dumps it with --out.
    Ball { radius: u32 },
    /// CSV of N, |w_N|, the length-law bound and the BFS length.
    ExpDistortion {
        /// Values of N; defaults to 2^0 … 2^20.
        ns: Vec<u64>,
        /// Sample this many N uniformly from 1..=max-n using --seed instead.
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 1_000_000)]
        max_n: u64,
    },
    /// CSV of the conjugator-length experiment for (b, b z^{n⌊n^α⌋}).
    ExpCl {
        /// Values of n; defaults to 2..=32.
        ns: Vec<u64>,
    },
    /// Log-log least-squares fit of two CSV columns; SVG plot with --out.
    Fit {
        csv: PathBuf,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        /// Slope of a dashed reference line.
        #[arg(long)]
        reference: Option<f64>,
    },
}

/// Parses arguments, runs the command, and returns the process exit code:
/// 0 on success, 1 on a negative verdict, 2 on usage or input errors.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{rendered}")
            } else {
                write!(err, "{rendered}")
            };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn params(cli: &Cli, default: GroupKind) -> Result<GroupParams> {
    GroupParams::new(cli.p, cli.q, cli.group.map_or(default, GroupArg::kind))
}

fn word(text: &str) -> Result<Word> {
    Ok(parse_word(text)?)
}

fn print_element(e: &CanonicalElement) -> String {
    if e.is_identity() {
        "1".to_string()
    } else {
        e.to_string()
    }
}

fn print_word(w: &Word) -> String {
    if w.is_empty() {
        "1".to_string()
    } else {
        w.to_string()
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Invalid(e.to_string())
}

fn emit(cli: &Cli, out: &mut dyn Write, text: &str) -> Result<()> {
    match &cli.out {
        Some(path) => fs::write(path, text).map_err(io),
        None => out.write_all(text.as_bytes()).map_err(io),
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    match &cli.command {
        Command::Reduce { word: w } => {
            let g = params(cli, GroupKind::Bpq)?;
            writeln!(out, "{}", print_element(&canonicalize(&g, &word(w)?)?)).map_err(io)?;
            Ok(0)
        }
        Command::Equal { u, v } => {
            let g = params(cli, GroupKind::Bpq)?;
            let same = canonicalize(&g, &word(u)?)? == canonicalize(&g, &word(v)?)?;
            writeln!(out, "{}", if same { "equal" } else { "not equal" }).map_err(io)?;
            Ok(if same { 0 } else { 1 })
        }
        Command::Conjugate { u, v, eta_search } => {
            let g = params(cli, GroupKind::Bpq)?;
            let opts = ConjugacyOptions { eta_search: *eta_search };
            let c = conjugacy_with(&g, &word(u)?, &word(v)?, opts)?;
            match (&c.conjugator, c.reason) {
                (Some(x), _) => {
                    writeln!(out, "conjugate").map_err(io)?;
                    writeln!(out, "conjugator: {}", print_word(x)).map_err(io)?;
                    writeln!(out, "length: {}", x.len()).map_err(io)?;
                    writeln!(out, "representative: {}", print_element(&c.canonical_rep)).map_err(io)?;
                    Ok(0)
                }
                (None, reason) => {
                    let tag = reason.map_or("", |r| r.tag());
                    writeln!(out, "not conjugate ({tag})").map_err(io)?;
                    Ok(1)
                }
            }
        }
        Command::Cl { u, v } => {
            let g = params(cli, GroupKind::TildeBpqPlus)?;
            if g.kind != GroupKind::TildeBpqPlus {
                return Err(Error::WrongGroup("--group tbpq+"));
            }
            let c = cl_tilde(&g, &word(u)?, &word(v)?)?;
            let Some(x) = &c.conjugator else {
                let tag = c.reason.map_or("", |r| r.tag());
                writeln!(out, "not conjugate ({tag})").map_err(io)?;
                writeln!(out, "N: {}", c.n).map_err(io)?;
                return Ok(1);
            };
            writeln!(out, "conjugate").map_err(io)?;
            writeln!(out, "conjugator: {}", print_word(x)).map_err(io)?;
            writeln!(out, "length: {}", x.len()).map_err(io)?;
            if let Some(b) = &c.breakdown {
                writeln!(
                    out,
                    "breakdown: |x_u| = {}, |g| = {}, |x_v^-1| = {}",
                    b.x_u.len(),
                    b.g.len(),
                    b.x_v_inv.len()
                )
                .map_err(io)?;
            }
            writeln!(out, "N_u: {}, N_v: {}, N: {}", c.n_u, c.n_v, c.n).map_err(io)?;
            Ok(0)
        }
        Command::Zexp { word: w } => {
            let g = params(cli, GroupKind::TildeBpqPlus)?;
            writeln!(out, "{}", z_exponent(&g, &word(w)?)?).map_err(io)?;
            Ok(0)
        }
        Command::Snowflake { n } => {
            let g = params(cli, GroupKind::Bpq)?;
            let n: IBig = n
                .parse()
                .map_err(|_| Error::Invalid(format!("N must be an integer, got {n:?}")))?;
            let s = snowflake_word(&g, &n);
            let ok = canonicalize(&g, &s.word)?.t_eval() == Some(TPoint::new(n.clone(), 0));
            writeln!(out, "{}", print_word(&s.word)).map_err(io)?;
            writeln!(out, "length: {}", s.length).map_err(io)?;
            writeln!(out, "depth: {}", s.depth).map_err(io)?;
            writeln!(out, "bound: {}", length_law_bound(&g, s.depth)).map_err(io)?;
            writeln!(out, "evaluates to a^{n}: {ok}").map_err(io)?;
            Ok(0)
        }
        Command::Ball { radius } => {
            let g = params(cli, GroupKind::Bpq)?;
            let b = ball(&g, *radius, DEFAULT_SIZE_CAP)?;
            for (d, n) in b.sphere_sizes().iter().enumerate() {
                writeln!(out, "radius {d}: {n}").map_err(io)?;
            }
            writeln!(out, "total: {}", b.len()).map_err(io)?;
            if let Some(path) = &cli.out {
                let f = fs::File::create(path).map_err(io)?;
                b.write_dump(std::io::BufWriter::new(f)).map_err(io)?;
            }
            Ok(0)
        }
        Command::ExpDistortion { ns, sample, max_n } => {
            let g = params(cli, GroupKind::Bpq)?;
            let ns: Vec<u64> = match (sample, ns.is_empty()) {
                (Some(k), _) => {
                    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
                    (0..*k).map(|_| rng.gen_range(1..=*max_n)).collect()
                }
                (None, true) => (0..=20).map(|k| 1u64 << k).collect(),
                (None, false) => ns.clone(),
            };
            let b = ball(&g, cli.cap.div_ceil(2), DEFAULT_SIZE_CAP)?;
            let rows = experiment_distortion(&g, &ns, Some((&b, cli.cap)))?;
            emit(cli, out, &distortion_csv(&rows))?;
            Ok(0)
        }
        Command::ExpCl { ns } => {
            let g = params(cli, GroupKind::TildeBpqPlus)?;
            let ns: Vec<u64> = if ns.is_empty() { (2..=32).collect() } else { ns.clone() };
            let rows = experiment_cl(&g, &ns)?;
            emit(cli, out, &cl_csv(&rows))?;
            Ok(if rows.iter().all(|r| r.ok) { 0 } else { 1 })
        }
        Command::Fit { csv, x, y, reference } => {
            let text = fs::read_to_string(csv).map_err(io)?;
            let pts = csv_points(&text, x, y)?;
            let fit = fit_loglog(&pts, cli.window)?;
            writeln!(out, "slope: {:.6}", fit.slope).map_err(io)?;
            writeln!(out, "intercept: {:.6}", fit.intercept).map_err(io)?;
            writeln!(out, "r_squared: {:.6}", fit.r_squared).map_err(io)?;
            writeln!(out, "window: {}..={} ({} points)", fit.window.0, fit.window.1, fit.points).map_err(io)?;
            if let Some(path) = &cli.out {
                let svg = render_svg(&pts, &fit, *reference, &format!("{y} vs {x}"));
                fs::write(path, svg).map_err(io)?;
            }
            Ok(0)
        }
    }
}
