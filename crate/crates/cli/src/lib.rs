//! The `spec2char` command line.
//!
//! [`run`] takes an argument list and returns the exit code together with
//! everything that would be written to stdout and stderr, so the binary is
//! a thin wrapper and tests can drive every command in-process.

use std::fs;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use spec2char_core::chartab;
use spec2char_core::formclass::classify;
use spec2char_core::gf2::BitVec;
use spec2char_core::group::{self, GroupCtx, GroupElement};
use spec2char_core::qparse::{load_quadmap, save_quadmap};
use spec2char_core::quadmap::{self, all_transfers_with};
use spec2char_core::random::random_real_seed_with;
use spec2char_core::reps;
use spec2char_core::verify::{self, VerifyOptions};
use spec2char_core::{Error, Execution, QuadMap};

pub mod render;

pub const DEFAULT_CLI_ORACLE_CAP: usize = 1 << 12;

pub mod exit {
    pub const OK: i32 = 0;
    pub const VERIFY_FAILED: i32 = 1;
    pub const INVALID_SEED: i32 = 2;
    pub const PARSE_ERROR: i32 = 3;
}

#[derive(Debug, Parser)]
#[command(
    name = "spec2char",
    version,
    about = "Conjugacy classes, character tables and representations of special 2-groups given by quadratic maps over F2"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub config: RunConfig,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Seed validity, realness, |G| and |Z(G)|.
    Check,
    /// Radical, quotient form class and character count for each functional.
    Transfers,
    /// Conjugacy classes (fast formula, or brute force with --oracle).
    Classes,
    /// The full character table.
    Chartable,
    /// Explicit matrix representations of the non-linear characters.
    Reps,
    /// Run every fast path against its oracle.
    Verify,
    /// Emit a random valid real seed document.
    Random,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Clone, Debug, Args)]
pub struct RunConfig {
    /// Input document (reads stdin when neither --input nor --doc is given).
    #[arg(long, global = true, conflicts_with = "doc")]
    pub input: Option<PathBuf>,
    /// Input document given inline.
    #[arg(long, global = true)]
    pub doc: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Largest |G| for which brute-force oracles run.
    #[arg(long, global = true, default_value_t = DEFAULT_CLI_ORACLE_CAP)]
    pub oracle_cap: usize,
    /// `classes`: enumerate the group instead of using the fast formula.
    #[arg(long, global = true)]
    pub oracle: bool,
    /// `reps`: also print the image of this element, written `v:w`.
    #[arg(long, global = true)]
    pub element: Option<String>,
    /// Run without the thread pool.
    #[arg(long, global = true)]
    pub sequential: bool,
    #[arg(long, global = true)]
    pub dim_v: Option<usize>,
    #[arg(long, global = true)]
    pub dim_w: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

impl RunConfig {
    fn exec(&self) -> Execution {
        if self.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        }
    }
}

#[derive(Debug, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            code: exit::OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(code: i32, msg: impl Into<String>) -> Self {
        Self {
            code,
            stdout: String::new(),
            stderr: msg.into(),
        }
    }
}

/// Exit code for a core error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Syntax { .. }
        | Error::VarOutOfRange { .. }
        | Error::Degree { .. }
        | Error::Schema(_)
        | Error::NotUpperTriangular { .. }
        | Error::Json(_) => exit::PARSE_ERROR,
        Error::VerificationFailed(_) | Error::SignNotBilinear => exit::VERIFY_FAILED,
        _ => exit::INVALID_SEED,
    }
}

fn fail(e: Error) -> Outcome {
    let mut msg = format!("error: {e}\n");
    if matches!(e, Error::NotReal | Error::RadicalNotIsotropic(_)) {
        msg.push_str("hint: `classes --oracle` works for non-real groups\n");
    }
    Outcome::error(exit_code(&e), msg)
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(cli.command, &cli.config),
        Err(e) => {
            let code = if e.use_stderr() {
                exit::PARSE_ERROR
            } else {
                exit::OK
            };
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome::error(code, text)
            } else {
                Outcome::ok(text)
            }
        }
    }
}

fn read_input(cfg: &RunConfig) -> Result<String, Outcome> {
    let io_err = |what: String, e: std::io::Error| {
        Outcome::error(exit::PARSE_ERROR, format!("error: {what}: {e}\n"))
    };
    match (&cfg.doc, &cfg.input) {
        (Some(doc), _) => Ok(doc.clone()),
        (None, Some(path)) => {
            fs::read_to_string(path).map_err(|e| io_err(path.display().to_string(), e))
        }
        (None, None) => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| io_err("stdin".into(), e))?;
            Ok(s)
        }
    }
}

fn load(cfg: &RunConfig) -> Result<QuadMap, Outcome> {
    load_quadmap(&read_input(cfg)?).map_err(fail)
}

fn require_valid(q: &QuadMap) -> Result<(), Outcome> {
    let v = quadmap::is_valid_group_seed(q);
    if v.is_valid() {
        Ok(())
    } else {
        Err(fail(Error::InvalidSeed {
            regular: v.regular,
            polar_spans_w: v.polar_spans_w,
        }))
    }
}

pub fn execute(command: Command, cfg: &RunConfig) -> Outcome {
    let result = match command {
        Command::Random => cmd_random(cfg),
        _ => load(cfg).and_then(|q| match command {
            Command::Check => cmd_check(&q, cfg),
            Command::Transfers => cmd_transfers(&q, cfg),
            Command::Classes => cmd_classes(&q, cfg),
            Command::Chartable => cmd_chartable(&q, cfg),
            Command::Reps => cmd_reps(&q, cfg),
            Command::Verify => cmd_verify(&q, cfg),
            Command::Random => unreachable!(),
        }),
    };
    result.unwrap_or_else(|o| o)
}

fn cmd_check(q: &QuadMap, cfg: &RunConfig) -> Result<Outcome, Outcome> {
    let validity = quadmap::is_valid_group_seed(q);
    let report = render::CheckReport {
        dim_v: q.dim_v(),
        dim_w: q.dim_w(),
        regular: validity.regular,
        polar_spans_w: validity.polar_spans_w,
        real: quadmap::is_real_with(q, cfg.exec()),
        order_log2: q.dim_v() + q.dim_w(),
        center_log2: validity.is_valid().then_some(q.dim_w()),
    };
    let out = render::check(&report, cfg.format);
    Ok(Outcome {
        code: if validity.is_valid() {
            exit::OK
        } else {
            exit::INVALID_SEED
        },
        stdout: out,
        stderr: String::new(),
    })
}

fn cmd_transfers(q: &QuadMap, cfg: &RunConfig) -> Result<Outcome, Outcome> {
    require_valid(q)?;
    let transfers = all_transfers_with(q, cfg.exec()).map_err(fail)?;
    let rows = transfers
        .into_iter()
        .map(|t| {
            let class = if t.l > 0 {
                Some(classify(&t.qs)?)
            } else {
                None
            };
            Ok(render::TransferRow { report: t, class })
        })
        .collect::<Result<Vec<_>, Error>>()
        .map_err(fail)?;
    Ok(Outcome::ok(render::transfers(&rows, cfg.format)))
}

fn cmd_classes(q: &QuadMap, cfg: &RunConfig) -> Result<Outcome, Outcome> {
    require_valid(q)?;
    if cfg.oracle {
        let ctx = GroupCtx::new(q.clone());
        let classes = group::conjugacy_classes_bruteforce_with(&ctx, cfg.oracle_cap, cfg.exec())
            .map_err(fail)?;
        return Ok(Outcome::ok(render::oracle_classes(&classes, cfg.format)));
    }
    let classes = chartab::classes_fast_with(q, cfg.exec()).map_err(fail)?;
    Ok(Outcome::ok(render::classes(&classes, cfg.format)))
}

fn cmd_chartable(q: &QuadMap, cfg: &RunConfig) -> Result<Outcome, Outcome> {
    require_valid(q)?;
    let table = chartab::build_table_with(q, cfg.exec()).map_err(fail)?;
    Ok(Outcome::ok(render::chartable(&table, cfg.format)))
}

fn parse_element(text: &str, q: &QuadMap) -> Result<GroupElement, Outcome> {
    let bad = |msg: String| Outcome::error(exit::PARSE_ERROR, format!("error: --element: {msg}\n"));
    let (v, w) = text
        .split_once(':')
        .ok_or_else(|| bad(format!("expected `v:w`, got `{text}`")))?;
    let bits = |s: &str| {
        BitVec::parse_bits(s.trim()).ok_or_else(|| bad(format!("`{s}` is not a bit string")))
    };
    let (v, w) = (bits(v)?, bits(w)?);
    if v.len() != q.dim_v() || w.len() != q.dim_w() {
        return Err(bad(format!(
            "expected {} + {} bits, got {} + {}",
            q.dim_v(),
            q.dim_w(),
            v.len(),
            w.len()
        )));
    }
    Ok(GroupElement::new(v, w))
}

fn cmd_reps(q: &QuadMap, cfg: &RunConfig) -> Result<Outcome, Outcome> {
    require_valid(q)?;
    if !quadmap::is_real_with(q, cfg.exec()) {
        return Err(fail(Error::NotReal));
    }
    let element = cfg
        .element
        .as_deref()
        .map(|e| parse_element(e, q))
        .transpose()?;
    let ctx = GroupCtx::new(q.clone());
    let transfers = all_transfers_with(q, cfg.exec()).map_err(fail)?;
    let mut blocks = Vec::new();
    for t in &transfers {
        for rep in reps::full_reps_for(q, t).map_err(fail)? {
            blocks.push(render::RepBlock {
                generators: ctx
                    .generators()
                    .iter()
                    .map(|g| (*g, rep.image(g)))
                    .collect(),
                element: element.map(|g| (g, rep.image(&g))),
                rep,
            });
        }
    }
    Ok(Outcome::ok(render::reps(&blocks, cfg.format)))
}

fn cmd_verify(q: &QuadMap, cfg: &RunConfig) -> Result<Outcome, Outcome> {
    let opts = VerifyOptions {
        oracle_cap: cfg.oracle_cap,
        exec: cfg.exec(),
    };
    let report = verify::verify(q, opts).map_err(fail)?;
    Ok(Outcome {
        code: if report.passed() {
            exit::OK
        } else {
            exit::VERIFY_FAILED
        },
        stdout: render::verify(&report, cfg.format),
        stderr: String::new(),
    })
}

fn cmd_random(cfg: &RunConfig) -> Result<Outcome, Outcome> {
    let (Some(d), Some(m)) = (cfg.dim_v, cfg.dim_w) else {
        return Err(Outcome::error(
            exit::PARSE_ERROR,
            "error: random needs --dim-v and --dim-w\n",
        ));
    };
    let q = random_real_seed_with(d, m, cfg.seed, cfg.exec()).map_err(fail)?;
    Ok(Outcome::ok(save_quadmap(&q) + "\n"))
}
