//! `ovaline`: verify, convert and search for hyperovals in PG(2, 2^m).
//!
//! Exit codes: 0 success (hyperoval / all checks pass), 1 negative verdict,
//! 2 invalid input, 3 internal defect (verifiers disagree).

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Mutex;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use ovaline::criteria::{ConsensusReport, ExponentSets, Method};
use ovaline::fixtures::{self, Fixture};
use ovaline::gpoly::g_table_to_coeffs;
use ovaline::gram::gram_spectrum_report;
use ovaline::io::{parse_hex, table_to_map, Document, Payload};
use ovaline::plane::{extract_g, opoly_points, translate};
use ovaline::search::{run_search_with, Checkpoint, RunOptions, SearchConfig, SearchMode};
use ovaline::{Error, FieldCtx, KElem};

const EXIT_NEGATIVE: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_DEFECT: u8 = 3;

#[derive(Parser)]
#[command(
    name = "ovaline",
    version,
    about = "Exact hyperoval toolkit for PG(2, 2^m)"
)]
struct Cli {
    #[command(flatten)]
    field: FieldArgs,
    /// Seed for every random choice (overrides the seed in search configs).
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

/// Field selection for inputs that do not carry their own field.
#[derive(Args, Clone, Default)]
struct FieldArgs {
    /// Extension degree, so that q = 2^m.
    #[arg(long, global = true)]
    m: Option<u32>,
    /// Defining polynomial of GF(2^m), in hex (default: smallest irreducible).
    #[arg(long, global = true)]
    fpoly: Option<String>,
    /// Element with absolute trace 1 defining GF(q^2), in hex.
    #[arg(long, global = true)]
    delta: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the coset representatives of the exponent set D.
    Dset {
        /// Field orders (default: 4 8 16 32 64 128).
        q: Vec<u64>,
        #[arg(long, value_enum, default_value = "csv")]
        format: DsetFormat,
    },
    /// Run the hyperoval verifiers on an input document.
    Verify {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "all")]
        method: MethodArg,
    },
    /// Convert between representations.
    Convert {
        file: PathBuf,
        #[arg(long, value_enum)]
        to: Target,
        /// Translate the point set by -b first, with b = "re,im" in hex.
        #[arg(long, value_name = "B")]
        translate_first: Option<String>,
    },
    /// Run a search described by a JSON config.
    Search {
        config: PathBuf,
        /// Maximum number of shards processed at once (default: from config).
        #[arg(long)]
        threads: Option<usize>,
        /// Resume from and record completed shards in this file.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
    },
    /// Spectral report of the Gram matrix of a hyperoval through the origin.
    Gram { file: PathBuf },
    /// Built-in and user fixtures.
    Fixtures {
        #[arg(long, conflicts_with_all = ["check", "export"])]
        list: bool,
        #[arg(long, conflicts_with = "export")]
        check: bool,
        /// Write every fixture as JSON into this directory.
        #[arg(long, value_name = "DIR")]
        export: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum DsetFormat {
    Csv,
    Json,
    Latex,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    All,
    Geometric,
    Powersum,
    Evensol,
    Bracket,
    Coeff,
    Rho,
    Gram,
}

impl MethodArg {
    fn method(self) -> Option<Method> {
        Some(match self {
            MethodArg::All => return None,
            MethodArg::Geometric => Method::Geometric,
            MethodArg::Powersum => Method::PowerSumD,
            MethodArg::Evensol => Method::EvenSolution,
            MethodArg::Bracket => Method::BracketPowerSum,
            MethodArg::Coeff => Method::Coefficient,
            MethodArg::Rho => Method::CoefficientRho,
            MethodArg::Gram => Method::Gram,
        })
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    G,
    Coeffs,
    Rho,
    Points,
    Homog,
    OpolyFramePoints,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let code = match e.downcast_ref::<Error>() {
                Some(Error::VerifierDisagreement(rep)) => {
                    if let Ok(text) = serde_json::to_string_pretty(rep) {
                        println!("{text}");
                    }
                    EXIT_DEFECT
                }
                Some(Error::Defect(_)) => EXIT_DEFECT,
                _ => EXIT_INVALID,
            };
            eprintln!("error: {e:#}");
            ExitCode::from(code)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    match cli.command {
        Command::Dset { q, format } => cmd_dset(&q, format),
        Command::Verify { file, method } => cmd_verify(&cli.field, &file, method),
        Command::Convert {
            file,
            to,
            translate_first,
        } => cmd_convert(&cli.field, &file, to, translate_first.as_deref()),
        Command::Search {
            config,
            threads,
            checkpoint,
        } => cmd_search(
            &cli.field,
            cli.seed,
            &config,
            threads,
            checkpoint.as_deref(),
        ),
        Command::Gram { file } => cmd_gram(&cli.field, &file),
        Command::Fixtures { check, export, .. } => cmd_fixtures(check, export.as_deref()),
    }
}

/// Writes one line to stdout; a closed pipe (e.g. `| head`) is not an error.
fn out(line: &str) -> anyhow::Result<()> {
    let mut stdout = std::io::stdout().lock();
    match writeln!(stdout, "{line}") {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        r => Ok(r?),
    }
}

fn print_json<T: Serialize>(value: &T) -> anyhow::Result<()> {
    out(&serde_json::to_string_pretty(value)?)
}

fn parse_opt_hex(s: &Option<String>) -> anyhow::Result<Option<u32>> {
    s.as_deref().map(parse_hex).transpose().map_err(Into::into)
}

impl FieldArgs {
    fn explicit(&self) -> bool {
        self.m.is_some() || self.fpoly.is_some() || self.delta.is_some()
    }

    fn context(&self) -> anyhow::Result<FieldCtx> {
        let m = self
            .m
            .ok_or_else(|| anyhow!("input has no field; pass --m"))?;
        Ok(FieldCtx::with_params(
            m,
            parse_opt_hex(&self.fpoly)?,
            parse_opt_hex(&self.delta)?,
        )?)
    }
}

/// Reads a full document, a fixture file, or a bare `{"kind", "data"}`
/// payload together with the field flags.
fn load_input(field: &FieldArgs, path: &Path) -> anyhow::Result<(FieldCtx, Payload)> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    if let Some(doc) = value.get_mut("document") {
        value = doc.take();
    }
    if value.get("field").is_some() {
        let doc: Document = serde_json::from_value(value).map_err(Error::from)?;
        let ctx = doc.context()?;
        if field.explicit() {
            let flags = field.context()?;
            if flags.desc() != ctx.desc() {
                bail!(Error::BadConfig(
                    "field flags disagree with the field in the input".into()
                ));
            }
        }
        Ok((ctx, doc.payload))
    } else {
        let payload: Payload = serde_json::from_value(value).map_err(Error::from)?;
        Ok((field.context()?, payload))
    }
}

fn cmd_dset(qs: &[u64], format: DsetFormat) -> anyhow::Result<u8> {
    let qs: Vec<u64> = if qs.is_empty() {
        vec![4, 8, 16, 32, 64, 128]
    } else {
        qs.to_vec()
    };
    let mut sets = Vec::new();
    for &q in qs.iter() {
        if q > 4096 {
            bail!(Error::NotPowerOfTwo(q));
        }
        sets.push(ExponentSets::compute(q)?);
    }
    match format {
        DsetFormat::Csv => {
            out("q,elements,cardinality")?;
            for s in &sets {
                out(&s.csv_row())?;
            }
        }
        DsetFormat::Latex => {
            for s in &sets {
                out(&s.latex_row())?;
            }
        }
        DsetFormat::Json => {
            #[derive(Serialize)]
            struct Row<'a> {
                q: u64,
                elements: &'a [u64],
                cardinality: usize,
            }
            let rows: Vec<Row> = sets
                .iter()
                .map(|s| Row {
                    q: s.q,
                    elements: &s.d_cal,
                    cardinality: s.d_cal.len(),
                })
                .collect();
            print_json(&rows)?;
        }
    }
    Ok(0)
}

fn verdict_code(verdict: bool) -> u8 {
    if verdict {
        0
    } else {
        EXIT_NEGATIVE
    }
}

fn cmd_verify(field: &FieldArgs, path: &Path, method: MethodArg) -> anyhow::Result<u8> {
    let (ctx, payload) = load_input(field, path)?;
    let mut report: ConsensusReport = payload.verify(&ctx)?;
    if let Some(m) = method.method() {
        report.reports.retain(|r| r.method == m);
    }
    print_json(&report)?;
    Ok(verdict_code(report.verdict))
}

fn parse_k(ctx: &FieldCtx, s: &str) -> anyhow::Result<KElem> {
    let (re, im) = s
        .split_once(',')
        .ok_or_else(|| Error::Parse(format!("expected re,im in hex, got {s:?}")))?;
    Ok(ctx.k(parse_hex(re)?, parse_hex(im)?)?)
}

fn cmd_convert(
    field: &FieldArgs,
    path: &Path,
    to: Target,
    translate_first: Option<&str>,
) -> anyhow::Result<u8> {
    let (ctx, payload) = load_input(field, path)?;
    let converted = match to {
        Target::OpolyFramePoints => {
            let Payload::Opoly(f) = &payload else {
                bail!(Error::Parse(
                    "opoly-frame-points needs an o-polynomial input".into()
                ));
            };
            let pts = opoly_points(&ctx, f);
            Payload::HomogPoints(pts.iter().map(|p| p.coords()).collect())
        }
        Target::Points | Target::Homog => {
            let mut h = payload.point_set(&ctx)?;
            if let Some(b) = translate_first {
                h = translate(&h, parse_k(&ctx, b)?, true)?;
            }
            match to {
                Target::Points => Payload::Points(h),
                _ => Payload::HomogPoints(h.to_homog(&ctx).iter().map(|p| p.coords()).collect()),
            }
        }
        Target::G | Target::Coeffs | Target::Rho => {
            let g = match (payload.g_table(&ctx)?, translate_first) {
                (Some(g), None) => g,
                (_, b) => {
                    let mut h = payload.point_set(&ctx)?;
                    if let Some(b) = b {
                        h = translate(&h, parse_k(&ctx, b)?, true)?;
                    }
                    extract_g(&ctx, &h).map_err(|e| match e {
                        Error::MissingOrigin => anyhow!(
                            "{e}; translate a point to the origin with --translate-first RE,IM"
                        ),
                        e => e.into(),
                    })?
                }
            };
            match to {
                Target::G => Payload::GTable(table_to_map(&g)),
                Target::Coeffs => Payload::GCoeffs(g_table_to_coeffs(&ctx, &g)?.coeffs().to_vec()),
                _ => Payload::RhoTable(table_to_map(&g.reciprocal(&ctx)?)),
            }
        }
    };
    out(&Document::new(&ctx, converted).to_json()?)?;
    Ok(0)
}

fn cmd_search(
    field: &FieldArgs,
    seed: Option<u64>,
    path: &Path,
    threads: Option<usize>,
    checkpoint: Option<&Path>,
) -> anyhow::Result<u8> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut cfg: SearchConfig = serde_json::from_str(&text).map_err(Error::from)?;
    if let Some(m) = field.m {
        if 1u32 << m != cfg.q {
            bail!(Error::BadConfig(format!(
                "--m {m} disagrees with q = {}",
                cfg.q
            )));
        }
    }
    if let Some(p) = parse_opt_hex(&field.fpoly)? {
        cfg.f_poly = Some(p);
    }
    if let Some(d) = parse_opt_hex(&field.delta)? {
        cfg.delta = Some(d);
    }
    if let (Some(s), SearchMode::Random { seed, .. }) = (seed, &mut cfg.mode) {
        *seed = s;
    }
    let resume = match checkpoint {
        Some(p) if p.exists() => {
            let text = fs::read_to_string(p)?;
            Some(serde_json::from_str::<Checkpoint>(&text).map_err(Error::from)?)
        }
        _ => None,
    };
    let state = Mutex::new(resume.clone().unwrap_or_default());
    let record = |o: &ovaline::search::ShardOutcome| {
        let Some(p) = checkpoint else { return };
        let mut st = state.lock().unwrap_or_else(|e| e.into_inner());
        st.completed.insert(o.shard, o.clone());
        match serde_json::to_string(&*st) {
            Ok(text) => {
                if let Err(e) = fs::write(p, text) {
                    eprintln!("warning: could not write checkpoint: {e}");
                }
            }
            Err(e) => eprintln!("warning: could not encode checkpoint: {e}"),
        }
    };
    let manifest = run_search_with(
        &cfg,
        RunOptions {
            threads,
            resume,
            on_shard: Some(&record),
        },
    )?;
    print_json(&manifest)?;
    Ok(0)
}

fn cmd_gram(field: &FieldArgs, path: &Path) -> anyhow::Result<u8> {
    let (ctx, payload) = load_input(field, path)?;
    let report = gram_spectrum_report(&ctx, &payload.point_set(&ctx)?)?;
    print_json(&report)?;
    Ok(verdict_code(report.all_pass()))
}

/// Lists fixtures unless `--check` or `--export` is given.
fn cmd_fixtures(check: bool, export: Option<&Path>) -> anyhow::Result<u8> {
    let all: Vec<Fixture> = fixtures::all()?;
    if let Some(dir) = export {
        fixtures::export(&all, dir)?;
        eprintln!("wrote {} fixtures to {}", all.len(), dir.display());
        return Ok(0);
    }
    if check {
        let mut failed = 0;
        for f in &all {
            let (rep, ok) = f.check()?;
            out(&format!(
                "{} {} q={} expected={} got={}",
                if ok { "ok  " } else { "FAIL" },
                f.name,
                f.q(),
                f.expected_verdict,
                rep.verdict
            ))?;
            failed += usize::from(!ok);
        }
        return Ok(if failed == 0 { 0 } else { EXIT_NEGATIVE });
    }
    for f in &all {
        let src = serde_json::to_value(f.source)?;
        out(&format!(
            "{}\tq={}\t{}\texpected={}",
            f.name,
            f.q(),
            src.as_str().unwrap_or_default(),
            f.expected_verdict
        ))?;
    }
    Ok(0)
}
