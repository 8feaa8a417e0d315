use clap::{Args, Parser, Subcommand};
use gwgv::anomaly::Side;
use gwgv::harness::{
    builtin_references, emit_table, expand, parse_reference, render_table, run_solve, verify, ExpandPoint, Format, HarnessError, ModelSource,
    ResultBundle, RunConfig, TableFile,
};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "gwgv", version, about = "Exact higher-genus GW/GV invariants of the Grassmannian and Pfaffian Calabi-Yau threefolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the pipeline and write the bundle, timings and both GV tables
    Solve {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, default_value = "out")]
        out: PathBuf,
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Render one table from a bundle
    Table {
        #[arg(long)]
        bundle: PathBuf,
        /// x or z
        #[arg(long)]
        side: String,
        /// gv or gw
        #[arg(long, default_value = "gv")]
        kind: String,
        #[arg(long, default_value = "markdown")]
        format: String,
        /// write here instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare GV tables with reference tables cell by cell
    Verify {
        /// a bundle from `solve`; without it the pipeline runs first
        #[arg(long)]
        bundle: Option<PathBuf>,
        /// reference table files; the shipped tables when omitted
        #[arg(long)]
        reference: Vec<PathBuf>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Print the fundamental period and mirror map at x0, z0, conifold or x3 (orders from 3, 4, 5, 7)
    Expand {
        #[arg(long)]
        point: String,
        #[arg(long, default_value_t = 10)]
        order: i64,
        #[arg(long, default_value = "builtin:gr-pf")]
        model: String,
    },
}

#[derive(Args)]
struct RunArgs {
    /// model JSON file or builtin:gr-pf
    #[arg(long, default_value = "builtin:gr-pf")]
    model: String,
    #[arg(long, default_value_t = 5)]
    genus: usize,
    #[arg(long = "order-q")]
    order_q: Option<i64>,
    #[arg(long = "order-s")]
    order_s: Option<i64>,
    /// per-genus vanishing-row overrides
    #[arg(long)]
    schedule: Option<PathBuf>,
    /// cache root; falls back to $GWGV_CACHE
    #[arg(long)]
    cache: Option<PathBuf>,
}

impl RunArgs {
    fn config(&self) -> Result<RunConfig, HarnessError> {
        let mut c = RunConfig { model: self.model.parse::<ModelSource>()?, max_genus: self.genus, ..RunConfig::default() };
        if let Some(q) = self.order_q {
            c.q_order = q;
        }
        c.s_order = self.order_s;
        if let Some(p) = &self.schedule {
            c.schedule = RunConfig::read_schedule(p)?;
        }
        c.cache_dir = RunConfig::resolve_cache_dir(self.cache.clone());
        c.validate()?;
        Ok(c)
    }
}

fn parse_side(s: &str) -> Result<Side, HarnessError> {
    match s {
        "x" => Ok(Side::X),
        "z" => Ok(Side::Z),
        _ => Err(HarnessError::Config(format!("unknown side {s}; expected x or z"))),
    }
}

fn write(path: &Path, text: &str) -> Result<(), HarnessError> {
    std::fs::write(path, text).map_err(|e| HarnessError::io(path.display(), e))
}

fn read(path: &Path) -> Result<String, HarnessError> {
    std::fs::read_to_string(path).map_err(|e| HarnessError::io(path.display(), e))
}

/// Print to stdout; a closed pipe is not an error.
fn emit(text: &str) {
    use std::io::Write;
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn load_bundle(path: &Path) -> Result<ResultBundle, HarnessError> {
    ResultBundle::from_json(&path.display().to_string(), &read(path)?)
}

fn run(cli: Cli) -> Result<ExitCode, HarnessError> {
    match cli.command {
        Command::Solve { run, out, format } => {
            let format: Format = format.parse()?;
            let config = RunConfig { format, ..run.config()? };
            let (bundle, timings) = run_solve(&config)?;
            std::fs::create_dir_all(&out).map_err(|e| HarnessError::io(out.display(), e))?;
            write(&out.join("bundle.json"), &bundle.to_json())?;
            write(&out.join("timings.json"), &serde_json::to_string_pretty(&timings).expect("timings serialize"))?;
            for t in &bundle.gv {
                emit_table(t, format, &out.join(format!("gv_{}.{}", t.side, format.extension())))?;
            }
            if let Some(k) = &bundle.k_u2_text {
                println!("k_U^2 = {k}");
            }
            println!("wrote {}", out.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Table { bundle, side, kind, format, out } => {
            let b = load_bundle(&bundle)?;
            let side = parse_side(&side)?;
            let tables = match kind.as_str() {
                "gv" => &b.gv,
                "gw" => &b.gw,
                _ => return Err(HarnessError::Config(format!("unknown kind {kind}; expected gv or gw"))),
            };
            let empty = TableFile { side, entries: Vec::new(), metadata: Default::default() };
            let t = tables.iter().find(|t| t.side == side).unwrap_or(&empty);
            let format: Format = format.parse()?;
            match out {
                Some(p) => emit_table(t, format, &p)?,
                None => emit(&render_table(t, format)?),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { bundle, reference, run } => {
            let refs = if reference.is_empty() {
                builtin_references()
            } else {
                reference.iter().map(|p| parse_reference(&p.display().to_string(), &read(p)?)).collect::<Result<Vec<_>, _>>()?
            };
            let b = match bundle {
                Some(p) => load_bundle(&p)?,
                None => run_solve(&run.config()?)?.0,
            };
            let report = verify(&b.gv, &refs);
            emit(&format!("{report}\n"));
            Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Expand { point, order, model } => {
            let point: ExpandPoint = point.parse()?;
            let m = model.parse::<ModelSource>()?.load()?;
            let e = expand(&m, point, order)?;
            emit(&(serde_json::to_string_pretty(&e).expect("expansion serializes") + "\n"));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
