//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 route
//! mismatch, fixture mismatch or internal consistency failure.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use mgn_euler::closed::e_bar_direct_detailed;
use mgn_euler::graph::{catalog, enumerate_stable_graphs};
use mgn_euler::open::branch_data_enumerate;
use mgn_euler::report::{
    exit_code, inject_fault, render, run_verify, Cache, Engine, Format, Kind, Level, Route, FAULT_ENV,
};
use mgn_euler::{Error, Result, Windows};

#[derive(Parser, Debug)]
#[command(
    name = "mgn-euler",
    version,
    about = "Exact Euler characteristics of moduli spaces of pointed curves"
)]
struct Cli {
    #[command(flatten)]
    opts: GlobalOpts,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug)]
struct GlobalOpts {
    /// Highest power of x kept in (x, ħ) series.
    #[arg(long, global = true)]
    xmax: Option<usize>,
    /// Highest power of ħ kept in (x, ħ) series.
    #[arg(long, global = true)]
    hmax: Option<usize>,
    /// Highest power of λ kept in the closed generating function.
    #[arg(long, global = true)]
    lmax: Option<usize>,
    /// Highest power of y kept in the closed generating function.
    #[arg(long, global = true)]
    ymax: Option<usize>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Directory of the persisted result cache; MGN_EULER_CACHE takes precedence.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Output format; single values print bare when omitted.
    #[arg(long, global = true, value_enum)]
    format: Option<Fmt>,
    /// Record wall time per cell (reports are then no longer byte-stable).
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Fmt {
    Csv,
    Json,
    Md,
}

impl From<Fmt> for Format {
    fn from(f: Fmt) -> Self {
        match f {
            Fmt::Csv => Format::Csv,
            Fmt::Json => Format::Json,
            Fmt::Md => Format::Md,
        }
    }
}

#[derive(Args, Debug)]
struct ValueArgs {
    g: u32,
    n: u32,
    /// Route to use (default: the first route of the quantity).
    #[arg(long)]
    route: Option<String>,
    /// Compute by every route and fail on any disagreement.
    #[arg(long)]
    all_routes: bool,
    /// Write the stable-graph catalog of (g, n) into this directory.
    #[arg(long)]
    emit_graphs: Option<PathBuf>,
    /// Write the cover data behind an ordinary Euler characteristic into this directory.
    #[arg(long)]
    emit_cover_data: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct TableArgs {
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// χ(M_g^n).
    ChiOpen(ValueArgs),
    /// χ(M̄_g^n).
    ChiBar(ValueArgs),
    /// e(M_g^n), with n ≥ 1.
    EOpen(ValueArgs),
    /// e(M̄_g^n).
    EBar(ValueArgs),
    /// e(M_g^{n+1}) for g = 3..10, n = 1..8, diffed against the reference table.
    Table1(TableArgs),
    /// e(M̄_g^n) for g = 2..4, n = 0..6, diffed against the reference table.
    Table2(TableArgs),
    /// Run the verification suite.
    Verify {
        #[arg(value_enum, default_value = "quick")]
        level: LevelArg,
    },
    /// Dump the stable graphs of type (g, n) as JSON.
    Graphs {
        g: u32,
        n: u32,
        /// Only graphs with this first Betti number.
        #[arg(long)]
        betti: Option<u32>,
        /// Also write the catalog into this directory.
        #[arg(long)]
        emit_graphs: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum LevelArg {
    Quick,
    Full,
}

fn windows(o: &GlobalOpts) -> Windows {
    let d = Windows::default();
    Windows {
        xmax: o.xmax.unwrap_or(d.xmax),
        hmax: o.hmax.unwrap_or(d.hmax),
        lmax: o.lmax.unwrap_or(d.lmax),
        ymax: o.ymax.unwrap_or(d.ymax),
    }
}

fn write_json<T: serde::Serialize>(dir: &Path, name: &str, v: &T) -> Result<()> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join(name), serde_json::to_string_pretty(v)? + "\n")?;
    Ok(())
}

fn emit_graphs(dir: &Path, g: u32, n: u32, betti: Option<u32>) -> Result<()> {
    let classes = enumerate_stable_graphs(g, n, betti)?;
    write_json(dir, &format!("graphs_{g}_{n}.json"), &catalog(g, n, &classes))
}

fn emit_cover_data(dir: &Path, kind: Kind, g: u32, n: u32) -> Result<()> {
    match kind {
        Kind::EOpen => {
            if n == 0 {
                return Err(Error::InvalidArgument("need at least one marked point".into()));
            }
            let data = branch_data_enumerate(g, n - 1)?;
            write_json(dir, &format!("branch_data_{g}_{n}.json"), &data)
        }
        Kind::EBar => {
            let (_, parts) = e_bar_direct_detailed(g, n)?;
            write_json(dir, &format!("skeletons_{g}_{n}.json"), &parts)
        }
        _ => Err(Error::InvalidArgument("cover data exists only for e-open and e-bar".into())),
    }
}

fn value_cmd(engine: &Engine, kind: Kind, a: &ValueArgs, fmt: Option<Format>) -> Result<i32> {
    let routes: Vec<Route> = match (&a.route, a.all_routes) {
        (_, true) => kind.routes().to_vec(),
        (Some(r), false) => vec![r.parse()?],
        (None, false) => vec![kind.default_route()],
    };
    if let Some(dir) = &a.emit_graphs {
        emit_graphs(dir, a.g, a.n, None)?;
    }
    if let Some(dir) = &a.emit_cover_data {
        emit_cover_data(dir, kind, a.g, a.n)?;
    }
    let doc = engine.value_report(kind, a.g, a.n, &routes)?;
    match fmt {
        Some(f) => print!("{}", render(&doc, f)?),
        None if doc.cells.len() == 1 => println!("{}", doc.cells[0].value),
        None => {
            for c in &doc.cells {
                println!("{} {}", c.route, c.value);
            }
        }
    }
    Ok(0)
}

fn table_cmd(engine: &Engine, which: u8, a: &TableArgs, fmt: Format) -> Result<i32> {
    let t = if which == 1 { engine.table1()? } else { engine.table2()? };
    let text = render(&t.doc, fmt)?;
    match &a.out {
        Some(p) => fs::write(p, &text)?,
        None => print!("{text}"),
    }
    eprintln!(
        "{}: {} cells, {} differences from the reference table",
        t.fixture,
        t.doc.cells.len(),
        t.diffs.len()
    );
    for d in &t.diffs {
        eprintln!("  ({}, {}): expected {}, got {}", d.g, d.n, d.expected, d.got);
    }
    Ok(if t.diffs.is_empty() { 0 } else { 3 })
}

fn verify_cmd(win: &Windows, level: Level, fmt: Option<Format>) -> Result<i32> {
    if let Some(fault) = std::env::var_os(FAULT_ENV).filter(|v| !v.is_empty()) {
        inject_fault(&fault.to_string_lossy())?;
    }
    let rep = run_verify(level, win);
    if matches!(fmt, Some(Format::Json)) {
        println!("{}", serde_json::to_string_pretty(&rep)?);
    } else {
        for c in &rep.checks {
            if c.ok {
                println!("PASS {}", c.name);
            } else {
                println!("FAIL {}: {}", c.name, c.detail);
            }
        }
    }
    Ok(if rep.ok() { 0 } else { 1 })
}

fn run(cli: Cli) -> Result<i32> {
    if let Some(j) = cli.opts.jobs {
        if j == 0 {
            return Err(Error::InvalidArgument("--jobs must be at least 1".into()));
        }
        // Fails only if a pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j).build_global();
    }
    let win = windows(&cli.opts);
    let cache = Cache::from_env_or(cli.opts.cache_dir.as_deref())?;
    let mut engine = Engine::new(win).with_cache(cache);
    engine.timings = cli.opts.timings;
    let fmt = cli.opts.format.map(Format::from);
    match &cli.cmd {
        Cmd::ChiOpen(a) => value_cmd(&engine, Kind::ChiOpen, a, fmt),
        Cmd::ChiBar(a) => value_cmd(&engine, Kind::ChiBar, a, fmt),
        Cmd::EOpen(a) => value_cmd(&engine, Kind::EOpen, a, fmt),
        Cmd::EBar(a) => value_cmd(&engine, Kind::EBar, a, fmt),
        Cmd::Table1(a) => table_cmd(&engine, 1, a, fmt.unwrap_or(Format::Csv)),
        Cmd::Table2(a) => table_cmd(&engine, 2, a, fmt.unwrap_or(Format::Csv)),
        Cmd::Verify { level } => {
            let level = match level {
                LevelArg::Quick => Level::Quick,
                LevelArg::Full => Level::Full,
            };
            verify_cmd(&win, level, fmt)
        }
        Cmd::Graphs { g, n, betti, emit_graphs: dir } => {
            let classes = enumerate_stable_graphs(*g, *n, *betti)?;
            let cat = catalog(*g, *n, &classes);
            match dir {
                Some(d) => write_json(d, &format!("graphs_{g}_{n}.json"), &cat)?,
                None => println!("{}", serde_json::to_string_pretty(&cat)?),
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
