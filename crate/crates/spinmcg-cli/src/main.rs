//! `spinmcg`: command-line front end for the presentation checks.
//!
//! Exit codes: 0 when every non-skipped check passes, 1 when a check or
//! expectation fails, 2 on usage, input or internal errors.

mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use spinmcg::fp_core::{abelianize, format_word, Presentation, SnfResult};
use spinmcg::paper_presentations::checks::{
    check_generator_forms, check_relators, closure_size, even_stabilizer_order, CheckOutcome, CheckStatus, RepKind,
};
use spinmcg::paper_presentations::{
    expand, full_generating_set, lantern_count, parse_label, presentation, small_generating_set,
};
use spinmcg::sp_rep::convention_oracle;
use spinmcg::torus_complex::{
    ball, check_dichotomy, check_short_cycles, check_type_i_connectivity, connectivity_radius, triangle_census,
    SpinTorus,
};

use report::RunReport;

#[derive(Parser, Debug)]
#[command(name = "spinmcg", version, about = "Checks for presentations of even spin mapping class groups")]
struct Cli {
    /// Print the JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Record wall-clock time in the report (makes output run-dependent).
    #[arg(long, global = true)]
    timings: bool,
    /// List passing checks too.
    #[arg(long, short, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Source {
    /// Built-in presentation, e.g. g1, g3, closed-g4, handlebody-g2.
    #[arg(long)]
    preset: Option<String>,
    /// Presentation file (`gen`, `opaque`, `rel`, `flagged` lines).
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum SetKind {
    Full,
    Small,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Abelianization via Smith normal form.
    Abelianize {
        #[command(flatten)]
        source: Source,
        /// Expected group, e.g. "Z+Z/4".
        #[arg(long)]
        expect: Option<String>,
    },
    /// Evaluate every relator in the symplectic representation.
    CheckRep {
        #[command(flatten)]
        source: Source,
        /// Genus of a file presentation (presets carry their own).
        #[arg(long)]
        g: Option<usize>,
        #[arg(long, default_value = "sp")]
        rep: RepKind,
        /// Worker threads for relator evaluation; output order is fixed.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Mod-2 closure of a generating set against the even-form stabilizer order.
    CheckGeneration {
        #[arg(long)]
        g: usize,
        #[arg(long, value_enum, default_value = "full")]
        set: SetKind,
        #[arg(long, default_value_t = 3)]
        max_genus: usize,
        #[arg(long, default_value_t = 50_000_000)]
        cap: usize,
    },
    /// Checks on balls of the genus-1 spin complex.
    Torus {
        #[arg(long, default_value_t = 50)]
        ball: i64,
        /// Comma-separated: connectivity, trick, triangles, cycles.
        #[arg(long, value_delimiter = ',', default_value = "connectivity,trick,triangles")]
        check: Vec<String>,
        #[arg(long, default_value_t = 2)]
        slack: i64,
        #[arg(long, default_value_t = 20)]
        cycle_ball: i64,
        #[arg(long, default_value_t = 24)]
        fill_ball: i64,
        #[arg(long, default_value_t = 5)]
        cycle_length: usize,
        /// Write the adjacency list of the ball to this file.
        #[arg(long)]
        adjacency: Option<PathBuf>,
    },
    /// Expand a shorthand symbol into a word over the generators.
    Expand {
        #[arg(long)]
        symbol: String,
        #[arg(long)]
        g: usize,
        /// Report the number of lantern steps in the recursive definition of d[...] / D[...].
        #[arg(long)]
        count_lanterns: bool,
        #[arg(long, default_value_t = 1_000_000)]
        max_len: u128,
    },
    /// Print a preset in the file format.
    Dump {
        #[arg(long)]
        preset: String,
        #[arg(long, default_value_t = 1_000_000)]
        max_len: u128,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(mut rep) => {
            rep.finish();
            if cli.json {
                match serde_json::to_string_pretty(&rep) {
                    Ok(s) => println!("{s}"),
                    Err(e) => {
                        eprintln!("error: {e}");
                        return ExitCode::from(2);
                    }
                }
            } else {
                print!("{}", rep.text(cli.verbose));
            }
            if rep.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<RunReport> {
    match &cli.command {
        Command::Abelianize { source, expect } => cmd_abelianize(cli, source, expect.as_deref()),
        Command::CheckRep { source, g, rep, jobs } => cmd_check_rep(cli, source, *g, *rep, *jobs),
        Command::CheckGeneration { g, set, max_genus, cap } => cmd_check_generation(cli, *g, *set, *max_genus, *cap),
        Command::Torus { ball, check, slack, cycle_ball, fill_ball, cycle_length, adjacency } => {
            let opts = TorusOpts {
                n: *ball,
                slack: *slack,
                cycle_ball: *cycle_ball,
                fill_ball: *fill_ball,
                cycle_length: *cycle_length,
            };
            cmd_torus(cli, opts, check, adjacency.as_deref())
        }
        Command::Expand { symbol, g, count_lanterns, max_len } => {
            cmd_expand(cli, symbol, *g, *count_lanterns, *max_len)
        }
        Command::Dump { preset, max_len } => cmd_dump(cli, preset, *max_len),
    }
}

/// Loads a presentation and its genus (if known).
fn load(source: &Source, report: &mut RunReport) -> Result<(Presentation, Option<usize>)> {
    if let Some(label) = &source.preset {
        report.param("preset", label);
        let p = presentation(label)?;
        let (_, g) = parse_label(label)?;
        return Ok((p, Some(g)));
    }
    let path = source.file.as_ref().ok_or_else(|| anyhow!("one of --preset or --file is required"))?;
    report.param("file", path.display().to_string());
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let p = Presentation::parse(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok((p, None))
}

fn cmd_abelianize(cli: &Cli, source: &Source, expect: Option<&str>) -> Result<RunReport> {
    let mut report = RunReport::new("abelianize", cli.timings);
    let (p, g) = load(source, &mut report)?;
    report.genus = g;
    let group = abelianize(&p)?;
    report.set_group(&group);
    report.result("generators", p.gens.len());
    report.result("relators", p.active().count());
    if let Some(e) = expect {
        report.param("expect", e);
        let want = SnfResult::parse(e).ok_or_else(|| anyhow!("cannot parse expected group `{e}`"))?;
        report.push(CheckOutcome::from_bool("expect", want == group, format!("expected {want}, got {group}")));
    }
    Ok(report)
}

fn cmd_check_rep(cli: &Cli, source: &Source, g: Option<usize>, kind: RepKind, jobs: usize) -> Result<RunReport> {
    let mut report = RunReport::new("check-rep", cli.timings);
    report.param("rep", if kind == RepKind::Sp { "sp" } else { "gf2" });
    report.param("jobs", jobs);
    let (p, preset_g) = load(source, &mut report)?;
    let g = preset_g.or(g).ok_or_else(|| anyhow!("--g is required with --file"))?;
    report.genus = Some(g);
    // Sign conventions first; nothing else is meaningful if they are off.
    for (label, ok) in convention_oracle() {
        report.push(CheckOutcome::from_bool(format!("oracle:{label}"), ok, ""));
    }
    if !report.passed() {
        return Ok(report);
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build()?;
    let outcomes = pool.install(|| check_relators(&p, g, kind, jobs > 1));
    report.extend(outcomes);
    report.extend(check_generator_forms(&p, g));
    Ok(report)
}

fn cmd_check_generation(cli: &Cli, g: usize, set: SetKind, max_genus: usize, cap: usize) -> Result<RunReport> {
    let mut report = RunReport::new("check-generation", cli.timings);
    report.genus = Some(g);
    let set_name = match set {
        SetKind::Full => "full",
        SetKind::Small => "small",
    };
    report.param("set", set_name);
    if g == 0 || g > max_genus {
        bail!("genus {g} is outside 1..={max_genus} (raise --max-genus to allow it)");
    }
    let gens = match set {
        SetKind::Full => full_generating_set(g)?,
        SetKind::Small => small_generating_set(g)?,
    };
    report.result("generators", gens.elements.iter().map(|(n, _)| n.clone()).collect::<Vec<_>>());
    let size = closure_size(&gens, cap)?;
    let expected = even_stabilizer_order(g);
    report.closure_size = Some(size as u64);
    report.result("expected", expected as u64);
    report.push(CheckOutcome::from_bool("closure", size as u128 == expected, format!("{size} vs {expected}")));
    Ok(report)
}

struct TorusOpts {
    n: i64,
    slack: i64,
    cycle_ball: i64,
    fill_ball: i64,
    cycle_length: usize,
}

fn cmd_torus(cli: &Cli, o: TorusOpts, checks: &[String], adjacency: Option<&Path>) -> Result<RunReport> {
    let mut report = RunReport::new("torus", cli.timings);
    report.genus = Some(1);
    report.param("ball", o.n);
    report.param("check", checks);
    let st = SpinTorus::default();
    let b = ball(o.n, &st)?;
    let (e1, e2) = b.edge_count();
    report.result("vertices", b.len());
    report.result("type_i_edges", e1);
    report.result("type_ii_edges", e2);
    report.result("degree_histogram", b.degree_histogram());
    if let Some(path) = adjacency {
        std::fs::write(path, b.adjacency_text()).with_context(|| format!("writing {}", path.display()))?;
    }
    for c in checks {
        match c.as_str() {
            "connectivity" => {
                report.param("slack", o.slack);
                let first_bad = check_type_i_connectivity(o.n, o.slack, &st)?;
                let big = ball(o.n + o.slack, &st)?;
                let needed = (1..=o.n).filter_map(|k| connectivity_radius(&big, k, o.slack).map(|m| m - k)).max();
                let detail = match first_bad {
                    Some(k) => format!("radius {k} not connected within slack {}", o.slack),
                    None => format!("largest slack used: {}", needed.unwrap_or(0)),
                };
                report.push(CheckOutcome::from_bool("connectivity", first_bad.is_none(), detail));
            }
            "trick" => match check_dichotomy(&b, &st) {
                Ok(n) => report.push(CheckOutcome::new("trick", CheckStatus::Pass, format!("{n} type-ii edges"))),
                Err(e) => report.push(CheckOutcome::new("trick", CheckStatus::Fail, e.to_string())),
            },
            "triangles" => {
                let census = triangle_census(&b);
                let ok = census[0] == 0 && census[2] == 0 && census[3] == 0;
                let detail = format!("3-cycles by type-ii edge count: {census:?}");
                report.push(CheckOutcome::from_bool("triangles", ok, detail));
            }
            "cycles" => {
                report.param("cycle_ball", o.cycle_ball);
                report.param("fill_ball", o.fill_ball);
                let r = check_short_cycles(o.cycle_ball, o.cycle_length, o.fill_ball, &st)?;
                let detail = format!("{} cycles, {} not contracted", r.cycles, r.failures.len());
                report.push(CheckOutcome::from_bool("cycles", r.failures.is_empty(), detail));
            }
            other => bail!("unknown torus check `{other}`"),
        }
    }
    Ok(report)
}

/// Number of indices in `d[...]` / `D[...]`, if the symbol has that shape.
fn index_count(symbol: &str) -> Option<usize> {
    let inner = symbol.strip_prefix("D[").or_else(|| symbol.strip_prefix("d["))?.strip_suffix(']')?;
    Some(inner.split(',').count())
}

fn cached_expansion(symbol: &str, g: usize, max_len: u128) -> Result<(String, usize)> {
    let compute = || -> Result<(String, usize)> {
        let (names, w) = expand(symbol, g, max_len)?;
        Ok((format_word(&names, &w), w.len()))
    };
    let Some(dir) = std::env::var_os("SPINMCG_CACHE_DIR") else {
        return compute();
    };
    let path = Path::new(&dir).join(format!("expand-g{g}-{}.txt", hex::encode(symbol)));
    if let Ok(text) = std::fs::read_to_string(&path) {
        if let Some((len, word)) = text.trim_end().split_once('\t') {
            if let Ok(len) = len.parse() {
                return Ok((word.to_string(), len));
            }
        }
    }
    let (word, len) = compute()?;
    std::fs::create_dir_all(&dir).with_context(|| format!("creating {}", Path::new(&dir).display()))?;
    std::fs::write(&path, format!("{len}\t{word}\n")).with_context(|| format!("writing {}", path.display()))?;
    Ok((word, len))
}

fn cmd_expand(cli: &Cli, symbol: &str, g: usize, count_lanterns: bool, max_len: u128) -> Result<RunReport> {
    let mut report = RunReport::new("expand", cli.timings);
    report.genus = Some(g);
    report.param("symbol", symbol);
    let (word, len) = cached_expansion(symbol, g, max_len)?;
    report.result("length", len);
    report.result("word", word);
    if count_lanterns {
        let n = index_count(symbol).ok_or_else(|| anyhow!("--count-lanterns needs a d[...] or D[...] symbol"))?;
        report.result("lanterns", lantern_count(n));
    }
    Ok(report)
}

fn cmd_dump(cli: &Cli, label: &str, max_len: u128) -> Result<RunReport> {
    let mut report = RunReport::new("dump", cli.timings);
    report.param("preset", label);
    let p = presentation(label)?;
    report.genus = Some(parse_label(label)?.1);
    let text = p.to_text(max_len)?;
    if cli.json {
        report.result("text", text);
    } else {
        print!("{text}");
    }
    Ok(report)
}
