//! Command-line front end for the atlas toolkit.
//!
//! Exit codes: 0 when every selected check passes, 1 when a check fails,
//! 2 for usage or configuration errors, 3 when a cap is exceeded.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use bbatlas::cartan::Gluing;
use bbatlas::config::{self, diagram_json, parse_node_list};
use bbatlas::coxeter::DEFAULT_BALL_CAP;
use bbatlas::poset::{DEFAULT_CHAIN_CAP, DEFAULT_SEED};
use bbatlas::verify::{self, parse_checks, Check, Report, Settings};
use bbatlas::{AtlasContext, CoxeterGroup, Error, LabelSide, NodeSet, TwistedContext};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "bbatlas", version, about = "Twisted Bruhat orders and Birkhoff-Bruhat atlases")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Glue two copies of a diagram along K.
    Glue(Common),
    /// List the elements of length at most --max-length.
    Enumerate {
        #[command(flatten)]
        common: Common,
        /// Restrict to the parabolic subgroup on these nodes.
        #[arg(long = "J")]
        j: Option<String>,
    },
    /// Bruhat and twisted-order queries.
    Order {
        #[arg(value_enum)]
        query: Query,
        #[command(flatten)]
        common: Common,
        /// The twisting subset, as comma-separated node names.
        #[arg(long = "J", default_value = "")]
        j: String,
        /// First element, as space-separated node names ("e" or "" for the identity).
        #[arg(long)]
        a: String,
        /// Second element.
        #[arg(long)]
        b: Option<String>,
    },
    /// Build or verify the poset Q_K.
    Qk {
        #[command(subcommand)]
        action: QkAction,
    },
    /// Run check suites and report.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Comma-separated checks: iso, image, convex, thin, el, oracles, breve, glue-table.
        #[arg(long)]
        check: String,
    },
}

#[derive(Subcommand)]
enum QkAction {
    /// Emit Q_K with a least element adjoined, with ranks and edge labels.
    Build {
        #[command(flatten)]
        common: Common,
        /// Also write a Graphviz rendering to this file.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Run one of the atlas checks: iso, image, convex or breve.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        check: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Query {
    Bruhat,
    Jleq,
    Jlen,
    Jinterval,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Tilde,
    Breve,
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    Left,
    Right,
}

#[derive(Args, Clone)]
struct Common {
    /// Group file, bundled config name (e.g. a3-k2) or catalog type (e.g. B2).
    #[arg(long, alias = "config")]
    group: Option<String>,
    /// The subset K, as comma-separated node names; overrides the group file.
    #[arg(long = "K")]
    k: Option<String>,
    #[arg(long, value_enum, default_value = "tilde")]
    mode: Mode,
    #[arg(long, default_value_t = 4)]
    max_length: usize,
    /// Output file (for qk build) or directory.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_BALL_CAP)]
    ball_cap: usize,
    #[arg(long, default_value_t = DEFAULT_CHAIN_CAP)]
    chain_cap: usize,
    /// Which product labels a cover w' < w: w (w')^-1 (left) or (w')^-1 w (right).
    #[arg(long, value_enum, default_value = "left")]
    labels: Side,
}

impl Common {
    fn settings(&self) -> Settings {
        Settings {
            max_length: self.max_length,
            seed: self.seed,
            ball_cap: self.ball_cap,
            chain_cap: self.chain_cap,
            label_side: match self.labels {
                Side::Left => LabelSide::Left,
                Side::Right => LabelSide::Right,
            },
        }
    }

    fn gluing(&self) -> Gluing {
        match self.mode {
            Mode::Tilde => Gluing::Tilde,
            Mode::Breve => Gluing::Breve,
        }
    }

    /// The group and K, falling back to `default` when no group is given.
    fn load(&self, default: Option<&str>) -> Result<(CoxeterGroup, NodeSet), Error> {
        let spec = self
            .group
            .as_deref()
            .or(default)
            .ok_or_else(|| Error::Config("--group is required".into()))?;
        let file = config::resolve(spec)?;
        let m = file.matrix()?;
        let k = match &self.k {
            Some(csv) => parse_node_list(&m, csv)?,
            None => file.k_set()?,
        };
        Ok((CoxeterGroup::new(m), k))
    }

    fn atlas(&self) -> Result<AtlasContext, Error> {
        let (g, k) = self.load(None)?;
        AtlasContext::new(g, k, self.gluing(), self.ball_cap)
    }
}

enum Outcome {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_cap() { 3 } else { 2 })
        }
    }
}

fn run(command: Command) -> Result<Outcome, Error> {
    match command {
        Command::Glue(common) => {
            let ctx = common.atlas()?;
            let value = diagram_json(ctx.diagram(), ctx.base().cartan());
            let ascii = ctx.diagram().render_ascii();
            match &common.out {
                Some(dir) => {
                    fs::create_dir_all(dir)?;
                    write_json(&dir.join("glued.json"), &value)?;
                    fs::write(dir.join("glued.txt"), &ascii)?;
                }
                None => println!("{}", pretty(&value)),
            }
            eprint!("{ascii}");
            Ok(Outcome::Pass)
        }
        Command::Enumerate { common, j } => {
            let (g, _) = common.load(None)?;
            let ball = match &j {
                Some(csv) => g.enumerate_parabolic(parse_node_list(g.cartan(), csv)?, common.max_length, common.ball_cap)?,
                None => g.enumerate_ball(common.max_length, common.ball_cap)?,
            };
            let value = json!({
                "nodes": g.cartan().nodes(),
                "max_length": common.max_length,
                "saturated": ball.saturated,
                "count": ball.elements.len(),
                "elements": ball.elements.iter().map(|w| g.record(w)).collect::<Vec<_>>(),
            });
            emit(&common.out, "enumerate.json", &value)?;
            Ok(Outcome::Pass)
        }
        Command::Order { query, common, j, a, b } => {
            let (g, _) = common.load(Some("a2"))?;
            let j = parse_node_list(g.cartan(), &j)?;
            let a_el = g.parse_element(&a)?;
            let b_el = b.as_deref().map(|s| g.parse_element(s)).transpose()?;
            let need_b = || b_el.clone().ok_or_else(|| Error::Config("--b is required for this query".into()));
            let t = TwistedContext::new(Arc::new(g.clone()), j);
            let value = match query {
                Query::Bruhat => {
                    let b_el = need_b()?;
                    json!({"query": "bruhat", "a": g.format_element(&a_el), "b": g.format_element(&b_el),
                           "result": g.bruhat_leq(&a_el, &b_el)})
                }
                Query::Jleq => {
                    let b_el = need_b()?;
                    let witness = if a_el == b_el { Some(g.identity()) } else { t.jleq_witness(&a_el, &b_el) };
                    json!({"query": "jleq", "J": g.names(j), "a": g.format_element(&a_el), "b": g.format_element(&b_el),
                           "result": witness.is_some(), "witness": witness.map(|u| g.format_element(&u))})
                }
                Query::Jlen => {
                    let d = t.decompose(&a_el);
                    json!({"query": "jlen", "J": g.names(j), "a": g.format_element(&a_el), "jlength": t.jlength(&a_el),
                           "x": g.format_element(&d.x), "y": g.format_element(&d.y)})
                }
                Query::Jinterval => {
                    let b_el = need_b()?;
                    let (_, poset) = t.jcovers(&a_el, &b_el, common.ball_cap)?;
                    let mut v = poset.to_json(None);
                    v["J"] = json!(g.names(j));
                    v
                }
            };
            emit(&common.out, "order.json", &value)?;
            Ok(Outcome::Pass)
        }
        Command::Qk { action: QkAction::Build { common, dot } } => {
            let ctx = common.atlas()?;
            let s = common.settings();
            let atlas = ctx.atlas_poset(s.max_length, s.seed, s.label_side)?;
            let value = atlas.to_json(&ctx);
            match &common.out {
                Some(path) if path.extension().is_some_and(|e| e == "json") => write_json(path, &value)?,
                out => emit(out, "qk.json", &value)?,
            }
            if let Some(path) = dot {
                fs::write(path, atlas.poset.to_dot(Some(&atlas.labeling)))?;
            }
            Ok(Outcome::Pass)
        }
        Command::Qk { action: QkAction::Verify { common, check } } => {
            let checks = parse_checks(&check)?;
            if let Some(c) = checks.iter().find(|c| !matches!(c, Check::Iso | Check::Image | Check::Convex | Check::Breve)) {
                return Err(Error::Config(format!("qk verify runs iso, image, convex or breve, not {c}")));
            }
            run_checks(&common, &checks)
        }
        Command::Verify { common, check } => run_checks(&common, &parse_checks(&check)?),
    }
}

fn run_checks(common: &Common, checks: &[Check]) -> Result<Outcome, Error> {
    if checks.is_empty() {
        return Err(Error::Config("no checks selected".into()));
    }
    let s = common.settings();
    let needs_group = checks.iter().any(|&c| c != Check::GlueTable);
    let loaded = if needs_group { Some(common.load(None)?) } else { None };
    let mut reports: Vec<Report> = Vec::new();
    for &c in checks {
        let report = match &loaded {
            Some((g, k)) if c != Check::GlueTable => verify::run(c, g, *k, &s)?,
            _ => verify::check_glue_table()?,
        };
        eprintln!("{}", report.summary());
        reports.push(report);
    }
    let passed = reports.iter().all(|r| r.passed);
    let value = json!({"passed": passed, "reports": reports});
    emit(&common.out, "verify.json", &value)?;
    Ok(if passed { Outcome::Pass } else { Outcome::Fail })
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

fn write_json(path: &Path, v: &Value) -> Result<(), Error> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, pretty(v) + "\n")?;
    Ok(())
}

/// Writes `file` inside the `--out` directory, or prints to stdout.
fn emit(out: &Option<PathBuf>, file: &str, v: &Value) -> Result<(), Error> {
    match out {
        Some(dir) => write_json(&dir.join(file), v),
        None => {
            println!("{}", pretty(v));
            Ok(())
        }
    }
}
