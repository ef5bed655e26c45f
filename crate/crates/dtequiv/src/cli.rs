//! The `dtequiv` command line.
//!
//! Exit codes: decision commands (`check-equiv`, `qm-equiv`, `bcf-equiv`,
//! `oracle-equiv`, `iswaxp`, `validate`) exit 0 for yes, 1 for no and 2 on
//! error. `bench` exits 1 when a size check fails. Everything else exits 0
//! or 2.

use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use dtequiv_core::explain::Explainer;
use dtequiv_core::gen::{
    example_function_trees, mutate_leaf, random_tree_with, restructure, running_examples, worst_case,
    RandomTreeConfig,
};
use dtequiv_core::oracle::{brute_equivalent_with_cap, DEFAULT_POINT_CAP};
use dtequiv_core::qm::{
    bcf_equivalence_with, bcf_with, class_terms, minimize_with, qm_equivalence, BcfConfig, CostModel,
    MinimizeConfig, TieBreak, WorklistOrder, DEFAULT_TERM_CAP,
};
use dtequiv_core::{equiv, shapley, validate, DecisionTree, FeatureId, Schema};
use serde_json::json;

use crate::bench;
use crate::format::{self, FormatError};
use crate::parallel;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    /// Human-readable text.
    Text,
    /// Versioned JSON documents.
    Doc,
}

#[derive(Debug, Parser)]
#[command(name = "dtequiv", version, about = "Decision-tree equivalence, explanations and two-level baselines")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    pub format: OutputFormat,

    /// Worker threads for equivalence, oracle and SHAP; 0 uses every core.
    #[arg(long, default_value_t = 1, global = true)]
    pub jobs: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    WorstCase,
    Running,
    ExampleFn,
    Random,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    None,
    Mutate,
    Restructure,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Order {
    Fifo,
    Lifo,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Cost {
    Terms,
    Literals,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether two trees predict the same class everywhere.
    CheckEquiv {
        t1: PathBuf,
        t2: PathBuf,
        /// Also write the witness document here.
        #[arg(long)]
        witness_out: Option<PathBuf>,
    },
    /// Compute one AXp by deleting features in order.
    Explain {
        #[arg(long)]
        tree: PathBuf,
        /// Assignment document, path, or `{x1:0,x2:1}`.
        #[arg(long)]
        assign: String,
        #[arg(long)]
        class: String,
        /// Features to try dropping first, comma separated.
        #[arg(long, value_delimiter = ',')]
        order: Vec<String>,
    },
    /// Check whether an assignment is a WAXp.
    Iswaxp {
        #[arg(long)]
        tree: PathBuf,
        #[arg(long)]
        assign: String,
        /// Check this class; otherwise any class.
        #[arg(long)]
        class: Option<String>,
    },
    /// Predict under missing values, if the prediction is determined.
    PredictMissing {
        #[arg(long)]
        tree: PathBuf,
        #[arg(long)]
        assign: String,
    },
    /// All prime implicants of a class.
    Bcf {
        #[arg(long)]
        tree: PathBuf,
        #[arg(long)]
        class: String,
        #[arg(long, default_value_t = DEFAULT_TERM_CAP)]
        term_cap: usize,
        #[arg(long, value_enum, default_value_t = Order::Fifo)]
        order: Order,
    },
    /// A minimum prime cover of a class.
    QmMinimize {
        #[arg(long)]
        tree: PathBuf,
        #[arg(long)]
        class: String,
        /// lexlow, lexhigh or seeded:<n>.
        #[arg(long, default_value = "lexlow", value_parser = parse_tie_break)]
        tie_break: TieBreak,
        #[arg(long, value_enum, default_value_t = Cost::Terms)]
        cost: Cost,
        #[arg(long, default_value_t = DEFAULT_TERM_CAP)]
        term_cap: usize,
    },
    /// Compare minimized DNFs (unsound when covers tie).
    QmEquiv {
        t1: PathBuf,
        t2: PathBuf,
        #[arg(long, default_value = "lexlow", value_parser = parse_tie_break)]
        tie_break1: TieBreak,
        #[arg(long, default_value = "lexlow", value_parser = parse_tie_break)]
        tie_break2: TieBreak,
    },
    /// Compare per-class BCFs.
    BcfEquiv {
        t1: PathBuf,
        t2: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TERM_CAP)]
        term_cap: usize,
    },
    /// Write a generated tree document.
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        /// Gadget count for worst-case.
        #[arg(long, default_value_t = 3)]
        r: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Which tree of the running (1-3) or example-fn (1-2) family.
        #[arg(long, default_value_t = 1)]
        which: usize,
        /// Boolean features of a random tree.
        #[arg(long, default_value_t = 6)]
        m: usize,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long, default_value_t = 2)]
        classes: usize,
        /// Post-process: flip the deepest leaf, or rebuild equivalently.
        #[arg(long, value_enum, default_value_t = Variant::None)]
        variant: Variant,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide equivalence by enumerating every point.
    OracleEquiv {
        t1: PathBuf,
        t2: PathBuf,
        /// Refuse feature spaces with more points.
        #[arg(long, default_value_t = DEFAULT_POINT_CAP)]
        cap: u128,
    },
    /// Exact corrected SHAP scores of an instance.
    Shap {
        #[arg(long)]
        tree: PathBuf,
        /// `(0,1)`, `{x1:0,x2:1}`, or an assignment document.
        #[arg(long)]
        point: String,
        /// Defaults to the predicted class.
        #[arg(long)]
        class: Option<String>,
    },
    /// Gadget-family blowup and scaling measurements.
    Bench {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        table: u8,
        #[arg(long, default_value_t = 3)]
        r_min: usize,
        #[arg(long, default_value_t = 8)]
        r_max: usize,
        /// Table 2 sizes, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "200,500,1000")]
        r_list: Vec<usize>,
        #[arg(long, default_value_t = DEFAULT_TERM_CAP)]
        term_cap: usize,
        /// Run cases concurrently.
        #[arg(long)]
        parallel: bool,
        /// Write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check node-local disjointness, coverage and path consistency.
    Validate {
        #[arg(long)]
        tree: PathBuf,
    },
}

pub fn parse_tie_break(s: &str) -> Result<TieBreak, String> {
    match s.to_ascii_lowercase().as_str() {
        "lexlow" => Ok(TieBreak::LexLow),
        "lexhigh" => Ok(TieBreak::LexHigh),
        other => other
            .strip_prefix("seeded:")
            .and_then(|n| n.parse().ok())
            .map(TieBreak::Seeded)
            .ok_or_else(|| format!("`{s}` is not lexlow, lexhigh or seeded:<n>")),
    }
}

struct Ctx<'a> {
    format: OutputFormat,
    jobs: usize,
    out: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn doc(&self) -> bool {
        self.format == OutputFormat::Doc
    }

    fn json(&mut self, v: &impl serde::Serialize) -> anyhow::Result<()> {
        writeln!(self.out, "{}", serde_json::to_string_pretty(v)?)?;
        Ok(())
    }

    fn pool(&self) -> Option<rayon::ThreadPool> {
        (self.jobs != 1).then(|| parallel::pool(self.jobs))
    }
}

fn load(path: &Path) -> anyhow::Result<DecisionTree> {
    Ok(format::read_tree(path)?)
}

fn write_file(path: &Path, text: &str) -> anyhow::Result<()> {
    std::fs::write(path, text).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Ok(())
}

fn verdict_code(yes: bool) -> i32 {
    if yes {
        0
    } else {
        1
    }
}

fn decision(ctx: &mut Ctx, name: &str, yes: bool) -> anyhow::Result<i32> {
    if ctx.doc() {
        ctx.json(&json!({ "format_version": format::FORMAT_VERSION, "method": name, "equivalent": yes }))?;
    } else {
        writeln!(ctx.out, "{}", if yes { "equivalent" } else { "not equivalent" })?;
    }
    Ok(verdict_code(yes))
}

fn resolve_order(schema: &Schema, names: &[String]) -> anyhow::Result<Vec<FeatureId>> {
    names.iter().map(|n| Ok(format::resolve_feature(schema, n)?)).collect()
}

fn dispatch(cmd: Command, ctx: &mut Ctx) -> anyhow::Result<i32> {
    match cmd {
        Command::CheckEquiv { t1, t2, witness_out } => {
            let (a, b) = (load(&t1)?, load(&t2)?);
            let (verdict, stats) = match ctx.pool() {
                Some(pool) => (parallel::decide(&pool, &a, &b)?, None),
                None => {
                    let (v, s) = equiv::decide_with_stats(&a, &b)?;
                    (v, Some(s))
                }
            };
            let doc = format::verdict_to_doc(&verdict, stats.as_ref());
            if let (Some(path), Some(w)) = (&witness_out, &doc.witness) {
                write_file(path, &serde_json::to_string_pretty(w)?)?;
            }
            if ctx.doc() {
                ctx.json(&doc)?;
            } else if let Some(w) = &verdict.witness {
                writeln!(
                    ctx.out,
                    "not equivalent: at {} path {} of {} predicts {}, path {} of {} predicts {}",
                    w.point,
                    w.path1,
                    t1.display(),
                    w.class1,
                    w.path2,
                    t2.display(),
                    w.class2
                )?;
                ctx.json(doc.witness.as_ref().unwrap())?;
            } else {
                writeln!(ctx.out, "equivalent")?;
            }
            Ok(verdict_code(verdict.equivalent))
        }
        Command::Explain { tree, assign, class, order } => {
            let t = load(&tree)?;
            let a = format::parse_assignment_arg(t.schema(), &assign)?;
            let order = resolve_order(t.schema(), &order)?;
            let c = t.class_id(&class)?;
            let axp = Explainer::new(&t).find_one_axp(&a, c, Some(&order))?;
            if ctx.doc() {
                ctx.json(&format::assignment_to_doc(&axp))?;
            } else {
                writeln!(ctx.out, "{axp}")?;
            }
            Ok(0)
        }
        Command::Iswaxp { tree, assign, class } => {
            let t = load(&tree)?;
            let a = format::parse_assignment_arg(t.schema(), &assign)?;
            let ex = Explainer::new(&t);
            let v = match &class {
                Some(c) => ex.is_waxp_for_class(&a, t.class_id(c)?)?,
                None => ex.is_waxp_some_class(&a)?,
            };
            let label = v.class.map(|c| t.class_label(c).to_string());
            if ctx.doc() {
                ctx.json(&json!({
                    "format_version": format::FORMAT_VERSION,
                    "is_waxp": v.is_waxp,
                    "class": label,
                    "witness_path": v.witness_path.as_ref().map(|p| p.nodes.iter().map(|n| n.0).collect::<Vec<_>>()),
                }))?;
            } else if v.is_waxp {
                writeln!(ctx.out, "WAXp for class {}", label.unwrap_or_default())?;
            } else {
                match &v.witness_path {
                    Some(p) => writeln!(
                        ctx.out,
                        "not a WAXp: consistent path {p} predicts {}",
                        t.class_label(p.class)
                    )?,
                    None => writeln!(ctx.out, "not a WAXp: consistent paths predict different classes")?,
                }
            }
            Ok(verdict_code(v.is_waxp))
        }
        Command::PredictMissing { tree, assign } => {
            let t = load(&tree)?;
            let a = format::parse_assignment_arg(t.schema(), &assign)?;
            let c = Explainer::new(&t).predict_with_missing(&a)?.map(|c| t.class_label(c).to_string());
            if ctx.doc() {
                ctx.json(&json!({ "format_version": format::FORMAT_VERSION, "class": c }))?;
            } else {
                writeln!(ctx.out, "{}", c.as_deref().unwrap_or("undetermined"))?;
            }
            Ok(0)
        }
        Command::Bcf { tree, class, term_cap, order } => {
            let t = load(&tree)?;
            let cfg = BcfConfig {
                term_cap,
                order: match order {
                    Order::Fifo => WorklistOrder::Fifo,
                    Order::Lifo => WorklistOrder::Lifo,
                },
            };
            let dnf = bcf_with(&class_terms(&t, &class)?, &cfg)?;
            if ctx.doc() {
                ctx.json(&format::dnf_to_doc(&dnf))?;
            } else {
                write!(ctx.out, "{dnf}")?;
            }
            Ok(0)
        }
        Command::QmMinimize {
            tree,
            class,
            tie_break,
            cost,
            term_cap,
        } => {
            let t = load(&tree)?;
            let primes = bcf_with(
                &class_terms(&t, &class)?,
                &BcfConfig {
                    term_cap,
                    ..BcfConfig::default()
                },
            )?;
            let cfg = MinimizeConfig {
                cost: match cost {
                    Cost::Terms => CostModel::TermsThenLiterals,
                    Cost::Literals => CostModel::LiteralsThenTerms,
                },
                ..MinimizeConfig::default()
            };
            let dnf = minimize_with(&primes, tie_break, &cfg)?;
            if ctx.doc() {
                ctx.json(&format::dnf_to_doc(&dnf))?;
            } else {
                write!(ctx.out, "{dnf}")?;
            }
            Ok(0)
        }
        Command::QmEquiv {
            t1,
            t2,
            tie_break1,
            tie_break2,
        } => {
            let yes = qm_equivalence(&load(&t1)?, &load(&t2)?, tie_break1, tie_break2)?;
            decision(ctx, "qm", yes)
        }
        Command::BcfEquiv { t1, t2, term_cap } => {
            let cfg = BcfConfig {
                term_cap,
                ..BcfConfig::default()
            };
            let yes = bcf_equivalence_with(&load(&t1)?, &load(&t2)?, &cfg)?;
            decision(ctx, "bcf", yes)
        }
        Command::OracleEquiv { t1, t2, cap } => {
            let (a, b) = (load(&t1)?, load(&t2)?);
            let yes = match ctx.pool() {
                Some(pool) => parallel::brute_equivalent(&pool, &a, &b, cap)?,
                None => brute_equivalent_with_cap(&a, &b, cap)?,
            };
            decision(ctx, "oracle", yes)
        }
        Command::Gen {
            family,
            r,
            seed,
            which,
            m,
            depth,
            classes,
            variant,
            out,
        } => {
            let tree = match family {
                Family::WorstCase => worst_case(r)?,
                Family::Running => {
                    let (a, b, c) = running_examples();
                    match which {
                        1 => a,
                        2 => b,
                        3 => c,
                        _ => bail!("--which must be 1, 2 or 3 for the running family"),
                    }
                }
                Family::ExampleFn => {
                    let (a, b) = example_function_trees();
                    match which {
                        1 => a,
                        2 => b,
                        _ => bail!("--which must be 1 or 2 for the example-fn family"),
                    }
                }
                Family::Random => {
                    if classes == 0 {
                        bail!("--classes must be at least 1");
                    }
                    let cfg = RandomTreeConfig {
                        depth,
                        classes,
                        ..RandomTreeConfig::default()
                    };
                    random_tree_with(&Schema::boolean(m), &cfg, seed)
                }
            };
            let tree = match variant {
                Variant::None => tree,
                Variant::Mutate => mutate_leaf(&tree),
                Variant::Restructure => restructure(&tree, seed)?,
            };
            let text = format::tree_to_json(&tree);
            match out {
                Some(path) => write_file(&path, &text)?,
                None => writeln!(ctx.out, "{text}")?,
            }
            Ok(0)
        }
        Command::Shap { tree, point, class } => {
            let t = load(&tree)?;
            let p = format::parse_point_arg(t.schema(), &point)?;
            let class = match class {
                Some(c) => c,
                None => {
                    let c = t.classify_point(&p).ok_or_else(|| anyhow!("no path covers {p}"))?;
                    t.class_label(c).to_string()
                }
            };
            let scores = match ctx.pool() {
                Some(pool) => parallel::corrected_shap(&pool, &t, &p, &class)?,
                None => shapley::corrected_shap(&t, &p, &class)?,
            };
            let approx = scores.to_f64();
            if ctx.doc() {
                let rows: Vec<_> = scores
                    .scores()
                    .iter()
                    .zip(&approx)
                    .enumerate()
                    .map(|(i, (r, x))| json!({ "feature": i + 1, "exact": r.to_string(), "approx": x }))
                    .collect();
                ctx.json(&json!({
                    "format_version": format::FORMAT_VERSION,
                    "class": class,
                    "point": p.to_string(),
                    "scores": rows,
                }))?;
            } else {
                for (i, (r, x)) in scores.scores().iter().zip(&approx).enumerate() {
                    writeln!(ctx.out, "{} {r} {x:.6}", t.schema().features()[i].id)?;
                }
            }
            Ok(0)
        }
        Command::Bench {
            table,
            r_min,
            r_max,
            r_list,
            term_cap,
            parallel,
            out,
        } => {
            let report = if table == 1 {
                bench::run_table1(r_min, r_max, term_cap, parallel)?
            } else {
                bench::run_table2(&r_list, parallel)?
            };
            if let Some(path) = &out {
                write_file(path, &serde_json::to_string_pretty(&report)?)?;
            }
            if ctx.doc() {
                ctx.json(&report)?;
            } else {
                write!(ctx.out, "{report}")?;
            }
            Ok(verdict_code(report.passed()))
        }
        Command::Validate { tree } => {
            let text = format::read_file(&tree)?;
            let t = format::tree_from_json(&text).with_context(|| tree.display().to_string())?;
            let report = validate(&t);
            if ctx.doc() {
                let list: Vec<String> = report.violations.iter().map(|v| format!("{v:?}")).collect();
                ctx.json(&json!({ "format_version": format::FORMAT_VERSION, "valid": report.is_ok(), "violations": list }))?;
            } else if report.is_ok() {
                writeln!(ctx.out, "valid: {} nodes, {} paths", t.node_count(), t.paths().len())?;
            } else {
                for v in &report.violations {
                    writeln!(ctx.out, "{v:?}")?;
                }
            }
            Ok(verdict_code(report.is_ok()))
        }
    }
}

fn error_kind(e: &anyhow::Error) -> &'static str {
    if let Some(f) = e.downcast_ref::<FormatError>() {
        f.kind()
    } else if e.downcast_ref::<dtequiv_core::Error>().is_some() {
        "model"
    } else {
        "error"
    }
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    let format = cli.format;
    let mut ctx = Ctx {
        format,
        jobs: cli.jobs,
        out,
    };
    match dispatch(cli.command, &mut ctx) {
        Ok(code) => code,
        Err(e) => {
            let _ = match format {
                OutputFormat::Doc => writeln!(
                    err,
                    "{}",
                    json!({ "error": { "kind": error_kind(&e), "message": format!("{e:#}") } })
                ),
                OutputFormat::Text => writeln!(err, "error: {e:#}"),
            };
            2
        }
    }
}
