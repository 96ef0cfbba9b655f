//! `mlcol`: build the gadget, solve instances, verify the blocking and
//! composition claims, replay the counting audit, bound fractional
//! chromatic numbers, and re-validate certificates offline.
//!
//! Exit codes: 0 = verified as expected (or SAT), 1 = claim refuted (or
//! UNSAT), 2 = inconclusive (timeout or open bounds), 3 = usage or I/O
//! error. Primary outputs are byte-deterministic for a given config; wall
//! times go to a separate stats file.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use mlcol_core::audit::{audit_all_partial, audit_chain, AuditVerdict};
use mlcol_core::color::MultiColoring;
use mlcol_core::exec::Parallelism;
use mlcol_core::fractional::chi_f_bounds;
use mlcol_core::gadget::{
    blocking_json, blocking_markdown, blocking_timing_json, build_g, build_h, check_blocking,
    check_certificate, check_composition, composition_json, composition_markdown,
    composition_timing_json, BlockingCheck, ClaimVerdict, CompositionMode, CompositionVerdict,
    GadgetH,
};
use mlcol_core::graph::Graph;
use mlcol_core::solver::{solve, Budget, SolverConfig, Verdict};
use mlcol_core::ListAssignment;

const EXIT_VERIFIED: i32 = 0;
const EXIT_REFUTED: i32 = 1;
const EXIT_INCONCLUSIVE: i32 = 2;
const EXIT_USAGE: i32 = 3;

#[derive(Parser)]
#[command(
    name = "mlcol",
    version,
    about = "Exact b-fold list-coloring laboratory",
    long_about = "Builds a 16-vertex triangle-free planar gadget and its composed variant, \
decides b-fold list colorability exactly, replays the counting audit, and emits \
machine-checkable certificates."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,

    /// Node budget for solver-backed commands (unlimited when absent).
    #[arg(long, env = "MLCOL_BUDGET_NODES", global = true)]
    budget_nodes: Option<u64>,

    /// Wall-clock budget in milliseconds for solver-backed commands.
    #[arg(long, env = "MLCOL_BUDGET_MS", global = true)]
    budget_ms: Option<u64>,

    /// Execution strategy; `par` degrades to sequential in builds without
    /// the parallel feature.
    #[arg(long, value_enum, global = true)]
    parallel: Option<ParArg>,

    /// Primary output file (stdout when absent). Timing stats are written
    /// next to it as <out>.stats.json.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Timing stats file when --out is not set (stats are dropped if
    /// neither is given).
    #[arg(long, global = true)]
    stats: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ParArg {
    Seq,
    Par,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Md,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Representative,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build the gadget (`h`) or its materialized composition (`g`).
    Gadget {
        /// Which construction: h or g.
        which: String,
        #[arg(long, default_value_t = 1)]
        m: u32,
        /// Replace the default E-block size ceil(m/17)-1.
        #[arg(long)]
        e_override: Option<u32>,
        /// Refuse to materialize the composition beyond this many copies.
        #[arg(long, default_value_t = 10_000)]
        cap: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Decide b-fold colorability of a graph + list-assignment instance.
    Solve {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        lists: PathBuf,
        #[arg(long)]
        b: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Check one of the two named claims and emit a certificate.
    Verify {
        #[command(subcommand)]
        claim: Claim,
    },
    /// Replay the counting chain on a coloring of the gadget.
    Audit {
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long)]
        e_override: Option<u32>,
        /// Coloring file to audit (JSON with "b" and "phi").
        #[arg(long, conflicts_with = "enumerate")]
        coloring: Option<PathBuf>,
        /// Audit every valid coloring of the gadget minus w.
        #[arg(long)]
        enumerate: bool,
        /// Enumeration size cap.
        #[arg(long, default_value_t = 10_000_000)]
        cap: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Bound the fractional chromatic number of a graph.
    Chif {
        #[arg(long)]
        graph: PathBuf,
        /// Probe every fold size up to this.
        #[arg(long, default_value_t = 3)]
        max_b: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run the blocking check for every m in a range.
    Sweep {
        #[arg(long, default_value_t = 1)]
        m_from: u32,
        #[arg(long, default_value_t = 2)]
        m_to: u32,
        #[arg(long, value_enum, default_value_t = Format::Md)]
        format: Format,
    },
    /// Write instance files (graph, lists, embedding) for external tools.
    Export {
        /// Which construction: h or g.
        which: String,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long)]
        e_override: Option<u32>,
        #[arg(long)]
        out_dir: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        cap: u64,
    },
    /// Re-validate a certificate offline (checker only, no solver).
    CheckCertificate {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Md)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum Claim {
    /// Standard-E instance blocked; one extra E color opens it.
    Lemma1 {
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Every anchor pair of the composition is blocked.
    Theorem1 {
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
        mode: ModeArg,
        /// Pair-count cap for exhaustive mode and relabeling records.
        #[arg(long, default_value_t = 1_000)]
        cap: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(EXIT_USAGE);
        }
    }
}

/// Primary/stats output plumbing shared by every subcommand.
struct Emitter {
    out: Option<PathBuf>,
    stats: Option<PathBuf>,
}

impl Emitter {
    fn primary(&self, text: &str) -> Result<()> {
        match &self.out {
            Some(path) => {
                if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                    fs::create_dir_all(dir)
                        .with_context(|| format!("creating {}", dir.display()))?;
                }
                fs::write(path, text).with_context(|| format!("writing {}", path.display()))
            }
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }

    fn stats(&self, value: &Value) -> Result<()> {
        let path = match (&self.out, &self.stats) {
            (_, Some(explicit)) => explicit.clone(),
            (Some(out), None) => out.with_extension("stats.json"),
            (None, None) => return Ok(()),
        };
        fs::write(&path, pretty(value)).with_context(|| format!("writing {}", path.display()))
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable value");
    s.push('\n');
    s
}

fn run(cli: Cli) -> Result<i32> {
    let budget = Budget {
        max_nodes: cli.budget_nodes,
        max_millis: cli.budget_ms,
    };
    let parallel = cli.parallel.map(|p| match p {
        ParArg::Seq => Parallelism::Sequential,
        ParArg::Par => Parallelism::Parallel,
    });
    let config = SolverConfig {
        budget,
        cuts: Vec::new(),
        parallel,
    };
    let emit = Emitter {
        out: cli.out.clone(),
        stats: cli.stats.clone(),
    };

    match cli.cmd {
        Cmd::Gadget {
            which,
            m,
            e_override,
            cap,
            format,
        } => cmd_gadget(&which, m, e_override, cap, format, &emit),
        Cmd::Solve {
            graph,
            lists,
            b,
            format,
        } => cmd_solve(&graph, &lists, b, &config, format, &emit),
        Cmd::Verify { claim } => match claim {
            Claim::Lemma1 { m, format } => cmd_lemma1(m, &config, format, &emit),
            Claim::Theorem1 {
                m,
                mode,
                cap,
                format,
            } => cmd_theorem1(m, mode, cap, &config, format, &emit),
        },
        Cmd::Audit {
            m,
            e_override,
            coloring,
            enumerate,
            cap,
            format,
        } => cmd_audit(m, e_override, coloring.as_deref(), enumerate, cap, format, &emit),
        Cmd::Chif {
            graph,
            max_b,
            format,
        } => cmd_chif(&graph, max_b, budget, format, &emit),
        Cmd::Sweep {
            m_from,
            m_to,
            format,
        } => cmd_sweep(m_from, m_to, &config, format, &emit),
        Cmd::Export {
            which,
            m,
            e_override,
            out_dir,
            cap,
        } => cmd_export(&which, m, e_override, &out_dir, cap),
        Cmd::CheckCertificate { file, format } => cmd_check_certificate(&file, format, &emit),
    }
}

fn parse_which(which: &str) -> Result<char> {
    match which.to_ascii_lowercase().as_str() {
        "h" => Ok('h'),
        "g" => Ok('g'),
        other => bail!("unknown construction {other:?}; expected h or g"),
    }
}

fn reject_format(format: Format, allowed: &[Format], what: &str) -> Result<()> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        bail!("this format is not supported for {what}")
    }
}

fn graph_json_value(g: &Graph) -> Value {
    serde_json::from_str(&g.to_json()).expect("graph serialization round-trips")
}

fn lists_json_value(lists: &ListAssignment, g: &Graph) -> Value {
    serde_json::from_str(&lists.to_json(g)).expect("list serialization round-trips")
}

fn gadget_h_doc(h: &GadgetH) -> Value {
    json!({
        "kind": "gadget-h",
        "m": h.params.m,
        "e_size": h.params.e_size,
        "list_size": h.params.list_size(),
        "face_count": h.face_count,
        "graph": graph_json_value(&h.graph),
        "embedding": serde_json::to_value(&h.embedding).expect("embedding serializes"),
        "lists": lists_json_value(&h.lists, &h.graph),
    })
}

fn cmd_gadget(
    which: &str,
    m: u32,
    e_override: Option<u32>,
    cap: u64,
    format: Format,
    emit: &Emitter,
) -> Result<i32> {
    match parse_which(which)? {
        'h' => {
            reject_format(format, &[Format::Json, Format::Md, Format::Dot], "gadget h")?;
            let h = build_h(m, e_override)?;
            let text = match format {
                Format::Json => pretty(&gadget_h_doc(&h)),
                Format::Dot => h.graph.to_dot(),
                Format::Md => {
                    let (degeneracy, _) = h.graph.degeneracy_order();
                    format!(
                        "# Gadget (m = {}, e = {})\n\n\
                         | property | value |\n|---|---|\n\
                         | vertices | {} |\n| edges | {} |\n| girth | {} |\n\
                         | degeneracy | {} |\n| faces | {} |\n\
                         | anchor list size | {} |\n| other list size | {} |\n",
                        h.params.m,
                        h.params.e_size,
                        h.graph.n(),
                        h.graph.edge_count(),
                        h.graph.girth().map_or("-".into(), |g| g.to_string()),
                        degeneracy,
                        h.face_count,
                        h.params.m,
                        h.params.list_size(),
                    )
                }
                Format::Csv => unreachable!("rejected above"),
            };
            emit.primary(&text)?;
            Ok(EXIT_VERIFIED)
        }
        'g' => {
            reject_format(format, &[Format::Json, Format::Md, Format::Dot], "gadget g")?;
            if e_override.is_some() {
                bail!("the composition is defined at the standard E size; drop --e-override");
            }
            let g = build_g(m, true, cap)?;
            let ex = g.explicit.as_ref().expect("explicit requested");
            let text = match format {
                Format::Json => pretty(&json!({
                    "kind": "gadget-g",
                    "m": g.params.m,
                    "e_size": g.params.e_size,
                    "p": g.p.to_string(),
                    "copies": g.copy_count.to_string(),
                    "graph": graph_json_value(&ex.graph),
                    "lists": lists_json_value(&ex.lists, &ex.graph),
                    "pairs": ex.pairs.iter()
                        .map(|(a, b)| json!([a, b]))
                        .collect::<Vec<_>>(),
                })),
                Format::Dot => ex.graph.to_dot(),
                Format::Md => format!(
                    "# Composed gadget (m = {})\n\n\
                     | property | value |\n|---|---|\n\
                     | anchor pool size | {} |\n| p | {} |\n| copies | {} |\n\
                     | vertices | {} |\n| edges | {} |\n| girth | {} |\n",
                    g.params.m,
                    g.params.list_size(),
                    g.p,
                    g.copy_count,
                    ex.graph.n(),
                    ex.graph.edge_count(),
                    ex.graph.girth().map_or("-".into(), |x| x.to_string()),
                ),
                Format::Csv => unreachable!("rejected above"),
            };
            emit.primary(&text)?;
            Ok(EXIT_VERIFIED)
        }
        _ => unreachable!(),
    }
}

fn cmd_solve(
    graph_path: &Path,
    lists_path: &Path,
    b: u32,
    config: &SolverConfig,
    format: Format,
    emit: &Emitter,
) -> Result<i32> {
    reject_format(format, &[Format::Json, Format::Md], "solve")?;
    let graph_text = fs::read_to_string(graph_path)
        .with_context(|| format!("reading {}", graph_path.display()))?;
    let g = Graph::from_json(&graph_text)?;
    let lists_text = fs::read_to_string(lists_path)
        .with_context(|| format!("reading {}", lists_path.display()))?;
    let lists = ListAssignment::from_json(&lists_text, &g)?;
    lists.complete_for(&g)?;

    let outcome = solve(&g, &lists, b, config)?;
    let text = match format {
        Format::Json => pretty(&outcome.to_json_value(&g, lists.universe())),
        Format::Md => format!(
            "| verdict | nodes |\n|---|---|\n| {} | {} |\n",
            outcome.verdict.name(),
            outcome.stats.nodes
        ),
        _ => unreachable!(),
    };
    emit.primary(&text)?;
    emit.stats(&outcome.timing_json_value())?;
    Ok(match outcome.verdict {
        Verdict::Sat(_) => EXIT_VERIFIED,
        Verdict::Unsat => EXIT_REFUTED,
        Verdict::Timeout => EXIT_INCONCLUSIVE,
    })
}

fn blocking_csv(check: &BlockingCheck) -> String {
    let mut s = String::from("leg,e,list_size,verdict,nodes\n");
    for (leg, e, outcome) in [
        ("blocked", check.blocked_e, &check.blocked_outcome),
        ("open", check.open_e, &check.open_outcome),
    ] {
        s.push_str(&format!(
            "{},{},{},{},{}\n",
            leg,
            e,
            3 * check.m + e,
            outcome.verdict.name(),
            outcome.stats.nodes
        ));
    }
    s
}

fn cmd_lemma1(m: u32, config: &SolverConfig, format: Format, emit: &Emitter) -> Result<i32> {
    reject_format(format, &[Format::Json, Format::Md, Format::Csv], "verify lemma1")?;
    let check = check_blocking(m, config)?;
    let text = match format {
        Format::Json => pretty(&blocking_json(&check)?),
        Format::Md => blocking_markdown(&check),
        Format::Csv => blocking_csv(&check),
        _ => unreachable!(),
    };
    emit.primary(&text)?;
    emit.stats(&blocking_timing_json(&check))?;
    Ok(match check.verdict {
        ClaimVerdict::Upheld => EXIT_VERIFIED,
        ClaimVerdict::Refuted => EXIT_REFUTED,
        ClaimVerdict::Inconclusive => EXIT_INCONCLUSIVE,
    })
}

fn cmd_theorem1(
    m: u32,
    mode: ModeArg,
    cap: u64,
    config: &SolverConfig,
    format: Format,
    emit: &Emitter,
) -> Result<i32> {
    reject_format(
        format,
        &[Format::Json, Format::Md, Format::Csv],
        "verify theorem1",
    )?;
    let mode = match mode {
        ModeArg::Exhaustive => CompositionMode::Exhaustive,
        ModeArg::Representative => CompositionMode::Representative,
    };
    let cert = check_composition(m, mode, cap, config)?;
    let text = match format {
        Format::Json => pretty(&composition_json(&cert)?),
        Format::Md => composition_markdown(&cert),
        Format::Csv => {
            let mut s = String::from("pair,phi_u,phi_v,verdict,nodes\n");
            for (i, rec) in cert.pairs.iter().enumerate() {
                let join = |xs: &[u32]| {
                    xs.iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join("|")
                };
                s.push_str(&format!(
                    "{},{},{},{},{}\n",
                    i,
                    join(&rec.phi_u),
                    join(&rec.phi_v),
                    rec.outcome.verdict.name(),
                    rec.outcome.stats.nodes
                ));
            }
            s
        }
        _ => unreachable!(),
    };
    emit.primary(&text)?;
    emit.stats(&composition_timing_json(&cert))?;
    Ok(match cert.verdict {
        CompositionVerdict::Blocked => EXIT_VERIFIED,
        CompositionVerdict::Refuted { .. } => EXIT_REFUTED,
        CompositionVerdict::Inconclusive => EXIT_INCONCLUSIVE,
    })
}

fn cmd_audit(
    m: u32,
    e_override: Option<u32>,
    coloring: Option<&Path>,
    enumerate: bool,
    cap: u64,
    format: Format,
    emit: &Emitter,
) -> Result<i32> {
    let h = build_h(m, e_override)?;
    match (coloring, enumerate) {
        (Some(path), false) => {
            reject_format(format, &[Format::Json, Format::Md, Format::Csv], "audit")?;
            let text = fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            let value: Value = serde_json::from_str(&text).context("coloring must be JSON")?;
            let phi = MultiColoring::from_json_value(&value, &h.graph, h.universe())?;
            let report = audit_chain(&h, &phi)?;
            let out = match format {
                Format::Json => pretty(&report.to_json_value(&h)),
                Format::Md => report.markdown_table(),
                Format::Csv => {
                    let mut s = String::from("check,lhs,rel,rhs,pass\n");
                    for c in &report.checks {
                        s.push_str(&format!(
                            "{},{},{},{},{}\n",
                            c.name, c.lhs, c.rel, c.rhs, c.pass
                        ));
                    }
                    s
                }
                _ => unreachable!(),
            };
            emit.primary(&out)?;
            Ok(match report.verdict {
                AuditVerdict::Consistent | AuditVerdict::WBlocked { .. } => EXIT_VERIFIED,
                AuditVerdict::WOpen { .. } | AuditVerdict::BoundViolated { .. } => EXIT_REFUTED,
            })
        }
        (None, true) => {
            reject_format(format, &[Format::Json, Format::Md], "audit --enumerate")?;
            let report = audit_all_partial(&h, cap)?;
            let out = match format {
                Format::Json => pretty(&report.to_json_value()),
                Format::Md => format!(
                    "# Exhaustive partial audit (m = {}, e = {})\n\n\
                     | colorings | blocked | open | bound failures | max colors open at w |\n\
                     |---|---|---|---|---|\n| {} | {} | {} | {} | {} |\n\n\
                     All blocked: **{}**\n",
                    h.params.m,
                    h.params.e_size,
                    report.total,
                    report.blocked,
                    report.open,
                    report.bound_failures,
                    report.max_available_w,
                    report.all_blocked(),
                ),
                _ => unreachable!(),
            };
            emit.primary(&out)?;
            Ok(if report.all_blocked() {
                EXIT_VERIFIED
            } else {
                EXIT_REFUTED
            })
        }
        (None, false) => bail!("audit needs --coloring FILE or --enumerate"),
        (Some(_), true) => unreachable!("clap rejects the conflict"),
    }
}

fn cmd_chif(
    graph_path: &Path,
    max_b: u32,
    budget: Budget,
    format: Format,
    emit: &Emitter,
) -> Result<i32> {
    reject_format(format, &[Format::Json, Format::Md, Format::Csv], "chif")?;
    let text = fs::read_to_string(graph_path)
        .with_context(|| format!("reading {}", graph_path.display()))?;
    let g = Graph::from_json(&text)?;
    let bounds = chi_f_bounds(&g, max_b, budget);
    let out = match format {
        Format::Json => pretty(&bounds.to_json_value()),
        Format::Md => {
            let show = |r: Option<mlcol_core::color::Rat>| {
                r.map_or("-".to_string(), |x| x.to_string())
            };
            format!(
                "| n | alpha | lower | upper | exact | open |\n|---|---|---|---|---|---|\n\
                 | {} | {} | {} | {} | {} | {} |\n",
                bounds.n,
                bounds.alpha.map_or("-".into(), |a| a.to_string()),
                show(bounds.lower),
                show(bounds.upper),
                show(bounds.exact()),
                bounds.open,
            )
        }
        Format::Csv => {
            let mut s = String::from("a,b,verdict,nodes\n");
            for p in &bounds.probes {
                s.push_str(&format!("{},{},{},{}\n", p.a, p.b, p.verdict, p.nodes));
            }
            s
        }
        _ => unreachable!(),
    };
    emit.primary(&out)?;
    Ok(if bounds.open {
        EXIT_INCONCLUSIVE
    } else {
        EXIT_VERIFIED
    })
}

fn cmd_sweep(
    m_from: u32,
    m_to: u32,
    config: &SolverConfig,
    format: Format,
    emit: &Emitter,
) -> Result<i32> {
    reject_format(format, &[Format::Json, Format::Md, Format::Csv], "sweep")?;
    let mut rows = Vec::new();
    for m in m_from..=m_to {
        rows.push(check_blocking(m, config)?);
    }
    let out = match format {
        Format::Md => {
            let mut s = String::from(
                "| m | e | list size | blocked leg | open leg | claim |\n|---|---|---|---|---|---|\n",
            );
            for c in &rows {
                s.push_str(&format!(
                    "| {} | {} | {} | {} | {} | {} |\n",
                    c.m,
                    c.blocked_e,
                    3 * c.m + c.blocked_e,
                    c.blocked_outcome.verdict.name(),
                    c.open_outcome.verdict.name(),
                    c.verdict.name(),
                ));
            }
            s
        }
        Format::Csv => {
            let mut s = String::from("m,e,list_size,blocked_verdict,open_verdict,claim\n");
            for c in &rows {
                s.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    c.m,
                    c.blocked_e,
                    3 * c.m + c.blocked_e,
                    c.blocked_outcome.verdict.name(),
                    c.open_outcome.verdict.name(),
                    c.verdict.name(),
                ));
            }
            s
        }
        Format::Json => pretty(&Value::Array(
            rows.iter()
                .map(|c| {
                    json!({
                        "m": c.m,
                        "e": c.blocked_e,
                        "list_size": 3 * c.m + c.blocked_e,
                        "blocked_verdict": c.blocked_outcome.verdict.name(),
                        "open_verdict": c.open_outcome.verdict.name(),
                        "claim": c.verdict.name(),
                    })
                })
                .collect(),
        )),
        _ => unreachable!(),
    };
    emit.primary(&out)?;
    emit.stats(&json!({
        "rows": rows.iter().map(|c| json!({
            "m": c.m,
            "blocked": c.blocked_outcome.timing_json_value(),
            "open": c.open_outcome.timing_json_value(),
        })).collect::<Vec<_>>(),
    }))?;
    let code = if rows
        .iter()
        .any(|c| c.verdict == ClaimVerdict::Refuted)
    {
        EXIT_REFUTED
    } else if rows
        .iter()
        .any(|c| c.verdict == ClaimVerdict::Inconclusive)
    {
        EXIT_INCONCLUSIVE
    } else {
        EXIT_VERIFIED
    };
    Ok(code)
}

fn cmd_export(
    which: &str,
    m: u32,
    e_override: Option<u32>,
    out_dir: &Path,
    cap: u64,
) -> Result<i32> {
    fs::create_dir_all(out_dir).with_context(|| format!("creating {}", out_dir.display()))?;
    let mut written = Vec::new();
    let mut put = |name: String, content: String| -> Result<()> {
        let path = out_dir.join(&name);
        fs::write(&path, content).with_context(|| format!("writing {}", path.display()))?;
        written.push(name);
        Ok(())
    };
    match parse_which(which)? {
        'h' => {
            let h = build_h(m, e_override)?;
            let stem = format!("h_m{}_e{}", h.params.m, h.params.e_size);
            put(format!("{stem}.graph.json"), h.graph.to_json())?;
            put(format!("{stem}.lists.json"), h.lists.to_json(&h.graph))?;
            put(
                format!("{stem}.embedding.json"),
                pretty(&serde_json::to_value(&h.embedding)?),
            )?;
            put(format!("{stem}.graph.dot"), h.graph.to_dot())?;
        }
        'g' => {
            if e_override.is_some() {
                bail!("the composition is defined at the standard E size; drop --e-override");
            }
            let g = build_g(m, true, cap)?;
            let ex = g.explicit.as_ref().expect("explicit requested");
            let stem = format!("g_m{}", g.params.m);
            put(format!("{stem}.graph.json"), ex.graph.to_json())?;
            put(format!("{stem}.lists.json"), ex.lists.to_json(&ex.graph))?;
            put(
                format!("{stem}.pairs.json"),
                pretty(&Value::Array(
                    ex.pairs.iter().map(|(a, b)| json!([a, b])).collect(),
                )),
            )?;
            put(format!("{stem}.graph.dot"), ex.graph.to_dot())?;
        }
        _ => unreachable!(),
    }
    for name in &written {
        println!("{}", out_dir.join(name).display());
    }
    Ok(EXIT_VERIFIED)
}

fn cmd_check_certificate(file: &Path, format: Format, emit: &Emitter) -> Result<i32> {
    reject_format(format, &[Format::Json, Format::Md], "check-certificate")?;
    let text =
        fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    let report = check_certificate(&text).map_err(|e| anyhow!("{e}"))?;
    let out = match format {
        Format::Json => pretty(&report.to_json_value()),
        Format::Md => report.render_text(),
        _ => unreachable!(),
    };
    emit.primary(&out)?;
    if !report.ok() {
        return Ok(EXIT_REFUTED);
    }
    Ok(match report.recorded_verdict.as_str() {
        "refuted" => EXIT_REFUTED,
        "inconclusive" => EXIT_INCONCLUSIVE,
        _ => EXIT_VERIFIED,
    })
}
