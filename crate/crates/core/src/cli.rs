//! `topodeck` command-line front end.
//!
//! Exit codes: 0 success, 1 domain error (or deck collisions found by
//! `verify`), 2 unreadable or malformed input and usage errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::canon::canon;
use crate::compactify::{alexandroff, end_count, estar, finite_compactification, freudenthal, max_nstar, nstar_witness};
use crate::error::TopoError;
use crate::format::{parse_auto, to_json, to_text};
use crate::graph::{SlotRef, TopoGraph};
use crate::harness::{self, DeckCache, EnumerationBudget};
use crate::surgery::{collapse, deck, point_classes, PointClass};

/// Environment variable naming the default cache directory for `verify`.
pub const CACHE_ENV: &str = "TOPODECK_CACHE";

#[derive(Parser, Debug)]
#[command(name = "topodeck", version, about = "Topological decks and compactifications of graph-like spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the homeomorphism certificate of a graph.
    Canon {
        file: PathBuf,
        /// Also print the canonical normal form.
        #[arg(long)]
        emit: bool,
        #[arg(long)]
        json: bool,
    },
    /// Print the deck of a compact graph.
    Deck {
        file: PathBuf,
        /// One `<class> -> <certificate>` line per point class.
        #[arg(long)]
        labeled: bool,
        #[arg(long)]
        json: bool,
    },
    /// Print E(x) for every point class.
    Estar {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Print the number of ends.
    Ends { file: PathBuf },
    /// Print the largest N-star size, or an N-star witness.
    Nstar {
        file: PathBuf,
        #[arg(long, value_name = "N")]
        witness: Option<usize>,
    },
    /// Compactify a non-compact graph.
    Compactify {
        file: PathBuf,
        #[command(subcommand)]
        kind: CompactifyKind,
        #[arg(long, global = true)]
        json: bool,
    },
    /// Identify two points.
    Collapse {
        file: PathBuf,
        /// First point, `v:<id>`, `e:<id>` or `c:<k>`.
        p: String,
        q: String,
        #[arg(long)]
        json: bool,
    },
    /// Check that decks are injective on every space within a budget.
    Verify {
        #[arg(long)]
        max_edges: usize,
        #[arg(long)]
        connected: bool,
        #[arg(long, default_value_t = 3)]
        min_points: usize,
        /// Cache directory; defaults to $TOPODECK_CACHE when set.
        #[arg(long)]
        cache: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        report: ReportFormat,
    },
}

#[derive(Subcommand, Debug)]
enum CompactifyKind {
    /// One point per end.
    Freudenthal,
    /// One point for all ends.
    Alexandroff,
    /// One point per block of open slots.
    Partition {
        /// Blocks separated by `;`, slots `<edge>@<end>` separated by `,`.
        #[arg(long)]
        blocks: String,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ReportFormat {
    Text,
    Json,
}

enum CliError {
    Input(String),
    Domain(String),
}

impl From<TopoError> for CliError {
    fn from(e: TopoError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Input(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Domain(m) | CliError::Input(m) => m,
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = u8::from(e.use_stderr()) * 2;
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let mut buf = String::new();
    let code = match execute(cli.command, &mut buf, err) {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(err, "topodeck: {}", e.message());
            return e.code();
        }
    };
    if out.write_all(buf.as_bytes()).is_err() {
        return 1;
    }
    code
}

fn load(path: &Path) -> Result<TopoGraph, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    let g = parse_auto(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    g.validate()
        .map_err(|v| CliError::Input(format!("{}: {v}", path.display())))?;
    Ok(g)
}

fn render_graph(g: &TopoGraph, json: bool) -> String {
    if json {
        let mut s = to_json(g);
        s.push('\n');
        s
    } else {
        to_text(g)
    }
}

fn parse_blocks(text: &str) -> Result<Vec<Vec<SlotRef>>, CliError> {
    text.split(';')
        .map(|block| {
            block
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<SlotRef>().map_err(CliError::from))
                .collect()
        })
        .collect()
}

fn execute(command: Command, out: &mut String, err: &mut dyn Write) -> Result<u8, CliError> {
    use std::fmt::Write as _;
    match command {
        Command::Canon { file, emit, json } => {
            let cf = canon(&load(&file)?);
            if json {
                let v = json!({ "certificate": cf.certificate, "graph": cf.graph });
                writeln!(out, "{}", serde_json::to_string_pretty(&v).unwrap()).unwrap();
            } else {
                writeln!(out, "{}", cf.certificate).unwrap();
                if emit {
                    out.push_str(&to_text(&cf.graph));
                }
            }
        }
        Command::Deck { file, labeled, json } => {
            let d = deck(&load(&file)?)?;
            let mut lines: Vec<(String, String)> = d
                .labeled_cards
                .iter()
                .map(|(p, c)| (p.to_string(), c.to_string()))
                .collect();
            lines.sort();
            if json {
                let labeled: serde_json::Map<String, serde_json::Value> =
                    lines.into_iter().map(|(p, c)| (p, c.into())).collect();
                let v = json!({ "cards": d.cards, "labeled_cards": labeled });
                writeln!(out, "{}", serde_json::to_string_pretty(&v).unwrap()).unwrap();
            } else if labeled {
                for (p, c) in lines {
                    writeln!(out, "{p} -> {c}").unwrap();
                }
            } else {
                for c in &d.cards {
                    writeln!(out, "{c}").unwrap();
                }
            }
        }
        Command::Estar { file, json } => {
            let g = load(&file)?;
            let mut rows = point_classes(&g)
                .iter()
                .map(|p| Ok((p.to_string(), estar(&g, p)?)))
                .collect::<Result<Vec<_>, TopoError>>()?;
            rows.sort();
            if json {
                let map: serde_json::Map<String, serde_json::Value> = rows
                    .into_iter()
                    .map(|(p, e)| (p, e.finite().map_or(json!("inf"), |n| json!(n))))
                    .collect();
                writeln!(out, "{}", serde_json::to_string_pretty(&map).unwrap()).unwrap();
            } else {
                for (p, e) in rows {
                    writeln!(out, "{p} {e}").unwrap();
                }
            }
        }
        Command::Ends { file } => {
            writeln!(out, "{}", end_count(&load(&file)?)).unwrap();
        }
        Command::Nstar { file, witness } => {
            let g = load(&file)?;
            match witness {
                None => writeln!(out, "{}", max_nstar(&g)).unwrap(),
                Some(n) => {
                    let w = nstar_witness(&g, n)?;
                    let mut core: Vec<String> = w.core.edges.iter().map(|e| e.id.to_string()).collect();
                    core.sort();
                    write!(out, "K").unwrap();
                    for e in core {
                        write!(out, " {e}").unwrap();
                    }
                    out.push('\n');
                    for (i, part) in w.parts.iter().enumerate() {
                        write!(out, "G{}", i + 1).unwrap();
                        for t in part {
                            write!(out, " {}={}", t.slot, t.edge).unwrap();
                        }
                        out.push('\n');
                    }
                }
            }
        }
        Command::Compactify { file, kind, json } => {
            let g = load(&file)?;
            let result = match kind {
                CompactifyKind::Freudenthal => freudenthal(&g)?,
                CompactifyKind::Alexandroff => alexandroff(&g)?.0,
                CompactifyKind::Partition { blocks } => finite_compactification(&g, &parse_blocks(&blocks)?)?,
            };
            out.push_str(&render_graph(&result, json));
        }
        Command::Collapse { file, p, q, json } => {
            let g = load(&file)?;
            let p: PointClass = p.parse()?;
            let q: PointClass = q.parse()?;
            let (quotient, merged) = collapse(&g, &p, &q)?;
            if json {
                let v = json!({ "merged": merged, "graph": quotient });
                writeln!(out, "{}", serde_json::to_string_pretty(&v).unwrap()).unwrap();
            } else {
                writeln!(out, "# merged {merged}").unwrap();
                out.push_str(&to_text(&quotient));
            }
        }
        Command::Verify {
            max_edges,
            connected,
            min_points,
            cache,
            report,
        } => {
            let budget = EnumerationBudget {
                max_edges,
                connected_only: connected,
                min_points,
            };
            budget.validate().map_err(|e| CliError::Domain(e.to_string()))?;
            let cache_dir = cache.or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from));
            let result = match cache_dir {
                Some(dir) => {
                    let (mut cache, problem) = DeckCache::open_or_regenerate(&dir);
                    if let Some(problem) = problem {
                        let _ = writeln!(err, "topodeck: regenerating cache: {problem}");
                    }
                    let r = harness::verify_with_cache(&budget, &mut cache);
                    cache
                        .save()
                        .map_err(|e| CliError::Domain(format!("cannot write cache: {e}")))?;
                    r
                }
                None => harness::verify_deck_injectivity(&budget),
            }
            .map_err(|e| CliError::Domain(e.to_string()))?;
            match report {
                ReportFormat::Text => out.push_str(&harness::render_text(&result)),
                ReportFormat::Json => {
                    out.push_str(&harness::report_to_json(&result));
                    out.push('\n');
                }
            }
            return Ok(u8::from(!result.is_injective()));
        }
    }
    Ok(0)
}
