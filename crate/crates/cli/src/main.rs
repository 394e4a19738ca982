//! `dpath`: exact computations with directed paths in globular complexes.
//!
//! Exit code 0 means every check passed; 1 means a check failed or an input
//! was rejected. `--json` switches any subcommand to the stable structured
//! report schema.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use dpath_core::format::{parse_document, show_rat, Document};
use dpath_core::mooreflow::pushout_trace_check;
use dpath_core::rat::rat;
use dpath_core::report::{Origin, Report};
use dpath_core::spaces;
use dpath_core::suites;

#[derive(Parser)]
#[command(name = "dpath", version, about = "exact directed-path computations on globular complexes")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Full invariant audit of a space file.
    Validate {
        #[arg(long)]
        space: PathBuf,
        /// Reinterpret the file under this flavor instead of the declared one.
        #[arg(long)]
        flavor: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Carrier, natural length, time law and stop intervals of every path in a file.
    Naturalize {
        #[arg(long)]
        path: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Trace data of every path in a file, with the pairwise equivalences.
    Trace {
        #[arg(long)]
        path: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Normalized composition of the file's paths, in declaration order.
    Compose {
        #[arg(long)]
        path: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Search achronal slices of a cell for states over a height grid.
    SliceCheck {
        #[arg(long)]
        space: PathBuf,
        #[arg(long)]
        cell: String,
        #[arg(long, default_value_t = 100)]
        grid: u32,
        #[arg(long)]
        json: bool,
    },
    /// Enumerate traces between two states.
    Traces {
        #[arg(long)]
        space: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Compare direct and diagram-indexed trace enumeration for a cell attachment.
    PushoutCheck {
        #[arg(long)]
        space: PathBuf,
        /// File declaring the new cell (and any natpaths it needs) on top of the space.
        #[arg(long)]
        cell: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Run a named check suite.
    Suite {
        name: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (report, json) = match dispatch(cli.cmd) {
        Ok(pair) => pair,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::FAILURE;
        }
    };
    if json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.render_text());
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn load(path: &Path) -> Result<Document, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("{}: {e}", path.display()))?;
    parse_document(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_with_flavor(path: &Path, flavor: Option<&str>) -> Result<Document, String> {
    let mut text = std::fs::read_to_string(path)
        .map_err(|e| format!("{}: {e}", path.display()))?;
    match flavor {
        None => {}
        Some("G") => text = text.replace("space flavor=M", "space flavor=G"),
        Some("M") => text = text.replace("space flavor=G", "space flavor=M"),
        Some(other) => return Err(format!("unknown flavor `{other}`")),
    }
    parse_document(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn dispatch(cmd: Cmd) -> Result<(Report, bool), String> {
    match cmd {
        Cmd::Validate { space, flavor, json } => {
            let mut report = Report::new("validate", None);
            match load_with_flavor(&space, flavor.as_deref()) {
                Ok(doc) => {
                    let cx = doc.space()?;
                    report.info(
                        "space",
                        format!(
                            "flavor {} with {} states, {} cells",
                            cx.flavor(),
                            cx.states().len(),
                            cx.cells().len()
                        ),
                    );
                    for (name, _) in &doc.natpaths {
                        report.info(format!("natpath.{name}"), "valid");
                    }
                    for name in &doc.path_order {
                        report.info(format!("path.{name}"), "valid");
                    }
                }
                Err(msg) => report.check("parse", Origin::Law, false, msg),
            }
            Ok((report, json))
        }
        Cmd::Naturalize { path, json } => {
            let doc = load(&path)?;
            let cx = doc.space()?;
            let mut report = Report::new("naturalize", None);
            if doc.path_order.is_empty() {
                return Err("file declares no `path` entries".to_string());
            }
            for name in &doc.path_order {
                let p = &doc.exec_paths[name];
                let (nat, law) = p.naturalize();
                report.info(format!("{name}.carrier"), p.carrier().join(" ; "));
                report.info(format!("{name}.natural_length"), p.natural_length().to_string());
                report.info(format!("{name}.representative"), nat.to_string());
                report.info(format!("{name}.time_law"), law.to_string());
                report.info(format!("{name}.regular"), p.is_regular().to_string());
                let stops = p.stop_intervals(cx);
                if stops.is_empty() {
                    report.info(format!("{name}.stops"), "none");
                } else {
                    for (i, s) in stops.iter().enumerate() {
                        report.info(
                            format!("{name}.stop.{i}"),
                            format!(
                                "[{}, {}] at {}",
                                show_rat(&s.start),
                                show_rat(&s.end),
                                s.at
                            ),
                        );
                    }
                }
            }
            Ok((report, json))
        }
        Cmd::Trace { path, json } => {
            let doc = load(&path)?;
            let _ = doc.space()?;
            let mut report = Report::new("trace", None);
            for name in &doc.path_order {
                let p = &doc.exec_paths[name];
                let (base, stops) = p.strict_trace();
                report.info(format!("{name}.trace"), base.to_string());
                let stops: Vec<String> = stops.iter().map(show_rat).collect();
                report.info(
                    format!("{name}.stop_levels"),
                    if stops.is_empty() { "none".to_string() } else { stops.join(", ") },
                );
            }
            for (i, a) in doc.path_order.iter().enumerate() {
                for b in doc.path_order.iter().skip(i + 1) {
                    let eq = doc.exec_paths[a].is_equivalent(&doc.exec_paths[b]);
                    report.info(format!("equivalent.{a}.{b}"), eq.to_string());
                }
            }
            Ok((report, json))
        }
        Cmd::Compose { path, json } => {
            let doc = load(&path)?;
            let cx = doc.space()?;
            let mut report = Report::new("compose", None);
            let mut names = doc.path_order.iter();
            let first = names
                .next()
                .ok_or_else(|| "file declares no `path` entries".to_string())?;
            let mut acc = doc.exec_paths[first].clone();
            for name in names {
                acc = acc
                    .compose_normalized(cx, &doc.exec_paths[name])
                    .map_err(|e| e.to_string())?;
            }
            report.info("carrier", acc.carrier().join(" ; "));
            report.info("natural_length", acc.natural_length().to_string());
            report.info("result", acc.to_string());
            Ok((report, json))
        }
        Cmd::SliceCheck { space, cell, grid, json } => {
            if grid < 2 {
                return Err("grid must be at least 2".to_string());
            }
            let doc = load(&space)?;
            let cx = doc.space()?;
            let mut report = Report::new("slice-check", None);
            let mut hits = 0u32;
            for k in 1..grid {
                let h = rat(k as i64, grid as i64);
                match spaces::slice_meets_states(cx, &cell, &h).map_err(|e| e.to_string())? {
                    Some(w) => {
                        hits += 1;
                        report.info(
                            format!("h={}", show_rat(&h)),
                            format!("witness {} -> state {}", w.point, w.state),
                        );
                    }
                    None => report.info(format!("h={}", show_rat(&h)), "no witness".to_string()),
                }
            }
            report.info("witnesses", format!("{hits}/{}", grid - 1));
            Ok((report, json))
        }
        Cmd::Traces { space, from, to, budget, json } => {
            let doc = load(&space)?;
            let cx = doc.space()?;
            let mut report = Report::new("traces", None);
            let ts = spaces::all_traces(cx, &from, &to, budget).map_err(|e| e.to_string())?;
            report.info("count", ts.len().to_string());
            for (i, t) in ts.traces.iter().enumerate() {
                report.info(format!("trace.{i}"), t.to_string());
            }
            Ok((report, json))
        }
        Cmd::PushoutCheck { space, cell, from, to, budget, json } => {
            let doc = load(&space)?;
            let cx = doc.space()?;
            let cell_text = std::fs::read_to_string(&cell)
                .map_err(|e| format!("{}: {e}", cell.display()))?;
            // the cell file is parsed in the context of the base space
            let combined = format!(
                "{}{}",
                dpath_core::format::write_space(cx),
                cell_text
            );
            let full = parse_document(&combined).map_err(|e| format!("{}: {e}", cell.display()))?;
            let full_cx = full.space()?;
            if full_cx.cells().len() != cx.cells().len() + 1 {
                return Err(format!(
                    "cell file must declare exactly one new cell, found {}",
                    full_cx.cells().len() as i64 - cx.cells().len() as i64
                ));
            }
            let new_cell = full_cx.cells().last().unwrap().clone();
            let mut report = Report::new("pushout-check", None);
            let r = pushout_trace_check(cx, &new_cell, &from, &to, budget)
                .map_err(|e| e.to_string())?;
            report.check(
                "bijection",
                Origin::Oracle,
                r.bijection,
                format!(
                    "direct {} vs diagram {}{}",
                    r.method_a_count,
                    r.method_b_count,
                    r.mismatch_witness
                        .as_deref()
                        .map(|w| format!(" ({w})"))
                        .unwrap_or_default()
                ),
            );
            Ok((report, json))
        }
        Cmd::Suite { name, seed, json } => {
            let report = suites::run(&name, seed).ok_or_else(|| {
                format!(
                    "unknown suite `{name}`; available: {}",
                    suites::SUITE_NAMES.join(", ")
                )
            })?;
            Ok((report, json))
        }
    }
}
