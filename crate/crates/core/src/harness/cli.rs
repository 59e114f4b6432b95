use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use super::batch::run_batch;
use super::remark::{expected_exceptions, run_remark_check, RemarkReport};
use super::table::{load_table, Bundled, Table};
use crate::certify::{certify_essential, classify, decide_split, decide_trivial, Undecided};
use crate::diagram::{parse_dt, parse_notation, parse_pd, LinkDiagram};
use crate::state::StateSpec;
use crate::stategraph::{find_certifying_states, SearchOptions, SearchTier};
use crate::surface::build_state_surface;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "statesurf", version, about = "State surfaces of link diagrams")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Input {
    /// Planar diagram code, e.g. "X(1,4,2,5);X(3,6,4,1);X(5,2,6,3)"
    #[arg(long)]
    pd: Option<String>,
    /// DT code, e.g. "DT: 4 6 2"
    #[arg(long)]
    dt: Option<String>,
    /// Either notation
    #[arg(long)]
    diagram: Option<String>,
    /// Table file to take --entry from
    #[arg(long)]
    table: Option<PathBuf>,
    /// Bundled table to take --entry from: rolfsen10, ht11 or links7
    #[arg(long)]
    bundled: Option<String>,
    #[arg(long)]
    entry: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Certificate for one diagram and one state
    Analyze {
        #[command(flatten)]
        input: Input,
        /// plus, minus, seifert, checkerboard-black, checkerboard-white or a +/- string
        #[arg(long, default_value = "seifert", allow_hyphen_values = true)]
        state: String,
        /// Include the ribbon surface in JSON output
        #[arg(long)]
        surface: bool,
    },
    /// Adequate homogeneous states
    Search {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        exhaustive: bool,
        #[arg(long)]
        exclude_seifert: bool,
        #[arg(long, default_value_t = 24)]
        max_crossings: usize,
    },
    /// Diagram class tags and certifying canonical states
    Classify {
        #[command(flatten)]
        input: Input,
    },
    /// Decide triviality and splitting
    Decide {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Kind::Both)]
        kind: Kind,
        #[arg(long, default_value_t = 24)]
        max_crossings: usize,
    },
    /// Classify every entry of a table
    Batch {
        #[arg(long)]
        table: Option<PathBuf>,
        #[arg(long, default_value = "rolfsen10")]
        bundled: String,
    },
    /// Which entries have neither the positive nor the negative state certifying apart
    /// from the Seifert state
    RemarkCheck {
        /// rolfsen10, ht11 or links7
        which: String,
        /// Use this table file instead of the bundled one
        #[arg(long)]
        table: Option<PathBuf>,
        /// Include per-entry results
        #[arg(long)]
        full: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Trivial,
    Split,
    Both,
}

struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        message: message.into(),
    }
}

fn table_from(path: Option<&PathBuf>, bundled: Option<&str>) -> Result<(Table, String), Failure> {
    match (path, bundled) {
        (Some(p), _) => load_table(p)
            .map(|t| (t, p.display().to_string()))
            .map_err(|e| usage(format!("cannot read {}: {e}", p.display()))),
        (None, Some(b)) => Bundled::from_name(b)
            .map(|t| (t.load(), b.to_string()))
            .ok_or_else(|| usage(format!("unknown bundled table '{b}'"))),
        (None, None) => Err(usage("no table given")),
    }
}

impl Input {
    fn resolve(&self) -> Result<LinkDiagram, Failure> {
        let given = [&self.pd, &self.dt, &self.diagram]
            .iter()
            .filter(|x| x.is_some())
            .count();
        let from_table = self.table.is_some() || self.bundled.is_some();
        if given + from_table as usize != 1 {
            return Err(usage(
                "give exactly one of --pd, --dt, --diagram, or --table/--bundled with --entry",
            ));
        }
        let parsed = if let Some(t) = &self.pd {
            parse_pd(t)
        } else if let Some(t) = &self.dt {
            parse_dt(t)
        } else if let Some(t) = &self.diagram {
            parse_notation(t)
        } else {
            let (table, _) = table_from(self.table.as_ref(), self.bundled.as_deref())?;
            let name = self
                .entry
                .as_deref()
                .ok_or_else(|| usage("--entry is required with a table"))?;
            return table
                .get(name)
                .map(|e| e.diagram.clone())
                .ok_or_else(|| usage(format!("no entry named {name}")));
        };
        parsed.map_err(|e| usage(format!("cannot parse diagram: {e}")))
    }
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).unwrap() + "\n"
}

fn csv_text(header: &[&str], rows: Vec<Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).unwrap();
    for r in rows {
        w.write_record(&r).unwrap();
    }
    String::from_utf8(w.into_inner().unwrap()).unwrap()
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Runs the command line `args` (program name first) and returns what would be printed.
pub fn run<I, T>(args: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                CliOutput {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                CliOutput {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match execute(&cli) {
        Ok(stdout) => CliOutput {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Err(Failure { code: 2, message }) => CliOutput {
            code: 2,
            stdout: message + "\n",
            stderr: String::new(),
        },
        Err(Failure { code, message }) => CliOutput {
            code,
            stdout: String::new(),
            stderr: message + "\n",
        },
    }
}

fn execute(cli: &Cli) -> Result<String, Failure> {
    let format = cli.format;
    match &cli.command {
        Command::Analyze {
            input,
            state,
            surface,
        } => {
            let d = input.resolve()?;
            let spec: StateSpec = state.parse().map_err(|e| usage(format!("{e}")))?;
            let st = spec.resolve(&d).map_err(|e| usage(format!("{e}")))?;
            let cert = certify_essential(&d, &st).map_err(|e| Failure {
                code: 1,
                message: e.to_string(),
            })?;
            Ok(match format {
                Format::Json if *surface => {
                    let ribbon = build_state_surface(&d, &st).unwrap();
                    json(&serde_json::json!({ "certificate": cert, "surface": ribbon }))
                }
                Format::Json => json(&cert),
                Format::Csv => csv_text(
                    &[
                        "diagram",
                        "state",
                        "adequate",
                        "homogeneous",
                        "blocks",
                        "chi",
                        "orientable",
                        "boundary",
                        "genus_or_crosscap",
                        "essential",
                        "neuwirth",
                    ],
                    vec![vec![
                        cert.diagram.clone(),
                        cert.state.to_string(),
                        cert.adequate.to_string(),
                        cert.homogeneous.to_string(),
                        cert.blocks.len().to_string(),
                        cert.surface.chi.to_string(),
                        cert.surface.orientable.to_string(),
                        cert.surface.boundary.to_string(),
                        cert.surface.genus_or_crosscap.to_string(),
                        cert.essential.to_string(),
                        opt(cert.neuwirth),
                    ]],
                ),
                Format::Text => {
                    let mut s = format!("diagram   {}\nstate     {}\n", cert.diagram, cert.state);
                    s += &format!(
                        "adequate  {}{}\nhomogeneous {}\n",
                        cert.adequate,
                        if cert.self_loops.is_empty() {
                            String::new()
                        } else {
                            format!(" (loops at crossings {:?})", cert.self_loops)
                        },
                        cert.homogeneous
                    );
                    for (k, b) in cert.blocks.iter().enumerate() {
                        s += &format!(
                            "block {k}  edges {:?} sign {} chi {} {}\n",
                            b.edges,
                            serde_json::to_value(b.sign).unwrap().as_str().unwrap(),
                            b.chi,
                            if b.orientable { "orientable" } else { "nonorientable" }
                        );
                    }
                    s += &format!(
                        "surface   chi {} boundary {} {} {} {}\n",
                        cert.surface.chi,
                        cert.surface.boundary,
                        if cert.surface.orientable {
                            "orientable genus"
                        } else {
                            "nonorientable crosscaps"
                        },
                        cert.surface.genus_or_crosscap,
                        if cert.surface.connected { "" } else { "(disconnected)" }
                    );
                    s += &format!("essential {}\n", cert.essential);
                    if let Some(n) = cert.neuwirth {
                        s += &format!("neuwirth  {n}\n");
                    }
                    s
                }
            })
        }
        Command::Search {
            input,
            exhaustive,
            exclude_seifert,
            max_crossings,
        } => {
            let d = input.resolve()?;
            let opts = SearchOptions {
                family: if *exhaustive {
                    SearchTier::Exhaustive
                } else {
                    SearchTier::Canonical
                },
                exclude_seifert: *exclude_seifert,
                max_crossings: *max_crossings,
                ..SearchOptions::default()
            };
            let found = find_certifying_states(&d, &opts).map_err(|e| usage(e.to_string()))?;
            Ok(match format {
                Format::Json => json(&found),
                Format::Csv => csv_text(
                    &["state", "names", "tier"],
                    found
                        .iter()
                        .map(|c| {
                            vec![
                                c.state.to_string(),
                                c.names.join(" "),
                                serde_json::to_value(c.tier).unwrap().as_str().unwrap().into(),
                            ]
                        })
                        .collect(),
                ),
                Format::Text => {
                    let mut s = format!("{} certifying state(s)\n", found.len());
                    for c in &found {
                        s += &format!("{} {}\n", c.state, c.names.join(" "));
                    }
                    s
                }
            })
        }
        Command::Classify { input } => {
            let d = input.resolve()?;
            let c = classify(&d);
            Ok(match format {
                Format::Json => json(&c),
                Format::Csv => csv_text(
                    &["diagram", "crossings", "components", "tags", "certifying"],
                    vec![vec![
                        c.diagram.clone(),
                        c.crossings.to_string(),
                        c.components.to_string(),
                        c.tags().join(" "),
                        c.certifying
                            .iter()
                            .map(|s| s.state.to_string())
                            .collect::<Vec<_>>()
                            .join(" "),
                    ]],
                ),
                Format::Text => {
                    let mut s = format!("{}: {}\n", c.diagram, c.tags().join(", "));
                    for cs in &c.certifying {
                        s += &format!("certifying {} ({})\n", cs.state, cs.names.join(", "));
                    }
                    s
                }
            })
        }
        Command::Decide {
            input,
            kind,
            max_crossings,
        } => {
            let d = input.resolve()?;
            let opts = SearchOptions {
                max_crossings: *max_crossings,
                ..SearchOptions::default()
            };
            let mut results = Vec::new();
            if matches!(kind, Kind::Trivial | Kind::Both) {
                results.push(("trivial", decide_trivial(&d, &opts)));
            }
            if matches!(kind, Kind::Split | Kind::Both) {
                results.push(("split", decide_split(&d, &opts)));
            }
            let undecided: Vec<&Undecided> =
                results.iter().filter_map(|(_, r)| r.as_ref().err()).collect();
            let out = match format {
                Format::Json => {
                    let mut map = serde_json::Map::new();
                    for (k, r) in &results {
                        map.insert(
                            k.to_string(),
                            match r {
                                Ok(dec) => serde_json::json!({"decided": dec}),
                                Err(u) => serde_json::json!({"undecided": u, "message": u.to_string()}),
                            },
                        );
                    }
                    json(&map)
                }
                Format::Csv => csv_text(
                    &["question", "verdict", "state", "search_tier", "reason"],
                    results
                        .iter()
                        .map(|(k, r)| match r {
                            Ok(dec) => vec![
                                k.to_string(),
                                serde_json::to_value(dec.verdict).unwrap().as_str().unwrap().into(),
                                dec.certificates
                                    .iter()
                                    .map(|c| c.state.to_string())
                                    .collect::<Vec<_>>()
                                    .join(" "),
                                opt(dec.certificates[0]
                                    .search_tier
                                    .map(|t| serde_json::to_value(t).unwrap().as_str().unwrap().to_string())),
                                String::new(),
                            ],
                            Err(u) => vec![
                                k.to_string(),
                                "undecided".into(),
                                String::new(),
                                String::new(),
                                u.to_string(),
                            ],
                        })
                        .collect(),
                ),
                Format::Text => results
                    .iter()
                    .map(|(k, r)| match r {
                        Ok(dec) => format!(
                            "{k}: {} (state {})\n",
                            serde_json::to_value(dec.verdict).unwrap().as_str().unwrap(),
                            dec.certificates
                                .iter()
                                .map(|c| match c.state.to_string() {
                                    s if s.is_empty() => "(empty)".to_string(),
                                    s => s,
                                })
                                .collect::<Vec<_>>()
                                .join(" | ")
                        ),
                        Err(u) => format!("{k}: undecided, {u}\n"),
                    })
                    .collect(),
            };
            if undecided.is_empty() {
                Ok(out)
            } else {
                Err(Failure {
                    code: 2,
                    message: out.trim_end().to_string(),
                })
            }
        }
        Command::Batch { table, bundled } => {
            let (t, _) = table_from(table.as_ref(), Some(bundled))?;
            let report = run_batch(&t);
            Ok(match format {
                Format::Json => json(&report),
                Format::Csv => csv_text(
                    &[
                        "name",
                        "crossings",
                        "components",
                        "tags",
                        "certifying",
                        "certifies_without_seifert",
                    ],
                    report
                        .rows
                        .iter()
                        .map(|r| {
                            vec![
                                r.name.clone(),
                                r.crossings.to_string(),
                                r.components.to_string(),
                                r.tags.join(" "),
                                r.surfaces
                                    .iter()
                                    .map(|s| s.state.to_string())
                                    .collect::<Vec<_>>()
                                    .join(" "),
                                r.certifies_without_seifert.to_string(),
                            ]
                        })
                        .collect(),
                ),
                Format::Text => {
                    let mut s = format!("table {}\n", report.table_hash);
                    for d in &report.diagnostics {
                        s += &format!("line {}: {}\n", d.line, d.message);
                    }
                    for r in &report.rows {
                        s += &format!("{:<10} {:>2}  {}\n", r.name, r.crossings, r.tags.join(", "));
                    }
                    s
                }
            })
        }
        Command::RemarkCheck { which, table, full } => {
            let bundled = Bundled::from_name(which)
                .ok_or_else(|| usage(format!("unknown table '{which}'")))?;
            let t = match table {
                Some(p) => table_from(Some(p), None)?.0,
                None => bundled.load(),
            };
            let report = run_remark_check(&t, which, expected_exceptions(bundled));
            Ok(render_remark(&report, format, *full))
        }
    }
}

fn render_remark(report: &RemarkReport, format: Format, full: bool) -> String {
    match format {
        Format::Json => {
            let mut v = report.summary();
            let m = v.as_object_mut().unwrap();
            m.insert("table".into(), report.table.clone().into());
            m.insert("expected_exceptions".into(), serde_json::json!(report.expected_exceptions));
            m.insert("missing".into(), serde_json::json!(report.missing));
            m.insert("unexpected".into(), serde_json::json!(report.unexpected));
            m.insert("overrides".into(), serde_json::json!(report.overrides));
            m.insert("diagnostics".into(), serde_json::json!(report.diagnostics));
            if full {
                m.insert("entries".into(), serde_json::json!(report.entries));
            }
            json(&v)
        }
        Format::Csv => csv_text(
            &["name", "crossings", "passes", "plus", "minus", "checkerboard_flag", "overridden"],
            report
                .entries
                .iter()
                .filter(|e| full || !e.passes)
                .map(|e| {
                    let tag = |c: &super::remark::StateCheck| {
                        format!(
                            "{}{}{}",
                            if c.adequate { "A" } else { "a" },
                            if c.homogeneous { "H" } else { "h" },
                            if c.is_seifert { "S" } else { "" }
                        )
                    };
                    vec![
                        e.name.clone(),
                        e.crossings.to_string(),
                        e.passes.to_string(),
                        tag(&e.plus),
                        tag(&e.minus),
                        e.checkerboard_flag.to_string(),
                        e.overridden.to_string(),
                    ]
                })
                .collect(),
        ),
        Format::Text => {
            let mut s = format!(
                "table {} ({} entries, hash {})\n",
                report.table,
                report.entries.len(),
                report.table_hash
            );
            for o in &report.overrides {
                s += &format!("override {} on line {}: {}\n", o.name, o.line, o.notation);
            }
            for d in &report.diagnostics {
                s += &format!("line {}: {}\n", d.line, d.message);
            }
            s += &format!("exceptions: {}\n", report.exceptions.join(" "));
            s += &format!("checkerboard flags: {}\n", report.checkerboard_flags.join(" "));
            if report.matches_expected() {
                s += "matches the expected exception list\n";
            } else {
                s += &format!(
                    "differs from the expected list: missing [{}] unexpected [{}]\n",
                    report.missing.join(" "),
                    report.unexpected.join(" ")
                );
            }
            s
        }
    }
}
