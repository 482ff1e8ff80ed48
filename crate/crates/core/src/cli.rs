//! Command-line front end.
//!
//! Exit status is 0 on success, 1 when a checked property fails and 2 on
//! bad input. With `--input` naming a directory every file in it is
//! processed, `--jobs` at a time, and reports appear in file-name order.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use thiserror::Error;

use crate::colorer::{
    boundary_colorings, color_proof_guided, extend_backtrack, extension_check, BoundaryStatus,
    ColorError, Coloring,
};
use crate::discharging::audit;
use crate::generate::{self, GenerateError, Spec};
use crate::plane_graph::text::{self, ParseError};
use crate::plane_graph::{GraphError, PlaneGraph, Vertex};
use crate::structures::{class_violation, classify_cycle, unavoidable_witnesses, CycleClass};

#[derive(Debug, Parser)]
#[command(name = "plane3c", version, about = "Plane-graph 3-coloring toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Report layout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Worker threads for directory input.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Records,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Oracle,
    Proof,
    Auto,
}

#[derive(Debug, Args)]
pub struct InputArg {
    /// Graph file, or a directory of graph files.
    #[arg(long)]
    pub input: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the faces of the embedding.
    Faces(InputArg),
    /// Check for 4-cycles, 5-cycles and ext-triangular 7-cycles.
    ClassCheck(InputArg),
    /// Classify a cycle (the outer boundary by default) as good, bad or long.
    Classify {
        #[command(flatten)]
        input: InputArg,
        /// Comma-separated cycle vertices.
        #[arg(long, value_delimiter = ',')]
        cycle: Option<Vec<Vertex>>,
    },
    /// List every reducible configuration found.
    Detect(InputArg),
    /// Run the discharging audit.
    Discharge(InputArg),
    /// Extend a precoloring of the outer boundary to the whole graph.
    Color {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
        /// File of `v=color` lines.
        #[arg(long)]
        precolor: Option<PathBuf>,
    },
    /// Check that every boundary coloring of a good boundary extends.
    Theorem8(InputArg),
    /// Confirm the two non-extendable precolorings.
    Counterexamples,
    /// Print a generated instance.
    Gen {
        /// `cycle <n>`, `g1`, `g2`, `claw9`, `mface`, `mmface`, `tetrad` or
        /// `random-class [<seed> <nmax>]`.
        #[arg(required = true, num_args = 1..)]
        spec: Vec<String>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long = "max-n")]
        max_n: Option<usize>,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("{path}: {message}")]
    Input { path: String, message: String },
    #[error(transparent)]
    Generate(#[from] GenerateError),
}

/// Outcome of one command on one input.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub text: Vec<String>,
    pub records: Vec<String>,
    pub violation: bool,
}

impl Report {
    fn line(&mut self, text: impl Into<String>, record: impl Into<String>) {
        self.text.push(text.into());
        self.records.push(record.into());
    }

    pub fn exit_code(&self) -> i32 {
        i32::from(self.violation)
    }
}

fn list(vs: &[Vertex]) -> String {
    vs.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn csv(vs: &[Vertex]) -> String {
    vs.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn load(path: &Path) -> Result<PlaneGraph, CliError> {
    text::parse(&read(path)?).map_err(|source| CliError::Parse {
        path: path.display().to_string(),
        source,
    })
}

fn input_err(path: &Path, message: impl ToString) -> CliError {
    CliError::Input {
        path: path.display().to_string(),
        message: message.to_string(),
    }
}

fn faces(g: &PlaneGraph) -> Report {
    let mut r = Report::default();
    let f = g.faces().len();
    r.line(
        format!("V={} E={} F={f}", g.vertex_count(), g.edge_count()),
        format!(
            "graph vertices={} edges={} faces={f}",
            g.vertex_count(),
            g.edge_count()
        ),
    );
    for (i, face) in g.faces().iter().enumerate() {
        let walk = face.vertices();
        let tag = if face.is_outer { " outer" } else { "" };
        r.line(
            format!("face {i}: size={} [{}]{tag}", face.size(), list(&walk)),
            format!(
                "face id={i} size={} outer={} walk={}",
                face.size(),
                face.is_outer,
                csv(&walk)
            ),
        );
    }
    r
}

fn class_check(g: &PlaneGraph) -> Report {
    let mut r = Report::default();
    match class_violation(g) {
        None => r.line("in class", "class ok=true"),
        Some(v) => {
            r.violation = true;
            r.line(
                format!("violation: {v}"),
                format!("class ok=false violation=\"{v}\""),
            );
        }
    }
    r
}

fn classify(g: &PlaneGraph, cycle: Option<&[Vertex]>, path: &Path) -> Result<Report, CliError> {
    let verts = match cycle {
        Some(c) => c.to_vec(),
        None => g
            .boundary_cycle()
            .ok_or_else(|| input_err(path, "outer boundary is not a cycle"))?,
    };
    let c = g.sides_of_cycle(&verts).map_err(|e| input_err(path, e))?;
    let mut r = Report::default();
    let (name, parts) = match classify_cycle(g, &c) {
        CycleClass::Good => ("good", Vec::new()),
        CycleClass::Bad(p) => ("bad", p),
        CycleClass::Long => ("long", Vec::new()),
    };
    r.line(
        format!(
            "cycle=[{}] length={} class={name}",
            list(&verts),
            verts.len()
        ),
        format!(
            "cycle verts={} length={} class={name}",
            csv(&verts),
            verts.len()
        ),
    );
    for p in parts {
        let cells: Vec<String> = p.cells.iter().map(|c| c.to_string()).collect();
        r.line(
            format!("  {} cells=({})", p.kind, cells.join(",")),
            format!("partition kind={} cells={}", p.kind, cells.join(",")),
        );
    }
    Ok(r)
}

fn detect(g: &PlaneGraph) -> Report {
    let mut r = Report::default();
    let found = unavoidable_witnesses(g);
    for w in &found {
        r.line(
            format!("{w}"),
            format!("witness kind={} detail=\"{w}\"", w.name()),
        );
    }
    r.line(
        format!("count={}", found.len()),
        format!("witnesses count={}", found.len()),
    );
    r
}

fn discharge(g: &PlaneGraph) -> Report {
    let report = audit(g);
    let mut r = Report::default();
    for l in report.to_string().lines() {
        r.line(l, l);
    }
    r.violation = !report.sum_ok;
    r
}

fn color(
    g: &PlaneGraph,
    method: Method,
    precolor: Option<&Path>,
    path: &Path,
) -> Result<Report, CliError> {
    let phi: Coloring = match precolor {
        Some(p) => read(p)?.parse().map_err(|e| input_err(p, e))?,
        None => Coloring::new(),
    };
    let use_proof = match method {
        Method::Oracle => false,
        Method::Proof => true,
        Method::Auto => {
            crate::colorer::boundary_status(g) == BoundaryStatus::Good
                && phi.iter().all(|(v, _)| g.is_external(v))
        }
    };
    let mut r = Report::default();
    let result = if use_proof {
        color_proof_guided(g, &phi).map(|(c, s)| Some((c, Some(s))))
    } else {
        extend_backtrack(g, &phi).map(|c| c.map(|c| (c, None)))
    };
    let name = if use_proof { "proof" } else { "oracle" };
    match result {
        Ok(Some((col, stats))) => {
            for (v, c) in col.iter() {
                r.line(format!("{v}={c}"), format!("color vertex={v} color={c}"));
            }
            let stats = stats
                .map(|s| s.to_string())
                .unwrap_or_else(|| "none".into());
            r.line(
                format!("method={name} stats={stats}"),
                format!("result method={name} extended=true stats={stats}"),
            );
        }
        Ok(None) => {
            r.violation = true;
            r.line(
                "unextendable",
                format!("result method={name} extended=false"),
            );
        }
        Err(e @ ColorError::Refuted(_)) | Err(e @ ColorError::Internal(_)) => {
            r.violation = true;
            r.line(
                format!("{e}"),
                format!("result method={name} error=\"{e}\""),
            );
        }
        Err(e) => return Err(input_err(path, e)),
    }
    Ok(r)
}

fn extension_report(g: &PlaneGraph) -> Report {
    let rep = extension_check(g);
    let mut r = Report::default();
    for l in rep.to_string().lines() {
        r.line(l, l);
    }
    r.violation = !rep.holds();
    r
}

/// Name, graph, the family expected to be unextendable, and the family
/// expected to extend.
type FamilyCheck = (
    &'static str,
    PlaneGraph,
    fn(&Coloring) -> bool,
    fn(&Coloring) -> bool,
);

/// Checks the two known boundary precoloring families that do not extend.
pub fn counterexamples() -> Report {
    let mut r = Report::default();
    let checks: [FamilyCheck; 2] = [
        (
            "G1",
            generate::g1(),
            |phi| distinct(phi, &[1, 2, 6]),
            |phi| !distinct(phi, &[1, 2, 6]),
        ),
        ("G2", generate::g2(), |phi| same(phi, &[1, 4, 7]), |_| false),
    ];
    for (name, g, bad, may_extend) in checks {
        let d = g
            .boundary_cycle()
            .expect("named instance has a boundary cycle");
        let mut stuck = 0;
        let mut stuck_total = 0;
        let mut extends = 0;
        for phi in boundary_colorings(&g, &d) {
            let ok = matches!(extend_backtrack(&g, &phi), Ok(Some(_)));
            if bad(&phi) {
                stuck_total += 1;
                stuck += usize::from(!ok);
            } else if may_extend(&phi) && ok {
                extends += 1;
            }
        }
        let need_extending = name == "G1";
        let confirmed = stuck_total > 0 && stuck == stuck_total && (!need_extending || extends > 0);
        let verdict = if confirmed {
            "unextendable coloring confirmed"
        } else {
            "NOT confirmed"
        };
        r.violation |= !confirmed;
        r.line(
            format!("{name}: {verdict} ({stuck}/{stuck_total} unextendable, {extends} others extend)"),
            format!("counterexample name={name} confirmed={confirmed} unextendable={stuck} checked={stuck_total} extending={extends}"),
        );
    }
    r
}

fn distinct(phi: &Coloring, vs: &[Vertex]) -> bool {
    let cs: std::collections::BTreeSet<_> = vs.iter().filter_map(|&v| phi.get(v)).collect();
    cs.len() == vs.len()
}

fn same(phi: &Coloring, vs: &[Vertex]) -> bool {
    let cs: std::collections::BTreeSet<_> = vs.iter().filter_map(|&v| phi.get(v)).collect();
    cs.len() == 1
}

fn gen_spec(words: &[String], seed: Option<u64>, max_n: Option<usize>) -> Result<Spec, CliError> {
    let mut words = words.join(" ");
    if words.trim() == "random-class" {
        words = format!("random-class {} {}", seed.unwrap_or(0), max_n.unwrap_or(20));
    }
    Ok(words.parse()?)
}

/// Runs a per-graph command on one file.
fn run_file(cmd: &Command, path: &Path) -> Result<Report, CliError> {
    let g = load(path)?;
    Ok(match cmd {
        Command::Faces(_) => faces(&g),
        Command::ClassCheck(_) => class_check(&g),
        Command::Classify { cycle, .. } => classify(&g, cycle.as_deref(), path)?,
        Command::Detect(_) => detect(&g),
        Command::Discharge(_) => discharge(&g),
        Command::Color {
            method, precolor, ..
        } => color(&g, *method, precolor.as_deref(), path)?,
        Command::Theorem8(_) => extension_report(&g),
        Command::Counterexamples | Command::Gen { .. } => unreachable!("not a per-graph command"),
    })
}

fn input_of(cmd: &Command) -> Option<&Path> {
    match cmd {
        Command::Faces(i)
        | Command::ClassCheck(i)
        | Command::Detect(i)
        | Command::Discharge(i)
        | Command::Theorem8(i) => Some(&i.input),
        Command::Classify { input, .. } | Command::Color { input, .. } => Some(&input.input),
        Command::Counterexamples | Command::Gen { .. } => None,
    }
}

fn render(report: &Report, format: Format, prefix: Option<&str>) -> String {
    let mut out = String::new();
    match format {
        Format::Text => {
            if let Some(p) = prefix {
                let _ = writeln!(out, "== {p}");
            }
            for l in &report.text {
                let _ = writeln!(out, "{l}");
            }
        }
        Format::Records => {
            for l in &report.records {
                match prefix {
                    Some(p) => {
                        let _ = writeln!(out, "file={p} {l}");
                    }
                    None => {
                        let _ = writeln!(out, "{l}");
                    }
                }
            }
        }
    }
    out
}

/// Runs a parsed command, returning the report text and exit status.
pub fn run(cli: &Cli) -> (String, String, i32) {
    match &cli.command {
        Command::Counterexamples => {
            let r = counterexamples();
            (render(&r, cli.format, None), String::new(), r.exit_code())
        }
        Command::Gen {
            spec, seed, max_n, ..
        } => match gen_spec(spec, *seed, *max_n).and_then(|s| Ok(generate::generate(s)?)) {
            Ok(g) => (text::print(&g), String::new(), 0),
            Err(e) => (String::new(), format!("error: {e}\n"), 2),
        },
        cmd => {
            let input = input_of(cmd).expect("per-graph command");
            if input.is_dir() {
                run_dir(cmd, input, cli)
            } else {
                match run_file(cmd, input) {
                    Ok(r) => (render(&r, cli.format, None), String::new(), r.exit_code()),
                    Err(e) => (String::new(), format!("error: {e}\n"), 2),
                }
            }
        }
    }
}

fn run_dir(cmd: &Command, dir: &Path, cli: &Cli) -> (String, String, i32) {
    let mut files: Vec<PathBuf> = match fs::read_dir(dir) {
        Ok(rd) => rd
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.is_file())
            .collect(),
        Err(e) => return (String::new(), format!("error: {}: {e}\n", dir.display()), 2),
    };
    files.sort();
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs.max(1))
        .build()
    {
        Ok(p) => p,
        Err(e) => return (String::new(), format!("error: {e}\n"), 2),
    };
    let results: Vec<(String, Result<Report, CliError>)> = pool.install(|| {
        files
            .par_iter()
            .map(|p| {
                let name = p
                    .file_name()
                    .map(|n| n.to_string_lossy().into_owned())
                    .unwrap_or_default();
                (name, run_file(cmd, p))
            })
            .collect()
    });
    let (mut out, mut err, mut code) = (String::new(), String::new(), 0);
    for (name, res) in results {
        match res {
            Ok(r) => {
                out.push_str(&render(&r, cli.format, Some(&name)));
                code = code.max(r.exit_code());
            }
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                code = 2;
            }
        }
    }
    (out, err, code)
}

/// Entry point for the binary; returns the process exit status.
pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let (out, err, code) = run(&cli);
    eprint!("{err}");
    match &cli.output {
        Some(p) => {
            if let Err(e) = fs::write(p, out) {
                eprintln!("error: {}: {e}", p.display());
                return 2;
            }
        }
        None => print!("{out}"),
    }
    code
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        CliError::Generate(GenerateError::Graph(e))
    }
}
