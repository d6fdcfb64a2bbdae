//! Command-line front end. [`run`] does all the work and returns the exit
//! code together with the captured output, so the binary is a thin shim.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::chermak_delgado::GroupAnalysis;
use crate::constructors::construct;
use crate::corpus::default_corpus;
use crate::error::Error;
use crate::group::{Group, Limits};
use crate::lattice::SubgroupLattice;
use crate::spec::{parse_spec, GroupSpec};
use crate::subgroup::{derived_subgroup, is_nilpotent, upper_central_series, Subgroup};
use crate::theorems::{failure_count, run_corpus, verify_spec, ClaimResult, Outcome};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CLAIM_FAILURE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_PRECONDITION: i32 = 4;
pub const EXIT_IO: i32 = 5;

const NOTES: &str = "\
Group expressions:
  C(n)        cyclic of order n            Ab(n1,..,nk)  product of cyclics
  D(n)        dihedral of order 2n         Q(m)          dicyclic of order 4m
  SD(k)       semidihedral of order 2^k    M(p,k)        modular p-group of order p^k
  Heis(p)     Heisenberg group mod p       ESP2(p)       extraspecial p^3 of exponent p^2
  ES(p,n,t)   extraspecial of order p^(2n+1); t is + or - for p = 2, p or p2 for odd p
  S(n), A(n)  symmetric / alternating, n <= 6
  G x H       direct product               CP(G, H)      central product
  Perm[(0 1 2)(3 4), (0 1)]                 permutation generators
The order-8 dihedral group D8 is D(4); the quaternion group Q8 is Q(2).

Exit codes: 0 ok, 1 claim failure, 2 parse/usage error, 3 size cap exceeded,
4 precondition failed, 5 I/O error.";

#[derive(Debug, Parser)]
#[command(name = "cdlat", version, about = "Chermak-Delgado lattices of small finite groups", after_help = NOTES)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Write output to a file instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Largest group whose subgroup lattice may be enumerated.
    #[arg(long, global = true, default_value_t = Limits::default().max_order)]
    pub max_order: usize,
    /// Largest group that may be constructed.
    #[arg(long, global = true, default_value_t = Limits::default().max_closure)]
    pub max_closure: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Order, center, derived subgroup and nilpotency.
    Info { spec: String },
    /// The subgroup lattice L(G).
    Subgroups { spec: String },
    /// Chermak-Delgado report.
    Cd { spec: String },
    /// One lattice of the group.
    Lattice {
        spec: String,
        #[arg(long, value_enum, default_value = "cd")]
        which: Which,
    },
    /// Every applicable claim check for one group.
    Verify { spec: String },
    /// Every applicable claim check over the built-in corpus.
    Corpus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Cd,
    Full,
    Interval,
    Centralizer,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Engine(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

pub fn run<I, T>(args: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CliOutput {
                    code: EXIT_PARSE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                CliOutput {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let (code, body) = match execute(&cli) {
        Ok(ok) => ok,
        Err(Failure::Usage(msg)) => {
            return CliOutput {
                code: EXIT_PARSE,
                stdout: String::new(),
                stderr: format!("error: {msg}\n"),
            }
        }
        Err(Failure::Engine(e)) => {
            return CliOutput {
                code: e.class().exit_code(),
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
            }
        }
    };
    match &cli.output {
        Some(path) => match std::fs::write(path, &body) {
            Ok(()) => CliOutput {
                code,
                stdout: String::new(),
                stderr: String::new(),
            },
            Err(e) => CliOutput {
                code: EXIT_IO,
                stdout: String::new(),
                stderr: format!("error: cannot write {}: {e}\n", path.display()),
            },
        },
        None => CliOutput {
            code,
            stdout: body,
            stderr: String::new(),
        },
    }
}

fn execute(cli: &Cli) -> Result<(i32, String), Failure> {
    let limits = Limits {
        max_order: cli.max_order,
        max_closure: cli.max_closure,
    };
    let lattice_verb = matches!(
        cli.command,
        Command::Subgroups { .. } | Command::Cd { .. } | Command::Lattice { .. }
    );
    if cli.format == Format::Dot && !lattice_verb {
        return Err(Failure::Usage(
            "--format dot only applies to subgroups, cd and lattice".into(),
        ));
    }
    let build = |s: &str| -> Result<(GroupSpec, Group), Failure> {
        let spec = parse_spec(s)?;
        let g = construct(&spec, &limits)?;
        Ok((spec, g))
    };
    match &cli.command {
        Command::Info { spec } => {
            let (_, g) = build(spec)?;
            Ok((EXIT_OK, info(&g, cli.format)))
        }
        Command::Subgroups { spec } => {
            let (_, g) = build(spec)?;
            let a = GroupAnalysis::new(&g, &limits)?;
            let lat = a.full_lattice();
            let out = match cli.format {
                Format::Text => subgroups_text(&lat),
                Format::Json => lat.to_json() + "\n",
                Format::Dot => lat.to_dot(),
            };
            Ok((EXIT_OK, out))
        }
        Command::Cd { spec } => {
            let (_, g) = build(spec)?;
            let a = GroupAnalysis::new(&g, &limits)?;
            let out = match cli.format {
                Format::Text => a.report().to_text(&g),
                Format::Json => to_json(&a.report()),
                Format::Dot => a.cd_lattice().to_dot(),
            };
            Ok((EXIT_OK, out))
        }
        Command::Lattice { spec, which } => {
            let (_, g) = build(spec)?;
            let a = GroupAnalysis::new(&g, &limits)?;
            let lat = match which {
                Which::Cd => a.cd_lattice(),
                Which::Full => a.full_lattice(),
                Which::Interval => a.interval_lattice(),
                Which::Centralizer => a.centralizer_lattice(),
            };
            let out = match cli.format {
                Format::Text => lattice_text(&lat),
                Format::Json => lat.to_json() + "\n",
                Format::Dot => lat.to_dot(),
            };
            Ok((EXIT_OK, out))
        }
        Command::Verify { spec } => {
            let spec = parse_spec(spec)?;
            Ok(claims_output(&verify_spec(&spec, &limits), cli.format))
        }
        Command::Corpus => Ok(claims_output(&run_corpus(&default_corpus(), &limits), cli.format)),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("plain data serializes") + "\n"
}

fn labels(h: &Subgroup) -> String {
    let g = h.parent();
    h.members().map(|x| g.label(x)).collect::<Vec<_>>().join(", ")
}

#[derive(Serialize)]
struct SubgroupSummary {
    order: usize,
    elements: Vec<usize>,
    labels: Vec<String>,
}

impl SubgroupSummary {
    fn of(h: &Subgroup) -> Self {
        SubgroupSummary {
            order: h.size(),
            elements: h.members().collect(),
            labels: h.members().map(|x| h.parent().label(x).to_string()).collect(),
        }
    }
}

#[derive(Serialize)]
struct InfoReport {
    group: String,
    order: usize,
    abelian: bool,
    center: SubgroupSummary,
    derived: SubgroupSummary,
    nilpotent: bool,
    upper_central_series: Vec<usize>,
}

fn info(g: &Group, format: Format) -> String {
    let center = g.center();
    let derived = derived_subgroup(g);
    let series: Vec<usize> = upper_central_series(g).iter().map(Subgroup::size).collect();
    let report = InfoReport {
        group: g.source().to_string(),
        order: g.order(),
        abelian: g.is_abelian(),
        center: SubgroupSummary::of(&center),
        derived: SubgroupSummary::of(&derived),
        nilpotent: is_nilpotent(g),
        upper_central_series: series,
    };
    if format == Format::Json {
        return to_json(&report);
    }
    let mut out = String::new();
    let _ = writeln!(out, "group: {}", report.group);
    let _ = writeln!(out, "order: {}", report.order);
    let _ = writeln!(out, "abelian: {}", report.abelian);
    let _ = writeln!(out, "center: order {} {{{}}}", center.size(), labels(&center));
    let _ = writeln!(
        out,
        "derived subgroup: order {} {{{}}}",
        derived.size(),
        labels(&derived)
    );
    let _ = writeln!(out, "nilpotent: {}", report.nilpotent);
    let series: Vec<String> = report.upper_central_series.iter().map(usize::to_string).collect();
    let _ = writeln!(out, "upper central series orders: {}", series.join(" <= "));
    out
}

fn subgroups_text(lat: &SubgroupLattice) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "group: {}", lat.group().source());
    let _ = writeln!(out, "subgroups: {}", lat.len());
    let _ = writeln!(out, "length: {}", lat.length());
    for (i, h) in lat.nodes().iter().enumerate() {
        let normal = if h.is_normal() { " normal" } else { "" };
        let _ = writeln!(out, "  [{i}] {}{normal}", lat.node_label(i));
        let _ = h;
    }
    out
}

fn lattice_text(lat: &SubgroupLattice) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "group: {}", lat.group().source());
    let _ = writeln!(out, "nodes: {}", lat.len());
    let _ = writeln!(out, "length: {}", lat.length());
    for i in 0..lat.len() {
        let m = lat.measures().map(|m| format!(" m={}", m[i])).unwrap_or_default();
        let _ = writeln!(out, "  [{i}] {}{m}", lat.node_label(i));
    }
    let edges: Vec<String> = lat.hasse().iter().map(|(a, b)| format!("{a}->{b}")).collect();
    let _ = writeln!(out, "edges: {}", edges.join(" "));
    out
}

fn claims_output(results: &[ClaimResult], format: Format) -> (i32, String) {
    let failures = failure_count(results);
    let code = if failures > 0 { EXIT_CLAIM_FAILURE } else { EXIT_OK };
    if format == Format::Json {
        return (code, to_json(&results));
    }
    let mut out = String::new();
    for r in results {
        out.push_str(&r.to_line());
        out.push('\n');
    }
    let count = |o: Outcome| results.iter().filter(|r| r.outcome == o).count();
    let _ = writeln!(
        out,
        "summary: {} claims, {} pass, {} vacuous, {} skipped, {} fail",
        results.len(),
        count(Outcome::Pass),
        count(Outcome::Vacuous),
        count(Outcome::Skipped),
        failures
    );
    (code, out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn help_mentions_the_naming_convention() {
        let out = run(["cdlat", "--help"]);
        assert_eq!(out.code, 0);
        assert!(out.stdout.contains("D8 is D(4)"));
    }

    #[test]
    fn dot_is_rejected_for_non_lattice_verbs() {
        let out = run(["cdlat", "info", "D(4)", "--format", "dot"]);
        assert_eq!(out.code, EXIT_PARSE);
        assert!(out.stdout.is_empty());
    }

    #[test]
    fn error_classes_map_to_exit_codes() {
        assert_eq!(run(["cdlat", "cd", "D(4"]).code, EXIT_PARSE);
        assert_eq!(run(["cdlat", "cd", "Q(1)"]).code, EXIT_PARSE);
        assert_eq!(run(["cdlat", "cd", "S(6)"]).code, EXIT_CAP);
        assert_eq!(run(["cdlat", "info", "C(100)", "--max-closure", "50"]).code, EXIT_CAP);
        assert_eq!(run(["cdlat", "info", "CP(S(3), C(2))"]).code, EXIT_PRECONDITION);
        assert_eq!(run(["cdlat", "bogus"]).code, EXIT_PARSE);
    }

    #[test]
    fn info_text() {
        let out = run(["cdlat", "info", "D(4)"]);
        assert_eq!(out.code, 0);
        assert!(out.stdout.contains("center: order 2 {e, r^2}"));
        assert!(out.stdout.contains("nilpotent: true"));
        assert!(out.stdout.contains("upper central series orders: 1 <= 2 <= 8"));
    }
}
