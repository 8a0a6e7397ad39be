//! Command-line front end: `compute`, `survive`, `oracle`, `export`.
//!
//! Exit codes: 0 success, 2 usage error, 3 `H_0` larger than `n^2 - 1`,
//! 4 or more for internal invariant violations.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::building::{
    adjacency, build_z_with_flags, enumerate_flag_reps, standard_ball, standard_simplices, BoundProfile, ComplexZ,
};
use crate::error::Error;
use crate::homology::{assemble_boundary, h0_dimension_with, h1_basis, surviving_degrees, HomologyReport, Orientation};
use crate::linalg::{Field, SparseMatrix};
use crate::oracle::{adjacency_oracle, verify_h1_formula, DEFAULT_LIMIT};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_FINDING: i32 = 3;
pub const EXIT_INVARIANT: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "congruence-h1",
    version,
    about = "H_1 of level-t congruence subgroups of SL_n(F_q[t])"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build Z_R, assemble the boundary, and report dim H_0(Z_R, H_1).
    Compute(ComputeArgs),
    /// Print the surviving degrees for a degree-bound profile.
    Survive(SurviveArgs),
    /// Brute-force sweep certifying the slot model and the adjacency rule.
    Oracle(OracleArgs),
    /// Write the graph of Z_R (DOT) and the boundary matrix (triples).
    Export(ExportArgs),
}

#[derive(Debug, Args, Clone)]
pub struct Domain {
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    #[arg(long, default_value_t = 2)]
    pub q: u32,
    #[arg(long, default_value_t = 1)]
    pub radius: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    #[command(flatten)]
    pub domain: Domain,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Shuffle the flag representatives with this seed before building.
    #[arg(long)]
    pub shuffle_seed: Option<u64>,
    /// Put the `+` sign on the larger endpoint label.
    #[arg(long)]
    pub reverse_edges: bool,
    /// Emit `timing_ms: null` so reports are byte-comparable.
    #[arg(long)]
    pub omit_timing: bool,
}

#[derive(Debug, Args)]
pub struct SurviveArgs {
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    /// Bounds above the diagonal by root height: b12,b23,...,b13,...,b1n.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub bounds: Vec<i64>,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub domain: Domain,
    /// Groups of at least this order are skipped.
    #[arg(long, default_value_t = DEFAULT_LIMIT)]
    pub limit: usize,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    #[command(flatten)]
    pub domain: Domain,
    /// Directory for files whose paths are not given explicitly.
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
    #[arg(long)]
    pub dot: Option<PathBuf>,
    #[arg(long)]
    pub matrix: Option<PathBuf>,
}

struct Failure(i32, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(EXIT_INVARIANT, e.to_string())
    }
}

fn validate(d: &Domain) -> Result<Field, Failure> {
    if d.n < 2 {
        return Err(Failure(EXIT_USAGE, "n must be at least 2".into()));
    }
    if d.radius < 1 {
        return Err(Failure(EXIT_USAGE, "radius must be at least 1".into()));
    }
    Field::new(d.q).map_err(|_| Failure(EXIT_USAGE, "q must be prime".into()))
}

fn write_output(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<(), Failure> {
    match path {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| Failure(EXIT_USAGE, format!("cannot write {}: {e}", p.display())))
        }
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| Failure(EXIT_INVARIANT, e.to_string())),
    }
}

/// Builds `Z_R` with the flag order optionally shuffled.
pub fn build_complex(field: Field, d: &Domain, shuffle_seed: Option<u64>) -> ComplexZ {
    let mut flags = enumerate_flag_reps(field, d.n);
    if let Some(seed) = shuffle_seed {
        flags.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }
    build_z_with_flags(field, d.n, d.radius, &flags)
}

/// Serializes a report as pretty JSON with a trailing newline.
pub fn report_json(r: &HomologyReport) -> String {
    let mut s = serde_json::to_string_pretty(r).expect("report serializes");
    s.push('\n');
    s
}

pub fn report_csv(r: &HomologyReport) -> String {
    let header = "n,q,radius,num_vertices,num_edges,dim_c0,dim_c1,rank_boundary,dim_h0,target,meets_conjecture,counts_note,timing_ms";
    let note = r
        .counts_note
        .as_deref()
        .map(|s| format!("\"{}\"", s.replace('"', "\"\"")))
        .unwrap_or_default();
    let timing = r.timing_ms.map(|t| t.to_string()).unwrap_or_default();
    format!(
        "{header}\n{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
        r.n,
        r.q,
        r.radius,
        r.num_vertices,
        r.num_edges,
        r.dim_c0,
        r.dim_c1,
        r.rank_boundary,
        r.dim_h0,
        r.target,
        r.meets_conjecture,
        note,
        timing
    )
}

fn cmd_compute(a: &ComputeArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let field = validate(&a.domain)?;
    let start = Instant::now();
    let z = build_complex(field, &a.domain, a.shuffle_seed);
    let orientation = if a.reverse_edges {
        Orientation::Reversed
    } else {
        Orientation::Lexicographic
    };
    let mut report = h0_dimension_with(&z, orientation)?;
    if !a.omit_timing {
        report.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    let text = match a.format {
        Format::Json => report_json(&report),
        Format::Csv => report_csv(&report),
    };
    write_output(a.out.as_deref(), &text, out)?;
    if report.dim_c0 != report.rank_boundary + report.dim_h0 || report.dim_h0 < report.target {
        let _ = writeln!(
            err,
            "invariant violation: dim H_0 = {} is below n^2 - 1 = {}",
            report.dim_h0, report.target
        );
        return Ok(EXIT_INVARIANT);
    }
    if !report.meets_conjecture {
        let _ = writeln!(
            err,
            "finding: dim H_0 = {} exceeds n^2 - 1 = {}",
            report.dim_h0, report.target
        );
        return Ok(EXIT_FINDING);
    }
    Ok(EXIT_OK)
}

/// Surviving degrees as `(i,j):[r,...]` tokens ordered by root height.
pub fn format_surviving(profile: &BoundProfile) -> Result<String, Error> {
    let s = surviving_degrees(profile)?;
    let mut keys: Vec<_> = s.keys().copied().collect();
    keys.sort_by_key(|&(i, j)| (j - i, i));
    let parts: Vec<String> = keys
        .iter()
        .map(|k| {
            let rs: Vec<String> = s[k].iter().map(u32::to_string).collect();
            format!("({},{}):[{}]", k.0 + 1, k.1 + 1, rs.join(","))
        })
        .collect();
    Ok(parts.join(" "))
}

fn cmd_survive(a: &SurviveArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    if a.n < 2 {
        return Err(Failure(EXIT_USAGE, "n must be at least 2".into()));
    }
    let profile = BoundProfile::from_upper_bounds(a.n, &a.bounds).map_err(|e| Failure(EXIT_USAGE, e.to_string()))?;
    let line = format_surviving(&profile).map_err(|e| Failure(EXIT_USAGE, e.to_string()))?;
    let dim = h1_basis(&profile)?.dim();
    write_output(None, &format!("{line}\ndim {dim}\n"), out)?;
    Ok(EXIT_OK)
}

fn cmd_oracle(a: &OracleArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let field = validate(&a.domain)?;
    let d = &a.domain;
    let mut text = String::new();
    let (mut passed, mut failed, mut skipped) = (0, 0, 0);
    let _ = writeln!(
        text,
        "{:<28} {:>8} {:>8} {:>6} {:>6}  status",
        "simplex", "|C|", "|C'|", "brute", "model"
    );
    for s in standard_simplices(d.n, d.radius) {
        let name = s.iter().map(ToString::to_string).collect::<Vec<_>>().join("-");
        let profile = BoundProfile::from_simplex(&s)?;
        match verify_h1_formula(&profile, field, a.limit) {
            Ok(v) => {
                let status = if v.passed() {
                    passed += 1;
                    "ok"
                } else {
                    failed += 1;
                    "MISMATCH"
                };
                let _ = writeln!(
                    text,
                    "{name:<28} {:>8} {:>8} {:>6} {:>6}  {status}",
                    v.order, v.commutator_order, v.brute_force_dim, v.model_dim
                );
            }
            Err(Error::GroupTooLarge(limit)) => {
                skipped += 1;
                let _ = writeln!(
                    text,
                    "{name:<28} {:>8} {:>8} {:>6} {:>6}  skipped (limit {limit})",
                    "-", "-", "-", "-"
                );
            }
            Err(e) => {
                failed += 1;
                let _ = writeln!(text, "{name:<28} error: {e}");
            }
        }
    }
    let (ball, _) = standard_ball(d.n, d.radius);
    let mut adjacency_failures = 0;
    for x in &ball {
        for y in &ball {
            if adjacency(x, y) != adjacency_oracle(field, x, y) {
                adjacency_failures += 1;
                let _ = writeln!(text, "adjacency mismatch: {x} {y}");
            }
        }
    }
    let _ = writeln!(
        text,
        "slot model: {passed} passed, {failed} failed, {skipped} skipped; adjacency: {} pairs, {adjacency_failures} mismatches",
        ball.len() * ball.len()
    );
    if skipped > 0 {
        let _ = writeln!(
            text,
            "note: {skipped} simplices exceeded the group-order limit and were not checked"
        );
    }
    write_output(None, &text, out)?;
    Ok(if failed == 0 && adjacency_failures == 0 {
        EXIT_OK
    } else {
        EXIT_INVARIANT
    })
}

/// Graphviz rendering of `Z_R`; nodes are hex labels, `v_0` is marked.
pub fn to_dot(z: &ComplexZ) -> Result<String, Error> {
    let origin = z.origin();
    let mut s = String::new();
    let _ = writeln!(s, "graph Z {{");
    let _ = writeln!(
        s,
        "  // n={} q={} radius={}",
        z.n(),
        z.field().characteristic(),
        z.radius()
    );
    for (label, rep) in z.vertices() {
        let dim = h1_basis(&BoundProfile::from_simplex(std::slice::from_ref(&rep.vertex))?)?.dim();
        let mark = if *label == origin {
            ", origin=true, shape=doublecircle"
        } else {
            ""
        };
        let _ = writeln!(s, "  \"{}\" [std=\"{}\", dim={dim}{mark}];", label.hex(), rep.vertex);
    }
    for ((a, b), rep) in z.edges() {
        let dim = h1_basis(&rep.edge.profile())?.dim();
        let _ = writeln!(s, "  \"{}\" -- \"{}\" [dim={dim}];", a.hex(), b.hex());
    }
    let _ = writeln!(s, "}}");
    Ok(s)
}

/// `rows cols p` header followed by `r c v` lines, 0-based, row-major order.
pub fn matrix_triples(m: &SparseMatrix) -> String {
    let mut s = format!("{} {} {}\n", m.rows(), m.cols(), m.field().characteristic());
    for (r, c, v) in m.triples() {
        let _ = writeln!(s, "{r} {c} {v}");
    }
    s
}

fn cmd_export(a: &ExportArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let field = validate(&a.domain)?;
    let d = &a.domain;
    let z = build_complex(field, d, None);
    let stem = format!("n{}_q{}_r{}", d.n, d.q, d.radius);
    let dot_path = a.dot.clone().unwrap_or_else(|| a.out_dir.join(format!("z_{stem}.dot")));
    let matrix_path = a
        .matrix
        .clone()
        .unwrap_or_else(|| a.out_dir.join(format!("boundary_{stem}.txt")));
    write_output(Some(&dot_path), &to_dot(&z)?, out)?;
    let b = assemble_boundary(&z)?;
    write_output(Some(&matrix_path), &matrix_triples(&b.matrix), out)?;
    let _ = writeln!(out, "wrote {}\nwrote {}", dot_path.display(), matrix_path.display());
    Ok(EXIT_OK)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = config.threads {
        builder = builder.num_threads(t);
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "cannot start thread pool: {e}");
            return EXIT_INVARIANT;
        }
    };
    let (result, buf_out, buf_err) = pool.install(|| {
        let mut o = Vec::new();
        let mut e = Vec::new();
        let r = match &config.command {
            Command::Compute(a) => cmd_compute(a, &mut o, &mut e),
            Command::Survive(a) => cmd_survive(a, &mut o),
            Command::Oracle(a) => cmd_oracle(a, &mut o),
            Command::Export(a) => cmd_export(a, &mut o),
        };
        (r, o, e)
    });
    let _ = out.write_all(&buf_out);
    let _ = err.write_all(&buf_err);
    match result {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["congruence-h1"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn composite_q_is_a_usage_error() {
        let (code, _, err) = call(&["compute", "--n", "3", "--q", "4", "--radius", "1"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("q must be prime"));
    }

    #[test]
    fn bad_dimensions_are_usage_errors() {
        assert_eq!(call(&["compute", "--n", "1"]).0, EXIT_USAGE);
        assert_eq!(call(&["compute", "--radius", "0"]).0, EXIT_USAGE);
        assert_eq!(call(&["compute", "--bogus"]).0, EXIT_USAGE);
    }

    #[test]
    fn survive_output() {
        let (code, out, _) = call(&["survive", "--n", "3", "--bounds", "1,1,3"]);
        assert_eq!(code, 0);
        assert_eq!(out, "(1,2):[1] (2,3):[1] (1,3):[1,3]\ndim 4\n");
        let (code, out, _) = call(&["survive", "--n", "3", "--bounds", "0,0,0"]);
        assert_eq!(code, 0);
        assert_eq!(out, "\ndim 0\n");
        assert_eq!(call(&["survive", "--n", "3", "--bounds", "1,1,1"]).0, EXIT_USAGE);
        assert_eq!(call(&["survive", "--n", "3", "--bounds", "1,1"]).0, EXIT_USAGE);
    }

    #[test]
    fn csv_has_schema_columns() {
        let (code, out, _) = call(&["compute", "--format", "csv", "--omit-timing"]);
        assert_eq!(code, 0);
        let lines: Vec<_> = out.lines().collect();
        assert_eq!(lines[1], "3,2,1,14,21,28,21,20,8,8,true,,");
    }

    #[test]
    fn n2_larger_radius_is_a_finding() {
        let (code, out, err) = call(&["compute", "--n", "2", "--q", "2", "--radius", "2"]);
        assert_eq!(code, EXIT_FINDING);
        assert!(out.contains("\"dim_h0\": 6"));
        assert!(err.contains("finding"));
    }

    #[test]
    fn oracle_limit_skips() {
        let (code, out, _) = call(&["oracle", "--n", "3", "--q", "2", "--radius", "1", "--limit", "4"]);
        assert_eq!(code, 0);
        assert!(out.contains("skipped"));
        assert!(out.contains("note:"));
    }

    #[test]
    fn unwritable_export_path() {
        let (code, _, err) = call(&["export", "--out-dir", "/nonexistent/dir/for/sure"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("cannot write"));
    }
}
