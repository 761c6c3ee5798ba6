//! Command-line front end: ingests JSON documents of structure
//! constants, runs the verdict engines, and renders deterministic
//! reports. Exit codes: 0 all checks pass, 1 a mathematical verdict is
//! negative, 2 malformed or unresolvable input.

mod format;

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use pwg_core::classical::{covering_regularity_check, gset_coaction};
use pwg_core::comodule::{verify_coaction, verify_comodule, CoactionData, ComoduleData, Side};
use pwg_core::error::{Error, Result};
use pwg_core::fibred::fibred_pwg_check;
use pwg_core::galois::{canonical_map, default_monoidal_family, monoidal_check, strong_connection_solve};
use pwg_core::hopf::{subalgebra_structure, verify_hopf};
use pwg_core::linalg::Subspace;
use pwg_core::registry::{registry, FieldSupport};
use pwg_core::report::{Check, CheckStatus};
use pwg_core::scalar::FieldSpec;
use pwg_core::suite::{run_suite, SuiteConfig};

use format::{
    example_document, load_field, map_record, parse_field_flag, render_document, Built, Document,
    MapRecord, Resolver,
};

#[derive(Parser)]
#[command(name = "pwg", version, about = "Exact freeness and principality verdicts for finite Hopf coactions")]
struct Cli {
    /// Scalar field: Q or F<p>. Must agree with the document field.
    #[arg(long, global = true)]
    field: Option<String>,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    output: Output,
    /// Seed for randomized self-checks inside the suite.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the structural axioms of a named object.
    Verify { input: PathBuf, name: String },
    /// Decide bijectivity of the canonical map of a coaction.
    Can {
        input: PathBuf,
        name: String,
        /// Subalgebra object to use as the base ring (default: the
        /// coaction invariants, or the declared base of an extension).
        #[arg(long)]
        base: Option<String>,
    },
    /// Solve for a strong connection and re-verify it.
    Connection { input: PathBuf, name: String },
    /// Check bijectivity of the comodule shear maps pairwise.
    Monoidal {
        input: PathBuf,
        name: String,
        /// Comma-separated comodule names; built-ins are trivial, H,
        /// H-contragredient. Empty means the default family.
        #[arg(long, value_delimiter = ',')]
        comodules: Vec<String>,
    },
    /// Check a fibred coaction globally and fiberwise.
    Fibred { input: PathBuf, name: String },
    /// Decide regularity of a finite covering two ways.
    Cover { input: PathBuf, name: String },
    /// Sweep all group actions up to bounds and run the agreement battery.
    Suite {
        #[arg(long, default_value_t = 8)]
        max_points: usize,
        #[arg(long, default_value_t = 6)]
        max_order: usize,
    },
    /// Emit a named example as a self-contained document (no name: list examples).
    Gen { name: Option<String> },
}

#[derive(Serialize)]
struct RankData {
    domain: usize,
    codomain: usize,
    rank: usize,
    injective: bool,
    surjective: bool,
    bijective: bool,
}

/// One report per invocation. Identical inputs produce byte-identical
/// reports except for `duration_ms`, which is always last.
#[derive(Serialize)]
struct Report {
    command: String,
    object: String,
    field: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    notes: Vec<String>,
    checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rank: Option<RankData>,
    #[serde(skip_serializing_if = "Option::is_none")]
    connection: Option<MapRecord>,
    verdict: &'static str,
    duration_ms: u128,
}

impl Report {
    fn new(command: &str, object: &str, field: FieldSpec) -> Report {
        Report {
            command: command.into(),
            object: object.into(),
            field: field.to_string(),
            notes: Vec::new(),
            checks: Vec::new(),
            rank: None,
            connection: None,
            verdict: "pass",
            duration_ms: 0,
        }
    }

    fn check(&mut self, name: &str, ok: bool, detail: Option<String>, witness: Option<String>) {
        self.checks.push(Check {
            name: name.into(),
            status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
            detail,
            witness: if ok { None } else { witness },
        });
    }

    fn skip(&mut self, name: &str, reason: String) {
        self.checks.push(Check { name: name.into(), status: CheckStatus::Skip, detail: Some(reason), witness: None });
    }

    fn absorb(&mut self, rep: pwg_core::report::VerificationReport) {
        self.checks.extend(rep.checks);
    }

    /// Verdict from the recorded checks: pass iff nothing failed.
    fn settle(&mut self) -> bool {
        let ok = self.checks.iter().all(|c| c.status != CheckStatus::Fail);
        self.verdict = if ok { "pass" } else { "fail" };
        ok
    }
}

fn render(report: &Report, output: Output) -> String {
    use std::fmt::Write;
    match output {
        Output::Json => {
            let mut s =
                serde_json::to_string_pretty(report).expect("report serialization is infallible");
            s.push('\n');
            s
        }
        Output::Text => {
            let mut s = String::new();
            writeln!(s, "command: {}", report.command).unwrap();
            if !report.object.is_empty() {
                writeln!(s, "object: {}", report.object).unwrap();
            }
            writeln!(s, "field: {}", report.field).unwrap();
            for n in &report.notes {
                writeln!(s, "note: {n}").unwrap();
            }
            for c in &report.checks {
                let status = match c.status {
                    CheckStatus::Pass => "pass",
                    CheckStatus::Fail => "fail",
                    CheckStatus::Skip => "skip",
                };
                write!(s, "check {}: {status}", c.name).unwrap();
                if let Some(d) = &c.detail {
                    write!(s, " ({d})").unwrap();
                }
                if let Some(w) = &c.witness {
                    write!(s, " [witness: {w}]").unwrap();
                }
                writeln!(s).unwrap();
            }
            if let Some(r) = &report.rank {
                writeln!(
                    s,
                    "rank: {}/{} (domain {}) injective={} surjective={} bijective={}",
                    r.rank, r.codomain, r.domain, r.injective, r.surjective, r.bijective
                )
                .unwrap();
            }
            if let Some(ell) = &report.connection {
                writeln!(s, "connection: {}x{}", ell.rows, ell.cols).unwrap();
                for (i, j, v) in &ell.entries {
                    writeln!(s, "  ell[{i},{j}] = {v}").unwrap();
                }
            }
            writeln!(s, "verdict: {}", report.verdict).unwrap();
            writeln!(s, "duration_ms: {}", report.duration_ms).unwrap();
            s
        }
    }
}

/// Writes to stdout, tolerating a closed pipe: the exit code still
/// carries the verdict when the reader hangs up early.
fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("error: cannot write report: {e}");
        }
    }
}

/// What a command hands back: a structured report, or raw text that
/// must reach stdout untouched (generated documents).
enum Outcome {
    Report(Box<Report>, i32),
    Raw(String, i32),
}

fn report_outcome(report: Report, code: i32) -> Result<Outcome> {
    Ok(Outcome::Report(Box::new(report), code))
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(run(&cli));
}

fn run(cli: &Cli) -> i32 {
    let started = Instant::now();
    match dispatch(cli) {
        Ok(Outcome::Report(mut report, code)) => {
            report.duration_ms = started.elapsed().as_millis();
            emit(&render(&report, cli.output));
            code
        }
        Ok(Outcome::Raw(text, code)) => {
            emit(&text);
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Cmd::Verify { input, name } => cmd_verify(cli, input, name),
        Cmd::Can { input, name, base } => cmd_can(cli, input, name, base.as_deref()),
        Cmd::Connection { input, name } => cmd_connection(cli, input, name),
        Cmd::Monoidal { input, name, comodules } => cmd_monoidal(cli, input, name, comodules),
        Cmd::Fibred { input, name } => cmd_fibred(cli, input, name),
        Cmd::Cover { input, name } => cmd_cover(cli, input, name),
        Cmd::Suite { max_points, max_order } => cmd_suite(cli, *max_points, *max_order),
        Cmd::Gen { name } => cmd_gen(cli, name.as_deref()),
    }
}

fn vec_string(v: &[pwg_core::scalar::Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(|s| s.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

fn load(path: &Path, flag: &Option<String>) -> Result<(FieldSpec, Document)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    let (field, doc) = load_field(&text)?;
    if let Some(f) = flag {
        let requested = parse_field_flag(f)?;
        if requested != field {
            return Err(Error::InvalidInput(format!(
                "--field {requested} conflicts with the document field {field}"
            )));
        }
    }
    Ok((field, doc))
}

/// Interprets an object as a coaction for the verdict commands,
/// auto-converting gsets, extensions, and Hopf self-coactions.
fn coaction_of(resolver: &mut Resolver, name: &str) -> Result<(CoactionData, Option<Subspace>, Vec<String>)> {
    let mut notes = Vec::new();
    let (c, base) = match resolver.build(name)? {
        Built::Hopf(h) => {
            notes.push("hopf object interpreted as its regular self-coaction".into());
            (CoactionData::new(h.algebra.clone(), h.clone(), h.comult().clone())?, None)
        }
        Built::Action { group, gset } => {
            notes.push(format!("gset converted to the coaction on functions, group {}", group.name));
            (gset_coaction(resolver.field(), &group, &gset)?, None)
        }
        Built::Coaction(c) => (c, None),
        Built::Extension(e) => {
            notes.push(format!("extension {} converted; base defaults to its scalar line", e.name));
            let (c, b) = e.coaction()?;
            (c, Some(b))
        }
        other => {
            return Err(Error::InvalidInput(format!(
                "\"{name}\" is a {}; this command needs a coaction, hopf, gset, or extension",
                other.kind()
            )))
        }
    };
    Ok((c, base, notes))
}

fn cmd_verify(cli: &Cli, input: &Path, name: &str) -> Result<Outcome> {
    let (field, doc) = load(input, &cli.field)?;
    let mut report = Report::new("verify", name, field);
    let mut resolver = Resolver::new(field, &doc);
    match resolver.build(name) {
        Ok(Built::Group(g)) => report.absorb(g.verify()),
        Ok(Built::Action { group, gset }) => {
            let rep = gset.verify(&group);
            let clean = rep.all_passed();
            report.absorb(rep);
            if clean {
                report.absorb(verify_coaction(&gset_coaction(field, &group, &gset)?));
            }
        }
        Ok(Built::Hopf(h)) => report.absorb(verify_hopf(&h)),
        Ok(Built::Coaction(c)) => report.absorb(verify_coaction(&c)),
        Ok(Built::Extension(e)) => {
            report.absorb(e.verify());
            let (c, _) = e.coaction()?;
            report.absorb(verify_coaction(&c));
        }
        Ok(Built::Covering(cov)) => report.absorb(cov.verify()),
        Ok(Built::Fibred(fc)) => report.absorb(fc.verify()?),
        Ok(Built::Comodule(m)) => report.absorb(verify_comodule(&m)),
        Ok(Built::Subalgebra { ambient, space }) => {
            let alg = match resolver.build(&ambient)? {
                Built::Hopf(h) => h.algebra.clone(),
                Built::Coaction(c) => c.algebra,
                Built::Extension(e) => e.algebra,
                other => {
                    return Err(Error::InvalidInput(format!(
                        "subalgebra ambient \"{ambient}\" is a {} without an algebra",
                        other.kind()
                    )))
                }
            };
            match subalgebra_structure(&alg, &space) {
                Ok(_) => report.check("multiplicatively closed with unit", true, Some(format!("dimension {}", space.dim())), None),
                Err(Error::StructureInvalid { failed, .. }) => {
                    report.check("multiplicatively closed with unit", false, None, Some(failed))
                }
                Err(e) => return Err(e),
            }
        }
        // Axiom failures caught by an eager constructor are a negative
        // verdict for this command, not an input error.
        Err(Error::StructureInvalid { subject, failed }) => {
            report.check(&format!("{subject} axioms"), false, None, Some(failed));
        }
        Err(e) => return Err(e),
    }
    let ok = report.settle();
    report_outcome(report, if ok { 0 } else { 1 })
}

fn cmd_can(cli: &Cli, input: &Path, name: &str, base: Option<&str>) -> Result<Outcome> {
    let (field, doc) = load(input, &cli.field)?;
    let mut report = Report::new("can", name, field);
    let mut resolver = Resolver::new(field, &doc);
    let (c, mut declared, notes) = coaction_of(&mut resolver, name)?;
    report.notes = notes;
    if let Some(base_name) = base {
        match resolver.build(base_name)? {
            Built::Subalgebra { space, .. } => {
                if space.ambient_dim() != c.dim() {
                    return Err(Error::DimensionMismatch(format!(
                        "base \"{base_name}\" lives in dimension {}, the coaction in {}",
                        space.ambient_dim(),
                        c.dim()
                    )));
                }
                report.notes.push(format!("base taken from subalgebra \"{base_name}\""));
                declared = Some(space);
            }
            other => {
                return Err(Error::InvalidInput(format!(
                    "--base \"{base_name}\" is a {}, not a subalgebra",
                    other.kind()
                )))
            }
        }
    }
    let rep = canonical_map(&c, declared.as_ref())?;
    report.check("translation map well defined", rep.well_defined, None, rep.well_defined_witness.clone());
    if rep.relative.base_equals_invariants {
        report.check("base equals invariants", true, None, None);
    } else {
        report.skip(
            "base equals invariants",
            "declared base is a proper subalgebra of the invariants; the verdict is relative to it".into(),
        );
    }
    let witness = rep
        .matrix
        .as_ref()
        .filter(|_| !rep.injective)
        .and_then(|m| m.kernel_basis().into_iter().next())
        .map(|v| format!("kernel vector {}", vec_string(&v)))
        .unwrap_or_else(|| format!("rank {} of {}", rep.rank, rep.codomain_dim));
    report.check(
        "canonical map bijective",
        rep.bijective,
        Some(format!("rank {}/{}", rep.rank, rep.codomain_dim)),
        Some(witness),
    );
    report.rank = Some(RankData {
        domain: rep.domain_dim,
        codomain: rep.codomain_dim,
        rank: rep.rank,
        injective: rep.injective,
        surjective: rep.surjective,
        bijective: rep.bijective,
    });
    let ok = report.settle();
    report_outcome(report, if ok { 0 } else { 1 })
}

fn cmd_connection(cli: &Cli, input: &Path, name: &str) -> Result<Outcome> {
    let (field, doc) = load(input, &cli.field)?;
    let mut report = Report::new("connection", name, field);
    let mut resolver = Resolver::new(field, &doc);
    let (c, _, notes) = coaction_of(&mut resolver, name)?;
    report.notes = notes;
    match strong_connection_solve(&c)? {
        Some(conn) => {
            report.check("strong connection exists", true, None, None);
            report.absorb(conn.verify(&c)?);
            report.connection = Some(map_record(&conn.ell));
        }
        None => {
            report.check(
                "strong connection exists",
                false,
                None,
                Some("infeasible: the unital bicolinear section constraints have no solution".into()),
            );
        }
    }
    let ok = report.settle();
    report_outcome(report, if ok { 0 } else { 1 })
}

fn cmd_monoidal(cli: &Cli, input: &Path, name: &str, comodules: &[String]) -> Result<Outcome> {
    let (field, doc) = load(input, &cli.field)?;
    let mut report = Report::new("monoidal", name, field);
    let mut resolver = Resolver::new(field, &doc);
    let (c, _, notes) = coaction_of(&mut resolver, name)?;
    report.notes = notes;

    let default_family = comodules.is_empty();
    let family: Vec<(String, ComoduleData)> = if default_family {
        report.notes.push("no comodules listed; defaults applied: trivial, H, H-contragredient".into());
        default_monoidal_family(&c)?
    } else {
        let mut fam = Vec::new();
        for n in comodules {
            let m = if doc.objects.contains_key(n) {
                match resolver.build(n)? {
                    Built::Comodule(m) => {
                        if m.hopf.dim() != c.hopf.dim() {
                            return Err(Error::DimensionMismatch(format!(
                                "comodule \"{n}\" is over a Hopf algebra of dimension {}, the coaction over {}",
                                m.hopf.dim(),
                                c.hopf.dim()
                            )));
                        }
                        m
                    }
                    other => {
                        return Err(Error::InvalidInput(format!(
                            "\"{n}\" is a {}, not a comodule",
                            other.kind()
                        )))
                    }
                }
            } else {
                match n.as_str() {
                    "trivial" => ComoduleData::trivial(c.hopf.clone(), Side::Left, 1),
                    "H" => ComoduleData::regular(c.hopf.clone(), Side::Left),
                    "H-contragredient" => {
                        pwg_core::comodule::contragredient(&ComoduleData::regular(c.hopf.clone(), Side::Left))?
                    }
                    _ => {
                        let mut available: Vec<String> = doc
                            .objects
                            .iter()
                            .filter(|(_, r)| r.kind() == "comodule")
                            .map(|(k, _)| k.clone())
                            .collect();
                        available.extend(["trivial".into(), "H".into(), "H-contragredient".into()]);
                        return Err(Error::InvalidInput(format!(
                            "comodule \"{n}\" does not resolve; available: {}",
                            available.join(", ")
                        )));
                    }
                }
            };
            fam.push((n.clone(), m));
        }
        fam
    };

    let (aggregate, rows) = monoidal_check(&c, &family)?;
    for (pair, rep) in &rows {
        report.check(
            &format!("beta {pair} bijective"),
            rep.bijective,
            Some(format!("rank {}/{}", rep.rank, rep.codomain_dim)),
            rep.failure.clone().or_else(|| Some(format!("rank {} of {}", rep.rank, rep.codomain_dim))),
        );
    }
    let can = canonical_map(&c, None)?;
    if can.bijective {
        report.check(
            "matches canonical-map verdict",
            aggregate,
            Some("canonical map bijective".into()),
            Some("canonical map is bijective but a shear map fails".into()),
        );
    } else if default_family {
        report.check(
            "matches canonical-map verdict",
            !aggregate,
            Some("canonical map not bijective".into()),
            Some("canonical map fails but every default shear map is bijective".into()),
        );
    } else if !aggregate {
        report.check("matches canonical-map verdict", true, Some("canonical map not bijective".into()), None);
    } else {
        report.skip(
            "matches canonical-map verdict",
            "user-selected family is inconclusive for a failing canonical map; rerun without --comodules".into(),
        );
    }
    let consistent = report.settle();
    report_outcome(report, if consistent { 0 } else { 1 })
}

fn cmd_fibred(cli: &Cli, input: &Path, name: &str) -> Result<Outcome> {
    let (field, doc) = load(input, &cli.field)?;
    let mut report = Report::new("fibred", name, field);
    let mut resolver = Resolver::new(field, &doc);
    let fc = match resolver.build(name)? {
        Built::Fibred(fc) => fc,
        other => {
            return Err(Error::InvalidInput(format!(
                "\"{name}\" is a {}, not a fibred coaction",
                other.kind()
            )))
        }
    };
    let rep = fibred_pwg_check(&fc)?;
    report.absorb(rep.structure.clone());
    let offending: Vec<String> = rep
        .fiber_cans
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.bijective)
        .map(|(i, _)| format!("fiber {i}"))
        .collect();
    report.check(
        "global canonical map bijective",
        rep.global.bijective,
        Some(format!("rank {}/{}", rep.global.rank, rep.global.codomain_dim)),
        Some(if offending.is_empty() {
            format!("rank {} of {}", rep.global.rank, rep.global.codomain_dim)
        } else {
            format!("offending {}", offending.join(", "))
        }),
    );
    for (i, c) in rep.fiber_cans.iter().enumerate() {
        report.check(
            &format!("fiber {i} canonical map bijective"),
            c.bijective,
            Some(format!("rank {}/{}", c.rank, c.codomain_dim)),
            Some(format!("rank {} of {}", c.rank, c.codomain_dim)),
        );
    }
    report.check(
        "global verdict equals conjunction of fiber verdicts",
        rep.equivalence_holds,
        None,
        Some("fiberwise and global freeness disagree".into()),
    );
    report.check("fiber dimensions sum to the total", rep.dimensions_add_up, None, None);
    report.check(
        "restriction diagram commutes",
        rep.diagram_commutes,
        None,
        Some("can followed by restriction differs from fiber can".into()),
    );
    report.rank = Some(RankData {
        domain: rep.global.domain_dim,
        codomain: rep.global.codomain_dim,
        rank: rep.global.rank,
        injective: rep.global.injective,
        surjective: rep.global.surjective,
        bijective: rep.global.bijective,
    });
    let ok = report.settle();
    report_outcome(report, if ok { 0 } else { 1 })
}

fn cmd_cover(cli: &Cli, input: &Path, name: &str) -> Result<Outcome> {
    let (field, doc) = load(input, &cli.field)?;
    let mut report = Report::new("cover", name, field);
    let mut resolver = Resolver::new(field, &doc);
    let cov = match resolver.build(name)? {
        Built::Covering(cov) => cov,
        other => {
            return Err(Error::InvalidInput(format!(
                "\"{name}\" is a {}, not a covering",
                other.kind()
            )))
        }
    };
    let rep = covering_regularity_check(field, &cov)?;
    report.absorb(rep.input.clone());
    report.check(
        "deck group free and transitive on every fiber",
        rep.regular_combinatorial,
        None,
        Some("some fiber is not a single free deck orbit".into()),
    );
    report.check(
        "canonical map bijective over base functions",
        rep.regular_galois,
        Some(format!("rank {}/{}", rep.can.rank, rep.can.codomain_dim)),
        Some(format!("rank {} of {}", rep.can.rank, rep.can.codomain_dim)),
    );
    report.check(
        "combinatorial and algebraic verdicts agree",
        rep.verdicts_agree,
        None,
        Some("regularity and canonical-map verdicts differ".into()),
    );
    match rep.invariants_are_pullbacks {
        Some(ok) => report.check(
            "invariant functions are pullbacks from the base",
            ok,
            None,
            Some("an invariant function does not descend".into()),
        ),
        None => report.skip(
            "invariant functions are pullbacks from the base",
            rep.averaging_notice.clone().unwrap_or_else(|| "averaging unavailable".into()),
        ),
    }
    report.rank = Some(RankData {
        domain: rep.can.domain_dim,
        codomain: rep.can.codomain_dim,
        rank: rep.can.rank,
        injective: rep.can.injective,
        surjective: rep.can.surjective,
        bijective: rep.can.bijective,
    });
    let ok = report.settle();
    report_outcome(report, if ok { 0 } else { 1 })
}

fn cmd_suite(cli: &Cli, max_points: usize, max_order: usize) -> Result<Outcome> {
    let field = match &cli.field {
        Some(f) => parse_field_flag(f)?,
        None => FieldSpec::Rationals,
    };
    let cfg = SuiteConfig {
        field,
        max_group_order: max_order,
        max_points,
        fibred_max_fibers: 4,
        seed: cli.seed,
    };
    let outcome = run_suite(&cfg);
    let mut report = Report::new("suite", "", field);
    report.notes = outcome.lines.clone();
    report.notes.push(format!("{} violations", outcome.counters.violations()));
    if outcome.failures.is_empty() {
        report.check(
            "agreement battery",
            true,
            Some(format!(
                "groups={} actions={} fibred={} coverings={} skips={}",
                outcome.counters.groups,
                outcome.counters.actions,
                outcome.counters.fibred_assemblies,
                outcome.counters.coverings,
                outcome.counters.skipped_checks
            )),
            None,
        );
    } else {
        for f in &outcome.failures {
            report.check("agreement battery", false, None, Some(f.clone()));
        }
    }
    let ok = report.settle();
    report_outcome(report, if ok { 0 } else { 1 })
}

fn cmd_gen(cli: &Cli, name: Option<&str>) -> Result<Outcome> {
    let field = match &cli.field {
        Some(f) => parse_field_flag(f)?,
        None => FieldSpec::Rationals,
    };
    match name {
        Some(n) => {
            let doc = example_document(n, field)?;
            Ok(Outcome::Raw(render_document(&doc), 0))
        }
        None => {
            let listing = match cli.output {
                Output::Json => {
                    #[derive(Serialize)]
                    struct Entry<'a> {
                        name: &'a str,
                        summary: &'a str,
                        field: String,
                    }
                    let rows: Vec<Entry> = registry()
                        .into_iter()
                        .map(|e| Entry {
                            name: e.name,
                            summary: e.summary,
                            field: match e.fields {
                                FieldSupport::Any => "any".into(),
                                FieldSupport::Fixed(f) => f.to_string(),
                            },
                        })
                        .collect();
                    let mut s = serde_json::to_string_pretty(&rows)
                        .expect("listing serialization is infallible");
                    s.push('\n');
                    s
                }
                Output::Text => {
                    let mut s = String::new();
                    for e in registry() {
                        let field = match e.fields {
                            FieldSupport::Any => "any field".into(),
                            FieldSupport::Fixed(f) => format!("{f} only"),
                        };
                        s.push_str(&format!("{:<20} {} [{field}]\n", e.name, e.summary));
                    }
                    s
                }
            };
            Ok(Outcome::Raw(listing, 0))
        }
    }
}
