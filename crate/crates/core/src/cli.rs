//! The `schreier-lab` command line: loads documents, runs one operation and
//! prints a text or JSON report.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::classification::{
    action_table, are_equivalent, cl, classify_fiber, count_functor_classes, functor_exists,
    reduce_catgroup, reduced_class_is_trivial, Decision,
};
use crate::coefficients::{DMModule, GroupBundle};
use crate::cohomology::cohomology;
use crate::correspondence::{delta, sigma};
use crate::error::Error;
use crate::group::GroupHom;
use crate::groupoid::{validate_functor, validate_groupoid, FinMonoidalGroupoid};
use crate::io::{self, LoadOptions, Object};
use crate::monoid::MonoidHom;
use crate::report::ValidationReport;
use crate::schreier::{validate_morphism, validate_system, SchreierSystem};
use crate::selftest;

pub const EXIT_NO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;
pub const EXIT_OTHER: i32 = 5;

pub const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Debug, Parser)]
#[command(
    name = "schreier-lab",
    version,
    about = "Finite monoidal groupoids and Schreier systems"
)]
pub struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for the parallel validators and searches.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Candidate budget for exhaustive searches.
    #[arg(long, global = true, env = "SCHREIER_LAB_BUDGET", default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Load documents without checking the axioms (shapes are still checked).
    #[arg(long, global = true)]
    pub no_validate: bool,
    /// Seed recorded in reports; every command is deterministic.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a document against the axioms of its kind.
    Validate { file: PathBuf },
    /// Invariant factors of `H^n` of a strict module.
    Cohomology {
        #[arg(long)]
        base: Option<PathBuf>,
        #[arg(long)]
        module: PathBuf,
        #[arg(long)]
        degree: usize,
    },
    /// The monoidal groupoid of a Schreier system.
    Sigma {
        system: PathBuf,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// The Schreier system of a monoidal groupoid, via the canonical cleavage.
    Delta {
        groupoid: PathBuf,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Checks that a system is recovered exactly from its groupoid.
    Roundtrip { system: PathBuf },
    /// Decides whether two groupoids (or the groupoids of two systems) are equivalent.
    Equivalent { first: PathBuf, second: PathBuf },
    /// One system per class in `H^3` of a strict module.
    Classify {
        #[arg(long)]
        base: Option<PathBuf>,
        #[arg(long)]
        module: PathBuf,
        /// Writes `class-<i>.json` system documents here.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Counts functor classes of a given type between two groupoids or systems.
    CountFunctors {
        source: PathBuf,
        target: PathBuf,
        /// Underlying monoid map as comma separated images; identity by default.
        #[arg(long)]
        p: Option<String>,
        /// Group maps as a JSON list of element lists; identities by default.
        #[arg(long)]
        q: Option<String>,
    },
    /// Group action, reduced cocycle and its class for a system over a group.
    ReduceCatgroup { system: PathBuf },
    /// Runs the acceptance checks.
    Selftest {
        /// Run a single criterion.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=selftest::CRITERIA.len() as u64))]
        criterion: Option<u64>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::Cohomology { .. } => "cohomology",
            Command::Sigma { .. } => "sigma",
            Command::Delta { .. } => "delta",
            Command::Roundtrip { .. } => "roundtrip",
            Command::Equivalent { .. } => "equivalent",
            Command::Classify { .. } => "classify",
            Command::CountFunctors { .. } => "count-functors",
            Command::ReduceCatgroup { .. } => "reduce-catgroup",
            Command::Selftest { .. } => "selftest",
        }
    }
}

/// A finished command: the JSON report, its text rendering and exit code.
struct Outcome {
    report: serde_json::Value,
    text: String,
    code: i32,
}

fn outcome(report: serde_json::Value, text: String) -> Outcome {
    Outcome {
        report,
        text,
        code: 0,
    }
}

#[derive(Serialize)]
struct ViolationOut {
    condition: String,
    at: Vec<usize>,
    detail: String,
}

fn violations<C: std::fmt::Debug + PartialEq>(r: &ValidationReport<C>) -> Vec<ViolationOut> {
    r.violations()
        .iter()
        .map(|v| ViolationOut {
            condition: format!("{:?}", v.condition),
            at: v.at.clone(),
            detail: v.detail.clone(),
        })
        .collect()
}

fn error_class(e: &Error) -> (&'static str, i32) {
    match e {
        Error::Invalid { .. } => ("validation", EXIT_VALIDATION),
        Error::Parse { .. } => ("parse", EXIT_VALIDATION),
        Error::SearchBudgetExceeded { .. } => ("budget", EXIT_BUDGET),
        _ => ("computation", EXIT_OTHER),
    }
}

struct Context {
    opts: LoadOptions,
    budget: u64,
}

impl Context {
    fn load(&self, path: &Path) -> Result<Object, Error> {
        io::load(path, &self.opts)
    }

    fn load_module(&self, base: Option<&Path>, module: &Path) -> Result<Arc<DMModule>, Error> {
        let mut opts = self.opts.clone();
        if let Some(b) = base {
            opts.base = Some(io::into_monoid(io::load(b, &self.opts)?)?);
        }
        let bundle = match io::load(module, &opts)? {
            Object::System(s) => s.bundle().clone(),
            other => io::into_module(other)?,
        };
        Ok(Arc::new(DMModule::new(bundle)?))
    }

    /// A groupoid document, or the groupoid of a system document.
    fn load_groupoid(&self, path: &Path) -> Result<Arc<FinMonoidalGroupoid>, Error> {
        match self.load(path)? {
            Object::System(s) => Ok(Arc::new(sigma(&s))),
            other => io::into_groupoid(other),
        }
    }
}

fn summarize_bundle(b: &GroupBundle) -> String {
    let orders: Vec<usize> = b.groups().iter().map(|g| g.size()).collect();
    format!(
        "monoid of order {}, groups of orders {orders:?}",
        b.base().size()
    )
}

fn validate(ctx: &Context, file: &Path) -> Result<Outcome, Error> {
    // Load without checks so that the full report can be printed.
    let raw = LoadOptions {
        no_validate: true,
        base: ctx.opts.base.clone(),
    };
    let x = io::load(file, &raw)?;
    let (valid, list) = match &x {
        Object::Monoid(_) | Object::Group(_) => (true, Vec::new()),
        Object::Module(b) => {
            let r = b.validate(crate::coefficients::BundleMode::General);
            (r.is_valid(), violations(&r))
        }
        Object::System(s) => {
            let r = validate_system(s);
            (r.is_valid(), violations(&r))
        }
        Object::Morphism(m) => {
            let mut list = violations(&validate_system(&m.source));
            list.extend(violations(&validate_system(&m.target)));
            list.extend(violations(&validate_morphism(m)));
            (list.is_empty(), list)
        }
        Object::Groupoid(g) => {
            let r = validate_groupoid(g);
            (r.is_valid(), violations(&r))
        }
        Object::Functor(f) => {
            let mut list = violations(&validate_groupoid(&f.source));
            list.extend(violations(&validate_groupoid(&f.target)));
            list.extend(violations(&validate_functor(f)));
            (list.is_empty(), list)
        }
    };
    let kind = x.kind().name();
    let mut text = format!("{kind}: {}", if valid { "valid" } else { "INVALID" });
    for v in list.iter().take(20) {
        text.push_str(&format!("\n  {} at {:?}: {}", v.condition, v.at, v.detail));
    }
    if list.len() > 20 {
        text.push_str(&format!("\n  ... {} violations in total", list.len()));
    }
    let report = json!({"command": "validate", "kind": kind, "valid": valid, "violations": list});
    Ok(Outcome {
        report,
        text,
        code: if valid { 0 } else { EXIT_VALIDATION },
    })
}

fn cohomology_cmd(
    ctx: &Context,
    base: Option<&Path>,
    module: &Path,
    degree: usize,
) -> Result<Outcome, Error> {
    let m = ctx.load_module(base, module)?;
    let h = cohomology(&m, degree)?;
    let order = h.group().order().to_string();
    let factors = h.factors().to_vec();
    let text = format!("H^{degree}: invariant factors {factors:?}, order {order}");
    Ok(outcome(
        json!({"command": "cohomology", "degree": degree, "factors": factors, "order": order}),
        text,
    ))
}

fn write_document(path: Option<&Path>, x: &Object) -> Result<Option<String>, Error> {
    match path {
        Some(p) => {
            io::save(p, x).map_err(|e| Error::Parse {
                line: 0,
                column: 0,
                message: format!("{}: {e}", p.display()),
            })?;
            Ok(Some(p.display().to_string()))
        }
        None => Ok(None),
    }
}

fn sigma_cmd(ctx: &Context, system: &Path, out: Option<&Path>) -> Result<Outcome, Error> {
    let s = io::into_system(ctx.load(system)?)?;
    let g = Arc::new(sigma(&s));
    let valid = validate_groupoid(&g).is_valid();
    let written = write_document(out, &Object::Groupoid(g.clone()))?;
    let text = format!(
        "monoidal groupoid with {} objects and {} morphisms; axioms {}",
        g.objects(),
        g.morphisms(),
        if valid { "hold" } else { "FAIL" }
    );
    Ok(outcome(
        json!({"command": "sigma", "objects": g.objects(), "morphisms": g.morphisms(), "valid": valid, "output": written}),
        text,
    ))
}

fn delta_cmd(ctx: &Context, groupoid: &Path, out: Option<&Path>) -> Result<Outcome, Error> {
    let g = io::into_groupoid(ctx.load(groupoid)?)?;
    let d = delta(&g)?;
    let valid = validate_system(&d.system).is_valid();
    let written = write_document(out, &Object::System(Arc::new(d.system.clone())))?;
    let text = format!(
        "Schreier system over a {}; conditions {}; representatives {:?}",
        summarize_bundle(d.system.bundle()),
        if valid { "hold" } else { "FAIL" },
        d.cleavage.reps
    );
    Ok(outcome(
        json!({
            "command": "delta",
            "classes": d.cleavage.reps.len(),
            "representatives": d.cleavage.reps,
            "valid": valid,
            "output": written,
        }),
        text,
    ))
}

fn roundtrip_cmd(ctx: &Context, system: &Path) -> Result<Outcome, Error> {
    let s = io::into_system(ctx.load(system)?)?;
    let equal = delta(&sigma(&s))?.system == *s;
    let text = format!("ΔΣ = id: {}", if equal { "PASS" } else { "FAIL" });
    Ok(Outcome {
        report: json!({"command": "roundtrip", "equal": equal}),
        text,
        code: if equal { 0 } else { EXIT_NO },
    })
}

fn equivalent_cmd(ctx: &Context, first: &Path, second: &Path) -> Result<Outcome, Error> {
    let g1 = ctx.load_groupoid(first)?;
    let g2 = ctx.load_groupoid(second)?;
    match are_equivalent(&g1, &g2, ctx.budget)? {
        Decision::Yes(c) => {
            let q: Vec<&Vec<usize>> = c.morphism.q.iter().map(|h| &h.map).collect();
            let text = format!(
                "YES: equivalent through a morphism of type p = {:?}, q = {q:?}",
                c.morphism.p.map
            );
            Ok(outcome(
                json!({
                    "command": "equivalent",
                    "equivalent": true,
                    "p": c.morphism.p.map,
                    "q": q,
                    "phi": c.morphism.phi,
                }),
                text,
            ))
        }
        Decision::No(counts) => Ok(Outcome {
            report: json!({
                "command": "equivalent",
                "equivalent": false,
                "monoid_isos": counts.monoid_isos,
                "module_isos": counts.module_isos,
            }),
            text: format!(
                "NO: no equivalence after {} monoid and {} module isomorphisms",
                counts.monoid_isos, counts.module_isos
            ),
            code: EXIT_NO,
        }),
    }
}

fn classify_cmd(
    ctx: &Context,
    base: Option<&Path>,
    module: &Path,
    out_dir: Option<&Path>,
) -> Result<Outcome, Error> {
    let m = ctx.load_module(base, module)?;
    let h3 = cohomology(&m, 3)?.factors().to_vec();
    let fiber = classify_fiber(&m)?;
    let mut classes = Vec::new();
    let mut text = format!("H^3 = {h3:?}: {} classes", fiber.len());
    for (i, c) in fiber.iter().enumerate() {
        let path = match out_dir {
            Some(dir) => {
                std::fs::create_dir_all(dir).map_err(|e| Error::Parse {
                    line: 0,
                    column: 0,
                    message: format!("{}: {e}", dir.display()),
                })?;
                write_document(
                    Some(&dir.join(format!("class-{i}.json"))),
                    &Object::System(Arc::new(c.system.clone())),
                )?
            }
            None => None,
        };
        text.push_str(&format!(
            "\n  class {:?}: lambda {:?}",
            c.class,
            c.system.lambda_table()
        ));
        classes.push(json!({"class": c.class, "lambda": c.system.lambda_table(), "output": path}));
    }
    Ok(outcome(
        json!({"command": "classify", "h3": h3, "classes": classes}),
        text,
    ))
}

fn parse_type(
    p: Option<&str>,
    q: Option<&str>,
    source: &SchreierSystem,
    target: &SchreierSystem,
) -> Result<(MonoidHom, Vec<GroupHom>), Error> {
    let usage = |m: String| Error::Parse {
        line: 0,
        column: 0,
        message: m,
    };
    let map: Vec<usize> = match p {
        Some(text) => text
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<usize>()
                    .map_err(|e| usage(format!("--p: {e}")))
            })
            .collect::<Result<_, _>>()?,
        None => source.base().elements().collect(),
    };
    let p = MonoidHom::new(
        source.bundle().base().clone(),
        target.bundle().base().clone(),
        map,
    )?;
    let q = match q {
        Some(text) => serde_json::from_str::<Vec<Vec<usize>>>(text)
            .map_err(|e| usage(format!("--q: {e}")))?
            .into_iter()
            .map(|map| GroupHom { map })
            .collect(),
        None => source
            .bundle()
            .groups()
            .iter()
            .map(GroupHom::identity)
            .collect(),
    };
    Ok((p, q))
}

fn count_functors_cmd(
    ctx: &Context,
    source: &Path,
    target: &Path,
    p: Option<&str>,
    q: Option<&str>,
) -> Result<Outcome, Error> {
    let g1 = ctx.load_groupoid(source)?;
    let g2 = ctx.load_groupoid(target)?;
    let s1 = delta(&g1)?.system;
    let s2 = delta(&g2)?.system;
    let (p, q) = parse_type(p, q, &s1, &s2)?;
    let exists = functor_exists(&g1, &g2, &p, &q)?;
    let classes = count_functor_classes(&g1, &g2, &p, &q, false)?;
    let (count, h2) = match &classes {
        Some(c) => (Some(c.count.to_string()), Some(c.h2.factors().to_vec())),
        None => (None, None),
    };
    let text = match &count {
        Some(n) => format!(
            "{n} classes of functors of this type (a torsor under H^2 = {:?})",
            h2.as_ref().unwrap()
        ),
        None => "no functor of this type: the classes do not match".to_string(),
    };
    Ok(outcome(
        json!({"command": "count-functors", "exists": exists, "count": count, "h2": h2}),
        text,
    ))
}

fn reduce_catgroup_cmd(ctx: &Context, system: &Path) -> Result<Outcome, Error> {
    let s = io::into_system(ctx.load(system)?)?;
    let r = reduce_catgroup(&s)?;
    let action: Vec<Vec<usize>> = action_table(&r).into_iter().map(|h| h.map).collect();
    let h3 = r.complex.cohomology(3)?.factors().to_vec();
    let trivial = reduced_class_is_trivial(&r)?;
    let class = cl(&r.embedded).map(|c| c.class).ok();
    let text = format!(
        "action on A_1: {action:?}; H^3 of the group = {h3:?}; reduced cocycle {}",
        if trivial {
            "is a coboundary"
        } else {
            "is not a coboundary"
        }
    );
    Ok(outcome(
        json!({
            "command": "reduce-catgroup",
            "action": action,
            "h3": h3,
            "class_trivial": trivial,
            "class": class,
        }),
        text,
    ))
}

fn selftest_cmd(criterion: Option<u64>) -> Result<Outcome, Error> {
    let outcomes = match criterion {
        Some(id) => vec![selftest::run_criterion(id as usize)],
        None => selftest::run_all(),
    };
    let passed = outcomes.iter().all(selftest::CriterionOutcome::passed);
    let text = outcomes
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Outcome {
        report: json!({"command": "selftest", "passed": passed, "criteria": outcomes}),
        text,
        code: if passed { 0 } else { EXIT_NO },
    })
}

fn dispatch(cli: &Cli) -> Result<Outcome, Error> {
    let ctx = Context {
        opts: LoadOptions {
            no_validate: cli.no_validate,
            base: None,
        },
        budget: cli.budget,
    };
    match &cli.command {
        Command::Validate { file } => validate(&ctx, file),
        Command::Cohomology {
            base,
            module,
            degree,
        } => cohomology_cmd(&ctx, base.as_deref(), module, *degree),
        Command::Sigma { system, out } => sigma_cmd(&ctx, system, out.as_deref()),
        Command::Delta { groupoid, out } => delta_cmd(&ctx, groupoid, out.as_deref()),
        Command::Roundtrip { system } => roundtrip_cmd(&ctx, system),
        Command::Equivalent { first, second } => equivalent_cmd(&ctx, first, second),
        Command::Classify {
            base,
            module,
            out_dir,
        } => classify_cmd(&ctx, base.as_deref(), module, out_dir.as_deref()),
        Command::CountFunctors {
            source,
            target,
            p,
            q,
        } => count_functors_cmd(&ctx, source, target, p.as_deref(), q.as_deref()),
        Command::ReduceCatgroup { system } => reduce_catgroup_cmd(&ctx, system),
        Command::Selftest { criterion } => selftest_cmd(*criterion),
    }
}

/// Runs a parsed command line, writing the report to `out`; returns the exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    if let Some(jobs) = cli.jobs {
        // Fails only if the pool was already built, which is harmless.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global();
    }
    let result = dispatch(cli);
    let (report, text, code) = match result {
        Ok(o) => (o.report, o.text, o.code),
        Err(e) => {
            let (class, code) = error_class(&e);
            let report = json!({
                "command": cli.command.name(),
                "error": {"class": class, "message": e.to_string()},
            });
            let _ = writeln!(err, "error ({class}): {e}");
            if !cli.json {
                return code;
            }
            (report, String::new(), code)
        }
    };
    let written = if cli.json {
        let mut report = report;
        report["seed"] = json!(cli.seed);
        writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&report).expect("reports serialize")
        )
    } else {
        writeln!(out, "{text}")
    };
    if written.is_err() {
        return EXIT_OTHER;
    }
    code
}

pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { 0 };
        }
    };
    run(
        &cli,
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    )
}
