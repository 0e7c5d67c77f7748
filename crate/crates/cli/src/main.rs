//! `hurwitz`: command-line front end for Hurwitz fiber computations.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use hurwitz_core::analysis;
use hurwitz_core::covers::{symmetric_class_kind, CentralExtension, LiftingMap};
use hurwitz_core::fiberpower::goursat_sweep;
use hurwitz_core::hurwitz::{
    build_fiber, enumerate_tuples, search_plan, ActingGroup, Fiber, FiberMode, HurwitzParameter, TupleSet,
    DEFAULT_TUPLE_BUDGET,
};
use hurwitz_core::io;
use hurwitz_core::monodromy::{
    braid_generator_permutations, braid_orbits, conway_parker_report, mass_report, monodromy_report,
    MonodromyOptions, OrbitPartition,
};
use hurwitz_core::perm::DEFAULT_MEMORY_BUDGET;
use hurwitz_core::{Error, FiniteGroup, Permutation};

#[derive(Parser, Debug)]
#[command(name = "hurwitz", version, about = "Nielsen tuples, braid orbits and monodromy of Hurwitz fibers")]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Config {
    /// Maximum number of prefix visits during tuple enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_TUPLE_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    budget_tuples: u64,
    /// Maximum number of stored points in a stabilizer chain.
    #[arg(long, global = true, default_value_t = DEFAULT_MEMORY_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    memory_budget: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    threads: Option<u64>,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Fiber quotient: by inner automorphisms or by Aut(G, C).
    #[arg(long, global = true, value_enum)]
    mode: Option<Mode>,
    /// Cover file for label and class computations.
    #[arg(long, global = true)]
    cover: Option<PathBuf>,
    /// Seed for randomized group algorithms.
    #[arg(long, global = true, default_value_t = 0x6d6f_6e6f)]
    seed: u64,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Inn,
    Aut,
}

impl From<Mode> for FiberMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Inn => FiberMode::Inn,
            Mode::Aut => FiberMode::AutGC,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a parameter file (and a cover, if given).
    Validate { param: PathBuf },
    /// Sizes of the tuple set and of both fiber quotients.
    Fiber { param: PathBuf },
    /// Braid orbits on the fiber, with lifting labels when a cover is given.
    Orbits { param: PathBuf },
    /// Monodromy group of the braid action on the fiber.
    Monodromy { param: PathBuf },
    /// Ambiguity and split/mixed/inert kind of every class.
    Classify { group: PathBuf, cover: PathBuf },
    /// Condition E for a list of classes, given by name or representative.
    ConditionE {
        cover: PathBuf,
        #[arg(required = true)]
        classes: Vec<String>,
    },
    /// Braid orbits against lifting labels (needs --cover).
    ConwayParker { param: PathBuf },
    /// Row-span check over all ordered pairs of fiber points.
    Goursat { param: PathBuf },
    /// Asymptotic mass predictions against actual fiber sizes.
    Mass { param: PathBuf },
    /// Regenerate the bundled group, cover and parameter files.
    DeriveFixtures {
        #[arg(default_value = "data")]
        dir: PathBuf,
    },
}

/// Failure carrying an optional partial report.
struct Failure {
    error: Error,
    partial: Option<Value>,
}

impl From<Error> for Failure {
    fn from(error: Error) -> Self {
        Failure { error, partial: None }
    }
}

type Outcome = Result<Value, Failure>;

struct Run {
    config: Config,
    inputs: Vec<Vec<u8>>,
    prefix_visits: u128,
}

impl Run {
    fn record(&mut self, path: &Path) -> Result<(), Error> {
        let bytes = fs::read(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        self.inputs.push(bytes);
        if let Some(group) = io::referenced_group_file(path).ok().flatten() {
            if group.exists() {
                self.inputs.push(fs::read(&group).map_err(|source| Error::Io {
                    path: group.display().to_string(),
                    source,
                })?);
            }
        }
        Ok(())
    }

    fn digest(&self) -> String {
        let mut h = Sha256::new();
        for input in &self.inputs {
            h.update((input.len() as u64).to_le_bytes());
            h.update(input);
        }
        format!("sha256:{:x}", h.finalize())
    }

    fn param(&mut self, path: &Path) -> Result<HurwitzParameter, Error> {
        self.record(path)?;
        io::load_parameter(path)
    }

    fn cover_for(&mut self, h: &HurwitzParameter) -> Result<Option<CentralExtension>, Error> {
        let Some(path) = self.config.cover.clone() else {
            return Ok(None);
        };
        self.record(&path)?;
        let e = io::load_cover(&path)?;
        if e.base().elements() != h.group().elements() {
            return Err(Error::Input(format!(
                "{}: cover base group differs from the parameter group",
                path.display()
            )));
        }
        Ok(Some(e))
    }

    fn tuples(&mut self, h: &HurwitzParameter) -> Result<TupleSet, Error> {
        let plan = search_plan(h);
        self.prefix_visits = plan.prefix_visits;
        enumerate_tuples(h, self.config.budget_tuples)
    }

    fn mode(&self, default: FiberMode) -> FiberMode {
        self.config.mode.map_or(default, FiberMode::from)
    }

    fn fiber(&mut self, h: &HurwitzParameter, tuples: &TupleSet, mode: FiberMode) -> Fiber {
        build_fiber(h, tuples, ActingGroup::for_mode(h, mode), mode)
    }

    fn budget(&self) -> Value {
        json!({
            "tuple_limit": self.config.budget_tuples,
            "prefix_visits": self.prefix_visits.to_string(),
            "memory_budget": self.config.memory_budget,
        })
    }
}

fn mode_name(m: FiberMode) -> &'static str {
    match m {
        FiberMode::Inn => "inn",
        FiberMode::AutGC => "aut",
    }
}

fn class_summary(g: &FiniteGroup, h: &HurwitzParameter) -> Value {
    let names = analysis::class_names(g);
    json!(h.classes().iter().map(|&c| names[c].clone()).collect::<Vec<_>>())
}

fn generator_perms(f: &Fiber) -> Result<Vec<Permutation>, Error> {
    Ok(braid_generator_permutations(f)?.into_iter().map(|(_, p)| p).collect())
}

fn point_labels(lm: &LiftingMap, f: &Fiber) -> Result<Vec<u32>, Error> {
    (0..f.len()).map(|i| lm.label(f.point(i))).collect()
}

fn labeled_orbits(f: &Fiber, gens: &[Permutation], lm: Option<&LiftingMap>) -> Result<OrbitPartition, Error> {
    let orbits = braid_orbits(f.len(), gens);
    match lm {
        Some(lm) => {
            let labels = point_labels(lm, f)?;
            orbits
                .with_point_labels(&labels)
                .map_err(|i| Error::Internal(format!("lifting label not constant on orbit {i}")))
        }
        None => Ok(orbits),
    }
}

fn lifting_map(e: &CentralExtension, h: &HurwitzParameter) -> Result<LiftingMap, Error> {
    LiftingMap::new(&e.reduce(h.classes())?, h)
}

fn validate(run: &mut Run, param: &Path) -> Outcome {
    let h = run.param(param)?;
    let e = run.cover_for(&h)?;
    let g = h.group();
    Ok(json!({
        "valid": true,
        "group_order": g.order(),
        "classes": class_summary(g, &h),
        "nu": h.nu(),
        "n": h.n(),
        "cover_kernel_order": e.map(|e| e.kernel_order()),
    }))
}

fn fiber(run: &mut Run, param: &Path) -> Outcome {
    let h = run.param(param)?;
    let tuples = run.tuples(&h)?;
    let inn = run.fiber(&h, &tuples, FiberMode::Inn);
    let aut = run.fiber(&h, &tuples, FiberMode::AutGC);
    Ok(json!({
        "tuples": tuples.len(),
        "fiber_inn": inn.len(),
        "fiber_aut": aut.len(),
        "inn_order": inn.acting().order(),
        "aut_gc_order": aut.acting().order(),
    }))
}

fn orbits(run: &mut Run, param: &Path) -> Outcome {
    let h = run.param(param)?;
    let e = run.cover_for(&h)?;
    let tuples = run.tuples(&h)?;
    let mode = run.mode(FiberMode::Inn);
    let f = run.fiber(&h, &tuples, mode);
    let gens = generator_perms(&f)?;
    let lm = match (&e, mode) {
        (Some(e), FiberMode::Inn) => Some(lifting_map(e, &h)?),
        _ => None,
    };
    let part = labeled_orbits(&f, &gens, lm.as_ref())?;
    let mut out = json!({
        "mode": mode_name(mode),
        "fiber_size": f.len(),
        "orbit_count": part.count(),
        "orbit_sizes": part.sizes(),
        "labels": part.labels,
    });
    if e.is_some() && mode != FiberMode::Inn {
        out["note"] = json!("lifting labels are attached in inn mode only");
    }
    Ok(out)
}

fn monodromy(run: &mut Run, param: &Path) -> Outcome {
    let h = run.param(param)?;
    let tuples = run.tuples(&h)?;
    let mode = run.mode(FiberMode::AutGC);
    let other = if mode == FiberMode::Inn { FiberMode::AutGC } else { FiberMode::Inn };
    let f = run.fiber(&h, &tuples, mode);
    let other_size = run.fiber(&h, &tuples, other).len();
    let gens = generator_perms(&f)?;
    let opts = MonodromyOptions {
        memory_budget: run.config.memory_budget,
        seed: run.config.seed,
    };
    let report = monodromy_report(&f, gens, &opts);
    let mut sizes = Map::new();
    sizes.insert(mode_name(mode).into(), json!(f.len()));
    sizes.insert(mode_name(other).into(), json!(other_size));
    let per_orbit: Vec<Value> = report
        .per_orbit
        .iter()
        .map(|v| {
            let mut o = json!({
                "size": v.size,
                "order": v.order.as_ref().map(ToString::to_string),
                "full": v.full,
            });
            if let Some(b) = &v.blocks {
                o["blocks"] = json!({"block_size": b.block_size, "block_count": b.block_count});
            }
            o
        })
        .collect();
    let out = json!({
        "mode": mode_name(mode),
        "fiber_size": report.fiber_size,
        "fiber_sizes": sizes,
        "generator_count": report.generator_count,
        "orbit_sizes": report.orbits.sizes(),
        "group_order": report.group_order.as_ref().map(ToString::to_string),
        "per_orbit": per_orbit,
        "quasi_full": report.quasi_full,
        "truncated": report.truncated,
        "note": report.note,
    });
    if report.truncated {
        return Err(Failure {
            error: Error::Budget {
                what: "stabilizer chain storage",
                limit: opts.memory_budget,
                consumed: opts.memory_budget,
            },
            partial: Some(out),
        });
    }
    Ok(out)
}

fn classify(run: &mut Run, group: &Path, cover: &Path) -> Outcome {
    run.record(group)?;
    run.record(cover)?;
    let g = io::load_group(group)?;
    let e = io::load_cover(cover)?;
    if e.base().elements() != g.elements() {
        return Err(Error::Input("cover base group differs from the group file".into()).into());
    }
    let names = analysis::class_names(&g);
    let symmetric = g.order() == (1..=g.degree()).product::<usize>();
    let (kinds, note) = match e.classify_all() {
        Ok(k) => (Some(k), None),
        Err(Error::Unsupported(why)) => (None, Some(why)),
        Err(other) => return Err(other.into()),
    };
    let classes: Vec<Value> = g
        .conjugacy_classes()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let ct = g.element(c.representative).cycle_type();
            let mut o = json!({
                "name": names[i],
                "order": c.element_order,
                "size": c.size(),
                "representative": g.element(c.representative).to_string(),
                "ambiguous": analysis::is_ambiguous(&g, i),
            });
            if let Some(k) = &kinds {
                o["kind"] = json!(k[i].kind);
                o["lifted_class_count"] = json!(k[i].lifted_class_count);
                o["derived_orbit_count"] = json!(k[i].derived_orbit_count);
            }
            if symmetric {
                o["partition_rule"] = json!(symmetric_class_kind(&ct));
            }
            o
        })
        .collect();
    Ok(json!({
        "group_order": g.order(),
        "kernel_order": e.kernel_order(),
        "classes": classes,
        "note": note,
    }))
}

fn parse_class(g: &FiniteGroup, names: &[String], text: &str) -> Result<usize, Error> {
    if let Some(i) = names.iter().position(|n| n == text) {
        return Ok(i);
    }
    if text.trim_start().starts_with('(') {
        return io::select_class(g, &io::ClassSelector::Representative(text.to_owned()));
    }
    Err(Error::Input(format!("unknown class {text:?}; known names: {}", names.join(", "))))
}

fn condition_e(run: &mut Run, cover: &Path, classes: &[String]) -> Outcome {
    run.record(cover)?;
    let e = io::load_cover(cover)?;
    let g = e.base();
    let names = analysis::class_names(g);
    let list = classes
        .iter()
        .map(|c| parse_class(g, &names, c))
        .collect::<Result<Vec<_>, _>>()?;
    let by_pairing = e.condition_e(&list)?;
    let by_kinds = e.condition_e_by_classification(&list).ok();
    Ok(json!({
        "classes": list.iter().map(|&c| names[c].clone()).collect::<Vec<_>>(),
        "holds": by_pairing.holds,
        "h2": by_pairing.full,
        "h2_derived": by_pairing.derived,
        "witness": by_pairing.witness,
        "holds_by_classification": by_kinds,
        "routes_agree": by_kinds.map(|b| b == by_pairing.holds),
    }))
}

fn conway_parker(run: &mut Run, param: &Path) -> Outcome {
    let h = run.param(param)?;
    let e = run
        .cover_for(&h)?
        .ok_or_else(|| Error::Input("conway-parker needs --cover".into()))?;
    let tuples = run.tuples(&h)?;
    let f = run.fiber(&h, &tuples, FiberMode::Inn);
    let gens = generator_perms(&f)?;
    let lm = lifting_map(&e, &h)?;
    let part = labeled_orbits(&f, &gens, Some(&lm))?;
    let report = conway_parker_report(&part).expect("labels attached");
    Ok(json!({
        "fiber_size": f.len(),
        "orbit_sizes": part.sizes(),
        "reduced_kernel_order": lm.extension().kernel_order(),
        "report": report,
    }))
}

fn goursat(run: &mut Run, param: &Path) -> Outcome {
    let h = run.param(param)?;
    let tuples = run.tuples(&h)?;
    let mode = run.mode(FiberMode::AutGC);
    let f = run.fiber(&h, &tuples, mode);
    let report = goursat_sweep(&f)?;
    Ok(json!({ "mode": mode_name(mode), "report": report }))
}

fn mass(run: &mut Run, param: &Path) -> Outcome {
    let h = run.param(param)?;
    let e = run.cover_for(&h)?;
    let tuples = run.tuples(&h)?;
    let inn = run.fiber(&h, &tuples, FiberMode::Inn);
    let aut = run.fiber(&h, &tuples, FiberMode::AutGC);
    let per_label = match &e {
        Some(e) => {
            let lm = lifting_map(e, &h)?;
            let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
            for l in point_labels(&lm, &inn)? {
                *counts.entry(l).or_default() += 1;
            }
            Some((counts.into_iter().collect::<Vec<_>>(), lm.extension().kernel_order()))
        }
        None => None,
    };
    let report = mass_report(
        &h,
        aut.acting().order(),
        Some(inn.len()),
        Some(aut.len()),
        per_label.as_ref().map(|(v, k)| (v.as_slice(), *k)),
    );
    Ok(json!({ "report": report }))
}

fn derive_fixtures(dir: &Path) -> Outcome {
    let written = io::write_bundled_files(dir)?;
    let mut files: Vec<String> = written
        .iter()
        .map(|p| p.strip_prefix(dir).unwrap_or(p).display().to_string())
        .collect();
    files.sort();
    Ok(json!({ "written": files }))
}

fn dispatch(run: &mut Run, command: &Command) -> Outcome {
    match command {
        Command::Validate { param } => validate(run, param),
        Command::Fiber { param } => fiber(run, param),
        Command::Orbits { param } => orbits(run, param),
        Command::Monodromy { param } => monodromy(run, param),
        Command::Classify { group, cover } => classify(run, group, cover),
        Command::ConditionE { cover, classes } => condition_e(run, cover, classes),
        Command::ConwayParker { param } => conway_parker(run, param),
        Command::Goursat { param } => goursat(run, param),
        Command::Mass { param } => mass(run, param),
        Command::DeriveFixtures { dir } => derive_fixtures(dir),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate { .. } => "validate",
        Command::Fiber { .. } => "fiber",
        Command::Orbits { .. } => "orbits",
        Command::Monodromy { .. } => "monodromy",
        Command::Classify { .. } => "classify",
        Command::ConditionE { .. } => "condition-e",
        Command::ConwayParker { .. } => "conway-parker",
        Command::Goursat { .. } => "goursat",
        Command::Mass { .. } => "mass",
        Command::DeriveFixtures { .. } => "derive-fixtures",
    }
}

fn envelope(run: &Run, command: &Command, body: Value) -> Value {
    let mut out = Map::new();
    out.insert("command".into(), json!(command_name(command)));
    out.insert("input_digest".into(), json!(run.digest()));
    out.insert("budget".into(), run.budget());
    if let Value::Object(fields) = body {
        for (k, v) in fields {
            out.insert(k, v);
        }
    }
    Value::Object(out)
}

fn emit(run: &Run, value: &Value) -> Result<(), Error> {
    let mut text = serde_json::to_string_pretty(value).expect("json");
    text.push('\n');
    match &run.config.out {
        Some(path) => fs::write(path, text).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.config.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t as usize).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let command = cli.command;
    let mut run = Run {
        config: cli.config,
        inputs: Vec::new(),
        prefix_visits: 0,
    };
    let result = dispatch(&mut run, &command);
    match result {
        Ok(body) => {
            let value = envelope(&run, &command, body);
            match emit(&run, &value) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
            }
        }
        Err(Failure { error, partial }) => {
            eprintln!("error: {error}");
            if error.is_budget_error() {
                let mut body = partial.unwrap_or_else(|| json!({}));
                body["truncated"] = json!(true);
                body["error"] = json!(error.to_string());
                let _ = emit(&run, &envelope(&run, &command, body));
                ExitCode::from(3)
            } else if error.is_input_error() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
