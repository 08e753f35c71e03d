//! Batch runner and report assembly.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rayon::prelude::*;
use serde_json::json;

use crate::error::AlgebraError;
use crate::fock::{check_relation, check_relation_classical, check_relation_limit, OscillatorRep, Outcome, SAME};
use crate::green::{self, GreenAlgebra};
use crate::hopf::{self, HopfOps};
use crate::modl;
use crate::ncpoly::{Family, FreeElem, StarConvention};
use crate::qrat::ScalarQ;
use crate::relations::{self, RelationInstance, SigmaSign};
use crate::report::{CheckRecord, Conventions, Report};
use crate::scalar::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Classical,
    Relations,
    Hopf,
    Green,
    ModuleL,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Classical, Suite::Relations, Suite::Hopf, Suite::Green, Suite::ModuleL];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Classical => "classical",
            Suite::Relations => "relations",
            Suite::Hopf => "hopf",
            Suite::Green => "green",
            Suite::ModuleL => "module-l",
        }
    }

    /// Parses a comma-separated selector; `all` expands to every suite.
    pub fn parse_list(s: &str) -> Result<Vec<Suite>, String> {
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim) {
            match part {
                "all" => out.extend(Suite::ALL),
                "classical" => out.push(Suite::Classical),
                "relations" => out.push(Suite::Relations),
                "hopf" => out.push(Suite::Hopf),
                "green" => out.push(Suite::Green),
                "module-l" => out.push(Suite::ModuleL),
                other => return Err(format!("unknown suite `{other}`")),
            }
        }
        out.sort();
        out.dedup();
        if out.is_empty() {
            return Err("empty suite list".into());
        }
        Ok(out)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SigmaChoice {
    Plus,
    Minus,
    Auto,
}

impl FromStr for SigmaChoice {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "plus" => Ok(SigmaChoice::Plus),
            "minus" => Ok(SigmaChoice::Minus),
            "auto" => Ok(SigmaChoice::Auto),
            _ => Err(format!("invalid sigma `{s}`")),
        }
    }
}

impl SigmaChoice {
    pub fn name(self) -> &'static str {
        match self {
            SigmaChoice::Plus => "plus",
            SigmaChoice::Minus => "minus",
            SigmaChoice::Auto => "auto",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StarChoice {
    Plain,
    Graded,
    Auto,
}

impl FromStr for StarChoice {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "plain" => Ok(StarChoice::Plain),
            "graded" => Ok(StarChoice::Graded),
            "auto" => Ok(StarChoice::Auto),
            _ => Err(format!("invalid star `{s}`")),
        }
    }
}

impl StarChoice {
    pub fn name(self) -> &'static str {
        match self {
            StarChoice::Plain => "plain",
            StarChoice::Graded => "graded",
            StarChoice::Auto => "auto",
        }
    }
}

/// A numeric deformation parameter `q = s0²` with `s0 > 0` rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpotQ {
    pub q: Rational,
    pub s: Rational,
}

impl FromStr for SpotQ {
    type Err = String;
    fn from_str(text: &str) -> Result<Self, String> {
        let q: Rational = text.trim().parse().map_err(|_| format!("invalid rational `{text}`"))?;
        if !q.is_positive() {
            return Err("q must be positive".into());
        }
        if q.is_one() {
            return Err("q = 1 is a pole of the deformed relations".into());
        }
        let root = |x: &BigInt| -> Option<BigInt> {
            let r = x.sqrt();
            (&r * &r == *x).then_some(r)
        };
        match (root(q.numer()), root(q.denom())) {
            (Some(a), Some(b)) => Ok(SpotQ { s: Rational::new(a, b), q }),
            _ => Err(format!("q = {q} is not the square of a rational, so q^(1/2) is not rational")),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub family: Family,
    pub modes: usize,
    pub order: usize,
    pub cutoff: u32,
    pub suites: Vec<Suite>,
    pub sigma: SigmaChoice,
    pub star: StarChoice,
    pub q: Option<SpotQ>,
    pub jobs: usize,
    /// Test hook: perturbs the first deformed relation.
    pub corrupt_catalog: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            family: Family::Parafermi,
            modes: 2,
            order: 2,
            cutoff: 6,
            suites: Suite::ALL.to_vec(),
            sigma: SigmaChoice::Auto,
            star: StarChoice::Auto,
            q: None,
            jobs: 1,
            corrupt_catalog: false,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.modes == 0 {
            return Err("--modes must be at least 1".into());
        }
        if self.order == 0 {
            return Err("--order must be at least 1".into());
        }
        if self.cutoff == 0 {
            return Err("--cutoff must be at least 1".into());
        }
        if self.jobs == 0 {
            return Err("--jobs must be at least 1".into());
        }
        Ok(())
    }

    /// Everything that affects the checks; parallelism is left out so
    /// that serial and parallel reports coincide byte for byte.
    pub fn echo(&self) -> serde_json::Value {
        json!({
            "family": self.family.name(),
            "modes": self.modes,
            "order": self.order,
            "cutoff": self.cutoff,
            "suites": self.suites.iter().map(|s| s.name()).collect::<Vec<_>>(),
            "sigma": self.sigma.name(),
            "star": self.star.name(),
            "q": self.q.as_ref().map(|q| q.q.to_string()),
        })
    }
}

pub struct RunOutput {
    pub report: Report,
    pub timings: Vec<(Suite, Duration)>,
}

type Task<'a> = Box<dyn Fn() -> Vec<CheckRecord> + Send + Sync + 'a>;

fn rel_record(suite: &str, rel: &RelationInstance, res: Result<Outcome, AlgebraError>) -> CheckRecord {
    match res {
        Ok(o) => CheckRecord::new(suite, &rel.name, rel.indices.clone(), o, &rel.paper_ref),
        Err(e) => CheckRecord::error(suite, &rel.name, rel.indices.clone(), e, &rel.paper_ref),
    }
}

fn passes_all(rels: &[RelationInstance], rep: &OscillatorRep<ScalarQ>) -> bool {
    rels.par_iter().all(|r| check_relation(r, rep).map(|o| o.pass).unwrap_or(false))
}

/// The σ sign per trilinear family, with the surviving signs recorded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaSelection {
    pub i: SigmaSign,
    pub istar: SigmaSign,
    pub description: String,
}

pub fn select_sigma(choice: SigmaChoice, n: usize, f: Family, rep: &OscillatorRep<ScalarQ>) -> SigmaSelection {
    let fixed = |s: SigmaSign| SigmaSelection { i: s, istar: s, description: s.name().to_string() };
    match choice {
        SigmaChoice::Plus => fixed(SigmaSign::Plus),
        SigmaChoice::Minus => fixed(SigmaSign::Minus),
        SigmaChoice::Auto => {
            let signs = [SigmaSign::Plus, SigmaSign::Minus];
            let surv_i: Vec<SigmaSign> =
                signs.into_iter().filter(|&s| passes_all(&relations::i_relations(n, f, s), rep)).collect();
            let surv_is: Vec<SigmaSign> =
                signs.into_iter().filter(|&s| passes_all(&relations::istar_relations(n, f, s), rep)).collect();
            let names = |v: &[SigmaSign]| {
                if v.is_empty() {
                    "none".to_string()
                } else {
                    v.iter().map(|s| s.name()).collect::<Vec<_>>().join(",")
                }
            };
            let i = surv_i.first().copied().unwrap_or(SigmaSign::Plus);
            let istar = surv_is.first().copied().unwrap_or(SigmaSign::Plus);
            let chosen = if i == istar { i.name().to_string() } else { format!("I={},Istar={}", i.name(), istar.name()) };
            SigmaSelection {
                i,
                istar,
                description: format!("{chosen} (auto; I: {}; Istar: {})", names(&surv_i), names(&surv_is)),
            }
        }
    }
}

/// Star of every relation vanishes, and the star of each a⁺ Serre element
/// is a unit multiple of the matching a⁻ Serre element.
pub fn star_consistency(
    rels: &[RelationInstance],
    n: usize,
    f: Family,
    conv: StarConvention,
    rep: &OscillatorRep<ScalarQ>,
) -> Vec<CheckRecord> {
    let suite = "relations.star";
    let mut out: Vec<CheckRecord> = rels
        .par_iter()
        .filter_map(|r| {
            let e = r.as_free()?.star(conv);
            let starred = RelationInstance::free(&format!("star {}", r.name), f, r.indices.clone(), e, &r.paper_ref);
            Some(rel_record(suite, &starred, check_relation(&starred, rep)))
        })
        .collect();
    let pairs = relations::ii_tuples(n)
        .into_iter()
        .map(|t| ("II", t, relations::serre_ii as fn(Family, bool, usize, usize, usize) -> FreeElem<ScalarQ>))
        .chain(relations::iistar_tuples(n).into_iter().map(|t| ("IIstar", t, relations::serre_iistar as _)));
    for (name, (i1, i2, i3), build) in pairs {
        let image = build(f, true, i1, i2, i3).star(conv);
        let target = build(f, false, i1, i2, i3);
        let ok = relations::proportional(&image, &target).is_some();
        out.push(CheckRecord::new(
            suite,
            &format!("star matches lower {name}"),
            vec![i1 as i64, i2 as i64, i3 as i64],
            Outcome::from_bool(ok, || format!("star image {image}")),
            "a⁻ relations are the conjugates of the a⁺ relations",
        ));
    }
    out
}

#[derive(Clone, Debug)]
pub struct StarSelection {
    pub convention: StarConvention,
    pub description: String,
}

pub fn select_star(
    choice: StarChoice,
    rels: &[RelationInstance],
    n: usize,
    f: Family,
    rep: &OscillatorRep<ScalarQ>,
) -> StarSelection {
    match choice {
        StarChoice::Plain => StarSelection { convention: StarConvention::Plain, description: "plain".into() },
        StarChoice::Graded => StarSelection { convention: StarConvention::Graded, description: "graded".into() },
        StarChoice::Auto => {
            let surv: Vec<StarConvention> = [StarConvention::Plain, StarConvention::Graded]
                .into_iter()
                .filter(|&c| star_consistency(rels, n, f, c, rep).iter().all(|r| r.passed()))
                .collect();
            let convention = surv.first().copied().unwrap_or(StarConvention::Plain);
            let names: Vec<&str> = surv.iter().map(|c| c.name()).collect();
            let names = if names.is_empty() { "none".to_string() } else { names.join(",") };
            StarSelection { convention, description: format!("{} (auto; surviving: {names})", convention.name()) }
        }
    }
}

/// `π(a⁻_i)π(a⁺_j)|0⟩ = δ_ij|0⟩` in the order-one representation.
fn oscillator_vacuum(rep: &OscillatorRep<ScalarQ>) -> Vec<CheckRecord> {
    let f = rep.family();
    let n = rep.modes();
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            let x = &FreeElem::lower(f, i) * &FreeElem::raise(f, j);
            let res = rep.apply(&x, rep.vacuum(), SAME).map(|col| {
                let want: Vec<(usize, ScalarQ)> =
                    if i == j { vec![(rep.vacuum(), ScalarQ::one())] } else { Vec::new() };
                let got: Vec<(usize, ScalarQ)> = col.into_iter().collect();
                let ok = got == want;
                Outcome::from_bool(ok, || format!("{got:?}"))
            });
            out.push(match res {
                Ok(o) => CheckRecord::new("osc", "vacuum", vec![i as i64, j as i64], o, "vacuum normalization, order one"),
                Err(e) => CheckRecord::error("osc", "vacuum", vec![i as i64, j as i64], e, ""),
            });
        }
    }
    out
}

fn spot_check(rel: &RelationInstance, rep: &OscillatorRep<Rational>, s0: &Rational) -> Result<Outcome, AlgebraError> {
    let conv = |c: &ScalarQ| c.eval_at(s0);
    let Some(e) = rel.as_free() else {
        return Err(AlgebraError::InvalidParameter("spot check expects a free element".into()));
    };
    rep.check_zero(e, &rel.margin[0], &conv)
}

fn err_record(suite: &str, e: AlgebraError) -> CheckRecord {
    CheckRecord::error(suite, "setup", Vec::new(), e, "")
}

/// Runs the selected suites. Checks are distributed over `config.jobs`
/// workers; the report does not depend on the schedule.
pub fn run(config: &RunConfig) -> Result<RunOutput, String> {
    config.validate()?;
    let pool = rayon::ThreadPoolBuilder::new().num_threads(config.jobs).build().map_err(|e| e.to_string())?;
    pool.install(|| run_inner(config))
}

fn run_inner(config: &RunConfig) -> Result<RunOutput, String> {
    let f = config.family;
    let n = config.modes;
    let p = config.order;
    let d = config.cutoff;
    let rep = OscillatorRep::deformed(f, n, d).map_err(|e| e.to_string())?;
    let wants = |s: Suite| config.suites.contains(&s);
    let needs_rel = wants(Suite::Classical) || wants(Suite::Relations) || wants(Suite::Hopf);

    let sigma = if needs_rel {
        select_sigma(config.sigma, n, f, &rep)
    } else {
        SigmaSelection { i: SigmaSign::Plus, istar: SigmaSign::Plus, description: format!("{} (unused)", config.sigma.name()) }
    };
    let mut rels = if needs_rel { relations::deformed_relations_split(n, f, sigma.i, sigma.istar) } else { Vec::new() };
    if config.corrupt_catalog {
        if let Some(first) = rels.first_mut() {
            *first = first.perturbed();
        }
    }
    let star = if wants(Suite::Relations) {
        select_star(config.star, &rels, n, f, &rep)
    } else {
        let convention = match config.star {
            StarChoice::Graded => StarConvention::Graded,
            _ => StarConvention::Plain,
        };
        StarSelection { convention, description: format!("{} (unused)", config.star.name()) }
    };

    let mut checks = Vec::new();
    let mut timings = Vec::new();
    for &suite in &config.suites {
        let start = Instant::now();
        let records = match suite {
            Suite::Classical => classical_suite(f, n, d, &rels),
            Suite::Relations => relations_suite(config, &rels, &rep, star.convention),
            Suite::Hopf => hopf_suite(f, n, &rels, &rep),
            Suite::Green => green_suite(f, n, p, d, &rep),
            Suite::ModuleL => {
                let tasks: Vec<Task> =
                    vec![Box::new(|| modl::check_module(f, n)), Box::new(|| modl::check_serre_vanishing(&rep))];
                execute(tasks)
            }
        };
        checks.extend(records);
        timings.push((suite, start.elapsed()));
    }
    let conventions = Conventions { sigma: sigma.description, star: star.description };
    Ok(RunOutput { report: Report::new(config.echo(), checks, conventions), timings })
}

/// Runs tasks on the current pool; the results keep task order.
fn execute(tasks: Vec<Task<'_>>) -> Vec<CheckRecord> {
    tasks.par_iter().flat_map_iter(|t| t()).collect()
}

fn classical_suite(f: Family, n: usize, d: u32, rels: &[RelationInstance]) -> Vec<CheckRecord> {
    let classical = match OscillatorRep::<Rational>::classical(f, n, d) {
        Ok(r) => r,
        Err(e) => return vec![err_record("classical", e)],
    };
    let hybrid = OscillatorRep::hybrid_classical(f, n, d);
    let eq1 = relations::classical_relations(n, f);
    let mut tasks: Vec<Task> = Vec::new();
    for r in &eq1 {
        let classical = &classical;
        tasks.push(Box::new(move || vec![rel_record("classical", r, check_relation_classical(r, classical))]));
    }
    for r in rels {
        let hybrid = &hybrid;
        tasks.push(Box::new(move || vec![rel_record("classical.limit", r, check_relation_limit(r, hybrid))]));
    }
    execute(tasks)
}

fn relations_suite(
    config: &RunConfig,
    rels: &[RelationInstance],
    rep: &OscillatorRep<ScalarQ>,
    star: StarConvention,
) -> Vec<CheckRecord> {
    let f = config.family;
    let n = config.modes;
    let osc = relations::oscillator_relations(n, f);
    let chev = relations::chevalley_relations(n, f);
    let spot = config.q.as_ref().map(|q| (q.s.clone(), rep.specialize(&q.s)));
    let mut tasks: Vec<Task> = Vec::new();
    for r in rels {
        tasks.push(Box::new(move || vec![rel_record("relations", r, check_relation(r, rep))]));
    }
    for r in &osc {
        tasks.push(Box::new(move || vec![rel_record("osc", r, check_relation(r, rep))]));
    }
    for r in &chev {
        tasks.push(Box::new(move || vec![rel_record("chevalley", r, check_relation(r, rep))]));
    }
    tasks.push(Box::new(move || oscillator_vacuum(rep)));
    tasks.push(Box::new(move || star_consistency(rels, n, f, star, rep)));
    match &spot {
        Some((s0, Ok(srep))) => {
            for r in rels {
                tasks.push(Box::new(move || vec![rel_record("spot", r, spot_check(r, srep, s0))]));
            }
        }
        Some((_, Err(e))) => {
            let msg = e.to_string();
            tasks.push(Box::new(move || vec![CheckRecord::error("spot", "setup", Vec::new(), &msg, "")]));
        }
        None => {}
    }
    execute(tasks)
}

fn hopf_suite(f: Family, n: usize, rels: &[RelationInstance], rep: &OscillatorRep<ScalarQ>) -> Vec<CheckRecord> {
    let ops = HopfOps::new(f, n);
    let ops = &ops;
    let mut tasks: Vec<Task> = Vec::new();
    tasks.push(Box::new(move || hopf::check_hopf_axioms(ops, rep)));
    tasks.push(Box::new(move || hopf::check_coproduct_l(ops, rep)));
    for r in rels {
        tasks.push(Box::new(move || hopf::check_hopf_ideal(ops, std::slice::from_ref(r), rep)));
    }
    execute(tasks)
}

fn green_suite(f: Family, n: usize, p: usize, d: u32, rep: &OscillatorRep<ScalarQ>) -> Vec<CheckRecord> {
    let g = match GreenAlgebra::new(f, n, p) {
        Ok(g) => g,
        Err(e) => return vec![err_record("green", e)],
    };
    let g = &g;
    let anomalous = green::anomalous_catalog(f, n, p);
    let qops = green::qops_catalog(f, n, p);
    let (anomalous, qops) = (&anomalous, &qops);
    let mut tasks: Vec<Task> = Vec::new();
    tasks.push(Box::new(move || green::check_sum(g, rep)));
    tasks.push(Box::new(move || green::check_vacuum(g.hopf(), rep, p)));
    tasks.push(Box::new(move || green::check_component_star(g)));
    for rel in anomalous.iter().chain(qops.iter()) {
        tasks.push(Box::new(move || green::check_catalog(g, rep, std::slice::from_ref(rel))));
    }
    tasks.push(Box::new(move || {
        let mut all = anomalous.clone();
        all.extend(qops.iter().cloned());
        green::check_star_closure(&all, p)
    }));
    tasks.push(Box::new(move || {
        green::classical_green(f, n, p, d).unwrap_or_else(|e| vec![err_record("green.classical", e)])
    }));
    execute(tasks)
}
