//! Verification suites over the catalog or over enumerated instances, with
//! reports that are identical for any worker count.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits;
use crate::catalog::Catalog;
use crate::enumerate::{
    continuous_topologies, enumerate_monoid_tables, enumerate_topologies, random_open_ball_premetric,
    random_symmetric_base, small_groups,
};
use crate::error::{Error, Result};
use crate::finspace::FinSpace;
use crate::metrize::{distance_laws, generates_topology, ChainStrategy, CheckResult, CheckStatus, MetricBundle};
use crate::monoid::{Side, TopMonoid, Uniformity, UnitSide};
use crate::quniform::{CompleteRegularity, EntourageBase};
use crate::search::pool;

pub use crate::search::SCHEMA_VERSION;

/// Random symmetric bases checked by the rotundness suite.
pub const RANDOM_SYMMETRIC_BASES: usize = 50;
/// Random open-ball premetrics checked by the claims suite.
pub const RANDOM_PREMETRICS: usize = 100;
/// Largest monoid order enumerated by the monoids suite.
pub const SUITE_MONOID_MAX: usize = 3;
/// Largest group order enumerated by the monoids suite.
pub const SUITE_GROUP_MAX: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SuiteName {
    Claims,
    Separations,
    Monoids,
    Rotund,
}

impl SuiteName {
    pub const ALL: [SuiteName; 4] = [
        SuiteName::Claims,
        SuiteName::Separations,
        SuiteName::Monoids,
        SuiteName::Rotund,
    ];

    pub fn parse(s: &str) -> Result<SuiteName> {
        match s {
            "claims" => Ok(SuiteName::Claims),
            "separations" => Ok(SuiteName::Separations),
            "monoids" => Ok(SuiteName::Monoids),
            "rotund" => Ok(SuiteName::Rotund),
            other => Err(Error::UnknownSuite(other.into())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    Catalog,
    /// All carrier sizes from 1 up to the given one.
    Enumerated(usize),
}

impl Scope {
    /// `catalog`, `enumerated:N` or `enumerated(N)`.
    pub fn parse(s: &str) -> Result<Scope> {
        if s == "catalog" {
            return Ok(Scope::Catalog);
        }
        let n = s
            .strip_prefix("enumerated:")
            .or_else(|| s.strip_prefix("enumerated(").and_then(|r| r.strip_suffix(')')))
            .and_then(|n| n.parse::<usize>().ok())
            .ok_or_else(|| Error::Parse(format!("unknown scope `{s}` (expected catalog or enumerated:N)")))?;
        if n == 0 || n > crate::enumerate::ENUM_MAX {
            return Err(Error::TooLarge {
                n,
                max: crate::enumerate::ENUM_MAX,
            });
        }
        Ok(Scope::Enumerated(n))
    }
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scope::Catalog => write!(f, "catalog"),
            Scope::Enumerated(n) => write!(f, "enumerated:{n}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteOptions {
    pub workers: usize,
    pub seed: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { workers: 1, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub subject: String,
    #[serde(flatten)]
    pub check: CheckResult,
}

/// Facts recorded without a pass/fail verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Observation {
    pub subject: String,
    pub note: String,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub suite: SuiteName,
    pub scope: String,
    pub seed: u64,
    pub summary: Summary,
    pub entries: Vec<Entry>,
    pub observations: Vec<Observation>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Entry> {
        self.entries.iter().filter(|e| e.check.failed())
    }

    /// Summary line, then every failure, then the observations.
    pub fn to_text(&self) -> String {
        let s = &self.summary;
        let mut out = format!(
            "suite {:?} ({}), seed {}: {} passed, {} failed, {} skipped\n",
            self.suite, self.scope, self.seed, s.passed, s.failed, s.skipped
        )
        .to_lowercase();
        for e in self.failures() {
            if let CheckStatus::Failed { detail } = &e.check.status {
                out += &format!("FAIL {} {}: {}\n", e.subject, e.check.name, detail);
            }
        }
        for o in &self.observations {
            out += &format!("note {}: {}\n", o.subject, o.note);
        }
        out
    }
}

#[derive(Default)]
struct Out {
    entries: Vec<Entry>,
    observations: Vec<Observation>,
}

impl Out {
    fn push(&mut self, subject: &str, check: CheckResult) {
        self.entries.push(Entry {
            subject: subject.into(),
            check,
        });
    }

    fn extend(&mut self, subject: &str, checks: impl IntoIterator<Item = CheckResult>) {
        for c in checks {
            self.push(subject, c);
        }
    }

    fn check(&mut self, subject: &str, name: &str, failure: Option<String>) {
        let status = match failure {
            None => CheckStatus::Passed,
            Some(detail) => CheckStatus::Failed { detail },
        };
        self.push(
            subject,
            CheckResult {
                name: name.into(),
                status,
            },
        );
    }

    fn skip(&mut self, subject: &str, name: &str, reason: &str) {
        self.push(
            subject,
            CheckResult {
                name: name.into(),
                status: CheckStatus::Skipped { reason: reason.into() },
            },
        );
    }

    fn note(&mut self, subject: &str, note: String) {
        self.observations.push(Observation {
            subject: subject.into(),
            note,
        });
    }
}

type Job<'a> = Box<dyn Fn() -> Result<Out> + Send + Sync + 'a>;

fn run_jobs(jobs: Vec<(String, Job<'_>)>, workers: usize) -> Result<Out> {
    let pool = pool(workers)?;
    let outs: Vec<Out> = pool.install(|| {
        jobs.par_iter()
            .map(|(subject, job)| {
                job().unwrap_or_else(|e| {
                    let mut o = Out::default();
                    o.check(subject, "evaluation", Some(e.to_string()));
                    o
                })
            })
            .collect()
    });
    let mut all = Out::default();
    for o in outs {
        all.entries.extend(o.entries);
        all.observations.extend(o.observations);
    }
    Ok(all)
}

fn spaces_up_to(n: usize) -> Result<Vec<(String, FinSpace)>> {
    let mut out = vec![];
    for k in 1..=n {
        for (i, s) in enumerate_topologies(k)?.into_iter().enumerate() {
            out.push((format!("n{k}#{i}"), s));
        }
    }
    Ok(out)
}

pub fn run_suite(name: SuiteName, scope: Scope, opts: SuiteOptions) -> Result<Report> {
    let catalog = match scope {
        Scope::Catalog => Some(Catalog::load()?),
        Scope::Enumerated(_) => None,
    };
    let out = match name {
        SuiteName::Claims => claims(catalog.as_ref(), scope, opts)?,
        SuiteName::Separations => separations(catalog.as_ref(), scope, opts)?,
        SuiteName::Monoids => monoids(catalog.as_ref(), scope, opts)?,
        SuiteName::Rotund => rotund(catalog.as_ref(), scope, opts)?,
    };
    let mut summary = Summary::default();
    for e in &out.entries {
        match e.check.status {
            CheckStatus::Passed => summary.passed += 1,
            CheckStatus::Failed { .. } => summary.failed += 1,
            CheckStatus::Skipped { .. } => summary.skipped += 1,
        }
    }
    Ok(Report {
        schema_version: SCHEMA_VERSION,
        suite: name,
        scope: scope.to_string(),
        seed: opts.seed,
        summary,
        entries: out.entries,
        observations: out.observations,
    })
}

fn strategy_name(s: ChainStrategy) -> &'static str {
    match s {
        ChainStrategy::Coarsest => "coarsest",
        ChainStrategy::Finest => "finest",
    }
}

/// Every check of one bundle plus the general distance laws for `d` and
/// `d_reg` and uniformity of `d`.
fn bundle_checks(out: &mut Out, subject: &str, base: &EntourageBase, b: &MetricBundle) -> Result<()> {
    out.extend(subject, b.report.iter().cloned());
    out.check(
        subject,
        "d_is_uniform",
        (!base.saturate_mult().is_u_uniform(&b.d)?).then(|| "d is not uniform for the base".into()),
    );
    for (label, d) in [("d", &b.d), ("d_reg", &b.d_reg)] {
        out.extend(&format!("{subject}/{label}"), distance_laws(d, &b.space)?);
    }
    Ok(())
}

fn claims(cat: Option<&Catalog>, scope: Scope, opts: SuiteOptions) -> Result<Out> {
    let mut jobs: Vec<(String, Job)> = vec![];
    let spaces = match (cat, scope) {
        (Some(c), _) => c.spaces.clone(),
        (None, Scope::Enumerated(n)) => spaces_up_to(n)?,
        (None, Scope::Catalog) => unreachable!("catalog scope loads the catalog"),
    };
    if let Some(c) = cat {
        for (name, base) in &c.bases {
            for (i, member) in base.members().iter().enumerate() {
                for strategy in [ChainStrategy::Coarsest, ChainStrategy::Finest] {
                    let subject = format!("base:{name}/U{i}/{}", strategy_name(strategy));
                    let s2 = subject.clone();
                    jobs.push((
                        subject,
                        Box::new(move || {
                            let mut out = Out::default();
                            let b = MetricBundle::synthesize(base, None, member, strategy)?;
                            bundle_checks(&mut out, &s2, base, &b)?;
                            Ok(out)
                        }),
                    ));
                }
            }
            let subject = format!("base:{name}");
            let s2 = subject.clone();
            jobs.push((subject, Box::new(move || complete_regularity(&s2, base))));
        }
    }
    for (name, s) in spaces {
        let subject = format!("space:{name}");
        let s2 = subject.clone();
        jobs.push((
            subject,
            Box::new(move || {
                let mut out = Out::default();
                let base = EntourageBase::of_space(&s);
                let b = MetricBundle::synthesize(&base, Some(&s), &base.min_entourage(), ChainStrategy::Coarsest)?;
                bundle_checks(&mut out, &s2, &base, &b)?;
                Ok(out)
            }),
        ));
    }
    let pool_spaces: Vec<Vec<FinSpace>> = (1..=4).map(enumerate_topologies).collect::<Result<_>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for k in 0..RANDOM_PREMETRICS {
        let n = rng.random_range(1..=4usize);
        let s = pool_spaces[n - 1][rng.random_range(0..pool_spaces[n - 1].len())].clone();
        let d = random_open_ball_premetric(&mut rng, &s)?;
        let subject = format!("random-premetric:{k}");
        let s2 = subject.clone();
        jobs.push((
            subject,
            Box::new(move || {
                let mut out = Out::default();
                out.extend(&s2, distance_laws(&d, &s)?);
                Ok(out)
            }),
        ));
    }
    run_jobs(jobs, opts.workers)
}

/// A witness of uniform complete regularity must be uniform and
/// right-continuous.
fn complete_regularity(subject: &str, base: &EntourageBase) -> Result<Out> {
    let mut out = Out::default();
    let s = base.induced_topology();
    match base.uniform_regularity(&s)?.completely_regular {
        CompleteRegularity::Witnessed { route, premetric } => {
            let mut bad = vec![];
            if !premetric.is_right_continuous(&s)? {
                bad.push(format!("{route} witness is not right-continuous"));
            }
            if !base.saturate_mult().is_u_uniform(&premetric)? {
                bad.push(format!("{route} witness is not uniform"));
            }
            out.check(
                subject,
                "complete_regularity_witness",
                (!bad.is_empty()).then(|| bad.join("; ")),
            );
        }
        CompleteRegularity::Refuted { reason } => out.skip(subject, "complete_regularity_witness", &reason),
    }
    Ok(out)
}

fn closure_laws(s: &FinSpace) -> Option<String> {
    let full = s.full();
    for a in 0..=full {
        let c = s.closure(a);
        if !bits::is_subset(a, c) || s.closure(c) != c || s.interior(a) != full & !s.closure(full & !a) {
            return Some(format!("closure or interior law fails at {:?}", bits::to_points(a)));
        }
        let mut b = a;
        while b != 0 {
            b = (b - 1) & a;
            if !bits::is_subset(s.closure(b), c) {
                return Some(format!("closure is not monotone at {:?}", bits::to_points(a)));
            }
        }
    }
    None
}

fn separations(cat: Option<&Catalog>, scope: Scope, opts: SuiteOptions) -> Result<Out> {
    let spaces = match (cat, scope) {
        (Some(c), _) => c.spaces.clone(),
        (None, Scope::Enumerated(n)) => spaces_up_to(n)?,
        (None, Scope::Catalog) => unreachable!("catalog scope loads the catalog"),
    };
    let mut jobs: Vec<(String, Job)> = vec![];
    for (name, s) in &spaces {
        let subject = format!("space:{name}");
        let s2 = subject.clone();
        jobs.push((
            subject,
            Box::new(move || {
                let mut out = Out::default();
                let bad = s.classify().violated_implications();
                out.check(&s2, "separation_diagram", (!bad.is_empty()).then(|| bad.join(", ")));
                out.check(&s2, "closure_laws", closure_laws(s));
                Ok(out)
            }),
        ));
    }
    let mut out = run_jobs(jobs, opts.workers)?;
    // Converse of each arrow: a space with the conclusion but not the premise.
    let records: Vec<_> = spaces.iter().map(|(name, s)| (name, s.classify())).collect();
    let arrows = FinSpace::discrete(1)?.classify().implications();
    for (i, (arrow, _, _)) in arrows.iter().enumerate() {
        let witness = records.iter().find(|(_, r)| {
            let (_, p, c) = r.implications()[i];
            c && !p
        });
        let note = match witness {
            Some((name, _)) => format!("converse fails on {name}"),
            None => "no finite witness against the converse in this scope".into(),
        };
        out.note(&format!("converse:{arrow}"), note);
    }
    Ok(out)
}

fn nbhd_label(u: bits::Subset) -> String {
    format!("{:?}", bits::to_points(u)).replace(' ', "")
}

/// Every monoid-level check for one instance.
fn monoid_battery(subject: &str, m: &TopMonoid) -> Result<Out> {
    let mut out = Out::default();
    let k = m.unit_kind();
    let sh = m.shift_openness();
    let side = m.unit_side();
    let mut generating = vec![];

    let mut equivalence = |out: &mut Out, name: &str, w: Uniformity, unit: bool, shifts: bool| -> Result<()> {
        let gen = m.uniformity_generates_topology(w)?;
        if gen {
            generating.push(w);
        }
        let agree = gen == unit && unit == shifts;
        out.check(
            subject,
            name,
            (!agree).then(|| format!("generates={gen}, open unit={unit}, open shifts={shifts}")),
        );
        Ok(())
    };
    if matches!(side, UnitSide::Two | UnitSide::Right) {
        equivalence(
            &mut out,
            "left_uniformity_equivalences",
            Uniformity::L,
            k.open_right_unit,
            sh.left,
        )?;
    }
    if matches!(side, UnitSide::Two | UnitSide::Left) {
        equivalence(
            &mut out,
            "right_uniformity_equivalences",
            Uniformity::R,
            k.open_left_unit,
            sh.right,
        )?;
    }
    if side == UnitSide::Two {
        equivalence(
            &mut out,
            "meet_uniformity_equivalences",
            Uniformity::LwR,
            k.open_unit,
            sh.central,
        )?;
        equivalence(
            &mut out,
            "join_uniformity_equivalences",
            Uniformity::LvR,
            k.open_left_unit && k.open_right_unit,
            sh.left && sh.right,
        )?;
    }

    let rotund_targets: Vec<Uniformity> = generating.iter().copied().filter(|w| *w != Uniformity::LvR).collect();
    if rotund_targets.is_empty() {
        out.skip(
            subject,
            "generating_uniformity_full_rotund",
            "hypothesis not met: no L, R or LwR generates",
        );
    } else {
        let mut bad = vec![];
        for w in rotund_targets {
            if !m
                .canonical_uniformity(w)?
                .saturate_mult()
                .is_rotund(m.space(), crate::quniform::RotundKind::Full)?
            {
                bad.push(w.name());
            }
        }
        out.check(
            subject,
            "generating_uniformity_full_rotund",
            (!bad.is_empty()).then(|| format!("not fully rotund: {}", bad.join(", "))),
        );
    }
    if side == UnitSide::Two {
        let lvr = m.canonical_uniformity(Uniformity::LvR)?.saturate_mult();
        let flag = lvr.is_rotund(&lvr.induced_topology(), crate::quniform::RotundKind::Full)?;
        out.note(subject, format!("LvR fully rotund: {flag}"));
    }

    if matches!(side, UnitSide::Two | UnitSide::Right) {
        let fail = m.left_composition_failure()?;
        out.check(
            subject,
            "left_entourage_products",
            fail.map(|(u, v)| format!("E(U)E(V) != E(UV) for U={u:?}, V={v:?}")),
        );
    }

    let balanced = m.is_balanced();
    if balanced && matches!(side, UnitSide::Two | UnitSide::Right) && k.open_right_unit {
        let mut bad = vec![];
        if !(sh.left && sh.right) {
            bad.push(format!("shifts open: left={}, right={}", sh.left, sh.right));
        }
        if m.space().classify().t1 {
            let two_sided = (0..m.n()).all(|x| m.mul(m.unit(), x) == x);
            if !(two_sided && k.open_left_unit) {
                bad.push(format!(
                    "T1 but left unit law={two_sided}, open left unit={}",
                    k.open_left_unit
                ));
            }
        }
        out.check(
            subject,
            "balanced_open_right_unit_shifts",
            (!bad.is_empty()).then(|| bad.join("; ")),
        );
    } else {
        out.skip(
            subject,
            "balanced_open_right_unit_shifts",
            "hypothesis not met: no balanced open right unit",
        );
    }

    let mut left_ds = vec![];
    for (s, ok) in [
        (
            Side::Left,
            matches!(side, UnitSide::Two | UnitSide::Right) && k.open_right_unit,
        ),
        (
            Side::Right,
            matches!(side, UnitSide::Two | UnitSide::Left) && k.open_left_unit,
        ),
    ] {
        let label = if s == Side::Left { "left" } else { "right" };
        if !ok {
            out.skip(
                subject,
                &format!("{label}_synthesis"),
                "hypothesis not met: unit is not open on that side",
            );
            continue;
        }
        for u in m.unit_nbhds() {
            let mb = m.synth_subinvariant(u, s, ChainStrategy::Coarsest)?;
            let sub = format!("{subject}/{label}/U={}", nbhd_label(u));
            out.extend(&sub, mb.bundle.report.iter().cloned());
            out.extend(&sub, mb.report.iter().cloned());
            if s == Side::Left {
                left_ds.push(mb.bundle.d.clone());
            }
        }
        out.extend(
            &format!("{subject}/{label}/family"),
            m.family_checks(s, ChainStrategy::Coarsest)?,
        );
    }

    if let Ok(g) = m.group_record() {
        out.check(
            subject,
            "inversion_continuous",
            (!g.topological).then(|| "inversion is not continuous".into()),
        );
        if balanced && !left_ds.is_empty() {
            let mut bad = vec![];
            for (i, d) in left_ds.iter().enumerate() {
                if !m.is_weakly_invariant(d)? {
                    bad.push(format!("bundle {i} is not weakly invariant"));
                }
            }
            out.check(
                subject,
                "synthesized_weakly_invariant",
                (!bad.is_empty()).then(|| bad.join("; ")),
            );
        } else {
            out.skip(
                subject,
                "synthesized_weakly_invariant",
                "hypothesis not met: not balanced",
            );
        }
        // A generating family of left-continuous weakly invariant premetrics
        // forces continuous inversion.
        let mut premise = !left_ds.is_empty() && generates_topology(&left_ds, m.space())?;
        for d in &left_ds {
            premise &= d.is_left_continuous(m.space())? && m.is_weakly_invariant(d)?;
        }
        out.check(
            subject,
            "weakly_invariant_family_forces_topological_group",
            (premise && !g.topological).then(|| "premise holds but inversion is discontinuous".into()),
        );
    }
    Ok(out)
}

fn monoids(cat: Option<&Catalog>, scope: Scope, opts: SuiteOptions) -> Result<Out> {
    let mut instances: Vec<(String, TopMonoid)> = vec![];
    match (cat, scope) {
        (Some(c), _) => instances.extend(c.monoids.iter().map(|(n, m)| (format!("monoid:{n}"), m.clone()))),
        (None, Scope::Enumerated(n)) => {
            for (g, table) in small_groups()
                .into_iter()
                .filter(|(_, t)| t.len() <= n.min(SUITE_GROUP_MAX))
            {
                for (i, m) in continuous_topologies(&table, 0, UnitSide::Two)?.into_iter().enumerate() {
                    instances.push((format!("group:{g}#{i}"), m));
                }
            }
            for k in 1..=n.min(SUITE_MONOID_MAX) {
                for (t, table) in enumerate_monoid_tables(k)?.into_iter().enumerate() {
                    for (i, m) in continuous_topologies(&table, 0, UnitSide::Two)?.into_iter().enumerate() {
                        instances.push((format!("monoid:n{k}t{t}#{i}"), m));
                    }
                }
            }
        }
        (None, Scope::Catalog) => unreachable!("catalog scope loads the catalog"),
    }
    let jobs: Vec<(String, Job)> = instances
        .into_iter()
        .map(|(subject, m)| {
            let s2 = subject.clone();
            (subject, Box::new(move || monoid_battery(&s2, &m)) as Job)
        })
        .collect();
    run_jobs(jobs, opts.workers)
}

/// Implication square, and for symmetric bases full rotundness plus the
/// symmetric-pseudometric claim on every member.
fn base_rotundness(subject: &str, base: &EntourageBase, space: &FinSpace, synth: bool) -> Result<Out> {
    let mut out = Out::default();
    let b = base.saturate_mult();
    let flags = b.rotund_flags(space)?;
    let bad = flags.violated_implications();
    out.check(
        subject,
        "rotund_implications",
        (!bad.is_empty()).then(|| bad.join(", ")),
    );
    out.note(
        subject,
        format!(
            "rotund point={} set={} delta={} full={}",
            flags.point, flags.set, flags.delta, flags.full
        ),
    );
    if b.is_symmetric() {
        out.check(
            subject,
            "uniform_base_full_rotund",
            (!flags.full).then(|| "symmetric base is not fully rotund".into()),
        );
        if synth {
            let mut bad = vec![];
            for (i, u) in b.members().iter().enumerate() {
                let bundle = MetricBundle::synthesize(&b, Some(space), u, ChainStrategy::Coarsest)?;
                match bundle.check("symmetric_pseudometric").map(|c| &c.status) {
                    Some(CheckStatus::Passed) => {}
                    other => bad.push(format!("member {i}: {other:?}")),
                }
            }
            out.check(
                subject,
                "symmetric_bundles_pseudometric",
                (!bad.is_empty()).then(|| bad.join("; ")),
            );
        }
    }
    Ok(out)
}

fn rotund(cat: Option<&Catalog>, scope: Scope, opts: SuiteOptions) -> Result<Out> {
    let mut jobs: Vec<(String, Job)> = vec![];
    if let Some(c) = cat {
        for (name, base) in &c.bases {
            let subject = format!("base:{name}");
            let s2 = subject.clone();
            jobs.push((
                subject,
                Box::new(move || base_rotundness(&s2, base, &base.induced_topology(), true)),
            ));
        }
        for (name, s) in &c.spaces {
            let subject = format!("space:{name}");
            let s2 = subject.clone();
            jobs.push((
                subject,
                Box::new(move || base_rotundness(&s2, &EntourageBase::of_space(s), s, true)),
            ));
        }
        for (name, m) in &c.monoids {
            for w in Uniformity::ALL {
                let Ok(base) = m.canonical_uniformity(w) else { continue };
                let subject = format!("monoid:{name}/{}", w.name());
                let s2 = subject.clone();
                jobs.push((
                    subject,
                    Box::new(move || base_rotundness(&s2, &base, &base.induced_topology(), false)),
                ));
            }
        }
    }
    if let Scope::Enumerated(n) = scope {
        for (name, s) in spaces_up_to(n)? {
            let subject = format!("space:{name}");
            let s2 = subject.clone();
            jobs.push((
                subject,
                Box::new(move || base_rotundness(&s2, &EntourageBase::of_space(&s), &s, false)),
            ));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for k in 0..RANDOM_SYMMETRIC_BASES {
        let n = rng.random_range(1..=5usize);
        let base = random_symmetric_base(&mut rng, n)?;
        let subject = format!("random-symmetric-base:{k}");
        let s2 = subject.clone();
        jobs.push((
            subject,
            Box::new(move || base_rotundness(&s2, &base, &base.induced_topology(), true)),
        ));
    }
    run_jobs(jobs, opts.workers)
}
