use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use qtop_core::bits;
use qtop_core::catalog::{Catalog, Instance, InstanceKind};
use qtop_core::enumerate::enumerate_topologies;
use qtop_core::finspace::{Closure, FinSpace, SpaceDoc};
use qtop_core::metrize::{ChainStrategy, CheckResult, CheckStatus, MetricBundle, Premetric};
use qtop_core::monoid::{MonoidDoc, Side, TopMonoid, Uniformity};
use qtop_core::quniform::{BaseDoc, EntourageBase, RotundKind};
use qtop_core::relalg::{Entourage, RelationDoc};
use qtop_core::search::{search, Domain, SearchSpec};
use qtop_core::suite::{run_suite, Scope, SuiteName, SuiteOptions};
use qtop_core::{Error, Result};

/// Finite quasi-uniform spaces: classification, rotundness, exact
/// quasi-pseudometric synthesis and verification.
///
/// Inputs are JSON files, `-` for stdin, inline JSON, or `@name` for a
/// catalog entry (QTOP_CATALOG overrides the catalog directory).
/// Exit codes: 0 pass, 1 verification failure, 2 input error.
#[derive(Parser)]
#[command(name = "qtop", version)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Reject inputs that are not already closed or canonical.
    #[arg(long, global = true)]
    strict: bool,
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
    /// Seed for randomized batteries.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Separation axioms of a space.
    Classify { space: String },
    /// Entourage base operations.
    #[command(subcommand)]
    Base(BaseCmd),
    /// Build the quasi-pseudometric bundle for a target entourage.
    Synth(SynthArgs),
    /// Re-run the checks of a stored bundle, or of every member of a base.
    Verify {
        input: String,
        /// Treat the input as a base and verify the bundle of every member.
        #[arg(long)]
        claims: bool,
    },
    /// Topological monoid operations.
    #[command(subcommand)]
    Monoid(MonoidCmd),
    /// Labeled topologies on n points.
    Enumerate {
        n: usize,
        /// Print only the count.
        #[arg(long)]
        count: bool,
    },
    /// Scan enumerated instances for a predicate over their flags.
    Search {
        #[arg(long)]
        predicate: String,
        /// Largest carrier size.
        #[arg(long)]
        n: usize,
        /// Smallest carrier size.
        #[arg(long, default_value_t = 1)]
        min_n: usize,
        #[arg(long, default_value = "spaces")]
        domain: String,
        /// Cap on the number of instances evaluated.
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Run a verification suite: claims, separations, monoids, rotund.
    Suite {
        name: String,
        /// `catalog` or `enumerated:N`.
        #[arg(long, default_value = "catalog")]
        scope: String,
    },
}

#[derive(Subcommand)]
enum BaseCmd {
    Validate {
        base: String,
    },
    Saturate {
        base: String,
    },
    Rotund {
        base: String,
        /// point, set, delta or full; all four when omitted.
        #[arg(long)]
        kind: Option<String>,
        /// Space for the closures; the induced topology when omitted.
        #[arg(long)]
        space: Option<String>,
    },
}

#[derive(Args)]
struct SynthArgs {
    #[arg(long)]
    base: String,
    /// Target entourage as a relation document.
    #[arg(long, conflicts_with = "member")]
    target: Option<String>,
    /// Index of the target among the canonical base members.
    #[arg(long)]
    member: Option<usize>,
    /// Space for closures; the induced topology when omitted.
    #[arg(long)]
    space: Option<String>,
    #[arg(long, default_value = "coarsest")]
    strategy: String,
}

#[derive(Subcommand)]
enum MonoidCmd {
    Validate {
        monoid: String,
    },
    Uniformity {
        monoid: String,
        /// L, R, LvR or LwR.
        #[arg(long)]
        which: String,
    },
    Synth {
        monoid: String,
        #[arg(long, default_value = "left")]
        side: String,
        /// Open neighbourhood of the unit, as comma-separated points.
        #[arg(long)]
        nbhd: String,
    },
}

struct Output {
    passed: bool,
    text: String,
    json: Value,
}

fn read_arg(arg: &str) -> Result<Value> {
    let text = if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else if arg.trim_start().starts_with(['{', '[']) {
        arg.to_string()
    } else {
        fs::read_to_string(arg).map_err(|e| Error::Parse(format!("{arg}: {e}")))?
    };
    let v: Value = serde_json::from_str(&text)?;
    // Catalog-style wrappers carry the document in `payload`.
    if let Some(p) = v.get("payload").filter(|_| v.get("kind").is_some()) {
        return Ok(p.clone());
    }
    Ok(v)
}

fn catalog_entry(arg: &str, kind: InstanceKind) -> Result<Option<Value>> {
    let Some(name) = arg.strip_prefix('@') else {
        return Ok(None);
    };
    let cat = Catalog::load()?;
    let dir = match kind {
        InstanceKind::Space => "spaces",
        InstanceKind::Base => "bases",
        InstanceKind::Monoid => "monoids",
        InstanceKind::Bundle => return Err(Error::Parse("bundles are not catalog entries".into())),
    };
    let key = format!("{dir}/{name}");
    let text = cat
        .files
        .iter()
        .find(|(k, _)| *k == key)
        .map(|(_, t)| t)
        .ok_or_else(|| Error::Parse(format!("no catalog entry {key}")))?;
    Ok(Some(Instance::parse(text)?.payload))
}

fn load(arg: &str, kind: InstanceKind) -> Result<Value> {
    match catalog_entry(arg, kind)? {
        Some(v) => Ok(v),
        None => read_arg(arg),
    }
}

fn closure_mode(strict: bool) -> Closure {
    if strict {
        Closure::Strict
    } else {
        Closure::Auto
    }
}

fn load_space(arg: &str, strict: bool) -> Result<FinSpace> {
    let doc: SpaceDoc = serde_json::from_value(load(arg, InstanceKind::Space)?)?;
    FinSpace::from_doc(&doc, closure_mode(strict))
}

fn load_base(arg: &str, strict: bool) -> Result<EntourageBase> {
    let doc: BaseDoc = serde_json::from_value(load(arg, InstanceKind::Base)?)?;
    EntourageBase::from_doc(&doc, strict)
}

fn load_monoid(arg: &str, strict: bool) -> Result<TopMonoid> {
    let doc: MonoidDoc = serde_json::from_value(load(arg, InstanceKind::Monoid)?)?;
    TopMonoid::from_doc(&doc, closure_mode(strict))
}

fn opens_text(s: &FinSpace) -> String {
    s.opens()
        .iter()
        .map(|&o| format!("{:?}", bits::to_points(o)))
        .collect::<Vec<_>>()
        .join(" ")
}

fn premetric_text(label: &str, d: &Premetric) -> String {
    let rows: Vec<String> = d
        .rows()
        .iter()
        .map(|r| {
            r.iter()
                .map(|v| format!("{:>5}", v.to_string()))
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect();
    format!("{label}:\n  {}\n", rows.join("\n  "))
}

fn checks_text(checks: &[CheckResult]) -> String {
    let mut out = String::new();
    for c in checks {
        let line = match &c.status {
            CheckStatus::Passed => format!("  pass {}\n", c.name),
            CheckStatus::Failed { detail } => format!("  FAIL {}: {detail}\n", c.name),
            CheckStatus::Skipped { reason } => format!("  skip {}: {reason}\n", c.name),
        };
        out += &line;
    }
    out
}

fn bundle_text(b: &MetricBundle) -> String {
    let mut out = format!(
        "chain of {} links, rotund point={} set={:?} delta={} full={:?}\n",
        b.chain.links().len(),
        b.rotund.point,
        b.rotund.set,
        b.rotund.delta,
        b.rotund.full
    );
    out += &premetric_text("d", &b.d);
    out += &premetric_text("d_reg", &b.d_reg);
    out += &premetric_text("d_semireg", &b.d_semireg);
    out += &checks_text(&b.report);
    out
}

fn run(cli: &Cli) -> Result<Output> {
    let strict = cli.strict;
    match &cli.command {
        Command::Classify { space } => {
            let s = load_space(space, strict)?;
            let rec = s.classify();
            let bad = rec.violated_implications();
            let flags = serde_json::to_value(rec)?;
            let mut comps = s.components();
            comps.sort_unstable();
            comps.dedup();
            let mut text = format!("opens: {}\n", opens_text(&s));
            if let Value::Object(m) = &flags {
                for (k, v) in m {
                    text += &format!("{k}: {v}\n");
                }
            }
            text += &format!("components: {}\n", comps.len());
            Ok(Output {
                passed: bad.is_empty(),
                text,
                json: json!({"space": s.to_doc(), "separation": flags, "components": comps.len(),
                    "violated_implications": bad}),
            })
        }
        Command::Base(cmd) => base_cmd(cmd, strict),
        Command::Synth(a) => {
            let base = load_base(&a.base, strict)?;
            let target = match (&a.target, a.member) {
                (Some(t), _) => {
                    let doc: RelationDoc = serde_json::from_value(read_arg(t)?)?;
                    if strict {
                        Entourage::from_doc_strict(&doc)?
                    } else {
                        Entourage::from_doc(&doc)?
                    }
                }
                (None, Some(i)) => *base.members().get(i).ok_or_else(|| {
                    Error::Parse(format!("member {i} out of range ({} members)", base.members().len()))
                })?,
                (None, None) => return Err(Error::Parse("synth needs --target or --member".into())),
            };
            let space = a.space.as_deref().map(|s| load_space(s, strict)).transpose()?;
            let strategy = ChainStrategy::parse(&a.strategy)?;
            let b = MetricBundle::synthesize(&base, space.as_ref(), &target, strategy)?;
            Ok(Output {
                passed: b.all_passed(),
                text: bundle_text(&b),
                json: serde_json::to_value(&b)?,
            })
        }
        Command::Verify { input, claims } => {
            if *claims {
                let base = load_base(input, strict)?;
                let mut passed = true;
                let mut text = String::new();
                let mut docs = vec![];
                for (i, u) in base.members().iter().enumerate() {
                    let b = MetricBundle::synthesize(&base, None, u, ChainStrategy::Coarsest)?;
                    passed &= b.all_passed();
                    text += &format!("member {i}:\n{}", checks_text(&b.report));
                    docs.push(json!({"member": i, "checks": b.report}));
                }
                Ok(Output {
                    passed,
                    text,
                    json: json!({"passed": passed, "members": docs}),
                })
            } else {
                let b: MetricBundle = serde_json::from_value(read_arg(input)?)?;
                let checks = b.reverify()?;
                let passed = checks.iter().all(|c| !c.failed());
                Ok(Output {
                    passed,
                    text: checks_text(&checks),
                    json: json!({"passed": passed, "checks": checks}),
                })
            }
        }
        Command::Monoid(cmd) => monoid_cmd(cmd, strict),
        Command::Enumerate { n, count } => {
            let spaces = enumerate_topologies(*n)?;
            let mut text = format!("{} topologies on {n} points\n", spaces.len());
            if !count {
                for s in &spaces {
                    text += &format!("{}\n", opens_text(s));
                }
            }
            let docs: Vec<SpaceDoc> = if *count {
                vec![]
            } else {
                spaces.iter().map(|s| s.to_doc()).collect()
            };
            Ok(Output {
                passed: true,
                text,
                json: json!({"n": n, "count": spaces.len(), "spaces": docs}),
            })
        }
        Command::Search {
            predicate,
            n,
            min_n,
            domain,
            budget,
        } => {
            let spec = SearchSpec {
                domain: Domain::parse(domain)?,
                min_n: *min_n,
                max_n: *n,
                predicate: predicate.clone(),
                budget: *budget,
                workers: cli.workers,
            };
            let r = search(&spec)?;
            Ok(Output {
                passed: true,
                text: r.to_text(),
                json: serde_json::to_value(&r)?,
            })
        }
        Command::Suite { name, scope } => {
            let r = run_suite(
                SuiteName::parse(name)?,
                Scope::parse(scope)?,
                SuiteOptions {
                    workers: cli.workers,
                    seed: cli.seed,
                },
            )?;
            Ok(Output {
                passed: r.passed(),
                text: r.to_text(),
                json: serde_json::to_value(&r)?,
            })
        }
    }
}

fn base_cmd(cmd: &BaseCmd, strict: bool) -> Result<Output> {
    match cmd {
        BaseCmd::Validate { base } => {
            let b = load_base(base, strict)?;
            let t = b.induced_topology();
            let text = format!(
                "valid base: {} members, multiplicative={}, symmetric={}\ninduced opens: {}\n",
                b.members().len(),
                b.is_multiplicative(),
                b.is_symmetric(),
                opens_text(&t)
            );
            let json = json!({"members": b.members().len(), "multiplicative": b.is_multiplicative(),
                "symmetric": b.is_symmetric(), "uniform_character": b.uniform_character(),
                "induced_topology": t.to_doc()});
            Ok(Output {
                passed: true,
                text,
                json,
            })
        }
        BaseCmd::Saturate { base } => {
            let b = load_base(base, strict)?.saturate_mult();
            let doc = serde_json::to_value(b.to_doc())?;
            Ok(Output {
                passed: true,
                text: format!("{doc}\n"),
                json: doc,
            })
        }
        BaseCmd::Rotund { base, kind, space } => {
            let b = load_base(base, strict)?.saturate_mult();
            let s = match space {
                Some(s) => load_space(s, strict)?,
                None => b.induced_topology(),
            };
            let kinds: Vec<RotundKind> = match kind {
                Some(k) => vec![RotundKind::parse(k)?],
                None => RotundKind::ALL.to_vec(),
            };
            let mut text = String::new();
            let mut results = serde_json::Map::new();
            for k in kinds {
                let cx = b.rotund_check(&s, k)?;
                text += &match &cx {
                    None => format!("{}: rotund\n", k.name()),
                    Some(c) => format!(
                        "{}: not rotund, counterexample {}\n",
                        k.name(),
                        serde_json::to_string(c)?
                    ),
                };
                results.insert(k.name().into(), json!({"rotund": cx.is_none(), "counterexample": cx}));
            }
            Ok(Output {
                passed: true,
                text,
                json: Value::Object(results),
            })
        }
    }
}

fn parse_points(s: &str, n: usize) -> Result<bits::Subset> {
    let pts = s
        .split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .map_err(|e| Error::Parse(format!("point `{p}`: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    bits::from_points(n, &pts)
}

fn monoid_cmd(cmd: &MonoidCmd, strict: bool) -> Result<Output> {
    match cmd {
        MonoidCmd::Validate { monoid } => {
            let m = load_monoid(monoid, strict)?;
            let k = m.unit_kind();
            let sh = m.shift_openness();
            let group = m.group_record().ok();
            let text = format!(
                "valid monoid on {} points, unit {} ({:?})\nopen left unit={} open right unit={} open unit={}\n\
                 open shifts: left={} right={} central={}\nbalanced={}\ngroup: {}\n",
                m.n(),
                m.unit(),
                m.unit_side(),
                k.open_left_unit,
                k.open_right_unit,
                k.open_unit,
                sh.left,
                sh.right,
                sh.central,
                m.is_balanced(),
                match &group {
                    Some(g) => format!("yes, topological={}", g.topological),
                    None => "no".into(),
                }
            );
            let json = json!({"unit_kind": k, "shifts": sh, "balanced": m.is_balanced(), "group": group});
            Ok(Output {
                passed: true,
                text,
                json,
            })
        }
        MonoidCmd::Uniformity { monoid, which } => {
            let m = load_monoid(monoid, strict)?;
            let w = Uniformity::parse(which)?;
            let b = m.canonical_uniformity(w)?;
            let gen = m.uniformity_generates_topology(w)?;
            let doc = b.to_doc();
            let text = format!(
                "{} base with {} members, generates topology: {gen}\n{}\n",
                w.name(),
                b.members().len(),
                serde_json::to_string(&doc)?
            );
            Ok(Output {
                passed: true,
                text,
                json: json!({"which": w.name(), "base": doc, "generates_topology": gen}),
            })
        }
        MonoidCmd::Synth { monoid, side, nbhd } => {
            let m = load_monoid(monoid, strict)?;
            let u = parse_points(nbhd, m.n())?;
            let mb = m.synth_subinvariant(u, Side::parse(side)?, ChainStrategy::Coarsest)?;
            let text = format!(
                "balanced={}\n{}{}",
                mb.balanced,
                bundle_text(&mb.bundle),
                checks_text(&mb.report)
            );
            Ok(Output {
                passed: mb.all_passed(),
                text,
                json: serde_json::to_value(&mb)?,
            })
        }
    }
}

fn emit(cli: &Cli, body: &str) -> std::io::Result<()> {
    match &cli.out {
        Some(path) => fs::write(path, body),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let body = if cli.json {
                serde_json::to_string_pretty(&out.json).expect("values serialize") + "\n"
            } else {
                out.text
            };
            if let Err(e) = emit(&cli, &body) {
                eprintln!("qtop: {e}");
                return ExitCode::from(2);
            }
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("qtop: {e}");
            ExitCode::from(2)
        }
    }
}
