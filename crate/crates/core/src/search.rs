//! Exhaustive predicate search over enumerated spaces and monoids.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::enumerate::{enumerate_monoid_tables, enumerate_topologies, ENUM_MAX, MONOID_ENUM_MAX};
use crate::error::{Error, Result};
use crate::finspace::FinSpace;
use crate::monoid::{TopMonoid, Uniformity, UnitSide};
use crate::quniform::{EntourageBase, RotundKind};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Flag {
    T0,
    T1,
    T2,
    THalf2,
    T2Half,
    R,
    HalfR,
    RHalf,
    T3,
    THalf3,
    T3Half,
    Discrete,
    Indiscrete,
    Connected,
    PointRotund,
    SetRotund,
    DeltaRotund,
    FullRotund,
    UniformlyRegular,
    UniformlySemiregular,
    UniformlyCompletelyRegular,
    Commutative,
    Group,
    TopologicalGroup,
    Balanced,
    OpenLeftUnit,
    OpenRightUnit,
    OpenUnit,
    OpenLeftShifts,
    OpenRightShifts,
    OpenCentralShifts,
    Generates(Uniformity),
    Rotund(Uniformity),
}

const SPACE_FLAGS: &[(&str, Flag)] = &[
    ("T0", Flag::T0),
    ("T1", Flag::T1),
    ("T2", Flag::T2),
    ("hausdorff", Flag::T2),
    ("T_half2", Flag::THalf2),
    ("T2_half", Flag::T2Half),
    ("R", Flag::R),
    ("regular", Flag::R),
    ("half_R", Flag::HalfR),
    ("semiregular", Flag::HalfR),
    ("R_half", Flag::RHalf),
    ("completely_regular", Flag::RHalf),
    ("T3", Flag::T3),
    ("T_half3", Flag::THalf3),
    ("T3_half", Flag::T3Half),
    ("discrete", Flag::Discrete),
    ("indiscrete", Flag::Indiscrete),
    ("connected", Flag::Connected),
    ("point_rotund", Flag::PointRotund),
    ("set_rotund", Flag::SetRotund),
    ("delta_rotund", Flag::DeltaRotund),
    ("full_rotund", Flag::FullRotund),
    ("uniformly_regular", Flag::UniformlyRegular),
    ("uniformly_semiregular", Flag::UniformlySemiregular),
    ("uniformly_completely_regular", Flag::UniformlyCompletelyRegular),
];

const MONOID_FLAGS: &[(&str, Flag)] = &[
    ("commutative", Flag::Commutative),
    ("group", Flag::Group),
    ("topological_group", Flag::TopologicalGroup),
    ("balanced", Flag::Balanced),
    ("open_left_unit", Flag::OpenLeftUnit),
    ("open_right_unit", Flag::OpenRightUnit),
    ("open_unit", Flag::OpenUnit),
    ("open_left_shifts", Flag::OpenLeftShifts),
    ("open_right_shifts", Flag::OpenRightShifts),
    ("open_central_shifts", Flag::OpenCentralShifts),
    ("L_generates", Flag::Generates(Uniformity::L)),
    ("R_generates", Flag::Generates(Uniformity::R)),
    ("LvR_generates", Flag::Generates(Uniformity::LvR)),
    ("LwR_generates", Flag::Generates(Uniformity::LwR)),
    ("L_rotund", Flag::Rotund(Uniformity::L)),
    ("R_rotund", Flag::Rotund(Uniformity::R)),
    ("LvR_rotund", Flag::Rotund(Uniformity::LvR)),
    ("LwR_rotund", Flag::Rotund(Uniformity::LwR)),
];

/// Every flag name a predicate may use, space flags first.
pub fn flag_names() -> impl Iterator<Item = &'static str> {
    SPACE_FLAGS.iter().chain(MONOID_FLAGS).map(|(n, _)| *n)
}

impl Flag {
    fn is_monoid(self) -> bool {
        MONOID_FLAGS.iter().any(|(_, f)| *f == self)
    }

    fn name(self) -> &'static str {
        SPACE_FLAGS
            .iter()
            .chain(MONOID_FLAGS)
            .find(|(_, f)| *f == self)
            .map(|(n, _)| *n)
            .expect("every flag is named")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Predicate {
    Const(bool),
    Flag(Flag),
    Not(Box<Predicate>),
    And(Box<Predicate>, Box<Predicate>),
    Or(Box<Predicate>, Box<Predicate>),
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Predicate::Const(b) => write!(f, "{b}"),
            Predicate::Flag(x) => write!(f, "{}", x.name()),
            Predicate::Not(p) => write!(f, "!{p}"),
            Predicate::And(a, b) => write!(f, "({a} & {b})"),
            Predicate::Or(a, b) => write!(f, "({a} | {b})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Not,
    And,
    Or,
    Open,
    Close,
}

fn lex(src: &str) -> Result<Vec<Tok>> {
    let mut out = vec![];
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '!' | '¬' | '~' => {
                chars.next();
                out.push(Tok::Not);
            }
            '&' | '∧' => {
                chars.next();
                if c == '&' && chars.peek() == Some(&'&') {
                    chars.next();
                }
                out.push(Tok::And);
            }
            '|' | '∨' => {
                chars.next();
                if c == '|' && chars.peek() == Some(&'|') {
                    chars.next();
                }
                out.push(Tok::Or);
            }
            '(' => {
                chars.next();
                out.push(Tok::Open);
            }
            ')' => {
                chars.next();
                out.push(Tok::Close);
            }
            c if c.is_alphanumeric() || c == '_' => {
                let mut id = String::new();
                while let Some(&c) = chars.peek().filter(|c| c.is_alphanumeric() || **c == '_') {
                    id.push(c);
                    chars.next();
                }
                out.push(match id.as_str() {
                    "not" => Tok::Not,
                    "and" => Tok::And,
                    "or" => Tok::Or,
                    _ => Tok::Ident(id),
                });
            }
            other => return Err(Error::Predicate(format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn or(&mut self) -> Result<Predicate> {
        let mut lhs = self.and()?;
        while self.peek() == Some(&Tok::Or) {
            self.pos += 1;
            lhs = Predicate::Or(Box::new(lhs), Box::new(self.and()?));
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Predicate> {
        let mut lhs = self.unary()?;
        while self.peek() == Some(&Tok::And) {
            self.pos += 1;
            lhs = Predicate::And(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Predicate> {
        let tok = self.peek().cloned();
        self.pos += 1;
        match tok {
            Some(Tok::Not) => Ok(Predicate::Not(Box::new(self.unary()?))),
            Some(Tok::Open) => {
                let inner = self.or()?;
                if self.peek() != Some(&Tok::Close) {
                    return Err(Error::Predicate("missing `)`".into()));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(Tok::Ident(id)) => match id.as_str() {
                "true" => Ok(Predicate::Const(true)),
                "false" => Ok(Predicate::Const(false)),
                _ => SPACE_FLAGS
                    .iter()
                    .chain(MONOID_FLAGS)
                    .find(|(n, _)| *n == id)
                    .map(|(_, f)| Predicate::Flag(*f))
                    .ok_or_else(|| Error::Predicate(format!("unknown flag `{id}`"))),
            },
            Some(t) => Err(Error::Predicate(format!("unexpected token {t:?}"))),
            None => Err(Error::Predicate("unexpected end of predicate".into())),
        }
    }
}

impl Predicate {
    /// Parses `!`/`¬`/`not`, `&`/`∧`/`and`, `|`/`∨`/`or`, parentheses, the
    /// constants `true`/`false`, and the names from [`flag_names`].
    pub fn parse(src: &str) -> Result<Predicate> {
        let mut p = Parser {
            toks: lex(src)?,
            pos: 0,
        };
        let pred = p.or()?;
        if p.pos != p.toks.len() {
            return Err(Error::Predicate(format!("trailing input after `{pred}`")));
        }
        Ok(pred)
    }

    fn flags(&self, out: &mut Vec<Flag>) {
        match self {
            Predicate::Const(_) => {}
            Predicate::Flag(f) => out.push(*f),
            Predicate::Not(p) => p.flags(out),
            Predicate::And(a, b) | Predicate::Or(a, b) => {
                a.flags(out);
                b.flags(out);
            }
        }
    }

    pub fn uses_monoid_flags(&self) -> bool {
        let mut fs = vec![];
        self.flags(&mut fs);
        fs.into_iter().any(Flag::is_monoid)
    }

    fn eval(&self, lookup: &mut dyn FnMut(Flag) -> Result<bool>) -> Result<bool> {
        Ok(match self {
            Predicate::Const(b) => *b,
            Predicate::Flag(f) => lookup(*f)?,
            Predicate::Not(p) => !p.eval(lookup)?,
            Predicate::And(a, b) => a.eval(lookup)? && b.eval(lookup)?,
            Predicate::Or(a, b) => a.eval(lookup)? || b.eval(lookup)?,
        })
    }
}

fn space_flag(s: &FinSpace, f: Flag) -> Result<bool> {
    let c = s.classify();
    let base = || EntourageBase::of_space(s);
    Ok(match f {
        Flag::T0 => c.t0,
        Flag::T1 => c.t1,
        Flag::T2 => c.t2,
        Flag::THalf2 => c.t_half2,
        Flag::T2Half => c.t2_half,
        Flag::R => c.r,
        Flag::HalfR => c.half_r,
        Flag::RHalf => c.r_half,
        Flag::T3 => c.t3,
        Flag::THalf3 => c.t_half3,
        Flag::T3Half => c.t3_half,
        Flag::Discrete => s.is_discrete(),
        Flag::Indiscrete => s.is_indiscrete(),
        Flag::Connected => s.components().len() == 1,
        Flag::PointRotund => base().is_rotund(s, RotundKind::Point)?,
        Flag::SetRotund => base().is_rotund(s, RotundKind::Set)?,
        Flag::DeltaRotund => base().is_rotund(s, RotundKind::Delta)?,
        Flag::FullRotund => base().is_rotund(s, RotundKind::Full)?,
        Flag::UniformlyRegular => base().is_uniformly_regular(s)?,
        Flag::UniformlySemiregular => base().is_uniformly_semiregular(s)?,
        Flag::UniformlyCompletelyRegular => base().uniform_regularity(s)?.completely_regular.holds(),
        other => return Err(Error::Predicate(format!("`{}` needs a monoid", other.name()))),
    })
}

fn monoid_flag(m: &TopMonoid, f: Flag) -> Result<bool> {
    if !f.is_monoid() {
        return space_flag(m.space(), f);
    }
    let n = m.n();
    Ok(match f {
        Flag::Commutative => (0..n).all(|a| (0..n).all(|b| m.mul(a, b) == m.mul(b, a))),
        Flag::Group => m.inverses().is_ok(),
        Flag::TopologicalGroup => m.group_record().map(|g| g.topological).unwrap_or(false),
        Flag::Balanced => m.is_balanced(),
        Flag::OpenLeftUnit => m.unit_kind().open_left_unit,
        Flag::OpenRightUnit => m.unit_kind().open_right_unit,
        Flag::OpenUnit => m.unit_kind().open_unit,
        Flag::OpenLeftShifts => m.shift_openness().left,
        Flag::OpenRightShifts => m.shift_openness().right,
        Flag::OpenCentralShifts => m.shift_openness().central,
        Flag::Generates(w) => m.uniformity_generates_topology(w)?,
        Flag::Rotund(w) => m
            .canonical_uniformity(w)?
            .saturate_mult()
            .is_rotund(m.space(), RotundKind::Full)?,
        _ => unreachable!("space flags handled above"),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    Spaces,
    Monoids,
}

impl Domain {
    pub fn parse(s: &str) -> Result<Domain> {
        match s {
            "spaces" => Ok(Domain::Spaces),
            "monoids" => Ok(Domain::Monoids),
            other => Err(Error::Parse(format!("unknown search domain `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchSpec {
    pub domain: Domain,
    /// Carrier sizes scanned, inclusive.
    pub min_n: usize,
    pub max_n: usize,
    pub predicate: String,
    /// Cap on the number of instances evaluated.
    pub budget: Option<usize>,
    pub workers: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Finding {
    pub n: usize,
    /// Position in the enumeration for this carrier size.
    pub index: usize,
    pub instance: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub schema_version: u32,
    pub domain: Domain,
    pub predicate: String,
    pub min_n: usize,
    pub max_n: usize,
    pub scanned: usize,
    pub matched: usize,
    /// The budget ran out before the scan finished.
    pub partial: bool,
    pub findings: Vec<Finding>,
}

impl SearchReport {
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "search {:?} n={}..={} predicate {}: {} of {} matched{}\n",
            self.domain,
            self.min_n,
            self.max_n,
            self.predicate,
            self.matched,
            self.scanned,
            if self.partial {
                " (partial: budget exhausted)"
            } else {
                ""
            }
        );
        for f in &self.findings {
            out += &format!("  n={} #{} {}\n", f.n, f.index, f.instance);
        }
        out
    }
}

enum Item {
    Space(FinSpace),
    Monoid(TopMonoid),
}

fn items(domain: Domain, n: usize) -> Result<Vec<Item>> {
    Ok(match domain {
        Domain::Spaces => enumerate_topologies(n)?.into_iter().map(Item::Space).collect(),
        Domain::Monoids => {
            let spaces = enumerate_topologies(n)?;
            let mut out = vec![];
            for t in enumerate_monoid_tables(n)? {
                for s in &spaces {
                    if let Ok(m) = TopMonoid::new(s.clone(), &t, 0, UnitSide::Two) {
                        out.push(Item::Monoid(m));
                    }
                }
            }
            out
        }
    })
}

pub(crate) fn pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Parse(format!("thread pool: {e}")))
}

pub fn search(spec: &SearchSpec) -> Result<SearchReport> {
    let pred = Predicate::parse(&spec.predicate)?;
    let max = match spec.domain {
        Domain::Spaces => ENUM_MAX,
        Domain::Monoids => MONOID_ENUM_MAX,
    };
    if spec.min_n == 0 || spec.min_n > spec.max_n {
        return Err(Error::Parse(format!(
            "empty size range {}..={}",
            spec.min_n, spec.max_n
        )));
    }
    if spec.max_n > max {
        return Err(Error::TooLarge { n: spec.max_n, max });
    }
    if spec.domain == Domain::Spaces && pred.uses_monoid_flags() {
        return Err(Error::Predicate("monoid flags need the monoids domain".into()));
    }
    let pool = pool(spec.workers)?;
    let mut findings = vec![];
    let mut scanned = 0;
    let mut partial = false;
    for n in spec.min_n..=spec.max_n {
        let mut all = items(spec.domain, n)?;
        if let Some(b) = spec.budget {
            let left = b.saturating_sub(scanned);
            if all.len() > left {
                all.truncate(left);
                partial = true;
            }
        }
        scanned += all.len();
        let hits: Vec<Option<Finding>> = pool.install(|| {
            all.par_iter()
                .enumerate()
                .map(|(index, item)| {
                    let mut cache: HashMap<Flag, bool> = HashMap::new();
                    let mut lookup = |f: Flag| -> Result<bool> {
                        if let Some(&v) = cache.get(&f) {
                            return Ok(v);
                        }
                        let v = match item {
                            Item::Space(s) => space_flag(s, f)?,
                            Item::Monoid(m) => monoid_flag(m, f)?,
                        };
                        cache.insert(f, v);
                        Ok(v)
                    };
                    if !pred.eval(&mut lookup)? {
                        return Ok(None);
                    }
                    let instance = match item {
                        Item::Space(s) => serde_json::to_value(s.to_doc())?,
                        Item::Monoid(m) => serde_json::to_value(m.to_doc())?,
                    };
                    Ok(Some(Finding { n, index, instance }))
                })
                .collect::<Result<Vec<_>>>()
        })?;
        findings.extend(hits.into_iter().flatten());
        if partial {
            break;
        }
    }
    Ok(SearchReport {
        schema_version: SCHEMA_VERSION,
        domain: spec.domain,
        predicate: pred.to_string(),
        min_n: spec.min_n,
        max_n: spec.max_n,
        scanned,
        matched: findings.len(),
        partial,
        findings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(pred: &str, max_n: usize) -> SearchSpec {
        SearchSpec {
            domain: Domain::Spaces,
            min_n: 1,
            max_n,
            predicate: pred.into(),
            budget: None,
            workers: 2,
        }
    }

    #[test]
    fn parser() {
        let p = Predicate::parse("semiregular ∧ ¬regular").unwrap();
        assert_eq!(p.to_string(), "(half_R & !R)");
        assert_eq!(
            Predicate::parse("not T1 or (T0 and false)").unwrap().to_string(),
            "(!T1 | (T0 & false))"
        );
        assert!(matches!(Predicate::parse("T7"), Err(Error::Predicate(_))));
        assert!(matches!(Predicate::parse("T0 &"), Err(Error::Predicate(_))));
        assert!(matches!(Predicate::parse("(T0"), Err(Error::Predicate(_))));
    }

    #[test]
    fn sierpinski_is_t0_not_t1() {
        let r = search(&SearchSpec {
            min_n: 2,
            ..spec("T0 ∧ ¬T1", 2)
        })
        .unwrap();
        assert_eq!(r.matched, 2);
        let s: Vec<FinSpace> = r
            .findings
            .iter()
            .map(|f| {
                FinSpace::from_doc(
                    &serde_json::from_value(f.instance.clone()).unwrap(),
                    crate::finspace::Closure::Strict,
                )
                .unwrap()
            })
            .collect();
        assert!(s.contains(&FinSpace::sierpinski(1).unwrap()));
    }

    #[test]
    fn false_is_empty_and_budget_flags_partial() {
        assert_eq!(search(&spec("false", 3)).unwrap().matched, 0);
        let r = search(&SearchSpec {
            budget: Some(10),
            ..spec("true", 3)
        })
        .unwrap();
        assert!(r.partial);
        assert_eq!(r.scanned, 10);
    }

    #[test]
    fn worker_count_does_not_change_output() {
        let a = search(&SearchSpec {
            workers: 1,
            ..spec("T0 & !T1", 4)
        })
        .unwrap();
        let b = search(&SearchSpec {
            workers: 8,
            ..spec("T0 & !T1", 4)
        })
        .unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }

    #[test]
    fn monoid_flags_need_monoid_domain() {
        assert!(matches!(search(&spec("balanced", 2)), Err(Error::Predicate(_))));
        let r = search(&SearchSpec {
            domain: Domain::Monoids,
            ..spec("group & !topological_group", 3)
        })
        .unwrap();
        assert_eq!(r.matched, 0);
    }
}
