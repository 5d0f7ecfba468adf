//! Finite topological semigroups with a (one- or two-sided) unit.

use serde::{Deserialize, Serialize};

use crate::bits::{self, Subset};
use crate::error::{Error, Result};
use crate::finspace::{Closure, FinSpace, SpaceDoc};
use crate::metrize::{
    generates_topology, ChainStrategy, CheckResult, CheckStatus, DistVariant, MetricBundle, Premetric,
};
use crate::quniform::EntourageBase;
use crate::relalg::Entourage;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum UnitSide {
    #[default]
    Two,
    Right,
    Left,
}

impl UnitSide {
    fn right(self) -> bool {
        matches!(self, UnitSide::Two | UnitSide::Right)
    }

    fn left(self) -> bool {
        matches!(self, UnitSide::Two | UnitSide::Left)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Uniformity {
    L,
    R,
    LvR,
    LwR,
}

impl Uniformity {
    pub const ALL: [Uniformity; 4] = [Uniformity::L, Uniformity::R, Uniformity::LvR, Uniformity::LwR];

    pub fn parse(s: &str) -> Result<Uniformity> {
        match s {
            "L" => Ok(Uniformity::L),
            "R" => Ok(Uniformity::R),
            "LvR" => Ok(Uniformity::LvR),
            "LwR" => Ok(Uniformity::LwR),
            other => Err(Error::Parse(format!(
                "unknown uniformity `{other}` (expected L, R, LvR, LwR)"
            ))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Uniformity::L => "L",
            Uniformity::R => "R",
            Uniformity::LvR => "LvR",
            Uniformity::LwR => "LwR",
        }
    }
}

/// Which side the synthesized premetric is subinvariant on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn parse(s: &str) -> Result<Side> {
        match s {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            other => Err(Error::Parse(format!("unknown side `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftOpenness {
    pub left: bool,
    pub right: bool,
    pub central: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitKind {
    pub open_left_unit: bool,
    pub open_right_unit: bool,
    pub open_unit: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopMonoid {
    space: FinSpace,
    mul: Vec<u8>,
    unit: usize,
    unit_side: UnitSide,
}

/// A subinvariant metric bundle on a monoid with its extra checks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonoidBundle {
    pub side: Side,
    pub nbhd: Vec<usize>,
    pub balanced: bool,
    pub bundle: MetricBundle,
    pub report: Vec<CheckResult>,
}

impl MonoidBundle {
    pub fn all_passed(&self) -> bool {
        self.bundle.all_passed() && self.report.iter().all(|c| !c.failed())
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.report.iter().find(|c| c.name == name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupRecord {
    pub inverses: Vec<usize>,
    /// Multiplication is continuous (always, for a validated instance).
    pub paratopological: bool,
    /// Inversion is continuous as well.
    pub topological: bool,
}

fn check(name: &str, failure: Option<String>) -> CheckResult {
    let status = match failure {
        None => CheckStatus::Passed,
        Some(detail) => CheckStatus::Failed { detail },
    };
    CheckResult {
        name: name.into(),
        status,
    }
}

impl TopMonoid {
    pub fn new(space: FinSpace, table: &[Vec<usize>], unit: usize, unit_side: UnitSide) -> Result<TopMonoid> {
        let n = space.n();
        if table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&v| v >= n)) {
            return Err(Error::BadTable(n));
        }
        if unit >= n {
            return Err(Error::PointOutOfRange { n, point: unit });
        }
        let mul = table.iter().flatten().map(|&v| v as u8).collect();
        let m = TopMonoid {
            space,
            mul,
            unit,
            unit_side,
        };
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if m.mul(m.mul(a, b), c) != m.mul(a, m.mul(b, c)) {
                        return Err(Error::NotAssociative(a, b, c));
                    }
                }
            }
        }
        for a in 0..n {
            let right_ok = !unit_side.right() || m.mul(a, unit) == a;
            let left_ok = !unit_side.left() || m.mul(unit, a) == a;
            if !(right_ok && left_ok) {
                return Err(Error::UnitLawFails(a));
            }
        }
        for x in 0..n {
            for y in 0..n {
                let prod = m.set_mul(m.space.min_nbhd(x), m.space.min_nbhd(y));
                if !bits::is_subset(prod, m.space.min_nbhd(m.mul(x, y))) {
                    return Err(Error::MultiplicationDiscontinuous(x, y));
                }
            }
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.space.n()
    }

    pub fn space(&self) -> &FinSpace {
        &self.space
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn unit_side(&self) -> UnitSide {
        self.unit_side
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n() + b] as usize
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.n())
            .map(|a| (0..self.n()).map(|b| self.mul(a, b)).collect())
            .collect()
    }

    /// `AB = {ab : a ∈ A, b ∈ B}`.
    pub fn set_mul(&self, a: Subset, b: Subset) -> Subset {
        let mut out = 0;
        for x in bits::points(a) {
            for y in bits::points(b) {
                out |= bits::singleton(self.mul(x, y));
            }
        }
        out
    }

    fn pt(x: usize) -> Subset {
        bits::singleton(x)
    }

    /// Open sets containing the unit, in canonical order.
    pub fn unit_nbhds(&self) -> Vec<Subset> {
        self.space
            .opens()
            .iter()
            .copied()
            .filter(|&o| bits::contains(o, self.unit))
            .collect()
    }

    /// Openness of the shifts. Images of unions are unions of images, so
    /// minimal neighbourhoods suffice.
    pub fn shift_openness(&self) -> ShiftOpenness {
        let n = self.n();
        let s = &self.space;
        let left = (0..n).all(|a| (0..n).all(|x| s.is_open(self.set_mul(Self::pt(a), s.min_nbhd(x)))));
        let right = (0..n).all(|a| (0..n).all(|x| s.is_open(self.set_mul(s.min_nbhd(x), Self::pt(a)))));
        let central = (0..n).all(|a| {
            (0..n).all(|x| {
                (0..n).all(|y| s.is_open(self.set_mul(self.set_mul(s.min_nbhd(x), Self::pt(a)), s.min_nbhd(y))))
            })
        });
        ShiftOpenness { left, right, central }
    }

    pub fn unit_kind(&self) -> UnitKind {
        let s = &self.space;
        let me = s.min_nbhd(self.unit);
        let all = |f: &dyn Fn(usize) -> Subset| (0..self.n()).all(|x| bits::is_subset(s.min_nbhd(x), f(x)));
        UnitKind {
            open_left_unit: all(&|x| self.set_mul(me, Self::pt(x))),
            open_right_unit: all(&|x| self.set_mul(Self::pt(x), me)),
            open_unit: all(&|x| self.set_mul(self.set_mul(me, Self::pt(x)), me)),
        }
    }

    /// `xU = Ux` for every `x`.
    pub fn is_invariant(&self, u: Subset) -> bool {
        (0..self.n()).all(|x| self.set_mul(Self::pt(x), u) == self.set_mul(u, Self::pt(x)))
    }

    /// The invariant open neighbourhoods of the unit form a neighbourhood
    /// base there.
    pub fn is_balanced(&self) -> bool {
        let inv: Vec<Subset> = self
            .unit_nbhds()
            .into_iter()
            .filter(|&u| self.is_invariant(u))
            .collect();
        self.unit_nbhds()
            .iter()
            .all(|&o| inv.iter().any(|&v| bits::is_subset(v, o)))
    }

    fn require(&self, ok: bool, what: &str) -> Result<()> {
        if ok {
            Ok(())
        } else {
            Err(Error::UnitKindUnsupported(what.into()))
        }
    }

    /// `𝔼(U)` for one neighbourhood, or `U x U'` rows for the meet.
    pub fn entourage(&self, which: Uniformity, u: Subset, u2: Subset) -> Result<Entourage> {
        let rows: Vec<Subset> = (0..self.n())
            .map(|x| {
                let px = Self::pt(x);
                match which {
                    Uniformity::L => self.set_mul(px, u),
                    Uniformity::R => self.set_mul(u, px),
                    Uniformity::LvR => self.set_mul(px, u) & self.set_mul(u, px),
                    Uniformity::LwR => self.set_mul(self.set_mul(u, px), u2),
                }
            })
            .collect();
        Entourage::from_rows(self.n(), &rows)
    }

    fn check_uniformity_support(&self, which: Uniformity) -> Result<()> {
        match which {
            Uniformity::L => self.unit_side.right(),
            Uniformity::R => self.unit_side.left(),
            _ => self.unit_side == UnitSide::Two,
        }
        .then_some(())
        .ok_or_else(|| {
            Error::NotABase(format!(
                "{} needs entourages containing the diagonal: unit side is {:?}",
                which.name(),
                self.unit_side
            ))
        })
    }

    /// Base of `𝓛`, `𝓡`, `𝓛∨𝓡` or `𝓛∧𝓡` over all open neighbourhoods of
    /// the unit (pairs of them for the meet).
    pub fn canonical_uniformity(&self, which: Uniformity) -> Result<EntourageBase> {
        self.check_uniformity_support(which)?;
        let nb = self.unit_nbhds();
        let mut ms = vec![];
        for &u in &nb {
            if which == Uniformity::LwR {
                for &v in &nb {
                    ms.push(self.entourage(which, u, v)?);
                }
            } else {
                ms.push(self.entourage(which, u, u)?);
            }
        }
        EntourageBase::new(&ms).map_err(|e| Error::NotABase(e.to_string()))
    }

    /// First pair of unit neighbourhoods with `𝔼(U)∘𝔼(V) ≠ 𝔼(UV)` in the
    /// left quasi-uniformity.
    pub fn left_composition_failure(&self) -> Result<Option<(Vec<usize>, Vec<usize>)>> {
        self.check_uniformity_support(Uniformity::L)?;
        let nb = self.unit_nbhds();
        for &u in &nb {
            for &v in &nb {
                let lhs = self
                    .entourage(Uniformity::L, u, u)?
                    .compose(&self.entourage(Uniformity::L, v, v)?)?;
                let uv = self.set_mul(u, v);
                if lhs != self.entourage(Uniformity::L, uv, uv)? {
                    return Ok(Some((bits::to_points(u), bits::to_points(v))));
                }
            }
        }
        Ok(None)
    }

    pub fn uniformity_generates_topology(&self, which: Uniformity) -> Result<bool> {
        Ok(self.canonical_uniformity(which)?.induced_topology() == self.space)
    }

    pub fn is_left_subinvariant(&self, d: &Premetric) -> bool {
        self.subinvariance_failure(d, Side::Left).is_none()
    }

    pub fn is_right_subinvariant(&self, d: &Premetric) -> bool {
        self.subinvariance_failure(d, Side::Right).is_none()
    }

    /// First `(x, y, z)` with `d(zx, zy) > d(x, y)` (left) or
    /// `d(xz, yz) > d(x, y)` (right).
    pub fn subinvariance_failure(&self, d: &Premetric, side: Side) -> Option<(usize, usize, usize)> {
        let n = self.n();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let v = match side {
                        Side::Left => d.get(self.mul(z, x), self.mul(z, y)),
                        Side::Right => d.get(self.mul(x, z), self.mul(y, z)),
                    };
                    if v > d.get(x, y) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    /// Builds the subinvariant quasi-pseudometric for the open neighbourhood
    /// `u` of the unit. Left needs an open right unit and works in `𝓛`;
    /// right needs an open left unit and works in `𝓡`. On balanced
    /// instances only invariant neighbourhoods enter the base.
    pub fn synth_subinvariant(&self, u: Subset, side: Side, strategy: ChainStrategy) -> Result<MonoidBundle> {
        if !self.space.is_open(u) || !bits::contains(u, self.unit) {
            return Err(Error::Parse(
                "neighbourhood must be an open set containing the unit".into(),
            ));
        }
        let kind = self.unit_kind();
        let which = match side {
            Side::Left => {
                self.require(
                    self.unit_side.right() && kind.open_right_unit,
                    "left synthesis needs an open right unit",
                )?;
                Uniformity::L
            }
            Side::Right => {
                self.require(
                    self.unit_side.left() && kind.open_left_unit,
                    "right synthesis needs an open left unit",
                )?;
                Uniformity::R
            }
        };
        let balanced = self.is_balanced();
        let nbhds: Vec<Subset> = self
            .unit_nbhds()
            .into_iter()
            .filter(|&v| !balanced || self.is_invariant(v))
            .collect();
        let ms = nbhds
            .iter()
            .map(|&v| self.entourage(which, v, v))
            .collect::<Result<Vec<_>>>()?;
        let base = EntourageBase::new(&ms).map_err(|e| Error::NotABase(e.to_string()))?;
        let target = self.entourage(which, u, u)?;
        let bundle = MetricBundle::synthesize(&base, Some(&self.space), &target, strategy)?;
        let report = self.subinvariant_checks(&bundle, u, side, balanced)?;
        Ok(MonoidBundle {
            side,
            nbhd: bits::to_points(u),
            balanced,
            bundle,
            report,
        })
    }

    fn subinvariant_checks(&self, b: &MetricBundle, u: Subset, side: Side, balanced: bool) -> Result<Vec<CheckResult>> {
        let s = &self.space;
        let (d, dr, ds) = (&b.d, &b.d_reg, &b.d_semireg);
        let sub = |p: &Premetric, side: Side, label: &str| {
            self.subinvariance_failure(p, side)
                .map(|(x, y, z)| format!("{label} fails at x={x}, y={y}, z={z}"))
        };
        let mut out = vec![];

        out.push(check(
            "modifications_agree",
            (!(dr == ds && dr.le(d))).then(|| "d_reg = d_semireg <= d fails".into()),
        ));

        let mut bad = vec![];
        if let Some(f) = sub(d, side, "subinvariance of d") {
            bad.push(f);
        }
        if !d.axioms().triangle {
            bad.push("d violates the triangle inequality".into());
        }
        if !d.has_open_balls(s)? {
            bad.push("d has a ball that is not open".into());
        }
        if !d.is_dist_continuous(s, DistVariant::Reg)? {
            bad.push("d is not reg-dist-continuous".into());
        }
        out.push(check(
            "d_subinvariant_dist_continuous",
            (!bad.is_empty()).then(|| bad.join("; ")),
        ));

        let mut bad = vec![];
        if let Some(f) = sub(dr, side, "subinvariance of d_reg") {
            bad.push(f);
        }
        if !dr.axioms().triangle {
            bad.push("d_reg violates the triangle inequality".into());
        }
        if !dr.is_right_continuous(s)? {
            bad.push("d_reg is not right-continuous".into());
        }
        if !dr.is_dist_continuous(s, DistVariant::Reg)? {
            bad.push("d_reg is not reg-dist-continuous".into());
        }
        out.push(check(
            "d_reg_subinvariant_right_continuous",
            (!bad.is_empty()).then(|| bad.join("; ")),
        ));

        let mut bad = vec![];
        for x in 0..self.n() {
            let shifted = match side {
                Side::Left => self.set_mul(Self::pt(x), u),
                Side::Right => self.set_mul(u, Self::pt(x)),
            };
            if !bits::is_subset(d.ball(x, crate::dyadic::Dyadic::ONE), shifted) {
                bad.push(format!("unit d-ball at {x} escapes the shifted neighbourhood"));
            }
            if !bits::is_subset(dr.ball(x, crate::dyadic::Dyadic::ONE), s.reg_open_hull(shifted)) {
                bad.push(format!(
                    "unit d_reg-ball at {x} escapes int cl of the shifted neighbourhood"
                ));
            }
        }
        out.push(check("unit_ball_inclusions", (!bad.is_empty()).then(|| bad.join("; "))));

        if balanced {
            let mut bad = vec![];
            for (p, label) in [(d, "d"), (dr, "d_reg")] {
                for sd in [Side::Left, Side::Right] {
                    if let Some(f) = sub(p, sd, label) {
                        bad.push(f);
                    }
                }
            }
            out.push(check(
                "balanced_two_sided_subinvariance",
                (!bad.is_empty()).then(|| bad.join("; ")),
            ));
        } else {
            out.push(CheckResult {
                name: "balanced_two_sided_subinvariance".into(),
                status: CheckStatus::Skipped {
                    reason: "hypothesis not met: unit is not balanced".into(),
                },
            });
        }
        Ok(out)
    }

    /// One bundle per open neighbourhood of the unit, in canonical order.
    pub fn synth_family(&self, side: Side, strategy: ChainStrategy) -> Result<Vec<MonoidBundle>> {
        self.unit_nbhds()
            .into_iter()
            .map(|u| self.synth_subinvariant(u, side, strategy))
            .collect()
    }

    /// The family `{d_U}` generates the topology; its combination
    /// `max_i min(d_i, 2^{-i})` does too and stays a subinvariant
    /// quasi-pseudometric; on semiregular spaces the regularized family
    /// generates the topology as well.
    pub fn family_checks(&self, side: Side, strategy: ChainStrategy) -> Result<Vec<CheckResult>> {
        let fam = self.synth_family(side, strategy)?;
        let ds: Vec<Premetric> = fam.iter().map(|b| b.bundle.d.clone()).collect();
        let s = &self.space;
        let mut out = vec![check(
            "family_generates_topology",
            (!generates_topology(&ds, s)?).then(|| "balls of the family do not generate the topology".into()),
        )];
        let combined = Premetric::combine(&ds)?;
        let mut bad = vec![];
        if !generates_topology(std::slice::from_ref(&combined), s)? {
            bad.push("combined premetric does not generate the topology".to_string());
        }
        if let Some((x, y, z)) = self.subinvariance_failure(&combined, side) {
            bad.push(format!("combined premetric is not subinvariant at x={x}, y={y}, z={z}"));
        }
        if !combined.axioms().triangle {
            bad.push("combined premetric violates the triangle inequality".into());
        }
        out.push(check(
            "combined_generates_topology",
            (!bad.is_empty()).then(|| bad.join("; ")),
        ));
        if s.classify().half_r {
            let regs: Vec<Premetric> = fam.iter().map(|b| b.bundle.d_reg.clone()).collect();
            out.push(check(
                "regularized_family_generates_topology",
                (!generates_topology(&regs, s)?).then(|| "regularized family does not generate the topology".into()),
            ));
        } else {
            out.push(CheckResult {
                name: "regularized_family_generates_topology".into(),
                status: CheckStatus::Skipped {
                    reason: "hypothesis not met: space is not semiregular".into(),
                },
            });
        }
        Ok(out)
    }

    /// Two-sided inverses of every element.
    pub fn inverses(&self) -> Result<Vec<usize>> {
        if self.unit_side != UnitSide::Two {
            return Err(Error::NotAGroup(self.unit));
        }
        (0..self.n())
            .map(|x| {
                (0..self.n())
                    .find(|&y| self.mul(x, y) == self.unit && self.mul(y, x) == self.unit)
                    .ok_or(Error::NotAGroup(x))
            })
            .collect()
    }

    pub fn group_record(&self) -> Result<GroupRecord> {
        let inverses = self.inverses()?;
        let topological = self.space.is_continuous_map(&inverses);
        Ok(GroupRecord {
            inverses,
            paratopological: true,
            topological,
        })
    }

    /// `d(e, x) = d(x⁻¹, e)` for every `x`.
    pub fn is_weakly_invariant(&self, d: &Premetric) -> Result<bool> {
        let inv = self.inverses()?;
        let e = self.unit;
        Ok((0..self.n()).all(|x| d.get(e, x) == d.get(inv[x], e)))
    }

    pub fn to_doc(&self) -> MonoidDoc {
        MonoidDoc {
            space: self.space.to_doc(),
            mul: self.table(),
            unit: self.unit,
            unit_side: self.unit_side,
        }
    }

    pub fn from_doc(doc: &MonoidDoc, mode: Closure) -> Result<TopMonoid> {
        let space = FinSpace::from_doc(&doc.space, mode)?;
        TopMonoid::new(space, &doc.mul, doc.unit, doc.unit_side)
    }
}

/// JSON form `{"space": .., "mul": [[..]], "unit": .., "unit_side": ..}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonoidDoc {
    pub space: SpaceDoc,
    pub mul: Vec<Vec<usize>>,
    pub unit: usize,
    #[serde(default)]
    pub unit_side: UnitSide,
}

impl Serialize for TopMonoid {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_doc().serialize(s)
    }
}

impl<'de> Deserialize<'de> for TopMonoid {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        TopMonoid::from_doc(&MonoidDoc::deserialize(d)?, Closure::Auto).map_err(serde::de::Error::custom)
    }
}
