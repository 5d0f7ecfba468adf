//! Bases of quasi-uniformities on finite carriers.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::bits::{self, Subset};
use crate::error::{Error, Result};
use crate::finspace::FinSpace;
use crate::metrize::{self, Premetric};
use crate::relalg::{Entourage, Relation, RelationDoc};

/// Largest carrier for checks that range over all subsets.
pub const SUBSET_SWEEP_MAX: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntourageBase {
    n: usize,
    members: Vec<Entourage>,
    multiplicative: bool,
    symmetric: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RotundKind {
    Point,
    Set,
    Delta,
    Full,
}

impl RotundKind {
    pub const ALL: [RotundKind; 4] = [RotundKind::Point, RotundKind::Set, RotundKind::Delta, RotundKind::Full];

    pub fn name(self) -> &'static str {
        match self {
            RotundKind::Point => "point",
            RotundKind::Set => "set",
            RotundKind::Delta => "delta",
            RotundKind::Full => "full",
        }
    }

    pub fn parse(s: &str) -> Result<RotundKind> {
        match s {
            "point" => Ok(RotundKind::Point),
            "set" => Ok(RotundKind::Set),
            "delta" => Ok(RotundKind::Delta),
            "full" => Ok(RotundKind::Full),
            other => Err(Error::Parse(format!("unknown rotundness kind `{other}`"))),
        }
    }
}

/// A failing instance of a rotundness inclusion. `members` are indices into
/// the base in the order they appear in the inclusion (`V, U` for point,
/// `U` for set, `V, W, U` for delta, `W, U` for full).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RotundCounterexample {
    pub kind: RotundKind,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub point: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub subset: Option<Vec<usize>>,
    pub members: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RotundFlags {
    pub point: bool,
    pub set: bool,
    pub delta: bool,
    pub full: bool,
}

impl RotundFlags {
    pub fn get(&self, kind: RotundKind) -> bool {
        match kind {
            RotundKind::Point => self.point,
            RotundKind::Set => self.set,
            RotundKind::Delta => self.delta,
            RotundKind::Full => self.full,
        }
    }

    /// Arrows `full ⟹ delta ⟹ point` and `full ⟹ set ⟹ point` that fail.
    pub fn violated_implications(&self) -> Vec<&'static str> {
        let arrows = [
            ("full=>delta", self.full, self.delta),
            ("full=>set", self.full, self.set),
            ("delta=>point", self.delta, self.point),
            ("set=>point", self.set, self.point),
        ];
        arrows
            .iter()
            .filter(|(_, a, b)| *a && !*b)
            .map(|(name, _, _)| *name)
            .collect()
    }
}

/// How uniform complete regularity was settled.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum CompleteRegularity {
    /// A uniform right-continuous premetric whose unit balls sit inside the
    /// balls of the minimum member.
    Witnessed {
        route: String,
        premetric: Premetric,
    },
    Refuted {
        reason: String,
    },
}

impl CompleteRegularity {
    pub fn holds(&self) -> bool {
        matches!(self, CompleteRegularity::Witnessed { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UniformRegularity {
    pub regular: bool,
    pub semiregular: bool,
    pub completely_regular: CompleteRegularity,
}

impl EntourageBase {
    /// Canonicalizes and checks axioms (U1) and (U2). Error indices refer to
    /// the canonical member order.
    pub fn new(members: &[Entourage]) -> Result<EntourageBase> {
        let first = members.first().ok_or(Error::EmptyList)?;
        let n = first.n();
        if let Some(bad) = members.iter().find(|m| m.n() != n) {
            return Err(Error::SizeMismatch(n, bad.n()));
        }
        let ms: Vec<Entourage> = members.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        for i in 0..ms.len() {
            for j in i + 1..ms.len() {
                let meet = ms[i].relation().intersection(ms[j].relation())?;
                if !ms.iter().any(|w| w.is_subset_of(&meet)) {
                    return Err(Error::AxiomU1Violated(i, j));
                }
            }
        }
        for (i, u) in ms.iter().enumerate() {
            if !ms.iter().any(|v| v.compose_unchecked(v).is_subset_of(u)) {
                return Err(Error::AxiomU2Violated(i));
            }
        }
        let multiplicative = ms
            .iter()
            .all(|u| ms.iter().all(|v| ms.binary_search(&u.compose_unchecked(v)).is_ok()));
        let symmetric = ms.iter().all(|u| u.is_symmetric());
        Ok(EntourageBase {
            n,
            members: ms,
            multiplicative,
            symmetric,
        })
    }

    /// The base `{T}` of the specialization preorder of a space: the unique
    /// quasi-uniformity on a finite carrier compatible with its topology.
    pub fn of_space(s: &FinSpace) -> EntourageBase {
        let t = Entourage::from_rows(s.n(), s.min_nbhds()).expect("minimal neighbourhoods contain their points");
        EntourageBase {
            n: s.n(),
            members: vec![t],
            multiplicative: true,
            symmetric: t.is_symmetric(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[Entourage] {
        &self.members
    }

    pub fn is_multiplicative(&self) -> bool {
        self.multiplicative
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    /// Size of this base; no search for a smaller base is attempted.
    pub fn uniform_character(&self) -> usize {
        self.members.len()
    }

    pub fn index_of(&self, u: &Entourage) -> Option<usize> {
        self.members.binary_search(u).ok()
    }

    /// Whether `rel` belongs to the generated quasi-uniformity.
    pub fn generates(&self, rel: &Relation) -> bool {
        self.members.iter().any(|m| m.is_subset_of(rel))
    }

    /// Closure under composition.
    pub fn saturate_mult(&self) -> EntourageBase {
        if self.multiplicative {
            return self.clone();
        }
        let mut all: BTreeSet<Entourage> = self.members.iter().copied().collect();
        let mut frontier: Vec<Entourage> = self.members.clone();
        while !frontier.is_empty() {
            let snapshot: Vec<Entourage> = all.iter().copied().collect();
            let mut fresh = vec![];
            for f in &frontier {
                for g in &snapshot {
                    for c in [f.compose_unchecked(g), g.compose_unchecked(f)] {
                        if all.insert(c) {
                            fresh.push(c);
                        }
                    }
                }
            }
            frontier = fresh;
        }
        let members: Vec<Entourage> = all.into_iter().collect();
        let symmetric = members.iter().all(|u| u.is_symmetric());
        EntourageBase {
            n: self.n,
            members,
            multiplicative: true,
            symmetric,
        }
    }

    /// Intersection of all members; a transitive member for every valid base.
    pub fn min_entourage(&self) -> Entourage {
        let mut t = self.members[0];
        for m in &self.members[1..] {
            t = t.intersection(m).expect("members share a carrier");
        }
        t
    }

    /// Minimal neighbourhoods are the balls of the minimum member.
    pub fn induced_topology(&self) -> FinSpace {
        let t = self.min_entourage();
        FinSpace::from_min_nbhds(self.n, t.rows().to_vec()).expect("minimum member of a base is a preorder")
    }

    fn check_space(&self, s: &FinSpace) -> Result<()> {
        if s.n() != self.n {
            Err(Error::SizeMismatch(self.n, s.n()))
        } else {
            Ok(())
        }
    }

    fn check_sweep(&self) -> Result<()> {
        if self.n > SUBSET_SWEEP_MAX {
            Err(Error::TooLarge {
                n: self.n,
                max: SUBSET_SWEEP_MAX,
            })
        } else {
            Ok(())
        }
    }

    /// `None` when the inclusion holds everywhere, else the first failure in
    /// (point or subset, then member index) order.
    pub fn rotund_check(&self, s: &FinSpace, kind: RotundKind) -> Result<Option<RotundCounterexample>> {
        self.check_space(s)?;
        let ms = &self.members;
        let k = ms.len();
        let cx_point = |x: usize, members: Vec<usize>| RotundCounterexample {
            kind,
            point: Some(x),
            subset: None,
            members,
        };
        let cx_set = |a: Subset, members: Vec<usize>| RotundCounterexample {
            kind,
            point: None,
            subset: Some(bits::to_points(a)),
            members,
        };
        match kind {
            RotundKind::Point => {
                // cl B(x;V) ⊆ int cl B(x;V∘U)
                for x in 0..self.n {
                    for (vi, v) in ms.iter().enumerate() {
                        let lhs = s.closure(v.row(x));
                        for (ui, u) in ms.iter().enumerate() {
                            let rhs = s.reg_open_hull(u.ball(v.row(x)));
                            if !bits::is_subset(lhs, rhs) {
                                return Ok(Some(cx_point(x, vec![vi, ui])));
                            }
                        }
                    }
                }
            }
            RotundKind::Set => {
                // cl A ⊆ int cl B(A;U)
                self.check_sweep()?;
                for a in bits::nonempty_subsets(self.n) {
                    let lhs = s.closure(a);
                    for (ui, u) in ms.iter().enumerate() {
                        if !bits::is_subset(lhs, s.reg_open_hull(u.ball(a))) {
                            return Ok(Some(cx_set(a, vec![ui])));
                        }
                    }
                }
            }
            RotundKind::Delta => {
                // B(cl B(x;V); U) ⊆ cl B(x; V∘W∘U)
                for x in 0..self.n {
                    for (vi, v) in ms.iter().enumerate() {
                        let cl = s.closure(v.row(x));
                        for (wi, w) in ms.iter().enumerate() {
                            let vw = w.ball(v.row(x));
                            for (ui, u) in ms.iter().enumerate() {
                                if !bits::is_subset(u.ball(cl), s.closure(u.ball(vw))) {
                                    return Ok(Some(cx_point(x, vec![vi, wi, ui])));
                                }
                            }
                        }
                    }
                }
            }
            RotundKind::Full => {
                // B(cl A; U) ⊆ cl B(A; W∘U)
                self.check_sweep()?;
                let mut wu = Vec::with_capacity(k * k);
                for w in ms {
                    for u in ms {
                        wu.push(w.compose_unchecked(u));
                    }
                }
                for a in bits::nonempty_subsets(self.n) {
                    let cl = s.closure(a);
                    for (ui, u) in ms.iter().enumerate() {
                        let lhs = u.ball(cl);
                        for wi in 0..k {
                            if !bits::is_subset(lhs, s.closure(wu[wi * k + ui].ball(a))) {
                                return Ok(Some(cx_set(a, vec![wi, ui])));
                            }
                        }
                    }
                }
            }
        }
        Ok(None)
    }

    pub fn is_rotund(&self, s: &FinSpace, kind: RotundKind) -> Result<bool> {
        Ok(self.rotund_check(s, kind)?.is_none())
    }

    pub fn rotund_flags(&self, s: &FinSpace) -> Result<RotundFlags> {
        Ok(RotundFlags {
            point: self.is_rotund(s, RotundKind::Point)?,
            set: self.is_rotund(s, RotundKind::Set)?,
            delta: self.is_rotund(s, RotundKind::Delta)?,
            full: self.is_rotund(s, RotundKind::Full)?,
        })
    }

    /// Some member `V` with `cl B(x;V) ⊆ B(x;U)` for every member `U`.
    pub fn is_uniformly_regular(&self, s: &FinSpace) -> Result<bool> {
        self.check_space(s)?;
        Ok(self
            .regular_witnesses(s, |v, x| s.closure(v.row(x)))
            .iter()
            .all(Option::is_some))
    }

    /// As [`Self::is_uniformly_regular`] with `int cl B(x;V)`.
    pub fn is_uniformly_semiregular(&self, s: &FinSpace) -> Result<bool> {
        self.check_space(s)?;
        Ok(self
            .regular_witnesses(s, |v, x| s.reg_open_hull(v.row(x)))
            .iter()
            .all(Option::is_some))
    }

    /// For each member `U`, the first member `V` whose modified balls sit in
    /// the `U`-balls.
    fn regular_witnesses(&self, s: &FinSpace, op: impl Fn(&Entourage, usize) -> Subset) -> Vec<Option<usize>> {
        self.members
            .iter()
            .map(|u| {
                self.members
                    .iter()
                    .position(|v| (0..s.n()).all(|x| bits::is_subset(op(v, x), u.row(x))))
            })
            .collect()
    }

    /// Regularity predicates; complete regularity is settled exactly.
    ///
    /// A right-continuous premetric is constant on each connected component
    /// in its second argument, and a uniform one vanishes on the minimum
    /// member `T`. So a witness exists iff for each `x` every component
    /// meeting `B(x;T)` lies in `B(x;T)`. When that holds and the base is
    /// point-rotund the witness is built by the metrization engine
    /// (semiregularization of the metric for the semiregular shrinking);
    /// otherwise the component indicator is returned.
    pub fn uniform_regularity(&self, s: &FinSpace) -> Result<UniformRegularity> {
        self.check_space(s)?;
        let regular = self.is_uniformly_regular(s)?;
        let semiregular = self.is_uniformly_semiregular(s)?;
        let t = self.min_entourage();
        let comps = s.components();
        let comp_of = |y: usize| {
            *comps
                .iter()
                .find(|c| bits::contains(**c, y))
                .expect("components cover the carrier")
        };
        let mut hull = Vec::with_capacity(self.n);
        for x in 0..self.n {
            let h = bits::points(t.row(x)).fold(0, |acc, y| acc | comp_of(y));
            if !bits::is_subset(h, t.row(x)) {
                let y = bits::points(h & !t.row(x)).next().expect("nonempty difference");
                return Ok(UniformRegularity {
                    regular,
                    semiregular,
                    completely_regular: CompleteRegularity::Refuted {
                        reason: format!(
                            "point {y} is connected to the minimal ball of {x} but lies outside it, \
                             so no right-continuous uniform premetric fits"
                        ),
                    },
                });
            }
            hull.push(h);
        }
        let via_engine = if semiregular { self.engine_witness(s, &t)? } else { None };
        let completely_regular = match via_engine {
            Some(p) => CompleteRegularity::Witnessed {
                route: "rotund-construction".into(),
                premetric: p,
            },
            None => {
                let p = Premetric::from_fn(self.n, |x, y| {
                    if bits::contains(hull[x], y) {
                        crate::dyadic::Dyadic::ZERO
                    } else {
                        crate::dyadic::Dyadic::ONE
                    }
                })?;
                CompleteRegularity::Witnessed {
                    route: "component-indicator".into(),
                    premetric: p,
                }
            }
        };
        Ok(UniformRegularity {
            regular,
            semiregular,
            completely_regular,
        })
    }

    /// Runs the construction on a point-rotund multiplicative base with a
    /// target `V` satisfying `int cl B(x;V) ⊆ B(x;T)`, returning the
    /// semiregularized metric when it fits under `T`.
    fn engine_witness(&self, s: &FinSpace, t: &Entourage) -> Result<Option<Premetric>> {
        let base = self.saturate_mult();
        if !base.is_rotund(s, RotundKind::Point)? {
            return Ok(None);
        }
        let Some(v) = base
            .members
            .iter()
            .find(|v| (0..s.n()).all(|x| bits::is_subset(s.reg_open_hull(v.row(x)), t.row(x))))
        else {
            return Ok(None);
        };
        let chain = metrize::Chain::build(&base, v, metrize::ChainStrategy::default())?;
        let d = chain.eval_d()?;
        let p = d.semiregularize(s)?;
        let fits = (0..s.n()).all(|x| bits::is_subset(p.ball(x, crate::dyadic::Dyadic::ONE), t.row(x)));
        let ok = fits && p.is_right_continuous(s)? && self.is_u_uniform(&p)?;
        Ok(ok.then_some(p))
    }

    /// `[d]_{<ε}` belongs to the generated quasi-uniformity for every `ε > 0`.
    /// The strict sublevel relations only change at values of `d`, so the
    /// positive values together with 1 exhaust them.
    pub fn is_u_uniform(&self, d: &Premetric) -> Result<bool> {
        if d.n() != self.n {
            return Err(Error::SizeMismatch(self.n, d.n()));
        }
        let mut eps: Vec<_> = d.value_set().into_iter().filter(|v| !v.is_zero()).collect();
        eps.push(crate::dyadic::Dyadic::ONE);
        Ok(eps.iter().all(|e| self.generates(&d.strict_sublevel(*e))))
    }

    pub fn to_doc(&self) -> BaseDoc {
        BaseDoc {
            n: self.n,
            members: self.members.iter().map(|m| m.to_doc()).collect(),
        }
    }

    /// Lenient parse adds missing diagonal entries; strict parse rejects them.
    pub fn from_doc(doc: &BaseDoc, strict: bool) -> Result<EntourageBase> {
        let mut ms = Vec::with_capacity(doc.members.len());
        for m in &doc.members {
            if m.n != doc.n {
                return Err(Error::SizeMismatch(doc.n, m.n));
            }
            ms.push(if strict {
                Entourage::from_doc_strict(m)?
            } else {
                Entourage::from_doc(m)?
            });
        }
        EntourageBase::new(&ms)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaseDoc {
    pub n: usize,
    pub members: Vec<RelationDoc>,
}

impl Serialize for EntourageBase {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_doc().serialize(s)
    }
}

impl<'de> Deserialize<'de> for EntourageBase {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = BaseDoc::deserialize(d)?;
        EntourageBase::from_doc(&doc, false).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyadic::Dyadic;

    fn t() -> Entourage {
        Entourage::from_pairs(2, &[(0, 1)]).unwrap()
    }

    fn step(n: usize) -> Entourage {
        let pairs: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        Entourage::from_pairs(n, &pairs).unwrap()
    }

    #[test]
    fn validation_examples() {
        let d = EntourageBase::new(&[Entourage::diagonal(3).unwrap()]).unwrap();
        assert!(d.is_multiplicative() && d.is_symmetric());
        let b = EntourageBase::new(&[t()]).unwrap();
        assert!(b.is_multiplicative() && !b.is_symmetric());
        assert_eq!(
            EntourageBase::new(&[t(), t().inverse()]),
            Err(Error::AxiomU1Violated(0, 1))
        );
        let ok = EntourageBase::new(&[t(), t().inverse(), Entourage::diagonal(2).unwrap()]).unwrap();
        assert_eq!(ok.members().len(), 3);
        assert_eq!(EntourageBase::new(&[step(3)]), Err(Error::AxiomU2Violated(0)));
        assert_eq!(EntourageBase::new(&[]), Err(Error::EmptyList));
    }

    #[test]
    fn saturation() {
        let b = EntourageBase::new(&[t()]).unwrap();
        assert_eq!(b.saturate_mult(), b);
        let s = step(3);
        let s2 = s.power(2).unwrap();
        let b = EntourageBase::new(&[Entourage::diagonal(3).unwrap(), s]).unwrap();
        assert!(!b.is_multiplicative());
        let sat = b.saturate_mult();
        assert!(sat.is_multiplicative());
        assert_eq!(sat.members(), &[Entourage::diagonal(3).unwrap(), s, s2]);
        for m in sat.members() {
            assert!(b.generates(m.relation()));
        }
        let f = EntourageBase::new(&[Entourage::full(3).unwrap()]).unwrap();
        assert_eq!(f.saturate_mult(), f);
    }

    #[test]
    fn induced_topologies() {
        let b = EntourageBase::new(&[t()]).unwrap();
        assert_eq!(b.induced_topology(), FinSpace::sierpinski(1).unwrap());
        let d = EntourageBase::new(&[Entourage::diagonal(3).unwrap()]).unwrap();
        assert!(d.induced_topology().is_discrete());
        let f = EntourageBase::new(&[Entourage::full(3).unwrap()]).unwrap();
        assert!(f.induced_topology().is_indiscrete());
    }

    #[test]
    fn induced_topology_matches_definition() {
        let s = step(4);
        let b = EntourageBase::new(&[
            Entourage::diagonal(4).unwrap(),
            s,
            s.power(2).unwrap(),
            s.power(3).unwrap(),
        ])
        .unwrap();
        let top = b.induced_topology();
        for w in 0..=bits::full(4) {
            let open = bits::points(w).all(|x| b.members().iter().any(|u| bits::is_subset(u.row(x), w)));
            assert_eq!(open, top.is_open(w), "set {w:#b}");
        }
    }

    #[test]
    fn minimum_member() {
        assert_eq!(EntourageBase::new(&[t()]).unwrap().min_entourage(), t());
        let b = EntourageBase::new(&[t(), Entourage::full(2).unwrap()]).unwrap();
        assert_eq!(b.min_entourage(), t());
        assert!(b.min_entourage().is_transitive());
    }

    #[test]
    fn rotund_examples() {
        let b = EntourageBase::new(&[t()]).unwrap();
        let sier = FinSpace::sierpinski(1).unwrap();
        assert!(b.is_rotund(&sier, RotundKind::Point).unwrap());
        let d = EntourageBase::new(&[Entourage::diagonal(3).unwrap()]).unwrap();
        let disc = FinSpace::discrete(3).unwrap();
        for k in RotundKind::ALL {
            assert!(d.is_rotund(&disc, k).unwrap());
        }
        let sym = EntourageBase::new(&[Entourage::from_pairs(2, &[(0, 1), (1, 0)]).unwrap()]).unwrap();
        assert!(sym.is_rotund(&sym.induced_topology(), RotundKind::Full).unwrap());
    }

    #[test]
    fn regularity_examples() {
        let sier = FinSpace::sierpinski(1).unwrap();
        let b = EntourageBase::new(&[t()]).unwrap();
        let r = b.uniform_regularity(&sier).unwrap();
        assert!(!r.regular && !r.semiregular && !r.completely_regular.holds());

        let disc = FinSpace::discrete(3).unwrap();
        let d = EntourageBase::new(&[Entourage::diagonal(3).unwrap()]).unwrap();
        let r = d.uniform_regularity(&disc).unwrap();
        assert!(r.regular && r.semiregular && r.completely_regular.holds());

        let ind = FinSpace::indiscrete(3).unwrap();
        let f = EntourageBase::new(&[Entourage::full(3).unwrap()]).unwrap();
        let r = f.uniform_regularity(&ind).unwrap();
        assert!(r.regular && r.semiregular && r.completely_regular.holds());
    }

    #[test]
    fn uniformity_of_premetrics() {
        let b = EntourageBase::new(&[Entourage::full(2).unwrap()]).unwrap();
        assert!(b.is_u_uniform(&Premetric::zero(2).unwrap()).unwrap());
        assert!(!b.is_u_uniform(&Premetric::discrete(2).unwrap()).unwrap());
        let g = Premetric::from_fn(2, |x, y| if x == 1 && y == 0 { Dyadic::ONE } else { Dyadic::ZERO }).unwrap();
        assert!(EntourageBase::new(&[t()]).unwrap().is_u_uniform(&g).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let b = EntourageBase::new(&[t(), Entourage::full(2).unwrap()]).unwrap();
        let json = serde_json::to_string(&b).unwrap();
        assert_eq!(
            json,
            r#"{"n":2,"members":[{"n":2,"rows":[[0,1],[1]]},{"n":2,"rows":[[0,1],[0,1]]}]}"#
        );
        let back: EntourageBase = serde_json::from_str(&json).unwrap();
        assert_eq!(back, b);
        let doc: BaseDoc = serde_json::from_str(r#"{"n":2,"members":[{"n":2,"rows":[[1],[1]]}]}"#).unwrap();
        assert_eq!(EntourageBase::from_doc(&doc, true), Err(Error::MissingDiagonal(0)));
        assert_eq!(EntourageBase::from_doc(&doc, false).unwrap().members(), &[t()]);
    }
}
