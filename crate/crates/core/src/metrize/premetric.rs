//! Premetrics with exact dyadic values and their ball/continuity calculus.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bits::{self, Subset};
use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::finspace::FinSpace;
use crate::relalg::Relation;

/// Largest carrier for the `dist`-continuity sweeps over all subsets.
pub const DIST_SWEEP_MAX: usize = 12;

/// `d : X × X → [0, 1]` with `d(x, x) = 0`, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Premetric {
    n: usize,
    values: Vec<Dyadic>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DistVariant {
    Plain,
    Reg,
    Semireg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomRecord {
    /// `d(x, y) = 0 ⟹ x = y`
    pub separation: bool,
    pub symmetry: bool,
    pub triangle: bool,
}

impl AxiomRecord {
    /// Most specific name among the metric generalizations.
    pub fn label(&self) -> &'static str {
        match (self.separation, self.symmetry, self.triangle) {
            (true, true, true) => "metric",
            (_, true, true) => "pseudometric",
            (true, false, true) => "quasi-metric",
            (false, false, true) => "quasi-pseudometric",
            (true, true, false) => "symmetric",
            _ => "premetric",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContinuityRecord {
    pub open_balls: bool,
    pub closed_balls: bool,
    pub right_continuous: bool,
    pub left_continuous: bool,
    pub separately_continuous: bool,
    pub continuous: bool,
    pub dist_continuous: bool,
    pub dist_reg_continuous: bool,
    pub dist_semireg_continuous: bool,
}

impl Premetric {
    /// Fails with `Parse` when a diagonal entry is non-zero.
    pub fn new(rows: Vec<Vec<Dyadic>>) -> Result<Premetric> {
        let n = rows.len();
        bits::check_carrier(n)?;
        let mut values = Vec::with_capacity(n * n);
        for (x, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::SizeMismatch(n, row.len()));
            }
            if !row[x].is_zero() {
                return Err(Error::Parse(format!("diagonal entry d({x},{x}) is {}", row[x])));
            }
            values.extend(row);
        }
        Ok(Premetric { n, values })
    }

    /// Diagonal entries are forced to zero.
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> Dyadic) -> Result<Premetric> {
        bits::check_carrier(n)?;
        let mut values = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                values.push(if x == y { Dyadic::ZERO } else { f(x, y) });
            }
        }
        Ok(Premetric { n, values })
    }

    pub fn zero(n: usize) -> Result<Premetric> {
        Premetric::from_fn(n, |_, _| Dyadic::ZERO)
    }

    pub fn discrete(n: usize) -> Result<Premetric> {
        Premetric::from_fn(n, |_, _| Dyadic::ONE)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, x: usize, y: usize) -> Dyadic {
        self.values[x * self.n + y]
    }

    pub fn row(&self, x: usize) -> &[Dyadic] {
        &self.values[x * self.n..(x + 1) * self.n]
    }

    pub fn column(&self, y: usize) -> Vec<Dyadic> {
        (0..self.n).map(|x| self.get(x, y)).collect()
    }

    pub fn rows(&self) -> Vec<Vec<Dyadic>> {
        (0..self.n).map(|x| self.row(x).to_vec()).collect()
    }

    /// Distinct values in increasing order.
    pub fn value_set(&self) -> Vec<Dyadic> {
        self.values
            .iter()
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    /// `B_d(x; ε) = {y : d(x, y) < ε}`.
    pub fn ball(&self, x: usize, eps: Dyadic) -> Subset {
        below(self.row(x), |v| v < eps)
    }

    /// `B_d(x; r] = {y : d(x, y) ≤ r}`.
    pub fn closed_ball(&self, x: usize, r: Dyadic) -> Subset {
        below(self.row(x), |v| v <= r)
    }

    /// `[d]_{<ε} = {(x, y) : d(x, y) < ε}`.
    pub fn strict_sublevel(&self, eps: Dyadic) -> Relation {
        let rows: Vec<Subset> = (0..self.n).map(|x| self.ball(x, eps)).collect();
        Relation::from_rows(self.n, &rows).expect("rows within carrier")
    }

    /// Entrywise `self ≤ other`.
    pub fn le(&self, other: &Premetric) -> bool {
        self.n == other.n && self.values.iter().zip(&other.values).all(|(a, b)| a <= b)
    }

    pub fn axioms(&self) -> AxiomRecord {
        let n = self.n;
        let separation = (0..n).all(|x| (0..n).all(|y| x == y || !self.get(x, y).is_zero()));
        let symmetry = (0..n).all(|x| (0..x).all(|y| self.get(x, y) == self.get(y, x)));
        let triangle =
            (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| self.get(x, z).le_sum(&self.get(x, y), &self.get(y, z)))));
        AxiomRecord {
            separation,
            symmetry,
            triangle,
        }
    }

    pub fn is_quasi_pseudometric(&self) -> bool {
        self.axioms().triangle
    }

    fn check_space(&self, s: &FinSpace) -> Result<()> {
        if s.n() != self.n {
            Err(Error::SizeMismatch(self.n, s.n()))
        } else {
            Ok(())
        }
    }

    /// Every open ball is open. Balls only change at values of the row, so
    /// the closed sublevel sets at those values are all the balls there are.
    pub fn has_open_balls(&self, s: &FinSpace) -> Result<bool> {
        self.check_space(s)?;
        Ok((0..self.n).all(|x| sublevels(self.row(x)).all(|b| s.is_open(b))))
    }

    pub fn has_closed_balls(&self, s: &FinSpace) -> Result<bool> {
        self.check_space(s)?;
        Ok((0..self.n).all(|x| sublevels(self.row(x)).all(|b| s.is_closed(b))))
    }

    pub fn is_right_continuous(&self, s: &FinSpace) -> Result<bool> {
        self.check_space(s)?;
        Ok((0..self.n).all(|x| s.is_continuous(self.row(x))))
    }

    pub fn is_left_continuous(&self, s: &FinSpace) -> Result<bool> {
        self.check_space(s)?;
        Ok((0..self.n).all(|y| s.is_continuous(&self.column(y))))
    }

    /// Joint continuity on `X × X`: constant on each `M(x) × M(y)`.
    pub fn is_continuous(&self, s: &FinSpace) -> Result<bool> {
        self.check_space(s)?;
        Ok((0..self.n).all(|x| {
            (0..self.n).all(|y| {
                let v = self.get(x, y);
                bits::points(s.min_nbhd(x)).all(|a| bits::points(s.min_nbhd(y)).all(|b| self.get(a, b) == v))
            })
        }))
    }

    /// `d_A`, `d̄_A`, or `d̄°_A` for a non-empty `A`.
    pub fn dist_fn(&self, s: &FinSpace, a: Subset, variant: DistVariant) -> Result<Vec<Dyadic>> {
        self.check_space(s)?;
        if a == 0 {
            return Err(Error::EmptySet);
        }
        bits::check_subset(self.n, a as u32)?;
        let plain: Vec<Dyadic> = (0..self.n)
            .map(|y| bits::points(a).map(|x| self.get(x, y)).min().expect("non-empty A"))
            .collect();
        Ok(modify(s, &plain, variant))
    }

    /// `d̄(x, y) = d̄_{{x}}(y)`.
    pub fn regularize(&self, s: &FinSpace) -> Result<Premetric> {
        self.modified(s, DistVariant::Reg)
    }

    /// `d̄°(x, y) = d̄°_{{x}}(y)`.
    pub fn semiregularize(&self, s: &FinSpace) -> Result<Premetric> {
        self.modified(s, DistVariant::Semireg)
    }

    fn modified(&self, s: &FinSpace, variant: DistVariant) -> Result<Premetric> {
        self.check_space(s)?;
        let mut values = Vec::with_capacity(self.n * self.n);
        for x in 0..self.n {
            values.extend(modify(s, self.row(x), variant));
        }
        Ok(Premetric { n: self.n, values })
    }

    /// Continuity of every distance function of the given variant.
    pub fn is_dist_continuous(&self, s: &FinSpace, variant: DistVariant) -> Result<bool> {
        self.check_space(s)?;
        if self.n > DIST_SWEEP_MAX {
            return Err(Error::TooLarge {
                n: self.n,
                max: DIST_SWEEP_MAX,
            });
        }
        for a in bits::nonempty_subsets(self.n) {
            if !s.is_continuous(&self.dist_fn(s, a, variant)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn continuity(&self, s: &FinSpace) -> Result<ContinuityRecord> {
        let right = self.is_right_continuous(s)?;
        let left = self.is_left_continuous(s)?;
        Ok(ContinuityRecord {
            open_balls: self.has_open_balls(s)?,
            closed_balls: self.has_closed_balls(s)?,
            right_continuous: right,
            left_continuous: left,
            separately_continuous: right && left,
            continuous: self.is_continuous(s)?,
            dist_continuous: self.is_dist_continuous(s, DistVariant::Plain)?,
            dist_reg_continuous: self.is_dist_continuous(s, DistVariant::Reg)?,
            dist_semireg_continuous: self.is_dist_continuous(s, DistVariant::Semireg)?,
        })
    }

    /// `max_i min(d_i, 2^{-i})` with `i` counted from 1.
    pub fn combine(ds: &[Premetric]) -> Result<Premetric> {
        let first = ds.first().ok_or(Error::EmptyList)?;
        if let Some(bad) = ds.iter().find(|d| d.n != first.n) {
            return Err(Error::SizeMismatch(first.n, bad.n));
        }
        if ds.len() > crate::dyadic::MAX_EXP as usize {
            return Err(Error::TooLarge {
                n: ds.len(),
                max: crate::dyadic::MAX_EXP as usize,
            });
        }
        let mut values = vec![Dyadic::ZERO; first.n * first.n];
        for (i, d) in ds.iter().enumerate() {
            let cap = Dyadic::pow2_neg(i as u32 + 1)?;
            for (acc, v) in values.iter_mut().zip(&d.values) {
                *acc = (*acc).max((*v).min(cap));
            }
        }
        Ok(Premetric { n: first.n, values })
    }

    pub fn to_doc(&self) -> PremetricDoc {
        PremetricDoc {
            n: self.n,
            values: self.rows(),
        }
    }

    pub fn from_doc(doc: PremetricDoc) -> Result<Premetric> {
        if doc.values.len() != doc.n {
            return Err(Error::SizeMismatch(doc.n, doc.values.len()));
        }
        Premetric::new(doc.values)
    }
}

/// Whether the balls of the family form a subbase of the topology of `s`.
pub fn generates_topology(ds: &[Premetric], s: &FinSpace) -> Result<bool> {
    let mut balls = vec![];
    for d in ds {
        d.check_space(s)?;
        for x in 0..d.n {
            balls.extend(sublevels(d.row(x)));
        }
    }
    if !balls.iter().all(|&b| s.is_open(b)) {
        return Ok(false);
    }
    Ok((0..s.n()).all(|y| {
        let meet = balls
            .iter()
            .filter(|&&b| bits::contains(b, y))
            .fold(s.full(), |acc, &b| acc & b);
        meet == s.min_nbhd(y)
    }))
}

fn below(row: &[Dyadic], keep: impl Fn(Dyadic) -> bool) -> Subset {
    row.iter()
        .enumerate()
        .filter(|(_, v)| keep(**v))
        .fold(0, |acc, (y, _)| acc | bits::singleton(y))
}

/// The sets `{y : f(y) ≤ v}` for each value `v` of `f`.
fn sublevels(f: &[Dyadic]) -> impl Iterator<Item = Subset> + '_ {
    let values: BTreeSet<Dyadic> = f.iter().copied().collect();
    values.into_iter().map(move |v| below(f, |w| w <= v))
}

/// `inf{ε > 0 : y ∈ op({f < ε})}` for each `y`. The sets `{f < ε}` are the
/// sublevel sets `{f ≤ v}` for `ε ∈ (v, v⁺]`, so the infimum is the least
/// such `v`.
fn modify(s: &FinSpace, f: &[Dyadic], variant: DistVariant) -> Vec<Dyadic> {
    if variant == DistVariant::Plain {
        return f.to_vec();
    }
    let values: Vec<Dyadic> = f.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let hulls: Vec<Subset> = values
        .iter()
        .map(|&v| {
            let sub = below(f, |w| w <= v);
            match variant {
                DistVariant::Reg => s.closure(sub),
                _ => sub | s.reg_open_hull(sub),
            }
        })
        .collect();
    (0..f.len())
        .map(|y| {
            let i = hulls
                .iter()
                .position(|&h| bits::contains(h, y))
                .expect("top sublevel is the carrier");
            values[i]
        })
        .collect()
}

impl fmt::Debug for Premetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

/// JSON form `{"n": .., "values": [[{"num": .., "exp": ..}, ..], ..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PremetricDoc {
    pub n: usize,
    pub values: Vec<Vec<Dyadic>>,
}

impl Serialize for Premetric {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_doc().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Premetric {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Premetric::from_doc(PremetricDoc::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z: Dyadic = Dyadic::ZERO;
    const O: Dyadic = Dyadic::ONE;

    fn sierpinski_d() -> Premetric {
        Premetric::new(vec![vec![Z, Z], vec![O, Z]]).unwrap()
    }

    #[test]
    fn construction() {
        assert!(Premetric::new(vec![vec![O, Z], vec![Z, Z]]).is_err());
        assert!(Premetric::new(vec![vec![Z, Z]]).is_err());
        assert_eq!(sierpinski_d().get(1, 0), O);
    }

    #[test]
    fn axiom_labels() {
        let a = sierpinski_d().axioms();
        assert_eq!((a.triangle, a.symmetry, a.separation), (true, false, false));
        assert_eq!(a.label(), "quasi-pseudometric");
        assert_eq!(Premetric::discrete(3).unwrap().axioms().label(), "metric");
        let z = Premetric::zero(3).unwrap().axioms();
        assert_eq!(z.label(), "pseudometric");
        assert!(z.triangle && !z.separation);
    }

    #[test]
    fn regularization_examples() {
        let sier = FinSpace::sierpinski(1).unwrap();
        let d = sierpinski_d();
        assert_eq!(d.regularize(&sier).unwrap(), Premetric::zero(2).unwrap());
        assert_eq!(d.semiregularize(&sier).unwrap(), Premetric::zero(2).unwrap());

        let disc = FinSpace::discrete(3).unwrap();
        let h = Dyadic::HALF;
        let e = Premetric::new(vec![vec![Z, h, O], vec![O, Z, h], vec![h, Z, Z]]).unwrap();
        assert_eq!(e.regularize(&disc).unwrap(), e);
        assert_eq!(e.semiregularize(&disc).unwrap(), e);

        let ind = FinSpace::indiscrete(3).unwrap();
        assert_eq!(e.regularize(&ind).unwrap(), Premetric::zero(3).unwrap());
    }

    #[test]
    fn distance_functions() {
        let sier = FinSpace::sierpinski(1).unwrap();
        let d = sierpinski_d();
        assert_eq!(d.dist_fn(&sier, 0b11, DistVariant::Plain).unwrap(), vec![Z, Z]);
        assert_eq!(d.dist_fn(&sier, 0b10, DistVariant::Plain).unwrap(), vec![O, Z]);
        assert_eq!(d.dist_fn(&sier, 0b10, DistVariant::Reg).unwrap(), vec![Z, Z]);
        assert_eq!(d.dist_fn(&sier, 0, DistVariant::Plain), Err(Error::EmptySet));
        for x in 0..2 {
            assert_eq!(
                d.dist_fn(&sier, bits::singleton(x), DistVariant::Plain).unwrap(),
                d.row(x)
            );
        }
    }

    #[test]
    fn continuity_examples() {
        let sier = FinSpace::sierpinski(1).unwrap();
        let c = sierpinski_d().continuity(&sier).unwrap();
        assert!(c.open_balls && !c.right_continuous);
        let z = Premetric::zero(2).unwrap().continuity(&sier).unwrap();
        assert!(z.right_continuous && z.continuous && z.dist_reg_continuous && z.dist_continuous);
        let disc = FinSpace::discrete(3).unwrap();
        let c = Premetric::discrete(3).unwrap().continuity(&disc).unwrap();
        assert!(c.open_balls && c.closed_balls && c.continuous && c.dist_continuous && c.dist_semireg_continuous);
    }

    #[test]
    fn combination() {
        let h = Dyadic::HALF;
        let d = Premetric::discrete(2).unwrap();
        assert_eq!(
            Premetric::combine(std::slice::from_ref(&d)).unwrap(),
            Premetric::from_fn(2, |_, _| h).unwrap()
        );
        let z = Premetric::zero(3).unwrap();
        assert_eq!(Premetric::combine(&[z.clone(), z.clone()]).unwrap(), z);
        assert_eq!(
            Premetric::combine(&[d.clone(), d]).unwrap(),
            Premetric::from_fn(2, |_, _| h).unwrap()
        );
        assert_eq!(Premetric::combine(&[]), Err(Error::EmptyList));
    }

    #[test]
    fn topology_generation() {
        let sier = FinSpace::sierpinski(1).unwrap();
        assert!(generates_topology(&[sierpinski_d()], &sier).unwrap());
        assert!(!generates_topology(&[Premetric::zero(2).unwrap()], &sier).unwrap());
        assert!(!generates_topology(&[Premetric::discrete(2).unwrap()], &sier).unwrap());
    }

    #[test]
    fn json_form() {
        let json = serde_json::to_string(&sierpinski_d()).unwrap();
        assert_eq!(
            json,
            r#"{"n":2,"values":[[{"num":0,"exp":0},{"num":0,"exp":0}],[{"num":1,"exp":0},{"num":0,"exp":0}]]}"#
        );
        let back: Premetric = serde_json::from_str(&json).unwrap();
        assert_eq!(back, sierpinski_d());
    }
}
