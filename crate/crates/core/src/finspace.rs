//! Finite topological spaces.
//!
//! Every finite topology is Alexandrov: each point `x` has a smallest open
//! neighbourhood `M(x)`, and a set is open iff it contains `M(x)` for each of
//! its points. All operators here are computed from the table of minimal
//! neighbourhoods; the sorted list of opens is kept as the canonical form.

use serde::{Deserialize, Serialize};

use crate::bits::{self, Subset};
use crate::error::{Error, Result};

/// How `mk_space` treats a family that is not a topology yet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Closure {
    /// Close the family under unions and intersections, adding ∅ and X.
    #[default]
    Auto,
    /// Reject anything that is not already a topology.
    Strict,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinSpace {
    n: usize,
    opens: Vec<Subset>,
    min_nbhd: Vec<Subset>,
}

impl FinSpace {
    /// Builds the topology generated by `family` on `n` points.
    pub fn new(n: usize, family: &[Subset], mode: Closure) -> Result<Self> {
        bits::check_carrier(n)?;
        for &s in family {
            bits::check_subset(n, s as u32)?;
        }
        let all = bits::full(n);
        let mut min_nbhd = vec![all; n];
        for &s in family {
            for x in bits::points(s) {
                min_nbhd[x] &= s;
            }
        }
        let space = Self::from_min_nbhds_unchecked(n, min_nbhd);
        if mode == Closure::Strict {
            let mut given: Vec<Subset> = family.to_vec();
            given.sort_unstable();
            given.dedup();
            if let Some(&missing) = space.opens.iter().find(|o| given.binary_search(o).is_err()) {
                return Err(Error::NotLatticeClosed {
                    missing: missing as u32,
                });
            }
        }
        Ok(space)
    }

    /// Builds a space from its minimal neighbourhoods. The table must be
    /// reflexive (`x ∈ M(x)`) and transitive (`y ∈ M(x)` ⟹ `M(y) ⊆ M(x)`).
    pub fn from_min_nbhds(n: usize, min_nbhd: Vec<Subset>) -> Result<Self> {
        bits::check_carrier(n)?;
        if min_nbhd.len() != n {
            return Err(Error::SizeMismatch(n, min_nbhd.len()));
        }
        for (x, &m) in min_nbhd.iter().enumerate() {
            bits::check_subset(n, m as u32)?;
            if !bits::contains(m, x) {
                return Err(Error::MissingDiagonal(x));
            }
            for y in bits::points(m) {
                if !bits::is_subset(min_nbhd[y], m) {
                    return Err(Error::NotLatticeClosed { missing: m as u32 });
                }
            }
        }
        Ok(Self::from_min_nbhds_unchecked(n, min_nbhd))
    }

    pub(crate) fn from_min_nbhds_unchecked(n: usize, min_nbhd: Vec<Subset>) -> Self {
        let mut opens = Vec::new();
        collect_opens(&min_nbhd, 0, 0, bits::full(n), &mut opens);
        opens.sort_unstable_by_key(|&o| bits::canonical_key(o));
        FinSpace { n, opens, min_nbhd }
    }

    pub fn discrete(n: usize) -> Result<Self> {
        Self::from_min_nbhds(n, (0..n).map(bits::singleton).collect())
    }

    pub fn indiscrete(n: usize) -> Result<Self> {
        bits::check_carrier(n)?;
        Ok(Self::from_min_nbhds_unchecked(n, vec![bits::full(n); n]))
    }

    /// Two points, `open_point` the only non-trivial open.
    pub fn sierpinski(open_point: usize) -> Result<Self> {
        Self::new(2, &[bits::from_points(2, &[open_point])?], Closure::Auto)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn full(&self) -> Subset {
        bits::full(self.n)
    }

    /// Opens in canonical order: by popcount, then numeric value.
    pub fn opens(&self) -> &[Subset] {
        &self.opens
    }

    pub fn min_nbhds(&self) -> &[Subset] {
        &self.min_nbhd
    }

    pub fn min_nbhd(&self, x: usize) -> Subset {
        self.min_nbhd[x]
    }

    pub fn is_open(&self, a: Subset) -> bool {
        bits::points(a).all(|x| bits::is_subset(self.min_nbhd[x], a))
    }

    pub fn is_closed(&self, a: Subset) -> bool {
        self.is_open(self.full() & !a)
    }

    pub fn interior(&self, a: Subset) -> Subset {
        (0..self.n)
            .filter(|&x| bits::is_subset(self.min_nbhd[x], a))
            .fold(0, |acc, x| acc | bits::singleton(x))
    }

    pub fn closure(&self, a: Subset) -> Subset {
        (0..self.n)
            .filter(|&x| self.min_nbhd[x] & a != 0)
            .fold(0, |acc, x| acc | bits::singleton(x))
    }

    /// `int(cl(A))`.
    pub fn reg_open_hull(&self, a: Subset) -> Subset {
        self.interior(self.closure(a))
    }

    pub fn is_regular_open(&self, a: Subset) -> bool {
        self.reg_open_hull(a) == a
    }

    /// Classes of the equivalence generated by `y ∈ M(x)`; indexed by point.
    pub fn components(&self) -> Vec<Subset> {
        let mut class = self.min_nbhd.clone();
        loop {
            let mut changed = false;
            for x in 0..self.n {
                let c = class
                    .iter()
                    .filter(|&&k| k & class[x] != 0)
                    .fold(class[x], |acc, &k| acc | k);
                if c != class[x] {
                    class[x] = c;
                    changed = true;
                }
            }
            if !changed {
                return class;
            }
        }
    }

    /// Specialization preorder as the relation `{(x, y) : y ∈ M(x)}`.
    pub fn specialization_rows(&self) -> &[Subset] {
        &self.min_nbhd
    }

    /// Decides continuity of a function into a T1 target (such as the
    /// rationals): on a finite space it must be constant on every `M(x)`.
    pub fn is_continuous<T: PartialEq>(&self, f: &[T]) -> bool {
        debug_assert_eq!(f.len(), self.n);
        (0..self.n).all(|x| bits::points(self.min_nbhd[x]).all(|y| f[y] == f[x]))
    }

    /// Continuity of a self-map `g`: `g(M(x)) ⊆ M(g(x))`.
    pub fn is_continuous_map(&self, g: &[usize]) -> bool {
        (0..self.n).all(|x| bits::points(self.min_nbhd[x]).all(|y| bits::contains(self.min_nbhd[g[x]], g[y])))
    }

    pub fn is_discrete(&self) -> bool {
        (0..self.n).all(|x| self.min_nbhd[x] == bits::singleton(x))
    }

    pub fn is_indiscrete(&self) -> bool {
        self.min_nbhd.iter().all(|&m| m == self.full())
    }

    pub fn classify(&self) -> SeparationRecord {
        SeparationRecord::of(self)
    }

    pub fn to_doc(&self) -> SpaceDoc {
        SpaceDoc {
            n: self.n,
            opens: self.opens.iter().map(|&o| bits::to_points(o)).collect(),
        }
    }

    pub fn from_doc(doc: &SpaceDoc, mode: Closure) -> Result<Self> {
        bits::check_carrier(doc.n)?;
        let family = doc
            .opens
            .iter()
            .map(|pts| bits::from_points(doc.n, pts))
            .collect::<Result<Vec<_>>>()?;
        Self::new(doc.n, &family, mode)
    }
}

fn collect_opens(min_nbhd: &[Subset], x: usize, acc: Subset, full: Subset, out: &mut Vec<Subset>) {
    // Decide membership point by point; a point may join only if its
    // minimal neighbourhood is already covered or still undecided.
    let n = min_nbhd.len();
    if x == n {
        if bits::points(acc).all(|p| bits::is_subset(min_nbhd[p], acc)) {
            out.push(acc);
        }
        return;
    }
    let undecided = full & !((1u32 << x) as u16).wrapping_sub(1);
    collect_opens(min_nbhd, x + 1, acc, full, out);
    let with = acc | bits::singleton(x);
    if bits::is_subset(min_nbhd[x], with | undecided) {
        collect_opens(min_nbhd, x + 1, with, full, out);
    }
}

/// Canonical JSON form of a space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDoc {
    pub n: usize,
    pub opens: Vec<Vec<usize>>,
}

impl Serialize for FinSpace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_doc().serialize(s)
    }
}

impl<'de> Deserialize<'de> for FinSpace {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = SpaceDoc::deserialize(d)?;
        FinSpace::from_doc(&doc, Closure::Auto).map_err(serde::de::Error::custom)
    }
}

/// Flags for the separation axioms of a finite space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SeparationRecord {
    #[serde(rename = "T0")]
    pub t0: bool,
    #[serde(rename = "T1")]
    pub t1: bool,
    /// Hausdorff.
    #[serde(rename = "T2")]
    pub t2: bool,
    /// Semi-Hausdorff.
    #[serde(rename = "T_half2")]
    pub t_half2: bool,
    /// Functionally Hausdorff.
    #[serde(rename = "T2_half")]
    pub t2_half: bool,
    /// Regular.
    #[serde(rename = "R")]
    pub r: bool,
    /// Semiregular.
    #[serde(rename = "half_R")]
    pub half_r: bool,
    /// Completely regular.
    #[serde(rename = "R_half")]
    pub r_half: bool,
    #[serde(rename = "T3")]
    pub t3: bool,
    #[serde(rename = "T_half3")]
    pub t_half3: bool,
    #[serde(rename = "T3_half")]
    pub t3_half: bool,
}

impl SeparationRecord {
    fn of(s: &FinSpace) -> Self {
        let n = s.n;
        let m = &s.min_nbhd;
        let distinct = || (0..n).flat_map(move |x| (0..n).filter(move |&y| y != x).map(move |y| (x, y)));

        let t0 = distinct().all(|(x, y)| m[x] != m[y]);
        let t1 = distinct().all(|(x, y)| !bits::contains(m[x], y));
        // The minimal neighbourhood gives the smallest closure and the
        // smallest regular-open hull, so it is the only candidate to test.
        let t2 = distinct().all(|(x, y)| !bits::contains(s.closure(m[x]), y));
        let t_half2 = distinct().all(|(x, y)| !bits::contains(s.reg_open_hull(m[x]), y));
        let comps = s.components();
        let t2_half = (0..n).all(|x| comps[x] == bits::singleton(x));
        let r = (0..n).all(|x| bits::is_subset(s.closure(m[x]), m[x]));
        let half_r = (0..n).all(|x| bits::is_subset(s.reg_open_hull(m[x]), m[x]));
        let r_half = (0..n).all(|x| bits::is_subset(comps[x], m[x]));
        SeparationRecord {
            t0,
            t1,
            t2,
            t_half2,
            t2_half,
            r,
            half_r,
            r_half,
            t3: r && t1,
            t_half3: half_r && t1,
            t3_half: r_half && t1,
        }
    }

    /// Arrows of the implication diagram among the flags, as
    /// `(name, premise, conclusion)`.
    pub fn implications(&self) -> [(&'static str, bool, bool); 15] {
        [
            ("T1=>T0", self.t1, self.t0),
            ("T_half2=>T1", self.t_half2, self.t1),
            ("T2=>T_half2", self.t2, self.t_half2),
            ("T2_half=>T2", self.t2_half, self.t2),
            ("T_half3=>T_half2", self.t_half3, self.t_half2),
            ("T_half3=>half_R", self.t_half3, self.half_r),
            ("T3=>T_half3", self.t3, self.t_half3),
            ("T3=>T2", self.t3, self.t2),
            ("T3=>R", self.t3, self.r),
            ("R=>half_R", self.r, self.half_r),
            ("T3_half=>T3", self.t3_half, self.t3),
            ("T3_half=>T2_half", self.t3_half, self.t2_half),
            ("T3_half=>R_half", self.t3_half, self.r_half),
            ("R_half=>R", self.r_half, self.r),
            ("R_half=>half_R", self.r_half, self.half_r),
        ]
    }

    /// Names of the arrows that fail on this record.
    pub fn violated_implications(&self) -> Vec<&'static str> {
        self.implications()
            .iter()
            .filter(|(_, p, c)| *p && !*c)
            .map(|(name, _, _)| *name)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sier() -> FinSpace {
        FinSpace::sierpinski(1).unwrap()
    }

    #[test]
    fn mk_space_closes_lattice() {
        let s = FinSpace::new(2, &[0b10], Closure::Auto).unwrap();
        assert_eq!(s.opens(), &[0b00, 0b10, 0b11]);
        let d = FinSpace::new(2, &[0b01, 0b10], Closure::Auto).unwrap();
        assert_eq!(d.opens(), &[0b00, 0b01, 0b10, 0b11]);
        let one = FinSpace::new(1, &[], Closure::Auto).unwrap();
        assert_eq!(one.opens(), &[0b0, 0b1]);
    }

    #[test]
    fn mk_space_errors() {
        assert_eq!(FinSpace::new(0, &[], Closure::Auto), Err(Error::EmptyCarrier));
        assert!(matches!(
            FinSpace::new(2, &[0b100], Closure::Auto),
            Err(Error::SubsetOutOfRange { .. })
        ));
        assert!(matches!(
            FinSpace::new(2, &[0b01, 0b10], Closure::Strict),
            Err(Error::NotLatticeClosed { .. })
        ));
        assert!(FinSpace::new(2, &[0b00, 0b01, 0b10, 0b11], Closure::Strict).is_ok());
    }

    #[test]
    fn closure_and_interior_on_sierpinski() {
        let s = sier();
        assert_eq!(s.closure(0b10), 0b11);
        assert_eq!(s.closure(0b01), 0b01);
        assert_eq!(s.interior(0b01), 0);
        assert_eq!(s.interior(0b10), 0b10);
        let d = FinSpace::discrete(2).unwrap();
        assert_eq!(d.closure(0b01), 0b01);
        let i = FinSpace::indiscrete(2).unwrap();
        assert_eq!(i.interior(0b01), 0);
    }

    #[test]
    fn regular_open_hull() {
        let s = sier();
        assert_eq!(s.reg_open_hull(0b10), 0b11);
        assert!(!s.is_regular_open(0b10));
        assert_eq!(s.reg_open_hull(0), 0);
        let d = FinSpace::discrete(3).unwrap();
        for a in 0..8 {
            assert_eq!(d.reg_open_hull(a), a);
        }
    }

    #[test]
    fn minimal_neighbourhoods() {
        let s = sier();
        // brute force: intersect every open containing the point
        for x in 0..2 {
            let brute = s
                .opens()
                .iter()
                .filter(|&&o| bits::contains(o, x))
                .fold(s.full(), |a, &o| a & o);
            assert_eq!(s.min_nbhd(x), brute);
        }
        assert_eq!(s.min_nbhd(0), 0b11);
        assert_eq!(s.min_nbhd(1), 0b10);
        assert_eq!(FinSpace::discrete(2).unwrap().min_nbhd(0), 0b01);
    }

    #[test]
    fn classify_examples() {
        let s = sier().classify();
        assert!(s.t0);
        assert!(!s.t1 && !s.t2 && !s.t_half2 && !s.t2_half);
        assert!(!s.r && !s.half_r && !s.r_half);

        let d = FinSpace::discrete(2).unwrap().classify();
        assert!(d.t0 && d.t1 && d.t2 && d.t_half2 && d.t2_half && d.r && d.half_r && d.r_half);
        assert!(d.t3 && d.t_half3 && d.t3_half);

        let i = FinSpace::indiscrete(2).unwrap().classify();
        assert!(!i.t0 && !i.t1);
        assert!(i.r && i.half_r && i.r_half);
        assert!(i.violated_implications().is_empty());
    }

    #[test]
    fn continuity() {
        let s = sier();
        assert!(s.is_continuous(&[0, 0]));
        assert!(!s.is_continuous(&[1, 0]));
        assert!(FinSpace::discrete(3).unwrap().is_continuous(&[3, 1, 2]));
    }

    #[test]
    fn strict_round_trip_of_doc() {
        let s = FinSpace::new(3, &[0b001, 0b011], Closure::Auto).unwrap();
        let doc = s.to_doc();
        let back = FinSpace::from_doc(&doc, Closure::Strict).unwrap();
        assert_eq!(back, s);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"n":3,"opens":[[],[0],[0,1],[0,1,2]]}"#);
    }

    #[test]
    fn from_min_nbhds_rejects_non_transitive() {
        // 0 sees 1, 1 sees 2, but M(0) misses 2
        assert!(FinSpace::from_min_nbhds(3, vec![0b011, 0b110, 0b100]).is_err());
    }
}
