//! Binary relations on a finite carrier, stored row-major as bit sets:
//! `rows[x]` is the ball `B(x; U) = {y : (x, y) ∈ U}`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::bits::{self, Subset, MAX_POINTS};
use crate::error::{Error, Result};
use crate::finspace::FinSpace;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Relation {
    n: u8,
    rows: [Subset; MAX_POINTS],
}

impl Relation {
    pub fn empty(n: usize) -> Result<Self> {
        bits::check_carrier(n)?;
        Ok(Relation {
            n: n as u8,
            rows: [0; MAX_POINTS],
        })
    }

    pub fn from_rows(n: usize, rows: &[Subset]) -> Result<Self> {
        bits::check_carrier(n)?;
        if rows.len() != n {
            return Err(Error::SizeMismatch(n, rows.len()));
        }
        let mut r = Relation {
            n: n as u8,
            rows: [0; MAX_POINTS],
        };
        for (x, &row) in rows.iter().enumerate() {
            r.rows[x] = bits::check_subset(n, row as u32)?;
        }
        Ok(r)
    }

    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut r = Self::empty(n)?;
        for &(x, y) in pairs {
            for p in [x, y] {
                if p >= n {
                    return Err(Error::PointOutOfRange { n, point: p });
                }
            }
            r.rows[x] |= bits::singleton(y);
        }
        Ok(r)
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn rows(&self) -> &[Subset] {
        &self.rows[..self.n()]
    }

    pub fn row(&self, x: usize) -> Subset {
        self.rows[x]
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        bits::contains(self.rows[x], y)
    }

    pub fn pair_count(&self) -> u32 {
        self.rows().iter().map(|r| r.count_ones()).sum()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |x| bits::points(self.rows[x]).map(move |y| (x, y)))
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n()).all(|x| self.contains(x, x))
    }

    fn check_size(&self, other: &Relation) -> Result<()> {
        if self.n != other.n {
            Err(Error::SizeMismatch(self.n(), other.n()))
        } else {
            Ok(())
        }
    }

    /// `self ∘ other = {(x, z) : ∃y (x, y) ∈ self, (y, z) ∈ other}`.
    pub fn compose(&self, other: &Relation) -> Result<Relation> {
        self.check_size(other)?;
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Relation) -> Relation {
        let mut out = Relation {
            n: self.n,
            rows: [0; MAX_POINTS],
        };
        for x in 0..self.n() {
            let mut acc = 0;
            for y in bits::points(self.rows[x]) {
                acc |= other.rows[y];
            }
            out.rows[x] = acc;
        }
        out
    }

    pub fn inverse(&self) -> Relation {
        let mut out = Relation {
            n: self.n,
            rows: [0; MAX_POINTS],
        };
        for (x, y) in self.pairs() {
            out.rows[y] |= bits::singleton(x);
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        self.inverse() == *self
    }

    /// `B(A; U) = ⋃_{a ∈ A} B(a; U)`.
    pub fn ball(&self, a: Subset) -> Subset {
        bits::points(a).fold(0, |acc, x| acc | self.rows[x])
    }

    pub fn is_subset_of(&self, other: &Relation) -> bool {
        self.n == other.n && (0..self.n()).all(|x| bits::is_subset(self.rows[x], other.rows[x]))
    }

    pub fn intersection(&self, other: &Relation) -> Result<Relation> {
        self.check_size(other)?;
        let mut out = *self;
        for x in 0..self.n() {
            out.rows[x] &= other.rows[x];
        }
        Ok(out)
    }

    pub fn union(&self, other: &Relation) -> Result<Relation> {
        self.check_size(other)?;
        let mut out = *self;
        for x in 0..self.n() {
            out.rows[x] |= other.rows[x];
        }
        Ok(out)
    }

    pub fn is_transitive(&self) -> bool {
        self.compose_unchecked(self).is_subset_of(self)
    }

    /// Applies a subset operator row by row.
    pub fn map_rows(&self, f: impl Fn(Subset) -> Subset) -> Relation {
        let mut out = *self;
        for x in 0..self.n() {
            out.rows[x] = f(self.rows[x]);
        }
        out
    }

    pub fn to_doc(&self) -> RelationDoc {
        RelationDoc {
            n: self.n(),
            rows: self.rows().iter().map(|&r| bits::to_points(r)).collect(),
        }
    }

    fn from_doc_raw(doc: &RelationDoc) -> Result<Relation> {
        bits::check_carrier(doc.n)?;
        if doc.rows.len() != doc.n {
            return Err(Error::SizeMismatch(doc.n, doc.rows.len()));
        }
        let rows = doc
            .rows
            .iter()
            .map(|pts| bits::from_points(doc.n, pts))
            .collect::<Result<Vec<_>>>()?;
        Relation::from_rows(doc.n, &rows)
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Relation{:?}", self.to_doc().rows)
    }
}

/// Canonical order: fewer pairs first, then rows compared lexicographically.
impl Ord for Relation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then(self.pair_count().cmp(&other.pair_count()))
            .then_with(|| self.rows().cmp(other.rows()))
    }
}

impl PartialOrd for Relation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A reflexive relation.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Entourage(Relation);

impl Entourage {
    pub fn diagonal(n: usize) -> Result<Self> {
        let mut r = Relation::empty(n)?;
        for x in 0..n {
            r.rows[x] = bits::singleton(x);
        }
        Ok(Entourage(r))
    }

    pub fn full(n: usize) -> Result<Self> {
        let mut r = Relation::empty(n)?;
        for x in 0..n {
            r.rows[x] = bits::full(n);
        }
        Ok(Entourage(r))
    }

    /// Fails with `MissingDiagonal` if some row misses its own point.
    pub fn new(rel: Relation) -> Result<Self> {
        match (0..rel.n()).find(|&x| !rel.contains(x, x)) {
            Some(x) => Err(Error::MissingDiagonal(x)),
            None => Ok(Entourage(rel)),
        }
    }

    /// Adds the diagonal.
    pub fn reflexive_closure(mut rel: Relation) -> Self {
        for x in 0..rel.n() {
            rel.rows[x] |= bits::singleton(x);
        }
        Entourage(rel)
    }

    pub fn from_rows(n: usize, rows: &[Subset]) -> Result<Self> {
        Self::new(Relation::from_rows(n, rows)?)
    }

    /// Diagonal plus the given off-diagonal pairs.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        Ok(Self::reflexive_closure(Relation::from_pairs(n, pairs)?))
    }

    pub fn relation(&self) -> &Relation {
        &self.0
    }

    pub fn compose(&self, other: &Entourage) -> Result<Entourage> {
        Ok(Entourage(self.0.compose(&other.0)?))
    }

    pub(crate) fn compose_unchecked(&self, other: &Entourage) -> Entourage {
        Entourage(self.0.compose_unchecked(&other.0))
    }

    pub fn inverse(&self) -> Entourage {
        Entourage(self.0.inverse())
    }

    pub fn intersection(&self, other: &Entourage) -> Result<Entourage> {
        Ok(Entourage(self.0.intersection(&other.0)?))
    }

    /// `U^k`; `k = 0` is rejected since `U^1 = U` starts the powers.
    pub fn power(&self, k: usize) -> Result<Entourage> {
        if k == 0 {
            return Err(Error::EmptyList);
        }
        let mut acc = *self;
        for _ in 1..k {
            acc = acc.compose_unchecked(self);
        }
        Ok(acc)
    }

    /// `(Ū, U°, Ū°)`: rowwise closure, interior, and interior of closure.
    /// The interior may lose the diagonal and is returned as a bare relation.
    pub fn topo_ops(&self, s: &FinSpace) -> Result<(Entourage, Relation, Entourage)> {
        if s.n() != self.n() {
            return Err(Error::SizeMismatch(self.n(), s.n()));
        }
        Ok((
            self.closure_in(s),
            self.0.map_rows(|r| s.interior(r)),
            self.reg_hull_in(s),
        ))
    }

    pub fn closure_in(&self, s: &FinSpace) -> Entourage {
        Entourage(self.0.map_rows(|r| s.closure(r)))
    }

    /// `Ū°`. Reflexive because `x ∈ int cl B(x;U)` whenever `B(x;U)` is a
    /// neighbourhood of `x`; otherwise rows are returned as computed.
    pub fn reg_hull_in(&self, s: &FinSpace) -> Entourage {
        Entourage(self.0.map_rows(|r| s.reg_open_hull(r)))
    }

    pub fn to_doc(&self) -> RelationDoc {
        self.0.to_doc()
    }

    /// Lenient parse: the diagonal is added.
    pub fn from_doc(doc: &RelationDoc) -> Result<Entourage> {
        Ok(Self::reflexive_closure(Relation::from_doc_raw(doc)?))
    }

    /// Strict parse: a missing diagonal entry is an error.
    pub fn from_doc_strict(doc: &RelationDoc) -> Result<Entourage> {
        Self::new(Relation::from_doc_raw(doc)?)
    }
}

impl Deref for Entourage {
    type Target = Relation;
    fn deref(&self) -> &Relation {
        &self.0
    }
}

impl fmt::Debug for Entourage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Entourage{:?}", self.to_doc().rows)
    }
}

/// JSON form `{"n": .., "rows": [[..], ..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationDoc {
    pub n: usize,
    pub rows: Vec<Vec<usize>>,
}

impl Serialize for Entourage {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_doc().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Entourage {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = RelationDoc::deserialize(d)?;
        Entourage::from_doc(&doc).map_err(serde::de::Error::custom)
    }
}

impl Serialize for Relation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_doc().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Relation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = RelationDoc::deserialize(d)?;
        Relation::from_doc_raw(&doc).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finspace::FinSpace;

    fn t() -> Entourage {
        Entourage::from_pairs(2, &[(0, 1)]).unwrap()
    }

    fn brute_compose(u: &Relation, v: &Relation) -> Relation {
        let n = u.n();
        let mut pairs = vec![];
        for x in 0..n {
            for z in 0..n {
                if (0..n).any(|y| u.contains(x, y) && v.contains(y, z)) {
                    pairs.push((x, z));
                }
            }
        }
        Relation::from_pairs(n, &pairs).unwrap()
    }

    #[test]
    fn compose_examples() {
        let u = t();
        assert_eq!(u.compose(&u).unwrap(), u);
        assert_eq!(brute_compose(&u, &u), *u.relation());
        let d = Entourage::diagonal(3).unwrap();
        let v = Entourage::from_pairs(3, &[(0, 2), (2, 1)]).unwrap();
        assert_eq!(d.compose(&v).unwrap(), v);
        let f = Entourage::full(3).unwrap();
        assert_eq!(f.compose(&f).unwrap(), f);
        assert_eq!(
            d.compose(&Entourage::diagonal(2).unwrap()),
            Err(Error::SizeMismatch(3, 2))
        );
    }

    #[test]
    fn inverse_examples() {
        let u = t();
        assert_eq!(u.inverse(), Entourage::from_pairs(2, &[(1, 0)]).unwrap());
        assert_eq!(u.inverse().inverse(), u);
        let d = Entourage::diagonal(4).unwrap();
        assert_eq!(d.inverse(), d);
    }

    #[test]
    fn powers() {
        let u = t();
        assert_eq!(u.power(1).unwrap(), u);
        assert_eq!(u.power(6).unwrap(), u);
        // successor steps on 4 points: U^3 = pairs reachable in ≤ 3 steps
        let s = Entourage::from_pairs(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let s3 = s.power(3).unwrap();
        let mut pairs = vec![];
        for x in 0..4 {
            for y in x..4 {
                if y - x <= 3 {
                    pairs.push((x, y));
                }
            }
        }
        assert_eq!(s3, Entourage::from_pairs(4, &pairs).unwrap());
        assert_eq!(s.power(2).unwrap().pair_count(), 4 + 3 + 2);
        assert!(s.power(0).is_err());
    }

    #[test]
    fn balls() {
        let u = t();
        assert_eq!(u.ball(0b01), 0b11);
        assert_eq!(u.ball(0b10), 0b10);
        assert_eq!(u.ball(0), 0);
    }

    #[test]
    fn topological_operators() {
        let sier = FinSpace::sierpinski(1).unwrap();
        let (cl, _, _) = t().topo_ops(&sier).unwrap();
        assert_eq!(cl, Entourage::full(2).unwrap());

        let disc = FinSpace::discrete(3).unwrap();
        let v = Entourage::from_pairs(3, &[(0, 2), (1, 0)]).unwrap();
        let (cl, int, hull) = v.topo_ops(&disc).unwrap();
        assert_eq!(cl, v);
        assert_eq!(int, *v.relation());
        assert_eq!(hull, v);

        let (cl, _, _) = Entourage::diagonal(2).unwrap().topo_ops(&sier).unwrap();
        assert_eq!(cl.rows(), &[0b01, 0b11]);
    }

    #[test]
    fn transitivity() {
        assert!(t().is_transitive());
        let cyc = Entourage::from_pairs(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(!cyc.is_transitive());
        assert!(Entourage::diagonal(3).unwrap().is_transitive());
    }

    #[test]
    fn strict_and_lenient_docs() {
        let doc = RelationDoc {
            n: 2,
            rows: vec![vec![1], vec![1]],
        };
        assert_eq!(Entourage::from_doc_strict(&doc), Err(Error::MissingDiagonal(0)));
        assert_eq!(Entourage::from_doc(&doc).unwrap(), t());
        let json = serde_json::to_string(&t()).unwrap();
        assert_eq!(json, r#"{"n":2,"rows":[[0,1],[1]]}"#);
    }

    #[test]
    fn canonical_order() {
        let mut v = [
            Entourage::full(2).unwrap(),
            t(),
            Entourage::diagonal(2).unwrap(),
            t().inverse(),
        ];
        v.sort();
        assert_eq!(v[0], Entourage::diagonal(2).unwrap());
        assert_eq!(v[3], Entourage::full(2).unwrap());
        // rows (0b01, 0b11) < (0b11, 0b10)
        assert_eq!(v[1], t().inverse());
    }
}
