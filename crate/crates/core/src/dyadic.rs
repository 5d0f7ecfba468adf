//! Exact dyadic rationals in `[0, 1]`, sequential expansions, and the
//! balanced product of entourages.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::relalg::Entourage;

/// Longest supported expansion position (and largest exponent).
pub const MAX_EXP: u32 = 62;

/// `num / 2^exp`, normalized so that `num` is odd unless the value is 0 or 1.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: u64,
    exp: u32,
}

impl Dyadic {
    pub const ZERO: Dyadic = Dyadic { num: 0, exp: 0 };
    pub const ONE: Dyadic = Dyadic { num: 1, exp: 0 };
    pub const HALF: Dyadic = Dyadic { num: 1, exp: 1 };

    pub fn new(num: u64, exp: u32) -> Result<Dyadic> {
        if exp > MAX_EXP || num > (1u64 << exp) {
            return Err(Error::OutOfRange { num, exp });
        }
        if num == 0 {
            return Ok(Dyadic::ZERO);
        }
        let tz = num.trailing_zeros().min(exp);
        Ok(Dyadic {
            num: num >> tz,
            exp: exp - tz,
        })
    }

    /// `2^{-i}`.
    pub fn pow2_neg(i: u32) -> Result<Dyadic> {
        Dyadic::new(1, i)
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn exp(&self) -> u32 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn is_one(&self) -> bool {
        *self == Dyadic::ONE
    }

    /// Membership in the open binary fractions `(0, 1)`.
    pub fn in_q2(&self) -> bool {
        !self.is_zero() && !self.is_one()
    }

    /// Membership in `(0, 1]`.
    pub fn in_q2_1(&self) -> bool {
        !self.is_zero()
    }

    /// Numerator scaled to denominator `2^MAX_EXP`.
    fn scaled(&self) -> u128 {
        (self.num as u128) << (MAX_EXP - self.exp)
    }

    fn from_scaled(v: u128) -> Dyadic {
        // callers guarantee v <= 2^MAX_EXP
        Dyadic::new(v as u64, MAX_EXP).expect("scaled value within [0, 1]")
    }

    /// `self + other` if the sum stays at most 1.
    pub fn checked_add(&self, other: &Dyadic) -> Option<Dyadic> {
        let s = self.scaled() + other.scaled();
        (s <= 1u128 << MAX_EXP).then(|| Dyadic::from_scaled(s))
    }

    /// `self - other` if non-negative.
    pub fn checked_sub(&self, other: &Dyadic) -> Option<Dyadic> {
        self.scaled().checked_sub(other.scaled()).map(Dyadic::from_scaled)
    }

    /// `min(self + other, 1)`.
    pub fn saturating_add(&self, other: &Dyadic) -> Dyadic {
        self.checked_add(other).unwrap_or(Dyadic::ONE)
    }

    /// Exact test of `self <= a + b`.
    pub fn le_sum(&self, a: &Dyadic, b: &Dyadic) -> bool {
        self.scaled() <= a.scaled() + b.scaled()
    }

    /// Positions of the sequential expansion: `r = Σ 2^{-ix_i}` with strictly
    /// increasing `ix`.
    pub fn expansion(&self) -> Result<Vec<u32>> {
        if !self.in_q2() {
            return Err(Error::OutOfRange {
                num: self.num,
                exp: self.exp,
            });
        }
        Ok((1..=self.exp)
            .filter(|&i| self.num >> (self.exp - i) & 1 == 1)
            .collect())
    }

    pub fn from_expansion(ix: &[u32]) -> Result<Dyadic> {
        if ix.is_empty() {
            return Ok(Dyadic::ZERO);
        }
        let mut prev = 0;
        for &i in ix {
            if i <= prev || i > MAX_EXP {
                return Err(Error::NotIncreasing);
            }
            prev = i;
        }
        let exp = prev;
        let num = ix.iter().fold(0u64, |acc, &i| acc | 1u64 << (exp - i));
        Dyadic::new(num, exp)
    }

    /// The dyadic grid `{k / 2^m : 1 ≤ k < 2^m}` in increasing order.
    pub fn grid(m: u32) -> Result<Vec<Dyadic>> {
        if m > 20 {
            return Err(Error::ChainTooLong(m as usize));
        }
        (1..(1u64 << m)).map(|k| Dyadic::new(k, m)).collect()
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / (1u64 << self.exp) as f64
    }
}

pub fn concat(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().chain(b).copied().collect()
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        self.scaled().cmp(&other.scaled())
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exp {
            0 => write!(f, "{}", self.num),
            e => write!(f, "{}/{}", self.num, 1u64 << e),
        }
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DyadicDoc {
    num: u64,
    exp: u32,
}

impl Serialize for Dyadic {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DyadicDoc {
            num: self.num,
            exp: self.exp,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Dyadic {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = DyadicDoc::deserialize(d)?;
        Dyadic::new(doc.num, doc.exp).map_err(serde::de::Error::custom)
    }
}

/// `Π(U₁,…,U_n) = Π(U₂,…,U_n) ∘ U₁ ∘ Π(U₂,…,U_n)` with `Π(U) = U`.
pub fn balanced_product(us: &[Entourage]) -> Result<Entourage> {
    let (last, rest) = us.split_last().ok_or(Error::EmptyList)?;
    if let Some(bad) = rest.iter().find(|u| u.n() != last.n()) {
        return Err(Error::SizeMismatch(bad.n(), last.n()));
    }
    let mut p = *last;
    for u in rest.iter().rev() {
        p = p.compose_unchecked(u).compose_unchecked(&p);
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(num: u64, exp: u32) -> Dyadic {
        Dyadic::new(num, exp).unwrap()
    }

    #[test]
    fn normal_form() {
        assert_eq!(d(2, 2), Dyadic::HALF);
        assert_eq!(d(4, 2), Dyadic::ONE);
        assert_eq!(d(0, 5), Dyadic::ZERO);
        assert_eq!((d(6, 4).num(), d(6, 4).exp()), (3, 3));
        assert!(Dyadic::new(5, 2).is_err());
        assert!(Dyadic::new(1, 63).is_err());
    }

    #[test]
    fn expansions() {
        assert_eq!(d(5, 3).expansion().unwrap(), vec![1, 3]);
        assert_eq!(Dyadic::HALF.expansion().unwrap(), vec![1]);
        assert_eq!(d(11, 4).expansion().unwrap(), vec![1, 3, 4]);
        assert!(Dyadic::ONE.expansion().is_err());
        assert!(Dyadic::ZERO.expansion().is_err());
    }

    #[test]
    fn from_expansions() {
        assert_eq!(Dyadic::from_expansion(&[1, 3]).unwrap(), d(5, 3));
        assert_eq!(Dyadic::from_expansion(&[2]).unwrap(), d(1, 2));
        assert_eq!(Dyadic::from_expansion(&[1, 2, 3]).unwrap(), d(7, 3));
        assert_eq!(Dyadic::from_expansion(&[2, 2]), Err(Error::NotIncreasing));
        assert_eq!(Dyadic::from_expansion(&[0]), Err(Error::NotIncreasing));
    }

    #[test]
    fn round_trip_to_depth_ten() {
        for r in Dyadic::grid(10).unwrap() {
            assert_eq!(Dyadic::from_expansion(&r.expansion().unwrap()).unwrap(), r);
        }
    }

    #[test]
    fn concatenation() {
        assert_eq!(concat(&[1], &[3, 4]), vec![1, 3, 4]);
        assert_eq!(concat(&[], &[2]), vec![2]);
        assert_eq!(concat(&[1, 3], &[]), vec![1, 3]);
    }

    #[test]
    fn arithmetic() {
        assert_eq!(d(1, 2).checked_add(&d(1, 2)), Some(Dyadic::HALF));
        assert_eq!(Dyadic::HALF.checked_add(&Dyadic::HALF), Some(Dyadic::ONE));
        assert_eq!(d(3, 2).checked_add(&Dyadic::HALF), None);
        assert_eq!(d(3, 2).saturating_add(&Dyadic::HALF), Dyadic::ONE);
        assert_eq!(d(3, 2).checked_sub(&Dyadic::HALF), Some(d(1, 2)));
        assert_eq!(d(1, 2).checked_sub(&Dyadic::HALF), None);
        assert!(Dyadic::ONE.le_sum(&d(3, 2), &Dyadic::HALF));
        assert!(!Dyadic::ONE.le_sum(&d(1, 2), &Dyadic::HALF));
        assert!(d(1, 3) < d(1, 2) && d(1, 2) < d(5, 3));
    }

    #[test]
    fn display_and_json() {
        assert_eq!(d(5, 3).to_string(), "5/8");
        assert_eq!(Dyadic::ONE.to_string(), "1");
        assert_eq!(Dyadic::ZERO.to_string(), "0");
        assert_eq!(serde_json::to_string(&d(5, 3)).unwrap(), r#"{"num":5,"exp":3}"#);
        let back: Dyadic = serde_json::from_str(r#"{"num":2,"exp":2}"#).unwrap();
        assert_eq!(back, Dyadic::HALF);
        assert!(serde_json::from_str::<Dyadic>(r#"{"num":9,"exp":3}"#).is_err());
    }

    #[test]
    fn balanced_product_unfolds() {
        let u = Entourage::from_pairs(3, &[(0, 1)]).unwrap();
        let v = Entourage::from_pairs(3, &[(1, 2)]).unwrap();
        let w = Entourage::from_pairs(3, &[(2, 0)]).unwrap();
        assert_eq!(balanced_product(&[u]).unwrap(), u);
        let vuv = v.compose(&u).unwrap().compose(&v).unwrap();
        assert_eq!(balanced_product(&[u, v]).unwrap(), vuv);
        let wvw = w.compose(&v).unwrap().compose(&w).unwrap();
        let expect = wvw.compose(&u).unwrap().compose(&wvw).unwrap();
        assert_eq!(balanced_product(&[u, v, w]).unwrap(), expect);
        assert_eq!(balanced_product(&[]), Err(Error::EmptyList));
        let small = Entourage::diagonal(2).unwrap();
        assert!(balanced_product(&[u, small]).is_err());
    }
}
