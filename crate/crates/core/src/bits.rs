//! Point subsets of a carrier of at most 16 points, stored as `u16` masks.

use crate::error::{Error, Result};

pub type Subset = u16;

pub const MAX_POINTS: usize = 16;

#[inline]
pub fn full(n: usize) -> Subset {
    debug_assert!(n <= MAX_POINTS);
    if n >= 16 {
        u16::MAX
    } else {
        ((1u32 << n) - 1) as u16
    }
}

#[inline]
pub fn singleton(x: usize) -> Subset {
    1 << x
}

#[inline]
pub fn contains(s: Subset, x: usize) -> bool {
    s >> x & 1 == 1
}

#[inline]
pub fn is_subset(a: Subset, b: Subset) -> bool {
    a & !b == 0
}

/// Points of `s` in increasing order.
pub fn points(s: Subset) -> impl Iterator<Item = usize> {
    let mut rest = s;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let x = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(x)
        }
    })
}

pub fn from_points(n: usize, pts: &[usize]) -> Result<Subset> {
    let mut s = 0u16;
    for &p in pts {
        if p >= n {
            return Err(Error::PointOutOfRange { n, point: p });
        }
        s |= singleton(p);
    }
    Ok(s)
}

pub fn to_points(s: Subset) -> Vec<usize> {
    points(s).collect()
}

pub fn check_carrier(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::EmptyCarrier)
    } else if n > MAX_POINTS {
        Err(Error::CarrierTooLarge(n))
    } else {
        Ok(())
    }
}

pub fn check_subset(n: usize, s: u32) -> Result<Subset> {
    if s & !(full(n) as u32) != 0 {
        Err(Error::SubsetOutOfRange { n, subset: s })
    } else {
        Ok(s as Subset)
    }
}

/// All non-empty subsets of an `n`-point carrier.
pub fn nonempty_subsets(n: usize) -> impl Iterator<Item = Subset> {
    1..=full(n)
}

/// Canonical order on subsets: popcount first, then numeric value.
pub fn canonical_key(s: Subset) -> (u32, Subset) {
    (s.count_ones(), s)
}
