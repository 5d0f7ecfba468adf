//! Exhaustive and random generators for small instances.

use rand::Rng;
use rayon::prelude::*;

use crate::bits::{self, Subset};
use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::finspace::FinSpace;
use crate::metrize::Premetric;
use crate::monoid::{TopMonoid, UnitSide};
use crate::quniform::EntourageBase;
use crate::relalg::Entourage;

/// Largest carrier for topology enumeration.
pub const ENUM_MAX: usize = 5;
/// Largest carrier for monoid enumeration.
pub const MONOID_ENUM_MAX: usize = 4;

/// Minimal neighbourhoods encoded by an off-diagonal bit mask, or `None`
/// when the relation is not transitive.
fn preorder_rows(n: usize, mask: u32) -> Option<Vec<Subset>> {
    let mut rows: Vec<Subset> = (0..n).map(bits::singleton).collect();
    let mut bit = 0;
    for (x, row) in rows.iter_mut().enumerate() {
        for y in (0..n).filter(|&y| y != x) {
            if mask >> bit & 1 == 1 {
                *row |= bits::singleton(y);
            }
            bit += 1;
        }
    }
    let transitive = (0..n).all(|x| bits::points(rows[x]).all(|y| bits::is_subset(rows[y], rows[x])));
    transitive.then_some(rows)
}

/// All labeled topologies on `n` points in ascending order of the
/// off-diagonal specialization mask.
pub fn enumerate_topologies(n: usize) -> Result<Vec<FinSpace>> {
    if n == 0 {
        return Err(Error::EmptyCarrier);
    }
    if n > ENUM_MAX {
        return Err(Error::TooLarge { n, max: ENUM_MAX });
    }
    let masks = 1u32 << (n * (n - 1));
    Ok((0..masks)
        .into_par_iter()
        .filter_map(|m| preorder_rows(n, m))
        .map(|rows| FinSpace::from_min_nbhds_unchecked(n, rows))
        .collect())
}

/// `Z_n` as an addition table.
pub fn cyclic_table(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect()
}

/// Klein four-group as XOR on two bits.
pub fn klein_table() -> Vec<Vec<usize>> {
    (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect()
}

/// Every group of order at most 4 up to isomorphism, with unit 0.
pub fn small_groups() -> Vec<(String, Vec<Vec<usize>>)> {
    let mut out: Vec<(String, Vec<Vec<usize>>)> = (1..=4).map(|n| (format!("Z{n}"), cyclic_table(n))).collect();
    out.push(("V4".into(), klein_table()));
    out
}

/// Every topology on the carrier of `table` making multiplication
/// continuous, in enumeration order.
pub fn continuous_topologies(table: &[Vec<usize>], unit: usize, side: UnitSide) -> Result<Vec<TopMonoid>> {
    Ok(enumerate_topologies(table.len())?
        .into_iter()
        .filter_map(|s| TopMonoid::new(s, table, unit, side).ok())
        .collect())
}

/// Multiplication tables of all labeled monoids on `n` points with unit 0,
/// in lexicographic order.
pub fn enumerate_monoid_tables(n: usize) -> Result<Vec<Vec<Vec<usize>>>> {
    if n == 0 {
        return Err(Error::EmptyCarrier);
    }
    if n > MONOID_ENUM_MAX {
        return Err(Error::TooLarge {
            n,
            max: MONOID_ENUM_MAX,
        });
    }
    let free = (n - 1) * (n - 1);
    let total = (n as u64).pow(free as u32);
    let tables: Vec<Vec<Vec<usize>>> = (0..total)
        .into_par_iter()
        .filter_map(|mut code| {
            let mut t: Vec<Vec<usize>> = (0..n)
                .map(|a| (0..n).map(|b| if a == 0 { b } else { a }).collect())
                .collect();
            // Most significant digit first so codes ascend lexicographically.
            let mut digits = vec![0; free];
            for d in digits.iter_mut().rev() {
                *d = (code % n as u64) as usize;
                code /= n as u64;
            }
            let mut it = digits.into_iter();
            for row in t.iter_mut().skip(1) {
                for v in row.iter_mut().skip(1) {
                    *v = it.next().expect("digit count");
                }
            }
            let assoc = (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| t[t[a][b]][c] == t[a][t[b][c]])));
            assoc.then_some(t)
        })
        .collect();
    Ok(tables)
}

/// A symmetric multiplicative base `{E, R, R², ..}` where `E` is a random
/// equivalence relation and `R = E∘R'∘E` for a random symmetric `R'`.
pub fn random_symmetric_base<R: Rng>(rng: &mut R, n: usize) -> Result<EntourageBase> {
    bits::check_carrier(n)?;
    let classes = rng.random_range(1..=n);
    let label: Vec<usize> = (0..n).map(|_| rng.random_range(0..classes)).collect();
    let eq: Vec<Subset> = (0..n)
        .map(|x| {
            (0..n)
                .filter(|&y| label[y] == label[x])
                .fold(0, |acc, y| acc | bits::singleton(y))
        })
        .collect();
    let e = Entourage::from_rows(n, &eq)?;
    let mut rows = eq.clone();
    for x in 0..n {
        for y in x + 1..n {
            if rng.random_bool(0.25) {
                rows[x] |= bits::singleton(y);
                rows[y] |= bits::singleton(x);
            }
        }
    }
    let r = e.compose(&Entourage::from_rows(n, &rows)?)?.compose(&e)?;
    let mut members = vec![e, r];
    loop {
        let next = members.last().expect("non-empty").compose(&r)?;
        if members.contains(&next) {
            break;
        }
        members.push(next);
    }
    EntourageBase::new(&members)
}

/// A random premetric with open balls on `s`: random row values pushed
/// down along minimal neighbourhoods, `d(x, z) = min{r(x, y) : z ∈ M(y)}`.
pub fn random_open_ball_premetric<R: Rng>(rng: &mut R, s: &FinSpace) -> Result<Premetric> {
    let n = s.n();
    let levels = [
        Dyadic::ZERO,
        Dyadic::new(1, 2)?,
        Dyadic::HALF,
        Dyadic::new(3, 2)?,
        Dyadic::ONE,
    ];
    let raw: Vec<Vec<Dyadic>> = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| {
                    if x == y {
                        Dyadic::ZERO
                    } else {
                        levels[rng.random_range(0..5)]
                    }
                })
                .collect()
        })
        .collect();
    Premetric::from_fn(n, |x, z| {
        (0..n)
            .filter(|&y| bits::contains(s.min_nbhd(y), z))
            .map(|y| raw[x][y])
            .min()
            .expect("z lies in M(z)")
    })
}
