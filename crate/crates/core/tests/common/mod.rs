//! Reference implementations written directly from the definitions, with
//! plain boolean matrices and floats instead of the library's bitsets and
//! dyadics. Dyadic values used here have small exponents, so the floats are
//! exact.

#![allow(dead_code)]

use std::collections::BTreeSet;

use qtop_core::bits;
use qtop_core::dyadic::Dyadic;
use qtop_core::finspace::FinSpace;
use qtop_core::metrize::{Chain, Premetric};
use qtop_core::relalg::Entourage;

pub type Matrix = Vec<Vec<bool>>;

pub fn matrix(e: &Entourage) -> Matrix {
    let n = e.n();
    (0..n)
        .map(|x| (0..n).map(|y| e.relation().contains(x, y)).collect())
        .collect()
}

/// `{(x, z) : ∃y (x, y) ∈ a, (y, z) ∈ b}`.
pub fn compose(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    (0..n)
        .map(|x| (0..n).map(|z| (0..n).any(|y| a[x][y] && b[y][z])).collect())
        .collect()
}

/// The recursive sandwich `Π(U₁, ..) = Π(U₂, ..) U₁ Π(U₂, ..)`.
pub fn balanced_product(us: &[Matrix]) -> Matrix {
    if us.len() == 1 {
        return us[0].clone();
    }
    let inner = balanced_product(&us[1..]);
    compose(&compose(&inner, &us[0]), &inner)
}

/// Binary digits of `k / 2^depth` as the positions of its ones.
fn expansion(k: u64, depth: u32) -> Vec<u32> {
    (1..=depth).filter(|&i| (k >> (depth - i)) & 1 == 1).collect()
}

/// `min{r = k/2^D : (x, y) ∈ V_r}` over the depth-`D` grid, `1` if none.
fn truncated(chain: &Chain, depth: u32) -> Vec<Vec<f64>> {
    let n = chain.n();
    let mut best = vec![vec![1.0; n]; n];
    let steps = 1u64 << depth;
    for k in (1..steps).rev() {
        let us: Vec<Matrix> = expansion(k, depth)
            .into_iter()
            .map(|i| matrix(&chain.link(i)))
            .collect();
        let v = balanced_product(&us);
        let r = k as f64 / steps as f64;
        for x in 0..n {
            for y in 0..n {
                if v[x][y] {
                    best[x][y] = r;
                }
            }
        }
    }
    best
}

/// `d(x, y) = inf{r : (x, y) ∈ V_r}` from truncations at depths `m + 3` and
/// `m + 4`. On a finite chain `V_r` is constant on each interval
/// `(q, q + 2^{-m})`, so an infimum that is not attained shows up as a
/// truncated minimum that halves its distance to `q` with each extra digit;
/// extrapolating that step recovers `q` exactly.
pub fn infimum(chain: &Chain) -> Vec<Vec<f64>> {
    let depth = chain.stab() as u32 + 3;
    let a = truncated(chain, depth);
    let b = truncated(chain, depth + 1);
    let n = chain.n();
    (0..n)
        .map(|x| {
            (0..n)
                .map(|y| {
                    if b[x][y] < a[x][y] {
                        2.0 * b[x][y] - a[x][y]
                    } else {
                        a[x][y]
                    }
                })
                .collect()
        })
        .collect()
}

pub fn floats(d: &Premetric) -> Vec<Vec<f64>> {
    d.rows()
        .iter()
        .map(|r| r.iter().map(Dyadic::to_f64).collect())
        .collect()
}

/// Closure as the complement of the union of opens missing `a`.
pub fn closure(s: &FinSpace, a: &[bool]) -> Vec<bool> {
    let n = a.len();
    let mut outside = vec![false; n];
    for &o in s.opens() {
        if (0..n).all(|x| !(bits::contains(o, x) && a[x])) {
            for x in bits::points(o) {
                outside[x] = true;
            }
        }
    }
    outside.into_iter().map(|b| !b).collect()
}

/// Interior as the union of opens inside `a`.
pub fn interior(s: &FinSpace, a: &[bool]) -> Vec<bool> {
    let n = a.len();
    let mut inside = vec![false; n];
    for &o in s.opens() {
        if bits::points(o).all(|x| a[x]) {
            for x in bits::points(o) {
                inside[x] = true;
            }
        }
    }
    inside
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Dist {
    Plain,
    Reg,
    Semireg,
}

/// `d_A`, `d̄_A` or `d̄°_A` straight from the `inf{ε > 0 : x ∈ ..}` forms,
/// testing one `ε` inside each interval between consecutive values.
pub fn dist(d: &[Vec<f64>], s: &FinSpace, a: &[usize], which: Dist) -> Vec<f64> {
    let n = d.len();
    let plain: Vec<f64> = (0..n)
        .map(|x| a.iter().map(|&p| d[p][x]).fold(f64::INFINITY, f64::min))
        .collect();
    if which == Dist::Plain {
        return plain;
    }
    let mut vals: Vec<f64> = plain.clone();
    vals.sort_by(f64::total_cmp);
    vals.dedup();
    let mut out = vec![f64::INFINITY; n];
    for (i, &v) in vals.iter().enumerate() {
        let eps = vals.get(i + 1).map_or(v + 1.0, |w| (v + w) / 2.0);
        let ball: Vec<bool> = plain.iter().map(|&p| p < eps).collect();
        let cl = closure(s, &ball);
        let hit: Vec<bool> = match which {
            Dist::Reg => cl,
            _ => interior(s, &cl).into_iter().zip(&ball).map(|(a, b)| a || *b).collect(),
        };
        for x in 0..n {
            if hit[x] && out[x].is_infinite() {
                out[x] = v;
            }
        }
    }
    out
}

/// `d̄(x, y) = d̄_{{x}}(y)` or `d̄°(x, y) = d̄°_{{x}}(y)`.
pub fn modification(d: &[Vec<f64>], s: &FinSpace, which: Dist) -> Vec<Vec<f64>> {
    (0..d.len()).map(|x| dist(d, s, &[x], which)).collect()
}

/// Every topology on `n ≤ 4` points found by testing each family of
/// subsets for closure under unions and intersections.
pub fn topologies_by_families(n: usize) -> BTreeSet<Vec<u32>> {
    assert!(n <= 4);
    let subsets = 1usize << n;
    let full = (subsets - 1) as u32;
    let mut out = BTreeSet::new();
    for fam in 0u64..(1u64 << subsets) {
        let has = |a: u32| fam >> a & 1 == 1;
        if !has(0) || !has(full) {
            continue;
        }
        let members: Vec<u32> = (0..subsets as u32).filter(|&a| has(a)).collect();
        if members
            .iter()
            .all(|&a| members.iter().all(|&b| has(a | b) && has(a & b)))
        {
            out.insert(members);
        }
    }
    out
}

/// Number of reflexive transitive relations on `n` points, checked by
/// squaring boolean matrices.
pub fn preorder_count(n: usize) -> usize {
    let off: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).filter(move |&y| y != x).map(move |y| (x, y)))
        .collect();
    let mut count = 0;
    for mask in 0u64..(1u64 << off.len()) {
        let mut m = vec![vec![false; n]; n];
        for (x, row) in m.iter_mut().enumerate() {
            row[x] = true;
        }
        for (i, &(x, y)) in off.iter().enumerate() {
            m[x][y] = mask >> i & 1 == 1;
        }
        if compose(&m, &m) == m {
            count += 1;
        }
    }
    count
}

pub fn opens_as_u32(s: &FinSpace) -> Vec<u32> {
    let mut v: Vec<u32> = s.opens().iter().map(|&o| o as u32).collect();
    v.sort_unstable();
    v
}

/// T0, T1, T2 and regularity from their textbook statements over open sets.
pub fn separation(s: &FinSpace) -> [bool; 4] {
    let n = s.n();
    let opens: Vec<u32> = opens_as_u32(s);
    let full = (1u32 << n) - 1;
    let has = |o: u32, x: usize| o >> x & 1 == 1;
    let pairs = || (0..n).flat_map(move |x| (0..n).filter(move |&y| y != x).map(move |y| (x, y)));
    let t0 = pairs().all(|(x, y)| opens.iter().any(|&o| has(o, x) != has(o, y)));
    let t1 = pairs().all(|(x, y)| opens.iter().any(|&o| has(o, x) && !has(o, y)));
    let t2 = pairs().all(|(x, y)| {
        opens
            .iter()
            .any(|&u| has(u, x) && opens.iter().any(|&v| has(v, y) && u & v == 0))
    });
    let closed: Vec<u32> = opens.iter().map(|&o| full & !o).collect();
    let regular = closed.iter().all(|&f| {
        (0..n).filter(|&x| !has(f, x)).all(|x| {
            opens
                .iter()
                .any(|&u| has(u, x) && opens.iter().any(|&v| f & !v == 0 && u & v == 0))
        })
    });
    [t0, t1, t2, regular]
}

fn ball(m: &Matrix, a: &[bool]) -> Vec<bool> {
    let n = a.len();
    (0..n).map(|y| (0..n).any(|x| a[x] && m[x][y])).collect()
}

fn subset(a: &[bool], b: &[bool]) -> bool {
    a.iter().zip(b).all(|(x, y)| !x || *y)
}

fn point(n: usize, x: usize) -> Vec<bool> {
    (0..n).map(|y| y == x).collect()
}

fn all_subsets(n: usize) -> impl Iterator<Item = Vec<bool>> {
    (1u32..1 << n).map(move |m| (0..n).map(|x| m >> x & 1 == 1).collect())
}

/// Point, set, delta and full rotundness of a base in `s`, each tested
/// literally over all points, subsets and member tuples.
pub fn rotund_flags(members: &[Entourage], s: &FinSpace) -> [bool; 4] {
    let n = s.n();
    let ms: Vec<Matrix> = members.iter().map(matrix).collect();
    let cl = |a: &[bool]| closure(s, a);
    let int_cl = |a: &[bool]| interior(s, &closure(s, a));
    let pt = (0..n).all(|x| {
        ms.iter().all(|v| {
            ms.iter().all(|u| {
                subset(
                    &cl(&ball(v, &point(n, x))),
                    &int_cl(&ball(&compose(v, u), &point(n, x))),
                )
            })
        })
    });
    let set = all_subsets(n).all(|a| ms.iter().all(|u| subset(&cl(&a), &int_cl(&ball(u, &a)))));
    let delta = (0..n).all(|x| {
        ms.iter().all(|u| {
            ms.iter().all(|v| {
                ms.iter().all(|w| {
                    let lhs = ball(u, &cl(&ball(v, &point(n, x))));
                    subset(&lhs, &cl(&ball(&compose(&compose(v, w), u), &point(n, x))))
                })
            })
        })
    });
    let full = all_subsets(n).all(|a| {
        ms.iter().all(|u| {
            ms.iter()
                .all(|w| subset(&ball(u, &cl(&a)), &cl(&ball(&compose(w, u), &a))))
        })
    });
    [pt, set, delta, full]
}
