//! The chain `U ⊇ U₁³, U_k ⊇ U_{k+1}⁶`, the family `V_r`, and exact
//! evaluation of `d(x, y) = inf{r : (x, y) ∈ V_r}`.

use serde::{Deserialize, Serialize};

use crate::dyadic::{balanced_product, Dyadic, MAX_EXP};
use crate::error::{Error, Result};
use crate::finspace::FinSpace;
use crate::quniform::EntourageBase;
use crate::relalg::Entourage;

use super::premetric::Premetric;

/// Chains up to this length are evaluated by scanning the whole grid; longer
/// ones bisect along the (monotone) family.
const FULL_SCAN_MAX: usize = 12;

/// How links are picked among admissible base members.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChainStrategy {
    /// Largest admissible member in canonical order: `U₁` with `U₁³ ⊆ U`,
    /// then `U_{k+1}` with `U_{k+1}⁶ ⊆ U_k`.
    #[default]
    Coarsest,
    /// Smallest member `V` with `V∘V ⊆ W` at each halving: `U₁ = h(h(U))`,
    /// `U_{k+1} = h³(U_k)`. On a finite carrier this reaches the minimum
    /// member at once.
    Finest,
}

impl ChainStrategy {
    pub fn parse(s: &str) -> Result<ChainStrategy> {
        match s {
            "coarsest" => Ok(ChainStrategy::Coarsest),
            "finest" => Ok(ChainStrategy::Finest),
            other => Err(Error::Parse(format!("unknown chain strategy `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chain {
    target: Entourage,
    links: Vec<Entourage>,
    strategy: ChainStrategy,
}

impl Chain {
    /// Links are members of a multiplicative base; the last one is
    /// transitive and stands for every later index.
    pub fn build(base: &EntourageBase, target: &Entourage, strategy: ChainStrategy) -> Result<Chain> {
        if base.n() != target.n() {
            return Err(Error::SizeMismatch(base.n(), target.n()));
        }
        if !base.is_multiplicative() {
            return Err(Error::NotABase("chain construction needs a multiplicative base".into()));
        }
        if !base.generates(target.relation()) {
            return Err(Error::TargetNotInUniformity);
        }
        let ms = base.members();
        let fits = |v: &Entourage, k: usize, w: &Entourage| v.power(k).expect("k >= 1").is_subset_of(w);
        let mut links = vec![];
        match strategy {
            ChainStrategy::Coarsest => {
                let last_fit = |k: usize, w: &Entourage| ms.iter().rev().find(|v| fits(v, k, w)).copied();
                let mut cur = last_fit(3, target).ok_or(Error::NoHalving)?;
                loop {
                    links.push(cur);
                    let next = last_fit(6, &cur).ok_or(Error::NoHalving)?;
                    if next == cur {
                        break;
                    }
                    cur = next;
                }
            }
            ChainStrategy::Finest => {
                let halve = |w: &Entourage| ms.iter().find(|v| fits(v, 2, w)).copied().ok_or(Error::NoHalving);
                let mut cur = halve(&halve(target)?)?;
                loop {
                    links.push(cur);
                    let next = halve(&halve(&halve(&cur)?)?)?;
                    if next == cur {
                        break;
                    }
                    cur = next;
                }
            }
        }
        Ok(Chain {
            target: *target,
            links,
            strategy,
        })
    }

    pub fn target(&self) -> &Entourage {
        &self.target
    }

    pub fn links(&self) -> &[Entourage] {
        &self.links
    }

    pub fn strategy(&self) -> ChainStrategy {
        self.strategy
    }

    /// Stabilization index `m`.
    pub fn stab(&self) -> usize {
        self.links.len()
    }

    pub fn n(&self) -> usize {
        self.target.n()
    }

    /// `U_k` for `k ≥ 1`, constant from `m` on.
    pub fn link(&self, k: u32) -> Entourage {
        let i = (k as usize).clamp(1, self.links.len()) - 1;
        self.links[i]
    }

    fn last(&self) -> Entourage {
        *self.links.last().expect("chains are non-empty")
    }

    /// `V_r = Π(U_{↑r})` for `r ∈ (0, 1)` and `V₁ = X × X`.
    pub fn v(&self, r: Dyadic) -> Result<Entourage> {
        if r.is_one() {
            return Entourage::full(self.n());
        }
        let us: Vec<Entourage> = r.expansion()?.into_iter().map(|k| self.link(k)).collect();
        balanced_product(&us)
    }

    /// The entourage `V_r` shared by every `r ∈ (q, q + 2^{-m})`:
    /// `Π(U_{↑q} ⌢ [U_m])`, with `U_m` for `q = 0` and `X × X` for `q = 1`.
    pub fn v_plus(&self, q: Dyadic) -> Result<Entourage> {
        if q.is_zero() {
            return Ok(self.last());
        }
        if q.is_one() {
            return Entourage::full(self.n());
        }
        let mut us: Vec<Entourage> = q.expansion()?.into_iter().map(|k| self.link(k)).collect();
        us.push(self.last());
        balanced_product(&us)
    }

    /// `{0} ∪ {k / 2^m} ∪ {1}`.
    pub fn grid(&self) -> Result<Vec<Dyadic>> {
        let m = self.stab() as u32;
        let mut g = vec![Dyadic::ZERO];
        g.extend(Dyadic::grid(m)?);
        g.push(Dyadic::ONE);
        Ok(g)
    }

    /// `d(x, y) = min{q ∈ G : (x, y) ∈ V⁺_q}`.
    ///
    /// Past index `m` every link is the transitive `U_m`, and a trailing run
    /// of `U_m` in a balanced product collapses to one factor. So `V_r` for
    /// `r ∈ (q, q + 2^{-m})` is `V⁺_q ⊇ V_q`, and the infimum over all
    /// binary fractions is the least grid point whose `V⁺` holds the pair.
    pub fn eval_d(&self) -> Result<Premetric> {
        self.infimum_over(|e| e)
    }

    /// `inf{r : (x, y) ∈ op(V_r)}` for a monotone rowwise operator `op`,
    /// evaluated on the grid like [`Self::eval_d`].
    pub fn closed_form(&self, s: &FinSpace, op: ClosedForm) -> Result<Premetric> {
        if s.n() != self.n() {
            return Err(Error::SizeMismatch(self.n(), s.n()));
        }
        match op {
            ClosedForm::Closure => self.infimum_over(|e| e.closure_in(s)),
            ClosedForm::RegularHull => self.infimum_over(|e| e.reg_hull_in(s)),
        }
    }

    fn infimum_over(&self, op: impl Fn(Entourage) -> Entourage) -> Result<Premetric> {
        let n = self.n();
        let m = self.stab();
        if m <= FULL_SCAN_MAX {
            let grid = self.grid()?;
            let hulls = grid
                .iter()
                .map(|&q| Ok(op(self.v_plus(q)?)))
                .collect::<Result<Vec<_>>>()?;
            return Premetric::from_fn(n, |x, y| {
                let i = hulls
                    .iter()
                    .position(|h| h.contains(x, y))
                    .expect("V⁺₁ is the full relation");
                grid[i]
            });
        }
        if m as u32 > MAX_EXP {
            return Err(Error::ChainTooLong(m));
        }
        // bisection over k in 0..=2^m, k/2^m the grid point
        let top = 1u64 << m;
        let at = |k: u64| -> Result<Entourage> { Ok(op(self.v_plus(Dyadic::new(k, m as u32)?)?)) };
        let mut rows = vec![vec![Dyadic::ZERO; n]; n];
        for (x, row) in rows.iter_mut().enumerate() {
            for (y, cell) in row.iter_mut().enumerate() {
                let (mut lo, mut hi) = (0u64, top);
                if at(0)?.contains(x, y) {
                    continue;
                }
                while hi - lo > 1 {
                    let mid = lo + (hi - lo) / 2;
                    if at(mid)?.contains(x, y) {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                }
                *cell = Dyadic::new(hi, m as u32)?;
            }
        }
        Premetric::new(rows)
    }
}

/// Rowwise operators with a closed-form infimum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedForm {
    /// `Ū`
    Closure,
    /// `Ū°`
    RegularHull,
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z: Dyadic = Dyadic::ZERO;
    const O: Dyadic = Dyadic::ONE;
    const H: Dyadic = Dyadic::HALF;

    fn t() -> Entourage {
        Entourage::from_pairs(2, &[(0, 1)]).unwrap()
    }

    fn path(n: usize) -> Entourage {
        let pairs: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        Entourage::from_pairs(n, &pairs).unwrap()
    }

    /// `{Δ, S, S², …}` for the successor relation on `n` points.
    fn path_base(n: usize) -> EntourageBase {
        let s = path(n);
        let mut ms = vec![Entourage::diagonal(n).unwrap()];
        ms.extend((1..n).map(|k| s.power(k).unwrap()));
        EntourageBase::new(&ms).unwrap()
    }

    #[test]
    fn single_transitive_member() {
        let b = EntourageBase::new(&[t()]).unwrap();
        for strategy in [ChainStrategy::Coarsest, ChainStrategy::Finest] {
            let c = Chain::build(&b, &t(), strategy).unwrap();
            assert_eq!(c.links(), &[t()]);
            assert_eq!(c.v(H).unwrap(), t());
            assert_eq!(c.v(Dyadic::new(3, 2).unwrap()).unwrap(), t());
            assert_eq!(c.v(O).unwrap(), Entourage::full(2).unwrap());
            assert_eq!(
                c.eval_d().unwrap(),
                Premetric::new(vec![vec![Z, Z], vec![O, Z]]).unwrap()
            );
        }
    }

    #[test]
    fn diagonal_and_full() {
        let d = EntourageBase::new(&[Entourage::diagonal(3).unwrap()]).unwrap();
        let c = Chain::build(&d, &Entourage::diagonal(3).unwrap(), ChainStrategy::default()).unwrap();
        assert_eq!(c.stab(), 1);
        assert_eq!(c.eval_d().unwrap(), Premetric::discrete(3).unwrap());
        let f = EntourageBase::new(&[Entourage::full(3).unwrap()]).unwrap();
        let c = Chain::build(&f, &Entourage::full(3).unwrap(), ChainStrategy::default()).unwrap();
        assert_eq!(c.eval_d().unwrap(), Premetric::zero(3).unwrap());
    }

    #[test]
    fn coarsest_chain_on_a_path() {
        // S³ ⊆ S³ admits U₁ = S; then S⁶ ⊄ S forces U₂ = Δ.
        let b = path_base(5);
        let s = path(5);
        let c = Chain::build(&b, &s.power(3).unwrap(), ChainStrategy::Coarsest).unwrap();
        assert_eq!(c.links(), &[s, Entourage::diagonal(5).unwrap()]);
        let d = c.eval_d().unwrap();
        for x in 0..5 {
            for y in 0..5 {
                let want = if x == y {
                    Z
                } else if y == x + 1 {
                    H
                } else {
                    O
                };
                assert_eq!(d.get(x, y), want, "d({x},{y})");
            }
        }
    }

    #[test]
    fn finest_chain_is_the_minimum() {
        let b = path_base(5);
        let c = Chain::build(&b, &Entourage::full(5).unwrap(), ChainStrategy::Finest).unwrap();
        assert_eq!(c.links(), &[Entourage::diagonal(5).unwrap()]);
    }

    #[test]
    fn chain_errors() {
        let b = EntourageBase::new(&[t()]).unwrap();
        assert_eq!(
            Chain::build(&b, &Entourage::diagonal(2).unwrap(), ChainStrategy::default()),
            Err(Error::TargetNotInUniformity)
        );
        let s = path(3);
        let nm = EntourageBase::new(&[Entourage::diagonal(3).unwrap(), s]).unwrap();
        assert!(Chain::build(&nm, &s, ChainStrategy::default()).is_err());
    }

    #[test]
    fn bisection_matches_scan() {
        let b = path_base(5);
        let c = Chain::build(&b, &Entourage::full(5).unwrap(), ChainStrategy::Coarsest).unwrap();
        let scan = c.eval_d().unwrap();
        // pad the chain past the scan cutoff with its constant tail
        let mut long = c.clone();
        while long.links.len() <= FULL_SCAN_MAX {
            let last = long.last();
            long.links.push(last);
        }
        let bis = long.eval_d().unwrap();
        assert_eq!(bis, scan);
    }

    #[test]
    fn closed_forms_on_sierpinski() {
        let b = EntourageBase::new(&[t()]).unwrap();
        let s = b.induced_topology();
        let c = Chain::build(&b, &t(), ChainStrategy::default()).unwrap();
        assert_eq!(
            c.closed_form(&s, ClosedForm::Closure).unwrap(),
            Premetric::zero(2).unwrap()
        );
        assert_eq!(
            c.closed_form(&s, ClosedForm::RegularHull).unwrap(),
            Premetric::zero(2).unwrap()
        );
    }
}
