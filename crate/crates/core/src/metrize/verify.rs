//! Building a metric bundle and checking every conclusion of the
//! construction on it.

use serde::{Deserialize, Serialize};

use crate::bits;
use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::finspace::FinSpace;
use crate::quniform::{EntourageBase, RotundKind, SUBSET_SWEEP_MAX};
use crate::relalg::Entourage;

use super::chain::{Chain, ChainStrategy, ClosedForm};
use super::premetric::{DistVariant, Premetric};

/// Grid depth cap for the checks on the family `V_r`.
pub const CHECK_DEPTH_MAX: u32 = 7;

/// Names of all checks, in report order.
pub const CHECK_NAMES: [&str; 16] = [
    "chain_containments",
    "v_family_bounds",
    "v_family_subadditive",
    "point_rotund_closure_nesting",
    "set_rotund_closure_nesting",
    "set_rotund_neighborhood_nesting",
    "delta_rotund_composition",
    "d_uniform_quasi_pseudometric",
    "modification_order",
    "regularization_closed_form",
    "semiregularization_closed_form",
    "point_rotund_right_continuity",
    "set_rotund_dist_continuity",
    "delta_rotund_triangle",
    "symmetric_pseudometric",
    "stored_values_match",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CheckStatus {
    Passed,
    Failed { detail: String },
    Skipped { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    #[serde(flatten)]
    pub status: CheckStatus,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Passed
    }

    pub fn failed(&self) -> bool {
        matches!(self.status, CheckStatus::Failed { .. })
    }
}

/// Rotundness of the multiplicative base; `None` when the carrier is too
/// large for the subset sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseRotundness {
    pub point: bool,
    pub set: Option<bool>,
    pub delta: bool,
    pub full: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricBundle {
    pub base: EntourageBase,
    pub space: FinSpace,
    pub chain: Chain,
    pub d: Premetric,
    pub d_reg: Premetric,
    pub d_semireg: Premetric,
    pub rotund: BaseRotundness,
    pub report: Vec<CheckResult>,
}

impl MetricBundle {
    /// Saturates the base, builds the chain for `target`, evaluates `d` and
    /// its modifications in `space` (the induced topology by default), and
    /// runs every check.
    pub fn synthesize(
        base: &EntourageBase,
        space: Option<&FinSpace>,
        target: &Entourage,
        strategy: ChainStrategy,
    ) -> Result<MetricBundle> {
        let base = base.saturate_mult();
        let space = match space {
            Some(s) if s.n() != base.n() => return Err(Error::SizeMismatch(base.n(), s.n())),
            Some(s) => s.clone(),
            None => base.induced_topology(),
        };
        let chain = Chain::build(&base, target, strategy)?;
        let d = chain.eval_d()?;
        let d_reg = d.regularize(&space)?;
        let d_semireg = d.semiregularize(&space)?;
        let swept = base.n() <= SUBSET_SWEEP_MAX;
        let rotund = BaseRotundness {
            point: base.is_rotund(&space, RotundKind::Point)?,
            set: swept.then(|| base.is_rotund(&space, RotundKind::Set)).transpose()?,
            delta: base.is_rotund(&space, RotundKind::Delta)?,
            full: swept.then(|| base.is_rotund(&space, RotundKind::Full)).transpose()?,
        };
        let mut bundle = MetricBundle {
            base,
            space,
            chain,
            d,
            d_reg,
            d_semireg,
            rotund,
            report: vec![],
        };
        bundle.report = bundle.run_checks()?;
        Ok(bundle)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.report.iter().filter(|c| c.failed())
    }

    pub fn all_passed(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.report.iter().find(|c| c.name == name)
    }

    /// Recomputes every check from the stored base, space and chain target,
    /// including agreement of the stored values with fresh ones.
    pub fn reverify(&self) -> Result<Vec<CheckResult>> {
        let fresh = MetricBundle::synthesize(
            &self.base,
            Some(&self.space),
            self.chain.target(),
            self.chain.strategy(),
        )?;
        let mut out = fresh.report.clone();
        let mismatch = [
            ("chain", fresh.chain != self.chain),
            ("d", fresh.d != self.d),
            ("d_reg", fresh.d_reg != self.d_reg),
            ("d_semireg", fresh.d_semireg != self.d_semireg),
            ("rotund", fresh.rotund != self.rotund),
        ]
        .iter()
        .filter(|(_, bad)| *bad)
        .map(|(name, _)| *name)
        .collect::<Vec<_>>();
        let status = if mismatch.is_empty() {
            CheckStatus::Passed
        } else {
            CheckStatus::Failed {
                detail: format!("stored {} differ from recomputation", mismatch.join(", ")),
            }
        };
        out.push(CheckResult {
            name: "stored_values_match".into(),
            status,
        });
        Ok(out)
    }

    fn run_checks(&self) -> Result<Vec<CheckResult>> {
        let ctx = Ctx::new(self)?;
        let mut out = vec![];
        let mut push = |name: &str, status: CheckStatus| {
            out.push(CheckResult {
                name: name.into(),
                status,
            })
        };
        push("chain_containments", ctx.chain_containments());
        push("v_family_bounds", ctx.v_family_bounds());
        push("v_family_subadditive", ctx.v_family_subadditive());
        push("point_rotund_closure_nesting", ctx.point_rotund_closure_nesting());
        push("set_rotund_closure_nesting", ctx.set_rotund_nesting(false));
        push("set_rotund_neighborhood_nesting", ctx.set_rotund_nesting(true));
        push("delta_rotund_composition", ctx.delta_rotund_composition());
        push("d_uniform_quasi_pseudometric", ctx.d_uniform_quasi_pseudometric()?);
        push("modification_order", ctx.modification_order());
        push(
            "regularization_closed_form",
            ctx.modification_closed_form(ClosedForm::Closure)?,
        );
        push(
            "semiregularization_closed_form",
            ctx.modification_closed_form(ClosedForm::RegularHull)?,
        );
        push("point_rotund_right_continuity", ctx.point_rotund_right_continuity()?);
        push("set_rotund_dist_continuity", ctx.set_rotund_dist_continuity()?);
        push("delta_rotund_triangle", ctx.delta_rotund_triangle());
        push("symmetric_pseudometric", ctx.symmetric_pseudometric()?);
        Ok(out)
    }
}

fn verdict(failure: Option<String>) -> CheckStatus {
    match failure {
        None => CheckStatus::Passed,
        Some(detail) => CheckStatus::Failed { detail },
    }
}

fn skipped(hypothesis: &str) -> CheckStatus {
    CheckStatus::Skipped {
        reason: format!("hypothesis not met: base is not {hypothesis}"),
    }
}

fn too_large(n: usize) -> CheckStatus {
    CheckStatus::Skipped {
        reason: format!("subset sweep capped at {SUBSET_SWEEP_MAX} points, carrier has {n}"),
    }
}

struct Ctx<'a> {
    b: &'a MetricBundle,
    /// `{k / 2^D}` at the check depth `D`.
    grid: Vec<Dyadic>,
    /// `V_r` for each grid point.
    vs: Vec<Entourage>,
}

impl<'a> Ctx<'a> {
    fn new(b: &'a MetricBundle) -> Result<Ctx<'a>> {
        let depth = (b.chain.stab() as u32 + 2).min(CHECK_DEPTH_MAX);
        let grid = Dyadic::grid(depth)?;
        let vs = grid.iter().map(|&r| b.chain.v(r)).collect::<Result<Vec<_>>>()?;
        Ok(Ctx { b, grid, vs })
    }

    fn s(&self) -> &FinSpace {
        &self.b.space
    }

    fn index_of(&self, r: Dyadic) -> Option<usize> {
        self.grid.binary_search(&r).ok()
    }

    fn chain_containments(&self) -> CheckStatus {
        let c = &self.b.chain;
        let links = c.links();
        if !links[0].power(3).expect("k >= 1").is_subset_of(c.target()) {
            return verdict(Some("U_1^3 is not inside the target".into()));
        }
        for k in 1..links.len() {
            if !links[k].power(6).expect("k >= 1").is_subset_of(&links[k - 1]) {
                return verdict(Some(format!("U_{}^6 is not inside U_{k}", k + 1)));
            }
        }
        if !links[links.len() - 1].is_transitive() {
            return verdict(Some("last link is not transitive".into()));
        }
        verdict(
            links
                .iter()
                .position(|l| self.b.base.index_of(l).is_none())
                .map(|k| format!("U_{} is not a base member", k + 1)),
        )
    }

    /// `V_x ⊆ U_{↑x₁}³ ⊆ U`.
    fn v_family_bounds(&self) -> CheckStatus {
        let c = &self.b.chain;
        for (r, v) in self.grid.iter().zip(&self.vs) {
            let first = r.expansion().expect("grid point in (0,1)")[0];
            let cube = c.link(first).power(3).expect("k >= 1");
            if !v.is_subset_of(&cube) || !cube.is_subset_of(c.target()) {
                return verdict(Some(format!("V_{r} escapes U_{first}^3 or the target")));
            }
        }
        verdict(None)
    }

    /// `V_q ∘ V_r ⊆ V_{q+r}` whenever `q + r < 1`.
    fn v_family_subadditive(&self) -> CheckStatus {
        for (i, q) in self.grid.iter().enumerate() {
            for (j, r) in self.grid.iter().enumerate() {
                let Some(sum) = q.checked_add(r).filter(|s| !s.is_one()) else {
                    continue;
                };
                let k = self.index_of(sum).expect("sum on the grid");
                if !self.vs[i].compose_unchecked(&self.vs[j]).is_subset_of(&self.vs[k]) {
                    return verdict(Some(format!("V_{q} V_{r} is not inside V_{sum}")));
                }
            }
        }
        verdict(None)
    }

    /// `cl V_r ⊆ int cl V_q` for `r < q`.
    fn point_rotund_closure_nesting(&self) -> CheckStatus {
        if !self.b.rotund.point {
            return skipped("point-rotund");
        }
        let s = self.s();
        let cl: Vec<Entourage> = self.vs.iter().map(|v| v.closure_in(s)).collect();
        let hull: Vec<Entourage> = self.vs.iter().map(|v| v.reg_hull_in(s)).collect();
        for (i, c) in cl.iter().enumerate() {
            for (j, h) in hull.iter().enumerate().skip(i + 1) {
                if !c.is_subset_of(h) {
                    return verdict(Some(format!(
                        "cl V_{} is not inside int cl V_{}",
                        self.grid[i], self.grid[j]
                    )));
                }
            }
        }
        verdict(None)
    }

    /// For `r < q` and non-empty `A`: `cl B(A;V_r) ⊆ int cl B(A;V_q)`, or with
    /// `neighborhood`, `B(cl A;V_r) ⊆ int cl B(A;V_q)`.
    fn set_rotund_nesting(&self, neighborhood: bool) -> CheckStatus {
        let s = self.s();
        match self.b.rotund.set {
            None => return too_large(s.n()),
            Some(false) => return skipped("set-rotund"),
            Some(true) => {}
        }
        for a in bits::nonempty_subsets(s.n()) {
            let cl_a = s.closure(a);
            let hulls: Vec<_> = self.vs.iter().map(|v| s.reg_open_hull(v.ball(a))).collect();
            for i in 0..self.grid.len() {
                let lhs = if neighborhood {
                    self.vs[i].ball(cl_a)
                } else {
                    s.closure(self.vs[i].ball(a))
                };
                for (j, &h) in hulls.iter().enumerate().skip(i + 1) {
                    if !bits::is_subset(lhs, h) {
                        return verdict(Some(format!(
                            "A = {:?}, r = {}, q = {}",
                            bits::to_points(a),
                            self.grid[i],
                            self.grid[j]
                        )));
                    }
                }
            }
        }
        verdict(None)
    }

    /// `int cl V_p ∘ int cl V_q ⊆ int cl V_r ⊆ int cl U` for `p + q < r`.
    fn delta_rotund_composition(&self) -> CheckStatus {
        if !self.b.rotund.delta {
            return skipped("delta-rotund");
        }
        let s = self.s();
        let hull: Vec<Entourage> = self.vs.iter().map(|v| v.reg_hull_in(s)).collect();
        let top = self.b.chain.target().reg_hull_in(s);
        if let Some(i) = hull.iter().position(|h| !h.is_subset_of(&top)) {
            return verdict(Some(format!("int cl V_{} is not inside int cl U", self.grid[i])));
        }
        for (i, p) in self.grid.iter().enumerate() {
            for (j, q) in self.grid.iter().enumerate() {
                let Some(pq) = p.checked_add(q) else { continue };
                let comp = hull[i].compose_unchecked(&hull[j]);
                for (k, r) in self.grid.iter().enumerate() {
                    if *r > pq && !comp.is_subset_of(&hull[k]) {
                        return verdict(Some(format!("p = {p}, q = {q}, r = {r}")));
                    }
                }
            }
        }
        verdict(None)
    }

    fn d_uniform_quasi_pseudometric(&self) -> Result<CheckStatus> {
        let b = self.b;
        let mut bad = vec![];
        if !b.base.is_u_uniform(&b.d)? {
            bad.push("not uniform");
        }
        if !b.d.axioms().triangle {
            bad.push("triangle inequality fails");
        }
        if !b.d.has_open_balls(self.s())? {
            bad.push("some ball is not open");
        }
        if !b.d.strict_sublevel(Dyadic::ONE).is_subset_of(b.chain.target()) {
            bad.push("[d]_{<1} is not inside U");
        }
        Ok(verdict((!bad.is_empty()).then(|| bad.join("; "))))
    }

    fn modification_order(&self) -> CheckStatus {
        let b = self.b;
        verdict((!(b.d_reg.le(&b.d_semireg) && b.d_semireg.le(&b.d))).then(|| "d_reg <= d_semireg <= d fails".into()))
    }

    /// Uniformity, ball type, the `[·]_{<1}` bound, and agreement with
    /// `inf{r : (x, y) ∈ op(V_r)}`.
    fn modification_closed_form(&self, op: ClosedForm) -> Result<CheckStatus> {
        let b = self.b;
        let s = self.s();
        let (p, balls_ok, bound) = match op {
            ClosedForm::Closure => (&b.d_reg, b.d_reg.has_closed_balls(s)?, b.chain.target().closure_in(s)),
            ClosedForm::RegularHull => (
                &b.d_semireg,
                b.d_semireg.has_open_balls(s)?,
                b.chain.target().reg_hull_in(s),
            ),
        };
        let mut bad = vec![];
        if !b.base.is_u_uniform(p)? {
            bad.push("not uniform".to_string());
        }
        if !balls_ok {
            bad.push("ball type fails".into());
        }
        if !p.strict_sublevel(Dyadic::ONE).is_subset_of(&bound) {
            bad.push("unit sublevel escapes the modified target".into());
        }
        let closed = b.chain.closed_form(s, op)?;
        if closed != *p {
            bad.push(format!("closed form {closed:?} differs from {p:?}"));
        }
        Ok(verdict((!bad.is_empty()).then(|| bad.join("; "))))
    }

    fn point_rotund_right_continuity(&self) -> Result<CheckStatus> {
        let b = self.b;
        if !b.rotund.point {
            return Ok(skipped("point-rotund"));
        }
        let mut bad = vec![];
        if b.d_reg != b.d_semireg {
            bad.push("d_reg != d_semireg");
        }
        if !b.d_reg.is_right_continuous(self.s())? {
            bad.push("d_reg is not right-continuous");
        }
        Ok(verdict((!bad.is_empty()).then(|| bad.join("; "))))
    }

    fn set_rotund_dist_continuity(&self) -> Result<CheckStatus> {
        let b = self.b;
        let s = self.s();
        match b.rotund.set {
            None => return Ok(too_large(s.n())),
            Some(false) => return Ok(skipped("set-rotund")),
            Some(true) => {}
        }
        let mut bad = vec![];
        if !b.d.is_dist_continuous(s, DistVariant::Reg)? {
            bad.push("d is not reg-dist-continuous");
        }
        if b.d_reg != b.d_semireg {
            bad.push("d_reg != d_semireg");
        }
        if !b.d_reg.is_right_continuous(s)? {
            bad.push("d_reg is not right-continuous");
        }
        if !b.d_reg.is_dist_continuous(s, DistVariant::Reg)? {
            bad.push("d_reg is not reg-dist-continuous");
        }
        Ok(verdict((!bad.is_empty()).then(|| bad.join("; "))))
    }

    fn delta_rotund_triangle(&self) -> CheckStatus {
        let b = self.b;
        if !b.rotund.delta {
            return skipped("delta-rotund");
        }
        let mut bad = vec![];
        if b.d_reg != b.d_semireg {
            bad.push("d_reg != d_semireg");
        }
        if !b.d_reg.axioms().triangle {
            bad.push("d_reg violates the triangle inequality");
        }
        verdict((!bad.is_empty()).then(|| bad.join("; ")))
    }

    fn symmetric_pseudometric(&self) -> Result<CheckStatus> {
        let b = self.b;
        if !b.base.is_symmetric() {
            return Ok(skipped("symmetric"));
        }
        let mut bad = vec![];
        if b.d != b.d_reg || b.d != b.d_semireg {
            bad.push("d, d_reg, d_semireg differ");
        }
        let ax = b.d.axioms();
        if !(ax.symmetry && ax.triangle) {
            bad.push("d is not a pseudometric");
        }
        if !b.d.is_continuous(self.s())? {
            bad.push("d is not continuous");
        }
        Ok(verdict((!bad.is_empty()).then(|| bad.join("; "))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z: Dyadic = Dyadic::ZERO;
    const O: Dyadic = Dyadic::ONE;

    #[test]
    fn sierpinski_bundle() {
        let t = Entourage::from_pairs(2, &[(0, 1)]).unwrap();
        let b = EntourageBase::new(&[t]).unwrap();
        let bundle = MetricBundle::synthesize(&b, None, &t, ChainStrategy::default()).unwrap();
        assert_eq!(bundle.d, Premetric::new(vec![vec![Z, Z], vec![O, Z]]).unwrap());
        assert_eq!(bundle.d_reg, Premetric::zero(2).unwrap());
        assert_eq!(bundle.d_semireg, Premetric::zero(2).unwrap());
        assert!(bundle.all_passed(), "{:?}", bundle.report);
        assert_eq!(bundle.report.len(), CHECK_NAMES.len() - 1);
        let again = bundle.reverify().unwrap();
        assert!(again.iter().all(|c| !c.failed()));
    }

    #[test]
    fn symmetric_two_point_bundle() {
        let r = Entourage::from_pairs(2, &[(0, 1), (1, 0)]).unwrap();
        let b = EntourageBase::new(&[r]).unwrap();
        let bundle = MetricBundle::synthesize(&b, None, &r, ChainStrategy::default()).unwrap();
        assert_eq!(
            bundle.check("symmetric_pseudometric").unwrap().status,
            CheckStatus::Passed
        );
        assert!(bundle.all_passed());
    }

    #[test]
    fn diagonal_bundle() {
        let d = Entourage::diagonal(3).unwrap();
        let b = EntourageBase::new(&[d]).unwrap();
        let bundle = MetricBundle::synthesize(&b, None, &d, ChainStrategy::default()).unwrap();
        assert_eq!(bundle.d, Premetric::discrete(3).unwrap());
        assert!(bundle.report.iter().all(|c| c.passed()));
    }

    #[test]
    fn tampered_bundle_is_caught() {
        let t = Entourage::from_pairs(2, &[(0, 1)]).unwrap();
        let b = EntourageBase::new(&[t]).unwrap();
        let mut bundle = MetricBundle::synthesize(&b, None, &t, ChainStrategy::default()).unwrap();
        bundle.d = Premetric::zero(2).unwrap();
        let report = bundle.reverify().unwrap();
        assert!(report.last().unwrap().failed());
    }
}
