//! General laws of distance functions and premetric modifications, checked
//! on one premetric at a time.

use crate::bits;
use crate::error::{Error, Result};
use crate::finspace::FinSpace;

use super::premetric::{DistVariant, Premetric, DIST_SWEEP_MAX};
use super::verify::{CheckResult, CheckStatus};

pub const LAW_NAMES: [&str; 6] = [
    "reg_closed_balls",
    "semireg_open_balls",
    "modification_idempotence",
    "pointwise_dist_equivalences",
    "dist_continuity_equivalences",
    "equal_modifications_consequences",
];

fn verdict(bad: Vec<String>) -> CheckStatus {
    if bad.is_empty() {
        CheckStatus::Passed
    } else {
        CheckStatus::Failed { detail: bad.join("; ") }
    }
}

fn needs_open_balls() -> CheckStatus {
    CheckStatus::Skipped {
        reason: "hypothesis not met: d has a ball that is not open".into(),
    }
}

/// Runs every law in [`LAW_NAMES`] order. Laws stated for premetrics with
/// open balls are skipped otherwise.
pub fn distance_laws(d: &Premetric, s: &FinSpace) -> Result<Vec<CheckResult>> {
    let n = d.n();
    if n > DIST_SWEEP_MAX {
        return Err(Error::TooLarge { n, max: DIST_SWEEP_MAX });
    }
    let reg = d.regularize(s)?;
    let semi = d.semiregularize(s)?;
    let open = d.has_open_balls(s)?;
    let mut out = Vec::with_capacity(LAW_NAMES.len());
    let mut push = |i: usize, status: CheckStatus| {
        out.push(CheckResult {
            name: LAW_NAMES[i].into(),
            status,
        })
    };

    push(
        0,
        verdict(if reg.has_closed_balls(s)? {
            vec![]
        } else {
            vec!["d_reg has a ball that is not closed".into()]
        }),
    );

    push(
        1,
        if !open {
            needs_open_balls()
        } else if semi.has_open_balls(s)? {
            CheckStatus::Passed
        } else {
            CheckStatus::Failed {
                detail: "d_semireg has a ball that is not open".into(),
            }
        },
    );

    let mut bad = vec![];
    for a in bits::nonempty_subsets(n) {
        if reg.dist_fn(s, a, DistVariant::Reg)? != d.dist_fn(s, a, DistVariant::Reg)? {
            bad.push(format!(
                "reg distance of d_reg differs from that of d at A={:?}",
                bits::to_points(a)
            ));
        }
        if semi.dist_fn(s, a, DistVariant::Semireg)? != d.dist_fn(s, a, DistVariant::Semireg)? {
            bad.push(format!(
                "semireg distance of d_semireg differs from that of d at A={:?}",
                bits::to_points(a)
            ));
        }
    }
    push(2, verdict(bad));

    if !open {
        push(3, needs_open_balls());
        push(4, needs_open_balls());
        push(5, needs_open_balls());
        return Ok(out);
    }

    let mut bad = vec![];
    let mut all_equal = true;
    let mut all_plain_equal = true;
    for a in bits::nonempty_subsets(n) {
        let p = d.dist_fn(s, a, DistVariant::Plain)?;
        let r = d.dist_fn(s, a, DistVariant::Reg)?;
        let o = d.dist_fn(s, a, DistVariant::Semireg)?;
        let eq = r == o;
        let (rc, oc, pc) = (s.is_continuous(&r), s.is_continuous(&o), s.is_continuous(&p));
        let five = eq && o == p;
        all_equal &= eq;
        all_plain_equal &= five;
        if !(eq == rc && rc == oc) {
            bad.push(format!(
                "A={:?}: equal={eq}, reg continuous={rc}, semireg continuous={oc}",
                bits::to_points(a)
            ));
        }
        if pc != five {
            bad.push(format!(
                "A={:?}: plain continuous={pc}, all three equal={five}",
                bits::to_points(a)
            ));
        }
    }
    push(3, verdict(bad));

    let mut bad = vec![];
    let rc = d.is_dist_continuous(s, DistVariant::Reg)?;
    let oc = d.is_dist_continuous(s, DistVariant::Semireg)?;
    let pc = d.is_dist_continuous(s, DistVariant::Plain)?;
    if !(rc == oc && oc == all_equal) {
        bad.push(format!(
            "reg-dist={rc}, semireg-dist={oc}, reg = semireg everywhere={all_equal}"
        ));
    }
    if pc != all_plain_equal {
        bad.push(format!("dist={pc}, all distance functions equal={all_plain_equal}"));
    }
    if pc && !d.is_right_continuous(s)? {
        bad.push("dist-continuous but not right-continuous".into());
    }
    push(4, verdict(bad));

    let mut bad = vec![];
    if reg == semi && !reg.is_right_continuous(s)? {
        bad.push("d_reg = d_semireg but d_reg is not right-continuous".into());
    }
    if rc {
        if reg != semi {
            bad.push("reg-dist-continuous but d_reg != d_semireg".into());
        } else if !reg.is_dist_continuous(s, DistVariant::Reg)? {
            bad.push("reg-dist-continuous but d_reg is not reg-dist-continuous".into());
        }
    }
    push(5, verdict(bad));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyadic::Dyadic;

    #[test]
    fn sierpinski_quasi_metric() {
        let s = FinSpace::sierpinski(1).unwrap();
        let z = Dyadic::ZERO;
        let d = Premetric::new(vec![vec![z, z], vec![Dyadic::ONE, z]]).unwrap();
        let laws = distance_laws(&d, &s).unwrap();
        assert_eq!(laws.len(), LAW_NAMES.len());
        assert!(laws.iter().all(|c| c.passed()), "{laws:?}");
    }

    #[test]
    fn skips_without_open_balls() {
        let s = FinSpace::sierpinski(1).unwrap();
        let z = Dyadic::ZERO;
        let d = Premetric::new(vec![vec![z, Dyadic::ONE], vec![z, z]]).unwrap();
        let laws = distance_laws(&d, &s).unwrap();
        assert!(matches!(laws[1].status, CheckStatus::Skipped { .. }));
        assert!(laws.iter().all(|c| !c.failed()));
    }
}
