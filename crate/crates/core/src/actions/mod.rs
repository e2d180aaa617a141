//! Branched-cover actions of `Z_m ⊕ Z_n` with a configuration as singular set,
//! and certificates for families of exotic ones obtained by double point surgery.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::configuration::{meridian_label, Configuration};
use crate::presentation::{verify_abelian_isomorphism, AbelianGroup, AbelianizationMap, Bounds, Verdict, VerdictStatus};
use crate::surgery::{CaseParams, SurgeryError};
use crate::sw::{family_report, DistinguishVerdict, FamilyReport, SwError};
use crate::gcd;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ActionError {
    #[error("a cover plan needs a two-component configuration, found {0}")]
    Components(usize),
    #[error("m and n must be positive, got ({m}, {n})")]
    NonPositive { m: i64, n: i64 },
    #[error("gcd(m, n) = {g}, must be 1")]
    NotCoprime { g: i64 },
    #[error("configuration carries no complement presentation")]
    NoPresentation,
    #[error("complement group is not Z_{m} + Z_{n}: {verdict}")]
    WrongGroup { m: i64, n: i64, verdict: String },
    #[error("meridian {label} has order {found:?} in the abelianization, expected {want}")]
    MeridianOrder { label: String, found: Option<u64>, want: i64 },
    #[error("the knot family needs at least 2 knots, got {0}")]
    FamilySize(usize),
    #[error(transparent)]
    Surgery(#[from] SurgeryError),
    #[error(transparent)]
    Sw(#[from] SwError),
}

/// One stage of the iterated cyclic branched cover.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverStage {
    pub order: i64,
    pub branch_locus: String,
    pub description: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverPlan {
    pub m: i64,
    pub n: i64,
    pub stage_one: CoverStage,
    pub stage_two: CoverStage,
    pub configuration: Configuration,
    pub group: Verdict,
}

/// Checks that the complement group is `Z_m ⊕ Z_n` with `μ₁`, `μ₂` generating
/// the factors, so the regular cover branched with indices `m`, `n` exists.
pub fn build_cover_plan(c: &Configuration, m: i64, n: i64, bounds: &Bounds) -> Result<CoverPlan, ActionError> {
    if c.components().len() != 2 {
        return Err(ActionError::Components(c.components().len()));
    }
    if m < 1 || n < 1 {
        return Err(ActionError::NonPositive { m, n });
    }
    let g = gcd(m, n);
    if g != 1 {
        return Err(ActionError::NotCoprime { g });
    }
    let p = c.pi1().ok_or(ActionError::NoPresentation)?;
    let target = AbelianGroup::from_cyclic_orders(0, &[m as u64, n as u64]);
    let group = verify_abelian_isomorphism(p, &target, bounds);
    if group.status != VerdictStatus::Isomorphic {
        return Err(ActionError::WrongGroup { m, n, verdict: format!("{}: {}", group.status, group.summary()) });
    }
    let map = AbelianizationMap::new(p);
    for (i, want) in [(0, m), (1, n)] {
        let label = meridian_label(i);
        let w = p.label(&label).ok_or(ActionError::NoPresentation)?;
        let found = map.order_of(w);
        if found != Some(want as u64) {
            return Err(ActionError::MeridianOrder { label, found, want });
        }
    }
    let (s1, s2) = (&c.components()[0].label, &c.components()[1].label);
    Ok(CoverPlan {
        m,
        n,
        stage_one: CoverStage {
            order: n,
            branch_locus: s2.clone(),
            description: format!("Z_{n} cover branched over {s2}, mu2 -> 1"),
        },
        stage_two: CoverStage {
            order: m,
            branch_locus: format!("preimage of {s1}"),
            description: format!("Z_{m} cover branched over the preimage of {s1}"),
        },
        configuration: c.clone(),
        group,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CheckOutcome {
    Pass,
    Fail,
    Inconclusive,
    /// Recorded from the literature, not computed.
    Cited,
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckOutcome::Pass => "pass",
            CheckOutcome::Fail => "fail",
            CheckOutcome::Inconclusive => "inconclusive",
            CheckOutcome::Cited => "cited",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateCheck {
    pub id: char,
    pub name: String,
    pub condition: String,
    pub outcome: CheckOutcome,
    pub evidence: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionCertificate {
    pub plan: CoverPlan,
    pub k: i64,
    pub family_size: usize,
    pub checks: Vec<CertificateCheck>,
    pub family: FamilyReport,
    pub conclusion: String,
}

pub const CHECK_GROUP: &str = "group preserved";
pub const CHECK_COVER: &str = "cover is standard";
pub const CHECK_SW: &str = "SW distinct";
pub const CHECK_TOP: &str = "topologically equivalent";

impl ActionCertificate {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| matches!(c.outcome, CheckOutcome::Pass | CheckOutcome::Cited))
    }

    pub fn failed_checks(&self) -> Vec<&CertificateCheck> {
        self.checks.iter().filter(|c| c.outcome == CheckOutcome::Fail).collect()
    }

    pub fn name(&self) -> String {
        format!("action(m={}, n={}, k={}, N={})", self.plan.m, self.plan.n, self.k, self.family_size)
    }

    pub fn outcome(&self) -> CheckOutcome {
        if self.passed() {
            CheckOutcome::Pass
        } else if self.checks.iter().any(|c| c.outcome == CheckOutcome::Fail) {
            CheckOutcome::Fail
        } else {
            CheckOutcome::Inconclusive
        }
    }

    pub fn render(&self) -> String {
        let mut s = format!("== {} ==\n", self.name());
        s.push_str("-- cover plan --\n");
        s.push_str(&format!("  stage 1: {}\n", self.plan.stage_one.description));
        s.push_str(&format!("  stage 2: {}\n", self.plan.stage_two.description));
        s.push_str(&format!("  complement group: {} ({})\n", self.plan.group.status, self.plan.group.summary()));
        s.push_str("-- checks --\n");
        for c in &self.checks {
            s.push_str(&format!("  ({}) {} [{}]: {}\n", c.id, c.name, c.outcome, c.condition));
            for e in &c.evidence {
                s.push_str(&format!("      {e}\n"));
            }
        }
        s.push_str("-- conclusion --\n");
        s.push_str(&format!("  {}\n", self.conclusion));
        s.push_str(&format!("{}\n", self.machine_line()));
        s
    }

    /// `name TAB outcome TAB per-check outcomes`.
    pub fn machine_line(&self) -> String {
        let checks: Vec<String> = self.checks.iter().map(|c| format!("({}) {}={}", c.id, c.name, c.outcome)).collect();
        format!("{}\t{}\t{}", self.name(), self.outcome(), checks.join("; "))
    }
}

/// Certificate for the actions obtained by `k`-twisted surgery on `Σ₁` with
/// `K_1..K_N`. The size bound of the family stands in for "infinitely many".
pub fn exotic_action_certificate(
    plan: &CoverPlan,
    k: i64,
    family_size: usize,
    bounds: &Bounds,
) -> Result<ActionCertificate, ActionError> {
    if family_size < 2 {
        return Err(ActionError::FamilySize(family_size));
    }
    let (m, n) = (plan.m, plan.n);
    let case = CaseParams::f3(m, n, k)?;
    let family = family_report(&plan.configuration, family_size, &case, bounds, None)?;

    let g = gcd(m, k * n);
    let mut evidence = vec![format!("gcd(m, kn) = gcd({m}, {}) = {g}", k * n)];
    let mut statuses = Vec::new();
    for member in &family.members {
        match &member.group {
            Ok(v) => {
                evidence.push(format!("{}: {}", member.knot, v.status));
                statuses.push(v.status);
            }
            Err(e) => {
                evidence.push(format!("{}: {e}", member.knot));
                statuses.push(VerdictStatus::NotIsomorphic);
            }
        }
    }
    let group_outcome = if g != 1 || statuses.contains(&VerdictStatus::NotIsomorphic) {
        CheckOutcome::Fail
    } else if statuses.contains(&VerdictStatus::Inconclusive) {
        CheckOutcome::Inconclusive
    } else {
        CheckOutcome::Pass
    };
    let a = CertificateCheck {
        id: 'a',
        name: CHECK_GROUP.into(),
        condition: format!("gcd(m, kn) = 1 and every surgered complement has group Z_{}", m * n),
        outcome: group_outcome,
        evidence,
    };

    let gk = gcd(k, m);
    let b = CertificateCheck {
        id: 'b',
        name: CHECK_COVER.into(),
        condition: "gcd(k, m) = 1, so the m-fold cover of the twist-spun knot is the standard 4-sphere (Plotnick)"
            .into(),
        outcome: if gk == 1 { CheckOutcome::Pass } else { CheckOutcome::Fail },
        evidence: vec![format!("gcd(k, m) = gcd({k}, {m}) = {gk}")],
    };

    let distinct = family.pairs.iter().filter(|p| p.verdict == DistinguishVerdict::SmoothlyInequivalent).count();
    let mut evidence = vec![format!("{distinct} of {} pairs smoothly inequivalent", family.pairs.len())];
    evidence.extend(family.applicability.audit.iter().map(|c| c.to_string()));
    let c = CertificateCheck {
        id: 'c',
        name: CHECK_SW.into(),
        condition: "the rim surgery formula applies and all pairs of SW invariants differ".into(),
        outcome: if family.applicability.passed() && distinct == family.pairs.len() {
            CheckOutcome::Pass
        } else {
            CheckOutcome::Fail
        },
        evidence,
    };

    let d = CertificateCheck {
        id: 'd',
        name: CHECK_TOP.into(),
        condition: "each surgered component is topologically isotopic to the original".into(),
        outcome: CheckOutcome::Cited,
        evidence: vec!["surgery-theoretic argument, not recomputed".into()],
    };

    let checks = vec![a, b, c, d];
    let mut cert = ActionCertificate {
        plan: plan.clone(),
        k,
        family_size,
        checks,
        family,
        conclusion: String::new(),
    };
    cert.conclusion = if cert.passed() {
        format!("infinitely many smoothly inequivalent, topologically equivalent actions (desk-scale: {family_size})")
    } else {
        let names: Vec<String> = cert
            .checks
            .iter()
            .filter(|c| !matches!(c.outcome, CheckOutcome::Pass | CheckOutcome::Cited))
            .map(|c| format!("({}) {} {}", c.id, c.name, c.outcome))
            .collect();
        format!("no conclusion: {}", names.join(", "))
    };
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::configuration::{spheres, tori};

    fn plan(m: i64, n: i64) -> CoverPlan {
        build_cover_plan(&tori(m as u32, n as u32).unwrap(), m, n, &Bounds::default()).unwrap()
    }

    #[test]
    fn cover_plans() {
        let p = plan(3, 2);
        assert_eq!(p.stage_one.order, 2);
        assert_eq!(p.stage_two.order, 3);
        let b = Bounds::default();
        assert_eq!(
            build_cover_plan(&spheres(4, 2).unwrap(), 4, 2, &b),
            Err(ActionError::NotCoprime { g: 2 })
        );
        assert!(matches!(build_cover_plan(&tori(1, 1).unwrap(), 3, 2, &b), Err(ActionError::WrongGroup { .. })));
        // the factors are swapped relative to the meridians
        assert!(matches!(
            build_cover_plan(&spheres(2, 3).unwrap(), 3, 2, &b),
            Err(ActionError::MeridianOrder { .. })
        ));
    }

    #[test]
    fn certificates() {
        let b = Bounds::default();
        let cert = exotic_action_certificate(&plan(3, 2), 1, 5, &b).unwrap();
        assert!(cert.passed(), "{}", cert.render());
        assert_eq!(cert.family.pairs.len(), 10);
        assert!(cert.conclusion.contains("desk-scale: 5"));
        assert!(cert.machine_line().starts_with("action(m=3, n=2, k=1, N=5)\tpass\t"));

        let cert = exotic_action_certificate(&plan(3, 2), 3, 3, &b).unwrap();
        assert!(!cert.passed());
        assert!(cert.failed_checks().iter().any(|c| c.name == CHECK_COVER));

        let cert = exotic_action_certificate(&plan(2, 3), 2, 3, &b).unwrap();
        assert!(cert.failed_checks().iter().any(|c| c.name == CHECK_GROUP));
        assert!(cert.conclusion.starts_with("no conclusion"));

        assert_eq!(exotic_action_certificate(&plan(3, 2), 1, 1, &b), Err(ActionError::FamilySize(1)));
    }

    #[test]
    fn small_coprime_pairs_certify() {
        let b = Bounds::default();
        for m in 1..=4 {
            for n in 1..=4 {
                if gcd(m, n) != 1 || (m, n) == (1, 1) {
                    continue;
                }
                let cert = exotic_action_certificate(&plan(m, n), 1, 3, &b).unwrap();
                assert!(cert.passed(), "{}", cert.render());
            }
        }
    }

    #[test]
    fn single_double_point_cannot_be_distinguished() {
        let cert = exotic_action_certificate(&plan(1, 1), 1, 3, &Bounds::default()).unwrap();
        let failed: Vec<&str> = cert.failed_checks().iter().map(|c| c.name.as_str()).collect();
        assert_eq!(failed, vec![CHECK_SW]);
    }

    #[test]
    fn certificates_are_deterministic() {
        let b = Bounds::default();
        let x = exotic_action_certificate(&plan(2, 3), 1, 3, &b).unwrap();
        let y = exotic_action_certificate(&plan(2, 3), 1, 3, &b).unwrap();
        assert_eq!(x.render(), y.render());
    }
}
