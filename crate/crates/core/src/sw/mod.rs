//! Formal Seiberg–Witten bookkeeping. Invariants are Laurent polynomials in
//! the rim torus class `r`; nothing here solves the monopole equations.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::configuration::{algebraic_intersection, Configuration, EmbeddingTag};
use crate::knot::{braid_alexander, braid_presentation, knot_family, BraidWord, KnotError, LaurentPoly};
use crate::presentation::{Bounds, Verdict};
use crate::surgery::{apply_surgery, check_case_hypothesis, verify_group_preserved, CaseParams, Gluing, SurgeryError, SurgerySpec};

pub const TAUBES_CANONICAL: &str = "taubes-canonical";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SwError {
    #[error("an invariant flagged nonvanishing must have a nonzero value")]
    ZeroNonvanishing,
    #[error(transparent)]
    Knot(#[from] KnotError),
    #[error(transparent)]
    Surgery(#[from] SurgeryError),
}

/// Relative SW invariant of the configuration for one Spin^c structure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormalSW {
    value: LaurentPoly,
    nonvanishing: bool,
    spinc_label: String,
}

impl FormalSW {
    pub fn new(value: LaurentPoly, nonvanishing: bool, spinc_label: impl Into<String>) -> Result<Self, SwError> {
        if nonvanishing && value.is_zero() {
            return Err(SwError::ZeroNonvanishing);
        }
        Ok(FormalSW { value, nonvanishing, spinc_label: spinc_label.into() })
    }

    /// The unit invariant assumed for symplectic-positive configurations.
    pub fn taubes_canonical() -> Self {
        FormalSW { value: LaurentPoly::one(), nonvanishing: true, spinc_label: TAUBES_CANONICAL.into() }
    }

    pub fn value(&self) -> &LaurentPoly {
        &self.value
    }

    pub fn nonvanishing(&self) -> bool {
        self.nonvanishing
    }

    pub fn spinc_label(&self) -> &str {
        &self.spinc_label
    }
}

impl fmt::Display for FormalSW {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SW[{}] = {}", self.spinc_label, self.value.display_with("r"))
    }
}

/// One checked condition; `assumed` marks facts taken from the input rather than computed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub assumed: bool,
}

impl AuditCheck {
    fn computed(name: &str, passed: bool, detail: String) -> Self {
        AuditCheck { name: name.into(), passed, detail, assumed: false }
    }
}

impl fmt::Display for AuditCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.passed { "ok" } else { "FAILED" };
        let kind = if self.assumed { " (assumed)" } else { "" };
        write!(f, "[{mark}] {}{kind}: {}", self.name, self.detail)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Applicability {
    pub audit: Vec<AuditCheck>,
    /// The invariant the distinguisher works with, when one is available.
    pub sw: Option<FormalSW>,
}

impl Applicability {
    pub fn passed(&self) -> bool {
        self.audit.iter().all(|c| c.passed)
    }
}

/// Whether the rim surgery formula applies to the smoothed configuration.
///
/// Needs two components with `Σ₁·Σ₂ ≠ 0`, at least two double points and a
/// nonvanishing invariant: the canonical one when `c` is symplectic-positive,
/// otherwise `explicit`.
pub fn applicability_check(c: &Configuration, explicit: Option<&FormalSW>) -> Applicability {
    let mut audit = Vec::new();
    let n = c.components().len();
    audit.push(AuditCheck::computed("two components", n == 2, format!("{n} components")));
    let dot = if n == 2 { algebraic_intersection(c, 0, 1).ok() } else { None };
    audit.push(AuditCheck::computed(
        "nonzero intersection",
        dot.is_some_and(|d| d != 0),
        match dot {
            Some(d) => format!("Sigma1.Sigma2 = {d}"),
            None => "undefined".into(),
        },
    ));
    let points = c.double_points().len();
    audit.push(AuditCheck::computed("two double points", points >= 2, format!("{points} double points")));
    let sw = match explicit {
        Some(sw) => {
            audit.push(AuditCheck {
                name: "nonvanishing SW".into(),
                passed: sw.nonvanishing,
                detail: format!("supplied {sw}, nonvanishing = {}", sw.nonvanishing),
                assumed: true,
            });
            Some(sw.clone())
        }
        None if c.symplectic_positive => {
            let sw = FormalSW::taubes_canonical();
            audit.push(AuditCheck {
                name: "nonvanishing SW".into(),
                passed: true,
                detail: format!("symplectic-positive configuration, Taubes: {sw}"),
                assumed: true,
            });
            Some(sw)
        }
        None => {
            audit.push(AuditCheck {
                name: "nonvanishing SW".into(),
                passed: false,
                detail: "not symplectic-positive and no invariant supplied".into(),
                assumed: false,
            });
            None
        }
    };
    Applicability { audit, sw }
}

/// Invariant after surgery with a knot of Alexander polynomial `d`: `sw · d(r²)`.
pub fn knot_surgery_transform(sw: &FormalSW, d: &LaurentPoly) -> FormalSW {
    let value = &sw.value * &d.substitute_square();
    FormalSW { nonvanishing: sw.nonvanishing && !value.is_zero(), value, spinc_label: sw.spinc_label.clone() }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DistinguishVerdict {
    SmoothlyInequivalent,
    NotDistinguished,
}

impl fmt::Display for DistinguishVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DistinguishVerdict::SmoothlyInequivalent => "smoothly-inequivalent",
            DistinguishVerdict::NotDistinguished => "not-distinguished",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistinguishReport {
    pub pair: (BraidWord, BraidWord),
    pub multisets: (Vec<i64>, Vec<i64>),
    pub verdict: DistinguishVerdict,
    pub audit: Vec<AuditCheck>,
    /// Transformed invariants, present when applicability supplied one.
    pub values: Option<(FormalSW, FormalSW)>,
}

pub fn format_multiset(ms: &[i64]) -> String {
    let items: Vec<String> = ms.iter().map(|c| c.to_string()).collect();
    format!("{{{}}}", items.join(", "))
}

impl DistinguishReport {
    pub fn name(&self) -> String {
        format!("distinguish({} | {})", self.pair.0, self.pair.1)
    }

    pub fn evidence(&self) -> Vec<String> {
        let mut out = vec![format!(
            "coefficients {} vs {}",
            format_multiset(&self.multisets.0),
            format_multiset(&self.multisets.1)
        )];
        if let Some((a, b)) = &self.values {
            out.push(format!("{a} vs {b}"));
        }
        out.extend(self.audit.iter().filter(|c| !c.passed).map(|c| c.to_string()));
        out
    }

    pub fn render(&self) -> String {
        let mut s = format!("{}: {}\n", self.name(), self.verdict);
        for line in self.evidence() {
            s.push_str(&format!("  {line}\n"));
        }
        s
    }

    /// `name TAB verdict TAB evidence`.
    pub fn machine_line(&self) -> String {
        format!("{}\t{}\t{}", self.name(), self.verdict, self.evidence().join("; "))
    }
}

/// Compares the rim surgeries by `k1` and `k2`: inequivalent exactly when the
/// formula applies and the coefficient multisets of the Alexander polynomials differ.
pub fn distinguish(
    k1: &BraidWord,
    k2: &BraidWord,
    c: &Configuration,
    explicit: Option<&FormalSW>,
) -> Result<DistinguishReport, SwError> {
    let (d1, d2) = (braid_alexander(k1)?, braid_alexander(k2)?);
    let app = applicability_check(c, explicit);
    let multisets = (d1.coefficient_multiset(), d2.coefficient_multiset());
    let verdict = if app.passed() && multisets.0 != multisets.1 {
        DistinguishVerdict::SmoothlyInequivalent
    } else {
        DistinguishVerdict::NotDistinguished
    };
    let values = app.sw.as_ref().map(|sw| (knot_surgery_transform(sw, &d1), knot_surgery_transform(sw, &d2)));
    Ok(DistinguishReport { pair: (k1.clone(), k2.clone()), multisets, verdict, audit: app.audit, values })
}

/// One surgered configuration of a family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyMember {
    pub knot: BraidWord,
    pub alexander: LaurentPoly,
    /// The group verdict, or why none was produced.
    pub group: Result<Verdict, String>,
    pub configuration: Result<Configuration, String>,
}

impl FamilyMember {
    pub fn tags(&self) -> Option<Vec<&EmbeddingTag>> {
        self.configuration.as_ref().ok().map(|c| c.components().iter().map(|s| &s.embedding).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyReport {
    pub case: CaseParams,
    pub applicability: Applicability,
    pub members: Vec<FamilyMember>,
    pub pairs: Vec<DistinguishReport>,
}

/// Surgery at the first double point with each torus knot `K_1..K_count`
/// glued by the case's twist, the group check for each, and every pair distinguished.
pub fn family_report(
    c: &Configuration,
    count: usize,
    case: &CaseParams,
    bounds: &Bounds,
    explicit: Option<&FormalSW>,
) -> Result<FamilyReport, SwError> {
    let applicability = applicability_check(c, explicit);
    let family = knot_family(count)?;
    let hypothesis = check_case_hypothesis(case);
    let mut members = Vec::with_capacity(count);
    for (knot, alexander) in &family {
        let group = if hypothesis {
            verify_group_preserved(case, &braid_presentation(knot)?, bounds).map_err(|e| e.to_string())
        } else {
            Err(SurgeryError::HypothesisFails(*case).to_string())
        };
        let spec =
            SurgerySpec { configuration: c.clone(), point: 0, knot: knot.clone(), gluing: Gluing::Twist(case.twist()) };
        let configuration = apply_surgery(&spec).map_err(|e| e.to_string());
        members.push(FamilyMember { knot: knot.clone(), alexander: alexander.clone(), group, configuration });
    }
    let mut pairs = Vec::new();
    for i in 0..family.len() {
        for j in i + 1..family.len() {
            pairs.push(distinguish(&family[i].0, &family[j].0, c, explicit)?);
        }
    }
    Ok(FamilyReport { case: *case, applicability, members, pairs })
}
