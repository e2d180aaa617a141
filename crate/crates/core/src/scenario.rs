//! Scenario files and the builtin example pipelines.
//!
//! A scenario names a configuration, optional surgeries, knots, a case and
//! action parameters, and the checks to run. Builtins are scenarios built
//! from `key=value` parameters, so a builtin and the equivalent file produce
//! the same report.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::actions::{build_cover_plan, exotic_action_certificate, CheckOutcome};
use crate::configuration::{
    complement_h1, nodal, rational, spheres, tori, tori_ambient, AmbientManifold, ConfigError, Configuration,
    DoublePoint, EmbeddingTag, SurfaceComponent,
};
use crate::gcd;
use crate::knot::{BraidWord, KnotError};
use crate::presentation::{abelianization, verify_abelian_isomorphism, AbelianGroup, Bounds, IntMatrix, Presentation};
use crate::report::{Line, Report, Section, Status};
use crate::surgery::{apply_surgery, verify_group_preserved, CaseParams, Gluing, GluingMatrix, SurgeryError, SurgerySpec};
use crate::sw::{distinguish, family_report, DistinguishVerdict};

pub const BUILTINS: [&str; 6] = ["nodal", "rational", "spheres", "tori", "theorem-1-1", "theorem-7-2"];

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("scenario parse error: {0}")]
    Parse(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("unknown builtin `{0}`; expected one of nodal, rational, spheres, tori, theorem-1-1, theorem-7-2")]
    UnknownBuiltin(String),
    #[error("parameter error: {0}")]
    Parameter(String),
    #[error("unresolved reference: {0}")]
    Reference(String),
    #[error(transparent)]
    Config(#[from] ConfigError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Example {
    Nodal,
    Rational,
    Spheres,
    Tori,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AmbientSpec {
    /// `CP2`, `S2xS2`, `P1xP1` or `X_tori`.
    Named(String),
    Explicit {
        name: String,
        form: Vec<Vec<i64>>,
        basis: Vec<String>,
        #[serde(default = "yes")]
        simply_connected: bool,
    },
}

fn yes() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentSpec {
    pub label: String,
    pub genus: u32,
    pub class: Vec<i64>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub example: Option<Example>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d1: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d2: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ambient: Option<AmbientSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub components: Vec<ComponentSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub double_points: Vec<DoublePoint>,
    /// Complement presentation in the text grammar of `Presentation::parse`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pi1: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symplectic_positive: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurgeryEntry {
    pub point: usize,
    pub knot: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<[[i64; 3]; 3]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum CaseSpec {
    F1 { d: i64, k: i64 },
    F2 { p: i64, q: i64, k: i64 },
    F3 { m: i64, n: i64, k: i64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionSpec {
    pub m: i64,
    pub n: i64,
    pub k: i64,
    pub count: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundsSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cosets: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rules: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    Homology,
    Group,
    Surgery,
    Case,
    Distinguish,
    Family,
    Certificate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub configuration: ConfigSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect_h1: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect_group: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub surgeries: Vec<SurgeryEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub case: Option<CaseSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub knots: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<ActionSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BoundsSpec>,
    #[serde(default)]
    pub checks: Vec<CheckKind>,
}

impl Scenario {
    pub fn from_yaml(text: &str) -> Result<Self, ScenarioError> {
        serde_yaml::from_str(text).map_err(|e| ScenarioError::Parse(e.to_string()))
    }

    pub fn to_yaml(&self) -> String {
        serde_yaml::to_string(self).expect("scenario serializes")
    }
}

/// Everything a run needs, with every reference resolved.
struct Prepared {
    title: String,
    configuration: Configuration,
    surgeries: Vec<(usize, BraidWord, Gluing)>,
    case: Option<CaseParams>,
    knots: Vec<BraidWord>,
    expect_h1: Option<AbelianGroup>,
    expect_group: Option<AbelianGroup>,
    bounds: Bounds,
}

fn need(field: &str, v: Option<u32>, example: &str) -> Result<u32, ScenarioError> {
    v.ok_or_else(|| ScenarioError::Parameter(format!("configuration: example {example} needs `{field}`")))
}

/// The configuration described by `spec` and a one-line description of it.
pub fn build_configuration(spec: &ConfigSpec) -> Result<(String, Configuration), ScenarioError> {
    if let Some(example) = spec.example {
        let explicit = spec.ambient.is_some()
            || !spec.components.is_empty()
            || !spec.double_points.is_empty()
            || spec.pi1.is_some()
            || spec.symplectic_positive.is_some();
        if explicit {
            return Err(ScenarioError::Parameter(
                "configuration: `example` cannot be combined with explicit ambient, components or pi1".into(),
            ));
        }
        let given = [("d1", spec.d1), ("d2", spec.d2), ("p", spec.p), ("q", spec.q), ("m", spec.m), ("n", spec.n)];
        let (name, allowed): (&str, [&str; 2]) = match example {
            Example::Nodal => ("nodal", ["d1", "d2"]),
            Example::Rational => ("rational", ["p", "q"]),
            Example::Spheres => ("spheres", ["m", "n"]),
            Example::Tori => ("tori", ["m", "n"]),
        };
        if let Some((field, _)) = given.iter().find(|(f, v)| v.is_some() && !allowed.contains(f)) {
            return Err(ScenarioError::Parameter(format!("configuration: example {name} takes no `{field}`")));
        }
        let (x, y) = match example {
            Example::Nodal => (need("d1", spec.d1, name)?, need("d2", spec.d2, name)?),
            Example::Rational => (need("p", spec.p, name)?, need("q", spec.q, name)?),
            Example::Spheres | Example::Tori => (need("m", spec.m, name)?, need("n", spec.n, name)?),
        };
        let c = match example {
            Example::Nodal => nodal(x, y)?,
            Example::Rational => rational(x, y)?,
            Example::Spheres => spheres(x, y)?,
            Example::Tori => tori(x, y)?,
        };
        return Ok((format!("{name}({}={x}, {}={y})", allowed[0], allowed[1]), c));
    }
    let ambient = match &spec.ambient {
        None => return Err(ScenarioError::Parameter("configuration: give `example` or `ambient`".into())),
        Some(AmbientSpec::Named(name)) => match name.as_str() {
            "CP2" => AmbientManifold::cp2(),
            "S2xS2" => AmbientManifold::s2_x_s2(),
            "P1xP1" => AmbientManifold::p1_x_p1(),
            "X_tori" => tori_ambient(),
            other => {
                return Err(ScenarioError::Reference(format!(
                    "configuration.ambient: unknown ambient `{other}` (CP2, S2xS2, P1xP1, X_tori)"
                )))
            }
        },
        Some(AmbientSpec::Explicit { name, form, basis, simply_connected }) => {
            if form.iter().any(|r| r.len() != form.len()) {
                return Err(ScenarioError::Parameter("configuration.ambient.form: must be square".into()));
            }
            AmbientManifold::new(name.clone(), *simply_connected, IntMatrix::from_rows(form.clone()), basis.clone())?
        }
    };
    let components: Vec<SurfaceComponent> =
        spec.components.iter().map(|c| SurfaceComponent::new(c.label.clone(), c.genus, c.class.clone())).collect();
    let pi1 = match &spec.pi1 {
        Some(text) => Some(
            Presentation::parse(text).map_err(|e| ScenarioError::Parameter(format!("configuration.pi1: {e}")))?,
        ),
        None => None,
    };
    let labels: Vec<&str> = components.iter().map(|c| c.label.as_str()).collect();
    let title = format!("{} with {}", ambient.name, labels.join(", "));
    let c = Configuration::new(
        ambient,
        components,
        spec.double_points.clone(),
        pi1,
        spec.symplectic_positive.unwrap_or(false),
    )?;
    Ok((title, c))
}

fn parse_knot(field: &str, s: &str) -> Result<BraidWord, ScenarioError> {
    let b: BraidWord = s.parse().map_err(|e: KnotError| ScenarioError::Parameter(format!("{field}: {e}")))?;
    if !b.closure_is_knot() {
        return Err(ScenarioError::Parameter(format!(
            "{field}: closure of {b} has {} components, need a knot",
            b.component_count()
        )));
    }
    Ok(b)
}

fn parse_group(field: &str, s: &str) -> Result<AbelianGroup, ScenarioError> {
    s.parse().map_err(|e: String| ScenarioError::Parameter(format!("{field}: {e}")))
}

fn bad_case(e: SurgeryError) -> ScenarioError {
    ScenarioError::Parameter(format!("case: {e}"))
}

fn prepare(s: &Scenario, overrides: Option<Bounds>) -> Result<Prepared, ScenarioError> {
    let (description, configuration) = build_configuration(&s.configuration)?;
    let mut bounds = Bounds::default();
    if let Some(b) = s.bounds {
        bounds.max_cosets = b.cosets.unwrap_or(bounds.max_cosets);
        bounds.max_rules = b.rules.unwrap_or(bounds.max_rules);
    }
    let bounds = overrides.unwrap_or(bounds);
    let knots = s
        .knots
        .iter()
        .enumerate()
        .map(|(i, k)| parse_knot(&format!("knots[{i}]"), k))
        .collect::<Result<Vec<_>, _>>()?;
    let points = configuration.double_points().len();
    let mut surgeries = Vec::new();
    for (i, e) in s.surgeries.iter().enumerate() {
        if e.point >= points {
            return Err(ScenarioError::Reference(format!(
                "surgeries[{i}].point: no double point {} (configuration has {points})",
                e.point
            )));
        }
        let gluing = match (e.twist, e.matrix) {
            (Some(t), None) => Gluing::Twist(t),
            (None, Some(m)) => Gluing::Matrix(GluingMatrix::new(m)),
            _ => {
                return Err(ScenarioError::Parameter(format!(
                    "surgeries[{i}]: give exactly one of `twist` and `matrix`"
                )))
            }
        };
        surgeries.push((e.point, parse_knot(&format!("surgeries[{i}].knot"), &e.knot)?, gluing));
    }
    let case = match s.case {
        None => None,
        Some(CaseSpec::F1 { d, k }) => Some(CaseParams::f1(d, k)),
        Some(CaseSpec::F2 { p, q, k }) => Some(CaseParams::f2(p, q, k).map_err(bad_case)?),
        Some(CaseSpec::F3 { m, n, k }) => Some(CaseParams::f3(m, n, k).map_err(bad_case)?),
    };
    for check in &s.checks {
        let missing = match check {
            CheckKind::Case if case.is_none() => Some("`case`"),
            CheckKind::Case if knots.is_empty() => Some("at least one entry in `knots`"),
            CheckKind::Distinguish if knots.len() < 2 => Some("two entries in `knots`"),
            CheckKind::Family if case.is_none() => Some("`case`"),
            CheckKind::Family if s.family.is_none() => Some("`family` (the knot count)"),
            CheckKind::Certificate if s.action.is_none() => Some("`action`"),
            _ => None,
        };
        if let Some(what) = missing {
            return Err(ScenarioError::Reference(format!("check {check:?} needs {what}")));
        }
    }
    if s.family == Some(0) {
        return Err(ScenarioError::Parameter("family: count must be at least 1".into()));
    }
    let expect_h1 = s.expect_h1.as_deref().map(|t| parse_group("expect_h1", t)).transpose()?;
    let expect_group = s.expect_group.as_deref().map(|t| parse_group("expect_group", t)).transpose()?;
    let title = format!("{description}; bounds cosets={} rules={}", bounds.max_cosets, bounds.max_rules);
    Ok(Prepared { title, configuration, surgeries, case, knots, expect_h1, expect_group, bounds })
}

fn homology_section(p: &Prepared) -> Result<Section, ScenarioError> {
    let mut sec = Section::new("homology");
    let h1 = complement_h1(&p.configuration)?;
    let mut status = Status::Positive;
    let mut evidence = vec!["from the intersection pairing with the component classes".to_string()];
    if let Some(want) = &p.expect_h1 {
        evidence.push(format!("expected {want}"));
        if *want != h1 {
            status = Status::Negative;
        }
    }
    if let Some(pi1) = p.configuration.pi1() {
        let ab = abelianization(pi1);
        evidence.push(format!("abelianization of the complement presentation: {ab}"));
        if ab != h1 {
            status = Status::Negative;
        }
    }
    sec.lines.push(Line::new("H1 of the complement", h1.to_string(), status, evidence));
    Ok(sec)
}

fn target_group(p: &Prepared) -> Result<AbelianGroup, ScenarioError> {
    match &p.expect_group {
        Some(g) => Ok(g.clone()),
        None => Ok(complement_h1(&p.configuration)?),
    }
}

fn group_section(p: &Prepared) -> Result<Section, ScenarioError> {
    let mut sec = Section::new("complement group");
    let target = target_group(p)?;
    let name = format!("pi1 of the complement = {target}");
    sec.lines.push(match p.configuration.pi1() {
        Some(pi1) => Line::from_verdict(name, &verify_abelian_isomorphism(pi1, &target, &p.bounds)),
        None => Line::new(name, "inconclusive", Status::Inconclusive, vec!["no complement presentation".into()]),
    });
    Ok(sec)
}

fn gluing_text(g: &Gluing) -> String {
    match g {
        Gluing::Twist(t) => format!("twist {t}"),
        Gluing::Matrix(m) => format!("matrix {m}"),
    }
}

fn surgery_section(p: &Prepared) -> Result<Section, ScenarioError> {
    let mut sec = Section::new("surgery");
    let target = target_group(p)?;
    let mut current = p.configuration.clone();
    for (i, (point, knot, gluing)) in p.surgeries.iter().enumerate() {
        let name = format!("surgery {i}: point {point}, {knot}, {}", gluing_text(gluing));
        let spec = SurgerySpec { configuration: current.clone(), point: *point, knot: knot.clone(), gluing: gluing.clone() };
        match apply_surgery(&spec) {
            Err(e) => {
                sec.lines.push(Line::new(name, "rejected", Status::Negative, vec![e.to_string()]));
                break;
            }
            Ok(next) => {
                let tags = next.components().iter().map(|c| format!("{}: {}", c.label, c.embedding)).collect();
                sec.lines.push(Line::new(name, "applied", Status::Positive, tags));
                let gname = format!("pi1 after surgery {i} = {target}");
                sec.lines.push(match next.pi1() {
                    Some(pi1) => Line::from_verdict(gname, &verify_abelian_isomorphism(pi1, &target, &p.bounds)),
                    None => Line::new(
                        gname,
                        "no-claim",
                        Status::Inconclusive,
                        vec!["no group is predicted for this gluing".into()],
                    ),
                });
                current = next;
            }
        }
    }
    Ok(sec)
}

fn case_section(p: &Prepared) -> Section {
    let case = p.case.expect("checked in prepare");
    let mut sec = Section::new(format!("case {case}"));
    for knot in &p.knots {
        let name = format!("{case} with {knot}: group preserved");
        let data = crate::knot::braid_presentation(knot).expect("knots are validated");
        sec.lines.push(match verify_group_preserved(&case, &data, &p.bounds) {
            Ok(v) => Line::from_verdict(name, &v),
            Err(e) => Line::new(name, "hypothesis-fails", Status::Negative, vec![e.to_string()]),
        });
    }
    sec
}

fn distinguish_line(r: &crate::sw::DistinguishReport) -> Line {
    let status = match r.verdict {
        DistinguishVerdict::SmoothlyInequivalent => Status::Positive,
        DistinguishVerdict::NotDistinguished => Status::Negative,
    };
    Line::new(r.name(), r.verdict.to_string(), status, r.evidence())
}

fn distinguish_section(p: &Prepared) -> Section {
    let mut sec = Section::new("distinguish");
    for i in 0..p.knots.len() {
        for j in i + 1..p.knots.len() {
            let r = distinguish(&p.knots[i], &p.knots[j], &p.configuration, None).expect("knots are validated");
            sec.lines.push(distinguish_line(&r));
        }
    }
    sec
}

fn family_section(p: &Prepared, count: usize) -> Section {
    let case = p.case.expect("checked in prepare");
    let mut sec = Section::new(format!("family of {count} torus knots, {case}"));
    let f = match family_report(&p.configuration, count, &case, &p.bounds, None) {
        Ok(f) => f,
        Err(e) => {
            sec.lines.push(Line::new("family", "error", Status::Negative, vec![e.to_string()]));
            return sec;
        }
    };
    let app = &f.applicability;
    sec.lines.push(Line::new(
        "SW formula applies",
        if app.passed() { "applies" } else { "refused" },
        if app.passed() { Status::Positive } else { Status::Negative },
        app.audit.iter().map(|c| c.to_string()).collect(),
    ));
    let original = p.configuration.components();
    for (r, m) in f.members.iter().enumerate() {
        let knot = format!("K{} = {}", r + 1, m.knot);
        sec.lines.push(match &m.group {
            Ok(v) => Line::from_verdict(format!("{knot}: group preserved"), v),
            Err(e) => Line::new(format!("{knot}: group preserved"), "hypothesis-fails", Status::Negative, vec![e.clone()]),
        });
        match &m.configuration {
            Err(e) => sec.lines.push(Line::new(format!("{knot}: surgery"), "rejected", Status::Negative, vec![e.clone()])),
            Ok(c) => {
                let knotted = &c.components()[0];
                let (status, evidence) = match knotted.embedding {
                    EmbeddingTag::Standard => (Status::Positive, vec![]),
                    _ => (Status::Inconclusive, vec!["smooth type of the knotted component is not determined".into()]),
                };
                sec.lines.push(Line::new(
                    format!("{knot}: {} embedding", knotted.label),
                    knotted.embedding.to_string(),
                    status,
                    evidence,
                ));
                for (i, comp) in c.components().iter().enumerate().skip(1) {
                    let same = original.get(i) == Some(comp);
                    sec.lines.push(Line::new(
                        format!("{knot}: {} untouched", comp.label),
                        if same { "untouched" } else { "changed" },
                        if same { Status::Positive } else { Status::Negative },
                        vec![],
                    ));
                }
            }
        }
    }
    sec.lines.extend(f.pairs.iter().map(distinguish_line));
    sec.notes.push(
        "topological equivalence of each surgered configuration with the original is cited, not computed".into(),
    );
    sec
}

fn outcome_status(o: CheckOutcome) -> Status {
    match o {
        CheckOutcome::Pass | CheckOutcome::Cited => Status::Positive,
        CheckOutcome::Fail => Status::Negative,
        CheckOutcome::Inconclusive => Status::Inconclusive,
    }
}

fn certificate_section(p: &Prepared, a: &ActionSpec) -> Section {
    let mut sec = Section::new(format!("Z_{} + Z_{} actions, k={}, N={}", a.m, a.n, a.k, a.count));
    let plan = match build_cover_plan(&p.configuration, a.m, a.n, &p.bounds) {
        Ok(plan) => plan,
        Err(e) => {
            sec.lines.push(Line::new("cover plan", "rejected", Status::Negative, vec![e.to_string()]));
            return sec;
        }
    };
    sec.lines.push(Line::new(
        "cover plan",
        "built",
        Status::Positive,
        vec![plan.stage_one.description.clone(), plan.stage_two.description.clone(), plan.group.summary()],
    ));
    let cert = match exotic_action_certificate(&plan, a.k, a.count, &p.bounds) {
        Ok(c) => c,
        Err(e) => {
            sec.lines.push(Line::new("certificate", "error", Status::Negative, vec![e.to_string()]));
            return sec;
        }
    };
    for c in &cert.checks {
        let mut evidence = vec![c.condition.clone()];
        evidence.extend(c.evidence.iter().cloned());
        sec.lines.push(Line::new(format!("({}) {}", c.id, c.name), c.outcome.to_string(), outcome_status(c.outcome), evidence));
    }
    sec.lines.push(Line::new(cert.name(), cert.outcome().to_string(), outcome_status(cert.outcome()), vec![cert.conclusion.clone()]));
    sec
}

/// Runs the checks in the order listed. `bounds` overrides the scenario's own.
pub fn run(s: &Scenario, bounds: Option<Bounds>) -> Result<Report, ScenarioError> {
    let p = prepare(s, bounds)?;
    let mut sections = Vec::new();
    for check in &s.checks {
        sections.push(match check {
            CheckKind::Homology => homology_section(&p)?,
            CheckKind::Group => group_section(&p)?,
            CheckKind::Surgery => surgery_section(&p)?,
            CheckKind::Case => case_section(&p),
            CheckKind::Distinguish => distinguish_section(&p),
            CheckKind::Family => family_section(&p, s.family.expect("checked in prepare")),
            CheckKind::Certificate => certificate_section(&p, s.action.as_ref().expect("checked in prepare")),
        });
    }
    Ok(Report { title: p.title, sections })
}

pub fn run_scenario(path: &Path, bounds: Option<Bounds>) -> Result<Report, ScenarioError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ScenarioError::Io { path: path.display().to_string(), message: e.to_string() })?;
    run(&Scenario::from_yaml(&text)?, bounds)
}

/// `key=value` parameters of a builtin, checked against the allowed keys.
struct Params {
    builtin: String,
    values: BTreeMap<String, String>,
}

impl Params {
    fn parse(builtin: &str, raw: &[String], allowed: &[&str]) -> Result<Self, ScenarioError> {
        let mut values = BTreeMap::new();
        for item in raw {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| ScenarioError::Parameter(format!("{builtin}: expected key=value, got `{item}`")))?;
            if !allowed.contains(&k) {
                return Err(ScenarioError::Parameter(format!(
                    "{builtin}: unknown parameter `{k}` (allowed: {})",
                    allowed.join(", ")
                )));
            }
            if values.insert(k.to_string(), v.to_string()).is_some() {
                return Err(ScenarioError::Parameter(format!("{builtin}: `{k}` given twice")));
            }
        }
        Ok(Params { builtin: builtin.into(), values })
    }

    fn int(&self, key: &str, default: i64, range: std::ops::RangeInclusive<i64>) -> Result<i64, ScenarioError> {
        let v = match self.values.get(key) {
            None => default,
            Some(s) => s.parse().map_err(|_| {
                ScenarioError::Parameter(format!("{}: `{key}` must be an integer, got `{s}`", self.builtin))
            })?,
        };
        if !range.contains(&v) {
            return Err(ScenarioError::Parameter(format!(
                "{}: `{key}` = {v} outside {}..={}",
                self.builtin,
                range.start(),
                range.end()
            )));
        }
        Ok(v)
    }

    fn opt_int(&self, key: &str, range: std::ops::RangeInclusive<i64>) -> Result<Option<i64>, ScenarioError> {
        if self.values.contains_key(key) {
            self.int(key, 0, range).map(Some)
        } else {
            Ok(None)
        }
    }
}

const DEGREE: std::ops::RangeInclusive<i64> = 1..=12;
const ORDER: std::ops::RangeInclusive<i64> = 1..=8;
const TWIST: std::ops::RangeInclusive<i64> = -12..=12;
const COUNT: std::ops::RangeInclusive<i64> = 1..=20;

fn example_spec(example: Example, x: i64, y: i64) -> ConfigSpec {
    let (x, y) = (Some(x as u32), Some(y as u32));
    let mut spec = ConfigSpec { example: Some(example), ..ConfigSpec::default() };
    match example {
        Example::Nodal => (spec.d1, spec.d2) = (x, y),
        Example::Rational => (spec.p, spec.q) = (x, y),
        Example::Spheres | Example::Tori => (spec.m, spec.n) = (x, y),
    }
    spec
}

fn cyclic_sum(free: usize, orders: &[i64]) -> String {
    let orders: Vec<u64> = orders.iter().map(|&o| o as u64).collect();
    AbelianGroup::from_cyclic_orders(free, &orders).to_string()
}

fn base(configuration: ConfigSpec, checks: Vec<CheckKind>) -> Scenario {
    Scenario {
        configuration,
        expect_h1: None,
        expect_group: None,
        surgeries: vec![],
        case: None,
        knots: vec![],
        family: None,
        action: None,
        bounds: None,
        checks,
    }
}

/// The scenario a builtin runs. Parameters, with defaults:
///
/// - `nodal d1=2 d2=3`, degrees in 1..=12
/// - `rational p=1 q=3 [k]`, p in 1..=12, q in 1..=8; with `k` also the F2 case and a surgery with the trefoil
/// - `spheres m=3 n=2`, `tori m=3 n=2`, m, n in 1..=8
/// - `theorem-1-1 case=i|ii|iii count=10`, with `d2=2 k=0` (i), `p=1 q=3 k=1` (ii), `m=3 n=2 k=1` (iii)
/// - `theorem-7-2 m=3 n=2 k=1 count=5`
pub fn builtin_scenario(name: &str, raw: &[String]) -> Result<Scenario, ScenarioError> {
    use CheckKind::*;
    match name {
        "nodal" => {
            let p = Params::parse(name, raw, &["d1", "d2"])?;
            let (d1, d2) = (p.int("d1", 2, DEGREE)?, p.int("d2", 3, DEGREE)?);
            let mut s = base(example_spec(Example::Nodal, d1, d2), vec![Homology, Group]);
            s.expect_h1 = Some(cyclic_sum(1, &[gcd(d1, d2)]));
            Ok(s)
        }
        "rational" => {
            let p = Params::parse(name, raw, &["p", "q", "k"])?;
            let (pp, q) = (p.int("p", 1, DEGREE)?, p.int("q", 3, ORDER)?);
            let mut s = base(example_spec(Example::Rational, pp, q), vec![Homology, Group]);
            s.expect_h1 = Some(cyclic_sum(0, &[q]));
            if let Some(k) = p.opt_int("k", TWIST)? {
                let trefoil = BraidWord::trefoil().to_string();
                s.case = Some(CaseSpec::F2 { p: pp, q, k });
                s.knots = vec![trefoil.clone(), BraidWord::figure_eight().to_string()];
                s.surgeries = vec![SurgeryEntry { point: 0, knot: trefoil, twist: Some(k), matrix: None }];
                s.checks.extend([Case, Surgery]);
            }
            Ok(s)
        }
        "spheres" | "tori" => {
            let p = Params::parse(name, raw, &["m", "n"])?;
            let (m, n) = (p.int("m", 3, ORDER)?, p.int("n", 2, ORDER)?);
            let example = if name == "spheres" { Example::Spheres } else { Example::Tori };
            let mut s = base(example_spec(example, m, n), vec![Homology, Group]);
            s.expect_h1 = Some(cyclic_sum(0, &[m, n]));
            Ok(s)
        }
        "theorem-1-1" => {
            let p = Params::parse(name, raw, &["case", "count", "d2", "p", "q", "m", "n", "k"])?;
            let case = p
                .values
                .get("case")
                .ok_or_else(|| ScenarioError::Parameter("theorem-1-1: `case` is required (i, ii or iii)".into()))?;
            let count = p.int("count", 10, COUNT)? as usize;
            let (allowed, spec, case): (&[&str], ConfigSpec, CaseSpec) = match case.as_str() {
                "i" => {
                    let (d2, k) = (p.int("d2", 2, DEGREE)?, p.int("k", 0, TWIST)?);
                    (&["d2", "k"], example_spec(Example::Nodal, 1, d2), CaseSpec::F1 { d: d2, k })
                }
                "ii" => {
                    let (pp, q, k) = (p.int("p", 1, DEGREE)?, p.int("q", 3, ORDER)?, p.int("k", 1, TWIST)?);
                    (&["p", "q", "k"], example_spec(Example::Rational, pp, q), CaseSpec::F2 { p: pp, q, k })
                }
                "iii" => {
                    let (m, n, k) = (p.int("m", 3, ORDER)?, p.int("n", 2, ORDER)?, p.int("k", 1, TWIST)?);
                    (&["m", "n", "k"], example_spec(Example::Tori, m, n), CaseSpec::F3 { m, n, k })
                }
                other => {
                    return Err(ScenarioError::Parameter(format!(
                        "theorem-1-1: `case` must be i, ii or iii, got `{other}`"
                    )))
                }
            };
            if let Some(k) = p.values.keys().find(|k| !["case", "count"].contains(&k.as_str()) && !allowed.contains(&k.as_str())) {
                return Err(ScenarioError::Parameter(format!("theorem-1-1: `{k}` does not apply to case {}", p.values["case"])));
            }
            let mut s = base(spec, vec![Family]);
            s.case = Some(case);
            s.family = Some(count);
            Ok(s)
        }
        "theorem-7-2" => {
            let p = Params::parse(name, raw, &["m", "n", "k", "count"])?;
            let (m, n, k) = (p.int("m", 3, ORDER)?, p.int("n", 2, ORDER)?, p.int("k", 1, TWIST)?);
            let count = p.int("count", 5, 2..=20)? as usize;
            let mut s = base(example_spec(Example::Tori, m, n), vec![Certificate]);
            s.action = Some(ActionSpec { m, n, k, count });
            Ok(s)
        }
        other => Err(ScenarioError::UnknownBuiltin(other.into())),
    }
}

pub fn run_builtin(name: &str, params: &[String], bounds: Option<Bounds>) -> Result<Report, ScenarioError> {
    run(&builtin_scenario(name, params)?, bounds)
}
