//! Twisted double point surgery: gluing data, the amalgamated complement
//! group and the three cases in which the group is preserved.

mod gluing;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::configuration::{meridian_label, ConfigError, Configuration, EmbeddingTag};
use crate::knot::{braid_presentation, BraidWord, KnotError, KnotGroupData, MERIDIAN_LABEL, LONGITUDE_LABEL};
use crate::presentation::{verify_abelian_isomorphism, AbelianGroup, Bounds, Presentation, Verdict, Word};
use crate::gcd;

pub use gluing::{twist_gluing_matrix, validate_gluing_matrix, GluingMatrix, GluingParams, GluingValidation};

/// Role label of the `S¹` factor of `E(K) × S¹`.
pub const CIRCLE_LABEL: &str = "s1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurgeryError {
    #[error("presentation lacks label `{0}`")]
    MissingLabel(String),
    #[error("hypothesis of {0} fails: no claim is made about the surgered group")]
    HypothesisFails(CaseParams),
    #[error("invalid case parameters: {0}")]
    InvalidCase(String),
    #[error("double point {index} out of range ({count} double points)")]
    NoSuchDoublePoint { index: usize, count: usize },
    #[error("invalid gluing matrix: {}", .0.join("; "))]
    InvalidGluing(Vec<String>),
    #[error(transparent)]
    Knot(#[from] KnotError),
    #[error(transparent)]
    Config(#[from] ConfigError),
}

/// The three situations in which twisted surgery preserves the group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseParams {
    /// Group `Z` generated by `μ₂`, with `μ₁μ₂^d = 1`.
    F1 { d: i64, k: i64 },
    /// Group `Z_q` generated by `μ₁`, with `μ₁^p μ₂ = 1`.
    F2 { p: i64, q: i64, k: i64 },
    /// Group `Z_m ⊕ Z_n`, `μ₁` generating `Z_m` and `μ₂` generating `Z_n`.
    F3 { m: i64, n: i64, k: i64 },
}

impl CaseParams {
    pub fn f1(d: i64, k: i64) -> Self {
        CaseParams::F1 { d, k }
    }

    pub fn f2(p: i64, q: i64, k: i64) -> Result<Self, SurgeryError> {
        if q < 1 {
            return Err(SurgeryError::InvalidCase(format!("q = {q} must be at least 1")));
        }
        Ok(CaseParams::F2 { p, q, k })
    }

    pub fn f3(m: i64, n: i64, k: i64) -> Result<Self, SurgeryError> {
        if m < 1 || n < 1 {
            return Err(SurgeryError::InvalidCase(format!("m = {m}, n = {n} must be at least 1")));
        }
        Ok(CaseParams::F3 { m, n, k })
    }

    pub fn tag(&self) -> &'static str {
        match self {
            CaseParams::F1 { .. } => "F1",
            CaseParams::F2 { .. } => "F2",
            CaseParams::F3 { .. } => "F3",
        }
    }

    pub fn twist(&self) -> i64 {
        match *self {
            CaseParams::F1 { k, .. } | CaseParams::F2 { k, .. } | CaseParams::F3 { k, .. } => k,
        }
    }

    /// The group the case predicts after surgery (and has before it).
    pub fn target(&self) -> AbelianGroup {
        match *self {
            CaseParams::F1 { .. } => AbelianGroup::free(1),
            CaseParams::F2 { q, .. } => AbelianGroup::cyclic(q as u64),
            CaseParams::F3 { m, n, .. } => AbelianGroup::from_cyclic_orders(0, &[m as u64, n as u64]),
        }
    }

    /// Two-generator abelian presentation `⟨μ₁, μ₂⟩` of the group before surgery.
    pub fn base_presentation(&self) -> Presentation {
        let (m1, m2) = (Word::generator(0), Word::generator(1));
        let mut rels = vec![Word::commutator(&m1, &m2)];
        match *self {
            CaseParams::F1 { d, .. } => rels.push(m1.mul(&m2.pow(d))),
            CaseParams::F2 { p, q, .. } => {
                rels.push(m1.pow(q));
                rels.push(m1.pow(p).mul(&m2));
            }
            CaseParams::F3 { m, n, .. } => {
                rels.push(m1.pow(m));
                rels.push(m2.pow(n));
            }
        }
        let mut p = Presentation::new(vec!["m1".into(), "m2".into()], rels).expect("two generators");
        p.set_label(meridian_label(0), m1).expect("valid");
        p.set_label(meridian_label(1), m2).expect("valid");
        p
    }
}

impl fmt::Display for CaseParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseParams::F1 { d, k } => write!(f, "F1(d={d}, k={k})"),
            CaseParams::F2 { p, q, k } => write!(f, "F2(p={p}, q={q}, k={k})"),
            CaseParams::F3 { m, n, k } => write!(f, "F3(m={m}, n={n}, k={k})"),
        }
    }
}

/// F1: `k = 0`; F2: `gcd(p + k, q) = 1`; F3: `gcd(m, kn) = 1`.
pub fn check_case_hypothesis(c: &CaseParams) -> bool {
    match *c {
        CaseParams::F1 { k, .. } => k == 0,
        CaseParams::F2 { p, q, k } => gcd(p + k, q) == 1,
        CaseParams::F3 { m, n, k } => gcd(m, k * n) == 1,
    }
}

/// `π₁(E(K)) * ⟨s⟩` with `s` central, the group of `E(K) × S¹`. Returns the
/// presentation and the index of `s`.
fn knot_times_circle(k: &KnotGroupData) -> (Presentation, usize) {
    let mut p = k.presentation.clone();
    let s = p.add_fresh_generator("s");
    let sw = Word::generator(s);
    for b in 0..k.rank() {
        p.add_relator(Word::commutator(&Word::generator(b), &sw)).expect("in range");
    }
    p.set_label(CIRCLE_LABEL, sw).expect("in range");
    (p, s)
}

/// The case's quotient of `π₁(E(K) × S¹)` by the image of the kernel of
/// `π₁(T²) → π₁(X - Σ)`.
pub fn case_presentation(c: &CaseParams, k: &KnotGroupData) -> Presentation {
    let (mut p, s) = knot_times_circle(k);
    let mu = k.meridian.clone();
    let s = Word::generator(s);
    let tw = c.twist();
    let extra = match *c {
        CaseParams::F1 { d, k } => vec![mu.pow(1 + k * d).mul(&s.pow(d))],
        CaseParams::F2 { p, q, .. } => vec![mu.pow(q), mu.pow(p).mul(&mu.pow(tw).mul(&s))],
        CaseParams::F3 { m, n, .. } => vec![mu.pow(m), mu.pow(tw).mul(&s).pow(n)],
    };
    for w in extra {
        p.add_relator(w).expect("in range");
    }
    p.set_label(meridian_label(0), mu.clone()).expect("in range");
    p.set_label(meridian_label(1), mu.pow(tw).mul(&s)).expect("in range");
    p
}

fn amalgamate(base: &Presentation, k: &KnotGroupData, twist: i64, roles: (&str, &str)) -> Result<Presentation, SurgeryError> {
    let missing = |r: &str| SurgeryError::MissingLabel(r.to_string());
    let mu1 = base.label(roles.0).ok_or_else(|| missing(roles.0))?.clone();
    let mu2 = base.label(roles.1).ok_or_else(|| missing(roles.1))?.clone();
    let (piece, _) = knot_times_circle(k);
    let mut p = base.clone();
    let map = p.absorb(&piece);
    let image = |role: &str| piece.label(role).expect("knot labels").map_generators(|g| map[g]);
    let mu_k = image(MERIDIAN_LABEL);
    let s = image(CIRCLE_LABEL);
    let mu2_image = mu_k.pow(twist).mul(&s);
    p.add_relator(Word::equation(&mu1, &mu_k)).expect("in range");
    p.add_relator(Word::equation(&mu2, &mu2_image)).expect("in range");
    p.set_label(roles.0, mu_k.clone()).expect("in range");
    p.set_label(roles.1, mu2_image).expect("in range");
    p.set_label(MERIDIAN_LABEL, mu_k).expect("in range");
    p.set_label(LONGITUDE_LABEL, image(LONGITUDE_LABEL)).expect("in range");
    p.set_label(CIRCLE_LABEL, s).expect("in range");
    Ok(p)
}

/// Van Kampen amalgam of the base complement with `π₁(E(K) × S¹)` over the
/// double point torus, glued by `μ₁ = μ_K`, `μ₂ = μ_K^k s`.
pub fn surgered_presentation(base: &Presentation, k: &KnotGroupData, twist: i64) -> Result<Presentation, SurgeryError> {
    amalgamate(base, k, twist, ("mu1", "mu2"))
}

/// Runs the abelian isomorphism test on the case presentation; refuses when
/// the hypothesis fails, since no group is predicted there.
pub fn verify_group_preserved(c: &CaseParams, k: &KnotGroupData, bounds: &Bounds) -> Result<Verdict, SurgeryError> {
    if !check_case_hypothesis(c) {
        return Err(SurgeryError::HypothesisFails(*c));
    }
    let p = case_presentation(c, k);
    let mut v = verify_abelian_isomorphism(&p, &c.target(), bounds);
    v.evidence.insert(0, format!("{c}: hypothesis holds, target {}", c.target()));
    Ok(v)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Gluing {
    Twist(i64),
    Matrix(GluingMatrix),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurgerySpec {
    pub configuration: Configuration,
    pub point: usize,
    pub knot: BraidWord,
    pub gluing: Gluing,
}

/// Whether `Σ ♯ A(K, k)` is known to be smoothly equivalent to `Σ` itself.
fn twist_spin_is_trivial(c: &Configuration, component: usize, twist: i64) -> bool {
    if twist.abs() == 1 {
        return true;
    }
    let comp = &c.components()[component];
    twist == 0 && comp.genus == 0 && c.ambient().name == "CP2" && comp.class.len() == 1 && comp.class[0].abs() == 1
}

/// Performs the surgery at double point `point`, knotting its first component.
///
/// Homology, genus and double points are unchanged. With a twist gluing the
/// complement presentation becomes the amalgam; a general gluing matrix is
/// validated and recorded in the tag but leaves the group unknown.
pub fn apply_surgery(spec: &SurgerySpec) -> Result<Configuration, SurgeryError> {
    let c = &spec.configuration;
    let count = c.double_points().len();
    let dp = *c.double_points().get(spec.point).ok_or(SurgeryError::NoSuchDoublePoint { index: spec.point, count })?;
    let knot = braid_presentation(&spec.knot)?;
    let mut components = c.components().to_vec();
    let old = components[dp.a].embedding.clone();
    let (added, pi1) = match &spec.gluing {
        Gluing::Twist(t) => {
            let added = (!twist_spin_is_trivial(c, dp.a, *t))
                .then(|| EmbeddingTag::ConnectSumTwistSpun { knot: spec.knot.clone(), twist: *t });
            let pi1 = match c.pi1() {
                Some(p) => Some(amalgamate(p, &knot, *t, (&meridian_label(dp.a), &meridian_label(dp.b)))?),
                None => None,
            };
            (added, pi1)
        }
        Gluing::Matrix(m) => {
            let v = validate_gluing_matrix(m);
            if !v.is_valid() {
                return Err(SurgeryError::InvalidGluing(v.violations));
            }
            if let Some(t) = m.is_twist() {
                return apply_surgery(&SurgerySpec { gluing: Gluing::Twist(t), ..spec.clone() });
            }
            (Some(EmbeddingTag::Opaque(format!("knotted twin of {} glued by {m}", spec.knot))), None)
        }
    };
    components[dp.a].embedding = match (old, added) {
        (old, None) => old,
        (EmbeddingTag::Standard, Some(new)) => new,
        (old, Some(new)) => EmbeddingTag::Opaque(format!("{old} # {new}")),
    };
    Ok(c.with_parts(components, pi1)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::configuration::{nodal, rational, spheres};
    use crate::knot::{braid_to_diagram, wirtinger_presentation, KnotDiagram};
    use crate::presentation::{abelianization, coset_enumerate, VerdictStatus};

    fn knot(b: &BraidWord) -> KnotGroupData {
        wirtinger_presentation(&braid_to_diagram(b).unwrap())
    }

    fn order(p: &Presentation) -> Option<usize> {
        coset_enumerate(p, &[], 100_000).unwrap().index()
    }

    #[test]
    fn hypotheses() {
        assert!(check_case_hypothesis(&CaseParams::f1(5, 0)));
        assert!(!check_case_hypothesis(&CaseParams::f1(5, 2)));
        assert!(!check_case_hypothesis(&CaseParams::f2(1, 4, 1).unwrap()));
        assert!(check_case_hypothesis(&CaseParams::f3(3, 2, 1).unwrap()));
        // gcd(0, n) = n
        assert!(!check_case_hypothesis(&CaseParams::f2(-1, 3, 1).unwrap()));
        assert!(check_case_hypothesis(&CaseParams::f2(-1, 1, 1).unwrap()));
        assert!(CaseParams::f3(0, 2, 1).is_err());
    }

    #[test]
    fn unknot_cases() {
        let u = wirtinger_presentation(&KnotDiagram::unknot());
        let p = case_presentation(&CaseParams::f1(1, 0), &u);
        assert_eq!(p.to_text().split(" ; labels").next().unwrap(), "gens: x0 s ; rels: x0 s X0 S , x0 s");
        assert_eq!(abelianization(&p), AbelianGroup::free(1));
        for k in [-2, 0, 1, 3] {
            let p = case_presentation(&CaseParams::f3(3, 2, k).unwrap(), &u);
            assert_eq!(abelianization(&p), AbelianGroup::cyclic(6));
        }
    }

    #[test]
    fn trefoil_verdicts() {
        let t = knot(&BraidWord::trefoil());
        let b = Bounds::default();
        let f2 = verify_group_preserved(&CaseParams::f2(1, 3, 1).unwrap(), &t, &b).unwrap();
        assert!(f2.is_isomorphic(), "{f2:?}");
        let f3 = verify_group_preserved(&CaseParams::f3(3, 2, 1).unwrap(), &t, &b).unwrap();
        assert!(f3.is_isomorphic(), "{f3:?}");
        let f1 = verify_group_preserved(&CaseParams::f1(2, 0), &t, &b).unwrap();
        assert!(f1.is_isomorphic(), "{f1:?}");
        assert_eq!(order(&case_presentation(&CaseParams::f2(1, 3, 1).unwrap(), &t)), Some(3));
    }

    #[test]
    fn negative_control() {
        let t = knot(&BraidWord::trefoil());
        let c = CaseParams::f2(1, 4, 1).unwrap();
        assert!(matches!(verify_group_preserved(&c, &t, &Bounds::default()), Err(SurgeryError::HypothesisFails(_))));
        let v = verify_abelian_isomorphism(&case_presentation(&c, &t), &c.target(), &Bounds::default());
        assert_ne!(v.status, VerdictStatus::Isomorphic);
    }

    #[test]
    fn amalgam_agrees_with_case_presentation() {
        let t = knot(&BraidWord::trefoil());
        for c in [CaseParams::f2(1, 3, 1).unwrap(), CaseParams::f3(3, 2, 1).unwrap(), CaseParams::f1(1, 0)] {
            let full = surgered_presentation(&c.base_presentation(), &t, c.twist()).unwrap();
            let short = case_presentation(&c, &t);
            assert_eq!(abelianization(&full), abelianization(&short), "{c}");
            if c.target().order().is_some() {
                assert_eq!(order(&full), order(&short), "{c}");
            }
        }
    }

    #[test]
    fn simply_connected_base_trivializes() {
        let mut base = Presentation::parse("gens: a b ; rels: a , b ; labels: mu1 = a , mu2 = b ;").unwrap();
        let p = surgered_presentation(&base, &wirtinger_presentation(&KnotDiagram::unknot()), 0).unwrap();
        assert!(abelianization(&p).is_trivial());
        assert_eq!(order(&p), Some(1));
        base.remove_label("mu2");
        assert_eq!(
            surgered_presentation(&base, &knot(&BraidWord::trefoil()), 0),
            Err(SurgeryError::MissingLabel("mu2".into()))
        );
    }

    fn surgery(c: Configuration, k: i64) -> Configuration {
        apply_surgery(&SurgerySpec { configuration: c, point: 0, knot: BraidWord::trefoil(), gluing: Gluing::Twist(k) })
            .unwrap()
    }

    #[test]
    fn embedding_tags() {
        let r = surgery(rational(1, 3).unwrap(), 1);
        assert_eq!(r.components()[0].embedding, EmbeddingTag::Standard);
        let n = surgery(nodal(1, 2).unwrap(), 0);
        assert_eq!(n.components()[0].embedding, EmbeddingTag::Standard);
        let s = surgery(spheres(3, 2).unwrap(), 0);
        assert_eq!(
            s.components()[0].embedding,
            EmbeddingTag::ConnectSumTwistSpun { knot: BraidWord::trefoil(), twist: 0 }
        );
        let before = spheres(3, 2).unwrap();
        assert_eq!(s.components()[1], before.components()[1]);
        assert_eq!(s.double_points(), before.double_points());
        assert_eq!(s.components()[0].class, before.components()[0].class);
    }

    #[test]
    fn surgered_configuration_keeps_its_group() {
        let r = surgery(rational(1, 3).unwrap(), 1);
        let v = verify_abelian_isomorphism(r.pi1().unwrap(), &AbelianGroup::cyclic(3), &Bounds::default());
        assert!(v.is_isomorphic(), "{v:?}");
    }

    #[test]
    fn general_gluing_records_no_group() {
        let m = GluingMatrix::from_params(&GluingParams { p: 2, k: 1, gamma: -1, beta: 1, alpha: 0, b: 0 });
        let spec = SurgerySpec {
            configuration: rational(1, 3).unwrap(),
            point: 0,
            knot: BraidWord::trefoil(),
            gluing: Gluing::Matrix(m),
        };
        let c = apply_surgery(&spec).unwrap();
        assert!(c.pi1().is_none());
        assert!(matches!(c.components()[0].embedding, EmbeddingTag::Opaque(_)));
        let bad = SurgerySpec { point: 7, ..spec };
        assert!(matches!(apply_surgery(&bad), Err(SurgeryError::NoSuchDoublePoint { .. })));
    }
}
