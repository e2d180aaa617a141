//! Surface configurations in 4-manifolds and their complements.

mod examples;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::knot::BraidWord;
use crate::presentation::{AbelianGroup, AbelianizationMap, IntMatrix, Presentation, Word};

pub use examples::{nodal, rational, spheres, spheres_presentation, tori, tori_ambient, tori_presentation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("intersection form must be square and symmetric")]
    BadForm,
    #[error("{labels} basis labels for an H2 of rank {rank}")]
    BasisLabelCount { labels: usize, rank: usize },
    #[error("component `{label}` has a class of length {len}, ambient rank is {rank}")]
    ClassLength { label: String, len: usize, rank: usize },
    #[error("component index {index} out of range ({count} components)")]
    NoSuchComponent { index: usize, count: usize },
    #[error("double point {index} joins a component to itself")]
    SelfDoublePoint { index: usize },
    #[error("double point {index} has sign {sign}")]
    BadSign { index: usize, sign: i8 },
    #[error("components {a} and {b}: signed double points sum to {listed}, classes pair to {pairing}")]
    DoublePointMismatch { a: usize, b: usize, listed: i64, pairing: i64 },
    #[error("complement presentation lacks meridian label `{0}`")]
    MissingMeridian(String),
    #[error("ambient `{0}` is not simply connected")]
    NotSimplyConnected(String),
    #[error("the double point graph is disconnected, smoothing gives {0} surfaces")]
    Disconnected(usize),
    #[error("total class has square {0} < 0")]
    NegativeSquare(i64),
    #[error("parameter out of range: {0}")]
    Parameter(String),
}

/// Closed 4-manifold recorded by its second homology with intersection form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmbientManifold {
    pub name: String,
    pub simply_connected: bool,
    form: IntMatrix,
    basis_labels: Vec<String>,
}

impl AmbientManifold {
    pub fn new(
        name: impl Into<String>,
        simply_connected: bool,
        form: IntMatrix,
        basis_labels: Vec<String>,
    ) -> Result<Self, ConfigError> {
        if !form.is_symmetric() {
            return Err(ConfigError::BadForm);
        }
        if basis_labels.len() != form.rows() {
            return Err(ConfigError::BasisLabelCount { labels: basis_labels.len(), rank: form.rows() });
        }
        Ok(AmbientManifold { name: name.into(), simply_connected, form, basis_labels })
    }

    fn build(name: &str, rows: Vec<Vec<i64>>, labels: &[&str]) -> Self {
        let labels = labels.iter().map(|s| s.to_string()).collect();
        Self::new(name, true, IntMatrix::from_rows(rows), labels).expect("builtin ambient is well formed")
    }

    pub fn cp2() -> Self {
        Self::build("CP2", vec![vec![1]], &["h"])
    }

    pub fn s2_x_s2() -> Self {
        Self::build("S2xS2", vec![vec![0, 1], vec![1, 0]], &["a", "b"])
    }

    pub fn p1_x_p1() -> Self {
        Self::build("P1xP1", vec![vec![0, 1], vec![1, 0]], &["f1", "f2"])
    }

    pub fn h2_rank(&self) -> usize {
        self.form.rows()
    }

    pub fn form(&self) -> &IntMatrix {
        &self.form
    }

    pub fn basis_labels(&self) -> &[String] {
        &self.basis_labels
    }

    pub fn pairing(&self, x: &[i64], y: &[i64]) -> i64 {
        self.form.pairing(x, y)
    }

    /// Connected sum with a reversed `CP2`: a new basis class of square `-1`.
    pub fn blow_up(&self) -> Self {
        let n = self.h2_rank();
        let mut form = IntMatrix::zeros(n + 1, n + 1);
        for i in 0..n {
            for j in 0..n {
                form.set(i, j, self.form.get(i, j));
            }
        }
        form.set(n, n, -1);
        let exceptional = self.basis_labels.iter().filter(|l| l.starts_with('e')).count() + 1;
        let mut basis_labels = self.basis_labels.clone();
        basis_labels.push(format!("e{exceptional}"));
        AmbientManifold {
            name: format!("{}#-CP2", self.name),
            simply_connected: self.simply_connected,
            form,
            basis_labels,
        }
    }
}

/// How a component sits in the ambient manifold, up to smooth equivalence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum EmbeddingTag {
    Standard,
    /// Connected sum with the `twist`-twist spun knot of `knot`.
    ConnectSumTwistSpun { knot: BraidWord, twist: i64 },
    Opaque(String),
}

impl fmt::Display for EmbeddingTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EmbeddingTag::Standard => f.write_str("standard"),
            EmbeddingTag::ConnectSumTwistSpun { knot, twist } => {
                write!(f, "connect-sum-twist-spun({knot}, {twist})")
            }
            EmbeddingTag::Opaque(s) => write!(f, "opaque({s})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceComponent {
    pub label: String,
    pub genus: u32,
    pub class: Vec<i64>,
    pub orientation: i8,
    pub embedding: EmbeddingTag,
}

impl SurfaceComponent {
    pub fn new(label: impl Into<String>, genus: u32, class: Vec<i64>) -> Self {
        SurfaceComponent { label: label.into(), genus, class, orientation: 1, embedding: EmbeddingTag::Standard }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoublePoint {
    pub a: usize,
    pub b: usize,
    pub sign: i8,
}

/// Meridian label of component `i` (0-based) in a complement presentation.
pub fn meridian_label(i: usize) -> String {
    format!("mu{}", i + 1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Configuration {
    ambient: AmbientManifold,
    components: Vec<SurfaceComponent>,
    double_points: Vec<DoublePoint>,
    pi1: Option<Presentation>,
    pub symplectic_positive: bool,
}

impl Configuration {
    pub fn new(
        ambient: AmbientManifold,
        components: Vec<SurfaceComponent>,
        double_points: Vec<DoublePoint>,
        pi1: Option<Presentation>,
        symplectic_positive: bool,
    ) -> Result<Self, ConfigError> {
        let c = Configuration { ambient, components, double_points, pi1, symplectic_positive };
        c.validate()?;
        Ok(c)
    }

    fn validate(&self) -> Result<(), ConfigError> {
        let rank = self.ambient.h2_rank();
        for comp in &self.components {
            if comp.class.len() != rank {
                return Err(ConfigError::ClassLength { label: comp.label.clone(), len: comp.class.len(), rank });
            }
        }
        let k = self.components.len();
        for (index, dp) in self.double_points.iter().enumerate() {
            for i in [dp.a, dp.b] {
                self.check_index(i)?;
            }
            if dp.a == dp.b {
                return Err(ConfigError::SelfDoublePoint { index });
            }
            if dp.sign != 1 && dp.sign != -1 {
                return Err(ConfigError::BadSign { index, sign: dp.sign });
            }
        }
        for a in 0..k {
            for b in a + 1..k {
                let listed: i64 = self
                    .double_points
                    .iter()
                    .filter(|d| (d.a, d.b) == (a, b) || (d.a, d.b) == (b, a))
                    .map(|d| d.sign as i64)
                    .sum();
                let pairing = self.pairing(a, b);
                if listed != pairing {
                    return Err(ConfigError::DoublePointMismatch { a, b, listed, pairing });
                }
            }
        }
        if let Some(p) = &self.pi1 {
            for i in 0..k {
                let role = meridian_label(i);
                if p.label(&role).is_none() {
                    return Err(ConfigError::MissingMeridian(role));
                }
            }
        }
        Ok(())
    }

    fn check_index(&self, index: usize) -> Result<(), ConfigError> {
        if index >= self.components.len() {
            return Err(ConfigError::NoSuchComponent { index, count: self.components.len() });
        }
        Ok(())
    }

    fn pairing(&self, i: usize, j: usize) -> i64 {
        self.ambient.pairing(&self.components[i].class, &self.components[j].class)
    }

    pub fn ambient(&self) -> &AmbientManifold {
        &self.ambient
    }

    pub fn components(&self) -> &[SurfaceComponent] {
        &self.components
    }

    pub fn double_points(&self) -> &[DoublePoint] {
        &self.double_points
    }

    pub fn pi1(&self) -> Option<&Presentation> {
        self.pi1.as_ref()
    }

    /// Double points between components `a` and `b`, in either order.
    pub fn double_points_between(&self, a: usize, b: usize) -> usize {
        self.double_points.iter().filter(|d| (d.a, d.b) == (a, b) || (d.a, d.b) == (b, a)).count()
    }

    /// Replaces component data and the complement presentation, revalidating.
    pub fn with_parts(
        &self,
        components: Vec<SurfaceComponent>,
        pi1: Option<Presentation>,
    ) -> Result<Configuration, ConfigError> {
        Configuration::new(self.ambient.clone(), components, self.double_points.clone(), pi1, self.symplectic_positive)
    }

    pub fn set_embedding(&mut self, i: usize, tag: EmbeddingTag) -> Result<(), ConfigError> {
        self.check_index(i)?;
        self.components[i].embedding = tag;
        Ok(())
    }
}

pub fn algebraic_intersection(c: &Configuration, i: usize, j: usize) -> Result<i64, ConfigError> {
    c.check_index(i)?;
    c.check_index(j)?;
    Ok(c.pairing(i, j))
}

/// Relation matrix for `H₁` of the complement: row `i` is `(A_i·Σ_1, …, A_i·Σ_k)`.
pub fn complement_relation_matrix(c: &Configuration) -> IntMatrix {
    let n = c.ambient.h2_rank();
    let mut m = IntMatrix::zeros(n, c.components.len());
    for i in 0..n {
        let mut basis = vec![0; n];
        basis[i] = 1;
        for (j, comp) in c.components.iter().enumerate() {
            m.set(i, j, c.ambient.pairing(&basis, &comp.class));
        }
    }
    m
}

/// `H₁` of the complement, generated by the meridians.
pub fn complement_h1(c: &Configuration) -> Result<AbelianGroup, ConfigError> {
    if !c.ambient.simply_connected {
        return Err(ConfigError::NotSimplyConnected(c.ambient.name.clone()));
    }
    Ok(AbelianizationMap::from_relations(&complement_relation_matrix(c)).group())
}

/// Blows up a point of component `i`: its class becomes `class - E` and its
/// meridian dies in the complement.
pub fn blow_up_on_component(c: &Configuration, i: usize) -> Result<Configuration, ConfigError> {
    c.check_index(i)?;
    let ambient = c.ambient.blow_up();
    let components = c
        .components
        .iter()
        .enumerate()
        .map(|(j, comp)| {
            let mut comp = comp.clone();
            comp.class.push(if j == i { -1 } else { 0 });
            comp
        })
        .collect();
    let pi1 = match &c.pi1 {
        Some(p) => {
            let mu: Word = p.label(&meridian_label(i)).cloned().ok_or_else(|| ConfigError::MissingMeridian(meridian_label(i)))?;
            Some(p.with_relators([mu]).expect("label words are valid"))
        }
        None => None,
    };
    Configuration::new(ambient, components, c.double_points.clone(), pi1, c.symplectic_positive)
}

/// The connected surface obtained by smoothing every double point, then
/// blown up at `T·T` of its points so that its square is zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmoothSurface {
    pub ambient: AmbientManifold,
    pub genus: u32,
    pub class: Vec<i64>,
    pub self_intersection: i64,
    pub blow_ups: usize,
    /// Number of negative double points smoothed (orientation bookkeeping only).
    pub negative_smoothings: usize,
}

pub fn smooth_and_stabilize(c: &Configuration) -> Result<SmoothSurface, ConfigError> {
    let k = c.components.len();
    // union-find over components joined by double points
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    for d in &c.double_points {
        let (ra, rb) = (find(&mut parent, d.a), find(&mut parent, d.b));
        parent[ra] = rb;
    }
    let pieces = (0..k).filter(|&x| find(&mut parent, x) == x).count();
    if pieces != 1 {
        return Err(ConfigError::Disconnected(pieces));
    }
    let rank = c.ambient.h2_rank();
    let mut total = vec![0i64; rank];
    for comp in &c.components {
        for (t, x) in total.iter_mut().zip(&comp.class) {
            *t += x;
        }
    }
    let square = c.ambient.pairing(&total, &total);
    if square < 0 {
        return Err(ConfigError::NegativeSquare(square));
    }
    let chi: i64 = c.components.iter().map(|s| 2 - 2 * s.genus as i64).sum::<i64>() - 2 * c.double_points.len() as i64;
    let genus = ((2 - chi) / 2) as u32;
    let n = square as usize;
    let mut ambient = c.ambient.clone();
    for _ in 0..n {
        ambient = ambient.blow_up();
        total.push(-1);
    }
    let self_intersection = ambient.pairing(&total, &total);
    Ok(SmoothSurface {
        ambient,
        genus,
        class: total,
        self_intersection,
        blow_ups: n,
        negative_smoothings: c.double_points.iter().filter(|d| d.sign < 0).count(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_spheres_in_cp2(d1: i64, d2: i64) -> Configuration {
        nodal(d1 as u32, d2 as u32).unwrap()
    }

    #[test]
    fn intersections() {
        let s = spheres(1, 1).unwrap();
        assert_eq!(algebraic_intersection(&s, 0, 1), Ok(1));
        assert_eq!(algebraic_intersection(&spheres(3, 2).unwrap(), 0, 0), Ok(0));
        assert_eq!(algebraic_intersection(&two_spheres_in_cp2(2, 3), 0, 1), Ok(6));
        assert!(algebraic_intersection(&s, 0, 2).is_err());
    }

    #[test]
    fn validation_catches_wrong_double_point_count() {
        let s = spheres(2, 2).unwrap();
        let mut dps = s.double_points().to_vec();
        dps.pop();
        let err = Configuration::new(s.ambient().clone(), s.components().to_vec(), dps, None, false);
        assert!(matches!(err, Err(ConfigError::DoublePointMismatch { listed: 3, pairing: 4, .. })));
        let bad = vec![SurfaceComponent::new("x", 0, vec![1])];
        assert!(matches!(
            Configuration::new(AmbientManifold::s2_x_s2(), bad, vec![], None, false),
            Err(ConfigError::ClassLength { .. })
        ));
    }

    #[test]
    fn homology_of_examples() {
        assert_eq!(complement_h1(&two_spheres_in_cp2(2, 3)).unwrap(), AbelianGroup::free(1));
        assert_eq!(complement_h1(&two_spheres_in_cp2(2, 4)).unwrap(), "Z + Z_2".parse().unwrap());
        assert_eq!(complement_h1(&rational(2, 3).unwrap()).unwrap(), AbelianGroup::cyclic(3));
        assert_eq!(complement_h1(&spheres(3, 2).unwrap()).unwrap(), "Z_3 + Z_2".parse().unwrap());
    }

    #[test]
    fn blow_ups_kill_homology() {
        let s = spheres(3, 2).unwrap();
        let b = blow_up_on_component(&s, 0).unwrap();
        let sq = |c: &Configuration, i| algebraic_intersection(c, i, i).unwrap();
        assert_eq!(sq(&b, 0), sq(&s, 0) - 1);
        assert_eq!(sq(&b, 1), sq(&s, 1));
        assert_eq!(algebraic_intersection(&b, 0, 1), algebraic_intersection(&s, 0, 1));
        let bb = blow_up_on_component(&b, 1).unwrap();
        assert!(complement_h1(&bb).unwrap().is_trivial());
        assert_eq!(bb.ambient().basis_labels().last().map(String::as_str), Some("e2"));
        assert!(crate::presentation::abelianization(bb.pi1().unwrap()).is_trivial());
    }

    #[test]
    fn smoothings() {
        let one = smooth_and_stabilize(&two_spheres_in_cp2(1, 1)).unwrap();
        assert_eq!((one.genus, one.blow_ups, one.self_intersection), (0, 4, 0));
        // lines meeting in d points are not available in CP2 beyond d = 1, so use S2xS2 spheres
        let s = spheres(1, 3).unwrap();
        assert_eq!(smooth_and_stabilize(&s).unwrap().genus, 2);
        let r = rational(2, 2).unwrap();
        let sm = smooth_and_stabilize(&r).unwrap();
        assert_eq!((sm.genus, sm.blow_ups, sm.self_intersection), (2, 12, 0));
    }

    #[test]
    fn smoothing_rejects_disconnected_graph() {
        let a = AmbientManifold::s2_x_s2();
        let comps = vec![SurfaceComponent::new("x", 0, vec![1, 0]), SurfaceComponent::new("y", 0, vec![1, 0])];
        let c = Configuration::new(a, comps, vec![], None, false).unwrap();
        assert_eq!(smooth_and_stabilize(&c), Err(ConfigError::Disconnected(2)));
    }
}
