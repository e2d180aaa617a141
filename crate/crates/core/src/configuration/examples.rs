//! The explicit configurations: curves in `CP2` and `P1xP1`, spheres in
//! `S2xS2`, and the braided tori in a symplectic manifold with `π₁ = 1`.

use super::{AmbientManifold, ConfigError, Configuration, DoublePoint, SurfaceComponent};
use crate::presentation::{IntMatrix, Presentation, Word};

fn positive(name: &str, v: u32) -> Result<i64, ConfigError> {
    if v == 0 {
        return Err(ConfigError::Parameter(format!("{name} must be at least 1")));
    }
    Ok(v as i64)
}

fn positive_points(a: usize, b: usize, count: i64) -> Vec<DoublePoint> {
    (0..count).map(|_| DoublePoint { a, b, sign: 1 }).collect()
}

/// Two-generator presentation of an abelian complement with the meridians as generators.
fn abelian_meridians(relations: &[(i64, i64)]) -> Presentation {
    let (m1, m2) = (Word::generator(0), Word::generator(1));
    let mut rels = vec![Word::commutator(&m1, &m2)];
    rels.extend(relations.iter().map(|&(a, b)| m1.pow(a).mul(&m2.pow(b))));
    let mut p = Presentation::new(vec!["m1".into(), "m2".into()], rels).expect("two generators");
    p.set_label("mu1", m1).expect("valid");
    p.set_label("mu2", m2).expect("valid");
    p
}

/// Smooth curves of degrees `d1`, `d2` in general position in `CP2`.
///
/// The complement group is abelian (nodal curve complement), so it is
/// presented by the meridians and the single homology relation.
pub fn nodal(d1: u32, d2: u32) -> Result<Configuration, ConfigError> {
    let (a, b) = (positive("d1", d1)?, positive("d2", d2)?);
    let genus = |d: i64| ((d - 1) * (d - 2) / 2) as u32;
    let components = vec![SurfaceComponent::new("C1", genus(a), vec![a]), SurfaceComponent::new("C2", genus(b), vec![b])];
    let pi1 = abelian_meridians(&[(a, b)]);
    Configuration::new(AmbientManifold::cp2(), components, positive_points(0, 1, a * b), Some(pi1), true)
}

/// Curves of classes `(p,q)` and `(1,0)` in `P1xP1`; the complement is `Z_q`.
pub fn rational(p: u32, q: u32) -> Result<Configuration, ConfigError> {
    let (p, q) = (positive("p", p)?, positive("q", q)?);
    let components = vec![
        SurfaceComponent::new("C1", ((p - 1) * (q - 1)) as u32, vec![p, q]),
        SurfaceComponent::new("C2", 0, vec![1, 0]),
    ];
    let pi1 = abelian_meridians(&[(q, 0), (p, 1)]);
    Configuration::new(AmbientManifold::p1_x_p1(), components, positive_points(0, 1, q), Some(pi1), true)
}

fn names(prefix: &str, count: i64) -> Vec<String> {
    (1..=count).map(|i| format!("{prefix}{i}")).collect()
}

/// `⟨μ₁..μ_m, ν₁..ν_n | [μᵢ,νⱼ], ∏μᵢ, ∏νⱼ, μ₁ = μⱼ, ν₁ = νⱼ⟩`.
pub fn spheres_presentation(m: u32, n: u32) -> Result<Presentation, ConfigError> {
    let (m, n) = (positive("m", m)? as usize, positive("n", n)? as usize);
    let mu: Vec<Word> = (0..m).map(Word::generator).collect();
    let nu: Vec<Word> = (m..m + n).map(Word::generator).collect();
    let mut rels = Vec::new();
    for a in &mu {
        for b in &nu {
            rels.push(Word::commutator(a, b));
        }
    }
    rels.push(Word::product(&mu));
    rels.push(Word::product(&nu));
    rels.extend(mu[1..].iter().map(|w| Word::equation(&mu[0], w)));
    rels.extend(nu[1..].iter().map(|w| Word::equation(&nu[0], w)));
    let mut gens = names("mu", m as i64);
    gens.extend(names("nu", n as i64));
    let mut p = Presentation::new(gens, rels).expect("indices in range");
    p.set_label("mu1", mu[0].clone()).expect("valid");
    p.set_label("mu2", nu[0].clone()).expect("valid");
    Ok(p)
}

/// Connected spheres of classes `(m,0)` and `(0,n)` in `S2xS2`.
pub fn spheres(m: u32, n: u32) -> Result<Configuration, ConfigError> {
    let pi1 = spheres_presentation(m, n)?;
    let (m, n) = (m as i64, n as i64);
    let components = vec![SurfaceComponent::new("Sm", 0, vec![m, 0]), SurfaceComponent::new("Sn", 0, vec![0, n])];
    Configuration::new(AmbientManifold::s2_x_s2(), components, positive_points(0, 1, m * n), Some(pi1), false)
}

/// Complement of the braided tori `T_m ∪ T_n`: the presentation of the
/// neighbourhood complement, with the four handle curves `αᵢ` killed by the
/// fiber sums.
///
/// Generators `alpha1..alpha4, nu1..nu_m, mu1..mu_n, gamma, eta`. The
/// `νᵢ` are meridians of `T_m` (role `mu1`) and the `μⱼ` of `T_n` (role `mu2`).
pub fn tori_presentation(m: u32, n: u32) -> Result<Presentation, ConfigError> {
    let (m, n) = (positive("m", m)? as usize, positive("n", n)? as usize);
    let alpha: Vec<Word> = (0..4).map(Word::generator).collect();
    let nu: Vec<Word> = (4..4 + m).map(Word::generator).collect();
    let mu: Vec<Word> = (4 + m..4 + m + n).map(Word::generator).collect();
    let gamma = Word::generator(4 + m + n);
    let eta = Word::generator(5 + m + n);
    let descending = |ws: &[Word]| Word::product(ws.iter().rev());
    let conj = |g: &Word, x: &Word| g.mul(x).mul(&g.inverse());

    let mut rels = Vec::new();
    for b in &mu {
        for a in &nu {
            rels.push(Word::commutator(b, a));
        }
    }
    rels.push(Word::equation(&gamma, &Word::commutator(&alpha[0], &alpha[1])));
    rels.push(Word::equation(&gamma, &descending(&mu)));
    rels.extend(nu.iter().map(|a| Word::commutator(&gamma, a)));
    rels.push(Word::equation(&eta, &Word::commutator(&alpha[2], &alpha[3])));
    rels.push(Word::equation(&eta, &descending(&nu)));
    rels.extend(mu.iter().map(|b| Word::commutator(&eta, b)));
    // monodromy of the two flat bundles, with trivial monodromy along α₁ and α₄
    for (fixed, turning, xs) in [(&alpha[0], &alpha[1], &nu), (&alpha[3], &alpha[2], &mu)] {
        rels.extend(xs.iter().map(|x| Word::commutator(fixed, x)));
        for i in 0..xs.len() - 1 {
            rels.push(Word::equation(&conj(turning, &xs[i]), &xs[i + 1]));
        }
        let last = xs.len() - 1;
        rels.push(Word::equation(&conj(turning, &xs[last]), &conj(&descending(xs), &xs[0])));
    }
    rels.extend(alpha.iter().cloned());

    let mut gens = names("alpha", 4);
    gens.extend(names("nu", m as i64));
    gens.extend(names("mu", n as i64));
    gens.push("gamma".into());
    gens.push("eta".into());
    let mut p = Presentation::new(gens, rels).expect("indices in range");
    p.set_label("mu1", nu[0].clone()).expect("valid");
    p.set_label("mu2", mu[0].clone()).expect("valid");
    Ok(p)
}

/// The ambient of the braided tori, recorded on the span of the two torus
/// classes `[T12]`, `[T34]`, which pair to one.
pub fn tori_ambient() -> AmbientManifold {
    AmbientManifold::new("X_tori", true, IntMatrix::from_rows(vec![vec![0, 1], vec![1, 0]]), vec!["t12".into(), "t34".into()])
        .expect("hyperbolic form")
}

/// Symplectic tori `T_m`, `T_n` of classes `m[T12]`, `n[T34]` meeting positively in `mn` points.
pub fn tori(m: u32, n: u32) -> Result<Configuration, ConfigError> {
    let pi1 = tori_presentation(m, n)?;
    let (m, n) = (m as i64, n as i64);
    let components = vec![SurfaceComponent::new("Tm", 1, vec![m, 0]), SurfaceComponent::new("Tn", 1, vec![0, n])];
    Configuration::new(tori_ambient(), components, positive_points(0, 1, m * n), Some(pi1), true)
}
