use super::braid::{braid_to_diagram, BraidWord, KnotDiagram};
use super::laurent::LaurentPoly;
use super::wirtinger::wirtinger_presentation;
use super::KnotError;
use crate::presentation::{Presentation, Word};

/// Fox derivative `∂w/∂x_g`, pushed to `Z[t^±1]` by `x_i ↦ t^{images[i]}`.
pub fn fox_derivative(w: &Word, g: usize, images: &[i64]) -> LaurentPoly {
    let mut acc = LaurentPoly::zero();
    let mut prefix = 0i64;
    for l in w.letters() {
        if l.inverse {
            prefix -= images[l.generator];
            if l.generator == g {
                acc = &acc - &LaurentPoly::monomial(1, prefix);
            }
        } else {
            if l.generator == g {
                acc = &acc + &LaurentPoly::monomial(1, prefix);
            }
            prefix += images[l.generator];
        }
    }
    acc
}

/// Matrix of Fox derivatives, one row per relator and one column per generator.
pub fn fox_jacobian(p: &Presentation, images: &[i64]) -> Vec<Vec<LaurentPoly>> {
    p.relators()
        .iter()
        .map(|r| (0..p.rank()).map(|g| fox_derivative(r, g, images)).collect())
        .collect()
}

/// Determinant over `Z[t^±1]` by fraction-free elimination.
pub fn laurent_determinant(mut m: Vec<Vec<LaurentPoly>>) -> LaurentPoly {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "determinant of a non-square matrix");
    if n == 0 {
        return LaurentPoly::one();
    }
    let mut negate = false;
    let mut prev = LaurentPoly::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return LaurentPoly::zero();
            };
            m.swap(k, r);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev).expect("fraction-free elimination divides exactly");
            }
            m[i][k] = LaurentPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Divides out the content, centres the degrees at zero and fixes `Δ(1) > 0`.
fn normalize(p: &LaurentPoly) -> LaurentPoly {
    if p.is_zero() {
        return LaurentPoly::zero();
    }
    let content = p.content();
    let q = LaurentPoly::new(0, p.coefficients().iter().map(|c| c / content).collect());
    let span = q.max_degree();
    let q = q.shift(-(span / 2));
    if q.value_at_one() < 0 {
        -q
    } else {
        q
    }
}

/// Alexander polynomial from the Fox matrix of the Wirtinger presentation,
/// with the meridian column and the last relator deleted.
///
/// Normalized to be symmetric about degree 0 with `Δ(1) = 1`.
pub fn alexander_polynomial(d: &KnotDiagram) -> LaurentPoly {
    let g = wirtinger_presentation(d);
    let n = g.rank();
    if n <= 1 {
        return LaurentPoly::one();
    }
    let jac = fox_jacobian(&g.presentation, &vec![1; n]);
    let minor: Vec<Vec<LaurentPoly>> = jac[..n - 1].iter().map(|row| row[1..].to_vec()).collect();
    normalize(&laurent_determinant(minor))
}

pub fn braid_alexander(b: &BraidWord) -> Result<LaurentPoly, KnotError> {
    Ok(alexander_polynomial(&braid_to_diagram(b)?))
}

/// The torus knots `K_r = closure(σ₁^{2r+1})`, `r = 1..=count`, with their
/// Alexander polynomials. Errors if two coefficient multisets coincide.
pub fn knot_family(count: usize) -> Result<Vec<(BraidWord, LaurentPoly)>, KnotError> {
    let mut out: Vec<(BraidWord, LaurentPoly)> = Vec::with_capacity(count);
    for r in 1..=count {
        let b = BraidWord::torus_knot(r);
        let delta = braid_alexander(&b)?;
        let ms = delta.coefficient_multiset();
        if let Some((other, _)) = out.iter().find(|(_, d)| d.coefficient_multiset() == ms) {
            return Err(KnotError::FamilyCollision { first: other.to_string(), second: b.to_string() });
        }
        out.push((b, delta));
    }
    Ok(out)
}
