use std::fmt;

use serde::{Deserialize, Serialize};

/// Parameters of a local gluing for a knotted twin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GluingParams {
    pub p: i64,
    pub k: i64,
    pub gamma: i64,
    pub beta: i64,
    pub alpha: i64,
    pub b: i64,
}

/// Gluing of `∂P` to `∂E(K) × S¹` in the bases `{μ₁, μ₂, e₃}` and `{μ_K, S¹, λ_K}`;
/// column `j` is the image of the `j`-th basis class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GluingMatrix {
    entries: [[i64; 3]; 3],
}

impl GluingMatrix {
    pub fn new(entries: [[i64; 3]; 3]) -> Self {
        GluingMatrix { entries }
    }

    /// Rows `(p, k, 0)`, `(-γ, β, 0)`, `(-αγ + bp, αβ + bk, 1)`.
    pub fn from_params(g: &GluingParams) -> Self {
        GluingMatrix {
            entries: [
                [g.p, g.k, 0],
                [-g.gamma, g.beta, 0],
                [-g.alpha * g.gamma + g.b * g.p, g.alpha * g.beta + g.b * g.k, 1],
            ],
        }
    }

    pub fn entries(&self) -> &[[i64; 3]; 3] {
        &self.entries
    }

    pub fn determinant(&self) -> i64 {
        let e = &self.entries;
        e[0][0] * (e[1][1] * e[2][2] - e[1][2] * e[2][1]) - e[0][1] * (e[1][0] * e[2][2] - e[1][2] * e[2][0])
            + e[0][2] * (e[1][0] * e[2][1] - e[1][1] * e[2][0])
    }

    pub fn mul(&self, other: &GluingMatrix) -> GluingMatrix {
        let mut entries = [[0; 3]; 3];
        for (i, row) in entries.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = (0..3).map(|l| self.entries[i][l] * other.entries[l][j]).sum();
            }
        }
        GluingMatrix { entries }
    }

    /// Recovers the parameters when the matrix has the gluing pattern.
    pub fn params(&self) -> Option<GluingParams> {
        let e = &self.entries;
        if e[0][2] != 0 || e[1][2] != 0 || e[2][2] != 1 {
            return None;
        }
        let (p, k, gamma, beta) = (e[0][0], e[0][1], -e[1][0], e[1][1]);
        let (x, y) = (e[2][0], e[2][1]);
        // third row = α·(-γ, β) + b·(p, k)
        let det = -gamma * k - p * beta;
        if det == 0 {
            return None;
        }
        let (an, bn) = (k * x - p * y, -beta * x - gamma * y);
        if an % det != 0 || bn % det != 0 {
            return None;
        }
        Some(GluingParams { p, k, gamma, beta, alpha: an / det, b: bn / det })
    }

    /// `1` on the diagonal and `k` in position `(1, 2)`.
    pub fn is_twist(&self) -> Option<i64> {
        let k = self.entries[0][1];
        (*self == twist_gluing_matrix(k)).then_some(k)
    }
}

impl fmt::Display for GluingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .entries
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

/// Outcome of checking a gluing matrix; `violations` names each failed constraint.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GluingValidation {
    pub violations: Vec<String>,
}

impl GluingValidation {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn validate_gluing_matrix(a: &GluingMatrix) -> GluingValidation {
    let e = a.entries();
    let mut violations = Vec::new();
    for (i, j, want) in [(0, 2, 0), (1, 2, 0), (2, 2, 1)] {
        if e[i][j] != want {
            violations.push(format!("pattern: entry ({},{}) is {}, must be {want}", i + 1, j + 1, e[i][j]));
        }
    }
    let (p, k, gamma, beta) = (e[0][0], e[0][1], -e[1][0], e[1][1]);
    let s = p * beta + k * gamma;
    if s != 1 {
        violations.push(format!("p*beta + k*gamma = {s}, must be 1"));
    }
    if violations.is_empty() && a.params().is_none() {
        violations.push("pattern: third row is not (-alpha*gamma + b*p, alpha*beta + b*k, 1)".into());
    }
    let det = a.determinant();
    if det != 1 {
        violations.push(format!("determinant = {det}, must be 1"));
    }
    GluingValidation { violations }
}

/// The matrix of the `k`-twisted gluing `μ₁ ↦ μ_K`, `μ₂ ↦ kμ_K + S¹`, `∂D² ↦ λ_K`.
pub fn twist_gluing_matrix(k: i64) -> GluingMatrix {
    GluingMatrix::new([[1, k, 0], [0, 1, 0], [0, 0, 1]])
}
