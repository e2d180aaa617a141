use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::snf::{smith_normal_form, IntMatrix, SmithForm};
use super::{Presentation, Word};
use crate::util::{gcd, lcm};

/// Finitely generated abelian group `Z^r ⊕ Z_{d₁} ⊕ … ⊕ Z_{d_k}` with `2 ≤ d₁ | d₂ | …`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    free_rank: usize,
    torsion: Vec<u64>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup { free_rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup { free_rank: rank, torsion: Vec::new() }
    }

    pub fn cyclic(n: u64) -> Self {
        Self::from_cyclic_orders(0, &[n])
    }

    /// `Z^free_rank ⊕ Z_{n₁} ⊕ …` for arbitrary orders; `0` means `Z`, `1` is dropped.
    pub fn from_cyclic_orders(free_rank: usize, orders: &[u64]) -> Self {
        let diag: Vec<i64> = orders.iter().map(|&n| n as i64).collect();
        let snf = smith_normal_form(&IntMatrix::diagonal(&diag));
        let d = snf.d.diagonal_entries();
        let zeros = d.iter().filter(|&&x| x == 0).count();
        AbelianGroup {
            free_rank: free_rank + zeros,
            torsion: d.into_iter().filter(|&x| x > 1).map(|x| x as u64).collect(),
        }
    }

    /// Builds from already canonical data; returns `None` when the chain is not canonical.
    pub fn from_invariants(free_rank: usize, torsion: Vec<u64>) -> Option<Self> {
        let ok = torsion.iter().all(|&d| d >= 2) && torsion.windows(2).all(|w| w[1] % w[0] == 0);
        ok.then_some(AbelianGroup { free_rank, torsion })
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<u64> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z_{d}")));
        write!(f, "{}", parts.join(" + "))
    }
}

impl FromStr for AbelianGroup {
    type Err = String;

    /// Accepts `0`, `Z`, `Z^3`, `Z_4`, sums with `+` or `⊕`, in any order and non-canonical form.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "0" || s == "1" || s.eq_ignore_ascii_case("trivial") {
            return Ok(AbelianGroup::trivial());
        }
        let mut free = 0usize;
        let mut orders = Vec::new();
        for part in s.split(['+', '⊕']) {
            let part = part.trim();
            if part == "Z" {
                free += 1;
            } else if let Some(r) = part.strip_prefix("Z^") {
                free += r.trim().parse::<usize>().map_err(|_| format!("bad rank in `{part}`"))?;
            } else if let Some(n) = part.strip_prefix("Z_") {
                let n: u64 = n.trim().parse().map_err(|_| format!("bad order in `{part}`"))?;
                if n == 0 {
                    free += 1;
                } else {
                    orders.push(n);
                }
            } else {
                return Err(format!("cannot parse abelian summand `{part}`"));
            }
        }
        Ok(AbelianGroup::from_cyclic_orders(free, &orders))
    }
}

/// Exponent-sum matrix: one row per relator, one column per generator.
pub fn relation_matrix(p: &Presentation) -> IntMatrix {
    let mut m = IntMatrix::zeros(p.relators().len(), p.rank());
    for (i, r) in p.relators().iter().enumerate() {
        for (j, e) in r.exponent_sums(p.rank()).into_iter().enumerate() {
            m.set(i, j, e);
        }
    }
    m
}

/// Cokernel of a relation matrix (rows are relations among the column generators).
pub(crate) fn cokernel(m: &IntMatrix) -> AbelianGroup {
    let snf = smith_normal_form(m);
    let factors = snf.invariant_factors();
    AbelianGroup {
        free_rank: m.cols() - factors.len(),
        torsion: factors.into_iter().filter(|&x| x > 1).map(|x| x as u64).collect(),
    }
}

pub fn abelianization(p: &Presentation) -> AbelianGroup {
    cokernel(&relation_matrix(p))
}

/// The abelianization homomorphism, able to compute images and orders of words.
#[derive(Debug, Clone)]
pub struct AbelianizationMap {
    rank: usize,
    snf: SmithForm,
}

impl AbelianizationMap {
    pub fn new(p: &Presentation) -> Self {
        Self::from_relations(&relation_matrix(p))
    }

    pub fn from_relations(m: &IntMatrix) -> Self {
        AbelianizationMap { rank: m.cols(), snf: smith_normal_form(m) }
    }

    pub fn group(&self) -> AbelianGroup {
        let factors = self.snf.invariant_factors();
        AbelianGroup {
            free_rank: self.rank - factors.len(),
            torsion: factors.into_iter().filter(|&x| x > 1).map(|x| x as u64).collect(),
        }
    }

    /// Coordinates of an exponent vector in the diagonal basis; the quotient
    /// is `⊕ Z/dᵢ` over these coordinates (`dᵢ = 0` past the rank).
    fn coordinates(&self, exponents: &[i64]) -> Vec<(i64, i64)> {
        let v = &self.snf.v;
        let d = self.snf.d.diagonal_entries();
        (0..self.rank)
            .map(|j| {
                let y: i64 = (0..self.rank).map(|i| exponents[i] * v.get(i, j)).sum();
                (y, d.get(j).copied().unwrap_or(0))
            })
            .collect()
    }

    /// Order of the image of an exponent vector; `None` when infinite.
    pub fn order_of_exponents(&self, exponents: &[i64]) -> Option<u64> {
        let mut order = 1u64;
        for (y, d) in self.coordinates(exponents) {
            if d == 0 {
                if y != 0 {
                    return None;
                }
            } else {
                let y = y.rem_euclid(d);
                let g = gcd(y, d);
                order = lcm(order, (d / g) as u64);
            }
        }
        Some(order)
    }

    pub fn order_of(&self, w: &Word) -> Option<u64> {
        self.order_of_exponents(&w.exponent_sums(self.rank))
    }

    pub fn is_trivial(&self, w: &Word) -> bool {
        self.order_of(w) == Some(1)
    }
}
