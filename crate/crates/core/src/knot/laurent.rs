use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::util::gcd;

/// Integer Laurent polynomial in one variable.
///
/// Stored densely from `min_degree`; the first and last coefficients are
/// nonzero unless the polynomial is zero (empty, `min_degree = 0`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct LaurentPoly {
    min_degree: i64,
    coeffs: Vec<i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { min_degree: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: i64, degree: i64) -> Self {
        Self::new(degree, vec![c])
    }

    /// The variable itself.
    pub fn var() -> Self {
        Self::monomial(1, 1)
    }

    pub fn new(min_degree: i64, coeffs: Vec<i64>) -> Self {
        let mut p = LaurentPoly { min_degree, coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.min_degree += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.min_degree = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_degree(&self) -> i64 {
        self.min_degree
    }

    pub fn max_degree(&self) -> i64 {
        self.min_degree + self.coeffs.len() as i64 - 1
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, degree: i64) -> i64 {
        let i = degree - self.min_degree;
        if i < 0 {
            return 0;
        }
        self.coeffs.get(i as usize).copied().unwrap_or(0)
    }

    /// Nonzero terms as `(degree, coefficient)`, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(move |(i, &c)| (self.min_degree + i as i64, c))
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::new(self.min_degree, self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly { min_degree: self.min_degree + k, coeffs: self.coeffs.clone() }
    }

    pub fn value_at_one(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    pub fn value_at_minus_one(&self) -> i64 {
        self.terms().map(|(d, c)| if d.rem_euclid(2) == 0 { c } else { -c }).sum()
    }

    /// gcd of the coefficients (0 for the zero polynomial).
    pub fn content(&self) -> i64 {
        self.coeffs.iter().fold(0, |g, &c| gcd(g, c))
    }

    /// `p(t²)`.
    pub fn substitute_square(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![0; 2 * self.coeffs.len() - 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[2 * i] = c;
        }
        LaurentPoly { min_degree: 2 * self.min_degree, coeffs }
    }

    /// `p(t⁻¹)`.
    pub fn reciprocal(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        LaurentPoly { min_degree: -self.max_degree(), coeffs }
    }

    pub fn is_palindromic(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }

    /// Sorted multiset of the nonzero coefficients.
    pub fn coefficient_multiset(&self) -> Vec<i64> {
        let mut v: Vec<i64> = self.coeffs.iter().copied().filter(|&c| c != 0).collect();
        v.sort_unstable();
        v
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let n = divisor.coeffs.len();
        let mut rem = self.coeffs.clone();
        if rem.len() < n {
            return None;
        }
        let lead = *divisor.coeffs.last().expect("nonzero");
        let qlen = rem.len() - n + 1;
        let mut q = vec![0; qlen];
        for k in (0..qlen).rev() {
            let top = rem[k + n - 1];
            if top % lead != 0 {
                return None;
            }
            let c = top / lead;
            q[k] = c;
            if c != 0 {
                for (i, &d) in divisor.coeffs.iter().enumerate() {
                    rem[k + i] -= c * d;
                }
            }
        }
        if rem.iter().any(|&r| r != 0) {
            return None;
        }
        Some(Self::new(self.min_degree - divisor.min_degree, q))
    }

    /// Renders ascending, e.g. `t^-1 - 1 + t`, using `var` as the variable name.
    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (d, c)) in self.terms().enumerate() {
            let mag = c.unsigned_abs();
            if k == 0 {
                if c < 0 {
                    s.push('-');
                }
            } else {
                s.push_str(if c < 0 { " - " } else { " + " });
            }
            let monomial = match d {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{d}"),
            };
            if monomial.is_empty() {
                s.push_str(&mag.to_string());
            } else if mag == 1 {
                s.push_str(&monomial);
            } else {
                s.push_str(&format!("{mag}{monomial}"));
            }
        }
        s
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("t"))
    }
}

fn add_into(a: &LaurentPoly, b: &LaurentPoly, sign: i64) -> LaurentPoly {
    if a.is_zero() {
        return b.scale(sign);
    }
    if b.is_zero() {
        return a.clone();
    }
    let lo = a.min_degree.min(b.min_degree);
    let hi = a.max_degree().max(b.max_degree());
    let mut coeffs = vec![0; (hi - lo + 1) as usize];
    for (d, c) in a.terms() {
        coeffs[(d - lo) as usize] += c;
    }
    for (d, c) in b.terms() {
        coeffs[(d - lo) as usize] += sign * c;
    }
    LaurentPoly::new(lo, coeffs)
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        add_into(self, rhs, 1)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        add_into(self, rhs, -1)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        LaurentPoly::new(self.min_degree + rhs.min_degree, coeffs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

impl FromStr for LaurentPoly {
    type Err = String;

    /// Parses sums of terms like `3`, `-t`, `2t^-3`, `2*r^2`, `t^(-1)`; any
    /// single letter is accepted as the variable but must be used consistently.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let words: Vec<&str> = s.split_whitespace().collect();
        let glued = |a: &str, b: &str| {
            a.ends_with(|c: char| c.is_ascii_alphanumeric()) && b.starts_with(|c: char| c.is_ascii_digit())
        };
        if words.windows(2).any(|w| glued(w[0], w[1])) {
            return Err("missing operator between terms".into());
        }
        let src: String = words.concat();
        if src.is_empty() {
            return Err("empty polynomial".into());
        }
        let chars: Vec<char> = src.chars().collect();
        let mut i = 0;
        let mut var: Option<char> = None;
        let mut acc = LaurentPoly::zero();
        let number = |i: &mut usize| -> Option<i64> {
            let start = *i;
            while *i < chars.len() && chars[*i].is_ascii_digit() {
                *i += 1;
            }
            (start < *i).then(|| chars[start..*i].iter().collect::<String>().parse().ok()).flatten()
        };
        while i < chars.len() {
            let mut sign = 1;
            if chars[i] == '+' || chars[i] == '-' {
                if chars[i] == '-' {
                    sign = -1;
                }
                i += 1;
            } else if i > 0 {
                return Err(format!("expected `+` or `-` at position {i}"));
            }
            let coeff = number(&mut i);
            if i < chars.len() && chars[i] == '*' {
                i += 1;
            }
            let mut degree = 0;
            if i < chars.len() && chars[i].is_ascii_alphabetic() {
                let v = chars[i];
                if var.is_some_and(|w| w != v) {
                    return Err(format!("mixed variables `{}` and `{v}`", var.unwrap()));
                }
                var = Some(v);
                i += 1;
                degree = 1;
                if i < chars.len() && chars[i] == '^' {
                    i += 1;
                    let paren = i < chars.len() && chars[i] == '(';
                    if paren {
                        i += 1;
                    }
                    let mut esign = 1;
                    if i < chars.len() && (chars[i] == '-' || chars[i] == '+') {
                        if chars[i] == '-' {
                            esign = -1;
                        }
                        i += 1;
                    }
                    degree = esign * number(&mut i).ok_or("missing exponent")?;
                    if paren {
                        if i >= chars.len() || chars[i] != ')' {
                            return Err("unclosed exponent parenthesis".into());
                        }
                        i += 1;
                    }
                }
            } else if coeff.is_none() {
                return Err(format!("expected a term at position {i}"));
            }
            acc = &acc + &LaurentPoly::monomial(sign * coeff.unwrap_or(1), degree);
        }
        Ok(acc)
    }
}
