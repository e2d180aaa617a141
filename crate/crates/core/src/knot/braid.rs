use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::KnotError;

/// A braid word `σ_{i₁}^{±1} … σ_{i_k}^{±1}` on `strands` strands.
///
/// Letters are signed generator indices: `i` is `σᵢ`, `-i` is `σᵢ⁻¹`, with
/// `1 ≤ |i| < strands`. Text form: `B3: 1 -2 1 -2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self, KnotError> {
        if strands == 0 {
            return Err(KnotError::NoStrands);
        }
        if let Some(&bad) = letters.iter().find(|&&l| l == 0 || l.unsigned_abs() as usize >= strands) {
            return Err(KnotError::GeneratorOutOfRange { letter: bad, strands });
        }
        Ok(BraidWord { strands, letters })
    }

    /// The (2, 2r+1) torus knot as the closure of `σ₁^{2r+1}`.
    pub fn torus_knot(r: usize) -> Self {
        BraidWord { strands: 2, letters: vec![1; 2 * r + 1] }
    }

    pub fn unknot() -> Self {
        BraidWord { strands: 1, letters: Vec::new() }
    }

    pub fn trefoil() -> Self {
        Self::torus_knot(1)
    }

    pub fn figure_eight() -> Self {
        BraidWord { strands: 3, letters: vec![1, -2, 1, -2] }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// `perm[p]` is the bottom position of the strand entering at top position `p`.
    pub fn permutation(&self) -> Vec<usize> {
        // pos_of[s] is the current position of strand s
        let mut pos_of: Vec<usize> = (0..self.strands).collect();
        for &l in &self.letters {
            let left = l.unsigned_abs() as usize - 1;
            for p in pos_of.iter_mut() {
                if *p == left {
                    *p = left + 1;
                } else if *p == left + 1 {
                    *p = left;
                }
            }
        }
        pos_of
    }

    /// Number of components of the closure.
    pub fn component_count(&self) -> usize {
        let perm = self.permutation();
        let mut seen = vec![false; self.strands];
        let mut count = 0;
        for start in 0..self.strands {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = perm[p];
            }
        }
        count
    }

    pub fn closure_is_knot(&self) -> bool {
        self.component_count() == 1
    }

    /// Exponent sum, i.e. the writhe of the closed diagram.
    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|l| l.signum() as i64).sum()
    }

    /// `σᵢ^{±1} · self · σᵢ^{∓1}`, with `letter` the signed index of the first factor.
    pub fn conjugate(&self, letter: i32) -> Result<Self, KnotError> {
        let mut letters = vec![letter];
        letters.extend_from_slice(&self.letters);
        letters.push(-letter);
        Self::new(self.strands, letters)
    }

    /// Markov stabilization: adds a strand and appends `σ_n^{±1}`.
    pub fn stabilize(&self, positive: bool) -> Self {
        let n = self.strands as i32;
        let mut letters = self.letters.clone();
        letters.push(if positive { n } else { -n });
        BraidWord { strands: self.strands + 1, letters }
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B{}:", self.strands)?;
        for l in &self.letters {
            write!(f, " {l}")?;
        }
        Ok(())
    }
}

impl FromStr for BraidWord {
    type Err = KnotError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |why: &str| KnotError::BraidSyntax { input: s.to_string(), message: why.to_string() };
        let rest = s.trim().strip_prefix('B').ok_or_else(|| bad("expected `B<strands>:`"))?;
        let (n, letters) = rest.split_once(':').ok_or_else(|| bad("missing `:` after strand count"))?;
        let strands: usize = n.trim().parse().map_err(|_| bad("strand count is not a number"))?;
        let letters = letters
            .split_whitespace()
            .map(|t| t.parse::<i32>().map_err(|_| bad(&format!("`{t}` is not a signed generator index"))))
            .collect::<Result<Vec<_>, _>>()?;
        BraidWord::new(strands, letters)
    }
}

impl TryFrom<String> for BraidWord {
    type Error = KnotError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<BraidWord> for String {
    fn from(b: BraidWord) -> String {
        b.to_string()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Crossing {
    pub over: usize,
    pub under_in: usize,
    pub under_out: usize,
    pub sign: i8,
}

/// Oriented knot diagram with arcs `0..arcs`, arc 0 the starting arc.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnotDiagram {
    arcs: usize,
    crossings: Vec<Crossing>,
}

impl KnotDiagram {
    pub fn unknot() -> Self {
        KnotDiagram { arcs: 1, crossings: Vec::new() }
    }

    /// Checks that the arcs form one closed cycle through the crossings.
    pub fn new(arcs: usize, crossings: Vec<Crossing>) -> Result<Self, KnotError> {
        let d = KnotDiagram { arcs, crossings };
        d.validate()?;
        Ok(d)
    }

    fn validate(&self) -> Result<(), KnotError> {
        let c = self.crossings.len();
        let invalid = |why: String| Err(KnotError::InvalidDiagram(why));
        if self.arcs != c.max(1) {
            return invalid(format!("{} arcs for {c} crossings", self.arcs));
        }
        let mut outs = vec![0; self.arcs];
        let mut ins = vec![0; self.arcs];
        for x in &self.crossings {
            if x.over >= self.arcs || x.under_in >= self.arcs || x.under_out >= self.arcs {
                return invalid("arc index out of range".into());
            }
            if x.sign != 1 && x.sign != -1 {
                return invalid(format!("crossing sign {}", x.sign));
            }
            outs[x.under_out] += 1;
            ins[x.under_in] += 1;
        }
        if c > 0 && (outs.iter().any(|&n| n != 1) || ins.iter().any(|&n| n != 1)) {
            return invalid("each arc must begin and end at exactly one undercrossing".into());
        }
        // following under_in -> under_out must visit every arc in a single cycle
        if c > 0 {
            let mut next = vec![0; self.arcs];
            for x in &self.crossings {
                next[x.under_in] = x.under_out;
            }
            let (mut a, mut steps) = (0, 0);
            loop {
                a = next[a];
                steps += 1;
                if a == 0 {
                    break;
                }
            }
            if steps != c {
                return invalid("arcs do not close up into a single component".into());
            }
        }
        Ok(())
    }

    pub fn arcs(&self) -> usize {
        self.arcs
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    /// Crossings in the order met along the knot, starting from the end of arc 0.
    pub fn traversal(&self) -> Vec<Crossing> {
        let mut by_in: Vec<Option<Crossing>> = vec![None; self.arcs];
        for x in &self.crossings {
            by_in[x.under_in] = Some(*x);
        }
        let mut out = Vec::with_capacity(self.crossings.len());
        let mut a = 0;
        while let Some(x) = by_in[a] {
            out.push(x);
            a = x.under_out;
            if a == 0 {
                break;
            }
        }
        out
    }
}

/// Threads the closure of `b` into a diagram, one crossing per letter.
///
/// Strands run downward; at `σᵢ` the strand in position `i` passes over the
/// one in position `i+1`, and the crossing sign is the letter's sign. Arc 0
/// starts at the top of position 0.
pub fn braid_to_diagram(b: &BraidWord) -> Result<KnotDiagram, KnotError> {
    let components = b.component_count();
    if components != 1 {
        return Err(KnotError::NotAKnot { components });
    }
    let c = b.len();
    if c == 0 {
        return Ok(KnotDiagram::unknot());
    }
    // Per crossing: (over arc, under in, under out); filled during a single traversal.
    let mut over = vec![usize::MAX; c];
    let mut under = vec![(usize::MAX, usize::MAX); c];
    let mut arc = 0usize;
    let mut pos = 0usize;
    loop {
        for (idx, &l) in b.letters().iter().enumerate() {
            let left = l.unsigned_abs() as usize - 1;
            let positive = l > 0;
            let is_over = if pos == left {
                pos = left + 1;
                positive
            } else if pos == left + 1 {
                pos = left;
                !positive
            } else {
                continue;
            };
            if is_over {
                over[idx] = arc;
            } else {
                under[idx] = (arc, arc + 1);
                arc += 1;
            }
        }
        if pos == 0 {
            break;
        }
    }
    debug_assert_eq!(arc, c);
    let wrap = |a: usize| if a == c { 0 } else { a };
    let crossings = (0..c)
        .map(|i| Crossing {
            over: wrap(over[i]),
            under_in: wrap(under[i].0),
            under_out: wrap(under[i].1),
            sign: b.letters()[i].signum() as i8,
        })
        .collect();
    KnotDiagram::new(c, crossings)
}
