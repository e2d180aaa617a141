use std::fmt;

use serde::{Deserialize, Serialize};

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn gen(generator: usize) -> Self {
        Letter { generator, inverse: false }
    }

    pub fn inv(generator: usize) -> Self {
        Letter { generator, inverse: true }
    }

    pub fn inverted(self) -> Self {
        Letter { generator: self.generator, inverse: !self.inverse }
    }

    /// +1 for a generator, -1 for an inverse.
    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    /// Index into a `2 * rank` alphabet where each inverse sits right after its generator.
    pub fn code(self) -> usize {
        2 * self.generator + usize::from(self.inverse)
    }

    pub fn from_code(code: usize) -> Self {
        Letter { generator: code / 2, inverse: code % 2 == 1 }
    }

    pub(crate) fn cancels(self, other: Letter) -> bool {
        self.generator == other.generator && self.inverse != other.inverse
    }
}

/// An element of a free group, stored as a sequence of letters.
///
/// Words are not reduced automatically; call [`Word::free_reduce`] or use the
/// multiplication helpers, which reduce their output.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Word { letters: Vec::new() }
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    pub fn generator(g: usize) -> Self {
        Word { letters: vec![Letter::gen(g)] }
    }

    /// Builds a word from signed generator indices: `+(g+1)` for `g`, `-(g+1)` for its inverse.
    pub fn from_signed(signed: &[i64]) -> Self {
        let letters = signed
            .iter()
            .map(|&s| {
                assert!(s != 0, "signed letter 0 is not a generator");
                let g = (s.unsigned_abs() - 1) as usize;
                Letter { generator: g, inverse: s < 0 }
            })
            .collect();
        Word { letters }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The unique freely reduced word equal to `self` in the free group.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            match out.last() {
                Some(&last) if last.cancels(l) => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        Word { letters: out }
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| !w[0].cancels(w[1]))
    }

    /// Freely and cyclically reduced conjugate.
    pub fn cyclic_reduce(&self) -> Word {
        let mut w = self.free_reduce().letters;
        while w.len() >= 2 && w[0].cancels(w[w.len() - 1]) {
            w.pop();
            w.remove(0);
        }
        Word { letters: w }
    }

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|l| l.inverted()).collect() }
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }.free_reduce()
    }

    pub fn pow(&self, exponent: i64) -> Word {
        let base = if exponent < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * exponent.unsigned_abs() as usize);
        for _ in 0..exponent.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        Word { letters }.free_reduce()
    }

    /// `[x, y] = x y x⁻¹ y⁻¹`.
    pub fn commutator(x: &Word, y: &Word) -> Word {
        x.mul(y).mul(&x.inverse()).mul(&y.inverse())
    }

    /// Relator expressing `lhs = rhs`, i.e. `lhs · rhs⁻¹`.
    pub fn equation(lhs: &Word, rhs: &Word) -> Word {
        lhs.mul(&rhs.inverse())
    }

    pub fn product<'a>(words: impl IntoIterator<Item = &'a Word>) -> Word {
        words.into_iter().fold(Word::identity(), |acc, w| acc.mul(w))
    }

    /// Exponent sum of each generator; `rank` must exceed every generator index.
    pub fn exponent_sums(&self, rank: usize) -> Vec<i64> {
        let mut sums = vec![0; rank];
        for l in &self.letters {
            sums[l.generator] += l.sign();
        }
        sums
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.generator).max()
    }

    /// Renumbers generators through `f`.
    pub fn map_generators(&self, f: impl Fn(usize) -> usize) -> Word {
        Word {
            letters: self
                .letters
                .iter()
                .map(|l| Letter { generator: f(l.generator), inverse: l.inverse })
                .collect(),
        }
    }

    /// Replaces every occurrence of generator `g` by `w` (and `g⁻¹` by `w⁻¹`).
    pub fn substitute(&self, g: usize, w: &Word) -> Word {
        let inv = w.inverse();
        let mut letters = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if l.generator != g {
                letters.push(l);
            } else if l.inverse {
                letters.extend_from_slice(&inv.letters);
            } else {
                letters.extend_from_slice(&w.letters);
            }
        }
        Word { letters }.free_reduce()
    }

    /// Renders the word with the given generator names; inverses are uppercased.
    pub fn render(&self, names: &[String]) -> String {
        if self.letters.is_empty() {
            return "1".to_string();
        }
        self.letters
            .iter()
            .map(|l| {
                let name = &names[l.generator];
                if l.inverse {
                    name.to_ascii_uppercase()
                } else {
                    name.clone()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if l.inverse {
                write!(f, "X{}", l.generator)?;
            } else {
                write!(f, "x{}", l.generator)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &[i64]) -> Word {
        Word::from_signed(s)
    }

    #[test]
    fn free_reduce_examples() {
        assert_eq!(w(&[1, -1]).free_reduce(), Word::identity());
        assert_eq!(w(&[1, 2, -2, 1]).free_reduce(), w(&[1, 1]));
        assert_eq!(w(&[1, -2, 2, -1]).free_reduce(), Word::identity());
    }

    #[test]
    fn commutator_convention() {
        let a = Word::generator(0);
        let b = Word::generator(1);
        assert_eq!(Word::commutator(&a, &b), w(&[1, 2, -1, -2]));
    }

    #[test]
    fn cyclic_reduction() {
        assert_eq!(w(&[2, 1, 1, -2]).cyclic_reduce(), w(&[1, 1]));
    }

    fn arb_word() -> impl Strategy<Value = Word> {
        proptest::collection::vec((1i64..4, any::<bool>()), 0..20)
            .prop_map(|v| Word::from_signed(&v.into_iter().map(|(g, n)| if n { -g } else { g }).collect::<Vec<_>>()))
    }

    proptest! {
        #[test]
        fn free_reduce_idempotent_and_shrinking(word in arb_word()) {
            let r = word.free_reduce();
            prop_assert!(r.len() <= word.len());
            prop_assert!(r.is_freely_reduced());
            prop_assert_eq!(r.free_reduce(), r.clone());
            prop_assert_eq!(word.exponent_sums(3), r.exponent_sums(3));
        }

        #[test]
        fn inverse_cancels(word in arb_word()) {
            prop_assert!(word.mul(&word.inverse()).is_empty());
        }
    }
}
