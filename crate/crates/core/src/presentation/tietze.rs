//! Tietze simplification: eliminate generators that occur exactly once in
//! some relator while the presentation stays small.

use std::collections::BTreeSet;

use super::{Presentation, Word};

/// A presentation of the same group with fewer generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Simplified {
    pub presentation: Presentation,
    /// Names of the eliminated generators, in elimination order.
    pub eliminated: Vec<String>,
    pub relators_dropped: usize,
}

impl Simplified {
    pub fn evidence(&self, original: &Presentation) -> String {
        format!(
            "Tietze simplification: {} -> {} generators, {} -> {} relators",
            original.rank(),
            self.presentation.rank(),
            original.relators().len(),
            self.presentation.relators().len()
        )
    }
}

fn total_length(rels: &[Word]) -> usize {
    rels.iter().map(Word::len).sum()
}

/// Cyclically reduces relators and drops trivial and repeated ones.
fn tidy(rels: Vec<Word>) -> (Vec<Word>, usize) {
    let before = rels.len();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for r in rels {
        let r = r.cyclic_reduce();
        if r.is_empty() {
            continue;
        }
        let inv = r.inverse();
        if seen.contains(&r) || seen.contains(&inv) {
            continue;
        }
        seen.insert(r.clone());
        out.push(r);
    }
    let dropped = before - out.len();
    (out, dropped)
}

/// `g` written in terms of the other letters of `r`, in which it occurs once.
fn solve(r: &Word, g: usize) -> Word {
    let letters = r.letters();
    let at = letters.iter().position(|l| l.generator == g).expect("occurs once");
    // r = u g^e v  =>  g^e = u^-1 v^-1
    let u = Word::from_letters(letters[..at].to_vec());
    let v = Word::from_letters(letters[at + 1..].to_vec());
    let rhs = u.inverse().mul(&v.inverse());
    if letters[at].inverse {
        rhs.inverse()
    } else {
        rhs
    }
}

/// Generators `(x, y)` of a relator `x^a y^b x^-a y^-b`, which makes them commute.
fn commuting_pair(r: &Word) -> Option<(usize, usize)> {
    match r.letters() {
        [a, b, c, d] if a.generator != b.generator && c.cancels(*a) && d.cancels(*b) => {
            Some((a.generator, b.generator))
        }
        _ => None,
    }
}

/// Relators after eliminating `g := value` using relator `ri`. A relator
/// `[g, h]` is dropped when every generator of `value` already commutes with `h`.
fn eliminate(rels: &[Word], ri: usize, g: usize, value: &Word) -> Vec<Word> {
    let mut commutes = BTreeSet::new();
    for (i, r) in rels.iter().enumerate() {
        if let Some((x, y)) = commuting_pair(r).filter(|&(x, y)| i != ri && x != g && y != g) {
            commutes.insert((x, y));
            commutes.insert((y, x));
        }
    }
    let support: BTreeSet<usize> = value.letters().iter().map(|l| l.generator).collect();
    rels.iter()
        .enumerate()
        .filter(|&(i, _)| i != ri)
        .filter_map(|(_, r)| {
            if let Some((x, y)) = commuting_pair(r) {
                let partner = if x == g { Some(y) } else if y == g { Some(x) } else { None };
                if let Some(h) = partner {
                    if support.iter().all(|&z| z == h || commutes.contains(&(z, h))) {
                        return None;
                    }
                }
            }
            Some(r.substitute(g, value))
        })
        .collect()
}

/// Simplifies `p`, keeping every label as a word in the surviving generators.
///
/// Each step performs the elimination giving the shortest total relator
/// length; steps that would push the total past twice the original (or 200
/// letters, whichever is larger) are not taken.
pub fn simplify(p: &Presentation) -> Simplified {
    let (mut rels, mut dropped) = tidy(p.relators.clone());
    let mut names = p.names.clone();
    let mut labels = p.labels.clone();
    let limit = (2 * total_length(&rels)).max(200);
    let mut eliminated = Vec::new();
    loop {
        // (total length, generator, relators, value)
        let mut best: Option<(usize, usize, Vec<Word>, Word)> = None;
        for (ri, r) in rels.iter().enumerate() {
            let mut counts = vec![0usize; names.len()];
            for l in r.letters() {
                counts[l.generator] += 1;
            }
            for g in (0..names.len()).filter(|&g| counts[g] == 1) {
                let value = solve(r, g);
                let next = eliminate(&rels, ri, g, &value);
                let len = total_length(&next);
                let better = match &best {
                    None => true,
                    Some((bl, bg, ..)) => len < *bl || (len == *bl && g > *bg),
                };
                if len <= limit && better {
                    best = Some((len, g, next, value));
                }
            }
        }
        let Some((_, g, next, value)) = best else { break };
        let shift = |i: usize| if i > g { i - 1 } else { i };
        for w in labels.values_mut() {
            *w = w.substitute(g, &value).map_generators(shift);
        }
        eliminated.push(names.remove(g));
        let removed = rels.len() - 1 - next.len();
        let (tidied, d) = tidy(next.into_iter().map(|r| r.map_generators(shift)).collect());
        dropped += d + removed;
        rels = tidied;
    }
    Simplified { presentation: Presentation { names, relators: rels, labels }, eliminated, relators_dropped: dropped }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{abelianization, coset_enumerate};

    #[test]
    fn eliminates_defined_generators() {
        let p = Presentation::parse("gens: a b c ; rels: c = a b , a^2 , b^3 , [a,b] ; labels: mu1 = c ;").unwrap();
        let s = simplify(&p);
        assert_eq!(s.presentation.rank(), 2);
        assert_eq!(abelianization(&s.presentation), abelianization(&p));
        assert_eq!(s.presentation.label("mu1").unwrap().len(), 2);
    }

    #[test]
    fn preserves_order_of_finite_groups() {
        let p = Presentation::parse("gens: a b c d ; rels: a^3 , b^2 , (a b)^2 , c = a b a , d = c b c ;").unwrap();
        let s = simplify(&p);
        assert!(s.presentation.rank() <= 2);
        let order = |q: &Presentation| coset_enumerate(q, &[], 1000).unwrap().index();
        assert_eq!(order(&s.presentation), order(&p));
        assert_eq!(order(&p), Some(6));
    }

    #[test]
    fn implied_commutators_are_dropped() {
        let p = Presentation::parse("gens: a b c s ; rels: c = a b , [a,s] , [b,s] , [c,s] , a^2 , b^3 ;").unwrap();
        let s = simplify(&p);
        assert_eq!(s.presentation.rank(), 3);
        assert_eq!(s.presentation.relators().len(), 4);
    }

    #[test]
    fn can_reach_rank_zero() {
        let p = Presentation::parse("gens: a b ; rels: a , b a ;").unwrap();
        let s = simplify(&p);
        assert_eq!(s.presentation.rank(), 0);
        assert!(s.presentation.relators().is_empty());
        assert_eq!(coset_enumerate(&s.presentation, &[], 10).unwrap().index(), Some(1));
    }
}
