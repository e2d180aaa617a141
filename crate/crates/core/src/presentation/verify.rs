use std::fmt;

use serde::{Deserialize, Serialize};

use super::abelian::{abelianization, AbelianGroup};
use super::coset::{coset_enumerate, CosetOutcome};
use super::rewriting::certify_abelian;
use super::tietze::simplify;
use super::{Presentation, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VerdictStatus {
    Isomorphic,
    NotIsomorphic,
    Inconclusive,
}

impl fmt::Display for VerdictStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerdictStatus::Isomorphic => "isomorphic",
            VerdictStatus::NotIsomorphic => "not-isomorphic",
            VerdictStatus::Inconclusive => "inconclusive",
        })
    }
}

/// Outcome of a bounded decision procedure with the facts it rests on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: VerdictStatus,
    pub evidence: Vec<String>,
}

impl Verdict {
    /// Panics when `evidence` is empty: every verdict cites something.
    pub fn new(status: VerdictStatus, evidence: Vec<String>) -> Self {
        assert!(!evidence.is_empty(), "a verdict must cite evidence");
        Verdict { status, evidence }
    }

    pub fn is_isomorphic(&self) -> bool {
        self.status == VerdictStatus::Isomorphic
    }

    pub fn summary(&self) -> String {
        self.evidence.join("; ")
    }

    fn with_prefix(mut self, facts: Vec<String>) -> Self {
        let mut all = facts;
        all.append(&mut self.evidence);
        self.evidence = all;
        self
    }
}

/// Caps for the bounded procedures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub max_cosets: usize,
    pub max_rules: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { max_cosets: 100_000, max_rules: 500 }
    }
}

/// Cap for each finite-quotient probe used to refute abelianness.
const QUOTIENT_CAP: usize = 5_000;

/// Looks for a finite quotient whose order exceeds the order of its abelianization.
fn nonabelian_quotient(p: &Presentation, cap: usize) -> Option<String> {
    let rank = p.rank();
    let gens: Vec<Word> = (0..rank).map(Word::generator).collect();
    let mut probes: Vec<(String, Vec<Word>)> = Vec::new();
    for e in [2, 3] {
        probes.push((format!("all generators of order {e}"), gens.iter().map(|g| g.pow(e)).collect()));
    }
    let mut coxeter: Vec<Word> = gens.iter().map(|g| g.pow(2)).collect();
    for i in 0..rank {
        for j in i + 1..rank {
            coxeter.push(gens[i].mul(&gens[j]).pow(3));
        }
    }
    probes.push(("generators of order 2 with pairwise products of order 3".to_string(), coxeter));

    for (label, extra) in probes {
        let q = p.with_relators(extra).expect("generators are in range");
        let ab = abelianization(&q);
        let Some(ab_order) = ab.order() else { continue };
        if let Ok(CosetOutcome::Complete { table, .. }) = coset_enumerate(&q, &[], cap) {
            let order = table.index() as u64;
            if order > ab_order {
                return Some(format!(
                    "quotient with {label} has order {order} but abelianization {ab} of order {ab_order}: group is not abelian"
                ));
            }
        }
    }
    None
}

/// Decides whether `p` presents the abelian group `target`, within `bounds`.
///
/// The abelianization must match; then, after Tietze simplification, a finite target is settled by
/// enumerating the group order (a group whose order equals that of its
/// abelianization is abelian) and an infinite one by rewriting every
/// commutator to the identity. Neither a positive nor a negative answer is
/// given without one of these certificates.
pub fn verify_abelian_isomorphism(p: &Presentation, target: &AbelianGroup, bounds: &Bounds) -> Verdict {
    let ab = abelianization(p);
    if &ab != target {
        return Verdict::new(
            VerdictStatus::NotIsomorphic,
            vec![format!("abelianization is {ab}, target is {target}")],
        );
    }
    let simplified = simplify(p);
    let facts = vec![format!("abelianization {ab} matches target"), simplified.evidence(p)];
    let p = &simplified.presentation;
    match target.order() {
        Some(n) => {
            let outcome = coset_enumerate(p, &[], bounds.max_cosets).expect("no subgroup generators");
            match outcome.index() {
                Some(order) if order as u64 == n => Verdict::new(
                    VerdictStatus::Isomorphic,
                    vec![outcome.evidence(), format!("group order {order} equals abelianization order: abelian")],
                ),
                Some(order) => Verdict::new(
                    VerdictStatus::NotIsomorphic,
                    vec![outcome.evidence(), format!("group order {order} differs from target order {n}")],
                ),
                None => Verdict::new(VerdictStatus::Inconclusive, vec![outcome.evidence()]),
            }
            .with_prefix(facts)
        }
        None => {
            let cert = certify_abelian(p, bounds.max_rules);
            match cert.status {
                VerdictStatus::Isomorphic | VerdictStatus::NotIsomorphic => cert.with_prefix(facts),
                VerdictStatus::Inconclusive => {
                    let cap = QUOTIENT_CAP.min(bounds.max_cosets);
                    match nonabelian_quotient(p, cap) {
                        Some(fact) => Verdict::new(VerdictStatus::NotIsomorphic, vec![fact])
                            .with_prefix(facts.into_iter().chain(cert.evidence).collect()),
                        None => cert.with_prefix(facts),
                    }
                }
            }
        }
    }
}
