//! Todd–Coxeter coset enumeration, Felsch strategy.
//!
//! Cosets are defined in order (first undefined table entry first) and every
//! definition or deduction is immediately followed by scanning the cyclic
//! conjugates of the relators through the affected entry. The cap counts
//! every coset ever defined, including those later lost to coincidences, so a
//! run is deterministic for a fixed presentation, subgroup and cap.

use std::collections::BTreeSet;

use super::{Letter, Presentation, PresentationError, Word};

const NONE: u32 = u32::MAX;

/// A complete coset table, renumbered so cosets are `0..index` with the subgroup at `0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetTable {
    cols: usize,
    table: Vec<u32>,
}

impl CosetTable {
    pub fn index(&self) -> usize {
        if self.cols == 0 {
            1
        } else {
            self.table.len() / self.cols
        }
    }

    pub fn act(&self, coset: usize, letter: Letter) -> usize {
        self.table[coset * self.cols + letter.code()] as usize
    }

    pub fn trace(&self, coset: usize, w: &Word) -> usize {
        w.letters().iter().fold(coset, |c, &l| self.act(c, l))
    }

    /// Right action of generator `g` on cosets as a permutation.
    pub fn permutation(&self, g: usize) -> Vec<usize> {
        (0..self.index()).map(|c| self.act(c, Letter::gen(g))).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CosetOutcome {
    Complete { table: CosetTable, defined: usize },
    Exhausted { cap: usize, defined: usize, live: usize },
}

impl CosetOutcome {
    pub fn index(&self) -> Option<usize> {
        match self {
            CosetOutcome::Complete { table, .. } => Some(table.index()),
            CosetOutcome::Exhausted { .. } => None,
        }
    }

    pub fn table(&self) -> Option<&CosetTable> {
        match self {
            CosetOutcome::Complete { table, .. } => Some(table),
            CosetOutcome::Exhausted { .. } => None,
        }
    }

    pub fn evidence(&self) -> String {
        match self {
            CosetOutcome::Complete { table, defined } => {
                format!("coset enumeration closed: index {} ({} cosets defined)", table.index(), defined)
            }
            CosetOutcome::Exhausted { cap, live, .. } => {
                format!("coset enumeration hit the cap of {cap} cosets ({live} live) without closing")
            }
        }
    }
}

struct Exhausted;

struct Enumerator {
    cols: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    live: usize,
    cap: usize,
    by_first_letter: Vec<Vec<Vec<usize>>>,
    relators: Vec<Vec<usize>>,
    subgroup: Vec<Vec<usize>>,
    deductions: Vec<(u32, usize)>,
}

fn codes(w: &Word) -> Vec<usize> {
    w.letters().iter().map(|l| l.code()).collect()
}

impl Enumerator {
    fn new(p: &Presentation, subgroup: &[Word], cap: usize) -> Self {
        let cols = 2 * p.rank();
        let mut conjugates = BTreeSet::new();
        let mut relators = Vec::new();
        for r in p.relators() {
            let r = r.cyclic_reduce();
            if r.is_empty() {
                continue;
            }
            relators.push(codes(&r));
            for w in [codes(&r), codes(&r.inverse())] {
                for k in 0..w.len() {
                    let mut rot = w[k..].to_vec();
                    rot.extend_from_slice(&w[..k]);
                    conjugates.insert(rot);
                }
            }
        }
        let mut by_first_letter = vec![Vec::new(); cols];
        for c in conjugates {
            by_first_letter[c[0]].push(c);
        }
        Enumerator {
            cols,
            table: Vec::new(),
            parent: Vec::new(),
            live: 0,
            cap,
            by_first_letter,
            relators,
            subgroup: subgroup.iter().map(|w| codes(&w.free_reduce())).collect(),
            deductions: Vec::new(),
        }
    }

    fn defined(&self) -> usize {
        self.parent.len()
    }

    fn get(&self, c: u32, x: usize) -> u32 {
        self.table[c as usize * self.cols + x]
    }

    fn put(&mut self, c: u32, x: usize, v: u32) {
        self.table[c as usize * self.cols + x] = v;
    }

    fn is_live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn new_coset(&mut self) -> Result<u32, Exhausted> {
        if self.defined() >= self.cap {
            return Err(Exhausted);
        }
        let c = self.defined() as u32;
        self.parent.push(c);
        self.table.extend(std::iter::repeat_n(NONE, self.cols));
        self.live += 1;
        Ok(c)
    }

    fn define(&mut self, c: u32, x: usize) -> Result<(), Exhausted> {
        let d = self.new_coset()?;
        self.put(c, x, d);
        self.put(d, x ^ 1, c);
        self.deductions.push((c, x));
        Ok(())
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut root = c;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut k = c;
        while self.parent[k as usize] != root {
            let next = self.parent[k as usize];
            self.parent[k as usize] = root;
            k = next;
        }
        root
    }

    fn merge(&mut self, a: u32, b: u32, queue: &mut Vec<u32>) {
        let (ra, rb) = (self.rep(a), self.rep(b));
        if ra != rb {
            let (keep, lose) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[lose as usize] = keep;
            self.live -= 1;
            queue.push(lose);
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut k = 0;
        while k < queue.len() {
            let g = queue[k];
            k += 1;
            for x in 0..self.cols {
                let d = self.get(g, x);
                if d == NONE {
                    continue;
                }
                self.put(d, x ^ 1, NONE);
                let mu = self.rep(g);
                let nu = self.rep(d);
                let mu_x = self.get(mu, x);
                if mu_x != NONE {
                    self.merge(nu, mu_x, &mut queue);
                } else {
                    let nu_inv = self.get(nu, x ^ 1);
                    if nu_inv != NONE {
                        self.merge(mu, nu_inv, &mut queue);
                    } else {
                        self.put(mu, x, nu);
                        self.put(nu, x ^ 1, mu);
                        self.deductions.push((mu, x));
                    }
                }
            }
        }
    }

    /// Scans `w` at `c`, recording a deduction or coincidence when the
    /// trace closes or leaves exactly one gap.
    fn scan(&mut self, c: u32, w: &[usize]) {
        let (mut f, mut i) = (c, 0usize);
        let (mut b, mut j) = (c, w.len());
        while i < j {
            let next = self.get(f, w[i]);
            if next == NONE {
                break;
            }
            f = next;
            i += 1;
        }
        if i == j {
            if f != b {
                self.coincidence(f, b);
            }
            return;
        }
        while j > i {
            let next = self.get(b, w[j - 1] ^ 1);
            if next == NONE {
                break;
            }
            b = next;
            j -= 1;
        }
        if i == j {
            self.coincidence(f, b);
        } else if j == i + 1 {
            let x = w[i];
            self.put(f, x, b);
            self.put(b, x ^ 1, f);
            self.deductions.push((f, x));
        }
    }

    /// Like [`Enumerator::scan`] but defines new cosets until the trace closes.
    fn scan_and_fill(&mut self, c: u32, w: &[usize]) -> Result<(), Exhausted> {
        loop {
            if !self.is_live(c) {
                return Ok(());
            }
            let (mut f, mut i) = (c, 0usize);
            let (mut b, mut j) = (c, w.len());
            while i < j && self.get(f, w[i]) != NONE {
                f = self.get(f, w[i]);
                i += 1;
            }
            if i == j {
                if f != b {
                    self.coincidence(f, b);
                    self.process_deductions();
                }
                return Ok(());
            }
            while j > i && self.get(b, w[j - 1] ^ 1) != NONE {
                b = self.get(b, w[j - 1] ^ 1);
                j -= 1;
            }
            if i == j {
                self.coincidence(f, b);
                self.process_deductions();
                return Ok(());
            }
            if j == i + 1 {
                let x = w[i];
                self.put(f, x, b);
                self.put(b, x ^ 1, f);
                self.deductions.push((f, x));
                self.process_deductions();
                return Ok(());
            }
            self.define(f, w[i])?;
            self.process_deductions();
        }
    }

    fn process_deductions(&mut self) {
        while let Some((c, x)) = self.deductions.pop() {
            if !self.is_live(c) {
                continue;
            }
            for k in 0..self.by_first_letter[x].len() {
                if !self.is_live(c) {
                    break;
                }
                let w = std::mem::take(&mut self.by_first_letter[x][k]);
                self.scan(c, &w);
                self.by_first_letter[x][k] = w;
            }
            let d = if self.is_live(c) { self.get(c, x) } else { NONE };
            if d != NONE && self.is_live(d) {
                for k in 0..self.by_first_letter[x ^ 1].len() {
                    if !self.is_live(d) {
                        break;
                    }
                    let w = std::mem::take(&mut self.by_first_letter[x ^ 1][k]);
                    self.scan(d, &w);
                    self.by_first_letter[x ^ 1][k] = w;
                }
            }
            for k in 0..self.subgroup.len() {
                let w = std::mem::take(&mut self.subgroup[k]);
                self.scan(0, &w);
                self.subgroup[k] = w;
            }
        }
    }

    fn fill(&mut self) -> Result<(), Exhausted> {
        let mut c = 0u32;
        while (c as usize) < self.defined() {
            if self.is_live(c) {
                for x in 0..self.cols {
                    if !self.is_live(c) {
                        break;
                    }
                    if self.get(c, x) == NONE {
                        self.define(c, x)?;
                        self.process_deductions();
                    }
                }
            }
            c += 1;
        }
        Ok(())
    }

    /// Scans every relator at every live coset; returns whether anything changed.
    fn verify(&mut self) -> bool {
        let before = (self.live, self.defined());
        let mut changed = false;
        for c in 0..self.defined() as u32 {
            for k in 0..self.relators.len() {
                if !self.is_live(c) {
                    break;
                }
                let w = std::mem::take(&mut self.relators[k]);
                self.scan(c, &w);
                self.relators[k] = w;
                if !self.deductions.is_empty() {
                    changed = true;
                    self.process_deductions();
                }
            }
        }
        for k in 0..self.subgroup.len() {
            let w = std::mem::take(&mut self.subgroup[k]);
            self.scan(0, &w);
            self.subgroup[k] = w;
            if !self.deductions.is_empty() {
                changed = true;
                self.process_deductions();
            }
        }
        changed || before != (self.live, self.defined())
    }

    fn run(&mut self) -> Result<(), Exhausted> {
        self.new_coset()?;
        for k in 0..self.subgroup.len() {
            let w = self.subgroup[k].clone();
            self.scan_and_fill(0, &w)?;
        }
        loop {
            self.fill()?;
            if !self.verify() {
                return Ok(());
            }
        }
    }

    fn compact(&mut self) -> CosetTable {
        let mut map = vec![NONE; self.defined()];
        let mut next = 0u32;
        for c in 0..self.defined() {
            if self.is_live(c as u32) {
                map[c] = next;
                next += 1;
            }
        }
        let mut table = Vec::with_capacity(next as usize * self.cols);
        for c in 0..self.defined() {
            if map[c] != NONE {
                for x in 0..self.cols {
                    table.push(map[self.get(c as u32, x) as usize]);
                }
            }
        }
        CosetTable { cols: self.cols, table }
    }
}

/// Enumerates the cosets of the subgroup generated by `subgroup` in `p`.
pub fn coset_enumerate(
    p: &Presentation,
    subgroup: &[Word],
    max_cosets: usize,
) -> Result<CosetOutcome, PresentationError> {
    for w in subgroup {
        if let Some(index) = w.max_generator().filter(|&g| g >= p.rank()) {
            return Err(PresentationError::UnknownGenerator { index, rank: p.rank() });
        }
    }
    let mut e = Enumerator::new(p, subgroup, max_cosets);
    match e.run() {
        Ok(()) => Ok(CosetOutcome::Complete { table: e.compact(), defined: e.defined() }),
        Err(Exhausted) => {
            Ok(CosetOutcome::Exhausted { cap: max_cosets, defined: e.defined(), live: e.live })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(text: &str, cap: usize) -> Option<usize> {
        coset_enumerate(&Presentation::parse(text).unwrap(), &[], cap).unwrap().index()
    }

    #[test]
    fn cyclic_five() {
        assert_eq!(order("gens: a ; rels: a^5 ;", 100), Some(5));
    }

    #[test]
    fn symmetric_three() {
        assert_eq!(order("gens: a b ; rels: a^3 , b^2 , a b a b ;", 100), Some(6));
    }

    #[test]
    fn infinite_cyclic_exhausts() {
        let out = coset_enumerate(&Presentation::parse("gens: a ; rels: ;").unwrap(), &[], 100).unwrap();
        assert!(matches!(out, CosetOutcome::Exhausted { cap: 100, .. }));
        assert!(out.evidence().contains("cap of 100"));
    }

    #[test]
    fn trivial_presentations() {
        assert_eq!(order("gens: ; rels: ;", 10), Some(1));
        assert_eq!(order("gens: a b ; rels: a , b ;", 10), Some(1));
        assert_eq!(order("gens: a b ; rels: a b , a^2 b ;", 10), Some(1));
    }

    #[test]
    fn subgroup_index() {
        let p = Presentation::parse("gens: a b ; rels: a^3 , b^2 , a b a b ;").unwrap();
        let out = coset_enumerate(&p, &[Word::generator(0)], 100).unwrap();
        assert_eq!(out.index(), Some(2));
        let out = coset_enumerate(&p, &[Word::generator(1)], 100).unwrap();
        assert_eq!(out.index(), Some(3));
    }

    #[test]
    fn rejects_unknown_subgroup_generator() {
        let p = Presentation::parse("gens: a ; rels: a^2 ;").unwrap();
        assert!(coset_enumerate(&p, &[Word::generator(4)], 10).is_err());
    }

    #[test]
    fn complete_table_satisfies_relators() {
        let p = Presentation::parse("gens: a b ; rels: a^4 , b^2 , (a b)^2 ;").unwrap();
        let out = coset_enumerate(&p, &[], 1000).unwrap();
        let t = out.table().unwrap();
        assert_eq!(t.index(), 8);
        for c in 0..t.index() {
            for r in p.relators() {
                assert_eq!(t.trace(c, r), c);
            }
        }
    }

    #[test]
    fn deterministic() {
        let p = Presentation::parse("gens: a b ; rels: a^3 , b^3 , (a b)^3 ;").unwrap();
        let a = coset_enumerate(&p, &[], 50).unwrap();
        let b = coset_enumerate(&p, &[], 50).unwrap();
        assert_eq!(a, b);
    }
}
