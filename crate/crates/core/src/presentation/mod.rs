//! Finitely presented groups.
//!
//! The text form accepted by [`Presentation::parse`] is a sequence of
//! `;`-terminated sections:
//!
//! ```text
//! gens: a b s ; rels: a b a B A B , [a,s] , a^5 , a b = b a ; labels: mu1 = a , mu2 = b s ;
//! ```
//!
//! * `gens:` lists generator names. A name starts with a lowercase ASCII
//!   letter and continues with lowercase letters, digits or `_`.
//! * A name written in all uppercase (`A`, `X0`, `MU1`) is the inverse of the
//!   generator with the lowercased name.
//! * `rels:` holds comma-separated relators. A relator is a product of
//!   factors; `u = v` stands for `u v⁻¹`, and `u = v = w` for both equations.
//!   `1` is the empty word.
//! * A factor is a generator, an inverse, `(w)`, or the commutator
//!   `[u,v] = u v u⁻¹ v⁻¹`, optionally followed by `^n` with a signed integer `n`.
//! * `labels:` binds role names (`mu1`, `muK`, `lambdaK`, ...) to words.
//!
//! Sections may appear in any order, but `gens:` must precede the sections
//! that use the names. Whitespace is insignificant between tokens.

mod abelian;
mod coset;
mod rewriting;
mod snf;
mod tietze;
mod verify;
mod word;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use abelian::{abelianization, relation_matrix, AbelianGroup, AbelianizationMap};
pub use coset::{coset_enumerate, CosetOutcome, CosetTable};
pub use rewriting::{certify_abelian, RewritingSystem, ShortLex};
pub use snf::{determinant, smith_normal_form, IntMatrix, SmithForm};
pub use tietze::{simplify, Simplified};
pub use verify::{verify_abelian_isomorphism, Bounds, Verdict, VerdictStatus};
pub use word::{Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("word references generator {index}, but the presentation has {rank} generators")]
    UnknownGenerator { index: usize, rank: usize },
    #[error("duplicate generator name `{0}`")]
    DuplicateName(String),
    #[error("invalid generator name `{0}`")]
    InvalidName(String),
    #[error("label `{0}` is already bound")]
    DuplicateLabel(String),
    #[error("unknown generator `{name}` at byte {pos}")]
    UnknownName { name: String, pos: usize },
    #[error("parse error at byte {pos}: {message}")]
    Syntax { pos: usize, message: String },
}

/// A finitely presented group with role labels such as `mu1` or `lambdaK`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    names: Vec<String>,
    relators: Vec<Word>,
    labels: BTreeMap<String, Word>,
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_lowercase())
        && chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
}

impl Presentation {
    pub fn new(names: Vec<String>, relators: Vec<Word>) -> Result<Self, PresentationError> {
        let mut p = Presentation { names: Vec::new(), relators: Vec::new(), labels: BTreeMap::new() };
        for n in names {
            p.add_generator(n)?;
        }
        for r in relators {
            p.add_relator(r)?;
        }
        Ok(p)
    }

    /// Presentation with generators named `prefix0`, `prefix1`, ... and no relators.
    pub fn free(rank: usize, prefix: &str) -> Self {
        Presentation {
            names: (0..rank).map(|i| format!("{prefix}{i}")).collect(),
            relators: Vec::new(),
            labels: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn labels(&self) -> &BTreeMap<String, Word> {
        &self.labels
    }

    pub fn label(&self, role: &str) -> Option<&Word> {
        self.labels.get(role)
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn add_generator(&mut self, name: impl Into<String>) -> Result<usize, PresentationError> {
        let name = name.into();
        if !valid_name(&name) {
            return Err(PresentationError::InvalidName(name));
        }
        if self.names.contains(&name) {
            return Err(PresentationError::DuplicateName(name));
        }
        self.names.push(name);
        Ok(self.names.len() - 1)
    }

    /// Adds a generator, suffixing the name with `_` until it is unused.
    pub fn add_fresh_generator(&mut self, name: &str) -> usize {
        let mut candidate = name.to_string();
        while self.names.contains(&candidate) {
            candidate.push('_');
        }
        self.add_generator(candidate).expect("fresh names are valid")
    }

    fn check_word(&self, w: &Word) -> Result<(), PresentationError> {
        match w.max_generator() {
            Some(index) if index >= self.rank() => {
                Err(PresentationError::UnknownGenerator { index, rank: self.rank() })
            }
            _ => Ok(()),
        }
    }

    pub fn add_relator(&mut self, w: Word) -> Result<(), PresentationError> {
        self.check_word(&w)?;
        self.relators.push(w);
        Ok(())
    }

    pub fn set_label(&mut self, role: impl Into<String>, w: Word) -> Result<(), PresentationError> {
        self.check_word(&w)?;
        self.labels.insert(role.into(), w);
        Ok(())
    }

    /// Like [`Presentation::set_label`] but refuses to rebind a role.
    pub fn bind_label(&mut self, role: impl Into<String>, w: Word) -> Result<(), PresentationError> {
        let role = role.into();
        if self.labels.contains_key(&role) {
            return Err(PresentationError::DuplicateLabel(role));
        }
        self.set_label(role, w)
    }

    pub fn remove_label(&mut self, role: &str) -> Option<Word> {
        self.labels.remove(role)
    }

    pub fn clear_labels(&mut self) {
        self.labels.clear();
    }

    /// Copy with extra relators appended.
    pub fn with_relators(&self, extra: impl IntoIterator<Item = Word>) -> Result<Self, PresentationError> {
        let mut p = self.clone();
        for w in extra {
            p.add_relator(w)?;
        }
        Ok(p)
    }

    /// Appends `other`'s generators (renamed if they clash) and relators.
    /// Returns the index offset map for `other`'s generators.
    pub fn absorb(&mut self, other: &Presentation) -> Vec<usize> {
        let map: Vec<usize> = other.names.iter().map(|n| self.add_fresh_generator(n)).collect();
        for r in &other.relators {
            self.relators.push(r.map_generators(|g| map[g]));
        }
        map
    }

    pub fn word_text(&self, w: &Word) -> String {
        w.render(&self.names)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("gens: {} ; rels:", self.names.join(" "));
        let rels: Vec<String> = self.relators.iter().map(|r| self.word_text(r)).collect();
        if !rels.is_empty() {
            s.push(' ');
            s.push_str(&rels.join(" , "));
        }
        s.push_str(" ;");
        if !self.labels.is_empty() {
            let labels: Vec<String> =
                self.labels.iter().map(|(k, v)| format!("{k} = {}", self.word_text(v))).collect();
            s.push_str(&format!(" labels: {} ;", labels.join(" , ")));
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self, PresentationError> {
        parse::parse(text)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl std::str::FromStr for Presentation {
    type Err = PresentationError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Presentation::parse(s)
    }
}

mod parse {
    use super::*;

    #[derive(Debug, Clone, PartialEq)]
    enum Tok {
        Ident(String),
        Int(i64),
        Sym(char),
    }

    fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, PresentationError> {
        let bytes = text.as_bytes();
        let mut out = Vec::new();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i] as char;
            if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < bytes.len() && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
            } else if c.is_ascii_digit() || (c == '-' && matches!(out.last(), Some((_, Tok::Sym('^'))))) {
                let start = i;
                i += 1;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let value = text[start..i].parse::<i64>().map_err(|_| PresentationError::Syntax {
                    pos: start,
                    message: format!("bad integer `{}`", &text[start..i]),
                })?;
                out.push((start, Tok::Int(value)));
            } else if "[](),=^;:".contains(c) {
                out.push((i, Tok::Sym(c)));
                i += 1;
            } else {
                return Err(PresentationError::Syntax { pos: i, message: format!("unexpected character `{c}`") });
            }
        }
        Ok(out)
    }

    struct Parser {
        toks: Vec<(usize, Tok)>,
        pos: usize,
        end: usize,
        p: Presentation,
    }

    impl Parser {
        fn peek(&self) -> Option<&Tok> {
            self.toks.get(self.pos).map(|(_, t)| t)
        }

        fn offset(&self) -> usize {
            self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.end)
        }

        fn err<T>(&self, message: impl Into<String>) -> Result<T, PresentationError> {
            Err(PresentationError::Syntax { pos: self.offset(), message: message.into() })
        }

        fn expect(&mut self, c: char) -> Result<(), PresentationError> {
            if self.peek() == Some(&Tok::Sym(c)) {
                self.pos += 1;
                Ok(())
            } else {
                self.err(format!("expected `{c}`"))
            }
        }

        fn eat(&mut self, c: char) -> bool {
            if self.peek() == Some(&Tok::Sym(c)) {
                self.pos += 1;
                true
            } else {
                false
            }
        }

        fn run(mut self) -> Result<Presentation, PresentationError> {
            while let Some(tok) = self.peek().cloned() {
                let Tok::Ident(keyword) = tok else {
                    return self.err("expected a section keyword (gens, rels, labels)");
                };
                self.pos += 1;
                self.expect(':')?;
                match keyword.as_str() {
                    "gens" => self.gens()?,
                    "rels" => self.rels()?,
                    "labels" => self.labels()?,
                    other => return self.err(format!("unknown section `{other}`")),
                }
            }
            Ok(self.p)
        }

        fn gens(&mut self) -> Result<(), PresentationError> {
            loop {
                match self.peek().cloned() {
                    Some(Tok::Ident(name)) => {
                        self.pos += 1;
                        self.p.add_generator(name)?;
                    }
                    Some(Tok::Sym(';')) => {
                        self.pos += 1;
                        return Ok(());
                    }
                    _ => return self.err("expected a generator name or `;`"),
                }
            }
        }

        fn rels(&mut self) -> Result<(), PresentationError> {
            if self.eat(';') {
                return Ok(());
            }
            loop {
                let first = self.expr()?;
                let mut prev = first;
                let mut any_eq = false;
                while self.eat('=') {
                    let next = self.expr()?;
                    self.p.add_relator(Word::equation(&prev, &next))?;
                    prev = next;
                    any_eq = true;
                }
                if !any_eq {
                    self.p.add_relator(prev)?;
                }
                if self.eat(';') {
                    return Ok(());
                }
                self.expect(',')?;
            }
        }

        fn labels(&mut self) -> Result<(), PresentationError> {
            if self.eat(';') {
                return Ok(());
            }
            loop {
                let Some(Tok::Ident(role)) = self.peek().cloned() else {
                    return self.err("expected a label name");
                };
                self.pos += 1;
                self.expect('=')?;
                let w = self.expr()?;
                self.p.bind_label(role, w)?;
                if self.eat(';') {
                    return Ok(());
                }
                self.expect(',')?;
            }
        }

        fn expr(&mut self) -> Result<Word, PresentationError> {
            let mut acc = Word::identity();
            loop {
                match self.peek() {
                    Some(Tok::Ident(_)) | Some(Tok::Sym('[')) | Some(Tok::Sym('(')) | Some(Tok::Int(_)) => {
                        let f = self.factor()?;
                        acc = acc.mul(&f);
                    }
                    _ => return Ok(acc),
                }
            }
        }

        fn factor(&mut self) -> Result<Word, PresentationError> {
            let at = self.offset();
            let base = match self.peek().cloned() {
                Some(Tok::Ident(name)) => {
                    self.pos += 1;
                    self.atom(&name, at)?
                }
                Some(Tok::Int(1)) => {
                    self.pos += 1;
                    Word::identity()
                }
                Some(Tok::Int(_)) => return self.err("only `1` may appear as a literal"),
                Some(Tok::Sym('[')) => {
                    self.pos += 1;
                    let x = self.expr()?;
                    self.expect(',')?;
                    let y = self.expr()?;
                    self.expect(']')?;
                    Word::commutator(&x, &y)
                }
                Some(Tok::Sym('(')) => {
                    self.pos += 1;
                    let x = self.expr()?;
                    self.expect(')')?;
                    x
                }
                _ => return self.err("expected a factor"),
            };
            if self.eat('^') {
                match self.peek().cloned() {
                    Some(Tok::Int(n)) => {
                        self.pos += 1;
                        Ok(base.pow(n))
                    }
                    _ => self.err("expected an integer exponent"),
                }
            } else {
                Ok(base)
            }
        }

        fn atom(&self, token: &str, pos: usize) -> Result<Word, PresentationError> {
            if let Some(g) = self.p.generator_index(token) {
                return Ok(Word::generator(g));
            }
            let has_lower = token.chars().any(|c| c.is_ascii_lowercase());
            if !has_lower {
                let lowered = token.to_ascii_lowercase();
                if let Some(g) = self.p.generator_index(&lowered) {
                    return Ok(Word::generator(g).inverse());
                }
            }
            Err(PresentationError::UnknownName { name: token.to_string(), pos })
        }
    }

    pub(super) fn parse(text: &str) -> Result<Presentation, PresentationError> {
        let toks = tokenize(text)?;
        Parser { toks, pos: 0, end: text.len(), p: Presentation::free(0, "") }.run()
    }
}
