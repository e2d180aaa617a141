//! Reports: sections of verdict lines, rendered as text or as
//! `name TAB verdict TAB evidence` lines.

use serde::{Deserialize, Serialize};

use crate::presentation::{Verdict, VerdictStatus};

/// Process exit status when some check failed.
pub const EXIT_FAILURE: i32 = 1;
/// Process exit status when nothing failed but some verdict is inconclusive.
pub const EXIT_INCONCLUSIVE: i32 = 3;
/// Process exit status for unreadable input or out-of-range parameters.
pub const EXIT_INPUT: i32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Status {
    Positive,
    Negative,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Line {
    pub name: String,
    pub verdict: String,
    pub status: Status,
    pub evidence: Vec<String>,
}

impl Line {
    pub fn new(name: impl Into<String>, verdict: impl Into<String>, status: Status, evidence: Vec<String>) -> Self {
        Line { name: name.into(), verdict: verdict.into(), status, evidence }
    }

    pub fn from_verdict(name: impl Into<String>, v: &Verdict) -> Self {
        let status = match v.status {
            VerdictStatus::Isomorphic => Status::Positive,
            VerdictStatus::NotIsomorphic => Status::Negative,
            VerdictStatus::Inconclusive => Status::Inconclusive,
        };
        Line::new(name, v.status.to_string(), status, v.evidence.clone())
    }

    pub fn machine(&self) -> String {
        let clean = |s: &str| s.replace(['\t', '\n'], " ");
        format!("{}\t{}\t{}", clean(&self.name), clean(&self.verdict), clean(&self.evidence.join("; ")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Section {
    pub heading: String,
    pub lines: Vec<Line>,
    pub notes: Vec<String>,
}

impl Section {
    pub fn new(heading: impl Into<String>) -> Self {
        Section { heading: heading.into(), lines: Vec::new(), notes: Vec::new() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub title: String,
    pub sections: Vec<Section>,
}

impl Report {
    pub fn lines(&self) -> impl Iterator<Item = &Line> {
        self.sections.iter().flat_map(|s| s.lines.iter())
    }

    pub fn count(&self, status: Status) -> usize {
        self.lines().filter(|l| l.status == status).count()
    }

    /// 0 when every line is positive.
    pub fn exit_code(&self) -> i32 {
        if self.count(Status::Negative) > 0 {
            EXIT_FAILURE
        } else if self.count(Status::Inconclusive) > 0 {
            EXIT_INCONCLUSIVE
        } else {
            0
        }
    }

    pub fn render_text(&self) -> String {
        let mut s = format!("# {}\n", self.title);
        for sec in &self.sections {
            s.push_str(&format!("\n== {} ==\n", sec.heading));
            for l in &sec.lines {
                s.push_str(&format!("[{}] {}\n", l.verdict, l.name));
                for e in &l.evidence {
                    s.push_str(&format!("    {e}\n"));
                }
            }
            for n in &sec.notes {
                s.push_str(&format!("  note: {n}\n"));
            }
        }
        s.push_str(&format!(
            "\n{} positive, {} negative, {} inconclusive\n",
            self.count(Status::Positive),
            self.count(Status::Negative),
            self.count(Status::Inconclusive)
        ));
        s
    }

    pub fn render_machine(&self) -> String {
        self.lines().map(|l| l.machine() + "\n").collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        let mut r = Report { title: "t".into(), sections: vec![] };
        assert_eq!(r.exit_code(), 0);
        let mut s = Section::new("s");
        s.lines.push(Line::new("a", "ok", Status::Positive, vec![]));
        s.lines.push(Line::new("b", "inconclusive", Status::Inconclusive, vec!["cap".into()]));
        r.sections.push(s);
        assert_eq!(r.exit_code(), EXIT_INCONCLUSIVE);
        r.sections[0].lines.push(Line::new("c", "no", Status::Negative, vec![]));
        assert_eq!(r.exit_code(), EXIT_FAILURE);
        assert_eq!(r.render_machine().lines().nth(1), Some("b\tinconclusive\tcap"));
    }

    #[test]
    fn machine_lines_stay_on_one_line() {
        let l = Line::new("x\ty", "v", Status::Positive, vec!["a\nb".into(), "c".into()]);
        assert_eq!(l.machine(), "x y\tv\ta b; c");
    }
}
