//! Result reports printed by the command-line tool.

use std::fmt::Write as _;

use serde::Serialize;

use crate::idp::IdpOutcome;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Answer {
    Yes,
    No,
}

impl From<bool> for Answer {
    fn from(yes: bool) -> Self {
        if yes {
            Answer::Yes
        } else {
            Answer::No
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ReportStats {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub components: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub interference_edges: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table_entries: Option<usize>,
    /// Only filled in on request, so reports stay byte-stable by default.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResultReport {
    pub solver: String,
    pub seed: u64,
    pub answer: Answer,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub paths: Option<Vec<Vec<usize>>>,
    pub stats: ReportStats,
}

impl ResultReport {
    pub fn new(solver: &str, seed: u64, yes: bool, stats: ReportStats) -> Self {
        ResultReport { solver: solver.to_string(), seed, answer: yes.into(), paths: None, stats }
    }

    pub fn from_idp(out: &IdpOutcome, seed: u64) -> Self {
        let s = &out.stats;
        let stats = ReportStats {
            n: s.n,
            m: s.m,
            k: s.k,
            components: Some(s.components),
            interference_edges: Some(s.interference_edges),
            table_entries: Some(s.table_entries),
            wall_time_ms: None,
        };
        let mut report = ResultReport::new("idp", seed, out.answer, stats);
        report.paths = out.solution.as_ref().map(|sol| sol.paths.clone());
        report
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let answer = match self.answer {
            Answer::Yes => "yes",
            Answer::No => "no",
        };
        let _ = writeln!(out, "answer: {answer}");
        let _ = writeln!(out, "solver: {} (seed {})", self.solver, self.seed);
        let s = &self.stats;
        let _ = write!(out, "stats: n={} m={} k={}", s.n, s.m, s.k);
        for (name, value) in [
            ("components", s.components),
            ("interference_edges", s.interference_edges),
            ("table_entries", s.table_entries),
        ] {
            if let Some(v) = value {
                let _ = write!(out, " {name}={v}");
            }
        }
        if let Some(ms) = s.wall_time_ms {
            let _ = write!(out, " wall_time_ms={ms:.3}");
        }
        out.push('\n');
        if let Some(paths) = &self.paths {
            for p in paths {
                let _ = writeln!(out, "path: {}", p.iter().map(usize::to_string).collect::<Vec<_>>().join(" "));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::idp::solve_idp;
    use crate::instance::fixtures::*;

    #[test]
    fn idp_report_shapes() {
        let out = solve_idp(&c5_two_pairs()).unwrap();
        let r = ResultReport::from_idp(&out, 7);
        let text = r.to_text();
        assert!(text.starts_with("answer: yes\nsolver: idp (seed 7)\nstats: n=5 m=5 k=2"));
        assert!(text.ends_with("path: 0 1 2\npath: 2 3 4\n"));
        let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(json["answer"], "yes");
        assert_eq!(json["paths"][1], serde_json::json!([2, 3, 4]));
        assert!(json["stats"].get("wall_time_ms").is_none());
    }

    #[test]
    fn no_report_has_no_paths() {
        let r = ResultReport::from_idp(&solve_idp(&caterpillar_tree()).unwrap(), 0);
        assert_eq!(r.answer, Answer::No);
        assert!(!r.to_json().contains("paths"));
    }
}
