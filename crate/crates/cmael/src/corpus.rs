//! Corpus files: an `agents:` header, then one `<SAT|UNSAT> <formula>` per
//! line. Blank lines and `#` comments are ignored.

use std::time::{Duration, Instant};

use anyhow::{anyhow, bail, Result};
use cmael_core::{parse, Formula, SolveOptions, Universe, Verdict};

use crate::run::{decide, Decision};

#[derive(Clone, Debug)]
pub struct Case {
    pub line: usize,
    pub expected: Verdict,
    pub text: String,
    pub formula: Formula,
}

#[derive(Clone, Debug)]
pub struct Corpus {
    pub universe: Universe,
    pub cases: Vec<Case>,
}

pub fn parse_corpus(text: &str) -> Result<Corpus> {
    let mut universe = None;
    let mut cases = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("agents:") {
            if universe.is_some() {
                bail!("line {line_no}: second agents header");
            }
            let names: Vec<&str> = rest.split(',').map(str::trim).collect();
            universe = Some(Universe::new(names).map_err(|e| anyhow!("line {line_no}: {e}"))?);
            continue;
        }
        let Some(u) = &universe else {
            bail!("line {line_no}: case before the agents header");
        };
        let (verdict, formula_text) = line
            .split_once(char::is_whitespace)
            .ok_or_else(|| anyhow!("line {line_no}: expected `<SAT|UNSAT> <formula>`"))?;
        let expected = match verdict {
            "SAT" => Verdict::Sat,
            "UNSAT" => Verdict::Unsat,
            other => bail!("line {line_no}: unknown verdict {other:?}"),
        };
        let formula_text = formula_text.trim();
        let formula = parse(formula_text, u).map_err(|e| anyhow!("line {line_no}: {e}"))?;
        cases.push(Case {
            line: line_no,
            expected,
            text: formula_text.to_string(),
            formula,
        });
    }
    let universe = universe.ok_or_else(|| anyhow!("missing `agents:` header"))?;
    Ok(Corpus { universe, cases })
}

#[derive(Debug)]
pub struct CaseReport {
    pub case: Case,
    pub decision: Result<Decision>,
    pub elapsed: Duration,
}

impl CaseReport {
    pub fn passed(&self) -> bool {
        matches!(&self.decision, Ok(d) if d.verdict() == self.case.expected)
    }

    /// One table row: status, expected and actual verdicts, nodes, time.
    pub fn row(&self) -> String {
        let status = if self.passed() { "pass" } else { "FAIL" };
        let (got, nodes) = match &self.decision {
            Ok(d) => (d.verdict().to_string(), d.outcome.node_count().to_string()),
            Err(e) => (format!("error ({e:#})"), "-".into()),
        };
        format!(
            "{status:4} {:5} {got:5} {nodes:>8} {:>9.3}ms  {}",
            self.case.expected.to_string(),
            self.elapsed.as_secs_f64() * 1e3,
            self.case.text
        )
    }
}

pub fn run_corpus(corpus: &Corpus, options: &SolveOptions) -> Vec<CaseReport> {
    corpus
        .cases
        .iter()
        .map(|case| {
            let start = Instant::now();
            let decision = decide(&case.formula, &corpus.universe, options);
            CaseReport {
                case: case.clone(),
                decision,
                elapsed: start.elapsed(),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_header_comments_and_cases() {
        let c = parse_corpus("# demo\nagents: a, b\n\nSAT p\nUNSAT p & ~p\n").unwrap();
        assert_eq!(c.universe.len(), 2);
        assert_eq!(c.cases.len(), 2);
        assert_eq!(c.cases[1].expected, Verdict::Unsat);
        assert_eq!(c.cases[1].line, 5);
    }

    #[test]
    fn malformed_lines_are_errors() {
        assert!(parse_corpus("SAT p\n").is_err());
        assert!(parse_corpus("agents: a\nMAYBE p\n").is_err());
        assert!(parse_corpus("agents: a\nSAT\n").is_err());
        assert!(parse_corpus("agents: a\nSAT D{z}p\n").is_err());
    }
}
