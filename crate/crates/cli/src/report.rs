//! The `sts-report/1` JSON document written by `analyze`.

use serde::{Deserialize, Serialize};
use sts_core::colorings::ClosedFormBounds;
use sts_core::search::{Certificate, ParamResult};

pub const SCHEMA: &str = "sts-report/1";

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema: String,
    pub n: usize,
    pub m: usize,
    pub construction: String,
    pub steiner: bool,
    pub parameters: Parameters,
    /// Present for Steiner systems only.
    pub bounds: Option<ClosedFormBounds>,
    pub verdicts: Vec<Verdict>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct Parameters {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<ParamReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha_star3: Option<ParamReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mc3: Option<ParamReport>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ParamReport {
    pub value: usize,
    pub exact: bool,
    pub certificate: Certificate,
    pub nodes: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seconds: Option<f64>,
}

impl ParamReport {
    pub fn new(result: ParamResult, timing: bool) -> Self {
        ParamReport {
            value: result.value,
            exact: result.exact,
            certificate: result.certificate,
            nodes: result.nodes,
            seconds: timing.then_some(result.seconds),
        }
    }

    fn exact_value(&self) -> Option<usize> {
        self.exact.then_some(self.value)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    AtMost,
    #[serde(rename = ">=")]
    AtLeast,
}

/// One inequality `lhs relation rhs`. `pass` is null when an input was not
/// computed exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub statement: String,
    pub lhs: Option<usize>,
    pub relation: Relation,
    pub rhs: Option<usize>,
    pub pass: Option<bool>,
}

impl Verdict {
    fn new(
        name: &str,
        statement: &str,
        lhs: Option<usize>,
        relation: Relation,
        rhs: Option<usize>,
    ) -> Self {
        let mut v = Verdict {
            name: name.into(),
            statement: statement.into(),
            lhs,
            relation,
            rhs,
            pass: None,
        };
        v.pass = v.evaluate();
        v
    }

    /// Recomputes the verdict from its own numbers.
    pub fn evaluate(&self) -> Option<bool> {
        let (l, r) = (self.lhs?, self.rhs?);
        Some(match self.relation {
            Relation::AtMost => l <= r,
            Relation::AtLeast => l >= r,
        })
    }
}

/// The four inequality checks between `α*₃`, `mc₃` and `n` for a Steiner
/// system of order `n`.
pub fn verdicts(n: usize, params: &Parameters) -> Vec<Verdict> {
    let a = params
        .alpha_star3
        .as_ref()
        .and_then(ParamReport::exact_value);
    let mc = params.mc3.as_ref().and_then(ParamReport::exact_value);
    vec![
        Verdict::new(
            "hole_number_upper",
            "alpha_star3 <= floor(n/3) - 1",
            a,
            Relation::AtMost,
            Some((n / 3).saturating_sub(1)),
        ),
        Verdict::new(
            "mc_absolute_lower",
            "mc3 >= ceil(2n/3) + 1",
            mc,
            Relation::AtLeast,
            Some((2 * n).div_ceil(3) + 1),
        ),
        Verdict::new(
            "mc_hole_lower",
            "mc3 >= n - 2 alpha_star3",
            mc,
            Relation::AtLeast,
            a.map(|a| n.saturating_sub(2 * a)),
        ),
        Verdict::new(
            "mc_hole_upper",
            "mc3 <= n - alpha_star3",
            mc,
            Relation::AtMost,
            a.map(|a| n.saturating_sub(a)),
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact(value: usize) -> Option<ParamReport> {
        Some(ParamReport {
            value,
            exact: true,
            certificate: Certificate::None,
            nodes: 0,
            seconds: None,
        })
    }

    #[test]
    fn fano_values_pass() {
        let p = Parameters {
            alpha: None,
            alpha_star3: exact(1),
            mc3: exact(6),
        };
        assert!(verdicts(7, &p).iter().all(|v| v.pass == Some(true)));
    }

    #[test]
    fn inexact_values_are_skipped() {
        let mut p = Parameters {
            alpha: None,
            alpha_star3: exact(2),
            mc3: exact(21),
        };
        p.mc3.as_mut().unwrap().exact = false;
        let v = verdicts(27, &p);
        assert_eq!(v[0].pass, Some(true));
        assert!(v[1..].iter().all(|v| v.pass.is_none()));
    }

    #[test]
    fn violations_fail() {
        let p = Parameters {
            alpha: None,
            alpha_star3: exact(3),
            mc3: exact(4),
        };
        let v = verdicts(9, &p);
        assert_eq!(
            v.iter().map(|v| v.pass).collect::<Vec<_>>(),
            vec![Some(false), Some(false), Some(true), Some(true)]
        );
    }

    #[test]
    fn unknown_fields_are_tolerated() {
        let text =
            r#"{"name":"x","statement":"","lhs":1,"relation":"<=","rhs":2,"pass":true,"extra":0}"#;
        let v: Verdict = serde_json::from_str(text).unwrap();
        assert_eq!(v.evaluate(), Some(true));
    }
}
