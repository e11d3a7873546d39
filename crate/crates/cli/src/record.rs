//! The JSON record printed by every computing subcommand.
//!
//! Field names are declared in alphabetical order so that the serialized key
//! order is canonical: a record printed, parsed (into this type or into a
//! generic JSON value) and printed again is byte-identical.

use std::collections::BTreeMap;

use branchkit::{Error, Label, Ranks};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub command: String,
    pub elapsed_ms: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorRecord>,
    pub query: QueryEcho,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub result: Option<ResultValue>,
    /// Decomposition candidates left out for failing the stable range.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub skipped: Option<u64>,
    pub stable_range: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum QueryEcho {
    Branch {
        g: Vec<LabelOut>,
        h: Vec<LabelOut>,
        pair: String,
        ranks: RanksOut,
    },
    Decompose {
        g: Vec<LabelOut>,
        pair: String,
        ranks: RanksOut,
    },
    Lr {
        left: Vec<usize>,
        outer: Vec<usize>,
        right: Vec<usize>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ResultValue {
    Count(u64),
    Decomposition(BTreeMap<String, u64>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inequality: Option<String>,
    pub kind: String,
    pub message: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rule: Option<String>,
}

impl From<&Error> for ErrorRecord {
    fn from(e: &Error) -> Self {
        let (kind, rule, inequality) = match e {
            Error::StableRangeViolation { rule, inequality } => {
                ("stable_range_violation", Some(rule.clone()), Some(inequality.clone()))
            }
            Error::Parse(_) | Error::NotAPartition(_) => ("parse", None, None),
            Error::InvalidLabel(_) => ("invalid_label", None, None),
            Error::InvalidQuery(_) | Error::UnknownPair(_) => ("invalid_query", None, None),
            _ => ("internal", None, None),
        };
        ErrorRecord {
            inequality,
            kind: kind.to_string(),
            message: e.to_string(),
            rule,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RanksOut {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    pub n: usize,
}

impl From<Ranks> for RanksOut {
    fn from(r: Ranks) -> Self {
        RanksOut { m: r.m, n: r.n }
    }
}

/// A label as JSON: a bare integer array, or `{"minus": [...], "plus": [...]}`
/// for a GL label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LabelOut {
    Gl { minus: Vec<usize>, plus: Vec<usize> },
    Part(Vec<usize>),
}

impl From<&Label> for LabelOut {
    fn from(l: &Label) -> Self {
        match l {
            Label::Gl(g) => LabelOut::Gl {
                minus: g.minus.parts().to_vec(),
                plus: g.plus.parts().to_vec(),
            },
            Label::Part(p) => LabelOut::Part(p.parts().to_vec()),
        }
    }
}

pub fn labels_out(labels: &[Label]) -> Vec<LabelOut> {
    labels.iter().map(LabelOut::from).collect()
}

/// Key used for a decomposition entry, e.g. `"[2]"` or `"[1]/[] ⊗ []/[]"`.
pub fn entry_key(labels: &[Label]) -> String {
    labels.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ⊗ ")
}

impl OutputRecord {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("records always serialize")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// Header and rows, tab separated.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        let result_rows: Vec<(String, String)> = match &self.result {
            Some(ResultValue::Count(c)) => vec![(String::new(), c.to_string())],
            Some(ResultValue::Decomposition(map)) => map.iter().map(|(k, v)| (k.clone(), v.to_string())).collect(),
            None => vec![],
        };
        let fmt_labels = |ls: &[LabelOut]| ls.iter().map(label_text).collect::<Vec<_>>().join(" ");
        match &self.query {
            QueryEcho::Branch { g, h, pair, ranks } => {
                out.push_str("pair\tn\tm\tg\th\tmultiplicity\tstable_range\n");
                for (_, v) in &result_rows {
                    out.push_str(&format!(
                        "{pair}\t{}\t{}\t{}\t{}\t{v}\t{}\n",
                        ranks.n,
                        ranks.m.map(|m| m.to_string()).unwrap_or_default(),
                        fmt_labels(g),
                        fmt_labels(h),
                        self.stable_range
                    ));
                }
            }
            QueryEcho::Decompose { g, pair, ranks } => {
                out.push_str("pair\tn\tm\tg\th\tmultiplicity\tstable_range\n");
                for (k, v) in &result_rows {
                    out.push_str(&format!(
                        "{pair}\t{}\t{}\t{}\t{k}\t{v}\t{}\n",
                        ranks.n,
                        ranks.m.map(|m| m.to_string()).unwrap_or_default(),
                        fmt_labels(g),
                        self.stable_range
                    ));
                }
            }
            QueryEcho::Lr { left, outer, right } => {
                out.push_str("outer\tleft\tright\tcoefficient\n");
                for (_, v) in &result_rows {
                    out.push_str(&format!("{}\t{}\t{}\t{v}\n", brackets(outer), brackets(left), brackets(right)));
                }
            }
        }
        out
    }
}

fn brackets(parts: &[usize]) -> String {
    let inner: Vec<String> = parts.iter().map(ToString::to_string).collect();
    format!("[{}]", inner.join(","))
}

fn label_text(l: &LabelOut) -> String {
    match l {
        LabelOut::Gl { minus, plus } => format!("{}/{}", brackets(plus), brackets(minus)),
        LabelOut::Part(p) => brackets(p),
    }
}
