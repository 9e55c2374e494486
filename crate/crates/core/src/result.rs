use std::fmt;

use serde::{Deserialize, Serialize};

use crate::density::Weights;

/// Which route produced a dimension.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Rank of the reduced linear system.
    System,
    /// Case-by-case closed forms.
    Closed,
    /// The tabulated summary formula, kept for comparison only.
    Summary,
    /// Brute-force truncated Chevalley–Eilenberg complex.
    Oracle,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::System, Method::Closed, Method::Summary, Method::Oracle];
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::System => "system",
            Method::Closed => "closed",
            Method::Summary => "summary",
            Method::Oracle => "oracle",
        })
    }
}

impl std::str::FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "system" => Ok(Method::System),
            "closed" => Ok(Method::Closed),
            "summary" => Ok(Method::Summary),
            "oracle" => Ok(Method::Oracle),
            other => Err(format!(
                "unknown method {other:?} (expected system, closed, summary or oracle)"
            )),
        }
    }
}

/// A computed `dim H²` with its provenance. `dim` is `None` only when a
/// closed-form predictor has no formula for the case.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CohomResult {
    pub dim: Option<u64>,
    pub method: Method,
    pub case: String,
    pub alpha_max: Option<u32>,
    pub stable: bool,
    pub weights: Weights,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}
