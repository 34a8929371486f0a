use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    pub n: i64,
    pub k: i64,
    pub l: i64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checks {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub divisible_by_n: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub cube_bound: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rank_lower: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rank_upper: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub methods_agree: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub square: Option<bool>,
}

impl Checks {
    pub fn all_passed(&self) -> bool {
        [
            self.divisible_by_n,
            self.cube_bound,
            self.rank_lower,
            self.rank_upper,
            self.methods_agree,
            self.square,
        ]
        .iter()
        .all(|c| c.unwrap_or(true))
    }

    fn failed_names(&self) -> Vec<&'static str> {
        let named = [
            ("divisible_by_n", self.divisible_by_n),
            ("cube_bound", self.cube_bound),
            ("rank_lower", self.rank_lower),
            ("rank_upper", self.rank_upper),
            ("methods_agree", self.methods_agree),
            ("square", self.square),
        ];
        named
            .iter()
            .filter(|(_, v)| *v == Some(false))
            .map(|(name, _)| *name)
            .collect()
    }
}

/// One output line. Big integers are decimal strings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub params: Params,
    /// Reduced parameters, present only when they differ from `params`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub canonical: Option<Params>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub torsion: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub free_rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tau: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub a: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub multiplier: Option<u32>,
    /// Parity rule for the factor 6 that this instance is consistent with.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub labeling: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub chebyshev_distance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub checks: Option<Checks>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub methods_used: Vec<String>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty", default)]
    pub timings_ms: BTreeMap<String, f64>,
}

impl OutputRecord {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("records always serialize")
    }

    pub fn consistent(&self) -> bool {
        self.checks.as_ref().is_none_or(Checks::all_passed)
    }

    pub fn new(params: Params) -> Self {
        OutputRecord {
            params,
            canonical: None,
            error: None,
            torsion: None,
            free_rank: None,
            tau: None,
            a: None,
            multiplier: None,
            labeling: None,
            chebyshev_distance: None,
            checks: None,
            methods_used: Vec::new(),
            timings_ms: BTreeMap::new(),
        }
    }

    fn label(&self) -> String {
        let p = self.canonical.unwrap_or(self.params);
        format!("I({},{},{})", p.n, p.k, p.l)
    }

    /// Human-readable single line.
    pub fn to_text(&self) -> String {
        let mut out = self.label();
        if self.canonical.is_some() {
            let p = self.params;
            out.push_str(&format!(" (from I({},{},{}))", p.n, p.k, p.l));
        }
        if let Some(e) = &self.error {
            out.push_str(&format!("  error: {e}"));
            return out;
        }
        if let Some(t) = &self.torsion {
            let mut parts: Vec<String> = t.iter().map(|d| format!("Z_{d}")).collect();
            if parts.is_empty() {
                parts.push("0".into());
            }
            out.push_str(&format!("  Jac = {}", parts.join(" + ")));
        }
        if let Some(tau) = &self.tau {
            out.push_str(&format!("  tau = {tau}"));
        }
        if let (Some(a), Some(m)) = (&self.a, self.multiplier) {
            let p = self.canonical.unwrap_or(self.params).n;
            if m == 1 {
                out.push_str(&format!(" = {p} * {a}^2"));
            } else {
                out.push_str(&format!(" = {m} * {p} * {a}^2"));
            }
        }
        if !self.methods_used.is_empty() {
            out.push_str(&format!("  [{}]", self.methods_used.join(", ")));
        }
        if let Some(c) = &self.checks {
            let failed = c.failed_names();
            if failed.is_empty() {
                out.push_str("  ok");
            } else {
                out.push_str(&format!("  FAILED: {}", failed.join(", ")));
            }
        }
        out
    }
}
