//! Parameter sweeps over singular grids, method comparison and reports.

use std::fmt;
use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::closed_form::{classify, dim_h2_closed_form, summary_prediction, CaseTag};
use crate::complex::{brute_force_h2, default_alpha_max};
use crate::density::Weights;
use crate::error::Result;
use crate::rational::Rational;
use crate::reduced::{system_rank, Perturbation};
use crate::result::CohomResult;

/// When the brute-force oracle participates in a sweep.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum OraclePolicy {
    /// On for `n ≤ 2, k ≤ 4`.
    #[default]
    Auto,
    Always,
    Never,
}

impl OraclePolicy {
    pub fn applies(self, n: usize, k: u64) -> bool {
        match self {
            OraclePolicy::Auto => n <= 2 && k <= 4,
            OraclePolicy::Always => true,
            OraclePolicy::Never => false,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct SweepConfig {
    pub n: usize,
    pub k_max: u64,
    pub oracle: OraclePolicy,
    /// Oracle truncation; `None` means `k + 3`.
    pub alpha_max: Option<u32>,
    pub perturbation: Option<Perturbation>,
}

/// All `t ∈ {0,…,k−1}ⁿ` in lexicographic order.
pub fn t_grid(n: usize, k: u64) -> Vec<Vec<u64>> {
    if k == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut t = vec![0u64; n];
    loop {
        out.push(t.clone());
        let mut pos = n;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            t[pos] += 1;
            if t[pos] < k {
                break;
            }
            t[pos] = 0;
        }
    }
}

/// The nonresonant representative `λ_i = 1`, `μ = k + n`.
pub fn nonresonant_weights(n: usize, k: u64) -> Weights {
    Weights::new(vec![Rational::one(); n], Rational::from(k + n as u64))
}

/// For each `k ≤ k_max`: the singular grid, then one nonresonant row.
pub fn sweep_instances(n: usize, k_max: u64) -> Vec<(u64, Weights)> {
    let mut out = Vec::new();
    for k in 0..=k_max {
        for t in t_grid(n, k) {
            out.push((k, Weights::from_t_vector(&t, k)));
        }
        out.push((k, nonresonant_weights(n, k)));
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    pub n: usize,
    pub k: u64,
    pub weights: Weights,
    pub case: CaseTag,
    pub ell: u64,
    pub dim_system: u64,
    pub dim_closed: Option<u64>,
    /// Twice the summary value, kept exact.
    pub dim_summary_doubled: Option<i64>,
    pub oracle: Option<CohomResult>,
}

impl SweepRow {
    pub fn evaluate(weights: &Weights, perturbation: Option<&Perturbation>) -> SweepRow {
        let case = classify(weights);
        let n = weights.n();
        let sr = system_rank(weights, perturbation);
        SweepRow {
            n,
            k: weights.delta_natural().unwrap_or(0),
            weights: weights.clone(),
            ell: sr.map_or(0, |s| s.ell),
            dim_system: sr.map_or(0, |s| s.dim),
            dim_closed: dim_h2_closed_form(&case, n),
            dim_summary_doubled: summary_prediction(&case, n),
            case,
            oracle: None,
        }
    }

    pub fn attach_oracle(&mut self, alpha_max: Option<u32>) -> Result<()> {
        let a = alpha_max.unwrap_or_else(|| default_alpha_max(&self.weights));
        self.oracle = Some(brute_force_h2(&self.weights, a)?);
        Ok(())
    }

    pub fn dim_oracle(&self) -> Option<u64> {
        self.oracle.as_ref().and_then(|o| o.dim)
    }

    pub fn stable(&self) -> Option<bool> {
        self.oracle.as_ref().map(|o| o.stable)
    }

    /// `system = oracle`, judged only on stable oracle rows.
    pub fn agree(&self) -> Option<bool> {
        match &self.oracle {
            Some(o) if o.stable => Some(o.dim == Some(self.dim_system)),
            _ => None,
        }
    }

    pub fn summary(&self) -> Option<Rational> {
        self.dim_summary_doubled.map(|v| Rational::frac(v, 2))
    }

    pub fn t_vector(&self) -> Option<String> {
        match &self.case {
            CaseTag::Singular { t, .. } => Some(t.to_string()),
            _ => None,
        }
    }

    /// Stable identifier used in reports.
    pub fn key(&self) -> String {
        match &self.case {
            CaseTag::Singular { t, .. } => format!("n={} k={} t={}", self.n, self.k, t),
            _ => format!("n={} k={} {}", self.n, self.k, self.weights),
        }
    }
}

pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    sweep_instances(cfg.n, cfg.k_max)
        .par_iter()
        .map(|(k, w)| {
            let mut row = SweepRow::evaluate(w, cfg.perturbation.as_ref());
            if cfg.oracle.applies(cfg.n, *k) {
                row.attach_oracle(cfg.alpha_max)?;
            }
            Ok(row)
        })
        .collect()
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

pub const CSV_HEADER: [&str; 12] = [
    "n",
    "k",
    "t-vector",
    "sigma",
    "s",
    "r",
    "dim_system",
    "dim_closed",
    "dim_summary",
    "dim_oracle",
    "stable",
    "agree",
];

pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(CSV_HEADER)?;
    for row in rows {
        let (sigma, s, r) = match &row.case {
            CaseTag::Singular { sigma, s, r, .. } => (Some(*sigma), Some(*s), Some(*r)),
            _ => (None, None, None),
        };
        writer.write_record([
            row.n.to_string(),
            row.k.to_string(),
            opt(row.t_vector()),
            opt(sigma),
            opt(s),
            opt(r),
            row.dim_system.to_string(),
            opt(row.dim_closed),
            opt(row.summary()),
            opt(row.dim_oracle()),
            opt(row.stable()),
            opt(row.agree()),
        ])?;
    }
    writer.flush()?;
    Ok(())
}

pub fn write_json<W: Write>(rows: &[SweepRow], mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, rows)?;
    writeln!(out)?;
    Ok(())
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Comparison {
    SystemOracle,
    ClosedSystem,
    SummarySystem,
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Comparison::SystemOracle => "system vs oracle",
            Comparison::ClosedSystem => "closed vs system",
            Comparison::SummarySystem => "summary vs system",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Discrepancy {
    pub row: String,
    pub comparison: Comparison,
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub rows: Vec<SweepRow>,
    pub discrepancies: Vec<Discrepancy>,
    /// Stable oracle rows compared against the system.
    pub gated: usize,
    pub unstable: usize,
}

impl VerifyReport {
    pub fn from_rows(rows: Vec<SweepRow>) -> Self {
        let mut discrepancies = Vec::new();
        let mut gated = 0;
        let mut unstable = 0;
        for row in &rows {
            let key = row.key();
            match row.agree() {
                Some(true) => gated += 1,
                Some(false) => {
                    gated += 1;
                    discrepancies.push(Discrepancy {
                        row: key.clone(),
                        comparison: Comparison::SystemOracle,
                        left: row.dim_system.to_string(),
                        right: opt(row.dim_oracle()),
                    });
                }
                None if row.oracle.is_some() => unstable += 1,
                None => {}
            }
            if row.dim_closed != Some(row.dim_system) {
                discrepancies.push(Discrepancy {
                    row: key.clone(),
                    comparison: Comparison::ClosedSystem,
                    left: closed_label(row.dim_closed),
                    right: row.dim_system.to_string(),
                });
            }
            if let Some(summary) = row.summary() {
                if summary != Rational::from(row.dim_system) {
                    discrepancies.push(Discrepancy {
                        row: key,
                        comparison: Comparison::SummarySystem,
                        left: summary.to_string(),
                        right: row.dim_system.to_string(),
                    });
                }
            }
        }
        VerifyReport {
            rows,
            discrepancies,
            gated,
            unstable,
        }
    }

    pub fn gate_failures(&self) -> usize {
        self.discrepancies
            .iter()
            .filter(|d| d.comparison == Comparison::SystemOracle)
            .count()
    }

    pub fn count(&self, comparison: Comparison) -> usize {
        self.discrepancies.iter().filter(|d| d.comparison == comparison).count()
    }

    /// 0 when the system agrees with every stable oracle row, else 1.
    pub fn exit_code(&self) -> i32 {
        if self.gate_failures() == 0 {
            0
        } else {
            1
        }
    }

    pub fn write_text<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "rows: {}", self.rows.len())?;
        writeln!(out, "oracle rows compared: {}", self.gated)?;
        writeln!(out, "oracle rows unstable (excluded): {}", self.unstable)?;
        for c in [
            Comparison::SystemOracle,
            Comparison::ClosedSystem,
            Comparison::SummarySystem,
        ] {
            writeln!(out, "{c} mismatches: {}", self.count(c))?;
        }
        for d in &self.discrepancies {
            writeln!(out, "{}: {} {} != {}", d.row, d.comparison, d.left, d.right)?;
        }
        writeln!(out, "{}", if self.exit_code() == 0 { "PASS" } else { "FAIL" })?;
        Ok(())
    }
}

fn closed_label(v: Option<u64>) -> String {
    v.map_or_else(|| "unsupported".to_string(), |v| v.to_string())
}

pub fn verify(cfg: &SweepConfig) -> Result<VerifyReport> {
    Ok(VerifyReport::from_rows(run_sweep(cfg)?))
}
