//! Case classification and the closed-form predictions for `dim H²`.

use std::fmt;

use serde::Serialize;

use crate::density::Weights;
use crate::multiindex::{gamma, MultiIndex};
use crate::rational::Rational;
use crate::result::{CohomResult, Method};

/// Which regime a weight vector falls in.
///
/// For singular weights, `s` and `r` follow the convention of the theorem
/// that covers the `σ` range: `s = #{t_i ≥ 1}` for `σ ≤ k + 1` and
/// `s = #{t_i > m}` for `σ = k + m` with `m ≥ 2`; `r = #{t_i = 1}`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "case", rename_all = "kebab-case")]
pub enum CaseTag {
    NonIntegerDelta,
    NonResonant {
        k: u64,
    },
    Singular {
        k: u64,
        t: MultiIndex,
        sigma: u64,
        s: u64,
        r: u64,
        m: i64,
    },
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseTag::NonIntegerDelta => write!(f, "non-integer-delta"),
            CaseTag::NonResonant { k } => write!(f, "nonresonant(k={k})"),
            CaseTag::Singular { k, t, sigma, .. } => write!(f, "singular(k={k},t={t},sigma={sigma})"),
        }
    }
}

/// `Singular` iff `δ = k ∈ ℕ` and every `−2λ_i ∈ {0,…,k−1}`.
pub fn classify(weights: &Weights) -> CaseTag {
    let Some(k) = weights.delta_natural() else {
        return CaseTag::NonIntegerDelta;
    };
    let t = match weights.t_vector() {
        Some(t) if t.iter().all(|&ti| ti < k) => t,
        _ => return CaseTag::NonResonant { k },
    };
    let sigma: u64 = t.iter().sum();
    let m = sigma as i64 - k as i64;
    let s = if m >= 2 {
        t.iter().filter(|&&ti| ti as i64 > m).count()
    } else {
        t.iter().filter(|&&ti| ti >= 1).count()
    } as u64;
    let r = t.iter().filter(|&&ti| ti == 1).count() as u64;
    CaseTag::Singular {
        k,
        t: MultiIndex::new(t.iter().map(|&ti| ti as u32).collect()),
        sigma,
        s,
        r,
        m,
    }
}

/// Case-by-case prediction. `None` where no formula applies or the formula
/// would go negative.
pub fn dim_h2_closed_form(tag: &CaseTag, n: usize) -> Option<u64> {
    let n = n as u64;
    match tag {
        CaseTag::NonIntegerDelta => Some(0),
        CaseTag::NonResonant { k } => Some(gamma(n.checked_sub(1)?, *k as i64)),
        CaseTag::Singular { k, t, s, r, m, .. } => {
            let base = gamma(n.checked_sub(1)?, *k as i64) as i64;
            let (s, r) = (*s as i64, *r as i64);
            let max_t = t.entries().iter().copied().max().unwrap_or(0);
            let extra = match *m {
                m if m < -1 => 0,
                -1 => 3,
                0 => 3 * (s - 1),
                1 if max_t >= 2 => 3 * s * (s - 1) / 2 - 3 * r,
                1 => 0,
                _ => 3 * s * (s - 1) / 2,
            };
            u64::try_from(base + extra).ok()
        }
    }
}

/// Twice the tabulated summary value, with `s = #{t_i > σ − k}`. Only
/// defined for singular weights; kept apart from [`dim_h2_closed_form`].
pub fn summary_prediction(tag: &CaseTag, n: usize) -> Option<i64> {
    let CaseTag::Singular { k, t, sigma, m, .. } = tag else {
        return None;
    };
    let base = Rational::from(gamma((n as u64).checked_sub(1)?, *k as i64));
    let threshold = *sigma as i64 - *k as i64;
    let s = Rational::from(t.entries().iter().filter(|&&ti| ti as i64 > threshold).count());
    let r = Rational::from(t.entries().iter().filter(|&&ti| ti == 1).count());
    let max_t = t.entries().iter().copied().max().unwrap_or(0);
    let three_halves = Rational::frac(3, 2);
    let one = Rational::one();
    let value = match *m {
        m if m < -1 => base,
        -1 => base + Rational::from(3),
        0 => base + &three_halves * (&s - &one),
        1 if max_t >= 2 => {
            let sr = &s + &r;
            base + &three_halves * &sr * (&sr - &one) - Rational::from(3) * &r
        }
        1 => base,
        _ => base + &three_halves * &s * (&s - &one),
    };
    (Rational::from(2) * value).to_i64()
}

pub fn closed_form_result(weights: &Weights) -> CohomResult {
    let tag = classify(weights);
    CohomResult {
        dim: dim_h2_closed_form(&tag, weights.n()),
        method: Method::Closed,
        case: tag.to_string(),
        alpha_max: None,
        stable: true,
        weights: weights.clone(),
        note: None,
    }
}

/// The summary value itself (half of [`summary_prediction`]); `None` when it
/// is not a natural number or the case is not singular.
pub fn summary_result(weights: &Weights) -> CohomResult {
    let tag = classify(weights);
    let twice = summary_prediction(&tag, weights.n());
    let dim = twice.filter(|v| *v >= 0 && v % 2 == 0).map(|v| (v / 2) as u64);
    let note = match (twice, dim) {
        (None, _) => Some("no summary formula for this case".to_string()),
        (Some(v), None) => Some(format!("summary formula gives {v}/2")),
        _ => None,
    };
    CohomResult {
        dim,
        method: Method::Summary,
        case: tag.to_string(),
        alpha_max: None,
        stable: true,
        weights: weights.clone(),
        note,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn singular(t: &[u64], k: u64) -> CaseTag {
        classify(&Weights::from_t_vector(t, k))
    }

    #[test]
    fn classification() {
        let w = Weights::new(vec![Rational::frac(1, 3)], Rational::zero());
        assert_eq!(classify(&w), CaseTag::NonIntegerDelta);
        let w = Weights::with_delta(vec![Rational::frac(-1, 2)], Rational::from(2));
        assert!(matches!(classify(&w), CaseTag::Singular { k: 2, sigma: 1, .. }));
        // −2λ = k is outside {0,…,k−1}
        let w = Weights::with_delta(vec![Rational::from(-1)], Rational::from(2));
        assert_eq!(classify(&w), CaseTag::NonResonant { k: 2 });
        let w = Weights::with_delta(vec![Rational::one(), Rational::one()], Rational::from(3));
        assert_eq!(classify(&w), CaseTag::NonResonant { k: 3 });
        let w = Weights::with_delta(vec![Rational::zero()], Rational::from(-1));
        assert_eq!(classify(&w), CaseTag::NonIntegerDelta);
    }

    #[test]
    fn closed_form_rows() {
        // n = 3, k = 2: Γ_2^2 = 3
        assert_eq!(dim_h2_closed_form(&singular(&[0, 0, 0], 2), 3), Some(3));
        assert_eq!(dim_h2_closed_form(&singular(&[1, 0, 0], 2), 3), Some(6));
        assert_eq!(dim_h2_closed_form(&singular(&[1, 1, 0], 2), 3), Some(6));
        assert_eq!(dim_h2_closed_form(&singular(&[1, 1, 1], 2), 3), Some(3));
        // σ = k + 1 with max t ≥ 2: s = 2, r = 0
        assert_eq!(dim_h2_closed_form(&singular(&[2, 2, 0], 3), 3), Some(4 + 3));
        // σ = k + 2: s = #{t_i > 2}
        assert_eq!(dim_h2_closed_form(&singular(&[3, 3, 0], 4), 3), Some(5 + 3));
        assert_eq!(dim_h2_closed_form(&CaseTag::NonIntegerDelta, 4), Some(0));
        assert_eq!(dim_h2_closed_form(&CaseTag::NonResonant { k: 3 }, 3), Some(4));
    }

    #[test]
    fn summary_rows_are_doubled() {
        assert_eq!(summary_prediction(&singular(&[1, 0, 0], 2), 3), Some(2 * 6));
        // σ = k: Γ + (3/2)(s − 1) with s = #{t_i > 0}
        assert_eq!(summary_prediction(&singular(&[1, 1, 0], 2), 3), Some(2 * 3 + 3));
        assert_eq!(summary_prediction(&CaseTag::NonResonant { k: 2 }, 3), None);
        let r = summary_result(&Weights::from_t_vector(&[1, 1, 0], 2));
        assert_eq!(r.dim, None);
    }
}
