//! The Chevalley–Eilenberg complex of `sl(2)` with values in `D_{λ̄,μ}`,
//! graded by the `X_x` weight, and the brute-force `H²` oracle.
//!
//! A basis cochain is `x^m Ω^α ⊗ ω` with `ω` a basis p-form of
//! `Λ^p sl(2)*`. Its `X_x` weight is `m + δ − |α|` plus `+1` for each `X_1`
//! and `−1` for each `X_{x²}` among the arguments of `ω`. The differential
//! preserves the weight and never raises `|α|`, so each block
//! `{weight = w, |α| ≤ alpha_max}` is a finite subcomplex, and only the
//! weight-0 block carries cohomology.

use std::collections::HashMap;
use std::sync::Arc;

use crate::closed_form::classify;
use crate::density::{act_on_operator, DiffOperator, SL2Generator, Weights};
use crate::error::{CohomError, Result};
use crate::linalg::sparse_rank;
use crate::multiindex::{enumerate_up_to, MultiIndex};
use crate::poly::Polynomial;
use crate::rational::Rational;
use crate::result::{CohomResult, Method};

/// The basis p-forms, as increasing generator tuples in lexicographic order.
pub fn forms(degree: usize) -> Vec<Vec<SL2Generator>> {
    use SL2Generator::*;
    match degree {
        0 => vec![vec![]],
        1 => vec![vec![X1], vec![Xx], vec![Xx2]],
        2 => vec![vec![X1, Xx], vec![X1, Xx2], vec![Xx, Xx2]],
        3 => vec![vec![X1, Xx, Xx2]],
        _ => vec![],
    }
}

/// Sign that sorts `args` into increasing order, or `None` on a repeat.
fn sort_sign(args: &[SL2Generator]) -> Option<(i64, Vec<SL2Generator>)> {
    let mut sorted = args.to_vec();
    let mut sign = 1;
    for i in 0..sorted.len() {
        for j in 0..sorted.len() - i - 1 {
            if sorted[j] > sorted[j + 1] {
                sorted.swap(j, j + 1);
                sign = -sign;
            } else if sorted[j] == sorted[j + 1] {
                return None;
            }
        }
    }
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((sign, sorted))
}

/// An alternating p-linear map `sl(2)^p → D_{λ̄,μ}`, stored by its values on
/// the basis forms of [`forms`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cochain {
    degree: usize,
    weights: Arc<Weights>,
    components: Vec<DiffOperator>,
}

impl Cochain {
    pub fn zero(degree: usize, weights: Arc<Weights>) -> Self {
        assert!(degree <= 3, "sl(2) has no cochains above degree 3");
        let components = forms(degree)
            .iter()
            .map(|_| DiffOperator::zero(weights.clone()))
            .collect();
        Cochain {
            degree,
            weights,
            components,
        }
    }

    pub fn from_components(degree: usize, weights: Arc<Weights>, components: Vec<DiffOperator>) -> Result<Self> {
        let expected = forms(degree).len();
        if degree > 3 || components.len() != expected {
            return Err(CohomError::ArityMismatch {
                expected,
                found: components.len(),
            });
        }
        Ok(Cochain {
            degree,
            weights,
            components,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn weights(&self) -> &Arc<Weights> {
        &self.weights
    }

    pub fn components(&self) -> &[DiffOperator] {
        &self.components
    }

    pub fn component_mut(&mut self, form: usize) -> &mut DiffOperator {
        &mut self.components[form]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(DiffOperator::is_zero)
    }

    /// `f(args)`, antisymmetric in the arguments.
    pub fn eval(&self, args: &[SL2Generator]) -> DiffOperator {
        assert_eq!(args.len(), self.degree);
        let Some((sign, sorted)) = sort_sign(args) else {
            return DiffOperator::zero(self.weights.clone());
        };
        let idx = forms(self.degree)
            .iter()
            .position(|f| *f == sorted)
            .expect("sorted arguments form a basis form");
        self.components[idx].scale(&Rational::from(sign))
    }

    pub fn add_scaled(&mut self, other: &Cochain, c: &Rational) {
        assert_eq!(self.degree, other.degree);
        for (mine, theirs) in self.components.iter_mut().zip(&other.components) {
            mine.add_scaled(theirs, c);
        }
    }
}

/// `(∂f)(u_0,…,u_p) = Σ_i (−1)^i u_i·f(…û_i…) + Σ_{i<j} (−1)^{i+j} f([u_i,u_j], …û_i…û_j…)`
pub fn coboundary(f: &Cochain) -> Cochain {
    let p = f.degree;
    assert!(p <= 2, "coboundary is only defined up to degree 2");
    let mut out = Cochain::zero(p + 1, f.weights.clone());
    for (slot, us) in forms(p + 1).iter().enumerate() {
        let mut value = DiffOperator::zero(f.weights.clone());
        for i in 0..=p {
            let rest: Vec<_> = us
                .iter()
                .enumerate()
                .filter(|&(t, _)| t != i)
                .map(|(_, &u)| u)
                .collect();
            let term = act_on_operator(us[i], &f.eval(&rest));
            value.add_scaled(&term, &Rational::from(if i % 2 == 0 { 1 } else { -1 }));
        }
        for i in 0..=p {
            for j in i + 1..=p {
                let Some((c, bracket)) = us[i].bracket(us[j]) else {
                    continue;
                };
                let mut args = vec![bracket];
                args.extend(
                    us.iter()
                        .enumerate()
                        .filter(|&(t, _)| t != i && t != j)
                        .map(|(_, &u)| u),
                );
                let sign = if (i + j) % 2 == 0 { c } else { -c };
                value.add_scaled(&f.eval(&args), &sign);
            }
        }
        out.components[slot] = value;
    }
    out
}

/// Net `X_x` weight contributed by the dual arguments of a form.
fn form_shift(args: &[SL2Generator]) -> i64 {
    -args.iter().map(|g| g.ad_weight()).sum::<i64>()
}

/// The `X_x` eigenvalue of `x^m Ω^α ⊗ (dual of args)`.
pub fn weight_of(m: u64, alpha: &MultiIndex, args: &[SL2Generator], weights: &Weights) -> Rational {
    Rational::from(m) + weights.delta() - Rational::from(alpha.weight()) + Rational::from(form_shift(args))
}

/// Which finite piece of the complex to compute on.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Truncation {
    pub alpha_max: u32,
    pub weight: i64,
}

impl Truncation {
    pub fn weight_zero(alpha_max: u32) -> Self {
        Truncation { alpha_max, weight: 0 }
    }
}

/// `x^power Ω^alpha ⊗ forms(p)[form]`
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BasisCochain {
    pub alpha: MultiIndex,
    pub power: u64,
    pub form: usize,
}

impl BasisCochain {
    pub fn to_cochain(&self, degree: usize, weights: &Arc<Weights>) -> Cochain {
        let mut c = Cochain::zero(degree, weights.clone());
        c.components[self.form].add_term(
            self.alpha.clone(),
            &Polynomial::monomial(Rational::one(), self.power as usize),
        );
        c
    }
}

/// All basis p-cochains of the block, ordered by `α` (graded-lex) then form.
/// Empty when no `m ≥ 0` solves the weight equation, e.g. for `δ ∉ ℤ`.
pub fn weight_block_basis(degree: usize, tr: Truncation, weights: &Weights) -> Vec<BasisCochain> {
    let delta = weights.delta();
    let all_forms = forms(degree);
    let mut out = Vec::new();
    for alpha in enumerate_up_to(weights.n(), tr.alpha_max) {
        for (form, args) in all_forms.iter().enumerate() {
            let m =
                Rational::from(tr.weight) - &delta + Rational::from(alpha.weight()) - Rational::from(form_shift(args));
            if let Some(power) = m.to_natural() {
                out.push(BasisCochain {
                    alpha: alpha.clone(),
                    power,
                    form,
                });
            }
        }
    }
    out
}

/// Matrix of `∂: C^p → C^{p+1}` on one block. Row `j` holds the coordinates
/// of `∂(source[j])` in the `target` basis.
pub struct BlockDifferential {
    pub source: Vec<BasisCochain>,
    pub target: Vec<BasisCochain>,
    pub rows: Vec<Vec<(usize, Rational)>>,
}

impl BlockDifferential {
    pub fn rank(&self) -> usize {
        sparse_rank(self.rows.iter().cloned())
    }
}

/// Coordinates of a cochain in a block basis. Panics if the cochain has a
/// term outside the block, which would mean the differential broke the
/// weight grading or raised `|α|`.
pub fn block_coordinates(c: &Cochain, index: &HashMap<BasisCochain, usize>) -> Vec<(usize, Rational)> {
    let mut coords = Vec::new();
    for (form, op) in c.components().iter().enumerate() {
        for (alpha, coeff) in op.terms() {
            for (power, value) in coeff.terms() {
                let key = BasisCochain {
                    alpha: alpha.clone(),
                    power: power as u64,
                    form,
                };
                let slot = *index.get(&key).unwrap_or_else(|| {
                    panic!("term {key:?} of a degree-{} cochain lies outside the block", c.degree())
                });
                coords.push((slot, value.clone()));
            }
        }
    }
    coords.sort_by_key(|(slot, _)| *slot);
    coords
}

pub fn block_differential(degree: usize, tr: Truncation, weights: &Arc<Weights>) -> BlockDifferential {
    let source = weight_block_basis(degree, tr, weights);
    let target = weight_block_basis(degree + 1, tr, weights);
    let index: HashMap<BasisCochain, usize> = target.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect();
    let rows = source
        .iter()
        .map(|b| block_coordinates(&coboundary(&b.to_cochain(degree, weights)), &index))
        .collect();
    BlockDifferential { source, target, rows }
}

/// `dim H^p` of one block, for `p = 0, 1, 2, 3`.
pub fn block_cohomology(weights: &Arc<Weights>, tr: Truncation) -> [usize; 4] {
    let dims: Vec<usize> = (0..4).map(|p| weight_block_basis(p, tr, weights).len()).collect();
    let ranks: Vec<usize> = (0..3).map(|p| block_differential(p, tr, weights).rank()).collect();
    let rank_in = |p: usize| if p == 0 { 0 } else { ranks[p - 1] };
    let rank_out = |p: usize| if p == 3 { 0 } else { ranks[p] };
    [0, 1, 2, 3].map(|p| dims[p] - rank_out(p) - rank_in(p))
}

/// `dim ker(∂: C²→C³) − rank(∂: C¹→C²)` on the weight-0 block.
pub fn truncated_h2(weights: &Arc<Weights>, alpha_max: u32) -> usize {
    let tr = Truncation::weight_zero(alpha_max);
    let c2 = weight_block_basis(2, tr, weights).len();
    if c2 == 0 {
        return 0;
    }
    c2 - block_differential(2, tr, weights).rank() - block_differential(1, tr, weights).rank()
}

/// `k + 3` when `δ = k ∈ ℕ`, else 3.
pub fn default_alpha_max(weights: &Weights) -> u32 {
    match weights.delta_natural() {
        Some(k) => k as u32 + 3,
        None => 3,
    }
}

/// `dim H²` of the weight-0 block truncated at `alpha_max`, recomputed at
/// `alpha_max + 1` and `alpha_max + 2`; `stable` is set only when all three agree.
pub fn brute_force_h2(weights: &Weights, alpha_max: u32) -> Result<CohomResult> {
    if alpha_max < 1 {
        return Err(CohomError::TruncationTooSmall);
    }
    let shared = Arc::new(weights.clone());
    let values: Vec<usize> = (alpha_max..alpha_max + 3).map(|a| truncated_h2(&shared, a)).collect();
    let stable = values.iter().all(|&v| v == values[0]);
    Ok(CohomResult {
        dim: Some(values[0] as u64),
        method: Method::Oracle,
        case: classify(weights).to_string(),
        alpha_max: Some(alpha_max),
        stable,
        weights: weights.clone(),
        note: (!stable).then(|| format!("unstable: truncations {alpha_max}..{} gave {values:?}", alpha_max + 2)),
    })
}
