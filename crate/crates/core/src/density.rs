//! Weighted densities `F_μ`, the operator modules `D_{λ̄,μ}` and the
//! Lie-derivative action of the three `sl(2)` generators on both.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{CohomError, Result};
use crate::multiindex::MultiIndex;
use crate::poly::Polynomial;
use crate::rational::Rational;

/// The weights `λ̄ = (λ_1, …, λ_n)` of the arguments and `μ` of the target.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Weights {
    lambdas: Vec<Rational>,
    mu: Rational,
}

impl Weights {
    pub fn new(lambdas: Vec<Rational>, mu: Rational) -> Self {
        Weights { lambdas, mu }
    }

    /// The singular-family weights `λ_i = −t_i/2`, `μ = k + Σλ_i`, so that
    /// `δ = k` and `−2λ̄ = t`.
    pub fn from_t_vector(t: &[u64], k: u64) -> Self {
        let lambdas: Vec<Rational> = t.iter().map(|&ti| Rational::frac(-(ti as i64), 2)).collect();
        let mu = Rational::from(k) + lambdas.iter().sum::<Rational>();
        Weights { lambdas, mu }
    }

    /// Weights with the given `λ̄` and `δ`.
    pub fn with_delta(lambdas: Vec<Rational>, delta: Rational) -> Self {
        let mu = delta + lambdas.iter().sum::<Rational>();
        Weights { lambdas, mu }
    }

    pub fn n(&self) -> usize {
        self.lambdas.len()
    }

    pub fn lambdas(&self) -> &[Rational] {
        &self.lambdas
    }

    pub fn lambda(&self, i: usize) -> &Rational {
        &self.lambdas[i]
    }

    pub fn mu(&self) -> &Rational {
        &self.mu
    }

    /// `δ = μ − |λ̄|`
    pub fn delta(&self) -> Rational {
        &self.mu - self.lambdas.iter().sum::<Rational>()
    }

    /// `k` when `δ = k ∈ ℕ`.
    pub fn delta_natural(&self) -> Option<u64> {
        self.delta().to_natural()
    }

    /// `t_i = −2λ_i`, defined only when every `t_i` is a natural number.
    pub fn t_vector(&self) -> Option<Vec<u64>> {
        self.lambdas
            .iter()
            .map(|l| (l * Rational::from(-2)).to_natural())
            .collect()
    }

    /// `σ = Σ t_i`
    pub fn sigma(&self) -> Option<u64> {
        self.t_vector().map(|t| t.iter().sum())
    }
}

impl fmt::Display for Weights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "lambdas=(")?;
        for (i, l) in self.lambdas.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, ") mu={}", self.mu)
    }
}

impl Serialize for Weights {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(4))?;
        map.serialize_entry("n", &self.n())?;
        map.serialize_entry("lambdas", &self.lambdas)?;
        map.serialize_entry("mu", &self.mu)?;
        map.serialize_entry("delta", &self.delta())?;
        map.end()
    }
}

#[derive(Deserialize)]
struct WeightsJson {
    lambdas: Vec<Rational>,
    mu: Rational,
    n: Option<usize>,
}

impl<'de> Deserialize<'de> for Weights {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = WeightsJson::deserialize(deserializer)?;
        if let Some(n) = raw.n {
            if n != raw.lambdas.len() {
                return Err(serde::de::Error::custom(format!(
                    "n = {n} but {} lambdas given",
                    raw.lambdas.len()
                )));
            }
        }
        Ok(Weights::new(raw.lambdas, raw.mu))
    }
}

/// A basis element `X_h` of `sl(2) = Span(X_1, X_x, X_{x²})`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum SL2Generator {
    X1,
    Xx,
    Xx2,
}

impl SL2Generator {
    pub const ALL: [SL2Generator; 3] = [SL2Generator::X1, SL2Generator::Xx, SL2Generator::Xx2];

    pub fn index(self) -> usize {
        self as usize
    }

    /// The vector field coefficient `h` of `X_h = h d/dx`.
    pub fn h(self) -> Polynomial {
        match self {
            SL2Generator::X1 => Polynomial::one(),
            SL2Generator::Xx => Polynomial::x(),
            SL2Generator::Xx2 => Polynomial::monomial(Rational::one(), 2),
        }
    }

    /// `[self, other] = c · g`, or `None` when the bracket vanishes.
    pub fn bracket(self, other: SL2Generator) -> Option<(Rational, SL2Generator)> {
        use SL2Generator::*;
        let (c, g) = match (self, other) {
            (X1, Xx) => (1, X1),
            (Xx, X1) => (-1, X1),
            (X1, Xx2) => (2, Xx),
            (Xx2, X1) => (-2, Xx),
            (Xx, Xx2) => (1, Xx2),
            (Xx2, Xx) => (-1, Xx2),
            _ => return None,
        };
        Some((Rational::from(c), g))
    }

    /// Eigenvalue of `ad X_x` on this generator.
    pub fn ad_weight(self) -> i64 {
        match self {
            SL2Generator::X1 => -1,
            SL2Generator::Xx => 0,
            SL2Generator::Xx2 => 1,
        }
    }
}

impl fmt::Display for SL2Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            SL2Generator::X1 => "X1",
            SL2Generator::Xx => "Xx",
            SL2Generator::Xx2 => "Xx2",
        };
        f.write_str(name)
    }
}

/// `L^μ_{X_h} f = h f' + μ h' f`
pub fn lie_derivative_density(g: SL2Generator, f: &Polynomial, mu: &Rational) -> Polynomial {
    let h = g.h();
    &(&h * &f.derivative()) + &(&h.derivative() * f).scale(mu)
}

/// An n-ary differential operator `Σ A_α(x) Ω^α` from
/// `F_{λ_1} ⊗ ⋯ ⊗ F_{λ_n}` to `F_μ`. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct DiffOperator {
    weights: Arc<Weights>,
    terms: BTreeMap<MultiIndex, Polynomial>,
}

impl DiffOperator {
    pub fn zero(weights: Arc<Weights>) -> Self {
        DiffOperator {
            weights,
            terms: BTreeMap::new(),
        }
    }

    /// The elementary operator `coeff · Ω^α`.
    pub fn elementary(weights: Arc<Weights>, alpha: MultiIndex, coeff: Polynomial) -> Self {
        let mut op = DiffOperator::zero(weights);
        op.add_term(alpha, &coeff);
        op
    }

    pub fn weights(&self) -> &Arc<Weights> {
        &self.weights
    }

    pub fn n(&self) -> usize {
        self.weights.n()
    }

    pub fn terms(&self) -> &BTreeMap<MultiIndex, Polynomial> {
        &self.terms
    }

    pub fn coefficient(&self, alpha: &MultiIndex) -> Polynomial {
        self.terms.get(alpha).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest `|α|` with a nonzero coefficient.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(MultiIndex::weight).max()
    }

    pub fn add_term(&mut self, alpha: MultiIndex, coeff: &Polynomial) {
        assert_eq!(alpha.len(), self.n(), "multi-index length must equal n");
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&alpha) {
            Some(existing) => {
                let sum = &*existing + coeff;
                if sum.is_zero() {
                    self.terms.remove(&alpha);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(alpha, coeff.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, other: &DiffOperator, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (alpha, coeff) in &other.terms {
            self.add_term(alpha.clone(), &coeff.scale(c));
        }
    }

    pub fn scale(&self, c: &Rational) -> DiffOperator {
        let mut out = DiffOperator::zero(self.weights.clone());
        out.add_scaled(self, c);
        out
    }

    /// Multiplies every coefficient by the polynomial `p`.
    pub fn mul_poly(&self, p: &Polynomial) -> DiffOperator {
        let mut out = DiffOperator::zero(self.weights.clone());
        for (alpha, coeff) in &self.terms {
            out.add_term(alpha.clone(), &(coeff * p));
        }
        out
    }

    pub fn plus(&self, other: &DiffOperator) -> DiffOperator {
        let mut out = self.clone();
        out.add_scaled(other, &Rational::one());
        out
    }

    pub fn minus(&self, other: &DiffOperator) -> DiffOperator {
        let mut out = self.clone();
        out.add_scaled(other, &Rational::from(-1));
        out
    }

    pub fn act(&self, g: SL2Generator) -> DiffOperator {
        act_on_operator(g, self)
    }
}

impl fmt::Debug for DiffOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (alpha, coeff)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({coeff})Ω{alpha}")?;
        }
        Ok(())
    }
}

/// `Σ_α A_α(x) · Π_i f_i^{(α_i)}`
pub fn apply_operator(op: &DiffOperator, densities: &[Polynomial]) -> Result<Polynomial> {
    if densities.len() != op.n() {
        return Err(CohomError::ArityMismatch {
            expected: op.n(),
            found: densities.len(),
        });
    }
    let mut total = Polynomial::zero();
    for (alpha, coeff) in op.terms() {
        let product = densities
            .iter()
            .zip(alpha.entries())
            .fold(coeff.clone(), |acc, (f, &order)| {
                &acc * &f.nth_derivative(order as usize)
            });
        total = &total + &product;
    }
    Ok(total)
}

/// The action `X_h · A = L^μ_{X_h} ∘ A − A ∘ L^{λ̄}_{X_h}`, term by term:
///
/// `X_h · A_α Ω^α = A_α' h Ω^α + (δ − |α|) A_α h' Ω^α
///                  − ½ Σ_i α_i(α_i + 2λ_i − 1) A_α h'' Ω^{α−ε_i}`.
pub fn act_on_operator(g: SL2Generator, op: &DiffOperator) -> DiffOperator {
    let weights = op.weights();
    let delta = weights.delta();
    let h = g.h();
    let h1 = h.derivative();
    let h2 = h1.derivative();
    let half = Rational::frac(1, 2);
    let mut out = DiffOperator::zero(weights.clone());
    for (alpha, a) in op.terms() {
        let shift = &delta - Rational::from(alpha.weight());
        let same = &(&a.derivative() * &h) + &(a * &h1).scale(&shift);
        out.add_term(alpha.clone(), &same);
        if h2.is_zero() {
            continue;
        }
        let ah2 = a * &h2;
        for i in 0..alpha.len() {
            let ai = alpha.get(i);
            // the α_i factor kills the term at α_i = 0, so no index is clamped
            let Some(lower) = alpha.minus_unit(i) else { continue };
            let ai = Rational::from(ai as u64);
            let factor = -(&half * &ai * (&ai + weights.lambda(i) * Rational::from(2) - Rational::one()));
            out.add_term(lower, &ah2.scale(&factor));
        }
    }
    out
}

/// JSON shape: `{"n": int, "lambdas": [rat], "mu": rat, "terms": {"[a1,…,an]": [poly coeffs]}}`.
impl Serialize for DiffOperator {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        struct Terms<'a>(&'a BTreeMap<MultiIndex, Polynomial>);
        impl Serialize for Terms<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
                let mut map = serializer.serialize_map(Some(self.0.len()))?;
                for (alpha, coeff) in self.0 {
                    map.serialize_entry(&alpha.to_string(), coeff)?;
                }
                map.end()
            }
        }
        let mut map = serializer.serialize_map(Some(4))?;
        map.serialize_entry("n", &self.n())?;
        map.serialize_entry("lambdas", self.weights.lambdas())?;
        map.serialize_entry("mu", self.weights.mu())?;
        map.serialize_entry("terms", &Terms(&self.terms))?;
        map.end()
    }
}

#[derive(Deserialize)]
struct DiffOperatorJson {
    n: usize,
    lambdas: Vec<Rational>,
    mu: Rational,
    terms: BTreeMap<String, Polynomial>,
}

impl<'de> Deserialize<'de> for DiffOperator {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error;
        let raw = DiffOperatorJson::deserialize(deserializer)?;
        if raw.lambdas.len() != raw.n {
            return Err(D::Error::custom(format!(
                "n = {} but {} lambdas given",
                raw.n,
                raw.lambdas.len()
            )));
        }
        let mut op = DiffOperator::zero(Arc::new(Weights::new(raw.lambdas, raw.mu)));
        for (key, coeff) in raw.terms {
            let alpha: MultiIndex = key.parse().map_err(D::Error::custom)?;
            if alpha.len() != raw.n {
                return Err(D::Error::custom(format!(
                    "multi-index {alpha} does not have length {}",
                    raw.n
                )));
            }
            op.add_term(alpha, &coeff);
        }
        Ok(op)
    }
}
