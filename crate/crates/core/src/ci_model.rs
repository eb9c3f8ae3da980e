//! Blow-up of a complete intersection `Z = ci(L_1, ..., L_k)` with every
//! `L_i` in `|L|`, `L = -rK_X`.
//!
//! The model only needs `(n, k, r, L^n)`: the intersection numbers of the
//! moving part `M` and fixed part `F` of the pulled-back linear system are
//! determined by the codimension alone, and from them the polynomial
//! `(σ*L - xF)^n` follows. Everything here uses the normalized variable
//! `x ∈ [0, 1]`, where `x = 1` is the end of the nef range of `σ*L - xF`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_math::{binomial_q, Polynomial, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CIModel {
    pub n: u32,
    pub k: u32,
    /// `L = -rK_X`.
    pub r: Rational,
    /// `L^n`.
    pub degree: Rational,
}

#[derive(Deserialize)]
struct RawModel {
    n: u32,
    k: u32,
    r: Rational,
    degree: Rational,
}

impl<'de> Deserialize<'de> for CIModel {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = RawModel::deserialize(deserializer)?;
        CIModel::new(raw.n, raw.k, raw.r, raw.degree).map_err(serde::de::Error::custom)
    }
}

impl CIModel {
    pub fn new(n: u32, k: u32, r: Rational, degree: Rational) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidModel("n must be positive".into()));
        }
        if k == 0 || k > n {
            return Err(Error::InvalidModel(format!("k = {k} outside 1..={n}")));
        }
        if !r.is_positive() {
            return Err(Error::InvalidModel(format!("r = {r} must be positive")));
        }
        if !degree.is_positive() {
            return Err(Error::InvalidModel(format!(
                "degree = {degree} must be positive"
            )));
        }
        Ok(CIModel { n, k, r, degree })
    }

    /// Model with `r = 1`, `L^n = 1`.
    pub fn unit(n: u32, k: u32) -> Result<Self> {
        CIModel::new(n, k, Rational::one(), Rational::one())
    }

    /// Lower bound `1/r` for the Seshadri constant `ε(Z, -K_X)`: the sheaf
    /// `I_Z ⊗ O(-rK_X)` is globally generated.
    pub fn seshadri_lower_bound(&self) -> Rational {
        self.r.recip().expect("r > 0")
    }

    /// Rejects non-integral `r`, for callers that only admit members of
    /// `|-rK_X|` with integer `r`.
    pub fn require_integer_r(&self) -> Result<()> {
        if self.r.is_integer() {
            Ok(())
        } else {
            Err(Error::InvalidModel(format!(
                "r = {} is not an integer (integer-only mode)",
                self.r
            )))
        }
    }
}

/// `entries[i - 1] = σ*L^{n-i} · M^{i-1} · F` for `i = 1..=n`, and
/// `moving_top = M^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionTable {
    pub entries: Vec<Rational>,
    pub moving_top: Rational,
}

impl IntersectionTable {
    /// `σ*L^{n-i} · M^{i-1} · F`, 1-based.
    pub fn entry(&self, i: usize) -> &Rational {
        &self.entries[i - 1]
    }

    /// `L^n = Σ_i entries + M^n`.
    pub fn total(&self) -> Rational {
        self.entries.iter().sum::<Rational>() + &self.moving_top
    }

    /// `σ*L^{n-i} · F^i` for `i = 1..=n` (returned 0-based), obtained by
    /// writing `F = σ*L - M` in all but one factor and expanding.
    pub fn fixed_part_powers(&self) -> Vec<Rational> {
        let n = self.entries.len() as i64;
        (1..=n)
            .map(|i| {
                // F · σ*L^{n-i} · (σ*L - M)^{i-1}
                //   = Σ_j (-1)^j C(i-1, j) σ*L^{n-1-j} · M^j · F
                (0..i)
                    .map(|j| {
                        let sign = if j % 2 == 0 {
                            Rational::one()
                        } else {
                            -Rational::one()
                        };
                        sign * binomial_q(i - 1, j) * self.entry(j as usize + 1)
                    })
                    .sum()
            })
            .collect()
    }
}

/// Intersection numbers of the moving and fixed parts: only the `i = k`
/// entry is nonzero and it equals `deg_L(Z) = L^n`; hence `M^n = 0`.
pub fn intersection_table(m: &CIModel) -> IntersectionTable {
    let entries = (1..=m.n)
        .map(|i| {
            if i == m.k {
                m.degree.clone()
            } else {
                Rational::zero()
            }
        })
        .collect();
    IntersectionTable {
        entries,
        moving_top: Rational::zero(),
    }
}

/// `L^n (1 - Σ_{i=0}^{n-k} C(n-1-i, k-1) (1-x)^{n-k-i} x^k)`.
pub fn volume_polynomial_bypar(m: &CIModel) -> Polynomial {
    let (n, k) = (m.n as i64, m.k as i64);
    let x_k = Polynomial::monomial(Rational::one(), m.k as usize);
    let one_minus = Polynomial::one_minus_x();
    let mut sum = Polynomial::zero();
    for i in 0..=(n - k) {
        let c = binomial_q(n - 1 - i, k - 1);
        let term = one_minus.pow((n - k - i) as u32).scale(&c);
        sum = &sum + &term;
    }
    let sum = &sum * &x_k;
    let one = Polynomial::constant(Rational::one());
    (&one - &sum).scale(&m.degree)
}

/// `L^n (1 + Σ_{i=k}^{n} (-1)^{i+k-1} C(n, i) C(i-1, k-1) x^i)`.
pub fn volume_polynomial_bin(m: &CIModel) -> Polynomial {
    let (n, k) = (m.n as i64, m.k as i64);
    let mut coeffs = vec![Rational::zero(); m.n as usize + 1];
    coeffs[0] = Rational::one();
    for i in k..=n {
        let sign = if (i + k - 1) % 2 == 0 {
            Rational::one()
        } else {
            -Rational::one()
        };
        coeffs[i as usize] = sign * binomial_q(n, i) * binomial_q(i - 1, k - 1);
    }
    Polynomial::new(coeffs).scale(&m.degree)
}

/// `(σ*L - xF)^n = L^n + Σ_i (-1)^i C(n, i) (σ*L^{n-i} · F^i) x^i`, built
/// directly from an intersection table.
pub fn volume_polynomial_from_table(table: &IntersectionTable, degree: &Rational) -> Polynomial {
    let n = table.entries.len() as i64;
    let powers = table.fixed_part_powers();
    let mut coeffs = Vec::with_capacity(n as usize + 1);
    coeffs.push(degree.clone());
    for i in 1..=n {
        let sign = if i % 2 == 0 {
            Rational::one()
        } else {
            -Rational::one()
        };
        coeffs.push(sign * binomial_q(n, i) * &powers[i as usize - 1]);
    }
    Polynomial::new(coeffs)
}

/// Order of vanishing of `p(0) - p(x)` at `x = 0`. On a complete
/// intersection volume polynomial this recovers the codimension of the
/// blow-up center.
pub fn center_codimension(p: &Polynomial) -> Result<usize> {
    if p.coeff(0).is_zero() {
        return Err(Error::Degenerate(
            "volume polynomial has zero constant term".into(),
        ));
    }
    p.lowest_nonconstant_degree()
        .ok_or_else(|| Error::Degenerate("volume polynomial is constant".into()))
}
