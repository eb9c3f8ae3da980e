//! Log canonical thresholds of monomial ideals on affine space.
//!
//! For a monomial ideal, lct is `max{c : (1,...,1) ∈ c·P(I)}` with `P(I)`
//! the Newton polyhedron (Howald). Two independent routes compute it:
//! a linear program over the generators, and the minimum over facets of
//! `<w, 1> / c`. [`lct_monomial`] runs both and insists they agree.

use serde::{Deserialize, Serialize};

use super::ideal::MonomialIdeal;
use super::lp::{solve, LpOutcome, StandardLp};
use super::newton::newton_polyhedron;
use crate::error::{Error, Result};
use crate::exact_math::Rational;

fn check_proper(ideal: &MonomialIdeal) -> Result<()> {
    if ideal.is_unit() {
        return Err(Error::Unbounded(
            "the unit ideal has infinite log canonical threshold".into(),
        ));
    }
    Ok(())
}

/// LP route: minimize `λ` subject to `λ·1 = Σ μ_j g_j + s`, `Σ μ_j = 1`,
/// `μ, s >= 0`; the threshold is `1/λ`.
pub fn lct_via_lp(ideal: &MonomialIdeal) -> Result<Rational> {
    check_proper(ideal)?;
    let d = ideal.num_vars();
    let gens = ideal.generators();
    let m = gens.len();
    // columns: λ, μ_1..μ_m, s_1..s_d
    let ncols = 1 + m + d;
    let mut a = Vec::with_capacity(d + 1);
    let mut b = Vec::with_capacity(d + 1);
    for i in 0..d {
        let mut row = vec![Rational::zero(); ncols];
        row[0] = -Rational::one();
        for (j, g) in gens.iter().enumerate() {
            row[1 + j] = Rational::integer(g[i] as i64);
        }
        row[1 + m + i] = Rational::one();
        a.push(row);
        b.push(Rational::zero());
    }
    let mut convex = vec![Rational::zero(); ncols];
    for x in convex.iter_mut().skip(1).take(m) {
        *x = Rational::one();
    }
    a.push(convex);
    b.push(Rational::one());
    let mut c = vec![Rational::zero(); ncols];
    c[0] = Rational::one();

    match solve(&StandardLp { a, b, c }) {
        LpOutcome::Optimal { value, .. } => value
            .recip()
            .ok_or_else(|| Error::Unbounded("diagonal meets P(I) at the origin".into())),
        LpOutcome::Infeasible => Err(Error::Lp("lct program infeasible".into())),
        LpOutcome::Unbounded => Err(Error::Lp("lct program unbounded".into())),
    }
}

/// Facet route: `min_F <w_F, 1> / c_F` over the compact-side facets.
pub fn lct_via_facets(ideal: &MonomialIdeal) -> Result<Rational> {
    check_proper(ideal)?;
    newton_polyhedron(ideal)?.min_facet_ratio()
}

pub fn lct_monomial(ideal: &MonomialIdeal) -> Result<Rational> {
    let lp = lct_via_lp(ideal)?;
    let facets = lct_via_facets(ideal)?;
    if lp != facets {
        return Err(Error::RouteMismatch(format!(
            "lct by LP = {lp}, by facets = {facets}"
        )));
    }
    Ok(lp)
}

/// `lct(X, aZ) = lct(X, Z) / a`.
pub fn lct_power(ideal: &MonomialIdeal, a: &Rational) -> Result<Rational> {
    if !a.is_positive() {
        return Err(Error::Precondition(format!(
            "scaling a = {a} must be positive"
        )));
    }
    Ok(lct_monomial(ideal)? / a)
}

/// Monomial valuation with weights `w` on `k[x_1..x_d]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialValuation {
    pub weights: Vec<u32>,
}

impl MonomialValuation {
    pub fn new(weights: Vec<u32>) -> Result<Self> {
        if weights.iter().all(|&w| w == 0) {
            return Err(Error::Precondition("weights must not all vanish".into()));
        }
        Ok(MonomialValuation { weights })
    }

    /// `A(E) = Σ w_i` on smooth affine space.
    pub fn log_discrepancy(&self) -> u64 {
        self.weights.iter().map(|&w| w as u64).sum()
    }

    /// `min_g <w, g>`.
    pub fn order(&self, ideal: &MonomialIdeal) -> u64 {
        ideal
            .generators()
            .iter()
            .map(|g| {
                g.iter()
                    .zip(&self.weights)
                    .map(|(&e, &w)| e as u64 * w as u64)
                    .sum::<u64>()
            })
            .min()
            .unwrap_or(0)
    }

    /// `A(E) / ord_E(I)`, or `None` when the ideal has order 0.
    pub fn threshold_candidate(&self, ideal: &MonomialIdeal) -> Option<Rational> {
        let ord = self.order(ideal);
        (ord > 0).then(|| {
            Rational::integer(self.log_discrepancy() as i64) / Rational::integer(ord as i64)
        })
    }
}

/// Infimum of `A(E)/ord_E(I)` over the given valuations; an upper bound for
/// the true lct, attained at a facet normal.
pub fn lct_over_valuations(
    ideal: &MonomialIdeal,
    valuations: &[MonomialValuation],
) -> Option<Rational> {
    valuations
        .iter()
        .filter_map(|v| v.threshold_candidate(ideal))
        .min()
}
