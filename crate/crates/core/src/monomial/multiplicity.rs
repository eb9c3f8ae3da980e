//! Hilbert–Samuel multiplicity of m-primary monomial ideals.
//!
//! Two independent routes:
//! - covolume: `e(I) = d! · vol(R^d_{>=0} \ P(I))`, valid for every
//!   monomial ideal since `I` and its integral closure share `P(I)` and
//!   the multiplicity;
//! - limit: `l(R/I^t)` agrees with a degree-`d` polynomial in `t` with
//!   leading coefficient `e/d!` for large `t`, so its `d`-th finite
//!   difference stabilizes at `e`.

use num::bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::ideal::MonomialIdeal;
use super::lct::lct_monomial;
use super::newton::newton_polyhedron;
use super::volume::polytope_volume;
use crate::error::{Error, Result};
use crate::exact_math::Rational;

fn require_m_primary(ideal: &MonomialIdeal) -> Result<Vec<u32>> {
    if ideal.is_unit() {
        return Err(Error::NotMPrimary("unit ideal".into()));
    }
    ideal
        .axis_exponents()
        .ok_or_else(|| Error::NotMPrimary("some variable has no pure power in the ideal".into()))
}

fn factorial(d: usize) -> Rational {
    (1..=d as i64).map(Rational::integer).product()
}

/// `vol(R^d_{>=0} \ P(I))`, computed as `Π a_i - vol(P(I) ∩ box)` where
/// `x_i^{a_i}` are the pure powers in `I`.
pub fn covolume(ideal: &MonomialIdeal) -> Result<Rational> {
    let axes = require_m_primary(ideal)?;
    let d = ideal.num_vars();
    let poly = newton_polyhedron(ideal)?;

    let mut a: Vec<Vec<Rational>> = Vec::new();
    let mut b: Vec<Rational> = Vec::new();
    for (i, &ai) in axes.iter().enumerate() {
        let mut upper = vec![Rational::zero(); d];
        upper[i] = Rational::one();
        a.push(upper);
        b.push(Rational::integer(ai as i64));
        let mut lower = vec![Rational::zero(); d];
        lower[i] = -Rational::one();
        a.push(lower);
        b.push(Rational::zero());
    }
    for f in &poly.facets {
        // <w, u> >= c  as  -<w, u> <= -c
        a.push(
            f.normal
                .iter()
                .map(|&w| -Rational::integer(w as i64))
                .collect(),
        );
        b.push(-Rational::integer(f.offset as i64));
    }
    let box_volume: Rational = axes.iter().map(|&x| Rational::integer(x as i64)).product();
    Ok(box_volume - polytope_volume(&a, &b)?)
}

/// Covolume route. This is the value [`multiplicity`] reports.
pub fn multiplicity_by_covolume(ideal: &MonomialIdeal) -> Result<u64> {
    let e = covolume(ideal)? * factorial(ideal.num_vars());
    if !e.is_integer() {
        return Err(Error::RouteMismatch(format!(
            "d!·covolume = {e} is not an integer"
        )));
    }
    u64::try_from(e.numer()).map_err(|_| Error::Precondition(format!("multiplicity {e} too large")))
}

/// Limit route: `l(R/I^t)` for `t = 1..=T` with `T = d·max_exp + d`, then
/// the `d`-th finite difference, which must be constant over the last
/// three windows.
pub fn multiplicity_by_limit(ideal: &MonomialIdeal) -> Result<u64> {
    require_m_primary(ideal)?;
    let d = ideal.num_vars();
    let horizon = d as u32 * ideal.max_exponent() + d as u32;
    // at least d + 3 samples so three d-th differences can be compared
    let horizon = horizon.max(d as u32 + 3);
    let mut lengths: Vec<BigInt> = Vec::with_capacity(horizon as usize);
    let mut power = ideal.clone();
    for t in 1..=horizon {
        if t > 1 {
            power = power.product(ideal)?;
        }
        lengths.push(BigInt::from(power.colength()?));
    }
    let mut diffs = lengths;
    for _ in 0..d {
        diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    let tail = &diffs[diffs.len() - 3..];
    if tail.iter().any(|x| *x != tail[0]) {
        return Err(Error::RouteMismatch(format!(
            "d-th difference of l(R/I^t) did not stabilize by t = {horizon}: {tail:?}"
        )));
    }
    u64::try_from(&tail[0]).map_err(|_| Error::Precondition("multiplicity out of range".into()))
}

/// Hilbert–Samuel multiplicity `e(I)`.
pub fn multiplicity(ideal: &MonomialIdeal) -> Result<u64> {
    multiplicity_by_covolume(ideal)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DfemWitness {
    pub num_vars: usize,
    pub lct: Rational,
    pub multiplicity: u64,
    /// `lct^d · e`
    pub lhs: Rational,
    /// `d^d`
    pub rhs: Rational,
    pub holds: bool,
    pub equality: bool,
}

/// `lct(I)^d · e(I) >= d^d` for an m-primary ideal in `d` variables.
pub fn dfem_check(ideal: &MonomialIdeal) -> Result<DfemWitness> {
    require_m_primary(ideal)?;
    let d = ideal.num_vars();
    let lct = lct_monomial(ideal)?;
    let e = multiplicity(ideal)?;
    let lhs = lct.pow(d as i32) * Rational::integer(e as i64);
    let rhs = Rational::integer(d as i64).pow(d as i32);
    Ok(DfemWitness {
        num_vars: d,
        holds: lhs >= rhs,
        equality: lhs == rhs,
        lct,
        multiplicity: e,
        lhs,
        rhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_intersections() {
        let i = MonomialIdeal::diagonal(&[2, 3]).unwrap();
        assert_eq!(multiplicity(&i).unwrap(), 6);
        assert_eq!(multiplicity_by_limit(&i).unwrap(), 6);
        let i = MonomialIdeal::diagonal(&[2, 3, 4]).unwrap();
        assert_eq!(multiplicity(&i).unwrap(), 24);
        assert_eq!(
            multiplicity(&MonomialIdeal::coordinate(4, 4).unwrap()).unwrap(),
            1
        );
    }

    #[test]
    fn maximal_ideal_square_discriminates() {
        let m2 = MonomialIdeal::maximal_power(2, 2).unwrap();
        assert_eq!(multiplicity(&m2).unwrap(), 4);
        assert_eq!(multiplicity_by_limit(&m2).unwrap(), 4);
        assert_eq!(m2.colength().unwrap(), 3);
    }

    #[test]
    fn non_ci_agrees_across_routes() {
        // (x^3, xy, y^3): P has facets through (3,0),(1,1),(0,3)
        let i = MonomialIdeal::new(2, vec![vec![3, 0], vec![1, 1], vec![0, 3]]).unwrap();
        // covolume = 2 triangles of area 3/2  ->  e = 6
        assert_eq!(multiplicity(&i).unwrap(), 6);
        assert_eq!(multiplicity_by_limit(&i).unwrap(), 6);
        assert_eq!(i.colength().unwrap(), 5);
    }

    #[test]
    fn not_m_primary_rejected() {
        let i = MonomialIdeal::coordinate(3, 2).unwrap();
        assert!(matches!(multiplicity(&i), Err(Error::NotMPrimary(_))));
        assert!(matches!(
            multiplicity_by_limit(&i),
            Err(Error::NotMPrimary(_))
        ));
        assert!(dfem_check(&i).is_err());
    }

    #[test]
    fn dfem_examples() {
        let w = dfem_check(&MonomialIdeal::coordinate(2, 2).unwrap()).unwrap();
        assert!(w.holds && w.equality);
        assert_eq!(w.lhs, Rational::integer(4));

        let w = dfem_check(&MonomialIdeal::diagonal(&[2, 3]).unwrap()).unwrap();
        assert!(w.holds && !w.equality);
        assert_eq!(w.lhs, Rational::new(25, 6));

        let w = dfem_check(&MonomialIdeal::maximal_power(2, 2).unwrap()).unwrap();
        assert!(w.holds && w.equality);
        assert_eq!(w.lct, Rational::one());
        assert_eq!(w.multiplicity, 4);
    }
}
