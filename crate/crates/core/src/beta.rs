//! β-invariants of subschemes and the lower bound `α^(k) >= k/(n+1)`.
//!
//! β is computed from a caller-supplied [`VolumeProfile`], a piecewise
//! polynomial description of `x ↦ vol(σ*(-K_X) - xF)`. A profile is either
//! exact (the volume vanishes past its last piece) or truncated, in which
//! case the integral is only a lower bound and β only an upper bound.

use serde::{Deserialize, Serialize};

use crate::ci_model::{volume_polynomial_bin, volume_polynomial_bypar, CIModel};
use crate::error::{Error, Result};
use crate::exact_math::{binomial_q, Polynomial, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfilePiece {
    pub from: Rational,
    pub to: Rational,
    pub coeffs: Polynomial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VolumeProfile {
    pieces: Vec<ProfilePiece>,
    exact: bool,
}

#[derive(Deserialize)]
struct RawProfile {
    pieces: Vec<ProfilePiece>,
    exact: bool,
}

impl<'de> Deserialize<'de> for VolumeProfile {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = RawProfile::deserialize(deserializer)?;
        VolumeProfile::new(raw.pieces, raw.exact).map_err(serde::de::Error::custom)
    }
}

impl VolumeProfile {
    /// Validates contiguity from 0, continuity at breakpoints,
    /// non-negativity at every endpoint and a positive volume at 0.
    pub fn new(pieces: Vec<ProfilePiece>, exact: bool) -> Result<Self> {
        let first = pieces
            .first()
            .ok_or_else(|| Error::InvalidProfile("no pieces".into()))?;
        if !first.from.is_zero() {
            return Err(Error::InvalidProfile(format!(
                "first piece starts at {} instead of 0",
                first.from
            )));
        }
        for (idx, piece) in pieces.iter().enumerate() {
            if piece.from >= piece.to {
                return Err(Error::InvalidProfile(format!(
                    "piece {idx}: empty interval [{}, {}]",
                    piece.from, piece.to
                )));
            }
            for end in [&piece.from, &piece.to] {
                let v = piece.coeffs.eval(end);
                if v.is_negative() {
                    return Err(Error::InvalidProfile(format!(
                        "piece {idx}: negative volume {v} at x = {end}"
                    )));
                }
            }
        }
        for (idx, pair) in pieces.windows(2).enumerate() {
            let (a, b) = (&pair[0], &pair[1]);
            if a.to != b.from {
                return Err(Error::InvalidProfile(format!(
                    "pieces {idx} and {} are not contiguous: {} != {}",
                    idx + 1,
                    a.to,
                    b.from
                )));
            }
            let (left, right) = (a.coeffs.eval(&a.to), b.coeffs.eval(&b.from));
            if left != right {
                return Err(Error::InvalidProfile(format!(
                    "discontinuity at x = {}: {left} != {right}",
                    a.to
                )));
            }
        }
        let profile = VolumeProfile { pieces, exact };
        if !profile.volume_at_zero().is_positive() {
            return Err(Error::InvalidProfile(
                "volume at x = 0 must be positive".into(),
            ));
        }
        Ok(profile)
    }

    pub fn single(coeffs: Polynomial, to: Rational, exact: bool) -> Result<Self> {
        VolumeProfile::new(
            vec![ProfilePiece {
                from: Rational::zero(),
                to,
                coeffs,
            }],
            exact,
        )
    }

    pub fn pieces(&self) -> &[ProfilePiece] {
        &self.pieces
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// Pseudo-effective threshold when exact; end of the known range otherwise.
    pub fn support_end(&self) -> &Rational {
        &self.pieces.last().expect("validated non-empty").to
    }

    /// `vol(-K_X)`.
    pub fn volume_at_zero(&self) -> Rational {
        self.pieces[0].coeffs.eval(&Rational::zero())
    }

    pub fn integral(&self) -> Rational {
        self.pieces
            .iter()
            .map(|p| p.coeffs.integrate(&p.from, &p.to).expect("from < to"))
            .sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BetaResult {
    /// `lct · vol - ∫ vol`; an upper bound for β when `truncated`.
    pub value: Rational,
    pub lct_used: Rational,
    pub volume_used: Rational,
    pub integral: Rational,
    pub truncated: bool,
    /// `∫ vol / vol(-K_X)`: the lower bound on `lct` forced by `β >= 0`.
    pub induced_lct_lower_bound: Rational,
}

pub fn beta_from_profile(profile: &VolumeProfile, lct: &Rational) -> Result<BetaResult> {
    if lct.is_negative() {
        return Err(Error::Precondition(format!("lct = {lct} is negative")));
    }
    let volume = profile.volume_at_zero();
    let integral = profile.integral();
    let value = lct * &volume - &integral;
    let induced = &integral / &volume;
    Ok(BetaResult {
        value,
        lct_used: lct.clone(),
        volume_used: volume,
        integral,
        truncated: !profile.is_exact(),
        induced_lct_lower_bound: induced,
    })
}

/// `(1/r) ∫_0^1 (σ*L - xF)^n dx` with `L = -rK_X`, i.e. the truncated
/// integral of `vol(σ*(-K_X) - xF)` over the nef range scaled to
/// `-rK_X`-normalized units.
pub fn truncated_integral(m: &CIModel) -> Rational {
    let p = volume_polynomial_bin(m);
    let integral = p
        .integrate(&Rational::zero(), &Rational::one())
        .expect("0 <= 1");
    integral * m.seshadri_lower_bound()
}

/// Lower bound for `lct(X, (1/r)Z)` on a K-semistable X, obtained from
/// `β(Z) >= 0` by discarding the volume past the nef range. It does not
/// depend on `r` or `L^n` and always equals `k/(n+1)`.
pub fn lct_lower_bound(m: &CIModel) -> Rational {
    // lct(X, Z) >= truncated / L^n; rescale by r for lct(X, (1/r)Z)
    &m.r * truncated_integral(m) / &m.degree
}

/// `∫_0^1 Σ_{i=0}^{n-k} C(n-1-i, k-1) (1-x)^{n-k-i} x^k dx`, which should
/// equal `1 - k/(n+1)`.
pub fn integral_identity_check(n: u32, k: u32) -> Result<Rational> {
    if k == 0 || k > n {
        return Err(Error::Precondition(format!(
            "need 1 <= k <= n, got n={n} k={k}"
        )));
    }
    let (ni, ki) = (n as i64, k as i64);
    let x_k = Polynomial::monomial(Rational::one(), k as usize);
    let one_minus = Polynomial::one_minus_x();
    let mut integrand = Polynomial::zero();
    for i in 0..=(ni - ki) {
        let term = &one_minus
            .pow((ni - ki - i) as u32)
            .scale(&binomial_q(ni - 1 - i, ki - 1))
            * &x_k;
        integrand = &integrand + &term;
    }
    integrand.integrate(&Rational::zero(), &Rational::one())
}

/// Exact-up-to-the-nef-range profile of `vol(σ*(-K_X) - xF)` for a CI model:
/// `r^{-n} p(r x)` on `[0, 1/r]`, marked truncated.
pub fn ci_truncated_profile(m: &CIModel) -> Result<VolumeProfile> {
    let p = volume_polynomial_bypar(m);
    let scaled = p.substitute_scaled(&m.r).scale(&m.r.pow(-(m.n as i32)));
    VolumeProfile::single(scaled, m.seshadri_lower_bound(), false)
}

/// Profile for a codimension-`k` linear subspace of `P^n`.
///
/// Here `-K = (n+1)H` and the blow-up polynomial in `-K` units is
/// `(n+1)^n p(x/(n+1))` on `[0, n+1]`. The profile is exact: past `x = n+1`
/// the class `σ*H - (x/(n+1))F` is no longer pseudo-effective, since at
/// `x = n+1` it equals `M`, the pullback of `O(1)` under the projection
/// from the subspace to `P^{k-1}`, and `M^n = 0`.
pub fn linear_subspace_profile(n: u32, k: u32) -> Result<VolumeProfile> {
    let m = CIModel::unit(n, k)?;
    let index = Rational::integer(n as i64 + 1);
    let p = volume_polynomial_bin(&m);
    let coeffs = p
        .substitute_scaled(&index.recip().expect("n + 1 > 0"))
        .scale(&index.pow(n as i32));
    VolumeProfile::single(coeffs, index, true)
}

/// β of a codimension-`k` linear subspace of `P^n` with `lct(P^n, Z) = k`.
pub fn beta_linear_subspace_result(n: u32, k: u32) -> Result<BetaResult> {
    let profile = linear_subspace_profile(n, k)?;
    beta_from_profile(&profile, &Rational::integer(k as i64))
}

pub fn beta_linear_subspace(n: u32, k: u32) -> Result<Rational> {
    Ok(beta_linear_subspace_result(n, k)?.value)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum SemistabilityVerdict {
    /// Some β (exact, or an upper bound) is negative.
    NotKSemistable { witness: usize, beta: Rational },
    /// No β is known to be negative. Not a proof of K-semistability: only
    /// finitely many subschemes were checked.
    ConsistentWithKSemistability { checked: usize, inconclusive: usize },
}

pub fn semistability_verdict(betas: &[BetaResult]) -> SemistabilityVerdict {
    // truncated values are upper bounds, so a negative one is still a witness
    if let Some((idx, b)) = betas
        .iter()
        .enumerate()
        .find(|(_, b)| b.value.is_negative())
    {
        return SemistabilityVerdict::NotKSemistable {
            witness: idx,
            beta: b.value.clone(),
        };
    }
    SemistabilityVerdict::ConsistentWithKSemistability {
        checked: betas.len(),
        inconclusive: betas.iter().filter(|b| b.truncated).count(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(p, d)
    }

    #[test]
    fn truncated_integral_examples() {
        let d = q(17, 3);
        let m = CIModel::new(2, 2, Rational::one(), d.clone()).unwrap();
        assert_eq!(truncated_integral(&m), q(2, 3) * &d);
        let m = CIModel::unit(3, 2).unwrap();
        assert_eq!(truncated_integral(&m), q(1, 2));
        let m = CIModel::new(1, 1, Rational::integer(2), d.clone()).unwrap();
        assert_eq!(truncated_integral(&m), &d / Rational::integer(4));
    }

    #[test]
    fn lower_bound_examples() {
        let m = CIModel::new(3, 2, q(3, 2), q(5, 1)).unwrap();
        assert_eq!(lct_lower_bound(&m), q(1, 2));
        assert_eq!(lct_lower_bound(&CIModel::unit(1, 1).unwrap()), q(1, 2));
        assert_eq!(lct_lower_bound(&CIModel::unit(7, 7).unwrap()), q(7, 8));
    }

    #[test]
    fn integral_identity_examples() {
        assert_eq!(integral_identity_check(1, 1).unwrap(), q(1, 2));
        assert_eq!(integral_identity_check(4, 4).unwrap(), q(1, 5));
        assert_eq!(integral_identity_check(3, 2).unwrap(), q(1, 2));
        assert!(integral_identity_check(2, 3).is_err());
    }

    #[test]
    fn beta_from_single_piece() {
        // d(1-x)^2 on [0,1], lct 1: β = 1 - 1/3
        let p = Polynomial::one_minus_x().pow(2);
        let profile = VolumeProfile::single(p, Rational::one(), true).unwrap();
        let b = beta_from_profile(&profile, &Rational::one()).unwrap();
        assert_eq!(b.value, q(2, 3));
        assert!(!b.truncated);
        assert_eq!(b.induced_lct_lower_bound, q(1, 3));
    }

    #[test]
    fn rejects_bad_profiles() {
        assert!(VolumeProfile::single(Polynomial::zero(), Rational::one(), true).is_err());
        assert!(VolumeProfile::new(vec![], true).is_err());
        // negative at right endpoint
        let p = Polynomial::from_ints(&[1, -2]);
        assert!(VolumeProfile::single(p, Rational::one(), true).is_err());
        // discontinuous
        let pieces = vec![
            ProfilePiece {
                from: Rational::zero(),
                to: Rational::one(),
                coeffs: Polynomial::from_ints(&[2, -1]),
            },
            ProfilePiece {
                from: Rational::one(),
                to: Rational::integer(2),
                coeffs: Polynomial::from_ints(&[3, -1]),
            },
        ];
        assert!(matches!(
            VolumeProfile::new(pieces, true),
            Err(Error::InvalidProfile(_))
        ));
        // gap
        let pieces = vec![
            ProfilePiece {
                from: Rational::zero(),
                to: Rational::one(),
                coeffs: Polynomial::from_ints(&[2, -1]),
            },
            ProfilePiece {
                from: Rational::integer(2),
                to: Rational::integer(3),
                coeffs: Polynomial::from_ints(&[3, -1]),
            },
        ];
        assert!(VolumeProfile::new(pieces, true).is_err());
    }

    #[test]
    fn two_piece_profile_integrates_piecewise() {
        // 2 - x on [0,1], then (3 - x)/2 on [1,3]: ∫ = 3/2 + 1
        let pieces = vec![
            ProfilePiece {
                from: Rational::zero(),
                to: Rational::one(),
                coeffs: Polynomial::from_ints(&[2, -1]),
            },
            ProfilePiece {
                from: Rational::one(),
                to: Rational::integer(3),
                coeffs: Polynomial::new(vec![q(3, 2), q(-1, 2)]),
            },
        ];
        let profile = VolumeProfile::new(pieces, true).unwrap();
        assert_eq!(profile.integral(), q(5, 2));
        assert_eq!(profile.support_end(), &Rational::integer(3));
        let json = serde_json::to_string(&profile).unwrap();
        assert_eq!(
            json,
            r#"{"pieces":[{"from":"0","to":"1","coeffs":["2","-1"]},{"from":"1","to":"3","coeffs":["3/2","-1/2"]}],"exact":true}"#
        );
        let back: VolumeProfile = serde_json::from_str(&json).unwrap();
        assert_eq!(back, profile);
    }

    #[test]
    fn linear_subspace_examples() {
        assert_eq!(beta_linear_subspace(1, 1).unwrap(), Rational::zero());
        assert_eq!(beta_linear_subspace(3, 2).unwrap(), Rational::zero());
        assert_eq!(beta_linear_subspace(8, 5).unwrap(), Rational::zero());
        let r = beta_linear_subspace_result(3, 2).unwrap();
        assert_eq!(r.volume_used, Rational::integer(64));
        assert_eq!(r.integral, Rational::integer(128));
    }

    #[test]
    fn ci_profile_bounds() {
        let m = CIModel::new(3, 2, Rational::integer(2), Rational::integer(16)).unwrap();
        let profile = ci_truncated_profile(&m).unwrap();
        assert_eq!(profile.volume_at_zero(), Rational::integer(2)); // 16 / 2^3
        let b = beta_from_profile(&profile, &q(1, 4)).unwrap();
        assert!(b.truncated);
        // induced bound on lct(X, Z) is k / ((n+1) r)
        assert_eq!(b.induced_lct_lower_bound, q(1, 4));
        assert_eq!(b.value, Rational::zero());
    }

    #[test]
    fn verdict_examples() {
        let mk = |v: Rational, truncated: bool| BetaResult {
            value: v,
            lct_used: Rational::one(),
            volume_used: Rational::one(),
            integral: Rational::zero(),
            truncated,
            induced_lct_lower_bound: Rational::zero(),
        };
        assert!(matches!(
            semistability_verdict(&[mk(q(-1, 3), false)]),
            SemistabilityVerdict::NotKSemistable { witness: 0, .. }
        ));
        assert!(matches!(
            semistability_verdict(&[mk(Rational::zero(), false)]),
            SemistabilityVerdict::ConsistentWithKSemistability { checked: 1, .. }
        ));
        assert!(matches!(
            semistability_verdict(&[]),
            SemistabilityVerdict::ConsistentWithKSemistability { checked: 0, .. }
        ));
        assert!(matches!(
            semistability_verdict(&[mk(Rational::one(), true), mk(q(-1, 5), true)]),
            SemistabilityVerdict::NotKSemistable { witness: 1, .. }
        ));
    }
}
