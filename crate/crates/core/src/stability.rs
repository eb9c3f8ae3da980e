//! Stability and characterization criteria as exact predicates.
//!
//! Each check returns a [`CriterionVerdict`] whose trace lists the exact
//! inequalities it evaluated. Every trace line re-evaluates to true.
//! Hypotheses that cannot be checked here (K-semistability, Q-factoriality,
//! Picard number one) are caller assertions and are listed under
//! `assumptions`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::catalog::{AlphaBound, GeometryRecord};
use crate::error::{Error, Result};
use crate::exact_math::{Rational, Relation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    KStable,
    KSemistable,
    IsProjectiveSpace,
    NotKSemistable,
    Inconclusive,
    InconsistentInput,
    /// Data checks passed; no stability conclusion is drawn.
    Consistent,
}

impl Verdict {
    pub fn is_failure(self) -> bool {
        matches!(self, Verdict::NotKSemistable | Verdict::InconsistentInput)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::KStable => "k_stable",
            Verdict::KSemistable => "k_semistable",
            Verdict::IsProjectiveSpace => "is_projective_space",
            Verdict::NotKSemistable => "not_k_semistable",
            Verdict::Inconclusive => "inconclusive",
            Verdict::InconsistentInput => "inconsistent_input",
            Verdict::Consistent => "consistent",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceLine {
    pub label: String,
    pub lhs: Rational,
    pub rel: Relation,
    pub rhs: Rational,
}

impl TraceLine {
    pub fn holds(&self) -> bool {
        self.rel.holds(&self.lhs, &self.rhs)
    }
}

impl fmt::Display for TraceLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} {} {}", self.label, self.lhs, self.rel, self.rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionVerdict {
    pub verdict: Verdict,
    pub criterion: String,
    pub assumptions: Vec<String>,
    pub trace: Vec<TraceLine>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CriterionVerdict {
    fn new(criterion: &str) -> Self {
        CriterionVerdict {
            verdict: Verdict::Inconclusive,
            criterion: criterion.to_string(),
            assumptions: Vec::new(),
            trace: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn assume(mut self, what: &str) -> Self {
        self.assumptions.push(what.to_string());
        self
    }

    /// Records the relation that actually holds between `lhs` and `rhs`.
    fn compare(&mut self, label: impl Into<String>, lhs: Rational, rhs: Rational) -> Relation {
        let rel = Relation::between(&lhs, &rhs);
        self.trace.push(TraceLine {
            label: label.into(),
            lhs,
            rel,
            rhs,
        });
        rel
    }

    fn finish(mut self, verdict: Verdict) -> Self {
        self.verdict = verdict;
        debug_assert!(self.trace_holds(), "false trace line in {}", self.criterion);
        self
    }

    /// True when every trace line re-evaluates to true.
    pub fn trace_holds(&self) -> bool {
        self.trace.iter().all(TraceLine::holds)
    }
}

const KSS: &str = "X is K-semistable (caller assertion)";
const SMOOTH: &str = "X is smooth (caller assertion)";

fn require_positive(name: &str, v: &Rational) -> Result<()> {
    if v.is_positive() {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "{name} = {v} must be positive"
        )))
    }
}

fn require_dim(n: u32) -> Result<()> {
    if n == 0 {
        Err(Error::Precondition("dimension n must be positive".into()))
    } else {
        Ok(())
    }
}

fn pow_int(base: i64, exp: u32) -> Rational {
    Rational::integer(base).pow(exp as i32)
}

/// K-semistable Q-Fano: `(-K_X)^n <= (n+1)^n`, with equality on a smooth
/// X only for projective space.
pub fn fujita_volume_test(n: u32, vol: &Rational, smooth: bool) -> Result<CriterionVerdict> {
    require_dim(n)?;
    require_positive("vol", vol)?;
    let mut v = CriterionVerdict::new("fujita_volume").assume(KSS);
    if smooth {
        v = v.assume(SMOOTH);
    }
    let bound = pow_int(n as i64 + 1, n);
    let verdict = match v.compare("(-K_X)^n vs (n+1)^n", vol.clone(), bound) {
        Relation::Gt => Verdict::NotKSemistable,
        Relation::Eq if smooth => Verdict::IsProjectiveSpace,
        _ => Verdict::Inconclusive,
    };
    Ok(v.finish(verdict))
}

/// Powered form of `α^(n) >= n / vol^{1/n}` on a Fano manifold:
/// `α^(n)^n · vol >= n^n`.
pub fn top_codimension_bound_check(
    n: u32,
    vol: &Rational,
    alpha_n: &Rational,
) -> Result<CriterionVerdict> {
    require_dim(n)?;
    require_positive("vol", vol)?;
    require_positive("alpha_n", alpha_n)?;
    let mut v = CriterionVerdict::new("top_codimension_volume_bound").assume(SMOOTH);
    let lhs = alpha_n.pow(n as i32) * vol;
    let rhs = pow_int(n as i64, n);
    let verdict = match v.compare("alpha^(n)^n * (-K_X)^n vs n^n", lhs, rhs) {
        Relation::Lt => Verdict::InconsistentInput,
        _ => Verdict::Inconclusive,
    };
    Ok(v.finish(verdict))
}

/// A smooth K-semistable X with `α^(n) <= n/(n+1)` is projective space.
/// A value strictly below `n/(n+1)` contradicts `α^(n) >= n/(n+1)` and is
/// reported as inconsistent.
pub fn top_codimension_test(
    n: u32,
    alpha_n: &Rational,
    smooth: bool,
    k_semistable: bool,
) -> Result<CriterionVerdict> {
    require_dim(n)?;
    require_positive("alpha_n", alpha_n)?;
    let mut v = CriterionVerdict::new("top_codimension_characterization");
    if k_semistable {
        v = v.assume(KSS);
    }
    if smooth {
        v = v.assume(SMOOTH);
    }
    let threshold = Rational::new(n as i64, n as i64 + 1);
    let rel = v.compare("alpha^(n) vs n/(n+1)", alpha_n.clone(), threshold);
    let verdict = match rel {
        _ if !(smooth && k_semistable) => Verdict::Inconclusive,
        Relation::Eq => Verdict::IsProjectiveSpace,
        Relation::Lt => {
            v.notes
                .push("alpha^(n) below n/(n+1) contradicts the K-semistable lower bound".into());
            Verdict::InconsistentInput
        }
        _ => Verdict::Inconclusive,
    };
    Ok(v.finish(verdict))
}

/// Combined `α^(1)`, `α^(2)` criterion on a Q-factorial Q-Fano of Picard
/// number one: with `α^(2) > (n-1)/(n+1)`, the sum
/// `S = 1/((n+1)α^(1)) + (n-1)/((n+1)α^(2))` decides K-stability
/// (`S < 1`) or K-semistability (`S = 1`).
pub fn alpha12_criterion(n: u32, alpha1: &Rational, alpha2: &Rational) -> Result<CriterionVerdict> {
    if n < 2 {
        return Err(Error::Precondition("alpha^(2) needs n >= 2".into()));
    }
    require_positive("alpha1", alpha1)?;
    require_positive("alpha2", alpha2)?;
    let mut v = CriterionVerdict::new("alpha1_alpha2_combination")
        .assume("X is Q-factorial (caller assertion)")
        .assume("X has Picard number 1 (caller assertion)")
        .assume("alpha values are exact or lower bounds");
    let n1 = Rational::integer(n as i64 + 1);
    let threshold = Rational::new(n as i64 - 1, n as i64 + 1);
    if v.compare("alpha^(2) vs (n-1)/(n+1)", alpha2.clone(), threshold) != Relation::Gt {
        return Ok(v.finish(Verdict::Inconclusive));
    }
    let s = (&n1 * alpha1).recip().expect("positive")
        + Rational::integer(n as i64 - 1) / (&n1 * alpha2);
    let verdict = match v.compare("S vs 1", s, Rational::one()) {
        Relation::Lt => Verdict::KStable,
        Relation::Eq => Verdict::KSemistable,
        _ => Verdict::Inconclusive,
    };
    Ok(v.finish(verdict))
}

/// Divisibility of `(-K_X)^k ≡ lZ` with `l >= (n+1)^k`: when `k | n` this
/// forces `(-K_X)^n >= l^{n/k} >= (n+1)^n`, hence projective space on a
/// smooth K-semistable X. When `k ∤ n` the question is open.
pub fn divisibility_test(
    n: u32,
    k: u32,
    l: &Rational,
    smooth: bool,
    k_semistable: bool,
) -> Result<CriterionVerdict> {
    if k == 0 || k > n {
        return Err(Error::Precondition(format!(
            "need 1 <= k <= n, got n={n} k={k}"
        )));
    }
    require_positive("l", l)?;
    let mut v = CriterionVerdict::new("cycle_divisibility");
    if k_semistable {
        v = v.assume(KSS);
    }
    if smooth {
        v = v.assume(SMOOTH);
    }
    v = v.assume("(-K_X)^k is numerically l times an integral (n-k)-cycle (caller assertion)");
    let bound_k = pow_int(n as i64 + 1, k);
    if v.compare("l vs (n+1)^k", l.clone(), bound_k) == Relation::Lt {
        return Ok(v.finish(Verdict::Inconclusive));
    }
    if !n.is_multiple_of(k) {
        v.notes
            .push(format!("open question: k = {k} does not divide n = {n}"));
        return Ok(v.finish(Verdict::Inconclusive));
    }
    if !(smooth && k_semistable) {
        return Ok(v.finish(Verdict::Inconclusive));
    }
    let implied = l.pow((n / k) as i32);
    let top = pow_int(n as i64 + 1, n);
    v.compare("(-K_X)^n >= l^(n/k) vs (n+1)^n", implied.clone(), top);
    let fujita = fujita_volume_test(n, &implied, smooth)?;
    v.trace.extend(fujita.trace);
    let verdict = match fujita.verdict {
        Verdict::IsProjectiveSpace => Verdict::IsProjectiveSpace,
        // the volume bound exceeds (n+1)^n, which no K-semistable X allows
        _ => {
            v.notes.push(
                "implied volume exceeds (n+1)^n, contradicting the K-semistability assertion"
                    .into(),
            );
            Verdict::InconsistentInput
        }
    };
    Ok(v.finish(verdict))
}

fn strict_or(strict: bool, strict_rel: Relation, weak_rel: Relation) -> Relation {
    if strict {
        strict_rel
    } else {
        weak_rel
    }
}

/// Consistency of recorded bounds with `α^(1) <= α^(2) <= ... <= α^(n)`:
/// every pair must satisfy `lower <= upper`, and for `k < k'` the lower
/// bound at `k` cannot exceed the upper bound at `k'` (strictly below
/// when the lower bound is strict).
pub fn alpha_monotonicity_check(alphas: &BTreeMap<u32, AlphaBound>) -> CriterionVerdict {
    let mut v = CriterionVerdict::new("alpha_monotonicity");
    let mut failed = false;
    for (k, b) in alphas {
        let needed = strict_or(b.lower_strict, Relation::Lt, Relation::Le);
        let rel = v.compare(
            format!("lower_{k} vs upper_{k}"),
            b.lower.clone(),
            b.upper.clone(),
        );
        if !needed_holds(needed, rel) {
            failed = true;
        }
    }
    let entries: Vec<(&u32, &AlphaBound)> = alphas.iter().collect();
    for (i, (k, lo)) in entries.iter().enumerate() {
        for (k2, hi) in entries.iter().skip(i + 1) {
            let needed = strict_or(lo.lower_strict, Relation::Lt, Relation::Le);
            let rel = v.compare(
                format!("lower_{k} vs upper_{k2}"),
                lo.lower.clone(),
                hi.upper.clone(),
            );
            if !needed_holds(needed, rel) {
                failed = true;
            }
        }
    }
    if failed {
        // keep only the violated lines so the certificate names them
        let kept: Vec<TraceLine> = v
            .trace
            .iter()
            .filter(|t| {
                matches!(t.rel, Relation::Gt)
                    || (t.rel == Relation::Eq && is_strict_label(alphas, &t.label))
            })
            .cloned()
            .collect();
        v.trace = kept;
        return v.finish(Verdict::InconsistentInput);
    }
    v.finish(Verdict::Consistent)
}

fn needed_holds(needed: Relation, actual: Relation) -> bool {
    match needed {
        Relation::Lt => actual == Relation::Lt,
        _ => actual != Relation::Gt,
    }
}

fn is_strict_label(alphas: &BTreeMap<u32, AlphaBound>, label: &str) -> bool {
    label
        .strip_prefix("lower_")
        .and_then(|rest| rest.split(' ').next())
        .and_then(|k| k.parse::<u32>().ok())
        .and_then(|k| alphas.get(&k))
        .is_some_and(|b| b.lower_strict)
}

/// The recorded bounds against `α^(k) >= k/(n+1)` on a K-semistable X,
/// and the equality case: `α^(k) = k/(n+1)` on a smooth X forces
/// projective space when realized by a complete intersection and `k | n`,
/// and without realization when `k = 1` or `k = n`. Other equality records
/// are flagged in `notes` but not rejected.
pub fn lower_bound_consistency(record: &GeometryRecord) -> CriterionVerdict {
    let mut v = CriterionVerdict::new("codimension_k_lower_bound");
    if record.k_semistable != Some(true) {
        v.notes
            .push("K-semistability not asserted; nothing to check".into());
        return v.finish(Verdict::Inconclusive);
    }
    v = v.assume(KSS);
    let n = record.n;
    let is_pn = record.is_projective_space_by_volume();
    let mut failure = false;
    for (&k, b) in &record.alpha_bounds {
        let bound = Rational::new(k as i64, n as i64 + 1);
        let rel = v.compare(
            format!("upper_{k} vs k/(n+1)"),
            b.upper.clone(),
            bound.clone(),
        );
        if rel == Relation::Lt {
            v.trace
                .retain(|t| t.label == format!("upper_{k} vs k/(n+1)"));
            failure = true;
            break;
        }
        if rel != Relation::Eq || is_pn {
            continue;
        }
        // the upper bound pins α^(k) = k/(n+1) on a non-projective-space record
        if !record.smooth {
            v.notes.push(format!(
                "alpha^({k}) = k/(n+1) on a singular X: no characterization applies"
            ));
            continue;
        }
        let forced = k == 1 || k == n || (b.realized == Some(true) && n.is_multiple_of(k));
        if forced {
            v.trace
                .retain(|t| t.label == format!("upper_{k} vs k/(n+1)"));
            v.notes.push(format!(
                "alpha^({k}) = {k}/{} forces projective space, but (-K_X)^n != (n+1)^n",
                n + 1
            ));
            failure = true;
            break;
        }
        v.notes.push(if b.realized == Some(true) {
            format!("alpha^({k}) = k/(n+1) realized with k not dividing n: open question")
        } else {
            format!("alpha^({k}) = k/(n+1) without realization: not decidable here")
        });
    }
    if failure {
        return v.finish(Verdict::InconsistentInput);
    }
    v.finish(Verdict::Consistent)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(p, d)
    }

    fn bound(lower: Rational, upper: Rational) -> AlphaBound {
        AlphaBound {
            exact: lower == upper,
            lower,
            upper,
            realized: None,
            lower_strict: false,
        }
    }

    #[test]
    fn fujita_examples() {
        let v = fujita_volume_test(2, &q(9, 1), true).unwrap();
        assert_eq!(v.verdict, Verdict::IsProjectiveSpace);
        assert_eq!(
            fujita_volume_test(2, &q(10, 1), true).unwrap().verdict,
            Verdict::NotKSemistable
        );
        assert_eq!(
            fujita_volume_test(2, &q(8, 1), true).unwrap().verdict,
            Verdict::Inconclusive
        );
        assert_eq!(
            fujita_volume_test(2, &q(9, 1), false).unwrap().verdict,
            Verdict::Inconclusive
        );
        assert!(fujita_volume_test(2, &q(0, 1), true).is_err());
    }

    #[test]
    fn top_codimension_bound_examples() {
        let v = top_codimension_bound_check(2, &q(1, 1), &q(2, 1)).unwrap();
        assert_eq!(v.verdict, Verdict::Inconclusive);
        assert_eq!(v.trace[0].rel, Relation::Eq);
        assert_eq!(v.trace[0].lhs, q(4, 1));
        let v = top_codimension_bound_check(2, &q(1, 1), &q(3, 2)).unwrap();
        assert_eq!(v.verdict, Verdict::InconsistentInput);
        assert_eq!(v.trace[0].lhs, q(9, 4));
        let v = top_codimension_bound_check(3, &q(64, 1), &q(3, 4)).unwrap();
        assert_eq!(v.trace[0].lhs, q(27, 1));
        assert_eq!(v.trace[0].rel, Relation::Eq);
    }

    #[test]
    fn top_codimension_examples() {
        assert_eq!(
            top_codimension_test(3, &q(3, 4), true, true)
                .unwrap()
                .verdict,
            Verdict::IsProjectiveSpace
        );
        assert_eq!(
            top_codimension_test(3, &q(4, 5), true, true)
                .unwrap()
                .verdict,
            Verdict::Inconclusive
        );
        assert_eq!(
            top_codimension_test(3, &q(3, 4), false, true)
                .unwrap()
                .verdict,
            Verdict::Inconclusive
        );
        assert_eq!(
            top_codimension_test(3, &q(1, 2), true, true)
                .unwrap()
                .verdict,
            Verdict::InconsistentInput
        );
    }

    #[test]
    fn alpha12_examples() {
        for n in 2..=20 {
            let v = alpha12_criterion(n, &q(1, 2), &q(1, 1)).unwrap();
            assert_eq!(v.verdict, Verdict::KSemistable, "n={n}");
        }
        let v = alpha12_criterion(2, &q(1, 2), &q(3, 4)).unwrap();
        assert_eq!(v.verdict, Verdict::Inconclusive);
        assert_eq!(v.trace.last().unwrap().lhs, q(10, 9));
        assert_eq!(
            alpha12_criterion(2, &q(2, 3), &q(1, 1)).unwrap().verdict,
            Verdict::KStable
        );
        // alpha2 at the threshold
        assert_eq!(
            alpha12_criterion(3, &q(1, 1), &q(1, 2)).unwrap().verdict,
            Verdict::Inconclusive
        );
        assert!(alpha12_criterion(1, &q(1, 1), &q(1, 1)).is_err());
    }

    #[test]
    fn divisibility_examples() {
        let v = divisibility_test(4, 2, &q(25, 1), true, true).unwrap();
        assert_eq!(v.verdict, Verdict::IsProjectiveSpace);
        let line = v
            .trace
            .iter()
            .find(|t| t.label.starts_with("(-K_X)^n"))
            .unwrap();
        assert_eq!(
            (line.lhs.clone(), line.rel, line.rhs.clone()),
            (q(625, 1), Relation::Eq, q(625, 1))
        );

        let v = divisibility_test(3, 2, &q(16, 1), true, true).unwrap();
        assert_eq!(v.verdict, Verdict::Inconclusive);
        assert!(v.notes[0].contains("open question"));

        assert_eq!(
            divisibility_test(2, 1, &q(3, 1), true, true)
                .unwrap()
                .verdict,
            Verdict::IsProjectiveSpace
        );
        assert_eq!(
            divisibility_test(2, 1, &q(2, 1), true, true)
                .unwrap()
                .verdict,
            Verdict::Inconclusive
        );
        assert_eq!(
            divisibility_test(2, 1, &q(4, 1), true, true)
                .unwrap()
                .verdict,
            Verdict::InconsistentInput
        );
        assert_eq!(
            divisibility_test(4, 2, &q(25, 1), false, true)
                .unwrap()
                .verdict,
            Verdict::Inconclusive
        );
    }

    #[test]
    fn monotonicity_examples() {
        let mut m = BTreeMap::new();
        m.insert(1, bound(q(1, 2), q(1, 2)));
        m.insert(
            2,
            AlphaBound {
                lower_strict: true,
                ..bound(q(2, 3), q(3, 4))
            },
        );
        assert_eq!(alpha_monotonicity_check(&m).verdict, Verdict::Consistent);

        let mut m = BTreeMap::new();
        m.insert(1, bound(q(3, 4), q(3, 4)));
        m.insert(2, bound(q(1, 2), q(1, 2)));
        let v = alpha_monotonicity_check(&m);
        assert_eq!(v.verdict, Verdict::InconsistentInput);
        assert!(v.trace_holds());
        assert_eq!(v.trace.len(), 1);
        assert_eq!(v.trace[0].label, "lower_1 vs upper_2");

        let n = 6;
        let m: BTreeMap<u32, AlphaBound> = (1..=n)
            .map(|k| {
                (
                    k,
                    bound(q(k as i64, n as i64 + 1), q(k as i64, n as i64 + 1)),
                )
            })
            .collect();
        assert_eq!(alpha_monotonicity_check(&m).verdict, Verdict::Consistent);

        // loose upper bounds at low codimension are not a contradiction
        let mut m = BTreeMap::new();
        m.insert(1, bound(q(1, 10), q(5, 1)));
        m.insert(2, bound(q(1, 5), q(1, 1)));
        assert_eq!(alpha_monotonicity_check(&m).verdict, Verdict::Consistent);

        // strict lower equal to upper
        let mut m = BTreeMap::new();
        m.insert(
            2,
            AlphaBound {
                lower_strict: true,
                ..bound(q(3, 4), q(3, 4))
            },
        );
        let v = alpha_monotonicity_check(&m);
        assert_eq!(v.verdict, Verdict::InconsistentInput);
        assert_eq!(v.trace.len(), 1);
    }

    #[test]
    fn verdict_json_shape() {
        let v = fujita_volume_test(2, &q(9, 1), true).unwrap();
        let s = serde_json::to_string(&v).unwrap();
        assert!(s.starts_with(r#"{"verdict":"is_projective_space","criterion":"fujita_volume","#));
        assert!(s.contains(r#""lhs":"9","rel":"=","rhs":"9""#));
        let back: CriterionVerdict = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
    }
}
