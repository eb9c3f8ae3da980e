//! Registry of worked example geometries with provenance-tagged invariants.
//!
//! Records are immutable after construction and validated against the
//! stability checks on load.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_math::Rational;
use crate::stability::{
    alpha_monotonicity_check, fujita_volume_test, lower_bound_consistency,
    top_codimension_bound_check, CriterionVerdict, Verdict,
};

/// Recorded bounds `lower <= α^(k) <= upper` (or `lower < α^(k)` when
/// `lower_strict`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaBound {
    pub lower: Rational,
    pub upper: Rational,
    pub exact: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub realized: Option<bool>,
    #[serde(default)]
    pub lower_strict: bool,
}

impl AlphaBound {
    pub fn exact(value: Rational, realized: Option<bool>) -> Self {
        AlphaBound {
            lower: value.clone(),
            upper: value,
            exact: true,
            realized,
            lower_strict: false,
        }
    }

    pub fn interval(lower: Rational, upper: Rational, lower_strict: bool) -> Self {
        AlphaBound {
            lower,
            upper,
            exact: false,
            realized: None,
            lower_strict,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeometryRecord {
    pub name: String,
    pub n: u32,
    pub vol: Rational,
    pub smooth: bool,
    #[serde(default)]
    pub k_semistable: Option<bool>,
    #[serde(default)]
    pub picard_rank_one: Option<bool>,
    pub alpha_bounds: BTreeMap<u32, AlphaBound>,
    #[serde(default)]
    pub provenance: BTreeMap<String, String>,
}

impl GeometryRecord {
    /// Structural checks: `n >= 1`, `vol > 0`, bound keys in `1..=n`,
    /// `0 < lower <= upper` (strict when flagged), `exact` iff a point.
    pub fn check_structure(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidRecord(format!("{}: {msg}", self.name)));
        if self.n == 0 {
            return bad("n must be positive".into());
        }
        if !self.vol.is_positive() {
            return bad(format!("vol = {} must be positive", self.vol));
        }
        for (k, b) in &self.alpha_bounds {
            if *k == 0 || *k > self.n {
                return bad(format!("alpha_bounds key {k} outside 1..={}", self.n));
            }
            if !b.lower.is_positive() {
                return bad(format!(
                    "alpha_bounds[{k}].lower = {} must be positive",
                    b.lower
                ));
            }
            if b.lower > b.upper {
                return bad(format!(
                    "alpha_bounds[{k}]: lower {} > upper {}",
                    b.lower, b.upper
                ));
            }
            if b.exact && (b.lower != b.upper || b.lower_strict) {
                return bad(format!("alpha_bounds[{k}] marked exact but is an interval"));
            }
        }
        Ok(())
    }

    /// Smooth with volume `(n+1)^n`; by the equality case of the volume
    /// bound this singles out projective space among K-semistable Fano
    /// manifolds.
    pub fn is_projective_space_by_volume(&self) -> bool {
        self.smooth && self.vol == Rational::integer(self.n as i64 + 1).pow(self.n as i32)
    }
}

fn projective_space(n: u32) -> GeometryRecord {
    let alpha_bounds = (1..=n)
        .map(|k| {
            let v = Rational::new(k as i64, n as i64 + 1);
            (k, AlphaBound::exact(v, Some(true)))
        })
        .collect();
    let provenance = BTreeMap::from([
        (
            "alpha_bounds".to_string(),
            "lower bound k/(n+1) holds on every K-semistable Q-Fano; equality realized by \
             a complete intersection of k hyperplanes (a linear subspace), lct((n+1)L) = k/(n+1)"
                .to_string(),
        ),
        ("vol".to_string(), "(-K) = (n+1)H, H^n = 1".to_string()),
        (
            "k_semistable".to_string(),
            "projective space is K-polystable".to_string(),
        ),
    ]);
    GeometryRecord {
        name: format!("P{n}"),
        n,
        vol: Rational::integer(n as i64 + 1).pow(n as i32),
        smooth: true,
        k_semistable: Some(true),
        picard_rank_one: Some(true),
        alpha_bounds,
        provenance,
    }
}

fn del_pezzo_degree_one() -> GeometryRecord {
    GeometryRecord {
        name: "dP1".into(),
        n: 2,
        vol: Rational::one(),
        smooth: true,
        k_semistable: None,
        picard_rank_one: Some(false),
        alpha_bounds: BTreeMap::from([(2, AlphaBound::exact(Rational::integer(2), None))]),
        provenance: BTreeMap::from([
            (
                "alpha_bounds".into(),
                "alpha^(2) = 2 on a smooth del Pezzo surface of degree 1; attains the lower \
                 bound alpha^(n) >= n / vol^(1/n) with equality"
                    .into(),
            ),
            ("vol".into(), "degree 1: (-K)^2 = 1".into()),
        ]),
    }
}

fn p1_times_p1() -> GeometryRecord {
    GeometryRecord {
        name: "P1xP1".into(),
        n: 2,
        vol: Rational::integer(8),
        smooth: true,
        k_semistable: Some(true),
        picard_rank_one: Some(false),
        alpha_bounds: BTreeMap::from([
            (1, AlphaBound::exact(Rational::new(1, 2), None)),
            (
                2,
                AlphaBound::interval(Rational::new(2, 3), Rational::new(3, 4), true),
            ),
        ]),
        provenance: BTreeMap::from([
            (
                "alpha_bounds.1".into(),
                "alpha^(1)(P1xP1) = 1/2 (Cheltsov 2008)".into(),
            ),
            (
                "alpha_bounds.2".into(),
                "strict lower bound: equality k/(n+1) only on projective space; upper bound \
                 3/4 from Z = ci(L1 + L2, diagonal), both members of |-K/2| (r = 1/2), with \
                 lct(X, Z) = 3/2 so lct(X, 2Z) = 3/4; the exact value is open and only the \
                 interval is stored"
                    .into(),
            ),
            ("vol".into(), "(-K)^2 = 8".into()),
            (
                "k_semistable".into(),
                "P1xP1 is K-polystable (toric, barycenter at origin)".into(),
            ),
        ]),
    }
}

/// Template for a Fano manifold with `-K_X = lH`, `|H|` base point free,
/// asserted K-semistable: complete intersections of `k` members of `|H|`
/// give `α^(k) <= k/l`, and K-semistability gives `α^(k) >= k/(n+1)`.
pub fn index_template(
    name: &str,
    n: u32,
    index: u32,
    vol: Rational,
    k_semistable: bool,
) -> Result<GeometryRecord> {
    if !k_semistable {
        return Err(Error::InvalidRecord(format!(
            "{name}: the template's lower bounds need K-semistability"
        )));
    }
    if index == 0 || index > n + 1 {
        return Err(Error::InvalidRecord(format!(
            "{name}: Fano index {index} outside 1..={}",
            n + 1
        )));
    }
    let alpha_bounds = (1..=n)
        .map(|k| {
            let lower = Rational::new(k as i64, n as i64 + 1);
            let upper = Rational::new(k as i64, index as i64);
            let bound = if lower == upper {
                AlphaBound::exact(lower, Some(true))
            } else {
                AlphaBound::interval(lower, upper, false)
            };
            (k, bound)
        })
        .collect();
    let record = GeometryRecord {
        name: name.to_string(),
        n,
        vol,
        smooth: true,
        k_semistable: Some(true),
        picard_rank_one: Some(true),
        alpha_bounds,
        provenance: BTreeMap::from([(
            "alpha_bounds".into(),
            format!(
                "upper k/{index} from complete intersections of k members of |H|, -K = {index}H; \
                 lower k/(n+1) from K-semistability"
            ),
        )]),
    };
    record.check_structure()?;
    Ok(record)
}

fn quadric_threefold() -> GeometryRecord {
    let mut r =
        index_template("Q3", 3, 3, Rational::integer(54), true).expect("valid template parameters");
    r.provenance.insert("vol".into(), "-K = 3H, H^3 = 2".into());
    r.provenance.insert(
        "k_semistable".into(),
        "smooth quadrics are homogeneous, hence K-polystable".into(),
    );
    r
}

/// P1..P8, dP1, P1xP1 and the quadric threefold from the index template.
pub fn builtin_records() -> Vec<GeometryRecord> {
    let mut out: Vec<GeometryRecord> = (1..=8).map(projective_space).collect();
    out.push(del_pezzo_degree_one());
    out.push(p1_times_p1());
    out.push(quadric_threefold());
    out
}

pub fn lookup(name: &str) -> Result<GeometryRecord> {
    builtin_records()
        .into_iter()
        .find(|r| r.name == name)
        .ok_or_else(|| Error::UnknownRecord(name.to_string()))
}

/// Runs, in order, bound monotonicity, the volume bound (when K-semistable
/// is asserted), the codimension-k lower bound, and the top-codimension
/// volume bound (smooth records with `α^(n)`). Returns the first failure,
/// or `consistent` with the combined trace.
pub fn validate(record: &GeometryRecord) -> Result<CriterionVerdict> {
    record.check_structure()?;
    let mut steps = vec![alpha_monotonicity_check(&record.alpha_bounds)];
    if record.k_semistable == Some(true) {
        steps.push(fujita_volume_test(record.n, &record.vol, record.smooth)?);
        steps.push(lower_bound_consistency(record));
    }
    if record.smooth {
        if let Some(b) = record.alpha_bounds.get(&record.n) {
            // α^(n) <= upper, so a violation at the upper bound is a contradiction
            steps.push(top_codimension_bound_check(
                record.n,
                &record.vol,
                &b.upper,
            )?);
        }
    }
    if let Some(failed) = steps.iter().find(|s| s.verdict.is_failure()) {
        return Ok(failed.clone());
    }
    let mut combined = CriterionVerdict {
        verdict: Verdict::Consistent,
        criterion: "catalog_validate".into(),
        assumptions: Vec::new(),
        trace: Vec::new(),
        notes: Vec::new(),
    };
    for s in steps {
        for a in s.assumptions {
            if !combined.assumptions.contains(&a) {
                combined.assumptions.push(a);
            }
        }
        combined.trace.extend(s.trace);
        combined.notes.extend(s.notes);
    }
    Ok(combined)
}

/// Reads one record from a JSON file and checks its structure.
pub fn load_file(path: &Path) -> Result<GeometryRecord> {
    let text = fs::read_to_string(path)?;
    let record: GeometryRecord = serde_json::from_str(&text)?;
    record.check_structure()?;
    Ok(record)
}

/// Reads every `*.json` file in `dir`, sorted by file name.
pub fn load_dir(dir: &Path) -> Result<Vec<GeometryRecord>> {
    let mut paths: Vec<_> = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    paths.iter().map(|p| load_file(p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::beta::lct_lower_bound;
    use crate::ci_model::CIModel;
    use crate::monomial::{lct_power, MonomialIdeal};

    #[test]
    fn lookups() {
        let p3 = lookup("P3").unwrap();
        let b = &p3.alpha_bounds[&2];
        assert!(b.exact);
        assert_eq!(b.lower, Rational::new(1, 2));

        let dp1 = lookup("dP1").unwrap();
        assert_eq!(
            dp1.alpha_bounds[&2],
            AlphaBound::exact(Rational::integer(2), None)
        );

        let pp = lookup("P1xP1").unwrap();
        let b = &pp.alpha_bounds[&2];
        assert!(b.lower_strict && !b.exact);
        assert_eq!(
            (b.lower.clone(), b.upper.clone()),
            (Rational::new(2, 3), Rational::new(3, 4))
        );

        assert!(matches!(lookup("P9"), Err(Error::UnknownRecord(_))));
    }

    #[test]
    fn builtins_validate_consistent() {
        for r in builtin_records() {
            let v = validate(&r).unwrap();
            assert_eq!(v.verdict, Verdict::Consistent, "{}: {v:?}", r.name);
            assert!(v.trace_holds());
        }
    }

    #[test]
    fn perturbed_volume_is_not_semistable() {
        for n in 1..=8 {
            let mut r = lookup(&format!("P{n}")).unwrap();
            r.vol = &r.vol + &Rational::one();
            assert_eq!(validate(&r).unwrap().verdict, Verdict::NotKSemistable);
        }
    }

    #[test]
    fn decreasing_alpha_is_inconsistent() {
        let mut r = lookup("P1xP1").unwrap();
        r.alpha_bounds
            .insert(1, AlphaBound::exact(Rational::new(4, 5), None));
        assert_eq!(validate(&r).unwrap().verdict, Verdict::InconsistentInput);
    }

    #[test]
    fn json_round_trip() {
        for r in builtin_records() {
            let s = serde_json::to_string_pretty(&r).unwrap();
            let back: GeometryRecord = serde_json::from_str(&s).unwrap();
            assert_eq!(back, r);
        }
    }

    #[test]
    fn projective_space_matches_monomial_lct() {
        for n in 1..=8u32 {
            let r = lookup(&format!("P{n}")).unwrap();
            for k in 1..=n {
                let b = &r.alpha_bounds[&k];
                let ideal = MonomialIdeal::coordinate(n as usize, k as usize).unwrap();
                let via_lct = lct_power(&ideal, &Rational::integer(n as i64 + 1)).unwrap();
                assert_eq!(b.upper, via_lct);
                let model = CIModel::unit(n, k).unwrap();
                assert_eq!(b.lower, lct_lower_bound(&model));
            }
        }
    }

    #[test]
    fn structure_errors() {
        let mut r = lookup("P2").unwrap();
        r.alpha_bounds
            .insert(3, AlphaBound::exact(Rational::one(), None));
        assert!(r.check_structure().is_err());
        let mut r = lookup("P2").unwrap();
        r.vol = Rational::zero();
        assert!(validate(&r).is_err());
        assert!(index_template("X", 3, 2, Rational::integer(8), false).is_err());
    }
}
