use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Exponent = Vec<u32>;

/// Monomial ideal in `k[x_1, ..., x_d]`, stored as its minimal generating
/// set (an antichain under the componentwise order), sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MonomialIdeal {
    #[serde(rename = "vars")]
    num_vars: usize,
    generators: Vec<Exponent>,
}

#[derive(Deserialize)]
struct RawIdeal {
    vars: usize,
    generators: Vec<Exponent>,
}

impl<'de> Deserialize<'de> for MonomialIdeal {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = RawIdeal::deserialize(deserializer)?;
        let (ideal, dropped) = MonomialIdeal::with_reduction_report(raw.vars, raw.generators)
            .map_err(serde::de::Error::custom)?;
        if dropped > 0 {
            log::warn!("dropped {dropped} redundant generator(s) while loading monomial ideal");
        }
        Ok(ideal)
    }
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Removes duplicates and every generator divisible by another one.
fn minimalize(mut gens: Vec<Exponent>) -> Vec<Exponent> {
    // after sorting by total degree, a divisor always precedes its multiples
    gens.sort_by(|a, b| {
        let (sa, sb): (u32, u32) = (a.iter().sum(), b.iter().sum());
        sa.cmp(&sb).then_with(|| a.cmp(b))
    });
    gens.dedup();
    let mut kept: Vec<Exponent> = Vec::with_capacity(gens.len());
    for g in gens {
        if !kept.iter().any(|h| divides(h, &g)) {
            kept.push(g);
        }
    }
    kept.sort();
    kept
}

impl MonomialIdeal {
    pub fn new(num_vars: usize, generators: Vec<Exponent>) -> Result<Self> {
        Ok(Self::with_reduction_report(num_vars, generators)?.0)
    }

    /// Like [`MonomialIdeal::new`], also returning how many input generators
    /// were redundant.
    pub fn with_reduction_report(
        num_vars: usize,
        generators: Vec<Exponent>,
    ) -> Result<(Self, usize)> {
        if num_vars == 0 {
            return Err(Error::InvalidIdeal("need at least one variable".into()));
        }
        if generators.is_empty() {
            return Err(Error::InvalidIdeal(
                "no generators (the zero ideal is not supported)".into(),
            ));
        }
        if let Some(bad) = generators.iter().find(|g| g.len() != num_vars) {
            return Err(Error::InvalidIdeal(format!(
                "generator {bad:?} has {} entries, expected {num_vars}",
                bad.len()
            )));
        }
        let before = generators.len();
        let generators = minimalize(generators);
        let dropped = before - generators.len();
        Ok((
            MonomialIdeal {
                num_vars,
                generators,
            },
            dropped,
        ))
    }

    /// `(x_1, ..., x_k)` inside `d` variables.
    pub fn coordinate(num_vars: usize, k: usize) -> Result<Self> {
        Self::coordinate_powers(num_vars, k, 1)
    }

    /// `(x_1^e, ..., x_k^e)` inside `d` variables.
    pub fn coordinate_powers(num_vars: usize, k: usize, e: u32) -> Result<Self> {
        if k == 0 || k > num_vars {
            return Err(Error::InvalidIdeal(format!(
                "k = {k} outside 1..={num_vars}"
            )));
        }
        let gens = (0..k)
            .map(|i| {
                let mut g = vec![0; num_vars];
                g[i] = e;
                g
            })
            .collect();
        Self::new(num_vars, gens)
    }

    /// `(x_1^{a_1}, ..., x_d^{a_d})`.
    pub fn diagonal(exponents: &[u32]) -> Result<Self> {
        let d = exponents.len();
        let gens = exponents
            .iter()
            .enumerate()
            .map(|(i, &a)| {
                let mut g = vec![0; d];
                g[i] = a;
                g
            })
            .collect();
        Self::new(d, gens)
    }

    /// `m^power` for the maximal ideal `m = (x_1, ..., x_d)`.
    pub fn maximal_power(num_vars: usize, power: u32) -> Result<Self> {
        Self::coordinate(num_vars, num_vars)?.power(power)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn generators(&self) -> &[Exponent] {
        &self.generators
    }

    pub fn is_unit(&self) -> bool {
        self.generators.iter().any(|g| g.iter().all(|&e| e == 0))
    }

    pub fn contains(&self, monomial: &[u32]) -> bool {
        self.generators.iter().any(|g| divides(g, monomial))
    }

    /// Exponent `a_i` of the pure power `x_i^{a_i}` among the generators,
    /// for every axis; `None` unless the ideal is m-primary.
    pub fn axis_exponents(&self) -> Option<Vec<u32>> {
        (0..self.num_vars)
            .map(|i| {
                self.generators
                    .iter()
                    .filter(|g| g[i] > 0 && g.iter().enumerate().all(|(j, &e)| j == i || e == 0))
                    .map(|g| g[i])
                    .min()
            })
            .collect()
    }

    pub fn is_m_primary(&self) -> bool {
        !self.is_unit() && self.axis_exponents().is_some()
    }

    pub fn max_exponent(&self) -> u32 {
        self.generators
            .iter()
            .flat_map(|g| g.iter().copied())
            .max()
            .unwrap_or(0)
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        if self.num_vars != other.num_vars {
            return Err(Error::InvalidIdeal("variable count mismatch".into()));
        }
        let gens = self
            .generators
            .iter()
            .flat_map(|a| {
                other
                    .generators
                    .iter()
                    .map(move |b| a.iter().zip(b).map(|(x, y)| x + y).collect())
            })
            .collect();
        MonomialIdeal::new(self.num_vars, gens)
    }

    /// `I^t`; `I^0` is the unit ideal.
    pub fn power(&self, t: u32) -> Result<MonomialIdeal> {
        let mut acc = MonomialIdeal::new(self.num_vars, vec![vec![0; self.num_vars]])?;
        for _ in 0..t {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    /// Colength `l(R/I)`: the number of monomials outside `I`.
    ///
    /// For each exponent prefix `(u_1..u_{d-1})` in the staircase box, the
    /// monomials outside `I` in that column are exactly those with
    /// `u_d < min{g_d : g_i <= u_i for i < d}`.
    pub fn colength(&self) -> Result<u64> {
        if self.is_unit() {
            return Ok(0);
        }
        let axes = self
            .axis_exponents()
            .ok_or_else(|| Error::NotMPrimary("the quotient has infinite length".into()))?;
        let d = self.num_vars;
        let last = d - 1;
        let mut total: u64 = 0;
        let mut prefix = vec![0u32; last];
        loop {
            let column = self
                .generators
                .iter()
                .filter(|g| g[..last].iter().zip(&prefix).all(|(a, b)| a <= b))
                .map(|g| g[last])
                .min()
                .expect("x_d^{a_d} lies over every prefix");
            total += column as u64;
            // odometer over the prefix box
            let mut i = 0;
            loop {
                if i == last {
                    return Ok(total);
                }
                prefix[i] += 1;
                if prefix[i] < axes[i] {
                    break;
                }
                prefix[i] = 0;
                i += 1;
            }
        }
    }
}

impl PartialOrd for MonomialIdeal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MonomialIdeal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.num_vars
            .cmp(&other.num_vars)
            .then_with(|| self.generators.cmp(&other.generators))
    }
}

/// Free-function form of [`MonomialIdeal::colength`].
pub fn length_quotient(ideal: &MonomialIdeal) -> Result<u64> {
    ideal.colength()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_to_antichain() {
        let (i, dropped) = MonomialIdeal::with_reduction_report(
            2,
            vec![vec![2, 1], vec![1, 0], vec![1, 0], vec![0, 3]],
        )
        .unwrap();
        assert_eq!(i.generators(), &[vec![0, 3], vec![1, 0]]);
        assert_eq!(dropped, 2);
    }

    #[test]
    fn rejects_malformed() {
        assert!(MonomialIdeal::new(2, vec![]).is_err());
        assert!(MonomialIdeal::new(2, vec![vec![1, 2, 3]]).is_err());
        assert!(MonomialIdeal::new(0, vec![vec![]]).is_err());
    }

    #[test]
    fn m_primary_detection() {
        assert!(MonomialIdeal::diagonal(&[2, 3]).unwrap().is_m_primary());
        let not = MonomialIdeal::new(2, vec![vec![2, 1], vec![1, 3]]).unwrap();
        assert!(!not.is_m_primary());
        assert!(!MonomialIdeal::coordinate(3, 2).unwrap().is_m_primary());
    }

    #[test]
    fn colength_examples() {
        assert_eq!(
            MonomialIdeal::diagonal(&[2, 3])
                .unwrap()
                .colength()
                .unwrap(),
            6
        );
        assert_eq!(
            MonomialIdeal::coordinate(2, 2).unwrap().colength().unwrap(),
            1
        );
        let m2 = MonomialIdeal::new(2, vec![vec![2, 0], vec![1, 1], vec![0, 2]]).unwrap();
        assert_eq!(m2.colength().unwrap(), 3);
        assert_eq!(
            MonomialIdeal::diagonal(&[4]).unwrap().colength().unwrap(),
            4
        );
        let err = MonomialIdeal::coordinate(3, 2)
            .unwrap()
            .colength()
            .unwrap_err();
        assert!(matches!(err, Error::NotMPrimary(_)));
    }

    #[test]
    fn colength_matches_box_enumeration() {
        let i = MonomialIdeal::new(
            3,
            vec![
                vec![3, 0, 0],
                vec![0, 2, 0],
                vec![0, 0, 4],
                vec![1, 1, 1],
                vec![2, 0, 1],
            ],
        )
        .unwrap();
        let mut brute = 0;
        for a in 0..3u32 {
            for b in 0..2u32 {
                for c in 0..4u32 {
                    if !i.contains(&[a, b, c]) {
                        brute += 1;
                    }
                }
            }
        }
        assert_eq!(i.colength().unwrap(), brute);
    }

    #[test]
    fn powers() {
        let m = MonomialIdeal::coordinate(2, 2).unwrap();
        let m2 = m.power(2).unwrap();
        assert_eq!(m2.generators(), &[vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(
            MonomialIdeal::maximal_power(3, 2)
                .unwrap()
                .generators()
                .len(),
            6
        );
        assert!(m.power(0).unwrap().is_unit());
    }

    #[test]
    fn json_shape() {
        let i: MonomialIdeal =
            serde_json::from_str(r#"{"vars":2,"generators":[[2,0],[0,3],[2,3]]}"#).unwrap();
        assert_eq!(i, MonomialIdeal::diagonal(&[2, 3]).unwrap());
        assert_eq!(
            serde_json::to_string(&i).unwrap(),
            r#"{"vars":2,"generators":[[0,3],[2,0]]}"#
        );
    }
}
