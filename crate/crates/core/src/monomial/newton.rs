//! Facet description of the Newton polyhedron `conv(generators) + R^d_{>=0}`.
//!
//! The valid inequalities `<w, u> >= c` with `w >= 0` form the cone
//!
//! ```text
//!   { (w, c) : w_i >= 0,  <w, g> - c >= 0 for every generator g }
//! ```
//!
//! whose extreme rays are exactly the facets of the polyhedron plus the
//! trivial ray `(0, -1)`. Rays with `c > 0` are the compact-side facets,
//! rays with `c = 0` are the coordinate facets `u_i >= 0` that actually
//! support a facet.

use num::bigint::BigInt;
use num::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::cone::{extreme_rays, IntVec};
use super::ideal::{Exponent, MonomialIdeal};
use crate::error::{Error, Result};
use crate::exact_math::Rational;

/// `<normal, u> >= offset`, with `normal` a primitive nonnegative integer
/// vector together with `offset`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Facet {
    pub normal: Vec<u64>,
    pub offset: u64,
}

impl Facet {
    pub fn value_at(&self, u: &[u32]) -> u64 {
        self.normal.iter().zip(u).map(|(w, &x)| w * x as u64).sum()
    }

    pub fn is_tight_at(&self, u: &[u32]) -> bool {
        self.value_at(u) == self.offset
    }

    /// `<w, (1,...,1)> / c`.
    pub fn all_ones_ratio(&self) -> Rational {
        let s: u64 = self.normal.iter().sum();
        Rational::from(BigInt::from(s)) / Rational::from(BigInt::from(self.offset))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewtonPolyhedron {
    pub num_vars: usize,
    /// Generators that are vertices of the polyhedron.
    pub vertices: Vec<Exponent>,
    /// Facets with positive offset, sorted.
    pub facets: Vec<Facet>,
    /// Indices `i` for which `u_i >= 0` is a facet.
    pub coordinate_facets: Vec<usize>,
}

fn to_u64(x: &BigInt) -> u64 {
    u64::try_from(x).expect("facet coefficient fits in u64")
}

pub fn newton_polyhedron(ideal: &MonomialIdeal) -> Result<NewtonPolyhedron> {
    let d = ideal.num_vars();
    let dim = d + 1;
    let mut rows: Vec<IntVec> = Vec::with_capacity(d + ideal.generators().len());
    for i in 0..d {
        let mut r = vec![BigInt::zero(); dim];
        r[i] = BigInt::from(1);
        rows.push(r);
    }
    for g in ideal.generators() {
        let mut r: IntVec = g.iter().map(|&e| BigInt::from(e)).collect();
        r.push(BigInt::from(-1));
        rows.push(r);
    }
    let rays = extreme_rays(&rows, dim)?;

    let mut facets = Vec::new();
    let mut coordinate_facets = Vec::new();
    for ray in rays {
        let c = &ray[d];
        if c.is_positive() {
            facets.push(Facet {
                normal: ray[..d].iter().map(to_u64).collect(),
                offset: to_u64(c),
            });
        } else if c.is_zero() {
            let support: Vec<usize> = (0..d).filter(|&i| !ray[i].is_zero()).collect();
            debug_assert_eq!(support.len(), 1, "c = 0 rays are coordinate directions");
            coordinate_facets.extend(support);
        }
    }
    facets.sort();
    coordinate_facets.sort();

    // a generator is a vertex iff the facets tight at it span R^d; counting
    // tight facets (including coordinate ones) with rank d is enough here
    let vertices = ideal
        .generators()
        .iter()
        .filter(|g| is_vertex(g, &facets, &coordinate_facets, d))
        .cloned()
        .collect();

    Ok(NewtonPolyhedron {
        num_vars: d,
        vertices,
        facets,
        coordinate_facets,
    })
}

fn is_vertex(g: &[u32], facets: &[Facet], coords: &[usize], d: usize) -> bool {
    let mut rows: Vec<Vec<Rational>> = facets
        .iter()
        .filter(|f| f.is_tight_at(g))
        .map(|f| {
            f.normal
                .iter()
                .map(|&w| Rational::integer(w as i64))
                .collect()
        })
        .collect();
    for &i in coords {
        if g[i] == 0 {
            let mut r = vec![Rational::zero(); d];
            r[i] = Rational::one();
            rows.push(r);
        }
    }
    rank(rows) == d
}

fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let mut r = 0;
    let cols = rows.first().map_or(0, Vec::len);
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &rows[r][c];
                let pivot = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot) {
                    *x -= &(&f * y);
                }
            }
        }
        r += 1;
    }
    r
}

impl NewtonPolyhedron {
    pub fn contains(&self, u: &[u32]) -> bool {
        self.facets.iter().all(|f| f.value_at(u) >= f.offset)
    }

    /// Same membership test for rational points.
    pub fn contains_rational(&self, u: &[Rational]) -> bool {
        u.iter().all(|x| !x.is_negative())
            && self.facets.iter().all(|f| {
                let v: Rational = f
                    .normal
                    .iter()
                    .zip(u)
                    .map(|(&w, x)| Rational::integer(w as i64) * x)
                    .sum();
                v >= Rational::integer(f.offset as i64)
            })
    }

    /// `min_F <w_F, 1> / c_F`; errors when there is no compact-side facet
    /// (the unit ideal).
    pub fn min_facet_ratio(&self) -> Result<Rational> {
        self.facets
            .iter()
            .map(Facet::all_ones_ratio)
            .min()
            .ok_or_else(|| Error::Unbounded("Newton polyhedron is the whole orthant".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(normal: &[u64], offset: u64) -> Facet {
        Facet {
            normal: normal.to_vec(),
            offset,
        }
    }

    #[test]
    fn maximal_ideal_in_two_vars() {
        let p = newton_polyhedron(&MonomialIdeal::coordinate(2, 2).unwrap()).unwrap();
        assert_eq!(p.facets, vec![f(&[1, 1], 1)]);
        assert_eq!(p.coordinate_facets, vec![0, 1]);
    }

    #[test]
    fn x2_y3() {
        let p = newton_polyhedron(&MonomialIdeal::diagonal(&[2, 3]).unwrap()).unwrap();
        assert_eq!(p.facets, vec![f(&[3, 2], 6)]);
        assert_eq!(p.vertices.len(), 2);
    }

    #[test]
    fn x2y_xy3() {
        // hull of (2,1),(1,3) plus the orthant: the segment between them
        // (2u1 + u2 >= 5) and the two unbounded edges u1 >= 1, u2 >= 1
        let i = MonomialIdeal::new(2, vec![vec![2, 1], vec![1, 3]]).unwrap();
        let p = newton_polyhedron(&i).unwrap();
        assert_eq!(p.facets, vec![f(&[0, 1], 1), f(&[1, 0], 1), f(&[2, 1], 5)]);
        assert!(p.coordinate_facets.is_empty());
        for g in i.generators() {
            assert!(p.contains(g));
        }
        assert!(!p.contains(&[1, 2]));
    }

    #[test]
    fn non_vertex_generator() {
        // (x^2, xy, y^2): xy lies on the segment between x^2 and y^2
        let i = MonomialIdeal::maximal_power(2, 2).unwrap();
        let p = newton_polyhedron(&i).unwrap();
        assert_eq!(p.facets, vec![f(&[1, 1], 2)]);
        assert_eq!(p.vertices, vec![vec![0, 2], vec![2, 0]]);
    }

    #[test]
    fn every_facet_tight_somewhere() {
        let i = MonomialIdeal::new(
            3,
            vec![
                vec![4, 0, 0],
                vec![0, 3, 0],
                vec![0, 0, 5],
                vec![1, 1, 1],
                vec![2, 0, 2],
            ],
        )
        .unwrap();
        let p = newton_polyhedron(&i).unwrap();
        for facet in &p.facets {
            assert!(i.generators().iter().any(|g| facet.is_tight_at(g)));
            for g in i.generators() {
                assert!(facet.value_at(g) >= facet.offset);
            }
        }
    }
}
