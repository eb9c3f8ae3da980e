//! Extreme rays of a pointed polyhedral cone `{y : A y >= 0}` by the
//! double description method, in exact arithmetic.

use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact_math::Rational;

/// Integer vectors are enough here: every constraint and ray is scaled to a
/// primitive integer vector.
pub type IntVec = Vec<BigInt>;

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Divides out the gcd of the entries.
pub fn primitive(v: IntVec) -> IntVec {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        return v;
    }
    v.into_iter().map(|x| x / &g).collect()
}

/// Picks `dim` linearly independent rows, or `None` when the rank is lower.
fn independent_rows(rows: &[IntVec], dim: usize) -> Option<Vec<usize>> {
    let mut basis: Vec<(usize, Vec<Rational>)> = Vec::new(); // (pivot column, reduced row)
    let mut chosen = Vec::new();
    for (idx, row) in rows.iter().enumerate() {
        let mut v: Vec<Rational> = row.iter().cloned().map(Rational::from).collect();
        for (pivot, b) in &basis {
            if !v[*pivot].is_zero() {
                let f = &v[*pivot] / &b[*pivot];
                for (x, y) in v.iter_mut().zip(b) {
                    *x -= &(&f * y);
                }
            }
        }
        if let Some(p) = v.iter().position(|x| !x.is_zero()) {
            basis.push((p, v));
            chosen.push(idx);
            if chosen.len() == dim {
                return Some(chosen);
            }
        }
    }
    None
}

/// Inverse of a square rational matrix by Gauss-Jordan elimination.
fn invert(mut m: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    let n = m.len();
    let mut inv: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !m[r][col].is_zero())
            .expect("nonsingular");
        m.swap(col, piv);
        inv.swap(col, piv);
        let p = m[col][col].clone();
        for j in 0..n {
            m[col][j] = &m[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for j in 0..n {
                    let a = &f * &m[col][j];
                    m[r][j] -= &a;
                    let b = &f * &inv[col][j];
                    inv[r][j] -= &b;
                }
            }
        }
    }
    inv
}

fn to_primitive_ints(v: &[Rational]) -> IntVec {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    primitive(v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect())
}

#[derive(Clone)]
struct Ray {
    v: IntVec,
    /// bit `i` set when constraint `i` (in processing order) is tight
    zeros: u128,
}

/// Extreme rays of `{y in R^dim : row · y >= 0 for every row}` as primitive
/// integer vectors, sorted. Fails if the cone is not pointed or there are
/// more than 128 constraints.
pub fn extreme_rays(rows: &[IntVec], dim: usize) -> Result<Vec<IntVec>> {
    if rows.len() > 128 {
        return Err(Error::Precondition(format!(
            "{} constraints exceed the supported 128",
            rows.len()
        )));
    }
    if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
        return Err(Error::Precondition(format!(
            "constraint of length {} in dimension {dim}",
            bad.len()
        )));
    }
    let init = independent_rows(rows, dim).ok_or_else(|| {
        Error::Precondition("cone is not pointed (constraint rank too low)".into())
    })?;

    // processing order: the independent rows first, then the rest
    let mut order = init.clone();
    order.extend((0..rows.len()).filter(|i| !init.contains(i)));
    let ordered: Vec<&IntVec> = order.iter().map(|&i| &rows[i]).collect();

    // the initial simplicial cone A0 y >= 0 has the columns of A0^{-1} as rays
    let a0: Vec<Vec<Rational>> = init
        .iter()
        .map(|&i| rows[i].iter().cloned().map(Rational::from).collect())
        .collect();
    let inv = invert(a0);
    let mut rays: Vec<Ray> = (0..dim)
        .map(|j| {
            let col: Vec<Rational> = (0..dim).map(|i| inv[i][j].clone()).collect();
            let v = to_primitive_ints(&col);
            let zeros = (0..dim)
                .filter(|&i| i != j)
                .fold(0u128, |acc, i| acc | (1u128 << i));
            Ray { v, zeros }
        })
        .collect();

    for (step, row) in ordered.iter().enumerate().skip(dim) {
        let bit = 1u128 << step;
        let vals: Vec<BigInt> = rays.iter().map(|r| dot(row, &r.v)).collect();
        let mut next: Vec<Ray> = Vec::new();
        for (r, val) in rays.iter().zip(&vals) {
            if val.is_positive() {
                next.push(r.clone());
            } else if val.is_zero() {
                next.push(Ray {
                    v: r.v.clone(),
                    zeros: r.zeros | bit,
                });
            }
        }
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].zeros & rays[q].zeros;
                if (common.count_ones() as usize) + 2 < dim {
                    continue;
                }
                // combinatorial adjacency: no third ray is tight on all of `common`
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(i, r)| i == p || i == q || r.zeros & common != common);
                if !adjacent {
                    continue;
                }
                let (vp, vq) = (&vals[p], &vals[q]);
                let v: IntVec = rays[q]
                    .v
                    .iter()
                    .zip(&rays[p].v)
                    .map(|(yq, yp)| vp * yq - vq * yp)
                    .collect();
                next.push(Ray {
                    v: primitive(v),
                    zeros: common | bit,
                });
            }
        }
        rays = next;
    }

    let mut out: Vec<IntVec> = rays.into_iter().map(|r| r.v).collect();
    out.sort();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(v: &[i64]) -> IntVec {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn orthant_rays() {
        let rows = vec![iv(&[1, 0, 0]), iv(&[0, 1, 0]), iv(&[0, 0, 1])];
        let rays = extreme_rays(&rows, 3).unwrap();
        assert_eq!(rays, vec![iv(&[0, 0, 1]), iv(&[0, 1, 0]), iv(&[1, 0, 0])]);
    }

    #[test]
    fn square_pyramid_cone() {
        // cone over the square |y1| <= y3, |y2| <= y3 has 4 extreme rays
        let rows = vec![
            iv(&[1, 0, 1]),
            iv(&[-1, 0, 1]),
            iv(&[0, 1, 1]),
            iv(&[0, -1, 1]),
        ];
        let rays = extreme_rays(&rows, 3).unwrap();
        assert_eq!(
            rays,
            vec![
                iv(&[-1, -1, 1]),
                iv(&[-1, 1, 1]),
                iv(&[1, -1, 1]),
                iv(&[1, 1, 1])
            ]
        );
    }

    #[test]
    fn redundant_constraint_is_harmless() {
        let rows = vec![iv(&[1, 0]), iv(&[0, 1]), iv(&[1, 1])];
        let rays = extreme_rays(&rows, 2).unwrap();
        assert_eq!(rays, vec![iv(&[0, 1]), iv(&[1, 0])]);
    }

    #[test]
    fn non_pointed_rejected() {
        let rows = vec![iv(&[1, 0])];
        assert!(extreme_rays(&rows, 2).is_err());
    }
}
