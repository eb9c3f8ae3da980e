//! Exact volume of a bounded H-polytope `{x : A x <= b}` by Lasserre's
//! recursive facet formula:
//!
//! ```text
//!   vol_d(P) = (1/d) Σ_i  b_i / |a_ij| · vol_{d-1}(proj_j F_i)
//! ```
//!
//! where `F_i` is the face on the i-th hyperplane and `j` any coordinate
//! with `a_ij != 0`; the face is parametrized by eliminating `x_j`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exact_math::Rational;

type Row = Vec<Rational>;

/// Scales rows so the first nonzero coefficient has absolute value 1,
/// merges parallel duplicates (keeping the tighter bound) and resolves
/// constant rows. `None` means the system is infeasible.
fn normalize(a: Vec<Row>, b: Vec<Rational>) -> Option<(Vec<Row>, Vec<Rational>)> {
    let mut merged: BTreeMap<Row, Rational> = BTreeMap::new();
    for (row, rhs) in a.into_iter().zip(b) {
        let Some(lead) = row.iter().find(|x| !x.is_zero()).map(Rational::abs) else {
            if rhs.is_negative() {
                return None;
            }
            continue;
        };
        let row: Row = row.iter().map(|x| x / &lead).collect();
        let rhs = rhs / &lead;
        merged
            .entry(row)
            .and_modify(|cur| {
                if rhs < *cur {
                    *cur = rhs.clone();
                }
            })
            .or_insert(rhs);
    }
    Some(merged.into_iter().unzip())
}

pub fn polytope_volume(a: &[Row], b: &[Rational]) -> Result<Rational> {
    let dim = a.first().map_or(0, Vec::len);
    if dim == 0 {
        return Err(Error::Precondition("polytope in dimension 0".into()));
    }
    volume_rec(a.to_vec(), b.to_vec(), dim)
}

fn volume_rec(a: Vec<Row>, b: Vec<Rational>, dim: usize) -> Result<Rational> {
    let Some((a, b)) = normalize(a, b) else {
        return Ok(Rational::zero());
    };
    if dim == 1 {
        let mut lo: Option<Rational> = None;
        let mut hi: Option<Rational> = None;
        for (row, rhs) in a.iter().zip(&b) {
            // rows are ±1 after normalization
            if row[0].is_positive() {
                hi = Some(hi.map_or(rhs.clone(), |h| h.min(rhs.clone())));
            } else {
                let l = -rhs;
                lo = Some(lo.map_or(l.clone(), |cur| cur.max(l)));
            }
        }
        return match (lo, hi) {
            (Some(lo), Some(hi)) => Ok(if hi > lo { hi - lo } else { Rational::zero() }),
            _ => Err(Error::Unbounded("polytope is unbounded".into())),
        };
    }

    let mut total = Rational::zero();
    for i in 0..a.len() {
        if b[i].is_zero() {
            continue;
        }
        let j = a[i]
            .iter()
            .position(|x| !x.is_zero())
            .expect("normalized row");
        let aij = a[i][j].clone();
        // substitute x_j = (b_i - Σ_{l != j} a_il x_l) / a_ij into every other row
        let mut sub_a = Vec::with_capacity(a.len() - 1);
        let mut sub_b = Vec::with_capacity(a.len() - 1);
        for k in 0..a.len() {
            if k == i {
                continue;
            }
            let f = &a[k][j] / &aij;
            let row: Row = (0..dim)
                .filter(|&l| l != j)
                .map(|l| &a[k][l] - &(&f * &a[i][l]))
                .collect();
            sub_a.push(row);
            sub_b.push(&b[k] - &(&f * &b[i]));
        }
        let face = volume_rec(sub_a, sub_b, dim - 1)?;
        if !face.is_zero() {
            total += &(&b[i] / aij.abs() * face);
        }
    }
    Ok(total / Rational::integer(dim as i64))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Rational {
        Rational::integer(v)
    }

    fn box_rows(sides: &[i64]) -> (Vec<Row>, Vec<Rational>) {
        let d = sides.len();
        let mut a = Vec::new();
        let mut b = Vec::new();
        for (i, &s) in sides.iter().enumerate() {
            let mut up = vec![q(0); d];
            up[i] = q(1);
            a.push(up);
            b.push(q(s));
            let mut down = vec![q(0); d];
            down[i] = q(-1);
            a.push(down);
            b.push(q(0));
        }
        (a, b)
    }

    #[test]
    fn boxes() {
        let (a, b) = box_rows(&[2, 3, 5]);
        assert_eq!(polytope_volume(&a, &b).unwrap(), q(30));
        let (a, b) = box_rows(&[7]);
        assert_eq!(polytope_volume(&a, &b).unwrap(), q(7));
    }

    #[test]
    fn simplex() {
        // x, y, z >= 0, x + y + z <= 1  -> 1/6
        let a = vec![
            vec![q(-1), q(0), q(0)],
            vec![q(0), q(-1), q(0)],
            vec![q(0), q(0), q(-1)],
            vec![q(1), q(1), q(1)],
        ];
        let b = vec![q(0), q(0), q(0), q(1)];
        assert_eq!(polytope_volume(&a, &b).unwrap(), Rational::new(1, 6));
    }

    #[test]
    fn translated_triangle_with_redundant_rows() {
        // triangle (1,1),(3,1),(1,2) has area 1; add a redundant duplicate
        let a = vec![
            vec![q(-1), q(0)],
            vec![q(0), q(-1)],
            vec![q(1), q(2)],
            vec![q(2), q(4)],
            vec![q(1), q(0)],
        ];
        let b = vec![q(-1), q(-1), q(5), q(12), q(10)];
        assert_eq!(polytope_volume(&a, &b).unwrap(), q(1));
    }

    #[test]
    fn empty_and_flat() {
        let a = vec![
            vec![q(1), q(0)],
            vec![q(-1), q(0)],
            vec![q(0), q(1)],
            vec![q(0), q(-1)],
        ];
        assert_eq!(
            polytope_volume(&a, &[q(-1), q(0), q(1), q(0)]).unwrap(),
            q(0)
        );
        assert_eq!(
            polytope_volume(&a, &[q(0), q(0), q(1), q(0)]).unwrap(),
            q(0)
        );
    }
}
