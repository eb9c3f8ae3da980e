//! Dense univariate polynomials with rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::Rational;
use crate::error::Error;

/// `coeffs[i]` is the coefficient of `x^i`. Trailing zeros are always
/// trimmed, so the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "Vec<Rational>", into = "Vec<Rational>")]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl From<Vec<Rational>> for Polynomial {
    fn from(value: Vec<Rational>) -> Self {
        Polynomial::new(value)
    }
}

impl From<Polynomial> for Vec<Rational> {
    fn from(p: Polynomial) -> Self {
        p.coeffs
    }
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Polynomial::new(coeffs.iter().map(|&c| Rational::integer(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::new(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Polynomial::new(coeffs)
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Polynomial::from_ints(&[0, 1])
    }

    /// The polynomial `1 - x`.
    pub fn one_minus_x() -> Self {
        Polynomial::from_ints(&[1, -1])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// `p(c * x)`.
    pub fn substitute_scaled(&self, c: &Rational) -> Polynomial {
        let mut power = Rational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &power);
            power *= c;
        }
        Polynomial::new(out)
    }

    pub fn pow(&self, exp: u32) -> Polynomial {
        let mut acc = Polynomial::constant(Rational::one());
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    pub fn derivative(&self) -> Polynomial {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::integer(i as i64))
                .collect(),
        )
    }

    /// Antiderivative with zero constant term.
    pub fn antiderivative(&self) -> Polynomial {
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(Rational::zero());
        for (i, c) in self.coeffs.iter().enumerate() {
            out.push(c / Rational::integer(i as i64 + 1));
        }
        Polynomial::new(out)
    }

    /// Exact `∫_lo^hi p(x) dx`. Requires `lo <= hi`.
    pub fn integrate(&self, lo: &Rational, hi: &Rational) -> Result<Rational, Error> {
        if lo > hi {
            return Err(Error::Precondition(format!(
                "integration bounds out of order: lo = {lo} > hi = {hi}"
            )));
        }
        let anti = self.antiderivative();
        Ok(anti.eval(hi) - anti.eval(lo))
    }

    /// Smallest `i >= 1` with a nonzero coefficient of `x^i`.
    pub fn lowest_nonconstant_degree(&self) -> Option<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .find(|(_, c)| !c.is_zero())
            .map(|(i, _)| i)
    }
}

/// Free-function form of [`Polynomial::integrate`].
pub fn poly_integrate_definite(
    p: &Polynomial,
    lo: &Rational,
    hi: &Rational,
) -> Result<Rational, Error> {
    p.integrate(lo, hi)
}

pub fn poly_mul(a: &Polynomial, b: &Polynomial) -> Polynomial {
    a * b
}

pub fn lowest_nonconstant_degree(p: &Polynomial) -> Option<usize> {
    p.lowest_nonconstant_degree()
}

impl<'b> Add<&'b Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &'b Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'b> Sub<&'b Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'b Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'b> Mul<&'b Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'b Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let unit = mag == Rational::one();
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !unit {
                        write!(f, "{mag}*")?;
                    }
                    if i == 1 {
                        f.write_str("x")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(p, d)
    }

    #[test]
    fn mul_examples() {
        let one_minus = Polynomial::one_minus_x();
        let one_plus = Polynomial::from_ints(&[1, 1]);
        assert_eq!(&one_minus * &one_plus, Polynomial::from_ints(&[1, 0, -1]));
        assert_eq!(&Polynomial::zero() * &one_plus, Polynomial::zero());
        let sq = &one_minus * &one_minus;
        assert_eq!(&sq * &one_minus, Polynomial::from_ints(&[1, -3, 3, -1]));
        assert_eq!(one_minus.pow(3), Polynomial::from_ints(&[1, -3, 3, -1]));
    }

    #[test]
    fn trailing_zeros_trimmed() {
        let p = Polynomial::from_ints(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(Polynomial::from_ints(&[0, 0]).degree(), None);
        let diff = &p - &p;
        assert!(diff.is_zero());
    }

    #[test]
    fn integrate_examples() {
        let zero = Rational::zero();
        let one = Rational::one();
        assert_eq!(Polynomial::x().integrate(&zero, &one).unwrap(), q(1, 2));
        assert_eq!(
            Polynomial::from_ints(&[1, 0, -1])
                .integrate(&zero, &one)
                .unwrap(),
            q(2, 3)
        );
        assert_eq!(
            Polynomial::from_ints(&[1, 0, -3, 2])
                .integrate(&zero, &one)
                .unwrap(),
            q(1, 2)
        );
    }

    #[test]
    fn integrate_rejects_reversed_bounds() {
        let err = Polynomial::x()
            .integrate(&Rational::one(), &Rational::zero())
            .unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn lowest_nonconstant() {
        assert_eq!(
            Polynomial::from_ints(&[1, 0, -3, 2]).lowest_nonconstant_degree(),
            Some(2)
        );
        assert_eq!(
            Polynomial::one_minus_x().pow(3).lowest_nonconstant_degree(),
            Some(1)
        );
        assert_eq!(
            Polynomial::from_ints(&[7]).lowest_nonconstant_degree(),
            None
        );
        assert_eq!(Polynomial::zero().lowest_nonconstant_degree(), None);
    }

    #[test]
    fn substitute_scaled_and_eval() {
        // p(x) = 1 - x^2, p(x/2) = 1 - x^2/4
        let p = Polynomial::from_ints(&[1, 0, -1]);
        let s = p.substitute_scaled(&q(1, 2));
        assert_eq!(s, Polynomial::new(vec![q(1, 1), q(0, 1), q(-1, 4)]));
        assert_eq!(s.eval(&Rational::integer(2)), Rational::zero());
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(
            Polynomial::from_ints(&[1, 0, -3, 2]).to_string(),
            "1 - 3*x^2 + 2*x^3"
        );
        assert_eq!(Polynomial::from_ints(&[0, -1]).to_string(), "-x");
    }
}
