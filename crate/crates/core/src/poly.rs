//! Univariate polynomials over the rationals.
//!
//! Coefficients are stored ascending by power with no trailing zeros, so
//! structural equality is semantic equality. The zero polynomial has an empty
//! coefficient list and `degree() == None` (no sentinel integers).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::rational::{factorial, format_rational, rat_int, Rational};

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    /// The monomial x.
    pub fn x() -> Self {
        Poly::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    pub fn constant(c: Rational) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// Build from ascending coefficients; trailing zeros are trimmed.
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Ascending (numerator, denominator) pairs; handy in tests and fixtures.
    pub fn from_pairs(pairs: &[(i64, i64)]) -> Self {
        Poly::from_coeffs(pairs.iter().map(|&(n, d)| crate::rational::rat(n, d)).collect())
    }

    /// c * x^k.
    pub fn monomial(c: Rational, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of x^k (zero beyond the stored range).
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, at: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * at + c;
        }
        acc
    }

    pub fn eval_int(&self, at: i64) -> Rational {
        self.eval(&rat_int(at))
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * rat_int(k as i64))
            .collect();
        Poly::from_coeffs(coeffs)
    }

    pub fn nth_derivative(&self, order: usize) -> Poly {
        let mut p = self.clone();
        for _ in 0..order {
            if p.is_zero() {
                break;
            }
            p = p.derivative();
        }
        p
    }

    /// p(x + c) by Horner over the linear factor.
    pub fn shift(&self, c: &Rational) -> Poly {
        let lin = Poly::from_coeffs(vec![c.clone(), Rational::one()]);
        let mut acc = Poly::zero();
        for coeff in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &Poly::constant(coeff.clone());
        }
        acc
    }

    pub fn shift_int(&self, c: i64) -> Poly {
        self.shift(&rat_int(c))
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// (p(0), p'(0), ..., p^(count-1)(0)), i.e. i! * a_i.
    pub fn jet_at_zero(&self, count: usize) -> Vec<Rational> {
        (0..count)
            .map(|i| self.coeff(i) * factorial(i as u64))
            .collect()
    }

    /// Exact quotient, or None when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let dd = divisor.degree().unwrap();
        let lead = divisor.leading().unwrap();
        let mut rem = self.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len()];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                return None;
            }
            let q = rem.leading().unwrap() / lead;
            quot[rd - dd] = q.clone();
            rem = &rem - &Poly::monomial(q, rd - dd).mul(divisor);
        }
        Some(Poly::from_coeffs(quot))
    }
}

/// (x + c)_k as a polynomial in x: (x+c)(x+c+1)···(x+c+k−1).
pub fn rising_poly(c: &Rational, k: u64) -> Poly {
    let mut acc = Poly::one();
    for i in 0..k {
        let root = c + rat_int(i as i64);
        acc = &acc * &Poly::from_coeffs(vec![root, Rational::one()]);
    }
    acc
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        Poly::from_coeffs(coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect();
        Poly::from_coeffs(coeffs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let coeff_part = if mag.is_one() && k > 0 {
                String::new()
            } else {
                format_rational(&mag)
            };
            match (coeff_part.is_empty(), k) {
                (true, 1) => write!(f, "x")?,
                (true, _) => write!(f, "x^{k}")?,
                (false, 0) => write!(f, "{coeff_part}")?,
                (false, 1) => write!(f, "{coeff_part}*x")?,
                (false, _) => write!(f, "{coeff_part}*x^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn degree_of_zero_is_none() {
        assert_eq!(Poly::zero().degree(), None);
        assert_eq!(Poly::from_coeffs(vec![rat_int(0), rat_int(0)]).degree(), None);
        assert_eq!(Poly::one().degree(), Some(0));
    }

    #[test]
    fn rising_poly_examples() {
        // (x+1)(x+2) = x^2 + 3x + 2
        assert_eq!(
            rising_poly(&rat_int(1), 2),
            Poly::from_pairs(&[(2, 1), (3, 1), (1, 1)])
        );
        assert_eq!(rising_poly(&rat_int(5), 0), Poly::one());
    }

    #[test]
    fn product_degree_adds() {
        let a = Poly::from_pairs(&[(1, 2), (0, 1), (3, 1)]);
        let b = Poly::from_pairs(&[(-1, 1), (5, 7)]);
        let ab = &a * &b;
        assert_eq!(
            ab.degree(),
            Some(a.degree().unwrap() + b.degree().unwrap())
        );
    }

    #[test]
    fn evaluation_is_ring_homomorphism() {
        let a = Poly::from_pairs(&[(1, 3), (-2, 1), (1, 1)]);
        let b = Poly::from_pairs(&[(4, 1), (1, 2)]);
        let at = rat(7, 5);
        assert_eq!((&a * &b).eval(&at), a.eval(&at) * b.eval(&at));
        assert_eq!((&a + &b).eval(&at), a.eval(&at) + b.eval(&at));
    }

    #[test]
    fn shift_matches_evaluation() {
        let p = Poly::from_pairs(&[(1, 1), (-3, 2), (0, 1), (2, 1)]);
        let shifted = p.shift_int(-4);
        for t in -3..4 {
            assert_eq!(shifted.eval_int(t), p.eval_int(t - 4));
        }
    }

    #[test]
    fn jet_at_zero_matches_derivatives() {
        let p = Poly::from_pairs(&[(5, 1), (1, 2), (7, 3), (-1, 1)]);
        let jet = p.jet_at_zero(5);
        for (i, v) in jet.iter().enumerate() {
            assert_eq!(*v, p.nth_derivative(i).eval_int(0));
        }
    }

    #[test]
    fn exact_division() {
        let a = Poly::from_pairs(&[(2, 1), (3, 1), (1, 1)]); // (x+1)(x+2)
        let b = Poly::from_pairs(&[(1, 1), (1, 1)]);
        assert_eq!(a.div_exact(&b), Some(Poly::from_pairs(&[(2, 1), (1, 1)])));
        let c = Poly::from_pairs(&[(1, 1), (1, 1), (1, 1)]);
        assert_eq!(c.div_exact(&b), None);
        assert_eq!(Poly::zero().div_exact(&b), Some(Poly::zero()));
        assert_eq!(a.div_exact(&Poly::zero()), None);
    }

    #[test]
    fn display_is_readable() {
        let p = Poly::from_pairs(&[(-2, 1), (0, 1), (1, 24)]);
        assert_eq!(p.to_string(), "1/24*x^2 - 2");
        assert_eq!(Poly::zero().to_string(), "0");
        assert_eq!(Poly::x().to_string(), "x");
        assert_eq!((&Poly::x()).neg().to_string(), "-x");
    }
}

#[cfg(test)]
mod pochhammer_consistency {
    use super::*;
    use crate::rational::pochhammer;

    #[test]
    fn rising_poly_evaluates_to_pochhammer() {
        for c in -3..4 {
            for k in 0..6u64 {
                let p = rising_poly(&rat_int(c), k);
                for t in -2..3 {
                    assert_eq!(
                        p.eval_int(t),
                        pochhammer(&rat_int(t + c), k),
                        "c={c} k={k} t={t}"
                    );
                }
            }
        }
    }
}
