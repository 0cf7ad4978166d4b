//! Differential operators with polynomial coefficients.
//!
//! An operator is sum_j f_j (d/dx)^j with each f_j a `Poly`. The algebra of
//! interest restricts deg f_j <= j; `in_algebra_a` checks membership. All
//! composition and application is exact.

use std::ops::{Add, Sub};

use num_traits::{One, Zero};

use crate::laguerre::laguerre_poly;
use crate::poly::Poly;
use crate::rational::{binomial, rat_int, Rational};

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct DiffOp {
    coeffs: Vec<Poly>,
}

impl DiffOp {
    /// coeffs[j] multiplies the j-th derivative; trailing zero polynomials
    /// are trimmed.
    pub fn new(mut coeffs: Vec<Poly>) -> Self {
        while coeffs.last().is_some_and(|p| p.is_zero()) {
            coeffs.pop();
        }
        DiffOp { coeffs }
    }

    pub fn zero() -> Self {
        DiffOp { coeffs: Vec::new() }
    }

    pub fn identity() -> Self {
        DiffOp::new(vec![Poly::one()])
    }

    /// Multiplication by a constant, as an operator.
    pub fn constant(c: Rational) -> Self {
        DiffOp::new(vec![Poly::constant(c)])
    }

    /// d/dx.
    pub fn derivative() -> Self {
        DiffOp::new(vec![Poly::zero(), Poly::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Largest j with f_j != 0; None for the zero operator.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> Poly {
        self.coeffs.get(j).cloned().unwrap_or_else(Poly::zero)
    }

    pub fn apply(&self, p: &Poly) -> Poly {
        let mut acc = Poly::zero();
        let mut deriv = p.clone();
        for (j, f) in self.coeffs.iter().enumerate() {
            if j > 0 {
                deriv = deriv.derivative();
            }
            if !f.is_zero() && !deriv.is_zero() {
                acc = &acc + &(f * &deriv);
            }
        }
        acc
    }

    /// Operator composition: (self o rhs)(p) = self(rhs(p)).
    ///
    /// Uses d^i (g .) = sum_k C(i,k) g^(k) d^{i-k} to push derivatives past
    /// the right factor's coefficients.
    pub fn compose(&self, rhs: &DiffOp) -> DiffOp {
        if self.is_zero() || rhs.is_zero() {
            return DiffOp::zero();
        }
        let out_len = self.coeffs.len() + rhs.coeffs.len() - 1;
        let mut out = vec![Poly::zero(); out_len];
        for (i, f) in self.coeffs.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            for (j, g) in rhs.coeffs.iter().enumerate() {
                if g.is_zero() {
                    continue;
                }
                let mut gk = g.clone();
                for k in 0..=i {
                    if k > 0 {
                        gk = gk.derivative();
                        if gk.is_zero() {
                            break;
                        }
                    }
                    let c = binomial(i as u64, k as u64);
                    let term = (f * &gk).scale(&c);
                    out[i - k + j] = &out[i - k + j] + &term;
                }
            }
        }
        DiffOp::new(out)
    }

    pub fn scale(&self, c: &Rational) -> DiffOp {
        if c.is_zero() {
            return DiffOp::zero();
        }
        DiffOp {
            coeffs: self.coeffs.iter().map(|f| f.scale(c)).collect(),
        }
    }

    /// Left-multiply every coefficient by a polynomial (composition with a
    /// multiplication operator on the left).
    pub fn premul_poly(&self, p: &Poly) -> DiffOp {
        if p.is_zero() {
            return DiffOp::zero();
        }
        DiffOp::new(self.coeffs.iter().map(|f| p * f).collect())
    }

    /// deg f_j <= j for every j.
    pub fn in_algebra_a(&self) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(j, f)| f.degree().is_none_or(|d| d <= j))
    }
}

impl Add for &DiffOp {
    type Output = DiffOp;
    fn add(self, rhs: &DiffOp) -> DiffOp {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        DiffOp::new((0..n).map(|j| &self.coeff(j) + &rhs.coeff(j)).collect())
    }
}

impl Sub for &DiffOp {
    type Output = DiffOp;
    fn sub(self, rhs: &DiffOp) -> DiffOp {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        DiffOp::new((0..n).map(|j| &self.coeff(j) - &rhs.coeff(j)).collect())
    }
}

/// Evaluate a polynomial at an operator by left-composition Horner. Applied
/// to an eigenvector of `a` with eigenvalue t the result scales by p(t).
pub fn poly_of_op(p: &Poly, a: &DiffOp) -> DiffOp {
    if p.is_zero() {
        return DiffOp::zero();
    }
    let d = p.degree().unwrap();
    let mut acc = DiffOp::constant(p.coeff(d));
    for k in (0..d).rev() {
        acc = &acc.compose(a) + &DiffOp::constant(p.coeff(k));
    }
    acc
}

/// Sign data for the lowering operator: the constant sequence eps_n = -1 and
/// the products xi_{n,i} = eps_n ... eps_{n-i+1} (i factors), so xi_{n,0} = 1
/// and here xi_{n,i} = (-1)^i.
#[derive(Clone, Debug)]
pub struct DOperatorSpec {
    epsilon: Rational,
}

impl DOperatorSpec {
    pub fn laguerre() -> Self {
        DOperatorSpec { epsilon: rat_int(-1) }
    }

    pub fn epsilon(&self, _n: i64) -> Rational {
        self.epsilon.clone()
    }

    pub fn xi(&self, n: i64, i: u32) -> Rational {
        let mut acc = Rational::one();
        for j in 0..i as i64 {
            acc *= self.epsilon(n - j);
        }
        acc
    }
}

/// Image of L_n^alpha under the lowering operator defined termwise by
/// sum_{j=1}^n (-1)^{j+1} xi_{n,j} L_{n-j}; for the Laguerre signs this is
/// exactly d/dx, which the function asserts before returning.
pub fn doperator_image(n: i64, alpha: &Rational) -> Poly {
    let spec = DOperatorSpec::laguerre();
    let mut acc = Poly::zero();
    for j in 1..=n.max(0) {
        let sign = if (j + 1) % 2 == 0 { rat_int(1) } else { rat_int(-1) };
        let c = sign * spec.xi(n, j as u32);
        acc = &acc + &laguerre_poly(n - j, alpha).scale(&c);
    }
    assert_eq!(
        acc,
        laguerre_poly(n, alpha).derivative(),
        "lowering-operator image must agree with d/dx on L_n"
    );
    acc
}
