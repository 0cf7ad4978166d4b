//! Exact Laguerre polynomials, their jets at zero, the classical weight's
//! moments, and the second-order operator they satisfy.

use std::sync::RwLock;

use num_traits::Zero;

use crate::diffop::DiffOp;
use crate::poly::Poly;
use crate::rational::{factorial, pochhammer, rat_int, Rational};

/// L_n^alpha as an exact polynomial; the zero polynomial for n < 0.
///
/// Coefficient of x^j is (-1)^j (alpha+j+1)_{n-j} / (j! (n-j)!), which is the
/// series form with the generalized binomial written through rising
/// factorials, so any rational alpha stays exact.
pub fn laguerre_poly(n: i64, alpha: &Rational) -> Poly {
    if n < 0 {
        return Poly::zero();
    }
    let n = n as u64;
    let coeffs = (0..=n)
        .map(|j| {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            let top = pochhammer(&(alpha + rat_int(j as i64 + 1)), n - j);
            rat_int(sign) * top / (factorial(j) * factorial(n - j))
        })
        .collect();
    Poly::from_coeffs(coeffs)
}

/// ((L_n^alpha)^(i)(0))_{i=0..count-1} from the closed form
/// (L_n^alpha)^(i)(0) = (-1)^i C(n+alpha, n-i).
pub fn laguerre_jet0(n: u64, alpha: &Rational, count: usize) -> Vec<Rational> {
    (0..count)
        .map(|i| {
            if i as u64 > n {
                return Rational::zero();
            }
            let i64i = i as i64;
            let sign = if i % 2 == 0 { 1 } else { -1 };
            let top = pochhammer(&(alpha + rat_int(i64i + 1)), n - i as u64);
            rat_int(sign) * top / factorial(n - i as u64)
        })
        .collect()
}

/// k-th moment of the weight x^beta e^{-x} on (0, inf): (beta + k)!.
pub fn weight_moment(beta: u64, k: u64) -> Rational {
    factorial(beta + k)
}

/// The second-order operator with L_n^alpha as eigenfunctions, eigenvalue n:
/// -x d^2/dx^2 - (alpha + 1 - x) d/dx.
pub fn dalpha_op(alpha: &Rational) -> DiffOp {
    let f1 = Poly::from_coeffs(vec![-(alpha + rat_int(1)), rat_int(1)]);
    let f2 = Poly::from_coeffs(vec![Rational::zero(), rat_int(-1)]);
    DiffOp::new(vec![Poly::zero(), f1, f2])
}

/// A cached family of Laguerre polynomials for a fixed alpha. Reads are
/// concurrent; the cache fills under an exclusive lock.
pub struct LaguerreFamily {
    alpha: Rational,
    cache: RwLock<Vec<Poly>>,
}

impl LaguerreFamily {
    pub fn new(alpha: Rational) -> Self {
        LaguerreFamily {
            alpha,
            cache: RwLock::new(Vec::new()),
        }
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn poly(&self, n: i64) -> Poly {
        if n < 0 {
            return Poly::zero();
        }
        let idx = n as usize;
        {
            let cache = self.cache.read().expect("cache lock");
            if let Some(p) = cache.get(idx) {
                return p.clone();
            }
        }
        let mut cache = self.cache.write().expect("cache lock");
        while cache.len() <= idx {
            let k = cache.len() as i64;
            cache.push(laguerre_poly(k, &self.alpha));
        }
        cache[idx].clone()
    }
}
