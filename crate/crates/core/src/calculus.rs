//! Interpolation, indefinite summation, and integer root scanning.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::{ceil_to_u64, rat_int, Rational};

/// Interpolating polynomial through the given points (Newton divided
/// differences). Nodes must be pairwise distinct.
pub fn interpolate(points: &[(Rational, Rational)]) -> Result<Poly> {
    if points.is_empty() {
        return Ok(Poly::zero());
    }
    let n = points.len();
    let mut dd: Vec<Rational> = points.iter().map(|(_, y)| y.clone()).collect();
    let xs: Vec<Rational> = points.iter().map(|(x, _)| x.clone()).collect();
    // dd[i] becomes f[x_i..x_{i+k}] after pass k
    let mut table = vec![dd.clone()];
    for k in 1..n {
        let prev = table.last().unwrap();
        let mut next = Vec::with_capacity(n - k);
        for i in 0..n - k {
            let denom = &xs[i + k] - &xs[i];
            if denom.is_zero() {
                return Err(Error::DuplicateNode {
                    node: crate::rational::format_rational(&xs[i]),
                });
            }
            next.push((&prev[i + 1] - &prev[i]) / denom);
        }
        table.push(next);
    }
    for (k, row) in table.iter().enumerate() {
        dd[k] = row[0].clone();
    }
    // Horner over Newton basis: P = dd[n-1]; P = P*(x - x_k) + dd[k]
    let mut acc = Poly::constant(dd[n - 1].clone());
    for k in (0..n - 1).rev() {
        let node = Poly::from_coeffs(vec![-&xs[k], Rational::from_integer(1.into())]);
        acc = &(&acc * &node) + &Poly::constant(dd[k].clone());
    }
    Ok(acc)
}

/// The unique polynomial P with P(x) − P(x−1) = f(x) and P(0) = 0.
///
/// Built by interpolating the partial sums: P(−1) = 0 and P(k) = f(0)+···+f(k)
/// determine a polynomial of degree deg f + 1; the difference identity then
/// holds at deg f + 1 consecutive points, hence identically. A final constant
/// shift pins P(0) = 0.
pub fn indefinite_sum(f: &Poly) -> Poly {
    if f.is_zero() {
        return Poly::zero();
    }
    let d = f.degree().unwrap();
    let mut points = Vec::with_capacity(d + 2);
    points.push((rat_int(-1), Rational::zero()));
    let mut acc = Rational::zero();
    for k in 0..=d as i64 {
        acc += f.eval_int(k);
        points.push((rat_int(k), acc.clone()));
    }
    let q = interpolate(&points).expect("distinct integer nodes");
    let p = &q - &Poly::constant(q.eval_int(0));
    debug_assert!((&(&p - &p.shift_int(-1)) - f).is_zero());
    p
}

/// Outcome of scanning a polynomial for nonnegative integer roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootScan {
    /// True iff p(n) != 0 for every integer n >= 0.
    pub free: bool,
    /// Smallest vanishing n when `free` is false.
    pub witness: Option<u64>,
}

/// Hard ceiling on how many integer points a root scan may enumerate.
/// Instances with a wilder coefficient spread get a `RootBoundTooLarge`
/// error instead of an unbounded loop.
pub const ROOT_SCAN_CAP: u64 = 100_000_000;

/// Cauchy root bound 1 + max |a_i / a_d| for a nonzero polynomial; every
/// root (in particular every integer one) has absolute value below it.
pub fn cauchy_root_bound(p: &Poly) -> Result<Rational> {
    let d = p.degree().ok_or(Error::ZeroPolynomial)?;
    let lead = p.leading().unwrap();
    let mut max_ratio = Rational::zero();
    for k in 0..d {
        let r = (p.coeff(k) / lead).abs();
        if r > max_ratio {
            max_ratio = r;
        }
    }
    Ok(max_ratio + rat_int(1))
}

/// Decide exactly whether p(n) != 0 for all integers n >= 0 by evaluating at
/// every integer from 0 to the Cauchy bound.
///
/// Denominators are cleared once so the scan runs in integer arithmetic, and
/// the range is split into chunks evaluated in parallel.
pub fn nonneg_integer_root_free(p: &Poly) -> Result<RootScan> {
    use num_bigint::BigInt;
    use num_integer::Integer;

    let bound = ceil_to_u64(&cauchy_root_bound(p)?)?;
    if bound > ROOT_SCAN_CAP {
        return Err(Error::RootBoundTooLarge {
            bound: bound.to_string(),
        });
    }
    let mut lcm = BigInt::from(1);
    for c in p.coeffs() {
        lcm = lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    let eval = |n: u64| -> bool {
        // true when p(n) == 0
        let at = BigInt::from(n);
        let mut acc = BigInt::from(0);
        for c in ints.iter().rev() {
            acc = acc * &at + c;
        }
        acc.is_zero()
    };
    const CHUNK: u64 = 4096;
    let chunks = (bound / CHUNK) + 1;
    let found = crate::par::map_range(chunks as usize, |chunk| {
        let start = chunk as u64 * CHUNK;
        let end = (start + CHUNK - 1).min(bound);
        (start..=end).find(|&n| eval(n))
    });
    let witness = found.into_iter().flatten().next();
    Ok(RootScan {
        free: witness.is_none(),
        witness,
    })
}
