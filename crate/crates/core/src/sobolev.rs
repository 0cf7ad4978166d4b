//! Discrete Laguerre-Sobolev bilinear forms: the R system, the Casorati
//! determinant, the orthogonal family q_n, and a generic layer for arbitrary
//! moment data.
//!
//! The bilinear form is
//!   <p, q> = integral p q x^{alpha-m} e^{-x} dx + jet(p) M jet(q)^T,
//! with jets of length m at the mass point 0. The construction is exact for
//! integer alpha >= m, where every R_l is a polynomial.

use num_traits::{One, Zero};

use crate::calculus::{interpolate, nonneg_integer_root_free};
use crate::error::{Error, Result};
use crate::laguerre::{weight_moment, LaguerreFamily};
use crate::matrix::{PolyMatrix, RationalMatrix};
use crate::par;
use crate::poly::{rising_poly, Poly};
use crate::rational::{factorial, rat_int, Rational};

/// A problem instance: integer alpha >= m and the m x m mass matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SobolevSpec {
    alpha: i64,
    m: usize,
    mass: RationalMatrix,
}

impl SobolevSpec {
    pub fn new(alpha: i64, m: usize, mass: RationalMatrix) -> Result<Self> {
        if m == 0 {
            return Err(Error::EmptySystem);
        }
        if alpha < m as i64 {
            return Err(Error::AlphaBelowM { alpha, m });
        }
        if mass.rows() != m || mass.cols() != m {
            return Err(Error::DimensionMismatch {
                context: format!("mass matrix must be {m}x{m}, got {}x{}", mass.rows(), mass.cols()),
            });
        }
        Ok(SobolevSpec { alpha, m, mass })
    }

    pub fn alpha(&self) -> i64 {
        self.alpha
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn mass(&self) -> &RationalMatrix {
        &self.mass
    }

    pub fn laguerre_family(&self) -> LaguerreFamily {
        LaguerreFamily::new(rat_int(self.alpha))
    }
}

/// The polynomials R_1..R_m generated by the spec.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RSystem {
    polys: Vec<Poly>,
}

impl RSystem {
    pub fn from_polys(polys: Vec<Poly>) -> Self {
        RSystem { polys }
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn poly(&self, l: usize) -> &Poly {
        &self.polys[l - 1]
    }

    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    /// Per-row scaling, used by covariance tests.
    pub fn scale_row(&self, l: usize, c: &Rational) -> RSystem {
        let mut polys = self.polys.clone();
        polys[l - 1] = polys[l - 1].scale(c);
        RSystem { polys }
    }
}

/// The Casorati determinant and its nonnegative-integer root scan.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CasoratiData {
    pub omega: Poly,
    pub root_free: bool,
    pub witness: Option<u64>,
}

/// R_l(x) = (alpha-m+l-1)!/(m-l)! (x+1)_{m-l}
///        + (l-1)! (x+1)_alpha sum_i (-1)^i M_{l-1,i}/(alpha+i)! (x-i+1)_i.
///
/// With integer alpha >= m every Gamma ratio reduces to these rising
/// factorials, so each R_l is an exact polynomial of degree <= alpha+m-1.
pub fn build_r(spec: &SobolevSpec) -> RSystem {
    let m = spec.m();
    let alpha = spec.alpha();
    let rising_alpha = rising_poly(&Rational::one(), alpha as u64);
    let polys = (1..=m)
        .map(|l| {
            let head = rising_poly(&Rational::one(), (m - l) as u64).scale(
                &(factorial((alpha - m as i64 + l as i64 - 1) as u64)
                    / factorial((m - l) as u64)),
            );
            let mut mass_part = Poly::zero();
            for i in 0..m {
                let entry = spec.mass().at(l - 1, i);
                if entry.is_zero() {
                    continue;
                }
                let sign = if i % 2 == 0 { 1 } else { -1 };
                let c = rat_int(sign) * entry / factorial((alpha + i as i64) as u64);
                let factor = rising_poly(&rat_int(1 - i as i64), i as u64).scale(&c);
                mass_part = &mass_part + &factor;
            }
            let tail = (&rising_alpha * &mass_part).scale(&factorial((l - 1) as u64));
            &head + &tail
        })
        .collect();
    RSystem { polys }
}

/// Determinant of (polys_i(x - shift_j)) with columns ordered by increasing
/// argument, i.e. decreasing shift. Relative to the natural shift order this
/// multiplies the determinant by (-1)^{m(m-1)/2}; every Casorati-style
/// determinant in this crate uses the same orientation so that Omega, the
/// q_n cofactors, and the operator coefficients form one consistent family.
pub(crate) fn shifted_casorati_det(polys: &[Poly], shifts: &[i64]) -> Result<Poly> {
    let mut ordered = shifts.to_vec();
    ordered.sort_unstable_by(|a, b| b.cmp(a));
    let rows = polys
        .iter()
        .map(|p| ordered.iter().map(|&s| p.shift_int(-s)).collect())
        .collect();
    PolyMatrix::from_rows(rows)?.det()
}

/// Same orientation, with the columns evaluated at integer arguments.
pub(crate) fn casorati_value_det(polys: &[Poly], args: &[i64]) -> Result<Rational> {
    let mut ordered = args.to_vec();
    ordered.sort_unstable();
    let rows = polys
        .iter()
        .map(|p| ordered.iter().map(|&a| p.eval_int(a)).collect())
        .collect();
    RationalMatrix::from_rows(rows)?.det()
}

/// Omega(x) = det(R_i(x - j))_{i,j=1..m} (oriented as above), plus the exact
/// decision of whether it vanishes at any integer n >= 0.
pub fn casorati(r: &RSystem) -> Result<CasoratiData> {
    let m = r.len();
    if m == 0 {
        return Err(Error::EmptySystem);
    }
    let shifts: Vec<i64> = (1..=m as i64).collect();
    let omega = shifted_casorati_det(r.polys(), &shifts)?;
    let scan = nonneg_integer_root_free(&omega)?;
    Ok(CasoratiData {
        omega,
        root_free: scan.free,
        witness: scan.witness,
    })
}

/// The n-th orthogonal polynomial as the (m+1)x(m+1) bordered determinant:
/// first row L_n^alpha, ..., L_{n-m}^alpha (zero for negative index), the
/// other rows the values R_i(n-j). Expanded along the first row; the minors
/// share Omega's orientation, so the coefficient of L_n^alpha is Omega(n).
pub fn build_qn(n: u64, spec: &SobolevSpec, r: &RSystem) -> Poly {
    let family = spec.laguerre_family();
    build_qn_with_family(n, spec, r, &family)
}

pub(crate) fn build_qn_with_family(
    n: u64,
    spec: &SobolevSpec,
    r: &RSystem,
    family: &LaguerreFamily,
) -> Poly {
    let m = spec.m() as i64;
    let n = n as i64;
    let mut acc = Poly::zero();
    for j in 0..=m {
        if n - j < 0 {
            break;
        }
        let args: Vec<i64> = (n - m..=n).filter(|&a| a != n - j).collect();
        let minor = casorati_value_det(r.polys(), &args).expect("square by construction");
        if minor.is_zero() {
            continue;
        }
        let signed = if j % 2 == 0 { minor } else { -minor };
        acc = &acc + &family.poly(n - j).scale(&signed);
    }
    assert_eq!(
        acc.degree(),
        Some(n as usize),
        "q_{n} must have degree {n}; the Casorati determinant vanishes there"
    );
    acc
}

/// Solve sum_{j=1}^m phi_j R_l(n-j) = -R_l(n) for l = 1..m. The system
/// matrix is the Casorati matrix at n, so a unique solution exists exactly
/// when Omega(n) != 0.
pub fn betas_via_system(n: u64, r: &RSystem) -> Result<Vec<Rational>> {
    let m = r.len();
    let n = n as i64;
    let rows: Vec<Vec<Rational>> = (1..=m)
        .map(|l| (1..=m as i64).map(|j| r.poly(l).eval_int(n - j)).collect())
        .collect();
    let rhs: Vec<Rational> = (1..=m).map(|l| -r.poly(l).eval_int(n)).collect();
    let matrix = RationalMatrix::from_rows(rows)?;
    matrix.solve(&rhs)?.ok_or(Error::SingularSystem { n })
}

/// <p, q> = integral p q x^{alpha-m} e^{-x} dx + jet(p) M jet(q)^T, with the
/// integral expanded through the exact moments (alpha-m+k)!.
pub fn sobolev_form(p: &Poly, q: &Poly, spec: &SobolevSpec) -> Rational {
    let beta = (spec.alpha() - spec.m() as i64) as u64;
    let product = p * q;
    let mut acc = Rational::zero();
    for (k, c) in product.coeffs().iter().enumerate() {
        if !c.is_zero() {
            acc += c * weight_moment(beta, k as u64);
        }
    }
    let m = spec.m();
    let jp = p.jet_at_zero(m);
    let jq = q.jet_at_zero(m);
    for (i, pi) in jp.iter().enumerate() {
        if pi.is_zero() {
            continue;
        }
        for (j, qj) in jq.iter().enumerate() {
            acc += pi * spec.mass().at(i, j) * qj;
        }
    }
    acc
}

/// The constructed family q_0..q_N together with the expansion coefficients
/// beta_{n,1..m} in the Laguerre basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConstructionResult {
    pub qpolys: Vec<Poly>,
    pub betas: Vec<Vec<Rational>>,
}

impl ConstructionResult {
    pub fn len(&self) -> usize {
        self.qpolys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.qpolys.is_empty()
    }
}

/// Build q_0..q_{n_max} and their beta coefficients, requiring a root-free
/// Casorati determinant. Each q_n is cross-checked against the linear-system
/// route: q_n = Omega(n) (L_n + sum_j beta_{n,j} L_{n-j}) exactly.
pub fn construct(spec: &SobolevSpec, n_max: u64) -> Result<ConstructionResult> {
    let r = build_r(spec);
    let cas = casorati(&r)?;
    construct_with(spec, &r, &cas, n_max)
}

pub fn construct_with(
    spec: &SobolevSpec,
    r: &RSystem,
    cas: &CasoratiData,
    n_max: u64,
) -> Result<ConstructionResult> {
    if !cas.root_free {
        return Err(Error::OmegaVanishes {
            n: cas.witness.unwrap_or(0),
        });
    }
    let family = spec.laguerre_family();
    let per_n = par::map_range(n_max as usize + 1, |n| {
        let n = n as u64;
        let q = build_qn_with_family(n, spec, r, &family);
        let betas = betas_via_system(n, r)?;
        let omega_n = cas.omega.eval_int(n as i64);
        let mut expansion = family.poly(n as i64);
        for (j, beta) in betas.iter().enumerate() {
            expansion = &expansion + &family.poly(n as i64 - j as i64 - 1).scale(beta);
        }
        assert_eq!(
            q,
            expansion.scale(&omega_n),
            "determinant and linear-system routes disagree at n = {n}"
        );
        Ok((q, betas))
    });
    let mut qpolys = Vec::with_capacity(per_n.len());
    let mut betas = Vec::with_capacity(per_n.len());
    for item in per_n {
        let (q, b) = item?;
        qpolys.push(q);
        betas.push(b);
    }
    Ok(ConstructionResult { qpolys, betas })
}

/// Check that each q_n annihilates all lower monomials under the form and
/// pairs nontrivially with x^n.
///
/// q_n enters the second slot: the construction guarantees <x^l, q_n> = 0,
/// which coincides with <q_n, x^l> = 0 whenever the mass matrix is symmetric.
pub fn verify_left_orthogonality(
    spec: &SobolevSpec,
    result: &ConstructionResult,
    up_to: u64,
) -> crate::report::Report {
    use crate::rational::format_rational;
    use crate::report::CheckResult;

    let top = (up_to as usize).min(result.qpolys.len().saturating_sub(1));
    let per_n = par::map_range(top + 1, |n| {
        let q = &result.qpolys[n];
        let mut checks = Vec::with_capacity(n + 1);
        for l in 0..n {
            let v = sobolev_form(&Poly::monomial(Rational::one(), l), q, spec);
            let vs = format_rational(&v);
            checks.push(CheckResult::residual_check(
                format!("orthogonality[n={n},l={l}]"),
                "0",
                vs.clone(),
                vs,
                v.is_zero(),
            ));
        }
        let diag = sobolev_form(&Poly::monomial(Rational::one(), n), q, spec);
        checks.push(CheckResult::boolean_check(
            format!("nondegeneracy[n={n}]"),
            "nonzero",
            format_rational(&diag),
            !diag.is_zero(),
        ));
        checks
    });
    crate::report::Report::from_checks(per_n.into_iter().flatten().collect())
}

/// A discrete Sobolev instance over arbitrary moment data: mass point
/// `lambda`, raw moments of the measure nu, and a basis p_n orthogonal with
/// respect to (x - lambda)^m nu.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GeneralSobolevSpec {
    pub lambda: Rational,
    pub nu_moments: Vec<Rational>,
    pub basis: Vec<Poly>,
    pub mass: RationalMatrix,
}

impl GeneralSobolevSpec {
    pub fn m(&self) -> usize {
        self.mass.rows()
    }

    /// integral of p d(nu) through the raw moments.
    pub fn integrate(&self, p: &Poly) -> Result<Rational> {
        let needed = p.coeffs().len();
        if needed > self.nu_moments.len() {
            return Err(Error::InsufficientMoments {
                needed,
                have: self.nu_moments.len(),
            });
        }
        let mut acc = Rational::zero();
        for (k, c) in p.coeffs().iter().enumerate() {
            if !c.is_zero() {
                acc += c * &self.nu_moments[k];
            }
        }
        Ok(acc)
    }

    /// w_{n,i} = integral (x - lambda)^i p_n d(nu).
    pub fn moment_part(&self, n: usize, i: usize) -> Result<Rational> {
        let shift = power_about(&self.lambda, i);
        self.integrate(&(&shift * &self.basis[n]))
    }

    /// The full bilinear form <p, q> = integral p q d(nu) + jet(p) M jet(q)^T
    /// with jets of length m at lambda.
    pub fn form(&self, p: &Poly, q: &Poly) -> Result<Rational> {
        let mut acc = self.integrate(&(p * q))?;
        let m = self.m();
        let jp = jet_at(p, &self.lambda, m);
        let jq = jet_at(q, &self.lambda, m);
        for (i, pi) in jp.iter().enumerate() {
            for (j, qj) in jq.iter().enumerate() {
                acc += pi * self.mass.at(i, j) * qj;
            }
        }
        Ok(acc)
    }
}

fn power_about(lambda: &Rational, i: usize) -> Poly {
    // (x - lambda)^i
    let lin = Poly::from_coeffs(vec![-lambda, Rational::one()]);
    let mut acc = Poly::one();
    for _ in 0..i {
        acc = &acc * &lin;
    }
    acc
}

fn jet_at(p: &Poly, at: &Rational, count: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(count);
    let mut d = p.clone();
    for i in 0..count {
        if i > 0 {
            d = d.derivative();
        }
        out.push(d.eval(at));
    }
    out
}

/// Generic construction via the bordered determinant over the R-value table
/// R_l(n) = w_{n,l-1} + (l-1)! sum_i M_{l-1,i} p_n^(i)(lambda).
///
/// For n < m the determinant reaches R_l at negative arguments. There the
/// mass part vanishes (p_n = 0 identically below index zero) and the moment
/// part is extended by its interpolating polynomial of degree <= m-l through
/// n = 0..m-l; on Laguerre data that polynomial is the moment part itself,
/// which makes this layer agree exactly with the specialized one.
pub fn general_sobolev(gspec: &GeneralSobolevSpec, n_max: u64) -> Result<ConstructionResult> {
    let m = gspec.m();
    if m == 0 {
        return Err(Error::EmptySystem);
    }
    if !gspec.mass.is_square() {
        return Err(Error::NonSquare {
            rows: gspec.mass.rows(),
            cols: gspec.mass.cols(),
        });
    }
    let k_max = (n_max as usize).max(m - 1);
    if gspec.basis.len() <= k_max {
        return Err(Error::DimensionMismatch {
            context: format!("need basis polynomials p_0..p_{k_max}"),
        });
    }
    for (i, p) in gspec.basis.iter().take(k_max + 1).enumerate() {
        if p.degree() != Some(i) {
            return Err(Error::BadBasisDegree { index: i });
        }
    }

    // R-value table for arguments -m ..= n_max
    let offset = m as i64;
    let width = (n_max as i64 + offset + 1) as usize;
    let mut table: Vec<Vec<Rational>> = vec![vec![Rational::zero(); width]; m];
    for l in 1..=m {
        // nonnegative arguments: moment part plus mass part
        for n in 0..=n_max as usize {
            let w = gspec.moment_part(n, l - 1)?;
            let jets = jet_at(&gspec.basis[n], &gspec.lambda, m);
            let mut mass_part = Rational::zero();
            for (i, jet) in jets.iter().enumerate() {
                mass_part += gspec.mass.at(l - 1, i) * jet;
            }
            table[l - 1][(n as i64 + offset) as usize] = w + factorial((l - 1) as u64) * mass_part;
        }
        // negative arguments: extrapolated moment part only
        let pts: Vec<(Rational, Rational)> = (0..=(m - l))
            .map(|t| Ok((rat_int(t as i64), gspec.moment_part(t, l - 1)?)))
            .collect::<Result<_>>()?;
        let w_poly = interpolate(&pts)?;
        for k in 1..=m as i64 {
            table[l - 1][(offset - k) as usize] = w_poly.eval_int(-k);
        }
    }
    let value = |l: usize, arg: i64| -> Rational { table[l - 1][(arg + offset) as usize].clone() };

    let mut qpolys = Vec::with_capacity(n_max as usize + 1);
    let mut betas = Vec::with_capacity(n_max as usize + 1);
    for n in 0..=n_max as i64 {
        // bordered determinant, columns by increasing argument
        let mut q = Poly::zero();
        for j in 0..=m as i64 {
            if n - j < 0 {
                break;
            }
            let args: Vec<i64> = (n - m as i64..=n).filter(|&a| a != n - j).collect();
            let rows: Vec<Vec<Rational>> = (1..=m)
                .map(|l| args.iter().map(|&a| value(l, a)).collect())
                .collect();
            let minor = RationalMatrix::from_rows(rows)?.det()?;
            if minor.is_zero() {
                continue;
            }
            let signed = if j % 2 == 0 { minor } else { -minor };
            q = &q + &gspec.basis[(n - j) as usize].scale(&signed);
        }
        // linear system for the betas
        let rows: Vec<Vec<Rational>> = (1..=m)
            .map(|l| (1..=m as i64).map(|j| value(l, n - j)).collect())
            .collect();
        let rhs: Vec<Rational> = (1..=m).map(|l| -value(l, n)).collect();
        let b = RationalMatrix::from_rows(rows)?
            .solve(&rhs)?
            .ok_or(Error::SingularSystem { n })?;
        qpolys.push(q);
        betas.push(b);
    }
    Ok(ConstructionResult { qpolys, betas })
}
