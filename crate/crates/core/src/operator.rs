//! Assembly of the higher-order operator for which the q_n are
//! eigenfunctions, and its exact verification.
//!
//! For a polynomial S the operator is
//!   D = P_S(D_alpha) + sum_{h=1}^m M_h(D_alpha) d/dx R_h(D_alpha),
//! where P_S solves P_S(x) - P_S(x-1) = S(x) Omega(x) with P_S(0) = 0. Its
//! order is 2 (deg S + deg Omega + 1) and the eigenvalue on q_n is P_S(n).

use std::time::Instant;

use crate::calculus::indefinite_sum;
use crate::diffop::{poly_of_op, DiffOp};
use crate::error::{Error, Result};
use crate::laguerre::dalpha_op;
use crate::par;
use crate::poly::Poly;
use crate::rational::{rat_int, Rational};
use crate::report::{CheckResult, Report};
use crate::sobolev::{
    build_r, casorati, shifted_casorati_det, CasoratiData, ConstructionResult, RSystem,
    SobolevSpec,
};

/// S, P_S, the coefficient polynomials M_h, the assembled operator, and the
/// Casorati determinant behind the eigenvalues.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OperatorBundle {
    pub s: Poly,
    pub ps: Poly,
    pub mh: Vec<Poly>,
    pub op: DiffOp,
    pub omega: Poly,
}

impl OperatorBundle {
    /// lambda_n = P_S(n).
    pub fn eigenvalue(&self, n: u64) -> Rational {
        self.ps.eval_int(n as i64)
    }
}

/// M_h(x) = sum_{j=1}^m (-1)^{h+j} S(x+j) det(R_l(x-r)) over rows l != h and
/// shifts r in {-j+1..m-j} \ {0}.
///
/// The minors use the same increasing-argument column order as Omega; on
/// m-1 columns that order differs from Omega's m-column orientation by
/// (-1)^{m-1}, which is folded in so the assembled operator satisfies the
/// eigenvalue identity for every m.
pub fn build_mh(h: usize, s: &Poly, r: &RSystem) -> Result<Poly> {
    let m = r.len();
    if h == 0 || h > m {
        return Err(Error::IndexOutOfRange { index: h, max: m });
    }
    let rows: Vec<Poly> = (1..=m).filter(|&l| l != h).map(|l| r.poly(l).clone()).collect();
    let mut acc = Poly::zero();
    for j in 1..=m as i64 {
        let shifts: Vec<i64> = (-j + 1..=m as i64 - j).filter(|&v| v != 0).collect();
        let minor = shifted_casorati_det(&rows, &shifts)?;
        if minor.is_zero() {
            continue;
        }
        let term = &s.shift_int(j) * &minor;
        let sign = (h as i64 + j + m as i64 - 1) % 2 == 0;
        acc = if sign { &acc + &term } else { &acc - &term };
    }
    Ok(acc)
}

/// Assemble the full operator bundle for a spec and a polynomial S,
/// requiring the Casorati determinant to be root-free. The order and
/// algebra-membership invariants are asserted on the result.
pub fn assemble_dqs(spec: &SobolevSpec, s: &Poly) -> Result<OperatorBundle> {
    let r = build_r(spec);
    let cas = casorati(&r)?;
    assemble_dqs_with(spec, &r, &cas, s)
}

pub fn assemble_dqs_with(
    spec: &SobolevSpec,
    r: &RSystem,
    cas: &CasoratiData,
    s: &Poly,
) -> Result<OperatorBundle> {
    if !cas.root_free {
        return Err(Error::OmegaVanishes {
            n: cas.witness.unwrap_or(0),
        });
    }
    if s.is_zero() {
        return Err(Error::DimensionMismatch {
            context: "S must be a nonzero polynomial".into(),
        });
    }
    let m = spec.m();
    let dp = dalpha_op(&rat_int(spec.alpha()));
    let ps = indefinite_sum(&(s * &cas.omega));
    let mh: Vec<Poly> = (1..=m)
        .map(|h| build_mh(h, s, r))
        .collect::<Result<_>>()?;
    let mut op = poly_of_op(&ps, &dp);
    let lowering = DiffOp::derivative();
    for h in 1..=m {
        let left = poly_of_op(&mh[h - 1], &dp);
        let right = poly_of_op(r.poly(h), &dp);
        op = &op + &left.compose(&lowering).compose(&right);
    }
    let expected_order =
        2 * (s.degree().unwrap_or(0) + cas.omega.degree().unwrap_or(0) + 1);
    assert_eq!(
        op.order(),
        Some(expected_order),
        "operator order must be 2(deg S + deg Omega + 1)"
    );
    assert!(op.in_algebra_a(), "operator left the coefficient algebra");
    Ok(OperatorBundle {
        s: s.clone(),
        ps,
        mh,
        op,
        omega: cas.omega.clone(),
    })
}

/// Apply the operator to each q_n and compare with P_S(n) q_n exactly.
pub fn verify_eigen(bundle: &OperatorBundle, result: &ConstructionResult, up_to: u64) -> Report {
    let top = (up_to as usize).min(result.qpolys.len().saturating_sub(1));
    let checks = par::map_range(top + 1, |n| {
        let q = &result.qpolys[n];
        let lambda = bundle.eigenvalue(n as u64);
        let residual = &bundle.op.apply(q) - &q.scale(&lambda);
        CheckResult::residual_check(
            format!("eigen[n={n}]"),
            "0",
            residual.to_string(),
            residual.to_string(),
            residual.is_zero(),
        )
    });
    Report::from_checks(checks)
}

/// Run the whole verification pipeline for one spec: construction,
/// orthogonality, degree vs weighted rank, operator order, eigen relation.
pub fn verify_all(spec: &SobolevSpec, s: &Poly, up_to: u64) -> Result<Report> {
    let mut report = Report::from_checks(Vec::new());

    let t0 = Instant::now();
    let r = build_r(spec);
    let cas = casorati(&r)?;
    report.push_timing("build_r+casorati", t0.elapsed().as_millis());

    report.merge(Report::from_checks(vec![CheckResult::boolean_check(
        "omega-root-free",
        "true",
        format!(
            "{}{}",
            cas.root_free,
            cas.witness.map(|w| format!(" (vanishes at n={w})")).unwrap_or_default()
        ),
        cas.root_free,
    )]));
    if !cas.root_free {
        return Ok(report);
    }

    let t1 = Instant::now();
    let wr = crate::awr::weighted_rank(spec.mass(), spec.alpha())?;
    let deg_omega = cas.omega.degree().map(|d| d as i64).unwrap_or(-1);
    report.merge(Report::from_checks(vec![CheckResult::residual_check(
        "degree-equals-weighted-rank",
        wr.value.to_string(),
        deg_omega.to_string(),
        (deg_omega - wr.value).to_string(),
        deg_omega == wr.value,
    )]));
    report.push_timing("weighted_rank", t1.elapsed().as_millis());

    let t2 = Instant::now();
    let result = crate::sobolev::construct_with(spec, &r, &cas, up_to)?;
    report.push_timing("construct", t2.elapsed().as_millis());

    let t3 = Instant::now();
    report.merge(crate::sobolev::verify_left_orthogonality(spec, &result, up_to));
    report.push_timing("orthogonality", t3.elapsed().as_millis());

    let t4 = Instant::now();
    let bundle = assemble_dqs_with(spec, &r, &cas, s)?;
    report.push_timing("operator", t4.elapsed().as_millis());

    let expected_order = 2 * (s.degree().unwrap_or(0) as i64 + wr.value + 1);
    let actual_order = bundle.op.order().map(|o| o as i64).unwrap_or(-1);
    report.merge(Report::from_checks(vec![CheckResult::residual_check(
        "order-equals-2(degS+awr+1)",
        expected_order.to_string(),
        actual_order.to_string(),
        (actual_order - expected_order).to_string(),
        actual_order == expected_order,
    )]));

    let t5 = Instant::now();
    report.merge(verify_eigen(&bundle, &result, up_to));
    report.push_timing("eigen", t5.elapsed().as_millis());

    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laguerre::laguerre_poly;
    use crate::matrix::RationalMatrix;
    use crate::rational::factorial;
    use crate::reference::{reference_data, reference_spec};
    use crate::sobolev::construct;

    fn m1_zero_spec(alpha: i64) -> SobolevSpec {
        SobolevSpec::new(alpha, 1, RationalMatrix::zeros(1, 1)).unwrap()
    }

    #[test]
    fn mh_m1_is_shifted_s() {
        let r = build_r(&m1_zero_spec(3));
        let s = Poly::from_pairs(&[(2, 1), (0, 1), (5, 3)]);
        assert_eq!(build_mh(1, &s, &r).unwrap(), s.shift_int(1));
        assert!(build_mh(0, &s, &r).is_err());
        assert!(build_mh(2, &s, &r).is_err());
    }

    #[test]
    fn mh_matches_reference() {
        let r = build_r(&reference_spec());
        let data = reference_data();
        let one = Poly::one();
        for h in 1..=3usize {
            assert_eq!(build_mh(h, &one, &r).unwrap(), data.mh[h - 1], "h={h}");
        }
        // leading term of M_1 is -11/120 x^6
        assert_eq!(
            build_mh(1, &one, &r).unwrap().leading().unwrap(),
            &crate::rational::rat(-11, 120)
        );
    }

    #[test]
    fn ps_matches_reference() {
        let spec = reference_spec();
        let bundle = assemble_dqs(&spec, &Poly::one()).unwrap();
        let data = reference_data();
        assert_eq!(bundle.ps, data.ps);
        assert_eq!(bundle.omega, data.omega);
    }

    #[test]
    fn reference_operator_order_is_18() {
        let bundle = assemble_dqs(&reference_spec(), &Poly::one()).unwrap();
        assert_eq!(bundle.op.order(), Some(18));
        assert!(bundle.op.in_algebra_a());
    }

    #[test]
    fn reference_operator_order_with_linear_s_is_20() {
        let bundle = assemble_dqs(&reference_spec(), &Poly::x()).unwrap();
        assert_eq!(bundle.op.order(), Some(20));
    }

    #[test]
    fn m1_reduction_operator() {
        // m = 1, M = 0: D = (alpha-1)! (D_alpha + d/dx) = (alpha-1)! D_{alpha-1}
        for alpha in 1..=5i64 {
            let spec = m1_zero_spec(alpha);
            let bundle = assemble_dqs(&spec, &Poly::one()).unwrap();
            let scale = factorial((alpha - 1) as u64);
            let target = dalpha_op(&rat_int(alpha - 1)).scale(&scale);
            assert_eq!(bundle.op, target, "alpha={alpha}");
            assert_eq!(bundle.op.order(), Some(2));
            for n in 0..=4u64 {
                assert_eq!(bundle.eigenvalue(n), rat_int(n as i64) * &scale);
            }
        }
    }

    #[test]
    fn summand_orders_exceed_total() {
        // individual blocks M_h(D) d/dx R_h(D) reach order 21 but the sum
        // stays strictly below the order of P_S(D)
        let spec = reference_spec();
        let r = build_r(&spec);
        let dp = dalpha_op(&rat_int(spec.alpha()));
        let lowering = DiffOp::derivative();
        let one = Poly::one();
        let mut orders = Vec::new();
        let mut total = DiffOp::zero();
        for h in 1..=3usize {
            let mh = build_mh(h, &one, &r).unwrap();
            let block = poly_of_op(&mh, &dp)
                .compose(&lowering)
                .compose(&poly_of_op(r.poly(h), &dp));
            orders.push(block.order().unwrap());
            total = &total + &block;
        }
        assert_eq!(orders, vec![21, 21, 17]);
        let cas = casorati(&r).unwrap();
        let t1 = poly_of_op(&indefinite_sum(&(&one * &cas.omega)), &dp);
        assert!(total.order().unwrap() < t1.order().unwrap());
        assert_eq!(total.order(), Some(17));
    }

    #[test]
    fn eigen_reference_small() {
        let spec = reference_spec();
        let result = construct(&spec, 6).unwrap();
        let bundle = assemble_dqs(&spec, &Poly::one()).unwrap();
        let report = verify_eigen(&bundle, &result, 6);
        assert!(report.passed(), "failures: {:?}", report.failures().collect::<Vec<_>>());
    }

    #[test]
    fn eigen_reference_with_linear_s() {
        let spec = reference_spec();
        let result = construct(&spec, 4).unwrap();
        let bundle = assemble_dqs(&spec, &Poly::x()).unwrap();
        assert!(verify_eigen(&bundle, &result, 4).passed());
    }

    #[test]
    fn eigen_even_m_instances() {
        // even m exercises the orientation factor in the M_h minors
        for (alpha, rows) in [
            (3i64, [&[1i64, 1][..], &[1, 0][..]]),
            (4, [&[2, 0][..], &[0, 3][..]]),
        ] {
            let spec = SobolevSpec::new(alpha, 2, RationalMatrix::from_i64_rows(&rows)).unwrap();
            let result = construct(&spec, 4).unwrap();
            let bundle = assemble_dqs(&spec, &Poly::one()).unwrap();
            assert!(
                verify_eigen(&bundle, &result, 4).passed(),
                "alpha={alpha} rows={rows:?}"
            );
        }
    }

    #[test]
    fn m1_reduction_eigen() {
        let spec = m1_zero_spec(4);
        let result = construct(&spec, 5).unwrap();
        let bundle = assemble_dqs(&spec, &Poly::one()).unwrap();
        assert!(verify_eigen(&bundle, &result, 5).passed());
        // classical Laguerre equation for L_n^{alpha-1} up to the constant
        for n in 0..=5i64 {
            let l = laguerre_poly(n, &rat_int(3));
            assert_eq!(
                bundle.op.apply(&l),
                l.scale(&(rat_int(n) * factorial(3)))
            );
        }
    }

    #[test]
    fn corrupted_mh_breaks_eigen() {
        let spec = reference_spec();
        let r = build_r(&spec);
        let result = construct(&spec, 3).unwrap();
        let mut bundle = assemble_dqs(&spec, &Poly::one()).unwrap();
        // rebuild the operator with M_3 + 1
        let dp = dalpha_op(&rat_int(spec.alpha()));
        let lowering = DiffOp::derivative();
        let mut op = poly_of_op(&bundle.ps, &dp);
        for h in 1..=3usize {
            let mut mh = bundle.mh[h - 1].clone();
            if h == 3 {
                mh = &mh + &Poly::one();
            }
            op = &op + &poly_of_op(&mh, &dp).compose(&lowering).compose(&poly_of_op(r.poly(h), &dp));
        }
        bundle.op = op;
        let report = verify_eigen(&bundle, &result, 3);
        assert!(!report.passed());
        assert!(report.failures().any(|c| c.residual != "0"));
    }

    #[test]
    fn order_formula_on_varied_specs() {
        let cases: Vec<(i64, usize, Vec<Vec<i64>>)> = vec![
            (3, 1, vec![vec![2]]),
            (4, 2, vec![vec![1, 0], vec![0, 1]]),
            (5, 2, vec![vec![0, 0], vec![0, 1]]),
            (4, 3, vec![vec![1, 0, 0], vec![0, 0, 0], vec![0, 0, 1]]),
        ];
        for (alpha, m, rows) in cases {
            let mass = RationalMatrix::from_rows(
                rows.iter()
                    .map(|r| r.iter().map(|&v| rat_int(v)).collect())
                    .collect(),
            )
            .unwrap();
            let spec = SobolevSpec::new(alpha, m, mass).unwrap();
            for s in [Poly::one(), Poly::x()] {
                let bundle = assemble_dqs(&spec, &s).unwrap();
                let expected = 2 * (s.degree().unwrap() + bundle.omega.degree().unwrap() + 1);
                assert_eq!(bundle.op.order(), Some(expected), "alpha={alpha} m={m}");
                assert!(bundle.op.in_algebra_a());
            }
        }
    }

    #[test]
    fn verify_all_reference() {
        let report = verify_all(&reference_spec(), &Poly::one(), 5).unwrap();
        assert!(report.passed());
        assert!(report.timings.len() >= 5);
        assert!(report.checks.iter().any(|c| c.name == "omega-root-free"));
        assert!(report
            .checks
            .iter()
            .any(|c| c.name == "order-equals-2(degS+awr+1)"));
    }

    #[test]
    fn assemble_rejects_zero_s() {
        assert!(assemble_dqs(&reference_spec(), &Poly::zero()).is_err());
    }
}
