//! The alpha-weighted rank of a mass matrix and the degree theorem
//! deg Omega = awr(M).

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::{span_member, RationalMatrix};
use crate::par;
use crate::sobolev::{build_r, shifted_casorati_det, SobolevSpec};

/// The pieces of the alpha-weighted rank: column numbers n_j, the reduced
/// matrix, row numbers m_j, and the rank value itself.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightedRank {
    pub nj: Vec<i64>,
    pub mj: Vec<i64>,
    pub mtilde: RationalMatrix,
    pub value: i64,
}

/// Column pass right-to-left: n_j = alpha + m - j when column c_{m-j+1} lies
/// outside the span of the later columns (the empty span is {0}), else 0.
/// The retained columns form Mtilde; its rows f_j then give m_j = m - j when
/// f_j lies in the span of the later rows, else 0. The value is
/// sum n_j + sum m_j - m(m-1)/2.
pub fn weighted_rank(mass: &RationalMatrix, alpha: i64) -> Result<WeightedRank> {
    if !mass.is_square() {
        return Err(Error::NonSquare {
            rows: mass.rows(),
            cols: mass.cols(),
        });
    }
    let m = mass.rows();
    if m == 0 {
        return Err(Error::EmptySystem);
    }
    if alpha < m as i64 {
        return Err(Error::AlphaBelowM { alpha, m });
    }
    let columns: Vec<Vec<_>> = (0..m).map(|j| mass.column(j)).collect();

    let mut nj = Vec::with_capacity(m);
    for j in 1..=m {
        let idx = m - j; // zero-based index of c_{m-j+1}
        let later = columns[idx + 1..].to_vec();
        let inside = span_member(&columns[idx], &later)?;
        nj.push(if inside { 0 } else { alpha + m as i64 - j as i64 });
    }

    let kept: Vec<usize> = (0..m)
        .filter(|&i| nj[m - 1 - i] != 0) // n_{m-i} tested column c_{i+1}
        .collect();
    let mtilde = RationalMatrix::from_columns(
        m,
        kept.iter().map(|&i| columns[i].clone()).collect(),
    )?;

    let rows: Vec<Vec<_>> = (0..m).map(|i| mtilde.row(i).to_vec()).collect();
    let mut mj = Vec::with_capacity(m.saturating_sub(1));
    for j in 1..m {
        let later = rows[j..].to_vec();
        let inside = span_member(&rows[j - 1], &later)?;
        mj.push(if inside { m as i64 - j as i64 } else { 0 });
    }

    let value = nj.iter().sum::<i64>() + mj.iter().sum::<i64>()
        - (m as i64 * (m as i64 - 1)) / 2;
    Ok(WeightedRank {
        nj,
        mj,
        mtilde,
        value,
    })
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DegreeCheck {
    pub deg_omega: i64,
    pub awr: i64,
    pub matches: bool,
}

/// Compute deg Omega and awr(M) independently and compare. Only the
/// determinant is needed here, so the nonnegative-root scan is skipped.
pub fn degree_matches_awr(spec: &SobolevSpec) -> Result<DegreeCheck> {
    let r = build_r(spec);
    let shifts: Vec<i64> = (1..=spec.m() as i64).collect();
    let omega = shifted_casorati_det(r.polys(), &shifts)?;
    let deg_omega = omega.degree().map(|d| d as i64).unwrap_or(-1);
    let wr = weighted_rank(spec.mass(), spec.alpha())?;
    Ok(DegreeCheck {
        deg_omega,
        awr: wr.value,
        matches: deg_omega == wr.value,
    })
}

/// Degree checks for a batch of specs, fanned out across workers.
pub fn degree_survey(specs: &[SobolevSpec]) -> Result<Vec<DegreeCheck>> {
    par::map_range(specs.len(), |i| degree_matches_awr(&specs[i]))
        .into_iter()
        .collect()
}

/// rank(Mtilde) computed directly; the definition promises it equals both
/// rank(M) and the number of nonzero n_j.
pub fn rank_consistency(mass: &RationalMatrix, wr: &WeightedRank) -> bool {
    let nonzero_nj = wr.nj.iter().filter(|&&v| v != 0).count();
    wr.mtilde.rank() == mass.rank() && mass.rank() == nonzero_nj
}

/// Equality helper used when scaling arguments: awr ignores nonzero scalar
/// factors on M because every span test does.
pub fn is_zero_matrix(mass: &RationalMatrix) -> bool {
    (0..mass.rows()).all(|i| mass.row(i).iter().all(|v| v.is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn spec(alpha: i64, m: usize, rows: &[&[i64]]) -> SobolevSpec {
        SobolevSpec::new(alpha, m, RationalMatrix::from_i64_rows(rows)).unwrap()
    }

    #[test]
    fn reference_instance_numbers() {
        let mass = RationalMatrix::from_i64_rows(&[&[1, 1, 0], &[1, 1, 0], &[0, 0, 1]]);
        let wr = weighted_rank(&mass, 3).unwrap();
        assert_eq!(wr.nj, vec![5, 4, 0]);
        assert_eq!(wr.mj, vec![2, 0]);
        assert_eq!(wr.value, 8);
        assert_eq!(wr.mtilde.cols(), 2);
        assert!(rank_consistency(&mass, &wr));
    }

    #[test]
    fn two_by_two_patterns() {
        for alpha in 2..=6i64 {
            let top = weighted_rank(&RationalMatrix::from_i64_rows(&[&[3, 0], &[0, 0]]), alpha)
                .unwrap();
            assert_eq!(top.value, alpha - 1, "alpha={alpha} top");
            let bottom = weighted_rank(&RationalMatrix::from_i64_rows(&[&[0, 0], &[0, 7]]), alpha)
                .unwrap();
            assert_eq!(bottom.value, alpha + 1, "alpha={alpha} bottom");
            let both = weighted_rank(&RationalMatrix::from_i64_rows(&[&[3, 0], &[0, 7]]), alpha)
                .unwrap();
            assert_eq!(both.value, 2 * alpha, "alpha={alpha} both");
        }
    }

    #[test]
    fn zero_matrix_has_rank_zero() {
        for m in 1..=4usize {
            let mass = RationalMatrix::zeros(m, m);
            let wr = weighted_rank(&mass, m as i64 + 2).unwrap();
            assert_eq!(wr.value, 0, "m={m}");
            assert!(wr.nj.iter().all(|&v| v == 0));
            assert_eq!(wr.mtilde.cols(), 0);
        }
    }

    #[test]
    fn scalar_invariance() {
        let base = RationalMatrix::from_i64_rows(&[&[1, 1, 0], &[1, 1, 0], &[0, 0, 1]]);
        let mut scaled = RationalMatrix::zeros(3, 3);
        for i in 0..3 {
            for j in 0..3 {
                *scaled.at_mut(i, j) = base.at(i, j) * rat(-7, 5);
            }
        }
        assert_eq!(
            weighted_rank(&base, 4).unwrap().value,
            weighted_rank(&scaled, 4).unwrap().value
        );
    }

    #[test]
    fn degree_theorem_reference() {
        let s = spec(3, 3, &[&[1, 1, 0], &[1, 1, 0], &[0, 0, 1]]);
        let check = degree_matches_awr(&s).unwrap();
        assert_eq!(check.deg_omega, 8);
        assert_eq!(check.awr, 8);
        assert!(check.matches);
    }

    #[test]
    fn degree_theorem_anti_triangular() {
        // M_{i,j} = a_{i+j} for i+j <= m-1 else 0, a = (1,1), m = 2, alpha = 3:
        // deg Omega = m * alpha
        let s = spec(3, 2, &[&[1, 1], &[1, 0]]);
        let check = degree_matches_awr(&s).unwrap();
        assert_eq!(check.deg_omega, 6);
        assert!(check.matches);
    }

    #[test]
    fn degree_theorem_diagonal_with_gap() {
        // diag(1, 0, 1), m = 3: s = 2 nonzero entries, zero at j = 2, so
        // s*alpha + (m-s)(m+1) - 2*sum_j j = 2*alpha + 4 - 4 = 2*alpha
        for alpha in 3..=5i64 {
            let s = SobolevSpec::new(
                alpha,
                3,
                RationalMatrix::from_i64_rows(&[&[1, 0, 0], &[0, 0, 0], &[0, 0, 1]]),
            )
            .unwrap();
            let check = degree_matches_awr(&s).unwrap();
            assert_eq!(check.deg_omega, 2 * alpha, "alpha={alpha}");
            assert!(check.matches);
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let rect = RationalMatrix::zeros(2, 3);
        assert!(weighted_rank(&rect, 5).is_err());
        let small_alpha = RationalMatrix::zeros(3, 3);
        assert!(matches!(
            weighted_rank(&small_alpha, 2),
            Err(Error::AlphaBelowM { .. })
        ));
    }

    #[test]
    fn bounds_hold_on_small_sweep() {
        // 0 <= awr <= m*alpha over all sign patterns of a 2x2 matrix
        for a in -1..=1i64 {
            for b in -1..=1i64 {
                for c in -1..=1i64 {
                    for d in -1..=1i64 {
                        let mass = RationalMatrix::from_i64_rows(&[&[a, b], &[c, d]]);
                        let wr = weighted_rank(&mass, 3).unwrap();
                        assert!(wr.value >= 0 && wr.value <= 6, "{a},{b},{c},{d}");
                        assert!(rank_consistency(&mass, &wr));
                    }
                }
            }
        }
    }

    #[test]
    fn mtilde_rows_use_empty_vector_convention() {
        // M = 0: Mtilde has zero columns; every row is the zero vector of a
        // trivial space, so each f_j lies in every span and m_j = m - j
        let wr = weighted_rank(&RationalMatrix::zeros(3, 3), 3).unwrap();
        assert_eq!(wr.mj, vec![2, 1]);
    }
}
