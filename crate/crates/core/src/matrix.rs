//! Matrices over the rationals and over polynomials: exact determinants,
//! rank, linear solves, and span membership.

use num_traits::{One, Zero};

use crate::calculus::interpolate;
use crate::error::{Error, Result};
use crate::par;
use crate::poly::Poly;
use crate::rational::{rat_int, Rational};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch {
                context: "ragged rows".into(),
            });
        }
        Ok(RationalMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Matrix with the given columns (each of length `rows`).
    pub fn from_columns(rows: usize, columns: Vec<Vec<Rational>>) -> Result<Self> {
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::DimensionMismatch {
                context: "column length".into(),
            });
        }
        let cols = columns.len();
        let mut m = RationalMatrix::zeros(rows, cols);
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                *m.at_mut(i, j) = v.clone();
            }
        }
        Ok(m)
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        RationalMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| rat_int(v)).collect())
                .collect(),
        )
        .expect("literal rows are rectangular")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> RationalMatrix {
        let mut t = RationalMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *t.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    /// Exact determinant by Gaussian elimination.
    pub fn det(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Rational::one());
        }
        let mut w = self.clone();
        let mut det = Rational::one();
        for k in 0..n {
            let pivot = (k..n).find(|&i| !w.at(i, k).is_zero());
            let p = match pivot {
                Some(p) => p,
                None => return Ok(Rational::zero()),
            };
            if p != k {
                for j in 0..n {
                    let a = w.at(p, j).clone();
                    let b = w.at(k, j).clone();
                    *w.at_mut(p, j) = b;
                    *w.at_mut(k, j) = a;
                }
                det = -det;
            }
            let pv = w.at(k, k).clone();
            det *= &pv;
            for i in k + 1..n {
                if w.at(i, k).is_zero() {
                    continue;
                }
                let factor = w.at(i, k) / &pv;
                for j in k..n {
                    let delta = &factor * w.at(k, j);
                    *w.at_mut(i, j) -= delta;
                }
            }
        }
        Ok(det)
    }

    /// Rank by row reduction.
    pub fn rank(&self) -> usize {
        let mut w = self.clone();
        let mut rank = 0;
        for col in 0..w.cols {
            if rank == w.rows {
                break;
            }
            let pivot = (rank..w.rows).find(|&i| !w.at(i, col).is_zero());
            let p = match pivot {
                Some(p) => p,
                None => continue,
            };
            if p != rank {
                for j in 0..w.cols {
                    let a = w.at(p, j).clone();
                    let b = w.at(rank, j).clone();
                    *w.at_mut(p, j) = b;
                    *w.at_mut(rank, j) = a;
                }
            }
            let pv = w.at(rank, col).clone();
            for i in rank + 1..w.rows {
                if w.at(i, col).is_zero() {
                    continue;
                }
                let factor = w.at(i, col) / &pv;
                for j in col..w.cols {
                    let delta = &factor * w.at(rank, j);
                    *w.at_mut(i, j) -= delta;
                }
            }
            rank += 1;
        }
        rank
    }

    /// Solve A x = b. Ok(None) when A is singular.
    pub fn solve(&self, rhs: &[Rational]) -> Result<Option<Vec<Rational>>> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if rhs.len() != self.rows {
            return Err(Error::DimensionMismatch {
                context: "rhs length".into(),
            });
        }
        let n = self.rows;
        let mut w = self.clone();
        let mut b = rhs.to_vec();
        for k in 0..n {
            let pivot = (k..n).find(|&i| !w.at(i, k).is_zero());
            let p = match pivot {
                Some(p) => p,
                None => return Ok(None),
            };
            if p != k {
                for j in 0..n {
                    let a = w.at(p, j).clone();
                    let c = w.at(k, j).clone();
                    *w.at_mut(p, j) = c;
                    *w.at_mut(k, j) = a;
                }
                b.swap(p, k);
            }
            let pv = w.at(k, k).clone();
            for i in k + 1..n {
                if w.at(i, k).is_zero() {
                    continue;
                }
                let factor = w.at(i, k) / &pv;
                for j in k..n {
                    let delta = &factor * w.at(k, j);
                    *w.at_mut(i, j) -= delta;
                }
                let delta = &factor * &b[k];
                b[i] -= delta;
            }
        }
        let mut x = vec![Rational::zero(); n];
        for k in (0..n).rev() {
            let mut acc = b[k].clone();
            for j in k + 1..n {
                acc -= w.at(k, j) * &x[j];
            }
            x[k] = acc / w.at(k, k);
        }
        Ok(Some(x))
    }
}

/// Exact membership of `v` in the rational span of `basis`. The span of the
/// empty list is {0}; zero-length vectors are the zero vector of a trivial
/// space.
pub fn span_member(v: &[Rational], basis: &[Vec<Rational>]) -> Result<bool> {
    if basis.iter().any(|b| b.len() != v.len()) {
        return Err(Error::DimensionMismatch {
            context: "span vectors have unequal lengths".into(),
        });
    }
    if v.iter().all(|c| c.is_zero()) {
        return Ok(true);
    }
    if basis.is_empty() {
        return Ok(false);
    }
    let base = RationalMatrix::from_rows(basis.to_vec())?;
    let mut rows = basis.to_vec();
    rows.push(v.to_vec());
    let extended = RationalMatrix::from_rows(rows)?;
    Ok(base.rank() == extended.rank())
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Poly>,
}

impl PolyMatrix {
    pub fn from_rows(rows: Vec<Vec<Poly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch {
                context: "ragged rows".into(),
            });
        }
        Ok(PolyMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Poly {
        &self.data[i * self.cols + j]
    }

    fn eval_int(&self, t: i64) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *m.at_mut(i, j) = self.at(i, j).eval_int(t);
            }
        }
        m
    }

    /// Sum over rows of the maximal entry degree; None when some row is
    /// entirely zero (determinant is then zero).
    fn degree_bound(&self) -> Option<usize> {
        let mut total = 0;
        for i in 0..self.rows {
            let row_max = (0..self.cols)
                .filter_map(|j| self.at(i, j).degree())
                .max()?;
            total += row_max;
        }
        Some(total)
    }

    /// Exact determinant.
    ///
    /// Small matrices go through fraction-free (Bareiss) elimination; larger
    /// ones are evaluated at degree_bound + 1 integer points in parallel and
    /// interpolated, which avoids intermediate coefficient blowup.
    pub fn det(&self) -> Result<Poly> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if self.rows == 0 {
            return Ok(Poly::one());
        }
        let bound = match self.degree_bound() {
            Some(b) => b,
            None => return Ok(Poly::zero()),
        };
        if self.rows <= 3 {
            return Ok(self.bareiss_det());
        }
        let evals = par::map_range(bound + 1, |t| self.eval_int(t as i64).det());
        let mut points = Vec::with_capacity(bound + 1);
        for (t, value) in evals.into_iter().enumerate() {
            points.push((rat_int(t as i64), value?));
        }
        interpolate(&points)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn bareiss_det(&self) -> Poly {
        let n = self.rows;
        let mut w: Vec<Vec<Poly>> = (0..n)
            .map(|i| (0..n).map(|j| self.at(i, j).clone()).collect())
            .collect();
        let mut sign_flip = false;
        let mut prev = Poly::one();
        for k in 0..n - 1 {
            if w[k][k].is_zero() {
                let swap = (k + 1..n).find(|&i| !w[i][k].is_zero());
                match swap {
                    Some(r) => {
                        w.swap(k, r);
                        sign_flip = !sign_flip;
                    }
                    None => return Poly::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&w[i][j] * &w[k][k]) - &(&w[i][k] * &w[k][j]);
                    w[i][j] = num
                        .div_exact(&prev)
                        .expect("Bareiss divisions are exact over an integral domain");
                }
            }
            prev = w[k][k].clone();
        }
        let det = w[n - 1][n - 1].clone();
        if sign_flip {
            -&det
        } else {
            det
        }
    }
}
