use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// Dense matrix over the rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

impl RatMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            entries: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn from_int(m: &IntMatrix) -> Self {
        let mut out = RatMatrix::zero(m.rows(), m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                out.set(i, j, BigRational::from(m.get(i, j).clone()));
            }
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigRational) {
        assert!(i < self.rows && j < self.cols, "index out of range");
        self.entries[i * self.cols + j] = value;
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        let mut out = RatMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j) + a * b;
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = RatMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows)
                .all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Reduces every entry modulo 1 into the half-open interval [0, 1).
    pub fn mod_one(&self) -> RatMatrix {
        let entries = self
            .entries
            .iter()
            .map(|r| r - r.floor())
            .collect();
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    /// Least common multiple of all entry denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.entries.iter().fold(BigInt::one(), |acc, r| {
            num_integer::lcm(acc, r.denom().clone())
        })
    }

    /// Multiplies every entry by an integer scalar and demands the result be
    /// integral.
    pub fn scale_to_int(&self, s: &BigInt) -> Option<IntMatrix> {
        let mut rows = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut row = Vec::with_capacity(self.cols);
            for j in 0..self.cols {
                let v = self.get(i, j) * BigRational::from(s.clone());
                if !v.is_integer() {
                    return None;
                }
                row.push(v.to_integer());
            }
            rows.push(row);
        }
        Some(IntMatrix::from_rows(rows).expect("rows built with equal length"))
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| self.get(i, j).to_string())
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Exact inverse of a square integer matrix by Gauss-Jordan elimination
/// over Q, with a largest-pivot heuristic to keep numerators modest.
pub fn rational_inverse(m: &IntMatrix) -> Result<RatMatrix> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "inverse of a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| BigRational::from(m.get(i, j).clone()))
                .collect()
        })
        .collect();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();

    for k in 0..n {
        let pivot_row = (k..n)
            .filter(|&i| !a[i][k].is_zero())
            .max_by_key(|&i| a[i][k].abs())
            .ok_or(Error::SingularMatrix)?;
        a.swap(k, pivot_row);
        inv.swap(k, pivot_row);

        let pivot = a[k][k].clone();
        for j in 0..n {
            a[k][j] /= &pivot;
            inv[k][j] /= &pivot;
        }
        for i in 0..n {
            if i == k || a[i][k].is_zero() {
                continue;
            }
            let factor = a[i][k].clone();
            for j in 0..n {
                let delta = &factor * &a[k][j];
                a[i][j] -= delta;
                let delta = &factor * &inv[k][j];
                inv[i][j] -= delta;
            }
        }
    }

    let mut out = RatMatrix::zero(n, n);
    for (i, row) in inv.into_iter().enumerate() {
        for (j, v) in row.into_iter().enumerate() {
            out.set(i, j, v);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn inverse_of_trefoil_symmetrization() {
        let m = IntMatrix::from_i64_rows(&[&[-2, 1], &[1, -2]]);
        let inv = rational_inverse(&m).unwrap();
        assert_eq!(inv.get(0, 0), &rat(-2, 3));
        assert_eq!(inv.get(0, 1), &rat(-1, 3));
        assert_eq!(inv.get(1, 1), &rat(-2, 3));
        let prod = inv.mul(&RatMatrix::from_int(&m));
        assert_eq!(prod, RatMatrix::identity(2));
    }

    #[test]
    fn inverse_of_identity_and_empty() {
        assert_eq!(
            rational_inverse(&IntMatrix::identity(4)).unwrap(),
            RatMatrix::identity(4)
        );
        assert_eq!(
            rational_inverse(&IntMatrix::zero(0, 0)).unwrap(),
            RatMatrix::identity(0)
        );
    }

    #[test]
    fn singular_matrix_is_reported() {
        let m = IntMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]);
        assert_eq!(rational_inverse(&m), Err(Error::SingularMatrix));
    }

    #[test]
    fn inverse_composes_to_identity_on_a_4x4() {
        let m = IntMatrix::from_i64_rows(&[
            &[0, 1, 0, 0],
            &[2, 0, 0, 0],
            &[0, 0, 0, 1],
            &[0, 0, 2, 0],
        ]);
        let a = m.add(&m.transpose());
        let inv = rational_inverse(&a).unwrap();
        assert_eq!(inv.mul(&RatMatrix::from_int(&a)), RatMatrix::identity(4));
        assert!(inv.is_symmetric());
    }

    #[test]
    fn mod_one_lands_in_unit_interval() {
        let mut m = RatMatrix::zero(1, 3);
        m.set(0, 0, rat(-2, 3));
        m.set(0, 1, rat(7, 3));
        m.set(0, 2, rat(2, 1));
        let r = m.mod_one();
        assert_eq!(r.get(0, 0), &rat(1, 3));
        assert_eq!(r.get(0, 1), &rat(1, 3));
        assert_eq!(r.get(0, 2), &rat(0, 1));
    }

    #[test]
    fn denominator_lcm_and_scaling() {
        let mut m = RatMatrix::zero(1, 2);
        m.set(0, 0, rat(1, 6));
        m.set(0, 1, rat(3, 4));
        let l = m.denominator_lcm();
        assert_eq!(l, BigInt::from(12));
        let scaled = m.scale_to_int(&l).unwrap();
        assert_eq!(scaled, IntMatrix::from_i64_rows(&[&[2, 9]]));
        assert!(m.scale_to_int(&BigInt::from(2)).is_none());
    }
}
