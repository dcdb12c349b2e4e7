use std::fmt;
use std::ops::{Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense matrix over the integers, stored row-major.
///
/// Dimensions are fixed at construction; the 0x0 matrix is allowed and is
/// used for the empty Seifert matrix of the unknot.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    /// Zero matrix of the given shape.
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Builds a matrix from rows, requiring them all to have equal length.
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch(
                "rows have unequal lengths".into(),
            ));
        }
        Ok(IntMatrix {
            rows: nrows,
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience constructor used pervasively in tests.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let converted = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        IntMatrix::from_rows(converted).expect("literal rows have equal lengths")
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

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        assert!(i < self.rows && j < self.cols, "index out of range");
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        assert!(i < self.rows, "row index out of range");
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch in add"
        );
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch in sub"
        );
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn neg(&self) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| -a).collect(),
        }
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        let mut out = IntMatrix::zero(self.rows, other.cols);
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

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "shape mismatch in mul_vec");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum::<BigInt>()
            })
            .collect()
    }

    /// Block-diagonal sum `self (+) other`.
    pub fn block_diag(&self, other: &IntMatrix) -> IntMatrix {
        let mut out = IntMatrix::zero(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Determinant by fraction-free Gaussian elimination.
    ///
    /// Every division performed is exact, so the result is the determinant
    /// with no rounding in sight. The 0x0 matrix has determinant 1.
    pub fn determinant(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let rows: Vec<Vec<BigInt>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        Ok(bareiss_determinant(rows))
    }

    /// Scalar multiple of the identity divides this matrix; used to detect
    /// presentations of the form p * (unimodular).
    pub fn div_exact_scalar(&self, s: &BigInt) -> Option<IntMatrix> {
        assert!(!s.is_zero(), "division by zero scalar");
        let mut entries = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            let (q, r) = num_integer::Integer::div_rem(e, s);
            if !r.is_zero() {
                return None;
            }
            entries.push(q);
        }
        Some(IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    /// True when the matrix is square with determinant +1 or -1.
    pub fn is_unimodular(&self) -> bool {
        self.is_square()
            && self
                .determinant()
                .map(|d| d.abs().is_one())
                .unwrap_or(false)
    }

    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut row = Vec::with_capacity(self.cols);
            for j in 0..self.cols {
                row.push(i64::try_from(self.get(i, j)).ok()?);
            }
            out.push(row);
        }
        Some(out)
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Fraction-free determinant over any integral domain with exact division.
///
/// `Div` is only ever invoked on pairs where the quotient lies back in the
/// domain (the Bareiss identity guarantees divisibility), which is why plain
/// truncating division on `BigInt` is correct here.
pub fn bareiss_determinant<T>(mut m: Vec<Vec<T>>) -> T
where
    T: Clone
        + Zero
        + One
        + PartialEq
        + Sub<Output = T>
        + Mul<Output = T>
        + Div<Output = T>
        + Neg<Output = T>,
{
    let n = m.len();
    for row in &m {
        assert_eq!(row.len(), n, "determinant of a non-square matrix");
    }
    if n == 0 {
        return T::one();
    }
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return T::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].clone() * m[k][k].clone()
                    - m[i][k].clone() * m[k][j].clone();
                m[i][j] = num / prev.clone();
            }
            m[i][k] = T::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn determinant_matches_cofactor_expansion_small() {
        let m = IntMatrix::from_i64_rows(&[&[3, 8], &[4, 6]]);
        assert_eq!(m.determinant().unwrap(), bi(-14));

        let m = IntMatrix::from_i64_rows(&[&[6, 1, 1], &[4, -2, 5], &[2, 8, 7]]);
        assert_eq!(m.determinant().unwrap(), bi(-306));
    }

    #[test]
    fn determinant_empty_and_identity() {
        assert_eq!(IntMatrix::zero(0, 0).determinant().unwrap(), bi(1));
        assert_eq!(IntMatrix::identity(5).determinant().unwrap(), bi(1));
    }

    #[test]
    fn determinant_singular_with_zero_column() {
        let m = IntMatrix::from_i64_rows(&[&[0, 1, 2], &[0, 3, 4], &[0, 5, 6]]);
        assert_eq!(m.determinant().unwrap(), bi(0));
    }

    #[test]
    fn determinant_needs_row_swap() {
        let m = IntMatrix::from_i64_rows(&[&[0, 2], &[3, 0]]);
        assert_eq!(m.determinant().unwrap(), bi(-6));
    }

    #[test]
    fn determinant_is_multiplicative() {
        let a = IntMatrix::from_i64_rows(&[&[2, 3, 1], &[0, -1, 4], &[5, 2, 2]]);
        let b = IntMatrix::from_i64_rows(&[&[1, 0, 2], &[-3, 4, 1], &[2, 2, -2]]);
        let prod = a.mul(&b);
        assert_eq!(
            prod.determinant().unwrap(),
            a.determinant().unwrap() * b.determinant().unwrap()
        );
    }

    #[test]
    fn block_diag_shapes_and_values() {
        let a = IntMatrix::from_i64_rows(&[&[1, 2], &[3, 4]]);
        let b = IntMatrix::from_i64_rows(&[&[5]]);
        let c = a.block_diag(&b);
        assert_eq!((c.rows(), c.cols()), (3, 3));
        assert_eq!(c.get(2, 2), &bi(5));
        assert_eq!(c.get(0, 2), &bi(0));
        assert_eq!(
            c.determinant().unwrap(),
            a.determinant().unwrap() * b.determinant().unwrap()
        );
    }

    #[test]
    fn transpose_involution_and_mul_shapes() {
        let a = IntMatrix::from_i64_rows(&[&[1, 2, 3], &[4, 5, 6]]);
        assert_eq!(a.transpose().transpose(), a);
        let at_a = a.transpose().mul(&a);
        assert!(at_a.is_symmetric());
        assert_eq!((at_a.rows(), at_a.cols()), (3, 3));
    }

    #[test]
    fn from_rows_rejects_ragged_input() {
        let ragged = vec![vec![bi(1), bi(2)], vec![bi(3)]];
        assert!(matches!(
            IntMatrix::from_rows(ragged),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn div_exact_scalar_detects_divisibility() {
        let m = IntMatrix::from_i64_rows(&[&[3, -6], &[9, 0]]);
        let q = m.div_exact_scalar(&bi(3)).unwrap();
        assert_eq!(q, IntMatrix::from_i64_rows(&[&[1, -2], &[3, 0]]));
        assert!(m.div_exact_scalar(&bi(2)).is_none());
    }
}
