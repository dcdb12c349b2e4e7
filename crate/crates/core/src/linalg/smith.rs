use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// Smith normal form `U * A * W = D` with unimodular `U`, `W`.
///
/// `D` is diagonal with nonnegative entries satisfying the divisibility
/// chain d1 | d2 | ... ; `invariant_factors` lists the positive diagonal
/// entries in order (so trailing zeros of a singular matrix are dropped).
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub w: IntMatrix,
    pub invariant_factors: Vec<BigInt>,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    /// Order of the cokernel coker(A) = Z^m / A Z^n when it is finite,
    /// i.e. when A has full row rank.
    pub fn cokernel_order(&self) -> Option<BigInt> {
        if self.rank() < self.d.rows() {
            return None;
        }
        Some(self.invariant_factors.iter().product())
    }
}

struct Worker {
    d: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
    w: Vec<Vec<BigInt>>,
    m: usize,
    n: usize,
}

impl Worker {
    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            self.d.swap(a, b);
            self.u.swap(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for row in &mut self.d {
            row.swap(a, b);
        }
        for row in &mut self.w {
            row.swap(a, b);
        }
    }

    /// row[target] += c * row[source]
    fn add_row_multiple(&mut self, target: usize, source: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for j in 0..self.n {
            let delta = c * &self.d[source][j];
            self.d[target][j] += delta;
        }
        for j in 0..self.m {
            let delta = c * &self.u[source][j];
            self.u[target][j] += delta;
        }
    }

    /// col[target] += c * col[source]
    fn add_col_multiple(&mut self, target: usize, source: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for row in &mut self.d {
            let delta = c * &row[source];
            row[target] += delta;
        }
        for row in &mut self.w {
            let delta = c * &row[source];
            row[target] += delta;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for x in &mut self.d[r] {
            *x = -std::mem::take(x);
        }
        for x in &mut self.u[r] {
            *x = -std::mem::take(x);
        }
    }

    /// Position of a nonzero entry of minimal absolute value in the
    /// trailing submatrix d[k.., k..].
    fn min_abs_position(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for i in k..self.m {
            for j in k..self.n {
                let v = &self.d[i][j];
                if v.is_zero() {
                    continue;
                }
                let a = v.abs();
                if a.is_one() {
                    return Some((i, j));
                }
                match &best {
                    Some((_, _, cur)) if *cur <= a => {}
                    _ => best = Some((i, j, a)),
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    fn trailing_nondivisible(&self, k: usize) -> Option<usize> {
        let pivot = &self.d[k][k];
        for i in k + 1..self.m {
            for j in k + 1..self.n {
                if !self.d[i][j].mod_floor(pivot).is_zero() {
                    return Some(i);
                }
            }
        }
        None
    }
}

/// Computes the Smith normal form of an arbitrary integer matrix.
///
/// Pivoting always selects an entry of minimal absolute value, which keeps
/// intermediate entries small in practice; every elimination step is a
/// unimodular row or column operation mirrored into `U` or `W`.
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let m = a.rows();
    let n = a.cols();
    let mut work = Worker {
        d: (0..m).map(|i| a.row(i).to_vec()).collect(),
        u: (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                    .collect()
            })
            .collect(),
        w: (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                    .collect()
            })
            .collect(),
        m,
        n,
    };

    for k in 0..m.min(n) {
        let Some((pi, pj)) = work.min_abs_position(k) else {
            break;
        };
        work.swap_rows(k, pi);
        work.swap_cols(k, pj);

        loop {
            // Clear column k below the pivot, then row k to its right.
            // Euclidean remainders can survive one pass; repeat with the
            // freshly selected smaller pivot until both are clean.
            let mut dirty = false;
            for i in k + 1..m {
                if !work.d[i][k].is_zero() {
                    let q = -(&work.d[i][k] / &work.d[k][k]);
                    work.add_row_multiple(i, k, &q);
                    dirty |= !work.d[i][k].is_zero();
                }
            }
            for j in k + 1..n {
                if !work.d[k][j].is_zero() {
                    let q = -(&work.d[k][j] / &work.d[k][k]);
                    work.add_col_multiple(j, k, &q);
                    dirty |= !work.d[k][j].is_zero();
                }
            }
            if dirty {
                let (pi, pj) = work
                    .min_abs_position(k)
                    .expect("nonzero entries persist while remainders are nonzero");
                work.swap_rows(k, pi);
                work.swap_cols(k, pj);
                continue;
            }
            // Pivot must divide the whole trailing submatrix for the
            // divisibility chain; fold an offending row into row k and
            // let the gcd fall out of another elimination round.
            if let Some(i) = work.trailing_nondivisible(k) {
                work.add_row_multiple(k, i, &BigInt::one());
                continue;
            }
            break;
        }
    }

    for k in 0..m.min(n) {
        if work.d[k][k].is_negative() {
            work.negate_row(k);
        }
    }

    let invariant_factors: Vec<BigInt> = (0..m.min(n))
        .map(|k| work.d[k][k].clone())
        .take_while(|d| !d.is_zero())
        .collect();
    for pair in invariant_factors.windows(2) {
        debug_assert!(
            pair[1].mod_floor(&pair[0]).is_zero(),
            "invariant factor chain violated"
        );
    }

    SmithDecomposition {
        u: IntMatrix::from_rows(work.u).expect("square rows"),
        d: IntMatrix::from_rows(work.d).expect("rectangular rows"),
        w: IntMatrix::from_rows(work.w).expect("square rows"),
        invariant_factors,
    }
}
