//! Seifert matrices and the classical invariants read off from them.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::linalg::{bareiss_determinant, smith_normal_form, IntMatrix};
use crate::poly::IntPolynomial;

/// Maximal genus for exhaustive metabolizer search of the Seifert form.
const SEARCH_GENUS_LIMIT: usize = 3;

/// A Seifert matrix: a square integer matrix `V` of even size `2g` with
/// `det(V - V^t) = 1`. The 0x0 matrix is the Seifert matrix of the unknot.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SeifertMatrix {
    matrix: IntMatrix,
    label: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SeifertJson {
    #[serde(default)]
    label: Option<String>,
    matrix: Vec<Vec<i64>>,
}

impl SeifertMatrix {
    pub fn new(matrix: IntMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::InvalidSeifertMatrix(format!(
                "matrix is {}x{}, not square",
                matrix.rows(),
                matrix.cols()
            )));
        }
        if matrix.rows() % 2 != 0 {
            return Err(Error::InvalidSeifertMatrix(format!(
                "size {} is odd; a Seifert surface of genus g gives a 2g x 2g matrix",
                matrix.rows()
            )));
        }
        let skew = matrix.sub(&matrix.transpose());
        let det = skew.determinant().expect("square matrix");
        if !det.is_one() {
            return Err(Error::InvalidSeifertMatrix(format!(
                "det(V - V^t) = {det}, expected 1"
            )));
        }
        Ok(SeifertMatrix {
            matrix,
            label: None,
        })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        SeifertMatrix::new(IntMatrix::from_i64_rows(rows))
    }

    pub fn labeled(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    /// Parses the JSON document {"label": optional string, "matrix": [[int]]}.
    pub fn from_json_str(s: &str) -> Result<Self> {
        let parsed: SeifertJson = serde_json::from_str(s)
            .map_err(|e| Error::MalformedInput(format!("seifert matrix JSON: {e}")))?;
        let rows: Vec<Vec<BigInt>> = parsed
            .matrix
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let matrix = IntMatrix::from_rows(rows)
            .map_err(|_| Error::MalformedInput("matrix rows have unequal lengths".into()))?;
        let s = SeifertMatrix::new(matrix)?;
        Ok(match parsed.label {
            Some(l) => s.labeled(l),
            None => s,
        })
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    /// Genus of the underlying surface; the matrix is 2g x 2g.
    pub fn genus(&self) -> usize {
        self.matrix.rows() / 2
    }

    pub fn size(&self) -> usize {
        self.matrix.rows()
    }

    /// The symmetrized matrix V + V^t, the intersection form input for
    /// signatures and the presentation matrix of the double branched cover.
    pub fn symmetrize(&self) -> IntMatrix {
        self.matrix.add(&self.matrix.transpose())
    }

    /// Alexander polynomial det(V - t V^t), normalized to have a nonzero
    /// constant term and positive leading coefficient.
    pub fn alexander_polynomial(&self) -> IntPolynomial {
        let n = self.size();
        let rows: Vec<Vec<IntPolynomial>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        IntPolynomial::from_coeffs(vec![
                            self.matrix.get(i, j).clone(),
                            -self.matrix.get(j, i).clone(),
                        ])
                    })
                    .collect()
            })
            .collect();
        let raw = bareiss_determinant(rows);
        normalize_alexander(raw)
    }

    /// |det(V + V^t)|, always odd.
    pub fn knot_determinant(&self) -> BigInt {
        self.symmetrize()
            .determinant()
            .expect("square matrix")
            .abs()
    }

    /// Block sum of Seifert matrices; labels are joined when both exist.
    pub fn connected_sum(&self, other: &SeifertMatrix) -> SeifertMatrix {
        let label = match (&self.label, &other.label) {
            (Some(a), Some(b)) => Some(format!("{a} # {b}")),
            _ => None,
        };
        SeifertMatrix {
            matrix: self.matrix.block_diag(&other.matrix),
            label,
        }
    }

    /// Connected sum of `n` copies of this knot. Block sums of valid
    /// Seifert matrices are valid, so the determinant is not recomputed;
    /// that matters for large `n`, where revalidation would cost O(n^3).
    pub fn repeated_connected_sum(&self, n: usize) -> SeifertMatrix {
        let b = self.size();
        let mut m = IntMatrix::zero(n * b, n * b);
        for block in 0..n {
            for i in 0..b {
                for j in 0..b {
                    m.set(block * b + i, block * b + j, self.matrix.get(i, j).clone());
                }
            }
        }
        SeifertMatrix {
            matrix: m,
            label: None,
        }
    }

    /// Seifert matrix -V^t of the mirror image.
    pub fn mirror(&self) -> SeifertMatrix {
        SeifertMatrix {
            matrix: self.matrix.transpose().neg(),
            label: None,
        }
    }

    /// Checks whether the vectors span a metabolizer of the Seifert form:
    /// a primitive rank-g sublattice of Z^2g on which the form vanishes
    /// identically (both argument orders).
    pub fn is_metabolizer(&self, vectors: &[Vec<i64>]) -> Result<bool> {
        let g = self.genus();
        let n = self.size();
        for v in vectors {
            if v.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "metabolizer vector of length {} for a {}x{} Seifert matrix",
                    v.len(),
                    n,
                    n
                )));
            }
        }
        if vectors.len() != g {
            return Ok(false);
        }
        for v in vectors {
            for w in vectors {
                if !pairing(&self.matrix, v, w).is_zero() {
                    return Ok(false);
                }
            }
        }
        if g == 0 {
            return Ok(true);
        }
        let rows: Vec<Vec<BigInt>> = vectors
            .iter()
            .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let stack = IntMatrix::from_rows(rows).expect("lengths checked above");
        let snf = smith_normal_form(&stack);
        Ok(snf.rank() == g && snf.invariant_factors.iter().all(BigInt::is_one))
    }

    /// Exhaustive search for a Seifert-form metabolizer among bases whose
    /// vectors have entries in [-bound, bound]. Candidates are scanned in
    /// order of increasing coordinate weight, so returned bases are small
    /// and the result is deterministic. Genus is capped because the pool
    /// grows like (2 bound + 1)^2g.
    pub fn search_metabolizer(&self, bound: i64) -> Result<Option<Vec<Vec<i64>>>> {
        if bound < 1 {
            return Err(Error::InvalidArgument(format!(
                "search bound must be at least 1, got {bound}"
            )));
        }
        let g = self.genus();
        if g > SEARCH_GENUS_LIMIT {
            return Err(Error::InvalidArgument(format!(
                "metabolizer search is exhaustive and limited to genus <= {SEARCH_GENUS_LIMIT}, got genus {g}"
            )));
        }
        if g == 0 {
            return Ok(Some(Vec::new()));
        }

        // Sign-normalized candidate pool: first nonzero coordinate positive,
        // ordered by (sum of |entries|, lex). Only isotropic vectors can
        // appear in a metabolizer.
        let n = self.size();
        let mut pool: Vec<Vec<i64>> = Vec::new();
        let mut v = vec![-bound; n];
        loop {
            let leads_positive = matches!(v.iter().find(|&&x| x != 0), Some(&lead) if lead > 0);
            if leads_positive && pairing(&self.matrix, &v, &v).is_zero() {
                pool.push(v.clone());
            }
            let mut i = n;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                v[i] += 1;
                if v[i] <= bound {
                    break;
                }
                v[i] = -bound;
            }
            if v.iter().all(|&x| x == -bound) {
                break;
            }
        }
        pool.sort_by_key(|v| (v.iter().map(|x| x.abs()).sum::<i64>(), v.clone()));

        let mut chosen: Vec<Vec<i64>> = Vec::with_capacity(g);
        if self.search_rec(&pool, 0, &mut chosen) {
            Ok(Some(chosen))
        } else {
            Ok(None)
        }
    }

    fn search_rec(&self, pool: &[Vec<i64>], start: usize, chosen: &mut Vec<Vec<i64>>) -> bool {
        if chosen.len() == self.genus() {
            return self
                .is_metabolizer(chosen)
                .expect("dimensions are consistent by construction");
        }
        for i in start..pool.len() {
            let cand = &pool[i];
            let compatible = chosen.iter().all(|c| {
                pairing(&self.matrix, c, cand).is_zero()
                    && pairing(&self.matrix, cand, c).is_zero()
            });
            if !compatible {
                continue;
            }
            chosen.push(cand.clone());
            if self.search_rec(pool, i + 1, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }

    /// Random valid Seifert matrix: a random symmetric part plus the block
    /// sum of g copies of [[0,1],[0,0]], roughed up by a few unimodular
    /// congruences. The skew part is untouched by construction, so
    /// det(V - V^t) = 1 holds for every sample.
    pub fn random<R: Rng + ?Sized>(genus: usize, entry_bound: i64, rng: &mut R) -> SeifertMatrix {
        let n = 2 * genus;
        let bound = entry_bound.max(1);
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            for j in 0..=i {
                let x = BigInt::from(rng.gen_range(-bound..=bound));
                m.set(i, j, x.clone());
                if i != j {
                    m.set(j, i, x);
                }
            }
        }
        for g in 0..genus {
            let cur = m.get(2 * g, 2 * g + 1) + BigInt::one();
            m.set(2 * g, 2 * g + 1, cur);
        }
        // E^t V E with E = I + c e_ij keeps the skew part unimodular.
        for _ in 0..genus {
            let i = rng.gen_range(0..n);
            let mut j = rng.gen_range(0..n);
            while j == i {
                j = rng.gen_range(0..n);
            }
            let c = if rng.gen_bool(0.5) { 1 } else { -1 };
            let mut e = IntMatrix::identity(n);
            e.set(i, j, BigInt::from(c));
            m = e.transpose().mul(&m).mul(&e);
        }
        SeifertMatrix::new(m).expect("construction preserves det(V - V^t) = 1")
    }
}

/// v^t V w as a BigInt.
fn pairing(m: &IntMatrix, v: &[i64], w: &[i64]) -> BigInt {
    let mut acc = BigInt::zero();
    for (i, &vi) in v.iter().enumerate() {
        if vi == 0 {
            continue;
        }
        for (j, &wj) in w.iter().enumerate() {
            if wj == 0 {
                continue;
            }
            acc += m.get(i, j) * BigInt::from(vi) * BigInt::from(wj);
        }
    }
    acc
}

fn normalize_alexander(raw: IntPolynomial) -> IntPolynomial {
    if raw.is_zero() {
        return raw;
    }
    let low = raw
        .coeffs()
        .iter()
        .position(|c| !c.is_zero())
        .expect("nonzero polynomial");
    let shifted = IntPolynomial::from_coeffs(raw.coeffs()[low..].to_vec());
    if shifted
        .leading_coeff()
        .expect("nonzero polynomial")
        .is_negative()
    {
        -shifted
    } else {
        shifted
    }
}
