use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Upper bound on p^n for any mod-p enumeration.
const VECTOR_SPACE_LIMIT: u64 = 1 << 24;
/// Upper bound on the number of subspaces a single enumeration may return.
const SUBSPACE_COUNT_LIMIT: u64 = 1 << 20;

/// Deterministic primality by trial division; fine at these magnitudes.
pub fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn require_odd_prime(p: u64) -> Result<()> {
    if !is_odd_prime(p) {
        return Err(Error::NotAnOddPrime(p));
    }
    // Keeps p*p inside u64 for the field arithmetic below.
    if p > VECTOR_SPACE_LIMIT {
        return Err(Error::InvalidArgument(format!(
            "prime {p} exceeds the supported limit {VECTOR_SPACE_LIMIT}"
        )));
    }
    Ok(())
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0, "inverting zero mod {p}");
    pow_mod(a, p - 2, p)
}

/// Reduced row echelon form over F_p; zero rows are dropped.
fn rref(p: u64, mut rows: Vec<Vec<u64>>) -> Vec<Vec<u64>> {
    let ncols = rows.first().map_or(0, Vec::len);
    let nrows = rows.len();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(src) = (rank..nrows).find(|&r| rows[r][col] % p != 0) else {
            continue;
        };
        rows.swap(rank, src);
        let inv = inv_mod(rows[rank][col], p);
        for x in &mut rows[rank] {
            *x = *x * inv % p;
        }
        for r in 0..nrows {
            if r == rank || rows[r][col] == 0 {
                continue;
            }
            let factor = rows[r][col];
            for c in 0..ncols {
                let sub = factor * rows[rank][c] % p;
                rows[r][c] = (rows[r][c] + p - sub) % p;
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
    rows
}

/// A linear subspace of F_p^n, held as its unique reduced row echelon
/// basis so that equal subspaces compare equal and sort deterministically.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModPSubspace {
    p: u64,
    ambient_dim: usize,
    basis: Vec<Vec<u64>>,
}

impl ModPSubspace {
    /// Span of the given vectors, entries taken mod p.
    pub fn from_vectors(p: u64, ambient_dim: usize, vectors: &[Vec<i64>]) -> Result<Self> {
        require_odd_prime(p)?;
        let mut rows = Vec::with_capacity(vectors.len());
        for v in vectors {
            if v.len() != ambient_dim {
                return Err(Error::DimensionMismatch(format!(
                    "vector of length {} in ambient dimension {}",
                    v.len(),
                    ambient_dim
                )));
            }
            rows.push(
                v.iter()
                    .map(|&x| x.rem_euclid(p as i64) as u64)
                    .collect(),
            );
        }
        Ok(ModPSubspace {
            p,
            ambient_dim,
            basis: rref(p, rows),
        })
    }

    /// The zero subspace.
    pub fn trivial(p: u64, ambient_dim: usize) -> Result<Self> {
        ModPSubspace::from_vectors(p, ambient_dim, &[])
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u64>] {
        &self.basis
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        if v.len() != self.ambient_dim {
            return false;
        }
        let p = self.p;
        let mut rem: Vec<u64> = v.iter().map(|&x| x % p).collect();
        for row in &self.basis {
            let col = row.iter().position(|&x| x == 1).expect("rref row has a pivot");
            let factor = rem[col];
            if factor == 0 {
                continue;
            }
            for c in 0..self.ambient_dim {
                let sub = factor * row[c] % p;
                rem[c] = (rem[c] + p - sub) % p;
            }
        }
        rem.iter().all(|&x| x == 0)
    }

    pub fn is_subspace_of(&self, other: &ModPSubspace) -> bool {
        self.p == other.p
            && self.ambient_dim == other.ambient_dim
            && self.basis.iter().all(|b| other.contains(b))
    }

    /// Every vector of the subspace, sorted lexicographically.
    ///
    /// The count p^dim is bounded by the same limit as vector-space
    /// enumeration; callers stay well inside it.
    pub fn elements(&self) -> Vec<Vec<u64>> {
        let k = self.dim();
        let p = self.p;
        assert!(
            (p as f64).powi(k as i32) <= VECTOR_SPACE_LIMIT as f64,
            "element enumeration too large"
        );
        let mut coeffs = vec![0u64; k];
        let mut out = Vec::new();
        loop {
            let mut v = vec![0u64; self.ambient_dim];
            for (a, row) in coeffs.iter().zip(&self.basis) {
                if *a == 0 {
                    continue;
                }
                for (dst, &src) in v.iter_mut().zip(row) {
                    *dst = (*dst + a * src) % p;
                }
            }
            out.push(v);
            let mut i = k;
            loop {
                if i == 0 {
                    out.sort();
                    return out;
                }
                i -= 1;
                coeffs[i] += 1;
                if coeffs[i] < p {
                    break;
                }
                coeffs[i] = 0;
            }
        }
    }

    /// Orthogonal complement with respect to the standard dot product:
    /// { v : b . v = 0 for every basis vector b }.
    pub fn annihilator(&self) -> ModPSubspace {
        let p = self.p;
        let n = self.ambient_dim;
        let pivots: Vec<usize> = self
            .basis
            .iter()
            .map(|row| row.iter().position(|&x| x == 1).expect("rref row has a pivot"))
            .collect();
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let mut vectors = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![0u64; n];
            v[f] = 1;
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = (p - self.basis[i][f]) % p;
            }
            vectors.push(v);
        }
        ModPSubspace {
            p,
            ambient_dim: n,
            basis: rref(p, vectors),
        }
    }
}

impl std::fmt::Debug for ModPSubspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "ModPSubspace(p={}, dim {} of {}, basis {:?})",
            self.p,
            self.dim(),
            self.ambient_dim,
            self.basis
        )
    }
}

/// Number of k-dimensional subspaces of F_p^n (the Gaussian binomial).
pub fn gaussian_binomial(p: u64, n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let p = BigInt::from(p);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= p.pow((n - i) as u32) - 1;
        den *= p.pow((k - i) as u32) - 1;
    }
    let (q, r) = num_integer::Integer::div_rem(&num, &den);
    debug_assert!(r.is_zero(), "Gaussian binomial is an integer");
    q
}

/// All k-dimensional subspaces of F_p^n, sorted by their canonical bases.
///
/// Each subspace appears exactly once: a choice of pivot columns plus
/// arbitrary values at the non-pivot positions to the right of each pivot
/// parameterizes reduced row echelon bases bijectively.
pub fn enumerate_subspaces(p: u64, n: usize, k: usize) -> Result<Vec<ModPSubspace>> {
    require_odd_prime(p)?;
    if k > n {
        return Err(Error::DimensionMismatch(format!(
            "{k}-dimensional subspaces of F_{p}^{n}"
        )));
    }
    let space_size = BigInt::from(p).pow(n as u32);
    if space_size > BigInt::from(VECTOR_SPACE_LIMIT) {
        return Err(Error::EnumerationTooLarge {
            p,
            dim: n,
            count: space_size,
            limit: VECTOR_SPACE_LIMIT,
        });
    }
    let count = gaussian_binomial(p, n, k);
    if count > BigInt::from(SUBSPACE_COUNT_LIMIT) {
        return Err(Error::EnumerationTooLarge {
            p,
            dim: n,
            count,
            limit: SUBSPACE_COUNT_LIMIT,
        });
    }

    let mut out = Vec::new();
    for pivots in (0..n).combinations(k) {
        // Free slots: positions right of their row's pivot, not pivots
        // themselves.
        let mut free_slots = Vec::new();
        for (row, &pc) in pivots.iter().enumerate() {
            for col in pc + 1..n {
                if !pivots.contains(&col) {
                    free_slots.push((row, col));
                }
            }
        }
        let mut values = vec![0u64; free_slots.len()];
        loop {
            let mut basis = vec![vec![0u64; n]; k];
            for (row, &pc) in pivots.iter().enumerate() {
                basis[row][pc] = 1;
            }
            for (&(row, col), &v) in free_slots.iter().zip(&values) {
                basis[row][col] = v;
            }
            out.push(ModPSubspace {
                p,
                ambient_dim: n,
                basis,
            });
            let mut i = free_slots.len();
            loop {
                if i == 0 {
                    values.clear();
                }
                if values.is_empty() {
                    break;
                }
                i -= 1;
                values[i] += 1;
                if values[i] < p {
                    break;
                }
                values[i] = 0;
            }
            if values.is_empty() {
                break;
            }
        }
    }
    debug_assert_eq!(BigInt::from(out.len()), gaussian_binomial(p, n, k));
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_prime_recognition() {
        for p in [3, 5, 7, 11, 13, 101] {
            assert!(is_odd_prime(p), "{p}");
        }
        for p in [0, 1, 2, 4, 9, 15, 21, 49] {
            assert!(!is_odd_prime(p), "{p}");
        }
    }

    #[test]
    fn rref_is_canonical() {
        let a = ModPSubspace::from_vectors(3, 3, &[vec![1, 2, 0], vec![0, 1, 1]]).unwrap();
        let b =
            ModPSubspace::from_vectors(3, 3, &[vec![1, 0, -2], vec![2, 4, 0], vec![1, 2, 0]])
                .unwrap();
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
        assert_eq!(a.basis(), &[vec![1, 0, 1], vec![0, 1, 1]]);
    }

    #[test]
    fn containment() {
        let s = ModPSubspace::from_vectors(3, 4, &[vec![0, 1, 0, 0], vec![0, 0, 1, 0]]).unwrap();
        assert!(s.contains(&[0, 1, 2, 0]));
        assert!(s.contains(&[0, 0, 0, 0]));
        assert!(!s.contains(&[1, 0, 0, 0]));
        assert!(!s.contains(&[0, 1, 0, 1]));
    }

    #[test]
    fn annihilator_of_coordinate_plane() {
        let s = ModPSubspace::from_vectors(3, 4, &[vec![0, 1, 0, 0], vec![0, 0, 1, 0]]).unwrap();
        let ann = s.annihilator();
        assert_eq!(ann.basis(), &[vec![1, 0, 0, 0], vec![0, 0, 0, 1]]);
    }

    #[test]
    fn annihilator_dimension_and_involution() {
        let examples = [
            ModPSubspace::from_vectors(3, 4, &[vec![1, 1, 0, 2]]).unwrap(),
            ModPSubspace::from_vectors(5, 3, &[vec![1, 2, 3], vec![0, 1, 4]]).unwrap(),
            ModPSubspace::trivial(7, 2).unwrap(),
        ];
        for s in examples {
            let ann = s.annihilator();
            assert_eq!(ann.dim(), s.ambient_dim() - s.dim());
            assert_eq!(ann.annihilator(), s);
        }
    }

    #[test]
    fn elements_are_sorted_and_complete() {
        let s = ModPSubspace::from_vectors(3, 4, &[vec![0, 1, 0, 0], vec![0, 0, 1, 0]]).unwrap();
        let els = s.elements();
        assert_eq!(els.len(), 9);
        assert!(els.windows(2).all(|w| w[0] < w[1]));
        assert!(els.iter().all(|v| s.contains(v)));
        assert_eq!(els[0], vec![0, 0, 0, 0]);
    }

    #[test]
    fn gaussian_binomial_values() {
        assert_eq!(gaussian_binomial(3, 2, 1), BigInt::from(4));
        assert_eq!(gaussian_binomial(3, 4, 2), BigInt::from(130));
        assert_eq!(gaussian_binomial(5, 4, 2), BigInt::from(806));
        assert_eq!(gaussian_binomial(3, 4, 0), BigInt::from(1));
        assert_eq!(gaussian_binomial(3, 4, 4), BigInt::from(1));
        assert_eq!(gaussian_binomial(3, 4, 5), BigInt::from(0));
    }

    #[test]
    fn gaussian_binomial_symmetry() {
        for n in 0..6 {
            for k in 0..=n {
                assert_eq!(
                    gaussian_binomial(3, n, k),
                    gaussian_binomial(3, n, n - k),
                    "n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn enumerate_lines_in_the_plane() {
        let subs = enumerate_subspaces(3, 2, 1).unwrap();
        assert_eq!(subs.len(), 4);
        let bases: Vec<_> = subs.iter().map(|s| s.basis()[0].clone()).collect();
        assert_eq!(
            bases,
            vec![vec![0, 1], vec![1, 0], vec![1, 1], vec![1, 2]]
        );
    }

    #[test]
    fn enumerate_counts_match_gaussian_binomial() {
        for (p, n, k) in [(3, 4, 2), (3, 3, 1), (5, 3, 2), (7, 2, 1)] {
            let subs = enumerate_subspaces(p, n, k).unwrap();
            assert_eq!(BigInt::from(subs.len()), gaussian_binomial(p, n, k));
            let mut dedup = subs.clone();
            dedup.dedup();
            assert_eq!(dedup.len(), subs.len(), "duplicate subspaces emitted");
            assert!(subs.windows(2).all(|w| w[0] < w[1]), "not sorted");
        }
    }

    #[test]
    fn enumeration_guards() {
        assert!(matches!(
            enumerate_subspaces(3, 40, 2),
            Err(Error::EnumerationTooLarge { .. })
        ));
        assert!(matches!(
            enumerate_subspaces(4, 3, 1),
            Err(Error::NotAnOddPrime(4))
        ));
        assert!(matches!(
            enumerate_subspaces(3, 2, 5),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn zero_dimensional_cases() {
        let subs = enumerate_subspaces(3, 3, 0).unwrap();
        assert_eq!(subs.len(), 1);
        assert_eq!(subs[0].dim(), 0);
        let all = enumerate_subspaces(3, 3, 3).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].dim(), 3);
    }
}
