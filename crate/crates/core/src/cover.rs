//! Homology of the 2-fold branched cover, its Q/Z-valued linking form,
//! metabolizer enumeration, and the characters vanishing on a metabolizer.
//!
//! The first homology of the cover is presented by V + V^t, and the linking
//! form of two presentation generators is the corresponding entry of
//! (V + V^t)^{-1} taken mod 1 (sign convention: +). When the presentation
//! is p times a unimodular matrix the cokernel is (Z_p)^n on the
//! presentation generators themselves, and subspaces and characters are
//! written in those coordinates; otherwise coordinates refer to the
//! invariant-factor generators extracted from the Smith normal form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{
    enumerate_subspaces, is_odd_prime, rational_inverse, smith_normal_form, IntMatrix,
    ModPSubspace, RatMatrix,
};
use crate::seifert::SeifertMatrix;

/// First homology of the double branched cover, as presented by V + V^t.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverHomology {
    presentation: IntMatrix,
    invariant_factors: Vec<BigInt>,
    order: BigInt,
}

impl CoverHomology {
    pub fn presentation(&self) -> &IntMatrix {
        &self.presentation
    }

    /// Invariant factors greater than 1, in divisibility order.
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    /// Group order; always odd, equal to the knot determinant.
    pub fn order(&self) -> &BigInt {
        &self.order
    }

    /// Number of cyclic summands.
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Some(p) iff the group is (Z_p)^rank for an odd prime p and is
    /// nontrivial. The trivial group carries no distinguished prime.
    pub fn p_elementary(&self) -> Option<u64> {
        elementary_prime(&self.invariant_factors)
    }
}

fn elementary_prime(factors: &[BigInt]) -> Option<u64> {
    let first = factors.first()?;
    if factors.iter().any(|f| f != first) {
        return None;
    }
    let p = first.to_u64()?;
    is_odd_prime(p).then_some(p)
}

/// Homology of the double branched cover of the knot with Seifert matrix S.
pub fn cover_homology(s: &SeifertMatrix) -> CoverHomology {
    let presentation = s.symmetrize();
    let snf = smith_normal_form(&presentation);
    let order = snf
        .cokernel_order()
        .expect("V + V^t has odd determinant, so the cokernel is finite");
    debug_assert!(order.is_odd());
    debug_assert_eq!(order, s.knot_determinant());
    let invariant_factors = snf
        .invariant_factors
        .iter()
        .filter(|d| !d.is_one())
        .cloned()
        .collect();
    CoverHomology {
        presentation,
        invariant_factors,
        order,
    }
}

/// The linking form lk: H_1(M) x H_1(M) -> Q/Z.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkingForm {
    /// Pairing of presentation generators, entries reduced into [0, 1).
    gram: RatMatrix,
    /// (V + V^t)^{-1} before reduction mod 1; used by the nondegeneracy
    /// certificate, which is not invariant under entry-wise integer shifts.
    raw_inverse: RatMatrix,
    /// Invariant factors greater than 1 of the presentation.
    factors: Vec<BigInt>,
    p_elementary: Option<u64>,
    /// Presentation-coordinate representatives of the invariant-factor
    /// generators; the standard basis on the homogeneous fast path.
    generator_reps: Vec<Vec<BigInt>>,
    /// Pairing of the invariant-factor generators, mod 1.
    reduced_gram: RatMatrix,
}

impl LinkingForm {
    /// Pairing matrix on the presentation generators, entries in [0, 1).
    pub fn gram(&self) -> &RatMatrix {
        &self.gram
    }

    /// Some(p) iff the underlying group is nontrivial and (Z_p)^rank.
    pub fn p_elementary(&self) -> Option<u64> {
        self.p_elementary
    }

    /// Number of cyclic summands of the underlying group.
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// Pairing matrix on the invariant-factor generators, entries in [0, 1).
    /// Coincides with `gram` when the presentation is p times a unimodular
    /// matrix.
    pub fn reduced_gram(&self) -> &RatMatrix {
        &self.reduced_gram
    }

    /// Presentation-coordinate representatives of the invariant-factor
    /// generators, in the same order as `reduced_gram` rows.
    pub fn generator_reps(&self) -> &[Vec<BigInt>] {
        &self.generator_reps
    }

    /// lk of two classes given in presentation coordinates, in [0, 1).
    pub fn pairing(&self, x: &[BigInt], y: &[BigInt]) -> BigRational {
        assert_eq!(x.len(), self.gram.rows(), "vector length mismatch");
        assert_eq!(y.len(), self.gram.rows(), "vector length mismatch");
        mod_one(bilinear(&self.raw_inverse, x, y))
    }

    /// True iff every pair of basis vectors of `h` (written in
    /// invariant-factor coordinates) links to an integer, i.e. the form
    /// vanishes identically on the subgroup `h` spans.
    pub fn is_isotropic(&self, h: &ModPSubspace) -> bool {
        assert_eq!(
            h.ambient_dim(),
            self.rank(),
            "subspace lives in invariant-factor coordinates"
        );
        let basis: Vec<Vec<BigInt>> = h
            .basis()
            .iter()
            .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        basis.iter().enumerate().all(|(i, v)| {
            basis[i..]
                .iter()
                .all(|w| bilinear(&self.reduced_gram, v, w).is_integer())
        })
    }

    /// Certificate that the induced map to the dual group is an
    /// isomorphism: clearing denominators in (V+V^t)^{-1} by their lcm N
    /// must produce a matrix whose invariant factors are exactly
    /// { N / d : d over the full factor chain of V+V^t }.
    pub fn is_nondegenerate(&self) -> bool {
        let n = self.raw_inverse.rows();
        if n == 0 {
            return true;
        }
        let lcm = self.raw_inverse.denominator_lcm();
        let cleared = match self.raw_inverse.scale_to_int(&lcm) {
            Some(m) => m,
            None => return false,
        };
        let mut got = smith_normal_form(&cleared).invariant_factors;
        let sym_factors = smith_normal_form(&presentation_of(&self.raw_inverse)).invariant_factors;
        let mut expected: Vec<BigInt> = sym_factors.iter().map(|d| &lcm / d).collect();
        got.sort();
        expected.sort();
        got == expected && expected.iter().all(|e| !e.is_zero())
    }
}

/// Reconstructs the integer matrix whose inverse was taken; entries of the
/// inverse of an integer matrix determine it uniquely.
fn presentation_of(raw_inverse: &RatMatrix) -> IntMatrix {
    let n = raw_inverse.rows();
    let inv_of_inv = invert_rational(raw_inverse);
    let mut m = IntMatrix::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            let e = inv_of_inv.get(i, j);
            assert!(e.is_integer(), "inverse of an inverse of an integer matrix");
            m.set(i, j, e.to_integer());
        }
    }
    m
}

fn invert_rational(m: &RatMatrix) -> RatMatrix {
    // Clear denominators, invert the integer matrix, undo the scaling.
    let lcm = m.denominator_lcm();
    let cleared = m.scale_to_int(&lcm).expect("lcm clears all denominators");
    let inv = rational_inverse(&cleared).expect("invertible by construction");
    let mut out = RatMatrix::zero(m.rows(), m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            out.set(i, j, inv.get(i, j) * BigRational::from(lcm.clone()));
        }
    }
    out
}

fn bilinear(gram: &RatMatrix, x: &[BigInt], y: &[BigInt]) -> BigRational {
    let mut acc = BigRational::zero();
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            acc += gram.get(i, j) * BigRational::from(xi * yj);
        }
    }
    acc
}

fn mod_one(q: BigRational) -> BigRational {
    &q - q.floor()
}

/// Linking form of the double branched cover: lk(e_i, e_j) =
/// ((V+V^t)^{-1})_{ij} mod 1.
pub fn linking_form(s: &SeifertMatrix) -> LinkingForm {
    let sym = s.symmetrize();
    let n = sym.rows();
    let raw_inverse =
        rational_inverse(&sym).expect("V + V^t has odd determinant, hence invertible");
    let gram = raw_inverse.mod_one();
    debug_assert!(gram.is_symmetric());
    let snf = smith_normal_form(&sym);
    let factors: Vec<BigInt> = snf
        .invariant_factors
        .iter()
        .filter(|d| !d.is_one())
        .cloned()
        .collect();
    let r = factors.len();
    let p_elementary = elementary_prime(&factors);

    let (generator_reps, reduced_gram) = if r == n {
        // Presentation is d * (unimodular): the generators themselves are a
        // basis of the cokernel, so characters and metabolizers can be
        // written directly in presentation coordinates.
        let reps = (0..n)
            .map(|i| {
                let mut e = vec![BigInt::zero(); n];
                e[i] = BigInt::one();
                e
            })
            .collect();
        (reps, gram.clone())
    } else {
        // General case: with U S W = D, the class of column i of U^{-1}
        // generates the Z_{d_i} summand.
        let u_inv = rational_inverse(&snf.u)
            .expect("unimodular")
            .scale_to_int(&BigInt::one())
            .expect("inverse of a unimodular matrix is integral");
        let positions: Vec<usize> = snf
            .invariant_factors
            .iter()
            .enumerate()
            .filter(|(_, d)| !d.is_one())
            .map(|(i, _)| i)
            .collect();
        let reps: Vec<Vec<BigInt>> = positions
            .iter()
            .map(|&col| (0..n).map(|row| u_inv.get(row, col).clone()).collect())
            .collect();
        let mut reduced = RatMatrix::zero(r, r);
        for a in 0..r {
            for b in 0..r {
                reduced.set(a, b, mod_one(bilinear(&raw_inverse, &reps[a], &reps[b])));
            }
        }
        (reps, reduced)
    };

    LinkingForm {
        gram,
        raw_inverse,
        factors,
        p_elementary,
        generator_reps,
        reduced_gram,
    }
}

/// All self-annihilating subgroups H with |H|^2 = |H_1|, for a p-elementary
/// form of rank 2m: exactly the m-dimensional isotropic subspaces of
/// (F_p)^{2m}. Exhaustive scan over the canonical echelon enumeration.
///
/// Odd-rank p-elementary forms have no metabolizer (|H|^2 is an even power
/// of p) and yield the empty list. The trivial group's only metabolizer is
/// the zero subgroup; with no prime to coordinate it, the list is empty
/// there too.
pub fn metabolizers(l: &LinkingForm) -> Result<Vec<ModPSubspace>> {
    let r = l.rank();
    if r == 0 {
        return Ok(Vec::new());
    }
    let p = l.p_elementary.ok_or_else(|| {
        Error::NotPElementary(format!(
            "invariant factors {:?} are not all one odd prime",
            l.factors.iter().map(|f| f.to_string()).collect::<Vec<_>>()
        ))
    })?;
    if r % 2 == 1 {
        return Ok(Vec::new());
    }
    let all = enumerate_subspaces(p, r, r / 2)?;
    Ok(all.into_iter().filter(|h| l.is_isotropic(h)).collect())
}

/// A Z_p-valued character on the cover homology, written as its value
/// vector on the generators (presentation generators on the homogeneous
/// fast path).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character {
    p: u64,
    values: Vec<u64>,
}

impl Character {
    pub fn new(p: u64, values: Vec<u64>) -> Result<Self> {
        if p < 2 {
            return Err(Error::InvalidCharacter(format!(
                "modulus {p} must be at least 2"
            )));
        }
        if let Some(v) = values.iter().find(|&&v| v >= p) {
            return Err(Error::InvalidCharacter(format!(
                "value {v} outside 0..{p}"
            )));
        }
        Ok(Character { p, values })
    }

    pub fn zero(p: u64, len: usize) -> Result<Self> {
        Character::new(p, vec![0; len])
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn value(&self, i: usize) -> u64 {
        self.values[i]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// The inverse character -chi.
    pub fn negated(&self) -> Character {
        Character {
            p: self.p,
            values: self.values.iter().map(|&v| (self.p - v) % self.p).collect(),
        }
    }

    /// A value vector descends to the cokernel iff it annihilates the
    /// column space of the presentation mod p.
    pub fn is_well_defined(&self, presentation: &IntMatrix) -> bool {
        let p = BigInt::from(self.p);
        (0..presentation.cols()).all(|j| {
            let mut acc = BigInt::zero();
            for (i, &v) in self.values.iter().enumerate() {
                acc += presentation.get(i, j) * BigInt::from(v);
            }
            (acc % &p).is_zero()
        })
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// All characters vanishing on H: exactly the value vectors in the
/// dot-product annihilator of H, including the zero character. Sorted
/// lexicographically.
pub fn vanishing_characters(h: &ModPSubspace) -> Vec<Character> {
    h.annihilator()
        .elements()
        .into_iter()
        .map(|values| Character::new(h.p(), values).expect("annihilator values are reduced mod p"))
        .collect()
}
