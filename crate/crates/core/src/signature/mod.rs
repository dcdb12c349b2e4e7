//! Exact Tristram-Levine signatures of knots given by Seifert matrices.
//!
//! The signature at omega = e^(2*pi*i*k/p) is the signature of the hermitian
//! matrix H = (1-omega)V + (1-conj(omega))V^t. Writing c = cos(2*pi*k/p) and
//! s = sin(2*pi*k/p), H = (1-c)S - i*s*A with S = V + V^t and A = V - V^t,
//! and the real symmetric matrix [[(1-c)S, sA], [-sA, (1-c)S]] has twice the
//! signature of H. For 0 < k/p < 1/2 both s and 1-c are positive, and a
//! congruence by diag(sI, I) followed by diag((1-c)^-1 I, I) trades the
//! irrational s for entries linear in c:
//!
//!   T = [[(1+c)S, (1+c)A], [-(1+c)A, (1-c)S]],   signature(T) = 2*sigma.
//!
//! All arithmetic happens in Q(c), so the result is exact by construction:
//! every pivot sign in the diagonalization is certified, either as a rational
//! number or by interval refinement that terminates because nonzero field
//! elements are detected syntactically first.

mod interval;
mod realfield;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::poly::cyclotomic;
use crate::seifert::SeifertMatrix;
use realfield::RealCyclotomicField;

/// Reduced fraction k/p with 0 < k < p, encoding omega = e^(2*pi*i*k/p).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalAngle {
    k: u64,
    p: u64,
}

impl RationalAngle {
    /// Builds k/p in lowest terms; rejects k = 0, p = 0, and k >= p.
    pub fn new(k: u64, p: u64) -> Result<Self> {
        if p == 0 {
            return Err(Error::InvalidAngle {
                k,
                p,
                reason: "denominator must be positive".into(),
            });
        }
        if k == 0 || k >= p {
            return Err(Error::InvalidAngle {
                k,
                p,
                reason: "require 0 < k < p".into(),
            });
        }
        let g = num_integer::gcd(k, p);
        Ok(RationalAngle { k: k / g, p: p / g })
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// The complex-conjugate angle (p-k)/p.
    pub fn conjugate(&self) -> Self {
        RationalAngle {
            k: self.p - self.k,
            p: self.p,
        }
    }
}

impl fmt::Display for RationalAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.k, self.p)
    }
}

impl FromStr for RationalAngle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (num, den) = s
            .split_once('/')
            .ok_or_else(|| Error::MalformedInput(format!("angle `{s}` is not of the form k/p")))?;
        let k: u64 = num
            .trim()
            .parse()
            .map_err(|_| Error::MalformedInput(format!("angle numerator `{num}` is not an integer")))?;
        let p: u64 = den
            .trim()
            .parse()
            .map_err(|_| Error::MalformedInput(format!("angle denominator `{den}` is not an integer")))?;
        RationalAngle::new(k, p)
    }
}

impl serde::Serialize for RationalAngle {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Outcome of a signature computation at a nondegenerate angle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignatureResult {
    /// Exact signature; always even, bounded by twice the genus.
    pub value: i64,
    pub angle: RationalAngle,
    /// Always true on success; degenerate angles error out instead.
    pub nondegenerate: bool,
}

/// True iff the Alexander polynomial vanishes at e^(2*pi*i*k/p), i.e. the
/// p-th cyclotomic polynomial divides it. The hermitian form is singular
/// exactly there, since det H = (1-omega)^2g * Delta(conj(omega)) up to a
/// unit.
pub fn is_singular_at(s: &SeifertMatrix, a: &RationalAngle) -> bool {
    cyclotomic(a.p()).divides(&s.alexander_polynomial())
}

/// Exact Tristram-Levine signature at the given angle.
///
/// Degeneracy is detected by the diagonalization itself: a zero pivot class
/// appears exactly when det H = 0, which happens exactly when the p-th
/// cyclotomic polynomial divides the Alexander polynomial. This avoids an
/// upfront symbolic determinant, which would dwarf the signature work on
/// large connected sums.
pub fn tristram_levine(s: &SeifertMatrix, a: &RationalAngle) -> Result<SignatureResult> {
    let sym = s.symmetrize();
    let value = if a.p == 2 {
        // omega = -1: H = 2(V + V^t), the classical knot signature. The
        // symmetrized form has odd determinant, so it is never singular.
        let m: Vec<Vec<BigRational>> = (0..sym.rows())
            .map(|i| {
                (0..sym.cols())
                    .map(|j| BigRational::from(sym.get(i, j).clone()))
                    .collect()
            })
            .collect();
        let (pos, neg, zero) = symmetric_signature(&RationalContext, m);
        assert_eq!(zero, 0, "V + V^t has odd determinant, cannot be singular");
        pos as i64 - neg as i64
    } else {
        // Conjugation symmetry: fold to 0 < k/p < 1/2 so sin > 0.
        let k_eff = a.k.min(a.p - a.k);
        let field = RealCyclotomicField::new(k_eff, a.p);
        let anti = s.matrix().sub(&s.matrix().transpose());
        let (pos, neg, zero) = if let Some(c) = field.rational_generator() {
            let ctx = RationalContext;
            let one_plus = BigRational::one() + &c;
            let one_minus = BigRational::one() - &c;
            let m = realified_form(&ctx, &sym, &anti, &one_plus, &one_minus);
            symmetric_signature(&ctx, m)
        } else {
            let c = field.generator();
            let one = field.one();
            let one_plus = field.add(&one, &c);
            let one_minus = field.sub(&one, &c);
            let m = realified_form(&field, &sym, &anti, &one_plus, &one_minus);
            symmetric_signature(&field, m)
        };
        if zero > 0 {
            debug_assert!(is_singular_at(s, a));
            return Err(Error::DegenerateForm { k: a.k, p: a.p });
        }
        let doubled = pos as i64 - neg as i64;
        assert_eq!(doubled % 2, 0, "realified signature must be even");
        doubled / 2
    };
    debug_assert_eq!(value.rem_euclid(2), 0);
    debug_assert!(value.unsigned_abs() <= 2 * s.genus() as u64);
    Ok(SignatureResult {
        value,
        angle: *a,
        nondegenerate: true,
    })
}

/// Satellite correction term 2 * sum over companions of sigma_{k_i/p}(J_i),
/// where a companion with character value 0 contributes nothing.
pub fn signature_correction(companions: &[(SeifertMatrix, u64)], p: u64) -> Result<i64> {
    if p < 2 {
        return Err(Error::InvalidArgument(format!(
            "character order {p} must be at least 2"
        )));
    }
    let mut total = 0i64;
    for (j, k) in companions {
        if *k >= p {
            return Err(Error::InvalidArgument(format!(
                "character value {k} outside 0..{p}"
            )));
        }
        if *k == 0 {
            continue;
        }
        let angle = RationalAngle::new(*k, p)?;
        total += tristram_levine(j, &angle)?.value;
    }
    Ok(2 * total)
}

/// Ordered-field operations needed by the congruence diagonalization.
/// Implementors guarantee `sign` is exact for the real number an element
/// denotes and `is_zero` recognizes zero syntactically.
pub(crate) trait SignContext {
    type Elem: Clone;
    fn from_int(&self, n: &BigInt) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sign(&self, a: &Self::Elem) -> Ordering;
}

pub(crate) struct RationalContext;

impl SignContext for RationalContext {
    type Elem = BigRational;

    fn from_int(&self, n: &BigInt) -> BigRational {
        BigRational::from(n.clone())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn div(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a / b
    }
    fn sign(&self, a: &BigRational) -> Ordering {
        if a.is_zero() {
            Ordering::Equal
        } else if a.is_positive() {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
}

impl SignContext for RealCyclotomicField {
    type Elem = realfield::Elem;

    fn from_int(&self, n: &BigInt) -> Self::Elem {
        self.from_rational(BigRational::from(n.clone()))
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        RealCyclotomicField::is_zero(self, a)
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        RealCyclotomicField::add(self, a, b)
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        RealCyclotomicField::sub(self, a, b)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        RealCyclotomicField::neg(self, a)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        RealCyclotomicField::mul(self, a, b)
    }
    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        RealCyclotomicField::div(self, a, b)
    }
    fn sign(&self, a: &Self::Elem) -> Ordering {
        RealCyclotomicField::sign(self, a)
    }
}

/// Assembles T = [[(1+c)S, (1+c)A], [-(1+c)A, (1-c)S]], which is congruent
/// to the realification of the hermitian form and carries twice its
/// signature.
fn realified_form<C: SignContext>(
    ctx: &C,
    sym: &IntMatrix,
    anti: &IntMatrix,
    one_plus_c: &C::Elem,
    one_minus_c: &C::Elem,
) -> Vec<Vec<C::Elem>> {
    let n = sym.rows();
    let zero = ctx.from_int(&BigInt::zero());
    let mut m = vec![vec![zero; 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            let s = sym.get(i, j);
            if !s.is_zero() {
                let se = ctx.from_int(s);
                m[i][j] = ctx.mul(one_plus_c, &se);
                m[n + i][n + j] = ctx.mul(one_minus_c, &se);
            }
            let a = anti.get(i, j);
            if !a.is_zero() {
                let top = ctx.mul(one_plus_c, &ctx.from_int(a));
                m[n + i][j] = ctx.neg(&top);
                m[i][n + j] = top;
            }
        }
    }
    m
}

/// Inertia (positive, negative, zero) of a symmetric matrix over an ordered
/// field, by congruence diagonalization. Symmetric row+column operations
/// preserve inertia (Sylvester), so counting certified pivot signs is exact.
pub(crate) fn symmetric_signature<C: SignContext>(
    ctx: &C,
    mut m: Vec<Vec<C::Elem>>,
) -> (usize, usize, usize) {
    let n = m.len();
    let (mut pos, mut neg, mut zero) = (0usize, 0usize, 0usize);
    for k in 0..n {
        if ctx.is_zero(&m[k][k]) {
            if let Some(j) = (k + 1..n).find(|&j| !ctx.is_zero(&m[j][j])) {
                m.swap(k, j);
                for row in m.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !ctx.is_zero(&m[k][j])) {
                // All remaining diagonal entries vanish; merging row and
                // column j into k puts 2*m[k][j] on the diagonal.
                for idx in 0..n {
                    m[k][idx] = ctx.add(&m[k][idx], &m[j][idx]);
                }
                for row in m.iter_mut() {
                    row[k] = ctx.add(&row[k], &row[j]);
                }
            } else {
                // Live row and column k vanish entirely.
                zero += 1;
                continue;
            }
        }
        let pivot = m[k][k].clone();
        match ctx.sign(&pivot) {
            Ordering::Greater => pos += 1,
            Ordering::Less => neg += 1,
            Ordering::Equal => unreachable!("pivot was checked nonzero"),
        }
        // Row operations alone leave the trailing block symmetric, because
        // the subtracted terms f_i * m[k][j] = m[i][k] m[j][k] / pivot are
        // symmetric in i and j; the matching column operations would only
        // rewrite row k, which is never read again.
        for i in k + 1..n {
            if ctx.is_zero(&m[i][k]) {
                continue;
            }
            let f = ctx.div(&m[i][k], &pivot);
            for j in k..n {
                if ctx.is_zero(&m[k][j]) {
                    continue;
                }
                let delta = ctx.mul(&f, &m[k][j]);
                m[i][j] = ctx.sub(&m[i][j], &delta);
            }
        }
    }
    debug_assert_eq!(pos + neg + zero, n);
    (pos, neg, zero)
}
