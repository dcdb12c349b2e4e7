//! Polynomials over Z with exact division, plus cyclotomic polynomials.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Polynomial with integer coefficients, stored low degree first with no
/// trailing zeros; the zero polynomial has an empty coefficient vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64_coeffs(coeffs: &[i64]) -> Self {
        IntPolynomial::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn constant(c: BigInt) -> Self {
        IntPolynomial::from_coeffs(vec![c])
    }

    /// The monomial t.
    pub fn t() -> Self {
        IntPolynomial::from_coeffs(vec![BigInt::zero(), BigInt::one()])
    }

    pub fn monomial(c: BigInt, degree: usize) -> Self {
        if c.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        coeffs[degree] = c;
        IntPolynomial { coeffs }
    }

    /// Coefficients from the constant term up.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from(c.clone());
        }
        acc
    }

    /// Exact quotient in Z[t], or None when `divisor` does not divide
    /// `self` there. Schoolbook division finds the quotient whenever one
    /// exists because leading coefficients must then divide stepwise.
    pub fn div_exact(&self, divisor: &IntPolynomial) -> Option<IntPolynomial> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(IntPolynomial::zero());
        }
        let d_deg = divisor.degree().expect("nonzero divisor");
        let d_lead = divisor.leading_coeff().expect("nonzero divisor");
        let mut rem = self.clone();
        let mut quot = vec![
            BigInt::zero();
            self.degree().expect("nonzero dividend").checked_sub(d_deg)? + 1
        ];
        while !rem.is_zero() {
            let r_deg = rem.degree().expect("nonzero remainder");
            if r_deg < d_deg {
                return None;
            }
            let r_lead = rem.leading_coeff().expect("nonzero remainder");
            let (q, r) = num_integer::Integer::div_rem(r_lead, d_lead);
            if !r.is_zero() {
                return None;
            }
            let shift = r_deg - d_deg;
            quot[shift] = q.clone();
            let step = IntPolynomial::monomial(q, shift) * divisor.clone();
            rem = rem - step;
            if rem.degree().is_some_and(|d| d >= r_deg) {
                return None;
            }
        }
        Some(IntPolynomial::from_coeffs(quot))
    }

    /// True when `self` divides `other` in Z[t].
    pub fn divides(&self, other: &IntPolynomial) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_exact(self).is_some()
    }

    /// The reversal t^deg * p(1/t); a polynomial is palindromic when it
    /// equals its own reversal.
    pub fn reversal(&self) -> IntPolynomial {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        IntPolynomial::from_coeffs(coeffs)
    }
}

impl Zero for IntPolynomial {
    fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for IntPolynomial {
    fn one() -> Self {
        IntPolynomial::constant(BigInt::one())
    }
}

impl Add for IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: IntPolynomial) -> IntPolynomial {
        let (mut long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self.coeffs, rhs.coeffs)
        } else {
            (rhs.coeffs, self.coeffs)
        };
        for (i, c) in short.into_iter().enumerate() {
            long[i] += c;
        }
        IntPolynomial::from_coeffs(long)
    }
}

impl Sub for IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: IntPolynomial) -> IntPolynomial {
        self + (-rhs)
    }
}

impl Neg for IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        IntPolynomial {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPolynomial::from_coeffs(coeffs)
    }
}

/// Exact division; used by the fraction-free determinant, whose divisions
/// always succeed. Panics on a non-exact quotient.
impl Div for IntPolynomial {
    type Output = IntPolynomial;

    fn div(self, rhs: IntPolynomial) -> IntPolynomial {
        self.div_exact(&rhs)
            .expect("polynomial division was expected to be exact")
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    if i == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

/// The n-th cyclotomic polynomial, computed by exact division:
/// t^n - 1 = prod over d | n of cyclotomic(d).
pub fn cyclotomic(n: u64) -> IntPolynomial {
    assert!(n >= 1, "cyclotomic polynomial index must be positive");
    let mut num = IntPolynomial::monomial(BigInt::one(), n as usize)
        - IntPolynomial::one();
    for d in 1..n {
        if n % d == 0 {
            num = num
                .div_exact(&cyclotomic(d))
                .expect("cyclotomic polynomials divide t^n - 1");
        }
    }
    num
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::bareiss_determinant;

    fn p(coeffs: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64_coeffs(coeffs)
    }

    #[test]
    fn arithmetic_and_degrees() {
        let a = p(&[1, 2]); // 2t + 1
        let b = p(&[-1, 1]); // t - 1
        assert_eq!(a.clone() * b.clone(), p(&[-1, -1, 2]));
        assert_eq!(a.clone() + b.clone(), p(&[0, 3]));
        assert_eq!(a.clone() - a.clone(), IntPolynomial::zero());
        assert_eq!((a.clone() * b).degree(), Some(2));
        assert_eq!(IntPolynomial::zero().degree(), None);
        assert_eq!(a.eval(&BigInt::from(3)), BigInt::from(7));
    }

    #[test]
    fn exact_division() {
        let product = p(&[-1, 0, 1]); // t^2 - 1
        assert_eq!(product.div_exact(&p(&[1, 1])), Some(p(&[-1, 1])));
        assert_eq!(p(&[1, 0, 1]).div_exact(&p(&[1, 1])), None);
        assert_eq!(p(&[0, 0, 2]).div_exact(&p(&[0, 1])), Some(p(&[0, 2])));
        // Divisible over Q but not over Z.
        assert_eq!(p(&[0, 1]).div_exact(&p(&[0, 2])), None);
        assert!(p(&[1, 1]).divides(&product));
        assert!(!p(&[1, 1]).divides(&p(&[1, 0, 1])));
    }

    #[test]
    fn cyclotomic_small_indices() {
        assert_eq!(cyclotomic(1), p(&[-1, 1]));
        assert_eq!(cyclotomic(2), p(&[1, 1]));
        assert_eq!(cyclotomic(3), p(&[1, 1, 1]));
        assert_eq!(cyclotomic(4), p(&[1, 0, 1]));
        assert_eq!(cyclotomic(5), p(&[1, 1, 1, 1, 1]));
        assert_eq!(cyclotomic(6), p(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), p(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn cyclotomic_products_reassemble() {
        for n in [12u64, 30] {
            let mut prod = IntPolynomial::one();
            for d in 1..=n {
                if n % d == 0 {
                    prod = prod * cyclotomic(d);
                }
            }
            let expect =
                IntPolynomial::monomial(BigInt::one(), n as usize) - IntPolynomial::one();
            assert_eq!(prod, expect, "n = {n}");
        }
    }

    #[test]
    fn cyclotomic_105_has_coefficient_minus_two() {
        let c = cyclotomic(105);
        assert_eq!(c.degree(), Some(48));
        assert_eq!(c.coeff(7), BigInt::from(-2));
        assert_eq!(c.coeff(0), BigInt::one());
    }

    #[test]
    fn palindromes() {
        assert_eq!(p(&[4, -20, 33, -20, 4]).reversal(), p(&[4, -20, 33, -20, 4]));
        assert_eq!(p(&[1, 2, 3]).reversal(), p(&[3, 2, 1]));
    }

    #[test]
    fn display_formatting() {
        assert_eq!(p(&[4, -20, 33, -20, 4]).to_string(), "4t^4 - 20t^3 + 33t^2 - 20t + 4");
        assert_eq!(p(&[-1, 1]).to_string(), "t - 1");
        assert_eq!(p(&[0, -1]).to_string(), "-t");
        assert_eq!(p(&[5]).to_string(), "5");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
        assert_eq!(p(&[0, 0, 1]).to_string(), "t^2");
    }

    #[test]
    fn polynomial_determinant_via_bareiss() {
        let t = IntPolynomial::t();
        let one = IntPolynomial::one();
        let rows = vec![
            vec![t.clone(), one.clone()],
            vec![one.clone(), t.clone()],
        ];
        assert_eq!(bareiss_determinant(rows), p(&[-1, 0, 1]));

        // 3x3 with a forced pivot swap.
        let rows = vec![
            vec![IntPolynomial::zero(), t.clone(), one.clone()],
            vec![t.clone(), IntPolynomial::zero(), one.clone()],
            vec![one.clone(), one.clone(), IntPolynomial::zero()],
        ];
        // det = t + t - 0 - (0 + 0 + t^2)? expand directly instead:
        // [0 t 1; t 0 1; 1 1 0] -> 0*(0-1) - t*(0-1) + 1*(t-0) = 2t.
        assert_eq!(bareiss_determinant(rows), p(&[0, 2]));
    }
}
