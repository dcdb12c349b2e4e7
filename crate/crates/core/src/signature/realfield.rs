//! Exact arithmetic in Q(cos(2*pi*k/n)), the real subfield where the
//! realified hermitian Seifert forms live.
//!
//! Elements are represented by their coordinates in the power basis
//! 1, c, ..., c^(d-1) where d is the degree of the minimal polynomial of
//! c = cos(2*pi*k/n). Because the representation has degree below d, an
//! element is zero exactly when all coordinates are zero, and a nonzero
//! element evaluates to a nonzero real at c; its sign is decided by
//! interval refinement, which therefore terminates.

use std::cell::RefCell;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::interval::{cos_two_pi_interval, RatInterval};
use crate::poly::cyclotomic;

/// Hard stop for interval refinement. Termination is guaranteed
/// mathematically well before this; hitting the cap means a bug, and
/// panicking beats returning a wrong sign.
const REFINEMENT_CAP: usize = 64;

/// Coordinates in the power basis of c; length equals the field degree.
pub(crate) type Elem = Vec<BigRational>;

pub(crate) struct RealCyclotomicField {
    n: u64,
    k: u64,
    /// Monic minimal polynomial of cos(2*pi*k/n), low degree first.
    minpoly: Vec<BigRational>,
    degree: usize,
    /// Memoized enclosures of cos(2*pi*k/n), one per refinement level.
    /// Sign queries share them; recomputing the pi bracket per query
    /// dominates the cost otherwise.
    enclosures: RefCell<Vec<RatInterval>>,
}

impl RealCyclotomicField {
    /// Field containing cos(2*pi*k/n); requires gcd(k, n) = 1, 0 <= k < n.
    pub fn new(k: u64, n: u64) -> Self {
        assert!(n >= 1 && k < n, "angle {k}/{n} out of range");
        assert!(
            num_integer::gcd(k, n) == 1 || (n == 1 && k == 0),
            "angle {k}/{n} not reduced"
        );
        let minpoly = min_poly_of_cos(n);
        let degree = minpoly.len() - 1;
        RealCyclotomicField {
            n,
            k,
            minpoly,
            degree,
            enclosures: RefCell::new(Vec::new()),
        }
    }

    fn cos_enclosure(&self, level: usize) -> RatInterval {
        let mut cache = self.enclosures.borrow_mut();
        while cache.len() <= level {
            let next = cos_two_pi_interval(self.k, self.n, cache.len());
            cache.push(next);
        }
        cache[level].clone()
    }

    #[cfg(test)]
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// When the field is Q itself, the exact rational value of c.
    pub fn rational_generator(&self) -> Option<BigRational> {
        if self.degree == 1 {
            Some(-self.minpoly[0].clone())
        } else {
            None
        }
    }

    pub fn zero(&self) -> Elem {
        vec![BigRational::zero(); self.degree]
    }

    pub fn one(&self) -> Elem {
        self.from_rational(BigRational::one())
    }

    pub fn from_rational(&self, q: BigRational) -> Elem {
        let mut e = self.zero();
        e[0] = q;
        e
    }

    /// The generator c itself.
    pub fn generator(&self) -> Elem {
        if self.degree == 1 {
            self.from_rational(self.rational_generator().expect("degree 1"))
        } else {
            let mut e = self.zero();
            e[1] = BigRational::one();
            e
        }
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        a.iter().all(Zero::is_zero)
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        a.iter().map(|x| -x).collect()
    }

    #[cfg(test)]
    pub fn scale(&self, a: &Elem, q: &BigRational) -> Elem {
        a.iter().map(|x| x * q).collect()
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        let d = self.degree;
        let mut conv = vec![BigRational::zero(); 2 * d - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                conv[i + j] += x * y;
            }
        }
        self.reduce(conv)
    }

    /// Remainder modulo the monic minimal polynomial.
    fn reduce(&self, mut coeffs: Vec<BigRational>) -> Elem {
        let d = self.degree;
        for i in (d..coeffs.len()).rev() {
            let lead = std::mem::replace(&mut coeffs[i], BigRational::zero());
            if lead.is_zero() {
                continue;
            }
            for j in 0..d {
                let delta = &lead * &self.minpoly[j];
                coeffs[i - d + j] -= delta;
            }
        }
        coeffs.truncate(d);
        coeffs.resize(d, BigRational::zero());
        coeffs
    }

    pub fn inverse(&self, a: &Elem) -> Elem {
        assert!(!self.is_zero(a), "inverting zero field element");
        if self.degree == 1 {
            return vec![a[0].recip()];
        }
        // Extended Euclid in Q[x]: s*a + t*minpoly = gcd = constant.
        let mut r0 = self.minpoly.clone();
        let mut r1 = a.to_vec();
        poly_trim(&mut r1);
        let mut s0: Vec<BigRational> = vec![];
        let mut s1 = vec![BigRational::one()];
        while poly_degree(&r1) > 0 {
            let (q, r) = poly_divmod(&r0, &r1);
            let s = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        assert!(
            !r1.is_empty(),
            "minimal polynomial is irreducible, gcd must be a nonzero constant"
        );
        let g = r1[0].clone();
        let mut inv: Vec<BigRational> = s1.iter().map(|c| c / &g).collect();
        inv.resize(self.degree.max(inv.len()), BigRational::zero());
        self.reduce(inv)
    }

    pub fn div(&self, a: &Elem, b: &Elem) -> Elem {
        if self.degree == 1 {
            return vec![&a[0] / &b[0]];
        }
        self.mul(a, &self.inverse(b))
    }

    /// Certified sign of the real number the element represents.
    pub fn sign(&self, a: &Elem) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        if self.is_zero(a) {
            return Ordering::Equal;
        }
        if self.degree == 1 {
            return a[0].cmp(&BigRational::zero());
        }
        for level in 0..REFINEMENT_CAP {
            let c = self.cos_enclosure(level);
            let val = horner_interval(a, &c);
            if let Some(sign) = val.sign() {
                return sign;
            }
        }
        panic!(
            "sign refinement exceeded {} levels in Q(cos(2 pi {}/{})); this indicates a bug",
            REFINEMENT_CAP, self.k, self.n
        );
    }
}

fn horner_interval(coeffs: &[BigRational], x: &RatInterval) -> RatInterval {
    let mut acc = RatInterval::point(BigRational::zero());
    for c in coeffs.iter().rev() {
        acc = acc.mul(x).shift(c);
    }
    acc
}

/// Minimal polynomial of cos(2*pi/n) over Q, monic, low degree first.
///
/// For n >= 3 the cyclotomic polynomial is palindromic of even degree m;
/// writing it as x^(m/2) * g(x + 1/x) with the Chebyshev-style basis
/// W_j(y) = x^j + x^(-j) gives the minimal polynomial g of 2cos(2*pi/n),
/// and substituting y = 2x rescales to cos itself. Conjugate angles k/n
/// share this polynomial, which is why only n appears.
fn min_poly_of_cos(n: u64) -> Vec<BigRational> {
    let one = BigRational::one();
    match n {
        1 => return vec![-one.clone(), one], // x - 1
        2 => return vec![one.clone(), one],  // x + 1
        _ => {}
    }
    let phi = cyclotomic(n);
    let m = phi.degree().expect("cyclotomic polynomials are nonzero");
    assert!(m % 2 == 0, "phi(n) is even for n >= 3");
    let half = m / 2;

    // W_0 = 2, W_1 = y, W_{j+1} = y W_j - W_{j-1}, as integer polynomials
    // in y (low degree first).
    let mut w_prev: Vec<BigInt> = vec![BigInt::from(2)];
    let mut w_cur: Vec<BigInt> = vec![BigInt::zero(), BigInt::one()];
    let mut g: Vec<BigInt> = vec![BigInt::zero(); half + 1];
    g[0] = phi.coeff(half);
    for j in 1..=half {
        // g += phi[half + j] * W_j
        let a = phi.coeff(half + j);
        if !a.is_zero() {
            for (i, c) in w_cur.iter().enumerate() {
                g[i] += &a * c;
            }
        }
        if j < half {
            // W_{j+1} = y * W_j - W_{j-1}
            let mut next = vec![BigInt::zero(); w_cur.len() + 1];
            for (i, c) in w_cur.iter().enumerate() {
                next[i + 1] = c.clone();
            }
            for (i, c) in w_prev.iter().enumerate() {
                next[i] -= c;
            }
            w_prev = std::mem::replace(&mut w_cur, next);
        }
    }
    debug_assert!(g[half].is_one(), "folded polynomial must be monic");

    // y = 2x: coefficient of x^i picks up 2^i; renormalize monic.
    let scale = BigInt::from(2).pow(half as u32);
    g.iter()
        .enumerate()
        .map(|(i, c)| {
            BigRational::new(c * BigInt::from(2).pow(i as u32), scale.clone())
        })
        .collect()
}

// Small helpers for dense rational polynomials, low degree first.

fn poly_trim(p: &mut Vec<BigRational>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn poly_degree(p: &[BigRational]) -> isize {
    p.len() as isize - 1
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] -= x;
    }
    poly_trim(&mut out);
    out
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    poly_trim(&mut out);
    out
}

fn poly_divmod(num: &[BigRational], den: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    assert!(!den.is_empty(), "division by the zero polynomial");
    let mut rem = num.to_vec();
    poly_trim(&mut rem);
    let dd = den.len() - 1;
    let lead = &den[dd];
    if rem.len() <= dd {
        return (vec![], rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - dd];
    while rem.len() > dd {
        let shift = rem.len() - 1 - dd;
        let q = rem.last().expect("trimmed nonempty") / lead;
        for (i, c) in den.iter().enumerate() {
            let delta = &q * c;
            rem[shift + i] -= delta;
        }
        quot[shift] = q;
        poly_trim(&mut rem);
        if rem.len() > shift + dd {
            // Leading term must cancel; guard against stalls.
            unreachable!("leading term did not cancel in polynomial division");
        }
    }
    (quot, rem)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::cmp::Ordering;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn rats(xs: &[(i64, i64)]) -> Vec<BigRational> {
        xs.iter().map(|&(n, d)| rat(n, d)).collect()
    }

    #[test]
    fn minimal_polynomials_of_cos() {
        // Degree-1 fields: rational cosines.
        assert_eq!(min_poly_of_cos(1), rats(&[(-1, 1), (1, 1)]));
        assert_eq!(min_poly_of_cos(2), rats(&[(1, 1), (1, 1)]));
        assert_eq!(min_poly_of_cos(3), rats(&[(1, 2), (1, 1)]));
        assert_eq!(min_poly_of_cos(4), rats(&[(0, 1), (1, 1)]));
        assert_eq!(min_poly_of_cos(6), rats(&[(-1, 2), (1, 1)]));
        // cos(2 pi / 5): x^2 + x/2 - 1/4.
        assert_eq!(min_poly_of_cos(5), rats(&[(-1, 4), (1, 2), (1, 1)]));
        // cos(2 pi / 7): x^3 + x^2/2 - x/2 - 1/8.
        assert_eq!(
            min_poly_of_cos(7),
            rats(&[(-1, 8), (-1, 2), (1, 2), (1, 1)])
        );
        // cos(2 pi / 12) = sqrt(3)/2: x^2 - 3/4.
        assert_eq!(min_poly_of_cos(12), rats(&[(-3, 4), (0, 1), (1, 1)]));
    }

    #[test]
    fn rational_fields_collapse() {
        let f = RealCyclotomicField::new(1, 3);
        assert_eq!(f.degree(), 1);
        assert_eq!(f.rational_generator(), Some(rat(-1, 2)));
        let f = RealCyclotomicField::new(1, 6);
        assert_eq!(f.rational_generator(), Some(rat(1, 2)));
        let f = RealCyclotomicField::new(1, 4);
        assert_eq!(f.rational_generator(), Some(rat(0, 1)));
    }

    #[test]
    fn generator_satisfies_its_minimal_polynomial() {
        for n in [5u64, 7, 8, 9, 12] {
            let f = RealCyclotomicField::new(1, n);
            let c = f.generator();
            // Evaluate minpoly at c with field arithmetic.
            let mut acc = f.zero();
            for coeff in f.minpoly.clone().into_iter().rev() {
                acc = f.mul(&acc, &c);
                acc = f.add(&acc, &f.from_rational(coeff));
            }
            assert!(f.is_zero(&acc), "minpoly(c) != 0 for n = {n}");
        }
    }

    #[test]
    fn field_axioms_spot_checks() {
        let f = RealCyclotomicField::new(1, 5);
        let c = f.generator();
        let a = f.add(&f.scale(&c, &rat(3, 2)), &f.one()); // 1 + 3c/2
        let b = f.sub(&c, &f.from_rational(rat(2, 1))); // c - 2
        let ab = f.mul(&a, &b);
        assert_eq!(f.div(&ab, &b), a, "(a*b)/b != a");
        assert_eq!(f.mul(&b, &f.inverse(&b)), f.one());
        let distr = f.sub(&f.mul(&a, &f.add(&b, &c)), &f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
        assert!(f.is_zero(&distr));
    }

    #[test]
    fn signs_of_cosines() {
        // cos(2 pi / 5) > 0.
        let f = RealCyclotomicField::new(1, 5);
        assert_eq!(f.sign(&f.generator()), Ordering::Greater);
        // cos(4 pi / 5) < 0.
        let f = RealCyclotomicField::new(2, 5);
        assert_eq!(f.sign(&f.generator()), Ordering::Less);
        // cos(2 pi / 5) - 1/4 > 0 (0.309... > 0.25), needs refinement.
        let f = RealCyclotomicField::new(1, 5);
        let e = f.sub(&f.generator(), &f.from_rational(rat(1, 4)));
        assert_eq!(f.sign(&e), Ordering::Greater);
        // cos(2 pi / 5) - 1/3 < 0.
        let e = f.sub(&f.generator(), &f.from_rational(rat(1, 3)));
        assert_eq!(f.sign(&e), Ordering::Less);
        // Exact zero after nontrivial arithmetic: c^2 + c/2 - 1/4 = 0.
        let sq = f.mul(&f.generator(), &f.generator());
        let e = f.add(&sq, &f.sub(&f.scale(&f.generator(), &rat(1, 2)), &f.from_rational(rat(1, 4))));
        assert_eq!(f.sign(&e), Ordering::Equal);
    }

    #[test]
    fn sign_in_degree_one_field_is_rational() {
        let f = RealCyclotomicField::new(1, 3);
        let e = f.from_rational(rat(-7, 3));
        assert_eq!(f.sign(&e), Ordering::Less);
        assert_eq!(f.sign(&f.zero()), Ordering::Equal);
    }
}
