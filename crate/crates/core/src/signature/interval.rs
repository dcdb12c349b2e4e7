//! Rational interval arithmetic with certified enclosures of cos(2*pi*k/n).
//!
//! Signs of real cyclotomic field elements are decided by evaluating their
//! polynomial representative on a shrinking rational enclosure of the
//! generator. Everything here is plain BigRational arithmetic: the pi
//! enclosure comes from Machin's formula with alternating-series brackets,
//! and cosine enclosures from Taylor partial sums with an explicit tail
//! bound. No floating point anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq)]
pub(crate) struct RatInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RatInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        debug_assert!(lo <= hi, "inverted interval");
        RatInterval { lo, hi }
    }

    pub fn point(v: BigRational) -> Self {
        RatInterval {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn add(&self, o: &RatInterval) -> RatInterval {
        RatInterval::new(&self.lo + &o.lo, &self.hi + &o.hi)
    }

    pub fn mul(&self, o: &RatInterval) -> RatInterval {
        let products = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = products.iter().min().expect("nonempty").clone();
        let hi = products.iter().max().expect("nonempty").clone();
        RatInterval::new(lo, hi)
    }

    pub fn scale(&self, c: &BigRational) -> RatInterval {
        if c.is_negative() {
            RatInterval::new(&self.hi * c, &self.lo * c)
        } else {
            RatInterval::new(&self.lo * c, &self.hi * c)
        }
    }

    pub fn shift(&self, c: &BigRational) -> RatInterval {
        RatInterval::new(&self.lo + c, &self.hi + c)
    }

    /// Some(ordering vs zero) when the interval excludes zero or is the
    /// exact zero point; None when zero lies strictly inside.
    pub fn sign(&self) -> Option<std::cmp::Ordering> {
        use std::cmp::Ordering;
        if self.lo.is_positive() {
            Some(Ordering::Greater)
        } else if self.hi.is_negative() {
            Some(Ordering::Less)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    #[cfg(test)]
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Bracket of arctan(x) for 0 < x < 1 from the alternating Leibniz series:
/// consecutive partial sums straddle the limit.
fn atan_interval(x: &BigRational, terms: usize) -> RatInterval {
    debug_assert!(x.is_positive() && *x < BigRational::one());
    let x2 = x * x;
    let mut power = x.clone();
    let mut sum = BigRational::zero();
    let mut prev = BigRational::zero();
    for i in 0..terms.max(2) {
        prev = sum.clone();
        let term = &power / BigRational::from(BigInt::from(2 * i as i64 + 1));
        if i % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power *= &x2;
    }
    if sum <= prev {
        RatInterval::new(sum, prev)
    } else {
        RatInterval::new(prev, sum)
    }
}

/// Machin: pi = 16 atan(1/5) - 4 atan(1/239).
pub(crate) fn pi_interval(terms: usize) -> RatInterval {
    let a = atan_interval(&rat(1, 5), terms).scale(&rat(16, 1));
    let b = atan_interval(&rat(1, 239), terms).scale(&rat(-4, 1));
    a.add(&b)
}

/// Taylor enclosure of cos at a nonnegative rational point x <= 3.3.
///
/// The remainder after N terms is a sub-geometric tail; with N >= 4 the
/// ratio x^2 / ((2N+1)(2N+2)) stays below 1 and bounds it.
fn cos_point_interval(x: &BigRational, terms: usize) -> RatInterval {
    let n = terms.max(4);
    let x2 = x * x;
    let mut sum = BigRational::zero();
    let mut term = BigRational::one(); // x^{2i} / (2i)!
    for i in 0..n {
        if i % 2 == 0 {
            sum += &term;
        } else {
            sum -= &term;
        }
        let denom = BigRational::from(BigInt::from((2 * i as i64 + 1) * (2 * i as i64 + 2)));
        term = term * &x2 / denom;
    }
    // term is now x^{2N}/(2N)!; tail <= term / (1 - ratio).
    let ratio = &x2 / BigRational::from(BigInt::from((2 * n as i64 + 1) * (2 * n as i64 + 2)));
    assert!(
        ratio < BigRational::one(),
        "cosine argument out of the supported range"
    );
    let tail = &term / (BigRational::one() - ratio);
    RatInterval::new(&sum - &tail, &sum + &tail)
}

/// Certified enclosure of cos(2*pi*k/n), tightening as `level` grows.
///
/// The angle is folded into [0, pi] where cosine is monotone decreasing, so
/// the endpoint evaluations bracket the true value. Results are memoized per
/// thread; signature computations query the same few angles over and over.
pub(crate) fn cos_two_pi_interval(k: u64, n: u64, level: usize) -> RatInterval {
    use std::cell::RefCell;
    use std::collections::BTreeMap;
    thread_local! {
        static MEMO: RefCell<BTreeMap<(u64, u64, usize), RatInterval>> =
            const { RefCell::new(BTreeMap::new()) };
    }
    MEMO.with(|memo| {
        if let Some(hit) = memo.borrow().get(&(k, n, level)) {
            return hit.clone();
        }
        let fresh = cos_two_pi_uncached(k, n, level);
        memo.borrow_mut()
            .insert((k, n, level), fresh.clone());
        fresh
    })
}

fn cos_two_pi_uncached(k: u64, n: u64, level: usize) -> RatInterval {
    assert!(n >= 1);
    let k = k % n;
    // cos(2 pi q) = cos(2 pi (1 - q)): fold into q <= 1/2.
    let k = k.min(n - k);
    if k == 0 {
        return RatInterval::point(BigRational::one());
    }
    if 2 * k == n {
        return RatInterval::point(-BigRational::one());
    }
    let pi_terms = 8 + 4 * level;
    let cos_terms = 8 + 3 * level;
    let q = rat(2 * k as i64, n as i64);
    let pi = pi_interval(pi_terms);
    let theta = pi.scale(&q);
    debug_assert!(!theta.lo.is_negative());
    let at_lo = cos_point_interval(&theta.lo, cos_terms);
    if theta.hi > pi.lo {
        // The enclosure may cross pi (true angle is still below it, since
        // q < 1). Monotonicity breaks there; fall back to the global lower
        // bound. Higher levels shrink theta below pi and take the exact
        // branch.
        return RatInterval::new(-BigRational::one(), at_lo.hi);
    }
    let at_hi = cos_point_interval(&theta.hi, cos_terms);
    // Decreasing on [0, pi]: cos(theta.hi) <= cos(theta) <= cos(theta.lo).
    RatInterval::new(at_hi.lo, at_lo.hi)
}
