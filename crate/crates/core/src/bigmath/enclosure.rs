//! Certified enclosures `[lo, hi]` with outward rounding.
//!
//! Every operation returns an interval guaranteed to contain the exact
//! result provided the inputs contain theirs. The natural logarithm is
//! computed by repeated square-root argument reduction followed by the
//! atanh series, with the truncation tail added to the enclosure.

use super::dyadic::{Dyadic, Round};
use crate::error::{Error, Result};
use num_bigint::BigInt;

use once_cell::sync::Lazy;
use std::cmp::Ordering;
use std::sync::Mutex;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enclosure {
    lo: Dyadic,
    hi: Dyadic,
}

impl Enclosure {
    pub fn new(lo: Dyadic, hi: Dyadic) -> Self {
        debug_assert!(lo.cmp_dyadic(&hi) != Ordering::Greater, "inverted enclosure");
        Enclosure { lo, hi }
    }

    pub fn point(d: Dyadic) -> Self {
        Enclosure { lo: d.clone(), hi: d }
    }

    pub fn from_bigint(n: &BigInt) -> Self {
        Enclosure::point(Dyadic::from_bigint(n))
    }

    pub fn zero() -> Self {
        Enclosure::point(Dyadic::zero())
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Dyadic {
        self.hi.sub(&self.lo)
    }

    /// log2 of the width, as an upper bound; None for points.
    pub fn width_log2(&self) -> Option<i64> {
        self.width().log2_upper()
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// Certified strict sign: Some(Greater) if the whole interval is > 0.
    pub fn sign(&self) -> Option<Ordering> {
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

    /// Upper bound on log2(max(|lo|, |hi|)); None when identically zero.
    pub fn mag_log2_upper(&self) -> Option<i64> {
        match (self.lo.log2_upper(), self.hi.log2_upper()) {
            (None, None) => None,
            (a, b) => Some(a.unwrap_or(i64::MIN).max(b.unwrap_or(i64::MIN))),
        }
    }

    /// Lower bound on log2(|x|) valid when the interval excludes zero.
    pub fn mag_log2_lower(&self) -> Option<i64> {
        if self.contains_zero() {
            return None;
        }
        if self.lo.is_positive() {
            self.lo.log2_lower()
        } else {
            self.hi.log2_lower()
        }
    }

    pub fn intersect(&self, other: &Self) -> Self {
        let lo = if self.lo.cmp_dyadic(&other.lo) == Ordering::Greater {
            self.lo.clone()
        } else {
            other.lo.clone()
        };
        let hi = if self.hi.cmp_dyadic(&other.hi) == Ordering::Less {
            self.hi.clone()
        } else {
            other.hi.clone()
        };
        if lo.cmp_dyadic(&hi) == Ordering::Greater {
            // Disjoint inputs can only arise from a soundness bug upstream.
            panic!("intersection of disjoint enclosures");
        }
        Enclosure { lo, hi }
    }

    pub fn hull(&self, other: &Self) -> Self {
        let lo = if self.lo.cmp_dyadic(&other.lo) == Ordering::Less {
            self.lo.clone()
        } else {
            other.lo.clone()
        };
        let hi = if self.hi.cmp_dyadic(&other.hi) == Ordering::Greater {
            self.hi.clone()
        } else {
            other.hi.clone()
        };
        Enclosure { lo, hi }
    }

    pub fn contains_dyadic(&self, d: &Dyadic) -> bool {
        self.lo.cmp_dyadic(d) != Ordering::Greater && self.hi.cmp_dyadic(d) != Ordering::Less
    }

    pub fn neg(&self) -> Self {
        Enclosure { lo: self.hi.neg(), hi: self.lo.neg() }
    }

    pub fn abs(&self) -> Self {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            self.neg()
        } else {
            let m = if self.lo.neg().cmp_dyadic(&self.hi) == Ordering::Greater {
                self.lo.neg()
            } else {
                self.hi.clone()
            };
            Enclosure { lo: Dyadic::zero(), hi: m }
        }
    }

    pub fn add(&self, other: &Self, bits: u64) -> Self {
        Enclosure {
            lo: self.lo.add(&other.lo).round(bits, Round::Down),
            hi: self.hi.add(&other.hi).round(bits, Round::Up),
        }
    }

    pub fn sub(&self, other: &Self, bits: u64) -> Self {
        self.add(&other.neg(), bits)
    }

    pub fn mul(&self, other: &Self, bits: u64) -> Self {
        let candidates = [
            self.lo.mul(&other.lo),
            self.lo.mul(&other.hi),
            self.hi.mul(&other.lo),
            self.hi.mul(&other.hi),
        ];
        let mut lo = candidates[0].clone();
        let mut hi = candidates[0].clone();
        for c in &candidates[1..] {
            if c.cmp_dyadic(&lo) == Ordering::Less {
                lo = c.clone();
            }
            if c.cmp_dyadic(&hi) == Ordering::Greater {
                hi = c.clone();
            }
        }
        Enclosure { lo: lo.round(bits, Round::Down), hi: hi.round(bits, Round::Up) }
    }

    pub fn mul_int(&self, n: &BigInt) -> Self {
        if n.sign() == num_bigint::Sign::Minus {
            Enclosure { lo: self.hi.mul_int(n), hi: self.lo.mul_int(n) }
        } else {
            Enclosure { lo: self.lo.mul_int(n), hi: self.hi.mul_int(n) }
        }
    }

    pub fn scale2(&self, k: i64) -> Self {
        Enclosure { lo: self.lo.scale2(k), hi: self.hi.scale2(k) }
    }

    /// Division; the divisor interval must exclude zero.
    pub fn div(&self, other: &Self, bits: u64) -> Result<Self> {
        if other.contains_zero() {
            return Err(Error::domain("division by an enclosure containing zero"));
        }
        let mut lo: Option<Dyadic> = None;
        let mut hi: Option<Dyadic> = None;
        for a in [&self.lo, &self.hi] {
            for b in [&other.lo, &other.hi] {
                let d = a.div(b, bits + 2, Round::Down);
                let u = a.div(b, bits + 2, Round::Up);
                lo = Some(match lo {
                    None => d.clone(),
                    Some(x) => {
                        if d.cmp_dyadic(&x) == Ordering::Less {
                            d.clone()
                        } else {
                            x
                        }
                    }
                });
                hi = Some(match hi {
                    None => u.clone(),
                    Some(x) => {
                        if u.cmp_dyadic(&x) == Ordering::Greater {
                            u.clone()
                        } else {
                            x
                        }
                    }
                });
            }
        }
        Ok(Enclosure { lo: lo.unwrap(), hi: hi.unwrap() })
    }

    /// Square root; requires the true value to be >= 0. A slightly negative
    /// lower endpoint (rounding slack around zero) is clamped.
    pub fn sqrt(&self, bits: u64) -> Result<Self> {
        if self.hi.is_negative() {
            return Err(Error::domain("sqrt of a certainly negative enclosure"));
        }
        let lo = if self.lo.is_negative() { Dyadic::zero() } else { self.lo.clone() };
        Ok(Enclosure {
            lo: lo.sqrt(bits, Round::Down),
            hi: self.hi.sqrt(bits, Round::Up),
        })
    }

    /// Integer power by repeated squaring, n >= 0.
    pub fn powi(&self, n: u64, bits: u64) -> Self {
        if n == 0 {
            return Enclosure::point(Dyadic::one());
        }
        let mut base = self.clone();
        let mut acc: Option<Enclosure> = None;
        let mut k = n;
        loop {
            if k & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base, bits),
                });
            }
            k >>= 1;
            if k == 0 {
                break;
            }
            base = base.mul(&base, bits);
        }
        acc.unwrap()
    }

    /// Natural logarithm; the true value must be positive.
    pub fn ln(&self, bits: u64) -> Result<Self> {
        if !self.lo.is_positive() {
            return Err(Error::domain("ln of an enclosure not certainly positive"));
        }
        if self.is_point() {
            return ln_point(&self.lo, bits);
        }
        let a = ln_point(&self.lo, bits)?;
        let b = ln_point(&self.hi, bits)?;
        Ok(Enclosure { lo: a.lo, hi: b.hi })
    }

    pub fn to_decimal(&self, digits: u32) -> (String, String) {
        (self.lo.to_decimal(digits), self.hi.to_decimal(digits))
    }
}

/// Enclosure of ln(2), cached at the widest precision requested so far.
static LN2_CACHE: Lazy<Mutex<Option<(u64, Enclosure)>>> = Lazy::new(|| Mutex::new(None));

pub fn ln2(bits: u64) -> Enclosure {
    {
        let guard = LN2_CACHE.lock().unwrap();
        if let Some((b, e)) = guard.as_ref() {
            if *b >= bits {
                return e.clone();
            }
        }
    }
    // ln 2 = 2 atanh(1/3); |z| = 1/3 gains ~3.17 bits per term.
    let w = bits + 16;
    let z = Enclosure::point(Dyadic::one()).div(&Enclosure::from_bigint(&BigInt::from(3)), w).unwrap();
    let terms = (w / 3) + 4;
    let e = atanh_series(&z, terms as usize, w).scale2(1);
    let mut guard = LN2_CACHE.lock().unwrap();
    *guard = Some((bits, e.clone()));
    e
}

/// atanh(z) = sum z^(2t+1)/(2t+1), |z| < 1/2 required; the truncation tail
/// |z|^(2T+1)/((2T+1)(1-z^2)) is absorbed by widening with 2*|z_hi|^(2T+1).
fn atanh_series(z: &Enclosure, terms: usize, bits: u64) -> Enclosure {
    let z2 = z.mul(z, bits);
    let mut power = z.clone();
    let mut sum = Enclosure::zero();
    for t in 0..terms {
        let denom = BigInt::from(2 * t as u64 + 1);
        let term = power.div(&Enclosure::from_bigint(&denom), bits).unwrap();
        sum = sum.add(&term, bits);
        power = power.mul(&z2, bits);
    }
    // `power` now encloses z^(2T+1); 2*|power| dominates the tail for |z|<1/2.
    let tail = power.abs().hi().scale2(1);
    Enclosure::new(sum.lo().sub(&tail), sum.hi().add(&tail))
}

/// Certified enclosure of ln(d) for a positive dyadic point.
pub fn ln_point(d: &Dyadic, bits: u64) -> Result<Enclosure> {
    if !d.is_positive() {
        return Err(Error::domain("ln of a non-positive dyadic"));
    }
    if d == &Dyadic::one() {
        return Ok(Enclosure::zero());
    }
    let w = bits + 48;
    // d = f * 2^e2 with f in [1/2, 1).
    let nb = d.mant_bits() as i64;
    let e2 = d.exp() + nb;
    let f = d.scale2(-e2);
    // Square-root reduction: 8 halvings bring |ln y| under 2^-9-ish.
    let reductions = 8u32;
    let mut y = Enclosure::point(f);
    for _ in 0..reductions {
        y = y.sqrt(w)?;
    }
    let one = Enclosure::point(Dyadic::one());
    let num = y.sub(&one, w);
    let den = y.add(&one, w);
    let z = num.div(&den, w)?;
    // |z| <= 2^-9.5 after eight square roots; ~19 bits per series term.
    let terms = (w / 18 + 4) as usize;
    let ln_f = atanh_series(&z, terms, w).scale2(1 + reductions as i64);
    let l2 = ln2(w + 16);
    let result = ln_f.add(&l2.mul_int(&BigInt::from(e2)), w);
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln2_digits() {
        // ln 2 = 0.693147180559945309417232121458...
        let e = ln2(200);
        let lo = e.lo().to_f64();
        let hi = e.hi().to_f64();
        assert!(lo <= 0.6931471805599453 && 0.6931471805599453 <= hi);
        assert!(e.width_log2().unwrap() < -190);
    }

    #[test]
    fn ln_of_e_scale_values() {
        // ln(1024) = 10 ln 2
        let x = Dyadic::from_i64(1024);
        let e = ln_point(&x, 150).unwrap();
        let expect = ln2(160).mul_int(&BigInt::from(10));
        // The two enclosures must overlap.
        assert!(e.lo().cmp_dyadic(expect.hi()) != Ordering::Greater);
        assert!(expect.lo().cmp_dyadic(e.hi()) != Ordering::Greater);
    }

    #[test]
    fn ln_small_value_negative() {
        let x = Dyadic::new(BigInt::from(1), -10); // 2^-10
        let e = ln_point(&x, 100).unwrap();
        assert!(e.hi().is_negative());
        // -10 ln2 ~ -6.93
        let v = e.lo().to_f64();
        assert!((v + 6.931471805599453).abs() < 1e-9);
    }

    #[test]
    fn powi_brackets() {
        let x = Enclosure::new(Dyadic::from_i64(3), Dyadic::from_i64(3));
        let p = x.powi(5, 100);
        assert!(p.contains_dyadic(&Dyadic::from_i64(243)));
    }
}
