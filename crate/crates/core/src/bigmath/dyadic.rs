//! Exact dyadic rationals `mant * 2^exp` with directed rounding.
//!
//! These are the endpoints of every certified enclosure. Addition,
//! subtraction, and multiplication are exact; division and square root are
//! computed to a requested number of bits with the rounding direction chosen
//! by the caller.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

/// Rounding direction for inexact operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Round {
    /// Toward negative infinity.
    Down,
    /// Toward positive infinity.
    Up,
}

/// Exact dyadic rational: `mant * 2^exp`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Self {
        Dyadic { mant, exp }.normalized()
    }

    pub fn zero() -> Self {
        Dyadic { mant: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        Dyadic { mant: BigInt::one(), exp: 0 }
    }

    pub fn from_bigint(n: &BigInt) -> Self {
        Dyadic { mant: n.clone(), exp: 0 }.normalized()
    }

    pub fn from_i64(n: i64) -> Self {
        Dyadic { mant: BigInt::from(n), exp: 0 }.normalized()
    }

    /// Strips trailing zero bits from the mantissa.
    fn normalized(mut self) -> Self {
        if self.mant.is_zero() {
            self.exp = 0;
            return self;
        }
        let tz = self.mant.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mant >>= tz;
            self.exp += tz as i64;
        }
        self
    }

    pub fn mant(&self) -> &BigInt {
        &self.mant
    }

    pub fn exp(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.sign() == Sign::Minus
    }

    pub fn is_positive(&self) -> bool {
        self.mant.sign() == Sign::Plus
    }

    /// Number of significant bits of the mantissa.
    pub fn mant_bits(&self) -> u64 {
        self.mant.bits()
    }

    /// Exact upper bound for log2(|self|); None when zero.
    pub fn log2_upper(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.mant.bits() as i64 + self.exp)
        }
    }

    /// Exact lower bound for log2(|self|); None when zero.
    pub fn log2_lower(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.mant.bits() as i64 - 1 + self.exp)
        }
    }

    pub fn neg(&self) -> Self {
        Dyadic { mant: -&self.mant, exp: self.exp }
    }

    pub fn abs(&self) -> Self {
        Dyadic { mant: self.mant.abs(), exp: self.exp }
    }

    /// Exact sum. Alignment cost is proportional to the exponent gap, which
    /// stays small because operands are rounded to working precision first.
    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let (a, b) = (self, other);
        if a.exp >= b.exp {
            let shifted = &a.mant << (a.exp - b.exp) as u64;
            Dyadic { mant: shifted + &b.mant, exp: b.exp }.normalized()
        } else {
            let shifted = &b.mant << (b.exp - a.exp) as u64;
            Dyadic { mant: shifted + &a.mant, exp: a.exp }.normalized()
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Exact product.
    pub fn mul(&self, other: &Self) -> Self {
        Dyadic { mant: &self.mant * &other.mant, exp: self.exp + other.exp }.normalized()
    }

    /// Exact product with an integer.
    pub fn mul_int(&self, n: &BigInt) -> Self {
        Dyadic { mant: &self.mant * n, exp: self.exp }.normalized()
    }

    /// Exact scaling by 2^k.
    pub fn scale2(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Dyadic { mant: self.mant.clone(), exp: self.exp + k }
    }

    /// Rounds to at most `bits` significant mantissa bits in direction `dir`.
    pub fn round(&self, bits: u64, dir: Round) -> Self {
        let nbits = self.mant.bits();
        if nbits <= bits {
            return self.clone();
        }
        let drop = nbits - bits;
        let truncated = &self.mant >> drop; // floor shift
        let mant = match dir {
            Round::Down => truncated,
            Round::Up => {
                let back = &truncated << drop;
                if back == self.mant {
                    truncated
                } else {
                    truncated + 1
                }
            }
        };
        Dyadic { mant, exp: self.exp + drop as i64 }.normalized()
    }

    /// Quotient `self / other` with `bits` significant bits, directed.
    pub fn div(&self, other: &Self, bits: u64, dir: Round) -> Self {
        assert!(!other.mant.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let nb = self.mant.bits();
        let db = other.mant.bits();
        // Shift the numerator so the quotient carries `bits + 2` bits.
        let shift = (db + bits + 2).saturating_sub(nb.min(db + bits + 2)).max(1);
        let num = &self.mant << shift;
        let exp = self.exp - shift as i64 - other.exp;
        let (q, r) = num.div_rem(&other.mant);
        if r.is_zero() {
            return Dyadic { mant: q, exp }.normalized();
        }
        // div_rem truncates toward zero; fix up to the requested direction.
        let q_floor = if (self.mant.sign() == Sign::Minus) != (other.mant.sign() == Sign::Minus) {
            q - 1
        } else {
            q
        };
        let mant = match dir {
            Round::Down => q_floor,
            Round::Up => q_floor + 1,
        };
        Dyadic { mant, exp }.normalized()
    }

    /// Square root with roughly `bits` significant bits, directed.
    /// Requires `self >= 0`.
    pub fn sqrt(&self, bits: u64, dir: Round) -> Self {
        assert!(!self.is_negative(), "dyadic sqrt of negative value");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let nb = self.mant.bits();
        let want = 2 * bits + 4;
        let mut shift = want.saturating_sub(nb);
        if (self.exp - shift as i64) % 2 != 0 {
            shift += 1;
        }
        let m = &self.mant << shift;
        let exp = (self.exp - shift as i64) / 2;
        let r = m.sqrt();
        match dir {
            Round::Down => Dyadic { mant: r, exp }.normalized(),
            Round::Up => {
                if &r * &r == m {
                    Dyadic { mant: r, exp }.normalized()
                } else {
                    Dyadic { mant: r + 1, exp }.normalized()
                }
            }
        }
    }

    pub fn cmp_dyadic(&self, other: &Self) -> Ordering {
        // Compare mant_a * 2^(ea - eb) with mant_b without materializing huge
        // shifts for wildly different magnitudes.
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Ordering::Equal,
            (true, false) => {
                return if other.is_negative() { Ordering::Greater } else { Ordering::Less }
            }
            (false, true) => {
                return if self.is_negative() { Ordering::Less } else { Ordering::Greater }
            }
            _ => {}
        }
        match (self.is_negative(), other.is_negative()) {
            (false, true) => return Ordering::Greater,
            (true, false) => return Ordering::Less,
            _ => {}
        }
        // Same sign: compare magnitudes via log2 bounds first.
        let (la, ua) = (self.log2_lower().unwrap(), self.log2_upper().unwrap());
        let (lb, ub) = (other.log2_lower().unwrap(), other.log2_upper().unwrap());
        let negative = self.is_negative();
        if la >= ub {
            // |a| >= |b|; equality only possible when boundary aligns, fall
            // through to the exact path unless strictly greater.
            if la > ub {
                return if negative { Ordering::Less } else { Ordering::Greater };
            }
        }
        if ua < lb {
            return if negative { Ordering::Greater } else { Ordering::Less };
        }
        let d = self.sub(other);
        match d.mant.sign() {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
    }

    /// Floor of the value as a BigInt.
    pub fn floor_bigint(&self) -> BigInt {
        if self.exp >= 0 {
            &self.mant << self.exp as u64
        } else {
            &self.mant >> (-self.exp) as u64
        }
    }

    /// Ceiling of the value as a BigInt.
    pub fn ceil_bigint(&self) -> BigInt {
        if self.exp >= 0 {
            &self.mant << self.exp as u64
        } else {
            let f = &self.mant >> (-self.exp) as u64;
            if &f << (-self.exp) as u64 == self.mant {
                f
            } else {
                f + 1
            }
        }
    }

    /// Nearest integer (ties toward even are irrelevant for proof paths,
    /// which certify distance from 1/2 separately).
    pub fn round_nearest_bigint(&self) -> BigInt {
        if self.exp >= 0 {
            return &self.mant << self.exp as u64;
        }
        let half = Dyadic { mant: BigInt::one(), exp: -1 };
        self.add(&half).floor_bigint()
    }

    /// Lossy conversion for diagnostics and search seeding only.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits();
        let (m, e) = if bits > 64 {
            let shift = bits - 64;
            let m = (&self.mant >> shift).to_string().parse::<f64>().unwrap_or(f64::NAN);
            (m, self.exp + shift as i64)
        } else {
            (self.mant.to_string().parse::<f64>().unwrap_or(f64::NAN), self.exp)
        };
        m * 2f64.powi(e.clamp(-2000, 2000) as i32)
    }

    /// Decimal rendering with about `digits` significant digits (for
    /// certificates and diagnostics; not a proof artifact).
    pub fn to_decimal(&self, digits: u32) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let v = self.to_f64();
        if v.is_finite() && v != 0.0 {
            return format!("{:.*e}", digits.min(17) as usize, v);
        }
        // Out of f64 range: report the log2-scaled form.
        format!("{}*2^{}", self.mant.to_string(), self.exp)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(m: i64, e: i64) -> Dyadic {
        Dyadic::new(BigInt::from(m), e)
    }

    #[test]
    fn add_sub_exact() {
        let a = d(3, -1); // 1.5
        let b = d(5, -2); // 1.25
        assert_eq!(a.add(&b), d(11, -2));
        assert_eq!(a.sub(&b), d(1, -2));
    }

    #[test]
    fn rounding_directions() {
        let x = d(0b10111, 0); // 23
        let down = x.round(3, Round::Down);
        let up = x.round(3, Round::Up);
        assert_eq!(down, d(0b101, 2)); // 20
        assert_eq!(up, d(0b110, 2)); // 24
        let neg = d(-23, 0);
        assert_eq!(neg.round(3, Round::Down), d(-6, 2)); // -24
        assert_eq!(neg.round(3, Round::Up), d(-5, 2)); // -20
    }

    #[test]
    fn division_brackets_truth() {
        let a = d(1, 0);
        let b = d(3, 0);
        let lo = a.div(&b, 30, Round::Down);
        let hi = a.div(&b, 30, Round::Up);
        assert!(lo.cmp_dyadic(&hi) == Ordering::Less);
        // 3*lo <= 1 <= 3*hi
        assert!(lo.mul(&b).cmp_dyadic(&a) != Ordering::Greater);
        assert!(hi.mul(&b).cmp_dyadic(&a) != Ordering::Less);
    }

    #[test]
    fn sqrt_brackets_truth() {
        let x = d(2, 0);
        let lo = x.sqrt(50, Round::Down);
        let hi = x.sqrt(50, Round::Up);
        assert!(lo.mul(&lo).cmp_dyadic(&x) != Ordering::Greater);
        assert!(hi.mul(&hi).cmp_dyadic(&x) != Ordering::Less);
        let exact = d(4, 0).sqrt(10, Round::Up);
        assert_eq!(exact, d(2, 0));
    }

    #[test]
    fn floor_ceil() {
        assert_eq!(d(7, -1).floor_bigint(), BigInt::from(3)); // 3.5
        assert_eq!(d(7, -1).ceil_bigint(), BigInt::from(4));
        assert_eq!(d(-7, -1).floor_bigint(), BigInt::from(-4));
        assert_eq!(d(-7, -1).ceil_bigint(), BigInt::from(-3));
        assert_eq!(d(7, -1).round_nearest_bigint(), BigInt::from(4));
    }
}
