//! Interval-certified reals with demand-driven precision.
//!
//! A [`CReal`] is a lazily evaluated expression tree. Evaluating at `bits`
//! yields an enclosure of width at most `2^-bits`; nodes re-evaluate their
//! operands at increasing precision until the target width is met, so
//! catastrophic cancellation (the linear forms in this crate shrink to
//! magnitudes like `B^-2m`) is handled by simply asking for enough bits.
//!
//! Enclosures are cached per node and refined by intersection, so raising
//! precision never moves an interval outside a previously reported one.

use super::dyadic::Dyadic;
use super::enclosure::Enclosure;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, Mutex};

/// Precision policy for certified decisions: evaluation starts at
/// `base_digits` and doubles (the `escalation` factor) until `max_digits`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrecisionPolicy {
    pub base_digits: u32,
    pub max_digits: u32,
    pub escalation: u32,
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        PrecisionPolicy { base_digits: 300, max_digits: 20_000, escalation: 2 }
    }
}

impl PrecisionPolicy {
    pub fn new(base_digits: u32, max_digits: u32) -> Result<Self> {
        if base_digits < 50 {
            return Err(Error::domain("base_digits must be at least 50"));
        }
        if max_digits < base_digits {
            return Err(Error::domain("max_digits must be at least base_digits"));
        }
        Ok(PrecisionPolicy { base_digits, max_digits, escalation: 2 })
    }

    /// Policy with every digit count doubled; used by the robustness suite.
    pub fn doubled(&self) -> Self {
        PrecisionPolicy {
            base_digits: self.base_digits * 2,
            max_digits: self.max_digits.saturating_mul(2),
            escalation: self.escalation,
        }
    }
}

/// Outcome of a certified comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertifiedOrder {
    Less,
    Greater,
    /// Both sides evaluated to the same exact dyadic point.
    EqualExact,
}

enum Kind {
    Int(BigInt),
    Ratio(BigInt, BigInt),
    EulerE,
    Sqrt(CReal),
    Ln(CReal),
    Neg(CReal),
    Add(CReal, CReal),
    Sub(CReal, CReal),
    Mul(CReal, CReal),
    Div(CReal, CReal),
    PowI(CReal, u64),
}

struct Node {
    kind: Kind,
    cache: Mutex<Option<(u64, Enclosure)>>,
}

/// A computable real number with certified enclosures.
#[derive(Clone)]
pub struct CReal {
    node: Arc<Node>,
}

impl fmt::Debug for CReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.eval_bits(64) {
            Ok(e) => write!(f, "CReal[{}, {}]", e.lo().to_decimal(17), e.hi().to_decimal(17)),
            Err(_) => write!(f, "CReal[?]"),
        }
    }
}

fn mk(kind: Kind) -> CReal {
    CReal { node: Arc::new(Node { kind, cache: Mutex::new(None) }) }
}

impl CReal {
    pub fn from_bigint(n: &BigInt) -> Self {
        mk(Kind::Int(n.clone()))
    }

    pub fn from_i64(n: i64) -> Self {
        mk(Kind::Int(BigInt::from(n)))
    }

    /// Exact conversion of a dyadic rational.
    pub fn from_dyadic(d: &Dyadic) -> Self {
        if d.exp() >= 0 {
            mk(Kind::Int(d.mant() << d.exp() as u64))
        } else {
            mk(Kind::Ratio(d.mant().clone(), BigInt::one() << (-d.exp()) as u64))
        }
    }

    pub fn zero() -> Self {
        Self::from_i64(0)
    }

    pub fn one() -> Self {
        Self::from_i64(1)
    }

    /// Exact rational p/q.
    pub fn ratio(p: &BigInt, q: &BigInt) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::domain("rational with zero denominator"));
        }
        let (p, q) = if q.is_negative() { (-p, -q) } else { (p.clone(), q.clone()) };
        Ok(mk(Kind::Ratio(p, q)))
    }

    pub fn ratio_i64(p: i64, q: i64) -> Self {
        Self::ratio(&BigInt::from(p), &BigInt::from(q)).expect("nonzero denominator")
    }

    /// Euler's number e.
    pub fn euler() -> Self {
        mk(Kind::EulerE)
    }

    pub fn sqrt(&self) -> Self {
        mk(Kind::Sqrt(self.clone()))
    }

    /// sqrt of an exact integer (the common case in this crate).
    pub fn sqrt_int(n: &BigInt) -> Self {
        Self::from_bigint(n).sqrt()
    }

    /// sqrt of an exact rational p/q, computed as sqrt(p*q)/q to keep the
    /// radicand integral.
    pub fn sqrt_ratio(p: i64, q: i64) -> Self {
        assert!(p >= 0 && q > 0);
        let pq = BigInt::from(p) * BigInt::from(q);
        Self::sqrt_int(&pq).div(&Self::from_i64(q))
    }

    pub fn ln(&self) -> Self {
        mk(Kind::Ln(self.clone()))
    }

    pub fn neg(&self) -> Self {
        mk(Kind::Neg(self.clone()))
    }

    pub fn add(&self, other: &Self) -> Self {
        mk(Kind::Add(self.clone(), other.clone()))
    }

    pub fn sub(&self, other: &Self) -> Self {
        mk(Kind::Sub(self.clone(), other.clone()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        mk(Kind::Mul(self.clone(), other.clone()))
    }

    pub fn mul_int(&self, n: &BigInt) -> Self {
        self.mul(&Self::from_bigint(n))
    }

    pub fn div(&self, other: &Self) -> Self {
        mk(Kind::Div(self.clone(), other.clone()))
    }

    /// Integer power; negative exponents build a reciprocal.
    pub fn powi(&self, n: i64) -> Self {
        if n == 0 {
            Self::one()
        } else if n == 1 {
            self.clone()
        } else if n < 0 {
            Self::one().div(&self.powi(-n))
        } else {
            mk(Kind::PowI(self.clone(), n as u64))
        }
    }

    pub fn recip(&self) -> Self {
        Self::one().div(self)
    }

    /// Enclosure of width at most 2^-bits.
    pub fn eval_bits(&self, bits: u64) -> Result<Enclosure> {
        {
            let cache = self.node.cache.lock().unwrap();
            if let Some((b, e)) = cache.as_ref() {
                if *b >= bits {
                    return Ok(e.clone());
                }
            }
        }
        let fresh = self.compute(bits)?;
        let mut cache = self.node.cache.lock().unwrap();
        let merged = match cache.as_ref() {
            Some((_, old)) => fresh.intersect(old),
            None => fresh,
        };
        *cache = Some((bits, merged.clone()));
        Ok(merged)
    }

    /// Enclosure with relative-style width: at most `10^-digits * max(1, |v|)`.
    pub fn eval_digits(&self, digits: u32) -> Result<Enclosure> {
        let coarse = self.eval_bits(16)?;
        let mag = coarse.mag_log2_upper().unwrap_or(0).max(0);
        let bits = ((digits as f64) * std::f64::consts::LOG2_10).ceil() as i64 - mag + 4;
        self.eval_bits(bits.max(8) as u64)
    }

    fn compute(&self, bits: u64) -> Result<Enclosure> {
        let target = bits;
        match &self.node.kind {
            Kind::Int(n) => Ok(Enclosure::from_bigint(n)),
            Kind::Ratio(p, q) => {
                let pe = Enclosure::from_bigint(p);
                let qe = Enclosure::from_bigint(q);
                pe.div(&qe, target + 4)
            }
            Kind::EulerE => Ok(euler_enclosure(target)),
            Kind::Neg(x) => Ok(x.eval_bits(target)?.neg()),
            Kind::Add(x, y) => self.adaptive(target, |ob| {
                Ok(x.eval_bits(ob)?.add(&y.eval_bits(ob)?, ob + 8))
            }),
            Kind::Sub(x, y) => self.adaptive(target, |ob| {
                Ok(x.eval_bits(ob)?.sub(&y.eval_bits(ob)?, ob + 8))
            }),
            Kind::Mul(x, y) => self.adaptive(target, |ob| {
                Ok(x.eval_bits(ob)?.mul(&y.eval_bits(ob)?, ob + 8))
            }),
            Kind::Div(x, y) => self.adaptive(target, |ob| {
                let ye = y.eval_bits(ob)?;
                if ye.contains_zero() {
                    if ye.is_point() {
                        return Err(Error::domain("division by exact zero"));
                    }
                    // Signal the adaptive loop to escalate.
                    return Ok(Enclosure::new(
                        Dyadic::from_i64(-1).scale2(ob as i64),
                        Dyadic::from_i64(1).scale2(ob as i64),
                    ));
                }
                x.eval_bits(ob)?.div(&ye, ob + 8)
            }),
            Kind::Sqrt(x) => self.adaptive(target, |ob| {
                let xe = x.eval_bits(ob)?;
                if xe.hi().is_negative() {
                    return Err(Error::domain("sqrt of a negative value"));
                }
                xe.sqrt(ob + 8)
            }),
            Kind::Ln(x) => self.adaptive(target, |ob| {
                let xe = x.eval_bits(ob)?;
                if xe.sign() == Some(Ordering::Less) || xe.is_point() && xe.contains_zero() {
                    return Err(Error::domain("ln of a non-positive value"));
                }
                if !xe.lo().is_positive() {
                    // Not yet separated from zero; escalate.
                    return Ok(Enclosure::new(
                        Dyadic::from_i64(-1).scale2(ob as i64),
                        Dyadic::from_i64(1).scale2(ob as i64),
                    ));
                }
                xe.ln(ob + 8)
            }),
            Kind::PowI(x, n) => self.adaptive(target, |ob| {
                Ok(x.eval_bits(ob)?.powi(*n, ob + 8))
            }),
        }
    }

    /// Re-evaluates `f` with growing operand precision until the enclosure
    /// width drops below 2^-target.
    fn adaptive(
        &self,
        target: u64,
        mut f: impl FnMut(u64) -> Result<Enclosure>,
    ) -> Result<Enclosure> {
        let mut ob = target + 8;
        for _ in 0..64 {
            let e = f(ob)?;
            match e.width_log2() {
                None => return Ok(e),
                Some(w) if w <= -(target as i64) => return Ok(e),
                Some(w) => {
                    let deficit = (w + target as i64).max(8) as u64;
                    ob += deficit + 16;
                }
            }
        }
        Err(Error::PrecisionExhausted {
            digits: (target / 4) as u32,
            context: "adaptive enclosure refinement did not converge".into(),
        })
    }

    /// Midpoint as f64 for heuristics and display; never a proof input.
    pub fn approx_f64(&self) -> f64 {
        match self.eval_bits(80) {
            Ok(e) => {
                let lo = e.lo().to_f64();
                let hi = e.hi().to_f64();
                0.5 * (lo + hi)
            }
            Err(_) => f64::NAN,
        }
    }

    pub fn to_decimal(&self, digits: u32) -> Result<String> {
        let e = self.eval_digits(digits)?;
        Ok(format!("[{}, {}]", e.lo().to_decimal(digits), e.hi().to_decimal(digits)))
    }
}

fn euler_enclosure(bits: u64) -> Enclosure {
    // e = sum 1/t!; stop once (T+1)! exceeds 2^(bits+4); tail < 2/(T+1)!.
    let w = bits + 16;
    let mut sum = Enclosure::point(Dyadic::from_i64(2)); // 1/0! + 1/1!
    let mut fact = BigInt::one();
    let mut t = BigInt::one();
    loop {
        t += 1;
        fact *= &t;
        let term = Enclosure::point(Dyadic::one())
            .div(&Enclosure::from_bigint(&fact), w)
            .expect("factorial nonzero");
        sum = sum.add(&term, w);
        if fact.bits() > bits + 8 {
            break;
        }
    }
    let tail = Dyadic::one().div(&Dyadic::from_bigint(&fact), w, super::dyadic::Round::Up).scale2(1);
    Enclosure::new(sum.lo().clone(), sum.hi().add(&tail))
}

/// Certified three-way comparison under a precision policy.
///
/// Disjoint enclosures decide the order; identical exact points decide
/// equality; anything else escalates until the policy's ceiling.
pub fn compare_certified(x: &CReal, y: &CReal, policy: &PrecisionPolicy) -> Result<CertifiedOrder> {
    let mut digits = policy.base_digits;
    loop {
        let ex = x.eval_digits(digits)?;
        let ey = y.eval_digits(digits)?;
        if ex.hi().cmp_dyadic(ey.lo()) == Ordering::Less {
            return Ok(CertifiedOrder::Less);
        }
        if ex.lo().cmp_dyadic(ey.hi()) == Ordering::Greater {
            return Ok(CertifiedOrder::Greater);
        }
        if ex.is_point() && ey.is_point() && ex.lo() == ey.lo() {
            return Ok(CertifiedOrder::EqualExact);
        }
        if digits >= policy.max_digits {
            return Err(Error::PrecisionExhausted {
                digits,
                context: "certified comparison undecided".into(),
            });
        }
        digits = (digits * policy.escalation.max(2)).min(policy.max_digits);
    }
}

/// Certified strict sign of `x`: Less / Greater, or EqualExact when x is an
/// exact zero.
pub fn sign_certified(x: &CReal, policy: &PrecisionPolicy) -> Result<CertifiedOrder> {
    compare_certified(x, &CReal::zero(), policy)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn policy() -> PrecisionPolicy {
        PrecisionPolicy::default()
    }

    #[test]
    fn sqrt_exact_square_is_point() {
        let x = CReal::sqrt_int(&BigInt::from(4));
        let e = x.eval_digits(50).unwrap();
        assert!(e.is_point());
        assert_eq!(e.lo(), &Dyadic::from_i64(2));
    }

    #[test]
    fn ln_one_is_exact_zero() {
        let x = CReal::one().ln();
        let e = x.eval_digits(50).unwrap();
        assert!(e.is_point());
        assert!(e.lo().is_zero());
    }

    #[test]
    fn sqrt7_fifty_digits() {
        let x = CReal::sqrt_int(&BigInt::from(7));
        let e = x.eval_digits(50).unwrap();
        // Width <= 10^-50 * max(1, v)
        assert!(e.width_log2().unwrap() <= -(50.0 * std::f64::consts::LOG2_10) as i64 + 3);
        let v = x.approx_f64();
        assert!((v - 2.6457513110645906).abs() < 1e-12);
    }

    #[test]
    fn compare_cases() {
        let one = CReal::one();
        let two = CReal::from_i64(2);
        assert_eq!(compare_certified(&one, &two, &policy()).unwrap(), CertifiedOrder::Less);
        let r2 = CReal::sqrt_int(&BigInt::from(2));
        let approx = CReal::ratio_i64(141421356, 100000000);
        assert_eq!(compare_certified(&r2, &approx, &policy()).unwrap(), CertifiedOrder::Greater);
        let r4 = CReal::sqrt_int(&BigInt::from(4));
        assert_eq!(compare_certified(&r4, &two, &policy()).unwrap(), CertifiedOrder::EqualExact);
    }

    #[test]
    fn equal_irrationals_exhaust_precision() {
        let a = CReal::sqrt_int(&BigInt::from(2));
        let b = CReal::sqrt_int(&BigInt::from(8)).div(&CReal::from_i64(2));
        let tight = PrecisionPolicy::new(50, 200).unwrap();
        assert!(matches!(
            compare_certified(&a, &b, &tight),
            Err(Error::PrecisionExhausted { .. })
        ));
    }

    #[test]
    fn euler_value() {
        let e = CReal::euler();
        let v = e.approx_f64();
        assert!((v - std::f64::consts::E).abs() < 1e-12);
        let enc = e.eval_digits(100).unwrap();
        assert!(enc.width_log2().unwrap() < -300);
    }

    #[test]
    fn cancellation_resolved_on_demand() {
        // (sqrt(2) + 10^-40) - sqrt(2) must certify as positive.
        let r2 = CReal::sqrt_int(&BigInt::from(2));
        let tiny = CReal::ratio(&BigInt::one(), &BigInt::from(10).pow(40)).unwrap();
        let x = r2.add(&tiny).sub(&r2);
        assert_eq!(sign_certified(&x, &policy()).unwrap(), CertifiedOrder::Greater);
    }

    #[test]
    fn monotone_refinement_nested() {
        let x = CReal::sqrt_int(&BigInt::from(7)).ln();
        let coarse = x.eval_digits(60).unwrap();
        let fine = x.eval_digits(120).unwrap();
        assert!(coarse.lo().cmp_dyadic(fine.lo()) != Ordering::Greater);
        assert!(coarse.hi().cmp_dyadic(fine.hi()) != Ordering::Less);
    }
}
