//! Certified reduction of the inequality 0 < j kappa - i + mu < A B^(-j)
//! over continued fraction convergents.
//!
//! A convergent p/q of kappa with q > 6M and eta = ||mu q|| - M ||kappa q||
//! positive rules out every solution with log(A q / eta)/log(B) <= j <= M.
//! Classes that carry a genuine solution (j0, i0) make the naive smallest
//! q > 6M unusable: mu is then within B^(-2 j0) of i0 - j0 kappa, so
//! ||mu q|| collapses to about j0 ||kappa q|| and eta stays negative. The
//! convergent floor is therefore raised to the scale of the solution's form
//! value, which restores a generic fractional part while staying inside the
//! same lemma.

use crate::bigmath::{CReal, Dyadic, Enclosure, PrecisionPolicy};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

/// One reduction instance.
#[derive(Debug, Clone)]
pub struct ReductionCase {
    pub kappa: CReal,
    pub mu: CReal,
    /// Coefficient A of the shrinking bound.
    pub a_coeff: CReal,
    /// Base B > 1 of the shrinking bound.
    pub b_base: CReal,
    /// A priori bound M on the governing index.
    pub m_bound: BigInt,
    /// Convergent floor: at least 6M + 1, raised for solution-bearing
    /// classes to the scale where eta can be positive.
    pub q_floor: BigInt,
}

/// Outcome of one reduction step.
#[derive(Debug, Clone)]
pub struct ReductionStep {
    pub q: BigInt,
    pub p: BigInt,
    /// Certified enclosure endpoints of eta.
    pub eta_lo: Dyadic,
    pub eta_hi: Dyadic,
    pub new_m: BigInt,
    /// Convergents rejected (eta not certainly positive) before this one.
    pub rejected: u32,
}

/// Full iterated reduction trace.
#[derive(Debug, Clone)]
pub struct ReductionReport {
    pub steps: Vec<ReductionStep>,
    pub final_m: BigInt,
    pub precision_digits: u32,
}

fn dyadic_to_fraction(d: &Dyadic) -> (BigInt, BigInt) {
    if d.exp() >= 0 {
        (d.mant() << d.exp() as u64, BigInt::one())
    } else {
        (d.mant().clone(), BigInt::one() << (-d.exp()) as u64)
    }
}

/// Certified continued fraction quotients of `x` from one enclosure: the
/// loop stops as soon as the two endpoints disagree on a quotient, so every
/// emitted quotient belongs to the true value.
fn cf_quotients_from_enclosure(e: &Enclosure, max_terms: usize) -> Vec<BigInt> {
    let (mut ln, mut ld) = dyadic_to_fraction(e.lo());
    let (mut hn, mut hd) = dyadic_to_fraction(e.hi());
    let mut out = Vec::new();
    for _ in 0..max_terms {
        let a_lo = ln.div_floor(&ld);
        let a_hi = hn.div_floor(&hd);
        if a_lo != a_hi {
            break;
        }
        out.push(a_lo.clone());
        // x <- 1/(x - a); endpoints swap.
        let rem_lo = &ln - &a_lo * &ld;
        let rem_hi = &hn - &a_lo * &hd;
        if rem_lo.is_zero() || rem_hi.is_zero() {
            break;
        }
        let (nln, nld) = (hd, rem_hi);
        let (nhn, nhd) = (ld, rem_lo);
        ln = nln;
        ld = nld;
        hn = nhn;
        hd = nhd;
    }
    out
}

/// Convergents (p_i, q_i) of `x`, certified, extending precision until the
/// denominators reach `q_target` with `extra` spare terms.
pub fn convergents_reaching(
    x: &CReal,
    q_target: &BigInt,
    extra: usize,
    policy: &PrecisionPolicy,
) -> Result<Vec<(BigInt, BigInt)>> {
    // Working digits sized from the target denominator: quotient validity
    // at q needs roughly q^2 resolution.
    let target_digits =
        (2.2 * (q_target.bits() as f64) * 0.30103).ceil() as u32 + 60;
    let mut digits = target_digits.max(policy.base_digits.min(120));
    loop {
        let bits = (digits as f64 * 3.322).ceil() as u64;
        let e = x.eval_bits(bits)?;
        if e.is_point() {
            return Err(Error::RationalInput(
                "continued fraction target resolved to an exact dyadic".into(),
            ));
        }
        let quotients = cf_quotients_from_enclosure(&e, 100_000);
        let mut convergents: Vec<(BigInt, BigInt)> = Vec::with_capacity(quotients.len());
        let (mut p0, mut q0) = (BigInt::one(), BigInt::zero());
        let (mut p1, mut q1) = (quotients.first().cloned().unwrap_or_default(), BigInt::one());
        if !quotients.is_empty() {
            convergents.push((p1.clone(), q1.clone()));
            for a in &quotients[1..] {
                let p2 = a * &p1 + &p0;
                let q2 = a * &q1 + &q0;
                p0 = std::mem::replace(&mut p1, p2);
                q0 = std::mem::replace(&mut q1, q2);
                convergents.push((p1.clone(), q1.clone()));
            }
        }
        let enough = convergents
            .iter()
            .position(|(_, q)| q > q_target)
            .map(|pos| convergents.len() >= pos + 1 + extra)
            .unwrap_or(false);
        if enough {
            return Ok(convergents);
        }
        if digits >= policy.max_digits {
            return Err(Error::PrecisionExhausted {
                digits,
                context: "continued fraction did not reach the target denominator".into(),
            });
        }
        digits = (digits * 2).min(policy.max_digits);
    }
}

/// The first convergent p/q with q > q_min.
pub fn cf_convergents(
    x: &CReal,
    q_min: &BigInt,
    policy: &PrecisionPolicy,
) -> Result<(BigInt, BigInt)> {
    let list = convergents_reaching(x, q_min, 1, policy)?;
    list.into_iter()
        .find(|(_, q)| q > q_min)
        .ok_or_else(|| Error::invariant("convergent list missing the target"))
}

/// Nearest integer and certified enclosure of the distance to it.
/// Escalates until the value separates from the half-integer grid.
pub fn nearest_integer_distance(
    x: &CReal,
    policy: &PrecisionPolicy,
) -> Result<(BigInt, Enclosure)> {
    // Absolute bits: magnitude plus enough fractional resolution.
    let coarse = x.eval_bits(16)?;
    let mag = coarse.mag_log2_upper().unwrap_or(0).max(0) as u64;
    let mut bits = mag + 64;
    let max_bits = (policy.max_digits as u64) * 4 + mag;
    loop {
        let e = x.eval_bits(bits)?;
        let mid = e.lo().add(e.hi()).scale2(-1);
        let n = mid.round_nearest_bigint();
        let nd = Dyadic::from_bigint(&n);
        let half = Dyadic::new(BigInt::one(), -1);
        let lo_off = e.lo().sub(&nd);
        let hi_off = e.hi().sub(&nd);
        // Inside the closed interval [n - 1/2, n + 1/2] the distance to the
        // nearest integer equals |t - n| (ties at the boundary included).
        if lo_off.cmp_dyadic(&half.neg()) != Ordering::Less
            && hi_off.cmp_dyadic(&half) != Ordering::Greater
        {
            let dist = Enclosure::new(lo_off, hi_off).abs();
            return Ok((n, dist));
        }
        if bits >= max_bits {
            return Err(Error::PrecisionExhausted {
                digits: (bits / 4) as u32,
                context: "nearest-integer distance undecided (half-integer tie?)".into(),
            });
        }
        bits = (bits * 2).min(max_bits);
    }
}

/// Computes eta for a single convergent and, when certainly positive, the
/// resulting new bound.
fn try_convergent(
    case: &ReductionCase,
    p: &BigInt,
    q: &BigInt,
    policy: &PrecisionPolicy,
) -> Result<Option<ReductionStep>> {
    let _ = p;
    let (_, dist_mu) = nearest_integer_distance(&case.mu.mul_int(q), policy)?;
    let (_, dist_kappa) = nearest_integer_distance(&case.kappa.mul_int(q), policy)?;
    let scaled = dist_kappa.mul_int(&case.m_bound);
    let work_bits = 128;
    let eta = dist_mu.sub(&scaled, work_bits + 64);
    if !eta.lo().is_positive() {
        return Ok(None);
    }
    // new_M from the upper enclosure of log(A q / eta) / log(B).
    let eta_lo = CReal::from_dyadic(eta.lo());
    let x = case
        .a_coeff
        .mul_int(q)
        .div(&eta_lo)
        .ln()
        .div(&case.b_base.ln());
    let e = x.eval_digits(25)?;
    let mut new_m = e.hi().floor_bigint();
    if new_m.is_negative() {
        new_m = BigInt::zero();
    }
    Ok(Some(ReductionStep {
        q: q.clone(),
        p: p.clone(),
        eta_lo: eta.lo().clone(),
        eta_hi: eta.hi().clone(),
        new_m,
        rejected: 0,
    }))
}

/// One reduction step: tries up to ten convergents past the floor, keeps
/// the best (smallest) resulting bound, and escalates precision once before
/// failing.
pub fn bd_step(case: &ReductionCase, policy: &PrecisionPolicy) -> Result<ReductionStep> {
    let six_m = 6u32 * &case.m_bound + 1u32;
    let q_start = case.q_floor.clone().max(six_m);
    let mut policies = vec![policy.clone(), policy.doubled()];
    let mut last_err: Option<Error> = None;
    for pol in policies.drain(..) {
        let convergents = match convergents_reaching(&case.kappa, &q_start, 12, &pol) {
            Ok(c) => c,
            Err(e) => {
                last_err = Some(e);
                continue;
            }
        };
        let mut best: Option<ReductionStep> = None;
        let mut rejected = 0u32;
        let mut successes = 0u32;
        for (p, q) in convergents.iter().filter(|(_, q)| q >= &q_start) {
            match try_convergent(case, p, q, &pol) {
                Ok(Some(mut step)) => {
                    step.rejected = rejected;
                    successes += 1;
                    best = Some(match best {
                        None => step,
                        Some(b) if step.new_m < b.new_m => step,
                        Some(b) => b,
                    });
                    if successes >= 6 {
                        break;
                    }
                }
                Ok(None) => {
                    rejected += 1;
                    if rejected >= 10 {
                        break;
                    }
                }
                Err(Error::PrecisionExhausted { .. }) => {
                    rejected += 1;
                }
                Err(e) => return Err(e),
            }
        }
        if let Some(step) = best {
            return Ok(step);
        }
        last_err = Some(Error::StepFailed(format!(
            "eta stayed non-positive over {rejected} convergents past q = {q_start}"
        )));
    }
    Err(last_err.unwrap_or_else(|| Error::StepFailed("no convergents tried".into())))
}

/// Iterates [`bd_step`] with M shrinking until a fixpoint or the cap.
pub fn iterate_reduction(
    case: &ReductionCase,
    step_cap: u32,
    policy: &PrecisionPolicy,
) -> Result<ReductionReport> {
    let mut work = case.clone();
    let mut steps = Vec::new();
    for _ in 0..step_cap {
        if work.m_bound <= BigInt::one() {
            break;
        }
        let step = bd_step(&work, policy)?;
        let new_m = step.new_m.clone();
        steps.push(step);
        if new_m >= work.m_bound {
            break;
        }
        work.m_bound = new_m;
    }
    Ok(ReductionReport {
        final_m: work.m_bound,
        steps,
        precision_digits: policy.base_digits,
    })
}

/// Raises the convergent floor so that degeneracies of mu cannot force eta
/// below zero.
///
/// Whenever j kappa + mu is within roughly 1/(2M) of an integer for some
/// small j — either because (j, i) is a genuine solution of the system or
/// because an algebraic near-identity ties the logarithm data together —
/// ||mu q|| collapses to about j ||kappa q|| at every convergent and the
/// lemma never fires. Past q = 3/|epsilon| the fractional part of mu q
/// decouples from kappa's convergents again. The scan covers j up to
/// `j_max`, which must dominate the indices of any known small solutions.
pub fn q_floor_for_degeneracies(
    kappa: &CReal,
    mu: &CReal,
    j_max: u32,
    policy: &PrecisionPolicy,
) -> Result<BigInt> {
    // Each step combines this with the lemma's own 6M + 1 floor for the
    // then-current M. The threshold is a constant 1/128: late steps run at
    // q around 6 * (final plateau), so even moderately small relation
    // values starve eta there unless the floor clears their scale.
    let mut floor = BigInt::one();
    let threshold = Dyadic::new(BigInt::one(), -7);
    let max_bits = (policy.max_digits as u64) * 4;
    for j in 0..=j_max {
        let v = kappa.mul_int(&BigInt::from(j)).add(mu);
        let (n, dist) = nearest_integer_distance(&v, policy)?;
        if dist.lo().cmp_dyadic(&threshold) == Ordering::Greater {
            continue;
        }
        // Degenerate relation: certify epsilon away from zero and raise the
        // floor to its scale.
        let eps = v.sub(&CReal::from_bigint(&n));
        let mut bits: u64 = 192;
        let enc = loop {
            let e = eps.eval_bits(bits)?;
            if !e.contains_zero() {
                break e;
            }
            if bits >= max_bits {
                return Err(Error::PrecisionExhausted {
                    digits: (bits / 4) as u32,
                    context: format!("near-relation at j = {j} not separated from 0"),
                });
            }
            bits = (bits * 2).min(max_bits);
        };
        let abs = enc.abs();
        let needed = Dyadic::from_i64(3).div(abs.lo(), 64, crate::bigmath::Round::Up);
        floor = floor.max(needed.ceil_bigint());
    }
    Ok(floor)
}

/// Certified spot check that an index is excluded: there is no integer i
/// with 0 < j kappa - i + mu < A B^(-j). Works in the log domain so huge
/// exponents never materialize.
pub fn spot_check_excluded(
    case: &ReductionCase,
    j: &BigInt,
    policy: &PrecisionPolicy,
) -> Result<bool> {
    let v = case.kappa.mul_int(j).add(&case.mu);
    let (_, dist) = nearest_integer_distance(&v, policy)?;
    // The fractional offset v - round(v) must not land in (0, A B^-j);
    // compare log(dist_lo) against log A - j log B when the offset is
    // positive, otherwise the interval (0, ...) is missed entirely.
    if dist.lo().is_zero() {
        return Ok(false);
    }
    let log_dist = CReal::from_dyadic(dist.lo()).ln();
    let threshold = case
        .a_coeff
        .ln()
        .sub(&case.b_base.ln().mul_int(j));
    let cmp = crate::bigmath::compare_certified(&log_dist, &threshold, policy)?;
    Ok(cmp == crate::bigmath::CertifiedOrder::Greater)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn policy() -> PrecisionPolicy {
        PrecisionPolicy::default()
    }

    fn bi(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn golden_ratio_convergents_are_fibonacci() {
        let phi = CReal::one()
            .add(&CReal::sqrt_int(&bi(5)))
            .mul(&CReal::ratio_i64(1, 2));
        let (p, q) = cf_convergents(&phi, &bi(6), &policy()).unwrap();
        assert_eq!((p, q), (bi(13), bi(8)));
    }

    #[test]
    fn sqrt2_convergent() {
        let r2 = CReal::sqrt_int(&bi(2));
        let (p, q) = cf_convergents(&r2, &bi(10), &policy()).unwrap();
        assert_eq!((p, q), (bi(17), bi(12)));
    }

    #[test]
    fn near_integer_first_quotient() {
        // x = (7e40 + 3)/1e40: first quotient 7.
        let num = BigInt::from(7) * BigInt::from(10).pow(40) + 3;
        let den = BigInt::from(10).pow(40);
        let x = CReal::ratio(&num, &den).unwrap();
        let e = x.eval_bits(400).unwrap();
        let qs = cf_quotients_from_enclosure(&e, 4);
        assert_eq!(qs[0], bi(7));
    }

    #[test]
    fn convergent_quality() {
        // |kappa - p/q| < 1/q^2 for emitted convergents.
        let kappa = CReal::sqrt_int(&bi(3)).ln().div(&CReal::sqrt_int(&bi(2)).ln());
        let convs = convergents_reaching(&kappa, &bi(1_000_000), 2, &policy()).unwrap();
        for (p, q) in convs.iter().skip(1) {
            let diff = kappa.sub(&CReal::ratio(p, q).unwrap()).mul_int(&(q * q));
            let e = diff.eval_digits(30).unwrap();
            assert!(e.abs().hi().cmp_dyadic(&Dyadic::from_i64(1)) == Ordering::Less);
        }
    }

    #[test]
    fn synthetic_bd_step() {
        // kappa = sqrt(2), mu = 1/2, M = 10, A = 1, B = 10. The first
        // convergent with q > 60 is 99/70, where mu q is an exact integer and
        // eta < 0; the next (239/169) gives eta ~ 0.479 and new_M = 2.
        let case = ReductionCase {
            kappa: CReal::sqrt_int(&bi(2)),
            mu: CReal::ratio_i64(1, 2),
            a_coeff: CReal::one(),
            b_base: CReal::from_i64(10),
            m_bound: bi(10),
            q_floor: bi(61),
        };
        let step = bd_step(&case, &policy()).unwrap();
        assert_eq!(step.q, bi(169));
        assert_eq!(step.rejected, 1);
        assert_eq!(step.new_m, bi(2));
        // Hand oracle: eta = 1/2 - 10*(239 - 169 sqrt 2) in [0.47, 0.49].
        assert!(step.eta_lo.to_f64() > 0.47 && step.eta_hi.to_f64() < 0.49);
    }

    #[test]
    fn mu_zero_fails() {
        let case = ReductionCase {
            kappa: CReal::sqrt_int(&bi(2)),
            mu: CReal::zero(),
            a_coeff: CReal::one(),
            b_base: CReal::from_i64(10),
            m_bound: bi(10),
            q_floor: bi(61),
        };
        assert!(matches!(bd_step(&case, &policy()), Err(Error::StepFailed(_))));
    }

    #[test]
    fn iterate_hits_fixpoint() {
        let case = ReductionCase {
            kappa: CReal::sqrt_int(&bi(2)),
            mu: CReal::ratio_i64(1, 2),
            a_coeff: CReal::one(),
            b_base: CReal::from_i64(10),
            m_bound: bi(1_000_000),
            q_floor: bi(1),
        };
        let report = iterate_reduction(&case, 8, &policy()).unwrap();
        assert!(report.final_m <= bi(3), "final_m = {}", report.final_m);
        assert!(report.steps.len() <= 8);
    }

    #[test]
    fn precision_robustness() {
        let case = ReductionCase {
            kappa: CReal::sqrt_int(&bi(3)).ln().div(&CReal::sqrt_int(&bi(2)).ln()),
            mu: CReal::ratio_i64(1, 3),
            a_coeff: CReal::one(),
            b_base: CReal::from_i64(7),
            m_bound: bi(100_000),
            q_floor: bi(1),
        };
        let s1 = bd_step(&case, &policy()).unwrap();
        let s2 = bd_step(&case, &policy().doubled()).unwrap();
        assert_eq!(s1.q, s2.q);
        assert_eq!(s1.new_m, s2.new_m);
        assert_eq!(s1.eta_lo.is_positive(), s2.eta_lo.is_positive());
    }
}
