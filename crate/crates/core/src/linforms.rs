//! Linear forms in logarithms: the forms attached to an intersection
//! system, Matveev's lower bound, the index upper bounds per family, the
//! congruence-based lower bounds, and the per-family p-range computation.

use crate::bigmath::{
    compare_certified, sign_certified, CReal, CertifiedOrder, PrecisionPolicy,
};
use crate::d4core::{extension_element, ExtSign, TripleRoots};
use crate::error::{Error, Result};
use crate::pell::{pair_element, PairFamily, SUPPORTED_K};
use crate::seqsys::FundClass;
use num_bigint::BigInt;
use num_traits::{FromPrimitive, One, Signed, Zero};

/// Exact rational constants used by the bound machinery, named by role.
pub mod consts {
    /// Coefficient of the power bound on the inner-family form: 2.6.
    pub const FORM_COEFF: (i64, i64) = (26, 10);
    /// Coefficient (times a^2) of the power bound for Type 2 forms: 1.5.
    pub const FORM_COEFF_T2: (i64, i64) = (3, 2);
    /// Scale inside log(21.3 a) for the inner family's index bound.
    pub const LOG_SCALE_A: (i64, i64) = (213, 10);
    /// Scale inside log(8.09 c^2) for the outer families' index bounds.
    pub const LOG_SCALE_C: (i64, i64) = (809, 100);
    /// x/log(ex) coefficient, Type 1 outer families: 3.34e13.
    pub const INDEX_T1: i64 = 33_400_000_000_000;
    /// x/log(ex) coefficient, Type 2: 6.63e13.
    pub const INDEX_T2: i64 = 66_300_000_000_000;
    /// x/log(ex) coefficient, inner family: 1.336e14.
    pub const INDEX_C1M: i64 = 133_600_000_000_000;
    /// m/log(m+1) coefficient for the z-system: 6.543e15.
    pub const INDEX_Z: i64 = 6_543_000_000_000_000;
    /// Even-index z-system lower-bound coefficient: 0.495.
    pub const Z_EVEN_COEFF: (i64, i64) = (99, 200);
    /// Odd-index z-system lower-bound coefficient: 0.0625.
    pub const Z_ODD_COEFF: (i64, i64) = (1, 16);
}

fn cr(r: (i64, i64)) -> CReal {
    CReal::ratio_i64(r.0, r.1)
}

/// The logarithm data attached to one triple and one fundamental class.
#[derive(Debug, Clone)]
pub struct LogFormInstance {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub alpha: CReal,
    pub beta: CReal,
    pub gamma: CReal,
    pub gamma_prime: CReal,
    pub class: FundClass,
}

impl LogFormInstance {
    pub fn new(triple: &TripleRoots, class: &FundClass) -> Self {
        let half = CReal::ratio_i64(1, 2);
        let sa = CReal::sqrt_int(&triple.a);
        let sb = CReal::sqrt_int(&triple.b);
        let sc = CReal::sqrt_int(&triple.c);
        let alpha = CReal::from_bigint(&triple.r)
            .add(&CReal::sqrt_int(&(&triple.a * &triple.b)))
            .mul(&half);
        let beta = CReal::from_bigint(&triple.s)
            .add(&CReal::sqrt_int(&(&triple.a * &triple.c)))
            .mul(&half);
        let num = sc.mul(
            &CReal::from_bigint(&class.y2)
                .mul(&sa)
                .add(&CReal::from_bigint(&class.x2).mul(&sb)),
        );
        let den = sb.mul(
            &CReal::from_bigint(&class.z0)
                .mul(&sa)
                .add(&CReal::from_bigint(&class.x0).mul(&sc)),
        );
        let gamma = num.div(&den);
        let gamma_prime = den.div(&num);
        LogFormInstance {
            a: triple.a.clone(),
            b: triple.b.clone(),
            c: triple.c.clone(),
            alpha,
            beta,
            gamma,
            gamma_prime,
            class: class.clone(),
        }
    }
}

/// Which of the two linear forms to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LambdaVariant {
    /// l log alpha - m log beta + log gamma (outer families, c > b).
    Lambda,
    /// m log beta - l log alpha + log gamma' (inner family, c < b).
    LambdaPrime,
}

/// Certified value of the linear form at integer indices (l, m).
pub fn lambda_value(inst: &LogFormInstance, l: u64, m: u64, variant: LambdaVariant) -> CReal {
    let la = inst.alpha.ln().mul_int(&BigInt::from(l));
    let lb = inst.beta.ln().mul_int(&BigInt::from(m));
    match variant {
        LambdaVariant::Lambda => la.sub(&lb).add(&inst.gamma.ln()),
        LambdaVariant::LambdaPrime => lb.sub(&la).add(&inst.gamma_prime.ln()),
    }
}

/// The stated strict power bounds on the forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LambdaBoundKind {
    /// 0 < Lambda' < 2.6 alpha^(-2l), inner family, l >= 1.
    InnerPrime,
    /// 0 < Lambda < 2.6 beta^(-2m), outer families, Type 1, m >= 3.
    OuterType1,
    /// 0 < Lambda < 1.5 a^2 beta^(-2m), outer families, Type 2, m >= 3.
    OuterType2,
}

/// Verifies the strict bound at a concrete hit via certified comparison.
pub fn lambda_bound_check(
    inst: &LogFormInstance,
    l: u64,
    m: u64,
    kind: LambdaBoundKind,
    policy: &PrecisionPolicy,
) -> Result<bool> {
    let (value, bound) = match kind {
        LambdaBoundKind::InnerPrime => (
            lambda_value(inst, l, m, LambdaVariant::LambdaPrime),
            cr(consts::FORM_COEFF).mul(&inst.alpha.powi(-2 * l as i64)),
        ),
        LambdaBoundKind::OuterType1 => (
            lambda_value(inst, l, m, LambdaVariant::Lambda),
            cr(consts::FORM_COEFF).mul(&inst.beta.powi(-2 * m as i64)),
        ),
        LambdaBoundKind::OuterType2 => (
            lambda_value(inst, l, m, LambdaVariant::Lambda),
            cr(consts::FORM_COEFF_T2)
                .mul_int(&(&inst.a * &inst.a))
                .mul(&inst.beta.powi(-2 * m as i64)),
        ),
    };
    let positive = sign_certified(&value, policy)? == CertifiedOrder::Greater;
    let below = compare_certified(&value, &bound, policy)? == CertifiedOrder::Less;
    Ok(positive && below)
}

/// Matveev's constant C(j, chi) = min{(1/chi)(e j / 2)^chi 30^(j+3) j^3.5,
/// 2^(6j + 20)} as a certified value.
pub fn matveev_constant(j: u32, chi: u32, policy: &PrecisionPolicy) -> Result<CReal> {
    if j < 2 || !(chi == 1 || chi == 2) {
        return Err(Error::domain("need j >= 2 and chi in {1, 2}"));
    }
    let jb = BigInt::from(j);
    let ej_half = CReal::euler().mul_int(&jb).mul(&CReal::ratio_i64(1, 2));
    let pow_chi = if chi == 1 { ej_half.clone() } else { ej_half.powi(2) };
    let thirty_pow = CReal::from_bigint(&BigInt::from(30).pow(j + 3));
    let j35 = CReal::from_bigint(&(&jb * &jb * &jb)).mul(&CReal::sqrt_int(&jb));
    let branch1 = CReal::ratio_i64(1, chi as i64).mul(&pow_chi).mul(&thirty_pow).mul(&j35);
    let branch2 = CReal::from_bigint(&(BigInt::one() << (6 * j + 20) as u64));
    match compare_certified(&branch1, &branch2, policy)? {
        CertifiedOrder::Less | CertifiedOrder::EqualExact => Ok(branch1),
        CertifiedOrder::Greater => Ok(branch2),
    }
}

/// Inputs for the lower bound on log |Lambda|.
#[derive(Debug, Clone)]
pub struct MatveevInput {
    pub j: u32,
    pub chi: u32,
    /// Field degree D.
    pub degree: u32,
    /// The A_i factors (each at least max(D h(alpha_i), |log alpha_i|, 0.16)).
    pub a_factors: Vec<CReal>,
    /// B = max |b_i|.
    pub b_max: CReal,
}

/// Certified lower bound for log |Lambda|:
/// -(C(j, chi) D^2 A_1 ... A_j log(eD) log(eB)).
pub fn matveev_lower_bound(input: &MatveevInput, policy: &PrecisionPolicy) -> Result<CReal> {
    if input.a_factors.len() != input.j as usize {
        return Err(Error::domain("need exactly j A-factors"));
    }
    let c = matveev_constant(input.j, input.chi, policy)?;
    let d = BigInt::from(input.degree);
    let mut prod = c.mul_int(&(&d * &d));
    for a in &input.a_factors {
        prod = prod.mul(a);
    }
    let log_ed = CReal::one().add(&CReal::from_bigint(&d).ln());
    let log_eb = CReal::one().add(&input.b_max.ln());
    Ok(prod.mul(&log_ed).mul(&log_eb).neg())
}

/// Shape of the monotone index inequality to invert.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IneqShape {
    /// x / log(e x) < K
    XOverLogEx,
    /// x / log(x + 1) < K
    XOverLogX1,
}

fn shape_value(x: &BigInt, shape: IneqShape) -> CReal {
    let xr = CReal::from_bigint(x);
    match shape {
        IneqShape::XOverLogEx => xr.div(&CReal::one().add(&xr.ln())),
        IneqShape::XOverLogX1 => xr.div(&xr.add(&CReal::one()).ln()),
    }
}

/// Largest integer x >= 1 with f(x) < K, where f is the requested shape
/// (strictly increasing for x >= 1). A float pass seeds the answer; the
/// returned endpoint pair is certified exactly.
pub fn solve_index_inequality(
    k_bound: &CReal,
    shape: IneqShape,
    policy: &PrecisionPolicy,
) -> Result<BigInt> {
    let cmp_policy = PrecisionPolicy::new(50, policy.max_digits)?;
    let kf = k_bound.approx_f64();
    if !kf.is_finite() || kf <= 0.0 {
        return Err(Error::domain("index inequality needs a positive finite bound"));
    }
    let below = |v: &BigInt| -> Result<bool> {
        Ok(matches!(
            compare_certified(&shape_value(v, shape), k_bound, &cmp_policy)?,
            CertifiedOrder::Less
        ))
    };
    if !below(&BigInt::one())? {
        return Err(Error::NoSolution("no index satisfies the inequality".into()));
    }
    // Fixed-point float seed: x = K * log(...)
    let mut x = kf.max(2.0);
    for _ in 0..60 {
        let next = match shape {
            IneqShape::XOverLogEx => kf * (1.0 + x.ln()),
            IneqShape::XOverLogX1 => kf * (x + 1.0).ln(),
        };
        x = next.max(1.0);
    }
    // The float answer carries ~1e-15 relative slack; bracket that window
    // and binary search with certified comparisons only.
    let seed = BigInt::from_f64(x.floor()).unwrap_or_else(BigInt::one).max(BigInt::one());
    let pad_f = (x * 1e-11).max(16.0);
    let pad = BigInt::from_f64(pad_f).unwrap_or_else(|| BigInt::from(16));
    let mut lo = (&seed - &pad).max(BigInt::one());
    let mut hi = &seed + &pad;
    // Grow the bracket on the rare miss.
    let mut guard = 0;
    while !below(&lo)? {
        hi = lo.clone();
        lo = (&lo - 2u32 * &pad).max(BigInt::one());
        guard += 1;
        if guard > 64 {
            return Err(Error::invariant("bracketing failed downward"));
        }
    }
    guard = 0;
    while below(&hi)? {
        lo = hi.clone();
        hi += 2u32 * &pad;
        guard += 1;
        if guard > 64 {
            return Err(Error::invariant("bracketing failed upward"));
        }
    }
    // Invariant: below(lo) true, below(hi) false; answer in [lo, hi).
    while &hi - &lo > BigInt::one() {
        let mid: BigInt = (&lo + &hi) / 2u32;
        if below(&mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// Certified ceiling of a CReal (escalates until the enclosure pins it).
pub fn ceil_certified(x: &CReal, policy: &PrecisionPolicy) -> Result<BigInt> {
    let mut digits = 40u32.min(policy.base_digits);
    loop {
        let e = x.eval_digits(digits)?;
        let lo = e.lo().ceil_bigint();
        let hi = e.hi().ceil_bigint();
        if lo == hi {
            return Ok(lo);
        }
        if digits >= policy.max_digits {
            return Err(Error::PrecisionExhausted { digits, context: "ceiling undecided".into() });
        }
        digits = (digits * 2).min(policy.max_digits);
    }
}

/// Certified floor of a CReal.
pub fn floor_certified(x: &CReal, policy: &PrecisionPolicy) -> Result<BigInt> {
    let mut digits = 40u32.min(policy.base_digits);
    loop {
        let e = x.eval_digits(digits)?;
        let lo = e.lo().floor_bigint();
        let hi = e.hi().floor_bigint();
        if lo == hi {
            return Ok(lo);
        }
        if digits >= policy.max_digits {
            return Err(Error::PrecisionExhausted { digits, context: "floor undecided".into() });
        }
        digits = (digits * 2).min(policy.max_digits);
    }
}

/// Congruence lower bounds for Type 1 solutions:
/// m >= (1/4)(-2 + sqrt(4 + sqrt a)) and l >= (1/12)(-2 + sqrt(4 + 3 sqrt a)),
/// returned as certified ceilings (m_min, l_min).
pub fn lower_bounds_type1(a: &BigInt, policy: &PrecisionPolicy) -> Result<(BigInt, BigInt)> {
    if !a.is_positive() {
        return Err(Error::domain("a must be positive"));
    }
    let sa = CReal::sqrt_int(a);
    let four = CReal::from_i64(4);
    let m_expr = four
        .add(&sa)
        .sqrt()
        .sub(&CReal::from_i64(2))
        .mul(&CReal::ratio_i64(1, 4));
    let l_expr = four
        .add(&sa.mul_int(&BigInt::from(3)))
        .sqrt()
        .sub(&CReal::from_i64(2))
        .mul(&CReal::ratio_i64(1, 12));
    let m_min = ceil_certified(&m_expr, policy)?.max(BigInt::zero());
    let l_min = ceil_certified(&l_expr, policy)?.max(BigInt::zero());
    Ok((m_min, l_min))
}

/// The per-k coefficient of the Type 2 lower bound m > coeff * a.
pub fn type2_coefficient(k: u32) -> Result<CReal> {
    let quarter = CReal::ratio_i64(1, 4);
    let expr = match k {
        7 => CReal::from_i64(14).sub(&CReal::sqrt_ratio(71, 10).mul_int(&BigInt::from(5))),
        8 => CReal::sqrt_int(&BigInt::from(8)).mul_int(&BigInt::from(6)).sub(&CReal::from_i64(16)),
        10 => CReal::from_i64(20).sub(&CReal::sqrt_ratio(101, 10).mul_int(&BigInt::from(6))),
        11 => CReal::sqrt_int(&BigInt::from(11)).mul_int(&BigInt::from(7)).sub(&CReal::from_i64(22)),
        12 => CReal::sqrt_int(&BigInt::from(12)).mul_int(&BigInt::from(7)).sub(&CReal::from_i64(24)),
        13 => CReal::from_i64(26).sub(&CReal::sqrt_ratio(131, 10).mul_int(&BigInt::from(7))),
        _ => return Err(Error::domain(format!("k = {k} outside the supported set"))),
    };
    Ok(expr.mul(&quarter))
}

/// Strict Type 2 lower bound: smallest integer m with m > coeff_k * a.
pub fn lower_bound_type2(a: &BigInt, k: u32, policy: &PrecisionPolicy) -> Result<BigInt> {
    let coeff = type2_coefficient(k)?;
    let value = coeff.mul_int(a);
    Ok(floor_certified(&value, policy)? + 1u32)
}

/// z-system index lower-bound expressions (on the full sequence index).
pub fn c3_even_threshold(b: &BigInt, c: &BigInt) -> CReal {
    // 2 * 0.495 * sqrt(c / b) = (99/100) sqrt(cb)/b
    CReal::ratio_i64(99, 100)
        .mul(&CReal::sqrt_int(&(b * c)))
        .div(&CReal::from_bigint(b))
}

pub fn c3_odd_threshold(b: &BigInt, c: &BigInt) -> CReal {
    // 2 * sqrt(0.0625) * c^(1/4) / sqrt(b) = (1/2) c^(1/4) / sqrt(b)
    CReal::ratio_i64(1, 2)
        .mul(&CReal::sqrt_int(c).sqrt())
        .div(&CReal::sqrt_int(b))
}

/// The six bound families with published p-range lists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum BoundFamily {
    C1Minus,
    C1Plus,
    C2Type1,
    C2Type2,
    C3Even,
    C3Odd,
}

impl BoundFamily {
    pub const ALL: [BoundFamily; 6] = [
        BoundFamily::C1Minus,
        BoundFamily::C1Plus,
        BoundFamily::C2Type1,
        BoundFamily::C2Type2,
        BoundFamily::C3Even,
        BoundFamily::C3Odd,
    ];
}

/// Index bounds for one (k, p, family) instance.
#[derive(Debug, Clone)]
pub struct IndexWindow {
    /// Lower bound on the governing index from the congruence lemmas.
    pub lower: BigInt,
    /// Upper bound on the governing index from the linear-form machinery.
    pub upper: BigInt,
    pub nonempty: bool,
}

/// log^2 of an exact positive rational scale * value.
fn log_sq(scale: (i64, i64), value: &BigInt) -> CReal {
    let l = CReal::ratio_i64(scale.0, scale.1).mul_int(value).ln();
    l.mul(&l)
}

/// Upper index bound for a concrete inner-family triple (bound on m).
pub fn upper_bound_c1_minus(a: &BigInt, policy: &PrecisionPolicy) -> Result<BigInt> {
    let k_bound = CReal::from_i64(consts::INDEX_C1M).mul(&log_sq(consts::LOG_SCALE_A, a));
    solve_index_inequality(&k_bound, IneqShape::XOverLogEx, policy)
}

/// Upper index bound for an outer-family triple (bound on l).
pub fn upper_bound_outer(c: &BigInt, type2: bool, policy: &PrecisionPolicy) -> Result<BigInt> {
    let coeff = if type2 { consts::INDEX_T2 } else { consts::INDEX_T1 };
    let k_bound = CReal::from_i64(coeff).mul(&log_sq(consts::LOG_SCALE_C, &(c * c)));
    solve_index_inequality(&k_bound, IneqShape::XOverLogEx, policy)
}

/// Upper index bound for the z-system (bound on the full v-index m).
pub fn upper_bound_z(c: &BigInt, policy: &PrecisionPolicy) -> Result<BigInt> {
    let k_bound = CReal::from_i64(consts::INDEX_Z).mul(&log_sq((1, 1), c));
    solve_index_inequality(&k_bound, IneqShape::XOverLogX1, policy)
}

fn c_of(k: u32, p: u32, sign: ExtSign, nu: u32) -> Result<BigInt> {
    let (a, _) = pair_element(k, p)?;
    let b = BigInt::from(k) * &a;
    Ok(extension_element(&a, &b, sign, nu)?.c_nu)
}

/// The index window for one (k, p) instance of a bound family. For the
/// c2 families the umbrella third element c_2^+ is used, making the window
/// valid for both signs; for the z-system the window is per sign.
pub fn index_window(
    k: u32,
    p: u32,
    family: BoundFamily,
    sign: Option<ExtSign>,
    policy: &PrecisionPolicy,
) -> Result<IndexWindow> {
    let (a, _) = pair_element(k, p)?;
    match family {
        BoundFamily::C1Minus => {
            let upper = upper_bound_c1_minus(&a, policy)?;
            let (m_min, _) = lower_bounds_type1(&a, policy)?;
            Ok(IndexWindow { nonempty: m_min <= upper, lower: m_min, upper })
        }
        BoundFamily::C1Plus => {
            let c = c_of(k, p, ExtSign::Plus, 1)?;
            let upper = upper_bound_outer(&c, false, policy)?;
            let (_, l_min) = lower_bounds_type1(&a, policy)?;
            Ok(IndexWindow { nonempty: l_min <= upper, lower: l_min, upper })
        }
        BoundFamily::C2Type1 => {
            let c = c_of(k, p, ExtSign::Plus, 2)?;
            let upper = upper_bound_outer(&c, false, policy)?;
            let (_, l_min) = lower_bounds_type1(&a, policy)?;
            Ok(IndexWindow { nonempty: l_min <= upper, lower: l_min, upper })
        }
        BoundFamily::C2Type2 => {
            let c = c_of(k, p, ExtSign::Plus, 2)?;
            let upper = upper_bound_outer(&c, true, policy)?;
            let m_min = lower_bound_type2(&a, k, policy)?;
            // m <= l, so the Type 2 lower bound on m also bounds l.
            Ok(IndexWindow { nonempty: m_min <= upper, lower: m_min, upper })
        }
        BoundFamily::C3Even | BoundFamily::C3Odd => {
            let sign = sign.ok_or_else(|| Error::domain("z-system window needs a sign"))?;
            let c = c_of(k, p, sign, 3)?;
            let b = BigInt::from(k) * &a;
            let upper = upper_bound_z(&c, policy)?;
            let k_bound = CReal::from_i64(consts::INDEX_Z).mul(&log_sq((1, 1), &c));
            let holds = if family == BoundFamily::C3Even {
                let x = c3_even_threshold(&b, &c);
                let f = x.div(&x.add(&CReal::one()).ln());
                compare_certified(&f, &k_bound, policy)? == CertifiedOrder::Less
            } else {
                let x = c3_odd_threshold(&b, &c);
                let f = x.add(&CReal::one()).div(&x.add(&CReal::from_i64(2)).ln());
                compare_certified(&f, &k_bound, policy)? == CertifiedOrder::Less
            };
            // The z-system windows are stated as satisfiability of the
            // threshold inequality rather than an integer window.
            let lower = BigInt::zero();
            Ok(IndexWindow { nonempty: holds, lower, upper })
        }
    }
}

/// Published-range reproduction for one (k, family): the largest p with a
/// non-empty window, and the index cap over the admissible p.
#[derive(Debug, Clone)]
pub struct FamilyRange {
    pub k: u32,
    pub family: BoundFamily,
    pub p_max: u32,
    pub index_cap: BigInt,
    /// Number of consecutive empty windows verified past p_max.
    pub empties_verified: u32,
}

/// Iterates p upward until the window stays empty, reproducing the
/// published per-family lists. `post_checks` extra empty windows are
/// verified past the crossover.
pub fn compute_p_ranges(
    k: u32,
    family: BoundFamily,
    post_checks: u32,
    policy: &PrecisionPolicy,
) -> Result<FamilyRange> {
    if !SUPPORTED_K.contains(&k) {
        return Err(Error::domain(format!("k = {k} outside the supported set")));
    }
    let fam = PairFamily::new(k)?;
    let _ = &fam;
    let mut p_max = 0u32;
    let mut cap = BigInt::zero();
    let mut empty_streak = 0u32;
    let mut p = 1u32;
    let streak_needed = post_checks.max(3);
    while empty_streak < streak_needed {
        let mut nonempty = false;
        let mut upper_here = BigInt::zero();
        match family {
            BoundFamily::C3Even | BoundFamily::C3Odd => {
                for sign in [ExtSign::Minus, ExtSign::Plus] {
                    let w = index_window(k, p, family, Some(sign), policy)?;
                    if w.nonempty {
                        nonempty = true;
                        upper_here = upper_here.max(w.upper);
                    }
                }
            }
            _ => {
                let w = index_window(k, p, family, None, policy)?;
                nonempty = w.nonempty;
                upper_here = w.upper;
            }
        }
        if nonempty {
            p_max = p;
            cap = cap.max(upper_here);
            empty_streak = 0;
        } else {
            empty_streak += 1;
        }
        p += 1;
        if p > 5000 {
            return Err(Error::invariant("p-range iteration did not terminate"));
        }
    }
    Ok(FamilyRange { k, family, p_max, index_cap: cap, empties_verified: empty_streak })
}
