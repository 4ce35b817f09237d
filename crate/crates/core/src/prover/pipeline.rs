//! Case enumeration and the per-case proof pipeline: classify fundamental
//! solutions, bound the governing index, reduce, search the residual
//! window exhaustively, and certify every hit as a regular or trivial
//! extension.

use super::certificate::{
    CaseCertificate, ClassRecord, HitRecord, HitTag, ReductionRecord, SearchRecord, StepRecord,
    Verdict, CERTIFICATE_SCHEMA,
};
use crate::bigmath::{compare_certified, CReal, CertifiedOrder, PrecisionPolicy};
use crate::d4core::{d_minus, d_plus, extension_element, is_d4_tuple, ExtSign, TripleRoots};
use crate::error::{Error, Result};
use crate::linforms::{
    compute_p_ranges, index_window, lower_bound_type2, lower_bounds_type1, upper_bound_c1_minus,
    upper_bound_outer, upper_bound_z, BoundFamily, LogFormInstance,
};
use crate::pell::pair_element;
use crate::reduction::{iterate_reduction, q_floor_for_degeneracies, ReductionCase, ReductionReport};
use crate::seqsys::{
    classify_fundamental, intersect_by_value, FundClass, IntersectionHit, RecurrenceSeq,
    SolutionType, SystemCase,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rayon::prelude::*;
use std::path::PathBuf;

/// The six concrete third-element families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    C1Minus,
    C1Plus,
    C2Minus,
    C2Plus,
    C3Minus,
    C3Plus,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::C1Minus,
        Family::C1Plus,
        Family::C2Minus,
        Family::C2Plus,
        Family::C3Minus,
        Family::C3Plus,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            Family::C1Minus => "c1-",
            Family::C1Plus => "c1+",
            Family::C2Minus => "c2-",
            Family::C2Plus => "c2+",
            Family::C3Minus => "c3-",
            Family::C3Plus => "c3+",
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        match s {
            "c1-" => Some(Family::C1Minus),
            "c1+" => Some(Family::C1Plus),
            "c2-" => Some(Family::C2Minus),
            "c2+" => Some(Family::C2Plus),
            "c3-" => Some(Family::C3Minus),
            "c3+" => Some(Family::C3Plus),
            _ => None,
        }
    }

    pub fn sign(&self) -> ExtSign {
        match self {
            Family::C1Minus | Family::C2Minus | Family::C3Minus => ExtSign::Minus,
            _ => ExtSign::Plus,
        }
    }

    pub fn nu(&self) -> u32 {
        match self {
            Family::C1Minus | Family::C1Plus => 1,
            Family::C2Minus | Family::C2Plus => 2,
            Family::C3Minus | Family::C3Plus => 3,
        }
    }

    fn is_inner(&self) -> bool {
        matches!(self, Family::C1Minus)
    }

    fn is_z_system(&self) -> bool {
        matches!(self, Family::C3Minus | Family::C3Plus)
    }
}

/// Run configuration shared by the CLI and the acceptance suite.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub ks: Vec<u32>,
    pub families: Vec<Family>,
    pub policy: PrecisionPolicy,
    pub out_dir: Option<PathBuf>,
    /// 0 = let the thread pool decide.
    pub jobs: usize,
    pub step_cap: u32,
    /// The small-index search always covers at least this many indices.
    pub small_index_max: u32,
    /// Empty windows verified past each family's p_max.
    pub post_window_checks: u32,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            ks: crate::pell::SUPPORTED_K.to_vec(),
            families: Family::ALL.to_vec(),
            policy: PrecisionPolicy::default(),
            out_dir: None,
            jobs: 0,
            step_cap: 8,
            small_index_max: 14,
            post_window_checks: 3,
        }
    }
}

/// Summary of one (k, family) sweep.
#[derive(Debug, Clone, serde::Serialize)]
pub struct FamilySummary {
    pub k: u32,
    pub family: String,
    pub bound_kind: String,
    pub p_max: u32,
    pub index_cap: String,
    pub post_window_empties: u32,
}

#[derive(Debug)]
pub struct RunReport {
    pub certificates: Vec<CaseCertificate>,
    pub summaries: Vec<FamilySummary>,
    pub all_regular: bool,
}

fn class_record(class: &FundClass) -> ClassRecord {
    ClassRecord {
        id: class.id(),
        z0: class.z0.to_string(),
        x0: class.x0.to_string(),
        z1: class.z1.to_string(),
        y1: class.y1.to_string(),
        y2: class.y2.to_string(),
        x2: class.x2.to_string(),
        type_tag: format!("{:?}", class.type_tag),
    }
}

fn reduction_record(initial: &BigInt, q_floor: &BigInt, report: &ReductionReport) -> ReductionRecord {
    ReductionRecord {
        initial_bound: initial.to_string(),
        convergent_floor: q_floor.to_string(),
        steps: report
            .steps
            .iter()
            .map(|s| StepRecord {
                q: s.q.to_string(),
                eta_lo: s.eta_lo.to_decimal(6),
                eta_hi: s.eta_hi.to_decimal(6),
                new_bound: s.new_m.to_string(),
                convergents_rejected: s.rejected,
            })
            .collect(),
        final_bound: report.final_m.to_string(),
    }
}

/// Tags one hit value as trivial / regular / irregular for the triple.
fn classify_hit(
    divisor: &BigInt,
    triple: &TripleRoots,
    dp: &BigInt,
    dm: &BigInt,
    hit: &IntersectionHit,
) -> Result<(BigInt, HitTag)> {
    let num = &hit.value * &hit.value - 4u32;
    let (d, rem) = num.div_rem(divisor);
    if !rem.is_zero() {
        return Err(Error::invariant(format!(
            "hit value {} does not induce an integral extension",
            hit.value
        )));
    }
    if d.is_zero() {
        return Ok((d, HitTag::Trivial));
    }
    if &d == dp {
        return Ok((d, HitTag::RegularPlus));
    }
    if &d == dm {
        return Ok((d, HitTag::RegularMinus));
    }
    // A surviving non-regular value must still be a genuine quadruple, or
    // the search itself is broken.
    let quad = is_d4_tuple(&[
        triple.a.clone(),
        triple.b.clone(),
        triple.c.clone(),
        d.clone(),
    ])?;
    if !quad {
        return Err(Error::invariant(format!(
            "hit value {} induced d = {d} which is not an extension",
            hit.value
        )));
    }
    Ok((d, HitTag::Irregular))
}

struct CaseOutcome {
    cert: CaseCertificate,
}

/// Runs the full per-case pipeline for one concrete (k, p, family, class)
/// and returns its certificate.
pub fn certify_single_case(
    k: u32,
    p: u32,
    family: Family,
    triple: &TripleRoots,
    class: &FundClass,
    bound_kind: BoundFamily,
    cfg: &RunConfig,
) -> Result<CaseCertificate> {
    certify_case(k, p, family, triple, class, bound_kind, cfg).map(|o| o.cert)
}

#[allow(clippy::too_many_arguments)]
fn certify_case(
    k: u32,
    p: u32,
    family: Family,
    triple: &TripleRoots,
    class: &FundClass,
    bound_kind: BoundFamily,
    cfg: &RunConfig,
) -> Result<CaseOutcome> {
    let policy = &cfg.policy;
    let inner = family.is_inner();
    let zsys = family.is_z_system();

    // Sequence pair with the governing sequence first.
    let (main_seq, other_seq, parity, index_variable) = if zsys {
        (
            RecurrenceSeq::v_seq(triple, class)?,
            RecurrenceSeq::w_seq(triple, class)?,
            (class.parity.0, class.parity.1),
            "m",
        )
    } else if inner {
        (
            RecurrenceSeq::q_seq(triple, class)?,
            RecurrenceSeq::p_seq(triple, class)?,
            (class.parity.1, class.parity.0),
            "m",
        )
    } else {
        (
            RecurrenceSeq::p_seq(triple, class)?,
            RecurrenceSeq::q_seq(triple, class)?,
            (class.parity.0, class.parity.1),
            "l",
        )
    };

    let small_hits = intersect_by_value(&main_seq, &other_seq, cfg.small_index_max, 200, parity);

    // Governing-index upper bound from the linear-form machinery.
    let initial_bound = if zsys {
        upper_bound_z(&triple.c, policy)?
    } else if inner {
        upper_bound_c1_minus(&triple.a, policy)?
    } else {
        upper_bound_outer(&triple.c, class.type_tag == SolutionType::Type2, policy)?
    };

    // Reduction parameters per system.
    let (kappa, mu, a_coeff, b_base) = if zsys {
        let half = CReal::ratio_i64(1, 2);
        let sa = CReal::sqrt_int(&triple.a);
        let sb = CReal::sqrt_int(&triple.b);
        let sc = CReal::sqrt_int(&triple.c);
        let beta = CReal::from_bigint(&triple.s)
            .add(&CReal::sqrt_int(&(&triple.a * &triple.c)))
            .mul(&half);
        let delta = CReal::from_bigint(&triple.t)
            .add(&CReal::sqrt_int(&(&triple.b * &triple.c)))
            .mul(&half);
        let p_side = CReal::from_bigint(&class.z0)
            .mul(&sa)
            .add(&CReal::from_bigint(&class.x0).mul(&sc));
        let r_side = CReal::from_bigint(&class.z1)
            .mul(&sb)
            .add(&CReal::from_bigint(&class.y1).mul(&sc));
        let gamma = p_side.mul(&sb).div(&r_side.mul(&sa));
        let log_delta = delta.ln();
        let kappa = beta.ln().div(&log_delta);
        let mu = gamma.ln().div(&log_delta);
        // A = X / (1 - X beta^-2) / log delta with X = 4(c - a)/P^2.
        let x = CReal::from_bigint(&(4u32 * (&triple.c - &triple.a))).div(&p_side.powi(2));
        let q1 = x.div(&beta.powi(2));
        if compare_certified(&q1, &CReal::one(), policy)? != CertifiedOrder::Less {
            return Err(Error::invariant("z-system shrink factor is not below one"));
        }
        let a_coeff = x.div(&CReal::one().sub(&q1)).div(&log_delta);
        (kappa, mu, a_coeff, beta.powi(2))
    } else {
        let inst = LogFormInstance::new(triple, class);
        let log_alpha = inst.alpha.ln();
        let log_beta = inst.beta.ln();
        if inner {
            let kappa = log_beta.div(&log_alpha);
            let mu = inst.gamma_prime.ln().div(&log_alpha);
            let a_coeff = CReal::ratio_i64(26, 10).div(&log_alpha);
            (kappa, mu, a_coeff, inst.beta.clone())
        } else {
            let kappa = log_alpha.div(&log_beta);
            let mu = inst.gamma.ln().div(&log_beta);
            let numerator = match class.type_tag {
                SolutionType::Type2 => {
                    CReal::ratio_i64(3, 2).mul_int(&(&triple.a * &triple.a))
                }
                _ => CReal::ratio_i64(26, 10),
            };
            let a_coeff = numerator.div(&log_beta);
            (kappa, mu, a_coeff, inst.alpha.clone())
        }
    };

    // The scan range must dominate the governing index of the small hits.
    let degeneracy_scan = small_hits
        .iter()
        .map(|h| h.i)
        .max()
        .unwrap_or(0)
        .max(cfg.small_index_max)
        + 2;
    let q_floor =
        q_floor_for_degeneracies(&kappa, &mu, degeneracy_scan, policy)?;
    let case = ReductionCase {
        kappa,
        mu,
        a_coeff,
        b_base,
        m_bound: initial_bound.clone(),
        q_floor: q_floor.clone(),
    };
    let report = iterate_reduction(&case, cfg.step_cap, policy)?;

    // Exhaustive search over the reduced window.
    let final_small: u32 = if report.final_m > BigInt::from(100_000u32) {
        return Err(Error::StepFailed(format!(
            "reduction left an unsearchable bound {}",
            report.final_m
        )));
    } else {
        report.final_m.to_string().parse::<u32>().unwrap_or(0)
    };
    let main_max = final_small.max(cfg.small_index_max);
    let hits = intersect_by_value(&main_seq, &other_seq, main_max, 200, parity);

    let divisor = if zsys { &triple.c } else { &triple.a };
    let dp = d_plus(&triple.a, &triple.b, &triple.c)?;
    let dm = d_minus(&triple.a, &triple.b, &triple.c)?;
    let mut hit_records = Vec::with_capacity(hits.len());
    let mut verdict = Verdict::RegularOnly;
    for hit in &hits {
        let (d, tag) = classify_hit(divisor, triple, &dp, &dm, hit)?;
        if tag == HitTag::Irregular {
            verdict = Verdict::Fail;
        }
        hit_records.push(HitRecord {
            main_index: hit.i,
            other_index: hit.j,
            value: hit.value.to_string(),
            d: d.to_string(),
            tag,
        });
    }

    // Window context for the certificate.
    let (window_nonempty, lower) = match bound_kind {
        BoundFamily::C3Even | BoundFamily::C3Odd => {
            let w = index_window(k, p, bound_kind, Some(family.sign()), policy)?;
            (w.nonempty, w.lower)
        }
        BoundFamily::C2Type2 => {
            let lb = lower_bound_type2(&triple.a, k, policy)?;
            let w = index_window(k, p, bound_kind, None, policy)?;
            (w.nonempty, lb)
        }
        BoundFamily::C1Minus => {
            let (m_min, _) = lower_bounds_type1(&triple.a, policy)?;
            let w = index_window(k, p, bound_kind, None, policy)?;
            (w.nonempty, m_min)
        }
        _ => {
            let (_, l_min) = lower_bounds_type1(&triple.a, policy)?;
            let w = index_window(k, p, bound_kind, None, policy)?;
            (w.nonempty, l_min)
        }
    };

    let cert = CaseCertificate {
        schema: CERTIFICATE_SCHEMA.to_string(),
        k,
        p,
        a: triple.a.to_string(),
        b: triple.b.to_string(),
        c: triple.c.to_string(),
        family: family.id().to_string(),
        class: class_record(class),
        index_variable: index_variable.to_string(),
        congruence_lower_bound: lower.to_string(),
        window_nonempty,
        reduction: reduction_record(&initial_bound, &q_floor, &report),
        search: SearchRecord { main_index_max: main_max, hits: hit_records },
        verdict,
        precision_base_digits: cfg.policy.base_digits,
        toolkit_version: env!("CARGO_PKG_VERSION").to_string(),
    };
    Ok(CaseOutcome { cert })
}

/// A FAIL certificate carrying the diagnostic when a pipeline stage errors.
fn failure_certificate(
    k: u32,
    p: u32,
    family: Family,
    class: Option<&FundClass>,
    err: &Error,
    cfg: &RunConfig,
) -> CaseCertificate {
    CaseCertificate {
        schema: CERTIFICATE_SCHEMA.to_string(),
        k,
        p,
        a: String::new(),
        b: String::new(),
        c: String::new(),
        family: family.id().to_string(),
        class: class.map(class_record).unwrap_or(ClassRecord {
            id: "unknown".into(),
            z0: String::new(),
            x0: String::new(),
            z1: String::new(),
            y1: String::new(),
            y2: String::new(),
            x2: String::new(),
            type_tag: String::new(),
        }),
        index_variable: String::new(),
        congruence_lower_bound: String::new(),
        window_nonempty: false,
        reduction: ReductionRecord {
            initial_bound: String::new(),
            convergent_floor: String::new(),
            steps: Vec::new(),
            final_bound: format!("error: {err}"),
        },
        search: SearchRecord { main_index_max: 0, hits: Vec::new() },
        verdict: Verdict::Fail,
        precision_base_digits: cfg.policy.base_digits,
        toolkit_version: env!("CARGO_PKG_VERSION").to_string(),
    }
}

/// The triple for one (k, p, family).
pub fn family_triple(k: u32, p: u32, family: Family) -> Result<TripleRoots> {
    let (a, _) = pair_element(k, p)?;
    let b = BigInt::from(k) * &a;
    let ext = extension_element(&a, &b, family.sign(), family.nu())?;
    if ext.degenerate {
        return Err(Error::domain(format!(
            "c_{} is degenerate for (k, p) = ({k}, {p})",
            family.nu()
        )));
    }
    TripleRoots::new(&a, &b, &ext.c_nu)
}

/// The admissible classes for one triple of a family, with the bound-family
/// kind attached to each.
pub fn family_classes(
    triple: &TripleRoots,
    family: Family,
) -> Result<Vec<(FundClass, BoundFamily)>> {
    let mut out = Vec::new();
    match family {
        Family::C1Minus => {
            for c in classify_fundamental(triple, SystemCase::PqType1, true)? {
                out.push((c, BoundFamily::C1Minus));
            }
            // The Type 2 branch must be vacuous here; this also re-verifies
            // (cr - st)/2 = ±2 exactly.
            let t2 = classify_fundamental(triple, SystemCase::PqType2, true)?;
            if !t2.is_empty() {
                return Err(Error::invariant("inner family admitted Type 2 classes"));
            }
        }
        Family::C1Plus => {
            for c in classify_fundamental(triple, SystemCase::PqType1, true)? {
                out.push((c, BoundFamily::C1Plus));
            }
            let t2 = classify_fundamental(triple, SystemCase::PqType2, true)?;
            if !t2.is_empty() {
                return Err(Error::invariant("inner family admitted Type 2 classes"));
            }
        }
        Family::C2Minus | Family::C2Plus => {
            for c in classify_fundamental(triple, SystemCase::PqType1, false)? {
                out.push((c, BoundFamily::C2Type1));
            }
            for c in classify_fundamental(triple, SystemCase::PqType2, false)? {
                out.push((c, BoundFamily::C2Type2));
            }
        }
        Family::C3Minus | Family::C3Plus => {
            for c in classify_fundamental(triple, SystemCase::VwEvenEven, false)? {
                out.push((c, BoundFamily::C3Even));
            }
            for c in classify_fundamental(triple, SystemCase::VwOddOdd, false)? {
                out.push((c, BoundFamily::C3Odd));
            }
        }
    }
    Ok(out)
}

/// Proves every case of one family for one k and returns the certificates
/// plus the family summaries.
pub fn prove_family(
    k: u32,
    family: Family,
    cfg: &RunConfig,
) -> Result<(Vec<CaseCertificate>, Vec<FamilySummary>)> {
    let mut summaries = Vec::new();
    let p_max = match family {
        Family::C1Minus => {
            let r = compute_p_ranges(k, BoundFamily::C1Minus, cfg.post_window_checks, &cfg.policy)?;
            summaries.push(FamilySummary {
                k,
                family: family.id().into(),
                bound_kind: "inner".into(),
                p_max: r.p_max,
                index_cap: r.index_cap.to_string(),
                post_window_empties: r.empties_verified,
            });
            r.p_max
        }
        Family::C1Plus => {
            let r = compute_p_ranges(k, BoundFamily::C1Plus, cfg.post_window_checks, &cfg.policy)?;
            summaries.push(FamilySummary {
                k,
                family: family.id().into(),
                bound_kind: "outer-first".into(),
                p_max: r.p_max,
                index_cap: r.index_cap.to_string(),
                post_window_empties: r.empties_verified,
            });
            r.p_max
        }
        Family::C2Minus | Family::C2Plus => {
            let r1 = compute_p_ranges(k, BoundFamily::C2Type1, cfg.post_window_checks, &cfg.policy)?;
            let r2 = compute_p_ranges(k, BoundFamily::C2Type2, cfg.post_window_checks, &cfg.policy)?;
            summaries.push(FamilySummary {
                k,
                family: family.id().into(),
                bound_kind: "outer-second-type1".into(),
                p_max: r1.p_max,
                index_cap: r1.index_cap.to_string(),
                post_window_empties: r1.empties_verified,
            });
            summaries.push(FamilySummary {
                k,
                family: family.id().into(),
                bound_kind: "outer-second-type2".into(),
                p_max: r2.p_max,
                index_cap: r2.index_cap.to_string(),
                post_window_empties: r2.empties_verified,
            });
            r1.p_max.max(r2.p_max)
        }
        Family::C3Minus | Family::C3Plus => {
            let re = compute_p_ranges(k, BoundFamily::C3Even, cfg.post_window_checks, &cfg.policy)?;
            let ro = compute_p_ranges(k, BoundFamily::C3Odd, cfg.post_window_checks, &cfg.policy)?;
            summaries.push(FamilySummary {
                k,
                family: family.id().into(),
                bound_kind: "z-even".into(),
                p_max: re.p_max,
                index_cap: re.index_cap.to_string(),
                post_window_empties: re.empties_verified,
            });
            summaries.push(FamilySummary {
                k,
                family: family.id().into(),
                bound_kind: "z-odd".into(),
                p_max: ro.p_max,
                index_cap: ro.index_cap.to_string(),
                post_window_empties: ro.empties_verified,
            });
            re.p_max.max(ro.p_max)
        }
    };

    // Case descriptors first, proved in parallel.
    let mut descriptors: Vec<(u32, FundClass, BoundFamily)> = Vec::new();
    for p in 1..=p_max {
        let triple = family_triple(k, p, family)?;
        for (class, kind) in family_classes(&triple, family)? {
            descriptors.push((p, class, kind));
        }
    }
    let certs: Vec<CaseCertificate> = descriptors
        .par_iter()
        .map(|(p, class, kind)| {
            let triple = match family_triple(k, *p, family) {
                Ok(t) => t,
                Err(e) => return failure_certificate(k, *p, family, Some(class), &e, cfg),
            };
            match certify_case(k, *p, family, &triple, class, *kind, cfg) {
                Ok(outcome) => outcome.cert,
                Err(e) => failure_certificate(k, *p, family, Some(class), &e, cfg),
            }
        })
        .collect();
    Ok((certs, summaries))
}

/// Runs the whole configured sweep, optionally writing certificates and a
/// CSV summary, and reports whether every verdict is REGULAR-ONLY.
pub fn prove_all(cfg: &RunConfig) -> Result<RunReport> {
    let run = || -> Result<RunReport> {
        let mut certificates = Vec::new();
        let mut summaries = Vec::new();
        for &k in &cfg.ks {
            for &family in &cfg.families {
                let (mut certs, mut sums) = prove_family(k, family, cfg)?;
                certificates.append(&mut certs);
                summaries.append(&mut sums);
            }
        }
        let all_regular = certificates.iter().all(|c| c.verdict == Verdict::RegularOnly);
        Ok(RunReport { certificates, summaries, all_regular })
    };
    let report = if cfg.jobs > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.jobs)
            .build()
            .map_err(|e| Error::domain(format!("thread pool: {e}")))?
            .install(run)?
    } else {
        run()?
    };
    if let Some(dir) = &cfg.out_dir {
        std::fs::create_dir_all(dir)
            .map_err(|e| Error::domain(format!("creating {}: {e}", dir.display())))?;
        for cert in &report.certificates {
            let path = dir.join(cert.file_name());
            std::fs::write(&path, cert.to_json())
                .map_err(|e| Error::domain(format!("writing {}: {e}", path.display())))?;
        }
        let mut csv = String::from(super::certificate::CSV_HEADER);
        csv.push('\n');
        for cert in &report.certificates {
            csv.push_str(&cert.csv_row());
            csv.push('\n');
        }
        std::fs::write(dir.join("summary.csv"), csv)
            .map_err(|e| Error::domain(format!("writing summary: {e}")))?;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> RunConfig {
        RunConfig::default()
    }

    #[test]
    fn single_case_inner_regular() {
        // (k, p) = (7, 1): triple {6, 42, 16}; the regular class finds
        // exactly (0,0) trivial and (2,2) regular-plus.
        let triple = family_triple(7, 1, Family::C1Minus).unwrap();
        assert_eq!(triple.c, BigInt::from(16));
        let classes = family_classes(&triple, Family::C1Minus).unwrap();
        assert_eq!(classes.len(), 4);
        let mut regular_seen = false;
        for (class, kind) in &classes {
            let out = certify_case(7, 1, Family::C1Minus, &triple, class, *kind, &cfg()).unwrap();
            assert_eq!(out.cert.verdict, Verdict::RegularOnly);
            let final_bound: u32 = out.cert.reduction.final_bound.parse().unwrap();
            assert!(final_bound <= 11, "final bound {final_bound}");
            for hit in &out.cert.search.hits {
                match hit.tag {
                    HitTag::Trivial => assert_eq!(hit.d, "0"),
                    HitTag::RegularPlus => {
                        regular_seen = true;
                        assert_eq!((hit.main_index, hit.other_index), (2, 2));
                        assert_eq!(hit.d, "4160");
                    }
                    other => panic!("unexpected hit tag {other:?}"),
                }
            }
        }
        assert!(regular_seen);
    }

    #[test]
    fn single_case_outer_second_type2() {
        // (k, p) = (7, 1), family c2-: triple {6, 42, 4160}; Type 2 classes
        // carry the regular (1,1) and (3,1) hits.
        let triple = family_triple(7, 1, Family::C2Minus).unwrap();
        assert_eq!(triple.c, BigInt::from(4160));
        let classes = family_classes(&triple, Family::C2Minus).unwrap();
        assert_eq!(classes.len(), 8);
        let mut regular = Vec::new();
        for (class, kind) in &classes {
            let out = certify_case(7, 1, Family::C2Minus, &triple, class, *kind, &cfg()).unwrap();
            assert_eq!(out.cert.verdict, Verdict::RegularOnly);
            let final_bound: u32 = out.cert.reduction.final_bound.parse().unwrap();
            assert!(final_bound <= 8, "final bound {final_bound}");
            for hit in &out.cert.search.hits {
                if matches!(hit.tag, HitTag::RegularPlus | HitTag::RegularMinus) {
                    regular.push((hit.main_index, hit.other_index, hit.tag));
                }
            }
        }
        assert!(regular.contains(&(1, 1, HitTag::RegularMinus)));
        assert!(regular.contains(&(3, 1, HitTag::RegularPlus)));
    }

    #[test]
    fn single_case_z_system() {
        // (k, p) = (7, 1), family c3-: triple {6, 42, c_3^-}.
        let triple = family_triple(7, 1, Family::C3Minus).unwrap();
        let classes = family_classes(&triple, Family::C3Minus).unwrap();
        assert_eq!(classes.len(), 4);
        let mut tags = Vec::new();
        for (class, kind) in &classes {
            let out = certify_case(7, 1, Family::C3Minus, &triple, class, *kind, &cfg()).unwrap();
            assert_eq!(out.cert.verdict, Verdict::RegularOnly);
            for hit in &out.cert.search.hits {
                tags.push(hit.tag);
                // The paper-level window: every z-system hit sits at tiny
                // indices.
                assert!(hit.main_index <= 2 && hit.other_index <= 2);
            }
        }
        assert!(tags.contains(&HitTag::RegularPlus) || tags.contains(&HitTag::RegularMinus));
    }

    #[test]
    fn certificates_deterministic() {
        let triple = family_triple(7, 2, Family::C1Minus).unwrap();
        let classes = family_classes(&triple, Family::C1Minus).unwrap();
        let (class, kind) = &classes[0];
        let a = certify_case(7, 2, Family::C1Minus, &triple, class, *kind, &cfg()).unwrap();
        let b = certify_case(7, 2, Family::C1Minus, &triple, class, *kind, &cfg()).unwrap();
        assert_eq!(a.cert.to_json(), b.cert.to_json());
    }
}
