//! The binary recurrences attached to a D(4)-triple, classification of
//! their admissible fundamental solutions, exhaustive intersection search,
//! and the mod-a^2 congruence filters.
//!
//! Sequence roles, with (a, b, c) the triple in role order and (r, s, t)
//! the witness roots:
//!
//! - `V` (coeff s) and `W` (coeff t): the z-coordinate of the (a,c)- and
//!   (b,c)-equations; their intersections z = v_m = w_n drive the outer
//!   families.
//! - `Q` (coeff s) and `P` (coeff r): the x-coordinate of the (a,c)- and
//!   (a,b)-equations; x = Q_m = P_l drives the inner families.
//! - `A` (coeff t) and `B` (coeff r): the y-coordinate pair, kept for
//!   classification tests.

use crate::d4core::TripleRoots;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Which recurrence a sequence instance is.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeqKind {
    V,
    W,
    A,
    B,
    P,
    Q,
}

/// A second-order linear recurrence u_{i+2} = coeff u_{i+1} - u_i.
#[derive(Debug, Clone)]
pub struct RecurrenceSeq {
    pub kind: SeqKind,
    pub coeff: BigInt,
    pub seed0: BigInt,
    pub seed1: BigInt,
}

/// Solution type of the x = Q_m = P_l system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum SolutionType {
    /// l and m both even; z0 = ±2, x0 = 2, y2 = ±2, x2 = 2.
    Type1,
    /// m odd; z0 = ±t, x0 = r, y2 = ±2, x2 = 2.
    Type2,
    /// z = v_m = w_n classes (even/even or odd/odd).
    General,
}

/// A fundamental-solution assignment for the three Pellian coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FundClass {
    pub z0: BigInt,
    pub x0: BigInt,
    pub z1: BigInt,
    pub y1: BigInt,
    pub y2: BigInt,
    pub x2: BigInt,
    pub type_tag: SolutionType,
    /// Residues both indices must satisfy mod 2 (index of the first and
    /// second sequence of the governing intersection), None = unconstrained.
    pub parity: (Option<u8>, Option<u8>),
}

impl FundClass {
    /// Stable identifier for filenames and CLI arguments.
    pub fn id(&self) -> String {
        let sgn = |v: &BigInt| if v.is_negative() { "m" } else { "p" };
        match self.type_tag {
            SolutionType::Type1 => format!("t1z{}y{}", sgn(&self.z0), sgn(&self.y2)),
            SolutionType::Type2 => format!("t2z{}y{}", sgn(&self.z0), sgn(&self.y2)),
            SolutionType::General => {
                let par = if self.parity == (Some(0), Some(0)) { "ee" } else { "oo" };
                format!("vw{}z{}", par, sgn(&self.z0))
            }
        }
    }
}

/// Which intersection system a classification targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SystemCase {
    /// x = Q_m = P_l, Type 1 classes.
    PqType1,
    /// x = Q_m = P_l, Type 2 classes.
    PqType2,
    /// z = v_m = w_n with both indices even.
    VwEvenEven,
    /// z = v_m = w_n with both indices odd.
    VwOddOdd,
}

/// Admissible fundamental-solution classes for a triple and a system case.
///
/// For c = c_1^± only Type 1 occurs for the PQ system: (cr - st)/2 = ±2
/// collapses the second alternative, which is re-verified here exactly when
/// the caller says so.
pub fn classify_fundamental(
    triple: &TripleRoots,
    case: SystemCase,
    c_is_c1: bool,
) -> Result<Vec<FundClass>> {
    let two = BigInt::from(2);
    let mut out = Vec::new();
    match case {
        SystemCase::PqType1 => {
            for z_sign in [1i32, -1] {
                for y_sign in [1i32, -1] {
                    out.push(FundClass {
                        z0: if z_sign > 0 { two.clone() } else { -&two },
                        x0: two.clone(),
                        z1: if z_sign > 0 { two.clone() } else { -&two },
                        y1: two.clone(),
                        y2: if y_sign > 0 { two.clone() } else { -&two },
                        x2: two.clone(),
                        type_tag: SolutionType::Type1,
                        parity: (Some(0), Some(0)),
                    });
                }
            }
        }
        SystemCase::PqType2 => {
            if c_is_c1 {
                // (cr - st)/2 must be ±2 for c = c_1^±; Type 2 is vacuous.
                let half = (&triple.c * &triple.r - &triple.s * &triple.t) / &two;
                if half.magnitude() != two.magnitude() {
                    return Err(Error::invariant(format!(
                        "(cr - st)/2 = {half} but c was declared a c_1 family member"
                    )));
                }
                return Ok(out);
            }
            for z_sign in [1i32, -1] {
                for y_sign in [1i32, -1] {
                    out.push(FundClass {
                        z0: if z_sign > 0 { triple.t.clone() } else { -&triple.t },
                        x0: triple.r.clone(),
                        z1: BigInt::zero(),
                        y1: BigInt::zero(),
                        y2: if y_sign > 0 { two.clone() } else { -&two },
                        x2: two.clone(),
                        type_tag: SolutionType::Type2,
                        parity: (None, Some(1)),
                    });
                }
            }
        }
        SystemCase::VwEvenEven => {
            for sign in [1i32, -1] {
                let z = if sign > 0 { two.clone() } else { -&two };
                out.push(FundClass {
                    z0: z.clone(),
                    x0: two.clone(),
                    z1: z,
                    y1: two.clone(),
                    y2: BigInt::zero(),
                    x2: BigInt::zero(),
                    type_tag: SolutionType::General,
                    parity: (Some(0), Some(0)),
                });
            }
        }
        SystemCase::VwOddOdd => {
            for sign in [1i32, -1] {
                out.push(FundClass {
                    z0: if sign > 0 { triple.t.clone() } else { -&triple.t },
                    x0: triple.r.clone(),
                    z1: if sign > 0 { triple.s.clone() } else { -&triple.s },
                    y1: triple.r.clone(),
                    y2: BigInt::zero(),
                    x2: BigInt::zero(),
                    type_tag: SolutionType::General,
                    parity: (Some(1), Some(1)),
                });
            }
        }
    }
    Ok(out)
}

fn half_exact(n: BigInt, what: &str) -> Result<BigInt> {
    if n.is_odd() {
        return Err(Error::invariant(format!("{what} seed is not integral")));
    }
    Ok(n / 2u32)
}

impl RecurrenceSeq {
    /// Q over the (a, c) equation: Q_0 = x0, Q_1 = (s x0 + a z0)/2.
    pub fn q_seq(triple: &TripleRoots, class: &FundClass) -> Result<Self> {
        let seed1 = half_exact(&triple.s * &class.x0 + &triple.a * &class.z0, "Q")?;
        Ok(RecurrenceSeq {
            kind: SeqKind::Q,
            coeff: triple.s.clone(),
            seed0: class.x0.clone(),
            seed1,
        })
    }

    /// P over the (a, b) equation: P_0 = x2, P_1 = (r x2 + a y2)/2.
    pub fn p_seq(triple: &TripleRoots, class: &FundClass) -> Result<Self> {
        let seed1 = half_exact(&triple.r * &class.x2 + &triple.a * &class.y2, "P")?;
        Ok(RecurrenceSeq {
            kind: SeqKind::P,
            coeff: triple.r.clone(),
            seed0: class.x2.clone(),
            seed1,
        })
    }

    /// V over the (a, c) equation: v_0 = z0, v_1 = (s z0 + c x0)/2.
    pub fn v_seq(triple: &TripleRoots, class: &FundClass) -> Result<Self> {
        let seed1 = half_exact(&triple.s * &class.z0 + &triple.c * &class.x0, "V")?;
        Ok(RecurrenceSeq {
            kind: SeqKind::V,
            coeff: triple.s.clone(),
            seed0: class.z0.clone(),
            seed1,
        })
    }

    /// W over the (b, c) equation: w_0 = z1, w_1 = (t z1 + c y1)/2.
    pub fn w_seq(triple: &TripleRoots, class: &FundClass) -> Result<Self> {
        let seed1 = half_exact(&triple.t * &class.z1 + &triple.c * &class.y1, "W")?;
        Ok(RecurrenceSeq {
            kind: SeqKind::W,
            coeff: triple.t.clone(),
            seed0: class.z1.clone(),
            seed1,
        })
    }

    /// A over the (b, c) equation: A_0 = y1, A_1 = (t y1 + b z1)/2.
    pub fn a_seq(triple: &TripleRoots, class: &FundClass) -> Result<Self> {
        let seed1 = half_exact(&triple.t * &class.y1 + &triple.b * &class.z1, "A")?;
        Ok(RecurrenceSeq {
            kind: SeqKind::A,
            coeff: triple.t.clone(),
            seed0: class.y1.clone(),
            seed1,
        })
    }

    /// B over the (a, b) equation: B_0 = y2, B_1 = (r y2 + b x2)/2.
    pub fn b_seq(triple: &TripleRoots, class: &FundClass) -> Result<Self> {
        let seed1 = half_exact(&triple.r * &class.y2 + &triple.b * &class.x2, "B")?;
        Ok(RecurrenceSeq {
            kind: SeqKind::B,
            coeff: triple.r.clone(),
            seed0: class.y2.clone(),
            seed1,
        })
    }

    /// Exact i-th term.
    pub fn term(&self, i: u32) -> BigInt {
        let mut prev = self.seed0.clone();
        let mut cur = self.seed1.clone();
        if i == 0 {
            return prev;
        }
        for _ in 1..i {
            let next = &self.coeff * &cur - &prev;
            prev = std::mem::replace(&mut cur, next);
        }
        cur
    }

    /// Terms 0..=i_max.
    pub fn terms(&self, i_max: u32) -> Vec<BigInt> {
        let mut out = Vec::with_capacity(i_max as usize + 1);
        let mut prev = self.seed0.clone();
        let mut cur = self.seed1.clone();
        out.push(prev.clone());
        for _ in 0..i_max {
            out.push(cur.clone());
            let next = &self.coeff * &cur - &prev;
            prev = std::mem::replace(&mut cur, next);
        }
        out
    }

    /// Terms while they stay at most `cap`, up to index i_max.
    pub fn terms_below(&self, cap: &BigInt, i_max: u32) -> Vec<BigInt> {
        let mut out = Vec::new();
        let mut prev = self.seed0.clone();
        let mut cur = self.seed1.clone();
        if &prev > cap {
            return out;
        }
        out.push(prev.clone());
        let mut idx = 0;
        while idx < i_max && &cur <= cap {
            out.push(cur.clone());
            let next = &self.coeff * &cur - &prev;
            prev = std::mem::replace(&mut cur, next);
            idx += 1;
        }
        out
    }
}

/// An index pair where two sequences take the same value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionHit {
    /// Index in the first sequence.
    pub i: u32,
    /// Index in the second sequence.
    pub j: u32,
    pub value: BigInt,
}

/// All equal-value index pairs (i, j) with i <= i_max, j <= j_max,
/// respecting the parity filter `(i mod 2, j mod 2)`.
///
/// Terms can dip at the head (seed1 below seed0 for negative z0), so the
/// search compares all generated terms rather than assuming monotonicity
/// from index 0.
pub fn intersect(
    seq1: &RecurrenceSeq,
    seq2: &RecurrenceSeq,
    i_max: u32,
    j_max: u32,
    parity: (Option<u8>, Option<u8>),
) -> Vec<IntersectionHit> {
    let t1 = seq1.terms(i_max);
    let t2 = seq2.terms(j_max);
    let mut hits = Vec::new();
    // Sort-merge on values; sequences are strictly increasing after the
    // first couple of indices, so this is near-linear.
    let mut idx1: Vec<usize> = (0..t1.len()).collect();
    idx1.sort_by(|&x, &y| t1[x].cmp(&t1[y]));
    let mut idx2: Vec<usize> = (0..t2.len()).collect();
    idx2.sort_by(|&x, &y| t2[x].cmp(&t2[y]));
    let (mut p1, mut p2) = (0usize, 0usize);
    while p1 < idx1.len() && p2 < idx2.len() {
        let v1 = &t1[idx1[p1]];
        let v2 = &t2[idx2[p2]];
        match v1.cmp(v2) {
            std::cmp::Ordering::Less => p1 += 1,
            std::cmp::Ordering::Greater => p2 += 1,
            std::cmp::Ordering::Equal => {
                // Collect every equal-valued index on both sides.
                let mut e1 = p1;
                while e1 < idx1.len() && &t1[idx1[e1]] == v1 {
                    e1 += 1;
                }
                let mut e2 = p2;
                while e2 < idx2.len() && &t2[idx2[e2]] == v1 {
                    e2 += 1;
                }
                for x in p1..e1 {
                    for y in p2..e2 {
                        let (i, j) = (idx1[x] as u32, idx2[y] as u32);
                        if parity.0.map(|r| i % 2 == r as u32).unwrap_or(true)
                            && parity.1.map(|r| j % 2 == r as u32).unwrap_or(true)
                        {
                            hits.push(IntersectionHit { i, j, value: v1.clone() });
                        }
                    }
                }
                p1 = e1;
                p2 = e2;
            }
        }
    }
    hits.sort_by_key(|h| (h.i, h.j));
    hits
}

/// Intersection where the first sequence's index is bounded and the second
/// is scanned by value until it overtakes the largest first-sequence term.
pub fn intersect_by_value(
    seq1: &RecurrenceSeq,
    seq2: &RecurrenceSeq,
    i_max: u32,
    j_cap: u32,
    parity: (Option<u8>, Option<u8>),
) -> Vec<IntersectionHit> {
    let t1 = seq1.terms(i_max);
    let cap = t1.iter().max().cloned().unwrap_or_else(BigInt::zero);
    let t2 = seq2.terms_below(&cap, j_cap);
    let mut hits = Vec::new();
    for (j, v2) in t2.iter().enumerate() {
        for (i, v1) in t1.iter().enumerate() {
            if v1 == v2 {
                let (i, j) = (i as u32, j as u32);
                if parity.0.map(|r| i % 2 == r as u32).unwrap_or(true)
                    && parity.1.map(|r| j % 2 == r as u32).unwrap_or(true)
                {
                    hits.push(IntersectionHit { i, j, value: v1.clone() });
                }
            }
        }
    }
    hits.sort_by_key(|h| (h.i, h.j));
    hits
}

/// Verifies the even-index congruences
/// Q_{2m} = x0 + (a/2)(c x0 m^2 + s z0 m) and
/// P_{2l} = x2 + (a/2)(b x2 l^2 + r y2 l)
/// modulo a^2 (odd a) or a^2/2 (even a), for all indices up to idx_max.
pub fn verify_congruences(triple: &TripleRoots, class: &FundClass, idx_max: u32) -> Result<()> {
    let a = &triple.a;
    let a2 = a * a;
    let modulus = if a.is_even() { &a2 / 2u32 } else { a2.clone() };
    let check = |seq: &RecurrenceSeq, base: &BigInt, quad: &BigInt, lin: &BigInt| -> Result<()> {
        for m in 0..=idx_max {
            let term = seq.term(2 * m);
            let mbig = BigInt::from(m);
            let inner = quad * &mbig * &mbig + lin * &mbig;
            let scaled = a * &inner;
            let half = if scaled.is_even() {
                &scaled / 2u32
            } else if modulus.is_odd() {
                // Multiply by the inverse of 2 mod the modulus: equivalently
                // (scaled + modulus)/2 since modulus is odd.
                (&scaled + &modulus) / 2u32
            } else {
                return Err(Error::invariant("congruence term is not halvable"));
            };
            let lhs = (&term - base - &half).mod_floor(&modulus);
            if !lhs.is_zero() {
                return Err(Error::invariant(format!(
                    "congruence failed for {:?} at index {m}",
                    seq.kind
                )));
            }
        }
        Ok(())
    };
    let q = RecurrenceSeq::q_seq(triple, class)?;
    check(&q, &class.x0, &(&triple.c * &class.x0), &(&triple.s * &class.z0))?;
    let p = RecurrenceSeq::p_seq(triple, class)?;
    check(&p, &class.x2, &(&triple.b * &class.x2), &(&triple.r * &class.y2))?;
    Ok(())
}

/// Index-relation side conditions for hits: l <= m on the inner family
/// (first index l at least 1), m <= l on the outer ones (second index m at
/// least 3), and n - 1 <= m <= 2n + 1 for the z-system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexRelation {
    LAtMostM,
    MAtMostL,
    VwWindow,
}

pub fn index_relation_check(hit_i: u32, hit_j: u32, relation: IndexRelation) -> bool {
    match relation {
        // hit over (P_l, Q_m) with (i, j) = (l, m)
        IndexRelation::LAtMostM => hit_i < 1 || hit_i <= hit_j,
        IndexRelation::MAtMostL => hit_j < 3 || hit_j <= hit_i,
        // hit over (v_m, w_n) with (i, j) = (m, n)
        IndexRelation::VwWindow => {
            let (m, n) = (hit_i, hit_j);
            n.saturating_sub(1) <= m && m <= 2 * n + 1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn triple_6_42_16() -> TripleRoots {
        TripleRoots::new(&bi(6), &bi(42), &bi(16)).unwrap()
    }

    #[test]
    fn classification_c1_minus_is_type1_only() {
        let t = triple_6_42_16();
        // (cr - st)/2 = (16*16 - 10*26)/2 = -2.
        assert_eq!((&t.c * &t.r - &t.s * &t.t) / 2, bi(-2));
        let t1 = classify_fundamental(&t, SystemCase::PqType1, true).unwrap();
        assert_eq!(t1.len(), 4);
        let t2 = classify_fundamental(&t, SystemCase::PqType2, true).unwrap();
        assert!(t2.is_empty());
    }

    #[test]
    fn classification_vw_cases() {
        let t = triple_6_42_16();
        let ee = classify_fundamental(&t, SystemCase::VwEvenEven, false).unwrap();
        assert_eq!(ee.len(), 2);
        assert!(ee.iter().all(|c| c.z0 == c.z1 && c.x0 == bi(2) && c.y1 == bi(2)));
        let oo = classify_fundamental(&t, SystemCase::VwOddOdd, false).unwrap();
        assert_eq!(oo.len(), 2);
        for c in &oo {
            assert_eq!(c.x0, t.r);
            assert_eq!(c.y1, t.r);
            assert!(c.z0.sign() == c.z1.sign());
            assert_eq!(c.z0.magnitude(), t.t.magnitude());
            assert_eq!(c.z1.magnitude(), t.s.magnitude());
        }
    }

    #[test]
    fn seq_seed_examples() {
        let t = triple_6_42_16();
        // Q over {6,42,16} with (z0, x0) = (2, 2): 2, 16, 158.
        let class = FundClass {
            z0: bi(2),
            x0: bi(2),
            z1: bi(2),
            y1: bi(2),
            y2: bi(-2),
            x2: bi(2),
            type_tag: SolutionType::Type1,
            parity: (Some(0), Some(0)),
        };
        let q = RecurrenceSeq::q_seq(&t, &class).unwrap();
        assert_eq!(q.term(0), bi(2));
        assert_eq!(q.term(1), bi(16));
        assert_eq!(q.term(2), bi(158));
        // P over {6,42} with (y2, x2) = (-2, 2): 2, 10, 158.
        let p = RecurrenceSeq::p_seq(&t, &class).unwrap();
        assert_eq!(p.term(0), bi(2));
        assert_eq!(p.term(1), bi(10));
        assert_eq!(p.term(2), bi(158));
    }

    #[test]
    fn intersect_regular_hit() {
        let t = triple_6_42_16();
        let class = FundClass {
            z0: bi(2),
            x0: bi(2),
            z1: bi(2),
            y1: bi(2),
            y2: bi(-2),
            x2: bi(2),
            type_tag: SolutionType::Type1,
            parity: (Some(0), Some(0)),
        };
        let p = RecurrenceSeq::p_seq(&t, &class).unwrap();
        let q = RecurrenceSeq::q_seq(&t, &class).unwrap();
        let hits = intersect(&p, &q, 12, 12, class.parity);
        let pairs: Vec<(u32, u32)> = hits.iter().map(|h| (h.i, h.j)).collect();
        assert_eq!(pairs, vec![(0, 0), (2, 2)]);
        assert_eq!(hits[1].value, bi(158));
        // d = (158^2 - 4)/6 = 4160: the regular extension.
        assert_eq!((&hits[1].value * &hits[1].value - 4u32) / 6u32, bi(4160));
    }

    #[test]
    fn intersect_type2_hits_on_c2() {
        // Triple {6, 42, 4160} = c_2^-; the d_- and d_+ extensions appear at
        // (l, m) = (1, 1) and (3, 1) in the two z0 signs.
        let t = TripleRoots::new(&bi(6), &bi(42), &bi(4160)).unwrap();
        assert_eq!((t.r.clone(), t.s.clone(), t.t.clone()), (bi(16), bi(158), bi(418)));
        let classes = classify_fundamental(&t, SystemCase::PqType2, false).unwrap();
        let mut found = Vec::new();
        for class in &classes {
            if class.y2 != bi(-2) {
                continue;
            }
            let p = RecurrenceSeq::p_seq(&t, class).unwrap();
            let q = RecurrenceSeq::q_seq(&t, class).unwrap();
            for h in intersect_by_value(&q, &p, 8, 40, (Some(1), None)) {
                let d = (&h.value * &h.value - 4u32) / 6u32;
                found.push((class.z0.clone(), h.j, h.i, d));
            }
        }
        // (l, m) = (1, 1) gives d = 16 = d_-; (3, 1) gives d = 1056720 = d_+.
        assert!(found.iter().any(|(_, l, m, d)| *l == 1 && *m == 1 && *d == bi(16)));
        assert!(found.iter().any(|(_, l, m, d)| *l == 3 && *m == 1 && *d == bi(1056720)));
    }

    #[test]
    fn trivial_hit_value_two() {
        let t = triple_6_42_16();
        let class = FundClass {
            z0: bi(-2),
            x0: bi(2),
            z1: bi(-2),
            y1: bi(2),
            y2: bi(2),
            x2: bi(2),
            type_tag: SolutionType::Type1,
            parity: (Some(0), Some(0)),
        };
        let p = RecurrenceSeq::p_seq(&t, &class).unwrap();
        let q = RecurrenceSeq::q_seq(&t, &class).unwrap();
        let hits = intersect(&p, &q, 10, 10, class.parity);
        assert_eq!(hits.len(), 1);
        assert_eq!((hits[0].i, hits[0].j), (0, 0));
        assert_eq!(hits[0].value, bi(2));
    }

    #[test]
    fn congruences_hold() {
        let t = triple_6_42_16();
        for class in classify_fundamental(&t, SystemCase::PqType1, true).unwrap() {
            verify_congruences(&t, &class, 20).unwrap();
        }
        // An odd-a triple exercises the mod a^2 branch.
        let t = TripleRoots::new(&bi(1), &bi(12), &bi(96)).unwrap();
        for class in classify_fundamental(&t, SystemCase::PqType1, false).unwrap() {
            verify_congruences(&t, &class, 20).unwrap();
        }
        for class in classify_fundamental(&t, SystemCase::PqType2, false).unwrap() {
            verify_congruences(&t, &class, 20).unwrap();
        }
    }

    #[test]
    fn strict_growth_after_head() {
        let t = triple_6_42_16();
        for case in [SystemCase::PqType1, SystemCase::PqType2] {
            for class in classify_fundamental(&t, case, false).unwrap() {
                for seq in [
                    RecurrenceSeq::q_seq(&t, &class).unwrap(),
                    RecurrenceSeq::p_seq(&t, &class).unwrap(),
                ] {
                    let terms = seq.terms(30);
                    for w in terms.windows(2).skip(1) {
                        assert!(w[1] > w[0], "{:?} not increasing", seq.kind);
                    }
                }
            }
        }
    }

    #[test]
    fn ab_sequences_integral() {
        let t = triple_6_42_16();
        let class = FundClass {
            z0: bi(2),
            x0: bi(2),
            z1: bi(2),
            y1: bi(2),
            y2: bi(-2),
            x2: bi(2),
            type_tag: SolutionType::Type1,
            parity: (Some(0), Some(0)),
        };
        let a_seq = RecurrenceSeq::a_seq(&t, &class).unwrap();
        let b_seq = RecurrenceSeq::b_seq(&t, &class).unwrap();
        // y-coordinate witnesses: b d + 4 = y^2 must hold for hit values.
        assert_eq!(a_seq.term(0), bi(2));
        assert_eq!(b_seq.term(0), bi(-2));
    }

    #[test]
    fn index_relations() {
        assert!(index_relation_check(2, 2, IndexRelation::LAtMostM));
        assert!(index_relation_check(3, 1, IndexRelation::MAtMostL));
        assert!(!index_relation_check(1, 4, IndexRelation::MAtMostL));
        assert!(index_relation_check(2, 2, IndexRelation::VwWindow));
        assert!(!index_relation_check(8, 2, IndexRelation::VwWindow));
    }

    #[test]
    fn pell_invariance_along_sequences() {
        // Reconstructed coordinate pairs stay on their Pellian: for Q (the
        // (a,c) equation) a z^2 - c x^2 = 4(a - c) along the orbit.
        let t = triple_6_42_16();
        let class = FundClass {
            z0: bi(2),
            x0: bi(2),
            z1: bi(2),
            y1: bi(2),
            y2: bi(-2),
            x2: bi(2),
            type_tag: SolutionType::Type1,
            parity: (Some(0), Some(0)),
        };
        let q = RecurrenceSeq::q_seq(&t, &class).unwrap();
        let v = RecurrenceSeq::v_seq(&t, &class).unwrap();
        for i in 0..10 {
            let x = q.term(i);
            let z = v.term(i);
            assert_eq!(
                &t.a * &z * &z - &t.c * &x * &x,
                4 * (&t.a - &t.c),
                "index {i}"
            );
        }
        // And for P with the (a,b) equation: a y^2 - b x^2 = 4(a - b).
        let p = RecurrenceSeq::p_seq(&t, &class).unwrap();
        let b = RecurrenceSeq::b_seq(&t, &class).unwrap();
        for i in 0..10 {
            let x = p.term(i);
            let y = b.term(i);
            assert_eq!(&t.a * &y * &y - &t.b * &x * &x, 4 * (&t.a - &t.b), "index {i}");
        }
    }
}
