//! D(4)-tuple predicates, the d_+/d_- construction, the extension families
//! c_nu attached to a pair, the bounded descent table, and the exceptional
//! {1, 5, a, ka} quadruples.

use crate::bigmath::{is_perfect_square, perfect_square_root};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Extension family sign and the six concrete third-element families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtSign {
    Minus,
    Plus,
}

/// Set of 2 to 4 distinct positive integers whose pairwise products plus 4
/// are all perfect squares.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct D4Tuple {
    elements: Vec<BigInt>,
}

impl D4Tuple {
    pub fn new(mut elements: Vec<BigInt>) -> Result<Self> {
        if elements.len() < 2 || elements.len() > 4 {
            return Err(Error::domain("a D(4)-tuple here has 2 to 4 elements"));
        }
        elements.sort();
        for w in elements.windows(2) {
            if w[0] == w[1] {
                return Err(Error::domain("duplicate elements"));
            }
        }
        if !elements[0].is_positive() {
            return Err(Error::domain("elements must be positive"));
        }
        for i in 0..elements.len() {
            for j in i + 1..elements.len() {
                if !is_perfect_square(&(&elements[i] * &elements[j] + 4u32)) {
                    return Err(Error::domain(format!(
                        "{} * {} + 4 is not a perfect square",
                        elements[i], elements[j]
                    )));
                }
            }
        }
        Ok(D4Tuple { elements })
    }

    pub fn elements(&self) -> &[BigInt] {
        &self.elements
    }
}

/// Pairwise-product witness roots of a D(4)-triple with role order (a, b, c):
/// ab + 4 = r^2, ac + 4 = s^2, bc + 4 = t^2.
///
/// The roles follow the construction (b = ka, c the extension element) and
/// are not necessarily sorted by size: the inner family c_1^- sits between
/// a and b.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleRoots {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub r: BigInt,
    pub s: BigInt,
    pub t: BigInt,
}

impl TripleRoots {
    pub fn new(a: &BigInt, b: &BigInt, c: &BigInt) -> Result<Self> {
        if !a.is_positive() || !b.is_positive() || !c.is_positive() {
            return Err(Error::domain("triple elements must be positive"));
        }
        if a == b || a == c || b == c {
            return Err(Error::domain("triple elements must be distinct"));
        }
        let r = perfect_square_root(&(a * b + 4u32))
            .ok_or_else(|| Error::domain("ab + 4 is not a square"))?;
        let s = perfect_square_root(&(a * c + 4u32))
            .ok_or_else(|| Error::domain("ac + 4 is not a square"))?;
        let t = perfect_square_root(&(b * c + 4u32))
            .ok_or_else(|| Error::domain("bc + 4 is not a square"))?;
        Ok(TripleRoots { a: a.clone(), b: b.clone(), c: c.clone(), r, s, t })
    }
}

/// True iff all pairwise products plus 4 are perfect squares. Duplicate or
/// non-positive entries are a domain error.
pub fn is_d4_tuple(xs: &[BigInt]) -> Result<bool> {
    let mut sorted = xs.to_vec();
    sorted.sort();
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            return Err(Error::domain("duplicate elements"));
        }
    }
    if sorted.first().map(|x| !x.is_positive()).unwrap_or(true) {
        return Err(Error::domain("elements must be positive"));
    }
    for i in 0..sorted.len() {
        for j in i + 1..sorted.len() {
            if !is_perfect_square(&(&sorted[i] * &sorted[j] + 4u32)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn d_pm(a: &BigInt, b: &BigInt, c: &BigInt, plus: bool) -> Result<BigInt> {
    let tr = TripleRoots::new(a, b, c)?;
    let rst = &tr.r * &tr.s * &tr.t;
    let abc = a * b * c;
    let num = if plus { &abc + &rst } else { &abc - &rst };
    let (half, rem) = num.div_rem(&BigInt::from(2));
    if !rem.is_zero() {
        return Err(Error::invariant("abc and rst parity mismatch"));
    }
    let d = a + b + c + half;
    if !plus && d.is_negative() {
        return Err(Error::invariant(format!("d_minus({a}, {b}, {c}) is negative")));
    }
    Ok(d)
}

/// d_+ = a + b + c + (abc + rst)/2; always a strict extension element.
pub fn d_plus(a: &BigInt, b: &BigInt, c: &BigInt) -> Result<BigInt> {
    d_pm(a, b, c, true)
}

/// d_- = a + b + c + (abc - rst)/2; zero signals a regular sub-quadruple
/// collapse, not an error.
pub fn d_minus(a: &BigInt, b: &BigInt, c: &BigInt) -> Result<BigInt> {
    d_pm(a, b, c, false)
}

/// One member of the extension family: the triple {a, b, c_nu} together
/// with its generating solution (t_nu, s_nu).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionClass {
    pub a: BigInt,
    pub b: BigInt,
    pub r: BigInt,
    pub sign: ExtSign,
    pub nu: u32,
    pub s_nu: BigInt,
    pub t_nu: BigInt,
    pub c_nu: BigInt,
    /// c_nu <= 0 or c_nu coincides with a or b; excluded from triples.
    pub degenerate: bool,
}

/// Generates c_nu for nu = 0..=nu_max from the seeds
/// t = (±2, b ± r, ...), s = (2, r ± a, ...) under u_{nu+2} = r u_{nu+1} - u_nu.
pub fn extension_family(
    a: &BigInt,
    b: &BigInt,
    sign: ExtSign,
    nu_max: u32,
) -> Result<Vec<ExtensionClass>> {
    if a >= b {
        return Err(Error::domain("need a < b"));
    }
    let r = perfect_square_root(&(a * b + 4u32))
        .ok_or_else(|| Error::domain(format!("{{{a}, {b}}} is not a D(4)-pair")))?;
    let (mut tp, mut sp) = match sign {
        ExtSign::Plus => (BigInt::from(2), BigInt::from(2)),
        ExtSign::Minus => (BigInt::from(-2), BigInt::from(2)),
    };
    let (mut tc, mut sc) = match sign {
        ExtSign::Plus => (b + &r, &r + a),
        ExtSign::Minus => (b - &r, &r - a),
    };
    let mut out = Vec::with_capacity(nu_max as usize + 1);
    for nu in 0..=nu_max {
        let (t_nu, s_nu) = if nu == 0 {
            (tp.clone(), sp.clone())
        } else if nu == 1 {
            (tc.clone(), sc.clone())
        } else {
            let t_next = &r * &tc - &tp;
            let s_next = &r * &sc - &sp;
            tp = std::mem::replace(&mut tc, t_next);
            sp = std::mem::replace(&mut sc, s_next);
            (tc.clone(), sc.clone())
        };
        let num_s = &s_nu * &s_nu - 4u32;
        let (c, rem) = num_s.div_rem(a);
        if !rem.is_zero() {
            return Err(Error::invariant(format!(
                "(s_{nu}^2 - 4) not divisible by a = {a} for pair {{{a}, {b}}}"
            )));
        }
        let num_t = &t_nu * &t_nu - 4u32;
        let (c_check, rem_t) = num_t.div_rem(b);
        if !rem_t.is_zero() || c_check != c {
            return Err(Error::invariant(format!(
                "(t_{nu}^2 - 4)/b disagrees with (s_{nu}^2 - 4)/a for pair {{{a}, {b}}}"
            )));
        }
        let degenerate = !c.is_positive() || &c == a || &c == b;
        out.push(ExtensionClass {
            a: a.clone(),
            b: b.clone(),
            r: r.clone(),
            sign,
            nu,
            s_nu,
            t_nu,
            c_nu: c,
            degenerate,
        });
    }
    Ok(out)
}

/// Single element c_nu of the family.
pub fn extension_element(a: &BigInt, b: &BigInt, sign: ExtSign, nu: u32) -> Result<ExtensionClass> {
    let fam = extension_family(a, b, sign, nu)?;
    Ok(fam.into_iter().last().expect("nu indexed family"))
}

/// Asserts d_+(a, b, c_nu) = c_{nu+1} and d_-(a, b, c_nu) = c_{nu-1} exactly.
pub fn verify_regular_step(a: &BigInt, b: &BigInt, sign: ExtSign, nu: u32) -> Result<bool> {
    if nu == 0 {
        return Err(Error::domain("nu must be at least 1"));
    }
    let fam = extension_family(a, b, sign, nu + 1)?;
    let c_prev = &fam[nu as usize - 1].c_nu;
    let c_cur = &fam[nu as usize].c_nu;
    let c_next = &fam[nu as usize + 1].c_nu;
    if fam[nu as usize].degenerate {
        return Err(Error::domain(format!("c_{nu} is degenerate for this pair")));
    }
    let up = d_plus(a, b, c_cur)?;
    if &up != c_next {
        return Err(Error::invariant(format!(
            "d_plus({a}, {b}, {c_cur}) = {up}, expected {c_next}"
        )));
    }
    let down = d_minus(a, b, c_cur)?;
    if &down != c_prev {
        return Err(Error::invariant(format!(
            "d_minus({a}, {b}, {c_cur}) = {down}, expected {c_prev}"
        )));
    }
    Ok(true)
}

/// The pairs (c', b') with b'c' < 13.92, b'c' + 4 a perfect square, both
/// positive: the full table driving the bounded descent.
pub fn descent_table() -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    // b'c' < 13.92 means the product is at most 13.
    for cp in 1u32..=13 {
        for bp in 1u32..=13 {
            let prod = cp * bp;
            if prod <= 13 && is_perfect_square(&BigInt::from(prod + 4)) {
                out.push((cp, bp));
            }
        }
    }
    out.sort();
    out
}

/// Outcome of the descent classification for a pair a < b <= 13.92 a.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DescentOutcome {
    /// Every third element is a member of the c_nu families.
    Generic,
    /// {1, 5, a, b} is a D(4)-quadruple; the pair inherits the {1, 5}
    /// exception and is handled separately.
    ExceptionalPair(u32, u32),
}

/// Classifies a pair with a < b <= 13.92 a. The descent lands in one of the
/// pairs {1,5}, {3,4}, {2,6}, {1,12}; the latter three are impossible at
/// this ratio, so only a {1, 5, a, b} quadruple escapes the generic case.
pub fn descent_classify(a: &BigInt, b: &BigInt) -> Result<DescentOutcome> {
    if a >= b {
        return Err(Error::domain("need a < b"));
    }
    // b <= 13.92 a, exactly: 25 b <= 348 a.
    if b * 25u32 > a * 348u32 {
        return Err(Error::OutOfScope("descent requires b <= 13.92 a".into()));
    }
    if !is_perfect_square(&(a * b + 4u32)) {
        return Err(Error::domain("not a D(4)-pair"));
    }
    let one = BigInt::from(1);
    let five = BigInt::from(5);
    if a > &five {
        let xs = vec![one, five, a.clone(), b.clone()];
        if is_d4_tuple(&xs)? {
            return Ok(DescentOutcome::ExceptionalPair(1, 5));
        }
    }
    // The three remaining descent pairs must not extend at this ratio.
    for (x, y) in [(3u32, 4u32), (2, 6), (1, 12)] {
        let (xb, yb) = (BigInt::from(x), BigInt::from(y));
        if a > &yb {
            let xs = vec![xb, yb, a.clone(), b.clone()];
            if is_d4_tuple(&xs)? {
                return Err(Error::invariant(format!(
                    "pair {{{a}, {b}}} extends {{{x}, {y}}} below the ratio limit"
                )));
            }
        }
    }
    Ok(DescentOutcome::Generic)
}

/// The unique a (if any) making {1, 5, a, ka} a D(4)-quadruple. Solving
/// ka = d_+(1, 5, a) exactly gives a = 24(2k + 2)/((2k - 7)^2 - 45), so
/// k = 7 yields 96, k = 8 yields 12, and k >= 9 yields nothing.
pub fn exceptional_15_quadruple(k: u32) -> Result<Option<BigInt>> {
    if k < 7 {
        return Err(Error::domain("k must be at least 7"));
    }
    let kk = BigInt::from(k);
    let m = 2u32 * &kk - 7u32;
    let den = &m * &m - 45u32;
    if !den.is_positive() {
        return Ok(None);
    }
    let num = 24u32 * (2u32 * &kk + 2u32);
    let (a, rem) = num.div_rem(&den);
    if !rem.is_zero() || !a.is_positive() {
        return Ok(None);
    }
    let candidate = vec![BigInt::from(1), BigInt::from(5), a.clone(), &kk * &a];
    if is_d4_tuple(&candidate)? {
        Ok(Some(a))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn d4_tuple_examples() {
        assert!(is_d4_tuple(&[bi(1), bi(5), bi(12), bi(96)]).unwrap());
        assert!(!is_d4_tuple(&[bi(1), bi(2), bi(3)]).unwrap());
        assert!(is_d4_tuple(&[bi(6), bi(42), bi(16), bi(4160)]).unwrap());
        assert!(is_d4_tuple(&[bi(1), bi(5), bi(96), bi(672)]).unwrap());
        assert!(is_d4_tuple(&[bi(2), bi(2)]).is_err());
        assert!(is_d4_tuple(&[bi(0), bi(3)]).is_err());
    }

    #[test]
    fn d_plus_minus_examples() {
        assert_eq!(d_plus(&bi(1), &bi(5), &bi(96)).unwrap(), bi(672));
        assert_eq!(d_minus(&bi(1), &bi(5), &bi(96)).unwrap(), bi(12));
        assert_eq!(d_plus(&bi(1), &bi(5), &bi(12)).unwrap(), bi(96));
        assert_eq!(d_minus(&bi(1), &bi(5), &bi(12)).unwrap(), bi(0));
        // Role order does not matter for the formula.
        assert_eq!(d_plus(&bi(5), &bi(1), &bi(96)).unwrap(), bi(672));
        assert!(d_plus(&bi(1), &bi(2), &bi(3)).is_err());
    }

    #[test]
    fn extension_family_examples() {
        // c_1^- of {6, 42} is a + b - 2r = 16.
        let e = extension_element(&bi(6), &bi(42), ExtSign::Minus, 1).unwrap();
        assert_eq!(e.c_nu, bi(16));
        // c_2^+ of {1, 5} is 96.
        let e = extension_element(&bi(1), &bi(5), ExtSign::Plus, 2).unwrap();
        assert_eq!(e.c_nu, bi(96));
        // c_1^+ of {6, 42} is 80.
        let e = extension_element(&bi(6), &bi(42), ExtSign::Plus, 1).unwrap();
        assert_eq!(e.c_nu, bi(80));
        assert!(is_d4_tuple(&[bi(6), bi(42), bi(80)]).unwrap());
        // c_0 is always 0 and degenerate.
        let e = extension_element(&bi(6), &bi(42), ExtSign::Plus, 0).unwrap();
        assert!(e.degenerate);
        assert_eq!(e.c_nu, bi(0));
    }

    #[test]
    fn explicit_low_order_polynomials() {
        // The first four c_nu match their closed-form polynomials.
        for (a, b) in [(1i64, 5i64), (6, 42), (12, 96), (3, 4)] {
            let (a, b) = (bi(a), bi(b));
            let r = perfect_square_root(&(&a * &b + 4u32)).unwrap();
            let ab = &a * &b;
            for sign in [ExtSign::Plus, ExtSign::Minus] {
                let fam = extension_family(&a, &b, sign, 4).unwrap();
                let pm: i64 = if sign == ExtSign::Plus { 1 } else { -1 };
                let base = &a + &b + pm * 2 * &r;
                let c1 = base.clone();
                let c2 = (&ab + 4u32) * &base - pm * 4 * &r;
                let c3 = (&ab * &ab + 6u32 * &ab + 9u32) * &base - pm * 4 * &r * (&ab + 3u32);
                let c4 = (&ab * &ab * &ab + 8u32 * &ab * &ab + 20u32 * &ab + 16u32) * &base
                    - pm * 4 * &r * (&ab * &ab + 5u32 * &ab + 6u32);
                assert_eq!(fam[1].c_nu, c1);
                assert_eq!(fam[2].c_nu, c2);
                assert_eq!(fam[3].c_nu, c3);
                assert_eq!(fam[4].c_nu, c4);
            }
        }
    }

    #[test]
    fn regular_step_examples() {
        // d_+(6, 42, 16) = c_2^- = 4160 (the known quadruple {6,42,16,4160}).
        assert!(verify_regular_step(&bi(6), &bi(42), ExtSign::Minus, 1).unwrap());
        let e2 = extension_element(&bi(6), &bi(42), ExtSign::Minus, 2).unwrap();
        assert_eq!(e2.c_nu, bi(4160));
        assert_eq!(d_plus(&bi(6), &bi(42), &bi(16)).unwrap(), bi(4160));
        // d_+(1, 5, 12) = 96 = c_2^+.
        assert!(verify_regular_step(&bi(1), &bi(5), ExtSign::Plus, 1).unwrap());
        // d_minus at nu = 1 collapses to 0.
        assert_eq!(d_minus(&bi(6), &bi(42), &bi(16)).unwrap(), bi(0));
    }

    #[test]
    fn descent_table_exact() {
        let table = descent_table();
        assert_eq!(
            table,
            vec![(1, 5), (1, 12), (2, 6), (3, 4), (4, 3), (5, 1), (6, 2), (12, 1)]
        );
        // c' = 7 admits no b'.
        assert!(table.iter().all(|&(c, _)| c != 7));
    }

    #[test]
    fn descent_classification() {
        // {96, 672} extends {1, 5}: the exceptional branch.
        assert_eq!(
            descent_classify(&bi(96), &bi(672)).unwrap(),
            DescentOutcome::ExceptionalPair(1, 5)
        );
        // {6, 42} is generic (1*6+4 = 10 is not a square).
        assert_eq!(descent_classify(&bi(6), &bi(42)).unwrap(), DescentOutcome::Generic);
        // Ratio guard.
        assert!(matches!(
            descent_classify(&bi(1), &bi(21)),
            Err(Error::OutOfScope(_))
        ));
    }

    #[test]
    fn exceptional_quadruples() {
        assert_eq!(exceptional_15_quadruple(7).unwrap(), Some(bi(96)));
        assert_eq!(exceptional_15_quadruple(8).unwrap(), Some(bi(12)));
        assert_eq!(exceptional_15_quadruple(9).unwrap(), None);
        assert_eq!(exceptional_15_quadruple(10).unwrap(), None);
        assert_eq!(exceptional_15_quadruple(13).unwrap(), None);
        assert!(exceptional_15_quadruple(6).is_err());
    }

    #[test]
    fn regularity_identity_on_generated_triples() {
        // For generated triples, both extensions re-verify as quadruples and
        // c = d_+(a, b, d_-(a, b, c)) whenever d_- > 0.
        for (a, b) in [(1i64, 5i64), (6, 42), (12, 96)] {
            let (a, b) = (bi(a), bi(b));
            for sign in [ExtSign::Plus, ExtSign::Minus] {
                let fam = extension_family(&a, &b, sign, 4).unwrap();
                for e in fam.iter().filter(|e| !e.degenerate) {
                    let dp = d_plus(&a, &b, &e.c_nu).unwrap();
                    assert!(is_d4_tuple(&[a.clone(), b.clone(), e.c_nu.clone(), dp.clone()])
                        .unwrap());
                    let dm = d_minus(&a, &b, &e.c_nu).unwrap();
                    if dm.is_positive() && dm != a && dm != b {
                        assert!(is_d4_tuple(&[a.clone(), b.clone(), e.c_nu.clone(), dm.clone()])
                            .unwrap());
                        assert_eq!(d_plus(&a, &b, &dm).unwrap(), e.c_nu);
                    }
                }
            }
        }
    }
}
