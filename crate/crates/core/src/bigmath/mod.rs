//! Exact and certified high-precision arithmetic kernel.
//!
//! All proof decisions route through this module: exact big integers for
//! every Diophantine identity, and interval-certified reals ([`CReal`]) for
//! logarithms, square roots, and the comparisons feeding bound checks. No
//! floating point appears on any proof path.

mod creal;
mod dyadic;
mod enclosure;

pub use creal::{compare_certified, sign_certified, CReal, CertifiedOrder, PrecisionPolicy};
pub use dyadic::{Dyadic, Round};
pub use enclosure::{ln2, ln_point, Enclosure};

use crate::error::{Error, Result};
use num_bigint::{BigInt, Sign};
use num_traits::Zero;

/// Exact floor square root of a non-negative integer.
///
/// The Newton iteration lives in the bigint backend; the fixpoint property
/// `r^2 <= n < (r+1)^2` is re-verified here because every square decision in
/// the pipeline leans on it.
pub fn isqrt(n: &BigInt) -> Result<BigInt> {
    if n.sign() == Sign::Minus {
        return Err(Error::domain("isqrt of a negative integer"));
    }
    let r = n.sqrt();
    let r2 = &r * &r;
    let next = (&r + 1u32) * (&r + 1u32);
    if &r2 > n || &next <= n {
        return Err(Error::invariant(format!("isqrt fixpoint check failed for {n}")));
    }
    Ok(r)
}

/// Squares modulo 64; a residue test that rejects ~81% of non-squares
/// before the full isqrt.
const SQUARE_MOD_64: u64 = {
    let mut mask = 0u64;
    let mut i = 0u64;
    while i < 64 {
        mask |= 1 << ((i * i) % 64);
        i += 1;
    }
    mask
};

/// Returns the witness root when `n` is a perfect square, None otherwise.
/// Negative inputs are simply not squares.
pub fn perfect_square_root(n: &BigInt) -> Option<BigInt> {
    if n.sign() == Sign::Minus {
        return None;
    }
    if n.is_zero() {
        return Some(BigInt::zero());
    }
    let low = n.iter_u64_digits().next().unwrap_or(0);
    if SQUARE_MOD_64 & (1u64 << (low % 64)) == 0 {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

/// Convenience predicate over [`perfect_square_root`].
pub fn is_perfect_square(n: &BigInt) -> bool {
    perfect_square_root(n).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use proptest::prelude::*;

    #[test]
    fn isqrt_examples() {
        assert_eq!(isqrt(&BigInt::zero()).unwrap(), BigInt::zero());
        assert_eq!(isqrt(&BigInt::from(256)).unwrap(), BigInt::from(16));
        // 42*4160 + 4 = 174724 = 418^2
        assert_eq!(isqrt(&BigInt::from(174724)).unwrap(), BigInt::from(418));
        assert!(isqrt(&BigInt::from(-1)).is_err());
    }

    #[test]
    fn perfect_square_examples() {
        assert_eq!(perfect_square_root(&BigInt::from(100)), Some(BigInt::from(10)));
        assert_eq!(perfect_square_root(&BigInt::from(6)), None);
        // 3*12 + 4 = 40: the pair {a, 9a} obstruction value
        assert_eq!(perfect_square_root(&BigInt::from(40)), None);
        assert_eq!(perfect_square_root(&BigInt::from(-4)), None);
        assert_eq!(perfect_square_root(&BigInt::zero()), Some(BigInt::zero()));
        assert_eq!(perfect_square_root(&BigInt::one()), Some(BigInt::one()));
    }

    proptest! {
        #[test]
        fn isqrt_fixpoint(words in proptest::collection::vec(any::<u64>(), 1..5)) {
            let n = BigInt::new(Sign::Plus, words.iter().flat_map(|w| {
                [(*w & 0xffff_ffff) as u32, (*w >> 32) as u32]
            }).collect());
            let r = isqrt(&n).unwrap();
            prop_assert!(&r * &r <= n);
            prop_assert!((&r + 1u32) * (&r + 1u32) > n);
        }

        #[test]
        fn squares_recognized(root in 2u64..1_000_000_000) {
            let r = BigInt::from(root);
            let sq = &r * &r;
            prop_assert_eq!(perfect_square_root(&sq), Some(r.clone()));
            prop_assert_eq!(perfect_square_root(&(sq.clone() - 1)), None);
            prop_assert_eq!(perfect_square_root(&(sq + 1)), None);
        }
    }
}
