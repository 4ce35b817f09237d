use d4quad_core::bigmath::{CReal, PrecisionPolicy};
use d4quad_core::reduction::*;
use num_bigint::BigInt;

fn main() {
    let policy = PrecisionPolicy::default();
    let bi = |n: i64| BigInt::from(n);
    let case = ReductionCase {
        kappa: CReal::sqrt_int(&bi(2)),
        mu: CReal::ratio_i64(1, 2),
        a_coeff: CReal::one(),
        b_base: CReal::from_i64(10),
        m_bound: bi(10),
        q_floor: bi(61),
    };
    match convergents_reaching(&case.kappa, &case.q_floor, 12, &policy) {
        Ok(c) => println!("convergents: {:?}", c.iter().map(|(p,q)| (p.to_string(), q.to_string())).collect::<Vec<_>>()),
        Err(e) => println!("conv error: {e}"),
    }
    match bd_step(&case, &policy) {
        Ok(s) => println!("step q={} new_m={}", s.q, s.new_m),
        Err(e) => println!("step error: {e}"),
    }
}
