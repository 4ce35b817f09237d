use d4quad_core::bigmath::*;
use d4quad_core::prover::{family_classes, family_triple, Family};
use d4quad_core::linforms::*;
use d4quad_core::reduction::*;
use d4quad_core::seqsys::SolutionType;
use num_bigint::BigInt;

fn main() {
    let policy = PrecisionPolicy::default();
    let triple = family_triple(7, 24, Family::C2Minus).unwrap();
    for (class, _kind) in family_classes(&triple, Family::C2Minus).unwrap() {
        if class.id() != "t1zmym" { continue; }
        let inst = LogFormInstance::new(&triple, &class);
        let kappa = inst.alpha.ln().div(&inst.beta.ln());
        let mu = inst.gamma.ln().div(&inst.beta.ln());
        println!("kappa ~ {:.6}, mu ~ {:.6e}", kappa.approx_f64(), mu.approx_f64());
        let m0 = upper_bound_outer(&triple.c, class.type_tag == SolutionType::Type2, &policy).unwrap();
        println!("M0 ~ {:.3e}", m0.to_string().parse::<f64>().unwrap());
        let q_start = 6u32*&m0+1u32;
        let convs = convergents_reaching(&kappa, &q_start, 12, &policy).unwrap();
        println!("convs past floor: {}", convs.iter().filter(|(_,q)| q >= &q_start).count());
        for (_p, q) in convs.iter().filter(|(_,q)| q >= &q_start).take(8) {
            let (_, dmu) = nearest_integer_distance(&mu.mul_int(q), &policy).unwrap();
            let (_, dk) = nearest_integer_distance(&kappa.mul_int(q), &policy).unwrap();
            let eta = dmu.lo().to_f64() - dk.hi().to_f64() * m0.to_string().parse::<f64>().unwrap();
            println!("  q~{:.3e}  ||mu q||~{:.3e}  M||kq||~{:.3e}  eta~{:.3e}",
                q.to_string().parse::<f64>().unwrap(), dmu.lo().to_f64(),
                dk.hi().to_f64()*m0.to_string().parse::<f64>().unwrap(), eta);
        }
    }
}
