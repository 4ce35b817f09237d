use d4quad_core::prover::{prove_family, Family, RunConfig, Verdict};

fn main() {
    let cfg = RunConfig::default();
    for (k, fam) in [(7u32, Family::C1Minus), (7, Family::C2Minus)] {
        let (certs, _) = prove_family(k, fam, &cfg).unwrap();
        println!("== k={k} {:?}", fam);
        for c in certs.iter().filter(|c| c.verdict == Verdict::Fail) {
            println!("  p{}:{} -> {}", c.p, c.class.id, c.reduction.final_bound);
        }
    }
}
