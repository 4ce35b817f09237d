use d4quad_core::prover::{prove_family, Family, RunConfig};

fn main() {
    let cfg = RunConfig::default();
    for (k, fam) in [(7u32, Family::C1Minus), (7, Family::C2Minus), (7, Family::C3Minus)] {
        let t = std::time::Instant::now();
        let (certs, sums) = prove_family(k, fam, &cfg).unwrap();
        let regular = certs.iter().filter(|c| c.verdict == d4quad_core::prover::Verdict::RegularOnly).count();
        let max_final: u32 = certs.iter().filter_map(|c| c.reduction.final_bound.parse().ok()).max().unwrap_or(0);
        println!("k={k} {:?}: {} certs, {} regular-only, max final bound {}, p_max {:?}, elapsed {:?}",
            fam, certs.len(), regular, max_final,
            sums.iter().map(|s| s.p_max).collect::<Vec<_>>(), t.elapsed());
    }
}
