use d4quad_core::prover::{prove_all, RunConfig, Verdict};

fn main() {
    let t = std::time::Instant::now();
    let cfg = RunConfig::default();
    let report = prove_all(&cfg).unwrap();
    let fails: Vec<String> = report.certificates.iter()
        .filter(|c| c.verdict == Verdict::Fail)
        .map(|c| format!("k{} {} p{} {} [{}]", c.k, c.family, c.p, c.class.id, c.reduction.final_bound))
        .collect();
    let max_inner: u32 = report.certificates.iter().filter(|c| c.family == "c1-")
        .filter_map(|c| c.reduction.final_bound.parse().ok()).max().unwrap_or(0);
    let max_outer: u32 = report.certificates.iter()
        .filter(|c| c.family.starts_with("c1+") || c.family.starts_with("c2"))
        .filter_map(|c| c.reduction.final_bound.parse().ok()).max().unwrap_or(0);
    let max_steps = report.certificates.iter().map(|c| c.reduction.steps.len()).max().unwrap_or(0);
    println!("certs: {}", report.certificates.len());
    println!("all_regular: {}", report.all_regular);
    println!("fails ({}): {:?}", fails.len(), &fails[..fails.len().min(20)]);
    println!("max final bound inner: {max_inner}, outer: {max_outer}, max steps: {max_steps}");
    println!("elapsed: {:?}", t.elapsed());
}
