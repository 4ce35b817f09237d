use d4quad_core::bigmath::PrecisionPolicy;
use d4quad_core::linforms::{compute_p_ranges, BoundFamily};

fn main() {
    let policy = PrecisionPolicy::default();
    let cases: [(BoundFamily, [u32; 6], f64); 6] = [
        (BoundFamily::C1Minus, [70, 110, 53, 65, 147, 81], 2.48e20),
        (BoundFamily::C1Plus, [71, 111, 54, 65, 149, 82], 2.56e20),
        (BoundFamily::C2Type1, [74, 116, 56, 68, 156, 86], 2.6e21),
        (BoundFamily::C2Type2, [18, 28, 13, 16, 38, 21], 3.13e20),
        (BoundFamily::C3Even, [9, 14, 6, 8, 19, 10], 5.2e21),
        (BoundFamily::C3Odd, [25, 40, 19, 23, 53, 29], 4.3e22),
    ];
    for (family, want, cap_want) in cases {
        let mut cap_max = 0f64;
        let mut all_ok = true;
        for (i, k) in [7u32, 8, 10, 11, 12, 13].iter().enumerate() {
            let r = compute_p_ranges(*k, family, 3, &policy).unwrap();
            let ok = r.p_max == want[i];
            all_ok &= ok;
            let capf: f64 = r.index_cap.to_string().parse().unwrap();
            cap_max = cap_max.max(capf);
            print!("{}{} ", r.p_max, if ok { "" } else { "!" });
        }
        let cap_rel = (cap_max - cap_want) / cap_want;
        println!("| {:?} lists_ok={} cap={:.4e} (pub {:.2e}, rel {:+.2}%)",
                 family, all_ok, cap_max, cap_want, 100.0 * cap_rel);
    }
}
