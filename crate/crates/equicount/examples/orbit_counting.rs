//! Orbit counting by complexity `h(alpha) = 2/|alpha - alpha^sigma|`:
//! translation classes of the modular orbit of the golden ratio with
//! `h <= s` grow like `6 R s / pi^2`, and restricting to a Hecke congruence
//! subgroup rescales the constant by the index data.
//!
//! Run with `cargo run --release --example orbit_counting`.

use equicount::arith::pell_fundamental;
use equicount::quadirr::{orbit_reps_by_h, OrbitSpec, QuadIrr, SubgroupQ};
use equicount::stats::theory;

fn main() {
    let phi = QuadIrr::golden();
    let reg = pell_fundamental(5).unwrap().regulator;
    for (name, subgroup) in [
        ("full modular group", SubgroupQ::Full),
        ("Hecke subgroup of level 2", SubgroupQ::Hecke(2)),
    ] {
        let spec = OrbitSpec::new(phi, subgroup, 4).unwrap();
        let c = theory::orbit_q(
            reg,
            subgroup.index() as f64,
            1.0,
            spec.automorph_power as f64,
        );
        println!(
            "{name}: index {}, automorph power in subgroup {}, constant {c:.5}",
            subgroup.index(),
            spec.automorph_power
        );
        println!("{:>8} {:>8} {:>10} {:>8}", "s", "classes", "theory", "ratio");
        for s in [50.0, 125.0, 250.0, 500.0] {
            let reps = orbit_reps_by_h(&spec, s).unwrap();
            let th = c * s;
            println!(
                "{s:>8} {:>8} {th:>10.1} {:>8.4}",
                reps.len(),
                reps.len() as f64 / th
            );
        }
        println!();
    }
}
