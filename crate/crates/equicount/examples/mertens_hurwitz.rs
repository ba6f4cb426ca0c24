//! Mertens-type counting over the Hurwitz quaternions: shear classes of
//! generating pairs `(u, v)` with `N(v) <= s`, against
//! `90 D_A^2 / (pi^2 zeta(3) prod_{p|D_A}(p^3-1)) s^4` with `D_A = 2`.
//!
//! Run with `cargo run --release --example mertens_hurwitz`.

use equicount::mertens::psi_hurwitz;
use equicount::stats::theory;
use num::rational::Ratio;

fn main() {
    let c = theory::mertens_hurwitz(2).unwrap();
    println!("Hurwitz order, constant 360/(7 pi^2 zeta(3)) = {c:.6}");
    println!("{:>6} {:>10} {:>12} {:>8}", "s", "psi(s)", "theory", "ratio");
    for s in [2i128, 4, 6, 8, 10] {
        let count = psi_hurwitz(Ratio::from_integer(s)).unwrap();
        let th = c * ((s * s * s * s) as f64);
        println!(
            "{s:>6} {:>10} {th:>12.1} {:>8.4}",
            count.count,
            count.count as f64 / th
        );
    }
    println!("\nthe v = 0 shell always contributes the 24 unit classes");
}
