//! Mertens-type counting over the Gaussian integers: shear classes of
//! primitive pairs `(u, v)` in `O_K x O_K` with `n(v) <= s`, against the
//! leading term `pi / (zeta_K(2) sqrt|D_K|) s^2`.
//!
//! Also demonstrates exact ideal-class invariance in `Q(sqrt(-5))`, where
//! the class group is nontrivial.
//!
//! Run with `cargo run --release --example mertens_gaussian`.

use equicount::mertens::psi_quadratic;
use equicount::qfield::{QIdeal, QuadInt};
use equicount::stats::theory;
use num::rational::Ratio;

fn main() {
    let ring = QIdeal::ring(-4);
    let c = theory::mertens_k(-4).unwrap();
    println!("Z[i], m = O_K, constant pi/(zeta_K(2) sqrt|D_K|) = {c:.6}");
    println!("{:>6} {:>10} {:>12} {:>8}", "s", "psi_m(s)", "theory", "ratio");
    for s in [25i128, 50, 100, 200, 300] {
        let count = psi_quadratic(&ring, Ratio::from_integer(s)).unwrap();
        let th = c * (s * s) as f64;
        println!(
            "{s:>6} {:>10} {th:>12.1} {:>8.4}",
            count.count,
            count.count as f64 / th
        );
    }

    // two integral ideals of the nontrivial class of Q(sqrt(-5))
    let d = -20;
    let p2 = QIdeal::from_gens(&[QuadInt::from_int(d, 2), QuadInt::new(d, 1, 1)], 1).unwrap();
    let p3 = QIdeal::from_gens(&[QuadInt::from_int(d, 3), QuadInt::new(d, 1, 1)], 1).unwrap();
    let s = Ratio::from_integer(50);
    let c2 = psi_quadratic(&p2, s).unwrap().count;
    let c3 = psi_quadratic(&p3, s).unwrap().count;
    println!("\nQ(sqrt -5): psi for (2, 1+w) = {c2}, for (3, 1+w) = {c3} (same ideal class)");
    assert_eq!(c2, c3);
}
