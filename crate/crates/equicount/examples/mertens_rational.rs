//! The classical summatory-totient count over `Z`: the shear-class count
//! `psi(s)` equals `2 Phi(s) + 2` exactly, and both grow like `(6/pi^2) s^2`.
//!
//! Run with `cargo run --release --example mertens_rational`.

use equicount::arith::phi_summatory;
use equicount::mertens::psi_rational;
use equicount::stats::theory;

fn main() {
    println!("{:>6} {:>10} {:>10} {:>12} {:>8}", "s", "psi(s)", "2Phi+2", "theory", "ratio");
    let c = theory::mertens_rational();
    for s in [10u64, 50, 100, 250, 500] {
        let psi = psi_rational(s).count;
        let identity = 2 * phi_summatory(s) + 2;
        let th = c * (s as f64) * (s as f64);
        println!(
            "{s:>6} {psi:>10} {identity:>10} {th:>12.1} {:>8.4}",
            psi as f64 / th
        );
        assert_eq!(psi, identity, "the exact identity must hold");
    }
    println!("\nexact identity psi(s) = 2 Phi(s) + 2 verified on every row");
}
