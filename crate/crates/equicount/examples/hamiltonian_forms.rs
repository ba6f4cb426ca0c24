//! Binary Hamiltonian forms over the Hurwitz order: the positive definite
//! representation count against `60 D_A s^4 / (zeta(3) |Disc|^2 prod(p^3-1))`
//! (slow convergence from above), plus the `X_gamma` cubic and quaternionic
//! translation length utilities.
//!
//! Run with `cargo run --release --example hamiltonian_forms`.

use equicount::arith::Mat2;
use equicount::forms::{posdef_count, BinForm};
use equicount::quat::{translation_length_h5, x_gamma, QuatMat2};
use equicount::stats::theory;
use num::rational::Ratio;

fn main() {
    let f = BinForm::hamiltonian_ints(1, [0, 0, 0, 0], 1);
    let c = theory::posdef_hamiltonian(2, f.disc()).unwrap();
    println!("N(u) + N(v) <= s over the Hurwitz order (constant {c:.5}):");
    println!("{:>6} {:>10} {:>12} {:>8}", "s", "pairs", "theory", "ratio");
    for s in [4i128, 8, 12] {
        let n = posdef_count(&f, None, Ratio::from_integer(s)).unwrap();
        let th = c * ((s * s * s * s) as f64);
        println!("{s:>6} {n:>10} {th:>12.1} {:>8.4}", n as f64 / th);
    }
    println!("(the ratio approaches 1 from above as s grows)");

    // X_gamma of a rational loxodromic element embedded in SL2(H)
    let g = QuatMat2::from_rational(&Mat2::new(2, 1, 1, 1));
    let x = x_gamma(&g).unwrap();
    let ell = translation_length_h5(&g).unwrap();
    println!("\nX_gamma([2,1;1,1]) = {x} (cubic factors as (x-1)^2 (2x-7))");
    println!(
        "translation length in H^5: {ell:.6} = 2 arccosh(3/2) = {:.6}",
        2.0 * (1.5f64 + 1.25f64.sqrt()).ln()
    );
    let id = QuatMat2::identity();
    println!(
        "identity: X = {}, length = {}",
        x_gamma(&id).unwrap(),
        translation_length_h5(&id).unwrap()
    );
}
