//! Representation counts of binary quadratic forms: the definite Gauss count
//! `12 s / (pi sqrt(-Disc))` and the indefinite automorph-class count
//! `12 R_Q s / (pi^2 sqrt(Disc))` with the regulator from the Pell-Fermat
//! fundamental solution.
//!
//! Run with `cargo run --release --example quadratic_forms`.

use equicount::arith::{automorph, pell_fundamental};
use equicount::forms::{indef_bqf_orbit_count, posdef_count, BinForm};
use equicount::stats::theory;
use num::rational::Ratio;

fn main() {
    // definite: u^2 + v^2
    let f = BinForm::Quadratic { a: 1, b: 0, c: 1 };
    let c = theory::gauss_posdef(f.disc());
    println!("u^2 + v^2 <= s, coprime pairs (constant 12/(pi sqrt 4) = {c:.5}):");
    println!("{:>8} {:>8} {:>10} {:>8}", "s", "count", "theory", "ratio");
    for s in [100i128, 400, 1600] {
        let n = posdef_count(&f, None, Ratio::from_integer(s)).unwrap();
        println!("{s:>8} {n:>8} {:>10.1} {:>8.4}", c * s as f64, n as f64 / (c * s as f64));
    }

    // indefinite: u^2 - uv - v^2 of discriminant 5
    let pell = pell_fundamental(5).unwrap();
    println!(
        "\nu^2 - uv - v^2, |values| <= s modulo the automorph {:?}",
        automorph(1, -1, -1).unwrap()
    );
    println!(
        "fundamental Pell solution t = {}, u = {}, regulator {:.6}",
        pell.t, pell.u, pell.regulator
    );
    let ci = theory::indef_bqf(5).unwrap();
    println!("{:>8} {:>8} {:>10} {:>8}", "s", "classes", "theory", "ratio");
    for s in [250i128, 1000, 2000] {
        let r = indef_bqf_orbit_count(1, -1, -1, s).unwrap();
        println!(
            "{s:>8} {:>8} {:>10.1} {:>8.4} {}",
            r.count,
            ci * s as f64,
            r.count as f64 / (ci * s as f64),
            if r.saturated { "" } else { "(unsaturated)" }
        );
    }
}
