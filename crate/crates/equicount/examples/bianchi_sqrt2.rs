//! Bianchi orbit of `sqrt(2)` over the Gaussian integers: stabiliser search
//! (the Pell automorph [3,4;2,3] turns out to be the square of a genuinely
//! primitive Gaussian fixer), census growth `~ s^2`, and the absolute
//! constant `pi^2 (ell/2) / (m |D_K| zeta_K(2))`.
//!
//! Run with `cargo run --release --example bianchi_sqrt2`.

use equicount::quadirr::{bianchi_orbit, k_translation_length, stab_search_k, KMat2, KQuadIrr};
use equicount::stats::{fit_power_law, theory};
use num::rational::Ratio;

fn main() {
    let alpha = KQuadIrr::sqrt_int(-4, 2).unwrap();
    let mut stab = stab_search_k(&alpha, 5).unwrap();
    let found = stab.automorph;
    println!(
        "primitive fixer found: {:?} with translation length {:.6}",
        [found.a, found.b, found.c, found.d],
        k_translation_length(&found.trace())
    );
    let sq = found.mul(&found);
    println!(
        "its square is {:?} -- the Pell automorph up to sign",
        [sq.a, sq.b, sq.c, sq.d]
    );

    // run the census against the classical Pell automorph for comparison
    let pell = KMat2::from_ints(-4, [3, 4, 2, 3]);
    stab.automorph = pell;
    let ell = k_translation_length(&pell.trace());
    let c = theory::orbit_k(-4, ell, stab.m_point).unwrap();
    println_on_table(ell, c);
    let mut samples = Vec::new();
    for s in [40i128, 80, 160] {
        let census = bianchi_orbit(&alpha, &stab, Ratio::from_integer(s), None, 10).unwrap();
        let th = c * (s * s) as f64;
        println!(
            "{s:>6} {:>8} {th:>10.1} {:>8.4} {}",
            census.rows.len(),
            census.rows.len() as f64 / th,
            if census.saturated { "" } else { "(unsaturated)" }
        );
        samples.push((s as f64, census.rows.len() as f64));
    }
    let fit = fit_power_law(&samples).unwrap();
    println!("\nfitted growth exponent: {:.3}", fit.beta_hat);
}

fn println_on_table(ell: f64, c: f64) {
    println!("\ncensus modulo <[3,4;2,3]>: ell = {ell:.4}, constant = {c:.5}");
    println!("{:>6} {:>8} {:>10} {:>8}", "s", "classes", "theory", "ratio");
}
