//! Norm-form representations in a window: coprime pairs `(u, v)` with
//! `|u^2 - uv - v^2| <= s` and `u/v` in `[2, 3]`. The count follows the
//! literal density `(6/pi^2) s` times the `dt/|Q_phi|` mass of the window
//! (each value carries the two pairs `+-(u, v)`); the printed constant of
//! the corresponding display is `12/pi^2`, exactly twice the literal
//! density, and the table shows both ratios.
//!
//! Run with `cargo run --release --example norm_form_window`.

use equicount::quadirr::{normform_window, QuadIrr};
use equicount::stats::{target_mass_inv_q_real, theory};
use num::rational::Ratio;

fn main() {
    let phi = QuadIrr::golden();
    let (lo, hi) = (Ratio::from_integer(2), Ratio::from_integer(3));
    let mass = target_mass_inv_q_real(&phi, lo, hi).unwrap();
    println!("window [2,3], dt/|Q_phi| mass = {mass:.6}");
    println!(
        "{:>8} {:>8} {:>14} {:>14}",
        "s", "pairs", "vs (6/pi^2)s m", "vs (12/pi^2)s m"
    );
    for s in [250i128, 500, 1000, 2000] {
        let pts = normform_window(&phi, Ratio::from_integer(s), lo, hi).unwrap();
        let literal = 0.5 * theory::norm_form_q() * s as f64 * mass;
        let printed = theory::norm_form_q() * s as f64 * mass;
        println!(
            "{s:>8} {:>8} {:>14.4} {:>14.4}",
            pts.len(),
            pts.len() as f64 / literal,
            pts.len() as f64 / printed
        );
    }
    println!(
        "\nthe literal coprime-pair count tracks (6/pi^2) s mass; the printed\n\
         constant 12/pi^2 double-counts the +-(u, v) symmetry"
    );
}
