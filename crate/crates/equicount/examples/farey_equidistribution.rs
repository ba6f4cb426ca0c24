//! Farey points of the Gaussian integers: the quotients `u/v` of primitive
//! pairs with `n(v) <= s` equidistribute toward Lebesgue measure with
//! density `2 pi s^2 / (|D_K| zeta_K(2))`, verified on a 4x4 grid over the
//! fundamental cell. The run ends with the exact reconciliation between the
//! Farey mass of one shear fundamental domain and the Mertens count.
//!
//! Run with `cargo run --release --example farey_equidistribution`.

use equicount::mertens::{farey_quadratic, reconcile_quadratic, KWindow};
use equicount::qfield::QIdeal;
use equicount::stats::{self, theory, EmpiricalMeasure};
use num::rational::Ratio;

fn main() {
    let ring = QIdeal::ring(-4);
    let s = 200i128;
    let pts = farey_quadratic(&ring, Ratio::from_integer(s), &KWindow::fundamental()).unwrap();
    let density = theory::farey_k(-4).unwrap() * (s * s) as f64;
    println!(
        "s = {s}: {} points in the unit cell, predicted {density:.1} (ratio {:.4})",
        pts.len(),
        pts.len() as f64 / density
    );
    let emp = EmpiricalMeasure::plane_unit(pts.iter().map(|p| p.to_complex()));
    let grid = stats::grid_2d([0.0, 1.0], [0.0, 1.0], 4, 4);
    println!("\n4x4 cell masses (expected {:.1} each):", density / 16.0);
    for row in 0..4 {
        let line: Vec<String> = (0..4)
            .map(|col| format!("{:>7.0}", stats::window_mass(&emp, &grid[row * 4 + col])))
            .collect();
        println!("  {}", line.join(" "));
    }
    let dev = stats::grid_discrepancy(&emp, |w| w.measure(), &grid, 1.0 / density).unwrap();
    println!("max cell deviation from Lebesgue: {:.2}%", 100.0 * dev);

    let r = reconcile_quadratic(&ring, Ratio::from_integer(100)).unwrap();
    println!(
        "\nreconciliation at s = 100: psi = {} = {} Farey points + {} classes at v = 0 ({})",
        r.psi_count,
        r.farey_fundamental_mass,
        r.v_zero_classes,
        if r.exact_match { "exact" } else { "MISMATCH" }
    );
}
