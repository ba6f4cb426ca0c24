//! Relative heights: the classes of the modular orbit of the golden ratio
//! with `h_phi(beta) <= s` grow like `48 R^2 s / (pi^2 sqrt 5)`, and the
//! feet of the common perpendiculars equidistribute toward `dt/|Q_phi(t)|`.
//!
//! Run with `cargo run --release --example relative_heights`.

use equicount::arith::{automorph, pell_fundamental, Rat};
use equicount::quadirr::{
    feet_orbit_points, rel_orbit_enumerate, Feet, QuadIrr, SubgroupQ,
};
use equicount::stats::{target_mass_inv_q_real, theory};
use num::rational::Ratio;

fn rat(n: i128) -> Rat {
    Ratio::from_integer(n)
}

fn main() {
    let phi = QuadIrr::golden();
    let reg = pell_fundamental(5).unwrap().regulator;
    let c = theory::rel_height_q(reg, reg, 5.0f64.sqrt());
    println!("class-count constant 48 R^2/(pi^2 sqrt 5) = {c:.5}");
    println!("{:>6} {:>8} {:>8} {:>10} {:>8}", "s", "classes", "flagged", "theory", "ratio");
    let mut census = None;
    for s in [75.0, 150.0, 300.0] {
        let r = rel_orbit_enumerate(&phi, &phi, SubgroupQ::Full, s, 4, 12).unwrap();
        println!(
            "{s:>6} {:>8} {:>8} {:>10.1} {:>8.4} {}",
            r.total(),
            r.count_flagged,
            c * s,
            r.total() as f64 / (c * s),
            if r.saturated { "" } else { "(unsaturated)" }
        );
        census = Some(r);
    }
    let census = census.unwrap();

    // feet mass over [2, 3] across the stabiliser orbits of all classes
    let gen = automorph(1, -1, -1).unwrap();
    let windows = [(rat(2), rat(3))];
    let mut feet_in_window = 0usize;
    for rec in &census.records {
        if let Feet::Pair(p) = &rec.feet {
            feet_in_window += feet_orbit_points(&phi, &gen, p, &windows).unwrap().len();
        }
    }
    let mass = target_mass_inv_q_real(&phi, rat(2), rat(3)).unwrap();
    let predicted = theory::rel_height_feet_q(reg) * 300.0 * mass;
    println!(
        "\nfeet in [2,3] at s = 300: {feet_in_window}, predicted 24 R s mass / pi^2 = {predicted:.1} \
         (ratio {:.4})",
        feet_in_window as f64 / predicted
    );
    println!(
        "window mass of dt/|Q_phi| over [2,3]: {mass:.6} (= 2 ln(phi)/sqrt 5)"
    );
}
