//! Binary Hermitian forms over the Gaussian integers: the positive definite
//! representation count `pi^2 s^2 / (|D_K| zeta_K(2) |Disc|)`, the
//! `iota(f)` constant table, and the orbit census of an indefinite form
//! under the Bianchi group with its `b/a` points filling the reduction cell.
//!
//! Run with `cargo run --release --example hermitian_forms`.

use equicount::forms::{herm_orbit_bfs, iota_f, posdef_count, BfsPolicy, BinForm};
use equicount::qfield::QuadInt;
use equicount::stats::{self, fit_power_law, theory, EmpiricalMeasure};
use num::rational::Ratio;

fn main() {
    // positive definite |u|^2 + |v|^2
    let f = BinForm::hermitian(1, QuadInt::zero(-4), 1);
    let c = theory::posdef_hermitian(-4, f.disc()).unwrap();
    println!("|u|^2 + |v|^2 <= s over Z[i], mod +-1 (constant {c:.5}):");
    println!("{:>6} {:>10} {:>12} {:>8}", "s", "count", "theory", "ratio");
    for s in [50i128, 150, 300] {
        let n = posdef_count(&f, None, Ratio::from_integer(s)).unwrap();
        let th = c * (s * s) as f64;
        println!("{s:>6} {n:>10} {th:>12.1} {:>8.4}", n as f64 / th);
    }

    // iota(f) rules
    println!("\niota(f) over Z[i]:");
    for (label, form) in [
        ("Disc = 0 mod 4         ", BinForm::hermitian(1, QuadInt::new(-4, 2, 0), 0)),
        ("a, c even, Disc = 1 mod 4", BinForm::hermitian(2, QuadInt::one(-4), 2)),
        ("a, c even, Disc = 2 mod 4", BinForm::hermitian(2, QuadInt::new(-4, 1, 1), -2)),
        ("a odd                   ", BinForm::hermitian(1, QuadInt::one(-4), 2)),
    ] {
        println!("  {label} -> iota = {}", iota_f(&form));
    }

    // indefinite orbit census
    let g = BinForm::hermitian(1, QuadInt::one(-4), -1);
    println!("\nindefinite (1, 1, -1), Disc = {}: orbit census by |a|", g.disc());
    let census = herm_orbit_bfs(&g, 80, BfsPolicy::for_census(80)).unwrap();
    let mut samples = Vec::new();
    for s in [20i128, 40, 80] {
        let n = census.census(s);
        println!("  census(|a| <= {s:>3}) = {n}");
        samples.push((s as f64, n as f64));
    }
    let fit = fit_power_law(&samples).unwrap();
    println!("fitted exponent {:.3} (saturated: {})", fit.beta_hat, census.saturated);
    let emp = EmpiricalMeasure::plane_unit(census.points());
    let grid = stats::grid_2d([-0.5, 0.5], [-0.5, 0.5], 4, 4);
    let dev = stats::grid_discrepancy(&emp, |w| w.measure(), &grid, 1.0 / emp.total_mass())
        .unwrap();
    println!("b/a uniformity over the reduction cell: max 4x4 deviation {:.2}%", 100.0 * dev);
}
