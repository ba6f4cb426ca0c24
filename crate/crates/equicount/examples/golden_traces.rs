//! Traces of the modular orbit of the golden ratio: the traces of the orbit
//! points with `|alpha - alpha^sigma| >= eps` equidistribute on the line
//! with density `6 R / (pi^2 eps)`, `R = ln((3+sqrt 5)/2)` the regulator.
//!
//! Run with `cargo run --release --example golden_traces`.

use equicount::arith::pell_fundamental;
use equicount::qfield::rat_f64;
use equicount::quadirr::{traces_in_window, OrbitSpec, QuadIrr, SubgroupQ};
use equicount::stats::{self, theory, EmpiricalMeasure};
use num::rational::Ratio;

fn main() {
    let spec = OrbitSpec::new(QuadIrr::golden(), SubgroupQ::Full, 4).unwrap();
    let reg = pell_fundamental(5).unwrap().regulator;
    println!("automorph {:?}, regulator {reg:.6}", spec.automorph);
    println!("{:>8} {:>8} {:>10} {:>8}", "eps", "count", "theory", "ratio");
    for eps in [0.1, 0.05, 0.02, 0.01] {
        let traces =
            traces_in_window(&spec, eps, Ratio::from_integer(0), Ratio::from_integer(10))
                .unwrap();
        let th = 10.0 * theory::trace_q(reg, 1.0, 1.0, 1.0, eps);
        println!(
            "{eps:>8} {:>8} {th:>10.1} {:>8.4}",
            traces.len(),
            traces.len() as f64 / th
        );
    }
    // 10-cell uniformity at the finest scale
    let traces = traces_in_window(&spec, 0.01, Ratio::from_integer(0), Ratio::from_integer(10))
        .unwrap();
    let emp = EmpiricalMeasure::line_unit(traces.iter().map(|t| rat_f64(*t)));
    let grid = stats::grid_1d(0.0, 10.0, 10);
    let masses: Vec<f64> = grid.iter().map(|w| stats::window_mass(&emp, w)).collect();
    println!("\n10-cell masses at eps = 0.01: {masses:.0?}");
    let dev =
        stats::grid_discrepancy(&emp, |w| w.measure(), &grid, 10.0 / emp.total_mass()).unwrap();
    println!("max cell deviation: {:.2}%", 100.0 * dev);
}
