//! Acceptance suite: one test per verified counting or equidistribution
//! statement, each printing a `criterion NN: pass/fail` line with the
//! measured ratio. Tolerances are pinned in the constants below.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the table.

use num::rational::Ratio;
use num::Zero;

use equicount::arith::{self, Rat};
use equicount::forms::{self, BfsPolicy, BinForm};
use equicount::mertens::{self, KWindow};
use equicount::qfield::{self, QIdeal, QuadInt};
use equicount::quadirr::{self, Feet, KMat2, KQuadIrr, OrbitSpec, QuadIrr, Root, SubgroupQ};
use equicount::quat::{self, QuatMat2};
use equicount::stats::{self, theory, EmpiricalMeasure, Window};

fn rat(n: i128) -> Rat {
    Ratio::from_integer(n)
}

fn report(criterion: &str, pass: bool, detail: &str) {
    println!(
        "criterion {criterion}: {} -- {detail}",
        if pass { "pass" } else { "FAIL" }
    );
    assert!(pass, "criterion {criterion}: {detail}");
}

/// 1. Exact identity psi(s) = 2 Phi(s) + 2 for all s <= 500.
#[test]
fn criterion_01_psi_identity() {
    let phi = arith::phi_table(500);
    let mut acc = 0u64;
    let mut ok = true;
    for s in 1..=500u64 {
        acc += phi[s as usize];
        if mertens::psi_rational(s).count != 2 * acc + 2 {
            ok = false;
            break;
        }
    }
    report("01 (psi = 2 Phi + 2, s <= 500)", ok, "exact equality");
}

/// 2. Classical summatory-totient ratio at 1000.
#[test]
fn criterion_02_mertens_ratio() {
    let phi1000 = arith::phi_summatory(1000) as f64;
    let lead = 3.0 / std::f64::consts::PI.powi(2) * 1.0e6;
    let dev = (phi1000 / lead - 1.0).abs();
    report(
        "02 (Phi(1000) vs (3/pi^2) 10^6)",
        dev <= 0.01,
        &format!("deviation {dev:.5}"),
    );
}

/// 3. Gaussian Mertens count at s = 300 within 5%, ratio trend toward 1.
#[test]
fn criterion_03_mertens_gaussian() {
    let ring = QIdeal::ring(-4);
    let c = theory::mertens_k(-4).unwrap();
    let mut ratios = Vec::new();
    for s in [50i128, 100, 200, 300] {
        let count = mertens::psi_quadratic(&ring, rat(s)).unwrap().count as f64;
        ratios.push(count / (c * (s * s) as f64));
    }
    let final_dev = (ratios[3] - 1.0).abs();
    let trend = final_dev <= (ratios[0] - 1.0).abs();
    report(
        "03 (Gaussian Mertens, s = 300)",
        final_dev <= 0.05 && trend,
        &format!("ratios {ratios:.4?}"),
    );
}

/// 4. Exact ideal-class invariance in Q(sqrt(-5)) at s = 50.
#[test]
fn criterion_04_class_invariance() {
    let d = -20;
    let p2 = QIdeal::from_gens(&[QuadInt::from_int(d, 2), QuadInt::new(d, 1, 1)], 1).unwrap();
    let p3 = QIdeal::from_gens(&[QuadInt::from_int(d, 3), QuadInt::new(d, 1, 1)], 1).unwrap();
    let c2 = mertens::psi_quadratic(&p2, rat(50)).unwrap().count;
    let c3 = mertens::psi_quadratic(&p3, rat(50)).unwrap().count;
    let scaled = p2.scale(&QuadInt::new(d, 1, 1));
    let cs = mertens::psi_quadratic(&scaled, rat(50)).unwrap().count;
    report(
        "04 (class invariance over Q(sqrt -5))",
        c2 == c3 && c2 == cs,
        &format!("counts {c2} / {c3} / {cs}"),
    );
}

/// 5. Hurwitz Mertens count at s = 10 within 15%.
#[test]
fn criterion_05_mertens_hurwitz() {
    let c = theory::mertens_hurwitz(2).unwrap();
    let mut ratios = Vec::new();
    for s in [4i128, 6, 8, 10] {
        let count = mertens::psi_hurwitz(rat(s)).unwrap().count as f64;
        ratios.push(count / (c * ((s * s * s * s) as f64)));
    }
    let dev = (ratios[3] - 1.0).abs();
    report(
        "05 (Hurwitz Mertens, s = 10)",
        dev <= 0.15,
        &format!("ratios {ratios:.4?}"),
    );
}

/// 6. Farey equidistribution over Z[i] at s = 200: 4x4 grid within 5% of
/// Lebesgue with the theoretical normalisation.
#[test]
fn criterion_06_farey_equidistribution() {
    let ring = QIdeal::ring(-4);
    let s = 200i128;
    let pts = mertens::farey_quadratic(&ring, rat(s), &KWindow::fundamental()).unwrap();
    // for D = -4 the coordinate box is the complex unit box
    let emp = EmpiricalMeasure::plane_unit(
        pts.iter().map(|p| p.to_complex()),
    );
    let c = theory::farey_k(-4).unwrap() * (s * s) as f64;
    let grid = stats::grid_2d([0.0, 1.0], [0.0, 1.0], 4, 4);
    let dev = stats::grid_discrepancy(&emp, |w| w.measure(), &grid, 1.0 / c).unwrap();
    report(
        "06 (Farey over Z[i], 4x4 grid at s = 200)",
        dev <= 0.05,
        &format!(
            "max cell deviation {dev:.4}, total {} vs {:.1}",
            emp.total_mass(),
            c
        ),
    );
}

/// 7. Exact Farey/psi fundamental-domain reconciliation at s = 100.
#[test]
fn criterion_07_reconciliation() {
    let r = mertens::reconcile_quadratic(&QIdeal::ring(-4), rat(100)).unwrap();
    report(
        "07 (Farey/psi reconciliation, s = 100)",
        r.exact_match,
        &format!(
            "psi {} = farey {} + v_zero {}",
            r.psi_count, r.farey_fundamental_mass, r.v_zero_classes
        ),
    );
}

/// 8. Indefinite quadratic orbit count at s = 2000 within 5%, with exact
/// agreement against brute-force double cosets at small s.
#[test]
fn criterion_08_indefinite_quadratic() {
    let r = forms::indef_bqf_orbit_count(1, -1, -1, 2000).unwrap();
    assert!(r.saturated);
    let expect = theory::indef_bqf(5).unwrap() * 2000.0;
    let ratio = r.count as f64 / expect;
    // small-s oracle
    let m = arith::automorph(1, -1, -1).unwrap();
    let mut exact_ok = true;
    for s in 1..=10i128 {
        let fast = forms::indef_bqf_orbit_count(1, -1, -1, s).unwrap().count;
        let mut classes = std::collections::HashSet::new();
        for u in -300i128..=300 {
            for v in -300i128..=300 {
                if (u, v) == (0, 0) || arith::gcd_i128(u, v) != 1 {
                    continue;
                }
                if (u * u - u * v - v * v).abs() <= s {
                    classes.insert(forms::canonical_pair(&m, u, v));
                }
            }
        }
        if classes.len() as u64 != fast {
            exact_ok = false;
        }
    }
    report(
        "08 (indefinite quadratic orbits, s = 2000)",
        (ratio - 1.0).abs() <= 0.05 && exact_ok,
        &format!("ratio {ratio:.4}, small-s oracle exact: {exact_ok}"),
    );
}

/// 9. Trace equidistribution of the golden-ratio orbit at eps = 0.01.
#[test]
fn criterion_09_trace_equidistribution() {
    let spec = OrbitSpec::new(QuadIrr::golden(), SubgroupQ::Full, 4).unwrap();
    let eps = 0.01;
    let traces = quadirr::traces_in_window(&spec, eps, rat(0), rat(10)).unwrap();
    let reg = arith::pell_fundamental(5).unwrap().regulator;
    let expect = 10.0 * theory::trace_q(reg, 1.0, 1.0, 1.0, eps);
    let ratio = traces.len() as f64 / expect;
    // 10-cell uniformity, normalised by the empirical mass
    let emp = EmpiricalMeasure::line_unit(traces.iter().map(|t| qfield::rat_f64(*t)));
    let grid = stats::grid_1d(0.0, 10.0, 10);
    let dev = stats::grid_discrepancy(
        &emp,
        Window::measure,
        &grid,
        10.0 / emp.total_mass(),
    )
    .unwrap();
    report(
        "09 (golden trace window, eps = 0.01)",
        (ratio - 1.0).abs() <= 0.05 && dev <= 0.05,
        &format!("count {} / {expect:.1} (ratio {ratio:.4}), 10-cell dev {dev:.4}", traces.len()),
    );
}

/// 10. Relative-height orbit of the golden ratio at s = 300: census size,
/// crossratio checks, and the feet mass over the pole-free window. The
/// second stated window [-1, 0.3] contains phi^sigma, where the limit
/// density is not locally finite; the mass operation is required to reject
/// it, and the suite asserts exactly that rejection.
#[test]
fn criterion_10_relative_heights() {
    let phi = QuadIrr::golden();
    let census =
        quadirr::rel_orbit_enumerate(&phi, &phi, SubgroupQ::Full, 300.0, 4, 12).unwrap();
    let reg = arith::pell_fundamental(5).unwrap().regulator;
    let expect = theory::rel_height_q(reg, reg, 5.0f64.sqrt()) * 300.0;
    let ratio = census.total() as f64 / expect;
    let size_ok = census.saturated && (ratio - 1.0).abs() <= 0.10;

    // every disjoint-feet record passes both orthogonality crossratios
    let mut cross_ok = true;
    for rec in &census.records {
        if let Feet::Pair(p) = &rec.feet {
            let (x1, x2) = p.values();
            let beta = QuadIrr::new(rec.tr, rec.nm, rec.root).unwrap();
            for target in [&phi, &beta] {
                let cr = quadirr::crossratio_f64(
                    (x1, 0.0),
                    (x2, 0.0),
                    (target.value(), 0.0),
                    (target.conj().value(), 0.0),
                );
                if (cr.0 + 1.0).abs() > 1e-9 || cr.1.abs() > 1e-9 {
                    cross_ok = false;
                }
            }
        }
    }

    // feet mass over [2, 3] with the stabiliser orbits of every class
    let gen = arith::automorph(1, -1, -1).unwrap();
    let windows = [(rat(2), rat(3))];
    let mut in_23 = 0usize;
    for rec in &census.records {
        if let Feet::Pair(p) = &rec.feet {
            let pts = quadirr::feet_orbit_points(&phi, &gen, p, &windows).unwrap();
            in_23 += pts.len();
        }
    }
    let mass23 = stats::target_mass_inv_q_real(&phi, rat(2), rat(3)).unwrap();
    let predict23 = theory::rel_height_feet_q(reg) * 300.0 * mass23;
    let feet_ratio = in_23 as f64 / predict23;
    let feet_ok = (feet_ratio - 1.0).abs() <= 0.10;

    // the window [-1, 0.3] contains phi^sigma = -0.618...: the target mass
    // is undefined there (and the empirical feet sum diverges); the correct
    // behaviour is rejection
    let pole_window = stats::target_mass_inv_q_real(&phi, rat(-1), Ratio::new(3, 10));
    let pole_rejected = pole_window.is_err()
        && quadirr::feet_orbit_points(
            &phi,
            &gen,
            &quadirr::FeetPair { tr: rat(4), nm: rat(3) },
            &[(rat(-1), Ratio::new(3, 10))],
        )
        .is_err();

    report(
        "10 (relative heights, s = 300)",
        size_ok && cross_ok && feet_ok && pole_rejected,
        &format!(
            "size {} / {expect:.1} (ratio {ratio:.4}, saturated {}), crossratios {}, \
             feet mass [2,3] ratio {feet_ratio:.4}, pole window [-1,0.3] rejected: {pole_rejected} \
             (contains phi^sigma; dt/|Q| is not locally finite there)",
            census.total(),
            census.saturated,
            if cross_ok { "ok" } else { "violated" },
        ),
    );
}

/// 11. Norm-form window count at s = 500 against the printed constant
/// `(12/pi^2) s mass`. The literal coprime-pair count provably grows like
/// `(6/pi^2) s mass` (each value u/v carries exactly the two pairs
/// +-(u, v); checked against the classical automorph-class count), so this
/// criterion fails by the factor 2 of its printed constant. Kept red on
/// purpose; the companion assertion pins the literal density.
#[test]
fn criterion_11_normform_window_as_stated() {
    let phi = QuadIrr::golden();
    let pts = quadirr::normform_window(&phi, rat(500), rat(2), rat(3)).unwrap();
    let mass = stats::target_mass_inv_q_real(&phi, rat(2), rat(3)).unwrap();
    let stated = theory::norm_form_q() * 500.0 * mass; // (12/pi^2) s mass
    let ratio = pts.len() as f64 / stated;
    let literal = 0.5 * stated; // (6/pi^2) s mass
    let literal_ratio = pts.len() as f64 / literal;
    println!(
        "criterion 11 detail: count {} | stated (12/pi^2) s mass = {stated:.1} (ratio {ratio:.4}) \
         | literal-density (6/pi^2) s mass = {literal:.1} (ratio {literal_ratio:.4})",
        pts.len()
    );
    // the enumeration itself is sound: it matches the literal density
    assert!(
        (literal_ratio - 1.0).abs() <= 0.05,
        "enumeration drifted from the literal density"
    );
    report(
        "11 (norm-form window vs printed constant)",
        (ratio - 1.0).abs() <= 0.05,
        &format!(
            "ratio {ratio:.4} to the printed constant; the literal coprime-pair count \
             sits at {literal_ratio:.4} of (6/pi^2) s mass -- the printed constant \
             double-counts the +-(u,v) pairs"
        ),
    );
}

/// 12. Positive definite Hermitian count at s = 300 within 5%.
#[test]
fn criterion_12_posdef_hermitian() {
    let f = BinForm::hermitian(1, QuadInt::zero(-4), 1);
    let count = forms::posdef_count(&f, None, rat(300)).unwrap();
    let expect = theory::posdef_hermitian(-4, -1).unwrap() * (300.0f64).powi(2);
    let ratio = count as f64 / expect;
    report(
        "12 (positive definite Hermitian, s = 300)",
        (ratio - 1.0).abs() <= 0.05,
        &format!("count {count} / {expect:.1} (ratio {ratio:.4})"),
    );
}

/// 13. Positive definite Hamiltonian count at s = 10 against
/// `60 D_A / (zeta(3) |Disc|^2 prod(p^3-1)) s^4`. The pair count provably
/// converges to this constant (it follows from the verified Hurwitz Mertens
/// constant by summing shells), but from above and slowly: measured ratios
/// 1.75 / 1.26 / 1.19 / 1.11 at s = 4 / 10 / 14 / 22. At the pinned scale s = 10
/// the 15% tolerance is out of reach for any legitimate counting convention
/// (pair classes mod sign converge to 0.5); kept red on purpose.
#[test]
fn criterion_13_posdef_hamiltonian() {
    let f = BinForm::hamiltonian_ints(1, [0, 0, 0, 0], 1);
    let count = forms::posdef_count(&f, None, rat(10)).unwrap();
    let expect = theory::posdef_hamiltonian(2, -1).unwrap() * (10.0f64).powi(4);
    let ratio = count as f64 / expect;
    println!(
        "criterion 13 detail: raw pair count {count}, leading term {expect:.1},          ratio {ratio:.4}; measured convergence 1.7486 (s=4), 1.2564 (s=10),          1.1892 (s=14) -- approaching 1 from above, outside 15% at s = 10"
    );
    report(
        "13 (positive definite Hamiltonian, s = 10)",
        (ratio - 1.0).abs() <= 0.15,
        &format!("count {count} / {expect:.1} (ratio {ratio:.4})"),
    );
}

/// 14. Hermitian orbit census: growth exponent 2 +- 0.15 over s = 20/40/80,
/// b/a uniformity within 15% with the fitted mass, exact disc invariance.
#[test]
fn criterion_14_hermitian_orbit() {
    let f = BinForm::hermitian(1, QuadInt::one(-4), -1);
    let census = forms::herm_orbit_bfs(&f, 80, BfsPolicy::for_census(80)).unwrap();
    assert!(census.saturated, "census not saturated");
    let samples: Vec<(f64, f64)> = [20i128, 40, 80]
        .iter()
        .map(|&s| (s as f64, census.census(s) as f64))
        .collect();
    let fit = stats::fit_power_law(&samples).unwrap();
    let exp_ok = (fit.beta_hat - 2.0).abs() <= 0.15;
    // disc invariance, exact
    let disc_ok = census.forms.iter().all(|(a, b, c)| b.norm() - a * c == 2);
    // b/a uniformity on the centered cell with the fitted (empirical) mass
    let emp = EmpiricalMeasure::plane_unit(census.points());
    let grid = stats::grid_2d([-0.5, 0.5], [-0.5, 0.5], 4, 4);
    let dev = stats::grid_discrepancy(
        &emp,
        |w| w.measure(),
        &grid,
        1.0 / emp.total_mass(),
    )
    .unwrap();
    report(
        "14 (Hermitian orbit census)",
        exp_ok && disc_ok && dev <= 0.15,
        &format!(
            "beta {:.3}, residual {:.3}, 4x4 dev {dev:.4}, disc exact {disc_ok}, census {:?}",
            fit.beta_hat,
            fit.residual,
            samples.iter().map(|s| s.1 as u64).collect::<Vec<_>>()
        ),
    );
}

/// 15. Utilities: Fibonacci ideal index, iota table, X_gamma and the
/// translation length, and the worked feet example.
#[test]
fn criterion_15_utilities() {
    let two = QIdeal::principal(&QuadInt::from_int(-4, 2)).unwrap();
    let kc_ok = qfield::fib_index_kc(&two).unwrap() == 3;

    let f1 = BinForm::hermitian(1, QuadInt::new(-4, 2, 0), 0); // Disc 4
    let f2 = BinForm::hermitian(2, QuadInt::one(-4), 2); // Disc -3, a c even
    let f3 = BinForm::hermitian(2, QuadInt::new(-4, 1, 1), -2); // Disc 6
    let f4 = BinForm::hermitian(1, QuadInt::one(-4), 2); // a odd
    let iota_ok = forms::iota_f(&f1) == 2
        && forms::iota_f(&f2) == 3
        && forms::iota_f(&f3) == 6
        && forms::iota_f(&f4) == 1;

    let g = QuatMat2::from_rational(&arith::Mat2::new(2, 1, 1, 1));
    let x = quat::x_gamma(&g).unwrap();
    let ell = quat::translation_length_h5(&g).unwrap();
    let ell_expect = 2.0 * (1.5f64 + 1.25f64.sqrt()).ln(); // 2 arccosh(3/2)
    let xg_ok = (x - 3.5).abs() < 1e-9 && (ell - ell_expect).abs() < 1e-9;

    let phi = QuadIrr::golden();
    let beta = quadirr::mobius_apply(&arith::Mat2::new(1, 3, 0, 1), &phi).unwrap();
    let feet_ok = match quadirr::x_pm(&phi, &beta).unwrap() {
        Feet::Pair(p) => p.tr == rat(4) && p.nm == rat(3),
        _ => false,
    };
    report(
        "15 (utilities)",
        kc_ok && iota_ok && xg_ok && feet_ok,
        &format!("k_c {kc_ok}, iota {iota_ok}, X_gamma {xg_ok}, feet {feet_ok}"),
    );
}

/// 16. Bianchi orbit of sqrt(2) over Q(i) with the supplied automorph
/// [3,4;2,3]: growth exponent 2 +- 0.1 over s = 40/80/160 and the absolute
/// constant within 20%.
#[test]
fn criterion_16_bianchi_orbit() {
    let s2 = KQuadIrr::sqrt_int(-4, 2).unwrap();
    let mut stab = quadirr::stab_search_k(&s2, 5).unwrap();
    let supplied = KMat2::from_ints(-4, [3, 4, 2, 3]);
    stab.automorph = supplied;
    let mut samples = Vec::new();
    let mut last_rows = 0u64;
    for s in [40i128, 80, 160] {
        let census = quadirr::bianchi_orbit(&s2, &stab, rat(s), None, 10).unwrap();
        assert!(census.saturated, "bianchi census not saturated at s = {s}");
        samples.push((s as f64, census.rows.len() as f64));
        last_rows = census.rows.len() as u64;
    }
    let fit = stats::fit_power_law(&samples).unwrap();
    let exp_ok = (fit.beta_hat - 2.0).abs() <= 0.10;
    let ell = quadirr::k_translation_length(&supplied.trace());
    let c = theory::orbit_k(-4, ell, stab.m_point).unwrap();
    let ratio = last_rows as f64 / (c * 160.0 * 160.0);
    report(
        "16 (Bianchi orbit of sqrt 2)",
        exp_ok && (ratio - 1.0).abs() <= 0.20,
        &format!(
            "beta {:.3}, constant ratio {ratio:.4} at s = 160 (ell {ell:.4}, m {})",
            fit.beta_hat, stab.m_point
        ),
    );
}
