//! First-order eigenvalue approximations and their quadratic error decay:
//! near the first-kind nodes for small |v|, near the second-kind nodes
//! for large |v|.

use hillband::perturbation::{approximation_error_report, Regime};
use num_complex::Complex64;
use std::f64::consts::PI;

fn table(regime: Regime, l: usize, index: usize, v0: Complex64, kappa: f64) {
    let label = match regime {
        Regime::SmallV => "small-v (halving)",
        Regime::LargeV => "large-v (doubling)",
    };
    println!("{label}: L = {l}, index = {index}, kappa = {kappa:.4}");
    let mut prev = None;
    for m in 0..5 {
        let factor = match regime {
            Regime::SmallV => 0.5f64.powi(m),
            Regime::LargeV => 2.0f64.powi(m),
        };
        let v = v0 * factor;
        let rep = approximation_error_report(regime, l, index, v, kappa).unwrap();
        let ratio = prev
            .map(|p: f64| format!("{:.3}", rep.abs_error / p))
            .unwrap_or_else(|| "  -  ".into());
        println!(
            "  v = {v:>12.5}  approx {:.6}  numeric {:.6}  err {:.3e}  ratio {ratio}",
            rep.approx, rep.numeric, rep.abs_error
        );
        prev = Some(rep.abs_error);
    }
    println!();
}

fn main() {
    let kappa = PI / 2.0;
    table(Regime::SmallV, 5, 1, Complex64::new(0.0, 0.5), kappa);
    table(Regime::LargeV, 5, 1, Complex64::new(0.0, 5.0), kappa);

    // the degree-one case is linear, so the first order is already exact
    let rep = approximation_error_report(Regime::SmallV, 1, 1, Complex64::new(0.3, 0.4), 1.0)
        .unwrap();
    println!("L = 1 exactness: err = {:.3e}", rep.abs_error);
}
