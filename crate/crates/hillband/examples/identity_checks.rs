//! The exact identities satisfied by the discriminant, checked with
//! quadrature of just-sufficient degree.

use hillband::discriminant::DiscriminantModel;
use hillband::identities::{
    beta_density_check, integral_of_discriminant, parseval_norm, power_trace_identity,
};
use num_complex::Complex64;

fn main() {
    for (l, v) in [
        (1usize, Complex64::new(0.7, -0.2)),
        (2, Complex64::new(0.0, 1.0)),
        (3, Complex64::new(0.0, 2.0)),
        (17, Complex64::new(0.5, -0.3)),
    ] {
        let model = DiscriminantModel::new(l, v);
        let integral = integral_of_discriminant(&model);
        let norm = parseval_norm(&model);
        println!("L = {l}, v = {v}");
        println!(
            "  integral  computed {:.12}  closed {:.12}  err {:.2e}",
            integral.computed, integral.closed_form, integral.abs_error
        );
        println!(
            "  norm      computed {:.12}  closed {:.12}  err {:.2e}",
            norm.computed, norm.closed_form, norm.abs_error
        );
    }

    let r = power_trace_identity(40, Complex64::new(0.9, -1.1));
    println!(
        "\npower trace n = 40: matrix {:.6} vs closed form {:.6} (err {:.2e})",
        r.computed, r.closed_form, r.abs_error
    );

    println!("\nsecond-kind nodes vs the arcsine law (KS distance ~ 1/L):");
    for l in [10usize, 40, 160] {
        println!("  L = {l:3}: {:.5}", beta_density_check(l));
    }
}
