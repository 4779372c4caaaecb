//! Trace the Floquet branches over kappa in [0, pi] and count connected
//! components of the spectrum, for a small and a large imaginary
//! impurity.

use hillband::discriminant::DiscriminantModel;
use hillband::floquet::{trace_arcs, uniform_kappa_grid};
use num_complex::Complex64;

fn summarize(l: usize, v: Complex64) {
    let model = DiscriminantModel::new(l, v);
    let fam = trace_arcs(&model, &uniform_kappa_grid(257)).unwrap();
    println!("L = {l}, v = {v}: {} components", fam.component_count);
    for arc in &fam.arcs {
        let (k0, e0) = arc.samples[0];
        let (k1, e1) = *arc.samples.last().unwrap();
        println!(
            "  branch {}: {:.4} (kappa={k0:.3}) .. {:.4} (kappa={k1:.3}), {} samples",
            arc.branch_id, e0, e1, arc.samples.len()
        );
    }
}

fn main() {
    // small impurity: five short arcs hanging off the real axis
    summarize(5, Complex64::new(0.0, 0.5));
    println!();
    // large impurity: four arcs near the real nodes plus one far arc
    // near sqrt(4 + v^2) whose existence is forced by sum(roots) = v
    summarize(5, Complex64::new(0.0, 5.0));
}
