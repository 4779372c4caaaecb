//! Evaluate the discriminant through the Chebyshev closed form and check
//! it against the transfer-matrix product, including the exact values at
//! the distinguished points ±2 and the second-kind nodes.

use hillband::discriminant::DiscriminantModel;
use hillband::transfer::{discriminant_via_transfer, Potential};
use num_complex::Complex64;

fn main() {
    let l = 3;
    let v = Complex64::new(0.0, 2.0);
    let model = DiscriminantModel::new(l, v);
    let pot = Potential::sparse(l, v);

    println!("period L = {l}, impurity v = {v}");
    for e in [
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 1.0),
        Complex64::new(2.0, 0.0),
        Complex64::new(-1.3, 0.7),
    ] {
        let closed = model.eval(e);
        let oracle = discriminant_via_transfer(&pot, e);
        println!(
            "delta({e}) = {closed:.6}   (transfer matrix: {oracle:.6}, diff {:.2e})",
            (closed - oracle).norm()
        );
    }

    let sv = model.special_values();
    println!("\ndelta(+2) = {:.6}  [closed form 2 - Lv]", sv.at_plus2);
    println!("delta(-2) = {:.6}  [closed form (-1)^L (2 + Lv)]", sv.at_minus2);
    for (i, val) in sv.at_beta.iter().enumerate() {
        let node = model.beta_node(i + 1).unwrap();
        println!("delta(beta_{}) = {val:.6}  at E = {node:.6}", i + 1);
    }
}
