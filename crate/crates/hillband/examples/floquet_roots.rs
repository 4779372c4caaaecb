//! Solve delta_L(E) = 2 cos kappa for all L roots at a fixed phase.

use hillband::discriminant::DiscriminantModel;
use hillband::floquet::{floquet_eigenvalues, Quasimomentum};
use num_complex::Complex64;

fn main() {
    let l = 3;
    let v = Complex64::new(0.0, 2.0);
    let kappa = 0.4f64.acos();

    let model = DiscriminantModel::new(l, v);
    let set = floquet_eigenvalues(&model, Quasimomentum::new(kappa).unwrap()).unwrap();

    println!("L = {l}, v = {v}, kappa = {kappa:.6} (2 cos kappa = 0.8)");
    for (root, res) in set.roots.iter().zip(&set.residuals) {
        println!("  E = {root:.12}   residual {res:.2e}");
    }
    let sum: Complex64 = set.roots.iter().sum();
    println!("sum of roots = {sum:.12}  (equals v for every kappa)");
}
