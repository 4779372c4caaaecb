//! Real impurity: the spectrum consists of exactly L closed intervals.
//! Prints the band table and the large-L limit of the outer band.

use hillband::discriminant::DiscriminantModel;
use hillband::floquet::{outer_band_limit, real_bands};
use num_complex::Complex64;

fn main() {
    for (l, v) in [(2usize, 3.0), (7, 0.5), (7, -2.0)] {
        let model = DiscriminantModel::new(l, Complex64::from(v));
        let bands = real_bands(&model).unwrap();
        println!("L = {l}, v = {v}: {} bands (rightmost first)", bands.intervals.len());
        for (k, (lo, hi)) in bands.intervals.iter().enumerate() {
            println!("  {:2}  [{lo:+.6}, {hi:+.6}]  width {:.3e}", k + 1, hi - lo);
        }
        println!();
    }

    // for |v| > 2 one band sits outside [-2, 2]; as L grows it contracts
    // to the point sgn(v) * sqrt(4 + v^2)
    let v = 3.0;
    let limit = outer_band_limit(v).unwrap();
    println!("outer-band limit for v = {v}: {limit:.12}");
    for l in [10usize, 50, 200] {
        let bands = real_bands(&DiscriminantModel::new(l, Complex64::from(v))).unwrap();
        let (a, b) = bands.intervals[0];
        println!(
            "  L = {l:3}: outer band [{a:.12}, {b:.12}], distance {:.2e}",
            (a - limit).abs().max((b - limit).abs())
        );
    }
}
