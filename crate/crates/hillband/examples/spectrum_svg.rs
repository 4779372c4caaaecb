//! Render the spectral picture for L = 3, v = 2i as SVG: the dashed
//! Re delta = ±2 curves, the dotted Im delta = 0 family, the solid
//! traced arcs, and one intermediate level.

use hillband::discriminant::DiscriminantModel;
use hillband::plot::{render_svg, PlotSpec};
use num_complex::Complex64;
use std::f64::consts::PI;

fn main() {
    let v = Complex64::new(0.0, 2.0);
    let model = DiscriminantModel::new(3, v);
    let spec = PlotSpec {
        x_min: -3.0,
        x_max: 3.0,
        y_min: -3.0,
        y_max: 3.0,
        grid: 256,
        kappa_levels: vec![0.0, PI, 0.4f64.acos()],
        show_arcs: true,
        show_alpha_nodes: false,
        show_beta_nodes: true,
    };
    let svg = render_svg(&model, &spec).unwrap();
    let path = "spectrum.svg";
    std::fs::write(path, &svg).unwrap();
    println!("wrote {path} ({} bytes)", svg.len());
}
