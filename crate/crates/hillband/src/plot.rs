//! Deterministic SVG rendering of the spectral picture in the complex
//! energy plane: implicit curves `Re Δ = 2cos κ` (dashed at the `±2`
//! levels), `Im Δ = 0` (dotted), the traced arcs (solid), and filled
//! circles at the `α_j` / `β_k` nodes.
//!
//! Curve extraction is marching squares with linear edge interpolation;
//! saddle cells are refined 4× once before falling back to a centre
//! sample.  The two curve families cross at right angles wherever they
//! meet, so this is enough for faithful pictures.

use crate::discriminant::DiscriminantModel;
use crate::error::Error;
use crate::floquet::{trace_arcs, uniform_kappa_grid};
use num_complex::Complex64;
use std::f64::consts::PI;
use std::fmt::Write as _;

/// Region, resolution and overlay choices for [`render_svg`].
#[derive(Debug, Clone)]
pub struct PlotSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    /// Cells per axis; at least 16.
    pub grid: usize,
    /// Values of κ whose level set `Re Δ = 2cos κ` is drawn.
    pub kappa_levels: Vec<f64>,
    pub show_arcs: bool,
    pub show_alpha_nodes: bool,
    pub show_beta_nodes: bool,
}

impl PlotSpec {
    /// Square region `[-(2+|v|+1), 2+|v|+1]²` sized to contain the whole
    /// spectrum, with the κ ∈ {0, π} levels and all overlays.
    pub fn default_for(v: Complex64) -> Self {
        let r = 2.0 + v.norm() + 1.0;
        PlotSpec {
            x_min: -r,
            x_max: r,
            y_min: -r,
            y_max: r,
            grid: 256,
            kappa_levels: vec![0.0, PI],
            show_arcs: true,
            show_alpha_nodes: false,
            show_beta_nodes: true,
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        if !(self.x_min < self.x_max && self.y_min < self.y_max) {
            return Err(Error::DegenerateInput("empty plot region".into()));
        }
        if self.grid < 16 {
            return Err(Error::DegenerateInput(format!(
                "grid {} below minimum 16",
                self.grid
            )));
        }
        for &k in &self.kappa_levels {
            if !(0.0..=PI).contains(&k) {
                return Err(Error::DegenerateInput(format!(
                    "kappa level {k} outside [0, pi]"
                )));
            }
        }
        Ok(())
    }
}

type Segment = ((f64, f64), (f64, f64));

fn interp(a: f64, fa: f64, b: f64, fb: f64) -> f64 {
    // zero crossing of the linear model through (a, fa), (b, fb)
    if (fb - fa).abs() < f64::MIN_POSITIVE {
        0.5 * (a + b)
    } else {
        a + (b - a) * (fa / (fa - fb))
    }
}

/// Marching squares over one cell with corner values
/// `f00=(x0,y0)`, `f10=(x1,y0)`, `f11=(x1,y1)`, `f01=(x0,y1)`.
#[allow(clippy::too_many_arguments)]
fn cell_segments(
    f: &dyn Fn(f64, f64) -> f64,
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
    f00: f64,
    f10: f64,
    f11: f64,
    f01: f64,
    depth: usize,
    out: &mut Vec<Segment>,
) {
    let idx = (usize::from(f00 > 0.0))
        | (usize::from(f10 > 0.0) << 1)
        | (usize::from(f11 > 0.0) << 2)
        | (usize::from(f01 > 0.0) << 3);
    if idx == 0 || idx == 15 {
        return;
    }
    let bottom = || (interp(x0, f00, x1, f10), y0);
    let top = || (interp(x0, f01, x1, f11), y1);
    let left = || (x0, interp(y0, f00, y1, f01));
    let right = || (x1, interp(y0, f10, y1, f11));
    match idx {
        1 | 14 => out.push((left(), bottom())),
        2 | 13 => out.push((bottom(), right())),
        3 | 12 => out.push((left(), right())),
        4 | 11 => out.push((right(), top())),
        6 | 9 => out.push((bottom(), top())),
        7 | 8 => out.push((top(), left())),
        5 | 10 => {
            // saddle: refine once, then split by the centre sample
            if depth > 0 {
                let xm = 0.5 * (x0 + x1);
                let ym = 0.5 * (y0 + y1);
                let fb = f(xm, y0);
                let ft = f(xm, y1);
                let fl = f(x0, ym);
                let fr = f(x1, ym);
                let fc = f(xm, ym);
                cell_segments(f, x0, xm, y0, ym, f00, fb, fc, fl, depth - 1, out);
                cell_segments(f, xm, x1, y0, ym, fb, f10, fr, fc, depth - 1, out);
                cell_segments(f, xm, x1, ym, y1, fc, fr, f11, ft, depth - 1, out);
                cell_segments(f, x0, xm, ym, y1, fl, fc, ft, f01, depth - 1, out);
            } else {
                let fc = f(0.5 * (x0 + x1), 0.5 * (y0 + y1));
                let centre_positive = fc > 0.0;
                // pair the crossings so the curve separates the corners
                // consistently with the centre sign
                if (idx == 5) == centre_positive {
                    out.push((left(), top()));
                    out.push((bottom(), right()));
                } else {
                    out.push((left(), bottom()));
                    out.push((right(), top()));
                }
            }
        }
        _ => unreachable!(),
    }
}

/// Zero-level segments of `f` over the region, on an `n×n` cell grid.
pub fn contour_segments(
    f: &dyn Fn(f64, f64) -> f64,
    spec: &PlotSpec,
) -> Vec<Segment> {
    let n = spec.grid;
    let dx = (spec.x_max - spec.x_min) / n as f64;
    let dy = (spec.y_max - spec.y_min) / n as f64;
    let xs: Vec<f64> = (0..=n).map(|i| spec.x_min + dx * i as f64).collect();
    let ys: Vec<f64> = (0..=n).map(|j| spec.y_min + dy * j as f64).collect();
    let vals: Vec<Vec<f64>> = ys
        .iter()
        .map(|&y| xs.iter().map(|&x| f(x, y)).collect())
        .collect();
    let mut out = Vec::new();
    for j in 0..n {
        for i in 0..n {
            cell_segments(
                f,
                xs[i],
                xs[i + 1],
                ys[j],
                ys[j + 1],
                vals[j][i],
                vals[j][i + 1],
                vals[j + 1][i + 1],
                vals[j + 1][i],
                1,
                &mut out,
            );
        }
    }
    out
}

struct Mapper {
    spec: PlotSpec,
    size: f64,
}

impl Mapper {
    fn px(&self, x: f64) -> f64 {
        (x - self.spec.x_min) / (self.spec.x_max - self.spec.x_min) * self.size
    }
    fn py(&self, y: f64) -> f64 {
        // SVG y grows downward
        (self.spec.y_max - y) / (self.spec.y_max - self.spec.y_min) * self.size
    }
}

fn write_segments(svg: &mut String, m: &Mapper, segs: &[Segment], class: &str) {
    let _ = writeln!(svg, "  <g class=\"{class}\">");
    for &((ax, ay), (bx, by)) in segs {
        let _ = writeln!(
            svg,
            "    <path d=\"M {:.3} {:.3} L {:.3} {:.3}\"/>",
            m.px(ax),
            m.py(ay),
            m.px(bx),
            m.py(by)
        );
    }
    let _ = writeln!(svg, "  </g>");
}

/// Render the spectral picture; the output string is byte-deterministic
/// for fixed inputs.
pub fn render_svg(model: &DiscriminantModel, spec: &PlotSpec) -> Result<String, Error> {
    spec.validate()?;
    let m = Mapper {
        spec: spec.clone(),
        size: 640.0,
    };
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 640 640\" width=\"640\" height=\"640\">"
    );
    let _ = writeln!(
        svg,
        "  <style>path{{fill:none}} .level{{stroke:#444;stroke-width:1}} .edge{{stroke:#d62728;stroke-width:1;stroke-dasharray:6 4}} .imzero{{stroke:#1f77b4;stroke-width:1;stroke-dasharray:1 3}} .arc{{stroke:#000;stroke-width:2}} .node{{fill:#000}}</style>"
    );
    let _ = writeln!(svg, "  <rect width=\"640\" height=\"640\" fill=\"#fff\"/>");

    let eval = |x: f64, y: f64| model.eval(Complex64::new(x, y));

    for &kappa in &spec.kappa_levels {
        let level = 2.0 * kappa.cos();
        let f = move |x: f64, y: f64| eval(x, y).re - level;
        let segs = contour_segments(&f, spec);
        // the ±2 levels are the spectrum's edge curves: dashed
        let class = if (level.abs() - 2.0).abs() < 1e-12 {
            "edge"
        } else {
            "level"
        };
        write_segments(&mut svg, &m, &segs, class);
    }

    let f_im = move |x: f64, y: f64| eval(x, y).im;
    write_segments(&mut svg, &m, &contour_segments(&f_im, spec), "imzero");

    if spec.show_arcs {
        let fam = trace_arcs(model, &uniform_kappa_grid(129))?;
        let _ = writeln!(svg, "  <g class=\"arc\">");
        for arc in &fam.arcs {
            let mut d = String::new();
            for (i, &(_, e)) in arc.samples.iter().enumerate() {
                let cmd = if i == 0 { 'M' } else { 'L' };
                let _ = write!(d, "{}{:.3} {:.3} ", cmd, m.px(e.re), m.py(e.im));
            }
            let _ = writeln!(svg, "    <path d=\"{}\"/>", d.trim_end());
        }
        let _ = writeln!(svg, "  </g>");
    }

    let mut nodes: Vec<f64> = Vec::new();
    if spec.show_alpha_nodes {
        for j in 1..=model.period() {
            nodes.push(model.alpha_node(j).expect("j in range"));
        }
    }
    if spec.show_beta_nodes {
        for k in 1..model.period() {
            nodes.push(model.beta_node(k).expect("k in range"));
        }
    }
    if !nodes.is_empty() {
        let _ = writeln!(svg, "  <g class=\"node\">");
        for e in nodes {
            let _ = writeln!(
                svg,
                "    <circle cx=\"{:.3}\" cy=\"{:.3}\" r=\"3\"/>",
                m.px(e),
                m.py(0.0)
            );
        }
        let _ = writeln!(svg, "  </g>");
    }

    let _ = writeln!(svg, "</svg>");
    Ok(svg)
}
