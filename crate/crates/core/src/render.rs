//! SVG output for planar twisted polytopes.

use std::fmt::Write as _;

use num::ToPrimitive;

use crate::divisors::DivisorData;
use crate::error::{Result, TcccError};
use crate::lattice_fan::RationalVector;
use crate::linalg::{rat, Rational};
use crate::twisted_sheaf::{stalk_p, support_bounds};

const SIZE: f64 = 480.0;
const RASTER: i64 = 96;

fn f(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(0.0)
}

/// Fill for a stalk: hue by top degree, darker for larger total dimension.
fn fill(g: &crate::cellular::GradedDims) -> Option<&'static str> {
    const PALETTE: [[&str; 3]; 4] = [
        ["#bcd7f2", "#7fb0e0", "#3f7fbf"],
        ["#f6d2b0", "#eba66a", "#c96f22"],
        ["#c5e8c0", "#86cc7c", "#3f9a34"],
        ["#e2c9f0", "#bf8fdc", "#8a4cb3"],
    ];
    if g.is_zero() {
        return None;
    }
    let deg = (-g.max_degree().unwrap_or(0)).clamp(0, 3) as usize;
    Some(PALETTE[deg][(g.total() - 1).min(2)])
}

/// Renders shard boundary lines, the polytope edges with hairs on the
/// side where the shard lives, and a raster of stalk classes.
pub fn render_svg(d: &DivisorData) -> Result<String> {
    let fan = d.fan();
    if fan.dim() != 2 {
        return Err(TcccError::Unsupported(format!("render needs a 2-d fan, got dim {}", fan.dim())));
    }
    let (lo, hi) = support_bounds(d);
    let pad = Rational::from_integer(1.into());
    let (x0, x1) = (f(&(&lo[0] - &pad)), f(&(&hi[0] + &pad)));
    let (y0, y1) = (f(&(&lo[1] - &pad)), f(&(&hi[1] + &pad)));
    let span = (x1 - x0).max(y1 - y0);
    let sx = |x: f64| (x - x0) / span * SIZE;
    let sy = |y: f64| SIZE - (y - y0) / span * SIZE;

    let mut s = String::new();
    writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#)
        .unwrap();
    writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();

    // Stalks sampled at cell centres of a fine grid; exact rationals.
    let lo_q = [&lo[0] - &pad, &lo[1] - &pad];
    let step = Rational::from_integer((span.ceil() as i64).into()) / Rational::from_integer(RASTER.into());
    let px = SIZE / RASTER as f64 * (span.ceil() / span);
    writeln!(s, r#"<g id="stalks" shape-rendering="crispEdges">"#).unwrap();
    for i in 0..RASTER {
        for j in 0..RASTER {
            let cx = &lo_q[0] + &step * (Rational::from_integer(i.into()) + rat(1, 2));
            let cy = &lo_q[1] + &step * (Rational::from_integer(j.into()) + rat(1, 2));
            let g = stalk_p(d, &RationalVector(vec![cx.clone(), cy.clone()]));
            if let Some(col) = fill(&g) {
                let (l, t) = (sx(f(&(&cx - &step / Rational::from_integer(2.into())))), sy(f(&(&cy + &step / Rational::from_integer(2.into())))));
                writeln!(s, r#"<rect x="{l:.2}" y="{t:.2}" width="{px:.2}" height="{px:.2}" fill="{col}"/>"#).unwrap();
            }
        }
    }
    writeln!(s, "</g>").unwrap();

    // Shard boundary lines <x, v> = a.
    writeln!(s, r##"<g id="shard-lines" stroke="#888" stroke-width="0.8" stroke-dasharray="4 3">"##).unwrap();
    for (i, v) in fan.rays().iter().enumerate() {
        let (a, b) = (f(&v.0[0].clone().into()), f(&v.0[1].clone().into()));
        let c = f(d.coeff(i));
        let (p, q) = line_in_box(a, b, c, (x0, x1, y0, y1));
        if let (Some(p), Some(q)) = (p, q) {
            writeln!(s, r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/>"#, sx(p.0), sy(p.1), sx(q.0), sy(q.1))
                .unwrap();
        }
    }
    writeln!(s, "</g>").unwrap();

    // Edges between adjacent vertices, hairs pointing along v.
    writeln!(s, r##"<g id="edges" stroke="black" stroke-width="1.6">"##).unwrap();
    for (wall, c1, c2) in fan.wall_pairs()? {
        let rho = wall.rays[0];
        let (p, q) = (d.vertex(c1), d.vertex(c2));
        let (p, q) = ((f(&p.0[0]), f(&p.0[1])), (f(&q.0[0]), f(&q.0[1])));
        writeln!(s, r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/>"#, sx(p.0), sy(p.1), sx(q.0), sy(q.1)).unwrap();
        let v = fan.ray(rho);
        let (vx, vy) = (v.0[0].to_f64().unwrap_or(0.0), v.0[1].to_f64().unwrap_or(0.0));
        let norm = (vx * vx + vy * vy).sqrt();
        let hair = 0.025 * span;
        let len = ((q.0 - p.0).powi(2) + (q.1 - p.1).powi(2)).sqrt();
        let k = ((len / span * 24.0).ceil() as usize).max(1);
        for t in 1..=k {
            let t = t as f64 / (k + 1) as f64;
            let (mx, my) = (p.0 + t * (q.0 - p.0), p.1 + t * (q.1 - p.1));
            writeln!(
                s,
                r#"<line stroke-width="0.8" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/>"#,
                sx(mx),
                sy(my),
                sx(mx + hair * vx / norm),
                sy(my + hair * vy / norm)
            )
            .unwrap();
        }
    }
    writeln!(s, "</g>").unwrap();

    writeln!(s, r#"<g id="vertices" fill="black">"#).unwrap();
    for v in d.vertices() {
        writeln!(s, r#"<circle cx="{:.2}" cy="{:.2}" r="2.5"/>"#, sx(f(&v.0[0])), sy(f(&v.0[1]))).unwrap();
    }
    writeln!(s, "</g>\n</svg>").unwrap();
    Ok(s)
}

type Pt = Option<(f64, f64)>;

/// Clips `a x + b y = c` to the box; returns the two endpoints.
fn line_in_box(a: f64, b: f64, c: f64, (x0, x1, y0, y1): (f64, f64, f64, f64)) -> (Pt, Pt) {
    let mut pts = Vec::new();
    if b.abs() > 1e-12 {
        for x in [x0, x1] {
            let y = (c - a * x) / b;
            if (y0..=y1).contains(&y) {
                pts.push((x, y));
            }
        }
    }
    if a.abs() > 1e-12 {
        for y in [y0, y1] {
            let x = (c - b * y) / a;
            if (x0..=x1).contains(&x) {
                pts.push((x, y));
            }
        }
    }
    (pts.first().copied(), pts.last().copied())
}
