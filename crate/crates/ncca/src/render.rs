//! PPM and SVG pictures of configurations.
//!
//! Triangles have unit side, row `y` is drawn above row `y - 1`, so up
//! triangles point up. Hexagons are pointy-top in axial layout, row `y`
//! below row `y - 1` and shifted half a cell to the right of it.
//!
//! Colors: state `v` gets `PALETTE[v mod 8]`.

use std::fmt::Write as _;

use ncca_core::{Cell, Configuration, Geometry, Orientation};

pub const PALETTE: [[u8; 3]; 8] = [
    [0xf4, 0xf1, 0xea],
    [0x4e, 0x79, 0xa7],
    [0xf2, 0x8e, 0x2b],
    [0xe1, 0x57, 0x59],
    [0x76, 0xb7, 0xb2],
    [0x59, 0xa1, 0x4f],
    [0xed, 0xc9, 0x48],
    [0xb0, 0x7a, 0xa1],
];

const BACKGROUND: [u8; 3] = [0xff, 0xff, 0xff];
const SQRT3: f64 = 1.732_050_807_568_877_2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Ppm,
    Svg,
}

pub fn color(state: i64) -> [u8; 3] {
    PALETTE[state.rem_euclid(PALETTE.len() as i64) as usize]
}

/// Cell outline in units of the cell size, y growing downwards.
fn polygon(geometry: Geometry, cell: Cell, height: usize) -> Vec<(f64, f64)> {
    let (x, y) = (cell.x as f64, cell.y as f64);
    match geometry {
        Geometry::Triangular => {
            let h = SQRT3 / 2.0;
            let left = x / 2.0;
            let top = (height as f64 - 1.0 - y) * h;
            match ncca_core::lattice::tri_orientation(cell) {
                Orientation::Up => vec![(left + 0.5, top), (left + 1.0, top + h), (left, top + h)],
                Orientation::Down => vec![(left, top), (left + 1.0, top), (left + 0.5, top + h)],
            }
        }
        Geometry::Hexagonal => {
            let r = 1.0 / SQRT3;
            let cx = x + y / 2.0 + 0.5;
            let cy = 1.5 * r * y + r;
            (0..6)
                .map(|k| {
                    let a = std::f64::consts::PI / 3.0 * k as f64 + std::f64::consts::PI / 6.0;
                    (cx + r * a.cos(), cy - r * a.sin())
                })
                .collect()
        }
    }
}

fn extent(config: &Configuration) -> (f64, f64) {
    let dims = config.dims();
    let (w, h) = (dims.width() as f64, dims.height() as f64);
    match dims.geometry() {
        Geometry::Triangular => (w / 2.0 + 0.5, h * SQRT3 / 2.0),
        Geometry::Hexagonal => {
            let r = 1.0 / SQRT3;
            (w + (h - 1.0) / 2.0, 1.5 * r * (h - 1.0) + 2.0 * r)
        }
    }
}

fn centroid(points: &[(f64, f64)]) -> (f64, f64) {
    let n = points.len() as f64;
    let (sx, sy) = points
        .iter()
        .fold((0.0, 0.0), |(a, b), &(x, y)| (a + x, b + y));
    (sx / n, sy / n)
}

fn inside(points: &[(f64, f64)], px: f64, py: f64) -> bool {
    let n = points.len();
    let mut sign = 0.0;
    for i in 0..n {
        let (x0, y0) = points[i];
        let (x1, y1) = points[(i + 1) % n];
        let cross = (x1 - x0) * (py - y0) - (y1 - y0) * (px - x0);
        if cross != 0.0 {
            if sign == 0.0 {
                sign = cross.signum();
            } else if cross.signum() != sign {
                return false;
            }
        }
    }
    true
}

/// Plain-text `P3` raster with `scale` pixels per unit length.
pub fn render_ppm(config: &Configuration, scale: usize) -> String {
    let dims = config.dims();
    let s = scale as f64;
    let (ew, eh) = extent(config);
    let (w, h) = ((ew * s).ceil() as usize, (eh * s).ceil() as usize);
    let mut pixels = vec![BACKGROUND; w * h];
    for cell in dims.cells() {
        let pts: Vec<(f64, f64)> = polygon(dims.geometry(), cell, dims.height())
            .into_iter()
            .map(|(x, y)| (x * s, y * s))
            .collect();
        let rgb = color(config.get(cell));
        let (x0, x1) = pts
            .iter()
            .fold((f64::MAX, f64::MIN), |(a, b), p| (a.min(p.0), b.max(p.0)));
        let (y0, y1) = pts
            .iter()
            .fold((f64::MAX, f64::MIN), |(a, b), p| (a.min(p.1), b.max(p.1)));
        let xs = (x0.floor().max(0.0) as usize)..(x1.ceil() as usize).min(w);
        for py in (y0.floor().max(0.0) as usize)..(y1.ceil() as usize).min(h) {
            for px in xs.clone() {
                if inside(&pts, px as f64 + 0.5, py as f64 + 0.5) {
                    pixels[py * w + px] = rgb;
                }
            }
        }
    }
    let mut out = String::with_capacity(pixels.len() * 12);
    let _ = writeln!(out, "P3\n{w} {h}\n255");
    for row in pixels.chunks(w) {
        let line: Vec<String> = row
            .iter()
            .map(|p| format!("{} {} {}", p[0], p[1], p[2]))
            .collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    out
}

/// SVG 1.1 with one `polygon` and one centered `text` per cell.
pub fn render_svg(config: &Configuration, scale: usize) -> String {
    let dims = config.dims();
    let s = scale as f64;
    let (ew, eh) = extent(config);
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{:.2}" height="{:.2}" viewBox="0 0 {:.2} {:.2}">"#,
        ew * s,
        eh * s,
        ew * s,
        eh * s
    );
    let font = if dims.geometry() == Geometry::Triangular {
        0.22
    } else {
        0.3
    } * s;
    for cell in dims.cells() {
        let pts = polygon(dims.geometry(), cell, dims.height());
        let v = config.get(cell);
        let [r, g, b] = color(v);
        let points: Vec<String> = pts
            .iter()
            .map(|(x, y)| format!("{:.2},{:.2}", x * s, y * s))
            .collect();
        let _ = writeln!(
            out,
            r##"<polygon points="{}" fill="#{r:02x}{g:02x}{b:02x}" stroke="#333333" stroke-width="1"/>"##,
            points.join(" ")
        );
        let (cx, cy) = centroid(&pts);
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" font-family="monospace" font-size="{font:.2}" text-anchor="middle" dominant-baseline="central">{v}</text>"#,
            cx * s,
            cy * s
        );
    }
    out.push_str("</svg>\n");
    out
}

pub fn render(config: &Configuration, format: Format, scale: usize) -> String {
    match format {
        Format::Ppm => render_ppm(config, scale),
        Format::Svg => render_svg(config, scale),
    }
}
