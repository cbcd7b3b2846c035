//! SVG and PPM/PGM export. Coordinates are quantized here and nowhere else.

use std::fmt::Write as _;

use crate::arith::to_f64;
use crate::bcurve::YLevel;
use crate::cover::BoxCover;
use crate::curve::MonotoneCurve;
use crate::region::{status, RegionMap};

const MARGIN: f64 = 8.0;

fn svg_open(size: u32) -> String {
    let full = size as f64 + 2.0 * MARGIN;
    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{full}\" height=\"{full}\" viewBox=\"0 0 {full} {full}\">"
    );
    let _ = writeln!(s, "<rect x=\"0\" y=\"0\" width=\"{full}\" height=\"{full}\" fill=\"white\"/>");
    let _ = writeln!(
        s,
        "<rect x=\"{MARGIN}\" y=\"{MARGIN}\" width=\"{size}\" height=\"{size}\" fill=\"none\" stroke=\"#999\" stroke-width=\"0.5\"/>"
    );
    s
}

/// Unit-square point to SVG coordinates (y up).
fn to_px(x: f64, y: f64, size: u32) -> (f64, f64) {
    (MARGIN + x * size as f64, MARGIN + (1.0 - y) * size as f64)
}

/// The pieces of `Y_n`, alternately shaded by the last symbol of their word.
pub fn svg_ylevel(y: &YLevel, size: u32) -> String {
    let mut s = svg_open(size);
    for p in &y.pieces {
        let v = p.poly.vertices();
        let fill = match p.word.0.last().map(|c| c.as_char()) {
            Some('1') => "#d98c3a",
            _ => "#4a78c8",
        };
        if v.len() == 1 {
            let (x, yy) = to_px(to_f64(&v[0].x), to_f64(&v[0].y), size);
            let _ = writeln!(s, "<circle cx=\"{x:.3}\" cy=\"{yy:.3}\" r=\"1.5\" fill=\"black\"/>");
            continue;
        }
        let pts: Vec<String> = v
            .iter()
            .map(|q| {
                let (x, yy) = to_px(to_f64(&q.x), to_f64(&q.y), size);
                format!("{x:.3},{yy:.3}")
            })
            .collect();
        let _ = writeln!(
            s,
            "<polygon points=\"{}\" fill=\"{fill}\" fill-opacity=\"0.6\" stroke=\"black\" stroke-width=\"0.3\"><title>{}</title></polygon>",
            pts.join(" "),
            p.word
        );
    }
    s.push_str("</svg>\n");
    s
}

/// Polylines for a list of `(curve, colour)`.
pub fn svg_curves(curves: &[(&MonotoneCurve, &str)], size: u32) -> String {
    let mut s = svg_open(size);
    for (c, colour) in curves {
        let pts: Vec<String> = c
            .to_f64()
            .into_iter()
            .map(|(x, y)| {
                let (px, py) = to_px(x, y, size);
                format!("{px:.3},{py:.3}")
            })
            .collect();
        let _ = writeln!(
            s,
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{colour}\" stroke-width=\"0.7\"/>",
            pts.join(" ")
        );
    }
    s.push_str("</svg>\n");
    s
}

/// Binary PGM of a cover: occupied cells black, one pixel per cell, top row first.
pub fn pgm_cover(c: &BoxCover) -> Vec<u8> {
    let n = c.side() as usize;
    let mut out = format!("P5\n{n} {n}\n255\n").into_bytes();
    let header = out.len();
    out.resize(header + n * n, 255);
    for &cell in &c.cells {
        let (row, col) = ((cell as usize) / n, (cell as usize) % n);
        out[header + (n - 1 - row) * n + col] = 0;
    }
    out
}

/// The same raster as binary PPM.
pub fn ppm_cover(c: &BoxCover) -> Vec<u8> {
    let n = c.side() as usize;
    let grey = pgm_cover(c);
    let mut out = format!("P6\n{n} {n}\n255\n").into_bytes();
    for &v in &grey[grey.len() - n * n..] {
        out.extend_from_slice(&[v, v, v]);
    }
    out
}

pub type Rgb = [u8; 3];

pub const UNDECIDED: Rgb = [215, 215, 215];
pub const OUTSIDE: Rgb = [255, 255, 255];
pub const OUTLINE: Rgb = [0, 0, 0];

/// Legend colour of a flag combination.
pub fn colour(flags: u8) -> Rgb {
    const GD: u8 = status::G | status::DIM;
    match flags {
        0 => UNDECIDED,
        f if f & status::INTERIOR != 0 => [150, 60, 170],
        GD => [50, 150, 70],
        status::G => [60, 100, 200],
        status::DIM => [230, 150, 40],
        _ => [120, 120, 120],
    }
}

/// Legend entries `(label, colour)`.
pub fn legend() -> Vec<(&'static str, Rgb)> {
    vec![
        ("G-certified", colour(status::G)),
        ("dim>1-certified", colour(status::DIM)),
        ("G and dim>1", colour(status::G | status::DIM)),
        ("interior-certified", colour(status::INTERIOR)),
        ("undecided", UNDECIDED),
    ]
}

fn hex(c: Rgb) -> String {
    format!("#{:02x}{:02x}{:02x}", c[0], c[1], c[2])
}

/// Pixel raster of a region map over `λ, μ ∈ [0, 1]`, `2^depth` pixels a side.
pub fn region_pixels(map: &RegionMap, depth: u32) -> (usize, Vec<Rgb>) {
    let n = 1usize << depth;
    let mut px = vec![OUTSIDE; n * n];
    for e in &map.entries {
        let c = e.cell;
        if c.depth > depth {
            // finer than a pixel: paint the pixel containing it
            let s = c.depth - depth;
            let (i, j) = ((c.i >> s) as usize, (c.j >> s) as usize);
            px[(n - 1 - j) * n + i] = colour(e.flags);
            continue;
        }
        let s = depth - c.depth;
        let (i0, j0) = ((c.i as usize) << s, (c.j as usize) << s);
        for i in i0..i0 + (1 << s) {
            for j in j0..j0 + (1 << s) {
                px[(n - 1 - j) * n + i] = colour(e.flags);
            }
        }
    }
    // outline of the triangle λ < μ, λ + μ > 1, μ < 1, drawn over blank pixels only
    let steps = 4 * n;
    let mut dot = |x: f64, y: f64| {
        let i = ((x * n as f64) as usize).min(n - 1);
        let j = ((y * n as f64) as usize).min(n - 1);
        let p = &mut px[(n - 1 - j) * n + i];
        if *p == OUTSIDE {
            *p = OUTLINE;
        }
    };
    for k in 0..=steps {
        let t = k as f64 / steps as f64;
        dot(t, 1.0);
        dot(t / 2.0, 1.0 - t / 2.0);
        dot(0.5 + t / 2.0, 0.5 + t / 2.0);
    }
    (n, px)
}

/// Binary PPM of a region map.
pub fn ppm_region(map: &RegionMap, depth: u32) -> Vec<u8> {
    let (n, px) = region_pixels(map, depth);
    let mut out = format!("P6\n{n} {n}\n255\n").into_bytes();
    for p in px {
        out.extend_from_slice(&p);
    }
    out
}

/// Region map as SVG: one rectangle per entry, the triangle outline and a legend.
pub fn svg_region(map: &RegionMap, size: u32) -> String {
    let mut s = svg_open(size);
    for e in &map.entries {
        let [l0, l1, m0, m1] = e.cell.bounds();
        let (x0, y1) = to_px(to_f64(&l0), to_f64(&m1), size);
        let (x1, y0) = to_px(to_f64(&l1), to_f64(&m0), size);
        let _ = writeln!(
            s,
            "<rect x=\"{x0:.4}\" y=\"{y1:.4}\" width=\"{:.4}\" height=\"{:.4}\" fill=\"{}\"><title>{}</title></rect>",
            x1 - x0,
            y0 - y1,
            hex(colour(e.flags)),
            e.witness.join(" ")
        );
    }
    let corners: Vec<String> = [(0.0, 1.0), (0.5, 0.5), (1.0, 1.0)]
        .iter()
        .map(|&(x, y)| {
            let (px, py) = to_px(x, y, size);
            format!("{px:.3},{py:.3}")
        })
        .collect();
    let _ = writeln!(
        s,
        "<polygon points=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"0.8\"/>",
        corners.join(" ")
    );
    for (k, (label, c)) in legend().into_iter().enumerate() {
        let y = MARGIN + size as f64 * 0.55 + 14.0 * k as f64;
        let x = MARGIN + size as f64 * 0.6;
        let _ = writeln!(s, "<rect x=\"{x:.1}\" y=\"{:.1}\" width=\"10\" height=\"10\" fill=\"{}\"/>", y - 9.0, hex(c));
        let _ = writeln!(s, "<text x=\"{:.1}\" y=\"{y:.1}\" font-size=\"10\">{label}</text>", x + 14.0);
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::Cell;
    use crate::region::RegionEntry;

    #[test]
    fn empty_map_is_outline_only() {
        let (n, px) = region_pixels(&RegionMap::default(), 5);
        assert_eq!(n, 32);
        assert!(px.iter().all(|&p| p == OUTSIDE || p == OUTLINE));
        assert!(px.iter().any(|&p| p == OUTLINE));
        let svg = svg_region(&RegionMap::default(), 256);
        assert!(svg.contains("<polygon"));
        assert!(!svg.contains("<title>"));
    }

    #[test]
    fn single_cell_lands_in_place() {
        // λ ∈ [3/8, 7/16], μ ∈ [7/8, 15/16]
        let cell = Cell { depth: 4, i: 6, j: 14 };
        let map = RegionMap::new(vec![RegionEntry {
            cell,
            flags: status::G,
            witness: vec!["(01)".into()],
        }]);
        let (n, px) = region_pixels(&map, 4);
        let g = colour(status::G);
        let filled: Vec<(usize, usize)> = (0..n * n).filter(|&k| px[k] == g).map(|k| (k % n, n - 1 - k / n)).collect();
        assert_eq!(filled, vec![(6, 14)]);
        let (_, px) = region_pixels(&map, 6);
        assert_eq!(px.iter().filter(|&&p| p == g).count(), 16);
        let svg = svg_region(&map, 160);
        assert!(svg.contains("x=\"68.0000\" y=\"18.0000\" width=\"10.0000\" height=\"10.0000\""));
    }

    #[test]
    fn combined_colour_for_both() {
        let cell = Cell { depth: 3, i: 3, j: 7 };
        let a = RegionMap::new(vec![RegionEntry { cell, flags: status::G, witness: vec![] }]);
        let b = RegionMap::new(vec![RegionEntry { cell, flags: status::DIM, witness: vec![] }]);
        let (_, px) = region_pixels(&a.merge(&b), 3);
        assert!(px.contains(&colour(status::G | status::DIM)));
        assert!(!px.contains(&colour(status::G)));
    }

    #[test]
    fn cover_raster() {
        let c = BoxCover { k: 1, cells: vec![0, 3], depth: 0 };
        let p = pgm_cover(&c);
        assert_eq!(&p[p.len() - 4..], &[255, 0, 0, 255]);
    }
}
