//! Deterministic SVG pictures of the four sails of an operator.

use std::fmt::Write as _;

use klein_core::lattice::{int_length, int_sine};
use klein_core::{four_sail_periods, Error, LatticePoint, Matrix, Result};
use num_bigint::BigInt;
use num_traits::ToPrimitive;

type P = LatticePoint<BigInt>;

const SIZE: f64 = 640.0;
const MAX_WINDOW: i64 = 60;
const COLORS: [&str; 4] = ["#c0392b", "#2471a3", "#1e8449", "#b9770e"];

fn coords(p: &P) -> Option<(f64, f64)> {
    Some((p.x.to_f64()?, p.y.to_f64()?))
}

fn inside(p: &P, w: i64) -> bool {
    let w = BigInt::from(w);
    p.x.magnitude() <= w.magnitude() && p.y.magnitude() <= w.magnitude()
}

/// Sail vertices obtained by shifting one period back and forth, kept while
/// inside the `2w` box.
fn extended(chain: &[P], shift: &Matrix, w: i64) -> Result<Vec<P>> {
    let core: Vec<P> = chain[..chain.len() - 1].to_vec();
    let inv = shift.inverse()?;
    let mut forward = vec![core.clone()];
    let mut back = Vec::new();
    let (mut f, mut b) = (core.clone(), core);
    for _ in 0..64 {
        f = f.iter().map(|p| shift.apply(p)).collect();
        b = b.iter().map(|p| inv.apply(p)).collect();
        let (fin, bin) = (f.iter().any(|p| inside(p, 2 * w)), b.iter().any(|p| inside(p, 2 * w)));
        if fin {
            forward.push(f.clone());
        }
        if bin {
            back.push(b.clone());
        }
        if !fin && !bin {
            break;
        }
    }
    let mut out: Vec<P> = back.into_iter().rev().flatten().collect();
    out.extend(forward.into_iter().flatten());
    Ok(out)
}

fn eigen_directions(a: &Matrix) -> Option<[(f64, f64); 2]> {
    let (m11, m12, m21, m22) = (a.m11.to_f64()?, a.m12.to_f64()?, a.m21.to_f64()?, a.m22.to_f64()?);
    let tr = m11 + m22;
    let disc = (tr * tr - 4.0).sqrt();
    let dir = |l: f64| {
        let (x, y) = if m12.abs() >= m21.abs() { (m12, l - m11) } else { (l - m22, m21) };
        let n = x.hypot(y);
        (x / n, y / n)
    };
    Some([dir((tr + disc) / 2.0), dir((tr - disc) / 2.0)])
}

pub fn render(a: &Matrix, window: Option<i64>) -> Result<String> {
    let sails = four_sail_periods(a)?;
    let w = match window {
        Some(w) if (1..=MAX_WINDOW).contains(&w) => w,
        Some(w) => return Err(Error::OutOfRange(format!("window {w} not in 1..={MAX_WINDOW}"))),
        None => {
            let m = sails
                .iter()
                .flat_map(|s| s.chain.vertices().iter().map(|p| p.max_norm()))
                .max()
                .and_then(|m| m.to_i64())
                .unwrap_or(MAX_WINDOW);
            (2 * m + 2).clamp(6, MAX_WINDOW)
        }
    };
    let scale = SIZE / (2 * w + 2) as f64;
    let px = |x: f64, y: f64| (SIZE / 2.0 + x * scale, SIZE / 2.0 - y * scale);
    let font = (scale * 0.45).clamp(7.0, 16.0);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}" font-family="sans-serif" font-size="{font:.1}">"#
    );
    let _ = writeln!(svg, r##"<rect width="{SIZE}" height="{SIZE}" fill="#ffffff"/>"##);
    let _ = writeln!(svg, "<title>{a}</title>");

    let _ = writeln!(svg, r##"<g fill="#999999">"##);
    for y in (-w..=w).rev() {
        for x in -w..=w {
            let (cx, cy) = px(x as f64, y as f64);
            let _ = writeln!(svg, r#"<circle cx="{cx:.2}" cy="{cy:.2}" r="1.5"/>"#);
        }
    }
    let _ = writeln!(svg, "</g>");

    let reach = (w + 1) as f64 * 1.5;
    if let Some(dirs) = eigen_directions(a) {
        for (dx, dy) in dirs {
            let (x1, y1) = px(-dx * reach, -dy * reach);
            let (x2, y2) = px(dx * reach, dy * reach);
            let _ = writeln!(
                svg,
                r##"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="#555555" stroke-dasharray="6 4"/>"##
            );
        }
    }

    for (s, color) in sails.iter().zip(COLORS) {
        let pts = extended(s.chain.vertices(), &s.shift, w)?;
        let fp: Vec<(f64, f64)> = pts
            .iter()
            .map(|p| coords(p).map(|(x, y)| px(x, y)))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::OutOfRange("sail vertex exceeds f64".into()))?;
        let path: Vec<String> = fp.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
        let _ = writeln!(
            svg,
            r#"<g class="sail" data-octant="{}"><polyline points="{}" fill="none" stroke="{color}" stroke-width="2"/>"#,
            s.octant,
            path.join(" ")
        );
        for i in 0..pts.len().saturating_sub(1) {
            if !(inside(&pts[i], w) || inside(&pts[i + 1], w)) {
                continue;
            }
            let len = int_length(&pts[i], &pts[i + 1])?;
            let (mx, my) = ((fp[i].0 + fp[i + 1].0) / 2.0, (fp[i].1 + fp[i + 1].1) / 2.0);
            let _ = writeln!(svg, r#"<text x="{mx:.2}" y="{my:.2}" fill="black" text-anchor="middle" dy="-3">{len}</text>"#);
        }
        for i in 1..pts.len().saturating_sub(1) {
            if !inside(&pts[i], w) {
                continue;
            }
            let sine = int_sine(&pts[i - 1], &pts[i], &pts[i + 1])?;
            let (x, y) = fp[i];
            let r = font * 0.75;
            let _ = writeln!(svg, r#"<circle cx="{x:.2}" cy="{y:.2}" r="{r:.2}" fill="{color}"/>"#);
            let _ = writeln!(
                svg,
                r#"<text x="{x:.2}" y="{y:.2}" fill="white" text-anchor="middle" dominant-baseline="central">{sine}</text>"#
            );
        }
        let _ = writeln!(svg, "</g>");
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}
