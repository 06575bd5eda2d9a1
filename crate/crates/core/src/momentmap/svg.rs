use std::fmt::Write as _;
use std::path::Path;

use num_traits::ToPrimitive;

use super::{MomentError, MomentSample};
use crate::toric::PolytopeQ;

const SIZE: f64 = 400.0;
const MARGIN: f64 = 24.0;
const STRIP_HEIGHT: f64 = 80.0;
const TICKS: usize = 6;

/// Scatter plot of the samples over the outline of `p`, projected to the
/// coordinates `proj`. One-dimensional polytopes (or `proj.0 == proj.1`) are
/// drawn as a strip with tick marks.
pub fn render_svg(samples: &[MomentSample], p: &PolytopeQ, proj: (usize, usize)) -> Result<String, MomentError> {
    let d = p.dim_ambient();
    for idx in [proj.0, proj.1] {
        if idx >= d {
            return Err(MomentError::BadProjection(idx));
        }
    }
    if let Some(s) = samples.iter().find(|s| s.value.len() != d) {
        return Err(MomentError::DimensionMismatch {
            expected: d,
            found: s.value.len(),
        });
    }
    if d == 1 || proj.0 == proj.1 {
        Ok(strip(samples, p, proj.0))
    } else {
        Ok(plane(samples, p, proj))
    }
}

pub fn emit_svg(samples: &[MomentSample], p: &PolytopeQ, proj: (usize, usize), path: &Path) -> Result<(), MomentError> {
    std::fs::write(path, render_svg(samples, p, proj)?)?;
    Ok(())
}

fn range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    if !lo.is_finite() {
        return (0.0, 1.0);
    }
    if hi - lo < 1e-12 {
        (lo - 0.5, hi + 0.5)
    } else {
        (lo, hi)
    }
}

fn scale(v: f64, (lo, hi): (f64, f64), len: f64) -> f64 {
    MARGIN + (v - lo) / (hi - lo) * (len - 2.0 * MARGIN)
}

fn header(out: &mut String, w: f64, h: f64) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(out, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
}

fn strip(samples: &[MomentSample], p: &PolytopeQ, i: usize) -> String {
    let verts: Vec<f64> = p.vertices().iter().map(|v| v[i].to_f64().unwrap_or(0.0)).collect();
    let r = range(verts.iter().copied().chain(samples.iter().map(|s| s.value[i])));
    let y = STRIP_HEIGHT / 2.0;
    let mut out = String::new();
    header(&mut out, SIZE, STRIP_HEIGHT);
    let (vlo, vhi) = range(verts.iter().copied());
    let _ = writeln!(
        out,
        r#"<line x1="{:.3}" y1="{y:.3}" x2="{:.3}" y2="{y:.3}" stroke="black" stroke-width="2"/>"#,
        scale(vlo, r, SIZE),
        scale(vhi, r, SIZE)
    );
    for k in 0..=TICKS {
        let v = r.0 + (r.1 - r.0) * k as f64 / TICKS as f64;
        let x = scale(v, r, SIZE);
        let _ = writeln!(
            out,
            r#"<line x1="{x:.3}" y1="{:.3}" x2="{x:.3}" y2="{:.3}" stroke="gray"/>"#,
            y + 8.0,
            y + 14.0
        );
        let _ = writeln!(
            out,
            r#"<text x="{x:.3}" y="{:.3}" font-size="10" text-anchor="middle">{v:.2}</text>"#,
            y + 26.0
        );
    }
    for s in samples {
        let _ = writeln!(
            out,
            r#"<circle cx="{:.3}" cy="{y:.3}" r="1.5" fill="steelblue" fill-opacity="0.5"/>"#,
            scale(s.value[i], r, SIZE)
        );
    }
    out.push_str("</svg>\n");
    out
}

fn plane(samples: &[MomentSample], p: &PolytopeQ, (i, j): (usize, usize)) -> String {
    let outline: Vec<(f64, f64)> = p
        .outline_2d(i, j)
        .iter()
        .map(|(a, b)| (a.to_f64().unwrap_or(0.0), b.to_f64().unwrap_or(0.0)))
        .collect();
    let rx = range(outline.iter().map(|q| q.0).chain(samples.iter().map(|s| s.value[i])));
    let ry = range(outline.iter().map(|q| q.1).chain(samples.iter().map(|s| s.value[j])));
    // y grows downwards in svg
    let px = |x: f64| scale(x, rx, SIZE);
    let py = |y: f64| SIZE - scale(y, ry, SIZE);
    let mut out = String::new();
    header(&mut out, SIZE, SIZE);
    let pts: Vec<String> = outline
        .iter()
        .map(|&(x, y)| format!("{:.3},{:.3}", px(x), py(y)))
        .collect();
    let _ = writeln!(
        out,
        r#"<polygon points="{}" fill="none" stroke="black" stroke-width="2"/>"#,
        pts.join(" ")
    );
    for s in samples {
        let _ = writeln!(
            out,
            r#"<circle cx="{:.3}" cy="{:.3}" r="1.5" fill="steelblue" fill-opacity="0.5"/>"#,
            px(s.value[i]),
            py(s.value[j])
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::integer;

    #[test]
    fn outline_only_without_samples() {
        let p = PolytopeQ::hull(
            vec![vec![integer(0), integer(0)], vec![integer(1), integer(0)], vec![integer(0), integer(1)]],
            2,
        );
        let s = render_svg(&[], &p, (0, 1)).unwrap();
        assert!(s.contains("<polygon"));
        assert!(!s.contains("<circle"));
    }

    #[test]
    fn bad_projection() {
        let p = PolytopeQ::hull(vec![vec![integer(0)]], 1);
        assert!(matches!(render_svg(&[], &p, (0, 1)), Err(MomentError::BadProjection(1))));
    }
}
