//! File emitters: the region CSV (exact rationals, byte-stable) and the SVG
//! region map (the one consumer of floating point outside the oracles).

use crate::arith::show_rat;
use crate::catalog::RegionSpec;
use crate::oracle::to_f64;
use crate::scan::{RegionScan, Status};
use std::fmt::Write as _;

/// CSV with header `a,b[,c],status`, rows in grid order, rationals as `p/q`.
pub fn region_csv(scan: &RegionScan) -> String {
    let mut out = String::new();
    out.push_str(&scan.coeff_names.join(","));
    out.push_str(",status\n");
    for p in &scan.points {
        let coords: Vec<String> = p.coeffs.iter().map(show_rat).collect();
        out.push_str(&coords.join(","));
        out.push(',');
        out.push_str(p.status.token());
        out.push('\n');
    }
    out
}

fn color(status: Status) -> &'static str {
    match status {
        Status::NotLogFano => "#d9d9d9",
        Status::Unstable => "#d73027",
        Status::Undecided => "#fee090",
        Status::SemistableCertified => "#91bfdb",
        Status::PolystableCertified => "#4575b4",
    }
}

/// SVG 1.1 region map over the unit square of the first two coefficients:
/// one rect per grid cell, plus overlay curves for the known region boundary
/// when available. Exact-to-float conversion happens only here.
pub fn region_svg(scan: &RegionScan, known: Option<&RegionSpec>) -> String {
    let size = 640.0;
    let step = to_f64(&scan.step);
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"0 0 {size} {size}\">"
    );
    let _ = writeln!(svg, "<rect width=\"{size}\" height=\"{size}\" fill=\"white\"/>");
    // y axis points up: flip vertically
    for p in &scan.points {
        let a = to_f64(&p.coeffs[0]);
        let b = if p.coeffs.len() > 1 { to_f64(&p.coeffs[1]) } else { 0.0 };
        let x = a * size;
        let y = (1.0 - b - step) * size;
        let w = step * size;
        let _ = writeln!(
            svg,
            "<rect x=\"{x:.3}\" y=\"{y:.3}\" width=\"{w:.3}\" height=\"{w:.3}\" fill=\"{}\"/>",
            color(p.status)
        );
    }
    if let Some(region) = known {
        for poly in region.ineqs.iter().filter(|p| p.nvars == 2) {
            let eval = |a: f64, b: f64| -> f64 {
                let xs = vec![
                    crate::arith::Rat::from_float(a).unwrap_or_default(),
                    crate::arith::Rat::from_float(b).unwrap_or_default(),
                ];
                to_f64(&poly.eval(&xs))
            };
            // trace the zero set column by column with a bisection per column
            let mut pts = Vec::new();
            let cols = 256usize;
            for i in 0..=cols {
                let a = i as f64 / cols as f64;
                let (mut lo, mut hi) = (0.0f64, 1.0f64);
                let flo = eval(a, lo);
                if flo.signum() == eval(a, hi).signum() {
                    continue;
                }
                for _ in 0..40 {
                    let mid = 0.5 * (lo + hi);
                    if eval(a, mid).signum() == flo.signum() {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                pts.push((a * size, (1.0 - 0.5 * (lo + hi)) * size));
            }
            if pts.len() >= 2 {
                let path: Vec<String> = pts.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
                let _ = writeln!(
                    svg,
                    "<polyline points=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>",
                    path.join(" ")
                );
            }
        }
    }
    // axes
    let _ = writeln!(
        svg,
        "<rect x=\"0\" y=\"0\" width=\"{size}\" height=\"{size}\" fill=\"none\" stroke=\"black\"/>"
    );
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::catalog::instantiate;
    use crate::scan::scan;

    #[test]
    fn csv_is_stable_and_exact() {
        let case = instantiate("F3", &Default::default()).unwrap();
        let s = scan(&case, &rat(1, 4)).unwrap();
        let c1 = region_csv(&s);
        let c2 = region_csv(&s);
        assert_eq!(c1, c2);
        assert!(c1.starts_with("a,b,status\n"));
        assert!(c1.contains("3/4"));
        // F3 at (3/4, 1/2): both region boundaries are met with equality
        assert!(c1.contains("3/4,1/2,semistable_certified"));
    }

    #[test]
    fn svg_emitted_even_for_empty_region() {
        let case = instantiate("F2", &Default::default()).unwrap();
        let s = scan(&case, &rat(1, 4)).unwrap();
        let svg = region_svg(&s, None);
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains("</svg>"));
        assert!(svg.matches("<rect").count() > 16);
    }
}
