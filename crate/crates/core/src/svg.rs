//! Minimal static SVG rendering of a sweep: bifurcation samples against
//! the left axis, the 0-1 statistic against the right axis, both over ν.
//!
//! Output is deterministic (fixed layout, fixed formatting), contains no
//! scripts, and depends only on the rows passed in — byte-identical
//! inputs give byte-identical documents.

use std::fmt::Write as _;

use crate::sweep::SweepRow;

const WIDTH: f64 = 900.0;
const HEIGHT: f64 = 560.0;
const MARGIN_L: f64 = 64.0;
const MARGIN_R: f64 = 64.0;
const MARGIN_T: f64 = 24.0;
const MARGIN_B: f64 = 48.0;

const BIF_COLOR: &str = "#1f77b4";
const K_COLOR: &str = "#d62728";

struct Scale {
    lo: f64,
    hi: f64,
    out_lo: f64,
    out_hi: f64,
}

impl Scale {
    fn map(&self, v: f64) -> f64 {
        let t = (v - self.lo) / (self.hi - self.lo);
        self.out_lo + t * (self.out_hi - self.out_lo)
    }
}

fn coord(v: f64) -> String {
    format!("{v:.2}")
}

/// Renders the overlay scatter. Diverged rows contribute no K point and
/// only whatever bifurcation samples they managed to produce.
pub fn sweep_overlay_svg(rows: &[SweepRow]) -> String {
    let plot_l = MARGIN_L;
    let plot_r = WIDTH - MARGIN_R;
    let plot_t = MARGIN_T;
    let plot_b = HEIGHT - MARGIN_B;

    // ν axis spans the data (falling back to (0,1) for empty input).
    let (nu_lo, nu_hi) = rows
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), r| {
            (lo.min(r.nu), hi.max(r.nu))
        });
    let (nu_lo, nu_hi) = if nu_lo < nu_hi {
        (nu_lo, nu_hi)
    } else if nu_lo.is_finite() {
        (nu_lo - 0.5, nu_lo + 0.5)
    } else {
        (0.0, 1.0)
    };
    let x = Scale { lo: nu_lo, hi: nu_hi, out_lo: plot_l, out_hi: plot_r };

    // Left axis: q₁ range over all kept samples, padded 5%.
    let (q_lo, q_hi) = rows
        .iter()
        .flat_map(|r| r.bif_values.iter().copied())
        .filter(|v| v.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
            (lo.min(v), hi.max(v))
        });
    let (q_lo, q_hi) = if q_lo < q_hi {
        let pad = 0.05 * (q_hi - q_lo);
        (q_lo - pad, q_hi + pad)
    } else if q_lo.is_finite() {
        (q_lo - 0.5, q_lo + 0.5)
    } else {
        (0.0, 1.0)
    };
    let yq = Scale { lo: q_lo, hi: q_hi, out_lo: plot_b, out_hi: plot_t };

    // Right axis: K is bounded by construction.
    let yk = Scale { lo: -1.0, hi: 1.0, out_lo: plot_b, out_hi: plot_t };

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r##"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"##
    );
    let _ = writeln!(svg, r##"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"##);

    // Frame.
    let _ = writeln!(
        svg,
        r##"<rect x="{}" y="{}" width="{}" height="{}" fill="none" stroke="#333" stroke-width="1"/>"##,
        coord(plot_l),
        coord(plot_t),
        coord(plot_r - plot_l),
        coord(plot_b - plot_t)
    );

    // Axis ticks: five per axis, value-labelled.
    for i in 0..=4 {
        let t = i as f64 / 4.0;

        let nu = nu_lo + t * (nu_hi - nu_lo);
        let px = x.map(nu);
        let _ = writeln!(
            svg,
            r##"<line x1="{0}" y1="{1}" x2="{0}" y2="{2}" stroke="#333"/>"##,
            coord(px),
            coord(plot_b),
            coord(plot_b + 5.0)
        );
        let _ = writeln!(
            svg,
            r##"<text x="{}" y="{}" font-family="sans-serif" font-size="12" text-anchor="middle">{:.3}</text>"##,
            coord(px),
            coord(plot_b + 20.0),
            nu
        );

        let q = q_lo + t * (q_hi - q_lo);
        let py = yq.map(q);
        let _ = writeln!(
            svg,
            r##"<line x1="{0}" y1="{2}" x2="{1}" y2="{2}" stroke="#333"/>"##,
            coord(plot_l - 5.0),
            coord(plot_l),
            coord(py)
        );
        let _ = writeln!(
            svg,
            r##"<text x="{}" y="{}" font-family="sans-serif" font-size="12" text-anchor="end" fill="{BIF_COLOR}">{:.3}</text>"##,
            coord(plot_l - 8.0),
            coord(py + 4.0),
            q
        );

        let k = -1.0 + t * 2.0;
        let ky = yk.map(k);
        let _ = writeln!(
            svg,
            r##"<line x1="{0}" y1="{2}" x2="{1}" y2="{2}" stroke="#333"/>"##,
            coord(plot_r),
            coord(plot_r + 5.0),
            coord(ky)
        );
        let _ = writeln!(
            svg,
            r##"<text x="{}" y="{}" font-family="sans-serif" font-size="12" text-anchor="start" fill="{K_COLOR}">{:.2}</text>"##,
            coord(plot_r + 8.0),
            coord(ky + 4.0),
            k
        );
    }

    // Axis names.
    let _ = writeln!(
        svg,
        r##"<text x="{}" y="{}" font-family="sans-serif" font-size="14" text-anchor="middle">nu</text>"##,
        coord((plot_l + plot_r) / 2.0),
        coord(HEIGHT - 8.0)
    );
    let _ = writeln!(
        svg,
        r##"<text x="{}" y="{}" font-family="sans-serif" font-size="14" text-anchor="middle" fill="{BIF_COLOR}" transform="rotate(-90 16 {1})">q1</text>"##,
        coord(16.0),
        coord((plot_t + plot_b) / 2.0)
    );
    let _ = writeln!(
        svg,
        r##"<text x="{}" y="{}" font-family="sans-serif" font-size="14" text-anchor="middle" fill="{K_COLOR}" transform="rotate(90 {0} {1})">K</text>"##,
        coord(WIDTH - 16.0),
        coord((plot_t + plot_b) / 2.0)
    );

    // Bifurcation samples.
    let _ = writeln!(svg, r##"<g fill="{BIF_COLOR}" fill-opacity="0.55">"##);
    for row in rows {
        let px = x.map(row.nu);
        for &q in row.bif_values.iter().filter(|v| v.is_finite()) {
            let _ = writeln!(
                svg,
                r##"<circle cx="{}" cy="{}" r="1"/>"##,
                coord(px),
                coord(yq.map(q))
            );
        }
    }
    let _ = writeln!(svg, "</g>");

    // K scatter.
    let _ = writeln!(svg, r##"<g fill="{K_COLOR}">"##);
    for row in rows {
        if let Some(k) = row.k {
            let _ = writeln!(
                svg,
                r##"<circle cx="{}" cy="{}" r="2"/>"##,
                coord(x.map(row.nu)),
                coord(yk.map(k))
            );
        }
    }
    let _ = writeln!(svg, "</g>");

    svg.push_str("</svg>\n");
    svg
}
