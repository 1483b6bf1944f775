//! SVG rendering of the boundary representation picture: the unit square of
//! turns with H arcs in orange, A lines in blue, P points in red, and the
//! overlaid far side of a gluing in brown/cyan/dark red. Axes are labeled in
//! multiples of π (a half turn).

use std::fmt::Write;

use su2abel::gluing::GluingMatrix;
use su2abel::repsets::{PlotBundle, PlotData};

const SIZE: f64 = 800.0;
const MARGIN: f64 = 60.0;

struct Canvas {
    body: String,
}

impl Canvas {
    fn x(&self, t: f64) -> f64 {
        MARGIN + t * (SIZE - 2.0 * MARGIN)
    }

    fn y(&self, t: f64) -> f64 {
        // ψ grows upward
        SIZE - MARGIN - t * (SIZE - 2.0 * MARGIN)
    }

    fn line(&mut self, a: (f64, f64), b: (f64, f64), color: &str, width: f64) {
        let _ = writeln!(
            self.body,
            r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{color}" stroke-width="{width}" stroke-linecap="round"/>"#,
            self.x(a.0),
            self.y(a.1),
            self.x(b.0),
            self.y(b.1),
        );
    }

    fn dot(&mut self, p: (f64, f64), color: &str) {
        let _ = writeln!(
            self.body,
            r#"<circle cx="{:.2}" cy="{:.2}" r="6" fill="{color}"/>"#,
            self.x(p.0),
            self.y(p.1),
        );
    }

    fn text(&mut self, x: f64, y: f64, anchor: &str, s: &str) {
        let _ = writeln!(
            self.body,
            r#"<text x="{x:.1}" y="{y:.1}" font-size="16" font-family="sans-serif" text-anchor="{anchor}">{s}</text>"#
        );
    }
}

/// Segments of the closed curve `a·θ + b·ψ ≡ 0 (mod 1)` clipped to the unit
/// square.
fn line_segments(a: i64, b: i64) -> Vec<((f64, f64), (f64, f64))> {
    let (a, b) = (a as f64, b as f64);
    let mut out = Vec::new();
    if a == 0.0 && b == 0.0 {
        return out;
    }
    let corners = [0.0, a, b, a + b];
    let lo = corners
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min)
        .floor() as i64;
    let hi = corners
        .iter()
        .cloned()
        .fold(f64::NEG_INFINITY, f64::max)
        .ceil() as i64;
    for k in lo..=hi {
        let k = k as f64;
        // intersect a·x + b·y = k with the square edges
        let mut pts: Vec<(f64, f64)> = Vec::new();
        let mut push = |x: f64, y: f64| {
            if (-1e-9..=1.0 + 1e-9).contains(&x) && (-1e-9..=1.0 + 1e-9).contains(&y) {
                let p = (x.clamp(0.0, 1.0), y.clamp(0.0, 1.0));
                if !pts
                    .iter()
                    .any(|q: &(f64, f64)| (q.0 - p.0).abs() + (q.1 - p.1).abs() < 1e-9)
                {
                    pts.push(p);
                }
            }
        };
        if b != 0.0 {
            push(0.0, k / b);
            push(1.0, (k - a) / b);
        }
        if a != 0.0 {
            push(k / a, 0.0);
            push((k - b) / a, 1.0);
        }
        if pts.len() >= 2 {
            out.push((pts[0], pts[1]));
        }
    }
    out
}

/// A straight segment in turn coordinates, wrapped into the unit square by
/// splitting at lattice crossings.
fn wrapped_segments(p0: (f64, f64), p1: (f64, f64)) -> Vec<((f64, f64), (f64, f64))> {
    let mut cuts = vec![0.0, 1.0];
    for (c0, c1) in [(p0.0, p1.0), (p0.1, p1.1)] {
        let d = c1 - c0;
        if d.abs() > 1e-12 {
            let (lo, hi) = (c0.min(c1).ceil() as i64, c0.max(c1).floor() as i64);
            for k in lo..=hi {
                let t = (k as f64 - c0) / d;
                if (0.0..=1.0).contains(&t) {
                    cuts.push(t);
                }
            }
        }
    }
    cuts.sort_by(f64::total_cmp);
    cuts.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    let at = |t: f64| (p0.0 + t * (p1.0 - p0.0), p0.1 + t * (p1.1 - p0.1));
    let mut out = Vec::new();
    for w in cuts.windows(2) {
        let (t0, t1) = (w[0], w[1]);
        if t1 - t0 < 1e-12 {
            continue;
        }
        let mid = at((t0 + t1) / 2.0);
        let (off_x, off_y) = (mid.0.floor(), mid.1.floor());
        let s = at(t0);
        let e = at(t1);
        out.push(((s.0 - off_x, s.1 - off_y), (e.0 - off_x, e.1 - off_y)));
    }
    out
}

fn draw_piece(
    c: &mut Canvas,
    data: &PlotData,
    transport: Option<&GluingMatrix>,
    palette: [&str; 3],
) {
    let [h_color, a_color, p_color] = palette;
    for seg in &data.h_segments {
        let psi = seg.psi.as_f64();
        let lo = rat_f64(&seg.theta_lo);
        let hi = rat_f64(&seg.theta_hi);
        match transport {
            None => {
                c.line((lo, psi), (hi, psi), h_color, 5.0);
                if psi == 0.0 {
                    c.line((lo, 1.0), (hi, 1.0), h_color, 5.0);
                }
            }
            Some(phi) => {
                let map = |theta2: f64| {
                    (
                        phi.alpha() as f64 * theta2 + phi.gamma() as f64 * psi,
                        phi.beta() as f64 * theta2 + phi.delta() as f64 * psi,
                    )
                };
                for (s, e) in wrapped_segments(map(lo), map(hi)) {
                    c.line(s, e, h_color, 5.0);
                }
            }
        }
    }
    for line in &data.a_lines {
        let (a, b) = match transport {
            None => (line.theta_coef, line.psi_coef),
            Some(phi) => {
                // pull the coefficient vector back through the gluing:
                // a·θ₂ + b·ψ₂ with (θ₂, ψ₂) written in side-1 coordinates
                let inv = phi.inverse();
                (
                    line.theta_coef * inv.alpha() + line.psi_coef * inv.gamma(),
                    line.theta_coef * inv.beta() + line.psi_coef * inv.delta(),
                )
            }
        };
        for (s, e) in line_segments(a, b) {
            c.line(s, e, a_color, 2.5);
        }
    }
    for pt in &data.p_points {
        let (theta, psi) = match transport {
            None => (pt.theta.clone(), pt.psi.clone()),
            Some(phi) => phi.point_to_side1(&pt.theta, &pt.psi),
        };
        let (x, y) = (theta.as_f64(), psi.as_f64());
        for dx in [0.0, 1.0] {
            for dy in [0.0, 1.0] {
                if (x + dx) <= 1.0 + 1e-9 && (y + dy) <= 1.0 + 1e-9 {
                    c.dot((x + dx, y + dy), p_color);
                }
            }
        }
    }
}

fn rat_f64(r: &su2abel::exact::Rational) -> f64 {
    su2abel::exact::rational_f64(r)
}

pub fn render(bundle: &PlotBundle) -> String {
    let mut c = Canvas {
        body: String::new(),
    };
    // frame and π-gridlines
    let _ = writeln!(
        c.body,
        r#"<rect x="{m}" y="{m}" width="{w}" height="{w}" fill="white" stroke="black" stroke-width="1.5"/>"#,
        m = MARGIN,
        w = SIZE - 2.0 * MARGIN
    );
    for frac in [0.25, 0.5, 0.75] {
        c.line((frac, 0.0), (frac, 1.0), "#dddddd", 1.0);
        c.line((0.0, frac), (1.0, frac), "#dddddd", 1.0);
    }
    let labels = [
        (0.0, "0"),
        (0.25, "π/2"),
        (0.5, "π"),
        (0.75, "3π/2"),
        (1.0, "2π"),
    ];
    for (t, s) in labels {
        let x = c.x(t);
        let y = c.y(t);
        c.text(x, SIZE - MARGIN + 24.0, "middle", s);
        c.text(MARGIN - 10.0, y + 5.0, "end", s);
    }
    c.text(SIZE / 2.0, SIZE - 14.0, "middle", "θ");
    c.text(16.0, SIZE / 2.0, "middle", "ψ");

    if let Some((overlay, phi)) = &bundle.overlay {
        draw_piece(
            &mut c,
            overlay,
            Some(phi),
            ["#8b4513", "#17becf", "#8b0000"],
        );
    }
    draw_piece(
        &mut c,
        &bundle.main,
        None,
        ["#ff8c00", "#1f77b4", "#e41a1c"],
    );

    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">\n{}</svg>\n",
        c.body
    )
}
