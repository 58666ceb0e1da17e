//! Deterministic SVG figures: points, lines, double-wedge shading and
//! sector coloring in a fixed 800x800 viewport.

use num_traits::ToPrimitive;
use regdepth::geometry::{DoubleWedge, Hyperplane, Pairing, Point};
use regdepth::Scalar;

const SIZE: f64 = 800.0;
const PALETTE: [&str; 6] = [
    "#4c78a8", "#f58518", "#54a24b", "#e45756", "#72b7b2", "#b279a2",
];

pub struct Scene {
    pub points: Vec<(f64, f64)>,
    pub point_colors: Vec<usize>,
    pub lines: Vec<(Hyperplane, &'static str)>,
    pub wedge: Option<DoubleWedge>,
    pub annotation: Option<String>,
    min: (f64, f64),
    max: (f64, f64),
}

fn approx(v: &Scalar) -> f64 {
    v.numer().to_f64().unwrap_or(0.0) / v.denom().to_f64().unwrap_or(1.0)
}

impl Scene {
    /// 3D inputs render as the projection onto the first two coordinates.
    pub fn new(points: &[Point]) -> Scene {
        let pts: Vec<(f64, f64)> = points
            .iter()
            .map(|p| {
                (
                    approx(p.coord(0)),
                    if p.dim() >= 2 { approx(p.coord(1)) } else { 0.0 },
                )
            })
            .collect();
        let mut min = (-1.0f64, -1.0f64);
        let mut max = (1.0f64, 1.0f64);
        for &(x, y) in &pts {
            min.0 = min.0.min(x);
            min.1 = min.1.min(y);
            max.0 = max.0.max(x);
            max.1 = max.1.max(y);
        }
        let pad = ((max.0 - min.0).max(max.1 - min.1) * 0.08).max(0.5);
        min = (min.0 - pad, min.1 - pad);
        max = (max.0 + pad, max.1 + pad);
        let annotation = if points.first().map(|p| p.dim()) == Some(3) {
            Some("projection onto the independent coordinates (x, y)".to_string())
        } else {
            None
        };
        Scene {
            points: pts,
            point_colors: vec![0; points.len()],
            lines: Vec::new(),
            wedge: None,
            annotation,
            min,
            max,
        }
    }

    fn map(&self, p: (f64, f64)) -> (f64, f64) {
        let sx = SIZE / (self.max.0 - self.min.0);
        let sy = SIZE / (self.max.1 - self.min.1);
        let s = sx.min(sy);
        (
            (p.0 - self.min.0) * s,
            SIZE - (p.1 - self.min.1) * s,
        )
    }

    /// Halfplane residual of a 2D-projected hyperplane at a float point.
    fn residual(h: &Hyperplane, p: (f64, f64)) -> f64 {
        let n: Vec<f64> = h.normal.0.iter().map(approx).collect();
        let c = approx(&h.offset);
        // 3D hyperplanes are rendered through their (x, y) trace when the
        // z-component vanishes; otherwise the z term is dropped.
        n[0] * p.0 + n.get(1).copied().unwrap_or(0.0) * p.1 - c
    }

    /// Clip the line `h = 0` to the view box; None when it misses.
    fn clip_line(&self, h: &Hyperplane) -> Option<((f64, f64), (f64, f64))> {
        let corners = [
            (self.min.0, self.min.1),
            (self.max.0, self.min.1),
            (self.max.0, self.max.1),
            (self.min.0, self.max.1),
        ];
        let mut hits: Vec<(f64, f64)> = Vec::new();
        for i in 0..4 {
            let a = corners[i];
            let b = corners[(i + 1) % 4];
            let ra = Self::residual(h, a);
            let rb = Self::residual(h, b);
            if (ra <= 0.0) != (rb <= 0.0) && (ra - rb).abs() > 1e-12 {
                let t = ra / (ra - rb);
                hits.push((a.0 + t * (b.0 - a.0), a.1 + t * (b.1 - a.1)));
            }
        }
        if hits.len() >= 2 {
            Some((hits[0], hits[1]))
        } else {
            None
        }
    }

    /// The viewport region of one pairing side of a wedge, as polygons.
    fn wedge_polygons(&self, w: &DoubleWedge) -> Vec<Vec<(f64, f64)>> {
        let rect = vec![
            (self.min.0, self.min.1),
            (self.max.0, self.min.1),
            (self.max.0, self.max.1),
            (self.min.0, self.max.1),
        ];
        let clip = |poly: &[(f64, f64)], h: &Hyperplane, keep_pos: bool| -> Vec<(f64, f64)> {
            let mut out = Vec::new();
            let n = poly.len();
            for i in 0..n {
                let a = poly[i];
                let b = poly[(i + 1) % n];
                let ra = Self::residual(h, a) * if keep_pos { 1.0 } else { -1.0 };
                let rb = Self::residual(h, b) * if keep_pos { 1.0 } else { -1.0 };
                if ra >= 0.0 {
                    out.push(a);
                }
                if (ra >= 0.0) != (rb >= 0.0) && (ra - rb).abs() > 1e-12 {
                    let t = ra / (ra - rb);
                    out.push((a.0 + t * (b.0 - a.0), a.1 + t * (b.1 - a.1)));
                }
            }
            out
        };
        let sides: [(bool, bool); 2] = match w.pairing {
            Pairing::Same => [(true, true), (false, false)],
            Pairing::Opposite => [(true, false), (false, true)],
        };
        let mut polys = Vec::new();
        for (s1, s2) in sides {
            let mut poly = clip(&rect, &w.h1, s1);
            if let Some(h2) = &w.h2 {
                poly = clip(&poly, h2, s2);
            }
            if poly.len() >= 3 {
                polys.push(poly);
            }
        }
        polys
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" \
             viewBox=\"0 0 {SIZE} {SIZE}\">\n"
        ));
        out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
        // Axes.
        for h in [
            Hyperplane::vertical_at(2, Scalar::from_integer(0.into())),
            Hyperplane::new(
                regdepth::geometry::Vector(vec![
                    Scalar::from_integer(0.into()),
                    Scalar::from_integer(1.into()),
                ]),
                Scalar::from_integer(0.into()),
            )
            .expect("unit normal"),
        ] {
            if let Some((a, b)) = self.clip_line(&h) {
                let (a, b) = (self.map(a), self.map(b));
                out.push_str(&format!(
                    "<line class=\"axis\" x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" \
                     stroke=\"#cccccc\" stroke-width=\"1\"/>\n",
                    a.0, a.1, b.0, b.1
                ));
            }
        }
        if let Some(w) = &self.wedge {
            for poly in self.wedge_polygons(w) {
                let pts: Vec<String> = poly
                    .iter()
                    .map(|&p| {
                        let m = self.map(p);
                        format!("{:.2},{:.2}", m.0, m.1)
                    })
                    .collect();
                out.push_str(&format!(
                    "<polygon class=\"wedge\" points=\"{}\" fill=\"#f58518\" opacity=\"0.25\"/>\n",
                    pts.join(" ")
                ));
            }
        }
        for (h, color) in &self.lines {
            if let Some((a, b)) = self.clip_line(h) {
                let (a, b) = (self.map(a), self.map(b));
                out.push_str(&format!(
                    "<line class=\"overlay\" x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" \
                     stroke=\"{color}\" stroke-width=\"2\"/>\n",
                    a.0, a.1, b.0, b.1
                ));
            }
        }
        for (i, &p) in self.points.iter().enumerate() {
            let m = self.map(p);
            let color = PALETTE[self.point_colors[i] % PALETTE.len()];
            out.push_str(&format!(
                "<circle class=\"pt\" cx=\"{:.2}\" cy=\"{:.2}\" r=\"4\" fill=\"{color}\"/>\n",
                m.0, m.1
            ));
        }
        if let Some(note) = &self.annotation {
            out.push_str(&format!(
                "<text x=\"12\" y=\"24\" font-family=\"monospace\" font-size=\"14\">{note}</text>\n"
            ));
        }
        out.push_str("</svg>\n");
        out
    }
}
