//! Static SVG drawings of planar point sets.

use std::fmt::Write;

use geoverlap::geom::{Point, PointSet};

const SIZE: f64 = 600.0;
const MARGIN: f64 = 30.0;
const PALETTE: [&str; 8] = ["#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02", "#a6761d", "#666666"];

/// Canvas mapping the bounding box of some points onto a square.
pub struct Canvas {
    min: [f64; 2],
    scale: f64,
    body: String,
}

impl Canvas {
    pub fn fit(points: &[Point]) -> Canvas {
        let xy: Vec<Vec<f64>> = points.iter().map(Point::to_f64).collect();
        let lo = |i: usize| xy.iter().map(|p| p[i]).fold(f64::INFINITY, f64::min);
        let hi = |i: usize| xy.iter().map(|p| p[i]).fold(f64::NEG_INFINITY, f64::max);
        let (min, max) = if xy.is_empty() { ([0.0, 0.0], [1.0, 1.0]) } else { ([lo(0), lo(1)], [hi(0), hi(1)]) };
        let span = (max[0] - min[0]).max(max[1] - min[1]).max(1e-12);
        Canvas { min, scale: (SIZE - 2.0 * MARGIN) / span, body: String::new() }
    }

    fn map(&self, p: &[f64]) -> (f64, f64) {
        (MARGIN + (p[0] - self.min[0]) * self.scale, SIZE - MARGIN - (p[1] - self.min[1]) * self.scale)
    }

    pub fn dot(&mut self, p: &Point, radius: f64, color: &str) {
        let (x, y) = self.map(&p.to_f64());
        let _ = writeln!(self.body, r#"<circle cx="{x:.3}" cy="{y:.3}" r="{radius}" fill="{color}"/>"#);
    }

    pub fn mark(&mut self, p: &Point, label: &str) {
        let (x, y) = self.map(&p.to_f64());
        let _ = writeln!(self.body, r#"<path d="M{:.3} {:.3}l12 0M{:.3} {:.3}l0 12" stroke="red" stroke-width="2"/>"#, x - 6.0, y, x, y - 6.0);
        let _ = writeln!(self.body, r#"<text x="{:.3}" y="{:.3}" font-size="12" fill="red">{label}</text>"#, x + 8.0, y - 8.0);
    }

    /// Line through `p` with direction `dir`, clipped generously.
    pub fn line(&mut self, p: &Point, dir: [f64; 2], color: &str) {
        let c = p.to_f64();
        let norm = (dir[0] * dir[0] + dir[1] * dir[1]).sqrt().max(1e-300);
        let reach = 2.0 * SIZE / self.scale;
        let a = self.map(&[c[0] - dir[0] / norm * reach, c[1] - dir[1] / norm * reach]);
        let b = self.map(&[c[0] + dir[0] / norm * reach, c[1] + dir[1] / norm * reach]);
        let _ = writeln!(self.body, r#"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="{color}"/>"#, a.0, a.1, b.0, b.1);
    }

    pub fn finish(self, title: &str) -> String {
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">\n<title>{title}</title>\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n{}</svg>\n",
            self.body
        )
    }
}

pub fn color(i: usize) -> &'static str {
    PALETTE[i % PALETTE.len()]
}

/// Points coloured by block, with an optional marked point.
pub fn blocks(set: &PointSet, blocks: &[Vec<usize>], marked: Option<(&Point, &str)>, title: &str) -> String {
    let mut all: Vec<Point> = set.points().to_vec();
    all.extend(marked.map(|(p, _)| p.clone()));
    let mut c = Canvas::fit(&all);
    if blocks.is_empty() {
        for p in set.points() {
            c.dot(p, 3.0, "black");
        }
    }
    for (i, b) in blocks.iter().enumerate() {
        for &v in b {
            c.dot(&set.points()[v], 3.0, color(i));
        }
    }
    if let Some((p, label)) = marked {
        c.mark(p, label);
    }
    c.finish(title)
}
