//! Deterministic SVG rendering of arrangements and clusters: 50 pixels per
//! length unit, disks as stroked circles with 30% fill opacity, the
//! fundamental cell outlined, everything clipped to the window.

use std::fmt::Write as _;

use thiserror::Error;

use crate::format::{ArrangementFile, ClusterFile, FormatError};
use crate::geom::{Point, Rect};

pub const PIXELS_PER_UNIT: f64 = 50.0;

#[derive(Debug, Error)]
pub enum RenderError {
    #[error("window must have positive area")]
    EmptyWindow,
    #[error("rendering requires dim = 2, got {dim}")]
    NotPlanar { dim: usize },
    #[error(transparent)]
    Format(#[from] FormatError),
}

struct Canvas {
    svg: String,
    window: Rect,
}

impl Canvas {
    fn new(window: Rect) -> Result<Canvas, RenderError> {
        if window.is_degenerate() {
            return Err(RenderError::EmptyWindow);
        }
        let w = window.width() * PIXELS_PER_UNIT;
        let h = window.height() * PIXELS_PER_UNIT;
        let mut svg = String::new();
        let _ = writeln!(
            svg,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
        );
        let _ = writeln!(
            svg,
            r#"<clipPath id="win"><rect x="0" y="0" width="{w}" height="{h}"/></clipPath>"#
        );
        let _ = writeln!(svg, r#"<g clip-path="url(#win)">"#);
        Ok(Canvas { svg, window })
    }

    fn map(&self, p: Point) -> (f64, f64) {
        (
            (p.x - self.window.x0) * PIXELS_PER_UNIT,
            (self.window.y1 - p.y) * PIXELS_PER_UNIT,
        )
    }

    fn circle(&mut self, center: Point, radius: f64) {
        let (cx, cy) = self.map(center);
        let r = radius * PIXELS_PER_UNIT;
        let _ = writeln!(
            self.svg,
            r##"<circle cx="{cx}" cy="{cy}" r="{r}" fill="#4477aa" fill-opacity="0.3" stroke="#222222" stroke-width="1"/>"##
        );
    }

    fn polygon(&mut self, pts: &[Point]) {
        let mut d = String::new();
        for (i, &p) in pts.iter().enumerate() {
            let (x, y) = self.map(p);
            let _ = write!(d, "{}{x},{y}", if i == 0 { "" } else { " " });
        }
        let _ = writeln!(
            self.svg,
            r##"<polygon points="{d}" fill="none" stroke="#cc3311" stroke-width="1.5"/>"##
        );
    }

    fn finish(mut self) -> String {
        self.svg.push_str("</g>\n</svg>\n");
        self.svg
    }
}

/// Renders a planar arrangement over the window: every disk copy whose
/// center lies in the (closed) window, plus the fundamental-cell outline.
pub fn render_arrangement_svg(
    file: &ArrangementFile,
    window: Rect,
) -> Result<String, RenderError> {
    file.validate()?;
    if file.dim != 2 {
        return Err(RenderError::NotPlanar { dim: file.dim });
    }
    let arrangement = file.to_arrangement()?;
    let mut canvas = Canvas::new(window)?;

    let (b1, b2) = arrangement
        .lattice()
        .reduced_basis()
        .map_err(|e| FormatError::Periodic(e.into()))?;
    canvas.polygon(&[Point::ORIGIN, b1, b1.add(b2), b2]);

    let center = Point::new(
        (window.x0 + window.x1) / 2.0,
        (window.y0 + window.y1) / 2.0,
    );
    let reach = 0.5 * window.width().hypot(window.height()) + arrangement.radius();
    let mut copies = arrangement
        .copies_within(center, reach)
        .map_err(FormatError::Periodic)?;
    copies.sort_by(|a, b| a.1.lex_cmp(&b.1));
    for (_, pos) in copies {
        if window.contains(pos) {
            canvas.circle(pos, arrangement.radius());
        }
    }
    Ok(canvas.finish())
}

/// Renders a cluster of unit disks; with no window given, a bounding box
/// padded by 1.5 units is used.
pub fn render_cluster_svg(
    file: &ClusterFile,
    window: Option<Rect>,
) -> Result<String, RenderError> {
    let cluster = file.to_cluster()?;
    let window = window.unwrap_or_else(|| cluster.bounding_box(1.5));
    let mut canvas = Canvas::new(window)?;
    let mut centers = cluster.centers().to_vec();
    centers.sort_by(|a, b| a.lex_cmp(b));
    for c in centers {
        if window.contains(c) {
            canvas.circle(c, 1.0);
        }
    }
    Ok(canvas.finish())
}
