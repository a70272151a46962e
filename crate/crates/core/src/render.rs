//! SVG figures of a window and the circles about its base point, drawn to
//! true scale in the box `[-1.15, 1.15]²` with the y-axis flipped.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::geometry::{landmarks, BoundaryPoint, Height, PlanePoint, WindowLandmarks};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FigureKind {
    /// `S(b, h)` against `W(b, h)`.
    Fig1,
    /// `W(b, h/c)` against `S(b, h)`.
    Fig2,
    /// `S(b, h)` against `W(b, ch)`, with the chord `M'M`.
    Fig3,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FigureSpec {
    pub kind: FigureKind,
    pub height: Height,
    pub c: Option<f64>,
    pub show_labels: bool,
    pub canvas_px: u32,
    pub base: BoundaryPoint,
}

impl FigureSpec {
    pub fn new(kind: FigureKind, height: Height, c: Option<f64>) -> Self {
        FigureSpec {
            kind,
            height,
            c,
            show_labels: true,
            canvas_px: 600,
            base: BoundaryPoint::ONE,
        }
    }

    /// Height of the window drawn in the figure: `h`, `h/c` or `ch`.
    fn window_height(&self) -> Result<Height> {
        let h = self.height.value();
        let c = match (self.kind, self.c) {
            (FigureKind::Fig1, _) => return Ok(self.height),
            (_, None) => {
                return Err(Error::InvalidFigure(format!(
                    "{:?} needs a constant c",
                    self.kind
                )))
            }
            (_, Some(c)) if !(c > 1.0 && c.is_finite()) => {
                return Err(Error::InvalidFigure(format!("c = {c} must exceed 1")))
            }
            (_, Some(c)) => c,
        };
        let scaled = match self.kind {
            FigureKind::Fig2 => h / c,
            _ => h * c,
        };
        Height::new(scaled)
            .map_err(|_| Error::InvalidFigure(format!("window height {scaled} is not below 1")))
    }
}

const VIEW_HALF: f64 = 1.15;
const STROKE: f64 = 0.006;
const FONT_SIZE: f64 = 0.075;
const LABEL_OFFSET: f64 = 0.07;

fn num(v: f64) -> String {
    let s = format!("{v:.6}");
    if s == "-0.000000" {
        "0.000000".to_owned()
    } else {
        s
    }
}

struct Canvas {
    body: String,
}

impl Canvas {
    fn circle(&mut self, center: PlanePoint, radius: f64) {
        let _ = writeln!(
            self.body,
            r#"    <circle cx="{}" cy="{}" r="{}"/>"#,
            num(center.x()),
            num(-center.y()),
            num(radius)
        );
    }

    fn line(&mut self, a: PlanePoint, b: PlanePoint) {
        let _ = writeln!(
            self.body,
            r#"    <line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
            num(a.x()),
            num(-a.y()),
            num(b.x()),
            num(-b.y())
        );
    }

    fn label(&mut self, at: PlanePoint, text: &str) {
        let _ = writeln!(
            self.body,
            r#"    <text x="{}" y="{}">{}</text>"#,
            num(at.x()),
            num(-at.y()),
            text
        );
    }
}

/// Places a label beyond `p` along the direction `dir` from the origin.
fn offset(p: PlanePoint, dir: PlanePoint) -> PlanePoint {
    let n = dir.norm();
    PlanePoint::raw(
        p.x() + LABEL_OFFSET * dir.x() / n,
        p.y() + LABEL_OFFSET * dir.y() / n,
    )
}

pub fn render_figure(spec: &FigureSpec) -> Result<String> {
    if spec.canvas_px == 0 {
        return Err(Error::InvalidFigure(
            "canvas must be at least one pixel".into(),
        ));
    }
    let window_h = spec.window_height()?;
    let lm: WindowLandmarks = landmarks(spec.base, window_h);
    let b = spec.base.point();
    let origin = PlanePoint::ORIGIN;
    let antipode = PlanePoint::raw(-b.x(), -b.y());

    let mut shapes = Canvas {
        body: String::new(),
    };
    shapes.circle(origin, 1.0);
    shapes.circle(origin, 1.0 - window_h.value());
    shapes.circle(b, window_h.value());
    if spec.kind != FigureKind::Fig1 {
        shapes.circle(b, spec.height.value());
    }
    shapes.line(antipode, b);
    shapes.line(lm.m, lm.p);
    shapes.line(lm.q, lm.n);
    if spec.kind == FigureKind::Fig3 {
        shapes.line(lm.m_prime, lm.m);
    }

    let mut labels = Canvas {
        body: String::new(),
    };
    if spec.show_labels {
        labels.label(offset(origin, antipode), "O");
        labels.label(offset(b, b), "b");
        labels.label(offset(lm.m, lm.m), "M");
        labels.label(offset(lm.n, lm.n), "N");
        let inward = |p: PlanePoint| PlanePoint::raw(-p.x(), -p.y());
        labels.label(offset(lm.p, inward(lm.p)), "P");
        labels.label(offset(lm.q, inward(lm.q)), "Q");
        if spec.kind == FigureKind::Fig3 {
            let side = PlanePoint::raw(-lm.m.y(), lm.m.x());
            labels.label(offset(lm.m_prime, side), "M′");
        }
    }

    let title = match spec.kind {
        FigureKind::Fig1 => "Fig. 1",
        FigureKind::Fig2 => "Fig. 2",
        FigureKind::Fig3 => "Fig. 3",
    };
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{px}" height="{px}" viewBox="{} {} {} {}">"#,
        num(-VIEW_HALF),
        num(-VIEW_HALF),
        num(2.0 * VIEW_HALF),
        num(2.0 * VIEW_HALF),
        px = spec.canvas_px
    );
    let _ = writeln!(out, "  <title>{title}</title>");
    let _ = writeln!(
        out,
        r#"  <g fill="none" stroke="black" stroke-width="{}">"#,
        num(STROKE)
    );
    out.push_str(&shapes.body);
    let _ = writeln!(out, "  </g>");
    if spec.show_labels {
        let _ = writeln!(
            out,
            r#"  <g font-family="serif" font-style="italic" font-size="{}" text-anchor="middle" dominant-baseline="middle">"#,
            num(FONT_SIZE)
        );
        out.push_str(&labels.body);
        let _ = writeln!(out, "  </g>");
    }
    let _ = writeln!(out, "</svg>");
    Ok(out)
}
