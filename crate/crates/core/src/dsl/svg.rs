//! SVG output for script environments. Exact coordinates become decimals
//! only here.

use std::fmt::Write;

use super::interp::{Env, PointRole};
use crate::construct::Mark;
use crate::field::{Base, FieldMode};
use crate::geometry::Point;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RenderOptions {
    /// Draw non-Archimedean coordinates at ε = 0.
    pub shadow: bool,
    /// Deepest trace level whose drawing marks are included.
    pub max_depth: usize,
    pub labels: bool,
    /// Width of the output in pixels.
    pub size: u32,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions { shadow: false, max_depth: 0, labels: true, size: 600 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum RenderError {
    #[error("non-Archimedean coordinates need the shadow option")]
    UnrenderableMode,
    #[error("{0} is unbounded and has no shadow")]
    Unbounded(String),
}

/// Decimal with 12 significant digits, shortest form.
pub fn decimal(v: f64) -> String {
    let r: f64 = format!("{v:.11e}").parse().unwrap();
    if r == 0.0 {
        "0".to_string()
    } else {
        format!("{r}")
    }
}

type Xy = (f64, f64);

fn xy<B: Base>(p: &Point<B>) -> Result<Xy, RenderError> {
    match (p.x.approx(), p.y.approx()) {
        (Some(x), Some(y)) => Ok((x, y)),
        _ => Err(RenderError::Unbounded(p.render())),
    }
}

enum Shape {
    Shade(Vec<Xy>),
    Circle(Xy, f64),
    Segment(Xy, Xy),
}

/// Renders bound points (filled when given, open when asserted by a
/// construction) together with the drawing marks of the trace.
pub fn render_svg<B: Base>(env: &Env<B>, opts: &RenderOptions) -> Result<String, RenderError> {
    let na = B::MODE == FieldMode::NonArchimedean;
    if na && !opts.shadow {
        return Err(RenderError::UnrenderableMode);
    }
    let mut shapes = Vec::new();
    for step in env.trace.iter().filter(|s| s.depth <= opts.max_depth) {
        for m in &step.marks {
            shapes.push(match m {
                Mark::Shade(ps) => Shape::Shade(ps.iter().map(xy).collect::<Result<_, _>>()?),
                Mark::Circle { center, through } => {
                    let (c, t) = (xy(center)?, xy(through)?);
                    Shape::Circle(c, (c.0 - t.0).hypot(c.1 - t.1))
                }
                Mark::Segment(p, q) => Shape::Segment(xy(p)?, xy(q)?),
            });
        }
    }
    let points: Vec<(&str, Xy, PointRole)> =
        env.bindings.iter().map(|b| Ok((b.name.as_str(), xy(&b.point)?, b.role))).collect::<Result<_, _>>()?;

    let (mut lo, mut hi) = ((f64::INFINITY, f64::INFINITY), (f64::NEG_INFINITY, f64::NEG_INFINITY));
    let mut grow = |(x, y): Xy, r: f64| {
        lo = (lo.0.min(x - r), lo.1.min(y - r));
        hi = (hi.0.max(x + r), hi.1.max(y + r));
    };
    for (_, p, _) in &points {
        grow(*p, 0.0);
    }
    for s in &shapes {
        match s {
            Shape::Shade(ps) => ps.iter().for_each(|p| grow(*p, 0.0)),
            Shape::Circle(c, r) => grow(*c, *r),
            Shape::Segment(p, q) => {
                grow(*p, 0.0);
                grow(*q, 0.0);
            }
        }
    }
    if lo.0 > hi.0 {
        (lo, hi) = ((0.0, 0.0), (1.0, 1.0));
    }
    let span = (hi.0 - lo.0).max(hi.1 - lo.1).max(1e-9);
    let (w, h) = ((hi.0 - lo.0).max(span * 1e-3), (hi.1 - lo.1).max(span * 1e-3));
    let (mx, my) = (0.1 * w, 0.1 * h);
    let (vx, vy, vw, vh) = (lo.0 - mx, -hi.1 - my, w + 2.0 * mx, h + 2.0 * my);
    let unit = vw.max(vh) / 150.0;
    let d = decimal;
    let px = |(x, y): Xy| (d(x), d(-y));

    let mut out = String::new();
    let height = (opts.size as f64 * vh / vw).round().max(1.0);
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}" width="{}" height="{}">"#,
        d(vx),
        d(vy),
        d(vw),
        d(vh),
        opts.size,
        height
    )
    .unwrap();
    let title = if env.renders.is_empty() { "construction".to_string() } else { env.renders.join("; ") };
    writeln!(out, "<title>{}</title>", escape(&title)).unwrap();
    let stroke = d(unit * 0.4);
    writeln!(out, r#"<g stroke="black" stroke-width="{stroke}" fill="none">"#).unwrap();
    for s in &shapes {
        match s {
            Shape::Shade(ps) => {
                let pts: Vec<String> = ps.iter().map(|p| px(*p)).map(|(x, y)| format!("{x},{y}")).collect();
                writeln!(out, r#"<polygon class="shade" points="{}" fill="gray" fill-opacity="0.25" stroke="none"/>"#, pts.join(" "))
                    .unwrap();
            }
            Shape::Circle(c, r) => {
                let (cx, cy) = px(*c);
                writeln!(out, r#"<circle class="arc" cx="{cx}" cy="{cy}" r="{}"/>"#, d(*r)).unwrap();
            }
            Shape::Segment(p, q) => {
                let ((x1, y1), (x2, y2)) = (px(*p), px(*q));
                writeln!(out, r#"<line class="segment" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>"#).unwrap();
            }
        }
    }
    writeln!(out, "</g>").unwrap();
    let r = d(unit);
    for (name, p, role) in &points {
        let (cx, cy) = px(*p);
        let (class, fill) = match role {
            PointRole::Given => ("given", "black"),
            PointRole::Asserted => ("asserted", "white"),
        };
        writeln!(out, r#"<circle class="point {class}" cx="{cx}" cy="{cy}" r="{r}" fill="{fill}" stroke="black" stroke-width="{stroke}"/>"#)
            .unwrap();
        if opts.labels {
            let (lx, ly) = px((p.0 + 1.5 * unit, p.1 + 1.5 * unit));
            writeln!(out, r#"<text class="label" x="{lx}" y="{ly}" font-size="{}">{}</text>"#, d(unit * 5.0), escape(name)).unwrap();
        }
    }
    if na {
        let (ax, ay) = (d(vx + unit * 2.0), d(vy + vh - unit * 2.0));
        writeln!(out, r#"<text class="annotation" x="{ax}" y="{ay}" font-size="{}">shadow at eps = 0</text>"#, d(unit * 4.0))
            .unwrap();
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::{parse_script, run_script};
    use crate::field::{RatFunc, Rational};
    use crate::geometry::Node;

    #[test]
    fn twelve_digits() {
        assert_eq!(decimal(3f64.sqrt() / 2.0), "0.866025403784");
        assert_eq!(decimal(0.5), "0.5");
        assert_eq!(decimal(-0.0), "0");
        assert_eq!(decimal(-1234567.0), "-1234567");
    }

    #[test]
    fn empty_canvas() {
        let env = run_script::<Rational>(&parse_script("").unwrap(), Node::Classical);
        let s = render_svg(&env, &RenderOptions::default()).unwrap();
        assert!(s.starts_with("<svg") && s.ends_with("</svg>\n"));
        assert!(s.contains(r#"viewBox="-0.1 -1.1 1.2 1.2""#), "{s}");
    }

    #[test]
    fn open_and_filled_points() {
        let env = run_script::<Rational>(&parse_script("point a 0 0; point b 1 0; let c = equilateral(a,b);").unwrap(), Node::Classical);
        let s = render_svg(&env, &RenderOptions::default()).unwrap();
        assert_eq!(s.matches("point given").count(), 2);
        assert_eq!(s.matches("point asserted").count(), 1);
        assert_eq!(s.matches("class=\"segment\"").count(), 2);
        assert!(s.contains("cy=\"-0.866025403784\""));
    }

    #[test]
    fn nonarch_needs_shadow() {
        let env = run_script::<RatFunc>(&parse_script("point a 0 eps; point b 1 0;").unwrap(), Node::Root);
        assert_eq!(render_svg(&env, &RenderOptions::default()), Err(RenderError::UnrenderableMode));
        let s = render_svg(&env, &RenderOptions { shadow: true, ..Default::default() }).unwrap();
        assert!(s.contains("annotation"));
        assert!(s.contains(r#"cx="0" cy="0""#));
        let env = run_script::<RatFunc>(&parse_script("point a 1/eps 0;").unwrap(), Node::Root);
        assert!(matches!(render_svg(&env, &RenderOptions { shadow: true, ..Default::default() }), Err(RenderError::Unbounded(_))));
    }
}
