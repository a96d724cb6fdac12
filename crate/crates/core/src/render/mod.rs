//! Deterministic SVG figures of horocycle chains.
//!
//! A chain is first turned into a [`Figure`] (role-tagged cycles in world
//! coordinates), then laid out on a pixel canvas and written as SVG 1.1.
//! The mapping is `px = (u − umin)·s`, `py = (vmax − v)·s` with one scale
//! `s` for both axes, so circles stay circles.

mod section;

use std::fmt::Write as _;

use crate::chain::ChainLink;
use crate::cycle::{center_radius, Cycle2, CycleShape};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub use section::{render_section_plane, section_view, SectionPlane, SectionPlaneView};

/// World rectangle `[umin, umax] × [vmin, vmax]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Viewport {
    pub umin: f64,
    pub umax: f64,
    pub vmin: f64,
    pub vmax: f64,
}

impl Viewport {
    pub fn new(umin: f64, umax: f64, vmin: f64, vmax: f64) -> Result<Self> {
        let finite = [umin, umax, vmin, vmax].iter().all(|x| x.is_finite());
        if !finite || umin >= umax || vmin >= vmax {
            return Err(Error::parse(0, format!("empty viewport [{umin}, {umax}] x [{vmin}, {vmax}]")));
        }
        Ok(Viewport { umin, umax, vmin, vmax })
    }

    fn width(&self) -> f64 {
        self.umax - self.umin
    }

    fn height(&self) -> f64 {
        self.vmax - self.vmin
    }

    /// Grows the shorter side symmetrically to the aspect ratio `w : h`.
    fn fit_aspect(&self, w: f64, h: f64) -> Viewport {
        let scale = (w / self.width()).min(h / self.height());
        let (du, dv) = (w / scale, h / scale);
        let (cu, cv) = ((self.umin + self.umax) / 2.0, (self.vmin + self.vmax) / 2.0);
        Viewport { umin: cu - du / 2.0, umax: cu + du / 2.0, vmin: cv - dv / 2.0, vmax: cv + dv / 2.0 }
    }
}

/// Drawing parameters. The defaults are the documented house style.
#[derive(Clone, Debug, PartialEq)]
pub struct RenderConfig {
    pub width: f64,
    pub height: f64,
    /// `None` fits the drawn circles plus `margin` on every side.
    pub viewport: Option<Viewport>,
    /// Fraction of the fitted extent added on each side.
    pub margin: f64,
    pub horocycle_stroke: f64,
    pub connecting_stroke: f64,
    pub axis_stroke: f64,
    pub horocycle_colors: [String; 2],
    pub connecting_color: String,
    pub mirror_color: String,
    pub axis_color: String,
    pub background: String,
    pub mirror_dash: String,
    /// Circles with a smaller on-screen radius are drawn as dots.
    pub min_radius_px: f64,
    pub dot_radius_px: f64,
}

impl Default for RenderConfig {
    fn default() -> Self {
        RenderConfig {
            width: 800.0,
            height: 600.0,
            viewport: None,
            margin: 0.05,
            horocycle_stroke: 1.0,
            connecting_stroke: 0.75,
            axis_stroke: 1.0,
            horocycle_colors: ["#1f5fa8".to_string(), "#c0392b".to_string()],
            connecting_color: "#2e8b57".to_string(),
            mirror_color: "#2e8b57".to_string(),
            axis_color: "#000000".to_string(),
            background: "#ffffff".to_string(),
            mirror_dash: "6 4".to_string(),
            min_radius_px: 0.5,
            dot_radius_px: 1.5,
        }
    }
}

impl RenderConfig {
    /// Reads `key = value` lines over the defaults. `#` starts a comment.
    ///
    /// Keys: `width`, `height`, `viewport` (four numbers
    /// `umin umax vmin vmax`), `margin`, `horocycle_stroke`,
    /// `connecting_stroke`, `axis_stroke`, `horocycle_colors` (two colours),
    /// `connecting_color`, `mirror_color`, `axis_color`, `background`,
    /// `mirror_dash`, `min_radius_px`, `dot_radius_px`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = RenderConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::parse(line_no, "expected `key = value`"))?;
            let (key, value) = (key.trim(), value.trim());
            let number = |v: &str| -> Result<f64> {
                v.parse::<f64>()
                    .ok()
                    .filter(|x| x.is_finite())
                    .ok_or_else(|| Error::parse(line_no, format!("`{key}` needs a number, got `{v}`")))
            };
            let positive = |v: &str| -> Result<f64> {
                let x = number(v)?;
                if x > 0.0 {
                    Ok(x)
                } else {
                    Err(Error::parse(line_no, format!("`{key}` must be positive")))
                }
            };
            match key {
                "width" => cfg.width = positive(value)?,
                "height" => cfg.height = positive(value)?,
                "margin" => cfg.margin = number(value)?.max(0.0),
                "horocycle_stroke" => cfg.horocycle_stroke = positive(value)?,
                "connecting_stroke" => cfg.connecting_stroke = positive(value)?,
                "axis_stroke" => cfg.axis_stroke = positive(value)?,
                "min_radius_px" => cfg.min_radius_px = number(value)?.max(0.0),
                "dot_radius_px" => cfg.dot_radius_px = positive(value)?,
                "viewport" => {
                    let v = value.split_whitespace().map(number).collect::<Result<Vec<_>>>()?;
                    if v.len() != 4 {
                        return Err(Error::parse(line_no, "`viewport` needs `umin umax vmin vmax`"));
                    }
                    cfg.viewport = Some(
                        Viewport::new(v[0], v[1], v[2], v[3]).map_err(|_| Error::parse(line_no, "empty viewport"))?,
                    );
                }
                "horocycle_colors" => {
                    let v: Vec<&str> = value.split_whitespace().collect();
                    if v.len() != 2 {
                        return Err(Error::parse(line_no, "`horocycle_colors` needs two colours"));
                    }
                    cfg.horocycle_colors = [v[0].to_string(), v[1].to_string()];
                }
                "connecting_color" => cfg.connecting_color = value.to_string(),
                "mirror_color" => cfg.mirror_color = value.to_string(),
                "axis_color" => cfg.axis_color = value.to_string(),
                "background" => cfg.background = value.to_string(),
                "mirror_dash" => cfg.mirror_dash = value.to_string(),
                _ => return Err(Error::parse(line_no, format!("unknown key `{key}`"))),
            }
        }
        Ok(cfg)
    }
}

/// What a cycle stands for in the picture.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Role {
    /// The `i`-th horocycle of the chain; the colour alternates with `i`.
    Horocycle(usize),
    Connecting,
    /// Reflection of a connecting cycle, drawn dashed.
    Mirror,
}

/// Role-tagged cycles in world coordinates, in drawing order.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Figure {
    pub items: Vec<(Role, Cycle2<f64>)>,
}

impl Figure {
    /// Horocycle 0 is the first link's `horo_prev`, horocycle `j + 1` is the
    /// `horo_curr` of link `j`. Links are reflected into the upper half-plane.
    pub fn from_chain<S: Scalar>(chain: &[ChainLink<S>]) -> Figure {
        let mut items = Vec::new();
        let mut horocycles = Vec::new();
        for (i, link) in chain.iter().enumerate() {
            let link = link.canonical().to_f64();
            if i == 0 {
                horocycles.push((Role::Horocycle(0), link.horo_prev.clone()));
            }
            horocycles.push((Role::Horocycle(i + 1), link.horo_curr.clone()));
            items.push((Role::Connecting, link.connecting.clone()));
            if let Some(mirror) = link.mirror_connecting {
                items.push((Role::Mirror, mirror));
            }
        }
        // horocycles on top of the connecting cycles
        items.extend(horocycles);
        Figure { items }
    }
}

/// A drawn element in pixel coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Primitive {
    Circle { cx: f64, cy: f64, r: f64 },
    /// A circle below the size cutoff.
    Dot { cx: f64, cy: f64 },
    Line { x1: f64, y1: f64, x2: f64, y2: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Layout {
    pub viewport: Viewport,
    /// Pixels per world unit.
    pub scale: f64,
    pub axis: Option<Primitive>,
    pub elements: Vec<(Role, Primitive)>,
}

fn fitted_viewport(figure: &Figure, config: &RenderConfig) -> Viewport {
    let mut bounds: Option<(f64, f64, f64, f64)> = None;
    for (_, cycle) in &figure.items {
        if let Ok(CycleShape::Circle { center: (u, v), radius_sq }) = center_radius(cycle) {
            let r = radius_sq.sqrt();
            let b = (u - r, u + r, v - r, v + r);
            bounds = Some(match bounds {
                None => b,
                Some(a) => (a.0.min(b.0), a.1.max(b.1), a.2.min(b.2), a.3.max(b.3)),
            });
        }
    }
    let (mut umin, mut umax, mut vmin, mut vmax) = bounds.unwrap_or((-1.0, 1.0, -1.0, 1.0));
    // keep the axis in view
    vmin = vmin.min(0.0);
    vmax = vmax.max(0.0);
    let (du, dv) = (umax - umin, vmax - vmin);
    let span = du.max(dv).max(f64::MIN_POSITIVE);
    let (du, dv) = (if du > 0.0 { du } else { span }, if dv > 0.0 { dv } else { span });
    umin -= config.margin * du;
    umax += config.margin * du;
    vmin -= config.margin * dv;
    vmax += config.margin * dv;
    if umin == umax {
        umin -= 1.0;
        umax += 1.0;
    }
    if vmin == vmax {
        vmin -= 1.0;
        vmax += 1.0;
    }
    Viewport { umin, umax, vmin, vmax }
}

/// Clips the line `l·u + n·v = offset` to the viewport (Liang–Barsky).
fn clip_line(normal: (f64, f64), offset: f64, vp: &Viewport) -> Option<((f64, f64), (f64, f64))> {
    let (l, n) = normal;
    let len_sq = l * l + n * n;
    if len_sq == 0.0 {
        return None;
    }
    let p0 = (l * offset / len_sq, n * offset / len_sq);
    let dir = (-n, l);
    let (mut t0, mut t1) = (f64::NEG_INFINITY, f64::INFINITY);
    for (p, d, lo, hi) in [(p0.0, dir.0, vp.umin, vp.umax), (p0.1, dir.1, vp.vmin, vp.vmax)] {
        if d == 0.0 {
            if p < lo || p > hi {
                return None;
            }
            continue;
        }
        let (a, b) = ((lo - p) / d, (hi - p) / d);
        t0 = t0.max(a.min(b));
        t1 = t1.min(a.max(b));
    }
    if t0 >= t1 {
        return None;
    }
    let a = (p0.0 + t0 * dir.0, p0.1 + t0 * dir.1);
    let b = (p0.0 + t1 * dir.0, p0.1 + t1 * dir.1);
    // left to right, then bottom to top
    Some(if (b.0, b.1) < (a.0, a.1) { (b, a) } else { (a, b) })
}

/// Places every cycle of the figure on the canvas.
pub fn layout(figure: &Figure, config: &RenderConfig) -> Layout {
    let requested = config.viewport.unwrap_or_else(|| fitted_viewport(figure, config));
    let vp = requested.fit_aspect(config.width, config.height);
    let s = config.width / vp.width();
    let px = |u: f64| (u - vp.umin) * s;
    let py = |v: f64| (vp.vmax - v) * s;
    let line = |normal, offset| {
        clip_line(normal, offset, &vp).map(|((u1, v1), (u2, v2))| Primitive::Line {
            x1: px(u1),
            y1: py(v1),
            x2: px(u2),
            y2: py(v2),
        })
    };

    let mut elements = Vec::new();
    for (role, cycle) in &figure.items {
        let prim = match center_radius(cycle) {
            Ok(CycleShape::Line { normal, offset }) => line(normal, offset),
            Ok(CycleShape::Circle { center: (u, v), radius_sq }) => {
                let (cx, cy, r) = (px(u), py(v), radius_sq.sqrt() * s);
                let visible = cx + r >= 0.0 && cx - r <= config.width && cy + r >= 0.0 && cy - r <= config.height;
                if !visible {
                    None
                } else if r < config.min_radius_px {
                    Some(Primitive::Dot { cx, cy })
                } else {
                    Some(Primitive::Circle { cx, cy, r })
                }
            }
            Err(_) => None,
        };
        elements.extend(prim.map(|p| (*role, p)));
    }
    Layout { viewport: vp, scale: s, axis: line((0.0, 1.0), 0.0), elements }
}

/// `x` with six significant digits in fixed notation, trailing zeros
/// dropped.
pub fn format_number(x: f64) -> String {
    if !x.is_finite() || x == 0.0 {
        return "0".to_string();
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (5 - magnitude).max(0) as usize;
    let mut s = if magnitude > 5 {
        let unit = 10f64.powi(magnitude - 5);
        format!("{:.0}", (x / unit).round() * unit)
    } else {
        format!("{x:.decimals$}")
    };
    if s.contains('.') {
        s.truncate(s.trim_end_matches('0').trim_end_matches('.').len());
    }
    if s == "-0" {
        s = "0".to_string();
    }
    s
}

fn write_primitive(out: &mut String, prim: &Primitive, style: &str, color: &str) {
    let f = format_number;
    let _ = match *prim {
        Primitive::Circle { cx, cy, r } => {
            writeln!(out, r#"<circle cx="{}" cy="{}" r="{}" stroke="{color}"{style}/>"#, f(cx), f(cy), f(r))
        }
        Primitive::Dot { .. } => Ok(()),
        Primitive::Line { x1, y1, x2, y2 } => writeln!(
            out,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{color}"{style}/>"#,
            f(x1),
            f(y1),
            f(x2),
            f(y2)
        ),
    };
}

/// SVG 1.1 document for an already laid-out figure.
pub fn layout_to_svg(layout: &Layout, config: &RenderConfig) -> String {
    let f = format_number;
    let (w, h) = (f(config.width), f(config.height));
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n");
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let vp = &layout.viewport;
    let _ = writeln!(
        out,
        "<desc>u in [{}, {}], v in [{}, {}], {} px per unit</desc>",
        f(vp.umin),
        f(vp.umax),
        f(vp.vmin),
        f(vp.vmax),
        f(layout.scale)
    );
    let _ = writeln!(out, r#"<rect x="0" y="0" width="{w}" height="{h}" fill="{}"/>"#, config.background);
    out.push_str("<g fill=\"none\">\n");
    if let Some(axis) = &layout.axis {
        let style = format!(r#" stroke-width="{}""#, f(config.axis_stroke));
        write_primitive(&mut out, axis, &style, &config.axis_color);
    }
    for (role, prim) in &layout.elements {
        let (color, width, dash) = match role {
            Role::Horocycle(i) => (&config.horocycle_colors[i % 2], config.horocycle_stroke, None),
            Role::Connecting => (&config.connecting_color, config.connecting_stroke, None),
            Role::Mirror => (&config.mirror_color, config.connecting_stroke, Some(&config.mirror_dash)),
        };
        if let Primitive::Dot { cx, cy } = prim {
            let _ = writeln!(
                out,
                r#"<circle cx="{}" cy="{}" r="{}" fill="{color}" stroke="none"/>"#,
                f(*cx),
                f(*cy),
                f(config.dot_radius_px)
            );
            continue;
        }
        let mut style = format!(r#" stroke-width="{}""#, f(width));
        if let Some(dash) = dash {
            let _ = write!(style, r#" stroke-dasharray="{dash}""#);
        }
        write_primitive(&mut out, prim, &style, color);
    }
    out.push_str("</g>\n</svg>\n");
    out
}

pub fn render_figure_svg(figure: &Figure, config: &RenderConfig) -> String {
    layout_to_svg(&layout(figure, config), config)
}

/// Horocycles in two alternating hues, connecting cycles in a third, their
/// mirrors dashed, the real axis black.
pub fn render_chain_svg<S: Scalar>(chain: &[ChainLink<S>], config: &RenderConfig) -> String {
    render_figure_svg(&Figure::from_chain(chain), config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cf::{coefficient_source, Constant};
    use crate::chain::{build_chain, Arrangement};
    use crate::scalar::Rational;
    use proptest::prelude::*;

    fn pi_chain(terms: usize) -> Vec<ChainLink<Rational>> {
        build_chain(&coefficient_source(Constant::Pi, terms).unwrap(), Arrangement::Tangent, terms).unwrap()
    }

    #[test]
    fn number_format() {
        assert_eq!(format_number(0.0), "0");
        assert_eq!(format_number(-0.0), "0");
        assert_eq!(format_number(-1e-9), "-0.000000001");
        assert_eq!(format_number(-0.0000001), "-0.0000001");
        assert_eq!(format_number(400.0), "400");
        assert_eq!(format_number(1.23456789), "1.23457");
        assert_eq!(format_number(123456.7), "123457");
        assert_eq!(format_number(12345678.0), "12345700");
        assert_eq!(format_number(0.000123456789), "0.000123457");
        assert_eq!(format_number(-2.5), "-2.5");
        assert_eq!(format_number(f64::NAN), "0");
    }

    #[test]
    fn third_pi_horocycle_is_a_dot() {
        // 800 px across [3, 3.2] is 4000 px per unit
        let cfg = RenderConfig { viewport: Some(Viewport::new(3.0, 3.2, 0.0, 0.15).unwrap()), ..Default::default() };
        let lay = layout(&Figure::from_chain(&pi_chain(4)), &cfg);
        assert!((lay.scale - 4000.0).abs() < 1e-9);
        let horo = |i| lay.elements.iter().find(|(r, _)| *r == Role::Horocycle(i)).map(|(_, p)| *p);
        // horocycles 1.. sit at the convergents 3, 22/7, 333/106, ...
        assert!(matches!(horo(2), Some(Primitive::Circle { .. })));
        match horo(3) {
            Some(Primitive::Dot { cx, .. }) => assert!((cx - (333.0 / 106.0 - 3.0) * 4000.0).abs() < 1e-6),
            other => panic!("{other:?}"),
        }
        let r3 = 4000.0 / (2.0 * 106.0 * 106.0);
        assert!(r3 < 0.5);
    }

    #[test]
    fn unit_circle_in_explicit_viewport() {
        let fig = Figure { items: vec![(Role::Horocycle(0), Cycle2::new(1.0, 0.0, 0.0, -1.0).unwrap())] };
        let cfg = RenderConfig {
            width: 400.0,
            height: 400.0,
            viewport: Some(Viewport::new(-2.0, 2.0, -2.0, 2.0).unwrap()),
            ..Default::default()
        };
        let svg = render_figure_svg(&fig, &cfg);
        assert!(svg.contains(r##"<circle cx="200" cy="200" r="100" stroke="#1f5fa8" stroke-width="1"/>"##), "{svg}");
        assert!(svg.contains(r#"<line x1="0" y1="200" x2="400" y2="200""#), "{svg}");
    }

    #[test]
    fn rendering_is_deterministic() {
        let chain = pi_chain(5);
        let cfg = RenderConfig::default();
        assert_eq!(render_chain_svg(&chain, &cfg), render_chain_svg(&chain.clone(), &cfg.clone()));
    }

    #[test]
    fn fitted_view_keeps_margin() {
        let fig = Figure { items: vec![(Role::Connecting, Cycle2::new(1.0, 0.0, 1.0, 0.0).unwrap())] };
        let cfg = RenderConfig { width: 100.0, height: 100.0, ..Default::default() };
        let lay = layout(&fig, &cfg);
        // circle spans [-1, 1] x [0, 2]; 5% of 2 on each side
        assert!((lay.viewport.umin + 1.1).abs() < 1e-12 && (lay.viewport.vmax - 2.1).abs() < 1e-12);
        assert_eq!(lay.elements.len(), 1);
    }

    #[test]
    fn lines_are_clipped() {
        let vp = Viewport::new(0.0, 4.0, 0.0, 2.0).unwrap();
        let ((u1, v1), (u2, v2)) = clip_line((1.0, 0.0), 3.0, &vp).unwrap();
        assert_eq!((u1, u2), (3.0, 3.0));
        assert_eq!((v1.min(v2), v1.max(v2)), (0.0, 2.0));
        assert_eq!(clip_line((1.0, 0.0), 5.0, &vp), None);
        let ((u1, v1), (u2, v2)) = clip_line((1.0, 1.0), 1.0, &vp).unwrap();
        assert!((u1 + v1 - 1.0).abs() < 1e-12 && (u2 + v2 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn mirrors_are_dashed() {
        let cf = coefficient_source(Constant::E, 3).unwrap();
        let chain = build_chain::<f64>(&cf, Arrangement::Mixed, 3).unwrap();
        let svg = render_chain_svg(&chain, &RenderConfig::default());
        assert!(svg.contains("stroke-dasharray=\"6 4\""));
    }

    #[test]
    fn config_parsing() {
        let cfg = RenderConfig::parse(
            "# figure\nwidth = 640\nviewport = 3 3.2 0 0.1\nhorocycle_colors = red blue  # two hues\nmin_radius_px=1\n",
        )
        .unwrap();
        assert_eq!(cfg.width, 640.0);
        assert_eq!(cfg.viewport, Some(Viewport { umin: 3.0, umax: 3.2, vmin: 0.0, vmax: 0.1 }));
        assert_eq!(cfg.horocycle_colors, ["red".to_string(), "blue".to_string()]);
        assert_eq!(cfg.min_radius_px, 1.0);
        assert!(matches!(RenderConfig::parse("colour = red"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(RenderConfig::parse("\nwidth = -3"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(RenderConfig::parse("viewport = 1 1 0 1"), Err(Error::Parse { line: 1, .. })));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn drawn_circles_match_geometry(terms in proptest::collection::vec(1i64..6, 1..6), arr in 0usize..3) {
            let cf = crate::cf::ContinuedFraction::simple(Some(0), &terms);
            let arr = Arrangement::ALL[arr];
            let chain = build_chain::<f64>(&cf, arr, terms.len()).unwrap();
            let fig = Figure::from_chain(&chain);
            let cfg = RenderConfig::default();
            let lay = layout(&fig, &cfg);
            let s = lay.scale;
            let drawn: Vec<_> = lay.elements.iter().filter_map(|(role, p)| match p {
                Primitive::Circle { cx, cy, r } => Some((*role, *cx, *cy, *r)),
                _ => None,
            }).collect();
            for (role, cycle) in &fig.items {
                if let Ok(CycleShape::Circle { center: (u, v), radius_sq }) = center_radius(cycle) {
                    let (cx, cy, r) = ((u - lay.viewport.umin) * s, (lay.viewport.vmax - v) * s, radius_sq.sqrt() * s);
                    if r >= cfg.min_radius_px {
                        let hit = drawn.iter().any(|&(dr, x, y, rr)| {
                            dr == *role && (x - cx).abs() < 0.5 && (y - cy).abs() < 0.5 && (rr - r).abs() < 0.5
                        });
                        prop_assert!(hit, "{:?} {} {} {}", role, cx, cy, r);
                    }
                }
            }
        }
    }
}
