//! Deterministic SVG emission of wall-and-chamber diagrams.
//!
//! The drawing plane is `(s, t)` with `t = sqrt(u)` upward; this is the only
//! module that converts exact rationals to floating point, and it does so at
//! the final serialization step with a fixed 6-decimal format, so identical
//! inputs yield byte-identical documents. Circle walls become semicircular
//! arc paths clipped to the window (one `<path>` per wall, possibly with two
//! subarcs when the window cuts off the top), vertical-line walls become
//! `<line>` elements. Elements carry the CSS classes `wall`, `axis`, `guide`
//! and `tick` for downstream styling.

use crate::walls::{wall_intersects_strip, Wall, WallShape};
use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};

type Rat = Rational64;

/// Rectangular drawing window `[s_min, s_max] x [0, t_max]` plus decoration
/// switches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenderWindow {
    pub s_min: Rat,
    pub s_max: Rat,
    pub t_max: Rat,
    pub pixels_per_unit: u32,
    pub decorations: Decorations,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decorations {
    /// Draw the s- and t-axes.
    pub axes: bool,
    /// Tick marks and labels at integer values of `s`.
    pub s_tick_labels: bool,
    /// Vertical guide lines at the given `s` values.
    pub guides: Vec<Rat>,
}

impl Default for Decorations {
    fn default() -> Self {
        Decorations {
            axes: true,
            s_tick_labels: true,
            guides: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RenderError {
    #[error("invalid window: s_min = {0} must be below s_max = {1}")]
    BadSpan(Rat, Rat),
    #[error("invalid window: t_max = {0} must be positive")]
    BadHeight(Rat),
    #[error("invalid window: pixels_per_unit must be at least 1")]
    BadScale,
}

impl RenderWindow {
    pub fn new(
        s_min: Rat,
        s_max: Rat,
        t_max: Rat,
        pixels_per_unit: u32,
        decorations: Decorations,
    ) -> Result<Self, RenderError> {
        if s_min >= s_max {
            return Err(RenderError::BadSpan(s_min, s_max));
        }
        if t_max <= Rat::zero() {
            return Err(RenderError::BadHeight(t_max));
        }
        if pixels_per_unit == 0 {
            return Err(RenderError::BadScale);
        }
        Ok(RenderWindow {
            s_min,
            s_max,
            t_max,
            pixels_per_unit,
            decorations,
        })
    }
}

/// Fixed 6-decimal float format; `-0` collapses to `0` so output is canonical.
fn fmt6(x: f64) -> String {
    let formatted = format!("{x:.6}");
    if formatted == "-0.000000" {
        "0.000000".to_owned()
    } else {
        formatted
    }
}

struct Mapper {
    s_min: f64,
    t_max: f64,
    scale: f64,
}

impl Mapper {
    fn x(&self, s: f64) -> f64 {
        (s - self.s_min) * self.scale
    }
    fn y(&self, t: f64) -> f64 {
        (self.t_max - t) * self.scale
    }
}

/// Renders walls into a standalone SVG document.
///
/// Exactly the walls whose shape meets the window (decided in exact
/// arithmetic) contribute a `<path class="wall">`; vertical-line walls
/// contribute a `<line class="wall">`. Wall elements appear in input order,
/// then axes, ticks and guides.
pub fn render_walls_svg(walls: &[Wall], window: &RenderWindow) -> Result<String, RenderError> {
    RenderWindow::new(
        window.s_min,
        window.s_max,
        window.t_max,
        window.pixels_per_unit,
        window.decorations.clone(),
    )?;

    let u_cap = window.t_max * window.t_max;
    let map = Mapper {
        s_min: window.s_min.to_f64().unwrap(),
        t_max: window.t_max.to_f64().unwrap(),
        scale: f64::from(window.pixels_per_unit),
    };
    let s_max_f = window.s_max.to_f64().unwrap();
    let t_max_f = map.t_max;
    let width = (s_max_f - map.s_min) * map.scale;
    let height = t_max_f * map.scale;

    let mut svg = String::new();
    svg.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {} {}\" width=\"{}\" height=\"{}\">\n",
        fmt6(width),
        fmt6(height),
        fmt6(width),
        fmt6(height)
    ));
    svg.push_str(
        "<style>.wall{fill:none;stroke:#000;stroke-width:1.5}\
         .axis{stroke:#555;stroke-width:1}\
         .guide{stroke:#888;stroke-width:1}\
         .tick{font-family:sans-serif;font-size:12px;fill:#333}</style>\n",
    );

    for wall in walls {
        if !wall_intersects_strip(&wall.shape, window.s_min, window.s_max, Some(u_cap)) {
            continue;
        }
        match wall.shape {
            WallShape::Circle {
                center_s,
                radius_sq,
            } => {
                let k = center_s.to_f64().unwrap();
                let rho = radius_sq.to_f64().unwrap().sqrt();
                let segments = visible_arc_segments(k, rho, map.s_min, s_max_f, t_max_f);
                let mut d = String::new();
                for (a, b) in &segments {
                    let (x1, y1) = (map.x(*a), map.y(t_at_point(k, rho, *a)));
                    let (x2, y2) = (map.x(*b), map.y(t_at_point(k, rho, *b)));
                    let r_px = rho * map.scale;
                    d.push_str(&format!(
                        "M {} {} A {} {} 0 0 1 {} {} ",
                        fmt6(x1),
                        fmt6(y1),
                        fmt6(r_px),
                        fmt6(r_px),
                        fmt6(x2),
                        fmt6(y2)
                    ));
                }
                if d.is_empty() {
                    // tangential contact: keep the element so path count
                    // matches the exact intersection test
                    let s0 = k.clamp(map.s_min, s_max_f);
                    let (x, y) = (map.x(s0), map.y(t_at_point(k, rho, s0)));
                    d = format!("M {} {} ", fmt6(x), fmt6(y));
                }
                svg.push_str(&format!("<path class=\"wall\" d=\"{}\"/>\n", d.trim_end()));
            }
            WallShape::Vertical { s } => {
                let x = map.x(s.to_f64().unwrap());
                svg.push_str(&format!(
                    "<line class=\"wall\" x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\"/>\n",
                    x1 = fmt6(x),
                    y1 = fmt6(map.y(0.0)),
                    x2 = fmt6(x),
                    y2 = fmt6(map.y(t_max_f)),
                ));
            }
        }
    }

    if window.decorations.axes {
        svg.push_str(&format!(
            "<line class=\"axis\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>\n",
            fmt6(map.x(map.s_min)),
            fmt6(map.y(0.0)),
            fmt6(map.x(s_max_f)),
            fmt6(map.y(0.0)),
        ));
        if map.s_min <= 0.0 && 0.0 <= s_max_f {
            svg.push_str(&format!(
                "<line class=\"axis\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>\n",
                fmt6(map.x(0.0)),
                fmt6(map.y(0.0)),
                fmt6(map.x(0.0)),
                fmt6(map.y(t_max_f)),
            ));
        }
    }

    if window.decorations.s_tick_labels {
        let lo = window.s_min.ceil().to_integer();
        let hi = window.s_max.floor().to_integer();
        for s in lo..=hi {
            let x = map.x(s as f64);
            svg.push_str(&format!(
                "<line class=\"tick\" x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\"/>\n",
                x1 = fmt6(x),
                y1 = fmt6(map.y(0.0)),
                x2 = fmt6(x),
                y2 = fmt6(map.y(0.0) + 5.0),
            ));
            svg.push_str(&format!(
                "<text class=\"tick\" x=\"{}\" y=\"{}\">{}</text>\n",
                fmt6(x + 3.0),
                fmt6(map.y(0.0) + 16.0),
                s
            ));
        }
    }

    for guide in &window.decorations.guides {
        if *guide < window.s_min || *guide > window.s_max {
            continue;
        }
        let x = map.x(guide.to_f64().unwrap());
        svg.push_str(&format!(
            "<line class=\"guide\" x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\"/>\n",
            x1 = fmt6(x),
            y1 = fmt6(map.y(0.0)),
            x2 = fmt6(x),
            y2 = fmt6(map.y(t_max_f)),
        ));
    }

    svg.push_str("</svg>\n");
    Ok(svg)
}

fn t_at_point(k: f64, rho: f64, s: f64) -> f64 {
    (rho * rho - (s - k) * (s - k)).max(0.0).sqrt()
}

/// Visible `s`-intervals of the upper semicircle inside the window: the arc
/// span intersected with the `s`-range, minus the middle stretch where the
/// arc rises above `t_max` (which splits the arc in two).
fn visible_arc_segments(k: f64, rho: f64, s_min: f64, s_max: f64, t_max: f64) -> Vec<(f64, f64)> {
    let lo = s_min.max(k - rho);
    let hi = s_max.min(k + rho);
    if lo >= hi {
        return Vec::new();
    }
    if rho <= t_max {
        return vec![(lo, hi)];
    }
    let cut = (rho * rho - t_max * t_max).sqrt();
    let mut segments = Vec::new();
    if lo < k - cut {
        segments.push((lo, hi.min(k - cut)));
    }
    if hi > k + cut {
        segments.push((lo.max(k + cut), hi));
    }
    segments
}
