//! SVG drawings of planar arrangements.

use std::fmt::Write;

use num::{ToPrimitive, Zero};

use crate::arrangement::{Arrangement, SemiLattice};
use crate::error::{Error, Result};
use crate::exactq::field::parse_rational;
use crate::exactq::{Rational, Rationals};

const SIZE: f64 = 480.0;
const MARGIN: f64 = 20.0;

/// The drawing box `[x0, x1] × [y0, y1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Window {
    pub x0: Rational,
    pub y0: Rational,
    pub x1: Rational,
    pub y1: Rational,
}

impl Window {
    /// Parses `"x0,y0,x1,y1"`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 4 {
            return Err(Error::parse("--window", "expected four numbers x0,y0,x1,y1"));
        }
        let v = parts
            .iter()
            .map(|p| parse_rational(p).ok_or_else(|| Error::parse("--window", format!("not a rational number: {p:?}"))))
            .collect::<Result<Vec<_>>>()?;
        let [x0, y0, x1, y1]: [Rational; 4] = v.try_into().expect("four parts");
        if x0 >= x1 || y0 >= y1 {
            return Err(Error::parse("--window", "need x0 < x1 and y0 < y1"));
        }
        Ok(Self { x0, y0, x1, y1 })
    }

    fn contains(&self, p: &[Rational; 2]) -> bool {
        self.x0 <= p[0] && p[0] <= self.x1 && self.y0 <= p[1] && p[1] <= self.y1
    }

    /// The box around `points`, padded by 1 on every side.
    fn around(points: &[[Rational; 2]]) -> Self {
        let one = Rational::from_integer(1.into());
        let mut w = Self {
            x0: -one.clone(),
            y0: -one.clone(),
            x1: one.clone(),
            y1: one.clone(),
        };
        if let Some(first) = points.first() {
            w = Self {
                x0: first[0].clone() - &one,
                y0: first[1].clone() - &one,
                x1: first[0].clone() + &one,
                y1: first[1].clone() + &one,
            };
        }
        for p in points {
            w.x0 = w.x0.min(p[0].clone() - &one);
            w.y0 = w.y0.min(p[1].clone() - &one);
            w.x1 = w.x1.max(p[0].clone() + &one);
            w.y1 = w.y1.max(p[1].clone() + &one);
        }
        w
    }
}

/// The part of `a x + b y = c` inside the window, as its two extreme points.
fn clip(a: &Rational, b: &Rational, c: &Rational, w: &Window) -> Option<([Rational; 2], [Rational; 2])> {
    let mut hits: Vec<[Rational; 2]> = Vec::new();
    if !b.is_zero() {
        for x in [&w.x0, &w.x1] {
            hits.push([x.clone(), (c - a * x) / b]);
        }
    }
    if !a.is_zero() {
        for y in [&w.y0, &w.y1] {
            hits.push([(c - b * y) / a, y.clone()]);
        }
    }
    hits.retain(|p| w.contains(p));
    hits.sort();
    hits.dedup();
    let first = hits.first()?.clone();
    let last = hits.last()?.clone();
    Some((first, last))
}

struct Canvas<'a> {
    w: &'a Window,
}

impl Canvas<'_> {
    fn x(&self, x: &Rational) -> f64 {
        let span = (&self.w.x1 - &self.w.x0).to_f64().unwrap_or(1.0);
        MARGIN + (x - &self.w.x0).to_f64().unwrap_or(0.0) / span * (SIZE - 2.0 * MARGIN)
    }

    fn y(&self, y: &Rational) -> f64 {
        let span = (&self.w.y1 - &self.w.y0).to_f64().unwrap_or(1.0);
        SIZE - MARGIN - (y - &self.w.y0).to_f64().unwrap_or(0.0) / span * (SIZE - 2.0 * MARGIN)
    }
}

fn point(flat_point: &[Rational]) -> [Rational; 2] {
    [flat_point[0].clone(), flat_point[1].clone()]
}

/// Draws `a` in the window (by default the vertices and the foot of each
/// line from the origin, padded by 1). The last hyperplane is drawn in red.
pub fn render_svg(a: &Arrangement<Rationals>, window: Option<&Window>) -> Result<String> {
    if a.dim() != 2 {
        return Err(Error::NotPlanar(a.dim()));
    }
    let lattice = SemiLattice::build(a);
    let vertices: Vec<[Rational; 2]> = lattice.level(0).into_iter().map(|x| point(lattice.flat(x).point())).collect();
    let default_window;
    let w = match window {
        Some(w) => w,
        None => {
            let mut anchors = vertices.clone();
            for h in a.hyperplanes() {
                let n = h.normal();
                let norm2 = &n[0] * &n[0] + &n[1] * &n[1];
                let s = h.offset() / norm2;
                anchors.push([&n[0] * &s, &n[1] * &s]);
            }
            default_window = Window::around(&anchors);
            &default_window
        }
    };
    let c = Canvas { w };
    let mut out = String::new();
    writeln!(out, r##"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"##).unwrap();
    writeln!(
        out,
        r##"  <rect class="frame" x="{MARGIN}" y="{MARGIN}" width="{}" height="{}" fill="none" stroke="#888888"/>"##,
        SIZE - 2.0 * MARGIN,
        SIZE - 2.0 * MARGIN
    )
    .unwrap();
    let last = a.len().checked_sub(1);
    for (i, h) in a.hyperplanes().iter().enumerate() {
        let n = h.normal();
        let Some((p, q)) = clip(&n[0], &n[1], h.offset(), w) else {
            continue;
        };
        let (class, stroke, width) = if Some(i) == last && a.len() > 1 {
            ("hyperplane new", "#d62728", 2.5)
        } else {
            ("hyperplane", "#1f1f1f", 1.5)
        };
        writeln!(
            out,
            r##"  <line class="{class}" data-label="{}" x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="{stroke}" stroke-width="{width}"/>"##,
            a.labels()[i],
            c.x(&p[0]),
            c.y(&p[1]),
            c.x(&q[0]),
            c.y(&q[1])
        )
        .unwrap();
    }
    for v in vertices.iter().filter(|v| w.contains(v)) {
        writeln!(out, r##"  <circle class="vertex" cx="{:.3}" cy="{:.3}" r="3.5" fill="#1f77b4"/>"##, c.x(&v[0]), c.y(&v[1])).unwrap();
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::exactq::field::{int, int_vec};
    use crate::exactq::Hyperplane;

    fn count(svg: &str, needle: &str) -> usize {
        svg.matches(needle).count()
    }

    #[test]
    fn example_drawings() {
        let a = corpus::example();
        let svg = render_svg(&a, None).unwrap();
        assert_eq!(count(&svg, "<line "), 3);
        assert_eq!(count(&svg, "class=\"vertex\""), 2);

        let (b, _) = a.with_hyperplane(Hyperplane::new(&Rationals, int_vec(&[0, 1]), int(1)).unwrap());
        let svg = render_svg(&b, None).unwrap();
        assert_eq!(count(&svg, "<line "), 4);
        assert_eq!(count(&svg, "class=\"vertex\""), 4);
        assert_eq!(count(&svg, "hyperplane new"), 1);
        let last_line = svg.lines().rfind(|l| l.contains("<line ")).unwrap();
        assert!(last_line.contains("hyperplane new"));
        assert_eq!(svg, render_svg(&b, None).unwrap());
    }

    #[test]
    fn empty_and_errors() {
        let svg = render_svg(&Arrangement::empty(Rationals, 2), None).unwrap();
        assert_eq!(count(&svg, "class=\"frame\""), 1);
        assert_eq!(count(&svg, "<line "), 0);
        assert!(matches!(render_svg(&corpus::boolean(3), None), Err(Error::NotPlanar(3))));
        assert!(Window::parse("0,0,1").is_err());
        assert!(Window::parse("1,0,0,1").is_err());
    }

    #[test]
    fn window_clips() {
        let a = corpus::example();
        let w = Window::parse("-1/2,-1,1/2,1").unwrap();
        let svg = render_svg(&a, Some(&w)).unwrap();
        assert_eq!(count(&svg, "<line "), 2);
        assert_eq!(count(&svg, "class=\"vertex\""), 1);
    }
}
