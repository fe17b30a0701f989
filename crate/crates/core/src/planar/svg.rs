use std::fmt::Write;

use num_traits::ToPrimitive;

use super::{convex_hull, PlaneModel, Point2};
use crate::formula::{Prop, UnknownLetter};
use crate::semantics::ConditionalModel;

fn coords(p: &Point2) -> (f64, f64) {
    (p.x.to_f64().unwrap_or(0.0), -p.y.to_f64().unwrap_or(0.0))
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// A standalone SVG drawing of the points, optionally shading the hull of
/// the points satisfying `highlight`. The output depends only on the input.
pub fn render_svg(m: &PlaneModel, highlight: Option<&Prop>) -> Result<String, UnknownLetter> {
    let shaded = match highlight {
        Some(f) => Some(m.extension(f)?),
        None => None,
    };
    let pts: Vec<(f64, f64)> = m.points().iter().map(coords).collect();
    let (mut min_x, mut min_y, mut max_x, mut max_y) = (0.0f64, 0.0f64, 1.0f64, 1.0f64);
    if let Some(&(x, y)) = pts.first() {
        (min_x, min_y, max_x, max_y) = (x, y, x, y);
        for &(x, y) in &pts {
            min_x = min_x.min(x);
            min_y = min_y.min(y);
            max_x = max_x.max(x);
            max_y = max_y.max(y);
        }
    }
    let span = (max_x - min_x).max(max_y - min_y).max(1.0);
    let margin = 0.1 * span;
    let (vx, vy) = (min_x - margin, min_y - margin);
    let (vw, vh) = (max_x - min_x + 2.0 * margin, max_y - min_y + 2.0 * margin);
    let radius = span / 80.0;
    let font = span / 25.0;

    let mut out = String::new();
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{vx:.4} {vy:.4} {vw:.4} {vh:.4}">"#
    )
    .unwrap();
    if let Some(set) = shaded.filter(|s| !s.is_empty()) {
        let hull: Vec<(f64, f64)> = convex_hull(&m.points_of(&set)).iter().map(coords).collect();
        let list = hull.iter().map(|(x, y)| format!("{x:.4},{y:.4}")).collect::<Vec<_>>().join(" ");
        writeln!(
            out,
            r##"  <polygon points="{list}" fill="#b0c4de" fill-opacity="0.6" stroke="#4682b4" stroke-width="{:.4}"/>"##,
            radius / 2.0
        )
        .unwrap();
    }
    for (id, (x, y)) in m.ids().iter().zip(&pts) {
        writeln!(out, r#"  <circle cx="{x:.4}" cy="{y:.4}" r="{radius:.4}" fill="black"/>"#).unwrap();
        writeln!(
            out,
            r#"  <text x="{:.4}" y="{:.4}" font-size="{font:.4}" font-family="sans-serif">{}</text>"#,
            x + 1.5 * radius,
            y - 1.5 * radius,
            escape(id)
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{parse_prop, Valuation};
    use crate::worldset::WorldSet;

    fn triangle() -> PlaneModel {
        let points = vec![
            ("a".to_string(), Point2::from_integers(0, 0)),
            ("b".to_string(), Point2::from_integers(4, 0)),
            ("c".to_string(), Point2::from_integers(0, 3)),
            ("d".to_string(), Point2::from_integers(1, 1)),
        ];
        let mut valuation = Valuation::new();
        valuation.insert("p".into(), WorldSet::from_indices(4, [0, 1, 2]));
        PlaneModel::new(points, valuation).unwrap()
    }

    #[test]
    fn highlight_draws_a_polygon() {
        let m = triangle();
        let svg = render_svg(&m, Some(&parse_prop("p").unwrap())).unwrap();
        assert!(svg.contains("<polygon"));
        assert_eq!(svg.matches("<circle").count(), 4);
        assert!(svg.contains(r#"viewBox="-0.4000 -3.4000 4.8000 3.8000""#));
    }

    #[test]
    fn no_highlight_draws_points_only() {
        let m = triangle();
        let svg = render_svg(&m, None).unwrap();
        assert!(!svg.contains("<polygon"));
        let empty = render_svg(&m, Some(&parse_prop("F").unwrap())).unwrap();
        assert!(!empty.contains("<polygon"));
    }

    #[test]
    fn output_is_deterministic() {
        let m = triangle();
        let f = parse_prop("p").unwrap();
        assert_eq!(render_svg(&m, Some(&f)).unwrap(), render_svg(&m, Some(&f)).unwrap());
    }
}
