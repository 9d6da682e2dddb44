//! SVG 1.1 pictures of arrangements.

use std::fmt::Write as _;

use symcurve_core::{AreaVector, Arrangement, Point};

const SIZE: f64 = 600.0;

/// One `path` per loop, one `circle` per double point (by vertex index) and
/// one `text` per bounded face (by label), annotated with its area when
/// `areas` is given.
pub fn render_svg(arr: &Arrangement, areas: Option<&AreaVector>) -> String {
    let bbox = arr.bounding_box();
    let margin = 0.05 * bbox.diagonal().max(f64::MIN_POSITIVE);
    let (x0, y1) = (bbox.min.x - margin, bbox.max.y + margin);
    let span = (bbox.width().max(bbox.height()) + 2.0 * margin).max(f64::MIN_POSITIVE);
    let k = SIZE / span;
    let map = |p: Point| ((p.x - x0) * k, (y1 - p.y) * k);
    let w = (bbox.width() + 2.0 * margin) * k;
    let h = (bbox.height() + 2.0 * margin) * k;

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:.2}" height="{h:.2}" viewBox="0 0 {w:.2} {h:.2}">"#
    );
    s.push_str("<g fill=\"none\" stroke=\"black\" stroke-width=\"1.5\">\n");
    for (i, lp) in arr.loops().iter().enumerate() {
        let mut d = String::new();
        for (k, p) in lp.iter().enumerate() {
            let (x, y) = map(*p);
            let _ = write!(d, "{}{x:.3},{y:.3} ", if k == 0 { 'M' } else { 'L' });
        }
        d.push('Z');
        let _ = writeln!(s, r#"<path class="curve" id="loop{}" d="{d}"/>"#, i + 1);
    }
    s.push_str("</g>\n<g fill=\"red\">\n");
    for (i, v) in arr.vertices().iter().enumerate() {
        let (x, y) = map(v.point);
        let _ = writeln!(
            s,
            r#"<circle class="vertex" id="v{}" cx="{x:.3}" cy="{y:.3}" r="4"/>"#,
            i + 1
        );
    }
    s.push_str("</g>\n<g font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">\n");
    for (j, face) in arr.faces().iter().filter(|f| !f.is_outer).enumerate() {
        let (x, y) = map(face.representative);
        let label = match areas {
            Some(a) if j < a.len() => format!("{} ({:.4})", j + 1, a[j]),
            _ => (j + 1).to_string(),
        };
        let _ = writeln!(
            s,
            r#"<text class="face" x="{x:.3}" y="{y:.3}">{label}</text>"#
        );
    }
    s.push_str("</g>\n</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use symcurve_core::{
        build_arrangement, check_generic, face_areas, ClosedCurve, GenericityOptions,
    };

    fn arrangement(c: ClosedCurve) -> Arrangement {
        build_arrangement(&c, &check_generic(&c, &GenericityOptions::default())).unwrap()
    }

    #[test]
    fn circle_has_one_path_and_label() {
        let arr = arrangement(ClosedCurve::from_fn(128, |t| Point::new(t.cos(), t.sin())).unwrap());
        let svg = render_svg(&arr, None);
        assert_eq!(svg.matches("<path").count(), 1);
        assert_eq!(svg.matches("<circle").count(), 0);
        assert!(svg.contains(">1</text>"));
    }

    #[test]
    fn trefoil_markers_and_labels() {
        let arr = arrangement(
            ClosedCurve::from_fn(512, |t| {
                Point::new(
                    t.sin() + 2.0 * (2.0 * t).sin(),
                    t.cos() - 2.0 * (2.0 * t).cos(),
                )
            })
            .unwrap(),
        );
        let svg = render_svg(&arr, None);
        assert_eq!(svg.matches("class=\"vertex\"").count(), 3);
        for l in 1..=4 {
            assert!(svg.contains(&format!(">{l}</text>")));
        }
        assert_eq!(svg, render_svg(&arr, None));
    }

    #[test]
    fn areas_are_annotated() {
        let arr = arrangement(
            ClosedCurve::from_fn(512, |t| Point::new((2.0 * t).sin(), t.sin())).unwrap(),
        );
        let a = face_areas(&arr).unwrap();
        let svg = render_svg(&arr, Some(&a));
        assert!(svg.contains(&format!(">1 ({:.4})</text>", a[0])));
        assert!(svg.contains(&format!(">2 ({:.4})</text>", a[1])));
    }
}
