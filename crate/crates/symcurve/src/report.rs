//! Plain-text reports. Every function is a pure function of its inputs so
//! identical inputs give byte-identical output.

use std::fmt::Write as _;

use symcurve_core::analysis::AnalyzedCurve;
use symcurve_core::moduli::{DimensionBreakdown, Surface};
use symcurve_core::{CurveSpec, Decision, GenericityReport, SymmetryGroup};

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn genericity(report: &GenericityReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "generic: {}", yes_no(report.is_generic));
    let _ = writeln!(s, "angle tolerance: {}", report.angle_tol);
    let _ = writeln!(s, "separation tolerance: {:e}", report.sep_tol);
    let _ = writeln!(s, "double points: {}", report.double_points.len());
    let _ = writeln!(s, "violations: {}", report.violations.len());
    for v in &report.violations {
        let _ = writeln!(
            s,
            "  {} at ({:.6}, {:.6})",
            v.kind.as_str(),
            v.location.x,
            v.location.y
        );
    }
    s
}

pub fn analysis(a: &AnalyzedCurve) -> String {
    let mut s = String::new();
    let samples: Vec<String> = a
        .curve
        .loops()
        .iter()
        .map(|l| l.len().to_string())
        .collect();
    let _ = writeln!(
        s,
        "loops: {} (samples {})",
        a.curve.loop_count(),
        samples.join(", ")
    );
    s.push_str(&genericity(&a.report));
    let Some(st) = &a.structure else {
        return s;
    };
    let arr = &st.arrangement;
    let _ = writeln!(s, "vertices: {}", arr.vertex_count());
    let _ = writeln!(s, "edges: {}", arr.edge_count());
    let _ = writeln!(
        s,
        "faces: {} ({} bounded)",
        arr.face_count(),
        arr.bounded_face_count()
    );
    let _ = writeln!(s, "r: {}", arr.bounded_face_count());
    let _ = writeln!(s, "components: {}", arr.component_count());
    let _ = writeln!(s, "euler characteristic: {}", arr.euler_characteristic());
    let _ = writeln!(s, "face areas:");
    for (j, (area, face)) in st.areas.entries().iter().zip(arr.faces()).enumerate() {
        let p = face.representative;
        let _ = writeln!(s, "  D{} {:.9} at ({:.6}, {:.6})", j + 1, area, p.x, p.y);
    }
    let _ = writeln!(s, "total area: {:.9}", st.areas.sum());
    let _ = writeln!(s, "gauss code: {}", st.gauss.to_word_string());
    let _ = writeln!(s, "canonical code: {}", st.canonical_code());
    s
}

pub fn symmetry(r: usize, group: &SymmetryGroup) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "r: {r}");
    let _ = writeln!(s, "canonical code: {}", group.canonical_code());
    let _ = writeln!(s, "group order: {}", group.order());
    let _ = writeln!(s, "cyclic: {}", yes_no(group.is_cyclic()));
    let gens: Vec<String> = group
        .generators()
        .iter()
        .map(|g| g.faces.to_string())
        .collect();
    let _ = writeln!(
        s,
        "generators: {}",
        if gens.is_empty() {
            "none".to_string()
        } else {
            gens.join(" ")
        }
    );
    let _ = writeln!(s, "elements (faces | double points):");
    for e in group.elements() {
        let _ = writeln!(s, "  {} | {}", e.faces, e.vertices);
    }
    s
}

pub fn decision(mode: &str, d: &Decision) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{}", d.verdict);
    let _ = writeln!(s, "mode: {mode}");
    let _ = writeln!(s, "verdict: {}", d.verdict);
    let _ = writeln!(s, "tolerance: {:e} relative", d.tolerance);
    match &d.witness {
        Some(w) => {
            let _ = writeln!(s, "threshold: {:.9e}", d.threshold);
            let _ = writeln!(s, "witness correspondence: {}", w.correspondence);
            let _ = writeln!(s, "witness group element: {}", w.group_element);
            let _ = writeln!(s, "max discrepancy: {:.9e}", d.max_discrepancy);
            let parts: Vec<String> = w.discrepancies.iter().map(|x| format!("{x:.3e}")).collect();
            let _ = writeln!(s, "discrepancies: {}", parts.join(" "));
        }
        None => {
            let _ = writeln!(s, "witness: none (isotopy types differ)");
        }
    }
    s
}

pub fn dimension(spec: &CurveSpec, b: &DimensionBreakdown) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{}", b.total);
    let _ = writeln!(s, "surface: {}", spec.surface.as_str());
    let _ = writeln!(s, "r: {}", spec.r);
    for (name, dim) in &b.local_terms {
        let _ = writeln!(s, "  local {name}: {dim}");
    }
    let area = match spec.surface {
        Surface::Bounded => "r - 1",
        _ => "r",
    };
    let _ = writeln!(s, "  areas ({area}): {}", b.area_term);
    let mut terms: Vec<String> = b.local_terms.iter().map(|t| t.1.to_string()).collect();
    terms.push(b.area_term.to_string());
    let _ = writeln!(s, "dimension: {} = {}", terms.join(" + "), b.total);
    s
}
