//! Planar subdivision induced by a certified-generic curve.
//!
//! Vertices are the double points; every loop is cut at its crossings into
//! edges, each carried by a forward and a backward half-edge. Face cycles
//! follow the half-edge to the left of each half-edge, so bounded faces are
//! traversed counterclockwise. Bounded faces are labelled `1..r` in
//! lexicographic order of their interior representative point.

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use crate::curve::{BranchParam, ClosedCurve, GenericityReport};
use crate::error::{Error, Result};
use crate::geom::{
    point_segment_distance, rem_euclid, ring_centroid, signed_area, winding_number, Point, Rect,
};

mod quadrature;

pub use quadrature::{face_coverage, integrate_density_over_faces};

/// Double point of the arrangement.
#[derive(Debug, Clone, PartialEq)]
pub struct Vertex {
    pub point: Point,
    pub branches: [BranchParam; 2],
    pub tangents: [Point; 2],
}

#[derive(Debug, Clone, PartialEq)]
pub struct HalfEdge {
    /// `None` for a loop without crossings (anchored at its first sample).
    pub origin: Option<usize>,
    pub loop_index: usize,
    /// Runs along the loop's parameter direction.
    pub forward: bool,
    /// Parameter interval of the underlying edge, `start < end`; `end` may
    /// exceed the loop's sample count when the edge wraps.
    pub params: (f64, f64),
    pub twin: usize,
    /// Next half-edge on the same face cycle.
    pub next: usize,
    /// Next half-edge along the curve in this half-edge's direction.
    pub curve_next: usize,
    pub cycle: usize,
    pub face: usize,
    /// From origin to destination, endpoints included.
    pub polyline: Vec<Point>,
}

/// Closed boundary cycle of half-edges.
#[derive(Debug, Clone, PartialEq)]
pub struct Cycle {
    pub half_edges: Vec<usize>,
    pub ring: Vec<Point>,
    pub signed_area: f64,
    pub component: usize,
    pub face: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Face {
    /// For bounded faces the first cycle is the counterclockwise outer
    /// boundary; the rest are holes.
    pub cycles: Vec<usize>,
    pub is_outer: bool,
    pub representative: Point,
    /// Sum of the signed areas of the face's cycles.
    pub area: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Arrangement {
    loops: Vec<Vec<Point>>,
    vertices: Vec<Vertex>,
    half_edges: Vec<HalfEdge>,
    cycles: Vec<Cycle>,
    faces: Vec<Face>,
    components: usize,
    anchors: usize,
    bbox: Rect,
}

impl Arrangement {
    pub fn loops(&self) -> &[Vec<Point>] {
        &self.loops
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn half_edges(&self) -> &[HalfEdge] {
        &self.half_edges
    }

    pub fn cycles(&self) -> &[Cycle] {
        &self.cycles
    }

    /// Bounded faces in label order followed by the outer face.
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Edges, counting a crossing-free loop as one edge.
    pub fn edge_count(&self) -> usize {
        self.half_edges.len() / 2
    }

    /// Faces including the outer face.
    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Number `r` of bounded faces.
    pub fn bounded_face_count(&self) -> usize {
        self.faces.len() - 1
    }

    pub fn outer_face(&self) -> usize {
        self.faces.len() - 1
    }

    pub fn component_count(&self) -> usize {
        self.components
    }

    /// Loops without crossings.
    pub fn anchor_count(&self) -> usize {
        self.anchors
    }

    pub fn bounding_box(&self) -> Rect {
        self.bbox
    }

    /// `V - E + F` with crossing-free loops contributing an anchor vertex;
    /// equals `1 + components`.
    pub fn euler_characteristic(&self) -> i64 {
        (self.vertices.len() + self.anchors) as i64 - self.edge_count() as i64
            + self.faces.len() as i64
    }

    pub fn face_rings(&self, face: usize) -> impl Iterator<Item = &[Point]> + '_ {
        self.faces[face]
            .cycles
            .iter()
            .map(|&c| self.cycles[c].ring.as_slice())
    }

    /// Whether `p` lies in the interior of bounded face `face`.
    pub fn face_contains(&self, face: usize, p: Point) -> bool {
        let w: i32 = self.face_rings(face).map(|r| winding_number(r, p)).sum();
        w == 1
    }

    /// Distance from `p` to the boundary of `face`.
    pub fn boundary_distance(&self, face: usize, p: Point) -> f64 {
        let mut best = f64::INFINITY;
        for ring in self.face_rings(face) {
            let n = ring.len();
            for i in 0..n {
                best = best.min(point_segment_distance(p, ring[i], ring[(i + 1) % n]));
            }
        }
        best
    }

    /// Interior point of a bounded face with (approximately) maximal
    /// distance to the boundary, and that distance.
    pub fn deepest_point(&self, face: usize) -> (Point, f64) {
        let rep = self.faces[face].representative;
        let mut best = (rep, self.boundary_distance(face, rep));
        let bbox = Rect::bounding(self.face_rings(face).flatten()).expect("face has a boundary");
        const LATTICE: usize = 40;
        let (sx, sy) = (
            bbox.width() / LATTICE as f64,
            bbox.height() / LATTICE as f64,
        );
        for a in 0..LATTICE {
            for b in 0..LATTICE {
                let p = Point::new(
                    bbox.min.x + (a as f64 + 0.5) * sx,
                    bbox.min.y + (b as f64 + 0.5) * sy,
                );
                if self.face_contains(face, p) {
                    let d = self.boundary_distance(face, p);
                    if d > best.1 {
                        best = (p, d);
                    }
                }
            }
        }
        // Pattern search refinement.
        let mut step = 0.5 * sx.max(sy);
        for _ in 0..24 {
            let mut moved = false;
            for (dx, dy) in [(1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0)] {
                let p = best.0 + Point::new(dx * step, dy * step);
                if self.face_contains(face, p) {
                    let d = self.boundary_distance(face, p);
                    if d > best.1 {
                        best = (p, d);
                        moved = true;
                    }
                }
            }
            if !moved {
                step *= 0.5;
            }
        }
        best
    }
}

/// Positive face-area vector indexed by canonical face label (0-based).
#[derive(Debug, Clone, PartialEq)]
pub struct AreaVector(Vec<f64>);

impl AreaVector {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        for (face, &area) in entries.iter().enumerate() {
            if !(area > 0.0 && area.is_finite()) {
                return Err(Error::NonPositiveArea { face, area });
            }
        }
        Ok(Self(entries))
    }

    pub fn entries(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max(&self) -> f64 {
        self.0.iter().copied().fold(0.0, f64::max)
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }
}

impl core::ops::Index<usize> for AreaVector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

/// Parameters within this of an integer are snapped to the sample.
const SNAP: f64 = 1e-9;

fn snap_param(p: f64, n: usize) -> f64 {
    let r = p.round();
    let q = if (p - r).abs() < SNAP { r } else { p };
    rem_euclid(q, n as f64)
}

struct Occurrence {
    param: f64,
    vertex: usize,
}

/// Builds the subdivision of a curve whose report certifies genericity.
pub fn build_arrangement(curve: &ClosedCurve, report: &GenericityReport) -> Result<Arrangement> {
    if !report.is_generic {
        return Err(Error::NotGeneric {
            violations: report.violations.len(),
        });
    }
    let loops = curve.loops();
    let bbox = curve.bounding_box();
    let eps = 1e-12 * bbox.diagonal();

    let vertices: Vec<Vertex> = report
        .double_points
        .iter()
        .map(|dp| Vertex {
            point: dp.point,
            branches: dp.branches,
            tangents: dp.tangents,
        })
        .collect();

    let mut occ: Vec<Vec<Occurrence>> = (0..loops.len()).map(|_| Vec::new()).collect();
    for (v, dp) in report.double_points.iter().enumerate() {
        for b in dp.branches {
            let n = loops[b.loop_index].len();
            occ[b.loop_index].push(Occurrence {
                param: snap_param(b.param, n),
                vertex: v,
            });
        }
    }
    for o in occ.iter_mut() {
        o.sort_by(|a, b| a.param.total_cmp(&b.param));
    }

    // Half-edges 2e (forward) and 2e + 1 (backward) for edge e.
    let mut half_edges: Vec<HalfEdge> = Vec::new();
    let mut loop_edges: Vec<Vec<usize>> = Vec::with_capacity(loops.len());
    // Outgoing half-edges and their directions per vertex.
    let mut outgoing: Vec<Vec<(usize, f64)>> = vec![Vec::new(); vertices.len()];
    let mut anchors = 0;
    for (li, lp) in loops.iter().enumerate() {
        let n = lp.len();
        let occs = &occ[li];
        let mut edges = Vec::new();
        if occs.is_empty() {
            anchors += 1;
            let mut poly = lp.clone();
            poly.push(lp[0]);
            let e = half_edges.len() / 2;
            push_edge(&mut half_edges, None, None, li, (0.0, n as f64), poly);
            edges.push(e);
        } else {
            let m = occs.len();
            for k in 0..m {
                let a = &occs[k];
                let b = &occs[(k + 1) % m];
                let start = a.param;
                let end = if k + 1 < m {
                    b.param
                } else {
                    b.param + n as f64
                };
                let pa = vertices[a.vertex].point;
                let pb = vertices[b.vertex].point;
                let mut poly = vec![pa];
                let first = start.floor() as i64 + 1;
                let last = end.ceil() as i64 - 1;
                for s in first..=last {
                    let q = lp[s.rem_euclid(n as i64) as usize];
                    if q.dist(pa) > eps && q.dist(pb) > eps {
                        poly.push(q);
                    }
                }
                poly.push(pb);
                let e = half_edges.len() / 2;
                push_edge(
                    &mut half_edges,
                    Some(a.vertex),
                    Some(b.vertex),
                    li,
                    (start, end),
                    poly,
                );
                edges.push(e);

                let fwd = curve.segment_dir(li, start.floor() as usize);
                outgoing[a.vertex].push((2 * e, fwd.angle()));
                let end_param = rem_euclid(end, n as f64);
                let before = (end_param.ceil() as i64 - 1).rem_euclid(n as i64) as usize;
                let bwd = -curve.segment_dir(li, before);
                outgoing[b.vertex].push((2 * e + 1, bwd.angle()));
            }
        }
        loop_edges.push(edges);
    }

    // Rotation system and face successor.
    let mut rotation: Vec<Vec<usize>> = Vec::with_capacity(vertices.len());
    for (v, out) in outgoing.iter_mut().enumerate() {
        if out.len() != 4 {
            return Err(Error::Inconsistent(format!(
                "vertex {v} has {} outgoing half-edges",
                out.len()
            )));
        }
        out.sort_by(|a, b| a.1.total_cmp(&b.1));
        rotation.push(out.iter().map(|o| o.0).collect());
    }
    for h in 0..half_edges.len() {
        let twin = half_edges[h].twin;
        match half_edges[twin].origin {
            None => half_edges[h].next = h,
            Some(v) => {
                let rot = &rotation[v];
                let k = rot
                    .iter()
                    .position(|&d| d == twin)
                    .expect("twin is outgoing at its origin");
                half_edges[h].next = rot[(k + 3) % 4];
            }
        }
    }
    for edges in &loop_edges {
        let m = edges.len();
        for k in 0..m {
            let e = edges[k];
            half_edges[2 * e].curve_next = 2 * edges[(k + 1) % m];
            half_edges[2 * e + 1].curve_next = 2 * edges[(k + m - 1) % m] + 1;
        }
    }

    // Connected components of the image: loops sharing a vertex.
    let mut parent: Vec<usize> = (0..loops.len()).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for v in &vertices {
        let (a, b) = (
            find(&mut parent, v.branches[0].loop_index),
            find(&mut parent, v.branches[1].loop_index),
        );
        if a != b {
            parent[b] = a;
        }
    }
    let mut comp_id = vec![usize::MAX; loops.len()];
    let mut components = 0;
    for li in 0..loops.len() {
        let r = find(&mut parent, li);
        if comp_id[r] == usize::MAX {
            comp_id[r] = components;
            components += 1;
        }
        comp_id[li] = comp_id[r];
    }

    // Face cycles.
    let mut cycles: Vec<Cycle> = Vec::new();
    let mut seen = vec![false; half_edges.len()];
    for start in 0..half_edges.len() {
        if seen[start] {
            continue;
        }
        let mut hs = Vec::new();
        let mut ring = Vec::new();
        let mut h = start;
        loop {
            if seen[h] {
                return Err(Error::Inconsistent(
                    "face traversal revisited a half-edge".to_string(),
                ));
            }
            seen[h] = true;
            hs.push(h);
            let poly = &half_edges[h].polyline;
            ring.extend_from_slice(&poly[..poly.len() - 1]);
            h = half_edges[h].next;
            if h == start {
                break;
            }
        }
        let c = cycles.len();
        for &x in &hs {
            half_edges[x].cycle = c;
        }
        cycles.push(Cycle {
            signed_area: signed_area(&ring),
            component: comp_id[half_edges[start].loop_index],
            half_edges: hs,
            ring,
            face: usize::MAX,
        });
    }

    // Bounded faces from counterclockwise cycles; clockwise cycles are
    // holes of the smallest enclosing bounded face of another component.
    let mut faces: Vec<Face> = Vec::new();
    for (c, cy) in cycles.iter_mut().enumerate() {
        if cy.signed_area > 0.0 {
            cy.face = faces.len();
            faces.push(Face {
                cycles: vec![c],
                is_outer: false,
                representative: Point::default(),
                area: cy.signed_area,
            });
        } else if cy.signed_area == 0.0 {
            return Err(Error::Inconsistent(format!("cycle {c} has zero area")));
        }
    }
    let mut outer = Face {
        cycles: Vec::new(),
        is_outer: true,
        representative: Point::new(bbox.max.x + bbox.diagonal(), bbox.max.y + bbox.diagonal()),
        area: 0.0,
    };
    for c in 0..cycles.len() {
        if cycles[c].signed_area > 0.0 {
            continue;
        }
        let q = cycles[c].ring[0];
        let host = (0..cycles.len())
            .filter(|&p| {
                cycles[p].signed_area > 0.0
                    && cycles[p].component != cycles[c].component
                    && winding_number(&cycles[p].ring, q) != 0
            })
            .min_by(|&a, &b| cycles[a].signed_area.total_cmp(&cycles[b].signed_area));
        match host {
            Some(p) => {
                let f = cycles[p].face;
                faces[f].cycles.push(c);
                faces[f].area += cycles[c].signed_area;
                cycles[c].face = f;
            }
            None => {
                outer.cycles.push(c);
                outer.area += cycles[c].signed_area;
            }
        }
    }

    let chi = (vertices.len() + anchors) as i64 - (half_edges.len() / 2) as i64
        + (faces.len() + 1) as i64;
    if chi != 1 + components as i64 {
        return Err(Error::Inconsistent(format!(
            "Euler characteristic {chi} differs from {} for {components} component(s)",
            1 + components
        )));
    }

    let mut arr = Arrangement {
        loops: loops.to_vec(),
        vertices,
        half_edges,
        cycles,
        faces,
        components,
        anchors,
        bbox,
    };
    for f in 0..arr.faces.len() {
        let rep = arr.interior_point(f)?;
        arr.faces[f].representative = rep;
    }

    // Canonical labels; x is quantised so that rounding noise cannot
    // reorder faces sharing an abscissa.
    let quantum = 1e-4 * bbox.diagonal();
    let qx = |p: Point| (p.x / quantum).round() + 0.0;
    let mut order: Vec<usize> = (0..arr.faces.len()).collect();
    order.sort_by(|&a, &b| {
        let (pa, pb) = (arr.faces[a].representative, arr.faces[b].representative);
        qx(pa).total_cmp(&qx(pb)).then(pa.y.total_cmp(&pb.y))
    });
    let mut new_index = vec![0; order.len()];
    for (k, &f) in order.iter().enumerate() {
        new_index[f] = k;
    }
    let mut faces: Vec<Face> = order.iter().map(|&f| arr.faces[f].clone()).collect();
    faces.push(outer);
    let outer_index = faces.len() - 1;
    arr.faces = faces;
    for cy in arr.cycles.iter_mut() {
        cy.face = if cy.face == usize::MAX {
            outer_index
        } else {
            new_index[cy.face]
        };
    }
    for h in 0..arr.half_edges.len() {
        arr.half_edges[h].face = arr.cycles[arr.half_edges[h].cycle].face;
    }
    Ok(arr)
}

fn push_edge(
    half_edges: &mut Vec<HalfEdge>,
    from: Option<usize>,
    to: Option<usize>,
    loop_index: usize,
    params: (f64, f64),
    polyline: Vec<Point>,
) {
    let f = half_edges.len();
    let mut rev = polyline.clone();
    rev.reverse();
    half_edges.push(HalfEdge {
        origin: from,
        loop_index,
        forward: true,
        params,
        twin: f + 1,
        next: usize::MAX,
        curve_next: f,
        cycle: usize::MAX,
        face: usize::MAX,
        polyline,
    });
    half_edges.push(HalfEdge {
        origin: to,
        loop_index,
        forward: false,
        params,
        twin: f,
        next: usize::MAX,
        curve_next: f + 1,
        cycle: usize::MAX,
        face: usize::MAX,
        polyline: rev,
    });
}

impl Arrangement {
    /// Centroid of the face if it lies inside; otherwise a point offset
    /// inward from the midpoint of the longest boundary segment.
    fn interior_point(&self, face: usize) -> Result<Point> {
        let min_clearance = 1e-9 * self.bbox.diagonal();
        let mut acc = Point::default();
        let mut area = 0.0;
        for ring in self.face_rings(face) {
            if let Some((c, a)) = ring_centroid(ring) {
                acc = acc + c * a;
                area += a;
            }
        }
        if area > 0.0 {
            let c = acc * (1.0 / area);
            if self.face_contains(face, c) && self.boundary_distance(face, c) > min_clearance {
                return Ok(c);
            }
        }
        let outer = &self.cycles[self.faces[face].cycles[0]].ring;
        let n = outer.len();
        let (i, len) = (0..n)
            .map(|i| (i, outer[i].dist(outer[(i + 1) % n])))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .expect("non-empty ring");
        let a = outer[i];
        let d = outer[(i + 1) % n] - a;
        let normal = Point::new(-d.y, d.x) * (1.0 / len);
        let mid = a.lerp(outer[(i + 1) % n], 0.5);
        let mut delta = 0.5 * len;
        for _ in 0..40 {
            let p = mid + normal * delta;
            if self.face_contains(face, p) && self.boundary_distance(face, p) > min_clearance {
                return Ok(p);
            }
            delta *= 0.5;
        }
        Err(Error::Inconsistent(format!(
            "no interior point found for face {face}"
        )))
    }
}

/// Face areas by the shoelace formula, holes subtracted. Checks that they
/// sum to the area enclosed by the outer-face boundary cycles.
pub fn face_areas(arr: &Arrangement) -> Result<AreaVector> {
    let r = arr.bounded_face_count();
    let areas: Vec<f64> = arr.faces[..r].iter().map(|f| f.area).collect();
    let budget: f64 = -arr.faces[r].area;
    let total: f64 = areas.iter().sum();
    let v = AreaVector::new(areas)?;
    if (total - budget).abs() > 1e-9 * budget.abs().max(f64::MIN_POSITIVE) {
        return Err(Error::Inconsistent(format!(
            "face areas sum to {total}, enclosed area is {budget}"
        )));
    }
    Ok(v)
}
